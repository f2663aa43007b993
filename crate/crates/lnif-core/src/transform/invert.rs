//! Invertibility: m-inversion of the left rules and inversion of every
//! right rule. The `(∧r)`, `(∨r)`, `(∃r)` inversions preserve height; the
//! `(⊃r1)/(⊃r2)/(∀r1)/(∀r2)` inversions may grow it, recombining through the
//! two-premise right rules and lowering.

use std::collections::BTreeSet;

use crate::builders as b;
use crate::calculus::{Derivation, RuleInstance, RuleTag, Side};
use crate::sequent::{Component, Multiset, Sequent};
use crate::syntax::{Formula, Name};

use super::structural::{admit_iw, admit_lwr, instantiate, is_principal_here, rename_param};
use super::{principal_of, reapply, shift_rule, TResult, TransformError};

#[derive(Clone, Debug)]
pub enum InvertLeft {
    And { a: Formula, b: Formula },
    Or { a: Formula, b: Formula },
    Imp { a: Formula, b: Formula },
    Forall { x: Name, body: Formula, witness: Name },
    Exists { x: Name, body: Formula, fresh: Name },
}

#[allow(clippy::large_enum_variant)]
pub enum InvertLeftResult {
    One(Derivation),
    Two(Derivation, Derivation),
}

/// Internal, normalized replacement spec for the tracked-copy recursion.
#[derive(Clone)]
enum LSpec {
    And { a: Formula, b: Formula },
    OrKeep { a: Formula, b: Formula, keep_left: bool },
    ImpB { a: Formula, b: Formula },
    Exists { x: Name, body: Formula, fresh: Name },
}

impl LSpec {
    fn formula(&self) -> Formula {
        match self {
            LSpec::And { a, b } => crate::syntax::and(a.clone(), b.clone()),
            LSpec::OrKeep { a, b, .. } => crate::syntax::or(a.clone(), b.clone()),
            LSpec::ImpB { a, b } => crate::syntax::implies(a.clone(), b.clone()),
            LSpec::Exists { x, body, .. } => Formula::Exists(x.clone(), Box::new(body.clone())),
        }
    }

    /// Antecedent formulas replacing one tracked copy.
    fn replacement(&self) -> Vec<Formula> {
        match self {
            LSpec::And { a, b } => vec![a.clone(), b.clone()],
            LSpec::OrKeep { a, b, keep_left } => {
                vec![if *keep_left { a.clone() } else { b.clone() }]
            }
            LSpec::ImpB { b, .. } => vec![b.clone()],
            LSpec::Exists { x, body, fresh } => vec![instantiate(x, body, fresh)],
        }
    }

    fn tag(&self) -> RuleTag {
        match self {
            LSpec::And { .. } => RuleTag::AndL,
            LSpec::OrKeep { .. } => RuleTag::OrL,
            LSpec::ImpB { .. } => RuleTag::ImpL,
            LSpec::Exists { .. } => RuleTag::ExistsL,
        }
    }
}

/// Lemma (m-invertibility of the left rules). `counts[i]` gives the number
/// of tracked copies in `ant(i)`.
pub fn invert_left(
    d: &Derivation,
    spec: &InvertLeft,
    counts: &[usize],
) -> TResult<InvertLeftResult> {
    if counts.len() != d.conclusion.len() {
        return Err(TransformError::Shape("counts must cover every component".into()));
    }
    let tracked = match spec {
        InvertLeft::And { a, b } => crate::syntax::and(a.clone(), b.clone()),
        InvertLeft::Or { a, b } => crate::syntax::or(a.clone(), b.clone()),
        InvertLeft::Imp { a, b } => crate::syntax::implies(a.clone(), b.clone()),
        InvertLeft::Forall { x, body, .. } => Formula::Forall(x.clone(), Box::new(body.clone())),
        InvertLeft::Exists { x, body, .. } => Formula::Exists(x.clone(), Box::new(body.clone())),
    };
    for (i, k) in counts.iter().enumerate() {
        if d.conclusion.component(i).ant.count(&tracked) < *k {
            return Err(TransformError::Position(i));
        }
    }
    match spec {
        InvertLeft::And { a, b } => Ok(InvertLeftResult::One(replace_left(
            d,
            &LSpec::And { a: a.clone(), b: b.clone() },
            counts,
        )?)),
        InvertLeft::Or { a, b } => {
            let left = replace_left(
                d,
                &LSpec::OrKeep { a: a.clone(), b: b.clone(), keep_left: true },
                counts,
            )?;
            let right = replace_left(
                d,
                &LSpec::OrKeep { a: a.clone(), b: b.clone(), keep_left: false },
                counts,
            )?;
            Ok(InvertLeftResult::Two(left, right))
        }
        InvertLeft::Imp { a, b } => {
            let dropped =
                replace_left(d, &LSpec::ImpB { a: a.clone(), b: b.clone() }, counts)?;
            // retaining variant: weaken the antecedent part into the
            // consequent of every tracked component
            let mut kept = d.clone();
            for (i, k) in counts.iter().enumerate() {
                if *k > 0 {
                    let adds: Vec<Formula> = std::iter::repeat_n(a.clone(), *k).collect();
                    kept = admit_iw(&kept, i, &[], &adds)?;
                }
            }
            Ok(InvertLeftResult::Two(dropped, kept))
        }
        InvertLeft::Forall { x, body, witness } => {
            let inst = instantiate(x, body, witness);
            let mut out = d.clone();
            for (i, k) in counts.iter().enumerate() {
                if *k > 0 {
                    let adds: Vec<Formula> = std::iter::repeat_n(inst.clone(), *k).collect();
                    out = admit_iw(&out, i, &adds, &[])?;
                }
            }
            Ok(InvertLeftResult::One(out))
        }
        InvertLeft::Exists { x, body, fresh } => {
            if d.all_params().contains(fresh) {
                return Err(TransformError::Shape(format!(
                    "shared parameter #{fresh} must be fresh for the whole derivation"
                )));
            }
            Ok(InvertLeftResult::One(replace_left(
                d,
                &LSpec::Exists { x: x.clone(), body: body.clone(), fresh: fresh.clone() },
                counts,
            )?))
        }
    }
}

fn replace_tracked(s: &Sequent, spec: &LSpec, counts: &[usize]) -> Sequent {
    let f = spec.formula();
    let mut out = s.clone();
    for (i, k) in counts.iter().enumerate() {
        if *k == 0 {
            continue;
        }
        let comp = out.component(i);
        let mut ant = comp.ant.remove_n(&f, *k).expect("tracked copies present");
        for rep in spec.replacement() {
            for _ in 0..*k {
                ant = ant.insert(rep.clone());
            }
        }
        out = out.with_component(i, Component::new(ant, comp.cons.clone()));
    }
    out
}

fn replace_left(d: &Derivation, spec: &LSpec, counts: &[usize]) -> TResult<Derivation> {
    use RuleTag::*;
    let tag = d.rule.tag();
    let f = spec.formula();
    if counts.iter().all(|k| *k == 0) {
        return Ok(d.clone());
    }
    match tag {
        Id1 | Id2 | BotL => Ok(Derivation::leaf(
            replace_tracked(&d.conclusion, spec, counts),
            d.rule.clone(),
        )),
        _ if tag == spec.tag() && tracked_principal(&d.rule, counts, &f) => {
            let (c, _, _) = principal_of(&d.rule);
            let mut dec = counts.to_vec();
            dec[c] -= 1;
            match spec {
                LSpec::And { .. } | LSpec::ImpB { .. } => {
                    // the (∧l) premise already carries A,B; the first (⊃l)
                    // premise already carries B
                    replace_left(&d.premises[0], spec, &dec)
                }
                LSpec::OrKeep { keep_left, .. } => {
                    let idx = usize::from(!keep_left);
                    replace_left(&d.premises[idx], spec, &dec)
                }
                LSpec::Exists { fresh, .. } => {
                    let e = d.rule.eigen.clone().expect("exists-left eigenvariable");
                    let q = replace_left(&d.premises[0], spec, &dec)?;
                    rename_param(&q, &e, fresh)
                }
            }
        }
        Lift if lifted_is(&d.rule, &f) => {
            let (c, _, _) = principal_of(&d.rule);
            if counts[c] >= 1 {
                let mut inc = counts.to_vec();
                inc[c + 1] += 1;
                let q = replace_left(&d.premises[0], spec, &inc)?;
                let mut out = q;
                for rep in spec.replacement() {
                    out = b::lift(out, c, &rep);
                }
                Ok(out)
            } else {
                let q = replace_left(&d.premises[0], spec, counts)?;
                Ok(b::lift(q, c, &f))
            }
        }
        AndL | OrR | AndR | OrL | ImpL | ForallL | ExistsL | ExistsR | Lift => {
            let prems = d
                .premises
                .iter()
                .map(|p| replace_left(p, spec, counts))
                .collect::<TResult<Vec<_>>>()?;
            Ok(reapply(&d.rule, |i| i, prems))
        }
        ImpR1 | ForallR1 => {
            let mut ext = counts.to_vec();
            ext.push(0);
            let p = replace_left(&d.premises[0], spec, &ext)?;
            Ok(reapply(&d.rule, |i| i, vec![p]))
        }
        ImpR2 | ForallR2 => {
            let (c, _, _) = principal_of(&d.rule);
            let mut ins = counts.to_vec();
            ins.insert(c + 1, 0);
            let p1 = replace_left(&d.premises[0], spec, &ins)?;
            let p2 = replace_left(&d.premises[1], spec, counts)?;
            Ok(reapply(&d.rule, |i| i, vec![p1, p2]))
        }
        other => Err(TransformError::UnsupportedRule(other.name())),
    }
}

fn tracked_principal(rule: &RuleInstance, counts: &[usize], f: &Formula) -> bool {
    rule.principal
        .first()
        .is_some_and(|(c, s, g)| *s == Side::Left && g == f && counts.get(*c).copied().unwrap_or(0) >= 1)
}

fn lifted_is(rule: &RuleInstance, f: &Formula) -> bool {
    rule.principal.first().is_some_and(|(_, _, g)| g == f)
}

// ---------------------------------------------------------------------------
// right-rule inversions
// ---------------------------------------------------------------------------

/// Invert a right rule at the stated occurrence. Returns the premise
/// derivation(s) in schema order. `fresh` supplies the eigenvariable for
/// `ForallR1`/`ForallR2` and must be fresh for the whole input derivation.
pub fn invert_right(
    d: &Derivation,
    tag: RuleTag,
    pos: usize,
    f: &Formula,
    fresh: Option<&str>,
) -> TResult<Vec<Derivation>> {
    if pos >= d.conclusion.len() || !d.conclusion.component(pos).cons.contains(f) {
        return Err(TransformError::Position(pos));
    }
    match (tag, f) {
        (RuleTag::AndR, Formula::And(a, b)) => Ok(vec![
            replace_right(d, pos, f, std::slice::from_ref(a))?,
            replace_right(d, pos, f, std::slice::from_ref(b))?,
        ]),
        (RuleTag::OrR, Formula::Or(a, b)) => {
            Ok(vec![replace_right(d, pos, f, &[(**a).clone(), (**b).clone()])?])
        }
        (RuleTag::ExistsR, Formula::Exists(x, body)) => {
            let mut witnesses = BTreeSet::new();
            let mut escaped = BTreeSet::new();
            collect_exists_witnesses(d, pos, f, &mut Vec::new(), &mut witnesses, &mut escaped);
            if !escaped.is_empty() {
                // the occurrence is witnessed by an eigenvariable bound
                // inside the derivation: no single outer parameter works
                return Err(TransformError::MultiWitness(escaped.into_iter().collect()));
            }
            if witnesses.len() > 1 {
                return Err(TransformError::MultiWitness(witnesses.into_iter().collect()));
            }
            // an unconstrained occurrence (spectator up to the axioms) takes
            // the caller's preferred parameter
            let w = witnesses
                .into_iter()
                .next()
                .or_else(|| fresh.map(str::to_string))
                .unwrap_or_else(|| super::fresh_for(&[d], &[]));
            let inst = instantiate(x, body, &w);
            Ok(vec![replace_right(d, pos, f, std::slice::from_ref(&inst))?])
        }
        (RuleTag::ImpR1, Formula::Implies(a, b)) => {
            if pos != d.conclusion.len() - 1 {
                return Err(TransformError::Position(pos));
            }
            Ok(vec![insert_right(d, pos, f, a, b)?])
        }
        (RuleTag::ImpR2, Formula::Implies(a, b)) => {
            if pos + 1 >= d.conclusion.len() {
                return Err(TransformError::Position(pos));
            }
            Ok(vec![insert_right(d, pos, f, a, b)?, admit_lwr(d, pos, f)?])
        }
        (RuleTag::ForallR1, Formula::Forall(x, body)) => {
            if pos != d.conclusion.len() - 1 {
                return Err(TransformError::Position(pos));
            }
            let e = required_fresh(d, fresh)?;
            let inst = instantiate(x, body, &e);
            Ok(vec![insert_right_forall(d, pos, f, &inst, &e)?])
        }
        (RuleTag::ForallR2, Formula::Forall(x, body)) => {
            if pos + 1 >= d.conclusion.len() {
                return Err(TransformError::Position(pos));
            }
            let e = required_fresh(d, fresh)?;
            let inst = instantiate(x, body, &e);
            Ok(vec![insert_right_forall(d, pos, f, &inst, &e)?, admit_lwr(d, pos, f)?])
        }
        _ => Err(TransformError::Shape(format!(
            "{} cannot invert `{f}`",
            tag.name()
        ))),
    }
}

fn required_fresh(d: &Derivation, fresh: Option<&str>) -> TResult<Name> {
    match fresh {
        Some(e) => {
            if d.all_params().contains(e) {
                Err(TransformError::Shape(format!(
                    "eigenvariable #{e} must be fresh for the derivation"
                )))
            } else {
                Ok(e.to_string())
            }
        }
        None => Ok(super::fresh_for(&[d], &[])),
    }
}

/// hp-inversion of `(∧r)`, `(∨r)`, `(∃r)`: one consequent occurrence at
/// `pos` is replaced by `reps`. The replacements can carry parameters (the
/// `(∃r)` witness), so clashing eigenvariables are refreshed on the way.
fn replace_right(d: &Derivation, pos: usize, f: &Formula, reps: &[Formula]) -> TResult<Derivation> {
    use RuleTag::*;
    if let Some(e) = &d.rule.eigen {
        if reps.iter().any(|r| r.params().contains(e)) {
            let rep_params: std::collections::BTreeSet<Name> =
                reps.iter().flat_map(|r| r.params()).collect();
            let names: Vec<&Name> = rep_params.iter().collect();
            let refreshed = super::refresh_eigen(d, &names)?;
            return replace_right(&refreshed, pos, f, reps);
        }
    }
    let tag = d.rule.tag();
    let replace = |s: &Sequent| {
        let comp = s.component(pos);
        let mut cons = comp.cons.remove_one(f).expect("occurrence present");
        for r in reps {
            cons = cons.insert(r.clone());
        }
        s.with_component(pos, Component::new(comp.ant.clone(), cons))
    };
    match tag {
        Id1 | Id2 | BotL => Ok(Derivation::leaf(replace(&d.conclusion), d.rule.clone())),
        AndR | OrR | ExistsR if is_principal_here(&d.rule, pos, Side::Right, f) => {
            // the premise (first premise for ∧r-left/right chosen by caller
            // shape) is exactly the inversion — for ∧r the two callers pick
            // the matching premise by content
            match tag {
                OrR | ExistsR => Ok(d.premises[0].clone()),
                AndR => {
                    let want = replace(&d.conclusion);
                    for p in &d.premises {
                        if p.conclusion == want {
                            return Ok(p.clone());
                        }
                    }
                    // neither premise matches the requested conjunct shape:
                    // recurse past this (differently-shaped) application
                    let prems = d
                        .premises
                        .iter()
                        .map(|p| replace_right(p, pos, f, reps))
                        .collect::<TResult<Vec<_>>>()?;
                    Ok(reapply(&d.rule, |i| i, prems))
                }
                _ => unreachable!(),
            }
        }
        AndL | OrR | AndR | OrL | ImpL | ForallL | ExistsL | ExistsR | Lift | ImpR1 | ForallR1 => {
            let prems = d
                .premises
                .iter()
                .map(|p| replace_right(p, pos, f, reps))
                .collect::<TResult<Vec<_>>>()?;
            Ok(reapply(&d.rule, |i| i, prems))
        }
        ImpR2 | ForallR2 => {
            let (c, _, _) = principal_of(&d.rule);
            let pos1 = if pos > c { pos + 1 } else { pos };
            let p1 = replace_right(&d.premises[0], pos1, f, reps)?;
            let p2 = replace_right(&d.premises[1], pos, f, reps)?;
            Ok(reapply(&d.rule, |i| i, vec![p1, p2]))
        }
        other => Err(TransformError::UnsupportedRule(other.name())),
    }
}

fn collect_exists_witnesses(
    d: &Derivation,
    pos: usize,
    f: &Formula,
    bound: &mut Vec<Name>,
    out: &mut BTreeSet<Name>,
    escaped: &mut BTreeSet<Name>,
) {
    use RuleTag::*;
    let pushed = if let Some(e) = &d.rule.eigen {
        bound.push(e.clone());
        true
    } else {
        false
    };
    match d.rule.tag() {
        Id1 | Id2 | BotL => {}
        ExistsR if is_principal_here(&d.rule, pos, Side::Right, f) => {
            let w = d.rule.witness.clone().expect("witness");
            if bound.contains(&w) {
                escaped.insert(w);
            } else {
                out.insert(w);
            }
        }
        ImpR2 | ForallR2 => {
            let (c, _, _) = principal_of(&d.rule);
            let pos1 = if pos > c { pos + 1 } else { pos };
            collect_exists_witnesses(&d.premises[0], pos1, f, bound, out, escaped);
            collect_exists_witnesses(&d.premises[1], pos, f, bound, out, escaped);
        }
        _ => {
            for p in &d.premises {
                collect_exists_witnesses(p, pos, f, bound, out, escaped);
            }
        }
    }
    if pushed {
        bound.pop();
    }
}

/// Inversion of `(⊃r1)`/`(⊃r2)` at `pos`: the occurrence is removed and the
/// component `A ⊢ B` is inserted at `pos + 1`.
fn insert_right(d: &Derivation, pos: usize, f: &Formula, a: &Formula, bf: &Formula) -> TResult<Derivation> {
    let fresh_comp = Component::new(Multiset::singleton(a.clone()), Multiset::singleton(bf.clone()));
    rec_insert_right(d, pos, f, &fresh_comp, &ImpKind::Imp)
}

/// Inversion of `(∀r1)`/`(∀r2)` at `pos`: the occurrence is removed and the
/// component `⊢ body[e/x]` is inserted at `pos + 1`.
fn insert_right_forall(
    d: &Derivation,
    pos: usize,
    f: &Formula,
    inst: &Formula,
    eigen: &str,
) -> TResult<Derivation> {
    let fresh_comp = Component::new(Multiset::new(), Multiset::singleton(inst.clone()));
    rec_insert_right(
        d,
        pos,
        f,
        &fresh_comp,
        &ImpKind::Forall { inst: inst.clone(), eigen: eigen.to_string() },
    )
}

enum ImpKind {
    Imp,
    Forall { inst: Formula, eigen: Name },
}

fn rec_insert_right(
    d: &Derivation,
    pos: usize,
    f: &Formula,
    fresh_comp: &Component,
    kind: &ImpKind,
) -> TResult<Derivation> {
    use RuleTag::*;
    let tag = d.rule.tag();
    let shift = |i: usize| if i > pos { i + 1 } else { i };
    let target_of = |s: &Sequent| {
        let comp = s.component(pos);
        let trimmed = s.with_component(
            pos,
            Component::new(comp.ant.clone(), comp.cons.remove_one(f).expect("occurrence present")),
        );
        trimmed.insert_component(pos + 1, fresh_comp.clone())
    };
    match tag {
        Id1 | Id2 | BotL => {
            Ok(Derivation::leaf(target_of(&d.conclusion), shift_rule(&d.rule, shift)))
        }
        ImpR1 | ImpR2 | ForallR1 | ForallR2
            if is_principal_here(&d.rule, pos, Side::Right, f) =>
        {
            // principal on the occurrence: the (first) premise is the target,
            // up to renaming the eigenvariable to the requested one
            match (tag, kind) {
                (ImpR1 | ImpR2, ImpKind::Imp) => Ok(d.premises[0].clone()),
                (ForallR1 | ForallR2, ImpKind::Forall { inst, eigen }) => {
                    let e = d.rule.eigen.clone().expect("eigenvariable");
                    if d.premises[0].conclusion.component(pos + 1).cons.contains(inst) {
                        // the bound variable does not occur, or the stored
                        // eigenvariable already matches
                        Ok(d.premises[0].clone())
                    } else {
                        rename_param(&d.premises[0], &e, eigen)
                    }
                }
                _ => unreachable!(),
            }
        }
        Lift => {
            let (c, _, phi) = principal_of(&d.rule);
            let phi = phi.clone();
            if c == pos {
                // the inserted component splits the lift
                let q = rec_insert_right(&d.premises[0], pos, f, fresh_comp, kind)?;
                let q = admit_iw(&q, pos + 1, std::slice::from_ref(&phi), &[])?;
                let q = b::lift(q, pos + 1, &phi);
                Ok(b::lift(q, pos, &phi))
            } else {
                let q = rec_insert_right(&d.premises[0], pos, f, fresh_comp, kind)?;
                Ok(reapply(&d.rule, shift, vec![q]))
            }
        }
        AndL | OrR | AndR | OrL | ImpL | ForallL | ExistsL | ExistsR => {
            let prems = d
                .premises
                .iter()
                .map(|p| rec_insert_right(p, pos, f, fresh_comp, kind))
                .collect::<TResult<Vec<_>>>()?;
            Ok(reapply(&d.rule, shift, prems))
        }
        ImpR1 | ForallR1 => {
            // principal on another formula at the last component
            let m = d.conclusion.len() - 1;
            if m == pos {
                // same component as the occurrence: recombine through the
                // two-premise rule
                let p = &d.premises[0];
                let lowered = admit_lwr(p, pos, f)?;
                let pi1 = rec_insert_right(&lowered, pos + 1, f, fresh_comp, kind)?;
                let inner = rec_insert_right(p, pos, f, fresh_comp, kind)?;
                let folded = reapply(&d.rule, |i| i, vec![inner]);
                let (_, _, g) = principal_of(&d.rule);
                Ok(apply_two_premise(&d.rule, g, pi1, folded, pos)?)
            } else {
                let p = rec_insert_right(&d.premises[0], pos, f, fresh_comp, kind)?;
                Ok(reapply(&d.rule, shift, vec![p]))
            }
        }
        ImpR2 | ForallR2 => {
            let (c, _, g) = principal_of(&d.rule);
            let g = g.clone();
            if c == pos {
                // same component, different formula: the displayed recombination
                let p1 = &d.premises[0];
                let p2 = &d.premises[1];
                let pi1 = {
                    let lowered = admit_lwr(p1, pos, f)?;
                    rec_insert_right(&lowered, pos + 1, f, fresh_comp, kind)?
                };
                let q1 = rec_insert_right(p1, pos, f, fresh_comp, kind)?;
                let q2 = rec_insert_right(p2, pos, f, fresh_comp, kind)?;
                let inner = apply_two_premise(&d.rule, &g, q1, q2, pos + 1)?;
                Ok(apply_two_premise(&d.rule, &g, pi1, inner, pos)?)
            } else {
                let pos1 = if pos > c { pos + 1 } else { pos };
                let p1 = rec_insert_right(&d.premises[0], pos1, f, fresh_comp, kind)?;
                let p2 = rec_insert_right(&d.premises[1], pos, f, fresh_comp, kind)?;
                Ok(reapply(&d.rule, shift, vec![p1, p2]))
            }
        }
        other => Err(TransformError::UnsupportedRule(other.name())),
    }
}

/// Apply the two-premise form of the rule that introduced `g` at `at`.
fn apply_two_premise(
    rule: &RuleInstance,
    g: &Formula,
    left: Derivation,
    right: Derivation,
    at: usize,
) -> TResult<Derivation> {
    match (rule.tag(), g) {
        (RuleTag::ImpR1 | RuleTag::ImpR2, Formula::Implies(x, y)) => {
            Ok(b::imp_r2(left, right, at, x, y))
        }
        (RuleTag::ForallR1 | RuleTag::ForallR2, Formula::Forall(x, body)) => {
            let e = rule.eigen.as_ref().expect("eigenvariable");
            Ok(b::forall_r2(left, right, at, x, body, e))
        }
        _ => unreachable!(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::calculus::{check_derivation, Mode};
    use crate::sequent::parse_sequent;
    use crate::syntax::{atom, Signature};

    fn seq(text: &str) -> Sequent {
        let mut sig = Signature::new();
        parse_sequent(text, &mut sig).unwrap()
    }

    fn px() -> Formula {
        crate::syntax::atom1("p", crate::syntax::var("x"))
    }

    fn ff(text: &str) -> Formula {
        let mut sig = Signature::new();
        crate::syntax::parse_formula_inferring(text, &mut sig).unwrap()
    }

    fn official(d: &Derivation) {
        check_derivation(d, Mode::Official).unwrap();
    }

    #[test]
    fn invert_and_left_on_identity() {
        // p∧q ⊢ p∧q built by ∧r over ∧l over axioms
        let d = super::super::derive_identity(
            &ff("p & q"),
            &[],
            &Multiset::new(),
            &Multiset::new(),
            &[],
        );
        official(&d);
        let spec = InvertLeft::And { a: atom("p"), b: atom("q") };
        let InvertLeftResult::One(out) = invert_left(&d, &spec, &[1]).unwrap() else {
            panic!()
        };
        assert_eq!(out.conclusion, seq("p, q |- p & q"));
        assert!(out.height() <= d.height());
        official(&out);
    }

    #[test]
    fn invert_or_left_produces_both() {
        let d = super::super::derive_identity(
            &ff("p | q"),
            &[],
            &Multiset::new(),
            &Multiset::new(),
            &[],
        );
        let spec = InvertLeft::Or { a: atom("p"), b: atom("q") };
        let InvertLeftResult::Two(l, r) = invert_left(&d, &spec, &[1]).unwrap() else {
            panic!()
        };
        assert_eq!(l.conclusion, seq("p |- p | q"));
        assert_eq!(r.conclusion, seq("q |- p | q"));
        official(&l);
        official(&r);
    }

    #[test]
    fn invert_imp_left_keeps_and_weakens() {
        let d = super::super::derive_identity(
            &ff("p -> q"),
            &[],
            &Multiset::new(),
            &Multiset::new(),
            &[],
        );
        let spec = InvertLeft::Imp { a: atom("p"), b: atom("q") };
        let InvertLeftResult::Two(dropped, kept) = invert_left(&d, &spec, &[1]).unwrap() else {
            panic!()
        };
        assert_eq!(dropped.conclusion, seq("q |- p -> q"));
        assert_eq!(kept.conclusion, seq("p -> q |- p, p -> q"));
        official(&dropped);
        official(&kept);
    }

    #[test]
    fn invert_exists_left_shares_fresh_parameter() {
        let d = super::super::derive_identity(
            &ff("exists x. p(x)"),
            &[],
            &Multiset::new(),
            &Multiset::new(),
            &[],
        );
        official(&d);
        let spec = InvertLeft::Exists { x: "x".into(), body: px(), fresh: "w".into() };
        let InvertLeftResult::One(out) = invert_left(&d, &spec, &[1]).unwrap() else {
            panic!()
        };
        assert_eq!(out.conclusion, seq("p(#w) |- exists x. p(x)"));
        assert!(out.height() <= d.height());
        official(&out);
    }

    #[test]
    fn invert_and_r_returns_premises() {
        let l = b::id1(seq("p, q |- p"), 0, atom("p"));
        let r = b::id1(seq("p, q |- q"), 0, atom("q"));
        let d = b::and_r(l, r, 0, &atom("p"), &atom("q"));
        let outs = invert_right(&d, RuleTag::AndR, 0, &ff("p & q"), None).unwrap();
        assert_eq!(outs[0].conclusion, seq("p, q |- p"));
        assert_eq!(outs[1].conclusion, seq("p, q |- q"));
        assert!(outs.iter().all(|o| o.height() <= d.height()));
    }

    #[test]
    fn invert_exists_r_tracks_single_witness() {
        let ax = b::id1(seq("p(#a) |- p(#a)"), 0, ff("p(#a)"));
        let d = b::exists_r(ax, 0, "x", &px(), "a");
        let outs = invert_right(&d, RuleTag::ExistsR, 0, &ff("exists x. p(x)"), None).unwrap();
        assert_eq!(outs[0].conclusion, seq("p(#a) |- p(#a)"));
        assert!(outs[0].height() <= d.height());
    }

    #[test]
    fn invert_exists_r_rejects_mixed_witnesses() {
        // p(#a)∨p(#b) ⊢ ∃x p(x) uses different witnesses per branch
        let la = b::exists_r(
            b::id1(seq("p(#a) |- p(#a)"), 0, ff("p(#a)")),
            0,
            "x",
            &px(),
            "a",
        );
        let lb = b::exists_r(
            b::id1(seq("p(#b) |- p(#b)"), 0, ff("p(#b)")),
            0,
            "x",
            &px(),
            "b",
        );
        let d = b::or_l(la, lb, 0, &ff("p(#a)"), &ff("p(#b)"));
        official(&d);
        let err = invert_right(&d, RuleTag::ExistsR, 0, &ff("exists x. p(x)"), None).unwrap_err();
        assert!(matches!(err, TransformError::MultiWitness(_)));
    }

    #[test]
    fn invert_imp_r1_on_direct_application() {
        let ax = b::id1(seq("|- // p |- p"), 1, atom("p"));
        let d = b::imp_r1(ax, &atom("p"), &atom("p"));
        let outs = invert_right(&d, RuleTag::ImpR1, 0, &ff("p -> p"), None).unwrap();
        assert_eq!(outs[0].conclusion, seq("|- // p |- p"));
        official(&outs[0]);
    }

    #[test]
    fn invert_imp_r1_commutes_past_or_r() {
        // ⊢ q | r, p -> p built by ∨r under the implication's side
        let ax = b::id1(seq("|- q, r // p |- p"), 1, atom("p"));
        let d0 = b::imp_r1(ax, &atom("p"), &atom("p"));
        let d = b::or_r(d0, 0, &atom("q"), &atom("r"));
        assert_eq!(d.conclusion, seq("|- q | r, p -> p"));
        let outs = invert_right(&d, RuleTag::ImpR1, 0, &ff("p -> p"), None).unwrap();
        assert_eq!(outs[0].conclusion, seq("|- q | r // p |- p"));
        official(&outs[0]);
    }

    #[test]
    fn invert_forall_r1_renames_to_requested() {
        let ax = b::id1(seq("q |- q // |- p(#a0)"), 0, atom("q"));
        let d = b::forall_r1(ax, "x", &px(), "a0");
        let outs =
            invert_right(&d, RuleTag::ForallR1, 0, &ff("forall x. p(x)"), Some("w")).unwrap();
        assert_eq!(outs[0].conclusion, seq("q |- q // |- p(#w)"));
        official(&outs[0]);
    }

    #[test]
    fn invert_imp_r1_past_forall_r1_recombines() {
        // r ⊢ r, q→q, ∀x p(x) ending (∀r1): inverting the implication must
        // recombine through (⊃r2)/(∀r2).
        let leaf = b::id1(seq("r |- r, q -> q // |- p(#a0)"), 0, atom("r"));
        let d = b::forall_r1(leaf, "x", &px(), "a0");
        assert_eq!(d.conclusion, seq("r |- r, q -> q, forall x. p(x)"));
        let outs = invert_right(&d, RuleTag::ImpR1, 0, &ff("q -> q"), None).unwrap();
        assert_eq!(outs[0].conclusion, seq("r |- r, forall x. p(x) // q |- q"));
        official(&outs[0]);
    }

    #[test]
    fn invert_forall_r2_gives_both_premises() {
        let left = b::id1(seq("q |- q // |- p(#a0) // |-"), 0, atom("q"));
        let right = b::id1(seq("q |- q // |- forall x. p(x)"), 0, atom("q"));
        let d = b::forall_r2(left, right, 0, "x", &px(), "a0");
        let outs =
            invert_right(&d, RuleTag::ForallR2, 0, &ff("forall x. p(x)"), Some("w")).unwrap();
        assert_eq!(outs[0].conclusion, seq("q |- q // |- p(#w) // |-"));
        assert_eq!(outs[1].conclusion, seq("q |- q // |- forall x. p(x)"));
        official(&outs[0]);
        official(&outs[1]);
    }

    #[test]
    fn invert_lift_interplay() {
        // lift across the insertion point triggers the weaken-and-relift fix
        let ax = b::id1(seq("s |- s, p -> p // s |- t"), 0, atom("s"));
        let d = b::lift(ax, 0, &atom("s"));
        assert_eq!(d.conclusion, seq("s |- s, p -> p // |- t"));
        let outs = invert_right(&d, RuleTag::ImpR2, 0, &ff("p -> p"), None).unwrap();
        assert_eq!(outs[0].conclusion, seq("s |- s // p |- p // |- t"));
        official(&outs[0]);
    }
}
