//! Height-preserving admissible rules: right-bottom removal, parameter
//! substitution, internal weakening, empty-component insertion, and lowering.

use crate::builders as b;
use crate::calculus::{check_node, Derivation, Mode, RuleInstance, RuleTag, Side};
use crate::sequent::{Component, Sequent};
use crate::syntax::{Formula, Name};

use super::{principal_of, reapply, refresh_eigen, shift_rule, TResult, TransformError};

fn rebuild_axiom(conclusion: Sequent, rule: RuleInstance) -> Derivation {
    debug_assert!(check_node(&conclusion, &rule, &[], Mode::Official).is_ok());
    Derivation { conclusion, rule, premises: vec![] }
}

fn unsupported(tag: RuleTag) -> TransformError {
    TransformError::UnsupportedRule(tag.name())
}

/// Lemma: `(⊥r)` is hp-admissible. Removes one `⊥` from `cons(pos)`.
pub fn admit_bot_r(d: &Derivation, pos: usize) -> TResult<Derivation> {
    if pos >= d.conclusion.len() || !d.conclusion.component(pos).cons.contains(&Formula::Bottom) {
        return Err(TransformError::Position(pos));
    }
    go_bot_r(d, pos)
}

fn drop_cons(s: &Sequent, pos: usize, f: &Formula) -> Sequent {
    let comp = s.component(pos);
    s.with_component(pos, Component::new(comp.ant.clone(), comp.cons.remove_one(f).unwrap()))
}

fn go_bot_r(d: &Derivation, pos: usize) -> TResult<Derivation> {
    use RuleTag::*;
    let tag = d.rule.tag();
    match tag {
        Id1 | Id2 | BotL => Ok(rebuild_axiom(
            drop_cons(&d.conclusion, pos, &Formula::Bottom),
            d.rule.clone(),
        )),
        AndL | OrR | AndR | OrL | ImpL | ForallL | ExistsL | ExistsR | Lift => {
            let prems = d
                .premises
                .iter()
                .map(|p| go_bot_r(p, pos))
                .collect::<TResult<Vec<_>>>()?;
            Ok(reapply(&d.rule, |i| i, prems))
        }
        ImpR1 | ForallR1 => {
            let prem = go_bot_r(&d.premises[0], pos)?;
            Ok(reapply(&d.rule, |i| i, vec![prem]))
        }
        ImpR2 | ForallR2 => {
            let (c, _, _) = principal_of(&d.rule);
            let pos1 = if pos > c { pos + 1 } else { pos };
            let p1 = go_bot_r(&d.premises[0], pos1)?;
            let p2 = go_bot_r(&d.premises[1], pos)?;
            Ok(reapply(&d.rule, |i| i, vec![p1, p2]))
        }
        other => Err(unsupported(other)),
    }
}

/// Lemma: `(sub)` is hp-admissible. The result derives `conclusion[b/a]`
/// with the same height; clashing eigenvariables are refreshed.
pub fn rename_param(d: &Derivation, a: &str, b: &str) -> TResult<Derivation> {
    if a == b {
        return Ok(d.clone());
    }
    let tag = d.rule.tag();
    if !tag.is_official() {
        return Err(unsupported(tag));
    }
    if let Some(e) = d.rule.eigen.clone() {
        if e == a || e == b {
            // refresh the eigenvariable first, then rename below it
            let mut avoid = d.all_params();
            avoid.insert(a.to_string());
            avoid.insert(b.to_string());
            let fresh = crate::syntax::fresh_param(&avoid);
            let prem = rename_param(&d.premises[0], &e, &fresh)?;
            let refreshed = Derivation {
                conclusion: d.conclusion.clone(),
                rule: RuleInstance { eigen: Some(fresh), ..d.rule.clone() },
                premises: vec![prem],
            };
            return rename_param(&refreshed, a, b);
        }
    }
    let conclusion = d.conclusion.rename_param(a, b);
    let mut rule = d.rule.clone();
    rule.principal =
        rule.principal.iter().map(|(c, s, f)| (*c, *s, f.rename_param(a, b))).collect();
    if let Some(w) = &rule.witness {
        if w == a {
            rule.witness = Some(b.to_string());
        }
    }
    let premises = d
        .premises
        .iter()
        .map(|p| rename_param(p, a, b))
        .collect::<TResult<Vec<_>>>()?;
    let out = Derivation { conclusion, rule, premises };
    debug_assert!(
        check_node(
            &out.conclusion,
            &out.rule,
            &out.premises.iter().map(|p| &p.conclusion).collect::<Vec<_>>(),
            Mode::Official
        )
        .is_ok(),
        "rename_param produced an invalid node"
    );
    Ok(out)
}

/// Lemma: `(iw)` is hp-admissible. Adds the given multisets to component `pos`.
pub fn admit_iw(
    d: &Derivation,
    pos: usize,
    add_ant: &[Formula],
    add_cons: &[Formula],
) -> TResult<Derivation> {
    if pos >= d.conclusion.len() {
        return Err(TransformError::Position(pos));
    }
    if add_ant.is_empty() && add_cons.is_empty() {
        return Ok(d.clone());
    }
    let mut added_params: std::collections::BTreeSet<Name> = Default::default();
    for f in add_ant.iter().chain(add_cons) {
        added_params.extend(f.params());
    }
    go_iw(d, pos, add_ant, add_cons, &added_params)
}

fn go_iw(
    d: &Derivation,
    pos: usize,
    add_ant: &[Formula],
    add_cons: &[Formula],
    added_params: &std::collections::BTreeSet<Name>,
) -> TResult<Derivation> {
    use RuleTag::*;
    if let Some(e) = &d.rule.eigen {
        if added_params.contains(e) {
            let names: Vec<&Name> = added_params.iter().collect();
            let refreshed = refresh_eigen(d, &names)?;
            return go_iw(&refreshed, pos, add_ant, add_cons, added_params);
        }
    }
    let fatten = |s: &Sequent| {
        let comp = s.component(pos);
        s.with_component(
            pos,
            Component::new(comp.ant.insert_many(add_ant), comp.cons.insert_many(add_cons)),
        )
    };
    let tag = d.rule.tag();
    match tag {
        Id1 | Id2 | BotL => Ok(rebuild_axiom(fatten(&d.conclusion), d.rule.clone())),
        AndL | OrR | AndR | OrL | ImpL | ForallL | ExistsL | ExistsR | Lift | ImpR1 | ForallR1 => {
            let prems = d
                .premises
                .iter()
                .map(|p| go_iw(p, pos, add_ant, add_cons, added_params))
                .collect::<TResult<Vec<_>>>()?;
            Ok(reapply(&d.rule, |i| i, prems))
        }
        ImpR2 | ForallR2 => {
            let (c, _, _) = principal_of(&d.rule);
            let pos1 = if pos > c { pos + 1 } else { pos };
            let p1 = go_iw(&d.premises[0], pos1, add_ant, add_cons, added_params)?;
            let p2 = go_iw(&d.premises[1], pos, add_ant, add_cons, added_params)?;
            Ok(reapply(&d.rule, |i| i, vec![p1, p2]))
        }
        other => Err(unsupported(other)),
    }
}

/// Lemma: `(ew)` is admissible. Inserts an empty component at index `pos`
/// (0 ≤ pos ≤ len); the height may grow at `(⊃r1)/(∀r1)/(⊃r2)/(∀r2)` nodes.
pub fn admit_ew(d: &Derivation, pos: usize) -> TResult<Derivation> {
    if pos > d.conclusion.len() {
        return Err(TransformError::Position(pos));
    }
    go_ew(d, pos)
}

fn go_ew(d: &Derivation, pos: usize) -> TResult<Derivation> {
    use RuleTag::*;
    let tag = d.rule.tag();
    let shift = |i: usize| if i >= pos { i + 1 } else { i };
    match tag {
        Id1 | Id2 | BotL => Ok(rebuild_axiom(
            d.conclusion.insert_component(pos, Component::empty()),
            shift_rule(&d.rule, shift),
        )),
        AndL | OrR | AndR | OrL | ImpL | ForallL | ExistsL | ExistsR => {
            let prems =
                d.premises.iter().map(|p| go_ew(p, pos)).collect::<TResult<Vec<_>>>()?;
            Ok(reapply(&d.rule, shift, prems))
        }
        Lift => {
            let (c, _, f) = principal_of(&d.rule);
            let f = f.clone();
            if pos == c + 1 {
                // the inserted component splits the lift; restore with a
                // weaken-then-double-lift
                let p = go_ew(&d.premises[0], pos)?;
                let p = admit_iw(&p, c + 1, std::slice::from_ref(&f), &[])?;
                let p = b::lift(p, c + 1, &f);
                Ok(b::lift(p, c, &f))
            } else {
                let p = go_ew(&d.premises[0], pos)?;
                Ok(reapply(&d.rule, shift, vec![p]))
            }
        }
        ImpR1 | ForallR1 => {
            let m = d.conclusion.len(); // premise has m+1 components
            if pos < m {
                let p = go_ew(&d.premises[0], pos)?;
                Ok(reapply(&d.rule, shift, vec![p]))
            } else {
                // inserting directly after the principal component: rebuild
                // through the two-premise variant
                let q1 = go_ew(&d.premises[0], m + 1)?;
                let q2 = go_ew(&d.premises[0], m)?;
                let (_, _, f) = principal_of(&d.rule);
                match (tag, f) {
                    (ImpR1, Formula::Implies(x, y)) => {
                        let r = b::imp_r1(q2, x, y);
                        Ok(b::imp_r2(q1, r, m - 1, x, y))
                    }
                    (ForallR1, Formula::Forall(x, body)) => {
                        let e = d.rule.eigen.as_ref().unwrap();
                        let r = b::forall_r1(q2, x, body, e);
                        Ok(b::forall_r2(q1, r, m - 1, x, body, e))
                    }
                    _ => unreachable!(),
                }
            }
        }
        ImpR2 | ForallR2 => {
            let (c, _, f) = principal_of(&d.rule);
            if pos == c + 1 {
                let q1 = go_ew(&d.premises[0], c + 2)?;
                let q2a = go_ew(&d.premises[0], c + 1)?;
                let q2b = go_ew(&d.premises[1], c + 1)?;
                match (tag, f) {
                    (ImpR2, Formula::Implies(x, y)) => {
                        let inner = b::imp_r2(q2a, q2b, c + 1, x, y);
                        Ok(b::imp_r2(q1, inner, c, x, y))
                    }
                    (ForallR2, Formula::Forall(x, body)) => {
                        let e = d.rule.eigen.as_ref().unwrap();
                        let inner = b::forall_r2(q2a, q2b, c + 1, x, body, e);
                        Ok(b::forall_r2(q1, inner, c, x, body, e))
                    }
                    _ => unreachable!(),
                }
            } else {
                let pos1 = if pos >= c + 2 { pos + 1 } else { pos };
                let p1 = go_ew(&d.premises[0], pos1)?;
                let p2 = go_ew(&d.premises[1], pos)?;
                Ok(reapply(&d.rule, shift, vec![p1, p2]))
            }
        }
        other => Err(unsupported(other)),
    }
}

/// Lemma: `(lwr)` is hp-admissible. Moves one occurrence of `occ` from
/// `cons(pos)` to `cons(pos+1)`.
pub fn admit_lwr(d: &Derivation, pos: usize, occ: &Formula) -> TResult<Derivation> {
    if pos + 1 >= d.conclusion.len() || !d.conclusion.component(pos).cons.contains(occ) {
        return Err(TransformError::Position(pos));
    }
    go_lwr(d, pos, occ)
}

fn lowered(s: &Sequent, pos: usize, occ: &Formula) -> Sequent {
    let trimmed = drop_cons(s, pos, occ);
    let succ = trimmed.component(pos + 1);
    trimmed.with_component(pos + 1, Component::new(succ.ant.clone(), succ.cons.insert(occ.clone())))
}

fn go_lwr(d: &Derivation, pos: usize, occ: &Formula) -> TResult<Derivation> {
    use RuleTag::*;
    let tag = d.rule.tag();
    match tag {
        Id1 | Id2 | BotL => {
            let target = lowered(&d.conclusion, pos, occ);
            Ok(b::try_axiom(&target).expect("lowering preserves initial sequents"))
        }
        _ if is_principal_here(&d.rule, pos, Side::Right, occ) => match tag {
            ExistsR => {
                let Formula::Exists(x, body) = occ else { unreachable!() };
                let w = d.rule.witness.as_ref().unwrap().clone();
                let inst = instantiate(x, body, &w);
                let p = go_lwr(&d.premises[0], pos, &inst)?;
                Ok(b::exists_r(p, pos + 1, x, body, &w))
            }
            OrR => {
                let Formula::Or(x, y) = occ else { unreachable!() };
                let p = go_lwr(&d.premises[0], pos, x)?;
                let p = go_lwr(&p, pos, y)?;
                Ok(b::or_r(p, pos + 1, x, y))
            }
            AndR => {
                let Formula::And(x, y) = occ else { unreachable!() };
                let pa = go_lwr(&d.premises[0], pos, x)?;
                let pb = go_lwr(&d.premises[1], pos, y)?;
                Ok(b::and_r(pa, pb, pos + 1, x, y))
            }
            // the right premise of (⊃r2)/(∀r2) is exactly the lowered sequent
            ImpR2 | ForallR2 => Ok(d.premises[1].clone()),
            other => Err(unsupported(other)),
        },
        AndL | OrR | AndR | OrL | ImpL | ForallL | ExistsL | ExistsR | Lift | ImpR1 | ForallR1 => {
            let prems = d
                .premises
                .iter()
                .map(|p| go_lwr(p, pos, occ))
                .collect::<TResult<Vec<_>>>()?;
            Ok(reapply(&d.rule, |i| i, prems))
        }
        ImpR2 | ForallR2 => {
            let (c, _, _) = principal_of(&d.rule);
            if c == pos {
                // move into the inserted component and out again
                let q1 = go_lwr(&go_lwr(&d.premises[0], pos, occ)?, pos + 1, occ)?;
                let q2 = go_lwr(&d.premises[1], pos, occ)?;
                Ok(reapply(&d.rule, |i| i, vec![q1, q2]))
            } else {
                let pos1 = if pos > c { pos + 1 } else { pos };
                let p1 = go_lwr(&d.premises[0], pos1, occ)?;
                let p2 = go_lwr(&d.premises[1], pos, occ)?;
                Ok(reapply(&d.rule, |i| i, vec![p1, p2]))
            }
        }
        other => Err(unsupported(other)),
    }
}

pub(crate) fn is_principal_here(
    rule: &RuleInstance,
    pos: usize,
    side: Side,
    f: &Formula,
) -> bool {
    rule.principal.first().is_some_and(|(c, s, g)| *c == pos && *s == side && g == f)
}

pub(crate) fn instantiate(x: &str, body: &Formula, p: &str) -> Formula {
    body.subst_var(x, &crate::syntax::Term::Param(p.to_string()))
        .expect("parameter substitution")
}
