//! Admissible contraction (left and right) and component merging, by
//! induction on (formula complexity, derivation height).

use crate::builders as b;
use crate::calculus::{Derivation, RuleTag, Side};
use crate::sequent::Sequent;
use crate::syntax::Formula;

use super::invert::{invert_left, invert_right, InvertLeft, InvertLeftResult};
use super::structural::{instantiate, is_principal_here, rename_param};
use super::{fresh_for, principal_of, reapply, TResult, TransformError};

fn e_at(len: usize, c: usize) -> Vec<usize> {
    let mut v = vec![0; len];
    v[c] = 1;
    v
}

/// Lemma: `(ic_l)` is admissible. Two occurrences of `f` in `ant(pos)`
/// become one.
pub fn admit_contraction_left(d: &Derivation, pos: usize, f: &Formula) -> TResult<Derivation> {
    if pos >= d.conclusion.len() || d.conclusion.component(pos).ant.count(f) < 2 {
        return Err(TransformError::Position(pos));
    }
    go_icl(d, pos, f)
}

fn go_icl(d: &Derivation, pos: usize, f: &Formula) -> TResult<Derivation> {
    use RuleTag::*;
    let tag = d.rule.tag();
    match tag {
        Id1 | Id2 | BotL => {
            let comp = d.conclusion.component(pos);
            let target = d.conclusion.with_component(
                pos,
                crate::sequent::Component::new(comp.ant.remove_one(f).unwrap(), comp.cons.clone()),
            );
            Ok(b::try_axiom(&target).expect("axioms absorb contraction"))
        }
        _ if is_principal_here(&d.rule, pos, Side::Left, f) => {
            let len = d.conclusion.len();
            match (tag, f) {
                (AndL, Formula::And(x, y)) => {
                    let spec = InvertLeft::And { a: (**x).clone(), b: (**y).clone() };
                    let InvertLeftResult::One(q) =
                        invert_left(&d.premises[0], &spec, &e_at(len, pos))?
                    else {
                        unreachable!()
                    };
                    let q = go_icl(&q, pos, x)?;
                    let q = go_icl(&q, pos, y)?;
                    Ok(b::and_l(q, pos, x, y))
                }
                (OrL, Formula::Or(x, y)) => {
                    let spec = InvertLeft::Or { a: (**x).clone(), b: (**y).clone() };
                    let InvertLeftResult::Two(qx, _) =
                        invert_left(&d.premises[0], &spec, &e_at(len, pos))?
                    else {
                        unreachable!()
                    };
                    let InvertLeftResult::Two(_, qy) =
                        invert_left(&d.premises[1], &spec, &e_at(len, pos))?
                    else {
                        unreachable!()
                    };
                    let qx = go_icl(&qx, pos, x)?;
                    let qy = go_icl(&qy, pos, y)?;
                    Ok(b::or_l(qx, qy, pos, x, y))
                }
                (ImpL, Formula::Implies(x, y)) => {
                    let spec = InvertLeft::Imp { a: (**x).clone(), b: (**y).clone() };
                    let InvertLeftResult::Two(q1, _) =
                        invert_left(&d.premises[0], &spec, &e_at(len, pos))?
                    else {
                        unreachable!()
                    };
                    let q1 = go_icl(&q1, pos, y)?;
                    let q2 = go_icl(&d.premises[1], pos, f)?;
                    Ok(b::imp_l(q1, q2, pos, x, y))
                }
                (ForallL, Formula::Forall(x, body)) => {
                    let w = d.rule.witness.clone().expect("witness");
                    let q = go_icl(&d.premises[0], pos, f)?;
                    Ok(b::forall_l(q, pos, x, body, &w))
                }
                (ExistsL, Formula::Exists(x, body)) => {
                    let e = d.rule.eigen.clone().expect("eigenvariable");
                    let fresh = fresh_for(&[d], &[]);
                    let spec =
                        InvertLeft::Exists { x: x.clone(), body: (**body).clone(), fresh: fresh.clone() };
                    let InvertLeftResult::One(q) =
                        invert_left(&d.premises[0], &spec, &e_at(len, pos))?
                    else {
                        unreachable!()
                    };
                    let q = rename_param(&q, &e, &fresh)?;
                    let inst = instantiate(x, body, &fresh);
                    let q = go_icl(&q, pos, &inst)?;
                    Ok(b::exists_l(q, pos, x, body, &fresh))
                }
                (Lift, _) => {
                    // the copied occurrence is one of the pair
                    let q = go_icl(&d.premises[0], pos, f)?;
                    Ok(b::lift(q, pos, f))
                }
                _ => unreachable!("left principal {} for {}", tag.name(), f),
            }
        }
        Lift if lift_into(&d.rule, pos, f) => {
            // a third copy was lifted into `pos`: contract one pair above
            let (c, _, _) = principal_of(&d.rule);
            let q = go_icl(&d.premises[0], pos, f)?;
            Ok(b::lift(q, c, f))
        }
        AndL | OrR | AndR | OrL | ImpL | ForallL | ExistsL | ExistsR | Lift | ImpR1 | ForallR1 => {
            let prems = d
                .premises
                .iter()
                .map(|p| go_icl(p, pos, f))
                .collect::<TResult<Vec<_>>>()?;
            Ok(reapply(&d.rule, |i| i, prems))
        }
        ImpR2 | ForallR2 => {
            let (c, _, _) = principal_of(&d.rule);
            let pos1 = if pos > c { pos + 1 } else { pos };
            let p1 = go_icl(&d.premises[0], pos1, f)?;
            let p2 = go_icl(&d.premises[1], pos, f)?;
            Ok(reapply(&d.rule, |i| i, vec![p1, p2]))
        }
        other => Err(TransformError::UnsupportedRule(other.name())),
    }
}

fn lift_into(rule: &crate::calculus::RuleInstance, pos: usize, f: &Formula) -> bool {
    rule.principal
        .first()
        .is_some_and(|(c, _, g)| *c + 1 == pos && g == f)
}

/// Lemma: `(mrg)` is admissible. Components `pos` and `pos+1` are fused.
pub fn admit_merge(d: &Derivation, pos: usize) -> TResult<Derivation> {
    if pos + 1 >= d.conclusion.len() {
        return Err(TransformError::Position(pos));
    }
    go_mrg(d, pos)
}

fn merged(s: &Sequent, pos: usize) -> Sequent {
    let fused = s.component(pos).union(s.component(pos + 1));
    s.remove_component(pos + 1).with_component(pos, fused)
}

fn go_mrg(d: &Derivation, pos: usize) -> TResult<Derivation> {
    use RuleTag::*;
    let tag = d.rule.tag();
    // conclusion-position map after fusing pos, pos+1
    let cmap = move |i: usize| {
        if i <= pos {
            i
        } else {
            i - 1
        }
    };
    match tag {
        Id1 | Id2 | BotL => {
            Ok(b::try_axiom(&merged(&d.conclusion, pos)).expect("axioms survive merging"))
        }
        ImpR2 | ForallR2 if principal_of(&d.rule).0 == pos => {
            // merging the two principal components: the right premise already
            // carries the formula in the lower component
            go_mrg(&d.premises[1], pos)
        }
        ImpR1 | ForallR1 => {
            let last = d.conclusion.len() - 1;
            let q = go_mrg(&d.premises[0], pos)?;
            if last == pos + 1 {
                // principal component fuses with its predecessor; the premise
                // still ends with the fresh component, so the rule re-applies
                Ok(reapply(&d.rule, cmap, vec![q]))
            } else {
                Ok(reapply(&d.rule, cmap, vec![q]))
            }
        }
        Lift => {
            let (c, _, f) = principal_of(&d.rule);
            let f = f.clone();
            if c == pos {
                // the copy lands inside the fused component: contract it
                let q = go_mrg(&d.premises[0], pos)?;
                admit_contraction_left(&q, pos, &f)
            } else {
                let q = go_mrg(&d.premises[0], pos)?;
                Ok(b::lift(q, cmap(c), &f))
            }
        }
        AndL | OrR | AndR | OrL | ImpL | ForallL | ExistsL | ExistsR => {
            let prems = d
                .premises
                .iter()
                .map(|p| go_mrg(p, pos))
                .collect::<TResult<Vec<_>>>()?;
            Ok(reapply(&d.rule, cmap, prems))
        }
        ImpR2 | ForallR2 => {
            let (c, _, _) = principal_of(&d.rule);
            // premise 1 inserts a component at c+1
            let pos1 = if pos > c { pos + 1 } else { pos };
            let p1 = go_mrg(&d.premises[0], pos1)?;
            let p2 = go_mrg(&d.premises[1], pos)?;
            Ok(reapply(&d.rule, cmap, vec![p1, p2]))
        }
        other => Err(TransformError::UnsupportedRule(other.name())),
    }
}

/// Lemma: `(ic_r)` is admissible. Two occurrences of `f` in `cons(pos)`
/// become one. Contracted existentials are resolvable only when both copies
/// are introduced with reconcilable witnesses; otherwise this reports
/// `ContractionObstruction`.
pub fn admit_contraction_right(d: &Derivation, pos: usize, f: &Formula) -> TResult<Derivation> {
    if pos >= d.conclusion.len() || d.conclusion.component(pos).cons.count(f) < 2 {
        return Err(TransformError::Position(pos));
    }
    go_icr(d, pos, f)
}

fn go_icr(d: &Derivation, pos: usize, f: &Formula) -> TResult<Derivation> {
    use RuleTag::*;
    let tag = d.rule.tag();
    match tag {
        Id1 | Id2 | BotL => {
            let comp = d.conclusion.component(pos);
            let target = d.conclusion.with_component(
                pos,
                crate::sequent::Component::new(comp.ant.clone(), comp.cons.remove_one(f).unwrap()),
            );
            Ok(b::try_axiom(&target).expect("axioms absorb contraction"))
        }
        _ if is_principal_here(&d.rule, pos, Side::Right, f) => match (tag, f) {
            (OrR, Formula::Or(x, y)) => {
                let q = invert_right(&d.premises[0], OrR, pos, f, None)?.remove(0);
                let q = go_icr(&q, pos, x)?;
                let q = go_icr(&q, pos, y)?;
                Ok(b::or_r(q, pos, x, y))
            }
            (AndR, Formula::And(x, y)) => {
                let qx = invert_right(&d.premises[0], AndR, pos, f, None)?.remove(0);
                let qy = invert_right(&d.premises[1], AndR, pos, f, None)?.remove(1);
                let qx = go_icr(&qx, pos, x)?;
                let qy = go_icr(&qy, pos, y)?;
                Ok(b::and_r(qx, qy, pos, x, y))
            }
            (ExistsR, Formula::Exists(x, body)) => {
                let w = d.rule.witness.clone().expect("witness");
                // the premise still holds the second copy; invert it to the
                // same witness when its own witnesses allow it
                let inst_w = instantiate(x, body, &w);
                let before = d.premises[0].conclusion.component(pos).cons.count(&inst_w);
                match invert_right(&d.premises[0], ExistsR, pos, f, Some(&w)) {
                    Ok(mut inv) => {
                        let q = inv.remove(0);
                        if q.conclusion.component(pos).cons.count(&inst_w) != before + 1 {
                            // the surviving copy was introduced elsewhere with
                            // a different witness
                            return Err(TransformError::ContractionObstruction(vec![w]));
                        }
                        let q = go_icr(&q, pos, &inst_w)?;
                        Ok(b::exists_r(q, pos, x, body, &w))
                    }
                    Err(TransformError::MultiWitness(ws)) => {
                        Err(TransformError::ContractionObstruction(ws))
                    }
                    Err(e) => Err(e),
                }
            }
            (ImpR1, Formula::Implies(x, y)) => {
                // invert the remaining copy inside the premise, fuse, contract
                // the parts, and re-apply
                let p = &d.premises[0];
                let q = invert_right(p, RuleTag::ImpR2, pos, f, None)?.remove(0);
                let q = admit_merge(&q, pos + 1)?;
                let q = admit_contraction_left(&q, pos + 1, x)?;
                let q = go_icr(&q, pos + 1, y)?;
                Ok(b::imp_r1(q, x, y))
            }
            (ForallR1, Formula::Forall(x, body)) => {
                let p = &d.premises[0];
                let e = d.rule.eigen.clone().expect("eigenvariable");
                let fresh = fresh_for(&[d], &[]);
                let q = invert_right(p, RuleTag::ForallR2, pos, f, Some(&fresh))?.remove(0);
                let q = rename_param(&q, &e, &fresh)?;
                let q = admit_merge(&q, pos + 1)?;
                let inst = instantiate(x, body, &fresh);
                let q = go_icr(&q, pos + 1, &inst)?;
                Ok(b::forall_r1(q, x, body, &fresh))
            }
            (ImpR2, Formula::Implies(x, y)) => {
                let p1 = &d.premises[0];
                let p2 = &d.premises[1];
                let q1 = invert_right(p1, RuleTag::ImpR2, pos, f, None)?.remove(0);
                let q1 = admit_merge(&q1, pos + 1)?;
                let q1 = admit_contraction_left(&q1, pos + 1, x)?;
                let q1 = go_icr(&q1, pos + 1, y)?;
                let q2 = super::structural::admit_lwr(p2, pos, f)?;
                let q2 = go_icr(&q2, pos + 1, f)?;
                Ok(b::imp_r2(q1, q2, pos, x, y))
            }
            (ForallR2, Formula::Forall(x, body)) => {
                let p1 = &d.premises[0];
                let p2 = &d.premises[1];
                let e = d.rule.eigen.clone().expect("eigenvariable");
                let fresh = fresh_for(&[d], &[]);
                let q1 = invert_right(p1, RuleTag::ForallR2, pos, f, Some(&fresh))?.remove(0);
                let q1 = rename_param(&q1, &e, &fresh)?;
                let q1 = admit_merge(&q1, pos + 1)?;
                let inst = instantiate(x, body, &fresh);
                let q1 = go_icr(&q1, pos + 1, &inst)?;
                let q2 = super::structural::admit_lwr(p2, pos, f)?;
                let q2 = go_icr(&q2, pos + 1, f)?;
                Ok(b::forall_r2(q1, q2, pos, x, body, &fresh))
            }
            _ => unreachable!("right principal {} for {}", tag.name(), f),
        },
        AndL | OrR | AndR | OrL | ImpL | ForallL | ExistsL | ExistsR | Lift | ImpR1 | ForallR1 => {
            let prems = d
                .premises
                .iter()
                .map(|p| go_icr(p, pos, f))
                .collect::<TResult<Vec<_>>>()?;
            Ok(reapply(&d.rule, |i| i, prems))
        }
        ImpR2 | ForallR2 => {
            let (c, _, _) = principal_of(&d.rule);
            let pos1 = if pos > c { pos + 1 } else { pos };
            let p1 = go_icr(&d.premises[0], pos1, f)?;
            let p2 = go_icr(&d.premises[1], pos, f)?;
            Ok(reapply(&d.rule, |i| i, vec![p1, p2]))
        }
        other => Err(TransformError::UnsupportedRule(other.name())),
    }
}

/// Contract `d`'s conclusion componentwise down to `target`: every component
/// of the target must be a sub-multiset of the corresponding component of
/// `d`, and the excess formulas must still occur in the target (contraction
/// cannot erase).
pub fn contract_to(d: &Derivation, target: &Sequent) -> TResult<Derivation> {
    assert_eq!(d.conclusion.len(), target.len(), "contract_to: length mismatch");
    let mut cur = d.clone();
    for i in 0..target.len() {
        loop {
            let comp = cur.conclusion.component(i).clone();
            let want = target.component(i);
            let mut done = true;
            for f in comp.ant.iter() {
                let have = comp.ant.count(f);
                let need = want.ant.count(f);
                if have > need {
                    assert!(need >= 1, "contract_to cannot erase `{f}`");
                    cur = admit_contraction_left(&cur, i, f)?;
                    done = false;
                    break;
                }
            }
            if !done {
                continue;
            }
            for f in comp.cons.iter() {
                let have = comp.cons.count(f);
                let need = want.cons.count(f);
                if have > need {
                    assert!(need >= 1, "contract_to cannot erase `{f}`");
                    cur = admit_contraction_right(&cur, i, f)?;
                    done = false;
                    break;
                }
            }
            if done {
                break;
            }
        }
    }
    debug_assert_eq!(&cur.conclusion, target, "contract_to missed the target");
    Ok(cur)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::calculus::{check_derivation, Mode};
    use crate::sequent::{parse_sequent, Multiset};
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

    fn ident_with_extra(a: &str, extra_ant: &str) -> Derivation {
        super::super::derive_identity(
            &ff(a),
            &[],
            &Multiset::singleton(ff(extra_ant)),
            &Multiset::new(),
            &[],
        )
    }

    #[test]
    fn contract_duplicate_atom_in_axiom() {
        let d = b::id1(seq("p, p |- p"), 0, atom("p"));
        let out = admit_contraction_left(&d, 0, &atom("p")).unwrap();
        assert_eq!(out.conclusion, seq("p |- p"));
        official(&out);
    }

    #[test]
    fn contract_left_conjunction_with_principal_copy() {
        // Γ = p∧q as duplicate: derive (p∧q), (p∧q) ⊢ p∧q by identity with a
        // spectator copy, then contract
        let d = ident_with_extra("p & q", "p & q");
        assert_eq!(d.conclusion, seq("p & q, p & q |- p & q"));
        let out = admit_contraction_left(&d, 0, &ff("p & q")).unwrap();
        assert_eq!(out.conclusion, seq("p & q |- p & q"));
        official(&out);
    }

    #[test]
    fn contract_left_exists_through_eigen() {
        let d = ident_with_extra("exists x. p(x)", "exists x. p(x)");
        let out = admit_contraction_left(&d, 0, &ff("exists x. p(x)")).unwrap();
        assert_eq!(out.conclusion, seq("exists x. p(x) |- exists x. p(x)"));
        official(&out);
    }

    #[test]
    fn contract_left_forall_retention() {
        let d = ident_with_extra("forall x. p(x)", "forall x. p(x)");
        let out = admit_contraction_left(&d, 0, &ff("forall x. p(x)")).unwrap();
        assert_eq!(out.conclusion, seq("forall x. p(x) |- forall x. p(x)"));
        official(&out);
    }

    #[test]
    fn merge_id2_to_id1() {
        let d = b::id2(seq("p |- // |- p"), 0, 1, atom("p"));
        let out = admit_merge(&d, 0).unwrap();
        assert_eq!(out.conclusion, seq("p |- p"));
        assert_eq!(out.rule.tag(), RuleTag::Id1);
        official(&out);
    }

    #[test]
    fn merge_trailing_empty_component() {
        let ax = b::id1(seq("p |- p // |-"), 0, atom("p"));
        let out = admit_merge(&ax, 0).unwrap();
        assert_eq!(out.conclusion, seq("p |- p"));
        official(&out);
    }

    #[test]
    fn merge_across_forall_r2_principal() {
        let left = b::id1(seq("q |- q // |- p(#a0) // |-"), 0, atom("q"));
        let right = b::id1(seq("q |- q // |- forall x. p(x)"), 0, atom("q"));
        let d = b::forall_r2(left, right, 0, "x", &px(), "a0");
        assert_eq!(d.conclusion, seq("q |- q, forall x. p(x) // |-"));
        let out = admit_merge(&d, 0).unwrap();
        assert_eq!(out.conclusion, seq("q |- q, forall x. p(x)"));
        official(&out);
    }

    #[test]
    fn contract_right_atom_in_axiom() {
        let d = b::id1(seq("p |- p, p"), 0, atom("p"));
        let out = admit_contraction_right(&d, 0, &atom("p")).unwrap();
        assert_eq!(out.conclusion, seq("p |- p"));
        official(&out);
    }

    #[test]
    fn contract_right_forall_through_inversion() {
        // q, ∀xp(x)?  derive ⊢-side duplicate: ∀x p(x) ⊢ ∀x p(x), ∀x p(x)
        let d = super::super::derive_identity(
            &ff("forall x. p(x)"),
            &[],
            &Multiset::new(),
            &Multiset::singleton(ff("forall x. p(x)")),
            &[],
        );
        assert_eq!(d.conclusion, seq("forall x. p(x) |- forall x. p(x), forall x. p(x)"));
        let out = admit_contraction_right(&d, 0, &ff("forall x. p(x)")).unwrap();
        assert_eq!(out.conclusion, seq("forall x. p(x) |- forall x. p(x)"));
        official(&out);
    }

    #[test]
    fn contract_right_implication() {
        let d = super::super::derive_identity(
            &ff("p -> q"),
            &[],
            &Multiset::new(),
            &Multiset::singleton(ff("p -> q")),
            &[],
        );
        let out = admit_contraction_right(&d, 0, &ff("p -> q")).unwrap();
        assert_eq!(out.conclusion, seq("p -> q |- p -> q"));
        official(&out);
    }

    #[test]
    fn contract_right_forall_r2_two_branch_reconstruction() {
        // a trailing component puts the principal (∀r2) at a non-last slot
        let d = super::super::derive_identity(
            &ff("forall x. p(x)"),
            &[],
            &Multiset::new(),
            &Multiset::singleton(ff("forall x. p(x)")),
            &[crate::sequent::Component::new(Multiset::singleton(ff("r")), Multiset::new())],
        );
        assert_eq!(
            d.conclusion,
            seq("forall x. p(x) |- forall x. p(x), forall x. p(x) // r |-")
        );
        assert_eq!(d.rule.tag(), RuleTag::ForallR2);
        let out = admit_contraction_right(&d, 0, &ff("forall x. p(x)")).unwrap();
        assert_eq!(out.conclusion, seq("forall x. p(x) |- forall x. p(x) // r |-"));
        official(&out);
    }

    #[test]
    fn contract_right_exists_same_witness() {
        let ax = b::id1(seq("p(#a) |- p(#a), p(#a)"), 0, ff("p(#a)"));
        let d = b::exists_r(ax, 0, "x", &px(), "a");
        let d = b::exists_r(d, 0, "x", &px(), "a");
        assert_eq!(d.conclusion, seq("p(#a) |- exists x. p(x), exists x. p(x)"));
        let out = admit_contraction_right(&d, 0, &ff("exists x. p(x)")).unwrap();
        assert_eq!(out.conclusion, seq("p(#a) |- exists x. p(x)"));
        official(&out);
    }

    #[test]
    fn contract_right_exists_branchwise_witnesses_reconcile() {
        // p(#a)∨p(#b) ⊢ ∃,∃ contracts branch by branch: each branch's spare
        // copy is a spectator there and follows that branch's witness
        let la = b::exists_r(
            b::id1(seq("p(#a) |- p(#a), exists x. p(x)"), 0, ff("p(#a)")),
            0,
            "x",
            &px(),
            "a",
        );
        let lb = b::exists_r(
            b::id1(seq("p(#b) |- p(#b), exists x. p(x)"), 0, ff("p(#b)")),
            0,
            "x",
            &px(),
            "b",
        );
        let d = b::or_l(la, lb, 0, &ff("p(#a)"), &ff("p(#b)"));
        official(&d);
        let out = admit_contraction_right(&d, 0, &ff("exists x. p(x)")).unwrap();
        assert_eq!(out.conclusion, seq("p(#a) | p(#b) |- exists x. p(x)"));
        official(&out);
    }

    #[test]
    fn contract_right_exists_divergent_witnesses_reports_obstruction() {
        // both copies consumed in one branch with different witnesses: the
        // reconciliation recipe has nothing to return
        let qx = crate::syntax::atom1("q", crate::syntax::var("x"));
        let ax = b::id1(seq("q(#a), q(#b) |- q(#a), q(#b)"), 0, ff("q(#a)"));
        let d = b::exists_r(ax, 0, "x", &qx, "b");
        let d = b::exists_r(d, 0, "x", &qx, "a");
        assert_eq!(d.conclusion, seq("q(#a), q(#b) |- exists x. q(x), exists x. q(x)"));
        official(&d);
        let err = admit_contraction_right(&d, 0, &ff("exists x. q(x)")).unwrap_err();
        assert!(matches!(err, TransformError::ContractionObstruction(_)));
    }

    #[test]
    fn contract_to_reaches_target() {
        let d = b::id1(seq("p, p, q |- p, r, r"), 0, atom("p"));
        let out = contract_to(&d, &seq("p, q |- p, r")).unwrap();
        assert_eq!(out.conclusion, seq("p, q |- p, r"));
        official(&out);
    }
}
