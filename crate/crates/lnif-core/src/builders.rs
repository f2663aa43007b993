//! Forward rule constructors.
//!
//! Each function takes premise derivation(s) plus instantiation data and
//! returns the derivation extended downward by one inference, computing the
//! conclusion from the schema. With `debug_assertions` every constructed node
//! is immediately re-checked, so transformation bugs surface at the exact
//! inference that went wrong.

use crate::calculus::{
    check_node, CutInstance, Derivation, RuleInstance, RuleTag, Side,
};
use crate::sequent::{Component, Sequent};
use crate::syntax::{Formula, Term};

fn node(conclusion: Sequent, rule: RuleInstance, premises: Vec<Derivation>) -> Derivation {
    #[cfg(debug_assertions)]
    {
        let prem_seqs: Vec<&Sequent> = premises.iter().map(|p| &p.conclusion).collect();
        if let Err(e) = check_node(&conclusion, &rule, &prem_seqs, crate::calculus::Mode::WithCut) {
            panic!(
                "builder produced an invalid {} node: {e}\n conclusion: {conclusion}\n premises: {}",
                rule.tag().name(),
                prem_seqs.iter().map(|s| format!("`{s}`")).collect::<Vec<_>>().join(", ")
            );
        }
    }
    #[cfg(not(debug_assertions))]
    let _ = check_node;
    Derivation { conclusion, rule, premises }
}

fn instantiate(x: &str, body: &Formula, p: &str) -> Formula {
    body.subst_var(x, &Term::Param(p.to_string())).expect("parameter substitution")
}

pub fn id1(g: Sequent, c: usize, p: Formula) -> Derivation {
    let rule = RuleInstance::tagged(RuleTag::Id1)
        .with_principal(c, Side::Left, p.clone())
        .with_principal(c, Side::Right, p);
    node(g, rule, vec![])
}

pub fn id2(g: Sequent, c_left: usize, c_right: usize, p: Formula) -> Derivation {
    let rule = RuleInstance::tagged(RuleTag::Id2)
        .with_principal(c_left, Side::Left, p.clone())
        .with_principal(c_right, Side::Right, p);
    node(g, rule, vec![])
}

pub fn bot_l(g: Sequent, c: usize) -> Derivation {
    let rule = RuleInstance::tagged(RuleTag::BotL).with_principal(c, Side::Left, Formula::Bottom);
    node(g, rule, vec![])
}

/// Close `g` with whichever axiom applies, if any.
pub fn try_axiom(g: &Sequent) -> Option<Derivation> {
    for (c, comp) in g.components().iter().enumerate() {
        if comp.ant.contains(&Formula::Bottom) {
            return Some(bot_l(g.clone(), c));
        }
        for f in comp.ant.iter() {
            if matches!(f, Formula::Atom(..)) && comp.cons.contains(f) {
                return Some(id1(g.clone(), c, f.clone()));
            }
        }
    }
    for c1 in 0..g.len() {
        for f in g.component(c1).ant.iter() {
            if !matches!(f, Formula::Atom(..)) {
                continue;
            }
            for c2 in c1 + 1..g.len() {
                if g.component(c2).cons.contains(f) {
                    return Some(id2(g.clone(), c1, c2, f.clone()));
                }
            }
        }
    }
    None
}

/// Conclusion: one `a` and one `b` in `ant(c)` fused into `a ∧ b`.
pub fn and_l(prem: Derivation, c: usize, a: &Formula, b: &Formula) -> Derivation {
    let comp = prem.conclusion.component(c);
    let ant = comp
        .ant
        .remove_one(a)
        .and_then(|m| m.remove_one(b))
        .expect("and_l: components not present")
        .insert(crate::syntax::and(a.clone(), b.clone()));
    let conclusion = prem.conclusion.with_component(c, Component::new(ant, comp.cons.clone()));
    let rule = RuleInstance::tagged(RuleTag::AndL).with_principal(
        c,
        Side::Left,
        crate::syntax::and(a.clone(), b.clone()),
    );
    node(conclusion, rule, vec![prem])
}

pub fn and_r(left: Derivation, right: Derivation, c: usize, a: &Formula, b: &Formula) -> Derivation {
    let f = crate::syntax::and(a.clone(), b.clone());
    let comp = left.conclusion.component(c);
    let cons = comp.cons.remove_one(a).expect("and_r: left conjunct missing").insert(f.clone());
    let conclusion = left.conclusion.with_component(c, Component::new(comp.ant.clone(), cons));
    let rule = RuleInstance::tagged(RuleTag::AndR).with_principal(c, Side::Right, f);
    node(conclusion, rule, vec![left, right])
}

pub fn or_l(left: Derivation, right: Derivation, c: usize, a: &Formula, b: &Formula) -> Derivation {
    let f = crate::syntax::or(a.clone(), b.clone());
    let comp = left.conclusion.component(c);
    let ant = comp.ant.remove_one(a).expect("or_l: left disjunct missing").insert(f.clone());
    let conclusion = left.conclusion.with_component(c, Component::new(ant, comp.cons.clone()));
    let rule = RuleInstance::tagged(RuleTag::OrL).with_principal(c, Side::Left, f);
    node(conclusion, rule, vec![left, right])
}

pub fn or_r(prem: Derivation, c: usize, a: &Formula, b: &Formula) -> Derivation {
    let f = crate::syntax::or(a.clone(), b.clone());
    let comp = prem.conclusion.component(c);
    let cons = comp
        .cons
        .remove_one(a)
        .and_then(|m| m.remove_one(b))
        .expect("or_r: disjuncts missing")
        .insert(f.clone());
    let conclusion = prem.conclusion.with_component(c, Component::new(comp.ant.clone(), cons));
    let rule = RuleInstance::tagged(RuleTag::OrR).with_principal(c, Side::Right, f);
    node(conclusion, rule, vec![prem])
}

/// Premises: `G // Γ, B ⊢ Δ // H` and `G // Γ, A⊃B ⊢ A, Δ // H`.
pub fn imp_l(left: Derivation, right: Derivation, c: usize, a: &Formula, b: &Formula) -> Derivation {
    let f = crate::syntax::implies(a.clone(), b.clone());
    let comp = left.conclusion.component(c);
    let ant = comp.ant.remove_one(b).expect("imp_l: consequent part missing").insert(f.clone());
    let conclusion = left.conclusion.with_component(c, Component::new(ant, comp.cons.clone()));
    let rule = RuleInstance::tagged(RuleTag::ImpL).with_principal(c, Side::Left, f);
    node(conclusion, rule, vec![left, right])
}

/// Premise ends with the fresh component `A ⊢ B`; conclusion folds it into
/// `A ⊃ B` at the (new) last component.
pub fn imp_r1(prem: Derivation, a: &Formula, b: &Formula) -> Derivation {
    let f = crate::syntax::implies(a.clone(), b.clone());
    let s = &prem.conclusion;
    let c = s.len() - 2;
    let trimmed = s.remove_component(s.len() - 1);
    let comp = trimmed.component(c);
    let conclusion =
        trimmed.with_component(c, Component::new(comp.ant.clone(), comp.cons.insert(f.clone())));
    let rule = RuleInstance::tagged(RuleTag::ImpR1).with_principal(c, Side::Right, f);
    node(conclusion, rule, vec![prem])
}

/// `left` has the fresh `A ⊢ B` component at `c+1`; `right` has `A ⊃ B` in
/// the consequent of its `c+1` component.
pub fn imp_r2(left: Derivation, right: Derivation, c: usize, a: &Formula, b: &Formula) -> Derivation {
    let f = crate::syntax::implies(a.clone(), b.clone());
    let trimmed = left.conclusion.remove_component(c + 1);
    let comp = trimmed.component(c);
    let conclusion =
        trimmed.with_component(c, Component::new(comp.ant.clone(), comp.cons.insert(f.clone())));
    let rule = RuleInstance::tagged(RuleTag::ImpR2).with_principal(c, Side::Right, f);
    node(conclusion, rule, vec![left, right])
}

/// Premise has `f` in `ant(c)` and `ant(c+1)`; conclusion drops the copy at `c+1`.
pub fn lift(prem: Derivation, c: usize, f: &Formula) -> Derivation {
    let comp = prem.conclusion.component(c + 1);
    let ant = comp.ant.remove_one(f).expect("lift: copy missing in successor");
    let conclusion = prem.conclusion.with_component(c + 1, Component::new(ant, comp.cons.clone()));
    let rule = RuleInstance::tagged(RuleTag::Lift).with_principal(c, Side::Left, f.clone());
    node(conclusion, rule, vec![prem])
}

/// Premise has `body[#w/x]` and `∀x body` in `ant(c)`; conclusion drops the instance.
pub fn forall_l(prem: Derivation, c: usize, x: &str, body: &Formula, w: &str) -> Derivation {
    let f = Formula::Forall(x.to_string(), Box::new(body.clone()));
    let inst = instantiate(x, body, w);
    let comp = prem.conclusion.component(c);
    let ant = comp.ant.remove_one(&inst).expect("forall_l: instance missing");
    let conclusion = prem.conclusion.with_component(c, Component::new(ant, comp.cons.clone()));
    let rule = RuleInstance::tagged(RuleTag::ForallL)
        .with_principal(c, Side::Left, f)
        .with_witness(w);
    node(conclusion, rule, vec![prem])
}

/// Premise ends with the fresh component `⊢ body[#e/x]`.
pub fn forall_r1(prem: Derivation, x: &str, body: &Formula, e: &str) -> Derivation {
    let f = Formula::Forall(x.to_string(), Box::new(body.clone()));
    let s = &prem.conclusion;
    let c = s.len() - 2;
    let trimmed = s.remove_component(s.len() - 1);
    let comp = trimmed.component(c);
    let conclusion =
        trimmed.with_component(c, Component::new(comp.ant.clone(), comp.cons.insert(f.clone())));
    let rule = RuleInstance::tagged(RuleTag::ForallR1)
        .with_principal(c, Side::Right, f)
        .with_eigen(e);
    node(conclusion, rule, vec![prem])
}

pub fn forall_r2(
    left: Derivation,
    right: Derivation,
    c: usize,
    x: &str,
    body: &Formula,
    e: &str,
) -> Derivation {
    let f = Formula::Forall(x.to_string(), Box::new(body.clone()));
    let trimmed = left.conclusion.remove_component(c + 1);
    let comp = trimmed.component(c);
    let conclusion =
        trimmed.with_component(c, Component::new(comp.ant.clone(), comp.cons.insert(f.clone())));
    let rule = RuleInstance::tagged(RuleTag::ForallR2)
        .with_principal(c, Side::Right, f)
        .with_eigen(e);
    node(conclusion, rule, vec![left, right])
}

pub fn exists_l(prem: Derivation, c: usize, x: &str, body: &Formula, e: &str) -> Derivation {
    let f = Formula::Exists(x.to_string(), Box::new(body.clone()));
    let inst = instantiate(x, body, e);
    let comp = prem.conclusion.component(c);
    let ant = comp.ant.remove_one(&inst).expect("exists_l: instance missing").insert(f.clone());
    let conclusion = prem.conclusion.with_component(c, Component::new(ant, comp.cons.clone()));
    let rule = RuleInstance::tagged(RuleTag::ExistsL)
        .with_principal(c, Side::Left, f)
        .with_eigen(e);
    node(conclusion, rule, vec![prem])
}

pub fn exists_r(prem: Derivation, c: usize, x: &str, body: &Formula, w: &str) -> Derivation {
    let f = Formula::Exists(x.to_string(), Box::new(body.clone()));
    let inst = instantiate(x, body, w);
    let comp = prem.conclusion.component(c);
    let cons = comp.cons.remove_one(&inst).expect("exists_r: instance missing").insert(f.clone());
    let conclusion = prem.conclusion.with_component(c, Component::new(comp.ant.clone(), cons));
    let rule = RuleInstance::tagged(RuleTag::ExistsR)
        .with_principal(c, Side::Right, f)
        .with_witness(w);
    node(conclusion, rule, vec![prem])
}

// --- structural rules (extended mode) --------------------------------------

pub fn iw(prem: Derivation, c: usize, add_ant: &[Formula], add_cons: &[Formula]) -> Derivation {
    let comp = prem.conclusion.component(c);
    let conclusion = prem.conclusion.with_component(
        c,
        Component::new(comp.ant.insert_many(add_ant), comp.cons.insert_many(add_cons)),
    );
    let mut rule = RuleInstance::tagged(RuleTag::Iw);
    for f in add_ant {
        rule = rule.with_principal(c, Side::Left, f.clone());
    }
    for f in add_cons {
        rule = rule.with_principal(c, Side::Right, f.clone());
    }
    node(conclusion, rule, vec![prem])
}

pub fn ic_l(prem: Derivation, c: usize, f: &Formula) -> Derivation {
    let comp = prem.conclusion.component(c);
    let ant = comp
        .ant
        .remove_one(f)
        .filter(|m| m.contains(f))
        .expect("ic_l: needs two occurrences");
    let conclusion = prem.conclusion.with_component(c, Component::new(ant, comp.cons.clone()));
    let rule = RuleInstance::tagged(RuleTag::IcL).with_principal(c, Side::Left, f.clone());
    node(conclusion, rule, vec![prem])
}

pub fn ic_r(prem: Derivation, c: usize, f: &Formula) -> Derivation {
    let comp = prem.conclusion.component(c);
    let cons = comp
        .cons
        .remove_one(f)
        .filter(|m| m.contains(f))
        .expect("ic_r: needs two occurrences");
    let conclusion = prem.conclusion.with_component(c, Component::new(comp.ant.clone(), cons));
    let rule = RuleInstance::tagged(RuleTag::IcR).with_principal(c, Side::Right, f.clone());
    node(conclusion, rule, vec![prem])
}

pub fn ew(prem: Derivation, pos: usize) -> Derivation {
    let conclusion = prem.conclusion.insert_component(pos, Component::empty());
    let rule = RuleInstance::tagged(RuleTag::Ew).with_pos(pos);
    node(conclusion, rule, vec![prem])
}

pub fn sub(prem: Derivation, a: &str, b: &str) -> Derivation {
    let conclusion = prem.conclusion.rename_param(a, b);
    let rule = RuleInstance {
        tag: Some(RuleTag::Sub),
        sub_map: Some((a.to_string(), b.to_string())),
        ..Default::default()
    };
    node(conclusion, rule, vec![prem])
}

/// Premise has `f` in `cons(c)`; conclusion moves it to `cons(c+1)`.
pub fn lwr(prem: Derivation, c: usize, f: &Formula) -> Derivation {
    let comp = prem.conclusion.component(c);
    let cons = comp.cons.remove_one(f).expect("lwr: occurrence missing");
    let trimmed = prem.conclusion.with_component(c, Component::new(comp.ant.clone(), cons));
    let succ = trimmed.component(c + 1);
    let conclusion = trimmed
        .with_component(c + 1, Component::new(succ.ant.clone(), succ.cons.insert(f.clone())));
    let rule = RuleInstance::tagged(RuleTag::Lwr).with_principal(c + 1, Side::Right, f.clone());
    node(conclusion, rule, vec![prem])
}

/// Premise has `⊥` in `cons(c)`; conclusion drops it.
pub fn bot_r(prem: Derivation, c: usize) -> Derivation {
    let comp = prem.conclusion.component(c);
    let cons = comp.cons.remove_one(&Formula::Bottom).expect("bot_r: bottom missing");
    let conclusion = prem.conclusion.with_component(c, Component::new(comp.ant.clone(), cons));
    let rule = RuleInstance::tagged(RuleTag::BotR).with_principal(c, Side::Right, Formula::Bottom);
    node(conclusion, rule, vec![prem])
}

pub fn mrg(prem: Derivation, pos: usize) -> Derivation {
    let s = &prem.conclusion;
    let fused = s.component(pos).union(s.component(pos + 1));
    let conclusion = s.remove_component(pos + 1).with_component(pos, fused);
    let rule = RuleInstance::tagged(RuleTag::Mrg).with_pos(pos);
    node(conclusion, rule, vec![prem])
}

/// The cut rule of the cut-elimination theorem.
pub fn cut(left: Derivation, right: Derivation, inst: CutInstance) -> Derivation {
    let conclusion = crate::calculus::cut_conclusion(&left.conclusion, &right.conclusion, &inst)
        .expect("cut: premises do not align");
    let rule = RuleInstance { tag: Some(RuleTag::Cut), cut: Some(inst), ..Default::default() };
    node(conclusion, rule, vec![left, right])
}

/// Weaken `prem` componentwise until its conclusion equals `target`.
/// Every component of the premise must be a sub-multiset of the target's.
pub fn weaken_to(prem: Derivation, target: &Sequent) -> Derivation {
    assert_eq!(prem.conclusion.len(), target.len(), "weaken_to: length mismatch");
    let mut d = prem;
    for c in 0..target.len() {
        let have = d.conclusion.component(c).clone();
        let want = target.component(c);
        let mut add_ant = want.ant.to_vec();
        for f in have.ant.iter() {
            let idx = add_ant.iter().position(|g| g == f).expect("weaken_to: not a superset");
            add_ant.remove(idx);
        }
        let mut add_cons = want.cons.to_vec();
        for f in have.cons.iter() {
            let idx = add_cons.iter().position(|g| g == f).expect("weaken_to: not a superset");
            add_cons.remove(idx);
        }
        if !add_ant.is_empty() || !add_cons.is_empty() {
            d = iw(d, c, &add_ant, &add_cons);
        }
    }
    d
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

    #[test]
    fn builders_compose_a_checked_proof() {
        // ⊢ p -> p via ImpR1 over Id1
        let ax = id1(seq("|- // p |- p"), 1, atom("p"));
        let d = imp_r1(ax, &atom("p"), &atom("p"));
        assert_eq!(d.conclusion, seq("|- p -> p"));
        check_derivation(&d, Mode::Official).unwrap();
    }

    #[test]
    fn weaken_to_reaches_superset() {
        let ax = id1(seq("p |- p"), 0, atom("p"));
        let d = weaken_to(ax, &seq("p, q |- p, r"));
        assert_eq!(d.conclusion, seq("p, q |- p, r"));
        check_derivation(&d, Mode::Extended).unwrap();
    }

    #[test]
    fn try_axiom_finds_id2() {
        let g = seq("p |- q // r |- p");
        let d = try_axiom(&g).unwrap();
        assert_eq!(d.rule.tag(), RuleTag::Id2);
        check_derivation(&d, Mode::Official).unwrap();
    }

    #[test]
    fn cut_builder_checks() {
        // left: ⊢ p  (via nothing derivable — craft with weakening from p ⊢ p is wrong;
        // instead cut on p between p ⊢ p and p ⊢ q-ish shapes)
        let left = id1(seq("q |- p, q"), 0, atom("q"));
        let right = id1(seq("p |- p"), 0, atom("p"));
        let inst = CutInstance::new(atom("p"), vec![1], 0);
        let d = cut(left, right, inst);
        assert_eq!(d.conclusion, seq("q |- q, p"));
        check_derivation(&d, Mode::WithCut).unwrap();
        assert!(check_derivation(&d, Mode::Extended).is_err());
    }
}
