//! The identity lemma: `G // Γ, A ⊢ A, Δ // H` is derivable for every `A`,
//! by induction on the formula. The implication and universal cases thread
//! the principal formula through every later component.

use std::collections::BTreeSet;

use crate::builders as b;
use crate::calculus::Derivation;
use crate::sequent::{Component, Multiset, Sequent};
use crate::syntax::{fresh_param, Formula, Name};

use super::structural::instantiate;

/// Derivation of `G // Γ, A ⊢ A, Δ // H`.
pub fn derive_identity(
    a: &Formula,
    g: &[Component],
    gamma: &Multiset,
    delta: &Multiset,
    h: &[Component],
) -> Derivation {
    let mut avoid: BTreeSet<Name> = a.params();
    for c in g.iter().chain(h) {
        avoid.extend(c.params());
    }
    avoid.extend(gamma.params());
    avoid.extend(delta.params());
    build(a, g, gamma, delta, h, &mut avoid)
}

fn conclusion_of(
    a: &Formula,
    g: &[Component],
    gamma: &Multiset,
    delta: &Multiset,
    h: &[Component],
) -> Sequent {
    let mut comps: Vec<Component> = g.to_vec();
    comps.push(Component::new(gamma.insert(a.clone()), delta.insert(a.clone())));
    comps.extend(h.iter().cloned());
    Sequent::new(comps)
}

fn build(
    a: &Formula,
    g: &[Component],
    gamma: &Multiset,
    delta: &Multiset,
    h: &[Component],
    avoid: &mut BTreeSet<Name>,
) -> Derivation {
    let pos = g.len();
    match a {
        Formula::Atom(..) => b::id1(conclusion_of(a, g, gamma, delta, h), pos, a.clone()),
        Formula::Bottom => b::bot_l(conclusion_of(a, g, gamma, delta, h), pos),
        Formula::And(x, y) => {
            let p1 = build(x, g, &gamma.insert((**y).clone()), delta, h, avoid);
            let p2 = build(y, g, &gamma.insert((**x).clone()), delta, h, avoid);
            let d = b::and_r(p1, p2, pos, x, y);
            b::and_l(d, pos, x, y)
        }
        Formula::Or(x, y) => {
            let p1 = build(x, g, gamma, &delta.insert((**y).clone()), h, avoid);
            let p2 = build(y, g, gamma, &delta.insert((**x).clone()), h, avoid);
            let d = b::or_l(p1, p2, pos, x, y);
            b::or_r(d, pos, x, y)
        }
        Formula::Exists(x, body) => {
            let w = fresh(avoid);
            let inst = instantiate(x, body, &w);
            let p = build(&inst, g, gamma, delta, h, avoid);
            let d = b::exists_r(p, pos, x, body, &w);
            b::exists_l(d, pos, x, body, &w)
        }
        Formula::Implies(x, y) => {
            let mut slots: Vec<(Multiset, Multiset)> = vec![(gamma.clone(), delta.clone())];
            slots.extend(h.iter().map(|c| (c.ant.clone(), c.cons.clone())));
            imp_chain(a, x, y, g, &slots, 0, avoid)
        }
        Formula::Forall(x, body) => {
            let mut slots: Vec<(Multiset, Multiset)> = vec![(gamma.clone(), delta.clone())];
            slots.extend(h.iter().map(|c| (c.ant.clone(), c.cons.clone())));
            forall_chain(a, x, body, g, &slots, 0, avoid)
        }
    }
}

fn fresh(avoid: &mut BTreeSet<Name>) -> Name {
    let w = fresh_param(avoid);
    avoid.insert(w.clone());
    w
}

/// Prefix `G` followed by slots `0..i` with the principal formula added to
/// each antecedent.
fn chain_prefix(
    f: &Formula,
    g: &[Component],
    slots: &[(Multiset, Multiset)],
    i: usize,
) -> Vec<Component> {
    let mut out = g.to_vec();
    for (ant, cons) in &slots[..i] {
        out.push(Component::new(ant.insert(f.clone()), cons.clone()));
    }
    out
}

fn plain_rest(slots: &[(Multiset, Multiset)], from: usize) -> Vec<Component> {
    slots[from..].iter().map(|(a, c)| Component::new(a.clone(), c.clone())).collect()
}

/// Derivation of `prefix_i // Γᵢ, B⊃C ⊢ B⊃C, Δᵢ // plain-rest`.
fn imp_chain(
    f: &Formula,
    x: &Formula,
    y: &Formula,
    g: &[Component],
    slots: &[(Multiset, Multiset)],
    i: usize,
    avoid: &mut BTreeSet<Name>,
) -> Derivation {
    let prefix = chain_prefix(f, g, slots, i);
    let (ant_i, cons_i) = &slots[i];
    let pos = prefix.len();
    // ctx component i with f on the left
    let mut ctx = prefix.clone();
    ctx.push(Component::new(ant_i.insert(f.clone()), cons_i.clone()));
    let rest = plain_rest(slots, i + 1);

    // G′ // B, C ⊢ C // rest   and   G′ // B, B⊃C ⊢ B, C // rest
    let p1 = build(y, &ctx, &Multiset::singleton(x.clone()), &Multiset::new(), &rest, avoid);
    let p2 = build(
        x,
        &ctx,
        &Multiset::singleton(f.clone()),
        &Multiset::singleton(y.clone()),
        &rest,
        avoid,
    );
    let d = b::imp_l(p1, p2, pos + 1, x, y);
    let d = b::lift(d, pos, f);
    if i + 1 == slots.len() {
        b::imp_r1(d, x, y)
    } else {
        let next = imp_chain(f, x, y, g, slots, i + 1, avoid);
        let right = b::lift(next, pos, f);
        b::imp_r2(d, right, pos, x, y)
    }
}

/// Derivation of `prefix_i // Γᵢ, ∀xB ⊢ ∀xB, Δᵢ // plain-rest`.
fn forall_chain(
    f: &Formula,
    x: &str,
    body: &Formula,
    g: &[Component],
    slots: &[(Multiset, Multiset)],
    i: usize,
    avoid: &mut BTreeSet<Name>,
) -> Derivation {
    let prefix = chain_prefix(f, g, slots, i);
    let (ant_i, cons_i) = &slots[i];
    let pos = prefix.len();
    let mut ctx = prefix.clone();
    ctx.push(Component::new(ant_i.insert(f.clone()), cons_i.clone()));
    let rest = plain_rest(slots, i + 1);

    let w = fresh(avoid);
    let inst = instantiate(x, body, &w);
    // G′ // ∀xB, B[w] ⊢ B[w] // rest
    let leaf = build(&inst, &ctx, &Multiset::singleton(f.clone()), &Multiset::new(), &rest, avoid);
    let d = b::forall_l(leaf, pos + 1, x, body, &w);
    let d = b::lift(d, pos, f);
    if i + 1 == slots.len() {
        b::forall_r1(d, x, body, &w)
    } else {
        let next = forall_chain(f, x, body, g, slots, i + 1, avoid);
        let right = b::lift(next, pos, f);
        b::forall_r2(d, right, pos, x, body, &w)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::calculus::{check_derivation, Mode, RuleTag};
    use crate::sequent::parse_sequent;
    use crate::syntax::Signature;

    fn seq(text: &str) -> Sequent {
        let mut sig = Signature::new();
        parse_sequent(text, &mut sig).unwrap()
    }

    fn ff(text: &str) -> Formula {
        let mut sig = Signature::new();
        crate::syntax::parse_formula_inferring(text, &mut sig).unwrap()
    }

    fn ident(a: &str) -> Derivation {
        derive_identity(&ff(a), &[], &Multiset::new(), &Multiset::new(), &[])
    }

    #[test]
    fn atomic_identity_is_one_axiom() {
        let d = ident("p(#a)");
        assert_eq!(d.height(), 1);
        assert_eq!(d.rule.tag(), RuleTag::Id1);
        check_derivation(&d, Mode::Official).unwrap();
    }

    #[test]
    fn implication_identity_checks() {
        let d = ident("p -> q");
        assert_eq!(d.conclusion, seq("p -> q |- p -> q"));
        check_derivation(&d, Mode::Official).unwrap();
    }

    #[test]
    fn forall_identity_with_trailing_component() {
        let f = ff("forall x. p(x)");
        let d = derive_identity(
            &f,
            &[],
            &Multiset::new(),
            &Multiset::new(),
            &[Component::new(Multiset::singleton(ff("r")), Multiset::new())],
        );
        assert_eq!(d.conclusion, seq("forall x. p(x) |- forall x. p(x) // r |-"));
        check_derivation(&d, Mode::Official).unwrap();
    }

    #[test]
    fn nested_identities_check_in_context() {
        let g = [Component::new(Multiset::singleton(ff("s")), Multiset::new())];
        let h = [
            Component::new(Multiset::new(), Multiset::singleton(ff("t"))),
            Component::new(Multiset::singleton(ff("u")), Multiset::new()),
        ];
        for text in [
            "p & (q | r)",
            "(p -> q) -> r",
            "exists x. p(x) & q",
            "forall x. (p(x) -> q)",
            "forall x. exists y. r0(x, y)",
            "bot -> p",
        ] {
            let d = derive_identity(
                &ff(text),
                &g,
                &Multiset::singleton(ff("c1")),
                &Multiset::singleton(ff("c2")),
                &h,
            );
            check_derivation(&d, Mode::Official)
                .unwrap_or_else(|e| panic!("identity for {text}: {e}"));
            assert_eq!(d.conclusion.len(), 4);
        }
    }
}
