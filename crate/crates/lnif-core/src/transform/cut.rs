//! Syntactic cut elimination.
//!
//! `reduce` rewrites one cut — a cut-free left premise `L` with the cut
//! formula in `cons(L[pivot])`, and a cut-free right premise `R` whose
//! components map into `L`'s index space through the strictly increasing
//! `rmap`, carrying `k[j]` tracked antecedent copies each — into a cut-free
//! derivation of the spliced conclusion. The official cut rule is the dense
//! special case (`rmap` an identity prefix plus the zone). The measure
//! `(|A|, height(R), height(L))` decreases lexicographically at every
//! recursive reduction, which is asserted.

use crate::builders as b;
use crate::calculus::{check_derivation, CutInstance, Derivation, Mode, RuleTag, Side};
use crate::sequent::{Component, Sequent};
use crate::syntax::Formula;

use super::contract::{admit_merge, contract_to};
use super::invert::invert_right;
use super::structural::{admit_bot_r, admit_ew, admit_iw, admit_lwr, instantiate, rename_param};
use super::{fresh_for, principal_of, reapply, refresh_eigen, TResult, TransformError};

/// One cut to reduce: all invariants checked by `validate`.
struct CutProblem<'a> {
    left: &'a Derivation,
    right: &'a Derivation,
    a: Formula,
    /// tracked antecedent copies per right component
    k: Vec<usize>,
    /// position of the cut occurrence in the left premise
    pivot: usize,
    /// strictly increasing map from right components into left positions
    rmap: Vec<usize>,
}

type Measure = (usize, usize, usize);

impl<'a> CutProblem<'a> {
    fn measure(&self) -> Measure {
        (self.a.complexity(), self.right.height(), self.left.height())
    }

    fn validate(&self) {
        let n_left = self.left.conclusion.len();
        assert_eq!(self.k.len(), self.right.conclusion.len(), "k covers every right component");
        assert_eq!(self.rmap.len(), self.right.conclusion.len());
        assert!(self.rmap.windows(2).all(|w| w[0] < w[1]), "rmap strictly increasing");
        assert!(self.rmap.iter().all(|&t| t < n_left), "rmap lands inside the left premise");
        assert!(self.pivot < n_left);
        assert!(
            self.left.conclusion.component(self.pivot).cons.contains(&self.a),
            "cut formula present in the left premise"
        );
        for (j, &kj) in self.k.iter().enumerate() {
            assert!(
                self.right.conclusion.component(j).ant.count(&self.a) >= kj,
                "right premise carries the tracked copies"
            );
            assert!(kj == 0 || self.rmap[j] >= self.pivot, "copies live at or after the pivot");
        }
    }

    /// The spliced conclusion.
    fn target(&self) -> Sequent {
        target_of(
            &self.left.conclusion,
            &self.right.conclusion,
            &self.a,
            &self.k,
            self.pivot,
            &self.rmap,
        )
    }
}

fn target_of(
    left: &Sequent,
    right: &Sequent,
    a: &Formula,
    k: &[usize],
    pivot: usize,
    rmap: &[usize],
) -> Sequent {
    let mut comps: Vec<Component> = left.components().to_vec();
    let piv = &comps[pivot];
    comps[pivot] = Component::new(piv.ant.clone(), piv.cons.remove_one(a).expect("cut occurrence"));
    for (j, &to) in rmap.iter().enumerate() {
        let rc = right.component(j);
        let ant = rc.ant.remove_n(a, k[j]).expect("tracked copies");
        comps[to] = comps[to].union(&Component::new(ant, rc.cons.clone()));
    }
    Sequent::new(comps)
}

fn assert_decreases(m: Measure, parent: Option<Measure>) {
    if let Some(p) = parent {
        assert!(m < p, "cut measure must strictly decrease: {m:?} against {p:?}");
    }
}

/// Weaken componentwise up to `target` through the admissible `(iw)`,
/// keeping the derivation in official mode.
fn weaken_up(d: &Derivation, target: &Sequent) -> TResult<Derivation> {
    assert_eq!(d.conclusion.len(), target.len(), "weaken_up: length mismatch");
    let mut cur = d.clone();
    for i in 0..target.len() {
        let have = cur.conclusion.component(i).clone();
        let want = target.component(i);
        let mut add_ant = want.ant.to_vec();
        for f in have.ant.iter() {
            let idx = add_ant.iter().position(|g| g == f).expect("weaken_up: not a superset");
            add_ant.remove(idx);
        }
        let mut add_cons = want.cons.to_vec();
        for f in have.cons.iter() {
            let idx = add_cons.iter().position(|g| g == f).expect("weaken_up: not a superset");
            add_cons.remove(idx);
        }
        if !add_ant.is_empty() || !add_cons.is_empty() {
            cur = admit_iw(&cur, i, &add_ant, &add_cons)?;
        }
    }
    Ok(cur)
}

/// Eliminate every cut node; the result derives the identical end sequent in
/// official mode.
pub fn eliminate_cut(d: &Derivation) -> TResult<Derivation> {
    check_derivation(d, Mode::WithCut)?;
    let out = elim(d, None)?;
    debug_assert_eq!(out.conclusion, d.conclusion);
    debug_assert!(check_derivation(&out, Mode::Official).is_ok());
    Ok(out)
}

fn elim(d: &Derivation, parent: Option<Measure>) -> TResult<Derivation> {
    let premises = d
        .premises
        .iter()
        .map(|p| elim(p, parent))
        .collect::<TResult<Vec<_>>>()?;
    if d.rule.tag() != RuleTag::Cut {
        return Ok(Derivation { conclusion: d.conclusion.clone(), rule: d.rule.clone(), premises });
    }
    let inst = d.rule.cut.as_ref().expect("cut instance");
    let (g, _) = inst.alignment;
    let mut premises = premises;
    let right = premises.pop().unwrap();
    let left = premises.pop().unwrap();
    let mut k = vec![0usize; g];
    k.extend_from_slice(&inst.multiplicities);
    let rmap: Vec<usize> = (0..right.conclusion.len()).collect();
    let cut = CutProblem { left: &left, right: &right, a: inst.cut_formula.clone(), k, pivot: g, rmap };
    reduce(&cut, parent)
}

fn reduce(cut: &CutProblem, parent: Option<Measure>) -> TResult<Derivation> {
    cut.validate();
    assert_decreases(cut.measure(), parent);
    let m = Some(cut.measure());
    let target = cut.target();

    if cut.k.iter().sum::<usize>() == 0 {
        return degenerate(cut, &target);
    }

    use RuleTag::*;
    let rule = &cut.right.rule;
    let tag = rule.tag();
    match tag {
        Id1 | Id2 | BotL => reduce_axiom(cut, &target),
        Lift => reduce_lift(cut, &target, m),
        _ if principal_on_copy(cut) => {
            let (c, _, _) = principal_of(rule);
            match tag {
                AndL => reduce_and(cut, c, &target, m),
                OrL => reduce_or(cut, c, &target, m),
                ImpL => reduce_imp(cut, c, &target, m),
                ForallL => reduce_forall(cut, c, &target, m),
                ExistsL => hunt_exists(cut, c, &target, m),
                _ => unreachable!(),
            }
        }
        AndL | OrL | ImpL | ForallL | ExistsL | AndR | OrR | ExistsR => {
            commute_simple(cut, &target, m)
        }
        ImpR1 | ForallR1 => commute_r1(cut, &target, m),
        ImpR2 | ForallR2 => commute_r2(cut, &target, m),
        other => Err(TransformError::UnsupportedRule(other.name())),
    }
}

/// Is the right premise's last rule principal on one of the tracked copies?
fn principal_on_copy(cut: &CutProblem) -> bool {
    let rule = &cut.right.rule;
    match rule.principal.first() {
        Some((c, Side::Left, f)) => f == &cut.a && cut.k[*c] >= 1,
        _ => false,
    }
}

/// Σk = 0: everything flows from the right premise by weakening, after
/// materializing the left-only positions as empty components.
fn degenerate(cut: &CutProblem, target: &Sequent) -> TResult<Derivation> {
    let mut d = cut.right.clone();
    // insert empty components for left positions not covered by rmap,
    // left to right (indices refer to the growing sequent)
    let covered: Vec<usize> = cut.rmap.clone();
    let mut next_right = 0usize;
    for i in 0..cut.left.conclusion.len() {
        if next_right < covered.len() && covered[next_right] == i {
            next_right += 1;
        } else {
            d = admit_ew(&d, i)?;
        }
    }
    weaken_up(&d, target)
}

/// The right premise is an initial sequent.
fn reduce_axiom(cut: &CutProblem, target: &Sequent) -> TResult<Derivation> {
    let rule = &cut.right.rule;
    match rule.tag() {
        RuleTag::BotL => {
            let (c, _, _) = principal_of(rule);
            let spare = cut.right.conclusion.component(c).ant.count(&Formula::Bottom) > cut.k[c];
            if cut.a != Formula::Bottom || !principal_on_copy_relaxed(cut, c) || spare {
                // a context bottom survives into the target
                return Ok(b::try_axiom(target).expect("axiom survives the cut"));
            }
            // the bottom was a tracked copy: drop the cut occurrence from the
            // left premise instead
            let l = admit_bot_r(cut.left, cut.pivot)?;
            weaken_up(&l, target)
        }
        RuleTag::Id1 | RuleTag::Id2 => {
            let (c1, _, p) = rule.principal[0].clone();
            let (c2, _, _) = rule.principal[1];
            let spare = cut.right.conclusion.component(c1).ant.count(&p) > cut.k[c1];
            if p != cut.a || cut.k[c1] == 0 || spare {
                return Ok(b::try_axiom(target).expect("axiom survives the cut"));
            }
            // principal antecedent occurrence is a tracked atomic copy: walk
            // the left cut occurrence down to the consequent occurrence
            let mut l = cut.left.clone();
            let mut at = cut.pivot;
            while at < cut.rmap[c2] {
                l = admit_lwr(&l, at, &cut.a)?;
                at += 1;
            }
            weaken_up(&l, target)
        }
        _ => unreachable!(),
    }
}

fn principal_on_copy_relaxed(cut: &CutProblem, c: usize) -> bool {
    cut.k[c] >= 1
}

/// `(lift)` in the right premise.
fn reduce_lift(cut: &CutProblem, target: &Sequent, m: Option<Measure>) -> TResult<Derivation> {
    let rule = &cut.right.rule;
    let (c, _, phi) = principal_of(rule);
    let phi = phi.clone();
    let prem = &cut.right.premises[0];
    if phi == cut.a {
        // track the copied occurrence too; the target is unchanged
        let mut k = cut.k.clone();
        k[c + 1] += 1;
        let inner = CutProblem {
            left: cut.left,
            right: prem,
            a: cut.a.clone(),
            k,
            pivot: cut.pivot,
            rmap: cut.rmap.clone(),
        };
        let out = reduce(&inner, m)?;
        debug_assert_eq!(&out.conclusion, target);
        Ok(out)
    } else {
        let inner = CutProblem {
            left: cut.left,
            right: prem,
            a: cut.a.clone(),
            k: cut.k.clone(),
            pivot: cut.pivot,
            rmap: cut.rmap.clone(),
        };
        let q = reduce(&inner, m)?;
        Ok(absorb_lifted(q, cut.rmap[c], cut.rmap[c + 1], &phi)?)
    }
}

/// Remove a copy of `phi` from `ant(to)` given `phi ∈ ant(from)`, `from < to`,
/// by weakening it through the gap and lifting it away step by step.
fn absorb_lifted(d: Derivation, from: usize, to: usize, phi: &Formula) -> TResult<Derivation> {
    let mut cur = d;
    for i in from + 1..to {
        cur = admit_iw(&cur, i, std::slice::from_ref(phi), &[])?;
    }
    for i in (from..to).rev() {
        cur = b::lift(cur, i, phi);
    }
    Ok(cur)
}

/// Right commutation for the length-preserving rules.
fn commute_simple(cut: &CutProblem, target: &Sequent, m: Option<Measure>) -> TResult<Derivation> {
    let right = ensure_fresh_eigen(cut.right, cut.left)?;
    let prems = right
        .premises
        .iter()
        .map(|p| {
            let inner = CutProblem {
                left: cut.left,
                right: p,
                a: cut.a.clone(),
                k: cut.k.clone(),
                pivot: cut.pivot,
                rmap: cut.rmap.clone(),
            };
            reduce(&inner, m)
        })
        .collect::<TResult<Vec<_>>>()?;
    let rmap = cut.rmap.clone();
    let out = reapply(&right.rule, move |i| rmap[i], prems);
    debug_assert_eq!(&out.conclusion, target, "commutation misses the target");
    Ok(out)
}

/// When the right rule binds an eigenvariable, make it fresh for the left
/// premise before commuting.
fn ensure_fresh_eigen(right: &Derivation, left: &Derivation) -> TResult<Derivation> {
    match &right.rule.eigen {
        Some(e) if left.all_params().contains(e) => {
            let avoid = left.all_params();
            let names: Vec<&crate::syntax::Name> = avoid.iter().collect();
            refresh_eigen(right, &names)
        }
        _ => Ok(right.clone()),
    }
}

/// `(⊃r1)/(∀r1)` in the right premise: the appended component maps to a new
/// conclusion position; when trailing left-only positions intervene, the
/// re-application walks the principal back up through `(⊃r2)/(∀r2)` steps.
fn commute_r1(cut: &CutProblem, target: &Sequent, m: Option<Measure>) -> TResult<Derivation> {
    let right = ensure_fresh_eigen(cut.right, cut.left)?;
    let rule = right.rule.clone();
    let (c, _, f) = principal_of(&rule);
    let f = f.clone();
    let prem = right.premises[0].clone();
    let n_left = cut.left.conclusion.len();
    let dest = cut.rmap[c];
    // bottom of the walk: fold at the very end via the one-premise rule
    let p_end = {
        let l_ext = admit_ew(cut.left, n_left)?;
        let mut k = cut.k.clone();
        k.push(0);
        let mut rmap = cut.rmap.clone();
        rmap.push(n_left);
        let pivot = cut.pivot;
        let inner = CutProblem { left: &l_ext, right: &prem, a: cut.a.clone(), k, pivot, rmap };
        reduce(&inner, m)?
    };
    let mut cur = reapply(&rule, |_| usize::MAX, vec![p_end]);
    // pull the principal from the last position back to `dest`
    for s in (dest..n_left - 1).rev() {
        let p1 = walk_premise(cut, &prem, s + 1, m)?;
        cur = two_premise(&rule, &f, p1, cur, s)?;
    }
    debug_assert_eq!(&cur.conclusion, target);
    Ok(cur)
}

/// `(⊃r2)/(∀r2)` in the right premise at component `c`: commute, walking the
/// moved-formula premise across any left-only gap.
fn commute_r2(cut: &CutProblem, target: &Sequent, m: Option<Measure>) -> TResult<Derivation> {
    let right = ensure_fresh_eigen(cut.right, cut.left)?;
    let rule = right.rule.clone();
    let (c, _, f) = principal_of(&rule);
    let f = f.clone();
    let p1 = right.premises[0].clone();
    let p2 = right.premises[1].clone();
    let dest = cut.rmap[c];
    let dest_succ = cut.rmap[c + 1];
    // q2: the moved-formula premise, same geometry
    let mut cur = {
        let inner = CutProblem {
            left: cut.left,
            right: &p2,
            a: cut.a.clone(),
            k: cut.k.clone(),
            pivot: cut.pivot,
            rmap: cut.rmap.clone(),
        };
        reduce(&inner, m)?
    };
    // walk the principal from `dest_succ` back up to `dest`
    for s in (dest..dest_succ).rev() {
        let q1 = walk_premise_r2(cut, &p1, c, s + 1, m)?;
        cur = two_premise(&rule, &f, q1, cur, s)?;
    }
    debug_assert_eq!(&cur.conclusion, target);
    Ok(cur)
}

/// Premise 1 of a walk step at insertion slot `slot` for the `(⊃r1)/(∀r1)`
/// commutation: the appended right component maps to the inserted position.
fn walk_premise(cut: &CutProblem, prem: &Derivation, slot: usize, m: Option<Measure>) -> TResult<Derivation> {
    let l_ext = admit_ew(cut.left, slot)?;
    let shift = |i: usize| if i >= slot { i + 1 } else { i };
    let mut rmap: Vec<usize> = cut.rmap.iter().map(|&i| shift(i)).collect();
    rmap.push(slot);
    let mut k = cut.k.clone();
    k.push(0);
    let pivot = shift(cut.pivot);
    let inner = CutProblem { left: &l_ext, right: prem, a: cut.a.clone(), k, pivot, rmap };
    reduce(&inner, m)
}

/// Premise 1 of a walk step for the `(⊃r2)/(∀r2)` commutation: the inserted
/// right component (at `c+1`) maps to the inserted left position `slot`.
fn walk_premise_r2(
    cut: &CutProblem,
    p1: &Derivation,
    c: usize,
    slot: usize,
    m: Option<Measure>,
) -> TResult<Derivation> {
    let l_ext = admit_ew(cut.left, slot)?;
    let shift = |i: usize| if i >= slot { i + 1 } else { i };
    let mut rmap: Vec<usize> = cut.rmap.iter().map(|&i| shift(i)).collect();
    rmap.insert(c + 1, slot);
    let mut k = cut.k.clone();
    k.insert(c + 1, 0);
    let pivot = shift(cut.pivot);
    let inner = CutProblem { left: &l_ext, right: p1, a: cut.a.clone(), k, pivot, rmap };
    reduce(&inner, m)
}

/// Apply the two-premise right rule for `f` at `at`.
fn two_premise(
    rule: &crate::calculus::RuleInstance,
    f: &Formula,
    left: Derivation,
    right: Derivation,
    at: usize,
) -> TResult<Derivation> {
    match f {
        Formula::Implies(x, y) => Ok(b::imp_r2(left, right, at, x, y)),
        Formula::Forall(x, body) => {
            let e = rule.eigen.as_ref().expect("eigenvariable");
            Ok(b::forall_r2(left, right, at, x, body, e))
        }
        _ => unreachable!(),
    }
}

/// Move the cut occurrence of the left premise down to position `rho` and
/// return the lowered derivation.
fn lower_left(left: &Derivation, pivot: usize, rho: usize, f: &Formula) -> TResult<Derivation> {
    let mut cur = left.clone();
    for at in pivot..rho {
        cur = admit_lwr(&cur, at, f)?;
    }
    Ok(cur)
}

/// Invert the cut formula on the left premise at `pivot` into the component
/// inserted at `pivot + 1` (choosing the `r1` or `r2` variant by position).
fn invert_left_premise(left: &Derivation, pivot: usize, f: &Formula, fresh: Option<&str>) -> TResult<Derivation> {
    let tag = match f {
        Formula::Implies(..) if pivot == left.conclusion.len() - 1 => RuleTag::ImpR1,
        Formula::Implies(..) => RuleTag::ImpR2,
        Formula::Forall(..) if pivot == left.conclusion.len() - 1 => RuleTag::ForallR1,
        Formula::Forall(..) => RuleTag::ForallR2,
        _ => unreachable!(),
    };
    Ok(invert_right(left, tag, pivot, f, fresh)?.remove(0))
}

/// Principal `(∧l)` on a tracked copy `X ∧ Y`.
fn reduce_and(cut: &CutProblem, c: usize, target: &Sequent, m: Option<Measure>) -> TResult<Derivation> {
    let Formula::And(x, y) = &cut.a else { unreachable!() };
    let rho = cut.rmap[c];
    let mut k = cut.k.clone();
    k[c] -= 1;
    let d0 = {
        let inner = CutProblem {
            left: cut.left,
            right: &cut.right.premises[0],
            a: cut.a.clone(),
            k,
            pivot: cut.pivot,
            rmap: cut.rmap.clone(),
        };
        reduce(&inner, m)?
    };
    // cut away the strays with the inverted left premise, lowered into place
    let lx = invert_right(cut.left, RuleTag::AndR, cut.pivot, &cut.a, None)?.remove(0);
    let lx = lower_left(&lx, cut.pivot, rho, x)?;
    let e1 = cut_stray(&lx, d0, x, rho, m)?;
    let ly = invert_right(cut.left, RuleTag::AndR, cut.pivot, &cut.a, None)?.remove(1);
    let ly = lower_left(&ly, cut.pivot, rho, y)?;
    let e2 = cut_stray(&ly, e1, y, rho, m)?;
    contract_to(&e2, target)
}

/// Principal `(∨l)` on a tracked copy `X ∨ Y`.
fn reduce_or(cut: &CutProblem, c: usize, target: &Sequent, m: Option<Measure>) -> TResult<Derivation> {
    let Formula::Or(x, y) = &cut.a else { unreachable!() };
    let rho = cut.rmap[c];
    let mut k = cut.k.clone();
    k[c] -= 1;
    let dx = {
        let inner = CutProblem {
            left: cut.left,
            right: &cut.right.premises[0],
            a: cut.a.clone(),
            k: k.clone(),
            pivot: cut.pivot,
            rmap: cut.rmap.clone(),
        };
        reduce(&inner, m)?
    };
    let dy = {
        let inner = CutProblem {
            left: cut.left,
            right: &cut.right.premises[1],
            a: cut.a.clone(),
            k,
            pivot: cut.pivot,
            rmap: cut.rmap.clone(),
        };
        reduce(&inner, m)?
    };
    let l = invert_right(cut.left, RuleTag::OrR, cut.pivot, &cut.a, None)?.remove(0);
    let lx = lower_left(&l, cut.pivot, rho, x)?;
    let e1 = cut_stray(&lx, dx, x, rho, m)?;
    // the other disjunct rides along at the pivot; lower it into place
    let e1y = lower_left(&e1, cut.pivot, rho, y)?;
    let e2 = cut_stray(&e1y, dy, y, rho, m)?;
    contract_to(&e2, target)
}

/// Principal `(∀l)` on a tracked copy `∀x X` with witness `w`.
fn reduce_forall(cut: &CutProblem, c: usize, target: &Sequent, m: Option<Measure>) -> TResult<Derivation> {
    let Formula::Forall(x, body) = &cut.a else { unreachable!() };
    let w = cut.right.rule.witness.clone().expect("witness");
    let inst = instantiate(x, body, &w);
    let rho = cut.rmap[c];
    // (∀l) retains: the premise still carries every tracked copy
    let d0 = {
        let inner = CutProblem {
            left: cut.left,
            right: &cut.right.premises[0],
            a: cut.a.clone(),
            k: cut.k.clone(),
            pivot: cut.pivot,
            rmap: cut.rmap.clone(),
        };
        reduce(&inner, m)?
    };
    let fresh = fresh_for(&[cut.left, cut.right], &[&w]);
    let l = invert_left_premise(cut.left, cut.pivot, &cut.a, Some(&fresh))?;
    let l = admit_merge(&l, cut.pivot)?;
    let l = rename_param(&l, &fresh, &w)?;
    let l = lower_left(&l, cut.pivot, rho, &inst)?;
    let e = cut_stray(&l, d0, &inst, rho, m)?;
    contract_to(&e, target)
}

/// Principal `(⊃l)` on a tracked copy `X ⊃ Y`.
fn reduce_imp(cut: &CutProblem, c: usize, target: &Sequent, m: Option<Measure>) -> TResult<Derivation> {
    let Formula::Implies(x, y) = &cut.a else { unreachable!() };
    let rho = cut.rmap[c];
    let mut k1 = cut.k.clone();
    k1[c] -= 1;
    let d1 = {
        let inner = CutProblem {
            left: cut.left,
            right: &cut.right.premises[0],
            a: cut.a.clone(),
            k: k1,
            pivot: cut.pivot,
            rmap: cut.rmap.clone(),
        };
        reduce(&inner, m)?
    };
    let d2 = {
        let inner = CutProblem {
            left: cut.left,
            right: &cut.right.premises[1],
            a: cut.a.clone(),
            k: cut.k.clone(),
            pivot: cut.pivot,
            rmap: cut.rmap.clone(),
        };
        reduce(&inner, m)?
    };
    // lower the implication, then open it just after `rho`
    let low = lower_left(cut.left, cut.pivot, rho, &cut.a)?;
    let l = invert_left_premise(&low, rho, &cut.a, None)?;
    // cut Y: left premise has Y at cons(rho+1); D1's stray Y sits at ant(rho)
    let d1e = admit_ew(&d1, rho)?;
    let e1 = cut_stray(&l, d1e, y, rho + 1, m)?;
    // cut X: D2's stray X at cons(rho) moves to rho+1 after the insertion
    let d2e = admit_ew(&d2, rho)?;
    let e2 = cut_stray(&d2e, e1, x, rho + 1, m)?;
    let fused = admit_merge(&e2, rho)?;
    contract_to(&fused, target)
}

/// Build and reduce the small cut that removes one stray copy of `f` at
/// `ant(at)` of `right`, using `left` whose cut occurrence of `f` sits at
/// `cons(at)`.
fn cut_stray(
    left: &Derivation,
    right: Derivation,
    f: &Formula,
    at: usize,
    m: Option<Measure>,
) -> TResult<Derivation> {
    let len = right.conclusion.len();
    debug_assert_eq!(left.conclusion.len(), len);
    let mut k = vec![0usize; len];
    k[at] = 1;
    let inner = CutProblem {
        left,
        right: &right,
        a: f.clone(),
        k,
        pivot: at,
        rmap: (0..len).collect(),
    };
    reduce(&inner, m)
}

/// Principal `(∃l)` on a tracked copy: recurse into the left premise until
/// the cut occurrence is introduced by `(∃r)`, then reduce at the matching
/// witness.
fn hunt_exists(cut: &CutProblem, c: usize, target: &Sequent, m: Option<Measure>) -> TResult<Derivation> {
    let Formula::Exists(..) = &cut.a else { unreachable!() };
    let eigen = cut.right.rule.eigen.clone().expect("eigenvariable");
    let fresh = fresh_for(&[cut.left, cut.right], &[]);
    let prem = rename_param(&cut.right.premises[0], &eigen, &fresh)?;
    let mut k = cut.k.clone();
    k[c] -= 1;
    hunt(cut.left, cut.pivot, &cut.rmap, cut, c, &prem, &fresh, &k, target, m)
}

#[allow(clippy::too_many_arguments)]
fn hunt(
    l: &Derivation,
    pivot: usize,
    rmap: &[usize],
    cut: &CutProblem,
    c: usize,
    prem: &Derivation,
    stray: &crate::syntax::Name,
    k_dec: &[usize],
    target: &Sequent,
    m: Option<Measure>,
) -> TResult<Derivation> {
    use RuleTag::*;
    let Formula::Exists(x, body) = &cut.a else { unreachable!() };
    let tag = l.rule.tag();
    match tag {
        Id1 | Id2 | BotL => Ok(b::try_axiom(target).expect("spectator cut formula in axiom")),
        ExistsR if super::structural::is_principal_here(&l.rule, pivot, Side::Right, &cut.a) => {
            let w = l.rule.witness.clone().expect("witness");
            let rho = rmap[c];
            // align the stray instance with this branch's witness
            let r_here = rename_param(prem, stray, &w)?;
            let inst = instantiate(x, body, &w);
            let d = {
                let inner = CutProblem {
                    left: l,
                    right: &r_here,
                    a: cut.a.clone(),
                    k: k_dec.to_vec(),
                    pivot,
                    rmap: rmap.to_vec(),
                };
                reduce(&inner, m)?
            };
            let l0 = lower_left(&l.premises[0], pivot, rho, &inst)?;
            let e = cut_stray(&l0, d, &inst, rho, m)?;
            contract_to(&e, target)
        }
        AndL | OrR | AndR | OrL | ImpL | ForallL | ExistsL | ExistsR | Lift => {
            let l = ensure_fresh_eigen(l, cut.right)?;
            let prems = l
                .premises
                .iter()
                .map(|p| {
                    let sub_target =
                        target_of(&p.conclusion, &cut.right.conclusion, &cut.a, &cut.k, pivot, rmap);
                    hunt(p, pivot, rmap, cut, c, prem, stray, k_dec, &sub_target, m)
                })
                .collect::<TResult<Vec<_>>>()?;
            Ok(reapply(&l.rule, |i| i, prems))
        }
        ImpR1 | ForallR1 => {
            let l = ensure_fresh_eigen(l, cut.right)?;
            let p = &l.premises[0];
            let sub_target =
                target_of(&p.conclusion, &cut.right.conclusion, &cut.a, &cut.k, pivot, rmap);
            let q = hunt(p, pivot, rmap, cut, c, prem, stray, k_dec, &sub_target, m)?;
            Ok(reapply(&l.rule, |i| i, vec![q]))
        }
        ImpR2 | ForallR2 => {
            let l = ensure_fresh_eigen(l, cut.right)?;
            let (cl, _, _) = principal_of(&l.rule);
            let shift = move |i: usize| if i > cl { i + 1 } else { i };
            let rmap1: Vec<usize> = rmap.iter().map(|&i| shift(i)).collect();
            let pivot1 = shift(pivot);
            let p1 = &l.premises[0];
            let p2 = &l.premises[1];
            let t1 = target_of(&p1.conclusion, &cut.right.conclusion, &cut.a, &cut.k, pivot1, &rmap1);
            let q1 = hunt(p1, pivot1, &rmap1, cut, c, prem, stray, k_dec, &t1, m)?;
            let t2 = target_of(&p2.conclusion, &cut.right.conclusion, &cut.a, &cut.k, pivot, rmap);
            let q2 = hunt(p2, pivot, rmap, cut, c, prem, stray, k_dec, &t2, m)?;
            Ok(reapply(&l.rule, |i| i, vec![q1, q2]))
        }
        other => Err(TransformError::UnsupportedRule(other.name())),
    }
}

/// Hilbert modus ponens through the calculus: from `⊢ A` and `⊢ A ⊃ B`,
/// produce a cut-free derivation of `⊢ B`.
pub fn simulate_mp(d_a: &Derivation, d_imp: &Derivation) -> TResult<Derivation> {
    let (a, bf) = match shape_of_goal(d_imp)? {
        Formula::Implies(a, bf) => ((*a).clone(), (*bf).clone()),
        other => {
            return Err(TransformError::Shape(format!(
                "second premise must conclude an implication, found `{other}`"
            )))
        }
    };
    match shape_of_goal(d_a)? {
        f if f == a => {}
        other => {
            return Err(TransformError::Shape(format!(
                "first premise concludes `{other}`, expected `{a}`"
            )))
        }
    }
    let left = admit_ew(d_a, 0)?;
    let right = invert_right(d_imp, RuleTag::ImpR1, 0, &crate::syntax::implies(a.clone(), bf.clone()), None)?
        .remove(0);
    let with_cut = b::cut(left, right, CutInstance::new(a, vec![1], 1));
    let cut_free = eliminate_cut(&with_cut)?;
    let out = admit_merge(&cut_free, 0)?;
    debug_assert_eq!(out.conclusion, Sequent::goal(bf));
    Ok(out)
}

/// Hilbert generalization: from `⊢ A[#a/x]` with `a` not occurring in
/// `∀x A`, produce `⊢ ∀x A`.
pub fn simulate_gen(d_a: &Derivation, a: &str, x: &str, body: &Formula) -> TResult<Derivation> {
    let expected = instantiate(x, body, a);
    match shape_of_goal(d_a)? {
        f if f == expected => {}
        other => {
            return Err(TransformError::Shape(format!(
                "premise concludes `{other}`, expected `{expected}`"
            )))
        }
    }
    let forall = Formula::Forall(x.to_string(), Box::new(body.clone()));
    if forall.params().contains(a) {
        return Err(TransformError::Shape(format!(
            "parameter #{a} occurs in `{forall}`"
        )))
    }
    let up = admit_ew(d_a, 0)?;
    Ok(b::forall_r1(up, x, body, a))
}

fn shape_of_goal(d: &Derivation) -> TResult<Formula> {
    let s = &d.conclusion;
    if s.len() != 1 || !s.component(0).ant.is_empty() || s.component(0).cons.len() != 1 {
        return Err(TransformError::Shape(format!("expected a goal sequent, found `{s}`")));
    }
    Ok(s.component(0).cons.iter().next().unwrap().clone())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sequent::{parse_sequent, Multiset};
    use crate::syntax::{atom, Signature};

    fn seq(text: &str) -> Sequent {
        let mut sig = Signature::new();
        parse_sequent(text, &mut sig).unwrap()
    }

    fn ff(text: &str) -> Formula {
        let mut sig = Signature::new();
        crate::syntax::parse_formula_inferring(text, &mut sig).unwrap()
    }

    fn ident(a: &str) -> Derivation {
        super::super::derive_identity(&ff(a), &[], &Multiset::new(), &Multiset::new(), &[])
    }

    fn official(d: &Derivation) {
        check_derivation(d, Mode::Official).unwrap();
    }

    /// ⊢ A ⊃ A for any formula text.
    fn theorem_self_imp(a: &str) -> Derivation {
        let inner = super::super::derive_identity(
            &ff(a),
            &[Component::empty()],
            &Multiset::new(),
            &Multiset::new(),
            &[],
        );
        b::imp_r1(inner, &ff(a), &ff(a))
    }

    #[test]
    fn cut_free_input_is_unchanged() {
        let d = theorem_self_imp("p");
        let out = eliminate_cut(&d).unwrap();
        assert_eq!(out, d);
    }

    #[test]
    fn atomic_cut_resolves() {
        let left = b::id1(seq("q |- q, p"), 0, atom("q"));
        let right = b::id1(seq("p |- p, r"), 0, atom("p"));
        let d = b::cut(left, right, CutInstance::new(atom("p"), vec![1], 0));
        assert_eq!(d.conclusion, seq("q |- q, p, r"));
        let out = eliminate_cut(&d).unwrap();
        assert_eq!(out.conclusion, d.conclusion);
        official(&out);
    }

    #[test]
    fn cut_on_implication_via_identity() {
        // left: ⊢ p ⊃ p; right: identity p⊃p ⊢ p⊃p weakened with context
        let left = theorem_self_imp("p");
        let right = super::super::derive_identity(
            &ff("p -> p"),
            &[],
            &Multiset::new(),
            &Multiset::singleton(ff("r")),
            &[],
        );
        assert_eq!(right.conclusion, seq("p -> p |- p -> p, r"));
        let d = b::cut(left, right, CutInstance::new(ff("p -> p"), vec![1], 0));
        assert_eq!(d.conclusion, seq("|- p -> p, r"));
        let out = eliminate_cut(&d).unwrap();
        assert_eq!(out.conclusion, d.conclusion);
        official(&out);
    }

    #[test]
    fn cut_on_conjunction() {
        let left = super::super::derive_identity(
            &ff("p & q"),
            &[],
            &Multiset::new(),
            &Multiset::new(),
            &[],
        );
        let right = super::super::derive_identity(
            &ff("p & q"),
            &[],
            &Multiset::new(),
            &Multiset::singleton(ff("s")),
            &[],
        );
        let d = b::cut(left, right, CutInstance::new(ff("p & q"), vec![1], 0));
        assert_eq!(d.conclusion, seq("p & q |- p & q, s"));
        let out = eliminate_cut(&d).unwrap();
        assert_eq!(out.conclusion, d.conclusion);
        official(&out);
    }

    #[test]
    fn cut_on_disjunction() {
        let left = ident("p | q");
        let right = super::super::derive_identity(
            &ff("p | q"),
            &[],
            &Multiset::singleton(ff("t")),
            &Multiset::new(),
            &[],
        );
        let d = b::cut(left, right, CutInstance::new(ff("p | q"), vec![1], 0));
        assert_eq!(d.conclusion, seq("p | q, t |- p | q"));
        let out = eliminate_cut(&d).unwrap();
        assert_eq!(out.conclusion, d.conclusion);
        official(&out);
    }

    #[test]
    fn cut_on_universal() {
        let left = b::id1(seq("q |- q, forall x. p(x)"), 0, atom("q"));
        let right = ident("forall x. p(x)");
        let d = b::cut(left, right, CutInstance::new(ff("forall x. p(x)"), vec![1], 0));
        assert_eq!(d.conclusion, seq("q |- q, forall x. p(x)"));
        let out = eliminate_cut(&d).unwrap();
        assert_eq!(out.conclusion, d.conclusion);
        official(&out);
    }

    #[test]
    fn cut_on_existential_hunts_the_witness() {
        let px = crate::syntax::atom1("p", crate::syntax::var("x"));
        let ax = b::id1(seq("p(#a) |- p(#a)"), 0, ff("p(#a)"));
        let left = b::exists_r(ax, 0, "x", &px, "a");
        assert_eq!(left.conclusion, seq("p(#a) |- exists x. p(x)"));
        let right = ident("exists x. p(x)");
        let d = b::cut(left, right, CutInstance::new(ff("exists x. p(x)"), vec![1], 0));
        assert_eq!(d.conclusion, seq("p(#a) |- exists x. p(x)"));
        let out = eliminate_cut(&d).unwrap();
        assert_eq!(out.conclusion, d.conclusion);
        official(&out);
    }

    #[test]
    fn cut_on_existential_under_disjunction() {
        // left branches use different witnesses; the hunt resolves each
        let px = crate::syntax::atom1("p", crate::syntax::var("x"));
        let la = b::exists_r(
            b::id1(seq("p(#a) |- p(#a)"), 0, ff("p(#a)")),
            0,
            "x",
            &px,
            "a",
        );
        let lb = b::exists_r(
            b::id1(seq("p(#b) |- p(#b)"), 0, ff("p(#b)")),
            0,
            "x",
            &px,
            "b",
        );
        let left = b::or_l(la, lb, 0, &ff("p(#a)"), &ff("p(#b)"));
        let right = super::super::derive_identity(
            &ff("exists x. p(x)"),
            &[],
            &Multiset::new(),
            &Multiset::singleton(ff("r")),
            &[],
        );
        let d = b::cut(left, right, CutInstance::new(ff("exists x. p(x)"), vec![1], 0));
        assert_eq!(d.conclusion, seq("p(#a) | p(#b) |- exists x. p(x), r"));
        let out = eliminate_cut(&d).unwrap();
        assert_eq!(out.conclusion, d.conclusion);
        official(&out);
    }

    #[test]
    fn cut_with_zone_multiplicities() {
        // right premise uses the cut formula in two components
        let left = b::id1(seq("q |- q, p // r |- s"), 0, atom("q"));
        let right = b::id2(seq("p |- // p, t |- p, s2"), 0, 1, atom("p"));
        let d = b::cut(left, right, CutInstance::new(atom("p"), vec![1, 1], 0));
        assert_eq!(d.conclusion, seq("q |- q // r, t |- s, s2, p"));
        let out = eliminate_cut(&d).unwrap();
        assert_eq!(out.conclusion, d.conclusion);
        official(&out);
    }

    #[test]
    fn simulate_mp_composes_theorems() {
        // A = p ⊃ p, B = (p⊃p) ∨ (q⊃q)
        let d_a = theorem_self_imp("p");
        let inner = super::super::derive_identity(
            &ff("p -> p"),
            &[Component::empty()],
            &Multiset::new(),
            &Multiset::singleton(ff("q -> q")),
            &[],
        );
        let inner = b::or_r(inner, 1, &ff("p -> p"), &ff("q -> q"));
        let d_imp = b::imp_r1(inner, &ff("p -> p"), &ff("(p -> p) | (q -> q)"));
        assert_eq!(d_imp.conclusion, seq("|- (p -> p) -> (p -> p) | (q -> q)"));
        official(&d_imp);
        let out = simulate_mp(&d_a, &d_imp).unwrap();
        assert_eq!(out.conclusion, seq("|- (p -> p) | (q -> q)"));
        assert!(!out.contains_cut());
        official(&out);
    }

    #[test]
    fn simulate_mp_with_identity_implication() {
        let d_a = theorem_self_imp("q");
        let inner = super::super::derive_identity(
            &ff("q -> q"),
            &[Component::empty()],
            &Multiset::new(),
            &Multiset::new(),
            &[],
        );
        let d_imp = b::imp_r1(inner, &ff("q -> q"), &ff("q -> q"));
        let out = simulate_mp(&d_a, &d_imp).unwrap();
        assert_eq!(out.conclusion, seq("|- q -> q"));
        official(&out);
    }

    #[test]
    fn simulate_mp_chains_three_steps() {
        // ⊢ p⊃p, then (p⊃p) ⊃ ((p⊃p) ∨ (q⊃q)), then ∨-expansion again
        let t1 = theorem_self_imp("p");
        let step = |a: &Formula, c: &Formula| {
            let inner = super::super::derive_identity(
                a,
                &[Component::empty()],
                &Multiset::new(),
                &Multiset::singleton(c.clone()),
                &[],
            );
            let inner = b::or_r(inner, 1, a, c);
            b::imp_r1(inner, a, &crate::syntax::or(a.clone(), c.clone()))
        };
        let a1 = ff("p -> p");
        let d2 = simulate_mp(&t1, &step(&a1, &ff("q -> q"))).unwrap();
        let a2 = ff("(p -> p) | (q -> q)");
        let d3 = simulate_mp(&d2, &step(&a2, &ff("r"))).unwrap();
        assert_eq!(d3.conclusion, seq("|- ((p -> p) | (q -> q)) | r"));
        assert!(!d3.contains_cut());
        official(&d3);
    }

    #[test]
    fn simulate_gen_nests() {
        let pxy = crate::syntax::Formula::Atom(
            "r0".into(),
            vec![crate::syntax::param("c"), crate::syntax::param("e")],
        );
        let inner = super::super::derive_identity(
            &pxy,
            &[Component::empty()],
            &Multiset::new(),
            &Multiset::new(),
            &[],
        );
        let d = b::imp_r1(inner, &pxy, &pxy);
        // generalize #e to x, then #c to y
        let body_x = crate::syntax::implies(
            crate::syntax::Formula::Atom("r0".into(), vec![crate::syntax::param("c"), crate::syntax::var("x")]),
            crate::syntax::Formula::Atom("r0".into(), vec![crate::syntax::param("c"), crate::syntax::var("x")]),
        );
        let g1 = simulate_gen(&d, "e", "x", &body_x).unwrap();
        let body_y = crate::syntax::Formula::Forall(
            "x".into(),
            Box::new(crate::syntax::implies(
                crate::syntax::Formula::Atom("r0".into(), vec![crate::syntax::var("y"), crate::syntax::var("x")]),
                crate::syntax::Formula::Atom("r0".into(), vec![crate::syntax::var("y"), crate::syntax::var("x")]),
            )),
        );
        let g2 = simulate_gen(&g1, "c", "y", &body_y).unwrap();
        assert_eq!(
            g2.conclusion,
            seq("|- forall y. forall x. (r0(y, x) -> r0(y, x))")
        );
        official(&g2);
    }

    #[test]
    fn simulate_gen_rejects_occurring_parameter() {
        let pc = crate::syntax::atom1("p", crate::syntax::param("c"));
        let inner = super::super::derive_identity(
            &pc,
            &[Component::empty()],
            &Multiset::new(),
            &Multiset::new(),
            &[],
        );
        let d = b::imp_r1(inner, &pc, &pc);
        // body still mentions #c: the side condition must fire
        let bad_body = crate::syntax::implies(
            crate::syntax::atom1("p", crate::syntax::param("c")),
            crate::syntax::atom1("p", crate::syntax::var("x")),
        );
        assert!(simulate_gen(&d, "c", "x", &bad_body).is_err());
    }

    #[test]
    fn simulate_gen_generalizes() {
        let px = crate::syntax::atom1("p", crate::syntax::var("x"));
        let pc = crate::syntax::atom1("p", crate::syntax::param("c"));
        // ⊢ p(#c) ⊃ p(#c), generalized over a fresh x
        let inner = super::super::derive_identity(
            &pc,
            &[Component::empty()],
            &Multiset::new(),
            &Multiset::new(),
            &[],
        );
        let d_a = b::imp_r1(inner, &pc, &pc);
        let gen_body = crate::syntax::implies(px.clone(), px.clone());
        let out = simulate_gen(&d_a, "c", "x", &gen_body).unwrap();
        assert_eq!(out.conclusion, seq("|- forall x. (p(x) -> p(x))"));
        official(&out);
    }
}
