//! Executable admissibility and invertibility lemmas, and cut elimination.
//!
//! Every operation consumes a checker-valid derivation (official mode, except
//! that `eliminate_cut` also accepts embedded cut nodes) and produces a
//! checker-valid derivation. Each output node is built through the checked
//! constructors in [`crate::builders`], so with debug assertions on, every
//! intermediate rewrite is re-verified against the rule schemas.

mod contract;
mod cut;
mod identity;
mod invert;
mod structural;

pub use contract::{admit_contraction_left, admit_contraction_right, admit_merge, contract_to};
pub use cut::{eliminate_cut, simulate_gen, simulate_mp};
pub use identity::derive_identity;
pub use invert::{invert_left, invert_right, InvertLeft, InvertLeftResult};
pub use structural::{admit_bot_r, admit_ew, admit_iw, admit_lwr, rename_param};

use thiserror::Error;

use crate::calculus::{CheckError, Derivation, RuleInstance, RuleTag, Side};
use crate::syntax::Name;

#[derive(Error, Debug)]
pub enum TransformError {
    #[error("bad position {0}")]
    Position(usize),
    #[error("expected shape not found: {0}")]
    Shape(String),
    #[error("rule {0} is not supported by this transformation (official derivations only)")]
    UnsupportedRule(&'static str),
    #[error("the existential witnesses {0:?} cannot be reconciled into one premise")]
    MultiWitness(Vec<Name>),
    #[error("right contraction of an existential met irreconcilable witnesses {0:?}")]
    ContractionObstruction(Vec<Name>),
    #[error("input derivation is not checker-valid: {0}")]
    InvalidInput(#[from] CheckError),
}

pub(crate) type TResult<T> = Result<T, TransformError>;

/// Shift every component index mentioned by a rule instance.
pub(crate) fn shift_rule(rule: &RuleInstance, map: impl Fn(usize) -> usize) -> RuleInstance {
    let mut out = rule.clone();
    out.principal = rule.principal.iter().map(|(c, s, f)| (map(*c), *s, f.clone())).collect();
    out.pos = rule.pos.map(&map);
    out
}

/// The first principal occurrence of a logical rule.
pub(crate) fn principal_of(rule: &RuleInstance) -> (usize, Side, &crate::syntax::Formula) {
    let (c, s, f) = rule.principal.first().expect("rule has a principal occurrence");
    (*c, *s, f)
}

/// Re-apply the logical rule of `rule` below the given transformed premises,
/// with component indices remapped by `cmap`. The rule data (principal
/// formula, witness, eigen) is reused as stored.
pub(crate) fn reapply(
    rule: &RuleInstance,
    cmap: impl Fn(usize) -> usize,
    mut prems: Vec<Derivation>,
) -> Derivation {
    use crate::builders as b;
    use crate::syntax::Formula;
    let (c, _, f) = principal_of(rule);
    let c = cmap(c);
    match rule.tag() {
        RuleTag::AndL => {
            let Formula::And(x, y) = f else { unreachable!() };
            b::and_l(prems.remove(0), c, x, y)
        }
        RuleTag::OrR => {
            let Formula::Or(x, y) = f else { unreachable!() };
            b::or_r(prems.remove(0), c, x, y)
        }
        RuleTag::AndR => {
            let Formula::And(x, y) = f else { unreachable!() };
            let left = prems.remove(0);
            b::and_r(left, prems.remove(0), c, x, y)
        }
        RuleTag::OrL => {
            let Formula::Or(x, y) = f else { unreachable!() };
            let left = prems.remove(0);
            b::or_l(left, prems.remove(0), c, x, y)
        }
        RuleTag::ImpL => {
            let Formula::Implies(x, y) = f else { unreachable!() };
            let left = prems.remove(0);
            b::imp_l(left, prems.remove(0), c, x, y)
        }
        RuleTag::ImpR1 => {
            let Formula::Implies(x, y) = f else { unreachable!() };
            b::imp_r1(prems.remove(0), x, y)
        }
        RuleTag::ImpR2 => {
            let Formula::Implies(x, y) = f else { unreachable!() };
            let left = prems.remove(0);
            b::imp_r2(left, prems.remove(0), c, x, y)
        }
        RuleTag::Lift => b::lift(prems.remove(0), c, f),
        RuleTag::ForallL => {
            let Formula::Forall(x, body) = f else { unreachable!() };
            b::forall_l(prems.remove(0), c, x, body, rule.witness.as_ref().unwrap())
        }
        RuleTag::ForallR1 => {
            let Formula::Forall(x, body) = f else { unreachable!() };
            b::forall_r1(prems.remove(0), x, body, rule.eigen.as_ref().unwrap())
        }
        RuleTag::ForallR2 => {
            let Formula::Forall(x, body) = f else { unreachable!() };
            let left = prems.remove(0);
            b::forall_r2(left, prems.remove(0), c, x, body, rule.eigen.as_ref().unwrap())
        }
        RuleTag::ExistsL => {
            let Formula::Exists(x, body) = f else { unreachable!() };
            b::exists_l(prems.remove(0), c, x, body, rule.eigen.as_ref().unwrap())
        }
        RuleTag::ExistsR => {
            let Formula::Exists(x, body) = f else { unreachable!() };
            b::exists_r(prems.remove(0), c, x, body, rule.witness.as_ref().unwrap())
        }
        other => unreachable!("reapply on {}", other.name()),
    }
}

/// Fresh parameter avoiding everything in the given derivations plus extras.
pub(crate) fn fresh_for(ds: &[&Derivation], extra: &[&Name]) -> Name {
    let mut avoid = std::collections::BTreeSet::new();
    for d in ds {
        avoid.extend(d.all_params());
    }
    for n in extra {
        avoid.insert((*n).clone());
    }
    crate::syntax::fresh_param(&avoid)
}

/// Replace the eigenvariable of the root rule of `d` by one fresh for `d`
/// and `avoid`. The conclusion is unchanged (the old eigenvariable cannot
/// occur in it), so this is safe before any commutation step.
pub(crate) fn refresh_eigen(d: &Derivation, avoid: &[&Name]) -> TResult<Derivation> {
    let e = d.rule.eigen.clone().expect("rule carries an eigenvariable");
    let fresh = fresh_for(&[d], avoid);
    let mut out = d.clone();
    out.premises = d
        .premises
        .iter()
        .map(|p| structural::rename_param(p, &e, &fresh))
        .collect::<TResult<Vec<_>>>()?;
    out.rule.eigen = Some(fresh);
    Ok(out)
}
