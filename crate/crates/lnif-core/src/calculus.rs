//! The LNIF rule schemas, structural rules, the cut rule, a derivation
//! checker, and backward rule application.
//!
//! The checker re-derives each premise from the rule schema instantiated at
//! the stated principal positions and compares, rather than pattern-matching
//! whatever premises are attached. `Sub`, `Mrg`, and `Cut` are the exceptions
//! where the premise is not a function of the conclusion; those are verified
//! against the attached premise conclusions directly.

use std::collections::BTreeSet;
use std::fmt;

use thiserror::Error;

use crate::sequent::{Component, Multiset, Sequent};
use crate::syntax::{fresh_param, Formula, Name, Term};

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub enum Side {
    Left,
    Right,
}

impl fmt::Display for Side {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Side::Left => "L",
            Side::Right => "R",
        })
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub enum RuleTag {
    Id1,
    Id2,
    BotL,
    AndL,
    AndR,
    OrL,
    OrR,
    ImpL,
    ImpR1,
    ImpR2,
    Lift,
    ForallL,
    ForallR1,
    ForallR2,
    ExistsL,
    ExistsR,
    // admissible structural rules, accepted in extended mode only
    Iw,
    IcL,
    IcR,
    Ew,
    Sub,
    Lwr,
    BotR,
    Mrg,
    // accepted in with-cut mode only
    Cut,
}

impl RuleTag {
    pub fn is_official(self) -> bool {
        use RuleTag::*;
        matches!(
            self,
            Id1 | Id2 | BotL | AndL | AndR | OrL | OrR | ImpL | ImpR1 | ImpR2 | Lift | ForallL
                | ForallR1 | ForallR2 | ExistsL | ExistsR
        )
    }

    pub fn is_structural(self) -> bool {
        use RuleTag::*;
        matches!(self, Iw | IcL | IcR | Ew | Sub | Lwr | BotR | Mrg)
    }

    pub fn name(self) -> &'static str {
        use RuleTag::*;
        match self {
            Id1 => "Id1",
            Id2 => "Id2",
            BotL => "BotL",
            AndL => "AndL",
            AndR => "AndR",
            OrL => "OrL",
            OrR => "OrR",
            ImpL => "ImpL",
            ImpR1 => "ImpR1",
            ImpR2 => "ImpR2",
            Lift => "Lift",
            ForallL => "ForallL",
            ForallR1 => "ForallR1",
            ForallR2 => "ForallR2",
            ExistsL => "ExistsL",
            ExistsR => "ExistsR",
            Iw => "Iw",
            IcL => "IcL",
            IcR => "IcR",
            Ew => "Ew",
            Sub => "Sub",
            Lwr => "Lwr",
            BotR => "BotR",
            Mrg => "Mrg",
            Cut => "Cut",
        }
    }

    pub fn from_name(s: &str) -> Option<RuleTag> {
        use RuleTag::*;
        Some(match s {
            "Id1" => Id1,
            "Id2" => Id2,
            "BotL" => BotL,
            "AndL" => AndL,
            "AndR" => AndR,
            "OrL" => OrL,
            "OrR" => OrR,
            "ImpL" => ImpL,
            "ImpR1" => ImpR1,
            "ImpR2" => ImpR2,
            "Lift" => Lift,
            "ForallL" => ForallL,
            "ForallR1" => ForallR1,
            "ForallR2" => ForallR2,
            "ExistsL" => ExistsL,
            "ExistsR" => ExistsR,
            "Iw" => Iw,
            "IcL" => IcL,
            "IcR" => IcR,
            "Ew" => Ew,
            "Sub" => Sub,
            "Lwr" => Lwr,
            "BotR" => BotR,
            "Mrg" => Mrg,
            "Cut" => Cut,
            _ => return None,
        })
    }
}

/// Cut metadata: the cut formula, per-component antecedent multiplicities,
/// and the split realizing ‖G‖ = ‖F‖ and ‖H‖ = n−1.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct CutInstance {
    pub cut_formula: Formula,
    /// k₁ … kₙ — copies of the cut formula in the right premise's components
    /// `g`, `g+1`, …, `g+n−1` (0-based).
    pub multiplicities: Vec<usize>,
    /// (‖G‖, ‖H‖) of the left premise `G // Γ ⊢ Δ, A // H`.
    pub alignment: (usize, usize),
}

impl CutInstance {
    pub fn new(cut_formula: Formula, multiplicities: Vec<usize>, g: usize) -> Self {
        let h = multiplicities.len() - 1;
        CutInstance { cut_formula, multiplicities, alignment: (g, h) }
    }
}

#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct RuleInstance {
    pub tag: Option<RuleTag>,
    pub principal: Vec<(usize, Side, Formula)>,
    pub eigen: Option<Name>,
    pub witness: Option<Name>,
    pub sub_map: Option<(Name, Name)>,
    /// Ew: index of the inserted empty component. Mrg: index of the fused one.
    pub pos: Option<usize>,
    pub cut: Option<CutInstance>,
}

impl RuleInstance {
    pub fn tagged(tag: RuleTag) -> Self {
        RuleInstance { tag: Some(tag), ..Default::default() }
    }

    pub fn tag(&self) -> RuleTag {
        self.tag.expect("rule instance missing tag")
    }

    pub fn with_principal(mut self, c: usize, side: Side, f: Formula) -> Self {
        self.principal.push((c, side, f));
        self
    }

    pub fn with_eigen(mut self, e: &str) -> Self {
        self.eigen = Some(e.to_string());
        self
    }

    pub fn with_witness(mut self, w: &str) -> Self {
        self.witness = Some(w.to_string());
        self
    }

    pub fn with_pos(mut self, pos: usize) -> Self {
        self.pos = Some(pos);
        self
    }
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Derivation {
    pub conclusion: Sequent,
    pub rule: RuleInstance,
    pub premises: Vec<Derivation>,
}

impl Derivation {
    pub fn leaf(conclusion: Sequent, rule: RuleInstance) -> Self {
        Derivation { conclusion, rule, premises: vec![] }
    }

    /// 1 for a leaf, 1 + max over premises otherwise.
    pub fn height(&self) -> usize {
        1 + self.premises.iter().map(|p| p.height()).max().unwrap_or(0)
    }

    pub fn size(&self) -> usize {
        1 + self.premises.iter().map(|p| p.size()).sum::<usize>()
    }

    pub fn contains_cut(&self) -> bool {
        self.rule.tag() == RuleTag::Cut || self.premises.iter().any(|p| p.contains_cut())
    }

    pub fn is_official(&self) -> bool {
        self.rule.tag().is_official() && self.premises.iter().all(|p| p.is_official())
    }

    /// Parameters occurring anywhere in the tree (conclusions cover witness
    /// and eigen parameters of all rules above the root).
    pub fn all_params(&self) -> BTreeSet<Name> {
        let mut out = self.conclusion.params();
        if let Some(e) = &self.rule.eigen {
            out.insert(e.clone());
        }
        if let Some(w) = &self.rule.witness {
            out.insert(w.clone());
        }
        for p in &self.premises {
            out.extend(p.all_params());
        }
        out
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Mode {
    /// The sixteen primitive rules only.
    Official,
    /// The primitive rules plus the admissible structural rules.
    Extended,
    /// Everything, including cut.
    WithCut,
}

#[derive(Error, Debug, Clone, PartialEq, Eq)]
pub enum CheckError {
    #[error("schema mismatch: {0}")]
    SchemaMismatch(String),
    #[error("eigenvariable #{0} occurs in the conclusion")]
    EigenvariableViolation(Name),
    #[error("bad component index {0}")]
    PositionError(usize),
    #[error("cut alignment: {0}")]
    CutAlignmentError(String),
    #[error("rule {0} not allowed in {1:?} mode")]
    ModeViolation(&'static str, Mode),
    #[error("at node path {path:?}: {source}")]
    AtPath {
        path: Vec<usize>,
        #[source]
        source: Box<CheckError>,
    },
}

type Check<T> = Result<T, CheckError>;

fn mismatch<T>(detail: impl Into<String>) -> Check<T> {
    Err(CheckError::SchemaMismatch(detail.into()))
}

fn the_principal(rule: &RuleInstance) -> Check<&(usize, Side, Formula)> {
    match rule.principal.as_slice() {
        [p] => Ok(p),
        _ => mismatch(format!("{} expects exactly one principal occurrence", rule.tag().name())),
    }
}

fn check_index(g: &Sequent, c: usize) -> Check<()> {
    if c < g.len() {
        Ok(())
    } else {
        Err(CheckError::PositionError(c))
    }
}

fn require_present(ms: &Multiset, f: &Formula, what: &str) -> Check<()> {
    if ms.contains(f) {
        Ok(())
    } else {
        mismatch(format!("{what}: `{f}` not present"))
    }
}

fn eigen_ok(g: &Sequent, e: &str) -> Check<()> {
    if g.params().contains(e) {
        Err(CheckError::EigenvariableViolation(e.to_string()))
    } else {
        Ok(())
    }
}

fn instantiate(x: &str, body: &Formula, p: &str) -> Formula {
    body.subst_var(x, &Term::Param(p.to_string()))
        .expect("parameter substitution cannot be captured")
}

fn split_quantifier(f: &Formula, forall: bool) -> Check<(&Name, &Formula)> {
    match (f, forall) {
        (Formula::Forall(x, a), true) => Ok((x, a)),
        (Formula::Exists(x, a), false) => Ok((x, a)),
        _ => mismatch(format!("`{f}` does not have the required quantifier shape")),
    }
}

/// Premises demanded by the schema for every rule whose premises are a
/// function of (conclusion, instance). `Sub`, `Mrg`, and `Cut` are not.
pub fn expected_premises(g: &Sequent, rule: &RuleInstance) -> Check<Vec<Sequent>> {
    use RuleTag::*;
    match rule.tag() {
        Id1 => {
            let (c, p) = match rule.principal.as_slice() {
                [(c1, Side::Left, f1), (c2, Side::Right, f2)] if c1 == c2 && f1 == f2 => (*c1, f1),
                _ => return mismatch("Id1 expects left and right occurrences in one component"),
            };
            check_index(g, c)?;
            if !matches!(p, Formula::Atom(..)) {
                return mismatch("Id1 principal must be atomic");
            }
            require_present(&g.component(c).ant, p, "Id1 antecedent")?;
            require_present(&g.component(c).cons, p, "Id1 consequent")?;
            Ok(vec![])
        }
        Id2 => {
            let (c1, c2, p) = match rule.principal.as_slice() {
                [(c1, Side::Left, f1), (c2, Side::Right, f2)] if f1 == f2 => (*c1, *c2, f1),
                _ => return mismatch("Id2 expects a left and a right occurrence"),
            };
            check_index(g, c2)?;
            if c1 >= c2 {
                return mismatch("Id2 consequent occurrence must be in a strictly later component");
            }
            if !matches!(p, Formula::Atom(..)) {
                return mismatch("Id2 principal must be atomic");
            }
            require_present(&g.component(c1).ant, p, "Id2 antecedent")?;
            require_present(&g.component(c2).cons, p, "Id2 consequent")?;
            Ok(vec![])
        }
        BotL => {
            let (c, side, f) = the_principal(rule)?;
            if *side != Side::Left || *f != Formula::Bottom {
                return mismatch("BotL principal must be a left bottom");
            }
            check_index(g, *c)?;
            require_present(&g.component(*c).ant, f, "BotL")?;
            Ok(vec![])
        }
        AndL => {
            let (c, side, f) = the_principal(rule)?;
            check_index(g, *c)?;
            let (a, b) = match (side, f) {
                (Side::Left, Formula::And(a, b)) => (a.as_ref(), b.as_ref()),
                _ => return mismatch("AndL principal must be a left conjunction"),
            };
            let comp = g.component(*c);
            let ant = comp.ant.remove_one(f).ok_or_else(absent(f))?;
            let ant = ant.insert(a.clone()).insert(b.clone());
            Ok(vec![g.with_component(*c, Component::new(ant, comp.cons.clone()))])
        }
        AndR => {
            let (c, side, f) = the_principal(rule)?;
            check_index(g, *c)?;
            let (a, b) = match (side, f) {
                (Side::Right, Formula::And(a, b)) => (a.as_ref(), b.as_ref()),
                _ => return mismatch("AndR principal must be a right conjunction"),
            };
            let comp = g.component(*c);
            let cons = comp.cons.remove_one(f).ok_or_else(absent(f))?;
            Ok(vec![
                g.with_component(*c, Component::new(comp.ant.clone(), cons.insert(a.clone()))),
                g.with_component(*c, Component::new(comp.ant.clone(), cons.insert(b.clone()))),
            ])
        }
        OrL => {
            let (c, side, f) = the_principal(rule)?;
            check_index(g, *c)?;
            let (a, b) = match (side, f) {
                (Side::Left, Formula::Or(a, b)) => (a.as_ref(), b.as_ref()),
                _ => return mismatch("OrL principal must be a left disjunction"),
            };
            let comp = g.component(*c);
            let ant = comp.ant.remove_one(f).ok_or_else(absent(f))?;
            Ok(vec![
                g.with_component(*c, Component::new(ant.insert(a.clone()), comp.cons.clone())),
                g.with_component(*c, Component::new(ant.insert(b.clone()), comp.cons.clone())),
            ])
        }
        OrR => {
            let (c, side, f) = the_principal(rule)?;
            check_index(g, *c)?;
            let (a, b) = match (side, f) {
                (Side::Right, Formula::Or(a, b)) => (a.as_ref(), b.as_ref()),
                _ => return mismatch("OrR principal must be a right disjunction"),
            };
            let comp = g.component(*c);
            let cons = comp.cons.remove_one(f).ok_or_else(absent(f))?;
            let cons = cons.insert(a.clone()).insert(b.clone());
            Ok(vec![g.with_component(*c, Component::new(comp.ant.clone(), cons))])
        }
        ImpL => {
            let (c, side, f) = the_principal(rule)?;
            check_index(g, *c)?;
            let (a, b) = match (side, f) {
                (Side::Left, Formula::Implies(a, b)) => (a.as_ref(), b.as_ref()),
                _ => return mismatch("ImpL principal must be a left implication"),
            };
            let comp = g.component(*c);
            require_present(&comp.ant, f, "ImpL")?;
            let p1 = g.with_component(
                *c,
                Component::new(
                    comp.ant.remove_one(f).unwrap().insert(b.clone()),
                    comp.cons.clone(),
                ),
            );
            let p2 = g.with_component(
                *c,
                Component::new(comp.ant.clone(), comp.cons.insert(a.clone())),
            );
            Ok(vec![p1, p2])
        }
        ImpR1 => {
            let (c, side, f) = the_principal(rule)?;
            let (a, b) = match (side, f) {
                (Side::Right, Formula::Implies(a, b)) => (a.as_ref(), b.as_ref()),
                _ => return mismatch("ImpR1 principal must be a right implication"),
            };
            if *c != g.len() - 1 {
                return Err(CheckError::PositionError(*c));
            }
            let comp = g.component(*c);
            let cons = comp.cons.remove_one(f).ok_or_else(absent(f))?;
            let trimmed = g.with_component(*c, Component::new(comp.ant.clone(), cons));
            Ok(vec![trimmed.push_component(Component::new(
                Multiset::singleton(a.clone()),
                Multiset::singleton(b.clone()),
            ))])
        }
        ImpR2 => {
            let (c, side, f) = the_principal(rule)?;
            let (a, b) = match (side, f) {
                (Side::Right, Formula::Implies(a, b)) => (a.as_ref(), b.as_ref()),
                _ => return mismatch("ImpR2 principal must be a right implication"),
            };
            if *c + 1 >= g.len() {
                return Err(CheckError::PositionError(*c));
            }
            let comp = g.component(*c);
            let cons = comp.cons.remove_one(f).ok_or_else(absent(f))?;
            let trimmed = g.with_component(*c, Component::new(comp.ant.clone(), cons));
            let p1 = trimmed.insert_component(
                *c + 1,
                Component::new(Multiset::singleton(a.clone()), Multiset::singleton(b.clone())),
            );
            let succ = trimmed.component(*c + 1);
            let p2 = trimmed.with_component(
                *c + 1,
                Component::new(succ.ant.clone(), succ.cons.insert(f.clone())),
            );
            Ok(vec![p1, p2])
        }
        Lift => {
            let (c, side, f) = the_principal(rule)?;
            if *side != Side::Left {
                return mismatch("Lift principal must be an antecedent occurrence");
            }
            if *c + 1 >= g.len() {
                return Err(CheckError::PositionError(*c));
            }
            require_present(&g.component(*c).ant, f, "Lift")?;
            let succ = g.component(*c + 1);
            Ok(vec![g.with_component(
                *c + 1,
                Component::new(succ.ant.insert(f.clone()), succ.cons.clone()),
            )])
        }
        ForallL => {
            let (c, side, f) = the_principal(rule)?;
            check_index(g, *c)?;
            if *side != Side::Left {
                return mismatch("ForallL principal must be on the left");
            }
            let (x, body) = split_quantifier(f, true)?;
            let w = rule.witness.as_deref().ok_or_else(|| {
                CheckError::SchemaMismatch("ForallL requires a witness".to_string())
            })?;
            let comp = g.component(*c);
            require_present(&comp.ant, f, "ForallL")?;
            let inst = instantiate(x, body, w);
            Ok(vec![g.with_component(
                *c,
                Component::new(comp.ant.insert(inst), comp.cons.clone()),
            )])
        }
        ForallR1 => {
            let (c, side, f) = the_principal(rule)?;
            if *side != Side::Right {
                return mismatch("ForallR1 principal must be on the right");
            }
            let (x, body) = split_quantifier(f, true)?;
            if *c != g.len() - 1 {
                return Err(CheckError::PositionError(*c));
            }
            let e = rule.eigen.as_deref().ok_or_else(|| {
                CheckError::SchemaMismatch("ForallR1 requires an eigenvariable".to_string())
            })?;
            eigen_ok(g, e)?;
            let comp = g.component(*c);
            let cons = comp.cons.remove_one(f).ok_or_else(absent(f))?;
            let trimmed = g.with_component(*c, Component::new(comp.ant.clone(), cons));
            Ok(vec![trimmed.push_component(Component::new(
                Multiset::new(),
                Multiset::singleton(instantiate(x, body, e)),
            ))])
        }
        ForallR2 => {
            let (c, side, f) = the_principal(rule)?;
            if *side != Side::Right {
                return mismatch("ForallR2 principal must be on the right");
            }
            let (x, body) = split_quantifier(f, true)?;
            if *c + 1 >= g.len() {
                return Err(CheckError::PositionError(*c));
            }
            let e = rule.eigen.as_deref().ok_or_else(|| {
                CheckError::SchemaMismatch("ForallR2 requires an eigenvariable".to_string())
            })?;
            eigen_ok(g, e)?;
            let comp = g.component(*c);
            let cons = comp.cons.remove_one(f).ok_or_else(absent(f))?;
            let trimmed = g.with_component(*c, Component::new(comp.ant.clone(), cons));
            let p1 = trimmed.insert_component(
                *c + 1,
                Component::new(Multiset::new(), Multiset::singleton(instantiate(x, body, e))),
            );
            let succ = trimmed.component(*c + 1);
            let p2 = trimmed.with_component(
                *c + 1,
                Component::new(succ.ant.clone(), succ.cons.insert(f.clone())),
            );
            Ok(vec![p1, p2])
        }
        ExistsL => {
            let (c, side, f) = the_principal(rule)?;
            check_index(g, *c)?;
            if *side != Side::Left {
                return mismatch("ExistsL principal must be on the left");
            }
            let (x, body) = split_quantifier(f, false)?;
            let e = rule.eigen.as_deref().ok_or_else(|| {
                CheckError::SchemaMismatch("ExistsL requires an eigenvariable".to_string())
            })?;
            eigen_ok(g, e)?;
            let comp = g.component(*c);
            let ant = comp.ant.remove_one(f).ok_or_else(absent(f))?;
            Ok(vec![g.with_component(
                *c,
                Component::new(ant.insert(instantiate(x, body, e)), comp.cons.clone()),
            )])
        }
        ExistsR => {
            let (c, side, f) = the_principal(rule)?;
            check_index(g, *c)?;
            if *side != Side::Right {
                return mismatch("ExistsR principal must be on the right");
            }
            let (x, body) = split_quantifier(f, false)?;
            let w = rule.witness.as_deref().ok_or_else(|| {
                CheckError::SchemaMismatch("ExistsR requires a witness".to_string())
            })?;
            let comp = g.component(*c);
            let cons = comp.cons.remove_one(f).ok_or_else(absent(f))?;
            Ok(vec![g.with_component(
                *c,
                Component::new(comp.ant.clone(), cons.insert(instantiate(x, body, w))),
            )])
        }
        Iw => {
            if rule.principal.is_empty() {
                return mismatch("Iw lists the weakened occurrences as principal");
            }
            let c = rule.principal[0].0;
            check_index(g, c)?;
            let mut comp = g.component(c).clone();
            for (ci, side, f) in &rule.principal {
                if *ci != c {
                    return mismatch("Iw weakens a single component");
                }
                match side {
                    Side::Left => {
                        comp.ant = comp.ant.remove_one(f).ok_or_else(absent(f))?;
                    }
                    Side::Right => {
                        comp.cons = comp.cons.remove_one(f).ok_or_else(absent(f))?;
                    }
                }
            }
            Ok(vec![g.with_component(c, comp)])
        }
        IcL => {
            let (c, side, f) = the_principal(rule)?;
            check_index(g, *c)?;
            if *side != Side::Left {
                return mismatch("IcL contracts on the left");
            }
            let comp = g.component(*c);
            require_present(&comp.ant, f, "IcL")?;
            Ok(vec![g.with_component(
                *c,
                Component::new(comp.ant.insert(f.clone()), comp.cons.clone()),
            )])
        }
        IcR => {
            let (c, side, f) = the_principal(rule)?;
            check_index(g, *c)?;
            if *side != Side::Right {
                return mismatch("IcR contracts on the right");
            }
            let comp = g.component(*c);
            require_present(&comp.cons, f, "IcR")?;
            Ok(vec![g.with_component(
                *c,
                Component::new(comp.ant.clone(), comp.cons.insert(f.clone())),
            )])
        }
        Ew => {
            let c = rule.pos.ok_or_else(|| {
                CheckError::SchemaMismatch("Ew requires the inserted position".to_string())
            })?;
            check_index(g, c)?;
            if g.len() < 2 {
                return Err(CheckError::PositionError(c));
            }
            if !g.component(c).is_empty() {
                return mismatch("Ew position must hold an empty component");
            }
            Ok(vec![g.remove_component(c)])
        }
        Lwr => {
            let (c, side, f) = the_principal(rule)?;
            check_index(g, *c)?;
            if *side != Side::Right || *c == 0 {
                return mismatch("Lwr principal is the moved-down right occurrence (component ≥ 1)");
            }
            let comp = g.component(*c);
            let cons = comp.cons.remove_one(f).ok_or_else(absent(f))?;
            let trimmed = g.with_component(*c, Component::new(comp.ant.clone(), cons));
            let prev = trimmed.component(*c - 1);
            Ok(vec![trimmed.with_component(
                *c - 1,
                Component::new(prev.ant.clone(), prev.cons.insert(f.clone())),
            )])
        }
        BotR => {
            let (c, side, f) = the_principal(rule)?;
            check_index(g, *c)?;
            if *side != Side::Right || *f != Formula::Bottom {
                return mismatch("BotR removes a right bottom");
            }
            let comp = g.component(*c);
            Ok(vec![g.with_component(
                *c,
                Component::new(comp.ant.clone(), comp.cons.insert(Formula::Bottom)),
            )])
        }
        Sub | Mrg | Cut => mismatch(format!(
            "premises of {} are not a function of the conclusion",
            rule.tag().name()
        )),
    }
}

fn absent(f: &Formula) -> impl FnOnce() -> CheckError + '_ {
    move || CheckError::SchemaMismatch(format!("principal `{f}` not present"))
}

fn mode_allows(tag: RuleTag, mode: Mode) -> bool {
    match mode {
        Mode::Official => tag.is_official(),
        Mode::Extended => tag.is_official() || tag.is_structural(),
        Mode::WithCut => true,
    }
}

/// Check a single inference against the schema.
pub fn check_node(
    conclusion: &Sequent,
    rule: &RuleInstance,
    premise_conclusions: &[&Sequent],
    mode: Mode,
) -> Check<()> {
    let tag = rule.tag();
    if !mode_allows(tag, mode) {
        return Err(CheckError::ModeViolation(tag.name(), mode));
    }
    match tag {
        RuleTag::Sub => {
            let (a, b) = rule.sub_map.as_ref().ok_or_else(|| {
                CheckError::SchemaMismatch("Sub requires a parameter pair".to_string())
            })?;
            let [p] = premise_conclusions else {
                return mismatch("Sub takes one premise");
            };
            if p.rename_param(a, b) == *conclusion {
                Ok(())
            } else {
                mismatch("Sub conclusion is not the renamed premise")
            }
        }
        RuleTag::Mrg => {
            let c = rule.pos.ok_or_else(|| {
                CheckError::SchemaMismatch("Mrg requires the fused position".to_string())
            })?;
            let [p] = premise_conclusions else {
                return mismatch("Mrg takes one premise");
            };
            if c + 1 >= p.len() {
                return Err(CheckError::PositionError(c));
            }
            let fused = p.component(c).union(p.component(c + 1));
            let expected = p.remove_component(c + 1).with_component(c, fused);
            if expected == *conclusion {
                Ok(())
            } else {
                mismatch("Mrg conclusion does not fuse the stated components")
            }
        }
        RuleTag::Cut => {
            let inst = rule.cut.as_ref().ok_or_else(|| {
                CheckError::SchemaMismatch("Cut requires a cut instance".to_string())
            })?;
            let [left, right] = premise_conclusions else {
                return mismatch("Cut takes two premises");
            };
            let expected = cut_conclusion(left, right, inst)?;
            if expected == *conclusion {
                Ok(())
            } else {
                Err(CheckError::CutAlignmentError(format!(
                    "conclusion `{conclusion}` does not match spliced `{expected}`"
                )))
            }
        }
        _ => {
            let expected = expected_premises(conclusion, rule)?;
            if expected.len() != premise_conclusions.len() {
                return mismatch(format!(
                    "{} expects {} premise(s), found {}",
                    tag.name(),
                    expected.len(),
                    premise_conclusions.len()
                ));
            }
            for (i, (want, got)) in expected.iter().zip(premise_conclusions).enumerate() {
                if want != *got {
                    return mismatch(format!(
                        "premise {i} of {}: expected `{want}`, found `{got}`",
                        tag.name()
                    ));
                }
            }
            Ok(())
        }
    }
}

/// Compute the conclusion of the cut rule from its premises.
///
/// Left premise `G // Γ ⊢ Δ, A // H` with ‖G‖ = g, ‖H‖ = h; right premise
/// `F // A^{k₁}, Γ₁ ⊢ Δ₁ // ⋯ // A^{kₙ}, Γₙ ⊢ Δₙ` with ‖F‖ = g and n = h+1.
/// The conclusion is `(G ⊕ F) // Γ,Γ₁ ⊢ Δ,Δ₁ // (H ⊕ (Γ₂ ⊢ Δ₂ // ⋯))`.
pub fn cut_conclusion(left: &Sequent, right: &Sequent, inst: &CutInstance) -> Check<Sequent> {
    let (g, h) = inst.alignment;
    let n = inst.multiplicities.len();
    if n == 0 || h != n - 1 {
        return Err(CheckError::CutAlignmentError("‖H‖ must equal n−1".to_string()));
    }
    if inst.multiplicities.iter().sum::<usize>() < 1 {
        return Err(CheckError::CutAlignmentError("Σ kᵢ must be at least 1".to_string()));
    }
    if left.len() != g + 1 + h {
        return Err(CheckError::CutAlignmentError(format!(
            "left premise has {} components, alignment demands {}",
            left.len(),
            g + 1 + h
        )));
    }
    if right.len() != g + n {
        return Err(CheckError::CutAlignmentError(format!(
            "right premise has {} components, alignment demands {}",
            right.len(),
            g + n
        )));
    }
    let a = &inst.cut_formula;
    let pivot = left.component(g);
    let pivot_cons = pivot
        .cons
        .remove_one(a)
        .ok_or_else(|| CheckError::CutAlignmentError(format!("cut formula `{a}` missing in left premise")))?;
    let mut components = Vec::with_capacity(g + n);
    for i in 0..g {
        components.push(left.component(i).union(right.component(i)));
    }
    let first_right = right.component(g);
    let first_ant = first_right.ant.remove_n(a, inst.multiplicities[0]).ok_or_else(|| {
        CheckError::CutAlignmentError(format!("right premise lacks {} copies of `{a}`", inst.multiplicities[0]))
    })?;
    components.push(Component::new(
        pivot.ant.union(&first_ant),
        pivot_cons.union(&first_right.cons),
    ));
    for i in 1..n {
        let rc = right.component(g + i);
        let ant = rc.ant.remove_n(a, inst.multiplicities[i]).ok_or_else(|| {
            CheckError::CutAlignmentError(format!(
                "right premise lacks {} copies of `{a}` in component {}",
                inst.multiplicities[i],
                g + i
            ))
        })?;
        let stripped = Component::new(ant, rc.cons.clone());
        let merged = match left.components().get(g + i) {
            Some(hc) => hc.union(&stripped),
            None => stripped,
        };
        components.push(merged);
    }
    Ok(Sequent::new(components))
}

/// Check a whole derivation tree; errors carry the path from the root.
pub fn check_derivation(d: &Derivation, mode: Mode) -> Check<()> {
    fn go(d: &Derivation, mode: Mode, path: &mut Vec<usize>) -> Check<()> {
        let premise_seqs: Vec<&Sequent> = d.premises.iter().map(|p| &p.conclusion).collect();
        check_node(&d.conclusion, &d.rule, &premise_seqs, mode).map_err(|e| {
            CheckError::AtPath { path: path.clone(), source: Box::new(e) }
        })?;
        for (i, p) in d.premises.iter().enumerate() {
            path.push(i);
            go(p, mode, path)?;
            path.pop();
        }
        Ok(())
    }
    go(d, mode, &mut Vec::new())
}

/// Backward application: the premises such that `check_node` accepts.
/// For eigenvariable rules with no eigen given, a fresh one is chosen; the
/// resolved instance is returned alongside.
pub fn apply_backward(g: &Sequent, rule: &RuleInstance) -> Check<(RuleInstance, Vec<Sequent>)> {
    let mut rule = rule.clone();
    if matches!(rule.tag(), RuleTag::ForallR1 | RuleTag::ForallR2 | RuleTag::ExistsL)
        && rule.eigen.is_none()
    {
        rule.eigen = Some(fresh_param(&g.params()));
    }
    let premises = expected_premises(g, &rule)?;
    Ok((rule, premises))
}
