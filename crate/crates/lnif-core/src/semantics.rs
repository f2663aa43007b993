//! Finite linear constant-domain Kripke models, the satisfaction relation,
//! bounded countermodel enumeration, and a Gödel-chain oracle for the
//! propositional fragment.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use thiserror::Error;

use crate::syntax::{Formula, Name, Signature, SyntaxError, Term};

#[derive(Error, Debug, PartialEq, Eq)]
pub enum ModelError {
    #[error("parameter #{0} not in the domain")]
    UnknownParameter(Name),
    #[error("valuation for {pred} shrinks from world {world} to {next}")]
    NonMonotone { pred: Name, world: usize, next: usize },
    #[error("world index {0} out of range")]
    BadWorld(usize),
    #[error("formula is not propositional")]
    NotPropositional,
    #[error("model text: {0}")]
    Parse(String),
}

/// A finite linear chain of worlds over one constant domain.
///
/// `R` is realized as `≤` on world indices, which makes it reflexive,
/// transitive, antisymmetric, and connected by construction. Monotonicity of
/// the valuation is the (TP) condition; the shared domain is (CD).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KripkeModel {
    worlds: usize,
    domain: Vec<Name>,
    /// (predicate, world) → argument tuples true there. 0-ary truth is the
    /// presence of the empty tuple.
    valuation: BTreeMap<(Name, usize), BTreeSet<Vec<Name>>>,
}

impl KripkeModel {
    pub fn new(
        worlds: usize,
        domain: Vec<Name>,
        valuation: BTreeMap<(Name, usize), BTreeSet<Vec<Name>>>,
    ) -> Result<Self, ModelError> {
        let m = KripkeModel::new_unchecked(worlds, domain, valuation);
        m.validate()?;
        Ok(m)
    }

    /// Skips the monotonicity check; the negative-control fixture in the
    /// persistence harness depends on being able to build broken models.
    pub fn new_unchecked(
        worlds: usize,
        domain: Vec<Name>,
        valuation: BTreeMap<(Name, usize), BTreeSet<Vec<Name>>>,
    ) -> Self {
        assert!(worlds >= 1, "at least one world");
        assert!(!domain.is_empty(), "non-empty domain");
        KripkeModel { worlds, domain, valuation }
    }

    pub fn validate(&self) -> Result<(), ModelError> {
        let preds: BTreeSet<&Name> = self.valuation.keys().map(|(p, _)| p).collect();
        for p in preds {
            for w in 0..self.worlds.saturating_sub(1) {
                let now = self.tuples(p, w);
                let next = self.tuples(p, w + 1);
                if !now.is_subset(&next) {
                    return Err(ModelError::NonMonotone { pred: p.clone(), world: w + 1, next: w + 2 });
                }
            }
        }
        Ok(())
    }

    pub fn worlds(&self) -> usize {
        self.worlds
    }

    pub fn domain(&self) -> &[Name] {
        &self.domain
    }

    fn tuples(&self, pred: &str, world: usize) -> BTreeSet<Vec<Name>> {
        self.valuation.get(&(pred.to_string(), world)).cloned().unwrap_or_default()
    }

    fn holds_atom(&self, pred: &str, args: &[Name], world: usize) -> bool {
        self.tuples(pred, world).contains(args)
    }

    /// The satisfaction relation at `world` for a closed formula whose
    /// parameters all denote domain elements.
    pub fn eval(&self, world: usize, f: &Formula) -> Result<bool, ModelError> {
        if world >= self.worlds {
            return Err(ModelError::BadWorld(world));
        }
        match f {
            Formula::Bottom => Ok(false),
            Formula::Atom(p, args) => {
                let mut names = Vec::with_capacity(args.len());
                for t in args {
                    match t {
                        Term::Param(a) => {
                            if !self.domain.contains(a) {
                                return Err(ModelError::UnknownParameter(a.clone()));
                            }
                            names.push(a.clone());
                        }
                        Term::Var(x) => return Err(ModelError::UnknownParameter(x.clone())),
                    }
                }
                Ok(self.holds_atom(p, &names, world))
            }
            Formula::Or(a, b) => Ok(self.eval(world, a)? || self.eval(world, b)?),
            Formula::And(a, b) => Ok(self.eval(world, a)? && self.eval(world, b)?),
            Formula::Implies(a, b) => {
                for u in world..self.worlds {
                    if self.eval(u, a)? && !self.eval(u, b)? {
                        return Ok(false);
                    }
                }
                Ok(true)
            }
            Formula::Forall(x, body) => {
                for u in world..self.worlds {
                    for d in &self.domain {
                        let inst = body.subst_var(x, &Term::Param(d.clone())).expect("no capture");
                        if !self.eval(u, &inst)? {
                            return Ok(false);
                        }
                    }
                }
                Ok(true)
            }
            Formula::Exists(x, body) => {
                for d in &self.domain {
                    let inst = body.subst_var(x, &Term::Param(d.clone())).expect("no capture");
                    if self.eval(world, &inst)? {
                        return Ok(true);
                    }
                }
                Ok(false)
            }
        }
    }

    /// `∀̄ f` holds at every world.
    pub fn globally_true(&self, f: &Formula) -> Result<bool, ModelError> {
        let closed = f.universal_closure();
        for w in 0..self.worlds {
            if !self.eval(w, &closed)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Persistence: truth of `f` at a world carries to every later world.
    pub fn check_persistence(&self, f: &Formula) -> Result<bool, ModelError> {
        let mut prev = false;
        for w in 0..self.worlds {
            let now = self.eval(w, f)?;
            if prev && !now {
                return Ok(false);
            }
            prev = now;
        }
        Ok(true)
    }
}

impl fmt::Display for KripkeModel {
    /// `worlds: m; domain: #a,#b; p@1: (#a); q@2: true` — worlds 1-based,
    /// omitted entries empty.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "worlds: {}; domain: ", self.worlds)?;
        let dom: Vec<String> = self.domain.iter().map(|d| format!("#{d}")).collect();
        write!(f, "{}", dom.join(","))?;
        for ((pred, w), tuples) in &self.valuation {
            if tuples.is_empty() {
                continue;
            }
            let entries: Vec<String> = tuples
                .iter()
                .map(|t| {
                    if t.is_empty() {
                        "true".to_string()
                    } else {
                        format!("({})", t.iter().map(|a| format!("#{a}")).collect::<Vec<_>>().join(","))
                    }
                })
                .collect();
            write!(f, "; {pred}@{}: {}", w + 1, entries.join(","))?;
        }
        Ok(())
    }
}

/// Parse the model text format; monotonicity is validated on load.
pub fn parse_model(text: &str) -> Result<KripkeModel, ModelError> {
    let mut worlds = None;
    let mut domain: Vec<Name> = Vec::new();
    let mut valuation: BTreeMap<(Name, usize), BTreeSet<Vec<Name>>> = BTreeMap::new();
    for part in text.split(';') {
        let part = part.trim();
        if part.is_empty() {
            continue;
        }
        let (key, value) = part
            .split_once(':')
            .ok_or_else(|| ModelError::Parse(format!("missing `:` in `{part}`")))?;
        let key = key.trim();
        let value = value.trim();
        if key == "worlds" {
            worlds = Some(
                value.parse::<usize>().map_err(|_| ModelError::Parse(format!("bad world count `{value}`")))?,
            );
        } else if key == "domain" {
            for d in value.split(',') {
                let d = d.trim();
                let d = d
                    .strip_prefix('#')
                    .ok_or_else(|| ModelError::Parse(format!("domain element `{d}` must start with #")))?;
                domain.push(d.to_string());
            }
        } else if let Some((pred, w)) = key.split_once('@') {
            let w: usize =
                w.parse().map_err(|_| ModelError::Parse(format!("bad world index in `{key}`")))?;
            if w == 0 {
                return Err(ModelError::Parse("world indices are 1-based".to_string()));
            }
            let entry = valuation.entry((pred.trim().to_string(), w - 1)).or_default();
            if value == "true" {
                entry.insert(vec![]);
            } else {
                for tuple in split_tuples(value)? {
                    entry.insert(tuple);
                }
            }
        } else {
            return Err(ModelError::Parse(format!("unrecognized entry `{part}`")));
        }
    }
    let worlds = worlds.ok_or_else(|| ModelError::Parse("missing `worlds:`".to_string()))?;
    if domain.is_empty() {
        return Err(ModelError::Parse("missing or empty `domain:`".to_string()));
    }
    for ((_, w), tuples) in &valuation {
        if *w >= worlds {
            return Err(ModelError::BadWorld(*w));
        }
        for t in tuples {
            for a in t {
                if !domain.contains(a) {
                    return Err(ModelError::UnknownParameter(a.clone()));
                }
            }
        }
    }
    // close upward so omitted later worlds inherit earlier truths? No: the
    // format lists each world explicitly; monotonicity is required of the input.
    KripkeModel::new(worlds, domain, valuation)
}

fn split_tuples(s: &str) -> Result<Vec<Vec<Name>>, ModelError> {
    let mut out = Vec::new();
    let mut rest = s.trim();
    while !rest.is_empty() {
        if !rest.starts_with('(') {
            return Err(ModelError::Parse(format!("expected `(` in tuple list at `{rest}`")));
        }
        let close = rest
            .find(')')
            .ok_or_else(|| ModelError::Parse(format!("unclosed tuple in `{s}`")))?;
        let inner = &rest[1..close];
        let tuple = inner
            .split(',')
            .map(|a| {
                let a = a.trim();
                a.strip_prefix('#')
                    .map(|n| n.to_string())
                    .ok_or_else(|| ModelError::Parse(format!("tuple element `{a}` must start with #")))
            })
            .collect::<Result<Vec<_>, _>>()?;
        out.push(tuple);
        rest = rest[close + 1..].trim_start();
        if let Some(r) = rest.strip_prefix(',') {
            rest = r.trim_start();
        }
    }
    Ok(out)
}

/// All predicates (with arities) occurring in a formula.
fn predicates(f: &Formula, out: &mut BTreeMap<Name, usize>) {
    match f {
        Formula::Atom(p, args) => {
            out.insert(p.clone(), args.len());
        }
        Formula::Bottom => {}
        Formula::And(a, b) | Formula::Or(a, b) | Formula::Implies(a, b) => {
            predicates(a, out);
            predicates(b, out);
        }
        Formula::Forall(_, a) | Formula::Exists(_, a) => predicates(a, out),
    }
}

fn tuples_over(domain: &[Name], arity: usize) -> Vec<Vec<Name>> {
    let mut out = vec![vec![]];
    for _ in 0..arity {
        let mut next = Vec::new();
        for t in &out {
            for d in domain {
                let mut t2 = t.clone();
                t2.push(d.clone());
                next.push(t2);
            }
        }
        out = next;
    }
    out
}

/// Iterator over every monotone valuation for the given predicates: each
/// ground tuple independently picks the first world where it becomes true
/// (or never), so there are `(worlds+1)^tuples` valuations per predicate.
struct MonotoneValuations {
    slots: Vec<(Name, Vec<Name>)>,
    worlds: usize,
    /// Per-slot join world, `worlds` meaning "never true".
    state: Vec<usize>,
    done: bool,
}

impl MonotoneValuations {
    fn new(preds: &BTreeMap<Name, usize>, domain: &[Name], worlds: usize) -> Self {
        let mut slots = Vec::new();
        for (p, arity) in preds {
            for t in tuples_over(domain, *arity) {
                slots.push((p.clone(), t));
            }
        }
        let state = vec![worlds; slots.len()];
        MonotoneValuations { slots, worlds, state, done: false }
    }

    fn total(&self) -> usize {
        (self.worlds + 1).pow(self.slots.len() as u32)
    }
}

impl Iterator for MonotoneValuations {
    type Item = BTreeMap<(Name, usize), BTreeSet<Vec<Name>>>;

    fn next(&mut self) -> Option<Self::Item> {
        if self.done {
            return None;
        }
        let mut valuation: BTreeMap<(Name, usize), BTreeSet<Vec<Name>>> = BTreeMap::new();
        for (i, (p, t)) in self.slots.iter().enumerate() {
            for w in self.state[i]..self.worlds {
                valuation.entry((p.clone(), w)).or_default().insert(t.clone());
            }
        }
        // lexicographic counter over join worlds; `worlds` = all-false start
        let mut i = self.slots.len();
        loop {
            if i == 0 {
                self.done = true;
                break;
            }
            i -= 1;
            if self.state[i] == 0 {
                self.state[i] = self.worlds;
            } else {
                self.state[i] -= 1;
                break;
            }
        }
        if self.slots.is_empty() {
            self.done = true;
        }
        Some(valuation)
    }
}

/// Exhaustively enumerate models with up to `max_worlds` worlds and up to
/// `max_domain` domain elements, smallest first; return the first one (with
/// a falsifying world) refuting `∀̄ f`, or `None`.
pub fn find_countermodel(
    f: &Formula,
    max_worlds: usize,
    max_domain: usize,
) -> Option<(KripkeModel, usize)> {
    let closed = f.universal_closure();
    let mut preds = BTreeMap::new();
    predicates(&closed, &mut preds);
    for worlds in 1..=max_worlds {
        for dom_size in 1..=max_domain {
            let domain: Vec<Name> = (0..dom_size).map(|i| format!("d{i}")).collect();
            for valuation in MonotoneValuations::new(&preds, &domain, worlds) {
                let m = KripkeModel::new_unchecked(worlds, domain.clone(), valuation);
                debug_assert!(m.validate().is_ok());
                for w in 0..worlds {
                    if !m.eval(w, &closed).expect("closed formula evaluates") {
                        return Some((m, w));
                    }
                }
            }
        }
    }
    None
}

/// Number of monotone valuations enumerated for `f` at the given bounds;
/// equals the closed-form product over predicates of `(worlds+1)^(|D|^arity)`.
pub fn countermodel_search_size(f: &Formula, worlds: usize, dom_size: usize) -> usize {
    let mut preds = BTreeMap::new();
    predicates(&f.universal_closure(), &mut preds);
    let domain: Vec<Name> = (0..dom_size).map(|i| format!("d{i}")).collect();
    MonotoneValuations::new(&preds, &domain, worlds).total()
}

/// Verdict of the Gödel-chain oracle.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum GoedelVerdict {
    Valid,
    /// A falsifying assignment: variable name → numerator over `denominator`.
    Invalid { assignment: BTreeMap<Name, usize>, denominator: usize },
}

impl GoedelVerdict {
    pub fn is_valid(&self) -> bool {
        matches!(self, GoedelVerdict::Valid)
    }
}

/// Decide propositional Gödel–Dummett validity by evaluating over the chain
/// `{0, 1/k, …, 1}` with `k + 1` elements, `k + 1 = #vars + 2`, under every
/// assignment: `∧` is min, `∨` is max, `⊥` is 0, and `a ⊃ b` is 1 when
/// `a ≤ b` and `b` otherwise.
pub fn goedel_valid(f: &Formula) -> Result<GoedelVerdict, ModelError> {
    if !f.is_propositional() {
        return Err(ModelError::NotPropositional);
    }
    let mut preds = BTreeMap::new();
    predicates(f, &mut preds);
    let vars: Vec<Name> = preds.keys().cloned().collect();
    let k = vars.len() + 1; // chain has k+1 elements 0..=k
    let mut assignment = vec![0usize; vars.len()];
    loop {
        let value = eval_goedel(f, &vars, &assignment, k);
        if value != k {
            let map = vars.iter().cloned().zip(assignment.iter().copied()).collect();
            return Ok(GoedelVerdict::Invalid { assignment: map, denominator: k });
        }
        // next assignment
        let mut i = 0;
        loop {
            if i == vars.len() {
                return Ok(GoedelVerdict::Valid);
            }
            if assignment[i] == k {
                assignment[i] = 0;
                i += 1;
            } else {
                assignment[i] += 1;
                break;
            }
        }
    }
}

fn eval_goedel(f: &Formula, vars: &[Name], assignment: &[usize], top: usize) -> usize {
    match f {
        Formula::Bottom => 0,
        Formula::Atom(p, _) => {
            let i = vars.iter().position(|v| v == p).expect("propositional variable");
            assignment[i]
        }
        Formula::And(a, b) => {
            eval_goedel(a, vars, assignment, top).min(eval_goedel(b, vars, assignment, top))
        }
        Formula::Or(a, b) => {
            eval_goedel(a, vars, assignment, top).max(eval_goedel(b, vars, assignment, top))
        }
        Formula::Implies(a, b) => {
            let va = eval_goedel(a, vars, assignment, top);
            let vb = eval_goedel(b, vars, assignment, top);
            if va <= vb {
                top
            } else {
                vb
            }
        }
        Formula::Forall(..) | Formula::Exists(..) => unreachable!("propositional only"),
    }
}

/// Convenience: parse a formula and run the chain oracle.
pub fn goedel_valid_text(text: &str) -> Result<GoedelVerdict, SyntaxError> {
    let mut sig = Signature::new();
    let f = crate::syntax::parse_formula_inferring(text, &mut sig)?;
    goedel_valid(&f).map_err(|e| SyntaxError::Syntax { position: 0, message: e.to_string() })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::syntax::{atom, implies, neg, or, parse_formula_inferring};

    fn f(text: &str) -> Formula {
        let mut sig = Signature::new();
        parse_formula_inferring(text, &mut sig).unwrap()
    }

    fn one_world_p_true() -> KripkeModel {
        let mut val = BTreeMap::new();
        val.insert(("p".to_string(), 0), [vec![]].into_iter().collect());
        KripkeModel::new(1, vec!["d0".to_string()], val).unwrap()
    }

    fn two_world_p_late() -> KripkeModel {
        let mut val = BTreeMap::new();
        val.insert(("p".to_string(), 1), [vec![]].into_iter().collect());
        KripkeModel::new(2, vec!["d0".to_string()], val).unwrap()
    }

    #[test]
    fn atom_clause() {
        let m = one_world_p_true();
        assert!(m.eval(0, &atom("p")).unwrap());
    }

    #[test]
    fn bottom_never_holds() {
        let m = two_world_p_late();
        for w in 0..2 {
            assert!(!m.eval(w, &Formula::Bottom).unwrap());
        }
    }

    #[test]
    fn double_negation_separates() {
        // p only at w₂ refutes ¬¬p ⊃ p at w₁ while satisfying ¬¬p.
        let m = two_world_p_late();
        assert!(m.eval(0, &neg(neg(atom("p")))).unwrap());
        assert!(!m.eval(0, &atom("p")).unwrap());
        assert!(!m.eval(0, &f("~~p -> p")).unwrap());
    }

    #[test]
    fn ex_falso_globally_true() {
        for m in [one_world_p_true(), two_world_p_late()] {
            assert!(m.globally_true(&implies(Formula::Bottom, atom("p"))).unwrap());
        }
    }

    #[test]
    fn excluded_middle_fails_on_two_worlds() {
        let m = two_world_p_late();
        assert!(!m.globally_true(&or(atom("p"), neg(atom("p")))).unwrap());
    }

    #[test]
    fn one_world_collapses_to_classical() {
        // Exhaustive over {p, q, bot} up to two connectives: one-world
        // evaluation agrees with the classical truth tables.
        let leaves = vec![atom("p"), atom("q"), Formula::Bottom];
        let mut formulas = leaves.clone();
        let mut one = Vec::new();
        for l in &leaves {
            for r in &leaves {
                one.push(crate::syntax::and(l.clone(), r.clone()));
                one.push(or(l.clone(), r.clone()));
                one.push(implies(l.clone(), r.clone()));
            }
        }
        for l in leaves.iter().chain(&one) {
            for r in &leaves {
                for (a, b) in [(l.clone(), r.clone()), (r.clone(), l.clone())] {
                    formulas.push(crate::syntax::and(a.clone(), b.clone()));
                    formulas.push(or(a.clone(), b.clone()));
                    formulas.push(implies(a, b));
                }
            }
        }
        formulas.extend(one);
        for pv in [false, true] {
            for qv in [false, true] {
                let mut val: BTreeMap<(Name, usize), BTreeSet<Vec<Name>>> = BTreeMap::new();
                if pv {
                    val.entry(("p".into(), 0)).or_default().insert(vec![]);
                }
                if qv {
                    val.entry(("q".into(), 0)).or_default().insert(vec![]);
                }
                let m = KripkeModel::new(1, vec!["d0".into()], val).unwrap();
                for formula in &formulas {
                    let classical = classical_eval(formula, pv, qv);
                    assert_eq!(
                        m.eval(0, formula).unwrap(),
                        classical,
                        "{formula} at p={pv}, q={qv}"
                    );
                }
            }
        }
    }

    fn classical_eval(f: &Formula, p: bool, q: bool) -> bool {
        match f {
            Formula::Bottom => false,
            Formula::Atom(name, _) => match name.as_str() {
                "p" => p,
                "q" => q,
                _ => unreachable!(),
            },
            Formula::And(a, b) => classical_eval(a, p, q) && classical_eval(b, p, q),
            Formula::Or(a, b) => classical_eval(a, p, q) || classical_eval(b, p, q),
            Formula::Implies(a, b) => !classical_eval(a, p, q) || classical_eval(b, p, q),
            _ => unreachable!(),
        }
    }

    #[test]
    fn persistence_holds_and_negative_control_fails() {
        let m = two_world_p_late();
        for s in ["p", "~p", "p -> bot", "p | ~p", "~~p"] {
            assert!(m.check_persistence(&f(s)).unwrap(), "{s}");
        }
        // invariant-violating fixture: p true at w₁ only
        let mut val = BTreeMap::new();
        val.insert(("p".to_string(), 0), [vec![]].into_iter().collect::<BTreeSet<_>>());
        let broken = KripkeModel::new_unchecked(2, vec!["d0".to_string()], val);
        assert!(broken.validate().is_err());
        assert!(!broken.check_persistence(&atom("p")).unwrap());
    }

    #[test]
    fn countermodel_for_simple_implication() {
        let (m, w) = find_countermodel(&f("p -> q"), 3, 2).unwrap();
        assert_eq!(m.worlds(), 1);
        assert_eq!(w, 0);
        assert!(!m.globally_true(&f("p -> q")).unwrap());
    }

    #[test]
    fn linearity_axiom_has_no_countermodel() {
        assert!(find_countermodel(&f("(p -> q) | (q -> p)"), 3, 2).is_none());
    }

    #[test]
    fn double_negation_needs_two_worlds() {
        let (m, _) = find_countermodel(&f("~~p -> p"), 3, 1).unwrap();
        assert_eq!(m.worlds(), 2);
    }

    #[test]
    fn quantifier_shift_validated_by_search() {
        // constant domains validate ∀x(A(x) ∨ B) ⊃ (∀xA(x) ∨ B)
        let shift = f("(forall x. (A(x) | B)) -> ((forall y. A(y)) | B)");
        assert!(find_countermodel(&shift, 3, 2).is_none());
    }

    #[test]
    fn enumeration_count_matches_closed_form() {
        // one unary predicate, 2 worlds, 2 elements: (2+1)^2 = 9 valuations;
        // brute-force check by counting distinct valuations.
        let formula = f("A(#d0)");
        assert_eq!(countermodel_search_size(&formula, 2, 2), 9);
        let mut preds = BTreeMap::new();
        predicates(&formula.universal_closure(), &mut preds);
        let domain = vec!["d0".to_string(), "d1".to_string()];
        let all: Vec<_> = MonotoneValuations::new(&preds, &domain, 2).collect();
        assert_eq!(all.len(), 9);
        let dedup: BTreeSet<String> = all.iter().map(|v| format!("{v:?}")).collect();
        assert_eq!(dedup.len(), 9, "each monotone valuation generated exactly once");
    }

    #[test]
    fn goedel_oracle_examples() {
        assert!(goedel_valid(&f("(p -> q) | (q -> p)")).unwrap().is_valid());
        assert!(goedel_valid(&f("bot -> p")).unwrap().is_valid());
        match goedel_valid(&f("p | (p -> bot)")).unwrap() {
            GoedelVerdict::Invalid { assignment, denominator } => {
                // witnessed strictly between 0 and 1
                let v = assignment["p"];
                assert!(v > 0 && v < denominator);
            }
            GoedelVerdict::Valid => panic!("excluded middle is not Gödel-valid"),
        }
        assert!(goedel_valid(&f("forall x. p(x)")).is_err());
    }

    #[test]
    fn oracle_and_countermodels_agree_on_small_formulas() {
        let mut rng = crate::syntax::tests_support::Rng(0xdeadbeef12345678);
        for _ in 0..400 {
            let formula =
                crate::syntax::tests_support::random_propositional(&mut rng, 3);
            let goedel = goedel_valid(&formula).unwrap().is_valid();
            let refuted = find_countermodel(&formula, 3, 1).is_some();
            if refuted {
                assert!(!goedel, "countermodel found for Gödel-valid {formula}");
            }
        }
    }

    #[test]
    fn model_text_roundtrip() {
        let text = "worlds: 2; domain: #a,#b; p@1: (#a); p@2: (#a),(#b); q@2: true";
        let m = parse_model(text).unwrap();
        assert_eq!(m.worlds(), 2);
        assert!(m.eval(0, &f("p(#a)")).unwrap());
        assert!(!m.eval(0, &f("p(#b)")).unwrap());
        assert!(m.eval(1, &f("q")).unwrap());
        let printed = m.to_string();
        let reparsed = parse_model(&printed).unwrap();
        assert_eq!(m, reparsed);
    }

    #[test]
    fn model_text_rejects_non_monotone() {
        let text = "worlds: 2; domain: #a; p@1: (#a)";
        assert!(matches!(parse_model(text), Err(ModelError::NonMonotone { .. })));
    }
}
