//! Bounded backward proof search, direct derivations of the axiom schemas,
//! and simulation of the Hilbert rules.
//!
//! The search saturates invertible rules in a fixed order and branches only
//! on existential witnesses. Universal instantiation and existential
//! witnessing try the parameters occurring in the branch plus one fresh, with
//! a per-formula cap. Search is complete only relative to the depth bound and
//! caps.

use std::collections::{BTreeMap, HashMap};
use std::sync::RwLock;

use thiserror::Error;

use crate::builders as b;
use crate::calculus::Derivation;
use crate::sequent::{Component, Multiset, Sequent};
use crate::syntax::{fresh_param, Formula, Name, Term};
use crate::transform::{self, TransformError};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SearchConfig {
    pub depth: usize,
    pub witness_cap: usize,
    pub memo: bool,
    pub parallel: bool,
}

impl Default for SearchConfig {
    fn default() -> Self {
        SearchConfig { depth: 40, witness_cap: 2, memo: true, parallel: false }
    }
}

impl SearchConfig {
    /// Parse the `key=value` config format: `depth`, `witness_cap`,
    /// `memo on|off`, `parallel on|off`.
    pub fn parse(text: &str) -> Result<SearchConfig, ProverError> {
        let mut cfg = SearchConfig::default();
        for line in text.lines() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let (key, value) = line
                .split_once('=')
                .ok_or_else(|| ProverError::Config(format!("expected key=value, got `{line}`")))?;
            let (key, value) = (key.trim(), value.trim());
            match key {
                "depth" => {
                    cfg.depth = value
                        .parse()
                        .map_err(|_| ProverError::Config(format!("bad depth `{value}`")))?
                }
                "witness_cap" => {
                    cfg.witness_cap = value
                        .parse()
                        .map_err(|_| ProverError::Config(format!("bad witness_cap `{value}`")))?
                }
                "memo" => cfg.memo = parse_switch(value)?,
                "parallel" => cfg.parallel = parse_switch(value)?,
                other => return Err(ProverError::Config(format!("unknown key `{other}`"))),
            }
        }
        Ok(cfg)
    }
}

fn parse_switch(value: &str) -> Result<bool, ProverError> {
    match value {
        "on" | "true" | "1" => Ok(true),
        "off" | "false" | "0" => Ok(false),
        other => Err(ProverError::Config(format!("expected on/off, got `{other}`"))),
    }
}

#[derive(Error, Debug)]
pub enum ProverError {
    #[error("depth limit exceeded")]
    DepthExceeded,
    #[error("no rule applies; the goal is saturated")]
    Saturated,
    #[error("config: {0}")]
    Config(String),
    #[error("schema instance: {0}")]
    Schema(String),
    #[error(transparent)]
    Transform(#[from] TransformError),
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum FailKind {
    /// Ran out of budget somewhere below: retrying with more depth may help.
    Depth,
    /// Cut off by the ancestor loop check: path-dependent, never memoized.
    Loop,
    /// Exhausted every rule: an intrinsic dead end, safe to memoize.
    Saturated,
}

impl FailKind {
    fn join(self, other: FailKind) -> FailKind {
        use FailKind::*;
        match (self, other) {
            (Depth, _) | (_, Depth) => Depth,
            (Loop, _) | (_, Loop) => Loop,
            _ => Saturated,
        }
    }
}

#[allow(clippy::large_enum_variant)]
enum MemoEntry {
    Proved(Derivation),
    Failed { budget: usize },
}

/// Persistent ancestor chain for the loop check.
#[derive(Clone, Default)]
struct Path(Option<std::sync::Arc<(String, Path)>>);

impl Path {
    fn contains(&self, key: &str) -> bool {
        let mut cur = self;
        while let Some(node) = &cur.0 {
            if node.0 == key {
                return true;
            }
            cur = &node.1;
        }
        false
    }

    fn push(&self, key: String) -> Path {
        Path(Some(std::sync::Arc::new((key, self.clone()))))
    }
}

#[derive(Clone, Default)]
struct Branch {
    /// (formula, witness) → number of instantiations along this branch.
    used: BTreeMap<(String, Name), usize>,
    path: Path,
}

struct Search<'a> {
    cfg: &'a SearchConfig,
    memo: RwLock<HashMap<String, MemoEntry>>,
}

/// Canonical key: parameters renamed in first-occurrence order of the
/// canonical printing, so memoized outcomes transfer across renamings.
fn canonical(g: &Sequent) -> (String, Sequent, Vec<(Name, Name)>) {
    let printed = g.to_string();
    let mut order: Vec<Name> = Vec::new();
    let bytes = printed.as_bytes();
    let mut i = 0;
    while i < bytes.len() {
        if bytes[i] == b'#' {
            let start = i + 1;
            let mut j = start;
            while j < bytes.len()
                && (bytes[j].is_ascii_alphanumeric() || bytes[j] == b'_' || bytes[j] == b'\'')
            {
                j += 1;
            }
            let name = printed[start..j].to_string();
            if !order.contains(&name) {
                order.push(name);
            }
            i = j;
        } else {
            i += 1;
        }
    }
    let mapping: Vec<(Name, Name)> = order
        .iter()
        .enumerate()
        .map(|(idx, p)| (p.clone(), format!("c{idx}")))
        .collect();
    let mut canon = g.clone();
    // two-phase rename to avoid collisions with existing names
    for (idx, (from, _)) in mapping.iter().enumerate() {
        canon = canon.rename_param(from, &format!("tmp!{idx}"));
    }
    for (idx, (_, to)) in mapping.iter().enumerate() {
        canon = canon.rename_param(&format!("tmp!{idx}"), to);
    }
    (canon.to_string(), canon, mapping)
}

/// Rename a derivation of the canonical sequent back to the original names.
fn unrename(d: &Derivation, mapping: &[(Name, Name)]) -> Result<Derivation, TransformError> {
    let mut cur = d.clone();
    for (idx, (_, to)) in mapping.iter().enumerate() {
        cur = transform::rename_param(&cur, to, &format!("tmp!{idx}"))?;
    }
    for (idx, (from, _)) in mapping.iter().enumerate() {
        cur = transform::rename_param(&cur, &format!("tmp!{idx}"), from)?;
    }
    Ok(cur)
}

fn rename_to_canonical(
    d: &Derivation,
    mapping: &[(Name, Name)],
) -> Result<Derivation, TransformError> {
    let mut cur = d.clone();
    for (idx, (from, _)) in mapping.iter().enumerate() {
        cur = transform::rename_param(&cur, from, &format!("tmp!{idx}"))?;
    }
    for (idx, (_, to)) in mapping.iter().enumerate() {
        cur = transform::rename_param(&cur, &format!("tmp!{idx}"), to)?;
    }
    Ok(cur)
}

/// Bounded backward proof search; on success the derivation is official-mode
/// checker-valid and deterministic under a fixed config.
pub fn prove(goal: &Sequent, cfg: &SearchConfig) -> Result<Derivation, ProverError> {
    let search = Search { cfg, memo: RwLock::new(HashMap::new()) };
    match search.run(goal, cfg.depth, &Branch::default()) {
        Ok(d) => {
            debug_assert!(
                crate::calculus::check_derivation(&d, crate::calculus::Mode::Official).is_ok()
            );
            Ok(d)
        }
        Err(FailKind::Depth) => Err(ProverError::DepthExceeded),
        Err(FailKind::Loop | FailKind::Saturated) => Err(ProverError::Saturated),
    }
}

impl Search<'_> {
    fn run(&self, g: &Sequent, budget: usize, branch: &Branch) -> Result<Derivation, FailKind> {
        if let Some(d) = b::try_axiom(g) {
            return Ok(d);
        }
        let (key, _canon, mapping) = canonical(g);
        if branch.path.contains(&key) {
            return Err(FailKind::Loop);
        }
        if self.cfg.memo {
            let memo = self.memo.read().unwrap();
            match memo.get(&key) {
                Some(MemoEntry::Proved(d)) => {
                    if let Ok(renamed) = unrename(d, &mapping) {
                        if renamed.conclusion == *g {
                            return Ok(renamed);
                        }
                    }
                }
                Some(MemoEntry::Failed { budget: failed_at }) if budget <= *failed_at => {
                    return Err(FailKind::Saturated);
                }
                _ => {}
            }
        }
        if budget == 0 {
            return Err(FailKind::Depth);
        }
        let branch = Branch { used: branch.used.clone(), path: branch.path.push(key.clone()) };
        let outcome = self.step(g, budget, &branch);
        if self.cfg.memo {
            let mut memo = self.memo.write().unwrap();
            match &outcome {
                Ok(d) => {
                    if let Ok(canon_d) = rename_to_canonical(d, &mapping) {
                        memo.insert(key, MemoEntry::Proved(canon_d));
                    }
                }
                Err(FailKind::Saturated) => {
                    let entry = memo.entry(key).or_insert(MemoEntry::Failed { budget: 0 });
                    if let MemoEntry::Failed { budget: stored } = entry {
                        *stored = (*stored).max(budget);
                    }
                }
                Err(FailKind::Depth | FailKind::Loop) => {}
            }
        }
        outcome
    }

    fn step(&self, g: &Sequent, budget: usize, branch: &Branch) -> Result<Derivation, FailKind> {
        // 1. invertible non-branching decompositions
        for (c, comp) in g.components().iter().enumerate() {
            for f in comp.ant.to_vec() {
                match &f {
                    Formula::And(x, y) => {
                        let prem = replace_ant(g, c, &f, &[(**x).clone(), (**y).clone()]);
                        let d = self.run(&prem, budget - 1, branch)?;
                        return Ok(b::and_l(d, c, x, y));
                    }
                    Formula::Exists(x, body) => {
                        let e = fresh_param(&g.params());
                        let inst = instantiate(x, body, &e);
                        let prem = replace_ant(g, c, &f, std::slice::from_ref(&inst));
                        let d = self.run(&prem, budget - 1, branch)?;
                        return Ok(b::exists_l(d, c, x, body, &e));
                    }
                    _ => {}
                }
            }
            for f in comp.cons.to_vec() {
                if let Formula::Or(x, y) = &f {
                    let prem = replace_cons(g, c, &f, &[(**x).clone(), (**y).clone()]);
                    let d = self.run(&prem, budget - 1, branch)?;
                    return Ok(b::or_r(d, c, x, y));
                }
            }
        }
        // 2. invertible branching decompositions
        for (c, comp) in g.components().iter().enumerate() {
            for f in comp.cons.to_vec() {
                if let Formula::And(x, y) = &f {
                    let p1 = replace_cons(g, c, &f, std::slice::from_ref(x));
                    let p2 = replace_cons(g, c, &f, std::slice::from_ref(y));
                    let d1 = self.run(&p1, budget - 1, branch)?;
                    let d2 = self.run(&p2, budget - 1, branch)?;
                    return Ok(b::and_r(d1, d2, c, x, y));
                }
            }
            for f in comp.ant.to_vec() {
                if let Formula::Or(x, y) = &f {
                    let p1 = replace_ant(g, c, &f, std::slice::from_ref(x));
                    let p2 = replace_ant(g, c, &f, std::slice::from_ref(y));
                    let d1 = self.run(&p1, budget - 1, branch)?;
                    let d2 = self.run(&p2, budget - 1, branch)?;
                    return Ok(b::or_l(d1, d2, c, x, y));
                }
            }
        }
        // 3. left implication, guarded against useless re-application
        for (c, comp) in g.components().iter().enumerate() {
            for f in comp.ant.to_vec() {
                if let Formula::Implies(x, y) = &f {
                    if comp.cons.contains(x) {
                        continue;
                    }
                    let p1 = replace_ant(g, c, &f, std::slice::from_ref(y));
                    let p2 = g.with_component(
                        c,
                        Component::new(comp.ant.clone(), comp.cons.insert((**x).clone())),
                    );
                    let d1 = self.run(&p1, budget - 1, branch)?;
                    let d2 = self.run(&p2, budget - 1, branch)?;
                    return Ok(b::imp_l(d1, d2, c, x, y));
                }
            }
        }
        // 4. lift propagation, once per formula and slot along a branch —
        // repeated copies feed consume-and-recopy cycles with (⊃l)
        for c in 0..g.len().saturating_sub(1) {
            for f in g.component(c).ant.to_vec() {
                if !g.component(c + 1).ant.contains(&f) {
                    let used_key = (format!("lift!{c}!{f}"), String::new());
                    if branch.used.get(&used_key).copied().unwrap_or(0) >= 1 {
                        continue;
                    }
                    let mut next = branch.clone();
                    *next.used.entry(used_key).or_insert(0) += 1;
                    let succ = g.component(c + 1);
                    let prem = g.with_component(
                        c + 1,
                        Component::new(succ.ant.insert(f.clone()), succ.cons.clone()),
                    );
                    let d = self.run(&prem, budget - 1, &next)?;
                    return Ok(b::lift(d, c, &f));
                }
            }
        }
        // 5. right implications and universals (invertible)
        for (c, comp) in g.components().iter().enumerate() {
            let last = c + 1 == g.len();
            for f in comp.cons.to_vec() {
                match &f {
                    Formula::Implies(x, y) if !last => {
                        let trimmed = remove_cons(g, c, &f);
                        let p1 = trimmed.insert_component(
                            c + 1,
                            Component::new(
                                Multiset::singleton((**x).clone()),
                                Multiset::singleton((**y).clone()),
                            ),
                        );
                        let succ = trimmed.component(c + 1);
                        let p2 = trimmed.with_component(
                            c + 1,
                            Component::new(succ.ant.clone(), succ.cons.insert(f.clone())),
                        );
                        let d1 = self.run(&p1, budget - 1, branch)?;
                        let d2 = self.run(&p2, budget - 1, branch)?;
                        return Ok(b::imp_r2(d1, d2, c, x, y));
                    }
                    Formula::Implies(x, y) => {
                        let prem = remove_cons(g, c, &f).push_component(Component::new(
                            Multiset::singleton((**x).clone()),
                            Multiset::singleton((**y).clone()),
                        ));
                        let d = self.run(&prem, budget - 1, branch)?;
                        return Ok(b::imp_r1(d, x, y));
                    }
                    Formula::Forall(x, body) if !last => {
                        let e = fresh_param(&g.params());
                        let inst = instantiate(x, body, &e);
                        let trimmed = remove_cons(g, c, &f);
                        let p1 = trimmed.insert_component(
                            c + 1,
                            Component::new(Multiset::new(), Multiset::singleton(inst)),
                        );
                        let succ = trimmed.component(c + 1);
                        let p2 = trimmed.with_component(
                            c + 1,
                            Component::new(succ.ant.clone(), succ.cons.insert(f.clone())),
                        );
                        let d1 = self.run(&p1, budget - 1, branch)?;
                        let d2 = self.run(&p2, budget - 1, branch)?;
                        return Ok(b::forall_r2(d1, d2, c, x, body, &e));
                    }
                    Formula::Forall(x, body) => {
                        let e = fresh_param(&g.params());
                        let inst = instantiate(x, body, &e);
                        let prem = remove_cons(g, c, &f).push_component(Component::new(
                            Multiset::new(),
                            Multiset::singleton(inst),
                        ));
                        let d = self.run(&prem, budget - 1, branch)?;
                        return Ok(b::forall_r1(d, x, body, &e));
                    }
                    _ => {}
                }
            }
        }
        // 6. universal instantiation on the left (retained, capped)
        let witnesses = witness_candidates(g);
        for (c, comp) in g.components().iter().enumerate() {
            for f in comp.ant.to_vec() {
                if let Formula::Forall(x, body) = &f {
                    for w in &witnesses {
                        let inst = instantiate(x, body, w);
                        if comp.ant.contains(&inst) {
                            continue;
                        }
                        let used_key = (f.to_string(), w.clone());
                        let uses = branch.used.get(&used_key).copied().unwrap_or(0);
                        if uses >= self.cfg.witness_cap {
                            continue;
                        }
                        let mut next = branch.clone();
                        *next.used.entry(used_key).or_insert(0) += 1;
                        let prem = g.with_component(
                            c,
                            Component::new(comp.ant.insert(inst), comp.cons.clone()),
                        );
                        let d = self.run(&prem, budget - 1, &next)?;
                        return Ok(b::forall_l(d, c, x, body, w));
                    }
                }
            }
        }
        // 7. existential witnesses on the right: the only real choice point
        let mut alternatives: Vec<(usize, Formula, Name)> = Vec::new();
        for (c, comp) in g.components().iter().enumerate() {
            for f in comp.cons.to_vec() {
                if let Formula::Exists(..) = &f {
                    for w in &witnesses {
                        let used_key = (f.to_string(), w.clone());
                        if branch.used.get(&used_key).copied().unwrap_or(0)
                            >= self.cfg.witness_cap
                        {
                            continue;
                        }
                        alternatives.push((c, f.clone(), w.clone()));
                    }
                }
            }
        }
        if alternatives.is_empty() {
            return Err(FailKind::Saturated);
        }
        let attempt = |(c, f, w): &(usize, Formula, Name)| -> Result<Derivation, FailKind> {
            let Formula::Exists(x, body) = f else { unreachable!() };
            let inst = instantiate(x, body, w);
            let prem = replace_cons(g, *c, f, std::slice::from_ref(&inst));
            let mut next = branch.clone();
            *next.used.entry((f.to_string(), w.clone())).or_insert(0) += 1;
            let d = self.run(&prem, budget - 1, &next)?;
            Ok(b::exists_r(d, *c, x, body, w))
        };
        let results: Vec<Result<Derivation, FailKind>> =
            if self.cfg.parallel && alternatives.len() > 1 {
                std::thread::scope(|scope| {
                    let handles: Vec<_> = alternatives
                        .iter()
                        .map(|alt| scope.spawn(move || attempt(alt)))
                        .collect();
                    handles.into_iter().map(|h| h.join().expect("search thread")).collect()
                })
            } else {
                let mut out = Vec::new();
                for alt in &alternatives {
                    let r = attempt(alt);
                    let hit = r.is_ok();
                    out.push(r);
                    if hit {
                        break;
                    }
                }
                out
            };
        let mut kind = FailKind::Saturated;
        for r in results {
            match r {
                Ok(d) => return Ok(d),
                Err(k) => kind = kind.join(k),
            }
        }
        Err(kind)
    }
}

fn witness_candidates(g: &Sequent) -> Vec<Name> {
    let params = g.params();
    let mut out: Vec<Name> = params.iter().cloned().collect();
    out.push(fresh_param(&params));
    out
}

fn instantiate(x: &str, body: &Formula, p: &str) -> Formula {
    body.subst_var(x, &Term::Param(p.to_string())).expect("parameter substitution")
}

fn replace_ant(g: &Sequent, c: usize, f: &Formula, reps: &[Formula]) -> Sequent {
    let comp = g.component(c);
    let mut ant = comp.ant.remove_one(f).expect("occurrence present");
    for r in reps {
        ant = ant.insert(r.clone());
    }
    g.with_component(c, Component::new(ant, comp.cons.clone()))
}

fn replace_cons(g: &Sequent, c: usize, f: &Formula, reps: &[Formula]) -> Sequent {
    let comp = g.component(c);
    let mut cons = comp.cons.remove_one(f).expect("occurrence present");
    for r in reps {
        cons = cons.insert(r.clone());
    }
    g.with_component(c, Component::new(comp.ant.clone(), cons))
}

fn remove_cons(g: &Sequent, c: usize, f: &Formula) -> Sequent {
    let comp = g.component(c);
    g.with_component(
        c,
        Component::new(comp.ant.clone(), comp.cons.remove_one(f).expect("occurrence present")),
    )
}

// ---------------------------------------------------------------------------
// axiom schemas
// ---------------------------------------------------------------------------

/// An instantiated axiom schema of the Hilbert axiomatization.
#[derive(Clone, Debug)]
pub enum AxiomInstance {
    /// A ⊃ (B ⊃ A)
    ImpIntro(Formula, Formula),
    /// (A ⊃ (B ⊃ C)) ⊃ ((A ⊃ B) ⊃ (A ⊃ C))
    ImpChain(Formula, Formula, Formula),
    /// A ⊃ (B ⊃ A ∧ B)
    AndIntro(Formula, Formula),
    /// A ∧ B ⊃ A
    AndElimL(Formula, Formula),
    /// A ∧ B ⊃ B
    AndElimR(Formula, Formula),
    /// A ⊃ A ∨ B
    OrIntroL(Formula, Formula),
    /// B ⊃ A ∨ B
    OrIntroR(Formula, Formula),
    /// (A ⊃ C) ⊃ ((B ⊃ C) ⊃ (A ∨ B ⊃ C))
    OrElim(Formula, Formula, Formula),
    /// ⊥ ⊃ A
    ExFalso(Formula),
    /// (A ⊃ B) ∨ (B ⊃ A)
    Linearity(Formula, Formula),
    /// ∀x A ⊃ A[#w/x]
    ForallInst { x: Name, body: Formula, witness: Name },
    /// A[#w/x] ⊃ ∃x A
    ExistsIntro { x: Name, body: Formula, witness: Name },
    /// ∀x (B ⊃ A(x)) ⊃ (B ⊃ ∀x A(x)), x not free in B
    ForallImpShift { x: Name, b: Formula, body: Formula },
    /// ∀x (A(x) ⊃ B) ⊃ (∃x A(x) ⊃ B), x not free in B
    ExistsImpShift { x: Name, body: Formula, b: Formula },
    /// ∀x (A(x) ∨ B) ⊃ (∀x A(x) ∨ B), x not free in B
    ForallOrShift { x: Name, body: Formula, b: Formula },
}

impl AxiomInstance {
    /// The axiom formula this instance concludes.
    pub fn formula(&self) -> Formula {
        use crate::syntax::{and, implies, or};
        use AxiomInstance::*;
        match self {
            ImpIntro(a, bf) => implies(a.clone(), implies(bf.clone(), a.clone())),
            ImpChain(a, bf, c) => implies(
                implies(a.clone(), implies(bf.clone(), c.clone())),
                implies(implies(a.clone(), bf.clone()), implies(a.clone(), c.clone())),
            ),
            AndIntro(a, bf) => implies(a.clone(), implies(bf.clone(), and(a.clone(), bf.clone()))),
            AndElimL(a, bf) => implies(and(a.clone(), bf.clone()), a.clone()),
            AndElimR(a, bf) => implies(and(a.clone(), bf.clone()), bf.clone()),
            OrIntroL(a, bf) => implies(a.clone(), or(a.clone(), bf.clone())),
            OrIntroR(a, bf) => implies(bf.clone(), or(a.clone(), bf.clone())),
            OrElim(a, bf, c) => implies(
                implies(a.clone(), c.clone()),
                implies(
                    implies(bf.clone(), c.clone()),
                    implies(or(a.clone(), bf.clone()), c.clone()),
                ),
            ),
            ExFalso(a) => implies(Formula::Bottom, a.clone()),
            Linearity(a, bf) => {
                or(implies(a.clone(), bf.clone()), implies(bf.clone(), a.clone()))
            }
            ForallInst { x, body, witness } => implies(
                Formula::Forall(x.clone(), Box::new(body.clone())),
                instantiate(x, body, witness),
            ),
            ExistsIntro { x, body, witness } => implies(
                instantiate(x, body, witness),
                Formula::Exists(x.clone(), Box::new(body.clone())),
            ),
            ForallImpShift { x, b: bf, body } => implies(
                Formula::Forall(x.clone(), Box::new(implies(bf.clone(), body.clone()))),
                implies(bf.clone(), Formula::Forall(x.clone(), Box::new(body.clone()))),
            ),
            ExistsImpShift { x, body, b: bf } => implies(
                Formula::Forall(x.clone(), Box::new(implies(body.clone(), bf.clone()))),
                implies(Formula::Exists(x.clone(), Box::new(body.clone())), bf.clone()),
            ),
            ForallOrShift { x, body, b: bf } => implies(
                Formula::Forall(x.clone(), Box::new(or(body.clone(), bf.clone()))),
                or(Formula::Forall(x.clone(), Box::new(body.clone())), bf.clone()),
            ),
        }
    }

    /// Every schema over distinct atoms (unary predicates where quantified).
    pub fn corpus() -> Vec<AxiomInstance> {
        use crate::syntax::{atom, atom1, var};
        use AxiomInstance::*;
        let (a, bf, c) = (atom("a"), atom("b"), atom("c"));
        let px = atom1("p", var("x"));
        vec![
            ImpIntro(a.clone(), bf.clone()),
            ImpChain(a.clone(), bf.clone(), c.clone()),
            AndIntro(a.clone(), bf.clone()),
            AndElimL(a.clone(), bf.clone()),
            AndElimR(a.clone(), bf.clone()),
            OrIntroL(a.clone(), bf.clone()),
            OrIntroR(a.clone(), bf.clone()),
            OrElim(a.clone(), bf.clone(), c.clone()),
            ExFalso(a.clone()),
            Linearity(a.clone(), bf.clone()),
            ForallInst { x: "x".into(), body: px.clone(), witness: "w".into() },
            ExistsIntro { x: "x".into(), body: px.clone(), witness: "w".into() },
            ForallImpShift { x: "x".into(), b: bf.clone(), body: px.clone() },
            ExistsImpShift { x: "x".into(), body: px.clone(), b: bf.clone() },
            ForallOrShift { x: "x".into(), body: px, b: bf },
        ]
    }
}

/// Direct construction (not search) of a derivation for the axiom instance.
pub fn prove_axiom(inst: &AxiomInstance) -> Result<Derivation, ProverError> {
    use AxiomInstance::*;
    let empty = Component::empty;
    let ident =
        |f: &Formula, g: &[Component], gamma: &[Formula], delta: &[Formula], h: &[Component]| {
            transform::derive_identity(
                f,
                g,
                &Multiset::from_vec(gamma.to_vec()),
                &Multiset::from_vec(delta.to_vec()),
                h,
            )
        };
    let d = match inst {
        ImpIntro(a, bf) => {
            let g = [empty(), Component::new(Multiset::singleton(a.clone()), Multiset::new())];
            let base = ident(a, &g, std::slice::from_ref(bf), &[], &[]);
            let lifted = b::lift(base, 1, a);
            let inner = b::imp_r1(lifted, bf, a);
            b::imp_r1(inner, a, &crate::syntax::implies(bf.clone(), a.clone()))
        }
        ImpChain(a, bf, c) => {
            let phi1 =
                crate::syntax::implies(a.clone(), crate::syntax::implies(bf.clone(), c.clone()));
            let phi2 = crate::syntax::implies(a.clone(), bf.clone());
            let bc = crate::syntax::implies(bf.clone(), c.clone());
            let g3 = [
                empty(),
                Component::new(Multiset::singleton(phi1.clone()), Multiset::new()),
                Component::new(
                    Multiset::from_vec(vec![phi2.clone(), phi1.clone()]),
                    Multiset::new(),
                ),
            ];
            let p111 = ident(c, &g3, &[a.clone(), bf.clone()], &[], &[]);
            let p112 = ident(bf, &g3, &[a.clone(), bc.clone()], std::slice::from_ref(c), &[]);
            let p11 = b::imp_l(p111, p112, 3, bf, c);
            let p12 = ident(a, &g3, &[bf.clone(), phi1.clone()], std::slice::from_ref(c), &[]);
            let p1 = b::imp_l(p11, p12, 3, a, &bc);
            let p2 = ident(a, &g3, &[phi2.clone(), phi1.clone()], std::slice::from_ref(c), &[]);
            let d = b::imp_l(p1, p2, 3, a, bf);
            let d = b::lift(d, 2, &phi1);
            let d = b::lift(d, 2, &phi2);
            let d = b::lift(d, 1, &phi1);
            let d = b::imp_r1(d, a, c);
            let ac = crate::syntax::implies(a.clone(), c.clone());
            let d = b::imp_r1(d, &phi2, &ac);
            b::imp_r1(d, &phi1, &crate::syntax::implies(phi2.clone(), ac))
        }
        AndIntro(a, bf) => {
            let g = [empty(), Component::new(Multiset::singleton(a.clone()), Multiset::new())];
            let p1 = ident(a, &g, std::slice::from_ref(bf), &[], &[]);
            let p2 = ident(bf, &g, std::slice::from_ref(a), &[], &[]);
            let d = b::and_r(p1, p2, 2, a, bf);
            let d = b::lift(d, 1, a);
            let ab = crate::syntax::and(a.clone(), bf.clone());
            let d = b::imp_r1(d, bf, &ab);
            b::imp_r1(d, a, &crate::syntax::implies(bf.clone(), ab))
        }
        AndElimL(a, bf) => {
            let d = ident(a, &[empty()], std::slice::from_ref(bf), &[], &[]);
            let d = b::and_l(d, 1, a, bf);
            b::imp_r1(d, &crate::syntax::and(a.clone(), bf.clone()), a)
        }
        AndElimR(a, bf) => {
            let d = ident(bf, &[empty()], std::slice::from_ref(a), &[], &[]);
            let d = b::and_l(d, 1, a, bf);
            b::imp_r1(d, &crate::syntax::and(a.clone(), bf.clone()), bf)
        }
        OrIntroL(a, bf) => {
            let d = ident(a, &[empty()], &[], std::slice::from_ref(bf), &[]);
            let d = b::or_r(d, 1, a, bf);
            b::imp_r1(d, a, &crate::syntax::or(a.clone(), bf.clone()))
        }
        OrIntroR(a, bf) => {
            let d = ident(bf, &[empty()], &[], std::slice::from_ref(a), &[]);
            let d = b::or_r(d, 1, a, bf);
            b::imp_r1(d, bf, &crate::syntax::or(a.clone(), bf.clone()))
        }
        OrElim(a, bf, c) => {
            let psi1 = crate::syntax::implies(a.clone(), c.clone());
            let psi2 = crate::syntax::implies(bf.clone(), c.clone());
            let g3 = [
                empty(),
                Component::new(Multiset::singleton(psi1.clone()), Multiset::new()),
                Component::new(
                    Multiset::from_vec(vec![psi2.clone(), psi1.clone()]),
                    Multiset::new(),
                ),
            ];
            let pa1 = ident(c, &g3, &[a.clone(), psi2.clone()], &[], &[]);
            let pa2 = ident(a, &g3, &[psi2.clone(), psi1.clone()], std::slice::from_ref(c), &[]);
            let pa = b::imp_l(pa1, pa2, 3, a, c);
            let pb1 = ident(c, &g3, &[bf.clone(), psi1.clone()], &[], &[]);
            let pb2 = ident(bf, &g3, &[psi1.clone(), psi2.clone()], std::slice::from_ref(c), &[]);
            let pb = b::imp_l(pb1, pb2, 3, bf, c);
            let d = b::or_l(pa, pb, 3, a, bf);
            let d = b::lift(d, 2, &psi1);
            let d = b::lift(d, 2, &psi2);
            let d = b::lift(d, 1, &psi1);
            let orab = crate::syntax::or(a.clone(), bf.clone());
            let d = b::imp_r1(d, &orab, c);
            let tail = crate::syntax::implies(orab, c.clone());
            let d = b::imp_r1(d, &psi2, &tail);
            b::imp_r1(d, &psi1, &crate::syntax::implies(psi2.clone(), tail))
        }
        ExFalso(a) => {
            let g = Sequent::new(vec![
                empty(),
                Component::new(
                    Multiset::singleton(Formula::Bottom),
                    Multiset::singleton(a.clone()),
                ),
            ]);
            let d = b::bot_l(g, 1);
            b::imp_r1(d, &Formula::Bottom, a)
        }
        Linearity(a, bf) => {
            let ab = crate::syntax::implies(a.clone(), bf.clone());
            let ba = crate::syntax::implies(bf.clone(), a.clone());
            let l0 = ident(
                a,
                &[
                    empty(),
                    Component::new(
                        Multiset::singleton(a.clone()),
                        Multiset::singleton(bf.clone()),
                    ),
                ],
                std::slice::from_ref(bf),
                &[],
                &[],
            );
            let left = b::lift(l0, 1, a);
            let r0 = ident(
                bf,
                &[
                    empty(),
                    Component::new(
                        Multiset::singleton(bf.clone()),
                        Multiset::singleton(a.clone()),
                    ),
                ],
                std::slice::from_ref(a),
                &[],
                &[],
            );
            let r1 = b::lift(r0, 1, bf);
            let right = b::imp_r1(r1, a, bf);
            let d = b::imp_r2(left, right, 0, a, bf);
            let d = b::imp_r1(d, bf, a);
            let _ = &ba;
            b::or_r(d, 0, &ab, &ba)
        }
        ForallInst { x, body, witness } => {
            let forall = Formula::Forall(x.clone(), Box::new(body.clone()));
            let inst = instantiate(x, body, witness);
            let d = ident(&inst, &[empty()], std::slice::from_ref(&forall), &[], &[]);
            let d = b::forall_l(d, 1, x, body, witness);
            b::imp_r1(d, &forall, &inst)
        }
        ExistsIntro { x, body, witness } => {
            let exists = Formula::Exists(x.clone(), Box::new(body.clone()));
            let inst = instantiate(x, body, witness);
            let d = ident(&inst, &[empty()], &[], &[], &[]);
            let d = b::exists_r(d, 1, x, body, witness);
            b::imp_r1(d, &inst, &exists)
        }
        ForallImpShift { x, b: bf, body } => {
            check_not_free(x, bf)?;
            let inner_imp = crate::syntax::implies(bf.clone(), body.clone());
            let phi = Formula::Forall(x.clone(), Box::new(inner_imp.clone()));
            let forall_a = Formula::Forall(x.clone(), Box::new(body.clone()));
            let mut avoid = phi.params();
            avoid.extend(bf.params());
            let y = fresh_param(&avoid);
            let inst_a = instantiate(x, body, &y);
            let inst_imp = crate::syntax::implies(bf.clone(), inst_a.clone());
            let g3 = [
                empty(),
                Component::new(Multiset::singleton(phi.clone()), Multiset::new()),
                Component::new(
                    Multiset::from_vec(vec![bf.clone(), phi.clone()]),
                    Multiset::new(),
                ),
            ];
            let p1 = ident(&inst_a, &g3, std::slice::from_ref(&phi), &[], &[]);
            let p2base = ident(bf, &g3, &[phi.clone(), inst_imp.clone()], std::slice::from_ref(&inst_a), &[]);
            let p2 = b::lift(p2base, 2, bf);
            let d = b::imp_l(p1, p2, 3, bf, &inst_a);
            let d = b::forall_l(d, 3, x, &inner_imp, &y);
            let d = b::lift(d, 2, &phi);
            let d = b::lift(d, 1, &phi);
            let d = b::forall_r1(d, x, body, &y);
            let d = b::imp_r1(d, bf, &forall_a);
            b::imp_r1(d, &phi, &crate::syntax::implies(bf.clone(), forall_a))
        }
        ExistsImpShift { x, body, b: bf } => {
            check_not_free(x, bf)?;
            let inner_imp = crate::syntax::implies(body.clone(), bf.clone());
            let phi = Formula::Forall(x.clone(), Box::new(inner_imp.clone()));
            let exists_a = Formula::Exists(x.clone(), Box::new(body.clone()));
            let mut avoid = phi.params();
            avoid.extend(bf.params());
            let y = fresh_param(&avoid);
            let inst_a = instantiate(x, body, &y);
            let inst_imp = crate::syntax::implies(inst_a.clone(), bf.clone());
            let g2 = [empty(), Component::new(Multiset::singleton(phi.clone()), Multiset::new())];
            let p1 = ident(bf, &g2, &[inst_a.clone(), phi.clone()], &[], &[]);
            let p2 = ident(&inst_a, &g2, &[phi.clone(), inst_imp.clone()], std::slice::from_ref(bf), &[]);
            let d = b::imp_l(p1, p2, 2, &inst_a, bf);
            let d = b::forall_l(d, 2, x, &inner_imp, &y);
            let d = b::lift(d, 1, &phi);
            let d = b::exists_l(d, 2, x, body, &y);
            let d = b::imp_r1(d, &exists_a, bf);
            b::imp_r1(d, &phi, &crate::syntax::implies(exists_a, bf.clone()))
        }
        ForallOrShift { x, body, b: bf } => {
            check_not_free(x, bf)?;
            let inner_or = crate::syntax::or(body.clone(), bf.clone());
            let phi = Formula::Forall(x.clone(), Box::new(inner_or.clone()));
            let forall_a = Formula::Forall(x.clone(), Box::new(body.clone()));
            let mut avoid = phi.params();
            avoid.extend(bf.params());
            let y = fresh_param(&avoid);
            let inst_a = instantiate(x, body, &y);
            let pa0 = ident(
                &inst_a,
                &[
                    empty(),
                    Component::new(
                        Multiset::from_vec(vec![inst_a.clone(), phi.clone()]),
                        Multiset::singleton(bf.clone()),
                    ),
                ],
                &[],
                &[],
                &[],
            );
            let pa = b::lift(pa0, 1, &inst_a);
            let pb = ident(
                bf,
                &[empty()],
                std::slice::from_ref(&phi),
                &[],
                &[Component::new(Multiset::new(), Multiset::singleton(inst_a.clone()))],
            );
            let d = b::or_l(pa, pb, 1, &inst_a, bf);
            let d = b::forall_l(d, 1, x, &inner_or, &y);
            let d = b::forall_r1(d, x, body, &y);
            let d = b::or_r(d, 1, &forall_a, bf);
            b::imp_r1(d, &phi, &crate::syntax::or(forall_a, bf.clone()))
        }
    };
    debug_assert_eq!(d.conclusion, Sequent::goal(inst.formula()));
    debug_assert!(crate::calculus::check_derivation(&d, crate::calculus::Mode::Official).is_ok());
    Ok(d)
}

fn check_not_free(x: &str, f: &Formula) -> Result<(), ProverError> {
    if f.free_vars().contains(x) {
        Err(ProverError::Schema(format!("variable {x} must not occur free in `{f}`")))
    } else {
        Ok(())
    }
}

pub use crate::transform::{simulate_gen, simulate_mp};
