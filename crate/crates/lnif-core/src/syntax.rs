//! Terms, formulas, parsing, printing, substitution, and complexity measures.
//!
//! Bound variables and parameters live in disjoint namespaces: a `Term::Var`
//! can only occur under a quantifier binding it, while `Term::Param` stands
//! for the free-variable surrogates that sequents and models work with.
//! Parameters print as `#name`, bound variables as bare identifiers.

use std::collections::BTreeSet;
use std::fmt;

use thiserror::Error;

/// Identifier for predicates, variables, and parameters.
pub type Name = String;

#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub enum Term {
    Var(Name),
    Param(Name),
}

impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Term::Var(x) => write!(f, "{x}"),
            Term::Param(a) => write!(f, "#{a}"),
        }
    }
}

/// Predicate arities. Every atom in a checked formula must agree with it.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Signature {
    arities: std::collections::BTreeMap<Name, usize>,
}

impl Signature {
    pub fn new() -> Self {
        Signature::default()
    }

    pub fn with(mut self, pred: &str, arity: usize) -> Self {
        self.arities.insert(pred.to_string(), arity);
        self
    }

    pub fn declare(&mut self, pred: &str, arity: usize) {
        self.arities.insert(pred.to_string(), arity);
    }

    pub fn arity(&self, pred: &str) -> Option<usize> {
        self.arities.get(pred).copied()
    }
}

#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub enum Formula {
    Atom(Name, Vec<Term>),
    Bottom,
    And(Box<Formula>, Box<Formula>),
    Or(Box<Formula>, Box<Formula>),
    Implies(Box<Formula>, Box<Formula>),
    Forall(Name, Box<Formula>),
    Exists(Name, Box<Formula>),
}

#[derive(Error, Debug, PartialEq, Eq)]
pub enum SyntaxError {
    #[error("syntax error at byte {position}: {message}")]
    Syntax { position: usize, message: String },
    #[error("arity mismatch for predicate {pred}: declared {declared}, used with {used}")]
    Arity { pred: Name, declared: usize, used: usize },
    #[error("unbound variable {0}")]
    UnboundVariable(Name),
    #[error("substituting {var} for {target} would capture it under a quantifier")]
    Capture { var: Name, target: Name },
}

pub fn atom(pred: &str) -> Formula {
    Formula::Atom(pred.to_string(), vec![])
}

pub fn atom1(pred: &str, t: Term) -> Formula {
    Formula::Atom(pred.to_string(), vec![t])
}

pub fn param(name: &str) -> Term {
    Term::Param(name.to_string())
}

pub fn var(name: &str) -> Term {
    Term::Var(name.to_string())
}

pub fn and(a: Formula, b: Formula) -> Formula {
    Formula::And(Box::new(a), Box::new(b))
}

pub fn or(a: Formula, b: Formula) -> Formula {
    Formula::Or(Box::new(a), Box::new(b))
}

pub fn implies(a: Formula, b: Formula) -> Formula {
    Formula::Implies(Box::new(a), Box::new(b))
}

pub fn neg(a: Formula) -> Formula {
    implies(a, Formula::Bottom)
}

pub fn forall(x: &str, body: Formula) -> Formula {
    Formula::Forall(x.to_string(), Box::new(body))
}

pub fn exists(x: &str, body: Formula) -> Formula {
    Formula::Exists(x.to_string(), Box::new(body))
}

impl Formula {
    /// Number of connective and quantifier nodes. `Bottom` counts 0.
    pub fn complexity(&self) -> usize {
        match self {
            Formula::Atom(..) | Formula::Bottom => 0,
            Formula::And(a, b) | Formula::Or(a, b) | Formula::Implies(a, b) => {
                1 + a.complexity() + b.complexity()
            }
            Formula::Forall(_, a) | Formula::Exists(_, a) => 1 + a.complexity(),
        }
    }

    /// Free (unbound) variable names.
    pub fn free_vars(&self) -> BTreeSet<Name> {
        fn go(f: &Formula, bound: &mut Vec<Name>, out: &mut BTreeSet<Name>) {
            match f {
                Formula::Atom(_, args) => {
                    for t in args {
                        if let Term::Var(x) = t {
                            if !bound.contains(x) {
                                out.insert(x.clone());
                            }
                        }
                    }
                }
                Formula::Bottom => {}
                Formula::And(a, b) | Formula::Or(a, b) | Formula::Implies(a, b) => {
                    go(a, bound, out);
                    go(b, bound, out);
                }
                Formula::Forall(x, a) | Formula::Exists(x, a) => {
                    bound.push(x.clone());
                    go(a, bound, out);
                    bound.pop();
                }
            }
        }
        let mut out = BTreeSet::new();
        go(self, &mut Vec::new(), &mut out);
        out
    }

    /// True when no variable occurs free; sequents only store such formulas.
    pub fn is_var_closed(&self) -> bool {
        self.free_vars().is_empty()
    }

    /// All parameter names occurring anywhere in the formula.
    pub fn params(&self) -> BTreeSet<Name> {
        fn go(f: &Formula, out: &mut BTreeSet<Name>) {
            match f {
                Formula::Atom(_, args) => {
                    for t in args {
                        if let Term::Param(a) = t {
                            out.insert(a.clone());
                        }
                    }
                }
                Formula::Bottom => {}
                Formula::And(a, b) | Formula::Or(a, b) | Formula::Implies(a, b) => {
                    go(a, out);
                    go(b, out);
                }
                Formula::Forall(_, a) | Formula::Exists(_, a) => go(a, out),
            }
        }
        let mut out = BTreeSet::new();
        go(self, &mut out);
        out
    }

    /// All bound-variable names used by quantifiers in the formula.
    pub fn quantified_vars(&self) -> BTreeSet<Name> {
        fn go(f: &Formula, out: &mut BTreeSet<Name>) {
            match f {
                Formula::Atom(..) | Formula::Bottom => {}
                Formula::And(a, b) | Formula::Or(a, b) | Formula::Implies(a, b) => {
                    go(a, out);
                    go(b, out);
                }
                Formula::Forall(x, a) | Formula::Exists(x, a) => {
                    out.insert(x.clone());
                    go(a, out);
                }
            }
        }
        let mut out = BTreeSet::new();
        go(self, &mut out);
        out
    }

    /// Replace all free occurrences of the variable `x` by the term `t`.
    ///
    /// Substituting a `Var` that would land under a quantifier binding it is
    /// rejected; parameters can never be captured.
    pub fn subst_var(&self, x: &str, t: &Term) -> Result<Formula, SyntaxError> {
        fn go(f: &Formula, x: &str, t: &Term, depth_binders: &mut Vec<Name>) -> Result<Formula, SyntaxError> {
            Ok(match f {
                Formula::Atom(p, args) => Formula::Atom(
                    p.clone(),
                    args.iter()
                        .map(|a| {
                            if let Term::Var(v) = a {
                                if v == x && !depth_binders.contains(v) {
                                    if let Term::Var(y) = t {
                                        if depth_binders.contains(y) {
                                            return Err(SyntaxError::Capture {
                                                var: y.clone(),
                                                target: x.to_string(),
                                            });
                                        }
                                    }
                                    return Ok(t.clone());
                                }
                            }
                            Ok(a.clone())
                        })
                        .collect::<Result<_, _>>()?,
                ),
                Formula::Bottom => Formula::Bottom,
                Formula::And(a, b) => and(go(a, x, t, depth_binders)?, go(b, x, t, depth_binders)?),
                Formula::Or(a, b) => or(go(a, x, t, depth_binders)?, go(b, x, t, depth_binders)?),
                Formula::Implies(a, b) => {
                    implies(go(a, x, t, depth_binders)?, go(b, x, t, depth_binders)?)
                }
                Formula::Forall(y, a) => {
                    if y == x {
                        f.clone()
                    } else {
                        depth_binders.push(y.clone());
                        let r = go(a, x, t, depth_binders);
                        depth_binders.pop();
                        Formula::Forall(y.clone(), Box::new(r?))
                    }
                }
                Formula::Exists(y, a) => {
                    if y == x {
                        f.clone()
                    } else {
                        depth_binders.push(y.clone());
                        let r = go(a, x, t, depth_binders);
                        depth_binders.pop();
                        Formula::Exists(y.clone(), Box::new(r?))
                    }
                }
            })
        }
        go(self, x, t, &mut Vec::new())
    }

    /// Replace every occurrence of parameter `a` by parameter `b`.
    pub fn rename_param(&self, a: &str, b: &str) -> Formula {
        match self {
            Formula::Atom(p, args) => Formula::Atom(
                p.clone(),
                args.iter()
                    .map(|t| match t {
                        Term::Param(n) if n == a => Term::Param(b.to_string()),
                        other => other.clone(),
                    })
                    .collect(),
            ),
            Formula::Bottom => Formula::Bottom,
            Formula::And(l, r) => and(l.rename_param(a, b), r.rename_param(a, b)),
            Formula::Or(l, r) => or(l.rename_param(a, b), r.rename_param(a, b)),
            Formula::Implies(l, r) => implies(l.rename_param(a, b), r.rename_param(a, b)),
            Formula::Forall(x, body) => Formula::Forall(x.clone(), Box::new(body.rename_param(a, b))),
            Formula::Exists(x, body) => Formula::Exists(x.clone(), Box::new(body.rename_param(a, b))),
        }
    }

    /// Replace every occurrence of parameter `a` by the bound variable `x`.
    /// Used by `universal_closure`; the caller guarantees `x` is fresh.
    fn abstract_param(&self, a: &str, x: &str) -> Formula {
        match self {
            Formula::Atom(p, args) => Formula::Atom(
                p.clone(),
                args.iter()
                    .map(|t| match t {
                        Term::Param(n) if n == a => Term::Var(x.to_string()),
                        other => other.clone(),
                    })
                    .collect(),
            ),
            Formula::Bottom => Formula::Bottom,
            Formula::And(l, r) => and(l.abstract_param(a, x), r.abstract_param(a, x)),
            Formula::Or(l, r) => or(l.abstract_param(a, x), r.abstract_param(a, x)),
            Formula::Implies(l, r) => implies(l.abstract_param(a, x), r.abstract_param(a, x)),
            Formula::Forall(y, body) => {
                Formula::Forall(y.clone(), Box::new(body.abstract_param(a, x)))
            }
            Formula::Exists(y, body) => {
                Formula::Exists(y.clone(), Box::new(body.abstract_param(a, x)))
            }
        }
    }

    /// Universally close the formula over its parameters, abstracting them in
    /// first-occurrence order. The result has neither parameters nor free
    /// variables.
    pub fn universal_closure(&self) -> Formula {
        fn occurrence_order(f: &Formula, seen: &mut Vec<Name>) {
            match f {
                Formula::Atom(_, args) => {
                    for t in args {
                        if let Term::Param(a) = t {
                            if !seen.contains(a) {
                                seen.push(a.clone());
                            }
                        }
                    }
                }
                Formula::Bottom => {}
                Formula::And(a, b) | Formula::Or(a, b) | Formula::Implies(a, b) => {
                    occurrence_order(a, seen);
                    occurrence_order(b, seen);
                }
                Formula::Forall(_, a) | Formula::Exists(_, a) => occurrence_order(a, seen),
            }
        }
        let mut order = Vec::new();
        occurrence_order(self, &mut order);
        let used = self.quantified_vars();
        let mut body = self.clone();
        let mut binders = Vec::new();
        let mut idx = 0usize;
        for p in &order {
            let x = loop {
                let cand = format!("x{idx}");
                idx += 1;
                if !used.contains(&cand) {
                    break cand;
                }
            };
            body = body.abstract_param(p, &x);
            binders.push(x);
        }
        for x in binders.into_iter().rev() {
            body = Formula::Forall(x, Box::new(body));
        }
        body
    }

    /// Check arities against a signature.
    pub fn check_arity(&self, sig: &Signature) -> Result<(), SyntaxError> {
        match self {
            Formula::Atom(p, args) => match sig.arity(p) {
                Some(n) if n == args.len() => Ok(()),
                Some(n) => Err(SyntaxError::Arity { pred: p.clone(), declared: n, used: args.len() }),
                None => Ok(()),
            },
            Formula::Bottom => Ok(()),
            Formula::And(a, b) | Formula::Or(a, b) | Formula::Implies(a, b) => {
                a.check_arity(sig)?;
                b.check_arity(sig)
            }
            Formula::Forall(_, a) | Formula::Exists(_, a) => a.check_arity(sig),
        }
    }

    /// Quantifier-free and 0-ary atoms only.
    pub fn is_propositional(&self) -> bool {
        match self {
            Formula::Atom(_, args) => args.is_empty(),
            Formula::Bottom => true,
            Formula::And(a, b) | Formula::Or(a, b) | Formula::Implies(a, b) => {
                a.is_propositional() && b.is_propositional()
            }
            Formula::Forall(..) | Formula::Exists(..) => false,
        }
    }
}

/// Smallest `a<n>` not present in `avoid`.
pub fn fresh_param(avoid: &BTreeSet<Name>) -> Name {
    let mut i = 0usize;
    loop {
        let cand = format!("a{i}");
        if !avoid.contains(&cand) {
            return cand;
        }
        i += 1;
    }
}

// ---------------------------------------------------------------------------
// Printing
// ---------------------------------------------------------------------------

// Precedence levels: 0 = -> and quantifier bodies, 1 = |, 2 = &, 3 = atoms.
fn print_prec(f: &Formula, prec: u8, out: &mut String) {
    match f {
        Formula::Atom(p, args) => {
            out.push_str(p);
            if !args.is_empty() {
                out.push('(');
                for (i, t) in args.iter().enumerate() {
                    if i > 0 {
                        out.push_str(", ");
                    }
                    out.push_str(&t.to_string());
                }
                out.push(')');
            }
        }
        Formula::Bottom => out.push_str("bot"),
        Formula::Implies(a, b) => {
            let parens = prec > 0;
            if parens {
                out.push('(');
            }
            print_prec(a, 1, out);
            out.push_str(" -> ");
            print_prec(b, 0, out);
            if parens {
                out.push(')');
            }
        }
        Formula::Or(a, b) => {
            let parens = prec > 1;
            if parens {
                out.push('(');
            }
            print_prec(a, 1, out);
            out.push_str(" | ");
            print_prec(b, 2, out);
            if parens {
                out.push(')');
            }
        }
        Formula::And(a, b) => {
            let parens = prec > 2;
            if parens {
                out.push('(');
            }
            print_prec(a, 2, out);
            out.push_str(" & ");
            print_prec(b, 3, out);
            if parens {
                out.push(')');
            }
        }
        Formula::Forall(x, a) => {
            let parens = prec > 0;
            if parens {
                out.push('(');
            }
            out.push_str("forall ");
            out.push_str(x);
            out.push_str(". ");
            print_prec(a, 0, out);
            if parens {
                out.push(')');
            }
        }
        Formula::Exists(x, a) => {
            let parens = prec > 0;
            if parens {
                out.push('(');
            }
            out.push_str("exists ");
            out.push_str(x);
            out.push_str(". ");
            print_prec(a, 0, out);
            if parens {
                out.push(')');
            }
        }
    }
}

impl fmt::Display for Formula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut s = String::new();
        print_prec(self, 0, &mut s);
        f.write_str(&s)
    }
}

// ---------------------------------------------------------------------------
// Parsing
// ---------------------------------------------------------------------------

struct Parser<'a> {
    src: &'a str,
    bytes: &'a [u8],
    pos: usize,
}

impl<'a> Parser<'a> {
    fn new(src: &'a str) -> Self {
        Parser { src, bytes: src.as_bytes(), pos: 0 }
    }

    fn err<T>(&self, message: &str) -> Result<T, SyntaxError> {
        Err(SyntaxError::Syntax { position: self.pos, message: message.to_string() })
    }

    fn skip_ws(&mut self) {
        while self.pos < self.bytes.len() && self.bytes[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }


    fn eat(&mut self, lit: &str) -> bool {
        self.skip_ws();
        if self.src[self.pos..].starts_with(lit) {
            self.pos += lit.len();
            true
        } else {
            false
        }
    }

    fn expect(&mut self, lit: &str) -> Result<(), SyntaxError> {
        if self.eat(lit) {
            Ok(())
        } else {
            self.err(&format!("expected `{lit}`"))
        }
    }

    fn ident(&mut self) -> Result<Name, SyntaxError> {
        self.skip_ws();
        let start = self.pos;
        if self.pos < self.bytes.len()
            && (self.bytes[self.pos].is_ascii_alphabetic() || self.bytes[self.pos] == b'_')
        {
            self.pos += 1;
            while self.pos < self.bytes.len()
                && (self.bytes[self.pos].is_ascii_alphanumeric()
                    || self.bytes[self.pos] == b'_'
                    || self.bytes[self.pos] == b'\'')
            {
                self.pos += 1;
            }
            Ok(self.src[start..self.pos].to_string())
        } else {
            self.err("expected identifier")
        }
    }

    fn keyword_ahead(&mut self, kw: &str) -> bool {
        self.skip_ws();
        let rest = &self.src[self.pos..];
        rest.starts_with(kw)
            && !rest[kw.len()..]
                .chars()
                .next()
                .map(|c| c.is_ascii_alphanumeric() || c == '_' || c == '\'')
                .unwrap_or(false)
    }

    fn term(&mut self) -> Result<Term, SyntaxError> {
        if self.eat("#") {
            Ok(Term::Param(self.ident()?))
        } else {
            Ok(Term::Var(self.ident()?))
        }
    }

    // implies := or ('->' implies)?   right-associative
    fn formula(&mut self, bound: &mut Vec<Name>, sig: &mut Signature, strict: bool) -> Result<Formula, SyntaxError> {
        let lhs = self.or_formula(bound, sig, strict)?;
        if self.eat("->") {
            let rhs = self.formula(bound, sig, strict)?;
            Ok(implies(lhs, rhs))
        } else {
            Ok(lhs)
        }
    }

    fn or_formula(&mut self, bound: &mut Vec<Name>, sig: &mut Signature, strict: bool) -> Result<Formula, SyntaxError> {
        let mut lhs = self.and_formula(bound, sig, strict)?;
        loop {
            self.skip_ws();
            // `|` but not `|-`
            if self.src[self.pos..].starts_with('|') && !self.src[self.pos..].starts_with("|-") {
                self.pos += 1;
                let rhs = self.and_formula(bound, sig, strict)?;
                lhs = or(lhs, rhs);
            } else {
                return Ok(lhs);
            }
        }
    }

    fn and_formula(&mut self, bound: &mut Vec<Name>, sig: &mut Signature, strict: bool) -> Result<Formula, SyntaxError> {
        let mut lhs = self.unary(bound, sig, strict)?;
        while self.eat("&") {
            let rhs = self.unary(bound, sig, strict)?;
            lhs = and(lhs, rhs);
        }
        Ok(lhs)
    }

    fn unary(&mut self, bound: &mut Vec<Name>, sig: &mut Signature, strict: bool) -> Result<Formula, SyntaxError> {
        if self.eat("~") {
            let f = self.unary(bound, sig, strict)?;
            return Ok(neg(f));
        }
        if self.keyword_ahead("forall") || self.keyword_ahead("exists") {
            let is_forall = self.keyword_ahead("forall");
            self.eat(if is_forall { "forall" } else { "exists" });
            let x = self.ident()?;
            self.expect(".")?;
            bound.push(x.clone());
            let body = self.formula(bound, sig, strict);
            bound.pop();
            let body = body?;
            return Ok(if is_forall { forall(&x, body) } else { exists(&x, body) });
        }
        if self.keyword_ahead("bot") {
            self.eat("bot");
            return Ok(Formula::Bottom);
        }
        if self.eat("(") {
            let f = self.formula(bound, sig, strict)?;
            self.expect(")")?;
            return Ok(f);
        }
        // atom
        let pred = self.ident()?;
        let mut args = Vec::new();
        if self.eat("(") {
            loop {
                let t = self.term()?;
                if let Term::Var(x) = &t {
                    if !bound.contains(x) {
                        return Err(SyntaxError::UnboundVariable(x.clone()));
                    }
                }
                args.push(t);
                if self.eat(",") {
                    continue;
                }
                self.expect(")")?;
                break;
            }
        }
        match sig.arity(&pred) {
            Some(n) if n != args.len() => {
                return Err(SyntaxError::Arity { pred, declared: n, used: args.len() })
            }
            Some(_) => {}
            None => {
                if strict {
                    return self.err(&format!("predicate `{pred}` not in signature"));
                }
                sig.declare(&pred, args.len());
            }
        }
        Ok(Formula::Atom(pred, args))
    }

    fn finish(&mut self) -> Result<(), SyntaxError> {
        self.skip_ws();
        if self.pos == self.bytes.len() {
            Ok(())
        } else {
            self.err("trailing input")
        }
    }
}

/// Parse against a fixed signature; unknown predicates are rejected.
pub fn parse_formula(text: &str, sig: &Signature) -> Result<Formula, SyntaxError> {
    let mut p = Parser::new(text);
    let mut s = sig.clone();
    let f = p.formula(&mut Vec::new(), &mut s, true)?;
    p.finish()?;
    Ok(f)
}

/// Parse, inferring each predicate's arity from its first occurrence and
/// extending the given signature in place.
pub fn parse_formula_inferring(text: &str, sig: &mut Signature) -> Result<Formula, SyntaxError> {
    let mut p = Parser::new(text);
    let f = p.formula(&mut Vec::new(), sig, false)?;
    p.finish()?;
    Ok(f)
}

/// Internal hook for the sequent parser: parse one formula, stopping at
/// sequent-level delimiters.
pub(crate) fn parse_formula_partial(
    p_src: &str,
    start: usize,
    sig: &mut Signature,
) -> Result<(Formula, usize), SyntaxError> {
    let mut p = Parser::new(p_src);
    p.pos = start;
    let f = p.formula(&mut Vec::new(), sig, false)?;
    Ok((f, p.pos))
}

/// Deterministic generators shared by the randomized test harnesses.
#[cfg(test)]
pub(crate) mod tests_support {
    use super::*;

    pub struct Rng(pub u64);

    impl Rng {
        pub fn next(&mut self) -> u64 {
            let mut x = self.0;
            x ^= x << 13;
            x ^= x >> 7;
            x ^= x << 17;
            self.0 = x;
            x
        }

        pub fn below(&mut self, n: u64) -> u64 {
            self.next() % n
        }
    }

    pub fn random_formula(rng: &mut Rng, depth: usize, scope: &mut Vec<Name>) -> Formula {
        let choice = if depth == 0 { rng.below(2) } else { rng.below(8) };
        match choice {
            0 => {
                let preds = ["p", "q", "r"];
                let p = preds[rng.below(3) as usize];
                let arity = rng.below(3) as usize;
                let args = (0..arity)
                    .map(|_| {
                        if !scope.is_empty() && rng.below(2) == 0 {
                            Term::Var(scope[rng.below(scope.len() as u64) as usize].clone())
                        } else {
                            Term::Param(format!("a{}", rng.below(3)))
                        }
                    })
                    .collect();
                Formula::Atom(format!("{p}{arity}"), args)
            }
            1 => Formula::Bottom,
            2 | 3 => {
                let a = random_formula(rng, depth - 1, scope);
                let b = random_formula(rng, depth - 1, scope);
                if choice == 2 {
                    and(a, b)
                } else {
                    or(a, b)
                }
            }
            4 | 5 => {
                let a = random_formula(rng, depth - 1, scope);
                let b = random_formula(rng, depth - 1, scope);
                implies(a, b)
            }
            _ => {
                let x = format!("x{}", rng.below(3));
                scope.push(x.clone());
                let body = random_formula(rng, depth - 1, scope);
                scope.pop();
                if choice == 6 {
                    forall(&x, body)
                } else {
                    exists(&x, body)
                }
            }
        }
    }

    pub fn random_propositional(rng: &mut Rng, depth: usize) -> Formula {
        let choice = if depth == 0 { rng.below(2) } else { rng.below(6) };
        match choice {
            0 => {
                let preds = ["p", "q"];
                atom(preds[rng.below(2) as usize])
            }
            1 => Formula::Bottom,
            2 => and(
                random_propositional(rng, depth - 1),
                random_propositional(rng, depth - 1),
            ),
            3 => or(
                random_propositional(rng, depth - 1),
                random_propositional(rng, depth - 1),
            ),
            _ => implies(
                random_propositional(rng, depth - 1),
                random_propositional(rng, depth - 1),
            ),
        }
    }
}
