//! Components, linear nested sequents, the formula interpretation, and splice.

use std::collections::BTreeSet;
use std::fmt;

use crate::syntax::{
    self, implies, or, Formula, Name, Signature, SyntaxError,
};

/// A multiset of formulas, kept sorted by printed form so that equality,
/// printing, and the interpretation are all order-insensitive and canonical.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Default)]
pub struct Multiset {
    items: Vec<Formula>,
}

impl Multiset {
    pub fn new() -> Self {
        Multiset::default()
    }

    pub fn from_vec(mut items: Vec<Formula>) -> Self {
        items.sort_by_cached_key(|f| f.to_string());
        Multiset { items }
    }

    pub fn singleton(f: Formula) -> Self {
        Multiset { items: vec![f] }
    }

    pub fn is_empty(&self) -> bool {
        self.items.is_empty()
    }

    pub fn len(&self) -> usize {
        self.items.len()
    }

    pub fn iter(&self) -> impl Iterator<Item = &Formula> {
        self.items.iter()
    }

    pub fn contains(&self, f: &Formula) -> bool {
        self.items.contains(f)
    }

    pub fn count(&self, f: &Formula) -> usize {
        self.items.iter().filter(|g| *g == f).count()
    }

    pub fn insert(&self, f: Formula) -> Multiset {
        let mut items = self.items.clone();
        items.push(f);
        Multiset::from_vec(items)
    }

    pub fn insert_many(&self, fs: &[Formula]) -> Multiset {
        let mut items = self.items.clone();
        items.extend_from_slice(fs);
        Multiset::from_vec(items)
    }

    /// Remove one occurrence; `None` if absent.
    pub fn remove_one(&self, f: &Formula) -> Option<Multiset> {
        let idx = self.items.iter().position(|g| g == f)?;
        let mut items = self.items.clone();
        items.remove(idx);
        Some(Multiset { items })
    }

    /// Remove `n` occurrences; `None` if fewer are present.
    pub fn remove_n(&self, f: &Formula, n: usize) -> Option<Multiset> {
        if self.count(f) < n {
            return None;
        }
        let mut remaining = n;
        let items = self
            .items
            .iter()
            .filter(|g| {
                if remaining > 0 && **g == *f {
                    remaining -= 1;
                    false
                } else {
                    true
                }
            })
            .cloned()
            .collect();
        Some(Multiset { items })
    }

    pub fn union(&self, other: &Multiset) -> Multiset {
        let mut items = self.items.clone();
        items.extend(other.items.iter().cloned());
        Multiset::from_vec(items)
    }

    /// True when every formula occurs in `other` at least as often.
    pub fn subseteq(&self, other: &Multiset) -> bool {
        let mut pool = other.items.clone();
        for f in &self.items {
            match pool.iter().position(|g| g == f) {
                Some(i) => {
                    pool.remove(i);
                }
                None => return false,
            }
        }
        true
    }

    pub fn map(&self, f: impl Fn(&Formula) -> Formula) -> Multiset {
        Multiset::from_vec(self.items.iter().map(f).collect())
    }

    pub fn params(&self) -> BTreeSet<Name> {
        let mut out = BTreeSet::new();
        for f in &self.items {
            out.extend(f.params());
        }
        out
    }

    pub fn to_vec(&self) -> Vec<Formula> {
        self.items.clone()
    }
}

impl FromIterator<Formula> for Multiset {
    fn from_iter<T: IntoIterator<Item = Formula>>(iter: T) -> Self {
        Multiset::from_vec(iter.into_iter().collect())
    }
}

/// One `Γ ⊢ Δ` slot of a linear nested sequent.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Default)]
pub struct Component {
    pub ant: Multiset,
    pub cons: Multiset,
}

impl Component {
    pub fn new(ant: Multiset, cons: Multiset) -> Self {
        Component { ant, cons }
    }

    pub fn empty() -> Self {
        Component::default()
    }

    pub fn is_empty(&self) -> bool {
        self.ant.is_empty() && self.cons.is_empty()
    }

    pub fn union(&self, other: &Component) -> Component {
        Component { ant: self.ant.union(&other.ant), cons: self.cons.union(&other.cons) }
    }

    pub fn params(&self) -> BTreeSet<Name> {
        let mut out = self.ant.params();
        out.extend(self.cons.params());
        out
    }
}

/// A linear nested sequent `Γ₁ ⊢ Δ₁ // ⋯ // Γₙ ⊢ Δₙ`, n ≥ 1.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Sequent {
    components: Vec<Component>,
}

impl Sequent {
    pub fn new(components: Vec<Component>) -> Self {
        assert!(!components.is_empty(), "a sequent has at least one component");
        Sequent { components }
    }

    pub fn single(ant: Multiset, cons: Multiset) -> Self {
        Sequent { components: vec![Component::new(ant, cons)] }
    }

    /// `⊢ f` as a one-component sequent.
    pub fn goal(f: Formula) -> Self {
        Sequent::single(Multiset::new(), Multiset::singleton(f))
    }

    pub fn len(&self) -> usize {
        self.components.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn components(&self) -> &[Component] {
        &self.components
    }

    pub fn component(&self, i: usize) -> &Component {
        &self.components[i]
    }

    pub fn last(&self) -> &Component {
        self.components.last().unwrap()
    }

    pub fn with_component(&self, i: usize, c: Component) -> Sequent {
        let mut components = self.components.clone();
        components[i] = c;
        Sequent { components }
    }

    pub fn insert_component(&self, i: usize, c: Component) -> Sequent {
        let mut components = self.components.clone();
        components.insert(i, c);
        Sequent { components }
    }

    pub fn remove_component(&self, i: usize) -> Sequent {
        assert!(self.components.len() > 1);
        let mut components = self.components.clone();
        components.remove(i);
        Sequent { components }
    }

    pub fn push_component(&self, c: Component) -> Sequent {
        let mut components = self.components.clone();
        components.push(c);
        Sequent { components }
    }

    pub fn slice(&self, range: std::ops::Range<usize>) -> Vec<Component> {
        self.components[range].to_vec()
    }

    pub fn params(&self) -> BTreeSet<Name> {
        let mut out = BTreeSet::new();
        for c in &self.components {
            out.extend(c.params());
        }
        out
    }

    pub fn map_formulas(&self, f: impl Fn(&Formula) -> Formula + Copy) -> Sequent {
        Sequent {
            components: self
                .components
                .iter()
                .map(|c| Component::new(c.ant.map(f), c.cons.map(f)))
                .collect(),
        }
    }

    pub fn rename_param(&self, a: &str, b: &str) -> Sequent {
        self.map_formulas(|f| f.rename_param(a, b))
    }

    /// Componentwise multiset union up to the shorter length, longer tail kept.
    pub fn splice(&self, other: &Sequent) -> Sequent {
        let n = self.len().max(other.len());
        let mut components = Vec::with_capacity(n);
        for i in 0..n {
            let c = match (self.components.get(i), other.components.get(i)) {
                (Some(a), Some(b)) => a.union(b),
                (Some(a), None) => a.clone(),
                (None, Some(b)) => b.clone(),
                (None, None) => unreachable!(),
            };
            components.push(c);
        }
        Sequent { components }
    }

    /// The interpretation: `ι(Γ ⊢ Δ) = ⋀Γ ⊃ ⋁Δ` and
    /// `ι(Γ ⊢ Δ // G) = ⋀Γ ⊃ (⋁Δ ∨ ι(G))`, with the empty conjunction read
    /// as `bot -> bot` and the empty disjunction as `bot`.
    pub fn interpret(&self) -> Formula {
        fn conj(ms: &Multiset) -> Formula {
            let mut it = ms.iter().cloned();
            match it.next() {
                None => implies(Formula::Bottom, Formula::Bottom),
                Some(first) => it.fold(first, syntax::and),
            }
        }
        fn disj(ms: &Multiset) -> Formula {
            let mut it = ms.iter().cloned();
            match it.next() {
                None => Formula::Bottom,
                Some(first) => it.fold(first, syntax::or),
            }
        }
        fn go(components: &[Component]) -> Formula {
            let head = &components[0];
            if components.len() == 1 {
                implies(conj(&head.ant), disj(&head.cons))
            } else {
                implies(conj(&head.ant), or(disj(&head.cons), go(&components[1..])))
            }
        }
        go(&self.components)
    }

    /// The closed formula whose validity defines the sequent's validity.
    pub fn validity_formula(&self) -> Formula {
        self.interpret().universal_closure()
    }
}

impl fmt::Display for Sequent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, c) in self.components.iter().enumerate() {
            if i > 0 {
                f.write_str(" // ")?;
            }
            let ant: Vec<String> = c.ant.iter().map(|g| g.to_string()).collect();
            let cons: Vec<String> = c.cons.iter().map(|g| g.to_string()).collect();
            if ant.is_empty() {
                f.write_str("|-")?;
            } else {
                write!(f, "{} |-", ant.join(", "))?;
            }
            if !cons.is_empty() {
                write!(f, " {}", cons.join(", "))?;
            }
        }
        Ok(())
    }
}

/// Parse `Γ |- Δ // Γ₂ |- Δ₂ // …`, comma-separated formula lists, empty
/// sides written as nothing.
pub fn parse_sequent(text: &str, sig: &mut Signature) -> Result<Sequent, SyntaxError> {
    let mut components = Vec::new();
    for part in split_top(text, "//") {
        let (ant_text, cons_text) = match find_turnstile(part) {
            Some(i) => (&part[..i], &part[i + 2..]),
            None => {
                return Err(SyntaxError::Syntax {
                    position: 0,
                    message: format!("component `{part}` has no |-"),
                })
            }
        };
        let ant = parse_formula_list(ant_text, sig)?;
        let cons = parse_formula_list(cons_text, sig)?;
        components.push(Component::new(ant, cons));
    }
    if components.is_empty() {
        return Err(SyntaxError::Syntax { position: 0, message: "empty sequent".to_string() });
    }
    Ok(Sequent::new(components))
}

fn find_turnstile(s: &str) -> Option<usize> {
    let bytes = s.as_bytes();
    let mut depth = 0i32;
    let mut i = 0;
    while i + 1 < bytes.len() + 1 {
        match bytes.get(i) {
            Some(b'(') => depth += 1,
            Some(b')') => depth -= 1,
            Some(b'|') if depth == 0 && bytes.get(i + 1) == Some(&b'-') => return Some(i),
            _ => {}
        }
        i += 1;
    }
    None
}

fn split_top<'a>(s: &'a str, sep: &str) -> Vec<&'a str> {
    let bytes = s.as_bytes();
    let mut parts = Vec::new();
    let mut depth = 0i32;
    let mut start = 0;
    let mut i = 0;
    while i < bytes.len() {
        match bytes[i] {
            b'(' => depth += 1,
            b')' => depth -= 1,
            _ => {}
        }
        if depth == 0 && s[i..].starts_with(sep) {
            parts.push(&s[start..i]);
            i += sep.len();
            start = i;
            continue;
        }
        i += 1;
    }
    parts.push(&s[start..]);
    parts
}

fn parse_formula_list(text: &str, sig: &mut Signature) -> Result<Multiset, SyntaxError> {
    let mut out = Vec::new();
    if text.trim().is_empty() {
        return Ok(Multiset::new());
    }
    let mut pos = 0usize;
    loop {
        let (f, next) = crate::syntax::parse_formula_partial(text, pos, sig)?;
        out.push(f);
        pos = next;
        let rest = text[pos..].trim_start();
        if rest.is_empty() {
            break;
        }
        if let Some(stripped) = rest.strip_prefix(',') {
            pos = text.len() - stripped.len();
        } else {
            return Err(SyntaxError::Syntax {
                position: pos,
                message: "expected `,` between formulas".to_string(),
            });
        }
    }
    Ok(Multiset::from_vec(out))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::syntax::{atom, atom1, param};

    fn seq(text: &str) -> Sequent {
        let mut sig = Signature::new();
        parse_sequent(text, &mut sig).unwrap()
    }

    #[test]
    fn parse_and_print_roundtrip() {
        for s in ["p |- q", "|- p", "p |-", "|-", "p, q |- r // s |- t", "|- // |- p"] {
            let g = seq(s);
            let printed = g.to_string();
            let reparsed = seq(&printed);
            assert_eq!(g, reparsed, "{s} -> {printed}");
        }
    }

    #[test]
    fn multiset_equality_is_order_insensitive() {
        assert_eq!(seq("p, q |- r"), seq("q, p |- r"));
    }

    #[test]
    fn interpret_single_component() {
        assert_eq!(seq("p |- q").interpret(), implies(atom("p"), atom("q")));
    }

    #[test]
    fn interpret_two_components() {
        // p ⊢ q // r ⊢ s  →  p ⊃ (q ∨ (r ⊃ s))
        let f = seq("p |- q // r |- s").interpret();
        assert_eq!(f, implies(atom("p"), or(atom("q"), implies(atom("r"), atom("s")))));
    }

    #[test]
    fn interpret_empty_sequent() {
        // ⊢ → (bot -> bot) -> bot
        let f = seq("|-").interpret();
        assert_eq!(
            f,
            implies(implies(Formula::Bottom, Formula::Bottom), Formula::Bottom)
        );
    }

    #[test]
    fn interpret_is_canonical_under_reordering() {
        let a = seq("p, q, r |- s, t").interpret();
        let b = seq("r, p, q |- t, s").interpret();
        assert_eq!(a, b);
    }

    #[test]
    fn validity_formula_examples() {
        let g = Sequent::single(
            Multiset::singleton(atom1("p", param("a"))),
            Multiset::singleton(atom1("p", param("a"))),
        );
        let f = g.validity_formula();
        assert_eq!(f.to_string(), "forall x0. p(x0) -> p(x0)");

        assert_eq!(
            seq("|- p").validity_formula().to_string(),
            "(bot -> bot) -> p"
        );

        assert_eq!(
            seq("p |- // |- p").validity_formula().to_string(),
            "p -> bot | ((bot -> bot) -> p)"
        );
    }

    #[test]
    fn splice_examples() {
        // (p⊢q) ⊕ (r⊢s) = p,r ⊢ q,s
        assert_eq!(seq("p |- q").splice(&seq("r |- s")), seq("p, r |- q, s"));
        // longer tail appended
        assert_eq!(
            seq("p |- q // a |- b").splice(&seq("r |- s")),
            seq("p, r |- q, s // a |- b")
        );
        assert_eq!(seq("|-").splice(&seq("|-")), seq("|-"));
    }

    #[test]
    fn splice_length_is_max() {
        let g = seq("p |- q // r |-");
        let h = seq("|- s");
        assert_eq!(g.splice(&h).len(), g.len().max(h.len()));
    }

    #[test]
    fn splice_associative_and_unit() {
        let a = seq("p |- q // r |- s");
        let b = seq("t |- // |- u");
        let c = seq("|- v");
        assert_eq!(a.splice(&b).splice(&c), a.splice(&b.splice(&c)));
        let unit = seq("|- // |-");
        assert_eq!(a.splice(&unit), a);
    }
}
