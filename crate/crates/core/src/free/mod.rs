//! The free associative conformal algebra F_N(B) and its rewriting theory.
//!
//! Normal words are right-normed: `D^s (a_1 o_{n_1} (a_2 o_{n_2} (... a_{k+1})))`
//! with `0 <= n_i < N`.

pub mod families;
pub mod model;
pub mod relations;
pub mod rewrite;

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::scalar::{int, Scalar};
use crate::symbol::GeneratorSymbol;

pub use families::{
    classify_s2, enumerate_s1_words, enumerate_s2_words, S2Family, S2Shape,
};
pub use model::{
    embed, embed_polynomial, free_nproduct, poly_nproduct, to_normal, FreeElement, FreeKey,
};
pub use relations::{
    derived_relations, initial_relations, s2_rules, vanishing_relations, vanishing_rules,
    NamedPolynomial,
};
pub use rewrite::{composition_intersection, is_reduced, reduce, RewriteRule, RuleSet};

/// Explicit total order on the alphabet, smallest first.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GeneratorOrder {
    list: Vec<GeneratorSymbol>,
    position: BTreeMap<GeneratorSymbol, usize>,
}

impl GeneratorOrder {
    pub fn from_list(list: Vec<GeneratorSymbol>) -> Self {
        let position = list.iter().enumerate().map(|(i, g)| (*g, i)).collect();
        GeneratorOrder { list, position }
    }

    /// `v < xi_1 < ... < xi_n < del_1 < ... < del_n`
    pub fn s1(n: usize) -> Self {
        Self::from_list(crate::symbol::generators(n))
    }

    /// `del_1 < ... < del_n < xi_1 < ... < xi_n < v`
    pub fn s2(n: usize) -> Self {
        let mut list: Vec<GeneratorSymbol> = (1..=n).map(GeneratorSymbol::Del).collect();
        list.extend((1..=n).map(GeneratorSymbol::Xi));
        list.push(GeneratorSymbol::V);
        Self::from_list(list)
    }

    pub fn list(&self) -> &[GeneratorSymbol] {
        &self.list
    }

    /// Position of a letter; letters outside the alphabet sort last.
    pub fn rank(&self, g: GeneratorSymbol) -> usize {
        self.position.get(&g).copied().unwrap_or(usize::MAX)
    }

    pub fn cmp_letters(&self, a: GeneratorSymbol, b: GeneratorSymbol) -> Ordering {
        self.rank(a).cmp(&self.rank(b))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct NormalWord {
    pub s: u32,
    pub letters: Vec<GeneratorSymbol>,
    pub indices: Vec<u32>,
}

impl NormalWord {
    pub fn new(s: u32, letters: Vec<GeneratorSymbol>, indices: Vec<u32>) -> Self {
        assert!(!letters.is_empty(), "a word needs at least one letter");
        assert_eq!(letters.len(), indices.len() + 1, "k+1 letters need k indices");
        NormalWord { s, letters, indices }
    }

    pub fn letter(g: GeneratorSymbol) -> Self {
        NormalWord::new(0, vec![g], vec![])
    }

    /// Right-normed chain `a_1 o_{n_1} (a_2 o ... a_{k+1})` from (letter, index) pairs.
    pub fn chain(parts: &[(GeneratorSymbol, u32)], last: GeneratorSymbol) -> Self {
        let mut letters: Vec<GeneratorSymbol> = parts.iter().map(|p| p.0).collect();
        letters.push(last);
        NormalWord::new(0, letters, parts.iter().map(|p| p.1).collect())
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn with_d(&self, s: u32) -> Self {
        NormalWord {
            s: self.s + s,
            ..self.clone()
        }
    }

    /// `a o_n self` as a word (no D allowed on self).
    pub fn prepend(&self, a: GeneratorSymbol, n: u32) -> Self {
        debug_assert_eq!(self.s, 0);
        let mut letters = vec![a];
        letters.extend_from_slice(&self.letters);
        let mut indices = vec![n];
        indices.extend_from_slice(&self.indices);
        NormalWord::new(0, letters, indices)
    }

    /// Suffix starting at letter `start`, D-free.
    pub fn suffix(&self, start: usize) -> Self {
        NormalWord::new(0, self.letters[start..].to_vec(), self.indices[start..].to_vec())
    }

    pub fn check_bound(&self, bound: u32) -> Result<()> {
        for &n in &self.indices {
            if n >= bound {
                return Err(Error::IndexTooLarge { index: n, bound });
            }
        }
        Ok(())
    }
}

impl fmt::Display for NormalWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", crate::syntax::print_word(self))
    }
}

/// Weight comparison: length first, then `(n_1, a_1, ..., n_k, a_k, a_{k+1}, s)`
/// lexicographically with letters ranked by `ord`.
pub fn compare(w1: &NormalWord, w2: &NormalWord, ord: &GeneratorOrder) -> Ordering {
    w1.indices
        .len()
        .cmp(&w2.indices.len())
        .then_with(|| {
            for i in 0..w1.indices.len() {
                let c = w1.indices[i]
                    .cmp(&w2.indices[i])
                    .then_with(|| ord.cmp_letters(w1.letters[i], w2.letters[i]));
                if c != Ordering::Equal {
                    return c;
                }
            }
            Ordering::Equal
        })
        .then_with(|| ord.cmp_letters(*w1.letters.last().unwrap(), *w2.letters.last().unwrap()))
        .then_with(|| w1.s.cmp(&w2.s))
        // letters outside the order share a rank; fall back to structure
        .then_with(|| w1.cmp(w2))
}

/// Sparse combination of normal words.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct ConformalPolynomial {
    terms: BTreeMap<NormalWord, Scalar>,
}

impl ConformalPolynomial {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn word(w: NormalWord) -> Self {
        Self::term(w, int(1))
    }

    pub fn term(w: NormalWord, c: Scalar) -> Self {
        let mut p = Self::zero();
        p.add_term(w, c);
        p
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (NormalWord, Scalar)>) -> Self {
        let mut p = Self::zero();
        for (w, c) in terms {
            p.add_term(w, c);
        }
        p
    }

    pub fn terms(&self) -> &BTreeMap<NormalWord, Scalar> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Number of terms; `is_zero` is the emptiness test.
    #[allow(clippy::len_without_is_empty)]
    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn coeff(&self, w: &NormalWord) -> Scalar {
        self.terms.get(w).cloned().unwrap_or_else(Scalar::zero)
    }

    pub fn add_term(&mut self, w: NormalWord, c: Scalar) {
        if c.is_zero() {
            return;
        }
        let e = self.terms.entry(w.clone()).or_insert_with(Scalar::zero);
        *e += c;
        if e.is_zero() {
            self.terms.remove(&w);
        }
    }

    pub fn add_scaled(&mut self, other: &ConformalPolynomial, c: &Scalar) {
        if c.is_zero() {
            return;
        }
        for (w, x) in &other.terms {
            self.add_term(w.clone(), x * c);
        }
    }

    pub fn add(&self, other: &ConformalPolynomial) -> Self {
        let mut out = self.clone();
        out.add_scaled(other, &int(1));
        out
    }

    pub fn sub(&self, other: &ConformalPolynomial) -> Self {
        let mut out = self.clone();
        out.add_scaled(other, &int(-1));
        out
    }

    pub fn scale(&self, c: &Scalar) -> Self {
        let mut out = Self::zero();
        out.add_scaled(self, c);
        out
    }

    pub fn apply_d(&self, s: u32) -> Self {
        Self::from_terms(self.terms.iter().map(|(w, c)| (w.with_d(s), c.clone())))
    }

    /// Greatest word under the weight order with its coefficient.
    pub fn leading(&self, ord: &GeneratorOrder) -> Option<(&NormalWord, &Scalar)> {
        self.terms.iter().max_by(|a, b| compare(a.0, b.0, ord))
    }

    pub fn is_d_free(&self) -> bool {
        self.terms.keys().all(|w| w.s == 0)
    }
}

impl fmt::Display for ConformalPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", crate::syntax::print_polynomial(self))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use GeneratorSymbol::{Del, Xi, V};

    #[test]
    fn compare_examples() {
        let ord = GeneratorOrder::s2(1);
        let a = NormalWord::new(0, vec![V, V], vec![0]);
        let b = NormalWord::new(1, vec![V, V], vec![1]);
        assert_eq!(compare(&a, &b, &ord), Ordering::Less);
        assert_eq!(compare(&a, &a, &ord), Ordering::Equal);
        let one = NormalWord::letter(V);
        let two = NormalWord::new(0, vec![Del(1), Del(1)], vec![0]);
        assert_eq!(compare(&one, &two, &ord), Ordering::Less);
    }

    #[test]
    fn s2_order_makes_xi_del_leading() {
        let ord = GeneratorOrder::s2(1);
        let xd = NormalWord::new(0, vec![Xi(1), Del(1)], vec![0]);
        let dx = NormalWord::new(0, vec![Del(1), Xi(1)], vec![0]);
        assert_eq!(compare(&xd, &dx, &ord), Ordering::Greater);
        let s1 = GeneratorOrder::s1(1);
        assert_eq!(compare(&xd, &dx, &s1), Ordering::Less);
    }
}
