//! The superalgebra A_n generated by xi_1..xi_n and del_1..del_n with
//! xi xi anticommuting, del del anticommuting and del_i xi_j + xi_j del_i = delta_ij.
//!
//! Elements are stored in the canonical basis xi_I del_J (all xi factors first,
//! indices ascending inside each block).

use std::cell::RefCell;
use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::scalar::{int, Scalar};

/// Index set as a bitmask: bit `i - 1` stands for index `i`.
pub type IndexSet = u32;

pub const MAX_RANK: usize = 16;

pub fn set_of(indices: &[usize]) -> IndexSet {
    indices.iter().fold(0, |acc, &i| acc | bit(i))
}

pub fn bit(i: usize) -> IndexSet {
    1 << (i - 1)
}

pub fn members(set: IndexSet) -> Vec<usize> {
    (1..=MAX_RANK).filter(|&i| set & bit(i) != 0).collect()
}

pub fn full_set(n: usize) -> IndexSet {
    if n == 0 {
        0
    } else {
        (1 << n) - 1
    }
}

/// Indices of `set` strictly greater than `i`.
fn count_above(set: IndexSet, i: usize) -> u32 {
    (set >> i).count_ones()
}

/// Indices of `set` strictly smaller than `i`.
fn count_below(set: IndexSet, i: usize) -> u32 {
    (set & (bit(i) - 1)).count_ones()
}

/// Sign of moving xi_i to its sorted place in xi_I: zero if i is already in I,
/// otherwise (-1)^{#{j in I : j < i}}.
pub fn alpha(i: usize, set: IndexSet) -> i64 {
    if set & bit(i) != 0 {
        0
    } else if count_below(set, i).is_multiple_of(2) {
        1
    } else {
        -1
    }
}

/// A generator letter of A_n.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum AnGen {
    Xi(usize),
    Del(usize),
}

impl AnGen {
    pub fn index(self) -> usize {
        match self {
            AnGen::Xi(i) | AnGen::Del(i) => i,
        }
    }
}

/// The basis monomial xi_I del_J.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Monomial {
    pub xi: IndexSet,
    pub del: IndexSet,
}

impl Monomial {
    pub const ONE: Monomial = Monomial { xi: 0, del: 0 };

    pub fn new(xi: IndexSet, del: IndexSet) -> Self {
        Monomial { xi, del }
    }

    pub fn xi(set: IndexSet) -> Self {
        Monomial { xi: set, del: 0 }
    }

    pub fn degree(self) -> u32 {
        self.xi.count_ones() + self.del.count_ones()
    }

    pub fn parity(self) -> u8 {
        (self.degree() % 2) as u8
    }

    pub fn max_index(self) -> usize {
        let all = self.xi | self.del;
        (32 - all.leading_zeros()) as usize
    }

    /// The generator word xi_{i1}..xi_{is} del_{j1}..del_{jq}.
    pub fn letters(self) -> Vec<AnGen> {
        members(self.xi)
            .into_iter()
            .map(AnGen::Xi)
            .chain(members(self.del).into_iter().map(AnGen::Del))
            .collect()
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .letters()
            .into_iter()
            .map(|g| match g {
                AnGen::Xi(i) => format!("xi{i}"),
                AnGen::Del(i) => format!("del{i}"),
            })
            .collect();
        if parts.is_empty() {
            write!(f, "1")
        } else {
            write!(f, "{}", parts.join(" "))
        }
    }
}

/// Right multiplication of a signed monomial by one generator.
fn push_gen(mono: Monomial, coeff: i64, gen: AnGen, out: &mut Vec<(Monomial, i64)>) {
    match gen {
        AnGen::Del(j) => {
            if mono.del & bit(j) != 0 {
                return;
            }
            let s = if count_above(mono.del, j).is_multiple_of(2) { 1 } else { -1 };
            out.push((Monomial::new(mono.xi, mono.del | bit(j)), coeff * s));
        }
        AnGen::Xi(k) => {
            // del_J xi_k = (-1)^{|J|} xi_k del_J + [k in J] (-1)^{#{l in J: l > k}} del_{J - k}
            if mono.del & bit(k) != 0 {
                let s = if count_above(mono.del, k).is_multiple_of(2) { 1 } else { -1 };
                out.push((Monomial::new(mono.xi, mono.del & !bit(k)), coeff * s));
            }
            if mono.xi & bit(k) == 0 {
                let pass = mono.del.count_ones() + count_above(mono.xi, k);
                let s = if pass.is_multiple_of(2) { 1 } else { -1 };
                out.push((Monomial::new(mono.xi | bit(k), mono.del), coeff * s));
            }
        }
    }
}

fn collect(terms: Vec<(Monomial, i64)>) -> Vec<(Monomial, i64)> {
    let mut acc: BTreeMap<Monomial, i64> = BTreeMap::new();
    for (m, c) in terms {
        *acc.entry(m).or_insert(0) += c;
    }
    acc.into_iter().filter(|(_, c)| *c != 0).collect()
}

fn mul_word(start: Vec<(Monomial, i64)>, word: &[AnGen]) -> Vec<(Monomial, i64)> {
    let mut cur = start;
    for &g in word {
        let mut next = Vec::with_capacity(cur.len() * 2);
        for (m, c) in cur {
            push_gen(m, c, g, &mut next);
        }
        cur = collect(next);
    }
    cur
}

thread_local! {
    static PRODUCTS: RefCell<HashMap<(Monomial, Monomial), std::rc::Rc<[(Monomial, i64)]>>> =
        RefCell::new(HashMap::new());
}

/// Structure constants of A_n in the canonical basis (all integers).
pub fn monomial_product(a: Monomial, b: Monomial) -> std::rc::Rc<[(Monomial, i64)]> {
    PRODUCTS.with(|cache| {
        if let Some(hit) = cache.borrow().get(&(a, b)) {
            return hit.clone();
        }
        let terms: std::rc::Rc<[(Monomial, i64)]> = mul_word(vec![(a, 1)], &b.letters()).into();
        cache.borrow_mut().insert((a, b), terms.clone());
        terms
    })
}

/// Element of A_n: sparse combination of canonical monomials.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct AnElement {
    rank: usize,
    terms: BTreeMap<Monomial, Scalar>,
}

impl AnElement {
    pub fn zero(rank: usize) -> Self {
        AnElement {
            rank,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(rank: usize) -> Self {
        Self::monomial(rank, Monomial::ONE, Scalar::one())
    }

    pub fn monomial(rank: usize, mono: Monomial, coeff: Scalar) -> Self {
        let mut e = Self::zero(rank);
        e.add_term(mono, coeff);
        e
    }

    pub fn from_terms(rank: usize, terms: impl IntoIterator<Item = (Monomial, Scalar)>) -> Self {
        let mut e = Self::zero(rank);
        for (m, c) in terms {
            e.add_term(m, c);
        }
        e
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> &BTreeMap<Monomial, Scalar> {
        &self.terms
    }

    pub fn coeff(&self, mono: Monomial) -> Scalar {
        self.terms.get(&mono).cloned().unwrap_or_else(Scalar::zero)
    }

    pub fn add_term(&mut self, mono: Monomial, coeff: Scalar) {
        if coeff.is_zero() {
            return;
        }
        let entry = self.terms.entry(mono).or_insert_with(Scalar::zero);
        *entry += coeff;
        if entry.is_zero() {
            self.terms.remove(&mono);
        }
    }

    pub fn add(&self, other: &AnElement) -> AnElement {
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(*m, c.clone());
        }
        out
    }

    pub fn scale(&self, s: &Scalar) -> AnElement {
        if s.is_zero() {
            return AnElement::zero(self.rank);
        }
        AnElement {
            rank: self.rank,
            terms: self.terms.iter().map(|(m, c)| (*m, c * s)).collect(),
        }
    }

    pub fn neg(&self) -> AnElement {
        self.scale(&int(-1))
    }

    pub fn sub(&self, other: &AnElement) -> AnElement {
        self.add(&other.neg())
    }
}

impl fmt::Display for AnElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(m, c)| format!("{} {}", crate::scalar::render(c), m))
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

fn check_index(i: usize, rank: usize) -> Result<()> {
    if i == 0 || i > rank {
        Err(Error::IndexOutOfRange { index: i, rank })
    } else {
        Ok(())
    }
}

/// Expands a product of generators in the canonical basis.
pub fn normal_order(word: &[AnGen], rank: usize) -> Result<AnElement> {
    for g in word {
        check_index(g.index(), rank)?;
    }
    let terms = mul_word(vec![(Monomial::ONE, 1)], word);
    Ok(AnElement::from_terms(
        rank,
        terms.into_iter().map(|(m, c)| (m, int(c))),
    ))
}

pub fn an_mul(a: &AnElement, b: &AnElement) -> Result<AnElement> {
    if a.rank != b.rank {
        return Err(Error::RankMismatch {
            left: a.rank,
            right: b.rank,
        });
    }
    let mut out = AnElement::zero(a.rank);
    for (ma, ca) in &a.terms {
        for (mb, cb) in &b.terms {
            let cab = ca * cb;
            for (m, c) in monomial_product(*ma, *mb).iter() {
                out.add_term(*m, &cab * int(*c));
            }
        }
    }
    Ok(out)
}

/// Left super-derivative del_i acting on a pure xi element.
pub fn contract(i: usize, a: &AnElement) -> Result<AnElement> {
    check_index(i, a.rank)?;
    let mut out = AnElement::zero(a.rank);
    for (m, c) in &a.terms {
        if m.del != 0 {
            return Err(Error::NotPureGrassmann);
        }
        if m.xi & bit(i) != 0 {
            let rest = m.xi & !bit(i);
            out.add_term(Monomial::xi(rest), c * int(alpha(i, rest)));
        }
    }
    Ok(out)
}

/// Action of A_n on the exterior algebra, basis ordered by subset bitmask
/// (so `1` is first and `xi_1..xi_n` is last). Entry `[row][col]` is the
/// coefficient of basis vector `row` in the image of basis vector `col`.
pub fn lambda_matrix(a: &AnElement) -> Vec<Vec<Scalar>> {
    let dim = 1usize << a.rank;
    let mut mat = vec![vec![Scalar::zero(); dim]; dim];
    for col in 0..dim {
        for (m, c) in &a.terms {
            if let Some((row, s)) = act_on_basis(*m, col as IndexSet) {
                mat[row as usize][col] += c * int(s);
            }
        }
    }
    mat
}

/// xi_I del_J applied to xi_K, by contraction then wedge insertion.
fn act_on_basis(m: Monomial, k: IndexSet) -> Option<(IndexSet, i64)> {
    let mut set = k;
    let mut sign = 1i64;
    // rightmost del acts first
    for j in members(m.del).into_iter().rev() {
        if set & bit(j) == 0 {
            return None;
        }
        set &= !bit(j);
        sign *= alpha(j, set);
    }
    for i in members(m.xi).into_iter().rev() {
        let s = alpha(i, set);
        if s == 0 {
            return None;
        }
        sign *= s;
        set |= bit(i);
    }
    Some((set, sign))
}

/// All 4^n canonical monomials of rank n.
pub fn all_monomials(rank: usize) -> Vec<Monomial> {
    let size = 1u32 << rank;
    let mut out = Vec::with_capacity((size * size) as usize);
    for xi in 0..size {
        for del in 0..size {
            out.push(Monomial::new(xi, del));
        }
    }
    out
}

/// All subsets of {1..n} in bitmask order.
pub fn all_subsets(rank: usize) -> Vec<IndexSet> {
    (0..(1u32 << rank)).collect()
}

pub fn subset_label(set: IndexSet) -> String {
    let m: BTreeSet<usize> = members(set).into_iter().collect();
    let parts: Vec<String> = m.iter().map(|i| i.to_string()).collect();
    format!("{{{}}}", parts.join(","))
}
