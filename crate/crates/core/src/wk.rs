//! W_n and K_n inside the Cend model: the two embeddings, the defining
//! relations of W_n, the g_I generators of K_n and locality tables.

use std::collections::BTreeMap;

use num_traits::One;

use crate::cend::{apply_d, bracket, locality, CendElement};
use crate::error::{Error, Result};
use crate::grassmann::{
    all_subsets, alpha, an_mul, bit, contract, full_set, members, AnElement, IndexSet, Monomial,
};
use crate::scalar::{frac, int, Scalar};
use crate::symbol::{generators, Embedding, EmbeddingKind, GeneratorSymbol};

/// Vanishing families `x_(m) y = 0` are listed for m below this bound. Every
/// phi image has D-degree and v-degree at most 1, so all products of index
/// 5 and higher vanish identically.
pub const RELATION_INDEX_BOUND: u32 = 5;

fn check_subset(set: IndexSet, rank: usize) -> Result<()> {
    if set & !full_set(rank) != 0 {
        let index = members(set).into_iter().find(|&i| i > rank).unwrap_or(0);
        return Err(Error::IndexOutOfRange { index, rank });
    }
    Ok(())
}

pub fn phi(e: Embedding, g: GeneratorSymbol) -> Result<CendElement> {
    g.check_rank(e.rank)?;
    let n = e.rank;
    let v = CendElement::v_power(n, 1);
    let dv = CendElement::term(n, 1, Monomial::ONE, 0, Scalar::one());
    Ok(match (e.kind, g) {
        (EmbeddingKind::Phi1, GeneratorSymbol::V) => v.sub(&dv),
        (EmbeddingKind::Phi2, GeneratorSymbol::V) => v,
        (EmbeddingKind::Phi1, GeneratorSymbol::Xi(i)) => CendElement::from_terms(
            n,
            [
                (crate::cend::CendKey::new(0, Monomial::xi(bit(i)), 1), int(1)),
                (crate::cend::CendKey::new(1, Monomial::xi(bit(i)), 0), int(-1)),
            ],
        ),
        (EmbeddingKind::Phi2, GeneratorSymbol::Xi(i)) => {
            CendElement::term(n, 0, Monomial::xi(bit(i)), 1, Scalar::one())
        }
        (_, GeneratorSymbol::Del(i)) => CendElement::term(n, 0, Monomial::new(0, bit(i)), 0, Scalar::one()),
    })
}

/// Formal expression in a Lie conformal superalgebra over the generators B.
#[derive(Debug, Clone, PartialEq)]
pub enum LieExpr {
    Zero,
    Gen(GeneratorSymbol),
    /// `[a _(n) b]`
    Bracket(Box<LieExpr>, u32, Box<LieExpr>),
    D(Box<LieExpr>),
    Scaled(Scalar, Box<LieExpr>),
    Sum(Vec<LieExpr>),
}

impl LieExpr {
    pub fn gen(g: GeneratorSymbol) -> Self {
        LieExpr::Gen(g)
    }

    pub fn br(a: LieExpr, n: u32, b: LieExpr) -> Self {
        LieExpr::Bracket(Box::new(a), n, Box::new(b))
    }

    pub fn d(a: LieExpr) -> Self {
        LieExpr::D(Box::new(a))
    }

    pub fn scaled(c: Scalar, a: LieExpr) -> Self {
        LieExpr::Scaled(c, Box::new(a))
    }

    /// Value under an embedding, with brackets computed in the adjoint algebra.
    pub fn eval(&self, e: Embedding) -> Result<CendElement> {
        Ok(match self {
            LieExpr::Zero => CendElement::zero(e.rank),
            LieExpr::Gen(g) => phi(e, *g)?,
            LieExpr::Bracket(a, n, b) => bracket(&a.eval(e)?, *n, &b.eval(e)?)?,
            LieExpr::D(a) => apply_d(&a.eval(e)?),
            LieExpr::Scaled(c, a) => a.eval(e)?.scale(c),
            LieExpr::Sum(parts) => {
                let mut acc = CendElement::zero(e.rank);
                for p in parts {
                    acc.add_assign(&p.eval(e)?);
                }
                acc
            }
        })
    }
}

impl std::fmt::Display for LieExpr {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            LieExpr::Zero => write!(f, "0"),
            LieExpr::Gen(g) => write!(f, "{g}"),
            LieExpr::Bracket(a, n, b) => write!(f, "[{a} _{n} {b}]"),
            LieExpr::D(a) => write!(f, "D({a})"),
            LieExpr::Scaled(c, a) => write!(f, "{}*{a}", crate::scalar::render(c)),
            LieExpr::Sum(parts) => {
                let s: Vec<String> = parts.iter().map(|p| p.to_string()).collect();
                write!(f, "({})", s.join(" + "))
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Relation {
    pub lhs: LieExpr,
    pub rhs: LieExpr,
}

impl Relation {
    pub fn new(lhs: LieExpr, rhs: LieExpr) -> Self {
        Relation { lhs, rhs }
    }

    /// `lhs - rhs` under the embedding.
    pub fn residual(&self, e: Embedding) -> Result<CendElement> {
        Ok(self.lhs.eval(e)?.sub(&self.rhs.eval(e)?))
    }
}

impl std::fmt::Display for Relation {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{} = {}", self.lhs, self.rhs)
    }
}

/// Defining relations of W_n on B, with the infinite vanishing families cut
/// at [`RELATION_INDEX_BOUND`].
pub fn defining_relations(n: usize) -> Vec<Relation> {
    use GeneratorSymbol::{Del, Xi, V};
    let g = LieExpr::gen;
    let br = |a: GeneratorSymbol, m: u32, b: GeneratorSymbol| LieExpr::br(g(a), m, g(b));
    let zero = || LieExpr::Zero;
    let mut out = Vec::new();

    out.push(Relation::new(br(V, 0, V), LieExpr::d(g(V))));
    out.push(Relation::new(br(V, 1, V), LieExpr::scaled(int(2), g(V))));
    for m in 2..RELATION_INDEX_BOUND {
        out.push(Relation::new(br(V, m, V), zero()));
    }

    for i in 1..=n {
        out.push(Relation::new(br(V, 0, Xi(i)), LieExpr::d(g(Xi(i)))));
        out.push(Relation::new(br(Xi(i), 0, V), LieExpr::d(g(Xi(i)))));
        out.push(Relation::new(br(Xi(i), 1, V), LieExpr::scaled(int(2), g(Xi(i)))));
        out.push(Relation::new(br(Del(i), 0, V), zero()));
        out.push(Relation::new(br(Del(i), 1, V), g(Del(i))));
        for m in 2..RELATION_INDEX_BOUND {
            out.push(Relation::new(br(V, m, Xi(i)), zero()));
            out.push(Relation::new(br(V, m, Del(i)), zero()));
        }
        for j in 1..=n {
            out.push(Relation::new(
                br(Xi(i), 0, Xi(j)),
                LieExpr::scaled(int(-1), br(Xi(j), 0, Xi(i))),
            ));
            out.push(Relation::new(
                br(Xi(i), 0, Xi(j)),
                LieExpr::scaled(frac(1, 2), LieExpr::d(br(Xi(i), 1, Xi(j)))),
            ));
            let rhs = if i == j { g(V) } else { zero() };
            out.push(Relation::new(br(Del(j), 0, Xi(i)), rhs));
            for m in 0..RELATION_INDEX_BOUND {
                out.push(Relation::new(br(Del(i), m, Del(j)), zero()));
            }
            for m in 2..RELATION_INDEX_BOUND {
                out.push(Relation::new(br(Xi(i), m, Xi(j)), zero()));
                out.push(Relation::new(br(Xi(i), m, Del(j)), zero()));
            }
        }
    }
    out
}

fn xi_chain(e: Embedding, set: IndexSet) -> Result<CendElement> {
    let idx = members(set);
    let mut acc = phi(e, GeneratorSymbol::Xi(*idx.last().unwrap()))?;
    for &i in idx.iter().rev().skip(1) {
        acc = bracket(&phi(e, GeneratorSymbol::Xi(i))?, 1, &acc)?;
    }
    Ok(acc)
}

/// Image of `xi_I` or `xi_I del_j` under the identification of the exterior
/// algebra part with W_n: `2^{1-r} xi_i1 _(1) (... _(1) xi_ir)` and
/// `2^{1-r} (...) _(1) del_j`. An empty `set` with `j` present is `del_j`.
pub fn named_element(e: Embedding, set: IndexSet, j: Option<usize>) -> Result<CendElement> {
    check_subset(set, e.rank)?;
    if let Some(j) = j {
        GeneratorSymbol::Del(j).check_rank(e.rank)?;
    }
    let r = set.count_ones() as i32;
    match (r, j) {
        (0, None) => Err(Error::EmptySubset),
        (0, Some(j)) => phi(e, GeneratorSymbol::Del(j)),
        (_, j) => {
            let mut acc = xi_chain(e, set)?;
            if let Some(j) = j {
                acc = bracket(&acc, 1, &phi(e, GeneratorSymbol::Del(j))?)?;
            }
            let scale = Scalar::new(1.into(), num_bigint::BigInt::from(1) << (r - 1) as usize);
            Ok(acc.scale(&scale))
        }
    }
}

/// `xi_I` with the convention `xi_empty = v`.
fn named_xi(e: Embedding, set: IndexSet) -> Result<CendElement> {
    if set == 0 {
        phi(e, GeneratorSymbol::V)
    } else {
        named_element(e, set, None)
    }
}

/// `g_I = (2-|I|) xi_I + (-1)^|I| sum_i (D xi_i xi_I del_i + del_i(xi_I) del_i)`
/// evaluated through the identification map.
pub fn g_element(e: Embedding, set: IndexSet) -> Result<CendElement> {
    check_subset(set, e.rank)?;
    let size = set.count_ones() as i64;
    let mut out = named_xi(e, set)?.scale(&int(2 - size));
    let sign = int(if size % 2 == 0 { 1 } else { -1 });
    let mut tail = CendElement::zero(e.rank);
    for i in 1..=e.rank {
        let a = alpha(i, set);
        if a != 0 {
            tail.add_scaled(&apply_d(&named_element(e, set | bit(i), Some(i))?), &int(a));
        }
        if set & bit(i) != 0 {
            let rest = set & !bit(i);
            tail.add_scaled(&named_element(e, rest, Some(i))?, &int(alpha(i, rest)));
        }
    }
    out.add_scaled(&tail, &sign);
    Ok(out)
}

fn mono(rank: usize, xi: IndexSet, del: IndexSet) -> AnElement {
    AnElement::monomial(rank, Monomial::new(xi, del), Scalar::one())
}

fn an_to_cend(a: &AnElement, d: u32, k: u32) -> CendElement {
    CendElement::from_terms(
        a.rank(),
        a.terms()
            .iter()
            .map(|(m, c)| (crate::cend::CendKey::new(d, *m, k), c.clone())),
    )
}

/// The printed closed forms of psi_1(g_I) and psi_2(g_I), built directly from
/// A_n arithmetic.
pub fn g_closed_form(e: Embedding, set: IndexSet) -> Result<CendElement> {
    check_subset(set, e.rank)?;
    let n = e.rank;
    let size = set.count_ones() as i64;
    let xi_i = mono(n, set, 0);
    let mut out = CendElement::zero(n);
    match e.kind {
        EmbeddingKind::Phi1 => {
            out.add_scaled(&an_to_cend(&xi_i, 0, 1), &int(2 - size));
            out.add_scaled(&an_to_cend(&xi_i, 1, 0), &int(size - 2));
            let mut tail = CendElement::zero(n);
            for i in 1..=n {
                let first = an_mul(&an_mul(&mono(n, bit(i), 0), &xi_i)?, &mono(n, 0, bit(i)))?;
                tail.add_assign(&an_to_cend(&first, 1, 0));
                let second = an_mul(&contract(i, &xi_i)?, &mono(n, 0, bit(i)))?;
                tail.add_assign(&an_to_cend(&second, 0, 0));
            }
            let sign = int(if size % 2 == 0 { 1 } else { -1 });
            out.add_scaled(&tail, &sign);
        }
        EmbeddingKind::Phi2 => {
            out.add_scaled(&an_to_cend(&xi_i, 0, 1), &int(2 - size));
            for i in 1..=n {
                let first = an_mul(&an_mul(&mono(n, 0, bit(i)), &mono(n, bit(i), 0))?, &xi_i)?;
                out.add_scaled(&an_to_cend(&first, 1, 0), &int(-1));
                let second = an_mul(&mono(n, 0, bit(i)), &contract(i, &xi_i)?)?;
                out.add_scaled(&an_to_cend(&second, 0, 0), &int(-1));
            }
        }
    }
    Ok(out)
}

/// `1 (x) xi_I`, the plain Grassmann monomial (used by the difference identity).
pub fn plain_xi(rank: usize, set: IndexSet) -> CendElement {
    CendElement::term(rank, 0, Monomial::xi(set), 0, Scalar::one())
}

/// Finite locality function on ordered pairs of labels.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LocalityTable<K: Ord + Clone> {
    pub labels: Vec<K>,
    pub entries: BTreeMap<(K, K), u32>,
}

impl<K: Ord + Clone> LocalityTable<K> {
    pub fn new(labels: Vec<K>) -> Self {
        LocalityTable {
            labels,
            entries: BTreeMap::new(),
        }
    }

    pub fn get(&self, a: &K, b: &K) -> Option<u32> {
        self.entries.get(&(a.clone(), b.clone())).copied()
    }

    pub fn insert(&mut self, a: K, b: K, value: u32) {
        self.entries.insert((a, b), value);
    }

    pub fn is_symmetric(&self) -> bool {
        self.entries
            .iter()
            .all(|((a, b), v)| self.get(b, a) == Some(*v))
    }

    pub fn max_value(&self) -> u32 {
        self.entries.values().copied().max().unwrap_or(0)
    }
}

/// Locality of the phi images over B.
pub fn locality_table(e: Embedding) -> Result<LocalityTable<GeneratorSymbol>> {
    let gens = generators(e.rank);
    let images: Vec<CendElement> = gens.iter().map(|g| phi(e, *g)).collect::<Result<_>>()?;
    let mut table = LocalityTable::new(gens.clone());
    for (a, x) in gens.iter().zip(&images) {
        for (b, y) in gens.iter().zip(&images) {
            table.insert(*a, *b, locality(x, y)?);
        }
    }
    Ok(table)
}

/// The two printed tables N_1 and N_2 as functions of the generator pair.
pub fn printed_w_locality(kind: EmbeddingKind, a: GeneratorSymbol, b: GeneratorSymbol) -> u32 {
    use GeneratorSymbol::{Del, Xi, V};
    match (kind, a, b) {
        (_, Xi(i), Xi(j)) | (_, Del(i), Del(j)) if i == j => 0,
        (EmbeddingKind::Phi1, V, _) | (EmbeddingKind::Phi1, Xi(_), _) => 2,
        (EmbeddingKind::Phi1, Del(_), _) => 1,
        (EmbeddingKind::Phi2, V | Xi(_), Del(_)) => 1,
        (EmbeddingKind::Phi2, V | Xi(_), _) => 2,
        (EmbeddingKind::Phi2, Del(_), Del(_)) => 1,
        (EmbeddingKind::Phi2, Del(_), _) => 2,
    }
}

pub fn printed_w_table(e: Embedding) -> LocalityTable<GeneratorSymbol> {
    let gens = generators(e.rank);
    let mut table = LocalityTable::new(gens.clone());
    for a in &gens {
        for b in &gens {
            table.insert(*a, *b, printed_w_locality(e.kind, *a, *b));
        }
    }
    table
}

/// The case formula for N(g_I, g_J).
pub fn predicted_k_locality(n: usize, a: IndexSet, b: IndexSet) -> u32 {
    let common = (a & b).count_ones();
    let union = (a | b).count_ones() as usize;
    match common {
        0 if union < n => 3,
        0 => 2,
        1 => 2,
        2 => 1,
        _ => 0,
    }
}

pub fn g_images(e: Embedding) -> Result<Vec<(IndexSet, CendElement)>> {
    all_subsets(e.rank)
        .into_iter()
        .map(|s| Ok((s, g_closed_form(e, s)?)))
        .collect()
}

/// Locality of the g_I images over all ordered subset pairs.
pub fn k_locality_table(e: Embedding) -> Result<LocalityTable<IndexSet>> {
    let images = g_images(e)?;
    let mut table = LocalityTable::new(images.iter().map(|(s, _)| *s).collect());
    for (a, x) in &images {
        for (b, y) in &images {
            table.insert(*a, *b, locality(x, y)?);
        }
    }
    Ok(table)
}

pub fn predicted_k_table(n: usize) -> LocalityTable<IndexSet> {
    let subsets = all_subsets(n);
    let mut table = LocalityTable::new(subsets.clone());
    for a in &subsets {
        for b in &subsets {
            table.insert(*a, *b, predicted_k_locality(n, *a, *b));
        }
    }
    table
}
