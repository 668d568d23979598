//! Exact sparse column elimination.
//!
//! Columns are scaled to primitive integer vectors and eliminated fraction-free:
//! `col <- a * col - b * pivot`, followed by removal of the common content.
//! The pivot column is the remaining column with the fewest nonzeros (ties go
//! to the lower column index) and its pivot row is its smallest row key.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::scalar::{big, Scalar};

pub type SparseVec<K> = BTreeMap<K, Scalar>;

/// Columns of a sparse matrix with ordered row keys.
#[derive(Debug, Clone, Default)]
pub struct SparseMatrix<K: Ord + Clone> {
    pub columns: Vec<SparseVec<K>>,
}

impl<K: Ord + Clone> SparseMatrix<K> {
    pub fn new(columns: Vec<SparseVec<K>>) -> Self {
        SparseMatrix { columns }
    }

    pub fn nnz(&self) -> usize {
        self.columns.iter().map(|c| c.len()).sum()
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Independence {
    pub rank: usize,
    /// Nontrivial kernel vector (one coefficient per input column) when the
    /// columns are dependent; normalized so its first nonzero entry is 1.
    pub witness: Option<Vec<Scalar>>,
}

impl Independence {
    pub fn independent(&self) -> bool {
        self.witness.is_none()
    }
}

type IntVec<K> = BTreeMap<K, BigInt>;

#[derive(Debug, Clone)]
struct WorkColumn<K> {
    entries: IntVec<K>,
    /// combination of the scaled input columns
    combo: BTreeMap<usize, BigInt>,
}

/// Scales a rational column to a primitive integer column; returns the factor used.
fn integerize<K: Ord + Clone>(col: &SparseVec<K>) -> (IntVec<K>, Scalar) {
    let mut lcm = BigInt::one();
    for v in col.values() {
        lcm = lcm.lcm(v.denom());
    }
    let mut out: IntVec<K> = col
        .iter()
        .map(|(k, v)| (k.clone(), (v * big(lcm.clone())).to_integer()))
        .collect();
    let g = content(out.values());
    if !g.is_zero() && !g.is_one() {
        for v in out.values_mut() {
            *v = &*v / &g;
        }
    }
    (out, big(lcm) / big(if g.is_zero() { BigInt::one() } else { g }))
}

fn content<'a>(vals: impl Iterator<Item = &'a BigInt>) -> BigInt {
    let mut g = BigInt::zero();
    for v in vals {
        g = g.gcd(v);
        if g.is_one() {
            break;
        }
    }
    g
}

fn make_primitive<K: Ord>(col: &mut WorkColumn<K>) {
    let g = content(col.entries.values().chain(col.combo.values()));
    if g.is_zero() || g.is_one() {
        return;
    }
    for v in col.entries.values_mut() {
        *v = &*v / &g;
    }
    for v in col.combo.values_mut() {
        *v = &*v / &g;
    }
}

/// `target <- a * target - b * pivot` where `a`, `b` cancel the pivot row.
fn eliminate<K: Ord + Clone>(target: &mut WorkColumn<K>, pivot: &WorkColumn<K>, row: &K) {
    let Some(b) = target.entries.get(row).cloned() else {
        return;
    };
    let a = pivot.entries[row].clone();
    let g = a.gcd(&b);
    let (a, b) = (&a / &g, &b / &g);
    if !a.is_one() {
        for v in target.entries.values_mut() {
            *v *= &a;
        }
        for v in target.combo.values_mut() {
            *v *= &a;
        }
    }
    for (k, v) in &pivot.entries {
        let e = target.entries.entry(k.clone()).or_insert_with(BigInt::zero);
        *e -= &b * v;
        if e.is_zero() {
            target.entries.remove(k);
        }
    }
    for (k, v) in &pivot.combo {
        let e = target.combo.entry(*k).or_insert_with(BigInt::zero);
        *e -= &b * v;
        if e.is_zero() {
            target.combo.remove(k);
        }
    }
    make_primitive(target);
}

/// Echelon form of a column set, reusable for expressing further vectors.
#[derive(Debug, Clone)]
pub struct Echelon<K: Ord + Clone> {
    pivots: Vec<(K, WorkColumn<K>)>,
    scales: Vec<Scalar>,
    dependent: Vec<WorkColumn<K>>,
    ncols: usize,
}

impl<K: Ord + Clone> Echelon<K> {
    pub fn new(columns: &[SparseVec<K>]) -> Self {
        let mut scales = Vec::with_capacity(columns.len());
        let mut pending: Vec<Option<WorkColumn<K>>> = Vec::with_capacity(columns.len());
        for (j, col) in columns.iter().enumerate() {
            let (entries, scale) = integerize(col);
            scales.push(scale);
            pending.push(Some(WorkColumn {
                entries,
                combo: BTreeMap::from([(j, BigInt::one())]),
            }));
        }
        let mut pivots = Vec::new();
        let mut dependent = Vec::new();
        loop {
            // move exhausted columns out, pick the sparsest remaining one
            let mut best: Option<(usize, usize)> = None;
            for (j, slot) in pending.iter_mut().enumerate() {
                let Some(col) = slot else { continue };
                if col.entries.is_empty() {
                    dependent.push(slot.take().unwrap());
                    continue;
                }
                let nnz = col.entries.len();
                if best.is_none_or(|(_, b)| nnz < b) {
                    best = Some((j, nnz));
                }
            }
            let Some((pj, _)) = best else { break };
            let pivot = pending[pj].take().unwrap();
            let row = pivot.entries.keys().next().unwrap().clone();
            for col in pending.iter_mut().flatten() {
                eliminate(col, &pivot, &row);
            }
            pivots.push((row, pivot));
        }
        dependent.sort_by_key(|c| c.combo.keys().next_back().copied());
        Echelon {
            pivots,
            scales,
            dependent,
            ncols: columns.len(),
        }
    }

    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    fn to_rational_combo(&self, combo: &BTreeMap<usize, BigInt>) -> Vec<Scalar> {
        let mut out = vec![Scalar::zero(); self.ncols];
        for (j, c) in combo {
            out[*j] = big(c.clone()) * &self.scales[*j];
        }
        out
    }

    pub fn witness(&self) -> Option<Vec<Scalar>> {
        let dep = self.dependent.first()?;
        let mut w = self.to_rational_combo(&dep.combo);
        let lead = w.iter().find(|x| !x.is_zero()).cloned()?;
        for x in w.iter_mut() {
            *x = &*x / &lead;
        }
        Some(w)
    }

    /// Coefficients `c` with `sum c_j columns[j] = target`, if any exist.
    pub fn express(&self, target: &SparseVec<K>) -> Option<Vec<Scalar>> {
        if target.is_empty() {
            return Some(vec![Scalar::zero(); self.ncols]);
        }
        let (entries, scale) = integerize(target);
        let marker = self.ncols;
        let mut work = WorkColumn {
            entries,
            combo: BTreeMap::from([(marker, BigInt::one())]),
        };
        for (row, pivot) in &self.pivots {
            eliminate(&mut work, pivot, row);
        }
        if !work.entries.is_empty() {
            return None;
        }
        // work = t * target_scaled + sum combo_j col_j = 0
        let t = work.combo.get(&marker).cloned().unwrap_or_default();
        if t.is_zero() {
            return None;
        }
        let mut out = vec![Scalar::zero(); self.ncols];
        for (j, c) in &work.combo {
            if *j == marker {
                continue;
            }
            out[*j] = -(big(c.clone()) * &self.scales[*j]) / (big(t.clone()) * &scale);
        }
        Some(out)
    }
}

/// Rank of a set of sparse columns plus a kernel witness when dependent.
pub fn independence<K: Ord + Clone>(columns: &[SparseVec<K>]) -> Independence {
    let ech = Echelon::new(columns);
    Independence {
        rank: ech.rank(),
        witness: ech.witness(),
    }
}

/// Checks that a witness really lies in the kernel.
pub fn is_kernel_vector<K: Ord + Clone>(columns: &[SparseVec<K>], w: &[Scalar]) -> bool {
    let mut acc: SparseVec<K> = BTreeMap::new();
    for (col, c) in columns.iter().zip(w) {
        if c.is_zero() {
            continue;
        }
        for (k, v) in col {
            let e = acc.entry(k.clone()).or_insert_with(Scalar::zero);
            *e += v * c;
        }
    }
    acc.values().all(|v| v.is_zero()) && w.iter().any(|x| !x.is_zero())
}
