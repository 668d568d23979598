//! The associative conformal algebra k[D] (x) A_n[v].
//!
//! For D-free elements `(1 (x) a(v)) o_n (1 (x) b(v)) = 1 (x) a(v) d^n b(v)/dv^n`;
//! D-bearing arguments are handled through `D a o_n b = -n a o_{n-1} b` and
//! `a o_n D b = D(a o_n b) + n a o_{n-1} b`, which combine to
//!
//! ```text
//! D^d a o_n D^e b = (-1)^d n^(d) sum_j C(e,j) (n-d)^(j) D^(e-j) (a o_{n-d-j} b)
//! ```
//!
//! with `x^(k)` the falling factorial.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::grassmann::{monomial_product, AnElement, Monomial};
use crate::scalar::{big, binomial, factorial, falling, falling_signed, int, Scalar};

/// Basis key `D^d (x) m v^k`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CendKey {
    pub d: u32,
    pub mono: Monomial,
    pub k: u32,
}

impl CendKey {
    pub fn new(d: u32, mono: Monomial, k: u32) -> Self {
        CendKey { d, mono, k }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct CendElement {
    rank: usize,
    terms: BTreeMap<CendKey, Scalar>,
}

impl CendElement {
    pub fn zero(rank: usize) -> Self {
        CendElement {
            rank,
            terms: BTreeMap::new(),
        }
    }

    pub fn term(rank: usize, d: u32, mono: Monomial, k: u32, coeff: Scalar) -> Self {
        let mut e = Self::zero(rank);
        e.add_term(CendKey::new(d, mono, k), coeff);
        e
    }

    /// `1 (x) v^k`
    pub fn v_power(rank: usize, k: u32) -> Self {
        Self::term(rank, 0, Monomial::ONE, k, Scalar::one())
    }

    /// `1 (x) 1`
    pub fn one(rank: usize) -> Self {
        Self::v_power(rank, 0)
    }

    pub fn from_an(a: &AnElement) -> Self {
        let mut e = Self::zero(a.rank());
        for (m, c) in a.terms() {
            e.add_term(CendKey::new(0, *m, 0), c.clone());
        }
        e
    }

    pub fn from_terms(rank: usize, terms: impl IntoIterator<Item = (CendKey, Scalar)>) -> Self {
        let mut e = Self::zero(rank);
        for (k, c) in terms {
            e.add_term(k, c);
        }
        e
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn terms(&self) -> &BTreeMap<CendKey, Scalar> {
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

    pub fn coeff(&self, key: &CendKey) -> Scalar {
        self.terms.get(key).cloned().unwrap_or_else(Scalar::zero)
    }

    pub fn add_term(&mut self, key: CendKey, coeff: Scalar) {
        if coeff.is_zero() {
            return;
        }
        let entry = self.terms.entry(key).or_insert_with(Scalar::zero);
        *entry += coeff;
        if entry.is_zero() {
            self.terms.remove(&key);
        }
    }

    pub fn add_assign(&mut self, other: &CendElement) {
        for (k, c) in &other.terms {
            self.add_term(*k, c.clone());
        }
    }

    pub fn add_scaled(&mut self, other: &CendElement, s: &Scalar) {
        if s.is_zero() {
            return;
        }
        for (k, c) in &other.terms {
            self.add_term(*k, c * s);
        }
    }

    pub fn add(&self, other: &CendElement) -> CendElement {
        let mut out = self.clone();
        out.add_assign(other);
        out
    }

    pub fn sub(&self, other: &CendElement) -> CendElement {
        let mut out = self.clone();
        out.add_scaled(other, &int(-1));
        out
    }

    pub fn scale(&self, s: &Scalar) -> CendElement {
        let mut out = CendElement::zero(self.rank);
        out.add_scaled(self, s);
        out
    }

    pub fn neg(&self) -> CendElement {
        self.scale(&int(-1))
    }

    /// Right multiplication of every term by a fixed A_n element (v and D untouched).
    pub fn mul_an_right(&self, a: &AnElement) -> CendElement {
        let mut out = CendElement::zero(self.rank);
        for (k, c) in &self.terms {
            for (m, ca) in a.terms() {
                for (p, s) in monomial_product(k.mono, *m).iter() {
                    out.add_term(CendKey::new(k.d, *p, k.k), c * ca * int(*s));
                }
            }
        }
        out
    }

    pub fn max_d(&self) -> u32 {
        self.terms.keys().map(|k| k.d).max().unwrap_or(0)
    }

    pub fn v_degree(&self) -> u32 {
        self.terms.keys().map(|k| k.k).max().unwrap_or(0)
    }

    /// Splits into (even, odd) parts by the Grassmann parity of each term.
    pub fn parity_components(&self) -> (CendElement, CendElement) {
        let mut even = CendElement::zero(self.rank);
        let mut odd = CendElement::zero(self.rank);
        for (k, c) in &self.terms {
            if k.mono.parity() == 0 {
                even.add_term(*k, c.clone());
            } else {
                odd.add_term(*k, c.clone());
            }
        }
        (even, odd)
    }

    /// `Some(p)` when every term has parity p (zero counts as even).
    pub fn parity(&self) -> Option<u8> {
        let mut it = self.terms.keys().map(|k| k.mono.parity());
        match it.next() {
            None => Some(0),
            Some(p) => it.all(|q| q == p).then_some(p),
        }
    }
}

impl fmt::Display for CendElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", crate::syntax::print_element(self))
    }
}

fn check_ranks(x: &CendElement, y: &CendElement) -> Result<()> {
    if x.rank != y.rank {
        Err(Error::RankMismatch {
            left: x.rank,
            right: y.rank,
        })
    } else {
        Ok(())
    }
}

pub fn apply_d(x: &CendElement) -> CendElement {
    apply_d_pow(x, 1)
}

pub fn apply_d_pow(x: &CendElement, s: u32) -> CendElement {
    if s == 0 {
        return x.clone();
    }
    CendElement {
        rank: x.rank,
        terms: x
            .terms
            .iter()
            .map(|(k, c)| (CendKey::new(k.d + s, k.mono, k.k), c.clone()))
            .collect(),
    }
}

/// The n-th conformal product.
pub fn nproduct(x: &CendElement, n: u32, y: &CendElement) -> Result<CendElement> {
    check_ranks(x, y)?;
    let mut out = CendElement::zero(x.rank);
    let n64 = n as u64;
    for (kx, cx) in &x.terms {
        let d = kx.d as u64;
        if n64 < d {
            continue;
        }
        let mut left = falling(n64, d);
        if d % 2 == 1 {
            left = -left;
        }
        let m = n64 - d;
        for (ky, cy) in &y.terms {
            let e = ky.d as u64;
            let q = ky.k as u64;
            let prods = monomial_product(kx.mono, ky.mono);
            if prods.is_empty() {
                continue;
            }
            for j in 0..=e.min(m) {
                let r = m - j;
                if r > q {
                    continue;
                }
                let factor = &left * binomial(e, j) * falling(m, j) * falling(q, r);
                let base = cx * cy * big(factor);
                let dd = (e - j) as u32;
                let kk = (kx.k as u64 + q - r) as u32;
                for (mono, s) in prods.iter() {
                    out.add_term(CendKey::new(dd, *mono, kk), &base * int(*s));
                }
            }
        }
    }
    Ok(out)
}

/// Every n-product with n >= this bound vanishes.
pub fn locality_bound(x: &CendElement, y: &CendElement) -> u32 {
    x.max_d() + y.max_d() + x.v_degree() + y.v_degree() + 1
}

/// `{x o_n y} = sum_s (-1)^{n+s}/s! D^s (x o_{n+s} y)`
pub fn brace(x: &CendElement, n: u32, y: &CendElement) -> Result<CendElement> {
    check_ranks(x, y)?;
    let bound = locality_bound(x, y);
    let mut out = CendElement::zero(x.rank);
    let mut s = 0u32;
    while n + s < bound {
        let p = nproduct(x, n + s, y)?;
        if !p.is_zero() {
            let sign = if (n + s).is_multiple_of(2) { 1 } else { -1 };
            let coeff = int(sign) / big(factorial(s as u64));
            out.add_scaled(&apply_d_pow(&p, s), &coeff);
        }
        s += 1;
    }
    Ok(out)
}

fn bracket_homogeneous(x: &CendElement, n: u32, y: &CendElement, px: u8, py: u8) -> Result<CendElement> {
    let mut out = nproduct(x, n, y)?;
    let b = brace(y, n, x)?;
    let sign = if px * py == 1 { int(1) } else { int(-1) };
    out.add_scaled(&b, &sign);
    Ok(out)
}

/// Super-commutator `[x o_n y] = x o_n y - (-1)^{p(x)p(y)} {y o_n x}`,
/// extended bilinearly over parity components.
pub fn bracket(x: &CendElement, n: u32, y: &CendElement) -> Result<CendElement> {
    check_ranks(x, y)?;
    let (x0, x1) = x.parity_components();
    let (y0, y1) = y.parity_components();
    let mut out = CendElement::zero(x.rank);
    for (xp, px) in [(&x0, 0u8), (&x1, 1u8)] {
        if xp.is_zero() {
            continue;
        }
        for (yp, py) in [(&y0, 0u8), (&y1, 1u8)] {
            if yp.is_zero() {
                continue;
            }
            out.add_assign(&bracket_homogeneous(xp, n, yp, px, py)?);
        }
    }
    Ok(out)
}

/// Minimal N with `x o_n y = 0` for all n >= N.
pub fn locality(x: &CendElement, y: &CendElement) -> Result<u32> {
    check_ranks(x, y)?;
    let bound = locality_bound(x, y);
    for n in (0..bound).rev() {
        if !nproduct(x, n, y)?.is_zero() {
            return Ok(n + 1);
        }
    }
    Ok(0)
}

/// Element of the coefficient algebra: `sum_m x_m (m)` with `x_m` in the model.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct IndexedSum {
    pub entries: BTreeMap<i64, CendElement>,
}

impl IndexedSum {
    pub fn single(x: CendElement, m: i64) -> Self {
        let mut s = IndexedSum::default();
        s.add(m, &x, &Scalar::one());
        s
    }

    pub fn add(&mut self, m: i64, x: &CendElement, coeff: &Scalar) {
        if x.is_zero() || coeff.is_zero() {
            return;
        }
        let rank = x.rank();
        let e = self.entries.entry(m).or_insert_with(|| CendElement::zero(rank));
        e.add_scaled(x, coeff);
        if e.is_zero() {
            self.entries.remove(&m);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    /// Rewrites `(D^d a)(m)` as `(-1)^d m^(d) a(m-d)` so that equal elements of
    /// the coefficient algebra have equal representations.
    pub fn normalized(&self) -> IndexedSum {
        let mut out = IndexedSum::default();
        for (m, x) in &self.entries {
            for (k, c) in x.terms() {
                let d = k.d as u64;
                let mut f = falling_signed(*m, d);
                if d % 2 == 1 {
                    f = -f;
                }
                if f.is_zero() {
                    continue;
                }
                let t = CendElement::term(x.rank(), 0, k.mono, k.k, c * big(f));
                out.add(m - d as i64, &t, &Scalar::one());
            }
        }
        out
    }

    pub fn sub(&self, other: &IndexedSum) -> IndexedSum {
        let mut out = self.clone();
        for (m, x) in &other.entries {
            out.add(*m, x, &int(-1));
        }
        out
    }
}

/// `x(n) y(m) = sum_{s=0}^{n} C(n,s) (x o_{n-s} y)(m+s)`.
pub fn coeff_product(x: &CendElement, n: i64, y: &CendElement, m: i64) -> Result<IndexedSum> {
    check_ranks(x, y)?;
    if n < 0 {
        return Err(Error::NegativeIndex(n));
    }
    let mut out = IndexedSum::default();
    for s in 0..=n {
        let p = nproduct(x, (n - s) as u32, y)?;
        out.add(m + s, &p, &big(binomial(n as u64, s as u64)));
    }
    Ok(out)
}

/// Product of an indexed sum with a single coefficient element on the right.
pub fn coeff_product_left_sum(sum: &IndexedSum, z: &CendElement, l: i64) -> Result<IndexedSum> {
    let mut out = IndexedSum::default();
    for (m, x) in &sum.normalized().entries {
        let p = coeff_product(x, *m, z, l)?;
        for (idx, e) in p.entries {
            out.add(idx, &e, &Scalar::one());
        }
    }
    Ok(out)
}

/// Product of a single coefficient element with an indexed sum on the right.
pub fn coeff_product_right_sum(x: &CendElement, n: i64, sum: &IndexedSum) -> Result<IndexedSum> {
    let mut out = IndexedSum::default();
    for (m, y) in &sum.normalized().entries {
        let p = coeff_product(x, n, y, *m)?;
        for (idx, e) in p.entries {
            out.add(idx, &e, &Scalar::one());
        }
    }
    Ok(out)
}

/// Named conformal identities that can be checked on concrete elements.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Identity {
    C2,
    C3,
    AssocL,
    AssocR,
    Anticomm,
    Jacobi,
}

impl Identity {
    pub const ALL: [Identity; 6] = [
        Identity::C2,
        Identity::C3,
        Identity::AssocL,
        Identity::AssocR,
        Identity::Anticomm,
        Identity::Jacobi,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Identity::C2 => "C2",
            Identity::C3 => "C3",
            Identity::AssocL => "assoc-l",
            Identity::AssocR => "assoc-r",
            Identity::Anticomm => "anticomm",
            Identity::Jacobi => "Jacobi",
        }
    }

    pub fn arity(self) -> usize {
        match self {
            Identity::C2 | Identity::C3 | Identity::Anticomm => 2,
            Identity::AssocL | Identity::AssocR | Identity::Jacobi => 3,
        }
    }

    pub fn from_name(s: &str) -> Option<Identity> {
        Identity::ALL
            .into_iter()
            .find(|i| i.name().eq_ignore_ascii_case(s))
    }
}

/// `{x o_n y}` computed with the Lie bracket in place of the associative product.
fn lie_brace(x: &CendElement, n: u32, y: &CendElement) -> Result<CendElement> {
    let bound = locality_bound(x, y).max(locality_bound(y, x));
    let mut out = CendElement::zero(x.rank);
    for s in 0..bound.saturating_sub(n) {
        let p = bracket(x, n + s, y)?;
        if p.is_zero() {
            continue;
        }
        let sign = if (n + s).is_multiple_of(2) { 1 } else { -1 };
        out.add_scaled(&apply_d_pow(&p, s), &(int(sign) / big(factorial(s as u64))));
    }
    Ok(out)
}

fn identity_residual(id: Identity, e: &[CendElement], n: u32, m: u32) -> Result<CendElement> {
    let rank = e[0].rank();
    Ok(match id {
        Identity::C2 => {
            let lhs = nproduct(&apply_d(&e[0]), n, &e[1])?;
            let rhs = if n == 0 {
                CendElement::zero(rank)
            } else {
                nproduct(&e[0], n - 1, &e[1])?.scale(&-int(n as i64))
            };
            lhs.sub(&rhs)
        }
        Identity::C3 => {
            let lhs = nproduct(&e[0], n, &apply_d(&e[1]))?;
            let mut rhs = apply_d(&nproduct(&e[0], n, &e[1])?);
            if n > 0 {
                rhs.add_scaled(&nproduct(&e[0], n - 1, &e[1])?, &int(n as i64));
            }
            lhs.sub(&rhs)
        }
        Identity::AssocL => {
            let (a, b, c) = (&e[0], &e[1], &e[2]);
            let lhs = nproduct(&nproduct(a, n, b)?, m, c)?;
            let mut rhs = CendElement::zero(rank);
            for s in 0..=n {
                let sign = if s % 2 == 0 { 1 } else { -1 };
                let coeff = int(sign) * big(binomial(n as u64, s as u64));
                rhs.add_scaled(&nproduct(a, n - s, &nproduct(b, m + s, c)?)?, &coeff);
            }
            lhs.sub(&rhs)
        }
        Identity::AssocR => {
            let (a, b, c) = (&e[0], &e[1], &e[2]);
            let lhs = nproduct(a, n, &nproduct(b, m, c)?)?;
            let mut rhs = CendElement::zero(rank);
            for s in 0..=n {
                let coeff = big(binomial(n as u64, s as u64));
                rhs.add_scaled(&nproduct(&nproduct(a, n - s, b)?, m + s, c)?, &coeff);
            }
            lhs.sub(&rhs)
        }
        Identity::Anticomm => {
            let (a, b) = (&e[0], &e[1]);
            let pa = a.parity().unwrap_or(0);
            let pb = b.parity().unwrap_or(0);
            let mut res = bracket(a, n, b)?;
            let sign = if pa * pb == 1 { int(-1) } else { int(1) };
            res.add_scaled(&lie_brace(b, n, a)?, &sign);
            res
        }
        Identity::Jacobi => {
            let (a, b, c) = (&e[0], &e[1], &e[2]);
            let pa = a.parity().unwrap_or(0);
            let pb = b.parity().unwrap_or(0);
            let mut lhs = bracket(a, n, &bracket(b, m, c)?)?;
            let sign = if pa * pb == 1 { int(1) } else { int(-1) };
            lhs.add_scaled(&bracket(b, m, &bracket(a, n, c)?)?, &sign);
            let mut rhs = CendElement::zero(rank);
            for s in 0..=n {
                let coeff = big(binomial(n as u64, s as u64));
                rhs.add_scaled(&bracket(&bracket(a, n - s, b)?, m + s, c)?, &coeff);
            }
            lhs.sub(&rhs)
        }
    })
}

/// True iff the identity instance evaluates to zero. Parity-sensitive
/// identities are checked on every combination of homogeneous components.
pub fn verify_identity(id: Identity, elements: &[CendElement], n: u32, m: u32) -> Result<bool> {
    if elements.len() != id.arity() {
        return Err(Error::Arity {
            name: id.name(),
            expected: id.arity(),
            got: elements.len(),
        });
    }
    for w in elements.windows(2) {
        check_ranks(&w[0], &w[1])?;
    }
    let graded = matches!(id, Identity::Anticomm | Identity::Jacobi);
    if !graded {
        return Ok(identity_residual(id, elements, n, m)?.is_zero());
    }
    let comps: Vec<Vec<CendElement>> = elements
        .iter()
        .map(|x| {
            let (a, b) = x.parity_components();
            [a, b].into_iter().filter(|c| !c.is_zero()).collect()
        })
        .collect();
    if comps.iter().any(|c| c.is_empty()) {
        return Ok(true);
    }
    let mut idx = vec![0usize; comps.len()];
    loop {
        let pick: Vec<CendElement> = idx.iter().zip(&comps).map(|(i, c)| c[*i].clone()).collect();
        if !identity_residual(id, &pick, n, m)?.is_zero() {
            return Ok(false);
        }
        let mut pos = 0;
        loop {
            if pos == idx.len() {
                return Ok(true);
            }
            idx[pos] += 1;
            if idx[pos] < comps[pos].len() {
                break;
            }
            idx[pos] = 0;
            pos += 1;
        }
    }
}
