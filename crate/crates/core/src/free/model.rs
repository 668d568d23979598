//! The differential model F(B) = k[D] (x) k<v, B> with
//! `(1 (x) f) o_n (1 (x) g) = 1 (x) f d^n g / dv^n`, and the conversion back to
//! normal words of F_N(B), which is spanned by products of `v^{N-1} a`.

use std::cell::RefCell;
use std::collections::{BTreeMap, HashMap};
use std::rc::Rc;

use num_traits::{One, Zero};

use super::{ConformalPolynomial, NormalWord};
use crate::error::{Error, Result};
use crate::linalg::{Echelon, SparseVec};
use crate::scalar::{big, binomial, factorial, falling, Scalar};
use crate::symbol::GeneratorSymbol;

/// `D^d (x) v^{p_1} a_1 v^{p_2} a_2 ... v^{p_k} a_k`
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FreeKey {
    pub d: u32,
    pub word: Vec<(u32, GeneratorSymbol)>,
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct FreeElement {
    terms: BTreeMap<FreeKey, Scalar>,
}

impl FreeElement {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn term(key: FreeKey, c: Scalar) -> Self {
        let mut e = Self::zero();
        e.add_term(key, c);
        e
    }

    /// `v^p a`
    pub fn generator(p: u32, a: GeneratorSymbol) -> Self {
        Self::term(
            FreeKey {
                d: 0,
                word: vec![(p, a)],
            },
            Scalar::one(),
        )
    }

    pub fn terms(&self) -> &BTreeMap<FreeKey, Scalar> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add_term(&mut self, key: FreeKey, c: Scalar) {
        if c.is_zero() {
            return;
        }
        let e = self.terms.entry(key.clone()).or_insert_with(Scalar::zero);
        *e += c;
        if e.is_zero() {
            self.terms.remove(&key);
        }
    }

    pub fn add_scaled(&mut self, other: &FreeElement, c: &Scalar) {
        if c.is_zero() {
            return;
        }
        for (k, x) in &other.terms {
            self.add_term(k.clone(), x * c);
        }
    }

    pub fn scale(&self, c: &Scalar) -> Self {
        let mut out = Self::zero();
        out.add_scaled(self, c);
        out
    }

    pub fn apply_d(&self, s: u32) -> Self {
        FreeElement {
            terms: self
                .terms
                .iter()
                .map(|(k, c)| {
                    (
                        FreeKey {
                            d: k.d + s,
                            word: k.word.clone(),
                        },
                        c.clone(),
                    )
                })
                .collect(),
        }
    }
}

/// All ways to take `r` v-derivatives of a word, with multiplicities.
fn derivatives(word: &[(u32, GeneratorSymbol)], r: u32) -> Vec<(Vec<(u32, GeneratorSymbol)>, Scalar)> {
    fn go(
        word: &[(u32, GeneratorSymbol)],
        pos: usize,
        left: u32,
        cur: &mut Vec<(u32, GeneratorSymbol)>,
        coeff: Scalar,
        out: &mut Vec<(Vec<(u32, GeneratorSymbol)>, Scalar)>,
    ) {
        if pos == word.len() {
            if left == 0 {
                out.push((cur.clone(), coeff));
            }
            return;
        }
        let (p, a) = word[pos];
        for take in 0..=left.min(p) {
            // multinomial r!/prod(r_i!) times prod falling(p_i, r_i)
            let c = &coeff * big(falling(p as u64, take as u64)) / big(factorial(take as u64));
            cur.push((p - take, a));
            go(word, pos + 1, left - take, cur, c, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(word.len());
    go(word, 0, r, &mut cur, big(factorial(r as u64)), &mut out);
    out
}

/// Conformal n-product of the model, extended to D-bearing arguments by
/// `D^d x o_n D^e y = (-1)^d n^(d) sum_j C(e,j) (n-d)^(j) D^(e-j) (x o_{n-d-j} y)`.
pub fn free_nproduct(x: &FreeElement, n: u32, y: &FreeElement) -> FreeElement {
    let mut out = FreeElement::zero();
    let n = n as u64;
    for (kx, cx) in &x.terms {
        let d = kx.d as u64;
        if n < d {
            continue;
        }
        let mut left = falling(n, d);
        if d % 2 == 1 {
            left = -left;
        }
        let m = n - d;
        for (ky, cy) in &y.terms {
            let e = ky.d as u64;
            for j in 0..=e.min(m) {
                let factor = &left * binomial(e, j) * falling(m, j);
                let base = cx * cy * big(factor);
                for (dw, c) in derivatives(&ky.word, (m - j) as u32) {
                    let mut word = kx.word.clone();
                    word.extend(dw);
                    out.add_term(
                        FreeKey {
                            d: (e - j) as u32,
                            word,
                        },
                        &base * c,
                    );
                }
            }
        }
    }
    out
}

/// Image of a normal word under `a -> v^{N-1} a`.
pub fn embed(w: &NormalWord, bound: u32) -> Result<FreeElement> {
    w.check_bound(bound)?;
    if bound == 0 {
        return Err(Error::IndexTooLarge { index: 0, bound });
    }
    let p = bound - 1;
    let mut acc = FreeElement::generator(p, *w.letters.last().unwrap());
    for i in (0..w.indices.len()).rev() {
        acc = free_nproduct(&FreeElement::generator(p, w.letters[i]), w.indices[i], &acc);
    }
    Ok(acc.apply_d(w.s))
}

pub fn embed_polynomial(p: &ConformalPolynomial, bound: u32) -> Result<FreeElement> {
    let mut out = FreeElement::zero();
    for (w, c) in p.terms() {
        out.add_scaled(&embed(w, bound)?, c);
    }
    Ok(out)
}

/// Index vectors in `[0, bound)^k` with the given sum.
fn index_vectors(k: usize, bound: u32, sum: u32) -> Vec<Vec<u32>> {
    fn go(k: usize, bound: u32, sum: u32, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if k == 0 {
            if sum == 0 {
                out.push(cur.clone());
            }
            return;
        }
        for n in 0..bound.min(sum + 1) {
            cur.push(n);
            go(k - 1, bound, sum - n, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(k, bound, sum, &mut Vec::new(), &mut out);
    out
}

struct Basis {
    candidates: Vec<Vec<u32>>,
    echelon: Echelon<Vec<u32>>,
}

thread_local! {
    static BASES: RefCell<HashMap<(usize, u32, u32), Rc<Basis>>> = RefCell::new(HashMap::new());
}

/// Embedding columns depend only on the index vector, not on the letters.
fn basis(k: usize, bound: u32, sum: u32) -> Rc<Basis> {
    BASES.with(|cache| {
        if let Some(b) = cache.borrow().get(&(k, bound, sum)) {
            return b.clone();
        }
        let candidates = index_vectors(k, bound, sum);
        let letters = vec![GeneratorSymbol::V; k + 1];
        let columns: Vec<SparseVec<Vec<u32>>> = candidates
            .iter()
            .map(|idx| {
                let w = NormalWord::new(0, letters.clone(), idx.clone());
                let e = embed(&w, bound).expect("candidate indices are below the bound");
                e.terms()
                    .iter()
                    .map(|(key, c)| (key.word.iter().map(|p| p.0).collect(), c.clone()))
                    .collect()
            })
            .collect();
        let b = Rc::new(Basis {
            echelon: Echelon::new(&columns),
            candidates,
        });
        cache.borrow_mut().insert((k, bound, sum), b.clone());
        b
    })
}

/// Normal-word expansion of an element of the subalgebra generated by the
/// `v^{N-1} a`. Letter sequence, D-power and total v-degree are preserved by
/// every product, so each such class is solved separately.
pub fn to_normal(x: &FreeElement, bound: u32) -> Result<ConformalPolynomial> {
    if bound == 0 {
        return if x.is_zero() {
            Ok(ConformalPolynomial::zero())
        } else {
            Err(Error::NotInSubalgebra)
        };
    }
    type Class = (u32, Vec<GeneratorSymbol>, u32);
    let mut classes: BTreeMap<Class, SparseVec<Vec<u32>>> = BTreeMap::new();
    for (key, c) in x.terms() {
        let letters: Vec<GeneratorSymbol> = key.word.iter().map(|p| p.1).collect();
        let powers: Vec<u32> = key.word.iter().map(|p| p.0).collect();
        let vdeg = powers.iter().sum();
        classes
            .entry((key.d, letters, vdeg))
            .or_default()
            .insert(powers, c.clone());
    }
    let mut out = ConformalPolynomial::zero();
    for ((d, letters, vdeg), target) in classes {
        let full = letters.len() as u32 * (bound - 1);
        if vdeg > full {
            return Err(Error::NotInSubalgebra);
        }
        let k = letters.len() - 1;
        let b = basis(k, bound, full - vdeg);
        let coeffs = b.echelon.express(&target).ok_or(Error::NotInSubalgebra)?;
        for (idx, c) in b.candidates.iter().zip(coeffs) {
            out.add_term(NormalWord::new(d, letters.clone(), idx.clone()), c);
        }
    }
    Ok(out)
}

/// `p o_n q` computed in the model and expanded in normal words.
pub fn poly_nproduct(
    p: &ConformalPolynomial,
    n: u32,
    q: &ConformalPolynomial,
    bound: u32,
) -> Result<ConformalPolynomial> {
    let x = embed_polynomial(p, bound)?;
    let y = embed_polynomial(q, bound)?;
    to_normal(&free_nproduct(&x, n, &y), bound)
}

/// `a o_n Y` for a letter `a` and an arbitrary polynomial `Y`, moving D out of
/// the right argument with `a o_n D^t y = sum_j C(t,j) n^(j) D^(t-j) (a o_{n-j} y)`.
pub fn left_letter_product(a: GeneratorSymbol, n: u32, y: &ConformalPolynomial) -> ConformalPolynomial {
    let mut out = ConformalPolynomial::zero();
    for (w, c) in y.terms() {
        let t = w.s as u64;
        let base = NormalWord {
            s: 0,
            ..w.clone()
        };
        for j in 0..=t.min(n as u64) {
            let f = big(binomial(t, j) * falling(n as u64, j));
            out.add_term(base.prepend(a, n - j as u32).with_d((t - j) as u32), c * f);
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::int;
    use GeneratorSymbol::{Del, Xi, V};

    fn key(d: u32, word: &[(u32, GeneratorSymbol)]) -> FreeKey {
        FreeKey {
            d,
            word: word.to_vec(),
        }
    }

    #[test]
    fn embed_examples() {
        let a = NormalWord::letter(Xi(1));
        assert_eq!(embed(&a, 2).unwrap(), FreeElement::term(key(0, &[(1, Xi(1))]), int(1)));
        let ab = NormalWord::new(0, vec![Xi(1), Del(1)], vec![1]);
        assert_eq!(
            embed(&ab, 2).unwrap(),
            FreeElement::term(key(0, &[(1, Xi(1)), (0, Del(1))]), int(1))
        );
        let bad = NormalWord::new(0, vec![Xi(1), Del(1)], vec![2]);
        assert!(matches!(embed(&bad, 2), Err(Error::IndexTooLarge { .. })));
        let x = embed(&a, 2).unwrap();
        let y = embed(&NormalWord::letter(Del(1)), 2).unwrap();
        assert!(free_nproduct(&x, 2, &y).is_zero());
    }

    #[test]
    fn c2_in_the_model() {
        let x = FreeElement::term(key(0, &[(2, V), (1, Xi(1))]), int(3));
        let y = FreeElement::term(key(1, &[(2, Del(1)), (3, V)]), int(1));
        for n in 1..5 {
            let lhs = free_nproduct(&x.apply_d(1), n, &y);
            let rhs = free_nproduct(&x, n - 1, &y).scale(&int(-(n as i64)));
            assert_eq!(lhs, rhs);
        }
    }

    #[test]
    fn round_trip_and_rejection() {
        let w1 = NormalWord::new(0, vec![Xi(1), Del(1)], vec![0]);
        let w2 = NormalWord::new(1, vec![Xi(1), Del(1)], vec![1]);
        let mut p = ConformalPolynomial::word(w1);
        p.add_term(w2, int(2));
        let x = embed_polynomial(&p, 2).unwrap();
        assert_eq!(to_normal(&x, 2).unwrap(), p);
        let bare = FreeElement::term(key(0, &[(0, Xi(1))]), int(1));
        assert_eq!(to_normal(&bare, 2), Err(Error::NotInSubalgebra));
    }
}
