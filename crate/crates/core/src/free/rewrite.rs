//! Reduction of conformal polynomials modulo D-free relations.
//!
//! A leading word `f = b_1 o_{m_1} (... b_p)` occurs in a normal word when some
//! contiguous block of letters and inner indices matches it. The word is then
//! the principal part of `D^s (a_1 o_{n_1} ... a_i o_{n_i} (f o_m V))`, with
//! `V` the remaining suffix (absent when the block ends the word).

use std::cmp::Ordering;

use num_traits::{One, Zero};

use super::model::{left_letter_product, poly_nproduct};
use super::{compare, ConformalPolynomial, GeneratorOrder, NormalWord};
use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// A D-free relation with its principal word normalized to coefficient 1.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RewriteRule {
    pub polynomial: ConformalPolynomial,
    pub leading: NormalWord,
}

impl RewriteRule {
    pub fn new(polynomial: &ConformalPolynomial, ord: &GeneratorOrder) -> Result<Self> {
        if !polynomial.is_d_free() {
            return Err(Error::DBearingRule(polynomial.to_string()));
        }
        let (lead, c) = polynomial.leading(ord).ok_or(Error::ZeroRule)?;
        let lead = lead.clone();
        let inv = Scalar::one() / c;
        Ok(RewriteRule {
            polynomial: polynomial.scale(&inv),
            leading: lead,
        })
    }
}

/// Rules together with the order that picked their leading words and the
/// ambient locality bound N of F_N(B).
#[derive(Debug, Clone)]
pub struct RuleSet {
    pub rules: Vec<RewriteRule>,
    pub order: GeneratorOrder,
    pub bound: u32,
}

impl RuleSet {
    pub fn new(rules: Vec<RewriteRule>, order: GeneratorOrder, bound: u32) -> Self {
        RuleSet {
            rules,
            order,
            bound,
        }
    }

    /// Builds rules from polynomials, skipping any that are identically zero.
    pub fn from_polynomials(polys: &[ConformalPolynomial], order: GeneratorOrder, bound: u32) -> Result<Self> {
        let mut rules = Vec::new();
        for p in polys {
            if p.is_zero() {
                continue;
            }
            rules.push(RewriteRule::new(p, &order)?);
        }
        Ok(Self::new(rules, order, bound))
    }
}

/// Start positions of `lead` inside `w`.
pub fn occurrences(w: &NormalWord, lead: &NormalWord) -> Vec<usize> {
    let p = lead.letters.len();
    if p > w.letters.len() {
        return Vec::new();
    }
    (0..=w.letters.len() - p)
        .filter(|&i| {
            w.letters[i..i + p] == lead.letters[..] && w.indices[i..i + p - 1] == lead.indices[..]
        })
        .collect()
}

fn find_occurrence(w: &NormalWord, rules: &RuleSet) -> Option<(usize, usize)> {
    for (r, rule) in rules.rules.iter().enumerate() {
        if let Some(&pos) = occurrences(w, &rule.leading).first() {
            return Some((r, pos));
        }
    }
    None
}

/// The polynomial `D^s (a_1 o_{n_1} ... (f o_m V))` whose principal word is `w`.
pub fn context(rule: &RewriteRule, w: &NormalWord, start: usize, bound: u32) -> Result<ConformalPolynomial> {
    let end = start + rule.leading.letters.len() - 1;
    let mut inner = if end + 1 == w.letters.len() {
        rule.polynomial.clone()
    } else {
        poly_nproduct(
            &rule.polynomial,
            w.indices[end],
            &ConformalPolynomial::word(w.suffix(end + 1)),
            bound,
        )?
    };
    for i in (0..start).rev() {
        inner = left_letter_product(w.letters[i], w.indices[i], &inner);
    }
    Ok(inner.apply_d(w.s))
}

pub fn is_reduced(w: &NormalWord, rules: &RuleSet) -> bool {
    find_occurrence(w, rules).is_none()
}

/// Rewrites the greatest reducible word until none is left.
pub fn reduce(p: &ConformalPolynomial, rules: &RuleSet) -> Result<ConformalPolynomial> {
    let ord = &rules.order;
    let mut cur = p.clone();
    loop {
        let target = cur
            .terms()
            .iter()
            .filter_map(|(w, c)| find_occurrence(w, rules).map(|hit| (w, c, hit)))
            .max_by(|a, b| compare(a.0, b.0, ord));
        let Some((w, c, (r, pos))) = target else {
            return Ok(cur);
        };
        let (w, c) = (w.clone(), c.clone());
        let ctx = context(&rules.rules[r], &w, pos, rules.bound)?;
        assert!(ctx.coeff(&w).is_one(), "principal word of a rewrite must be {w}");
        for other in ctx.terms().keys() {
            assert!(
                other == &w || compare(other, &w, ord) == Ordering::Less,
                "rewrite of {w} produced the larger word {other}"
            );
        }
        cur.add_scaled(&ctx, &-c);
        debug_assert!(cur.coeff(&w).is_zero());
    }
}

/// Intersection composition `(f, g)_w`: the overlap word rewritten once by
/// each rule, subtracted. The two occurrences must overlap and cover `w`.
pub fn composition_intersection(
    f: &RewriteRule,
    g: &RewriteRule,
    w: &NormalWord,
    rules: &RuleSet,
) -> Result<ConformalPolynomial> {
    if w.s != 0 {
        return Err(Error::InvalidOverlap(format!("{w} carries a D-power")));
    }
    let len = w.letters.len();
    let pf = f.leading.letters.len();
    let pg = g.leading.letters.len();
    for i in occurrences(w, &f.leading) {
        for j in occurrences(w, &g.leading) {
            let overlap = i.max(j) < (i + pf).min(j + pg);
            let covers = i.min(j) == 0 && (i + pf).max(j + pg) == len;
            if overlap && covers {
                let a = context(f, w, i, rules.bound)?;
                let b = context(g, w, j, rules.bound)?;
                return Ok(a.sub(&b));
            }
        }
    }
    Err(Error::InvalidOverlap(format!(
        "{w} is not an overlap of {} and {}",
        f.leading, g.leading
    )))
}

/// Scalar multiple check used by tests and reports: `p = c q` for some c.
pub fn proportional(p: &ConformalPolynomial, q: &ConformalPolynomial) -> Option<Scalar> {
    let (w, c) = q.terms().iter().next()?;
    let ratio = p.coeff(w) / c;
    (p.sub(&q.scale(&ratio)).is_zero()).then_some(ratio)
}
