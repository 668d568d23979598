//! Relations of the universal envelope of W_n for the locality N_2, as
//! associative conformal polynomials in F_2(B).

use super::rewrite::{RewriteRule, RuleSet};
use super::{ConformalPolynomial, GeneratorOrder, NormalWord};
use crate::error::Result;
use crate::scalar::int;
use crate::symbol::GeneratorSymbol::{self, Del, Xi, V};
use crate::wk::LocalityTable;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NamedPolynomial {
    pub label: String,
    pub polynomial: ConformalPolynomial,
}

fn w2(a: GeneratorSymbol, n: u32, b: GeneratorSymbol) -> NormalWord {
    NormalWord::new(0, vec![a, b], vec![n])
}

fn w3(a: GeneratorSymbol, n: u32, b: GeneratorSymbol, m: u32, c: GeneratorSymbol) -> NormalWord {
    NormalWord::new(0, vec![a, b, c], vec![n, m])
}

fn letter(a: GeneratorSymbol) -> NormalWord {
    NormalWord::letter(a)
}

fn poly(terms: Vec<(NormalWord, i64)>) -> ConformalPolynomial {
    ConformalPolynomial::from_terms(terms.into_iter().map(|(w, c)| (w, int(c))))
}

fn named(family: &str, p: ConformalPolynomial) -> NamedPolynomial {
    NamedPolynomial {
        label: format!("{family}: {p}"),
        polynomial: p,
    }
}

/// The relations read off from the defining relations of W_n for the
/// locality N_2. Each polynomial is meant to vanish.
pub fn initial_relations(n: usize) -> Vec<NamedPolynomial> {
    let mut out = Vec::new();
    for i in 1..=n {
        for j in 1..=n {
            let mut p = poly(vec![(w2(Del(i), 0, Xi(j)), 1), (w2(Xi(j), 0, Del(i)), 1)]);
            if i == j {
                p.add_term(letter(V), int(-1));
            }
            out.push(named("del-xi anticommutator", p));
        }
    }
    for i in 1..=n {
        for j in 1..=n {
            if i == j {
                continue;
            }
            let mut p = poly(vec![(w2(Xi(i), 0, Xi(j)), 2), (w2(Xi(j), 0, Xi(i)), 2)]);
            p.add_scaled(
                &poly(vec![(w2(Xi(i), 1, Xi(j)), 1), (w2(Xi(j), 1, Xi(i)), 1)]).apply_d(1),
                &int(-1),
            );
            out.push(named("xi-xi symmetric part", p));
            out.push(named(
                "del-del anticommutator",
                poly(vec![(w2(Del(i), 0, Del(j)), 1), (w2(Del(j), 0, Del(i)), 1)]),
            ));
        }
    }
    for i in 1..=n {
        let dxi = ConformalPolynomial::word(letter(Xi(i))).apply_d(1);
        let mut p = poly(vec![(w2(V, 0, Xi(i)), 1), (w2(Xi(i), 0, V), -1)]);
        p.add_scaled(&ConformalPolynomial::word(w2(Xi(i), 1, V)).apply_d(1), &int(1));
        p.add_scaled(&dxi, &int(-1));
        out.push(named("v-xi zero product", p));

        let mut p = poly(vec![(w2(Xi(i), 0, V), 1), (w2(V, 0, Xi(i)), -1)]);
        p.add_scaled(&ConformalPolynomial::word(w2(V, 1, Xi(i))).apply_d(1), &int(1));
        p.add_scaled(&dxi, &int(-1));
        out.push(named("xi-v zero product", p));

        out.push(named(
            "v-xi first product",
            poly(vec![(w2(Xi(i), 1, V), 1), (w2(V, 1, Xi(i)), 1), (letter(Xi(i)), -2)]),
        ));
        out.push(named(
            "del-v commutator",
            poly(vec![(w2(Del(i), 0, V), 1), (w2(V, 0, Del(i)), -1)]),
        ));
        out.push(named(
            "del-v first product",
            poly(vec![(w2(Del(i), 1, V), 1), (letter(Del(i)), -1)]),
        ));
    }
    out.push(named("v-v first product", poly(vec![(w2(V, 1, V), 1), (letter(V), -1)])));
    out
}

/// Consequences of the initial relations obtained by compositions.
pub fn derived_relations(n: usize) -> Vec<NamedPolynomial> {
    let mut out = Vec::new();
    for i in 1..=n {
        for j in (i + 1)..=n {
            out.push(named(
                "xi-xi zero product",
                poly(vec![(w2(Xi(i), 0, Xi(j)), 1), (w2(Xi(j), 0, Xi(i)), 1)]),
            ));
            out.push(named(
                "xi-xi first product",
                poly(vec![(w2(Xi(i), 1, Xi(j)), 1), (w2(Xi(j), 1, Xi(i)), 1)]),
            ));
        }
    }
    for i in 1..=n {
        out.push(named(
            "v-xi commute",
            poly(vec![(w2(V, 0, Xi(i)), 1), (w2(Xi(i), 0, V), -1)]),
        ));
        out.push(named("xi-v unit", poly(vec![(w2(Xi(i), 1, V), 1), (letter(Xi(i)), -1)])));
        out.push(named("v-xi unit", poly(vec![(w2(V, 1, Xi(i)), 1), (letter(Xi(i)), -1)])));
    }
    for i in 1..=n {
        for j in (i + 1)..=n {
            for k in (j + 1)..=n {
                out.push(named(
                    "xi triple",
                    poly(vec![
                        (w3(Xi(i), 1, Xi(j), 0, Xi(k)), 1),
                        (w3(Xi(i), 0, Xi(j), 1, Xi(k)), -2),
                    ]),
                ));
            }
        }
    }
    for i in 1..=n {
        for j in (i + 1)..=n {
            out.push(named(
                "xi-xi-v",
                poly(vec![(w3(Xi(i), 1, Xi(j), 0, V), 1), (w2(Xi(i), 0, Xi(j)), -2)]),
            ));
        }
    }
    for i in 1..=n {
        for j in 1..=n {
            out.push(named(
                "del-xi-v",
                poly(vec![(w3(Del(i), 1, Xi(j), 0, V), 1), (w2(Del(i), 0, Xi(j)), -2)]),
            ));
        }
    }
    for k in 1..=n {
        for i in 1..=n {
            for j in (i + 1)..=n {
                out.push(named(
                    "del-xi-xi",
                    poly(vec![
                        (w3(Del(k), 1, Xi(i), 0, Xi(j)), 1),
                        (w3(Del(k), 0, Xi(i), 1, Xi(j)), -2),
                    ]),
                ));
            }
        }
    }
    out
}

/// `a o_m b` for every pair and every `table(a, b) <= m < bound`.
pub fn vanishing_relations(table: &LocalityTable<GeneratorSymbol>, bound: u32) -> Vec<ConformalPolynomial> {
    let mut out = Vec::new();
    for ((a, b), &t) in &table.entries {
        for m in t..bound {
            out.push(ConformalPolynomial::word(w2(*a, m, *b)));
        }
    }
    out
}

pub fn vanishing_rules(
    table: &LocalityTable<GeneratorSymbol>,
    bound: u32,
    ord: &GeneratorOrder,
) -> Result<Vec<RewriteRule>> {
    vanishing_relations(table, bound)
        .iter()
        .map(|p| RewriteRule::new(p, ord))
        .collect()
}

/// The D-free relation set used for reduction under the order
/// `v > xi_n > ... > xi_1 > del_n > ... > del_1`, with the locality N_2
/// imposed through vanishing rules inside F_2(B).
pub fn s2_rules(n: usize) -> Result<RuleSet> {
    let ord = GeneratorOrder::s2(n);
    let bound = 2;
    let mut polys: Vec<ConformalPolynomial> = initial_relations(n)
        .into_iter()
        .map(|r| r.polynomial)
        .filter(|p| p.is_d_free())
        .collect();
    polys.extend(derived_relations(n).into_iter().map(|r| r.polynomial));
    let table = crate::wk::printed_w_table(crate::symbol::Embedding::phi2(n));
    polys.extend(vanishing_relations(&table, bound));
    RuleSet::from_polynomials(&polys, ord, bound)
}
