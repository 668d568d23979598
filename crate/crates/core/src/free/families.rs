//! The reduced-word families of the two universal envelopes of W_n.
//!
//! Letters inside a block always carry strictly increasing indices; `J` is the
//! del block and `I` the xi block.

use super::NormalWord;
use crate::grassmann::{all_subsets, members, IndexSet};
use crate::symbol::GeneratorSymbol::{self, Del, Xi, V};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum S2Family {
    /// `del_J o0 xi_I o0 v o0 ... o0 v` with `m >= 1` trailing v's
    Tail { v_count: usize },
    /// `del_J o0 xi_I` where the first `r - 1` xi joints are `o0` and the rest `o1`
    Mixed { r: usize },
    /// `del_J o1 xi_I` with all xi joints `o1`; `J` nonempty
    Pure,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct S2Shape {
    pub family: S2Family,
    pub del: IndexSet,
    pub xi: IndexSet,
    pub t: u32,
}

fn block(set: IndexSet, f: fn(usize) -> GeneratorSymbol) -> Vec<GeneratorSymbol> {
    members(set).into_iter().map(f).collect()
}

/// The D-free word of a shape.
pub fn s2_word(shape: &S2Shape) -> NormalWord {
    let dels = block(shape.del, Del);
    let xis = block(shape.xi, Xi);
    let (k, s) = (dels.len(), xis.len());
    let mut letters = dels;
    letters.extend(xis);
    let mut indices: Vec<u32> = vec![0; k.saturating_sub(1)];
    match shape.family {
        S2Family::Tail { v_count } => {
            letters.extend(std::iter::repeat_n(V, v_count));
            indices = vec![0; letters.len() - 1];
        }
        S2Family::Mixed { r } => {
            if k > 0 {
                indices.push(0);
            }
            indices.extend(std::iter::repeat_n(0, r - 1));
            indices.extend(std::iter::repeat_n(1, s - r));
        }
        S2Family::Pure => {
            if s > 0 {
                indices.push(1);
                indices.extend(std::iter::repeat_n(1, s - 1));
            }
        }
    }
    NormalWord::new(shape.t, letters, indices)
}

fn s2_shapes(n: usize, t_max: u32, len_max: usize) -> Vec<S2Shape> {
    let mut out = Vec::new();
    for del in all_subsets(n) {
        for xi in all_subsets(n) {
            let k = del.count_ones() as usize;
            let s = xi.count_ones() as usize;
            let mut families = Vec::new();
            for v_count in 1..=len_max.saturating_sub(k + s) {
                families.push(S2Family::Tail { v_count });
            }
            if k + s <= len_max {
                for r in 1..=s {
                    families.push(S2Family::Mixed { r });
                }
                if k > 0 {
                    families.push(S2Family::Pure);
                }
            }
            for family in families {
                for t in 0..=t_max {
                    out.push(S2Shape { family, del, xi, t });
                }
            }
        }
    }
    out
}

/// All reduced words of the N_2 envelope with D-power at most `t_max` and at
/// most `len_max` letters.
pub fn enumerate_s2_words(n: usize, t_max: u32, len_max: usize) -> Vec<NormalWord> {
    s2_shapes(n, t_max, len_max).iter().map(s2_word).collect()
}

/// Recognizes a word of one of the three reduced families.
pub fn classify_s2(w: &NormalWord) -> Option<S2Shape> {
    let (mut del, mut xi): (IndexSet, IndexSet) = (0, 0);
    let mut v_count = 0;
    let (mut last_del, mut last_xi) = (0, 0);
    for &g in &w.letters {
        match g {
            Del(j) if xi == 0 && v_count == 0 && j > last_del => {
                del |= 1 << (j - 1);
                last_del = j;
            }
            Xi(i) if v_count == 0 && i > last_xi => {
                xi |= 1 << (i - 1);
                last_xi = i;
            }
            V => v_count += 1,
            _ => return None,
        }
    }
    let k = del.count_ones() as usize;
    let s = xi.count_ones() as usize;
    let mut candidates = Vec::new();
    if v_count > 0 {
        candidates.push(S2Family::Tail { v_count });
    } else {
        candidates.extend((1..=s).map(|r| S2Family::Mixed { r }));
        if k > 0 {
            candidates.push(S2Family::Pure);
        }
    }
    candidates.into_iter().find_map(|family| {
        let shape = S2Shape {
            family,
            del,
            xi,
            t: w.s,
        };
        (s2_word(&shape) == *w).then_some(shape)
    })
}

/// All words of the reduced families for the N_1 envelope.
pub fn enumerate_s1_words(n: usize, t_max: u32, len_max: usize) -> Vec<NormalWord> {
    let mut base = Vec::new();
    for xi in all_subsets(n) {
        for del in all_subsets(n) {
            let xis = block(xi, Xi);
            let dels = block(del, Del);
            let (s, q) = (xis.len(), dels.len());
            let mut body = xis.clone();
            body.extend(dels.iter().copied());
            // leading v's, everything joined by o0
            for a in 1..=len_max.saturating_sub(s + q) {
                let mut letters = vec![V; a];
                letters.extend(body.iter().copied());
                let len = letters.len();
                base.push(NormalWord::new(0, letters, vec![0; len - 1]));
            }
            if s + q == 0 || s + q > len_max {
                continue;
            }
            // r leading o0 joints among the xi part, the remaining xi joints o1
            for r in 1..=s {
                let mut indices = Vec::new();
                if q > 0 {
                    indices.extend(std::iter::repeat_n(0, r));
                    indices.extend(std::iter::repeat_n(1, s - r));
                    indices.extend(std::iter::repeat_n(0, q - 1));
                } else {
                    indices.extend(std::iter::repeat_n(0, r - 1));
                    indices.extend(std::iter::repeat_n(1, s - r));
                }
                base.push(NormalWord::new(0, body.clone(), indices));
            }
            if q > 0 {
                let mut indices = vec![1; s];
                indices.extend(std::iter::repeat_n(0, q - 1));
                base.push(NormalWord::new(0, body.clone(), indices));
            }
        }
    }
    let mut out = Vec::new();
    for w in base {
        for t in 0..=t_max {
            out.push(w.with_d(t));
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::HashSet;

    #[test]
    fn s2_families_are_disjoint_and_classified() {
        for n in 1..=2 {
            let words = enumerate_s2_words(n, 1, 5);
            let set: HashSet<_> = words.iter().cloned().collect();
            assert_eq!(set.len(), words.len());
            for w in &words {
                let shape = classify_s2(w).expect("enumerated words classify");
                assert_eq!(&s2_word(&shape), w);
            }
        }
    }

    #[test]
    fn s2_small_words() {
        let words = enumerate_s2_words(1, 0, 2);
        let expected = [
            NormalWord::letter(V),
            NormalWord::letter(Xi(1)),
            NormalWord::letter(Del(1)),
            NormalWord::new(0, vec![V, V], vec![0]),
            NormalWord::new(0, vec![Xi(1), V], vec![0]),
            NormalWord::new(0, vec![Del(1), V], vec![0]),
            NormalWord::new(0, vec![Del(1), Xi(1)], vec![0]),
            NormalWord::new(0, vec![Del(1), Xi(1)], vec![1]),
        ];
        assert_eq!(words.len(), expected.len());
        for w in expected {
            assert!(words.contains(&w), "missing {w:?}");
        }
    }

    #[test]
    fn s1_words_are_distinct() {
        for n in 1..=2 {
            let words = enumerate_s1_words(n, 1, 4);
            let set: HashSet<_> = words.iter().cloned().collect();
            assert_eq!(set.len(), words.len());
        }
    }

    #[test]
    fn non_family_word_is_rejected() {
        let w = NormalWord::new(0, vec![Xi(1), Del(1)], vec![0]);
        assert!(classify_s2(&w).is_none());
        let w = NormalWord::new(0, vec![Del(1), Xi(1), V], vec![1, 0]);
        assert!(classify_s2(&w).is_none());
    }
}
