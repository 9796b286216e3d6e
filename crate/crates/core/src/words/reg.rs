//! Regularization maps: constant terms with respect to S = S⁰[ξ0] and
//! S = S¹⁰[ξ0, ξ1].
//!
//! `reg0` and `reg10` use the signed closed forms; `reg0_decomp` and
//! `reg10_decomp` solve the triangular recomposition system by elimination
//! and serve as independent oracles for them.

use std::collections::BTreeMap;

use super::poly::{rat, WordPoly};
use super::word::{Letter, Word};

fn sign(j: usize) -> i64 {
    if j.is_multiple_of(2) {
        1
    } else {
        -1
    }
}

fn l0_power(n: usize) -> WordPoly {
    WordPoly::from(Word::power(Letter::L0, n))
}

fn l1_power(n: usize) -> WordPoly {
    WordPoly::from(Word::power(Letter::L1, n))
}

/// Closed form Σ_j (−1)^j (uξ0^{n−j}) ⧢ ξ0^j for the word w = uξ0ⁿ, u ∈ S⁰.
pub fn reg0_word(w: Word) -> WordPoly {
    let n = w.trailing_l0();
    let u = w.slice(0, w.len() - n);
    let mut out = WordPoly::zero();
    for j in 0..=n {
        let head = WordPoly::from(u.concat(Word::power(Letter::L0, n - j)));
        out += &head.shuffle(&l0_power(j)).scale(&rat(sign(j)));
    }
    out
}

pub fn reg0(p: &WordPoly) -> WordPoly {
    p.map_linear(|w| {
        if w.is_s0() {
            WordPoly::from(*w)
        } else {
            reg0_word(*w)
        }
    })
}

/// Components `w_j ∈ S⁰` with `w = Σ_j w_j ⧢ ξ0^j`, from the closed form
/// (`w_j = reg⁰(uξ0^{n−j})`).
pub fn reg0_components_word(w: Word) -> Vec<WordPoly> {
    let n = w.trailing_l0();
    let u = w.slice(0, w.len() - n);
    (0..=n)
        .map(|j| reg0_word(u.concat(Word::power(Letter::L0, n - j))))
        .collect()
}

pub fn reg0_components(p: &WordPoly) -> Vec<WordPoly> {
    let mut out: Vec<WordPoly> = Vec::new();
    for (w, c) in p.iter() {
        for (j, comp) in reg0_components_word(*w).into_iter().enumerate() {
            if out.len() <= j {
                out.resize(j + 1, WordPoly::zero());
            }
            out[j] += &comp.scale(c);
        }
    }
    if out.is_empty() {
        out.push(WordPoly::zero());
    }
    out
}

/// Decomposition S = S⁰[ξ0] by elimination: repeatedly removes the term
/// with the most trailing ξ0 letters, whose shuffle `u ⧢ ξ0ⁿ` has that
/// word as its unique leading term.
pub fn reg0_decomp(p: &WordPoly) -> Vec<WordPoly> {
    let mut rest = p.clone();
    let mut comps: Vec<WordPoly> = vec![WordPoly::zero()];
    loop {
        let lead = rest
            .iter()
            .map(|(w, c)| (w.trailing_l0(), *w, c.clone()))
            .filter(|(n, _, _)| *n > 0)
            .max_by_key(|(n, w, _)| (*n, *w));
        let Some((n, w, c)) = lead else { break };
        let u = WordPoly::from(w.slice(0, w.len() - n));
        if comps.len() <= n {
            comps.resize(n + 1, WordPoly::zero());
        }
        comps[n] += &u.scale(&c);
        rest -= &u.shuffle(&l0_power(n)).scale(&c);
    }
    comps[0] = rest;
    comps
}

/// reg¹ = t* ∘ reg⁰ ∘ t*.
pub fn reg1(p: &WordPoly) -> WordPoly {
    reg0(&p.t_star()).t_star()
}

/// Splits w = ξ1^m v ξ0^n with v ∈ S¹⁰.
pub fn s10_shape(w: Word) -> (usize, Word, usize) {
    let m = w.leading_l1();
    if m == w.len() {
        return (m, Word::EMPTY, 0);
    }
    let n = w.trailing_l0();
    (m, w.slice(m, w.len() - n), n)
}

/// Closed form Σ_{i,j} (−1)^{i+j} ξ1^i ⧢ (ξ1^{m−i} v ξ0^{n−j}) ⧢ ξ0^j.
pub fn reg10_word(w: Word) -> WordPoly {
    let (m, v, n) = s10_shape(w);
    let mut out = WordPoly::zero();
    for i in 0..=m {
        for j in 0..=n {
            let mid = Word::power(Letter::L1, m - i)
                .concat(v)
                .concat(Word::power(Letter::L0, n - j));
            let term = l1_power(i)
                .shuffle(&WordPoly::from(mid))
                .shuffle(&l0_power(j));
            out += &term.scale(&rat(sign(i + j)));
        }
    }
    out
}

pub fn reg10(p: &WordPoly) -> WordPoly {
    p.map_linear(|w| {
        if w.is_s10() {
            WordPoly::from(*w)
        } else {
            reg10_word(*w)
        }
    })
}

/// Decomposition S = S¹⁰[ξ0, ξ1] by elimination, keyed by the exponents
/// `(i, j)` of `ξ1^i ⧢ w_ij ⧢ ξ0^j`. The `(0, 0)` entry is reg¹⁰.
pub fn reg10_decomp(p: &WordPoly) -> BTreeMap<(usize, usize), WordPoly> {
    let mut rest = p.clone();
    let mut comps: BTreeMap<(usize, usize), WordPoly> = BTreeMap::new();
    loop {
        let lead = rest
            .iter()
            .map(|(w, c)| (s10_shape(*w), *w, c.clone()))
            .filter(|((m, _, n), _, _)| m + n > 0)
            .max_by_key(|((m, _, n), w, _)| (m + n, *w));
        let Some(((m, v, n), _, c)) = lead else { break };
        let v = WordPoly::from(v);
        *comps.entry((m, n)).or_default() += &v.scale(&c);
        rest -= &l1_power(m).shuffle(&v).shuffle(&l0_power(n)).scale(&c);
    }
    comps.insert((0, 0), rest);
    comps
}
