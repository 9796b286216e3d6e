//! Exhaustive exact checks of the algebraic laws of S(ξ0, ξ1) up to a
//! given weight.

use std::collections::HashMap;

use super::poly::{rat, shuffle_words, WordPoly};
use super::reg::{reg0, reg0_decomp, reg0_word, reg10, reg10_decomp, s10_shape};
use super::word::{Letter, Word};

/// Outcome of one law over all cases up to the weight bound.
#[derive(Debug, Clone, PartialEq)]
pub struct LawCheck {
    pub name: &'static str,
    pub cases: usize,
    pub failures: usize,
    pub first_failure: Option<String>,
}

impl LawCheck {
    fn new(name: &'static str) -> Self {
        LawCheck {
            name,
            cases: 0,
            failures: 0,
            first_failure: None,
        }
    }

    fn record(&mut self, ok: bool, case: impl FnOnce() -> String) {
        self.cases += 1;
        if !ok {
            self.failures += 1;
            if self.first_failure.is_none() {
                self.first_failure = Some(case());
            }
        }
    }

    pub fn passed(&self) -> bool {
        self.failures == 0
    }
}

type IntPoly = HashMap<Word, u64>;

fn shuffle_int(p: &IntPoly, w: Word) -> IntPoly {
    let mut out = IntPoly::new();
    for (u, c) in p {
        for (x, d) in shuffle_words(*u, w) {
            *out.entry(x).or_default() += c * d;
        }
    }
    out
}

fn pairs(max_weight: usize) -> impl Iterator<Item = (Word, Word)> {
    Word::all_up_to(max_weight)
        .flat_map(move |u| Word::all_up_to(max_weight - u.weight()).map(move |v| (u, v)))
}

fn l0_power(n: usize) -> WordPoly {
    WordPoly::from(Word::power(Letter::L0, n))
}

fn l1_power(n: usize) -> WordPoly {
    WordPoly::from(Word::power(Letter::L1, n))
}

pub fn shuffle_commutative(n: usize) -> LawCheck {
    let mut c = LawCheck::new("shuffle commutativity");
    for (u, v) in pairs(n) {
        c.record(shuffle_words(u, v) == shuffle_words(v, u), || {
            format!("{u} ⧢ {v}")
        });
    }
    c
}

pub fn shuffle_associative(n: usize) -> LawCheck {
    let mut c = LawCheck::new("shuffle associativity");
    for (u, v) in pairs(n) {
        let uv: IntPoly = shuffle_words(u, v);
        for w in Word::all_up_to(n - u.weight() - v.weight()) {
            let left = shuffle_int(&uv, w);
            let vw: IntPoly = shuffle_words(v, w);
            let mut right = IntPoly::new();
            for (x, d) in vw {
                for (y, e) in shuffle_words(u, x) {
                    *right.entry(y).or_default() += d * e;
                }
            }
            c.record(left == right, || format!("({u} ⧢ {v}) ⧢ {w}"));
        }
    }
    c
}

pub fn shuffle_unit(n: usize) -> LawCheck {
    let mut c = LawCheck::new("shuffle unit");
    for u in Word::all_up_to(n) {
        let p = WordPoly::one().shuffle(&WordPoly::from(u));
        c.record(p == WordPoly::from(u), || u.to_string());
    }
    c
}

/// Σ_{uv=w} ρ*(u) ⧢ v = 0 for w ≠ 𝟙, and ρ* is an involutive homomorphism.
pub fn antipode_laws(n: usize) -> LawCheck {
    let mut c = LawCheck::new("antipode");
    for w in Word::all_up_to(n) {
        let mut acc = WordPoly::zero();
        for (u, v) in w.deconcat_splits() {
            acc += &WordPoly::from(u).antipode().shuffle(&WordPoly::from(v));
        }
        let expected = if w.is_empty() {
            WordPoly::one()
        } else {
            WordPoly::zero()
        };
        c.record(acc == expected, || format!("convolution at {w}"));
        let p = WordPoly::from(w);
        c.record(p.antipode().antipode() == p, || {
            format!("involution at {w}")
        });
    }
    for (u, v) in pairs(n) {
        let (pu, pv) = (WordPoly::from(u), WordPoly::from(v));
        c.record(
            pu.shuffle(&pv).antipode() == pu.antipode().shuffle(&pv.antipode()),
            || format!("{u} ⧢ {v}"),
        );
    }
    c
}

/// τ and t* are involutive shuffle automorphisms with τ = ρ* ∘ t*.
pub fn involution_laws(n: usize) -> LawCheck {
    let mut c = LawCheck::new("τ, t*, ρ*");
    for w in Word::all_up_to(n) {
        let p = WordPoly::from(w);
        c.record(p.tau().tau() == p, || format!("τ² at {w}"));
        c.record(p.t_star().t_star() == p, || format!("t*² at {w}"));
        c.record(p.t_star().antipode() == p.tau(), || {
            format!("ρ*t* = τ at {w}")
        });
        c.record(p.antipode().t_star() == p.tau(), || {
            format!("t*ρ* = τ at {w}")
        });
    }
    for (u, v) in pairs(n) {
        let (pu, pv) = (WordPoly::from(u), WordPoly::from(v));
        let s = pu.shuffle(&pv);
        c.record(s.tau() == pu.tau().shuffle(&pv.tau()), || {
            format!("τ({u} ⧢ {v})")
        });
        c.record(s.t_star() == pu.t_star().shuffle(&pv.t_star()), || {
            format!("t*({u} ⧢ {v})")
        });
    }
    c
}

/// Closed form against elimination, the recomposition
/// uξ0ⁿ = Σ_j reg⁰(uξ0^{n−j}) ⧢ ξ0^j, image in S⁰, and multiplicativity.
pub fn reg0_laws(n: usize) -> LawCheck {
    let mut c = LawCheck::new("reg⁰");
    for w in Word::all_up_to(n) {
        let p = WordPoly::from(w);
        let closed = reg0(&p);
        c.record(closed == reg0_decomp(&p)[0], || {
            format!("closed form vs elimination at {w}")
        });
        c.record(closed.is_in_s0(), || format!("image at {w}"));
        let k = w.trailing_l0();
        let u = w.slice(0, w.len() - k);
        let mut recomposed = WordPoly::zero();
        for j in 0..=k {
            recomposed +=
                &reg0_word(u.concat(Word::power(Letter::L0, k - j))).shuffle(&l0_power(j));
        }
        c.record(recomposed == p, || format!("recomposition at {w}"));
    }
    for (u, v) in pairs(n) {
        let (pu, pv) = (WordPoly::from(u), WordPoly::from(v));
        c.record(
            reg0(&pu.shuffle(&pv)) == reg0(&pu).shuffle(&reg0(&pv)),
            || format!("{u} ⧢ {v}"),
        );
    }
    c
}

/// Closed form against elimination, the recomposition
/// ξ1^m u ξ0ⁿ = Σ_{i,j} ξ1^i ⧢ reg¹⁰(ξ1^{m−i} u ξ0^{n−j}) ⧢ ξ0^j, image in
/// S¹⁰, commutation with τ, and multiplicativity.
pub fn reg10_laws(n: usize) -> LawCheck {
    let mut c = LawCheck::new("reg¹⁰");
    for w in Word::all_up_to(n) {
        let p = WordPoly::from(w);
        let closed = reg10(&p);
        let decomp = reg10_decomp(&p);
        c.record(
            Some(&closed) == decomp.get(&(0, 0)).or(Some(&WordPoly::zero())),
            || format!("closed form vs elimination at {w}"),
        );
        c.record(closed.is_in_s10(), || format!("image at {w}"));
        c.record(reg10(&p.tau()) == closed.tau(), || {
            format!("τ-equivariance at {w}")
        });
        let (m, v, k) = s10_shape(w);
        let mut recomposed = WordPoly::zero();
        for i in 0..=m {
            for j in 0..=k {
                let mid = Word::power(Letter::L1, m - i)
                    .concat(v)
                    .concat(Word::power(Letter::L0, k - j));
                recomposed += &l1_power(i)
                    .shuffle(&reg10(&WordPoly::from(mid)))
                    .shuffle(&l0_power(j));
            }
        }
        c.record(recomposed == p, || format!("recomposition at {w}"));
    }
    for (u, v) in pairs(n) {
        let (pu, pv) = (WordPoly::from(u), WordPoly::from(v));
        c.record(
            reg10(&pu.shuffle(&pv)) == reg10(&pu).shuffle(&reg10(&pv)),
            || format!("{u} ⧢ {v}"),
        );
    }
    c.record(
        reg10(&WordPoly::from(Word::letter(Letter::L0))).is_zero(),
        || "ξ0".into(),
    );
    c.record(
        reg10(&WordPoly::from("101".parse::<Word>().unwrap()))
            == WordPoly::from("011".parse::<Word>().unwrap()).scale(&rat(-2)),
        || "ξ1ξ0ξ1".into(),
    );
    c
}

/// All laws at weight ≤ `n`.
pub fn check_all(n: usize) -> Vec<LawCheck> {
    vec![
        shuffle_commutative(n),
        shuffle_associative(n),
        shuffle_unit(n),
        antipode_laws(n),
        involution_laws(n),
        reg0_laws(n),
        reg10_laws(n),
    ]
}
