//! Truncated non-commutative power series in X0, X1.
//!
//! Coefficients are stored densely over every word of weight ≤ N, indexed
//! by the canonical word order. The scalar type is generic so the same code
//! runs over exact rationals (algebraic laws) and complex doubles (analytic
//! checks).

use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::words::{shuffle_words, Word};

/// Largest supported truncation order.
pub const MAX_ORDER: usize = 10;
pub const DEFAULT_ORDER: usize = 6;

pub trait Scalar:
    Clone
    + PartialEq
    + Zero
    + One
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Neg<Output = Self>
    + std::fmt::Debug
{
    fn from_i64(n: i64) -> Self;
    /// Multiplicative inverse, `None` for zero.
    fn inverse(&self) -> Option<Self>;
    /// Absolute value as a double, used for tolerance checks.
    fn magnitude(&self) -> f64;
    fn json_entry(&self, word: &Word) -> Value;
    fn from_json_entry(v: &Value) -> Result<Self>;
}

impl Scalar for BigRational {
    fn from_i64(n: i64) -> Self {
        BigRational::from_integer(BigInt::from(n))
    }

    fn inverse(&self) -> Option<Self> {
        (!self.is_zero()).then(|| self.recip())
    }

    fn magnitude(&self) -> f64 {
        self.to_f64().map(f64::abs).unwrap_or(f64::INFINITY)
    }

    fn json_entry(&self, word: &Word) -> Value {
        let num = self
            .numer()
            .to_i64()
            .map(Value::from)
            .unwrap_or_else(|| self.numer().to_string().into());
        let den = self
            .denom()
            .to_i64()
            .map(Value::from)
            .unwrap_or_else(|| self.denom().to_string().into());
        json!({"word": word.to_bit_string(), "num": num, "den": den})
    }

    fn from_json_entry(v: &Value) -> Result<Self> {
        let int = |x: &Value| -> Result<BigInt> {
            x.as_i64()
                .map(BigInt::from)
                .or_else(|| x.as_str().and_then(|s| s.parse().ok()))
                .ok_or_else(|| Error::Parse(format!("bad integer {x}")))
        };
        let den = int(&v["den"])?;
        if den.is_zero() {
            return Err(Error::Parse("zero denominator".into()));
        }
        Ok(BigRational::new(int(&v["num"])?, den))
    }
}

impl Scalar for Complex64 {
    fn from_i64(n: i64) -> Self {
        Complex64::new(n as f64, 0.0)
    }

    fn inverse(&self) -> Option<Self> {
        (!self.is_zero()).then(|| self.inv())
    }

    fn magnitude(&self) -> f64 {
        self.norm()
    }

    fn json_entry(&self, word: &Word) -> Value {
        json!({"word": word.to_bit_string(), "re": self.re, "im": self.im})
    }

    fn from_json_entry(v: &Value) -> Result<Self> {
        let re = v["re"]
            .as_f64()
            .ok_or_else(|| Error::Parse("missing re".into()))?;
        let im = v["im"].as_f64().unwrap_or(0.0);
        Ok(Complex64::new(re, im))
    }
}

fn word_count(order: usize) -> usize {
    (1usize << (order + 1)) - 1
}

/// Element of ℂ⟨⟨X0, X1⟩⟩ modulo words of weight > `order`.
#[derive(Debug, Clone, PartialEq)]
pub struct NcSeries<S> {
    order: usize,
    coeffs: Vec<S>,
}

pub type RationalSeries = NcSeries<BigRational>;
pub type ComplexSeries = NcSeries<Complex64>;

impl<S: Scalar> NcSeries<S> {
    pub fn zero(order: usize) -> Self {
        assert!(
            order <= MAX_ORDER,
            "truncation order {order} exceeds {MAX_ORDER}"
        );
        NcSeries {
            order,
            coeffs: vec![S::zero(); word_count(order)],
        }
    }

    /// The unit series 1̂.
    pub fn one(order: usize) -> Self {
        let mut s = Self::zero(order);
        s.coeffs[0] = S::one();
        s
    }

    /// Series whose coefficient of W is `f(w)`.
    pub fn from_fn<F: FnMut(Word) -> S>(order: usize, mut f: F) -> Self {
        let mut s = Self::zero(order);
        for (i, w) in Word::all_up_to(order).enumerate() {
            s.coeffs[i] = f(w);
        }
        s
    }

    pub fn try_from_fn<F: FnMut(Word) -> Result<S>>(order: usize, mut f: F) -> Result<Self> {
        let mut s = Self::zero(order);
        for (i, w) in Word::all_up_to(order).enumerate() {
            s.coeffs[i] = f(w)?;
        }
        Ok(s)
    }

    /// Sum of `c·W` terms; words above the order are dropped.
    pub fn from_terms<I: IntoIterator<Item = (Word, S)>>(order: usize, terms: I) -> Self {
        let mut s = Self::zero(order);
        for (w, c) in terms {
            if w.len() <= order {
                let i = w.canonical_index();
                s.coeffs[i] = s.coeffs[i].clone() + c;
            }
        }
        s
    }

    /// exp(c·X) for a single letter word X, i.e. Σ cᵏ/k! Xᵏ.
    pub fn letter_exp(
        order: usize,
        letter: crate::words::Letter,
        c: S,
        factorial_inv: impl Fn(usize) -> S,
    ) -> Self {
        let mut s = Self::zero(order);
        let mut pow = S::one();
        for k in 0..=order {
            s.set(Word::power(letter, k), pow.clone() * factorial_inv(k));
            pow = pow * c.clone();
        }
        s
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn coeff(&self, w: &Word) -> S {
        if w.len() > self.order {
            return S::zero();
        }
        self.coeffs[w.canonical_index()].clone()
    }

    pub fn coeff_ref(&self, w: &Word) -> &S {
        &self.coeffs[w.canonical_index()]
    }

    pub fn set(&mut self, w: Word, c: S) {
        assert!(w.len() <= self.order, "word {w} above truncation order");
        self.coeffs[w.canonical_index()] = c;
    }

    /// `(word, coefficient)` pairs in canonical order.
    pub fn iter(&self) -> impl Iterator<Item = (Word, &S)> {
        self.coeffs
            .iter()
            .enumerate()
            .map(|(i, c)| (Word::from_canonical_index(i), c))
    }

    pub fn map<T: Scalar, F: Fn(&S) -> T>(&self, f: F) -> NcSeries<T> {
        NcSeries {
            order: self.order,
            coeffs: self.coeffs.iter().map(f).collect(),
        }
    }

    fn check_order(&self, other: &Self) -> Result<()> {
        if self.order != other.order {
            return Err(Error::OrderMismatch(self.order, other.order));
        }
        Ok(())
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        self.check_order(other)?;
        Ok(NcSeries {
            order: self.order,
            coeffs: self
                .coeffs
                .iter()
                .zip(&other.coeffs)
                .map(|(a, b)| a.clone() + b.clone())
                .collect(),
        })
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self> {
        self.check_order(other)?;
        Ok(NcSeries {
            order: self.order,
            coeffs: self
                .coeffs
                .iter()
                .zip(&other.coeffs)
                .map(|(a, b)| a.clone() - b.clone())
                .collect(),
        })
    }

    pub fn scale(&self, c: &S) -> Self {
        self.map(|a| a.clone() * c.clone())
    }

    /// Concatenation (Cauchy) product, truncated at the common order.
    pub fn nc_mul(&self, other: &Self) -> Result<Self> {
        self.check_order(other)?;
        let mut out = Self::zero(self.order);
        for (i, w) in Word::all_up_to(self.order).enumerate() {
            let mut acc = S::zero();
            for (u, v) in w.deconcat_splits() {
                let a = self.coeff_ref(&u);
                if a.is_zero() {
                    continue;
                }
                acc = acc + a.clone() * other.coeff_ref(&v).clone();
            }
            out.coeffs[i] = acc;
        }
        Ok(out)
    }

    /// Multiplicative inverse modulo truncation.
    pub fn nc_inverse(&self) -> Result<Self> {
        let c0 = self.coeffs[0].inverse().ok_or(Error::ZeroConstantTerm)?;
        let mut out = Self::zero(self.order);
        out.coeffs[0] = c0.clone();
        // Σ_{uv=w} A(u) R(v) = 0 for w ≠ 𝟙, solved for R(w) by increasing weight.
        for (i, w) in Word::all_up_to(self.order).enumerate().skip(1) {
            let mut acc = S::zero();
            for (u, v) in w.deconcat_splits().into_iter().skip(1) {
                acc = acc + self.coeff_ref(&u).clone() * out.coeff_ref(&v).clone();
            }
            out.coeffs[i] = -(c0.clone() * acc);
        }
        Ok(out)
    }

    /// Anti-automorphism T with T(X0) = X1, T(X1) = X0: the coefficient of
    /// W in the image is the coefficient of τ(w).
    pub fn apply_t(&self) -> Self {
        Self::from_fn(self.order, |w| self.coeff(&w.tau()))
    }

    /// Substitution X0 ↦ −X1, X1 ↦ −X0 (the map t_*).
    pub fn subst_neg_swap(&self) -> Self {
        Self::from_fn(self.order, |w| {
            let c = self.coeff(&w.swapped());
            if w.len() % 2 == 1 {
                -c
            } else {
                c
            }
        })
    }

    /// Reciprocal of a grouplike series read off the antipode:
    /// coefficient of W is the coefficient of ρ*(w).
    pub fn antipode_reciprocal(&self) -> Self {
        Self::from_fn(self.order, |w| {
            let c = self.coeff(&w.reversed());
            if w.len() % 2 == 1 {
                -c
            } else {
                c
            }
        })
    }

    /// Left multiplication by a degree-one element `a0·X0 + a1·X1`.
    pub fn left_mul_linear(&self, a0: &S, a1: &S) -> Self {
        Self::from_fn(self.order, |w| match w.first() {
            None => S::zero(),
            Some(crate::words::Letter::L0) => a0.clone() * self.coeff(&w.tail()),
            Some(crate::words::Letter::L1) => a1.clone() * self.coeff(&w.tail()),
        })
    }

    /// Checks the shuffle-homomorphism property of the coefficient map:
    /// `|A(u ⧢ v) − A(u)A(v)|` over all `|u| + |v| ≤ N`, plus `|A(𝟙) − 1|`.
    pub fn grouplike_violation(&self) -> GrouplikeReport {
        let mut worst = GrouplikeReport {
            max_violation: (self.coeffs[0].clone() - S::one()).magnitude(),
            worst_pair: (Word::EMPTY, Word::EMPTY),
        };
        for wu in 1..=self.order {
            for u in Word::all_of_weight(wu) {
                for wv in wu..=(self.order - wu) {
                    for v in Word::all_of_weight(wv) {
                        let mut lhs = S::zero();
                        for (w, n) in shuffle_words(u, v) {
                            lhs = lhs + S::from_i64(n as i64) * self.coeff_ref(&w).clone();
                        }
                        let rhs = self.coeff_ref(&u).clone() * self.coeff_ref(&v).clone();
                        let d = (lhs - rhs).magnitude();
                        if d > worst.max_violation {
                            worst = GrouplikeReport {
                                max_violation: d,
                                worst_pair: (u, v),
                            };
                        }
                    }
                }
            }
        }
        worst
    }

    pub fn is_grouplike(&self, tol: f64) -> (bool, GrouplikeReport) {
        let r = self.grouplike_violation();
        (r.max_violation <= tol, r)
    }

    /// Largest coefficient magnitude.
    pub fn max_abs(&self) -> f64 {
        self.coeffs.iter().map(S::magnitude).fold(0.0, f64::max)
    }

    /// `{order, entries}` with zero entries omitted.
    pub fn to_json(&self) -> Value {
        let entries: Vec<Value> = self
            .iter()
            .filter(|(_, c)| !c.is_zero())
            .map(|(w, c)| c.json_entry(&w))
            .collect();
        json!({"order": self.order, "entries": entries})
    }

    pub fn from_json(v: &Value) -> Result<Self> {
        let order = v["order"]
            .as_u64()
            .ok_or_else(|| Error::Parse("missing order".into()))? as usize;
        if order > MAX_ORDER {
            return Err(Error::Parse(format!("order {order} exceeds {MAX_ORDER}")));
        }
        let mut s = Self::zero(order);
        for e in v["entries"]
            .as_array()
            .ok_or_else(|| Error::Parse("missing entries".into()))?
        {
            let w: Word = e["word"]
                .as_str()
                .ok_or_else(|| Error::Parse("missing word".into()))?
                .parse()?;
            if w.len() > order {
                return Err(Error::Parse(format!("word {w} above order {order}")));
            }
            s.set(w, S::from_json_entry(e)?);
        }
        Ok(s)
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GrouplikeReport {
    pub max_violation: f64,
    pub worst_pair: (Word, Word),
}

impl ComplexSeries {
    /// Largest coefficientwise distance to another series of equal order.
    pub fn max_diff(&self, other: &Self) -> Result<f64> {
        Ok(self.try_sub(other)?.max_abs())
    }

    /// exp(c·X) with complex `c`.
    pub fn exp_letter(order: usize, letter: crate::words::Letter, c: Complex64) -> Self {
        Self::letter_exp(order, letter, c, |k| {
            Complex64::new(1.0 / factorial(k), 0.0)
        })
    }
}

pub(crate) fn factorial(k: usize) -> f64 {
    (1..=k).map(|i| i as f64).product()
}

impl RationalSeries {
    pub fn exp_letter_rational(order: usize, letter: crate::words::Letter, c: BigRational) -> Self {
        Self::letter_exp(order, letter, c, |k| {
            BigRational::from_integer((1..=k).map(BigInt::from).product::<BigInt>()).recip()
        })
    }
}
