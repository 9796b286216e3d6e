use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde_json::{json, Value};

use super::word::{Letter, Word};
use crate::error::{Error, Result};

/// Shuffle of two words as a multiset of words with integer multiplicities.
pub fn shuffle_words(u: Word, v: Word) -> HashMap<Word, u64> {
    if u.is_empty() || v.is_empty() {
        return HashMap::from([(u.concat(v), 1)]);
    }
    let (m, n) = (u.len(), v.len());
    // table[i][j] = u[i..] ⧢ v[j..], filled from the back.
    let mut table: Vec<Vec<HashMap<Word, u64>>> = vec![vec![HashMap::new(); n + 1]; m + 1];
    for i in (0..=m).rev() {
        for j in (0..=n).rev() {
            let cell = if i == m {
                HashMap::from([(v.slice(j, n), 1)])
            } else if j == n {
                HashMap::from([(u.slice(i, m), 1)])
            } else {
                let mut acc: HashMap<Word, u64> = HashMap::new();
                for (w, c) in &table[i + 1][j] {
                    *acc.entry(w.prepend(u.get(i))).or_default() += c;
                }
                for (w, c) in &table[i][j + 1] {
                    *acc.entry(w.prepend(v.get(j))).or_default() += c;
                }
                acc
            };
            table[i][j] = cell;
        }
    }
    std::mem::take(&mut table[0][0])
}

/// Finite rational linear combination of words: an element of the shuffle
/// algebra S, or of U through capitalization.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct WordPoly {
    terms: BTreeMap<Word, BigRational>,
}

impl WordPoly {
    pub fn zero() -> WordPoly {
        WordPoly::default()
    }

    pub fn one() -> WordPoly {
        WordPoly::from(Word::EMPTY)
    }

    pub fn from_terms<I: IntoIterator<Item = (Word, BigRational)>>(terms: I) -> WordPoly {
        let mut p = WordPoly::zero();
        for (w, c) in terms {
            p.add_term(w, c);
        }
        p
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms in canonical word order.
    pub fn iter(&self) -> impl Iterator<Item = (&Word, &BigRational)> {
        self.terms.iter()
    }

    pub fn coeff(&self, w: &Word) -> BigRational {
        self.terms.get(w).cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn add_term(&mut self, w: Word, c: BigRational) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(w) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    pub fn scale(&self, c: &BigRational) -> WordPoly {
        if c.is_zero() {
            return WordPoly::zero();
        }
        WordPoly {
            terms: self.terms.iter().map(|(w, x)| (*w, x * c)).collect(),
        }
    }

    /// Applies a map word ↦ (word, sign) termwise.
    pub fn map_words<F: Fn(&Word) -> (Word, bool)>(&self, f: F) -> WordPoly {
        let mut out = WordPoly::zero();
        for (w, c) in &self.terms {
            let (image, negate) = f(w);
            out.add_term(image, if negate { -c.clone() } else { c.clone() });
        }
        out
    }

    /// Linear extension of a word-level map into polynomials.
    pub fn map_linear<F: Fn(&Word) -> WordPoly>(&self, f: F) -> WordPoly {
        let mut out = WordPoly::zero();
        for (w, c) in &self.terms {
            out += &f(w).scale(c);
        }
        out
    }

    pub fn max_weight(&self) -> Option<usize> {
        self.terms.keys().map(Word::weight).max()
    }

    /// `true` when every word is in S⁰.
    pub fn is_in_s0(&self) -> bool {
        self.terms.keys().all(Word::is_s0)
    }

    pub fn is_in_s10(&self) -> bool {
        self.terms.keys().all(Word::is_s10)
    }

    pub fn shuffle(&self, other: &WordPoly) -> WordPoly {
        let mut out = WordPoly::zero();
        for (u, a) in &self.terms {
            for (v, b) in &other.terms {
                let ab = a * b;
                for (w, n) in shuffle_words(*u, *v) {
                    out.add_term(w, &ab * BigRational::from_integer(BigInt::from(n)));
                }
            }
        }
        out
    }

    /// ρ*: signed reversal.
    pub fn antipode(&self) -> WordPoly {
        self.map_words(|w| (w.reversed(), w.len() % 2 == 1))
    }

    /// τ: reversal combined with ξ0 ↔ ξ1.
    pub fn tau(&self) -> WordPoly {
        self.map_words(|w| (w.tau(), false))
    }

    /// t*: ξ0 ↦ −ξ1, ξ1 ↦ −ξ0.
    pub fn t_star(&self) -> WordPoly {
        self.map_words(|w| (w.swapped(), w.len() % 2 == 1))
    }

    /// Bilinear pairing ⟨self, dual⟩ with words as an orthonormal basis.
    pub fn pair(&self, dual: &WordPoly) -> BigRational {
        let mut acc = BigRational::zero();
        for (w, c) in &self.terms {
            if let Some(d) = dual.terms.get(w) {
                acc += c * d;
            }
        }
        acc
    }

    /// `[{word, num, den}, ...]` in canonical order.
    pub fn to_json(&self) -> Value {
        Value::Array(
            self.terms
                .iter()
                .map(|(w, c)| json!({"word": w.to_bit_string(), "num": int_json(c.numer()), "den": int_json(c.denom())}))
                .collect(),
        )
    }

    pub fn from_json(v: &Value) -> Result<WordPoly> {
        let arr = v
            .as_array()
            .ok_or_else(|| Error::Parse("expected a JSON array".into()))?;
        let mut p = WordPoly::zero();
        for entry in arr {
            let word: Word = entry["word"]
                .as_str()
                .ok_or_else(|| Error::Parse("missing word".into()))?
                .parse()?;
            let num = json_int(&entry["num"])?;
            let den = json_int(&entry["den"])?;
            if den.is_zero() {
                return Err(Error::Parse("zero denominator".into()));
            }
            p.add_term(word, BigRational::new(num, den));
        }
        Ok(p)
    }
}

fn int_json(x: &BigInt) -> Value {
    match x.to_i64() {
        Some(i) => json!(i),
        None => json!(x.to_string()),
    }
}

fn json_int(v: &Value) -> Result<BigInt> {
    if let Some(i) = v.as_i64() {
        return Ok(BigInt::from(i));
    }
    v.as_str()
        .and_then(|s| s.parse().ok())
        .ok_or_else(|| Error::Parse(format!("bad integer {v}")))
}

pub fn rat(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

impl From<Word> for WordPoly {
    fn from(w: Word) -> WordPoly {
        WordPoly {
            terms: BTreeMap::from([(w, BigRational::one())]),
        }
    }
}

impl From<Letter> for WordPoly {
    fn from(l: Letter) -> WordPoly {
        WordPoly::from(Word::letter(l))
    }
}

impl AddAssign<&WordPoly> for WordPoly {
    fn add_assign(&mut self, rhs: &WordPoly) {
        for (w, c) in &rhs.terms {
            self.add_term(*w, c.clone());
        }
    }
}

impl SubAssign<&WordPoly> for WordPoly {
    fn sub_assign(&mut self, rhs: &WordPoly) {
        for (w, c) in &rhs.terms {
            self.add_term(*w, -c.clone());
        }
    }
}

impl Add for &WordPoly {
    type Output = WordPoly;
    fn add(self, rhs: &WordPoly) -> WordPoly {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl Sub for &WordPoly {
    type Output = WordPoly;
    fn sub(self, rhs: &WordPoly) -> WordPoly {
        let mut out = self.clone();
        out -= rhs;
        out
    }
}

impl Neg for &WordPoly {
    type Output = WordPoly;
    fn neg(self) -> WordPoly {
        self.scale(&rat(-1))
    }
}

/// Shuffle product.
impl Mul for &WordPoly {
    type Output = WordPoly;
    fn mul(self, rhs: &WordPoly) -> WordPoly {
        self.shuffle(rhs)
    }
}

/// Text form such as `-2·011 + 1/2·𝟙`.
impl fmt::Display for WordPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (i, (w, c)) in self.terms.iter().enumerate() {
            let neg = c.is_negative();
            let mag = c.abs();
            match (i, neg) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            if mag.is_one() {
                write!(f, "{w}")?;
            } else {
                write!(f, "{mag}·{w}")?;
            }
        }
        Ok(())
    }
}
