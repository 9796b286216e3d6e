use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

/// One of the two generators: `L0` stands for ξ0 = dz/z (dually X0),
/// `L1` for ξ1 = dz/(1−z) (dually X1).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Letter {
    L0,
    L1,
}

impl Letter {
    pub fn swap(self) -> Letter {
        match self {
            Letter::L0 => Letter::L1,
            Letter::L1 => Letter::L0,
        }
    }

    fn bit(self) -> u64 {
        match self {
            Letter::L0 => 0,
            Letter::L1 => 1,
        }
    }
}

/// Longest word representable by the packed encoding.
pub const MAX_WEIGHT: usize = 63;

/// A word over {ξ0, ξ1}, packed as a bit sequence with the first letter in
/// the most significant position. The derived ordering compares length
/// first and then the bits, which is graded lexicographic order with
/// ξ0 < ξ1.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Word {
    len: u8,
    bits: u64,
}

impl Word {
    pub const EMPTY: Word = Word { len: 0, bits: 0 };

    pub fn empty() -> Word {
        Word::EMPTY
    }

    pub fn letter(l: Letter) -> Word {
        Word {
            len: 1,
            bits: l.bit(),
        }
    }

    pub fn from_letters<I: IntoIterator<Item = Letter>>(letters: I) -> Word {
        let mut w = Word::EMPTY;
        for l in letters {
            w = w.push(l);
        }
        w
    }

    /// Word with the given packed bits; the first letter is bit `len - 1`.
    pub fn from_bits(len: usize, bits: u64) -> Word {
        assert!(len <= MAX_WEIGHT, "word too long");
        let mask = if len == 0 { 0 } else { u64::MAX >> (64 - len) };
        Word {
            len: len as u8,
            bits: bits & mask,
        }
    }

    pub fn power(l: Letter, n: usize) -> Word {
        Word::from_letters(std::iter::repeat_n(l, n))
    }

    /// ξ0^{k1−1} ξ1 ⋯ ξ0^{kr−1} ξ1.
    pub fn from_indices(ks: &[u32]) -> Result<Word> {
        let mut w = Word::EMPTY;
        for &k in ks {
            if k == 0 {
                return Err(Error::Parse("MZV indices must be positive".into()));
            }
            for _ in 1..k {
                w = w.push(Letter::L0);
            }
            w = w.push(Letter::L1);
        }
        Ok(w)
    }

    /// Inverse of [`Word::from_indices`]; `None` unless the word ends in ξ1.
    pub fn indices(&self) -> Option<Vec<u32>> {
        if !self.is_s0() {
            return None;
        }
        let mut out = Vec::new();
        let mut k = 1;
        for l in self.letters() {
            match l {
                Letter::L0 => k += 1,
                Letter::L1 => {
                    out.push(k);
                    k = 1;
                }
            }
        }
        Some(out)
    }

    pub fn len(&self) -> usize {
        self.len as usize
    }

    pub fn weight(&self) -> usize {
        self.len as usize
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn bits(&self) -> u64 {
        self.bits
    }

    pub fn get(&self, i: usize) -> Letter {
        debug_assert!(i < self.len());
        if (self.bits >> (self.len() - 1 - i)) & 1 == 1 {
            Letter::L1
        } else {
            Letter::L0
        }
    }

    pub fn first(&self) -> Option<Letter> {
        (!self.is_empty()).then(|| self.get(0))
    }

    pub fn last(&self) -> Option<Letter> {
        (!self.is_empty()).then(|| self.get(self.len() - 1))
    }

    pub fn letters(&self) -> impl DoubleEndedIterator<Item = Letter> + '_ {
        (0..self.len()).map(move |i| self.get(i))
    }

    pub fn push(self, l: Letter) -> Word {
        assert!(self.len() < MAX_WEIGHT, "word too long");
        Word {
            len: self.len + 1,
            bits: (self.bits << 1) | l.bit(),
        }
    }

    pub fn prepend(self, l: Letter) -> Word {
        assert!(self.len() < MAX_WEIGHT, "word too long");
        Word {
            len: self.len + 1,
            bits: self.bits | (l.bit() << self.len),
        }
    }

    pub fn concat(self, other: Word) -> Word {
        assert!(self.len() + other.len() <= MAX_WEIGHT, "word too long");
        if other.is_empty() {
            return self;
        }
        Word {
            len: self.len + other.len,
            bits: (self.bits << other.len) | other.bits,
        }
    }

    /// Letters `[start, end)`.
    pub fn slice(&self, start: usize, end: usize) -> Word {
        debug_assert!(start <= end && end <= self.len());
        let len = end - start;
        Word::from_bits(len, self.bits >> (self.len() - end))
    }

    /// Drops the first letter.
    pub fn tail(&self) -> Word {
        self.slice(1.min(self.len()), self.len())
    }

    pub fn reversed(&self) -> Word {
        Word::from_letters((0..self.len()).rev().map(|i| self.get(i)))
    }

    /// Exchanges ξ0 and ξ1 letterwise, keeping the order.
    pub fn swapped(&self) -> Word {
        Word::from_bits(self.len(), !self.bits)
    }

    /// Reversal plus letter swap.
    pub fn tau(&self) -> Word {
        self.reversed().swapped()
    }

    /// `w = 𝟙` or `w` ends in ξ1.
    pub fn is_s0(&self) -> bool {
        self.last() != Some(Letter::L0)
    }

    /// `w = 𝟙` or `w` ends in ξ0.
    pub fn is_s1(&self) -> bool {
        self.last() != Some(Letter::L1)
    }

    /// `w = 𝟙` or `w` starts with ξ0 and ends with ξ1.
    pub fn is_s10(&self) -> bool {
        self.is_empty() || (self.first() == Some(Letter::L0) && self.last() == Some(Letter::L1))
    }

    /// Number of trailing ξ0 letters.
    pub fn trailing_l0(&self) -> usize {
        self.letters()
            .rev()
            .take_while(|&l| l == Letter::L0)
            .count()
    }

    /// Number of leading ξ1 letters.
    pub fn leading_l1(&self) -> usize {
        self.letters().take_while(|&l| l == Letter::L1).count()
    }

    /// All `r + 1` cuts `(u, v)` with `uv = w`, ordered by prefix length.
    pub fn deconcat_splits(&self) -> Vec<(Word, Word)> {
        (0..=self.len())
            .map(|k| (self.slice(0, k), self.slice(k, self.len())))
            .collect()
    }

    /// Position of this word in the canonical order of all words.
    pub fn canonical_index(&self) -> usize {
        (1usize << self.len()) - 1 + self.bits as usize
    }

    pub fn from_canonical_index(idx: usize) -> Word {
        let len = (usize::BITS - (idx + 1).leading_zeros() - 1) as usize;
        Word::from_bits(len, (idx + 1 - (1usize << len)) as u64)
    }

    /// Every word of weight exactly `n`, in canonical order.
    pub fn all_of_weight(n: usize) -> impl Iterator<Item = Word> {
        (0..(1u64 << n)).map(move |b| Word::from_bits(n, b))
    }

    /// Every word of weight ≤ `n`, in canonical order.
    pub fn all_up_to(n: usize) -> impl Iterator<Item = Word> {
        (0..=n).flat_map(Word::all_of_weight)
    }

    /// Bit-string form, `""` for the empty word.
    pub fn to_bit_string(&self) -> String {
        self.letters()
            .map(|l| match l {
                Letter::L0 => '0',
                Letter::L1 => '1',
            })
            .collect()
    }

    /// Capitalized form such as `X0X1`, `1` for the empty word.
    pub fn to_dual_string(&self) -> String {
        if self.is_empty() {
            return "1".into();
        }
        self.letters()
            .map(|l| match l {
                Letter::L0 => "X0",
                Letter::L1 => "X1",
            })
            .collect()
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_empty() {
            f.write_str("𝟙")
        } else {
            f.write_str(&self.to_bit_string())
        }
    }
}

/// Accepts a bit string (`"011"` = ξ0ξ1ξ1), the index form `"(2,1)"`, or
/// `""`, `"𝟙"`, `"()"` for the empty word.
impl FromStr for Word {
    type Err = Error;

    fn from_str(s: &str) -> Result<Word> {
        let s = s.trim();
        if s.is_empty() || s == "𝟙" {
            return Ok(Word::EMPTY);
        }
        if let Some(inner) = s.strip_prefix('(') {
            let inner = inner
                .strip_suffix(')')
                .ok_or_else(|| Error::Parse(format!("unbalanced parentheses in {s:?}")))?;
            if inner.trim().is_empty() {
                return Ok(Word::EMPTY);
            }
            let ks = inner
                .split(',')
                .map(|k| {
                    k.trim()
                        .parse::<u32>()
                        .map_err(|_| Error::Parse(format!("bad index {k:?} in {s:?}")))
                })
                .collect::<Result<Vec<_>>>()?;
            if ks.iter().map(|&k| k as usize).sum::<usize>() > MAX_WEIGHT {
                return Err(Error::Parse(format!("word {s:?} too long")));
            }
            return Word::from_indices(&ks);
        }
        if s.len() > MAX_WEIGHT {
            return Err(Error::Parse(format!("word {s:?} too long")));
        }
        s.chars()
            .map(|c| match c {
                '0' => Ok(Letter::L0),
                '1' => Ok(Letter::L1),
                _ => Err(Error::Parse(format!(
                    "unexpected character {c:?} in word {s:?}"
                ))),
            })
            .collect::<Result<Vec<_>>>()
            .map(Word::from_letters)
    }
}
