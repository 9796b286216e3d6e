//! Exact combinatorics of the shuffle algebra S(ξ0, ξ1).

pub mod laws;
mod poly;
mod reg;
mod word;

pub use poly::{rat, shuffle_words, WordPoly};
pub use reg::{
    reg0, reg0_components, reg0_components_word, reg0_decomp, reg0_word, reg1, reg10, reg10_decomp,
    reg10_word, s10_shape,
};
pub use word::{Letter, Word, MAX_WEIGHT};

/// ξ-words as polynomials, for brevity in callers.
pub fn poly(w: &str) -> crate::error::Result<WordPoly> {
    Ok(WordPoly::from(w.parse::<Word>()?))
}

pub fn shuffle(p: &WordPoly, q: &WordPoly) -> WordPoly {
    p.shuffle(q)
}

pub fn antipode(p: &WordPoly) -> WordPoly {
    p.antipode()
}

pub fn tau(p: &WordPoly) -> WordPoly {
    p.tau()
}

pub fn t_star(p: &WordPoly) -> WordPoly {
    p.t_star()
}

pub fn deconcat_splits(w: Word) -> Vec<(Word, Word)> {
    w.deconcat_splits()
}

/// ⟨w, dual⟩: 1 on equal letter sequences, 0 otherwise.
pub fn pair(w: Word, dual: Word) -> num_rational::BigRational {
    rat((w == dual) as i64)
}
