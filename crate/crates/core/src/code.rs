//! Codes as explicit word sets, plus the distance and MDS primitives.
//!
//! Coordinates are 0-based throughout the library. The text formats
//! (code files, move witnesses, CLI flags) use 1-based positions.

use std::collections::HashSet;
use std::fmt;

use thiserror::Error;

/// A single word; every symbol is below the owning code's `q`.
pub type Codeword = Vec<u8>;

/// Largest alphabet a [`Code`] can hold (symbols are stored as `u8`).
pub const MAX_ALPHABET: usize = 256;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CodeError {
    #[error("alphabet size {0} is not in 2..=256")]
    BadAlphabet(usize),
    #[error("word {index} has length {found}, expected {expected}")]
    WrongArity { index: usize, found: usize, expected: usize },
    #[error("word {index} holds symbol {symbol}, which is not below q={q}")]
    SymbolOutOfRange { index: usize, symbol: usize, q: usize },
    #[error("duplicate word {0:?}")]
    DuplicateWord(Codeword),
    #[error("{size} words is not a power of q={q}")]
    SizeNotPowerOfQ { size: usize, q: usize },
    #[error("words have lengths {0} and {1}")]
    LengthMismatch(usize, usize),
    #[error("need at least two words, code has {0}")]
    TooFewWords(usize),
    #[error("bad coordinate positions: {0}")]
    BadPositions(String),
}

/// A code over the alphabet `{0, ..., q-1}`: `q^k` distinct words of length `n`.
///
/// Words are kept sorted lexicographically, so two codes with the same word
/// set compare equal regardless of how they were built.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Code {
    q: usize,
    n: usize,
    k: usize,
    words: Vec<Codeword>,
}

impl Code {
    pub fn new(q: usize, n: usize, mut words: Vec<Codeword>) -> Result<Self, CodeError> {
        if !(2..=MAX_ALPHABET).contains(&q) {
            return Err(CodeError::BadAlphabet(q));
        }
        for (index, w) in words.iter().enumerate() {
            if w.len() != n {
                return Err(CodeError::WrongArity { index, found: w.len(), expected: n });
            }
            if let Some(&s) = w.iter().find(|&&s| s as usize >= q) {
                return Err(CodeError::SymbolOutOfRange { index, symbol: s as usize, q });
            }
        }
        words.sort_unstable();
        if let Some(pair) = words.windows(2).find(|pair| pair[0] == pair[1]) {
            return Err(CodeError::DuplicateWord(pair[0].clone()));
        }
        let k = log_q(words.len(), q).ok_or(CodeError::SizeNotPowerOfQ { size: words.len(), q })?;
        Ok(Self { q, n, k, words })
    }

    pub fn q(&self) -> usize {
        self.q
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn k(&self) -> usize {
        self.k
    }

    /// Words in lexicographic order.
    pub fn words(&self) -> &[Codeword] {
        &self.words
    }

    pub fn len(&self) -> usize {
        self.words.len()
    }

    pub fn is_empty(&self) -> bool {
        self.words.is_empty()
    }

    pub fn contains(&self, word: &[u8]) -> bool {
        self.words.binary_search_by(|w| w.as_slice().cmp(word)).is_ok()
    }

    pub fn contains_zero(&self) -> bool {
        // the all-zero word sorts first
        self.words.first().is_some_and(|w| w.iter().all(|&s| s == 0))
    }

    pub fn zero_word(&self) -> Codeword {
        vec![0; self.n]
    }

    pub fn singleton_bound(&self) -> usize {
        self.n + 1 - self.k
    }
}

/// `log_q(size)` when `size` is an exact power of `q`.
fn log_q(size: usize, q: usize) -> Option<usize> {
    let mut k = 0;
    let mut acc = 1usize;
    while acc < size {
        acc = acc.checked_mul(q)?;
        k += 1;
    }
    (acc == size).then_some(k)
}

/// Number of coordinates in which `a` and `b` differ.
pub fn hamming_distance(a: &[u8], b: &[u8]) -> Result<usize, CodeError> {
    if a.len() != b.len() {
        return Err(CodeError::LengthMismatch(a.len(), b.len()));
    }
    Ok(distance_unchecked(a, b))
}

pub(crate) fn distance_unchecked(a: &[u8], b: &[u8]) -> usize {
    a.iter().zip(b).filter(|(x, y)| x != y).count()
}

/// Number of nonzero coordinates.
pub fn weight(c: &[u8]) -> usize {
    c.iter().filter(|&&s| s != 0).count()
}

/// Minimum distance over all unordered pairs of distinct words (full scan).
pub fn min_distance(code: &Code) -> Result<usize, CodeError> {
    if code.len() < 2 {
        return Err(CodeError::TooFewWords(code.len()));
    }
    let words = code.words();
    let mut best = code.n();
    for (i, a) in words.iter().enumerate() {
        for b in &words[i + 1..] {
            best = best.min(distance_unchecked(a, b));
            if best == 0 {
                return Ok(0);
            }
        }
    }
    Ok(best)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct MdsReport {
    pub is_mds: bool,
    pub d: usize,
    pub singleton_bound: usize,
}

pub fn is_mds(code: &Code) -> Result<MdsReport, CodeError> {
    let d = min_distance(code)?;
    let singleton_bound = code.singleton_bound();
    Ok(MdsReport { is_mds: d == singleton_bound, d, singleton_bound })
}

/// Length bounds every MDS code must satisfy: `n >= k`, `n <= q+k-1` when
/// `k > 1`, and `n <= k+1` when `q <= k`.
pub fn length_bounds_hold(n: usize, k: usize, q: usize) -> bool {
    n >= k && (k <= 1 || n < q + k) && (q > k || n <= k + 1)
}

/// True iff projecting the code onto `positions` hits every `k`-tuple exactly once.
pub fn information_set_check(code: &Code, positions: &[usize]) -> Result<bool, CodeError> {
    if positions.len() != code.k() {
        return Err(CodeError::BadPositions(format!("expected {} positions, got {}", code.k(), positions.len())));
    }
    let mut seen_pos = HashSet::new();
    for &p in positions {
        if p >= code.n() || !seen_pos.insert(p) {
            return Err(CodeError::BadPositions(format!("{positions:?} for n={}", code.n())));
        }
    }
    // |C| = q^k, so injectivity is equivalent to bijectivity.
    let mut seen = HashSet::with_capacity(code.len());
    Ok(code.words().iter().all(|w| seen.insert(positions.iter().map(|&p| w[p]).collect::<Vec<_>>())))
}

impl fmt::Display for Code {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})_{} code", self.n, self.k, self.q)
    }
}
