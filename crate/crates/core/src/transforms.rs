//! Equivalence moves, normalization to the zero word, residual codes and the
//! classification of binary MDS codes.

use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::code::{is_mds, Code, CodeError, Codeword};
use crate::constructions::{repetition_code, sum_zero_code, universe_code, ConstructionError};
use crate::galois::Field;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TransformError {
    #[error("bad move: {0}")]
    BadMove(String),
    #[error("word is not a codeword")]
    WordNotInCode,
    #[error("code is not MDS")]
    NotMds,
    #[error("{t} residual positions exceed k={k}")]
    TooManyPositions { t: usize, k: usize },
    #[error("bad residual spec: {0}")]
    BadResidual(String),
    #[error("expected a binary code, got q={0}")]
    NotBinary(usize),
    #[error("binary MDS code ({n},{k}) does not normalize to a linear code: {detail}")]
    TheoremViolation { n: usize, k: usize, detail: String },
    #[error(transparent)]
    Code(#[from] CodeError),
    #[error(transparent)]
    Construction(#[from] ConstructionError),
}

/// One symbol permutation (SP) or positional swap (PP).
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum EquivalenceMove {
    /// Replace symbol `s` by `perm[s]` at `position`.
    SymbolPermutation { position: usize, perm: Vec<u8> },
    /// Exchange the entries at positions `i` and `j`.
    PositionSwap { i: usize, j: usize },
}

impl EquivalenceMove {
    /// The transposition `a <-> b` at `position` over an alphabet of size `q`.
    pub fn transposition(position: usize, q: usize, a: u8, b: u8) -> Self {
        let mut perm: Vec<u8> = (0..q).map(|s| s as u8).collect();
        perm.swap(a as usize, b as usize);
        EquivalenceMove::SymbolPermutation { position, perm }
    }

    fn validate(&self, n: usize, q: usize) -> Result<(), TransformError> {
        match self {
            EquivalenceMove::SymbolPermutation { position, perm } => {
                if *position >= n {
                    return Err(TransformError::BadMove(format!("position {} > n={n}", position + 1)));
                }
                let mut seen = vec![false; q];
                if perm.len() != q
                    || !perm.iter().all(|&s| (s as usize) < q && !std::mem::replace(&mut seen[s as usize], true))
                {
                    return Err(TransformError::BadMove(format!("{perm:?} is not a permutation of 0..{q}")));
                }
            }
            EquivalenceMove::PositionSwap { i, j } => {
                if i == j || *i >= n || *j >= n {
                    return Err(TransformError::BadMove(format!(
                        "cannot swap positions {} and {} with n={n}",
                        i + 1,
                        j + 1
                    )));
                }
            }
        }
        Ok(())
    }

    fn apply_to_word(&self, w: &mut [u8]) {
        match self {
            EquivalenceMove::SymbolPermutation { position, perm } => {
                w[*position] = perm[w[*position] as usize];
            }
            EquivalenceMove::PositionSwap { i, j } => w.swap(*i, *j),
        }
    }
}

/// Witness lines: `SP <pos> <images...>` and `PP <i> <j>`, positions 1-based.
impl fmt::Display for EquivalenceMove {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            EquivalenceMove::SymbolPermutation { position, perm } => {
                write!(f, "SP {}", position + 1)?;
                for s in perm {
                    write!(f, " {s}")?;
                }
                Ok(())
            }
            EquivalenceMove::PositionSwap { i, j } => write!(f, "PP {} {}", i + 1, j + 1),
        }
    }
}

impl FromStr for EquivalenceMove {
    type Err = TransformError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = || TransformError::BadMove(format!("cannot parse `{s}`"));
        let mut toks = s.split(' ');
        let kind = toks.next().ok_or_else(bad)?;
        let nums = toks.map(|t| t.parse::<usize>().map_err(|_| bad())).collect::<Result<Vec<_>, _>>()?;
        match (kind, nums.as_slice()) {
            ("SP", [pos, images @ ..]) if *pos >= 1 && images.iter().all(|&v| v < 256) => {
                Ok(EquivalenceMove::SymbolPermutation {
                    position: pos - 1,
                    perm: images.iter().map(|&v| v as u8).collect(),
                })
            }
            ("PP", [i, j]) if *i >= 1 && *j >= 1 => Ok(EquivalenceMove::PositionSwap { i: i - 1, j: j - 1 }),
            _ => Err(bad()),
        }
    }
}

pub fn apply_move(code: &Code, mv: &EquivalenceMove) -> Result<Code, TransformError> {
    mv.validate(code.n(), code.q())?;
    let words = code
        .words()
        .iter()
        .map(|w| {
            let mut w = w.clone();
            mv.apply_to_word(&mut w);
            w
        })
        .collect();
    Ok(Code::new(code.q(), code.n(), words)?)
}

pub fn apply_moves(code: &Code, moves: &[EquivalenceMove]) -> Result<Code, TransformError> {
    moves.iter().try_fold(code.clone(), |acc, mv| apply_move(&acc, mv))
}

/// Maps `c` to the zero word with one transposition `c_i <-> 0` per nonzero
/// coordinate of `c`.
pub fn normalize_to_zero(code: &Code, c: &[u8]) -> Result<(Code, Vec<EquivalenceMove>), TransformError> {
    if !code.contains(c) {
        return Err(TransformError::WordNotInCode);
    }
    let moves: Vec<_> = c
        .iter()
        .enumerate()
        .filter(|(_, &s)| s != 0)
        .map(|(i, &s)| EquivalenceMove::transposition(i, code.q(), s, 0))
        .collect();
    Ok((apply_moves(code, &moves)?, moves))
}

/// Fix `values[i]` at `positions[i]` and delete those coordinates.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ResidualSpec {
    pub positions: Vec<usize>,
    pub values: Vec<u8>,
}

impl ResidualSpec {
    pub fn new(positions: Vec<usize>, values: Vec<u8>) -> Self {
        Self { positions, values }
    }

    pub fn t(&self) -> usize {
        self.positions.len()
    }
}

/// The `t`-residual code: the `q^{k-t}` words carrying the prescribed
/// values, with the fixed coordinates deleted.
pub fn residual(code: &Code, spec: &ResidualSpec) -> Result<Code, TransformError> {
    let t = spec.t();
    if spec.values.len() != t {
        return Err(TransformError::BadResidual(format!("{t} positions but {} values", spec.values.len())));
    }
    if t > code.k() {
        return Err(TransformError::TooManyPositions { t, k: code.k() });
    }
    if code.len() < 2 || !is_mds(code)?.is_mds {
        return Err(TransformError::NotMds);
    }
    let mut fixed = vec![None; code.n()];
    for (&p, &v) in spec.positions.iter().zip(&spec.values) {
        if p >= code.n() || fixed[p].is_some() {
            return Err(TransformError::BadResidual(format!("position {} repeated or out of range", p + 1)));
        }
        if v as usize >= code.q() {
            return Err(TransformError::BadResidual(format!("value {v} is not below q={}", code.q())));
        }
        fixed[p] = Some(v);
    }
    let words: Vec<Codeword> = code
        .words()
        .iter()
        .filter(|w| fixed.iter().zip(w.iter()).all(|(f, &s)| f.is_none_or(|v| v == s)))
        .map(|w| w.iter().zip(&fixed).filter(|(_, f)| f.is_none()).map(|(&s, _)| s).collect())
        .collect();
    Ok(Code::new(code.q(), code.n() - t, words)?)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BinaryFamily {
    Repetition,
    Universe,
    ParityCheck,
}

impl fmt::Display for BinaryFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            BinaryFamily::Repetition => "repetition",
            BinaryFamily::Universe => "universe",
            BinaryFamily::ParityCheck => "parity-check",
        })
    }
}

/// The linear family a binary MDS code is equivalent to, with moves that
/// carry the input onto it exactly.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BinaryClass {
    pub family: BinaryFamily,
    pub witness: Vec<EquivalenceMove>,
}

/// Normalizes a codeword to zero (the zero word itself when present, else
/// the lexicographically first word) and checks the result is literally the
/// repetition, universe or even-weight code.
pub fn classify_binary(code: &Code) -> Result<BinaryClass, TransformError> {
    if code.q() != 2 {
        return Err(TransformError::NotBinary(code.q()));
    }
    if code.len() < 2 || !is_mds(code)?.is_mds {
        return Err(TransformError::NotMds);
    }
    let (n, k) = (code.n(), code.k());
    let base = if code.contains_zero() { code.zero_word() } else { code.words()[0].clone() };
    let (normalized, witness) = normalize_to_zero(code, &base)?;

    let (family, target) = if k == 1 {
        (BinaryFamily::Repetition, repetition_code(n, 2)?)
    } else if n == k {
        (BinaryFamily::Universe, universe_code(k, 2)?)
    } else if n == k + 1 {
        let gf2 = Field::new(2).expect("GF(2)");
        (BinaryFamily::ParityCheck, sum_zero_code(k, &gf2)?)
    } else {
        return Err(TransformError::TheoremViolation { n, k, detail: "length is neither k nor k+1".into() });
    };
    if normalized != target {
        return Err(TransformError::TheoremViolation {
            n,
            k,
            detail: format!("normalized word set differs from the {family} code"),
        });
    }
    Ok(BinaryClass { family, witness })
}
