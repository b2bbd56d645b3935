//! Builders for the MDS code families: trivial codes, Reed-Solomon variants
//! and the Latin-square bridge for dimension 2.

use std::collections::HashSet;

use thiserror::Error;

use crate::code::{is_mds, Code, CodeError, Codeword};
use crate::galois::{Field, FieldElement};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ConstructionError {
    #[error("evaluation points must be distinct")]
    DuplicatePoints,
    #[error("dimension {k} is too large (limit {limit})")]
    DimensionTooLarge { k: usize, limit: usize },
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("GF({0}) has odd characteristic; need characteristic 2 and q >= 4")]
    OddCharacteristic(usize),
    #[error("{0} is not prime")]
    NotPrime(usize),
    #[error("not a Latin square: {0}")]
    NotLatin(String),
    #[error("squares {0} and {1} are not orthogonal")]
    NotOrthogonal(usize, usize),
    #[error("code is not MDS")]
    NotMds,
    #[error("expected a code of dimension 2, got {0}")]
    WrongDimension(usize),
    #[error(transparent)]
    Code(#[from] CodeError),
}

/// `{(i, i, ..., i) : i < q}`, the `(n,1)_q` repetition code.
pub fn repetition_code(n: usize, q: usize) -> Result<Code, ConstructionError> {
    if n == 0 {
        return Err(ConstructionError::InvalidParameter("n must be at least 1".into()));
    }
    Ok(Code::new(q, n, (0..q).map(|i| vec![i as u8; n]).collect())?)
}

/// All `q^k` words of length `k`.
pub fn universe_code(k: usize, q: usize) -> Result<Code, ConstructionError> {
    if k == 0 {
        return Err(ConstructionError::InvalidParameter("k must be at least 1".into()));
    }
    if !(2..=crate::code::MAX_ALPHABET).contains(&q) {
        return Err(CodeError::BadAlphabet(q).into());
    }
    Ok(Code::new(q, k, all_tuples(k, q))?)
}

/// Every length-`len` tuple over `0..q`, lexicographic order.
fn all_tuples(len: usize, q: usize) -> Vec<Codeword> {
    let mut out = vec![Vec::new()];
    for _ in 0..len {
        out = out
            .into_iter()
            .flat_map(|prefix| {
                (0..q).map(move |s| {
                    let mut w = prefix.clone();
                    w.push(s as u8);
                    w
                })
            })
            .collect();
    }
    out
}

/// Words of length `k+1` whose field sum is zero; over GF(2) this is the
/// even-weight (single parity check) code.
pub fn sum_zero_code(k: usize, field: &Field) -> Result<Code, ConstructionError> {
    if k == 0 {
        return Err(ConstructionError::InvalidParameter("k must be at least 1".into()));
    }
    let words = all_tuples(k, field.order())
        .into_iter()
        .map(|mut w| {
            let sum = w.iter().fold(0, |acc, &s| field.add(acc, s));
            w.push(field.neg(sum));
            w
        })
        .collect();
    Ok(Code::new(field.order(), k + 1, words)?)
}

/// Evaluation code of all polynomials of degree `< k` at `points`.
pub fn rs_code(field: &Field, k: usize, points: &[FieldElement]) -> Result<Code, ConstructionError> {
    let n = points.len();
    if k == 0 {
        return Err(ConstructionError::InvalidParameter("k must be at least 1".into()));
    }
    if n > field.order() {
        return Err(ConstructionError::InvalidParameter(format!(
            "{n} points exceed the field order {}",
            field.order()
        )));
    }
    for &a in points {
        field.element(a as usize).map_err(|e| ConstructionError::InvalidParameter(e.to_string()))?;
    }
    let mut seen = HashSet::new();
    if !points.iter().all(|p| seen.insert(*p)) {
        return Err(ConstructionError::DuplicatePoints);
    }
    if k > n {
        return Err(ConstructionError::DimensionTooLarge { k, limit: n });
    }
    let words = all_tuples(k, field.order())
        .into_iter()
        .map(|coeffs| points.iter().map(|&a| field.eval_poly(&coeffs, a)).collect())
        .collect();
    Ok(Code::new(field.order(), n, words)?)
}

/// Reed-Solomon code on all of `F` in encoding order.
pub fn full_rs_code(field: &Field, k: usize) -> Result<Code, ConstructionError> {
    let points: Vec<_> = field.elements().collect();
    rs_code(field, k, &points)
}

/// Singly extended RS code of length `q+1`: the evaluations of `f` at every
/// field element followed by the coefficient of `x^{k-1}`.
pub fn extended_rs_code(field: &Field, k: usize) -> Result<Code, ConstructionError> {
    let q = field.order();
    if k == 0 {
        return Err(ConstructionError::InvalidParameter("k must be at least 1".into()));
    }
    if k > q {
        return Err(ConstructionError::DimensionTooLarge { k, limit: q });
    }
    let words = all_tuples(k, q)
        .into_iter()
        .map(|coeffs| {
            let mut w: Codeword = field.elements().map(|a| field.eval_poly(&coeffs, a)).collect();
            w.push(coeffs[k - 1]);
            w
        })
        .collect();
    Ok(Code::new(q, q + 1, words)?)
}

/// The `(q+2, 3)_q` code over a field of characteristic 2: for every
/// `(c, b, e)` the word `(c + b a + e a^2 for a in F, b, e)`.
pub fn doubly_extended_rs(field: &Field) -> Result<Code, ConstructionError> {
    let q = field.order();
    if field.characteristic() != 2 || q < 4 {
        return Err(ConstructionError::OddCharacteristic(q));
    }
    let words = all_tuples(3, q)
        .into_iter()
        .map(|cbe| {
            let (c, b, e) = (cbe[0], cbe[1], cbe[2]);
            let mut w: Codeword = field.elements().map(|a| field.eval_poly(&[c, b, e], a)).collect();
            w.push(b);
            w.push(e);
            w
        })
        .collect();
    Ok(Code::new(q, q + 2, words)?)
}

/// A `q x q` array whose rows and columns are permutations of `0..q`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LatinSquare {
    order: usize,
    cells: Vec<u8>,
}

impl LatinSquare {
    /// `cells` is row-major.
    pub fn new(order: usize, cells: Vec<u8>) -> Result<Self, ConstructionError> {
        if order == 0 || order > crate::code::MAX_ALPHABET {
            return Err(ConstructionError::NotLatin(format!("order {order}")));
        }
        if cells.len() != order * order {
            return Err(ConstructionError::NotLatin(format!("{} cells for order {order}", cells.len())));
        }
        for line in 0..order {
            let mut row = vec![false; order];
            let mut col = vec![false; order];
            for t in 0..order {
                for (seen, v) in [(&mut row, cells[line * order + t]), (&mut col, cells[t * order + line])] {
                    let v = v as usize;
                    if v >= order || seen[v] {
                        return Err(ConstructionError::NotLatin(format!("row or column {line} is not a permutation")));
                    }
                    seen[v] = true;
                }
            }
        }
        Ok(Self { order, cells })
    }

    pub fn from_fn(order: usize, f: impl Fn(usize, usize) -> usize) -> Result<Self, ConstructionError> {
        let cells = (0..order * order).map(|i| f(i / order, i % order) as u8).collect();
        Self::new(order, cells)
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn get(&self, row: usize, col: usize) -> u8 {
        self.cells[row * self.order + col]
    }

    /// Superposing the two squares yields every ordered pair exactly once.
    pub fn is_orthogonal_to(&self, other: &LatinSquare) -> bool {
        if self.order != other.order {
            return false;
        }
        let mut seen = vec![false; self.order * self.order];
        self.cells.iter().zip(&other.cells).all(|(&a, &b)| {
            let idx = a as usize * self.order + b as usize;
            !std::mem::replace(&mut seen[idx], true)
        })
    }
}

/// A set of pairwise orthogonal Latin squares of a common order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MolsSet {
    order: usize,
    squares: Vec<LatinSquare>,
}

impl MolsSet {
    pub fn new(order: usize, squares: Vec<LatinSquare>) -> Result<Self, ConstructionError> {
        if order < 2 {
            return Err(ConstructionError::NotLatin(format!("order {order}")));
        }
        if let Some(sq) = squares.iter().find(|sq| sq.order != order) {
            return Err(ConstructionError::NotLatin(format!("square of order {} in a set of order {order}", sq.order)));
        }
        for i in 0..squares.len() {
            for j in i + 1..squares.len() {
                if !squares[i].is_orthogonal_to(&squares[j]) {
                    return Err(ConstructionError::NotOrthogonal(i, j));
                }
            }
        }
        Ok(Self { order, squares })
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn squares(&self) -> &[LatinSquare] {
        &self.squares
    }
}

/// The `p-1` squares `L_a(i, j) = a i + j mod p`, `a = 1..p-1`.
pub fn cyclic_mols(p: usize) -> Result<MolsSet, ConstructionError> {
    if p < 2 || (2..p).take_while(|d| d * d <= p).any(|d| p.is_multiple_of(d)) {
        return Err(ConstructionError::NotPrime(p));
    }
    let squares = (1..p).map(|a| LatinSquare::from_fn(p, |i, j| (a * i + j) % p)).collect::<Result<Vec<_>, _>>()?;
    MolsSet::new(p, squares)
}

/// The `(s+2, 2)_q` code with words `(i, j, L_1(i,j), ..., L_s(i,j))`.
pub fn mols_to_code(mols: &MolsSet) -> Result<Code, ConstructionError> {
    let q = mols.order;
    let words = (0..q * q)
        .map(|idx| {
            let (i, j) = (idx / q, idx % q);
            let mut w = vec![i as u8, j as u8];
            w.extend(mols.squares.iter().map(|sq| sq.get(i, j)));
            w
        })
        .collect();
    Ok(Code::new(q, mols.squares.len() + 2, words)?)
}

/// Reads off `n-2` squares from an `(n,2)_q` MDS code: square `t` holds, at
/// `(i, j)`, coordinate `t+2` of the word beginning `(i, j)`.
pub fn code_to_mols(code: &Code) -> Result<MolsSet, ConstructionError> {
    if code.k() != 2 {
        return Err(ConstructionError::WrongDimension(code.k()));
    }
    if !is_mds(code)?.is_mds {
        return Err(ConstructionError::NotMds);
    }
    let q = code.q();
    // MDS: the first two coordinates form an information set, and sorted
    // order lists the words by that prefix.
    let squares = (2..code.n())
        .map(|t| LatinSquare::new(q, code.words().iter().map(|w| w[t]).collect()))
        .collect::<Result<Vec<_>, _>>()?;
    MolsSet::new(q, squares)
}
