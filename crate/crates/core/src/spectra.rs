//! Weight and distance spectra: brute-force counts, the closed-form MDS
//! enumerators, and the predicted weight spectrum for every admissible
//! `(n, k, q)`.
//!
//! All enumerator arithmetic is exact `i128` with overflow checks. The
//! alternating sum in the closed forms has to cancel exactly, so floating
//! point is never used.

use std::collections::BTreeSet;

use thiserror::Error;

use crate::code::{distance_unchecked, weight, Code, CodeError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SpectraError {
    #[error("invalid parameters: {0}")]
    InvalidParameters(String),
    #[error("inadmissible parameters (n,k,q)=({n},{k},{q}): no MDS code exists")]
    InadmissibleParameters { n: usize, k: usize, q: usize },
    #[error("code does not contain the zero word")]
    ZeroWordAbsent,
    #[error("word is not a codeword")]
    WordNotInCode,
    #[error("bad partition: {0}")]
    BadPartition(String),
    #[error("profile out of range: {0}")]
    ProfileOutOfRange(String),
    #[error("integer overflow while evaluating the enumerator")]
    Overflow,
    #[error(transparent)]
    Code(#[from] CodeError),
}

/// `E(w)` for `w = 0..=n`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WeightDistribution {
    counts: Vec<i128>,
}

impl WeightDistribution {
    pub fn zeros(n: usize) -> Self {
        Self { counts: vec![0; n + 1] }
    }

    pub fn from_counts(counts: Vec<i128>) -> Self {
        Self { counts }
    }

    pub fn n(&self) -> usize {
        self.counts.len() - 1
    }

    pub fn get(&self, w: usize) -> i128 {
        self.counts.get(w).copied().unwrap_or(0)
    }

    pub fn counts(&self) -> &[i128] {
        &self.counts
    }

    pub fn total(&self) -> i128 {
        self.counts.iter().sum()
    }

    /// Nonzero weights with a nonzero count.
    pub fn spectrum(&self) -> BTreeSet<usize> {
        (1..self.counts.len()).filter(|&w| self.counts[w] != 0).collect()
    }

    fn bump(&mut self, w: usize) {
        self.counts[w] += 1;
    }
}

/// Whether the closed forms are being evaluated inside their proven regime
/// (`q >= k`).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Regime {
    Stated,
    OutOfStatedRegime,
}

impl Regime {
    pub fn of(k: usize, q: usize) -> Self {
        if q >= k {
            Regime::Stated
        } else {
            Regime::OutOfStatedRegime
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FormulaDistribution {
    pub distribution: WeightDistribution,
    pub regime: Regime,
}

pub fn weight_distribution_bruteforce(code: &Code) -> WeightDistribution {
    let mut dist = WeightDistribution::zeros(code.n());
    for w in code.words() {
        dist.bump(weight(w));
    }
    dist
}

/// `C(n, r)` as an exact integer.
pub fn binomial(n: usize, r: usize) -> Result<i128, SpectraError> {
    if r > n {
        return Ok(0);
    }
    let r = r.min(n - r);
    let mut acc: i128 = 1;
    for i in 0..r {
        // acc * (n - i) is divisible by (i + 1) at every step
        acc = acc.checked_mul((n - i) as i128).ok_or(SpectraError::Overflow)? / (i as i128 + 1);
    }
    Ok(acc)
}

/// `(q-1) * sum_{j=0}^{w-d} (-1)^j C(w-1, j) q^{w-d-j}` for `w >= d >= 1`:
/// the factor shared by the weight and partition enumerators.
fn mds_kernel(w: usize, d: usize, q: usize) -> Result<i128, SpectraError> {
    debug_assert!(w >= d && d >= 1);
    let q = q as i128;
    let mut sum: i128 = 0;
    for j in 0..=(w - d) {
        let power = q.checked_pow((w - d - j) as u32).ok_or(SpectraError::Overflow)?;
        let term = binomial(w - 1, j)?.checked_mul(power).ok_or(SpectraError::Overflow)?;
        sum = if j % 2 == 0 { sum.checked_add(term) } else { sum.checked_sub(term) }.ok_or(SpectraError::Overflow)?;
    }
    sum.checked_mul(q - 1).ok_or(SpectraError::Overflow)
}

fn check_nkq(n: usize, k: usize, q: usize) -> Result<(), SpectraError> {
    if q < 2 {
        return Err(SpectraError::InvalidParameters(format!("alphabet size q={q} < 2")));
    }
    if k > n {
        return Err(SpectraError::InvalidParameters(format!("k={k} exceeds n={n}")));
    }
    Ok(())
}

/// Closed-form weight distribution of an `(n,k)_q` MDS code containing the
/// zero word. `E(0) = 1` is set by convention; `E(w) = 0` for `0 < w < d`.
pub fn weight_distribution_formula(n: usize, k: usize, q: usize) -> Result<FormulaDistribution, SpectraError> {
    check_nkq(n, k, q)?;
    let d = n + 1 - k;
    let mut counts = vec![0; n + 1];
    counts[0] = 1;
    for w in d.max(1)..=n {
        counts[w] = binomial(n, w)?.checked_mul(mds_kernel(w, d, q)?).ok_or(SpectraError::Overflow)?;
    }
    Ok(FormulaDistribution { distribution: WeightDistribution::from_counts(counts), regime: Regime::of(k, q) })
}

/// Nonzero weights attained by the code, which must contain the zero word.
pub fn weight_spectrum(code: &Code) -> Result<BTreeSet<usize>, SpectraError> {
    if !code.contains_zero() {
        return Err(SpectraError::ZeroWordAbsent);
    }
    Ok(code.words().iter().map(|w| weight(w)).filter(|&w| w > 0).collect())
}

/// The weight spectrum every `(n,k)_q` MDS code containing the zero word has.
pub fn predicted_spectrum(n: usize, k: usize, q: usize) -> Result<BTreeSet<usize>, SpectraError> {
    if q < 2 || k == 0 || !crate::code::length_bounds_hold(n, k, q) {
        return Err(SpectraError::InadmissibleParameters { n, k, q });
    }
    let spectrum = if k == 1 {
        BTreeSet::from([n])
    } else if n == k {
        (1..=n).collect()
    } else if q == 2 {
        // binary, n = k + 1: the even-weight code
        (2..=n).filter(|t| t % 2 == 0).collect()
    } else if n + 1 < q + k {
        (n + 1 - k..=n).collect()
    } else {
        // n = q + k - 1 with q > 2: weight q + 1 = n - k + 2 never occurs
        // (for k = 2 this leaves {n - 1})
        (n + 1 - k..=n).filter(|&t| t != q + 1).collect()
    };
    Ok(spectrum)
}

/// A partition `T = {T_1, ..., T_s}` of the coordinates `0..n`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PartitionSpec {
    n: usize,
    blocks: Vec<Vec<usize>>,
    block_of: Vec<usize>,
}

impl PartitionSpec {
    pub fn new(n: usize, blocks: Vec<Vec<usize>>) -> Result<Self, SpectraError> {
        let mut block_of = vec![usize::MAX; n];
        for (b, block) in blocks.iter().enumerate() {
            if block.is_empty() {
                return Err(SpectraError::BadPartition(format!("block {} is empty", b + 1)));
            }
            for &pos in block {
                if pos >= n {
                    return Err(SpectraError::BadPartition(format!("position {} is beyond n={n}", pos + 1)));
                }
                if block_of[pos] != usize::MAX {
                    return Err(SpectraError::BadPartition(format!("position {} appears twice", pos + 1)));
                }
                block_of[pos] = b;
            }
        }
        if let Some(pos) = block_of.iter().position(|&b| b == usize::MAX) {
            return Err(SpectraError::BadPartition(format!("position {} is uncovered", pos + 1)));
        }
        Ok(Self { n, blocks, block_of })
    }

    /// The single-block partition.
    pub fn trivial(n: usize) -> Self {
        Self::new(n, vec![(0..n).collect()]).expect("valid partition")
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn blocks(&self) -> &[Vec<usize>] {
        &self.blocks
    }

    pub fn block_sizes(&self) -> Vec<usize> {
        self.blocks.iter().map(Vec::len).collect()
    }

    /// `(|supp(x - c) ∩ T_i|)_i`, i.e. per-block disagreement counts.
    pub fn profile_between(&self, x: &[u8], c: &[u8]) -> WeightProfile {
        let mut parts = vec![0; self.blocks.len()];
        for (pos, (a, b)) in x.iter().zip(c).enumerate() {
            if a != b {
                parts[self.block_of[pos]] += 1;
            }
        }
        WeightProfile(parts)
    }

    /// Every profile `(w_1, ..., w_s)` with `0 <= w_i <= n_i`.
    pub fn all_profiles(&self) -> Vec<WeightProfile> {
        let mut out = vec![Vec::new()];
        for size in self.block_sizes() {
            out = out
                .into_iter()
                .flat_map(|p| {
                    (0..=size).map(move |w| {
                        let mut p = p.clone();
                        p.push(w);
                        p
                    })
                })
                .collect();
        }
        out.into_iter().map(WeightProfile).collect()
    }

    fn check_profile(&self, profile: &WeightProfile) -> Result<(), SpectraError> {
        if profile.0.len() != self.blocks.len() {
            return Err(SpectraError::ProfileOutOfRange(format!(
                "{} entries for {} blocks",
                profile.0.len(),
                self.blocks.len()
            )));
        }
        for (i, (&w, block)) in profile.0.iter().zip(&self.blocks).enumerate() {
            if w > block.len() {
                return Err(SpectraError::ProfileOutOfRange(format!(
                    "w_{} = {w} exceeds block size {}",
                    i + 1,
                    block.len()
                )));
            }
        }
        Ok(())
    }
}

/// `W = (w_1, ..., w_s)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct WeightProfile(pub Vec<usize>);

impl WeightProfile {
    pub fn total(&self) -> usize {
        self.0.iter().sum()
    }
}

/// Closed-form partition weight enumerator `A^T(W)` of an `(n,k)_q` MDS code
/// containing the zero word.
pub fn partition_weight_enumerator_formula(
    n: usize,
    k: usize,
    q: usize,
    partition: &PartitionSpec,
    profile: &WeightProfile,
) -> Result<i128, SpectraError> {
    check_nkq(n, k, q)?;
    if partition.n() != n {
        return Err(SpectraError::BadPartition(format!("partition covers {} positions, n={n}", partition.n())));
    }
    partition.check_profile(profile)?;
    let d = n + 1 - k;
    let w = profile.total();
    if w == 0 {
        return Ok(1);
    }
    if w < d {
        return Ok(0);
    }
    let mut product: i128 = 1;
    for (&wi, ni) in profile.0.iter().zip(partition.block_sizes()) {
        product = product.checked_mul(binomial(ni, wi)?).ok_or(SpectraError::Overflow)?;
    }
    product.checked_mul(mds_kernel(w, d, q)?).ok_or(SpectraError::Overflow)
}

/// Number of codewords `x` whose per-block disagreement with `center`
/// matches `profile`.
fn count_profile(code: &Code, center: &[u8], partition: &PartitionSpec, profile: &WeightProfile) -> i128 {
    code.words().iter().filter(|x| partition.profile_between(x, center) == *profile).count() as i128
}

fn check_partition(code: &Code, partition: &PartitionSpec) -> Result<(), SpectraError> {
    if partition.n() != code.n() {
        return Err(SpectraError::BadPartition(format!(
            "partition covers {} positions, code has n={}",
            partition.n(),
            code.n()
        )));
    }
    Ok(())
}

/// `A^T(W)` by scanning every codeword.
pub fn partition_weight_enumerator_bruteforce(
    code: &Code,
    partition: &PartitionSpec,
    profile: &WeightProfile,
) -> Result<i128, SpectraError> {
    check_partition(code, partition)?;
    partition.check_profile(profile)?;
    Ok(count_profile(code, &code.zero_word(), partition, profile))
}

/// `E(t, c)`: number of codewords at each distance `t` from `c`.
pub fn distance_distribution_from(code: &Code, c: &[u8]) -> Result<WeightDistribution, SpectraError> {
    if !code.contains(c) {
        return Err(SpectraError::WordNotInCode);
    }
    let mut dist = WeightDistribution::zeros(code.n());
    for x in code.words() {
        dist.bump(distance_unchecked(x, c));
    }
    Ok(dist)
}

/// `A^T(W, c)`: codewords differing from `c` in exactly `w_i` positions of
/// each block `T_i`.
pub fn partition_distance_enumerator(
    code: &Code,
    c: &[u8],
    partition: &PartitionSpec,
    profile: &WeightProfile,
) -> Result<i128, SpectraError> {
    if !code.contains(c) {
        return Err(SpectraError::WordNotInCode);
    }
    check_partition(code, partition)?;
    partition.check_profile(profile)?;
    Ok(count_profile(code, c, partition, profile))
}
