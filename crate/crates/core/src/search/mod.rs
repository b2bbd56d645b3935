//! Exhaustive enumeration of MDS codes for tiny parameters.
//!
//! Any `q^k` words with pairwise distance at least `n-k+1` project
//! injectively (hence bijectively) onto their first `k` coordinates. Sorted
//! lexicographically, the `i`-th word therefore begins with the base-`q`
//! digits of `i`. The search assigns one suffix of length `n-k` to every
//! prefix, which lists each code exactly once. Every unassigned prefix keeps
//! the set of suffixes still at distance `>= d` from all chosen words; the
//! sets shrink as words are chosen and are restored from a trail on
//! backtrack. The next prefix to fill is the one with fewest candidates.
//!
//! Top-level branches run in parallel; results merge in branch order, so
//! counts and collected codes do not depend on scheduling.

mod theorems;

pub(crate) use theorems::render_set;
pub use theorems::{
    check_theorems, verify_bounds, verify_distribution, verify_spectrum_theorems, TheoremReport, Verdict,
};

use std::env;
use std::sync::atomic::{AtomicUsize, Ordering};

use rayon::prelude::*;
use thiserror::Error;

use crate::code::{Code, CodeError, Codeword, MAX_ALPHABET};
use crate::spectra::SpectraError;
use crate::transforms::TransformError;

pub const MAX_SEARCH_ENV: &str = "MDSKIT_MAX_SEARCH";

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SearchError {
    #[error("search space too large: {0}")]
    SearchSpaceTooLarge(String),
    #[error("invalid search parameters: {0}")]
    InvalidParameters(String),
    #[error("bad value for {MAX_SEARCH_ENV}: `{0}`")]
    BadLimit(String),
    #[error("code is not MDS")]
    NotMds,
    #[error("code does not contain the zero word")]
    ZeroWordAbsent,
    #[error(transparent)]
    Code(#[from] CodeError),
    #[error(transparent)]
    Spectra(#[from] SpectraError),
    #[error(transparent)]
    Transform(#[from] TransformError),
}

/// Guards against accidental exponential runs.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SearchLimits {
    /// Largest `q^k` allowed.
    pub max_code_size: usize,
    pub max_length: usize,
    /// Largest ambient space `q^n` allowed.
    pub max_space: usize,
}

impl Default for SearchLimits {
    fn default() -> Self {
        Self { max_code_size: 1 << 16, max_length: 12, max_space: 1 << 20 }
    }
}

impl SearchLimits {
    /// Defaults, with `max_space` taken from `MDSKIT_MAX_SEARCH` when set.
    pub fn from_env() -> Result<Self, SearchError> {
        let mut limits = Self::default();
        if let Ok(raw) = env::var(MAX_SEARCH_ENV) {
            limits.max_space = raw.trim().parse().map_err(|_| SearchError::BadLimit(raw.clone()))?;
        }
        Ok(limits)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SearchMode {
    Count,
    Exists,
    Collect,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SearchSpec {
    pub n: usize,
    pub k: usize,
    pub q: usize,
    pub require_zero: bool,
    pub mode: SearchMode,
    /// Maximum number of codes kept in `Collect` mode.
    pub limit: usize,
    pub limits: SearchLimits,
}

impl SearchSpec {
    pub fn new(n: usize, k: usize, q: usize) -> Self {
        Self {
            n,
            k,
            q,
            require_zero: false,
            mode: SearchMode::Count,
            limit: usize::MAX,
            limits: SearchLimits::default(),
        }
    }

    pub fn require_zero(mut self, yes: bool) -> Self {
        self.require_zero = yes;
        self
    }

    pub fn mode(mut self, mode: SearchMode) -> Self {
        self.mode = mode;
        self
    }

    pub fn limit(mut self, limit: usize) -> Self {
        self.limit = limit;
        self
    }

    pub fn limits(mut self, limits: SearchLimits) -> Self {
        self.limits = limits;
        self
    }

    fn check(&self) -> Result<(), SearchError> {
        let (n, k, q) = (self.n, self.k, self.q);
        if !(2..=MAX_ALPHABET).contains(&q) {
            return Err(SearchError::InvalidParameters(format!("alphabet size q={q}")));
        }
        let too_large = |what: String| Err(SearchError::SearchSpaceTooLarge(what));
        if n > self.limits.max_length {
            return too_large(format!("n={n} exceeds {}", self.limits.max_length));
        }
        match checked_pow(q, k) {
            Some(size) if size <= self.limits.max_code_size => {}
            _ => return too_large(format!("q^k={q}^{k} exceeds {}", self.limits.max_code_size)),
        }
        match checked_pow(q, n) {
            Some(space) if space <= self.limits.max_space => {}
            _ => return too_large(format!("q^n={q}^{n} exceeds {}", self.limits.max_space)),
        }
        Ok(())
    }
}

fn checked_pow(base: usize, exp: usize) -> Option<usize> {
    (0..exp).try_fold(1usize, |acc, _| acc.checked_mul(base))
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct SearchOutcome {
    /// Codes found (in `Exists` mode, 0 or 1).
    pub count: u64,
    /// Collected codes (`Collect`), or the witness (`Exists`).
    pub codes: Vec<Code>,
    /// `Collect` reached `limit`; `count` is then a lower bound.
    pub truncated: bool,
}

/// Enumerates every set of `q^k` words of length `n` with pairwise distance
/// at least `n-k+1`, optionally restricted to sets containing the zero word.
///
/// `Exists` mode additionally fixes a normal form reachable by symbol
/// permutations (see [`exists_mds`]), so it only answers existence.
pub fn enumerate_mds(spec: &SearchSpec) -> Result<SearchOutcome, SearchError> {
    spec.check()?;
    if spec.n < spec.k {
        // q^k words cannot fit in q^n < q^k
        return Ok(SearchOutcome::default());
    }
    let layout = Layout::new(spec.n, spec.k, spec.q);
    let Some(root) = layout.initial_state(spec.require_zero, spec.mode == SearchMode::Exists) else {
        return Ok(SearchOutcome::default());
    };

    let limit = match spec.mode {
        SearchMode::Count => usize::MAX,
        SearchMode::Exists => 1,
        SearchMode::Collect => spec.limit,
    };
    let keep = spec.mode != SearchMode::Count;

    let Some(first) = root.most_constrained() else {
        // every prefix already assigned
        let mut sink = Sink::new(limit, keep);
        sink.record(&root);
        return Ok(sink.finish(&layout, spec.mode));
    };
    let branches: Vec<u32> = root.candidates(first).to_vec();
    // lowest branch index that has satisfied an Exists query
    let found_at = AtomicUsize::new(usize::MAX);
    let results: Vec<Sink> = branches
        .par_iter()
        .enumerate()
        .map(|(idx, &s)| {
            let mut sink = Sink::new(limit, keep);
            let mut state = root.clone();
            if state.assign(&layout, first, s) {
                let cancelled = || spec.mode == SearchMode::Exists && found_at.load(Ordering::Relaxed) < idx;
                state.dfs(&layout, &mut sink, &cancelled);
                if spec.mode == SearchMode::Exists && sink.count > 0 {
                    found_at.fetch_min(idx, Ordering::Relaxed);
                }
            }
            sink
        })
        .collect();

    let mut merged = Sink::new(limit, keep);
    for sink in results {
        merged.absorb(sink);
    }
    Ok(merged.finish(&layout, spec.mode))
}

/// Whether any `(n,k)_q` MDS code exists.
///
/// Searches only codes in a normal form every equivalence class meets: the
/// words beginning `(0,...,0,j)` are `(0,...,0,j,j,...,j)`, and for `k >= 2`
/// the word beginning `(i,0,...,0)` has `i` in coordinate `k+1`. Both are
/// reached by symbol permutations, on coordinates `k+1..n` and on
/// coordinate 1 respectively.
pub fn exists_mds(n: usize, k: usize, q: usize) -> Result<bool, SearchError> {
    exists_mds_with(n, k, q, SearchLimits::default())
}

pub fn exists_mds_with(n: usize, k: usize, q: usize, limits: SearchLimits) -> Result<bool, SearchError> {
    let spec = SearchSpec::new(n, k, q).mode(SearchMode::Exists).limits(limits);
    Ok(enumerate_mds(&spec)?.count > 0)
}

const UNASSIGNED: u32 = u32::MAX;

/// Index arithmetic shared by all branches.
struct Layout {
    n: usize,
    k: usize,
    q: usize,
    d: usize,
    prefixes: usize,
    suffixes: usize,
    prefix_digits: Vec<u8>,
    suffix_digits: Vec<u8>,
    suffix_dist: Option<Vec<u8>>,
}

impl Layout {
    fn new(n: usize, k: usize, q: usize) -> Self {
        let prefixes = checked_pow(q, k).expect("guarded");
        let suffixes = checked_pow(q, n - k).expect("guarded");
        let digits = |count: usize, len: usize| -> Vec<u8> {
            let mut out = vec![0u8; count * len];
            for x in 0..count {
                let mut v = x;
                for pos in (0..len).rev() {
                    out[x * len + pos] = (v % q) as u8;
                    v /= q;
                }
            }
            out
        };
        let prefix_digits = digits(prefixes, k);
        let suffix_digits = digits(suffixes, n - k);
        let mut layout =
            Self { n, k, q, d: n - k + 1, prefixes, suffixes, prefix_digits, suffix_digits, suffix_dist: None };
        if suffixes <= 4096 {
            let mut table = vec![0u8; suffixes * suffixes];
            for a in 0..suffixes {
                for b in 0..suffixes {
                    table[a * suffixes + b] = layout.raw_suffix_distance(a, b) as u8;
                }
            }
            layout.suffix_dist = Some(table);
        }
        layout
    }

    fn prefix(&self, p: usize) -> &[u8] {
        &self.prefix_digits[p * self.k..(p + 1) * self.k]
    }

    fn suffix(&self, s: usize) -> &[u8] {
        let m = self.n - self.k;
        &self.suffix_digits[s * m..(s + 1) * m]
    }

    fn prefix_distance(&self, a: usize, b: usize) -> usize {
        crate::code::distance_unchecked(self.prefix(a), self.prefix(b))
    }

    fn raw_suffix_distance(&self, a: usize, b: usize) -> usize {
        crate::code::distance_unchecked(self.suffix(a), self.suffix(b))
    }

    fn suffix_distance(&self, a: usize, b: usize) -> usize {
        match &self.suffix_dist {
            Some(table) => table[a * self.suffixes + b] as usize,
            None => self.raw_suffix_distance(a, b),
        }
    }

    fn word(&self, p: usize, s: usize) -> Codeword {
        let mut w = self.prefix(p).to_vec();
        w.extend_from_slice(self.suffix(s));
        w
    }

    fn suffix_index(&self, digits: impl Iterator<Item = usize>) -> u32 {
        digits.fold(0, |acc, d| acc * self.q + d) as u32
    }

    fn initial_state(&self, require_zero: bool, normal_form: bool) -> Option<State> {
        let all: Vec<u32> = (0..self.suffixes as u32).collect();
        let mut cand = vec![all; self.prefixes];
        let m = self.n - self.k;
        if normal_form && m > 0 {
            for (p, list) in cand.iter_mut().enumerate() {
                let digits = self.prefix(p);
                let (head, last) = digits.split_at(self.k - 1);
                if head.iter().all(|&x| x == 0) {
                    let j = last[0] as usize;
                    *list = vec![self.suffix_index(std::iter::repeat_n(j, m))];
                } else if self.k >= 2 && digits[1..].iter().all(|&x| x == 0) {
                    let i = digits[0];
                    list.retain(|&s| self.suffix(s as usize)[0] == i);
                }
            }
        }
        let len = cand.iter().map(|c| c.len() as u32).collect();
        let mut state = State { cand, len, assigned: vec![UNASSIGNED; self.prefixes], trail: Vec::new() };
        if require_zero && !state.assign(self, 0, 0) {
            return None;
        }
        Some(state)
    }
}

#[derive(Clone)]
struct State {
    /// Per prefix, the live candidates are `cand[p][..len[p]]`; removed ones
    /// are parked behind `len[p]` so restoring the length restores the set.
    cand: Vec<Vec<u32>>,
    len: Vec<u32>,
    assigned: Vec<u32>,
    trail: Vec<(u32, u32)>,
}

impl State {
    fn candidates(&self, p: usize) -> &[u32] {
        &self.cand[p][..self.len[p] as usize]
    }

    /// Unassigned prefix with fewest candidates, lowest index on ties.
    fn most_constrained(&self) -> Option<usize> {
        (0..self.assigned.len()).filter(|&p| self.assigned[p] == UNASSIGNED).min_by_key(|&p| self.len[p])
    }

    /// Places word `(p, s)` and forward-checks; false on a wipe-out (the
    /// caller must then `undo`).
    fn assign(&mut self, layout: &Layout, p: usize, s: u32) -> bool {
        self.assigned[p] = s;
        for other in 0..layout.prefixes {
            if self.assigned[other] != UNASSIGNED {
                continue;
            }
            let pd = layout.prefix_distance(p, other);
            if pd >= layout.d {
                continue;
            }
            let need = layout.d - pd;
            let list = &mut self.cand[other];
            let old = self.len[other] as usize;
            let mut live = old;
            let mut i = 0;
            while i < live {
                if layout.suffix_distance(s as usize, list[i] as usize) >= need {
                    i += 1;
                } else {
                    live -= 1;
                    list.swap(i, live);
                }
            }
            if live != old {
                self.trail.push((other as u32, old as u32));
                self.len[other] = live as u32;
                if live == 0 {
                    return false;
                }
            }
        }
        true
    }

    fn undo(&mut self, mark: usize, p: usize) {
        while self.trail.len() > mark {
            let (other, old) = self.trail.pop().expect("trail");
            self.len[other as usize] = old;
        }
        self.assigned[p] = UNASSIGNED;
    }

    fn dfs(&mut self, layout: &Layout, sink: &mut Sink, cancelled: &dyn Fn() -> bool) {
        struct Frame {
            prefix: usize,
            next: usize,
            mark: usize,
        }
        let mut stack: Vec<Frame> = Vec::new();
        loop {
            match self.most_constrained() {
                None => {
                    sink.record(self);
                    if sink.full() {
                        return;
                    }
                }
                Some(p) => stack.push(Frame { prefix: p, next: 0, mark: self.trail.len() }),
            }
            // advance to the next consistent choice, backtracking as needed
            loop {
                let Some(top) = stack.last_mut() else { return };
                self.undo(top.mark, top.prefix);
                if cancelled() {
                    return;
                }
                let mut placed = false;
                while top.next < self.len[top.prefix] as usize {
                    let s = self.cand[top.prefix][top.next];
                    top.next += 1;
                    if self.assign(layout, top.prefix, s) {
                        placed = true;
                        break;
                    }
                    self.undo(top.mark, top.prefix);
                }
                if placed {
                    break;
                }
                stack.pop();
            }
        }
    }
}

/// Accumulates results for one branch.
struct Sink {
    count: u64,
    limit: usize,
    keep: bool,
    found: Vec<Vec<u32>>,
    truncated: bool,
}

impl Sink {
    fn new(limit: usize, keep: bool) -> Self {
        Self { count: 0, limit, keep, found: Vec::new(), truncated: false }
    }

    fn record(&mut self, state: &State) {
        self.count += 1;
        if self.keep && self.found.len() < self.limit {
            self.found.push(state.assigned.clone());
        }
    }

    fn full(&self) -> bool {
        self.keep && self.found.len() >= self.limit
    }

    fn absorb(&mut self, other: Sink) {
        self.count += other.count;
        for code in other.found {
            if self.found.len() < self.limit {
                self.found.push(code);
            } else {
                self.truncated = true;
            }
        }
        self.truncated |= other.truncated;
    }

    fn finish(mut self, layout: &Layout, mode: SearchMode) -> SearchOutcome {
        match mode {
            SearchMode::Exists => {
                self.found.truncate(1);
                self.count = self.found.len() as u64;
            }
            SearchMode::Collect => {
                // a branch that filled up stopped early, so more codes may exist
                self.truncated |= self.found.len() >= self.limit;
                if self.truncated {
                    self.count = self.found.len() as u64;
                }
            }
            SearchMode::Count => {}
        }
        let mut codes: Vec<Code> = self
            .found
            .iter()
            .map(|assignment| {
                let words = assignment.iter().enumerate().map(|(p, &s)| layout.word(p, s as usize)).collect();
                Code::new(layout.q, layout.n, words).expect("search emits valid codes")
            })
            .collect();
        codes.sort_by(|a, b| a.words().cmp(b.words()));
        SearchOutcome { count: self.count, codes, truncated: self.truncated }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::code::is_mds;

    fn count(n: usize, k: usize, q: usize, zero: bool) -> u64 {
        enumerate_mds(&SearchSpec::new(n, k, q).require_zero(zero)).unwrap().count
    }

    #[test]
    fn tiny_counts() {
        assert_eq!(count(3, 2, 2, true), 1);
        assert_eq!(count(3, 2, 2, false), 2);
        assert_eq!(count(4, 2, 2, false), 0);
        assert_eq!(count(4, 3, 2, true), 1);
        assert_eq!(count(2, 3, 2, false), 0);
        assert_eq!(count(3, 3, 2, false), 1);
        // repetition codes: (n,1)_q codes containing zero are q-1 ... choices
        // of a permutation per extra coordinate
        assert_eq!(count(2, 1, 3, true), 2);
        assert_eq!(count(3, 1, 3, true), 4);
    }

    #[test]
    fn the_three_two_binary_code() {
        let out = enumerate_mds(&SearchSpec::new(3, 2, 2).require_zero(true).mode(SearchMode::Collect)).unwrap();
        assert_eq!(out.codes.len(), 1);
        let expected = Code::new(2, 3, vec![vec![0, 0, 0], vec![0, 1, 1], vec![1, 0, 1], vec![1, 1, 0]]).unwrap();
        assert_eq!(out.codes[0], expected);
    }

    #[test]
    fn collected_codes_are_mds() {
        let out = enumerate_mds(&SearchSpec::new(4, 2, 3).mode(SearchMode::Collect)).unwrap();
        assert_eq!(out.count as usize, out.codes.len());
        assert!(!out.truncated);
        for c in &out.codes {
            assert!(is_mds(c).unwrap().is_mds);
        }
        let counted = count(4, 2, 3, false);
        assert_eq!(counted, out.count);
    }

    #[test]
    fn collect_limit_truncates() {
        let out = enumerate_mds(&SearchSpec::new(4, 2, 3).mode(SearchMode::Collect).limit(5)).unwrap();
        assert_eq!(out.codes.len(), 5);
        assert!(out.truncated);
        let again = enumerate_mds(&SearchSpec::new(4, 2, 3).mode(SearchMode::Collect).limit(5)).unwrap();
        assert_eq!(out, again);
    }

    #[test]
    fn existence() {
        assert!(exists_mds(4, 2, 3).unwrap());
        assert!(!exists_mds(5, 2, 3).unwrap());
        assert!(exists_mds(3, 3, 2).unwrap());
        assert!(!exists_mds(4, 2, 2).unwrap());
        assert!(exists_mds(6, 3, 4).unwrap());
        assert!(exists_mds(3, 2, 6).unwrap());
        let witness = enumerate_mds(&SearchSpec::new(5, 2, 4).mode(SearchMode::Exists)).unwrap();
        assert_eq!(witness.codes.len(), 1);
        assert!(is_mds(&witness.codes[0]).unwrap().is_mds);
    }

    #[test]
    fn guards() {
        assert!(matches!(enumerate_mds(&SearchSpec::new(13, 1, 2)), Err(SearchError::SearchSpaceTooLarge(_))));
        assert!(matches!(enumerate_mds(&SearchSpec::new(12, 2, 4)), Err(SearchError::SearchSpaceTooLarge(_))));
        let tight = SearchLimits { max_space: 8, ..SearchLimits::default() };
        assert!(matches!(
            enumerate_mds(&SearchSpec::new(4, 2, 2).limits(tight)),
            Err(SearchError::SearchSpaceTooLarge(_))
        ));
        assert!(matches!(enumerate_mds(&SearchSpec::new(2, 1, 1)), Err(SearchError::InvalidParameters(_))));
    }

    #[test]
    fn dimension_zero_is_any_single_word() {
        assert_eq!(count(2, 0, 3, false), 9);
        assert_eq!(count(2, 0, 3, true), 1);
    }
}
