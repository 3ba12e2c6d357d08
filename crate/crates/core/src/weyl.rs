//! The extended affine Weyl group of `GL_r`, realized as period-`r`
//! bijections `w` of the integers with `w(i + r) = w(i) + r`.
//!
//! An element is stored by its window `(w(1), ..., w(r))`. Composition is
//! `(u ∘ w)(i) = u(w(i))`. The rotation `t` is the window `(0, 1, ..., r-1)`,
//! i.e. `i ↦ i - 1`; with this choice `t s_i t⁻¹ = s_{i-1}` (indices mod `r`).

use std::collections::{BTreeMap, VecDeque};
use std::fmt;

use thiserror::Error;

/// Largest rank accepted by the enumeration routines.
pub const MAX_ENUM_RANK: usize = 6;
/// Default cap on `max_len` for enumeration.
pub const DEFAULT_MAX_LEN: u32 = 8;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum WeylError {
    #[error("generator index {index} out of range for rank {rank}")]
    IndexOutOfRange { index: usize, rank: usize },
    #[error("rank mismatch: {0} vs {1}")]
    RankMismatch(usize, usize),
    #[error("window {0:?} does not define an affine permutation")]
    InvalidWindow(Vec<i64>),
    #[error("resource limit: {0}")]
    ResourceLimit(String),
}

/// Generators of the extended affine Weyl group.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Generator {
    /// `s_i` for `0 <= i < r`; `s_0` is the affine reflection.
    S(usize),
    T,
    Tinv,
}

/// An element of the extended affine Weyl group of `GL_r`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct AffinePerm {
    window: Vec<i64>,
}

/// `w = t^omega_power · s_{word[0]} ··· s_{word[last]}` with the word reduced.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReducedDecomposition {
    pub omega_power: i64,
    pub word: Vec<usize>,
}

impl AffinePerm {
    /// Validates that the window entries have pairwise distinct residues mod `r`.
    pub fn new(window: Vec<i64>) -> Result<Self, WeylError> {
        let r = window.len() as i64;
        if r == 0 {
            return Err(WeylError::InvalidWindow(window));
        }
        let mut seen = vec![false; r as usize];
        for &x in &window {
            let res = x.rem_euclid(r) as usize;
            if seen[res] {
                return Err(WeylError::InvalidWindow(window));
            }
            seen[res] = true;
        }
        let p = AffinePerm { window };
        debug_assert_eq!(p.displacement().rem_euclid(r), 0);
        Ok(p)
    }

    pub fn identity(rank: usize) -> Self {
        AffinePerm {
            window: (1..=rank as i64).collect(),
        }
    }

    /// `t^k`, the window `(1-k, ..., r-k)`.
    pub fn rotation_power(rank: usize, k: i64) -> Self {
        AffinePerm {
            window: (1..=rank as i64).map(|i| i - k).collect(),
        }
    }

    pub fn rank(&self) -> usize {
        self.window.len()
    }

    pub fn window(&self) -> &[i64] {
        &self.window
    }

    pub fn is_identity(&self) -> bool {
        self.window
            .iter()
            .enumerate()
            .all(|(i, &x)| x == i as i64 + 1)
    }

    /// `w(i)` for any integer `i`.
    pub fn apply(&self, i: i64) -> i64 {
        let r = self.rank() as i64;
        let q = (i - 1).div_euclid(r);
        let j = (i - 1).rem_euclid(r) as usize;
        self.window[j] + q * r
    }

    fn displacement(&self) -> i64 {
        self.window
            .iter()
            .enumerate()
            .map(|(i, &x)| x - (i as i64 + 1))
            .sum()
    }

    /// `Σ (w(i) - i) / r`. The rotation `t` has degree `-1`.
    pub fn omega_degree(&self) -> i64 {
        self.displacement() / self.rank() as i64
    }

    /// `(self ∘ other)(i) = self(other(i))`.
    pub fn compose(&self, other: &AffinePerm) -> Result<AffinePerm, WeylError> {
        if self.rank() != other.rank() {
            return Err(WeylError::RankMismatch(self.rank(), other.rank()));
        }
        Ok(AffinePerm {
            window: other.window.iter().map(|&x| self.apply(x)).collect(),
        })
    }

    pub fn inverse(&self) -> AffinePerm {
        let r = self.rank() as i64;
        let mut window = vec![0; self.rank()];
        for (i, &x) in self.window.iter().enumerate() {
            // w(i+1) = x, so w⁻¹(x) = i+1 and w⁻¹(res) = i+1 - (x - res).
            let res = (x - 1).rem_euclid(r) + 1;
            window[(res - 1) as usize] = i as i64 + 1 - (x - res);
        }
        AffinePerm { window }
    }

    /// Coxeter length: `Σ_{i<j} |⌊(w(j) - w(i)) / r⌋|`.
    pub fn length(&self) -> u64 {
        let r = self.rank() as i64;
        let w = &self.window;
        let mut total = 0u64;
        for i in 0..w.len() {
            for j in i + 1..w.len() {
                total += (w[j] - w[i]).div_euclid(r).unsigned_abs();
            }
        }
        total
    }

    fn check_index(&self, i: usize) -> Result<(), WeylError> {
        if self.rank() < 2 || i >= self.rank() {
            Err(WeylError::IndexOutOfRange {
                index: i,
                rank: self.rank(),
            })
        } else {
            Ok(())
        }
    }

    /// Whether `ℓ(w s_i) < ℓ(w)`, i.e. `w(i) > w(i+1)` with `w(0) = w(r) - r`.
    pub fn right_descent(&self, i: usize) -> Result<bool, WeylError> {
        self.check_index(i)?;
        Ok(self.has_right_descent(i))
    }

    pub(crate) fn has_right_descent(&self, i: usize) -> bool {
        let r = self.rank();
        if i == 0 {
            self.window[r - 1] - r as i64 > self.window[0]
        } else {
            self.window[i - 1] > self.window[i]
        }
    }

    /// `w · s_i` by swapping window positions; `i` must be valid.
    pub(crate) fn times_simple(&self, i: usize) -> AffinePerm {
        let r = self.rank();
        let mut window = self.window.clone();
        if i == 0 {
            let first = window[0];
            window[0] = window[r - 1] - r as i64;
            window[r - 1] = first + r as i64;
        } else {
            window.swap(i - 1, i);
        }
        AffinePerm { window }
    }

    /// `w · t^k`.
    pub(crate) fn times_rotation(&self, k: i64) -> AffinePerm {
        if k == 0 {
            return self.clone();
        }
        let t = AffinePerm::rotation_power(self.rank(), k);
        AffinePerm {
            window: t.window.iter().map(|&x| self.apply(x)).collect(),
        }
    }

    /// Strips right descents, smallest index first, until a length-zero
    /// element `t^k` remains.
    pub fn reduced_decomposition(&self) -> ReducedDecomposition {
        self.decompose_with(|w| (0..w.rank()).find(|&i| w.has_right_descent(i)))
    }

    /// As [`reduced_decomposition`](Self::reduced_decomposition) but
    /// preferring the largest descent index. Used to cross-check that
    /// products do not depend on the chosen reduced word.
    pub fn reduced_decomposition_largest_first(&self) -> ReducedDecomposition {
        self.decompose_with(|w| (0..w.rank()).rev().find(|&i| w.has_right_descent(i)))
    }

    fn decompose_with(&self, pick: impl Fn(&AffinePerm) -> Option<usize>) -> ReducedDecomposition {
        let mut word = Vec::new();
        let mut w = self.clone();
        if self.rank() >= 2 {
            while let Some(i) = pick(&w) {
                word.push(i);
                w = w.times_simple(i);
            }
        }
        word.reverse();
        debug_assert_eq!(word.len() as u64, self.length());
        ReducedDecomposition {
            omega_power: -w.omega_degree(),
            word,
        }
    }

    /// Rebuilds the element from a decomposition.
    pub fn from_decomposition(rank: usize, dec: &ReducedDecomposition) -> AffinePerm {
        dec.word.iter().fold(
            AffinePerm::rotation_power(rank, dec.omega_power),
            |w, &i| w.times_simple(i),
        )
    }
}

impl fmt::Display for AffinePerm {
    /// `T(a1,...,ar)`
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "T(")?;
        for (i, x) in self.window.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{x}")?;
        }
        write!(f, ")")
    }
}

impl fmt::Debug for AffinePerm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// The window of a generator at the given rank.
pub fn generator(rank: usize, which: Generator) -> Result<AffinePerm, WeylError> {
    match which {
        Generator::T => Ok(AffinePerm::rotation_power(rank, 1)),
        Generator::Tinv => Ok(AffinePerm::rotation_power(rank, -1)),
        Generator::S(i) => {
            if rank < 2 || i >= rank {
                return Err(WeylError::IndexOutOfRange { index: i, rank });
            }
            Ok(AffinePerm::identity(rank).times_simple(i))
        }
    }
}

/// Breadth-first word lengths over `{s_0, ..., s_{r-1}}` for every element
/// of length at most `max_len` in the Ω-cosets of degree `|k| <= max_len`.
///
/// Independent of [`AffinePerm::length`]; used as an oracle.
pub fn bfs_ball(rank: usize, max_len: u32) -> Result<BTreeMap<AffinePerm, u64>, WeylError> {
    bfs_ball_with_limit(rank, max_len, DEFAULT_MAX_LEN)
}

pub fn bfs_ball_with_limit(
    rank: usize,
    max_len: u32,
    len_limit: u32,
) -> Result<BTreeMap<AffinePerm, u64>, WeylError> {
    if rank == 0 || rank > MAX_ENUM_RANK {
        return Err(WeylError::ResourceLimit(format!(
            "rank {rank} outside 1..={MAX_ENUM_RANK}"
        )));
    }
    if max_len > len_limit {
        return Err(WeylError::ResourceLimit(format!(
            "max length {max_len} exceeds {len_limit}"
        )));
    }
    let mut dist = BTreeMap::new();
    let span = max_len as i64;
    for k in -span..=span {
        let start = AffinePerm::rotation_power(rank, k);
        let mut queue = VecDeque::new();
        dist.insert(start.clone(), 0u64);
        queue.push_back(start);
        while let Some(w) = queue.pop_front() {
            let d = dist[&w];
            if d == max_len as u64 || rank < 2 {
                continue;
            }
            for i in 0..rank {
                let next = w.times_simple(i);
                if !dist.contains_key(&next) {
                    dist.insert(next.clone(), d + 1);
                    queue.push_back(next);
                }
            }
        }
    }
    Ok(dist)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(v: &[i64]) -> AffinePerm {
        AffinePerm::new(v.to_vec()).unwrap()
    }

    #[test]
    fn generator_windows() {
        assert_eq!(generator(2, Generator::S(1)).unwrap(), w(&[2, 1]));
        assert_eq!(generator(2, Generator::T).unwrap(), w(&[0, 1]));
        assert_eq!(generator(2, Generator::Tinv).unwrap(), w(&[2, 3]));
        assert_eq!(generator(4, Generator::S(0)).unwrap(), w(&[0, 2, 3, 5]));
        assert_eq!(generator(1, Generator::T).unwrap(), w(&[0]));
        assert!(matches!(
            generator(2, Generator::S(2)),
            Err(WeylError::IndexOutOfRange { .. })
        ));
        assert!(generator(1, Generator::S(0)).is_err());
    }

    #[test]
    fn s0_is_conjugate_of_s1_by_t() {
        let t = generator(2, Generator::T).unwrap();
        let ti = generator(2, Generator::Tinv).unwrap();
        let s1 = generator(2, Generator::S(1)).unwrap();
        let conj = t.compose(&s1).unwrap().compose(&ti).unwrap();
        assert_eq!(conj, w(&[0, 3]));
        assert_eq!(conj, generator(2, Generator::S(0)).unwrap());
    }

    #[test]
    fn compose_examples() {
        let s1 = generator(2, Generator::S(1)).unwrap();
        assert!(s1.compose(&s1).unwrap().is_identity());
        for r in 1..5 {
            let t = generator(r, Generator::T).unwrap();
            let ti = generator(r, Generator::Tinv).unwrap();
            assert!(t.compose(&ti).unwrap().is_identity());
            assert_eq!(t.inverse(), ti);
        }
        let t = generator(3, Generator::T).unwrap();
        let ti = generator(3, Generator::Tinv).unwrap();
        let s1 = generator(3, Generator::S(1)).unwrap();
        let s2 = generator(3, Generator::S(2)).unwrap();
        assert_eq!(ti.compose(&s1.compose(&t).unwrap()).unwrap(), s2);
        assert_eq!(
            s1.compose(&generator(2, Generator::T).unwrap()),
            Err(WeylError::RankMismatch(3, 2))
        );
    }

    #[test]
    fn conjugation_by_t_shifts_indices() {
        for r in 2..6 {
            let t = generator(r, Generator::T).unwrap();
            let ti = generator(r, Generator::Tinv).unwrap();
            for i in 0..r {
                let si = generator(r, Generator::S(i)).unwrap();
                let expect = generator(r, Generator::S((i + r - 1) % r)).unwrap();
                assert_eq!(t.compose(&si).unwrap().compose(&ti).unwrap(), expect);
            }
        }
    }

    #[test]
    fn length_examples() {
        assert_eq!(AffinePerm::identity(3).length(), 0);
        assert_eq!(w(&[2, 1]).length(), 1);
        assert_eq!(w(&[0, 3]).length(), 1);
        assert_eq!(w(&[0, 1]).length(), 0);
        for k in -3..=3 {
            assert_eq!(AffinePerm::rotation_power(4, k).length(), 0);
        }
    }

    #[test]
    fn descent_examples() {
        for i in 0..3 {
            assert!(!AffinePerm::identity(3).right_descent(i).unwrap());
        }
        assert!(w(&[2, 1]).right_descent(1).unwrap());
        assert!(w(&[0, 3]).right_descent(0).unwrap());
        assert!(w(&[2, 1]).right_descent(2).is_err());
        assert!(w(&[5]).right_descent(0).is_err());
    }

    #[test]
    fn decomposition_examples() {
        let id = AffinePerm::identity(2).reduced_decomposition();
        assert_eq!(
            id,
            ReducedDecomposition {
                omega_power: 0,
                word: vec![]
            }
        );
        let t = w(&[0, 1]).reduced_decomposition();
        assert_eq!(
            t,
            ReducedDecomposition {
                omega_power: 1,
                word: vec![]
            }
        );
        let s = w(&[2, 1]).reduced_decomposition();
        assert_eq!(
            s,
            ReducedDecomposition {
                omega_power: 0,
                word: vec![1]
            }
        );
    }

    #[test]
    fn inverse_round_trips() {
        let x = w(&[-2, 7, 4, 1]);
        assert!(x.compose(&x.inverse()).unwrap().is_identity());
        assert!(x.inverse().compose(&x).unwrap().is_identity());
    }

    #[test]
    fn invalid_windows_rejected() {
        assert!(AffinePerm::new(vec![1, 3]).is_err());
        assert!(AffinePerm::new(vec![]).is_err());
        assert!(AffinePerm::new(vec![4, 1, 2]).is_err());
    }

    #[test]
    fn bfs_small_cases() {
        let ball = bfs_ball(2, 0).unwrap();
        assert!(ball.values().all(|&d| d == 0));
        assert_eq!(ball.len(), 1);
        let ball = bfs_ball(2, 2).unwrap();
        for (x, &d) in &ball {
            assert_eq!(x.length(), d, "{x}");
        }
        let sizes: Vec<usize> = (0..=3).map(|l| bfs_ball(3, l).unwrap().len()).collect();
        assert!(sizes.windows(2).all(|p| p[0] < p[1]), "{sizes:?}");
        assert!(bfs_ball(7, 1).is_err());
        assert!(bfs_ball(2, 9).is_err());
    }

    #[test]
    fn descents_track_length_changes() {
        for r in 2..=4 {
            for (x, _) in bfs_ball(r, 4).unwrap() {
                let l = x.length();
                for i in 0..r {
                    let y = x.times_simple(i);
                    let ly = y.length();
                    assert_eq!(ly.abs_diff(l), 1);
                    assert_eq!(x.right_descent(i).unwrap(), ly < l);
                }
            }
        }
    }

    #[test]
    fn decomposition_round_trips() {
        for r in 1..=4 {
            for (x, _) in bfs_ball(r, 6).unwrap() {
                for dec in [
                    x.reduced_decomposition(),
                    x.reduced_decomposition_largest_first(),
                ] {
                    assert_eq!(dec.word.len() as u64, x.length());
                    assert_eq!(AffinePerm::from_decomposition(r, &dec), x);
                }
            }
        }
    }
}
