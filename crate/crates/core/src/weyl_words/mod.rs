//! Symmetric-group machinery for type `A_n`.
//!
//! The Weyl group is `S_{n+1}` acting on `{1, ..., n+1}`. A permutation is
//! stored by its images, `s_i` swaps the letters `i` and `i+1`, and positive
//! roots `alpha_i + ... + alpha_{j-1}` are written as pairs `(i, j)` with
//! `i < j`.
//!
//! Reduced words of the longest element `w0` index the positive roots through
//! `beta_k = s_{i_1} ... s_{i_{k-1}} (alpha_{i_k})`, and braid moves between
//! reduced words drive the piecewise-linear transition maps in [`braid`].

pub mod braid;

pub use braid::{
    all_reduced_words, braid_path, braid_path_bfs, braid_path_exchange, replay, transition, transition_along,
    BraidMove, MoveKind, BFS_MAX_RANK, BFS_STATE_CAP,
};

use crate::error::{Error, Result};
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use std::fmt;

/// Lie type `A_n`, `n >= 1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(transparent)]
pub struct Rank(usize);

impl Rank {
    pub fn new(n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidRank(n));
        }
        Ok(Rank(n))
    }

    pub fn n(self) -> usize {
        self.0
    }

    /// Number of positive roots, which is also the length of `w0`.
    pub fn num_roots(self) -> usize {
        self.0 * (self.0 + 1) / 2
    }

    /// Rank whose longest element has length `len`, if any.
    pub fn from_num_roots(len: usize) -> Option<Self> {
        (1..=64).map(Rank).find(|r| r.num_roots() == len)
    }

    /// All positive roots in the canonical order: `(i1, j1) < (i2, j2)` iff
    /// `j1 < j2`, or `j1 == j2` and `i1 < i2`. This is the root order of the
    /// lexicographically minimal reduced word.
    pub fn roots(self) -> impl Iterator<Item = RootIndexPi> {
        let n = self.0;
        (2..=n + 1).flat_map(|j| (1..j).map(move |i| RootIndexPi { i, j }))
    }

    /// Position of a root in [`Rank::roots`].
    pub fn root_index(self, root: RootIndexPi) -> usize {
        debug_assert!(root.i < root.j && root.j <= self.0 + 1);
        (root.j - 1) * (root.j - 2) / 2 + (root.i - 1)
    }

    pub(crate) fn check_index(self, i: usize) -> Result<()> {
        if i == 0 || i > self.0 {
            Err(Error::IndexOutOfRange { index: i, max: self.0 })
        } else {
            Ok(())
        }
    }
}

impl<'de> Deserialize<'de> for Rank {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let n = usize::deserialize(d)?;
        Rank::new(n).map_err(serde::de::Error::custom)
    }
}

impl fmt::Display for Rank {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "A_{}", self.0)
    }
}

/// A positive root `alpha_i + ... + alpha_{j-1}`, `1 <= i < j <= n+1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct RootIndexPi {
    pub i: usize,
    pub j: usize,
}

impl RootIndexPi {
    pub fn new(i: usize, j: usize) -> Self {
        assert!(0 < i && i < j, "not a positive root: ({i}, {j})");
        RootIndexPi { i, j }
    }

    /// Coefficients on the simple roots, as a weight vector of rank `rank`.
    pub fn as_weight(self, rank: Rank) -> WeightVector {
        let mut c = vec![0i64; rank.n()];
        for p in self.i..self.j {
            c[p - 1] = 1;
        }
        WeightVector(c)
    }

    /// Height of the root, i.e. the number of simple roots it contains.
    pub fn height(self) -> usize {
        self.j - self.i
    }
}

impl fmt::Display for RootIndexPi {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.i, self.j)
    }
}

/// An element `sum c_i alpha_i` of the root lattice.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct WeightVector(pub Vec<i64>);

impl WeightVector {
    pub fn zero(rank: Rank) -> Self {
        WeightVector(vec![0; rank.n()])
    }

    pub fn coeffs(&self) -> &[i64] {
        &self.0
    }

    /// `<h_i, self>` for the type `A_n` Cartan matrix (1-based `i`).
    pub fn pair_with_coroot(&self, i: usize) -> i64 {
        let c = &self.0;
        let at = |k: usize| if k == 0 || k > c.len() { 0 } else { c[k - 1] };
        2 * at(i) - at(i - 1) - at(i + 1)
    }

    /// `self + k * alpha_i`.
    pub fn add_simple(&self, i: usize, k: i64) -> Self {
        let mut c = self.0.clone();
        c[i - 1] += k;
        WeightVector(c)
    }

    pub fn neg(&self) -> Self {
        WeightVector(self.0.iter().map(|x| -x).collect())
    }
}

/// A permutation of `{1, ..., n+1}` stored by its images.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(transparent)]
pub struct Permutation(Vec<usize>);

impl Permutation {
    pub fn from_images(images: Vec<usize>) -> Result<Self> {
        let m = images.len();
        let mut seen = vec![false; m + 1];
        for &x in &images {
            if x == 0 || x > m || seen[x] {
                return Err(Error::InvalidPermutation(images));
            }
            seen[x] = true;
        }
        Ok(Permutation(images))
    }

    pub fn identity(rank: Rank) -> Self {
        Permutation((1..=rank.n() + 1).collect())
    }

    /// The longest element `k -> n+2-k`.
    pub fn longest(rank: Rank) -> Self {
        let m = rank.n() + 1;
        Permutation((1..=m).map(|k| m + 1 - k).collect())
    }

    pub fn images(&self) -> &[usize] {
        &self.0
    }

    /// Image of `k` (1-based).
    pub fn apply(&self, k: usize) -> usize {
        self.0[k - 1]
    }

    /// `self * s_i`: swaps the images at positions `i` and `i+1`.
    pub fn mul_simple_right(&mut self, i: usize) {
        self.0.swap(i - 1, i);
    }

    /// `s_i * self`: swaps the values `i` and `i+1`.
    pub fn mul_simple_left(&mut self, i: usize) {
        for x in self.0.iter_mut() {
            if *x == i {
                *x = i + 1;
            } else if *x == i + 1 {
                *x = i;
            }
        }
    }

    /// `(self * other)(k) = self(other(k))`.
    pub fn compose(&self, other: &Permutation) -> Permutation {
        Permutation(other.0.iter().map(|&k| self.apply(k)).collect())
    }

    pub fn inverse(&self) -> Permutation {
        let mut inv = vec![0; self.0.len()];
        for (k, &x) in self.0.iter().enumerate() {
            inv[x - 1] = k + 1;
        }
        Permutation(inv)
    }

    /// Coxeter length, the number of inversions.
    pub fn length(&self) -> usize {
        let v = &self.0;
        let mut count = 0;
        for a in 0..v.len() {
            for b in a + 1..v.len() {
                if v[a] > v[b] {
                    count += 1;
                }
            }
        }
        count
    }

    /// Whether `s_i` is a left descent, i.e. `l(s_i w) < l(w)`.
    pub fn has_left_descent(&self, i: usize) -> bool {
        let inv = self.inverse();
        inv.apply(i) > inv.apply(i + 1)
    }

    /// Product `s_{i_1} ... s_{i_k}`.
    pub fn from_word(rank: Rank, letters: &[usize]) -> Permutation {
        let mut w = Permutation::identity(rank);
        for &i in letters {
            w.mul_simple_right(i);
        }
        w
    }

    /// All permutations of `S_{n+1}` in lexicographic order of images.
    pub fn all(rank: Rank) -> Vec<Permutation> {
        let mut cur: Vec<usize> = (1..=rank.n() + 1).collect();
        let mut out = vec![Permutation(cur.clone())];
        while next_permutation(&mut cur) {
            out.push(Permutation(cur.clone()));
        }
        out
    }
}

fn next_permutation(v: &mut [usize]) -> bool {
    if v.len() < 2 {
        return false;
    }
    let mut i = v.len() - 1;
    while i > 0 && v[i - 1] >= v[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = v.len() - 1;
    while v[j] <= v[i - 1] {
        j -= 1;
    }
    v.swap(i - 1, j);
    v[i..].reverse();
    true
}

/// True iff `letters` is a reduced word of `w0` for `rank`.
pub fn is_reduced_word_of_w0(letters: &[usize], rank: Rank) -> bool {
    if letters.len() != rank.num_roots() {
        return false;
    }
    let mut w = Permutation::identity(rank);
    for &i in letters {
        if i == 0 || i > rank.n() {
            return false;
        }
        // Right multiplication by s_i increases the length iff w(i) < w(i+1).
        if w.apply(i) > w.apply(i + 1) {
            return false;
        }
        w.mul_simple_right(i);
    }
    w == Permutation::longest(rank)
}

/// A reduced word `(i_1, ..., i_N)` of the longest element.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ReducedWord {
    rank: Rank,
    letters: Vec<usize>,
}

impl ReducedWord {
    pub fn new(rank: Rank, letters: Vec<usize>) -> Result<Self> {
        if !is_reduced_word_of_w0(&letters, rank) {
            return Err(Error::NotReduced(letters));
        }
        Ok(ReducedWord { rank, letters })
    }

    /// Infers the rank from the word length.
    pub fn from_letters(letters: Vec<usize>) -> Result<Self> {
        let rank = Rank::from_num_roots(letters.len()).ok_or_else(|| Error::NotReduced(letters.clone()))?;
        ReducedWord::new(rank, letters)
    }

    /// The lexicographically minimal reduced word `(1, 2, 1, 3, 2, 1, ..., n, ..., 1)`.
    pub fn lex_min(rank: Rank) -> Self {
        let letters = (1..=rank.n()).flat_map(|m| (1..=m).rev()).collect();
        ReducedWord { rank, letters }
    }

    pub(crate) fn new_unchecked(rank: Rank, letters: Vec<usize>) -> Self {
        debug_assert!(is_reduced_word_of_w0(&letters, rank));
        ReducedWord { rank, letters }
    }

    pub fn rank(&self) -> Rank {
        self.rank
    }

    pub fn letters(&self) -> &[usize] {
        &self.letters
    }

    /// Positive roots `(beta_1, ..., beta_N)` in the order induced by the word.
    pub fn roots_in_order(&self) -> Vec<RootIndexPi> {
        let mut w = Permutation::identity(self.rank);
        let mut out = Vec::with_capacity(self.letters.len());
        for &i in &self.letters {
            // w(alpha_i) = e_{w(i)} - e_{w(i+1)}, positive because the word is reduced.
            out.push(RootIndexPi { i: w.apply(i), j: w.apply(i + 1) });
            w.mul_simple_right(i);
        }
        out
    }
}

/// Free-function form of [`ReducedWord::roots_in_order`].
pub fn roots_in_order(word: &ReducedWord) -> Vec<RootIndexPi> {
    word.roots_in_order()
}

impl Serialize for ReducedWord {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.letters.serialize(s)
    }
}

impl<'de> Deserialize<'de> for ReducedWord {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let letters = Vec::<usize>::deserialize(d)?;
        ReducedWord::from_letters(letters).map_err(serde::de::Error::custom)
    }
}

impl fmt::Display for ReducedWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (k, i) in self.letters.iter().enumerate() {
            if k > 0 {
                write!(f, ",")?;
            }
            write!(f, "{i}")?;
        }
        write!(f, ")")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(n: usize) -> Rank {
        Rank::new(n).unwrap()
    }

    #[test]
    fn reduced_word_recognition() {
        assert!(is_reduced_word_of_w0(&[1, 2, 1], r(2)));
        assert!(!is_reduced_word_of_w0(&[1, 2, 2], r(2)));
        assert!(is_reduced_word_of_w0(&[1, 2, 1, 3, 2, 1], r(3)));
        assert!(!is_reduced_word_of_w0(&[1, 2], r(2)));
        assert!(!is_reduced_word_of_w0(&[1, 3, 1], r(2)));
        assert_eq!(ReducedWord::lex_min(r(3)).letters(), &[1, 2, 1, 3, 2, 1]);
        assert!(Rank::new(0).is_err());
    }

    #[test]
    fn roots_of_rank_two_words() {
        let p = |i, j| RootIndexPi::new(i, j);
        let w = ReducedWord::new(r(2), vec![1, 2, 1]).unwrap();
        assert_eq!(w.roots_in_order(), vec![p(1, 2), p(1, 3), p(2, 3)]);
        let w = ReducedWord::new(r(2), vec![2, 1, 2]).unwrap();
        assert_eq!(w.roots_in_order(), vec![p(2, 3), p(1, 3), p(1, 2)]);
    }

    #[test]
    fn lex_min_root_order_is_column_major() {
        for n in 1..=6 {
            let rank = r(n);
            let got = ReducedWord::lex_min(rank).roots_in_order();
            let want: Vec<_> = rank.roots().collect();
            assert_eq!(got, want, "n = {n}");
            for (k, root) in want.iter().enumerate() {
                assert_eq!(rank.root_index(*root), k);
            }
        }
    }

    #[test]
    fn permutation_basics() {
        let rank = r(3);
        let w0 = Permutation::longest(rank);
        assert_eq!(w0.length(), rank.num_roots());
        assert_eq!(w0.compose(&w0), Permutation::identity(rank));
        assert_eq!(Permutation::all(rank).len(), 24);
        let w = Permutation::from_images(vec![2, 4, 1, 3]).unwrap();
        assert_eq!(w.compose(&w.inverse()), Permutation::identity(rank));
        assert!(Permutation::from_images(vec![1, 1, 3]).is_err());
        let mut left = w.clone();
        left.mul_simple_left(2);
        let mut s2 = Permutation::identity(rank);
        s2.mul_simple_right(2);
        assert_eq!(left, s2.compose(&w));
    }

    #[test]
    fn coroot_pairing() {
        let wt = WeightVector(vec![-3, -5]);
        assert_eq!(wt.pair_with_coroot(1), -6 + 5);
        assert_eq!(wt.pair_with_coroot(2), -10 + 3);
    }

    #[test]
    fn word_json_roundtrip() {
        let w = ReducedWord::lex_min(r(3));
        let s = serde_json::to_string(&w).unwrap();
        assert_eq!(s, "[1,2,1,3,2,1]");
        let back: ReducedWord = serde_json::from_str(&s).unwrap();
        assert_eq!(back, w);
        assert!(serde_json::from_str::<ReducedWord>("[1,2,2]").is_err());
    }
}
