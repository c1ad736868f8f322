//! Orientations of the `A_n` Dynkin quiver, the orientation attached to a
//! Maya diagram, characterizing roots and adapted reduced words.
//!
//! Vertices are `1..=n`; edge `k` joins `k` and `k+1` for `1 <= k < n`.

mod module;

pub use module::{build_module, hom_dimension, indecomposable, m_k_via_coker, m_k_via_hom, QuiverModule};

use crate::error::{Error, Result};
use crate::maya_bz::MayaDiagram;
use crate::weyl_words::{Permutation, Rank, ReducedWord, RootIndexPi};
use serde::de::{self, Deserializer};
use serde::ser::{SerializeMap, Serializer};
use serde::{Deserialize, Serialize};
use std::fmt;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Dir {
    /// `k -> k+1`.
    LeftToRight,
    /// `k+1 -> k`.
    RightToLeft,
}

impl Dir {
    fn flip(self) -> Dir {
        match self {
            Dir::LeftToRight => Dir::RightToLeft,
            Dir::RightToLeft => Dir::LeftToRight,
        }
    }

    /// `'R'` when the arrow points right, `'L'` when it points left.
    pub fn symbol(self) -> char {
        match self {
            Dir::LeftToRight => 'R',
            Dir::RightToLeft => 'L',
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Orientation {
    rank: Rank,
    dirs: Vec<Dir>,
}

impl Orientation {
    pub fn new(rank: Rank, dirs: Vec<Dir>) -> Result<Self> {
        if dirs.len() != rank.n() - 1 {
            return Err(Error::Parse(format!("A_{} has {} edges, got {}", rank.n(), rank.n() - 1, dirs.len())));
        }
        Ok(Orientation { rank, dirs })
    }

    /// All arrows `k+1 -> k`, pointing toward vertex 1.
    pub fn omega0(rank: Rank) -> Self {
        Orientation { rank, dirs: vec![Dir::RightToLeft; rank.n() - 1] }
    }

    pub fn rank(&self) -> Rank {
        self.rank
    }

    pub fn dirs(&self) -> &[Dir] {
        &self.dirs
    }

    /// Direction of edge `k` (joining `k` and `k+1`).
    pub fn dir(&self, k: usize) -> Dir {
        self.dirs[k - 1]
    }

    fn has_arrow_out(&self, v: usize) -> bool {
        (v > 1 && self.dir(v - 1) == Dir::RightToLeft) || (v < self.rank.n() && self.dir(v) == Dir::LeftToRight)
    }

    fn has_arrow_in(&self, v: usize) -> bool {
        (v > 1 && self.dir(v - 1) == Dir::LeftToRight) || (v < self.rank.n() && self.dir(v) == Dir::RightToLeft)
    }

    pub fn is_sink(&self, v: usize) -> bool {
        !self.has_arrow_out(v)
    }

    pub fn is_source(&self, v: usize) -> bool {
        !self.has_arrow_in(v)
    }

    pub fn sinks(&self) -> Vec<usize> {
        (1..=self.rank.n()).filter(|&v| self.is_sink(v)).collect()
    }

    pub fn sources(&self) -> Vec<usize> {
        (1..=self.rank.n()).filter(|&v| self.is_source(v)).collect()
    }

    /// `s_i Omega`: reverses every arrow at a sink or source `i`.
    pub fn reflect(&self, i: usize) -> Result<Orientation> {
        self.rank.check_index(i)?;
        if !self.is_sink(i) && !self.is_source(i) {
            return Err(Error::NotSinkOrSource(i));
        }
        let mut out = self.clone();
        if i > 1 {
            out.dirs[i - 2] = out.dirs[i - 2].flip();
        }
        if i < self.rank.n() {
            out.dirs[i - 1] = out.dirs[i - 1].flip();
        }
        Ok(out)
    }

    /// Whether a directed path runs from `k` to `l`.
    pub fn has_path(&self, k: usize, l: usize) -> bool {
        if k < l {
            (k..l).all(|e| self.dir(e) == Dir::LeftToRight)
        } else {
            (l..k).all(|e| self.dir(e) == Dir::RightToLeft)
        }
    }

    pub fn dirs_string(&self) -> String {
        self.dirs.iter().map(|d| d.symbol()).collect()
    }
}

impl fmt::Display for Orientation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "1")?;
        for (k, d) in self.dirs.iter().enumerate() {
            let arrow = if *d == Dir::LeftToRight { "->" } else { "<-" };
            write!(f, " {arrow} {}", k + 2)?;
        }
        Ok(())
    }
}

impl Serialize for Orientation {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut map = s.serialize_map(Some(2))?;
        map.serialize_entry("n", &self.rank.n())?;
        map.serialize_entry("dirs", &self.dirs_string())?;
        map.end()
    }
}

impl<'de> Deserialize<'de> for Orientation {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        struct Raw {
            n: usize,
            dirs: String,
        }
        let raw = Raw::deserialize(d)?;
        let rank = Rank::new(raw.n).map_err(de::Error::custom)?;
        let dirs = raw
            .dirs
            .chars()
            .map(|c| match c {
                'R' => Ok(Dir::LeftToRight),
                'L' => Ok(Dir::RightToLeft),
                other => Err(de::Error::custom(format!("bad direction {other:?}"))),
            })
            .collect::<std::result::Result<Vec<_>, _>>()?;
        Orientation::new(rank, dirs).map_err(de::Error::custom)
    }
}

/// The source and sink sets prescribed for `Omega(K)` by the case tables in
/// `s_1` and `t_l`, before any endpoint correction.
pub fn orientation_tables(k: &MayaDiagram) -> (Vec<usize>, Vec<usize>) {
    let n = k.rank().n();
    let comps = k.components();
    let s1 = comps[0].0;
    let tl = comps[comps.len() - 1].1;
    let mut it = k.out_set();
    if s1 >= 2 {
        it.push(1);
    }
    if tl == n + 1 {
        it.push(n);
    }
    let mut is = k.in_set();
    if s1 == 0 {
        is.push(1);
    }
    if tl < n {
        is.push(n);
    }
    for v in [&mut it, &mut is] {
        v.sort_unstable();
        v.dedup();
    }
    (it, is)
}

/// `Omega(K)`: edge `k` points left exactly when `k+1` lies in `K`.
///
/// This puts `out(K)` among the sources and `in(K)` among the sinks. The
/// result is checked against [`orientation_tables`]; the tables list vertex
/// 1 as a sink when `K` starts with the singleton component `{1}` and vertex
/// `n` as a source when `K` ends with `{n+1}`, while that same vertex is in
/// `out(K)` or `in(K)` respectively. Those two endpoint clashes resolve in
/// favour of `out(K)` and `in(K)`; any other disagreement is an error.
pub fn orientation_from_maya(k: &MayaDiagram) -> Result<Orientation> {
    let rank = k.rank();
    let n = rank.n();
    let dirs = (1..n).map(|e| if k.contains(e + 1) { Dir::RightToLeft } else { Dir::LeftToRight }).collect();
    let omega = Orientation { rank, dirs };
    if n == 1 {
        return Ok(omega);
    }

    let out = k.out_set();
    let inn = k.in_set();
    let (it, is) = orientation_tables(k);
    let want_sources: Vec<usize> = it.into_iter().filter(|v| !inn.contains(v)).collect();
    let want_sinks: Vec<usize> = is.into_iter().filter(|v| !out.contains(v)).collect();
    let inconsistent = |detail: String| Error::InconsistentOrientation { maya: k.to_string(), detail };
    if omega.sources() != want_sources {
        return Err(inconsistent(format!("sources {:?}, tables give {:?}", omega.sources(), want_sources)));
    }
    if omega.sinks() != want_sinks {
        return Err(inconsistent(format!("sinks {:?}, tables give {:?}", omega.sinks(), want_sinks)));
    }
    if !out.iter().all(|&v| omega.is_source(v)) || !inn.iter().all(|&v| omega.is_sink(v)) {
        return Err(inconsistent("out(K) or in(K) misplaced".into()));
    }
    Ok(omega)
}

/// `beta_K = alpha_{s_K} + ... + alpha_{t_K - 1}`, or `None` when `s_K > t_K`.
pub fn characterizing_root(k: &MayaDiagram) -> Option<RootIndexPi> {
    let (s, t) = (k.s_k(), k.t_k());
    (s < t).then(|| RootIndexPi::new(s, t))
}

/// A reduced word of `w0` adapted to `omega`: each letter is a sink of the
/// orientation obtained by reflecting at the previous letters.
///
/// Depth-first search preferring the smallest sink, extending only while
/// the length grows.
pub fn adapted_word(omega: &Orientation) -> ReducedWord {
    let rank = omega.rank();
    let target = rank.num_roots();

    fn go(omega: &Orientation, w: &mut Permutation, letters: &mut Vec<usize>, target: usize) -> bool {
        if letters.len() == target {
            return true;
        }
        for i in omega.sinks() {
            if w.apply(i) > w.apply(i + 1) {
                continue;
            }
            let next = omega.reflect(i).expect("sink");
            w.mul_simple_right(i);
            letters.push(i);
            if go(&next, w, letters, target) {
                return true;
            }
            letters.pop();
            w.mul_simple_right(i);
        }
        false
    }

    let mut w = Permutation::identity(rank);
    let mut letters = Vec::with_capacity(target);
    let found = go(omega, &mut w, &mut letters, target);
    assert!(found, "every orientation admits an adapted word");
    ReducedWord::new_unchecked(rank, letters)
}

/// Replays the sink condition along `word`.
pub fn is_adapted(word: &ReducedWord, omega: &Orientation) -> bool {
    let mut cur = omega.clone();
    for &i in word.letters() {
        if !cur.is_sink(i) {
            return false;
        }
        cur = cur.reflect(i).expect("sink");
    }
    true
}
