//! Maya diagrams, BZ data and MV polytopes.
//!
//! Chamber weights `w Lambda_i` are identified with Maya diagrams
//! `w . [1, i]`, nonempty proper subsets of `[1, n+1]`. A BZ datum assigns an
//! integer to each of them; the empty set and the full set carry the virtual
//! value 0.

mod bz;
mod polytope;
mod psi;
mod tableau;

pub use bz::{AxiomReport, AxiomViolation, BZDatum, Flavor, BZ_MAX_RANK, BZ_SCHEMA};
pub use polytope::{mv_vertices, pair, Halfspace, MVPolytopeGeometry, Vertex, MV_POLYTOPE_SCHEMA, POLYTOPE_MAX_RANK};
pub use psi::{bz_e, psi, psi_component, PsiInverse};
pub use tableau::{enumerate_k_tableaux, min_tableau_sum, KTableau};

use crate::error::{Error, Result};
use crate::weyl_words::{Permutation, Rank};
use serde::{Serialize, Serializer};
use std::fmt;

/// Largest supported `n` (members live in a 64-bit mask).
pub const MAYA_MAX_RANK: usize = 62;

/// A nonempty proper subset `K` of `[1, n+1]`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct MayaDiagram {
    rank: Rank,
    mask: u64,
}

pub(crate) fn full_mask(rank: Rank) -> u64 {
    (1u64 << (rank.n() + 1)) - 1
}

impl MayaDiagram {
    pub fn new(rank: Rank, members: &[usize]) -> Result<Self> {
        if rank.n() > MAYA_MAX_RANK {
            return Err(Error::RankTooLarge { rank: rank.n(), max: MAYA_MAX_RANK, what: "Maya diagrams" });
        }
        let mut mask = 0u64;
        for &k in members {
            if k == 0 || k > rank.n() + 1 {
                return Err(Error::InvalidMaya { rank: rank.n(), members: members.to_vec() });
            }
            mask |= 1 << (k - 1);
        }
        Self::from_mask(rank, mask).map_err(|_| Error::InvalidMaya { rank: rank.n(), members: members.to_vec() })
    }

    pub fn from_mask(rank: Rank, mask: u64) -> Result<Self> {
        if mask == 0 || mask >= full_mask(rank) {
            return Err(Error::InvalidMaya { rank: rank.n(), members: mask_members(mask) });
        }
        Ok(MayaDiagram { rank, mask })
    }

    /// The interval `[a, b]`.
    pub fn interval(rank: Rank, a: usize, b: usize) -> Result<Self> {
        let members: Vec<usize> = (a..=b).collect();
        Self::new(rank, &members)
    }

    /// `[1, i]`, the diagram of the fundamental weight `Lambda_i`.
    pub fn lambda(rank: Rank, i: usize) -> Self {
        debug_assert!(1 <= i && i <= rank.n());
        MayaDiagram { rank, mask: (1u64 << i) - 1 }
    }

    /// Every nonempty proper subset, in increasing mask order.
    pub fn all(rank: Rank) -> Vec<MayaDiagram> {
        (1..full_mask(rank)).map(|mask| MayaDiagram { rank, mask }).collect()
    }

    pub fn rank(&self) -> Rank {
        self.rank
    }

    pub fn mask(&self) -> u64 {
        self.mask
    }

    pub fn contains(&self, k: usize) -> bool {
        k >= 1 && k <= self.rank.n() + 1 && self.mask & (1 << (k - 1)) != 0
    }

    pub fn len(&self) -> usize {
        self.mask.count_ones() as usize
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// Members in increasing order.
    pub fn members(&self) -> Vec<usize> {
        mask_members(self.mask)
    }

    pub fn complement(&self) -> MayaDiagram {
        MayaDiagram { rank: self.rank, mask: full_mask(self.rank) ^ self.mask }
    }

    /// `s_i K`: swaps the membership of `i` and `i+1`.
    pub fn reflect(&self, i: usize) -> Result<MayaDiagram> {
        self.rank.check_index(i)?;
        let a = (self.mask >> (i - 1)) & 1;
        let b = (self.mask >> i) & 1;
        let mut mask = self.mask;
        if a != b {
            mask ^= (1 << (i - 1)) | (1 << i);
        }
        Ok(MayaDiagram { rank: self.rank, mask })
    }

    /// `w . K`.
    pub fn act(&self, w: &Permutation) -> MayaDiagram {
        let mask = self.members().into_iter().fold(0u64, |m, k| m | 1 << (w.apply(k) - 1));
        MayaDiagram { rank: self.rank, mask }
    }

    /// Maximal intervals `[s_m + 1, t_m]`, returned as pairs `(s_m, t_m)`.
    pub fn components(&self) -> Vec<(usize, usize)> {
        let top = self.rank.n() + 1;
        let mut out = Vec::new();
        let mut k = 1;
        while k <= top {
            if self.contains(k) {
                let s = k - 1;
                while k <= top && self.contains(k) {
                    k += 1;
                }
                out.push((s, k - 1));
            } else {
                k += 1;
            }
        }
        out
    }

    /// `out(K) = {t_m} ∩ [1, n]`.
    pub fn out_set(&self) -> Vec<usize> {
        let n = self.rank.n();
        self.components().into_iter().map(|(_, t)| t).filter(|&t| (1..=n).contains(&t)).collect()
    }

    /// `in(K) = {s_m} ∩ [1, n]`.
    pub fn in_set(&self) -> Vec<usize> {
        let n = self.rank.n();
        self.components().into_iter().map(|(s, _)| s).filter(|&s| (1..=n).contains(&s)).collect()
    }

    /// Smallest non-member.
    pub fn s_k(&self) -> usize {
        (1..=self.rank.n() + 1).find(|&k| !self.contains(k)).expect("proper subset")
    }

    /// Largest member.
    pub fn t_k(&self) -> usize {
        (1..=self.rank.n() + 1).rev().find(|&k| self.contains(k)).expect("nonempty subset")
    }

    /// Comma-separated members, the key format used in JSON.
    pub fn key(&self) -> String {
        let m: Vec<String> = self.members().iter().map(|k| k.to_string()).collect();
        m.join(",")
    }

    pub fn parse_key(rank: Rank, key: &str) -> Result<Self> {
        let members = key
            .split(',')
            .map(|t| t.trim().parse::<usize>().map_err(|_| Error::Parse(format!("bad Maya key {key:?}"))))
            .collect::<Result<Vec<_>>>()?;
        MayaDiagram::new(rank, &members)
    }
}

pub(crate) fn mask_members(mask: u64) -> Vec<usize> {
    (0..64).filter(|b| mask & (1 << b) != 0).map(|b| b + 1).collect()
}

impl fmt::Display for MayaDiagram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{{}}}", self.key())
    }
}

impl Serialize for MayaDiagram {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.members().serialize(s)
    }
}
