//! The crystal and `*`-crystal structures on Lusztig data for the
//! lexicographically minimal reduced word `(1, 2, 1, 3, 2, 1, ...)`.
//!
//! A datum assigns a nonnegative multiplicity `a_{k,l}` to every positive root
//! `(k, l)`. Reads outside the positive roots return 0: this covers the
//! boundary cells `a_{0,i}` and `a_{i+1,n+2}` as well as the diagonal cells
//! `a_{k,k}` that the operator formulas can address when `k_e`, `k_f` equals `i`
//! or `l_e`, `l_f` equals `i`. Writes to those cells are discarded.

mod enumerate;

pub use enumerate::{
    enumerate_by_height, enumerate_by_height_capped, enumerate_by_weight, HeightEnumeration, DEFAULT_MAX_CELLS,
};

use crate::error::{Error, Result};
use crate::weyl_words::{Rank, RootIndexPi, WeightVector};
use serde::de::{self, MapAccess, Visitor};
use serde::ser::SerializeMap;
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use std::fmt;

/// Schema tag emitted with every serialized datum.
pub const LUSZTIG_SCHEMA: &str = "mvlab.lusztig/1";

/// Nonnegative multiplicities indexed by positive roots, stored in the
/// canonical root order of [`Rank::roots`].
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LusztigDatum {
    rank: Rank,
    entries: Vec<u32>,
}

impl LusztigDatum {
    pub fn zero(rank: Rank) -> Self {
        LusztigDatum { rank, entries: vec![0; rank.num_roots()] }
    }

    /// Builds a datum from entries listed in canonical root order.
    pub fn from_entries(rank: Rank, entries: Vec<u32>) -> Result<Self> {
        if entries.len() != rank.num_roots() {
            return Err(Error::Parse(format!(
                "expected {} entries for {rank}, got {}",
                rank.num_roots(),
                entries.len()
            )));
        }
        Ok(LusztigDatum { rank, entries })
    }

    pub fn rank(&self) -> Rank {
        self.rank
    }

    pub fn entries(&self) -> &[u32] {
        &self.entries
    }

    pub fn total(&self) -> u64 {
        self.entries.iter().map(|&x| x as u64).sum()
    }

    fn in_range(&self, k: usize, l: usize) -> bool {
        k >= 1 && k < l && l <= self.rank.n() + 1
    }

    /// `a_{k,l}`, with 0 outside the positive roots.
    pub fn get(&self, k: usize, l: usize) -> u32 {
        if self.in_range(k, l) {
            self.entries[self.rank.root_index(RootIndexPi { i: k, j: l })]
        } else {
            0
        }
    }

    /// Sets `a_{k,l}`; ignored outside the positive roots.
    pub fn set(&mut self, k: usize, l: usize, value: u32) {
        if self.in_range(k, l) {
            let idx = self.rank.root_index(RootIndexPi { i: k, j: l });
            self.entries[idx] = value;
        }
    }

    fn get_i(&self, k: usize, l: usize) -> i64 {
        self.get(k, l) as i64
    }

    /// Adds `delta` to `a_{k,l}`. Cells outside the positive roots absorb the
    /// write. Returns false if the entry would become negative.
    fn shift(&mut self, k: usize, l: usize, delta: i64) -> bool {
        if !self.in_range(k, l) {
            return true;
        }
        let idx = self.rank.root_index(RootIndexPi { i: k, j: l });
        let v = self.entries[idx] as i64 + delta;
        if v < 0 {
            return false;
        }
        self.entries[idx] = v as u32;
        true
    }

    /// `m_i = sum_{k <= i < l} a_{k,l}`.
    pub fn m(&self, i: usize) -> i64 {
        let n = self.rank.n();
        let mut s = 0;
        for k in 1..=i {
            for l in i + 1..=n + 1 {
                s += self.get_i(k, l);
            }
        }
        s
    }

    /// `wt(a) = -sum m_i alpha_i`.
    pub fn weight(&self) -> WeightVector {
        WeightVector((1..=self.rank.n()).map(|i| -self.m(i)).collect())
    }

    /// `(A^(i)_1, ..., A^(i)_i)` with `A^(i)_k = sum_{s<=k} (a_{s,i+1} - a_{s-1,i})`.
    pub fn a_path_sums(&self, i: usize) -> Result<Vec<i64>> {
        self.rank.check_index(i)?;
        let mut acc = 0;
        Ok((1..=i)
            .map(|s| {
                acc += self.get_i(s, i + 1) - self.get_i(s - 1, i);
                acc
            })
            .collect())
    }

    /// `(A*^(i)_i, ..., A*^(i)_n)` with `A*^(i)_l = sum_{t>l} (a_{i,t} - a_{i+1,t+1})`.
    pub fn a_star_sums(&self, i: usize) -> Result<Vec<i64>> {
        self.rank.check_index(i)?;
        let n = self.rank.n();
        let mut out = vec![0; n - i + 1];
        let mut acc = 0;
        for l in (i..=n).rev() {
            let t = l + 1;
            acc += self.get_i(i, t) - self.get_i(i + 1, t + 1);
            out[l - i] = acc;
        }
        Ok(out)
    }

    pub fn epsilon(&self, i: usize) -> Result<i64> {
        Ok(self.a_path_sums(i)?.into_iter().max().expect("i >= 1"))
    }

    pub fn phi(&self, i: usize) -> Result<i64> {
        Ok(self.epsilon(i)? + self.weight().pair_with_coroot(i))
    }

    pub fn epsilon_star(&self, i: usize) -> Result<i64> {
        Ok(self.a_star_sums(i)?.into_iter().max().expect("i <= n"))
    }

    pub fn phi_star(&self, i: usize) -> Result<i64> {
        Ok(self.epsilon_star(i)? + self.weight().pair_with_coroot(i))
    }

    /// Applies a Kashiwara operator; `Ok(None)` is the bottom element.
    pub fn apply(&self, op: CrystalOp) -> Result<Option<LusztigDatum>> {
        let i = op.index();
        self.rank.check_index(i)?;
        let mut out = self.clone();
        let ok = match op {
            CrystalOp::E(_) | CrystalOp::F(_) => {
                let sums = self.a_path_sums(i)?;
                let eps = *sums.iter().max().expect("i >= 1");
                if matches!(op, CrystalOp::E(_)) {
                    if eps == 0 {
                        return Ok(None);
                    }
                    let k_e = 1 + sums.iter().position(|&x| x == eps).expect("max attained");
                    out.shift(k_e, i, 1) && out.shift(k_e, i + 1, -1)
                } else {
                    let k_f = 1 + sums.iter().rposition(|&x| x == eps).expect("max attained");
                    out.shift(k_f, i, -1) && out.shift(k_f, i + 1, 1)
                }
            }
            CrystalOp::EStar(_) | CrystalOp::FStar(_) => {
                let sums = self.a_star_sums(i)?;
                let eps = *sums.iter().max().expect("i <= n");
                if matches!(op, CrystalOp::EStar(_)) {
                    if eps == 0 {
                        return Ok(None);
                    }
                    let l_e = i + sums.iter().rposition(|&x| x == eps).expect("max attained");
                    out.shift(i, l_e + 1, -1) && out.shift(i + 1, l_e + 1, 1)
                } else {
                    let l_f = i + sums.iter().position(|&x| x == eps).expect("max attained");
                    out.shift(i, l_f + 1, 1) && out.shift(i + 1, l_f + 1, -1)
                }
            }
        };
        if !ok {
            return Err(Error::Internal(format!("{op} produced a negative entry from {self}")));
        }
        Ok(Some(out))
    }

    /// Applies `ops` left to right, stopping at the first bottom.
    pub fn apply_word(&self, ops: &[CrystalOp]) -> Result<Option<LusztigDatum>> {
        let mut cur = self.clone();
        for &op in ops {
            match cur.apply(op)? {
                Some(next) => cur = next,
                None => return Ok(None),
            }
        }
        Ok(Some(cur))
    }

    /// Applies `E_i` until it reaches bottom; exactly `epsilon_i` steps.
    pub fn e_max(&self, i: usize) -> Result<LusztigDatum> {
        self.raise_fully(CrystalOp::E(i))
    }

    /// Applies `E*_i` until it reaches bottom; exactly `epsilon*_i` steps.
    pub fn e_star_max(&self, i: usize) -> Result<LusztigDatum> {
        self.raise_fully(CrystalOp::EStar(i))
    }

    fn raise_fully(&self, op: CrystalOp) -> Result<LusztigDatum> {
        let mut cur = self.clone();
        while let Some(next) = cur.apply(op)? {
            cur = next;
        }
        Ok(cur)
    }
}

impl fmt::Display for LusztigDatum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{:?}", self.rank, self.entries)
    }
}

impl Serialize for LusztigDatum {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        struct Entries<'a>(&'a LusztigDatum);
        impl Serialize for Entries<'_> {
            fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
                let d = self.0;
                let nonzero: Vec<_> = d.rank.roots().zip(&d.entries).filter(|(_, &v)| v != 0).collect();
                let mut map = s.serialize_map(Some(nonzero.len()))?;
                for (root, v) in nonzero {
                    map.serialize_entry(&format!("{},{}", root.i, root.j), v)?;
                }
                map.end()
            }
        }
        let mut map = s.serialize_map(Some(3))?;
        map.serialize_entry("schema", LUSZTIG_SCHEMA)?;
        map.serialize_entry("n", &self.rank.n())?;
        map.serialize_entry("a", &Entries(self))?;
        map.end()
    }
}

impl<'de> Deserialize<'de> for LusztigDatum {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        struct Raw {
            #[serde(default)]
            #[allow(dead_code)]
            schema: Option<String>,
            n: usize,
            #[serde(default, deserialize_with = "pair_map")]
            a: Vec<((usize, usize), u32)>,
        }
        let raw = Raw::deserialize(d)?;
        let rank = Rank::new(raw.n).map_err(de::Error::custom)?;
        let mut out = LusztigDatum::zero(rank);
        for ((i, j), v) in raw.a {
            if !(i >= 1 && i < j && j <= raw.n + 1) {
                return Err(de::Error::custom(format!("({i},{j}) is not a positive root of A_{}", raw.n)));
            }
            out.set(i, j, v);
        }
        Ok(out)
    }
}

/// Parses `"i,j"` keys.
pub(crate) fn parse_pair(key: &str) -> Option<(usize, usize)> {
    let (a, b) = key.split_once(',')?;
    Some((a.trim().parse().ok()?, b.trim().parse().ok()?))
}

type PairEntries = Vec<((usize, usize), u32)>;

fn pair_map<'de, D: Deserializer<'de>>(d: D) -> std::result::Result<PairEntries, D::Error> {
    struct V;
    impl<'de> Visitor<'de> for V {
        type Value = PairEntries;
        fn expecting(&self, f: &mut fmt::Formatter) -> fmt::Result {
            f.write_str("a map from \"i,j\" to nonnegative integers")
        }
        fn visit_map<M: MapAccess<'de>>(self, mut m: M) -> std::result::Result<Self::Value, M::Error> {
            let mut out = Vec::new();
            while let Some((k, v)) = m.next_entry::<String, u32>()? {
                let pair = parse_pair(&k).ok_or_else(|| de::Error::custom(format!("bad root key {k:?}")))?;
                out.push((pair, v));
            }
            Ok(out)
        }
    }
    d.deserialize_map(V)
}

/// A Kashiwara operator with its 1-based index.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum CrystalOp {
    E(usize),
    F(usize),
    EStar(usize),
    FStar(usize),
}

impl CrystalOp {
    pub fn index(self) -> usize {
        match self {
            CrystalOp::E(i) | CrystalOp::F(i) | CrystalOp::EStar(i) | CrystalOp::FStar(i) => i,
        }
    }

    /// Parses a whitespace-separated operator word such as `"f1 f2 e*1"`.
    pub fn parse_word(s: &str) -> Result<Vec<CrystalOp>> {
        s.split_whitespace().map(str::parse).collect()
    }
}

impl std::str::FromStr for CrystalOp {
    type Err = Error;

    fn from_str(tok: &str) -> Result<Self> {
        let bad = || Error::Parse(format!("bad operator token {tok:?}"));
        let (ctor, rest): (fn(usize) -> CrystalOp, &str) = if let Some(r) = tok.strip_prefix("e*") {
            (CrystalOp::EStar, r)
        } else if let Some(r) = tok.strip_prefix("f*") {
            (CrystalOp::FStar, r)
        } else if let Some(r) = tok.strip_prefix('e') {
            (CrystalOp::E, r)
        } else if let Some(r) = tok.strip_prefix('f') {
            (CrystalOp::F, r)
        } else {
            return Err(bad());
        };
        let i: usize = rest.parse().map_err(|_| bad())?;
        if i == 0 {
            return Err(bad());
        }
        Ok(ctor(i))
    }
}

impl fmt::Display for CrystalOp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CrystalOp::E(i) => write!(f, "e{i}"),
            CrystalOp::F(i) => write!(f, "f{i}"),
            CrystalOp::EStar(i) => write!(f, "e*{i}"),
            CrystalOp::FStar(i) => write!(f, "f*{i}"),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn datum(n: usize, e: &[u32]) -> LusztigDatum {
        LusztigDatum::from_entries(Rank::new(n).unwrap(), e.to_vec()).unwrap()
    }

    #[test]
    fn weights() {
        assert_eq!(datum(2, &[0, 0, 0]).weight().coeffs(), &[0, 0]);
        assert_eq!(datum(2, &[0, 1, 0]).weight().coeffs(), &[-1, -1]);
        assert_eq!(datum(2, &[1, 2, 3]).weight().coeffs(), &[-3, -5]);
    }

    #[test]
    fn path_sums_and_epsilons() {
        let a = datum(2, &[1, 0, 2]);
        assert_eq!(a.a_path_sums(2).unwrap(), vec![0, 1]);
        assert_eq!(a.epsilon(2).unwrap(), 1);
        let b = datum(2, &[1, 0, 0]);
        assert_eq!(b.a_star_sums(1).unwrap(), vec![1, 0]);
        assert_eq!(b.epsilon_star(1).unwrap(), 1);
        let z = datum(3, &[0; 6]);
        for i in 1..=3 {
            assert_eq!(z.epsilon(i).unwrap(), 0);
            assert_eq!(z.epsilon_star(i).unwrap(), 0);
            assert!(z.a_path_sums(i).unwrap().iter().all(|&x| x == 0));
        }
        assert!(z.epsilon(4).is_err());
        assert!(z.a_star_sums(0).is_err());
    }

    #[test]
    fn rank_one_chain() {
        let c = datum(1, &[3]);
        assert_eq!(c.apply(CrystalOp::F(1)).unwrap(), Some(datum(1, &[4])));
        assert_eq!(datum(1, &[4]).apply(CrystalOp::E(1)).unwrap(), Some(c));
        assert_eq!(datum(1, &[0]).apply(CrystalOp::E(1)).unwrap(), None);
    }

    #[test]
    fn f_star_discards_diagonal_write() {
        let a = datum(2, &[1, 0, 0]);
        let b = a.apply(CrystalOp::FStar(1)).unwrap().unwrap();
        assert_eq!(b, datum(2, &[2, 0, 0]));
        assert_eq!(b.weight(), a.weight().add_simple(1, -1));
    }

    #[test]
    fn intro_identity_small_case() {
        let z = datum(2, &[0, 0, 0]);
        let w1 = CrystalOp::parse_word("f1 f2 f2 f1").unwrap();
        let w2 = CrystalOp::parse_word("f2 f1 f1 f2").unwrap();
        assert_eq!(z.apply_word(&w1).unwrap(), z.apply_word(&w2).unwrap());
    }

    #[test]
    fn e_max_variants() {
        let z = datum(2, &[0, 0, 0]);
        assert_eq!(z.e_max(1).unwrap(), z);
        assert_eq!(datum(2, &[1, 0, 0]).e_star_max(1).unwrap(), z);
        let a = datum(3, &[2, 1, 0, 3, 1, 2]);
        for i in 1..=3 {
            assert_eq!(a.e_max(i).unwrap().epsilon(i).unwrap(), 0);
            assert_eq!(a.e_star_max(i).unwrap().epsilon_star(i).unwrap(), 0);
        }
    }

    #[test]
    fn operator_tokens() {
        let ops = CrystalOp::parse_word(" f1  e*2 f*10 e3 ").unwrap();
        assert_eq!(ops, vec![CrystalOp::F(1), CrystalOp::EStar(2), CrystalOp::FStar(10), CrystalOp::E(3)]);
        assert!("g1".parse::<CrystalOp>().is_err());
        assert!("f0".parse::<CrystalOp>().is_err());
        assert!("f*".parse::<CrystalOp>().is_err());
        assert_eq!(ops.iter().map(|o| o.to_string()).collect::<Vec<_>>().join(" "), "f1 e*2 f*10 e3");
    }

    #[test]
    fn json_shape() {
        let a = datum(2, &[1, 0, 3]);
        let v = serde_json::to_value(&a).unwrap();
        assert_eq!(v["n"], 2);
        assert_eq!(v["a"]["1,2"], 1);
        assert_eq!(v["a"]["2,3"], 3);
        assert!(v["a"].get("1,3").is_none());
        let back: LusztigDatum = serde_json::from_value(v).unwrap();
        assert_eq!(back, a);
        assert!(serde_json::from_str::<LusztigDatum>(r#"{"n":2,"a":{"2,2":1}}"#).is_err());
        assert_eq!(serde_json::from_str::<LusztigDatum>(r#"{"n":2}"#).unwrap(), datum(2, &[0, 0, 0]));
    }
}
