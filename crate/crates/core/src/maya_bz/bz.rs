//! BZ data, their axioms, the star duality and the crystal operators given
//! by a min-update over one family of diagrams.

use super::{full_mask, mask_members, MayaDiagram};
use crate::error::{Error, Result};
use crate::weyl_words::{Rank, WeightVector};
use serde::de::{self, MapAccess, Visitor};
use serde::ser::SerializeMap;
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use std::fmt;

pub const BZ_SCHEMA: &str = "mvlab.bz/1";

/// Largest `n` for which a dense table of `2^(n+1)` components is built.
pub const BZ_MAX_RANK: usize = 20;

/// Which extremal vertex is normalized to the origin.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Flavor {
    /// `M_{[n-i+2, n+1]} = 0`: the vertex `mu_{w0}` is 0.
    #[serde(rename = "w0")]
    W0,
    /// `M_{[1,i]} = 0`: the vertex `mu_e` is 0.
    #[serde(rename = "e")]
    E,
}

impl Flavor {
    pub fn name(self) -> &'static str {
        match self {
            Flavor::W0 => "w0",
            Flavor::E => "e",
        }
    }

    pub fn opposite(self) -> Flavor {
        match self {
            Flavor::W0 => Flavor::E,
            Flavor::E => Flavor::W0,
        }
    }
}

/// An integer `M_K` for every Maya diagram `K`, stored densely by bitmask.
/// Slots for the empty and the full set hold the virtual value 0.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct BZDatum {
    rank: Rank,
    flavor: Flavor,
    values: Vec<i64>,
}

fn check_rank(rank: Rank) -> Result<()> {
    if rank.n() > BZ_MAX_RANK {
        return Err(Error::RankTooLarge { rank: rank.n(), max: BZ_MAX_RANK, what: "BZ data" });
    }
    Ok(())
}

/// One failed axiom, with the diagrams that witness it.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "axiom", rename_all = "snake_case")]
pub enum AxiomViolation {
    /// A component that the flavor forces to vanish does not.
    Normalization { k: Vec<usize>, value: i64 },
    /// `M_{Ki} + M_{Kj} > M_{Kij} + M_K`.
    Edge { k: Vec<usize>, i: usize, j: usize, lhs: i64, rhs: i64 },
    /// `M_{Kik} + M_{Kj} != min(M_{Kij} + M_{Kk}, M_{Kjk} + M_{Ki})` for `i < j < k`.
    ThreeTerm { k: Vec<usize>, i: usize, j: usize, l: usize, lhs: i64, rhs: i64 },
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct AxiomReport {
    pub violations: Vec<AxiomViolation>,
}

impl AxiomReport {
    pub fn is_ok(&self) -> bool {
        self.violations.is_empty()
    }
}

impl BZDatum {
    pub fn zero(rank: Rank, flavor: Flavor) -> Result<Self> {
        check_rank(rank)?;
        Ok(BZDatum { rank, flavor, values: vec![0; 1 << (rank.n() + 1)] })
    }

    /// Fills every component from `f`.
    pub fn from_fn(rank: Rank, flavor: Flavor, mut f: impl FnMut(MayaDiagram) -> i64) -> Result<Self> {
        let mut out = Self::zero(rank, flavor)?;
        for k in MayaDiagram::all(rank) {
            out.values[k.mask() as usize] = f(k);
        }
        Ok(out)
    }

    pub fn rank(&self) -> Rank {
        self.rank
    }

    pub fn flavor(&self) -> Flavor {
        self.flavor
    }

    pub fn get(&self, k: &MayaDiagram) -> i64 {
        self.values[k.mask() as usize]
    }

    /// Component by raw mask; the empty and full masks read 0.
    pub fn get_mask(&self, mask: u64) -> i64 {
        self.values[mask as usize]
    }

    pub fn set(&mut self, k: &MayaDiagram, value: i64) {
        self.values[k.mask() as usize] = value;
    }

    /// Components in increasing mask order.
    pub fn components(&self) -> impl Iterator<Item = (MayaDiagram, i64)> + '_ {
        MayaDiagram::all(self.rank).into_iter().map(move |k| (k, self.get(&k)))
    }

    fn require(&self, flavor: Flavor) -> Result<()> {
        if self.flavor != flavor {
            return Err(Error::FlavorMismatch { expected: flavor.name(), found: self.flavor.name() });
        }
        Ok(())
    }

    fn prefix(i: usize) -> u64 {
        (1u64 << i) - 1
    }

    /// `[1, i+1] \ {i}` as a mask, for `i >= 1`.
    fn prefix_gap(i: usize) -> u64 {
        Self::prefix(i + 1) & !(1u64 << (i - 1))
    }

    /// `M*_K = M_{K^c}`, with the flavor toggled.
    pub fn star(&self) -> BZDatum {
        let full = full_mask(self.rank);
        let values = (0..self.values.len() as u64).map(|m| self.values[(full ^ m) as usize]).collect();
        BZDatum { rank: self.rank, flavor: self.flavor.opposite(), values }
    }

    /// Checks the flavor normalization, every edge inequality and every
    /// three-term relation. Witnesses are listed in a fixed order.
    pub fn check_axioms(&self) -> AxiomReport {
        let n = self.rank.n();
        let full = full_mask(self.rank);
        let mut violations = Vec::new();

        for i in 1..=n {
            let mask = match self.flavor {
                Flavor::W0 => full ^ Self::prefix(n + 1 - i),
                Flavor::E => Self::prefix(i),
            };
            let value = self.get_mask(mask);
            if value != 0 {
                violations.push(AxiomViolation::Normalization { k: mask_members(mask), value });
            }
        }

        let bit = |i: usize| 1u64 << (i - 1);
        for k in 0..full {
            let outside: Vec<usize> = (1..=n + 1).filter(|&i| k & bit(i) == 0).collect();
            for (a, &i) in outside.iter().enumerate() {
                for &j in &outside[a + 1..] {
                    let lhs = self.get_mask(k | bit(i)) + self.get_mask(k | bit(j));
                    let rhs = self.get_mask(k | bit(i) | bit(j)) + self.get_mask(k);
                    if lhs > rhs {
                        violations.push(AxiomViolation::Edge { k: mask_members(k), i, j, lhs, rhs });
                    }
                }
            }
            for (a, &i) in outside.iter().enumerate() {
                for (b, &j) in outside.iter().enumerate().skip(a + 1) {
                    for &l in &outside[b + 1..] {
                        let lhs = self.get_mask(k | bit(i) | bit(l)) + self.get_mask(k | bit(j));
                        let rhs = (self.get_mask(k | bit(i) | bit(j)) + self.get_mask(k | bit(l)))
                            .min(self.get_mask(k | bit(j) | bit(l)) + self.get_mask(k | bit(i)));
                        if lhs != rhs {
                            violations.push(AxiomViolation::ThreeTerm { k: mask_members(k), i, j, l, lhs, rhs });
                        }
                    }
                }
            }
        }
        AxiomReport { violations }
    }

    /// `wt(M) = sum_i M_{[1,i]} alpha_i`.
    pub fn weight(&self) -> Result<WeightVector> {
        self.require(Flavor::W0)?;
        Ok(WeightVector((1..=self.rank.n()).map(|i| self.get_mask(Self::prefix(i))).collect()))
    }

    pub fn epsilon(&self, i: usize) -> Result<i64> {
        self.require(Flavor::W0)?;
        self.rank.check_index(i)?;
        Ok(-(self.get_mask(Self::prefix(i)) + self.get_mask(Self::prefix_gap(i))
            - self.get_mask(Self::prefix(i + 1))
            - self.get_mask(Self::prefix(i - 1))))
    }

    pub fn phi(&self, i: usize) -> Result<i64> {
        Ok(self.epsilon(i)? + self.weight()?.pair_with_coroot(i))
    }

    /// Weight of an e-flavored datum, read off its star.
    pub fn weight_star(&self) -> Result<WeightVector> {
        self.require(Flavor::E)?;
        self.star().weight()
    }

    pub fn epsilon_star(&self, i: usize) -> Result<i64> {
        self.require(Flavor::E)?;
        self.star().epsilon(i)
    }

    /// `c_i = M_{[1,i]} - M_{[1,i+1] \ {i}} - 1`.
    pub fn c(&self, i: usize) -> Result<i64> {
        self.require(Flavor::W0)?;
        self.rank.check_index(i)?;
        Ok(self.get_mask(Self::prefix(i)) - self.get_mask(Self::prefix_gap(i)) - 1)
    }

    /// `c*_i = M_{[i+1,n+1]} - M_{{i} u [i+2,n+1]} - 1`.
    pub fn c_star(&self, i: usize) -> Result<i64> {
        self.require(Flavor::E)?;
        self.rank.check_index(i)?;
        let full = full_mask(self.rank);
        Ok(self.get_mask(full ^ Self::prefix(i)) - self.get_mask(full ^ Self::prefix_gap(i)) - 1)
    }

    /// `f_i`: for `i in K`, `i+1 not in K`, replace `M_K` by
    /// `min(M_K, M_{s_i K} + c_i)`.
    pub fn am_f(&self, i: usize) -> Result<BZDatum> {
        let c = self.c(i)?;
        Ok(self.min_update(i, i + 1, c))
    }

    /// `f*_i`: for `i not in K`, `i+1 in K`, replace `M_K` by
    /// `min(M_K, M_{s_i K} + c*_i)`.
    pub fn am_f_star(&self, i: usize) -> Result<BZDatum> {
        let c = self.c_star(i)?;
        Ok(self.min_update(i + 1, i, c))
    }

    fn min_update(&self, inside: usize, outside: usize, c: i64) -> BZDatum {
        let (a, b) = (1u64 << (inside - 1), 1u64 << (outside - 1));
        let mut out = self.clone();
        for m in 1..full_mask(self.rank) {
            if m & a != 0 && m & b == 0 {
                let reflected = m ^ a ^ b;
                out.values[m as usize] = self.values[m as usize].min(self.values[reflected as usize] + c);
            }
        }
        out
    }
}

impl fmt::Display for BZDatum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}[", self.flavor.name())?;
        for (idx, (k, v)) in self.components().enumerate() {
            if idx > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{k}:{v}")?;
        }
        write!(f, "]")
    }
}

impl Serialize for BZDatum {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        struct Components<'a>(&'a BZDatum);
        impl Serialize for Components<'_> {
            fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
                let mut map = s.serialize_map(None)?;
                for (k, v) in self.0.components() {
                    map.serialize_entry(&k.key(), &v)?;
                }
                map.end()
            }
        }
        let mut map = s.serialize_map(Some(4))?;
        map.serialize_entry("schema", BZ_SCHEMA)?;
        map.serialize_entry("n", &self.rank.n())?;
        map.serialize_entry("flavor", &self.flavor)?;
        map.serialize_entry("M", &Components(self))?;
        map.end()
    }
}

impl<'de> Deserialize<'de> for BZDatum {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        struct Raw {
            #[serde(default)]
            #[allow(dead_code)]
            schema: Option<String>,
            n: usize,
            flavor: Flavor,
            #[serde(rename = "M", deserialize_with = "key_map")]
            m: Vec<(String, i64)>,
        }
        let raw = Raw::deserialize(d)?;
        let rank = Rank::new(raw.n).map_err(de::Error::custom)?;
        let mut out = BZDatum::zero(rank, raw.flavor).map_err(de::Error::custom)?;
        for (key, v) in raw.m {
            let k = MayaDiagram::parse_key(rank, &key).map_err(de::Error::custom)?;
            out.set(&k, v);
        }
        Ok(out)
    }
}

fn key_map<'de, D: Deserializer<'de>>(d: D) -> std::result::Result<Vec<(String, i64)>, D::Error> {
    struct V;
    impl<'de> Visitor<'de> for V {
        type Value = Vec<(String, i64)>;
        fn expecting(&self, f: &mut fmt::Formatter) -> fmt::Result {
            f.write_str("a map from \"k1,k2,...\" to integers")
        }
        fn visit_map<M: MapAccess<'de>>(self, mut m: M) -> std::result::Result<Self::Value, M::Error> {
            let mut out = Vec::new();
            while let Some(entry) = m.next_entry::<String, i64>()? {
                out.push(entry);
            }
            Ok(out)
        }
    }
    d.deserialize_map(V)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(n: usize) -> Rank {
        Rank::new(n).unwrap()
    }

    #[test]
    fn zero_datum_basics() {
        for n in 1..=4 {
            let z = BZDatum::zero(r(n), Flavor::W0).unwrap();
            assert!(z.check_axioms().is_ok());
            assert_eq!(z.star(), BZDatum::zero(r(n), Flavor::E).unwrap());
            assert_eq!(z.weight().unwrap(), WeightVector::zero(r(n)));
            for i in 1..=n {
                assert_eq!(z.epsilon(i).unwrap(), 0);
            }
        }
    }

    #[test]
    fn star_is_an_involution() {
        let rank = r(3);
        let mut seed = 7i64;
        let m = BZDatum::from_fn(rank, Flavor::E, |_| {
            seed = (seed * 31 + 11) % 17;
            seed - 8
        })
        .unwrap();
        assert_eq!(m.star().star(), m);
        let k = MayaDiagram::new(rank, &[1, 3]).unwrap();
        assert_eq!(m.star().get(&k), m.get(&k.complement()));
    }

    #[test]
    fn rank_one_am_f_on_zero() {
        let rank = r(1);
        let f = BZDatum::zero(rank, Flavor::W0).unwrap().am_f(1).unwrap();
        assert_eq!(f.get(&MayaDiagram::new(rank, &[1]).unwrap()), -1);
        assert_eq!(f.get(&MayaDiagram::new(rank, &[2]).unwrap()), 0);
        assert!(f.check_axioms().is_ok());
        assert_eq!(f.epsilon(1).unwrap(), 1);
    }

    #[test]
    fn am_f_lowers_the_leading_interval() {
        let rank = r(3);
        let mut m = BZDatum::zero(rank, Flavor::W0).unwrap();
        for step in 0..4 {
            for i in 1..=3 {
                let next = m.am_f(i).unwrap();
                let lam = MayaDiagram::lambda(rank, i);
                assert_eq!(next.get(&lam), m.get(&lam) - 1);
                assert!(next.check_axioms().is_ok(), "step {step}, i {i}");
                assert_eq!(next.epsilon(i).unwrap(), m.epsilon(i).unwrap() + 1);
            }
            m = m.am_f((step % 3) + 1).unwrap();
        }
    }

    #[test]
    fn am_f_star_is_star_conjugate() {
        let rank = r(3);
        let mut m = BZDatum::zero(rank, Flavor::E).unwrap();
        for i in [1, 2, 3, 2, 1, 1] {
            m = m.am_f_star(i).unwrap();
        }
        assert!(m.check_axioms().is_ok());
        for i in 1..=3 {
            assert_eq!(m.am_f_star(i).unwrap(), m.star().am_f(i).unwrap().star());
        }
    }

    #[test]
    fn flavor_checks() {
        let e = BZDatum::zero(r(2), Flavor::E).unwrap();
        assert!(matches!(e.am_f(1), Err(Error::FlavorMismatch { expected: "w0", found: "e" })));
        assert!(e.star().am_f_star(1).is_err());
        assert!(e.epsilon(1).is_err());
        assert_eq!(e.epsilon_star(1).unwrap(), 0);
    }

    #[test]
    fn corruption_is_reported() {
        let rank = r(2);
        let mut m = BZDatum::zero(rank, Flavor::W0).unwrap().am_f(1).unwrap().am_f(2).unwrap();
        assert!(m.check_axioms().is_ok());
        let k = MayaDiagram::new(rank, &[2]).unwrap();
        m.set(&k, m.get(&k) + 1);
        assert!(!m.check_axioms().is_ok());
        let mut bad = BZDatum::zero(rank, Flavor::E).unwrap();
        bad.set(&MayaDiagram::lambda(rank, 1), 1);
        let report = bad.check_axioms();
        assert!(report.violations.iter().any(|v| matches!(v, AxiomViolation::Normalization { .. })));
    }

    #[test]
    fn json_round_trip() {
        let rank = r(2);
        let m = BZDatum::zero(rank, Flavor::W0).unwrap().am_f(1).unwrap();
        let text = serde_json::to_string(&m).unwrap();
        assert!(text.starts_with(r#"{"schema":"mvlab.bz/1","n":2,"flavor":"w0","M":{"1":-1,"#));
        let back: BZDatum = serde_json::from_str(&text).unwrap();
        assert_eq!(back, m);
        assert!(serde_json::from_str::<BZDatum>(r#"{"n":2,"flavor":"e","M":{"1,2,3":0}}"#).is_err());
    }
}
