//! The map `Psi` from Lusztig data to e-flavored BZ data, its inverse on
//! weight slices, and the raising operator on w0-flavored BZ data obtained
//! through it.

use super::bz::{BZDatum, Flavor};
use super::tableau::min_tableau_sum;
use super::{full_mask, MayaDiagram};
use crate::error::{Error, Result};
use crate::lusztig::{enumerate_by_weight, CrystalOp, LusztigDatum};
use std::collections::HashMap;
use std::sync::{Arc, OnceLock, RwLock};

/// `M_K(a) = -sum_j sum_{i < k_j} a_{i,k_j} + min_C sum_{p<q} a_{c_{p,q}, c_{p,q}+(q-p)}`.
pub fn psi(a: &LusztigDatum) -> Result<BZDatum> {
    BZDatum::from_fn(a.rank(), Flavor::E, |k| psi_component(a, &k))
}

/// A single component of [`psi`].
pub fn psi_component(a: &LusztigDatum, k: &MayaDiagram) -> i64 {
    let column: i64 = k.members().iter().map(|&kj| (1..kj).map(|i| a.get(i, kj) as i64).sum::<i64>()).sum();
    min_tableau_sum(k, a) as i64 - column
}

type Slice = HashMap<BZDatum, LusztigDatum>;

/// Inverse of [`psi`], built one weight slice at a time and cached. Safe to
/// share between threads: lookups take a read lock, a missing slice is
/// built outside any lock and inserted under a short write lock.
#[derive(Debug, Default)]
pub struct PsiInverse {
    slices: RwLock<HashMap<Vec<i64>, Arc<Slice>>>,
}

impl PsiInverse {
    pub fn new() -> Self {
        Self::default()
    }

    /// Process-wide shared instance.
    pub fn global() -> &'static PsiInverse {
        static GLOBAL: OnceLock<PsiInverse> = OnceLock::new();
        GLOBAL.get_or_init(PsiInverse::new)
    }

    /// The Lusztig datum `a` with `psi(a) = m`, if any.
    pub fn lookup(&self, m: &BZDatum) -> Result<Option<LusztigDatum>> {
        if m.flavor() != Flavor::E {
            return Err(Error::FlavorMismatch { expected: "e", found: m.flavor().name() });
        }
        let rank = m.rank();
        let full = full_mask(rank);
        // m_i = -M_{[i+1, n+1]}.
        let nu: Vec<i64> = (1..=rank.n()).map(|i| -m.get_mask(full ^ ((1u64 << i) - 1))).collect();
        if nu.iter().any(|&x| x < 0) {
            return Ok(None);
        }
        let key: Vec<i64> = std::iter::once(rank.n() as i64).chain(nu.iter().copied()).collect();
        if let Some(slice) = self.slices.read().expect("lock poisoned").get(&key) {
            return Ok(slice.get(m).cloned());
        }
        let slice = Arc::new(build_slice(rank, &nu)?);
        let found = slice.get(m).cloned();
        self.slices.write().expect("lock poisoned").entry(key).or_insert(slice);
        Ok(found)
    }

    /// Number of cached weight slices.
    pub fn cached_slices(&self) -> usize {
        self.slices.read().expect("lock poisoned").len()
    }

    /// Raising operator `e_i` on a w0-flavored datum: `None` when
    /// `epsilon_i = 0`. The result is checked to raise `M_{[1,i]}` by one and
    /// to leave every `K` outside `{i in K, i+1 not in K}` unchanged.
    pub fn bz_e(&self, m: &BZDatum, i: usize) -> Result<Option<BZDatum>> {
        if m.epsilon(i)? == 0 {
            return Ok(None);
        }
        let a =
            self.lookup(&m.star())?.ok_or_else(|| Error::Internal(format!("no Lusztig datum maps to {}", m.star())))?;
        let raised = a
            .apply(CrystalOp::EStar(i))?
            .ok_or_else(|| Error::Internal(format!("e*_{i} vanished on {a} with epsilon_{i} > 0")))?;
        let out = psi(&raised)?.star();

        let lam = MayaDiagram::lambda(m.rank(), i);
        if out.get(&lam) != m.get(&lam) + 1 {
            return Err(Error::Internal(format!("e_{i} did not raise M_[1,{i}] on {m}")));
        }
        for (k, v) in m.components() {
            let moved = k.contains(i) && !k.contains(i + 1);
            if !moved && out.get(&k) != v {
                return Err(Error::Internal(format!("e_{i} changed M_{k} on {m}")));
            }
        }
        Ok(Some(out))
    }
}

fn build_slice(rank: crate::weyl_words::Rank, nu: &[i64]) -> Result<Slice> {
    let mut slice = HashMap::new();
    for a in enumerate_by_weight(rank, nu) {
        let m = psi(&a)?;
        if let Some(prev) = slice.insert(m, a.clone()) {
            return Err(Error::Internal(format!("psi is not injective: {prev} and {a}")));
        }
    }
    Ok(slice)
}

/// [`PsiInverse::bz_e`] on the shared cache.
pub fn bz_e(m: &BZDatum, i: usize) -> Result<Option<BZDatum>> {
    PsiInverse::global().bz_e(m, i)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lusztig::enumerate_by_height;
    use crate::weyl_words::Rank;

    fn r(n: usize) -> Rank {
        Rank::new(n).unwrap()
    }

    #[test]
    fn zero_datum_maps_to_zero() {
        for n in 1..=4 {
            assert_eq!(psi(&LusztigDatum::zero(r(n))).unwrap(), BZDatum::zero(r(n), Flavor::E).unwrap());
        }
    }

    #[test]
    fn hand_computed_rank_two_value() {
        let rank = r(2);
        let a = LusztigDatum::from_entries(rank, vec![1, 0, 0]).unwrap();
        let m = psi(&a).unwrap();
        let got: Vec<i64> = [&[1][..], &[2], &[3], &[1, 2], &[1, 3], &[2, 3]]
            .iter()
            .map(|k| m.get(&MayaDiagram::new(rank, k).unwrap()))
            .collect();
        assert_eq!(got, vec![0, -1, 0, 0, 0, -1]);
    }

    #[test]
    fn upper_intervals_give_minus_m() {
        let rank = r(3);
        for a in enumerate_by_height(rank, 3).unwrap() {
            let m = psi(&a).unwrap();
            for i in 1..=3 {
                let k = MayaDiagram::interval(rank, i + 1, 4).unwrap();
                assert_eq!(m.get(&k), -a.m(i), "a = {a}, i = {i}");
            }
        }
    }

    #[test]
    fn inverse_recovers_data() {
        let rank = r(3);
        let inv = PsiInverse::new();
        for a in enumerate_by_height(rank, 3).unwrap() {
            assert_eq!(inv.lookup(&psi(&a).unwrap()).unwrap(), Some(a));
        }
        let mut junk = BZDatum::zero(rank, Flavor::E).unwrap();
        junk.set(&MayaDiagram::new(rank, &[2]).unwrap(), -5);
        assert_eq!(inv.lookup(&junk).unwrap(), None);
    }

    #[test]
    fn raising_undoes_lowering() {
        let rank = r(2);
        let inv = PsiInverse::new();
        let zero = BZDatum::zero(rank, Flavor::W0).unwrap();
        assert_eq!(inv.bz_e(&zero, 1).unwrap(), None);
        let mut m = zero;
        for i in [1, 2, 2, 1] {
            let lower = m.am_f(i).unwrap();
            assert_eq!(inv.bz_e(&lower, i).unwrap(), Some(m.clone()));
            m = lower;
        }
    }
}
