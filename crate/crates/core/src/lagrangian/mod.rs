//! Random points of the conormal Lagrangian `Lambda_a` over a prime field,
//! and the crystal and BZ quantities measured at them.
//!
//! The point keeps the `Omega_0` arrows `F_k : V_{k+1} -> V_k` fixed at the
//! direct-sum representative of the orbit of `a`, and draws the reversed
//! arrows `G_k : V_k -> V_{k+1}` uniformly from the solutions of the moment
//! map equations `F_i G_i - G_{i-1} F_{i-1} = 0`.

use crate::error::Result;
use crate::linalg::{Field, Fp, Matrix, PrimeField};
use crate::lusztig::LusztigDatum;
use crate::maya_bz::{psi, MayaDiagram};
use crate::quiver_rep::{build_module, m_k_via_coker, orientation_from_maya, Dir, Orientation, QuiverModule};
use crate::weyl_words::Rank;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

pub use crate::linalg::{DEFAULT_PRIME, SECOND_PRIME};

/// How many extra samples a mismatch triggers before it counts.
pub const RESAMPLES: u32 = 3;

const SEED_STRIDE: u64 = 0x9E37_79B9_7F4A_7C15;

/// Seed of the `attempt`-th resample.
pub fn derived_seed(seed: u64, attempt: u32) -> u64 {
    seed.wrapping_add(SEED_STRIDE.wrapping_mul(attempt as u64))
}

#[derive(Debug, Clone)]
pub struct ConormalPoint {
    rank: Rank,
    field: PrimeField,
    seed: u64,
    dims: Vec<usize>,
    /// `f[k-1] = F_k`, shape `d_k x d_{k+1}`.
    f: Vec<Matrix<Fp>>,
    /// `g[k-1] = G_k`, shape `d_{k+1} x d_k`.
    g: Vec<Matrix<Fp>>,
}

/// Draws a point of the conormal fiber over the direct-sum representative
/// of `a`; deterministic in `(p, seed)`.
pub fn sample_conormal(a: &LusztigDatum, field: PrimeField, seed: u64) -> ConormalPoint {
    let rank = a.rank();
    let n = rank.n();
    let base = build_module::<Fp>(field, a, &Orientation::omega0(rank));
    let dims = base.dims().to_vec();
    let f: Vec<Matrix<Fp>> = (1..n).map(|k| base.map(k).clone()).collect();
    let d = |v: usize| dims[v - 1];

    // G_k[r][c] is unknown number offset[k-1] + r * d_k + c.
    let mut offset = vec![0usize; n];
    for k in 1..n {
        offset[k] = offset[k - 1] + d(k + 1) * d(k);
    }
    let unknowns = offset[n - 1];
    let var = |k: usize, r: usize, c: usize| offset[k - 1] + r * d(k) + c;

    let mut rows: Vec<Vec<Fp>> = Vec::new();
    for i in 1..=n {
        for r in 0..d(i) {
            for c in 0..d(i) {
                let mut row = vec![field.elem(0); unknowns];
                if i < n {
                    for s in 0..d(i + 1) {
                        let x = f[i - 1].get(r, s);
                        if !x.is_zero() {
                            let idx = var(i, s, c);
                            row[idx] = row[idx].add(x);
                        }
                    }
                }
                if i > 1 {
                    for s in 0..d(i - 1) {
                        let x = f[i - 2].get(s, c);
                        if !x.is_zero() {
                            let idx = var(i - 1, r, s);
                            row[idx] = row[idx].sub(x);
                        }
                    }
                }
                rows.push(row);
            }
        }
    }

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut solution = vec![field.elem(0); unknowns];
    if unknowns > 0 {
        let count = rows.len();
        let system = Matrix::from_rows(field, count, unknowns, rows.into_iter().flatten().collect());
        for basis in system.kernel() {
            let c = field.elem(rng.gen_range(0..field.p()));
            for (s, b) in solution.iter_mut().zip(&basis) {
                *s = s.add(&c.mul(b));
            }
        }
    }
    let g = (1..n)
        .map(|k| {
            let data = (0..d(k + 1))
                .flat_map(|r| (0..d(k)).map(move |c| (r, c)))
                .map(|(r, c)| solution[var(k, r, c)])
                .collect();
            Matrix::from_rows(field, d(k + 1), d(k), data)
        })
        .collect();
    ConormalPoint { rank, field, seed, dims, f, g }
}

impl ConormalPoint {
    pub fn rank(&self) -> Rank {
        self.rank
    }

    pub fn field(&self) -> PrimeField {
        self.field
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn f(&self, k: usize) -> &Matrix<Fp> {
        &self.f[k - 1]
    }

    pub fn g(&self, k: usize) -> &Matrix<Fp> {
        &self.g[k - 1]
    }

    fn d(&self, v: usize) -> usize {
        self.dims[v - 1]
    }

    /// `F_i G_i - G_{i-1} F_{i-1}` at each vertex.
    pub fn moment_residual(&self) -> Vec<Matrix<Fp>> {
        let n = self.rank.n();
        (1..=n)
            .map(|i| {
                let mut acc = Matrix::zeros(self.field, self.d(i), self.d(i));
                if i < n {
                    acc = self.f(i).mul(self.g(i));
                }
                if i > 1 {
                    acc = acc.sub(&self.g(i - 1).mul(self.f(i - 1)));
                }
                acc
            })
            .collect()
    }

    pub fn moment_map_vanishes(&self) -> bool {
        self.moment_residual().iter().all(Matrix::is_zero)
    }

    /// `dim Coker(V_{i+1} + V_{i-1} -> V_i)` over all arrows into `i`.
    pub fn eps(&self, i: usize) -> usize {
        let n = self.rank.n();
        let mut m = Matrix::zeros(self.field, self.d(i), 0);
        if i < n {
            m = m.hstack(self.f(i));
        }
        if i > 1 {
            m = m.hstack(self.g(i - 1));
        }
        self.d(i) - m.rank()
    }

    /// `dim Ker(V_i -> V_{i-1} + V_{i+1})` over all arrows out of `i`.
    pub fn eps_star(&self, i: usize) -> usize {
        let n = self.rank.n();
        let mut m = Matrix::zeros(self.field, 0, self.d(i));
        if i > 1 {
            m = m.vstack(self.f(i - 1));
        }
        if i < n {
            m = m.vstack(self.g(i));
        }
        self.d(i) - m.rank()
    }

    /// The representation of `Omega(K)` read inside the doubled data.
    pub fn restrict(&self, k: &MayaDiagram) -> Result<QuiverModule<Fp>> {
        let omega = orientation_from_maya(k)?;
        let maps = (1..self.rank.n())
            .map(|e| match omega.dir(e) {
                Dir::RightToLeft => self.f(e).clone(),
                Dir::LeftToRight => self.g(e).clone(),
            })
            .collect();
        QuiverModule::new(omega, self.dims.clone(), maps)
    }

    /// `-dim Coker(sum_{out(K)} V_k -> sum_{in(K)} V_l)` at this point.
    pub fn m_k(&self, k: &MayaDiagram) -> Result<i64> {
        m_k_via_coker(&self.restrict(k)?, k)
    }
}

pub fn eps_of_point(b: &ConormalPoint, i: usize) -> usize {
    b.eps(i)
}

pub fn eps_star_of_point(b: &ConormalPoint, i: usize) -> usize {
    b.eps_star(i)
}

pub fn m_k_of_point(b: &ConormalPoint, k: &MayaDiagram) -> Result<i64> {
    b.m_k(k)
}

/// One comparison of a point value against the combinatorial value.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LagrangianRecord {
    pub a: LusztigDatum,
    #[serde(rename = "K")]
    pub k: MayaDiagram,
    pub p: u64,
    /// Seed of the sample that was finally compared.
    pub seed: u64,
    pub m_k_point: i64,
    pub m_k_psi: i64,
    #[serde(rename = "match")]
    pub matches: bool,
    /// Samples drawn, counting resamples.
    pub samples: u32,
    /// A sample exceeded the generic value, which no special point may do.
    pub above_generic: bool,
}

/// Crystal quantities at a point against the Lusztig-data values.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct EpsilonRecord {
    pub a: LusztigDatum,
    pub i: usize,
    pub p: u64,
    pub seed: u64,
    pub eps_point: i64,
    pub eps: i64,
    pub eps_star_point: i64,
    pub eps_star: i64,
    #[serde(rename = "match")]
    pub matches: bool,
    pub samples: u32,
}

/// Samples of one datum drawn lazily: attempt 0 uses the seed itself, later
/// attempts use [`derived_seed`].
struct Samples<'a> {
    a: &'a LusztigDatum,
    field: PrimeField,
    seed: u64,
    points: Vec<ConormalPoint>,
}

impl<'a> Samples<'a> {
    fn new(a: &'a LusztigDatum, field: PrimeField, seed: u64) -> Self {
        Samples { a, field, seed, points: Vec::new() }
    }

    fn get(&mut self, attempt: u32) -> &ConormalPoint {
        while self.points.len() <= attempt as usize {
            let next = derived_seed(self.seed, self.points.len() as u32);
            self.points.push(sample_conormal(self.a, self.field, next));
        }
        &self.points[attempt as usize]
    }

    /// Evaluates `measure` on successive samples until it returns `want` or
    /// the resamples run out. Returns every value seen and the seed of the last.
    fn until<T: PartialEq>(
        &mut self,
        want: &T,
        mut measure: impl FnMut(&ConormalPoint) -> Result<T>,
    ) -> Result<(Vec<T>, u64)> {
        let mut seen = Vec::new();
        for attempt in 0..=RESAMPLES {
            let point = self.get(attempt);
            let seed = point.seed();
            let value = measure(point)?;
            let done = &value == want;
            seen.push(value);
            if done || attempt == RESAMPLES {
                return Ok((seen, seed));
            }
        }
        unreachable!("loop returns on the last attempt")
    }
}

/// Compares `M_K` at random points with `psi(a)` for every `K`.
pub fn check_m_k(a: &LusztigDatum, field: PrimeField, seed: u64) -> Result<Vec<LagrangianRecord>> {
    let bz = psi(a)?;
    let mut samples = Samples::new(a, field, seed);
    let mut out = Vec::new();
    for k in MayaDiagram::all(a.rank()) {
        let want = bz.get(&k);
        let (seen, last_seed) = samples.until(&want, |b| b.m_k(&k))?;
        let last = *seen.last().expect("at least one sample");
        out.push(LagrangianRecord {
            a: a.clone(),
            k,
            p: field.p(),
            seed: last_seed,
            m_k_point: last,
            m_k_psi: want,
            matches: last == want,
            samples: seen.len() as u32,
            above_generic: seen.iter().any(|&v| v > want),
        });
    }
    Ok(out)
}

/// Compares `eps_i` and `eps*_i` at random points with the crystal values.
pub fn check_epsilons(a: &LusztigDatum, field: PrimeField, seed: u64) -> Result<Vec<EpsilonRecord>> {
    let mut samples = Samples::new(a, field, seed);
    let mut out = Vec::new();
    for i in 1..=a.rank().n() {
        let want = (a.epsilon(i)?, a.epsilon_star(i)?);
        let (seen, last_seed) = samples.until(&want, |b| Ok((b.eps(i) as i64, b.eps_star(i) as i64)))?;
        let last = *seen.last().expect("at least one sample");
        out.push(EpsilonRecord {
            a: a.clone(),
            i,
            p: field.p(),
            seed: last_seed,
            eps_point: last.0,
            eps: want.0,
            eps_star_point: last.1,
            eps_star: want.1,
            matches: last == want,
            samples: seen.len() as u32,
        });
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lusztig::enumerate_by_height;

    fn field() -> PrimeField {
        PrimeField::new(DEFAULT_PRIME).unwrap()
    }

    #[test]
    fn rank_one_point_has_no_arrows() {
        let rank = Rank::new(1).unwrap();
        let a = LusztigDatum::from_entries(rank, vec![3]).unwrap();
        let b = sample_conormal(&a, field(), 1);
        assert_eq!(b.dims(), &[3]);
        assert_eq!(b.eps(1), 3);
        assert_eq!(b.eps_star(1), 3);
        assert!(b.moment_map_vanishes());
    }

    #[test]
    fn zero_datum() {
        let rank = Rank::new(3).unwrap();
        let b = sample_conormal(&LusztigDatum::zero(rank), field(), 5);
        for i in 1..=3 {
            assert_eq!(b.eps(i), 0);
            assert_eq!(b.eps_star(i), 0);
        }
        for k in MayaDiagram::all(rank) {
            assert_eq!(b.m_k(&k).unwrap(), 0);
        }
    }

    #[test]
    fn samples_are_reproducible_and_on_the_zero_fiber() {
        let rank = Rank::new(3).unwrap();
        let a = LusztigDatum::from_entries(rank, vec![1, 1, 0, 1, 1, 1]).unwrap();
        let b1 = sample_conormal(&a, field(), 42);
        let b2 = sample_conormal(&a, field(), 42);
        assert!(b1.moment_map_vanishes());
        for k in 1..3 {
            assert!(b1.g(k) == b2.g(k));
        }
    }

    #[test]
    fn point_values_match_on_small_data() {
        let rank = Rank::new(2).unwrap();
        for a in enumerate_by_height(rank, 3).unwrap() {
            for rec in check_m_k(&a, field(), 7).unwrap() {
                assert!(rec.matches && !rec.above_generic, "{rec:?}");
            }
            for rec in check_epsilons(&a, field(), 7).unwrap() {
                assert!(rec.matches, "{rec:?}");
            }
        }
    }
}
