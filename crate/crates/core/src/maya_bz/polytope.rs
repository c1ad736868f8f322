//! Vertices and supporting half-spaces of the MV polytope of a w0-flavored
//! BZ datum, in the sum-zero hyperplane of `Z^{n+1}`.

use super::bz::{BZDatum, Flavor};
use super::MayaDiagram;
use crate::error::{Error, Result};
use crate::weyl_words::{Permutation, Rank};
use serde::Serialize;

pub const MV_POLYTOPE_SCHEMA: &str = "mvlab.mv_polytope/1";

/// `(n+1)!` vertices are listed, so the rank is kept small.
pub const POLYTOPE_MAX_RANK: usize = 5;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Vertex {
    pub w: Permutation,
    pub mu: Vec<i64>,
}

/// The half-space `sum_{k in K} x_k >= M`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Halfspace {
    #[serde(rename = "K")]
    pub k: MayaDiagram,
    #[serde(rename = "M")]
    pub m: i64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct MVPolytopeGeometry {
    pub schema: &'static str,
    #[serde(skip)]
    pub rank: Rank,
    pub vertices: Vec<Vertex>,
    pub halfspaces: Vec<Halfspace>,
}

impl MVPolytopeGeometry {
    pub fn vertex(&self, w: &Permutation) -> Option<&[i64]> {
        self.vertices.iter().find(|v| &v.w == w).map(|v| v.mu.as_slice())
    }
}

/// `sum_{k in K} x_k`.
pub fn pair(x: &[i64], k: &MayaDiagram) -> i64 {
    k.members().iter().map(|&j| x[j - 1]).sum()
}

/// `mu_w = sum_i M_{w[1,i]} (e_{w(i)} - e_{w(i+1)})` for every `w` in lexicographic order.
pub fn mv_vertices(m: &BZDatum) -> Result<MVPolytopeGeometry> {
    if m.flavor() != Flavor::W0 {
        return Err(Error::FlavorMismatch { expected: "w0", found: m.flavor().name() });
    }
    let rank = m.rank();
    let n = rank.n();
    if n > POLYTOPE_MAX_RANK {
        return Err(Error::RankTooLarge { rank: n, max: POLYTOPE_MAX_RANK, what: "MV polytope vertices" });
    }
    let vertices = Permutation::all(rank)
        .into_iter()
        .map(|w| {
            let mut mu = vec![0i64; n + 1];
            for i in 1..=n {
                let c = m.get(&MayaDiagram::lambda(rank, i).act(&w));
                mu[w.apply(i) - 1] += c;
                mu[w.apply(i + 1) - 1] -= c;
            }
            Vertex { w, mu }
        })
        .collect();
    let halfspaces = m.components().map(|(k, v)| Halfspace { k, m: v }).collect();
    Ok(MVPolytopeGeometry { schema: MV_POLYTOPE_SCHEMA, rank, vertices, halfspaces })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sample(rank: Rank) -> BZDatum {
        let mut m = BZDatum::zero(rank, Flavor::W0).unwrap();
        for i in [1, 2, 1, 3, 3, 2] {
            if i <= rank.n() {
                m = m.am_f(i).unwrap();
            }
        }
        m
    }

    #[test]
    fn zero_datum_is_a_point() {
        let g = mv_vertices(&BZDatum::zero(Rank::new(3).unwrap(), Flavor::W0).unwrap()).unwrap();
        assert_eq!(g.vertices.len(), 24);
        assert!(g.vertices.iter().all(|v| v.mu.iter().all(|&x| x == 0)));
    }

    #[test]
    fn vertices_are_tight_and_inside() {
        for n in 1..=3 {
            let rank = Rank::new(n).unwrap();
            let m = sample(rank);
            let g = mv_vertices(&m).unwrap();
            assert!(g.vertex(&Permutation::longest(rank)).unwrap().iter().all(|&x| x == 0));
            for v in &g.vertices {
                assert_eq!(v.mu.iter().sum::<i64>(), 0);
                for i in 1..=n {
                    let k = MayaDiagram::lambda(rank, i).act(&v.w);
                    assert_eq!(pair(&v.mu, &k), m.get(&k));
                }
                for h in &g.halfspaces {
                    assert!(pair(&v.mu, &h.k) >= h.m, "w = {:?}, K = {}", v.w, h.k);
                }
            }
            // mu_e records the weight.
            let e = g.vertex(&Permutation::identity(rank)).unwrap();
            let wt = m.weight().unwrap();
            for i in 1..=n {
                assert_eq!(pair(e, &MayaDiagram::lambda(rank, i)), wt.coeffs()[i - 1]);
            }
        }
    }

    #[test]
    fn guards_and_json() {
        assert!(mv_vertices(&BZDatum::zero(Rank::new(2).unwrap(), Flavor::E).unwrap()).is_err());
        assert!(mv_vertices(&BZDatum::zero(Rank::new(6).unwrap(), Flavor::W0).unwrap()).is_err());
        let g = mv_vertices(&sample(Rank::new(1).unwrap())).unwrap();
        let text = serde_json::to_string(&g).unwrap();
        assert_eq!(
            text,
            r#"{"schema":"mvlab.mv_polytope/1","vertices":[{"w":[1,2],"mu":[-2,2]},{"w":[2,1],"mu":[0,0]}],"halfspaces":[{"K":[1],"M":-2},{"K":[2],"M":0}]}"#
        );
    }
}
