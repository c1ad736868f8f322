//! Explicit representations of an oriented `A_n` quiver and the two ways of
//! reading a BZ component off them.

use super::{orientation_from_maya, Dir, Orientation};
use crate::error::{Error, Result};
use crate::linalg::{Field, Matrix};
use crate::lusztig::LusztigDatum;
use crate::maya_bz::MayaDiagram;
use crate::weyl_words::RootIndexPi;
use std::fmt;

/// Vector spaces `V_v` (by dimension) with one matrix per arrow. The map on
/// edge `k` has shape `dim(target) x dim(source)`.
#[derive(Clone, PartialEq)]
pub struct QuiverModule<F: Field> {
    orientation: Orientation,
    dims: Vec<usize>,
    maps: Vec<Matrix<F>>,
}

impl<F: Field> QuiverModule<F> {
    pub fn new(orientation: Orientation, dims: Vec<usize>, maps: Vec<Matrix<F>>) -> Result<Self> {
        let n = orientation.rank().n();
        if dims.len() != n || maps.len() != n - 1 {
            return Err(Error::Internal(format!("module shape does not fit A_{n}")));
        }
        for (idx, m) in maps.iter().enumerate() {
            let k = idx + 1;
            let (src, tgt) = endpoints(&orientation, k);
            if (m.rows(), m.cols()) != (dims[tgt - 1], dims[src - 1]) {
                return Err(Error::Internal(format!("map on edge {k} has shape {}x{}", m.rows(), m.cols())));
            }
        }
        Ok(QuiverModule { orientation, dims, maps })
    }

    pub fn orientation(&self) -> &Orientation {
        &self.orientation
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn dim(&self, v: usize) -> usize {
        self.dims[v - 1]
    }

    /// The map on edge `k`, in the direction of its arrow.
    pub fn map(&self, k: usize) -> &Matrix<F> {
        &self.maps[k - 1]
    }

    /// Composite along the directed path from `k` to `l`, if there is one.
    pub fn path_map(&self, k: usize, l: usize) -> Option<Matrix<F>> {
        if k == l || !self.orientation.has_path(k, l) {
            return None;
        }
        let ctx = self.maps[0].ctx();
        let mut cur = Matrix::identity(ctx, self.dim(k));
        if k < l {
            for e in k..l {
                cur = self.map(e).mul(&cur);
            }
        } else {
            for e in (l..k).rev() {
                cur = self.map(e).mul(&cur);
            }
        }
        Some(cur)
    }
}

impl<F: Field> fmt::Debug for QuiverModule<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "orientation {}", self.orientation)?;
        writeln!(f, "dims {:?}", self.dims)?;
        for (idx, m) in self.maps.iter().enumerate() {
            writeln!(f, "edge {}: {:?}", idx + 1, m)?;
        }
        Ok(())
    }
}

fn endpoints(orientation: &Orientation, k: usize) -> (usize, usize) {
    match orientation.dir(k) {
        Dir::LeftToRight => (k, k + 1),
        Dir::RightToLeft => (k + 1, k),
    }
}

/// The interval module of `(i, j)`: one-dimensional on `i..j`, identity maps
/// inside the interval.
pub fn indecomposable<F: Field>(ctx: F::Ctx, root: RootIndexPi, orientation: &Orientation) -> QuiverModule<F> {
    build_from_summands(ctx, &[(root, 1)], orientation)
}

/// `V(a) = sum_(i,j) e((i,j))^{a_{i,j}}` with summands in canonical root order.
pub fn build_module<F: Field>(ctx: F::Ctx, a: &LusztigDatum, orientation: &Orientation) -> QuiverModule<F> {
    let summands: Vec<(RootIndexPi, u32)> =
        a.rank().roots().map(|r| (r, a.get(r.i, r.j))).filter(|&(_, c)| c > 0).collect();
    build_from_summands(ctx, &summands, orientation)
}

fn build_from_summands<F: Field>(
    ctx: F::Ctx,
    summands: &[(RootIndexPi, u32)],
    orientation: &Orientation,
) -> QuiverModule<F> {
    let n = orientation.rank().n();
    let copies: Vec<RootIndexPi> = summands.iter().flat_map(|&(r, c)| std::iter::repeat_n(r, c as usize)).collect();
    // Position of each copy's basis vector at vertex v, when v lies in it.
    let mut dims = vec![0usize; n];
    let mut slot = vec![vec![None; n]; copies.len()];
    for (c, r) in copies.iter().enumerate() {
        for v in r.i..r.j {
            slot[c][v - 1] = Some(dims[v - 1]);
            dims[v - 1] += 1;
        }
    }
    let maps = (1..n)
        .map(|k| {
            let (src, tgt) = endpoints(orientation, k);
            let mut m = Matrix::zeros(ctx, dims[tgt - 1], dims[src - 1]);
            for s in &slot {
                if let (Some(a), Some(b)) = (s[src - 1], s[tgt - 1]) {
                    m.set(b, a, F::one(ctx));
                }
            }
            m
        })
        .collect();
    QuiverModule { orientation: orientation.clone(), dims, maps }
}

/// `dim Hom(m, n)` by solving the intertwining equations.
pub fn hom_dimension<F: Field>(m: &QuiverModule<F>, n: &QuiverModule<F>) -> Result<usize> {
    if m.orientation != n.orientation {
        return Err(Error::Internal("Hom between modules over different orientations".into()));
    }
    let rank = m.orientation.rank().n();
    let mut offset = vec![0usize; rank + 1];
    for v in 1..=rank {
        offset[v] = offset[v - 1] + n.dim(v) * m.dim(v);
    }
    let unknowns = offset[rank];
    if unknowns == 0 {
        return Ok(0);
    }
    // phi_v[r][c] lives at offset[v-1] + r * m.dim(v) + c.
    let var = |v: usize, r: usize, c: usize| offset[v - 1] + r * m.dim(v) + c;
    let ctx = match m.maps.first().or(n.maps.first()) {
        Some(x) => x.ctx(),
        None => return Ok(unknowns),
    };
    let mut rows: Vec<Vec<F>> = Vec::new();
    for k in 1..rank {
        let (src, tgt) = endpoints(&m.orientation, k);
        let (bm, bn) = (m.map(k), n.map(k));
        for r in 0..n.dim(tgt) {
            for c in 0..m.dim(src) {
                let mut row = vec![F::zero(ctx); unknowns];
                for s in 0..n.dim(src) {
                    let x = bn.get(r, s);
                    if !x.is_zero() {
                        let idx = var(src, s, c);
                        row[idx] = row[idx].add(x);
                    }
                }
                for s in 0..m.dim(tgt) {
                    let x = bm.get(s, c);
                    if !x.is_zero() {
                        let idx = var(tgt, r, s);
                        row[idx] = row[idx].sub(x);
                    }
                }
                rows.push(row);
            }
        }
    }
    let count = rows.len();
    let system = Matrix::from_rows(ctx, count, unknowns, rows.into_iter().flatten().collect());
    Ok(unknowns - system.rank())
}

/// `-sum_{i not in K, j in K} a_{i,j}` for a datum in coordinates of a word
/// adapted to `Omega(K)`.
pub fn m_k_via_hom(a: &LusztigDatum, k: &MayaDiagram) -> i64 {
    -a.rank().roots().filter(|r| !k.contains(r.i) && k.contains(r.j)).map(|r| a.get(r.i, r.j) as i64).sum::<i64>()
}

/// `-dim Coker(sum_{k in out(K)} V_k -> sum_{l in in(K)} V_l)`, the map built
/// from all path composites in `Omega(K)`.
pub fn m_k_via_coker<F: Field>(module: &QuiverModule<F>, k: &MayaDiagram) -> Result<i64> {
    if module.orientation != orientation_from_maya(k)? {
        return Err(Error::Internal(format!("module is not over the orientation of {k}")));
    }
    let outs = k.out_set();
    let ins = k.in_set();
    let target: usize = ins.iter().map(|&l| module.dim(l)).sum();
    if target == 0 {
        return Ok(0);
    }
    let source: usize = outs.iter().map(|&o| module.dim(o)).sum();
    if source == 0 || module.maps.is_empty() {
        return Ok(-(target as i64));
    }
    let ctx = module.maps[0].ctx();
    let mut big = Matrix::zeros(ctx, target, source);
    let mut row = 0;
    for &l in &ins {
        let mut col = 0;
        for &o in &outs {
            if let Some(block) = module.path_map(o, l) {
                big.paste(row, col, &block);
            }
            col += module.dim(o);
        }
        row += module.dim(l);
    }
    Ok(big.rank() as i64 - target as i64)
}

#[cfg(test)]
mod tests {
    use super::super::{adapted_word, characterizing_root};
    use super::*;
    use crate::linalg::Rational;
    use crate::weyl_words::{transition, Rank, ReducedWord};

    fn r(n: usize) -> Rank {
        Rank::new(n).unwrap()
    }

    #[test]
    fn interval_modules() {
        let rank = r(4);
        let omega = Orientation::omega0(rank);
        for root in rank.roots() {
            let e = indecomposable::<Rational>((), root, &omega);
            let want: Vec<usize> = (1..=4).map(|v| usize::from(root.i <= v && v < root.j)).collect();
            assert_eq!(e.dims(), &want[..]);
            assert_eq!(hom_dimension(&e, &e).unwrap(), 1);
        }
        let zero = build_module::<Rational>((), &LusztigDatum::zero(rank), &omega);
        assert_eq!(zero.dims(), &[0, 0, 0, 0]);
    }

    #[test]
    fn module_dimension_is_additive() {
        let rank = r(3);
        let a = LusztigDatum::from_entries(rank, vec![2, 1, 0, 3, 1, 1]).unwrap();
        let m = build_module::<Rational>((), &a, &Orientation::omega0(rank));
        let want: Vec<usize> = (1..=3).map(|i| a.m(i) as usize).collect();
        assert_eq!(m.dims(), &want[..]);
    }

    #[test]
    fn hom_into_the_characterizing_module() {
        for n in 1..=4 {
            let rank = r(n);
            for k in MayaDiagram::all(rank) {
                let omega = orientation_from_maya(&k).unwrap();
                let Some(beta) = characterizing_root(&k) else { continue };
                let target = indecomposable::<Rational>((), beta, &omega);
                for root in rank.roots() {
                    let e = indecomposable::<Rational>((), root, &omega);
                    let want = usize::from(!k.contains(root.i) && k.contains(root.j));
                    assert_eq!(hom_dimension(&e, &target).unwrap(), want, "K = {k}, root {root}");
                    let coker = m_k_via_coker(&e, &k).unwrap();
                    assert_eq!(coker, -(want as i64), "K = {k}, root {root}");
                }
            }
        }
    }

    #[test]
    fn hom_vanishes_against_the_convex_order() {
        for n in 1..=3 {
            let rank = r(n);
            for k in MayaDiagram::all(rank) {
                let omega = orientation_from_maya(&k).unwrap();
                let word = adapted_word(&omega);
                let order = word.roots_in_order();
                for (p, &later) in order.iter().enumerate() {
                    for &earlier in &order[..p] {
                        let x = indecomposable::<Rational>((), later, &omega);
                        let y = indecomposable::<Rational>((), earlier, &omega);
                        assert_eq!(hom_dimension(&x, &y).unwrap(), 0, "{later} > {earlier} in {word}");
                    }
                }
            }
        }
    }

    #[test]
    fn small_triple_equality() {
        let rank = r(2);
        let i0 = ReducedWord::lex_min(rank);
        let a = LusztigDatum::from_entries(rank, vec![1, 2, 1]).unwrap();
        let psi = crate::maya_bz::psi(&a).unwrap();
        for k in MayaDiagram::all(rank) {
            let omega = orientation_from_maya(&k).unwrap();
            let word = adapted_word(&omega);
            let ai = transition(&a, &i0, &word).unwrap();
            let module = build_module::<Rational>((), &ai, &omega);
            assert_eq!(m_k_via_hom(&ai, &k), psi.get(&k), "K = {k}");
            assert_eq!(m_k_via_coker(&module, &k).unwrap(), psi.get(&k), "K = {k}");
        }
    }
}
