//! `K`-tableaux: upper-triangular arrays `c_{p,q}` (`p <= q`) with diagonal
//! `c_{p,p} = k_p`, weakly increasing rows and strictly increasing columns.
//!
//! Column strictness forces `c_{p,q} <= k_q - (q - p)`, so every index
//! `c_{p,q} + (q - p)` used by [`min_tableau_sum`] stays inside `[1, n+1]`.

use super::MayaDiagram;
use crate::lusztig::LusztigDatum;

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct KTableau {
    /// `rows[p-1][q-p] = c_{p,q}`.
    rows: Vec<Vec<usize>>,
}

impl KTableau {
    pub fn size(&self) -> usize {
        self.rows.len()
    }

    /// `c_{p,q}` for `1 <= p <= q <= size`.
    pub fn get(&self, p: usize, q: usize) -> usize {
        self.rows[p - 1][q - p]
    }

    pub fn rows(&self) -> &[Vec<usize>] {
        &self.rows
    }

    /// Checks the defining conditions against `k`.
    pub fn is_valid_for(&self, k: &MayaDiagram) -> bool {
        let ks = k.members();
        let l = ks.len();
        if self.size() != l || self.rows.iter().enumerate().any(|(p, row)| row.len() != l - p) {
            return false;
        }
        (1..=l).all(|p| self.get(p, p) == ks[p - 1])
            && (1..=l).all(|p| (p..l).all(|q| self.get(p, q) <= self.get(p, q + 1)))
            && (1..l).all(|p| (p + 1..=l).all(|q| self.get(p, q) < self.get(p + 1, q)))
    }
}

/// Off-diagonal cells in fill order: column by column, bottom to top, so
/// both neighbours bounding a cell are already set.
fn fill_order(l: usize) -> Vec<(usize, usize)> {
    (2..=l).flat_map(|q| (1..q).rev().map(move |p| (p, q))).collect()
}

/// Square scratch grid indexed `[p][q]` (1-based, row/column 0 unused).
fn seeded_grid(k: &MayaDiagram) -> Vec<Vec<usize>> {
    let ks = k.members();
    let l = ks.len();
    let mut c = vec![vec![0usize; l + 1]; l + 1];
    for p in 1..=l {
        c[p][p] = ks[p - 1];
    }
    c
}

/// All `K`-tableaux, in depth-first order.
pub fn enumerate_k_tableaux(k: &MayaDiagram) -> Vec<KTableau> {
    let l = k.len();
    let order = fill_order(l);
    let mut c = seeded_grid(k);
    let mut out = Vec::new();

    fn go(pos: usize, order: &[(usize, usize)], c: &mut Vec<Vec<usize>>, l: usize, out: &mut Vec<KTableau>) {
        if pos == order.len() {
            let rows = (1..=l).map(|p| (p..=l).map(|q| c[p][q]).collect()).collect();
            out.push(KTableau { rows });
            return;
        }
        let (p, q) = order[pos];
        for v in c[p][q - 1]..c[p + 1][q] {
            c[p][q] = v;
            go(pos + 1, order, c, l, out);
        }
    }
    go(0, &order, &mut c, l, &mut out);
    out
}

/// `min over K-tableaux C of sum_{p<q} a_{c_{p,q}, c_{p,q} + (q - p)}`.
///
/// Branch and bound: entries are nonnegative, so a partial sum at or above
/// the best complete sum cannot improve it.
pub fn min_tableau_sum(k: &MayaDiagram, a: &LusztigDatum) -> u64 {
    let l = k.len();
    let order = fill_order(l);
    if order.is_empty() {
        return 0;
    }
    let mut c = seeded_grid(k);
    let mut best = u64::MAX;

    fn go(pos: usize, acc: u64, order: &[(usize, usize)], c: &mut Vec<Vec<usize>>, a: &LusztigDatum, best: &mut u64) {
        if acc >= *best {
            return;
        }
        if pos == order.len() {
            *best = acc;
            return;
        }
        let (p, q) = order[pos];
        for v in c[p][q - 1]..c[p + 1][q] {
            c[p][q] = v;
            let term = a.get(v, v + (q - p)) as u64;
            go(pos + 1, acc + term, order, c, a, best);
            if *best == 0 {
                return;
            }
        }
    }
    go(0, 0, &order, &mut c, a, &mut best);
    best
}
