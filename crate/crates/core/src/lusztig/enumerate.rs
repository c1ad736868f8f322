use super::LusztigDatum;
use crate::error::{Error, Result};
use crate::weyl_words::Rank;

/// Default cap on the number of data a single enumeration may produce.
pub const DEFAULT_MAX_CELLS: u128 = 20_000_000;

fn binomial(n: u128, k: u128) -> u128 {
    let k = k.min(n - k);
    (0..k).fold(1u128, |acc, t| acc * (n - t) / (t + 1))
}

/// All data with entry sum at most `max_height`, in lexicographic order of
/// the entry vectors, capped at [`DEFAULT_MAX_CELLS`].
pub fn enumerate_by_height(rank: Rank, max_height: u32) -> Result<HeightEnumeration> {
    enumerate_by_height_capped(rank, max_height, DEFAULT_MAX_CELLS)
}

pub fn enumerate_by_height_capped(rank: Rank, max_height: u32, cap: u128) -> Result<HeightEnumeration> {
    let roots = rank.num_roots() as u128;
    let count = binomial(max_height as u128 + roots, roots);
    if count > cap {
        return Err(Error::ResourceLimit { count, cap });
    }
    Ok(HeightEnumeration { rank, max_height, current: Some(vec![0; rank.num_roots()]), sum: 0, count })
}

/// Stream produced by [`enumerate_by_height`].
#[derive(Debug, Clone)]
pub struct HeightEnumeration {
    rank: Rank,
    max_height: u32,
    current: Option<Vec<u32>>,
    sum: u32,
    count: u128,
}

impl HeightEnumeration {
    /// Total number of data the stream yields.
    pub fn count_hint(&self) -> u128 {
        self.count
    }
}

impl Iterator for HeightEnumeration {
    type Item = LusztigDatum;

    fn next(&mut self) -> Option<LusztigDatum> {
        let cur = self.current.as_mut()?;
        let out = LusztigDatum { rank: self.rank, entries: cur.clone() };
        let last = cur.len() - 1;
        if self.sum < self.max_height {
            cur[last] += 1;
            self.sum += 1;
        } else {
            match cur.iter().rposition(|&x| x > 0) {
                Some(p) if p > 0 => {
                    self.sum = self.sum - cur[p] + 1;
                    cur[p] = 0;
                    cur[p - 1] += 1;
                }
                _ => self.current = None,
            }
        }
        Some(out)
    }
}

/// All data of weight `-nu`, where `nu` lists the coefficients on the simple
/// roots. Order is lexicographic on entry vectors.
pub fn enumerate_by_weight(rank: Rank, nu: &[i64]) -> Vec<LusztigDatum> {
    assert_eq!(nu.len(), rank.n(), "weight length must equal the rank");
    let roots: Vec<_> = rank.roots().collect();
    // Last root index touching each simple index, so exhausted components prune early.
    let mut last_touch = vec![0usize; rank.n()];
    for (k, r) in roots.iter().enumerate() {
        for p in r.i..r.j {
            last_touch[p - 1] = k;
        }
    }
    let mut out = Vec::new();
    if nu.iter().any(|&x| x < 0) {
        return out;
    }
    let mut rem = nu.to_vec();
    let mut entries = vec![0u32; roots.len()];
    fn go(
        k: usize,
        roots: &[crate::weyl_words::RootIndexPi],
        last_touch: &[usize],
        rem: &mut [i64],
        entries: &mut [u32],
        rank: Rank,
        out: &mut Vec<LusztigDatum>,
    ) {
        if k == roots.len() {
            if rem.iter().all(|&x| x == 0) {
                out.push(LusztigDatum { rank, entries: entries.to_vec() });
            }
            return;
        }
        let r = roots[k];
        let max = (r.i..r.j).map(|p| rem[p - 1]).min().unwrap_or(0);
        for c in 0..=max {
            for p in r.i..r.j {
                rem[p - 1] -= c;
            }
            entries[k] = c as u32;
            let dead = (r.i..r.j).any(|p| last_touch[p - 1] == k && rem[p - 1] != 0);
            if !dead {
                go(k + 1, roots, last_touch, rem, entries, rank, out);
            }
            for p in r.i..r.j {
                rem[p - 1] += c;
            }
        }
        entries[k] = 0;
    }
    go(0, &roots, &last_touch, &mut rem, &mut entries, rank, &mut out);
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(n: usize) -> Rank {
        Rank::new(n).unwrap()
    }

    #[test]
    fn small_counts() {
        assert_eq!(enumerate_by_height(r(1), 3).unwrap().count(), 4);
        let h1: Vec<_> = enumerate_by_height(r(2), 1).unwrap().collect();
        assert_eq!(h1.len(), 4);
        assert_eq!(h1[0], LusztigDatum::zero(r(2)));
        assert_eq!(enumerate_by_height(r(2), 2).unwrap().count(), 10);
        assert_eq!(enumerate_by_height(r(3), 5).unwrap().count(), 462);
    }

    #[test]
    fn stream_is_sorted_unique_and_bounded() {
        let all: Vec<_> = enumerate_by_height(r(3), 3).unwrap().collect();
        assert_eq!(all.len() as u128, enumerate_by_height(r(3), 3).unwrap().count_hint());
        for w in all.windows(2) {
            assert!(w[0].entries() < w[1].entries());
        }
        assert!(all.iter().all(|a| a.total() <= 3));
    }

    #[test]
    fn resource_guard() {
        assert!(matches!(enumerate_by_height_capped(r(4), 10, 1000), Err(Error::ResourceLimit { .. })));
    }

    #[test]
    fn by_weight_matches_height_filter() {
        let rank = r(3);
        let all: Vec<_> = enumerate_by_height(rank, 6).unwrap().collect();
        for nu in [[1i64, 1, 1], [2, 1, 0], [1, 2, 1], [0, 0, 0]] {
            let want: Vec<_> = all
                .iter()
                .filter(|a| a.weight().coeffs().iter().map(|x| -x).collect::<Vec<_>>() == nu)
                .cloned()
                .collect();
            assert_eq!(enumerate_by_weight(rank, &nu), want, "nu = {nu:?}");
        }
        assert!(enumerate_by_weight(rank, &[-1, 0, 0]).is_empty());
    }
}
