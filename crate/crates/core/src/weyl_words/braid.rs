//! Braid moves between reduced words and the transition maps they induce on
//! Lusztig data.

use super::{Rank, ReducedWord};
use crate::error::{Error, Result};
use crate::lusztig::LusztigDatum;
use serde::{Deserialize, Serialize};
use std::collections::{HashMap, VecDeque};

/// Largest rank for which [`braid_path`] uses breadth-first search. Above it
/// the word graph is too large (768 words at `n = 4`, 292864 at `n = 5`) and
/// the exchange construction is used instead.
pub const BFS_MAX_RANK: usize = 4;

/// Hard cap on states visited by [`braid_path_bfs`].
pub const BFS_STATE_CAP: usize = 400_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum MoveKind {
    /// Swap two adjacent commuting letters `|i - j| >= 2`.
    #[serde(rename = "2move")]
    Commute,
    /// Replace `(i, j, i)` by `(j, i, j)` with `|i - j| = 1`.
    #[serde(rename = "3move")]
    Braid,
}

/// A local move starting at 1-based position `pos`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct BraidMove {
    pub kind: MoveKind,
    pub pos: usize,
}

impl BraidMove {
    fn start(self) -> usize {
        self.pos - 1
    }

    /// Whether the move applies to `letters`.
    pub fn applies_to(self, letters: &[usize]) -> bool {
        let p = self.start();
        match self.kind {
            MoveKind::Commute => p + 1 < letters.len() && letters[p].abs_diff(letters[p + 1]) >= 2,
            MoveKind::Braid => {
                p + 2 < letters.len() && letters[p] == letters[p + 2] && letters[p].abs_diff(letters[p + 1]) == 1
            }
        }
    }

    /// Applies the move in place. Every move is its own inverse.
    pub fn apply(self, letters: &mut [usize]) {
        debug_assert!(self.applies_to(letters));
        let p = self.start();
        match self.kind {
            MoveKind::Commute => letters.swap(p, p + 1),
            MoveKind::Braid => {
                let (i, j) = (letters[p], letters[p + 1]);
                letters[p] = j;
                letters[p + 1] = i;
                letters[p + 2] = j;
            }
        }
    }

    /// Effect of the move on coordinates listed in word order.
    fn apply_to_coords(self, coords: &mut [u32]) {
        let p = self.start();
        match self.kind {
            MoveKind::Commute => coords.swap(p, p + 1),
            MoveKind::Braid => {
                let (a, b, c) = (coords[p], coords[p + 1], coords[p + 2]);
                let m = a.min(c);
                coords[p] = b + c - m;
                coords[p + 1] = m;
                coords[p + 2] = a + b - m;
            }
        }
    }
}

fn moves_from(letters: &[usize]) -> impl Iterator<Item = BraidMove> + '_ {
    (1..=letters.len()).flat_map(move |pos| {
        [MoveKind::Commute, MoveKind::Braid]
            .into_iter()
            .map(move |kind| BraidMove { kind, pos })
            .filter(move |m| m.applies_to(letters))
    })
}

fn check_same_rank(from: &ReducedWord, to: &ReducedWord) -> Result<Rank> {
    if from.rank() != to.rank() {
        return Err(Error::RankMismatch(from.rank().n(), to.rank().n()));
    }
    Ok(from.rank())
}

/// A sequence of braid moves turning `from` into `to`.
///
/// Uses bidirectional breadth-first search (a shortest path) up to
/// [`BFS_MAX_RANK`] and the exchange construction above it.
pub fn braid_path(from: &ReducedWord, to: &ReducedWord) -> Result<Vec<BraidMove>> {
    let rank = check_same_rank(from, to)?;
    if rank.n() <= BFS_MAX_RANK {
        if let Some(path) = braid_path_bfs(from, to, BFS_STATE_CAP)? {
            return Ok(path);
        }
    }
    braid_path_exchange(from, to)
}

/// Bidirectional breadth-first search over the braid-move graph. Returns
/// `Ok(None)` when more than `cap` words would have to be visited.
pub fn braid_path_bfs(from: &ReducedWord, to: &ReducedWord, cap: usize) -> Result<Option<Vec<BraidMove>>> {
    check_same_rank(from, to)?;
    if from == to {
        return Ok(Some(Vec::new()));
    }
    type Parents = HashMap<Vec<usize>, Option<(Vec<usize>, BraidMove)>>;
    let mut fwd: Parents = HashMap::new();
    let mut bwd: Parents = HashMap::new();
    fwd.insert(from.letters().to_vec(), None);
    bwd.insert(to.letters().to_vec(), None);
    let mut fq = VecDeque::from([from.letters().to_vec()]);
    let mut bq = VecDeque::from([to.letters().to_vec()]);

    let meet = 'search: loop {
        if fq.is_empty() || bq.is_empty() {
            return Err(Error::Internal("braid graph is disconnected".into()));
        }
        if fwd.len() + bwd.len() > cap {
            return Ok(None);
        }
        // Expand the smaller frontier by one full layer.
        let (queue, seen, other) =
            if fq.len() <= bq.len() { (&mut fq, &mut fwd, &bwd) } else { (&mut bq, &mut bwd, &fwd) };
        for _ in 0..queue.len() {
            let word = queue.pop_front().expect("non-empty layer");
            for mv in moves_from(&word) {
                let mut next = word.clone();
                mv.apply(&mut next);
                if seen.contains_key(&next) {
                    continue;
                }
                seen.insert(next.clone(), Some((word.clone(), mv)));
                if other.contains_key(&next) {
                    break 'search next;
                }
                queue.push_back(next);
            }
        }
    };

    let mut head = Vec::new();
    let mut cur = meet.clone();
    while let Some(Some((prev, mv))) = fwd.get(&cur) {
        head.push(*mv);
        cur = prev.clone();
    }
    head.reverse();
    let mut cur = meet;
    while let Some(Some((prev, mv))) = bwd.get(&cur) {
        head.push(*mv);
        cur = prev.clone();
    }
    Ok(Some(head))
}

/// Braid path built letter by letter: for each position, the target letter is
/// a left descent of the remaining suffix and is brought to the front by the
/// rank-two exchange recursion.
pub fn braid_path_exchange(from: &ReducedWord, to: &ReducedWord) -> Result<Vec<BraidMove>> {
    let rank = check_same_rank(from, to)?;
    let mut word = from.letters().to_vec();
    let mut moves = Vec::new();
    for p in 0..word.len() {
        bring_to_front(&mut word, p, to.letters()[p], &mut moves);
    }
    if word != to.letters() {
        return Err(Error::Internal(format!("exchange path ended at {word:?} in rank {}", rank.n())));
    }
    Ok(moves)
}

/// Rewrites `word[offset..]` so it starts with `s`; `s` must be a left descent
/// of the element the suffix represents.
fn bring_to_front(word: &mut [usize], offset: usize, s: usize, moves: &mut Vec<BraidMove>) {
    let t = word[offset];
    if t == s {
        return;
    }
    bring_to_front(word, offset + 1, s, moves);
    let mv = if t.abs_diff(s) >= 2 {
        BraidMove { kind: MoveKind::Commute, pos: offset + 1 }
    } else {
        bring_to_front(word, offset + 2, t, moves);
        BraidMove { kind: MoveKind::Braid, pos: offset + 1 }
    };
    mv.apply(word);
    moves.push(mv);
}

/// Every reduced word of `w0`, found by closing `lex_min` under braid moves,
/// in lexicographic order. Fails above [`BFS_STATE_CAP`] words.
pub fn all_reduced_words(rank: Rank) -> Result<Vec<ReducedWord>> {
    let start = ReducedWord::lex_min(rank).letters().to_vec();
    let mut seen = std::collections::HashSet::from([start.clone()]);
    let mut queue = VecDeque::from([start]);
    while let Some(word) = queue.pop_front() {
        for mv in moves_from(&word) {
            let mut next = word.clone();
            mv.apply(&mut next);
            if seen.insert(next.clone()) {
                if seen.len() > BFS_STATE_CAP {
                    return Err(Error::ResourceLimit { count: seen.len() as u128, cap: BFS_STATE_CAP as u128 });
                }
                queue.push_back(next);
            }
        }
    }
    let mut out: Vec<Vec<usize>> = seen.into_iter().collect();
    out.sort_unstable();
    Ok(out.into_iter().map(|l| ReducedWord::new_unchecked(rank, l)).collect())
}

/// Applies `moves` to `from`, failing if a move does not apply.
pub fn replay(from: &ReducedWord, moves: &[BraidMove]) -> Result<ReducedWord> {
    let mut letters = from.letters().to_vec();
    for mv in moves {
        if !mv.applies_to(&letters) {
            return Err(Error::Internal(format!("move {mv:?} does not apply to {letters:?}")));
        }
        mv.apply(&mut letters);
    }
    Ok(ReducedWord::new_unchecked(from.rank(), letters))
}

/// Re-expresses a Lusztig datum given in `from` coordinates in `to`
/// coordinates, following [`braid_path`].
pub fn transition(a: &LusztigDatum, from: &ReducedWord, to: &ReducedWord) -> Result<LusztigDatum> {
    if a.rank() != from.rank() {
        return Err(Error::RankMismatch(a.rank().n(), from.rank().n()));
    }
    let path = braid_path(from, to)?;
    transition_along(a, from, &path)
}

/// Transition along an explicit move sequence starting at `from`.
pub fn transition_along(a: &LusztigDatum, from: &ReducedWord, moves: &[BraidMove]) -> Result<LusztigDatum> {
    if a.rank() != from.rank() {
        return Err(Error::RankMismatch(a.rank().n(), from.rank().n()));
    }
    let mut coords: Vec<u32> = from.roots_in_order().into_iter().map(|r| a.get(r.i, r.j)).collect();
    let mut letters = from.letters().to_vec();
    for mv in moves {
        if !mv.applies_to(&letters) {
            return Err(Error::Internal(format!("move {mv:?} does not apply to {letters:?}")));
        }
        mv.apply(&mut letters);
        mv.apply_to_coords(&mut coords);
    }
    let target = ReducedWord::new_unchecked(from.rank(), letters);
    let mut out = LusztigDatum::zero(from.rank());
    for (root, c) in target.roots_in_order().into_iter().zip(coords) {
        out.set(root.i, root.j, c);
    }
    Ok(out)
}
