use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::interp::{same_signature, tuple_maps_agree, Interpretation};

/// A position: the pairs chosen so far, sorted and deduplicated.
pub type Position = Vec<(usize, usize)>;

/// How a round is played.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Rules {
    Ef,
    Bijection,
    Counting(usize),
}

/// Duplicator's condition on positions.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Leaf {
    /// Local isomorphism.
    Iso,
    /// Same equality pattern and every literal value below its counterpart.
    Leq,
}

/// Memoizing minimax solver over positions of one game variant.
pub struct Solver<'a> {
    pa: &'a Interpretation,
    pb: &'a Interpretation,
    rules: Rules,
    leaf: Leaf,
    memo: HashMap<(Position, usize), bool>,
}

impl<'a> Solver<'a> {
    pub fn new(pa: &'a Interpretation, pb: &'a Interpretation, rules: Rules, leaf: Leaf) -> Result<Self> {
        same_signature(pa, pb)?;
        if let Rules::Counting(0) = rules {
            return Err(Error::invalid("counting games need a set size of at least 1"));
        }
        Ok(Solver { pa, pb, rules, leaf, memo: HashMap::new() })
    }

    pub fn rules(&self) -> Rules {
        self.rules
    }

    pub fn left(&self) -> &'a Interpretation {
        self.pa
    }

    pub fn right(&self) -> &'a Interpretation {
        self.pb
    }

    fn agree(&self, a: &[usize], b: &[usize], only_last: bool) -> bool {
        match self.leaf {
            Leaf::Iso => tuple_maps_agree(self.pa, a, self.pb, b, only_last, &mut |x, y| x == y),
            Leaf::Leq => {
                let s = self.pa.semiring();
                tuple_maps_agree(self.pa, a, self.pb, b, only_last, &mut |x, y| s.nat_leq(x, y).unwrap_or(false))
            }
        }
    }

    /// Normalizes the start tuples into a position, or `None` if Duplicator
    /// already lost.
    pub fn start(&self, a: &[usize], b: &[usize]) -> Result<Option<Position>> {
        if a.len() != b.len() {
            return Err(Error::invalid("start tuples have different lengths"));
        }
        if a.iter().any(|&x| x >= self.pa.size()) || b.iter().any(|&y| y >= self.pb.size()) {
            return Err(Error::invalid("start tuple element out of range"));
        }
        if !self.agree(a, b, false) {
            return Ok(None);
        }
        let mut pos: Position = a.iter().copied().zip(b.iter().copied()).collect();
        pos.sort_unstable();
        pos.dedup();
        Ok(Some(pos))
    }

    /// Adds a pair; `None` when the extended position violates the condition.
    pub fn extend(&self, pos: &[(usize, usize)], pair: (usize, usize)) -> Option<Position> {
        if pos.contains(&pair) {
            return Some(pos.to_vec());
        }
        let mut a: Vec<usize> = pos.iter().map(|p| p.0).collect();
        let mut b: Vec<usize> = pos.iter().map(|p| p.1).collect();
        a.push(pair.0);
        b.push(pair.1);
        if !self.agree(&a, &b, true) {
            return None;
        }
        let mut out = pos.to_vec();
        let at = out.binary_search(&pair).unwrap_err();
        out.insert(at, pair);
        Some(out)
    }

    /// Whether Duplicator wins the pair's subgame with `k` rounds left.
    pub fn pair_wins(&mut self, pos: &[(usize, usize)], pair: (usize, usize), k: usize) -> bool {
        match self.extend(pos, pair) {
            Some(p) => self.wins(&p, k),
            None => false,
        }
    }

    /// The matrix `W[a][b]` of pairs after which Duplicator wins with `k - 1` rounds left.
    pub fn matrix(&mut self, pos: &[(usize, usize)], k: usize) -> Vec<Vec<bool>> {
        let (na, nb) = (self.pa.size(), self.pb.size());
        (0..na).map(|a| (0..nb).map(|b| self.pair_wins(pos, (a, b), k - 1)).collect()).collect()
    }

    /// Whether Duplicator wins from a position satisfying the condition.
    pub fn wins(&mut self, pos: &[(usize, usize)], k: usize) -> bool {
        if k == 0 {
            return true;
        }
        let key = (pos.to_vec(), k);
        if let Some(&w) = self.memo.get(&key) {
            return w;
        }
        let (na, nb) = (self.pa.size(), self.pb.size());
        let w = match self.rules {
            Rules::Ef => {
                (0..na).all(|a| (0..nb).any(|b| self.pair_wins(pos, (a, b), k - 1)))
                    && (0..nb).all(|b| (0..na).any(|a| self.pair_wins(pos, (a, b), k - 1)))
            }
            Rules::Bijection => na == nb && perfect_matching(&self.matrix(pos, k)).is_some(),
            Rules::Counting(n) => {
                let w = self.matrix(pos, k);
                hall_violator(&w, n).is_none()
            }
        };
        self.memo.insert(key, w);
        w
    }

    pub fn memo_len(&self) -> usize {
        self.memo.len()
    }
}

/// Transposes a boolean matrix with `cols` columns.
pub fn transpose(w: &[Vec<bool>], cols: usize) -> Vec<Vec<bool>> {
    (0..cols).map(|b| w.iter().map(|row| row[b]).collect()).collect()
}

/// A perfect matching of the bipartite graph `w` (rows to columns), as the
/// column matched to each row.
pub fn perfect_matching(w: &[Vec<bool>]) -> Option<Vec<usize>> {
    let n = w.len();
    let cols = w.first().map_or(0, Vec::len);
    if n != cols {
        return None;
    }
    let (row_of, matched) = max_matching(w, cols);
    if matched < n {
        return None;
    }
    let mut col_of = vec![0; n];
    for (c, r) in row_of.iter().enumerate() {
        col_of[r.expect("perfect")] = c;
    }
    Some(col_of)
}

/// Kuhn's augmenting-path matching; returns the row matched to each column.
fn max_matching(w: &[Vec<bool>], cols: usize) -> (Vec<Option<usize>>, usize) {
    fn augment(r: usize, w: &[Vec<bool>], seen: &mut [bool], row_of: &mut [Option<usize>]) -> bool {
        for c in 0..row_of.len() {
            if w[r][c] && !seen[c] {
                seen[c] = true;
                if row_of[c].is_none_or(|r2| augment(r2, w, seen, row_of)) {
                    row_of[c] = Some(r);
                    return true;
                }
            }
        }
        false
    }
    let mut row_of = vec![None; cols];
    let mut matched = 0;
    for r in 0..w.len() {
        let mut seen = vec![false; cols];
        if augment(r, w, &mut seen, &mut row_of) {
            matched += 1;
        }
    }
    (row_of, matched)
}

/// For `|rows| = |cols|` without a perfect matching: a set of rows with
/// fewer neighbours than members (found by alternating search).
pub fn deficient_rows(w: &[Vec<bool>]) -> Option<Vec<usize>> {
    let cols = w.first().map_or(0, Vec::len);
    let (row_of, matched) = max_matching(w, cols);
    if matched == w.len() {
        return None;
    }
    let mut col_of_row = vec![None; w.len()];
    for (c, r) in row_of.iter().enumerate() {
        if let Some(r) = r {
            col_of_row[*r] = Some(c);
        }
    }
    let free = (0..w.len()).find(|&r| col_of_row[r].is_none()).expect("unmatched row");
    let mut in_set = vec![false; w.len()];
    let mut seen_col = vec![false; cols];
    let mut stack = vec![free];
    in_set[free] = true;
    while let Some(r) = stack.pop() {
        for c in 0..cols {
            if w[r][c] && !seen_col[c] {
                seen_col[c] = true;
                let r2 = row_of[c].expect("no augmenting path from a maximum matching");
                if !in_set[r2] {
                    in_set[r2] = true;
                    stack.push(r2);
                }
            }
        }
    }
    Some((0..w.len()).filter(|&r| in_set[r]).collect())
}

/// Neighbours of a set of rows.
pub fn neighbours(w: &[Vec<bool>], set: &[usize]) -> Vec<usize> {
    let cols = w.first().map_or(0, Vec::len);
    (0..cols).filter(|&c| set.iter().any(|&r| w[r][c])).collect()
}

/// A smallest nonempty set of at most `n` elements on either side whose
/// neighbourhood is smaller than itself: `(from_right, set)`.
pub fn hall_violator(w: &[Vec<bool>], n: usize) -> Option<(bool, Vec<usize>)> {
    let rows = w.len();
    let cols = w.first().map_or(0, Vec::len);
    let wt = transpose(w, cols);
    for size in 1..=n {
        for (from_right, m, count) in [(false, w, rows), (true, &wt, cols)] {
            if size > count {
                // Sets larger than the other side always fail; only possible
                // when this side has enough elements.
                continue;
            }
            let other = if from_right { rows } else { cols };
            let mut found = None;
            for_each_subset(count, size, &mut |set| {
                if found.is_none() && (size > other || neighbours(m, set).len() < size) {
                    found = Some(set.to_vec());
                }
            });
            if let Some(set) = found {
                return Some((from_right, set));
            }
        }
    }
    None
}

/// Calls `f` on every `k`-subset of `0..n` in lexicographic order.
pub fn for_each_subset(n: usize, k: usize, f: &mut dyn FnMut(&[usize])) {
    fn go(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, f: &mut dyn FnMut(&[usize])) {
        if cur.len() == k {
            f(cur);
            return;
        }
        for i in start..n {
            if n - i < k - cur.len() {
                break;
            }
            cur.push(i);
            go(i + 1, n, k, cur, f);
            cur.pop();
        }
    }
    go(0, n, k, &mut Vec::with_capacity(k), f);
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn matching_and_deficiency() {
        let w = vec![vec![true, false, false], vec![true, false, false], vec![true, true, true]];
        assert!(perfect_matching(&w).is_none());
        let x = deficient_rows(&w).unwrap();
        assert!(neighbours(&w, &x).len() < x.len());
        let ok = vec![vec![false, true], vec![true, true]];
        assert_eq!(perfect_matching(&ok), Some(vec![1, 0]));
    }

    #[test]
    fn hall_sizes() {
        let w = vec![vec![true, true], vec![true, true], vec![true, true]];
        assert_eq!(hall_violator(&w, 2), None);
        assert_eq!(hall_violator(&w, 3), Some((false, vec![0, 1, 2])));
    }

    #[test]
    fn subsets() {
        let mut n = 0;
        for_each_subset(5, 2, &mut |_| n += 1);
        assert_eq!(n, 10);
    }
}
