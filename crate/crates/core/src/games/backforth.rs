use std::collections::BTreeSet;

use super::solver::{Leaf, Position, Rules, Solver};
use crate::error::Result;
use crate::interp::{Interpretation, PartialMap};

/// Levels `I_m, ..., I_0` of partial maps with the back and forth properties.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BackAndForthSystem {
    pub levels: Vec<Vec<PartialMap>>,
}

impl BackAndForthSystem {
    /// Checks that every map is a local isomorphism and that every map in a
    /// level extends forth and back into the next one.
    pub fn verify(&self, pa: &Interpretation, pb: &Interpretation) -> Result<bool> {
        let s = Solver::new(pa, pb, Rules::Ef, Leaf::Iso)?;
        for (j, level) in self.levels.iter().enumerate() {
            if level.is_empty() {
                return Ok(false);
            }
            for p in level {
                if s.start(&p.sources(), &p.targets())?.is_none() {
                    return Ok(false);
                }
                let Some(next) = self.levels.get(j + 1) else { continue };
                let next: BTreeSet<&Vec<(usize, usize)>> = next.iter().map(|q| &q.pairs).collect();
                let ext = |pair| s.extend(&p.pairs, pair).is_some_and(|q| next.contains(&q));
                let forth = (0..pa.size()).all(|a| (0..pb.size()).any(|b| ext((a, b))));
                let back = (0..pb.size()).all(|b| (0..pa.size()).any(|a| ext((a, b))));
                if !(forth && back) {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }
}

/// Builds the system from the empty position.
pub fn build_back_and_forth(pa: &Interpretation, pb: &Interpretation, m: usize) -> Result<Option<BackAndForthSystem>> {
    build_back_and_forth_from(pa, &[], pb, &[], m)
}

/// Collects every local isomorphism reachable from `(ā, b̄)` in at most `m`
/// moves and prunes, from the deepest level up, the maps without forth or
/// back extensions. Returns `None` when the start map is pruned.
pub fn build_back_and_forth_from(
    pa: &Interpretation,
    a: &[usize],
    pb: &Interpretation,
    b: &[usize],
    m: usize,
) -> Result<Option<BackAndForthSystem>> {
    let s = Solver::new(pa, pb, Rules::Ef, Leaf::Iso)?;
    let Some(start) = s.start(a, b)? else { return Ok(None) };
    let mut reach: Vec<BTreeSet<Position>> = vec![BTreeSet::from([start])];
    for t in 0..m {
        let mut next = BTreeSet::new();
        for p in &reach[t] {
            for x in 0..pa.size() {
                for y in 0..pb.size() {
                    if let Some(q) = s.extend(p, (x, y)) {
                        next.insert(q);
                    }
                }
            }
        }
        reach.push(next);
    }
    // kept[t] holds the surviving maps at depth t.
    let mut kept: Vec<BTreeSet<Position>> = vec![BTreeSet::new(); m + 1];
    kept[m] = reach[m].clone();
    for t in (0..m).rev() {
        let below = &kept[t + 1];
        let ext = |p: &Position, pair| s.extend(p, pair).is_some_and(|q| below.contains(&q));
        let level: BTreeSet<Position> = reach[t]
            .iter()
            .filter(|p| {
                (0..pa.size()).all(|x| (0..pb.size()).any(|y| ext(p, (x, y))))
                    && (0..pb.size()).all(|y| (0..pa.size()).any(|x| ext(p, (x, y))))
            })
            .cloned()
            .collect();
        kept[t] = level;
    }
    if kept[0].is_empty() {
        return Ok(None);
    }
    let levels = kept.into_iter().map(|l| l.into_iter().map(|pairs| PartialMap { pairs }).collect()).collect();
    Ok(Some(BackAndForthSystem { levels }))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::games::solve_ef;
    use crate::semiring::{Semiring, Value};

    fn nat(vals: &[u64]) -> Interpretation {
        let names = ["e1", "e2", "e3"];
        let rows = vals.iter().enumerate().map(|(i, &v)| (names[i], vec![Value::nat(v), Value::nat(0)])).collect();
        Interpretation::monadic(Semiring::Nat, &["R"], rows).unwrap()
    }

    #[test]
    fn agrees_with_minimax() {
        let cases = [(nat(&[1, 2]), nat(&[2, 1])), (nat(&[1, 1, 2]), nat(&[1, 2])), (nat(&[1, 1]), nat(&[1, 3]))];
        for (a, b) in &cases {
            for m in 0..=2 {
                let sys = build_back_and_forth(a, b, m).unwrap();
                assert_eq!(sys.is_some(), solve_ef(a, &[], b, &[], m).unwrap().duplicator_wins());
                if let Some(sys) = sys {
                    assert!(sys.verify(a, b).unwrap());
                }
            }
        }
    }

    #[test]
    fn identity_system_contains_partial_identities() {
        let a = nat(&[1, 2, 3]);
        let sys = build_back_and_forth(&a, &a, 2).unwrap().unwrap();
        assert!(sys.levels[2].contains(&PartialMap { pairs: vec![(0, 0), (2, 2)] }));
        assert_eq!(sys.levels[0], vec![PartialMap::default()]);
    }
}
