//! Seeded generators for randomized checks: finite distributive lattices
//! (as down-set lattices of small posets) and monadic interpretations.

use rand::Rng;

use crate::error::{Error, Result};
use crate::interp::Interpretation;
use crate::semiring::{Semiring, TableSemiring, Value};

/// Default seed of every randomized suite.
pub const DEFAULT_SEED: u64 = 0xEF01;

/// The lattice of down-sets of a poset on `p` points, where `below[i]` is
/// the bitmask of points strictly below `i`; join is union and meet is
/// intersection. Carrier elements are named by their members, e.g. `{}`,
/// `{1}`, `{1,2}`.
pub fn downset_lattice(p: usize, below: &[u32]) -> Result<Semiring> {
    if p == 0 || p > 5 || below.len() != p {
        return Err(Error::invalid("down-set lattices need between 1 and 5 points"));
    }
    let closed = |mask: u32| (0..p).all(|i| mask >> i & 1 == 0 || below[i] & !mask == 0);
    let sets: Vec<u32> = (0..1u32 << p).filter(|&m| closed(m)).collect();
    let name = |m: u32| {
        let members: Vec<String> = (0..p).filter(|i| m >> i & 1 == 1).map(|i| (i + 1).to_string()).collect();
        format!("{{{}}}", members.join(","))
    };
    let index = |m: u32| sets.iter().position(|&s| s == m).expect("down-sets are closed under union and intersection") as u32;
    let full = (1u32 << p) - 1;
    let t = TableSemiring::from_fns(
        sets.iter().map(|&m| name(m)).collect(),
        index(0),
        index(full),
        |s, t| index(sets[s as usize] | sets[t as usize]),
        |s, t| index(sets[s as usize] & sets[t as usize]),
    )?;
    Ok(Semiring::table(t))
}

/// A random lattice semiring with at most `max_carrier` elements (at least 2).
pub fn random_lattice<R: Rng + ?Sized>(rng: &mut R, max_carrier: usize) -> Result<Semiring> {
    loop {
        let p = rng.gen_range(1..=3usize);
        let mut below = vec![0u32; p];
        for j in 1..p {
            for i in 0..j {
                if rng.gen_bool(0.5) {
                    below[j] |= 1 << i | below[i];
                }
            }
        }
        let s = downset_lattice(p, &below)?;
        if s.carrier().map_or(0, |c| c.len()) <= max_carrier {
            return Ok(s);
        }
    }
}

/// A random interpretation over unary relations `rels` with between 1 and
/// `max_size` elements named `e1, e2, ...`; literal values come from `draw`.
pub fn random_monadic<R: Rng + ?Sized>(
    rng: &mut R,
    s: &Semiring,
    rels: &[&str],
    max_size: usize,
    draw: &mut dyn FnMut(&mut R) -> Value,
) -> Result<Interpretation> {
    let n = rng.gen_range(1..=max_size);
    let names: Vec<String> = (1..=n).map(|i| format!("e{i}")).collect();
    let rows = names
        .iter()
        .map(|nm| (nm.as_str(), (0..2 * rels.len()).map(|_| draw(rng)).collect()))
        .collect();
    Interpretation::monadic(s.clone(), rels, rows)
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn downsets_form_lattices() {
        let chain = downset_lattice(2, &[0, 1]).unwrap();
        assert_eq!(chain.carrier().unwrap().len(), 3);
        let square = downset_lattice(2, &[0, 0]).unwrap();
        assert_eq!(square.carrier().unwrap().len(), 4);
        assert!(square.is_lattice().unwrap());
        let mut rng = ChaCha8Rng::seed_from_u64(DEFAULT_SEED);
        for _ in 0..20 {
            let s = random_lattice(&mut rng, 4).unwrap();
            assert!(s.is_lattice().unwrap());
            assert!(s.carrier().unwrap().len() <= 4);
        }
    }
}
