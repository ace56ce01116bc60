use std::collections::HashMap;
use std::sync::{Mutex, OnceLock};

use num_bigint::BigUint;
use num_traits::{One, Pow, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Search limits for exponent oracles.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ExponentBudget {
    pub max_e: u64,
    pub max_multisets: u64,
}

impl Default for ExponentBudget {
    fn default() -> Self {
        ExponentBudget { max_e: 64, max_multisets: 10_000_000 }
    }
}

/// The minimal exponent with injective power sums, plus a collision for the
/// exponent below it (absent when the answer is 1).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExponentCertificate {
    pub e: u64,
    pub collision_below: Option<(Vec<u64>, Vec<u64>)>,
}

fn binomial(n: u64, k: u64) -> Option<u64> {
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc * u128::from(n - i) / u128::from(i + 1);
        if acc > u128::from(u64::MAX) {
            return None;
        }
    }
    u64::try_from(acc).ok()
}

/// Calls `f` on every non-decreasing tuple of length `len` with entries below `d`.
fn for_each_multiset(len: usize, d: u64, f: &mut dyn FnMut(&[u64]) -> bool) {
    fn go(cur: &mut Vec<u64>, len: usize, d: u64, f: &mut dyn FnMut(&[u64]) -> bool) -> bool {
        if cur.len() == len {
            return f(cur);
        }
        let start = cur.last().copied().unwrap_or(0);
        for v in start..d {
            cur.push(v);
            let go_on = go(cur, len, d, f);
            cur.pop();
            if !go_on {
                return false;
            }
        }
        true
    }
    go(&mut Vec::with_capacity(len), len, d, f);
}

/// First pair of distinct multisets of size `len` (entries below `d`) with
/// equal `e`-th power sums.
pub fn power_sum_collision(len: usize, d: u64, e: u64) -> Option<(Vec<u64>, Vec<u64>)> {
    let e32 = u32::try_from(e).ok()?;
    let mut seen: HashMap<BigUint, Vec<u64>> = HashMap::new();
    let mut hit = None;
    for_each_multiset(len, d, &mut |ms| {
        let sum: BigUint = ms.iter().map(|&r| BigUint::from(r).pow(e32)).sum();
        if let Some(prev) = seen.get(&sum) {
            hit = Some((prev.clone(), ms.to_vec()));
            return false;
        }
        seen.insert(sum, ms.to_vec());
        true
    });
    hit
}

/// The minimal `e ≥ 1` such that power sums `Σ r_i^e` determine multisets
/// of fewer than `l` entries below `d`, with a collision certifying `e - 1`.
///
/// Shorter tuples are covered by padding with zeros, so only multisets of
/// exactly `l - 1` entries are compared. Results are memoized per process.
pub fn nat_exponent_certified(l: u64, d: u64, budget: ExponentBudget) -> Result<ExponentCertificate> {
    type Key = (u64, u64, u64, u64);
    static MEMO: OnceLock<Mutex<HashMap<Key, ExponentCertificate>>> = OnceLock::new();
    let key = (l, d, budget.max_e, budget.max_multisets);
    let memo = MEMO.get_or_init(Default::default);
    if let Some(c) = memo.lock().expect("memo lock").get(&key) {
        return Ok(c.clone());
    }
    let cert = search_exponent(l, d, budget)?;
    memo.lock().expect("memo lock").insert(key, cert.clone());
    Ok(cert)
}

fn search_exponent(l: u64, d: u64, budget: ExponentBudget) -> Result<ExponentCertificate> {
    if l < 2 || d == 0 {
        return Err(Error::invalid("exponent oracle needs l >= 2 and d >= 1"));
    }
    let len = (l - 1) as usize;
    let count = binomial(d + l - 2, l - 1);
    match count {
        Some(c) if c <= budget.max_multisets => {}
        _ => {
            return Err(Error::Budget(format!(
                "exponent search for l={l}, d={d} needs more than {} multisets",
                budget.max_multisets
            )))
        }
    }
    let mut below = None;
    for e in 1..=budget.max_e {
        match power_sum_collision(len, d, e) {
            None => return Ok(ExponentCertificate { e, collision_below: below }),
            Some(c) => below = Some(c),
        }
    }
    Err(Error::Budget(format!("no exponent up to {} works for l={l}, d={d}", budget.max_e)))
}

pub fn nat_exponent(l: u64, d: u64, budget: ExponentBudget) -> Result<u64> {
    Ok(nat_exponent_certified(l, d, budget)?.e)
}

/// The minimal `e ≥ 1` for which `(u, v) -> 2·u^e + v^e` is injective on
/// `u < c2`, `v < d`.
///
/// Two images agree only if `v^e - v'^e = 2(u'^e - u^e)` for some `u < u'`;
/// for each such difference only the `v` whose consecutive power gap does
/// not exceed it can take part.
pub fn pair_exponent(c2: u64, d: &BigUint, max_e: u64) -> Result<u64> {
    'e: for e in 1..=max_e {
        let e32 = u32::try_from(e).map_err(|_| Error::invalid("exponent too large"))?;
        let pw = |x: u64| BigUint::from(x).pow(e32);
        for u in 0..c2 {
            for u2 in u + 1..c2 {
                let diff = (pw(u2) - pw(u)) * 2u32;
                let mut v = BigUint::one();
                while &v < d {
                    let hi = v.clone().pow(e32);
                    let lo = (&v - 1u32).pow(e32);
                    if &hi - &lo > diff {
                        break;
                    }
                    if hi >= diff {
                        let w = &hi - &diff;
                        let r = w.nth_root(e32);
                        if r.clone().pow(e32) == w {
                            continue 'e;
                        }
                    }
                    v += 1u32;
                }
            }
        }
        return Ok(e);
    }
    Err(Error::Budget(format!("no pair exponent up to {max_e}")))
}

/// Small `BigUint` to `u64`, for bounds that must stay enumerable.
pub(crate) fn small(d: &BigUint) -> Option<u64> {
    if d.is_zero() {
        Some(0)
    } else {
        d.to_u64()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn known_exponents() {
        let b = ExponentBudget::default();
        assert_eq!(nat_exponent(2, 2, b).unwrap(), 1);
        let c = nat_exponent_certified(3, 3, b).unwrap();
        assert_eq!(c.e, 2);
        let (x, y) = c.collision_below.unwrap();
        assert_eq!(x.iter().sum::<u64>(), y.iter().sum::<u64>());
        assert_eq!(nat_exponent(4, 8, b).unwrap(), 5);
        assert!(power_sum_collision(3, 8, 2).is_some());
        assert!(power_sum_collision(3, 8, 3).is_some());
    }

    #[test]
    fn budget_is_reported() {
        let tight = ExponentBudget { max_e: 64, max_multisets: 10 };
        assert!(nat_exponent(4, 100, tight).unwrap_err().is_budget());
    }

    #[test]
    fn pair_exponent_injective() {
        let d = BigUint::from(50u32);
        let e = pair_exponent(3, &d, 64).unwrap();
        let e32 = e as u32;
        let mut seen = std::collections::HashSet::new();
        for u in 0..3u64 {
            for v in 0..50u64 {
                let img = BigUint::from(u).pow(e32) * 2u32 + BigUint::from(v).pow(e32);
                assert!(seen.insert(img));
            }
        }
    }
}
