//! Separating sets of homomorphisms from finite lattice semirings into the
//! Boolean semiring, built from `+`-indecomposable elements or prime ideals.

use crate::error::{Error, Result};
use crate::semiring::{HomRule, Semiring, SemiringHom, Value};

/// Largest carrier scanned exhaustively for prime ideals.
pub const MAX_IDEAL_CARRIER: usize = 16;

/// A prime ideal, with members in carrier order.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PrimeIdeal {
    pub members: Vec<Value>,
}

impl PrimeIdeal {
    pub fn contains(&self, v: &Value) -> bool {
        self.members.contains(v)
    }
}

fn lattice_carrier(s: &Semiring) -> Result<Vec<Value>> {
    let carrier = s
        .carrier()
        .ok_or_else(|| Error::Unsupported(format!("{s} has no finite carrier")))?;
    if !s.is_fully_idempotent()? || !s.is_absorptive()? {
        return Err(Error::invalid(format!("{s} is not a lattice semiring")));
    }
    Ok(carrier)
}

fn is_idc(s: &Semiring, carrier: &[Value], x: &Value) -> Result<bool> {
    if *x == s.zero() {
        return Ok(false);
    }
    for r in carrier.iter().filter(|r| *r != x) {
        for t in carrier.iter().filter(|t| *t != x) {
            if s.add(r, t)? == *x {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// The nonzero `+`-indecomposable elements, in carrier order.
pub fn idc_elements(s: &Semiring) -> Result<Vec<Value>> {
    let carrier = lattice_carrier(s)?;
    let mut out = Vec::new();
    for x in &carrier {
        if is_idc(s, &carrier, x)? {
            out.push(x.clone());
        }
    }
    Ok(out)
}

/// `h_s(t) = 1` iff `t + s = t`.
pub fn make_h_s(s: &Semiring, x: &Value) -> Result<SemiringHom> {
    let carrier = lattice_carrier(s)?;
    s.check(x)?;
    if !is_idc(s, &carrier, x)? {
        return Err(Error::invalid(format!("{} is not +-indecomposable in {s}", s.format_value(x))));
    }
    Ok(SemiringHom::new(s.clone(), Semiring::Boolean, HomRule::IdcHom(x.clone())))
}

/// Checks the ideal and primality conditions for a set of carrier indices.
fn is_prime_ideal(s: &Semiring, carrier: &[Value], member: &[bool]) -> Result<bool> {
    let n = carrier.len();
    let count = member.iter().filter(|&&b| b).count();
    if count == 0 || count == n {
        return Ok(false);
    }
    let index = |v: &Value| carrier.iter().position(|c| c == v).expect("closed operations");
    for i in 0..n {
        for j in 0..n {
            let sum = index(&s.add(&carrier[i], &carrier[j])?);
            let prod = index(&s.mul(&carrier[i], &carrier[j])?);
            if member[i] && member[j] && !member[sum] {
                return Ok(false);
            }
            if (member[i] || member[j]) && !member[prod] {
                return Ok(false);
            }
            if member[prod] && !member[i] && !member[j] {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Every prime ideal, by exhaustive subset scan, ordered by size and then
/// lexicographically in carrier order.
pub fn prime_ideals(s: &Semiring) -> Result<Vec<PrimeIdeal>> {
    let carrier = lattice_carrier(s)?;
    let n = carrier.len();
    if n > MAX_IDEAL_CARRIER {
        return Err(Error::Resource(format!("carrier of {n} elements exceeds {MAX_IDEAL_CARRIER}")));
    }
    // Zero belongs to every ideal; scan the remaining elements.
    let zero = carrier.iter().position(|c| *c == s.zero()).expect("zero in carrier");
    let others: Vec<usize> = (0..n).filter(|&i| i != zero).collect();
    let mut found: Vec<Vec<usize>> = Vec::new();
    for mask in 0u32..(1u32 << others.len()) {
        let mut member = vec![false; n];
        member[zero] = true;
        for (bit, &i) in others.iter().enumerate() {
            if mask >> bit & 1 == 1 {
                member[i] = true;
            }
        }
        if is_prime_ideal(s, &carrier, &member)? {
            found.push((0..n).filter(|&i| member[i]).collect());
        }
    }
    found.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
    Ok(found
        .into_iter()
        .map(|idx| PrimeIdeal { members: idx.into_iter().map(|i| carrier[i].clone()).collect() })
        .collect())
}

/// `h_P(t) = 0` iff `t ∈ P`.
pub fn make_h_p(s: &Semiring, p: &PrimeIdeal) -> Result<SemiringHom> {
    let carrier = lattice_carrier(s)?;
    let member: Vec<bool> = carrier.iter().map(|c| p.contains(c)).collect();
    if p.members.iter().any(|m| !carrier.contains(m)) || !is_prime_ideal(s, &carrier, &member)? {
        return Err(Error::invalid("not a prime ideal"));
    }
    Ok(SemiringHom::new(s.clone(), Semiring::Boolean, HomRule::PrimeIdealHom(p.members.clone())))
}

/// `{h_s : s ∈ idc(S)}`.
pub fn idc_homs(s: &Semiring) -> Result<Vec<SemiringHom>> {
    idc_elements(s)?.iter().map(|x| make_h_s(s, x)).collect()
}

/// `{h_P : P prime}`.
pub fn prime_homs(s: &Semiring) -> Result<Vec<SemiringHom>> {
    prime_ideals(s)?.iter().map(|p| make_h_p(s, p)).collect()
}

/// Every pair of distinct carrier elements is told apart by some `h`.
pub fn verify_separating(s: &Semiring, hs: &[SemiringHom]) -> Result<bool> {
    let carrier = s.carrier().ok_or_else(|| Error::Unsupported(format!("{s} has no finite carrier")))?;
    let images: Vec<Vec<Value>> =
        hs.iter().map(|h| carrier.iter().map(|c| h.apply(c)).collect::<Result<Vec<_>>>()).collect::<Result<_>>()?;
    for i in 0..carrier.len() {
        for j in i + 1..carrier.len() {
            if !images.iter().any(|img| img[i] != img[j]) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::provenance::Quotient;
    use crate::semiring::verify_hom;

    #[test]
    fn minmax_indecomposables() {
        let s = Semiring::MinMax(2);
        assert_eq!(idc_elements(&s).unwrap(), vec![Value::Elem(1), Value::Elem(2)]);
        assert_eq!(idc_elements(&Semiring::Boolean).unwrap(), vec![Value::Bool(true)]);
    }

    #[test]
    fn sigma4_ideals_and_homs() {
        let s = Semiring::MinMax(3);
        let ideals = prime_ideals(&s).unwrap();
        let got: Vec<Vec<Value>> = ideals.iter().map(|p| p.members.clone()).collect();
        let e = Value::Elem;
        assert_eq!(got, vec![vec![e(0)], vec![e(0), e(1)], vec![e(0), e(1), e(2)]]);
        let hp = prime_homs(&s).unwrap();
        let hs = idc_homs(&s).unwrap();
        for h in hp.iter().chain(&hs) {
            assert_eq!(verify_hom(h), Ok(()));
        }
        assert!(verify_separating(&s, &hp).unwrap());
        assert!(verify_separating(&s, &hs).unwrap());
        // h_2 is the threshold at 2, as is h_{0,1}.
        for j in 0..4 {
            assert_eq!(hs[1].apply(&e(j)).unwrap(), Value::Bool(j >= 2));
            assert_eq!(hp[1].apply(&e(j)).unwrap(), Value::Bool(j >= 2));
        }
        assert!(!verify_separating(&s, &hs[2..]).unwrap());
    }

    #[test]
    fn posbool_monomials() {
        let s = Semiring::poly(Quotient::PosBool, vec!["x".into(), "y".into()]);
        let got: Vec<String> = idc_elements(&s).unwrap().iter().map(|v| s.format_value(v)).collect();
        let mut got = got;
        got.sort();
        assert_eq!(got, ["1", "x", "x*y", "y"]);
        let one = Semiring::poly(Quotient::PosBool, vec!["x".into()]);
        let ideals: Vec<Vec<String>> = prime_ideals(&one)
            .unwrap()
            .iter()
            .map(|p| p.members.iter().map(|v| one.format_value(v)).collect())
            .collect();
        assert_eq!(ideals, vec![vec!["0".to_string()], vec!["0".to_string(), "x".to_string()]]);
    }

    #[test]
    fn rejects_non_lattices() {
        assert!(idc_elements(&Semiring::NatTrunc(3)).is_err());
    }
}
