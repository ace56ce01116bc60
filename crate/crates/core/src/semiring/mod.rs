//! Commutative, naturally ordered semirings with exact values.
//!
//! A [`Semiring`] descriptor names a family (plus parameters) and performs
//! all arithmetic on [`Value`]s of that family.

mod hom;
mod table;

use std::fmt;
use std::sync::Arc;

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use rand::Rng;

use crate::error::{Error, Result};
use crate::provenance::{parse_polynomial, Monomial, Polynomial, Quotient};

pub use hom::{verify_hom, HomRule, HomViolation, SemiringHom, HOM_SEED};
pub use table::{parse_table_semiring, validate_table_semiring, RawTable, TableError, TableSemiring};

/// A value that is either finite or the top element `inf`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Ext<T> {
    Fin(T),
    Inf,
}

impl<T> Ext<T> {
    pub fn finite(self) -> Option<T> {
        match self {
            Ext::Fin(t) => Some(t),
            Ext::Inf => None,
        }
    }
}

/// An exact semiring element. The variant must match the family of the
/// descriptor it is used with.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Value {
    Bool(bool),
    Nat(BigUint),
    NatInf(Ext<BigUint>),
    /// Carrier index for `NatTrunc`, `MinMax` and table semirings.
    Elem(u32),
    /// Non-negative rational or `inf` (tropical).
    Rat(Ext<BigRational>),
    /// Rational in `[0, 1]` (Viterbi, Lukasiewicz, doubt).
    Unit(BigRational),
    Poly(Polynomial),
}

impl Value {
    pub fn nat(n: u64) -> Value {
        Value::Nat(BigUint::from(n))
    }

    pub fn natinf(n: Option<u64>) -> Value {
        Value::NatInf(n.map_or(Ext::Inf, |n| Ext::Fin(BigUint::from(n))))
    }

    pub fn tropical(n: Option<u64>) -> Value {
        Value::Rat(n.map_or(Ext::Inf, |n| Ext::Fin(BigRational::from_integer(BigInt::from(n)))))
    }

    pub fn unit(p: i64, q: i64) -> Value {
        Value::Unit(BigRational::new(BigInt::from(p), BigInt::from(q)))
    }

    fn kind(&self) -> &'static str {
        match self {
            Value::Bool(_) => "bool",
            Value::Nat(_) => "nat",
            Value::NatInf(_) => "natinf",
            Value::Elem(_) => "elem",
            Value::Rat(_) => "tropical",
            Value::Unit(_) => "unit",
            Value::Poly(_) => "poly",
        }
    }
}

/// Descriptor of a supported semiring family.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Semiring {
    Boolean,
    Nat,
    NatInf,
    /// `{0..k}` with `min(s+t, k)` and `min(st, k)`.
    NatTrunc(u32),
    /// `(Q+ ∪ {inf}, min, +, inf, 0)`.
    Tropical,
    /// `([0,1], max, ·, 0, 1)`.
    Viterbi,
    /// `([0,1], max, max(s+t-1, 0), 0, 1)`.
    Lukasiewicz,
    /// `([0,1], min, min(s+t, 1), 1, 0)`.
    Doubt,
    /// `{0..k}` with max and min.
    MinMax(u32),
    Table(Arc<TableSemiring>),
    Poly(Quotient, Arc<Vec<String>>),
}

fn rat(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

impl Semiring {
    pub fn poly(quotient: Quotient, vars: Vec<String>) -> Semiring {
        Semiring::Poly(quotient, Arc::new(vars))
    }

    pub fn table(t: TableSemiring) -> Semiring {
        Semiring::Table(Arc::new(t))
    }

    /// Short textual name, matching the interpretation file syntax.
    pub fn name(&self) -> String {
        match self {
            Semiring::Boolean => "boolean".into(),
            Semiring::Nat => "nat".into(),
            Semiring::NatInf => "natinf".into(),
            Semiring::NatTrunc(k) => format!("nattrunc:{k}"),
            Semiring::Tropical => "tropical".into(),
            Semiring::Viterbi => "viterbi".into(),
            Semiring::Lukasiewicz => "lukasiewicz".into(),
            Semiring::Doubt => "doubt".into(),
            Semiring::MinMax(k) => format!("minmax:{k}"),
            Semiring::Table(t) => format!("table[{}]", t.carrier().join(" ")),
            Semiring::Poly(q, vars) => format!("poly:{q}:{}", vars.join(",")),
        }
    }

    pub fn zero(&self) -> Value {
        match self {
            Semiring::Boolean => Value::Bool(false),
            Semiring::Nat => Value::Nat(BigUint::zero()),
            Semiring::NatInf => Value::NatInf(Ext::Fin(BigUint::zero())),
            Semiring::NatTrunc(_) | Semiring::MinMax(_) => Value::Elem(0),
            Semiring::Tropical => Value::Rat(Ext::Inf),
            Semiring::Viterbi | Semiring::Lukasiewicz => Value::Unit(rat(0)),
            Semiring::Doubt => Value::Unit(rat(1)),
            Semiring::Table(t) => Value::Elem(t.zero()),
            Semiring::Poly(q, _) => Value::Poly(Polynomial::zero(*q)),
        }
    }

    pub fn one(&self) -> Value {
        match self {
            Semiring::Boolean => Value::Bool(true),
            Semiring::Nat => Value::Nat(BigUint::one()),
            Semiring::NatInf => Value::NatInf(Ext::Fin(BigUint::one())),
            Semiring::NatTrunc(k) => Value::Elem(1.min(*k)),
            Semiring::MinMax(k) => Value::Elem(*k),
            Semiring::Tropical => Value::Rat(Ext::Fin(rat(0))),
            Semiring::Viterbi | Semiring::Lukasiewicz => Value::Unit(rat(1)),
            Semiring::Doubt => Value::Unit(rat(0)),
            Semiring::Table(t) => Value::Elem(t.one()),
            Semiring::Poly(q, _) => Value::Poly(Polynomial::one(*q)),
        }
    }

    /// Boolean `0`/`1` in this semiring.
    pub fn from_bool(&self, b: bool) -> Value {
        if b {
            self.one()
        } else {
            self.zero()
        }
    }

    fn mismatch(&self, v: &Value) -> Error {
        Error::FamilyMismatch { semiring: self.name(), value: format!("{} {v:?}", v.kind()) }
    }

    /// Checks that `v` is an element of this semiring.
    pub fn check(&self, v: &Value) -> Result<()> {
        let ok = match (self, v) {
            (Semiring::Boolean, Value::Bool(_)) => true,
            (Semiring::Nat, Value::Nat(_)) => true,
            (Semiring::NatInf, Value::NatInf(_)) => true,
            (Semiring::NatTrunc(k) | Semiring::MinMax(k), Value::Elem(i)) => i <= k,
            (Semiring::Table(t), Value::Elem(i)) => (*i as usize) < t.len(),
            (Semiring::Tropical, Value::Rat(r)) => match r {
                Ext::Inf => true,
                Ext::Fin(r) => !r.is_negative(),
            },
            (Semiring::Viterbi | Semiring::Lukasiewicz | Semiring::Doubt, Value::Unit(r)) => {
                !r.is_negative() && *r <= rat(1)
            }
            (Semiring::Poly(q, vars), Value::Poly(p)) => {
                p.quotient() == *q && p.var_bound() as usize <= vars.len()
            }
            _ => false,
        };
        if ok {
            Ok(())
        } else {
            Err(self.mismatch(v))
        }
    }

    pub fn add(&self, s: &Value, t: &Value) -> Result<Value> {
        self.check(s)?;
        self.check(t)?;
        Ok(match (self, s, t) {
            (Semiring::Boolean, Value::Bool(a), Value::Bool(b)) => Value::Bool(*a || *b),
            (Semiring::Nat, Value::Nat(a), Value::Nat(b)) => Value::Nat(a + b),
            (Semiring::NatInf, Value::NatInf(a), Value::NatInf(b)) => Value::NatInf(match (a, b) {
                (Ext::Fin(a), Ext::Fin(b)) => Ext::Fin(a + b),
                _ => Ext::Inf,
            }),
            (Semiring::NatTrunc(k), Value::Elem(a), Value::Elem(b)) => Value::Elem((a + b).min(*k)),
            (Semiring::MinMax(_), Value::Elem(a), Value::Elem(b)) => Value::Elem(*a.max(b)),
            (Semiring::Table(tb), Value::Elem(a), Value::Elem(b)) => Value::Elem(tb.add(*a, *b)),
            (Semiring::Tropical, Value::Rat(a), Value::Rat(b)) => Value::Rat(a.clone().min(b.clone())),
            (Semiring::Viterbi | Semiring::Lukasiewicz, Value::Unit(a), Value::Unit(b)) => {
                Value::Unit(a.max(b).clone())
            }
            (Semiring::Doubt, Value::Unit(a), Value::Unit(b)) => Value::Unit(a.min(b).clone()),
            (Semiring::Poly(..), Value::Poly(a), Value::Poly(b)) => Value::Poly(a.add(b)?),
            _ => unreachable!("checked membership"),
        })
    }

    pub fn mul(&self, s: &Value, t: &Value) -> Result<Value> {
        self.check(s)?;
        self.check(t)?;
        Ok(match (self, s, t) {
            (Semiring::Boolean, Value::Bool(a), Value::Bool(b)) => Value::Bool(*a && *b),
            (Semiring::Nat, Value::Nat(a), Value::Nat(b)) => Value::Nat(a * b),
            (Semiring::NatInf, Value::NatInf(a), Value::NatInf(b)) => Value::NatInf(match (a, b) {
                (Ext::Fin(a), Ext::Fin(b)) => Ext::Fin(a * b),
                (Ext::Fin(z), _) | (_, Ext::Fin(z)) if z.is_zero() => Ext::Fin(BigUint::zero()),
                _ => Ext::Inf,
            }),
            (Semiring::NatTrunc(k), Value::Elem(a), Value::Elem(b)) => {
                Value::Elem((u64::from(*a) * u64::from(*b)).min(u64::from(*k)) as u32)
            }
            (Semiring::MinMax(_), Value::Elem(a), Value::Elem(b)) => Value::Elem(*a.min(b)),
            (Semiring::Table(tb), Value::Elem(a), Value::Elem(b)) => Value::Elem(tb.mul(*a, *b)),
            (Semiring::Tropical, Value::Rat(a), Value::Rat(b)) => Value::Rat(match (a, b) {
                (Ext::Fin(a), Ext::Fin(b)) => Ext::Fin(a + b),
                _ => Ext::Inf,
            }),
            (Semiring::Viterbi, Value::Unit(a), Value::Unit(b)) => Value::Unit(a * b),
            (Semiring::Lukasiewicz, Value::Unit(a), Value::Unit(b)) => {
                Value::Unit((a + b - rat(1)).max(rat(0)))
            }
            (Semiring::Doubt, Value::Unit(a), Value::Unit(b)) => Value::Unit((a + b).min(rat(1))),
            (Semiring::Poly(..), Value::Poly(a), Value::Poly(b)) => Value::Poly(a.mul(b)?),
            _ => unreachable!("checked membership"),
        })
    }

    pub fn sum<'a>(&self, values: impl IntoIterator<Item = &'a Value>) -> Result<Value> {
        values.into_iter().try_fold(self.zero(), |acc, v| self.add(&acc, v))
    }

    pub fn product<'a>(&self, values: impl IntoIterator<Item = &'a Value>) -> Result<Value> {
        values.into_iter().try_fold(self.one(), |acc, v| self.mul(&acc, v))
    }

    /// `n·s`, the `n`-fold sum, by doubling.
    pub fn nsum(&self, s: &Value, n: u64) -> Result<Value> {
        if let (Semiring::Nat, Value::Nat(a)) = (self, s) {
            return Ok(Value::Nat(a * BigUint::from(n)));
        }
        let (mut acc, mut base, mut n) = (self.zero(), s.clone(), n);
        while n > 0 {
            if n & 1 == 1 {
                acc = self.add(&acc, &base)?;
            }
            n >>= 1;
            if n > 0 {
                base = self.add(&base, &base)?;
            }
        }
        Ok(acc)
    }

    /// `s^n` by square-and-multiply.
    pub fn pow(&self, s: &Value, n: u64) -> Result<Value> {
        let (mut acc, mut base, mut n) = (self.one(), s.clone(), n);
        while n > 0 {
            if n & 1 == 1 {
                acc = self.mul(&acc, &base)?;
            }
            n >>= 1;
            if n > 0 {
                base = self.mul(&base, &base)?;
            }
        }
        Ok(acc)
    }

    /// The natural order: `s <= t` iff `s + r = t` for some `r`.
    pub fn nat_leq(&self, s: &Value, t: &Value) -> Result<bool> {
        self.check(s)?;
        self.check(t)?;
        Ok(match (self, s, t) {
            (Semiring::Boolean, Value::Bool(a), Value::Bool(b)) => !a || *b,
            (Semiring::Nat, Value::Nat(a), Value::Nat(b)) => a <= b,
            (Semiring::NatInf, Value::NatInf(a), Value::NatInf(b)) => a <= b,
            (Semiring::NatTrunc(_) | Semiring::MinMax(_), Value::Elem(a), Value::Elem(b)) => a <= b,
            (Semiring::Table(tb), Value::Elem(a), Value::Elem(b)) => tb.leq(*a, *b),
            (Semiring::Tropical, Value::Rat(a), Value::Rat(b)) => b <= a,
            (Semiring::Viterbi | Semiring::Lukasiewicz, Value::Unit(a), Value::Unit(b)) => a <= b,
            (Semiring::Doubt, Value::Unit(a), Value::Unit(b)) => b <= a,
            (Semiring::Poly(Quotient::NX, _), Value::Poly(a), Value::Poly(b)) => {
                a.terms().all(|(m, c)| *c <= b.coefficient(m))
            }
            // Every other quotient is additively idempotent.
            (Semiring::Poly(..), Value::Poly(_), Value::Poly(_)) => self.add(s, t)? == *t,
            _ => unreachable!("checked membership"),
        })
    }

    /// The carrier in a fixed order, for finite families.
    pub fn carrier(&self) -> Option<Vec<Value>> {
        match self {
            Semiring::Boolean => Some(vec![Value::Bool(false), Value::Bool(true)]),
            Semiring::NatTrunc(k) | Semiring::MinMax(k) => Some((0..=*k).map(Value::Elem).collect()),
            Semiring::Table(t) => Some((0..t.len() as u32).map(Value::Elem).collect()),
            Semiring::Poly(Quotient::PosBool, vars) if vars.len() <= 3 => {
                Some(posbool_carrier(vars.len() as u32))
            }
            _ => None,
        }
    }

    pub fn is_finite(&self) -> bool {
        self.carrier().is_some()
    }

    /// `n`-idempotence by the stabilization test `n·s = (n+1)·s` and
    /// `s^n = s^(n+1)` over the carrier, or analytically for infinite families.
    pub fn is_n_idempotent(&self, n: u32) -> Result<bool> {
        if n == 0 {
            return Err(Error::invalid("n-idempotence needs n >= 1"));
        }
        if let Some(carrier) = self.carrier() {
            for s in &carrier {
                let n64 = u64::from(n);
                if self.nsum(s, n64)? != self.nsum(s, n64 + 1)? || self.pow(s, n64)? != self.pow(s, n64 + 1)? {
                    return Ok(false);
                }
            }
            return Ok(true);
        }
        Ok(match self {
            // |X| variables need |X| factors to saturate every union of monomials.
            Semiring::Poly(Quotient::WX, vars) => n as usize >= vars.len().max(1),
            Semiring::Poly(Quotient::PosBool, _) => true,
            // Powers of a non-trivial element never stabilize in these families.
            Semiring::Nat
            | Semiring::NatInf
            | Semiring::Tropical
            | Semiring::Viterbi
            | Semiring::Lukasiewicz
            | Semiring::Doubt
            | Semiring::Poly(..) => false,
            _ => return Err(Error::Unsupported(format!("n-idempotence of {}", self.name()))),
        })
    }

    pub fn is_fully_idempotent(&self) -> Result<bool> {
        self.is_n_idempotent(1)
    }

    /// `s + s·t = s` for all `s, t` (finite carriers or analytic families).
    pub fn is_absorptive(&self) -> Result<bool> {
        if let Some(carrier) = self.carrier() {
            for s in &carrier {
                for t in &carrier {
                    if self.add(s, &self.mul(s, t)?)? != *s {
                        return Ok(false);
                    }
                }
            }
            return Ok(true);
        }
        Ok(match self {
            Semiring::Tropical | Semiring::Viterbi | Semiring::Lukasiewicz | Semiring::Doubt => true,
            Semiring::Poly(q, _) => matches!(q, Quotient::SX | Quotient::SInfX | Quotient::PosBool),
            _ => false,
        })
    }

    /// Fully idempotent and absorptive.
    pub fn is_lattice(&self) -> Result<bool> {
        Ok(self.is_fully_idempotent()? && self.is_absorptive()?)
    }

    /// Parses a value in the interpretation file syntax.
    pub fn parse_value(&self, text: &str) -> Result<Value> {
        let text = text.trim();
        let bad = || Error::invalid(format!("`{text}` is not a value of {}", self.name()));
        let v = match self {
            Semiring::Boolean => match text {
                "0" | "false" => Value::Bool(false),
                "1" | "true" => Value::Bool(true),
                _ => return Err(bad()),
            },
            Semiring::Nat => Value::Nat(text.parse().map_err(|_| bad())?),
            Semiring::NatInf => Value::NatInf(if text == "inf" {
                Ext::Inf
            } else {
                Ext::Fin(text.parse().map_err(|_| bad())?)
            }),
            Semiring::NatTrunc(_) | Semiring::MinMax(_) => Value::Elem(text.parse().map_err(|_| bad())?),
            Semiring::Table(t) => Value::Elem(t.index_of(text).ok_or_else(bad)?),
            Semiring::Tropical => Value::Rat(if text == "inf" {
                Ext::Inf
            } else {
                Ext::Fin(parse_rational(text).ok_or_else(bad)?)
            }),
            Semiring::Viterbi | Semiring::Lukasiewicz | Semiring::Doubt => {
                Value::Unit(parse_rational(text).ok_or_else(bad)?)
            }
            Semiring::Poly(q, vars) => Value::Poly(parse_polynomial(text, *q, vars)?),
        };
        self.check(&v).map_err(|_| bad())?;
        Ok(v)
    }

    /// Renders a value in the syntax accepted by [`Semiring::parse_value`].
    pub fn format_value(&self, v: &Value) -> String {
        match (self, v) {
            (Semiring::Table(t), Value::Elem(i)) if (*i as usize) < t.len() => t.carrier()[*i as usize].clone(),
            (Semiring::Poly(_, vars), Value::Poly(p)) => p.display(vars).to_string(),
            _ => v.to_string(),
        }
    }

    /// Draws a random element (used by randomized law and homomorphism checks).
    pub fn sample<R: Rng + ?Sized>(&self, rng: &mut R) -> Value {
        if let Some(carrier) = self.carrier() {
            return carrier[rng.gen_range(0..carrier.len())].clone();
        }
        match self {
            Semiring::Nat => Value::nat(rng.gen_range(0..=12)),
            Semiring::NatInf => Value::natinf((rng.gen_range(0..6) != 0).then(|| rng.gen_range(0..=8))),
            Semiring::Tropical => {
                if rng.gen_range(0..6) == 0 {
                    Value::Rat(Ext::Inf)
                } else {
                    let q = rng.gen_range(1..=4);
                    Value::Rat(Ext::Fin(BigRational::new(BigInt::from(rng.gen_range(0..=12)), BigInt::from(q))))
                }
            }
            Semiring::Viterbi | Semiring::Lukasiewicz | Semiring::Doubt => {
                let q: i64 = rng.gen_range(1..=6);
                Value::unit(rng.gen_range(0..=q), q)
            }
            Semiring::Poly(q, vars) => {
                let nterms = rng.gen_range(0..=3);
                let mut terms = Vec::new();
                for _ in 0..nterms {
                    let mut pairs = Vec::new();
                    for x in 0..vars.len() as u32 {
                        let e = rng.gen_range(0..=3);
                        let e = if e == 3 && *q == Quotient::SInfX { Ext::Inf } else { Ext::Fin(e.min(2)) };
                        pairs.push((x, e));
                    }
                    let coeff = if *q == Quotient::NX { rng.gen_range(1..=3u32) } else { 1 };
                    terms.push((Monomial::from_pairs(pairs), BigUint::from(coeff)));
                }
                Value::Poly(Polynomial::from_terms(*q, terms).expect("small sample"))
            }
            _ => unreachable!("finite families handled above"),
        }
    }
}

impl fmt::Display for Semiring {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.name())
    }
}

impl fmt::Display for Value {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Value::Bool(b) => write!(f, "{}", u8::from(*b)),
            Value::Nat(n) => write!(f, "{n}"),
            Value::NatInf(Ext::Fin(n)) => write!(f, "{n}"),
            Value::NatInf(Ext::Inf) | Value::Rat(Ext::Inf) => f.write_str("inf"),
            Value::Elem(i) => write!(f, "{i}"),
            Value::Rat(Ext::Fin(r)) | Value::Unit(r) => write!(f, "{r}"),
            Value::Poly(p) => {
                let names: Vec<String> = (0..p.var_bound()).map(|x| format!("v{x}")).collect();
                write!(f, "{}", p.display(&names))
            }
        }
    }
}

fn parse_rational(text: &str) -> Option<BigRational> {
    let (p, q) = match text.split_once('/') {
        Some((p, q)) => (p.trim(), q.trim()),
        None => (text, "1"),
    };
    let p: BigInt = p.parse().ok()?;
    let q: BigInt = q.parse().ok()?;
    if q.is_zero() {
        return None;
    }
    Some(BigRational::new(p, q))
}

/// All antichains of subsets of an `n`-element variable set, as `PosBool` values.
fn posbool_carrier(n: u32) -> Vec<Value> {
    let subsets: Vec<u32> = (0..1u32 << n).collect();
    let mut out = Vec::new();
    // Each antichain is a set of subsets, encoded as a bitmask over `subsets`.
    for family in 0u64..(1u64 << subsets.len()) {
        let members: Vec<u32> = subsets.iter().copied().filter(|s| family >> s & 1 == 1).collect();
        let antichain = members
            .iter()
            .all(|a| members.iter().all(|b| a == b || a & b != *a));
        if !antichain {
            continue;
        }
        let monos = members.iter().map(|&s| {
            Monomial::from_pairs((0..n).filter(|x| s >> x & 1 == 1).map(|x| (x, Ext::Fin(1))))
        });
        let p = Polynomial::from_terms(Quotient::PosBool, monos.map(|m| (m, BigUint::one())))
            .expect("tiny antichain");
        out.push(Value::Poly(p));
    }
    out.sort();
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn wxy() -> Semiring {
        Semiring::poly(Quotient::WX, vec!["x".into(), "y".into()])
    }

    #[test]
    fn basic_arithmetic() {
        assert_eq!(Semiring::Nat.add(&Value::nat(2), &Value::nat(3)).unwrap(), Value::nat(5));
        let t = Semiring::Tropical;
        assert_eq!(t.add(&Value::tropical(Some(1)), &Value::tropical(Some(2))).unwrap(), Value::tropical(Some(1)));
        let l = Semiring::Lukasiewicz;
        assert_eq!(l.mul(&Value::unit(1, 2), &Value::unit(1, 2)).unwrap(), Value::unit(0, 1));
        let w = wxy();
        let s = w.parse_value("x + y").unwrap();
        assert_eq!(w.add(&s, &w.parse_value("x").unwrap()).unwrap(), s);
        assert_eq!(w.mul(&s, &s).unwrap(), w.parse_value("x + x*y + y").unwrap());
    }

    #[test]
    fn family_mismatch() {
        assert!(Semiring::Nat.add(&Value::Bool(true), &Value::nat(1)).is_err());
        assert!(Semiring::MinMax(2).check(&Value::Elem(3)).is_err());
    }

    #[test]
    fn natural_order_closed_forms() {
        assert!(Semiring::Nat.nat_leq(&Value::nat(2), &Value::nat(5)).unwrap());
        let t = Semiring::Tropical;
        assert!(t.nat_leq(&Value::tropical(Some(3)), &Value::tropical(Some(1))).unwrap());
        assert!(!t.nat_leq(&Value::tropical(Some(1)), &Value::tropical(Some(3))).unwrap());
        assert!(Semiring::Boolean.nat_leq(&Value::Bool(false), &Value::Bool(true)).unwrap());
    }

    #[test]
    fn n_idempotence() {
        assert!(Semiring::Boolean.is_n_idempotent(1).unwrap());
        assert!(wxy().is_n_idempotent(2).unwrap());
        assert!(!wxy().is_n_idempotent(1).unwrap());
        for n in 1..5 {
            assert_eq!(Semiring::NatTrunc(2).is_n_idempotent(n).unwrap(), n >= 2);
        }
    }

    #[test]
    fn posbool_sizes() {
        let sizes: Vec<usize> = (0..=3)
            .map(|n| posbool_carrier(n).len())
            .collect();
        assert_eq!(sizes, vec![2, 3, 6, 20]);
    }

    #[test]
    fn value_round_trip() {
        let cases: Vec<(Semiring, &str)> = vec![
            (Semiring::NatInf, "inf"),
            (Semiring::Tropical, "3/2"),
            (Semiring::Viterbi, "1/3"),
            (Semiring::MinMax(4), "2"),
            (Semiring::poly(Quotient::SInfX, vec!["x".into(), "y".into()]), "x*y^inf"),
        ];
        for (s, text) in cases {
            let v = s.parse_value(text).unwrap();
            assert_eq!(s.format_value(&v), text);
        }
        assert!(Semiring::Viterbi.parse_value("3/2").is_err());
    }
}
