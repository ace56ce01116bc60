//! Provenance polynomials: the free semiring `N[X]` and its quotients
//! `B[X]`, `W[X]`, `S[X]`, `S∞[X]` and `PosBool[X]`.
//!
//! Variables are indices into the variable list of the owning
//! [`Semiring::Poly`](crate::semiring::Semiring::Poly) descriptor.

mod parse;

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigUint;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::semiring::{Ext, HomRule, Semiring, SemiringHom};

pub use parse::parse_polynomial;

/// Default cap on the number of monomials a polynomial may hold.
pub const MAX_MONOMIALS: usize = 10_000;

/// Exponent of a variable: a natural number or `inf` (only in `S∞[X]`).
pub type Exponent = Ext<u32>;

#[allow(clippy::upper_case_acronyms)]
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Quotient {
    NX,
    BX,
    WX,
    SX,
    SInfX,
    PosBool,
}

impl Quotient {
    pub const ALL: [Quotient; 6] = [
        Quotient::NX,
        Quotient::BX,
        Quotient::WX,
        Quotient::SX,
        Quotient::SInfX,
        Quotient::PosBool,
    ];

    pub fn tag(self) -> &'static str {
        match self {
            Quotient::NX => "nx",
            Quotient::BX => "bx",
            Quotient::WX => "wx",
            Quotient::SX => "sx",
            Quotient::SInfX => "sinfx",
            Quotient::PosBool => "posbool",
        }
    }

    pub fn from_tag(tag: &str) -> Option<Quotient> {
        Quotient::ALL.into_iter().find(|q| q.tag() == tag.to_ascii_lowercase())
    }

    fn keeps_coefficients(self) -> bool {
        self == Quotient::NX
    }

    fn collapses_exponents(self) -> bool {
        matches!(self, Quotient::WX | Quotient::PosBool)
    }

    fn absorptive(self) -> bool {
        matches!(self, Quotient::SX | Quotient::SInfX | Quotient::PosBool)
    }

    /// Whether `project` may map polynomials of `self` into `target`.
    pub fn reaches(self, target: Quotient) -> bool {
        use Quotient::*;
        if self == target {
            return true;
        }
        match self {
            NX => matches!(target, BX | WX | SX | SInfX | PosBool),
            BX => target == WX,
            SX => matches!(target, SInfX | PosBool),
            _ => false,
        }
    }
}

impl fmt::Display for Quotient {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.tag())
    }
}

/// A monomial stored sparsely as `(variable, exponent)` pairs sorted by
/// variable, with zero exponents omitted.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Monomial(Vec<(u32, Exponent)>);

impl Monomial {
    pub fn one() -> Self {
        Monomial(Vec::new())
    }

    pub fn var(x: u32) -> Self {
        Monomial(vec![(x, Ext::Fin(1))])
    }

    pub fn from_pairs(pairs: impl IntoIterator<Item = (u32, Exponent)>) -> Self {
        let mut m: BTreeMap<u32, Exponent> = BTreeMap::new();
        for (x, e) in pairs {
            let slot = m.entry(x).or_insert(Ext::Fin(0));
            *slot = add_exp(*slot, e);
        }
        Monomial(m.into_iter().filter(|(_, e)| *e != Ext::Fin(0)).collect())
    }

    pub fn pairs(&self) -> &[(u32, Exponent)] {
        &self.0
    }

    pub fn exponent(&self, x: u32) -> Exponent {
        match self.0.binary_search_by_key(&x, |p| p.0) {
            Ok(i) => self.0[i].1,
            Err(_) => Ext::Fin(0),
        }
    }

    pub fn is_one(&self) -> bool {
        self.0.is_empty()
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        let mut out = Vec::with_capacity(self.0.len() + other.0.len());
        let (mut i, mut j) = (0, 0);
        while i < self.0.len() || j < other.0.len() {
            if j == other.0.len() || (i < self.0.len() && self.0[i].0 < other.0[j].0) {
                out.push(self.0[i]);
                i += 1;
            } else if i == self.0.len() || other.0[j].0 < self.0[i].0 {
                out.push(other.0[j]);
                j += 1;
            } else {
                out.push((self.0[i].0, add_exp(self.0[i].1, other.0[j].1)));
                i += 1;
                j += 1;
            }
        }
        Monomial(out)
    }

    fn collapse(&self) -> Monomial {
        Monomial(self.0.iter().map(|&(x, _)| (x, Ext::Fin(1))).collect())
    }

    fn has_inf(&self) -> bool {
        self.0.iter().any(|p| p.1 == Ext::Inf)
    }

    fn vars(&self) -> impl Iterator<Item = u32> + '_ {
        self.0.iter().map(|p| p.0)
    }
}

fn add_exp(a: Exponent, b: Exponent) -> Exponent {
    match (a, b) {
        (Ext::Fin(a), Ext::Fin(b)) => Ext::Fin(a + b),
        _ => Ext::Inf,
    }
}

/// `m1` absorbs `m2` (restricted to `ys` when given): `m1(x) <= m2(x)`.
pub fn monomial_absorbs(m1: &Monomial, m2: &Monomial, ys: Option<&[u32]>) -> bool {
    match ys {
        None => m1.0.iter().all(|&(x, e)| e <= m2.exponent(x)),
        Some(ys) => ys.iter().all(|&x| m1.exponent(x) <= m2.exponent(x)),
    }
}

/// `e_Y(m)`, the sum of the exponents of `m` over `ys`.
pub fn exponent_sum(m: &Monomial, ys: &[u32]) -> Ext<u64> {
    let mut total = 0u64;
    for &x in ys {
        match m.exponent(x) {
            Ext::Fin(e) => total += u64::from(e),
            Ext::Inf => return Ext::Inf,
        }
    }
    Ext::Fin(total)
}

/// A normalized polynomial of some quotient.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Polynomial {
    quotient: Quotient,
    terms: BTreeMap<Monomial, BigUint>,
}

impl Polynomial {
    pub fn zero(quotient: Quotient) -> Self {
        Polynomial { quotient, terms: BTreeMap::new() }
    }

    pub fn one(quotient: Quotient) -> Self {
        Self::monomial(quotient, Monomial::one())
    }

    pub fn monomial(quotient: Quotient, m: Monomial) -> Self {
        Self::from_terms(quotient, [(m, BigUint::one())]).expect("single monomial is within the cap")
    }

    pub fn var(quotient: Quotient, x: u32) -> Self {
        Self::monomial(quotient, Monomial::var(x))
    }

    /// Builds a polynomial from raw terms, summing duplicates and normalizing.
    pub fn from_terms(
        quotient: Quotient,
        terms: impl IntoIterator<Item = (Monomial, BigUint)>,
    ) -> Result<Self> {
        let mut map: BTreeMap<Monomial, BigUint> = BTreeMap::new();
        for (m, c) in terms {
            if quotient != Quotient::SInfX && m.has_inf() {
                return Err(Error::invalid(format!("infinite exponent outside sinfx ({quotient})")));
            }
            let m = if quotient.collapses_exponents() { m.collapse() } else { m };
            *map.entry(m).or_default() += c;
        }
        Self::normalized(quotient, map)
    }

    fn normalized(quotient: Quotient, mut terms: BTreeMap<Monomial, BigUint>) -> Result<Self> {
        terms.retain(|_, c| !c.is_zero());
        if !quotient.keeps_coefficients() {
            for c in terms.values_mut() {
                *c = BigUint::one();
            }
        }
        if quotient.absorptive() {
            let monos: Vec<Monomial> = terms.keys().cloned().collect();
            terms.retain(|m, _| {
                !monos.iter().any(|o| o != m && monomial_absorbs(o, m, None))
            });
        }
        if terms.len() > MAX_MONOMIALS {
            return Err(Error::Resource(format!(
                "polynomial with {} monomials exceeds the cap of {MAX_MONOMIALS}",
                terms.len()
            )));
        }
        Ok(Polynomial { quotient, terms })
    }

    pub fn quotient(&self) -> Quotient {
        self.quotient
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &BigUint)> {
        self.terms.iter()
    }

    pub fn monomials(&self) -> impl Iterator<Item = &Monomial> {
        self.terms.keys()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient(&self, m: &Monomial) -> BigUint {
        self.terms.get(m).cloned().unwrap_or_default()
    }

    /// Largest variable index used, plus one.
    pub fn var_bound(&self) -> u32 {
        self.monomials().flat_map(|m| m.vars()).max().map_or(0, |x| x + 1)
    }

    fn check_same(&self, other: &Polynomial) -> Result<()> {
        if self.quotient != other.quotient {
            return Err(Error::QuotientMismatch(self.quotient.to_string(), other.quotient.to_string()));
        }
        Ok(())
    }

    pub fn add(&self, other: &Polynomial) -> Result<Polynomial> {
        self.check_same(other)?;
        let mut terms = self.terms.clone();
        for (m, c) in &other.terms {
            *terms.entry(m.clone()).or_default() += c;
        }
        Self::normalized(self.quotient, terms)
    }

    pub fn mul(&self, other: &Polynomial) -> Result<Polynomial> {
        self.check_same(other)?;
        let pairs = self.terms.len().saturating_mul(other.terms.len());
        if pairs > MAX_MONOMIALS.saturating_mul(100) {
            return Err(Error::Resource(format!("product of {pairs} monomial pairs")));
        }
        let collapse = self.quotient.collapses_exponents();
        let mut terms: BTreeMap<Monomial, BigUint> = BTreeMap::new();
        for (m1, c1) in &self.terms {
            for (m2, c2) in &other.terms {
                let mut m = m1.mul(m2);
                if collapse {
                    m = m.collapse();
                }
                *terms.entry(m).or_default() += c1 * c2;
            }
        }
        Self::normalized(self.quotient, terms)
    }

    /// Renders the polynomial with the given variable names.
    pub fn display<'a>(&'a self, vars: &'a [String]) -> PolyDisplay<'a> {
        PolyDisplay { poly: self, vars }
    }
}

pub struct PolyDisplay<'a> {
    poly: &'a Polynomial,
    vars: &'a [String],
}

impl fmt::Display for PolyDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.poly.is_empty() {
            return f.write_str("0");
        }
        for (i, (m, c)) in self.poly.terms.iter().enumerate() {
            if i > 0 {
                f.write_str(" + ")?;
            }
            let mut factors = Vec::new();
            if !c.is_one() || m.is_one() {
                factors.push(c.to_string());
            }
            for &(x, e) in m.pairs() {
                let name = self.vars.get(x as usize).map_or_else(|| format!("v{x}"), |s| s.clone());
                match e {
                    Ext::Fin(1) => factors.push(name),
                    Ext::Fin(n) => factors.push(format!("{name}^{n}")),
                    Ext::Inf => factors.push(format!("{name}^inf")),
                }
            }
            f.write_str(&factors.join("*"))?;
        }
        Ok(())
    }
}

/// Absorption normal form of a monomial set.
pub fn normalize_absorptive(
    quotient: Quotient,
    monomials: impl IntoIterator<Item = Monomial>,
) -> Result<Polynomial> {
    if !quotient.absorptive() {
        return Err(Error::invalid(format!("{quotient} is not an absorptive quotient")));
    }
    Polynomial::from_terms(quotient, monomials.into_iter().map(|m| (m, BigUint::one())))
}

/// Maps a polynomial into a coarser quotient.
pub fn project(p: &Polynomial, target: Quotient) -> Result<Polynomial> {
    if !p.quotient.reaches(target) {
        return Err(Error::invalid(format!("cannot project {} onto {target}", p.quotient)));
    }
    Polynomial::from_terms(target, p.terms.iter().map(|(m, c)| (m.clone(), c.clone())))
}

/// A `Y`-separating monomial for a pair of polynomials.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct YSeparation {
    pub ys: Vec<u32>,
    pub monomial: Monomial,
    /// `e_Y(monomial)`, always finite.
    pub bound: u64,
    /// Whether the monomial was taken from the first polynomial.
    pub from_left: bool,
}

/// Finds `Y` and a `Y`-separating monomial with finite `e_Y`, or `None` if `p = q`.
/// `nvars` is the size of the variable set `X`.
pub fn find_y_separating(p: &Polynomial, q: &Polynomial, nvars: u32) -> Result<Option<YSeparation>> {
    p.check_same(q)?;
    let nvars = nvars.max(p.var_bound()).max(q.var_bound());
    for (from_left, this, other) in [(true, p, q), (false, q, p)] {
        for m in this.monomials() {
            if other.monomials().any(|o| monomial_absorbs(o, m, None)) {
                continue;
            }
            let ys: Vec<u32> = (0..nvars).filter(|&x| m.exponent(x) != Ext::Inf).collect();
            let Ext::Fin(bound) = exponent_sum(m, &ys) else {
                unreachable!("infinite exponents were excluded from Y")
            };
            return Ok(Some(YSeparation { ys, monomial: m.clone(), bound, from_left }));
        }
    }
    Ok(None)
}

/// The homomorphism `N[X] -> N` sending `x_j` to `c^(e^(j-1))`.
pub fn kronecker_hom(c: u64, e: u64, vars: &[String]) -> Result<SemiringHom> {
    if c < 2 || e < 1 {
        return Err(Error::invalid("kronecker embedding needs c >= 2 and e >= 1"));
    }
    Ok(SemiringHom::new(
        Semiring::poly(Quotient::NX, vars.to_vec()),
        Semiring::Nat,
        HomRule::Kronecker { c, e },
    ))
}

/// Evaluates an `N[X]` polynomial at `x_j = c^(e^j)` (zero-based `j`).
pub fn kronecker_eval(p: &Polynomial, c: u64, e: u64) -> Result<BigUint> {
    if p.quotient != Quotient::NX {
        return Err(Error::invalid("kronecker evaluation needs an nx polynomial"));
    }
    let c = BigUint::from(c);
    let mut total = BigUint::zero();
    for (m, coeff) in p.terms() {
        let mut shift = BigUint::zero();
        for &(x, exp) in m.pairs() {
            let Ext::Fin(exp) = exp else { unreachable!("nx has finite exponents") };
            shift += BigUint::from(exp) * BigUint::from(e).pow(x);
        }
        let shift: u32 = shift
            .try_into()
            .map_err(|_| Error::Resource("kronecker image too large".into()))?;
        if shift > 1 << 24 {
            return Err(Error::Resource("kronecker image too large".into()));
        }
        total += coeff * c.pow(shift);
    }
    Ok(total)
}

/// Whether every coefficient is `< c` and every exponent `< e`.
pub fn within_bounds(p: &Polynomial, c: u64, e: u64) -> bool {
    p.terms().all(|(m, coeff)| {
        *coeff < BigUint::from(c)
            && m.pairs().iter().all(|&(_, x)| matches!(x, Ext::Fin(n) if u64::from(n) < e))
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(q: Quotient, text: &str) -> Polynomial {
        parse_polynomial(text, q, &["x".to_string(), "y".to_string()]).unwrap()
    }

    #[test]
    fn absorptive_sum_drops_dominated() {
        let s = p(Quotient::SX, "x").add(&p(Quotient::SX, "x*y")).unwrap();
        assert_eq!(s, p(Quotient::SX, "x"));
    }

    #[test]
    fn wx_square() {
        let s = p(Quotient::WX, "x + y");
        assert_eq!(s.mul(&s).unwrap(), p(Quotient::WX, "x + x*y + y"));
    }

    #[test]
    fn nx_zero_neutral() {
        let a = p(Quotient::NX, "2*x^2 + 3");
        assert_eq!(a.add(&Polynomial::zero(Quotient::NX)).unwrap(), a);
    }

    #[test]
    fn antichain_examples() {
        let x = Monomial::var(0);
        let y = Monomial::var(1);
        let xy = x.mul(&y);
        let x2 = x.mul(&x);
        let n = normalize_absorptive(Quotient::SX, [x.clone(), xy.clone()]).unwrap();
        assert_eq!(n.monomials().cloned().collect::<Vec<_>>(), vec![x.clone()]);
        let n = normalize_absorptive(Quotient::SX, [x2.clone(), xy.clone()]).unwrap();
        assert_eq!(n.len(), 2);
        assert!(normalize_absorptive(Quotient::SX, []).unwrap().is_empty());
    }

    #[test]
    fn absorption_and_exponent_sums() {
        let x = Monomial::var(0);
        let x2y = Monomial::from_pairs([(0, Ext::Fin(2)), (1, Ext::Fin(1))]);
        assert!(monomial_absorbs(&x, &x2y, None));
        assert!(!monomial_absorbs(&Monomial::from_pairs([(0, Ext::Fin(2))]), &x, None));
        let xn_yinf = Monomial::from_pairs([(0, Ext::Fin(4)), (1, Ext::Inf)]);
        let xinf_yinf = Monomial::from_pairs([(0, Ext::Inf), (1, Ext::Inf)]);
        assert!(monomial_absorbs(&xn_yinf, &xinf_yinf, Some(&[0])));
        assert_eq!(exponent_sum(&xn_yinf, &[0]), Ext::Fin(4));
        assert_eq!(exponent_sum(&xn_yinf, &[]), Ext::Fin(0));
        let x2y3 = Monomial::from_pairs([(0, Ext::Fin(2)), (1, Ext::Fin(3))]);
        assert_eq!(exponent_sum(&x2y3, &[0, 1]), Ext::Fin(5));
    }

    #[test]
    fn y_separation_examples() {
        let a = p(Quotient::SInfX, "x^3*y^inf");
        let b = p(Quotient::SInfX, "x^inf*y^inf");
        let sep = find_y_separating(&a, &b, 2).unwrap().unwrap();
        assert_eq!(sep.ys, vec![0]);
        assert_eq!(sep.bound, 3);
        assert!(sep.from_left);
        assert_eq!(find_y_separating(&a, &a, 2).unwrap(), None);

        let a = p(Quotient::SInfX, "x + y");
        let b = p(Quotient::SInfX, "x*y");
        let sep = find_y_separating(&a, &b, 2).unwrap().unwrap();
        assert_eq!(sep.ys, vec![0, 1]);
        assert_eq!(sep.bound, 1);
        assert!(sep.monomial == Monomial::var(0) || sep.monomial == Monomial::var(1));
    }

    #[test]
    fn projections() {
        let a = p(Quotient::NX, "2*x^2 + 3");
        assert_eq!(project(&a, Quotient::BX).unwrap(), p(Quotient::BX, "x^2 + 1"));
        assert_eq!(project(&p(Quotient::BX, "x^2 + 1"), Quotient::WX).unwrap(), p(Quotient::WX, "x + 1"));
        assert_eq!(project(&a, Quotient::SX).unwrap(), Polynomial::one(Quotient::SX));
        assert!(project(&p(Quotient::WX, "x"), Quotient::NX).is_err());
    }

    #[test]
    fn kronecker_small() {
        let vars = vec!["x".to_string()];
        let q = |t: &str| parse_polynomial(t, Quotient::NX, &vars).unwrap();
        let images: Vec<u64> = ["0", "1", "x", "x + 1"]
            .iter()
            .map(|t| kronecker_eval(&q(t), 2, 2).unwrap().try_into().unwrap())
            .collect();
        assert_eq!(images, vec![0, 1, 2, 3]);
    }

    #[test]
    fn sinf_rejected_elsewhere() {
        assert!(parse_polynomial("x^inf", Quotient::SX, &["x".into()]).is_err());
    }
}
