use std::fmt;
use std::sync::Arc;

use num_bigint::BigUint;
use num_rational::BigRational;
use num_traits::Signed;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::{Ext, Semiring, Value};
use crate::error::{Error, Result};
use crate::provenance::{kronecker_eval, project, Quotient};

/// Seed of the randomized homomorphism probe.
pub const HOM_SEED: u64 = 0xEF01;

/// Number of random pairs probed for infinite sources.
const HOM_SAMPLES: usize = 1000;

type HomFn = Arc<dyn Fn(&Value) -> Result<Value> + Send + Sync>;

#[derive(Clone)]
pub enum HomRule {
    Identity,
    /// Images of the source carrier, in carrier order.
    FiniteMap(Vec<Value>),
    /// `n -> min(n, k)` from `Nat` or `NatInf` (with `inf -> k`).
    TruncateToNatTrunc(u32),
    /// `t -> 1` iff `t + s = t`.
    IdcHom(Value),
    /// `t -> 0` iff `t ∈ P`.
    PrimeIdealHom(Vec<Value>),
    /// `N[X] -> N`, `x_j -> c^(e^j)` with zero-based `j`.
    Kronecker { c: u64, e: u64 },
    /// `s -> factor·s` on the tropical semiring.
    TropicalScale(BigRational),
    /// Quotient projection between provenance semirings.
    Project(Quotient),
    /// An arbitrary named map; only meaningful after [`verify_hom`].
    Custom(String, HomFn),
}

impl fmt::Debug for HomRule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            HomRule::Identity => f.write_str("Identity"),
            HomRule::FiniteMap(v) => f.debug_tuple("FiniteMap").field(v).finish(),
            HomRule::TruncateToNatTrunc(k) => f.debug_tuple("TruncateToNatTrunc").field(k).finish(),
            HomRule::IdcHom(s) => f.debug_tuple("IdcHom").field(s).finish(),
            HomRule::PrimeIdealHom(p) => f.debug_tuple("PrimeIdealHom").field(p).finish(),
            HomRule::Kronecker { c, e } => f.debug_struct("Kronecker").field("c", c).field("e", e).finish(),
            HomRule::TropicalScale(r) => f.debug_tuple("TropicalScale").field(r).finish(),
            HomRule::Project(q) => f.debug_tuple("Project").field(q).finish(),
            HomRule::Custom(name, _) => f.debug_tuple("Custom").field(name).finish(),
        }
    }
}

/// A map between semirings given by a rule.
#[derive(Clone, Debug)]
pub struct SemiringHom {
    pub source: Semiring,
    pub target: Semiring,
    pub rule: HomRule,
}

impl SemiringHom {
    pub fn new(source: Semiring, target: Semiring, rule: HomRule) -> Self {
        SemiringHom { source, target, rule }
    }

    pub fn identity(s: Semiring) -> Self {
        SemiringHom::new(s.clone(), s, HomRule::Identity)
    }

    pub fn custom(
        source: Semiring,
        target: Semiring,
        name: &str,
        f: impl Fn(&Value) -> Result<Value> + Send + Sync + 'static,
    ) -> Self {
        SemiringHom::new(source, target, HomRule::Custom(name.to_string(), Arc::new(f)))
    }

    /// A short description used in reports.
    pub fn label(&self) -> String {
        match &self.rule {
            HomRule::IdcHom(s) => format!("h_{}", self.source.format_value(s)),
            HomRule::PrimeIdealHom(p) => format!(
                "h_{{{}}}",
                p.iter().map(|v| self.source.format_value(v)).collect::<Vec<_>>().join(",")
            ),
            HomRule::Custom(name, _) => name.clone(),
            rule => format!("{rule:?}"),
        }
    }

    pub fn apply(&self, v: &Value) -> Result<Value> {
        self.source.check(v)?;
        let out = match (&self.rule, v) {
            (HomRule::Identity, _) => v.clone(),
            (HomRule::FiniteMap(images), _) => {
                let carrier = self
                    .source
                    .carrier()
                    .ok_or_else(|| Error::invalid("finite map on an infinite source"))?;
                let i = carrier.iter().position(|c| c == v).expect("checked membership");
                images
                    .get(i)
                    .cloned()
                    .ok_or_else(|| Error::invalid("finite map shorter than the carrier"))?
            }
            (HomRule::TruncateToNatTrunc(k), Value::Nat(n)) => Value::Elem(truncate(n, *k)),
            (HomRule::TruncateToNatTrunc(k), Value::NatInf(n)) => Value::Elem(match n {
                Ext::Fin(n) => truncate(n, *k),
                Ext::Inf => *k,
            }),
            (HomRule::IdcHom(s), _) => Value::Bool(self.source.add(v, s)? == *v),
            (HomRule::PrimeIdealHom(p), _) => Value::Bool(!p.contains(v)),
            (HomRule::Kronecker { c, e }, Value::Poly(p)) => Value::Nat(kronecker_eval(p, *c, *e)?),
            (HomRule::TropicalScale(f), Value::Rat(r)) => Value::Rat(match r {
                Ext::Fin(r) => Ext::Fin(r * f),
                Ext::Inf => Ext::Inf,
            }),
            (HomRule::Project(q), Value::Poly(p)) => Value::Poly(project(p, *q)?),
            (HomRule::Custom(_, f), _) => f(v)?,
            (rule, _) => {
                return Err(Error::invalid(format!("rule {rule:?} does not apply to {}", self.source)))
            }
        };
        self.target.check(&out)?;
        Ok(out)
    }

    /// Checks that the rule is type-correct for its source and target.
    pub fn check_types(&self) -> Result<()> {
        let ok = match &self.rule {
            HomRule::Identity => self.source == self.target,
            HomRule::FiniteMap(_) => self.source.is_finite(),
            HomRule::TruncateToNatTrunc(k) => {
                matches!(self.source, Semiring::Nat | Semiring::NatInf) && self.target == Semiring::NatTrunc(*k)
            }
            HomRule::IdcHom(_) | HomRule::PrimeIdealHom(_) => self.target == Semiring::Boolean,
            HomRule::Kronecker { .. } => {
                matches!(self.source, Semiring::Poly(Quotient::NX, _)) && self.target == Semiring::Nat
            }
            HomRule::TropicalScale(f) => {
                self.source == Semiring::Tropical && self.target == Semiring::Tropical && f.is_positive()
            }
            HomRule::Project(q) => match (&self.source, &self.target) {
                (Semiring::Poly(q1, v1), Semiring::Poly(q2, v2)) => q2 == q && v1 == v2 && q1.reaches(*q),
                _ => false,
            },
            HomRule::Custom(..) => true,
        };
        if ok {
            Ok(())
        } else {
            Err(Error::invalid(format!("ill-typed homomorphism {:?}: {} -> {}", self.rule, self.source, self.target)))
        }
    }
}

fn truncate(n: &BigUint, k: u32) -> u32 {
    if *n >= BigUint::from(k) {
        k
    } else {
        u32::try_from(n).expect("below k")
    }
}

/// The first failed homomorphism law.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum HomViolation {
    Zero { image: String },
    One { image: String },
    Add { s: String, t: String },
    Mul { s: String, t: String },
    Apply { value: String, error: String },
    IllTyped(String),
}

impl fmt::Display for HomViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            HomViolation::Zero { image } => write!(f, "h(0) = {image}"),
            HomViolation::One { image } => write!(f, "h(1) = {image}"),
            HomViolation::Add { s, t } => write!(f, "h({s} + {t}) != h({s}) + h({t})"),
            HomViolation::Mul { s, t } => write!(f, "h({s} * {t}) != h({s}) * h({t})"),
            HomViolation::Apply { value, error } => write!(f, "h({value}) failed: {error}"),
            HomViolation::IllTyped(msg) => f.write_str(msg),
        }
    }
}

/// Checks `h(0)=0`, `h(1)=1` and additivity/multiplicativity: exhaustively on
/// finite sources, otherwise on [`HOM_SAMPLES`] pairs drawn with [`HOM_SEED`].
pub fn verify_hom(h: &SemiringHom) -> Result<(), HomViolation> {
    h.check_types().map_err(|e| HomViolation::IllTyped(e.to_string()))?;
    let (src, tgt) = (&h.source, &h.target);
    let show = |v: &Value| src.format_value(v);
    let apply = |v: &Value| {
        h.apply(v).map_err(|e| HomViolation::Apply { value: show(v), error: e.to_string() })
    };
    let zero = apply(&src.zero())?;
    if zero != tgt.zero() {
        return Err(HomViolation::Zero { image: tgt.format_value(&zero) });
    }
    let one = apply(&src.one())?;
    if one != tgt.one() {
        return Err(HomViolation::One { image: tgt.format_value(&one) });
    }
    let pairs: Vec<(Value, Value)> = match src.carrier() {
        Some(c) => c.iter().flat_map(|s| c.iter().map(move |t| (s.clone(), t.clone()))).collect(),
        None => {
            let mut rng = ChaCha8Rng::seed_from_u64(HOM_SEED);
            (0..HOM_SAMPLES).map(|_| (src.sample(&mut rng), src.sample(&mut rng))).collect()
        }
    };
    let fail = |e: Error| HomViolation::Apply { value: "pair".into(), error: e.to_string() };
    for (s, t) in &pairs {
        let (hs, ht) = (apply(s)?, apply(t)?);
        let sum = apply(&src.add(s, t).map_err(fail)?)?;
        if sum != tgt.add(&hs, &ht).map_err(fail)? {
            return Err(HomViolation::Add { s: show(s), t: show(t) });
        }
        let prod = apply(&src.mul(s, t).map_err(fail)?)?;
        if prod != tgt.mul(&hs, &ht).map_err(fail)? {
            return Err(HomViolation::Mul { s: show(s), t: show(t) });
        }
    }
    Ok(())
}
