//! Characteristic formulas: the counting schedule over the natural numbers
//! and the one-sided formulas for Boolean and lattice interpretations.
//!
//! Literals are enumerated in a fixed order: relations in vocabulary order,
//! positive before negated, argument tuples lexicographic in `x1, x2, ...`.

mod exponent;

use num_bigint::BigUint;
use num_traits::{Pow, ToPrimitive};

use crate::error::{Error, Result};
use crate::homsets::{idc_elements, PrimeIdeal};
use crate::interp::{tuples, Interpretation, Vocabulary};
use crate::logic::{pool_var, Formula, Junction, Var};
use crate::semiring::{Semiring, Value};

pub use exponent::{
    nat_exponent, nat_exponent_certified, pair_exponent, power_sum_collision, ExponentBudget, ExponentCertificate,
};

/// Bounds and exponents of the counting characteristic formulas.
///
/// `e[i]` (for `i < m`) makes power sums of fewer than `max(c2, 4)` values
/// below `d[i]` injective; `outer` is the exponent of the top level, chosen
/// so that `2·u^outer + v^outer` determines `u < c2` and `v < d[m]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NatSchedule {
    pub c1: u64,
    pub c2: u64,
    pub k: u64,
    pub e: Vec<u64>,
    pub d: Vec<BigUint>,
    pub outer: Option<u64>,
}

impl NatSchedule {
    pub fn levels(&self) -> usize {
        self.e.len()
    }

    pub fn l(&self) -> u64 {
        self.c2.max(4)
    }
}

/// `|Lit_n(τ)|`: two literals per relation and argument tuple over `n` variables.
pub fn literal_count(vocab: &Vocabulary, n: usize) -> u64 {
    (0..vocab.len()).map(|r| 2 * (n as u64).pow(vocab.arity(r) as u32)).sum()
}

/// Builds `d_0 = c1^(k+1)`, `d_(i+1) = c2·d_i^(e_i)` with the exponents up
/// to level `m`.
pub fn nat_schedule(c1: u64, c2: u64, k: u64, m: usize, budget: ExponentBudget) -> Result<NatSchedule> {
    if c1 < 1 || c2 < 1 {
        return Err(Error::invalid("schedule bounds must be positive"));
    }
    let l = c2.max(4);
    let k32 = u32::try_from(k + 1).map_err(|_| Error::invalid("too many literals"))?;
    let mut d = vec![BigUint::from(c1).pow(k32)];
    let mut e = Vec::new();
    for i in 0..m {
        let di = exponent::small(&d[i])
            .ok_or_else(|| Error::Budget(format!("level {i}: bound d_{i} is too large to enumerate")))?;
        let ei = nat_exponent(l, di, budget).map_err(|err| match err {
            Error::Budget(msg) => Error::Budget(format!("level {i}: {msg}")),
            other => other,
        })?;
        let next = BigUint::from(c2) * d[i].clone().pow(ei as u32);
        e.push(ei);
        d.push(next);
    }
    let outer = if m == 0 { None } else { Some(pair_exponent(c2, &d[m], budget.max_e)?) };
    Ok(NatSchedule { c1, c2, k, e, d, outer })
}

/// The literals over `vars` in the fixed enumeration order.
pub fn literals(vocab: &Vocabulary, vars: &[Var]) -> Vec<(usize, bool, Vec<usize>)> {
    let mut out = Vec::new();
    for rel in 0..vocab.len() {
        for t in tuples(vars.len(), vocab.arity(rel)) {
            out.push((rel, true, t.clone()));
            out.push((rel, false, t));
        }
    }
    out
}

fn literal_formula(vocab: &Vocabulary, vars: &[Var], rel: usize, positive: bool, t: &[usize]) -> Formula {
    let args: Vec<Var> = t.iter().map(|&i| vars[i].clone()).collect();
    Formula::literal(vocab.name(rel), positive, &args)
}

fn vars(n: usize) -> Vec<Var> {
    (0..n).map(pool_var).collect()
}

/// `ϑ^0` over `vars`: literal `i` (1-based) repeated `c1^(i-1)` times.
fn theta0(s: &NatSchedule, vocab: &Vocabulary, vs: &[Var]) -> Result<Formula> {
    let mut children = Vec::new();
    let mut count: u64 = 1;
    for (i, (rel, pos, t)) in literals(vocab, vs).into_iter().enumerate() {
        if i > 0 {
            count = count
                .checked_mul(s.c1)
                .ok_or_else(|| Error::Resource("repetition count overflows".into()))?;
        }
        children.push(Formula::repeat(Junction::Or, count, literal_formula(vocab, vs, rel, pos, &t)));
    }
    Ok(Formula::or(children))
}

/// `ϑ^j` with `p` free variables.
fn theta(s: &NatSchedule, vocab: &Vocabulary, p: usize, j: usize) -> Result<Formula> {
    let vs = vars(p);
    if j == 0 {
        return theta0(s, vocab, &vs);
    }
    let x = pool_var(p);
    let mut conj: Vec<Formula> = vs.iter().map(|xi| Formula::Neq(x.clone(), xi.clone())).collect();
    conj.push(theta(s, vocab, p + 1, j - 1)?);
    let body = Formula::repeat(Junction::And, s.e[j - 1], Formula::and(conj));
    Ok(Formula::exists(x, body))
}

/// The auxiliary formula `ϑ^m(x1..xn)`.
pub fn nat_theta(s: &NatSchedule, vocab: &Vocabulary, n: usize, m: usize) -> Result<Formula> {
    check_schedule(s, vocab, n, m)?;
    theta(s, vocab, n, m)
}

fn check_schedule(s: &NatSchedule, vocab: &Vocabulary, n: usize, m: usize) -> Result<()> {
    if s.levels() < m {
        return Err(Error::invalid(format!("schedule covers {} levels, {m} needed", s.levels())));
    }
    let need = literal_count(vocab, n + m);
    if s.k < need {
        return Err(Error::invalid(format!("schedule assumes {} literals but {need} occur", s.k)));
    }
    Ok(())
}

/// The counting characteristic formula `χ^m(x1..xn)`.
///
/// For `m > 0` it is `ε^e ∨ ε^e ∨ (ϑ^m)^e` with `ε = ∃x (x = x)` and
/// `e = outer`: the powers apply to each disjunct, so equal values force
/// equal universe sizes and equal `ϑ^m` values.
pub fn nat_chi(s: &NatSchedule, vocab: &Vocabulary, n: usize, m: usize) -> Result<Formula> {
    check_schedule(s, vocab, n, m)?;
    let th = theta(s, vocab, n, m)?;
    if m == 0 {
        return Ok(th);
    }
    if s.levels() != m {
        return Err(Error::invalid("the outer exponent belongs to the schedule's top level"));
    }
    let e = s.outer.ok_or_else(|| Error::invalid("schedule lacks the outer exponent"))?;
    let x = pool_var(n);
    let size = Formula::exists(x.clone(), Formula::Eq(x.clone(), x));
    let pw = |f: Formula| Formula::repeat(Junction::And, e, f);
    Ok(Formula::Or(vec![pw(size.clone()), pw(size), pw(th)]))
}

/// Value bound `c1` (strictly above every literal value) of a natural-number interpretation.
pub fn nat_value_bound(pi: &Interpretation) -> Result<u64> {
    let mut max = 0u64;
    for (_, _, _, v) in pi.literals() {
        match v {
            Value::Nat(n) => {
                let n = n.to_u64().ok_or_else(|| Error::Resource("literal value too large".into()))?;
                max = max.max(n);
            }
            _ => return Err(Error::invalid("expected natural-number values")),
        }
    }
    Ok(max + 1)
}

/// The one-sided formula `χ^m` built from the literals whose values pass `include`.
pub fn one_sided_chi(pi: &Interpretation, a: &[usize], m: usize, include: &dyn Fn(&Value) -> Result<bool>) -> Result<Formula> {
    let n = a.len();
    if m == 0 {
        let vs = vars(n);
        let mut conj = Vec::new();
        for i in 0..n {
            for j in i..n {
                let (x, y) = (vs[i].clone(), vs[j].clone());
                conj.push(if a[i] == a[j] { Formula::Eq(x, y) } else { Formula::Neq(x, y) });
            }
        }
        for (rel, pos, t) in literals(pi.vocab(), &vs) {
            let tuple: Vec<usize> = t.iter().map(|&i| a[i]).collect();
            if include(pi.lit(rel, pos, &tuple))? {
                conj.push(literal_formula(pi.vocab(), &vs, rel, pos, &t));
            }
        }
        return Ok(Formula::and(conj));
    }
    let x = pool_var(n);
    let mut subs = Vec::with_capacity(pi.size());
    let mut ext = a.to_vec();
    for e in 0..pi.size() {
        ext.push(e);
        subs.push(one_sided_chi(pi, &ext, m - 1, include)?);
        ext.pop();
    }
    let mut conj: Vec<Formula> = subs.iter().map(|f| Formula::exists(x.clone(), f.clone())).collect();
    conj.push(Formula::forall(x, Formula::or(subs)));
    Ok(Formula::and(conj))
}

/// `χ^m` of a Boolean interpretation; literals of value 0 are omitted.
pub fn boolean_one_sided_chi(pi: &Interpretation, a: &[usize], m: usize) -> Result<Formula> {
    if *pi.semiring() != Semiring::Boolean {
        return Err(Error::invalid("one-sided characteristic formulas need a Boolean interpretation"));
    }
    one_sided_chi(pi, a, m, &|v| Ok(*v == Value::Bool(true)))
}

/// `χ^{m,s}`: literals with `π(L(ā)) + s = π(L(ā))`.
pub fn lattice_chi_s(pi: &Interpretation, a: &[usize], m: usize, s: &Value) -> Result<Formula> {
    let sr = pi.semiring();
    if !idc_elements(sr)?.contains(s) {
        return Err(Error::invalid(format!("{} is not +-indecomposable", sr.format_value(s))));
    }
    one_sided_chi(pi, a, m, &|v| Ok(sr.add(v, s)? == *v))
}

/// `χ^{m,P}`: literals with `π(L(ā)) ∉ P`.
pub fn lattice_chi_p(pi: &Interpretation, a: &[usize], m: usize, p: &PrimeIdeal) -> Result<Formula> {
    let sr = pi.semiring();
    crate::homsets::make_h_p(sr, p)?;
    one_sided_chi(pi, a, m, &|v| Ok(!p.contains(v)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::logic::{evaluate_at, print_formula, quantifier_rank};

    #[test]
    fn schedule_bounds() {
        let s = nat_schedule(2, 3, 2, 1, ExponentBudget::default()).unwrap();
        assert_eq!(s.d[0], BigUint::from(8u32));
        assert_eq!(s.d[1], BigUint::from(3u32) * BigUint::from(8u32).pow(s.e[0] as u32));
        let s0 = nat_schedule(2, 3, 2, 0, ExponentBudget::default()).unwrap();
        assert!(s0.e.is_empty() && s0.outer.is_none());
    }

    #[test]
    fn theta_zero_shape() {
        let vocab = Vocabulary::unary(&["R"]);
        let s = nat_schedule(2, 3, 2, 0, ExponentBudget::default()).unwrap();
        let f = nat_chi(&s, &vocab, 1, 0).unwrap();
        assert_eq!(print_formula(&f), "R(x1) | (!R(x1) | !R(x1))");
    }

    #[test]
    fn chi_rank_and_separation() {
        let vocab = Vocabulary::unary(&["R"]);
        let k = literal_count(&vocab, 1);
        let s = nat_schedule(3, 3, k, 1, ExponentBudget::default()).unwrap();
        let f = nat_chi(&s, &vocab, 0, 1).unwrap();
        assert_eq!(quantifier_rank(&f), 1);
        let row = |p: u64, q: u64| vec![Value::nat(p), Value::nat(q)];
        let a = Interpretation::monadic(Semiring::Nat, &["R"], vec![("a", row(2, 0))]).unwrap();
        let b = Interpretation::monadic(Semiring::Nat, &["R"], vec![("b1", row(1, 0)), ("b2", row(1, 0))]).unwrap();
        assert_ne!(evaluate_at(&a, &f, &[], &[]).unwrap(), evaluate_at(&b, &f, &[], &[]).unwrap());
    }

    #[test]
    fn one_sided_base_case() {
        let b = |x: bool| Value::Bool(x);
        let pi = Interpretation::monadic(Semiring::Boolean, &["R"], vec![("a", vec![b(true), b(false)])]).unwrap();
        assert_eq!(print_formula(&boolean_one_sided_chi(&pi, &[0], 0).unwrap()), "x1 = x1 & R(x1)");
        let both = Interpretation::monadic(Semiring::Boolean, &["R"], vec![("a", vec![b(true), b(true)])]).unwrap();
        assert_eq!(print_formula(&boolean_one_sided_chi(&both, &[0], 0).unwrap()), "x1 = x1 & R(x1) & !R(x1)");
        assert_eq!(quantifier_rank(&boolean_one_sided_chi(&both, &[], 2).unwrap()), 2);
    }
}
