//! Deciding and refuting m-equivalence. Exact procedures exist for Boolean,
//! finite lattice, natural-number and bounded polynomial interpretations;
//! everything else relies on the bounded separator search.

use std::fmt;
use std::time::{Duration, Instant};

use crate::charform::{
    boolean_one_sided_chi, lattice_chi_p, literal_count, nat_chi, nat_schedule, nat_value_bound, ExponentBudget,
};
use crate::error::{Error, Result};
use crate::games::{solve_bijection, solve_one_sided};
use crate::homsets::{make_h_p, prime_ideals};
use crate::interp::{compose_hom_interp, same_signature, Interpretation};
use crate::logic::{evaluate_at, pool_var, print_formula, Enumerator, Formula, Signature, Var};
use crate::provenance::{kronecker_hom, within_bounds, Quotient};
use crate::semiring::{Semiring, Value};

/// How an `Equivalent` verdict was obtained.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Method {
    LatticeHom,
    NatBijection,
    NatpolyKronecker,
    BooleanOneSided,
    /// The rank-1 criterion for single unary relations over tropical or
    /// Viterbi values.
    PairCriterion,
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Method::LatticeHom => "lattice-hom",
            Method::NatBijection => "nat-bijection",
            Method::NatpolyKronecker => "natpoly-kronecker",
            Method::BooleanOneSided => "boolean-one-sided",
            Method::PairCriterion => "pair-criterion",
        })
    }
}

/// A formula together with its two differing values. Only constructible
/// through [`Separation::new`], which evaluates both sides.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Separation {
    formula: Formula,
    left: Value,
    right: Value,
}

impl Separation {
    pub fn new(pa: &Interpretation, a: &[usize], pb: &Interpretation, b: &[usize], formula: Formula) -> Result<Self> {
        let vars = free_vars(a.len());
        let left = evaluate_at(pa, &formula, &vars, a)?;
        let right = evaluate_at(pb, &formula, &vars, b)?;
        if left == right {
            return Err(Error::invalid(format!(
                "`{}` does not separate the interpretations",
                formula.compact()
            )));
        }
        Ok(Separation { formula, left, right })
    }

    pub fn formula(&self) -> &Formula {
        &self.formula
    }

    pub fn left(&self) -> &Value {
        &self.left
    }

    pub fn right(&self) -> &Value {
        &self.right
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum EquivVerdict {
    Equivalent { m: usize, method: Method },
    Separated(Separation),
    Unknown { reason: String },
}

impl EquivVerdict {
    pub fn is_equivalent(&self) -> bool {
        matches!(self, EquivVerdict::Equivalent { .. })
    }

    pub fn is_separated(&self) -> bool {
        matches!(self, EquivVerdict::Separated(_))
    }

    pub fn separation(&self) -> Option<&Separation> {
        match self {
            EquivVerdict::Separated(s) => Some(s),
            _ => None,
        }
    }

    /// A short report; formulas use the compact repetition syntax.
    pub fn describe(&self, pa: &Interpretation, pb: &Interpretation) -> String {
        match self {
            EquivVerdict::Equivalent { m, method } => format!("equivalent up to rank {m} ({method})"),
            EquivVerdict::Separated(s) => format!(
                "separated by {}\n  left:  {}\n  right: {}",
                s.formula.compact(),
                pa.semiring().format_value(&s.left),
                pb.semiring().format_value(&s.right)
            ),
            EquivVerdict::Unknown { reason } => format!("unknown: {reason}"),
        }
    }
}

/// The one-sided verdict of `⪯_m`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum LeqVerdict {
    Leq { m: usize },
    /// A formula true on the left and false on the right.
    NotLeq(Separation),
}

/// Names of the free variables bound to `ā` and `b̄`.
pub fn free_vars(n: usize) -> Vec<Var> {
    (0..n).map(pool_var).collect()
}

fn check_pair(pa: &Interpretation, a: &[usize], pb: &Interpretation, b: &[usize]) -> Result<()> {
    same_signature(pa, pb)?;
    if a.len() != b.len() {
        return Err(Error::invalid("tuples of different length"));
    }
    if a.iter().any(|&x| x >= pa.size()) || b.iter().any(|&y| y >= pb.size()) {
        return Err(Error::invalid("tuple element outside the universe"));
    }
    Ok(())
}

/// Limits of the separator search.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SearchBudget {
    pub max_qr: usize,
    pub max_nodes: usize,
    pub time: Duration,
}

impl Default for SearchBudget {
    fn default() -> Self {
        SearchBudget { max_qr: 2, max_nodes: 9, time: Duration::from_secs(10) }
    }
}

impl SearchBudget {
    pub fn new(max_qr: usize, max_nodes: usize) -> Self {
        SearchBudget { max_qr, max_nodes, ..SearchBudget::default() }
    }
}

/// Values of a formula on both sides, for every assignment of the bound
/// variables in scope (the last variable varies fastest).
pub type ValueTable = (Vec<Value>, Vec<Value>);

struct Semantic<'a> {
    sides: [(&'a Interpretation, &'a [usize]); 2],
    scope: Vec<Var>,
    nfree: usize,
    deadline: Instant,
}

impl Semantic<'_> {
    fn tick(&self) -> Result<()> {
        if Instant::now() > self.deadline {
            return Err(Error::Budget("separator search ran out of time".into()));
        }
        Ok(())
    }

    fn side_atom(&self, side: usize, depth: usize, phi: &Formula) -> Result<Vec<Value>> {
        let (pi, fixed) = self.sides[side];
        let n = pi.size();
        let count = n.pow(depth as u32);
        let vars = &self.scope[..self.nfree + depth];
        let mut elems: Vec<usize> = fixed.to_vec();
        elems.resize(self.nfree + depth, 0);
        let mut out = Vec::with_capacity(count);
        for idx in 0..count {
            let mut rest = idx;
            for k in (0..depth).rev() {
                elems[self.nfree + k] = rest % n;
                rest /= n;
            }
            out.push(evaluate_at(pi, phi, vars, &elems)?);
        }
        Ok(out)
    }
}

impl Signature for Semantic<'_> {
    type Sig = ValueTable;

    fn atom(&mut self, depth: usize, phi: &Formula) -> Result<ValueTable> {
        Ok((self.side_atom(0, depth, phi)?, self.side_atom(1, depth, phi)?))
    }

    fn junction(&mut self, _: usize, and: bool, children: &[&ValueTable]) -> Result<ValueTable> {
        self.tick()?;
        let combine = |sr: &Semiring, pick: &dyn Fn(&ValueTable) -> &Vec<Value>| -> Result<Vec<Value>> {
            let len = pick(children[0]).len();
            (0..len)
                .map(|i| {
                    let vals = children.iter().map(|c| &pick(c)[i]);
                    if and {
                        sr.product(vals)
                    } else {
                        sr.sum(vals)
                    }
                })
                .collect()
        };
        Ok((
            combine(self.sides[0].0.semiring(), &|c| &c.0)?,
            combine(self.sides[1].0.semiring(), &|c| &c.1)?,
        ))
    }

    fn quantifier(&mut self, depth: usize, exists: bool, body: &ValueTable) -> Result<ValueTable> {
        self.tick()?;
        let fold = |pi: &Interpretation, vals: &[Value]| -> Result<Vec<Value>> {
            let n = pi.size();
            let sr = pi.semiring();
            (0..n.pow(depth as u32))
                .map(|i| {
                    let chunk = &vals[i * n..(i + 1) * n];
                    if exists {
                        sr.sum(chunk)
                    } else {
                        sr.product(chunk)
                    }
                })
                .collect()
        };
        Ok((fold(self.sides[0].0, &body.0)?, fold(self.sides[1].0, &body.1)?))
    }

    fn dedup(&self) -> bool {
        true
    }
}

/// Bounded search for a formula of quantifier rank at most `max_qr` whose
/// values on `(π_A, ā)` and `(π_B, b̄)` differ. Formulas are generated by
/// size; subformulas with the same value table as an earlier one are
/// skipped, so the first separator found is also a smallest one.
/// Never concludes equivalence.
pub fn find_separator(
    pa: &Interpretation,
    a: &[usize],
    pb: &Interpretation,
    b: &[usize],
    budget: SearchBudget,
) -> Result<EquivVerdict> {
    check_pair(pa, a, pb, b)?;
    let free = free_vars(a.len());
    let mut e = Enumerator::new(pa.vocab(), &free, budget.max_qr, budget.max_nodes, Semantic {
        sides: [(pa, a), (pb, b)],
        scope: Vec::new(),
        nfree: a.len(),
        deadline: Instant::now() + budget.time,
    });
    e.ops_mut().scope = e.scope(budget.max_qr).to_vec();
    loop {
        let items = match e.next_size() {
            Ok(Some(items)) => items,
            Ok(None) => break,
            Err(err) if err.is_budget() => return Ok(EquivVerdict::Unknown { reason: err.to_string() }),
            Err(err) => return Err(err),
        };
        if let Some(it) = items.iter().find(|it| it.sig.0 != it.sig.1) {
            return Ok(EquivVerdict::Separated(Separation::new(pa, a, pb, b, it.formula.clone())?));
        }
    }
    Ok(EquivVerdict::Unknown {
        reason: format!("no separator with rank <= {} and <= {} nodes", budget.max_qr, budget.max_nodes),
    })
}

/// Exact `≡_m` on a finite lattice semiring: equivalence holds iff Duplicator
/// wins both one-sided games on the image under every prime-ideal
/// homomorphism. A failing ideal yields the separating formula `χ^{m,P}`.
pub fn decide_equiv_lattice(
    pa: &Interpretation,
    a: &[usize],
    pb: &Interpretation,
    b: &[usize],
    m: usize,
) -> Result<EquivVerdict> {
    check_pair(pa, a, pb, b)?;
    for p in prime_ideals(pa.semiring())? {
        let h = make_h_p(pa.semiring(), &p)?;
        let (ia, ib) = (compose_hom_interp(&h, pa)?, compose_hom_interp(&h, pb)?);
        if !solve_one_sided(&ia, a, &ib, b, m)?.duplicator_wins() {
            let phi = lattice_chi_p(pa, a, m, &p)?;
            return Ok(EquivVerdict::Separated(Separation::new(pa, a, pb, b, phi)?));
        }
        if !solve_one_sided(&ib, b, &ia, a, m)?.duplicator_wins() {
            let phi = lattice_chi_p(pb, b, m, &p)?;
            return Ok(EquivVerdict::Separated(Separation::new(pa, a, pb, b, phi)?));
        }
    }
    Ok(EquivVerdict::Equivalent { m, method: Method::LatticeHom })
}

/// The smallest `j <= m` at which Spoiler wins the bijection game, if any.
fn bijection_rank(pa: &Interpretation, a: &[usize], pb: &Interpretation, b: &[usize], m: usize) -> Result<Option<usize>> {
    for j in 0..=m {
        if !solve_bijection(pa, a, pb, b, j)?.duplicator_wins() {
            return Ok(Some(j));
        }
    }
    Ok(None)
}

/// A separator for a pair whose natural-number images `(na, nb)` differ at
/// bijection rank `j`: the counting characteristic formula if its exponent
/// schedule is within budget, otherwise the bounded search.
fn nat_separation(
    (pa, pb): (&Interpretation, &Interpretation),
    (na, nb): (&Interpretation, &Interpretation),
    a: &[usize],
    b: &[usize],
    c1: u64,
    j: usize,
) -> Result<EquivVerdict> {
    let c2 = na.size().max(nb.size()) as u64 + 1;
    let k = literal_count(na.vocab(), a.len() + j);
    let chi = nat_schedule(c1, c2, k, j, ExponentBudget::default())
        .and_then(|s| nat_chi(&s, na.vocab(), a.len(), j));
    match chi {
        Ok(phi) => Ok(EquivVerdict::Separated(Separation::new(pa, a, pb, b, phi)?)),
        Err(err) if err.is_budget() => {
            let found = find_separator(pa, a, pb, b, SearchBudget { max_qr: j, ..SearchBudget::default() })?;
            Ok(match found {
                EquivVerdict::Unknown { reason } => EquivVerdict::Unknown {
                    reason: format!("Spoiler wins the bijection game at rank {j}, but {err}; search: {reason}"),
                },
                v => v,
            })
        }
        Err(err) => Err(err),
    }
}

/// Exact `≡_m` on natural-number interpretations via the bijection game.
pub fn decide_equiv_nat(pa: &Interpretation, a: &[usize], pb: &Interpretation, b: &[usize], m: usize) -> Result<EquivVerdict> {
    check_pair(pa, a, pb, b)?;
    if *pa.semiring() != Semiring::Nat {
        return Err(Error::invalid("expected natural-number interpretations"));
    }
    match bijection_rank(pa, a, pb, b, m)? {
        None => Ok(EquivVerdict::Equivalent { m, method: Method::NatBijection }),
        Some(j) => {
            let c1 = nat_value_bound(pa)?.max(nat_value_bound(pb)?);
            nat_separation((pa, pb), (pa, pb), a, b, c1, j)
        }
    }
}

/// Smallest `(c, e)` such that every value lies in `N[X](c, e)`.
pub fn natpoly_bounds(pa: &Interpretation, pb: &Interpretation) -> Result<(u64, u64)> {
    let (mut c, mut e) = (2u64, 1u64);
    for pi in [pa, pb] {
        for (_, _, _, v) in pi.literals() {
            let Value::Poly(p) = v else { return Err(Error::invalid("expected polynomial values")) };
            for (mono, coeff) in p.terms() {
                let coeff = u64::try_from(coeff).map_err(|_| Error::Resource("coefficient too large".into()))?;
                c = c.max(coeff + 1);
                for &(_, x) in mono.pairs() {
                    let x = x.finite().ok_or_else(|| Error::invalid("infinite exponent in N[X]"))?;
                    e = e.max(u64::from(x) + 1);
                }
            }
        }
    }
    Ok((c, e))
}

/// Exact `≡_m` on `N[X]` interpretations with values in `N[X](c, e)`: the
/// Kronecker embedding maps them injectively into the naturals, where the
/// bijection game decides.
pub fn decide_equiv_natpoly(
    pa: &Interpretation,
    a: &[usize],
    pb: &Interpretation,
    b: &[usize],
    m: usize,
    c: u64,
    e: u64,
) -> Result<EquivVerdict> {
    check_pair(pa, a, pb, b)?;
    let Semiring::Poly(Quotient::NX, vars) = pa.semiring() else {
        return Err(Error::invalid("expected N[X] interpretations"));
    };
    for pi in [pa, pb] {
        for (_, _, _, v) in pi.literals() {
            match v {
                Value::Poly(p) if within_bounds(p, c, e) => {}
                _ => {
                    return Err(Error::invalid(format!(
                        "value {} lies outside N[X]({c}, {e})",
                        pi.semiring().format_value(v)
                    )))
                }
            }
        }
    }
    let h = kronecker_hom(c, e, vars)?;
    let (na, nb) = (compose_hom_interp(&h, pa)?, compose_hom_interp(&h, pb)?);
    match bijection_rank(&na, a, &nb, b, m)? {
        None => Ok(EquivVerdict::Equivalent { m, method: Method::NatpolyKronecker }),
        Some(j) => {
            let exp = u32::try_from(e.checked_pow(vars.len() as u32).ok_or_else(|| Error::Resource("c1 overflows".into()))?)
                .map_err(|_| Error::Resource("c1 overflows".into()))?;
            let c1 = c.checked_pow(exp).ok_or_else(|| Error::Resource("c1 overflows".into()))?;
            nat_separation((pa, pb), (&na, &nb), a, b, c1, j)
        }
    }
}

fn require_boolean(pa: &Interpretation, pb: &Interpretation) -> Result<()> {
    if *pa.semiring() != Semiring::Boolean || *pb.semiring() != Semiring::Boolean {
        return Err(Error::invalid("expected Boolean interpretations"));
    }
    Ok(())
}

/// `⪯_m` on Boolean interpretations by the one-sided game.
pub fn decide_leq_boolean(pa: &Interpretation, a: &[usize], pb: &Interpretation, b: &[usize], m: usize) -> Result<LeqVerdict> {
    check_pair(pa, a, pb, b)?;
    require_boolean(pa, pb)?;
    if solve_one_sided(pa, a, pb, b, m)?.duplicator_wins() {
        return Ok(LeqVerdict::Leq { m });
    }
    let phi = boolean_one_sided_chi(pa, a, m)?;
    Ok(LeqVerdict::NotLeq(Separation::new(pa, a, pb, b, phi)?))
}

/// `≡_m` on Boolean interpretations as `⪯_m` in both directions.
pub fn decide_equiv_boolean(pa: &Interpretation, a: &[usize], pb: &Interpretation, b: &[usize], m: usize) -> Result<EquivVerdict> {
    if let LeqVerdict::NotLeq(s) = decide_leq_boolean(pa, a, pb, b, m)? {
        return Ok(EquivVerdict::Separated(s));
    }
    if let LeqVerdict::NotLeq(s) = decide_leq_boolean(pb, b, pa, a, m)? {
        return Ok(EquivVerdict::Separated(Separation::new(pa, a, pb, b, s.formula)?));
    }
    Ok(EquivVerdict::Equivalent { m, method: Method::BooleanOneSided })
}

/// The three conditions of the rank-1 criterion for a single unary relation
/// over tropical or Viterbi values: every negated literal is zero, and the
/// sums and products of the positive literals agree.
pub fn pair_criterion(pa: &Interpretation, pb: &Interpretation) -> Result<[bool; 3]> {
    same_signature(pa, pb)?;
    let sr = pa.semiring();
    if !matches!(sr, Semiring::Tropical | Semiring::Viterbi) {
        return Err(Error::Unsupported(format!("the pair criterion is not implemented for {sr}")));
    }
    let vocab = pa.vocab();
    if vocab.len() != 1 || vocab.arity(0) != 1 {
        return Err(Error::Unsupported("the pair criterion needs a single unary relation".into()));
    }
    let pos = |pi: &Interpretation| -> Vec<Value> { (0..pi.size()).map(|e| pi.lit(0, true, &[e]).clone()).collect() };
    let neg_zero = |pi: &Interpretation| (0..pi.size()).all(|e| *pi.lit(0, false, &[e]) == sr.zero());
    let (ra, rb) = (pos(pa), pos(pb));
    Ok([
        neg_zero(pa) && neg_zero(pb),
        sr.sum(&ra)? == sr.sum(&rb)?,
        sr.product(&ra)? == sr.product(&rb)?,
    ])
}

/// Which procedure [`decide_equiv`] should use.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum EquivMethod {
    Auto,
    Lattice,
    Nat,
    Natpoly,
    Boolean,
    Search,
}

impl std::str::FromStr for EquivMethod {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Ok(match s {
            "auto" => EquivMethod::Auto,
            "lattice" => EquivMethod::Lattice,
            "nat" => EquivMethod::Nat,
            "natpoly" => EquivMethod::Natpoly,
            "boolean" => EquivMethod::Boolean,
            "search" => EquivMethod::Search,
            _ => return Err(Error::invalid(format!("unknown method `{s}`"))),
        })
    }
}

/// Dispatches to the exact procedure for the semiring when one exists and
/// to the separator search otherwise.
pub fn decide_equiv(
    pa: &Interpretation,
    a: &[usize],
    pb: &Interpretation,
    b: &[usize],
    m: usize,
    method: EquivMethod,
    search: SearchBudget,
) -> Result<EquivVerdict> {
    check_pair(pa, a, pb, b)?;
    let sr = pa.semiring();
    let method = match method {
        EquivMethod::Auto => match sr {
            Semiring::Boolean => EquivMethod::Boolean,
            Semiring::Nat => EquivMethod::Nat,
            Semiring::Poly(Quotient::NX, _) => EquivMethod::Natpoly,
            s if s.is_finite() && s.is_lattice()? => EquivMethod::Lattice,
            Semiring::Tropical | Semiring::Viterbi if m <= 1 && a.is_empty() => {
                let single = pa.vocab().len() == 1 && pa.vocab().arity(0) == 1;
                if single && pair_criterion(pa, pb)?.iter().all(|&c| c) {
                    return Ok(EquivVerdict::Equivalent { m, method: Method::PairCriterion });
                }
                EquivMethod::Search
            }
            _ => EquivMethod::Search,
        },
        other => other,
    };
    match method {
        EquivMethod::Lattice => decide_equiv_lattice(pa, a, pb, b, m),
        EquivMethod::Nat => decide_equiv_nat(pa, a, pb, b, m),
        EquivMethod::Natpoly => {
            let (c, e) = natpoly_bounds(pa, pb)?;
            decide_equiv_natpoly(pa, a, pb, b, m, c, e)
        }
        EquivMethod::Boolean => decide_equiv_boolean(pa, a, pb, b, m),
        _ => find_separator(pa, a, pb, b, SearchBudget { max_qr: m.min(search.max_qr), ..search }),
    }
}

/// Prints a separation with both values.
pub fn format_separation(s: &Separation, pa: &Interpretation, pb: &Interpretation) -> String {
    format!(
        "{} : {} vs {}",
        print_formula(s.formula()),
        pa.semiring().format_value(s.left()),
        pb.semiring().format_value(s.right())
    )
}
