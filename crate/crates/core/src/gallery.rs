//! Executable worked examples. Every entry rebuilds its interpretations
//! and re-derives each expected outcome through the public operations.

use std::fmt;

use crate::equiv::{
    decide_equiv, decide_equiv_boolean, decide_equiv_lattice, decide_equiv_nat, find_separator, pair_criterion,
    EquivMethod, EquivVerdict, Method, SearchBudget,
};
use crate::error::Result;
use crate::games::{solve_bijection, solve_counting, solve_ef, solve_hom_game, SpoilerTrace, Side, Witness};
use crate::homsets::{idc_elements, idc_homs, prime_homs, prime_ideals, verify_separating};
use crate::interp::{find_isomorphism, is_model_defining, Interpretation};
use crate::logic::{evaluate_at, parse_formula, print_formula, quantifier_rank};
use crate::provenance::Quotient;
use crate::semiring::{Semiring, Value};

/// Where an expectation comes from.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Origin {
    /// A value or verdict stated with the worked example.
    Example,
    /// Computed independently by another solver or by brute force.
    Oracle,
    /// Holds by construction.
    Sanity,
}

impl fmt::Display for Origin {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Origin::Example => "example",
            Origin::Oracle => "oracle",
            Origin::Sanity => "sanity",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Outcome {
    pub name: String,
    pub origin: Origin,
    pub passed: bool,
    pub detail: String,
}

#[derive(Default)]
struct Report(Vec<Outcome>);

impl Report {
    fn check(&mut self, origin: Origin, name: &str, passed: bool, detail: impl Into<String>) {
        self.0.push(Outcome { name: name.to_string(), origin, passed, detail: detail.into() });
    }

    fn value(&mut self, origin: Origin, name: &str, pi: &Interpretation, formula: &str, expected: &Value) -> Result<()> {
        let got = evaluate_at(pi, &parse_formula(formula)?, &[], &[])?;
        let sr = pi.semiring();
        let detail = format!("{formula} = {} (expected {})", sr.format_value(&got), sr.format_value(expected));
        self.check(origin, name, got == *expected, detail);
        Ok(())
    }

    fn winner(&mut self, origin: Origin, name: &str, duplicator_wins: bool, expect_duplicator: bool) {
        let w = |d: bool| if d { "Duplicator" } else { "Spoiler" };
        self.check(origin, name, duplicator_wins == expect_duplicator, format!("{} wins (expected {})", w(duplicator_wins), w(expect_duplicator)));
    }

    fn verdict(&mut self, origin: Origin, name: &str, v: &EquivVerdict, pa: &Interpretation, pb: &Interpretation, ok: bool) {
        self.check(origin, name, ok, v.describe(pa, pb).replace('\n', " "));
    }
}

/// A named worked example.
pub struct GalleryEntry {
    pub id: &'static str,
    pub summary: &'static str,
    build: fn() -> Result<Vec<(&'static str, Interpretation)>>,
    run: fn(&[Interpretation]) -> Result<Vec<Outcome>>,
}

impl GalleryEntry {
    /// The example's interpretations with their short names.
    pub fn interpretations(&self) -> Result<Vec<(&'static str, Interpretation)>> {
        (self.build)()
    }

    /// Runs every expectation.
    pub fn run(&self) -> Result<Vec<Outcome>> {
        let pis: Vec<Interpretation> = self.interpretations()?.into_iter().map(|(_, p)| p).collect();
        (self.run)(&pis)
    }
}

pub fn gallery() -> Vec<GalleryEntry> {
    vec![
        GalleryEntry { id: "nat-intro", summary: "natural numbers: G_1 is unsound, BG_1 separates", build: nat_intro, run: run_nat_intro },
        GalleryEntry { id: "minmax-intro", summary: "min-max {0..4}: G_1 is incomplete", build: minmax_intro, run: run_minmax_intro },
        GalleryEntry { id: "idem-witness", summary: "two s-rows against one on the naturals", build: idem_witness, run: run_idem_witness },
        GalleryEntry { id: "wxy-counting", summary: "W[x,y] with 1, 2 and 3 rows of x+y", build: wxy_counting, run: run_wxy_counting },
        GalleryEntry { id: "pi-st", summary: "non-isomorphic equivalent pair over min-max {0,1,2}, s=1, t=2", build: pi_st, run: run_pi_st },
        GalleryEntry { id: "tropical-pair", summary: "tropical pair (0,1,1) vs (0,2): 1-equivalent, Spoiler wins G_1", build: tropical_pair, run: run_tropical_pair },
        GalleryEntry { id: "sigma4-majority", summary: "majority is not expressible over min-max {0..3}", build: sigma4_majority, run: run_sigma4 },
        GalleryEntry { id: "appendix-m1", summary: "truncated Boolean pair, m = 1", build: || appendix(1), run: |p| run_appendix(p, 1) },
        GalleryEntry { id: "appendix-m2", summary: "truncated Boolean pair, m = 2", build: || appendix(2), run: |p| run_appendix(p, 2) },
    ]
}

pub fn entry(id: &str) -> Option<GalleryEntry> {
    gallery().into_iter().find(|e| e.id == id)
}

/// One interpretation of a gallery entry, by entry id and short name.
pub fn interpretation(id: &str, name: &str) -> Result<Option<Interpretation>> {
    let Some(e) = entry(id) else { return Ok(None) };
    Ok(e.interpretations()?.into_iter().find(|(n, _)| n.eq_ignore_ascii_case(name)).map(|(_, p)| p))
}

fn monadic(s: Semiring, rels: &[&str], rows: &[(&'static str, Vec<Value>)]) -> Result<Interpretation> {
    Interpretation::monadic(s, rels, rows.to_vec())
}

fn nat_rows(prefix: &str, r: &[u64]) -> Result<Interpretation> {
    let names: Vec<String> = (1..=r.len()).map(|i| format!("{prefix}{i}")).collect();
    let rows = names.iter().zip(r).map(|(n, &v)| (n.as_str(), vec![Value::nat(v), Value::nat(0)])).collect();
    Interpretation::monadic(Semiring::Nat, &["R"], rows)
}

fn nat_intro() -> Result<Vec<(&'static str, Interpretation)>> {
    Ok(vec![("A", nat_rows("a", &[1, 1, 2])?), ("B", nat_rows("b", &[1, 2, 2])?)])
}

fn run_nat_intro(p: &[Interpretation]) -> Result<Vec<Outcome>> {
    let (a, b) = (&p[0], &p[1]);
    let mut r = Report::default();
    r.value(Origin::Example, "exists on A", a, "E x. R(x)", &Value::nat(4))?;
    r.value(Origin::Example, "exists on B", b, "E x. R(x)", &Value::nat(5))?;
    r.winner(Origin::Example, "G_1 winner", solve_ef(a, &[], b, &[], 1)?.duplicator_wins(), true);
    r.winner(Origin::Oracle, "BG_1 winner", solve_bijection(a, &[], b, &[], 1)?.duplicator_wins(), false);
    let v = find_separator(a, &[], b, &[], SearchBudget::new(1, 9))?;
    let ok = v.separation().is_some_and(|s| quantifier_rank(s.formula()) == 1);
    r.verdict(Origin::Example, "rank-1 separator", &v, a, b, ok);
    let v = decide_equiv_nat(a, &[], b, &[], 1)?;
    r.verdict(Origin::Oracle, "exact decision at rank 1", &v, a, b, v.is_separated());
    Ok(r.0)
}

fn mm(k: u32, rels: &[&str], rows: &[(&'static str, &[u32])]) -> Result<Interpretation> {
    let rows: Vec<(&'static str, Vec<Value>)> =
        rows.iter().map(|(n, vals)| (*n, vals.iter().map(|&v| Value::Elem(v)).collect())).collect();
    monadic(Semiring::MinMax(k), rels, &rows)
}

fn minmax_intro() -> Result<Vec<(&'static str, Interpretation)>> {
    let a = mm(4, &["R"], &[("a1", &[1, 0]), ("a2", &[2, 0]), ("a3", &[4, 0])])?;
    let b = mm(4, &["R"], &[("b1", &[1, 0]), ("b2", &[3, 0]), ("b3", &[4, 0])])?;
    Ok(vec![("A", a), ("B", b)])
}

fn run_minmax_intro(p: &[Interpretation]) -> Result<Vec<Outcome>> {
    let (a, b) = (&p[0], &p[1]);
    let mut r = Report::default();
    for (pi, side) in [(a, "A"), (b, "B")] {
        r.value(Origin::Example, &format!("exists on {side}"), pi, "E x. R(x)", &Value::Elem(4))?;
        r.value(Origin::Example, &format!("forall on {side}"), pi, "A x. R(x)", &Value::Elem(1))?;
    }
    r.winner(Origin::Example, "G_1 winner", solve_ef(a, &[], b, &[], 1)?.duplicator_wins(), false);
    let v = find_separator(a, &[], b, &[], SearchBudget::new(1, 9))?;
    r.verdict(Origin::Example, "no rank-1 separator within 9 nodes", &v, a, b, matches!(v, EquivVerdict::Unknown { .. }));
    let v = decide_equiv_lattice(a, &[], b, &[], 1)?;
    r.verdict(Origin::Oracle, "exact decision at rank 1", &v, a, b, v.is_equivalent());
    Ok(r.0)
}

fn idem_witness() -> Result<Vec<(&'static str, Interpretation)>> {
    Ok(vec![("A", nat_rows("a", &[1, 1])?), ("B", nat_rows("b", &[1])?)])
}

fn run_idem_witness(p: &[Interpretation]) -> Result<Vec<Outcome>> {
    let (a, b) = (&p[0], &p[1]);
    let mut r = Report::default();
    r.winner(Origin::Example, "G_1 winner", solve_ef(a, &[], b, &[], 1)?.duplicator_wins(), true);
    let v = find_separator(a, &[], b, &[], SearchBudget::new(1, 9))?;
    let ok = v.separation().is_some_and(|s| quantifier_rank(s.formula()) == 1);
    r.verdict(Origin::Example, "rank-1 separator", &v, a, b, ok);
    r.check(Origin::Sanity, "naturals are not idempotent", !Semiring::Nat.is_fully_idempotent()?, "1 + 1 = 2");
    Ok(r.0)
}

fn wxy() -> Semiring {
    Semiring::poly(Quotient::WX, vec!["x".into(), "y".into()])
}

fn wxy_rows(prefix: &str, n: usize) -> Result<Interpretation> {
    let s = wxy();
    let v = s.parse_value("x+y")?;
    let names: Vec<String> = (1..=n).map(|i| format!("{prefix}{i}")).collect();
    let rows = names.iter().map(|nm| (nm.as_str(), vec![v.clone(), s.zero()])).collect();
    Interpretation::monadic(s, &["R"], rows)
}

fn wxy_counting() -> Result<Vec<(&'static str, Interpretation)>> {
    Ok(vec![("A", wxy_rows("a", 1)?), ("B", wxy_rows("b", 2)?), ("C", wxy_rows("c", 3)?)])
}

fn run_wxy_counting(p: &[Interpretation]) -> Result<Vec<Outcome>> {
    let (a, b, c) = (&p[0], &p[1], &p[2]);
    let s = wxy();
    let mut r = Report::default();
    r.winner(Origin::Example, "CG^2_1 winner, 1 vs 2 rows", solve_counting(a, &[], b, &[], 1, 2)?.duplicator_wins(), false);
    r.winner(Origin::Example, "CG^2_1 winner, 2 vs 3 rows", solve_counting(b, &[], c, &[], 1, 2)?.duplicator_wins(), true);
    let v = find_separator(a, &[], b, &[], SearchBudget::new(1, 9))?;
    let ok = v.separation().is_some_and(|sep| {
        print_formula(sep.formula()) == "A x1. R(x1)"
            && s.format_value(sep.left()) == "x + y"
            && s.format_value(sep.right()) == "x + x*y + y"
    });
    r.verdict(Origin::Oracle, "1 vs 2 rows separated", &v, a, b, ok);
    let v = find_separator(b, &[], c, &[], SearchBudget::new(1, 9))?;
    r.verdict(Origin::Example, "2 vs 3 rows not separated at rank 1", &v, b, c, matches!(v, EquivVerdict::Unknown { .. }));
    r.check(Origin::Example, "2-idempotent", s.is_n_idempotent(2)?, "n·s and s^n stabilize from 2");
    r.check(Origin::Example, "not 1-idempotent", !s.is_n_idempotent(1)?, "");
    let xy = s.parse_value("x+y")?;
    let sq = s.mul(&xy, &xy)?;
    r.check(Origin::Example, "(x+y)^2", s.format_value(&sq) == "x + x*y + y", s.format_value(&sq));
    Ok(r.0)
}

fn pi_st() -> Result<Vec<(&'static str, Interpretation)>> {
    let (s, t) = (1, 2);
    let rels = ["R1", "R2"];
    let a = mm(2, &rels, &[("a1", &[0, t, s, 0]), ("a2", &[s, 0, 0, t]), ("a3", &[t, s, 0, 0]), ("a4", &[0, 0, t, s])])?;
    let b = mm(2, &rels, &[("b1", &[t, 0, 0, s]), ("b2", &[0, s, t, 0]), ("b3", &[s, t, 0, 0]), ("b4", &[0, 0, s, t])])?;
    Ok(vec![("A", a), ("B", b)])
}

fn run_pi_st(p: &[Interpretation]) -> Result<Vec<Outcome>> {
    let (a, b) = (&p[0], &p[1]);
    let mut r = Report::default();
    r.winner(Origin::Example, "G_1 winner", solve_ef(a, &[], b, &[], 1)?.duplicator_wins(), false);
    r.check(Origin::Example, "not isomorphic", find_isomorphism(a, b)?.is_none(), "");
    for m in 0..=3 {
        let v = decide_equiv_lattice(a, &[], b, &[], m)?;
        r.verdict(Origin::Example, &format!("equivalent at rank {m}"), &v, a, b, v.is_equivalent());
    }
    Ok(r.0)
}

fn tropical_pair() -> Result<Vec<(&'static str, Interpretation)>> {
    let t = |n: Option<u64>| Value::tropical(n);
    let a = monadic(
        Semiring::Tropical,
        &["R"],
        &[("a0", vec![t(Some(0)), t(None)]), ("a1", vec![t(Some(1)), t(None)]), ("a2", vec![t(Some(1)), t(None)])],
    )?;
    let b = monadic(Semiring::Tropical, &["R"], &[("b0", vec![t(Some(0)), t(None)]), ("b1", vec![t(Some(2)), t(None)])])?;
    Ok(vec![("A", a), ("B", b)])
}

fn run_tropical_pair(p: &[Interpretation]) -> Result<Vec<Outcome>> {
    let (a, b) = (&p[0], &p[1]);
    let mut r = Report::default();
    let conds = pair_criterion(a, b)?;
    r.check(Origin::Example, "criterion conditions", conds.iter().all(|&c| c), format!("{conds:?}"));
    r.winner(Origin::Example, "G_1 winner", solve_ef(a, &[], b, &[], 1)?.duplicator_wins(), false);
    let v = find_separator(a, &[], b, &[], SearchBudget::new(1, 7))?;
    r.verdict(Origin::Example, "no rank-1 separator within 7 nodes", &v, a, b, matches!(v, EquivVerdict::Unknown { .. }));
    let v = decide_equiv(a, &[], b, &[], 1, EquivMethod::Auto, SearchBudget::default())?;
    let ok = v == EquivVerdict::Equivalent { m: 1, method: Method::PairCriterion };
    r.verdict(Origin::Example, "1-equivalent", &v, a, b, ok);
    Ok(r.0)
}

fn sigma4_rows(perturb: bool) -> Result<Vec<(&'static str, Interpretation)>> {
    let rels = ["Q", "R"];
    let a3: &[u32] = if perturb { &[0, 2, 0, 0] } else { &[3, 2, 0, 0] };
    let a = mm(3, &rels, &[("a1", &[1, 3, 0, 0]), ("a2", &[2, 1, 0, 0]), ("a3", a3)])?;
    let b = mm(3, &rels, &[("b1", &[3, 1, 0, 0]), ("b2", &[1, 2, 0, 0]), ("b3", &[2, 3, 0, 0])])?;
    Ok(vec![("A", a), ("B", b)])
}

fn sigma4_majority() -> Result<Vec<(&'static str, Interpretation)>> {
    let mut v = sigma4_rows(false)?;
    let perturbed = sigma4_rows(true)?.remove(0).1;
    v.push(("A'", perturbed));
    Ok(v)
}

fn run_sigma4(p: &[Interpretation]) -> Result<Vec<Outcome>> {
    let (a, b, a2) = (&p[0], &p[1], &p[2]);
    let s = Semiring::MinMax(3);
    let mut r = Report::default();
    r.winner(Origin::Example, "G_1 winner", solve_ef(a, &[], b, &[], 1)?.duplicator_wins(), false);
    for m in 0..=3 {
        let v = decide_equiv_lattice(a, &[], b, &[], m)?;
        r.verdict(Origin::Example, &format!("equivalent at rank {m}"), &v, a, b, v.is_equivalent());
    }
    let e = Value::Elem;
    let idc = idc_elements(&s)?;
    r.check(Origin::Example, "indecomposables", idc == vec![e(1), e(2), e(3)], format!("{} elements", idc.len()));
    let ideals: Vec<Vec<Value>> = prime_ideals(&s)?.into_iter().map(|p| p.members).collect();
    let downsets = vec![vec![e(0)], vec![e(0), e(1)], vec![e(0), e(1), e(2)]];
    r.check(Origin::Example, "prime ideals are the proper down-sets", ideals == downsets, format!("{} ideals", ideals.len()));
    let (hp, hs) = (prime_homs(&s)?, idc_homs(&s)?);
    r.check(Origin::Example, "prime-ideal homomorphisms separate", verify_separating(&s, &hp)?, "");
    r.check(Origin::Example, "indecomposable homomorphisms separate", verify_separating(&s, &hs)?, "");
    let mut same = true;
    for j in 0..4 {
        same &= hs[1].apply(&e(j))? == Value::Bool(j >= 2);
    }
    r.check(Origin::Example, "h_2 is the threshold at 2", same, "");
    r.winner(Origin::Example, "HG_2 winner with prime-ideal set", solve_hom_game(&hp, a, b, 2)?.duplicator_wins(), true);
    let v = decide_equiv_lattice(a2, &[], b, &[], 1)?;
    let cross = find_separator(a2, &[], b, &[], SearchBudget::new(1, 9))?;
    r.verdict(Origin::Oracle, "perturbed pair separated at rank 1", &v, a2, b, v.is_separated());
    r.verdict(Origin::Oracle, "search confirms the perturbed separation", &cross, a2, b, cross.is_separated());
    Ok(r.0)
}

/// The finite truncation with `2m + 1` elements on the left and `2m` on the right.
fn appendix(m: usize) -> Result<Vec<(&'static str, Interpretation)>> {
    let t = Value::Bool;
    let row = |r1: bool, r2: bool| vec![t(r1), t(r2), t(false), t(false)];
    let rels = ["R1", "R2"];
    let names_a: Vec<String> = (0..=2 * m).map(|i| format!("a{i}")).collect();
    let names_b: Vec<String> = (1..=2 * m).map(|i| format!("b{i}")).collect();
    let rows_a = names_a
        .iter()
        .enumerate()
        .map(|(i, n)| (n.as_str(), if i == 0 { row(true, false) } else { row(i % 2 == 0, i % 2 == 0) }))
        .collect();
    let rows_b = names_b.iter().enumerate().map(|(i, n)| (n.as_str(), row(i % 2 == 1, i % 2 == 1))).collect();
    Ok(vec![
        ("A", Interpretation::monadic(Semiring::Boolean, &rels, rows_a)?),
        ("B", Interpretation::monadic(Semiring::Boolean, &rels, rows_b)?),
    ])
}

fn run_appendix(p: &[Interpretation], m: usize) -> Result<Vec<Outcome>> {
    let (a, b) = (&p[0], &p[1]);
    let mut r = Report::default();
    r.check(Origin::Sanity, "not model-defining", !is_model_defining(a) && !is_model_defining(b), "");
    let v = decide_equiv_boolean(a, &[], b, &[], m)?;
    r.verdict(Origin::Example, &format!("equivalent at rank {m}"), &v, a, b, v.is_equivalent());
    let g = solve_ef(a, &[], b, &[], m)?;
    r.winner(Origin::Example, &format!("G_{m} winner"), g.duplicator_wins(), false);
    let g1 = solve_ef(a, &[], b, &[], 1)?;
    let first = match &g1.witness {
        Witness::Spoiler(SpoilerTrace::Pick { side: Side::A, elem, .. }) => Some(*elem),
        _ => None,
    };
    r.check(Origin::Example, "Spoiler's winning first pick is a0", first == Some(0), format!("{first:?}"));
    Ok(r.0)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn every_entry_passes() {
        for e in gallery() {
            for o in e.run().unwrap() {
                assert!(o.passed, "{}: {} ({})", e.id, o.name, o.detail);
            }
        }
    }
}
