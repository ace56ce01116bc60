//! Acceptance suite. Runs without the libtest harness so that every
//! criterion prints exactly one PASS/FAIL line; exits nonzero on any FAIL.

use std::collections::BTreeSet;
use std::error::Error as StdError;
use std::process::ExitCode;
use std::time::Instant;

use num_bigint::BigUint;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use semiring_ef::charform::{boolean_one_sided_chi, literal_count, nat_chi, nat_schedule, ExponentBudget};
use semiring_ef::equiv::{decide_equiv_boolean, decide_equiv_lattice, decide_equiv_nat, find_separator, pair_criterion, EquivVerdict, SearchBudget};
use semiring_ef::games::{
    build_back_and_forth, solve_bijection, solve_counting, solve_ef, solve_one_sided, Leaf, Rules, Solver,
};
use semiring_ef::gallery::{gallery, interpretation};
use semiring_ef::homsets::{idc_elements, idc_homs, make_h_s, prime_homs, prime_ideals, verify_separating};
use semiring_ef::interp::{Interpretation, Vocabulary};
use semiring_ef::logic::{enumerate_formulas, evaluate_at, parse_formula, quantifier_rank};
use semiring_ef::provenance::{find_y_separating, kronecker_hom, Monomial, Polynomial, Quotient};
use semiring_ef::sample::{random_lattice, random_monadic, DEFAULT_SEED};
use semiring_ef::semiring::verify_hom;
use semiring_ef::{Ext, Semiring, Value};

type Outcome = Result<String, Box<dyn StdError>>;
type Criterion = (&'static str, fn() -> Outcome);

// Tolerances and sizes, pinned.
const LATTICE_PAIRS: usize = 200;
const NATINF_PAIRS: usize = 100;
const POLY_PAIRS: usize = 100;
const COHERENCE_PAIRS: usize = 100;
const SAMPLED_FORMULAS: usize = 100;
const SEARCH_NODES: usize = 9;

macro_rules! ensure {
    ($cond:expr, $($fmt:tt)+) => {
        if !$cond {
            return Err(format!($($fmt)+).into());
        }
    };
}

fn gal(id: &str, name: &str) -> Result<Interpretation, Box<dyn StdError>> {
    interpretation(id, name)?.ok_or_else(|| format!("gallery entry {id}:{name} missing").into())
}

fn value(pi: &Interpretation, text: &str) -> Result<Value, Box<dyn StdError>> {
    Ok(evaluate_at(pi, &parse_formula(text)?, &[], &[])?)
}

fn search(pa: &Interpretation, pb: &Interpretation, qr: usize) -> Result<EquivVerdict, Box<dyn StdError>> {
    Ok(find_separator(pa, &[], pb, &[], SearchBudget::new(qr, SEARCH_NODES))?)
}

fn nat_monadic(prefix: &str, rows: &[(u64, u64)]) -> Interpretation {
    let names: Vec<String> = (0..rows.len()).map(|i| format!("{prefix}{i}")).collect();
    let rows = names.iter().zip(rows).map(|(n, &(p, q))| (n.as_str(), vec![Value::nat(p), Value::nat(q)])).collect();
    Interpretation::monadic(Semiring::Nat, &["R"], rows).expect("valid rows")
}

fn bool_monadic(prefix: &str, rows: &[(bool, bool)]) -> Interpretation {
    let names: Vec<String> = (0..rows.len()).map(|i| format!("{prefix}{i}")).collect();
    let rows = names.iter().zip(rows).map(|(n, &(p, q))| (n.as_str(), vec![Value::Bool(p), Value::Bool(q)])).collect();
    Interpretation::monadic(Semiring::Boolean, &["R"], rows).expect("valid rows")
}

/// Every row list of length 1 or 2 over `cells`.
fn all_rows<T: Copy>(cells: &[T]) -> Vec<Vec<(T, T)>> {
    let pairs: Vec<(T, T)> = cells.iter().flat_map(|&p| cells.iter().map(move |&q| (p, q))).collect();
    let mut out: Vec<Vec<(T, T)>> = pairs.iter().map(|&r| vec![r]).collect();
    for &r in &pairs {
        for &s in &pairs {
            out.push(vec![r, s]);
        }
    }
    out
}

fn c1_nat_intro() -> Outcome {
    let (a, b) = (gal("nat-intro", "A")?, gal("nat-intro", "B")?);
    ensure!(value(&a, "E x. R(x)")? == Value::nat(4), "A value is not 4");
    ensure!(value(&b, "E x. R(x)")? == Value::nat(5), "B value is not 5");
    ensure!(solve_ef(&a, &[], &b, &[], 1)?.duplicator_wins(), "Spoiler wins G_1");
    ensure!(!solve_bijection(&a, &[], &b, &[], 1)?.duplicator_wins(), "Duplicator wins BG_1");
    let v = search(&a, &b, 1)?;
    let s = v.separation().ok_or("no separator found at rank 1")?;
    ensure!(quantifier_rank(s.formula()) == 1, "separator has rank {}", quantifier_rank(s.formula()));
    Ok(format!("4 vs 5, G_1 Duplicator, BG_1 Spoiler, separator {}", s.formula().compact()))
}

fn c2_minmax_intro() -> Outcome {
    let (a, b) = (gal("minmax-intro", "A")?, gal("minmax-intro", "B")?);
    for (pi, side) in [(&a, "A"), (&b, "B")] {
        ensure!(value(pi, "E x. R(x)")? == Value::Elem(4), "{side}: exists value is not 4");
        ensure!(value(pi, "A x. R(x)")? == Value::Elem(1), "{side}: forall value is not 1");
    }
    ensure!(!solve_ef(&a, &[], &b, &[], 1)?.duplicator_wins(), "Duplicator wins G_1");
    let v = search(&a, &b, 1)?;
    ensure!(matches!(v, EquivVerdict::Unknown { .. }), "search separated: {}", v.describe(&a, &b));
    Ok(format!("values 4 and 1 on both sides, G_1 Spoiler, no separator with rank 1 and <= {SEARCH_NODES} nodes"))
}

fn c3_lattice_soundness() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(DEFAULT_SEED);
    let (mut dup, mut violations) = (0, Vec::new());
    for i in 0..LATTICE_PAIRS {
        let s = random_lattice(&mut rng, 4)?;
        let carrier = s.carrier().ok_or("lattice without carrier")?;
        ensure!(s.is_lattice()?, "pair {i}: generated semiring is not a lattice");
        let mut draw = |r: &mut ChaCha8Rng| carrier[r.gen_range(0..carrier.len())].clone();
        let a = random_monadic(&mut rng, &s, &["R"], 3, &mut draw)?;
        let b = random_monadic(&mut rng, &s, &["R"], 3, &mut draw)?;
        let m = i % 3;
        if solve_ef(&a, &[], &b, &[], m)?.duplicator_wins() {
            dup += 1;
            if !decide_equiv_lattice(&a, &[], &b, &[], m)?.is_equivalent() {
                violations.push(i);
            }
        }
    }
    ensure!(violations.is_empty(), "violations at pairs {violations:?}");
    let (a, b) = (gal("idem-witness", "A")?, gal("idem-witness", "B")?);
    ensure!(solve_ef(&a, &[], &b, &[], 1)?.duplicator_wins(), "s-witness: Spoiler wins G_1");
    let v = search(&a, &b, 1)?;
    let sep = v.separation().ok_or("s-witness: no rank-1 separator")?;
    ensure!(quantifier_rank(sep.formula()) == 1, "s-witness separator has rank {}", quantifier_rank(sep.formula()));
    Ok(format!(
        "{LATTICE_PAIRS} pairs, {dup} with Duplicator winning G_m, 0 violations; s-witness separated by {}",
        sep.formula().compact()
    ))
}

fn c4_nat_bijection() -> Outcome {
    let vocab = Vocabulary::unary(&["R"]);
    let schedules = [
        nat_schedule(3, 3, literal_count(&vocab, 0), 0, ExponentBudget::default())?,
        nat_schedule(3, 3, literal_count(&vocab, 1), 1, ExponentBudget::default())?,
    ];
    let chis = [nat_chi(&schedules[0], &vocab, 0, 0)?, nat_chi(&schedules[1], &vocab, 0, 1)?];
    let interps: Vec<Interpretation> = all_rows(&[0u64, 1, 2]).iter().map(|r| nat_monadic("e", r)).collect();
    let (mut pairs, mut refuted) = (0, 0);
    for a in &interps {
        for b in &interps {
            for m in 0..=2 {
                pairs += 1;
                let dup = solve_bijection(a, &[], b, &[], m)?.duplicator_wins();
                let verdict = decide_equiv_nat(a, &[], b, &[], m)?;
                ensure!(dup == verdict.is_equivalent(), "BG_{m} and the decision disagree on\n{}\n{}", a.to_text(), b.to_text());
                if !dup {
                    ensure!(verdict.is_separated(), "no separator although Spoiler wins BG_{m}");
                    refuted += 1;
                }
                if let Some(chi) = chis.get(m) {
                    let same = evaluate_at(a, chi, &[], &[])? == evaluate_at(b, chi, &[], &[])?;
                    ensure!(dup == same, "characteristic formula at rank {m} disagrees with BG_{m}");
                }
            }
        }
    }
    Ok(format!(
        "{} interpretations, {pairs} (pair, m) cases agree; {refuted} refutations carry a checked separator; chi^0, chi^1 agree with BG",
        interps.len()
    ))
}

fn c5_counting() -> Outcome {
    let [a, b, c] = ["A", "B", "C"].map(|n| gal("wxy-counting", n));
    let (a, b, c) = (a?, b?, c?);
    ensure!(!solve_counting(&a, &[], &b, &[], 1, 2)?.duplicator_wins(), "Duplicator wins CG^2_1 on 1 vs 2 rows");
    ensure!(solve_counting(&b, &[], &c, &[], 1, 2)?.duplicator_wins(), "Spoiler wins CG^2_1 on 2 vs 3 rows");
    ensure!(search(&a, &b, 1)?.is_separated(), "no rank-1 separator for 1 vs 2 rows");
    ensure!(matches!(search(&b, &c, 1)?, EquivVerdict::Unknown { .. }), "2 vs 3 rows separated at rank 1");
    let w = Semiring::poly(Quotient::WX, vec!["x".into(), "y".into()]);
    ensure!(w.is_n_idempotent(2)?, "W[x,y] is not 2-idempotent");
    ensure!(!w.is_n_idempotent(1)?, "W[x,y] is 1-idempotent");
    let (x, y) = (Polynomial::var(Quotient::WX, 0), Polynomial::var(Quotient::WX, 1));
    let s = x.add(&y)?;
    ensure!(s.mul(&s)? == x.add(&x.mul(&y)?)?.add(&y)?, "(x+y)^2 != x+xy+y");
    Ok("CG^2_1: Spoiler on 1 vs 2, Duplicator on 2 vs 3; W[x,y] 2-idempotent, not 1-idempotent".into())
}

fn c6_tropical() -> Outcome {
    let (a, b) = (gal("tropical-pair", "A")?, gal("tropical-pair", "B")?);
    let crit = pair_criterion(&a, &b)?;
    ensure!(crit.iter().all(|&c| c), "criterion conditions {crit:?}");
    ensure!(!solve_ef(&a, &[], &b, &[], 1)?.duplicator_wins(), "Duplicator wins G_1");
    ensure!(matches!(search(&a, &b, 1)?, EquivVerdict::Unknown { .. }), "separated at rank 1");
    Ok("all three conditions hold, G_1 Spoiler, no rank-1 separator".into())
}

fn c7_kronecker() -> Outcome {
    let mut checked = Vec::new();
    for (c, e, nvars) in [(2u64, 2u64, 1usize), (2, 2, 2), (3, 2, 1)] {
        let vars: Vec<String> = ["x", "y"][..nvars].iter().map(|s| s.to_string()).collect();
        let h = kronecker_hom(c, e, &vars)?;
        verify_hom(&h).map_err(|v| format!("({c},{e},{nvars}): {v:?}"))?;
        let monos: Vec<Monomial> = (0..e.pow(nvars as u32))
            .map(|idx| {
                let exps = (0..nvars).map(|j| (j as u32, Ext::Fin(((idx / e.pow(j as u32)) % e) as u32)));
                Monomial::from_pairs(exps.filter(|(_, x)| *x != Ext::Fin(0)))
            })
            .collect();
        let total = c.pow(monos.len() as u32);
        let mut images = BTreeSet::new();
        for code in 0..total {
            let terms = monos.iter().enumerate().map(|(i, m)| (m.clone(), BigUint::from((code / c.pow(i as u32)) % c)));
            let p = Polynomial::from_terms(Quotient::NX, terms)?;
            match h.apply(&Value::Poly(p))? {
                Value::Nat(n) => images.insert(n),
                other => return Err(format!("non-natural image {other:?}").into()),
            };
        }
        let expected: BTreeSet<BigUint> = (0..total).map(BigUint::from).collect();
        ensure!(images == expected, "({c},{e},{nvars}): images are not 0..{total}");
        checked.push(format!("({c},{e},|X|={nvars}) onto 0..{}", total - 1));
    }
    Ok(checked.join(", "))
}

fn c8_natinf_soundness() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(DEFAULT_SEED ^ 8);
    let cells = [Some(0), Some(1), Some(2), None];
    let mut draw = |r: &mut ChaCha8Rng| Value::natinf(cells[r.gen_range(0..cells.len())]);
    let (mut applied, mut max_rounds) = (0, 0);
    for i in 0..NATINF_PAIRS {
        let a = random_monadic(&mut rng, &Semiring::NatInf, &["R"], 3, &mut draw)?;
        let b = random_monadic(&mut rng, &Semiring::NatInf, &["R"], 3, &mut draw)?;
        for m in 1..=2 {
            let EquivVerdict::Separated(s) = find_separator(&a, &[], &b, &[], SearchBudget::new(m, 7))? else { continue };
            let low = match (s.left(), s.right()) {
                (Value::NatInf(x), Value::NatInf(y)) => x.clone().min(y.clone()),
                _ => return Err("non-NatInf separator values".into()),
            };
            let Ext::Fin(low) = low else { return Err("both sides infinite yet separated".into()) };
            let k = usize::try_from(low)? + 1;
            let rounds = k * quantifier_rank(s.formula());
            max_rounds = max_rounds.max(rounds);
            ensure!(
                !solve_ef(&a, &[], &b, &[], rounds)?.duplicator_wins(),
                "pair {i}: {} separates with min value {} but Duplicator wins G_{rounds}",
                s.formula().compact(),
                k - 1
            );
            applied += 1;
        }
    }
    Ok(format!("{NATINF_PAIRS} pairs, {applied} separators checked (up to {max_rounds} rounds), 0 violations"))
}

fn random_sinf(rng: &mut ChaCha8Rng, nvars: u32) -> Result<Polynomial, Box<dyn StdError>> {
    let exps = [Ext::Fin(0), Ext::Fin(1), Ext::Fin(2), Ext::Inf];
    let count = rng.gen_range(1..=3);
    let terms: Vec<(Monomial, BigUint)> = (0..count)
        .map(|_| {
            let pairs: Vec<(u32, Ext<u32>)> = (0..nvars).map(|x| (x, exps[rng.gen_range(0..exps.len())])).collect();
            (Monomial::from_pairs(pairs.into_iter().filter(|(_, e)| *e != Ext::Fin(0))), BigUint::from(1u8))
        })
        .collect();
    Ok(Polynomial::from_terms(Quotient::SInfX, terms)?)
}

fn c9_y_separation() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(DEFAULT_SEED ^ 9);
    let mut done = 0;
    while done < POLY_PAIRS {
        let nvars = rng.gen_range(1..=2);
        let (p, q) = (random_sinf(&mut rng, nvars)?, random_sinf(&mut rng, nvars)?);
        if p == q {
            continue;
        }
        done += 1;
        let sep = find_y_separating(&p, &q, nvars)?.ok_or("distinct polynomials without separation")?;
        let (this, other) = if sep.from_left { (&p, &q) } else { (&q, &p) };
        ensure!(this.monomials().any(|m| *m == sep.monomial), "monomial not in its polynomial");
        let exp = |m: &Monomial, y: u32| m.pairs().iter().find(|(v, _)| *v == y).map_or(Ext::Fin(0), |&(_, e)| e);
        let mut sum = 0u64;
        for &y in &sep.ys {
            let Ext::Fin(e) = exp(&sep.monomial, y) else { return Err("infinite exponent inside Y".into()) };
            sum += u64::from(e);
        }
        ensure!(sum == sep.bound, "reported bound {} but e_Y = {sum}", sep.bound);
        let absorbed = other.monomials().any(|o| sep.ys.iter().all(|&y| exp(o, y) <= exp(&sep.monomial, y)));
        ensure!(!absorbed, "separating monomial is Y-absorbed");
    }
    let x3yinf = Monomial::from_pairs([(0, Ext::Fin(3)), (1, Ext::Inf)]);
    let xinfyinf = Monomial::from_pairs([(0, Ext::Inf), (1, Ext::Inf)]);
    let one = || BigUint::from(1u8);
    let p = Polynomial::from_terms(Quotient::SInfX, [(x3yinf, one())])?;
    let q = Polynomial::from_terms(Quotient::SInfX, [(xinfyinf, one())])?;
    let sep = find_y_separating(&p, &q, 2)?.ok_or("example not separated")?;
    ensure!(sep.bound == 3, "example bound {} instead of 3", sep.bound);
    Ok(format!("{POLY_PAIRS} random pairs confirmed by the absorption oracle; x^3 y^inf vs x^inf y^inf has bound 3"))
}

fn c10_boolean_one_sided() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(DEFAULT_SEED ^ 10);
    let vocab = Vocabulary::unary(&["R"]);
    let pools: Vec<_> = (0..=2).map(|m| enumerate_formulas(&vocab, &[], m, 7)).collect::<Result<_, _>>()?;
    let interps: Vec<Interpretation> = all_rows(&[false, true]).iter().map(|r| bool_monadic("e", r)).collect();
    let (mut cases, mut sampled) = (0, 0);
    for a in &interps {
        for m in 0..=2 {
            let chi = boolean_one_sided_chi(a, &[], m)?;
            for b in &interps {
                cases += 1;
                let dup = solve_one_sided(a, &[], b, &[], m)?.duplicator_wins();
                let holds = evaluate_at(b, &chi, &[], &[])? == Value::Bool(true);
                ensure!(dup == holds, "one-sided game and chi^{m} disagree on\n{}\n{}", a.to_text(), b.to_text());
                // No sentence has rank 0, so the m = 0 pool is empty.
                if dup && !pools[m].is_empty() {
                    for _ in 0..SAMPLED_FORMULAS {
                        let phi = &pools[m][rng.gen_range(0..pools[m].len())];
                        let (va, vb) = (evaluate_at(a, phi, &[], &[])?, evaluate_at(b, phi, &[], &[])?);
                        ensure!(!(va == Value::Bool(true) && vb == Value::Bool(false)), "{} violates the order", phi.compact());
                        sampled += 1;
                    }
                }
            }
        }
    }
    Ok(format!("{cases} (pair, m) cases agree; {sampled} sampled formula checks respect the order"))
}

fn c11_lattice_examples() -> Outcome {
    for (id, name) in [("pi-st", "pi^{s,t}"), ("sigma4-majority", "Sigma4")] {
        let (a, b) = (gal(id, "A")?, gal(id, "B")?);
        ensure!(!solve_ef(&a, &[], &b, &[], 1)?.duplicator_wins(), "{name}: Duplicator wins G_1");
        for m in 0..=3 {
            let v = decide_equiv_lattice(&a, &[], &b, &[], m)?;
            ensure!(v.is_equivalent(), "{name}: not equivalent at rank {m}: {}", v.describe(&a, &b));
        }
    }
    let s = Semiring::MinMax(3);
    ensure!(idc_elements(&s)? == [1, 2, 3].map(Value::Elem), "indecomposables differ");
    let ideals: BTreeSet<Vec<Value>> = prime_ideals(&s)?.into_iter().map(|p| p.members).collect();
    let expected: BTreeSet<Vec<Value>> = [vec![0], vec![0, 1], vec![0, 1, 2]]
        .into_iter()
        .map(|v| v.into_iter().map(Value::Elem).collect())
        .collect();
    ensure!(ideals == expected, "prime ideals {ideals:?}");
    ensure!(verify_separating(&s, &idc_homs(&s)?)?, "indecomposable homomorphisms are not separating");
    ensure!(verify_separating(&s, &prime_homs(&s)?)?, "prime homomorphisms are not separating");
    let h2 = make_h_s(&s, &Value::Elem(2))?;
    for t in 0..=3 {
        ensure!(h2.apply(&Value::Elem(t))? == Value::Bool(t >= 2), "h_2({t}) differs from the threshold map");
    }
    Ok("both pairs: G_1 Spoiler, equivalent for m <= 3; idc = {1,2,3}; three prime ideals; both sets separating; h_2 = h_{>=2}".into())
}

fn c12_appendix() -> Outcome {
    for m in 1..=2 {
        let id = format!("appendix-m{m}");
        let (a, b) = (gal(&id, "A")?, gal(&id, "B")?);
        let v = decide_equiv_boolean(&a, &[], &b, &[], m)?;
        ensure!(v.is_equivalent(), "m = {m}: {}", v.describe(&a, &b));
        ensure!(!solve_ef(&a, &[], &b, &[], m)?.duplicator_wins(), "m = {m}: Duplicator wins G_m");
        let a0 = a.element("a0").ok_or("no element a0")?;
        let mut s = Solver::new(&a, &b, Rules::Ef, Leaf::Iso)?;
        let wins = (0..b.size()).all(|y| !s.pair_wins(&[], (a0, y), m - 1));
        ensure!(wins, "m = {m}: picking a0 is not a winning Spoiler move");
    }
    Ok("m = 1, 2: equivalent at rank m, Spoiler wins G_m by picking a0".into())
}

fn coherent(a: &Interpretation, b: &Interpretation, m: usize) -> Result<(), Box<dyn StdError>> {
    let g = solve_ef(a, &[], b, &[], m)?.duplicator_wins();
    let cg1 = solve_counting(a, &[], b, &[], m, 1)?.duplicator_wins();
    ensure!(cg1 == g, "CG^1_{m} differs from G_{m}");
    let bg = solve_bijection(a, &[], b, &[], m)?.duplicator_wins();
    for n in 1..=3 {
        let cg = solve_counting(a, &[], b, &[], m, n)?.duplicator_wins();
        ensure!(!bg || cg, "BG_{m} Duplicator but CG^{n}_{m} Spoiler");
        ensure!(!cg || g, "CG^{n}_{m} Duplicator but G_{m} Spoiler");
    }
    match build_back_and_forth(a, b, m)? {
        Some(sys) => {
            ensure!(g, "back-and-forth system exists but Spoiler wins G_{m}");
            ensure!(sys.verify(a, b)?, "back-and-forth system fails verification");
        }
        None => ensure!(!g, "no back-and-forth system but Duplicator wins G_{m}"),
    }
    Ok(())
}

fn c13_coherence() -> Outcome {
    let mut pairs = Vec::new();
    for e in gallery() {
        let interps = e.interpretations()?;
        for (i, (_, a)) in interps.iter().enumerate() {
            for (_, b) in &interps[i + 1..] {
                if a.semiring() == b.semiring() && a.vocab() == b.vocab() {
                    pairs.push((a.clone(), b.clone()));
                }
            }
        }
    }
    let gallery_pairs = pairs.len();
    let mut rng = ChaCha8Rng::seed_from_u64(DEFAULT_SEED ^ 13);
    for i in 0..COHERENCE_PAIRS {
        let s = if i % 2 == 0 { Semiring::Nat } else { random_lattice(&mut rng, 4)? };
        let carrier = s.carrier();
        let mut draw = |r: &mut ChaCha8Rng| match &carrier {
            Some(c) => c[r.gen_range(0..c.len())].clone(),
            None => Value::nat(r.gen_range(0..3)),
        };
        let a = random_monadic(&mut rng, &s, &["R"], 3, &mut draw)?;
        let b = random_monadic(&mut rng, &s, &["R"], 3, &mut draw)?;
        pairs.push((a, b));
    }
    for (i, (a, b)) in pairs.iter().enumerate() {
        for m in 0..=2 {
            coherent(a, b, m).map_err(|e| format!("pair {i}, m = {m}: {e}"))?;
        }
    }
    Ok(format!("{gallery_pairs} gallery pairs and {COHERENCE_PAIRS} random pairs, m <= 2"))
}

fn main() -> ExitCode {
    let criteria: [Criterion; 13] = [
        ("natural-number intro example", c1_nat_intro),
        ("min-max intro example", c2_minmax_intro),
        ("idempotent soundness on lattices", c3_lattice_soundness),
        ("bijection game decides N", c4_nat_bijection),
        ("counting game and n-idempotence", c5_counting),
        ("tropical pair", c6_tropical),
        ("Kronecker embedding", c7_kronecker),
        ("N-infinity soundness of G", c8_natinf_soundness),
        ("Y-separating monomials", c9_y_separation),
        ("Boolean one-sided game", c10_boolean_one_sided),
        ("lattice examples and homomorphism sets", c11_lattice_examples),
        ("truncated Boolean pairs", c12_appendix),
        ("cross-solver coherence", c13_coherence),
    ];
    println!("seed: {DEFAULT_SEED:#x}");
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = run();
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Ok(detail) => println!("PASS criterion {} ({name}): {detail} [{secs:.2} s]", i + 1),
            Err(err) => {
                failed += 1;
                println!("FAIL criterion {} ({name}): {err} [{secs:.2} s]", i + 1);
            }
        }
    }
    println!("{} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
