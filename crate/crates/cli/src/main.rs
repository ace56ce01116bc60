//! `semef`: evaluate formulas, solve comparison games, decide equivalence
//! and print characteristic formulas for semiring interpretations.

use std::path::Path;
use std::process::ExitCode;
use std::time::Duration;

use clap::{Parser, Subcommand, ValueEnum};

use semiring_ef::charform::{
    boolean_one_sided_chi, lattice_chi_p, lattice_chi_s, literal_count, nat_chi, nat_schedule, nat_value_bound,
    ExponentBudget,
};
use semiring_ef::equiv::{decide_equiv, EquivMethod, EquivVerdict, SearchBudget};
use semiring_ef::gallery::{self, gallery};
use semiring_ef::games::{solve, GameKind, GameSpec};
use semiring_ef::homsets::{idc_homs, prime_homs, prime_ideals, verify_separating};
use semiring_ef::interp::{parse_interpretation_with, parse_semiring, Interpretation};
use semiring_ef::logic::{evaluate, parse_formula, print_formula, Assignment, Formula};
use semiring_ef::sample::DEFAULT_SEED;
use semiring_ef::semiring::{
    parse_table_semiring, validate_table_semiring, verify_hom, HomRule, Semiring, SemiringHom, Value,
};
use semiring_ef::Error;

/// Largest expanded formula printed with `--expand`.
const MAX_EXPANDED: u128 = 1_000_000;

#[derive(Parser)]
#[command(name = "semef", version, about = "Semiring semantics workbench for first-order logic")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Evaluate a formula in an interpretation.
    Eval {
        /// Interpretation file, or `gallery:ID:NAME`.
        interp: String,
        formula: String,
        /// Free-variable assignment such as `x=a1,y=a2`.
        #[arg(long, default_value = "")]
        assign: String,
    },
    /// Solve a model-comparison game and print a witness.
    Game {
        kind: GameArg,
        left: String,
        right: String,
        #[arg(long)]
        moves: Option<usize>,
        /// Set size of the counting game.
        #[arg(long)]
        setsize: Option<usize>,
        /// `idc`, `prime`, or a file with one Boolean image row per homomorphism.
        #[arg(long)]
        homset: Option<String>,
        #[arg(long, default_value = "")]
        abar: String,
        #[arg(long, default_value = "")]
        bbar: String,
    },
    /// Decide or refute m-equivalence.
    Equiv {
        left: String,
        right: String,
        #[arg(long, default_value_t = 1)]
        moves: usize,
        #[arg(long, value_enum, default_value_t = MethodArg::Auto)]
        method: MethodArg,
        /// Quantifier-rank bound of the separator search (defaults to `--moves`).
        #[arg(long)]
        qr: Option<usize>,
        #[arg(long, default_value_t = 9)]
        max_nodes: usize,
        /// Time limit of the separator search in seconds.
        #[arg(long, default_value_t = 10)]
        timeout: u64,
        #[arg(long, default_value = "")]
        abar: String,
        #[arg(long, default_value = "")]
        bbar: String,
    },
    /// Print a characteristic formula.
    Char {
        interp: String,
        #[arg(long, value_enum)]
        kind: CharArg,
        #[arg(long, default_value_t = 1)]
        moves: usize,
        #[arg(long, default_value = "")]
        abar: String,
        /// Indecomposable element for `lattice-s`.
        #[arg(long)]
        s: Option<String>,
        /// Index of the prime ideal for `lattice-p` (see `homset --kind prime`).
        #[arg(long)]
        ideal: Option<usize>,
        /// Value bound for `nat` (default: largest value plus one).
        #[arg(long)]
        c1: Option<u64>,
        /// Universe bound for `nat` (default: universe size plus one).
        #[arg(long)]
        c2: Option<u64>,
        /// Print the fully expanded formula instead of the compact one.
        #[arg(long)]
        expand: bool,
    },
    /// Print a separating set of Boolean homomorphisms.
    Homset {
        /// Semiring such as `minmax:3` or `table:FILE`.
        semiring: String,
        #[arg(long, value_enum)]
        kind: HomsetArg,
    },
    /// Check the axioms of a table semiring file (or a named semiring).
    ValidateSemiring { semiring: String },
    /// Re-derive the worked examples: an id, `all`, or `list`.
    Repro {
        #[arg(default_value = "all")]
        id: String,
        #[arg(long, value_parser = parse_seed, default_value_t = DEFAULT_SEED)]
        seed: u64,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum GameArg {
    Ef,
    Bijection,
    Counting,
    Unbounded,
    Onesided,
    Hom,
}

#[derive(Clone, Copy, ValueEnum)]
enum MethodArg {
    Auto,
    Lattice,
    Nat,
    Natpoly,
    Boolean,
    Search,
}

#[derive(Clone, Copy, ValueEnum)]
enum CharArg {
    Nat,
    Boolean,
    LatticeS,
    LatticeP,
}

#[derive(Clone, Copy, ValueEnum)]
enum HomsetArg {
    Idc,
    Prime,
}

fn parse_seed(s: &str) -> Result<u64, String> {
    let parsed = match s.strip_prefix("0x").or_else(|| s.strip_prefix("0X")) {
        Some(hex) => u64::from_str_radix(hex, 16),
        None => s.parse(),
    };
    parsed.map_err(|e| format!("bad seed `{s}`: {e}"))
}

/// Failures mapped to exit codes.
enum Fail {
    Check(String),
    Usage(String),
    Budget(String),
}

impl From<Error> for Fail {
    fn from(e: Error) -> Self {
        if e.is_budget() {
            Fail::Budget(e.to_string())
        } else {
            Fail::Usage(e.to_string())
        }
    }
}

type Out = Result<(), Fail>;

fn usage(msg: impl Into<String>) -> Fail {
    Fail::Usage(msg.into())
}

fn load(arg: &str) -> Result<Interpretation, Fail> {
    if let Some(rest) = arg.strip_prefix("gallery:") {
        let (id, name) = rest.split_once(':').ok_or_else(|| usage(format!("expected gallery:ID:NAME, got `{arg}`")))?;
        return gallery::interpretation(id, name)?.ok_or_else(|| usage(format!("no interpretation `{name}` in gallery entry `{id}`")));
    }
    let text = std::fs::read_to_string(arg).map_err(|e| usage(format!("cannot read {arg}: {e}")))?;
    let base = Path::new(arg).parent().unwrap_or(Path::new("."));
    parse_interpretation_with(&text, base, false).map_err(|e| usage(format!("{arg}: {e}")))
}

fn tuple(pi: &Interpretation, names: &str) -> Result<Vec<usize>, Fail> {
    names
        .split(',')
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .map(|n| pi.element(n).ok_or_else(|| usage(format!("unknown element `{n}`"))))
        .collect()
}

fn load_homset(spec: &str, s: &Semiring) -> Result<Vec<SemiringHom>, Fail> {
    match spec {
        "idc" => return Ok(idc_homs(s)?),
        "prime" => return Ok(prime_homs(s)?),
        _ => {}
    }
    let carrier = s.carrier().ok_or_else(|| usage(format!("{s} has no finite carrier")))?;
    let text = std::fs::read_to_string(spec).map_err(|e| usage(format!("cannot read {spec}: {e}")))?;
    let mut hs = Vec::new();
    for (ln, line) in text.lines().enumerate() {
        let line = line.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let images: Vec<Value> = line
            .split_whitespace()
            .map(|b| match b {
                "0" => Ok(Value::Bool(false)),
                "1" => Ok(Value::Bool(true)),
                _ => Err(usage(format!("{spec}:{}: expected 0 or 1, got `{b}`", ln + 1))),
            })
            .collect::<Result<_, _>>()?;
        if images.len() != carrier.len() {
            return Err(usage(format!("{spec}:{}: expected {} images", ln + 1, carrier.len())));
        }
        let h = SemiringHom::new(s.clone(), Semiring::Boolean, HomRule::FiniteMap(images));
        verify_hom(&h).map_err(|v| Fail::Check(format!("{spec}:{}: not a homomorphism: {v}", ln + 1)))?;
        hs.push(h);
    }
    Ok(hs)
}

fn cmd_eval(interp: &str, formula: &str, assign: &str) -> Out {
    let pi = load(interp)?;
    let phi = parse_formula(formula)?;
    let asg = Assignment::parse(&pi, assign)?;
    let v = evaluate(&pi, &phi, &asg)?;
    println!("{}", pi.semiring().format_value(&v));
    Ok(())
}

#[allow(clippy::too_many_arguments)]
fn cmd_game(
    kind: GameArg,
    left: &str,
    right: &str,
    moves: Option<usize>,
    setsize: Option<usize>,
    homset: Option<&str>,
    abar: &str,
    bbar: &str,
) -> Out {
    if setsize.is_some() && !matches!(kind, GameArg::Counting) {
        return Err(usage("--setsize only applies to the counting game"));
    }
    if homset.is_some() && !matches!(kind, GameArg::Hom) {
        return Err(usage("--homset only applies to the homomorphism game"));
    }
    let need_moves = || moves.ok_or_else(|| usage("--moves is required for this game"));
    let (pa, pb) = (load(left)?, load(right)?);
    let kind = match kind {
        GameArg::Ef => GameKind::Ef(need_moves()?),
        GameArg::Bijection => GameKind::Bijection(need_moves()?),
        GameArg::Counting => GameKind::Counting {
            m: need_moves()?,
            n: setsize.ok_or_else(|| usage("--setsize is required for the counting game"))?,
        },
        GameArg::Unbounded => {
            if moves.is_some() {
                return Err(usage("the unbounded game takes no --moves"));
            }
            GameKind::Unbounded
        }
        GameArg::Onesided => GameKind::OneSided(need_moves()?),
        GameArg::Hom => {
            let spec = homset.ok_or_else(|| usage("--homset is required for the homomorphism game"))?;
            GameKind::Hom(need_moves()?, load_homset(spec, pa.semiring())?)
        }
    };
    let spec = GameSpec { kind, a: &pa, abar: tuple(&pa, abar)?, b: &pb, bbar: tuple(&pb, bbar)? };
    print!("{}", solve(&spec)?.describe(&pa, &pb));
    Ok(())
}

#[allow(clippy::too_many_arguments)]
fn cmd_equiv(
    left: &str,
    right: &str,
    moves: usize,
    method: MethodArg,
    qr: Option<usize>,
    max_nodes: usize,
    timeout: u64,
    abar: &str,
    bbar: &str,
) -> Out {
    let (pa, pb) = (load(left)?, load(right)?);
    let (a, b) = (tuple(&pa, abar)?, tuple(&pb, bbar)?);
    let method = match method {
        MethodArg::Auto => EquivMethod::Auto,
        MethodArg::Lattice => EquivMethod::Lattice,
        MethodArg::Nat => EquivMethod::Nat,
        MethodArg::Natpoly => EquivMethod::Natpoly,
        MethodArg::Boolean => EquivMethod::Boolean,
        MethodArg::Search => EquivMethod::Search,
    };
    let budget = SearchBudget { max_qr: qr.unwrap_or(moves), max_nodes, time: Duration::from_secs(timeout) };
    let v = decide_equiv(&pa, &a, &pb, &b, moves, method, budget)?;
    println!("{}", v.describe(&pa, &pb));
    match v {
        EquivVerdict::Unknown { reason } => Err(Fail::Budget(reason)),
        _ => Ok(()),
    }
}

#[allow(clippy::too_many_arguments)]
fn cmd_char(
    interp: &str,
    kind: CharArg,
    m: usize,
    abar: &str,
    s: Option<&str>,
    ideal: Option<usize>,
    c1: Option<u64>,
    c2: Option<u64>,
    expand: bool,
) -> Out {
    let pi = load(interp)?;
    let a = tuple(&pi, abar)?;
    let phi: Formula = match kind {
        CharArg::Nat => {
            let c1 = match c1 {
                Some(c) => c,
                None => nat_value_bound(&pi)?,
            };
            let c2 = c2.unwrap_or(pi.size() as u64 + 1);
            let k = literal_count(pi.vocab(), a.len() + m);
            let sched = nat_schedule(c1, c2, k, m, ExponentBudget::default())?;
            println!("# c1 = {c1}, c2 = {c2}, k = {k}, e = {:?}, outer = {:?}", sched.e, sched.outer);
            nat_chi(&sched, pi.vocab(), a.len(), m)?
        }
        CharArg::Boolean => boolean_one_sided_chi(&pi, &a, m)?,
        CharArg::LatticeS => {
            let s = s.ok_or_else(|| usage("--s is required for lattice-s"))?;
            let v = pi.semiring().parse_value(s)?;
            lattice_chi_s(&pi, &a, m, &v)?
        }
        CharArg::LatticeP => {
            let i = ideal.ok_or_else(|| usage("--ideal is required for lattice-p"))?;
            let ideals = prime_ideals(pi.semiring())?;
            let p = ideals.get(i).ok_or_else(|| usage(format!("only {} prime ideals", ideals.len())))?;
            lattice_chi_p(&pi, &a, m, p)?
        }
    };
    if expand {
        let size = phi.expanded_size();
        if size > MAX_EXPANDED {
            return Err(Fail::Budget(format!("expanded formula has {size} nodes (limit {MAX_EXPANDED})")));
        }
        println!("{}", print_formula(&phi));
    } else {
        println!("{}", phi.compact());
    }
    Ok(())
}

fn cmd_homset(spec: &str, kind: HomsetArg) -> Out {
    let s = parse_semiring(spec, Path::new("."))?;
    let hs = match kind {
        HomsetArg::Idc => idc_homs(&s)?,
        HomsetArg::Prime => prime_homs(&s)?,
    };
    let carrier = s.carrier().ok_or_else(|| usage(format!("{s} has no finite carrier")))?;
    let names: Vec<String> = carrier.iter().map(|v| s.format_value(v)).collect();
    println!("carrier: {}", names.join(" "));
    for (i, h) in hs.iter().enumerate() {
        let img: Vec<&str> = carrier
            .iter()
            .map(|v| h.apply(v).map(|b| if b == Value::Bool(true) { "1" } else { "0" }))
            .collect::<Result<_, _>>()?;
        println!("{i}: {}  [{}]", h.label(), img.join(" "));
    }
    let sep = verify_separating(&s, &hs)?;
    println!("separating: {}", if sep { "yes" } else { "no" });
    if sep {
        Ok(())
    } else {
        Err(Fail::Check("the set does not separate the carrier".into()))
    }
}

fn cmd_validate(spec: &str) -> Out {
    let s = if Path::new(spec).is_file() {
        let text = std::fs::read_to_string(spec).map_err(|e| usage(format!("cannot read {spec}: {e}")))?;
        let raw = parse_table_semiring(&text)?;
        match validate_table_semiring(&raw) {
            Ok(t) => Semiring::table(t),
            Err(e) => {
                println!("invalid: {e}");
                return Err(Fail::Check(e.to_string()));
            }
        }
    } else {
        parse_semiring(spec, Path::new("."))?
    };
    println!("valid: {s}");
    if s.carrier().is_some() {
        println!("fully idempotent: {}", s.is_fully_idempotent()?);
        println!("absorptive: {}", s.is_absorptive()?);
        println!("lattice: {}", s.is_lattice()?);
    }
    let n = (1..=8).find(|&n| s.is_n_idempotent(n).unwrap_or(false));
    match n {
        Some(n) => println!("n-idempotent from n = {n}"),
        None => println!("n-idempotent: not for n <= 8"),
    }
    Ok(())
}

fn cmd_repro(id: &str, seed: u64) -> Out {
    if id == "list" {
        for e in gallery() {
            println!("{:<16} {}", e.id, e.summary);
        }
        return Ok(());
    }
    println!("seed: {seed:#x}");
    let entries: Vec<_> = if id == "all" {
        gallery()
    } else {
        vec![gallery::entry(id).ok_or_else(|| usage(format!("unknown gallery entry `{id}`")))?]
    };
    let mut failed = 0;
    let mut total = 0;
    for e in entries {
        for o in e.run()? {
            total += 1;
            let tag = if o.passed { "PASS" } else { "FAIL" };
            failed += usize::from(!o.passed);
            let detail = if o.detail.is_empty() { String::new() } else { format!(": {}", o.detail) };
            println!("{tag} {}/{} [{}]{detail}", e.id, o.name, o.origin);
        }
    }
    println!("{} of {total} checks passed", total - failed);
    if failed == 0 {
        Ok(())
    } else {
        Err(Fail::Check(format!("{failed} checks failed")))
    }
}

fn run(cli: Cli) -> Out {
    match cli.cmd {
        Cmd::Eval { interp, formula, assign } => cmd_eval(&interp, &formula, &assign),
        Cmd::Game { kind, left, right, moves, setsize, homset, abar, bbar } => {
            cmd_game(kind, &left, &right, moves, setsize, homset.as_deref(), &abar, &bbar)
        }
        Cmd::Equiv { left, right, moves, method, qr, max_nodes, timeout, abar, bbar } => {
            cmd_equiv(&left, &right, moves, method, qr, max_nodes, timeout, &abar, &bbar)
        }
        Cmd::Char { interp, kind, moves, abar, s, ideal, c1, c2, expand } => {
            cmd_char(&interp, kind, moves, &abar, s.as_deref(), ideal, c1, c2, expand)
        }
        Cmd::Homset { semiring, kind } => cmd_homset(&semiring, kind),
        Cmd::ValidateSemiring { semiring } => cmd_validate(&semiring),
        Cmd::Repro { id, seed } => cmd_repro(&id, seed),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Fail::Check(msg)) => {
            eprintln!("check failed: {msg}");
            ExitCode::from(1)
        }
        Err(Fail::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Fail::Budget(msg)) => {
            eprintln!("budget exceeded: {msg}");
            ExitCode::from(3)
        }
    }
}
