//! Exact solvers for model-comparison games on finite interpretations.
//!
//! Every round game is solved by memoized minimax over sets of chosen pairs.
//! Rounds of the bijection and counting games are decided on the matrix of
//! pairs whose subgames Duplicator wins: a bijection round is a perfect
//! matching problem, a counting round is Hall's condition for small sets.

mod backforth;
mod solver;

use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::interp::{compose_hom_interp, find_isomorphism, Interpretation};
use crate::semiring::{Semiring, SemiringHom};

pub use backforth::{build_back_and_forth, build_back_and_forth_from, BackAndForthSystem};
pub use solver::{
    deficient_rows, for_each_subset, hall_violator, neighbours, perfect_matching, Leaf, Position, Rules, Solver,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Player {
    Spoiler,
    Duplicator,
}

impl std::fmt::Display for Player {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Player::Spoiler => "Spoiler",
            Player::Duplicator => "Duplicator",
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Side {
    A,
    B,
}

/// Spoiler's winning strategy, expanded down to a depth cap.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SpoilerTrace {
    /// The position already violates Duplicator's condition.
    Violated,
    /// The universes differ in size, so no bijection exists.
    NoBijection,
    /// Spoiler picks `elem` on `side`; `replies` lists Duplicator's answers
    /// with Spoiler's continuation (empty below the depth cap).
    Pick { side: Side, elem: usize, replies: Vec<(usize, SpoilerTrace)> },
    /// A set on `side` with fewer winning partners (`partners`) than members.
    /// In a bijection round Spoiler picks the member sent outside
    /// `partners`; in a counting round Spoiler plays the set, then a chosen
    /// element outside `partners`. `replies` continue after each losing pair
    /// (element on `side` first).
    Hall { side: Side, set: Vec<usize>, partners: Vec<usize>, replies: Vec<((usize, usize), SpoilerTrace)> },
    /// The interpretations are not isomorphic.
    NotIsomorphic,
    /// Homomorphism game: Spoiler's choice of `h` and orientation.
    Hom { index: usize, label: String, swapped: bool, trace: Box<SpoilerTrace> },
}

/// Duplicator's responses at the root.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum DuplicatorTable {
    /// No rounds remain and the position satisfies the condition.
    Final,
    /// Answer to each Spoiler pick `(side, elem)`.
    Responses(Vec<(Side, usize, usize)>),
    /// The bijection `A -> B` offered in the first round (also used for isomorphisms).
    Bijection(Vec<usize>),
    /// Pairs whose subgames Duplicator wins; Hall's condition lets her answer
    /// every set with as many partners and every pick with a partner.
    WinningPairs(Vec<(usize, usize)>),
    /// One table per homomorphism and orientation.
    PerHom(Vec<(String, bool, DuplicatorTable)>),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Witness {
    Spoiler(SpoilerTrace),
    Duplicator(DuplicatorTable),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GameResult {
    pub winner: Player,
    pub witness: Witness,
}

impl GameResult {
    fn spoiler(t: SpoilerTrace) -> Self {
        GameResult { winner: Player::Spoiler, witness: Witness::Spoiler(t) }
    }

    fn duplicator(t: DuplicatorTable) -> Self {
        GameResult { winner: Player::Duplicator, witness: Witness::Duplicator(t) }
    }

    pub fn duplicator_wins(&self) -> bool {
        self.winner == Player::Duplicator
    }

    /// A readable rendering of the witness using element names.
    pub fn describe(&self, pa: &Interpretation, pb: &Interpretation) -> String {
        let mut out = format!("winner: {}\n", self.winner);
        match &self.witness {
            Witness::Spoiler(t) => write_trace(t, pa, pb, 0, &mut out),
            Witness::Duplicator(t) => write_table(t, pa, pb, &mut out),
        }
        out
    }
}

fn name(pi: &Interpretation, e: usize) -> &str {
    &pi.universe()[e]
}

fn side_names<'a>(side: Side, pa: &'a Interpretation, pb: &'a Interpretation) -> (&'a Interpretation, &'a Interpretation) {
    match side {
        Side::A => (pa, pb),
        Side::B => (pb, pa),
    }
}

fn write_trace(t: &SpoilerTrace, pa: &Interpretation, pb: &Interpretation, depth: usize, out: &mut String) {
    let pad = "  ".repeat(depth);
    match t {
        SpoilerTrace::Violated => {
            let _ = writeln!(out, "{pad}position violates the winning condition");
        }
        SpoilerTrace::NoBijection => {
            let _ = writeln!(out, "{pad}universes differ in size: Spoiler wins immediately");
        }
        SpoilerTrace::NotIsomorphic => {
            let _ = writeln!(out, "{pad}no isomorphism exists");
        }
        SpoilerTrace::Pick { side, elem, replies } => {
            let (here, there) = side_names(*side, pa, pb);
            let _ = writeln!(out, "{pad}Spoiler picks {} in {:?}", name(here, *elem), side);
            for (r, sub) in replies {
                let _ = writeln!(out, "{pad}- if Duplicator answers {}:", name(there, *r));
                write_trace(sub, pa, pb, depth + 1, out);
            }
        }
        SpoilerTrace::Hall { side, set, partners, replies } => {
            let (here, there) = side_names(*side, pa, pb);
            let names = |pi: &Interpretation, xs: &[usize]| xs.iter().map(|&x| name(pi, x)).collect::<Vec<_>>().join(",");
            let _ = writeln!(
                out,
                "{pad}set {{{}}} in {:?} has only partners {{{}}}",
                names(here, set),
                side,
                names(there, partners)
            );
            for ((x, y), sub) in replies {
                let _ = writeln!(out, "{pad}- after ({}, {}):", name(here, *x), name(there, *y));
                write_trace(sub, pa, pb, depth + 1, out);
            }
        }
        SpoilerTrace::Hom { label, swapped, trace, .. } => {
            let _ = writeln!(out, "{pad}Spoiler chooses {label}{}", if *swapped { " (B against A)" } else { "" });
            let (x, y) = if *swapped { (pb, pa) } else { (pa, pb) };
            write_trace(trace, x, y, depth + 1, out);
        }
    }
}

fn write_table(t: &DuplicatorTable, pa: &Interpretation, pb: &Interpretation, out: &mut String) {
    match t {
        DuplicatorTable::Final => out.push_str("no rounds left; the position is winning\n"),
        DuplicatorTable::Responses(rs) => {
            for (side, e, r) in rs {
                let (here, there) = side_names(*side, pa, pb);
                let _ = writeln!(out, "{} -> {}", name(here, *e), name(there, *r));
            }
        }
        DuplicatorTable::Bijection(f) => {
            for (a, b) in f.iter().enumerate() {
                let _ = writeln!(out, "{} -> {}", name(pa, a), name(pb, *b));
            }
        }
        DuplicatorTable::WinningPairs(ps) => {
            let items: Vec<String> = ps.iter().map(|&(a, b)| format!("({}, {})", name(pa, a), name(pb, b))).collect();
            let _ = writeln!(out, "winning pairs: {}", items.join(" "));
        }
        DuplicatorTable::PerHom(hs) => {
            for (label, swapped, t) in hs {
                let _ = writeln!(out, "{label}{}:", if *swapped { " (B against A)" } else { "" });
                let (x, y) = if *swapped { (pb, pa) } else { (pa, pb) };
                write_table(t, x, y, out);
            }
        }
    }
}

/// Default witness depth: full for short games, root only otherwise.
pub fn default_trace_depth(m: usize) -> usize {
    if m <= 3 {
        m
    } else {
        1
    }
}

/// Which game to play.
#[derive(Clone, Debug)]
pub enum GameKind {
    Ef(usize),
    Bijection(usize),
    Counting { m: usize, n: usize },
    Unbounded,
    OneSided(usize),
    Hom(usize, Vec<SemiringHom>),
}

/// A game together with its start position.
#[derive(Clone, Debug)]
pub struct GameSpec<'a> {
    pub kind: GameKind,
    pub a: &'a Interpretation,
    pub abar: Vec<usize>,
    pub b: &'a Interpretation,
    pub bbar: Vec<usize>,
}

pub fn solve(spec: &GameSpec) -> Result<GameResult> {
    let (a, b, x, y) = (spec.a, spec.b, &spec.abar, &spec.bbar);
    match &spec.kind {
        GameKind::Ef(m) => solve_ef(a, x, b, y, *m),
        GameKind::Bijection(m) => solve_bijection(a, x, b, y, *m),
        GameKind::Counting { m, n } => solve_counting(a, x, b, y, *m, *n),
        GameKind::Unbounded => {
            if !x.is_empty() || !y.is_empty() {
                return Err(Error::invalid("the unbounded game starts from the empty position"));
            }
            solve_unbounded(a, b)
        }
        GameKind::OneSided(m) => solve_one_sided(a, x, b, y, *m),
        GameKind::Hom(m, hs) => solve_hom_game_from(hs, a, x, b, y, *m),
    }
}

/// Solves a round game and builds witnesses.
pub fn solve_rounds(
    pa: &Interpretation,
    a: &[usize],
    pb: &Interpretation,
    b: &[usize],
    m: usize,
    rules: Rules,
    leaf: Leaf,
    depth: usize,
) -> Result<GameResult> {
    let mut s = Solver::new(pa, pb, rules, leaf)?;
    let Some(pos) = s.start(a, b)? else {
        return Ok(GameResult::spoiler(SpoilerTrace::Violated));
    };
    if m > 0 && rules == Rules::Bijection && pa.size() != pb.size() {
        return Ok(GameResult::spoiler(SpoilerTrace::NoBijection));
    }
    if s.wins(&pos, m) {
        Ok(GameResult::duplicator(duplicator_table(&mut s, &pos, m)))
    } else {
        Ok(GameResult::spoiler(spoiler_trace(&mut s, &pos, m, depth)))
    }
}

fn duplicator_table(s: &mut Solver, pos: &[(usize, usize)], k: usize) -> DuplicatorTable {
    if k == 0 {
        return DuplicatorTable::Final;
    }
    let (na, nb) = (s.left().size(), s.right().size());
    match s.rules() {
        Rules::Ef => {
            let mut rs = Vec::new();
            for a in 0..na {
                let b = (0..nb).find(|&b| s.pair_wins(pos, (a, b), k - 1)).expect("winning position");
                rs.push((Side::A, a, b));
            }
            for b in 0..nb {
                let a = (0..na).find(|&a| s.pair_wins(pos, (a, b), k - 1)).expect("winning position");
                rs.push((Side::B, b, a));
            }
            DuplicatorTable::Responses(rs)
        }
        Rules::Bijection => {
            let w = s.matrix(pos, k);
            DuplicatorTable::Bijection(perfect_matching(&w).expect("winning position"))
        }
        Rules::Counting(_) => {
            let w = s.matrix(pos, k);
            let pairs = (0..na).flat_map(|a| (0..nb).map(move |b| (a, b))).filter(|&(a, b)| w[a][b]).collect();
            DuplicatorTable::WinningPairs(pairs)
        }
    }
}

fn subtrace(s: &mut Solver, pos: &[(usize, usize)], pair: (usize, usize), k: usize, depth: usize) -> SpoilerTrace {
    match s.extend(pos, pair) {
        None => SpoilerTrace::Violated,
        Some(p) => spoiler_trace(s, &p, k - 1, depth - 1),
    }
}

/// Spoiler's strategy from a losing position for Duplicator (`k ≥ 1` unless violated).
fn spoiler_trace(s: &mut Solver, pos: &[(usize, usize)], k: usize, depth: usize) -> SpoilerTrace {
    debug_assert!(k > 0, "a satisfying position with no rounds left is winning");
    let (na, nb) = (s.left().size(), s.right().size());
    match s.rules() {
        Rules::Ef => {
            for side in [Side::A, Side::B] {
                let (n_here, n_there) = if side == Side::A { (na, nb) } else { (nb, na) };
                let pair = |e: usize, r: usize| if side == Side::A { (e, r) } else { (r, e) };
                for e in 0..n_here {
                    if (0..n_there).any(|r| s.pair_wins(pos, pair(e, r), k - 1)) {
                        continue;
                    }
                    let replies = if depth == 0 {
                        Vec::new()
                    } else {
                        (0..n_there).map(|r| (r, subtrace(s, pos, pair(e, r), k, depth))).collect()
                    };
                    return SpoilerTrace::Pick { side, elem: e, replies };
                }
            }
            unreachable!("Spoiler wins but has no winning pick")
        }
        Rules::Bijection => {
            if na != nb {
                return SpoilerTrace::NoBijection;
            }
            let w = s.matrix(pos, k);
            let set = deficient_rows(&w).expect("no perfect matching");
            hall_trace(s, pos, k, depth, &w, Side::A, set)
        }
        Rules::Counting(n) => {
            let w = s.matrix(pos, k);
            let (from_right, set) = hall_violator(&w, n).expect("Hall's condition fails");
            let side = if from_right { Side::B } else { Side::A };
            hall_trace(s, pos, k, depth, &w, side, set)
        }
    }
}

fn hall_trace(
    s: &mut Solver,
    pos: &[(usize, usize)],
    k: usize,
    depth: usize,
    w: &[Vec<bool>],
    side: Side,
    set: Vec<usize>,
) -> SpoilerTrace {
    let m = match side {
        Side::A => w.to_vec(),
        Side::B => solver::transpose(w, s.right().size()),
    };
    let partners = neighbours(&m, &set);
    let n_there = m.first().map_or(0, Vec::len);
    let mut replies = Vec::new();
    if depth > 0 {
        for &x in &set {
            for y in (0..n_there).filter(|y| !partners.contains(y)) {
                let pair = if side == Side::A { (x, y) } else { (y, x) };
                replies.push(((x, y), subtrace(s, pos, pair, k, depth)));
            }
        }
    }
    SpoilerTrace::Hall { side, set, partners, replies }
}

/// The classical game `G_m`.
pub fn solve_ef(pa: &Interpretation, a: &[usize], pb: &Interpretation, b: &[usize], m: usize) -> Result<GameResult> {
    solve_rounds(pa, a, pb, b, m, Rules::Ef, Leaf::Iso, default_trace_depth(m))
}

/// The bijection game `BG_m`.
pub fn solve_bijection(pa: &Interpretation, a: &[usize], pb: &Interpretation, b: &[usize], m: usize) -> Result<GameResult> {
    solve_rounds(pa, a, pb, b, m, Rules::Bijection, Leaf::Iso, default_trace_depth(m))
}

/// The counting game `CG^n_m`.
pub fn solve_counting(
    pa: &Interpretation,
    a: &[usize],
    pb: &Interpretation,
    b: &[usize],
    m: usize,
    n: usize,
) -> Result<GameResult> {
    if n == 0 {
        return Err(Error::invalid("counting games need a set size of at least 1"));
    }
    solve_rounds(pa, a, pb, b, m, Rules::Counting(n), Leaf::Iso, default_trace_depth(m))
}

/// The one-sided game `G≤_m`.
pub fn solve_one_sided(pa: &Interpretation, a: &[usize], pb: &Interpretation, b: &[usize], m: usize) -> Result<GameResult> {
    solve_rounds(pa, a, pb, b, m, Rules::Ef, Leaf::Leq, default_trace_depth(m))
}

/// The unbounded game `G`: Duplicator wins exactly on isomorphic pairs.
pub fn solve_unbounded(pa: &Interpretation, pb: &Interpretation) -> Result<GameResult> {
    Ok(match find_isomorphism(pa, pb)? {
        Some(iso) => GameResult::duplicator(DuplicatorTable::Bijection(iso.targets())),
        None => GameResult::spoiler(SpoilerTrace::NotIsomorphic),
    })
}

/// The homomorphism game `HG_m` from the empty position.
pub fn solve_hom_game(hs: &[SemiringHom], pa: &Interpretation, pb: &Interpretation, m: usize) -> Result<GameResult> {
    solve_hom_game_from(hs, pa, &[], pb, &[], m)
}

/// The homomorphism game `HG_m`: for each `h` and orientation, the
/// one-sided game on the Boolean images.
pub fn solve_hom_game_from(
    hs: &[SemiringHom],
    pa: &Interpretation,
    a: &[usize],
    pb: &Interpretation,
    b: &[usize],
    m: usize,
) -> Result<GameResult> {
    let mut tables = Vec::new();
    for (index, h) in hs.iter().enumerate() {
        if h.target != Semiring::Boolean {
            return Err(Error::invalid(format!("homomorphism {} does not target the Boolean semiring", h.label())));
        }
        let ha = compose_hom_interp(h, pa)?;
        let hb = compose_hom_interp(h, pb)?;
        for swapped in [false, true] {
            let r = if swapped { solve_one_sided(&hb, b, &ha, a, m)? } else { solve_one_sided(&ha, a, &hb, b, m)? };
            match r.witness {
                Witness::Spoiler(trace) => {
                    return Ok(GameResult::spoiler(SpoilerTrace::Hom {
                        index,
                        label: h.label(),
                        swapped,
                        trace: Box::new(trace),
                    }))
                }
                Witness::Duplicator(t) => tables.push((h.label(), swapped, t)),
            }
        }
    }
    Ok(GameResult::duplicator(DuplicatorTable::PerHom(tables)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::semiring::Value;

    fn rows(s: Semiring, vals: &[(u64, u64)]) -> Interpretation {
        let names = ["e1", "e2", "e3", "e4"];
        let mk = |v: u64| match &s {
            Semiring::Nat => Value::nat(v),
            Semiring::Boolean => Value::Bool(v != 0),
            _ => Value::Elem(v as u32),
        };
        let rows = vals.iter().enumerate().map(|(i, &(p, n))| (names[i], vec![mk(p), mk(n)])).collect();
        Interpretation::monadic(s.clone(), &["R"], rows).unwrap()
    }

    #[test]
    fn bijection_needs_equal_sizes() {
        let a = rows(Semiring::Nat, &[(1, 0)]);
        let b = rows(Semiring::Nat, &[(1, 0), (1, 0)]);
        let r = solve_bijection(&a, &[], &b, &[], 1).unwrap();
        assert_eq!(r.witness, Witness::Spoiler(SpoilerTrace::NoBijection));
        assert!(solve_ef(&a, &[], &b, &[], 1).unwrap().duplicator_wins());
        assert!(!solve_ef(&a, &[], &b, &[], 2).unwrap().duplicator_wins());
    }

    #[test]
    fn ef_zero_is_local_iso() {
        let a = rows(Semiring::Nat, &[(1, 0), (2, 0)]);
        let b = rows(Semiring::Nat, &[(2, 0), (1, 0)]);
        assert!(solve_ef(&a, &[0], &b, &[1], 0).unwrap().duplicator_wins());
        assert!(!solve_ef(&a, &[0], &b, &[0], 0).unwrap().duplicator_wins());
    }

    #[test]
    fn counting_between_games() {
        let a = rows(Semiring::Nat, &[(1, 0), (1, 0), (2, 0)]);
        let b = rows(Semiring::Nat, &[(1, 0), (2, 0), (2, 0)]);
        assert!(solve_ef(&a, &[], &b, &[], 1).unwrap().duplicator_wins());
        assert!(!solve_ef(&a, &[], &b, &[], 2).unwrap().duplicator_wins());
        assert!(solve_counting(&a, &[], &b, &[], 1, 1).unwrap().duplicator_wins());
        assert!(!solve_counting(&a, &[], &b, &[], 1, 2).unwrap().duplicator_wins());
        assert!(!solve_bijection(&a, &[], &b, &[], 1).unwrap().duplicator_wins());
        assert!(!solve_unbounded(&a, &b).unwrap().duplicator_wins());
    }

    #[test]
    fn one_sided_boolean_rows() {
        let a = rows(Semiring::Boolean, &[(1, 0)]);
        let b = rows(Semiring::Boolean, &[(1, 1)]);
        assert!(solve_one_sided(&a, &[0], &b, &[0], 0).unwrap().duplicator_wins());
        assert!(!solve_one_sided(&b, &[0], &a, &[0], 0).unwrap().duplicator_wins());
    }
}
