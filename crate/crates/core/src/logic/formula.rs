use std::collections::BTreeSet;
use std::fmt;
use std::sync::Arc;

/// Variable names are shared strings.
pub type Var = Arc<str>;

pub fn var(name: &str) -> Var {
    Arc::from(name)
}

/// The `i`-th variable of the canonical pool `x1, x2, ...` (zero-based `i`).
pub fn pool_var(i: usize) -> Var {
    var(&format!("x{}", i + 1))
}

/// A relational atom `R(x, y, ...)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Atom {
    pub rel: Arc<str>,
    pub args: Vec<Var>,
}

impl Atom {
    pub fn new(rel: &str, args: &[Var]) -> Self {
        Atom { rel: Arc::from(rel), args: args.to_vec() }
    }
}

/// Which junction a repetition node repeats.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Junction {
    Or,
    And,
}

/// A first-order formula in negation normal form.
///
/// `Repeat` stands for a disjunction (or conjunction) of `count` copies of
/// its body; it evaluates by repeated addition (or exponentiation) and is
/// expanded when printed.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Formula {
    Pos(Atom),
    Neg(Atom),
    Eq(Var, Var),
    Neq(Var, Var),
    And(Vec<Formula>),
    Or(Vec<Formula>),
    Exists(Var, Arc<Formula>),
    Forall(Var, Arc<Formula>),
    Repeat { op: Junction, count: u64, body: Arc<Formula> },
}

impl Formula {
    pub fn pos(rel: &str, args: &[Var]) -> Formula {
        Formula::Pos(Atom::new(rel, args))
    }

    pub fn neg(rel: &str, args: &[Var]) -> Formula {
        Formula::Neg(Atom::new(rel, args))
    }

    pub fn literal(rel: &str, positive: bool, args: &[Var]) -> Formula {
        if positive {
            Formula::pos(rel, args)
        } else {
            Formula::neg(rel, args)
        }
    }

    /// Conjunction; a single conjunct is returned unchanged.
    pub fn and(mut children: Vec<Formula>) -> Formula {
        if children.len() == 1 {
            children.pop().expect("one child")
        } else {
            Formula::And(children)
        }
    }

    /// Disjunction; a single disjunct is returned unchanged.
    pub fn or(mut children: Vec<Formula>) -> Formula {
        if children.len() == 1 {
            children.pop().expect("one child")
        } else {
            Formula::Or(children)
        }
    }

    pub fn exists(v: Var, body: Formula) -> Formula {
        Formula::Exists(v, Arc::new(body))
    }

    pub fn forall(v: Var, body: Formula) -> Formula {
        Formula::Forall(v, Arc::new(body))
    }

    /// `count` copies of `body` joined by `op`; small counts stay explicit.
    pub fn repeat(op: Junction, count: u64, body: Formula) -> Formula {
        if count == 1 {
            body
        } else {
            Formula::Repeat { op, count, body: Arc::new(body) }
        }
    }

    pub fn truth() -> Formula {
        Formula::And(Vec::new())
    }

    pub fn falsity() -> Formula {
        Formula::Or(Vec::new())
    }

    /// Number of syntax nodes (a repetition node counts once plus its body).
    pub fn size(&self) -> usize {
        match self {
            Formula::Pos(_) | Formula::Neg(_) | Formula::Eq(..) | Formula::Neq(..) => 1,
            Formula::And(cs) | Formula::Or(cs) => 1 + cs.iter().map(Formula::size).sum::<usize>(),
            Formula::Exists(_, b) | Formula::Forall(_, b) | Formula::Repeat { body: b, .. } => 1 + b.size(),
        }
    }

    pub fn free_vars(&self) -> BTreeSet<Var> {
        let mut out = BTreeSet::new();
        self.collect_free(&mut Vec::new(), &mut out);
        out
    }

    fn collect_free(&self, bound: &mut Vec<Var>, out: &mut BTreeSet<Var>) {
        let mut add = |v: &Var, bound: &Vec<Var>| {
            if !bound.contains(v) {
                out.insert(v.clone());
            }
        };
        match self {
            Formula::Pos(a) | Formula::Neg(a) => a.args.iter().for_each(|v| add(v, bound)),
            Formula::Eq(x, y) | Formula::Neq(x, y) => {
                add(x, bound);
                add(y, bound);
            }
            Formula::And(cs) | Formula::Or(cs) => cs.iter().for_each(|c| c.collect_free(bound, out)),
            Formula::Exists(v, b) | Formula::Forall(v, b) => {
                bound.push(v.clone());
                b.collect_free(bound, out);
                bound.pop();
            }
            Formula::Repeat { body, .. } => body.collect_free(bound, out),
        }
    }

    /// Replaces repetition nodes by explicit copies.
    pub fn expand(&self) -> Formula {
        match self {
            Formula::Pos(_) | Formula::Neg(_) | Formula::Eq(..) | Formula::Neq(..) => self.clone(),
            Formula::And(cs) => Formula::And(cs.iter().map(Formula::expand).collect()),
            Formula::Or(cs) => Formula::Or(cs.iter().map(Formula::expand).collect()),
            Formula::Exists(v, b) => Formula::exists(v.clone(), b.expand()),
            Formula::Forall(v, b) => Formula::forall(v.clone(), b.expand()),
            Formula::Repeat { op, count, body } => {
                let b = body.expand();
                let copies = vec![b; *count as usize];
                match op {
                    Junction::Or => Formula::or(copies),
                    Junction::And => Formula::and(copies),
                }
            }
        }
    }

    /// Size of the fully expanded formula, saturating.
    pub fn expanded_size(&self) -> u128 {
        match self {
            Formula::Pos(_) | Formula::Neg(_) | Formula::Eq(..) | Formula::Neq(..) => 1,
            Formula::And(cs) | Formula::Or(cs) => {
                cs.iter().fold(1u128, |acc, c| acc.saturating_add(c.expanded_size()))
            }
            Formula::Exists(_, b) | Formula::Forall(_, b) => 1u128.saturating_add(b.expanded_size()),
            Formula::Repeat { count, body, .. } => {
                1u128.saturating_add(u128::from(*count).saturating_mul(body.expanded_size()))
            }
        }
    }

    /// Text in the compact form, with repetitions written as `[φ] |* n` or `[φ] &* n`.
    pub fn compact(&self) -> String {
        let mut s = String::new();
        write_formula(self, &mut s, true);
        s
    }
}

/// Maximal quantifier nesting depth.
pub fn quantifier_rank(phi: &Formula) -> usize {
    match phi {
        Formula::Pos(_) | Formula::Neg(_) | Formula::Eq(..) | Formula::Neq(..) => 0,
        Formula::And(cs) | Formula::Or(cs) => cs.iter().map(quantifier_rank).max().unwrap_or(0),
        Formula::Exists(_, b) | Formula::Forall(_, b) => 1 + quantifier_rank(b),
        Formula::Repeat { body, .. } => quantifier_rank(body),
    }
}

/// Prints in the concrete grammar, expanding repetition nodes.
pub fn print_formula(phi: &Formula) -> String {
    let mut s = String::new();
    write_formula(phi, &mut s, false);
    s
}

fn write_atom(a: &Atom, out: &mut String) {
    out.push_str(&a.rel);
    out.push('(');
    for (i, v) in a.args.iter().enumerate() {
        if i > 0 {
            out.push(',');
        }
        out.push_str(v);
    }
    out.push(')');
}

fn write_child(phi: &Formula, out: &mut String, compact: bool, parent: Junction) {
    let wrap = match phi {
        Formula::And(cs) => !cs.is_empty() && parent == Junction::And,
        Formula::Or(cs) => !cs.is_empty(),
        Formula::Exists(..) | Formula::Forall(..) => true,
        Formula::Repeat { count, op, .. } => {
            if compact {
                true
            } else {
                // Expanded repetition prints as its junction.
                let as_junction = if *count == 1 { None } else { Some(*op) };
                match as_junction {
                    Some(Junction::And) => parent == Junction::And,
                    Some(Junction::Or) => *count > 0,
                    None => return write_child(&phi.expand(), out, compact, parent),
                }
            }
        }
        _ => false,
    };
    if wrap {
        out.push('(');
        write_formula(phi, out, compact);
        out.push(')');
    } else {
        write_formula(phi, out, compact);
    }
}

fn write_formula(phi: &Formula, out: &mut String, compact: bool) {
    match phi {
        Formula::Pos(a) => write_atom(a, out),
        Formula::Neg(a) => {
            out.push('!');
            write_atom(a, out);
        }
        Formula::Eq(x, y) => {
            out.push_str(x);
            out.push_str(" = ");
            out.push_str(y);
        }
        Formula::Neq(x, y) => {
            out.push_str(x);
            out.push_str(" != ");
            out.push_str(y);
        }
        Formula::And(cs) if cs.is_empty() => out.push_str("true"),
        Formula::Or(cs) if cs.is_empty() => out.push_str("false"),
        Formula::And(cs) | Formula::Or(cs) => {
            let (op, sep) = match phi {
                Formula::And(_) => (Junction::And, " & "),
                _ => (Junction::Or, " | "),
            };
            for (i, c) in cs.iter().enumerate() {
                if i > 0 {
                    out.push_str(sep);
                }
                write_child(c, out, compact, op);
            }
        }
        Formula::Exists(v, b) | Formula::Forall(v, b) => {
            out.push_str(if matches!(phi, Formula::Exists(..)) { "E " } else { "A " });
            out.push_str(v);
            out.push_str(". ");
            write_formula(b, out, compact);
        }
        Formula::Repeat { op, count, body } => {
            if compact {
                out.push('[');
                write_formula(body, out, compact);
                out.push_str(match op {
                    Junction::Or => "] |* ",
                    Junction::And => "] &* ",
                });
                out.push_str(&count.to_string());
            } else {
                let (j, sep) = match op {
                    Junction::Or => (Junction::Or, " | "),
                    Junction::And => (Junction::And, " & "),
                };
                match count {
                    0 => out.push_str(if j == Junction::Or { "false" } else { "true" }),
                    1 => write_formula(body, out, compact),
                    _ => {
                        for i in 0..*count {
                            if i > 0 {
                                out.push_str(sep);
                            }
                            write_child(body, out, compact, j);
                        }
                    }
                }
            }
        }
    }
}

impl fmt::Display for Formula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&print_formula(self))
    }
}
