use std::collections::HashMap;

use super::formula::{var, Atom, Formula, Junction, Var};
use crate::error::{Error, Result};
use crate::interp::Interpretation;
use crate::semiring::Value;

/// A finite map from variables to universe indices.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Assignment {
    pairs: Vec<(Var, usize)>,
}

impl Assignment {
    pub fn new() -> Self {
        Assignment::default()
    }

    /// Binds variables to elements positionally.
    pub fn of(vars: &[Var], elems: &[usize]) -> Self {
        Assignment { pairs: vars.iter().cloned().zip(elems.iter().copied()).collect() }
    }

    pub fn bind(mut self, v: &str, a: usize) -> Self {
        self.pairs.retain(|(w, _)| &**w != v);
        self.pairs.push((var(v), a));
        self
    }

    pub fn get(&self, v: &str) -> Option<usize> {
        self.pairs.iter().rev().find(|(w, _)| &**w == v).map(|p| p.1)
    }

    pub fn pairs(&self) -> &[(Var, usize)] {
        &self.pairs
    }

    /// Parses `x=a1,y=a2` against the universe of `pi`.
    pub fn parse(pi: &Interpretation, text: &str) -> Result<Self> {
        let mut asg = Assignment::new();
        for item in text.split(',').map(str::trim).filter(|s| !s.is_empty()) {
            let (v, a) = item
                .split_once('=')
                .ok_or_else(|| Error::invalid(format!("expected VAR=ELEMENT, got `{item}`")))?;
            let a = a.trim();
            let idx = pi.element(a).ok_or_else(|| Error::invalid(format!("unknown element `{a}`")))?;
            asg = asg.bind(v.trim(), idx);
        }
        Ok(asg)
    }
}

struct Evaluator<'a> {
    pi: &'a Interpretation,
    memo: HashMap<(usize, Vec<usize>), Value>,
    free: HashMap<usize, Vec<Var>>,
}

impl Evaluator<'_> {
    fn lookup(env: &[(Var, usize)], v: &Var) -> Result<usize> {
        env.iter()
            .rev()
            .find(|(w, _)| w == v)
            .map(|p| p.1)
            .ok_or_else(|| Error::invalid(format!("unbound variable `{v}`")))
    }

    fn atom(&self, a: &Atom, positive: bool, env: &[(Var, usize)]) -> Result<Value> {
        let vocab = self.pi.vocab();
        let rel = vocab
            .index(&a.rel)
            .ok_or_else(|| Error::invalid(format!("unknown relation `{}`", a.rel)))?;
        if vocab.arity(rel) != a.args.len() {
            return Err(Error::invalid(format!(
                "relation `{}` has arity {}, used with {} arguments",
                a.rel,
                vocab.arity(rel),
                a.args.len()
            )));
        }
        let tuple = a.args.iter().map(|v| Self::lookup(env, v)).collect::<Result<Vec<_>>>()?;
        Ok(self.pi.lit(rel, positive, &tuple).clone())
    }

    fn eval(&mut self, phi: &Formula, env: &mut Vec<(Var, usize)>) -> Result<Value> {
        let s = self.pi.semiring();
        match phi {
            Formula::Pos(a) => self.atom(a, true, env),
            Formula::Neg(a) => self.atom(a, false, env),
            Formula::Eq(x, y) => Ok(s.from_bool(Self::lookup(env, x)? == Self::lookup(env, y)?)),
            Formula::Neq(x, y) => Ok(s.from_bool(Self::lookup(env, x)? != Self::lookup(env, y)?)),
            Formula::And(cs) => {
                let mut acc = s.one();
                for c in cs {
                    acc = s.mul(&acc, &self.eval(c, env)?)?;
                }
                Ok(acc)
            }
            Formula::Or(cs) => {
                let mut acc = s.zero();
                for c in cs {
                    acc = s.add(&acc, &self.eval(c, env)?)?;
                }
                Ok(acc)
            }
            Formula::Exists(..) | Formula::Forall(..) | Formula::Repeat { .. } => {
                let key = self.key(phi, env)?;
                if let Some(v) = self.memo.get(&key) {
                    return Ok(v.clone());
                }
                let v = self.eval_shared(phi, env)?;
                self.memo.insert(key, v.clone());
                Ok(v)
            }
        }
    }

    fn key(&mut self, phi: &Formula, env: &[(Var, usize)]) -> Result<(usize, Vec<usize>)> {
        let addr = phi as *const Formula as usize;
        let free = self.free.entry(addr).or_insert_with(|| phi.free_vars().into_iter().collect());
        let vals = free.iter().map(|v| Self::lookup(env, v)).collect::<Result<Vec<_>>>()?;
        Ok((addr, vals))
    }

    fn eval_shared(&mut self, phi: &Formula, env: &mut Vec<(Var, usize)>) -> Result<Value> {
        let s = self.pi.semiring().clone();
        match phi {
            Formula::Exists(v, b) | Formula::Forall(v, b) => {
                let exists = matches!(phi, Formula::Exists(..));
                let mut acc = if exists { s.zero() } else { s.one() };
                for a in 0..self.pi.size() {
                    env.push((v.clone(), a));
                    let r = self.eval(b, env);
                    env.pop();
                    let r = r?;
                    acc = if exists { s.add(&acc, &r)? } else { s.mul(&acc, &r)? };
                }
                Ok(acc)
            }
            Formula::Repeat { op, count, body } => {
                let b = self.eval(body, env)?;
                match op {
                    Junction::Or => s.nsum(&b, *count),
                    Junction::And => s.pow(&b, *count),
                }
            }
            _ => unreachable!("only shared nodes are memoized"),
        }
    }
}

/// The semiring value of `phi` under `asg`; quantifier and repetition nodes
/// are memoized per restriction of the assignment to their free variables.
pub fn evaluate(pi: &Interpretation, phi: &Formula, asg: &Assignment) -> Result<Value> {
    let mut ev = Evaluator { pi, memo: HashMap::new(), free: HashMap::new() };
    let mut env = asg.pairs.clone();
    ev.eval(phi, &mut env)
}

/// Evaluates with `vars[i]` bound to `elems[i]`.
pub fn evaluate_at(pi: &Interpretation, phi: &Formula, vars: &[Var], elems: &[usize]) -> Result<Value> {
    evaluate(pi, phi, &Assignment::of(vars, elems))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::logic::parse::parse_formula;
    use crate::semiring::Semiring;

    fn nat_intro() -> (Interpretation, Interpretation) {
        let row = |n: u64, m: u64| vec![Value::nat(n), Value::nat(m)];
        let a = Interpretation::monadic(Semiring::Nat, &["R"], vec![("a1", row(2, 0)), ("a2", row(2, 0)), ("a3", row(0, 1))]);
        let b = Interpretation::monadic(Semiring::Nat, &["R"], vec![("b1", row(1, 0)), ("b2", row(4, 0)), ("b3", row(0, 1))]);
        (a.unwrap(), b.unwrap())
    }

    #[test]
    fn existential_sums() {
        let (a, b) = nat_intro();
        let f = parse_formula("E x. R(x)").unwrap();
        assert_eq!(evaluate(&a, &f, &Assignment::new()).unwrap(), Value::nat(4));
        assert_eq!(evaluate(&b, &f, &Assignment::new()).unwrap(), Value::nat(5));
    }

    #[test]
    fn equality_is_crisp() {
        let (a, _) = nat_intro();
        let asg = Assignment::new().bind("x", 1);
        assert_eq!(evaluate(&a, &parse_formula("x = x").unwrap(), &asg).unwrap(), Value::nat(1));
        assert_eq!(evaluate(&a, &parse_formula("x != x").unwrap(), &asg).unwrap(), Value::nat(0));
        assert!(evaluate(&a, &parse_formula("x = y").unwrap(), &asg).is_err());
    }

    #[test]
    fn repetition_matches_expansion() {
        let (a, _) = nat_intro();
        let body = parse_formula("E y. R(y) | x = y").unwrap();
        for op in [Junction::Or, Junction::And] {
            let r = Formula::repeat(op, 3, body.clone());
            let asg = Assignment::new().bind("x", 0);
            assert_eq!(evaluate(&a, &r, &asg).unwrap(), evaluate(&a, &r.expand(), &asg).unwrap());
        }
    }

    #[test]
    fn arity_mismatch() {
        let (a, _) = nat_intro();
        let asg = Assignment::new().bind("x", 0);
        assert!(evaluate(&a, &parse_formula("R(x,x)").unwrap(), &asg).is_err());
    }
}
