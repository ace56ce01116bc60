use std::collections::HashSet;
use std::hash::Hash;

use super::formula::{pool_var, Formula, Var};
use crate::error::{Error, Result};
use crate::interp::{tuples, Vocabulary};

/// Default cap on the number of generated formulas across all levels.
pub const DEFAULT_FORMULA_CAP: usize = 2_000_000;

/// Compositional summaries attached to enumerated formulas.
///
/// A formula at depth `d` lives under `d` enumerator quantifiers; its
/// signature may depend on the values of those bound variables.
pub trait Signature {
    type Sig: Clone + Eq + Hash;
    fn atom(&mut self, depth: usize, phi: &Formula) -> Result<Self::Sig>;
    fn junction(&mut self, depth: usize, and: bool, children: &[&Self::Sig]) -> Result<Self::Sig>;
    fn quantifier(&mut self, depth: usize, exists: bool, body: &Self::Sig) -> Result<Self::Sig>;
    /// Whether formulas with an already seen signature are dropped.
    fn dedup(&self) -> bool;
}

/// Pure syntactic enumeration.
pub struct Syntactic;

impl Signature for Syntactic {
    type Sig = ();
    fn atom(&mut self, _: usize, _: &Formula) -> Result<()> {
        Ok(())
    }
    fn junction(&mut self, _: usize, _: bool, _: &[&()]) -> Result<()> {
        Ok(())
    }
    fn quantifier(&mut self, _: usize, _: bool, _: &()) -> Result<()> {
        Ok(())
    }
    fn dedup(&self) -> bool {
        false
    }
}

#[derive(Clone, Debug)]
pub struct Item<T> {
    pub formula: Formula,
    pub sig: T,
}

/// Size-by-size generator of canonical formulas.
///
/// Bound variables are drawn from `x1, x2, ...` (skipping free names) in
/// nesting order, so every formula has one canonical spelling. Junctions
/// have at least two distinct children sorted structurally; within one size
/// formulas come in structural order.
pub struct Enumerator<S: Signature> {
    vocab: Vocabulary,
    scope: Vec<Var>,
    nfree: usize,
    max_qr: usize,
    max_nodes: usize,
    levels: Vec<Vec<Vec<Item<S::Sig>>>>,
    seen: Vec<HashSet<S::Sig>>,
    size: usize,
    total: usize,
    cap: usize,
    ops: S,
}

impl<S: Signature> Enumerator<S> {
    pub fn new(vocab: &Vocabulary, free: &[Var], max_qr: usize, max_nodes: usize, ops: S) -> Self {
        let mut scope: Vec<Var> = free.to_vec();
        let mut i = 0;
        while scope.len() < free.len() + max_qr {
            let v = pool_var(i);
            i += 1;
            if !free.contains(&v) {
                scope.push(v);
            }
        }
        Enumerator {
            vocab: vocab.clone(),
            scope,
            nfree: free.len(),
            max_qr,
            max_nodes,
            levels: (0..=max_qr).map(|_| vec![Vec::new()]).collect(),
            seen: (0..=max_qr).map(|_| HashSet::new()).collect(),
            size: 0,
            total: 0,
            cap: DEFAULT_FORMULA_CAP,
            ops,
        }
    }

    pub fn with_cap(mut self, cap: usize) -> Self {
        self.cap = cap;
        self
    }

    pub fn ops(&self) -> &S {
        &self.ops
    }

    pub fn ops_mut(&mut self) -> &mut S {
        &mut self.ops
    }

    /// The variables in scope at depth `d`.
    pub fn scope(&self, d: usize) -> &[Var] {
        &self.scope[..self.nfree + d]
    }

    /// Generates the next size and returns its top-level formulas, or `None`
    /// once `max_nodes` is exhausted.
    pub fn next_size(&mut self) -> Result<Option<&[Item<S::Sig>]>> {
        if self.size >= self.max_nodes {
            return Ok(None);
        }
        self.size += 1;
        let s = self.size;
        for d in (0..=self.max_qr).rev() {
            let items = if s + d > self.max_nodes { Vec::new() } else { self.generate(d, s)? };
            self.levels[d].push(items);
        }
        Ok(Some(&self.levels[0][s]))
    }

    fn charge(&mut self, n: usize) -> Result<()> {
        self.total += n;
        if self.total > self.cap {
            return Err(Error::Resource(format!("more than {} enumerated formulas", self.cap)));
        }
        Ok(())
    }

    fn generate(&mut self, d: usize, s: usize) -> Result<Vec<Item<S::Sig>>> {
        let mut out: Vec<Item<S::Sig>> = Vec::new();
        if s == 1 {
            let scope = self.scope(d).to_vec();
            for rel in 0..self.vocab.len() {
                let name = self.vocab.name(rel).to_string();
                for t in tuples(scope.len(), self.vocab.arity(rel)) {
                    let args: Vec<Var> = t.iter().map(|&i| scope[i].clone()).collect();
                    for positive in [true, false] {
                        let f = Formula::literal(&name, positive, &args);
                        let sig = self.ops.atom(d, &f)?;
                        out.push(Item { formula: f, sig });
                    }
                }
            }
            for i in 0..scope.len() {
                for j in i..scope.len() {
                    for eq in [true, false] {
                        let (x, y) = (scope[i].clone(), scope[j].clone());
                        let f = if eq { Formula::Eq(x, y) } else { Formula::Neq(x, y) };
                        let sig = self.ops.atom(d, &f)?;
                        out.push(Item { formula: f, sig });
                    }
                }
            }
        } else {
            if d < self.max_qr {
                let v = self.scope[self.nfree + d].clone();
                let bodies: Vec<(Formula, S::Sig)> =
                    self.levels[d + 1][s - 1].iter().map(|it| (it.formula.clone(), it.sig.clone())).collect();
                self.charge(2 * bodies.len())?;
                for (body, bsig) in bodies {
                    for exists in [true, false] {
                        let sig = self.ops.quantifier(d, exists, &bsig)?;
                        let f = if exists {
                            Formula::exists(v.clone(), body.clone())
                        } else {
                            Formula::forall(v.clone(), body.clone())
                        };
                        out.push(Item { formula: f, sig });
                    }
                }
            }
            if s >= 3 {
                let mut combos = Vec::new();
                let mut cur = Vec::new();
                self.combos(d, s - 1, (1, 0), &mut cur, &mut combos);
                self.charge(2 * combos.len())?;
                for combo in combos {
                    let children: Vec<&Item<S::Sig>> =
                        combo.iter().map(|&(sz, i)| &self.levels[d][sz][i]).collect();
                    let sigs: Vec<&S::Sig> = children.iter().map(|c| &c.sig).collect();
                    let mut forms: Vec<Formula> = children.iter().map(|c| c.formula.clone()).collect();
                    forms.sort();
                    let and_sig = self.ops.junction(d, true, &sigs)?;
                    let or_sig = self.ops.junction(d, false, &sigs)?;
                    out.push(Item { formula: Formula::And(forms.clone()), sig: and_sig });
                    out.push(Item { formula: Formula::Or(forms), sig: or_sig });
                }
            }
        }
        if s == 1 {
            self.charge(out.len())?;
        }
        out.sort_by(|a, b| a.formula.cmp(&b.formula));
        if self.ops.dedup() {
            let seen = &mut self.seen[d];
            out.retain(|it| seen.insert(it.sig.clone()));
        }
        Ok(out)
    }

    /// Multisets of existing items (as strictly increasing `(size, index)`
    /// positions) with total size `budget` and at least two members.
    fn combos(
        &self,
        d: usize,
        budget: usize,
        from: (usize, usize),
        cur: &mut Vec<(usize, usize)>,
        out: &mut Vec<Vec<(usize, usize)>>,
    ) {
        if budget == 0 {
            if cur.len() >= 2 {
                out.push(cur.clone());
            }
            return;
        }
        let (mut sz, mut i) = from;
        while sz <= budget && sz < self.levels[d].len() {
            let level = &self.levels[d][sz];
            while i < level.len() {
                // A lone child is not a junction.
                if !(cur.is_empty() && sz == budget) {
                    cur.push((sz, i));
                    self.combos(d, budget - sz, (sz, i + 1), cur, out);
                    cur.pop();
                }
                i += 1;
            }
            sz += 1;
            i = 0;
        }
    }
}

/// All canonical formulas with the given free variables, quantifier rank at
/// most `max_qr` and at most `max_nodes` nodes, ordered by size and then
/// structurally.
pub fn enumerate_formulas(vocab: &Vocabulary, free: &[Var], max_qr: usize, max_nodes: usize) -> Result<Vec<Formula>> {
    let mut e = Enumerator::new(vocab, free, max_qr, max_nodes, Syntactic);
    let mut out = Vec::new();
    while let Some(items) = e.next_size()? {
        out.extend(items.iter().map(|it| it.formula.clone()));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::logic::formula::{quantifier_rank, var};
    use crate::logic::parse::parse_formula;

    #[test]
    fn atoms_only() {
        let fs = enumerate_formulas(&Vocabulary::unary(&["R"]), &[var("x")], 0, 1).unwrap();
        let got: Vec<String> = fs.iter().map(|f| f.to_string()).collect();
        assert_eq!(got, ["R(x)", "!R(x)", "x = x", "x != x"]);
        assert!(enumerate_formulas(&Vocabulary::unary(&["R"]), &[var("x")], 0, 0).unwrap().is_empty());
    }

    #[test]
    fn contains_neighbourhood_formula() {
        let vocab = Vocabulary::new([("E", 2)]).unwrap();
        let fs = enumerate_formulas(&vocab, &[var("x")], 1, 5).unwrap();
        let target = parse_formula("A x1. (x = x1 | E(x,x1))").unwrap();
        let target = match target {
            Formula::Forall(v, b) => match &*b {
                Formula::Or(cs) => {
                    let mut cs = cs.clone();
                    cs.sort();
                    Formula::forall(v, Formula::Or(cs))
                }
                _ => unreachable!(),
            },
            _ => unreachable!(),
        };
        assert!(fs.contains(&target));
    }

    #[test]
    fn bounded_and_unique() {
        let vocab = Vocabulary::unary(&["R"]);
        let fs = enumerate_formulas(&vocab, &[var("x")], 2, 6).unwrap();
        let set: HashSet<&Formula> = fs.iter().collect();
        assert_eq!(set.len(), fs.len());
        assert!(fs.iter().all(|f| f.size() <= 6 && quantifier_rank(f) <= 2));
        assert!(fs.windows(2).all(|w| (w[0].size(), &w[0]) < (w[1].size(), &w[1])));
        for f in &fs {
            assert_eq!(&parse_formula(&f.to_string()).unwrap(), f);
        }
    }
}
