//! Finite semiring interpretations: total maps from instantiated positive and
//! negated literals to semiring values.

mod parse;

use std::fmt;

use crate::error::{Error, Result};
use crate::semiring::{Semiring, SemiringHom, Value};

pub use parse::{parse_interpretation, parse_interpretation_with, parse_semiring};

/// Relation names with their arities, in declaration order.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Vocabulary {
    rels: Vec<(String, usize)>,
}

impl Vocabulary {
    pub fn new<S: Into<String>>(rels: impl IntoIterator<Item = (S, usize)>) -> Result<Self> {
        let rels: Vec<(String, usize)> = rels.into_iter().map(|(n, a)| (n.into(), a)).collect();
        for (i, (name, arity)) in rels.iter().enumerate() {
            if *arity == 0 {
                return Err(Error::invalid(format!("relation {name} must have positive arity")));
            }
            if rels[..i].iter().any(|(n, _)| n == name) {
                return Err(Error::invalid(format!("duplicate relation {name}")));
            }
        }
        Ok(Vocabulary { rels })
    }

    /// A vocabulary of unary relations.
    pub fn unary(names: &[&str]) -> Self {
        Vocabulary::new(names.iter().map(|n| (*n, 1))).expect("distinct unary names")
    }

    pub fn relations(&self) -> &[(String, usize)] {
        &self.rels
    }

    pub fn len(&self) -> usize {
        self.rels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rels.is_empty()
    }

    pub fn index(&self, name: &str) -> Option<usize> {
        self.rels.iter().position(|(n, _)| n == name)
    }

    pub fn arity(&self, rel: usize) -> usize {
        self.rels[rel].1
    }

    pub fn name(&self, rel: usize) -> &str {
        &self.rels[rel].0
    }
}

/// A map from source tuple positions to target elements, as ordered pairs.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PartialMap {
    pub pairs: Vec<(usize, usize)>,
}

impl PartialMap {
    pub fn sources(&self) -> Vec<usize> {
        self.pairs.iter().map(|p| p.0).collect()
    }

    pub fn targets(&self) -> Vec<usize> {
        self.pairs.iter().map(|p| p.1).collect()
    }

    pub fn identity(n: usize) -> Self {
        PartialMap { pairs: (0..n).map(|i| (i, i)).collect() }
    }
}

/// A total assignment of values to the literals over a finite universe.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Interpretation {
    semiring: Semiring,
    vocab: Vocabulary,
    universe: Vec<String>,
    /// Per relation: positive and negated values, indexed by tuple in
    /// mixed radix over the universe.
    values: Vec<[Vec<Value>; 2]>,
}

impl Interpretation {
    pub fn builder(semiring: Semiring, vocab: Vocabulary, universe: Vec<String>) -> Builder {
        Builder::new(semiring, vocab, universe)
    }

    /// A monadic table: each row lists the values of `R1..Rk` followed by
    /// `!R1..!Rk` for one element.
    pub fn monadic(semiring: Semiring, rels: &[&str], rows: Vec<(&str, Vec<Value>)>) -> Result<Self> {
        let vocab = Vocabulary::unary(rels);
        let universe = rows.iter().map(|(n, _)| n.to_string()).collect();
        let mut b = Builder::new(semiring, vocab, universe);
        for (a, (_, vals)) in rows.into_iter().enumerate() {
            if vals.len() != 2 * rels.len() {
                return Err(Error::invalid(format!("row {a} needs {} values", 2 * rels.len())));
            }
            for (i, v) in vals.into_iter().enumerate() {
                b.set_index(i % rels.len(), i < rels.len(), &[a], v)?;
            }
        }
        b.build()
    }

    pub fn semiring(&self) -> &Semiring {
        &self.semiring
    }

    pub fn vocab(&self) -> &Vocabulary {
        &self.vocab
    }

    pub fn universe(&self) -> &[String] {
        &self.universe
    }

    pub fn size(&self) -> usize {
        self.universe.len()
    }

    pub fn element(&self, name: &str) -> Option<usize> {
        self.universe.iter().position(|n| n == name)
    }

    fn offset(&self, tuple: &[usize]) -> usize {
        tuple.iter().fold(0, |acc, &a| acc * self.universe.len() + a)
    }

    /// The value of the literal `R(tuple)` or `!R(tuple)`.
    pub fn lit(&self, rel: usize, positive: bool, tuple: &[usize]) -> &Value {
        debug_assert_eq!(tuple.len(), self.vocab.arity(rel));
        &self.values[rel][usize::from(!positive)][self.offset(tuple)]
    }

    /// All instantiated literals as `(relation, positive, tuple, value)`.
    pub fn literals(&self) -> Vec<(usize, bool, Vec<usize>, &Value)> {
        let mut out = Vec::new();
        for rel in 0..self.vocab.len() {
            for positive in [true, false] {
                for tuple in tuples(self.size(), self.vocab.arity(rel)) {
                    let v = self.lit(rel, positive, &tuple);
                    out.push((rel, positive, tuple, v));
                }
            }
        }
        out
    }

    /// Applies `f` to every literal value, producing an interpretation over `target`.
    pub fn map_values(&self, target: Semiring, f: impl Fn(&Value) -> Result<Value>) -> Result<Self> {
        let mut values = Vec::with_capacity(self.values.len());
        for [pos, neg] in &self.values {
            let map = |vs: &Vec<Value>| -> Result<Vec<Value>> {
                vs.iter()
                    .map(|v| {
                        let out = f(v)?;
                        target.check(&out)?;
                        Ok(out)
                    })
                    .collect()
            };
            values.push([map(pos)?, map(neg)?]);
        }
        Ok(Interpretation { semiring: target, vocab: self.vocab.clone(), universe: self.universe.clone(), values })
    }

    /// Returns a copy with one literal value replaced.
    pub fn with_literal(&self, rel: usize, positive: bool, tuple: &[usize], v: Value) -> Result<Self> {
        self.semiring.check(&v)?;
        let mut out = self.clone();
        let off = out.offset(tuple);
        out.values[rel][usize::from(!positive)][off] = v;
        Ok(out)
    }

    /// Renders the interpretation in the file format.
    pub fn to_text(&self) -> String {
        let mut out = format!("semiring {}\nvocab", self.semiring_file_name());
        for (n, a) in self.vocab.relations() {
            out += &format!(" {n}/{a}");
        }
        out += &format!("\nuniverse {}\n", self.universe.join(" "));
        for (rel, positive, tuple, v) in self.literals() {
            let args: Vec<&str> = tuple.iter().map(|&a| self.universe[a].as_str()).collect();
            out += &format!(
                "lit {}{}({}) = {}\n",
                if positive { "" } else { "!" },
                self.vocab.name(rel),
                args.join(","),
                self.semiring.format_value(v)
            );
        }
        out
    }

    fn semiring_file_name(&self) -> String {
        match &self.semiring {
            Semiring::Table(_) => "table:<inline>".into(),
            s => s.name(),
        }
    }
}

impl fmt::Display for Interpretation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}

/// All tuples of length `k` over `0..n` in lexicographic order.
pub fn tuples(n: usize, k: usize) -> impl Iterator<Item = Vec<usize>> {
    let total = n.checked_pow(k as u32).unwrap_or(usize::MAX);
    let total = if n == 0 && k == 0 { 1 } else { total };
    (0..total).map(move |mut idx| {
        let mut t = vec![0; k];
        for slot in t.iter_mut().rev() {
            *slot = idx % n.max(1);
            idx /= n.max(1);
        }
        t
    })
}

/// Incrementally fills in literal values.
pub struct Builder {
    semiring: Semiring,
    vocab: Vocabulary,
    universe: Vec<String>,
    values: Vec<[Vec<Option<Value>>; 2]>,
    allow_empty: bool,
    default_complement: bool,
}

impl Builder {
    pub fn new(semiring: Semiring, vocab: Vocabulary, universe: Vec<String>) -> Self {
        let n = universe.len();
        let values = vocab
            .relations()
            .iter()
            .map(|(_, a)| {
                let len = n.pow(*a as u32);
                [vec![None; len], vec![None; len]]
            })
            .collect();
        Builder { semiring, vocab, universe, values, allow_empty: false, default_complement: false }
    }

    /// Permits an empty universe (empty sums are 0, empty products 1).
    pub fn allow_empty(mut self, yes: bool) -> Self {
        self.allow_empty = yes;
        self
    }

    /// Unset positive literals become 0 and unset negated literals become 1.
    pub fn default_complement(mut self, yes: bool) -> Self {
        self.default_complement = yes;
        self
    }

    pub fn set_index(&mut self, rel: usize, positive: bool, tuple: &[usize], v: Value) -> Result<()> {
        self.semiring.check(&v)?;
        if rel >= self.vocab.len() || tuple.len() != self.vocab.arity(rel) {
            return Err(Error::invalid("literal does not match the vocabulary"));
        }
        let n = self.universe.len();
        if tuple.iter().any(|&a| a >= n) {
            return Err(Error::invalid("tuple element outside the universe"));
        }
        let off = tuple.iter().fold(0, |acc, &a| acc * n + a);
        self.values[rel][usize::from(!positive)][off] = Some(v);
        Ok(())
    }

    pub fn set(&mut self, rel: &str, positive: bool, args: &[&str], v: Value) -> Result<()> {
        let r = self.vocab.index(rel).ok_or_else(|| Error::invalid(format!("unknown relation {rel}")))?;
        let tuple = args
            .iter()
            .map(|a| {
                self.universe
                    .iter()
                    .position(|u| u == a)
                    .ok_or_else(|| Error::invalid(format!("unknown element {a}")))
            })
            .collect::<Result<Vec<_>>>()?;
        self.set_index(r, positive, &tuple, v)
    }

    pub fn build(self) -> Result<Interpretation> {
        if self.universe.is_empty() && !self.allow_empty {
            return Err(Error::invalid("empty universe (enable it explicitly)"));
        }
        for (i, u) in self.universe.iter().enumerate() {
            if self.universe[..i].contains(u) {
                return Err(Error::invalid(format!("duplicate element {u}")));
            }
        }
        let n = self.universe.len();
        let mut values = Vec::new();
        for (rel, slots) in self.values.into_iter().enumerate() {
            let mut pair: [Vec<Value>; 2] = [Vec::new(), Vec::new()];
            for (side, vs) in slots.into_iter().enumerate() {
                for (off, v) in vs.into_iter().enumerate() {
                    let v = match v {
                        Some(v) => v,
                        None if self.default_complement => self.semiring.from_bool(side == 1),
                        None => {
                            let arity = self.vocab.arity(rel);
                            let tuple: Vec<String> = tuples(n, arity)
                                .nth(off)
                                .expect("offset in range")
                                .iter()
                                .map(|&a| self.universe[a].clone())
                                .collect();
                            return Err(Error::invalid(format!(
                                "missing value for {}{}({})",
                                if side == 0 { "" } else { "!" },
                                self.vocab.name(rel),
                                tuple.join(",")
                            )));
                        }
                    };
                    pair[side].push(v);
                }
            }
            values.push(pair);
        }
        Ok(Interpretation { semiring: self.semiring, vocab: self.vocab, universe: self.universe, values })
    }
}

/// Exactly one of each complementary pair of literals is zero.
pub fn is_model_defining(pi: &Interpretation) -> bool {
    let zero = pi.semiring.zero();
    (0..pi.vocab.len()).all(|rel| {
        tuples(pi.size(), pi.vocab.arity(rel)).all(|t| {
            (*pi.lit(rel, true, &t) == zero) != (*pi.lit(rel, false, &t) == zero)
        })
    })
}

pub(crate) fn same_signature(a: &Interpretation, b: &Interpretation) -> Result<()> {
    if a.vocab != b.vocab {
        return Err(Error::invalid("interpretations have different vocabularies"));
    }
    if a.semiring != b.semiring {
        return Err(Error::invalid(format!(
            "interpretations are over different semirings ({} vs {})",
            a.semiring, b.semiring
        )));
    }
    Ok(())
}

/// Compares the literals over `ā` and `b̄` with `cmp`, and the equality
/// patterns exactly. When `only_last` is set, only tuples mentioning the last
/// position are inspected (the rest is assumed checked already).
pub(crate) fn tuple_maps_agree(
    pa: &Interpretation,
    a: &[usize],
    pb: &Interpretation,
    b: &[usize],
    only_last: bool,
    cmp: &mut dyn FnMut(&Value, &Value) -> bool,
) -> bool {
    let len = a.len();
    if len == 0 {
        return true;
    }
    let last = len - 1;
    for i in 0..len {
        let js = if only_last { last..len } else { 0..len };
        for j in js {
            if (a[i] == a[j]) != (b[i] == b[j]) {
                return false;
            }
        }
    }
    let mut ta = Vec::new();
    let mut tb = Vec::new();
    for rel in 0..pa.vocab.len() {
        let arity = pa.vocab.arity(rel);
        for idx in tuples(len, arity) {
            if only_last && !idx.contains(&last) {
                continue;
            }
            ta.clear();
            tb.clear();
            ta.extend(idx.iter().map(|&i| a[i]));
            tb.extend(idx.iter().map(|&i| b[i]));
            for positive in [true, false] {
                if !cmp(pa.lit(rel, positive, &ta), pb.lit(rel, positive, &tb)) {
                    return false;
                }
            }
        }
    }
    true
}

/// `ā ↦ b̄` is well defined, injective and preserves every literal value.
pub fn local_iso(pa: &Interpretation, a: &[usize], pb: &Interpretation, b: &[usize]) -> Result<bool> {
    same_signature(pa, pb)?;
    if a.len() != b.len() {
        return Err(Error::invalid("tuples of different length"));
    }
    Ok(tuple_maps_agree(pa, a, pb, b, false, &mut |x, y| x == y))
}

/// Searches for an isomorphism by backtracking over elements with equal
/// diagonal literal profiles.
pub fn find_isomorphism(pa: &Interpretation, pb: &Interpretation) -> Result<Option<PartialMap>> {
    same_signature(pa, pb)?;
    let n = pa.size();
    if n != pb.size() {
        return Ok(None);
    }
    let profile = |pi: &Interpretation, e: usize| -> Vec<Value> {
        let mut out = Vec::new();
        for rel in 0..pi.vocab.len() {
            let t = vec![e; pi.vocab.arity(rel)];
            out.push(pi.lit(rel, true, &t).clone());
            out.push(pi.lit(rel, false, &t).clone());
        }
        out
    };
    let pa_prof: Vec<Vec<Value>> = (0..n).map(|e| profile(pa, e)).collect();
    let pb_prof: Vec<Vec<Value>> = (0..n).map(|e| profile(pb, e)).collect();
    let mut a = Vec::with_capacity(n);
    let mut b = Vec::with_capacity(n);
    let mut used = vec![false; n];

    fn search(
        pa: &Interpretation,
        pb: &Interpretation,
        pa_prof: &[Vec<Value>],
        pb_prof: &[Vec<Value>],
        a: &mut Vec<usize>,
        b: &mut Vec<usize>,
        used: &mut [bool],
    ) -> bool {
        let i = a.len();
        if i == pa.size() {
            return true;
        }
        for j in 0..pb.size() {
            if used[j] || pa_prof[i] != pb_prof[j] {
                continue;
            }
            a.push(i);
            b.push(j);
            if tuple_maps_agree(pa, a, pb, b, true, &mut |x, y| x == y) {
                used[j] = true;
                if search(pa, pb, pa_prof, pb_prof, a, b, used) {
                    return true;
                }
                used[j] = false;
            }
            a.pop();
            b.pop();
        }
        false
    }

    if search(pa, pb, &pa_prof, &pb_prof, &mut a, &mut b, &mut used) {
        Ok(Some(PartialMap { pairs: a.into_iter().zip(b).collect() }))
    } else {
        Ok(None)
    }
}

/// `h ∘ π` over the same universe and vocabulary.
pub fn compose_hom_interp(h: &SemiringHom, pi: &Interpretation) -> Result<Interpretation> {
    if h.source != pi.semiring {
        return Err(Error::invalid(format!(
            "homomorphism source {} does not match interpretation semiring {}",
            h.source, pi.semiring
        )));
    }
    pi.map_values(h.target.clone(), |v| h.apply(v))
}
