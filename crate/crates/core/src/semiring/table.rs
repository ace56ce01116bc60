use thiserror::Error;

use crate::error::{Error, Result};

/// Unvalidated operation tables over a named carrier.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RawTable {
    pub carrier: Vec<String>,
    pub zero: String,
    pub one: String,
    /// `add[s][t]` names `s + t`.
    pub add: Vec<Vec<String>>,
    pub mul: Vec<Vec<String>>,
}

/// One variant per violated axiom.
#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum TableError {
    #[error("empty carrier")]
    EmptyCarrier,
    #[error("duplicate carrier element `{0}`")]
    DuplicateElement(String),
    #[error("unknown carrier element `{0}`")]
    UnknownElement(String),
    #[error("{0} table is not {1}x{1}")]
    Shape(&'static str, usize),
    #[error("zero and one coincide")]
    ZeroIsOne,
    #[error("addition is not commutative at ({0}, {1})")]
    AddNotCommutative(String, String),
    #[error("addition is not associative at ({0}, {1}, {2})")]
    AddNotAssociative(String, String, String),
    #[error("zero is not an additive identity at {0}")]
    ZeroNotIdentity(String),
    #[error("multiplication is not commutative at ({0}, {1})")]
    MulNotCommutative(String, String),
    #[error("multiplication is not associative at ({0}, {1}, {2})")]
    MulNotAssociative(String, String, String),
    #[error("one is not a multiplicative identity at {0}")]
    OneNotIdentity(String),
    #[error("zero does not annihilate {0}")]
    NotAnnihilating(String),
    #[error("multiplication does not distribute over addition at ({0}, {1}, {2})")]
    NotDistributive(String, String, String),
    #[error("natural order is not antisymmetric: {0} <= {1} <= {0}")]
    NotNaturallyOrdered(String, String),
}

/// A validated finite semiring given by tables over carrier indices.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct TableSemiring {
    carrier: Vec<String>,
    add: Vec<Vec<u32>>,
    mul: Vec<Vec<u32>>,
    zero: u32,
    one: u32,
    leq: Vec<Vec<bool>>,
}

impl TableSemiring {
    pub fn carrier(&self) -> &[String] {
        &self.carrier
    }

    pub fn len(&self) -> usize {
        self.carrier.len()
    }

    pub fn is_empty(&self) -> bool {
        self.carrier.is_empty()
    }

    pub fn zero(&self) -> u32 {
        self.zero
    }

    pub fn one(&self) -> u32 {
        self.one
    }

    pub fn add(&self, s: u32, t: u32) -> u32 {
        self.add[s as usize][t as usize]
    }

    pub fn mul(&self, s: u32, t: u32) -> u32 {
        self.mul[s as usize][t as usize]
    }

    pub fn leq(&self, s: u32, t: u32) -> bool {
        self.leq[s as usize][t as usize]
    }

    pub fn index_of(&self, name: &str) -> Option<u32> {
        self.carrier.iter().position(|c| c == name).map(|i| i as u32)
    }

    /// Builds tables from index functions; used for generated semirings.
    pub fn from_fns(
        carrier: Vec<String>,
        zero: u32,
        one: u32,
        add: impl Fn(u32, u32) -> u32,
        mul: impl Fn(u32, u32) -> u32,
    ) -> Result<TableSemiring, TableError> {
        let k = carrier.len() as u32;
        let name = |i: u32| carrier[i as usize].clone();
        let raw = RawTable {
            zero: name(zero),
            one: name(one),
            add: (0..k).map(|s| (0..k).map(|t| name(add(s, t))).collect()).collect(),
            mul: (0..k).map(|s| (0..k).map(|t| name(mul(s, t))).collect()).collect(),
            carrier: carrier.clone(),
        };
        validate_table_semiring(&raw)
    }

    /// Renders the tables in the file format read by [`parse_table_semiring`].
    pub fn to_text(&self) -> String {
        let name = |i: u32| self.carrier[i as usize].as_str();
        let mut out = format!("carrier {}\nzero {}\none {}\nadd\n", self.carrier.join(" "), name(self.zero), name(self.one));
        for row in &self.add {
            out += &row.iter().map(|&i| name(i)).collect::<Vec<_>>().join(" ");
            out.push('\n');
        }
        out += "mul\n";
        for row in &self.mul {
            out += &row.iter().map(|&i| name(i)).collect::<Vec<_>>().join(" ");
            out.push('\n');
        }
        out
    }
}

/// Checks every semiring axiom plus antisymmetry of the natural order.
pub fn validate_table_semiring(raw: &RawTable) -> Result<TableSemiring, TableError> {
    let k = raw.carrier.len();
    if k == 0 {
        return Err(TableError::EmptyCarrier);
    }
    for (i, c) in raw.carrier.iter().enumerate() {
        if raw.carrier[..i].contains(c) {
            return Err(TableError::DuplicateElement(c.clone()));
        }
    }
    let index = |name: &str| {
        raw.carrier
            .iter()
            .position(|c| c == name)
            .map(|i| i as u32)
            .ok_or_else(|| TableError::UnknownElement(name.to_string()))
    };
    let table = |rows: &[Vec<String>], what: &'static str| -> Result<Vec<Vec<u32>>, TableError> {
        if rows.len() != k || rows.iter().any(|r| r.len() != k) {
            return Err(TableError::Shape(what, k));
        }
        rows.iter().map(|r| r.iter().map(|c| index(c)).collect()).collect()
    };
    let add = table(&raw.add, "add")?;
    let mul = table(&raw.mul, "mul")?;
    let zero = index(&raw.zero)?;
    let one = index(&raw.one)?;
    if zero == one {
        return Err(TableError::ZeroIsOne);
    }
    let n = |i: usize| raw.carrier[i].clone();
    let ad = |a: u32, b: u32| add[a as usize][b as usize];
    let mu = |a: u32, b: u32| mul[a as usize][b as usize];
    let all = 0..k as u32;
    for s in all.clone() {
        for t in all.clone() {
            if ad(s, t) != ad(t, s) {
                return Err(TableError::AddNotCommutative(n(s as usize), n(t as usize)));
            }
        }
    }
    for s in all.clone() {
        for t in all.clone() {
            for r in all.clone() {
                if ad(ad(s, t), r) != ad(s, ad(t, r)) {
                    return Err(TableError::AddNotAssociative(n(s as usize), n(t as usize), n(r as usize)));
                }
            }
        }
    }
    for s in all.clone() {
        if ad(zero, s) != s {
            return Err(TableError::ZeroNotIdentity(n(s as usize)));
        }
    }
    for s in all.clone() {
        for t in all.clone() {
            if mu(s, t) != mu(t, s) {
                return Err(TableError::MulNotCommutative(n(s as usize), n(t as usize)));
            }
        }
    }
    for s in all.clone() {
        for t in all.clone() {
            for r in all.clone() {
                if mu(mu(s, t), r) != mu(s, mu(t, r)) {
                    return Err(TableError::MulNotAssociative(n(s as usize), n(t as usize), n(r as usize)));
                }
            }
        }
    }
    for s in all.clone() {
        if mu(one, s) != s {
            return Err(TableError::OneNotIdentity(n(s as usize)));
        }
        if mu(zero, s) != zero {
            return Err(TableError::NotAnnihilating(n(s as usize)));
        }
    }
    for s in all.clone() {
        for t in all.clone() {
            for r in all.clone() {
                if mu(s, ad(t, r)) != ad(mu(s, t), mu(s, r)) {
                    return Err(TableError::NotDistributive(n(s as usize), n(t as usize), n(r as usize)));
                }
            }
        }
    }
    let mut leq = vec![vec![false; k]; k];
    for s in all.clone() {
        for r in all.clone() {
            leq[s as usize][ad(s, r) as usize] = true;
        }
    }
    for s in 0..k {
        for t in 0..k {
            if s != t && leq[s][t] && leq[t][s] {
                return Err(TableError::NotNaturallyOrdered(n(s), n(t)));
            }
        }
    }
    Ok(TableSemiring { carrier: raw.carrier.clone(), add, mul, zero, one, leq })
}

/// Parses the line-oriented table format (`carrier`, `zero`, `one`, then
/// `add` and `mul` each followed by `k` rows; `#` starts a comment).
pub fn parse_table_semiring(text: &str) -> Result<RawTable> {
    let mut carrier: Option<Vec<String>> = None;
    let (mut zero, mut one) = (None, None);
    let mut add = Vec::new();
    let mut mul = Vec::new();
    let mut section: Option<&str> = None;
    for (ln, line) in text.lines().enumerate() {
        let line = line.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let mut words = line.split_whitespace();
        let head = words.next().expect("non-empty line");
        let rest: Vec<String> = words.map(str::to_string).collect();
        let one_word = |rest: &[String]| -> Result<String> {
            match rest {
                [w] => Ok(w.clone()),
                _ => Err(Error::parse(ln + 1, 1, format!("`{head}` takes exactly one element"))),
            }
        };
        match head {
            "carrier" => {
                carrier = Some(rest);
                section = None;
            }
            "zero" => {
                zero = Some(one_word(&rest)?);
                section = None;
            }
            "one" => {
                one = Some(one_word(&rest)?);
                section = None;
            }
            "add" | "mul" => {
                section = Some(if head == "add" { "add" } else { "mul" });
                if !rest.is_empty() {
                    return Err(Error::parse(ln + 1, 1, "table rows start on the next line"));
                }
            }
            _ => {
                let row: Vec<String> = line.split_whitespace().map(str::to_string).collect();
                match section {
                    Some("add") => add.push(row),
                    Some("mul") => mul.push(row),
                    _ => return Err(Error::parse(ln + 1, 1, format!("unexpected `{head}`"))),
                }
            }
        }
    }
    let missing = |what: &str| Error::parse(0, 0, format!("missing `{what}`"));
    Ok(RawTable {
        carrier: carrier.ok_or_else(|| missing("carrier"))?,
        zero: zero.ok_or_else(|| missing("zero"))?,
        one: one.ok_or_else(|| missing("one"))?,
        add,
        mul,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn minmax_raw(k: u32) -> RawTable {
        let names: Vec<String> = (0..=k).map(|i| i.to_string()).collect();
        RawTable {
            carrier: names.clone(),
            zero: "0".into(),
            one: k.to_string(),
            add: (0..=k).map(|s| (0..=k).map(|t| s.max(t).to_string()).collect()).collect(),
            mul: (0..=k).map(|s| (0..=k).map(|t| s.min(t).to_string()).collect()).collect(),
        }
    }

    #[test]
    fn sigma4_is_valid() {
        let t = validate_table_semiring(&minmax_raw(3)).unwrap();
        assert_eq!(t.len(), 4);
        assert!(t.leq(1, 2) && !t.leq(2, 1));
    }

    #[test]
    fn zero_equals_one_rejected() {
        let mut raw = minmax_raw(3);
        raw.one = "0".into();
        assert_eq!(validate_table_semiring(&raw), Err(TableError::ZeroIsOne));
    }

    #[test]
    fn text_round_trip() {
        let t = validate_table_semiring(&minmax_raw(2)).unwrap();
        let raw = parse_table_semiring(&t.to_text()).unwrap();
        assert_eq!(validate_table_semiring(&raw).unwrap(), t);
    }

    #[test]
    fn integers_mod_two_not_naturally_ordered() {
        let t = TableSemiring::from_fns(vec!["0".into(), "1".into()], 0, 1, |a, b| (a + b) % 2, |a, b| a * b);
        assert!(matches!(t, Err(TableError::NotNaturallyOrdered(..))));
    }
}
