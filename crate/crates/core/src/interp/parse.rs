use std::path::Path;

use super::{Builder, Interpretation, Vocabulary};
use crate::error::{Error, Result};
use crate::provenance::Quotient;
use crate::semiring::{parse_table_semiring, validate_table_semiring, Semiring};

/// Parses an interpretation file; `table:<path>` semirings are resolved
/// relative to the current directory.
pub fn parse_interpretation(text: &str) -> Result<Interpretation> {
    parse_interpretation_with(text, Path::new("."), false)
}

/// Parses an interpretation file, resolving table paths against `base`.
pub fn parse_interpretation_with(text: &str, base: &Path, allow_empty: bool) -> Result<Interpretation> {
    let mut semiring = None;
    let mut vocab = None;
    let mut universe: Option<Vec<String>> = None;
    let mut complement = false;
    let mut lits: Vec<(usize, String)> = Vec::new();
    for (ln, raw) in text.lines().enumerate() {
        let ln = ln + 1;
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let (head, rest) = line.split_once(char::is_whitespace).unwrap_or((line, ""));
        let rest = rest.trim();
        match head {
            "semiring" => semiring = Some(parse_semiring(rest, base).map_err(|e| at(ln, e))?),
            "vocab" => {
                let mut rels = Vec::new();
                for item in rest.split_whitespace() {
                    let (name, arity) = item
                        .split_once('/')
                        .ok_or_else(|| Error::parse(ln, 1, format!("expected NAME/ARITY, got `{item}`")))?;
                    let arity: usize =
                        arity.parse().map_err(|_| Error::parse(ln, 1, format!("bad arity in `{item}`")))?;
                    rels.push((name.to_string(), arity));
                }
                vocab = Some(Vocabulary::new(rels).map_err(|e| at(ln, e))?);
            }
            "universe" => universe = Some(rest.split_whitespace().map(str::to_string).collect()),
            "default" => {
                if rest != "complement" {
                    return Err(Error::parse(ln, 1, format!("unknown default `{rest}`")));
                }
                complement = true;
            }
            "lit" => lits.push((ln, rest.to_string())),
            _ => return Err(Error::parse(ln, 1, format!("unknown directive `{head}`"))),
        }
    }
    let missing = |what: &str| Error::parse(0, 0, format!("missing `{what}` line"));
    let semiring = semiring.ok_or_else(|| missing("semiring"))?;
    let vocab = vocab.ok_or_else(|| missing("vocab"))?;
    let universe = universe.ok_or_else(|| missing("universe"))?;
    let mut b = Builder::new(semiring.clone(), vocab, universe)
        .allow_empty(allow_empty)
        .default_complement(complement);
    for (ln, text) in lits {
        let (lhs, rhs) = text
            .split_once('=')
            .ok_or_else(|| Error::parse(ln, 1, "expected `lit LITERAL = VALUE`"))?;
        let lhs = lhs.trim();
        let (positive, atom) = match lhs.strip_prefix('!') {
            Some(a) => (false, a.trim()),
            None => (true, lhs),
        };
        let open = atom.find('(').ok_or_else(|| Error::parse(ln, 1, format!("bad literal `{lhs}`")))?;
        let close = atom.rfind(')').filter(|&c| c == atom.len() - 1);
        let close = close.ok_or_else(|| Error::parse(ln, 1, format!("bad literal `{lhs}`")))?;
        let rel = atom[..open].trim();
        let args: Vec<&str> = atom[open + 1..close].split(',').map(str::trim).collect();
        let value = semiring.parse_value(rhs).map_err(|e| at(ln, e))?;
        b.set(rel, positive, &args, value).map_err(|e| at(ln, e))?;
    }
    b.build()
}

fn at(line: usize, e: Error) -> Error {
    match e {
        Error::Parse { line: 0, col, msg } | Error::Parse { line: 1, col, msg } => Error::Parse { line, col, msg },
        Error::Parse { .. } => e,
        other => Error::parse(line, 1, other.to_string()),
    }
}

/// Parses the `semiring` directive argument.
pub fn parse_semiring(spec: &str, base: &Path) -> Result<Semiring> {
    let bad = || Error::invalid(format!("unknown semiring `{spec}`"));
    let (name, arg) = match spec.split_once(':') {
        Some((n, a)) => (n, Some(a)),
        None => (spec, None),
    };
    let bound = |a: Option<&str>| -> Result<u32> {
        let k: u32 = a.ok_or_else(bad)?.parse().map_err(|_| bad())?;
        if k == 0 {
            return Err(Error::invalid("bound must be positive"));
        }
        Ok(k)
    };
    Ok(match name {
        "boolean" | "bool" => Semiring::Boolean,
        "nat" => Semiring::Nat,
        "natinf" => Semiring::NatInf,
        "nattrunc" => Semiring::NatTrunc(bound(arg)?),
        "tropical" => Semiring::Tropical,
        "viterbi" => Semiring::Viterbi,
        "lukasiewicz" => Semiring::Lukasiewicz,
        "doubt" => Semiring::Doubt,
        "minmax" => Semiring::MinMax(bound(arg)?),
        "table" => {
            let path = base.join(arg.ok_or_else(bad)?);
            let text = std::fs::read_to_string(&path)
                .map_err(|e| Error::invalid(format!("cannot read {}: {e}", path.display())))?;
            Semiring::table(validate_table_semiring(&parse_table_semiring(&text)?)?)
        }
        "poly" => {
            let arg = arg.ok_or_else(bad)?;
            let (q, vars) = arg.split_once(':').unwrap_or((arg, ""));
            let q = Quotient::from_tag(q).ok_or_else(bad)?;
            let vars: Vec<String> = vars.split(',').map(str::trim).filter(|v| !v.is_empty()).map(str::to_string).collect();
            Semiring::poly(q, vars)
        }
        _ => return Err(bad()),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::semiring::Value;

    #[test]
    fn parses_example_file() {
        let text = "semiring nat\nvocab R/1 E/2\nuniverse a1 a2\ndefault complement\n\
                    lit R(a1) = 3 # comment\nlit E(a1,a2) = 2\n";
        let pi = parse_interpretation(text).unwrap();
        assert_eq!(*pi.lit(0, true, &[0]), Value::nat(3));
        assert_eq!(*pi.lit(0, false, &[0]), Value::nat(1));
        assert_eq!(*pi.lit(1, true, &[0, 1]), Value::nat(2));
        assert_eq!(*pi.lit(1, true, &[1, 0]), Value::nat(0));
        let again = parse_interpretation(&pi.to_text()).unwrap();
        assert_eq!(again, pi);
    }

    #[test]
    fn poly_values() {
        let text = "semiring poly:sinfx:x,y\nvocab R/1\nuniverse a\nlit R(a) = x*y^inf + x^2\nlit !R(a) = 0\n";
        let pi = parse_interpretation(text).unwrap();
        assert_eq!(pi.semiring().format_value(pi.lit(0, true, &[0])), "x*y^inf + x^2");
    }

    #[test]
    fn errors_carry_lines() {
        let text = "semiring nat\nvocab R/1\nuniverse a\nlit R(b) = 1\n";
        match parse_interpretation(text) {
            Err(Error::Parse { line, .. }) => assert_eq!(line, 4),
            other => panic!("unexpected {other:?}"),
        }
    }
}
