use num_bigint::BigUint;
use num_traits::One;

use super::{Monomial, Polynomial, Quotient};
use crate::error::{Error, Result};
use crate::semiring::Ext;

/// Parses `3*x^2*y + x*y^inf + 1` over the given variable names.
pub fn parse_polynomial(text: &str, quotient: Quotient, vars: &[String]) -> Result<Polynomial> {
    let mut terms = Vec::new();
    let mut offset = 0;
    for term in text.split('+') {
        let col = offset + 1;
        offset += term.len() + 1;
        let term = term.trim();
        if term.is_empty() {
            return Err(Error::parse(1, col, "empty term in polynomial"));
        }
        let mut coeff = BigUint::one();
        let mut pairs = Vec::new();
        for factor in term.split('*') {
            let factor = factor.trim();
            if factor.is_empty() {
                return Err(Error::parse(1, col, format!("empty factor in term `{term}`")));
            }
            if factor.chars().all(|c| c.is_ascii_digit()) {
                coeff *= factor.parse::<BigUint>().expect("digits parse");
                continue;
            }
            let (name, exp) = match factor.split_once('^') {
                Some((n, e)) => (n.trim(), Some(e.trim())),
                None => (factor, None),
            };
            let x = vars
                .iter()
                .position(|v| v == name)
                .ok_or_else(|| Error::parse(1, col, format!("unknown variable `{name}`")))?;
            let exp = match exp {
                None => Ext::Fin(1),
                Some("inf") => Ext::Inf,
                Some(e) => Ext::Fin(
                    e.parse::<u32>()
                        .map_err(|_| Error::parse(1, col, format!("bad exponent `{e}`")))?,
                ),
            };
            pairs.push((x as u32, exp));
        }
        terms.push((Monomial::from_pairs(pairs), coeff));
    }
    Polynomial::from_terms(quotient, terms)
}
