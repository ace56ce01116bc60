use super::formula::{var, Atom, Formula};
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
enum Tok {
    Ident(String),
    LParen,
    RParen,
    Comma,
    Dot,
    Amp,
    Bar,
    Bang,
    EqSign,
    NeqSign,
}

#[derive(Clone, Debug)]
struct Spanned {
    tok: Tok,
    line: usize,
    col: usize,
}

fn lex(text: &str) -> Result<Vec<Spanned>> {
    let mut out = Vec::new();
    let (mut line, mut col) = (1usize, 1usize);
    let mut chars = text.chars().peekable();
    while let Some(&c) = chars.peek() {
        let (l, cl) = (line, col);
        let mut push = |tok: Tok| out.push(Spanned { tok, line: l, col: cl });
        if c == '\n' {
            chars.next();
            line += 1;
            col = 1;
            continue;
        }
        if c.is_whitespace() {
            chars.next();
            col += 1;
            continue;
        }
        if c.is_ascii_alphanumeric() || c == '_' {
            let mut s = String::new();
            while let Some(&d) = chars.peek() {
                if d.is_ascii_alphanumeric() || d == '_' || d == '\'' {
                    s.push(d);
                    chars.next();
                    col += 1;
                } else {
                    break;
                }
            }
            push(Tok::Ident(s));
            continue;
        }
        chars.next();
        col += 1;
        let tok = match c {
            '(' => Tok::LParen,
            ')' => Tok::RParen,
            ',' => Tok::Comma,
            '.' => Tok::Dot,
            '&' => Tok::Amp,
            '|' => Tok::Bar,
            '=' => Tok::EqSign,
            '!' => {
                if chars.peek() == Some(&'=') {
                    chars.next();
                    col += 1;
                    Tok::NeqSign
                } else {
                    Tok::Bang
                }
            }
            _ => return Err(Error::parse(l, cl, format!("unexpected character `{c}`"))),
        };
        push(tok);
    }
    Ok(out)
}

struct Parser {
    toks: Vec<Spanned>,
    pos: usize,
    end: (usize, usize),
}

impl Parser {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|s| &s.tok)
    }

    fn peek_at(&self, k: usize) -> Option<&Tok> {
        self.toks.get(self.pos + k).map(|s| &s.tok)
    }

    fn here(&self) -> (usize, usize) {
        self.toks.get(self.pos).map(|s| (s.line, s.col)).unwrap_or(self.end)
    }

    fn err<T>(&self, msg: impl Into<String>) -> Result<T> {
        let (l, c) = self.here();
        Err(Error::parse(l, c, msg))
    }

    fn expect(&mut self, tok: Tok, what: &str) -> Result<()> {
        if self.peek() == Some(&tok) {
            self.pos += 1;
            Ok(())
        } else {
            self.err(format!("expected {what}"))
        }
    }

    fn ident(&mut self, what: &str) -> Result<String> {
        match self.peek() {
            Some(Tok::Ident(s)) if !is_keyword(s) => {
                let s = s.clone();
                self.pos += 1;
                Ok(s)
            }
            _ => self.err(format!("expected {what}")),
        }
    }

    fn formula(&mut self) -> Result<Formula> {
        let mut items = vec![self.conj()?];
        while self.peek() == Some(&Tok::Bar) {
            self.pos += 1;
            items.push(self.conj()?);
        }
        Ok(Formula::or(items))
    }

    fn conj(&mut self) -> Result<Formula> {
        let mut items = vec![self.unary()?];
        while self.peek() == Some(&Tok::Amp) {
            self.pos += 1;
            items.push(self.unary()?);
        }
        Ok(Formula::and(items))
    }

    fn is_quantifier(&self) -> bool {
        matches!(self.peek(), Some(Tok::Ident(q)) if q == "E" || q == "A")
            && matches!(self.peek_at(1), Some(Tok::Ident(_)))
            && self.peek_at(2) == Some(&Tok::Dot)
    }

    fn unary(&mut self) -> Result<Formula> {
        if self.is_quantifier() {
            let exists = matches!(self.peek(), Some(Tok::Ident(q)) if q == "E");
            self.pos += 1;
            let v = var(&self.ident("a variable")?);
            self.pos += 1;
            let body = self.formula()?;
            return Ok(if exists { Formula::exists(v, body) } else { Formula::forall(v, body) });
        }
        match self.peek().cloned() {
            Some(Tok::LParen) => {
                self.pos += 1;
                let f = self.formula()?;
                self.expect(Tok::RParen, "`)`")?;
                Ok(f)
            }
            Some(Tok::Bang) => {
                self.pos += 1;
                match (self.peek(), self.peek_at(1)) {
                    (Some(Tok::Ident(_)), Some(Tok::LParen)) => Ok(Formula::Neg(self.atom()?)),
                    _ => self.err("negation applies only to relational atoms"),
                }
            }
            Some(Tok::Ident(s)) if s == "true" => {
                self.pos += 1;
                Ok(Formula::truth())
            }
            Some(Tok::Ident(s)) if s == "false" => {
                self.pos += 1;
                Ok(Formula::falsity())
            }
            Some(Tok::Ident(_)) => match self.peek_at(1) {
                Some(Tok::LParen) => Ok(Formula::Pos(self.atom()?)),
                Some(Tok::EqSign) | Some(Tok::NeqSign) => {
                    let x = var(&self.ident("a variable")?);
                    let eq = self.peek() == Some(&Tok::EqSign);
                    self.pos += 1;
                    let y = var(&self.ident("a variable")?);
                    Ok(if eq { Formula::Eq(x, y) } else { Formula::Neq(x, y) })
                }
                _ => {
                    self.pos += 1;
                    self.err("expected `(`, `=` or `!=`")
                }
            },
            _ => self.err("expected a formula"),
        }
    }

    fn atom(&mut self) -> Result<Atom> {
        let rel = self.ident("a relation name")?;
        self.expect(Tok::LParen, "`(`")?;
        let mut args = Vec::new();
        if self.peek() != Some(&Tok::RParen) {
            loop {
                args.push(var(&self.ident("a variable")?));
                if self.peek() == Some(&Tok::Comma) {
                    self.pos += 1;
                } else {
                    break;
                }
            }
        }
        self.expect(Tok::RParen, "`)`")?;
        Ok(Atom::new(&rel, &args))
    }
}

fn is_keyword(s: &str) -> bool {
    s == "true" || s == "false"
}

/// Parses a formula; `&` binds tighter than `|` and quantifier scopes extend
/// as far right as possible.
pub fn parse_formula(text: &str) -> Result<Formula> {
    let toks = lex(text)?;
    let lines: Vec<&str> = text.split('\n').collect();
    let end = (lines.len(), lines.last().map_or(0, |l| l.chars().count()) + 1);
    let mut p = Parser { toks, pos: 0, end };
    let f = p.formula()?;
    if p.pos < p.toks.len() {
        return p.err("unexpected trailing input");
    }
    Ok(f)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::logic::formula::{print_formula, quantifier_rank};

    #[test]
    fn simple_shapes() {
        assert_eq!(parse_formula("E x. R(x)").unwrap(), Formula::exists(var("x"), Formula::pos("R", &[var("x")])));
        let f = parse_formula("A y. (x = y | E(x,y))").unwrap();
        let body = Formula::Or(vec![Formula::Eq(var("x"), var("y")), Formula::pos("E", &[var("x"), var("y")])]);
        assert_eq!(f, Formula::forall(var("y"), body));
        assert!(parse_formula("!(R(x) & R(y))").is_err());
    }

    #[test]
    fn precedence_and_scope() {
        let f = parse_formula("R(x) & S(x) | T(x)").unwrap();
        assert!(matches!(&f, Formula::Or(cs) if matches!(cs[0], Formula::And(_))));
        let g = parse_formula("E x. R(x) | S(x)").unwrap();
        assert!(matches!(&g, Formula::Exists(_, b) if matches!(**b, Formula::Or(_))));
        // `E` as a binary relation symbol.
        let h = parse_formula("E(x,y) & A z. E(z,z)").unwrap();
        assert_eq!(quantifier_rank(&h), 1);
    }

    #[test]
    fn ranks() {
        assert_eq!(quantifier_rank(&parse_formula("R(x)").unwrap()), 0);
        assert_eq!(quantifier_rank(&parse_formula("E x. A y. E(x,y)").unwrap()), 2);
    }

    #[test]
    fn round_trips() {
        for s in [
            "E x. R(x)",
            "(R(x) | S(x)) | T(x)",
            "R(x) & (S(x) | !T(x))",
            "(R(x) & S(x)) & x != y",
            "(E x. R(x)) & (A y. !R(y))",
            "true | false",
            "A x1. E x2. (E(x1,x2) | x1 = x2) & !E(x2,x1)",
        ] {
            let f = parse_formula(s).unwrap();
            assert_eq!(print_formula(&f), s);
            assert_eq!(parse_formula(&print_formula(&f)).unwrap(), f);
        }
    }

    #[test]
    fn error_positions() {
        match parse_formula("R(x) &\n  & S(x)") {
            Err(Error::Parse { line, col, .. }) => assert_eq!((line, col), (2, 3)),
            other => panic!("unexpected {other:?}"),
        }
    }
}
