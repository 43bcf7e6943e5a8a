//! Polynomial expressions: integer literals, identifiers, `+ - * / ^` and
//! parentheses. Multiplication is always explicit, `^` takes a
//! non-negative integer exponent, and `/` only divides by a nonzero
//! constant. Identifiers are either polynomial variables or generators of
//! the coefficient tower.

use num_bigint::BigInt;
use num_traits::Zero;

use crate::bipoly::{BiPoly, Var};
use crate::error::{Error, Result};
use crate::numfield::{FieldElement, Tower};
use crate::poly::UniPoly;
use crate::scalar::{Field, Rational};

type Poly = BiPoly<FieldElement>;

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Int(BigInt),
    Ident(String),
    Op(char),
}

fn tokenize(src: &str) -> Result<Vec<(usize, Tok)>> {
    let bytes = src.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i] as char;
        if c.is_ascii_whitespace() {
            i += 1;
        } else if c.is_ascii_digit() {
            let start = i;
            while i < bytes.len() && bytes[i].is_ascii_digit() {
                i += 1;
            }
            let n: BigInt = src[start..i].parse().expect("digits");
            out.push((start, Tok::Int(n)));
        } else if c.is_ascii_alphabetic() || c == '_' {
            let start = i;
            while i < bytes.len() && (bytes[i].is_ascii_alphanumeric() || bytes[i] == b'_') {
                i += 1;
            }
            out.push((start, Tok::Ident(src[start..i].to_string())));
        } else if "+-*/^()".contains(c) {
            out.push((i, Tok::Op(c)));
            i += 1;
        } else {
            let ch = src[i..].chars().next().unwrap();
            return Err(Error::Parse {
                pos: i,
                msg: format!("unexpected character {ch:?}"),
            });
        }
    }
    Ok(out)
}

/// Names in scope for parsing: up to two polynomial variables and the
/// generators of a tower.
#[derive(Clone, Debug)]
pub struct Scope<'a> {
    vars: Vec<&'a str>,
    tower: &'a Tower,
}

impl<'a> Scope<'a> {
    /// Fails if a variable name is repeated or shadows a generator.
    pub fn new(vars: &[&'a str], tower: &'a Tower) -> Result<Scope<'a>> {
        if vars.len() > 2 {
            return Err(Error::InvalidInput(
                "at most two variables are supported".into(),
            ));
        }
        for (k, v) in vars.iter().enumerate() {
            let valid = v
                .chars()
                .next()
                .is_some_and(|c| c.is_ascii_alphabetic() || c == '_')
                && v.chars().all(|c| c.is_ascii_alphanumeric() || c == '_');
            if !valid {
                return Err(Error::InvalidInput(format!("bad variable name {v:?}")));
            }
            if vars[..k].contains(v) {
                return Err(Error::InvalidInput(format!("variable {v} declared twice")));
            }
            if tower.index_of(v).is_some() {
                return Err(Error::InvalidInput(format!(
                    "variable {v} clashes with a generator"
                )));
            }
        }
        Ok(Scope {
            vars: vars.to_vec(),
            tower,
        })
    }

    pub fn tower(&self) -> &Tower {
        self.tower
    }

    fn lookup(&self, name: &str) -> Option<Poly> {
        if let Some(k) = self.vars.iter().position(|v| *v == name) {
            return Some(Poly::var(if k == 0 { Var::U } else { Var::V }));
        }
        self.tower
            .index_of(name)
            .map(|j| Poly::constant(self.tower.generator(j)))
    }

    /// Parses an expression in the scope's variables.
    pub fn parse(&self, src: &str) -> Result<Poly> {
        let toks = tokenize(src)?;
        let mut p = Parser {
            toks: &toks,
            pos: 0,
            end: src.len(),
            scope: self,
        };
        let e = p.expr()?;
        if let Some((at, t)) = toks.get(p.pos) {
            return Err(Error::Parse {
                pos: *at,
                msg: format!("unexpected {}", describe(t)),
            });
        }
        Ok(e)
    }
}

fn describe(t: &Tok) -> String {
    match t {
        Tok::Int(n) => format!("number {n}"),
        Tok::Ident(s) => format!("identifier {s}"),
        Tok::Op(c) => format!("'{c}'"),
    }
}

struct Parser<'s, 'a> {
    toks: &'s [(usize, Tok)],
    pos: usize,
    end: usize,
    scope: &'s Scope<'a>,
}

impl Parser<'_, '_> {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|(_, t)| t)
    }

    fn here(&self) -> usize {
        self.toks.get(self.pos).map_or(self.end, |(p, _)| *p)
    }

    fn err<T>(&self, msg: impl Into<String>) -> Result<T> {
        Err(Error::Parse {
            pos: self.here(),
            msg: msg.into(),
        })
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(&Tok::Op(c)) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expr(&mut self) -> Result<Poly> {
        let negate = if self.eat('-') {
            true
        } else {
            self.eat('+');
            false
        };
        let mut acc = self.term()?;
        if negate {
            acc = -&acc;
        }
        loop {
            if self.eat('+') {
                acc = &acc + &self.term()?;
            } else if self.eat('-') {
                acc = &acc - &self.term()?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn term(&mut self) -> Result<Poly> {
        let mut acc = self.factor()?;
        loop {
            if self.eat('*') {
                acc = &acc * &self.factor()?;
            } else if self.peek() == Some(&Tok::Op('/')) {
                self.pos += 1;
                let at = self.here();
                let d = self.factor()?;
                let inv = if d.is_constant() {
                    d.coeff(0, 0).inverse()
                } else {
                    None
                };
                match inv {
                    Some(inv) => acc = acc.scale(&inv),
                    None => {
                        return Err(Error::Parse {
                            pos: at,
                            msg: "can only divide by a nonzero constant".into(),
                        })
                    }
                }
            } else {
                return Ok(acc);
            }
        }
    }

    fn factor(&mut self) -> Result<Poly> {
        let base = self.atom()?;
        if !self.eat('^') {
            return Ok(base);
        }
        match self.peek() {
            Some(Tok::Int(n)) => {
                let Ok(e) = u32::try_from(n) else {
                    return self.err("exponent too large");
                };
                self.pos += 1;
                Ok(base.pow(e))
            }
            _ => self.err("expected a non-negative integer exponent"),
        }
    }

    fn atom(&mut self) -> Result<Poly> {
        match self.peek().cloned() {
            Some(Tok::Int(n)) => {
                self.pos += 1;
                let c = self.scope.tower.rational_element(Rational::from_integer(n));
                Ok(Poly::constant(c))
            }
            Some(Tok::Ident(name)) => match self.scope.lookup(&name) {
                Some(p) => {
                    self.pos += 1;
                    Ok(p)
                }
                None => self.err(format!("unknown identifier {name}")),
            },
            Some(Tok::Op('(')) => {
                self.pos += 1;
                let e = self.expr()?;
                if !self.eat(')') {
                    return self.err("expected ')'");
                }
                Ok(e)
            }
            Some(t) => self.err(format!("unexpected {}", describe(&t))),
            None => self.err("unexpected end of input"),
        }
    }
}

/// Parses a bivariate polynomial in `u`, `v` (or other names) over `tower`.
pub fn parse_bipoly(src: &str, vars: [&str; 2], tower: &Tower) -> Result<Poly> {
    Scope::new(&vars, tower)?.parse(src)
}

/// Parses a univariate polynomial in `var` over `tower`.
pub fn parse_univariate(src: &str, var: &str, tower: &Tower) -> Result<UniPoly<FieldElement>> {
    let p = Scope::new(&[var], tower)?.parse(src)?;
    Ok(p.substitute(Var::V, &FieldElement::zero()))
}

/// Parses a constant of `tower`.
pub fn parse_element(src: &str, tower: &Tower) -> Result<FieldElement> {
    let p = Scope::new(&[], tower)?.parse(src)?;
    if p.is_zero() {
        return Ok(FieldElement::zero());
    }
    Ok(p.coeff(0, 0))
}

/// Builds a tower from `(name, minimal polynomial in t)` declarations, each
/// over the generators declared before it.
pub fn parse_tower<'a>(decls: impl IntoIterator<Item = (&'a str, &'a str)>) -> Result<Tower> {
    let mut tower = Tower::rational();
    for (name, src) in decls {
        if name == "t" {
            return Err(Error::InvalidExtension(
                "t is reserved for minimal polynomials".into(),
            ));
        }
        let minpoly = parse_univariate(src, "t", &tower)?;
        tower = tower.extend(name, &minpoly)?.0;
    }
    Ok(tower)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q() -> Tower {
        Tower::rational()
    }

    fn qi() -> Tower {
        parse_tower([("i", "t^2+1")]).unwrap()
    }

    #[test]
    fn parses_and_prints() {
        let f = parse_bipoly("u^2 + v^2", ["u", "v"], &q()).unwrap();
        assert_eq!(f.to_string(), "u^2 + v^2");
        let g = parse_bipoly("-(u - 1)*(u + 1) + 3/2*v", ["u", "v"], &q()).unwrap();
        assert_eq!(g.to_string(), "-u^2 + 3/2*v + 1");
        let h = parse_bipoly("x*y^3 - 2", ["x", "y"], &q()).unwrap();
        assert_eq!(h.fmt_with(["x", "y"]), "x*y^3 - 2");
    }

    #[test]
    fn generators_in_coefficients() {
        let t = qi();
        let f = parse_bipoly("(2+3*i)*u + i^2", ["u", "v"], &t).unwrap();
        assert_eq!(f.to_string(), "(3*i + 2)*u - 1");
        assert_eq!(parse_element("i/2", &t).unwrap().to_string(), "1/2*i");
        let t2 = parse_tower([("i", "t^2+1"), ("s", "t^2 - 2")]).unwrap();
        let x = parse_element("(i + 1)*s - 1/3", &t2).unwrap();
        assert_eq!(parse_element(&x.to_string(), &t2).unwrap(), x);
    }

    #[test]
    fn errors_carry_positions() {
        let err = |s: &str| match parse_bipoly(s, ["u", "v"], &q()) {
            Err(Error::Parse { pos, .. }) => pos,
            other => panic!("{s}: {other:?}"),
        };
        assert_eq!(err("u v"), 2);
        assert_eq!(err("2u"), 1);
        assert_eq!(err("u + "), 4);
        assert_eq!(err("u^v"), 2);
        assert_eq!(err("u/v"), 2);
        assert_eq!(err("u/(1-1)"), 2);
        assert_eq!(err("(u"), 2);
        assert_eq!(err("w"), 0);
        assert_eq!(err("u # v"), 2);
        assert_eq!(err("u*-v"), 2);
    }

    #[test]
    fn scope_validation() {
        let t = qi();
        assert!(Scope::new(&["u", "u"], &t).is_err());
        assert!(Scope::new(&["i", "v"], &t).is_err());
        assert!(Scope::new(&["1x"], &t).is_err());
        assert!(parse_tower([("t", "t^2+1")]).is_err());
        assert!(matches!(
            parse_tower([("s", "t^2-1")]),
            Err(Error::InvalidExtension(_))
        ));
    }

    #[test]
    fn univariate() {
        let p = parse_univariate("t^3 - 2", "t", &q()).unwrap();
        assert_eq!(p, UniPoly::from_i64s(&[-2, 0, 0, 1]));
    }
}
