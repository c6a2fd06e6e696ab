//! Text grammar for polynomials.
//!
//! ```text
//! expression  ::= term (('+' | '-') term)*
//! term        ::= coefficient ('*' factor)* | factor ('*' factor)*
//! factor      ::= identifier ('^' nonneg-integer)?
//! coefficient ::= integer | integer '/' positive-integer
//! ```
//!
//! Whitespace is insignificant. A leading sign on the first term is also
//! accepted, since the printer emits one for negative leading coefficients.
//! Identifiers are `x1 .. xn` for commuting variables and `a[j1,...,jn]` for
//! Clifford generators.

use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::fmt::Write;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::cpoly::{CPoly, Monomial};
use crate::error::{Error, Result};
use crate::ncpoly::{NcPoly, Word};
use crate::scalar::{prints_negative, FieldSpec, Scalar};

/// One parsed summand: a signed coefficient and an ordered factor list of
/// `(identifier index, exponent)`.
#[derive(Debug)]
struct RawTerm {
    num: BigInt,
    den: BigInt,
    factors: Vec<(usize, u32)>,
}

struct Parser<'a, F> {
    src: &'a str,
    pos: usize,
    resolve: F,
}

impl<'a, F: Fn(&str) -> Option<usize>> Parser<'a, F> {
    fn syntax(&self, message: &str) -> Error {
        Error::Syntax { position: self.pos, message: message.to_string() }
    }

    fn skip_ws(&mut self) {
        while let Some(c) = self.peek() {
            if c.is_ascii_whitespace() {
                self.pos += 1;
            } else {
                break;
            }
        }
    }

    fn peek(&self) -> Option<u8> {
        self.src.as_bytes().get(self.pos).copied()
    }

    fn eat(&mut self, c: u8) -> bool {
        self.skip_ws();
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn digits(&mut self) -> Option<&'a str> {
        self.skip_ws();
        let start = self.pos;
        while matches!(self.peek(), Some(b'0'..=b'9')) {
            self.pos += 1;
        }
        (self.pos > start).then(|| &self.src[start..self.pos])
    }

    fn expression(&mut self) -> Result<Vec<RawTerm>> {
        let mut out = Vec::new();
        self.skip_ws();
        let mut negative = if self.eat(b'-') {
            true
        } else {
            self.eat(b'+');
            false
        };
        loop {
            let mut t = self.term()?;
            if negative {
                t.num = -t.num;
            }
            out.push(t);
            self.skip_ws();
            match self.peek() {
                None => return Ok(out),
                Some(b'+') => negative = false,
                Some(b'-') => negative = true,
                Some(_) => return Err(self.syntax("expected '+', '-' or end of input")),
            }
            self.pos += 1;
        }
    }

    fn term(&mut self) -> Result<RawTerm> {
        self.skip_ws();
        let mut num = BigInt::one();
        let mut den = BigInt::one();
        let mut factors = Vec::new();
        if matches!(self.peek(), Some(b'0'..=b'9')) {
            let n = self.digits().expect("digit present");
            num = BigInt::parse_bytes(n.as_bytes(), 10).expect("decimal digits");
            if self.eat(b'/') {
                let d = self.digits().ok_or_else(|| self.syntax("expected denominator"))?;
                den = BigInt::parse_bytes(d.as_bytes(), 10).expect("decimal digits");
                if den.is_zero() {
                    return Err(self.syntax("zero denominator"));
                }
            }
        } else {
            factors.push(self.factor()?);
        }
        while self.eat(b'*') {
            factors.push(self.factor()?);
        }
        Ok(RawTerm { num, den, factors })
    }

    fn factor(&mut self) -> Result<(usize, u32)> {
        self.skip_ws();
        let start = self.pos;
        let name = self.identifier()?;
        let idx =
            (self.resolve)(&name).ok_or(Error::UnknownIdentifier { name, position: start })?;
        let mut exp = 1u32;
        if self.eat(b'^') {
            let d = self.digits().ok_or_else(|| self.syntax("expected exponent"))?;
            exp = d.parse().map_err(|_| Error::ExponentOverflow)?;
        }
        Ok((idx, exp))
    }

    /// Reads `name` or `name[...]`, normalizing away whitespace inside the
    /// brackets.
    fn identifier(&mut self) -> Result<String> {
        let start = self.pos;
        match self.peek() {
            Some(c) if c.is_ascii_alphabetic() || c == b'_' => self.pos += 1,
            _ => return Err(self.syntax("expected identifier or coefficient")),
        }
        while matches!(self.peek(), Some(c) if c.is_ascii_alphanumeric() || c == b'_') {
            self.pos += 1;
        }
        let mut name = String::from(&self.src[start..self.pos]);
        if self.peek() == Some(b'[') {
            self.pos += 1;
            name.push('[');
            loop {
                match self.peek() {
                    Some(b']') => {
                        self.pos += 1;
                        name.push(']');
                        break;
                    }
                    Some(c) if c.is_ascii_digit() || c == b',' => {
                        name.push(c as char);
                        self.pos += 1;
                    }
                    Some(c) if c.is_ascii_whitespace() => self.pos += 1,
                    _ => return Err(self.syntax("unterminated index list")),
                }
            }
        }
        Ok(name)
    }
}

fn parse_raw<F: Fn(&str) -> Option<usize>>(text: &str, resolve: F) -> Result<Vec<RawTerm>> {
    Parser { src: text, pos: 0, resolve }.expression()
}

/// Default names `x1 .. xn` for commuting variables.
pub fn x_names(n: usize) -> Vec<String> {
    (1..=n).map(|i| format!("x{i}")).collect()
}

/// Parses a commutative polynomial in the named variables.
pub fn parse_poly<S: AsRef<str>>(text: &str, vars: &[S], field: FieldSpec) -> Result<CPoly> {
    let n = vars.len();
    let raw = parse_raw(text, |name| vars.iter().position(|v| v.as_ref() == name))?;
    let mut terms = Vec::with_capacity(raw.len());
    for t in raw {
        let c = field.from_ratio(&t.num, &t.den)?;
        let mut exps = alloc::vec![0u32; n];
        for (i, e) in t.factors {
            exps[i] = exps[i].checked_add(e).ok_or(Error::ExponentOverflow)?;
        }
        terms.push((Monomial(exps), c));
    }
    CPoly::from_terms(field, n, terms)
}

/// Printable names of Clifford generators, with optional input aliases.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GeneratorNames {
    names: Vec<String>,
    aliases: Vec<String>,
}

impl GeneratorNames {
    /// Names `a[j1,...,jn]` for the given exponent vectors. When every vector
    /// has weight one, the aliases `a1 .. an` are accepted on input as well.
    pub fn from_indices(indices: &[Monomial]) -> Self {
        let names = indices
            .iter()
            .map(|j| {
                let parts: Vec<String> = j.0.iter().map(|e| e.to_string()).collect();
                format!("a[{}]", parts.join(","))
            })
            .collect();
        let aliases = if indices.iter().all(|j| j.degree() == 1) {
            indices
                .iter()
                .map(|j| {
                    let pos = j.0.iter().position(|&e| e == 1).expect("weight one");
                    format!("a{}", pos + 1)
                })
                .collect()
        } else {
            Vec::new()
        };
        GeneratorNames { names, aliases }
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn name(&self, i: usize) -> &str {
        &self.names[i]
    }

    pub fn resolve(&self, ident: &str) -> Option<usize> {
        self.names
            .iter()
            .position(|n| n == ident)
            .or_else(|| self.aliases.iter().position(|n| n == ident))
    }
}

/// Parses an element of the free algebra over the named generators.
pub fn parse_ncpoly(text: &str, gens: &GeneratorNames, field: FieldSpec) -> Result<NcPoly> {
    let raw = parse_raw(text, |name| gens.resolve(name))?;
    let mut terms = Vec::with_capacity(raw.len());
    for t in raw {
        let c = field.from_ratio(&t.num, &t.den)?;
        let mut letters = Vec::new();
        for (i, e) in t.factors {
            letters.extend(core::iter::repeat_n(i as u32, e as usize));
        }
        terms.push((Word(letters), c));
    }
    NcPoly::from_terms(field, terms)
}

fn push_term(out: &mut String, field: &FieldSpec, c: &Scalar, factors: &str, first: bool) {
    let neg = prints_negative(c);
    let abs = if neg { field.neg(c) } else { c.clone() };
    if first {
        if neg {
            out.push('-');
        }
    } else {
        out.push_str(if neg { " - " } else { " + " });
    }
    if factors.is_empty() {
        let _ = write!(out, "{abs}");
    } else if field.is_one(&abs) {
        out.push_str(factors);
    } else {
        let _ = write!(out, "{abs}*{factors}");
    }
}

/// Prints in ascending term order; `"0"` for the zero polynomial.
pub fn format_poly<S: AsRef<str>>(p: &CPoly, vars: &[S]) -> String {
    if p.is_zero() {
        return "0".to_string();
    }
    let field = p.field();
    let mut out = String::new();
    for (k, (m, c)) in p.terms().enumerate() {
        let mut factors = String::new();
        for (i, &e) in m.0.iter().enumerate() {
            if e == 0 {
                continue;
            }
            if !factors.is_empty() {
                factors.push('*');
            }
            factors.push_str(vars[i].as_ref());
            if e > 1 {
                let _ = write!(factors, "^{e}");
            }
        }
        push_term(&mut out, &field, c, &factors, k == 0);
    }
    out
}

/// Prints in ascending word order, collapsing runs of a letter into powers.
pub fn format_ncpoly(p: &NcPoly, gens: &GeneratorNames) -> String {
    if p.is_zero() {
        return "0".to_string();
    }
    let field = p.field();
    let mut out = String::new();
    for (k, (w, c)) in p.terms().enumerate() {
        let mut factors = String::new();
        let letters = w.letters();
        let mut i = 0;
        while i < letters.len() {
            let mut j = i;
            while j < letters.len() && letters[j] == letters[i] {
                j += 1;
            }
            if !factors.is_empty() {
                factors.push('*');
            }
            factors.push_str(gens.name(letters[i] as usize));
            if j - i > 1 {
                let _ = write!(factors, "^{}", j - i);
            }
            i = j;
        }
        push_term(&mut out, &field, c, &factors, k == 0);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    #[test]
    fn parses_sum_of_squares() {
        let p = parse_poly("x1^2 + x2^2", &x_names(2), FieldSpec::Rationals).unwrap();
        let terms: Vec<_> = p.terms().map(|(m, c)| (m.0.clone(), c.clone())).collect();
        let one = FieldSpec::Rationals.one();
        assert_eq!(terms, vec![(vec![2, 0], one.clone()), (vec![0, 2], one)]);
    }

    #[test]
    fn parses_zero_and_prime_field() {
        assert!(parse_poly("0", &x_names(1), FieldSpec::Rationals).unwrap().is_zero());
        let f = FieldSpec::prime(7).unwrap();
        let p = parse_poly("x1^3 + 2*x2^3", &x_names(2), f).unwrap();
        assert_eq!(p.coefficient(&Monomial(vec![3, 0])), f.from_i64(1));
        assert_eq!(p.coefficient(&Monomial(vec![0, 3])), f.from_i64(2));
        assert_eq!(p.len(), 2);
    }

    #[test]
    fn error_positions() {
        let vars = x_names(2);
        match parse_poly("x1 + * x2", &vars, FieldSpec::Rationals) {
            Err(Error::Syntax { position, .. }) => assert_eq!(position, 5),
            other => panic!("unexpected {other:?}"),
        }
        match parse_poly("x1 + y", &vars, FieldSpec::Rationals) {
            Err(Error::UnknownIdentifier { name, position }) => {
                assert_eq!(name, "y");
                assert_eq!(position, 5);
            }
            other => panic!("unexpected {other:?}"),
        }
        assert_eq!(
            parse_poly("1/7*x1", &vars, FieldSpec::prime(7).unwrap()),
            Err(Error::NonInvertible)
        );
        assert!(parse_poly("x1 x2", &vars, FieldSpec::Rationals).is_err());
        assert!(parse_poly("", &vars, FieldSpec::Rationals).is_err());
        assert!(parse_poly("2*3", &vars, FieldSpec::Rationals).is_err());
    }

    #[test]
    fn prints_in_ascending_order() {
        let vars = x_names(2);
        let p = parse_poly("3/4*x2^2 - x1*x2 - 5", &vars, FieldSpec::Rationals).unwrap();
        assert_eq!(format_poly(&p, &vars), "-5 - x1*x2 + 3/4*x2^2");
        let f = FieldSpec::prime(7).unwrap();
        let q = parse_poly("-x1", &vars, f).unwrap();
        assert_eq!(format_poly(&q, &vars), "6*x1");
    }

    #[test]
    fn generator_names_and_aliases() {
        let gens = GeneratorNames::from_indices(&[Monomial(vec![1, 0]), Monomial(vec![0, 1])]);
        let f = FieldSpec::Rationals;
        let p = parse_ncpoly("a2*a1 + a[1, 0]^2 - 1", &gens, f).unwrap();
        assert_eq!(format_ncpoly(&p, &gens), "-1 + a[1,0]^2 + a[0,1]*a[1,0]");
        assert_eq!(p.coefficient(&Word(vec![1, 0])), f.one());
        let weighted = GeneratorNames::from_indices(&Monomial::all_of_degree(2, 2));
        assert!(weighted.resolve("a1").is_none());
        assert_eq!(weighted.resolve("a[1,1]"), Some(1));
    }
}
