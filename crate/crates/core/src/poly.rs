//! Sparse multivariate polynomials with integer coefficients.

use std::collections::BTreeMap;
use std::fmt::{self, Write as _};
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// Exponent vector of a monomial; its length is the number of variables.
pub type Exponents = Vec<u32>;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Poly {
    nvars: usize,
    terms: BTreeMap<Exponents, BigInt>,
}

impl Poly {
    pub fn zero(nvars: usize) -> Self {
        Poly { nvars, terms: BTreeMap::new() }
    }

    pub fn one(nvars: usize) -> Self {
        Self::constant(nvars, BigInt::one())
    }

    pub fn constant(nvars: usize, c: BigInt) -> Self {
        Self::monomial(vec![0; nvars], c)
    }

    pub fn var(nvars: usize, i: usize) -> Self {
        let mut e = vec![0; nvars];
        e[i] = 1;
        Self::monomial(e, BigInt::one())
    }

    pub fn monomial(exponents: Exponents, coeff: BigInt) -> Self {
        let mut p = Poly::zero(exponents.len());
        p.add_term(exponents, coeff);
        p
    }

    /// Linear form `sum_i coeffs[i] * x_i`.
    pub fn linear(coeffs: &[BigInt]) -> Self {
        let n = coeffs.len();
        let mut p = Poly::zero(n);
        for (i, c) in coeffs.iter().enumerate() {
            let mut e = vec![0; n];
            e[i] = 1;
            p.add_term(e, c.clone());
        }
        p
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Exponents, &BigInt)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, exponents: &[u32]) -> BigInt {
        self.terms.get(exponents).cloned().unwrap_or_default()
    }

    pub fn add_term(&mut self, exponents: Exponents, coeff: BigInt) {
        assert_eq!(exponents.len(), self.nvars, "monomial arity mismatch");
        if coeff.is_zero() {
            return;
        }
        let entry = self.terms.entry(exponents);
        match entry {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(coeff);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += coeff;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn scale(&self, c: &BigInt) -> Poly {
        let mut p = Poly::zero(self.nvars);
        for (e, v) in &self.terms {
            p.add_term(e.clone(), v * c);
        }
        p
    }

    pub fn pow(&self, k: u32) -> Poly {
        (0..k).fold(Poly::one(self.nvars), |acc, _| &acc * self)
    }

    /// Weighted degree if homogeneous; `Some(0)` for the zero polynomial.
    pub fn homogeneous_weight(&self, weights: &[usize]) -> Option<usize> {
        let mut ws = self.terms.keys().map(|e| weighted_degree(e, weights));
        let first = ws.next().unwrap_or(0);
        ws.all(|w| w == first).then_some(first)
    }

    /// Keeps only terms of weighted degree `w`.
    pub fn weight_part(&self, weights: &[usize], w: usize) -> Poly {
        let mut p = Poly::zero(self.nvars);
        for (e, c) in &self.terms {
            if weighted_degree(e, weights) == w {
                p.add_term(e.clone(), c.clone());
            }
        }
        p
    }

    /// Moves variable `i` to position `map[i]` of an `nvars`-variable ring.
    pub fn rename(&self, map: &[usize], nvars: usize) -> Poly {
        assert_eq!(map.len(), self.nvars);
        let mut p = Poly::zero(nvars);
        for (e, c) in &self.terms {
            let mut ne = vec![0; nvars];
            for (i, &k) in e.iter().enumerate() {
                ne[map[i]] += k;
            }
            p.add_term(ne, c.clone());
        }
        p
    }

    /// Ring homomorphism `x_i -> images[i]`.
    pub fn substitute(&self, images: &[Poly]) -> Poly {
        assert_eq!(images.len(), self.nvars);
        let target = images.first().map_or(0, Poly::nvars);
        let mut out = Poly::zero(target);
        for (e, c) in &self.terms {
            let mut t = Poly::constant(target, c.clone());
            for (i, &k) in e.iter().enumerate() {
                if k > 0 {
                    t = &t * &images[i].pow(k);
                }
            }
            out = &out + &t;
        }
        out
    }

    /// Parses `"3*h^2 - x0*x1 + 2"` over the given variable names.
    pub fn parse(s: &str, names: &[String]) -> Result<Poly> {
        PolyParser { src: s, pos: 0, names }.parse()
    }

    pub fn display_with<'a>(&'a self, names: &'a [String]) -> PolyDisplay<'a> {
        PolyDisplay { poly: self, names }
    }
}

pub fn weighted_degree(e: &[u32], weights: &[usize]) -> usize {
    e.iter().zip(weights).map(|(&k, &w)| k as usize * w).sum()
}

impl Add for &Poly {
    type Output = Poly;
    fn add(self, rhs: &Poly) -> Poly {
        let mut p = self.clone();
        for (e, c) in &rhs.terms {
            p.add_term(e.clone(), c.clone());
        }
        p
    }
}

impl Sub for &Poly {
    type Output = Poly;
    fn sub(self, rhs: &Poly) -> Poly {
        let mut p = self.clone();
        for (e, c) in &rhs.terms {
            p.add_term(e.clone(), -c);
        }
        p
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        self.scale(&BigInt::from(-1))
    }
}

impl Mul for &Poly {
    type Output = Poly;
    fn mul(self, rhs: &Poly) -> Poly {
        assert_eq!(self.nvars, rhs.nvars, "polynomial arity mismatch");
        let mut p = Poly::zero(self.nvars);
        for (ea, ca) in &self.terms {
            for (eb, cb) in &rhs.terms {
                let e = ea.iter().zip(eb).map(|(a, b)| a + b).collect();
                p.add_term(e, ca * cb);
            }
        }
        p
    }
}

pub struct PolyDisplay<'a> {
    poly: &'a Poly,
    names: &'a [String],
}

impl fmt::Display for PolyDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.poly.is_zero() {
            return write!(f, "0");
        }
        // Highest total degree first, then descending lex.
        let mut terms: Vec<_> = self.poly.terms.iter().collect();
        terms.sort_by(|a, b| {
            let da: u32 = a.0.iter().sum();
            let db: u32 = b.0.iter().sum();
            db.cmp(&da).then_with(|| b.0.cmp(a.0))
        });
        let mut out = String::new();
        for (idx, (e, c)) in terms.iter().enumerate() {
            let mono = format_monomial(e, self.names);
            let neg = c.is_negative();
            let abs = c.abs();
            if idx == 0 {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            match (mono.is_empty(), abs.is_one()) {
                (true, _) => write!(out, "{abs}")?,
                (false, true) => out.push_str(&mono),
                (false, false) => write!(out, "{abs}*{mono}")?,
            }
        }
        f.write_str(&out)
    }
}

pub fn format_monomial(e: &[u32], names: &[String]) -> String {
    let mut parts = Vec::new();
    for (i, &k) in e.iter().enumerate() {
        match k {
            0 => {}
            1 => parts.push(names[i].clone()),
            _ => parts.push(format!("{}^{k}", names[i])),
        }
    }
    parts.join("*")
}

struct PolyParser<'a> {
    src: &'a str,
    pos: usize,
    names: &'a [String],
}

impl PolyParser<'_> {
    fn err(&self, msg: &str) -> Error {
        Error::Parse(format!("polynomial {:?} at offset {}: {msg}", self.src, self.pos))
    }

    fn skip_ws(&mut self) {
        while self.peek().is_some_and(char::is_whitespace) {
            self.pos += 1;
        }
    }

    fn peek(&self) -> Option<char> {
        self.src[self.pos..].chars().next()
    }

    fn parse(mut self) -> Result<Poly> {
        let n = self.names.len();
        let mut p = Poly::zero(n);
        self.skip_ws();
        if self.peek().is_none() {
            return Err(self.err("empty polynomial"));
        }
        let mut first = true;
        loop {
            self.skip_ws();
            let mut sign = BigInt::one();
            match self.peek() {
                Some('+') => self.pos += 1,
                Some('-') => {
                    self.pos += 1;
                    sign = -sign;
                }
                Some(_) if first => {}
                Some(_) => return Err(self.err("expected '+' or '-'")),
                None => break,
            }
            first = false;
            self.skip_ws();
            let (e, c) = self.term()?;
            p.add_term(e, c * sign);
            self.skip_ws();
            if self.peek().is_none() {
                break;
            }
        }
        Ok(p)
    }

    fn term(&mut self) -> Result<(Exponents, BigInt)> {
        let mut coeff = BigInt::one();
        let mut e = vec![0u32; self.names.len()];
        loop {
            self.skip_ws();
            match self.peek() {
                Some(c) if c.is_ascii_digit() => {
                    coeff *= self.number()?;
                }
                Some(c) if c.is_alphabetic() || c == '_' => {
                    let start = self.pos;
                    while self.peek().is_some_and(|c| c.is_alphanumeric() || c == '_') {
                        self.pos += 1;
                    }
                    let name = &self.src[start..self.pos];
                    let idx = self
                        .names
                        .iter()
                        .position(|n| n == name)
                        .ok_or_else(|| self.err(&format!("unknown variable {name:?}")))?;
                    self.skip_ws();
                    let mut k = 1u32;
                    if self.peek() == Some('^') {
                        self.pos += 1;
                        self.skip_ws();
                        k = self
                            .number()?
                            .try_into()
                            .map_err(|_| self.err("exponent out of range"))?;
                    }
                    e[idx] += k;
                }
                _ => return Err(self.err("expected a number or a variable")),
            }
            self.skip_ws();
            if self.peek() == Some('*') {
                self.pos += 1;
            } else {
                break;
            }
        }
        Ok((e, coeff))
    }

    fn number(&mut self) -> Result<BigInt> {
        let start = self.pos;
        while self.peek().is_some_and(|c| c.is_ascii_digit()) {
            self.pos += 1;
        }
        self.src[start..self.pos].parse().map_err(|_| self.err("bad integer"))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn names(v: &[&str]) -> Vec<String> {
        v.iter().map(|s| s.to_string()).collect()
    }

    #[test]
    fn parse_and_print() {
        let n = names(&["h", "k"]);
        let p = Poly::parse("3*h^2 - h*k + 2 - k*h", &n).unwrap();
        assert_eq!(p.coeff(&[2, 0]), BigInt::from(3));
        assert_eq!(p.coeff(&[1, 1]), BigInt::from(-2));
        assert_eq!(p.coeff(&[0, 0]), BigInt::from(2));
        assert_eq!(p.display_with(&n).to_string(), "3*h^2 - 2*h*k + 2");
        assert_eq!(Poly::parse("-h", &n).unwrap().display_with(&n).to_string(), "-h");
    }

    #[test]
    fn parse_errors() {
        let n = names(&["h"]);
        assert!(Poly::parse("", &n).is_err());
        assert!(Poly::parse("y", &n).is_err());
        assert!(Poly::parse("h h", &n).is_err());
        assert!(Poly::parse("h^", &n).is_err());
    }

    #[test]
    fn arithmetic() {
        let x = Poly::var(2, 0);
        let y = Poly::var(2, 1);
        let s = &x + &y;
        let sq = s.pow(2);
        assert_eq!(sq.coeff(&[1, 1]), BigInt::from(2));
        assert!((&sq - &sq).is_zero());
        let sub = sq.substitute(&[Poly::var(1, 0), Poly::var(1, 0).scale(&BigInt::from(-1))]);
        assert!(sub.is_zero());
        assert_eq!(sq.homogeneous_weight(&[1, 1]), Some(2));
        assert_eq!((&sq + &x).homogeneous_weight(&[1, 1]), None);
    }
}
