//! Multivariate polynomials with rational coefficients and the quotient
//! rings `Q[x_1..x_k]/(g)` by a single relation.
//!
//! Normal forms use the graded-lex order with the declared variable order
//! (first variable largest). A single nonzero polynomial is always a
//! Gröbner basis of the ideal it generates, so the remainder of
//! multivariate division by `g` is a canonical representative.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::{CommRing, RingDescriptor, RingElement, TypedRing};
use crate::error::{Error, Result};

/// Exponent vector of a monomial. Ordered graded-lex.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Monomial(pub Vec<u32>);

impl Monomial {
    pub fn one(nvars: usize) -> Self {
        Monomial(vec![0; nvars])
    }

    pub fn var(nvars: usize, i: usize) -> Self {
        let mut e = vec![0; nvars];
        e[i] = 1;
        Monomial(e)
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    /// `other / self`, assuming `self.divides(other)`.
    fn quotient_of(&self, other: &Monomial) -> Monomial {
        Monomial(other.0.iter().zip(&self.0).map(|(b, a)| b - a).collect())
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// A polynomial as a sparse map from monomials to nonzero coefficients.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Polynomial {
    nvars: usize,
    terms: BTreeMap<Monomial, BigRational>,
}

impl Polynomial {
    pub fn zero(nvars: usize) -> Self {
        Polynomial {
            nvars,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(nvars: usize, c: BigRational) -> Self {
        Self::monomial(nvars, Monomial::one(nvars), c)
    }

    pub fn monomial(nvars: usize, m: Monomial, c: BigRational) -> Self {
        let mut p = Self::zero(nvars);
        if !c.is_zero() {
            p.terms.insert(m, c);
        }
        p
    }

    pub fn var(nvars: usize, i: usize) -> Self {
        Self::monomial(nvars, Monomial::var(nvars, i), BigRational::one())
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms in descending monomial order.
    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &BigRational)> {
        self.terms.iter().rev()
    }

    pub fn leading(&self) -> Option<(&Monomial, &BigRational)> {
        self.terms.iter().next_back()
    }

    pub fn as_constant(&self) -> Option<BigRational> {
        match self.terms.len() {
            0 => Some(BigRational::zero()),
            1 => {
                let (m, c) = self.leading().unwrap();
                (m.degree() == 0).then(|| c.clone())
            }
            _ => None,
        }
    }

    fn add_term(&mut self, m: Monomial, c: BigRational) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                let sum = o.get() + c;
                if sum.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = sum;
                }
            }
        }
    }

    pub fn add(&self, other: &Polynomial) -> Polynomial {
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }

    pub fn neg(&self) -> Polynomial {
        Polynomial {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
        }
    }

    pub fn sub(&self, other: &Polynomial) -> Polynomial {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Polynomial) -> Polynomial {
        let mut out = Polynomial::zero(self.nvars);
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                out.add_term(ma.mul(mb), ca * cb);
            }
        }
        out
    }

    fn scale_shift(&self, c: &BigRational, m: &Monomial) -> Polynomial {
        Polynomial {
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .map(|(mm, cc)| (mm.mul(m), cc * c))
                .collect(),
        }
    }

    /// Renders with the given variable names, e.g. `x^2*y - 3/2*z + 1`.
    pub fn display_with(&self, vars: &[String]) -> String {
        if self.terms.is_empty() {
            return "0".into();
        }
        let mut out = String::new();
        for (i, (m, c)) in self.terms().enumerate() {
            let negative = c.is_negative();
            let abs = c.abs();
            if i == 0 {
                if negative {
                    out.push('-');
                }
            } else {
                out.push_str(if negative { " - " } else { " + " });
            }
            let mono: Vec<String> =
                m.0.iter()
                    .enumerate()
                    .filter(|(_, e)| **e > 0)
                    .map(|(v, e)| {
                        if *e == 1 {
                            vars[v].clone()
                        } else {
                            format!("{}^{}", vars[v], e)
                        }
                    })
                    .collect();
            if mono.is_empty() {
                out.push_str(&abs.to_string());
            } else if abs.is_one() {
                out.push_str(&mono.join("*"));
            } else {
                out.push_str(&abs.to_string());
                out.push('*');
                out.push_str(&mono.join("*"));
            }
        }
        out
    }
}

/// Parses an expanded polynomial such as `x^2*y - 3/2*z + 1` over the
/// named variables. Unknown variables and malformed exponents are errors.
pub fn parse_polynomial(vars: &[String], text: &str) -> Result<Polynomial> {
    Parser::new(vars, text).parse()
}

struct Parser<'a> {
    vars: &'a [String],
    text: &'a str,
    chars: Vec<char>,
    pos: usize,
}

impl<'a> Parser<'a> {
    fn new(vars: &'a [String], text: &'a str) -> Self {
        Parser {
            vars,
            text,
            chars: text.chars().collect(),
            pos: 0,
        }
    }

    fn err(&self, msg: impl Into<String>) -> Error {
        Error::ElementParse {
            literal: self.text.to_string(),
            message: format!("{} (at offset {})", msg.into(), self.pos),
        }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.chars.len() && self.chars[self.pos].is_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.chars.get(self.pos).copied()
    }

    fn digits(&mut self) -> Option<String> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.chars.len() && self.chars[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        (self.pos > start).then(|| self.chars[start..self.pos].iter().collect())
    }

    fn ident(&mut self) -> Option<String> {
        self.skip_ws();
        let start = self.pos;
        if self.pos < self.chars.len()
            && (self.chars[self.pos].is_alphabetic() || self.chars[self.pos] == '_')
        {
            self.pos += 1;
            while self.pos < self.chars.len()
                && (self.chars[self.pos].is_alphanumeric() || self.chars[self.pos] == '_')
            {
                self.pos += 1;
            }
            Some(self.chars[start..self.pos].iter().collect())
        } else {
            None
        }
    }

    fn parse(mut self) -> Result<Polynomial> {
        let n = self.vars.len();
        let mut acc = Polynomial::zero(n);
        let mut sign = BigRational::one();
        match self.peek() {
            Some('-') => {
                sign = -sign;
                self.pos += 1;
            }
            Some('+') => self.pos += 1,
            None => return Err(self.err("empty expression")),
            _ => {}
        }
        loop {
            let term = self.term()?;
            acc = acc.add(&term.scale_shift(&sign, &Monomial::one(n)));
            match self.peek() {
                Some('+') => {
                    sign = BigRational::one();
                    self.pos += 1;
                }
                Some('-') => {
                    sign = -BigRational::one();
                    self.pos += 1;
                }
                None => return Ok(acc),
                Some(c) => return Err(self.err(format!("unexpected character '{c}'"))),
            }
        }
    }

    fn term(&mut self) -> Result<Polynomial> {
        let n = self.vars.len();
        let mut coeff = BigRational::one();
        let mut mono = Monomial::one(n);
        loop {
            if let Some(num) = self.digits() {
                let mut value = BigRational::from_integer(num.parse::<BigInt>().unwrap());
                if self.peek() == Some('/') {
                    self.pos += 1;
                    let den = self
                        .digits()
                        .ok_or_else(|| self.err("expected denominator after '/'"))?;
                    let den = den.parse::<BigInt>().unwrap();
                    if den.is_zero() {
                        return Err(self.err("zero denominator"));
                    }
                    value /= BigRational::from_integer(den);
                }
                coeff *= value;
            } else if let Some(name) = self.ident() {
                let idx = self
                    .vars
                    .iter()
                    .position(|v| *v == name)
                    .ok_or_else(|| self.err(format!("unknown variable '{name}'")))?;
                let mut exp = 1u32;
                if self.peek() == Some('^') {
                    self.pos += 1;
                    let e = self
                        .digits()
                        .ok_or_else(|| self.err("exponent must be a nonnegative integer"))?;
                    exp = e
                        .parse::<u32>()
                        .map_err(|_| self.err("exponent out of range"))?;
                    if let Some(c) = self.chars.get(self.pos) {
                        if *c == '.' || c.is_alphabetic() {
                            return Err(self.err("malformed exponent"));
                        }
                    }
                }
                mono.0[idx] += exp;
            } else {
                return Err(match self.peek() {
                    Some(c) => self.err(format!("expected a number or variable, found '{c}'")),
                    None => self.err("unexpected end of expression"),
                });
            }
            if self.peek() == Some('*') {
                self.pos += 1;
            } else {
                break;
            }
        }
        Ok(Polynomial::monomial(n, mono, coeff))
    }
}

#[derive(Debug, PartialEq, Eq, Hash)]
struct QuotientSpec {
    vars: Vec<String>,
    relation: Polynomial,
    lead: Monomial,
    lead_coeff: BigRational,
}

/// `Q[vars]/(relation)` with graded-lex normal forms.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct QuotientRing {
    spec: Arc<QuotientSpec>,
}

impl QuotientRing {
    pub fn new(vars: Vec<String>, relation: Polynomial) -> Result<Self> {
        if vars.is_empty() {
            return Err(Error::InvalidRing(
                "quotient ring needs at least one variable".into(),
            ));
        }
        for (i, v) in vars.iter().enumerate() {
            let ok = v
                .chars()
                .next()
                .is_some_and(|c| c.is_alphabetic() || c == '_')
                && v.chars().all(|c| c.is_alphanumeric() || c == '_');
            if !ok {
                return Err(Error::InvalidRing(format!("invalid variable name '{v}'")));
            }
            if vars[..i].contains(v) {
                return Err(Error::InvalidRing(format!("duplicate variable '{v}'")));
            }
        }
        if relation.nvars() != vars.len() {
            return Err(Error::InvalidRing(
                "relation has the wrong number of variables".into(),
            ));
        }
        let (lead, lead_coeff) = match relation.leading() {
            None => return Err(Error::InvalidRing("relation is zero".into())),
            Some((m, _)) if m.degree() == 0 => {
                return Err(Error::InvalidRing("relation is constant".into()))
            }
            Some((m, c)) => (m.clone(), c.clone()),
        };
        Ok(QuotientRing {
            spec: Arc::new(QuotientSpec {
                vars,
                relation,
                lead,
                lead_coeff,
            }),
        })
    }

    /// Parses the relation text over `vars` and builds the ring.
    pub fn parse(vars: Vec<String>, relation: &str) -> Result<Self> {
        let rel = parse_polynomial(&vars, relation)?;
        Self::new(vars, rel)
    }

    /// `Q[x,y,z]/(x^2+y^2+z^2-1)`, the coordinate ring of the unit sphere.
    pub fn sphere() -> Self {
        Self::parse(
            vec!["x".into(), "y".into(), "z".into()],
            "x^2 + y^2 + z^2 - 1",
        )
        .expect("sphere relation is valid")
    }

    pub fn vars(&self) -> &[String] {
        &self.spec.vars
    }

    pub fn nvars(&self) -> usize {
        self.spec.vars.len()
    }

    pub fn relation(&self) -> &Polynomial {
        &self.spec.relation
    }

    pub fn relation_text(&self) -> String {
        self.spec.relation.display_with(&self.spec.vars)
    }

    pub fn var(&self, name: &str) -> Option<Polynomial> {
        let i = self.spec.vars.iter().position(|v| v == name)?;
        Some(Polynomial::var(self.nvars(), i))
    }

    /// Normal form modulo the relation.
    pub fn reduce(&self, p: &Polynomial) -> Polynomial {
        let lead = &self.spec.lead;
        let mut p = p.clone();
        loop {
            let target = p
                .terms
                .iter()
                .rev()
                .find(|(m, _)| lead.divides(m))
                .map(|(m, c)| (m.clone(), c.clone()));
            let Some((m, c)) = target else {
                return p;
            };
            let factor = c / &self.spec.lead_coeff;
            let shift = lead.quotient_of(&m);
            p = p.sub(&self.spec.relation.scale_shift(&factor, &shift));
        }
    }

    pub fn is_reduced(&self, p: &Polynomial) -> bool {
        p.nvars() == self.nvars() && p.terms.keys().all(|m| !self.spec.lead.divides(m))
    }

    pub fn parse_element(&self, text: &str) -> Result<Polynomial> {
        Ok(self.reduce(&parse_polynomial(&self.spec.vars, text)?))
    }
}

impl fmt::Display for QuotientRing {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "Q[{}]/({})",
            self.spec.vars.join(","),
            self.relation_text()
        )
    }
}

impl CommRing for QuotientRing {
    type Elem = Polynomial;

    fn zero(&self) -> Polynomial {
        Polynomial::zero(self.nvars())
    }

    fn one(&self) -> Polynomial {
        self.reduce(&Polynomial::constant(self.nvars(), BigRational::one()))
    }

    fn from_i64(&self, n: i64) -> Polynomial {
        self.reduce(&Polynomial::constant(
            self.nvars(),
            BigRational::from_integer(n.into()),
        ))
    }

    fn add(&self, a: &Polynomial, b: &Polynomial) -> Polynomial {
        a.add(b)
    }

    fn sub(&self, a: &Polynomial, b: &Polynomial) -> Polynomial {
        a.sub(b)
    }

    fn mul(&self, a: &Polynomial, b: &Polynomial) -> Polynomial {
        self.reduce(&a.mul(b))
    }

    fn neg(&self, a: &Polynomial) -> Polynomial {
        a.neg()
    }

    fn is_zero(&self, a: &Polynomial) -> bool {
        a.is_zero()
    }

    fn try_invert(&self, a: &Polynomial) -> Option<Polynomial> {
        // Only nonzero constants are certified units.
        let c = a.as_constant()?;
        if c.is_zero() {
            return None;
        }
        Some(Polynomial::constant(self.nvars(), c.recip()))
    }

    fn format(&self, a: &Polynomial) -> String {
        a.display_with(&self.spec.vars)
    }

    fn name(&self) -> String {
        self.to_string()
    }
}

impl TypedRing for QuotientRing {
    fn descriptor(&self) -> RingDescriptor {
        RingDescriptor::PolyQuotient(self.clone())
    }

    fn lower(&self, e: &RingElement) -> Polynomial {
        match e {
            RingElement::Poly(p) if p.nvars() == self.nvars() => p.clone(),
            other => panic!("expected a polynomial over {self}, found {other:?}"),
        }
    }

    fn lift(&self, e: &Polynomial) -> RingElement {
        RingElement::Poly(e.clone())
    }
}
