//! Sparse multivariate polynomials with rational coefficients over named
//! variables, plus a small expression parser (`+ - * ^`, parentheses,
//! integer and `n/d` coefficients).

use std::collections::BTreeMap;
use std::fmt;

use num_rational::Ratio;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::scalar::{Int, Rat};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Poly<I: Int> {
    vars: Vec<String>,
    terms: BTreeMap<Vec<u32>, Rat<I>>,
}

impl<I: Int> Poly<I> {
    pub fn zero(vars: &[&str]) -> Self {
        Poly {
            vars: vars.iter().map(|v| v.to_string()).collect(),
            terms: BTreeMap::new(),
        }
    }

    fn zero_like(&self) -> Self {
        Poly {
            vars: self.vars.clone(),
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(vars: &[&str], c: Rat<I>) -> Self {
        let mut p = Self::zero(vars);
        p.add_term(vec![0; vars.len()], c);
        p
    }

    pub fn var(vars: &[&str], name: &str) -> Result<Self> {
        let idx = vars
            .iter()
            .position(|v| *v == name)
            .ok_or_else(|| Error::Parse(format!("unknown variable {name:?}")))?;
        let mut exp = vec![0; vars.len()];
        exp[idx] = 1;
        let mut p = Self::zero(vars);
        p.add_term(exp, Ratio::one());
        Ok(p)
    }

    pub fn from_terms(vars: &[&str], terms: impl IntoIterator<Item = (Vec<u32>, Rat<I>)>) -> Result<Self> {
        let mut p = Self::zero(vars);
        for (exp, c) in terms {
            if exp.len() != vars.len() {
                return Err(Error::DimensionMismatch {
                    expected: vars.len(),
                    got: exp.len(),
                });
            }
            p.add_term(exp, c);
        }
        Ok(p)
    }

    pub fn vars(&self) -> &[String] {
        &self.vars
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<u32>, &Rat<I>)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, exp: &[u32]) -> Rat<I> {
        self.terms.get(exp).cloned().unwrap_or_else(Ratio::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(|e| e.iter().sum()).max()
    }

    /// Degree in the variables listed by index, if homogeneous in them.
    pub fn partial_degree(&self, idx: &[usize]) -> Option<u32> {
        let mut degs = self
            .terms
            .keys()
            .map(|e| idx.iter().map(|&i| e[i]).sum::<u32>());
        let first = degs.next()?;
        degs.all(|d| d == first).then_some(first)
    }

    fn add_term(&mut self, exp: Vec<u32>, c: Rat<I>) {
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry(exp.clone()).or_insert_with(Ratio::zero);
        *entry = entry.clone() + c;
        if entry.is_zero() {
            self.terms.remove(&exp);
        }
    }

    fn check_vars(&self, other: &Poly<I>) -> Result<()> {
        if self.vars != other.vars {
            return Err(Error::Input(format!(
                "variable sets differ: {:?} vs {:?}",
                self.vars, other.vars
            )));
        }
        Ok(())
    }

    pub fn add(&self, other: &Poly<I>) -> Result<Poly<I>> {
        self.check_vars(other)?;
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn neg(&self) -> Poly<I> {
        Poly {
            vars: self.vars.clone(),
            terms: self.terms.iter().map(|(e, c)| (e.clone(), -c.clone())).collect(),
        }
    }

    pub fn sub(&self, other: &Poly<I>) -> Result<Poly<I>> {
        self.add(&other.neg())
    }

    pub fn scale(&self, s: &Rat<I>) -> Poly<I> {
        let mut out = self.zero_like();
        for (e, c) in &self.terms {
            out.add_term(e.clone(), c.clone() * s.clone());
        }
        out
    }

    pub fn mul(&self, other: &Poly<I>) -> Result<Poly<I>> {
        self.check_vars(other)?;
        let mut out = self.zero_like();
        for (e1, c1) in &self.terms {
            for (e2, c2) in &other.terms {
                let e: Vec<u32> = e1.iter().zip(e2).map(|(a, b)| a + b).collect();
                out.add_term(e, c1.clone() * c2.clone());
            }
        }
        Ok(out)
    }

    pub fn pow(&self, n: u32) -> Poly<I> {
        let mut acc = Poly {
            vars: self.vars.clone(),
            terms: BTreeMap::from([(vec![0; self.vars.len()], Ratio::one())]),
        };
        for _ in 0..n {
            acc = acc.mul(self).expect("same variables");
        }
        acc
    }

    /// Substitutes `images[i]` for variable `i`; all images share one variable set.
    pub fn substitute(&self, images: &[Poly<I>]) -> Result<Poly<I>> {
        if images.len() != self.vars.len() {
            return Err(Error::DimensionMismatch {
                expected: self.vars.len(),
                got: images.len(),
            });
        }
        let target: Vec<&str> = match images.first() {
            Some(p) => p.vars.iter().map(String::as_str).collect(),
            None => Vec::new(),
        };
        let mut out = Poly::zero(&target);
        for (e, c) in &self.terms {
            let mut term = Poly::constant(&target, c.clone());
            for (img, &k) in images.iter().zip(e) {
                if k > 0 {
                    term = term.mul(&img.pow(k))?;
                }
            }
            out = out.add(&term)?;
        }
        Ok(out)
    }

    pub fn parse(text: &str, vars: &[&str]) -> Result<Poly<I>> {
        let tokens = tokenize(text)?;
        let mut parser = Parser {
            tokens,
            pos: 0,
            vars,
        };
        let p = parser.expr()?;
        if parser.pos != parser.tokens.len() {
            return Err(Error::Parse(format!(
                "unexpected token {:?} in {text:?}",
                parser.tokens[parser.pos]
            )));
        }
        Ok(p)
    }
}

impl<I: Int> fmt::Display for Poly<I> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (e, c)) in self.terms.iter().rev().enumerate() {
            let neg = c.is_negative();
            let mag = c.abs();
            if i == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { "-" } else { "+" })?;
            }
            let mono: Vec<String> = e
                .iter()
                .zip(&self.vars)
                .filter(|(k, _)| **k > 0)
                .map(|(k, v)| if *k == 1 { v.clone() } else { format!("{v}^{k}") })
                .collect();
            let coeff = if mag.is_integer() {
                mag.to_integer().to_string()
            } else {
                format!("{}/{}", mag.numer(), mag.denom())
            };
            match (mono.is_empty(), mag.is_one()) {
                (true, _) => write!(f, "{coeff}")?,
                (false, true) => write!(f, "{}", mono.join("*"))?,
                (false, false) => write!(f, "{coeff}*{}", mono.join("*"))?,
            }
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq)]
enum Token {
    Num(String),
    Ident(String),
    Op(char),
}

fn tokenize(text: &str) -> Result<Vec<Token>> {
    let mut out = Vec::new();
    let chars: Vec<char> = text.chars().collect();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        if c.is_whitespace() {
            i += 1;
        } else if c.is_ascii_digit() {
            let start = i;
            while i < chars.len() && chars[i].is_ascii_digit() {
                i += 1;
            }
            out.push(Token::Num(chars[start..i].iter().collect()));
        } else if c.is_alphabetic() || c == '_' {
            let start = i;
            while i < chars.len() && (chars[i].is_alphanumeric() || chars[i] == '_') {
                i += 1;
            }
            out.push(Token::Ident(chars[start..i].iter().collect()));
        } else if "+-*/^()".contains(c) {
            out.push(Token::Op(c));
            i += 1;
        } else {
            return Err(Error::Parse(format!("unexpected character {c:?} in {text:?}")));
        }
    }
    Ok(out)
}

struct Parser<'a> {
    tokens: Vec<Token>,
    pos: usize,
    vars: &'a [&'a str],
}

impl Parser<'_> {
    fn peek(&self) -> Option<&Token> {
        self.tokens.get(self.pos)
    }

    fn eat_op(&mut self, op: char) -> bool {
        if self.peek() == Some(&Token::Op(op)) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expr<I: Int>(&mut self) -> Result<Poly<I>> {
        let mut acc = self.term()?;
        loop {
            if self.eat_op('+') {
                acc = acc.add(&self.term()?)?;
            } else if self.eat_op('-') {
                acc = acc.sub(&self.term()?)?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn term<I: Int>(&mut self) -> Result<Poly<I>> {
        let mut acc = self.factor()?;
        loop {
            if self.eat_op('*') {
                acc = acc.mul(&self.factor()?)?;
            } else if self.eat_op('/') {
                let d = match self.tokens.get(self.pos) {
                    Some(Token::Num(n)) => crate::scalar::parse_int::<I>(n)
                        .ok_or_else(|| Error::Parse(format!("bad number {n:?}")))?,
                    other => {
                        return Err(Error::Parse(format!(
                            "only division by an integer constant is supported, got {other:?}"
                        )))
                    }
                };
                self.pos += 1;
                if d.is_zero() {
                    return Err(Error::Parse("division by zero".into()));
                }
                acc = acc.scale(&Ratio::new(I::one(), d));
            } else {
                return Ok(acc);
            }
        }
    }

    fn factor<I: Int>(&mut self) -> Result<Poly<I>> {
        if self.eat_op('-') {
            return Ok(self.factor::<I>()?.neg());
        }
        if self.eat_op('+') {
            return self.factor();
        }
        let base = self.atom()?;
        if self.eat_op('^') {
            let Some(Token::Num(n)) = self.tokens.get(self.pos) else {
                return Err(Error::Parse("exponent must be a non-negative integer".into()));
            };
            let k: u32 = n
                .parse()
                .map_err(|_| Error::Parse(format!("bad exponent {n:?}")))?;
            self.pos += 1;
            return Ok(base.pow(k));
        }
        Ok(base)
    }

    fn atom<I: Int>(&mut self) -> Result<Poly<I>> {
        match self.tokens.get(self.pos).cloned() {
            Some(Token::Num(n)) => {
                self.pos += 1;
                let v = crate::scalar::parse_int::<I>(&n)
                    .ok_or_else(|| Error::Parse(format!("bad number {n:?}")))?;
                Ok(Poly::constant(self.vars, Ratio::from_integer(v)))
            }
            Some(Token::Ident(name)) => {
                self.pos += 1;
                Poly::var(self.vars, &name)
            }
            Some(Token::Op('(')) => {
                self.pos += 1;
                let inner = self.expr()?;
                if !self.eat_op(')') {
                    return Err(Error::Parse("missing ')'".into()));
                }
                Ok(inner)
            }
            other => Err(Error::Parse(format!("unexpected token {other:?}"))),
        }
    }
}
