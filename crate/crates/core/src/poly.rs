//! Sparse multivariate polynomials over ℚ in an x-block and a y-block.
//!
//! Terms are kept in a `BTreeMap` ordered by graded lex (x1 > x2 > … and the
//! x-block before the y-block), so iteration, printing and comparison are
//! canonical without a separate normalization pass.

use std::cmp::Ordering;
use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

pub type Rational = BigRational;

pub fn rat(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn ratio(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

/// A variable x_i or y_j, 1-based.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Var {
    X(usize),
    Y(usize),
}

/// Exponent vectors for both blocks with trailing zeros trimmed.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Monomial {
    x: Vec<u32>,
    y: Vec<u32>,
}

fn trim(v: &mut Vec<u32>) {
    while v.last() == Some(&0) {
        v.pop();
    }
}

fn lex(a: &[u32], b: &[u32]) -> Ordering {
    let n = a.len().max(b.len());
    for k in 0..n {
        let ea = a.get(k).copied().unwrap_or(0);
        let eb = b.get(k).copied().unwrap_or(0);
        match ea.cmp(&eb) {
            Ordering::Equal => {}
            other => return other,
        }
    }
    Ordering::Equal
}

impl Monomial {
    pub fn one() -> Self {
        Monomial::default()
    }

    pub fn new(mut x: Vec<u32>, mut y: Vec<u32>) -> Self {
        trim(&mut x);
        trim(&mut y);
        Monomial { x, y }
    }

    pub fn var(v: Var) -> Self {
        let mut m = Monomial::one();
        m.set_exp(v, 1);
        m
    }

    pub fn x_exps(&self) -> &[u32] {
        &self.x
    }

    pub fn y_exps(&self) -> &[u32] {
        &self.y
    }

    pub fn exp(&self, v: Var) -> u32 {
        match v {
            Var::X(i) => self.x.get(i - 1).copied().unwrap_or(0),
            Var::Y(j) => self.y.get(j - 1).copied().unwrap_or(0),
        }
    }

    pub fn set_exp(&mut self, v: Var, e: u32) {
        let (block, idx) = match v {
            Var::X(i) => (&mut self.x, i - 1),
            Var::Y(j) => (&mut self.y, j - 1),
        };
        if block.len() <= idx {
            if e == 0 {
                return;
            }
            block.resize(idx + 1, 0);
        }
        block[idx] = e;
        trim(block);
    }

    pub fn is_one(&self) -> bool {
        self.x.is_empty() && self.y.is_empty()
    }

    pub fn degree(&self) -> u32 {
        self.x.iter().sum::<u32>() + self.y.iter().sum::<u32>()
    }

    pub fn has_y(&self) -> bool {
        !self.y.is_empty()
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        let add = |a: &[u32], b: &[u32]| -> Vec<u32> {
            let n = a.len().max(b.len());
            (0..n)
                .map(|k| a.get(k).copied().unwrap_or(0) + b.get(k).copied().unwrap_or(0))
                .collect()
        };
        Monomial {
            x: add(&self.x, &other.x),
            y: add(&self.y, &other.y),
        }
    }

    /// Image under s_i, which swaps x_i and x_{i+1}.
    pub fn swap_x(&self, i: usize) -> Monomial {
        let a = self.exp(Var::X(i));
        let b = self.exp(Var::X(i + 1));
        let mut m = self.clone();
        m.set_exp(Var::X(i), b);
        m.set_exp(Var::X(i + 1), a);
        m
    }

    fn fmt_factors(&self) -> Vec<String> {
        let mut out = Vec::new();
        for (name, block) in [("x", &self.x), ("y", &self.y)] {
            for (k, &e) in block.iter().enumerate() {
                match e {
                    0 => {}
                    1 => out.push(format!("{name}{}", k + 1)),
                    _ => out.push(format!("{name}{}^{e}", k + 1)),
                }
            }
        }
        out
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| lex(&self.x, &other.x))
            .then_with(|| lex(&self.y, &other.y))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_one() {
            f.write_str("1")
        } else {
            f.write_str(&self.fmt_factors().join("*"))
        }
    }
}

#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Polynomial {
    terms: BTreeMap<Monomial, Rational>,
}

impl Polynomial {
    pub fn zero() -> Self {
        Polynomial::default()
    }

    pub fn one() -> Self {
        Polynomial::constant(Rational::one())
    }

    pub fn constant(c: Rational) -> Self {
        Polynomial::term(Monomial::one(), c)
    }

    pub fn int(c: i64) -> Self {
        Polynomial::constant(rat(c))
    }

    pub fn x(i: usize) -> Self {
        Polynomial::term(Monomial::var(Var::X(i)), Rational::one())
    }

    pub fn y(j: usize) -> Self {
        Polynomial::term(Monomial::var(Var::Y(j)), Rational::one())
    }

    pub fn term(m: Monomial, c: Rational) -> Self {
        let mut p = Polynomial::zero();
        p.add_term(m, c);
        p
    }

    pub fn from_terms<I: IntoIterator<Item = (Monomial, Rational)>>(terms: I) -> Self {
        let mut acc: HashMap<Monomial, Rational> = HashMap::new();
        for (m, c) in terms {
            *acc.entry(m).or_insert_with(Rational::zero) += c;
        }
        Polynomial {
            terms: acc.into_iter().filter(|(_, c)| !c.is_zero()).collect(),
        }
    }

    pub fn add_term(&mut self, m: Monomial, c: Rational) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(m) {
            Entry::Vacant(e) => {
                e.insert(c);
            }
            Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
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

    /// Terms in descending graded-lex order.
    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Rational)> {
        self.terms.iter().rev()
    }

    pub fn coefficient(&self, m: &Monomial) -> Rational {
        self.terms.get(m).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn constant_term(&self) -> Rational {
        self.coefficient(&Monomial::one())
    }

    pub fn scale(&self, c: &Rational) -> Polynomial {
        if c.is_zero() {
            return Polynomial::zero();
        }
        Polynomial {
            terms: self.terms.iter().map(|(m, v)| (m.clone(), v * c)).collect(),
        }
    }

    pub fn pow(&self, e: u32) -> Polynomial {
        let mut out = Polynomial::one();
        for _ in 0..e {
            out = &out * self;
        }
        out
    }

    /// Total degree, `None` for the zero polynomial.
    pub fn degree(&self) -> Option<u32> {
        self.terms.keys().next_back().map(Monomial::degree)
    }

    pub fn min_degree(&self) -> Option<u32> {
        self.terms.keys().next().map(Monomial::degree)
    }

    pub fn var_degree(&self, v: Var) -> u32 {
        self.terms.keys().map(|m| m.exp(v)).max().unwrap_or(0)
    }

    /// Largest i with x_i present (0 if none).
    pub fn max_x_index(&self) -> usize {
        self.terms.keys().map(|m| m.x.len()).max().unwrap_or(0)
    }

    pub fn max_y_index(&self) -> usize {
        self.terms.keys().map(|m| m.y.len()).max().unwrap_or(0)
    }

    pub fn has_y(&self) -> bool {
        self.terms.keys().any(Monomial::has_y)
    }

    pub fn is_homogeneous(&self) -> bool {
        self.degree() == self.min_degree()
    }

    pub fn homogeneous_part(&self, d: u32) -> Polynomial {
        Polynomial {
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| m.degree() == d)
                .map(|(m, c)| (m.clone(), c.clone()))
                .collect(),
        }
    }

    /// Homogeneous component of minimal total degree.
    pub fn lowest_degree_part(&self) -> Result<Polynomial> {
        let d = self.min_degree().ok_or(Error::ZeroPolynomial)?;
        Ok(self.homogeneous_part(d))
    }

    pub fn is_integral(&self) -> bool {
        self.terms.values().all(|c| c.is_integer())
    }

    pub fn is_nonnegative_integral(&self) -> bool {
        self.terms
            .values()
            .all(|c| c.is_integer() && !c.is_negative())
    }

    /// Image under s_i (x_i ↔ x_{i+1}).
    pub fn swap_x(&self, i: usize) -> Polynomial {
        Polynomial {
            terms: self
                .terms
                .iter()
                .map(|(m, c)| (m.swap_x(i), c.clone()))
                .collect(),
        }
    }

    pub fn is_symmetric_in(&self, i: usize) -> bool {
        self.swap_x(i) == *self
    }

    /// Replaces each variable `v` with `image(v)` when it returns `Some`.
    pub fn substitute<F>(&self, image: F) -> Polynomial
    where
        F: Fn(Var) -> Option<Polynomial>,
    {
        let mut powers: HashMap<(Var, u32), Polynomial> = HashMap::new();
        let mut out = Polynomial::zero();
        for (m, c) in &self.terms {
            let mut kept = Monomial::one();
            let mut factor = Polynomial::one();
            let vars = m
                .x
                .iter()
                .enumerate()
                .map(|(k, &e)| (Var::X(k + 1), e))
                .chain(m.y.iter().enumerate().map(|(k, &e)| (Var::Y(k + 1), e)));
            for (v, e) in vars {
                if e == 0 {
                    continue;
                }
                match image(v) {
                    Some(img) => {
                        let pw = powers.entry((v, e)).or_insert_with(|| img.pow(e));
                        factor = &factor * &*pw;
                    }
                    None => kept.set_exp(v, e),
                }
            }
            let part = &factor * &Polynomial::term(kept, c.clone());
            out += &part;
        }
        out
    }

    /// x_i ↦ 1 − x_i and y_j ↦ 1 − y_j.
    pub fn substitute_one_minus_x(&self) -> Polynomial {
        self.substitute(|v| {
            let base = match v {
                Var::X(i) => Polynomial::x(i),
                Var::Y(j) => Polynomial::y(j),
            };
            Some(&Polynomial::one() - &base)
        })
    }

    /// Lowest-degree homogeneous part of f(1 − x, 1 − y), found degree by
    /// degree without expanding the whole substitution.
    pub fn lowest_part_at_one_minus_x(&self) -> Result<Polynomial> {
        let top = self.degree().ok_or(Error::ZeroPolynomial)?;
        for d in 0..=top {
            let mut acc: HashMap<Monomial, Rational> = HashMap::new();
            for (m, c) in &self.terms {
                let nx = m.x.len();
                let exps: Vec<u32> = m.x.iter().chain(&m.y).copied().collect();
                let mut picks = vec![0u32; exps.len()];
                spread(&exps, &mut picks, 0, d, BigInt::one(), &mut |k, weight| {
                    let mono = Monomial::new(k[..nx].to_vec(), k[nx..].to_vec());
                    *acc.entry(mono).or_insert_with(Rational::zero) += c * Rational::from_integer(weight);
                });
            }
            acc.retain(|_, c| !c.is_zero());
            if !acc.is_empty() {
                return Ok(Polynomial {
                    terms: acc.into_iter().collect(),
                });
            }
        }
        Err(Error::ZeroPolynomial)
    }

    /// Substitutes the given y-variables; others are left alone.
    pub fn specialize_y(&self, assignments: &BTreeMap<usize, Polynomial>) -> Polynomial {
        self.substitute(|v| match v {
            Var::Y(j) => assignments.get(&j).cloned(),
            Var::X(_) => None,
        })
    }

    /// Sets every y-variable to zero.
    pub fn drop_y(&self) -> Polynomial {
        Polynomial {
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| !m.has_y())
                .map(|(m, c)| (m.clone(), c.clone()))
                .collect(),
        }
    }

    /// Splits into y-monomial → x-part, i.e. views f as a polynomial in x
    /// with coefficients in ℚ[y] transposed.
    pub fn into_x_coefficients(&self) -> BTreeMap<Monomial, Polynomial> {
        let mut out: BTreeMap<Monomial, Polynomial> = BTreeMap::new();
        for (m, c) in &self.terms {
            let xm = Monomial::new(m.x.clone(), Vec::new());
            let ym = Monomial::new(Vec::new(), m.y.clone());
            out.entry(xm).or_default().add_term(ym, c.clone());
        }
        out
    }

    pub fn parse(text: &str) -> Result<Polynomial> {
        Parser::new(text)?.parse_all()
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        for (k, (m, c)) in self.terms().enumerate() {
            let neg = c.is_negative();
            match (k, neg) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            let a = c.abs();
            if m.is_one() {
                write!(f, "{a}")?;
            } else {
                if !a.is_one() {
                    write!(f, "{a}*")?;
                }
                f.write_str(&m.fmt_factors().join("*"))?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for Polynomial {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Polynomial::parse(s)
    }
}

impl From<i64> for Polynomial {
    fn from(c: i64) -> Self {
        Polynomial::int(c)
    }
}

impl<'a> Add<&'a Polynomial> for &'a Polynomial {
    type Output = Polynomial;
    fn add(self, rhs: &'a Polynomial) -> Polynomial {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl Add for Polynomial {
    type Output = Polynomial;
    fn add(mut self, rhs: Polynomial) -> Polynomial {
        self += &rhs;
        self
    }
}

impl AddAssign<&Polynomial> for Polynomial {
    fn add_assign(&mut self, rhs: &Polynomial) {
        for (m, c) in &rhs.terms {
            self.add_term(m.clone(), c.clone());
        }
    }
}

impl SubAssign<&Polynomial> for Polynomial {
    fn sub_assign(&mut self, rhs: &Polynomial) {
        for (m, c) in &rhs.terms {
            self.add_term(m.clone(), -c.clone());
        }
    }
}

impl<'a> Sub<&'a Polynomial> for &'a Polynomial {
    type Output = Polynomial;
    fn sub(self, rhs: &'a Polynomial) -> Polynomial {
        let mut out = self.clone();
        out -= rhs;
        out
    }
}

impl Sub for Polynomial {
    type Output = Polynomial;
    fn sub(mut self, rhs: Polynomial) -> Polynomial {
        self -= &rhs;
        self
    }
}

impl Neg for &Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        Polynomial {
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c.clone())).collect(),
        }
    }
}

impl Neg for Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        -&self
    }
}

impl<'a> Mul<&'a Polynomial> for &'a Polynomial {
    type Output = Polynomial;
    fn mul(self, rhs: &'a Polynomial) -> Polynomial {
        if self.is_zero() || rhs.is_zero() {
            return Polynomial::zero();
        }
        let mut acc: HashMap<Monomial, Rational> =
            HashMap::with_capacity(self.terms.len() * rhs.terms.len());
        for (ma, ca) in &self.terms {
            for (mb, cb) in &rhs.terms {
                let prod = ca * cb;
                match acc.get_mut(&ma.mul(mb)) {
                    Some(slot) => *slot += prod,
                    None => {
                        acc.insert(ma.mul(mb), prod);
                    }
                }
            }
        }
        Polynomial {
            terms: acc.into_iter().filter(|(_, c)| !c.is_zero()).collect(),
        }
    }
}

impl Mul for Polynomial {
    type Output = Polynomial;
    fn mul(self, rhs: Polynomial) -> Polynomial {
        &self * &rhs
    }
}

/// Product of a list of factors.
pub fn product<'a, I: IntoIterator<Item = &'a Polynomial>>(factors: I) -> Polynomial {
    factors
        .into_iter()
        .fold(Polynomial::one(), |acc, f| &acc * f)
}

#[derive(Debug, Clone, PartialEq)]
enum Token {
    Num(BigInt),
    Var(Var),
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
}

struct Parser {
    tokens: Vec<Token>,
    pos: usize,
}

impl Parser {
    fn new(text: &str) -> Result<Self> {
        let chars: Vec<char> = text.chars().collect();
        let mut tokens = Vec::new();
        let mut k = 0;
        let digits = |k: &mut usize| -> String {
            let start = *k;
            while *k < chars.len() && chars[*k].is_ascii_digit() {
                *k += 1;
            }
            chars[start..*k].iter().collect()
        };
        while k < chars.len() {
            let c = chars[k];
            match c {
                _ if c.is_whitespace() => k += 1,
                '0'..='9' => {
                    let s = digits(&mut k);
                    tokens.push(Token::Num(s.parse().unwrap()));
                }
                'x' | 'y' => {
                    k += 1;
                    if k < chars.len() && chars[k] == '_' {
                        k += 1;
                    }
                    let s = digits(&mut k);
                    let idx: usize = s
                        .parse()
                        .map_err(|_| Error::Parse(format!("variable {c} needs an index")))?;
                    if idx == 0 {
                        return Err(Error::Parse(format!("{c}0 is not a variable")));
                    }
                    tokens.push(Token::Var(if c == 'x' { Var::X(idx) } else { Var::Y(idx) }));
                }
                '+' => {
                    tokens.push(Token::Plus);
                    k += 1
                }
                '-' | '−' => {
                    tokens.push(Token::Minus);
                    k += 1
                }
                '*' | '·' => {
                    tokens.push(Token::Star);
                    k += 1
                }
                '/' => {
                    tokens.push(Token::Slash);
                    k += 1
                }
                '^' => {
                    tokens.push(Token::Caret);
                    k += 1
                }
                '(' => {
                    tokens.push(Token::LParen);
                    k += 1
                }
                ')' => {
                    tokens.push(Token::RParen);
                    k += 1
                }
                _ => return Err(Error::Parse(format!("unexpected character {c:?}"))),
            }
        }
        Ok(Parser { tokens, pos: 0 })
    }

    fn peek(&self) -> Option<&Token> {
        self.tokens.get(self.pos)
    }

    fn next(&mut self) -> Option<Token> {
        let t = self.tokens.get(self.pos).cloned();
        self.pos += 1;
        t
    }

    fn parse_all(mut self) -> Result<Polynomial> {
        if self.tokens.is_empty() {
            return Err(Error::Parse("empty polynomial".into()));
        }
        let p = self.expr()?;
        match self.peek() {
            None => Ok(p),
            Some(t) => Err(Error::Parse(format!("unexpected token {t:?}"))),
        }
    }

    fn expr(&mut self) -> Result<Polynomial> {
        let mut acc = match self.peek() {
            Some(Token::Minus) => {
                self.next();
                -self.term()?
            }
            Some(Token::Plus) => {
                self.next();
                self.term()?
            }
            _ => self.term()?,
        };
        loop {
            match self.peek() {
                Some(Token::Plus) => {
                    self.next();
                    acc += &self.term()?;
                }
                Some(Token::Minus) => {
                    self.next();
                    acc -= &self.term()?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<Polynomial> {
        let mut acc = self.power()?;
        loop {
            match self.peek() {
                Some(Token::Star) => {
                    self.next();
                    acc = &acc * &self.power()?;
                }
                Some(Token::Slash) => {
                    self.next();
                    let d = self.power()?;
                    if d.degree() != Some(0) {
                        return Err(Error::Parse("division by a non-constant".into()));
                    }
                    acc = acc.scale(&(Rational::one() / d.constant_term()));
                }
                // juxtaposition: 2x1(x1+x2)
                Some(Token::Num(_)) | Some(Token::Var(_)) | Some(Token::LParen) => {
                    acc = &acc * &self.power()?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn power(&mut self) -> Result<Polynomial> {
        let base = self.primary()?;
        if self.peek() == Some(&Token::Caret) {
            self.next();
            match self.next() {
                Some(Token::Num(n)) => {
                    let e: u32 = n
                        .try_into()
                        .map_err(|_| Error::Parse("exponent too large".into()))?;
                    Ok(base.pow(e))
                }
                _ => Err(Error::Parse("exponent must be a nonnegative integer".into())),
            }
        } else {
            Ok(base)
        }
    }

    fn primary(&mut self) -> Result<Polynomial> {
        match self.next() {
            Some(Token::Num(n)) => Ok(Polynomial::constant(Rational::from_integer(n))),
            Some(Token::Var(v)) => Ok(Polynomial::term(Monomial::var(v), Rational::one())),
            Some(Token::Minus) => Ok(-self.power()?),
            Some(Token::LParen) => {
                let inner = self.expr()?;
                match self.next() {
                    Some(Token::RParen) => Ok(inner),
                    _ => Err(Error::Parse("missing ')'".into())),
                }
            }
            Some(t) => Err(Error::Parse(format!("unexpected token {t:?}"))),
            None => Err(Error::Parse("unexpected end of input".into())),
        }
    }
}

/// Visits every k ≤ exps (componentwise) with |k| = left, passing the product
/// of signed binomials Π (−1)^{k_i} C(a_i, k_i).
fn spread(exps: &[u32], picks: &mut [u32], at: usize, left: u32, weight: BigInt, visit: &mut dyn FnMut(&[u32], BigInt)) {
    if at == exps.len() {
        if left == 0 {
            visit(picks, weight);
        }
        return;
    }
    let room: u32 = exps[at + 1..].iter().sum();
    let lo = left.saturating_sub(room);
    let hi = left.min(exps[at]);
    for k in lo..=hi {
        let mut b = BigInt::one();
        for t in 0..k {
            b = b * (exps[at] - t) / (t + 1);
        }
        if k % 2 == 1 {
            b = -b;
        }
        picks[at] = k;
        spread(exps, picks, at + 1, left - k, &weight * b, visit);
    }
}
