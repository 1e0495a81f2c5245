//! Divided difference, half divided difference and Demazure operators.
//! All of them act on the x-block only.

use num_traits::One;

use crate::poly::{ratio, Monomial, Polynomial, Rational, Var};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Operator {
    /// ∂_i
    Divided,
    /// ½∂_i
    HalfDivided,
    /// D_i(f) = −∂_i(x_{i+1} f)
    Demazure,
}

impl Operator {
    pub fn apply(self, i: usize, f: &Polynomial) -> Polynomial {
        match self {
            Operator::Divided => divided_difference(i, f),
            Operator::HalfDivided => half_divided_difference(i, f),
            Operator::Demazure => demazure(i, f),
        }
    }
}

/// ∂_i on a single monomial, written out as the geometric-series quotient
/// (x_i^a x_{i+1}^b − x_i^b x_{i+1}^a)/(x_i − x_{i+1}).
fn divided_difference_monomial(i: usize, m: &Monomial, c: &Rational, out: &mut Polynomial) {
    let a = m.exp(Var::X(i));
    let b = m.exp(Var::X(i + 1));
    if a == b {
        return;
    }
    let (hi, lo, coeff) = if a > b {
        (a, b, c.clone())
    } else {
        (b, a, -c.clone())
    };
    let span = hi - lo;
    for k in 0..span {
        let mut t = m.clone();
        t.set_exp(Var::X(i), lo + span - 1 - k);
        t.set_exp(Var::X(i + 1), lo + k);
        out.add_term(t, coeff.clone());
    }
}

pub fn divided_difference(i: usize, f: &Polynomial) -> Polynomial {
    assert!(i >= 1, "operator index starts at 1");
    let mut out = Polynomial::zero();
    for (m, c) in f.terms() {
        divided_difference_monomial(i, m, c, &mut out);
    }
    out
}

pub fn half_divided_difference(i: usize, f: &Polynomial) -> Polynomial {
    divided_difference(i, f).scale(&ratio(1, 2))
}

pub fn demazure(i: usize, f: &Polynomial) -> Polynomial {
    assert!(i >= 1, "operator index starts at 1");
    let mut out = Polynomial::zero();
    let minus_one = -Rational::one();
    for (m, c) in f.terms() {
        let shifted = m.mul(&Monomial::var(Var::X(i + 1)));
        divided_difference_monomial(i, &shifted, &(c * &minus_one), &mut out);
    }
    out
}

/// Applies `op` along `word = [i1, ..., il]` as op_{i1} ∘ ... ∘ op_{il}, so
/// the last index acts first.
pub fn apply_sequence(op: Operator, word: &[usize], f: &Polynomial) -> Polynomial {
    word.iter().rev().fold(f.clone(), |acc, &i| op.apply(i, &acc))
}
