#![allow(dead_code)]

use std::collections::BTreeMap;
use std::path::PathBuf;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use rand::rngs::StdRng;
use rand::Rng;

use symorbit::perm::all_permutations;
use symorbit::poly::Monomial;
use symorbit::{Permutation, Polynomial};

pub fn fixture(name: &str) -> Vec<(String, Polynomial)> {
    let path = PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("tests/fixtures")
        .join(name);
    let text = std::fs::read_to_string(&path).unwrap_or_else(|e| panic!("{}: {e}", path.display()));
    text.lines()
        .filter(|l| !l.trim().is_empty() && !l.starts_with('#'))
        .map(|l| {
            let (label, poly) = l.split_once('|').expect("row needs a '|' separator");
            let f = Polynomial::parse(poly.trim()).unwrap_or_else(|e| panic!("{poly}: {e}"));
            (label.trim().to_string(), f)
        })
        .collect()
}

type Dense = BTreeMap<Vec<u32>, BigInt>;

fn pad(mut e: Vec<u32>, n: usize) -> Vec<u32> {
    e.resize(n, 0);
    e
}

fn dd(i: usize, f: &Dense) -> Dense {
    let mut out = Dense::new();
    for (e, c) in f {
        let (a, b) = (e[i - 1], e[i]);
        if a == b {
            continue;
        }
        let (hi, lo, sign) = if a > b { (a, b, 1) } else { (b, a, -1) };
        for k in 0..hi - lo {
            let mut t = e.clone();
            t[i - 1] = hi - 1 - k;
            t[i] = lo + k;
            *out.entry(t).or_insert_with(BigInt::zero) += c * sign;
        }
    }
    out.retain(|_, c| !c.is_zero());
    out
}

/// 𝔖_w from the staircase x^δ by the word for w^{-1} w0 read off with
/// the largest available descent, in a representation separate from the
/// library polynomial type.
pub fn schubert_oracle(w: &Permutation) -> Polynomial {
    let n = w.size();
    let mut top = Dense::new();
    top.insert((0..n).map(|i| (n - 1 - i) as u32).collect(), BigInt::one());
    let mut v: Vec<usize> = w.images().to_vec();
    let mut f = top;
    // walk from w up to w0 by right multiplication at ascents, recording
    // the labels, then apply ∂ in reverse
    let mut labels = Vec::new();
    while let Some(i) = (1..n).rev().find(|&i| v[i - 1] < v[i]) {
        v.swap(i - 1, i);
        labels.push(i);
    }
    for &i in labels.iter().rev() {
        f = dd(i, &f);
    }
    Polynomial::from_terms(f.into_iter().map(|(e, c)| {
        (Monomial::new(e, Vec::new()), BigRational::from_integer(c))
    }))
}

/// Solves Σ c_w 𝔖_w = f over S_n by dense Gaussian elimination on the
/// monomial coordinates of 𝓛_n.
pub fn schubert_coefficients_by_linear_algebra(f: &Polynomial, n: usize) -> BTreeMap<Permutation, BigRational> {
    let perms = all_permutations(n);
    let columns: Vec<Polynomial> = perms.iter().map(schubert_oracle).collect();
    let mut monomials: Vec<Vec<u32>> = Vec::new();
    let mut index = BTreeMap::new();
    let mut note = |e: Vec<u32>, monomials: &mut Vec<Vec<u32>>| {
        if !index.contains_key(&e) {
            index.insert(e.clone(), monomials.len());
            monomials.push(e);
        }
    };
    for p in columns.iter().chain(std::iter::once(f)) {
        for (m, _) in p.terms() {
            note(pad(m.x_exps().to_vec(), n), &mut monomials);
        }
    }
    let rows = monomials.len();
    let cols = perms.len();
    let mut a = vec![vec![BigRational::zero(); cols + 1]; rows];
    for (j, p) in columns.iter().enumerate() {
        for (m, c) in p.terms() {
            a[index[&pad(m.x_exps().to_vec(), n)]][j] = c.clone();
        }
    }
    for (m, c) in f.terms() {
        a[index[&pad(m.x_exps().to_vec(), n)]][cols] = c.clone();
    }
    let mut pivot_row = 0;
    let mut pivots = Vec::new();
    for col in 0..cols {
        let Some(r) = (pivot_row..rows).find(|&r| !a[r][col].is_zero()) else {
            continue;
        };
        a.swap(pivot_row, r);
        let inv = BigRational::one() / a[pivot_row][col].clone();
        for k in col..=cols {
            a[pivot_row][k] = &a[pivot_row][k] * &inv;
        }
        for r in 0..rows {
            if r != pivot_row && !a[r][col].is_zero() {
                let factor = a[r][col].clone();
                for k in col..=cols {
                    let delta = &factor * &a[pivot_row][k];
                    a[r][k] -= delta;
                }
            }
        }
        pivots.push((pivot_row, col));
        pivot_row += 1;
    }
    assert_eq!(pivots.len(), cols, "Schubert polynomials are not independent");
    for row in a.iter().skip(pivot_row) {
        assert!(row[cols].is_zero(), "f is outside the span");
    }
    pivots
        .into_iter()
        .filter(|&(r, _)| !a[r][cols].is_zero())
        .map(|(r, c)| (perms[c].clone(), a[r][cols].clone()))
        .collect()
}

/// A random integer polynomial in x_1..x_vars of total degree ≤ max_deg.
pub fn random_poly(rng: &mut StdRng, vars: usize, max_deg: u32, max_terms: usize) -> Polynomial {
    let terms = rng.gen_range(1..=max_terms);
    let mut f = Polynomial::zero();
    for _ in 0..terms {
        let mut e = vec![0u32; vars];
        let deg = rng.gen_range(0..=max_deg);
        for _ in 0..deg {
            e[rng.gen_range(0..vars)] += 1;
        }
        let c: i64 = rng.gen_range(-5..=5);
        f.add_term(Monomial::new(e, Vec::new()), BigRational::from_integer(c.into()));
    }
    f
}

pub fn is_nonnegative_integer(c: &BigRational) -> bool {
    c.is_integer() && !c.is_negative()
}
