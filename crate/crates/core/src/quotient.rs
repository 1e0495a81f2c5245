//! Normal forms in ℚ[x_1..x_m]/I, where I is generated by e_d(x) − p_d
//! for d = 1..m, with p_d = 0 (cohomology) or p_d = C(m, d) (K-theory).

use std::collections::BTreeMap;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::poly::{rat, Monomial, Polynomial, Rational};
use crate::upsilon::Theory;

#[derive(Debug, Clone)]
pub struct QuotientRing {
    m: usize,
    flavor: Theory,
    series: Vec<Rational>,
    reducers: Vec<Polynomial>,
    // x_i^{m−i+1} ↦ tails[i−1]
    tails: Vec<Vec<(Vec<u32>, Rational)>>,
}

fn binomial(n: usize, k: usize) -> i64 {
    (0..k).fold(1i64, |acc, j| acc * (n - j) as i64 / (j + 1) as i64)
}

/// Exponent vectors of length `vars` with total degree `d`.
fn compositions(vars: usize, d: u32) -> Vec<Vec<u32>> {
    if vars == 0 {
        return if d == 0 { vec![Vec::new()] } else { Vec::new() };
    }
    let mut out = Vec::new();
    for first in 0..=d {
        for mut rest in compositions(vars - 1, d - first) {
            rest.insert(0, first);
            out.push(rest);
        }
    }
    out
}

fn complete_homogeneous(vars: usize, d: u32) -> Polynomial {
    Polynomial::from_terms(
        compositions(vars, d)
            .into_iter()
            .map(|a| (Monomial::new(a, Vec::new()), Rational::one())),
    )
}

pub fn elementary_symmetric(vars: usize, d: usize) -> Polynomial {
    let mut out = Polynomial::zero();
    for a in compositions(vars, d as u32) {
        if a.iter().all(|&e| e <= 1) {
            out.add_term(Monomial::new(a, Vec::new()), Rational::one());
        }
    }
    out
}

/// Lex key with x_m most significant.
fn lex_key(exps: &[u32]) -> Vec<u32> {
    exps.iter().rev().copied().collect()
}

impl QuotientRing {
    pub fn new(m: usize, flavor: Theory) -> Result<QuotientRing> {
        let series: Vec<Rational> = (0..=m)
            .map(|d| match flavor {
                Theory::Cohomology => rat((d == 0) as i64),
                Theory::KTheory => rat(binomial(m, d)),
            })
            .collect();
        let mut reducers = Vec::with_capacity(m);
        let mut tails = Vec::with_capacity(m);
        for i in 1..=m {
            let top = m - i + 1;
            let mut r = Polynomial::zero();
            for k in 0..=top {
                let sign = if (top + k) % 2 == 0 { rat(1) } else { rat(-1) };
                let coeff = &series[top - k] * sign;
                r += &complete_homogeneous(i, k as u32).scale(&coeff);
            }
            let mut lead = vec![0u32; m];
            lead[i - 1] = top as u32;
            let lead_mono = Monomial::new(lead.clone(), Vec::new());
            if r.coefficient(&lead_mono) != Rational::one() {
                return Err(Error::Verification(format!("reducer {i} is not monic")));
            }
            let tail = r
                .terms()
                .filter(|(mono, _)| **mono != lead_mono)
                .map(|(mono, c)| {
                    let mut e = mono.x_exps().to_vec();
                    e.resize(m, 0);
                    (e, -c.clone())
                })
                .collect();
            reducers.push(r);
            tails.push(tail);
        }
        let ring = QuotientRing {
            m,
            flavor,
            series,
            reducers,
            tails,
        };
        for (d, g) in ring.generators().iter().enumerate() {
            if !ring.normal_form(g)?.is_zero() {
                return Err(Error::Verification(format!(
                    "generator e_{} − p_{} does not reduce to 0",
                    d + 1,
                    d + 1
                )));
            }
        }
        Ok(ring)
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn flavor(&self) -> Theory {
        self.flavor
    }

    /// p_0..p_m.
    pub fn series(&self) -> &[Rational] {
        &self.series
    }

    /// r_1..r_m; r_i has leading monomial x_i^{m−i+1} in lex order.
    pub fn reducers(&self) -> &[Polynomial] {
        &self.reducers
    }

    /// e_d(x) − p_d for d = 1..m.
    pub fn generators(&self) -> Vec<Polynomial> {
        (1..=self.m)
            .map(|d| &elementary_symmetric(self.m, d) - &Polynomial::constant(self.series[d].clone()))
            .collect()
    }

    /// x^a with a_i ≤ m − i.
    pub fn standard_monomials(&self) -> Vec<Monomial> {
        let mut out = vec![Vec::new()];
        for i in 1..=self.m {
            out = out
                .into_iter()
                .flat_map(|a: Vec<u32>| {
                    (0..=(self.m - i) as u32).map(move |e| {
                        let mut b = a.clone();
                        b.push(e);
                        b
                    })
                })
                .collect();
        }
        out.into_iter().map(|a| Monomial::new(a, Vec::new())).collect()
    }

    /// The unique representative supported on standard monomials.
    pub fn normal_form(&self, f: &Polynomial) -> Result<Polynomial> {
        if f.has_y() || f.max_x_index() > self.m {
            return Err(Error::InvalidSize(format!(
                "polynomial {f} is not in x_1..x_{}",
                self.m
            )));
        }
        let mut work: BTreeMap<Vec<u32>, Rational> = BTreeMap::new();
        for (mono, c) in f.terms() {
            let mut e = mono.x_exps().to_vec();
            e.resize(self.m, 0);
            work.insert(lex_key(&e), c.clone());
        }
        let mut out = Polynomial::zero();
        while let Some((key, c)) = work.pop_last() {
            let exps: Vec<u32> = key.iter().rev().copied().collect();
            let violating = (1..=self.m).rev().find(|&i| exps[i - 1] as usize > self.m - i);
            let Some(i) = violating else {
                out.add_term(Monomial::new(exps, Vec::new()), c);
                continue;
            };
            let mut rest = exps.clone();
            rest[i - 1] -= (self.m - i + 1) as u32;
            for (t, tc) in &self.tails[i - 1] {
                let e: Vec<u32> = rest.iter().zip(t).map(|(a, b)| a + b).collect();
                let k = lex_key(&e);
                let entry = work.entry(k.clone()).or_insert_with(Rational::zero);
                *entry += &c * tc;
                if entry.is_zero() {
                    work.remove(&k);
                }
            }
        }
        Ok(out)
    }

    pub fn equal_mod(&self, f: &Polynomial, g: &Polynomial) -> Result<bool> {
        Ok(self.normal_form(&(f - g))?.is_zero())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ops::demazure;
    use crate::perm::all_permutations;
    use crate::schub::{grothendieck, schubert};
    use proptest::prelude::*;

    fn p(s: &str) -> Polynomial {
        Polynomial::parse(s).unwrap()
    }

    #[test]
    fn construction() {
        for m in 0..=5 {
            for flavor in [Theory::Cohomology, Theory::KTheory] {
                let r = QuotientRing::new(m, flavor).unwrap();
                let expected: usize = (1..=m).product();
                assert_eq!(r.standard_monomials().len(), expected);
                for g in r.generators() {
                    assert!(r.normal_form(&g).unwrap().is_zero());
                }
            }
        }
    }

    #[test]
    fn examples() {
        let r = QuotientRing::new(2, Theory::Cohomology).unwrap();
        assert!(r.normal_form(&p("x1^2")).unwrap().is_zero());
        assert_eq!(r.normal_form(&p("x1 + 3")).unwrap(), p("x1 + 3"));
        let k = QuotientRing::new(4, Theory::KTheory).unwrap();
        let one = Polynomial::one();
        assert!(!k.equal_mod(&demazure(1, &p("1 - x1^2")), &one).unwrap());
        assert!(!k.equal_mod(&p("1/2*(1 + x1*x2)"), &one).unwrap());
        assert!(!k
            .equal_mod(
                &demazure(2, &p("(1-x1^2)*(1-x2^2)*(1-x1*x2)")),
                &p("(1-x1^2)*(1-x1*x2*x3)*(1+x1*x2*x3)")
            )
            .unwrap());
        let f = p("x1^3*x4 - 2*x2");
        let g = &f + &(&k.generators()[1] * &p("x1"));
        assert!(k.equal_mod(&f, &g).unwrap());
        assert!(k.normal_form(&p("x5")).is_err());
    }

    /// Schubert and Grothendieck polynomials indexed by permutations of a
    /// larger symmetric group whose descents all lie in 1..m vanish in the
    /// quotient unless the permutation already lives in S_m.
    #[test]
    fn basis_vanishing() {
        for m in 1..=4 {
            let coh = QuotientRing::new(m, Theory::Cohomology).unwrap();
            let k = QuotientRing::new(m, Theory::KTheory).unwrap();
            for w in all_permutations(m + 2) {
                if (m + 1..m + 2).any(|i| w.has_right_descent(i)) {
                    continue;
                }
                let in_sm = (m + 1..=m + 2).all(|i| w.at(i) == i);
                for (ring, f) in [(&coh, schubert(&w)), (&k, grothendieck(&w))] {
                    let nf = ring.normal_form(&f).unwrap();
                    if in_sm {
                        assert_eq!(nf, f, "{w:?}");
                    } else {
                        assert!(nf.is_zero(), "{w:?} in {:?}", ring.flavor());
                    }
                }
            }
        }
    }

    fn arb_in(m: usize) -> impl Strategy<Value = Polynomial> {
        crate::poly::tests::arb_poly(m, 6, 5)
    }

    proptest! {
        #[test]
        fn idempotent_and_ring_compatible(f in arb_in(4), g in arb_in(4), kth in any::<bool>()) {
            let flavor = if kth { Theory::KTheory } else { Theory::Cohomology };
            let r = QuotientRing::new(4, flavor).unwrap();
            let nf = |h: &Polynomial| r.normal_form(h).unwrap();
            let (a, b) = (nf(&f), nf(&g));
            prop_assert_eq!(nf(&a), a.clone());
            prop_assert_eq!(nf(&(&f + &g)), nf(&(&a + &b)));
            prop_assert_eq!(nf(&(&f * &g)), nf(&(&a * &b)));
        }

        #[test]
        fn staircase_agrees_with_schubert_expansion(f in arb_in(3), g in arb_in(3)) {
            let r = QuotientRing::new(3, Theory::Cohomology).unwrap();
            let (f, g) = (r.normal_form(&f).unwrap(), r.normal_form(&g).unwrap());
            let ef = crate::schub::expand_schubert(&f, 3).unwrap();
            let eg = crate::schub::expand_schubert(&g, 3).unwrap();
            prop_assert_eq!(r.equal_mod(&f, &g).unwrap(), ef == eg);
        }
    }

    #[test]
    fn symplectic_classes_distinct() {
        use crate::upsilon::compute_values;
        use crate::weakorder::Pair;
        let r = QuotientRing::new(6, Theory::KTheory).unwrap();
        let values = compute_values(Pair::symplectic(6).unwrap(), Theory::KTheory).unwrap();
        let forms: Vec<Polynomial> = values.values().map(|f| r.normal_form(f).unwrap()).collect();
        for a in 0..forms.len() {
            for b in a + 1..forms.len() {
                assert_ne!(forms[a], forms[b]);
            }
        }
    }
}
