//! Restriction of classes to torus fixed points and the closed-orbit
//! localization checks.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::par::{self, Strategy};
use crate::perm::{all_permutations, Permutation, SignedPermutation};
use crate::poly::{Polynomial, Var};
use crate::upsilon::closed_orbit_upsilon_k;
use crate::weakorder::Pair;

pub type Weight = Vec<i64>;

/// A finite sum Σ c_λ e^λ with integer coefficients.
#[derive(Clone, PartialEq, Eq, Default)]
pub struct LaurentCharacter {
    rank: usize,
    terms: BTreeMap<Weight, BigInt>,
}

impl LaurentCharacter {
    pub fn zero(rank: usize) -> Self {
        LaurentCharacter {
            rank,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(rank: usize) -> Self {
        Self::exp(vec![0; rank])
    }

    /// e^λ.
    pub fn exp(weight: Weight) -> Self {
        let rank = weight.len();
        let mut terms = BTreeMap::new();
        terms.insert(weight, BigInt::one());
        LaurentCharacter { rank, terms }
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Weight, &BigInt)> {
        self.terms.iter()
    }

    pub fn add_term(&mut self, weight: Weight, c: BigInt) {
        if c.is_zero() {
            return;
        }
        let slot = self.terms.entry(weight.clone()).or_insert_with(BigInt::zero);
        *slot += c;
        if slot.is_zero() {
            self.terms.remove(&weight);
        }
    }

    pub fn scale(&self, c: &BigInt) -> Self {
        let mut out = Self::zero(self.rank);
        for (w, k) in &self.terms {
            out.add_term(w.clone(), k * c);
        }
        out
    }
}

impl Add for &LaurentCharacter {
    type Output = LaurentCharacter;
    fn add(self, other: &LaurentCharacter) -> LaurentCharacter {
        let mut out = self.clone();
        for (w, c) in &other.terms {
            out.add_term(w.clone(), c.clone());
        }
        out
    }
}

impl Neg for &LaurentCharacter {
    type Output = LaurentCharacter;
    fn neg(self) -> LaurentCharacter {
        self.scale(&BigInt::from(-1))
    }
}

impl Sub for &LaurentCharacter {
    type Output = LaurentCharacter;
    fn sub(self, other: &LaurentCharacter) -> LaurentCharacter {
        self + &(-other)
    }
}

impl Mul for &LaurentCharacter {
    type Output = LaurentCharacter;
    fn mul(self, other: &LaurentCharacter) -> LaurentCharacter {
        let mut out = LaurentCharacter::zero(self.rank.max(other.rank));
        for (a, c) in &self.terms {
            for (b, d) in &other.terms {
                let w = a.iter().zip(b).map(|(x, y)| x + y).collect();
                out.add_term(w, c * d);
            }
        }
        out
    }
}

fn fmt_weight(w: &[i64]) -> String {
    let mut s = String::new();
    for (k, &c) in w.iter().enumerate() {
        if c == 0 {
            continue;
        }
        let sign = if c < 0 { "-" } else if s.is_empty() { "" } else { "+" };
        let mag = c.unsigned_abs();
        if mag == 1 {
            s.push_str(&format!("{sign}Y{}", k + 1));
        } else {
            s.push_str(&format!("{sign}{mag}Y{}", k + 1));
        }
    }
    if s.is_empty() {
        "0".into()
    } else {
        s
    }
}

impl fmt::Display for LaurentCharacter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (k, (w, c)) in self.terms.iter().rev().enumerate() {
            let neg = c.is_negative();
            let mag = c.abs();
            if k == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { "-" } else { "+" })?;
            }
            let unit = w.iter().all(|&x| x == 0);
            match (unit, mag.is_one()) {
                (true, _) => write!(f, "{mag}")?,
                (false, true) => write!(f, "e^({})", fmt_weight(w))?,
                (false, false) => write!(f, "{mag}*e^({})", fmt_weight(w))?,
            }
        }
        Ok(())
    }
}

impl fmt::Debug for LaurentCharacter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// A multiset of weights.
#[derive(Clone, PartialEq, Eq, Default, Debug)]
pub struct WeightMultiset {
    weights: BTreeMap<Weight, usize>,
}

impl WeightMultiset {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn insert(&mut self, w: Weight) {
        *self.weights.entry(w).or_insert(0) += 1;
    }

    /// Removes one copy; false if absent.
    pub fn remove_one(&mut self, w: &Weight) -> bool {
        match self.weights.get_mut(w) {
            Some(m) if *m > 1 => {
                *m -= 1;
                true
            }
            Some(_) => {
                self.weights.remove(w);
                true
            }
            None => false,
        }
    }

    pub fn multiplicity(&self, w: &Weight) -> usize {
        self.weights.get(w).copied().unwrap_or(0)
    }

    /// Total size counted with multiplicity.
    pub fn len(&self) -> usize {
        self.weights.values().sum()
    }

    pub fn is_empty(&self) -> bool {
        self.weights.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Weight, usize)> {
        self.weights.iter().map(|(w, &m)| (w, m))
    }

    pub fn map(&self, f: impl Fn(&Weight) -> Weight) -> WeightMultiset {
        let mut out = WeightMultiset::new();
        for (w, m) in self.iter() {
            for _ in 0..m {
                out.insert(f(w));
            }
        }
        out
    }

    /// ∏ (1 − e^{−χ}) over the multiset.
    pub fn euler_product(&self, rank: usize) -> LaurentCharacter {
        let one = LaurentCharacter::one(rank);
        let mut out = one.clone();
        for (w, m) in self.iter() {
            let neg: Weight = w.iter().map(|c| -c).collect();
            let factor = &one - &LaurentCharacter::exp(neg);
            for _ in 0..m {
                out = &out * &factor;
            }
        }
        out
    }
}

/// ρ(X_i) as a weight of S: e_i for i ≤ r, −e_{N+1−i} for i > N − r, and
/// 0 for the middle index when N is odd.
pub fn rho(pair: Pair, i: usize) -> Weight {
    let n = pair.size();
    let r = pair.rank();
    assert!(i >= 1 && i <= n, "index {i} outside 1..{n}");
    let mut w = vec![0; r];
    if i <= r {
        w[i - 1] = 1;
    } else if i > n - r {
        w[n - i] = -1;
    }
    w
}

fn add_weight(acc: &mut [i64], w: &[i64], times: i64) {
    for (a, b) in acc.iter_mut().zip(w) {
        *a += b * times;
    }
}

/// i_w^* followed by ρ: x_i ↦ e^{ρ(X_{w(i)})}, y_j ↦ e^{Y_j}.
pub fn restrict_class(pair: Pair, f: &Polynomial, w: &Permutation) -> Result<LaurentCharacter> {
    let n = pair.size();
    if w.size() != n {
        return Err(Error::SizeMismatch(w.size(), n));
    }
    if f.max_x_index() > n {
        return Err(Error::InvalidSize(format!("{f} uses variables beyond x_{n}")));
    }
    let r = pair.rank();
    if f.max_y_index() > r {
        return Err(Error::InvalidSize(format!("{f} uses variables beyond y_{r}")));
    }
    let images: Vec<Weight> = (1..=n).map(|i| rho(pair, w.at(i))).collect();
    let mut out = LaurentCharacter::zero(r);
    for (m, c) in f.terms() {
        if !c.is_integer() {
            return Err(Error::NonIntegral(c.to_string()));
        }
        let mut weight = vec![0; r];
        for i in 1..=n {
            add_weight(&mut weight, &images[i - 1], m.exp(Var::X(i)) as i64);
        }
        for j in 1..=r {
            weight[j - 1] += m.exp(Var::Y(j)) as i64;
        }
        out.add_term(weight, c.to_integer());
    }
    Ok(out)
}

/// Negative roots of K with respect to S: −Y_i ± Y_j (i < j), together with
/// −2Y_i for Sp and −Y_i for odd orthogonal groups.
pub fn negative_k_roots(pair: Pair) -> WeightMultiset {
    let r = pair.rank();
    let mut out = WeightMultiset::new();
    let unit = |i: usize, c: i64| {
        let mut w = vec![0; r];
        w[i] = c;
        w
    };
    for i in 0..r {
        for j in i + 1..r {
            for s in [1, -1] {
                let mut w = unit(i, -1);
                w[j] = s;
                out.insert(w);
            }
        }
        match pair {
            Pair::Symplectic(_) => out.insert(unit(i, -2)),
            Pair::Orthogonal(n) if n % 2 == 1 => out.insert(unit(i, -1)),
            Pair::Orthogonal(_) => {}
        }
    }
    out
}

/// S(w): the restricted tangent weights ρ(X_j − X_i), i < j, with one copy
/// of each negative K-root removed, transported by σ_w.
pub fn closed_orbit_weights(pair: Pair, w: &Permutation) -> Result<WeightMultiset> {
    if w.size() != pair.size() {
        return Err(Error::SizeMismatch(w.size(), pair.size()));
    }
    let sigma = w.to_signed()?;
    let n = pair.size();
    let mut base = WeightMultiset::new();
    for i in 1..=n {
        for j in i + 1..=n {
            let mut weight = rho(pair, j);
            add_weight(&mut weight, &rho(pair, i), -1);
            base.insert(weight);
        }
    }
    for (root, m) in negative_k_roots(pair).iter() {
        for _ in 0..m {
            if !base.remove_one(root) {
                return Err(Error::Verification(format!(
                    "root {} missing from the tangent weights",
                    fmt_weight(root)
                )));
            }
        }
    }
    Ok(base.map(|x| sigma.act_on_weight(x)))
}

/// Checks ρ(X_{w(i)}) = σ_w(ρ(X_i)) for every mirrored w and every i.
pub fn check_equivariance(pair: Pair) -> bool {
    let n = pair.size();
    all_permutations(n)
        .into_iter()
        .filter(Permutation::is_mirrored)
        .all(|w| {
            let sigma: SignedPermutation = w.to_signed().unwrap();
            (1..=n).all(|i| rho(pair, w.at(i)) == sigma.act_on_weight(&rho(pair, i)))
        })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LocalizationReport {
    pub pair: Pair,
    pub checked: usize,
    pub mirrored_pass: usize,
    pub vanishing_pass: usize,
    pub failures: Vec<String>,
}

impl LocalizationReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }

    pub fn to_json(&self) -> Value {
        json!({
            "pair": self.pair.key(),
            "size": self.pair.size(),
            "checked": self.checked,
            "mirrored_pass": self.mirrored_pass,
            "vanishing_pass": self.vanishing_pass,
            "failures": self.failures,
        })
    }
}

enum Outcome {
    Mirrored,
    Vanishing,
    Failure(String),
}

/// Restricts Υ^K_{w0} to every fixed point of S_N: at mirrored points it
/// must equal ∏_{χ∈S(w)} (1 − e^{−χ}), elsewhere it must vanish.
pub fn verify_closed_orbit(pair: Pair) -> Result<LocalizationReport> {
    verify_closed_orbit_with(pair, Strategy::default())
}

pub fn verify_closed_orbit_with(pair: Pair, strategy: Strategy) -> Result<LocalizationReport> {
    let f = closed_orbit_upsilon_k(pair);
    let points = all_permutations(pair.size());
    let outcomes = par::map(strategy, &points, |w| -> Result<Outcome> {
        let restricted = restrict_class(pair, &f, w)?;
        if w.is_mirrored() {
            let expected = closed_orbit_weights(pair, w)?.euler_product(pair.rank());
            if restricted == expected && !expected.is_zero() {
                Ok(Outcome::Mirrored)
            } else {
                Ok(Outcome::Failure(format!(
                    "{}: restriction {restricted} differs from {expected}",
                    w.one_line()
                )))
            }
        } else if restricted.is_zero() {
            Ok(Outcome::Vanishing)
        } else {
            Ok(Outcome::Failure(format!(
                "{}: restriction {restricted} should vanish",
                w.one_line()
            )))
        }
    });
    let mut report = LocalizationReport {
        pair,
        checked: points.len(),
        mirrored_pass: 0,
        vanishing_pass: 0,
        failures: Vec::new(),
    };
    for o in outcomes {
        match o? {
            Outcome::Mirrored => report.mirrored_pass += 1,
            Outcome::Vanishing => report.vanishing_pass += 1,
            Outcome::Failure(msg) => report.failures.push(msg),
        }
    }
    Ok(report)
}
