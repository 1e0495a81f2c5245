//! Schubert, Grothendieck and double Schubert polynomials, and expansions
//! of polynomials in those bases.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::{OnceLock, RwLock};

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::ops::{demazure, divided_difference};
use crate::par::{self, Strategy};
use crate::perm::{all_permutations, Permutation};
use crate::poly::{Monomial, Polynomial, Rational, Var};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
enum Family {
    Schubert,
    Grothendieck,
    DoubleSchubert,
}

type Cache = RwLock<HashMap<(Family, Permutation), Polynomial>>;

fn cache() -> &'static Cache {
    static CACHE: OnceLock<Cache> = OnceLock::new();
    CACHE.get_or_init(|| RwLock::new(HashMap::new()))
}

fn base(family: Family, n: usize) -> Polynomial {
    let mut out = Polynomial::one();
    match family {
        Family::Schubert => {
            let exps = (1..n).map(|i| (n - i) as u32).collect();
            out = Polynomial::term(Monomial::new(exps, Vec::new()), Rational::one());
        }
        Family::Grothendieck => {
            for i in 1..n {
                let f = &Polynomial::one() - &Polynomial::x(i);
                out = &out * &f.pow((n - i) as u32);
            }
        }
        Family::DoubleSchubert => {
            for i in 1..n {
                for j in 1..=n - i {
                    out = &out * &(&Polynomial::x(i) - &Polynomial::y(j));
                }
            }
        }
    }
    out
}

fn generate(family: Family, w: &Permutation) -> Polynomial {
    let key = (family, w.clone());
    if let Some(p) = cache().read().unwrap().get(&key) {
        return p.clone();
    }
    let n = w.size();
    // Walk up to w0 through ascents: the family at w is obtained from the
    // one at w s_i by the i-th operator whenever ℓ(w s_i) > ℓ(w).
    let result = match (1..n).find(|&i| !w.has_right_descent(i)) {
        None => base(family, n),
        Some(i) => {
            let above = generate(family, &w.right_mul_simple(i));
            match family {
                Family::Grothendieck => demazure(i, &above),
                _ => divided_difference(i, &above),
            }
        }
    };
    cache().write().unwrap().insert(key, result.clone());
    result
}

/// 𝔖_w for w ∈ S_n, n = `w.size()`.
pub fn schubert(w: &Permutation) -> Polynomial {
    generate(Family::Schubert, w)
}

/// 𝔊_w with 𝔊_{w0} = ∏ (1 − x_i)^{n−i} and 𝔊_{w s_i} = D_i 𝔊_w.
pub fn grothendieck(w: &Permutation) -> Polynomial {
    generate(Family::Grothendieck, w)
}

/// 𝔖_w(x; y) with 𝔖_{w0} = ∏_{i+j≤n} (x_i − y_j).
pub fn double_schubert(w: &Permutation) -> Polynomial {
    generate(Family::DoubleSchubert, w)
}

/// 𝔖_w(y): the single Schubert polynomial in the y-block.
pub fn schubert_in_y(w: &Permutation) -> Polynomial {
    let p = schubert(w);
    Polynomial::from_terms(
        p.terms()
            .map(|(m, c)| (Monomial::new(Vec::new(), m.x_exps().to_vec()), c.clone())),
    )
}

/// Coefficients indexed by permutations; zero entries are never stored.
#[derive(Clone, PartialEq, Eq)]
pub struct BasisExpansion<C> {
    entries: BTreeMap<Permutation, C>,
}

impl<C> Default for BasisExpansion<C> {
    fn default() -> Self {
        BasisExpansion {
            entries: BTreeMap::new(),
        }
    }
}

pub trait Coefficient: Clone + PartialEq {
    fn is_zero_coeff(&self) -> bool;
    fn add_coeff(&mut self, other: &Self);
    fn render(&self) -> String;
}

impl Coefficient for Rational {
    fn is_zero_coeff(&self) -> bool {
        self.is_zero()
    }
    fn add_coeff(&mut self, other: &Self) {
        *self += other;
    }
    fn render(&self) -> String {
        self.to_string()
    }
}

impl Coefficient for Polynomial {
    fn is_zero_coeff(&self) -> bool {
        self.is_zero()
    }
    fn add_coeff(&mut self, other: &Self) {
        *self += other;
    }
    fn render(&self) -> String {
        if self.len() > 1 {
            format!("({self})")
        } else {
            self.to_string()
        }
    }
}

impl<C: Coefficient> BasisExpansion<C> {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn add(&mut self, w: Permutation, c: C) {
        if c.is_zero_coeff() {
            return;
        }
        match self.entries.get_mut(&w) {
            Some(slot) => {
                slot.add_coeff(&c);
                if slot.is_zero_coeff() {
                    self.entries.remove(&w);
                }
            }
            None => {
                self.entries.insert(w, c);
            }
        }
    }

    pub fn get(&self, w: &Permutation) -> Option<&C> {
        self.entries.get(w)
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Permutation, &C)> {
        self.entries.iter()
    }

    /// Entries sorted by length, then one-line notation.
    pub fn graded(&self) -> Vec<(&Permutation, &C)> {
        let mut v: Vec<_> = self.entries.iter().collect();
        v.sort_by_key(|(w, _)| (w.length(), (*w).clone()));
        v
    }

    /// One "c * L[w]" line per entry in graded order.
    pub fn render(&self, label: &str) -> String {
        self.graded()
            .into_iter()
            .map(|(w, c)| format!("{} * {label}[{}]\n", c.render(), w.one_line()))
            .collect()
    }
}

impl BasisExpansion<Rational> {
    pub fn is_nonnegative_integral(&self) -> bool {
        use num_traits::Signed;
        self.entries
            .values()
            .all(|c| c.is_integer() && !c.is_negative())
    }

    /// Σ c_w · basis(w).
    pub fn reconstruct(&self, basis: impl Fn(&Permutation) -> Polynomial) -> Polynomial {
        let mut out = Polynomial::zero();
        for (w, c) in &self.entries {
            out += &basis(w).scale(c);
        }
        out
    }
}

impl BasisExpansion<Polynomial> {
    pub fn reconstruct(&self, basis: impl Fn(&Permutation) -> Polynomial) -> Polynomial {
        let mut out = Polynomial::zero();
        for (w, c) in &self.entries {
            out += &(c * &basis(w));
        }
        out
    }
}

impl<C: Coefficient + fmt::Debug> fmt::Debug for BasisExpansion<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_map()
            .entries(self.graded().into_iter().map(|(w, c)| (w.one_line(), c)))
            .finish()
    }
}

/// Checks that `f` is y-free and lies in 𝓛_n, the span of x^a with a_i ≤ n−i.
pub fn check_staircase(f: &Polynomial, n: usize) -> Result<()> {
    if f.has_y() {
        return Err(Error::NotInStaircase {
            n,
            reason: "contains y-variables".into(),
        });
    }
    for (m, _) in f.terms() {
        for (k, &e) in m.x_exps().iter().enumerate() {
            let i = k + 1;
            if i > n || e as usize > n - i {
                return Err(Error::NotInStaircase {
                    n,
                    reason: format!("monomial {m:?} has x{i}^{e}"),
                });
            }
        }
    }
    Ok(())
}

/// Schubert expansion by operator extraction: c_w is the constant term of
/// ∂_w f. The ∂_w f are generated one length level at a time, each u
/// reached from its canonical parent s_d u (d the smallest left descent of
/// u) by one ∂_d, and branches where ∂_w f vanishes are pruned.
pub fn expand_schubert(f: &Polynomial, n: usize) -> Result<BasisExpansion<Rational>> {
    expand_schubert_with(f, n, Strategy::default())
}

pub fn expand_schubert_with(
    f: &Polynomial,
    n: usize,
    strategy: Strategy,
) -> Result<BasisExpansion<Rational>> {
    check_staircase(f, n)?;
    let mut out = BasisExpansion::new();
    let mut level = vec![(Permutation::identity(n), f.clone())];
    while !level.is_empty() {
        for (w, g) in &level {
            out.add(w.clone(), g.constant_term());
        }
        let children: Vec<Vec<(Permutation, Polynomial)>> = par::map(strategy, &level, |(w, g)| {
            (1..n)
                .filter(|&i| !w.has_left_descent(i))
                .filter_map(|i| {
                    let u = w.left_mul_simple(i);
                    let canonical = (1..i).all(|d| !u.has_left_descent(d));
                    if !canonical {
                        return None;
                    }
                    let h = divided_difference(i, g);
                    (!h.is_zero()).then_some((u, h))
                })
                .collect()
        });
        level = children.into_iter().flatten().collect();
    }
    Ok(out)
}

/// Grothendieck expansion by triangular elimination in the shifted
/// coordinates x ↦ 1 − x, where 𝔊_w(1 − x) has lowest part 𝔖_w.
pub fn expand_grothendieck(f: &Polynomial, n: usize) -> Result<BasisExpansion<Rational>> {
    check_staircase(f, n)?;
    let mut out = BasisExpansion::new();
    let mut g = f.substitute_one_minus_x();
    let max_rounds = n * n.saturating_sub(1) / 2 + 1;
    for _ in 0..max_rounds {
        if g.is_zero() {
            break;
        }
        let low = g.lowest_degree_part()?;
        let step = expand_schubert(&low, n)?;
        for (w, c) in step.iter() {
            g -= &grothendieck(w).substitute_one_minus_x().scale(c);
            out.add(w.clone(), c.clone());
        }
    }
    if !g.is_zero() {
        return Err(Error::Verification(format!(
            "Grothendieck elimination did not terminate, remainder {g}"
        )));
    }
    if f.is_integral() {
        if let Some((w, c)) = out.iter().find(|(_, c)| !c.is_integer()) {
            return Err(Error::NonIntegral(format!("{c} at G[{}]", w.one_line())));
        }
    }
    Ok(out)
}

/// Length-additive factorizations w = u ∘ v.
pub fn length_additive_factorizations(w: &Permutation) -> Vec<(Permutation, Permutation)> {
    let lw = w.length();
    all_permutations(w.size())
        .into_iter()
        .filter(|v| v.length() <= lw)
        .filter_map(|v| {
            let u = w.compose(&v.inverse()).ok()?;
            (u.length() + v.length() == lw).then_some((u, v))
        })
        .collect()
}

/// Double Schubert expansion with coefficients in ℤ[y], from the single
/// expansion and 𝔖_w(x) = Σ_{u∘v=w, ℓ(u)+ℓ(v)=ℓ(w)} 𝔖_u(y) 𝔖_v(x; y).
pub fn kirillov_double_expand(f: &Polynomial, n: usize) -> Result<BasisExpansion<Polynomial>> {
    let single = expand_schubert(f, n)?;
    let mut out = BasisExpansion::new();
    for (w, c) in single.iter() {
        for (u, v) in length_additive_factorizations(w) {
            out.add(v, schubert_in_y(&u).scale(c));
        }
    }
    Ok(out)
}

/// All coefficient polynomials have nonnegative integer coefficients.
pub fn has_nonnegative_coefficients(e: &BasisExpansion<Polynomial>) -> bool {
    e.iter().all(|(_, c)| c.is_nonnegative_integral())
}

/// Renames x_i to y_i; used when a Schubert polynomial is read in y.
pub fn x_to_y(f: &Polynomial) -> Polynomial {
    f.substitute(|v| match v {
        Var::X(i) => Some(Polynomial::y(i)),
        Var::Y(_) => None,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ops::{apply_sequence, Operator};
    use crate::poly::rat;

    fn p(s: &str) -> Polynomial {
        Polynomial::parse(s).unwrap()
    }

    fn w(s: &str) -> Permutation {
        Permutation::parse(s, None).unwrap()
    }

    #[test]
    fn schubert_examples() {
        assert_eq!(schubert(&w("123")), Polynomial::one());
        assert_eq!(schubert(&w("321")), p("x1^2*x2"));
        assert_eq!(schubert(&w("231")), p("x1*x2"));
        assert_eq!(schubert(&w("312")), p("x1^2"));
        assert_eq!(schubert(&w("132")), p("x1+x2"));
    }

    #[test]
    fn grothendieck_examples() {
        assert_eq!(grothendieck(&w("123")), Polynomial::one());
        assert_eq!(grothendieck(&w("21")), p("1 - x1"));
        assert_eq!(demazure(1, &p("1 - x1")), Polynomial::one());
        let low = grothendieck(&w("132"))
            .substitute_one_minus_x()
            .lowest_degree_part()
            .unwrap();
        assert_eq!(low, p("x1 + x2"));
    }

    #[test]
    fn double_schubert_examples() {
        assert_eq!(double_schubert(&w("123")), Polynomial::one());
        assert_eq!(double_schubert(&w("21")), p("x1 - y1"));
        assert_eq!(double_schubert(&w("2134")).drop_y(), p("x1"));
    }

    /// Independent route: ∂_{w^{-1} w0} applied to the staircase along the
    /// reduced word produced by the largest-descent rule.
    fn schubert_by_largest_descent(w: &Permutation, op: Operator, top: &Polynomial) -> Polynomial {
        let n = w.size();
        let mut v = w.inverse().compose(&Permutation::longest(n)).unwrap();
        let mut word = Vec::new();
        while let Some(i) = (1..n).rev().find(|&i| v.has_left_descent(i)) {
            word.push(i);
            v = v.left_mul_simple(i);
        }
        apply_sequence(op, &word, top)
    }

    #[test]
    fn descent_choice_independence() {
        for n in 1..=5 {
            let w0 = Permutation::longest(n);
            let (s_top, g_top, d_top) = (schubert(&w0), grothendieck(&w0), double_schubert(&w0));
            for u in all_permutations(n) {
                assert_eq!(schubert(&u), schubert_by_largest_descent(&u, Operator::Divided, &s_top));
                assert_eq!(grothendieck(&u), schubert_by_largest_descent(&u, Operator::Demazure, &g_top));
                assert_eq!(double_schubert(&u), schubert_by_largest_descent(&u, Operator::Divided, &d_top));
                assert_eq!(double_schubert(&u).drop_y(), schubert(&u));
            }
        }
    }

    #[test]
    fn grothendieck_lowest_terms_are_schubert() {
        for n in 1..=5 {
            for u in all_permutations(n) {
                let low = grothendieck(&u).substitute_one_minus_x().lowest_degree_part().unwrap();
                assert_eq!(low, schubert(&u), "{u:?}");
            }
        }
    }

    #[test]
    fn schubert_stability() {
        for n in 1..=4 {
            for u in all_permutations(n) {
                let mut images = u.images().to_vec();
                images.push(n + 1);
                let big = Permutation::new(images).unwrap();
                assert_eq!(schubert(&big), schubert(&u));
            }
        }
    }

    #[test]
    fn expand_schubert_examples() {
        for u in all_permutations(4) {
            let e = expand_schubert(&schubert(&u), 4).unwrap();
            assert_eq!(e.len(), 1);
            assert_eq!(e.get(&u), Some(&rat(1)));
        }
        let e = expand_schubert(&p("2*x1*(x1+x2)"), 3).unwrap();
        assert_eq!(e.len(), 2);
        assert_eq!(e.get(&w("231")), Some(&rat(2)));
        assert_eq!(e.get(&w("312")), Some(&rat(2)));
        assert_eq!(e.reconstruct(schubert), p("2*x1*(x1+x2)"));
        assert!(matches!(
            expand_schubert(&p("x1^3"), 3),
            Err(Error::NotInStaircase { .. })
        ));
        assert!(expand_schubert(&p("x4"), 4).is_err());
        assert!(expand_schubert(&p("y1"), 4).is_err());
    }

    #[test]
    fn expand_schubert_strategies_agree() {
        let f = p("(x1+x2)*(x1+x3)*(x1+x4)*(x1+x5)*(x2+x3)*(x2+x4)");
        let a = expand_schubert_with(&f, 6, Strategy::Sequential).unwrap();
        let b = expand_schubert_with(&f, 6, Strategy::Parallel).unwrap();
        assert_eq!(a, b);
        assert_eq!(a.reconstruct(schubert), f);
    }

    #[test]
    fn expand_grothendieck_examples() {
        for u in all_permutations(3) {
            let e = expand_grothendieck(&grothendieck(&u), 3).unwrap();
            assert_eq!(e.len(), 1);
            assert_eq!(e.get(&u), Some(&rat(1)));
        }
        let e = expand_grothendieck(&Polynomial::one(), 2).unwrap();
        assert_eq!(e.render("G"), "1 * G[12]\n");
        let f = p("1 - x1*x2");
        let e = expand_grothendieck(&f, 6).unwrap();
        assert_eq!(e.reconstruct(grothendieck), f);
    }

    #[test]
    fn kirillov_identity_s4() {
        for u in all_permutations(4) {
            let e = kirillov_double_expand(&schubert(&u), 4).unwrap();
            assert_eq!(e.reconstruct(double_schubert), schubert(&u), "{u:?}");
        }
    }

    #[test]
    fn kirillov_o3_display() {
        let e = kirillov_double_expand(&p("2*x1*(x1+x2)"), 3).unwrap();
        let mut expected = BasisExpansion::new();
        expected.add(w("123"), p("2*y1^2 + 2*y1*y2"));
        expected.add(w("213"), p("2*(y1+y2)"));
        expected.add(w("132"), p("2*y1"));
        expected.add(w("231"), p("2"));
        expected.add(w("312"), p("2"));
        assert_eq!(e, expected);
        assert!(has_nonnegative_coefficients(&e));
    }

    #[test]
    fn render_format() {
        let e = kirillov_double_expand(&p("2*x1*(x1+x2)"), 3).unwrap();
        assert_eq!(
            e.render("S"),
            "(2*y1^2 + 2*y1*y2) * S[123]\n2*y1 * S[132]\n(2*y1 + 2*y2) * S[213]\n2 * S[231]\n2 * S[312]\n"
        );
    }
}
