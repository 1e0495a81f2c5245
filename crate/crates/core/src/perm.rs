//! Permutations in one-line notation, involutions, fixed-point-free
//! involutions and signed permutations.
//!
//! Everything is 1-based: `images[k]` holds w(k+1).

use std::fmt;

use crate::error::{Error, Result};

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation {
    images: Vec<usize>,
}

impl Permutation {
    pub fn new(images: Vec<usize>) -> Result<Self> {
        let n = images.len();
        let mut seen = vec![false; n + 1];
        for &v in &images {
            if v == 0 || v > n || seen[v] {
                return Err(Error::InvalidPermutation(format!("{images:?}")));
            }
            seen[v] = true;
        }
        Ok(Permutation { images })
    }

    pub fn identity(n: usize) -> Self {
        Permutation {
            images: (1..=n).collect(),
        }
    }

    /// The simple transposition s_i in S_n.
    pub fn simple(i: usize, n: usize) -> Result<Self> {
        if i == 0 || i >= n {
            return Err(Error::InvalidSize(format!("s_{i} is not in S_{n}")));
        }
        let mut w = Self::identity(n);
        w.images.swap(i - 1, i);
        Ok(w)
    }

    /// The long element w0, i -> n+1-i.
    pub fn longest(n: usize) -> Self {
        Permutation {
            images: (1..=n).rev().collect(),
        }
    }

    pub fn size(&self) -> usize {
        self.images.len()
    }

    pub fn images(&self) -> &[usize] {
        &self.images
    }

    /// w(i), 1-based.
    pub fn at(&self, i: usize) -> usize {
        self.images[i - 1]
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(k, &v)| v == k + 1)
    }

    /// (self ∘ other)(i) = self(other(i)).
    pub fn compose(&self, other: &Permutation) -> Result<Permutation> {
        if self.size() != other.size() {
            return Err(Error::SizeMismatch(self.size(), other.size()));
        }
        Ok(Permutation {
            images: other.images.iter().map(|&v| self.at(v)).collect(),
        })
    }

    pub fn inverse(&self) -> Permutation {
        let mut inv = vec![0; self.size()];
        for (k, &v) in self.images.iter().enumerate() {
            inv[v - 1] = k + 1;
        }
        Permutation { images: inv }
    }

    /// s_i ∘ w: swaps the values i and i+1.
    pub fn left_mul_simple(&self, i: usize) -> Permutation {
        let images = self
            .images
            .iter()
            .map(|&v| {
                if v == i {
                    i + 1
                } else if v == i + 1 {
                    i
                } else {
                    v
                }
            })
            .collect();
        Permutation { images }
    }

    /// w ∘ s_i: swaps the positions i and i+1.
    pub fn right_mul_simple(&self, i: usize) -> Permutation {
        let mut w = self.clone();
        w.images.swap(i - 1, i);
        w
    }

    /// Number of inversions.
    pub fn length(&self) -> usize {
        let w = &self.images;
        let mut count = 0;
        for i in 0..w.len() {
            for j in i + 1..w.len() {
                if w[i] > w[j] {
                    count += 1;
                }
            }
        }
        count
    }

    /// True iff ℓ(s_i w) < ℓ(w), i.e. i+1 sits to the left of i.
    pub fn has_left_descent(&self, i: usize) -> bool {
        let pos = |v: usize| self.images.iter().position(|&x| x == v).unwrap();
        pos(i + 1) < pos(i)
    }

    /// True iff ℓ(w s_i) < ℓ(w).
    pub fn has_right_descent(&self, i: usize) -> bool {
        self.images[i - 1] > self.images[i]
    }

    /// Canonical reduced word [a1, ..., ak] with s_{a1} ∘ ... ∘ s_{ak} = w.
    ///
    /// Runs the smallest-right-descent peeling on w^{-1}; the recorded
    /// indices then read left to right as a factorization of w.
    pub fn reduced_word(&self) -> Vec<usize> {
        let mut v = self.inverse();
        let mut word = Vec::with_capacity(self.length());
        while let Some(i) = (1..v.size()).find(|&i| v.has_right_descent(i)) {
            word.push(i);
            v = v.right_mul_simple(i);
        }
        word
    }

    /// Product s_{a1} ∘ ... ∘ s_{ak} in S_n.
    pub fn from_word(word: &[usize], n: usize) -> Result<Permutation> {
        let mut w = Permutation::identity(n);
        for &i in word {
            if i == 0 || i >= n {
                return Err(Error::InvalidSize(format!("s_{i} is not in S_{n}")));
            }
            w = w.right_mul_simple(i);
        }
        Ok(w)
    }

    /// code_i = #{j > i : w(j) < w(i)}.
    pub fn lehmer_code(&self) -> Vec<usize> {
        let w = &self.images;
        (0..w.len())
            .map(|i| w[i + 1..].iter().filter(|&&v| v < w[i]).count())
            .collect()
    }

    /// Bruhat order via the tableau criterion: for every prefix length k the
    /// sorted prefix of `self` is dominated entrywise by that of `other`.
    pub fn bruhat_leq(&self, other: &Permutation) -> Result<bool> {
        if self.size() != other.size() {
            return Err(Error::SizeMismatch(self.size(), other.size()));
        }
        let mut a = Vec::with_capacity(self.size());
        let mut b = Vec::with_capacity(self.size());
        for k in 0..self.size() {
            a.push(self.images[k]);
            b.push(other.images[k]);
            a.sort_unstable();
            b.sort_unstable();
            if a.iter().zip(&b).any(|(x, y)| x > y) {
                return Ok(false);
            }
        }
        Ok(true)
    }

    pub fn is_involution(&self) -> bool {
        self.images
            .iter()
            .enumerate()
            .all(|(k, &v)| self.at(v) == k + 1)
    }

    pub fn fixed_points(&self) -> usize {
        self.images
            .iter()
            .enumerate()
            .filter(|(k, &v)| v == k + 1)
            .count()
    }

    /// w(N+1-i) = N+1-w(i) for all i, where N is the size. For odd N this
    /// forces the middle point to be fixed.
    pub fn is_mirrored(&self) -> bool {
        let n = self.size();
        (1..=n).all(|i| self.at(n + 1 - i) == n + 1 - self.at(i))
    }

    /// Signed permutation σ_w of rank ⌊N/2⌋ attached to a mirrored w.
    pub fn to_signed(&self) -> Result<SignedPermutation> {
        if !self.is_mirrored() {
            return Err(Error::NotMirrored(self.one_line()));
        }
        let n = self.size();
        let rank = n / 2;
        let images = (1..=rank)
            .map(|i| {
                let v = self.at(i);
                if v <= rank {
                    v as i64
                } else {
                    -((n + 1 - v) as i64)
                }
            })
            .collect();
        SignedPermutation::new(images)
    }

    /// Disjoint cycles of length at least two, each starting at its minimum,
    /// ordered by minimum.
    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let n = self.size();
        let mut seen = vec![false; n + 1];
        let mut out = Vec::new();
        for start in 1..=n {
            if seen[start] {
                continue;
            }
            let mut cycle = vec![start];
            seen[start] = true;
            let mut next = self.at(start);
            while next != start {
                seen[next] = true;
                cycle.push(next);
                next = self.at(next);
            }
            if cycle.len() > 1 {
                out.push(cycle);
            }
        }
        out
    }

    pub fn one_line(&self) -> String {
        if self.size() < 10 {
            self.images.iter().map(|v| v.to_string()).collect()
        } else {
            let parts: Vec<String> = self.images.iter().map(|v| v.to_string()).collect();
            format!("[{}]", parts.join(","))
        }
    }

    pub fn cycle_notation(&self) -> String {
        let cycles = self.cycles();
        if cycles.is_empty() {
            return "id".to_string();
        }
        cycles
            .iter()
            .map(|c| {
                let parts: Vec<String> = c.iter().map(|v| v.to_string()).collect();
                format!("({})", parts.join(","))
            })
            .collect()
    }

    /// Parses one-line ("4321", "[10,1,...]"), cycle ("(1,4)(2,3)") or "id"
    /// notation. Cycle notation and "id" need the ambient size.
    pub fn parse(text: &str, size: Option<usize>) -> Result<Permutation> {
        let s: String = text.chars().filter(|c| !c.is_whitespace()).collect();
        if s.is_empty() {
            return Err(Error::Parse("empty permutation".into()));
        }
        if s == "id" {
            let n = size.ok_or_else(|| Error::Parse("\"id\" needs a size".into()))?;
            return Ok(Permutation::identity(n));
        }
        let perm = if s.starts_with('(') {
            let n = size.ok_or_else(|| Error::Parse("cycle notation needs a size".into()))?;
            let mut images: Vec<usize> = (1..=n).collect();
            for chunk in s.split(')').filter(|c| !c.is_empty()) {
                let body = chunk
                    .strip_prefix('(')
                    .ok_or_else(|| Error::Parse(format!("malformed cycle in {text:?}")))?;
                let pts = parse_list(body)?;
                for (k, &p) in pts.iter().enumerate() {
                    if p == 0 || p > n {
                        return Err(Error::Parse(format!("{p} out of range in {text:?}")));
                    }
                    images[p - 1] = pts[(k + 1) % pts.len()];
                }
            }
            Permutation::new(images)?
        } else if let Some(body) = s.strip_prefix('[').and_then(|b| b.strip_suffix(']')) {
            Permutation::new(parse_list(body)?)?
        } else if s.contains(',') {
            Permutation::new(parse_list(&s)?)?
        } else {
            let images = s
                .chars()
                .map(|c| {
                    c.to_digit(10)
                        .map(|d| d as usize)
                        .ok_or_else(|| Error::Parse(format!("bad digit {c:?} in {text:?}")))
                })
                .collect::<Result<Vec<_>>>()?;
            Permutation::new(images)?
        };
        if let Some(n) = size {
            if perm.size() != n {
                return Err(Error::SizeMismatch(perm.size(), n));
            }
        }
        Ok(perm)
    }
}

fn parse_list(body: &str) -> Result<Vec<usize>> {
    body.split(',')
        .map(|p| {
            p.parse::<usize>()
                .map_err(|_| Error::Parse(format!("bad entry {p:?}")))
        })
        .collect()
}

impl fmt::Display for Permutation {
    /// Involutions print in cycle notation, everything else in one-line.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_involution() {
            f.write_str(&self.cycle_notation())
        } else {
            f.write_str(&self.one_line())
        }
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.one_line())
    }
}

/// All permutations of S_n in lexicographic order.
pub fn all_permutations(n: usize) -> Vec<Permutation> {
    let mut cur: Vec<usize> = (1..=n).collect();
    let mut out = vec![Permutation { images: cur.clone() }];
    while next_permutation(&mut cur) {
        out.push(Permutation { images: cur.clone() });
    }
    out
}

fn next_permutation(a: &mut [usize]) -> bool {
    if a.len() < 2 {
        return false;
    }
    let mut i = a.len() - 1;
    while i > 0 && a[i - 1] >= a[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = a.len() - 1;
    while a[j] <= a[i - 1] {
        j -= 1;
    }
    a.swap(i - 1, j);
    a[i..].reverse();
    true
}

/// 𝓘(n), lexicographic.
pub fn involutions(n: usize) -> Vec<Permutation> {
    all_permutations(n)
        .into_iter()
        .filter(Permutation::is_involution)
        .collect()
}

/// 𝓘_fpf(size), lexicographic; empty for odd size.
pub fn fpf_involutions(size: usize) -> Vec<Permutation> {
    if size % 2 == 1 {
        return Vec::new();
    }
    involutions(size)
        .into_iter()
        .filter(|p| p.fixed_points() == 0)
        .collect()
}

/// Mirrored permutations of S_size.
pub fn mirrored_permutations(size: usize) -> Vec<Permutation> {
    all_permutations(size)
        .into_iter()
        .filter(Permutation::is_mirrored)
        .collect()
}

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct Involution(Permutation);

impl Involution {
    pub fn new(p: Permutation) -> Result<Self> {
        if p.is_involution() {
            Ok(Involution(p))
        } else {
            Err(Error::InvalidPermutation(format!("{} is not an involution", p.one_line())))
        }
    }

    pub fn as_perm(&self) -> &Permutation {
        &self.0
    }

    pub fn into_perm(self) -> Permutation {
        self.0
    }
}

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct FpfInvolution(Involution);

impl FpfInvolution {
    pub fn new(p: Permutation) -> Result<Self> {
        let inv = Involution::new(p)?;
        if inv.0.fixed_points() != 0 {
            return Err(Error::InvalidPermutation(format!(
                "{} has fixed points",
                inv.0.cycle_notation()
            )));
        }
        Ok(FpfInvolution(inv))
    }

    /// (1,2)(3,4)...(size-1,size).
    pub fn dense(size: usize) -> Result<Self> {
        if size % 2 == 1 {
            return Err(Error::InvalidSize(format!("odd ambient size {size}")));
        }
        let images = (1..=size)
            .map(|i| if i % 2 == 1 { i + 1 } else { i - 1 })
            .collect();
        FpfInvolution::new(Permutation::new(images)?)
    }

    pub fn as_perm(&self) -> &Permutation {
        &self.0 .0
    }

    pub fn into_perm(self) -> Permutation {
        self.0 .0
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum EdgeStyle {
    Solid,
    Dashed,
}

impl EdgeStyle {
    pub fn as_str(self) -> &'static str {
        match self {
            EdgeStyle::Solid => "solid",
            EdgeStyle::Dashed => "dashed",
        }
    }
}

/// s_i · π on 𝓘(n). Returns π itself with no style when rule (a) applies.
pub fn weak_action_orthogonal(i: usize, pi: &Involution) -> (Involution, Option<EdgeStyle>) {
    let p = pi.as_perm();
    assert!(i >= 1 && i < p.size(), "s_{i} outside S_{}", p.size());
    if !p.has_left_descent(i) {
        return (pi.clone(), None);
    }
    let conj = p.left_mul_simple(i).right_mul_simple(i);
    if &conj != p {
        (Involution(conj), Some(EdgeStyle::Solid))
    } else {
        (Involution(p.left_mul_simple(i)), Some(EdgeStyle::Dashed))
    }
}

/// s_i · π on 𝓘_fpf(2n); only conjugation (solid) moves occur.
pub fn weak_action_symplectic(i: usize, pi: &FpfInvolution) -> (FpfInvolution, Option<EdgeStyle>) {
    let p = pi.as_perm();
    assert!(i >= 1 && i < p.size(), "s_{i} outside S_{}", p.size());
    if !p.has_left_descent(i) {
        return (pi.clone(), None);
    }
    let conj = p.left_mul_simple(i).right_mul_simple(i);
    if &conj == p {
        (pi.clone(), None)
    } else {
        (FpfInvolution(Involution(conj)), Some(EdgeStyle::Solid))
    }
}

/// A signed permutation of {±1..±rank}, stored by its values on 1..rank.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct SignedPermutation {
    images: Vec<i64>,
}

impl SignedPermutation {
    pub fn new(images: Vec<i64>) -> Result<Self> {
        let r = images.len();
        let mut seen = vec![false; r + 1];
        for &v in &images {
            let a = v.unsigned_abs() as usize;
            if a == 0 || a > r || seen[a] {
                return Err(Error::InvalidPermutation(format!("signed {images:?}")));
            }
            seen[a] = true;
        }
        Ok(SignedPermutation { images })
    }

    pub fn identity(rank: usize) -> Self {
        SignedPermutation {
            images: (1..=rank as i64).collect(),
        }
    }

    pub fn rank(&self) -> usize {
        self.images.len()
    }

    pub fn images(&self) -> &[i64] {
        &self.images
    }

    /// σ(i) for i in ±1..±rank, with σ(-i) = -σ(i).
    pub fn apply(&self, i: i64) -> i64 {
        let v = self.images[i.unsigned_abs() as usize - 1];
        if i < 0 {
            -v
        } else {
            v
        }
    }

    /// Acts on a weight vector (coefficients of Y_1..Y_rank): Y_i ↦ Y_{σ(i)}
    /// with the sign carried along.
    pub fn act_on_weight(&self, weight: &[i64]) -> Vec<i64> {
        let mut out = vec![0; weight.len()];
        for (k, &c) in weight.iter().enumerate() {
            if c == 0 {
                continue;
            }
            let target = self.apply(k as i64 + 1);
            let idx = target.unsigned_abs() as usize - 1;
            out[idx] += if target < 0 { -c } else { c };
        }
        out
    }

    /// The mirrored permutation w_σ of the given ambient size (2·rank or
    /// 2·rank+1).
    pub fn to_mirrored(&self, ambient: usize) -> Result<Permutation> {
        let r = self.rank();
        if ambient / 2 != r {
            return Err(Error::SizeMismatch(ambient, r));
        }
        let mut images = vec![0; ambient];
        if ambient % 2 == 1 {
            images[r] = r + 1;
        }
        for i in 1..=r {
            let s = self.images[i - 1];
            let v = if s > 0 {
                s as usize
            } else {
                ambient + 1 - s.unsigned_abs() as usize
            };
            images[i - 1] = v;
            images[ambient - i] = ambient + 1 - v;
        }
        Permutation::new(images)
    }
}
