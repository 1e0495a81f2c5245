//! Υ and Υ^K representatives of orbit closures, computed from the closed
//! orbit by operator recursion over the weak-order graph.

use std::collections::BTreeMap;

use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::ops::{demazure, divided_difference, half_divided_difference};
use crate::par::{self, Strategy};
use crate::perm::{EdgeStyle, FpfInvolution, Involution, Permutation};
use crate::poly::{product, Polynomial, Rational};
use crate::schub::{expand_schubert, BasisExpansion};
use crate::weakorder::{build_graph, sort_table_order, Edge, Pair};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Theory {
    Cohomology,
    KTheory,
}

impl Theory {
    pub fn key(self) -> &'static str {
        match self {
            Theory::Cohomology => "coh",
            Theory::KTheory => "k",
        }
    }
}

fn closed_orbit_factors(pair: Pair) -> Vec<(usize, usize)> {
    let mut out = Vec::new();
    match pair {
        Pair::Orthogonal(n) => {
            for i in 1..n {
                for j in i..=n - i {
                    out.push((i, j));
                }
            }
        }
        Pair::Symplectic(n) => {
            for i in 1..n {
                for j in i + 1..=n - i {
                    out.push((i, j));
                }
            }
        }
    }
    out
}

/// ∏ (x_i + x_j) over 1 ≤ i ≤ j ≤ n−i (orthogonal) or 1 ≤ i < j ≤ 2n−i
/// (symplectic).
pub fn closed_orbit_upsilon(pair: Pair) -> Polynomial {
    let factors: Vec<Polynomial> = closed_orbit_factors(pair)
        .into_iter()
        .map(|(i, j)| &Polynomial::x(i) + &Polynomial::x(j))
        .collect();
    product(&factors)
}

/// ∏ (1 − x_i x_j) over the same index set as [`closed_orbit_upsilon`].
pub fn closed_orbit_upsilon_k(pair: Pair) -> Polynomial {
    let factors: Vec<Polynomial> = closed_orbit_factors(pair)
        .into_iter()
        .map(|(i, j)| &Polynomial::one() - &(&Polynomial::x(i) * &Polynomial::x(j)))
        .collect();
    product(&factors)
}

/// The operator attached to an edge.
pub fn edge_operator(theory: Theory, edge: &Edge, f: &Polynomial) -> Polynomial {
    match (theory, edge.style) {
        (Theory::Cohomology, EdgeStyle::Solid) => divided_difference(edge.label, f),
        (Theory::Cohomology, EdgeStyle::Dashed) => half_divided_difference(edge.label, f),
        (Theory::KTheory, _) => demazure(edge.label, f),
    }
}

fn closed_orbit_value(pair: Pair, theory: Theory) -> Polynomial {
    match theory {
        Theory::Cohomology => closed_orbit_upsilon(pair),
        Theory::KTheory => closed_orbit_upsilon_k(pair),
    }
}

fn check_theory(pair: Pair, theory: Theory) -> Result<()> {
    if theory == Theory::KTheory && !pair.is_symplectic() {
        return Err(Error::DemazureUnsupported);
    }
    Ok(())
}

/// Υ_π (or Υ^K_π) for every orbit. Nodes are processed one length level
/// at a time; every incoming edge produces a candidate and all candidates
/// of a node must coincide.
pub fn compute_values(pair: Pair, theory: Theory) -> Result<BTreeMap<Permutation, Polynomial>> {
    compute_values_with(pair, theory, Strategy::default())
}

pub fn compute_values_with(
    pair: Pair,
    theory: Theory,
    strategy: Strategy,
) -> Result<BTreeMap<Permutation, Polynomial>> {
    check_theory(pair, theory)?;
    let graph = build_graph(pair);
    let mut values = BTreeMap::new();
    let w0 = pair.closed_orbit();
    values.insert(w0.clone(), closed_orbit_value(pair, theory));
    for level in graph.levels() {
        let pending: Vec<Permutation> = level.into_iter().filter(|p| *p != w0).collect();
        let results = par::map(strategy, &pending, |pi| -> Result<Polynomial> {
            let mut value: Option<Polynomial> = None;
            for edge in graph.incoming(pi) {
                let source = values
                    .get(&edge.src)
                    .ok_or_else(|| Error::Verification(format!("no value at {}", edge.src)))?;
                let candidate = edge_operator(theory, edge, source);
                match &value {
                    None => value = Some(candidate),
                    Some(v) if *v == candidate => {}
                    Some(v) => {
                        return Err(Error::PathDependence {
                            node: pi.cycle_notation(),
                            expected: v.to_string(),
                            candidate: candidate.to_string(),
                        })
                    }
                }
            }
            value.ok_or_else(|| Error::Verification(format!("{} is unreachable", pi.cycle_notation())))
        });
        for (pi, r) in pending.into_iter().zip(results) {
            values.insert(pi, r?);
        }
    }
    if let Some((pi, f)) = values.iter().find(|(_, f)| !f.is_integral()) {
        return Err(Error::NonIntegral(format!("{f} at {}", pi.cycle_notation())));
    }
    Ok(values)
}

/// Recomputes Υ_π along one operator word from the closed orbit, taking the
/// edge styles from the graph.
pub fn value_along_path(pair: Pair, theory: Theory, word: &[usize]) -> Result<(Permutation, Polynomial)> {
    check_theory(pair, theory)?;
    let mut at = pair.closed_orbit();
    let mut f = closed_orbit_value(pair, theory);
    for &i in word.iter().rev() {
        let (next, style) = pair
            .act(i, &at)
            .ok_or_else(|| Error::Verification(format!("s_{i} fixes {}", at.cycle_notation())))?;
        let edge = Edge {
            src: at,
            dst: next.clone(),
            label: i,
            style,
        };
        f = edge_operator(theory, &edge, &f);
        at = next;
    }
    Ok((at, f))
}

#[derive(Debug, Clone, PartialEq)]
pub struct OrbitRecord {
    pub involution: Permutation,
    pub upsilon: Polynomial,
    pub upsilon_k: Option<Polynomial>,
    pub schubert_expansion: BasisExpansion<Rational>,
}

/// Full records in table order. K-theory also carries the cohomology
/// values; the expansion is always that of Υ_π.
pub fn compute_all(pair: Pair, theory: Theory) -> Result<Vec<OrbitRecord>> {
    check_theory(pair, theory)?;
    let upsilon = compute_values(pair, Theory::Cohomology)?;
    let upsilon_k = match theory {
        Theory::KTheory => Some(compute_values(pair, Theory::KTheory)?),
        Theory::Cohomology => None,
    };
    let mut nodes: Vec<Permutation> = upsilon.keys().cloned().collect();
    sort_table_order(&mut nodes);
    let expansions = par::map(Strategy::default(), &nodes, |pi| expand_schubert(&upsilon[pi], pair.size()));
    nodes
        .into_iter()
        .zip(expansions)
        .map(|(pi, e)| {
            Ok(OrbitRecord {
                upsilon: upsilon[&pi].clone(),
                upsilon_k: upsilon_k.as_ref().map(|m| m[&pi].clone()),
                schubert_expansion: e?,
                involution: pi,
            })
        })
        .collect()
}

pub fn records_to_json(records: &[OrbitRecord]) -> Value {
    Value::Array(
        records
            .iter()
            .map(|r| {
                let expansion: serde_json::Map<String, Value> = r
                    .schubert_expansion
                    .graded()
                    .into_iter()
                    .map(|(w, c)| (w.one_line(), Value::String(c.to_string())))
                    .collect();
                let mut obj = json!({
                    "involution": r.involution.cycle_notation(),
                    "upsilon": r.upsilon.to_string(),
                });
                if let Some(k) = &r.upsilon_k {
                    obj["upsilon_k"] = Value::String(k.to_string());
                }
                obj["schubert_expansion"] = Value::Object(expansion);
                obj
            })
            .collect(),
    )
}

pub fn records_to_csv(records: &[OrbitRecord]) -> String {
    let with_k = records.iter().any(|r| r.upsilon_k.is_some());
    let mut w = csv::Writer::from_writer(Vec::new());
    let mut header = vec!["involution", "length", "upsilon"];
    if with_k {
        header.push("upsilon_k");
    }
    header.push("schubert_expansion");
    w.write_record(&header).unwrap();
    for r in records {
        let mut row = vec![
            r.involution.cycle_notation(),
            r.involution.length().to_string(),
            r.upsilon.to_string(),
        ];
        if with_k {
            row.push(r.upsilon_k.as_ref().map(|k| k.to_string()).unwrap_or_default());
        }
        row.push(
            r.schubert_expansion
                .graded()
                .into_iter()
                .map(|(w, c)| format!("{c}*S[{}]", w.one_line()))
                .collect::<Vec<_>>()
                .join(" + "),
        );
        w.write_record(&row).unwrap();
    }
    String::from_utf8(w.into_inner().unwrap()).unwrap()
}

/// π' with π'(i) = π(i) for i ≤ n and π'(i) = i beyond.
pub fn embed_orthogonal(pi: &Involution, big_n: usize) -> Result<Involution> {
    let p = pi.as_perm();
    if big_n < p.size() {
        return Err(Error::InvalidSize(format!("cannot embed S_{} into S_{big_n}", p.size())));
    }
    let mut images = p.images().to_vec();
    images.extend(p.size() + 1..=big_n);
    Involution::new(Permutation::new(images)?)
}

/// π' agreeing with π on 1..2n and swapping 2k+1, 2k+2 beyond.
pub fn embed_fpf(pi: &FpfInvolution, big_n: usize) -> Result<FpfInvolution> {
    let p = pi.as_perm();
    if big_n < p.size() || big_n % 2 == 1 {
        return Err(Error::InvalidSize(format!(
            "cannot embed fixed-point-free S_{} into S_{big_n}",
            p.size()
        )));
    }
    let mut images = p.images().to_vec();
    for i in (p.size() + 1..=big_n).step_by(2) {
        images.push(i + 1);
        images.push(i);
    }
    FpfInvolution::new(Permutation::new(images)?)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StabilityReport {
    pub pair: Pair,
    pub target: usize,
    pub theory: Theory,
    pub checked: usize,
}

/// Checks Υ_{ι(π)} = Υ_π for every orbit π of `pair` embedded at size
/// `target`.
pub fn check_stability(pair: Pair, target: usize, theory: Theory) -> Result<StabilityReport> {
    let big = pair.with_size(target)?;
    if target < pair.size() {
        return Err(Error::InvalidSize(format!("{target} < {}", pair.size())));
    }
    let small_values = compute_values(pair, theory)?;
    let big_values = compute_values(big, theory)?;
    for (pi, f) in &small_values {
        let image = pair.embed(pi, target)?;
        let g = &big_values[&image];
        if f != g {
            return Err(Error::Verification(format!(
                "{} ↦ {}: {f} ≠ {g}",
                pi.cycle_notation(),
                image.cycle_notation()
            )));
        }
    }
    Ok(StabilityReport {
        pair,
        target,
        theory,
        checked: small_values.len(),
    })
}

/// Lowest-degree part of f(1 − x).
pub fn k_to_cohomology(f: &Polynomial) -> Result<Polynomial> {
    f.lowest_part_at_one_minus_x()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::weakorder::stability_chain;

    fn p(s: &str) -> Polynomial {
        Polynomial::parse(s).unwrap()
    }

    fn c(s: &str, n: usize) -> Permutation {
        Permutation::parse(s, Some(n)).unwrap()
    }

    #[test]
    fn closed_orbit_examples() {
        let o = |n| Pair::orthogonal(n).unwrap();
        let sp = |n| Pair::symplectic(n).unwrap();
        assert_eq!(closed_orbit_upsilon(o(4)), p("4*x1*x2*(x1+x2)*(x1+x3)"));
        assert_eq!(
            closed_orbit_upsilon(sp(6)),
            p("(x1+x2)*(x1+x3)*(x1+x4)*(x1+x5)*(x2+x3)*(x2+x4)")
        );
        assert_eq!(closed_orbit_upsilon(o(2)), p("2*x1"));
        assert_eq!(closed_orbit_upsilon(o(1)), Polynomial::one());
        assert_eq!(
            closed_orbit_upsilon_k(sp(6)),
            p("(1-x1*x2)*(1-x1*x3)*(1-x1*x4)*(1-x1*x5)*(1-x2*x3)*(1-x2*x4)")
        );
        assert_eq!(
            closed_orbit_upsilon_k(o(4)),
            p("(1-x1^2)*(1-x1*x2)*(1-x1*x3)*(1-x2^2)")
        );
        assert_eq!(closed_orbit_upsilon_k(o(3)), p("(1-x1^2)*(1-x1*x2)"));
    }

    #[test]
    fn small_tables() {
        let values = compute_values(Pair::orthogonal(3).unwrap(), Theory::Cohomology).unwrap();
        assert_eq!(values[&c("(1,3)", 3)], p("2*x1*(x1+x2)"));
        assert_eq!(values[&c("(1,2)", 3)], p("2*x1"));
        assert_eq!(values[&c("(2,3)", 3)], p("2*(x1+x2)"));
        assert_eq!(values[&c("id", 3)], p("1"));
        let values = compute_values(Pair::symplectic(4).unwrap(), Theory::KTheory).unwrap();
        assert_eq!(values[&c("(1,3)(2,4)", 4)], p("1 - x1*x2"));
        assert_eq!(values[&c("(1,2)(3,4)", 4)], p("1"));
    }

    #[test]
    fn ktheory_orthogonal_rejected() {
        let pair = Pair::orthogonal(4).unwrap();
        assert_eq!(compute_values(pair, Theory::KTheory), Err(Error::DemazureUnsupported));
        assert!(compute_all(pair, Theory::KTheory).is_err());
    }

    #[test]
    fn strategies_agree() {
        for pair in [Pair::orthogonal(5).unwrap(), Pair::symplectic(6).unwrap()] {
            assert_eq!(
                compute_values_with(pair, Theory::Cohomology, Strategy::Sequential),
                compute_values_with(pair, Theory::Cohomology, Strategy::Parallel)
            );
        }
    }

    #[test]
    fn every_saturated_path_agrees() {
        let cases = [
            (Pair::orthogonal(3).unwrap(), Theory::Cohomology),
            (Pair::orthogonal(4).unwrap(), Theory::Cohomology),
            (Pair::symplectic(4).unwrap(), Theory::Cohomology),
            (Pair::symplectic(4).unwrap(), Theory::KTheory),
            (Pair::symplectic(6).unwrap(), Theory::Cohomology),
            (Pair::symplectic(6).unwrap(), Theory::KTheory),
        ];
        for (pair, theory) in cases {
            let values = compute_values(pair, theory).unwrap();
            let g = build_graph(pair);
            for pi in g.nodes() {
                let paths = g.saturated_paths(&pair.closed_orbit(), pi);
                assert!(!paths.is_empty());
                for word in paths {
                    let (end, f) = value_along_path(pair, theory, &word).unwrap();
                    assert_eq!(&end, pi);
                    assert_eq!(f, values[pi], "{pair} {pi} {word:?}");
                }
            }
        }
    }

    #[test]
    fn positivity_and_degree() {
        for pair in [Pair::orthogonal(5).unwrap(), Pair::symplectic(6).unwrap()] {
            let values = compute_values(pair, Theory::Cohomology).unwrap();
            let g = build_graph(pair);
            for (pi, f) in &values {
                assert!(f.is_nonnegative_integral());
                assert!(expand_schubert(f, pair.size()).unwrap().is_nonnegative_integral());
                assert!(f.is_homogeneous());
                if *pi == pair.dense_orbit() {
                    assert_eq!(*f, Polynomial::one());
                }
            }
            for e in g.edges() {
                assert_eq!(values[&e.src].degree().unwrap(), values[&e.dst].degree().unwrap() + 1);
            }
        }
    }

    #[test]
    fn embeddings() {
        let inv = |s: &str, n| Involution::new(c(s, n)).unwrap();
        let fpf = |s: &str, n| FpfInvolution::new(c(s, n)).unwrap();
        assert_eq!(embed_orthogonal(&inv("(1,2)", 3), 5).unwrap(), inv("(1,2)", 5));
        assert_eq!(embed_fpf(&fpf("(1,2)(3,4)", 4), 6).unwrap(), fpf("(1,2)(3,4)(5,6)", 6));
        assert_eq!(
            embed_fpf(&fpf("(1,4)(2,3)", 4), 8).unwrap(),
            fpf("(1,4)(2,3)(5,6)(7,8)", 8)
        );
        assert!(embed_fpf(&fpf("(1,2)", 2), 5).is_err());
        assert!(embed_orthogonal(&inv("(1,2)", 3), 2).is_err());
    }

    #[test]
    fn stability() {
        let r = check_stability(Pair::orthogonal(3).unwrap(), 4, Theory::Cohomology).unwrap();
        assert_eq!(r.checked, 4);
        let r = check_stability(Pair::symplectic(4).unwrap(), 6, Theory::KTheory).unwrap();
        assert_eq!(r.checked, 3);
        let values = compute_values(Pair::symplectic(6).unwrap(), Theory::Cohomology).unwrap();
        assert_eq!(values[&c("(1,3)(2,4)(5,6)", 6)], p("x1+x2"));
    }

    #[test]
    fn factor_stripping_along_stability_chain() {
        for size in [4, 6, 8] {
            let pair = Pair::symplectic(size).unwrap();
            let mut f = closed_orbit_upsilon(pair);
            for edge in stability_chain(pair).unwrap() {
                f = divided_difference(edge.label, &f);
            }
            let smaller = Pair::symplectic(size - 2).unwrap();
            assert_eq!(f, closed_orbit_upsilon(smaller));
        }
    }

    #[test]
    fn k_to_cohomology_examples() {
        let o3 = Pair::orthogonal(3).unwrap();
        assert_eq!(
            k_to_cohomology(&closed_orbit_upsilon_k(o3)).unwrap(),
            closed_orbit_upsilon(o3)
        );
        assert_eq!(k_to_cohomology(&Polynomial::one()).unwrap(), Polynomial::one());
        assert_eq!(k_to_cohomology(&Polynomial::zero()), Err(Error::ZeroPolynomial));
        let sp6 = Pair::symplectic(6).unwrap();
        let coh = compute_values(sp6, Theory::Cohomology).unwrap();
        let k = compute_values(sp6, Theory::KTheory).unwrap();
        for (pi, f) in &k {
            assert_eq!(k_to_cohomology(f).unwrap(), coh[pi]);
        }
    }

    #[test]
    fn records_and_exports() {
        let records = compute_all(Pair::symplectic(4).unwrap(), Theory::KTheory).unwrap();
        let order: Vec<String> = records.iter().map(|r| r.involution.cycle_notation()).collect();
        assert_eq!(order, ["(1,4)(2,3)", "(1,3)(2,4)", "(1,2)(3,4)"]);
        let json = records_to_json(&records);
        assert_eq!(json[1]["upsilon_k"], "-x1*x2 + 1");
        assert_eq!(json[1]["schubert_expansion"]["1324"], "1");
        let csv = records_to_csv(&records);
        assert_eq!(csv.lines().count(), 4);
        assert!(csv.starts_with("involution,length,upsilon,upsilon_k,schubert_expansion\n"));
    }
}
