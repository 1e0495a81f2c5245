use serde_json::{json, Value};

use symorbit::localize::verify_closed_orbit;
use symorbit::ops::demazure;
use symorbit::perm::all_permutations;
use symorbit::quotient::QuotientRing;
use symorbit::schub::{double_schubert, expand_schubert, kirillov_double_expand, schubert};
use symorbit::upsilon::{
    check_stability, closed_orbit_upsilon, closed_orbit_upsilon_k, compute_values, k_to_cohomology,
    value_along_path,
};
use symorbit::weakorder::{build_graph, stability_chain};
use symorbit::{Pair, Polynomial, Theory};

use crate::Target;

pub struct Check {
    name: String,
    passed: bool,
    detail: Value,
}

pub struct Report {
    target: &'static str,
    checks: Vec<Check>,
}

impl Report {
    fn new(target: &'static str) -> Self {
        Report {
            target,
            checks: Vec::new(),
        }
    }

    fn record(&mut self, name: String, outcome: Result<Value, String>) {
        let (passed, detail) = match outcome {
            Ok(v) => (true, v),
            Err(e) => (false, Value::String(e)),
        };
        self.checks.push(Check { name, passed, detail });
    }

    pub fn first_failure(&self) -> Option<String> {
        self.checks
            .iter()
            .find(|c| !c.passed)
            .map(|c| format!("{}: {}", c.name, c.detail))
    }

    pub fn to_json(&self) -> Value {
        json!({
            "target": self.target,
            "passed": self.checks.iter().all(|c| c.passed),
            "checks": self.checks.iter().map(|c| json!({
                "name": c.name,
                "passed": c.passed,
                "detail": c.detail,
            })).collect::<Vec<_>>(),
        })
    }
}

fn o(n: usize) -> Pair {
    Pair::orthogonal(n).unwrap()
}

fn sp(n: usize) -> Pair {
    Pair::symplectic(n).unwrap()
}

fn p(s: &str) -> Polynomial {
    Polynomial::parse(s).unwrap()
}

fn default_pairs() -> Vec<Pair> {
    vec![o(3), o(4), o(5), o(6), sp(4), sp(6), sp(8)]
}

fn theories(pair: Pair) -> Vec<Theory> {
    if pair.is_symplectic() {
        vec![Theory::Cohomology, Theory::KTheory]
    } else {
        vec![Theory::Cohomology]
    }
}

pub fn run(target: Target, only: Option<Pair>, n: usize) -> Report {
    let pairs = only.map(|p| vec![p]).unwrap_or_else(default_pairs);
    match target {
        Target::PathIndependence => path_independence(&pairs),
        Target::Positivity => positivity(&pairs),
        Target::Stability => stability(only),
        Target::Localization => localization(only),
        Target::DemazureFailure => demazure_failure(),
        Target::Kirillov => kirillov(n),
        Target::KToC => k_to_c(only),
    }
}

fn path_independence(pairs: &[Pair]) -> Report {
    let mut report = Report::new("path-independence");
    for &pair in pairs {
        for theory in theories(pair) {
            let outcome = compute_values(pair, theory)
                .map_err(|e| e.to_string())
                .and_then(|values| {
                    let mut paths = 0usize;
                    if pair.size() <= 6 {
                        let graph = build_graph(pair);
                        for pi in graph.nodes() {
                            for word in graph.saturated_paths(&pair.closed_orbit(), pi) {
                                let (_, f) = value_along_path(pair, theory, &word).map_err(|e| e.to_string())?;
                                if f != values[pi] {
                                    return Err(format!("{pi} along {word:?}: {f} ≠ {}", values[pi]));
                                }
                                paths += 1;
                            }
                        }
                    }
                    Ok(json!({ "orbits": values.len(), "paths": paths }))
                });
            report.record(format!("{pair} {}", theory.key()), outcome);
        }
    }
    report
}

fn positivity(pairs: &[Pair]) -> Report {
    let mut report = Report::new("positivity");
    for &pair in pairs {
        let outcome = compute_values(pair, Theory::Cohomology)
            .map_err(|e| e.to_string())
            .and_then(|values| {
                for (pi, f) in &values {
                    if !f.is_nonnegative_integral() {
                        return Err(format!("Υ at {pi} has a negative coefficient"));
                    }
                    let e = expand_schubert(f, pair.size()).map_err(|e| e.to_string())?;
                    if !e.is_nonnegative_integral() {
                        return Err(format!("Schubert expansion at {pi} is not in ℤ≥0"));
                    }
                }
                Ok(json!({ "orbits": values.len() }))
            });
        report.record(pair.to_string(), outcome);
    }
    report
}

fn stability(only: Option<Pair>) -> Report {
    let mut report = Report::new("stability");
    let cases: Vec<(Pair, usize)> = match only {
        Some(pair @ Pair::Orthogonal(n)) => vec![(pair, n + 1)],
        Some(pair @ Pair::Symplectic(n)) => vec![(pair, n + 2)],
        None => vec![
            (o(3), 4),
            (o(3), 5),
            (o(4), 5),
            (o(4), 6),
            (sp(4), 6),
            (sp(4), 8),
            (sp(6), 8),
        ],
    };
    for (pair, target) in cases {
        for theory in theories(pair) {
            let outcome = check_stability(pair, target, theory)
                .map(|r| json!({ "checked": r.checked }))
                .map_err(|e| e.to_string());
            report.record(format!("{pair} → {target} {}", theory.key()), outcome);
        }
        let big = pair.with_size(target).unwrap();
        let outcome = stability_chain(big)
            .map(|chain| json!({ "labels": chain.iter().map(|e| e.label).collect::<Vec<_>>() }))
            .map_err(|e| e.to_string());
        report.record(format!("chain {big}"), outcome);
    }
    report
}

fn localization(only: Option<Pair>) -> Report {
    let mut report = Report::new("localization");
    let pairs = only
        .map(|p| vec![p])
        .unwrap_or_else(|| vec![sp(4), sp(6), o(2), o(3), o(4), o(5)]);
    for pair in pairs {
        let outcome = verify_closed_orbit(pair)
            .map_err(|e| e.to_string())
            .and_then(|r| {
                if r.passed() {
                    Ok(r.to_json())
                } else {
                    Err(r.failures[0].clone())
                }
            });
        report.record(pair.to_string(), outcome);
    }
    report
}

fn demazure_failure() -> Report {
    let mut report = Report::new("demazure-failure");
    let ring = QuotientRing::new(4, Theory::KTheory).unwrap();
    let one = Polynomial::one();
    let cases = [
        ("D_1(1 - x1^2) vs 1", demazure(1, &p("1 - x1^2")), one.clone()),
        ("1/2(1 + x1x2) vs 1", p("1/2*(1 + x1*x2)"), one),
        (
            "D_2((1-x1^2)(1-x2^2)(1-x1x2)) vs (1-x1^2)(1-x1x2x3)(1+x1x2x3)",
            demazure(2, &p("(1-x1^2)*(1-x2^2)*(1-x1*x2)")),
            p("(1-x1^2)*(1-x1*x2*x3)*(1+x1*x2*x3)"),
        ),
    ];
    for (name, f, g) in cases {
        let outcome = match ring.equal_mod(&f, &g) {
            Ok(false) => Ok(json!({ "equal_mod_I": false })),
            Ok(true) => Err("unexpectedly equal modulo I".to_string()),
            Err(e) => Err(e.to_string()),
        };
        report.record(name.to_string(), outcome);
    }
    let rows = [
        (o(3), p("(1-x1^2)*(1-x1*x2)")),
        (o(4), p("(1-x1^2)*(1-x2^2)*(1-x1*x2)*(1-x1*x3)")),
    ];
    for (pair, expected) in rows {
        let got = closed_orbit_upsilon_k(pair);
        let outcome = if got == expected {
            Ok(json!({ "upsilon_k": got.to_string() }))
        } else {
            Err(format!("{got} ≠ {expected}"))
        };
        report.record(format!("closed orbit {pair}"), outcome);
    }
    report
}

fn kirillov(n: usize) -> Report {
    let mut report = Report::new("kirillov");
    let outcome = (|| {
        for w in all_permutations(n) {
            let f = schubert(&w);
            let e = kirillov_double_expand(&f, n).map_err(|e| e.to_string())?;
            if e.reconstruct(double_schubert) != f {
                return Err(format!("identity fails at {}", w.one_line()));
            }
        }
        Ok(json!({ "permutations": all_permutations(n).len() }))
    })();
    report.record(format!("S_{n}"), outcome);
    let e = kirillov_double_expand(&closed_orbit_upsilon(o(3)), 3);
    let outcome = e.map_err(|e| e.to_string()).and_then(|e| {
        let text = e.render("S");
        let expected = "(2*y1^2 + 2*y1*y2) * S[123]\n2*y1 * S[132]\n(2*y1 + 2*y2) * S[213]\n2 * S[231]\n2 * S[312]\n";
        if text == expected {
            Ok(Value::String(text))
        } else {
            Err(text)
        }
    });
    report.record("closed orbit (GL_3,O_3)".to_string(), outcome);
    report
}

fn k_to_c(only: Option<Pair>) -> Report {
    let mut report = Report::new("k-to-c");
    let pairs = only.map(|p| vec![p]).unwrap_or_else(|| {
        (2..=6)
            .map(o)
            .chain([2, 4, 6, 8].map(sp))
            .collect()
    });
    for pair in pairs {
        let got = k_to_cohomology(&closed_orbit_upsilon_k(pair));
        let expected = closed_orbit_upsilon(pair);
        let outcome = match got {
            Ok(g) if g == expected => Ok(json!({ "upsilon": g.to_string() })),
            Ok(g) => Err(format!("{g} ≠ {expected}")),
            Err(e) => Err(e.to_string()),
        };
        report.record(format!("closed orbit {pair}"), outcome);
        if pair.is_symplectic() && pair.size() <= 6 {
            let outcome = (|| {
                let coh = compute_values(pair, Theory::Cohomology).map_err(|e| e.to_string())?;
                let k = compute_values(pair, Theory::KTheory).map_err(|e| e.to_string())?;
                for (pi, f) in &k {
                    let g = k_to_cohomology(f).map_err(|e| e.to_string())?;
                    if g != coh[pi] {
                        return Err(format!("{pi}: {g} ≠ {}", coh[pi]));
                    }
                }
                Ok(json!({ "orbits": k.len() }))
            })();
            report.record(format!("all orbits {pair}"), outcome);
        }
    }
    report
}
