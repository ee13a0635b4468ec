//! The acceptance suite: one check per criterion, shared by the test
//! harness and `superweyl selftest`.

use std::collections::BTreeSet;
use std::time::{Duration, Instant};

use itertools::Itertools;
use num_traits::{One, Zero};

use crate::atypical::{closed_form_coefficient, coefficient_f1, coefficient_oracle, AtypicalContext};
use crate::error::Result;
use crate::numerator::{
    factor_numerator, has_nonnegative_integer_coefficients, lowest_terms, normalized_character, numerator, pi0_names,
    x_lambda,
};
use crate::partitions::{k_partition_counts, SimpleGraph};
use crate::root_datum::{RootDatum, Weight};
use crate::sampling::{atypical_weights, random_typical_dominant, rng, weight_from_coords};
use crate::series::{mono_degree, QPoly};
use crate::unifac::{search_counterexamples, verify_tensor_isomorphism, Conclusion};
use crate::{q, qf, Q};

/// Truncation in Z for the atypical comparisons.
pub const Z_TRUNCATION: u32 = 3;
/// Extra X-degree beyond deg X^λ(C) for the lowest-term check.
pub const LOWEST_TERM_SLACK: u32 = 2;
/// Total degree of the truncated characters.
pub const CHARACTER_DEGREE: u32 = 6;
/// Largest induced subgraph examined for the graph invariant.
pub const MAX_SUBGRAPH: usize = 6;

/// Criteria whose failure is expected and explained.
pub const KNOWN_DEVIATIONS: &[(u32, &str)] = &[(
    3,
    "the supertrace form gives (tau, eps_i - delta_j) = 2 - 3 = -1 on sl(3,2); the value 5 needs a form that is not invariant",
)];

#[derive(Debug, Clone)]
pub struct CriterionResult {
    pub id: u32,
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
    pub elapsed: Duration,
    pub budget: Option<Duration>,
}

impl CriterionResult {
    pub fn known_deviation(&self) -> Option<&'static str> {
        KNOWN_DEVIATIONS.iter().find(|(i, _)| *i == self.id).map(|(_, why)| *why)
    }

    pub fn line(&self) -> String {
        let budget = self.budget.map(|b| format!(" / {}s", b.as_secs())).unwrap_or_default();
        format!(
            "{} [{:>2}] {} ({:.2}s{}): {}",
            if self.passed { "PASS" } else { "FAIL" },
            self.id,
            self.name,
            self.elapsed.as_secs_f64(),
            budget,
            self.detail
        )
    }
}

type Check = fn(u64) -> Result<(bool, String)>;

const CRITERIA: &[(u32, &str, Option<u64>, Check)] = &[
    (1, "example factors", Some(1), c1_example_factors),
    (2, "example product identity", Some(1), c2_example_product),
    (3, "tau pairing on sl(3,2)", None, c3_tau_pairing),
    (4, "Weyl vector law", None, c4_weyl_vector),
    (5, "factorization", Some(30), c5_factorization),
    (6, "graph invariant", Some(10), c6_graph_invariant),
    (7, "lowest-term law", Some(60), c7_lowest_term),
    (8, "injectivity", None, c8_injectivity),
    (9, "atypical closed forms vs oracle", Some(120), c9_closed_forms),
    (10, "tree coefficient", None, c10_tree_coefficient),
    (11, "nonzero oracle coefficients", None, c11_nonzero),
    (12, "character positivity", Some(60), c12_character),
    (13, "counterexample search", Some(120), c13_search),
];

pub fn criterion_ids() -> Vec<u32> {
    CRITERIA.iter().map(|c| c.0).collect()
}

pub fn run_criterion(id: u32, seed: u64) -> Option<CriterionResult> {
    let &(id, name, budget, check) = CRITERIA.iter().find(|c| c.0 == id)?;
    let budget = budget.map(Duration::from_secs);
    let start = Instant::now();
    let out = check(seed);
    let elapsed = start.elapsed();
    let (mut passed, mut detail) = match out {
        Ok(r) => r,
        Err(e) => (false, format!("error: {e}")),
    };
    if let Some(b) = budget {
        if elapsed > b {
            passed = false;
            detail.push_str("; over the time budget");
        }
    }
    Some(CriterionResult { id, name, passed, detail, elapsed, budget })
}

pub fn run_all(seed: u64) -> Vec<CriterionResult> {
    criterion_ids().into_iter().filter_map(|i| run_criterion(i, seed)).collect()
}

fn sl32() -> RootDatum {
    RootDatum::sl(3, 2)
}

fn omega_tau(d: &RootDatum, a: &[i64], t: i64) -> Result<Weight> {
    weight_from_coords(d, a, &q(t))
}

/// λ1, λ2, μ1, μ2 of the example on sl(3,2).
pub fn example_weights(d: &RootDatum) -> Result<[Weight; 4]> {
    Ok([
        omega_tau(d, &[1, 2, 3], 1)?,
        omega_tau(d, &[1, 4, 5], 1)?,
        omega_tau(d, &[1, 4, 3], 1)?,
        omega_tau(d, &[1, 2, 5], 1)?,
    ])
}

const EXAMPLE_FACTORS: [[&str; 2]; 4] = [
    ["1 - X[a1]^2 - X[a2]^3 + X[a1]^5*X[a2]^3 + X[a1]^2*X[a2]^5 - X[a1]^5*X[a2]^5", "1 - X[a3]^4"],
    ["1 - X[a1]^2 - X[a2]^5 + X[a1]^7*X[a2]^5 + X[a1]^2*X[a2]^7 - X[a1]^7*X[a2]^7", "1 - X[a3]^6"],
    ["1 - X[a1]^2 - X[a2]^5 + X[a1]^7*X[a2]^5 + X[a1]^2*X[a2]^7 - X[a1]^7*X[a2]^7", "1 - X[a3]^4"],
    ["1 - X[a1]^2 - X[a2]^3 + X[a1]^5*X[a2]^3 + X[a1]^2*X[a2]^5 - X[a1]^5*X[a2]^5", "1 - X[a3]^6"],
];

fn c1_example_factors(_: u64) -> Result<(bool, String)> {
    let d = sl32();
    let names = pi0_names(&d);
    let mut bad = Vec::new();
    for (i, w) in example_weights(&d)?.iter().enumerate() {
        let f = factor_numerator(&d, w)?;
        for (c, want) in EXAMPLE_FACTORS[i].iter().enumerate() {
            let got = f.factors[c].1.to_text(&names);
            if got != *want {
                bad.push(format!("weight {} factor {}: {}", i + 1, c + 1, got));
            }
        }
    }
    Ok((bad.is_empty(), if bad.is_empty() { "8 factors match".into() } else { bad.join("; ") }))
}

fn c2_example_product(_: u64) -> Result<(bool, String)> {
    let d = sl32();
    let [l1, l2, m1, m2] = example_weights(&d)?;
    let lhs = numerator(&d, &l1)?.mul(&numerator(&d, &l2)?)?;
    let rhs = numerator(&d, &m1)?.mul(&numerator(&d, &m2)?)?;
    let rep = verify_tensor_isomorphism(&d, &[l1, l2], &[m1, m2])?;
    let ok = lhs == rhs
        && rep.conclusion == Conclusion::CrossMatchedCounterexample
        && !rep.sigma_hypothesis_holds
        && rep.highest_weight_sums_equal == Some(true);
    Ok((ok, format!("products equal: {}, conclusion: {}, sigma: {}", lhs == rhs, rep.conclusion, rep.sigma_hypothesis_holds)))
}

fn c3_tau_pairing(_: u64) -> Result<(bool, String)> {
    let d = sl32();
    let tau = d.sum_positive_odd();
    let mut vals = Vec::new();
    for r in &d.positive_odd {
        vals.push(d.inner(&tau, &r.weight)?);
    }
    let ok = vals.iter().all(|v| *v == q(5));
    let shown = vals.iter().map(crate::fmt_q).collect::<Vec<_>>().join(",");
    Ok((ok, format!("expected 5 for all six, got [{shown}]")))
}

/// Every built-in datum at the sizes exercised by the suite.
pub fn builtin_data() -> Vec<RootDatum> {
    vec![
        RootDatum::sl(2, 1),
        RootDatum::sl(3, 1),
        RootDatum::sl(3, 2),
        RootDatum::sl(4, 3),
        RootDatum::sl(5, 4),
        RootDatum::osp1(2),
        RootDatum::osp1(3),
        RootDatum::osp2(2),
        RootDatum::osp2(4),
        RootDatum::g3(),
        RootDatum::f4(),
    ]
}

fn c4_weyl_vector(_: u64) -> Result<(bool, String)> {
    let mut bad = Vec::new();
    let mut count = 0;
    for d in builtin_data() {
        let rho = d.weyl_vector();
        for (s, r) in d.simple.iter().enumerate() {
            let lhs = d.inner(rho, &r.weight)?;
            let rhs = d.inner(&r.weight, &r.weight)? * qf(1, 2);
            count += 1;
            if lhs != rhs || (r.isotropic && !lhs.is_zero()) {
                bad.push(format!("{} {}", d.family(), d.simple_name(s)));
            }
        }
    }
    Ok((bad.is_empty(), if bad.is_empty() { format!("{count} simple roots") } else { bad.join(", ") }))
}

fn c5_factorization(seed: u64) -> Result<(bool, String)> {
    const SAMPLES: usize = 100;
    let mut r = rng(seed);
    let mut checked = 0;
    for d in [sl32(), RootDatum::osp2(2)] {
        for _ in 0..SAMPLES {
            let w = random_typical_dominant(&d, &mut r, 4)?;
            let f = factor_numerator(&d, &w)?;
            if f.product()? != numerator(&d, &w)? {
                return Ok((false, format!("{}: {}", d.family(), d.format_weight(&w))));
            }
            checked += 1;
        }
    }
    Ok((true, format!("{checked} weights")))
}

fn c6_graph_invariant(_: u64) -> Result<(bool, String)> {
    let mut seen = 0;
    let mut bad = Vec::new();
    for d in builtin_data() {
        let n = d.rank0();
        for size in 1..=n.min(MAX_SUBGRAPH) {
            for sub in (0..n).combinations(size) {
                let g = SimpleGraph::from_datum(&d, &sub)?;
                let k = k_partition_counts(&g)?.k_value;
                let want = if g.is_connected() { Q::one() } else { Q::zero() };
                seen += 1;
                if k != want {
                    bad.push(format!("{} {:?}: k = {}", d.family(), sub, crate::fmt_q(&k)));
                }
            }
        }
    }
    Ok((bad.is_empty(), if bad.is_empty() { format!("{seen} induced subgraphs") } else { bad.join("; ") }))
}

fn c7_lowest_term(seed: u64) -> Result<(bool, String)> {
    const SAMPLES: usize = 25;
    let d = sl32();
    let mut r = rng(seed);
    for _ in 0..SAMPLES {
        let w = random_typical_dominant(&d, &mut r, 3)?;
        let f = factor_numerator(&d, &w)?;
        for (c, (_, u)) in f.factors.iter().enumerate() {
            let set: BTreeSet<usize> = crate::numerator::component_positions(&d, c).into_iter().collect();
            let xl = x_lambda(&d, &w, &set)?;
            let bound = mono_degree(&xl) as u32 + LOWEST_TERM_SLACK;
            let th = u.neg_log(bound)?.theta(&set);
            let want = QPoly::monomial(xl.clone(), q(1));
            let got = lowest_terms(&th).map(|(_, p)| p);
            if got.as_ref() != Some(&want) {
                return Ok((false, format!("{} component {}", d.format_weight(&w), c + 1)));
            }
        }
    }
    Ok((true, format!("{SAMPLES} weights, both components")))
}

fn c8_injectivity(_: u64) -> Result<(bool, String)> {
    let d = sl32();
    let mut us: Vec<QPoly> = Vec::new();
    for a in (0..3).map(|_| 0..3i64).multi_cartesian_product() {
        let w = (1..=10)
            .map(|t| omega_tau(&d, &a, t))
            .find(|w| w.as_ref().map(|w| d.is_typical(w)).unwrap_or(true))
            .expect("a typical shift exists")?;
        us.push(numerator(&d, &w)?);
    }
    let distinct = us.iter().enumerate().all(|(i, u)| us[..i].iter().all(|v| v != u));
    Ok((distinct, format!("{} numerators pairwise distinct: {distinct}", us.len())))
}

/// (datum, weight, special) cases compared in the closed-form criterion.
pub fn closed_form_cases() -> Result<Vec<(RootDatum, Weight, bool)>> {
    let mut out = Vec::new();
    let mut push_types = |d: RootDatum, bound: i64, specials: &[bool]| -> Result<()> {
        for g in 0..d.positive_odd.len() {
            if let Some(w) = atypical_weights(&d, g, bound)?.into_iter().next() {
                for &s in specials {
                    out.push((d.clone(), w.clone(), s));
                }
            }
        }
        Ok(())
    };
    push_types(RootDatum::sl(3, 1), 2, &[false])?;
    push_types(RootDatum::sl(4, 1), 2, &[false])?;
    push_types(RootDatum::osp2(2), 2, &[false])?;
    push_types(RootDatum::osp2(3), 2, &[false])?;
    push_types(RootDatum::g3(), 2, &[false, true])?;
    push_types(RootDatum::f4(), 1, &[false, true])?;
    let d = RootDatum::sl(4, 3);
    for (i, j) in [(2, 2), (3, 2)] {
        let mut r = Weight::zero(d.ambient_dim());
        r.0[i - 1] = q(1);
        r.0[4 + j - 1] = q(-1);
        let g = d.odd_index(&r).expect("odd root");
        if let Some(w) = atypical_weights(&d, g, 1)?.into_iter().next() {
            out.push((d.clone(), w, false));
        }
    }
    Ok(out)
}

fn c9_closed_forms(_: u64) -> Result<(bool, String)> {
    let cases = closed_form_cases()?;
    let mut bad = Vec::new();
    for (d, w, special) in &cases {
        let ctx = AtypicalContext::new(d, w.clone(), *special, Z_TRUNCATION)?;
        let o = coefficient_oracle(&ctx)?;
        let c = closed_form_coefficient(&ctx)?;
        if o.value != c.value {
            bad.push(format!("{} {} special={}", d.family(), d.odd_name(ctx.gamma), special));
        }
    }
    let ok = bad.is_empty() && cases.len() >= 30;
    Ok((ok, if bad.is_empty() { format!("{} cases equal at T = {}", cases.len(), Z_TRUNCATION) } else { bad.join("; ") }))
}

fn c10_tree_coefficient(_: u64) -> Result<(bool, String)> {
    let mut shown = Vec::new();
    let mut ok = true;
    for (d, pqs) in [(RootDatum::sl(4, 3), vec![(2, 2), (3, 2)]), (RootDatum::sl(5, 3), vec![(2, 2), (3, 2), (4, 2)])] {
        for (p, qq) in pqs {
            let f = coefficient_f1(&d, p, qq)?;
            ok &= f.by_enumeration == q(1) && f.by_tree == q(1);
            shown.push(format!(
                "{} ({p},{qq}): {} / {}",
                d.family(),
                crate::fmt_q(&f.by_enumeration),
                crate::fmt_q(&f.by_tree)
            ));
        }
    }
    Ok((ok, shown.join("; ")))
}

fn c11_nonzero(_: u64) -> Result<(bool, String)> {
    let cases = closed_form_cases()?;
    let mut zero = 0;
    for (d, w, special) in &cases {
        let ctx = AtypicalContext::new(d, w.clone(), *special, Z_TRUNCATION)?;
        if coefficient_oracle(&ctx)?.value.is_zero() {
            zero += 1;
        }
    }
    Ok((zero == 0, format!("{} oracle values, {} zero", cases.len(), zero)))
}

fn c12_character(seed: u64) -> Result<(bool, String)> {
    const SAMPLES: usize = 10;
    let mut r = rng(seed);
    for d in [RootDatum::sl(2, 1), sl32(), RootDatum::osp2(2)] {
        for _ in 0..SAMPLES {
            let w = random_typical_dominant(&d, &mut r, 3)?;
            let chi = normalized_character(&d, &w, CHARACTER_DEGREE)?;
            if !has_nonnegative_integer_coefficients(&chi) || chi.constant_term() != q(1) {
                return Ok((false, format!("{}: {}", d.family(), d.format_weight(&w))));
            }
        }
    }
    Ok((true, format!("{} characters to degree {}", 3 * SAMPLES, CHARACTER_DEGREE)))
}

fn c13_search(_: u64) -> Result<(bool, String)> {
    let d = sl32();
    let out = search_counterexamples(&d, 5, 1, None)?;
    let example = |h: &crate::unifac::Counterexample| {
        let mut l = h.lhs_coords.clone();
        let mut r = h.rhs_coords.clone();
        l.sort();
        r.sort();
        h.tau_multiple == 1
            && ((l == [vec![1, 2, 3], vec![1, 4, 5]] && r == [vec![1, 2, 5], vec![1, 4, 3]])
                || (r == [vec![1, 2, 3], vec![1, 4, 5]] && l == [vec![1, 2, 5], vec![1, 4, 3]]))
    };
    let found = out.hits.iter().any(example);
    let empty1 = search_counterexamples(&RootDatum::sl(3, 1), 5, 1, None)?.hits.is_empty();
    let empty2 = search_counterexamples(&RootDatum::g3(), 5, 1, None)?.hits.is_empty();
    Ok((
        found && empty1 && empty2,
        format!(
            "sl(3,2): {} hits, example present: {found}; sl(3,1) empty: {empty1}; G(3) empty: {empty2}",
            out.hits.len()
        ),
    ))
}
