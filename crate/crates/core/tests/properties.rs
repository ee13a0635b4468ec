use std::collections::BTreeSet;

use num_traits::{Signed, Zero};
use proptest::prelude::*;

use superweyl::atypical::{
    closed_form_coefficient, coefficient_oracle, partition_route, pattern_values, AtypicalContext,
};
use superweyl::linalg::Expander;
use superweyl::numerator::{component_positions, factor_numerator, numerator, signature, x_lambda};
use superweyl::partitions::{k_partition_counts, totally_disconnected_subsets, SimpleGraph};
use superweyl::root_datum::Atypicality;
use superweyl::sampling::{atypical_weights, weight_from_coords};
use superweyl::series::{mono_degree, Coeff, QPoly, ZCtx, ZSeries};
use superweyl::unifac::{match_factors, search_counterexamples, verify_tensor_isomorphism, Conclusion};
use superweyl::weight_expr::parse_weight;
use superweyl::weyl::{generate_group, Component};
use superweyl::{q, Q, RootDatum, Weight};

fn config(cases: u32) -> ProptestConfig {
    ProptestConfig { cases, ..ProptestConfig::default() }
}

fn poly(nvars: usize) -> impl Strategy<Value = QPoly> {
    prop::collection::vec((prop::collection::vec(0i32..4, nvars), -3i64..=3), 0..5).prop_map(move |ts| {
        let mut p = QPoly::zero(nvars, ());
        for (m, c) in ts {
            p.add_term(m, q(c));
        }
        p
    })
}

fn unit_poly(nvars: usize) -> impl Strategy<Value = QPoly> {
    poly(nvars).prop_map(move |p| {
        let mut u = QPoly::one(nvars, ());
        for (m, c) in p.terms {
            if m.iter().any(|&e| e > 0) {
                u.add_term(m, c);
            }
        }
        u
    })
}

fn data() -> Vec<RootDatum> {
    vec![RootDatum::sl(3, 2), RootDatum::sl(3, 1), RootDatum::osp1(2), RootDatum::osp2(2), RootDatum::g3(), RootDatum::f4()]
}

/// Σ a_i ω_i + t·τ on `d` with the smallest t ≥ t0 that makes it typical.
fn typical(d: &RootDatum, a: &[i64], t0: i64) -> Weight {
    (t0..t0 + 20)
        .map(|t| weight_from_coords(d, a, &q(t)).unwrap())
        .find(|w| d.is_typical(w))
        .expect("some shift is typical")
}

proptest! {
    #![proptest_config(config(64))]

    #[test]
    fn ring_axioms(a in poly(2), b in poly(2), c in poly(2)) {
        prop_assert_eq!(a.mul(&b).unwrap(), b.mul(&a).unwrap());
        prop_assert_eq!(a.mul(&b).unwrap().mul(&c).unwrap(), a.mul(&b.mul(&c).unwrap()).unwrap());
        prop_assert_eq!(
            a.add(&b).unwrap().mul(&c).unwrap(),
            a.mul(&c).unwrap().add(&b.mul(&c).unwrap()).unwrap()
        );
        prop_assert!(a.sub(&a).unwrap().is_zero());
    }

    #[test]
    fn neg_log_is_additive(a in unit_poly(2), b in unit_poly(2), bound in 1u32..6) {
        let lhs = a.mul(&b).unwrap().neg_log(bound).unwrap();
        let rhs = a.neg_log(bound).unwrap().add(&b.neg_log(bound).unwrap()).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn theta_partitions_support(p in poly(3), pick in prop::collection::btree_set(0usize..3, 0..3)) {
        let mut total = QPoly::zero(3, ());
        for mask in 0u32..8 {
            let set: BTreeSet<usize> = (0..3).filter(|i| mask >> i & 1 == 1).collect();
            total = total.add(&p.theta(&set)).unwrap();
        }
        prop_assert_eq!(&total, &p);
        let once = p.theta(&pick);
        prop_assert_eq!(once.theta(&pick), once.clone());
        let doubled = p.add(&p).unwrap().theta(&pick);
        prop_assert_eq!(doubled, once.add(&once).unwrap());
    }

    #[test]
    fn zseries_matches_polynomial_product(a in poly(2), b in poly(2)) {
        // read X-exponents as Z-exponents with a truncation above every degree
        let ctx = ZCtx { nz: 2, trunc: 12 };
        let to_z = |p: &QPoly| {
            let mut s = ZSeries::zero(ctx);
            for (m, c) in &p.terms {
                let mut t = ZSeries::constant(ctx, c.clone());
                for (i, &e) in m.iter().enumerate() {
                    t = t.mul(&ZSeries::var(ctx, i).pow(e as u32));
                }
                s = s.add(&t);
            }
            s
        };
        prop_assert_eq!(to_z(&a).mul(&to_z(&b)), to_z(&a.mul(&b).unwrap()));
    }

    #[test]
    fn weight_round_trip(a in prop::collection::vec(-5i64..6, 3), num in -9i64..10, den in 1i64..5) {
        let d = RootDatum::sl(3, 2);
        let w = weight_from_coords(&d, &a, &Q::new(num.into(), den.into())).unwrap();
        prop_assert_eq!(parse_weight(&d.format_weight(&w), &d).unwrap(), w);
    }
}

proptest! {
    #![proptest_config(config(24))]

    #[test]
    fn factorization_sl32(a in prop::collection::vec(0i64..5, 3), t in 1i64..4) {
        let d = RootDatum::sl(3, 2);
        let w = typical(&d, &a, t);
        prop_assert_eq!(factor_numerator(&d, &w).unwrap().product().unwrap(), numerator(&d, &w).unwrap());
    }

    /// Orbit differences: non-negative integer coefficients supported on I(w),
    /// at least ⟨λ+ρ,α⟩ there, with equality exactly for products of
    /// commuting reflections.
    #[test]
    fn orbit_difference_laws(which in 0usize..3, a in prop::collection::vec(0i64..4, 3), t in 1i64..4) {
        let d = [RootDatum::sl(3, 2), RootDatum::osp2(2), RootDatum::g3()][which].clone();
        let w = typical(&d, &a[..d.rank0()], t);
        let eta = d.rho_shift(&w);
        let g = generate_group(&d, Component::All).unwrap();
        let pos: Vec<usize> = (0..d.rank0()).collect();
        let graph = SimpleGraph::from_datum(&d, &pos).unwrap();
        let a_vals: Vec<Q> = d.shifted_pairings(&w);
        for el in &g.elements {
            let c = d.expand_pi0(&(&eta - &g.act_word(&el.word, &eta))).unwrap();
            let sup = el.support();
            for (k, x) in c.iter().enumerate() {
                prop_assert!(x.is_integer() && !x.is_negative());
                prop_assert_eq!(!x.is_zero(), sup.contains(&k));
                if sup.contains(&k) {
                    prop_assert!(*x >= a_vals[k]);
                }
            }
            let independent = sup.iter().all(|&i| sup.iter().all(|&j| i == j || !graph.adjacent(i, j)));
            let in_i = independent && el.length() == sup.len();
            let all_equal = sup.iter().all(|&k| c[k] == a_vals[k]);
            prop_assert_eq!(all_equal, in_i);
        }
    }

    /// X^λ(C_i) = X^μ(C_j) iff same component and signature iff U_i(λ) = U_j(μ).
    #[test]
    fn component_factor_identities(a in prop::collection::vec(0i64..2, 3), b in prop::collection::vec(0i64..2, 3)) {
        let d = RootDatum::sl(3, 2);
        let (l, m) = (typical(&d, &a, 1), typical(&d, &b, 1));
        let (fl, fm) = (factor_numerator(&d, &l).unwrap(), factor_numerator(&d, &m).unwrap());
        for i in 0..2 {
            for j in 0..2 {
                let ci: BTreeSet<usize> = component_positions(&d, i).into_iter().collect();
                let cj: BTreeSet<usize> = component_positions(&d, j).into_iter().collect();
                let xs = x_lambda(&d, &l, &ci).unwrap() == x_lambda(&d, &m, &cj).unwrap();
                let sig = i == j && signature(&d, &l, i).unwrap() == signature(&d, &m, j).unwrap();
                let us = fl.factors[i].1 == fm.factors[j].1;
                prop_assert_eq!(xs, sig);
                prop_assert_eq!(sig, us);
            }
        }
    }

    /// Equal products over equal-length lists force equal per-component
    /// signature multisets; permuted lists satisfy the σ-hypothesis and pair
    /// equal weights.
    #[test]
    fn products_determine_signature_multisets(
        a in prop::collection::vec(prop::collection::vec(0i64..3, 3), 2),
        b in prop::collection::vec(prop::collection::vec(0i64..3, 3), 2),
        mode in 0usize..3,
    ) {
        let d = RootDatum::sl(3, 2);
        let lhs: Vec<Weight> = a.iter().map(|x| typical(&d, x, 1)).collect();
        let rhs: Vec<Weight> = match mode {
            0 => vec![lhs[1].clone(), lhs[0].clone()],
            1 => vec![
                typical(&d, &[a[0][0], a[0][1], a[1][2]], 1),
                typical(&d, &[a[1][0], a[1][1], a[0][2]], 1),
            ],
            _ => b.iter().map(|x| typical(&d, x, 1)).collect(),
        };
        let rep = match_factors(&d, &lhs, &rhs).unwrap();
        let multiset = |ws: &[Weight], c: usize| {
            let mut v: Vec<Vec<i64>> = ws.iter().map(|w| signature(&d, w, c).unwrap()).collect();
            v.sort();
            v
        };
        if rep.conclusion != Conclusion::ProductsUnequal {
            for c in 0..2 {
                prop_assert_eq!(multiset(&lhs, c), multiset(&rhs, c));
            }
        }
        if mode == 0 {
            prop_assert!(rep.sigma_hypothesis_holds);
            for &(p, qq) in &rep.isomorphisms {
                prop_assert_eq!(&lhs[p], &rhs[qq]);
            }
        }
    }

    #[test]
    fn eventually_typical_along_tau(which in 0usize..6, a in prop::collection::vec(0i64..4, 4)) {
        let d = data()[which].clone();
        let typ: Vec<bool> = (0..=20)
            .map(|k| d.is_typical(&weight_from_coords(&d, &a[..d.rank0()], &q(k)).unwrap()))
            .collect();
        let k0 = typ.iter().rposition(|&t| !t).map(|i| i + 1).unwrap_or(0);
        prop_assert!(k0 <= 20);
    }

    #[test]
    fn atypical_routes_agree(which in 0usize..4, pick in 0usize..64, gsel in 0usize..64) {
        let d = [RootDatum::sl(3, 1), RootDatum::sl(4, 1), RootDatum::osp2(2), RootDatum::g3()][which].clone();
        let g = gsel % d.positive_odd.len();
        let ws = atypical_weights(&d, g, 2).unwrap();
        prop_assume!(!ws.is_empty());
        let w = ws[pick % ws.len()].clone();
        prop_assert_eq!(d.atypicality_type(&w), Atypicality::Type(g));
        let ctx = AtypicalContext::new(&d, w, false, 2).unwrap();
        let o = coefficient_oracle(&ctx).unwrap().value;
        prop_assert!(!o.is_zero());
        prop_assert_eq!(&o, &closed_form_coefficient(&ctx).unwrap().value);
        prop_assert_eq!(&o, &partition_route(&ctx).unwrap().value);
    }
}

/// Chromatic polynomial coefficients (index = power of x) by deletion and
/// contraction.
fn chromatic(n: usize, edges: &BTreeSet<(usize, usize)>) -> Vec<i64> {
    let Some(&(a, b)) = edges.iter().next() else {
        let mut p = vec![0; n + 1];
        p[n] = 1;
        return p;
    };
    let mut deleted = edges.clone();
    deleted.remove(&(a, b));
    // contract b into a, then renumber vertices above b
    let relabel = |v: usize| if v == b { a } else if v > b { v - 1 } else { v };
    let contracted: BTreeSet<(usize, usize)> = deleted
        .iter()
        .map(|&(x, y)| (relabel(x), relabel(y)))
        .filter(|(x, y)| x != y)
        .map(|(x, y)| (x.min(y), x.max(y)))
        .collect();
    let p = chromatic(n, &deleted);
    let c = chromatic(n - 1, &contracted);
    p.iter().enumerate().map(|(i, &x)| x - c.get(i).copied().unwrap_or(0)).collect()
}

fn graph_edges(n: usize, raw: Vec<(usize, usize)>) -> BTreeSet<(usize, usize)> {
    raw.into_iter().filter(|&(x, y)| x < n && y < n && x != y).map(|(x, y)| (x.min(y), x.max(y))).collect()
}

proptest! {
    #![proptest_config(config(48))]

    /// k(G) is (-1)^{n-1} times the linear coefficient of the chromatic
    /// polynomial: zero when disconnected, positive when connected.
    #[test]
    fn k_matches_chromatic_polynomial(n in 1usize..8, raw in prop::collection::vec((0usize..8, 0usize..8), 0..12)) {
        let e = graph_edges(n, raw);
        let g = SimpleGraph::from_edges(n, &e.iter().copied().collect::<Vec<_>>());
        let rep = k_partition_counts(&g).unwrap();
        let a1 = chromatic(n, &e)[1];
        let sign = if n % 2 == 1 { 1 } else { -1 };
        prop_assert_eq!(rep.k_value.clone(), q(sign * a1));
        prop_assert_eq!(rep.k_value.is_zero(), !g.is_connected());
        if !e.is_empty() {
            prop_assert!(rep.counts[0].is_zero());
        }
        prop_assert_eq!(rep.counts.len(), n);
    }

    /// On forests, k(G) is 1 exactly when G is connected.
    #[test]
    fn k_on_forests(n in 1usize..9, parents in prop::collection::vec((0usize..8, any::<bool>()), 8)) {
        let e: Vec<(usize, usize)> =
            (1..n).filter(|&v| parents[v - 1].1).map(|v| (parents[v - 1].0 % v, v)).collect();
        let g = SimpleGraph::from_edges(n, &e);
        let k = k_partition_counts(&g).unwrap().k_value;
        prop_assert_eq!(k, if g.is_connected() { q(1) } else { q(0) });
    }
}

#[test]
fn odd_roots_are_nonnegative_over_simple_roots() {
    for d in data() {
        for r in &d.positive_odd {
            let c = d.expand_simple(&r.weight).unwrap();
            assert!(c.iter().all(|x| x.is_integer() && !x.is_negative()), "{} {:?}", d.family(), r.weight);
        }
    }
}

#[test]
fn component_counts_per_family() {
    let table = [
        (RootDatum::sl(2, 1), 1),
        (RootDatum::sl(4, 1), 1),
        (RootDatum::sl(1, 3), 1),
        (RootDatum::sl(3, 2), 2),
        (RootDatum::sl(4, 3), 2),
        (RootDatum::osp1(3), 1),
        (RootDatum::osp2(3), 1),
        (RootDatum::g3(), 1),
        (RootDatum::f4(), 1),
    ];
    for (d, n) in table {
        assert_eq!(d.components.len(), n, "{}", d.family());
    }
}

/// Totally disconnected subsets K correspond to the elements w with
/// I(w) = K that are products of commuting reflections.
#[test]
fn disconnected_subsets_match_commuting_products() {
    for d in data() {
        let g = generate_group(&d, Component::All).unwrap();
        let graph = SimpleGraph::of_pi0(&d);
        let mut from_group: Vec<Vec<usize>> = g
            .elements
            .iter()
            .filter(|w| {
                let s = w.support();
                w.length() == s.len() && s.iter().all(|&i| s.iter().all(|&j| i == j || !graph.adjacent(i, j)))
            })
            .map(|w| w.support().into_iter().collect())
            .collect();
        let mut subsets = totally_disconnected_subsets(&graph);
        if !subsets.iter().any(|s| s.is_empty()) {
            subsets.push(vec![]);
        }
        let names = |v: Vec<usize>| -> Vec<usize> { v.into_iter().map(|i| graph.vertices[i][0]).collect() };
        let mut subsets: Vec<Vec<usize>> = subsets.into_iter().map(names).collect();
        from_group.sort();
        subsets.sort();
        assert_eq!(from_group, subsets, "{}", d.family());
    }
}

#[test]
fn search_hits_have_equal_sums() {
    let d = RootDatum::sl(3, 2);
    let out = search_counterexamples(&d, 2, 1, Some(40)).unwrap();
    assert!(!out.hits.is_empty());
    for h in &out.hits {
        assert_eq!(h.lhs.len(), h.rhs.len());
        let sum = |ws: &[Weight]| ws.iter().fold(Weight::zero(d.ambient_dim()), |a, w| &a + w);
        assert_eq!(sum(&h.lhs), sum(&h.rhs));
        let v = verify_tensor_isomorphism(&d, &h.lhs, &h.rhs).unwrap();
        assert_eq!(v.conclusion, Conclusion::CrossMatchedCounterexample);
    }
    for d in [RootDatum::sl(3, 1), RootDatum::sl(4, 1), RootDatum::g3()] {
        assert!(search_counterexamples(&d, 4, 1, None).unwrap().hits.is_empty());
    }
}

#[test]
fn table_values_are_independent() {
    let d = RootDatum::sl(4, 3);
    let mut r = Weight::zero(7);
    r.0[1] = q(1);
    r.0[5] = q(-1);
    let g = d.odd_index(&r).unwrap();
    let w = atypical_weights(&d, g, 1).unwrap().remove(0);
    let ctx = AtypicalContext::new(&d, w, false, 3).unwrap();
    let vals = pattern_values(&ctx, 2, 2).unwrap();
    let keys: BTreeSet<Vec<u16>> = vals.values().flat_map(|v| v.terms.keys().cloned()).collect();
    let vectors: Vec<Vec<Q>> = vals
        .values()
        .map(|v| keys.iter().map(|k| v.terms.get(k).cloned().unwrap_or_else(Q::zero)).collect())
        .collect();
    assert_eq!(vectors.len(), 7);
    assert!(Expander::new(&vectors, keys.len()).is_some());
}

#[test]
fn closed_forms_at_z_zero() {
    for (d, bound) in [(RootDatum::sl(4, 1), 1), (RootDatum::osp2(3), 1), (RootDatum::g3(), 2), (RootDatum::f4(), 1), (RootDatum::sl(4, 3), 1)] {
        let k = k_partition_counts(&SimpleGraph::of_pi0(&d)).unwrap().k_value;
        for g in 0..d.positive_odd.len() {
            if let Some(w) = atypical_weights(&d, g, bound).unwrap().into_iter().next() {
                let ctx = AtypicalContext::new(&d, w, false, 0).unwrap();
                let v = closed_form_coefficient(&ctx).unwrap().value;
                assert_eq!(v.constant_term(), k, "{} {}", d.family(), d.odd_name(g));
            }
        }
    }
}

#[test]
fn lowest_degree_of_x_lambda_is_positive() {
    let d = RootDatum::sl(3, 2);
    let w = typical(&d, &[0, 0, 0], 1);
    let all: BTreeSet<usize> = (0..3).collect();
    assert!(mono_degree(&x_lambda(&d, &w, &all).unwrap()) >= 3);
}
