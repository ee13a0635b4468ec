//! Matching component factors across two products of numerators.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::numerator::{check_typical_dominant, factor_numerator_unchecked, NumeratorFactors};
use crate::root_datum::{RootDatum, Weight};
use crate::series::QPoly;
use crate::{q, Q};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum Side {
    Lhs,
    Rhs,
}

/// One factor U_c(λ) of one weight in a list.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub struct FactorRef {
    pub side: Side,
    /// 0-based position in the list.
    pub index: usize,
    /// 1-based component id.
    pub component: usize,
}

impl FactorRef {
    fn label(&self) -> String {
        let s = match self.side {
            Side::Lhs => "lhs",
            Side::Rhs => "rhs",
        };
        format!("{}[{}].U{}", s, self.index + 1, self.component)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Conclusion {
    UniqueFactorization,
    CrossMatchedCounterexample,
    ProductsUnequal,
}

impl std::fmt::Display for Conclusion {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let s = match self {
            Conclusion::UniqueFactorization => "UniqueFactorization",
            Conclusion::CrossMatchedCounterexample => "CrossMatchedCounterexample",
            Conclusion::ProductsUnequal => "ProductsUnequal",
        };
        f.write_str(s)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MatchReport {
    pub r_equals_s: bool,
    pub pairing: Vec<(FactorRef, FactorRef, Vec<i64>)>,
    /// Some bijection p -> q pairs both factors of λ_p with those of μ_q.
    pub sigma_hypothesis_holds: bool,
    pub conclusion: Conclusion,
    /// (p, q) with V(λ_p) ≅ V(μ_q), when the hypothesis holds.
    pub isomorphisms: Vec<(usize, usize)>,
    /// Order in which lhs factors are peeled off: ascending degree of
    /// X^λ(C), as in the minimal-degree argument.
    pub peeling_order: Vec<FactorRef>,
    pub highest_weight_sums_equal: Option<bool>,
    pub notes: Vec<String>,
}

impl MatchReport {
    pub fn to_text(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(s, "conclusion: {}", self.conclusion);
        let _ = writeln!(s, "r_equals_s: {}", self.r_equals_s);
        let _ = writeln!(s, "sigma_hypothesis: {}", self.sigma_hypothesis_holds);
        if let Some(b) = self.highest_weight_sums_equal {
            let _ = writeln!(s, "highest_weight_sums_equal: {b}");
        }
        for (a, b, sig) in &self.pairing {
            let sig: Vec<String> = sig.iter().map(|x| x.to_string()).collect();
            let _ = writeln!(s, "pair: {} <-> {} signature ({})", a.label(), b.label(), sig.join(","));
        }
        if !self.peeling_order.is_empty() {
            let order: Vec<String> = self.peeling_order.iter().map(|f| f.label()).collect();
            let _ = writeln!(s, "peeling_order: {}", order.join(" "));
        }
        for (p, q) in &self.isomorphisms {
            let _ = writeln!(s, "isomorphic: lhs[{}] ~ rhs[{}]", p + 1, q + 1);
        }
        for n in &self.notes {
            let _ = writeln!(s, "note: {n}");
        }
        s
    }
}

fn product_of(fs: &[NumeratorFactors], nvars: usize) -> Result<QPoly> {
    let mut acc = QPoly::one(nvars, ());
    for f in fs {
        acc = acc.mul(&f.product()?)?;
    }
    Ok(acc)
}

fn factors_for(d: &RootDatum, ws: &[Weight]) -> Result<Vec<NumeratorFactors>> {
    ws.par_iter()
        .map(|w| {
            let dom = check_typical_dominant(d, w)?;
            factor_numerator_unchecked(d, w, dom)
        })
        .collect()
}

/// Pairs factors with equal signatures, component by component.
fn pair_by_signature(
    lhs: &[NumeratorFactors],
    rhs: &[NumeratorFactors],
    ncomp: usize,
) -> Result<Vec<(FactorRef, FactorRef, Vec<i64>)>> {
    let mut out = Vec::new();
    for c in 0..ncomp {
        let mut pool: BTreeMap<&Vec<i64>, Vec<usize>> = BTreeMap::new();
        for (q, f) in rhs.iter().enumerate() {
            pool.entry(&f.signatures[c]).or_default().push(q);
        }
        for v in pool.values_mut() {
            v.reverse();
        }
        for (p, f) in lhs.iter().enumerate() {
            let sig = &f.signatures[c];
            let q = pool
                .get_mut(sig)
                .and_then(|v| v.pop())
                .ok_or_else(|| Error::Internal("equal products with different factor multisets".into()))?;
            out.push((
                FactorRef { side: Side::Lhs, index: p, component: c + 1 },
                FactorRef { side: Side::Rhs, index: q, component: c + 1 },
                sig.clone(),
            ));
        }
        if pool.values().any(|v| !v.is_empty()) {
            return Err(Error::Internal("unmatched factor on the right".into()));
        }
    }
    Ok(out)
}

/// A bijection p -> q with equal full signatures, if one exists.
fn whole_weight_bijection(lhs: &[NumeratorFactors], rhs: &[NumeratorFactors]) -> Option<Vec<usize>> {
    if lhs.len() != rhs.len() {
        return None;
    }
    let mut pool: BTreeMap<&Vec<Vec<i64>>, Vec<usize>> = BTreeMap::new();
    for (q, f) in rhs.iter().enumerate() {
        pool.entry(&f.signatures).or_default().push(q);
    }
    for v in pool.values_mut() {
        v.reverse();
    }
    lhs.iter().map(|f| pool.get_mut(&f.signatures).and_then(|v| v.pop())).collect()
}

fn degree_of(sig: &[i64]) -> i64 {
    sig.iter().sum()
}

pub fn match_factors(d: &RootDatum, lhs: &[Weight], rhs: &[Weight]) -> Result<MatchReport> {
    let lf = factors_for(d, lhs)?;
    let rf = factors_for(d, rhs)?;
    match_prepared(d, &lf, &rf)
}

fn match_prepared(d: &RootDatum, lf: &[NumeratorFactors], rf: &[NumeratorFactors]) -> Result<MatchReport> {
    let n = d.rank0();
    let mut notes = Vec::new();
    for (side, fs) in [("lhs", lf), ("rhs", rf)] {
        for (i, f) in fs.iter().enumerate() {
            if f.dominance == crate::root_datum::Dominance::NecessaryOnly {
                notes.push(format!("{side}[{}]: dominance checked on the necessary conditions only", i + 1));
            }
        }
    }
    let equal = product_of(lf, n)? == product_of(rf, n)?;
    let r_equals_s = lf.len() == rf.len();
    if !equal {
        return Ok(MatchReport {
            r_equals_s,
            pairing: vec![],
            sigma_hypothesis_holds: false,
            conclusion: Conclusion::ProductsUnequal,
            isomorphisms: vec![],
            peeling_order: vec![],
            highest_weight_sums_equal: None,
            notes,
        });
    }
    if !r_equals_s {
        return Err(Error::Internal("equal products of different lengths".into()));
    }
    let ncomp = d.components.len();
    let mut peeling: Vec<(i64, FactorRef)> = Vec::new();
    for (p, f) in lf.iter().enumerate() {
        for c in 0..ncomp {
            peeling.push((degree_of(&f.signatures[c]), FactorRef { side: Side::Lhs, index: p, component: c + 1 }));
        }
    }
    peeling.sort();
    let peeling_order = peeling.into_iter().map(|x| x.1).collect();
    if let Some(bij) = whole_weight_bijection(lf, rf) {
        let mut pairing = Vec::new();
        for c in 0..ncomp {
            for (p, &q) in bij.iter().enumerate() {
                pairing.push((
                    FactorRef { side: Side::Lhs, index: p, component: c + 1 },
                    FactorRef { side: Side::Rhs, index: q, component: c + 1 },
                    lf[p].signatures[c].clone(),
                ));
            }
        }
        return Ok(MatchReport {
            r_equals_s,
            pairing,
            sigma_hypothesis_holds: true,
            conclusion: Conclusion::UniqueFactorization,
            isomorphisms: bij.into_iter().enumerate().collect(),
            peeling_order,
            highest_weight_sums_equal: None,
            notes,
        });
    }
    let pairing = pair_by_signature(lf, rf, ncomp)?;
    Ok(MatchReport {
        r_equals_s,
        pairing,
        sigma_hypothesis_holds: false,
        conclusion: Conclusion::CrossMatchedCounterexample,
        isomorphisms: vec![],
        peeling_order,
        highest_weight_sums_equal: None,
        notes,
    })
}

fn weight_sum(d: &RootDatum, ws: &[Weight]) -> Weight {
    ws.iter().fold(Weight::zero(d.ambient_dim()), |a, w| &a + w)
}

/// As [`match_factors`], also checking Σλ = Σμ. With equal sums and equal
/// lengths, equal U-products are equivalent to equal characters of the
/// tensor products.
pub fn verify_tensor_isomorphism(d: &RootDatum, lhs: &[Weight], rhs: &[Weight]) -> Result<MatchReport> {
    let mut rep = match_factors(d, lhs, rhs)?;
    let sums = weight_sum(d, lhs) == weight_sum(d, rhs);
    rep.highest_weight_sums_equal = Some(sums);
    if rep.conclusion != Conclusion::ProductsUnequal && !sums {
        rep.notes.push("U-products agree but the highest-weight sums differ, so the characters differ".into());
        rep.conclusion = Conclusion::ProductsUnequal;
        rep.sigma_hypothesis_holds = false;
        rep.isomorphisms.clear();
    }
    if rep.conclusion == Conclusion::ProductsUnequal && lhs.len() != rhs.len() {
        rep.notes.push("lists of different length cannot have equal products".into());
    }
    Ok(rep)
}

#[derive(Debug, Clone)]
pub struct Counterexample {
    pub lhs: Vec<Weight>,
    pub rhs: Vec<Weight>,
    /// ω-coefficient vectors of lhs and rhs weights.
    pub lhs_coords: Vec<Vec<i64>>,
    pub rhs_coords: Vec<Vec<i64>>,
    pub tau_multiple: i64,
    pub report: MatchReport,
}

#[derive(Debug, Clone)]
pub struct SearchOutcome {
    pub hits: Vec<Counterexample>,
    pub note: Option<String>,
}

const MAX_TAU_MULTIPLE: i64 = 10;

fn tuples(len: usize, bound: i64) -> Vec<Vec<i64>> {
    let mut out = vec![vec![]];
    for _ in 0..len {
        out = out
            .into_iter()
            .flat_map(|t| {
                (0..=bound).map(move |x| {
                    let mut t = t.clone();
                    t.push(x);
                    t
                })
            })
            .collect();
    }
    out
}

/// Swapped-signature quadruples λ = (A1|B1),(A2|B2), μ = (A2|B1),(A1|B2)
/// with ω-coefficients in 0..=bound, made typical by adding k·τ.
pub fn search_counterexamples(d: &RootDatum, bound: i64, tau_mult: i64, limit: Option<usize>) -> Result<SearchOutcome> {
    if d.components.len() < 2 {
        return Ok(SearchOutcome {
            hits: vec![],
            note: Some("the even diagram is connected, so unique factorization holds and there is nothing to search".into()),
        });
    }
    let pos1 = crate::numerator::component_positions(d, 0);
    let pos2 = crate::numerator::component_positions(d, 1);
    let omegas: Vec<Weight> = (1..=d.rank0()).map(|i| d.fundamental_weight(i)).collect::<Result<_>>()?;
    let tau = d.sum_positive_odd();
    let a_list = tuples(pos1.len(), bound);
    let b_list = tuples(pos2.len(), bound);
    let mut cands = Vec::new();
    for i in 0..a_list.len() {
        for j in i + 1..a_list.len() {
            for k in 0..b_list.len() {
                for l in k + 1..b_list.len() {
                    cands.push((i, j, k, l));
                }
            }
        }
    }
    let coords = |a: &Vec<i64>, b: &Vec<i64>| {
        let mut c = vec![0i64; d.rank0()];
        for (x, &p) in a.iter().zip(&pos1) {
            c[p] = *x;
        }
        for (x, &p) in b.iter().zip(&pos2) {
            c[p] = *x;
        }
        c
    };
    let build = |c: &[i64], k: i64| -> Weight {
        let mut w = tau.scale(&q(k));
        for (x, om) in c.iter().zip(&omegas) {
            w = &w + &om.scale(&Q::from_integer((*x).into()));
        }
        w
    };
    let hits: Vec<Option<Counterexample>> = cands
        .par_iter()
        .map(|&(i, j, k, l)| -> Result<Option<Counterexample>> {
            let (a1, a2, b1, b2) = (&a_list[i], &a_list[j], &b_list[k], &b_list[l]);
            let lc = vec![coords(a1, b1), coords(a2, b2)];
            let rc = vec![coords(a2, b1), coords(a1, b2)];
            let mut t = tau_mult;
            loop {
                if t > MAX_TAU_MULTIPLE {
                    return Ok(None);
                }
                let lhs: Vec<Weight> = lc.iter().map(|c| build(c, t)).collect();
                let rhs: Vec<Weight> = rc.iter().map(|c| build(c, t)).collect();
                if lhs.iter().chain(&rhs).all(|w| d.is_typical(w)) {
                    let rep = verify_tensor_isomorphism(d, &lhs, &rhs)?;
                    if rep.conclusion != Conclusion::CrossMatchedCounterexample {
                        return Ok(None);
                    }
                    return Ok(Some(Counterexample {
                        lhs,
                        rhs,
                        lhs_coords: lc,
                        rhs_coords: rc,
                        tau_multiple: t,
                        report: rep,
                    }));
                }
                t += 1;
            }
        })
        .collect::<Result<_>>()?;
    let mut hits: Vec<Counterexample> = hits.into_iter().flatten().collect();
    if let Some(n) = limit {
        hits.truncate(n);
    }
    Ok(SearchOutcome { hits, note: None })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(d: &RootDatum, c: [i64; 3]) -> Weight {
        let mut x = d.sum_positive_odd();
        for (i, &a) in c.iter().enumerate() {
            x = &x + &d.fundamental_weight(i + 1).unwrap().scale(&q(a));
        }
        x
    }

    #[test]
    fn example_is_cross_matched() {
        let d = RootDatum::sl(3, 2);
        let lhs = vec![w(&d, [1, 2, 3]), w(&d, [1, 4, 5])];
        let rhs = vec![w(&d, [1, 4, 3]), w(&d, [1, 2, 5])];
        let rep = verify_tensor_isomorphism(&d, &lhs, &rhs).unwrap();
        assert_eq!(rep.conclusion, Conclusion::CrossMatchedCounterexample);
        assert!(!rep.sigma_hypothesis_holds);
        assert_eq!(rep.highest_weight_sums_equal, Some(true));
        let pairs: Vec<(usize, usize, usize)> =
            rep.pairing.iter().map(|(a, b, _)| (a.index, a.component, b.index)).collect();
        assert!(pairs.contains(&(0, 1, 1)));
        assert!(pairs.contains(&(0, 2, 0)));
        assert!(pairs.contains(&(1, 1, 0)));
        assert!(pairs.contains(&(1, 2, 1)));
    }

    #[test]
    fn identical_lists() {
        let d = RootDatum::sl(3, 2);
        let l = vec![w(&d, [1, 2, 3]), w(&d, [0, 1, 2])];
        let mut r = l.clone();
        r.reverse();
        let rep = match_factors(&d, &l, &r).unwrap();
        assert_eq!(rep.conclusion, Conclusion::UniqueFactorization);
        assert_eq!(rep.isomorphisms, vec![(0, 1), (1, 0)]);
    }

    #[test]
    fn unequal_products() {
        let d = RootDatum::sl(3, 2);
        let rep = match_factors(&d, &[w(&d, [1, 2, 3])], &[w(&d, [1, 2, 4])]).unwrap();
        assert_eq!(rep.conclusion, Conclusion::ProductsUnequal);
        let rep = verify_tensor_isomorphism(&d, &[w(&d, [1, 2, 3]), w(&d, [0, 0, 1])], &[w(&d, [1, 2, 3])]).unwrap();
        assert_eq!(rep.conclusion, Conclusion::ProductsUnequal);
        assert!(!rep.r_equals_s);
    }

    #[test]
    fn connected_families_search_empty() {
        let out = search_counterexamples(&RootDatum::sl(3, 1), 3, 1, None).unwrap();
        assert!(out.hits.is_empty() && out.note.is_some());
    }
}
