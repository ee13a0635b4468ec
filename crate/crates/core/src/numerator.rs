//! Normalized Weyl numerators U(λ), their factors, and truncated characters.
//!
//! Numerator polynomials live in the variables X_α, α ∈ Π0, indexed by the
//! position of α in `datum.pi0`. Characters use one variable per simple root.

use std::collections::BTreeSet;

use num_traits::{Signed, ToPrimitive, Zero};
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::root_datum::{Dominance, RootDatum, Weight};
use crate::series::{mono_degree, Mono, Names, QPoly};
use crate::weyl::{generate_group, Component, WeylGroup};
use crate::{fmt_q, q, Q};

#[derive(Debug, Clone)]
pub struct NumeratorFactors {
    /// (component id, factor), ids 1-based.
    pub factors: Vec<(usize, QPoly)>,
    /// Per component, <λ+ρ, α> for α in the component.
    pub signatures: Vec<Vec<i64>>,
    pub dominance: Dominance,
}

impl NumeratorFactors {
    pub fn product(&self) -> Result<QPoly> {
        let n = self.factors.first().map(|f| f.1.nvars).unwrap_or(0);
        self.factors.iter().try_fold(QPoly::one(n, ()), |acc, (_, f)| acc.mul(f))
    }
}

/// Names `X[a1]`, `X[a2]`, ... for the Π0 variables.
pub fn pi0_names(d: &RootDatum) -> Names {
    Names {
        x: (0..d.rank0()).map(|k| format!("X[a{}]", k + 1)).collect(),
        z: (0..d.positive_odd.len()).map(|g| format!("Z[{}]", d.odd_name(g))).collect(),
    }
}

/// Positions in `pi0` of the simple roots of component `c` (0-based).
pub fn component_positions(d: &RootDatum, c: usize) -> Vec<usize> {
    d.components[c].iter().filter_map(|&s| d.even_position(s)).collect()
}

pub(crate) fn to_int(x: &Q) -> Result<i32> {
    if !x.is_integer() {
        return Err(Error::NonIntegralExponent(fmt_q(x)));
    }
    x.to_integer().to_i32().ok_or_else(|| Error::NonIntegralExponent(fmt_q(x)))
}

/// Rejects weights outside the typical dominant integral range.
pub fn check_typical_dominant(d: &RootDatum, l: &Weight) -> Result<Dominance> {
    if l.dim() != d.ambient_dim() {
        return Err(Error::DimensionMismatch { expected: d.ambient_dim(), got: l.dim() });
    }
    let dom = d.is_dominant_integral(l);
    if dom == Dominance::No {
        return Err(Error::NotDominant);
    }
    if !d.is_typical(l) {
        return Err(Error::NotTypical);
    }
    Ok(dom)
}

/// Exponent vector of X(w,λ) over Π0 for every element of `g`, with signs.
pub(crate) fn orbit_terms(d: &RootDatum, g: &WeylGroup, eta: &Weight) -> Result<Vec<(Mono, bool)>> {
    g.elements
        .par_iter()
        .map(|w| {
            let img = g.act_word(&w.word, eta);
            let diff = eta - &img;
            let c = d
                .expand_pi0(&diff)
                .ok_or_else(|| Error::Internal("orbit difference outside the span of Π0".into()))?;
            let m = c.iter().map(to_int).collect::<Result<Mono>>()?;
            Ok((m, w.length() % 2 == 1))
        })
        .collect()
}

fn sum_terms(nvars: usize, terms: Vec<(Mono, bool)>) -> QPoly {
    let mut p = QPoly::zero(nvars, ());
    for (m, neg) in terms {
        p.add_term(m, if neg { q(-1) } else { q(1) });
    }
    p
}

/// U(λ) = Σ_w (-1)^ℓ(w) X(w,λ) over W(Π0), without the typicality checks.
pub fn numerator_unchecked(d: &RootDatum, l: &Weight) -> Result<QPoly> {
    let g = generate_group(d, Component::All)?;
    let eta = d.rho_shift(l);
    Ok(sum_terms(d.rank0(), orbit_terms(d, &g, &eta)?))
}

pub fn numerator(d: &RootDatum, l: &Weight) -> Result<QPoly> {
    check_typical_dominant(d, l)?;
    numerator_unchecked(d, l)
}

/// Component signature: <λ+ρ, α> for α in component `c`.
pub fn signature(d: &RootDatum, l: &Weight, c: usize) -> Result<Vec<i64>> {
    let eta = d.rho_shift(l);
    d.components[c]
        .iter()
        .map(|&s| {
            let p = d.pairing(&eta, &d.simple[s].weight)?;
            to_int(&p).map(i64::from)
        })
        .collect()
}

pub fn factor_numerator_unchecked(d: &RootDatum, l: &Weight, dominance: Dominance) -> Result<NumeratorFactors> {
    let eta = d.rho_shift(l);
    let mut factors = Vec::new();
    let mut signatures = Vec::new();
    for c in 0..d.components.len() {
        let kind = if c == 0 { Component::One } else { Component::Two };
        let g = generate_group(d, kind)?;
        factors.push((c + 1, sum_terms(d.rank0(), orbit_terms(d, &g, &eta)?)));
        signatures.push(signature(d, l, c)?);
    }
    Ok(NumeratorFactors { factors, signatures, dominance })
}

pub fn factor_numerator(d: &RootDatum, l: &Weight) -> Result<NumeratorFactors> {
    let dom = check_typical_dominant(d, l)?;
    factor_numerator_unchecked(d, l, dom)
}

/// X^λ(C) = Π_{α∈C} X_α^{<λ+ρ,α>}, with C given as positions in `pi0`.
pub fn x_lambda(d: &RootDatum, l: &Weight, c: &BTreeSet<usize>) -> Result<Mono> {
    let eta = d.rho_shift(l);
    let mut m = vec![0; d.rank0()];
    for &k in c {
        let s = *d.pi0.get(k).ok_or(Error::IndexOutOfRange { index: k + 1, max: d.rank0() })?;
        let p = d.pairing(&eta, &d.simple[s].weight)?;
        let e = to_int(&p)?;
        if e <= 0 {
            return Err(Error::NonIntegralExponent(fmt_q(&p)));
        }
        m[k] = e;
    }
    Ok(m)
}

/// Exponents of a weight over all simple roots, rejecting non-integers.
fn simple_exponents(d: &RootDatum, w: &Weight) -> Result<Mono> {
    let c = d
        .expand_simple(w)
        .ok_or_else(|| Error::Internal("weight outside the root lattice span".into()))?;
    c.iter().map(to_int).collect()
}

/// χ_λ = D·U(λ) truncated at total degree `bound`, over one variable per
/// simple root. The sum runs over the Weyl group of the whole even part.
pub fn normalized_character(d: &RootDatum, l: &Weight, bound: u32) -> Result<QPoly> {
    check_typical_dominant(d, l)?;
    let n = d.simple.len();
    let g = generate_group(d, Component::FullEven)?;
    let eta = d.rho_shift(l);
    let mut u = QPoly::zero(n, ()).with_truncation(Some(bound));
    for w in &g.elements {
        let diff = &eta - &g.act_word(&w.word, &eta);
        let m = simple_exponents(d, &diff)?;
        u.add_term(m, w.sign());
    }
    let mut chi = u;
    for r in &d.positive_odd {
        let m = simple_exponents(d, &r.weight)?;
        let f = QPoly::one(n, ()).add(&QPoly::monomial(m, q(1)))?;
        chi = chi.mul(&f)?;
    }
    for r in &d.positive_even {
        let m = simple_exponents(d, &r.weight)?;
        let deg = mono_degree(&m);
        if deg <= 0 {
            return Err(Error::Internal("positive root of non-positive height".into()));
        }
        let mut geo = QPoly::zero(n, ()).with_truncation(Some(bound));
        let mut k = 0i64;
        while k * deg <= bound as i64 {
            geo.add_term(m.iter().map(|&e| e * k as i32).collect(), q(1));
            k += 1;
        }
        chi = chi.mul(&geo)?;
    }
    Ok(chi)
}

/// True when every coefficient is a non-negative integer.
pub fn has_nonnegative_integer_coefficients(p: &QPoly) -> bool {
    p.terms.values().all(|c| c.is_integer() && !c.is_negative())
}

/// Lowest-degree part of a polynomial: (degree, terms of that degree).
pub fn lowest_terms(p: &QPoly) -> Option<(i64, QPoly)> {
    let dmin = p.min_degree()?;
    let mut out = QPoly::zero(p.nvars, ());
    for (m, c) in &p.terms {
        if mono_degree(m) == dmin && !c.is_zero() {
            out.add_term(m.clone(), c.clone());
        }
    }
    Some((dmin, out))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sl32_weight(a: [i64; 3], taus: i64) -> Weight {
        let d = RootDatum::sl(3, 2);
        let mut w = d.sum_positive_odd().scale(&q(taus));
        for (i, &c) in a.iter().enumerate() {
            w = &w + &d.fundamental_weight(i + 1).unwrap().scale(&q(c));
        }
        w
    }

    #[test]
    fn example_factors() {
        let d = RootDatum::sl(3, 2);
        let names = pi0_names(&d);
        let l1 = sl32_weight([1, 2, 3], 1);
        let f = factor_numerator(&d, &l1).unwrap();
        assert_eq!(
            f.factors[0].1.to_text(&names),
            "1 - X[a1]^2 - X[a2]^3 + X[a1]^5*X[a2]^3 + X[a1]^2*X[a2]^5 - X[a1]^5*X[a2]^5"
        );
        assert_eq!(f.factors[1].1.to_text(&names), "1 - X[a3]^4");
        assert_eq!(f.signatures, vec![vec![2, 3], vec![4]]);
        assert_eq!(f.product().unwrap(), numerator(&d, &l1).unwrap());
    }

    #[test]
    fn sl21_two_terms() {
        let d = RootDatum::sl(2, 1);
        for a in 0..4 {
            let l = &d.fundamental_weight(1).unwrap().scale(&q(a)) + &d.sum_positive_odd().scale(&q(3));
            let u = numerator(&d, &l).unwrap();
            let expect = QPoly::one(1, ()).sub(&QPoly::monomial(vec![a as i32 + 1], q(1))).unwrap();
            assert_eq!(u, expect);
        }
    }

    #[test]
    fn rejects_atypical_and_nondominant() {
        let d = RootDatum::sl(2, 1);
        let zero = Weight::zero(3);
        assert_eq!(numerator(&d, &zero).unwrap_err(), Error::NotTypical);
        let bad = d.fundamental_weight(1).unwrap().scale(&q(-3));
        assert_eq!(numerator(&d, &bad).unwrap_err(), Error::NotDominant);
    }

    #[test]
    fn x_lambda_values() {
        let d = RootDatum::sl(3, 2);
        let l1 = sl32_weight([1, 2, 3], 1);
        assert_eq!(x_lambda(&d, &l1, &[0, 1].into_iter().collect()).unwrap(), vec![2, 3, 0]);
        assert_eq!(x_lambda(&d, &l1, &BTreeSet::new()).unwrap(), vec![0, 0, 0]);
    }

    #[test]
    fn character_head() {
        let d = RootDatum::sl(2, 1);
        let l = &d.fundamental_weight(1).unwrap().scale(&q(2)) + &d.sum_positive_odd().scale(&q(3));
        let chi = normalized_character(&d, &l, 2).unwrap();
        assert_eq!(chi.constant_term(), q(1));
        let b1 = d.simple.iter().position(|r| r.parity == crate::root_datum::Parity::Odd).unwrap();
        let mut m = vec![0; 2];
        m[b1] = 1;
        assert_eq!(chi.coefficient_of(&m), q(1));
        assert!(has_nonnegative_integer_coefficients(&chi));
    }
}
