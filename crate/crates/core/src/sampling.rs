//! Seeded sampling of dominant weights λ = Σ a_i ω_i + t·τ.
//!
//! τ is W-invariant, so it is orthogonal to Π0 and shifting by it leaves
//! dominance alone while moving (λ+ρ, γ) for odd γ.

use itertools::Itertools;
use num_traits::Zero;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::Result;
use crate::root_datum::{Atypicality, Dominance, RootDatum, Weight};
use crate::{q, Q};

pub const DEFAULT_SEED: u64 = 0x5eed_2024;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Σ a_i ω_i + t·τ.
pub fn weight_from_coords(d: &RootDatum, a: &[i64], t: &Q) -> Result<Weight> {
    let mut w = d.sum_positive_odd().scale(t);
    for (i, &c) in a.iter().enumerate() {
        w = &w + &d.fundamental_weight(i + 1)?.scale(&q(c));
    }
    Ok(w)
}

/// The weight Σ a_i ω_i + t·τ with t chosen so that (λ+ρ, γ) = 0, if that
/// weight is singly atypical of type γ and not ruled out as dominant.
pub fn atypical_of_type(d: &RootDatum, a: &[i64], gamma: usize) -> Result<Option<Weight>> {
    let tau = d.sum_positive_odd();
    let g = &d.positive_odd[gamma].weight;
    let tg = d.inner(&tau, g)?;
    if tg.is_zero() {
        return Ok(None);
    }
    let base = weight_from_coords(d, a, &q(0))?;
    let t = -d.inner(&d.rho_shift(&base), g)? / tg;
    let w = &base + &tau.scale(&t);
    let ok = d.atypicality_type(&w) == Atypicality::Type(gamma) && d.is_dominant_integral(&w) != Dominance::No;
    Ok(ok.then_some(w))
}

/// Every singly atypical weight of type γ with coefficients a_i in 0..=bound.
pub fn atypical_weights(d: &RootDatum, gamma: usize, bound: i64) -> Result<Vec<Weight>> {
    let mut out = Vec::new();
    for a in (0..d.rank0()).map(|_| 0..=bound).multi_cartesian_product() {
        if let Some(w) = atypical_of_type(d, &a, gamma)? {
            out.push(w);
        }
    }
    if d.rank0() == 0 {
        out.extend(atypical_of_type(d, &[], gamma)?);
    }
    Ok(out)
}

/// A typical dominant weight with a_i in 0..=bound and t an integer in
/// 1..=bound+1, retried until typical.
pub fn random_typical_dominant(d: &RootDatum, r: &mut ChaCha8Rng, bound: i64) -> Result<Weight> {
    loop {
        let a: Vec<i64> = (0..d.rank0()).map(|_| r.gen_range(0..=bound)).collect();
        let t = q(r.gen_range(1..=bound + 1));
        let w = weight_from_coords(d, &a, &t)?;
        if d.is_typical(&w) && d.is_dominant_integral(&w) != Dominance::No {
            return Ok(w);
        }
    }
}

/// A random singly atypical weight, or None after a fixed number of tries.
pub fn random_atypical(d: &RootDatum, r: &mut ChaCha8Rng, bound: i64, gamma: Option<usize>) -> Result<Option<Weight>> {
    for _ in 0..256 {
        let a: Vec<i64> = (0..d.rank0()).map(|_| r.gen_range(0..=bound)).collect();
        let g = gamma.unwrap_or_else(|| r.gen_range(0..d.positive_odd.len()));
        if let Some(w) = atypical_of_type(d, &a, g)? {
            return Ok(Some(w));
        }
    }
    Ok(None)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn seeded_sampling_repeats() {
        let d = RootDatum::sl(3, 2);
        let a = random_typical_dominant(&d, &mut rng(7), 3).unwrap();
        let b = random_typical_dominant(&d, &mut rng(7), 3).unwrap();
        assert_eq!(a, b);
        assert!(d.is_typical(&a));
    }

    #[test]
    fn atypical_types_realized() {
        let d = RootDatum::sl(3, 1);
        for g in 0..3 {
            let ws = atypical_weights(&d, g, 2).unwrap();
            assert!(!ws.is_empty(), "type {g}");
            assert!(ws.iter().all(|w| d.atypicality_type(w) == Atypicality::Type(g)));
        }
    }
}
