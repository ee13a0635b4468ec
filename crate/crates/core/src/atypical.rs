//! Singly atypical weights: numerators with Z-valued coefficients and the
//! coefficient of X^λ in -log U(λ).
//!
//! Three independent routes compute that coefficient:
//! - [`coefficient_oracle`] expands -log U(λ) directly;
//! - [`partition_route`] sums over k-partitions of Π0;
//! - [`closed_form_coefficient`] evaluates the case-by-case formulas.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt::Write as _;

use num_bigint::BigInt;
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::numerator::{to_int, x_lambda};
use crate::partitions::{
    alpha_pos, beta_pos, enumerate_k_partitions, k_partition_counts, sl_shape, tree_graph_gpq, SimpleGraph,
};
use crate::root_datum::{Atypicality, Dominance, Family, RootDatum, Weight};
use crate::series::{Coeff, Mono, Names, ZCtx, ZPoly, ZSeries};
use crate::unifac::{Conclusion, FactorRef, MatchReport, Side};
use crate::weyl::{generate_group, Component, WeylGroup};
use crate::{q, qf, Q};

pub const DEFAULT_Z_TRUNCATION: u32 = 3;

#[derive(Debug, Clone)]
pub struct AtypicalContext<'a> {
    pub datum: &'a RootDatum,
    pub lambda: Weight,
    /// Index into `positive_odd` of the atypicality type.
    pub gamma: usize,
    /// The two special weights of G(3) and F(4), flagged by the caller.
    pub special: bool,
    pub z_truncation: u32,
}

impl<'a> AtypicalContext<'a> {
    pub fn new(datum: &'a RootDatum, lambda: Weight, special: bool, z_truncation: u32) -> Result<Self> {
        match datum.family() {
            Family::Sl { .. } | Family::Osp2 { .. } => {
                if special {
                    return Err(Error::UnsupportedCase("the special-weight formula exists only for G(3) and F(4)".into()));
                }
            }
            Family::G3 | Family::F4 => {}
            other => return Err(Error::WrongFamily(other.to_string())),
        }
        if lambda.dim() != datum.ambient_dim() {
            return Err(Error::DimensionMismatch { expected: datum.ambient_dim(), got: lambda.dim() });
        }
        if datum.is_dominant_integral(&lambda) == Dominance::No {
            return Err(Error::NotDominant);
        }
        let gamma = match datum.atypicality_type(&lambda) {
            Atypicality::Type(g) => g,
            Atypicality::NotSinglyAtypical(count) => return Err(Error::NotSinglyAtypical { count }),
        };
        Ok(AtypicalContext { datum, lambda, gamma, special, z_truncation })
    }

    pub fn zctx(&self) -> ZCtx {
        ZCtx { nz: self.datum.positive_odd.len(), trunc: self.z_truncation }
    }

    /// X^λ over all of Π0.
    pub fn target(&self) -> Result<Mono> {
        x_lambda(self.datum, &self.lambda, &(0..self.datum.rank0()).collect())
    }

    /// Index of wγ for a word in the Π0 labels.
    fn moved(&self, g: &WeylGroup, word: &[usize]) -> Result<usize> {
        let img = g.act_word(word, &self.datum.positive_odd[self.gamma].weight);
        self.datum.odd_index(&img).ok_or_else(|| {
            Error::Internal(format!("W sends {} outside the positive odd roots", self.datum.odd_name(self.gamma)))
        })
    }

    fn one_plus(&self, i: usize) -> ZSeries {
        ZSeries::one_plus(self.zctx(), i)
    }

    fn inv_one_plus(&self, i: usize) -> ZSeries {
        ZSeries::inv_one_plus(self.zctx(), i)
    }

    fn two_plus(&self, i: usize) -> ZSeries {
        ZSeries::linear(self.zctx(), q(2), q(1), i)
    }

    /// M = (1+Z_β)/(2+Z_β)
    fn m_factor(&self) -> ZSeries {
        self.one_plus(self.gamma).mul(&ZSeries::inv_linear(self.zctx(), q(2), q(1), self.gamma))
    }

    /// Coefficient of X(λ,w) in U(λ), up to sign.
    fn prefactor(&self, moved: usize) -> ZSeries {
        let inv = self.inv_one_plus(moved);
        if self.special {
            ZSeries::linear(self.zctx(), q(1), qf(1, 2), moved).mul(&inv)
        } else {
            inv
        }
    }

    /// The inverse of the constant term of U(λ).
    fn normalizer(&self) -> ZSeries {
        let b = self.gamma;
        if self.special {
            ZSeries::linear(self.zctx(), q(2), q(2), b).mul(&ZSeries::inv_linear(self.zctx(), q(2), q(1), b))
        } else {
            self.one_plus(b)
        }
    }

    /// Per-block factor of a partition: (1+Z_β)/(1+Z_{wβ}), or its
    /// special-weight analogue M(2+Z_{wβ})/(1+Z_{wβ}).
    fn block_factor(&self, moved: usize) -> ZSeries {
        if self.special {
            self.m_factor().mul(&self.two_plus(moved)).mul(&self.inv_one_plus(moved))
        } else {
            self.one_plus(self.gamma).mul(&self.inv_one_plus(moved))
        }
    }
}

/// U(λ) = Σ_w (-1)^ℓ(w) X(λ,w)/(1+Z_{wβ}), or the special variant.
pub fn atypical_numerator(ctx: &AtypicalContext) -> Result<ZPoly> {
    let d = ctx.datum;
    let g = generate_group(d, Component::All)?;
    let eta = d.rho_shift(&ctx.lambda);
    let mut u = ZPoly::zero(d.rank0(), ctx.zctx());
    for w in &g.elements {
        let img = g.act_word(&w.word, &eta);
        let c = d
            .expand_pi0(&(&eta - &img))
            .ok_or_else(|| Error::Internal("orbit difference outside the span of Π0".into()))?;
        let m = c.iter().map(to_int).collect::<Result<Mono>>()?;
        let pre = ctx.prefactor(ctx.moved(&g, &w.word)?);
        u.add_term(m, pre.scale(&w.sign()));
    }
    Ok(u)
}

#[derive(Debug, Clone, PartialEq)]
pub enum FormTag {
    /// Direct expansion of -log U(λ).
    Oracle,
    /// Sum over k-partitions of Π0.
    PartitionSum,
    /// K times a ratio of (1+Z) factors.
    KRatio { k: Q },
    /// The G(3)/F(4) formulas, generic or special.
    MForm { special: bool },
    /// Σ_k A_k with pattern counts per k (index k-1).
    ASum { r2: Vec<BigInt>, r3: Vec<BigInt>, r4: Vec<BigInt>, equal_counts: bool },
}

#[derive(Debug, Clone)]
pub struct CoefficientValue {
    pub value: ZSeries,
    pub tag: FormTag,
    pub formula: String,
}

impl CoefficientValue {
    /// The value at a smaller truncation.
    pub fn at_truncation(&self, t: u32) -> Result<ZSeries> {
        if t > self.value.ctx.trunc {
            return Err(Error::TruncationTooSmall { requested: t, available: self.value.ctx.trunc });
        }
        Ok(self.value.truncated(t))
    }
}

fn normalized_numerator(ctx: &AtypicalContext) -> Result<ZPoly> {
    let u = atypical_numerator(ctx)?;
    let norm = ctx.normalizer();
    let mut p = ZPoly::zero(u.nvars, u.ctx);
    for (m, c) in &u.terms {
        p.add_term(m.clone(), c.mul(&norm));
    }
    Ok(p)
}

/// Coefficient of X^λ in -log U(λ) by expansion. Only monomials dividing
/// X^λ are kept during the expansion; with non-negative exponents this
/// does not change the coefficient of X^λ.
pub fn coefficient_oracle(ctx: &AtypicalContext) -> Result<CoefficientValue> {
    let target = ctx.target()?;
    let bound = crate::series::mono_degree(&target) as u32;
    let l = normalized_numerator(ctx)?.neg_log_capped(bound, Some(&target))?;
    Ok(CoefficientValue { value: l.coefficient_of(&target), tag: FormTag::Oracle, formula: "-log expansion".into() })
}

/// The same expansion with no divisibility pruning, truncated at total
/// degree deg X^λ + 1.
pub fn coefficient_oracle_unpruned(ctx: &AtypicalContext) -> Result<CoefficientValue> {
    let target = ctx.target()?;
    let bound = crate::series::mono_degree(&target) as u32 + 1;
    let l = normalized_numerator(ctx)?.neg_log(bound)?;
    Ok(CoefficientValue { value: l.coefficient_of(&target), tag: FormTag::Oracle, formula: "-log expansion".into() })
}

fn partitions_of_pi0(d: &RootDatum) -> Result<(SimpleGraph, Vec<Vec<Vec<usize>>>)> {
    let g = SimpleGraph::of_pi0(d);
    let all = enumerate_k_partitions(&g, 0)?;
    Ok((g, all))
}

fn block_word(g: &SimpleGraph, block: &[usize]) -> Vec<usize> {
    block.iter().flat_map(|&v| g.vertices[v].iter().copied()).collect()
}

fn sign_q(odd: bool) -> Q {
    if odd {
        q(-1)
    } else {
        q(1)
    }
}

/// (-1)^{|Π0|} Σ_k (-1)^k/k Σ_{k-partitions J} Π_i h(w(J_i)β).
pub fn partition_route(ctx: &AtypicalContext) -> Result<CoefficientValue> {
    let d = ctx.datum;
    let w = generate_group(d, Component::All)?;
    let (g, parts) = partitions_of_pi0(d)?;
    let mut acc = ZSeries::zero(ctx.zctx());
    for p in &parts {
        let k = p.len();
        let mut term = ZSeries::one(ctx.zctx());
        for block in p {
            term = term.mul(&ctx.block_factor(ctx.moved(&w, &block_word(&g, block))?));
        }
        let c = sign_q((k + d.rank0()) % 2 == 1) / Q::from_integer(BigInt::from(k));
        acc.add_assign(&term.scale(&c));
    }
    Ok(CoefficientValue { value: acc, tag: FormTag::PartitionSum, formula: "sum over k-partitions of Pi0".into() })
}

fn unit(d: &RootDatum, parts: &[(usize, i64)]) -> Weight {
    let mut w = Weight::zero(d.ambient_dim());
    for &(i, c) in parts {
        w.0[i] += q(c);
    }
    w
}

fn odd(d: &RootDatum, parts: &[(usize, i64)]) -> Result<usize> {
    d.odd_index(&unit(d, parts)).ok_or_else(|| Error::Internal("expected odd root missing".into()))
}

fn z(d: &RootDatum, i: usize) -> String {
    format!("Z[{}]", d.odd_name(i))
}

/// K(1+Z_b)/(1+Z_c), or K(1+Z_b)^2/((1+Z_c)(1+Z_e)).
fn k_ratio(ctx: &AtypicalContext, k: &Q, b: usize, below: &[usize]) -> (ZSeries, String) {
    let d = ctx.datum;
    let mut v = ZSeries::constant(ctx.zctx(), k.clone());
    for _ in below {
        v = v.mul(&ctx.one_plus(b));
    }
    for &c in below {
        v = v.mul(&ctx.inv_one_plus(c));
    }
    let num = if below.len() == 1 { format!("(1+{})", z(d, b)) } else { format!("(1+{})^2", z(d, b)) };
    let den: Vec<String> = below.iter().map(|&c| format!("(1+{})", z(d, c))).collect();
    (v, format!("K*{}/({}) with K = {}", num, den.join("*"), crate::fmt_q(k)))
}

fn sl_n1_closed(ctx: &AtypicalContext, mm: usize) -> Result<CoefficientValue> {
    let d = ctx.datum;
    let k = k_partition_counts(&SimpleGraph::of_pi0(d))?.k_value;
    let beta = |t: usize| odd(d, &[(t - 1, 1), (mm, -1)]);
    let t = (1..=mm)
        .find(|&t| beta(t).ok() == Some(ctx.gamma))
        .ok_or_else(|| Error::Internal("type not of the form eps_t - delta_1".into()))?;
    let below = if t == 1 {
        vec![beta(2)?]
    } else if t == mm {
        vec![beta(mm - 1)?]
    } else {
        vec![beta(t - 1)?, beta(t + 1)?]
    };
    let (value, formula) = k_ratio(ctx, &k, ctx.gamma, &below);
    Ok(CoefficientValue { value, tag: FormTag::KRatio { k }, formula })
}

fn osp2_closed(ctx: &AtypicalContext, n: usize) -> Result<CoefficientValue> {
    let d = ctx.datum;
    let k = k_partition_counts(&SimpleGraph::of_pi0(d))?.k_value;
    // basis (eps1, delta_1..delta_n); gamma_p = eps1 + delta_p, gamma'_p = eps1 - delta_p
    let gp = |p: usize| odd(d, &[(0, 1), (p, 1)]);
    let gm = |p: usize| odd(d, &[(0, 1), (p, -1)]);
    let mut found = None;
    for p in 1..=n {
        if gp(p)? == ctx.gamma {
            found = Some((p, true));
        }
        if gm(p)? == ctx.gamma {
            found = Some((p, false));
        }
    }
    let (p, plus) = found.ok_or_else(|| Error::Internal("type not of the form eps1 +- delta_p".into()))?;
    // for gamma'_p the roles of the two families are exchanged
    let fam = |plus_side: bool, i: usize| if plus_side { gp(i) } else { gm(i) };
    let below = if p == 1 {
        vec![fam(plus, 2)?]
    } else if p == n {
        vec![fam(plus, n - 1)?, fam(!plus, n)?]
    } else {
        vec![fam(plus, p - 1)?, fam(plus, p + 1)?]
    };
    let (value, formula) = k_ratio(ctx, &k, ctx.gamma, &below);
    Ok(CoefficientValue { value, tag: FormTag::KRatio { k }, formula })
}

fn g3_closed(ctx: &AtypicalContext) -> Result<CoefficientValue> {
    let d = ctx.datum;
    let w = generate_group(d, Component::All)?;
    let b = ctx.gamma;
    let s1 = ctx.moved(&w, &[0])?;
    let s2 = ctx.moved(&w, &[1])?;
    let (value, formula) = if !ctx.special {
        let v = ctx.one_plus(b).pow(2).mul(&ctx.inv_one_plus(s1)).mul(&ctx.inv_one_plus(s2));
        (v, format!("(1+{b})^2/((1+{s1})(1+{s2}))", b = z(d, b), s1 = z(d, s1), s2 = z(d, s2)))
    } else {
        let v = ctx
            .m_factor()
            .pow(2)
            .mul(&ctx.two_plus(s1))
            .mul(&ctx.two_plus(s2))
            .mul(&ctx.inv_one_plus(s1))
            .mul(&ctx.inv_one_plus(s2));
        (
            v,
            format!(
                "M^2*(2+{s1})(2+{s2})/((1+{s1})(1+{s2})) with M = (1+{b})/(2+{b})",
                b = z(d, b),
                s1 = z(d, s1),
                s2 = z(d, s2)
            ),
        )
    };
    Ok(CoefficientValue { value, tag: FormTag::MForm { special: ctx.special }, formula })
}

fn f4_closed(ctx: &AtypicalContext) -> Result<CoefficientValue> {
    let d = ctx.datum;
    let w = generate_group(d, Component::All)?;
    let b = ctx.gamma;
    let s = [ctx.moved(&w, &[0])?, ctx.moved(&w, &[1])?, ctx.moved(&w, &[2])?];
    let s13 = ctx.moved(&w, &[0, 2])?;
    let (value, formula) = if !ctx.special {
        let mut t3 = ctx.one_plus(b).pow(3).scale(&q(2));
        for &i in &s {
            t3 = t3.mul(&ctx.inv_one_plus(i));
        }
        let t2 = ctx.one_plus(b).pow(2).mul(&ctx.inv_one_plus(s13)).mul(&ctx.inv_one_plus(s[1]));
        (
            t3.sub(&t2),
            format!(
                "2(1+{b})^3/((1+{a})(1+{c})(1+{e})) - (1+{b})^2/((1+{f})(1+{c}))",
                b = z(d, b),
                a = z(d, s[0]),
                c = z(d, s[1]),
                e = z(d, s[2]),
                f = z(d, s13)
            ),
        )
    } else {
        let m = ctx.m_factor();
        let mut t3 = m.pow(3).scale(&q(2));
        for &i in &s {
            t3 = t3.mul(&ctx.two_plus(i)).mul(&ctx.inv_one_plus(i));
        }
        let t2 = m
            .pow(2)
            .mul(&ctx.two_plus(s13))
            .mul(&ctx.inv_one_plus(s13))
            .mul(&ctx.two_plus(s[1]))
            .mul(&ctx.inv_one_plus(s[1]));
        (
            t3.sub(&t2),
            format!(
                "2M^3(2+{a})(2+{c})(2+{e})/((1+{a})(1+{c})(1+{e})) - M^2(2+{f})(2+{c})/((1+{f})(1+{c})) with M = (1+{b})/(2+{b})",
                b = z(d, b),
                a = z(d, s[0]),
                c = z(d, s[1]),
                e = z(d, s[2]),
                f = z(d, s13)
            ),
        )
    };
    Ok(CoefficientValue { value, tag: FormTag::MForm { special: ctx.special }, formula })
}

/// Occurrence pattern of B_{p,q} in a partition.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Pattern {
    F1,
    F2,
    G1,
    G2,
    G3,
    G4,
    H1,
}

/// Pattern of one partition given the blocks of α_{p-1}, α_p, β_{q-1}, β_q.
fn classify(a1: usize, a2: usize, b1: usize, b2: usize) -> Pattern {
    match (a1 == b1, a2 == b2, a1 == b2, a2 == b1) {
        (true, true, _, _) => Pattern::F1,
        (_, _, true, true) => Pattern::F2,
        (true, false, _, _) => Pattern::G1,
        (_, _, true, false) => Pattern::G2,
        (_, _, false, true) => Pattern::G3,
        (false, true, _, _) => Pattern::G4,
        _ => Pattern::H1,
    }
}

/// For sl(m+1,n+1): per pattern, the number of k-partitions of Π0 (index k-1).
pub fn pattern_counts(d: &RootDatum, p: usize, qq: usize) -> Result<BTreeMap<Pattern, Vec<BigInt>>> {
    let (m, n) = sl_shape(d)?;
    if !(2..=m).contains(&p) || !(2..=n).contains(&qq) {
        return Err(Error::IndexNotInterior { p, q: qq });
    }
    let (g, parts) = partitions_of_pi0(d)?;
    let vert = |pos: usize| g.vertices.iter().position(|v| v == &vec![pos]).expect("vertex");
    let (va1, va2) = (vert(alpha_pos(p - 1)), vert(alpha_pos(p)));
    let (vb1, vb2) = (vert(beta_pos(m, qq - 1)), vert(beta_pos(m, qq)));
    let size = g.len();
    let mut out: BTreeMap<Pattern, Vec<BigInt>> = BTreeMap::new();
    for pat in [Pattern::F1, Pattern::F2, Pattern::G1, Pattern::G2, Pattern::G3, Pattern::G4, Pattern::H1] {
        out.insert(pat, vec![BigInt::zero(); size]);
    }
    for part in &parts {
        let blk = |v: usize| part.iter().position(|b| b.contains(&v)).expect("covered");
        let pat = classify(blk(va1), blk(va2), blk(vb1), blk(vb2));
        out.get_mut(&pat).expect("pattern")[part.len() - 1] += 1;
    }
    Ok(out)
}

/// The table values f1, f2, g1..g4, h1 for the interior type γ_{p,q}.
pub fn pattern_values(ctx: &AtypicalContext, p: usize, qq: usize) -> Result<BTreeMap<Pattern, ZSeries>> {
    let d = ctx.datum;
    let (m, n) = sl_shape(d)?;
    if !(2..=m).contains(&p) || !(2..=n).contains(&qq) {
        return Err(Error::IndexNotInterior { p, q: qq });
    }
    let gam = |i: usize, j: usize| odd(d, &[(i - 1, 1), (m + 1 + j - 1, -1)]);
    let b = ctx.gamma;
    let ratio = |num_pow: u32, den: &[(usize, usize)]| -> Result<ZSeries> {
        let mut v = ctx.one_plus(b).pow(num_pow);
        for &(i, j) in den {
            v = v.mul(&ctx.inv_one_plus(gam(i, j)?));
        }
        Ok(v)
    };
    Ok(BTreeMap::from([
        (Pattern::F1, ratio(2, &[(p + 1, qq + 1), (p - 1, qq - 1)])?),
        (Pattern::F2, ratio(2, &[(p + 1, qq - 1), (p - 1, qq + 1)])?),
        (Pattern::G1, ratio(3, &[(p - 1, qq - 1), (p + 1, qq), (p, qq + 1)])?),
        (Pattern::G2, ratio(3, &[(p - 1, qq + 1), (p + 1, qq), (p, qq - 1)])?),
        (Pattern::G3, ratio(3, &[(p + 1, qq - 1), (p - 1, qq), (p, qq + 1)])?),
        (Pattern::G4, ratio(3, &[(p + 1, qq + 1), (p - 1, qq), (p, qq - 1)])?),
        (Pattern::H1, ratio(4, &[(p - 1, qq), (p, qq - 1), (p + 1, qq), (p, qq + 1)])?),
    ]))
}

fn sl_mn_closed(ctx: &AtypicalContext) -> Result<CoefficientValue> {
    let d = ctx.datum;
    let (m, n) = sl_shape(d)?;
    // gamma_ij = eps_i - delta_j, i in 1..=m+1, j in 1..=n+1
    let gam = |i: usize, j: usize| odd(d, &[(i - 1, 1), (m + 1 + j - 1, -1)]);
    let mut pq = None;
    for i in 1..=m + 1 {
        for j in 1..=n + 1 {
            if gam(i, j)? == ctx.gamma {
                pq = Some((i, j));
            }
        }
    }
    let (p, qq) = pq.ok_or_else(|| Error::Internal("type not of the form eps_p - delta_q".into()))?;
    if !(2..=m).contains(&p) || !(2..=n).contains(&qq) {
        let mut v = partition_route(ctx)?;
        v.formula = format!("boundary type ({p},{qq}): enumeration of k-partitions by pattern");
        return Ok(v);
    }
    let counts = pattern_counts(d, p, qq)?;
    let c = |pat: Pattern| counts[&pat].clone();
    let (r2, r3, r4) = (c(Pattern::F1), c(Pattern::G1), c(Pattern::H1));
    let equal_counts = c(Pattern::F2) == r2
        && [Pattern::G2, Pattern::G3, Pattern::G4].iter().all(|&x| c(x) == r3);
    let v = pattern_values(ctx, p, qq)?;
    let (f1, f2, g1, g2, g3, g4, h1) = (
        &v[&Pattern::F1],
        &v[&Pattern::F2],
        &v[&Pattern::G1],
        &v[&Pattern::G2],
        &v[&Pattern::G3],
        &v[&Pattern::G4],
        &v[&Pattern::H1],
    );
    let f = f1.add(f2);
    let g = g1.add(g2).add(g3).add(g4);
    let mut a = ZSeries::zero(ctx.zctx());
    for k in 2..=(m + n) {
        let sgn = sign_q((m + n + k) % 2 == 1) / Q::from_integer(BigInt::from(k));
        let term = f
            .scale(&Q::from_integer(r2[k - 1].clone()))
            .add(&g.scale(&Q::from_integer(r3[k - 1].clone())))
            .add(&h1.scale(&Q::from_integer(r4[k - 1].clone())));
        a.add_assign(&term.scale(&sgn));
    }
    let mut formula = String::new();
    let _ = write!(formula, "A = sum_k A_k for gamma_({p},{qq}); r2 = {:?}, r3 = {:?}, r4 = {:?}", r2, r3, r4);
    Ok(CoefficientValue { value: a, tag: FormTag::ASum { r2, r3, r4, equal_counts }, formula })
}

pub fn closed_form_coefficient(ctx: &AtypicalContext) -> Result<CoefficientValue> {
    match ctx.datum.family().clone() {
        Family::Sl { m, n: 1 } => sl_n1_closed(ctx, m),
        Family::Sl { .. } => sl_mn_closed(ctx),
        Family::Osp2 { n } => osp2_closed(ctx, n),
        Family::G3 => g3_closed(ctx),
        Family::F4 => f4_closed(ctx),
        other => Err(Error::UnsupportedCase(format!("no closed form for {other}"))),
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct F1Coefficient {
    /// r_k^{(2)} for k = 1..|Π0|.
    pub r2: Vec<BigInt>,
    /// c_k of the tree graph for k = 1..|G_{p,q}|.
    pub tree_counts: Vec<BigInt>,
    pub by_enumeration: Q,
    pub by_tree: Q,
}

/// The coefficient of f_1 in A: (-1)^{m+n} Σ_{k≥2} (-1)^k r_k^{(2)}/k,
/// from the pattern enumeration and from k(G_{p,q}).
pub fn coefficient_f1(d: &RootDatum, p: usize, qq: usize) -> Result<F1Coefficient> {
    let (m, n) = sl_shape(d)?;
    let tree = tree_graph_gpq(d, p, qq)?;
    let counts = pattern_counts(d, p, qq)?;
    let r2 = counts[&Pattern::F1].clone();
    let mut s = Q::zero();
    for (i, c) in r2.iter().enumerate() {
        let k = i + 1;
        if k < 2 {
            continue;
        }
        s += sign_q((m + n + k) % 2 == 1) * Q::new(c.clone(), BigInt::from(k));
    }
    let rep = k_partition_counts(&tree)?;
    Ok(F1Coefficient { r2, tree_counts: rep.counts, by_enumeration: s, by_tree: rep.k_value })
}

/// Compares products of atypical numerators of a fixed type γ and, when
/// they agree, pairs weights by their monomials X^ν.
pub fn atypical_match(
    d: &RootDatum,
    lhs: &[Weight],
    rhs: &[Weight],
    gamma: Option<usize>,
    special: bool,
    z_truncation: u32,
) -> Result<MatchReport> {
    let mut ctxs = Vec::new();
    for w in lhs.iter().chain(rhs) {
        ctxs.push(AtypicalContext::new(d, w.clone(), special, z_truncation)?);
    }
    let g = gamma.or_else(|| ctxs.first().map(|c| c.gamma));
    if ctxs.iter().any(|c| Some(c.gamma) != g) {
        return Err(Error::MixedAtypicalityTypes);
    }
    let zc = ZCtx { nz: d.positive_odd.len(), trunc: z_truncation };
    let product = |cs: &[AtypicalContext]| -> Result<ZPoly> {
        cs.iter().try_fold(ZPoly::one(d.rank0(), zc), |acc, c| acc.mul(&atypical_numerator(c)?))
    };
    let (lc, rc) = ctxs.split_at(lhs.len());
    let equal = product(lc)? == product(rc)?;
    let r_equals_s = lhs.len() == rhs.len();
    let mut rep = MatchReport {
        r_equals_s,
        pairing: vec![],
        sigma_hypothesis_holds: false,
        conclusion: Conclusion::ProductsUnequal,
        isomorphisms: vec![],
        peeling_order: vec![],
        highest_weight_sums_equal: None,
        notes: vec![format!("atypicality type {}", g.map(|i| d.odd_name(i)).unwrap_or_default())],
    };
    if !equal {
        return Ok(rep);
    }
    if !r_equals_s {
        return Err(Error::Internal("equal atypical products of different lengths".into()));
    }
    let sig = |c: &AtypicalContext| -> Result<Vec<i64>> { Ok(c.target()?.iter().map(|&e| e as i64).collect()) };
    let mut pool: BTreeMap<Vec<i64>, Vec<usize>> = BTreeMap::new();
    for (qi, c) in rc.iter().enumerate().rev() {
        pool.entry(sig(c)?).or_default().push(qi);
    }
    for (pi, c) in lc.iter().enumerate() {
        let s = sig(c)?;
        let qi = pool
            .get_mut(&s)
            .and_then(|v| v.pop())
            .ok_or_else(|| Error::Internal("equal atypical products with different monomials".into()))?;
        rep.pairing.push((
            FactorRef { side: Side::Lhs, index: pi, component: 1 },
            FactorRef { side: Side::Rhs, index: qi, component: 1 },
            s,
        ));
        rep.isomorphisms.push((pi, qi));
    }
    rep.sigma_hypothesis_holds = true;
    rep.conclusion = Conclusion::UniqueFactorization;
    Ok(rep)
}

/// Text of a coefficient for reports.
pub fn coefficient_text(d: &RootDatum, v: &ZSeries) -> String {
    let names = Names { x: vec![], z: (0..d.positive_odd.len()).map(|g| z(d, g)).collect() };
    v.to_text(&names)
}

/// All singly atypical dominant weights λ = Σ a_i ω_i + c·τ-direction
/// samples are produced by the sampling module; this helper lists the
/// Π0 positions moved by reflections, used in reports.
pub fn moving_reflections(ctx: &AtypicalContext) -> Result<BTreeSet<usize>> {
    let g = generate_group(ctx.datum, Component::All)?;
    let mut out = BTreeSet::new();
    for k in 0..ctx.datum.rank0() {
        if ctx.moved(&g, &[k])? != ctx.gamma {
            out.insert(k);
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sl21_numerator_and_sign() {
        let d = RootDatum::sl(2, 1);
        let ctx = AtypicalContext::new(&d, Weight::zero(3), false, 2).unwrap();
        // rho = -delta + ...; (rho, eps2 - delta1) = 0 for sl(2,1)
        assert_eq!(d.odd_name(ctx.gamma), "g2");
        let u = atypical_numerator(&ctx).unwrap();
        let names = crate::numerator::pi0_names(&d);
        assert_eq!(u.to_text(&names), "(1 - Z[g2] + Z[g2]^2) + (-1 + Z[g1] - Z[g1]^2)*X[a1]");
        let o = coefficient_oracle(&ctx).unwrap();
        // +(1+Z_b)/(1+Z_sb)
        let expect = ctx.one_plus(1).mul(&ctx.inv_one_plus(0));
        assert_eq!(o.value, expect);
        assert_eq!(closed_form_coefficient(&ctx).unwrap().value, expect);
    }

    #[test]
    fn zero_truncation_gives_k() {
        let d = RootDatum::sl(3, 1);
        let ctx = AtypicalContext::new(&d, Weight::zero(4), false, 0).unwrap();
        let o = coefficient_oracle(&ctx).unwrap();
        assert_eq!(o.value, ZSeries::constant(ctx.zctx(), q(1)));
    }

    #[test]
    fn pruning_is_exact() {
        let d = RootDatum::sl(3, 1);
        let ctx = AtypicalContext::new(&d, Weight::zero(4), false, 3).unwrap();
        assert_eq!(coefficient_oracle(&ctx).unwrap().value, coefficient_oracle_unpruned(&ctx).unwrap().value);
    }

    #[test]
    fn f1_both_routes() {
        let d = RootDatum::sl(4, 3);
        let f = coefficient_f1(&d, 2, 2).unwrap();
        assert_eq!(f.by_enumeration, q(1));
        assert_eq!(f.by_tree, q(1));
        for (k, c) in f.r2.iter().enumerate() {
            if k + 1 > 3 {
                assert!(c.is_zero());
            } else {
                assert_eq!(c, &f.tree_counts[k]);
            }
        }
    }

    #[test]
    fn rejects_bad_contexts() {
        let d = RootDatum::sl(3, 2);
        let mut typical = d.sum_positive_odd();
        for (i, c) in [1, 2, 3].into_iter().enumerate() {
            typical = &typical + &d.fundamental_weight(i + 1).unwrap().scale(&q(c));
        }
        assert!(d.is_typical(&typical));
        assert_eq!(
            AtypicalContext::new(&d, typical, false, 3).unwrap_err(),
            Error::NotSinglyAtypical { count: 0 }
        );
        assert!(matches!(
            AtypicalContext::new(&RootDatum::sl(2, 1), Weight::zero(3), true, 3),
            Err(Error::UnsupportedCase(_))
        ));
        assert!(matches!(AtypicalContext::new(&RootDatum::osp1(2), Weight::zero(2), false, 3), Err(Error::WrongFamily(_))));
    }
}
