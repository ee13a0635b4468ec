//! Sparse exact polynomials and truncated power series.
//!
//! `Poly<C>` has monomials in the X variables (one per simple root) and
//! coefficients in a ring `C`: either plain rationals or [`ZSeries`], the
//! truncated power series in the odd-root symbols Z.

use std::cmp::Ordering;
use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt::Debug;

use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::root_datum::RootDatum;
use crate::{fmt_q, q, Q};

/// Dense exponent vector over the X variables.
pub type Mono = Vec<i32>;

pub fn mono_degree(m: &[i32]) -> i64 {
    m.iter().map(|&e| e as i64).sum()
}

/// Canonical term order: compare the last variable first, ascending.
pub fn colex_cmp<T: Ord>(a: &[T], b: &[T]) -> Ordering {
    for i in (0..a.len().max(b.len())).rev() {
        let o = a.get(i).cmp(&b.get(i));
        if o != Ordering::Equal {
            return o;
        }
    }
    Ordering::Equal
}

/// Printed form of a coefficient.
pub enum Rendered {
    Scalar(Q),
    Compound(String),
}

/// Variable names used when printing.
#[derive(Debug, Clone, Default)]
pub struct Names {
    pub x: Vec<String>,
    pub z: Vec<String>,
}

impl Names {
    pub fn for_datum(d: &RootDatum) -> Names {
        Names {
            x: (0..d.simple.len()).map(|s| format!("X[{}]", d.simple_name(s))).collect(),
            z: (0..d.positive_odd.len()).map(|g| format!("Z[{}]", d.odd_name(g))).collect(),
        }
    }
}

pub trait Coeff: Clone + PartialEq + Debug + Send + Sync {
    type Ctx: Clone + PartialEq + Debug + Send + Sync;
    fn ctx(&self) -> Self::Ctx;
    fn meet(a: &Self::Ctx, b: &Self::Ctx) -> Result<Self::Ctx>;
    fn zero_of(ctx: &Self::Ctx) -> Self;
    fn from_q(ctx: &Self::Ctx, c: Q) -> Self;
    fn vanishes(&self) -> bool;
    fn add_assign(&mut self, o: &Self);
    fn mul(&self, o: &Self) -> Self;
    fn neg(&self) -> Self;
    fn scale(&self, c: &Q) -> Self;
    fn render(&self, names: &Names) -> Rendered;
}

impl Coeff for Q {
    type Ctx = ();
    fn ctx(&self) {}
    fn meet(_: &(), _: &()) -> Result<()> {
        Ok(())
    }
    fn zero_of(_: &()) -> Q {
        Q::zero()
    }
    fn from_q(_: &(), c: Q) -> Q {
        c
    }
    fn vanishes(&self) -> bool {
        Zero::is_zero(self)
    }
    fn add_assign(&mut self, o: &Q) {
        *self += o;
    }
    fn mul(&self, o: &Q) -> Q {
        self * o
    }
    fn neg(&self) -> Q {
        -self
    }
    fn scale(&self, c: &Q) -> Q {
        self * c
    }
    fn render(&self, _: &Names) -> Rendered {
        Rendered::Scalar(self.clone())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct ZCtx {
    pub nz: usize,
    pub trunc: u32,
}

/// Truncated power series in commuting symbols Z_0..Z_{nz-1}; all terms
/// have total degree at most `trunc`.
#[derive(Debug, Clone)]
pub struct ZSeries {
    pub ctx: ZCtx,
    pub terms: BTreeMap<Vec<u16>, Q>,
}

impl PartialEq for ZSeries {
    fn eq(&self, o: &Self) -> bool {
        self.ctx.nz == o.ctx.nz && self.terms == o.terms
    }
}

fn zdeg(e: &[u16]) -> u32 {
    e.iter().map(|&x| x as u32).sum()
}

impl ZSeries {
    pub fn zero(ctx: ZCtx) -> Self {
        ZSeries { ctx, terms: BTreeMap::new() }
    }

    pub fn constant(ctx: ZCtx, c: Q) -> Self {
        let mut s = Self::zero(ctx);
        if !c.is_zero() {
            s.terms.insert(vec![0; ctx.nz], c);
        }
        s
    }

    pub fn one(ctx: ZCtx) -> Self {
        Self::constant(ctx, q(1))
    }

    /// c * Z_i^k
    pub fn term(ctx: ZCtx, i: usize, k: u16, c: Q) -> Self {
        let mut s = Self::zero(ctx);
        if (k as u32) <= ctx.trunc && !c.is_zero() {
            let mut e = vec![0; ctx.nz];
            e[i] = k;
            s.terms.insert(e, c);
        }
        s
    }

    pub fn var(ctx: ZCtx, i: usize) -> Self {
        Self::term(ctx, i, 1, q(1))
    }

    /// a + b Z_i
    pub fn linear(ctx: ZCtx, a: Q, b: Q, i: usize) -> Self {
        let mut s = Self::constant(ctx, a);
        s.add_assign(&Self::term(ctx, i, 1, b));
        s
    }

    /// 1/(a + b Z_i) expanded as a geometric series; `a` must be nonzero.
    pub fn inv_linear(ctx: ZCtx, a: Q, b: Q, i: usize) -> Self {
        let mut s = Self::zero(ctx);
        let r = -(&b / &a);
        let mut c = a.recip();
        for k in 0..=ctx.trunc {
            s.add_assign(&Self::term(ctx, i, k as u16, c.clone()));
            c *= &r;
        }
        s
    }

    /// 1 + Z_i
    pub fn one_plus(ctx: ZCtx, i: usize) -> Self {
        Self::linear(ctx, q(1), q(1), i)
    }

    /// 1/(1 + Z_i)
    pub fn inv_one_plus(ctx: ZCtx, i: usize) -> Self {
        Self::inv_linear(ctx, q(1), q(1), i)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn constant_term(&self) -> Q {
        self.terms.get(&vec![0; self.ctx.nz]).cloned().unwrap_or_else(Q::zero)
    }

    pub fn add(&self, o: &Self) -> Self {
        let mut s = self.clone();
        s.add_assign(o);
        s.ctx.trunc = self.ctx.trunc.min(o.ctx.trunc);
        s.retruncate();
        s
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.neg())
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut r = Self::one(self.ctx);
        for _ in 0..k {
            r = r.mul(self);
        }
        r
    }

    fn retruncate(&mut self) {
        let t = self.ctx.trunc;
        self.terms.retain(|e, c| zdeg(e) <= t && !c.is_zero());
    }

    /// Restricts to a smaller truncation.
    pub fn truncated(&self, t: u32) -> Self {
        let mut s = self.clone();
        s.ctx.trunc = t.min(self.ctx.trunc);
        s.retruncate();
        s
    }

    pub fn to_text(&self, names: &Names) -> String {
        let mut terms: Vec<(&Vec<u16>, &Q)> = self.terms.iter().collect();
        terms.sort_by(|a, b| colex_cmp(a.0, b.0));
        let items: Vec<(Q, String)> = terms
            .into_iter()
            .map(|(e, c)| {
                let m: Vec<i32> = e.iter().map(|&x| x as i32).collect();
                (c.clone(), mono_text(&m, &names.z))
            })
            .collect();
        join_terms(items.into_iter().map(|(c, m)| (Rendered::Scalar(c), m)))
    }
}

impl Coeff for ZSeries {
    type Ctx = ZCtx;
    fn ctx(&self) -> ZCtx {
        self.ctx
    }
    fn meet(a: &ZCtx, b: &ZCtx) -> Result<ZCtx> {
        if a.nz != b.nz {
            return Err(Error::RingMismatch);
        }
        Ok(ZCtx { nz: a.nz, trunc: a.trunc.min(b.trunc) })
    }
    fn zero_of(ctx: &ZCtx) -> Self {
        ZSeries::zero(*ctx)
    }
    fn from_q(ctx: &ZCtx, c: Q) -> Self {
        ZSeries::constant(*ctx, c)
    }
    fn vanishes(&self) -> bool {
        self.terms.is_empty()
    }
    fn add_assign(&mut self, o: &Self) {
        for (e, c) in &o.terms {
            if zdeg(e) > self.ctx.trunc {
                continue;
            }
            match self.terms.get_mut(e) {
                Some(x) => {
                    *x += c;
                    if x.is_zero() {
                        self.terms.remove(e);
                    }
                }
                None => {
                    self.terms.insert(e.clone(), c.clone());
                }
            }
        }
    }
    fn mul(&self, o: &Self) -> Self {
        let t = self.ctx.trunc.min(o.ctx.trunc);
        let ctx = ZCtx { nz: self.ctx.nz, trunc: t };
        let mut out: BTreeMap<Vec<u16>, Q> = BTreeMap::new();
        for (ea, ca) in &self.terms {
            let da = zdeg(ea);
            if da > t {
                continue;
            }
            for (eb, cb) in &o.terms {
                if da + zdeg(eb) > t {
                    continue;
                }
                let e: Vec<u16> = ea.iter().zip(eb).map(|(x, y)| x + y).collect();
                *out.entry(e).or_insert_with(Q::zero) += ca * cb;
            }
        }
        out.retain(|_, c| !c.is_zero());
        ZSeries { ctx, terms: out }
    }
    fn neg(&self) -> Self {
        ZSeries { ctx: self.ctx, terms: self.terms.iter().map(|(e, c)| (e.clone(), -c)).collect() }
    }
    fn scale(&self, c: &Q) -> Self {
        if c.is_zero() {
            return ZSeries::zero(self.ctx);
        }
        ZSeries { ctx: self.ctx, terms: self.terms.iter().map(|(e, x)| (e.clone(), x * c)).collect() }
    }
    fn render(&self, names: &Names) -> Rendered {
        if self.terms.len() == 1 {
            if let Some(c) = self.terms.get(&vec![0; self.ctx.nz]) {
                return Rendered::Scalar(c.clone());
            }
        }
        Rendered::Compound(self.to_text(names))
    }
}

fn mono_text(m: &[i32], names: &[String]) -> String {
    m.iter()
        .enumerate()
        .filter(|(_, &e)| e != 0)
        .map(|(i, &e)| {
            let n = names.get(i).cloned().unwrap_or_else(|| format!("v{i}"));
            if e == 1 {
                n
            } else {
                format!("{n}^{e}")
            }
        })
        .collect::<Vec<_>>()
        .join("*")
}

fn join_terms(items: impl Iterator<Item = (Rendered, String)>) -> String {
    let mut out = String::new();
    for (c, m) in items {
        let (neg, body) = match c {
            Rendered::Scalar(c) => {
                let neg = c.is_negative();
                let a = c.abs();
                let body = if m.is_empty() {
                    fmt_q(&a)
                } else if a.is_one() {
                    m
                } else {
                    format!("{}*{}", fmt_q(&a), m)
                };
                (neg, body)
            }
            Rendered::Compound(s) => {
                let body = if m.is_empty() { format!("({s})") } else { format!("({s})*{m}") };
                (false, body)
            }
        };
        if out.is_empty() {
            if neg {
                out.push('-');
            }
        } else {
            out.push_str(if neg { " - " } else { " + " });
        }
        out.push_str(&body);
    }
    if out.is_empty() {
        "0".into()
    } else {
        out
    }
}

#[derive(Debug, Clone)]
pub struct Poly<C: Coeff> {
    pub nvars: usize,
    pub ctx: C::Ctx,
    pub terms: HashMap<Mono, C>,
    pub x_truncation: Option<u32>,
}

pub type QPoly = Poly<Q>;
pub type ZPoly = Poly<ZSeries>;

impl<C: Coeff> PartialEq for Poly<C> {
    fn eq(&self, o: &Self) -> bool {
        self.nvars == o.nvars && self.terms == o.terms
    }
}

impl<C: Coeff> Poly<C> {
    pub fn zero(nvars: usize, ctx: C::Ctx) -> Self {
        Poly { nvars, ctx, terms: HashMap::new(), x_truncation: None }
    }

    pub fn constant(nvars: usize, c: C) -> Self {
        let mut p = Self::zero(nvars, c.ctx());
        p.add_term(vec![0; nvars], c);
        p
    }

    pub fn one(nvars: usize, ctx: C::Ctx) -> Self {
        let c = C::from_q(&ctx, q(1));
        Self::constant(nvars, c)
    }

    pub fn monomial(m: Mono, c: C) -> Self {
        let mut p = Self::zero(m.len(), c.ctx());
        p.add_term(m, c);
        p
    }

    pub fn with_truncation(mut self, bound: Option<u32>) -> Self {
        self.x_truncation = match (self.x_truncation, bound) {
            (Some(a), Some(b)) => Some(a.min(b)),
            (a, b) => a.or(b),
        };
        if let Some(t) = self.x_truncation {
            self.terms.retain(|m, _| mono_degree(m) <= t as i64);
        }
        self
    }

    pub fn add_term(&mut self, m: Mono, c: C) {
        if c.vanishes() {
            return;
        }
        if let Some(t) = self.x_truncation {
            if mono_degree(&m) > t as i64 {
                return;
            }
        }
        match self.terms.get_mut(&m) {
            Some(x) => {
                x.add_assign(&c);
                if x.vanishes() {
                    self.terms.remove(&m);
                }
            }
            None => {
                self.terms.insert(m, c);
            }
        }
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    fn check(&self, o: &Self) -> Result<C::Ctx> {
        if self.nvars != o.nvars {
            return Err(Error::RingMismatch);
        }
        C::meet(&self.ctx, &o.ctx)
    }

    fn min_trunc(&self, o: &Self) -> Option<u32> {
        match (self.x_truncation, o.x_truncation) {
            (Some(a), Some(b)) => Some(a.min(b)),
            (a, b) => a.or(b),
        }
    }

    pub fn add(&self, o: &Self) -> Result<Self> {
        let ctx = self.check(o)?;
        let mut p = Poly { nvars: self.nvars, ctx, terms: HashMap::new(), x_truncation: self.min_trunc(o) };
        for (m, c) in self.terms.iter().chain(o.terms.iter()) {
            p.add_term(m.clone(), c.clone());
        }
        Ok(p)
    }

    pub fn neg(&self) -> Self {
        Poly {
            nvars: self.nvars,
            ctx: self.ctx.clone(),
            terms: self.terms.iter().map(|(m, c)| (m.clone(), c.neg())).collect(),
            x_truncation: self.x_truncation,
        }
    }

    pub fn sub(&self, o: &Self) -> Result<Self> {
        self.add(&o.neg())
    }

    pub fn scale(&self, c: &Q) -> Self {
        let mut p = Self::zero(self.nvars, self.ctx.clone());
        p.x_truncation = self.x_truncation;
        for (m, x) in &self.terms {
            p.add_term(m.clone(), x.scale(c));
        }
        p
    }

    /// Exact product, truncated to the smaller X bound when one is set.
    pub fn mul(&self, o: &Self) -> Result<Self> {
        self.mul_filtered(o, None)
    }

    fn mul_filtered(&self, o: &Self, cap: Option<&[i32]>) -> Result<Self> {
        let ctx = self.check(o)?;
        let t = self.min_trunc(o);
        let mut out: HashMap<Mono, C> = HashMap::new();
        for (ma, ca) in &self.terms {
            let da = mono_degree(ma);
            for (mb, cb) in &o.terms {
                if let Some(t) = t {
                    if da + mono_degree(mb) > t as i64 {
                        continue;
                    }
                }
                let m: Mono = ma.iter().zip(mb).map(|(x, y)| x + y).collect();
                if let Some(cap) = cap {
                    if m.iter().zip(cap).any(|(e, c)| e > c) {
                        continue;
                    }
                }
                let c = ca.mul(cb);
                match out.get_mut(&m) {
                    Some(x) => x.add_assign(&c),
                    None => {
                        out.insert(m, c);
                    }
                }
            }
        }
        out.retain(|_, c| !c.vanishes());
        Ok(Poly { nvars: self.nvars, ctx, terms: out, x_truncation: t })
    }

    pub fn constant_term(&self) -> C {
        self.coefficient_of(&vec![0; self.nvars])
    }

    pub fn coefficient_of(&self, m: &[i32]) -> C {
        self.terms.get(m).cloned().unwrap_or_else(|| C::zero_of(&self.ctx))
    }

    /// Terms whose support is exactly `set`.
    pub fn theta(&self, set: &BTreeSet<usize>) -> Self {
        let mut p = Self::zero(self.nvars, self.ctx.clone());
        p.x_truncation = self.x_truncation;
        for (m, c) in &self.terms {
            let supp: BTreeSet<usize> = (0..m.len()).filter(|&i| m[i] != 0).collect();
            if &supp == set {
                p.terms.insert(m.clone(), c.clone());
            }
        }
        p
    }

    /// Keeps only monomials dividing `cap` (a monomial ideal truncation).
    pub fn retain_dividing(&mut self, cap: &[i32]) {
        self.terms.retain(|m, _| m.iter().zip(cap).all(|(e, c)| e <= c));
    }

    /// -log p = sum_{k>=1} (1-p)^k / k, truncated at total degree `bound`.
    pub fn neg_log(&self, bound: u32) -> Result<Self> {
        self.neg_log_capped(bound, None)
    }

    /// As [`Poly::neg_log`], additionally discarding monomials that do not
    /// divide `cap`. Coefficients of divisors of `cap` are unchanged.
    pub fn neg_log_capped(&self, bound: u32, cap: Option<&[i32]>) -> Result<Self> {
        let one = C::from_q(&self.ctx, q(1));
        if self.constant_term() != one {
            return Err(Error::ConstantTermNotOne);
        }
        if self.terms.keys().any(|m| m.iter().any(|&e| e < 0)) {
            return Err(Error::Internal("neg_log needs non-negative exponents".into()));
        }
        let mut base = Poly::one(self.nvars, self.ctx.clone()).sub(self)?;
        base = base.with_truncation(Some(bound));
        if let Some(cap) = cap {
            base.retain_dividing(cap);
        }
        let mut acc = Poly::zero(self.nvars, self.ctx.clone()).with_truncation(Some(bound));
        let mut power = base.clone();
        for k in 1..=bound {
            if power.is_zero() {
                break;
            }
            let kk = Q::from_integer(k.into());
            for (m, c) in &power.terms {
                acc.add_term(m.clone(), c.scale(&kk.recip()));
            }
            if k < bound {
                power = power.mul_filtered(&base, cap)?;
            }
        }
        acc.x_truncation = Some(bound);
        Ok(acc)
    }

    /// Terms in canonical order.
    pub fn sorted_terms(&self) -> Vec<(&Mono, &C)> {
        let mut v: Vec<(&Mono, &C)> = self.terms.iter().collect();
        v.sort_by(|a, b| colex_cmp(a.0, b.0));
        v
    }

    pub fn to_text(&self, names: &Names) -> String {
        join_terms(self.sorted_terms().into_iter().map(|(m, c)| (c.render(names), mono_text(m, &names.x))))
    }

    pub fn max_degree(&self) -> i64 {
        self.terms.keys().map(|m| mono_degree(m)).max().unwrap_or(0)
    }

    pub fn min_degree(&self) -> Option<i64> {
        self.terms.keys().map(|m| mono_degree(m)).min()
    }
}

impl Poly<ZSeries> {
    /// Sets every Z to zero.
    pub fn specialize_z(&self) -> QPoly {
        let mut p = QPoly::zero(self.nvars, ());
        for (m, c) in &self.terms {
            p.add_term(m.clone(), c.constant_term());
        }
        p
    }

    /// Restricts every coefficient to a smaller Z truncation.
    pub fn z_truncated(&self, t: u32) -> Self {
        let ctx = ZCtx { nz: self.ctx.nz, trunc: t.min(self.ctx.trunc) };
        let mut p = Poly::zero(self.nvars, ctx);
        p.x_truncation = self.x_truncation;
        for (m, c) in &self.terms {
            p.add_term(m.clone(), c.truncated(t));
        }
        p
    }
}

/// Substitutes each Z_g by the X-monomial of the odd root g over all simple
/// roots. Used only to cross-check, since the symbols are independent.
/// Inputs over the Π0 variables are first embedded into the simple-root
/// variables.
pub fn collapse(p: &ZPoly, datum: &RootDatum) -> Result<QPoly> {
    let n = datum.simple.len();
    let embed: Vec<usize> = if p.nvars == n {
        (0..n).collect()
    } else if p.nvars == datum.rank0() {
        datum.pi0.clone()
    } else {
        return Err(Error::RingMismatch);
    };
    if p.ctx.nz != datum.positive_odd.len() {
        return Err(Error::RingMismatch);
    }
    let mut images = Vec::new();
    for r in &datum.positive_odd {
        let c = datum.expand_simple(&r.weight).ok_or(Error::NegativeExponentAfterCollapse)?;
        let m: Option<Mono> = c
            .iter()
            .map(|x| if x.is_integer() && !x.is_negative() { x.to_integer().try_into().ok() } else { None })
            .collect();
        images.push(m.ok_or(Error::NegativeExponentAfterCollapse)?);
    }
    let mut out = QPoly::zero(n, ());
    for (m, c) in &p.terms {
        let mut base = vec![0; n];
        for (k, &e) in m.iter().enumerate() {
            base[embed[k]] = e;
        }
        for (e, x) in &c.terms {
            let mut mm = base.clone();
            for (g, &k) in e.iter().enumerate() {
                for (t, img) in mm.iter_mut().zip(&images[g]) {
                    *t += k as i32 * img;
                }
            }
            if mm.iter().any(|&v| v < 0) {
                return Err(Error::NegativeExponentAfterCollapse);
            }
            out.add_term(mm, x.clone());
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qf;

    fn x(nv: usize, i: usize, e: i32) -> QPoly {
        let mut m = vec![0; nv];
        m[i] = e;
        QPoly::monomial(m, q(1))
    }

    fn names2() -> Names {
        Names { x: vec!["X[a1]".into(), "X[a2]".into(), "X[a3]".into()], z: vec!["Z[g1]".into(), "Z[g2]".into()] }
    }

    #[test]
    fn difference_of_squares() {
        let one = QPoly::one(1, ());
        let a = one.sub(&x(1, 0, 1)).unwrap();
        let b = one.add(&x(1, 0, 1)).unwrap();
        assert_eq!(a.mul(&b).unwrap(), one.sub(&x(1, 0, 2)).unwrap());
        assert_eq!(a.mul(&one).unwrap(), a);
    }

    #[test]
    fn neg_log_of_one_minus_x() {
        let p = QPoly::one(1, ()).sub(&x(1, 0, 1)).unwrap();
        let l = p.neg_log(3).unwrap();
        let mut expect = x(1, 0, 1);
        expect = expect.add(&x(1, 0, 2).scale(&qf(1, 2))).unwrap();
        expect = expect.add(&x(1, 0, 3).scale(&qf(1, 3))).unwrap();
        assert_eq!(l, expect);
        assert!(QPoly::one(2, ()).neg_log(5).unwrap().is_zero());
        assert_eq!(x(1, 0, 1).neg_log(2).unwrap_err(), Error::ConstantTermNotOne);
    }

    #[test]
    fn theta_projection() {
        let p = x(3, 0, 2).mul(&x(3, 1, 1)).unwrap().add(&x(3, 0, 3)).unwrap().add(&x(3, 2, 1)).unwrap();
        let t = p.theta(&[0, 1].into_iter().collect());
        assert_eq!(t, x(3, 0, 2).mul(&x(3, 1, 1)).unwrap());
        let c = QPoly::one(3, ()).add(&p).unwrap().theta(&BTreeSet::new());
        assert_eq!(c, QPoly::one(3, ()));
    }

    #[test]
    fn canonical_text_matches_display_order() {
        let mk = |a: i32, b: i32, c: i64| QPoly::monomial(vec![a, b, 0], q(c));
        let mut p = QPoly::zero(3, ());
        for t in [mk(0, 0, 1), mk(2, 0, -1), mk(0, 3, -1), mk(5, 3, 1), mk(2, 5, 1), mk(5, 5, -1)] {
            p = p.add(&t).unwrap();
        }
        assert_eq!(
            p.to_text(&names2()),
            "1 - X[a1]^2 - X[a2]^3 + X[a1]^5*X[a2]^3 + X[a1]^2*X[a2]^5 - X[a1]^5*X[a2]^5"
        );
        assert_eq!(QPoly::zero(2, ()).to_text(&names2()), "0");
        assert_eq!(QPoly::monomial(vec![1, 0, 0], qf(-1, 2)).to_text(&names2()), "-1/2*X[a1]");
    }

    #[test]
    fn geometric_inverse() {
        let ctx = ZCtx { nz: 2, trunc: 3 };
        let inv = ZSeries::inv_one_plus(ctx, 0);
        let prod = inv.mul(&ZSeries::one_plus(ctx, 0));
        assert_eq!(prod, ZSeries::one(ctx));
        assert_eq!(inv.to_text(&names2()), "1 - Z[g1] + Z[g1]^2 - Z[g1]^3");
        let half = ZSeries::inv_linear(ctx, q(2), q(1), 1).mul(&ZSeries::linear(ctx, q(2), q(1), 1));
        assert_eq!(half, ZSeries::one(ctx));
    }

    #[test]
    fn ring_mismatch() {
        let a = QPoly::one(2, ());
        let b = QPoly::one(3, ());
        assert_eq!(a.mul(&b).unwrap_err(), Error::RingMismatch);
        let za = ZPoly::one(1, ZCtx { nz: 2, trunc: 3 });
        let zb = ZPoly::one(1, ZCtx { nz: 3, trunc: 3 });
        assert_eq!(za.mul(&zb).unwrap_err(), Error::RingMismatch);
    }

    #[test]
    fn collapse_sl21() {
        let d = RootDatum::sl(2, 1);
        let ctx = ZCtx { nz: 2, trunc: 3 };
        // simple order: a1, b1
        let z1 = ZPoly::constant(2, ZSeries::var(ctx, 0));
        let z2 = ZPoly::constant(2, ZSeries::var(ctx, 1));
        assert_eq!(collapse(&z1, &d).unwrap(), QPoly::monomial(vec![1, 1], q(1)));
        assert_eq!(collapse(&z2, &d).unwrap(), QPoly::monomial(vec![0, 1], q(1)));
        assert_eq!(collapse(&ZPoly::one(2, ctx), &d).unwrap(), QPoly::one(2, ()));
        // one Π0 variable, embedded as a1
        let xz = ZPoly::monomial(vec![1], ZSeries::var(ctx, 0));
        assert_eq!(collapse(&xz, &d).unwrap(), QPoly::monomial(vec![2, 1], q(1)));
        assert_eq!(collapse(&ZPoly::one(3, ctx), &d).unwrap_err(), Error::RingMismatch);
    }
}
