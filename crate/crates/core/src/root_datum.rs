//! Root data: invariant form, positive systems, Weyl vector, typicality.

use std::collections::HashMap;
use std::fmt;
use std::ops::{Add, Neg, Sub};
use std::sync::Arc;

use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::linalg::{self, Expander};
use crate::weyl::GroupCache;
use crate::{q, qf, Q};

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Family {
    /// sl(m,n), i.e. A(m-1,n-1): `m` epsilons, `n` deltas.
    Sl { m: usize, n: usize },
    /// osp(1,2n) = B(0,n)
    Osp1 { n: usize },
    /// osp(2,2n) = C(n+1)
    Osp2 { n: usize },
    G3,
    F4,
    Custom(String),
}

impl Family {
    pub fn is_type_one(&self) -> bool {
        matches!(self, Family::Sl { .. } | Family::Osp2 { .. })
    }

    /// Parses the command-line family name.
    pub fn from_cli(name: &str, m: Option<usize>, n: Option<usize>) -> Result<Family> {
        let need = |x: Option<usize>, what: &str| {
            x.ok_or_else(|| Error::UnsupportedFamily(format!("{name} needs --{what}")))
        };
        match name.to_ascii_lowercase().as_str() {
            "sl" | "a" => Ok(Family::Sl { m: need(m, "m")?, n: need(n, "n")? }),
            "osp1" | "b" | "b0n" => Ok(Family::Osp1 { n: need(n, "n")? }),
            "osp2" | "c" => Ok(Family::Osp2 { n: need(n, "n")? }),
            "g3" | "g" => Ok(Family::G3),
            "f4" | "f" => Ok(Family::F4),
            other => Err(Error::UnsupportedFamily(other.to_string())),
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Family::Sl { m, n } => write!(f, "sl({m},{n})"),
            Family::Osp1 { n } => write!(f, "osp(1,{})", 2 * n),
            Family::Osp2 { n } => write!(f, "osp(2,{})", 2 * n),
            Family::G3 => write!(f, "G(3)"),
            Family::F4 => write!(f, "F(4)"),
            Family::Custom(s) => write!(f, "custom({s})"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Source {
    BuiltIn,
    File(String),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AlgebraDescriptor {
    pub family: Family,
    pub source: Source,
}

impl AlgebraDescriptor {
    pub fn builtin(family: Family) -> Self {
        AlgebraDescriptor { family, source: Source::BuiltIn }
    }

    pub fn validate(&self) -> Result<()> {
        let bad = |s: &str| Err(Error::UnsupportedFamily(s.to_string()));
        match self.family {
            Family::Sl { m, n } => {
                if m == 2 && n == 2 {
                    return bad("sl(2,2) = A(1,1) is excluded");
                }
                if m == 0 || n == 0 || m + n < 3 {
                    return bad("sl(m,n) needs m,n >= 1 and m+n >= 3");
                }
            }
            Family::Osp1 { n } if n < 2 => return bad("osp(1,2n) needs n >= 2"),
            Family::Osp2 { n } if n < 1 => return bad("osp(2,2n) needs n >= 1"),
            _ => {}
        }
        Ok(())
    }
}

/// Exact coordinates over the ambient basis.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Weight(pub Vec<Q>);

impl Weight {
    pub fn zero(dim: usize) -> Self {
        Weight(vec![Q::zero(); dim])
    }

    pub fn from_ints(v: &[i64]) -> Self {
        Weight(v.iter().map(|&x| q(x)).collect())
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn scale(&self, c: &Q) -> Weight {
        Weight(self.0.iter().map(|x| x * c).collect())
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|x| x.is_zero())
    }
}

impl Add for &Weight {
    type Output = Weight;
    fn add(self, o: &Weight) -> Weight {
        Weight(self.0.iter().zip(&o.0).map(|(a, b)| a + b).collect())
    }
}

impl Sub for &Weight {
    type Output = Weight;
    fn sub(self, o: &Weight) -> Weight {
        Weight(self.0.iter().zip(&o.0).map(|(a, b)| a - b).collect())
    }
}

impl Neg for &Weight {
    type Output = Weight;
    fn neg(self) -> Weight {
        Weight(self.0.iter().map(|a| -a).collect())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Parity {
    Even,
    Odd,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Root {
    pub weight: Weight,
    pub parity: Parity,
    pub isotropic: bool,
    pub positive: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Dominance {
    Yes,
    NecessaryOnly,
    No,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Atypicality {
    /// Index into `positive_odd` of the unique vanishing isotropic root.
    Type(usize),
    NotSinglyAtypical(usize),
}

#[derive(Debug, Clone)]
pub struct RootDatum {
    pub descriptor: AlgebraDescriptor,
    pub gram: Vec<Vec<Q>>,
    /// Atom names of the ambient basis vectors, e.g. `eps[1]`.
    pub basis_labels: Vec<String>,
    /// Extra named atoms that are not basis vectors (G(3): `eps[3]`).
    pub aliases: Vec<(String, Weight)>,
    pub simple: Vec<Root>,
    pub positive_even: Vec<Root>,
    pub positive_odd: Vec<Root>,
    pub weyl_vector: Weight,
    /// Indices into `simple` of the even simple roots.
    pub pi0: Vec<usize>,
    /// Connected components of the graph on `pi0`, as indices into `simple`,
    /// ordered by smallest index.
    pub components: Vec<Vec<usize>>,
    simple_exp: Arc<Expander>,
    pi0_exp: Arc<Expander>,
    odd_lookup: Arc<HashMap<Vec<Q>, usize>>,
    /// Custom data may declare themselves Type I for the dominance test.
    pub custom_type_one: bool,
    pub(crate) groups: GroupCache,
}

fn comb(dim: usize, parts: &[(usize, i64)]) -> Weight {
    let mut v = vec![Q::zero(); dim];
    for &(i, c) in parts {
        v[i] += q(c);
    }
    Weight(v)
}

fn root(w: Weight, parity: Parity) -> (Weight, Parity) {
    (w, parity)
}

/// Builds the datum for a descriptor.
pub fn build_datum(desc: &AlgebraDescriptor) -> Result<RootDatum> {
    if let Source::File(path) = &desc.source {
        let text = std::fs::read_to_string(path).map_err(|e| Error::MalformedDatumFile {
            line: 0,
            msg: format!("{path}: {e}"),
        })?;
        return RootDatum::parse_datum_file(&text, path);
    }
    desc.validate()?;
    match desc.family {
        Family::Sl { m, n } => Ok(RootDatum::sl(m, n)),
        Family::Osp1 { n } => Ok(RootDatum::osp1(n)),
        Family::Osp2 { n } => Ok(RootDatum::osp2(n)),
        Family::G3 => Ok(RootDatum::g3()),
        Family::F4 => Ok(RootDatum::f4()),
        Family::Custom(ref s) => Err(Error::UnsupportedFamily(format!(
            "custom family {s} needs a datum file"
        ))),
    }
}

fn diag(entries: &[Q]) -> Vec<Vec<Q>> {
    let d = entries.len();
    (0..d)
        .map(|i| (0..d).map(|j| if i == j { entries[i].clone() } else { Q::zero() }).collect())
        .collect()
}

impl RootDatum {
    /// sl(m,n): basis eps_1..eps_m, delta_1..delta_n.
    pub fn sl(m: usize, n: usize) -> RootDatum {
        let d = m + n;
        let e = |i: usize| i - 1;
        let dl = |j: usize| m + j - 1;
        let mut gram_diag = vec![q(1); m];
        gram_diag.extend(vec![q(-1); n]);
        let mut simple = Vec::new();
        for i in 1..m {
            simple.push(root(comb(d, &[(e(i), 1), (e(i + 1), -1)]), Parity::Even));
        }
        simple.push(root(comb(d, &[(e(m), 1), (dl(1), -1)]), Parity::Odd));
        for j in 1..n {
            simple.push(root(comb(d, &[(dl(j), 1), (dl(j + 1), -1)]), Parity::Even));
        }
        let mut even = Vec::new();
        for i in 1..=m {
            for j in i + 1..=m {
                even.push(comb(d, &[(e(i), 1), (e(j), -1)]));
            }
        }
        for i in 1..=n {
            for j in i + 1..=n {
                even.push(comb(d, &[(dl(i), 1), (dl(j), -1)]));
            }
        }
        let mut odd = Vec::new();
        for i in 1..=m {
            for j in 1..=n {
                odd.push(comb(d, &[(e(i), 1), (dl(j), -1)]));
            }
        }
        let mut labels: Vec<String> = (1..=m).map(|i| format!("eps[{i}]")).collect();
        labels.extend((1..=n).map(|j| format!("delta[{j}]")));
        Self::from_parts(
            AlgebraDescriptor::builtin(Family::Sl { m, n }),
            diag(&gram_diag),
            labels,
            vec![],
            simple,
            even,
            odd,
        )
        .expect("built-in sl datum is valid")
    }

    /// osp(1,2n): basis delta_1..delta_n with (delta_i,delta_j) = -delta_ij.
    pub fn osp1(n: usize) -> RootDatum {
        let d = n;
        let dl = |j: usize| j - 1;
        let mut simple = Vec::new();
        for j in 1..n {
            simple.push(root(comb(d, &[(dl(j), 1), (dl(j + 1), -1)]), Parity::Even));
        }
        simple.push(root(comb(d, &[(dl(n), 1)]), Parity::Odd));
        let even = c_type_even(d, 0, n);
        let odd = (1..=n).map(|j| comb(d, &[(dl(j), 1)])).collect();
        let labels = (1..=n).map(|j| format!("delta[{j}]")).collect();
        Self::from_parts(
            AlgebraDescriptor::builtin(Family::Osp1 { n }),
            diag(&vec![q(-1); n]),
            labels,
            vec![],
            simple,
            even,
            odd,
        )
        .expect("built-in osp(1,2n) datum is valid")
    }

    /// osp(2,2n): basis eps_1, delta_1..delta_n.
    pub fn osp2(n: usize) -> RootDatum {
        let d = n + 1;
        let dl = |j: usize| j;
        let mut simple = Vec::new();
        for j in 1..n {
            simple.push(root(comb(d, &[(dl(j), 1), (dl(j + 1), -1)]), Parity::Even));
        }
        simple.push(root(comb(d, &[(dl(n), 2)]), Parity::Even));
        simple.push(root(comb(d, &[(0, 1), (dl(1), -1)]), Parity::Odd));
        let even = c_type_even(d, 1, n);
        let mut odd: Vec<Weight> = (1..=n).map(|j| comb(d, &[(0, 1), (dl(j), -1)])).collect();
        odd.extend((1..=n).map(|j| comb(d, &[(0, 1), (dl(j), 1)])));
        let mut gd = vec![q(1)];
        gd.extend(vec![q(-1); n]);
        let mut labels = vec!["eps[1]".to_string()];
        labels.extend((1..=n).map(|j| format!("delta[{j}]")));
        Self::from_parts(
            AlgebraDescriptor::builtin(Family::Osp2 { n }),
            diag(&gd),
            labels,
            vec![],
            simple,
            even,
            odd,
        )
        .expect("built-in osp(2,2n) datum is valid")
    }

    /// G(3): stored basis (eps_1, eps_2, delta); eps_3 = -eps_1 - eps_2.
    pub fn g3() -> RootDatum {
        let d = 3;
        let e1 = comb(d, &[(0, 1)]);
        let e2 = comb(d, &[(1, 1)]);
        let e3 = comb(d, &[(0, -1), (1, -1)]);
        let dt = comb(d, &[(2, 1)]);
        let gram = vec![
            vec![q(2), q(-1), q(0)],
            vec![q(-1), q(2), q(0)],
            vec![q(0), q(0), q(-2)],
        ];
        let simple = vec![
            root(e1.clone(), Parity::Even),
            root(&e2 - &e1, Parity::Even),
            root(&e3 + &dt, Parity::Odd),
        ];
        let even = vec![
            e1.clone(),
            &e2 - &e1,
            e2.clone(),
            -&e3,
            &e1 - &e3,
            &e2 - &e3,
            dt.scale(&q(2)),
        ];
        let mut odd = vec![dt.clone()];
        for e in [&e1, &e2, &e3] {
            odd.push(e + &dt);
        }
        for e in [&e1, &e2, &e3] {
            odd.push(&dt - e);
        }
        Self::from_parts(
            AlgebraDescriptor::builtin(Family::G3),
            gram,
            vec!["eps[1]".into(), "eps[2]".into(), "delta[1]".into()],
            vec![("eps[3]".into(), e3)],
            simple,
            even,
            odd,
        )
        .expect("built-in G(3) datum is valid")
    }

    /// F(4): basis (eps_1, eps_2, eps_3, delta).
    pub fn f4() -> RootDatum {
        let d = 4;
        let e = |i: usize| comb(d, &[(i - 1, 1)]);
        let half = qf(1, 2);
        let simple = vec![
            root(&e(1) - &e(2), Parity::Even),
            root(&e(2) - &e(3), Parity::Even),
            root(e(3), Parity::Even),
            root(comb(d, &[(0, -1), (1, -1), (2, -1), (3, 1)]).scale(&half), Parity::Odd),
        ];
        let mut even = Vec::new();
        for i in 1..=3 {
            for j in i + 1..=3 {
                even.push(&e(i) - &e(j));
                even.push(&e(i) + &e(j));
            }
        }
        for i in 1..=3 {
            even.push(e(i));
        }
        even.push(e(4));
        let mut odd = Vec::new();
        for s1 in [1, -1] {
            for s2 in [1, -1] {
                for s3 in [1, -1] {
                    odd.push(comb(d, &[(0, s1), (1, s2), (2, s3), (3, 1)]).scale(&half));
                }
            }
        }
        Self::from_parts(
            AlgebraDescriptor::builtin(Family::F4),
            diag(&[q(1), q(1), q(1), q(-3)]),
            vec!["eps[1]".into(), "eps[2]".into(), "eps[3]".into(), "delta[1]".into()],
            vec![],
            simple,
            even,
            odd,
        )
        .expect("built-in F(4) datum is valid")
    }

    /// Assembles and validates a datum; the error string names the offending field.
    pub fn from_parts(
        descriptor: AlgebraDescriptor,
        gram: Vec<Vec<Q>>,
        basis_labels: Vec<String>,
        aliases: Vec<(String, Weight)>,
        simple: Vec<(Weight, Parity)>,
        positive_even: Vec<Weight>,
        positive_odd: Vec<Weight>,
    ) -> std::result::Result<RootDatum, (&'static str, String)> {
        let d = gram.len();
        if gram.iter().any(|r| r.len() != d) {
            return Err(("gram", "gram matrix is not square".into()));
        }
        for i in 0..d {
            for j in 0..i {
                if gram[i][j] != gram[j][i] {
                    return Err(("gram", format!("gram not symmetric at ({},{})", i + 1, j + 1)));
                }
            }
        }
        if !linalg::determinant_nonzero(&gram) {
            return Err(("gram", "form is degenerate".into()));
        }
        if basis_labels.len() != d {
            return Err(("basis", format!("expected {d} basis labels")));
        }
        for (field, ws) in [
            ("simple", simple.iter().map(|s| &s.0).collect::<Vec<_>>()),
            ("positive_even", positive_even.iter().collect()),
            ("positive_odd", positive_odd.iter().collect()),
        ] {
            if let Some(w) = ws.iter().find(|w| w.dim() != d) {
                return Err((field, format!("root has {} coordinates, expected {d}", w.dim())));
            }
        }
        let ip = |u: &Weight, v: &Weight| inner_raw(&gram, u, v);
        let mk = |w: &Weight, parity| Root {
            weight: w.clone(),
            parity,
            isotropic: ip(w, w).is_zero(),
            positive: true,
        };
        let simple_roots: Vec<Root> = simple.iter().map(|(w, p)| mk(w, *p)).collect();
        let pos_even: Vec<Root> = positive_even.iter().map(|w| mk(w, Parity::Even)).collect();
        let pos_odd: Vec<Root> = positive_odd.iter().map(|w| mk(w, Parity::Odd)).collect();

        if simple_roots.iter().filter(|r| r.isotropic).count() > 1 {
            return Err(("simple", "more than one isotropic simple root".into()));
        }
        if pos_even.iter().any(|r| r.isotropic) {
            return Err(("positive_even", "isotropic even root".into()));
        }
        let basis: Vec<Vec<Q>> = simple_roots.iter().map(|r| r.weight.0.clone()).collect();
        let simple_exp =
            Expander::new(&basis, d).ok_or(("simple", "simple roots are dependent".to_string()))?;
        for (field, roots) in [("positive_even", &pos_even), ("positive_odd", &pos_odd)] {
            for r in roots.iter() {
                let c = simple_exp
                    .expand(&r.weight.0)
                    .ok_or((field, "root outside the span of the simple roots".to_string()))?;
                if c.iter().any(|x| !x.is_integer() || x.is_negative()) {
                    return Err((field, "root is not a non-negative integer combination".into()));
                }
            }
        }
        for r in &simple_roots {
            let list = if r.parity == Parity::Even { &pos_even } else { &pos_odd };
            if !list.iter().any(|x| x.weight == r.weight) {
                return Err(("simple", "simple root missing from positive list".into()));
            }
        }
        let mut rho = Weight::zero(d);
        for r in &pos_even {
            rho = &rho + &r.weight.scale(&qf(1, 2));
        }
        for r in &pos_odd {
            rho = &rho - &r.weight.scale(&qf(1, 2));
        }
        for r in &simple_roots {
            if ip(&rho, &r.weight) * q(2) != ip(&r.weight, &r.weight) {
                return Err(("simple", "Weyl vector law (rho,b) = (b,b)/2 fails".into()));
            }
        }
        let pi0: Vec<usize> = (0..simple_roots.len())
            .filter(|&i| simple_roots[i].parity == Parity::Even)
            .collect();
        let pi0_basis: Vec<Vec<Q>> = pi0.iter().map(|&i| basis[i].clone()).collect();
        let pi0_exp = Expander::new(&pi0_basis, d).expect("subfamily of independent family");
        let components = graph_components(&pi0, |a, b| {
            !ip(&simple_roots[a].weight, &simple_roots[b].weight).is_zero()
        });
        if components.is_empty() || components.len() > 2 {
            return Err((
                "simple",
                format!("even simple roots form {} components, expected 1 or 2", components.len()),
            ));
        }
        let odd_lookup = pos_odd
            .iter()
            .enumerate()
            .map(|(i, r)| (r.weight.0.clone(), i))
            .collect();
        Ok(RootDatum {
            descriptor,
            gram,
            basis_labels,
            aliases,
            simple: simple_roots,
            positive_even: pos_even,
            positive_odd: pos_odd,
            weyl_vector: rho,
            pi0,
            components,
            simple_exp: Arc::new(simple_exp),
            pi0_exp: Arc::new(pi0_exp),
            odd_lookup: Arc::new(odd_lookup),
            custom_type_one: false,
            groups: GroupCache::default(),
        })
    }

    pub fn family(&self) -> &Family {
        &self.descriptor.family
    }

    pub fn ambient_dim(&self) -> usize {
        self.gram.len()
    }

    fn check_dim(&self, w: &Weight) -> Result<()> {
        if w.dim() != self.ambient_dim() {
            return Err(Error::DimensionMismatch { expected: self.ambient_dim(), got: w.dim() });
        }
        Ok(())
    }

    pub fn inner(&self, u: &Weight, v: &Weight) -> Result<Q> {
        self.check_dim(u)?;
        self.check_dim(v)?;
        Ok(inner_raw(&self.gram, u, v))
    }

    pub(crate) fn ip(&self, u: &Weight, v: &Weight) -> Q {
        inner_raw(&self.gram, u, v)
    }

    /// 2(l,a)/(a,a).
    pub fn pairing(&self, l: &Weight, a: &Weight) -> Result<Q> {
        let aa = self.inner(a, a)?;
        if aa.is_zero() {
            return Err(Error::IsotropicRoot);
        }
        Ok(self.inner(l, a)? * q(2) / aa)
    }

    pub fn weyl_vector(&self) -> &Weight {
        &self.weyl_vector
    }

    pub fn rho_shift(&self, l: &Weight) -> Weight {
        l + &self.weyl_vector
    }

    /// Vanishing isotropic positive odd roots for l + rho.
    pub fn vanishing_isotropic(&self, l: &Weight) -> Vec<usize> {
        let eta = self.rho_shift(l);
        (0..self.positive_odd.len())
            .filter(|&i| {
                let r = &self.positive_odd[i];
                r.isotropic && self.ip(&eta, &r.weight).is_zero()
            })
            .collect()
    }

    pub fn is_typical(&self, l: &Weight) -> bool {
        self.vanishing_isotropic(l).is_empty()
    }

    pub fn atypicality_type(&self, l: &Weight) -> Atypicality {
        let v = self.vanishing_isotropic(l);
        if v.len() == 1 {
            Atypicality::Type(v[0])
        } else {
            Atypicality::NotSinglyAtypical(v.len())
        }
    }

    pub fn is_dominant_integral(&self, l: &Weight) -> Dominance {
        for &i in &self.pi0 {
            let p = self.pairing(l, &self.simple[i].weight).expect("even roots are not isotropic");
            if !p.is_integer() || p.is_negative() {
                return Dominance::No;
            }
        }
        if self.family().is_type_one() || self.custom_type_one {
            Dominance::Yes
        } else {
            Dominance::NecessaryOnly
        }
    }

    /// Number of even simple roots.
    pub fn rank0(&self) -> usize {
        self.pi0.len()
    }

    /// The even simple root with 1-based even index `i`.
    pub fn even_simple(&self, i: usize) -> Result<&Root> {
        if i == 0 || i > self.pi0.len() {
            return Err(Error::IndexOutOfRange { index: i, max: self.pi0.len() });
        }
        Ok(&self.simple[self.pi0[i - 1]])
    }

    /// omega_i for the 1-based even index `i`: lies in the span of the even
    /// simple roots and pairs to delta_ij with them.
    pub fn fundamental_weight(&self, i: usize) -> Result<Weight> {
        self.even_simple(i)?;
        let r = self.pi0.len();
        // pairing(sum_k x_k a_k, a_j) = sum_k x_k * 2(a_k,a_j)/(a_j,a_j)
        let cartan: Vec<Vec<Q>> = (0..r)
            .map(|j| {
                let aj = &self.simple[self.pi0[j]].weight;
                let ajj = self.ip(aj, aj);
                (0..r)
                    .map(|k| self.ip(&self.simple[self.pi0[k]].weight, aj) * q(2) / &ajj)
                    .collect()
            })
            .collect();
        let inv = linalg::inverse(&cartan).ok_or_else(|| Error::Internal("singular Cartan".into()))?;
        let mut w = Weight::zero(self.ambient_dim());
        for k in 0..r {
            let x = &inv[k][i - 1];
            w = &w + &self.simple[self.pi0[k]].weight.scale(x);
        }
        Ok(w)
    }

    /// tau: the sum of the positive odd roots.
    pub fn sum_positive_odd(&self) -> Weight {
        self.positive_odd
            .iter()
            .fold(Weight::zero(self.ambient_dim()), |acc, r| &acc + &r.weight)
    }

    /// Coefficients over all simple roots.
    pub fn expand_simple(&self, x: &Weight) -> Option<Vec<Q>> {
        self.simple_exp.expand(&x.0)
    }

    /// Coefficients over the even simple roots, indexed like `pi0`.
    pub fn expand_pi0(&self, x: &Weight) -> Option<Vec<Q>> {
        self.pi0_exp.expand(&x.0)
    }

    pub fn odd_index(&self, w: &Weight) -> Option<usize> {
        self.odd_lookup.get(&w.0).copied()
    }

    /// Position of simple index `s` inside `pi0`.
    pub fn even_position(&self, s: usize) -> Option<usize> {
        self.pi0.iter().position(|&x| x == s)
    }

    /// Printable name of the simple root with index `s` into `simple`:
    /// `a<k>` for the k-th even simple root, `b<k>` for the k-th odd one.
    pub fn simple_name(&self, s: usize) -> String {
        match self.even_position(s) {
            Some(k) => format!("a{}", k + 1),
            None => {
                let k = (0..s).filter(|&i| self.simple[i].parity == Parity::Odd).count();
                format!("b{}", k + 1)
            }
        }
    }

    pub fn odd_name(&self, g: usize) -> String {
        format!("g{}", g + 1)
    }

    /// Component id (1-based) containing the simple index `s`.
    pub fn component_of(&self, s: usize) -> Option<usize> {
        self.components.iter().position(|c| c.contains(&s)).map(|i| i + 1)
    }

    /// <l+rho, a> for every even simple root, in `pi0` order.
    pub fn shifted_pairings(&self, l: &Weight) -> Vec<Q> {
        let eta = self.rho_shift(l);
        self.pi0
            .iter()
            .map(|&i| self.pairing(&eta, &self.simple[i].weight).expect("even root"))
            .collect()
    }

    /// Human-readable coordinate form, parseable by the weight grammar.
    pub fn format_weight(&self, w: &Weight) -> String {
        let mut parts = Vec::new();
        for (c, label) in w.0.iter().zip(&self.basis_labels) {
            if c.is_zero() {
                continue;
            }
            if c.is_one() {
                parts.push(label.clone());
            } else if c.is_negative() || !c.is_integer() {
                parts.push(format!("({})*{}", crate::fmt_q(c), label));
            } else {
                parts.push(format!("{}*{}", crate::fmt_q(c), label));
            }
        }
        if parts.is_empty() {
            "0".into()
        } else {
            parts.join(" + ")
        }
    }

    /// Textual root description like `eps[1] - delta[2]`.
    pub fn format_root(&self, w: &Weight) -> String {
        let mut s = String::new();
        for (c, label) in w.0.iter().zip(&self.basis_labels) {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            let a = c.abs();
            let body = if a.is_one() { label.clone() } else { format!("{}*{}", crate::fmt_q(&a), label) };
            if s.is_empty() {
                s = if neg { format!("-{body}") } else { body };
            } else {
                s.push_str(if neg { " - " } else { " + " });
                s.push_str(&body);
            }
        }
        if s.is_empty() {
            "0".into()
        } else {
            s
        }
    }

    /// Parses the line-oriented datum file format.
    pub fn parse_datum_file(text: &str, path: &str) -> Result<RootDatum> {
        crate::root_datum::file::parse(text, path)
    }
}

pub(crate) fn inner_raw(gram: &[Vec<Q>], u: &Weight, v: &Weight) -> Q {
    let mut s = Q::zero();
    for (i, ui) in u.0.iter().enumerate() {
        if ui.is_zero() {
            continue;
        }
        for (j, vj) in v.0.iter().enumerate() {
            if vj.is_zero() || gram[i][j].is_zero() {
                continue;
            }
            s += ui * &gram[i][j] * vj;
        }
    }
    s
}

fn c_type_even(d: usize, off: usize, n: usize) -> Vec<Weight> {
    let dl = |j: usize| off + j - 1;
    let mut even = Vec::new();
    for i in 1..=n {
        for j in i + 1..=n {
            even.push(comb(d, &[(dl(i), 1), (dl(j), -1)]));
        }
    }
    for i in 1..=n {
        for j in i + 1..=n {
            even.push(comb(d, &[(dl(i), 1), (dl(j), 1)]));
        }
    }
    for i in 1..=n {
        even.push(comb(d, &[(dl(i), 2)]));
    }
    even
}

/// Components of the graph on `verts` (adjacency by `adj`), each sorted,
/// listed by smallest member.
pub(crate) fn graph_components(verts: &[usize], adj: impl Fn(usize, usize) -> bool) -> Vec<Vec<usize>> {
    let mut seen = vec![false; verts.len()];
    let mut comps = Vec::new();
    for start in 0..verts.len() {
        if seen[start] {
            continue;
        }
        let mut comp = vec![];
        let mut stack = vec![start];
        seen[start] = true;
        while let Some(x) = stack.pop() {
            comp.push(verts[x]);
            for y in 0..verts.len() {
                if !seen[y] && adj(verts[x], verts[y]) {
                    seen[y] = true;
                    stack.push(y);
                }
            }
        }
        comp.sort_unstable();
        comps.push(comp);
    }
    comps.sort();
    comps
}

pub(crate) mod file {
    use super::*;

    fn perr(line: usize, msg: impl Into<String>) -> Error {
        Error::MalformedDatumFile { line, msg: msg.into() }
    }

    fn parse_q(tok: &str, line: usize) -> Result<Q> {
        let (n, d) = match tok.split_once('/') {
            Some((a, b)) => (a, b),
            None => (tok, "1"),
        };
        let n: num_bigint::BigInt = n.parse().map_err(|_| perr(line, format!("bad rational `{tok}`")))?;
        let d: num_bigint::BigInt = d.parse().map_err(|_| perr(line, format!("bad rational `{tok}`")))?;
        if d.is_zero() {
            return Err(perr(line, "zero denominator"));
        }
        Ok(Q::new(n, d))
    }

    fn parse_vec(s: &str, line: usize) -> Result<Weight> {
        Ok(Weight(s.split_whitespace().map(|t| parse_q(t, line)).collect::<Result<_>>()?))
    }

    pub fn parse(text: &str, path: &str) -> Result<RootDatum> {
        let mut family = None;
        let mut dim: Option<usize> = None;
        let mut labels: Option<Vec<String>> = None;
        let mut type_one = false;
        let mut gram = Vec::new();
        let mut simple = Vec::new();
        let mut even = Vec::new();
        let mut odd = Vec::new();
        let mut first_line: HashMap<&'static str, usize> = HashMap::new();
        let mut last = 0;
        for (idx, raw) in text.lines().enumerate() {
            let line = idx + 1;
            last = line;
            let content = raw.split('#').next().unwrap_or("").trim();
            if content.is_empty() {
                continue;
            }
            let (key, val) = content
                .split_once(':')
                .ok_or_else(|| perr(line, "expected `key: value`"))?;
            let val = val.trim();
            let key: &'static str = match key.trim() {
                "family" => "family",
                "ambient_dim" => "ambient_dim",
                "basis" => "basis",
                "type_one" => "type_one",
                "gram" => "gram",
                "simple" => "simple",
                "positive_even" => "positive_even",
                "positive_odd" => "positive_odd",
                other => return Err(perr(line, format!("unknown field `{other}`"))),
            };
            first_line.entry(key).or_insert(line);
            let check = |w: &Weight| -> Result<()> {
                match dim {
                    None => Err(perr(line, "ambient_dim must come first")),
                    Some(d) if w.dim() != d => {
                        Err(perr(line, format!("expected {d} coordinates, got {}", w.dim())))
                    }
                    _ => Ok(()),
                }
            };
            match key {
                "family" => family = Some(val.to_string()),
                "ambient_dim" => {
                    let d: usize = val.parse().map_err(|_| perr(line, "bad ambient_dim"))?;
                    if d == 0 {
                        return Err(perr(line, "ambient_dim must be positive"));
                    }
                    dim = Some(d);
                }
                "basis" => labels = Some(val.split_whitespace().map(String::from).collect()),
                "type_one" => type_one = matches!(val, "yes" | "true"),
                "gram" => {
                    let w = parse_vec(val, line)?;
                    check(&w)?;
                    gram.push(w.0);
                }
                "simple" => {
                    let (par, rest) = val
                        .split_once(char::is_whitespace)
                        .ok_or_else(|| perr(line, "expected `simple: even|odd coords`"))?;
                    let parity = match par {
                        "even" => Parity::Even,
                        "odd" => Parity::Odd,
                        _ => return Err(perr(line, format!("bad parity `{par}`"))),
                    };
                    let w = parse_vec(rest, line)?;
                    check(&w)?;
                    simple.push((w, parity));
                }
                "positive_even" => {
                    let w = parse_vec(val, line)?;
                    check(&w)?;
                    even.push(w);
                }
                _ => {
                    let w = parse_vec(val, line)?;
                    check(&w)?;
                    odd.push(w);
                }
            }
        }
        let family = family.ok_or_else(|| perr(last, "missing `family`"))?;
        let d = dim.ok_or_else(|| perr(last, "missing `ambient_dim`"))?;
        if gram.len() != d {
            return Err(perr(
                first_line.get("gram").copied().unwrap_or(last),
                format!("expected {d} gram rows, got {}", gram.len()),
            ));
        }
        let labels = labels.unwrap_or_else(|| (1..=d).map(|i| format!("eps[{i}]")).collect());
        let fam = Family::Custom(family);
        let desc = AlgebraDescriptor { family: fam, source: Source::File(path.to_string()) };
        let mut datum = RootDatum::from_parts(
            desc,
            gram.into_iter().map(|r| r.to_vec()).collect(),
            labels,
            vec![],
            simple,
            even,
            odd,
        )
        .map_err(|(field, msg)| perr(first_line.get(field).copied().unwrap_or(last), msg))?;
        if type_one {
            datum.custom_type_one = true;
        }
        Ok(datum)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sl21_weyl_vector() {
        let d = RootDatum::sl(2, 1);
        assert_eq!(d.weyl_vector, Weight::from_ints(&[0, -1, 1]));
        assert_eq!(d.sum_positive_odd(), Weight::from_ints(&[1, 1, -2]));
    }

    #[test]
    fn sl32_tau_pairings() {
        let d = RootDatum::sl(3, 2);
        assert_eq!(d.sum_positive_odd(), Weight::from_ints(&[2, 2, 2, -3, -3]));
        // supertrace form: 2 - 3 = -1 on every eps_i - delta_j
        for r in &d.positive_odd {
            assert_eq!(d.inner(&d.sum_positive_odd(), &r.weight).unwrap(), q(-1));
        }
    }

    #[test]
    fn g3_form() {
        let d = RootDatum::g3();
        let e1 = Weight::from_ints(&[1, 0, 0]);
        let e2 = Weight::from_ints(&[0, 1, 0]);
        assert_eq!(d.inner(&e1, &e2).unwrap(), q(-1));
        assert_eq!(d.pi0, vec![0, 1]);
        assert_eq!(d.components.len(), 1);
    }

    #[test]
    fn f4_roots() {
        let d = RootDatum::f4();
        assert_eq!(d.positive_odd.len(), 8);
        assert_eq!(d.pi0.len(), 3);
        assert!(d.positive_odd.iter().all(|r| r.isotropic));
    }

    #[test]
    fn sl22_rejected() {
        let desc = AlgebraDescriptor::builtin(Family::Sl { m: 2, n: 2 });
        assert!(matches!(build_datum(&desc), Err(Error::UnsupportedFamily(_))));
    }

    #[test]
    fn fundamental_weights_dual() {
        for d in [RootDatum::sl(3, 2), RootDatum::osp2(3), RootDatum::g3(), RootDatum::f4()] {
            for i in 1..=d.rank0() {
                let w = d.fundamental_weight(i).unwrap();
                for j in 1..=d.rank0() {
                    let p = d.pairing(&w, &d.even_simple(j).unwrap().weight).unwrap();
                    assert_eq!(p, if i == j { q(1) } else { q(0) });
                }
            }
            assert!(d.fundamental_weight(d.rank0() + 1).is_err());
        }
    }

    #[test]
    fn sl21_zero_is_atypical() {
        let d = RootDatum::sl(2, 1);
        let z = Weight::zero(3);
        assert!(!d.is_typical(&z));
        // eps_2 - delta_1 is the second odd root
        assert_eq!(d.atypicality_type(&z), Atypicality::Type(1));
    }

    #[test]
    fn dominance_tristate() {
        let d = RootDatum::sl(3, 2);
        let w1 = d.fundamental_weight(1).unwrap();
        assert_eq!(d.is_dominant_integral(&w1), Dominance::Yes);
        assert_eq!(d.is_dominant_integral(&-&w1), Dominance::No);
        let g = RootDatum::g3();
        assert_eq!(g.is_dominant_integral(&Weight::zero(3)), Dominance::NecessaryOnly);
    }

    #[test]
    fn datum_file_roundtrip_sl21() {
        let text = "\
family: sl21-copy
ambient_dim: 3
basis: eps[1] eps[2] delta[1]
type_one: yes
gram: 1 0 0
gram: 0 1 0
gram: 0 0 -1
simple: even 1 -1 0
simple: odd 0 1 -1
positive_even: 1 -1 0
positive_odd: 1 0 -1
positive_odd: 0 1 -1
";
        let d = RootDatum::parse_datum_file(text, "mem").unwrap();
        assert_eq!(d.weyl_vector, RootDatum::sl(2, 1).weyl_vector);
        assert_eq!(d.is_dominant_integral(&Weight::zero(3)), Dominance::Yes);
    }

    #[test]
    fn datum_file_errors_carry_lines() {
        let text = "family: x\nambient_dim: 2\ngram: 1 0\ngram: 0 1 5\n";
        match RootDatum::parse_datum_file(text, "mem") {
            Err(Error::MalformedDatumFile { line, .. }) => assert_eq!(line, 4),
            other => panic!("{other:?}"),
        }
        let text = "family: x\nambient_dim: 2\ngram: 1 0\ngram: 0 1\nsimple: even 1 -1\nsimple: even 1 1\npositive_even: 1 -1\n";
        match RootDatum::parse_datum_file(text, "mem") {
            Err(Error::MalformedDatumFile { line, .. }) => assert_eq!(line, 5),
            other => panic!("{other:?}"),
        }
    }
}
