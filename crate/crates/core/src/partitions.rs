//! Graphs on simple roots, ordered partitions into independent sets and
//! the invariant k(G).

use std::collections::{BTreeSet, HashMap};
use std::sync::{Mutex, OnceLock};

use num_bigint::BigInt;
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::root_datum::{Family, RootDatum};
use crate::weyl::{generate_group, Component, WeylElement};
use crate::Q;

pub const DEFAULT_GRAPH_CAP: usize = 12;

/// Vertex cap from `SUPERWEYL_MAX_GRAPH`, else the default.
pub fn graph_cap() -> usize {
    std::env::var("SUPERWEYL_MAX_GRAPH")
        .ok()
        .and_then(|s| s.trim().parse().ok())
        .unwrap_or(DEFAULT_GRAPH_CAP)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SimpleGraph {
    /// Each vertex is a set of Π0 positions; fused vertices hold two.
    pub vertices: Vec<Vec<usize>>,
    pub names: Vec<String>,
    adj: Vec<Vec<bool>>,
}

impl SimpleGraph {
    pub fn new(vertices: Vec<Vec<usize>>, names: Vec<String>, edges: &[(usize, usize)]) -> Self {
        let n = vertices.len();
        let mut adj = vec![vec![false; n]; n];
        for &(a, b) in edges {
            if a != b {
                adj[a][b] = true;
                adj[b][a] = true;
            }
        }
        SimpleGraph { vertices, names, adj }
    }

    /// Unlabelled graph on `n` vertices.
    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Self {
        let vertices = (0..n).map(|i| vec![i]).collect();
        let names = (0..n).map(|i| format!("v{}", i + 1)).collect();
        Self::new(vertices, names, edges)
    }

    /// Induced subgraph of the diagram on the given Π0 positions; edge iff
    /// the inner product is nonzero.
    pub fn from_datum(d: &RootDatum, positions: &[usize]) -> Result<Self> {
        for &k in positions {
            if k >= d.rank0() {
                return Err(Error::IndexOutOfRange { index: k + 1, max: d.rank0() });
            }
        }
        let root = |k: usize| &d.simple[d.pi0[k]].weight;
        let mut edges = Vec::new();
        for i in 0..positions.len() {
            for j in i + 1..positions.len() {
                if !d.ip(root(positions[i]), root(positions[j])).is_zero() {
                    edges.push((i, j));
                }
            }
        }
        let vertices = positions.iter().map(|&k| vec![k]).collect();
        let names = positions.iter().map(|&k| format!("a{}", k + 1)).collect();
        Ok(Self::new(vertices, names, &edges))
    }

    /// Whole even diagram.
    pub fn of_pi0(d: &RootDatum) -> Self {
        Self::from_datum(d, &(0..d.rank0()).collect::<Vec<_>>()).expect("positions in range")
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    pub fn adjacent(&self, a: usize, b: usize) -> bool {
        self.adj[a][b]
    }

    pub fn edges(&self) -> Vec<(usize, usize)> {
        let n = self.len();
        (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).filter(|&(i, j)| self.adj[i][j]).collect()
    }

    fn neighbour_masks(&self) -> Vec<u32> {
        (0..self.len())
            .map(|i| (0..self.len()).filter(|&j| self.adj[i][j]).fold(0u32, |m, j| m | 1 << j))
            .collect()
    }

    fn independent(&self, nb: &[u32], mask: u32) -> bool {
        (0..self.len()).all(|i| mask & (1 << i) == 0 || nb[i] & mask == 0)
    }

    pub fn is_connected(&self) -> bool {
        let n = self.len();
        if n == 0 {
            return true;
        }
        let mut seen = vec![false; n];
        let mut stack = vec![0];
        seen[0] = true;
        while let Some(v) = stack.pop() {
            for u in 0..n {
                if self.adj[v][u] && !seen[u] {
                    seen[u] = true;
                    stack.push(u);
                }
            }
        }
        seen.into_iter().all(|x| x)
    }

    pub fn is_tree(&self) -> bool {
        self.is_connected() && self.edges().len() + 1 == self.len()
    }

    fn cache_key(&self) -> (usize, Vec<u32>) {
        (self.len(), self.neighbour_masks())
    }
}

fn mask_members(mask: u32) -> Vec<usize> {
    (0..32).filter(|&i| mask & (1 << i) != 0).collect()
}

fn independent_masks(g: &SimpleGraph) -> Vec<u32> {
    let nb = g.neighbour_masks();
    (1u32..(1u32 << g.len())).filter(|&m| g.independent(&nb, m)).collect()
}

/// All nonempty independent sets, as local vertex indices, ordered by size
/// and then lexicographically.
pub fn totally_disconnected_subsets(g: &SimpleGraph) -> Vec<Vec<usize>> {
    let mut out: Vec<Vec<usize>> = independent_masks(g).into_iter().map(mask_members).collect();
    out.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
    out
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PartitionReport {
    /// counts[k-1] = c_k, the number of ordered k-partitions.
    pub counts: Vec<BigInt>,
    /// k(G) = (-1)^|G| Σ_k (-1)^k c_k / k. This is, up to sign, the linear
    /// coefficient of the chromatic polynomial: 1 on trees, 0 on
    /// disconnected graphs, larger on connected graphs with cycles.
    pub k_value: Q,
}

fn k_value_of(counts: &[BigInt]) -> Q {
    let n = counts.len();
    let mut s = Q::zero();
    for (i, c) in counts.iter().enumerate() {
        let k = i + 1;
        let t = Q::new(c.clone(), BigInt::from(k));
        if k % 2 == 0 {
            s += t;
        } else {
            s -= t;
        }
    }
    if n % 2 == 1 {
        -s
    } else {
        s
    }
}

fn count_cache() -> &'static Mutex<HashMap<(usize, Vec<u32>), PartitionReport>> {
    static CACHE: OnceLock<Mutex<HashMap<(usize, Vec<u32>), PartitionReport>>> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

pub fn k_partition_counts(g: &SimpleGraph) -> Result<PartitionReport> {
    k_partition_counts_capped(g, graph_cap())
}

/// Exact c_k by recursion over the first block: the number of ordered
/// k-partitions of S is the sum over independent T ⊆ S of those of S \ T.
pub fn k_partition_counts_capped(g: &SimpleGraph, cap: usize) -> Result<PartitionReport> {
    let n = g.len();
    if n > cap || n > 20 {
        return Err(Error::GraphTooLarge { size: n, cap });
    }
    let key = g.cache_key();
    if let Some(r) = count_cache().lock().expect("cache lock").get(&key) {
        return Ok(r.clone());
    }
    let full: u32 = if n == 0 { 0 } else { (1u32 << n) - 1 };
    let nb = g.neighbour_masks();
    let indep: Vec<bool> = (0..=full).map(|m| m != 0 && g.independent(&nb, m)).collect();
    // f[s] = number of ordered partitions of s into exactly k blocks
    let mut f: Vec<u128> = vec![0; full as usize + 1];
    f[0] = 1;
    let mut counts = Vec::new();
    for _k in 1..=n {
        let mut g2: Vec<u128> = vec![0; full as usize + 1];
        for s in 1..=full {
            let mut t = s;
            let mut acc: u128 = 0;
            while t != 0 {
                if indep[t as usize] {
                    acc += f[(s & !t) as usize];
                }
                t = (t - 1) & s;
            }
            g2[s as usize] = acc;
        }
        f = g2;
        counts.push(BigInt::from(f[full as usize]));
    }
    let report = PartitionReport { k_value: k_value_of(&counts), counts };
    count_cache().lock().expect("cache lock").insert(key, report.clone());
    Ok(report)
}

/// Every ordered partition of the vertex set into `k` independent blocks,
/// blocks given as local vertex indices. `k = 0` lists all sizes.
pub fn enumerate_k_partitions(g: &SimpleGraph, k: usize) -> Result<Vec<Vec<Vec<usize>>>> {
    let n = g.len();
    if n > graph_cap() || n > 20 {
        return Err(Error::GraphTooLarge { size: n, cap: graph_cap() });
    }
    let full: u32 = if n == 0 { 0 } else { (1u32 << n) - 1 };
    let indep = independent_masks(g);
    let mut out = Vec::new();
    let mut cur = Vec::new();
    fn rec(rest: u32, k: usize, indep: &[u32], cur: &mut Vec<u32>, out: &mut Vec<Vec<Vec<usize>>>) {
        if rest == 0 {
            if k == 0 || cur.len() == k {
                out.push(cur.iter().map(|&m| mask_members(m)).collect());
            }
            return;
        }
        if k != 0 && cur.len() >= k {
            return;
        }
        for &t in indep {
            if t & !rest == 0 {
                cur.push(t);
                rec(rest & !t, k, indep, cur, out);
                cur.pop();
            }
        }
    }
    if full != 0 {
        rec(full, k, &indep, &mut cur, &mut out);
    }
    Ok(out)
}

/// w(J) = w(J_1)...w(J_k) for blocks of Π0 positions.
pub fn weyl_of_partition(d: &RootDatum, parts: &[BTreeSet<usize>]) -> Result<WeylElement> {
    let root = |k: usize| &d.simple[d.pi0[k]].weight;
    let mut seen = BTreeSet::new();
    let mut word = Vec::new();
    for part in parts {
        for &k in part {
            if k >= d.rank0() {
                return Err(Error::IndexOutOfRange { index: k + 1, max: d.rank0() });
            }
            if !seen.insert(k) {
                return Err(Error::OverlappingParts);
            }
        }
        for &a in part {
            for &b in part {
                if a < b && !d.ip(root(a), root(b)).is_zero() {
                    return Err(Error::NotTotallyDisconnected);
                }
            }
        }
        word.extend(part.iter().copied());
    }
    let g = generate_group(d, Component::All)?;
    g.element_from_word(&word)
        .cloned()
        .ok_or_else(|| Error::Internal("partition word not found in group".into()))
}

/// sl(M,N) with m = M-1, n = N-1; Π0 positions of α_i and β_j (1-based).
pub(crate) fn sl_shape(d: &RootDatum) -> Result<(usize, usize)> {
    match d.family() {
        Family::Sl { m, n } => Ok((m - 1, n - 1)),
        other => Err(Error::WrongFamily(other.to_string())),
    }
}

pub(crate) fn alpha_pos(i: usize) -> usize {
    i - 1
}

pub(crate) fn beta_pos(m: usize, j: usize) -> usize {
    m + j - 1
}

/// The fused graph: α_{p-1}, β_{q-1} become one vertex, α_p, β_q another;
/// a fused vertex is adjacent to v when one of its members is.
pub fn tree_graph_gpq(d: &RootDatum, p: usize, q: usize) -> Result<SimpleGraph> {
    let (m, n) = sl_shape(d)?;
    if !(2..=m).contains(&p) || !(2..=n).contains(&q) {
        return Err(Error::IndexNotInterior { p, q });
    }
    let mut vertices: Vec<Vec<usize>> = Vec::new();
    let mut names = Vec::new();
    for i in (1..=m).filter(|&i| i != p - 1 && i != p) {
        vertices.push(vec![alpha_pos(i)]);
        names.push(format!("a{}", alpha_pos(i) + 1));
    }
    for j in (1..=n).filter(|&j| j != q - 1 && j != q) {
        vertices.push(vec![beta_pos(m, j)]);
        names.push(format!("a{}", beta_pos(m, j) + 1));
    }
    vertices.push(vec![alpha_pos(p - 1), beta_pos(m, q - 1)]);
    names.push(format!("nu({},{})", p - 1, q - 1));
    vertices.push(vec![alpha_pos(p), beta_pos(m, q)]);
    names.push(format!("nu({},{})", p, q));
    let root = |k: usize| &d.simple[d.pi0[k]].weight;
    let mut edges = Vec::new();
    for a in 0..vertices.len() {
        for b in a + 1..vertices.len() {
            let joined = vertices[a]
                .iter()
                .any(|&x| vertices[b].iter().any(|&y| !d.ip(root(x), root(y)).is_zero()));
            if joined {
                edges.push((a, b));
            }
        }
    }
    Ok(SimpleGraph::new(vertices, names, &edges))
}
