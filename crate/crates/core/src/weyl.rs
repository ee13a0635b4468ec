//! Weyl groups generated by even simple reflections.
//!
//! Elements are identified by the image of a regular vector, so duplicates
//! are detected exactly. Words are reduced by construction and are the
//! lexicographically smallest reduced words.

use std::collections::{BTreeSet, HashMap};
use std::sync::{Arc, Mutex};

use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::linalg;
use crate::root_datum::{RootDatum, Weight};
use crate::{q, Q};

pub const DEFAULT_GROUP_CAP: usize = 1_000_000;

/// Group cap from `SUPERWEYL_MAX_GROUP`, else the default.
pub fn group_cap() -> usize {
    std::env::var("SUPERWEYL_MAX_GROUP")
        .ok()
        .and_then(|s| s.trim().parse().ok())
        .unwrap_or(DEFAULT_GROUP_CAP)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Component {
    All,
    One,
    Two,
    /// The Weyl group of the whole even part, generated by the simple
    /// system of the positive even roots. Agrees with `All` except where
    /// some even simple root of g_0 is not simple in the superalgebra.
    FullEven,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WeylElement {
    /// Generator labels, leftmost first. Labels of even simple roots are
    /// their 0-based even index.
    pub word: Vec<usize>,
    /// Image of the group's regular vector.
    pub key: Weight,
}

impl WeylElement {
    pub fn length(&self) -> usize {
        self.word.len()
    }

    pub fn is_identity(&self) -> bool {
        self.word.is_empty()
    }

    /// Labels occurring in the reduced word.
    pub fn support(&self) -> BTreeSet<usize> {
        self.word.iter().copied().collect()
    }

    pub fn sign(&self) -> Q {
        if self.word.len() % 2 == 0 {
            q(1)
        } else {
            q(-1)
        }
    }

    /// `s_1s_3`-style rendering with 1-based labels, `1` for the identity.
    pub fn format_word(&self) -> String {
        if self.word.is_empty() {
            "1".into()
        } else {
            self.word.iter().map(|i| format!("s{}", i + 1)).collect::<Vec<_>>().join("*")
        }
    }
}

#[derive(Debug)]
pub struct WeylGroup {
    pub kind: Component,
    pub generators: Vec<Weight>,
    pub labels: Vec<usize>,
    gram_gen: Vec<Weight>,
    coef: Vec<Q>,
    pub elements: Vec<WeylElement>,
    index: HashMap<Vec<Q>, usize>,
    x0: Weight,
}

impl WeylGroup {
    fn position_of_label(&self, label: usize) -> usize {
        self.labels.iter().position(|&l| l == label).expect("label belongs to group")
    }

    fn reflect(&self, g: usize, v: &Weight) -> Weight {
        let ip: Q = v
            .0
            .iter()
            .zip(&self.gram_gen[g].0)
            .filter(|(a, b)| !a.is_zero() && !b.is_zero())
            .map(|(a, b)| a * b)
            .sum();
        if ip.is_zero() {
            return v.clone();
        }
        let c = ip * &self.coef[g];
        Weight(v.0.iter().zip(&self.generators[g].0).map(|(x, a)| x - &c * a).collect())
    }

    /// Applies the word right to left.
    pub fn act_word(&self, word: &[usize], v: &Weight) -> Weight {
        let mut out = v.clone();
        for &l in word.iter().rev() {
            out = self.reflect(self.position_of_label(l), &out);
        }
        out
    }

    pub fn act(&self, w: &WeylElement, v: &Weight) -> Result<Weight> {
        if v.dim() != self.x0.dim() {
            return Err(Error::DimensionMismatch { expected: self.x0.dim(), got: v.dim() });
        }
        Ok(self.act_word(&w.word, v))
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    /// Canonical element for an arbitrary word over this group's labels.
    pub fn element_from_word(&self, word: &[usize]) -> Option<&WeylElement> {
        if word.iter().any(|l| !self.labels.contains(l)) {
            return None;
        }
        let key = self.act_word(word, &self.x0);
        self.index.get(&key.0).map(|&i| &self.elements[i])
    }

    pub fn identity(&self) -> &WeylElement {
        &self.elements[0]
    }
}

#[derive(Debug, Default)]
pub(crate) struct GroupCache {
    groups: Mutex<HashMap<Component, Arc<WeylGroup>>>,
}

impl Clone for GroupCache {
    fn clone(&self) -> Self {
        GroupCache::default()
    }
}

/// Simple system of the positive even roots: the indecomposable ones.
pub fn even_simple_system(datum: &RootDatum) -> Vec<Weight> {
    let pos: Vec<&Weight> = datum.positive_even.iter().map(|r| &r.weight).collect();
    let set: BTreeSet<&Vec<Q>> = pos.iter().map(|w| &w.0).collect();
    let mut out: Vec<Weight> = datum.pi0.iter().map(|&i| datum.simple[i].weight.clone()).collect();
    for a in &pos {
        if out.contains(a) {
            continue;
        }
        let decomposable = pos.iter().any(|b| {
            let c = *a - *b;
            set.contains(&c.0)
        });
        if !decomposable {
            out.push((*a).clone());
        }
    }
    out
}

fn build(datum: &RootDatum, kind: Component, cap: usize) -> Result<WeylGroup> {
    let (generators, labels): (Vec<Weight>, Vec<usize>) = match kind {
        Component::All => datum
            .pi0
            .iter()
            .enumerate()
            .map(|(k, &s)| (datum.simple[s].weight.clone(), k))
            .unzip(),
        Component::One | Component::Two => {
            let c = if kind == Component::One { 0 } else { 1 };
            let comp = datum.components.get(c).ok_or(Error::NoSecondComponent)?;
            datum
                .pi0
                .iter()
                .enumerate()
                .filter(|(_, s)| comp.contains(s))
                .map(|(k, &s)| (datum.simple[s].weight.clone(), k))
                .unzip()
        }
        Component::FullEven => {
            let gens = even_simple_system(datum);
            let labels = (0..gens.len()).collect();
            (gens, labels)
        }
    };
    let dim = datum.ambient_dim();
    let gram_gen: Vec<Weight> = generators
        .iter()
        .map(|a| Weight((0..dim).map(|i| (0..dim).map(|j| &datum.gram[i][j] * &a.0[j]).sum()).collect()))
        .collect();
    let coef: Vec<Q> = generators.iter().map(|a| q(2) / datum.ip(a, a)).collect();
    // regular vector: pairs to 1 with every generator
    let r = generators.len();
    let cartan: Vec<Vec<Q>> = (0..r)
        .map(|j| (0..r).map(|k| datum.ip(&generators[k], &generators[j]) * &coef[j]).collect())
        .collect();
    let inv = linalg::inverse(&cartan).ok_or_else(|| Error::Internal("generators are dependent".into()))?;
    let mut x0 = Weight::zero(dim);
    for k in 0..r {
        let c: Q = (0..r).map(|j| inv[k][j].clone()).sum();
        x0 = &x0 + &generators[k].scale(&c);
    }
    let mut g = WeylGroup {
        kind,
        generators,
        labels,
        gram_gen,
        coef,
        elements: vec![],
        index: HashMap::new(),
        x0: x0.clone(),
    };
    let mut order: Vec<usize> = (0..r).collect();
    order.sort_by_key(|&i| g.labels[i]);
    let mut elements = vec![WeylElement { word: vec![], key: x0.clone() }];
    let mut index = HashMap::new();
    index.insert(x0.0.clone(), 0usize);
    let mut layer: Vec<usize> = vec![0];
    while !layer.is_empty() {
        let mut next = Vec::new();
        for &gi in &order {
            for &e in &layer {
                let key = g.reflect(gi, &elements[e].key);
                if index.contains_key(&key.0) {
                    continue;
                }
                if elements.len() >= cap {
                    return Err(Error::GroupTooLarge { cap });
                }
                let mut word = vec![g.labels[gi]];
                word.extend_from_slice(&elements[e].word);
                index.insert(key.0.clone(), elements.len());
                next.push(elements.len());
                elements.push(WeylElement { word, key });
            }
        }
        layer = next;
    }
    g.elements = elements;
    g.index = index;
    Ok(g)
}

/// Enumerates the group of the chosen component, cached per datum.
pub fn generate_group(datum: &RootDatum, component: Component) -> Result<Arc<WeylGroup>> {
    generate_group_capped(datum, component, group_cap())
}

pub fn generate_group_capped(datum: &RootDatum, component: Component, cap: usize) -> Result<Arc<WeylGroup>> {
    if let Some(g) = datum.groups.groups.lock().expect("cache lock").get(&component) {
        if g.len() <= cap {
            return Ok(g.clone());
        }
        return Err(Error::GroupTooLarge { cap });
    }
    let g = Arc::new(build(datum, component, cap)?);
    datum.groups.groups.lock().expect("cache lock").insert(component, g.clone());
    Ok(g)
}

pub fn support(w: &WeylElement) -> BTreeSet<usize> {
    w.support()
}

/// Splits w = u v with u in the first component group and v in the second.
pub fn component_split(datum: &RootDatum, w: &WeylElement) -> Result<(WeylElement, WeylElement)> {
    if datum.components.len() < 2 {
        return Err(Error::NoSecondComponent);
    }
    let in_comp = |c: usize, l: usize| datum.components[c].contains(&datum.pi0[l]);
    let uw: Vec<usize> = w.word.iter().copied().filter(|&l| in_comp(0, l)).collect();
    let vw: Vec<usize> = w.word.iter().copied().filter(|&l| in_comp(1, l)).collect();
    let g1 = generate_group(datum, Component::One)?;
    let g2 = generate_group(datum, Component::Two)?;
    let u = g1.element_from_word(&uw).ok_or_else(|| Error::Internal("split lookup".into()))?;
    let v = g2.element_from_word(&vw).ok_or_else(|| Error::Internal("split lookup".into()))?;
    Ok((u.clone(), v.clone()))
}

/// Number of positive even roots in the span of the group's generators
/// that `w` sends to negative roots.
pub fn inversion_count(datum: &RootDatum, g: &WeylGroup, w: &WeylElement) -> usize {
    let gens: Vec<Vec<Q>> = g.generators.iter().map(|a| a.0.clone()).collect();
    let ex = linalg::Expander::new(&gens, datum.ambient_dim()).expect("independent generators");
    datum
        .positive_even
        .iter()
        .filter(|r| ex.expand(&r.weight.0).is_some())
        .filter(|r| {
            let img = g.act_word(&w.word, &r.weight);
            ex.expand(&img.0).expect("in span").iter().any(|c| c.is_negative())
        })
        .count()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sl32_component_orders() {
        let d = RootDatum::sl(3, 2);
        let g1 = generate_group(&d, Component::One).unwrap();
        let mut lens: Vec<usize> = g1.elements.iter().map(|e| e.length()).collect();
        lens.sort();
        assert_eq!(lens, vec![0, 1, 1, 2, 2, 3]);
        let words: Vec<String> = g1.elements.iter().map(|e| e.format_word()).collect();
        assert_eq!(words, vec!["1", "s1", "s2", "s1*s2", "s2*s1", "s1*s2*s1"]);
        assert_eq!(generate_group(&d, Component::Two).unwrap().len(), 2);
        assert_eq!(generate_group(&d, Component::All).unwrap().len(), 12);
    }

    #[test]
    fn no_second_component() {
        let d = RootDatum::g3();
        assert_eq!(generate_group(&d, Component::Two).unwrap_err(), Error::NoSecondComponent);
    }

    #[test]
    fn classical_orders() {
        assert_eq!(generate_group(&RootDatum::osp2(2), Component::All).unwrap().len(), 8);
        assert_eq!(generate_group(&RootDatum::g3(), Component::All).unwrap().len(), 12);
        assert_eq!(generate_group(&RootDatum::g3(), Component::FullEven).unwrap().len(), 24);
        assert_eq!(generate_group(&RootDatum::f4(), Component::All).unwrap().len(), 48);
        assert_eq!(generate_group(&RootDatum::f4(), Component::FullEven).unwrap().len(), 96);
        assert_eq!(generate_group(&RootDatum::osp1(3), Component::FullEven).unwrap().len(), 48);
    }

    #[test]
    fn cap_is_enforced() {
        let d = RootDatum::sl(5, 1);
        assert_eq!(
            generate_group_capped(&d, Component::All, 10).unwrap_err(),
            Error::GroupTooLarge { cap: 10 }
        );
        assert_eq!(generate_group_capped(&d, Component::All, 1000).unwrap().len(), 120);
    }

    #[test]
    fn reflection_action() {
        let d = RootDatum::sl(3, 2);
        let g = generate_group(&d, Component::All).unwrap();
        let s1 = g.element_from_word(&[0]).unwrap();
        let e1 = Weight::from_ints(&[1, 0, 0, 0, 0]);
        assert_eq!(g.act(s1, &e1).unwrap(), Weight::from_ints(&[0, 1, 0, 0, 0]));
        assert_eq!(g.act(g.identity(), &e1).unwrap(), e1);
    }

    #[test]
    fn split_examples() {
        let d = RootDatum::sl(3, 2);
        let g = generate_group(&d, Component::All).unwrap();
        let w = g.element_from_word(&[2, 0, 1]).unwrap();
        let (u, v) = component_split(&d, w).unwrap();
        assert_eq!(u.word, vec![0, 1]);
        assert_eq!(v.word, vec![2]);
        let (u, v) = component_split(&d, g.identity()).unwrap();
        assert!(u.is_identity() && v.is_identity());
    }

    #[test]
    fn lengths_are_inversion_counts() {
        for d in [RootDatum::sl(3, 2), RootDatum::osp2(3), RootDatum::g3(), RootDatum::f4()] {
            let g = generate_group(&d, Component::All).unwrap();
            for w in &g.elements {
                assert_eq!(inversion_count(&d, &g, w), w.length());
            }
        }
    }
}
