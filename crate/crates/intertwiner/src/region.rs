//! Simplicial subsets of `Δ^n` and labels on spine edges.

use std::collections::BTreeSet;
use std::fmt;

use theta_cat::{Category, Theta, ThetaMap, ThetaObj};

/// A simplicial subset of `Δ^n`, stored as its downward-closed family of
/// nonempty vertex sets.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SimplicialSubset {
    n: usize,
    faces: BTreeSet<Vec<usize>>,
}

fn subsets(v: &[usize]) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    for mask in 1u32..(1 << v.len()) {
        out.push(v.iter().enumerate().filter(|(i, _)| mask >> i & 1 == 1).map(|(_, &x)| x).collect());
    }
    out
}

impl SimplicialSubset {
    pub fn empty(n: usize) -> Self {
        SimplicialSubset {
            n,
            faces: BTreeSet::new(),
        }
    }

    /// The subset generated by the given simplices (vertex sets).
    pub fn generated(n: usize, simplices: &[Vec<usize>]) -> Self {
        let mut faces = BTreeSet::new();
        for s in simplices {
            let mut s = s.clone();
            s.sort();
            s.dedup();
            assert!(s.iter().all(|&v| v <= n), "vertex out of range");
            faces.extend(subsets(&s));
        }
        SimplicialSubset { n, faces }
    }

    pub fn full(n: usize) -> Self {
        SimplicialSubset::generated(n, &[(0..=n).collect()])
    }

    /// `∂_i Δ^n`, the face opposite vertex `i`.
    pub fn face(n: usize, i: usize) -> Self {
        SimplicialSubset::generated(n, &[(0..=n).filter(|&v| v != i).collect()])
    }

    pub fn boundary(n: usize) -> Self {
        let faces: Vec<Vec<usize>> = (0..=n).map(|i| (0..=n).filter(|&v| v != i).collect()).collect();
        SimplicialSubset::generated(n, &faces)
    }

    /// `Λ^n_k`: all faces except the one opposite `k`.
    pub fn horn(n: usize, k: usize) -> Self {
        let faces: Vec<Vec<usize>> = (0..=n)
            .filter(|&i| i != k)
            .map(|i| (0..=n).filter(|&v| v != i).collect())
            .collect();
        SimplicialSubset::generated(n, &faces)
    }

    /// `Sp[n]`: the chain of edges `{i-1, i}`.
    pub fn spine(n: usize) -> Self {
        if n == 0 {
            return SimplicialSubset::full(0);
        }
        let edges: Vec<Vec<usize>> = (1..=n).map(|i| vec![i - 1, i]).collect();
        SimplicialSubset::generated(n, &edges)
    }

    pub fn union(&self, other: &Self) -> Self {
        assert_eq!(self.n, other.n);
        SimplicialSubset {
            n: self.n,
            faces: self.faces.union(&other.faces).cloned().collect(),
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn contains(&self, verts: &[usize]) -> bool {
        self.faces.contains(verts)
    }

    /// Whether the simplex `α : [p] -> [n]` lies in the subset.
    pub fn contains_map(&self, alpha: &[usize]) -> bool {
        let mut v = alpha.to_vec();
        v.dedup();
        self.faces.contains(&v)
    }

    /// Nondegenerate simplices, by dimension then lexicographically.
    pub fn simplices(&self) -> Vec<Vec<usize>> {
        let mut v: Vec<Vec<usize>> = self.faces.iter().cloned().collect();
        v.sort_by(|a, b| a.len().cmp(&b.len()).then(a.cmp(b)));
        v
    }

    /// Simplices not contained in a larger one.
    pub fn maximal(&self) -> Vec<Vec<usize>> {
        let all = self.simplices();
        all.iter()
            .filter(|s| !all.iter().any(|t| t.len() > s.len() && s.iter().all(|v| t.contains(v))))
            .cloned()
            .collect()
    }
}

impl fmt::Display for SimplicialSubset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .maximal()
            .iter()
            .map(|s| s.iter().map(|v| v.to_string()).collect::<Vec<_>>().join(","))
            .collect();
        write!(f, "{}:{{{}}}", self.n, parts.join(" "))
    }
}

/// Which subpresheaf of the representable on the carrier a label is.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum LabelSub {
    Full,
    /// `∂c`: the arrows into `c` that are not minus maps onto `c`.
    Boundary,
    Empty,
    /// An explicit sieve, as the set of its arrows `(source, map)`.
    Custom(BTreeSet<(ThetaObj, ThetaMap)>),
}

/// A subpresheaf of a representable on the base category.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Label {
    pub carrier: ThetaObj,
    pub sub: LabelSub,
}

impl Label {
    pub fn full(c: ThetaObj) -> Self {
        Label {
            carrier: c,
            sub: LabelSub::Full,
        }
    }

    pub fn boundary(c: ThetaObj) -> Self {
        Label {
            carrier: c,
            sub: LabelSub::Boundary,
        }
    }

    pub fn empty(c: ThetaObj) -> Self {
        Label {
            carrier: c,
            sub: LabelSub::Empty,
        }
    }

    /// Whether `g : src -> carrier` belongs to the label.
    pub fn contains(&self, base: &Theta, src: &ThetaObj, g: &ThetaMap) -> bool {
        match &self.sub {
            LabelSub::Full => true,
            LabelSub::Boundary => !base.is_minus(g, &self.carrier),
            LabelSub::Empty => false,
            LabelSub::Custom(set) => set.contains(&(src.clone(), g.clone())),
        }
    }

    /// Descriptor used in serialized regions: `full`, `boundary`, `empty`
    /// or `custom(k)`.
    pub fn descriptor(&self) -> String {
        match &self.sub {
            LabelSub::Full => "full".into(),
            LabelSub::Boundary => "boundary".into(),
            LabelSub::Empty => "empty".into(),
            LabelSub::Custom(s) => format!("custom({})", s.len()),
        }
    }
}

/// A simplicial subset `K ⊆ Δ^n` with a label on each of the `n` spine edges.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LabeledRegion {
    pub k: SimplicialSubset,
    pub labels: Vec<Label>,
}

impl LabeledRegion {
    pub fn new(k: SimplicialSubset, labels: Vec<Label>) -> Self {
        assert_eq!(k.n(), labels.len(), "one label per spine edge");
        LabeledRegion { k, labels }
    }

    /// The object `[n](c_1,…,c_n)` of label carriers.
    pub fn carrier(&self) -> ThetaObj {
        ThetaObj::new(self.labels.iter().map(|l| l.carrier.clone()).collect())
    }

    /// Serialized as `n; maximal simplices; label descriptors`.
    pub fn describe(&self, base: &Theta) -> String {
        let labels: Vec<String> = self
            .labels
            .iter()
            .map(|l| format!("{} {}", l.descriptor(), base.show_obj(&l.carrier)))
            .collect();
        format!("{}; {}", self.k, labels.join(", "))
    }
}
