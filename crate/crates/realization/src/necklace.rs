//! Necklaces `Δ^{m_1} ∨ ⋯ ∨ Δ^{m_k}`, necklace maps into a bipointed
//! simplicial set, and the truncated nerve of the category of necklaces
//! over it.

use std::collections::HashMap;

use presheaf_engine::{ArrowId, FinPresheaf, Site};
use theta_cat::{Theta, ThetaMap, ThetaObj};

use crate::kstar::k_star;
use crate::RealizationError;

/// Bead dimensions, all at least 1. No beads is the point necklace.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Necklace {
    beads: Vec<usize>,
}

impl Necklace {
    pub fn new(beads: Vec<usize>) -> Result<Self, RealizationError> {
        if beads.iter().any(|&m| m == 0) {
            return Err(RealizationError::Shape("beads have dimension at least 1".into()));
        }
        Ok(Necklace { beads })
    }

    pub fn point() -> Self {
        Necklace { beads: Vec::new() }
    }

    pub fn beads(&self) -> &[usize] {
        &self.beads
    }

    /// Vertices are numbered `0..=ω` along the necklace.
    pub fn omega(&self) -> usize {
        self.beads.iter().sum()
    }

    pub fn joints(&self) -> Vec<usize> {
        let mut out = vec![0];
        let mut at = 0;
        for m in &self.beads {
            at += m;
            out.push(at);
        }
        out
    }

    /// First and last vertex of bead `b`.
    pub fn bead_range(&self, b: usize) -> (usize, usize) {
        let s: usize = self.beads[..b].iter().sum();
        (s, s + self.beads[b])
    }
}

impl std::fmt::Display for Necklace {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.beads.is_empty() {
            return write!(f, "Δ^0");
        }
        let parts: Vec<String> = self.beads.iter().map(|m| format!("Δ^{m}")).collect();
        write!(f, "{}", parts.join("∨"))
    }
}

/// A map `T -> X`: one simplex per bead and the image of every vertex.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct NecklaceMap {
    pub necklace: Necklace,
    pub beads: Vec<u32>,
    pub vertices: Vec<u32>,
}

struct Vertices<'a> {
    x: &'a FinPresheaf<Theta>,
    arrows: Vec<Vec<ArrowId>>,
}

impl<'a> Vertices<'a> {
    fn new(x: &'a FinPresheaf<Theta>) -> Result<Self, RealizationError> {
        let site = x.site();
        if site.category().level() != 1 {
            return Err(RealizationError::Shape("necklaces map into simplicial sets (Θ_1)".into()));
        }
        let p = site
            .index_of(&ThetaObj::point())
            .ok_or_else(|| RealizationError::Truncation("no vertices".into()))?;
        let mut arrows = Vec::new();
        for d in 0.. {
            let Some(t) = site.index_of(&ThetaObj::simplex(d)) else {
                break;
            };
            arrows.push((0..=d).map(|v| site.arrow_id(p, t, &ThetaMap::simplicial(&[v])).unwrap()).collect());
        }
        Ok(Vertices { x, arrows })
    }

    fn top(&self) -> usize {
        self.arrows.len() - 1
    }

    fn of(&self, d: usize, z: u32) -> Vec<u32> {
        self.arrows[d].iter().map(|&a| self.x.act(a, z)).collect()
    }
}

fn distinct(v: &[u32]) -> bool {
    (0..v.len()).all(|i| !v[i + 1..].contains(&v[i]))
}

/// All maps `T -> X` sending `α` to `x` and `ω` to `y`, in canonical order.
/// With `injective_beads`, every bead must have distinct vertices.
pub fn necklace_maps(t: &Necklace, x: &FinPresheaf<Theta>, from: u32, to: u32, injective_beads: bool) -> Result<Vec<NecklaceMap>, RealizationError> {
    let verts = Vertices::new(x)?;
    if let Some(&m) = t.beads.iter().max() {
        if m > verts.top() {
            return Err(RealizationError::Truncation(format!("beads of dimension {m} exceed the truncation")));
        }
    }
    if t.beads.is_empty() {
        return Ok(if from == to {
            vec![NecklaceMap {
                necklace: t.clone(),
                beads: Vec::new(),
                vertices: vec![from],
            }]
        } else {
            Vec::new()
        });
    }
    let mut out = Vec::new();
    let mut stack: Vec<(Vec<u32>, Vec<u32>)> = vec![(Vec::new(), vec![from])];
    while let Some((beads, vs)) = stack.pop() {
        let b = beads.len();
        if b == t.beads.len() {
            if *vs.last().unwrap() == to {
                out.push(NecklaceMap {
                    necklace: t.clone(),
                    beads,
                    vertices: vs,
                });
            }
            continue;
        }
        let d = t.beads[b];
        let at = *vs.last().unwrap();
        let dt = x.site().index_of(&ThetaObj::simplex(d)).unwrap();
        for z in (0..x.size(dt) as u32).rev() {
            let v = verts.of(d, z);
            if v[0] != at || (injective_beads && !distinct(&v)) {
                continue;
            }
            let mut nb = beads.clone();
            nb.push(z);
            let mut nv = vs.clone();
            nv.extend_from_slice(&v[1..]);
            stack.push((nb, nv));
        }
    }
    Ok(out)
}

/// The truncated nerve of the category of bead-injective necklace maps
/// into `X` from `x` to `y`, with its objects and morphisms.
#[derive(Debug, Clone)]
pub struct NecSpace {
    pub objects: Vec<NecklaceMap>,
    /// `(source, target, vertex map)`.
    pub morphisms: Vec<(usize, usize, Vec<usize>)>,
    pub nerve: FinPresheaf<Theta>,
    /// True when no necklace was cut off by the bead budget or by the
    /// truncation of `X`.
    pub complete: bool,
}

impl NecSpace {
    /// Number of connected components of the necklace category.
    pub fn pi0(&self) -> usize {
        let mut parent: Vec<usize> = (0..self.objects.len()).collect();
        fn root(p: &mut [usize], mut a: usize) -> usize {
            while p[a] != a {
                p[a] = p[p[a]];
                a = p[a];
            }
            a
        }
        for (s, t, _) in &self.morphisms {
            let (a, b) = (root(&mut parent, *s), root(&mut parent, *t));
            parent[a] = b;
        }
        (0..parent.len()).filter(|&a| root(&mut parent, a) == a).count()
    }
}

/// Morphisms `T -> T'` over `X`: monotone vertex maps fixing both ends,
/// sending each bead into one bead, with matching simplices.
fn morphisms_between(x: &FinPresheaf<Theta>, a: &NecklaceMap, b: &NecklaceMap) -> Vec<Vec<usize>> {
    let (n, m) = (a.necklace.omega(), b.necklace.omega());
    let site = x.site();
    let mut out = Vec::new();
    let mut stack: Vec<Vec<usize>> = vec![vec![0]];
    while let Some(phi) = stack.pop() {
        let k = phi.len();
        if k == n + 1 {
            if phi[n] != m {
                continue;
            }
            let ok = (0..a.necklace.beads.len()).all(|bead| {
                let (s, e) = a.necklace.bead_range(bead);
                let hit = (0..b.necklace.beads.len()).find(|&c| {
                    let (s2, e2) = b.necklace.bead_range(c);
                    s2 <= phi[s] && phi[e] <= e2
                });
                let Some(c) = hit else { return false };
                let (s2, _) = b.necklace.bead_range(c);
                let delta: Vec<usize> = (s..=e).map(|v| phi[v] - s2).collect();
                let (dt, dc) = (
                    site.index_of(&ThetaObj::simplex(a.necklace.beads[bead])).unwrap(),
                    site.index_of(&ThetaObj::simplex(b.necklace.beads[c])).unwrap(),
                );
                let arrow = site.arrow_id(dt, dc, &ThetaMap::simplicial(&delta)).unwrap();
                x.act(arrow, b.beads[c]) == a.beads[bead]
            });
            if ok {
                out.push(phi);
            }
            continue;
        }
        let last = phi[k - 1];
        for v in (last..=m).rev() {
            let mut next = phi.clone();
            next.push(v);
            stack.push(next);
        }
    }
    out.sort();
    out
}

/// Bead-injective necklace maps with at most `bead_budget` beads, and the
/// nerve of their category truncated at `degree_bound`.
pub fn nec_mapping_space(x: &FinPresheaf<Theta>, from: u32, to: u32, bead_budget: usize, degree_bound: usize) -> Result<NecSpace, RealizationError> {
    let verts = Vertices::new(x)?;
    let site = x.site();
    let top = verts.top();
    // injective simplices of positive dimension, as bead candidates
    let mut edges: Vec<(usize, u32, Vec<u32>)> = Vec::new();
    for d in 1..=top {
        let dt = site.index_of(&ThetaObj::simplex(d)).unwrap();
        for z in 0..x.size(dt) as u32 {
            let v = verts.of(d, z);
            if distinct(&v) {
                edges.push((d, z, v));
            }
        }
    }
    let mut objects = Vec::new();
    let mut stack: Vec<(Vec<usize>, Vec<u32>, Vec<u32>)> = vec![(Vec::new(), Vec::new(), vec![from])];
    while let Some((dims, beads, vs)) = stack.pop() {
        let at = *vs.last().unwrap();
        if at == to {
            objects.push(NecklaceMap {
                necklace: Necklace { beads: dims.clone() },
                beads: beads.clone(),
                vertices: vs.clone(),
            });
        }
        if dims.len() == bead_budget {
            continue;
        }
        for (d, z, v) in edges.iter().rev() {
            if v[0] == at {
                let (mut nd, mut nb, mut nv) = (dims.clone(), beads.clone(), vs.clone());
                nd.push(*d);
                nb.push(*z);
                nv.extend_from_slice(&v[1..]);
                stack.push((nd, nb, nv));
            }
        }
    }
    objects.sort();
    let complete = bead_graph_complete(&edges, from, to, bead_budget) && !edges.iter().any(|e| e.0 == top);

    let mut homs: HashMap<(usize, usize), Vec<Vec<usize>>> = HashMap::new();
    let mut morphisms = Vec::new();
    for (a, oa) in objects.iter().enumerate() {
        for (b, ob) in objects.iter().enumerate() {
            let ms = morphisms_between(x, oa, ob);
            for phi in &ms {
                morphisms.push((a, b, phi.clone()));
            }
            homs.insert((a, b), ms);
        }
    }
    let nerve = chain_nerve(&objects, &homs, degree_bound)?;
    Ok(NecSpace {
        objects,
        morphisms,
        nerve,
        complete,
    })
}

/// The same space for a `Θ[C]`-set at `c`, through `k^*`.
pub fn nec_mapping_space_at(x: &FinPresheaf<Theta>, c: &ThetaObj, from: u32, to: u32, bead_budget: usize, degree_bound: usize) -> Result<NecSpace, RealizationError> {
    nec_mapping_space(&k_star(x, c)?, from, to, bead_budget, degree_bound)
}

/// Every path from `from` to `to` in the bead graph has at most `budget`
/// steps and no cycle is reachable on such a path.
fn bead_graph_complete(edges: &[(usize, u32, Vec<u32>)], from: u32, to: u32, budget: usize) -> bool {
    let arcs: Vec<(u32, u32)> = edges.iter().map(|(d, _, v)| (v[0], v[*d])).collect();
    let reach = |start: u32, forward: bool| {
        let mut seen = vec![start];
        let mut i = 0;
        while i < seen.len() {
            let u = seen[i];
            for &(a, b) in &arcs {
                let (p, q) = if forward { (a, b) } else { (b, a) };
                if p == u && !seen.contains(&q) {
                    seen.push(q);
                }
            }
            i += 1;
        }
        seen
    };
    let (fw, bw) = (reach(from, true), reach(to, false));
    let live: Vec<u32> = fw.into_iter().filter(|v| bw.contains(v)).collect();
    let inner: Vec<(u32, u32)> = arcs.into_iter().filter(|(a, b)| live.contains(a) && live.contains(b)).collect();
    // longest path by repeated relaxation; more than |live| rounds means a cycle
    let mut best: HashMap<u32, usize> = HashMap::new();
    if live.contains(&from) {
        best.insert(from, 0);
    }
    for _ in 0..=live.len() {
        let mut changed = false;
        for &(a, b) in &inner {
            if let Some(&la) = best.get(&a) {
                if best.get(&b).is_none_or(|&lb| lb < la + 1) {
                    best.insert(b, la + 1);
                    changed = true;
                }
            }
        }
        if !changed {
            return best.get(&to).copied().unwrap_or(0) <= budget;
        }
    }
    false
}

fn chain_nerve(
    objects: &[NecklaceMap],
    homs: &HashMap<(usize, usize), Vec<Vec<usize>>>,
    degree_bound: usize,
) -> Result<FinPresheaf<Theta>, RealizationError> {
    type Chain = (Vec<usize>, Vec<Vec<usize>>);
    let mut levels: Vec<Vec<Chain>> = vec![(0..objects.len()).map(|o| (vec![o], Vec::new())).collect()];
    for m in 1..=degree_bound {
        let mut next = Vec::new();
        for (os, fs) in &levels[m - 1] {
            let last = *os.last().unwrap();
            for b in 0..objects.len() {
                for phi in &homs[&(last, b)] {
                    let (mut o2, mut f2) = (os.clone(), fs.clone());
                    o2.push(b);
                    f2.push(phi.clone());
                    next.push((o2, f2));
                }
            }
        }
        levels.push(next);
    }
    let delta = Site::dim(Theta::new(1), degree_bound);
    let x = FinPresheaf::from_fn(
        delta,
        move |o: &ThetaObj| levels[o.n()].clone(),
        |_, _, beta: &ThetaMap, (os, fs): &Chain| {
            let objs: Vec<usize> = beta.alpha.iter().map(|&p| os[p]).collect();
            let maps = beta
                .alpha
                .windows(2)
                .map(|w| {
                    let mut phi: Vec<usize> = (0..=objects[os[w[0]]].necklace.omega()).collect();
                    for f in &fs[w[0]..w[1]] {
                        phi = phi.iter().map(|&v| f[v]).collect();
                    }
                    phi
                })
                .collect();
            (objs, maps)
        },
        |(os, fs): &Chain| {
            let mut name = os[0].to_string();
            for (o, f) in os[1..].iter().zip(fs) {
                let phi: Vec<String> = f.iter().map(|v| v.to_string()).collect();
                name.push_str(&format!(" -({})-> {o}", phi.join(",")));
            }
            name
        },
    )?;
    Ok(x)
}
