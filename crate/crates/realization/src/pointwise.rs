//! Pointwise comparison: `Q([n](A⃗))(i,j)` evaluated at `c` against the
//! rigidification hom of the simplicial set `k^*(V_{Δ^n}(A⃗))_c`, the
//! latter enumerated as flagged, totally nondegenerate necklaces.

use std::collections::HashMap;

use intertwiner::Label;
use presheaf_engine::{ez_table, ArrowId, FinPresheaf, Site};
use theta_cat::{Category, Theta, ThetaMap, ThetaObj};

use crate::enriched::{box_index, box_site};
use crate::kstar::{k_star_labeled, label_map};
use crate::realize::{realize_labeled_simplex, HomKey, Realization};
use crate::RealizationError;

/// A simplex of the necklace hom: beads `(dim, element)` and, for every
/// bead vertex that is not a joint, the first flag stage containing it.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
struct DsCell {
    beads: Vec<(usize, u32)>,
    entry: Vec<(usize, usize)>,
}

/// `k^*(V)_c` with its keys and bead data.
struct Side {
    s: FinPresheaf<Theta>,
    keys: Vec<Vec<ThetaMap>>,
    nondeg: Vec<Vec<bool>>,
}

impl Side {
    fn new(labels: &[Label], c: &ThetaObj, level: usize) -> Result<Self, RealizationError> {
        let (s, keys) = k_star_labeled(labels, c, labels.len(), level)?;
        let ez = ez_table(&s)?;
        let nondeg = (0..s.site().len())
            .map(|t| (0..s.size(t) as u32).map(|x| ez.is_nondegenerate(t, x)).collect())
            .collect();
        Ok(Side { s, keys, nondeg })
    }

    fn vertices(&self, d: usize, x: u32) -> &[usize] {
        &self.keys[d][x as usize].alpha
    }

    /// Totally nondegenerate necklaces from `i` to `j`.
    fn necklaces(&self, i: usize, j: usize) -> Result<Vec<Vec<(usize, u32)>>, RealizationError> {
        let mut out = Vec::new();
        let mut stack: Vec<Vec<(usize, u32)>> = vec![Vec::new()];
        while let Some(beads) = stack.pop() {
            let at = beads.last().map(|&(d, x)| *self.vertices(d, x).last().unwrap()).unwrap_or(i);
            if at == j && !beads.is_empty() {
                out.push(beads.clone());
                continue;
            }
            let mut seen: Vec<usize> = vec![i];
            for &(d, x) in &beads {
                seen.extend_from_slice(&self.vertices(d, x)[1..]);
            }
            for d in 1..self.keys.len() {
                for x in 0..self.keys[d].len() as u32 {
                    let v = self.vertices(d, x);
                    if self.nondeg[d][x as usize] && v[0] == at && v[d] != at {
                        if v[1..].iter().any(|u| seen.contains(u)) {
                            return Err(RealizationError::Mismatch("a necklace revisits a vertex".into()));
                        }
                        let mut next = beads.clone();
                        next.push((d, x));
                        stack.push(next);
                    }
                }
            }
        }
        out.sort();
        Ok(out)
    }

    /// All `m`-simplices of the hom from `i` to `j`.
    fn cells(&self, necklaces: &[Vec<(usize, u32)>], m: usize) -> Vec<DsCell> {
        let mut out = Vec::new();
        for beads in necklaces {
            let (joints, verts) = self.joints_and_vertices(beads);
            let free: Vec<usize> = verts.iter().copied().filter(|v| !joints.contains(v)).collect();
            if m == 0 && !free.is_empty() {
                continue;
            }
            let mut stages = vec![1usize; free.len()];
            loop {
                out.push(DsCell {
                    beads: beads.clone(),
                    entry: free.iter().copied().zip(stages.iter().copied()).collect(),
                });
                let mut p = 0;
                while p < stages.len() && stages[p] == m {
                    stages[p] = 1;
                    p += 1;
                }
                if p == stages.len() {
                    break;
                }
                stages[p] += 1;
            }
        }
        out
    }

    fn joints_and_vertices(&self, beads: &[(usize, u32)]) -> (Vec<usize>, Vec<usize>) {
        let mut joints = Vec::new();
        let mut verts = Vec::new();
        for &(d, x) in beads {
            let v = self.vertices(d, x);
            joints.push(v[0]);
            verts.extend_from_slice(&v[..d]);
        }
        let last = beads.last().map(|&(d, x)| self.vertices(d, x)[d]).unwrap();
        joints.push(last);
        verts.push(last);
        (joints, verts)
    }

    /// The restriction of `cell` along `β : [m'] -> [m]`.
    fn act(&self, beta: &[usize], cell: &DsCell) -> Result<DsCell, RealizationError> {
        let (joints, _) = self.joints_and_vertices(&cell.beads);
        let stage = |v: usize| cell.entry.iter().find(|e| e.0 == v).map(|e| e.1).unwrap_or(0);
        let (lo, hi) = (beta[0], *beta.last().unwrap());
        let mut new_joints: Vec<usize> = joints.clone();
        let mut entry = Vec::new();
        for &(v, k) in &cell.entry {
            if k <= lo {
                new_joints.push(v);
            } else if k <= hi {
                let p = beta.iter().position(|&b| b >= k).unwrap();
                entry.push((v, p));
            }
        }
        new_joints.sort();
        let kept = |v: usize| stage(v) <= hi;
        let site = self.s.site();
        let mut beads = Vec::new();
        for w in new_joints.windows(2) {
            let (u, z) = (w[0], w[1]);
            let &(d, x) = cell
                .beads
                .iter()
                .find(|&&(d, x)| {
                    let v = self.vertices(d, x);
                    v[0] <= u && z <= v[d]
                })
                .ok_or_else(|| RealizationError::Mismatch("joint outside every bead".into()))?;
            let v = self.vertices(d, x);
            let delta: Vec<usize> = (0..=d).filter(|&p| v[p] >= u && v[p] <= z && kept(v[p])).collect();
            let e = delta.len() - 1;
            let s = site.index_of(&ThetaObj::simplex(e)).unwrap();
            let a = site
                .arrow_id(s, d, &ThetaMap::simplicial(&delta))
                .ok_or_else(|| RealizationError::Mismatch("bead face is not an arrow".into()))?;
            beads.push((e, self.s.act(a, x)));
        }
        Ok(DsCell { beads, entry })
    }

    /// The element of `Q(i,j)` at `(c, [m])` matching `cell`.
    fn to_q(&self, cell: &DsCell, i: usize, j: usize, m: usize) -> HomKey {
        let stage = |v: usize| cell.entry.iter().find(|e| e.0 == v).map(|e| e.1);
        let (joints, verts) = self.joints_and_vertices(&cell.beads);
        let mut labels = Vec::with_capacity(j - i);
        for l in i + 1..=j {
            let &(d, x) = cell
                .beads
                .iter()
                .find(|&&(d, x)| {
                    let v = self.vertices(d, x);
                    v[0] < l && l <= v[d]
                })
                .expect("necklace covers every slot");
            let f = &self.keys[d][x as usize];
            let p = (1..=d).find(|&p| f.alpha[p - 1] < l && l <= f.alpha[p]).unwrap();
            labels.push(f.comp(p, l).clone());
        }
        let edges = (i + 1..j)
            .map(|v| {
                (0..=m)
                    .map(|k| {
                        let inside = joints.contains(&v) || (verts.contains(&v) && stage(v).is_some_and(|s| s <= k));
                        u8::from(inside)
                    })
                    .collect()
            })
            .collect();
        HomKey { labels, edges }
    }
}

/// Cell counts per level and the number of arrows along which naturality
/// was checked.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PointwiseReport {
    pub levels: Vec<(usize, usize)>,
    pub simplicial_checks: usize,
    pub label_checks: usize,
}

/// Both sides of the comparison for one labeled simplex, up to simplicial
/// level `top` and label objects of dimension at most `dc`.
pub struct Pointwise {
    labels: Vec<Label>,
    level: usize,
    top: usize,
    q: Realization,
    sides: HashMap<ThetaObj, Side>,
}

impl Pointwise {
    /// `level` is `k` with the labels in `Θ_{k-1}`.
    pub fn new(labels: &[Label], level: usize, dc: usize, top: usize) -> Result<Self, RealizationError> {
        let base = Theta::new(level).base();
        let q = realize_labeled_simplex(labels, box_site(&base, dc, top))?;
        Ok(Pointwise {
            labels: labels.to_vec(),
            level,
            top,
            q,
            sides: HashMap::new(),
        })
    }

    pub fn realization(&self) -> &Realization {
        &self.q
    }

    fn side(&mut self, c: &ThetaObj) -> Result<&Side, RealizationError> {
        if !self.sides.contains_key(c) {
            let s = Side::new(&self.labels, c, self.level)?;
            self.sides.insert(c.clone(), s);
        }
        Ok(&self.sides[c])
    }

    /// Builds the explicit bijection at `c` for `i < j`, checks it level by
    /// level, checks naturality in every simplicial arrow of the
    /// truncation, and in every `g : c' -> c` with `c'` in the box.
    pub fn compare(&mut self, c: &ThetaObj, i: usize, j: usize) -> Result<PointwiseReport, RealizationError> {
        let n = self.labels.len();
        if !(i < j && j <= n) {
            return Err(RealizationError::Shape(format!("need 0 ≤ i < j ≤ {n}")));
        }
        let top = self.top;
        let site = self.q.site().clone();
        let base = site.category().left.clone();
        let mismatch = |s: String| RealizationError::Mismatch(s);
        let cells = self.cells_at(c, i, j)?;
        let mut report = PointwiseReport {
            levels: Vec::new(),
            simplicial_checks: 0,
            label_checks: 0,
        };
        let mut index: Vec<HashMap<DsCell, u32>> = Vec::new();
        for (m, level) in cells.iter().enumerate() {
            let t = box_index(&site, c, m)?;
            let h = self.q.cat().hom(i, j);
            if level.len() != h.size(t) {
                return Err(mismatch(format!("level {m}: {} necklace cells, {} in Q", level.len(), h.size(t))));
            }
            let side = &self.sides[c];
            let mut hit = vec![false; h.size(t)];
            for cell in level {
                let key = side.to_q(cell, i, j, m);
                let y = self.q.find(i, j, t, &key).ok_or_else(|| mismatch(format!("level {m}: {key:?} is not in Q")))?;
                if std::mem::replace(&mut hit[y as usize], true) {
                    return Err(mismatch(format!("level {m}: two cells map to {}", h.name(t, y))));
                }
            }
            index.push(level.iter().cloned().enumerate().map(|(x, k)| (k, x as u32)).collect());
            report.levels.push((m, level.len()));
        }
        // simplicial naturality
        let side = &self.sides[c];
        let delta = Site::dim(Theta::new(1), top);
        for a in 0..delta.arrow_count() as ArrowId {
            let (s, t) = delta.ends(a);
            let beta = &delta.arrow(a).alpha;
            let (bs, bt) = (box_index(&site, c, s)?, box_index(&site, c, t)?);
            let arrow = site
                .arrow_id(bs, bt, &(base.identity(c), delta.arrow(a).clone()))
                .expect("box arrow");
            for cell in &cells[t] {
                let face = side.act(beta, cell)?;
                if !index[s].contains_key(&face) {
                    return Err(mismatch(format!("a face of a level {t} cell is not a level {s} cell")));
                }
                let left = side.to_q(&face, i, j, s);
                let y = self.q.find(i, j, bt, &side.to_q(cell, i, j, t)).unwrap();
                let right = self.q.key(i, j, bs, self.q.cat().hom(i, j).act(arrow, y));
                if &left != right {
                    return Err(mismatch(format!("naturality fails along {:?} at level {t}", beta)));
                }
                report.simplicial_checks += 1;
            }
        }
        // naturality in the label object
        let lower: Vec<ThetaObj> = site
            .objects()
            .iter()
            .filter(|o| o.1.n() == 0)
            .map(|o| o.0.clone())
            .collect();
        for c2 in lower {
            let gs = base.hom(&c2, c);
            if gs.is_empty() {
                continue;
            }
            let cells2 = self.cells_at(&c2, i, j)?;
            let (side, side2) = (&self.sides[c], &self.sides[&c2]);
            for g in gs.iter() {
                for (m, level) in cells.iter().enumerate() {
                    let (bt, bs) = (box_index(&site, c, m)?, box_index(&site, &c2, m)?);
                    let arrow = site
                        .arrow_id(bs, bt, &(g.clone(), ThetaMap::simplicial(&(0..=m).collect::<Vec<_>>())))
                        .expect("box arrow");
                    for cell in level {
                        let moved = pull_labels(side, side2, cell, g)?;
                        if !cells2[m].contains(&moved) {
                            return Err(mismatch(format!("restriction along {} leaves the necklace cells", base.show_mor(g))));
                        }
                        let left = side2.to_q(&moved, i, j, m);
                        let y = self.q.find(i, j, bt, &side.to_q(cell, i, j, m)).unwrap();
                        let right = self.q.key(i, j, bs, self.q.cat().hom(i, j).act(arrow, y));
                        if &left != right {
                            return Err(mismatch(format!("naturality fails along {}", base.show_mor(g))));
                        }
                        report.label_checks += 1;
                    }
                }
            }
        }
        Ok(report)
    }

    fn cells_at(&mut self, c: &ThetaObj, i: usize, j: usize) -> Result<Vec<Vec<DsCell>>, RealizationError> {
        let top = self.top;
        let side = self.side(c)?;
        let necklaces = side.necklaces(i, j)?;
        Ok((0..=top).map(|m| side.cells(&necklaces, m)).collect())
    }
}

/// Precomposes every bead with `[d](g,…,g)`.
fn pull_labels(from: &Side, to: &Side, cell: &DsCell, g: &ThetaMap) -> Result<DsCell, RealizationError> {
    let mut beads = Vec::with_capacity(cell.beads.len());
    for &(d, x) in &cell.beads {
        let f = from.keys[d][x as usize].compose(&label_map(g, d));
        let y = to.keys[d]
            .binary_search(&f)
            .map_err(|_| RealizationError::Mismatch("restricted bead is not a simplex".into()))?;
        beads.push((d, y as u32));
    }
    Ok(DsCell {
        beads,
        entry: cell.entry.clone(),
    })
}

/// One-shot comparison at `c` for `i < j`, up to simplicial level `top`.
pub fn pointwise_compare(labels: &[Label], level: usize, c: &ThetaObj, i: usize, j: usize, top: usize) -> Result<PointwiseReport, RealizationError> {
    let base = Theta::new(level).base();
    let mut p = Pointwise::new(labels, level, base.dim(c), top)?;
    p.compare(c, i, j)
}
