//! The realization `Q` of labeled simplices and of maps between them.
//!
//! `hom(i,j) = A_{i+1} × Δ¹ × A_{i+2} × ⋯ × Δ¹ × A_j`, one `Δ¹` factor per
//! interior vertex. Composition places the shared vertex at `1`.

use std::collections::HashMap;
use std::sync::Arc;

use intertwiner::Label;
use presheaf_engine::{FinPresheaf, Site};
use theta_cat::{Category, Theta, ThetaMap, ThetaObj};

use crate::enriched::{BoxCat, CompTable, EnrichedCat, EnrichedFunctor, Hom};
use crate::RealizationError;

/// An element of `hom(i,j)` at `(c, [m])`: one label map `c -> c_l` per
/// slot and one monotone `[m] -> [1]` per interior vertex, as 0/1 values.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct HomKey {
    pub labels: Vec<ThetaMap>,
    pub edges: Vec<Vec<u8>>,
}

#[derive(Debug, Clone)]
struct KeyTable {
    keys: Vec<Vec<HomKey>>,
    index: Vec<HashMap<HomKey, u32>>,
}

/// `Q([n](A⃗))` together with the keys of its hom elements.
#[derive(Debug, Clone)]
pub struct Realization {
    labels: Vec<Label>,
    cat: Arc<EnrichedCat>,
    tables: Vec<Vec<Option<Arc<KeyTable>>>>,
}

/// The monotone maps `[m] -> [1]`, by number of ones.
pub fn cube_edges(m: usize) -> Vec<Vec<u8>> {
    (0..=m + 1)
        .map(|k| {
            let mut v = vec![0u8; m + 1 - k];
            v.extend(std::iter::repeat(1u8).take(k));
            v
        })
        .collect()
}

fn label_choices(base: &Theta, label: &Label, c: &ThetaObj) -> Vec<ThetaMap> {
    let mut h: Vec<ThetaMap> = base
        .hom(c, &label.carrier)
        .iter()
        .filter(|g| label.contains(base, c, g))
        .cloned()
        .collect();
    h.sort();
    h
}

fn hom_keys(base: &Theta, labels: &[Label], i: usize, j: usize, c: &ThetaObj, m: usize) -> Vec<HomKey> {
    let mut out = vec![HomKey {
        labels: Vec::new(),
        edges: Vec::new(),
    }];
    let edges = cube_edges(m);
    for l in i + 1..=j {
        if l > i + 1 {
            out = out
                .into_iter()
                .flat_map(|k| {
                    edges.iter().map(move |e| {
                        let mut k = k.clone();
                        k.edges.push(e.clone());
                        k
                    })
                })
                .collect();
        }
        let choices = label_choices(base, &labels[l - 1], c);
        out = out
            .into_iter()
            .flat_map(|k| {
                choices.iter().map(move |g| {
                    let mut k = k.clone();
                    k.labels.push(g.clone());
                    k
                })
            })
            .collect();
    }
    out
}

fn show_key(base: &Theta, k: &HomKey) -> String {
    let mut parts = Vec::new();
    for (p, g) in k.labels.iter().enumerate() {
        if p > 0 {
            parts.push(k.edges[p - 1].iter().map(|b| b.to_string()).collect::<String>());
        }
        parts.push(base.show_mor(g));
    }
    parts.join(";")
}

impl Realization {
    pub fn n(&self) -> usize {
        self.labels.len()
    }

    pub fn labels(&self) -> &[Label] {
        &self.labels
    }

    /// `[n](c⃗)` with the label carriers.
    pub fn carrier(&self) -> ThetaObj {
        ThetaObj::new(self.labels.iter().map(|l| l.carrier.clone()).collect())
    }

    pub fn cat(&self) -> &Arc<EnrichedCat> {
        &self.cat
    }

    pub fn site(&self) -> &Arc<Site<BoxCat>> {
        self.cat.site()
    }

    /// Key of `x ∈ hom(i,j)(t)` for `i < j`.
    pub fn key(&self, i: usize, j: usize, t: usize, x: u32) -> &HomKey {
        &self.table(i, j).keys[t][x as usize]
    }

    pub fn find(&self, i: usize, j: usize, t: usize, k: &HomKey) -> Option<u32> {
        self.table(i, j).index[t].get(k).copied()
    }

    fn table(&self, i: usize, j: usize) -> &KeyTable {
        self.tables[i][j].as_ref().expect("keys are stored for i < j")
    }
}

/// `Q([n](A⃗))` over the box site.
pub fn realize_labeled_simplex(labels: &[Label], site: Arc<Site<BoxCat>>) -> Result<Realization, RealizationError> {
    let base = site.category().left.clone();
    for l in labels {
        if !base.contains(&l.carrier) {
            return Err(RealizationError::Shape(format!("label {} is not in {}", base.show_obj(&l.carrier), base.name())));
        }
    }
    let n = labels.len();
    let point: Hom = Arc::new(FinPresheaf::terminal(site.clone()).renamed(vec![vec!["id".to_string()]; site.len()])?);
    let empty: Hom = Arc::new(FinPresheaf::empty(site.clone()));
    let mut homs: Vec<Vec<Hom>> = vec![vec![empty; n + 1]; n + 1];
    let mut tables: Vec<Vec<Option<Arc<KeyTable>>>> = vec![vec![None; n + 1]; n + 1];
    for i in 0..=n {
        homs[i][i] = point.clone();
        for j in i + 1..=n {
            let keys: Vec<Vec<HomKey>> = site
                .objects()
                .iter()
                .map(|(c, mm)| hom_keys(&base, labels, i, j, c, mm.n()))
                .collect();
            let index: Vec<HashMap<HomKey, u32>> = keys
                .iter()
                .map(|v| v.iter().enumerate().map(|(x, k)| (k.clone(), x as u32)).collect())
                .collect();
            let table = Arc::new(KeyTable { keys, index });
            let lookup = table.clone();
            let (b1, b2) = (base.clone(), base.clone());
            let h = FinPresheaf::from_fn(
                site.clone(),
                |o: &(ThetaObj, ThetaObj)| lookup.keys[site.index_of(o).expect("site object")].clone(),
                |_, _, f: &(ThetaMap, ThetaMap), k: &HomKey| HomKey {
                    labels: k.labels.iter().map(|a| b1.compose(a, &f.0)).collect(),
                    edges: k.edges.iter().map(|e| f.1.alpha.iter().map(|&p| e[p]).collect()).collect(),
                },
                |k| show_key(&b2, k),
            )?;
            homs[i][j] = Arc::new(h);
            tables[i][j] = Some(table);
        }
    }
    let mut compose = HashMap::new();
    for i in 0..=n {
        for j in 0..=n {
            for k in 0..=n {
                let tab: CompTable = (0..site.len())
                    .map(|t| {
                        let (a, b) = (homs[i][j].size(t) as u32, homs[j][k].size(t) as u32);
                        let mut row = Vec::with_capacity((a * b) as usize);
                        for f in 0..a {
                            for g in 0..b {
                                row.push(if i == j {
                                    g
                                } else if j == k {
                                    f
                                } else {
                                    let (kf, kg) = (
                                        &tables[i][j].as_ref().unwrap().keys[t][f as usize],
                                        &tables[j][k].as_ref().unwrap().keys[t][g as usize],
                                    );
                                    let m = site.object(t).1.n();
                                    let mut key = kf.clone();
                                    key.labels.extend(kg.labels.iter().cloned());
                                    key.edges.push(vec![1; m + 1]);
                                    key.edges.extend(kg.edges.iter().cloned());
                                    tables[i][k].as_ref().unwrap().index[t][&key]
                                });
                            }
                        }
                        row
                    })
                    .collect();
                compose.insert((i, j, k), tab);
            }
        }
    }
    let names = (0..=n).map(|x| x.to_string()).collect();
    let cat = EnrichedCat::new(site, names, homs, compose, vec![0; n + 1])?;
    Ok(Realization {
        labels: labels.to_vec(),
        cat: Arc::new(cat),
        tables,
    })
}

/// `Q` of the representable `[n](c⃗)`.
pub fn realize(t: &ThetaObj, site: Arc<Site<BoxCat>>) -> Result<Realization, RealizationError> {
    let labels: Vec<Label> = t.labels.iter().map(|c| Label::full(c.clone())).collect();
    realize_labeled_simplex(&labels, site)
}

/// `Q(f)` for `f : [n](c⃗) -> [m](d⃗)` between the carriers of `src` and
/// `tgt`.
///
/// Label slots map through the components of `f`. A target vertex that is
/// the image of several interior source vertices gets the pointwise maximum
/// of their coordinates; one outside the image gets `0`.
pub fn realize_map(f: &ThetaMap, src: &Realization, tgt: &Realization) -> Result<EnrichedFunctor, RealizationError> {
    let site = src.site().clone();
    site.check_same(tgt.site())?;
    let base = site.category().left.clone();
    let (n, m) = (src.n(), tgt.n());
    let alpha = &f.alpha;
    if alpha.len() != n + 1 || alpha.last().copied().unwrap_or(0) > m || f.comps.len() != n {
        return Err(RealizationError::Shape("map does not fit the two simplices".into()));
    }
    let mut comps = Vec::with_capacity(n + 1);
    for a in 0..=n {
        let mut row = Vec::with_capacity(n + 1);
        for b in 0..=n {
            let h = src.cat.hom(a, b);
            let mut per_t = Vec::with_capacity(site.len());
            for t in 0..site.len() {
                let (c, mm) = site.object(t);
                let width = mm.n() + 1;
                let mut col = Vec::with_capacity(h.size(t));
                for x in 0..h.size(t) as u32 {
                    if a > b || alpha[a] == alpha[b] {
                        col.push(0);
                        continue;
                    }
                    let k = src.key(a, b, t, x);
                    let mut labels = Vec::with_capacity(alpha[b] - alpha[a]);
                    let mut l = a + 1;
                    for q in alpha[a] + 1..=alpha[b] {
                        while alpha[l] < q {
                            l += 1;
                        }
                        let y = base.compose(f.comp(l, q), &k.labels[l - a - 1]);
                        if !tgt.labels[q - 1].contains(&base, c, &y) {
                            return Err(RealizationError::Shape(format!(
                                "component into slot {q} leaves the target label"
                            )));
                        }
                        labels.push(y);
                    }
                    let mut edges = Vec::with_capacity(alpha[b] - alpha[a]);
                    for q in alpha[a] + 1..alpha[b] {
                        let mut u = vec![0u8; width];
                        for l in a + 1..b {
                            if alpha[l] == q {
                                for (p, v) in u.iter_mut().enumerate() {
                                    *v = (*v).max(k.edges[l - a - 1][p]);
                                }
                            }
                        }
                        edges.push(u);
                    }
                    let key = HomKey { labels, edges };
                    let y = tgt.find(alpha[a], alpha[b], t, &key).ok_or_else(|| {
                        RealizationError::Shape("image element is missing from the target hom".into())
                    })?;
                    col.push(y);
                }
                per_t.push(col);
            }
            row.push(per_t);
        }
        comps.push(row);
    }
    EnrichedFunctor::new(src.cat.clone(), tgt.cat.clone(), alpha.clone(), comps)
}
