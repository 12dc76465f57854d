//! Finite categories enriched in truncated presheaves on `C × Δ`.

use std::collections::HashMap;
use std::sync::Arc;

use presheaf_engine::{ArrowId, FinPresheaf, PresheafMap, Site};
use theta_cat::{Category, Product, Theta, ThetaObj};

use crate::RealizationError;

/// `C × Δ` with `C = Θ_{k-1}` on the left.
pub type BoxCat = Product<Theta, Theta>;

pub type Hom = Arc<FinPresheaf<BoxCat>>;

/// Objects `(c, [m])` with `dim c ≤ dc` and `m ≤ dm`.
pub fn box_site(base: &Theta, dc: usize, dm: usize) -> Arc<Site<BoxCat>> {
    let cat = Product::new(base.clone(), Theta::new(1));
    let objs = cat.objects_box(dc, dm);
    Site::new(cat, objs, &format!("box({dc},{dm})"))
}

/// Index of `(c, [m])` in a box site.
pub fn box_index(site: &Site<BoxCat>, c: &ThetaObj, m: usize) -> Result<usize, RealizationError> {
    site.index_of(&(c.clone(), ThetaObj::simplex(m))).ok_or_else(|| {
        RealizationError::Truncation(format!(
            "({} | [{m}]) is not in {}",
            site.category().left.show_obj(c),
            site.key()
        ))
    })
}

/// Composition `hom(i,j)(t) × hom(j,k)(t) -> hom(i,k)(t)`, stored per box
/// object as a row-major table.
pub type CompTable = Vec<Vec<u32>>;

#[derive(Debug, Clone)]
pub struct EnrichedCat {
    site: Arc<Site<BoxCat>>,
    names: Vec<String>,
    homs: Vec<Vec<Hom>>,
    compose: HashMap<(usize, usize, usize), CompTable>,
    identities: Vec<u32>,
}

impl EnrichedCat {
    /// `compose` must hold a table for every triple of objects;
    /// `identities[x]` is an element of `hom(x,x)` at the terminal object.
    pub fn new(
        site: Arc<Site<BoxCat>>,
        names: Vec<String>,
        homs: Vec<Vec<Hom>>,
        compose: HashMap<(usize, usize, usize), CompTable>,
        identities: Vec<u32>,
    ) -> Result<Self, RealizationError> {
        let n = names.len();
        let shape = |s: &str| RealizationError::Shape(s.to_string());
        if homs.len() != n || homs.iter().any(|r| r.len() != n) || identities.len() != n {
            return Err(shape("one hom per pair and one identity per object expected"));
        }
        for row in &homs {
            for h in row {
                h.site().check_same(&site)?;
            }
        }
        let term = terminal_index(&site)?;
        for x in 0..n {
            if identities[x] as usize >= homs[x][x].size(term) {
                return Err(shape("identity is not an element of the endo-hom"));
            }
        }
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    let tab = compose.get(&(i, j, k)).ok_or_else(|| shape("missing composition table"))?;
                    if tab.len() != site.len() {
                        return Err(shape("composition table per box object expected"));
                    }
                    for (t, row) in tab.iter().enumerate() {
                        let (a, b, c) = (homs[i][j].size(t), homs[j][k].size(t), homs[i][k].size(t));
                        if row.len() != a * b || row.iter().any(|&z| z as usize >= c) {
                            return Err(shape("composition table has the wrong shape"));
                        }
                    }
                }
            }
        }
        Ok(EnrichedCat {
            site,
            names,
            homs,
            compose,
            identities,
        })
    }

    /// Objects `0..n` with `hom(x,y)` a point when `le[x][y]` and empty
    /// otherwise. `le` must be a preorder.
    pub fn from_preorder(site: Arc<Site<BoxCat>>, le: &[Vec<bool>]) -> Result<Self, RealizationError> {
        let n = le.len();
        let point: Hom = Arc::new(FinPresheaf::terminal(site.clone()));
        let empty: Hom = Arc::new(FinPresheaf::empty(site.clone()));
        let homs: Vec<Vec<Hom>> = (0..n)
            .map(|x| (0..n).map(|y| if le[x][y] { point.clone() } else { empty.clone() }).collect())
            .collect();
        let mut compose = HashMap::new();
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    let full = le[i][j] && le[j][k];
                    if full && !le[i][k] {
                        return Err(RealizationError::Shape("relation is not transitive".into()));
                    }
                    let row = if full { vec![0] } else { Vec::new() };
                    compose.insert((i, j, k), vec![row; site.len()]);
                }
            }
        }
        if (0..n).any(|x| !le[x][x]) {
            return Err(RealizationError::Shape("relation is not reflexive".into()));
        }
        let names = (0..n).map(|x| x.to_string()).collect();
        EnrichedCat::new(site, names, homs, compose, vec![0; n])
    }

    /// Objects `0, 1` with `hom(0,1) = c` constant in `Δ`, points on the
    /// diagonal and `hom(1,0)` empty.
    pub fn free_arrow(site: Arc<Site<BoxCat>>, c: &ThetaObj) -> Result<Self, RealizationError> {
        let base = site.category().left.clone();
        let shown = base.clone();
        let c = c.clone();
        let arrow = FinPresheaf::from_fn(
            site.clone(),
            |o: &(ThetaObj, ThetaObj)| {
                let mut h = base.hom(&o.0, &c).as_ref().clone();
                h.sort();
                h
            },
            |_, _, f, x| base.compose(x, &f.0),
            |x| shown.show_mor(x),
        )?;
        let arrow: Hom = Arc::new(arrow);
        let point: Hom = Arc::new(FinPresheaf::terminal(site.clone()));
        let empty: Hom = Arc::new(FinPresheaf::empty(site.clone()));
        let homs = vec![vec![point.clone(), arrow.clone()], vec![empty, point]];
        let mut compose = HashMap::new();
        for i in 0..2 {
            for j in 0..2 {
                for k in 0..2 {
                    let tab: CompTable = (0..site.len())
                        .map(|t| {
                            let (a, b) = (homs[i][j].size(t), homs[j][k].size(t));
                            let mut row = Vec::with_capacity(a * b);
                            for x in 0..a as u32 {
                                for y in 0..b as u32 {
                                    // one side is always an identity point
                                    row.push(if i == j { y } else { x });
                                }
                            }
                            row
                        })
                        .collect();
                    compose.insert((i, j, k), tab);
                }
            }
        }
        EnrichedCat::new(site, vec!["0".into(), "1".into()], homs, compose, vec![0, 0])
    }

    pub fn site(&self) -> &Arc<Site<BoxCat>> {
        &self.site
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn hom(&self, x: usize, y: usize) -> &Hom {
        &self.homs[x][y]
    }

    pub fn identity(&self, x: usize) -> u32 {
        self.identities[x]
    }

    /// The identity of `x` restricted to the box object `t`.
    pub fn identity_at(&self, x: usize, t: usize) -> u32 {
        let term = terminal_index(&self.site).expect("checked at construction");
        let a = self.site.arrows(t, term).start;
        self.homs[x][x].act(a, self.identities[x])
    }

    /// `g ∘ f` for `f ∈ hom(i,j)(t)`, `g ∈ hom(j,k)(t)`.
    pub fn compose(&self, i: usize, j: usize, k: usize, t: usize, f: u32, g: u32) -> u32 {
        let w = self.homs[j][k].size(t) as u32;
        self.compose[&(i, j, k)][t][(f * w + g) as usize]
    }

    pub fn table(&self, i: usize, j: usize, k: usize) -> &CompTable {
        &self.compose[&(i, j, k)]
    }

    /// The composition as a map out of the product presheaf.
    pub fn composition_map(&self, i: usize, j: usize, k: usize) -> Result<PresheafMap<BoxCat>, RealizationError> {
        let prod = Arc::new(self.homs[i][j].product(&self.homs[j][k])?);
        Ok(PresheafMap::new(prod, self.homs[i][k].clone(), self.compose[&(i, j, k)].clone())?)
    }

    /// Naturality of composition, associativity and both unit laws, at
    /// every box object and every stored element.
    pub fn check_laws(&self) -> Result<(), RealizationError> {
        let n = self.len();
        let site = &self.site;
        let law = |s: String| Err(RealizationError::Law(s));
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    let (hij, hjk, hik) = (&self.homs[i][j], &self.homs[j][k], &self.homs[i][k]);
                    for a in 0..site.arrow_count() as ArrowId {
                        let (s, t) = site.ends(a);
                        for f in 0..hij.size(t) as u32 {
                            for g in 0..hjk.size(t) as u32 {
                                let l = self.compose(i, j, k, s, hij.act(a, f), hjk.act(a, g));
                                let r = hik.act(a, self.compose(i, j, k, t, f, g));
                                if l != r {
                                    return law(format!("composition {i}->{j}->{k} is not natural"));
                                }
                            }
                        }
                    }
                }
            }
        }
        for t in 0..site.len() {
            for x in 0..n {
                let id = self.identity_at(x, t);
                for y in 0..n {
                    for f in 0..self.homs[x][y].size(t) as u32 {
                        if self.compose(x, x, y, t, id, f) != f {
                            return law(format!("left unit fails on {x}->{y}"));
                        }
                    }
                    for f in 0..self.homs[y][x].size(t) as u32 {
                        if self.compose(y, x, x, t, f, id) != f {
                            return law(format!("right unit fails on {y}->{x}"));
                        }
                    }
                }
            }
            for i in 0..n {
                for j in 0..n {
                    for k in 0..n {
                        for l in 0..n {
                            for f in 0..self.homs[i][j].size(t) as u32 {
                                for g in 0..self.homs[j][k].size(t) as u32 {
                                    let gf = self.compose(i, j, k, t, f, g);
                                    for h in 0..self.homs[k][l].size(t) as u32 {
                                        let a = self.compose(i, k, l, t, gf, h);
                                        let b = self.compose(i, j, l, t, f, self.compose(j, k, l, t, g, h));
                                        if a != b {
                                            return law(format!("associativity fails on {i}->{j}->{k}->{l}"));
                                        }
                                    }
                                }
                            }
                        }
                    }
                }
            }
        }
        Ok(())
    }
}

pub(crate) fn terminal_index(site: &Site<BoxCat>) -> Result<usize, RealizationError> {
    let term = site.category().terminal();
    site.index_of(&term)
        .ok_or_else(|| RealizationError::Truncation(format!("{} lacks the terminal object", site.key())))
}

/// An enriched functor, given on objects and by one natural map per pair.
#[derive(Debug, Clone, PartialEq)]
pub struct EnrichedFunctor {
    source: Arc<EnrichedCat>,
    target: Arc<EnrichedCat>,
    objects: Vec<usize>,
    homs: Vec<Vec<PresheafMap<BoxCat>>>,
}

impl PartialEq for EnrichedCat {
    fn eq(&self, other: &Self) -> bool {
        if std::ptr::eq(self, other) {
            return true;
        }
        self.site.same(&other.site)
            && self.names == other.names
            && self.homs == other.homs
            && self.compose == other.compose
            && self.identities == other.identities
    }
}

impl EnrichedFunctor {
    /// Checks shapes and naturality of each component; the functor laws are
    /// checked by [`EnrichedFunctor::check_laws`].
    pub fn new(
        source: Arc<EnrichedCat>,
        target: Arc<EnrichedCat>,
        objects: Vec<usize>,
        comps: Vec<Vec<Vec<Vec<u32>>>>,
    ) -> Result<Self, RealizationError> {
        let n = source.len();
        if objects.len() != n || objects.iter().any(|&y| y >= target.len()) || comps.len() != n {
            return Err(RealizationError::Shape("object map has the wrong shape".into()));
        }
        let mut homs = Vec::with_capacity(n);
        for (x, row) in comps.into_iter().enumerate() {
            if row.len() != n {
                return Err(RealizationError::Shape("one hom map per pair expected".into()));
            }
            let mut out = Vec::with_capacity(n);
            for (y, c) in row.into_iter().enumerate() {
                let tgt = target.hom(objects[x], objects[y]).clone();
                out.push(PresheafMap::new(source.hom(x, y).clone(), tgt, c)?);
            }
            homs.push(out);
        }
        Ok(EnrichedFunctor {
            source,
            target,
            objects,
            homs,
        })
    }

    pub fn identity(cat: Arc<EnrichedCat>) -> Self {
        let n = cat.len();
        let homs = (0..n)
            .map(|x| (0..n).map(|y| PresheafMap::identity(cat.hom(x, y).clone())).collect())
            .collect();
        EnrichedFunctor {
            source: cat.clone(),
            target: cat,
            objects: (0..n).collect(),
            homs,
        }
    }

    pub fn source(&self) -> &Arc<EnrichedCat> {
        &self.source
    }

    pub fn target(&self) -> &Arc<EnrichedCat> {
        &self.target
    }

    pub fn objects(&self) -> &[usize] {
        &self.objects
    }

    pub fn hom(&self, x: usize, y: usize) -> &PresheafMap<BoxCat> {
        &self.homs[x][y]
    }

    /// `g ∘ self`.
    pub fn then(&self, g: &EnrichedFunctor) -> Result<Self, RealizationError> {
        if self.target.as_ref() != g.source.as_ref() {
            return Err(RealizationError::Shape("functors are not composable".into()));
        }
        let n = self.source.len();
        let mut homs = Vec::with_capacity(n);
        for x in 0..n {
            let mut row = Vec::with_capacity(n);
            for y in 0..n {
                row.push(g.homs[self.objects[x]][self.objects[y]].after(&self.homs[x][y])?);
            }
            homs.push(row);
        }
        Ok(EnrichedFunctor {
            source: self.source.clone(),
            target: g.target.clone(),
            objects: self.objects.iter().map(|&y| g.objects[y]).collect(),
            homs,
        })
    }

    /// Preservation of identities and of composition, elementwise.
    pub fn check_laws(&self) -> Result<(), RealizationError> {
        let (s, d) = (&self.source, &self.target);
        let n = s.len();
        let site = s.site();
        let law = |m: String| Err(RealizationError::Law(m));
        for t in 0..site.len() {
            for x in 0..n {
                let fx = self.objects[x];
                if self.homs[x][x].apply(t, s.identity_at(x, t)) != d.identity_at(fx, t) {
                    return law(format!("identity of {x} is not preserved"));
                }
            }
            for i in 0..n {
                for j in 0..n {
                    for k in 0..n {
                        let (fi, fj, fk) = (self.objects[i], self.objects[j], self.objects[k]);
                        for f in 0..s.hom(i, j).size(t) as u32 {
                            for g in 0..s.hom(j, k).size(t) as u32 {
                                let l = self.homs[i][k].apply(t, s.compose(i, j, k, t, f, g));
                                let r = d.compose(fi, fj, fk, t, self.homs[i][j].apply(t, f), self.homs[j][k].apply(t, g));
                                if l != r {
                                    return law(format!("composition {i}->{j}->{k} is not preserved"));
                                }
                            }
                        }
                    }
                }
            }
        }
        Ok(())
    }

    /// Canonical comparison key: object map and all components.
    pub fn key(&self) -> (Vec<usize>, Vec<Vec<Vec<u32>>>) {
        let comps = self
            .homs
            .iter()
            .flat_map(|row| row.iter().map(|m| m.components().to_vec()))
            .collect();
        (self.objects.clone(), comps)
    }
}
