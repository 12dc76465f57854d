//! Cosimplicial resolutions of `[1](c)` and the mapping objects they define.
//!
//! * `R`: `[n+1](*,…,*,c)` with the face `{0..n}` collapsed to a point.
//! * `L`: `[n+1](c,*,…,*)` with the face `{1..n+1}` collapsed.
//! * `cyl`: `𝓗Δ^n × [1](c)` with each end `𝓗Δ^n × {e}` collapsed.
//! * `E`: the same with `E^n = 𝓗(cosk₀Δ^n)` in place of `𝓗Δ^n`.

use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;

use intertwiner::{v_subobject, GeneratorId, Label, LabeledRegion, Library, SimplicialSubset};
use presheaf_engine::{
    pushout, replay, CellCertificate, CertStep, Extension, FinPresheaf, PresheafMap, Replay, Search, Site, Subobject,
};
use theta_cat::{Category, Theta, ThetaMap, ThetaObj};

use crate::RealizationError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Flavor {
    R,
    L,
    Cyl,
    E,
}

impl fmt::Display for Flavor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Flavor::R => "R",
            Flavor::L => "L",
            Flavor::Cyl => "cyl",
            Flavor::E => "E",
        })
    }
}

impl std::str::FromStr for Flavor {
    type Err = RealizationError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "R" => Ok(Flavor::R),
            "L" => Ok(Flavor::L),
            "cyl" => Ok(Flavor::Cyl),
            "E" => Ok(Flavor::E),
            _ => Err(RealizationError::Shape(format!("unknown flavor {s:?}"))),
        }
    }
}

/// A bipointed quotient `ambient -> realized`.
#[derive(Debug, Clone)]
pub struct Resolution {
    pub flavor: Flavor,
    pub c: ThetaObj,
    pub n: usize,
    pub realized: Arc<FinPresheaf<Theta>>,
    /// The two distinguished vertices, in `realized([0])`.
    pub source: u32,
    pub target: u32,
    ambient: Arc<FinPresheaf<Theta>>,
    quotient: PresheafMap<Theta>,
    /// Element keys of the ambient presheaf for `cyl` and `E`: the vertex
    /// tuple and the element of `[1](c)`.
    keys: Option<Vec<Vec<(Vec<usize>, u32)>>>,
}

impl Resolution {
    pub fn ambient(&self) -> &Arc<FinPresheaf<Theta>> {
        &self.ambient
    }

    /// The quotient map from the ambient presheaf.
    pub fn quotient(&self) -> &PresheafMap<Theta> {
        &self.quotient
    }

    /// Number of vertices of the realized object.
    pub fn vertex_count(&self) -> usize {
        let pt = self.realized.site().index_of(&ThetaObj::point()).expect("sites contain [0]");
        self.realized.size(pt)
    }
}

/// The root simplex of `R` or `L` in degree `n`.
pub fn resolution_root(flavor: Flavor, c: &ThetaObj, n: usize) -> Result<ThetaObj, RealizationError> {
    let mut labels = vec![ThetaObj::point(); n + 1];
    match flavor {
        Flavor::R => labels[n] = c.clone(),
        Flavor::L => labels[0] = c.clone(),
        _ => return Err(RealizationError::Shape(format!("{flavor} has no root simplex"))),
    }
    Ok(ThetaObj::new(labels))
}

fn rep_element(site: &Site<Theta>, s: &ThetaObj, t: &ThetaObj, f: &ThetaMap) -> Result<u32, RealizationError> {
    let (si, ti) = (site.require(s)?, site.require(t)?);
    let a = site
        .arrow_id(si, ti, f)
        .ok_or_else(|| RealizationError::Shape("not a map of the site".into()))?;
    Ok(a - site.arrows(si, ti).start)
}

/// The component `c_i -> d_j` used by structure maps: the identity between
/// equal labels, the unique map to `*` otherwise.
fn collapse_comp(base: &Theta, from: &ThetaObj, to: &ThetaObj) -> Result<ThetaMap, RealizationError> {
    if from == to {
        return Ok(base.identity(from));
    }
    if to.labels.is_empty() {
        return Ok(base.hom(from, to)[0].clone());
    }
    Err(RealizationError::Shape("no canonical label map".into()))
}

/// The map of roots `[n+1](…) -> [m+1](…)` induced by `β : [n] -> [m]`.
fn root_map(flavor: Flavor, base: &Theta, src: &ThetaObj, tgt: &ThetaObj, beta: &[usize]) -> Result<ThetaMap, RealizationError> {
    let alpha: Vec<usize> = match flavor {
        Flavor::R => beta.iter().copied().chain(std::iter::once(tgt.n())).collect(),
        _ => std::iter::once(0).chain(beta.iter().map(|b| b + 1)).collect(),
    };
    let mut comps = Vec::with_capacity(src.n());
    for i in 1..=src.n() {
        let mut slot = Vec::new();
        for j in alpha[i - 1] + 1..=alpha[i] {
            slot.push(collapse_comp(base, &src.labels[i - 1], &tgt.labels[j - 1])?);
        }
        comps.push(slot);
    }
    Ok(ThetaMap { alpha, comps })
}

fn bipointed(realized: &FinPresheaf<Theta>, source: u32, target: u32) -> Result<(), RealizationError> {
    if source == target {
        return Err(RealizationError::Shape("the two distinguished vertices coincide".into()));
    }
    let _ = realized;
    Ok(())
}

/// The resolution of the given flavor in degree `n`, over `site`.
pub fn resolution(flavor: Flavor, c: &ThetaObj, n: usize, site: Arc<Site<Theta>>) -> Result<Resolution, RealizationError> {
    let cat = site.category().clone();
    if cat.level() == 0 || !cat.base().contains(c) {
        return Err(RealizationError::Shape(format!("{} is not a label of {}", cat.base().show_obj(c), cat.name())));
    }
    let pt = ThetaObj::point();
    match flavor {
        Flavor::R | Flavor::L => {
            let root = resolution_root(flavor, c, n)?;
            site.require(&root)
                .map_err(|_| RealizationError::Truncation(format!("{} is not in {}", cat.show_obj(&root), site.key())))?;
            let rep = Arc::new(FinPresheaf::representable(site.clone(), &root));
            let drop = if flavor == Flavor::R { n + 1 } else { 0 };
            let labels: Vec<Label> = root.labels.iter().map(|l| Label::full(l.clone())).collect();
            let face = v_subobject(&LabeledRegion::new(SimplicialSubset::face(n + 1, drop), labels), &rep)?;
            let (k, incl) = face.materialize();
            let point = Arc::new(FinPresheaf::terminal(site.clone()));
            let collapse = PresheafMap::new_unchecked(k.clone(), point, (0..site.len()).map(|t| vec![0; k.size(t)]).collect())?;
            let po = pushout(&incl, &collapse)?;
            let t0 = site.require(&pt)?;
            let kept = if flavor == Flavor::R { n + 1 } else { 0 };
            let v = rep_element(&site, &pt, &root, &ThetaMap { alpha: vec![kept], comps: Vec::new() })?;
            let other = po.from_target.apply(t0, v);
            let (source, target) = if flavor == Flavor::R { (0, other) } else { (other, 0) };
            bipointed(&po.object, source, target)?;
            Ok(Resolution {
                flavor,
                c: c.clone(),
                n,
                realized: po.object.clone(),
                source,
                target,
                ambient: rep,
                quotient: po.from_target,
                keys: None,
            })
        }
        Flavor::Cyl | Flavor::E => {
            let arrow = ThetaObj::new(vec![c.clone()]);
            site.require(&arrow)?;
            let rep1 = Arc::new(FinPresheaf::representable(site.clone(), &arrow));
            let all = flavor == Flavor::E;
            let tuples = |k: usize| -> Vec<Vec<usize>> {
                let mut out = vec![Vec::new()];
                for _ in 0..=k {
                    out = out
                        .into_iter()
                        .flat_map(|v: Vec<usize>| {
                            (0..=n).map(move |i| {
                                let mut w = v.clone();
                                w.push(i);
                                w
                            })
                        })
                        .filter(|w: &Vec<usize>| all || w.windows(2).all(|p| p[0] <= p[1]))
                        .collect();
                }
                out
            };
            let h = FinPresheaf::from_fn(
                site.clone(),
                |o: &ThetaObj| tuples(o.n()),
                |_, _, f: &ThetaMap, v: &Vec<usize>| f.alpha.iter().map(|&p| v[p]).collect::<Vec<usize>>(),
                |v| v.iter().map(|i| i.to_string()).collect::<Vec<_>>().join(","),
            )?;
            let keys: Vec<Vec<(Vec<usize>, u32)>> = site
                .objects()
                .iter()
                .enumerate()
                .map(|(t, o)| {
                    let mut out = Vec::new();
                    for v in tuples(o.n()) {
                        for y in 0..rep1.size(t) as u32 {
                            out.push((v.clone(), y));
                        }
                    }
                    out
                })
                .collect();
            let prod = Arc::new(h.product(&rep1)?);
            let ends = v_subobject(&LabeledRegion::new(SimplicialSubset::full(1), vec![Label::empty(c.clone())]), &rep1)?;
            let (ends_obj, ends_incl) = ends.materialize();
            let mut back: Vec<HashMap<u32, u32>> = Vec::with_capacity(site.len());
            for t in 0..site.len() {
                back.push(ends_incl.component(t).iter().enumerate().map(|(i, &y)| (y, i as u32)).collect());
            }
            let members: Vec<Vec<bool>> = (0..site.len())
                .map(|t| keys[t].iter().map(|(_, y)| back[t].contains_key(y)).collect())
                .collect();
            let k = Subobject::from_members(prod.clone(), members)?;
            let (kobj, kincl) = k.materialize();
            let comps: Vec<Vec<u32>> = (0..site.len())
                .map(|t| {
                    let w = rep1.size(t) as u32;
                    kincl.component(t).iter().map(|&p| back[t][&(p % w)]).collect()
                })
                .collect();
            let g = PresheafMap::new(kobj, ends_obj.clone(), comps)?;
            let po = pushout(&kincl, &g)?;
            let t0 = site.require(&pt)?;
            let end = |e: usize| -> Result<u32, RealizationError> {
                let y = rep_element(&site, &pt, &arrow, &ThetaMap { alpha: vec![e], comps: Vec::new() })?;
                Ok(back[t0][&y])
            };
            let (source, target) = (end(0)?, end(1)?);
            bipointed(&po.object, source, target)?;
            Ok(Resolution {
                flavor,
                c: c.clone(),
                n,
                realized: po.object.clone(),
                source,
                target,
                ambient: prod,
                quotient: po.from_target,
                keys: Some(keys),
            })
        }
    }
}

/// The structure map `res_n -> res_m` induced by `β : [n] -> [m]`.
pub fn resolution_map(src: &Resolution, tgt: &Resolution, beta: &[usize]) -> Result<PresheafMap<Theta>, RealizationError> {
    if src.flavor != tgt.flavor || src.c != tgt.c || beta.len() != src.n + 1 || beta.iter().any(|&b| b > tgt.n) {
        return Err(RealizationError::Shape("structure map between incompatible resolutions".into()));
    }
    if beta.windows(2).any(|w| w[0] > w[1]) {
        return Err(RealizationError::Shape("β must be monotone".into()));
    }
    let site = src.realized.site().clone();
    site.check_same(tgt.realized.site())?;
    let n_obj = site.len();
    // the map on ambient elements
    let ambient: Vec<Vec<u32>> = match src.flavor {
        Flavor::R | Flavor::L => {
            let cat = site.category().clone();
            let (rs, rt) = (resolution_root(src.flavor, &src.c, src.n)?, resolution_root(tgt.flavor, &tgt.c, tgt.n)?);
            let f = root_map(src.flavor, &cat.base(), &rs, &rt, beta)?;
            let ti = site.require(&rs)?;
            let e = rep_element(&site, &rs, &rt, &f)?;
            PresheafMap::yoneda(src.ambient.clone(), tgt.ambient.clone(), ti, e)?.components().to_vec()
        }
        Flavor::Cyl | Flavor::E => {
            let (ks, kt) = (src.keys.as_ref().unwrap(), tgt.keys.as_ref().unwrap());
            (0..n_obj)
                .map(|t| {
                    let index: HashMap<&(Vec<usize>, u32), u32> = kt[t].iter().enumerate().map(|(i, k)| (k, i as u32)).collect();
                    ks[t]
                        .iter()
                        .map(|(v, y)| index[&(v.iter().map(|&p| beta[p]).collect::<Vec<usize>>(), *y)])
                        .collect()
                })
                .collect()
        }
    };
    let mut comps: Vec<Vec<u32>> = (0..n_obj).map(|t| vec![u32::MAX; src.realized.size(t)]).collect();
    for t in 0..n_obj {
        for (a, &b) in ambient[t].iter().enumerate() {
            let (p, q) = (src.quotient.apply(t, a as u32), tgt.quotient.apply(t, b));
            let slot = &mut comps[t][p as usize];
            if *slot != u32::MAX && *slot != q {
                return Err(RealizationError::Shape("structure map does not descend to the quotient".into()));
            }
            *slot = q;
        }
    }
    Ok(PresheafMap::new(src.realized.clone(), tgt.realized.clone(), comps)?)
}

/// Certificate that `[1](c) ↪ C^n_L(c)` is a composite of pushouts of the
/// empty-label horn corners `JE:[k+1](c,*,…,*):1`.
///
/// Stage `X_0` is the edge `[0,1](c)`; stage `X_k` adds the simplices
/// `[0,1,i_1,…,i_k](c,*,…,*)` for `1 < i_1 < ⋯ < i_k ≤ n+1`, in
/// lexicographic order.
pub fn resolution_l_filtration(level: usize, c: &ThetaObj, n: usize) -> Result<(CellCertificate<Theta>, Library, Resolution), RealizationError> {
    let cat = Theta::new(level);
    let root = resolution_root(Flavor::L, c, n)?;
    let site = Site::faces(cat.clone(), std::slice::from_ref(&root));
    let res = resolution(Flavor::L, c, n, site.clone())?;
    let base = cat.base();
    let face = |verts: &[usize]| -> Result<(ThetaObj, u32), RealizationError> {
        let k = verts.len() - 1;
        let mut labels = vec![ThetaObj::point(); k];
        labels[0] = c.clone();
        let carrier = ThetaObj::new(labels);
        let mut comps = Vec::with_capacity(k);
        for i in 1..=k {
            let slot = (verts[i - 1] + 1..=verts[i])
                .map(|j| collapse_comp(&base, &carrier.labels[i - 1], &root.labels[j - 1]))
                .collect::<Result<Vec<_>, _>>()?;
            comps.push(slot);
        }
        let f = ThetaMap {
            alpha: verts.to_vec(),
            comps,
        };
        let e = rep_element(&site, &carrier, &root, &f)?;
        let t = site.require(&carrier)?;
        Ok((carrier, res.quotient.apply(t, e)))
    };
    let (edge, e0) = face(&[0, 1])?;
    let rep = Arc::new(FinPresheaf::representable(site.clone(), &edge));
    let claimed = PresheafMap::yoneda(rep, res.realized.clone(), site.require(&edge)?, e0)?;
    let mut steps = Vec::new();
    for k in 1..=n {
        for tail in increasing(2, n + 1, k) {
            let mut verts = vec![0, 1];
            verts.extend(tail);
            let (carrier, element) = face(&verts)?;
            steps.push(CertStep {
                generator: GeneratorId::empty_label_horn(carrier.clone(), 1).show(&cat),
                carrier,
                element,
            });
        }
    }
    Ok((CellCertificate { claimed, steps }, Library::new(site), res))
}

/// Replays a filtration certificate against its generator library.
pub fn check_filtration(cert: &CellCertificate<Theta>, lib: &Library) -> Replay {
    replay(cert, &|id, carrier| lib.resolve(id, carrier))
}

/// Strictly increasing `k`-tuples in `lo..=hi`, lexicographically.
fn increasing(lo: usize, hi: usize, k: usize) -> Vec<Vec<usize>> {
    if k == 0 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for first in lo..=hi {
        for rest in increasing(first + 1, hi, k - 1) {
            let mut v = vec![first];
            v.extend(rest);
            out.push(v);
        }
    }
    out
}

/// Level `n` of `Map_X(x,y)_c`: bipointed maps `C^n_R(c) -> X`.
#[derive(Debug, Clone)]
pub struct MapObject {
    pub maps: Vec<PresheafMap<Theta>>,
    pub complete: bool,
    /// Always false: the mapping object is only meaningful for fibrant `X`,
    /// which is not checked here.
    pub fibrancy_checked: bool,
}

pub fn map_object(x: &Arc<FinPresheaf<Theta>>, from: u32, to: u32, c: &ThetaObj, n: usize, budget: usize) -> Result<MapObject, RealizationError> {
    let site = x.site().clone();
    let cat = site.category().clone();
    let root = resolution_root(Flavor::R, c, n)?;
    for o in Site::faces(cat.clone(), std::slice::from_ref(&root)).objects() {
        if site.index_of(o).is_none() {
            return Err(RealizationError::Truncation(format!(
                "{} is needed for C^{n}_R({}) but missing from {}",
                cat.show_obj(o),
                cat.base().show_obj(c),
                site.key()
            )));
        }
    }
    let pt = site.require(&ThetaObj::point())?;
    if from as usize >= x.size(pt) || to as usize >= x.size(pt) {
        return Err(RealizationError::Shape("distinguished points must be vertices".into()));
    }
    let res = resolution(Flavor::R, c, n, site)?;
    let mut ext = Extension::new(res.realized.clone(), x.clone())?;
    if ext.fix(pt, res.source, from).is_err() || ext.fix(pt, res.target, to).is_err() {
        return Ok(MapObject {
            maps: Vec::new(),
            complete: true,
            fibrancy_checked: false,
        });
    }
    let (maps, complete) = match ext.run(&|_, _, _| true, usize::MAX, budget) {
        Search::Complete(v) => (v, true),
        Search::OutOfBudget(v) => (v, false),
    };
    Ok(MapObject {
        maps,
        complete,
        fibrancy_checked: false,
    })
}
