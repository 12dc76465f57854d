//! The coherent nerve of a finite enriched category.

use std::collections::HashMap;
use std::sync::Arc;

use presheaf_engine::{Extension, FinPresheaf, Search, Site};
use theta_cat::{Category, Theta, ThetaObj};

use crate::enriched::{box_index, EnrichedCat, EnrichedFunctor};
use crate::realize::{realize, realize_map, Realization};
use crate::RealizationError;

/// Checks that the box of `d` holds every nondegenerate cell of the homs
/// of `𝔠(t)`: labels of `hom(i,j)` multiply, and the cube of `hom(0,n)`
/// has dimension `n-1`.
fn check_box(d: &EnrichedCat, t: &ThetaObj) -> Result<(), RealizationError> {
    let site = d.site();
    let base = site.category().left.clone();
    let mut need_c = 0;
    for i in 0..t.n() {
        let mut s = 0;
        for j in i..t.n() {
            s += base.dim(&t.labels[j]);
            need_c = need_c.max(s);
        }
    }
    let need_m = t.n().saturating_sub(1);
    for c in base.objects(need_c) {
        box_index(site, &c, need_m)?;
    }
    Ok(())
}

fn object_maps(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = vec![Vec::new()];
    for _ in 0..n {
        out = out
            .into_iter()
            .flat_map(|v: Vec<usize>| {
                (0..k).map(move |y| {
                    let mut w = v.clone();
                    w.push(y);
                    w
                })
            })
            .collect();
    }
    out
}

/// All enriched functors `𝔠(q) -> d`, where `q` is a realized labeled
/// simplex over the site of `d`, in canonical order: object maps
/// lexicographically, then hom maps in search order.
pub fn functors_from(q: &Realization, d: &Arc<EnrichedCat>) -> Result<Vec<EnrichedFunctor>, RealizationError> {
    let src = q.cat();
    src.site().check_same(d.site())?;
    let n = src.len();
    let site = d.site().clone();
    let mut pairs: Vec<(usize, usize)> = (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).collect();
    pairs.sort_by_key(|&(i, j)| (j - i, i));
    let mut out = Vec::new();
    for phi in object_maps(n, d.len()) {
        // comps[x][y][t]
        let mut comps: Vec<Vec<Vec<Vec<u32>>>> = (0..n)
            .map(|x| {
                (0..n)
                    .map(|y| {
                        (0..site.len())
                            .map(|t| {
                                if x == y {
                                    vec![d.identity_at(phi[x], t); src.hom(x, x).size(t)]
                                } else {
                                    Vec::new()
                                }
                            })
                            .collect()
                    })
                    .collect()
            })
            .collect();
        extend(src, d, &phi, &pairs, 0, &mut comps, &mut out)?;
    }
    Ok(out)
}

fn extend(
    src: &Arc<EnrichedCat>,
    d: &Arc<EnrichedCat>,
    phi: &[usize],
    pairs: &[(usize, usize)],
    at: usize,
    comps: &mut Vec<Vec<Vec<Vec<u32>>>>,
    out: &mut Vec<EnrichedFunctor>,
) -> Result<(), RealizationError> {
    if at == pairs.len() {
        let f = EnrichedFunctor::new(src.clone(), d.clone(), phi.to_vec(), comps.clone())?;
        f.check_laws()?;
        out.push(f);
        return Ok(());
    }
    let (i, j) = pairs[at];
    let site = d.site();
    let mut ext = Extension::new(src.hom(i, j).clone(), d.hom(phi[i], phi[j]).clone())?;
    for k in i + 1..j {
        for t in 0..site.len() {
            for f in 0..src.hom(i, k).size(t) as u32 {
                for g in 0..src.hom(k, j).size(t) as u32 {
                    let e = src.compose(i, k, j, t, f, g);
                    let v = d.compose(phi[i], phi[k], phi[j], t, comps[i][k][t][f as usize], comps[k][j][t][g as usize]);
                    if ext.fix(t, e, v).is_err() {
                        return Ok(());
                    }
                }
            }
        }
    }
    let maps = match ext.run(&|_, _, _| true, usize::MAX, usize::MAX) {
        Search::Complete(v) => v,
        Search::OutOfBudget(_) => return Err(RealizationError::Budget("hom map search".into())),
    };
    for m in maps {
        comps[i][j] = m.components().to_vec();
        extend(src, d, phi, pairs, at + 1, comps, out)?;
    }
    comps[i][j] = vec![Vec::new(); site.len()];
    Ok(())
}

/// `(𝔑D)(t)`: the enriched functors `𝔠(t) -> D`.
pub fn coherent_nerve(d: &Arc<EnrichedCat>, t: &ThetaObj) -> Result<Vec<EnrichedFunctor>, RealizationError> {
    check_box(d, t)?;
    let q = realize(t, d.site().clone())?;
    functors_from(&q, d)
}

/// The truncated `Θ[C]`-set `𝔑D` on `site`. Elements are named by their
/// object maps, e.g. `0,1`, with `#k` appended when several functors share
/// one object map.
pub fn nerve_presheaf(d: &Arc<EnrichedCat>, site: Arc<Site<Theta>>) -> Result<FinPresheaf<Theta>, RealizationError> {
    let cat = site.category().clone();
    if cat.level() == 0 || cat.base() != d.site().category().left {
        return Err(RealizationError::Shape(format!("{} does not match the enrichment", cat.name())));
    }
    let mut reals = Vec::with_capacity(site.len());
    let mut elems: Vec<Vec<EnrichedFunctor>> = Vec::with_capacity(site.len());
    let mut index: Vec<HashMap<(Vec<usize>, Vec<Vec<Vec<u32>>>), u32>> = Vec::with_capacity(site.len());
    for o in site.objects() {
        check_box(d, o)?;
        let q = realize(o, d.site().clone())?;
        let fs = functors_from(&q, d)?;
        index.push(fs.iter().enumerate().map(|(i, f)| (f.key(), i as u32)).collect());
        elems.push(fs);
        reals.push(q);
    }
    let names = elems
        .iter()
        .map(|fs| {
            let mut count: HashMap<&[usize], usize> = HashMap::new();
            for f in fs {
                *count.entry(f.objects()).or_default() += 1;
            }
            let mut seen: HashMap<&[usize], usize> = HashMap::new();
            fs.iter()
                .map(|f| {
                    let base = f.objects().iter().map(|y| y.to_string()).collect::<Vec<_>>().join(",");
                    if count[f.objects()] > 1 {
                        let k = seen.entry(f.objects()).or_default();
                        *k += 1;
                        format!("{base}#{}", *k - 1)
                    } else {
                        base
                    }
                })
                .collect()
        })
        .collect();
    let mut actions = Vec::with_capacity(site.arrow_count());
    for a in 0..site.arrow_count() as presheaf_engine::ArrowId {
        let (s, t) = site.ends(a);
        let g = realize_map(site.arrow(a), &reals[s], &reals[t])?;
        let mut act = Vec::with_capacity(elems[t].len());
        for f in &elems[t] {
            let h = g.then(f)?;
            let y = index[s]
                .get(&h.key())
                .ok_or_else(|| RealizationError::Law("restricted functor is missing from the nerve".into()))?;
            act.push(*y);
        }
        actions.push(act);
    }
    Ok(FinPresheaf::from_tables(site, names, actions)?)
}
