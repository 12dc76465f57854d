//! The precategory functor `k^*`: `(k^*X)_c = X([•](c,…,c))`.

use std::sync::Arc;

use intertwiner::Label;
use presheaf_engine::{restrict, FinPresheaf, Site};
use theta_cat::{Category, Theta, ThetaMap, ThetaObj};

use crate::RealizationError;

/// `[k](c,…,c)`.
pub fn constant_object(c: &ThetaObj, k: usize) -> ThetaObj {
    ThetaObj::new(vec![c.clone(); k])
}

/// `(β, id_c, …)` : `[k](c,…) -> [m](c,…)`.
pub fn constant_map(base: &Theta, c: &ThetaObj, beta: &[usize]) -> ThetaMap {
    let id = base.identity(c);
    ThetaMap {
        alpha: beta.to_vec(),
        comps: beta.windows(2).map(|w| vec![id.clone(); w[1] - w[0]]).collect(),
    }
}

/// `(α, g, …, g)` : `[k](c',…) -> [k](c,…)` for `g : c' -> c`.
pub fn label_map(g: &ThetaMap, k: usize) -> ThetaMap {
    ThetaMap {
        alpha: (0..=k).collect(),
        comps: vec![vec![g.clone()]; k],
    }
}

/// `k^*X` at `c`, as a simplicial set truncated at the largest `k` with
/// `[k](c,…,c)` in the site of `X`.
pub fn k_star(x: &FinPresheaf<Theta>, c: &ThetaObj) -> Result<FinPresheaf<Theta>, RealizationError> {
    let site = x.site();
    let cat = site.category().clone();
    if cat.level() == 0 {
        return Err(RealizationError::Shape("k^* needs Θ_k with k ≥ 1".into()));
    }
    let base = cat.base();
    let mut top = None;
    for k in 0..=site.max_dim() {
        if site.index_of(&constant_object(c, k)).is_none() {
            break;
        }
        top = Some(k);
    }
    let top = top.ok_or_else(|| RealizationError::Truncation(format!("[0] is not in {}", site.key())))?;
    let delta = Site::dim(Theta::new(1), top);
    let (c1, c2) = (c.clone(), c.clone());
    Ok(restrict(
        x,
        delta,
        move |o| constant_object(&c1, o.n()),
        move |_, _, f| constant_map(&base, &c2, &f.alpha),
    )?)
}

/// `k^*(V_{Δ^n}(A⃗))` at `c`, computed directly from hom-sets: level `k`
/// is the set of maps `[k](c,…,c) -> [n](c⃗)` whose components lie in the
/// labels. Truncated at level `top`.
pub fn k_star_labeled(labels: &[Label], c: &ThetaObj, top: usize, level: usize) -> Result<(FinPresheaf<Theta>, Vec<Vec<ThetaMap>>), RealizationError> {
    if level == 0 {
        return Err(RealizationError::Shape("labels live in Θ_k with k ≥ 1".into()));
    }
    let cat = Theta::new(level);
    let base = cat.base();
    let target = ThetaObj::new(labels.iter().map(|l| l.carrier.clone()).collect());
    let delta = Site::dim(Theta::new(1), top);
    let keys: Vec<Vec<ThetaMap>> = delta
        .objects()
        .iter()
        .map(|o| {
            let src = constant_object(c, o.n());
            let mut h: Vec<ThetaMap> = cat
                .hom(&src, &target)
                .iter()
                .filter(|f| {
                    (1..f.alpha.len()).all(|i| {
                        (f.alpha[i - 1] + 1..=f.alpha[i]).all(|j| labels[j - 1].contains(&base, c, f.comp(i, j)))
                    })
                })
                .cloned()
                .collect();
            h.sort();
            h
        })
        .collect();
    let lookup = Arc::new(keys.clone());
    let d2 = delta.clone();
    let (cat2, b2, c2) = (cat.clone(), base.clone(), c.clone());
    let x = FinPresheaf::from_fn(
        delta,
        move |o: &ThetaObj| lookup[d2.index_of(o).expect("site object")].clone(),
        move |_, _, beta: &ThetaMap, f: &ThetaMap| f.compose(&constant_map(&b2, &c2, &beta.alpha)),
        move |f| cat2.show_mor(f),
    )?;
    Ok((x, keys))
}
