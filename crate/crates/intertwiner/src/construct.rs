//! `V_K(A⃗)` as a subobject of the representable `[n](c⃗)`, and the unions
//! built from it: boundaries, horns, spines and corner domains.

use std::sync::Arc;

use presheaf_engine::{FinPresheaf, Site, Subobject};
use theta_cat::{Category, Theta, ThetaMap, ThetaObj};

use crate::region::{Label, LabeledRegion, SimplicialSubset};
use crate::IntertwinerError;

/// Whether the element `f : s -> [n](c⃗)` lies in `V_K(A⃗)`: its simplex
/// lies in `K` and each component `f_{i,j}` lies in `A_j`.
pub fn in_region(base: &Theta, region: &LabeledRegion, s: &ThetaObj, f: &ThetaMap) -> bool {
    if !region.k.contains_map(&f.alpha) {
        return false;
    }
    let a = &f.alpha;
    (1..a.len()).all(|i| (a[i - 1] + 1..=a[i]).all(|j| region.labels[j - 1].contains(base, &s.labels[i - 1], f.comp(i, j))))
}

/// `V_K(A⃗)` inside `ambient`, which must be the representable on the
/// region's carrier.
pub fn v_subobject(region: &LabeledRegion, ambient: &Arc<FinPresheaf<Theta>>) -> Result<Subobject<Theta>, IntertwinerError> {
    let site = ambient.site();
    let t = site.require(&region.carrier())?;
    if (0..site.len()).any(|s| ambient.size(s) != site.hom(s, t).len()) {
        return Err(IntertwinerError::NotRepresentable);
    }
    let base = site.category().base();
    let members = (0..site.len())
        .map(|s| {
            let so = site.object(s);
            site.hom(s, t).iter().map(|f| in_region(&base, region, so, f)).collect()
        })
        .collect();
    Ok(Subobject::from_members(ambient.clone(), members)?)
}

/// `V_K(A⃗)` as a presheaf on `site`.
pub fn v_construct(region: &LabeledRegion, site: Arc<Site<Theta>>) -> Result<FinPresheaf<Theta>, IntertwinerError> {
    let ambient = Arc::new(FinPresheaf::representable(site, &region.carrier()));
    let sub = v_subobject(region, &ambient)?;
    Ok(sub.materialize().0.as_ref().clone())
}

fn full_labels(t: &ThetaObj) -> Vec<Label> {
    t.labels.iter().cloned().map(Label::full).collect()
}

fn with_label(t: &ThetaObj, i: usize, l: Label) -> Vec<Label> {
    let mut v = full_labels(t);
    v[i] = l;
    v
}

fn union_all(ambient: &Arc<FinPresheaf<Theta>>, regions: &[LabeledRegion]) -> Result<Subobject<Theta>, IntertwinerError> {
    let mut acc = Subobject::empty(ambient.clone());
    for r in regions {
        acc = acc.union(&v_subobject(r, ambient)?)?;
    }
    Ok(acc)
}

/// `∂t = V_{∂Δ^n}(c⃗) ∪ ⋃_i V[n](c_1,…,∂c_i,…,c_n)`.
pub fn boundary(t: &ThetaObj, ambient: &Arc<FinPresheaf<Theta>>) -> Result<Subobject<Theta>, IntertwinerError> {
    let n = t.n();
    let mut regions = vec![LabeledRegion::new(
        if n == 0 { SimplicialSubset::empty(0) } else { SimplicialSubset::boundary(n) },
        full_labels(t),
    )];
    for i in 0..n {
        regions.push(LabeledRegion::new(
            SimplicialSubset::full(n),
            with_label(t, i, Label::boundary(t.labels[i].clone())),
        ));
    }
    union_all(ambient, &regions)
}

/// The inner horn `V_{Λ^n_k}(c⃗) ∪ ⋃_i V[n](c_1,…,∂c_i,…,c_n)`.
pub fn horn(t: &ThetaObj, k: usize, ambient: &Arc<FinPresheaf<Theta>>) -> Result<Subobject<Theta>, IntertwinerError> {
    let n = t.n();
    if k == 0 || k >= n {
        return Err(IntertwinerError::OuterHorn { n, k });
    }
    let mut regions = vec![LabeledRegion::new(SimplicialSubset::horn(n, k), full_labels(t))];
    for i in 0..n {
        regions.push(LabeledRegion::new(
            SimplicialSubset::full(n),
            with_label(t, i, Label::boundary(t.labels[i].clone())),
        ));
    }
    union_all(ambient, &regions)
}

/// `Sp[n](c⃗) = V_{Sp[n]}(c⃗)`.
pub fn spine(t: &ThetaObj, ambient: &Arc<FinPresheaf<Theta>>) -> Result<Subobject<Theta>, IntertwinerError> {
    v_subobject(&LabeledRegion::new(SimplicialSubset::spine(t.n()), full_labels(t)), ambient)
}

/// The domain of the corner map of `K ↪ Δ^n` and label inclusions
/// `A_i ↪ B_i`: `V_K(B⃗) ∪ ⋃_i V[n](B_1,…,A_i,…,B_n)`, together with the
/// codomain `V[n](B⃗)`. Both are subobjects of the representable on the
/// carriers.
pub fn corner_domain(
    k: &SimplicialSubset,
    legs: &[(Label, Label)],
    ambient: &Arc<FinPresheaf<Theta>>,
) -> Result<(Subobject<Theta>, Subobject<Theta>), IntertwinerError> {
    let n = k.n();
    if legs.len() != n {
        return Err(IntertwinerError::Arity { expected: n, got: legs.len() });
    }
    let b: Vec<Label> = legs.iter().map(|(_, b)| b.clone()).collect();
    for (i, (a, bl)) in legs.iter().enumerate() {
        if a.carrier != bl.carrier {
            return Err(IntertwinerError::NotMonic(i + 1));
        }
    }
    let top = v_subobject(&LabeledRegion::new(SimplicialSubset::full(n), b.clone()), ambient)?;
    // each leg must be a monomorphism A_i ⊆ B_i
    let base = ambient.site().category().base();
    let site = ambient.site();
    for (i, (a, bl)) in legs.iter().enumerate() {
        for s in base.objects(site.max_dim()) {
            for g in base.hom(&s, &a.carrier).iter() {
                if a.contains(&base, &s, g) && !bl.contains(&base, &s, g) {
                    return Err(IntertwinerError::NotMonic(i + 1));
                }
            }
        }
    }
    let mut regions = vec![LabeledRegion::new(k.clone(), b.clone())];
    for (i, (a, _)) in legs.iter().enumerate() {
        let mut l = b.clone();
        l[i] = a.clone();
        regions.push(LabeledRegion::new(SimplicialSubset::full(n), l));
    }
    Ok((union_all(ambient, &regions)?, top))
}
