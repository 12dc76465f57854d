//! Restriction along functors between sites, and the functors relating
//! presheaves on `Δ` with presheaves on `Θ[C]`.

use std::sync::Arc;

use theta_cat::{Category, Theta, ThetaMap, ThetaObj};

use crate::presheaf::FinPresheaf;
use crate::site::{ArrowId, Site};
use crate::PresheafError;

/// `Y = X ∘ F` for a functor `F` given on objects and arrows.
pub fn restrict<C: Category, D: Category>(
    x: &FinPresheaf<C>,
    site: Arc<Site<D>>,
    on_obj: impl Fn(&D::Obj) -> C::Obj,
    on_mor: impl Fn(&D::Obj, &D::Obj, &D::Mor) -> C::Mor,
) -> Result<FinPresheaf<D>, PresheafError> {
    let from = x.site();
    let image: Vec<usize> = site
        .objects()
        .iter()
        .map(|o| from.require(&on_obj(o)))
        .collect::<Result<_, _>>()?;
    let names = image.iter().map(|&i| x.names(i).to_vec()).collect();
    let mut actions = Vec::with_capacity(site.arrow_count());
    for a in 0..site.arrow_count() as ArrowId {
        let (s, t) = site.ends(a);
        let f = on_mor(site.object(s), site.object(t), site.arrow(a));
        let b = from.arrow_id(image[s], image[t], &f).ok_or_else(|| {
            PresheafError::Malformed(format!("functor sends an arrow outside the hom-set: {}", from.category().show_mor(&f)))
        })?;
        actions.push(x.action(b).to_vec());
    }
    FinPresheaf::from_tables(site, names, actions)
}

/// The underlying simplicial set: `(𝓝X)_n = X([n](*,…,*))`.
pub fn underlying_sset(x: &FinPresheaf<Theta>, delta: Arc<Site<Theta>>) -> Result<FinPresheaf<Theta>, PresheafError> {
    restrict(x, delta, |o| ThetaObj::simplex(o.n()), |_, _, f| ThetaMap::simplicial(&f.alpha))
}

/// Local termination: `(𝓗S)_{[n](c⃗)} = S_n`, acting through `α` only.
pub fn local_termination(s: &FinPresheaf<Theta>, site: Arc<Site<Theta>>) -> Result<FinPresheaf<Theta>, PresheafError> {
    restrict(s, site, |o| ThetaObj::simplex(o.n()), |_, _, f| ThetaMap::simplicial(&f.alpha))
}

/// `cosk₀Δ^n` over `Δ`: `m`-simplices are arbitrary `(m+1)`-tuples of vertices.
pub fn cosk0_simplex(n: usize, delta: Arc<Site<Theta>>) -> FinPresheaf<Theta> {
    FinPresheaf::from_fn(
        delta,
        |o| tuples(n + 1, o.n() + 1),
        |_, _, f, v| f.alpha.iter().map(|&i| v[i]).collect::<Vec<usize>>(),
        |v| v.iter().map(|i| i.to_string()).collect::<Vec<_>>().join(","),
    )
    .expect("cosk0 is closed under precomposition")
}

/// The nerve of a finite preorder over `Δ`; `le[a][b]` means `a ≤ b`.
/// `m`-simplices are the weakly increasing `(m+1)`-tuples.
pub fn preorder_nerve(le: &[Vec<bool>], delta: Arc<Site<Theta>>) -> Result<FinPresheaf<Theta>, PresheafError> {
    FinPresheaf::from_fn(
        delta,
        |o| {
            tuples(le.len(), o.n() + 1)
                .into_iter()
                .filter(|v| v.windows(2).all(|w| le[w[0]][w[1]]))
                .collect()
        },
        |_, _, f, v| f.alpha.iter().map(|&i| v[i]).collect::<Vec<usize>>(),
        |v| v.iter().map(|i| i.to_string()).collect::<Vec<_>>().join(","),
    )
}

/// `E^n = 𝓗(cosk₀Δ^n)` on the given site.
pub fn e_n(n: usize, site: Arc<Site<Theta>>) -> Result<FinPresheaf<Theta>, PresheafError> {
    let len = site.objects().iter().map(|o| o.n()).max().unwrap_or(0);
    let delta = Site::dim(Theta::new(1), len);
    local_termination(&cosk0_simplex(n, delta), site)
}

fn tuples(base: usize, len: usize) -> Vec<Vec<usize>> {
    let mut out = vec![Vec::new()];
    for _ in 0..len {
        out = out
            .into_iter()
            .flat_map(|v| {
                (0..base).map(move |i| {
                    let mut w = v.clone();
                    w.push(i);
                    w
                })
            })
            .collect();
    }
    out
}
