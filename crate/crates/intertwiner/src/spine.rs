//! Certificates exhibiting `Sp[n](c⃗) ↪ [n](c⃗)` as a composite of pushouts
//! of `𝓙`-generators.
//!
//! The simplicial skeleton of the filtration runs
//! `Sp[n] ⊆ Sp[n] ∪ ∂_0Δ^n ⊆ ∂_0Δ^n ∪ ∂_nΔ^n ⊆ Δ^n`, recursing on the
//! first two stages. The last stage adds the simplices through both `0`
//! and `n`; an inner horn order for it is found by search. Each simplicial
//! step `(σ, ℓ)` is then lifted to one attachment per tuple of
//! nondegenerate sections of the products of labels over the slots of `σ`.

use std::collections::BTreeSet;

use presheaf_engine::{CellCertificate, CertStep};
use simplex_core::{inner_filtration, Chain, ChainComplex};
use theta_cat::{Category, Theta, ThetaMap, ThetaObj};

use crate::construct::spine;
use crate::generators::{GeneratorId, Library};
use crate::IntertwinerError;

/// An inner horn attachment in `Δ^n`: the simplex on `vertices`, with the
/// face opposite `vertices[l]` added along with it.
pub type SimplicialStep = (Vec<usize>, usize);

fn subsets_of(v: &[usize]) -> impl Iterator<Item = Vec<usize>> + '_ {
    (1u64..(1 << v.len())).map(move |mask| {
        v.iter().enumerate().filter(|(i, _)| mask >> i & 1 == 1).map(|(_, &x)| x).collect()
    })
}

fn as_chain(v: &[usize]) -> Chain {
    v.iter().map(|&x| (x, 0)).collect()
}

/// Simplices of `Λ(V) = ∂_0 ∪ ∂_last` on the vertex set `V`, and of `Δ^V`.
fn last_stage(v: &[usize], budget: usize) -> Result<Vec<SimplicialStep>, IntertwinerError> {
    let (first, last) = (v[0], v[v.len() - 1]);
    let goal: ChainComplex = subsets_of(v).map(|s| as_chain(&s)).collect();
    let start: ChainComplex = subsets_of(v)
        .filter(|s| !(s.contains(&first) && s.contains(&last)))
        .map(|s| as_chain(&s))
        .collect();
    let steps = inner_filtration(&start, &goal, budget)?;
    Ok(steps.into_iter().map(|(c, l)| (c.iter().map(|p| p.0).collect(), l)).collect())
}

/// `Sp(V) ∪ ∂_0(V) ⊆ Δ^V`.
fn from_spine_and_front(v: &[usize], budget: usize) -> Result<Vec<SimplicialStep>, IntertwinerError> {
    if v.len() <= 3 {
        // Sp ∪ ∂_0 already equals Λ(V) here
        return if v.len() == 3 { last_stage(v, budget) } else { Ok(Vec::new()) };
    }
    let mut steps = from_spine_and_front(&v[..v.len() - 1], budget)?;
    steps.extend(last_stage(v, budget)?);
    Ok(steps)
}

/// `Sp(V) ⊆ Δ^V`, by the double induction.
pub fn spine_filtration_on(v: &[usize], budget: usize) -> Result<Vec<SimplicialStep>, IntertwinerError> {
    if v.len() <= 2 {
        return Ok(Vec::new());
    }
    // Sp ⊆ Sp ∪ ∂_0: pushout of Sp(V∖v_0) ⊆ Δ^{V∖v_0}
    let mut steps = spine_filtration_on(&v[1..], budget)?;
    // Sp ∪ ∂_0 ⊆ ∂_0 ∪ ∂_last: pushout of the same stage for V∖v_last
    steps.extend(from_spine_and_front(&v[..v.len() - 1], budget)?);
    steps.extend(last_stage(v, budget)?);
    Ok(steps)
}

pub fn spine_filtration(n: usize) -> Result<Vec<SimplicialStep>, IntertwinerError> {
    spine_filtration_on(&(0..=n).collect::<Vec<_>>(), 100_000)
}

/// Nondegenerate sections `e -> ∏ c_j` of a product of representables on
/// the base, ordered by dimension of `e`, then `e`, then the arrows.
pub fn product_cells(base: &Theta, factors: &[ThetaObj]) -> Vec<(ThetaObj, Vec<ThetaMap>)> {
    let d: usize = factors.iter().map(|c| base.dim(c)).sum();
    let mut out = Vec::new();
    for e in base.objects(d) {
        let homs: Vec<_> = factors.iter().map(|c| base.hom(&e, c)).collect();
        let mut idx = vec![0usize; factors.len()];
        if homs.iter().any(|h| h.is_empty()) {
            continue;
        }
        loop {
            let fam: Vec<ThetaMap> = idx.iter().zip(&homs).map(|(&i, h)| h[i].clone()).collect();
            if base.is_jointly_nondegenerate(&e, &fam) {
                out.push((e.clone(), fam));
            }
            let mut k = 0;
            while k < idx.len() {
                idx[k] += 1;
                if idx[k] < homs[k].len() {
                    break;
                }
                idx[k] = 0;
                k += 1;
            }
            if k == idx.len() {
                break;
            }
        }
    }
    out
}

/// The cells attached for one simplicial step on `t = [n](c⃗)`: one per
/// tuple of nondegenerate sections of `∏_{j∈(σ(i−1),σ(i)]} c_j`, by total
/// dimension and then lexicographically.
pub fn lift_step(base: &Theta, t: &ThetaObj, sigma: &[usize]) -> Vec<(ThetaObj, ThetaMap)> {
    let per_slot: Vec<Vec<(ThetaObj, Vec<ThetaMap>)>> = sigma
        .windows(2)
        .map(|w| product_cells(base, &t.labels[w[0]..w[1]]))
        .collect();
    let mut tuples: Vec<(usize, Vec<usize>)> = vec![(0, Vec::new())];
    for slot in &per_slot {
        let mut next = Vec::new();
        for (d, tup) in &tuples {
            for (k, (e, _)) in slot.iter().enumerate() {
                let mut v = tup.clone();
                v.push(k);
                next.push((d + base.dim(e), v));
            }
        }
        tuples = next;
    }
    tuples.sort();
    tuples
        .into_iter()
        .map(|(_, tup)| {
            let labels = tup.iter().zip(&per_slot).map(|(&k, s)| s[k].0.clone()).collect();
            let comps = tup.iter().zip(&per_slot).map(|(&k, s)| s[k].1.clone()).collect();
            (
                ThetaObj::new(labels),
                ThetaMap {
                    alpha: sigma.to_vec(),
                    comps,
                },
            )
        })
        .collect()
}

/// A certificate for `Sp[n](c⃗) ↪ [n](c⃗)` over the library's site, which
/// must contain every face of `t`.
pub fn spine_anodyne_certificate(lib: &Library, t: &ThetaObj) -> Result<CellCertificate<Theta>, IntertwinerError> {
    let site = lib.site().clone();
    let rep = lib.representable(t)?;
    let ti = site.require(t)?;
    let claimed = spine(t, &rep)?.materialize().1;
    let base = site.category().base();
    let mut steps = Vec::new();
    let mut seen = BTreeSet::new();
    for (sigma, l) in spine_filtration(t.n())? {
        for (carrier, e) in lift_step(&base, t, &sigma) {
            let ci = site.require(&carrier)?;
            let element = site.arrow_id(ci, ti, &e).expect("lifted cell is an arrow into t") - site.arrows(ci, ti).start;
            debug_assert!(seen.insert((ci, element)));
            steps.push(CertStep {
                generator: GeneratorId::horn(carrier.clone(), l).show(site.category()),
                carrier,
                element,
            });
        }
    }
    Ok(CellCertificate { claimed, steps })
}
