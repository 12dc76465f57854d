//! Pushouts along a monomorphism.

use std::sync::Arc;

use theta_cat::Category;

use crate::map::PresheafMap;
use crate::presheaf::FinPresheaf;
use crate::site::ArrowId;
use crate::PresheafError;

#[derive(Debug, Clone)]
pub struct Pushout<C: Category> {
    pub object: Arc<FinPresheaf<C>>,
    /// `B -> P`.
    pub from_target: PresheafMap<C>,
    /// `C -> P`, always a monomorphism.
    pub from_other: PresheafMap<C>,
}

/// The pushout of `f : A ↪ B` and `g : A -> C`, computed objectwise as
/// `C ⊔ (B ∖ f(A))`. Elements of `C` keep their names and come first.
pub fn pushout<C: Category>(f: &PresheafMap<C>, g: &PresheafMap<C>) -> Result<Pushout<C>, PresheafError> {
    if f.source().as_ref() != g.source().as_ref() {
        return Err(PresheafError::Malformed("pushout legs need a common source".into()));
    }
    if !f.is_mono() {
        return Err(PresheafError::NotMono);
    }
    let (b, c) = (f.target(), g.target());
    let site = b.site().clone();
    site.check_same(c.site())?;
    let n = site.len();
    // where each element of B goes in P
    let mut place: Vec<Vec<u32>> = Vec::with_capacity(n);
    let mut names: Vec<Vec<String>> = Vec::with_capacity(n);
    let mut fresh: Vec<Vec<u32>> = Vec::with_capacity(n);
    for t in 0..n {
        let mut p = vec![u32::MAX; b.size(t)];
        for (a, &y) in f.component(t).iter().enumerate() {
            p[y as usize] = g.apply(t, a as u32);
        }
        let mut nm: Vec<String> = c.names(t).to_vec();
        let mut fr = Vec::new();
        for (y, slot) in p.iter_mut().enumerate() {
            if *slot == u32::MAX {
                *slot = nm.len() as u32;
                nm.push(format!("new:{}", b.name(t, y as u32)));
                fr.push(y as u32);
            }
        }
        place.push(p);
        names.push(nm);
        fresh.push(fr);
    }
    let actions = (0..site.arrow_count() as ArrowId)
        .map(|a| {
            let (s, t) = site.ends(a);
            let mut row = c.action(a).to_vec();
            row.extend(fresh[t].iter().map(|&y| place[s][b.act(a, y) as usize]));
            row
        })
        .collect();
    let object = Arc::new(FinPresheaf::from_tables(site, names, actions)?);
    let from_target = PresheafMap::new(b.clone(), object.clone(), place)?;
    let idc = (0..n).map(|t| (0..c.size(t) as u32).collect()).collect();
    let from_other = PresheafMap::new(c.clone(), object.clone(), idc)?;
    Ok(Pushout {
        object,
        from_target,
        from_other,
    })
}
