//! Natural transformations between presheaves on the same site.

use std::sync::Arc;

use theta_cat::Category;

use crate::presheaf::FinPresheaf;
use crate::site::ArrowId;
use crate::subobject::Subobject;
use crate::PresheafError;

#[derive(Debug, Clone, PartialEq)]
pub struct PresheafMap<C: Category> {
    source: Arc<FinPresheaf<C>>,
    target: Arc<FinPresheaf<C>>,
    comps: Vec<Vec<u32>>,
}

impl<C: Category> PresheafMap<C> {
    /// Checks shapes and every naturality square.
    pub fn new(
        source: Arc<FinPresheaf<C>>,
        target: Arc<FinPresheaf<C>>,
        comps: Vec<Vec<u32>>,
    ) -> Result<Self, PresheafError> {
        let m = PresheafMap::new_unchecked(source, target, comps)?;
        m.check_natural()?;
        Ok(m)
    }

    /// Checks shapes only. Use when naturality holds by construction.
    pub fn new_unchecked(
        source: Arc<FinPresheaf<C>>,
        target: Arc<FinPresheaf<C>>,
        comps: Vec<Vec<u32>>,
    ) -> Result<Self, PresheafError> {
        source.site().check_same(target.site())?;
        let site = source.site();
        if comps.len() != site.len() {
            return Err(PresheafError::Malformed("one component per object expected".into()));
        }
        for (t, c) in comps.iter().enumerate() {
            if c.len() != source.size(t) || c.iter().any(|&y| y as usize >= target.size(t)) {
                return Err(PresheafError::Malformed(format!(
                    "component at {} has the wrong shape",
                    site.category().show_obj(site.object(t))
                )));
            }
        }
        Ok(PresheafMap {
            source,
            target,
            comps,
        })
    }

    pub fn identity(x: Arc<FinPresheaf<C>>) -> Self {
        let comps = (0..x.site().len()).map(|t| (0..x.size(t) as u32).collect()).collect();
        PresheafMap {
            source: x.clone(),
            target: x,
            comps,
        }
    }

    /// The Yoneda map `hom(-, t) -> X` sending the identity to `e ∈ X(t)`.
    /// `rep` must be the representable on `t` built over the same site.
    pub fn yoneda(rep: Arc<FinPresheaf<C>>, x: Arc<FinPresheaf<C>>, t: usize, e: u32) -> Result<Self, PresheafError> {
        let site = x.site().clone();
        let comps = (0..site.len()).map(|s| site.arrows(s, t).map(|a| x.act(a, e)).collect()).collect();
        PresheafMap::new_unchecked(rep, x, comps)
    }

    pub fn check_natural(&self) -> Result<(), PresheafError> {
        let site = self.source.site();
        for a in 0..site.arrow_count() as ArrowId {
            let (s, t) = site.ends(a);
            for x in 0..self.source.size(t) as u32 {
                let left = self.comps[s][self.source.act(a, x) as usize];
                let right = self.target.act(a, self.comps[t][x as usize]);
                if left != right {
                    return Err(PresheafError::NotNatural {
                        arrow: site.category().show_mor(site.arrow(a)),
                        element: self.source.name(t, x).to_string(),
                    });
                }
            }
        }
        Ok(())
    }

    pub fn source(&self) -> &Arc<FinPresheaf<C>> {
        &self.source
    }

    pub fn target(&self) -> &Arc<FinPresheaf<C>> {
        &self.target
    }

    pub fn component(&self, t: usize) -> &[u32] {
        &self.comps[t]
    }

    pub fn components(&self) -> &[Vec<u32>] {
        &self.comps
    }

    pub fn apply(&self, t: usize, x: u32) -> u32 {
        self.comps[t][x as usize]
    }

    /// `self ∘ f`.
    pub fn after(&self, f: &PresheafMap<C>) -> Result<Self, PresheafError> {
        if f.target.as_ref() != self.source.as_ref() {
            return Err(PresheafError::Malformed("maps are not composable".into()));
        }
        let comps = f
            .comps
            .iter()
            .enumerate()
            .map(|(t, c)| c.iter().map(|&x| self.comps[t][x as usize]).collect())
            .collect();
        PresheafMap::new_unchecked(f.source.clone(), self.target.clone(), comps)
    }

    pub fn is_mono(&self) -> bool {
        self.comps.iter().enumerate().all(|(t, c)| {
            let mut seen = vec![false; self.target.size(t)];
            c.iter().all(|&y| !std::mem::replace(&mut seen[y as usize], true))
        })
    }

    pub fn is_epi(&self) -> bool {
        self.image().is_full()
    }

    pub fn is_iso(&self) -> bool {
        self.is_mono() && self.is_epi()
    }

    pub fn image(&self) -> Subobject<C> {
        let mut members: Vec<Vec<bool>> = (0..self.comps.len()).map(|t| vec![false; self.target.size(t)]).collect();
        for (t, c) in self.comps.iter().enumerate() {
            for &y in c {
                members[t][y as usize] = true;
            }
        }
        Subobject::from_members_unchecked(self.target.clone(), members)
    }
}
