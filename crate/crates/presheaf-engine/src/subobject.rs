//! Subpresheaves of a fixed ambient presheaf.

use std::sync::Arc;

use theta_cat::Category;

use crate::cells::{Cell, EzTable};
use crate::map::PresheafMap;
use crate::presheaf::FinPresheaf;
use crate::site::ArrowId;
use crate::PresheafError;

#[derive(Debug, Clone)]
pub struct Subobject<C: Category> {
    ambient: Arc<FinPresheaf<C>>,
    members: Vec<Vec<bool>>,
}

impl<C: Category> PartialEq for Subobject<C> {
    fn eq(&self, other: &Self) -> bool {
        self.members == other.members && (Arc::ptr_eq(&self.ambient, &other.ambient) || self.ambient == other.ambient)
    }
}

impl<C: Category> Subobject<C> {
    pub fn empty(ambient: Arc<FinPresheaf<C>>) -> Self {
        let members = (0..ambient.site().len()).map(|t| vec![false; ambient.size(t)]).collect();
        Subobject { ambient, members }
    }

    pub fn full(ambient: Arc<FinPresheaf<C>>) -> Self {
        let members = (0..ambient.site().len()).map(|t| vec![true; ambient.size(t)]).collect();
        Subobject { ambient, members }
    }

    /// Checks closure under the action.
    pub fn from_members(ambient: Arc<FinPresheaf<C>>, members: Vec<Vec<bool>>) -> Result<Self, PresheafError> {
        let s = Subobject::from_members_unchecked(ambient, members);
        if let Some((t, x)) = s.closure_violation() {
            return Err(PresheafError::NotClosed(format!(
                "{} at {}",
                s.ambient.name(t, x),
                s.ambient.site().category().show_obj(s.ambient.site().object(t))
            )));
        }
        Ok(s)
    }

    pub(crate) fn from_members_unchecked(ambient: Arc<FinPresheaf<C>>, members: Vec<Vec<bool>>) -> Self {
        Subobject { ambient, members }
    }

    /// The smallest subobject containing the given elements.
    pub fn generated(ambient: Arc<FinPresheaf<C>>, gens: &[(usize, u32)]) -> Self {
        let mut s = Subobject::empty(ambient);
        s.add_generated(gens);
        s
    }

    /// Adds the subobject generated by `gens`.
    pub fn add_generated(&mut self, gens: &[(usize, u32)]) {
        let site = self.ambient.site().clone();
        for &(t, x) in gens {
            if self.members[t][x as usize] {
                continue;
            }
            for s in 0..site.len() {
                for a in site.arrows(s, t) {
                    self.members[s][self.ambient.act(a, x) as usize] = true;
                }
            }
        }
    }

    pub fn ambient(&self) -> &Arc<FinPresheaf<C>> {
        &self.ambient
    }

    pub fn members(&self) -> &[Vec<bool>] {
        &self.members
    }

    pub fn contains(&self, t: usize, x: u32) -> bool {
        self.members[t][x as usize]
    }

    pub fn count(&self, t: usize) -> usize {
        self.members[t].iter().filter(|&&b| b).count()
    }

    pub fn total(&self) -> usize {
        (0..self.members.len()).map(|t| self.count(t)).sum()
    }

    pub fn is_full(&self) -> bool {
        self.members.iter().flatten().all(|&b| b)
    }

    pub fn closure_violation(&self) -> Option<(usize, u32)> {
        let site = self.ambient.site();
        for a in 0..site.arrow_count() as ArrowId {
            let (s, t) = site.ends(a);
            for x in 0..self.ambient.size(t) as u32 {
                if self.members[t][x as usize] && !self.members[s][self.ambient.act(a, x) as usize] {
                    return Some((t, x));
                }
            }
        }
        None
    }

    fn zip(&self, other: &Self, op: impl Fn(bool, bool) -> bool) -> Result<Self, PresheafError> {
        if self.ambient.as_ref() != other.ambient.as_ref() {
            return Err(PresheafError::AmbientMismatch);
        }
        let members = self
            .members
            .iter()
            .zip(&other.members)
            .map(|(a, b)| a.iter().zip(b).map(|(&x, &y)| op(x, y)).collect())
            .collect();
        Ok(Subobject::from_members_unchecked(self.ambient.clone(), members))
    }

    pub fn union(&self, other: &Self) -> Result<Self, PresheafError> {
        self.zip(other, |a, b| a || b)
    }

    pub fn intersection(&self, other: &Self) -> Result<Self, PresheafError> {
        self.zip(other, |a, b| a && b)
    }

    pub fn is_subset(&self, other: &Self) -> Result<bool, PresheafError> {
        Ok(self.zip(other, |a, b| !a || b)?.is_full())
    }

    /// Elements of `other` not in `self`.
    pub fn missing_from(&self, other: &Self) -> Result<Vec<(usize, u32)>, PresheafError> {
        let d = self.zip(other, |a, b| b && !a)?;
        Ok(d.elements())
    }

    pub fn elements(&self) -> Vec<(usize, u32)> {
        let mut out = Vec::new();
        for (t, row) in self.members.iter().enumerate() {
            for (x, &b) in row.iter().enumerate() {
                if b {
                    out.push((t, x as u32));
                }
            }
        }
        out
    }

    /// Nondegenerate cells of the ambient lying in this subobject. For a
    /// subobject these are exactly its own nondegenerate cells.
    pub fn cells(&self, ez: &EzTable) -> Vec<Cell> {
        ez.cells().iter().filter(|c| self.contains(c.carrier, c.element)).copied().collect()
    }

    /// The subobject as a presheaf, with its inclusion into the ambient.
    pub fn materialize(&self) -> (Arc<FinPresheaf<C>>, PresheafMap<C>) {
        let site = self.ambient.site().clone();
        let mut renumber: Vec<Vec<u32>> = Vec::with_capacity(site.len());
        let mut comps: Vec<Vec<u32>> = Vec::with_capacity(site.len());
        let mut names = Vec::with_capacity(site.len());
        for (t, row) in self.members.iter().enumerate() {
            let mut r = vec![u32::MAX; row.len()];
            let mut c = Vec::new();
            let mut nm = Vec::new();
            for (x, &b) in row.iter().enumerate() {
                if b {
                    r[x] = c.len() as u32;
                    c.push(x as u32);
                    nm.push(self.ambient.name(t, x as u32).to_string());
                }
            }
            renumber.push(r);
            comps.push(c);
            names.push(nm);
        }
        let actions = (0..site.arrow_count() as ArrowId)
            .map(|a| {
                let (s, t) = site.ends(a);
                comps[t].iter().map(|&x| renumber[s][self.ambient.act(a, x) as usize]).collect()
            })
            .collect();
        let sub = Arc::new(FinPresheaf::from_tables(site, names, actions).expect("subobject is closed"));
        let incl = PresheafMap::new_unchecked(sub.clone(), self.ambient.clone(), comps).expect("shapes agree");
        (sub, incl)
    }
}
