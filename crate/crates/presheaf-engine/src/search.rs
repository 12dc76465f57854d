//! Enumeration of natural maps `A -> X` extending a fixed partial map.
//!
//! Values are chosen on the nondegenerate cells of `A` in dimension order;
//! degenerate elements follow from the Eilenberg–Zilber decomposition, and
//! a candidate for a cell must agree with the values already chosen on its
//! faces.

use std::sync::Arc;

use theta_cat::Category;

use crate::cells::{ez_table, EzTable};
use crate::map::PresheafMap;
use crate::presheaf::FinPresheaf;
use crate::site::ArrowId;
use crate::subobject::Subobject;
use crate::PresheafError;

/// Result of a bounded search.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Search<T> {
    /// The search space was exhausted; `found` is everything there is (up to
    /// the requested limit).
    Complete(Vec<T>),
    /// The budget ran out first; `found` is what was seen so far.
    OutOfBudget(Vec<T>),
}

impl<T> Search<T> {
    pub fn found(&self) -> &[T] {
        match self {
            Search::Complete(v) | Search::OutOfBudget(v) => v,
        }
    }

    pub fn into_found(self) -> Vec<T> {
        match self {
            Search::Complete(v) | Search::OutOfBudget(v) => v,
        }
    }

    pub fn is_complete(&self) -> bool {
        matches!(self, Search::Complete(_))
    }
}

/// Extra condition on the value `v ∈ X(t)` of a cell `y ∈ A(t)`.
pub type CellFilter<'f> = dyn Fn(usize, u32, u32) -> bool + 'f;

pub struct Extension<C: Category> {
    source: Arc<FinPresheaf<C>>,
    target: Arc<FinPresheaf<C>>,
    ez: EzTable,
    fixed: Vec<Vec<Option<u32>>>,
}

impl<C: Category> Extension<C> {
    pub fn new(source: Arc<FinPresheaf<C>>, target: Arc<FinPresheaf<C>>) -> Result<Self, PresheafError> {
        source.site().check_same(target.site())?;
        let ez = ez_table(&source)?;
        let fixed = (0..source.site().len()).map(|t| vec![None; source.size(t)]).collect();
        Ok(Extension {
            source,
            target,
            ez,
            fixed,
        })
    }

    /// Prescribes `h` on the subobject `on` by `h = m ∘ i` where `i` is the
    /// inclusion of `on`; `m` is given on the materialized subobject.
    pub fn fix_along(&mut self, on: &Subobject<C>, m: &PresheafMap<C>) -> Result<(), PresheafError> {
        if on.ambient().as_ref() != self.source.as_ref() {
            return Err(PresheafError::AmbientMismatch);
        }
        for (t, row) in on.members().iter().enumerate() {
            let mut k = 0u32;
            for (x, &b) in row.iter().enumerate() {
                if b {
                    self.fix(t, x as u32, m.apply(t, k))?;
                    k += 1;
                }
            }
        }
        Ok(())
    }

    /// Prescribes `h(x) = v` for `x ∈ A(t)` and propagates to all
    /// restrictions of `x`.
    pub fn fix(&mut self, t: usize, x: u32, v: u32) -> Result<(), PresheafError> {
        let site = self.source.site().clone();
        for s in 0..site.len() {
            for a in site.arrows(s, t) {
                let (xs, vs) = (self.source.act(a, x), self.target.act(a, v));
                match self.fixed[s][xs as usize] {
                    Some(w) if w != vs => {
                        return Err(PresheafError::NotNatural {
                            arrow: site.category().show_mor(site.arrow(a)),
                            element: self.source.name(t, x).to_string(),
                        })
                    }
                    _ => self.fixed[s][xs as usize] = Some(vs),
                }
            }
        }
        Ok(())
    }

    pub fn ez(&self) -> &EzTable {
        &self.ez
    }

    /// Up to `limit` extensions in canonical order. `budget` bounds the
    /// number of candidate values examined.
    pub fn run(&self, filter: &CellFilter<'_>, limit: usize, budget: usize) -> Search<PresheafMap<C>> {
        let site = self.source.site();
        let cells = self.ez.cells();
        // free cells, with the faces to check
        struct Free {
            cell: usize,
            faces: Vec<(ArrowId, usize, u32)>,
        }
        let free: Vec<Free> = cells
            .iter()
            .enumerate()
            .filter(|(_, c)| self.fixed[c.carrier][c.element as usize].is_none())
            .map(|(i, c)| Free {
                cell: i,
                faces: site
                    .plus_into(c.carrier)
                    .iter()
                    .map(|&a| (a, site.ends(a).0, self.source.act(a, c.element)))
                    .collect(),
            })
            .collect();
        let mut value: Vec<u32> = cells
            .iter()
            .map(|c| self.fixed[c.carrier][c.element as usize].unwrap_or(u32::MAX))
            .collect();
        let eval = |value: &[u32], s: usize, e: u32| -> u32 {
            if let Some(v) = self.fixed[s][e as usize] {
                return v;
            }
            let (z, sigma) = self.ez.decompose(s, e);
            self.target.act(sigma, value[z as usize])
        };
        let mut found = Vec::new();
        let mut spent = 0usize;
        let mut next: Vec<u32> = vec![0; free.len()];
        let mut depth = 0usize;
        loop {
            if depth == free.len() {
                if let Some(m) = self.assemble(&value) {
                    found.push(m);
                    if found.len() >= limit {
                        return Search::Complete(found);
                    }
                }
                if depth == 0 {
                    return Search::Complete(found);
                }
                depth -= 1;
                continue;
            }
            let f = &free[depth];
            let c = cells[f.cell];
            let size = self.target.size(c.carrier) as u32;
            let mut chosen = None;
            while next[depth] < size {
                let v = next[depth];
                next[depth] += 1;
                spent += 1;
                if spent > budget {
                    return Search::OutOfBudget(found);
                }
                let ok = f.faces.iter().all(|&(a, s, e)| self.target.act(a, v) == eval(&value, s, e))
                    && filter(c.carrier, c.element, v);
                if ok {
                    chosen = Some(v);
                    break;
                }
            }
            match chosen {
                Some(v) => {
                    value[f.cell] = v;
                    depth += 1;
                    if depth < free.len() {
                        next[depth] = 0;
                    }
                }
                None => {
                    value[f.cell] = u32::MAX;
                    if depth == 0 {
                        return Search::Complete(found);
                    }
                    depth -= 1;
                }
            }
        }
    }

    /// The full map from cell values; `None` if it fails naturality (which
    /// cannot happen for presheaves with a valid decomposition).
    fn assemble(&self, value: &[u32]) -> Option<PresheafMap<C>> {
        let site = self.source.site();
        let comps: Vec<Vec<u32>> = (0..site.len())
            .map(|t| {
                (0..self.source.size(t) as u32)
                    .map(|x| {
                        let (z, sigma) = self.ez.decompose(t, x);
                        self.target.act(sigma, value[z as usize])
                    })
                    .collect()
            })
            .collect();
        for (t, row) in self.fixed.iter().enumerate() {
            for (x, v) in row.iter().enumerate() {
                if let Some(v) = v {
                    if comps[t][x] != *v {
                        return None;
                    }
                }
            }
        }
        PresheafMap::new(self.source.clone(), self.target.clone(), comps).ok()
    }
}

/// All natural maps `A -> X`, up to `limit`.
pub fn all_maps<C: Category>(
    a: &Arc<FinPresheaf<C>>,
    x: &Arc<FinPresheaf<C>>,
    limit: usize,
    budget: usize,
) -> Result<Search<PresheafMap<C>>, PresheafError> {
    Ok(Extension::new(a.clone(), x.clone())?.run(&|_, _, _| true, limit, budget))
}
