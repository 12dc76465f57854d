//! Nondegenerate cells, Eilenberg–Zilber decomposition and skeleta.

use std::sync::Arc;

use theta_cat::Category;

use crate::presheaf::FinPresheaf;
use crate::site::ArrowId;
use crate::subobject::Subobject;
use crate::PresheafError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Cell {
    pub carrier: usize,
    pub element: u32,
    pub nondegenerate: bool,
}

/// Every element written uniquely as `X(σ)(z)` with `σ` minus and `z` a
/// nondegenerate cell.
#[derive(Debug, Clone)]
pub struct EzTable {
    cells: Vec<Cell>,
    decomp: Vec<Vec<(u32, ArrowId)>>,
}

impl EzTable {
    /// Nondegenerate cells ordered by (dimension, carrier, element).
    pub fn cells(&self) -> &[Cell] {
        &self.cells
    }

    /// `(index into cells, minus arrow)` for the element `x ∈ X(t)`.
    pub fn decompose(&self, t: usize, x: u32) -> (u32, ArrowId) {
        self.decomp[t][x as usize]
    }

    pub fn is_nondegenerate(&self, t: usize, x: u32) -> bool {
        let (c, _) = self.decomp[t][x as usize];
        let c = self.cells[c as usize];
        c.carrier == t && c.element == x
    }

    pub fn count_by_dim<C: Category>(&self, x: &FinPresheaf<C>) -> Vec<usize> {
        let mut out = vec![0; x.site().max_dim() + 1];
        for c in &self.cells {
            out[x.site().dim_of(c.carrier)] += 1;
        }
        out
    }
}

/// Computes the decomposition, failing if some element is hit by zero or by
/// several pairs (nondegenerate cell, minus map).
pub fn ez_table<C: Category>(x: &FinPresheaf<C>) -> Result<EzTable, PresheafError> {
    let site = x.site();
    let n = site.len();
    let mut degenerate: Vec<Vec<bool>> = (0..n).map(|t| vec![false; x.size(t)]).collect();
    for (t, row) in degenerate.iter_mut().enumerate() {
        for &a in site.minus_from(t) {
            for &y in x.action(a) {
                row[y as usize] = true;
            }
        }
    }
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by_key(|&t| (site.dim_of(t), t));
    let mut cells = Vec::new();
    for &t in &order {
        for e in 0..x.size(t) as u32 {
            if !degenerate[t][e as usize] {
                cells.push(Cell {
                    carrier: t,
                    element: e,
                    nondegenerate: true,
                });
            }
        }
    }
    const NONE: (u32, ArrowId) = (u32::MAX, ArrowId::MAX);
    let mut decomp: Vec<Vec<(u32, ArrowId)>> = (0..n).map(|t| vec![NONE; x.size(t)]).collect();
    let mut minus_into: Vec<Vec<ArrowId>> = vec![Vec::new(); n];
    for s in 0..n {
        minus_into[s].push(site.identity(s));
        for &a in site.minus_from(s) {
            minus_into[site.ends(a).1].push(a);
        }
    }
    for (ci, c) in cells.iter().enumerate() {
        for &a in &minus_into[c.carrier] {
            let (s, _) = site.ends(a);
            let y = x.act(a, c.element);
            let slot = &mut decomp[s][y as usize];
            if *slot != NONE {
                return Err(PresheafError::EzViolation {
                    object: site.category().show_obj(site.object(s)),
                    element: x.name(s, y).to_string(),
                    reason: "hit twice".into(),
                });
            }
            *slot = (ci as u32, a);
        }
    }
    for (s, row) in decomp.iter().enumerate() {
        if let Some(y) = row.iter().position(|&d| d == NONE) {
            return Err(PresheafError::EzViolation {
                object: site.category().show_obj(site.object(s)),
                element: x.name(s, y as u32).to_string(),
                reason: "not a degeneracy of any nondegenerate cell".into(),
            });
        }
    }
    Ok(EzTable { cells, decomp })
}

pub fn nondegenerate_cells<C: Category>(x: &FinPresheaf<C>) -> Result<Vec<Cell>, PresheafError> {
    Ok(ez_table(x)?.cells)
}

/// The sieve of elements factoring through an object of dimension `≤ n`.
pub fn skeleton<C: Category>(x: &Arc<FinPresheaf<C>>, n: usize) -> Result<Subobject<C>, PresheafError> {
    let ez = ez_table(x)?;
    let gens: Vec<(usize, u32)> = ez
        .cells()
        .iter()
        .filter(|c| x.site().dim_of(c.carrier) <= n)
        .map(|c| (c.carrier, c.element))
        .collect();
    Ok(Subobject::generated(x.clone(), &gens))
}
