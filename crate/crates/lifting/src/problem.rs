use std::sync::Arc;

use presheaf_engine::{Extension, FinPresheaf, PresheafMap, Search};
use theta_cat::Category;

use crate::LiftingError;

/// A commutative square
///
/// ```text
///   A --top--> X
///   |i         |p
///   B --bot--> Y
/// ```
/// with `i` a monomorphism.
#[derive(Debug, Clone)]
pub struct LiftingProblem<C: Category> {
    pub i: PresheafMap<C>,
    pub p: PresheafMap<C>,
    pub top: PresheafMap<C>,
    pub bottom: PresheafMap<C>,
}

#[derive(Debug, Clone, PartialEq)]
pub enum LiftOutcome<C: Category> {
    Found(PresheafMap<C>),
    /// The search space was exhausted.
    None,
    OutOfBudget,
}

impl<C: Category> LiftOutcome<C> {
    pub fn lift(&self) -> Option<&PresheafMap<C>> {
        match self {
            LiftOutcome::Found(h) => Some(h),
            _ => None,
        }
    }
}

fn same<C: Category>(a: &Arc<FinPresheaf<C>>, b: &Arc<FinPresheaf<C>>) -> bool {
    Arc::ptr_eq(a, b) || a == b
}

impl<C: Category> LiftingProblem<C> {
    pub fn new(
        i: PresheafMap<C>,
        p: PresheafMap<C>,
        top: PresheafMap<C>,
        bottom: PresheafMap<C>,
    ) -> Result<Self, LiftingError> {
        let shape = |what: &str| Err(LiftingError::Shape(what.to_string()));
        if !same(top.source(), i.source()) {
            return shape("top and i have different sources");
        }
        if !same(bottom.source(), i.target()) {
            return shape("bottom does not start at the target of i");
        }
        if !same(top.target(), p.source()) {
            return shape("top does not end at the source of p");
        }
        if !same(bottom.target(), p.target()) {
            return shape("bottom and p have different targets");
        }
        if !i.is_mono() {
            return Err(LiftingError::NotMono);
        }
        let a = i.source();
        let site = a.site();
        for t in 0..site.len() {
            for x in 0..a.size(t) as u32 {
                if p.apply(t, top.apply(t, x)) != bottom.apply(t, i.apply(t, x)) {
                    return Err(LiftingError::NotCommuting {
                        object: site.category().show_obj(site.object(t)),
                        element: a.name(t, x).to_string(),
                    });
                }
            }
        }
        Ok(LiftingProblem { i, p, top, bottom })
    }

    /// The problem against `X -> 1`.
    pub fn against_terminal(i: PresheafMap<C>, top: PresheafMap<C>) -> Result<Self, LiftingError> {
        let x = top.target().clone();
        let one = Arc::new(FinPresheaf::terminal(x.site().clone()));
        let to_one = |src: &Arc<FinPresheaf<C>>| {
            let comps = (0..src.site().len()).map(|t| vec![0; src.size(t)]).collect();
            PresheafMap::new_unchecked(src.clone(), one.clone(), comps)
        };
        let p = to_one(&x)?;
        let bottom = to_one(i.target())?;
        LiftingProblem::new(i, p, top, bottom)
    }

    /// True iff `h : B -> X` is natural and makes both triangles commute.
    pub fn is_lift(&self, h: &PresheafMap<C>) -> bool {
        if !same(h.source(), self.i.target()) || !same(h.target(), self.p.source()) || h.check_natural().is_err() {
            return false;
        }
        let (a, b) = (self.i.source(), self.i.target());
        (0..a.site().len()).all(|t| {
            (0..a.size(t) as u32).all(|x| h.apply(t, self.i.apply(t, x)) == self.top.apply(t, x))
                && (0..b.size(t) as u32).all(|y| self.p.apply(t, h.apply(t, y)) == self.bottom.apply(t, y))
        })
    }

    fn extension(&self) -> Result<Extension<C>, LiftingError> {
        let mut ext = Extension::new(self.i.target().clone(), self.p.source().clone())?;
        let a = self.i.source();
        for t in 0..a.site().len() {
            for x in 0..a.size(t) as u32 {
                ext.fix(t, self.i.apply(t, x), self.top.apply(t, x))?;
            }
        }
        Ok(ext)
    }
}

/// First diagonal in canonical order: cells of `B` outside the image of `i`
/// are assigned in dimension order, values tried in index order.
pub fn find_lift<C: Category>(pr: &LiftingProblem<C>, budget: usize) -> Result<LiftOutcome<C>, LiftingError> {
    Ok(match all_lifts(pr, 1, budget)? {
        Search::Complete(mut v) => v.pop().map_or(LiftOutcome::None, LiftOutcome::Found),
        Search::OutOfBudget(mut v) => v.pop().map_or(LiftOutcome::OutOfBudget, LiftOutcome::Found),
    })
}

/// Up to `limit` diagonals, via cell-by-cell extension.
pub fn all_lifts<C: Category>(
    pr: &LiftingProblem<C>,
    limit: usize,
    budget: usize,
) -> Result<Search<PresheafMap<C>>, LiftingError> {
    let ext = pr.extension()?;
    let (p, bottom) = (&pr.p, &pr.bottom);
    Ok(ext.run(&|t, y, v| p.apply(t, v) == bottom.apply(t, y), limit, budget))
}

/// Independent solver: assigns every element of `B` (degenerate or not) in
/// site order and checks every arrow between assigned elements. Knows
/// nothing about cells. Results are in lexicographic order of components.
pub fn naive_lifts<C: Category>(
    pr: &LiftingProblem<C>,
    limit: usize,
    budget: usize,
) -> Result<Search<PresheafMap<C>>, LiftingError> {
    let b = pr.i.target().clone();
    let x = pr.p.source().clone();
    let site = b.site().clone();
    let n = site.len();
    let mut val: Vec<Vec<Option<u32>>> = (0..n).map(|t| vec![None; b.size(t)]).collect();
    let a = pr.i.source();
    for t in 0..n {
        for e in 0..a.size(t) as u32 {
            val[t][pr.i.apply(t, e) as usize] = Some(pr.top.apply(t, e));
        }
    }
    let order: Vec<(usize, u32)> = (0..n)
        .flat_map(|t| (0..b.size(t) as u32).map(move |y| (t, y)))
        .filter(|&(t, y)| val[t][y as usize].is_none())
        .collect();

    // every arrow touching each object, as (arrow, other end, incoming?)
    let mut touching: Vec<Vec<(u32, usize, bool)>> = vec![Vec::new(); n];
    for s in 0..n {
        for t in 0..n {
            for ar in site.arrows(s, t) {
                touching[t].push((ar, s, true));
                touching[s].push((ar, t, false));
            }
        }
    }
    let consistent = |val: &Vec<Vec<Option<u32>>>, t: usize, y: u32, v: u32| -> bool {
        for &(ar, other, incoming) in &touching[t] {
            if incoming {
                // restriction of y along ar : other -> t
                if let Some(w) = val[other][b.act(ar, y) as usize] {
                    if w != x.act(ar, v) {
                        return false;
                    }
                }
            } else {
                for z in 0..b.size(other) as u32 {
                    if b.act(ar, z) == y {
                        if let Some(w) = val[other][z as usize] {
                            if x.act(ar, w) != v {
                                return false;
                            }
                        }
                    }
                }
            }
        }
        true
    };
    // the prescribed part must itself be consistent
    for t in 0..n {
        for y in 0..b.size(t) as u32 {
            if let Some(v) = val[t][y as usize] {
                if !consistent(&val, t, y, v) {
                    return Ok(Search::Complete(Vec::new()));
                }
            }
        }
    }

    let mut found = Vec::new();
    let mut spent = 0usize;
    // iterative backtracking: next[k] is the next candidate for order[k]
    let mut k = 0usize;
    let mut next = vec![0u32; order.len() + 1];
    loop {
        if k == order.len() {
            let comps = val.iter().map(|r| r.iter().map(|v| v.unwrap()).collect()).collect();
            let h = PresheafMap::new(b.clone(), x.clone(), comps)?;
            found.push(h);
            if found.len() >= limit {
                return Ok(Search::Complete(found));
            }
            if k == 0 {
                return Ok(Search::Complete(found));
            }
            k -= 1;
            let (t, y) = order[k];
            val[t][y as usize] = None;
            continue;
        }
        let (t, y) = order[k];
        let want = pr.bottom.apply(t, y);
        let mut placed = false;
        while (next[k] as usize) < x.size(t) {
            let v = next[k];
            next[k] += 1;
            spent += 1;
            if spent > budget {
                return Ok(Search::OutOfBudget(found));
            }
            if pr.p.apply(t, v) == want && consistent(&val, t, y, v) {
                val[t][y as usize] = Some(v);
                placed = true;
                break;
            }
        }
        if placed {
            k += 1;
            next[k] = 0;
        } else {
            if k == 0 {
                return Ok(Search::Complete(found));
            }
            k -= 1;
            let (t2, y2) = order[k];
            val[t2][y2 as usize] = None;
        }
    }
}
