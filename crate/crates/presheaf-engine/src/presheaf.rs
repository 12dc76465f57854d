//! Finite presheaves stored as full action tables over a [`Site`].

use std::collections::HashMap;
use std::hash::Hash;
use std::sync::Arc;

use theta_cat::Category;

use crate::site::{ArrowId, Site};
use crate::PresheafError;

/// A presheaf on a site. `action(a)[x]` is `X(a)(x)` for `a : s -> t` and
/// `x ∈ X(t)`.
#[derive(Debug, Clone)]
pub struct FinPresheaf<C: Category> {
    site: Arc<Site<C>>,
    sizes: Vec<u32>,
    actions: Vec<Vec<u32>>,
    names: Vec<Vec<String>>,
}

impl<C: Category> PartialEq for FinPresheaf<C> {
    fn eq(&self, other: &Self) -> bool {
        self.site.same(&other.site)
            && self.sizes == other.sizes
            && self.actions == other.actions
            && self.names == other.names
    }
}

impl<C: Category> FinPresheaf<C> {
    /// Assembles a presheaf from raw tables, checking shapes only.
    pub fn from_tables(
        site: Arc<Site<C>>,
        names: Vec<Vec<String>>,
        actions: Vec<Vec<u32>>,
    ) -> Result<Self, PresheafError> {
        let bad = |reason: String| PresheafError::Malformed(reason);
        if names.len() != site.len() || actions.len() != site.arrow_count() {
            return Err(bad("table sizes do not match the site".into()));
        }
        let sizes: Vec<u32> = names.iter().map(|v| v.len() as u32).collect();
        for (a, act) in actions.iter().enumerate() {
            let (s, t) = site.ends(a as ArrowId);
            if act.len() != sizes[t] as usize || act.iter().any(|&y| y >= sizes[s]) {
                return Err(bad(format!("action of arrow {a} has the wrong shape")));
            }
        }
        Ok(FinPresheaf {
            site,
            sizes,
            actions,
            names,
        })
    }

    /// Builds a presheaf from element keys. `elements(t)` lists `X(t)`;
    /// `act(s, t, f, x)` is `X(f)(x)` for `f : s -> t`.
    pub fn from_fn<K, E, A, N>(site: Arc<Site<C>>, elements: E, act: A, name: N) -> Result<Self, PresheafError>
    where
        K: Clone + Eq + Hash,
        E: Fn(&C::Obj) -> Vec<K>,
        A: Fn(&C::Obj, &C::Obj, &C::Mor, &K) -> K,
        N: Fn(&K) -> String,
    {
        let elts: Vec<Vec<K>> = site.objects().iter().map(&elements).collect();
        let idx: Vec<HashMap<&K, u32>> = elts
            .iter()
            .map(|v| v.iter().enumerate().map(|(i, k)| (k, i as u32)).collect())
            .collect();
        for (i, v) in elts.iter().enumerate() {
            if idx[i].len() != v.len() {
                return Err(PresheafError::Malformed(format!(
                    "duplicate element at {}",
                    site.category().show_obj(site.object(i))
                )));
            }
        }
        let mut actions = Vec::with_capacity(site.arrow_count());
        for a in 0..site.arrow_count() as ArrowId {
            let (s, t) = site.ends(a);
            let f = site.arrow(a);
            let mut row = Vec::with_capacity(elts[t].len());
            for x in &elts[t] {
                let y = act(site.object(s), site.object(t), f, x);
                match idx[s].get(&y) {
                    Some(&j) => row.push(j),
                    None => {
                        return Err(PresheafError::Malformed(format!(
                            "action of {} leaves the element set of {}",
                            site.category().show_mor(f),
                            site.category().show_obj(site.object(s))
                        )))
                    }
                }
            }
            actions.push(row);
        }
        let names = elts.iter().map(|v| v.iter().map(&name).collect()).collect();
        FinPresheaf::from_tables(site, names, actions)
    }

    /// The representable presheaf `hom(-, t)` restricted to the site.
    /// Elements at `s` are the sorted arrows `s -> t`.
    pub fn representable(site: Arc<Site<C>>, t: &C::Obj) -> Self {
        let cat = site.category().clone();
        let show = cat.clone();
        let t = t.clone();
        FinPresheaf::from_fn(
            site,
            |s| {
                let mut h = cat.hom(s, &t).as_ref().clone();
                h.sort();
                h
            },
            |_, _, f, x| cat.compose(x, f),
            |x| show.show_mor(x),
        )
        .expect("representables are closed under precomposition")
    }

    /// The terminal presheaf: one point everywhere.
    pub fn terminal(site: Arc<Site<C>>) -> Self {
        let names = vec![vec!["*".to_string()]; site.len()];
        let actions = vec![vec![0]; site.arrow_count()];
        FinPresheaf::from_tables(site, names, actions).expect("shape is consistent")
    }

    pub fn empty(site: Arc<Site<C>>) -> Self {
        let names = vec![Vec::new(); site.len()];
        let actions = vec![Vec::new(); site.arrow_count()];
        FinPresheaf::from_tables(site, names, actions).expect("shape is consistent")
    }

    /// `X × Y`, elements enumerated row-major.
    pub fn product(&self, other: &Self) -> Result<Self, PresheafError> {
        self.site.check_same(&other.site)?;
        let site = self.site.clone();
        let names = (0..site.len())
            .map(|t| {
                let mut v = Vec::new();
                for x in &self.names[t] {
                    for y in &other.names[t] {
                        v.push(format!("({x}, {y})"));
                    }
                }
                v
            })
            .collect();
        let actions = (0..site.arrow_count())
            .map(|a| {
                let (p, q) = (&self.actions[a], &other.actions[a]);
                let (s, _) = site.ends(a as ArrowId);
                let ws = other.sizes[s];
                let mut row = Vec::with_capacity(p.len() * q.len());
                for &x in p {
                    for &y in q {
                        row.push(x * ws + y);
                    }
                }
                row
            })
            .collect();
        FinPresheaf::from_tables(site, names, actions)
    }

    /// `X ⊔ Y`; elements of `X` come first.
    pub fn coproduct(&self, other: &Self) -> Result<Self, PresheafError> {
        self.site.check_same(&other.site)?;
        let site = self.site.clone();
        let names = (0..site.len())
            .map(|t| {
                let l = self.names[t].iter().map(|x| format!("0:{x}"));
                l.chain(other.names[t].iter().map(|y| format!("1:{y}"))).collect()
            })
            .collect();
        let actions = (0..site.arrow_count())
            .map(|a| {
                let (s, _) = site.ends(a as ArrowId);
                let off = self.sizes[s];
                let mut row = self.actions[a].clone();
                row.extend(other.actions[a].iter().map(|&y| y + off));
                row
            })
            .collect();
        FinPresheaf::from_tables(site, names, actions)
    }

    pub fn site(&self) -> &Arc<Site<C>> {
        &self.site
    }

    pub fn size(&self, t: usize) -> usize {
        self.sizes[t] as usize
    }

    pub fn sizes(&self) -> &[u32] {
        &self.sizes
    }

    pub fn total_size(&self) -> usize {
        self.sizes.iter().map(|&s| s as usize).sum()
    }

    pub fn size_at(&self, o: &C::Obj) -> Result<usize, PresheafError> {
        Ok(self.size(self.site.require(o)?))
    }

    pub fn action(&self, a: ArrowId) -> &[u32] {
        &self.actions[a as usize]
    }

    pub fn act(&self, a: ArrowId, x: u32) -> u32 {
        self.actions[a as usize][x as usize]
    }

    pub fn name(&self, t: usize, x: u32) -> &str {
        &self.names[t][x as usize]
    }

    pub fn names(&self, t: usize) -> &[String] {
        &self.names[t]
    }

    pub fn find(&self, t: usize, name: &str) -> Option<u32> {
        self.names[t].iter().position(|n| n == name).map(|i| i as u32)
    }

    pub fn is_empty(&self) -> bool {
        self.sizes.iter().all(|&s| s == 0)
    }

    /// Checks `X(id) = id` and `X(g∘f) = X(f)∘X(g)` on every composable pair,
    /// provided the number of pairs is at most `gate`. Returns the number of
    /// pairs checked, or `None` if the gate was hit.
    pub fn audit_functoriality(&self, gate: usize) -> Result<Option<usize>, PresheafError> {
        let site = &self.site;
        let n = site.len();
        let mut pairs = 0usize;
        for s in 0..n {
            for u in 0..n {
                for t in 0..n {
                    pairs += site.hom(s, u).len() * site.hom(u, t).len();
                }
            }
        }
        if pairs > gate {
            return Ok(None);
        }
        for t in 0..n {
            let id = site.identity(t);
            if self.action(id).iter().enumerate().any(|(i, &y)| y != i as u32) {
                return Err(PresheafError::NotFunctorial(format!(
                    "identity of {} acts nontrivially",
                    site.category().show_obj(site.object(t))
                )));
            }
        }
        for s in 0..n {
            for u in 0..n {
                for f in site.arrows(s, u) {
                    for t in 0..n {
                        for g in site.arrows(u, t) {
                            let gf = site.compose(g, f);
                            for x in 0..self.sizes[t] {
                                if self.act(gf, x) != self.act(f, self.act(g, x)) {
                                    let cat = site.category();
                                    return Err(PresheafError::NotFunctorial(format!(
                                        "X({} o {}) differs from X({}) X({}) at {}",
                                        cat.show_mor(site.arrow(g)),
                                        cat.show_mor(site.arrow(f)),
                                        cat.show_mor(site.arrow(f)),
                                        cat.show_mor(site.arrow(g)),
                                        self.name(t, x)
                                    )));
                                }
                            }
                        }
                    }
                }
            }
        }
        Ok(Some(pairs))
    }

    /// Replaces element names; the shape must be unchanged.
    pub fn renamed(mut self, names: Vec<Vec<String>>) -> Result<Self, PresheafError> {
        if names.iter().map(|v| v.len() as u32).collect::<Vec<_>>() != self.sizes {
            return Err(PresheafError::Malformed("renaming changes sizes".into()));
        }
        self.names = names;
        Ok(self)
    }
}
