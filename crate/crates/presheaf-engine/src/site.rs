//! A finite full subcategory of a graded category, with every arrow numbered.

use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, OnceLock};

use theta_cat::Category;

use crate::PresheafError;

/// Arrow ids are dense: the arrows `s -> t` occupy a contiguous block,
/// ordered as the sorted hom-set.
pub type ArrowId = u32;

pub struct Site<C: Category> {
    cat: C,
    objects: Vec<C::Obj>,
    index: HashMap<C::Obj, usize>,
    homs: Vec<Arc<Vec<C::Mor>>>,
    offsets: Vec<u32>,
    ends: Vec<(u32, u32)>,
    key: String,
    tag: String,
    minus_from: OnceLock<Vec<Vec<ArrowId>>>,
    plus_into: OnceLock<Vec<Vec<ArrowId>>>,
}

impl<C: Category> fmt::Debug for Site<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Site({})", self.key)
    }
}

impl<C: Category> Site<C> {
    /// The full subcategory on `objects`. Order is normalized to the
    /// category's object order and duplicates are dropped.
    pub fn new(cat: C, mut objects: Vec<C::Obj>, tag: &str) -> Arc<Self> {
        objects.sort_by(|a, b| cat.dim(a).cmp(&cat.dim(b)).then_with(|| a.cmp(b)));
        objects.dedup();
        let n = objects.len();
        let index = objects.iter().cloned().enumerate().map(|(i, o)| (o, i)).collect();
        let mut homs = Vec::with_capacity(n * n);
        let mut offsets = Vec::with_capacity(n * n + 1);
        let mut ends = Vec::new();
        let mut next = 0u32;
        for (s, so) in objects.iter().enumerate() {
            for (t, to) in objects.iter().enumerate() {
                let mut h: Vec<C::Mor> = cat.hom(so, to).as_ref().clone();
                h.sort();
                offsets.push(next);
                next += h.len() as u32;
                ends.extend(std::iter::repeat((s as u32, t as u32)).take(h.len()));
                homs.push(Arc::new(h));
            }
        }
        offsets.push(next);
        let key = format!("{}:{}", cat.name(), tag);
        Arc::new(Site {
            cat,
            objects,
            index,
            homs,
            offsets,
            ends,
            key,
            tag: tag.to_string(),
            minus_from: OnceLock::new(),
            plus_into: OnceLock::new(),
        })
    }

    /// All objects of dimension at most `d`.
    pub fn dim(cat: C, d: usize) -> Arc<Self> {
        let objs = cat.objects(d);
        Site::new(cat, objs, &format!("dim<={d}"))
    }

    /// The objects admitting a plus map into one of `roots`, i.e. the
    /// smallest full subcategory containing `roots` and closed under faces.
    /// Representables of the roots and all their subobjects live here
    /// without loss.
    pub fn faces(cat: C, roots: &[C::Obj]) -> Arc<Self> {
        let d = roots.iter().map(|r| cat.dim(r)).max().unwrap_or(0);
        let mut objs = Vec::new();
        for s in cat.objects(d) {
            if roots.iter().any(|r| cat.hom(&s, r).iter().any(|f| cat.is_plus(&s, f))) {
                objs.push(s);
            }
        }
        let names: Vec<String> = roots.iter().map(|r| cat.show_obj(r)).collect();
        Site::new(cat, objs, &format!("faces({})", names.join(";")))
    }

    pub fn category(&self) -> &C {
        &self.cat
    }

    pub fn key(&self) -> &str {
        &self.key
    }

    /// The label given at construction, e.g. `dim<=3`.
    pub fn tag(&self) -> &str {
        &self.tag
    }

    pub fn objects(&self) -> &[C::Obj] {
        &self.objects
    }

    pub fn len(&self) -> usize {
        self.objects.len()
    }

    pub fn is_empty(&self) -> bool {
        self.objects.is_empty()
    }

    pub fn object(&self, i: usize) -> &C::Obj {
        &self.objects[i]
    }

    pub fn index_of(&self, o: &C::Obj) -> Option<usize> {
        self.index.get(o).copied()
    }

    pub fn require(&self, o: &C::Obj) -> Result<usize, PresheafError> {
        self.index_of(o).ok_or_else(|| PresheafError::MissingObject {
            object: self.cat.show_obj(o),
            site: self.key.clone(),
        })
    }

    pub fn dim_of(&self, i: usize) -> usize {
        self.cat.dim(&self.objects[i])
    }

    pub fn max_dim(&self) -> usize {
        (0..self.len()).map(|i| self.dim_of(i)).max().unwrap_or(0)
    }

    pub fn arrow_count(&self) -> usize {
        self.ends.len()
    }

    /// Sorted arrows `s -> t`.
    pub fn hom(&self, s: usize, t: usize) -> &[C::Mor] {
        &self.homs[s * self.len() + t]
    }

    pub fn arrows(&self, s: usize, t: usize) -> std::ops::Range<ArrowId> {
        let k = s * self.len() + t;
        self.offsets[k]..self.offsets[k + 1]
    }

    pub fn ends(&self, a: ArrowId) -> (usize, usize) {
        let (s, t) = self.ends[a as usize];
        (s as usize, t as usize)
    }

    pub fn arrow(&self, a: ArrowId) -> &C::Mor {
        let (s, t) = self.ends(a);
        let k = s * self.len() + t;
        &self.homs[k][(a - self.offsets[k]) as usize]
    }

    pub fn arrow_id(&self, s: usize, t: usize, f: &C::Mor) -> Option<ArrowId> {
        let k = s * self.len() + t;
        self.homs[k].binary_search(f).ok().map(|i| self.offsets[k] + i as u32)
    }

    pub fn identity(&self, t: usize) -> ArrowId {
        let f = self.cat.identity(&self.objects[t]);
        self.arrow_id(t, t, &f).expect("identity is in every hom-set")
    }

    /// `g ∘ f` for `f : s -> u`, `g : u -> t`.
    pub fn compose(&self, g: ArrowId, f: ArrowId) -> ArrowId {
        let (s, u) = self.ends(f);
        let (u2, t) = self.ends(g);
        assert_eq!(u, u2, "arrows not composable");
        let h = self.cat.compose(self.arrow(g), self.arrow(f));
        self.arrow_id(s, t, &h).expect("full subcategory is closed under composition")
    }

    /// Non-identity minus arrows with source `t`.
    pub fn minus_from(&self, t: usize) -> &[ArrowId] {
        &self.minus_from.get_or_init(|| {
            (0..self.len())
                .map(|s| {
                    (0..self.len())
                        .flat_map(|u| self.arrows(s, u))
                        .filter(|&a| {
                            let (_, u) = self.ends(a);
                            u != s && self.cat.is_minus(self.arrow(a), &self.objects[u])
                        })
                        .collect()
                })
                .collect()
        })[t]
    }

    /// Non-identity plus arrows with target `u`.
    pub fn plus_into(&self, u: usize) -> &[ArrowId] {
        &self.plus_into.get_or_init(|| {
            (0..self.len())
                .map(|t| {
                    (0..self.len())
                        .flat_map(|s| self.arrows(s, t))
                        .filter(|&a| {
                            let (s, _) = self.ends(a);
                            s != t && self.cat.is_plus(&self.objects[s], self.arrow(a))
                        })
                        .collect()
                })
                .collect()
        })[u]
    }

    pub fn same(&self, other: &Site<C>) -> bool {
        std::ptr::eq(self, other) || (self.key == other.key && self.objects == other.objects)
    }

    pub fn check_same(&self, other: &Site<C>) -> Result<(), PresheafError> {
        if self.same(other) {
            Ok(())
        } else {
            Err(PresheafError::SiteMismatch {
                left: self.key.clone(),
                right: other.key.clone(),
            })
        }
    }
}
