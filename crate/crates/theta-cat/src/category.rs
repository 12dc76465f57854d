use std::fmt::Debug;
use std::hash::Hash;
use std::sync::Arc;

use crate::ThetaError;

/// Result of factoring a family of arrows `f_j : c -> d_j` jointly.
///
/// `f_j = plus[j] ∘ minus`, with `minus : c -> middle` a minus map and the
/// family `plus` jointly nondegenerate.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Factorization<O, M> {
    pub minus: M,
    pub middle: O,
    pub plus: Vec<M>,
}

/// A finitely presented graded category with unique minus/plus factorization.
pub trait Category: Clone + Send + Sync + 'static {
    type Obj: Clone + Eq + Ord + Hash + Debug + Send + Sync;
    type Mor: Clone + Eq + Ord + Hash + Debug + Send + Sync;

    fn name(&self) -> String;

    /// All objects of dimension at most `max_dim`, ordered by dimension first.
    fn objects(&self, max_dim: usize) -> Vec<Self::Obj>;

    fn dim(&self, o: &Self::Obj) -> usize;

    fn hom(&self, s: &Self::Obj, t: &Self::Obj) -> Arc<Vec<Self::Mor>>;

    /// `g ∘ f`.
    fn compose(&self, g: &Self::Mor, f: &Self::Mor) -> Self::Mor;

    fn identity(&self, o: &Self::Obj) -> Self::Mor;

    fn terminal(&self) -> Self::Obj;

    /// Joint factorization of a family of arrows out of `src`.
    ///
    /// For a single arrow this is the Reedy factorization. For a family it is
    /// the Eilenberg–Zilber decomposition of the corresponding section of the
    /// product of representables.
    fn joint_factor(&self, src: &Self::Obj, fs: &[Self::Mor]) -> Factorization<Self::Obj, Self::Mor>;

    fn is_minus(&self, f: &Self::Mor, tgt: &Self::Obj) -> bool;

    fn show_obj(&self, o: &Self::Obj) -> String;

    fn show_mor(&self, f: &Self::Mor) -> String;

    fn parse_obj(&self, s: &str) -> Result<Self::Obj, ThetaError>;

    fn parse_mor(&self, s: &str) -> Result<Self::Mor, ThetaError>;

    fn is_identity(&self, src: &Self::Obj, f: &Self::Mor) -> bool {
        *f == self.identity(src)
    }

    fn factor(&self, src: &Self::Obj, f: &Self::Mor) -> (Self::Mor, Self::Obj, Self::Mor) {
        let mut fz = self.joint_factor(src, std::slice::from_ref(f));
        (fz.minus, fz.middle, fz.plus.pop().expect("one arrow in, one out"))
    }

    fn is_plus(&self, src: &Self::Obj, f: &Self::Mor) -> bool {
        self.is_jointly_nondegenerate(src, std::slice::from_ref(f))
    }

    /// True iff the section `src -> ∏ d_j` given by `fs` is nondegenerate.
    fn is_jointly_nondegenerate(&self, src: &Self::Obj, fs: &[Self::Mor]) -> bool {
        let fz = self.joint_factor(src, fs);
        fz.middle == *src && self.is_identity(src, &fz.minus)
    }
}

/// True iff `f : src -> _` induces an injective map of representables,
/// checked at every object of dimension at most `dim src`.
///
/// Checking up to `dim src` suffices: in a normal skeletal category every
/// section factors uniquely through a nondegenerate one of no larger dimension.
pub fn is_mono<C: Category>(cat: &C, src: &C::Obj, f: &C::Mor) -> bool {
    for e in cat.objects(cat.dim(src)) {
        let xs = cat.hom(&e, src);
        let mut images: Vec<C::Mor> = xs.iter().map(|x| cat.compose(f, x)).collect();
        images.sort();
        images.dedup();
        if images.len() != xs.len() {
            return false;
        }
    }
    true
}
