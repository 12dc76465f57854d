use std::sync::Arc;

use crate::{Category, Factorization, ThetaError};

/// The product category `A × B`, graded by the sum of dimensions.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Product<A, B> {
    pub left: A,
    pub right: B,
}

impl<A: Category, B: Category> Product<A, B> {
    pub fn new(left: A, right: B) -> Self {
        Product { left, right }
    }

    /// Objects `(a, b)` with `dim a ≤ da` and `dim b ≤ db`.
    pub fn objects_box(&self, da: usize, db: usize) -> Vec<(A::Obj, B::Obj)> {
        let mut out = Vec::new();
        for a in self.left.objects(da) {
            for b in self.right.objects(db) {
                out.push((a.clone(), b));
            }
        }
        out.sort_by(|x, y| {
            (self.left.dim(&x.0) + self.right.dim(&x.1))
                .cmp(&(self.left.dim(&y.0) + self.right.dim(&y.1)))
                .then_with(|| x.cmp(y))
        });
        out
    }
}

fn split_top(s: &str) -> Option<(&str, &str)> {
    let mut depth = 0i32;
    for (i, ch) in s.char_indices() {
        match ch {
            '(' | '[' => depth += 1,
            ')' | ']' => depth -= 1,
            '|' if depth == 0 => return Some((s[..i].trim(), s[i + 1..].trim())),
            _ => {}
        }
    }
    None
}

impl<A: Category, B: Category> Category for Product<A, B> {
    type Obj = (A::Obj, B::Obj);
    type Mor = (A::Mor, B::Mor);

    fn name(&self) -> String {
        format!("{}x{}", self.left.name(), self.right.name())
    }

    fn objects(&self, max_dim: usize) -> Vec<Self::Obj> {
        let mut out: Vec<Self::Obj> = self
            .objects_box(max_dim, max_dim)
            .into_iter()
            .filter(|o| self.dim(o) <= max_dim)
            .collect();
        out.dedup();
        out
    }

    fn dim(&self, o: &Self::Obj) -> usize {
        self.left.dim(&o.0) + self.right.dim(&o.1)
    }

    fn hom(&self, s: &Self::Obj, t: &Self::Obj) -> Arc<Vec<Self::Mor>> {
        let l = self.left.hom(&s.0, &t.0);
        let r = self.right.hom(&s.1, &t.1);
        let mut out = Vec::with_capacity(l.len() * r.len());
        for a in l.iter() {
            for b in r.iter() {
                out.push((a.clone(), b.clone()));
            }
        }
        Arc::new(out)
    }

    fn compose(&self, g: &Self::Mor, f: &Self::Mor) -> Self::Mor {
        (self.left.compose(&g.0, &f.0), self.right.compose(&g.1, &f.1))
    }

    fn identity(&self, o: &Self::Obj) -> Self::Mor {
        (self.left.identity(&o.0), self.right.identity(&o.1))
    }

    fn terminal(&self) -> Self::Obj {
        (self.left.terminal(), self.right.terminal())
    }

    fn joint_factor(&self, src: &Self::Obj, fs: &[Self::Mor]) -> Factorization<Self::Obj, Self::Mor> {
        let l: Vec<A::Mor> = fs.iter().map(|f| f.0.clone()).collect();
        let r: Vec<B::Mor> = fs.iter().map(|f| f.1.clone()).collect();
        let fl = self.left.joint_factor(&src.0, &l);
        let fr = self.right.joint_factor(&src.1, &r);
        Factorization {
            minus: (fl.minus, fr.minus),
            middle: (fl.middle, fr.middle),
            plus: fl.plus.into_iter().zip(fr.plus).collect(),
        }
    }

    fn is_minus(&self, f: &Self::Mor, tgt: &Self::Obj) -> bool {
        self.left.is_minus(&f.0, &tgt.0) && self.right.is_minus(&f.1, &tgt.1)
    }

    fn is_identity(&self, src: &Self::Obj, f: &Self::Mor) -> bool {
        self.left.is_identity(&src.0, &f.0) && self.right.is_identity(&src.1, &f.1)
    }

    fn show_obj(&self, o: &Self::Obj) -> String {
        format!("({} | {})", self.left.show_obj(&o.0), self.right.show_obj(&o.1))
    }

    fn show_mor(&self, f: &Self::Mor) -> String {
        format!("({} | {})", self.left.show_mor(&f.0), self.right.show_mor(&f.1))
    }

    fn parse_obj(&self, s: &str) -> Result<Self::Obj, ThetaError> {
        let err = || ThetaError::ParseObject(s.to_string());
        let inner = s.trim().strip_prefix('(').and_then(|t| t.strip_suffix(')')).ok_or_else(err)?;
        let (a, b) = split_top(inner).ok_or_else(err)?;
        Ok((self.left.parse_obj(a)?, self.right.parse_obj(b)?))
    }

    fn parse_mor(&self, s: &str) -> Result<Self::Mor, ThetaError> {
        let err = || ThetaError::ParseMap(s.to_string());
        let inner = s.trim().strip_prefix('(').and_then(|t| t.strip_suffix(')')).ok_or_else(err)?;
        let (a, b) = split_top(inner).ok_or_else(err)?;
        Ok((self.left.parse_mor(a)?, self.right.parse_mor(b)?))
    }
}
