//! Exhaustive checks of the regular Cartesian Reedy axioms at a bound.

use std::collections::BTreeMap;

use crate::Category;

/// Outcome of [`check_cr_axioms`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CrReport {
    pub category: String,
    pub max_dim: usize,
    pub arity: usize,
    pub sections: usize,
    /// Nondegenerate sections per factor tuple: (factorization count, oracle count).
    pub census: BTreeMap<String, (usize, usize)>,
    pub violations: Vec<String>,
    pub truncated: bool,
}

impl CrReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
            && !self.truncated
            && self.census.values().all(|(a, b)| a == b)
    }

    pub fn nondegenerate_total(&self) -> usize {
        self.census.values().map(|c| c.0).sum()
    }
}

/// Brute-force degeneracy test for a section `c -> ∏ t_i`: does it factor
/// through some object of strictly smaller dimension?
pub fn is_degenerate_family_oracle<C: Category>(
    cat: &C,
    lower: &[C::Obj],
    c: &C::Obj,
    family: &[(C::Mor, C::Obj)],
) -> bool {
    let dc = cat.dim(c);
    for u in lower.iter().filter(|u| cat.dim(u) < dc) {
        for g in cat.hom(c, u).iter() {
            let all = family.iter().all(|(f, t)| {
                cat.hom(u, t).iter().any(|h| cat.compose(h, g) == *f)
            });
            if all {
                return true;
            }
        }
    }
    false
}

/// Checks CR1 (nondegenerate sections of products of representables are
/// monic) and CR2 (their dimension is bounded by the sum) for every tuple of
/// at most `arity` objects of dimension at most `max_dim`.
pub fn check_cr_axioms<C: Category>(cat: &C, max_dim: usize, arity: usize, budget: usize) -> CrReport {
    let objs = cat.objects(max_dim);
    let mut report = CrReport {
        category: cat.name(),
        max_dim,
        arity,
        sections: 0,
        census: BTreeMap::new(),
        violations: Vec::new(),
        truncated: false,
    };
    let mut tuples: Vec<Vec<usize>> = vec![Vec::new()];
    let mut frontier: Vec<Vec<usize>> = vec![Vec::new()];
    for _ in 0..arity {
        let mut next = Vec::new();
        for t in &frontier {
            let start = t.last().copied().unwrap_or(0);
            for k in start..objs.len() {
                let mut u = t.clone();
                u.push(k);
                next.push(u);
            }
        }
        tuples.extend(next.iter().cloned());
        frontier = next;
    }
    'outer: for tuple in &tuples {
        let targets: Vec<&C::Obj> = tuple.iter().map(|&k| &objs[k]).collect();
        let key = format!(
            "({})",
            targets.iter().map(|t| cat.show_obj(t)).collect::<Vec<_>>().join(", ")
        );
        let total: usize = targets.iter().map(|t| cat.dim(t)).sum();
        let mut fast = 0;
        let mut slow = 0;
        for c in &objs {
            let homs: Vec<_> = targets.iter().map(|t| cat.hom(c, t)).collect();
            let lens: Vec<usize> = homs.iter().map(|h| h.len()).collect();
            let mut sections = Vec::new();
            product_indices(&lens, |idx| sections.push(idx.to_vec()));
            for idx in sections {
                report.sections += 1;
                if report.sections > budget {
                    report.truncated = true;
                    report.census.insert(key, (fast, slow));
                    break 'outer;
                }
                let fs: Vec<C::Mor> = idx.iter().zip(&homs).map(|(&i, h)| h[i].clone()).collect();
                let nd_fast = cat.is_jointly_nondegenerate(c, &fs);
                let fam: Vec<(C::Mor, C::Obj)> =
                    fs.iter().cloned().zip(targets.iter().map(|t| (*t).clone())).collect();
                let nd_slow = !is_degenerate_family_oracle(cat, &objs, c, &fam);
                fast += usize::from(nd_fast);
                slow += usize::from(nd_slow);
                let shown = || {
                    format!(
                        "{} -> {}: [{}]",
                        cat.show_obj(c),
                        key,
                        fs.iter().map(|f| cat.show_mor(f)).collect::<Vec<_>>().join(", ")
                    )
                };
                if nd_fast != nd_slow {
                    report.violations.push(format!("degeneracy disagreement at {}", shown()));
                }
                if !nd_slow {
                    continue;
                }
                if cat.dim(c) > total {
                    report.violations.push(format!("CR2 fails at {}", shown()));
                }
                for e in &objs {
                    let xs = cat.hom(e, c);
                    let mut images: Vec<Vec<C::Mor>> = xs
                        .iter()
                        .map(|x| fs.iter().map(|f| cat.compose(f, x)).collect())
                        .collect();
                    images.sort();
                    images.dedup();
                    if images.len() != xs.len() {
                        report
                            .violations
                            .push(format!("CR1 fails at {} evaluated at {}", shown(), cat.show_obj(e)));
                        break;
                    }
                }
            }
        }
        report.census.insert(key, (fast, slow));
    }
    report
}

fn product_indices(lens: &[usize], mut f: impl FnMut(&[usize])) {
    if lens.iter().any(|&l| l == 0) {
        return;
    }
    let mut idx = vec![0usize; lens.len()];
    loop {
        f(&idx);
        let mut k = lens.len();
        loop {
            if k == 0 {
                return;
            }
            k -= 1;
            idx[k] += 1;
            if idx[k] < lens[k] {
                break;
            }
            idx[k] = 0;
        }
    }
}
