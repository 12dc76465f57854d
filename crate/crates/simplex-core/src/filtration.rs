//! Inner-anodyne filtrations of subcomplexes of `Δ^n × Δ^m`.
//!
//! Both `Δ^n` and `Δ^n × Δ^m` are nerves of finite posets, so a simplicial
//! subset is determined by its set of strict chains, closed under subchains.
//! A step attaches one chain `σ` together with its face `d_ℓ σ` along the horn
//! `Λ^r_ℓ`.

use std::collections::BTreeSet;

use crate::{MonotoneMap, SimplexError};

/// A strict chain in the grid poset `[n] × [m]`.
pub type Chain = Vec<(usize, usize)>;

/// A simplicial subset of the nerve of `[n] × [m]`, stored as its chains.
pub type ChainComplex = BTreeSet<Chain>;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HornStep {
    pub r: usize,
    pub l: usize,
    pub simplex: (MonotoneMap, MonotoneMap),
}

impl HornStep {
    pub fn chain(&self) -> Chain {
        let (a, b) = &self.simplex;
        a.values().iter().copied().zip(b.values().iter().copied()).collect()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HornFiltration {
    pub n: usize,
    pub j: usize,
    pub m: usize,
    pub steps: Vec<HornStep>,
}

fn is_strict(c: &Chain) -> bool {
    c.windows(2)
        .all(|w| w[0].0 <= w[1].0 && w[0].1 <= w[1].1 && w[0] != w[1])
}

/// Every nonempty strict chain of `[n] × [m]`.
pub(crate) fn all_chains(n: usize, m: usize) -> ChainComplex {
    let mut out = BTreeSet::new();
    let mut cur = Vec::new();
    fn go(n: usize, m: usize, cur: &mut Chain, out: &mut ChainComplex) {
        let (lo_a, lo_b, first) = match cur.last() {
            Some(&(a, b)) => (a, b, false),
            None => (0, 0, true),
        };
        for a in lo_a..=n {
            for b in lo_b..=m {
                if !first && (a, b) == (lo_a, lo_b) {
                    continue;
                }
                cur.push((a, b));
                out.insert(cur.clone());
                go(n, m, cur, out);
                cur.pop();
            }
        }
    }
    go(n, m, &mut cur, &mut out);
    out
}

pub(crate) fn faces(c: &Chain) -> impl Iterator<Item = Chain> + '_ {
    (0..c.len()).map(move |i| {
        let mut f = c.clone();
        f.remove(i);
        f
    })
}

fn horn_domain(n: usize, j: usize, m: usize) -> ChainComplex {
    all_chains(n, m)
        .into_iter()
        .filter(|c| {
            let first: BTreeSet<usize> = c.iter().map(|p| p.0).collect();
            let second: BTreeSet<usize> = c.iter().map(|p| p.1).collect();
            let in_horn = (0..=n).any(|v| v != j && !first.contains(&v));
            let in_bdry = m > 0 && second.len() < m + 1;
            in_horn || in_bdry
        })
        .collect()
}

/// Nondegenerate simplices of `Δ^n × Δ^m` outside `Λ^n_j × Δ^m ∪ Δ^n × ∂Δ^m`.
pub fn missing_simplices(n: usize, j: usize, m: usize) -> ChainComplex {
    let dom = horn_domain(n, j, m);
    all_chains(n, m).difference(&dom).cloned().collect()
}

/// Finds a sequence of inner horn attachments taking `start` to `goal`.
///
/// Candidates are tried in (dimension, lexicographic chain, ℓ) order with
/// backtracking. Both complexes must be closed under faces.
pub fn inner_filtration(
    start: &ChainComplex,
    goal: &ChainComplex,
    budget: usize,
) -> Result<Vec<(Chain, usize)>, SimplexError> {
    let mut missing: Vec<Chain> = goal.difference(start).cloned().collect();
    missing.sort_by(|a, b| a.len().cmp(&b.len()).then(a.cmp(b)));
    let mut present = start.clone();
    let mut steps = Vec::new();
    let mut nodes = 0usize;
    if search(&missing, &mut present, &mut steps, &mut nodes, budget)? {
        Ok(steps)
    } else {
        Err(SimplexError::NoFiltration)
    }
}

fn candidates(missing: &[Chain], present: &ChainComplex) -> Vec<(Chain, usize)> {
    let mut out = Vec::new();
    for s in missing {
        if present.contains(s) || s.len() < 3 {
            continue;
        }
        let r = s.len() - 1;
        for l in 1..r {
            let mut ok = true;
            for (i, f) in faces(s).enumerate() {
                let has = present.contains(&f);
                if (i == l && has) || (i != l && !has) {
                    ok = false;
                    break;
                }
            }
            if ok {
                out.push((s.clone(), l));
            }
        }
    }
    out
}

fn search(
    missing: &[Chain],
    present: &mut ChainComplex,
    steps: &mut Vec<(Chain, usize)>,
    nodes: &mut usize,
    budget: usize,
) -> Result<bool, SimplexError> {
    if missing.iter().all(|s| present.contains(s)) {
        return Ok(true);
    }
    *nodes += 1;
    if *nodes > budget {
        return Err(SimplexError::Budget(budget));
    }
    for (s, l) in candidates(missing, present) {
        let mut face = s.clone();
        face.remove(l);
        present.insert(s.clone());
        present.insert(face.clone());
        steps.push((s.clone(), l));
        if search(missing, present, steps, nodes, budget)? {
            return Ok(true);
        }
        steps.pop();
        present.remove(&s);
        present.remove(&face);
    }
    Ok(false)
}

fn chain_to_step(c: &Chain, l: usize, n: usize, m: usize) -> HornStep {
    let a = MonotoneMap::new(n, c.iter().map(|p| p.0).collect()).expect("chain is monotone");
    let b = MonotoneMap::new(m, c.iter().map(|p| p.1).collect()).expect("chain is monotone");
    HornStep {
        r: c.len() - 1,
        l,
        simplex: (a, b),
    }
}

/// Filtration of `Λ^n_j × Δ^m ∪ Δ^n × ∂Δ^m ↪ Δ^n × Δ^m` by inner horns.
pub fn horn_product_filtration(n: usize, j: usize, m: usize) -> Result<HornFiltration, SimplexError> {
    if n < 2 || j == 0 || j >= n {
        return Err(SimplexError::OuterHorn { n, j });
    }
    let start = horn_domain(n, j, m);
    let goal = all_chains(n, m);
    let steps = inner_filtration(&start, &goal, 1_000_000)?
        .into_iter()
        .map(|(c, l)| chain_to_step(&c, l, n, m))
        .collect();
    let filt = HornFiltration { n, j, m, steps };
    verify_filtration(&filt)?;
    Ok(filt)
}

/// Replays a filtration from its domain and checks every step invariant.
pub fn verify_filtration(f: &HornFiltration) -> Result<(), SimplexError> {
    if f.n < 2 || f.j == 0 || f.j >= f.n {
        return Err(SimplexError::OuterHorn { n: f.n, j: f.j });
    }
    let bad = |index: usize, reason: &str| SimplexError::BadStep {
        index,
        reason: reason.to_string(),
    };
    let mut present = horn_domain(f.n, f.j, f.m);
    for (idx, step) in f.steps.iter().enumerate() {
        let c = step.chain();
        if step.simplex.0.target() != f.n || step.simplex.1.target() != f.m {
            return Err(bad(idx, "simplex lies in the wrong product"));
        }
        if !is_strict(&c) || c.len() != step.r + 1 {
            return Err(bad(idx, "simplex is not injective"));
        }
        if step.l == 0 || step.l >= step.r {
            return Err(bad(idx, "horn is not inner"));
        }
        if c.first() != Some(&(0, 0)) || c.last() != Some(&(f.n, f.m)) {
            return Err(bad(idx, "simplex does not preserve initial and terminal vertices"));
        }
        if present.contains(&c) {
            return Err(bad(idx, "simplex already present"));
        }
        for (i, face) in faces(&c).enumerate() {
            let has = present.contains(&face);
            if i == step.l && has {
                return Err(bad(idx, "attached face already present"));
            }
            if i != step.l && !has {
                return Err(bad(idx, "horn face missing"));
            }
        }
        let mut face = c.clone();
        face.remove(step.l);
        present.insert(c);
        present.insert(face);
    }
    if present != all_chains(f.n, f.m) {
        return Err(bad(f.steps.len(), "filtration does not cover the product"));
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn base_case_is_single_horn() {
        let f = horn_product_filtration(2, 1, 0).unwrap();
        assert_eq!(f.steps.len(), 1);
        assert_eq!((f.steps[0].r, f.steps[0].l), (2, 1));
    }

    #[test]
    fn rejects_outer() {
        assert!(matches!(
            horn_product_filtration(2, 0, 1),
            Err(SimplexError::OuterHorn { .. })
        ));
        assert!(horn_product_filtration(3, 3, 0).is_err());
    }

    #[test]
    fn worked_example() {
        assert_eq!(missing_simplices(2, 1, 1).len(), 8);
        assert_eq!(horn_product_filtration(2, 1, 1).unwrap().steps.len(), 4);
    }
}
