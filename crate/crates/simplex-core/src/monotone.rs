use std::fmt;

use crate::SimplexError;

/// A nondecreasing map `[source] -> [target]`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct MonotoneMap {
    source: usize,
    target: usize,
    values: Vec<usize>,
}

impl MonotoneMap {
    pub fn new(target: usize, values: Vec<usize>) -> Result<Self, SimplexError> {
        let bad = values.is_empty()
            || values.windows(2).any(|w| w[0] > w[1])
            || values.iter().any(|&v| v > target);
        if bad {
            return Err(SimplexError::NotMonotone {
                from: values.len().saturating_sub(1),
                target,
                values,
            });
        }
        Ok(Self {
            source: values.len() - 1,
            target,
            values,
        })
    }

    pub fn identity(n: usize) -> Self {
        Self {
            source: n,
            target: n,
            values: (0..=n).collect(),
        }
    }

    pub fn constant(m: usize, n: usize, v: usize) -> Self {
        assert!(v <= n);
        Self {
            source: m,
            target: n,
            values: vec![v; m + 1],
        }
    }

    /// Coface `δ^i : [n-1] -> [n]` skipping `i`.
    pub fn coface(n: usize, i: usize) -> Self {
        assert!(n >= 1 && i <= n);
        let values = (0..n).map(|v| if v < i { v } else { v + 1 }).collect();
        Self {
            source: n - 1,
            target: n,
            values,
        }
    }

    /// Codegeneracy `σ^i : [n+1] -> [n]` hitting `i` twice.
    pub fn codegeneracy(n: usize, i: usize) -> Self {
        assert!(i <= n);
        let values = (0..=n + 1).map(|v| if v <= i { v } else { v - 1 }).collect();
        Self {
            source: n + 1,
            target: n,
            values,
        }
    }

    pub fn source(&self) -> usize {
        self.source
    }

    pub fn target(&self) -> usize {
        self.target
    }

    pub fn values(&self) -> &[usize] {
        &self.values
    }

    pub fn apply(&self, i: usize) -> usize {
        self.values[i]
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &MonotoneMap) -> Result<MonotoneMap, SimplexError> {
        if other.target != self.source {
            return Err(SimplexError::Mismatch {
                left: other.target,
                right: self.source,
            });
        }
        Ok(MonotoneMap {
            source: other.source,
            target: self.target,
            values: other.values.iter().map(|&v| self.values[v]).collect(),
        })
    }

    pub fn is_injective(&self) -> bool {
        self.values.windows(2).all(|w| w[0] < w[1])
    }

    pub fn is_surjective(&self) -> bool {
        self.values[0] == 0
            && self.values[self.source] == self.target
            && self.values.windows(2).all(|w| w[1] - w[0] <= 1)
    }

    pub fn is_identity(&self) -> bool {
        self.source == self.target && self.is_injective()
    }

    /// Sorted image of the map.
    pub fn image(&self) -> Vec<usize> {
        let mut v = self.values.clone();
        v.dedup();
        v
    }
}

impl fmt::Display for MonotoneMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.values.iter().map(|v| v.to_string()).collect();
        write!(f, "{}", parts.join(","))
    }
}

pub fn binomial(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc * (n - i) as u128 / (i + 1) as u128;
    }
    acc as usize
}

/// All monotone maps `[m] -> [n]` in lexicographic order of value sequences.
pub fn enumerate_monotone(m: usize, n: usize) -> Vec<MonotoneMap> {
    let mut out = Vec::with_capacity(binomial(m + n + 1, m + 1));
    let mut cur = vec![0usize; m + 1];
    loop {
        out.push(MonotoneMap {
            source: m,
            target: n,
            values: cur.clone(),
        });
        // next nondecreasing sequence in lex order
        let mut i = m + 1;
        loop {
            if i == 0 {
                return out;
            }
            i -= 1;
            if cur[i] < n {
                let v = cur[i] + 1;
                for slot in cur.iter_mut().skip(i) {
                    *slot = v;
                }
                break;
            }
        }
    }
}

/// Unique factorization `f = injection ∘ surjection`.
pub fn epi_mono_factor(f: &MonotoneMap) -> (MonotoneMap, MonotoneMap) {
    let image = f.image();
    let k = image.len() - 1;
    let surj = f
        .values
        .iter()
        .map(|v| image.binary_search(v).expect("value lies in image"))
        .collect();
    (
        MonotoneMap {
            source: f.source,
            target: k,
            values: surj,
        },
        MonotoneMap {
            source: k,
            target: f.target,
            values: image,
        },
    )
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_counts() {
        assert_eq!(enumerate_monotone(0, 3).len(), 4);
        let maps: Vec<String> = enumerate_monotone(1, 1).iter().map(|m| m.to_string()).collect();
        assert_eq!(maps, ["0,0", "0,1", "1,1"]);
        assert_eq!(enumerate_monotone(2, 1).len(), 4);
    }

    #[test]
    fn factor_examples() {
        let f = MonotoneMap::new(2, vec![0, 0, 2]).unwrap();
        let (s, i) = epi_mono_factor(&f);
        assert_eq!(s.values(), &[0, 0, 1]);
        assert_eq!(i.values(), &[0, 2]);
        let c = MonotoneMap::constant(1, 1, 0);
        let (s, i) = epi_mono_factor(&c);
        assert_eq!((s.target(), i.values()), (0, &[0][..]));
    }

    #[test]
    fn cosimplicial_identity() {
        for n in 1..4 {
            for i in 0..n {
                let s = MonotoneMap::codegeneracy(n - 1, i);
                assert!(s.compose(&MonotoneMap::coface(n, i)).unwrap().is_identity());
                assert!(s.compose(&MonotoneMap::coface(n, i + 1)).unwrap().is_identity());
            }
        }
    }
}
