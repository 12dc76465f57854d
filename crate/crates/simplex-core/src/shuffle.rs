use std::fmt;
use std::str::FromStr;

use crate::{MonotoneMap, SimplexError};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Axis {
    First,
    Second,
}

/// A lattice path from `(0,0)` to `(n,m)`, i.e. a top simplex of `Δ^n × Δ^m`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Shuffle {
    pub n: usize,
    pub m: usize,
    pub path: Vec<Axis>,
}

impl Shuffle {
    /// The induced simplex `Δ^{n+m} -> Δ^n × Δ^m`.
    pub fn simplex(&self) -> (MonotoneMap, MonotoneMap) {
        let (mut a, mut b) = (vec![0], vec![0]);
        for step in &self.path {
            let (x, y) = (*a.last().unwrap(), *b.last().unwrap());
            match step {
                Axis::First => {
                    a.push(x + 1);
                    b.push(y)
                }
                Axis::Second => {
                    a.push(x);
                    b.push(y + 1)
                }
            }
        }
        (
            MonotoneMap::new(self.n, a).expect("path stays in the grid"),
            MonotoneMap::new(self.m, b).expect("path stays in the grid"),
        )
    }
}

impl fmt::Display for Shuffle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for s in &self.path {
            f.write_str(match s {
                Axis::First => "0",
                Axis::Second => "1",
            })?;
        }
        Ok(())
    }
}

impl FromStr for Shuffle {
    type Err = SimplexError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let mut path = Vec::new();
        for ch in s.chars() {
            path.push(match ch {
                '0' => Axis::First,
                '1' => Axis::Second,
                _ => return Err(SimplexError::BadShuffle(s.to_string())),
            });
        }
        let n = path.iter().filter(|a| **a == Axis::First).count();
        Ok(Shuffle {
            n,
            m: path.len() - n,
            path,
        })
    }
}

/// All `(n, m)` shuffles, in lexicographic order of their 0/1 strings.
pub fn shuffles(n: usize, m: usize) -> Vec<Shuffle> {
    let mut out = Vec::new();
    let mut path = Vec::with_capacity(n + m);
    fn go(n: usize, m: usize, path: &mut Vec<Axis>, out: &mut Vec<Shuffle>, tn: usize, tm: usize) {
        if n == 0 && m == 0 {
            out.push(Shuffle {
                n: tn,
                m: tm,
                path: path.clone(),
            });
            return;
        }
        if n > 0 {
            path.push(Axis::First);
            go(n - 1, m, path, out, tn, tm);
            path.pop();
        }
        if m > 0 {
            path.push(Axis::Second);
            go(n, m - 1, path, out, tn, tm);
            path.pop();
        }
    }
    go(n, m, &mut path, &mut out, n, m);
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn counts() {
        assert_eq!(shuffles(0, 3).len(), 1);
        assert_eq!(shuffles(1, 1).len(), 2);
        assert_eq!(shuffles(2, 1).len(), 3);
    }

    #[test]
    fn roundtrip() {
        for s in shuffles(2, 2) {
            assert_eq!(s.to_string().parse::<Shuffle>().unwrap(), s);
        }
    }
}
