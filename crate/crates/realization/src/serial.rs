//! Text form of enriched categories: object names, one presheaf block per
//! hom, identities and composition tables.

use std::collections::HashMap;
use std::fmt::Write as _;
use std::sync::Arc;

use presheaf_engine::serial::{parse_presheaf, write_presheaf};
use theta_cat::{Product, Theta};

use crate::enriched::{CompTable, EnrichedCat, Hom};
use crate::RealizationError;

fn join(v: &[u32]) -> String {
    v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(" ")
}

pub fn write_enriched(d: &EnrichedCat) -> String {
    let n = d.len();
    let mut out = String::from("enriched\n");
    writeln!(out, "objects {}", d.names().join(" ")).unwrap();
    for x in 0..n {
        for y in 0..n {
            writeln!(out, "hom {x} {y}").unwrap();
            out.push_str(&write_presheaf(d.hom(x, y)));
        }
    }
    for x in 0..n {
        writeln!(out, "identity {x} : {}", d.identity(x)).unwrap();
    }
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                for (t, row) in d.table(i, j, k).iter().enumerate() {
                    writeln!(out, "compose {i} {j} {k} {t} : {}", join(row)).unwrap();
                }
            }
        }
    }
    out.push_str("end enriched\n");
    out
}

fn bad(line: usize, why: impl Into<String>) -> RealizationError {
    RealizationError::Shape(format!("line {}: {}", line + 1, why.into()))
}

fn nums(s: &str, line: usize) -> Result<Vec<u32>, RealizationError> {
    s.split_whitespace()
        .map(|w| w.parse().map_err(|_| bad(line, format!("bad number {w:?}"))))
        .collect()
}

/// Reads [`write_enriched`] output; `base` is the category `C` of `C × Δ`.
pub fn parse_enriched(base: &Theta, text: &str) -> Result<EnrichedCat, RealizationError> {
    let cat = Product::new(base.clone(), Theta::new(1));
    let lines: Vec<&str> = text.lines().collect();
    let mut pos = 0;
    let mut next = |want: &str| -> Result<(usize, &str), RealizationError> {
        let l = *lines.get(pos).ok_or_else(|| bad(pos, "unexpected end of input"))?;
        pos += 1;
        if !l.starts_with(want) {
            return Err(bad(pos - 1, format!("expected {want:?}")));
        }
        Ok((pos - 1, l))
    };
    next("enriched")?;
    let (_, l) = next("objects")?;
    let names: Vec<String> = l.split_whitespace().skip(1).map(str::to_string).collect();
    let n = names.len();
    let mut homs: Vec<Vec<Hom>> = Vec::with_capacity(n);
    for x in 0..n {
        let mut row = Vec::with_capacity(n);
        for y in 0..n {
            let (at, l) = next("hom")?;
            if l != format!("hom {x} {y}") {
                return Err(bad(at, "homs out of order"));
            }
            let (start, _) = next("presheaf")?;
            let end = loop {
                let (e, l) = next("")?;
                if l == "end presheaf" {
                    break e;
                }
            };
            let chunk = lines[start..=end].join("\n");
            let h = parse_presheaf(&cat, &chunk).map_err(|e| bad(start, e.to_string()))?;
            row.push(Arc::new(h));
        }
        homs.push(row);
    }
    let site = match homs.first().and_then(|r| r.first()) {
        Some(h) => h.site().clone(),
        None => return Err(bad(0, "an enriched category needs an object")),
    };
    let mut identities = Vec::with_capacity(n);
    for x in 0..n {
        let (at, l) = next("identity")?;
        let (h, v) = l.split_once(" : ").ok_or_else(|| bad(at, "bad identity line"))?;
        if h != format!("identity {x}") {
            return Err(bad(at, "identities out of order"));
        }
        identities.push(v.trim().parse().map_err(|_| bad(at, "bad identity"))?);
    }
    let mut compose: HashMap<(usize, usize, usize), CompTable> = HashMap::new();
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                let mut tab = Vec::with_capacity(site.len());
                for t in 0..site.len() {
                    let (at, l) = next("compose")?;
                    let (h, v) = l.split_once(" :").ok_or_else(|| bad(at, "bad compose line"))?;
                    if h != format!("compose {i} {j} {k} {t}") {
                        return Err(bad(at, "composition tables out of order"));
                    }
                    tab.push(nums(v, at)?);
                }
                compose.insert((i, j, k), tab);
            }
        }
    }
    let (at, l) = next("end enriched")?;
    if l != "end enriched" {
        return Err(bad(at, "expected end enriched"));
    }
    EnrichedCat::new(site, names, homs, compose, identities)
}
