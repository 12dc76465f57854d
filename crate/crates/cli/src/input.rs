//! Parsing of flag values and input files.

use std::sync::Arc;

use intertwiner::{Label, SimplicialSubset};
use presheaf_engine::serial::{parse_certificate, parse_map, parse_presheaf};
use presheaf_engine::{CellCertificate, FinPresheaf, PresheafMap, Site};
use theta_cat::{Category, Theta, ThetaObj};

use crate::CliError;

/// Splits at commas outside brackets: `[1],[2]([0],[0])` gives two parts.
pub fn split_top(s: &str) -> Vec<&str> {
    let mut out = Vec::new();
    let (mut depth, mut start) = (0i32, 0);
    for (i, ch) in s.char_indices() {
        match ch {
            '[' | '(' => depth += 1,
            ']' | ')' => depth -= 1,
            ',' if depth == 0 => {
                out.push(s[start..i].trim());
                start = i + 1;
            }
            _ => {}
        }
    }
    let last = s[start..].trim();
    if !last.is_empty() || !out.is_empty() {
        out.push(last);
    }
    out
}

pub fn theta(level: usize) -> Theta {
    Theta::new(level)
}

pub fn object(cat: &Theta, s: &str) -> Result<ThetaObj, CliError> {
    cat.parse_obj(s).map_err(|e| CliError::Usage(format!("bad object {s:?} for {}: {e}", cat.name())))
}

/// The base category of labels; `Θ_0` has none.
pub fn base(cat: &Theta) -> Result<Theta, CliError> {
    if cat.level() == 0 {
        return Err(CliError::Usage("labels need --theta at least 1".into()));
    }
    Ok(cat.base())
}

/// `[1]` is the full label, `d[1]` its boundary, `e[1]` the empty label.
pub fn label(base: &Theta, s: &str) -> Result<Label, CliError> {
    if let Some(r) = s.strip_prefix('d') {
        Ok(Label::boundary(object(base, r)?))
    } else if let Some(r) = s.strip_prefix('e') {
        Ok(Label::empty(object(base, r)?))
    } else {
        Ok(Label::full(object(base, s)?))
    }
}

pub fn labels(base: &Theta, s: &str) -> Result<Vec<Label>, CliError> {
    split_top(s).into_iter().map(|p| label(base, p)).collect()
}

/// Legs `A/B` of a corner, comma separated.
pub fn legs(base: &Theta, s: &str) -> Result<Vec<(Label, Label)>, CliError> {
    split_top(s)
        .into_iter()
        .map(|p| {
            let (a, b) = p
                .split_once('/')
                .ok_or_else(|| CliError::Usage(format!("leg {p:?} is not of the form A/B")))?;
            Ok((label(base, a)?, label(base, b)?))
        })
        .collect()
}

/// `full:n`, `boundary:n`, `empty:n`, `spine:n`, `horn:n:k`, `face:n:i`.
pub fn region(s: &str) -> Result<SimplicialSubset, CliError> {
    let bad = || CliError::Usage(format!("bad region {s:?}"));
    let parts: Vec<&str> = s.split(':').collect();
    let num = |i: usize| -> Result<usize, CliError> { parts.get(i).and_then(|p| p.parse().ok()).ok_or_else(bad) };
    let n = num(1)?;
    let two = || -> Result<usize, CliError> {
        let k = num(2)?;
        if k > n {
            return Err(bad());
        }
        Ok(k)
    };
    match (parts[0], parts.len()) {
        ("full", 2) => Ok(SimplicialSubset::full(n)),
        ("boundary", 2) => Ok(SimplicialSubset::boundary(n)),
        ("empty", 2) => Ok(SimplicialSubset::empty(n)),
        ("spine", 2) => Ok(SimplicialSubset::spine(n)),
        ("horn", 3) => Ok(SimplicialSubset::horn(n, two()?)),
        ("face", 3) => Ok(SimplicialSubset::face(n, two()?)),
        _ => Err(bad()),
    }
}

pub fn numbers(s: &str) -> Result<Vec<usize>, CliError> {
    s.split(',')
        .map(|w| w.trim().parse().map_err(|_| CliError::Usage(format!("bad number list {s:?}"))))
        .collect()
}

fn read(path: &str) -> Result<String, CliError> {
    std::fs::read_to_string(path).map_err(|e| CliError::Usage(format!("cannot read {path}: {e}")))
}

pub fn write(path: &str, text: &str) -> Result<(), CliError> {
    std::fs::write(path, text).map_err(|e| CliError::Usage(format!("cannot write {path}: {e}")))
}

pub fn presheaf_file(cat: &Theta, path: &str) -> Result<Arc<FinPresheaf<Theta>>, CliError> {
    Ok(Arc::new(parse_presheaf(cat, &read(path)?).map_err(|e| CliError::Input(format!("{path}: {e}")))?))
}

pub fn map_file(cat: &Theta, path: &str) -> Result<PresheafMap<Theta>, CliError> {
    parse_map(cat, &read(path)?).map_err(|e| CliError::Input(format!("{path}: {e}")))
}

pub fn certificate_file(cat: &Theta, path: &str) -> Result<CellCertificate<Theta>, CliError> {
    parse_certificate(cat, &read(path)?).map_err(|e| CliError::Input(format!("{path}: {e}")))
}

/// A presheaf given either as a file or as a representable on a site of
/// the given dimension.
pub fn presheaf_arg(
    cat: &Theta,
    input: Option<&str>,
    obj: Option<&str>,
    site_dim: Option<usize>,
) -> Result<Arc<FinPresheaf<Theta>>, CliError> {
    match (input, obj) {
        (Some(p), None) => presheaf_file(cat, p),
        (None, Some(o)) => {
            let t = object(cat, o)?;
            let d = site_dim.unwrap_or(cat.dim(&t) + 1).max(cat.dim(&t));
            Ok(Arc::new(FinPresheaf::representable(Site::dim(cat.clone(), d), &t)))
        }
        _ => Err(CliError::Usage("give exactly one of --input and --object".into())),
    }
}

/// Index of a vertex given by name or by number.
pub fn vertex(x: &FinPresheaf<Theta>, s: &str) -> Result<u32, CliError> {
    let pt = x
        .site()
        .index_of(&ThetaObj::point())
        .ok_or_else(|| CliError::Input("the site has no vertices".into()))?;
    if let Some(v) = x.find(pt, s) {
        return Ok(v);
    }
    match s.parse::<u32>() {
        Ok(v) if (v as usize) < x.size(pt) => Ok(v),
        _ => Err(CliError::Usage(format!("no vertex {s:?}"))),
    }
}
