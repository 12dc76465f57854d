//! Canonical text serialization of presheaves, maps and certificates.
//!
//! Arrow order is determined by the object list, so action tables are
//! written positionally; each action line also names its arrow so that a
//! reader can detect a mismatched category.

use std::fmt::Write as _;
use std::sync::Arc;

use theta_cat::Category;

use crate::certificate::{CellCertificate, CertStep};
use crate::map::PresheafMap;
use crate::presheaf::FinPresheaf;
use crate::site::{ArrowId, Site};
use crate::PresheafError;

fn join(v: &[u32]) -> String {
    v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(" ")
}

pub fn write_site<C: Category>(site: &Site<C>, out: &mut String) {
    let cat = site.category();
    writeln!(out, "site {} {}", cat.name(), site.tag()).unwrap();
    writeln!(out, "objects {}", site.len()).unwrap();
    for o in site.objects() {
        writeln!(out, "object {}", cat.show_obj(o)).unwrap();
    }
}

pub fn write_presheaf<C: Category>(x: &FinPresheaf<C>) -> String {
    let mut out = String::from("presheaf\n");
    let site = x.site();
    write_site(site, &mut out);
    for t in 0..site.len() {
        writeln!(out, "elements {} {}", t, x.size(t)).unwrap();
        for n in x.names(t) {
            writeln!(out, "  {n}").unwrap();
        }
    }
    let cat = site.category();
    for a in 0..site.arrow_count() as ArrowId {
        let (s, t) = site.ends(a);
        writeln!(out, "action {s} {t} {} : {}", cat.show_mor(site.arrow(a)), join(x.action(a))).unwrap();
    }
    out.push_str("end presheaf\n");
    out
}

pub fn write_map<C: Category>(m: &PresheafMap<C>) -> String {
    let mut out = String::from("map\nsource\n");
    out.push_str(&write_presheaf(m.source()));
    out.push_str("target\n");
    out.push_str(&write_presheaf(m.target()));
    for (t, c) in m.components().iter().enumerate() {
        writeln!(out, "component {t} : {}", join(c)).unwrap();
    }
    out.push_str("end map\n");
    out
}

pub fn write_certificate<C: Category>(c: &CellCertificate<C>) -> String {
    let mut out = String::from("certificate\nclaimed\n");
    out.push_str(&write_map(&c.claimed));
    let target = c.claimed.target();
    let site = target.site();
    for s in &c.steps {
        let name = match site.index_of(&s.carrier) {
            Some(t) if (s.element as usize) < target.size(t) => target.name(t, s.element).to_string(),
            _ => format!("#{}", s.element),
        };
        writeln!(out, "step {} | {} | {}", s.generator, site.category().show_obj(&s.carrier), name).unwrap();
    }
    out.push_str("end certificate\n");
    out
}

/// Line cursor over serialized text.
pub struct Reader<'a> {
    lines: Vec<&'a str>,
    pos: usize,
}

fn perr(line: usize, msg: impl Into<String>) -> PresheafError {
    PresheafError::Parse {
        line: line + 1,
        reason: msg.into(),
    }
}

impl<'a> Reader<'a> {
    pub fn new(text: &'a str) -> Self {
        Reader {
            lines: text.lines().collect(),
            pos: 0,
        }
    }

    fn next(&mut self) -> Result<&'a str, PresheafError> {
        let l = self.lines.get(self.pos).ok_or_else(|| perr(self.pos, "unexpected end of input"))?;
        self.pos += 1;
        Ok(l)
    }

    fn peek(&self) -> Option<&'a str> {
        self.lines.get(self.pos).copied()
    }

    fn expect(&mut self, word: &str) -> Result<(), PresheafError> {
        let l = self.next()?;
        if l.trim_end() != word {
            return Err(perr(self.pos - 1, format!("expected {word:?}, found {l:?}")));
        }
        Ok(())
    }

    fn field(&mut self, key: &str) -> Result<&'a str, PresheafError> {
        let l = self.next()?;
        l.strip_prefix(key)
            .and_then(|r| r.strip_prefix(' '))
            .ok_or_else(|| perr(self.pos - 1, format!("expected {key:?}")))
    }

    fn here(&self) -> usize {
        self.pos.saturating_sub(1)
    }

    pub fn at_end(&self) -> bool {
        self.lines[self.pos..].iter().all(|l| l.trim().is_empty())
    }
}

fn nums(s: &str, line: usize) -> Result<Vec<u32>, PresheafError> {
    s.split_whitespace()
        .map(|w| w.parse().map_err(|_| perr(line, format!("bad number {w:?}"))))
        .collect()
}

pub fn read_site<C: Category>(cat: &C, r: &mut Reader<'_>) -> Result<Arc<Site<C>>, PresheafError> {
    let head = r.field("site")?;
    let (name, tag) = head.split_once(' ').unwrap_or((head, ""));
    if name != cat.name() {
        return Err(perr(r.here(), format!("site is over {name}, expected {}", cat.name())));
    }
    let n: usize = r.field("objects")?.parse().map_err(|_| perr(r.here(), "bad object count"))?;
    let mut objs = Vec::with_capacity(n);
    for _ in 0..n {
        let s = r.field("object")?;
        objs.push(cat.parse_obj(s).map_err(|e| perr(r.here(), e.to_string()))?);
    }
    let site = Site::new(cat.clone(), objs.clone(), tag);
    if site.objects() != objs.as_slice() {
        return Err(perr(r.here(), "objects are not in canonical order"));
    }
    Ok(site)
}

pub fn read_presheaf<C: Category>(cat: &C, r: &mut Reader<'_>) -> Result<FinPresheaf<C>, PresheafError> {
    r.expect("presheaf")?;
    let site = read_site(cat, r)?;
    let mut names = Vec::with_capacity(site.len());
    for t in 0..site.len() {
        let h = r.field("elements")?;
        let v = nums(h, r.here())?;
        if v.len() != 2 || v[0] as usize != t {
            return Err(perr(r.here(), "bad elements header"));
        }
        let mut nm = Vec::with_capacity(v[1] as usize);
        for _ in 0..v[1] {
            let l = r.next()?;
            nm.push(l.strip_prefix("  ").ok_or_else(|| perr(r.here(), "element names are indented"))?.to_string());
        }
        names.push(nm);
    }
    let mut actions = Vec::with_capacity(site.arrow_count());
    for a in 0..site.arrow_count() as ArrowId {
        let l = r.field("action")?;
        let (head, vals) = l.split_once(" : ").or_else(|| l.strip_suffix(" :").map(|h| (h, ""))).ok_or_else(|| perr(r.here(), "bad action line"))?;
        let (s, t) = site.ends(a);
        let expected = format!("{s} {t} {}", cat.show_mor(site.arrow(a)));
        if head != expected {
            return Err(perr(r.here(), format!("expected action {expected:?}")));
        }
        actions.push(nums(vals, r.here())?);
    }
    r.expect("end presheaf")?;
    FinPresheaf::from_tables(site, names, actions)
}

pub fn read_map<C: Category>(cat: &C, r: &mut Reader<'_>) -> Result<PresheafMap<C>, PresheafError> {
    r.expect("map")?;
    r.expect("source")?;
    let source = Arc::new(read_presheaf(cat, r)?);
    r.expect("target")?;
    let target = read_presheaf(cat, r)?;
    let mut comps = Vec::new();
    for t in 0..source.site().len() {
        let l = r.field("component")?;
        let (h, vals) = l.split_once(" : ").or_else(|| l.strip_suffix(" :").map(|h| (h, ""))).ok_or_else(|| perr(r.here(), "bad component line"))?;
        if h != t.to_string() {
            return Err(perr(r.here(), "components out of order"));
        }
        comps.push(nums(vals, r.here())?);
    }
    r.expect("end map")?;
    PresheafMap::new(source, Arc::new(target), comps)
}

pub fn read_certificate<C: Category>(cat: &C, r: &mut Reader<'_>) -> Result<CellCertificate<C>, PresheafError> {
    r.expect("certificate")?;
    r.expect("claimed")?;
    let claimed = read_map(cat, r)?;
    let mut steps = Vec::new();
    while let Some(l) = r.peek() {
        if l.trim_end() == "end certificate" {
            break;
        }
        let body = r.field("step")?;
        let parts: Vec<&str> = body.splitn(3, " | ").collect();
        if parts.len() != 3 {
            return Err(perr(r.here(), "bad step line"));
        }
        let carrier = cat.parse_obj(parts[1]).map_err(|e| perr(r.here(), e.to_string()))?;
        let target = claimed.target();
        let element = match parts[2].strip_prefix('#') {
            Some(n) => n.parse().map_err(|_| perr(r.here(), "bad element index"))?,
            None => {
                let t = target.site().require(&carrier)?;
                target.find(t, parts[2]).ok_or_else(|| perr(r.here(), format!("no element {:?}", parts[2])))?
            }
        };
        steps.push(CertStep {
            generator: parts[0].to_string(),
            carrier,
            element,
        });
    }
    r.expect("end certificate")?;
    Ok(CellCertificate { claimed, steps })
}

pub fn parse_presheaf<C: Category>(cat: &C, text: &str) -> Result<FinPresheaf<C>, PresheafError> {
    let mut r = Reader::new(text);
    let x = read_presheaf(cat, &mut r)?;
    finish(&r, x)
}

pub fn parse_map<C: Category>(cat: &C, text: &str) -> Result<PresheafMap<C>, PresheafError> {
    let mut r = Reader::new(text);
    let m = read_map(cat, &mut r)?;
    finish(&r, m)
}

pub fn parse_certificate<C: Category>(cat: &C, text: &str) -> Result<CellCertificate<C>, PresheafError> {
    let mut r = Reader::new(text);
    let c = read_certificate(cat, &mut r)?;
    finish(&r, c)
}

fn finish<T>(r: &Reader<'_>, v: T) -> Result<T, PresheafError> {
    if r.at_end() {
        Ok(v)
    } else {
        Err(perr(r.pos, "trailing input"))
    }
}
