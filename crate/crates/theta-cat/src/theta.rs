//! Objects `[n](c_1,…,c_n)` and maps `(α, f_{i,j})` of `Θ_k`.
//!
//! The representation is level-free: an object is a finite rooted tree, a map
//! is a monotone map plus nested component maps. The terminal object `*` of
//! `Θ_0` and `[0]` of `Θ_k` are both the empty tree, so `Δ = Θ_1` sits inside
//! every `Θ_k` on the nose.

use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, Mutex};

use simplex_core::enumerate_monotone;

use crate::{Category, Factorization, ThetaError};

#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct ThetaObj {
    pub labels: Vec<ThetaObj>,
}

impl ThetaObj {
    pub fn point() -> Self {
        ThetaObj { labels: Vec::new() }
    }

    pub fn new(labels: Vec<ThetaObj>) -> Self {
        ThetaObj { labels }
    }

    /// `[n](*,…,*)`, the image of `[n]` under `Δ ↪ Θ_k`.
    pub fn simplex(n: usize) -> Self {
        ThetaObj {
            labels: vec![ThetaObj::point(); n],
        }
    }

    pub fn n(&self) -> usize {
        self.labels.len()
    }

    pub fn dim(&self) -> usize {
        self.labels.len() + self.labels.iter().map(|c| c.dim()).sum::<usize>()
    }

    pub fn depth(&self) -> usize {
        if self.labels.is_empty() {
            0
        } else {
            1 + self.labels.iter().map(|c| c.depth()).max().unwrap_or(0)
        }
    }

    /// Renders at level `level`: `*` at level 0, `[n]` at level 1.
    pub fn show(&self, level: usize) -> String {
        if level == 0 {
            return "*".to_string();
        }
        if level == 1 || self.labels.is_empty() {
            return format!("[{}]", self.n());
        }
        let inner: Vec<String> = self.labels.iter().map(|c| c.show(level - 1)).collect();
        format!("[{}]({})", self.n(), inner.join(","))
    }
}

impl Ord for ThetaObj {
    fn cmp(&self, other: &Self) -> Ordering {
        self.dim()
            .cmp(&other.dim())
            .then(self.n().cmp(&other.n()))
            .then_with(|| self.labels.cmp(&other.labels))
    }
}

impl PartialOrd for ThetaObj {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// A map `(α, f)` with `α : [n] -> [m]` and `comps[i-1]` holding the maps
/// `f_{i,j}` for `j ∈ (α(i-1), α(i)]`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ThetaMap {
    pub alpha: Vec<usize>,
    pub comps: Vec<Vec<ThetaMap>>,
}

impl ThetaMap {
    /// The unique endomorphism of the terminal object.
    pub fn unit() -> Self {
        ThetaMap {
            alpha: vec![0],
            comps: Vec::new(),
        }
    }

    pub fn identity(o: &ThetaObj) -> Self {
        ThetaMap {
            alpha: (0..=o.n()).collect(),
            comps: o.labels.iter().map(|c| vec![ThetaMap::identity(c)]).collect(),
        }
    }

    /// A map between simplices `[n](*…) -> [m](*…)` given by `α` alone.
    pub fn simplicial(alpha: &[usize]) -> Self {
        let comps = alpha
            .windows(2)
            .map(|w| vec![ThetaMap::unit(); w[1] - w[0]])
            .collect();
        ThetaMap {
            alpha: alpha.to_vec(),
            comps,
        }
    }

    pub fn source_n(&self) -> usize {
        self.alpha.len() - 1
    }

    /// `f_{i,j}` with 1-based `i` and the absolute target edge `j`.
    pub fn comp(&self, i: usize, j: usize) -> &ThetaMap {
        &self.comps[i - 1][j - self.alpha[i - 1] - 1]
    }

    /// `self ∘ f` by the wreath rule.
    pub fn compose(&self, f: &ThetaMap) -> ThetaMap {
        let beta = &self.alpha;
        let gamma = &f.alpha;
        let alpha: Vec<usize> = gamma.iter().map(|&v| beta[v]).collect();
        let mut comps = Vec::with_capacity(f.comps.len());
        for k in 1..alpha.len() {
            let mut slot = Vec::with_capacity(alpha[k] - alpha[k - 1]);
            let mut i = gamma[k - 1] + 1;
            for j in alpha[k - 1] + 1..=alpha[k] {
                while beta[i] < j {
                    i += 1;
                }
                slot.push(self.comp(i, j).compose(f.comp(k, i)));
            }
            comps.push(slot);
        }
        ThetaMap { alpha, comps }
    }

    pub fn is_identity(&self) -> bool {
        self.alpha.iter().enumerate().all(|(i, &v)| i == v)
            && self.comps.iter().all(|s| s.len() == 1 && s[0].is_identity())
    }

    /// Minus (degeneracy) maps onto `tgt`: surjective on the spine and minus on
    /// every component.
    pub fn is_minus(&self, tgt: &ThetaObj) -> bool {
        let a = &self.alpha;
        if a[0] != 0 || *a.last().unwrap() != tgt.n() || a.windows(2).any(|w| w[1] - w[0] > 1) {
            return false;
        }
        (1..a.len()).all(|i| {
            (a[i - 1] + 1..=a[i]).all(|j| self.comp(i, j).is_minus(&tgt.labels[j - 1]))
        })
    }

    /// Renders at level `level` (the level of the category the map lives in).
    pub fn show(&self, level: usize) -> String {
        if level == 0 {
            return "id".to_string();
        }
        let alpha: Vec<String> = self.alpha.iter().map(|v| v.to_string()).collect();
        let mut out = format!("(alpha=[{}]", alpha.join(","));
        if level >= 2 {
            for i in 1..self.alpha.len() {
                for j in self.alpha[i - 1] + 1..=self.alpha[i] {
                    out.push_str(&format!("; f[{}][{}]={}", i, j, self.comp(i, j).show(level - 1)));
                }
            }
        }
        out.push(')');
        out
    }
}

impl fmt::Display for ThetaMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.show(self.depth_hint()))
    }
}

impl ThetaMap {
    fn depth_hint(&self) -> usize {
        1 + self
            .comps
            .iter()
            .flatten()
            .map(|c| if c.alpha.len() > 1 { c.depth_hint() } else { 0 })
            .max()
            .unwrap_or(0)
    }
}

type HomCache = Mutex<HashMap<(ThetaObj, ThetaObj), Arc<Vec<ThetaMap>>>>;

/// The category `Θ_level`.
#[derive(Clone)]
pub struct Theta {
    level: usize,
    cache: Arc<HomCache>,
}

impl PartialEq for Theta {
    fn eq(&self, other: &Self) -> bool {
        self.level == other.level
    }
}

impl Eq for Theta {}

impl fmt::Debug for Theta {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Theta({})", self.level)
    }
}

impl Theta {
    pub fn new(level: usize) -> Self {
        Theta {
            level,
            cache: Arc::new(Mutex::new(HashMap::new())),
        }
    }

    pub fn level(&self) -> usize {
        self.level
    }

    /// The base category `C` with `Θ_level = Θ[C]`.
    pub fn base(&self) -> Theta {
        assert!(self.level > 0, "Θ_0 has no base");
        Theta {
            level: self.level - 1,
            cache: self.cache.clone(),
        }
    }

    pub fn contains(&self, o: &ThetaObj) -> bool {
        o.depth() <= self.level
    }

    fn hom_uncached(&self, s: &ThetaObj, t: &ThetaObj) -> Vec<ThetaMap> {
        let (n, m) = (s.n(), t.n());
        let mut out = Vec::new();
        for alpha in enumerate_monotone(n, m) {
            let a = alpha.values();
            // one list of choices per (i, j) pair, flattened in order
            let mut slots: Vec<(usize, Arc<Vec<ThetaMap>>)> = Vec::new();
            for i in 1..=n {
                for j in a[i - 1] + 1..=a[i] {
                    slots.push((i, self.hom(&s.labels[i - 1], &t.labels[j - 1])));
                }
            }
            let lens: Vec<usize> = slots.iter().map(|(_, h)| h.len()).collect();
            for_each_index(&lens, |idx| {
                let mut comps: Vec<Vec<ThetaMap>> = vec![Vec::new(); n];
                for (k, (i, h)) in slots.iter().enumerate() {
                    comps[i - 1].push(h[idx[k]].clone());
                }
                out.push(ThetaMap {
                    alpha: a.to_vec(),
                    comps,
                });
            });
        }
        out
    }

    fn objects_at(level: usize, max_dim: usize) -> Vec<ThetaObj> {
        if level == 0 {
            return vec![ThetaObj::point()];
        }
        let below = Self::objects_at(level - 1, max_dim);
        let mut out = Vec::new();
        for n in 0..=max_dim {
            let mut labels = Vec::new();
            fill(&below, n, max_dim - n, &mut labels, &mut out);
        }
        out.sort();
        out
    }

    fn joint(&self, src: &ThetaObj, fs: &[ThetaMap]) -> Factorization<ThetaObj, ThetaMap> {
        let n = src.n();
        let mut sigma = vec![0usize; n + 1];
        let mut active = vec![false; n + 1];
        for i in 1..=n {
            active[i] = fs.iter().any(|f| f.alpha[i - 1] < f.alpha[i]);
            sigma[i] = sigma[i - 1] + usize::from(active[i]);
        }
        let r = sigma[n];
        let mut minus_comps = Vec::with_capacity(n);
        let mut middle = Vec::with_capacity(r);
        let mut plus: Vec<ThetaMap> = fs
            .iter()
            .map(|_| ThetaMap {
                alpha: Vec::with_capacity(r + 1),
                comps: Vec::with_capacity(r),
            })
            .collect();
        for (p, f) in plus.iter_mut().zip(fs) {
            p.alpha.push(f.alpha[0]);
        }
        for i in 1..=n {
            if !active[i] {
                minus_comps.push(Vec::new());
                continue;
            }
            let family: Vec<ThetaMap> = fs.iter().flat_map(|f| f.comps[i - 1].iter().cloned()).collect();
            let sub = self.joint(&src.labels[i - 1], &family);
            minus_comps.push(vec![sub.minus]);
            middle.push(sub.middle);
            let mut rest = sub.plus.into_iter();
            for (p, f) in plus.iter_mut().zip(fs) {
                p.alpha.push(f.alpha[i]);
                p.comps.push(rest.by_ref().take(f.comps[i - 1].len()).collect());
            }
        }
        Factorization {
            minus: ThetaMap {
                alpha: sigma,
                comps: minus_comps,
            },
            middle: ThetaObj::new(middle),
            plus,
        }
    }
}

/// Calls `f` on every index tuple below `lens`, last coordinate fastest.
fn for_each_index(lens: &[usize], mut f: impl FnMut(&[usize])) {
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

fn fill(below: &[ThetaObj], slots: usize, budget: usize, cur: &mut Vec<ThetaObj>, out: &mut Vec<ThetaObj>) {
    if cur.len() == slots {
        out.push(ThetaObj::new(cur.clone()));
        return;
    }
    for c in below {
        let d = c.dim();
        if d <= budget {
            cur.push(c.clone());
            fill(below, slots, budget - d, cur, out);
            cur.pop();
        }
    }
}

impl Category for Theta {
    type Obj = ThetaObj;
    type Mor = ThetaMap;

    fn name(&self) -> String {
        format!("theta{}", self.level)
    }

    fn objects(&self, max_dim: usize) -> Vec<ThetaObj> {
        Self::objects_at(self.level, max_dim)
    }

    fn dim(&self, o: &ThetaObj) -> usize {
        o.dim()
    }

    fn hom(&self, s: &ThetaObj, t: &ThetaObj) -> Arc<Vec<ThetaMap>> {
        let key = (s.clone(), t.clone());
        if let Some(h) = self.cache.lock().expect("hom cache poisoned").get(&key) {
            return h.clone();
        }
        let h = Arc::new(self.hom_uncached(s, t));
        self.cache
            .lock()
            .expect("hom cache poisoned")
            .insert(key, h.clone());
        h
    }

    fn compose(&self, g: &ThetaMap, f: &ThetaMap) -> ThetaMap {
        g.compose(f)
    }

    fn identity(&self, o: &ThetaObj) -> ThetaMap {
        ThetaMap::identity(o)
    }

    fn terminal(&self) -> ThetaObj {
        ThetaObj::point()
    }

    fn joint_factor(&self, src: &ThetaObj, fs: &[ThetaMap]) -> Factorization<ThetaObj, ThetaMap> {
        self.joint(src, fs)
    }

    fn is_minus(&self, f: &ThetaMap, tgt: &ThetaObj) -> bool {
        f.is_minus(tgt)
    }

    fn is_identity(&self, _src: &ThetaObj, f: &ThetaMap) -> bool {
        f.is_identity()
    }

    fn show_obj(&self, o: &ThetaObj) -> String {
        o.show(self.level)
    }

    fn show_mor(&self, f: &ThetaMap) -> String {
        f.show(self.level)
    }

    fn parse_obj(&self, s: &str) -> Result<ThetaObj, ThetaError> {
        let mut p = Parser::new(s);
        let o = p.object().ok_or_else(|| ThetaError::ParseObject(s.to_string()))?;
        if !p.done() {
            return Err(ThetaError::ParseObject(s.to_string()));
        }
        if !self.contains(&o) {
            return Err(ThetaError::WrongLevel {
                obj: s.to_string(),
                category: self.name(),
            });
        }
        Ok(o)
    }

    fn parse_mor(&self, s: &str) -> Result<ThetaMap, ThetaError> {
        let mut p = Parser::new(s);
        let f = p.map(self.level).ok_or_else(|| ThetaError::ParseMap(s.to_string()))?;
        if !p.done() {
            return Err(ThetaError::ParseMap(s.to_string()));
        }
        Ok(f)
    }
}

struct Parser<'a> {
    s: &'a [u8],
    pos: usize,
}

impl<'a> Parser<'a> {
    fn new(s: &'a str) -> Self {
        Parser { s: s.as_bytes(), pos: 0 }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.s.len() && self.s[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn done(&mut self) -> bool {
        self.skip_ws();
        self.pos == self.s.len()
    }

    fn eat(&mut self, c: u8) -> bool {
        self.skip_ws();
        if self.s.get(self.pos) == Some(&c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn eat_str(&mut self, t: &str) -> bool {
        self.skip_ws();
        if self.s[self.pos..].starts_with(t.as_bytes()) {
            self.pos += t.len();
            true
        } else {
            false
        }
    }

    fn number(&mut self) -> Option<usize> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.s.len() && self.s[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        std::str::from_utf8(&self.s[start..self.pos]).ok()?.parse().ok()
    }

    fn object(&mut self) -> Option<ThetaObj> {
        if self.eat(b'*') {
            return Some(ThetaObj::point());
        }
        if !self.eat(b'[') {
            return None;
        }
        let n = self.number()?;
        if !self.eat(b']') {
            return None;
        }
        if n > 0 && self.eat(b'(') {
            let mut labels = Vec::with_capacity(n);
            loop {
                labels.push(self.object()?);
                if self.eat(b')') {
                    break;
                }
                if !self.eat(b',') {
                    return None;
                }
            }
            if labels.len() != n {
                return None;
            }
            Some(ThetaObj::new(labels))
        } else {
            Some(ThetaObj::simplex(n))
        }
    }

    fn map(&mut self, level: usize) -> Option<ThetaMap> {
        if level == 0 {
            return self.eat_str("id").then(ThetaMap::unit);
        }
        if !(self.eat(b'(') && self.eat_str("alpha") && self.eat(b'=') && self.eat(b'[')) {
            return None;
        }
        let mut alpha = vec![self.number()?];
        while self.eat(b',') {
            alpha.push(self.number()?);
        }
        if !self.eat(b']') || alpha.windows(2).any(|w| w[0] > w[1]) {
            return None;
        }
        let n = alpha.len() - 1;
        let mut comps: Vec<Vec<ThetaMap>> = vec![Vec::new(); n];
        if level == 1 {
            for i in 1..=n {
                comps[i - 1] = vec![ThetaMap::unit(); alpha[i] - alpha[i - 1]];
            }
        } else {
            for i in 1..=n {
                for j in alpha[i - 1] + 1..=alpha[i] {
                    if !(self.eat(b';') && self.eat_str("f[")) {
                        return None;
                    }
                    let (pi, pj) = (self.number()?, {
                        if !self.eat_str("][") {
                            return None;
                        }
                        self.number()?
                    });
                    if (pi, pj) != (i, j) || !self.eat(b']') || !self.eat(b'=') {
                        return None;
                    }
                    comps[i - 1].push(self.map(level - 1)?);
                }
            }
        }
        if !self.eat(b')') {
            return None;
        }
        Some(ThetaMap { alpha, comps })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn theta2_census() {
        let t = Theta::new(2);
        let objs: Vec<String> = t.objects(2).iter().map(|o| t.show_obj(o)).collect();
        assert_eq!(objs, ["[0]", "[1]([0])", "[1]([1])", "[2]([0],[0])"]);
        assert_eq!(t.objects(4).len(), 16);
        assert_eq!(Theta::new(1).objects(2).len(), 3);
        assert_eq!(Theta::new(0).objects(5).len(), 1);
    }

    #[test]
    fn hom_examples() {
        let t = Theta::new(2);
        let a = t.parse_obj("[1]([0])").unwrap();
        let b = t.parse_obj("[1]([1])").unwrap();
        assert_eq!(t.hom(&a, &a).len(), 3);
        assert_eq!(t.hom(&b, &b).len(), 5);
        assert_eq!(t.hom(&a, &b).len(), 4);
    }

    #[test]
    fn whiskering_is_plus() {
        let t = Theta::new(2);
        let s = t.parse_obj("[1]([1])").unwrap();
        let f = t
            .parse_mor("(alpha=[0,2]; f[1][1]=(alpha=[0,1]); f[1][2]=(alpha=[0,0]))")
            .unwrap();
        assert!(t.is_plus(&s, &f));
        assert!(!f.is_minus(&t.parse_obj("[2]([0],[0])").unwrap()));
    }

    #[test]
    fn show_parse_roundtrip() {
        let t = Theta::new(2);
        for s in t.objects(3) {
            for u in t.objects(3) {
                for f in t.hom(&s, &u).iter() {
                    assert_eq!(&t.parse_mor(&t.show_mor(f)).unwrap(), f);
                }
            }
            assert_eq!(t.parse_obj(&t.show_obj(&s)).unwrap(), s);
        }
    }
}
