use std::sync::Arc;
use std::time::Instant;

use intertwiner::Label;
use presheaf_engine::{nondegenerate_cells, restrict, FinPresheaf, Site};
use realization::{box_index, box_site, realize, realize_labeled_simplex, realize_map, BoxCat, EnrichedFunctor, HomKey};
use theta_cat::{Category, Theta, ThetaMap, ThetaObj};

fn obj(cat: &Theta, s: &str) -> ThetaObj {
    cat.parse_obj(s).unwrap()
}

/// The simplicial set `c' ↦ hom(i,j)(c, [m])` at a fixed `c`.
fn at_c(h: &FinPresheaf<BoxCat>, c: &ThetaObj, dm: usize) -> FinPresheaf<Theta> {
    let delta = Site::dim(Theta::new(1), dm);
    let c = c.clone();
    let c2 = c.clone();
    let base = h.site().category().left.clone();
    restrict(
        h,
        delta,
        move |o| (c.clone(), o.clone()),
        move |_, _, f| (base.identity(&c2), f.clone()),
    )
    .unwrap()
}

/// Nondegenerate simplices of the nerve of `{0,1}^k`, by dimension:
/// strictly increasing chains.
fn cube_chains(k: usize) -> Vec<usize> {
    let verts: Vec<u32> = (0..1u32 << k).collect();
    let below = |a: u32, b: u32| a != b && a & b == a;
    let mut counts = vec![verts.len()];
    let mut chains: Vec<Vec<u32>> = verts.iter().map(|&v| vec![v]).collect();
    loop {
        let next: Vec<Vec<u32>> = chains
            .iter()
            .flat_map(|c| {
                let last = *c.last().unwrap();
                verts.iter().filter(move |&&v| below(last, v)).map(move |&v| {
                    let mut d = c.clone();
                    d.push(v);
                    d
                })
            })
            .collect();
        if next.is_empty() {
            return counts;
        }
        counts.push(next.len());
        chains = next;
    }
}

fn census(x: &FinPresheaf<Theta>) -> Vec<usize> {
    let mut out = Vec::new();
    for c in nondegenerate_cells(x).unwrap() {
        let d = x.site().dim_of(c.carrier);
        if out.len() <= d {
            out.resize(d + 1, 0);
        }
        out[d] += 1;
    }
    out
}

#[test]
fn free_arrow_and_two_slot_homs() {
    let t2 = Theta::new(2);
    let base = t2.base();
    let site = box_site(&base, 2, 2);
    for c in ["[0]", "[1]", "[2]"] {
        let q = realize(&obj(&t2, &format!("[1]({c})")), site.clone()).unwrap();
        for t in 0..site.len() {
            let (d, _) = site.object(t);
            assert_eq!(q.cat().hom(0, 1).size(t), base.hom(d, &obj(&base, c)).len());
        }
    }
    for (c1, c2) in [("[0]", "[1]"), ("[1]", "[1]"), ("[2]", "[0]")] {
        let q = realize(&obj(&t2, &format!("[2]({c1},{c2})")), site.clone()).unwrap();
        for t in 0..site.len() {
            let (d, m) = site.object(t);
            let want = base.hom(d, &obj(&base, c1)).len() * (m.n() + 2) * base.hom(d, &obj(&base, c2)).len();
            assert_eq!(q.cat().hom(0, 2).size(t), want);
            assert_eq!(q.cat().hom(1, 0).size(t), 0);
            assert_eq!(q.cat().hom(1, 1).size(t), 1);
        }
    }
}

#[test]
fn cube_law() {
    let t1 = Theta::new(1);
    let pt = ThetaObj::point();
    for n in 1..=4usize {
        let site = box_site(&t1.base(), 0, n);
        let q = realize(&ThetaObj::simplex(n), site).unwrap();
        let h = at_c(q.cat().hom(0, n), &pt, n);
        assert_eq!(h.size(0), 1 << (n - 1));
        let mut want = cube_chains(n - 1);
        let mut got = census(&h);
        while got.last() == Some(&0) {
            got.pop();
        }
        while want.last() == Some(&0) {
            want.pop();
        }
        assert_eq!(got, want, "n = {n}");
    }
    assert_eq!(cube_chains(2).iter().sum::<usize>(), 11);
}

fn label_families(n: usize, dims: &[&str]) -> Vec<Vec<&'static str>> {
    let all: Vec<&'static str> = ["[0]", "[1]", "[2]"].into_iter().filter(|s| dims.contains(s)).collect();
    let mut out = vec![Vec::new()];
    for _ in 0..n {
        out = out
            .into_iter()
            .flat_map(|v: Vec<&'static str>| {
                all.iter().map(move |s| {
                    let mut w = v.clone();
                    w.push(*s);
                    w
                })
            })
            .collect();
    }
    out
}

fn labeled(cat: &Theta, ls: &[&str]) -> ThetaObj {
    ThetaObj::new(ls.iter().map(|s| obj(&cat.base(), s)).collect())
}

#[test]
fn enriched_laws() {
    let t2 = Theta::new(2);
    let start = Instant::now();
    for n in 0..=4usize {
        let dm = n.saturating_sub(1).max(1).min(2);
        let site = box_site(&t2.base(), 1, dm);
        for ls in label_families(n, &["[0]", "[1]"]) {
            let q = realize(&labeled(&t2, &ls), site.clone()).unwrap();
            q.cat().check_laws().unwrap();
        }
    }
    // boundary and empty labels
    let site = box_site(&t2.base(), 1, 2);
    let b = Label::boundary(obj(&t2.base(), "[1]"));
    let f = Label::full(obj(&t2.base(), "[1]"));
    let e = Label::empty(obj(&t2.base(), "[0]"));
    for ls in [vec![b.clone(), f.clone()], vec![f.clone(), e.clone(), b.clone()]] {
        realize_labeled_simplex(&ls, site.clone()).unwrap().cat().check_laws().unwrap();
    }
    eprintln!("laws: {:?}", start.elapsed());
}

fn key_at(q: &realization::Realization, i: usize, j: usize, t: usize, x: u32) -> HomKey {
    q.key(i, j, t, x).clone()
}

#[test]
fn identity_coface_and_codegeneracy() {
    let t2 = Theta::new(2);
    let base = t2.base();
    let site = box_site(&base, 1, 2);
    let s = obj(&t2, "[2]([1],[0])");
    let q = realize(&s, site.clone()).unwrap();
    let id = realize_map(&ThetaMap::identity(&s), &q, &q).unwrap();
    assert_eq!(id, EnrichedFunctor::identity(q.cat().clone()));

    // [1]([1]) -> [2]([1],[0]) skipping vertex 1: the slot goes to c1 × {0} × c2
    let one = obj(&t2, "[1]([1])");
    let q1 = realize(&one, site.clone()).unwrap();
    let d1 = t2
        .hom(&one, &s)
        .iter()
        .find(|f| f.alpha == vec![0, 2] && t2.is_plus(&one, f))
        .unwrap()
        .clone();
    let functor = realize_map(&d1, &q1, &q).unwrap();
    functor.check_laws().unwrap();
    for t in 0..site.len() {
        for x in 0..q1.cat().hom(0, 1).size(t) as u32 {
            let y = functor.hom(0, 1).apply(t, x);
            let k = key_at(&q, 0, 2, t, y);
            assert!(k.edges[0].iter().all(|&v| v == 0));
        }
    }

    // [3] -> [2] collapsing 1,2: the two coordinates merge by max
    let t1 = Theta::new(1);
    let site1 = box_site(&t1.base(), 0, 2);
    let q3 = realize(&ThetaObj::simplex(3), site1.clone()).unwrap();
    let q2 = realize(&ThetaObj::simplex(2), site1.clone()).unwrap();
    let sigma = ThetaMap::simplicial(&[0, 1, 1, 2]);
    let functor = realize_map(&sigma, &q3, &q2).unwrap();
    functor.check_laws().unwrap();
    let t = box_index(&site1, &ThetaObj::point(), 0).unwrap();
    for x in 0..q3.cat().hom(0, 3).size(t) as u32 {
        let k = key_at(&q3, 0, 3, t, x);
        let y = key_at(&q2, 0, 2, t, functor.hom(0, 3).apply(t, x));
        assert_eq!(y.edges[0][0], k.edges[0][0].max(k.edges[1][0]));
    }
    // [2] -> [1] collapsing 0,1: hom(0,2) = Δ¹ goes to the point hom(0,1)
    let q1 = realize(&ThetaObj::simplex(1), site1.clone()).unwrap();
    let s0 = realize_map(&ThetaMap::simplicial(&[0, 0, 1]), &q2, &q1).unwrap();
    s0.check_laws().unwrap();
}

fn functoriality_on(cat: &Theta, objs: &[ThetaObj], site: Arc<Site<BoxCat>>) -> usize {
    let qs: Vec<_> = objs.iter().map(|o| realize(o, site.clone()).unwrap()).collect();
    let mut pairs = 0;
    let mut cache = std::collections::HashMap::new();
    let mut functor = |a: usize, b: usize, f: &ThetaMap| {
        cache
            .entry((a, b, f.clone()))
            .or_insert_with(|| {
                let m = realize_map(f, &qs[a], &qs[b]).unwrap();
                m.check_laws().unwrap();
                m
            })
            .clone()
    };
    for a in 0..objs.len() {
        for b in 0..objs.len() {
            for f in cat.hom(&objs[a], &objs[b]).iter() {
                let ff = functor(a, b, f);
                for c in 0..objs.len() {
                    for g in cat.hom(&objs[b], &objs[c]).iter() {
                        let gg = functor(b, c, g);
                        let gf = functor(a, c, &cat.compose(g, f));
                        assert_eq!(ff.then(&gg).unwrap(), gf);
                        pairs += 1;
                    }
                }
            }
        }
    }
    pairs
}

#[test]
fn realize_map_is_functorial() {
    let t2 = Theta::new(2);
    let start = Instant::now();
    let mut objs = vec![ThetaObj::point()];
    for n in 1..=2 {
        for ls in label_families(n, &["[0]", "[1]"]) {
            objs.push(labeled(&t2, &ls));
        }
    }
    let pairs = functoriality_on(&t2, &objs, box_site(&t2.base(), 1, 2));
    let simplices: Vec<ThetaObj> = (0..=3).map(ThetaObj::simplex).collect();
    let more = functoriality_on(&t2, &simplices, box_site(&t2.base(), 1, 2));
    eprintln!("functoriality: {pairs} + {more} pairs in {:?}", start.elapsed());
    assert!(pairs > 1000 && more > 100);
}
