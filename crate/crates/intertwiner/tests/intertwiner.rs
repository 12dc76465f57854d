use std::sync::Arc;

use intertwiner::*;
use presheaf_engine::*;
use theta_cat::{Category, Theta, ThetaObj};

type X = FinPresheaf<Theta>;

fn site(level: usize, d: usize) -> Arc<Site<Theta>> {
    Site::dim(Theta::new(level), d)
}

fn obj(s: &Site<Theta>, t: &str) -> ThetaObj {
    s.category().parse_obj(t).unwrap()
}

fn census(x: &X) -> Vec<usize> {
    ez_table(x).unwrap().count_by_dim(x)
}

fn sub_census(sub: &Subobject<Theta>) -> Vec<usize> {
    census(&sub.materialize().0)
}

fn full(t: &ThetaObj) -> Vec<Label> {
    t.labels.iter().cloned().map(Label::full).collect()
}

#[test]
fn v_construct_examples() {
    let s = site(2, 3);
    for t in ["[1]([0])", "[1]([1])"] {
        let t = obj(&s, t);
        let v = v_construct(&LabeledRegion::new(SimplicialSubset::full(1), full(&t)), s.clone()).unwrap();
        assert_eq!(v, X::representable(s.clone(), &t).renamed((0..s.len()).map(|i| v.names(i).to_vec()).collect()).unwrap());
    }
    let v = v_construct(
        &LabeledRegion::new(SimplicialSubset::full(1), vec![Label::boundary(ThetaObj::simplex(1))]),
        s.clone(),
    )
    .unwrap();
    let e = s.index_of(&obj(&s, "[1]([0])")).unwrap();
    assert_eq!(v.size(e), 4);
    // two of them lie over α = id
    assert_eq!(v.names(e).iter().filter(|n| n.starts_with("(alpha=[0,1]")).count(), 2);
    // spine of [2](c1,c2) is the wedge of two edges
    let s4 = site(2, 4);
    for (c1, c2) in [("[0]", "[1]"), ("[1]", "[1]")] {
        let t = obj(&s4, &format!("[2]({c1},{c2})"));
        let sp = v_construct(&LabeledRegion::new(SimplicialSubset::spine(2), full(&t)), s4.clone()).unwrap();
        let a = Arc::new(X::representable(s4.clone(), &obj(&s4, &format!("[1]({c1})"))));
        let b = Arc::new(X::representable(s4.clone(), &obj(&s4, &format!("[1]({c2})"))));
        let pt = Arc::new(X::representable(s4.clone(), &ThetaObj::point()));
        let v0 = s4.index_of(&ThetaObj::point()).unwrap();
        let end = PresheafMap::yoneda(pt.clone(), a.clone(), v0, a.find(v0, "(alpha=[1])").unwrap()).unwrap();
        let start = PresheafMap::yoneda(pt.clone(), b.clone(), v0, b.find(v0, "(alpha=[0])").unwrap()).unwrap();
        let po = pushout(&start, &end).unwrap();
        assert_eq!(census(&sp), census(&po.object));
    }
}

#[test]
fn slot_families_multiply() {
    // at [1](e), the cells of V[2](A1, A2) over α = (0,2) are pairs
    let s = site(2, 4);
    let base = Theta::new(1);
    for (a1, a2) in [("[0]", "[1]"), ("[1]", "[1]"), ("[0]", "[2]")] {
        let t = obj(&s, &format!("[2]({a1},{a2})"));
        let rep = Arc::new(X::representable(s.clone(), &t));
        for e in base.objects(2) {
            let src = ThetaObj::new(vec![e.clone()]);
            let Some(i) = s.index_of(&src) else { continue };
            let v = v_subobject(&LabeledRegion::new(SimplicialSubset::full(2), full(&t)), &rep).unwrap();
            let n = s.hom(i, s.index_of(&t).unwrap()).iter().enumerate().filter(|(k, f)| f.alpha == vec![0, 2] && v.contains(i, *k as u32)).count();
            assert_eq!(n, base.hom(&e, &t.labels[0]).len() * base.hom(&e, &t.labels[1]).len());
        }
    }
}

#[test]
fn boundary_equals_skeleton() {
    let s = site(2, 4);
    for t in s.objects().to_vec() {
        let rep = Arc::new(X::representable(s.clone(), &t));
        let b = boundary(&t, &rep).unwrap();
        let d = s.category().dim(&t);
        if d == 0 {
            assert_eq!(b.total(), 0);
            continue;
        }
        assert_eq!(b, skeleton(&rep, d - 1).unwrap(), "{}", s.category().show_obj(&t));
    }
    let rep = Arc::new(X::representable(s.clone(), &obj(&s, "[1]([1])")));
    let b = boundary(&obj(&s, "[1]([1])"), &rep).unwrap();
    assert_eq!(b.cells(&ez_table(&rep).unwrap()).len(), 4);
    let d = site(1, 3);
    let rep = Arc::new(X::representable(d.clone(), &obj(&d, "[1]")));
    let b = boundary(&obj(&d, "[1]"), &rep).unwrap();
    assert_eq!(b.cells(&ez_table(&rep).unwrap()).len(), 2);
}

#[test]
fn horns() {
    let d = site(1, 3);
    let t = obj(&d, "[2]");
    let rep = Arc::new(X::representable(d.clone(), &t));
    let h = horn(&t, 1, &rep).unwrap();
    assert_eq!(h.cells(&ez_table(&rep).unwrap()).len(), 5);
    assert!(matches!(horn(&t, 0, &rep), Err(IntertwinerError::OuterHorn { .. })));
    assert!(matches!(horn(&t, 2, &rep), Err(IntertwinerError::OuterHorn { .. })));

    let s = site(2, 4);
    let t2 = obj(&s, "[2]([0],[0])");
    let rep2 = Arc::new(X::representable(s.clone(), &t2));
    let h2 = horn(&t2, 1, &rep2).unwrap();
    assert_eq!(sub_census(&h2)[..3], sub_census(&h)[..3]);
    assert_eq!(sub_census(&h2)[3..], [0, 0]);

    // cells missing from the horn: simplex through 0 and 2, every label hit
    // by a component that is not in its boundary
    let t = obj(&s, "[2]([1],[0])");
    let ti = s.index_of(&t).unwrap();
    let rep = Arc::new(X::representable(s.clone(), &t));
    let h = horn(&t, 1, &rep).unwrap();
    let ez = ez_table(&rep).unwrap();
    let base = Theta::new(1);
    for c in ez.cells() {
        let f = &s.hom(c.carrier, ti)[c.element as usize];
        let a = &f.alpha;
        let spans = a[0] == 0 && *a.last().unwrap() == 2;
        let labels_hit = (1..a.len()).all(|i| {
            (a[i - 1] + 1..=a[i]).all(|j| base.is_minus(f.comp(i, j), &t.labels[j - 1]))
        });
        assert_eq!(!h.contains(c.carrier, c.element), spans && labels_hit);
    }
}

#[test]
fn spines() {
    let s = site(2, 4);
    let t = obj(&s, "[2]([0],[0])");
    let rep = Arc::new(X::representable(s.clone(), &t));
    assert_eq!(sub_census(&spine(&t, &rep).unwrap())[..3], [3, 2, 0]);
    for c in ["[1]([0])", "[1]([1])", "[1]([2])"] {
        let t = obj(&s, c);
        let rep = Arc::new(X::representable(s.clone(), &t));
        assert!(spine(&t, &rep).unwrap().is_full());
    }
    let d = site(1, 3);
    let t = obj(&d, "[3]");
    let rep = Arc::new(X::representable(d.clone(), &t));
    assert_eq!(sub_census(&spine(&t, &rep).unwrap()), [4, 3, 0, 0]);
}

#[test]
fn generator_sets() {
    let d = site(1, 2);
    let (m, j) = generator_ids(&d, 2);
    assert_eq!(m.len(), 3);
    assert_eq!(j.iter().map(|g| g.show(d.category())).collect::<Vec<_>>(), ["J:[2]:1"]);
    let s = site(2, 3);
    assert_eq!(generator_ids(&s, 2).0.len(), 4);
    let (_, j) = generator_ids(&s, 3);
    let want = GeneratorId::horn(obj(&s, "[2]([0],[0])"), 1);
    assert!(j.contains(&want));
    let lib = Library::new(s.clone());
    for g in generator_ids(&s, 3).0.iter().chain(&j) {
        let text = g.show(s.category());
        assert_eq!(&GeneratorId::parse(s.category(), &text).unwrap(), g);
        let inc = lib.inclusion(g).unwrap();
        assert!(inc.is_mono());
        inc.check_natural().unwrap();
    }
    assert!(GeneratorId::parse(s.category(), "J:[2]([0],[0]):2").is_err());
}

#[test]
fn corners() {
    let s = site(2, 4);
    // identities in every leg
    let t = obj(&s, "[2]([1],[0])");
    let rep = Arc::new(X::representable(s.clone(), &t));
    let legs: Vec<(Label, Label)> = t.labels.iter().map(|c| (Label::full(c.clone()), Label::full(c.clone()))).collect();
    let (dom, cod) = corner_domain(&SimplicialSubset::full(2), &legs, &rep).unwrap();
    assert!(dom.is_full() && cod.is_full());
    // (δ¹, δ^[0]) is the boundary of [1]([0])
    let t = obj(&s, "[1]([0])");
    let rep = Arc::new(X::representable(s.clone(), &t));
    let p = ThetaObj::point();
    let (dom, _) = corner_domain(&SimplicialSubset::boundary(1), &[(Label::boundary(p.clone()), Label::full(p.clone()))], &rep).unwrap();
    assert_eq!(dom, boundary(&t, &rep).unwrap());
    // (λ²₁, δ^[0], δ^[0]) is the generating horn
    let t = obj(&s, "[2]([0],[0])");
    let rep = Arc::new(X::representable(s.clone(), &t));
    let leg = (Label::boundary(p.clone()), Label::full(p.clone()));
    let (dom, _) = corner_domain(&SimplicialSubset::horn(2, 1), &[leg.clone(), leg], &rep).unwrap();
    assert_eq!(dom, horn(&t, 1, &rep).unwrap());
    // with empty legs the corner adds only cells avoiding an edge
    let lib = Library::new(s.clone());
    for (c, k) in [("[2]([0],[0])", 1), ("[2]([1],[0])", 1), ("[3]([0],[0],[0])", 1), ("[3]([1],[0],[0])", 2)] {
        let t = obj(&s, c);
        let n = t.n();
        let rep = lib.representable(&t).unwrap();
        let dom = lib.domain(&GeneratorId::empty_label_horn(t.clone(), k)).unwrap();
        let plain = v_subobject(&LabeledRegion::new(SimplicialSubset::horn(n, k), full(&t)), &rep).unwrap();
        let ti = s.index_of(&t).unwrap();
        for si in 0..s.len() {
            for (x, f) in s.hom(si, ti).iter().enumerate() {
                let avoids = (1..=n).any(|j| !f.alpha.windows(2).any(|w| w[0] < j && j <= w[1]));
                assert_eq!(dom.contains(si, x as u32), plain.contains(si, x as u32) || avoids);
            }
        }
    }
    // a leg that is not a subobject is refused
    let bad = (Label::full(p.clone()), Label::empty(p.clone()));
    assert!(matches!(
        corner_domain(&SimplicialSubset::boundary(1), &[bad], &lib.representable(&obj(&s, "[1]([0])")).unwrap()),
        Err(IntertwinerError::NotMonic(1))
    ));
}

fn replay_spine(t: &str) -> (usize, Replay) {
    let cat = Theta::new(2);
    let t = cat.parse_obj(t).unwrap();
    let s = Site::faces(cat, &[t.clone()]);
    let lib = Library::new(s);
    let cert = spine_anodyne_certificate(&lib, &t).unwrap();
    let r = replay(&cert, &|id, c| lib.resolve(id, c));
    (cert.steps.len(), r)
}

#[test]
fn spine_certificates() {
    assert_eq!(spine_filtration(1).unwrap(), vec![]);
    assert_eq!(spine_filtration(2).unwrap(), vec![(vec![0, 1, 2], 1)]);
    let (n, r) = replay_spine("[1]([1])");
    assert!(n == 0 && r.ok());
    let (n, r) = replay_spine("[2]([0],[0])");
    assert!(n == 1 && r.ok(), "{r:?}");
    let cat = Theta::new(2);
    let t = cat.parse_obj("[2]([0],[0])").unwrap();
    let lib = Library::new(Site::faces(cat, &[t.clone()]));
    let cert = spine_anodyne_certificate(&lib, &t).unwrap();
    assert_eq!(cert.steps[0].generator, "J:[2]([0],[0]):1");
    for t in ["[3]([0],[0],[0])", "[2]([1],[0])", "[2]([1],[1])", "[3]([1],[0],[1])"] {
        let (n, r) = replay_spine(t);
        assert!(r.ok(), "{t}: {r:?}");
        assert!(n > 1);
    }
}

#[test]
fn reordered_spine_certificate_is_rejected() {
    let cat = Theta::new(2);
    let t = cat.parse_obj("[3]([0],[0],[0])").unwrap();
    let lib = Library::new(Site::faces(cat, &[t.clone()]));
    let mut cert = spine_anodyne_certificate(&lib, &t).unwrap();
    let last = cert.steps.len() - 1;
    cert.steps.swap(0, last);
    let r = replay(&cert, &|id, c| lib.resolve(id, c));
    assert_eq!(r.failure.as_ref().map(|f| f.0), Some(0));
}
