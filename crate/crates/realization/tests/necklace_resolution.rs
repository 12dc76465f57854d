use std::sync::Arc;

use presheaf_engine::{FinPresheaf, PresheafMap, Site};
use realization::{
    check_filtration, map_object, nec_mapping_space, necklace_maps, resolution, resolution_l_filtration, resolution_map, resolution_root, Flavor,
    Necklace,
};
use theta_cat::{Category, Theta, ThetaObj};

fn simplex(n: usize, top: usize) -> FinPresheaf<Theta> {
    FinPresheaf::representable(Site::dim(Theta::new(1), top), &ThetaObj::simplex(n))
}

#[test]
fn necklaces_in_a_triangle() {
    let x = simplex(2, 3);
    let count = |beads: Vec<usize>, inj: bool| necklace_maps(&Necklace::new(beads).unwrap(), &x, 0, 2, inj).unwrap().len();
    assert_eq!(count(vec![1], true), 1);
    assert_eq!(count(vec![2], true), 1);
    assert_eq!(count(vec![1, 1], true), 1);
    assert_eq!(count(vec![2], false), 3);
    assert_eq!(count(vec![1, 1], false), 3);
    let inj: usize = [vec![1], vec![2], vec![1, 1]].into_iter().map(|b| count(b, true)).sum();
    let all: usize = [vec![1], vec![2], vec![1, 1]].into_iter().map(|b| count(b, false)).sum();
    assert_eq!((inj, all), (3, 7));

    assert_eq!(necklace_maps(&Necklace::point(), &x, 1, 1, true).unwrap().len(), 1);
    assert!(necklace_maps(&Necklace::point(), &x, 0, 1, true).unwrap().is_empty());
    assert!(necklace_maps(&Necklace::new(vec![1]).unwrap(), &x, 2, 0, false).unwrap().is_empty());
    assert!(necklace_maps(&Necklace::new(vec![4]).unwrap(), &x, 0, 2, false).is_err());
    assert_eq!(Necklace::new(vec![1, 2]).unwrap().to_string(), "Δ^1∨Δ^2");
}

#[test]
fn mapping_spaces() {
    let edge = simplex(1, 3);
    let s = nec_mapping_space(&edge, 0, 1, 3, 3).unwrap();
    assert_eq!(s.objects.len(), 1);
    assert!(s.complete);
    for t in 0..s.nerve.site().len() {
        assert_eq!(s.nerve.size(t), 1);
    }

    let tri = simplex(2, 3);
    let s = nec_mapping_space(&tri, 0, 2, 3, 2).unwrap();
    assert_eq!(s.objects.len(), 3);
    assert_eq!(s.pi0(), 1);
    assert!(s.complete);
    // the necklace Δ^2 is terminal: Δ^1 and Δ^1∨Δ^1 both map to it
    assert!(s.morphisms.iter().filter(|(a, b, _)| a != b).count() >= 2);

    let back = nec_mapping_space(&tri, 2, 0, 3, 2).unwrap();
    assert!(back.objects.is_empty());
    assert!(back.nerve.is_empty());
}

fn sites(c: &ThetaObj, top: usize) -> Arc<Site<Theta>> {
    let cat = Theta::new(2);
    let mut roots = vec![ThetaObj::new(vec![c.clone()])];
    for f in [Flavor::R, Flavor::L] {
        roots.push(resolution_root(f, c, top).unwrap());
    }
    Site::faces(cat, &roots)
}

#[test]
fn resolutions_are_bipointed() {
    let t2 = Theta::new(2);
    let base = t2.base();
    for cs in ["[0]", "[1]"] {
        let c = base.parse_obj(cs).unwrap();
        let site = sites(&c, 2);
        for flavor in [Flavor::R, Flavor::L, Flavor::Cyl, Flavor::E] {
            for n in 0..=2 {
                let r = resolution(flavor, &c, n, site.clone()).unwrap();
                assert_eq!(r.vertex_count(), 2, "{flavor} {cs} {n}");
                assert_ne!(r.source, r.target);
            }
        }
        // in degree 0 every flavor is [1](c)
        let rep = FinPresheaf::representable(site.clone(), &ThetaObj::new(vec![c.clone()]));
        for flavor in [Flavor::R, Flavor::L, Flavor::Cyl, Flavor::E] {
            let r = resolution(flavor, &c, 0, site.clone()).unwrap();
            assert_eq!(r.realized.sizes(), rep.sizes(), "{flavor} {cs}");
        }
    }
    let r = resolution(Flavor::R, &base.parse_obj("[1]").unwrap(), 3, sites(&base.parse_obj("[1]").unwrap(), 2));
    assert!(r.is_err());
}

fn monotone(n: usize, m: usize) -> Vec<Vec<usize>> {
    let mut out = vec![Vec::new()];
    for _ in 0..=n {
        out = out
            .into_iter()
            .flat_map(|v: Vec<usize>| {
                let lo = v.last().copied().unwrap_or(0);
                (lo..=m).map(move |i| {
                    let mut w = v.clone();
                    w.push(i);
                    w
                })
            })
            .collect();
    }
    out
}

#[test]
fn cosimplicial_identities() {
    let t2 = Theta::new(2);
    let c = t2.base().parse_obj("[1]").unwrap();
    let top = 2;
    let site = sites(&c, top);
    for flavor in [Flavor::R, Flavor::L, Flavor::Cyl, Flavor::E] {
        let res: Vec<_> = (0..=top).map(|n| resolution(flavor, &c, n, site.clone()).unwrap()).collect();
        for n in 0..=top {
            let id: Vec<usize> = (0..=n).collect();
            let f = resolution_map(&res[n], &res[n], &id).unwrap();
            assert_eq!(f, PresheafMap::identity(res[n].realized.clone()), "{flavor} {n}");
            for m in 0..=top {
                for beta in monotone(n, m) {
                    let f = resolution_map(&res[n], &res[m], &beta).unwrap();
                    f.check_natural().unwrap();
                    let pt = site.index_of(&ThetaObj::point()).unwrap();
                    assert_eq!(f.apply(pt, res[n].source), res[m].source);
                    assert_eq!(f.apply(pt, res[n].target), res[m].target);
                    for p in 0..=top {
                        for gamma in monotone(m, p) {
                            let g = resolution_map(&res[m], &res[p], &gamma).unwrap();
                            let gb: Vec<usize> = beta.iter().map(|&b| gamma[b]).collect();
                            let h = resolution_map(&res[n], &res[p], &gb).unwrap();
                            assert_eq!(g.after(&f).unwrap(), h, "{flavor} {beta:?} {gamma:?}");
                        }
                    }
                }
            }
        }
    }
}

#[test]
fn l_filtration_certificates() {
    let t2 = Theta::new(2);
    let base = t2.base();
    for cs in ["[0]", "[1]"] {
        let c = base.parse_obj(cs).unwrap();
        for n in 0..=2usize {
            let (cert, lib, _) = resolution_l_filtration(2, &c, n).unwrap();
            // one cell for each nonempty subset of {2,…,n+1}
            assert_eq!(cert.steps.len(), (1usize << n) - 1);
            let r = check_filtration(&cert, &lib);
            assert!(r.ok(), "{cs} n={n}: {:?}", r.failure);
        }
    }
    // dropping a cell leaves the target uncovered
    let c = base.parse_obj("[1]").unwrap();
    let (mut cert, lib, _) = resolution_l_filtration(2, &c, 2).unwrap();
    cert.steps.pop();
    assert!(!check_filtration(&cert, &lib).ok());
    // attaching the top cell first fails
    let (mut cert, lib, _) = resolution_l_filtration(2, &c, 2).unwrap();
    cert.steps.reverse();
    assert!(!check_filtration(&cert, &lib).ok());
}

#[test]
fn map_objects_of_a_representable() {
    let t2 = Theta::new(2);
    let base = t2.base();
    let c = base.parse_obj("[1]").unwrap();
    let top = resolution_root(Flavor::R, &c, 1).unwrap();
    let arrow = t2.parse_obj("[1]([1])").unwrap();
    let site = Site::faces(t2.clone(), &[top, arrow.clone()]);
    let x = Arc::new(FinPresheaf::representable(site.clone(), &arrow));
    // maps [1] -> [1] in Δ, whatever n is
    for n in 0..=1 {
        let m = map_object(&x, 0, 1, &c, n, 1000).unwrap();
        assert!(m.complete && !m.fibrancy_checked);
        assert_eq!(m.maps.len(), 3, "n={n}");
    }
    assert!(map_object(&x, 1, 0, &c, 0, 1000).unwrap().maps.is_empty());
    assert_eq!(map_object(&x, 0, 0, &base.parse_obj("[0]").unwrap(), 0, 1000).unwrap().maps.len(), 1);
    assert!(map_object(&x, 0, 1, &c, 2, 1000).is_err());
}
