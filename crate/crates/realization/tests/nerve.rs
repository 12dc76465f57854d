use std::collections::BTreeSet;
use std::sync::Arc;

use presheaf_engine::{all_maps, preorder_nerve, FinPresheaf, Site};
use realization::{box_site, coherent_nerve, map_object, nerve_presheaf, realize, EnrichedCat, EnrichedFunctor, Realization};
use theta_cat::{Category, Theta, ThetaObj};

type Key = (Vec<usize>, Vec<Vec<Vec<u32>>>);

/// Every object map, every tuple of independently chosen hom maps, kept
/// when the functor laws hold.
fn naive(q: &Realization, d: &Arc<EnrichedCat>) -> BTreeSet<Key> {
    let src = q.cat();
    let n = src.len();
    let mut out = BTreeSet::new();
    let mut phis = vec![Vec::new()];
    for _ in 0..n {
        phis = phis
            .into_iter()
            .flat_map(|v: Vec<usize>| {
                (0..d.len()).map(move |y| {
                    let mut w = v.clone();
                    w.push(y);
                    w
                })
            })
            .collect();
    }
    for phi in phis {
        let mut choices: Vec<Vec<Vec<Vec<u32>>>> = Vec::new();
        for x in 0..n {
            for y in 0..n {
                let maps = all_maps(src.hom(x, y), d.hom(phi[x], phi[y]), usize::MAX, usize::MAX).unwrap();
                assert!(maps.is_complete());
                choices.push(maps.found().iter().map(|m| m.components().to_vec()).collect());
            }
        }
        let mut tuples: Vec<Vec<Vec<Vec<u32>>>> = vec![Vec::new()];
        for c in &choices {
            tuples = tuples
                .into_iter()
                .flat_map(|v| {
                    c.iter().map(move |m| {
                        let mut w = v.clone();
                        w.push(m.clone());
                        w
                    })
                })
                .collect();
        }
        for t in tuples {
            let comps: Vec<Vec<Vec<Vec<u32>>>> = t.chunks(n).map(|r| r.to_vec()).collect();
            let f = EnrichedFunctor::new(src.clone(), d.clone(), phi.clone(), comps).unwrap();
            if f.check_laws().is_ok() {
                out.insert(f.key());
            }
        }
    }
    out
}

fn keys(fs: &[EnrichedFunctor]) -> BTreeSet<Key> {
    fs.iter().map(|f| f.key()).collect()
}

#[test]
fn one_point_category() {
    let t1 = Theta::new(1);
    let site = box_site(&t1.base(), 0, 2);
    let d = Arc::new(EnrichedCat::from_preorder(site, &[vec![true]]).unwrap());
    for n in 0..=3 {
        assert_eq!(coherent_nerve(&d, &ThetaObj::simplex(n)).unwrap().len(), 1);
    }
}

#[test]
fn nerve_of_the_arrow_is_delta_one() {
    let t1 = Theta::new(1);
    let le = vec![vec![true, true], vec![false, true]];
    let d = Arc::new(EnrichedCat::from_preorder(box_site(&t1.base(), 0, 2), &le).unwrap());
    let delta = Site::dim(t1.clone(), 3);
    let n = nerve_presheaf(&d, delta.clone()).unwrap();
    assert_eq!(n, preorder_nerve(&le, delta.clone()).unwrap());
    let rep = FinPresheaf::representable(delta, &ThetaObj::simplex(1));
    assert_eq!(n.sizes(), rep.sizes());
    assert_eq!(n.sizes(), &[2, 3, 4, 5]);

    // the box must hold the cube of hom(0,3)
    let small = Arc::new(EnrichedCat::from_preorder(box_site(&t1.base(), 0, 1), &le).unwrap());
    assert!(coherent_nerve(&small, &ThetaObj::simplex(3)).is_err());
}

#[test]
fn nerve_of_a_chain_matches_the_preorder_nerve() {
    let t1 = Theta::new(1);
    let le = vec![vec![true, true, true], vec![false, true, true], vec![false, false, true]];
    let d = Arc::new(EnrichedCat::from_preorder(box_site(&t1.base(), 0, 2), &le).unwrap());
    let delta = Site::dim(t1, 3);
    assert_eq!(nerve_presheaf(&d, delta.clone()).unwrap(), preorder_nerve(&le, delta).unwrap());
}

#[test]
fn free_arrow_over_theta2() {
    let t2 = Theta::new(2);
    let base = t2.base();
    let site = box_site(&base, 2, 1);
    for cs in ["[0]", "[1]", "[2]"] {
        let c = base.parse_obj(cs).unwrap();
        let d = Arc::new(EnrichedCat::free_arrow(site.clone(), &c).unwrap());
        for c2 in base.objects(2) {
            let t = ThetaObj::new(vec![c2.clone()]);
            let fs = coherent_nerve(&d, &t).unwrap();
            assert_eq!(fs.len(), base.hom(&c2, &c).len() + 2, "{cs} at {}", base.show_obj(&c2));
            let q = realize(&t, site.clone()).unwrap();
            assert_eq!(keys(&fs), naive(&q, &d));
        }
        // two-slot simplices against the naive search
        for t in [t2.parse_obj("[2]([0],[0])").unwrap(), t2.parse_obj("[2]([1],[0])").unwrap()] {
            let fs = coherent_nerve(&d, &t).unwrap();
            let q = realize(&t, site.clone()).unwrap();
            assert_eq!(keys(&fs), naive(&q, &d), "{cs} at {}", t2.show_obj(&t));
        }
    }
}

#[test]
fn empty_hom_blocks_functors() {
    let t1 = Theta::new(1);
    let le = vec![vec![true, false], vec![false, true]];
    let d = Arc::new(EnrichedCat::from_preorder(box_site(&t1.base(), 0, 2), &le).unwrap());
    let fs = coherent_nerve(&d, &ThetaObj::simplex(2)).unwrap();
    // only the constant object maps survive
    let objs: Vec<Vec<usize>> = fs.iter().map(|f| f.objects().to_vec()).collect();
    assert_eq!(objs, vec![vec![0, 0, 0], vec![1, 1, 1]]);
}

#[test]
fn unit_of_the_adjunction() {
    let t2 = Theta::new(2);
    let site = box_site(&t2.base(), 2, 2);
    for s in ["[1]([0])", "[1]([1])", "[2]([1],[0])", "[2]([0],[0])", "[3]([0],[0],[0])"] {
        let t = t2.parse_obj(s).unwrap();
        let q = realize(&t, site.clone()).unwrap();
        let fs = coherent_nerve(q.cat(), &t).unwrap();
        let id = EnrichedFunctor::identity(q.cat().clone());
        assert_eq!(fs.iter().filter(|f| **f == id).count(), 1, "{s}");
    }
}

#[test]
fn map_object_of_a_nerve() {
    let t2 = Theta::new(2);
    let base = t2.base();
    let le = vec![vec![true, true], vec![false, true]];
    let d = Arc::new(EnrichedCat::from_preorder(box_site(&base, 1, 1), &le).unwrap());
    let roots: Vec<ThetaObj> = ["[1]([0])", "[1]([1])"].iter().map(|s| t2.parse_obj(s).unwrap()).collect();
    let x = Arc::new(nerve_presheaf(&d, Site::faces(t2.clone(), &roots)).unwrap());
    for cs in ["[0]", "[1]"] {
        let c = base.parse_obj(cs).unwrap();
        assert_eq!(map_object(&x, 0, 1, &c, 0, 1000).unwrap().maps.len(), 1, "{cs}");
        assert!(map_object(&x, 1, 0, &c, 0, 1000).unwrap().maps.is_empty());
    }
    // [1]([0]) bipointed at its ends over C = Δ
    let arrow = t2.parse_obj("[1]([0])").unwrap();
    let rep = Arc::new(FinPresheaf::representable(Site::faces(t2.clone(), &[arrow.clone()]), &arrow));
    assert_eq!(map_object(&rep, 0, 1, &base.parse_obj("[0]").unwrap(), 0, 1000).unwrap().maps.len(), 1);
}

#[test]
fn enriched_round_trip() {
    use realization::{parse_enriched, write_enriched};
    let t2 = Theta::new(2);
    let base = t2.base();
    let site = box_site(&base, 1, 2);
    let q = realize(&t2.parse_obj("[2]([1],[0])").unwrap(), site.clone()).unwrap();
    let text = write_enriched(q.cat());
    let back = parse_enriched(&base, &text).unwrap();
    assert_eq!(&back, q.cat().as_ref());
    assert_eq!(write_enriched(&back), text);
    let d = EnrichedCat::free_arrow(site, &base.parse_obj("[1]").unwrap()).unwrap();
    assert_eq!(parse_enriched(&base, &write_enriched(&d)).unwrap(), d);
    assert!(parse_enriched(&base, &text.replace("compose 0 1 2 0", "compose 0 2 1 0")).is_err());
}
