use simplex_core::enumerate_monotone;
use theta_cat::*;

fn all_maps(t: &Theta, d: usize) -> Vec<(ThetaObj, ThetaObj, ThetaMap)> {
    let objs = t.objects(d);
    let mut out = Vec::new();
    for s in &objs {
        for u in &objs {
            for f in t.hom(s, u).iter() {
                out.push((s.clone(), u.clone(), f.clone()));
            }
        }
    }
    out
}

#[test]
fn theta2_composition_laws() {
    let t = Theta::new(2);
    let maps = all_maps(&t, 2);
    for (s, u, f) in &maps {
        assert_eq!(&t.compose(&t.identity(u), f), f);
        assert_eq!(&t.compose(f, &t.identity(s)), f);
    }
    for (_, u1, f) in &maps {
        for (s2, u2, g) in maps.iter().filter(|m| &m.0 == u1) {
            let gf = t.compose(g, f);
            assert!(t.hom(&maps.iter().find(|m| &m.2 == f).unwrap().0, u2).contains(&gf));
            for (_, _, h) in maps.iter().filter(|m| &m.0 == u2) {
                assert_eq!(t.compose(h, &gf), t.compose(&t.compose(h, g), f), "{s2:?}");
            }
        }
    }
}

#[test]
fn theta_of_point_is_delta() {
    let t = Theta::new(1);
    for m in 0..=4 {
        for n in 0..=4 {
            let h = t.hom(&ThetaObj::simplex(m), &ThetaObj::simplex(n));
            assert_eq!(h.len(), enumerate_monotone(m, n).len());
        }
    }
}

/// A map is plus iff it does not factor through an object of lower dimension.
fn plus_oracle(t: &Theta, objs: &[ThetaObj], s: &ThetaObj, u: &ThetaObj, f: &ThetaMap) -> bool {
    !is_degenerate_family_oracle(t, objs, s, &[(f.clone(), u.clone())])
}

#[test]
fn reedy_factorization_is_unique() {
    for level in 1..=3 {
        let t = Theta::new(level);
        let d = if level == 1 { 4 } else { 3 };
        let objs = t.objects(d);
        for (s, u, f) in all_maps(&t, d) {
            let (m, w, p) = t.factor(&s, &f);
            assert_eq!(t.compose(&p, &m), f);
            assert!(m.is_minus(&w) && t.dim(&w) <= t.dim(&s));
            assert!(plus_oracle(&t, &objs, &w, &u, &p));
            assert!(t.dim(&w) <= t.dim(&u));
            let mut count = 0;
            for v in &objs {
                for m2 in t.hom(&s, v).iter().filter(|m2| m2.is_minus(v)) {
                    for p2 in t.hom(v, &u).iter() {
                        if t.compose(p2, m2) == f && plus_oracle(&t, &objs, v, &u, p2) {
                            count += 1;
                        }
                    }
                }
            }
            assert_eq!(count, 1, "level {level}: {} -> {} via {} objs {:?}", t.show_obj(&s), t.show_obj(&u), t.show_mor(&f), objs.iter().map(|o| t.show_obj(o)).collect::<Vec<_>>());
            assert_eq!(t.is_plus(&s, &f), plus_oracle(&t, &objs, &s, &u, &f));
        }
    }
}

#[test]
fn no_nontrivial_automorphisms() {
    let t = Theta::new(2);
    for s in t.objects(4) {
        let h = t.hom(&s, &s);
        let autos = h
            .iter()
            .filter(|f| h.iter().any(|g| t.compose(g, f).is_identity()))
            .count();
        assert_eq!(autos, 1);
    }
}

#[test]
fn mono_examples() {
    let t = Theta::new(2);
    let a = t.parse_obj("[1]([0])").unwrap();
    let face = t.parse_mor("(alpha=[0,1]; f[1][1]=(alpha=[0]))").unwrap();
    assert!(is_mono(&t, &a, &face));
    assert_eq!(t.factor(&a, &face).1, a);
    let b = t.parse_obj("[2]([1],[0])").unwrap();
    for f in t.hom(&b, &a).iter() {
        assert!(!is_mono(&t, &b, f));
    }
    assert!(is_mono(&t, &b, &t.identity(&b)));
}

#[test]
fn cr_axioms_hold() {
    for (level, d, arity) in [(0, 3, 3), (1, 3, 2), (2, 3, 2)] {
        let t = Theta::new(level);
        let r = check_cr_axioms(&t, d, arity, 10_000_000);
        assert!(r.passed(), "{:?}", r.violations);
    }
}

#[test]
fn delta_product_census() {
    // nondegenerate sections of Δ^1 × Δ^1: 4 vertices, 5 edges, 2 triangles
    let t = Theta::new(1);
    let one = ThetaObj::simplex(1);
    let mut by_dim = [0usize; 4];
    for c in t.objects(3) {
        let h = t.hom(&c, &one);
        for f in h.iter() {
            for g in h.iter() {
                if t.is_jointly_nondegenerate(&c, &[f.clone(), g.clone()]) {
                    by_dim[c.dim()] += 1;
                }
            }
        }
    }
    assert_eq!(by_dim, [4, 5, 2, 0]);
}
