use std::collections::BTreeSet;
use std::sync::Arc;

use intertwiner::{spine_anodyne_certificate, v_subobject, GeneratorId, Label, LabeledRegion, Library, SimplicialSubset};
use lifting::corpus::*;
use lifting::*;
use presheaf_engine::*;
use simplex_core::missing_simplices;
use theta_cat::{Category, Theta, ThetaObj};

type X = FinPresheaf<Theta>;

fn delta(d: usize) -> Arc<Site<Theta>> {
    Site::dim(Theta::new(1), d)
}

#[test]
fn identity_lifts_to_bottom() {
    let d = delta(2);
    let n2 = Arc::new(preorder_nerve(&chain_order(3), d.clone()).unwrap());
    let b = Arc::new(X::representable(d.clone(), &ThetaObj::simplex(1)));
    for bottom in all_maps(&b, &n2, 10, 1000).unwrap().into_found() {
        let pr = LiftingProblem::new(PresheafMap::identity(b.clone()), to_terminal(&n2), bottom.clone(), to_terminal(&b)).unwrap();
        assert_eq!(find_lift(&pr, 1000).unwrap(), LiftOutcome::Found(bottom));
    }
}

#[test]
fn nerves_fill_inner_horns_uniquely() {
    let d = delta(3);
    let n2 = Arc::new(preorder_nerve(&chain_order(3), d.clone()).unwrap());
    let i = simplicial_inclusion(&d, &SimplicialSubset::horn(2, 1)).unwrap();
    let tops = all_maps(i.source(), &n2, usize::MAX, 100_000).unwrap();
    assert!(tops.is_complete());
    assert_eq!(tops.found().len(), 10);
    for top in tops.into_found() {
        let pr = LiftingProblem::against_terminal(i.clone(), top).unwrap();
        let lifts = all_lifts(&pr, 10, 100_000).unwrap();
        assert!(lifts.is_complete());
        assert_eq!(lifts.found().len(), 1);
        assert!(pr.is_lift(&lifts.found()[0]));
    }
}

#[test]
fn no_edge_between_distinct_points() {
    for e in negative_controls().unwrap() {
        assert_eq!(find_lift(&e.problem, 100_000).unwrap(), LiftOutcome::None, "{}", e.name);
        let naive = naive_lifts(&e.problem, 10, 100_000).unwrap();
        assert!(naive.is_complete() && naive.found().is_empty(), "{}", e.name);
    }
}

#[test]
fn budget_is_not_nonexistence() {
    let e = &negative_controls().unwrap()[1];
    assert_eq!(find_lift(&e.problem, 1).unwrap(), LiftOutcome::OutOfBudget);
    assert!(!naive_lifts(&e.problem, 1, 1).unwrap().is_complete());
}

#[test]
fn malformed_problems_are_refused() {
    let d = delta(2);
    let n1 = Arc::new(preorder_nerve(&chain_order(2), d.clone()).unwrap());
    let i = simplicial_inclusion(&d, &SimplicialSubset::boundary(1)).unwrap();
    // top picks 1 then 0, bottom the edge 0→1: does not commute
    let top = by_alpha(&i, &n1, |a| a.iter().map(|v| (1 - v).to_string()).collect::<Vec<_>>().join(",")).unwrap();
    let bottom = by_alpha(&PresheafMap::identity(i.target().clone()), &n1, |a| {
        a.iter().map(|v| v.to_string()).collect::<Vec<_>>().join(",")
    })
    .unwrap();
    let err = LiftingProblem::new(i.clone(), PresheafMap::identity(n1.clone()), top, bottom.clone()).unwrap_err();
    assert!(matches!(err, LiftingError::NotCommuting { .. }));
    // a non-mono left map
    let collapse = to_terminal(i.target());
    let err = LiftingProblem::against_terminal(collapse, bottom);
    assert!(matches!(err, Err(LiftingError::NotMono)));
}

#[test]
fn corpus_agrees_with_naive_solver() {
    let corpus = lifting_corpus().unwrap();
    assert!(corpus.len() >= 100, "{}", corpus.len());
    let mut with_lift = 0;
    for e in &corpus {
        let pr = &e.problem;
        for z in [pr.i.source(), pr.i.target(), pr.p.source(), pr.p.target()] {
            assert!(z.total_size() <= MAX_ELEMENTS);
        }
        let fast = all_lifts(pr, 64, 1_000_000).unwrap();
        let slow = naive_lifts(pr, 64, 10_000_000).unwrap();
        assert!(fast.is_complete() && slow.is_complete(), "{}", e.name);
        let a: BTreeSet<_> = fast.found().iter().map(|h| h.components().to_vec()).collect();
        let b: BTreeSet<_> = slow.found().iter().map(|h| h.components().to_vec()).collect();
        assert_eq!(a, b, "{}", e.name);
        assert!(fast.found().iter().all(|h| pr.is_lift(h)), "{}", e.name);
        let first = find_lift(pr, 1_000_000).unwrap();
        assert_eq!(first.lift(), fast.found().first(), "{}", e.name);
        with_lift += usize::from(!a.is_empty());
    }
    eprintln!("{} problems, {with_lift} with a lift", corpus.len());
    // both outcomes are represented
    assert!(with_lift > 0 && with_lift < corpus.len());
}

#[test]
fn certificates() {
    // empty certificate for an identity
    let s = Site::faces(Theta::new(2), &[ThetaObj::simplex(1)]);
    let lib = Library::new(s.clone());
    let rep = lib.representable(&ThetaObj::simplex(1)).unwrap();
    let cert = CellCertificate { claimed: PresheafMap::identity(rep), steps: vec![] };
    assert!(verify_certificate(&cert, &lib).ok);

    let cat = Theta::new(2);
    let t = cat.parse_obj("[2]([0],[0])").unwrap();
    let lib = Library::new(Site::faces(cat.clone(), &[t.clone()]));
    let cert = spine_anodyne_certificate(&lib, &t).unwrap();
    let check = verify_certificate(&cert, &lib);
    assert!(check.ok && check.steps == 1);

    // the step attached along a different element
    let mut bad = cert.clone();
    bad.steps[0].element = 0;
    let check = verify_certificate(&bad, &lib);
    assert_eq!(check.failure.map(|f| f.0), Some(0));

    // the wrong generator
    let mut bad = cert.clone();
    bad.steps[0].generator = GeneratorId::boundary(t.clone()).show(&cat);
    assert!(!verify_certificate(&bad, &lib).ok);

    // missing a step
    let mut bad = cert;
    bad.steps.clear();
    assert_eq!(verify_certificate(&bad, &lib).failure.map(|f| f.0), Some(0));

    // a permutation that breaks an attaching map
    let t = cat.parse_obj("[3]([1],[0],[0])").unwrap();
    let lib = Library::new(Site::faces(cat.clone(), &[t.clone()]));
    let mut cert = spine_anodyne_certificate(&lib, &t).unwrap();
    assert!(verify_certificate(&cert, &lib).ok);
    cert.steps.reverse();
    let check = verify_certificate(&cert, &lib);
    assert!(!check.ok && check.failure.is_some());
}

#[test]
fn horn_product_certificates() {
    for n in 2..=3 {
        for j in 1..n {
            for m in 0..=2 {
                let (cert, lib) = horn_product_certificate(n, j, m).unwrap();
                let check = verify_certificate(&cert, &lib);
                assert!(check.ok, "{n} {j} {m}: {:?}", check.failure);
                // the attached cells are exactly the missing simplices
                let ambient = cert.claimed.target();
                let site = ambient.site();
                let mut attached = BTreeSet::new();
                for st in &cert.steps {
                    let t = site.require(&st.carrier).unwrap();
                    let name = ambient.name(t, st.element).to_string();
                    let l: usize = st.generator.rsplit(':').next().unwrap().parse().unwrap();
                    let r = st.carrier.n();
                    let face = site.require(&ThetaObj::simplex(r - 1)).unwrap();
                    let d = ThetaMap::simplicial(&(0..=r).filter(|&v| v != l).collect::<Vec<_>>());
                    let a = site.arrow_id(face, t, &d).unwrap();
                    assert!(attached.insert(name));
                    assert!(attached.insert(ambient.name(face, ambient.act(a, st.element)).to_string()));
                }
                assert_eq!(attached.len(), missing_simplices(n, j, m).len());
            }
        }
    }
    assert!(horn_product_certificate(2, 0, 1).is_err());
}

use theta_cat::ThetaMap;

#[test]
fn fibrancy() {
    let s = Site::dim(Theta::new(2), 3);
    let one = Arc::new(X::terminal(s.clone()));
    for d in 0..=2 {
        assert!(is_formal_quasicategory(&one, d, 100_000).unwrap().holds());
    }
    assert!(matches!(
        is_formal_quasicategory(&one, 3, 100_000),
        Err(LiftingError::Truncation { needed: 4, have: 3, .. })
    ));
    let cat = Theta::new(2);
    let t = cat.parse_obj("[2]([0],[0])").unwrap();
    let rep = Arc::new(X::representable(s.clone(), &t));
    // a representable on a simplex with point labels fills its own horn
    assert!(is_formal_quasicategory(&rep, 2, 100_000).unwrap().holds());
    let sp = Arc::new(
        v_subobject(&LabeledRegion::new(SimplicialSubset::spine(2), vec![Label::full(ThetaObj::point()); 2]), &rep)
            .unwrap()
            .materialize()
            .0,
    );
    let v = is_formal_quasicategory(&sp, 2, 100_000).unwrap();
    assert!(matches!(v.verdict, Verdict::Fails(_)), "{v}");
    // over Δ
    let d = delta(3);
    let bd2 = simplicial_inclusion(&d, &SimplicialSubset::boundary(2)).unwrap().source().clone();
    assert!(matches!(is_formal_quasicategory(&bd2, 2, 100_000).unwrap().verdict, Verdict::Fails(_)));
    let n2 = Arc::new(preorder_nerve(&chain_order(3), d.clone()).unwrap());
    assert!(is_formal_quasicategory(&n2, 2, 100_000).unwrap().holds());
}

#[test]
fn isofibrations() {
    let s = Site::dim(Theta::new(2), 3);
    let dl = delta(4);
    let h = |le: Vec<Vec<bool>>| Arc::new(local_termination(&preorder_nerve(&le, dl.clone()).unwrap(), s.clone()).unwrap());
    let he1 = h(indiscrete_order(2));
    let hn1 = h(chain_order(2));
    let v = isofibration_check(&PresheafMap::identity(hn1.clone()), 2, 100_000).unwrap();
    assert!(v.holds(), "{v}");
    let v = isofibration_check(&to_terminal(&he1), 2, 100_000).unwrap();
    assert!(v.holds(), "{v}");
    let p = map_by_names(&hn1, &he1, str::to_string).unwrap();
    let v = isofibration_check(&p, 2, 100_000).unwrap();
    assert!(matches!(v.verdict, Verdict::Fails(_)), "{v}");
    assert!(v.to_string().starts_with("fails"));
}
