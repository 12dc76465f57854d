use std::collections::BTreeSet;

use proptest::prelude::*;
use simplex_core::*;

fn brute_monotone(m: usize, n: usize) -> Vec<Vec<usize>> {
    // all functions [m] -> [n], then filter
    let mut out = Vec::new();
    let total = (n + 1).pow(m as u32 + 1);
    for code in 0..total {
        let mut v = Vec::new();
        let mut c = code;
        for _ in 0..=m {
            v.push(c % (n + 1));
            c /= n + 1;
        }
        v.reverse();
        if v.windows(2).all(|w| w[0] <= w[1]) {
            out.push(v);
        }
    }
    out
}

#[test]
fn monotone_counts_and_order() {
    for m in 0..=6 {
        for n in 0..=6 {
            let maps = enumerate_monotone(m, n);
            assert_eq!(maps.len(), binomial(m + n + 1, m + 1));
            if m <= 4 && n <= 4 {
                let vals: Vec<Vec<usize>> = maps.iter().map(|f| f.values().to_vec()).collect();
                assert_eq!(vals, brute_monotone(m, n));
            }
        }
    }
}

#[test]
fn epi_mono_is_unique_and_exact() {
    for m in 0..=5 {
        for n in 0..=5 {
            for f in enumerate_monotone(m, n) {
                let (s, i) = epi_mono_factor(&f);
                assert!(s.is_surjective() && i.is_injective());
                assert_eq!(i.compose(&s).unwrap(), f);
                let k = s.target();
                let count = enumerate_monotone(m, k)
                    .into_iter()
                    .filter(|s2| s2.is_surjective())
                    .flat_map(|s2| {
                        enumerate_monotone(k, n)
                            .into_iter()
                            .filter(|i2| i2.is_injective())
                            .map(move |i2| (s2.clone(), i2))
                    })
                    .filter(|(s2, i2)| i2.compose(s2).unwrap() == f)
                    .count();
                assert_eq!(count, 1);
            }
        }
    }
}

#[test]
fn shuffles_cover_top_sections() {
    for n in 0..=4 {
        for m in 0..=4 {
            let sh = shuffles(n, m);
            assert_eq!(sh.len(), binomial(n + m, n));
            let induced: BTreeSet<_> = sh.iter().map(|s| s.simplex()).collect();
            assert_eq!(induced.len(), sh.len());
            let mut top = BTreeSet::new();
            for a in enumerate_monotone(n + m, n) {
                for b in enumerate_monotone(n + m, m) {
                    let inj = (0..n + m).all(|i| {
                        (a.apply(i), b.apply(i)) != (a.apply(i + 1), b.apply(i + 1))
                    });
                    if inj {
                        top.insert((a.clone(), b.clone()));
                    }
                }
            }
            assert_eq!(induced, top);
        }
    }
}

/// Missing nondegenerate simplices, enumerated as injective pairs of monotone maps.
fn missing_oracle(n: usize, j: usize, m: usize) -> BTreeSet<Vec<(usize, usize)>> {
    let mut out = BTreeSet::new();
    for r in 0..=n + m {
        for a in enumerate_monotone(r, n) {
            for b in enumerate_monotone(r, m) {
                let pts: Vec<_> = (0..=r).map(|i| (a.apply(i), b.apply(i))).collect();
                if pts.windows(2).any(|w| w[0] == w[1]) {
                    continue;
                }
                let ia: BTreeSet<usize> = a.image().into_iter().collect();
                let ib = b.image();
                let full_a = ia.len() == n + 1 || (ia.len() == n && !ia.contains(&j));
                let full_b = m == 0 || ib.len() == m + 1;
                if full_a && full_b {
                    out.insert(pts);
                }
            }
        }
    }
    out
}

#[test]
fn horn_filtrations_match_missing_sets() {
    for n in 2..=3 {
        for j in 1..n {
            for m in 0..=2 {
                let f = horn_product_filtration(n, j, m).unwrap();
                verify_filtration(&f).unwrap();
                let mut covered = BTreeSet::new();
                for s in &f.steps {
                    let c = s.chain();
                    let mut face = c.clone();
                    face.remove(s.l);
                    assert!(covered.insert(c));
                    assert!(covered.insert(face));
                }
                assert_eq!(covered, missing_oracle(n, j, m), "n={n} j={j} m={m}");
                assert_eq!(covered, missing_simplices(n, j, m));
            }
        }
    }
}

#[test]
fn corrupted_filtration_is_rejected() {
    let mut f = horn_product_filtration(3, 1, 1).unwrap();
    let last = f.steps.len() - 1;
    f.steps.swap(0, last);
    assert!(verify_filtration(&f).is_err());
    let mut g = horn_product_filtration(2, 1, 1).unwrap();
    g.steps.pop();
    assert!(verify_filtration(&g).is_err());
}

proptest! {
    #[test]
    fn composition_is_associative(a in 0usize..4, b in 0usize..4, c in 0usize..4, d in 0usize..4,
                                  i in 0usize..64, j in 0usize..64, k in 0usize..64) {
        let fs = enumerate_monotone(a, b);
        let gs = enumerate_monotone(b, c);
        let hs = enumerate_monotone(c, d);
        let (f, g, h) = (&fs[i % fs.len()], &gs[j % gs.len()], &hs[k % hs.len()]);
        let left = h.compose(&g.compose(f).unwrap()).unwrap();
        let right = h.compose(g).unwrap().compose(f).unwrap();
        prop_assert_eq!(left, right);
    }
}
