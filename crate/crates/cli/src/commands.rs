use std::sync::Arc;

use intertwiner::{boundary, corner_domain, horn, spine, spine_anodyne_certificate, Library};
use lifting::{find_lift, horn_product_certificate, is_formal_quasicategory, isofibration_check, verify_certificate, LiftOutcome, LiftingProblem, TruncatedVerdict, Verdict};
use presheaf_engine::serial::{write_certificate, write_map, write_presheaf};
use presheaf_engine::{ez_table, CellCertificate, FinPresheaf, PresheafMap, Site, Subobject};
use realization::{
    box_site, k_star, nec_mapping_space, necklace_maps, pointwise_compare, realize, resolution, resolution_l_filtration, resolution_root,
    write_enriched, Flavor, Necklace, RealizationError,
};
use theta_cat::{check_cr_axioms, Category, Theta, ThetaObj};

use crate::input::{self, object};
use crate::report::{Report, Status};
use crate::{CliError, Command, Source};

type X = FinPresheaf<Theta>;

pub fn dispatch(cmd: Command) -> Result<Report, CliError> {
    match cmd {
        Command::Objects { level, dim } => {
            let cat = input::theta(level.theta);
            let objs = cat.objects(dim);
            let mut r = Report::new("objects");
            r.put("theta", level.theta).put("dim", dim).put("count", objs.len());
            for o in &objs {
                r.put("object", cat.show_obj(o));
            }
            Ok(r)
        }
        Command::Hom { level, source, target } => {
            let cat = input::theta(level.theta);
            let (s, t) = (object(&cat, &source)?, object(&cat, &target)?);
            let maps = cat.hom(&s, &t);
            let mut r = Report::new("hom");
            r.put("source", cat.show_obj(&s)).put("target", cat.show_obj(&t)).put("count", maps.len());
            for f in maps.iter() {
                r.put("map", cat.show_mor(f));
            }
            Ok(r)
        }
        Command::Boundary { level, object: o, out } => {
            let (cat, t, rep) = representable(level.theta, &o)?;
            let sub = boundary(&t, &rep)?;
            subobject_report("boundary", &cat, &t, &sub, out.out.as_deref())
        }
        Command::Horn { level, object: o, k, out } => {
            let (cat, t, rep) = representable(level.theta, &o)?;
            let sub = horn(&t, k, &rep)?;
            let mut r = subobject_report("horn", &cat, &t, &sub, out.out.as_deref())?;
            r.put("k", k);
            Ok(r)
        }
        Command::Spine { level, object: o, out } => {
            let (cat, t, rep) = representable(level.theta, &o)?;
            let sub = spine(&t, &rep)?;
            subobject_report("spine", &cat, &t, &sub, out.out.as_deref())
        }
        Command::Generators { level, dim } => {
            let cat = input::theta(level.theta);
            let (m, j) = Library::new(Site::dim(cat.clone(), dim)).generators(dim);
            let mut r = Report::new("generators");
            r.put("theta", level.theta).put("dim", dim).put("cofibrations", m.len()).put("anodynes", j.len());
            for g in m.iter().chain(j.iter()) {
                r.put("generator", g.show(&cat));
            }
            Ok(r)
        }
        Command::Corner { level, region, legs, out } => corner(level.theta, &region, &legs, out.out.as_deref()),
        Command::Realize { level, object: o, dc, dm, out } => {
            let cat = input::theta(level.theta);
            let base = input::base(&cat)?;
            let t = object(&cat, &o)?;
            let dc = dc.unwrap_or_else(|| t.labels.iter().map(|l| base.dim(l)).max().unwrap_or(0));
            let dm = dm.unwrap_or(t.n().saturating_sub(1).max(1));
            let q = realize(&t, box_site(&base, dc, dm))?;
            let d = q.cat();
            let mut r = Report::new("realize");
            r.put("object", cat.show_obj(&t)).put("box", format!("dc={dc} dm={dm}")).put("objects", d.len());
            for i in 0..d.len() {
                for j in i + 1..d.len() {
                    let h = d.hom(i, j);
                    let census = ez_table(h)?.count_by_dim(h);
                    r.put("hom", format!("{i} {j} elements {} cells-by-dim {}", h.total_size(), join(&census)));
                }
            }
            match d.check_laws() {
                Ok(()) => r.put("laws", "hold"),
                Err(e) => r.put("laws", e).set(Status::Fail),
            };
            if let Some(p) = out.out {
                input::write(&p, &write_enriched(d))?;
            }
            Ok(r)
        }
        Command::PointwiseCheck { level, n, labels, c, i, j, top } => {
            let cat = input::theta(level.theta);
            let base = input::base(&cat)?;
            let ls = input::labels(&base, &labels)?;
            if let Some(n) = n {
                if n != ls.len() {
                    return Err(CliError::Usage(format!("--n {n} but {} labels", ls.len())));
                }
            }
            let c = object(&base, &c)?;
            let pairs: Vec<(usize, usize)> = match (i, j) {
                (Some(i), Some(j)) => vec![(i, j)],
                (None, None) => (0..ls.len()).flat_map(|i| (i + 1..=ls.len()).map(move |j| (i, j))).collect(),
                _ => return Err(CliError::Usage("give both --i and --j or neither".into())),
            };
            let mut r = Report::new("pointwise-check");
            r.put("labels", labels).put("c", base.show_obj(&c)).put("top", top);
            for (i, j) in pairs {
                match pointwise_compare(&ls, level.theta, &c, i, j, top) {
                    Ok(p) => {
                        let lv: Vec<String> = p.levels.iter().map(|(m, k)| format!("{m}:{k}")).collect();
                        r.put("pair", format!("{i} {j} levels {} checks {}+{}", lv.join(" "), p.simplicial_checks, p.label_checks));
                    }
                    Err(RealizationError::Mismatch(s)) => {
                        r.put("pair", format!("{i} {j} mismatch {s}")).set(Status::Fail);
                    }
                    Err(e) => return Err(e.into()),
                }
            }
            Ok(r)
        }
        Command::Kstar { level, source, c, out } => {
            let cat = input::theta(level.theta);
            let x = source_presheaf(&cat, &source)?;
            let c = object(&input::base(&cat)?, &c)?;
            let k = k_star(&x, &c)?;
            let mut r = Report::new("kstar");
            r.put("c", cat.base().show_obj(&c));
            for t in 0..k.site().len() {
                r.put("level", format!("{} size {}", k.site().object(t).n(), k.size(t)));
            }
            if let Some(p) = out.out {
                input::write(&p, &write_presheaf(&k))?;
            }
            Ok(r)
        }
        Command::Necklace { level, source, c, beads, from, to, injective } => {
            let x = simplicial(level.theta, &source, c.as_deref())?;
            let t = if beads == "point" {
                Necklace::point()
            } else {
                Necklace::new(input::numbers(&beads)?)?
            };
            let (a, b) = (input::vertex(&x, &from)?, input::vertex(&x, &to)?);
            let maps = necklace_maps(&t, &x, a, b, injective)?;
            let pt = x.site().index_of(&ThetaObj::point()).unwrap();
            let mut r = Report::new("necklace");
            r.put("necklace", &t).put("injective", injective).put("count", maps.len());
            for m in &maps {
                let vs: Vec<&str> = m.vertices.iter().map(|&v| x.name(pt, v)).collect();
                r.put("map", format!("vertices {} beads {}", vs.join(" "), join(&m.beads)));
            }
            Ok(r)
        }
        Command::Mapspace { level, source, c, from, to, bead_budget, degree, out } => {
            let x = simplicial(level.theta, &source, c.as_deref())?;
            let (a, b) = (input::vertex(&x, &from)?, input::vertex(&x, &to)?);
            let s = nec_mapping_space(&x, a, b, bead_budget, degree)?;
            let mut r = Report::new("mapspace");
            r.put("objects", s.objects.len())
                .put("morphisms", s.morphisms.len())
                .put("pi0", s.pi0())
                .list("nerve", (0..s.nerve.site().len()).map(|t| s.nerve.size(t)))
                .put("final", s.complete);
            for o in &s.objects {
                r.put("necklace", format!("{} vertices {}", o.necklace, join(&o.vertices)));
            }
            if !s.complete {
                r.set(Status::Budget);
            }
            if let Some(p) = out.out {
                input::write(&p, &write_presheaf(&s.nerve))?;
            }
            Ok(r)
        }
        Command::Resolution { level, flavor, c, n, out } => {
            let cat = input::theta(level.theta);
            let f: Flavor = flavor.parse()?;
            let c = object(&input::base(&cat)?, &c)?;
            let roots = vec![
                resolution_root(Flavor::R, &c, n)?,
                resolution_root(Flavor::L, &c, n)?,
                ThetaObj::new(vec![c.clone()]),
            ];
            let res = resolution(f, &c, n, Site::faces(cat.clone(), &roots))?;
            let x = &res.realized;
            let census = ez_table(x)?.count_by_dim(x);
            let pt = x.site().index_of(&ThetaObj::point()).unwrap();
            let mut r = Report::new("resolution");
            r.put("flavor", f)
                .put("c", cat.base().show_obj(&c))
                .put("n", n)
                .put("vertices", res.vertex_count())
                .put("source", x.name(pt, res.source))
                .put("target", x.name(pt, res.target))
                .put("elements", x.total_size())
                .list("cells-by-dim", census);
            if let Some(p) = out.out {
                input::write(&p, &write_presheaf(x))?;
            }
            Ok(r)
        }
        Command::CertifySpine { level, object: o, out } => {
            let cat = input::theta(level.theta);
            let t = object(&cat, &o)?;
            let lib = Library::new(Site::faces(cat.clone(), std::slice::from_ref(&t)));
            let cert = spine_anodyne_certificate(&lib, &t)?;
            certificate_report("certify-spine", &cert, &lib, out.out.as_deref())
        }
        Command::CertifyResolution { level, c, n, out } => {
            let cat = input::theta(level.theta);
            let c = object(&input::base(&cat)?, &c)?;
            let (cert, lib, _) = resolution_l_filtration(level.theta, &c, n)?;
            certificate_report("certify-resolution", &cert, &lib, out.out.as_deref())
        }
        Command::CertifyHornProduct { n, j, m, out } => {
            let (cert, lib) = horn_product_certificate(n, j, m)?;
            certificate_report("certify-horn-product", &cert, &lib, out.out.as_deref())
        }
        Command::Verify { level, certificate } => {
            let cat = input::theta(level.theta);
            let cert = input::certificate_file(&cat, &certificate)?;
            let lib = Library::new(cert.claimed.target().site().clone());
            let check = verify_certificate(&cert, &lib);
            let mut r = Report::new("verify");
            r.put("steps", check.steps).put("verified", check.ok);
            if let Some((i, why)) = check.failure {
                r.put("failure", format!("step {i}: {why}")).set(Status::Fail);
            }
            Ok(r)
        }
        Command::Lift { level, i, top, p, bottom, budget, out } => {
            let cat = input::theta(level.theta);
            let (i, top) = (input::map_file(&cat, &i)?, input::map_file(&cat, &top)?);
            let pr = match (p, bottom) {
                (Some(p), Some(b)) => LiftingProblem::new(i, input::map_file(&cat, &p)?, top, input::map_file(&cat, &b)?)?,
                _ => LiftingProblem::against_terminal(i, top)?,
            };
            let mut r = Report::new("lift");
            match find_lift(&pr, budget.budget)? {
                LiftOutcome::Found(h) => {
                    r.put("lift", "found");
                    for (t, comp) in h.components().iter().enumerate() {
                        r.put("component", format!("{t} : {}", join(comp)));
                    }
                    if let Some(path) = out.out {
                        input::write(&path, &write_map(&h))?;
                    }
                }
                LiftOutcome::None => {
                    r.put("lift", "none").set(Status::Fail);
                }
                LiftOutcome::OutOfBudget => {
                    r.put("lift", "undecided").set(Status::Budget);
                }
            }
            Ok(r)
        }
        Command::Fibrant { level, source, dim, budget } => {
            let cat = input::theta(level.theta);
            let source = Source {
                site_dim: source.site_dim.or(Some(dim + 1)),
                ..source
            };
            let x = source_presheaf(&cat, &source)?;
            let v = is_formal_quasicategory(&x, dim, budget.budget)?;
            Ok(verdict_report("fibrant", &v))
        }
        Command::Isofib { level, map, dim, budget } => {
            let cat = input::theta(level.theta);
            let p = input::map_file(&cat, &map)?;
            let v = isofibration_check(&p, dim, budget.budget)?;
            Ok(verdict_report("isofib", &v))
        }
        Command::CrCheck { level, dim, arity, budget } => {
            let cat = input::theta(level.theta);
            let rep = check_cr_axioms(&cat, dim, arity, budget.budget);
            let mut r = Report::new("cr-check");
            r.put("category", &rep.category)
                .put("dim", dim)
                .put("arity", arity)
                .put("sections", rep.sections)
                .put("nondegenerate", rep.nondegenerate_total());
            for (k, (a, b)) in &rep.census {
                r.put("census", format!("{k} {a} {b}"));
            }
            for v in &rep.violations {
                r.put("violation", v);
            }
            if rep.truncated {
                r.set(Status::Budget);
            }
            if !rep.passed() && !rep.truncated {
                r.set(Status::Fail);
            }
            Ok(r)
        }
    }
}

fn join<T: ToString>(v: &[T]) -> String {
    v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(" ")
}

fn representable(level: usize, o: &str) -> Result<(Theta, ThetaObj, Arc<X>), CliError> {
    let cat = input::theta(level);
    let t = object(&cat, o)?;
    let site = Site::faces(cat.clone(), std::slice::from_ref(&t));
    let rep = Arc::new(X::representable(site, &t));
    Ok((cat, t, rep))
}

fn source_presheaf(cat: &Theta, s: &Source) -> Result<Arc<X>, CliError> {
    input::presheaf_arg(cat, s.input.as_deref(), s.object.as_deref(), s.site_dim)
}

/// The simplicial set to search in: the input itself over Δ, or `k^*X` at `c`.
fn simplicial(level: usize, s: &Source, c: Option<&str>) -> Result<X, CliError> {
    let cat = input::theta(level);
    let x = source_presheaf(&cat, s)?;
    match (level, c) {
        (1, None) => Ok(x.as_ref().clone()),
        (_, Some(c)) => Ok(k_star(&x, &object(&input::base(&cat)?, c)?)?),
        _ => Err(CliError::Usage("--c is required above --theta 1".into())),
    }
}

fn subobject_report(cmd: &str, cat: &Theta, t: &ThetaObj, sub: &Subobject<Theta>, out: Option<&str>) -> Result<Report, CliError> {
    let rep = sub.ambient();
    let site = rep.site();
    let ez = ez_table(rep)?;
    let cells = sub.cells(&ez);
    let mut r = Report::new(cmd);
    r.put("object", cat.show_obj(t)).put("elements", sub.total()).put("ambient", rep.total_size()).put("cells", cells.len());
    for c in &cells {
        r.put("cell", format!("{} {}", cat.show_obj(site.object(c.carrier)), rep.name(c.carrier, c.element)));
    }
    if let Some(p) = out {
        input::write(p, &write_map(&sub.materialize().1))?;
    }
    Ok(r)
}

fn corner(level: usize, region: &str, legs: &str, out: Option<&str>) -> Result<Report, CliError> {
    let cat = input::theta(level);
    let base = input::base(&cat)?;
    let k = input::region(region)?;
    let legs = input::legs(&base, legs)?;
    if legs.len() != k.n() {
        return Err(CliError::Usage(format!("{} legs for a region in Δ^{}", legs.len(), k.n())));
    }
    let root = ThetaObj::new(legs.iter().map(|(_, b)| b.carrier.clone()).collect());
    let site = Site::faces(cat.clone(), std::slice::from_ref(&root));
    let rep = Arc::new(X::representable(site.clone(), &root));
    let (dom, cod) = corner_domain(&k, &legs, &rep)?;
    let ez = ez_table(&rep)?;
    let (dc, cc) = (dom.cells(&ez), cod.cells(&ez));
    let mut r = Report::new("corner");
    r.put("region", &k)
        .put("carrier", cat.show_obj(&root))
        .put("domain-elements", dom.total())
        .put("codomain-elements", cod.total())
        .put("domain-cells", dc.len())
        .put("missing-cells", cc.len() - dc.len());
    for c in cc.iter().filter(|c| !dc.contains(c)) {
        r.put("missing", format!("{} {}", cat.show_obj(site.object(c.carrier)), rep.name(c.carrier, c.element)));
    }
    if let Some(p) = out {
        let (dobj, dincl) = dom.materialize();
        let (cobj, cincl) = cod.materialize();
        let comps = (0..site.len())
            .map(|t| {
                let inv: std::collections::HashMap<u32, u32> = cincl.component(t).iter().enumerate().map(|(i, &y)| (y, i as u32)).collect();
                dincl.component(t).iter().map(|y| inv[y]).collect()
            })
            .collect();
        input::write(p, &write_map(&PresheafMap::new(dobj, cobj, comps)?))?;
    }
    Ok(r)
}

fn certificate_report(cmd: &str, cert: &CellCertificate<Theta>, lib: &Library, out: Option<&str>) -> Result<Report, CliError> {
    let text = write_certificate(cert);
    let check = verify_certificate(cert, lib);
    let mut r = Report::new(cmd);
    r.put("steps", cert.steps.len());
    for l in text.lines().filter(|l| l.starts_with("step ")) {
        r.put("step", &l[5..]);
    }
    r.put("verified", check.ok);
    if let Some((i, why)) = check.failure {
        r.put("failure", format!("step {i}: {why}")).set(Status::Fail);
    }
    if let Some(p) = out {
        input::write(p, &text)?;
    }
    Ok(r)
}

fn verdict_report(cmd: &str, v: &TruncatedVerdict) -> Report {
    let mut r = Report::new(cmd);
    r.put("dim", v.dim).put("problems", v.problems).put("verdict", v);
    match &v.verdict {
        Verdict::Holds => {}
        Verdict::Fails(_) => {
            r.set(Status::Fail);
        }
        Verdict::Undecided(_) => {
            r.set(Status::Budget);
        }
    }
    r
}
