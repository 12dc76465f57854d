use std::sync::Arc;

use intertwiner::{GeneratorId, Library};
use presheaf_engine::{replay, CellCertificate, CertStep, FinPresheaf, Site, Subobject};
use simplex_core::horn_product_filtration;
use theta_cat::{Theta, ThetaMap, ThetaObj};

use crate::LiftingError;

/// Outcome of checking a cell certificate.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CertificateCheck {
    pub ok: bool,
    /// First failing step and the reason; the index equals the number of
    /// steps when the cells do not cover the target.
    pub failure: Option<(usize, String)>,
    pub steps: usize,
}

/// Replays `cert` against the generators of `lib`. Passes iff every step is
/// a pushout of its named generator and the composite of the attachments is
/// the claimed inclusion.
pub fn verify_certificate(cert: &CellCertificate<Theta>, lib: &Library) -> CertificateCheck {
    let steps = cert.steps.len();
    if let Err(e) = cert.claimed.target().site().check_same(lib.site()) {
        return CertificateCheck {
            ok: false,
            failure: Some((0, e.to_string())),
            steps,
        };
    }
    let r = replay(cert, &|id, c| lib.resolve(id, c));
    CertificateCheck {
        ok: r.ok(),
        failure: r.failure,
        steps,
    }
}

/// The horn-product filtration of `Λ^n_j × Δ^m ∪ Δ^n × ∂Δ^m ↪ Δ^n × Δ^m`
/// as a certificate over `Δ`, together with the generator library it is
/// checked against.
pub fn horn_product_certificate(n: usize, j: usize, m: usize) -> Result<(CellCertificate<Theta>, Library), LiftingError> {
    let filt = horn_product_filtration(n, j, m)?;
    let cat = Theta::new(1);
    let site = Site::dim(cat, n + m);
    let rn = FinPresheaf::representable(site.clone(), &ThetaObj::simplex(n));
    let rm = FinPresheaf::representable(site.clone(), &ThetaObj::simplex(m));
    let prod = Arc::new(rn.product(&rm)?);
    let ni = site.require(&ThetaObj::simplex(n))?;
    let mi = site.require(&ThetaObj::simplex(m))?;

    let members = (0..site.len())
        .map(|t| {
            let (xs, ys) = (site.hom(t, ni), site.hom(t, mi));
            xs.iter()
                .flat_map(|x| ys.iter().map(move |y| (x, y)))
                .map(|(x, y)| {
                    let in_horn = (0..=n).any(|v| v != j && !x.alpha.contains(&v));
                    let in_bdry = m > 0 && (0..=m).any(|v| !y.alpha.contains(&v));
                    in_horn || in_bdry
                })
                .collect()
        })
        .collect();
    let dom = Subobject::from_members(prod.clone(), members)?;
    let claimed = dom.materialize().1;

    let mut steps = Vec::new();
    for s in &filt.steps {
        let carrier = ThetaObj::simplex(s.r);
        let t = site.require(&carrier)?;
        let (a, b) = (ThetaMap::simplicial(s.simplex.0.values()), ThetaMap::simplicial(s.simplex.1.values()));
        let xa = site.hom(t, ni).iter().position(|f| *f == a);
        let xb = site.hom(t, mi).iter().position(|f| *f == b);
        let (Some(xa), Some(xb)) = (xa, xb) else {
            return Err(LiftingError::Shape("filtration simplex is not a map of simplices".into()));
        };
        steps.push(CertStep {
            generator: GeneratorId::horn(carrier.clone(), s.l).show(site.category()),
            carrier,
            element: (xa * site.hom(t, mi).len() + xb) as u32,
        });
    }
    Ok((CellCertificate { claimed, steps }, Library::new(site)))
}
