//! Relative cell complex certificates.

use theta_cat::Category;

use crate::map::PresheafMap;
use crate::subobject::Subobject;

/// One cell attachment: the generator named `generator`, whose codomain is
/// the representable on `carrier`, attached along the element `element` of
/// the final target at `carrier`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CertStep<C: Category> {
    pub generator: String,
    pub carrier: C::Obj,
    pub element: u32,
}

/// A claimed monomorphism `A ↪ B` together with the cells that build `B`
/// from the image of `A`, in attachment order.
#[derive(Debug, Clone, PartialEq)]
pub struct CellCertificate<C: Category> {
    pub claimed: PresheafMap<C>,
    pub steps: Vec<CertStep<C>>,
}

/// Outcome of replaying a certificate.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Replay {
    /// Index of the first failing step, or `steps.len()` if the cells did
    /// not cover the target.
    pub failure: Option<(usize, String)>,
    pub steps_checked: usize,
}

impl Replay {
    pub fn ok(&self) -> bool {
        self.failure.is_none()
    }
}

/// Replays the attachments starting from the image of the claimed map.
///
/// `resolve(id, carrier)` must return the generator's domain as a subobject
/// of the representable on `carrier`, built over the target's site. Each
/// step must attach along an element `e` whose Yoneda map `φ` sends the
/// domain into what is present, is injective off the domain, and adds only
/// new elements. At the end everything must be present.
pub fn replay<C: Category>(
    cert: &CellCertificate<C>,
    resolve: &dyn Fn(&str, &C::Obj) -> Result<Subobject<C>, String>,
) -> Replay {
    let fail = |i: usize, why: String| Replay {
        failure: Some((i, why)),
        steps_checked: i,
    };
    if !cert.claimed.is_mono() {
        return fail(0, "claimed map is not a monomorphism".into());
    }
    let b = cert.claimed.target();
    let site = b.site();
    let mut present: Vec<Vec<bool>> = cert.claimed.image().members().to_vec();
    for (i, step) in cert.steps.iter().enumerate() {
        let t = match site.index_of(&step.carrier) {
            Some(t) => t,
            None => return fail(i, "carrier is not in the site".into()),
        };
        if step.element as usize >= b.size(t) {
            return fail(i, "element out of range".into());
        }
        let dom = match resolve(&step.generator, &step.carrier) {
            Ok(d) => d,
            Err(e) => return fail(i, format!("unknown generator: {e}")),
        };
        if !dom.ambient().site().same(site) || (0..site.len()).any(|s| dom.ambient().size(s) != site.hom(s, t).len()) {
            return fail(i, "generator is not a subobject of the representable on its carrier".into());
        }
        let mut added: Vec<(usize, u32)> = Vec::new();
        for s in 0..site.len() {
            let mut hit = vec![false; b.size(s)];
            for (x, a) in site.arrows(s, t).enumerate() {
                let y = b.act(a, step.element);
                if dom.contains(s, x as u32) {
                    if !present[s][y as usize] {
                        return fail(
                            i,
                            format!("attaching map leaves the current stage at {}", b.name(s, y)),
                        );
                    }
                } else {
                    if present[s][y as usize] {
                        return fail(i, format!("new cell {} is already present", b.name(s, y)));
                    }
                    if std::mem::replace(&mut hit[y as usize], true) {
                        return fail(i, format!("attaching map identifies two new cells at {}", b.name(s, y)));
                    }
                    added.push((s, y));
                }
            }
        }
        for (s, y) in added {
            present[s][y as usize] = true;
        }
    }
    if let Some((s, row)) = present.iter().enumerate().find(|(_, r)| r.iter().any(|&p| !p)) {
        let y = row.iter().position(|&p| !p).unwrap();
        return Replay {
            failure: Some((cert.steps.len(), format!("{} is never attached", b.name(s, y as u32)))),
            steps_checked: cert.steps.len(),
        };
    }
    Replay {
        failure: None,
        steps_checked: cert.steps.len(),
    }
}
