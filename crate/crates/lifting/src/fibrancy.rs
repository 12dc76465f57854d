use std::fmt;
use std::sync::Arc;

use intertwiner::{generator_ids, Library};
use presheaf_engine::{all_maps, e_n, Extension, FinPresheaf, PresheafMap, Search};
use theta_cat::{Theta, ThetaObj};

use crate::problem::{find_lift, LiftOutcome, LiftingProblem};
use crate::LiftingError;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Verdict {
    Holds,
    /// A lifting problem without a solution, described.
    Fails(String),
    /// Some search ran out of budget; nothing is claimed.
    Undecided(String),
}

/// A verdict that only speaks about dimensions up to `dim`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TruncatedVerdict {
    pub verdict: Verdict,
    pub dim: usize,
    pub problems: usize,
}

impl TruncatedVerdict {
    pub fn holds(&self) -> bool {
        self.verdict == Verdict::Holds
    }
}

impl fmt::Display for TruncatedVerdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.verdict {
            Verdict::Holds => write!(f, "holds up to dimension {} (truncated)", self.dim)?,
            Verdict::Fails(w) => write!(f, "fails: {w}")?,
            Verdict::Undecided(w) => write!(f, "undecided within budget: {w}")?,
        }
        write!(f, "; {} lifting problems", self.problems)
    }
}

fn describe_map(m: &PresheafMap<Theta>) -> String {
    let (a, site) = (m.source(), m.source().site());
    let mut parts = Vec::new();
    for t in 0..site.len() {
        for x in 0..a.size(t) as u32 {
            if site.dim_of(t) > 0 {
                continue;
            }
            parts.push(format!("{}↦{}", a.name(t, x), m.target().name(t, m.apply(t, x))));
        }
    }
    parts.join(" ")
}

/// Right lifting against every generating anodyne whose target has
/// dimension at most `dim`. The site must reach `dim + 1`.
pub fn is_formal_quasicategory(x: &Arc<FinPresheaf<Theta>>, dim: usize, budget: usize) -> Result<TruncatedVerdict, LiftingError> {
    let site = x.site().clone();
    let have = site.max_dim();
    if have < dim + 1 {
        return Err(LiftingError::Truncation { dim, needed: dim + 1, have });
    }
    let lib = Library::new(site.clone());
    let mut problems = 0;
    let done = |verdict, problems| Ok(TruncatedVerdict { verdict, dim, problems });
    for g in generator_ids(&site, dim).1 {
        let inc = lib.inclusion(&g)?;
        let name = g.show(site.category());
        let tops = match all_maps(inc.source(), x, usize::MAX, budget)? {
            Search::Complete(v) => v,
            Search::OutOfBudget(_) => return done(Verdict::Undecided(format!("enumerating maps out of the domain of {name}")), problems),
        };
        for top in tops {
            problems += 1;
            let pr = LiftingProblem::against_terminal(inc.clone(), top.clone())?;
            match find_lift(&pr, budget)? {
                LiftOutcome::Found(_) => {}
                LiftOutcome::None => {
                    return done(Verdict::Fails(format!("{name} has no filler for the horn with vertices {}", describe_map(&top))), problems)
                }
                LiftOutcome::OutOfBudget => return done(Verdict::Undecided(format!("filling {name}")), problems),
            }
        }
    }
    done(Verdict::Holds, problems)
}

/// Right lifting of `p` against `Δ⁰ ↪ E¹`, with `E¹` truncated at the
/// site's bound. Both ends must be formal quasicategories up to `dim`.
pub fn isofibration_check(p: &PresheafMap<Theta>, dim: usize, budget: usize) -> Result<TruncatedVerdict, LiftingError> {
    for (end, which) in [(p.source(), "source"), (p.target(), "target")] {
        match is_formal_quasicategory(end, dim, budget)?.verdict {
            Verdict::Holds => {}
            Verdict::Fails(_) => return Err(LiftingError::NotFibrant(which)),
            Verdict::Undecided(w) => {
                return Ok(TruncatedVerdict {
                    verdict: Verdict::Undecided(format!("fibrancy of the {which}: {w}")),
                    dim,
                    problems: 0,
                })
            }
        }
    }
    let site = p.source().site().clone();
    let e1 = Arc::new(e_n(1, site.clone())?);
    let pt = site.require(&ThetaObj::point())?;
    let v0 = e1.find(pt, "0").expect("E¹ has the vertex 0");
    let point = Arc::new(FinPresheaf::representable(site.clone(), &ThetaObj::point()));
    let i = PresheafMap::yoneda(point.clone(), e1.clone(), pt, v0)?;
    let (x, y) = (p.source(), p.target());
    let mut problems = 0;
    let done = |verdict, problems| Ok(TruncatedVerdict { verdict, dim, problems });
    for xv in 0..x.size(pt) as u32 {
        let top = PresheafMap::yoneda(point.clone(), x.clone(), pt, xv)?;
        let mut ext = Extension::new(e1.clone(), y.clone())?;
        ext.fix(pt, v0, p.apply(pt, xv))?;
        let bottoms = match ext.run(&|_, _, _| true, usize::MAX, budget) {
            Search::Complete(v) => v,
            Search::OutOfBudget(_) => return done(Verdict::Undecided("enumerating equivalences in the target".into()), problems),
        };
        for bottom in bottoms {
            problems += 1;
            let pr = LiftingProblem::new(i.clone(), p.clone(), top.clone(), bottom.clone())?;
            match find_lift(&pr, budget)? {
                LiftOutcome::Found(_) => {}
                LiftOutcome::None => {
                    let v1 = e1.find(pt, "1").expect("E¹ has the vertex 1");
                    return done(
                        Verdict::Fails(format!(
                            "the equivalence {} ≃ {} does not lift to {}",
                            y.name(pt, bottom.apply(pt, v0)),
                            y.name(pt, bottom.apply(pt, v1)),
                            x.name(pt, xv)
                        )),
                        problems,
                    );
                }
                LiftOutcome::OutOfBudget => return done(Verdict::Undecided("lifting an equivalence".into()), problems),
            }
        }
    }
    done(Verdict::Holds, problems)
}
