//! The generating monomorphisms `𝓜`, the generating anodynes `𝓙`, and the
//! empty-label horn corners used by filtrations, all addressed by id.

use std::collections::HashMap;
use std::sync::{Arc, Mutex};

use presheaf_engine::{FinPresheaf, PresheafMap, Site, Subobject};
use theta_cat::{Category, Theta, ThetaObj};

use crate::construct::{boundary, corner_domain, horn};
use crate::region::{Label, SimplicialSubset};
use crate::IntertwinerError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum GeneratorKind {
    /// `∂t ↪ t`, id `M:<t>`.
    Boundary,
    /// `Λ^n_k(c⃗) ∪ label boundaries ↪ [n](c⃗)`, id `J:<t>:<k>`.
    Horn(usize),
    /// The corner of `λ^n_k` with the empty maps `∅ ↪ c_i`, id `JE:<t>:<k>`.
    /// Its domain is `V_{Λ^n_k}(c⃗)` together with the cells that avoid some
    /// spine edge.
    EmptyLabelHorn(usize),
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GeneratorId {
    pub kind: GeneratorKind,
    pub carrier: ThetaObj,
}

impl GeneratorId {
    pub fn boundary(t: ThetaObj) -> Self {
        GeneratorId {
            kind: GeneratorKind::Boundary,
            carrier: t,
        }
    }

    pub fn horn(t: ThetaObj, k: usize) -> Self {
        GeneratorId {
            kind: GeneratorKind::Horn(k),
            carrier: t,
        }
    }

    pub fn empty_label_horn(t: ThetaObj, k: usize) -> Self {
        GeneratorId {
            kind: GeneratorKind::EmptyLabelHorn(k),
            carrier: t,
        }
    }

    pub fn show(&self, cat: &Theta) -> String {
        let t = cat.show_obj(&self.carrier);
        match self.kind {
            GeneratorKind::Boundary => format!("M:{t}"),
            GeneratorKind::Horn(k) => format!("J:{t}:{k}"),
            GeneratorKind::EmptyLabelHorn(k) => format!("JE:{t}:{k}"),
        }
    }

    pub fn parse(cat: &Theta, s: &str) -> Result<Self, IntertwinerError> {
        let bad = || IntertwinerError::BadGenerator(s.to_string());
        let (head, rest) = s.split_once(':').ok_or_else(bad)?;
        let obj = |x: &str| cat.parse_obj(x).map_err(|_| bad());
        match head {
            "M" => Ok(GeneratorId::boundary(obj(rest)?)),
            "J" | "JE" => {
                let (t, k) = rest.rsplit_once(':').ok_or_else(bad)?;
                let k: usize = k.parse().map_err(|_| bad())?;
                let t = obj(t)?;
                if k == 0 || k >= t.n() {
                    return Err(IntertwinerError::OuterHorn { n: t.n(), k });
                }
                Ok(if head == "J" {
                    GeneratorId::horn(t, k)
                } else {
                    GeneratorId::empty_label_horn(t, k)
                })
            }
            _ => Err(bad()),
        }
    }
}

type DomainCache = Mutex<HashMap<GeneratorId, Subobject<Theta>>>;

/// Generators materialized over one site, with representables cached.
pub struct Library {
    site: Arc<Site<Theta>>,
    reps: Mutex<HashMap<ThetaObj, Arc<FinPresheaf<Theta>>>>,
    domains: DomainCache,
}

impl Library {
    pub fn new(site: Arc<Site<Theta>>) -> Self {
        Library {
            site,
            reps: Mutex::new(HashMap::new()),
            domains: Mutex::new(HashMap::new()),
        }
    }

    pub fn site(&self) -> &Arc<Site<Theta>> {
        &self.site
    }

    pub fn category(&self) -> &Theta {
        self.site.category()
    }

    pub fn representable(&self, t: &ThetaObj) -> Result<Arc<FinPresheaf<Theta>>, IntertwinerError> {
        self.site.require(t)?;
        let mut reps = self.reps.lock().unwrap();
        Ok(reps
            .entry(t.clone())
            .or_insert_with(|| Arc::new(FinPresheaf::representable(self.site.clone(), t)))
            .clone())
    }

    /// The generator's domain as a subobject of the representable on its
    /// carrier.
    pub fn domain(&self, id: &GeneratorId) -> Result<Subobject<Theta>, IntertwinerError> {
        if let Some(d) = self.domains.lock().unwrap().get(id) {
            return Ok(d.clone());
        }
        let t = &id.carrier;
        let rep = self.representable(t)?;
        let d = match id.kind {
            GeneratorKind::Boundary => boundary(t, &rep)?,
            GeneratorKind::Horn(k) => horn(t, k, &rep)?,
            GeneratorKind::EmptyLabelHorn(k) => {
                let legs: Vec<(Label, Label)> = t
                    .labels
                    .iter()
                    .map(|c| (Label::empty(c.clone()), Label::full(c.clone())))
                    .collect();
                corner_domain(&SimplicialSubset::horn(t.n(), k), &legs, &rep)?.0
            }
        };
        self.domains.lock().unwrap().insert(id.clone(), d.clone());
        Ok(d)
    }

    /// The generator as a map of presheaves.
    pub fn inclusion(&self, id: &GeneratorId) -> Result<PresheafMap<Theta>, IntertwinerError> {
        Ok(self.domain(id)?.materialize().1)
    }

    /// Resolver for certificate replay.
    pub fn resolve(&self, id: &str, carrier: &ThetaObj) -> Result<Subobject<Theta>, String> {
        let g = GeneratorId::parse(self.category(), id).map_err(|e| e.to_string())?;
        if &g.carrier != carrier {
            return Err(format!("{id} does not live on {}", self.category().show_obj(carrier)));
        }
        self.domain(&g).map_err(|e| e.to_string())
    }

    /// `(𝓜, 𝓙)` restricted to targets of dimension at most `d`.
    pub fn generators(&self, d: usize) -> (Vec<GeneratorId>, Vec<GeneratorId>) {
        generator_ids(&self.site, d)
    }
}

/// Ids of `𝓜` and `𝓙` with target dimension at most `d`, in object order.
pub fn generator_ids(site: &Site<Theta>, d: usize) -> (Vec<GeneratorId>, Vec<GeneratorId>) {
    let mut m = Vec::new();
    let mut j = Vec::new();
    for (i, t) in site.objects().iter().enumerate() {
        if site.dim_of(i) > d {
            continue;
        }
        m.push(GeneratorId::boundary(t.clone()));
        for k in 1..t.n().max(1) {
            j.push(GeneratorId::horn(t.clone(), k));
        }
    }
    (m, j)
}
