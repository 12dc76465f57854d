//! A deterministic family of small lifting problems over `Δ` and `Θ_2`,
//! used to cross-check the solvers, and a few problems known to have no
//! solution.

use std::sync::Arc;

use intertwiner::{v_subobject, GeneratorId, Label, LabeledRegion, Library, SimplicialSubset};
use presheaf_engine::{
    all_maps, e_n, local_termination, preorder_nerve, Extension, FinPresheaf, PresheafMap, Site,
};
use theta_cat::{Category, Theta, ThetaObj};

use crate::problem::LiftingProblem;
use crate::LiftingError;

type X = FinPresheaf<Theta>;
type Map = PresheafMap<Theta>;

/// Largest presheaf allowed in a corpus problem.
pub const MAX_ELEMENTS: usize = 200;

pub struct Entry {
    pub name: String,
    pub problem: LiftingProblem<Theta>,
}

/// `≤` on `0..n` as a total order.
pub fn chain_order(n: usize) -> Vec<Vec<bool>> {
    (0..n).map(|a| (0..n).map(|b| a <= b).collect()).collect()
}

/// `≤` on `0..n` that is equality only.
pub fn discrete_order(n: usize) -> Vec<Vec<bool>> {
    (0..n).map(|a| (0..n).map(|b| a == b).collect()).collect()
}

/// The indiscrete order on `0..n`: its nerve is `cosk₀Δ^{n-1}`.
pub fn indiscrete_order(n: usize) -> Vec<Vec<bool>> {
    vec![vec![true; n]; n]
}

/// Map that sends each element to the element of `tgt` named `f(name)`.
pub fn map_by_names(src: &Arc<X>, tgt: &Arc<X>, f: impl Fn(&str) -> String) -> Result<Map, LiftingError> {
    let site = src.site();
    let mut comps = Vec::with_capacity(site.len());
    for t in 0..site.len() {
        let mut row = Vec::with_capacity(src.size(t));
        for x in 0..src.size(t) as u32 {
            let want = f(src.name(t, x));
            row.push(tgt.find(t, &want).ok_or_else(|| LiftingError::Shape(format!("no element named {want}")))?);
        }
        comps.push(row);
    }
    Ok(PresheafMap::new(src.clone(), tgt.clone(), comps)?)
}

pub fn to_terminal(src: &Arc<X>) -> Map {
    let one = Arc::new(FinPresheaf::terminal(src.site().clone()));
    let comps = (0..src.site().len()).map(|t| vec![0; src.size(t)]).collect();
    PresheafMap::new_unchecked(src.clone(), one, comps).expect("shapes match")
}

/// Inclusion of `V_K` for a simplicial subset `K` of `Δ^n`.
pub fn simplicial_inclusion(site: &Arc<Site<Theta>>, k: &SimplicialSubset) -> Result<Map, LiftingError> {
    let t = ThetaObj::simplex(k.n());
    let rep = Arc::new(FinPresheaf::representable(site.clone(), &t));
    let labels = vec![Label::full(ThetaObj::point()); k.n()];
    Ok(v_subobject(&LabeledRegion::new(k.clone(), labels), &rep)?.materialize().1)
}

/// `k` indices spread evenly over `0..len`, first and last included.
fn spread(len: usize, k: usize) -> Vec<usize> {
    if len <= k {
        return (0..len).collect();
    }
    let mut v: Vec<usize> = (0..k).map(|q| q * (len - 1) / (k - 1).max(1)).collect();
    v.dedup();
    v
}

fn squares(name: &str, i: &Map, p: &Map, per_square: usize, out: &mut Vec<Entry>) -> Result<(), LiftingError> {
    let (a, b, x, y) = (i.source(), i.target(), p.source(), p.target());
    if [a, b, x, y].iter().any(|z| z.total_size() > MAX_ELEMENTS) {
        return Ok(());
    }
    let bottoms = all_maps(b, y, 256, 1_000_000)?.into_found();
    for bi in spread(bottoms.len(), per_square) {
        let bottom = &bottoms[bi];
        // tops over bottom ∘ i
        let tops = Extension::new(a.clone(), x.clone())?
            .run(&|t, e, v| p.apply(t, v) == bottom.apply(t, i.apply(t, e)), 256, 1_000_000)
            .into_found();
        for ti in spread(tops.len(), per_square) {
            out.push(Entry {
                name: format!("{name} #{bi}.{ti}"),
                problem: LiftingProblem::new(i.clone(), p.clone(), tops[ti].clone(), bottom.clone())?,
            });
        }
    }
    Ok(())
}

/// The cross-check corpus. Every presheaf involved has at most
/// [`MAX_ELEMENTS`] elements.
pub fn lifting_corpus() -> Result<Vec<Entry>, LiftingError> {
    let mut out = Vec::new();

    let d = Site::dim(Theta::new(1), 3);
    let mut monos: Vec<(String, Map)> = Vec::new();
    for n in 0..=3 {
        monos.push((format!("∂Δ{n}"), simplicial_inclusion(&d, &SimplicialSubset::boundary(n))?));
    }
    for (n, k) in [(2, 0), (2, 1), (2, 2), (3, 1), (3, 2), (3, 3)] {
        monos.push((format!("Λ{n}_{k}"), simplicial_inclusion(&d, &SimplicialSubset::horn(n, k))?));
    }
    for n in [2, 3] {
        monos.push((format!("Sp{n}"), simplicial_inclusion(&d, &SimplicialSubset::spine(n))?));
    }
    monos.push(("Δ0→Δ1".into(), simplicial_inclusion(&d, &SimplicialSubset::face(1, 1))?));

    let nerve = |le: Vec<Vec<bool>>| -> Result<Arc<X>, LiftingError> { Ok(Arc::new(preorder_nerve(&le, d.clone())?)) };
    let n1 = nerve(chain_order(2))?;
    let n2 = nerve(chain_order(3))?;
    let e1 = nerve(indiscrete_order(2))?;
    let two = nerve(discrete_order(2))?;
    let bd2 = simplicial_inclusion(&d, &SimplicialSubset::boundary(2))?.source().clone();
    let sq = Arc::new(n1.product(&n1)?);
    let horn21 = simplicial_inclusion(&d, &SimplicialSubset::horn(2, 1))?.source().clone();
    let sp3 = simplicial_inclusion(&d, &SimplicialSubset::spine(3))?.source().clone();
    let mut fibres: Vec<(String, Map)> = vec![
        ("N[0]→1".into(), to_terminal(&nerve(chain_order(1))?)),
        ("N[1]→1".into(), to_terminal(&n1)),
        ("N[2]→1".into(), to_terminal(&n2)),
        ("E1→1".into(), to_terminal(&e1)),
        ("2→1".into(), to_terminal(&two)),
        ("∂Δ2→1".into(), to_terminal(&bd2)),
        ("Λ2_1→1".into(), to_terminal(&horn21)),
        ("Sp3→1".into(), to_terminal(&sp3)),
        ("2→N[1]".into(), map_by_names(&two, &n1, str::to_string)?),
        ("N[1]→E1".into(), map_by_names(&n1, &e1, str::to_string)?),
        ("N[2]→N[1]".into(), map_by_names(&n2, &n1, |s| s.replace('1', "0").replace('2', "1"))?),
        ("pr:N[1]²→N[1]".into(), map_by_names(&sq, &n1, |s| s[1..].split(", ").next().unwrap().to_string())?),
        ("id N[2]".into(), PresheafMap::identity(n2.clone())),
    ];
    for (iname, i) in &monos {
        for (pname, p) in &fibres {
            squares(&format!("Δ: {iname} ⧄ {pname}"), i, p, 4, &mut out)?;
        }
    }

    let s = Site::dim(Theta::new(2), 3);
    let lib = Library::new(s.clone());
    let cat = Theta::new(2);
    let obj = |t: &str| cat.parse_obj(t).expect("valid object");
    let mut monos: Vec<(String, Map)> = Vec::new();
    for t in ["[1]([0])", "[1]([1])", "[2]([0],[0])"] {
        monos.push((format!("M:{t}"), lib.inclusion(&GeneratorId::boundary(obj(t)))?));
    }
    monos.push(("J:[2]([0],[0]):1".into(), lib.inclusion(&GeneratorId::horn(obj("[2]([0],[0])"), 1))?));
    monos.push(("JE:[2]([1],[0]):1".into(), lib.inclusion(&GeneratorId::empty_label_horn(obj("[2]([1],[0])"), 1))?));
    let delta = Site::dim(Theta::new(1), 4);
    let h = |le: Vec<Vec<bool>>| -> Result<Arc<X>, LiftingError> {
        Ok(Arc::new(local_termination(&preorder_nerve(&le, delta.clone())?, s.clone())?))
    };
    let hn1 = h(chain_order(2))?;
    let he1 = Arc::new(e_n(1, s.clone())?);
    fibres = vec![
        ("1→1".into(), to_terminal(&Arc::new(FinPresheaf::terminal(s.clone())))),
        ("𝓗N[1]→1".into(), to_terminal(&hn1)),
        ("E1→1".into(), to_terminal(&he1)),
        ("𝓗N[1]→E1".into(), map_by_names(&hn1, &he1, str::to_string)?),
        ("[1]([0])→1".into(), to_terminal(&lib.representable(&obj("[1]([0])"))?)),
        ("[1]([1])→1".into(), to_terminal(&lib.representable(&obj("[1]([1])"))?)),
    ];
    for (iname, i) in &monos {
        for (pname, p) in &fibres {
            squares(&format!("Θ2: {iname} ⧄ {pname}"), i, p, 3, &mut out)?;
        }
    }
    Ok(out)
}

/// The map `A -> X` sending an element with inclusion `i` into `Δ^n`
/// along `α` to the element of `X` named `f(α)`.
pub fn by_alpha(i: &Map, tgt: &Arc<X>, f: impl Fn(&[usize]) -> String) -> Result<Map, LiftingError> {
    let (a, site) = (i.source(), i.source().site());
    let mut comps = Vec::with_capacity(site.len());
    for t in 0..site.len() {
        let mut row = Vec::with_capacity(a.size(t));
        for e in 0..a.size(t) as u32 {
            let alpha = simplex_alpha(i.target(), t, i.apply(t, e))?;
            let want = f(&alpha);
            row.push(tgt.find(t, &want).ok_or_else(|| LiftingError::Shape(format!("no element named {want}")))?);
        }
        comps.push(row);
    }
    Ok(PresheafMap::new(a.clone(), tgt.clone(), comps)?)
}

fn simplex_alpha(rep: &Arc<X>, t: usize, y: u32) -> Result<Vec<usize>, LiftingError> {
    let site = rep.site();
    site.category()
        .parse_mor(rep.name(t, y))
        .map(|f| f.alpha)
        .map_err(|e| LiftingError::Shape(e.to_string()))
}

/// `small` factored through the monomorphism `big` with the same target.
pub fn factor_through(small: &Map, big: &Map) -> Result<Map, LiftingError> {
    let site = small.source().site();
    let mut comps = Vec::with_capacity(site.len());
    for t in 0..site.len() {
        let row = (0..small.source().size(t) as u32)
            .map(|e| {
                let y = small.apply(t, e);
                (0..big.source().size(t) as u32)
                    .find(|&k| big.apply(t, k) == y)
                    .ok_or_else(|| LiftingError::Shape("map does not factor".into()))
            })
            .collect::<Result<Vec<_>, _>>()?;
        comps.push(row);
    }
    Ok(PresheafMap::new(small.source().clone(), big.source().clone(), comps)?)
}

fn vertices(alpha: &[usize]) -> String {
    alpha.iter().map(|v| v.to_string()).collect::<Vec<_>>().join(",")
}

/// Problems with no solution: the solver must report exhaustion.
pub fn negative_controls() -> Result<Vec<Entry>, LiftingError> {
    let d = Site::dim(Theta::new(1), 3);
    let mut out = Vec::new();

    // the endpoints of an edge sent to two points with no edge between them
    let i = simplicial_inclusion(&d, &SimplicialSubset::boundary(1))?;
    let two = Arc::new(preorder_nerve(&discrete_order(2), d.clone())?);
    let top = by_alpha(&i, &two, vertices)?;
    out.push(Entry {
        name: "∂Δ1 ⧄ 2→1 with distinct endpoints".into(),
        problem: LiftingProblem::against_terminal(i, top)?,
    });

    // the horn Λ²₁ inside ∂Δ²: the long edge is there, the triangle is not
    let i = simplicial_inclusion(&d, &SimplicialSubset::horn(2, 1))?;
    let bd2 = simplicial_inclusion(&d, &SimplicialSubset::boundary(2))?;
    let top = factor_through(&i, &bd2)?;
    out.push(Entry {
        name: "Λ2_1 ⧄ ∂Δ2→1".into(),
        problem: LiftingProblem::against_terminal(i, top)?,
    });

    // a one-way edge has no inverse to lift
    let i = simplicial_inclusion(&d, &SimplicialSubset::face(1, 1))?;
    let n1 = Arc::new(preorder_nerve(&chain_order(2), d.clone())?);
    let e1 = Arc::new(preorder_nerve(&indiscrete_order(2), d.clone())?);
    let p = map_by_names(&n1, &e1, str::to_string)?;
    let top = by_alpha(&i, &n1, |a| vec!["1"; a.len()].join(","))?;
    let bottom = by_alpha(&PresheafMap::identity(i.target().clone()), &e1, |a| {
        a.iter().map(|v| (1 - v).to_string()).collect::<Vec<_>>().join(",")
    })?;
    out.push(Entry {
        name: "Δ0→Δ1 ⧄ N[1]→E1 against the inverse edge".into(),
        problem: LiftingProblem::new(i, p, top, bottom)?,
    });
    Ok(out)
}
