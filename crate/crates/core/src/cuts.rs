//! Cuts of a graded quotient algebra and the grading toolbox around them:
//! cut validation against the Ext-bimodule tensor powers, bigrading checks,
//! total-grading collapse, conjugation by nilpotent units, nilpotency
//! degrees, graded-radical comparison, and cut mutation.

use std::collections::{BTreeMap, BTreeSet, HashMap};

use num::Zero;

use crate::error::{Error, Result};
use crate::koszul;
use crate::linalg::{self, Matrix, Scalar};
use crate::preprojective::{ext_bimodule, tensor_power};
use crate::presentation::Presentation;
use crate::quiver::{Element, Path, Quiver};

/// A cut: a set of arrow names, each given weight 1 by the characteristic
/// weight map.
pub type Cut = BTreeSet<String>;

/// Bounds for cut validation.
#[derive(Debug, Clone, Copy)]
pub struct CutBounds {
    /// Highest preprojective degree whose slice is compared with the
    /// matching Ext-bimodule tensor power.
    pub slice_degree: usize,
    /// Cap on total-degree scans (slice dimensions, global dimension,
    /// finiteness searches).
    pub degree_cap: i64,
    /// Cap on the total dimension of the degree-0 subalgebra.
    pub dim_cap: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CutStatus {
    Valid,
    Invalid(String),
}

#[derive(Debug, Clone)]
pub struct CutVerdict {
    pub status: CutStatus,
    /// The degree-0 subalgebra, once the cut weight is at least homogeneous.
    pub degree_zero: Option<Presentation>,
    pub degree_zero_gldim: Option<usize>,
    /// Total dimension of each preprojective-degree slice, 0..=slice bound.
    pub slice_dims: Option<Vec<usize>>,
}

impl CutVerdict {
    pub fn is_valid(&self) -> bool {
        self.status == CutStatus::Valid
    }

    fn invalid(reason: String) -> CutVerdict {
        CutVerdict {
            status: CutStatus::Invalid(reason),
            degree_zero: None,
            degree_zero_gldim: None,
            slice_dims: None,
        }
    }
}

/// The characteristic weight of a cut: 1 on cut arrows, 0 elsewhere.
pub fn cut_weight(p: &Presentation, cut: &Cut) -> Result<Vec<i64>> {
    let q = p.quiver();
    for name in cut {
        if q.arrow_index(name).is_none() {
            return Err(Error::UnknownName(format!("unknown arrow `{name}` in cut")));
        }
    }
    Ok((0..q.arrow_count())
        .map(|a| i64::from(cut.contains(&q.arrow(a).name)))
        .collect())
}

fn path_cut_weight(w: &[i64], pth: &Path) -> i64 {
    pth.arrows.iter().map(|&a| w[a]).sum()
}

/// The common weight of all terms under an auxiliary rank-1 weight map, or
/// `None` if the element is inhomogeneous for it.
pub fn element_weight(w: &[i64], e: &Element) -> Option<i64> {
    let mut terms = e.terms();
    let (first, _) = terms.next()?;
    let d = path_cut_weight(w, first);
    for (pth, _) in e.terms() {
        if path_cut_weight(w, pth) != d {
            return None;
        }
    }
    Some(d)
}

/// The weight-0 subalgebra of a rank-1 presentation under an auxiliary
/// weight map: arrows of weight 0 with the relations of weight 0 (every
/// relation must be homogeneous for the map).
pub fn degree_zero_part(p: &Presentation, w: &[i64]) -> Result<Presentation> {
    let q = p.quiver();
    let keep: Vec<usize> = (0..q.arrow_count()).filter(|&a| w[a] == 0).collect();
    let arrows: Vec<(String, String, String)> = keep
        .iter()
        .map(|&a| {
            let ar = q.arrow(a);
            (
                ar.name.clone(),
                q.vertex_name(ar.source).to_string(),
                q.vertex_name(ar.target).to_string(),
            )
        })
        .collect();
    let sub = Quiver::new(q.vertex_names().to_vec(), arrows)?;
    // sub shares q's vertex name list, so vertex indices coincide
    let mut relations = Vec::new();
    for rel in p.relations() {
        let d = element_weight(w, rel).ok_or_else(|| {
            Error::Unsupported(format!(
                "relation `{}` is not homogeneous for the weight map",
                rel.display(q)
            ))
        })?;
        if d != 0 {
            continue;
        }
        let mut out = Element::zero();
        for (pth, c) in rel.terms() {
            let arrows: Vec<usize> = pth
                .arrows
                .iter()
                .map(|&a| sub.arrow_index(&q.arrow(a).name).unwrap())
                .collect();
            out.add_term(
                c.clone(),
                Path {
                    source: pth.source,
                    target: pth.target,
                    arrows,
                },
            );
        }
        relations.push(out);
    }
    let count = sub.arrow_count();
    Presentation::new(sub, relations, vec![vec![1]; count])
}

/// Total dimension of each auxiliary-degree slice 0..=max_slice of a
/// bigraded presentation, found by scanning the total degree until a full
/// vanishing window (every nonzero bidegree has a nonzero predecessor one
/// arrow back, so a window as wide as the largest arrow weight certifies
/// vanishing of everything above it).
fn slice_total_dims(pc: &Presentation, max_slice: usize, degree_cap: i64) -> Result<Vec<usize>> {
    let window = pc.weights().iter().map(|w| w[0]).max().unwrap_or(1).max(1);
    let mut dims = vec![0usize; max_slice + 1];
    let mut zero_run = 0i64;
    let mut m = 0i64;
    loop {
        let mut any = false;
        for i in 0..=max_slice.min(m.max(0) as usize) {
            let d = pc.dim_at(&vec![m, i as i64])?;
            if d > 0 {
                any = true;
                dims[i] += d;
            }
        }
        if any {
            zero_run = 0;
        } else {
            zero_run += 1;
            if zero_run >= window {
                return Ok(dims);
            }
        }
        m += 1;
        if m > degree_cap {
            return Err(Error::BoundTooSmall {
                bound: degree_cap,
                msg: "slice dimensions did not stabilize within the degree cap".into(),
            });
        }
    }
}

/// Validate a cut of a path-length-graded presentation: (i) every relation
/// is homogeneous of cut degree 0 or 1; (ii) the degree-0 subalgebra is
/// finite dimensional; (iii) its global dimension is n; (iv) each
/// preprojective-degree slice up to the slice bound has the dimension of
/// the matching tensor power of the degree-0 subalgebra's Ext bimodule.
pub fn validate_cut(p: &Presentation, cut: &Cut, n: usize, bounds: &CutBounds) -> Result<CutVerdict> {
    if p.rank() != 1 || p.weights().iter().any(|w| w[0] != 1) {
        return Err(Error::Unsupported(
            "cut validation needs the path-length grading".into(),
        ));
    }
    if n < 1 {
        return Err(Error::Unsupported("cut validation needs n >= 1".into()));
    }
    let w = cut_weight(p, cut)?;
    // (i) homogeneity with cut degree 0 or 1
    for rel in p.relations() {
        match element_weight(&w, rel) {
            None => {
                return Ok(CutVerdict::invalid(format!(
                    "relation `{}` is not homogeneous for the cut",
                    rel.display(p.quiver())
                )))
            }
            Some(d) if d > 1 => {
                return Ok(CutVerdict::invalid(format!(
                    "relation `{}` has cut degree {d}",
                    rel.display(p.quiver())
                )))
            }
            _ => {}
        }
    }
    // (ii) finite-dimensional degree-0 subalgebra
    let a0 = degree_zero_part(p, &w)?;
    let cert = match a0.certify_finite_dimensional(bounds.dim_cap) {
        Ok(c) => c,
        Err(Error::NotFiniteDimensional { .. }) => {
            return Ok(CutVerdict {
                status: CutStatus::Invalid(
                    "degree-0 subalgebra is not finite dimensional within bounds".into(),
                ),
                degree_zero: Some(a0),
                degree_zero_gldim: None,
                slice_dims: None,
            })
        }
        Err(e) => return Err(e),
    };
    // (iii) global dimension n
    let gldim = match koszul::global_dimension(&a0, n, bounds.degree_cap) {
        Ok(g) => g,
        Err(Error::GlobalDimensionExceeded { .. }) => {
            return Ok(CutVerdict {
                status: CutStatus::Invalid(format!(
                    "degree-0 subalgebra has global dimension above {n}"
                )),
                degree_zero: Some(a0),
                degree_zero_gldim: None,
                slice_dims: None,
            })
        }
        Err(e) => return Err(e),
    };
    if gldim != n {
        return Ok(CutVerdict {
            status: CutStatus::Invalid(format!(
                "degree-0 subalgebra has global dimension {gldim}, expected {n}"
            )),
            degree_zero: Some(a0),
            degree_zero_gldim: Some(gldim),
            slice_dims: None,
        });
    }
    // (iv) slice dimensions against Ext-bimodule tensor powers
    let weights: Vec<Vec<i64>> = (0..p.quiver().arrow_count())
        .map(|a| vec![1, w[a]])
        .collect();
    let pc = Presentation::new(p.quiver().clone(), p.relations().to_vec(), weights)?;
    let slice_dims = slice_total_dims(&pc, bounds.slice_degree, bounds.degree_cap)?;
    let mut status = CutStatus::Valid;
    if slice_dims[0] != cert.total_dim {
        status = CutStatus::Invalid(format!(
            "slice 0 has dimension {}, degree-0 subalgebra has {}",
            slice_dims[0], cert.total_dim
        ));
    } else if bounds.slice_degree >= 1 {
        let e = ext_bimodule(&a0, n, bounds.degree_cap)?;
        let maxd = e.items.iter().map(|it| it.degree).max().unwrap_or(0).max(0);
        for i in 1..=bounds.slice_degree {
            let expect = if e.dim() == 0 {
                0
            } else {
                tensor_power(&a0, &e, i, maxd * i as i64).dim()
            };
            if slice_dims[i] != expect {
                status = CutStatus::Invalid(format!(
                    "slice {i} has dimension {}, Ext tensor power has {expect}",
                    slice_dims[i]
                ));
                break;
            }
        }
    }
    Ok(CutVerdict {
        status,
        degree_zero: Some(a0),
        degree_zero_gldim: Some(gldim),
        slice_dims: Some(slice_dims),
    })
}

/// Every subset of the arrows together with its verdict. Bound exhaustion
/// on a subset is recorded as an invalid verdict so the enumeration stays
/// total.
pub fn enumerate_cuts(
    p: &Presentation,
    n: usize,
    bounds: &CutBounds,
) -> Result<Vec<(Cut, CutVerdict)>> {
    let na = p.quiver().arrow_count();
    assert!(na < 63, "too many arrows to enumerate subsets");
    let mut out = Vec::new();
    for mask in 0u64..(1u64 << na) {
        let cut: Cut = (0..na)
            .filter(|a| mask >> a & 1 == 1)
            .map(|a| p.quiver().arrow(a).name.clone())
            .collect();
        let verdict = match validate_cut(p, &cut, n, bounds) {
            Ok(v) => v,
            Err(Error::BoundTooSmall { msg, .. }) => {
                CutVerdict::invalid(format!("bound exhausted: {msg}"))
            }
            Err(e) => return Err(e),
        };
        out.push((cut, verdict));
    }
    Ok(out)
}

/// True iff every relation is simultaneously homogeneous for both
/// auxiliary weight maps.
pub fn bigrading_check(p: &Presentation, w1: &[i64], w2: &[i64]) -> bool {
    p.relations()
        .iter()
        .all(|rel| element_weight(w1, rel).is_some() && element_weight(w2, rel).is_some())
}

/// Collapse a rank-2 grading (total increment, preprojective increment) to
/// its rank-1 total grading. Under this storage convention the total degree
/// (n+1)i + j, with j the internal degree, is exactly the stored first
/// component, independent of n; `n` is accepted for interface symmetry.
pub fn total_collapse(p: &Presentation, n: usize) -> Result<Presentation> {
    if p.rank() != 2 {
        return Err(Error::Unsupported("total collapse needs a rank-2 grading".into()));
    }
    let _ = n;
    let weights = p.weights().iter().map(|w| vec![w[0]]).collect();
    Presentation::new(p.quiver().clone(), p.relations().to_vec(), weights)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Nilpotency {
    Nilpotent(usize),
    UnknownBeyond(usize),
}

/// Smallest k <= bound with x^k = 0 in the quotient, per element. Elements
/// must have strictly positive degree (no lazy-path terms).
pub fn nilpotency_degrees(
    p: &Presentation,
    xs: &[Element],
    bound: usize,
) -> Result<Vec<Nilpotency>> {
    assert!(bound >= 1);
    let mut out = Vec::new();
    for x in xs {
        if x.terms().any(|(pth, _)| pth.is_lazy()) {
            return Err(Error::Unsupported(
                "nilpotency needs elements of strictly positive degree".into(),
            ));
        }
        let mut pow = p.normal_form(x)?;
        let mut k = 1usize;
        loop {
            if pow.is_zero() {
                out.push(Nilpotency::Nilpotent(k));
                break;
            }
            if k >= bound {
                out.push(Nilpotency::UnknownBeyond(bound));
                break;
            }
            pow = p.mul_nf(&pow, x)?;
            k += 1;
        }
    }
    Ok(out)
}

/// Images of every arrow and every lazy path under x -> (1+r)^{-1}.x.(1+r),
/// with (1+r)^{-1} expanded to the certified nilpotency degree of r (an
/// error if r is not nilpotent within `bound`). Keys are arrow and vertex
/// names; all images are in normal form.
pub fn conjugate(
    p: &Presentation,
    r: &Element,
    bound: usize,
) -> Result<BTreeMap<String, Element>> {
    let q = p.quiver();
    let unit = Element::unit(q);
    let k = if p.normal_form(r)?.is_zero() {
        1
    } else {
        match nilpotency_degrees(p, std::slice::from_ref(r), bound)?[0] {
            Nilpotency::Nilpotent(k) => k,
            Nilpotency::UnknownBeyond(b) => return Err(Error::NotNilpotent(b)),
        }
    };
    // (1 + r)^{-1} = sum_{j < k} (-r)^j since r^k = 0
    let mut inv = Element::zero();
    let mut pow = unit.clone();
    for j in 0..k {
        inv = if j % 2 == 0 { inv.add(&pow) } else { inv.sub(&pow) };
        pow = p.mul_nf(&pow, r)?;
    }
    let fwd = unit.add(r);
    let mut out = BTreeMap::new();
    for v in 0..q.vertex_count() {
        let x = Element::from_path(Path::lazy(v));
        let img = p.normal_form(&inv.multiply(&x).multiply(&fwd))?;
        out.insert(q.vertex_name(v).to_string(), img);
    }
    for a in 0..q.arrow_count() {
        let x = Element::from_path(Path::of_arrow(q, a));
        let img = p.normal_form(&inv.multiply(&x).multiply(&fwd))?;
        out.insert(q.arrow(a).name.clone(), img);
    }
    Ok(out)
}

/// Push an element through a conjugation map: every arrow of every path is
/// replaced by its image, lazy paths by the image of their vertex.
pub fn apply_map(
    p: &Presentation,
    map: &BTreeMap<String, Element>,
    e: &Element,
) -> Result<Element> {
    let q = p.quiver();
    let mut out = Element::zero();
    for (pth, c) in e.terms() {
        let mut acc = if pth.is_lazy() {
            map[q.vertex_name(pth.source)].clone()
        } else {
            let mut acc = Element::unit(q);
            for &a in &pth.arrows {
                acc = acc.multiply(&map[&q.arrow(a).name]);
            }
            acc
        };
        acc = acc.scale(c);
        out = out.add(&acc);
    }
    p.normal_form(&out)
}

/// Generators, as an ideal, of the graded radical attached to an auxiliary
/// weight map on a path-length-graded algebra: the positive part is
/// generated by the positive-weight arrows, and the radical of the weight-0
/// subalgebra by the weight-0 arrows, so together all arrows generate.
pub fn grading_radical_generators(p: &Presentation, _w: &[i64]) -> Vec<Element> {
    (0..p.quiver().arrow_count())
        .map(|a| Element::from_path(Path::of_arrow(p.quiver(), a)))
        .collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RadicalCompare {
    Equal,
    LeftInRight,
    RightInLeft,
    Incomparable,
}

/// Compare the two-sided ideals generated by two element sets, inside the
/// degree filtration up to `degree_bound`: each side's generators are
/// tested for membership in the other side's truncated ideal span. Both
/// verdict directions are relative to the bound.
pub fn graded_radical_compare(
    p: &Presentation,
    left: &[Element],
    right: &[Element],
    degree_bound: i64,
) -> Result<RadicalCompare> {
    assert_eq!(p.rank(), 1, "ideal comparison needs a rank-1 grading");
    let mut paths: Vec<Path> = Vec::new();
    for d in 0..=degree_bound {
        paths.extend(p.degree_basis(&vec![d])?.basis.iter().cloned());
    }
    let pos: HashMap<Path, usize> = paths
        .iter()
        .cloned()
        .enumerate()
        .map(|(i, x)| (x, i))
        .collect();
    let coords = |e: &Element| -> Vec<Scalar> {
        let mut v = vec![linalg::zero(); paths.len()];
        for (pth, c) in e.terms() {
            if let Some(&i) = pos.get(pth) {
                v[i] += c;
            }
        }
        v
    };
    let span_of = |gens: &[Element]| -> Result<Matrix> {
        let mut rows = Vec::new();
        for g in gens {
            let gnf = p.normal_form(g)?;
            if gnf.is_zero() {
                continue;
            }
            let gmin = gnf
                .terms()
                .map(|(pth, _)| p.path_weight(pth)[0])
                .min()
                .unwrap();
            for du in 0..=(degree_bound - gmin).max(0) {
                for u in p.degree_basis(&vec![du])?.basis.clone() {
                    let ug = p.mul_nf(&Element::from_path(u), &gnf)?;
                    if ug.is_zero() {
                        continue;
                    }
                    for dv in 0..=(degree_bound - gmin - du).max(0) {
                        for v in p.degree_basis(&vec![dv])?.basis.clone() {
                            let ugv = p.mul_nf(&ug, &Element::from_path(v))?;
                            if ugv.is_zero() {
                                continue;
                            }
                            let row = coords(&ugv);
                            if row.iter().any(|c| !c.is_zero()) {
                                rows.push(row);
                            }
                        }
                    }
                }
            }
        }
        Ok(Matrix::from_rows(rows, paths.len()).row_space())
    };
    let lspan = span_of(left)?;
    let rspan = span_of(right)?;
    let contained = |gens: &[Element], span: &Matrix| -> Result<bool> {
        for g in gens {
            let gnf = p.normal_form(g)?;
            if !span.contains_in_rowspace(&coords(&gnf)) {
                return Ok(false);
            }
        }
        Ok(true)
    };
    let l_in_r = contained(left, &rspan)?;
    let r_in_l = contained(right, &lspan)?;
    Ok(match (l_in_r, r_in_l) {
        (true, true) => RadicalCompare::Equal,
        (true, false) => RadicalCompare::LeftInRight,
        (false, true) => RadicalCompare::RightInLeft,
        (false, false) => RadicalCompare::Incomparable,
    })
}

/// Mutate a cut at a vertex: every arrow ending there must lie in the cut
/// and no arrow starting there may; the mutated cut swaps them.
pub fn mutate_cut(p: &Presentation, cut: &Cut, v: &str) -> Result<Cut> {
    let q = p.quiver();
    let vi = q
        .vertex_index(v)
        .ok_or_else(|| Error::UnknownName(format!("unknown vertex `{v}`")))?;
    for name in cut {
        if q.arrow_index(name).is_none() {
            return Err(Error::UnknownName(format!("unknown arrow `{name}` in cut")));
        }
    }
    let mut out = cut.clone();
    for a in q.arrows() {
        let incoming = a.target == vi;
        let outgoing = a.source == vi;
        if incoming && outgoing {
            return Err(Error::MutationPrecondition {
                vertex: v.into(),
                msg: format!("arrow `{}` is a loop at the vertex", a.name),
            });
        }
        if incoming && !cut.contains(&a.name) {
            return Err(Error::MutationPrecondition {
                vertex: v.into(),
                msg: format!("arrow `{}` ends at the vertex but is not in the cut", a.name),
            });
        }
        if outgoing && cut.contains(&a.name) {
            return Err(Error::MutationPrecondition {
                vertex: v.into(),
                msg: format!("arrow `{}` starts at the vertex but lies in the cut", a.name),
            });
        }
    }
    for a in q.arrows() {
        if a.target == vi {
            out.remove(&a.name);
        }
        if a.source == vi {
            out.insert(a.name.clone());
        }
    }
    Ok(out)
}
