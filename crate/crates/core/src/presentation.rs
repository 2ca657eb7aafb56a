//! Degreewise model of a graded quotient algebra kQ/I for a homogeneous
//! ideal I: per-degree monomial bases, normal forms, Hilbert data, and the
//! graded radical.
//!
//! Because every relation is weight-homogeneous with nonzero nonnegative
//! weight, each graded piece is computed exactly by finite linear algebra.
//! The computation is incremental in the degree: writing w(a) for arrow
//! weights and R for the relation set,
//!
//!   I_d = sum_a I_{d-w(a)} . a  +  sum_r basis(R_{d-w(r)}) . r
//!
//! so the degree-d piece is a quotient of the span of candidates
//! (basis monomial of a predecessor degree) . (arrow), which keeps the
//! elimination sizes proportional to the algebra's Hilbert function rather
//! than to raw path counts. Full path enumeration is kept test-side as an
//! independent oracle.

use std::collections::{BTreeMap, HashMap};
use std::sync::{Arc, Mutex};

use num::Zero;

use crate::error::{Error, Result};
use crate::linalg::{self, Matrix, Scalar};
use crate::quiver::{Element, Path, Quiver};

pub type Degree = Vec<i64>;

/// A quiver together with homogeneous relations and per-arrow integer
/// weight vectors of a fixed rank (1 or 2).
#[derive(Debug)]
pub struct Presentation {
    quiver: Quiver,
    relations: Vec<Element>,
    weights: Vec<Degree>,
    rank: usize,
    // relation metadata: (source, target, weight)
    rel_info: Vec<(usize, usize, Degree)>,
    cache: Mutex<HashMap<Degree, Arc<DegreeBasis>>>,
}

impl Clone for Presentation {
    fn clone(&self) -> Self {
        Presentation {
            quiver: self.quiver.clone(),
            relations: self.relations.clone(),
            weights: self.weights.clone(),
            rank: self.rank,
            rel_info: self.rel_info.clone(),
            cache: Mutex::new(self.cache.lock().unwrap().clone()),
        }
    }
}

impl PartialEq for Presentation {
    fn eq(&self, other: &Self) -> bool {
        self.quiver == other.quiver
            && self.relations == other.relations
            && self.weights == other.weights
    }
}

/// Per-degree monomial basis with the reduction data expressing every
/// degree-d path in the basis modulo I_d.
#[derive(Debug, Clone)]
pub struct DegreeBasis {
    pub degree: Degree,
    /// Basis paths, a subset of all degree-d paths, lexicographically ordered.
    pub basis: Vec<Path>,
    // Candidates are (pred-degree basis index, arrow) pairs; their paths are
    // pairwise distinct and lex-sorted. cand_nf[j] holds candidate j's
    // normal-form coordinates over `basis`.
    cand_index: HashMap<(Degree, usize, usize), usize>,
    cand_nf: Vec<Vec<Scalar>>,
}

impl DegreeBasis {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }
}

pub type HilbertTable = BTreeMap<Degree, usize>;

/// Certificate that the graded algebra is finite dimensional: dimensions
/// vanished over a window wide enough that nothing can reappear.
#[derive(Debug, Clone)]
pub struct FiniteCert {
    /// Highest degree with nonzero dimension (rank-1 grading).
    pub top: i64,
    pub total_dim: usize,
    /// dims[d] for d in 0..=top.
    pub dims: Vec<usize>,
}

impl Presentation {
    pub fn new(quiver: Quiver, relations: Vec<Element>, weights: Vec<Degree>) -> Result<Self> {
        if weights.len() != quiver.arrow_count() {
            return Err(Error::InvalidPresentation(
                "one weight vector per arrow required".into(),
            ));
        }
        let rank = if weights.is_empty() {
            1
        } else {
            weights[0].len()
        };
        if rank == 0 || rank > 2 {
            return Err(Error::InvalidPresentation(format!(
                "weight rank must be 1 or 2, got {rank}"
            )));
        }
        for (i, w) in weights.iter().enumerate() {
            if w.len() != rank {
                return Err(Error::InvalidPresentation(
                    "all weight vectors must share one rank".into(),
                ));
            }
            if w.iter().any(|&c| c < 0) {
                return Err(Error::InvalidPresentation(format!(
                    "arrow `{}` has a negative weight component",
                    quiver.arrow(i).name
                )));
            }
            if w.iter().all(|&c| c == 0) {
                return Err(Error::InvalidPresentation(format!(
                    "arrow `{}` has weight zero",
                    quiver.arrow(i).name
                )));
            }
        }
        let mut rel_info = Vec::with_capacity(relations.len());
        for rel in &relations {
            if rel.is_zero() {
                return Err(Error::InvalidPresentation("zero relation".into()));
            }
            let mut iter = rel.terms();
            let (first, _) = iter.next().unwrap();
            if first.is_lazy() {
                return Err(Error::InvalidPresentation(
                    "relation contains a lazy path (weight 0)".into(),
                ));
            }
            let w = path_weight(&weights, rank, first);
            let (s, t) = (first.source, first.target);
            for (p, _) in rel.terms() {
                if p.source != s || p.target != t {
                    return Err(Error::InvalidPresentation(
                        "relation paths must share source and target".into(),
                    ));
                }
                if path_weight(&weights, rank, p) != w {
                    return Err(Error::InvalidPresentation(
                        "relation is not weight-homogeneous".into(),
                    ));
                }
            }
            rel_info.push((s, t, w));
        }
        Ok(Presentation {
            quiver,
            relations,
            weights,
            rank,
            rel_info,
            cache: Mutex::new(HashMap::new()),
        })
    }

    pub fn quiver(&self) -> &Quiver {
        &self.quiver
    }

    pub fn relations(&self) -> &[Element] {
        &self.relations
    }

    pub fn weights(&self) -> &[Degree] {
        &self.weights
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn arrow_weight(&self, a: usize) -> &Degree {
        &self.weights[a]
    }

    pub fn path_weight(&self, p: &Path) -> Degree {
        path_weight(&self.weights, self.rank, p)
    }

    pub fn element_is_homogeneous(&self, e: &Element) -> Option<Degree> {
        let mut terms = e.terms();
        let (first, _) = terms.next()?;
        let w = self.path_weight(first);
        for (p, _) in e.terms() {
            if self.path_weight(p) != w {
                return None;
            }
        }
        Some(w)
    }

    /// The graded piece R_d: basis monomials and reduction data.
    pub fn degree_basis(&self, d: &Degree) -> Result<Arc<DegreeBasis>> {
        if d.len() != self.rank {
            return Err(Error::InvalidPresentation(format!(
                "degree rank {} does not match weight rank {}",
                d.len(),
                self.rank
            )));
        }
        if d.iter().any(|&c| c < 0) {
            return Err(Error::NegativeDegree(d.clone()));
        }
        if let Some(db) = self.cache.lock().unwrap().get(d) {
            return Ok(db.clone());
        }
        let db = Arc::new(self.compute_degree_basis(d)?);
        self.cache
            .lock()
            .unwrap()
            .entry(d.clone())
            .or_insert_with(|| db.clone());
        Ok(db)
    }

    fn compute_degree_basis(&self, d: &Degree) -> Result<DegreeBasis> {
        if d.iter().all(|&c| c == 0) {
            let basis = (0..self.quiver.vertex_count()).map(Path::lazy).collect();
            return Ok(DegreeBasis {
                degree: d.clone(),
                basis,
                cand_index: HashMap::new(),
                cand_nf: Vec::new(),
            });
        }
        // Collect candidates (pred basis monomial, arrow).
        struct Cand {
            path: Path,
            pred_degree: Degree,
            pred_idx: usize,
            arrow: usize,
        }
        let mut cands: Vec<Cand> = Vec::new();
        for a in 0..self.quiver.arrow_count() {
            let w = &self.weights[a];
            let Some(pred) = sub_degree(d, w) else {
                continue;
            };
            let pred_basis = self.degree_basis(&pred)?;
            let src = self.quiver.arrow(a).source;
            for (bi, b) in pred_basis.basis.iter().enumerate() {
                if b.target == src {
                    let mut arrows = b.arrows.clone();
                    arrows.push(a);
                    cands.push(Cand {
                        path: Path {
                            source: b.source,
                            target: self.quiver.arrow(a).target,
                            arrows,
                        },
                        pred_degree: pred.clone(),
                        pred_idx: bi,
                        arrow: a,
                    });
                }
            }
        }
        cands.sort_by(|x, y| x.path.cmp(&y.path));
        let cand_pos: HashMap<(Degree, usize, usize), usize> = cands
            .iter()
            .enumerate()
            .map(|(j, c)| ((c.pred_degree.clone(), c.pred_idx, c.arrow), j))
            .collect();
        let ncand = cands.len();

        // Relation span rows in candidate coordinates.
        let mut rows: Vec<Vec<Scalar>> = Vec::new();
        for (ri, rel) in self.relations.iter().enumerate() {
            let (rs, _rt, rw) = &self.rel_info[ri];
            let Some(cof) = sub_degree(d, rw) else {
                continue;
            };
            let cof_basis = self.degree_basis(&cof)?;
            for c in cof_basis.basis.iter() {
                if c.target != *rs {
                    continue;
                }
                let mut row = vec![linalg::zero(); ncand];
                for (p, coeff) in rel.terms() {
                    let last = *p.arrows.last().expect("relation paths are nonempty");
                    let prefix = Path {
                        source: p.source,
                        target: self.quiver.arrow(last).source,
                        arrows: p.arrows[..p.arrows.len() - 1].to_vec(),
                    };
                    let cp = c.compose(&prefix).expect("targets matched");
                    let pd = sub_degree(d, &self.weights[last]).expect("weights consistent");
                    let coords = self.nf_path_coords(&cp, &pd)?;
                    for (bi, cf) in coords.iter().enumerate() {
                        if !cf.is_zero() {
                            let j = cand_pos[&(pd.clone(), bi, last)];
                            row[j] += cf * coeff;
                        }
                    }
                }
                rows.push(row);
            }
        }
        let span = Matrix::from_rows(rows, ncand);
        let (red, pivots) = span.rref();
        let basis_cols: Vec<usize> = (0..ncand).filter(|c| !pivots.contains(c)).collect();
        let col_to_basis: HashMap<usize, usize> = basis_cols
            .iter()
            .enumerate()
            .map(|(k, &c)| (c, k))
            .collect();
        let nb = basis_cols.len();
        let mut cand_nf = vec![vec![linalg::zero(); nb]; ncand];
        for (k, &c) in basis_cols.iter().enumerate() {
            cand_nf[c][k] = linalg::one();
        }
        for (r, &p) in pivots.iter().enumerate() {
            for &c in &basis_cols {
                let v = -red[(r, c)].clone();
                if !v.is_zero() {
                    cand_nf[p][col_to_basis[&c]] = v;
                }
            }
        }
        let basis: Vec<Path> = basis_cols.iter().map(|&c| cands[c].path.clone()).collect();
        let cand_index = cand_pos;
        Ok(DegreeBasis {
            degree: d.clone(),
            basis,
            cand_index,
            cand_nf,
        })
    }

    /// Normal-form coordinates of a path over the basis of its degree.
    pub fn nf_path_coords(&self, p: &Path, d: &Degree) -> Result<Vec<Scalar>> {
        debug_assert_eq!(&self.path_weight(p), d);
        let db = self.degree_basis(d)?;
        if p.is_lazy() {
            let mut v = vec![linalg::zero(); db.dim()];
            let pos = db
                .basis
                .iter()
                .position(|b| b == p)
                .expect("lazy path present in degree-0 basis");
            v[pos] = linalg::one();
            return Ok(v);
        }
        let last = *p.arrows.last().unwrap();
        let prefix = Path {
            source: p.source,
            target: self.quiver.arrow(last).source,
            arrows: p.arrows[..p.arrows.len() - 1].to_vec(),
        };
        let pd = sub_degree(d, &self.weights[last]).ok_or_else(|| {
            Error::Inconsistent("path weight below arrow weight".into())
        })?;
        let pre = self.nf_path_coords(&prefix, &pd)?;
        let mut out = vec![linalg::zero(); db.dim()];
        for (bi, cf) in pre.iter().enumerate() {
            if cf.is_zero() {
                continue;
            }
            // A predecessor basis monomial not composable with `last` cannot
            // appear: nf preserves (source, target).
            let j = db.cand_index[&(pd.clone(), bi, last)];
            for (k, x) in db.cand_nf[j].iter().enumerate() {
                if !x.is_zero() {
                    out[k] += x * cf;
                }
            }
        }
        Ok(out)
    }

    /// Canonical representative of `x` modulo the relation ideal.
    pub fn normal_form(&self, x: &Element) -> Result<Element> {
        let mut by_degree: BTreeMap<Degree, Element> = BTreeMap::new();
        for (p, c) in x.terms() {
            by_degree
                .entry(self.path_weight(p))
                .or_insert_with(Element::zero)
                .add_term(c.clone(), p.clone());
        }
        let mut out = Element::zero();
        for (d, comp) in by_degree {
            let db = self.degree_basis(&d)?;
            let mut coords = vec![linalg::zero(); db.dim()];
            for (p, c) in comp.terms() {
                let v = self.nf_path_coords(p, &d)?;
                for (k, x) in v.iter().enumerate() {
                    if !x.is_zero() {
                        coords[k] += x * c;
                    }
                }
            }
            for (k, c) in coords.into_iter().enumerate() {
                if !c.is_zero() {
                    out.add_term(c, db.basis[k].clone());
                }
            }
        }
        Ok(out)
    }

    /// Product followed by normal form.
    pub fn mul_nf(&self, x: &Element, y: &Element) -> Result<Element> {
        self.normal_form(&x.multiply(y))
    }

    /// dim R_d.
    pub fn dim_at(&self, d: &Degree) -> Result<usize> {
        Ok(self.degree_basis(d)?.dim())
    }

    /// Hilbert table for all degrees componentwise <= `up_to`.
    pub fn hilbert(&self, up_to: &Degree) -> Result<HilbertTable> {
        if up_to.len() != self.rank {
            return Err(Error::InvalidPresentation(
                "hilbert bound rank mismatch".into(),
            ));
        }
        if up_to.iter().any(|&c| c < 0) {
            return Err(Error::NegativeDegree(up_to.clone()));
        }
        let mut table = HilbertTable::new();
        let mut d = vec![0i64; self.rank];
        loop {
            table.insert(d.clone(), self.dim_at(&d)?);
            // componentwise odometer
            let mut i = self.rank;
            loop {
                if i == 0 {
                    return Ok(table);
                }
                i -= 1;
                if d[i] < up_to[i] {
                    d[i] += 1;
                    for c in d.iter_mut().skip(i + 1) {
                        *c = 0;
                    }
                    break;
                }
            }
        }
    }

    /// Rank-1 Hilbert function as a vector dims[0..=up_to].
    pub fn hilbert_vec(&self, up_to: i64) -> Result<Vec<usize>> {
        assert_eq!(self.rank, 1, "hilbert_vec needs a rank-1 grading");
        (0..=up_to).map(|d| self.dim_at(&vec![d])).collect()
    }

    /// Certify finite dimensionality of a rank-1 graded algebra by finding a
    /// vanishing window wide enough that no higher degree can be nonzero.
    pub fn certify_finite_dimensional(&self, total_dim_bound: usize) -> Result<FiniteCert> {
        assert_eq!(self.rank, 1, "certificate needs a rank-1 grading");
        let window = self.vanishing_window();
        let mut dims = Vec::new();
        let mut total = 0usize;
        let mut zero_run = 0i64;
        let mut d = 0i64;
        loop {
            let dim = self.dim_at(&vec![d])?;
            total += dim;
            if total > total_dim_bound {
                return Err(Error::NotFiniteDimensional {
                    bound: total_dim_bound as i64,
                    msg: format!("dimension exceeded {total_dim_bound} by degree {d}"),
                });
            }
            if dim == 0 {
                zero_run += 1;
                if zero_run >= window {
                    let top = d - zero_run;
                    dims.truncate((top + 1).max(0) as usize);
                    return Ok(FiniteCert {
                        top,
                        total_dim: total,
                        dims,
                    });
                }
            } else {
                zero_run = 0;
            }
            dims.push(dim);
            d += 1;
            if d > total_dim_bound as i64 + window {
                return Err(Error::NotFiniteDimensional {
                    bound: total_dim_bound as i64,
                    msg: format!("no vanishing window of width {window} found up to degree {d}"),
                });
            }
        }
    }

    /// Top nonzero degree of a rank-1 graded algebra, certified by a
    /// vanishing window, or `None` if no window appears by `degree_cap`.
    pub fn top_degree_within(&self, degree_cap: i64) -> Result<Option<i64>> {
        assert_eq!(self.rank, 1, "top degree needs a rank-1 grading");
        let window = self.vanishing_window();
        let mut zero_run = 0i64;
        let mut last_nonzero = -1i64;
        for d in 0..=degree_cap + window {
            if self.dim_at(&vec![d])? == 0 {
                zero_run += 1;
                if zero_run >= window {
                    return Ok(Some(last_nonzero));
                }
            } else {
                zero_run = 0;
                last_nonzero = d;
            }
        }
        Ok(None)
    }

    /// dim e_i R_d e_j for all vertex pairs (i, j).
    pub fn dims_by_pair(&self, d: &Degree) -> Result<Vec<Vec<usize>>> {
        let n = self.quiver.vertex_count();
        let mut out = vec![vec![0usize; n]; n];
        for p in &self.degree_basis(d)?.basis {
            out[p.source][p.target] += 1;
        }
        Ok(out)
    }

    /// Window width certifying vanishing: any nonzero monomial in degree d
    /// has prefixes meeting every window of this width below d.
    fn vanishing_window(&self) -> i64 {
        let arrow_max = self.weights.iter().map(|w| w[0]).max().unwrap_or(1);
        let rel_max = self.rel_info.iter().map(|(_, _, w)| w[0]).max().unwrap_or(1);
        arrow_max.max(rel_max).max(1)
    }

    /// Generators of the graded radical of a finite-dimensional algebra,
    /// together with the radical's total dimension. The degree-0 part is
    /// basic semisimple (spanned by lazy paths), so the graded radical is
    /// the positive part, generated by the arrows.
    pub fn graded_radical(&self, total_dim_bound: usize) -> Result<(Vec<Element>, usize)> {
        let cert = self.certify_finite_dimensional(total_dim_bound)?;
        let gens = (0..self.quiver.arrow_count())
            .map(|a| Element::from_path(Path::of_arrow(&self.quiver, a)))
            .collect();
        Ok((gens, cert.total_dim - self.quiver.vertex_count()))
    }

    /// Basis paths of R_d with the given target vertex (the degree-d piece
    /// of the left projective R.e_v), in lex order.
    pub fn basis_with_target(&self, d: &Degree, v: usize) -> Result<Vec<(usize, Path)>> {
        let db = self.degree_basis(d)?;
        Ok(db
            .basis
            .iter()
            .enumerate()
            .filter(|(_, p)| p.target == v)
            .map(|(i, p)| (i, p.clone()))
            .collect())
    }
}

pub fn path_weight(weights: &[Degree], rank: usize, p: &Path) -> Degree {
    let mut w = vec![0i64; rank];
    for &a in &p.arrows {
        for (i, c) in weights[a].iter().enumerate() {
            w[i] += c;
        }
    }
    w
}

fn sub_degree(d: &Degree, w: &Degree) -> Option<Degree> {
    let mut out = Vec::with_capacity(d.len());
    for (a, b) in d.iter().zip(w) {
        if a < b {
            return None;
        }
        out.push(a - b);
    }
    Some(out)
}
