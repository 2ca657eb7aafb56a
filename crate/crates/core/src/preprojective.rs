//! Preprojective constructions: doubled quivers and the classical
//! preprojective algebra, the degree-m terms of the Koszul complex of a
//! quadratic algebra, the bimodule Ext^n(D(A), A) with its exact two-sided
//! action, tensor powers over the algebra, and the degree-(n+1) higher
//! preprojective algebra as a bigraded presentation.

use std::collections::{BTreeMap, HashMap, HashSet};

use num::Zero;

use crate::error::{Error, Result};
use crate::koszul;
use crate::linalg::{self, Matrix, Scalar};
use crate::modules::{algebra_basis, dual_module, lift_chain_map, resolve, AlgebraBasis, FreeModule};
use crate::presentation::Presentation;
use crate::quiver::{Element, Path, Quiver};

/// Add a reversed arrow `a*: j -> i` for every arrow `a: i -> j`.
pub fn double_quiver(q: &Quiver) -> Result<Quiver> {
    let mut arrows: Vec<(String, String, String)> = Vec::new();
    for a in q.arrows() {
        if a.name.ends_with('*') {
            return Err(Error::Unsupported(format!(
                "arrow `{}` already carries a star; refusing to double",
                a.name
            )));
        }
        let (s, t) = (
            q.vertex_name(a.source).to_string(),
            q.vertex_name(a.target).to_string(),
        );
        arrows.push((a.name.clone(), s.clone(), t.clone()));
        arrows.push((format!("{}*", a.name), t, s));
    }
    Quiver::new(q.vertex_names().to_vec(), arrows)
}

/// The classical preprojective algebra of a quiver: the doubled quiver
/// modulo, at each vertex v, the sum of a.a* over arrows leaving v minus
/// the sum of a*.a over arrows entering v (path-length grading).
pub fn classical_preprojective(q: &Quiver) -> Result<Presentation> {
    let dq = double_quiver(q)?;
    // dq shares q's vertex name list, so vertex indices coincide
    let idx = |name: &str| dq.arrow_index(name).expect("arrow present in the double");
    let mut relations = Vec::new();
    for v in 0..dq.vertex_count() {
        let mut rel = Element::zero();
        for a in q.arrows() {
            let fwd = Path::of_arrow(&dq, idx(&a.name));
            let bwd = Path::of_arrow(&dq, idx(&format!("{}*", a.name)));
            if a.source == v {
                rel = rel.add(&Element::from_path(fwd.compose(&bwd).unwrap()));
            }
            if a.target == v {
                rel = rel.sub(&Element::from_path(bwd.compose(&fwd).unwrap()));
            }
        }
        if !rel.is_zero() {
            relations.push(rel);
        }
    }
    let n = dq.arrow_count();
    Presentation::new(dq, relations, vec![vec![1]; n])
}

/// The degree-m term K_m of the Koszul complex of a quadratic algebra: the
/// intersection over i of V^i . R . V^{m-2-i} inside the span of all
/// length-m paths (K_0 and K_1 are the full spans).
pub struct KoszulComplexTerm {
    pub m: usize,
    /// Coordinate paths: all length-m paths, lex ordered.
    pub paths: Vec<Path>,
    /// Echelon basis of the subspace; rows are (source, target)-pure.
    pub basis: Matrix,
}

impl KoszulComplexTerm {
    pub fn dim(&self) -> usize {
        self.basis.rows()
    }
}

pub fn koszul_complex_term(p: &Presentation, m: usize) -> Result<KoszulComplexTerm> {
    require_quadratic(p)?;
    let q = p.quiver();
    let paths = q.all_paths(m);
    let n = paths.len();
    if m <= 1 {
        return Ok(KoszulComplexTerm {
            m,
            paths,
            basis: Matrix::identity(n),
        });
    }
    let pos: HashMap<Path, usize> = paths
        .iter()
        .cloned()
        .enumerate()
        .map(|(i, x)| (x, i))
        .collect();
    let mut spaces = Vec::new();
    for i in 0..=m - 2 {
        let mut rows = Vec::new();
        for u in q.all_paths(i) {
            for rel in p.relations() {
                for w in q.all_paths(m - 2 - i) {
                    let mut row = vec![linalg::zero(); n];
                    let mut nonzero = false;
                    for (r, c) in rel.terms() {
                        if let Some(ur) = u.compose(r) {
                            if let Some(urw) = ur.compose(&w) {
                                row[pos[&urw]] += c;
                                nonzero = true;
                            }
                        }
                    }
                    if nonzero {
                        rows.push(row);
                    }
                }
            }
        }
        spaces.push(Matrix::from_rows(rows, n));
    }
    Ok(KoszulComplexTerm {
        m,
        paths,
        basis: linalg::intersect_rowspaces(&spaces),
    })
}

fn require_quadratic(p: &Presentation) -> Result<()> {
    if p.rank() != 1 || p.weights().iter().any(|w| w[0] != 1) {
        return Err(Error::NonQuadratic("path-length grading required".into()));
    }
    for rel in p.relations() {
        if rel.terms().any(|(path, _)| path.len() != 2) {
            return Err(Error::NonQuadratic(format!(
                "relation `{}` is not quadratic",
                rel.display(p.quiver())
            )));
        }
    }
    Ok(())
}

/// A finite-dimensional bimodule over the algebra with a labeled basis:
/// item i spans e_{lv} . item . e_{rv} in the given internal degree.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BimodItem {
    pub left_vertex: usize,
    pub right_vertex: usize,
    pub degree: i64,
}

/// `left[a]` (resp. `right[a]`) maps the coordinate vector of x to that of
/// a.x (resp. x.a). When the bimodule is a truncation, action components
/// landing above the truncation degree are dropped.
#[derive(Debug, Clone)]
pub struct Bimodule {
    pub items: Vec<BimodItem>,
    pub left: Vec<Matrix>,
    pub right: Vec<Matrix>,
}

impl Bimodule {
    pub fn empty(num_arrows: usize) -> Bimodule {
        Bimodule {
            items: Vec::new(),
            left: vec![Matrix::zeros(0, 0); num_arrows],
            right: vec![Matrix::zeros(0, 0); num_arrows],
        }
    }

    pub fn dim(&self) -> usize {
        self.items.len()
    }

    pub fn dim_at(&self, d: i64) -> usize {
        self.items.iter().filter(|it| it.degree == d).count()
    }

    pub fn dims_by_degree(&self) -> BTreeMap<i64, usize> {
        let mut out = BTreeMap::new();
        for it in &self.items {
            *out.entry(it.degree).or_insert(0) += 1;
        }
        out
    }

    pub fn min_degree(&self) -> Option<i64> {
        self.items.iter().map(|it| it.degree).min()
    }

    /// Total dimension per (left vertex, right vertex).
    pub fn dim_table(&self, num_vertices: usize) -> Vec<Vec<usize>> {
        let mut out = vec![vec![0usize; num_vertices]; num_vertices];
        for it in &self.items {
            out[it.left_vertex][it.right_vertex] += 1;
        }
        out
    }

    /// Item indices spanning e_{lv} . M_d . e_{rv}.
    pub fn slice(&self, lv: usize, rv: usize, d: i64) -> Vec<usize> {
        (0..self.dim())
            .filter(|&i| {
                let it = &self.items[i];
                it.left_vertex == lv && it.right_vertex == rv && it.degree == d
            })
            .collect()
    }

    /// Restrict to items of degree at most `cap`.
    pub fn truncate(&self, cap: i64) -> Bimodule {
        let keep: Vec<usize> = (0..self.dim())
            .filter(|&i| self.items[i].degree <= cap)
            .collect();
        let sub = |m: &Matrix| {
            let mut out = Matrix::zeros(keep.len(), keep.len());
            for (r2, &r) in keep.iter().enumerate() {
                for (c2, &c) in keep.iter().enumerate() {
                    out[(r2, c2)] = m[(r, c)].clone();
                }
            }
            out
        };
        Bimodule {
            items: keep.iter().map(|&i| self.items[i].clone()).collect(),
            left: self.left.iter().map(sub).collect(),
            right: self.right.iter().map(sub).collect(),
        }
    }
}

/// Hom(F, A) basis for a free module F: pairs (generator slot, basis path
/// starting at that generator's vertex), of internal degree
/// deg(path) - deg(generator) and right vertex target(path).
fn hom_items(basis: &AlgebraBasis, f: &FreeModule) -> Vec<(usize, Path)> {
    let mut out = Vec::new();
    for (k, g) in f.gens.iter().enumerate() {
        for pth in &basis.paths {
            if pth.source == g.vertex {
                out.push((k, pth.clone()));
            }
        }
    }
    out
}

/// Non-pivot columns of a matrix in reduced echelon form.
fn free_columns(u: &Matrix, ncols: usize) -> Vec<usize> {
    let mut pivot = vec![false; ncols];
    for r in 0..u.rows() {
        if let Some(lead) = u.row(r).iter().position(|c| !c.is_zero()) {
            pivot[lead] = true;
        }
    }
    (0..ncols).filter(|&c| !pivot[c]).collect()
}

/// Coordinates in the quotient by the row space of `u` (in rref), over the
/// representatives indexed by the free columns.
fn quotient_coords(u: &Matrix, free: &[usize], v: &[Scalar]) -> Vec<Scalar> {
    let red = u.reduce_mod_rowspace(v);
    free.iter().map(|&c| red[c].clone()).collect()
}

/// Matrix of right multiplication by `x` on D(A): the q-dual coefficient of
/// (r-dual . x) is the r-coefficient of nf(x . q).
fn right_mult_on_dual(p: &Presentation, basis: &AlgebraBasis, x: &Element) -> Result<Matrix> {
    let dim = basis.paths.len();
    let mut m = Matrix::zeros(dim, dim);
    for (qi, qp) in basis.paths.iter().enumerate() {
        let prod = p.mul_nf(x, &Element::from_path(qp.clone()))?;
        for (r, c) in prod.terms() {
            m[(qi, basis.pos[r])] += c;
        }
    }
    Ok(m)
}

/// Ext^n(D(A), A) as a bimodule with a fully labeled basis. Requires a
/// finite-dimensional algebra of global dimension at most n (certified, or
/// an error). The right action is right multiplication on the values of a
/// Hom(F_n, A) representative; the left action precomposes with a lifted
/// chain map of right multiplication on D(A). Minimality of the resolution
/// makes both independent of the lift choices. The basis is split along
/// lifted vertex idempotents so each item carries an exact
/// (left vertex, right vertex, degree) label.
pub fn ext_bimodule(p: &Presentation, n: usize, degree_cap: i64) -> Result<Bimodule> {
    assert!(n >= 1, "ext bimodule needs n >= 1");
    assert_eq!(p.rank(), 1, "ext bimodule needs a rank-1 grading");
    let na = p.quiver().arrow_count();
    let nv = p.quiver().vertex_count();
    let basis = algebra_basis(p, degree_cap)?;
    koszul::global_dimension(p, n, degree_cap)?;
    let d = dual_module(p, &basis)?;
    let res = resolve(p, &basis, &d, n)?;
    if res.steps.len() <= n {
        // the resolution stops early, so Ext^n vanishes
        return Ok(Bimodule::empty(na));
    }
    let fnmod = &res.steps[n];
    let fprev = &res.steps[n - 1];
    let hn = hom_items(&basis, fnmod);
    let hn_pos: HashMap<(usize, Path), usize> = hn
        .iter()
        .cloned()
        .enumerate()
        .map(|(i, x)| (x, i))
        .collect();
    // image of Hom(d_n): one row per Hom(F_{n-1}, A) basis element
    let mut rows = Vec::new();
    for (k, pth) in hom_items(&basis, fprev) {
        let mut row = vec![linalg::zero(); hn.len()];
        let mut nonzero = false;
        for (j, comps) in res.maps[n - 1].iter().enumerate() {
            let prod = p.mul_nf(&comps[k], &Element::from_path(pth.clone()))?;
            for (qp, c) in prod.terms() {
                row[hn_pos[&(j, qp.clone())]] += c;
                nonzero = true;
            }
        }
        if nonzero {
            rows.push(row);
        }
    }
    let u = Matrix::from_rows(rows, hn.len()).row_space();
    let free = free_columns(&u, hn.len());
    let dim_e = free.len();
    if dim_e == 0 {
        return Ok(Bimodule::empty(na));
    }
    // right action: right multiplication on values
    let mut right_raw = Vec::with_capacity(na);
    for a in 0..na {
        let arrow = Element::from_path(Path::of_arrow(p.quiver(), a));
        let mut m = Matrix::zeros(dim_e, dim_e);
        for (cj, &fc) in free.iter().enumerate() {
            let (k, pth) = &hn[fc];
            let prod = p.mul_nf(&Element::from_path(pth.clone()), &arrow)?;
            let mut col = vec![linalg::zero(); hn.len()];
            for (qp, c) in prod.terms() {
                col[hn_pos[&(*k, qp.clone())]] += c;
            }
            for (r, c) in quotient_coords(&u, &free, &col).into_iter().enumerate() {
                if !c.is_zero() {
                    m[(r, cj)] = c;
                }
            }
        }
        right_raw.push(m);
    }
    // left action of arrows and of vertex idempotents, through chain lifts
    let mut xs: Vec<Element> = (0..na)
        .map(|a| Element::from_path(Path::of_arrow(p.quiver(), a)))
        .collect();
    xs.extend((0..nv).map(|v| Element::from_path(Path::lazy(v))));
    let mut left_all = Vec::with_capacity(xs.len());
    for x in &xs {
        let rho = right_mult_on_dual(p, &basis, x)?;
        let lifts = lift_chain_map(&res, &d, &rho)?;
        let images: Vec<Vec<Element>> = lifts[n].iter().map(|y| fnmod.components(y)).collect();
        let mut m = Matrix::zeros(dim_e, dim_e);
        for (cj, &fc) in free.iter().enumerate() {
            let (k, pth) = &hn[fc];
            // (x . phi)(g_j) = x'_{jk} . phi(g_k) where f_n(g_j) = sum_k x'_{jk} g_k
            let mut col = vec![linalg::zero(); hn.len()];
            for (j, comps) in images.iter().enumerate() {
                let prod = p.mul_nf(&comps[*k], &Element::from_path(pth.clone()))?;
                for (qp, c) in prod.terms() {
                    col[hn_pos[&(j, qp.clone())]] += c;
                }
            }
            for (r, c) in quotient_coords(&u, &free, &col).into_iter().enumerate() {
                if !c.is_zero() {
                    m[(r, cj)] = c;
                }
            }
        }
        left_all.push(m);
    }
    let idem = left_all.split_off(na);
    let left_raw = left_all;
    // purify: split each (right vertex, degree) block along the lifted left
    // idempotents so every basis vector has an exact left vertex
    let raw_labels: Vec<(usize, i64)> = free
        .iter()
        .map(|&fc| {
            let (k, pth) = &hn[fc];
            (pth.target, p.path_weight(pth)[0] - fnmod.gens[*k].degree)
        })
        .collect();
    let mut blocks: BTreeMap<(usize, i64), Vec<usize>> = BTreeMap::new();
    for (i, lab) in raw_labels.iter().enumerate() {
        blocks.entry(*lab).or_default().push(i);
    }
    let mut cols: Vec<Vec<Scalar>> = Vec::new();
    let mut items: Vec<BimodItem> = Vec::new();
    for (&(rv, deg), block) in &blocks {
        let mut span = Matrix::zeros(0, dim_e);
        for (v, proj) in idem.iter().enumerate() {
            for &b in block {
                let cand: Vec<Scalar> = (0..dim_e).map(|r| proj[(r, b)].clone()).collect();
                let red = span.reduce_mod_rowspace(&cand);
                if red.iter().any(|c| !c.is_zero()) {
                    cols.push(cand);
                    items.push(BimodItem {
                        left_vertex: v,
                        right_vertex: rv,
                        degree: deg,
                    });
                    span.push_row(red);
                    span = span.row_space();
                }
            }
        }
        if span.rows() != block.len() {
            return Err(Error::Inconsistent(
                "left idempotents fail to split an Ext block".into(),
            ));
        }
    }
    let mut cmat = Matrix::zeros(dim_e, dim_e);
    for (j, col) in cols.iter().enumerate() {
        for r in 0..dim_e {
            cmat[(r, j)] = col[r].clone();
        }
    }
    let cinv = cmat
        .inverse()
        .ok_or_else(|| Error::Inconsistent("purified basis is singular".into()))?;
    let conj = |m: &Matrix| cinv.mul(&m.mul(&cmat));
    Ok(Bimodule {
        items,
        left: left_raw.iter().map(conj).collect(),
        right: right_raw.iter().map(conj).collect(),
    })
}

/// b1 tensored with b2 over the algebra, truncated to internal degrees at
/// most `cap`: pairs with matching middle vertex modulo
/// x.a (x) y - x (x) a.y per arrow a.
pub fn tensor_bimodules(p: &Presentation, b1: &Bimodule, b2: &Bimodule, cap: i64) -> Bimodule {
    let q = p.quiver();
    let na = q.arrow_count();
    let mut pre: Vec<(usize, usize)> = Vec::new();
    for (i, x) in b1.items.iter().enumerate() {
        for (j, y) in b2.items.iter().enumerate() {
            if x.right_vertex == y.left_vertex && x.degree + y.degree <= cap {
                pre.push((i, j));
            }
        }
    }
    let pos: HashMap<(usize, usize), usize> = pre
        .iter()
        .enumerate()
        .map(|(t, &xy)| (xy, t))
        .collect();
    let mut rows = Vec::new();
    for a in 0..na {
        let (s, t) = (q.arrow(a).source, q.arrow(a).target);
        let w = p.arrow_weight(a)[0];
        for (i, x) in b1.items.iter().enumerate() {
            if x.right_vertex != s {
                continue;
            }
            for (j, y) in b2.items.iter().enumerate() {
                if y.left_vertex != t || x.degree + w + y.degree > cap {
                    continue;
                }
                let mut row = vec![linalg::zero(); pre.len()];
                let mut nonzero = false;
                for i2 in 0..b1.dim() {
                    let c = &b1.right[a][(i2, i)];
                    if !c.is_zero() {
                        row[pos[&(i2, j)]] += c;
                        nonzero = true;
                    }
                }
                for j2 in 0..b2.dim() {
                    let c = &b2.left[a][(j2, j)];
                    if !c.is_zero() {
                        row[pos[&(i, j2)]] -= c;
                        nonzero = true;
                    }
                }
                if nonzero {
                    rows.push(row);
                }
            }
        }
    }
    let u = Matrix::from_rows(rows, pre.len()).row_space();
    let free = free_columns(&u, pre.len());
    let items: Vec<BimodItem> = free
        .iter()
        .map(|&f| {
            let (i, j) = pre[f];
            BimodItem {
                left_vertex: b1.items[i].left_vertex,
                right_vertex: b2.items[j].right_vertex,
                degree: b1.items[i].degree + b2.items[j].degree,
            }
        })
        .collect();
    let mut left = Vec::with_capacity(na);
    let mut right = Vec::with_capacity(na);
    for a in 0..na {
        let mut lm = Matrix::zeros(free.len(), free.len());
        let mut rm = Matrix::zeros(free.len(), free.len());
        for (cj, &f) in free.iter().enumerate() {
            let (i, j) = pre[f];
            // a . (x (x) y) = (a.x) (x) y
            let mut col = vec![linalg::zero(); pre.len()];
            for i2 in 0..b1.dim() {
                let c = &b1.left[a][(i2, i)];
                if !c.is_zero() {
                    if let Some(&t) = pos.get(&(i2, j)) {
                        col[t] += c;
                    }
                }
            }
            for (r, c) in quotient_coords(&u, &free, &col).into_iter().enumerate() {
                if !c.is_zero() {
                    lm[(r, cj)] = c;
                }
            }
            // (x (x) y) . a = x (x) (y.a)
            let mut col = vec![linalg::zero(); pre.len()];
            for j2 in 0..b2.dim() {
                let c = &b2.right[a][(j2, j)];
                if !c.is_zero() {
                    if let Some(&t) = pos.get(&(i, j2)) {
                        col[t] += c;
                    }
                }
            }
            for (r, c) in quotient_coords(&u, &free, &col).into_iter().enumerate() {
                if !c.is_zero() {
                    rm[(r, cj)] = c;
                }
            }
        }
        left.push(lm);
        right.push(rm);
    }
    Bimodule { items, left, right }
}

/// k-fold tensor power of `e` over the algebra, truncated to internal
/// degrees at most `cap`. Intermediate stages are truncated high enough
/// that no contribution to the requested range is lost.
pub fn tensor_power(p: &Presentation, e: &Bimodule, k: usize, cap: i64) -> Bimodule {
    assert!(k >= 1, "tensor power needs k >= 1");
    if e.dim() == 0 {
        return Bimodule::empty(p.quiver().arrow_count());
    }
    let min_deg = e.min_degree().unwrap().min(0);
    // every remaining factor contributes at least min_deg
    let stage_cap = |j: usize| cap - (k - j) as i64 * min_deg;
    let mut acc = e.truncate(stage_cap(1));
    for j in 2..=k {
        acc = tensor_bimodules(p, &acc, e, stage_cap(j));
    }
    acc
}

fn new_arrow_name(
    q: &Quiver,
    kn: &KoszulComplexTerm,
    row: usize,
    taken: &mut HashSet<String>,
    counter: &mut usize,
) -> String {
    // a basis vector that is a single arrow doubles that arrow
    let nz: Vec<usize> = (0..kn.paths.len())
        .filter(|&c| !kn.basis[(row, c)].is_zero())
        .collect();
    if nz.len() == 1 && kn.paths[nz[0]].len() == 1 {
        let cand = format!("{}*", q.arrow(kn.paths[nz[0]].arrows[0]).name);
        if taken.insert(cand.clone()) {
            return cand;
        }
    }
    loop {
        let cand = format!("nu{}", *counter);
        *counter += 1;
        if taken.insert(cand.clone()) {
            return cand;
        }
    }
}

/// The (n+1)-preprojective algebra of a Koszul algebra of global dimension
/// n, as a rank-2 presentation. Original arrows get weight (1, 0); one new
/// arrow of weight (1, 1) runs j -> i per basis vector of e_i K_n e_j; the
/// weight-(2, 1) relations are the kernel of multiplication into the Ext
/// bimodule. The bigraded Hilbert table is verified against direct tensor
/// powers of the Ext bimodule for all total degrees up to `bound` (which
/// also serves as the finiteness degree cap); any mismatch is an error,
/// never a silent acceptance.
pub fn higher_preprojective_presentation(
    p: &Presentation,
    n: usize,
    bound: i64,
) -> Result<Presentation> {
    assert!(n >= 1, "higher preprojective needs n >= 1");
    require_quadratic(p)?;
    let gd = koszul::global_dimension(p, n, bound)?;
    if gd != n {
        return Err(Error::Unsupported(format!(
            "global dimension is {gd}, expected {n}"
        )));
    }
    let top = p.top_degree_within(bound)?.expect("finiteness already certified");
    let kv = koszul::koszul_verdict(p, n, top.max(1) * (n as i64 + 2))?;
    if !kv.linear {
        return Err(Error::Unsupported(format!(
            "minimal resolution is not linear at (step, degree) = {:?}",
            kv.failure
        )));
    }
    let kn = koszul_complex_term(p, n)?;
    let e = ext_bimodule(p, n, bound)?;
    let bot = -(n as i64);
    if e.min_degree().is_some_and(|md| md < bot) {
        return Err(Error::Inconsistent(
            "Ext bimodule reaches below its expected bottom degree".into(),
        ));
    }
    let q = p.quiver();
    let nv = q.vertex_count();
    // K_n basis rows grouped by (source, target); echelon rows are pure
    let mut kblocks: Vec<Vec<Vec<usize>>> = vec![vec![Vec::new(); nv]; nv];
    for r in 0..kn.basis.rows() {
        let lead = kn.basis.row(r).iter().position(|c| !c.is_zero()).unwrap();
        let pth = &kn.paths[lead];
        kblocks[pth.source][pth.target].push(r);
    }
    // new arrows: one per K_n basis vector, reversed orientation, paired
    // with a basis item of the bottom slice of the Ext bimodule
    let mut arrow_specs: Vec<(String, String, String)> = q
        .arrows()
        .iter()
        .map(|a| {
            (
                a.name.clone(),
                q.vertex_name(a.source).to_string(),
                q.vertex_name(a.target).to_string(),
            )
        })
        .collect();
    let mut taken: HashSet<String> = arrow_specs.iter().map(|(nm, _, _)| nm.clone()).collect();
    let mut counter = 0usize;
    let mut new_arrows: Vec<(String, usize)> = Vec::new();
    for (i, row) in kblocks.iter().enumerate() {
        for (j, krows) in row.iter().enumerate() {
            let slice = e.slice(j, i, bot);
            if krows.len() != slice.len() {
                return Err(Error::Inconsistent(format!(
                    "K_n block {} -> {} has dimension {}, Ext bottom slice has {}",
                    q.vertex_name(i),
                    q.vertex_name(j),
                    krows.len(),
                    slice.len()
                )));
            }
            for (t, &r) in krows.iter().enumerate() {
                let name = new_arrow_name(q, &kn, r, &mut taken, &mut counter);
                arrow_specs.push((
                    name.clone(),
                    q.vertex_name(j).to_string(),
                    q.vertex_name(i).to_string(),
                ));
                new_arrows.push((name, slice[t]));
            }
        }
    }
    let nq = Quiver::new(q.vertex_names().to_vec(), arrow_specs)?;
    // nq shares q's vertex name list, so vertex indices coincide
    let mut weights = vec![vec![1, 0]; nq.arrow_count()];
    for (name, _) in &new_arrows {
        weights[nq.arrow_index(name).unwrap()] = vec![1, 1];
    }
    let reindex: Vec<usize> = (0..q.arrow_count())
        .map(|a| nq.arrow_index(&q.arrow(a).name).unwrap())
        .collect();
    let mut relations: Vec<Element> = Vec::new();
    for rel in p.relations() {
        let mut out = Element::zero();
        for (pth, c) in rel.terms() {
            let arrows: Vec<usize> = pth.arrows.iter().map(|&a| reindex[a]).collect();
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
    // mixed weight-(2, 1) relations: kernel of the multiplication of mixed
    // length-2 paths into the Ext bimodule
    let mut cols: Vec<(Path, Vec<Scalar>)> = Vec::new();
    for (name, t) in &new_arrows {
        let kpath = Path::of_arrow(&nq, nq.arrow_index(name).unwrap());
        for a in 0..q.arrow_count() {
            let ar = q.arrow(a);
            if ar.target == kpath.source {
                let pth = Path::of_arrow(&nq, reindex[a]).compose(&kpath).unwrap();
                let col: Vec<Scalar> = (0..e.dim()).map(|r| e.left[a][(r, *t)].clone()).collect();
                cols.push((pth, col));
            }
            if ar.source == kpath.target {
                let pth = kpath.compose(&Path::of_arrow(&nq, reindex[a])).unwrap();
                let col: Vec<Scalar> = (0..e.dim()).map(|r| e.right[a][(r, *t)].clone()).collect();
                cols.push((pth, col));
            }
        }
    }
    let mut mu = Matrix::zeros(e.dim(), cols.len());
    for (cj, (_, col)) in cols.iter().enumerate() {
        for (r, c) in col.iter().enumerate() {
            if !c.is_zero() {
                mu[(r, cj)] = c.clone();
            }
        }
    }
    let ker = mu.kernel_basis();
    for r in 0..ker.rows() {
        let mut rel = Element::zero();
        for (cj, c) in ker.row(r).iter().enumerate() {
            if !c.is_zero() {
                rel.add_term(c.clone(), cols[cj].0.clone());
            }
        }
        relations.push(rel);
    }
    let pi = Presentation::new(nq, relations, weights)?;
    // cross-check the bigraded dimensions against direct tensor powers
    let mut powers: Vec<Option<Bimodule>> = vec![None; bound.max(0) as usize + 1];
    for m in 0..=bound {
        for idx in 0..=m {
            let got = pi.dim_at(&vec![m, idx])?;
            let expect = if idx == 0 {
                p.dim_at(&vec![m])?
            } else {
                let i = idx as usize;
                let d = m - (n as i64 + 1) * idx;
                if d < bot * idx {
                    0
                } else {
                    let cap = bound - (n as i64 + 1) * idx;
                    let tp = powers[i].get_or_insert_with(|| tensor_power(p, &e, i, cap));
                    tp.dim_at(d)
                }
            };
            if got != expect {
                return Err(Error::Inconsistent(format!(
                    "bidegree ({m}, {idx}): presentation gives {got}, tensor power gives {expect}"
                )));
            }
        }
    }
    Ok(pi)
}
