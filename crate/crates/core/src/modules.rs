//! Finite-dimensional graded left modules over a graded quotient algebra:
//! the dual D(A) of the algebra, free covers and free resolutions with
//! element-matrix differentials, and chain-map lifts of module
//! endomorphisms. This is the machinery behind the Ext-bimodule
//! construction.
//!
//! All gradings here are rank 1 and the algebra is required to be finite
//! dimensional, so every computation is plain linear algebra on the full
//! (all-degree) basis at once.

use std::collections::HashMap;

use num::Zero;

use crate::error::{Error, Result};
use crate::koszul::Generator;
use crate::linalg::{self, Matrix, Scalar};
use crate::presentation::Presentation;
use crate::quiver::{Element, Path};

/// A graded left module with a labeled basis: item i satisfies
/// e_{vertex(i)} · item = item and sits in the given internal degree.
/// `act[a]` sends the coordinate vector of x to that of (arrow a) · x.
#[derive(Debug, Clone)]
pub struct LeftModule {
    pub items: Vec<(usize, i64)>,
    pub act: Vec<Matrix>,
}

impl LeftModule {
    pub fn dim(&self) -> usize {
        self.items.len()
    }

    /// Action of a path: (a_1 ... a_k) · x = a_1 · (a_2 · ... (a_k · x)).
    pub fn path_action(&self, path: &Path) -> Matrix {
        let mut m = Matrix::identity(self.dim());
        for &a in path.arrows.iter().rev() {
            m = self.act[a].mul(&m);
        }
        m
    }

    /// Action of an algebra element given by paths.
    pub fn element_action(&self, e: &Element) -> Matrix {
        let mut out = Matrix::zeros(self.dim(), self.dim());
        for (path, c) in e.terms() {
            let pm = if path.is_lazy() {
                // lazy path acts as the idempotent at its vertex
                let mut m = Matrix::zeros(self.dim(), self.dim());
                for (i, (v, _)) in self.items.iter().enumerate() {
                    if *v == path.source {
                        m[(i, i)] = linalg::one();
                    }
                }
                m
            } else {
                self.path_action(path)
            };
            for i in 0..self.dim() {
                for j in 0..self.dim() {
                    if !pm[(i, j)].is_zero() {
                        let t = &pm[(i, j)] * c;
                        out[(i, j)] += t;
                    }
                }
            }
        }
        out
    }
}

/// The full basis of a finite-dimensional algebra, degree by degree.
pub struct AlgebraBasis {
    pub top: i64,
    pub paths: Vec<Path>,
    pub pos: HashMap<Path, usize>,
}

pub fn algebra_basis(p: &Presentation, degree_cap: i64) -> Result<AlgebraBasis> {
    let top = p.top_degree_within(degree_cap)?.ok_or_else(|| {
        Error::NotFiniteDimensional {
            bound: degree_cap,
            msg: "no vanishing window found within the degree cap".into(),
        }
    })?;
    let mut paths = Vec::new();
    for d in 0..=top {
        paths.extend(p.degree_basis(&vec![d])?.basis.iter().cloned());
    }
    let pos = paths
        .iter()
        .cloned()
        .enumerate()
        .map(|(i, x)| (x, i))
        .collect();
    Ok(AlgebraBasis { top, paths, pos })
}

/// D(A) = Hom_k(A, k) as a graded left module: the dual basis vector of a
/// path p has vertex target(p) and degree -deg(p), and an arrow acts by
/// (a · p∨)(x) = p∨(x · a).
pub fn dual_module(p: &Presentation, basis: &AlgebraBasis) -> Result<LeftModule> {
    let dim = basis.paths.len();
    let items: Vec<(usize, i64)> = basis
        .paths
        .iter()
        .map(|q| (q.target, -p.path_weight(q)[0]))
        .collect();
    let mut act = Vec::with_capacity(p.quiver().arrow_count());
    for a in 0..p.quiver().arrow_count() {
        let arrow = Element::from_path(Path::of_arrow(p.quiver(), a));
        let mut m = Matrix::zeros(dim, dim);
        // a · q∨ = Σ_r <coeff of r in nf(q · a)> · (matrix column at q)
        for (qi, q) in basis.paths.iter().enumerate() {
            let prod = p.normal_form(&Element::from_path(q.clone()).multiply(&arrow))?;
            for (r, c) in prod.terms() {
                // contributes c to the q∨-coefficient of a · r∨
                let ri = basis.pos[r];
                m[(qi, ri)] = c.clone();
            }
        }
        act.push(m);
    }
    Ok(LeftModule { items, act })
}

/// The free left module ⊕_k A e_{v_k}⟨d_k⟩ with basis (generator slot,
/// basis path ending at that slot's vertex), as a labeled LeftModule plus
/// the slot/path index.
pub struct FreeModule {
    pub gens: Vec<Generator>,
    pub module: LeftModule,
    pub slots: Vec<(usize, Path)>,
    pub pos: HashMap<(usize, Path), usize>,
}

pub fn free_module(p: &Presentation, basis: &AlgebraBasis, gens: &[Generator]) -> Result<FreeModule> {
    let mut slots = Vec::new();
    for (k, g) in gens.iter().enumerate() {
        for path in &basis.paths {
            if path.target == g.vertex {
                slots.push((k, path.clone()));
            }
        }
    }
    let pos: HashMap<(usize, Path), usize> = slots
        .iter()
        .enumerate()
        .map(|(i, s)| (s.clone(), i))
        .collect();
    let items: Vec<(usize, i64)> = slots
        .iter()
        .map(|(k, path)| (path.source, p.path_weight(path)[0] + gens[*k].degree))
        .collect();
    let dim = slots.len();
    let mut act = Vec::with_capacity(p.quiver().arrow_count());
    for a in 0..p.quiver().arrow_count() {
        let arrow = Element::from_path(Path::of_arrow(p.quiver(), a));
        let mut m = Matrix::zeros(dim, dim);
        for (j, (k, path)) in slots.iter().enumerate() {
            let prod = p.normal_form(&arrow.multiply(&Element::from_path(path.clone())))?;
            for (q, c) in prod.terms() {
                m[(pos[&(*k, q.clone())], j)] = c.clone();
            }
        }
        act.push(m);
    }
    Ok(FreeModule {
        gens: gens.to_vec(),
        module: LeftModule { items, act },
        slots,
        pos,
    })
}

impl FreeModule {
    /// Coordinates of a module element given as one algebra element per
    /// generator slot.
    pub fn coords(&self, p: &Presentation, comps: &[Element]) -> Result<Vec<Scalar>> {
        let mut out = vec![linalg::zero(); self.slots.len()];
        for (k, comp) in comps.iter().enumerate() {
            let nf = p.normal_form(comp)?;
            for (path, c) in nf.terms() {
                let i = *self
                    .pos
                    .get(&(k, path.clone()))
                    .ok_or_else(|| Error::Inconsistent("free-module coordinate missing".into()))?;
                out[i] += c;
            }
        }
        Ok(out)
    }

    /// Convert a coordinate vector back to per-slot algebra elements.
    pub fn components(&self, v: &[Scalar]) -> Vec<Element> {
        let mut comps = vec![Element::zero(); self.gens.len()];
        for (i, c) in v.iter().enumerate() {
            if !c.is_zero() {
                let (k, path) = &self.slots[i];
                comps[*k].add_term(c.clone(), path.clone());
            }
        }
        comps
    }

    /// Matrix of the module map sending slot generator k to the vector
    /// `targets[k]` in `cod` coordinates (columns over this module's basis).
    pub fn map_matrix_to(&self, cod: &LeftModule, targets: &[Vec<Scalar>]) -> Matrix {
        let mut m = Matrix::zeros(cod.dim(), self.module.dim());
        for (j, (k, path)) in self.slots.iter().enumerate() {
            let col = cod.path_action(path).mul_vec(&targets[*k]);
            for (r, c) in col.into_iter().enumerate() {
                if !c.is_zero() {
                    m[(r, j)] = c;
                }
            }
        }
        m
    }
}

/// Minimal generators of the submodule of `m` spanned (and closed under the
/// action) by the given vectors: a basis of the submodule modulo its
/// radical, as honest vectors.
pub fn minimal_generators(m: &LeftModule, vectors: &[Vec<Scalar>]) -> Vec<Vec<Scalar>> {
    if vectors.is_empty() {
        return Vec::new();
    }
    let cols = m.dim();
    // close under the arrow action
    let mut sub = Matrix::from_rows(vectors.to_vec(), cols).row_space();
    loop {
        let mut grown = sub.clone();
        for a in &m.act {
            for r in 0..sub.rows() {
                grown.push_row(a.mul_vec(sub.row(r)));
            }
        }
        let grown = grown.row_space();
        if grown.rows() == sub.rows() {
            break;
        }
        sub = grown;
    }
    // radical of the submodule
    let mut rad_rows = Vec::new();
    for a in &m.act {
        for r in 0..sub.rows() {
            rad_rows.push(a.mul_vec(sub.row(r)));
        }
    }
    let mut span = Matrix::from_rows(rad_rows, cols).row_space();
    // prefer low-degree representatives so generator degrees are minimal
    let mut rows: Vec<Vec<Scalar>> = sub.row_vecs();
    rows.sort_by_key(|v| vector_degree(m, v));
    let mut gens = Vec::new();
    for v in rows {
        let red = span.reduce_mod_rowspace(&v);
        if red.iter().any(|c| !c.is_zero()) {
            gens.push(red.clone());
            span.push_row(red);
            span = span.row_space();
        }
    }
    gens
}

/// Degree of a (degree-pure) vector; i64::MIN for zero.
pub fn vector_degree(m: &LeftModule, v: &[Scalar]) -> i64 {
    v.iter()
        .position(|c| !c.is_zero())
        .map(|i| m.items[i].1)
        .unwrap_or(i64::MIN)
}

fn vector_vertex(m: &LeftModule, v: &[Scalar]) -> usize {
    let i = v.iter().position(|c| !c.is_zero()).expect("nonzero vector");
    m.items[i].0
}

/// A finite free resolution F_n -> ... -> F_0 -> M of a finite-dimensional
/// module.
pub struct FreeResolution {
    pub steps: Vec<FreeModule>,
    /// maps[0]: generator targets of the cover F_0 -> M, as vectors in M.
    pub cover: Vec<Vec<Scalar>>,
    /// maps[i] for i >= 1: rows per generator of F_i, components over the
    /// generators of F_{i-1}.
    pub maps: Vec<Vec<Vec<Element>>>,
}

/// Minimal free resolution of `m`, of length at most `max_steps`. Errors if
/// the resolution has not terminated by then.
pub fn resolve(
    p: &Presentation,
    basis: &AlgebraBasis,
    m: &LeftModule,
    max_steps: usize,
) -> Result<FreeResolution> {
    let full: Vec<Vec<Scalar>> = Matrix::identity(m.dim()).row_vecs();
    let cover_vecs = minimal_generators(m, &full);
    let gens0: Vec<Generator> = cover_vecs
        .iter()
        .map(|v| Generator {
            vertex: vector_vertex(m, v),
            degree: vector_degree(m, v),
        })
        .collect();
    let f0 = free_module(p, basis, &gens0)?;
    let mut steps = vec![f0];
    let mut maps: Vec<Vec<Vec<Element>>> = Vec::new();
    let mut current = steps[0].map_matrix_to(m, &cover_vecs);
    for _step in 1..=max_steps + 1 {
        let kernel = current.kernel_basis();
        if kernel.rows() == 0 {
            return Ok(FreeResolution {
                steps,
                cover: cover_vecs,
                maps,
            });
        }
        if _step == max_steps + 1 {
            break;
        }
        let prev = steps.last().unwrap();
        let gen_vecs = minimal_generators(&prev.module, &kernel.row_vecs());
        let gens: Vec<Generator> = gen_vecs
            .iter()
            .map(|v| Generator {
                vertex: vector_vertex(&prev.module, v),
                degree: vector_degree(&prev.module, v),
            })
            .collect();
        let fi = free_module(p, basis, &gens)?;
        let map_rows: Vec<Vec<Element>> = gen_vecs.iter().map(|v| prev.components(v)).collect();
        current = fi.map_matrix_to(&prev.module, &gen_vecs);
        steps.push(fi);
        maps.push(map_rows);
    }
    Err(Error::GlobalDimensionExceeded {
        n: max_steps,
        msg: "free resolution did not terminate within the step limit".into(),
    })
}

/// Lift a module endomorphism `rho` of M (for example right multiplication
/// by an algebra element, which is a left-module map) to a chain map of the
/// resolution. Returns, per step, the image vector of each generator in
/// that step's own coordinates.
pub fn lift_chain_map(res: &FreeResolution, m: &LeftModule, rho: &Matrix) -> Result<Vec<Vec<Vec<Scalar>>>> {
    let mut lifts: Vec<Vec<Vec<Scalar>>> = Vec::new();
    // f_0: solve cover(y) = rho(cover(g)) within g's source block.
    let f0mat = res.steps[0].map_matrix_to(m, &res.cover);
    let mut f0 = Vec::new();
    for (k, g) in res.steps[0].gens.iter().enumerate() {
        let target = rho.mul_vec(&res.cover[k]);
        let y = solve_in_source_block(&f0mat, &res.steps[0].module, g.vertex, &target)?;
        f0.push(y);
    }
    lifts.push(f0);
    for i in 1..res.steps.len() {
        let prev_free = &res.steps[i - 1];
        let this = &res.steps[i];
        // matrix of d_i
        let gen_vecs: Vec<Vec<Scalar>> = res.maps[i - 1]
            .iter()
            .map(|comps| prev_free.coords_unchecked(comps))
            .collect();
        let dmat = this.map_matrix_to(&prev_free.module, &gen_vecs);
        // f_{i-1} as a full matrix on F_{i-1}
        let fprev = chain_matrix(prev_free, &lifts[i - 1]);
        let mut fi = Vec::new();
        for (k, g) in this.gens.iter().enumerate() {
            let target = fprev.mul_vec(dmat_column_of_gen(&dmat, this, k).as_slice());
            let y = solve_in_source_block(&dmat, &this.module, g.vertex, &target)?;
            fi.push(y);
        }
        lifts.push(fi);
    }
    Ok(lifts)
}

// column of d_i at the generator slot itself (the lazy-path item of gen k)
fn dmat_column_of_gen(dmat: &Matrix, f: &FreeModule, k: usize) -> Vec<Scalar> {
    let j = f.pos[&(k, Path::lazy(f.gens[k].vertex))];
    (0..dmat.rows()).map(|r| dmat[(r, j)].clone()).collect()
}

/// Full matrix of the module map determined by generator images.
pub fn chain_matrix(f: &FreeModule, gen_images: &[Vec<Scalar>]) -> Matrix {
    let mut m = Matrix::zeros(f.module.dim(), f.module.dim());
    for (j, (k, path)) in f.slots.iter().enumerate() {
        let col = f.module.path_action(path).mul_vec(&gen_images[*k]);
        for (r, c) in col.into_iter().enumerate() {
            if !c.is_zero() {
                m[(r, j)] = c;
            }
        }
    }
    m
}

impl FreeModule {
    fn coords_unchecked(&self, comps: &[Element]) -> Vec<Scalar> {
        let mut out = vec![linalg::zero(); self.slots.len()];
        for (k, comp) in comps.iter().enumerate() {
            for (path, c) in comp.terms() {
                if let Some(&i) = self.pos.get(&(k, path.clone())) {
                    out[i] += c;
                }
            }
        }
        out
    }
}

/// Solve mat · y = target restricting y to the coordinates whose item
/// vertex is `vertex` (images of a generator must stay in its own
/// idempotent block to define a module map).
fn solve_in_source_block(
    mat: &Matrix,
    dom: &LeftModule,
    vertex: usize,
    target: &[Scalar],
) -> Result<Vec<Scalar>> {
    let cols: Vec<usize> = (0..dom.dim()).filter(|&j| dom.items[j].0 == vertex).collect();
    let mut sub = Matrix::zeros(mat.rows(), cols.len());
    for (cj, &j) in cols.iter().enumerate() {
        for r in 0..mat.rows() {
            sub[(r, cj)] = mat[(r, j)].clone();
        }
    }
    let y = sub
        .solve(target)
        .ok_or_else(|| Error::Inconsistent("chain-map lift has no solution".into()))?;
    let mut full = vec![linalg::zero(); dom.dim()];
    for (cj, &j) in cols.iter().enumerate() {
        full[j] = y[cj].clone();
    }
    Ok(full)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::format::parse_presentation;

    const KQ_A2: &str = "\
vertices: v1 v2
arrow: a v1 v2
";

    const KQ_KRONECKER: &str = "\
vertices: e f
arrow: a e f
arrow: b e f
";

    fn pres(text: &str) -> Presentation {
        parse_presentation(text).unwrap()
    }

    #[test]
    fn dual_module_of_a2() {
        let p = pres(KQ_A2);
        let basis = algebra_basis(&p, 10).unwrap();
        assert_eq!(basis.top, 1);
        let d = dual_module(&p, &basis).unwrap();
        assert_eq!(d.dim(), 3);
        // a · a∨ = e1∨ and a kills the other duals
        let a = 0;
        let apos = basis.pos[&Path::of_arrow(p.quiver(), a)];
        let col: Vec<_> = (0..3).map(|r| d.act[a][(r, apos)].clone()).collect();
        let e1pos = basis.pos[&Path::lazy(0)];
        assert!(col[e1pos] == linalg::one());
        assert_eq!(col.iter().filter(|c| !c.is_zero()).count(), 1);
    }

    #[test]
    fn dual_module_resolution_of_a2() {
        // 0 -> P(1) -> P(2)^2-ish: D(A) for A = kA_2 has a length-1
        // projective resolution since gldim A = 1.
        let p = pres(KQ_A2);
        let basis = algebra_basis(&p, 10).unwrap();
        let d = dual_module(&p, &basis).unwrap();
        let res = resolve(&p, &basis, &d, 3).unwrap();
        assert!(res.steps.len() <= 2);
        let total_f0: usize = res.steps[0].module.dim();
        if res.steps.len() == 2 {
            assert_eq!(total_f0 - res.steps[1].module.dim(), d.dim());
        } else {
            assert_eq!(total_f0, d.dim());
        }
    }

    #[test]
    fn kronecker_dual_resolution_euler_characteristic() {
        let p = pres(KQ_KRONECKER);
        let basis = algebra_basis(&p, 10).unwrap();
        let d = dual_module(&p, &basis).unwrap();
        let res = resolve(&p, &basis, &d, 3).unwrap();
        let mut euler: i64 = 0;
        for (i, f) in res.steps.iter().enumerate() {
            let sign = if i % 2 == 0 { 1 } else { -1 };
            euler += sign * f.module.dim() as i64;
        }
        assert_eq!(euler, d.dim() as i64);
    }

    #[test]
    fn lifted_identity_is_identity_on_cover() {
        let p = pres(KQ_KRONECKER);
        let basis = algebra_basis(&p, 10).unwrap();
        let d = dual_module(&p, &basis).unwrap();
        let res = resolve(&p, &basis, &d, 3).unwrap();
        let rho = Matrix::identity(d.dim());
        let lifts = lift_chain_map(&res, &d, &rho).unwrap();
        // cover(f_0(g)) = cover(g)
        let f0mat = res.steps[0].map_matrix_to(&d, &res.cover);
        for (k, y) in lifts[0].iter().enumerate() {
            assert_eq!(f0mat.mul_vec(y), res.cover[k]);
        }
    }
}
