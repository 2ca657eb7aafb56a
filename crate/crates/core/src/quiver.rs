//! Quivers, paths, and free path-algebra arithmetic.
//!
//! Composition is read left to right: `p.q` is defined iff
//! `target(p) = source(q)`. Every module in the crate follows this single
//! convention.

use std::collections::BTreeMap;
use std::fmt;

use crate::error::{Error, Result};
use crate::linalg::Scalar;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Arrow {
    pub name: String,
    pub source: usize,
    pub target: usize,
}

/// A finite directed multigraph with named vertices and arrows.
///
/// Vertices and arrows are stored sorted by name, so index order coincides
/// with lexicographic name order everywhere downstream.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Quiver {
    vertices: Vec<String>,
    arrows: Vec<Arrow>,
}

impl Quiver {
    pub fn new(vertices: Vec<String>, arrows: Vec<(String, String, String)>) -> Result<Self> {
        let mut vertices = vertices;
        vertices.sort();
        for w in vertices.windows(2) {
            if w[0] == w[1] {
                return Err(Error::DuplicateName(format!("duplicate vertex `{}`", w[0])));
            }
        }
        let vidx = |name: &str| -> Result<usize> {
            vertices
                .binary_search_by(|v| v.as_str().cmp(name))
                .map_err(|_| Error::UnknownName(format!("unknown vertex `{name}`")))
        };
        let mut named: Vec<Arrow> = Vec::with_capacity(arrows.len());
        for (name, s, t) in arrows {
            named.push(Arrow {
                source: vidx(&s)?,
                target: vidx(&t)?,
                name,
            });
        }
        named.sort_by(|a, b| a.name.cmp(&b.name));
        for w in named.windows(2) {
            if w[0].name == w[1].name {
                return Err(Error::DuplicateName(format!(
                    "duplicate arrow `{}`",
                    w[0].name
                )));
            }
        }
        Ok(Quiver {
            vertices,
            arrows: named,
        })
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn arrow_count(&self) -> usize {
        self.arrows.len()
    }

    pub fn vertex_name(&self, v: usize) -> &str {
        &self.vertices[v]
    }

    pub fn vertex_names(&self) -> &[String] {
        &self.vertices
    }

    pub fn arrow(&self, a: usize) -> &Arrow {
        &self.arrows[a]
    }

    pub fn arrows(&self) -> &[Arrow] {
        &self.arrows
    }

    pub fn vertex_index(&self, name: &str) -> Option<usize> {
        self.vertices
            .binary_search_by(|v| v.as_str().cmp(name))
            .ok()
    }

    pub fn arrow_index(&self, name: &str) -> Option<usize> {
        self.arrows
            .binary_search_by(|a| a.name.as_str().cmp(name))
            .ok()
    }

    /// All length-`d` paths from `i` to `j`, lexicographically ordered by
    /// arrow-name sequence.
    pub fn paths_between(&self, i: usize, j: usize, d: usize) -> Vec<Path> {
        let mut out = Vec::new();
        // Depth-first over arrows in index (= name) order yields lex order.
        let mut current = Path::lazy(i);
        self.paths_rec(&mut current, j, d, &mut out);
        out
    }

    fn paths_rec(&self, current: &mut Path, j: usize, remaining: usize, out: &mut Vec<Path>) {
        if remaining == 0 {
            if current.target == j {
                out.push(current.clone());
            }
            return;
        }
        for (idx, a) in self.arrows.iter().enumerate() {
            if a.source == current.target {
                current.arrows.push(idx);
                let old_target = current.target;
                current.target = a.target;
                self.paths_rec(current, j, remaining - 1, out);
                current.arrows.pop();
                current.target = old_target;
            }
        }
    }

    /// All length-`d` paths, any endpoints, lexicographically ordered by
    /// arrow-name sequence (lazy paths ordered by vertex name).
    pub fn all_paths(&self, d: usize) -> Vec<Path> {
        let mut out = Vec::new();
        for s in 0..self.vertex_count() {
            for t in 0..self.vertex_count() {
                out.extend(self.paths_between(s, t, d));
            }
        }
        out.sort();
        out
    }
}

/// A path in a quiver: possibly empty (the lazy path `e_v`).
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Path {
    pub source: usize,
    pub target: usize,
    pub arrows: Vec<usize>,
}

impl Path {
    pub fn lazy(v: usize) -> Self {
        Path {
            source: v,
            target: v,
            arrows: Vec::new(),
        }
    }

    pub fn of_arrow(q: &Quiver, a: usize) -> Self {
        let arrow = q.arrow(a);
        Path {
            source: arrow.source,
            target: arrow.target,
            arrows: vec![a],
        }
    }

    pub fn len(&self) -> usize {
        self.arrows.len()
    }

    pub fn is_lazy(&self) -> bool {
        self.arrows.is_empty()
    }

    /// Concatenation, when targets and sources match.
    pub fn compose(&self, other: &Path) -> Option<Path> {
        if self.target != other.source {
            return None;
        }
        let mut arrows = self.arrows.clone();
        arrows.extend_from_slice(&other.arrows);
        Some(Path {
            source: self.source,
            target: other.target,
            arrows,
        })
    }

    pub fn display<'a>(&'a self, q: &'a Quiver) -> PathDisplay<'a> {
        PathDisplay { path: self, q }
    }
}

// Arrow indices are name-sorted, so index-sequence order is name-lex order.
// Lazy paths compare below all proper paths, ordered by source vertex.
impl Ord for Path {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.arrows
            .cmp(&other.arrows)
            .then(self.source.cmp(&other.source))
    }
}

impl PartialOrd for Path {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

pub struct PathDisplay<'a> {
    path: &'a Path,
    q: &'a Quiver,
}

impl fmt::Display for PathDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.path.is_lazy() {
            write!(f, "{}", self.q.vertex_name(self.path.source))
        } else {
            let names: Vec<&str> = self
                .path
                .arrows
                .iter()
                .map(|&a| self.q.arrow(a).name.as_str())
                .collect();
            write!(f, "{}", names.join("."))
        }
    }
}

/// A finite formal sum of (rational coefficient, path) pairs. Zero
/// coefficients are never stored.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Element {
    terms: BTreeMap<Path, Scalar>,
}

impl Element {
    pub fn zero() -> Self {
        Element::default()
    }

    pub fn from_path(p: Path) -> Self {
        Element::term(crate::linalg::one(), p)
    }

    pub fn term(coeff: Scalar, p: Path) -> Self {
        let mut e = Element::zero();
        e.add_term(coeff, p);
        e
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Path, &Scalar)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn add_term(&mut self, coeff: Scalar, p: Path) {
        use num::Zero;
        if coeff.is_zero() {
            return;
        }
        let entry = self.terms.entry(p).or_insert_with(crate::linalg::zero);
        *entry += coeff;
        // prune
        let prune: Vec<Path> = self
            .terms
            .iter()
            .filter(|(_, c)| c.is_zero())
            .map(|(p, _)| p.clone())
            .collect();
        for p in prune {
            self.terms.remove(&p);
        }
    }

    pub fn add(&self, other: &Element) -> Element {
        let mut out = self.clone();
        for (p, c) in other.terms() {
            out.add_term(c.clone(), p.clone());
        }
        out
    }

    pub fn sub(&self, other: &Element) -> Element {
        self.add(&other.scale(&-crate::linalg::one()))
    }

    pub fn scale(&self, c: &Scalar) -> Element {
        use num::Zero;
        if c.is_zero() {
            return Element::zero();
        }
        Element {
            terms: self
                .terms
                .iter()
                .map(|(p, x)| (p.clone(), x * c))
                .collect(),
        }
    }

    /// Bilinear extension of path concatenation; non-composable
    /// concatenations contribute zero.
    pub fn multiply(&self, other: &Element) -> Element {
        let mut out = Element::zero();
        for (p, a) in self.terms() {
            for (q, b) in other.terms() {
                if let Some(pq) = p.compose(q) {
                    out.add_term(a * b, pq);
                }
            }
        }
        out
    }

    /// The unit of the path algebra: the sum of all lazy paths.
    pub fn unit(q: &Quiver) -> Element {
        let mut e = Element::zero();
        for v in 0..q.vertex_count() {
            e.add_term(crate::linalg::one(), Path::lazy(v));
        }
        e
    }

    pub fn display<'a>(&'a self, q: &'a Quiver) -> ElementDisplay<'a> {
        ElementDisplay { el: self, q }
    }
}

pub struct ElementDisplay<'a> {
    el: &'a Element,
    q: &'a Quiver,
}

impl fmt::Display for ElementDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        use num::{One, Signed};
        if self.el.is_zero() {
            return write!(f, "0");
        }
        for (i, (p, c)) in self.el.terms().enumerate() {
            let neg = c.is_negative();
            let abs = c.abs();
            if i == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else if neg {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            if !abs.is_one() {
                write!(f, "{abs}*")?;
            }
            write!(f, "{}", p.display(self.q))?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{from_i64, one};

    pub fn kronecker() -> Quiver {
        Quiver::new(
            vec!["e".into(), "f".into()],
            vec![
                ("a".into(), "e".into(), "f".into()),
                ("b".into(), "e".into(), "f".into()),
            ],
        )
        .unwrap()
    }

    fn doubled_kronecker() -> Quiver {
        Quiver::new(
            vec!["e".into(), "f".into()],
            vec![
                ("a".into(), "e".into(), "f".into()),
                ("b".into(), "e".into(), "f".into()),
                ("a*".into(), "f".into(), "e".into()),
                ("b*".into(), "f".into(), "e".into()),
            ],
        )
        .unwrap()
    }

    #[test]
    fn kronecker_shape() {
        let q = kronecker();
        assert_eq!(q.vertex_count(), 2);
        assert_eq!(q.arrow_count(), 2);
    }

    #[test]
    fn duplicate_arrow_rejected() {
        let r = Quiver::new(
            vec!["e".into(), "f".into()],
            vec![
                ("a".into(), "e".into(), "f".into()),
                ("a".into(), "f".into(), "e".into()),
            ],
        );
        assert!(matches!(r, Err(Error::DuplicateName(_))));
    }

    #[test]
    fn unknown_endpoint_rejected() {
        let r = Quiver::new(
            vec!["e".into()],
            vec![("a".into(), "e".into(), "g".into())],
        );
        assert!(matches!(r, Err(Error::UnknownName(_))));
    }

    #[test]
    fn paths_kronecker_degree_one() {
        let q = kronecker();
        let (e, f) = (q.vertex_index("e").unwrap(), q.vertex_index("f").unwrap());
        let paths = q.paths_between(e, f, 1);
        let names: Vec<String> = paths.iter().map(|p| p.display(&q).to_string()).collect();
        assert_eq!(names, vec!["a", "b"]);
    }

    #[test]
    fn paths_doubled_kronecker_degree_two() {
        let q = doubled_kronecker();
        let e = q.vertex_index("e").unwrap();
        let paths = q.paths_between(e, e, 2);
        let names: Vec<String> = paths.iter().map(|p| p.display(&q).to_string()).collect();
        assert_eq!(names, vec!["a.a*", "a.b*", "b.a*", "b.b*"]);
    }

    #[test]
    fn lazy_path_degree_zero() {
        let q = kronecker();
        let e = q.vertex_index("e").unwrap();
        let paths = q.paths_between(e, e, 0);
        assert_eq!(paths, vec![Path::lazy(e)]);
    }

    #[test]
    fn lazy_path_is_identity() {
        let q = kronecker();
        let e = q.vertex_index("e").unwrap();
        let a = Element::from_path(Path::of_arrow(&q, q.arrow_index("a").unwrap()));
        let ee = Element::from_path(Path::lazy(e));
        assert_eq!(ee.multiply(&a), a);
    }

    #[test]
    fn non_composable_is_zero() {
        let q = kronecker();
        let a = Element::from_path(Path::of_arrow(&q, q.arrow_index("a").unwrap()));
        assert!(a.multiply(&a).is_zero());
    }

    #[test]
    fn bilinearity() {
        let q = doubled_kronecker();
        let el = |n: &str| Element::from_path(Path::of_arrow(&q, q.arrow_index(n).unwrap()));
        let (a, b, astar) = (el("a"), el("b"), el("a*"));
        let lhs = a.add(&b).multiply(&astar);
        let rhs = a.multiply(&astar).add(&b.multiply(&astar));
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn unit_is_two_sided() {
        let q = doubled_kronecker();
        let u = Element::unit(&q);
        let mut x = Element::from_path(Path::of_arrow(&q, 0));
        x.add_term(from_i64(3), Path::lazy(0));
        let astar = q.arrow_index("a*").unwrap();
        let a = q.arrow_index("a").unwrap();
        x.add_term(
            one(),
            Path::of_arrow(&q, astar).compose(&Path::of_arrow(&q, a)).unwrap(),
        );
        assert_eq!(u.multiply(&x), x);
        assert_eq!(x.multiply(&u), x);
    }
}
