//! Delzant polytopes: the moment-map images of smooth compact toric Kähler manifolds.
//!
//! A polytope is given by its facets `{x : <normal_i, x> + offset_i >= 0}` with
//! primitive inward integer normals. Vertices are derived, never supplied, and
//! every vertex must carry a unimodular cone of edges.
//!
//! Besides validation, this module computes exact polynomial moments of the
//! polytope and of its boundary by pulling triangulations. Those integrals are
//! the independent oracle against which fixed-point sums are checked.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exact::{dot_int_rat, dot_rat, factorial, Rational};
use crate::linalg;

/// One inequality `<normal, x> + offset >= 0`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Facet {
    pub normal: Vec<i64>,
    pub offset: Rational,
}

impl Facet {
    pub fn new(normal: Vec<i64>, offset: impl Into<Rational>) -> Self {
        Facet { normal, offset: offset.into() }
    }

    pub fn eval(&self, x: &[Rational]) -> Rational {
        dot_int_rat(&self.normal, x) + &self.offset
    }
}

/// Wire form of a polytope, `{"dim": n, "facets": [{"normal": [...], "offset": "p/q"}]}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PolytopeSpec {
    pub dim: usize,
    pub facets: Vec<Facet>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
struct Vertex {
    point: Vec<Rational>,
    /// Indices of the `dim` facets through this vertex, ascending.
    facets: Vec<usize>,
}

/// A vertex together with its primitive inward edge directions.
///
/// Edge `k` leaves facet `leaves[k]` and stays on the other facets through the
/// vertex, so `<normal_{leaves[j]}, edges[k]> = δ_jk`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VertexFrame {
    pub vertex: Vec<Rational>,
    pub edges: Vec<Vec<i64>>,
    pub leaves: Vec<usize>,
}

impl VertexFrame {
    pub fn determinant(&self) -> Rational {
        let rows: Vec<Vec<i64>> = self.edges.clone();
        linalg::det(&linalg::from_int_rows(&rows))
    }
}

/// How a face is coned off when triangulating. Different choices give
/// different triangulations of the same polytope.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum Pulling {
    #[default]
    FirstVertex,
    LastVertex,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DelzantPolytope {
    dim: usize,
    facets: Vec<Facet>,
    vertices: Vec<Vertex>,
}

impl DelzantPolytope {
    /// Enumerates vertices from the facet system and verifies boundedness,
    /// simplicity and the Delzant condition at every vertex.
    pub fn new(dim: usize, facets: Vec<Facet>) -> Result<Self> {
        if dim == 0 {
            return Err(Error::DimensionMismatch { expected: 1, got: 0 });
        }
        for f in &facets {
            if f.normal.len() != dim {
                return Err(Error::DimensionMismatch { expected: dim, got: f.normal.len() });
            }
            if linalg::gcd_i64(&f.normal) != 1 {
                return Err(Error::NonPrimitiveNormal(f.normal.clone()));
            }
        }
        let normals: Vec<Vec<i64>> = facets.iter().map(|f| f.normal.clone()).collect();
        if facets.len() < dim + 1 || linalg::rank(&linalg::from_int_rows(&normals)) < dim {
            return Err(Error::Unbounded);
        }
        if has_recession_ray(&normals, dim) {
            return Err(Error::Unbounded);
        }

        let mut found: BTreeMap<Vec<Rational>, ()> = BTreeMap::new();
        for subset in combinations(facets.len(), dim) {
            let m = linalg::from_int_rows(&subset.iter().map(|&i| normals[i].clone()).collect::<Vec<_>>());
            let rhs: Vec<Rational> = subset.iter().map(|&i| -&facets[i].offset).collect();
            let Some(x) = linalg::solve(&m, &rhs) else { continue };
            if facets.iter().all(|f| !f.eval(&x).is_negative()) {
                found.insert(x, ());
            }
        }
        if found.is_empty() {
            return Err(Error::Empty);
        }
        let points: Vec<Vec<Rational>> = found.into_keys().collect();

        // Full-dimensional iff the vertices affinely span R^dim.
        let base = &points[0];
        let diffs: Vec<Vec<Rational>> = points[1..]
            .iter()
            .map(|p| p.iter().zip(base).map(|(a, b)| a - b).collect())
            .collect();
        if diffs.is_empty() || linalg::rank(&diffs) < dim {
            return Err(Error::Empty);
        }

        let mut vertices = Vec::with_capacity(points.len());
        for point in points {
            let tight: Vec<usize> = (0..facets.len()).filter(|&i| facets[i].eval(&point).is_zero()).collect();
            if tight.len() != dim {
                return Err(Error::NotSimple { vertex: point, facets: tight.len() });
            }
            vertices.push(Vertex { point, facets: tight });
        }

        let poly = DelzantPolytope { dim, facets, vertices };
        for i in 0..poly.facets.len() {
            let on = poly.vertices.iter().filter(|v| v.facets.contains(&i)).count();
            if on < dim {
                return Err(Error::RedundantFacet { index: i, vertices: on });
            }
        }
        for v in &poly.vertices {
            poly.frame_of(v)?;
        }
        Ok(poly)
    }

    pub fn from_spec(spec: &PolytopeSpec) -> Result<Self> {
        Self::new(spec.dim, spec.facets.clone())
    }

    pub fn to_spec(&self) -> PolytopeSpec {
        PolytopeSpec { dim: self.dim, facets: self.facets.clone() }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn facets(&self) -> &[Facet] {
        &self.facets
    }

    pub fn vertices(&self) -> Vec<Vec<Rational>> {
        self.vertices.iter().map(|v| v.point.clone()).collect()
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    /// Facets (by index) through the vertex with the given position in [`Self::vertices`].
    pub fn vertex_facets(&self, index: usize) -> &[usize] {
        &self.vertices[index].facets
    }

    fn frame_of(&self, v: &Vertex) -> Result<VertexFrame> {
        let normals: Vec<Vec<i64>> = v.facets.iter().map(|&i| self.facets[i].normal.clone()).collect();
        let m = linalg::from_int_rows(&normals);
        let det = linalg::det(&m);
        let inv = linalg::inverse(&m).expect("tight facets at a simple vertex are independent");
        let columns = linalg::transpose(&inv);
        if det.abs() != Rational::one() {
            let edges: Vec<Vec<i64>> = columns.iter().map(|c| linalg::primitive_direction(c)).collect();
            let edge_det = linalg::det(&linalg::from_int_rows(&edges));
            return Err(Error::NotDelzant { vertex: v.point.clone(), determinant: edge_det.abs() });
        }
        let edges = columns
            .iter()
            .map(|c| c.iter().map(|x| x.to_i64().expect("unimodular inverse is integral")).collect())
            .collect();
        Ok(VertexFrame { vertex: v.point.clone(), edges, leaves: v.facets.clone() })
    }

    /// One frame per vertex, in vertex order.
    pub fn vertex_frames(&self) -> Vec<VertexFrame> {
        self.vertices
            .iter()
            .map(|v| self.frame_of(v).expect("validated at construction"))
            .collect()
    }

    pub fn translate(&self, shift: &[Rational]) -> Result<Self> {
        if shift.len() != self.dim {
            return Err(Error::DimensionMismatch { expected: self.dim, got: shift.len() });
        }
        let facets = self
            .facets
            .iter()
            .map(|f| Facet { normal: f.normal.clone(), offset: &f.offset - dot_int_rat(&f.normal, shift) })
            .collect();
        Self::new(self.dim, facets)
    }

    /// Image under `x ↦ M x` for a unimodular integer matrix `M`. Normals
    /// transform contragrediently, `u ↦ M^{-T} u`.
    pub fn apply_unimodular(&self, matrix: &[Vec<i64>]) -> Result<Self> {
        let m = linalg::from_int_rows(matrix);
        if m.len() != self.dim || linalg::det(&m).abs() != Rational::one() {
            return Err(Error::NormalisationViolation("basis change must be unimodular".into()));
        }
        let inv_t = linalg::transpose(&linalg::inverse(&m).unwrap());
        let inv_t = linalg::to_integer(&inv_t).expect("inverse of a unimodular matrix is integral");
        let facets = self
            .facets
            .iter()
            .map(|f| Facet {
                normal: inv_t.iter().map(|row| row.iter().zip(&f.normal).map(|(a, b)| a * b).sum()).collect(),
                offset: f.offset.clone(),
            })
            .collect();
        Self::new(self.dim, facets)
    }

    /// Same normals with offsets replaced; used to deform the polytope.
    pub fn with_offsets(&self, offsets: &[Rational]) -> Result<Self> {
        if offsets.len() != self.facets.len() {
            return Err(Error::LengthMismatch { what: "offsets", expected: self.facets.len(), got: offsets.len() });
        }
        let facets = self
            .facets
            .iter()
            .zip(offsets)
            .map(|(f, o)| Facet { normal: f.normal.clone(), offset: o.clone() })
            .collect();
        Self::new(self.dim, facets)
    }

    /// Simplices (as vertex indices) of a pulling triangulation of the face cut out by `on_facets`.
    fn triangulate_face(&self, face_vertices: &[usize], on_facets: &[usize], dim: usize, pulling: Pulling) -> Vec<Vec<usize>> {
        if dim == 0 {
            return vec![vec![face_vertices[0]]];
        }
        let apex = match pulling {
            Pulling::FirstVertex => face_vertices[0],
            Pulling::LastVertex => *face_vertices.last().unwrap(),
        };
        let mut out = Vec::new();
        for g in 0..self.facets.len() {
            if on_facets.contains(&g) {
                continue;
            }
            let sub: Vec<usize> = face_vertices
                .iter()
                .copied()
                .filter(|&v| self.vertices[v].facets.contains(&g))
                .collect();
            // For a simple polytope a nonempty intersection is a face of one lower dimension.
            if sub.len() < dim || sub.contains(&apex) {
                continue;
            }
            let mut facets = on_facets.to_vec();
            facets.push(g);
            for mut simplex in self.triangulate_face(&sub, &facets, dim - 1, pulling) {
                simplex.push(apex);
                out.push(simplex);
            }
        }
        out
    }

    /// Full-dimensional simplices of a pulling triangulation.
    pub fn triangulation(&self, pulling: Pulling) -> Vec<Vec<Vec<Rational>>> {
        let all: Vec<usize> = (0..self.vertices.len()).collect();
        self.triangulate_face(&all, &[], self.dim, pulling)
            .into_iter()
            .map(|s| s.into_iter().map(|i| self.vertices[i].point.clone()).collect())
            .collect()
    }

    fn check_xi(&self, xi: &[Rational]) -> Result<()> {
        if xi.len() != self.dim {
            return Err(Error::DimensionMismatch { expected: self.dim, got: xi.len() });
        }
        Ok(())
    }

    /// `∫_P <x, ξ>^m dx`, exact.
    pub fn moment(&self, xi: &[Rational], m: u32) -> Result<Rational> {
        self.moment_with(xi, m, Pulling::default())
    }

    pub fn moment_with(&self, xi: &[Rational], m: u32, pulling: Pulling) -> Result<Rational> {
        self.check_xi(xi)?;
        let n = self.dim;
        let mut total = Rational::zero();
        for simplex in self.triangulation(pulling) {
            let base = &simplex[0];
            let edges: Vec<Vec<Rational>> = simplex[1..]
                .iter()
                .map(|p| p.iter().zip(base).map(|(a, b)| a - b).collect())
                .collect();
            let parallelotope = linalg::det(&edges).abs();
            let values: Vec<Rational> = simplex.iter().map(|p| dot_rat(p, xi)).collect();
            total += parallelotope * simplex_monomial_factor(&values, m, n);
        }
        Ok(total)
    }

    /// `∫_{∂P} <x, ξ>^m dσ` with the lattice-normalised facet measure (a
    /// primitive lattice segment inside a facet has length 1).
    pub fn boundary_moment(&self, xi: &[Rational], m: u32) -> Result<Rational> {
        self.check_xi(xi)?;
        let n = self.dim;
        let mut total = Rational::zero();
        for (i, facet) in self.facets.iter().enumerate() {
            let on: Vec<usize> = (0..self.vertices.len()).filter(|&v| self.vertices[v].facets.contains(&i)).collect();
            let normal: Vec<Rational> = facet.normal.iter().map(|&x| Rational::from(x)).collect();
            let norm_sq = dot_rat(&normal, &normal);
            for simplex in self.triangulate_face(&on, &[i], n - 1, Pulling::default()) {
                let pts: Vec<&Vec<Rational>> = simplex.iter().map(|&v| &self.vertices[v].point).collect();
                let base = pts[0];
                let mut rows: Vec<Vec<Rational>> = pts[1..]
                    .iter()
                    .map(|p| p.iter().zip(base).map(|(a, b)| a - b).collect())
                    .collect();
                rows.push(normal.clone());
                // Lattice (n-1)-volume of the parallelotope = |det(edges, u)| / |u|^2.
                let lattice_parallelotope = linalg::det(&rows).abs() / &norm_sq;
                let values: Vec<Rational> = pts.iter().map(|p| dot_rat(p, xi)).collect();
                total += lattice_parallelotope * simplex_monomial_factor(&values, m, n - 1);
            }
        }
        Ok(total)
    }

    pub fn volume(&self) -> Rational {
        let zero = vec![Rational::zero(); self.dim];
        self.moment(&zero, 0).expect("dimension matches")
    }

    /// Sum of the lattice lengths (volumes) of all facets.
    pub fn boundary_volume(&self) -> Rational {
        let zero = vec![Rational::zero(); self.dim];
        self.boundary_moment(&zero, 0).expect("dimension matches")
    }
}

/// `∫_Δ ℓ^m / |det(edges)|` for a `k`-simplex on which the linear form takes `values`
/// at the vertices: `m! / (m+k)! · h_m(values)`, with `h_m` the complete
/// homogeneous symmetric polynomial.
fn simplex_monomial_factor(values: &[Rational], m: u32, k: usize) -> Rational {
    let mut h = vec![Rational::zero(); m as usize + 1];
    h[0] = Rational::one();
    for y in values {
        for j in 1..=m as usize {
            let add = y * &h[j - 1];
            h[j] += add;
        }
    }
    let num = factorial(m as u64);
    let den: BigInt = factorial(m as u64 + k as u64);
    Rational::normalize(num, den).unwrap() * &h[m as usize]
}

/// Whether `{d != 0 : <u_i, d> >= 0 for all i}` is nonempty. When the normals
/// span, that cone is pointed, so it is nontrivial iff it has an extreme ray cut
/// out by `dim - 1` independent normals.
fn has_recession_ray(normals: &[Vec<i64>], dim: usize) -> bool {
    for subset in combinations(normals.len(), dim - 1) {
        let rows: Vec<Vec<i64>> = subset.iter().map(|&i| normals[i].clone()).collect();
        let m = linalg::from_int_rows(&rows);
        // Generalised cross product: cofactor expansion along a virtual first row.
        let d: Vec<Rational> = (0..dim)
            .map(|j| {
                let minor: Vec<Vec<Rational>> = m
                    .iter()
                    .map(|r| r.iter().enumerate().filter(|&(k, _)| k != j).map(|(_, x)| x.clone()).collect())
                    .collect();
                let c = linalg::det(&minor);
                if j % 2 == 0 { c } else { -c }
            })
            .collect();
        if d.iter().all(|x| x.is_zero()) {
            continue;
        }
        for sign in [1i64, -1] {
            let dir: Vec<Rational> = d.iter().map(|x| x * Rational::from(sign)).collect();
            if normals.iter().all(|u| !dot_int_rat(u, &dir).is_negative()) {
                return true;
            }
        }
    }
    false
}

pub(crate) fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(k);
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            if n - i < k - cur.len() {
                break;
            }
            cur.push(i);
            rec(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    rec(0, n, k, &mut cur, &mut out);
    out
}

/// Standard polytopes used throughout the examples and tests.
pub mod shapes {
    use super::*;

    /// `[lo, hi]`.
    pub fn interval(lo: i64, hi: i64) -> DelzantPolytope {
        DelzantPolytope::new(1, vec![Facet::new(vec![1], -lo), Facet::new(vec![-1], hi)]).unwrap()
    }

    /// `[-1, 1]`: the moment polytope of `P¹` with the Fubini–Study form.
    pub fn fubini_study_line() -> DelzantPolytope {
        interval(-1, 1)
    }

    /// `[lo, hi]^n`.
    pub fn cube(n: usize, lo: i64, hi: i64) -> DelzantPolytope {
        let mut facets = Vec::new();
        for i in 0..n {
            let mut e = vec![0; n];
            e[i] = 1;
            facets.push(Facet::new(e.clone(), -lo));
            facets.push(Facet::new(e.iter().map(|x| -x).collect(), hi));
        }
        DelzantPolytope::new(n, facets).unwrap()
    }

    pub fn unit_square() -> DelzantPolytope {
        cube(2, 0, 1)
    }

    /// `[-1, 1]²`, the moment polytope of `P¹ × P¹`.
    pub fn product_of_lines() -> DelzantPolytope {
        cube(2, -1, 1)
    }

    /// `{x >= 0, Σ x_i <= size}`.
    pub fn simplex(n: usize, size: i64) -> DelzantPolytope {
        let mut facets = Vec::new();
        for i in 0..n {
            let mut e = vec![0; n];
            e[i] = 1;
            facets.push(Facet::new(e, 0));
        }
        facets.push(Facet::new(vec![-1; n], size));
        DelzantPolytope::new(n, facets).unwrap()
    }

    /// Trapezoid with vertices (0,0), (2,0), (1,1), (0,1): the first Hirzebruch surface.
    pub fn hirzebruch_f1() -> DelzantPolytope {
        DelzantPolytope::new(
            2,
            vec![
                Facet::new(vec![1, 0], 0),
                Facet::new(vec![0, 1], 0),
                Facet::new(vec![0, -1], 1),
                Facet::new(vec![-1, -1], 2),
            ],
        )
        .unwrap()
    }
}
