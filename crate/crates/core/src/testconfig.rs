//! Product test configurations.
//!
//! A one-parameter subgroup `ξ` and a height `f(x) = <ξ, x> + c`, positive on
//! `P`, define the total space `Q = {(x, s) : x ∈ P, 0 <= s <= f(x)}`. The
//! bottom facet `s = 0` is the fibre at infinity, the top facet `s = f(x)` is
//! the central fibre, and the test-configuration circle is `ζ = -e_{n+1}`.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exact::{dot_int_rat, Rational};
use crate::polytope::{DelzantPolytope, Facet, PolytopeSpec, VertexFrame};

/// Which fibre of the test configuration a vertex of `Q` lies on.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum FibreRole {
    /// Top facet, the central fibre.
    OnX0,
    /// Bottom facet, the fibre at infinity.
    OnXInfinity,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ToricTestConfiguration {
    base: DelzantPolytope,
    xi: Vec<i64>,
    c: Rational,
    twist: u64,
    total: DelzantPolytope,
}

/// The central fibre `P` with its induced circle action `V₀ = -ξ`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CentralFibre {
    pub polytope: DelzantPolytope,
    /// Generator of the induced action, `-ξ`.
    pub v0: Vec<Rational>,
    /// Constant part of the hamiltonian `v ↦ <v0, v> + lift_constant`.
    pub lift_constant: Rational,
}

impl CentralFibre {
    pub fn hamiltonian(&self, x: &[Rational]) -> Rational {
        crate::exact::dot_rat(&self.v0, x) + &self.lift_constant
    }

    /// Weights of `V₀` along the edges of a frame of the central fibre.
    pub fn weights(&self, frame: &VertexFrame) -> Vec<Rational> {
        frame.edges.iter().map(|e| dot_int_rat(e, &self.v0)).collect()
    }
}

pub fn product_tc(base: &DelzantPolytope, xi: &[i64], c: impl Into<Rational>) -> Result<ToricTestConfiguration> {
    build(base, xi, c.into(), 0)
}

pub fn trivial_tc(base: &DelzantPolytope) -> ToricTestConfiguration {
    product_tc(base, &vec![0; base.dim()], 1).expect("a constant positive height is always valid")
}

fn build(base: &DelzantPolytope, xi: &[i64], c: Rational, twist: u64) -> Result<ToricTestConfiguration> {
    let n = base.dim();
    if xi.len() != n {
        return Err(Error::DimensionMismatch { expected: n, got: xi.len() });
    }
    let offset = &c + Rational::from(twist as i64);
    for v in base.vertices() {
        let value = dot_int_rat(xi, &v) + &offset;
        if !value.is_positive() {
            return Err(Error::NonPositiveHeight { vertex: v, value });
        }
    }
    let mut facets: Vec<Facet> = base
        .facets()
        .iter()
        .map(|f| {
            let mut normal = f.normal.clone();
            normal.push(0);
            Facet { normal, offset: f.offset.clone() }
        })
        .collect();
    let mut bottom = vec![0; n];
    bottom.push(1);
    facets.push(Facet { normal: bottom, offset: Rational::zero() });
    let mut top = xi.to_vec();
    top.push(-1);
    facets.push(Facet { normal: top, offset });
    let total = DelzantPolytope::new(n + 1, facets)?;
    Ok(ToricTestConfiguration { base: base.clone(), xi: xi.to_vec(), c, twist, total })
}

impl ToricTestConfiguration {
    pub fn base(&self) -> &DelzantPolytope {
        &self.base
    }

    pub fn xi(&self) -> &[i64] {
        &self.xi
    }

    pub fn offset(&self) -> &Rational {
        &self.c
    }

    pub fn twist_amount(&self) -> u64 {
        self.twist
    }

    pub fn total(&self) -> &DelzantPolytope {
        &self.total
    }

    pub fn dim(&self) -> usize {
        self.base.dim()
    }

    /// `f(x) = <ξ, x> + c + twist`.
    pub fn height(&self, x: &[Rational]) -> Rational {
        dot_int_rat(&self.xi, x) + &self.c + Rational::from(self.twist as i64)
    }

    pub fn bottom_facet(&self) -> usize {
        self.base.facets().len()
    }

    pub fn top_facet(&self) -> usize {
        self.base.facets().len() + 1
    }

    /// Facets whose normal direction is the `P¹` direction; `R` lives there.
    pub fn fibre_facets(&self) -> [usize; 2] {
        [self.bottom_facet(), self.top_facet()]
    }

    /// The circle direction `-e_{n+1}`.
    pub fn zeta(&self) -> Vec<Rational> {
        let mut z = vec![Rational::zero(); self.dim() + 1];
        z[self.dim()] = Rational::from(-1);
        z
    }

    /// Role of each vertex of `Q`, in vertex order.
    pub fn roles(&self) -> Vec<FibreRole> {
        (0..self.total.vertex_count())
            .map(|i| {
                if self.total.vertex_facets(i).contains(&self.top_facet()) {
                    FibreRole::OnX0
                } else {
                    FibreRole::OnXInfinity
                }
            })
            .collect()
    }

    /// Index of the edge normal to the fibre at a frame of `Q`.
    pub fn vertical_edge(&self, frame: &VertexFrame) -> usize {
        frame
            .leaves
            .iter()
            .position(|f| self.fibre_facets().contains(f))
            .expect("every vertex of Q lies on the top or the bottom facet")
    }

    /// Raises the height function by `m`.
    pub fn twist(&self, m: u64) -> Result<Self> {
        build(&self.base, &self.xi, self.c.clone(), self.twist + m)
    }

    /// The same test configuration over `P + v`: the height is rewritten in the
    /// new coordinates, `f(x - v)`.
    pub fn translate_base(&self, v: &[Rational]) -> Result<Self> {
        let base = self.base.translate(v)?;
        let c = &self.c - dot_int_rat(&self.xi, v);
        build(&base, &self.xi, c, self.twist)
    }

    pub fn central_fibre(&self) -> CentralFibre {
        CentralFibre {
            polytope: self.base.clone(),
            v0: self.xi.iter().map(|&x| Rational::from(-x)).collect(),
            lift_constant: -(&self.c + Rational::from(self.twist as i64)),
        }
    }

    pub fn to_spec(&self) -> TestConfigSpec {
        TestConfigSpec { base: self.base.to_spec(), xi: self.xi.clone(), c: self.c.clone(), twist: self.twist }
    }
}

/// Wire form `{"base": <polytope>, "xi": [...], "c": int or "p/q", "twist": int}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TestConfigSpec {
    pub base: PolytopeSpec,
    pub xi: Vec<i64>,
    pub c: Rational,
    #[serde(default)]
    pub twist: u64,
}

impl TestConfigSpec {
    pub fn build(&self) -> Result<ToricTestConfiguration> {
        let base = DelzantPolytope::from_spec(&self.base)?;
        build(&base, &self.xi, self.c.clone(), self.twist)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::localize::fixed_point_data_relative;
    use crate::polytope::shapes;

    fn ints(v: &[i64]) -> Vec<Rational> {
        v.iter().map(|&x| Rational::from(x)).collect()
    }

    #[test]
    fn sheared_segment() {
        let tc = product_tc(&shapes::fubini_study_line(), &[1], 2).unwrap();
        let vertices = tc.total().vertices();
        assert_eq!(vertices, vec![ints(&[-1, 0]), ints(&[-1, 1]), ints(&[1, 0]), ints(&[1, 3])]);
        let roles = tc.roles();
        assert_eq!(roles, vec![FibreRole::OnXInfinity, FibreRole::OnX0, FibreRole::OnXInfinity, FibreRole::OnX0]);
    }

    #[test]
    fn trivial_is_a_box() {
        let tc = trivial_tc(&shapes::fubini_study_line());
        assert_eq!(tc.total().volume(), Rational::from(2));
        let twisted = tc.twist(1).unwrap();
        assert_eq!(twisted.total().volume(), Rational::from(4));
        assert_eq!(twisted.total().vertex_count(), tc.total().vertex_count());
        assert_eq!(tc.twist(0).unwrap(), tc);
    }

    #[test]
    fn heights_must_be_positive() {
        let err = product_tc(&shapes::fubini_study_line(), &[1], 1).unwrap_err();
        match err {
            Error::NonPositiveHeight { vertex, value } => {
                assert_eq!(vertex, ints(&[-1]));
                assert!(value.is_zero());
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn zeta_data_on_the_fibres() {
        let tc = product_tc(&shapes::hirzebruch_f1(), &[0, 1], 1).unwrap();
        let frames = tc.total().vertex_frames();
        let data = fixed_point_data_relative(&frames, &tc.fibre_facets(), &tc.zeta());
        // ζ fixes the whole bottom facet, so the data are not isolated there.
        assert!(data.is_err());
        for (frame, role) in frames.iter().zip(tc.roles()) {
            let k = tc.vertical_edge(frame);
            let pairing = dot_int_rat(&frame.edges[k], &tc.zeta());
            let h = crate::exact::dot_rat(&frame.vertex, &tc.zeta());
            match role {
                FibreRole::OnXInfinity => {
                    assert_eq!(pairing, Rational::from(-1));
                    assert!(h.is_zero());
                }
                FibreRole::OnX0 => {
                    assert_eq!(pairing, Rational::from(1));
                    assert_eq!(h, -tc.height(&frame.vertex[..2]));
                }
            }
        }
    }

    #[test]
    fn central_fibre_data() {
        let tc = product_tc(&shapes::fubini_study_line(), &[1], 2).unwrap();
        let x0 = tc.central_fibre();
        assert_eq!(x0.hamiltonian(&ints(&[-1])), Rational::from(-1));
        assert_eq!(x0.hamiltonian(&ints(&[1])), Rational::from(-3));
        let frames = x0.polytope.vertex_frames();
        assert_eq!(x0.weights(&frames[0]), ints(&[-1]));
        let trivial = trivial_tc(&shapes::product_of_lines()).central_fibre();
        assert!(trivial.v0.iter().all(|x| x.is_zero()));
    }

    #[test]
    fn twist_commutes_with_translation() {
        let tc = product_tc(&shapes::hirzebruch_f1(), &[0, 1], 1).unwrap();
        let v = vec![Rational::normalize(1, 3).unwrap(), Rational::from(-2)];
        let a = tc.twist(2).unwrap().translate_base(&v).unwrap();
        let b = tc.translate_base(&v).unwrap().twist(2).unwrap();
        assert_eq!(a.total(), b.total());
    }
}
