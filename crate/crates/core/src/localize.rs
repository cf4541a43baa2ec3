//! Atiyah–Bott localisation on toric manifolds.
//!
//! Equivariant integrands are polynomials in three symbols: `A` (the Kähler
//! class with hamiltonian `h`), `C` (the first Chern class) and `R` (the
//! pullback of the point class of the base `P¹` on a test configuration). At a
//! fixed point with weights `w_k`, they restrict to `-h`, `Σ w_k` and the weight
//! of the edge normal to the fibre. The equivariant Euler class restricts to
//! `Π (-w_k)`.
//!
//! Results are exact and carry their power of `2π` separately.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exact::{binomial, dot_int_rat, GaussianRational, Rational};
use crate::polytope::VertexFrame;

/// Restriction data of the torus action at one fixed point.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FixedPointDatum {
    pub vertex: Vec<Rational>,
    pub hamiltonian: Rational,
    pub weights: Vec<Rational>,
    /// Weight of the edge normal to the fibre containing this point, when the
    /// ambient space is a test configuration.
    pub crel_correction: Option<Rational>,
}

/// Exponents of `A`, `C` and `R` in one monomial.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Exponents {
    pub a: u32,
    pub c: u32,
    pub r: u32,
}

impl Exponents {
    pub fn degree(&self) -> u32 {
        self.a + self.c + self.r
    }
}

/// A polynomial in `A`, `C`, `R` with Gaussian-rational coefficients, to be
/// integrated over a space of complex dimension `dim`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EquivariantIntegrand {
    dim: usize,
    terms: Vec<(GaussianRational, Exponents)>,
}

impl EquivariantIntegrand {
    pub fn zero(dim: usize) -> Self {
        EquivariantIntegrand { dim, terms: Vec::new() }
    }

    pub fn constant(dim: usize, value: impl Into<GaussianRational>) -> Self {
        Self::monomial(dim, value, 0, 0, 0)
    }

    pub fn monomial(dim: usize, coefficient: impl Into<GaussianRational>, a: u32, c: u32, r: u32) -> Self {
        Self::zero(dim).with_term(coefficient, a, c, r)
    }

    /// `A^a` with coefficient 1.
    pub fn a_power(dim: usize, a: u32) -> Self {
        Self::monomial(dim, 1, a, 0, 0)
    }

    pub fn with_term(mut self, coefficient: impl Into<GaussianRational>, a: u32, c: u32, r: u32) -> Self {
        self.push(coefficient.into(), Exponents { a, c, r });
        self
    }

    fn push(&mut self, coefficient: GaussianRational, e: Exponents) {
        if let Some(slot) = self.terms.iter_mut().find(|(_, f)| *f == e) {
            slot.0 += &coefficient;
        } else {
            self.terms.push((coefficient, e));
        }
        self.terms.retain(|(k, _)| !k.is_zero());
        self.terms.sort_by_key(|t| t.1);
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn terms(&self) -> &[(GaussianRational, Exponents)] {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Every monomial has total degree equal to the dimension.
    pub fn is_pure_degree(&self) -> bool {
        self.terms.iter().all(|(_, e)| e.degree() as usize == self.dim)
    }

    /// Largest amount by which a monomial's degree exceeds the dimension (0 if none does).
    pub fn excess(&self) -> u32 {
        self.terms
            .iter()
            .map(|(_, e)| (e.degree() as usize).saturating_sub(self.dim) as u32)
            .max()
            .unwrap_or(0)
    }

    pub fn uses_r(&self) -> bool {
        self.terms.iter().any(|(_, e)| e.r > 0)
    }

    /// Monomials of total degree exactly `d`.
    pub fn degree_part(&self, d: u32) -> Self {
        EquivariantIntegrand {
            dim: self.dim,
            terms: self.terms.iter().filter(|(_, e)| e.degree() == d).cloned().collect(),
        }
    }

    pub fn scale(&self, k: &GaussianRational) -> Self {
        let mut out = Self::zero(self.dim);
        for (c, e) in &self.terms {
            out.push(c * k, *e);
        }
        out
    }

    pub fn pow(&self, exp: u32) -> Self {
        let mut out = Self::constant(self.dim, 1);
        for _ in 0..exp {
            out = &out * self;
        }
        out
    }

    /// Substitutes `A ↦ A + shift`, i.e. changes the hamiltonian by `-shift`.
    pub fn shift_a(&self, shift: &Rational) -> Self {
        let mut out = Self::zero(self.dim);
        for (coef, e) in &self.terms {
            for j in 0..=e.a {
                let factor = Rational::from(binomial(e.a as u64, j as u64)) * shift.pow(e.a - j);
                out.push(coef.scale(&factor), Exponents { a: j, c: e.c, r: e.r });
            }
        }
        out
    }

    fn combine(&self, other: &Self, sign: i64) -> Self {
        assert_eq!(self.dim, other.dim, "integrands live on different spaces");
        let mut out = self.clone();
        for (c, e) in &other.terms {
            out.push(c.scale(&Rational::from(sign)), *e);
        }
        out
    }
}

impl Add for &EquivariantIntegrand {
    type Output = EquivariantIntegrand;
    fn add(self, rhs: &EquivariantIntegrand) -> EquivariantIntegrand {
        self.combine(rhs, 1)
    }
}

impl Sub for &EquivariantIntegrand {
    type Output = EquivariantIntegrand;
    fn sub(self, rhs: &EquivariantIntegrand) -> EquivariantIntegrand {
        self.combine(rhs, -1)
    }
}

impl Mul for &EquivariantIntegrand {
    type Output = EquivariantIntegrand;
    fn mul(self, rhs: &EquivariantIntegrand) -> EquivariantIntegrand {
        assert_eq!(self.dim, rhs.dim, "integrands live on different spaces");
        let mut out = EquivariantIntegrand::zero(self.dim);
        for (c1, e1) in &self.terms {
            for (c2, e2) in &rhs.terms {
                out.push(c1 * c2, Exponents { a: e1.a + e2.a, c: e1.c + e2.c, r: e1.r + e2.r });
            }
        }
        out
    }
}

impl Neg for &EquivariantIntegrand {
    type Output = EquivariantIntegrand;
    fn neg(self) -> EquivariantIntegrand {
        self.scale(&GaussianRational::from(-1))
    }
}

/// `value · (2π)^two_pi_power`, exactly.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LocalizedValue {
    pub value: GaussianRational,
    pub two_pi_power: i32,
}

impl LocalizedValue {
    pub fn new(value: impl Into<GaussianRational>, two_pi_power: i32) -> Self {
        LocalizedValue { value: value.into(), two_pi_power }
    }

    pub fn zero(two_pi_power: i32) -> Self {
        Self::new(0, two_pi_power)
    }

    pub fn is_zero(&self) -> bool {
        self.value.is_zero()
    }

    pub fn real_part(&self) -> &Rational {
        &self.value.re
    }

    pub fn scale(&self, k: &GaussianRational) -> Self {
        LocalizedValue { value: &self.value * k, two_pi_power: self.two_pi_power }
    }
}

impl fmt::Display for LocalizedValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.value.re.is_zero() || self.value.im.is_zero() {
            write!(f, "{} · (2π)^{}", self.value, self.two_pi_power)
        } else {
            write!(f, "({}) · (2π)^{}", self.value, self.two_pi_power)
        }
    }
}

/// How the localisation parameter is chosen.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Parameter {
    /// Draw a generic parameter from the given seed.
    Seed(u64),
    /// Use this vector. If it is not generic, the answer is obtained by
    /// polynomial continuation along generic perturbations.
    Fixed(Vec<Rational>),
}

fn pair(edge: &[i64], xi: &[Rational]) -> Rational {
    dot_int_rat(edge, xi)
}

fn check_dim(frames: &[VertexFrame], xi: &[Rational]) -> Result<usize> {
    let n = frames.first().map(|f| f.vertex.len()).unwrap_or(xi.len());
    if xi.len() != n {
        return Err(Error::DimensionMismatch { expected: n, got: xi.len() });
    }
    Ok(n)
}

pub fn is_generic(frames: &[VertexFrame], xi: &[Rational]) -> bool {
    frames.iter().all(|f| f.edges.iter().all(|e| !pair(e, xi).is_zero()))
}

/// Fixed-point data with the canonical lift `h = <·, ξ>`.
pub fn fixed_point_data(frames: &[VertexFrame], xi: &[Rational]) -> Result<Vec<FixedPointDatum>> {
    fixed_point_data_relative(frames, &[], xi)
}

/// As [`fixed_point_data`], additionally recording the weight of the edge that
/// leaves any of the `fibre_facets`.
pub fn fixed_point_data_relative(
    frames: &[VertexFrame],
    fibre_facets: &[usize],
    xi: &[Rational],
) -> Result<Vec<FixedPointDatum>> {
    check_dim(frames, xi)?;
    frames
        .iter()
        .map(|f| {
            let mut weights = Vec::with_capacity(f.edges.len());
            for e in &f.edges {
                let w = pair(e, xi);
                if w.is_zero() {
                    return Err(Error::NonGenericParameter { vertex: f.vertex.clone(), edge: e.clone() });
                }
                weights.push(w);
            }
            let crel_correction = if fibre_facets.is_empty() {
                None
            } else {
                Some(
                    f.leaves
                        .iter()
                        .zip(&weights)
                        .filter(|(facet, _)| fibre_facets.contains(facet))
                        .map(|(_, w)| w.clone())
                        .sum(),
                )
            };
            Ok(FixedPointDatum {
                vertex: f.vertex.clone(),
                hamiltonian: crate::exact::dot_rat(&f.vertex, xi),
                weights,
                crel_correction,
            })
        })
        .collect()
}

/// Numerator and Euler-class denominator of the integrand at one fixed point.
pub fn restrict_integrand(fp: &FixedPointDatum, integrand: &EquivariantIntegrand) -> Result<(GaussianRational, Rational)> {
    if integrand.uses_r() && fp.crel_correction.is_none() {
        return Err(Error::MissingFibreData);
    }
    let a = -&fp.hamiltonian;
    let c: Rational = fp.weights.iter().sum();
    let r = fp.crel_correction.clone().unwrap_or_else(Rational::zero);
    let mut numerator = GaussianRational::zero();
    for (coef, e) in integrand.terms() {
        let m = a.pow(e.a) * c.pow(e.c) * r.pow(e.r);
        numerator += &coef.scale(&m);
    }
    let euler: Rational = fp.weights.iter().map(|w| -w).product();
    Ok((numerator, euler))
}

fn sum_over(data: &[FixedPointDatum], integrand: &EquivariantIntegrand) -> Result<LocalizedValue> {
    let d = data.first().map(|p| p.weights.len()).unwrap_or(integrand.dim());
    if integrand.dim() != d {
        return Err(Error::IntegrandDimension { integrand: integrand.dim(), space: d });
    }
    let mut total = GaussianRational::zero();
    for fp in data {
        let (num, euler) = restrict_integrand(fp, integrand)?;
        total += &num.scale(&euler.recip()?);
    }
    if d % 2 == 1 {
        total = -total;
    }
    Ok(LocalizedValue { value: total, two_pi_power: d as i32 })
}

/// `(-1)^d Σ_p numerator_p / euler_p` at a generic parameter.
pub fn localize_sum(frames: &[VertexFrame], xi: &[Rational], integrand: &EquivariantIntegrand) -> Result<LocalizedValue> {
    sum_over(&fixed_point_data(frames, xi)?, integrand)
}

/// As [`localize_sum`] on a test configuration, where `R` is supported on `fibre_facets`.
pub fn localize_sum_relative(
    frames: &[VertexFrame],
    fibre_facets: &[usize],
    xi: &[Rational],
    integrand: &EquivariantIntegrand,
) -> Result<LocalizedValue> {
    sum_over(&fixed_point_data_relative(frames, fibre_facets, xi)?, integrand)
}

/// A deterministic integral vector pairing nonzero with every edge of every frame.
pub fn generic_parameter(frames: &[VertexFrame], seed: u64) -> Vec<Rational> {
    let n = frames.first().map(|f| f.vertex.len()).unwrap_or(1);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut bound: i64 = 8;
    loop {
        for _ in 0..64 {
            let xi: Vec<Rational> = (0..n).map(|_| Rational::from(rng.gen_range(-bound..=bound))).collect();
            if xi.iter().any(|x| !x.is_zero()) && is_generic(frames, &xi) {
                return xi;
            }
        }
        bound *= 2;
    }
}

/// Evaluates the integrand at the requested parameter. A fixed non-generic
/// parameter is handled by sampling the (polynomial) answer along
/// `ξ + tη` for generic `η` and interpolating back to `t = 0`.
pub fn evaluate(
    frames: &[VertexFrame],
    fibre_facets: &[usize],
    parameter: &Parameter,
    integrand: &EquivariantIntegrand,
) -> Result<LocalizedValue> {
    match parameter {
        Parameter::Seed(seed) => {
            if !integrand.is_pure_degree() && integrand.excess() > 0 {
                return Err(Error::ParameterRequired);
            }
            let xi = generic_parameter(frames, *seed);
            localize_sum_relative(frames, fibre_facets, &xi, integrand)
        }
        Parameter::Fixed(xi) => {
            check_dim(frames, xi)?;
            if is_generic(frames, xi) {
                return localize_sum_relative(frames, fibre_facets, xi, integrand);
            }
            continue_to(frames, fibre_facets, xi, integrand)
        }
    }
}

fn continue_to(
    frames: &[VertexFrame],
    fibre_facets: &[usize],
    xi: &[Rational],
    integrand: &EquivariantIntegrand,
) -> Result<LocalizedValue> {
    let degree = integrand.excess() as usize;
    let eta = generic_parameter(frames, 0x5eed);
    let mut nodes: Vec<(Rational, LocalizedValue)> = Vec::with_capacity(degree + 1);
    let mut t = 1i64;
    while nodes.len() < degree + 1 {
        let tq = Rational::from(t);
        let p: Vec<Rational> = xi.iter().zip(&eta).map(|(x, e)| x + &tq * e).collect();
        if is_generic(frames, &p) {
            nodes.push((tq, localize_sum_relative(frames, fibre_facets, &p, integrand)?));
        }
        t += 1;
    }
    let two_pi_power = nodes[0].1.two_pi_power;
    let mut value = GaussianRational::zero();
    for (i, (ti, vi)) in nodes.iter().enumerate() {
        let mut basis = Rational::one();
        for (j, (tj, _)) in nodes.iter().enumerate() {
            if i != j {
                basis *= &(-tj / (ti - tj));
            }
        }
        value += &vi.value.scale(&basis);
    }
    Ok(LocalizedValue { value, two_pi_power })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polytope::shapes;

    fn ints(v: &[i64]) -> Vec<Rational> {
        v.iter().map(|&x| Rational::from(x)).collect()
    }

    #[test]
    fn segment_fixed_points() {
        let frames = shapes::fubini_study_line().vertex_frames();
        let data = fixed_point_data(&frames, &ints(&[1])).unwrap();
        assert_eq!(data[0].hamiltonian, Rational::from(-1));
        assert_eq!(data[0].weights, ints(&[1]));
        assert_eq!(data[1].hamiltonian, Rational::from(1));
        assert_eq!(data[1].weights, ints(&[-1]));
    }

    #[test]
    fn square_parameters() {
        let frames = shapes::unit_square().vertex_frames();
        assert!(matches!(
            fixed_point_data(&frames, &ints(&[1, 0])),
            Err(Error::NonGenericParameter { .. })
        ));
        let data = fixed_point_data(&frames, &ints(&[1, 2])).unwrap();
        let mut hs: Vec<Rational> = data.iter().map(|d| d.hamiltonian.clone()).collect();
        hs.sort();
        assert_eq!(hs, ints(&[0, 1, 2, 3]));
    }

    #[test]
    fn restrictions_at_a_pole() {
        let fp = FixedPointDatum { vertex: ints(&[-1]), hamiltonian: Rational::from(-1), weights: ints(&[1]), crel_correction: None };
        let (num, euler) = restrict_integrand(&fp, &EquivariantIntegrand::a_power(1, 1)).unwrap();
        assert_eq!((num, euler), (GaussianRational::from(1), Rational::from(-1)));
        let (num, euler) = restrict_integrand(&fp, &EquivariantIntegrand::monomial(1, 1, 0, 1, 0)).unwrap();
        assert_eq!((num, euler), (GaussianRational::from(1), Rational::from(-1)));
        assert!(matches!(
            restrict_integrand(&fp, &EquivariantIntegrand::monomial(1, 1, 0, 0, 1)),
            Err(Error::MissingFibreData)
        ));
    }

    #[test]
    fn projective_line_pairings() {
        let frames = shapes::fubini_study_line().vertex_frames();
        let xi = ints(&[1]);
        let at = |i: EquivariantIntegrand| localize_sum(&frames, &xi, &i).unwrap();
        assert_eq!(at(EquivariantIntegrand::a_power(1, 1)), LocalizedValue::new(2, 1));
        assert_eq!(at(EquivariantIntegrand::a_power(1, 2)), LocalizedValue::new(0, 1));
        assert_eq!(at(EquivariantIntegrand::monomial(1, 1, 0, 1, 0)), LocalizedValue::new(2, 1));
        assert_eq!(at(EquivariantIntegrand::a_power(1, 0)), LocalizedValue::new(0, 1));
    }

    #[test]
    fn generic_parameters_are_reproducible() {
        let frames = shapes::unit_square().vertex_frames();
        let a = generic_parameter(&frames, 1);
        assert_eq!(a, generic_parameter(&frames, 1));
        assert!(is_generic(&frames, &a));
        let seg = shapes::fubini_study_line().vertex_frames();
        assert!(!generic_parameter(&seg, 7)[0].is_zero());
    }

    #[test]
    fn continuation_matches_direct_sum() {
        // A^3 on the square is degree 1 in ξ; continue to the non-generic ξ = (1, 0).
        let frames = shapes::product_of_lines().vertex_frames();
        let integrand = EquivariantIntegrand::a_power(2, 3);
        let at_axis = evaluate(&frames, &[], &Parameter::Fixed(ints(&[1, 0])), &integrand).unwrap();
        assert_eq!(at_axis, LocalizedValue::zero(2));
        let shifted = integrand.shift_a(&Rational::from(1));
        let value = evaluate(&frames, &[], &Parameter::Fixed(ints(&[1, 0])), &shifted).unwrap();
        // (A+1)^3 = A^3 + 3A^2 + ...; only 3A^2 survives, and A^2 integrates to 2·4.
        assert_eq!(value, LocalizedValue::new(24, 2));
    }

    #[test]
    fn shift_expands_binomially() {
        let i = EquivariantIntegrand::a_power(1, 2).shift_a(&Rational::from(3));
        let expected = EquivariantIntegrand::a_power(1, 2).with_term(6, 1, 0, 0).with_term(9, 0, 0, 0);
        assert_eq!(i, expected);
        assert_eq!(i.excess(), 1);
        assert!(!i.is_pure_degree());
    }

    #[test]
    fn display_of_values() {
        assert_eq!(LocalizedValue::new(2, 1).to_string(), "2 · (2π)^1");
    }
}
