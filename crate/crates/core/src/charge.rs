//! Central charges `Z(X, α) = Σ_l ρ_l α^l ∪ f(c1) ∪ Θ`.
//!
//! `Θ` is restricted to polynomials in `c1`. The coefficient table `a[k][l]`
//! absorbs `f` and `Θ`, so `Z(X, α) = Σ a[k][l] α^l c1^k`; only entries with
//! `k + l = n` pair nontrivially on `X` and the rest are stored as zero.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exact::{factorial, GaussianRational, Rational};
use crate::localize::{evaluate, EquivariantIntegrand, LocalizedValue, Parameter};
use crate::polytope::DelzantPolytope;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StabilityVector {
    rho: Vec<GaussianRational>,
}

impl StabilityVector {
    pub fn new(rho: Vec<GaussianRational>) -> Self {
        StabilityVector { rho }
    }

    pub fn rho(&self) -> &[GaussianRational] {
        &self.rho
    }

    /// Set when the top coefficient does not lie in the upper half plane.
    pub fn has_warning(&self) -> bool {
        self.rho.last().is_none_or(|r| !r.im.is_positive())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChernPolynomial {
    coeffs: Vec<GaussianRational>,
}

impl ChernPolynomial {
    pub fn new(coeffs: Vec<GaussianRational>) -> Result<Self> {
        for (i, name) in ["a_0", "a_1"].iter().enumerate() {
            if coeffs.get(i) != Some(&GaussianRational::one()) {
                return Err(Error::NormalisationViolation(format!("{name} must equal 1")));
            }
        }
        Ok(ChernPolynomial { coeffs })
    }

    /// `1 + c1`, padded with zeros to degree `n`.
    pub fn linear(n: usize) -> Self {
        let mut coeffs = vec![GaussianRational::zero(); n + 1];
        coeffs[0] = GaussianRational::one();
        coeffs[1] = GaussianRational::one();
        ChernPolynomial { coeffs }
    }

    pub fn coeffs(&self) -> &[GaussianRational] {
        &self.coeffs
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ThetaPolynomial {
    coeffs: Vec<GaussianRational>,
}

impl ThetaPolynomial {
    pub fn new(coeffs: Vec<GaussianRational>) -> Result<Self> {
        if coeffs.first() != Some(&GaussianRational::one()) {
            return Err(Error::NormalisationViolation("θ_0 must equal 1".into()));
        }
        Ok(ThetaPolynomial { coeffs })
    }

    pub fn one(n: usize) -> Self {
        let mut coeffs = vec![GaussianRational::zero(); n + 1];
        coeffs[0] = GaussianRational::one();
        ThetaPolynomial { coeffs }
    }

    pub fn coeffs(&self) -> &[GaussianRational] {
        &self.coeffs
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CentralCharge {
    dim: usize,
    rho: StabilityVector,
    chern: ChernPolynomial,
    theta: ThetaPolynomial,
    akl: Vec<Vec<GaussianRational>>,
}

/// Product of two polynomials given by coefficient lists, truncated to degree `n`.
fn truncated_product(p: &[GaussianRational], q: &[GaussianRational], n: usize) -> Vec<GaussianRational> {
    let mut out = vec![GaussianRational::zero(); n + 1];
    for (i, a) in p.iter().enumerate() {
        for (j, b) in q.iter().enumerate() {
            if i + j <= n {
                out[i + j] += &(a * b);
            }
        }
    }
    out
}

pub fn make_charge(
    dim: usize,
    rho: StabilityVector,
    chern: ChernPolynomial,
    theta: ThetaPolynomial,
) -> Result<CentralCharge> {
    if dim == 0 {
        return Err(Error::DimensionMismatch { expected: 1, got: 0 });
    }
    for (what, len) in [("rho", rho.rho.len()), ("chern", chern.coeffs.len()), ("theta", theta.coeffs.len())] {
        if len != dim + 1 {
            return Err(Error::LengthMismatch { what, expected: dim + 1, got: len });
        }
    }
    let f_theta = truncated_product(&chern.coeffs, &theta.coeffs, dim);
    let mut akl = vec![vec![GaussianRational::zero(); dim + 1]; dim + 1];
    for (l, r) in rho.rho.iter().enumerate() {
        akl[dim - l][l] = r * &f_theta[dim - l];
    }
    Ok(CentralCharge { dim, rho, chern, theta, akl })
}

impl CentralCharge {
    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn rho(&self) -> &StabilityVector {
        &self.rho
    }

    pub fn chern(&self) -> &ChernPolynomial {
        &self.chern
    }

    pub fn theta(&self) -> &ThetaPolynomial {
        &self.theta
    }

    /// `a[k][l]`, the coefficient of `α^l c1^k`.
    pub fn coefficient_table(&self) -> &[Vec<GaussianRational>] {
        &self.akl
    }

    /// Coefficient of `α^l c1^{n-l}`.
    pub fn top_coefficient(&self, l: usize) -> &GaussianRational {
        &self.akl[self.dim - l][l]
    }

    pub fn is_real(&self) -> bool {
        self.akl.iter().flatten().all(|a| a.is_real())
    }

    pub fn warnings(&self) -> Vec<String> {
        let mut out = Vec::new();
        if self.rho.has_warning() {
            out.push(format!("Im(ρ_{}) ≤ 0: stability vector is not normalised", self.dim));
        }
        out
    }

    /// Same `f` and `Θ` with a different stability vector.
    pub fn with_rho(&self, rho: Vec<GaussianRational>) -> Result<Self> {
        make_charge(self.dim, StabilityVector::new(rho), self.chern.clone(), self.theta.clone())
    }

    /// Charge with the stability vectors added; `f` and `Θ` must agree.
    pub fn plus(&self, other: &CentralCharge) -> Result<Self> {
        if self.dim != other.dim || self.chern != other.chern || self.theta != other.theta {
            return Err(Error::NormalisationViolation("charges differ in f or Θ".into()));
        }
        let rho = self.rho.rho.iter().zip(&other.rho.rho).map(|(a, b)| a + b).collect();
        self.with_rho(rho)
    }

    /// `Σ a[k][l] A^l C^k` on `X`.
    pub fn integrand(&self) -> EquivariantIntegrand {
        let n = self.dim;
        let mut out = EquivariantIntegrand::zero(n);
        for l in 0..=n {
            out = out.with_term(self.top_coefficient(l).clone(), l as u32, (n - l) as u32, 0);
        }
        out
    }
}

/// `Z(X, α)` as an exact multiple of `(2π)^n`.
pub fn charge_value(charge: &CentralCharge, polytope: &DelzantPolytope, parameter: &Parameter) -> Result<LocalizedValue> {
    if polytope.dim() != charge.dim {
        return Err(Error::DimensionMismatch { expected: charge.dim, got: polytope.dim() });
    }
    evaluate(&polytope.vertex_frames(), &[], parameter, &charge.integrand())
}

/// `ρ_{n-1} = 1`, `f = c1`, `Θ = 1`: the charge whose normalised
/// test-configuration invariant is the Donaldson–Futaki invariant.
pub fn preset_kstability(n: usize) -> CentralCharge {
    let mut rho = vec![GaussianRational::zero(); n + 1];
    rho[n - 1] = GaussianRational::one();
    make_charge(n, StabilityVector::new(rho), ChernPolynomial::linear(n), ThetaPolynomial::one(n)).unwrap()
}

fn minus_i_power_over_factorial(j: usize) -> GaussianRational {
    let unit = GaussianRational::from_ints(0, -1).pow(j as u32);
    unit.scale(&Rational::normalize(1, factorial(j as u64)).unwrap())
}

/// The deformed Hermitian–Yang–Mills charge `-e^{-iα} e^{-i c1}`, truncated.
///
/// `f = 1 + c1` and `Θ = e^{-i c1} / (1 + c1)` so that `f·Θ = e^{-i c1}`
/// up to degree `n`.
pub fn preset_dhym(n: usize) -> CentralCharge {
    let rho: Vec<GaussianRational> = (0..=n).map(|l| -minus_i_power_over_factorial(l)).collect();
    let exp: Vec<GaussianRational> = (0..=n).map(minus_i_power_over_factorial).collect();
    let inverse_one_plus_c: Vec<GaussianRational> =
        (0..=n).map(|j| GaussianRational::from(if j % 2 == 0 { 1 } else { -1 })).collect();
    let theta = truncated_product(&exp, &inverse_one_plus_c, n);
    make_charge(n, StabilityVector::new(rho), ChernPolynomial::linear(n), ThetaPolynomial::new(theta).unwrap()).unwrap()
}

/// The dHYM stability vector with `f = Θ = 1 + c1`.
pub fn preset_dhym_linear_theta(n: usize) -> CentralCharge {
    let dhym = preset_dhym(n);
    let mut theta = vec![GaussianRational::zero(); n + 1];
    theta[0] = GaussianRational::one();
    theta[1] = GaussianRational::one();
    make_charge(n, dhym.rho.clone(), ChernPolynomial::linear(n), ThetaPolynomial::new(theta).unwrap()).unwrap()
}

/// Wire form `{"dim": n, "rho": [...], "chern": [...], "theta": [...]}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ChargeSpec {
    pub dim: usize,
    pub rho: Vec<GaussianRational>,
    pub chern: Vec<GaussianRational>,
    pub theta: Vec<GaussianRational>,
}

impl ChargeSpec {
    pub fn build(&self) -> Result<CentralCharge> {
        make_charge(
            self.dim,
            StabilityVector::new(self.rho.clone()),
            ChernPolynomial::new(self.chern.clone())?,
            ThetaPolynomial::new(self.theta.clone())?,
        )
    }
}

impl From<&CentralCharge> for ChargeSpec {
    fn from(z: &CentralCharge) -> Self {
        ChargeSpec {
            dim: z.dim,
            rho: z.rho.rho.clone(),
            chern: z.chern.coeffs.clone(),
            theta: z.theta.coeffs.clone(),
        }
    }
}

/// Named charges accepted on the command line.
pub fn preset(name: &str, n: usize) -> Option<CentralCharge> {
    match name {
        "kstability" => Some(preset_kstability(n)),
        "dhym" => Some(preset_dhym(n)),
        _ => None,
    }
}
