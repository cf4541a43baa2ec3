//! Futaki, Donaldson–Futaki and central-charge invariants, as exact localisation sums.
//!
//! Quantities involving the phase of `Z(X, α)` are computed with `conj(Z)` in
//! place of `e^{-iφ}`; they are `|Z|` times the phase-normalised quantity and
//! have the same sign.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::charge::{charge_value, CentralCharge, ChargeSpec};
use crate::error::{Error, Result};
use crate::exact::{binomial, GaussianRational, Rational};
use crate::localize::{evaluate, EquivariantIntegrand, LocalizedValue, Parameter};
use crate::polytope::DelzantPolytope;
use crate::testconfig::{FibreRole, ToricTestConfiguration};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    Positive,
    Zero,
    Negative,
}

impl Verdict {
    pub fn of(x: &Rational) -> Self {
        match x.signum() {
            1 => Verdict::Positive,
            0 => Verdict::Zero,
            _ => Verdict::Negative,
        }
    }
}

/// A named invariant with its per-`(k,l)` constituents.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct InvariantReport {
    pub name: String,
    pub inputs: String,
    pub rational: GaussianRational,
    pub two_pi_power: i32,
    pub breakdown: BTreeMap<String, LocalizedValue>,
    pub verdict: Option<Verdict>,
}

impl InvariantReport {
    pub fn new(name: &str, inputs: String, value: LocalizedValue) -> Self {
        InvariantReport {
            name: name.to_string(),
            inputs,
            rational: value.value,
            two_pi_power: value.two_pi_power,
            breakdown: BTreeMap::new(),
            verdict: None,
        }
    }

    pub fn value(&self) -> LocalizedValue {
        LocalizedValue { value: self.rational.clone(), two_pi_power: self.two_pi_power }
    }
}

/// Short stable fingerprint of a serialisable input.
pub fn digest<T: Serialize>(inputs: &T) -> String {
    let bytes = serde_json::to_vec(inputs).expect("inputs serialise");
    Sha256::digest(&bytes).iter().take(8).map(|b| format!("{b:02x}")).collect()
}

fn breakdown_key(k: usize, l: usize) -> String {
    format!("{k},{l}")
}

/// `(C - R)^k` expanded binomially.
fn relative_c_power(dim: usize, k: u32) -> EquivariantIntegrand {
    let mut out = EquivariantIntegrand::zero(dim);
    for j in 0..=k {
        let coefficient = Rational::from(binomial(k as u64, j as u64)) * Rational::from(if j % 2 == 0 { 1 } else { -1 });
        out = out.with_term(coefficient, 0, k - j, j);
    }
    out
}

fn base_pairing(p: &DelzantPolytope, a: u32, c: u32, seed: u64) -> Result<Rational> {
    let value = evaluate(&p.vertex_frames(), &[], &Parameter::Seed(seed), &EquivariantIntegrand::monomial(p.dim(), 1, a, c, 0))?;
    Ok(value.value.re)
}

/// `μ_l = (α^l c1^{n-l}) / α^n` for `l = 0..=n`.
pub fn mu_effective(p: &DelzantPolytope, seed: u64) -> Result<Vec<Rational>> {
    let n = p.dim() as u32;
    let top = base_pairing(p, n, 0, seed)?;
    if top.is_zero() {
        return Err(Error::ZeroVolume);
    }
    (0..=n).map(|l| Ok(base_pairing(p, l, n - l, seed)? / &top)).collect()
}

/// `μ_{k,l} = (α^l ∪ c1^k ∪ Θ) / α^n`, indexed `[k][l]`.
pub fn mu_table(p: &DelzantPolytope, charge: &CentralCharge, seed: u64) -> Result<Vec<Vec<GaussianRational>>> {
    let n = p.dim();
    if charge.dim() != n {
        return Err(Error::DimensionMismatch { expected: charge.dim(), got: n });
    }
    let mu = mu_effective(p, seed)?;
    let theta = charge.theta().coeffs();
    let mut table = vec![vec![GaussianRational::zero(); n + 1]; n + 1];
    for (k, row) in table.iter_mut().enumerate() {
        for (l, entry) in row.iter_mut().enumerate() {
            if k + l <= n {
                *entry = theta[n - k - l].scale(&mu[l]);
            }
        }
    }
    Ok(table)
}

/// Futaki invariant `-(1/n) ∫ (ω - h̄)^n ∪ (Ric ω + Δh̄)` with the barycentred hamiltonian.
pub fn futaki(p: &DelzantPolytope, xi: &[Rational]) -> Result<LocalizedValue> {
    let n = p.dim();
    if xi.len() != n {
        return Err(Error::DimensionMismatch { expected: n, got: xi.len() });
    }
    let frames = p.vertex_frames();
    let at_xi = Parameter::Fixed(xi.to_vec());
    // ∫ A^n = n! vol and ∫ A^{n+1} = -(n+1)! ∫<x, ξ>, so the barycentre is a ratio of the two.
    let top = evaluate(&frames, &[], &Parameter::Seed(0), &EquivariantIntegrand::a_power(n, n as u32))?;
    let first = evaluate(&frames, &[], &at_xi, &EquivariantIntegrand::a_power(n, n as u32 + 1))?;
    let barycentre = -first.value.re / (top.value.re * Rational::from(n as i64 + 1));
    let integrand = &EquivariantIntegrand::a_power(n, n as u32).shift_a(&barycentre) * &EquivariantIntegrand::monomial(n, 1, 0, 1, 0);
    let value = evaluate(&frames, &[], &at_xi, &integrand)?;
    Ok(value.scale(&GaussianRational::real(Rational::normalize(-1, n as i64)?)))
}

fn tc_evaluate(tc: &ToricTestConfiguration, integrand: &EquivariantIntegrand, seed: u64) -> Result<LocalizedValue> {
    evaluate(&tc.total().vertex_frames(), &tc.fibre_facets(), &Parameter::Seed(seed), integrand)
}

/// `DF = (nμ/(n+1)) A^{n+1} - (C - R) A^n` on the total space.
pub fn donaldson_futaki(tc: &ToricTestConfiguration, seed: u64) -> Result<LocalizedValue> {
    let n = tc.dim();
    let d = n + 1;
    let mu = mu_effective(tc.base(), seed)?[n - 1].clone();
    let coefficient = Rational::from(n as i64) * mu / Rational::from(d as i64);
    let integrand = &EquivariantIntegrand::monomial(d, coefficient, d as u32, 0, 0)
        - &(&relative_c_power(d, 1) * &EquivariantIntegrand::a_power(d, n as u32));
    tc_evaluate(tc, &integrand, seed)
}

fn check_charge(tc_dim: usize, charge: &CentralCharge) -> Result<()> {
    if charge.dim() != tc_dim {
        return Err(Error::DimensionMismatch { expected: charge.dim(), got: tc_dim });
    }
    Ok(())
}

/// `Z(X, A) = Σ_l a_{n-l,l}/(l+1) · A^{l+1} (C - R)^{n-l}`.
pub fn z_tc(tc: &ToricTestConfiguration, charge: &CentralCharge, seed: u64) -> Result<LocalizedValue> {
    let n = tc.dim();
    check_charge(n, charge)?;
    let d = n + 1;
    let mut integrand = EquivariantIntegrand::zero(d);
    for l in 0..=n {
        let weight = charge.top_coefficient(l).scale(&Rational::normalize(1, l as i64 + 1)?);
        let term = &EquivariantIntegrand::a_power(d, l as u32 + 1) * &relative_c_power(d, (n - l) as u32);
        integrand = &integrand + &term.scale(&weight);
    }
    tc_evaluate(tc, &integrand, seed)
}

/// `DF̂_l = A^{l+1}(C - R)^{n-l} - (l+1)/(n+1) μ_l A^{n+1}` for every `l`.
pub fn df_hat_terms(tc: &ToricTestConfiguration, seed: u64) -> Result<Vec<LocalizedValue>> {
    let n = tc.dim();
    let d = n + 1;
    let mu = mu_effective(tc.base(), seed)?;
    (0..=n)
        .map(|l| {
            let correction = Rational::normalize(l as i64 + 1, d as i64)? * &mu[l];
            let integrand = &(&EquivariantIntegrand::a_power(d, l as u32 + 1) * &relative_c_power(d, (n - l) as u32))
                - &EquivariantIntegrand::monomial(d, correction, d as u32, 0, 0);
            tc_evaluate(tc, &integrand, seed)
        })
        .collect()
}

fn tc_inputs(tc: &ToricTestConfiguration, charge: &CentralCharge) -> String {
    digest(&(tc.to_spec(), ChargeSpec::from(charge)))
}

/// `Ẑ = Z(X, A) - A^{n+1}/((n+1) α^n) · Z(X, α) = Σ a_{k,l}/(l+1) · DF̂_{k,l}`.
pub fn z_hat(tc: &ToricTestConfiguration, charge: &CentralCharge, seed: u64) -> Result<InvariantReport> {
    let n = tc.dim();
    check_charge(n, charge)?;
    let terms = df_hat_terms(tc, seed)?;
    let mut total = GaussianRational::zero();
    let mut breakdown = BTreeMap::new();
    for (l, term) in terms.into_iter().enumerate() {
        let weight = charge.top_coefficient(l).scale(&Rational::normalize(1, l as i64 + 1)?);
        total += &(&term.value * &weight);
        breakdown.insert(breakdown_key(n - l, l), term);
    }
    let mut report = InvariantReport::new("z_hat", tc_inputs(tc, charge), LocalizedValue::new(total, n as i32 + 1));
    report.breakdown = breakdown;
    Ok(report)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Stability {
    /// `Im(conj(Z(X, α)) · Ẑ)` at bookkeeping power `(2π)^{2n+1}`.
    pub sigma: Rational,
    pub verdict: Verdict,
}

pub fn stability_indicator(tc: &ToricTestConfiguration, charge: &CentralCharge, seed: u64) -> Result<Stability> {
    let z = charge_value(charge, tc.base(), &Parameter::Seed(seed))?;
    if z.is_zero() {
        return Err(Error::ZeroCentralCharge);
    }
    let zhat = z_hat(tc, charge, seed)?;
    let sigma = z.value.imag_of_product(&zhat.rational);
    Ok(Stability { verdict: Verdict::of(&sigma), sigma })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FzHat {
    /// `|Z| · F̂^Z(ξ)` at bookkeeping power `(2π)^{2n}`.
    pub tau: Rational,
    /// Contribution of each `(k, l)`.
    pub breakdown: BTreeMap<String, Rational>,
}

/// Lift-invariant pairings `α_ξ^{l+1} c1_ξ^{n-l} - (l+1)/(n+1) μ_l α_ξ^{n+1}` at `ξ`.
pub fn normalised_pairings(p: &DelzantPolytope, xi: &[Rational], seed: u64) -> Result<Vec<LocalizedValue>> {
    let n = p.dim();
    if xi.len() != n {
        return Err(Error::DimensionMismatch { expected: n, got: xi.len() });
    }
    let mu = mu_effective(p, seed)?;
    let frames = p.vertex_frames();
    (0..=n)
        .map(|l| {
            let correction = Rational::normalize(l as i64 + 1, n as i64 + 1)? * &mu[l];
            let integrand = EquivariantIntegrand::monomial(n, 1, l as u32 + 1, (n - l) as u32, 0)
                .with_term(-correction, n as u32 + 1, 0, 0);
            evaluate(&frames, &[], &Parameter::Fixed(xi.to_vec()), &integrand)
        })
        .collect()
}

/// `τ = -Σ_l 1/(l+1) · Im(conj(Z) · a_{n-l,l} · E_l(ξ))`.
pub fn fz_hat(p: &DelzantPolytope, xi: &[Rational], charge: &CentralCharge, seed: u64) -> Result<FzHat> {
    let n = p.dim();
    if charge.dim() != n {
        return Err(Error::DimensionMismatch { expected: charge.dim(), got: n });
    }
    let z = charge_value(charge, p, &Parameter::Seed(seed))?;
    if z.is_zero() {
        return Err(Error::ZeroCentralCharge);
    }
    let pairings = normalised_pairings(p, xi, seed)?;
    let mut tau = Rational::zero();
    let mut breakdown = BTreeMap::new();
    for (l, e) in pairings.iter().enumerate() {
        let weighted = charge.top_coefficient(l) * &e.value;
        let term = -z.value.imag_of_product(&weighted) / Rational::from(l as i64 + 1);
        tau += &term;
        breakdown.insert(breakdown_key(n - l, l), term);
    }
    Ok(FzHat { tau, breakdown })
}

/// `σ(TC) + τ(X₀, V₀)`, which vanishes when the invariant of the test
/// configuration equals `-2π` times the Futaki-type invariant of its central fibre.
pub fn theorem_residual(tc: &ToricTestConfiguration, charge: &CentralCharge, seed: u64) -> Result<Rational> {
    let sigma = stability_indicator(tc, charge, seed)?.sigma;
    let x0 = tc.central_fibre();
    let tau = fz_hat(&x0.polytope, &x0.v0, charge, seed)?.tau;
    Ok(sigma + tau)
}

/// Contribution of the fibre at infinity to each `DF̂_l`.
///
/// Under `ζ` the whole bottom facet is fixed, with constant hamiltonian `h∞`
/// and normal weight `-1`. The contribution is
/// `∫_X [(α - h∞)^{l+1} c1^{n-l} - (l+1)/(n+1) μ_l (α - h∞)^{n+1}] / e(N∞)`.
/// `lift_shift` adds a constant to the hamiltonian before restricting.
pub fn fibre_at_infinity_contribution(tc: &ToricTestConfiguration, lift_shift: &Rational, seed: u64) -> Result<Vec<Rational>> {
    let n = tc.dim();
    let zeta = tc.zeta();
    let frames = tc.total().vertex_frames();
    let mut h_inf: Option<Rational> = None;
    let mut euler: Option<Rational> = None;
    for (frame, role) in frames.iter().zip(tc.roles()) {
        if role != FibreRole::OnXInfinity {
            continue;
        }
        let h = crate::exact::dot_rat(&frame.vertex, &zeta) + lift_shift;
        let w = crate::exact::dot_int_rat(&frame.edges[tc.vertical_edge(frame)], &zeta);
        let e = -w;
        if h_inf.get_or_insert_with(|| h.clone()) != &h || euler.get_or_insert_with(|| e.clone()) != &e {
            return Err(Error::NormalisationViolation("fibre at infinity is not fixed with constant data".into()));
        }
    }
    let (h_inf, euler) = (h_inf.ok_or(Error::MissingFibreData)?, euler.ok_or(Error::MissingFibreData)?);
    let mu = mu_effective(tc.base(), seed)?;
    let base_frames = tc.base().vertex_frames();
    let shift = -h_inf;
    (0..=n)
        .map(|l| {
            let correction = Rational::normalize(l as i64 + 1, n as i64 + 1)? * &mu[l];
            let head = &EquivariantIntegrand::a_power(n, l as u32 + 1).shift_a(&shift)
                * &EquivariantIntegrand::monomial(n, 1, 0, (n - l) as u32, 0);
            let tail = EquivariantIntegrand::a_power(n, n as u32 + 1).shift_a(&shift).scale(&GaussianRational::real(correction));
            // The circle acts trivially on X∞, so only ordinary (degree n) pairings survive.
            let integrand = (&head - &tail).degree_part(n as u32);
            let value = evaluate(&base_frames, &[], &Parameter::Seed(seed), &integrand)?;
            Ok(value.value.re / &euler)
        })
        .collect()
}

/// Comparison of `DF(TC)` with the Futaki invariant of the central fibre.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DfFutakiRelation {
    pub df: LocalizedValue,
    pub futaki_v0: LocalizedValue,
    /// `DF_rat / F_rat(V₀)`, when the latter is nonzero.
    pub ratio: Option<Rational>,
    /// Ratio for `DF = -π F(V₀)`: `-1/2`.
    pub expected_ratio: Rational,
    pub consistent: bool,
}

pub fn df_futaki_relation(tc: &ToricTestConfiguration, seed: u64) -> Result<DfFutakiRelation> {
    let df = donaldson_futaki(tc, seed)?;
    let x0 = tc.central_fibre();
    let futaki_v0 = futaki(&x0.polytope, &x0.v0)?;
    let ratio = df.real_part().checked_div(futaki_v0.real_part()).ok();
    let expected_ratio = Rational::normalize(-1, 2)?;
    let consistent = match &ratio {
        Some(r) => *r == expected_ratio,
        None => df.is_zero(),
    };
    Ok(DfFutakiRelation { df, futaki_v0, ratio, expected_ratio, consistent })
}
