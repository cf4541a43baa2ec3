//! Cross-checks of fixed-point sums against polytope integrals computed in test code.

mod common;

use common::*;
use toricloc::charge::{charge_value, preset_dhym, preset_dhym_linear_theta, preset_kstability};
use toricloc::invariants::{
    df_futaki_relation, df_hat_terms, donaldson_futaki, futaki, fz_hat, mu_effective, normalised_pairings, stability_indicator,
    z_hat, z_tc,
};
use toricloc::localize::{localize_sum, localize_sum_relative, EquivariantIntegrand, LocalizedValue, Parameter};
use toricloc::polytope::{shapes, Pulling};
use toricloc::testconfig::product_tc;
use toricloc::{GaussianRational, Rational};

fn real(x: Rational) -> GaussianRational {
    GaussianRational::real(x)
}

#[test]
fn polygon_moments_match_an_independent_fan() {
    let mut rng = rng(1);
    for p in [shapes::hirzebruch_f1(), shapes::unit_square(), shapes::simplex(2, 3), shapes::product_of_lines()] {
        for _ in 0..3 {
            let xi = random_vector(&mut rng, 2, 6);
            for m in 0..5 {
                assert_eq!(p.moment(&xi, m).unwrap(), polygon_moment(&p.vertices(), &xi, m));
                assert_eq!(p.boundary_moment(&xi, m).unwrap(), polygon_boundary_moment(&p, &xi, m));
            }
        }
    }
}

#[test]
fn hirzebruch_integrals_by_hand() {
    let f1 = shapes::hirzebruch_f1();
    let y = ints(&[0, 1]);
    // ∫∫ y over the trapezoid 0 <= y <= 1, 0 <= x <= 2 - y.
    assert_eq!(f1.moment(&y, 1).unwrap(), q(2, 3));
    // Facets: bottom (y=0) contributes 0, top 1·1, left ∫_0^1 y dy, slanted ∫_0^1 y dy.
    assert_eq!(f1.boundary_moment(&y, 1).unwrap(), Rational::from(2));
}

#[test]
fn pulling_choices_agree_on_total_spaces() {
    let tc = product_tc(&shapes::hirzebruch_f1(), &[1, 1], 1).unwrap();
    let xi = ints(&[1, -2, 3]);
    for m in 0..4 {
        assert_eq!(
            tc.total().moment_with(&xi, m, Pulling::FirstVertex).unwrap(),
            tc.total().moment_with(&xi, m, Pulling::LastVertex).unwrap()
        );
    }
    assert_eq!(tc.total().volume(), polygon_moment(&tc.base().vertices(), &ints(&[1, 1]), 1) + tc.base().volume());
}

#[test]
fn pure_pairings_match_the_volume_polynomial() {
    let mut rng = rng(2);
    for p in [shapes::fubini_study_line(), shapes::hirzebruch_f1(), shapes::simplex(2, 1), shapes::product_of_lines()] {
        let n = p.dim() as u32;
        let xi = random_generic(&mut rng, &p);
        let zero = vec![Rational::zero(); p.dim()];
        for a in 0..=n {
            let value = localize_sum(&p.vertex_frames(), &xi, &EquivariantIntegrand::monomial(n as usize, 1, a, n - a, 0)).unwrap();
            assert_eq!(value.value, real(pairing_oracle(&p, &[], &zero, a, n - a, 0)), "A^{a} C^{}", n - a);
        }
    }
}

#[test]
fn excess_pairings_match_the_volume_polynomial() {
    let p = shapes::hirzebruch_f1();
    let xi = ints(&[3, -2]);
    for (a, c) in [(3, 0), (2, 1), (1, 2), (0, 3), (4, 0), (2, 2)] {
        let value = localize_sum(&p.vertex_frames(), &xi, &EquivariantIntegrand::monomial(2, 1, a, c, 0)).unwrap();
        assert_eq!(value.value, real(pairing_oracle(&p, &[], &xi, a, c, 0)), "A^{a} C^{c}");
    }
}

#[test]
fn relative_pairings_match_the_volume_polynomial() {
    for (base, xi, c) in [(shapes::fubini_study_line(), vec![1], 2), (shapes::hirzebruch_f1(), vec![0, 1], 1)] {
        let tc = product_tc(&base, &xi, c).unwrap();
        let d = tc.dim() as u32 + 1;
        let frames = tc.total().vertex_frames();
        let param = toricloc::localize::generic_parameter(&frames, 4);
        let zero = vec![Rational::zero(); d as usize];
        for a in 0..=d {
            for r in 0..=(d - a).min(2) {
                let cc = d - a - r;
                let value = localize_sum_relative(&frames, &tc.fibre_facets(), &param, &EquivariantIntegrand::monomial(d as usize, 1, a, cc, r))
                    .unwrap();
                let oracle = pairing_oracle(tc.total(), &tc.fibre_facets(), &zero, a, cc, r);
                assert_eq!(value.value, real(oracle), "A^{a} C^{cc} R^{r}");
            }
        }
    }
}

/// `(C - R)^k A^a` on a test configuration, by the oracle.
fn relative_oracle(tc: &toricloc::ToricTestConfiguration, a: u32, k: u32) -> Rational {
    let zero = vec![Rational::zero(); tc.dim() + 1];
    let mut total = Rational::zero();
    for j in 0..=k {
        let binom = Rational::from(toricloc::exact::binomial(k as u64, j as u64));
        let sign = if j % 2 == 0 { Rational::one() } else { Rational::from(-1) };
        total += &(binom * sign * pairing_oracle(tc.total(), &tc.fibre_facets(), &zero, a, k - j, j));
    }
    total
}

#[test]
fn donaldson_futaki_and_z_hat_on_hirzebruch() {
    let tc = product_tc(&shapes::hirzebruch_f1(), &[0, 1], 1).unwrap();
    let n = 2;
    let zero = vec![Rational::zero(); 2];
    let alpha2 = pairing_oracle(tc.base(), &[], &zero, 2, 0, 0);
    let alpha_c = pairing_oracle(tc.base(), &[], &zero, 1, 1, 0);
    let mu = &alpha_c / &alpha2;
    assert_eq!(mu, q(5, 3));
    let a3 = relative_oracle(&tc, 3, 0);
    let a2_crel = relative_oracle(&tc, 2, 1);
    let df = Rational::from(n) * &mu / Rational::from(n + 1) * &a3 - &a2_crel;
    assert_eq!(df, q(4, 9));
    assert_eq!(donaldson_futaki(&tc, 3).unwrap(), LocalizedValue::new(df.clone(), 3));

    let zhat = q(1, 2) * &a2_crel - &a3 / (Rational::from(3) * &alpha2) * &alpha_c;
    assert_eq!(zhat, q(-2, 9));
    assert_eq!(z_hat(&tc, &preset_kstability(2), 3).unwrap().value(), LocalizedValue::new(zhat.clone(), 3));
    // The two are related by a sign: Ẑ = -DF/n.
    assert_eq!(zhat, -df / Rational::from(n));
}

#[test]
fn z_tc_matches_oracle_for_dhym() {
    let tc = product_tc(&shapes::product_of_lines(), &[1, 1], 3).unwrap();
    let z = preset_dhym(2);
    let mut expected = GaussianRational::zero();
    for l in 0..=2u32 {
        let w = z.top_coefficient(l as usize).scale(&q(1, l as i64 + 1));
        expected += &w.scale(&relative_oracle(&tc, l + 1, 2 - l));
    }
    assert_eq!(z_tc(&tc, &z, 2).unwrap(), LocalizedValue::new(expected, 3));
}

#[test]
fn z_hat_is_z_minus_scaled_charge() {
    for (base, xi, c) in [(shapes::hirzebruch_f1(), vec![1, 0], 1), (shapes::product_of_lines(), vec![1, 1], 3)] {
        let tc = product_tc(&base, &xi, c).unwrap();
        for z in [preset_dhym(2), preset_dhym_linear_theta(2)] {
            let a3 = relative_oracle(&tc, 3, 0);
            let alpha2 = pairing_oracle(&base, &[], &[Rational::zero(), Rational::zero()], 2, 0, 0);
            let charge = charge_value(&z, &base, &Parameter::Seed(1)).unwrap().value;
            let zx = z_tc(&tc, &z, 1).unwrap().value;
            let expected = zx - charge.scale(&(a3 / (Rational::from(3) * alpha2)));
            assert_eq!(z_hat(&tc, &z, 1).unwrap().rational, expected);
        }
    }
}

#[test]
fn futaki_matches_the_boundary_formula() {
    let mut rng = rng(5);
    for p in [shapes::hirzebruch_f1(), shapes::product_of_lines(), shapes::simplex(3, 1), shapes::cube(3, 0, 2)] {
        let n = p.dim() as u64;
        for _ in 0..3 {
            let xi = random_vector(&mut rng, p.dim(), 7);
            let bary = p.moment(&xi, 1).unwrap() / p.volume();
            let oracle = Rational::from(toricloc::exact::factorial(n - 1))
                * (p.boundary_moment(&xi, 1).unwrap() - bary * p.boundary_moment(&xi, 0).unwrap());
            assert_eq!(futaki(&p, &xi).unwrap(), LocalizedValue::new(oracle, n as i32));
        }
    }
}

#[test]
fn normalised_pairings_match_oracle_at_special_directions() {
    let p = shapes::hirzebruch_f1();
    let mu = mu_effective(&p, 0).unwrap();
    for xi in [ints(&[0, 1]), ints(&[0, -1]), ints(&[1, 0]), ints(&[2, 5])] {
        let values = normalised_pairings(&p, &xi, 0).unwrap();
        for (l, v) in values.iter().enumerate() {
            let l32 = l as u32;
            let head = pairing_oracle(&p, &[], &xi, l32 + 1, 2 - l32, 0);
            let tail = pairing_oracle(&p, &[], &xi, 3, 0, 0);
            let expected = head - Rational::normalize(l as i64 + 1, 3).unwrap() * &mu[l] * tail;
            assert_eq!(v.value, real(expected), "l = {l}, ξ = {xi:?}");
        }
    }
}

#[test]
fn stability_equals_minus_tau_on_central_fibre() {
    let tc = product_tc(&shapes::hirzebruch_f1(), &[0, 1], 1).unwrap();
    for (z, vanishes) in [(preset_dhym(2), true), (preset_dhym_linear_theta(2), false)] {
        let sigma = stability_indicator(&tc, &z, 2).unwrap().sigma;
        let x0 = tc.central_fibre();
        let tau = fz_hat(&x0.polytope, &x0.v0, &z, 2).unwrap().tau;
        assert_eq!(sigma.is_zero(), vanishes);
        assert_eq!(sigma, -tau);
    }
}

#[test]
fn df_terms_reassemble_z_hat() {
    let tc = product_tc(&shapes::hirzebruch_f1(), &[1, 0], 1).unwrap();
    let z = preset_dhym(2);
    let terms = df_hat_terms(&tc, 1).unwrap();
    let mut total = GaussianRational::zero();
    for (l, t) in terms.iter().enumerate() {
        total += &(&t.value * &z.top_coefficient(l).scale(&q(1, l as i64 + 1)));
    }
    let report = z_hat(&tc, &z, 1).unwrap();
    assert_eq!(report.rational, total);
    assert_eq!(report.breakdown.len(), 3);
}

#[test]
fn donaldson_futaki_against_central_fibre_futaki() {
    let tc = product_tc(&shapes::hirzebruch_f1(), &[0, 1], 1).unwrap();
    let rel = df_futaki_relation(&tc, 1).unwrap();
    assert_eq!(rel.df, LocalizedValue::new(q(4, 9), 3));
    assert_eq!(rel.futaki_v0, LocalizedValue::new(q(2, 9), 2));
    assert_eq!(rel.ratio, Some(Rational::from(2)));
    assert!(!rel.consistent);
}
