//! The stability indicator of a product test configuration equals minus the
//! obstruction pairing of its central fibre.

use toricloc::charge::{preset_dhym, preset_dhym_linear_theta};
use toricloc::invariants::{fz_hat, stability_indicator, theorem_residual};
use toricloc::polytope::shapes;
use toricloc::testconfig::product_tc;
use toricloc::Result;

fn main() -> Result<()> {
    let cases = [
        ("P1", shapes::fubini_study_line(), vec![1], 2),
        ("F1", shapes::hirzebruch_f1(), vec![0, 1], 1),
        ("F1", shapes::hirzebruch_f1(), vec![1, 1], 2),
        ("P1xP1", shapes::product_of_lines(), vec![2, -1], 4),
    ];
    for (name, base, xi, c) in cases {
        let tc = product_tc(&base, &xi, c)?;
        let n = tc.dim();
        for z in [preset_dhym(n), preset_dhym_linear_theta(n)] {
            let sigma = stability_indicator(&tc, &z, 0)?.sigma;
            let x0 = tc.central_fibre();
            let tau = fz_hat(&x0.polytope, &x0.v0, &z, 0)?.tau;
            let residual = theorem_residual(&tc, &z, 0)?;
            println!("{name} ξ = {xi:?}: σ = {sigma}, τ = {tau}, σ + τ = {residual}");
        }
    }
    Ok(())
}
