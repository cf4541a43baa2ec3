//! Stability indicator of product test configurations under the dHYM charge.

use toricloc::charge::preset_dhym_linear_theta;
use toricloc::invariants::{stability_indicator, z_hat};
use toricloc::polytope::shapes;
use toricloc::testconfig::product_tc;
use toricloc::Result;

fn main() -> Result<()> {
    let z = preset_dhym_linear_theta(2);
    let f1 = shapes::hirzebruch_f1();
    for xi in [[0, 1], [0, -1], [1, 0], [1, 1]] {
        let c = 2;
        let tc = product_tc(&f1, &xi, c)?;
        let hat = z_hat(&tc, &z, 0)?;
        let s = stability_indicator(&tc, &z, 0)?;
        println!("ξ = {xi:?}, c = {c}: Ẑ = {}, σ = {} ({:?})", hat.value(), s.sigma, s.verdict);
    }
    Ok(())
}
