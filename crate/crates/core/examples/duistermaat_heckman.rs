//! Moments of the Hirzebruch surface from vertex data and from triangulation.

use toricloc::localize::{localize_sum, EquivariantIntegrand};
use toricloc::polytope::shapes;
use toricloc::{Rational, Result};

fn main() -> Result<()> {
    let f1 = shapes::hirzebruch_f1();
    let frames = f1.vertex_frames();
    let xi = vec![Rational::from(3), Rational::from(-2)];
    println!("F1: {} vertices, area {}", f1.vertex_count(), f1.volume());

    // ∫_X e^{A} has degree-m part A^{n+m}/(n+m)!, whose integral is (-1)^m/m! ∫_P <x, ξ>^m.
    let mut factorial = Rational::one();
    for m in 0..5u32 {
        if m > 0 {
            factorial = factorial * Rational::from(m as i64);
        }
        let direct = f1.moment(&xi, m)?;
        let integrand = EquivariantIntegrand::a_power(2, 2 + m);
        let mut top = Rational::one();
        for k in 1..=(2 + m as i64) {
            top = top * Rational::from(k);
        }
        let fixed_points = localize_sum(&frames, &xi, &integrand)?.value.re / top;
        let sign = if m % 2 == 0 { Rational::one() } else { Rational::from(-1) };
        println!("  m = {m}: triangulation {direct}, fixed points {}", sign * fixed_points * &factorial);
    }
    Ok(())
}
