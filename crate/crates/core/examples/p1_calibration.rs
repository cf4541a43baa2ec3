//! Fixed-point sums on the projective line, compared with direct integration.

use toricloc::localize::{evaluate, EquivariantIntegrand, Parameter};
use toricloc::polytope::shapes;
use toricloc::{Rational, Result};

fn main() -> Result<()> {
    let line = shapes::fubini_study_line();
    let frames = line.vertex_frames();
    println!("P^1 as [-1, 1], length {}", line.volume());

    for frame in &frames {
        println!("  vertex {:?}  edge {:?}  tight facets {:?}", frame.vertex, frame.edges[0], frame.leaves);
    }

    let a = EquivariantIntegrand::a_power(1, 1);
    let c = EquivariantIntegrand::monomial(1, 1, 0, 1, 0);
    for (name, integrand) in [("A", &a), ("C", &c)] {
        let value = evaluate(&frames, &[], &Parameter::Seed(0), integrand)?;
        println!("  ∫ {name} = {value}");
    }

    // Above top degree the answer depends on the parameter.
    let a3 = EquivariantIntegrand::a_power(1, 3);
    for xi in [1, 2, -3] {
        let value = evaluate(&frames, &[], &Parameter::Fixed(vec![Rational::from(xi)]), &a3)?;
        println!("  ∫ A^3 at ξ = {xi}: {value}");
    }
    Ok(())
}
