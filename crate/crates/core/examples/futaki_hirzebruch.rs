//! Futaki invariant of the first Hirzebruch surface along the fibre direction.

use toricloc::invariants::futaki;
use toricloc::polytope::shapes;
use toricloc::{Rational, Result};

fn main() -> Result<()> {
    let f1 = shapes::hirzebruch_f1();
    for xi in [[0, 1], [1, 0], [1, 1], [0, -1]] {
        let xi: Vec<Rational> = xi.iter().map(|&x| Rational::from(x)).collect();
        println!("F(ξ = {:?}) = {}", xi, futaki(&f1, &xi)?);
    }
    let square = shapes::product_of_lines();
    println!("P1xP1, ξ = (1, 0): {}", futaki(&square, &[Rational::one(), Rational::zero()])?);
    Ok(())
}
