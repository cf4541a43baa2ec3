//! Building a product test configuration and reading off its fibre data.

use toricloc::invariants::{df_futaki_relation, donaldson_futaki, fibre_at_infinity_contribution};
use toricloc::polytope::shapes;
use toricloc::testconfig::product_tc;
use toricloc::{Rational, Result};

fn main() -> Result<()> {
    let tc = product_tc(&shapes::hirzebruch_f1(), &[0, 1], 1)?;
    println!("total space: {} facets, {} vertices", tc.total().facets().len(), tc.total().vertex_count());
    for (frame, role) in tc.total().vertex_frames().iter().zip(tc.roles()) {
        println!("  {:?} {:?}", frame.vertex, role);
    }

    let x0 = tc.central_fibre();
    println!("central fibre action V0 = {:?}, lift constant {}", x0.v0, x0.lift_constant);
    println!("DF = {}", donaldson_futaki(&tc, 0)?);
    println!("fibre at infinity: {:?}", fibre_at_infinity_contribution(&tc, &Rational::zero(), 0)?
        .iter()
        .map(ToString::to_string)
        .collect::<Vec<_>>());

    let rel = df_futaki_relation(&tc, 0)?;
    println!("DF / F(V0) = {:?} (expected {})", rel.ratio.map(|r| r.to_string()), rel.expected_ratio);

    let twisted = tc.twist(2)?;
    println!("twisted by 2: DF = {}", donaldson_futaki(&twisted, 0)?);
    Ok(())
}
