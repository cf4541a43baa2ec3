//! Central charges: coefficient tables and their values on toric surfaces.

use toricloc::charge::{charge_value, preset_dhym, preset_dhym_linear_theta, preset_kstability};
use toricloc::localize::Parameter;
use toricloc::polytope::shapes;
use toricloc::Result;

fn main() -> Result<()> {
    let f1 = shapes::hirzebruch_f1();
    for (name, z) in [
        ("kstability", preset_kstability(2)),
        ("dhym", preset_dhym(2)),
        ("dhym, Θ = 1 + c1", preset_dhym_linear_theta(2)),
    ] {
        println!("{name}");
        for l in 0..=2 {
            println!("  a[{},{l}] = {}", 2 - l, z.top_coefficient(l));
        }
        println!("  Z(F1) = {}", charge_value(&z, &f1, &Parameter::Seed(0))?);
        for w in z.warnings() {
            println!("  warning: {w}");
        }
    }
    Ok(())
}
