//! Congruence lattices, generated congruences and quotients.

use manysorted::fixtures::{cyc4, sig2_algebra};
use manysorted::Limits;

fn main() -> manysorted::Result<()> {
    let limits = Limits::default();
    for (name, alg) in [("CYC4", cyc4()), ("SIG2", sig2_algebra())] {
        let congs = alg.congruences(&limits)?;
        println!("{name}: {} congruences", congs.len());
        for c in &congs {
            println!("  classes {:?}", c.equivalence().class_counts());
        }
    }

    let alg = cyc4();
    let c = alg.congruence_generated(&[(0, 0, 2)])?;
    let (quotient, _) = alg.quotient(&c)?;
    println!("CYC4 / (0 ~ 2) has table f = {:?}", quotient.table(1));
    Ok(())
}
