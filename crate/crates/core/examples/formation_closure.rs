//! Bounded formation closure and the formation test.

use manysorted::fixtures::{cyc4, sig1};
use manysorted::formations::{formation_closure, is_formation, AlgebraPool, FormationMode, Universe};
use manysorted::Limits;

fn main() -> manysorted::Result<()> {
    let limits = Limits::default();
    let universe = Universe::enumerate(&sig1(), 4, &limits)?;
    println!("{} algebras of size at most 4, up to isomorphism", universe.len());

    let seed = AlgebraPool::from_algebras(&universe, 4, &[cyc4()], &limits)?;
    let report = formation_closure(&seed, &universe, &limits)?;
    println!("closure has {} members after {} rounds", report.closed.len(), report.rounds);
    for entry in &report.trace {
        println!("  round {} {} U{} from {:?}", entry.round, entry.rule, entry.added, entry.parents);
    }
    if let Some(e) = &report.escape {
        println!("escapes the bound: U{} × U{} has sizes {:?}", e.factors.0, e.factors.1, e.algebra.sizes());
    }

    let mut broken = report.closed.clone();
    let cyc2 = universe.locate(&manysorted::fixtures::cyc2(), &limits)?.expect("in the universe");
    broken.remove_index(cyc2);
    let verdict = is_formation(&broken, &universe, FormationMode::Standard);
    println!("without CYC2: holds {}, failed {:?}, witness {:?}", verdict.holds, verdict.failed, verdict.witness);
    Ok(())
}
