//! Bounded checks relating a formation of algebras, its congruence views
//! and its language formation.

use std::collections::BTreeSet;

use manysorted::fixtures::{cyc2, sig1};
use manysorted::formations::*;
use manysorted::syntactic::Recognizer;
use manysorted::{GeneratorSet, Limits};

fn main() -> manysorted::Result<()> {
    let limits = Limits::default();
    let universe = Universe::enumerate(&sig1(), 4, &limits)?;
    let seed = AlgebraPool::from_algebras(&universe, 4, &[cyc2()], &limits)?;
    let pool = formation_closure(&seed, &universe, &limits)?.closed;
    let x = GeneratorSet::new(&sig1(), &[("x", "s")])?;

    let kernels = congruence_formation_query(&pool, &universe, &x, 4, &limits)?;
    let filter = filter_laws_check(&kernels, &pool, &universe, &limits)?;
    println!("{} kernels on one generator, filter laws hold: {}", filter.kernels, filter.holds);

    let theta = theta_roundtrip(&pool, &universe, std::slice::from_ref(&x), &limits)?;
    println!("algebras ↔ kernels: {}", theta.holds);

    let vartheta = vartheta_roundtrip(&pool, &universe, std::slice::from_ref(&x), 100_000, &limits)?;
    println!("kernels ↔ languages: {} ({} languages)", vartheta.holds, vartheta.languages_checked);

    let bps = bps_axioms_check(&pool, &universe, &x, 100_000, &limits)?;
    for a in &bps.axioms {
        println!("  {}: checked {}, undecided {}, holds {}", a.axiom, a.checked, a.undecided, a.holds);
    }

    let even = Recognizer::from_parts(&x, &cyc2(), vec![vec![0]], vec![BTreeSet::from([0])])?;
    let m = language_formation_membership(&pool, &universe, &even, &limits)?;
    println!("even number of f: member {}, syntactic index {}", m.member, m.syntactic_index);
    Ok(())
}
