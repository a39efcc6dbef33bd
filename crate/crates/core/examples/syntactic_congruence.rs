//! The syntactic congruence of a subset and the minimal recognizer of a
//! language.

use std::collections::BTreeSet;

use manysorted::fixtures::{cyc4, sig1};
use manysorted::syntactic::{class_description, omega_finite, Recognizer};
use manysorted::{GeneratorSet, Limits, SortedSubset};

fn main() -> manysorted::Result<()> {
    let alg = cyc4();
    let l = SortedSubset::new(alg.carriers(), vec![BTreeSet::from([0, 2])])?;
    let omega = omega_finite(&alg, &l)?;
    println!("Ω of {{0, 2}} in CYC4: {:?}", omega.equivalence().blocks(0));

    let d = class_description(&alg, &l, 0, 1, &Limits::default())?;
    println!("class of 1 from translation preimages: {:?}", d.class);

    // terms whose number of f is 0 mod 4, read in CYC4
    let gens = GeneratorSet::new(&sig1(), &[("x", "s")])?;
    let r = Recognizer::from_parts(&gens, &alg, vec![vec![0]], vec![BTreeSet::from([0])])?;
    let q = r.syntactic_quotient()?;
    println!("syntactic index {}, classes per sort {:?}", q.index, q.class_counts);
    Ok(())
}
