//! Elementary translations and the congruence test through them.

use manysorted::fixtures::cyc4;
use manysorted::translations::{closed_under_translations, enumerate_translations_as_functions};
use manysorted::{Limits, SortedEquivalence};

fn main() -> manysorted::Result<()> {
    let alg = cyc4();
    let limits = Limits::default();
    for t in &enumerate_translations_as_functions(&alg, 0, &limits)?[0] {
        println!("{:>12}  {:?}", t.display(&alg).to_string(), t.function());
    }

    let halves = SortedEquivalence::from_labels(alg.carriers(), vec![vec![0, 1, 0, 1]])?;
    let pairs = SortedEquivalence::from_labels(alg.carriers(), vec![vec![0, 0, 1, 1]])?;
    println!("parity classes: {}", closed_under_translations(&alg, &halves, &limits)?);
    println!("adjacent pairs: {}", closed_under_translations(&alg, &pairs, &limits)?);
    Ok(())
}
