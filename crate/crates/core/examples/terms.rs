//! Parsing, printing and evaluating terms over generators.

use manysorted::fixtures::{cyc4, sig1};
use manysorted::term::{evaluate, parse_term, print_term, terms_up_to_depth};
use manysorted::{GeneratorSet, SortedMap};

fn main() -> manysorted::Result<()> {
    let sig = sig1();
    let gens = GeneratorSet::new(&sig, &[("x", "s")])?;
    let t = parse_term("(f (f (x)))", &sig, &gens).expect("well-formed");
    println!("{} has depth {}", print_term(&t, &sig, &gens), t.depth());

    let alg = cyc4();
    let assign = SortedMap::new(gens.as_sorted_set(), alg.carriers(), vec![vec![1]])?;
    println!("in CYC4 with x = 1 it evaluates to {}", evaluate(&t, &alg, &assign));

    for t in &terms_up_to_depth(&sig, &gens, 3, 10)[0] {
        println!("  {}", t.display(&sig, &gens));
    }
    Ok(())
}
