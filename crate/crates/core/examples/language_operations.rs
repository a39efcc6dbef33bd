//! Boolean operations, inverse translations and inverse substitutions on
//! recognizable languages.

use std::collections::BTreeSet;

use manysorted::fixtures::{cyc2, sig1};
use manysorted::syntactic::{lang_boolean, lang_inverse_hom, lang_inverse_translation, BooleanOp, Context, Recognizer};
use manysorted::term::{parse_term, terms_up_to_depth, Substitution};
use manysorted::{GeneratorSet, Limits};

fn main() -> manysorted::Result<()> {
    let sig = sig1();
    let gens = GeneratorSet::new(&sig, &[("x", "s")])?;
    let limits = Limits::default();

    let even = Recognizer::from_parts(&gens, &cyc2(), vec![vec![0]], vec![BTreeSet::from([0])])?;
    let ctx = Context::parse(&sig, &gens, 0, "(f (_))")?;
    let odd = lang_inverse_translation(&even, &ctx)?;
    let either = lang_boolean(BooleanOp::Union, &even, Some(&odd), &limits)?;
    let neither = lang_boolean(BooleanOp::Complement, &either, None, &limits)?;

    let g = Substitution::parse(&sig, &gens, &gens, &[("x", "(f (x))")])?;
    let shifted = lang_inverse_hom(&even, &g)?;

    for t in &terms_up_to_depth(&sig, &gens, 4, 8)[0] {
        println!(
            "{:<16} even {:<5} odd {:<5} union {:<5} neither {:<5} shifted {}",
            t.display(&sig, &gens).to_string(),
            even.contains(t)?,
            odd.contains(t)?,
            either.contains(t)?,
            neither.contains(t)?,
            shifted.contains(t)?,
        );
    }
    let c = parse_term("(c)", &sig, &gens).expect("well-formed");
    println!("(c) is even: {}", even.contains(&c)?);
    Ok(())
}
