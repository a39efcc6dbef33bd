//! Small named signatures and algebras used by the tests, the examples
//! and the acceptance suite.

use crate::algebra::FiniteAlgebra;
use crate::signature::Signature;
use crate::sorted::SortedSet;

/// Sorts `{s}`; `c: → s`, `f: s → s`.
pub fn sig1() -> Signature {
    Signature::builder("SIG1")
        .sort("s")
        .op("c", &[], "s")
        .op("f", &["s"], "s")
        .build()
        .expect("static signature")
}

/// Sorts `{e, b}`; `tt: → b`, `p: e → b`, `g: e → e`.
pub fn sig2() -> Signature {
    Signature::builder("SIG2")
        .sort("e")
        .sort("b")
        .op("tt", &[], "b")
        .op("p", &["e"], "b")
        .op("g", &["e"], "e")
        .build()
        .expect("static signature")
}

/// SIG2 without its constant.
pub fn sig2_no_constants() -> Signature {
    Signature::builder("SIG2NC")
        .sort("e")
        .sort("b")
        .op("p", &["e"], "b")
        .op("g", &["e"], "e")
        .build()
        .expect("static signature")
}

/// Sorts `{s}`; `e: → s`, `m: s s → s`.
pub fn sig_monoid() -> Signature {
    Signature::builder("MON")
        .sort("s")
        .op("e", &[], "s")
        .op("m", &["s", "s"], "s")
        .build()
        .expect("static signature")
}

/// Sorts `{q, a}`; `start: → q`, letters `a0, a1: → a`,
/// `step: q a → q`. A deterministic automaton read as an algebra.
pub fn sig_automaton() -> Signature {
    Signature::builder("AUT")
        .sort("q")
        .sort("a")
        .op("start", &[], "q")
        .op("a0", &[], "a")
        .op("a1", &[], "a")
        .op("step", &["q", "a"], "q")
        .build()
        .expect("static signature")
}

fn sized(sig: &Signature, sizes: &[usize]) -> SortedSet {
    SortedSet::from_sizes(sig.sorts().to_vec(), sizes)
}

fn sig1_algebra(n: usize, c: usize, f: impl Fn(usize) -> usize) -> FiniteAlgebra {
    let sig = sig1();
    FiniteAlgebra::from_fn(&sig, &sized(&sig, &[n]), |op, args| match op {
        0 => c,
        _ => f(args[0]),
    })
    .expect("static algebra")
}

/// `{0,1}`, `c = 0`, `f(x) = 1 − x`.
pub fn cyc2() -> FiniteAlgebra {
    sig1_algebra(2, 0, |x| 1 - x)
}

/// `{0,1,2}`, `c = 0`, `f(x) = x + 1 mod 3`.
pub fn cyc3() -> FiniteAlgebra {
    sig1_algebra(3, 0, |x| (x + 1) % 3)
}

/// `{0,1,2,3}`, `c = 0`, `f(x) = x + 1 mod 4`.
pub fn cyc4() -> FiniteAlgebra {
    sig1_algebra(4, 0, |x| (x + 1) % 4)
}

/// `{0,1,2}`, `c = 0`, `f` the identity.
pub fn id3() -> FiniteAlgebra {
    sig1_algebra(3, 0, |x| x)
}

/// `{0,1,2,3}`, `c = 0`, `f` the identity.
pub fn id4() -> FiniteAlgebra {
    sig1_algebra(4, 0, |x| x)
}

/// `{0,1,2}`, `c = 0`, `f(x) = min(x + 1, 2)`: a counter saturating at 2.
pub fn sat3() -> FiniteAlgebra {
    sig1_algebra(3, 0, |x| (x + 1).min(2))
}

/// The algebra with exactly one element in every sort.
pub fn one_point(sig: &Signature) -> FiniteAlgebra {
    FiniteAlgebra::from_fn(sig, &sized(sig, &vec![1; sig.num_sorts()]), |_, _| 0)
        .expect("final algebra")
}

/// SIG2 with `e = b = {0,1}`, `tt = 1`, `p(x) = x`, `g(x) = 1 − x`.
pub fn sig2_algebra() -> FiniteAlgebra {
    let sig = sig2();
    FiniteAlgebra::from_fn(&sig, &sized(&sig, &[2, 2]), |op, args| match op {
        0 => 1,
        1 => args[0],
        _ => 1 - args[0],
    })
    .expect("static algebra")
}

/// SIG2 with `e = {0,1,2}`, `b = {0,1}`, `tt = 1`, `p(x) = [x = 0]`,
/// `g(x) = x + 1 mod 3`.
pub fn sig2_cycle() -> FiniteAlgebra {
    let sig = sig2();
    FiniteAlgebra::from_fn(&sig, &sized(&sig, &[3, 2]), |op, args| match op {
        0 => 1,
        1 => usize::from(args[0] == 0),
        _ => (args[0] + 1) % 3,
    })
    .expect("static algebra")
}

/// SIG2 with an empty carrier at `e` and `b = {0,1}`, `tt = 0`.
pub fn sig2_empty_e() -> FiniteAlgebra {
    let sig = sig2();
    FiniteAlgebra::from_fn(&sig, &sized(&sig, &[0, 2]), |_, _| 0).expect("static algebra")
}

/// SIG2 with `e = ∅`, `b = {*}`: subfinal with partial support.
pub fn sig2_partial_subfinal() -> FiniteAlgebra {
    let sig = sig2();
    FiniteAlgebra::from_fn(&sig, &sized(&sig, &[0, 1]), |_, _| 0).expect("static algebra")
}

/// SIG2NC with `e = {0,1}`, `b = {0}`, `g` swapping.
pub fn sig2_no_constants_algebra() -> FiniteAlgebra {
    let sig = sig2_no_constants();
    FiniteAlgebra::from_fn(&sig, &sized(&sig, &[2, 1]), |op, args| match op {
        0 => 0,
        _ => 1 - args[0],
    })
    .expect("static algebra")
}

/// `Z/2` under addition.
pub fn z2() -> FiniteAlgebra {
    let sig = sig_monoid();
    FiniteAlgebra::from_fn(&sig, &sized(&sig, &[2]), |op, args| match op {
        0 => 0,
        _ => (args[0] + args[1]) % 2,
    })
    .expect("static algebra")
}

/// The chain `0 < 1 < 2` under max, with unit 0.
pub fn max3() -> FiniteAlgebra {
    let sig = sig_monoid();
    FiniteAlgebra::from_fn(&sig, &sized(&sig, &[3]), |op, args| match op {
        0 => 0,
        _ => args[0].max(args[1]),
    })
    .expect("static algebra")
}

/// Parity automaton over `{a0, a1}`: states `{0,1}`, `a1` flips.
pub fn parity_automaton() -> FiniteAlgebra {
    let sig = sig_automaton();
    FiniteAlgebra::from_fn(&sig, &sized(&sig, &[2, 2]), |op, args| match op {
        0 => 0,
        1 => 0,
        2 => 1,
        _ => args[0] ^ args[1],
    })
    .expect("static algebra")
}

/// The named fixtures with total carrier at most 5, spanning one- and
/// two-sorted signatures, unary and binary operations, and empty carriers.
pub fn small_fixtures() -> Vec<(&'static str, FiniteAlgebra)> {
    vec![
        ("ONE", one_point(&sig1())),
        ("CYC2", cyc2()),
        ("CYC3", cyc3()),
        ("CYC4", cyc4()),
        ("ID3", id3()),
        ("ID4", id4()),
        ("SAT3", sat3()),
        ("SIG2-A", sig2_algebra()),
        ("SIG2-CYC", sig2_cycle()),
        ("SIG2-EMPTY-E", sig2_empty_e()),
        ("SIG2-SUBFINAL", sig2_partial_subfinal()),
        ("SIG2NC", sig2_no_constants_algebra()),
        ("Z2", z2()),
        ("MAX3", max3()),
        ("PARITY", parity_automaton()),
    ]
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fixtures_are_small() {
        let all = small_fixtures();
        assert!(all.len() >= 6);
        assert!(all.iter().all(|(_, a)| a.total_size() <= 5));
        assert!(all.iter().any(|(_, a)| a.sizes().contains(&0)));
        assert!(all.iter().any(|(_, a)| a.num_sorts() == 2));
    }
}
