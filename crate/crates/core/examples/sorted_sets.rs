//! Sorted sets, subsets, equivalences and saturation.

use std::collections::BTreeSet;

use manysorted::{SortId, SortedEquivalence, SortedSet, SortedSubset};

fn main() -> manysorted::Result<()> {
    // two sorts, the second one empty
    let set = SortedSet::new(
        vec![SortId::new("a"), SortId::new("b")],
        vec![vec!["p".into(), "q".into(), "r".into()], vec![]],
    )?;
    println!("sizes {:?}, subfinal: {}", set.sizes(), set.is_subfinal());

    let eq = SortedEquivalence::from_labels(&set, vec![vec![0, 0, 1], vec![]])?;
    let x = SortedSubset::new(&set, vec![BTreeSet::from([0]), BTreeSet::new()])?;
    let sat = eq.saturate(&x)?;
    println!("[{{p}}] = {:?}, saturated: {}", sat.members(0), eq.is_saturated(&sat)?);
    println!("complement saturated too: {}", eq.is_saturated(&sat.complement())?);

    println!("{} equivalences on this set", SortedEquivalence::enumerate_all(&set).len());
    Ok(())
}
