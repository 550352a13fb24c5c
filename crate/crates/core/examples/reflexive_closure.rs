//! Reflexive closure of a few operator spaces over GF(2).

use reflexff::ffla::{FieldSpec, Matrix};
use reflexff::search::construct_regular_rep;
use reflexff::OperatorSpace;

fn show(name: &str, s: &OperatorSpace) {
    let a = s.analyze();
    println!(
        "{name}: n = {}, closure dim = {}, reflexive = {}, lld = {}",
        a.n, a.closure_dim, a.reflexive, a.lld
    );
}

fn main() -> reflexff::Result<()> {
    let f = FieldSpec::of_order(2)?;

    // Diagonal matrices are reflexive.
    let diag = OperatorSpace::new(&f, 2, 2, vec![Matrix::unit(&f, 2, 2, 0, 0), Matrix::unit(&f, 2, 2, 1, 1)])?;
    show("diagonal", &diag);

    // The regular representation of GF(4) is not: its closure is all of L(U, V).
    let reg = construct_regular_rep(&f, 2)?;
    show("GF(4) acting on itself", &reg);
    let closure = reg.reflexive_closure();
    for (i, m) in closure.basis().iter().enumerate() {
        println!("  closure basis {i}: {:?}", m.row_vecs());
    }

    if let Some(g) = reg.closure_witness() {
        println!("witness g = {:?}, in S: {}", g.row_vecs(), reg.contains(&g)?);
        println!("S + Kg is LLD: {}", reg.hyperplane_lld_check(&g)?);
    }

    let red = reg.reduced_space()?;
    println!("common kernel dimension: {}", red.common_kernel.len());
    Ok(())
}
