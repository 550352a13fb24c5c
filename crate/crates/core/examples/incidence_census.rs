//! Incidence census of the coset g + S, with S the regular representation
//! of GF(4) over GF(2) and g a matrix unit.

use reflexff::census::{CountMode, Coset};
use reflexff::ffla::{FieldSpec, Matrix};
use reflexff::search::construct_regular_rep;

fn main() -> reflexff::Result<()> {
    let f = FieldSpec::of_order(2)?;
    let s = construct_regular_rep(&f, 2)?;
    let g = Matrix::unit(&f, 2, 2, 0, 0);
    let t = Coset::new(&s, &g)?;

    for (coeffs, h) in t.elements() {
        println!("{coeffs:?} -> {:?} rank {}", h.row_vecs(), h.rank());
    }
    println!("|N| by formula: {}", t.incidence_count(CountMode::Formula)?);
    println!("|N| by brute force: {}", t.incidence_count(CountMode::Brute)?);

    let report = t.report()?;
    for v in &report.verdicts {
        println!("{:<24} {:<5} {} vs {}", v.name, v.holds, v.lhs, v.rhs);
    }
    for k in &report.skipped {
        println!("skipped {}: {}", k.name, k.reason);
    }
    Ok(())
}
