//! Seeded random verification and an extremal scan.

use reflexff::ffla::FieldSpec;
use reflexff::search::{find_extremal, random_verify, SearchParams};

fn main() -> reflexff::Result<()> {
    let f = FieldSpec::of_order(2)?;
    let params = SearchParams::random(&f, 3, 3, 3, 2000, 42);
    let report = random_verify(&params)?;
    println!(
        "{} samples, {} non-reflexive, 2n-3 status {:?}",
        report.spaces_examined, report.non_reflexive_count, report.bound_2n_minus_3_status
    );
    let again = random_verify(&params)?;
    println!("same seed, same report: {}", serde_json::to_string(&report).ok() == serde_json::to_string(&again).ok());

    let extremal = find_extremal(&SearchParams::exhaustive(&f, 2, 2, 2))?;
    if let Some(slice) = &extremal.extremal {
        println!("largest mrk among non-reflexive 2x2 spaces: {:?}", slice.max_mrk);
        for w in &slice.witnesses {
            let entries: Vec<_> = w.basis.iter().map(|m| &m.entries).collect();
            println!("  witness with closure dim {}: {entries:?}", w.closure_dim);
        }
    }
    Ok(())
}
