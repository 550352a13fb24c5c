//! Regular representations of GF(p^n) over GF(p).

use reflexff::ffla::FieldSpec;
use reflexff::search::{construct_regular_rep, extension_of, multiplication_matrix};

fn main() -> reflexff::Result<()> {
    for (p, n) in [(2, 2), (2, 3), (3, 2), (5, 2)] {
        let base = FieldSpec::new(p, 1, None)?;
        let ext = extension_of(&base, n)?;
        let s = construct_regular_rep(&base, n)?;
        let (mrk, _) = s.mrk()?;
        println!(
            "GF({}) over GF({p}): modulus {:?}, mrk {mrk}, closure dim {} of {}",
            ext.order(),
            ext.modulus(),
            s.closure_dim(),
            n * n
        );
    }
    let base = FieldSpec::new(2, 1, None)?;
    let ext = extension_of(&base, 3)?;
    let a = ext.primitive_element();
    println!("multiplication by {a} in GF(8): {:?}", multiplication_matrix(&base, &ext, a).row_vecs());
    Ok(())
}
