//! Exhaustive check of the rank bound over every 2-dimensional space of
//! 2x3 matrices over GF(2), then over GF(3) for 2x2.

use reflexff::ffla::FieldSpec;
use reflexff::search::{exhaustive_verify, gaussian_binomial, SearchParams};

fn main() -> reflexff::Result<()> {
    for (q, u, v) in [(2, 3, 2), (3, 2, 2)] {
        let f = FieldSpec::of_order(q)?;
        let mut params = SearchParams::exhaustive(&f, u, v, 2);
        params.jobs = 2;
        let report = exhaustive_verify(&params)?;
        println!(
            "GF({q}) {v}x{u}: {} spaces (Gaussian binomial {}), {} non-reflexive",
            report.spaces_examined,
            gaussian_binomial(u * v, 2, q)?,
            report.non_reflexive_count
        );
        println!("  mrk histogram of non-reflexive spaces: {:?}", report.mrk_histogram);
        println!(
            "  bound {} with {} violations; max mrk {:?}",
            report.bound_2n_minus_2,
            report.bound_2n_minus_2_violations.len(),
            report.max_mrk_non_reflexive
        );
    }
    Ok(())
}
