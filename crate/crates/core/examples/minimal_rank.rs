//! Minimal rank and rank distribution of a random operator space.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use reflexff::ffla::{FieldSpec, Matrix};
use reflexff::OperatorSpace;

fn main() -> reflexff::Result<()> {
    let f = FieldSpec::of_order(3)?;
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let basis = (0..3)
        .map(|_| Matrix::new(&f, 4, 4, (0..16).map(|_| rng.gen_range(0..3)).collect()))
        .collect::<reflexff::Result<Vec<_>>>()?;
    let s = OperatorSpace::new(&f, 4, 4, basis)?;

    let (mrk, coeffs) = s.mrk()?;
    let witness = s.combination(&coeffs)?;
    println!("mrk = {mrk}, attained at coefficients {coeffs:?}");
    for row in witness.row_vecs() {
        println!("  {row:?}");
    }
    println!("ranks over projective points:");
    for (rank, count) in s.rank_distribution()? {
        println!("  rank {rank}: {count}");
    }
    Ok(())
}
