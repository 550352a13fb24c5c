//! Arithmetic in GF(9) and a small elimination over GF(4).

use reflexff::ffla::{FieldSpec, Matrix};

fn main() -> reflexff::Result<()> {
    let f = FieldSpec::of_order(9)?;
    println!("GF(9): p = {}, k = {}, modulus {:?}", f.characteristic(), f.degree(), f.modulus());
    let g = f.primitive_element();
    let powers: Vec<u32> = (0..8).map(|e| f.pow(g, e)).collect();
    println!("powers of the primitive element {g}: {powers:?}");
    for a in [1, 3, 5] {
        let b = f.inv(a)?;
        println!("{a} * {b} = {}", f.mul(a, b));
    }

    let f4 = FieldSpec::of_order(4)?;
    let m = Matrix::from_rows(&f4, &[vec![1, 2, 3], vec![2, 3, 1], vec![3, 1, 2]])?;
    let r = m.rref();
    println!("GF(4) matrix rank {} pivots {:?}", m.rank(), r.pivots);
    for v in m.kernel() {
        println!("kernel vector {v:?} -> {:?}", m.apply(&v)?);
    }
    Ok(())
}
