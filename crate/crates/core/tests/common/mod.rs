#![allow(dead_code)]

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use reflexff::ffla::{all_vectors, solve_membership, Elem, FieldSpec, Matrix};
use reflexff::search::construct_regular_rep;
use reflexff::OperatorSpace;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn gf(q: u64) -> FieldSpec {
    FieldSpec::of_order(q).unwrap()
}

pub fn random_matrix(rng: &mut ChaCha8Rng, f: &FieldSpec, rows: usize, cols: usize) -> Matrix {
    let data = (0..rows * cols).map(|_| rng.gen_range(0..f.order())).collect();
    Matrix::new(f, rows, cols, data).unwrap()
}

pub fn random_invertible(rng: &mut ChaCha8Rng, f: &FieldSpec, n: usize) -> Matrix {
    loop {
        let m = random_matrix(rng, f, n, n);
        if m.rank() == n {
            return m;
        }
    }
}

pub fn random_space(rng: &mut ChaCha8Rng, f: &FieldSpec, dim_u: usize, dim_v: usize, n: usize) -> OperatorSpace {
    loop {
        let basis = (0..n).map(|_| random_matrix(rng, f, dim_v, dim_u)).collect();
        if let Ok(s) = OperatorSpace::new(f, dim_u, dim_v, basis) {
            return s;
        }
    }
}

/// `P S Q` for random invertible `P`, `Q`, placed in the top-left corner of
/// a larger operator space with zero padding.
pub fn transformed(rng: &mut ChaCha8Rng, s: &OperatorSpace, extra_u: usize, extra_v: usize) -> OperatorSpace {
    let f = s.field().clone();
    let (u, v) = (s.dim_u(), s.dim_v());
    let p = random_invertible(rng, &f, v);
    let q = random_invertible(rng, &f, u);
    let (bu, bv) = (u + extra_u, v + extra_v);
    let big_p = random_invertible(rng, &f, bv);
    let big_q = random_invertible(rng, &f, bu);
    let basis = s
        .basis()
        .iter()
        .map(|m| {
            let core = p.mul(m).unwrap().mul(&q).unwrap();
            let mut data = vec![0; bu * bv];
            for i in 0..v {
                for j in 0..u {
                    data[i * bu + j] = core.get(i, j);
                }
            }
            let padded = Matrix::new(&f, bv, bu, data).unwrap();
            big_p.mul(&padded).unwrap().mul(&big_q).unwrap()
        })
        .collect();
    OperatorSpace::new(&f, bu, bv, basis).unwrap()
}

/// A varied population: uniform spaces, small spaces (where non-reflexive
/// ones are common), disguised regular representations, and spaces with a
/// nontrivial common kernel.
pub fn mixed_space(rng: &mut ChaCha8Rng, q: u64, max_dim: usize, max_n: usize) -> OperatorSpace {
    let f = gf(q);
    match rng.gen_range(0..4) {
        0 => {
            let (u, v) = (rng.gen_range(1..=max_dim), rng.gen_range(1..=max_dim));
            let n = rng.gen_range(1..=max_n.min(u * v));
            random_space(rng, &f, u, v, n)
        }
        1 => {
            let (u, v) = (rng.gen_range(1..=2.min(max_dim)), rng.gen_range(1..=3.min(max_dim)));
            let n = rng.gen_range(1..=max_n.min(u * v));
            random_space(rng, &f, u, v, n)
        }
        2 => {
            let n = rng.gen_range(2..=max_n.clamp(2, 3)).min(max_dim);
            let reg = construct_regular_rep(&f, n.max(1)).unwrap();
            let eu = rng.gen_range(0..=max_dim - reg.dim_u());
            let ev = rng.gen_range(0..=max_dim - reg.dim_v());
            transformed(rng, &reg, eu, ev)
        }
        _ => {
            let (u, v) = (rng.gen_range(2..=max_dim), rng.gen_range(1..=max_dim));
            let n = rng.gen_range(1..=max_n.min((u - 1) * v));
            loop {
                let proj = random_matrix(rng, &f, u, u);
                if proj.rank() == u {
                    continue;
                }
                let basis = (0..n).map(|_| random_matrix(rng, &f, v, u).mul(&proj).unwrap()).collect();
                if let Ok(s) = OperatorSpace::new(&f, u, v, basis) {
                    return s;
                }
            }
        }
    }
}

/// `R(S)` by testing every one of the `q^(dim_v * p)` candidate operators.
pub fn brute_closure(s: &OperatorSpace) -> Vec<Matrix> {
    let f = s.field();
    let q = f.order();
    let xs: Vec<Vec<Elem>> = all_vectors(q, s.dim_u()).collect();
    let evals: Vec<Vec<Vec<Elem>>> = xs.iter().map(|x| s.eval_space(x).unwrap()).collect();
    all_vectors(q, s.dim_u() * s.dim_v())
        .map(|g| Matrix::new(f, s.dim_v(), s.dim_u(), g).unwrap())
        .filter(|g| {
            xs.iter()
                .zip(&evals)
                .all(|(x, w)| solve_membership(f, w, &g.apply(x).unwrap()).unwrap().is_some())
        })
        .collect()
}
