use super::Elem;

/// Every vector of `GF(q)^len` in lexicographic order (first coordinate most
/// significant).
pub fn all_vectors(q: u32, len: usize) -> impl Iterator<Item = Vec<Elem>> {
    let total = (q as u64).pow(len as u32);
    (0..total).map(move |idx| index_to_vector(q, len, idx))
}

/// The `idx`-th vector of `GF(q)^len` in lexicographic order.
pub fn index_to_vector(q: u32, len: usize, mut idx: u64) -> Vec<Elem> {
    let mut v = vec![0; len];
    for slot in v.iter_mut().rev() {
        *slot = (idx % q as u64) as Elem;
        idx /= q as u64;
    }
    v
}

/// Number of projective points of `GF(q)^len`, `(q^len - 1)/(q - 1)`.
pub fn projective_count(q: u32, len: usize) -> u64 {
    ((q as u64).pow(len as u32) - 1) / (q as u64 - 1)
}

/// One representative per line through the origin of `GF(q)^len`: the first
/// nonzero coordinate is 1. Yielded in lexicographic order.
pub fn projective_points(q: u32, len: usize) -> impl Iterator<Item = Vec<Elem>> {
    (0..len).rev().flat_map(move |lead| {
        let tail = len - lead - 1;
        all_vectors(q, tail).map(move |t| {
            let mut v = vec![0; len];
            v[lead] = 1;
            v[lead + 1..].copy_from_slice(&t);
            v
        })
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn projective_points_are_sorted_and_complete() {
        for (q, len) in [(2u32, 3usize), (3, 3), (4, 2), (5, 1), (2, 0)] {
            let pts: Vec<_> = projective_points(q, len).collect();
            assert_eq!(pts.len() as u64, projective_count(q, len));
            assert!(pts.windows(2).all(|w| w[0] < w[1]));
            let expected: Vec<_> = all_vectors(q, len)
                .filter(|v| v.iter().find(|&&e| e != 0) == Some(&1))
                .collect();
            assert_eq!(pts, expected);
        }
        let pts: Vec<_> = projective_points(2, 2).collect();
        assert_eq!(pts, vec![vec![0, 1], vec![1, 0], vec![1, 1]]);
    }
}
