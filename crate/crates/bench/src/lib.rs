//! Fixtures shared by the benchmarks.

use fixedloci_core::IntMatrix;

/// `n x n` matrix with small entries, deterministic in `seed`.
pub fn sample_matrix(n: usize, seed: u64) -> IntMatrix {
    let mut state = seed.wrapping_mul(6_364_136_223_846_793_005).wrapping_add(1_442_695_040_888_963_407);
    let entries: Vec<i64> = (0..n * n)
        .map(|_| {
            state = state.wrapping_mul(6_364_136_223_846_793_005).wrapping_add(1_442_695_040_888_963_407);
            ((state >> 33) % 19) as i64 - 9
        })
        .collect();
    IntMatrix::from_i64(n, n, &entries).expect("square")
}

#[cfg(test)]
mod tests {
    #[test]
    fn deterministic() {
        assert_eq!(super::sample_matrix(4, 3), super::sample_matrix(4, 3));
        assert_ne!(super::sample_matrix(4, 3), super::sample_matrix(4, 4));
    }
}
