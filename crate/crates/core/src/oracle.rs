//! Definition-level brute-force references.
//!
//! Each function here evaluates a measure straight from its definition on
//! unpacked `u8` bits, sharing no code with the packed kernels it is used to
//! check. They are exponential and meant for small inputs only.

use std::collections::BTreeMap;

/// Shortest linear recurrence by trying every `(L, c_0..c_{L-1})` in
/// increasing `L`.
pub fn linear_complexity_exhaustive(bits: &[u8]) -> usize {
    let n = bits.len();
    if bits.iter().all(|&b| b == 0) {
        return 0;
    }
    for l in 1..=n {
        if l >= 64 {
            return l;
        }
        for c in 0u64..(1u64 << l) {
            let ok = (0..n - l).all(|i| {
                let mut acc = 0u8;
                for j in 0..l {
                    acc ^= ((c >> j) & 1) as u8 & bits[i + j];
                }
                acc == bits[i + l]
            });
            if ok {
                return l;
            }
        }
    }
    n
}

/// Smallest `M >= 0` for which the partial map `window -> successor` over
/// the first `N` bits is well defined (any such map extends to a polynomial
/// over GF(2)). Scans `M` upward with no monotonicity assumption.
pub fn max_order_complexity_exhaustive(bits: &[u8]) -> usize {
    let n = bits.len();
    for m in 0..=n {
        let mut table: BTreeMap<&[u8], u8> = BTreeMap::new();
        let mut ok = true;
        for i in 0..n.saturating_sub(m) {
            let w = &bits[i..i + m];
            let succ = bits[i + m];
            if let Some(&prev) = table.get(w) {
                if prev != succ {
                    ok = false;
                    break;
                }
            } else {
                table.insert(w, succ);
            }
        }
        if ok {
            return m;
        }
    }
    n
}

fn for_each_combination(n: usize, k: usize, mut f: impl FnMut(&[usize])) {
    if k > n {
        return;
    }
    let mut idx: Vec<usize> = (0..k).collect();
    loop {
        f(&idx);
        let mut i = k;
        while i > 0 && idx[i - 1] == n - k + i - 1 {
            i -= 1;
        }
        if i == 0 {
            return;
        }
        idx[i - 1] += 1;
        for j in i..k {
            idx[j] = idx[j - 1] + 1;
        }
    }
}

/// `C_k(S, N)` by recomputing every sum from scratch over all `(U, D)`.
pub fn aperiodic_correlation_exhaustive(bits: &[u8], k: usize) -> u64 {
    let n = bits.len();
    let mut best = 0u64;
    if k == 0 || k > n {
        return 0;
    }
    for u in 1..=n + 1 - k {
        for_each_combination(n - u + 1, k, |d| {
            let mut sum = 0i64;
            for m in 0..u {
                let e: u8 = d.iter().fold(0, |acc, &dj| acc ^ bits[m + dj]);
                sum += if e == 0 { 1 } else { -1 };
            }
            best = best.max(sum.unsigned_abs());
        });
    }
    best
}

/// `theta_k(S)` over all `0 <= d_1 < ... < d_k < T` (no shift normalisation).
pub fn periodic_correlation_exhaustive(period: &[u8], k: usize) -> u64 {
    let t = period.len();
    let mut best = 0u64;
    for_each_combination(t, k, |d| {
        let mut sum = 0i64;
        for m in 0..t {
            let e: u8 = d.iter().fold(0, |acc, &dj| acc ^ period[(m + dj) % t]);
            sum += if e == 0 { 1 } else { -1 };
        }
        best = best.max(sum.unsigned_abs());
    });
    best
}

/// Minimum weight and lexicographically smallest support among nonzero
/// vectors orthogonal to every cyclic shift of `period`, found by Gaussian
/// elimination on `u8` rows and enumeration of all dual combinations.
/// Returns `None` when the dual is trivial. Requires `T - rank <= 24`.
pub fn min_dual_weight_exhaustive(period: &[u8]) -> Option<(usize, Vec<usize>)> {
    let t = period.len();
    let mut rows: Vec<Vec<u8>> = (0..t)
        .map(|n| (0..t).map(|i| period[(n + i) % t]).collect())
        .collect();
    // reduced row echelon form
    let mut pivots = Vec::new();
    let mut r = 0;
    for col in 0..t {
        let Some(p) = (r..rows.len()).find(|&i| rows[i][col] == 1) else {
            continue;
        };
        rows.swap(r, p);
        for i in 0..rows.len() {
            if i != r && rows[i][col] == 1 {
                let pivot_row = rows[r].clone();
                for (a, b) in rows[i].iter_mut().zip(&pivot_row) {
                    *a ^= b;
                }
            }
        }
        pivots.push(col);
        r += 1;
    }
    rows.truncate(r);
    let free: Vec<usize> = (0..t).filter(|c| !pivots.contains(c)).collect();
    assert!(free.len() <= 24, "dual dimension {} too large", free.len());
    let dual: Vec<Vec<u8>> = free
        .iter()
        .map(|&f| {
            let mut v = vec![0u8; t];
            v[f] = 1;
            for (row, &pc) in rows.iter().zip(&pivots) {
                v[pc] = row[f];
            }
            v
        })
        .collect();
    let mut best: Option<(usize, Vec<usize>)> = None;
    for mask in 1u32..(1u32 << dual.len()) {
        let mut v = vec![0u8; t];
        for (j, d) in dual.iter().enumerate() {
            if (mask >> j) & 1 == 1 {
                for (a, b) in v.iter_mut().zip(d) {
                    *a ^= b;
                }
            }
        }
        let support: Vec<usize> = (0..t).filter(|&i| v[i] == 1).collect();
        let better = match &best {
            None => true,
            Some((w, s)) => support.len() < *w || (support.len() == *w && support < *s),
        };
        if better {
            best = Some((support.len(), support));
        }
    }
    best
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reference_values() {
        assert_eq!(linear_complexity_exhaustive(&[1, 1, 1, 1]), 1);
        assert_eq!(linear_complexity_exhaustive(&[0, 1]), 2);
        assert_eq!(linear_complexity_exhaustive(&[0, 0, 0]), 0);
        assert_eq!(max_order_complexity_exhaustive(&[0, 1, 0, 1, 0, 1]), 1);
        assert_eq!(
            max_order_complexity_exhaustive(&[0, 0, 1, 1, 0, 0, 1, 1]),
            2
        );
        assert_eq!(aperiodic_correlation_exhaustive(&[0; 6], 2), 5);
        // m-sequence of x^3 + x + 1
        let m = [1, 0, 0, 1, 0, 1, 1];
        assert_eq!(periodic_correlation_exhaustive(&m, 2), 1);
        assert_eq!(periodic_correlation_exhaustive(&m, 3), 7);
        assert_eq!(min_dual_weight_exhaustive(&m), Some((3, vec![0, 1, 3])));
    }
}
