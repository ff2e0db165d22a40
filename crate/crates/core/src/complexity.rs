//! Nth linear complexity (Berlekamp–Massey over GF(2)), Nth maximum-order
//! complexity, their profiles, and exhaustive K-error linear complexity.

use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use crate::bitseq::{words_for, BitSequence};
use crate::error::{Error, Result};

/// Largest analysis length accepted by [`kerror_linear_complexity`].
pub const KERROR_MAX_N: usize = 24;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ComplexityKind {
    Linear,
    MaximumOrder,
}

/// `values[N - 1]` holds `L(S, N)` or `M(S, N)` for `N = 1..=N_max`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ComplexityProfile {
    pub kind: ComplexityKind,
    pub values: Vec<usize>,
    /// Final recurrence `c_0..c_{L-1}` (linear kind only).
    #[serde(skip_serializing_if = "Option::is_none")]
    pub coefficients: Option<Vec<u8>>,
}

impl ComplexityProfile {
    pub fn at(&self, n: usize) -> Option<usize> {
        n.checked_sub(1).and_then(|i| self.values.get(i).copied())
    }
}

/// `L(S, N)` together with coefficients satisfying
/// `s_{i+L} = c_{L-1} s_{i+L-1} + ... + c_0 s_i` for `0 <= i < N - L`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LinearComplexity {
    pub value: usize,
    pub coefficients: Vec<u8>,
}

fn xor_shifted(dst: &mut [u64], src: &[u64], shift: usize) {
    let ws = shift / 64;
    let bs = shift % 64;
    for i in (0..dst.len()).rev() {
        if i < ws {
            break;
        }
        let j = i - ws;
        let lo = src.get(j).copied().unwrap_or(0);
        let v = if bs == 0 {
            lo
        } else {
            let below = if j > 0 {
                src.get(j - 1).copied().unwrap_or(0)
            } else {
                0
            };
            (lo << bs) | (below >> (64 - bs))
        };
        dst[i] ^= v;
    }
}

/// Berlekamp–Massey over the first `n` bits. Returns the final length, the
/// connection polynomial `1 + C_1 x + ... + C_L x^L` packed by degree, and
/// the per-prefix lengths.
fn berlekamp_massey(prefix: &BitSequence) -> (usize, Vec<u64>, Vec<usize>) {
    let n = prefix.len();
    let rev = prefix.reversed();
    let nw = words_for(n + 1).max(1);
    let mut c = vec![0u64; nw];
    c[0] = 1;
    let mut b = c.clone();
    let mut tmp = vec![0u64; nw];
    let mut window = Vec::with_capacity(nw);
    let mut l = 0usize;
    let mut m = 1usize;
    let mut profile = Vec::with_capacity(n);
    for i in 0..n {
        // bit j of `window` is s_{i-j}
        rev.extract_into(n - 1 - i, l + 1, &mut window);
        let parity = c
            .iter()
            .zip(&window)
            .fold(0u32, |acc, (cw, ww)| acc ^ (cw & ww).count_ones())
            & 1;
        if parity == 1 {
            if 2 * l <= i {
                tmp.copy_from_slice(&c);
                xor_shifted(&mut c, &b, m);
                l = i + 1 - l;
                std::mem::swap(&mut b, &mut tmp);
                m = 1;
            } else {
                xor_shifted(&mut c, &b, m);
                m += 1;
            }
        } else {
            m += 1;
        }
        profile.push(l);
    }
    (l, c, profile)
}

fn coefficients_from_connection(conn: &[u64], l: usize) -> Vec<u8> {
    // c_j = C_{L-j}
    (0..l)
        .map(|j| {
            let deg = l - j;
            ((conn[deg / 64] >> (deg % 64)) & 1) as u8
        })
        .collect()
}

/// `L(S, N)`: length of the shortest linear recurrence generating the first
/// `N` bits. All-zero prefixes give 0, `0...01` gives `N`.
pub fn linear_complexity(s: &BitSequence, n: usize) -> Result<LinearComplexity> {
    let prefix = s.take(n)?;
    let (l, conn, _) = berlekamp_massey(&prefix);
    Ok(LinearComplexity {
        value: l,
        coefficients: coefficients_from_connection(&conn, l),
    })
}

/// `L(S, N)` for every `N <= n_max` in one Berlekamp–Massey pass.
pub fn linear_complexity_profile(s: &BitSequence, n_max: usize) -> Result<ComplexityProfile> {
    let prefix = s.take(n_max)?;
    let (l, conn, values) = berlekamp_massey(&prefix);
    Ok(ComplexityProfile {
        kind: ComplexityKind::Linear,
        values,
        coefficients: Some(coefficients_from_connection(&conn, l)),
    })
}

#[derive(Clone, PartialEq, Eq, Hash)]
enum WindowKey {
    Short(u64),
    Long(Vec<u64>),
}

fn window_key(s: &BitSequence, start: usize, m: usize, scratch: &mut Vec<u64>) -> WindowKey {
    s.extract_into(start, m, scratch);
    if m <= 64 {
        WindowKey::Short(scratch.first().copied().unwrap_or(0))
    } else {
        WindowKey::Long(scratch.clone())
    }
}

/// Successor table for all `m`-windows at positions `i < len - m`, or `None`
/// if two equal windows have different successors.
fn successor_table(s: &BitSequence, len: usize, m: usize) -> Option<HashMap<WindowKey, bool>> {
    let mut table = HashMap::new();
    let mut scratch = Vec::new();
    for i in 0..len.saturating_sub(m) {
        let key = window_key(s, i, m, &mut scratch);
        let succ = s.get(i + m);
        match table.get(&key) {
            Some(&prev) if prev != succ => return None,
            Some(_) => {}
            None => {
                table.insert(key, succ);
            }
        }
    }
    Some(table)
}

/// `M(S, N)`: smallest `M >= 0` such that equal `M`-windows inside the
/// first `N` bits never have different successors. Every constant prefix
/// has `M = 0`.
///
/// A conflict at window size `M` implies one at every smaller size, so the
/// answer is found by binary search over `0..=N`.
pub fn max_order_complexity(s: &BitSequence, n: usize) -> Result<usize> {
    let prefix = s.take(n)?;
    let (mut lo, mut hi) = (0usize, n);
    while lo < hi {
        let mid = lo + (hi - lo) / 2;
        if successor_table(&prefix, n, mid).is_some() {
            hi = mid;
        } else {
            lo = mid + 1;
        }
    }
    Ok(lo)
}

/// `M(S, N)` for every `N <= n_max`, extending the successor table one bit
/// at a time and rebuilding it only when the window size grows.
pub fn max_order_complexity_profile(s: &BitSequence, n_max: usize) -> Result<ComplexityProfile> {
    let prefix = s.take(n_max)?;
    let mut m = 0usize;
    let mut table: HashMap<WindowKey, bool> = HashMap::new();
    let mut scratch = Vec::new();
    let mut values = Vec::with_capacity(n_max);
    for len in 1..=n_max {
        let succ = prefix.get(len - 1);
        let consistent = if len > m {
            let key = window_key(&prefix, len - 1 - m, m, &mut scratch);
            match table.get(&key) {
                Some(&prev) => prev == succ,
                None => {
                    table.insert(key, succ);
                    true
                }
            }
        } else {
            true
        };
        if !consistent {
            m += 1;
            table = loop {
                match successor_table(&prefix, len, m) {
                    Some(t) => break t,
                    None => m += 1,
                }
            };
        }
        values.push(m);
    }
    Ok(ComplexityProfile {
        kind: ComplexityKind::MaximumOrder,
        values,
        coefficients: None,
    })
}

/// Berlekamp–Massey on at most 32 bits held in an integer (bit `i` = `s_i`).
fn linear_complexity_small(bits: u32, n: usize) -> usize {
    let (mut c, mut b) = (1u64, 1u64);
    let (mut l, mut m) = (0usize, 1usize);
    for i in 0..n {
        let mut d = 0u64;
        for j in 0..=l {
            d ^= (c >> j) & (bits as u64 >> (i - j)) & 1;
        }
        if d == 1 {
            let t = c;
            c ^= b << m;
            if 2 * l <= i {
                l = i + 1 - l;
                b = t;
                m = 1;
            } else {
                m += 1;
            }
        } else {
            m += 1;
        }
    }
    l
}

/// Minimum of `L(S', N)` over all `S'` differing from `S` in at most `k` of
/// the first `N` positions. Exhaustive over flip patterns; `N <= 24`.
pub fn kerror_linear_complexity(s: &BitSequence, n: usize, k: usize) -> Result<usize> {
    if n > KERROR_MAX_N {
        return Err(Error::InvalidParameter(format!(
            "exhaustive K-error linear complexity supports N <= {KERROR_MAX_N}, got {n}"
        )));
    }
    if k > n {
        return Err(Error::InvalidParameter(format!("K = {k} exceeds N = {n}")));
    }
    let prefix = s.take(n)?;
    let bits = prefix.words().first().copied().unwrap_or(0) as u32;
    let mut best = linear_complexity_small(bits, n);
    for w in 1..=k {
        if best == 0 {
            break;
        }
        // Gosper's hack over all w-subsets of n positions
        let mut mask: u32 = (1u32 << w) - 1;
        let limit: u64 = 1u64 << n;
        while (mask as u64) < limit {
            best = best.min(linear_complexity_small(bits ^ mask, n));
            if best == 0 {
                break;
            }
            let c = mask & mask.wrapping_neg();
            let r = mask + c;
            if r == 0 {
                break;
            }
            mask = (((r ^ mask) >> 2) / c) | r;
        }
    }
    Ok(best)
}
