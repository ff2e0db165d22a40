//! Correlation measures of order `k`: the aperiodic `C_k(S, N)` and the
//! periodic `theta_k(S)`, computed exactly by exhaustive search over shift
//! sets.
//!
//! For a fixed shift set the combined stream `y_n = s_{n+d_1} ^ ... ^ s_{n+d_k}`
//! is built word-parallel by XOR-ing shifted extracts of the packed
//! sequence. The windowed sums `sum_{n<U} (-1)^{y_n}` are then the prefix sums
//! of `y`, scanned a byte at a time with a precomputed table of per-byte
//! delta/min/max.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::bitseq::{BitSequence, ShiftSet};
use crate::error::{Error, Result};

pub const DEFAULT_BUDGET: u128 = 1_000_000_000;

#[derive(Clone, Copy, Debug)]
pub struct SearchOptions {
    /// Upper limit on estimated summand evaluations.
    pub budget: u128,
    /// Worker threads; 0 or 1 runs on the calling thread.
    pub jobs: usize,
}

impl Default for SearchOptions {
    fn default() -> Self {
        SearchOptions {
            budget: DEFAULT_BUDGET,
            jobs: 1,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum PeakClass {
    FullPeak,
    HalfPeak,
    None,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CorrelationResult {
    #[serde(rename = "k")]
    pub order: usize,
    pub value: u64,
    #[serde(rename = "U")]
    pub window: usize,
    #[serde(rename = "D")]
    pub shifts: ShiftSet,
    pub classification: PeakClass,
    pub periodic: bool,
}

impl CorrelationResult {
    pub fn is_half_peak(&self) -> bool {
        self.classification != PeakClass::None
    }
}

/// Aperiodic peak class for value `c` at order `k` and length `n`.
pub fn classify_aperiodic(c: u64, n: usize, k: usize) -> PeakClass {
    if n + 1 >= k && c == (n + 1 - k) as u64 {
        PeakClass::FullPeak
    } else if 2 * c >= n as u64 {
        PeakClass::HalfPeak
    } else {
        PeakClass::None
    }
}

pub fn classify_periodic(c: u64, t: usize) -> PeakClass {
    if c == t as u64 {
        PeakClass::FullPeak
    } else if 2 * c >= t as u64 {
        PeakClass::HalfPeak
    } else {
        PeakClass::None
    }
}

#[derive(Clone, Copy)]
struct ByteStats {
    delta: i8,
    min: i8,
    max: i8,
}

const fn byte_table() -> [ByteStats; 256] {
    let mut table = [ByteStats {
        delta: 0,
        min: 0,
        max: 0,
    }; 256];
    let mut b = 0;
    while b < 256 {
        let mut p: i8 = 0;
        let mut min = i8::MAX;
        let mut max = i8::MIN;
        let mut j = 0;
        while j < 8 {
            p += if (b >> j) & 1 == 0 { 1 } else { -1 };
            if p < min {
                min = p;
            }
            if p > max {
                max = p;
            }
            j += 1;
        }
        table[b] = ByteStats { delta: p, min, max };
        b += 1;
    }
    table
}

static BYTE_TABLE: [ByteStats; 256] = byte_table();

/// Largest `|sum_{n<U} (-1)^{y_n}|` over `1 <= U <= u_max`, and the smallest
/// `U` attaining it.
fn max_abs_prefix(y: &[u64], u_max: usize) -> (u64, usize) {
    struct Scan {
        p: i64,
        best: i64,
        best_u: usize,
    }
    impl Scan {
        fn walk(&mut self, byte: u64, base: usize, count: usize) {
            for j in 0..count {
                self.p += if (byte >> j) & 1 == 0 { 1 } else { -1 };
                if self.p.abs() > self.best {
                    self.best = self.p.abs();
                    self.best_u = base + j + 1;
                }
            }
        }
    }
    let mut sc = Scan {
        p: 0,
        best: 0,
        best_u: 0,
    };
    let full_bytes = u_max / 8;
    for bi in 0..full_bytes {
        let byte = (y[bi / 8] >> ((bi % 8) * 8)) & 0xff;
        let st = BYTE_TABLE[byte as usize];
        let cand = (sc.p + st.max as i64).max(-(sc.p + st.min as i64));
        if cand > sc.best {
            sc.walk(byte, bi * 8, 8);
        } else {
            sc.p += st.delta as i64;
        }
    }
    let rem = u_max - full_bytes * 8;
    if rem > 0 {
        let byte = (y[full_bytes / 8] >> ((full_bytes % 8) * 8)) & 0xff;
        sc.walk(byte, full_bytes * 8, rem);
    }
    (sc.best as u64, sc.best_u)
}

fn signed_sum(y: &[u64], u: usize) -> i64 {
    let ones: u64 = y.iter().map(|w| w.count_ones() as u64).sum();
    u as i64 - 2 * ones as i64
}

/// `sum_{n<U} (-1)^{s_{n+d_1} + ... + s_{n+d_k}}` over the stored bits.
pub fn correlation_at(s: &BitSequence, u: usize, d: &ShiftSet) -> Result<i64> {
    if u == 0 {
        return Err(Error::InvalidParameter(
            "window U must be at least 1".into(),
        ));
    }
    if d.last() + u > s.len() {
        return Err(Error::LengthExceeded {
            requested: d.last() + u,
            available: s.len(),
        });
    }
    let mut acc = s.extract(d.first(), u);
    let mut scratch = Vec::new();
    for &dj in &d.as_slice()[1..] {
        s.extract_into(dj, u, &mut scratch);
        for (a, b) in acc.iter_mut().zip(&scratch) {
            *a ^= b;
        }
    }
    Ok(signed_sum(&acc, u))
}

/// Full-period sum `sum_{n<T} (-1)^{s_{n+d_1} + ... + s_{n+d_k}}` with
/// indices taken mod `T`.
pub fn periodic_correlation_at(s: &BitSequence, d: &ShiftSet) -> Result<i64> {
    let t = s.period().ok_or(Error::MissingPeriod)?;
    if d.last() >= t {
        return Err(Error::InvalidShiftSet(format!(
            "shift {} outside period {t}",
            d.last()
        )));
    }
    let doubled = s.periods(2)?;
    correlation_at(&doubled, t, d)
}

/// Periodic autocorrelation at lag `tau`, evaluated bit by bit. Independent
/// of the packed kernel; used to cross-check `theta_2`.
pub fn periodic_autocorrelation(s: &BitSequence, tau: usize) -> Result<i64> {
    let t = s.period().ok_or(Error::MissingPeriod)?;
    let one = s.one_period()?;
    Ok((0..t)
        .map(|n| {
            if one.get(n) == one.get((n + tau) % t) {
                1
            } else {
                -1
            }
        })
        .sum())
}

/// Certified bound `2kF` on `|C_k(S', N) - C_k(S, N)|` when `S'` differs
/// from `S` in at most `F` of the first `N` positions.
pub fn delta_under_flips(k: usize, flips: usize) -> u64 {
    2 * k as u64 * flips as u64
}

pub(crate) fn binomial_saturating(n: usize, k: usize) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = match acc.checked_mul((n - i) as u128) {
            Some(v) => v / (i as u128 + 1),
            None => return u128::MAX,
        };
    }
    acc
}

/// Estimated summand evaluations of the aperiodic search:
/// `sum_{U=1}^{N-k+1} C(N-U, k-1) (N-U+1)`.
pub fn aperiodic_search_cost(n: usize, k: usize) -> u128 {
    if k == 0 || k > n {
        return 0;
    }
    (1..=n + 1 - k).fold(0u128, |acc, u| {
        acc.saturating_add(binomial_saturating(n - u, k - 1).saturating_mul((n - u + 1) as u128))
    })
}

/// `C(T-1, k-1) * T`.
pub fn periodic_search_cost(t: usize, k: usize) -> u128 {
    if k == 0 || k > t {
        return 0;
    }
    binomial_saturating(t - 1, k - 1).saturating_mul(t as u128)
}

#[derive(Clone, Debug)]
struct Best {
    value: u64,
    window: usize,
    shifts: Vec<usize>,
}

impl Best {
    fn empty() -> Self {
        Best {
            value: 0,
            window: usize::MAX,
            shifts: Vec::new(),
        }
    }

    /// Larger value wins, then smaller window, then lexicographically
    /// smaller shift set.
    fn beats(&self, other: &Best) -> bool {
        if self.shifts.is_empty() {
            return false;
        }
        if other.shifts.is_empty() {
            return true;
        }
        (
            self.value,
            std::cmp::Reverse(self.window),
            std::cmp::Reverse(&self.shifts),
        ) > (
            other.value,
            std::cmp::Reverse(other.window),
            std::cmp::Reverse(&other.shifts),
        )
    }

    fn merge(self, other: Best) -> Best {
        if other.beats(&self) {
            other
        } else {
            self
        }
    }
}

struct AperiodicSearch<'a> {
    seq: &'a BitSequence,
    n: usize,
    k: usize,
    shifts: Vec<usize>,
    acc: Vec<Vec<u64>>,
    scratch: Vec<u64>,
    best: Best,
}

impl<'a> AperiodicSearch<'a> {
    fn new(seq: &'a BitSequence, n: usize, k: usize) -> Self {
        AperiodicSearch {
            seq,
            n,
            k,
            shifts: Vec::with_capacity(k),
            acc: vec![Vec::new(); k],
            scratch: Vec::new(),
            best: Best::empty(),
        }
    }

    fn run_from(mut self, d1: usize) -> Best {
        self.push(d1);
        self.descend();
        self.best
    }

    fn push(&mut self, d: usize) {
        let depth = self.shifts.len();
        let len = self.n - d;
        self.seq.extract_into(d, len, &mut self.scratch);
        let (before, rest) = self.acc.split_at_mut(depth);
        let out = &mut rest[0];
        out.clear();
        if depth == 0 {
            out.extend_from_slice(&self.scratch);
        } else {
            let prev = &before[depth - 1];
            out.extend(self.scratch.iter().zip(prev).map(|(a, b)| a ^ b));
        }
        self.shifts.push(d);
    }

    fn descend(&mut self) {
        let depth = self.shifts.len();
        if depth == self.k {
            let u_max = self.n - self.shifts[depth - 1];
            let (value, window) = max_abs_prefix(&self.acc[depth - 1], u_max);
            let cand = Best {
                value,
                window,
                shifts: self.shifts.clone(),
            };
            if cand.beats(&self.best) {
                self.best = cand;
            }
            return;
        }
        let last = self.shifts[depth - 1];
        let remaining = self.k - depth;
        for d in last + 1..=self.n - remaining {
            self.push(d);
            self.descend();
            self.shifts.pop();
        }
    }
}

fn run_partitioned<F>(parts: Vec<usize>, jobs: usize, f: F) -> Best
where
    F: Fn(usize) -> Best + Sync + Send,
{
    if jobs <= 1 {
        return parts.into_iter().map(&f).fold(Best::empty(), Best::merge);
    }
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(jobs)
        .build()
        .expect("thread pool");
    pool.install(|| {
        parts
            .into_par_iter()
            .map(&f)
            .reduce(Best::empty, Best::merge)
    })
}

/// Exact `C_k(S, N)` with its lexicographically smallest witness `(U, D)`.
pub fn aperiodic_measure(
    s: &BitSequence,
    n: usize,
    k: usize,
    opts: &SearchOptions,
) -> Result<CorrelationResult> {
    if k == 0 || k > n {
        return Err(Error::InvalidParameter(format!(
            "order k = {k} must satisfy 1 <= k <= N = {n}"
        )));
    }
    let cost = aperiodic_search_cost(n, k);
    if cost > opts.budget {
        return Err(Error::BudgetExceeded {
            cost,
            budget: opts.budget,
        });
    }
    let seq = s.take(n)?;
    let best = run_partitioned((0..=n - k).collect(), opts.jobs, |d1| {
        AperiodicSearch::new(&seq, n, k).run_from(d1)
    });
    Ok(CorrelationResult {
        order: k,
        value: best.value,
        window: best.window,
        classification: classify_aperiodic(best.value, n, k),
        shifts: ShiftSet::new(best.shifts)?,
        periodic: false,
    })
}

/// Exact `theta_k(S)` for a sequence with a declared period. The full-period
/// sum is invariant under a common shift, so `d_1 = 0` is fixed.
pub fn periodic_measure(
    s: &BitSequence,
    k: usize,
    opts: &SearchOptions,
) -> Result<CorrelationResult> {
    let t = s.period().ok_or(Error::MissingPeriod)?;
    if k == 0 || k > t {
        return Err(Error::InvalidParameter(format!(
            "order k = {k} must satisfy 1 <= k <= T = {t}"
        )));
    }
    let cost = periodic_search_cost(t, k);
    if cost > opts.budget {
        return Err(Error::BudgetExceeded {
            cost,
            budget: opts.budget,
        });
    }
    let doubled = s.periods(2)?;
    let evaluate = |shifts: &[usize], scratch: &mut Vec<u64>, acc: &mut Vec<u64>| -> u64 {
        doubled.extract_into(shifts[0], t, acc);
        for &d in &shifts[1..] {
            doubled.extract_into(d, t, scratch);
            for (a, b) in acc.iter_mut().zip(scratch.iter()) {
                *a ^= b;
            }
        }
        signed_sum(acc, t).unsigned_abs()
    };
    let best = if k == 1 {
        let (mut scratch, mut acc) = (Vec::new(), Vec::new());
        Best {
            value: evaluate(&[0], &mut scratch, &mut acc),
            window: t,
            shifts: vec![0],
        }
    } else {
        run_partitioned((1..=t - k + 1).collect(), opts.jobs, |d2| {
            let (mut scratch, mut acc) = (Vec::new(), Vec::new());
            let mut best = Best::empty();
            let mut shifts: Vec<usize> = vec![0, d2];
            shifts.extend(d2 + 1..d2 + k - 1);
            loop {
                let cand = Best {
                    value: evaluate(&shifts, &mut scratch, &mut acc),
                    window: t,
                    shifts: shifts.clone(),
                };
                if cand.beats(&best) {
                    best = cand;
                }
                // next combination of positions 2.. in (d2, T)
                let mut i = k;
                while i > 2 && shifts[i - 1] == t - 1 - (k - i) {
                    i -= 1;
                }
                if i == 2 {
                    break;
                }
                shifts[i - 1] += 1;
                for j in i..k {
                    shifts[j] = shifts[j - 1] + 1;
                }
            }
            best
        })
    };
    Ok(CorrelationResult {
        order: k,
        value: best.value,
        window: t,
        classification: classify_periodic(best.value, t),
        shifts: ShiftSet::new(best.shifts)?,
        periodic: true,
    })
}

/// Smallest order `2 <= k <= k_max` with `C_k(S, N) >= N/2`, returning the
/// exact measure at that order.
pub fn find_half_peak(
    s: &BitSequence,
    n: usize,
    k_max: usize,
    opts: &SearchOptions,
) -> Result<Option<CorrelationResult>> {
    for k in 2..=k_max.min(n) {
        let r = aperiodic_measure(s, n, k, opts)?;
        if r.is_half_peak() {
            return Ok(Some(r));
        }
    }
    Ok(None)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracle;
    use proptest::prelude::*;

    fn seq(s: &str) -> BitSequence {
        s.parse().unwrap()
    }

    fn shifts(v: &[usize]) -> ShiftSet {
        ShiftSet::new(v.to_vec()).unwrap()
    }

    // x^3 + x + 1 from seed (1,0,0)
    const M3: &str = "1001011";

    #[test]
    fn correlation_at_examples() {
        let z = BitSequence::zeros(10);
        assert_eq!(correlation_at(&z, 10, &shifts(&[0])).unwrap(), 10);
        let alt = seq("0101010101");
        assert_eq!(correlation_at(&alt, 9, &shifts(&[0, 1])).unwrap(), -9);
        assert!(correlation_at(&alt, 10, &shifts(&[0, 1])).is_err());
        assert!(correlation_at(&alt, 0, &shifts(&[0])).is_err());
    }

    #[test]
    fn m_sequence_two_level_autocorrelation() {
        let m = seq(&format!("period=7\n{M3}"));
        for d in 1..7 {
            assert_eq!(periodic_correlation_at(&m, &shifts(&[0, d])).unwrap(), -1);
            assert_eq!(periodic_autocorrelation(&m, d).unwrap(), -1);
        }
    }

    #[test]
    fn periodic_measure_examples() {
        let m = seq(&format!("period=7\n{M3}"));
        let opts = SearchOptions::default();
        assert_eq!(periodic_measure(&m, 2, &opts).unwrap().value, 1);
        let r3 = periodic_measure(&m, 3, &opts).unwrap();
        assert_eq!(r3.value, 7);
        assert_eq!(r3.classification, PeakClass::FullPeak);
        assert_eq!(r3.shifts.as_slice(), &[0, 1, 3]);
        let z = BitSequence::zeros(5).with_period(5).unwrap();
        for k in 1..=5 {
            assert_eq!(periodic_measure(&z, k, &opts).unwrap().value, 5);
        }
        assert!(matches!(
            periodic_measure(&seq(M3), 2, &opts),
            Err(Error::MissingPeriod)
        ));
    }

    #[test]
    fn aperiodic_all_zero_full_peak() {
        let z = BitSequence::zeros(12);
        for k in 1..=4 {
            let r = aperiodic_measure(&z, 12, k, &SearchOptions::default()).unwrap();
            assert_eq!(r.value, 13 - k as u64);
            assert_eq!(r.classification, PeakClass::FullPeak);
        }
    }

    #[test]
    fn aperiodic_m_sequence_recurrence_peak() {
        let m = seq(&format!("period=7\n{M3}"));
        let d = shifts(&[0, 1, 3]);
        let two = m.take(14).unwrap();
        for u in 1..=11 {
            assert_eq!(correlation_at(&two, u, &d).unwrap(), u as i64);
        }
        let r = aperiodic_measure(&m, 14, 3, &SearchOptions::default()).unwrap();
        // the recurrence caps U at N - d_3 = 11, below the full-peak value 12
        assert_eq!(r.value, 11);
        assert_eq!(r.classification, PeakClass::HalfPeak);
        assert_eq!(
            r.value,
            oracle::aperiodic_correlation_exhaustive(&two.to_u8s(), 3)
        );
    }

    #[test]
    fn budget_gate() {
        let s = BitSequence::zeros(64);
        let opts = SearchOptions {
            budget: 1000,
            jobs: 1,
        };
        assert!(matches!(
            aperiodic_measure(&s, 64, 3, &opts),
            Err(Error::BudgetExceeded { .. })
        ));
    }

    #[test]
    fn delta_examples() {
        assert_eq!(delta_under_flips(2, 5), 20);
        assert_eq!(delta_under_flips(3, 0), 0);
        assert_eq!(delta_under_flips(1, 1), 2);
    }

    #[test]
    fn jobs_do_not_change_result() {
        let s = seq("1101000111010110010001111010110001011101");
        let one = aperiodic_measure(&s, 40, 3, &SearchOptions::default()).unwrap();
        let four = aperiodic_measure(
            &s,
            40,
            3,
            &SearchOptions {
                jobs: 4,
                ..Default::default()
            },
        )
        .unwrap();
        assert_eq!(one, four);
        let p = s.prefix(23).unwrap().with_period(23).unwrap();
        let a = periodic_measure(&p, 4, &SearchOptions::default()).unwrap();
        let b = periodic_measure(
            &p,
            4,
            &SearchOptions {
                jobs: 3,
                ..Default::default()
            },
        )
        .unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn flip_perturbation_exhaustive_small() {
        // every S of length 10, every S' within 2 flips
        let n = 10;
        let opts = SearchOptions::default();
        for k in 1..=3 {
            let table: Vec<u64> = (0u64..1 << n)
                .map(|x| {
                    aperiodic_measure(&BitSequence::from_u64(x, n), n, k, &opts)
                        .unwrap()
                        .value
                })
                .collect();
            for x in 0..1usize << n {
                for a in 0..n {
                    let y = x ^ (1 << a);
                    assert!(table[x].abs_diff(table[y]) <= delta_under_flips(k, 1));
                    for b in a + 1..n {
                        let z = y ^ (1 << b);
                        assert!(table[x].abs_diff(table[z]) <= delta_under_flips(k, 2));
                    }
                }
            }
        }
    }

    proptest! {
        #[test]
        fn aperiodic_matches_oracle(bits in proptest::collection::vec(0u8..2, 1..14), k in 1usize..4) {
            prop_assume!(k <= bits.len());
            let s = BitSequence::from_u8s(&bits).unwrap();
            let r = aperiodic_measure(&s, bits.len(), k, &SearchOptions::default()).unwrap();
            prop_assert_eq!(r.value, oracle::aperiodic_correlation_exhaustive(&bits, k));
            prop_assert!(r.value <= (bits.len() + 1 - k) as u64);
            let again = correlation_at(&s, r.window, &r.shifts).unwrap();
            prop_assert_eq!(again.unsigned_abs(), r.value);
        }

        #[test]
        fn long_windows_match_direct_sum(bits in proptest::collection::vec(0u8..2, 70..200)) {
            let n = bits.len();
            let s = BitSequence::from_u8s(&bits).unwrap();
            let r = aperiodic_measure(&s, n, 2, &SearchOptions::default()).unwrap();
            let d = r.shifts.as_slice();
            let direct: i64 = (0..r.window)
                .map(|m| if bits[m + d[0]] == bits[m + d[1]] { 1 } else { -1 })
                .sum();
            prop_assert_eq!(direct.unsigned_abs(), r.value);
            // no earlier window reaches the same value
            let mut p = 0i64;
            for m in 0..r.window - 1 {
                p += if bits[m + d[0]] == bits[m + d[1]] { 1 } else { -1 };
                prop_assert!(p.unsigned_abs() < r.value);
            }
        }

        #[test]
        fn periodic_matches_oracle(bits in proptest::collection::vec(0u8..2, 1..13), k in 1usize..4) {
            prop_assume!(k <= bits.len());
            let t = bits.len();
            let s = BitSequence::from_u8s(&bits).unwrap().with_period(t).unwrap();
            let r = periodic_measure(&s, k, &SearchOptions::default()).unwrap();
            prop_assert_eq!(r.value, oracle::periodic_correlation_exhaustive(&bits, k));
            prop_assert_eq!(periodic_correlation_at(&s, &r.shifts).unwrap().unsigned_abs(), r.value);
        }

        #[test]
        fn theta2_is_max_autocorrelation(bits in proptest::collection::vec(0u8..2, 2..60)) {
            let t = bits.len();
            let s = BitSequence::from_u8s(&bits).unwrap().with_period(t).unwrap();
            let r = periodic_measure(&s, 2, &SearchOptions::default()).unwrap();
            let direct = (1..t).map(|tau| periodic_autocorrelation(&s, tau).unwrap().unsigned_abs()).max().unwrap();
            prop_assert_eq!(r.value, direct);
        }

        #[test]
        fn even_order_complement_invariance(bits in proptest::collection::vec(0u8..2, 2..40), half in 1usize..3) {
            let k = 2 * half;
            prop_assume!(k <= bits.len());
            let s = BitSequence::from_u8s(&bits).unwrap();
            let n = bits.len();
            let a = aperiodic_measure(&s, n, k, &SearchOptions::default()).unwrap();
            let b = aperiodic_measure(&s.complement(), n, k, &SearchOptions::default()).unwrap();
            prop_assert_eq!(a, b);
        }
    }
}
