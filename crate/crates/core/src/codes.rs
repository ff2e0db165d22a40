//! Cyclic span of a periodic sequence and low-weight vectors of its dual.
//!
//! A vector `c` in the dual of the span of all cyclic shifts satisfies
//! `sum_i c_i s_{n+i} = 0` for every `n`, so its support is a shift set on
//! which the periodic correlation sum is `T`: a full periodic peak. The
//! Hamming bound forces such a vector to exist at small weight once the span
//! dimension (the linear complexity) is small compared to `T`.

use num_bigint::BigUint;
use num_traits::{One, Zero};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::bitseq::{words_for, BitSequence, ShiftSet};
use crate::correlation::periodic_correlation_at;
use crate::error::{Error, Result};

/// Largest syndrome table built by [`find_periodic_peak`].
pub const DEFAULT_MAX_HASH_ENTRIES: u128 = 1 << 28;

fn binomial(n: usize, k: usize) -> BigUint {
    if k > n {
        return BigUint::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigUint::one();
    for i in 0..k {
        acc *= n - i;
        acc /= i + 1;
    }
    acc
}

/// Hamming-bound existence test: true iff
/// `sum_{i=0}^{floor((t-1)/2)} C(T, i) (p-1)^i > p^(T-d)`, evaluated exactly.
/// When it holds, every `d`-dimensional code in `F_p^T` contains a nonzero
/// vector of weight at most `t`.
pub fn hamming_condition(p: u64, length: usize, dim: usize, t: usize) -> Result<bool> {
    if p < 2 || !crate::generators::is_prime(p) {
        return Err(Error::InvalidParameter(format!("p = {p} is not prime")));
    }
    if dim > length {
        return Err(Error::InvalidParameter(format!(
            "dimension {dim} exceeds length {length}"
        )));
    }
    if t == 0 {
        return Err(Error::InvalidParameter("weight t must be positive".into()));
    }
    let radius = (t - 1) / 2;
    let q = BigUint::from(p - 1);
    let mut sum = BigUint::zero();
    let mut qpow = BigUint::one();
    for i in 0..=radius.min(length) {
        sum += binomial(length, i) * &qpow;
        qpow *= &q;
    }
    let rhs = BigUint::from(p).pow((length - dim) as u32);
    Ok(sum > rhs)
}

/// Smallest `t >= 2` with `sum_{i <= floor((t-1)/2)} C(T, i) >= 2^L`. A
/// `T`-periodic sequence of linear complexity `L` then has a full periodic
/// peak of some order `k <= t`.
pub fn theorem1_threshold(period: usize, l: usize) -> Result<usize> {
    if l > period {
        return Err(Error::InvalidParameter(format!(
            "linear complexity {l} exceeds period {period}"
        )));
    }
    let target = BigUint::one() << l;
    let mut sum = BigUint::zero();
    for r in 0..=period {
        sum += binomial(period, r);
        if sum >= target {
            return Ok(if r == 0 { 2 } else { 2 * r + 1 });
        }
    }
    unreachable!("sum over all i reaches 2^T >= 2^L")
}

/// Row-reduced basis of the span of all cyclic shifts of one period.
#[derive(Clone, Debug)]
pub struct CyclicSpan {
    period: usize,
    /// One period of the sequence.
    sequence: BitSequence,
    /// Reduced row echelon basis, `T` bits per row.
    rows: Vec<Vec<u64>>,
    pivots: Vec<usize>,
}

fn row_bit(row: &[u64], i: usize) -> bool {
    (row[i / 64] >> (i % 64)) & 1 == 1
}

fn xor_row(dst: &mut [u64], src: &[u64]) {
    for (a, b) in dst.iter_mut().zip(src) {
        *a ^= b;
    }
}

impl CyclicSpan {
    pub fn period(&self) -> usize {
        self.period
    }

    /// Dimension `L`.
    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    pub fn sequence(&self) -> &BitSequence {
        &self.sequence
    }

    pub fn rows(&self) -> &[Vec<u64>] {
        &self.rows
    }

    fn cyclic_shift(&self, n: usize) -> Vec<u64> {
        let doubled = self.sequence.periods(2).expect("period set");
        doubled.extract(n, self.period)
    }

    /// Whether `v` (T bits) lies in the span.
    pub fn contains(&self, v: &[u64]) -> bool {
        let mut r = v.to_vec();
        for (row, &pc) in self.rows.iter().zip(&self.pivots) {
            if row_bit(&r, pc) {
                xor_row(&mut r, row);
            }
        }
        r.iter().all(|&w| w == 0)
    }

    /// Every cyclic shift of the period reduces to zero against the basis.
    pub fn contains_all_shifts(&self) -> bool {
        (0..self.period).all(|n| self.contains(&self.cyclic_shift(n)))
    }

    /// Column `i` of the basis matrix as an `L`-bit syndrome.
    fn syndromes(&self) -> Result<Vec<u128>> {
        if self.dim() > 128 {
            return Err(Error::InvalidParameter(format!(
                "span dimension {} exceeds the 128-bit syndrome width",
                self.dim()
            )));
        }
        Ok((0..self.period)
            .map(|i| {
                self.rows.iter().enumerate().fold(0u128, |acc, (r, row)| {
                    acc | ((row_bit(row, i) as u128) << r)
                })
            })
            .collect())
    }

    /// Basis of the dual code: one vector per non-pivot column.
    pub fn dual_basis(&self) -> Vec<Vec<u64>> {
        let t = self.period;
        (0..t)
            .filter(|c| !self.pivots.contains(c))
            .map(|f| {
                let mut v = vec![0u64; words_for(t)];
                v[f / 64] |= 1 << (f % 64);
                for (row, &pc) in self.rows.iter().zip(&self.pivots) {
                    if row_bit(row, f) {
                        v[pc / 64] |= 1 << (pc % 64);
                    }
                }
                v
            })
            .collect()
    }
}

/// Gaussian elimination over GF(2) on the `T` cyclic shifts of one period.
pub fn build_span(s: &BitSequence) -> Result<CyclicSpan> {
    let t = s.period().ok_or(Error::MissingPeriod)?;
    let one = s.one_period()?;
    let doubled = one.periods(2)?;
    let mut rows: Vec<Vec<u64>> = Vec::new();
    let mut pivots: Vec<usize> = Vec::new();
    for n in 0..t {
        let mut v = doubled.extract(n, t);
        for (row, &pc) in rows.iter().zip(&pivots) {
            if row_bit(&v, pc) {
                xor_row(&mut v, row);
            }
        }
        let Some(pc) = (0..t).find(|&i| row_bit(&v, i)) else {
            continue;
        };
        // keep the basis fully reduced
        for row in rows.iter_mut() {
            if row_bit(row, pc) {
                xor_row(row, &v);
            }
        }
        rows.push(v);
        pivots.push(pc);
    }
    let mut order: Vec<usize> = (0..rows.len()).collect();
    order.sort_by_key(|&i| pivots[i]);
    Ok(CyclicSpan {
        period: t,
        sequence: one,
        rows: order.iter().map(|&i| rows[i].clone()).collect(),
        pivots: order.iter().map(|&i| pivots[i]).collect(),
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum PeakKind {
    PeriodicFull,
    AperiodicHalf,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PeakCertificate {
    #[serde(rename = "k")]
    pub order: usize,
    pub shifts: ShiftSet,
    pub kind: PeakKind,
    /// The recomputed correlation sum at `shifts` (`theta` for periodic peaks).
    #[serde(rename = "theta")]
    pub verified_value: i64,
    /// Every zero-sum relation was rechecked position by position.
    pub verified: bool,
    /// Order 1: only possible for the all-zero sequence.
    pub degenerate: bool,
}

/// Checks `sum_j s_{n+d_j} = 0 (mod 2)` for every `n` in one period.
pub fn zero_sum_holds(s: &BitSequence, shifts: &ShiftSet) -> Result<bool> {
    let t = s.period().ok_or(Error::MissingPeriod)?;
    let one = s.one_period()?;
    Ok((0..t).all(|n| {
        !shifts
            .as_slice()
            .iter()
            .fold(false, |acc, &d| acc ^ one.get((n + d) % t))
    }))
}

/// Dual vectors are enumerated directly when the dual has at most this
/// dimension and [`PeakMethod::Auto`] is selected.
pub const DUAL_ENUMERATION_MAX_DIM: usize = 20;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum PeakMethod {
    /// Dual enumeration for small duals, meet in the middle otherwise.
    #[default]
    Auto,
    MeetInTheMiddle,
    DualEnumeration,
}

#[derive(Clone, Copy, Debug)]
pub struct PeakSearchOptions {
    pub jobs: usize,
    pub max_hash_entries: u128,
    pub method: PeakMethod,
}

impl Default for PeakSearchOptions {
    fn default() -> Self {
        PeakSearchOptions {
            jobs: 1,
            max_hash_entries: DEFAULT_MAX_HASH_ENTRIES,
            method: PeakMethod::Auto,
        }
    }
}

/// Syndromes of all `b`-subsets, sorted by syndrome and then by the
/// lexicographic rank of the subset.
struct HalfTable {
    size: usize,
    arena: Vec<u32>,
    entries: Vec<(u128, u32)>,
}

impl HalfTable {
    fn build(syn: &[u128], b: usize) -> Self {
        let t = syn.len();
        let mut arena = Vec::new();
        let mut entries = Vec::new();
        let mut idx: Vec<usize> = (0..b).collect();
        let mut count = 0u32;
        if b <= t {
            loop {
                let s = idx.iter().fold(0u128, |acc, &i| acc ^ syn[i]);
                arena.extend(idx.iter().map(|&i| i as u32));
                entries.push((s, count));
                count += 1;
                if !next_combination(&mut idx, t) {
                    break;
                }
            }
        }
        entries.sort_unstable();
        HalfTable {
            size: b,
            arena,
            entries,
        }
    }

    fn subset(&self, id: u32) -> &[u32] {
        let start = id as usize * self.size;
        &self.arena[start..start + self.size]
    }

    /// Lexicographically smallest stored subset with syndrome `s` whose
    /// first element exceeds `after`.
    fn smallest_after(&self, s: u128, after: usize) -> Option<&[u32]> {
        let lo = self.entries.partition_point(|&(k, _)| k < s);
        let hi = lo + self.entries[lo..].partition_point(|&(k, _)| k == s);
        let group = &self.entries[lo..hi];
        // ranks are in lexicographic order, so first elements are non-decreasing
        let pos = group.partition_point(|&(_, id)| (self.subset(id)[0] as usize) <= after);
        group.get(pos).map(|&(_, id)| self.subset(id))
    }
}

fn next_combination(idx: &mut [usize], n: usize) -> bool {
    let k = idx.len();
    let mut i = k;
    while i > 0 && idx[i - 1] == n - k + i - 1 {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    idx[i - 1] += 1;
    for j in i..k {
        idx[j] = idx[j - 1] + 1;
    }
    true
}

/// Lexicographically smallest `a`-subset `A` with `A[0] = first`, paired with
/// the smallest `B` from `table` so that `A ++ B` is a dual codeword.
fn probe_from(syn: &[u128], a: usize, first: usize, table: &HalfTable) -> Option<Vec<usize>> {
    let t = syn.len();
    let b = table.size;
    if first + a + b > t {
        return None;
    }
    let mut idx: Vec<usize> = (first..first + a).collect();
    loop {
        let last = idx[a - 1];
        if last + b < t {
            let s = idx.iter().fold(0u128, |acc, &i| acc ^ syn[i]);
            if let Some(bset) = table.smallest_after(s, last) {
                let mut support = idx.clone();
                support.extend(bset.iter().map(|&i| i as usize));
                return Some(support);
            }
        }
        // advance positions 1.. of A, keeping A[0] fixed
        let mut i = a;
        while i > 1 && idx[i - 1] == t - b - a + i - 1 {
            i -= 1;
        }
        if i <= 1 {
            return None;
        }
        idx[i - 1] += 1;
        for j in i..a {
            idx[j] = idx[j - 1] + 1;
        }
    }
}

fn mitm_weight(syn: &[u128], k: usize, table: &HalfTable, jobs: usize) -> Option<Vec<usize>> {
    let t = syn.len();
    let a = k.div_ceil(2);
    if jobs <= 1 {
        (0..t).find_map(|f| probe_from(syn, a, f, table))
    } else {
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(jobs)
            .build()
            .expect("thread pool");
        let firsts: Vec<usize> = (0..t).collect();
        pool.install(|| {
            firsts
                .par_iter()
                .find_map_first(|&f| probe_from(syn, a, f, table))
        })
    }
}

fn search_mitm(
    span: &CyclicSpan,
    t_max: usize,
    opts: &PeakSearchOptions,
) -> Result<Option<Vec<usize>>> {
    let t = span.period();
    let syn = span.syndromes()?;
    if let Some(i) = syn.iter().position(|&s| s == 0) {
        return Ok(Some(vec![i]));
    }
    let mut table: Option<HalfTable> = None;
    for k in 2..=t_max.min(t) {
        let b = k / 2;
        let entries = crate::correlation::binomial_saturating(t, b);
        if entries > opts.max_hash_entries {
            return Err(Error::BudgetExceeded {
                cost: entries,
                budget: opts.max_hash_entries,
            });
        }
        if table.as_ref().map(|h| h.size) != Some(b) {
            table = Some(HalfTable::build(&syn, b));
        }
        let found = mitm_weight(&syn, k, table.as_ref().expect("built"), opts.jobs);
        if found.is_some() {
            return Ok(found);
        }
    }
    Ok(None)
}

/// Lowest set bit of `a ^ b` decides: the vector holding it has the
/// lexicographically smaller support.
fn support_less(a: &[u64], b: &[u64]) -> bool {
    for (x, y) in a.iter().zip(b) {
        let d = x ^ y;
        if d != 0 {
            return x & (d & d.wrapping_neg()) != 0;
        }
    }
    false
}

fn search_dual(span: &CyclicSpan, t_max: usize) -> Result<Option<Vec<usize>>> {
    let basis = span.dual_basis();
    if basis.len() > 32 {
        return Err(Error::InvalidParameter(format!(
            "dual dimension {} too large to enumerate",
            basis.len()
        )));
    }
    let mut v = vec![0u64; words_for(span.period())];
    let mut best: Option<(usize, Vec<u64>)> = None;
    // Gray code: step g flips basis vector trailing_zeros(g)
    for g in 1u64..(1u64 << basis.len()) {
        xor_row(&mut v, &basis[g.trailing_zeros() as usize]);
        let w: usize = v.iter().map(|x| x.count_ones() as usize).sum();
        if w > t_max {
            continue;
        }
        let better = match &best {
            None => true,
            Some((bw, bv)) => w < *bw || (w == *bw && support_less(&v, bv)),
        };
        if better {
            best = Some((w, v.clone()));
        }
    }
    Ok(best.map(|(_, v)| (0..span.period()).filter(|&i| row_bit(&v, i)).collect()))
}

/// Minimum-weight nonzero dual vector of weight at most `t_max`, returned as
/// a verified periodic full-peak certificate. `Ok(None)` means no such
/// vector exists: the search is complete up to `t_max`.
///
/// Weight `k` is searched by meet in the middle: syndromes of all
/// `floor(k/2)`-subsets are sorted, then every `ceil(k/2)`-subset probes the
/// table for a partner lying entirely to its right. Small duals are instead
/// enumerated outright. Among minimum-weight vectors the lexicographically
/// smallest support is returned.
pub fn find_periodic_peak(
    span: &CyclicSpan,
    t_max: usize,
    opts: &PeakSearchOptions,
) -> Result<Option<PeakCertificate>> {
    if t_max < 2 {
        return Err(Error::InvalidParameter("t_max must be at least 2".into()));
    }
    let t = span.period();
    if span.dim() == t {
        // full-rank span: the dual is {0}
        return Ok(None);
    }
    let dual_dim = t - span.dim();
    let support = match opts.method {
        PeakMethod::DualEnumeration => search_dual(span, t_max)?,
        PeakMethod::MeetInTheMiddle => search_mitm(span, t_max, opts)?,
        PeakMethod::Auto if dual_dim <= DUAL_ENUMERATION_MAX_DIM => search_dual(span, t_max)?,
        PeakMethod::Auto => search_mitm(span, t_max, opts)?,
    };
    let Some(support) = support else {
        return Ok(None);
    };
    let k = support.len();
    let shifts = ShiftSet::new(support)?;
    let seq = span.sequence();
    let verified = zero_sum_holds(seq, &shifts)?;
    let verified_value = periodic_correlation_at(seq, &shifts)?;
    Ok(Some(PeakCertificate {
        order: k,
        shifts,
        kind: PeakKind::PeriodicFull,
        verified_value,
        verified: verified && verified_value == t as i64,
        degenerate: k == 1,
    }))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complexity::linear_complexity;
    use crate::oracle;
    use proptest::prelude::*;

    fn periodic(bits: &str) -> BitSequence {
        let s: BitSequence = bits.parse().unwrap();
        let t = s.len();
        s.with_period(t).unwrap()
    }

    #[test]
    fn hamming_condition_examples() {
        assert!(!hamming_condition(2, 7, 4, 3).unwrap());
        assert!(hamming_condition(2, 7, 5, 3).unwrap());
        // t = 1 compares 1 > p^(T-d), which never holds
        assert!(!hamming_condition(2, 7, 7, 1).unwrap());
        assert!(!hamming_condition(2, 7, 6, 1).unwrap());
        assert!(hamming_condition(4, 7, 6, 1).is_err());
        // ternary: 1 + 2*8 = 17 > 3^2 = 9
        assert!(hamming_condition(3, 8, 6, 3).unwrap());
    }

    #[test]
    fn threshold_examples() {
        assert_eq!(theorem1_threshold(31, 5).unwrap(), 3);
        assert_eq!(theorem1_threshold(15, 6).unwrap(), 5);
        assert_eq!(theorem1_threshold(31, 10).unwrap(), 7);
        assert_eq!(theorem1_threshold(10, 0).unwrap(), 2);
        assert!(theorem1_threshold(3, 4).is_err());
    }

    #[test]
    fn span_dimensions() {
        let z = BitSequence::zeros(9).with_period(9).unwrap();
        assert_eq!(build_span(&z).unwrap().dim(), 0);
        let m = periodic("1001011");
        let span = build_span(&m).unwrap();
        assert_eq!(span.dim(), 3);
        assert!(span.contains_all_shifts());
        assert!(matches!(
            build_span(&"0101".parse().unwrap()),
            Err(Error::MissingPeriod)
        ));
    }

    #[test]
    fn m_sequence_peak_is_the_recurrence() {
        let m = periodic("1001011");
        let span = build_span(&m).unwrap();
        let cert = find_periodic_peak(&span, 3, &PeakSearchOptions::default())
            .unwrap()
            .unwrap();
        assert_eq!(cert.order, 3);
        assert_eq!(cert.shifts.as_slice(), &[0, 1, 3]);
        assert!(cert.verified);
        assert_eq!(cert.verified_value, 7);
        assert!(!cert.degenerate);
    }

    #[test]
    fn zero_sequence_degenerate_peak() {
        let z = BitSequence::zeros(6).with_period(6).unwrap();
        let cert = find_periodic_peak(&build_span(&z).unwrap(), 2, &PeakSearchOptions::default())
            .unwrap()
            .unwrap();
        assert_eq!(cert.order, 1);
        assert_eq!(cert.shifts.as_slice(), &[0]);
        assert!(cert.degenerate && cert.verified);
    }

    #[test]
    fn not_found_is_reported() {
        // full-rank span: dual is trivial
        let s = periodic("1000000");
        let span = build_span(&s).unwrap();
        assert_eq!(span.dim(), 7);
        assert_eq!(
            find_periodic_peak(&span, 7, &PeakSearchOptions::default()).unwrap(),
            None
        );
        assert!(find_periodic_peak(&span, 1, &PeakSearchOptions::default()).is_err());
    }

    #[test]
    fn hash_gate() {
        let s = periodic("1101000111010110010001111");
        let span = build_span(&s).unwrap();
        let opts = PeakSearchOptions {
            jobs: 1,
            max_hash_entries: 10,
            method: PeakMethod::MeetInTheMiddle,
        };
        assert!(matches!(
            find_periodic_peak(&span, 6, &opts),
            Err(Error::BudgetExceeded { .. })
        ));
    }

    proptest! {
        #[test]
        fn span_dimension_is_linear_complexity(bits in proptest::collection::vec(0u8..2, 1..40)) {
            let t = bits.len();
            let s = BitSequence::from_u8s(&bits).unwrap().with_period(t).unwrap();
            let span = build_span(&s).unwrap();
            prop_assert_eq!(span.dim(), linear_complexity(&s, 2 * t).unwrap().value);
            prop_assert!(span.contains_all_shifts());
            for v in span.dual_basis() {
                for row in span.rows() {
                    let dot = v.iter().zip(row).fold(0u32, |a, (x, y)| a ^ (x & y).count_ones()) & 1;
                    prop_assert_eq!(dot, 0);
                }
            }
        }

        #[test]
        fn both_routes_match_oracle(
            bits in proptest::collection::vec(0u8..2, 2..21),
            jobs in 1usize..3,
        ) {
            let t = bits.len();
            let s = BitSequence::from_u8s(&bits).unwrap().with_period(t).unwrap();
            let span = build_span(&s).unwrap();
            let expected = oracle::min_dual_weight_exhaustive(&bits);
            for method in [PeakMethod::MeetInTheMiddle, PeakMethod::DualEnumeration] {
                let opts = PeakSearchOptions { jobs, method, ..Default::default() };
                match &expected {
                    None => prop_assert_eq!(find_periodic_peak(&span, t, &opts).unwrap(), None),
                    Some((w, support)) => {
                        let cert = find_periodic_peak(&span, (*w).max(2), &opts).unwrap().unwrap();
                        prop_assert_eq!(cert.order, *w);
                        prop_assert_eq!(cert.shifts.as_slice(), &support[..]);
                        prop_assert!(cert.verified);
                        if *w > 2 {
                            prop_assert_eq!(find_periodic_peak(&span, w - 1, &opts).unwrap(), None);
                        }
                    }
                }
            }
        }

        #[test]
        fn threshold_guarantees_a_peak(bits in proptest::collection::vec(0u8..2, 2..32)) {
            let t = bits.len();
            let s = BitSequence::from_u8s(&bits).unwrap().with_period(t).unwrap();
            let span = build_span(&s).unwrap();
            let tmax = theorem1_threshold(t, span.dim()).unwrap();
            let cert = find_periodic_peak(&span, tmax, &PeakSearchOptions::default()).unwrap();
            // a dual vector exists whenever L < T
            if span.dim() < t {
                let cert = cert.expect("peak within threshold");
                prop_assert!(cert.order <= tmax);
                prop_assert!(cert.verified);
            }
        }
    }
}
