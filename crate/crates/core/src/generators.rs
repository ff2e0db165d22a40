//! Sequence families: m-sequences, Gold and small Kasami sequences, Hall's
//! sextic residue sequence and the Fermat-quotient threshold sequence.

use crate::bitseq::BitSequence;
use crate::complexity::linear_complexity;
use crate::correlation::periodic_autocorrelation;
use crate::error::{Error, Result};

/// Largest LFSR degree accepted by the generators.
pub const MAX_DEGREE: usize = 24;

/// Connection polynomial and seed of a Fibonacci LFSR producing
/// `s_{i+l} = c_{l-1} s_{i+l-1} + ... + c_0 s_i`.
///
/// `taps` bit `j` is `c_j` (so `x^3 + x + 1` is `0b011`); `seed` bit `j` is
/// `s_j`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct LfsrSpec {
    pub degree: usize,
    pub taps: u64,
    pub seed: u64,
}

impl LfsrSpec {
    pub fn new(degree: usize, taps: u64, seed: u64) -> Result<Self> {
        if !(2..=MAX_DEGREE).contains(&degree) {
            return Err(Error::InvalidParameter(format!(
                "LFSR degree must be in 2..={MAX_DEGREE}, got {degree}"
            )));
        }
        let mask = (1u64 << degree) - 1;
        if taps & !mask != 0 || seed & !mask != 0 {
            return Err(Error::InvalidParameter(format!(
                "taps/seed wider than degree {degree}"
            )));
        }
        if seed == 0 {
            return Err(Error::InvalidParameter("seed must be nonzero".into()));
        }
        if taps & 1 == 0 {
            return Err(Error::InvalidParameter(
                "c_0 must be 1 (the recurrence must have full degree)".into(),
            ));
        }
        Ok(LfsrSpec { degree, taps, seed })
    }

    /// Default primitive polynomial for `degree`, seeded with `s_0 = 1`.
    pub fn default_for(degree: usize) -> Result<Self> {
        let taps = default_taps(degree).ok_or_else(|| {
            Error::InvalidParameter(format!(
                "no default primitive polynomial for degree {degree}"
            ))
        })?;
        Self::new(degree, taps, 1)
    }

    fn step(&self, state: u64) -> u64 {
        let fb = (state & self.taps).count_ones() as u64 & 1;
        (state >> 1) | (fb << (self.degree - 1))
    }

    /// Length of the state cycle through the seed.
    pub fn cycle_length(&self) -> usize {
        let mut st = self.step(self.seed);
        let mut n = 1;
        while st != self.seed {
            st = self.step(st);
            n += 1;
        }
        n
    }

    /// The first `n` output bits.
    pub fn output(&self, n: usize) -> BitSequence {
        let mut st = self.seed;
        BitSequence::from_bits((0..n).map(|_| {
            let b = st & 1 == 1;
            st = self.step(st);
            b
        }))
    }
}

/// Primitive polynomials `x^l + ...` as `c_0..c_{l-1}` masks.
fn default_taps(degree: usize) -> Option<u64> {
    let exps: &[usize] = match degree {
        2 => &[1],
        3 => &[1],
        4 => &[1],
        5 => &[2],
        6 => &[1],
        7 => &[1],
        8 => &[4, 3, 2],
        9 => &[4],
        10 => &[3],
        11 => &[2],
        12 => &[6, 4, 1],
        13 => &[4, 3, 1],
        14 => &[10, 6, 1],
        15 => &[1],
        16 => &[12, 3, 1],
        17 => &[3],
        18 => &[7],
        19 => &[5, 2, 1],
        20 => &[3],
        21 => &[2],
        22 => &[1],
        23 => &[5],
        24 => &[7, 2, 1],
        _ => return None,
    };
    Some(exps.iter().fold(1u64, |acc, &e| acc | (1 << e)))
}

/// Preferred pairs for Gold sequences, as exponent lists below `x^l`.
fn preferred_pair(degree: usize) -> Option<(&'static [usize], &'static [usize])> {
    Some(match degree {
        5 => (&[2], &[4, 3, 2]),
        6 => (&[1], &[5, 2, 1]),
        7 => (&[3], &[3, 2, 1]),
        9 => (&[4], &[6, 4, 3]),
        10 => (&[3], &[8, 3, 2]),
        11 => (&[2], &[8, 5, 2]),
        _ => return None,
    })
}

fn taps_from_exponents(exps: &[usize]) -> u64 {
    exps.iter().fold(1u64, |acc, &e| acc | (1 << e))
}

/// Shipped preferred pair for `degree` as tap masks.
pub fn preferred_taps(degree: usize) -> Option<(u64, u64)> {
    preferred_pair(degree).map(|(a, b)| (taps_from_exponents(a), taps_from_exponents(b)))
}

fn checked_primitive(spec: &LfsrSpec) -> Result<usize> {
    let expected = (1usize << spec.degree) - 1;
    let observed = spec.cycle_length();
    if observed != expected {
        return Err(Error::NotPrimitive { observed, expected });
    }
    Ok(expected)
}

/// One period of the m-sequence of a primitive LFSR.
pub fn m_sequence(spec: &LfsrSpec) -> Result<BitSequence> {
    let t = checked_primitive(spec)?;
    spec.output(t).with_period(t)
}

/// `u_{q n mod T}`: decimation of one period by `q`.
pub fn decimate(s: &BitSequence, q: usize) -> Result<BitSequence> {
    let one = s.one_period()?;
    let t = one.len();
    BitSequence::from_bits((0..t).map(|n| one.get((q * n) % t))).with_period(t)
}

fn xor_shifted(u: &BitSequence, v: &BitSequence, shift: usize) -> Result<BitSequence> {
    let t = u.period().ok_or(Error::MissingPeriod)?;
    let v_one = v.one_period()?;
    let tv = v_one.len();
    BitSequence::from_bits((0..t).map(|n| u.get(n) ^ v_one.get((n + shift) % tv))).with_period(t)
}

/// Peak cross-correlation magnitude bound for a preferred pair of degree `l`:
/// values lie in `{-1, -t(l), t(l) - 2}` with `t(l) = 1 + 2^{floor((l+2)/2)}`.
fn preferred_values(degree: usize) -> [i64; 3] {
    let tl = 1 + (1i64 << ((degree + 2) / 2));
    [-1, -tl, tl - 2]
}

fn cross_correlation(u: &BitSequence, v: &BitSequence, tau: usize) -> i64 {
    let t = u.len();
    (0..t)
        .map(|n| {
            if u.get(n) == v.get((n + tau) % t) {
                1
            } else {
                -1
            }
        })
        .sum()
}

/// Gold sequence `u_n + v_{n+shift}` from two primitive polynomials of
/// degree `l` forming a preferred pair.
///
/// The pair is validated: both polynomials must be primitive, the result
/// must have linear complexity `2l`, and the cross-correlation of the two
/// m-sequences must be three-valued.
pub fn gold_sequence(degree: usize, taps: (u64, u64), shift: usize) -> Result<BitSequence> {
    if degree.is_multiple_of(4) || degree < 3 {
        return Err(Error::InvalidParameter(format!(
            "Gold sequences need l odd or l = 2 mod 4, got {degree}"
        )));
    }
    let u = m_sequence(&LfsrSpec::new(degree, taps.0, 1)?)?;
    let v = m_sequence(&LfsrSpec::new(degree, taps.1, 1)?)?;
    let t = u.len();
    let allowed = preferred_values(degree);
    if let Some(tau) = (0..t).find(|&tau| !allowed.contains(&cross_correlation(&u, &v, tau))) {
        return Err(Error::NotPreferred(format!(
            "cross-correlation {} at lag {tau} outside {allowed:?}",
            cross_correlation(&u, &v, tau)
        )));
    }
    let g = xor_shifted(&u, &v, shift % t)?;
    let l = linear_complexity(&g, 2 * t)?.value;
    if l != 2 * degree {
        return Err(Error::NotPreferred(format!(
            "linear complexity {l}, expected {}",
            2 * degree
        )));
    }
    Ok(g)
}

/// Gold sequence from the shipped preferred pair for `degree`.
pub fn gold_sequence_default(degree: usize, shift: usize) -> Result<BitSequence> {
    let taps = preferred_taps(degree).ok_or_else(|| {
        Error::InvalidParameter(format!(
            "no shipped preferred pair for l = {degree} (available: 5, 6, 7, 9, 10, 11)"
        ))
    })?;
    gold_sequence(degree, taps, shift)
}

/// Small Kasami sequence `u_n + w_{n+shift}`, `w` the decimation of the
/// m-sequence `u` by `2^{l/2} + 1`.
pub fn small_kasami(degree: usize, shift: usize) -> Result<BitSequence> {
    if !degree.is_multiple_of(2) {
        return Err(Error::InvalidParameter(format!(
            "small Kasami sequences need even l, got {degree}"
        )));
    }
    small_kasami_with_decimation(degree, (1 << (degree / 2)) + 1, shift)
}

/// Small Kasami construction with an arbitrary decimation factor. Only
/// `2^{l/2} + 1` yields the Kasami family; other factors exist for
/// fault-injection checks.
pub fn small_kasami_with_decimation(degree: usize, q: usize, shift: usize) -> Result<BitSequence> {
    let u = m_sequence(&LfsrSpec::default_for(degree)?)?;
    let w = decimate(&u, q)?;
    let w_period = w.minimal_period_of_period();
    let w = w.prefix(w_period)?.with_period(w_period)?;
    xor_shifted(&u, &w, shift % w_period)
}

impl BitSequence {
    /// Minimal period of one declared period (divides `T`).
    pub(crate) fn minimal_period_of_period(&self) -> usize {
        let t = self.period().unwrap_or(self.len());
        let one = self.take(t).expect("period within data");
        (1..=t)
            .filter(|p| t.is_multiple_of(*p))
            .find(|&p| (0..t).all(|i| one.get(i) == one.get((i + p) % t)))
            .unwrap_or(t)
    }
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n.is_multiple_of(2) {
        return n == 2;
    }
    let mut d = 3u64;
    while d.saturating_mul(d) <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 2;
    }
    true
}

fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

pub fn pow_mod(mut base: u64, mut exp: u64, m: u64) -> u64 {
    let mut acc = 1 % m;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, m);
        }
        base = mul_mod(base, base, m);
        exp >>= 1;
    }
    acc
}

fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            out.push(d);
            while n.is_multiple_of(d) {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

/// Multiplicative order test: `g` generates `(Z/pZ)^*`.
pub fn is_primitive_root(g: u64, p: u64) -> bool {
    if g.is_multiple_of(p) {
        return false;
    }
    prime_factors(p - 1)
        .into_iter()
        .all(|q| pow_mod(g, (p - 1) / q, p) != 1)
}

pub fn smallest_primitive_root(p: u64) -> Option<u64> {
    (2..p).find(|&g| is_primitive_root(g, p))
}

/// Prime `T = 1 (mod 6)` with a primitive root `g`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct HallSpec {
    pub t: u64,
    pub g: u64,
}

impl HallSpec {
    pub fn new(t: u64, g: Option<u64>) -> Result<Self> {
        if !is_prime(t) || t % 6 != 1 {
            return Err(Error::InvalidParameter(format!(
                "T = {t} must be a prime with T = 1 mod 6"
            )));
        }
        let g = match g {
            Some(g) => g,
            None => smallest_primitive_root(t).expect("prime modulus has a primitive root"),
        };
        if !is_primitive_root(g, t) {
            return Err(Error::InvalidParameter(format!(
                "g = {g} is not a primitive root modulo {t}"
            )));
        }
        Ok(HallSpec { t, g })
    }
}

/// Hall's sextic residue sequence: `h_n = 1` iff `n mod T` lies in
/// `C_0 ∪ C_1 ∪ C_3`, where `C_j = { g^{6i+j} }`.
pub fn hall_sextic(spec: &HallSpec) -> Result<BitSequence> {
    let t = spec.t as usize;
    let mut bits = vec![false; t];
    let mut x = 1u64;
    for e in 0..t - 1 {
        bits[x as usize] = matches!(e % 6, 0 | 1 | 3);
        x = mul_mod(x, spec.g, spec.t);
    }
    BitSequence::from_bits(bits).with_period(t)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct FermatSpec {
    pub p: u64,
}

impl FermatSpec {
    pub fn new(p: u64) -> Result<Self> {
        if p < 3 || !is_prime(p) || p >= 1 << 31 {
            return Err(Error::InvalidParameter(format!(
                "p = {p} must be an odd prime below 2^31"
            )));
        }
        Ok(FermatSpec { p })
    }
}

/// Fermat quotient `q_p(u) = (u^{p-1} - 1)/p mod p`, with `q_p(kp) = 0`.
pub fn fermat_quotient(p: u64, u: u64) -> u64 {
    if u.is_multiple_of(p) {
        return 0;
    }
    let p2 = p * p;
    let r = pow_mod(u % p2, p - 1, p2);
    // r = 1 (mod p)
    ((r + p2 - 1) % p2) / p
}

/// Binary threshold sequence of Fermat quotients: `e_u = 1` iff
/// `q_p(u) / p >= 1/2`. Period `p^2`.
pub fn fermat_threshold(spec: &FermatSpec) -> Result<BitSequence> {
    let p = spec.p;
    let t = (p * p) as usize;
    BitSequence::from_bits((0..t as u64).map(|u| 2 * fermat_quotient(p, u) >= p)).with_period(t)
}

/// Checks that every pair of distinct lags of an m-sequence has periodic
/// autocorrelation `-1`.
pub fn has_two_level_autocorrelation(s: &BitSequence) -> Result<bool> {
    let t = s.period().ok_or(Error::MissingPeriod)?;
    for tau in 1..t {
        if periodic_autocorrelation(s, tau)? != -1 {
            return Ok(false);
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn default_polynomials_are_primitive() {
        for l in 2..=20 {
            let spec = LfsrSpec::default_for(l).unwrap();
            assert_eq!(spec.cycle_length(), (1 << l) - 1, "degree {l}");
        }
    }

    #[test]
    fn m_sequence_degree_three_by_hand() {
        // x^3 + x + 1: s_{i+3} = s_{i+1} + s_i, seed (1,0,0)
        let spec = LfsrSpec::new(3, 0b011, 0b001).unwrap();
        let m = m_sequence(&spec).unwrap();
        assert_eq!(m.to_u8s(), vec![1, 0, 0, 1, 0, 1, 1]);
        assert_eq!(m.period(), Some(7));
        assert_eq!(linear_complexity(&m, 14).unwrap().value, 3);
        assert!(has_two_level_autocorrelation(&m).unwrap());
    }

    #[test]
    fn m_sequence_properties() {
        for l in 2..=12 {
            let m = m_sequence(&LfsrSpec::default_for(l).unwrap()).unwrap();
            let t = (1 << l) - 1;
            assert_eq!(m.len(), t);
            assert_eq!(m.periods(2).unwrap().minimal_period(), t);
            assert_eq!(linear_complexity(&m, 2 * t).unwrap().value, l);
        }
    }

    #[test]
    fn non_primitive_reports_cycle() {
        // x^4 + x^3 + x^2 + x + 1 has order 5
        let spec = LfsrSpec::new(4, 0b1111, 1).unwrap();
        assert!(matches!(
            m_sequence(&spec),
            Err(Error::NotPrimitive {
                observed: 5,
                expected: 15
            })
        ));
        assert!(LfsrSpec::new(4, 0b0011, 0).is_err());
        assert!(LfsrSpec::new(4, 0b0010, 1).is_err());
    }

    #[test]
    fn gold_sequences() {
        for l in [5, 6, 7, 9, 10] {
            let g = gold_sequence_default(l, 3).unwrap();
            let t = (1 << l) - 1;
            assert_eq!(g.len(), t);
            assert_eq!(
                linear_complexity(&g, 2 * t).unwrap().value,
                2 * l,
                "l = {l}"
            );
        }
        let a = gold_sequence_default(5, 0).unwrap();
        let b = gold_sequence_default(5, 1).unwrap();
        assert_ne!(a, b);
        assert_eq!(linear_complexity(&b, 62).unwrap().value, 10);
    }

    #[test]
    fn gold_rejects_bad_pairs() {
        assert!(matches!(
            gold_sequence(4, (0b0011, 0b1001), 0),
            Err(Error::InvalidParameter(_))
        ));
        // same polynomial twice: sum of shifts of one m-sequence
        assert!(matches!(
            gold_sequence(5, (0b00101, 0b00101), 1),
            Err(Error::NotPreferred(_))
        ));
        // x^5+x^2+1 with its reciprocal x^5+x^3+1 is not a preferred pair
        assert!(matches!(
            gold_sequence(5, (0b00101, 0b01001), 0),
            Err(Error::NotPreferred(_))
        ));
    }

    #[test]
    fn small_kasami_complexity() {
        for (l, lc) in [(4, 6), (6, 9), (8, 12), (10, 15)] {
            let k = small_kasami(l, 1).unwrap();
            let t = (1 << l) - 1;
            assert_eq!(k.len(), t);
            assert_eq!(linear_complexity(&k, 2 * t).unwrap().value, lc);
        }
        assert!(small_kasami(5, 0).is_err());
        // wrong decimation changes the linear complexity
        let bad = small_kasami_with_decimation(6, 7, 1).unwrap();
        assert_ne!(linear_complexity(&bad, 126).unwrap().value, 9);
    }

    #[test]
    fn hall_examples() {
        let h = hall_sextic(&HallSpec::new(7, Some(3)).unwrap()).unwrap();
        assert_eq!(h.to_u8s(), vec![0, 1, 0, 1, 0, 0, 1]);
        let h13 = hall_sextic(&HallSpec::new(13, Some(2)).unwrap()).unwrap();
        assert_eq!(h13.weight(), 6);
        assert!(HallSpec::new(11, None).is_err());
        assert!(HallSpec::new(13, Some(3)).is_err());
        assert_eq!(HallSpec::new(7, None).unwrap().g, 3);
    }

    #[test]
    fn hall_coset_invariance() {
        for t in [7u64, 13, 19, 31, 37, 43] {
            let spec = HallSpec::new(t, None).unwrap();
            let h = hall_sextic(&spec).unwrap();
            assert_eq!(h.weight() as u64, (t - 1) / 2);
            let g6 = pow_mod(spec.g, 6, t);
            for n in 0..t {
                assert_eq!(h.get(n as usize), h.get(mul_mod(g6, n, t) as usize));
            }
        }
    }

    #[test]
    fn fermat_examples() {
        assert_eq!(fermat_quotient(3, 1), 0);
        assert_eq!(fermat_quotient(3, 2), 1);
        assert_eq!(fermat_quotient(3, 3), 0);
        assert_eq!(fermat_quotient(3, 5), 2);
        let e = fermat_threshold(&FermatSpec::new(3).unwrap()).unwrap();
        assert_eq!(e.len(), 9);
        let bits = e.to_u8s();
        assert_eq!(&bits[..4], &[0, 0, 0, 0]);
        assert_eq!(bits[5], 1);
        assert!(FermatSpec::new(9).is_err());
        assert!(FermatSpec::new(2).is_err());
    }

    #[test]
    fn fermat_quotient_matches_definition() {
        // direct big evaluation for small p
        for p in [5u64, 7, 11] {
            for u in 1..p * p {
                if u % p == 0 {
                    continue;
                }
                let big = (u as u128).pow((p - 1) as u32);
                let q = ((big - 1) / p as u128 % p as u128) as u64;
                assert_eq!(fermat_quotient(p, u), q, "p {p} u {u}");
            }
        }
    }

    #[test]
    fn fermat_periodicity() {
        for p in [3u64, 5, 7, 11] {
            let e = fermat_threshold(&FermatSpec::new(p).unwrap()).unwrap();
            let two = e.periods(2).unwrap();
            let t = (p * p) as usize;
            assert!(t.is_multiple_of(two.minimal_period()));
            for k in 0..p as usize {
                assert!(!e.get(k * p as usize));
            }
        }
    }
}
