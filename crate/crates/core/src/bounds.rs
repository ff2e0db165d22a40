//! Lower bounds on linear and maximum-order complexity from correlation
//! data, the Hamming-bound thresholds, and the Table 1 family parameters.
//!
//! Every fired/not-fired decision is made in exact integer arithmetic.
//! Logarithms are base 2; floating point only appears in reported values.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigUint;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::bitseq::{BitSequence, ShiftSet};
use crate::complexity::max_order_complexity;
use crate::correlation::{aperiodic_measure, correlation_at, CorrelationResult, SearchOptions};
use crate::error::{Error, Result};
use crate::generators::is_prime;

pub use crate::codes::theorem1_threshold;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BoundReport {
    pub name: String,
    pub inputs: BTreeMap<String, Value>,
    /// Present only when `fired`.
    pub value: Option<f64>,
    pub fired: bool,
    pub commentary: String,
}

impl BoundReport {
    fn new(name: &str) -> Self {
        BoundReport {
            name: name.to_string(),
            inputs: BTreeMap::new(),
            value: None,
            fired: false,
            commentary: String::new(),
        }
    }

    fn input(mut self, key: &str, v: impl Into<Value>) -> Self {
        self.inputs.insert(key.to_string(), v.into());
        self
    }

    fn fire(mut self, value: f64, commentary: String) -> Self {
        self.value = Some(value);
        self.fired = true;
        self.commentary = commentary;
        self
    }

    fn miss(mut self, commentary: String) -> Self {
        self.value = None;
        self.fired = false;
        self.commentary = commentary;
        self
    }
}

/// `log2` of a big integer, accurate to double precision.
fn log2_big(x: &BigUint) -> f64 {
    let bits = x.bits();
    if bits <= 64 {
        let v: u64 = x.try_into().expect("fits");
        return (v as f64).log2();
    }
    let shift = bits - 64;
    let top: u64 = (x >> shift).try_into().expect("fits");
    (top as f64).log2() + shift as f64
}

/// `ceil(log2 x)` for `x >= 1`.
fn ceil_log2_big(x: &BigUint) -> u64 {
    if x.is_zero() {
        return 0;
    }
    (x - 1u32).bits()
}

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

/// `C_1..C_K` must be supplied without gaps.
fn check_contiguous(corr: &BTreeMap<usize, u64>) -> Result<usize> {
    if corr.is_empty() {
        return Err(Error::InvalidParameter("empty correlation map".into()));
    }
    let k_max = *corr.keys().last().expect("nonempty");
    if corr.keys().copied().ne(1..=k_max) {
        return Err(Error::InvalidParameter(
            "correlation map must cover k = 1..K without gaps".into(),
        ));
    }
    Ok(k_max)
}

fn prefix_max(corr: &BTreeMap<usize, u64>) -> Vec<u64> {
    let mut out = Vec::with_capacity(corr.len());
    let mut m = 0;
    for &c in corr.values() {
        m = m.max(c);
        out.push(m);
    }
    out
}

fn corr_json(corr: &BTreeMap<usize, u64>) -> Value {
    Value::Object(
        corr.iter()
            .map(|(k, v)| (k.to_string(), json!(v)))
            .collect(),
    )
}

/// Smallest `x <= K-1` with `x >= N - max_{k <= x+1} C_k`. Since the true
/// `L(S, N)` satisfies this relation, it is at least that `x`.
fn bw_scan(ceilings: &[u64], n: usize) -> Option<usize> {
    (0..ceilings.len()).find(|&x| x as u64 + ceilings[x] >= n as u64)
}

/// Lower bound on `L(S, N)` from `L >= N - max_{1 <= k <= L+1} C_k(S, N)`,
/// read by an ascending scan over the supplied orders.
pub fn bw_lower_bound(corr: &BTreeMap<usize, u64>, n: usize) -> Result<BoundReport> {
    let k_max = check_contiguous(corr)?;
    let ceil = prefix_max(corr);
    let rep = BoundReport::new("bw")
        .input("N", n)
        .input("K", k_max)
        .input("C", corr_json(corr));
    Ok(match bw_scan(&ceil, n) {
        Some(x) => rep.fire(
            x as f64,
            format!("smallest L* with L* >= N - max_(k<=L*+1) C_k is {x}"),
        ),
        None => rep.miss(format!(
            "no L* <= {} satisfies the relation; only L >= {k_max} follows",
            k_max - 1
        )),
    })
}

fn iw_scan(ceilings: &[u64], n: usize) -> Option<usize> {
    (0..ceilings.len()).find(|&m| {
        let pow = if m + 1 >= 128 {
            u128::MAX
        } else {
            1u128 << (m + 1)
        };
        (m as u128).saturating_add(pow.saturating_mul(ceilings[m] as u128)) >= n as u128
    })
}

/// Lower bound on `M(S, N)` from
/// `M >= N - 2^{M+1} max_{1 <= k <= M+1} C_k(S, N)`, by ascending scan.
pub fn iw_lower_bound(corr: &BTreeMap<usize, u64>, n: usize) -> Result<BoundReport> {
    let k_max = check_contiguous(corr)?;
    let ceil = prefix_max(corr);
    let rep = BoundReport::new("iw")
        .input("N", n)
        .input("K", k_max)
        .input("C", corr_json(corr));
    Ok(match iw_scan(&ceil, n) {
        Some(m) => rep.fire(
            m as f64,
            format!("smallest M* with M* + 2^(M*+1) max_(k<=M*+1) C_k >= N is {m}"),
        ),
        None => rep.miss(format!(
            "no M* <= {} satisfies the relation; only M >= {k_max} follows",
            k_max - 1
        )),
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HalfPeakThreshold {
    pub t: usize,
    /// A half peak exists at some order `1 < k <= k_bound = 2t`.
    pub k_bound: usize,
}

/// Smallest `t` with `C(floor(N/2), t) >= 2^L`, or `None` if no
/// `t <= floor(N/2)` works.
pub fn theorem2_threshold(n: usize, l: usize) -> Result<Option<HalfPeakThreshold>> {
    if l > n {
        return Err(Error::InvalidParameter(format!(
            "linear complexity {l} exceeds N = {n}"
        )));
    }
    let half = n / 2;
    let target = BigUint::one() << l;
    Ok((1..=half)
        .find(|&t| binomial(half, t) >= target)
        .map(|t| HalfPeakThreshold { t, k_bound: 2 * t }))
}

/// `K/2 (log N + 1 - log K) - (log K)/2 + delta`, the lower bound on
/// `L(S, N)` when `C_k(S, N) < N/2` for every `k < K`. Requires `K >= 2` and
/// `K^2 < N`.
pub fn corollary3_bound(k: usize, n: usize, delta: f64) -> Result<f64> {
    if k < 2 {
        return Err(Error::InvalidParameter(format!(
            "K = {k} must be at least 2"
        )));
    }
    if (k as u128) * (k as u128) >= n as u128 {
        return Err(Error::InvalidParameter(format!(
            "hypothesis K^2 < N violated (K = {k}, N = {n})"
        )));
    }
    let (kf, nf) = (k as f64, n as f64);
    Ok(0.5 * kf * (nf.log2() + 1.0 - kf.log2()) - 0.5 * kf.log2() + delta)
}

fn corollary3_report(k: usize, n: usize, delta: f64) -> BoundReport {
    let rep = BoundReport::new("cor3")
        .input("K", k)
        .input("N", n)
        .input("delta", delta);
    match corollary3_bound(k, n, delta) {
        Ok(v) => rep.fire(v, "up to the additive constant delta".into()),
        Err(e) => rep.miss(e.to_string()),
    }
}

pub fn corollary3_report_for(k: usize, n: usize, delta: f64) -> BoundReport {
    corollary3_report(k, n, delta)
}

/// Witness pair for an order-2 half peak under small maximum-order
/// complexity: the `M`-windows at `d1` and `d2` coincide, so
/// `s_{i+d1} = s_{i+d2}` for `i < N - d2`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RepeatWitness {
    pub d1: usize,
    pub d2: usize,
    pub window: usize,
    /// Correlation sum at `(window, {d1, d2})`, recomputed.
    pub value: i64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Theorem4Check {
    pub n: usize,
    pub moc: usize,
    /// `2^{M+2} <= N`.
    pub hypothesis: bool,
    pub c2: Option<CorrelationResult>,
    pub witness: Option<RepeatWitness>,
    /// Hypothesis false, or both `C_2 >= N/2` and the witness reach `N/2`.
    pub holds: bool,
}

impl Theorem4Check {
    pub fn report(&self) -> BoundReport {
        let rep = BoundReport::new("thm4")
            .input("N", self.n)
            .input("M", self.moc);
        if !self.hypothesis {
            return rep.miss(format!("M = {} > log2 N - 2; no claim", self.moc));
        }
        let c2 = self
            .c2
            .as_ref()
            .expect("computed when the hypothesis holds");
        let w = self
            .witness
            .as_ref()
            .expect("computed when the hypothesis holds");
        rep.fire(
            c2.value as f64,
            format!(
                "C_2 = {} (U = {}, D = {}); repeat witness d = ({}, {}) over U = {} sums to {}; {}",
                c2.value,
                c2.window,
                c2.shifts,
                w.d1,
                w.d2,
                w.window,
                w.value,
                if self.holds {
                    "half peak confirmed"
                } else {
                    "HALF PEAK MISSING"
                }
            ),
        )
    }
}

/// First repeated `M`-window among positions `0..=2^M`, which must exist
/// when `2^M + 1 + M <= N`.
fn repeat_witness(s: &BitSequence, n: usize, m: usize) -> Result<Option<(usize, usize)>> {
    let mut seen: BTreeMap<Vec<u64>, usize> = BTreeMap::new();
    let last = (1usize << m).min(n.saturating_sub(m));
    for i in 0..=last {
        let w = s.extract(i, m);
        if let Some(&j) = seen.get(&w) {
            return Ok(Some((j, i)));
        }
        seen.insert(w, i);
    }
    Ok(None)
}

/// If `M(S, N) <= log2 N - 2`, checks `C_2(S, N) >= N/2` by exhaustive
/// order-2 search and independently through a repeated-window witness.
pub fn theorem4_check(s: &BitSequence, n: usize, opts: &SearchOptions) -> Result<Theorem4Check> {
    let prefix = s.take(n)?;
    let moc = max_order_complexity(&prefix, n)?;
    let hypothesis = moc + 2 < 64 && (1u128 << (moc + 2)) <= n as u128;
    if !hypothesis {
        return Ok(Theorem4Check {
            n,
            moc,
            hypothesis,
            c2: None,
            witness: None,
            holds: true,
        });
    }
    let c2 = aperiodic_measure(&prefix, n, 2, opts)?;
    let (d1, d2) = repeat_witness(&prefix, n, moc)?.expect("pigeonhole over 2^M + 1 windows");
    let window = n - d2;
    let value = correlation_at(&prefix, window, &ShiftSet::new(vec![d1, d2])?)?;
    let holds = 2 * c2.value >= n as u64 && 2 * value >= n as i64;
    Ok(Theorem4Check {
        n,
        moc,
        hypothesis,
        c2: Some(c2),
        witness: Some(RepeatWitness {
            d1,
            d2,
            window,
            value,
        }),
        holds,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Family {
    MSequence,
    SmallKasami,
    Gold,
    LargeKasami,
    ThreeTermTrace,
    FiveTermTrace,
    WelchGong,
}

impl Family {
    pub const ALL: [Family; 7] = [
        Family::MSequence,
        Family::SmallKasami,
        Family::Gold,
        Family::LargeKasami,
        Family::ThreeTermTrace,
        Family::FiveTermTrace,
        Family::WelchGong,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Family::MSequence => "m-sequence",
            Family::SmallKasami => "small-kasami",
            Family::Gold => "gold",
            Family::LargeKasami => "large-kasami",
            Family::ThreeTermTrace => "3-term-trace",
            Family::FiveTermTrace => "5-term-trace",
            Family::WelchGong => "welch-gong",
        }
    }

    pub fn is_valid_ell(self, ell: usize) -> bool {
        if !(2..=40).contains(&ell) {
            return false;
        }
        match self {
            Family::MSequence => true,
            Family::SmallKasami => ell.is_multiple_of(2),
            Family::Gold => ell >= 3 && !ell.is_multiple_of(4),
            Family::LargeKasami => ell.is_multiple_of(2) && ell >= 4,
            Family::ThreeTermTrace => ell >= 4,
            Family::FiveTermTrace => ell >= 5,
            Family::WelchGong => ell.is_multiple_of(3),
        }
    }

    /// Linear complexity of the family at degree `ell`.
    pub fn linear_complexity(self, ell: usize) -> usize {
        match self {
            Family::MSequence => ell,
            Family::SmallKasami => 3 * ell / 2,
            Family::Gold => 2 * ell,
            Family::LargeKasami => 5 * ell / 2,
            Family::ThreeTermTrace => 3 * ell,
            Family::FiveTermTrace => 5 * ell,
            Family::WelchGong => (1 << (ell / 3)) + 1,
        }
    }

    /// The published "bound on k" column.
    pub fn published_bound(self, ell: usize) -> f64 {
        match self {
            Family::MSequence => 3.0,
            Family::SmallKasami => 5.0,
            Family::Gold => 7.0,
            Family::LargeKasami => 9.0,
            Family::ThreeTermTrace => 9.0,
            Family::FiveTermTrace => 11.0,
            Family::WelchGong => ((1u64 << (ell / 3)) + 1) as f64 / ell as f64,
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Family {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Family::ALL
            .into_iter()
            .find(|f| f.name() == s)
            .ok_or_else(|| Error::InvalidParameter(format!("unknown family '{s}'")))
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Table1Row {
    pub family: Family,
    pub ell: usize,
    #[serde(rename = "T")]
    pub period: usize,
    #[serde(rename = "L")]
    pub linear_complexity: usize,
    /// Exact threshold from the Hamming-bound sum.
    pub t: usize,
    pub published: f64,
    pub matches_published: bool,
}

pub fn table1_row(family: Family, ell: usize) -> Result<Table1Row> {
    if !family.is_valid_ell(ell) {
        return Err(Error::InvalidParameter(format!(
            "ell = {ell} is not valid for {family}"
        )));
    }
    let period = (1usize << ell) - 1;
    let l = family.linear_complexity(ell);
    let t = theorem1_threshold(period, l)?;
    let published = family.published_bound(ell);
    Ok(Table1Row {
        family,
        ell,
        period,
        linear_complexity: l,
        t,
        published,
        matches_published: published == t as f64,
    })
}

/// All valid rows with `ell <= ell_max`.
pub fn table1(ell_max: usize) -> Result<Vec<Table1Row>> {
    let mut rows = Vec::new();
    for family in Family::ALL {
        for ell in 2..=ell_max {
            if family.is_valid_ell(ell) {
                rows.push(table1_row(family, ell)?);
            }
        }
    }
    Ok(rows)
}

/// Previous vs improved lower bounds on `L(S, N)` for sequences whose
/// correlation was bounded elsewhere; rendered from the stated formulas.
pub const BOUND_COMPARISON: [(&str, &str, &str); 5] = [
    ("Logarithm threshold sequence", "log N / log log T", "log N"),
    (
        "Two-prime generator sequence",
        "N / sqrt(T)",
        "sqrt(N) log N",
    ),
    (
        "Modified inverse threshold sequence",
        "log N / log log T",
        "(log N) log log T",
    ),
    (
        "Binary cyclotomic sequence",
        "log N / log log T",
        "(log N) log log T",
    ),
    (
        "Inversive threshold sequence",
        "log N / log log T",
        "(log N) log log T",
    ),
];

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct HallCorollary {
    #[serde(rename = "T")]
    pub period: u64,
    pub epsilon: f64,
    #[serde(rename = "N")]
    pub n: u64,
    /// `floor(eps log T / 8)`: the range used in the asymptotic argument.
    pub proof_k_max: usize,
    /// Largest `k` with `(14/3)^k k sqrt(T) log T < N/2` (0 if none).
    pub verified_k_max: usize,
    /// Corollary 3 at `K = verified_k_max + 1`.
    pub bound: Option<f64>,
}

impl HallCorollary {
    pub fn report(&self, delta: f64) -> BoundReport {
        let rep = BoundReport::new("hall")
            .input("T", self.period)
            .input("epsilon", self.epsilon)
            .input("N", self.n)
            .input("delta", delta);
        match self.bound {
            Some(v) => rep.fire(
                v,
                format!(
                    "C_k < N/2 for k <= {} by the published correlation bound (implied constant 1); \
                     asymptotic range k <= {}",
                    self.verified_k_max, self.proof_k_max
                ),
            ),
            None => rep.miss(format!(
                "chain inequality verified for k <= {}; Corollary 3 needs K >= 2 and K^2 < N",
                self.verified_k_max
            )),
        }
    }
}

/// Smallest admissible `N` for the corollaries, `ceil(c)`, at least 1.
fn ceil_u64(x: f64) -> u64 {
    x.ceil().max(1.0) as u64
}

/// Evaluates the correlation-to-complexity chain for Hall's sextic
/// sequence at concrete `T`, `eps`, and `N` (default
/// `2 T^{1/2+eps} (log T)^2`).
pub fn hall_corollary_inputs(
    period: u64,
    epsilon: f64,
    n: Option<u64>,
    delta: f64,
) -> Result<HallCorollary> {
    if !is_prime(period) || period % 6 != 1 {
        return Err(Error::InvalidParameter(format!(
            "T = {period} must be a prime with T = 1 mod 6"
        )));
    }
    if !(epsilon > 0.0) {
        return Err(Error::InvalidParameter("epsilon must be positive".into()));
    }
    let tf = period as f64;
    let log_t = tf.log2();
    let n = n.unwrap_or_else(|| ceil_u64(2.0 * tf.powf(0.5 + epsilon) * log_t * log_t));
    let half = n as f64 / 2.0;
    let proof_k_max = (epsilon * log_t / 8.0).floor() as usize;
    let chain = |k: usize| (14.0f64 / 3.0).powi(k as i32) * k as f64 * tf.sqrt() * log_t < half;
    let mut verified_k_max = 0;
    while chain(verified_k_max + 1) {
        verified_k_max += 1;
    }
    let bound = corollary3_bound(verified_k_max + 1, n as usize, delta).ok();
    Ok(HallCorollary {
        period,
        epsilon,
        n,
        proof_k_max,
        verified_k_max,
        bound,
    })
}

/// With `K = 3`: checks `p (log p)^3 < N/2` for `N = 2 p^{1+eps} (log p)^3`
/// (or the given `N`) and reports Corollary 3 at `K = 3`.
pub fn fermat_corollary_inputs(
    p: u64,
    epsilon: f64,
    n: Option<u64>,
    delta: f64,
) -> Result<BoundReport> {
    if !is_prime(p) || p < 3 {
        return Err(Error::InvalidParameter(format!(
            "p = {p} must be an odd prime"
        )));
    }
    if !(epsilon > 0.0) {
        return Err(Error::InvalidParameter("epsilon must be positive".into()));
    }
    let pf = p as f64;
    let lp3 = pf.log2().powi(3);
    let n = n.unwrap_or_else(|| ceil_u64(2.0 * pf.powf(1.0 + epsilon) * lp3));
    let rep = BoundReport::new("fermat")
        .input("p", p)
        .input("epsilon", epsilon)
        .input("N", n)
        .input("delta", delta);
    let c2_bound = pf * lp3;
    if c2_bound >= n as f64 / 2.0 {
        return Ok(rep.miss(format!(
            "p (log p)^3 = {c2_bound:.1} is not below N/2 = {}",
            n as f64 / 2.0
        )));
    }
    Ok(match corollary3_bound(3, n as usize, delta) {
        Ok(v) => rep.fire(
            v,
            format!("C_2 <= p (log p)^3 = {c2_bound:.1} < N/2 (implied constant 1); K = 3"),
        ),
        Err(e) => rep.miss(e.to_string()),
    })
}

/// Certified lower bound on the `F`-error linear complexity from `C_1..C_k`
/// of the unperturbed sequence.
///
/// Any `S'` within `F` flips has `C_j(S') <= c_j = min(C_j + 2jF, N-j+1)`.
/// Two bounds are combined:
/// - the relation `L >= N - max_{j <= L+1} C_j` applied to the ceilings
///   (if no `x < k` satisfies it, `L >= k`);
/// - pigeonhole on shift sets: if `c_j < N/2` for every even `j <= 2t`,
///   then `C(floor(N/2), t) <= 2^L`, so `L >= ceil(log2 C(floor(N/2), t))`.
pub fn kerror_bound_from_correlations(
    corr: &BTreeMap<usize, u64>,
    n: usize,
    flips: usize,
    delta: f64,
) -> Result<BoundReport> {
    let k = check_contiguous(corr)?;
    let ceilings: Vec<u64> = corr
        .iter()
        .map(|(&j, &c)| {
            let cap = (n + 1).saturating_sub(j) as u64;
            (c + crate::correlation::delta_under_flips(j, flips)).min(cap)
        })
        .collect();
    let running = {
        let mut m = 0;
        ceilings
            .iter()
            .map(|&c| {
                m = m.max(c);
                m
            })
            .collect::<Vec<_>>()
    };
    let (bw, bw_note) = match bw_scan(&running, n) {
        Some(x) => (x, format!("relation scan gives {x}")),
        None => (k, format!("relation fails for every L* < {k}, so L >= {k}")),
    };
    let mut pig = 0u64;
    let mut pig_t = 0;
    let mut t = 1;
    while 2 * t <= k {
        if (1..=t).all(|i| 2 * ceilings[2 * i - 1] < n as u64) {
            let b = ceil_log2_big(&binomial(n / 2, t));
            if b > pig {
                pig = b;
                pig_t = t;
            }
            t += 1;
        } else {
            break;
        }
    }
    let value = (bw as u64).max(pig);
    let mut commentary = format!("ceilings {ceilings:?}; {bw_note}");
    if pig_t > 0 {
        commentary += &format!(
            "; no half peak at even orders <= {} gives L >= ceil(log2 C({}, {pig_t})) = {pig}",
            2 * pig_t,
            n / 2
        );
    }
    // Corollary 3 carries an unknown constant, so it is only reported.
    let no_half_peak_below = ceilings
        .iter()
        .position(|&c| 2 * c >= n as u64)
        .map_or(k + 1, |i| i + 1);
    if let Ok(c3) = corollary3_bound(no_half_peak_below, n, delta) {
        commentary += &format!(
            "; Corollary 3 with K = {no_half_peak_below}: {c3:.2} (up to constant delta = {delta})"
        );
    }
    let mut inputs = BTreeMap::new();
    inputs.insert("N".to_string(), json!(n));
    inputs.insert("F".to_string(), json!(flips));
    inputs.insert("C".to_string(), corr_json(corr));
    Ok(BoundReport {
        name: "kerror".into(),
        inputs,
        value: Some(value as f64),
        fired: true,
        commentary,
    })
}

/// Computes `C_1..C_k` of the first `N` bits exhaustively, then applies
/// [`kerror_bound_from_correlations`].
pub fn kerror_bound(
    s: &BitSequence,
    n: usize,
    k: usize,
    flips: usize,
    delta: f64,
    opts: &SearchOptions,
) -> Result<BoundReport> {
    if k == 0 {
        return Err(Error::InvalidParameter("order k must be at least 1".into()));
    }
    let corr = correlations_up_to(s, n, k, opts)?;
    kerror_bound_from_correlations(&corr, n, flips, delta)
}

/// `{j -> C_j(S, N)}` for `j = 1..=k`.
pub fn correlations_up_to(
    s: &BitSequence,
    n: usize,
    k: usize,
    opts: &SearchOptions,
) -> Result<BTreeMap<usize, u64>> {
    (1..=k.min(n))
        .map(|j| aperiodic_measure(s, n, j, opts).map(|r| (j, r.value)))
        .collect()
}

/// `log2 C(floor(N/2), t)` as a float, for display.
pub fn log2_half_binomial(n: usize, t: usize) -> f64 {
    log2_big(&binomial(n / 2, t))
}
