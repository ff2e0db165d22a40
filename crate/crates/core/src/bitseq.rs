//! Packed binary sequences and shift sets.
//!
//! Bits are stored little-endian inside `u64` words: bit `i` of the sequence
//! lives at bit `i % 64` of word `i / 64`. Every kernel in the crate relies on
//! this layout for XOR/popcount evaluation of correlation sums.

use std::fmt;
use std::path::Path;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

const WORD: usize = 64;
const CHARS_PER_LINE: usize = 64;

#[inline]
pub(crate) fn words_for(bits: usize) -> usize {
    bits.div_ceil(WORD)
}

/// A finite binary word, optionally tagged with a declared period.
///
/// The period is metadata. It is checked against the stored bits on
/// construction but never inferred; use [`BitSequence::minimal_period`] to
/// scan for the true one.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct BitSequence {
    words: Vec<u64>,
    len: usize,
    period: Option<usize>,
}

impl BitSequence {
    pub fn zeros(len: usize) -> Self {
        BitSequence {
            words: vec![0; words_for(len)],
            len,
            period: None,
        }
    }

    pub fn from_bits<I: IntoIterator<Item = bool>>(bits: I) -> Self {
        let mut words = Vec::new();
        let mut len = 0;
        for b in bits {
            if len % WORD == 0 {
                words.push(0);
            }
            if b {
                words[len / WORD] |= 1 << (len % WORD);
            }
            len += 1;
        }
        BitSequence {
            words,
            len,
            period: None,
        }
    }

    /// Builds a sequence from `0`/`1` bytes.
    pub fn from_u8s(bits: &[u8]) -> Result<Self> {
        if let Some(pos) = bits.iter().position(|&b| b > 1) {
            return Err(Error::InvalidParameter(format!(
                "symbol {} at index {pos} is not binary",
                bits[pos]
            )));
        }
        Ok(Self::from_bits(bits.iter().map(|&b| b == 1)))
    }

    /// Builds a sequence of length `len` from the low bits of `value`.
    pub fn from_u64(value: u64, len: usize) -> Self {
        assert!(len <= WORD);
        let mask = if len == WORD {
            u64::MAX
        } else {
            (1u64 << len) - 1
        };
        BitSequence {
            words: if len == 0 { vec![] } else { vec![value & mask] },
            len,
            period: None,
        }
    }

    /// Declares period `t`, checking it against the stored data.
    pub fn with_period(mut self, t: usize) -> Result<Self> {
        if t == 0 {
            return Err(Error::InvalidParameter("period must be positive".into()));
        }
        for i in 0..self.len.saturating_sub(t) {
            if self.get(i) != self.get(i + t) {
                return Err(Error::InconsistentPeriod {
                    period: t,
                    index: i + t,
                });
            }
        }
        self.period = Some(t);
        Ok(self)
    }

    pub fn without_period(mut self) -> Self {
        self.period = None;
        self
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.len
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    #[inline]
    pub fn period(&self) -> Option<usize> {
        self.period
    }

    pub fn words(&self) -> &[u64] {
        &self.words
    }

    /// Raw access to an in-range bit. Panics when `i >= len`.
    #[inline]
    pub fn get(&self, i: usize) -> bool {
        assert!(i < self.len, "bit index {i} out of range {}", self.len);
        (self.words[i / WORD] >> (i % WORD)) & 1 == 1
    }

    /// Bit `i`, reducing modulo the declared period when there is one.
    pub fn bit(&self, i: usize) -> Result<bool> {
        let j = match self.period {
            Some(t) if i >= self.len => i % t,
            _ => i,
        };
        if j < self.len {
            Ok(self.get(j))
        } else {
            Err(Error::IndexOutOfRange {
                index: i,
                len: self.len,
            })
        }
    }

    /// `(-1)^{s_i}`.
    pub fn sign_at(&self, i: usize) -> Result<i8> {
        Ok(if self.bit(i)? { -1 } else { 1 })
    }

    pub fn iter(&self) -> impl ExactSizeIterator<Item = bool> + '_ {
        (0..self.len).map(move |i| self.get(i))
    }

    pub fn to_u8s(&self) -> Vec<u8> {
        self.iter().map(u8::from).collect()
    }

    pub fn weight(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn complement(&self) -> Self {
        let mut words: Vec<u64> = self.words.iter().map(|w| !w).collect();
        mask_tail(&mut words, self.len);
        BitSequence {
            words,
            len: self.len,
            period: self.period,
        }
    }

    /// Copy with the listed positions inverted. The declared period is dropped.
    pub fn with_flips(&self, positions: &[usize]) -> Result<Self> {
        let mut out = self.clone().without_period();
        for &p in positions {
            if p >= self.len {
                return Err(Error::IndexOutOfRange {
                    index: p,
                    len: self.len,
                });
            }
            out.words[p / WORD] ^= 1 << (p % WORD);
        }
        Ok(out)
    }

    /// The first `n` bits (no period attached).
    pub fn prefix(&self, n: usize) -> Result<Self> {
        if n > self.len {
            return Err(Error::LengthExceeded {
                requested: n,
                available: self.len,
            });
        }
        let mut words = self.words[..words_for(n)].to_vec();
        mask_tail(&mut words, n);
        Ok(BitSequence {
            words,
            len: n,
            period: None,
        })
    }

    /// The first `n` bits, extending periodically past the stored data when
    /// a period is declared.
    pub fn take(&self, n: usize) -> Result<Self> {
        if n <= self.len {
            return self.prefix(n);
        }
        let t = match self.period {
            Some(t) if t <= self.len => t,
            _ => {
                return Err(Error::LengthExceeded {
                    requested: n,
                    available: self.len,
                })
            }
        };
        Ok(Self::from_bits((0..n).map(|i| self.get(i % t))))
    }

    /// `r` full periods of a periodic sequence, keeping the period tag.
    pub fn periods(&self, r: usize) -> Result<Self> {
        let t = self.period.ok_or(Error::MissingPeriod)?;
        let mut out = self.take(t * r)?;
        out.period = Some(t);
        Ok(out)
    }

    /// One full period as a sequence of length `T`, period attached.
    pub fn one_period(&self) -> Result<Self> {
        self.periods(1)
    }

    /// Bits `start..start + len` packed from bit 0; positions past the end
    /// of the sequence read as zero.
    pub fn extract(&self, start: usize, len: usize) -> Vec<u64> {
        let mut out = Vec::new();
        self.extract_into(start, len, &mut out);
        out
    }

    /// [`BitSequence::extract`] into a reusable buffer.
    pub fn extract_into(&self, start: usize, len: usize, out: &mut Vec<u64>) {
        out.clear();
        out.resize(words_for(len), 0);
        let avail = self.len.saturating_sub(start).min(len);
        if avail == 0 {
            return;
        }
        let w0 = start / WORD;
        let sh = start % WORD;
        let nw = words_for(avail);
        for (k, o) in out.iter_mut().take(nw).enumerate() {
            let lo = self.words.get(w0 + k).copied().unwrap_or(0);
            *o = if sh == 0 {
                lo
            } else {
                let hi = self.words.get(w0 + k + 1).copied().unwrap_or(0);
                (lo >> sh) | (hi << (WORD - sh))
            };
        }
        mask_tail(out, avail);
    }

    /// Bits in reverse order (`r_j = s_{N-1-j}`).
    pub fn reversed(&self) -> Self {
        Self::from_bits((0..self.len).rev().map(|i| self.get(i)))
    }

    /// Smallest `p >= 1` with `s_{i+p} = s_i` for every `i + p < N`,
    /// computed from the KMP border array. Zero for the empty sequence.
    pub fn minimal_period(&self) -> usize {
        let n = self.len;
        if n == 0 {
            return 0;
        }
        let mut fail = vec![0usize; n];
        let mut k = 0;
        for i in 1..n {
            while k > 0 && self.get(i) != self.get(k) {
                k = fail[k - 1];
            }
            if self.get(i) == self.get(k) {
                k += 1;
            }
            fail[i] = k;
        }
        n - fail[n - 1]
    }

    /// Text rendering: optional `period=T` line, then 64 symbols per line.
    pub fn render(&self) -> String {
        let mut out = String::with_capacity(self.len + self.len / CHARS_PER_LINE + 16);
        if let Some(t) = self.period {
            out.push_str(&format!("period={t}\n"));
        }
        for i in 0..self.len {
            out.push(if self.get(i) { '1' } else { '0' });
            if (i + 1) % CHARS_PER_LINE == 0 || i + 1 == self.len {
                out.push('\n');
            }
        }
        out
    }

    /// Parses the sequence file format.
    pub fn parse(text: &str) -> Result<Self> {
        let mut period = None;
        let mut bits = Vec::new();
        let mut seen_data = false;
        for (ln, line) in text.lines().enumerate() {
            let trimmed = line.trim();
            if !seen_data && period.is_none() {
                if let Some(rest) = trimmed.strip_prefix("period=") {
                    let t: usize = rest.trim().parse().map_err(|_| {
                        Error::InvalidParameter(format!("bad period header {trimmed:?}"))
                    })?;
                    period = Some(t);
                    continue;
                }
            }
            for (col, ch) in line.chars().enumerate() {
                match ch {
                    '0' => bits.push(false),
                    '1' => bits.push(true),
                    c if c.is_whitespace() => continue,
                    c => {
                        return Err(Error::InvalidSymbol {
                            found: c,
                            line: ln + 1,
                            column: col + 1,
                        })
                    }
                }
                seen_data = true;
            }
        }
        let seq = Self::from_bits(bits);
        match period {
            Some(t) => seq.with_period(t),
            None => Ok(seq),
        }
    }

    pub fn load(path: impl AsRef<Path>) -> Result<Self> {
        let path = path.as_ref();
        let text = std::fs::read_to_string(path).map_err(|source| Error::Io {
            path: path.to_path_buf(),
            source,
        })?;
        Self::parse(&text)
    }

    pub fn save(&self, path: impl AsRef<Path>) -> Result<()> {
        let path = path.as_ref();
        std::fs::write(path, self.render()).map_err(|source| Error::Io {
            path: path.to_path_buf(),
            source,
        })
    }
}

fn mask_tail(words: &mut [u64], len: usize) {
    let rem = len % WORD;
    if rem != 0 {
        if let Some(last) = words.get_mut(len / WORD) {
            *last &= (1u64 << rem) - 1;
        }
    }
}

impl FromStr for BitSequence {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Self::parse(s)
    }
}

impl fmt::Display for BitSequence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}

impl fmt::Debug for BitSequence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let bits: String = self.iter().map(|b| if b { '1' } else { '0' }).collect();
        f.debug_struct("BitSequence")
            .field("bits", &bits)
            .field("period", &self.period)
            .finish()
    }
}

/// Strictly increasing, non-empty tuple of shifts `(d_1, ..., d_k)`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(try_from = "Vec<usize>", into = "Vec<usize>")]
pub struct ShiftSet(Vec<usize>);

impl ShiftSet {
    pub fn new(shifts: Vec<usize>) -> Result<Self> {
        if shifts.is_empty() {
            return Err(Error::InvalidShiftSet("empty".into()));
        }
        if let Some(w) = shifts.windows(2).find(|w| w[0] >= w[1]) {
            return Err(Error::InvalidShiftSet(format!(
                "shifts must be strictly increasing, found {} then {}",
                w[0], w[1]
            )));
        }
        Ok(ShiftSet(shifts))
    }

    /// The order `k`.
    pub fn order(&self) -> usize {
        self.0.len()
    }

    pub fn first(&self) -> usize {
        self.0[0]
    }

    pub fn last(&self) -> usize {
        self.0[self.0.len() - 1]
    }

    pub fn as_slice(&self) -> &[usize] {
        &self.0
    }
}

impl TryFrom<Vec<usize>> for ShiftSet {
    type Error = Error;

    fn try_from(v: Vec<usize>) -> Result<Self> {
        ShiftSet::new(v)
    }
}

impl From<ShiftSet> for Vec<usize> {
    fn from(s: ShiftSet) -> Vec<usize> {
        s.0
    }
}

impl fmt::Display for ShiftSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, d) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{d}")?;
        }
        write!(f, ")")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn seq(s: &str) -> BitSequence {
        s.parse().unwrap()
    }

    #[test]
    fn sign_at_values() {
        assert_eq!(seq("0").sign_at(0).unwrap(), 1);
        assert_eq!(seq("1").sign_at(0).unwrap(), -1);
        let p = seq("period=3\n010");
        assert_eq!(p.sign_at(4).unwrap(), -1);
        assert!(seq("01").sign_at(2).is_err());
    }

    #[test]
    fn parse_examples() {
        assert_eq!(seq("0101").to_u8s(), vec![0, 1, 0, 1]);
        let p = seq("period=2\n0101");
        assert_eq!(p.to_u8s(), vec![0, 1, 0, 1]);
        assert_eq!(p.period(), Some(2));
        assert!(matches!(
            BitSequence::parse("period=2\n0110"),
            Err(Error::InconsistentPeriod {
                period: 2,
                index: 2
            })
        ));
        assert!(matches!(
            BitSequence::parse("01x1"),
            Err(Error::InvalidSymbol { found: 'x', .. })
        ));
        assert_eq!(seq(" 0 1\n\t1 0 \n").to_u8s(), vec![0, 1, 1, 0]);
    }

    #[test]
    fn render_wraps_at_64() {
        let s = BitSequence::zeros(130);
        let text = s.render();
        let lines: Vec<&str> = text.lines().collect();
        assert_eq!(lines.len(), 3);
        assert_eq!(lines[0].len(), 64);
        assert_eq!(lines[2].len(), 2);
    }

    #[test]
    fn extract_crosses_words() {
        let bits: Vec<u8> = (0..200).map(|i| ((i * 7 + i / 3) % 2) as u8).collect();
        let s = BitSequence::from_u8s(&bits).unwrap();
        for start in [0, 1, 63, 64, 65, 130, 199, 250] {
            let got = s.extract(start, 90);
            for j in 0..90 {
                let expect = bits.get(start + j).copied().unwrap_or(0) == 1;
                assert_eq!(
                    (got[j / 64] >> (j % 64)) & 1 == 1,
                    expect,
                    "start {start} j {j}"
                );
            }
        }
    }

    #[test]
    fn minimal_period_scan() {
        assert_eq!(seq("0101010").minimal_period(), 2);
        assert_eq!(seq("1001011100101110").minimal_period(), 7);
        assert_eq!(seq("0001").minimal_period(), 4);
        assert_eq!(seq("1").minimal_period(), 1);
    }

    #[test]
    fn take_extends_periodically() {
        let p = seq("period=3\n011");
        assert_eq!(p.take(7).unwrap().to_u8s(), vec![0, 1, 1, 0, 1, 1, 0]);
        assert!(seq("011").take(4).is_err());
    }

    #[test]
    fn shift_set_validation() {
        assert!(ShiftSet::new(vec![0, 1, 3]).is_ok());
        assert!(ShiftSet::new(vec![1, 1]).is_err());
        assert!(ShiftSet::new(vec![2, 1]).is_err());
        assert!(ShiftSet::new(vec![]).is_err());
        let json = serde_json::to_string(&ShiftSet::new(vec![0, 2]).unwrap()).unwrap();
        assert_eq!(json, "[0,2]");
        assert!(serde_json::from_str::<ShiftSet>("[3,2]").is_err());
    }

    proptest! {
        #[test]
        fn render_parse_round_trip(bits in proptest::collection::vec(0u8..2, 0..300), per in 1usize..20) {
            let s = BitSequence::from_u8s(&bits).unwrap();
            prop_assert_eq!(BitSequence::parse(&s.render()).unwrap(), s.clone());
            if let Ok(p) = s.one_period_from(per) {
                prop_assert_eq!(BitSequence::parse(&p.render()).unwrap(), p);
            }
        }

        #[test]
        fn sign_matches_bit(bits in proptest::collection::vec(0u8..2, 1..200)) {
            let s = BitSequence::from_u8s(&bits).unwrap();
            for (i, &b) in bits.iter().enumerate() {
                prop_assert_eq!(s.sign_at(i).unwrap() as i32, 1 - 2 * b as i32);
            }
        }
    }

    impl BitSequence {
        fn one_period_from(&self, t: usize) -> Result<BitSequence> {
            if t > self.len {
                return Err(Error::MissingPeriod);
            }
            self.prefix(t)?.with_period(t)?.periods(2)
        }
    }
}
