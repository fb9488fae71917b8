//! Tracking rules and the reference window oracle.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

/// An "m out of n with loss l" track-initiation rule.
///
/// A track is declared once `m` detections fall inside a window of at most `n`
/// consecutive observations without `l` consecutive misses between them.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct TrackingRule {
    m: usize,
    n: usize,
    l: usize,
}

impl TrackingRule {
    /// The classic "3 out of 5 with loss 2" rule.
    pub const STANDARD: TrackingRule = TrackingRule { m: 3, n: 5, l: 2 };

    pub fn new(m: usize, n: usize, l: usize) -> Result<Self> {
        if m == 0 || m > n || l == 0 || l > n {
            return Err(Error::InvalidRule { m, n, l });
        }
        Ok(Self { m, n, l })
    }

    /// Required number of detections.
    pub fn detections(&self) -> usize {
        self.m
    }

    /// Window length in observations.
    pub fn window(&self) -> usize {
        self.n
    }

    /// Number of consecutive misses that drops the track.
    pub fn loss(&self) -> usize {
        self.l
    }

    pub fn is_standard(&self) -> bool {
        *self == Self::STANDARD
    }
}

impl Default for TrackingRule {
    fn default() -> Self {
        Self::STANDARD
    }
}

impl fmt::Display for TrackingRule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{},{},{}", self.m, self.n, self.l)
    }
}

impl FromStr for TrackingRule {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let parts: Vec<&str> = s.split(',').map(str::trim).collect();
        let [m, n, l] = parts.as_slice() else {
            return Err(Error::MalformedRule(s.to_owned()));
        };
        let parse = |x: &str| {
            x.parse::<usize>()
                .map_err(|_| Error::MalformedRule(s.to_owned()))
        };
        Self::new(parse(m)?, parse(n)?, parse(l)?)
    }
}

/// A finite sequence of observations; `true` is a detection.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BinaryString(Vec<bool>);

impl BinaryString {
    pub fn new() -> Self {
        Self(Vec::new())
    }

    pub fn from_bits(bits: Vec<bool>) -> Self {
        Self(bits)
    }

    /// The `len` low bits of `value`, most significant bit first.
    pub fn from_index(value: u64, len: usize) -> Self {
        Self((0..len).rev().map(|i| (value >> i) & 1 == 1).collect())
    }

    pub fn bits(&self) -> &[bool] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn ones(&self) -> usize {
        self.0.iter().filter(|&&b| b).count()
    }

    pub fn push(&mut self, bit: bool) {
        self.0.push(bit);
    }

    pub fn concat(&self, other: &BinaryString) -> BinaryString {
        let mut bits = self.0.clone();
        bits.extend_from_slice(&other.0);
        Self(bits)
    }

    pub fn starts_with(&self, prefix: &[bool]) -> bool {
        self.0.starts_with(prefix)
    }

    pub fn ends_with(&self, suffix: &[bool]) -> bool {
        self.0.ends_with(suffix)
    }

    /// Every string of length `len` in lexicographic order.
    pub fn all_of_length(len: usize) -> impl Iterator<Item = BinaryString> {
        assert!(len < 64, "length {len} too large to enumerate");
        (0..1u64 << len).map(move |v| Self::from_index(v, len))
    }
}

impl From<&[bool]> for BinaryString {
    fn from(bits: &[bool]) -> Self {
        Self(bits.to_vec())
    }
}

impl fmt::Display for BinaryString {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for &b in &self.0 {
            f.write_str(if b { "1" } else { "0" })?;
        }
        Ok(())
    }
}

impl FromStr for BinaryString {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        s.chars()
            .enumerate()
            .map(|(pos, ch)| match ch {
                '0' => Ok(false),
                '1' => Ok(true),
                _ => Err(Error::InvalidBit { pos, ch }),
            })
            .collect::<Result<Vec<_>>>()
            .map(Self)
    }
}

/// Reference classification by direct scan over every window.
///
/// A string tracks iff some substring of length at most `n` that starts and
/// ends with a detection holds at least `m` detections and no run of `l`
/// misses. Trimming boundary misses never loses a witness, so restricting the
/// endpoints to detections is harmless.
pub fn is_tracking_oracle(s: &BinaryString, rule: &TrackingRule) -> bool {
    let bits = s.bits();
    for start in 0..bits.len() {
        if !bits[start] {
            continue;
        }
        for end in start..bits.len() {
            if end - start + 1 > rule.n {
                break;
            }
            if bits[end] && window_tracks(&bits[start..=end], rule) {
                return true;
            }
        }
    }
    false
}

fn window_tracks(window: &[bool], rule: &TrackingRule) -> bool {
    let ones = window.iter().filter(|&&b| b).count();
    let longest_gap = window.split(|&b| b).map(<[bool]>::len).max().unwrap_or(0);
    ones >= rule.m && longest_gap < rule.l
}
