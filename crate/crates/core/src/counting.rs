//! Tr(k), NTr(k) and UT(n) by three independent routes.
//!
//! * exhaustive enumeration of all `2^k` strings through the compiled automaton,
//! * a transfer-matrix walk over the automaton's state occupancy,
//! * the order-5 linear recurrence `a(k) = a(k-1) + a(k-3) + a(k-4) + a(k-5)`,
//!   seeded from NTr(0..=5) = 1, 2, 4, 7, 11, 18.
//!
//! The recurrence follows from classifying non-tracking strings by ending:
//! `0`, `001`, `0011` or `00101`. The same four endings are the block code in
//! [`crate::bijection`], which is why [`count_compositions`] agrees with UT(n).

use std::fmt::Write as _;

use num_bigint::BigUint;
use num_traits::{One, Zero};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::dfa::{build_dfa, Dfa};
use crate::error::{Error, Result};
use crate::rule::TrackingRule;

/// Largest `k` accepted by [`count_by_enumeration`].
pub const MAX_ENUMERATION: usize = 24;

const NTR_SEEDS: [u32; 6] = [1, 2, 4, 7, 11, 18];

/// Counts (tracking, non-tracking) strings of length `k` by running every
/// string through the compiled automaton.
pub fn count_by_enumeration(k: usize, rule: &TrackingRule) -> Result<(u64, u64)> {
    if k > MAX_ENUMERATION {
        return Err(Error::RangeTooLarge(k));
    }
    let dfa = build_dfa(rule)?;
    let total = 1u64 << k;
    let tracking = (0..total)
        .into_par_iter()
        .filter(|&v| dfa.run_index(v, k))
        .count() as u64;
    Ok((tracking, total - tracking))
}

/// Number of length-`k` strings that never reach the tracked state.
pub fn count_by_transfer_matrix(k: usize, dfa: &Dfa) -> BigUint {
    let mut occupancy = vec![BigUint::zero(); dfa.state_count()];
    occupancy[dfa.start()] = BigUint::one();
    for _ in 0..k {
        let mut next = vec![BigUint::zero(); dfa.state_count()];
        for (state, count) in occupancy.iter().enumerate() {
            if state == dfa.tracked() || count.is_zero() {
                continue;
            }
            for bit in [false, true] {
                next[dfa.next(state, bit)] += count;
            }
        }
        occupancy = next;
    }
    occupancy
        .iter()
        .enumerate()
        .filter(|&(state, _)| state != dfa.tracked())
        .map(|(_, count)| count)
        .sum()
}

/// NTr(k) for the standard rule via the linear recurrence.
pub fn recurrence_ntr(k: usize) -> BigUint {
    ntr_terms(k + 1).pop().expect("at least one term")
}

/// NTr(0), ..., NTr(count - 1) for the standard rule.
pub fn ntr_terms(count: usize) -> Vec<BigUint> {
    let mut terms: Vec<BigUint> = NTR_SEEDS.iter().map(|&s| BigUint::from(s)).collect();
    while terms.len() < count {
        let k = terms.len();
        let next = &terms[k - 1] + &terms[k - 3] + &terms[k - 4] + &terms[k - 5];
        terms.push(next);
    }
    terms.truncate(count);
    terms
}

/// Number of unique tournaments on `n` nodes, `n >= 1`.
pub fn ut(n: usize) -> Result<BigUint> {
    match n {
        0 => Err(Error::IndexOutOfRange(0)),
        1 => Ok(BigUint::one()),
        _ => Ok(recurrence_ntr(n - 2)),
    }
}

/// Ordered compositions of `n` into parts from {1, 3, 4, 5}.
pub fn count_compositions(n: usize) -> BigUint {
    let mut ways = vec![BigUint::zero(); n + 1];
    ways[0] = BigUint::one();
    for total in 1..=n {
        let mut sum = BigUint::zero();
        for part in [1, 3, 4, 5] {
            if part <= total {
                sum += &ways[total - part];
            }
        }
        ways[total] = sum;
    }
    ways.swap_remove(n)
}

/// A named run of sequence terms starting at index `offset`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SequenceTable {
    pub name: String,
    pub offset: i64,
    #[serde(with = "decimal_terms")]
    pub terms: Vec<BigUint>,
}

impl SequenceTable {
    pub fn new(name: impl Into<String>, offset: i64, terms: Vec<BigUint>) -> Self {
        Self {
            name: name.into(),
            offset,
            terms,
        }
    }

    /// NTr(0..=max_k) for the standard rule by recurrence.
    pub fn ntr(max_k: usize) -> Self {
        Self::new("NTr", 0, ntr_terms(max_k + 1))
    }

    /// UT(1..=max_n).
    pub fn ut(max_n: usize) -> Self {
        let terms = (1..=max_n).map(|n| ut(n).expect("n >= 1")).collect();
        Self::new("UT", 1, terms)
    }

    pub fn get(&self, index: i64) -> Option<&BigUint> {
        let pos = usize::try_from(index.checked_sub(self.offset)?).ok()?;
        self.terms.get(pos)
    }

    pub fn indexed(&self) -> impl Iterator<Item = (i64, &BigUint)> {
        (self.offset..).zip(self.terms.iter())
    }

    /// `k,value` rows under a header line.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("k,value\n");
        for (k, v) in self.indexed() {
            writeln!(out, "{k},{v}").expect("write to string");
        }
        out
    }

    pub fn from_csv(name: impl Into<String>, text: &str) -> Result<Self> {
        let mut rows = Vec::new();
        for (i, line) in text.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() || (i == 0 && line == "k,value") {
                continue;
            }
            let parse_err = |message: &str| Error::Parse {
                line: i + 1,
                message: message.to_owned(),
            };
            let (k, v) = line
                .split_once(',')
                .ok_or_else(|| parse_err("expected k,value"))?;
            let k: i64 = k.trim().parse().map_err(|_| parse_err("bad index"))?;
            let v: BigUint = v.trim().parse().map_err(|_| parse_err("bad value"))?;
            rows.push((i + 1, k, v));
        }
        let offset = rows.first().map(|r| r.1).ok_or(Error::Parse {
            line: 1,
            message: "empty table".into(),
        })?;
        let mut terms = Vec::with_capacity(rows.len());
        for (line, k, v) in rows {
            let expected = offset + terms.len() as i64;
            if k != expected {
                return Err(Error::Gap {
                    line,
                    expected: expected as u64,
                    found: k as u64,
                });
            }
            terms.push(v);
        }
        Ok(Self::new(name, offset, terms))
    }

    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string(self)?)
    }

    pub fn from_json(text: &str) -> Result<Self> {
        Ok(serde_json::from_str(text)?)
    }

    /// OEIS b-file text: one `n a(n)` pair per line.
    pub fn to_bfile(&self) -> String {
        let mut out = String::new();
        for (k, v) in self.indexed() {
            writeln!(out, "{k} {v}").expect("write to string");
        }
        out
    }
}

/// Terms as JSON numbers of unbounded size.
mod decimal_terms {
    use num_bigint::BigUint;
    use serde::de::Error as _;
    use serde::{Deserialize, Deserializer, Serialize, Serializer};
    use serde_json::Number;

    pub fn serialize<S: Serializer>(terms: &[BigUint], ser: S) -> Result<S::Ok, S::Error> {
        terms
            .iter()
            .map(|t| {
                t.to_string()
                    .parse::<Number>()
                    .expect("decimal digits form a JSON number")
            })
            .collect::<Vec<_>>()
            .serialize(ser)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(de: D) -> Result<Vec<BigUint>, D::Error> {
        Vec::<Number>::deserialize(de)?
            .iter()
            .map(|n| {
                n.to_string()
                    .parse::<BigUint>()
                    .map_err(|_| D::Error::custom(format!("{n} is not a non-negative integer")))
            })
            .collect()
    }
}
