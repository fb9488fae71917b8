//! Initial-loss non-tracking strings and unique tournaments.
//!
//! Every initial-loss string factors uniquely into the blocks `0`, `001`,
//! `0011` and `00101`; every unique tournament factors uniquely into the basic
//! tournaments on 1, 3, 4 and 5 nodes. Matching block to basic tournament of
//! the same length, with the leftmost block as the bottom group, gives a
//! bijection that preserves length as node count.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::dfa::{build_dfa, Dfa};
use crate::error::{Error, Result};
use crate::rule::{is_tracking_oracle, BinaryString, TrackingRule};
use crate::tournament::{
    basic_tournament, compose, decompose_unique, Decomposition, ScoreVector, Tournament,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(into = "&'static str", try_from = "String")]
pub enum BasicBlock {
    /// `0`
    Zero,
    /// `001`
    Triple,
    /// `0011`
    Quad,
    /// `00101`
    Quint,
}

impl BasicBlock {
    pub const ALL: [BasicBlock; 4] = [Self::Zero, Self::Triple, Self::Quad, Self::Quint];

    pub fn as_str(self) -> &'static str {
        match self {
            Self::Zero => "0",
            Self::Triple => "001",
            Self::Quad => "0011",
            Self::Quint => "00101",
        }
    }

    pub fn bits(self) -> &'static [bool] {
        match self {
            Self::Zero => &[false],
            Self::Triple => &[false, false, true],
            Self::Quad => &[false, false, true, true],
            Self::Quint => &[false, false, true, false, true],
        }
    }

    #[allow(clippy::len_without_is_empty)]
    pub fn len(self) -> usize {
        self.bits().len()
    }

    pub fn from_len(len: usize) -> Result<Self> {
        Self::ALL
            .into_iter()
            .find(|b| b.len() == len)
            .ok_or(Error::InvalidBasicSize(len))
    }

    /// Score offsets of the block's members relative to their global position.
    pub fn score_adjustments(self) -> &'static [isize] {
        match self {
            Self::Zero => &[0],
            Self::Triple => &[1, 0, -1],
            Self::Quad => &[1, 0, 0, -1],
            Self::Quint => &[2, 1, 0, -1, -2],
        }
    }
}

impl fmt::Display for BasicBlock {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl From<BasicBlock> for &'static str {
    fn from(b: BasicBlock) -> Self {
        b.as_str()
    }
}

impl TryFrom<String> for BasicBlock {
    type Error = String;

    fn try_from(s: String) -> std::result::Result<Self, String> {
        Self::ALL
            .into_iter()
            .find(|b| b.as_str() == s)
            .ok_or_else(|| format!("{s:?} is not a basic block"))
    }
}

/// A non-tracking string (standard rule) that is `"0"` or starts with `"00"`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct IlString(BinaryString);

impl IlString {
    pub fn new(bits: BinaryString) -> Result<Self> {
        let ok = match bits.len() {
            0 => false,
            1 => !bits.bits()[0],
            _ => bits.starts_with(&[false, false]),
        };
        if ok && !is_tracking_oracle(&bits, &TrackingRule::STANDARD) {
            Ok(Self(bits))
        } else {
            Err(Error::NotDecomposable)
        }
    }

    pub fn bits(&self) -> &BinaryString {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// All initial-loss strings of length `k >= 1`, in lexicographic order.
    pub fn all_of_length(k: usize) -> Vec<IlString> {
        match k {
            0 => Vec::new(),
            1 => vec![IlString(BinaryString::from_bits(vec![false]))],
            _ => {
                let dfa = standard_dfa();
                BinaryString::all_of_length(k - 2)
                    .filter(|s| !dfa.run(s))
                    .map(|s| IlString(BinaryString::from_bits(vec![false, false]).concat(&s)))
                    .collect()
            }
        }
    }

    fn from_blocks(blocks: &[BasicBlock]) -> Self {
        Self(BinaryString::from_bits(
            blocks
                .iter()
                .flat_map(|b| b.bits().iter().copied())
                .collect(),
        ))
    }
}

fn standard_dfa() -> Dfa {
    build_dfa(&TrackingRule::STANDARD).expect("standard window is small")
}

impl fmt::Display for IlString {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

impl FromStr for IlString {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Self::new(s.parse()?)
    }
}

/// Prepends the initial loss `"00"` to a non-tracking string.
pub fn il_from_nontracking(s: &BinaryString) -> Result<IlString> {
    if is_tracking_oracle(s, &TrackingRule::STANDARD) {
        return Err(Error::InputTracks(s.to_string()));
    }
    Ok(IlString(
        BinaryString::from_bits(vec![false, false]).concat(s),
    ))
}

/// Removes the leading `"00"`.
pub fn strip_initial_loss(il: &IlString) -> Result<BinaryString> {
    if il.len() < 2 {
        return Err(Error::TooShort);
    }
    Ok(BinaryString::from(&il.bits().bits()[2..]))
}

/// Unique factorization into basic blocks, decoded right to left.
///
/// Read backwards the blocks are `0`, `100`, `1100`, `10100`, a prefix-free
/// set, so at most one block can end the remaining input.
pub fn decompose_blocks(s: &BinaryString) -> Result<Vec<BasicBlock>> {
    decompose_with(s, &BasicBlock::ALL.map(BasicBlock::bits))
        .map(|indices| indices.into_iter().map(|i| BasicBlock::ALL[i]).collect())
}

/// Right-to-left decode against an arbitrary block table, returning indices
/// into `table`. Fails when no block, or more than one, ends the remainder.
pub fn decompose_with(s: &BinaryString, table: &[&[bool]]) -> Result<Vec<usize>> {
    if s.is_empty() {
        return Err(Error::NotDecomposable);
    }
    let mut rest = s.bits();
    let mut blocks = Vec::new();
    while !rest.is_empty() {
        let mut matches = table
            .iter()
            .enumerate()
            .filter(|(_, block)| rest.ends_with(block));
        let (index, block) = matches.next().ok_or(Error::NotDecomposable)?;
        if matches.next().is_some() {
            return Err(Error::NotDecomposable);
        }
        blocks.push(index);
        rest = &rest[..rest.len() - block.len()];
    }
    blocks.reverse();
    Ok(blocks)
}

/// `"0 + 001"` style rendering.
pub fn format_blocks(blocks: &[BasicBlock]) -> String {
    blocks
        .iter()
        .map(|b| b.as_str())
        .collect::<Vec<_>>()
        .join(" + ")
}

pub fn blocks_to_decomposition(blocks: &[BasicBlock]) -> Decomposition {
    Decomposition::new(blocks.iter().map(|b| b.len()).collect()).expect("block lengths are basic")
}

/// Composes basic tournaments block by block, leftmost block at the bottom.
pub fn string_to_tournament(il: &IlString) -> Result<Tournament> {
    let blocks = decompose_blocks(il.bits())?;
    Ok(blocks
        .iter()
        .map(|b| basic_tournament(b.len()).expect("block lengths are basic"))
        .reduce(|acc, next| compose(&acc, &next))
        .expect("an initial-loss string has at least one block"))
}

pub fn tournament_to_string(t: &Tournament) -> Result<IlString> {
    let decomposition = decompose_unique(t)?;
    let blocks = decomposition
        .parts()
        .iter()
        .map(|&size| BasicBlock::from_len(size))
        .collect::<Result<Vec<_>>>()?;
    Ok(IlString::from_blocks(&blocks))
}

/// Score of each position: its 0-based index plus the block adjustment.
pub fn scores_by_position(il: &IlString) -> Result<Vec<usize>> {
    let mut scores = Vec::with_capacity(il.len());
    for block in decompose_blocks(il.bits())? {
        for &adjust in block.score_adjustments() {
            let score = scores.len() as isize + adjust;
            scores.push(usize::try_from(score).expect("adjustments never go below zero"));
        }
    }
    Ok(scores)
}

/// Score vector of the corresponding tournament, read off the string alone.
pub fn score_vector_from_string(il: &IlString) -> Result<ScoreVector> {
    ScoreVector::new(scores_by_position(il)?)
}

/// Reverses the block order; corresponds to reversing every edge.
pub fn string_dual(il: &IlString) -> Result<IlString> {
    let mut blocks = decompose_blocks(il.bits())?;
    blocks.reverse();
    Ok(IlString::from_blocks(&blocks))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tournament::{dual, is_isomorphic, score_vector};
    use BasicBlock::*;

    fn il(s: &str) -> IlString {
        s.parse().unwrap()
    }

    fn bs(s: &str) -> BinaryString {
        s.parse().unwrap()
    }

    fn sv(v: &[usize]) -> ScoreVector {
        ScoreVector::new(v.to_vec()).unwrap()
    }

    #[test]
    fn il_string_validation() {
        assert!("0".parse::<IlString>().is_ok());
        assert!("00".parse::<IlString>().is_ok());
        assert!(matches!(
            "".parse::<IlString>(),
            Err(Error::NotDecomposable)
        ));
        assert!(matches!(
            "1".parse::<IlString>(),
            Err(Error::NotDecomposable)
        ));
        assert!(matches!(
            "01".parse::<IlString>(),
            Err(Error::NotDecomposable)
        ));
        assert!(matches!(
            "00111".parse::<IlString>(),
            Err(Error::NotDecomposable)
        ));
        assert!(matches!(
            "0021".parse::<IlString>(),
            Err(Error::InvalidBit { .. })
        ));
    }

    #[test]
    fn initial_loss_shift() {
        assert_eq!(il_from_nontracking(&bs("1")).unwrap(), il("001"));
        assert_eq!(il_from_nontracking(&bs("101")).unwrap(), il("00101"));
        assert_eq!(il_from_nontracking(&bs("")).unwrap(), il("00"));
        assert!(matches!(
            il_from_nontracking(&bs("111")),
            Err(Error::InputTracks(_))
        ));
        assert_eq!(strip_initial_loss(&il("00101")).unwrap(), bs("101"));
        assert_eq!(strip_initial_loss(&il("00")).unwrap(), bs(""));
        assert_eq!(strip_initial_loss(&il("0001")).unwrap(), bs("01"));
        assert!(matches!(strip_initial_loss(&il("0")), Err(Error::TooShort)));
    }

    #[test]
    fn decomposition_table() {
        let cases: [(&str, &[BasicBlock]); 7] = [
            ("001", &[Triple]),
            ("0001", &[Zero, Triple]),
            ("0011", &[Quad]),
            ("00001", &[Zero, Zero, Triple]),
            ("00011", &[Zero, Quad]),
            ("00101", &[Quint]),
            ("00010011", &[Zero, Triple, Quad]),
        ];
        for (s, expected) in cases {
            assert_eq!(decompose_blocks(&bs(s)).unwrap(), expected, "{s}");
        }
        assert_eq!(format_blocks(&[Zero, Triple]), "0 + 001");
        assert!(matches!(
            decompose_blocks(&bs("011")),
            Err(Error::NotDecomposable)
        ));
        assert!(matches!(
            decompose_blocks(&bs("")),
            Err(Error::NotDecomposable)
        ));
    }

    #[test]
    fn ambiguous_table_is_rejected() {
        // "0" and "00" both end "00": decoding must refuse to guess
        let table: [&[bool]; 2] = [&[false], &[false, false]];
        assert!(decompose_with(&bs("00"), &table).is_err());
    }

    #[test]
    fn tournament_examples() {
        assert_eq!(
            score_vector(&string_to_tournament(&il("0")).unwrap()),
            sv(&[0])
        );
        let t = string_to_tournament(&il("00101")).unwrap();
        assert_eq!(t, basic_tournament(5).unwrap());
        let t = string_to_tournament(&il("0001")).unwrap();
        assert_eq!(score_vector(&t), sv(&[0, 2, 2, 2]));
        assert_eq!(tournament_to_string(&t).unwrap(), il("0001"));
        assert_eq!(
            tournament_to_string(&basic_tournament(3).unwrap()).unwrap(),
            il("001")
        );
    }

    #[test]
    fn score_examples() {
        assert_eq!(score_vector_from_string(&il("00101")).unwrap(), sv(&[2; 5]));
        assert_eq!(score_vector_from_string(&il("0")).unwrap(), sv(&[0]));
        assert_eq!(
            score_vector_from_string(&il("00011")).unwrap(),
            sv(&[0, 2, 2, 3, 3])
        );
        assert_eq!(scores_by_position(&il("0001")).unwrap(), vec![0, 2, 2, 2]);
    }

    #[test]
    fn dual_examples() {
        assert_eq!(string_dual(&il("0001")).unwrap(), il("0010"));
        assert_eq!(string_dual(&il("001")).unwrap(), il("001"));
        assert_eq!(string_dual(&il("00010011")).unwrap(), il("00110010"));
        let t = string_to_tournament(&il("0001")).unwrap();
        assert_eq!(
            score_vector(&string_to_tournament(&il("0010")).unwrap()),
            sv(&[1, 1, 1, 3])
        );
        assert!(is_isomorphic(
            &string_to_tournament(&il("0010")).unwrap(),
            &dual(&t)
        ));
    }

    #[test]
    fn block_json_form() {
        let json = serde_json::to_string(&[Zero, Triple, Quad, Quint]).unwrap();
        assert_eq!(json, r#"["0","001","0011","00101"]"#);
        let back: Vec<BasicBlock> = serde_json::from_str(&json).unwrap();
        assert_eq!(back, BasicBlock::ALL);
        assert!(serde_json::from_str::<Vec<BasicBlock>>(r#"["01"]"#).is_err());
    }

    #[test]
    fn il_counts_match_ut() {
        for k in 1..=12 {
            let expected = crate::counting::ut(k).unwrap();
            assert_eq!(
                num_bigint::BigUint::from(IlString::all_of_length(k).len()),
                expected,
                "k={k}"
            );
        }
    }
}
