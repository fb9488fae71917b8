//! Self-verification: every published value and every exhaustive invariant,
//! runnable from the CLI.

use std::collections::BTreeSet;
use std::fmt;
use std::time::{Duration, Instant};

use num_bigint::BigUint;

use crate::bijection::{
    decompose_blocks, decompose_with, score_vector_from_string, scores_by_position, string_dual,
    string_to_tournament, tournament_to_string, BasicBlock, IlString,
};
use crate::counting::{
    count_by_enumeration, count_by_transfer_matrix, count_compositions, recurrence_ntr, ut,
    SequenceTable,
};
use crate::dfa::{build_dfa, minimize_dfa};
use crate::oeis::{compare, parse_bfile, SequenceId, UNIQUE_TOURNAMENTS_ID};
use crate::rule::{is_tracking_oracle, BinaryString, TrackingRule};
use crate::tournament::{
    basic_tournament, canonical_code, decompose_unique, dual, is_isomorphic, score_vector,
    unique_census, ScoreVector, Tournament, BASIC_SIZES,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Level {
    Quick,
    Full,
}

#[derive(Debug, Clone)]
pub struct Outcome {
    pub module: &'static str,
    pub invariant: &'static str,
    /// Number of individual cases examined.
    pub checked: u64,
    pub failure: Option<String>,
    pub elapsed: Duration,
}

impl Outcome {
    pub fn passed(&self) -> bool {
        self.failure.is_none()
    }
}

impl fmt::Display for Outcome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let status = if self.passed() { "PASS" } else { "FAIL" };
        write!(
            f,
            "{status} {}::{} ({} checked, {:.2?})",
            self.module, self.invariant, self.checked, self.elapsed
        )?;
        if let Some(why) = &self.failure {
            write!(f, ": {why}")?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Default)]
pub struct Report {
    pub outcomes: Vec<Outcome>,
}

impl Report {
    pub fn passed(&self) -> bool {
        self.outcomes.iter().all(Outcome::passed)
    }

    pub fn failures(&self) -> impl Iterator<Item = &Outcome> {
        self.outcomes.iter().filter(|o| !o.passed())
    }

    pub fn total_checked(&self) -> u64 {
        self.outcomes.iter().map(|o| o.checked).sum()
    }
}

type Check = fn(Level) -> Result<u64, String>;

const CHECKS: &[(&str, &str, Check)] = &[
    (
        "rule_automaton",
        "enumerated non-tracking lists",
        listed_strings,
    ),
    (
        "rule_automaton",
        "oracle/automaton equivalence",
        oracle_dfa_equivalence,
    ),
    ("rule_automaton", "tracking is absorbing", absorption),
    ("counting", "published NTr terms", published_ntr),
    ("counting", "three-way agreement", three_way_agreement),
    ("counting", "recurrence", recurrence_identity),
    ("counting", "shift identity", shift_identity),
    ("counting", "composition identity", composition_identity),
    (
        "tournament_core",
        "self-duality of basic tournaments",
        self_duality,
    ),
    ("tournament_core", "unique census", census),
    (
        "tournament_core",
        "canonical form agrees with isomorphism",
        canonical_vs_isomorphism,
    ),
    (
        "tournament_core",
        "characterization consistency",
        characterization,
    ),
    (
        "tournament_core",
        "dual reverses decomposition",
        dual_reverses_decomposition,
    ),
    ("bijection", "codec round-trip", codec_round_trip_standard),
    ("bijection", "unique decodability", unique_decodability),
    ("bijection", "tournament round-trip", tournament_round_trip),
    ("bijection", "score consistency", score_consistency),
    ("bijection", "duality commutes", duality_commutes),
    ("bijection", "initial-loss counts", il_counts),
    (
        "bijection",
        "champion and absolute loser",
        champion_and_loser,
    ),
    ("oeis_client", "bundled A000570 snapshot", snapshot_match),
];

/// Runs every check at `level`.
pub fn run(level: Level) -> Report {
    run_with(level, |_| {})
}

/// Like [`run`], calling `progress` after each check completes.
pub fn run_with(level: Level, mut progress: impl FnMut(&Outcome)) -> Report {
    let mut report = Report::default();
    for &(module, invariant, check) in CHECKS {
        let started = Instant::now();
        let result = check(level);
        let outcome = Outcome {
            module,
            invariant,
            checked: *result.as_ref().unwrap_or(&0),
            failure: result.err(),
            elapsed: started.elapsed(),
        };
        progress(&outcome);
        report.outcomes.push(outcome);
    }
    report
}

fn ensure(condition: bool, why: impl FnOnce() -> String) -> Result<(), String> {
    if condition {
        Ok(())
    } else {
        Err(why())
    }
}

fn max_len(level: Level, quick: usize, full: usize) -> usize {
    match level {
        Level::Quick => quick,
        Level::Full => full,
    }
}

fn err(e: crate::Error) -> String {
    e.to_string()
}

/// Non-tracking strings of length 1..=5 as enumerated by hand.
pub const LISTED_NON_TRACKING: [&[&str]; 5] = [
    &["0", "1"],
    &["00", "01", "10", "11"],
    &["000", "001", "010", "011", "100", "101", "110"],
    &[
        "0000", "0001", "0010", "0011", "0100", "0101", "0110", "1000", "1001", "1010", "1100",
    ],
    &[
        "00000", "00001", "00010", "00011", "00100", "00101", "00110", "01000", "01001", "01010",
        "01100", "10000", "10001", "10010", "10011", "10100", "11000", "11001",
    ],
];

/// Published NTr(1..=14).
pub const PUBLISHED_NTR: [u64; 14] = [2, 4, 7, 11, 18, 31, 53, 89, 149, 251, 424, 715, 1204, 2028];

/// Published UT(1..=17).
pub const PUBLISHED_UT: [u64; 17] = [
    1, 1, 2, 4, 7, 11, 18, 31, 53, 89, 149, 251, 424, 715, 1204, 2028, 3418,
];

/// Non-tracking strings of length `k` under `rule`, via the minimized automaton.
pub fn non_tracking_strings(k: usize, rule: &TrackingRule) -> crate::Result<BTreeSet<String>> {
    let dfa = minimize_dfa(&build_dfa(rule)?);
    Ok(BinaryString::all_of_length(k)
        .filter(|s| !dfa.run(s))
        .map(|s| s.to_string())
        .collect())
}

fn listed_strings(_: Level) -> Result<u64, String> {
    let mut checked = 0;
    for (i, listed) in LISTED_NON_TRACKING.iter().enumerate() {
        let k = i + 1;
        let expected: BTreeSet<String> = listed.iter().map(|s| s.to_string()).collect();
        let found = non_tracking_strings(k, &TrackingRule::STANDARD).map_err(err)?;
        ensure(found == expected, || {
            format!("length {k}: enumerated {found:?}, listed {expected:?}")
        })?;
        checked += 1;
    }
    Ok(checked)
}

/// Rules exercised by the oracle/automaton equivalence sweep.
pub const EQUIVALENCE_RULES: [(usize, usize, usize); 4] =
    [(3, 5, 2), (2, 3, 2), (3, 4, 2), (4, 6, 3)];

fn oracle_dfa_equivalence(level: Level) -> Result<u64, String> {
    let rules: &[(usize, usize, usize)] = match level {
        Level::Quick => &EQUIVALENCE_RULES[..1],
        Level::Full => &EQUIVALENCE_RULES,
    };
    let top = max_len(level, 10, 12);
    let mut checked = 0;
    for &(m, n, l) in rules {
        let rule = TrackingRule::new(m, n, l).map_err(err)?;
        let dfa = minimize_dfa(&build_dfa(&rule).map_err(err)?);
        for k in 0..=top {
            for s in BinaryString::all_of_length(k) {
                ensure(dfa.run(&s) == is_tracking_oracle(&s, &rule), || {
                    format!("rule {rule}, string {s}")
                })?;
                checked += 1;
            }
        }
    }
    Ok(checked)
}

fn absorption(level: Level) -> Result<u64, String> {
    let rule = TrackingRule::STANDARD;
    let top = max_len(level, 8, 10);
    let mut checked = 0;
    for k in 0..=top {
        for s in BinaryString::all_of_length(k) {
            let tracks = is_tracking_oracle(&s, &rule);
            for bit in [false, true] {
                let mut longer = s.clone();
                longer.push(bit);
                let longer_tracks = is_tracking_oracle(&longer, &rule);
                // equivalently: every prefix of a non-tracking string is non-tracking
                ensure(!tracks || longer_tracks, || {
                    format!("{s} tracks, {longer} does not")
                })?;
                checked += 1;
            }
        }
    }
    Ok(checked)
}

fn published_ntr(_: Level) -> Result<u64, String> {
    let rule = TrackingRule::STANDARD;
    let dfa = build_dfa(&rule).map_err(err)?;
    for (i, &expected) in PUBLISHED_NTR.iter().enumerate() {
        let k = i + 1;
        let (_, enumerated) = count_by_enumeration(k, &rule).map_err(err)?;
        let matrix = count_by_transfer_matrix(k, &dfa);
        let recurrence = recurrence_ntr(k);
        let want = BigUint::from(expected);
        ensure(
            enumerated == expected && matrix == want && recurrence == want,
            || {
                format!("k={k}: enum {enumerated}, matrix {matrix}, recurrence {recurrence}, published {expected}")
            },
        )?;
    }
    Ok(PUBLISHED_NTR.len() as u64)
}

fn three_way_agreement(level: Level) -> Result<u64, String> {
    let rule = TrackingRule::STANDARD;
    let dfa = build_dfa(&rule).map_err(err)?;
    let top = max_len(level, 14, 20);
    for k in 0..=top {
        let (tracking, non_tracking) = count_by_enumeration(k, &rule).map_err(err)?;
        ensure(tracking + non_tracking == 1 << k, || {
            format!("k={k}: Tr + NTr != 2^k")
        })?;
        let matrix = count_by_transfer_matrix(k, &dfa);
        let recurrence = recurrence_ntr(k);
        ensure(
            matrix == BigUint::from(non_tracking) && recurrence == matrix,
            || format!("k={k}: enum {non_tracking}, matrix {matrix}, recurrence {recurrence}"),
        )?;
    }
    Ok(top as u64 + 1)
}

fn recurrence_identity(_: Level) -> Result<u64, String> {
    let dfa = minimize_dfa(&build_dfa(&TrackingRule::STANDARD).map_err(err)?);
    let terms: Vec<BigUint> = (0..=40)
        .map(|k| count_by_transfer_matrix(k, &dfa))
        .collect();
    for k in 5..=40 {
        let rhs = &terms[k - 1] + &terms[k - 3] + &terms[k - 4] + &terms[k - 5];
        ensure(terms[k] == rhs, || format!("k={k}: {} != {rhs}", terms[k]))?;
    }
    Ok(36)
}

fn shift_identity(_: Level) -> Result<u64, String> {
    for k in 0..=40 {
        let shifted = ut(k + 2).map_err(err)?;
        ensure(recurrence_ntr(k) == shifted, || {
            format!("NTr({k}) != UT({})", k + 2)
        })?;
    }
    for (i, &expected) in PUBLISHED_UT.iter().enumerate() {
        let n = i + 1;
        ensure(ut(n).map_err(err)? == BigUint::from(expected), || {
            format!("UT({n}) != {expected}")
        })?;
    }
    Ok(41 + PUBLISHED_UT.len() as u64)
}

fn composition_identity(_: Level) -> Result<u64, String> {
    for n in 1..=40 {
        ensure(count_compositions(n) == ut(n).map_err(err)?, || {
            format!("compositions({n}) != UT({n})")
        })?;
    }
    Ok(40)
}

fn self_duality(_: Level) -> Result<u64, String> {
    for size in BASIC_SIZES {
        let t = basic_tournament(size).map_err(err)?;
        ensure(is_isomorphic(&t, &dual(&t)), || {
            format!("basic {size} is not self-dual")
        })?;
    }
    Ok(BASIC_SIZES.len() as u64)
}

/// Expected `(n, UT(n))` for the brute-force census.
pub fn census_expectations() -> [(usize, usize); 7] {
    [(1, 1), (2, 1), (3, 2), (4, 4), (5, 7), (6, 11), (7, 18)]
}

fn census(level: Level) -> Result<u64, String> {
    let top = max_len(level, 5, 7);
    let mut checked = 0;
    for (n, expected) in census_expectations().into_iter().take(top) {
        let c = unique_census(n).map_err(err)?;
        ensure(c.unique_count() == expected, || {
            format!("n={n}: {} unique, expected {expected}", c.unique_count())
        })?;
        if n == 5 {
            let expected_pair: BTreeSet<ScoreVector> = [vec![1, 2, 2, 2, 3], vec![1, 1, 2, 3, 3]]
                .into_iter()
                .map(|v| ScoreVector::new(v).expect("valid"))
                .collect();
            ensure(c.non_unique() == expected_pair, || {
                format!("n=5 non-unique {:?}", c.non_unique())
            })?;
            let classes = c.classes[&ScoreVector::new(vec![1, 2, 2, 2, 3]).expect("valid")];
            ensure(classes == 3, || {
                format!("{{1,2,2,2,3}} has {classes} classes")
            })?;
        }
        if n <= 4 {
            ensure(c.non_unique().is_empty(), || {
                format!("n={n} has non-unique vectors")
            })?;
        }
        checked += 1u64 << (n * (n - 1) / 2);
    }
    Ok(checked)
}

fn canonical_vs_isomorphism(level: Level) -> Result<u64, String> {
    let top = max_len(level, 4, 5);
    let mut checked = 0;
    for n in 1..=top {
        let all: Vec<(Tournament, u64)> = (0..1u64 << (n * (n - 1) / 2))
            .map(|m| {
                let t = Tournament::from_mask(n, m);
                let code = canonical_code(&t).expect("small");
                (t, code)
            })
            .collect();
        for (a, ca) in &all {
            for (b, cb) in &all {
                ensure(is_isomorphic(a, b) == (ca == cb), || {
                    format!("{} vs {}", a.to_hex(), b.to_hex())
                })?;
                checked += 1;
            }
        }
    }
    Ok(checked)
}

fn characterization(level: Level) -> Result<u64, String> {
    let top = max_len(level, 5, 7);
    let mut checked = 0;
    for n in 1..=top {
        let non_unique = unique_census(n).map_err(err)?.non_unique();
        for m in 0..1u64 << (n * (n - 1) / 2) {
            let t = Tournament::from_mask(n, m);
            let decomposes = decompose_unique(&t).is_ok();
            let unique = !non_unique.contains(&score_vector(&t));
            ensure(decomposes == unique, || {
                format!(
                    "{}: decomposes={decomposes}, unique score={unique}",
                    t.to_hex()
                )
            })?;
            checked += 1;
        }
    }
    Ok(checked)
}

fn dual_reverses_decomposition(_: Level) -> Result<u64, String> {
    let mut checked = 0;
    for k in 1..=8 {
        for il in IlString::all_of_length(k) {
            let t = string_to_tournament(&il).map_err(err)?;
            let forward = decompose_unique(&t).map_err(err)?;
            let backward = decompose_unique(&dual(&t)).map_err(err)?;
            ensure(backward == forward.reversed(), || format!("{il}"))?;
            checked += 1;
        }
    }
    Ok(checked)
}

/// Checks that every initial-loss string up to `max_len` decodes against
/// `table` and that the decoded blocks concatenate back to the input.
pub fn codec_round_trip(table: &[&[bool]], max_len: usize) -> Result<u64, String> {
    let mut checked = 0;
    for k in 1..=max_len {
        for il in IlString::all_of_length(k) {
            let indices =
                decompose_with(il.bits(), table).map_err(|_| format!("{il} does not decode"))?;
            let joined: Vec<bool> = indices
                .iter()
                .flat_map(|&i| table[i].iter().copied())
                .collect();
            ensure(joined == il.bits().bits(), || {
                format!("{il} re-encodes differently")
            })?;
            checked += 1;
        }
    }
    Ok(checked)
}

fn codec_round_trip_standard(level: Level) -> Result<u64, String> {
    codec_round_trip(
        &BasicBlock::ALL.map(BasicBlock::bits),
        max_len(level, 8, 12),
    )
}

/// Number of ways to split `bits` into basic blocks, by dynamic programming.
fn factorization_count(bits: &[bool]) -> u64 {
    let mut ways = vec![0u64; bits.len() + 1];
    ways[0] = 1;
    for end in 1..=bits.len() {
        for block in BasicBlock::ALL {
            let len = block.len();
            if len <= end && &bits[end - len..end] == block.bits() {
                ways[end] += ways[end - len];
            }
        }
    }
    ways[bits.len()]
}

fn unique_decodability(level: Level) -> Result<u64, String> {
    let top = max_len(level, 10, 12);
    let mut checked = 0;
    for k in 1..=top {
        for s in BinaryString::all_of_length(k) {
            let ways = factorization_count(s.bits());
            ensure(ways <= 1, || format!("{s} has {ways} factorizations"))?;
            ensure((ways == 1) == decompose_blocks(&s).is_ok(), || {
                format!("{s}: decoder disagrees with factorization count")
            })?;
            checked += 1;
        }
    }
    Ok(checked)
}

fn tournament_round_trip(level: Level) -> Result<u64, String> {
    let mut checked = 0;
    for k in 1..=8 {
        for il in IlString::all_of_length(k) {
            let t = string_to_tournament(&il).map_err(err)?;
            let back = tournament_to_string(&t).map_err(err)?;
            ensure(back == il, || format!("{il} -> {}", back))?;
            checked += 1;
        }
    }
    let top = max_len(level, 5, 6);
    for n in 1..=top {
        let non_unique = unique_census(n).map_err(err)?.non_unique();
        for m in 0..1u64 << (n * (n - 1) / 2) {
            let t = Tournament::from_mask(n, m);
            if non_unique.contains(&score_vector(&t)) {
                continue;
            }
            let il = tournament_to_string(&t).map_err(|e| format!("{}: {e}", t.to_hex()))?;
            let rebuilt = string_to_tournament(&il).map_err(err)?;
            ensure(is_isomorphic(&rebuilt, &t), || {
                format!("{} via {il}", t.to_hex())
            })?;
            checked += 1;
        }
    }
    Ok(checked)
}

fn score_consistency(level: Level) -> Result<u64, String> {
    let top = max_len(level, 8, 10);
    let mut checked = 0;
    for k in 1..=top {
        for il in IlString::all_of_length(k) {
            let t = string_to_tournament(&il).map_err(err)?;
            let direct = score_vector_from_string(&il).map_err(err)?;
            ensure(direct == score_vector(&t), || format!("{il}: {direct}"))?;
            ensure(
                scores_by_position(&il).map_err(err)? == t.raw_scores(),
                || format!("{il}: per-position scores differ"),
            )?;
            checked += 1;
        }
    }
    Ok(checked)
}

fn duality_commutes(_: Level) -> Result<u64, String> {
    let mut checked = 0;
    for k in 1..=8 {
        for il in IlString::all_of_length(k) {
            let d = string_dual(&il).map_err(err)?;
            let lhs = string_to_tournament(&d).map_err(err)?;
            let rhs = dual(&string_to_tournament(&il).map_err(err)?);
            ensure(is_isomorphic(&lhs, &rhs), || format!("{il} -> {d}"))?;
            ensure(string_dual(&d).map_err(err)? == il, || {
                format!("{il}: not an involution")
            })?;
            checked += 1;
        }
    }
    Ok(checked)
}

fn il_counts(_: Level) -> Result<u64, String> {
    for k in 1..=12 {
        let count = BigUint::from(IlString::all_of_length(k).len());
        ensure(count == ut(k).map_err(err)?, || {
            format!("k={k}: {count} strings")
        })?;
        if k >= 2 {
            ensure(count == recurrence_ntr(k - 2), || {
                format!("k={k}: {count} != NTr(k-2)")
            })?;
        }
    }
    Ok(12)
}

fn champion_and_loser(level: Level) -> Result<u64, String> {
    let top = max_len(level, 8, 10);
    let mut checked = 0;
    for k in 1..=top {
        for il in IlString::all_of_length(k) {
            let scores = scores_by_position(&il).map_err(err)?;
            let bits = il.bits();
            if bits.ends_with(&[false]) {
                ensure(scores.iter().max() == Some(&(k - 1)), || {
                    format!("{il}: no champion")
                })?;
            }
            if bits.starts_with(&[false, false, false]) {
                ensure(scores[0] == 0, || {
                    format!("{il}: node 0 scores {}", scores[0])
                })?;
            }
            checked += 1;
        }
    }
    Ok(checked)
}

fn snapshot_match(_: Level) -> Result<u64, String> {
    let id = SequenceId::parse(UNIQUE_TOURNAMENTS_ID).map_err(err)?;
    let text = id.bundled().ok_or("no bundled snapshot")?;
    let remote = parse_bfile(id.as_str(), text).map_err(err)?;
    let last = remote.last_index().ok_or("empty snapshot")? as usize;
    let report = compare(&SequenceTable::ut(last), &remote, 0).map_err(err)?;
    if let Some(bad) = report.first_mismatch() {
        return Err(format!(
            "index {}: local {}, snapshot {}",
            bad.index, bad.local, bad.remote
        ));
    }
    Ok(report.len() as u64)
}
