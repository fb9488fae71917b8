use std::collections::HashSet;

use proptest::prelude::*;
use rand::seq::SliceRandom;
use rand::{rngs::StdRng, SeedableRng};

use tourtrack::bijection::{
    decompose_blocks, string_dual, string_to_tournament, tournament_to_string, BasicBlock,
};
use tourtrack::counting::{count_by_transfer_matrix, recurrence_ntr, ut, SequenceTable};
use tourtrack::dfa::{build_dfa, minimize_dfa};
use tourtrack::oeis::parse_bfile;
use tourtrack::rule::is_tracking_oracle;
use tourtrack::tournament::{
    basic_tournament, canonical_form, compose, decompose_unique, dual, is_isomorphic, score_vector,
    Decomposition, ScoreVector,
};
use tourtrack::{BinaryString, IlString, Tournament, TrackingRule};

/// Number of Myhill-Nerode classes among prefixes of length <= `prefix_len`,
/// told apart by extensions of length <= `suffix_len`, using only the oracle.
fn nerode_classes(rule: &TrackingRule, prefix_len: usize, suffix_len: usize) -> usize {
    let suffixes: Vec<BinaryString> = (0..=suffix_len)
        .flat_map(BinaryString::all_of_length)
        .collect();
    let signatures: HashSet<Vec<bool>> = (0..=prefix_len)
        .flat_map(BinaryString::all_of_length)
        .map(|p| {
            suffixes
                .iter()
                .map(|s| is_tracking_oracle(&p.concat(s), rule))
                .collect()
        })
        .collect();
    signatures.len()
}

#[test]
fn minimized_state_count_matches_nerode_oracle() {
    for rule in ["3,5,2", "2,3,2", "3,4,2"] {
        let rule: TrackingRule = rule.parse().unwrap();
        let expected = nerode_classes(&rule, 6, 6);
        let min = minimize_dfa(&build_dfa(&rule).unwrap());
        assert_eq!(min.state_count(), expected, "rule {rule}");
    }
}

#[test]
fn standard_minimal_automaton_size_is_frozen() {
    // distinct oracle signatures over prefixes and extensions of length <= 8,
    // counted by a separate brute-force script
    let rule = TrackingRule::STANDARD;
    assert_eq!(nerode_classes(&rule, 8, 8), 6);
    assert_eq!(minimize_dfa(&build_dfa(&rule).unwrap()).state_count(), 6);
}

#[test]
fn canonical_form_agrees_with_isomorphism_up_to_five_nodes() {
    for n in 1..=5usize {
        let all: Vec<(Tournament, Vec<bool>)> = (0..1u64 << (n * (n - 1) / 2))
            .map(|m| {
                let t = Tournament::from_mask(n, m);
                let c = canonical_form(&t).unwrap();
                (t, c)
            })
            .collect();
        for (a, ca) in &all {
            for (b, cb) in &all {
                assert_eq!(
                    is_isomorphic(a, b),
                    ca == cb,
                    "{} {}",
                    a.to_hex(),
                    b.to_hex()
                );
            }
        }
    }
}

#[test]
fn every_regular_five_tournament_is_the_basic_one() {
    let basic = basic_tournament(5).unwrap();
    let regular = ScoreVector::new(vec![2; 5]).unwrap();
    let mut seen = 0;
    for m in 0..1u64 << 10 {
        let t = Tournament::from_mask(5, m);
        if score_vector(&t) == regular {
            assert!(is_isomorphic(&t, &basic));
            seen += 1;
        }
    }
    // labelled copies: 5! / |Aut| = 120 / 5
    assert_eq!(seen, 24);
}

#[test]
fn score_12223_classes_are_distinct_and_not_unique() {
    let target = ScoreVector::new(vec![1, 2, 2, 2, 3]).unwrap();
    let mut reps: Vec<Tournament> = Vec::new();
    for m in 0..1u64 << 10 {
        let t = Tournament::from_mask(5, m);
        if score_vector(&t) == target && !reps.iter().any(|r| is_isomorphic(r, &t)) {
            reps.push(t);
        }
    }
    assert_eq!(reps.len(), 3);
    let forms: HashSet<_> = reps.iter().map(|t| canonical_form(t).unwrap()).collect();
    assert_eq!(forms.len(), 3);
    for t in &reps {
        assert!(decompose_unique(t).is_err());
        assert!(tournament_to_string(t).is_err());
    }
}

fn arb_rule() -> impl Strategy<Value = TrackingRule> {
    (1usize..=7)
        .prop_flat_map(|n| (1..=n, Just(n), 1..=n))
        .prop_map(|(m, n, l)| TrackingRule::new(m, n, l).unwrap())
}

fn arb_bits(max: usize) -> impl Strategy<Value = BinaryString> {
    prop::collection::vec(any::<bool>(), 0..=max).prop_map(BinaryString::from_bits)
}

fn arb_blocks() -> impl Strategy<Value = Vec<BasicBlock>> {
    prop::collection::vec(prop::sample::select(BasicBlock::ALL.to_vec()), 1..=12)
}

fn join(blocks: &[BasicBlock]) -> BinaryString {
    BinaryString::from_bits(
        blocks
            .iter()
            .flat_map(|b| b.bits().iter().copied())
            .collect(),
    )
}

proptest! {
    #[test]
    fn automaton_matches_oracle(rule in arb_rule(), s in arb_bits(20)) {
        let dfa = build_dfa(&rule).unwrap();
        let min = minimize_dfa(&dfa);
        let expected = is_tracking_oracle(&s, &rule);
        prop_assert_eq!(dfa.run(&s), expected);
        prop_assert_eq!(min.run(&s), expected);
        prop_assert!(min.state_count() <= dfa.state_count());
        prop_assert!(dfa.state_count() <= (1 << (rule.window() - 1)) + 1);
    }

    #[test]
    fn tracking_survives_extension(rule in arb_rule(), s in arb_bits(14), t in arb_bits(6)) {
        if is_tracking_oracle(&s, &rule) {
            prop_assert!(is_tracking_oracle(&s.concat(&t), &rule));
        }
    }

    #[test]
    fn binary_string_text_round_trip(s in arb_bits(40)) {
        prop_assert_eq!(s.to_string().parse::<BinaryString>().unwrap(), s);
    }

    #[test]
    fn block_concatenations_decode_uniquely(blocks in arb_blocks()) {
        let s = join(&blocks);
        prop_assert_eq!(decompose_blocks(&s).unwrap(), blocks.clone());
        // every block string starting "00" (or "0") is an initial-loss string
        let il = IlString::new(s).unwrap();
        let t = string_to_tournament(&il).unwrap();
        prop_assert_eq!(t.node_count(), il.len());
        let parts: Vec<usize> = blocks.iter().map(|b| b.len()).collect();
        let d = decompose_unique(&t).unwrap();
        prop_assert_eq!(d.parts(), parts.as_slice());
        prop_assert_eq!(tournament_to_string(&t).unwrap(), il.clone());
        let d = string_dual(&il).unwrap();
        prop_assert_eq!(string_to_tournament(&d).unwrap(), dual(&t).relabel(&reverse_groups(&parts)));
    }

    #[test]
    fn compose_scores_shift(a in arb_blocks(), b in arb_blocks()) {
        let ta = string_to_tournament(&IlString::new(join(&a)).unwrap()).unwrap();
        let tb = string_to_tournament(&IlString::new(join(&b)).unwrap()).unwrap();
        let mut expected: Vec<usize> = ta.raw_scores();
        expected.extend(tb.raw_scores().iter().map(|s| s + ta.node_count()));
        prop_assert_eq!(score_vector(&compose(&ta, &tb)), ScoreVector::new(expected).unwrap());
        let mut dual_scores: Vec<usize> = ta.raw_scores().iter().map(|x| ta.node_count() - 1 - x).collect();
        dual_scores.sort_unstable();
        let sv = score_vector(&dual(&ta));
        prop_assert_eq!(sv.scores(), dual_scores.as_slice());
    }

    #[test]
    fn canonical_form_ignores_labels(mask in 0u64..1 << 28, seed in any::<u64>()) {
        let t = Tournament::from_mask(8, mask);
        let mut perm: Vec<usize> = (0..8).collect();
        perm.shuffle(&mut StdRng::seed_from_u64(seed));
        let shuffled = t.relabel(&perm);
        prop_assert_eq!(canonical_form(&t).unwrap(), canonical_form(&shuffled).unwrap());
        prop_assert!(is_isomorphic(&t, &shuffled));
    }

    #[test]
    fn tournament_encodings_round_trip(n in 1usize..=12, seed in any::<u64>()) {
        let mut rng = StdRng::seed_from_u64(seed);
        let t = Tournament::from_fn(n, |_, _| rand::Rng::gen_bool(&mut rng, 0.5));
        prop_assert_eq!(Tournament::from_hex(&t.to_hex()).unwrap(), t.clone());
        prop_assert_eq!(Tournament::from_json(&t.to_json().unwrap()).unwrap(), t.clone());
        prop_assert_eq!(dual(&dual(&t)), t);
    }

    #[test]
    fn sequence_table_forms_round_trip(max_k in 0usize..120) {
        let t = SequenceTable::ntr(max_k);
        prop_assert_eq!(SequenceTable::from_json(&t.to_json().unwrap()).unwrap(), t.clone());
        let from_csv = SequenceTable::from_csv("NTr", &t.to_csv()).unwrap();
        prop_assert_eq!(from_csv, t.clone());
        let b = parse_bfile("A000000", &t.to_bfile()).unwrap();
        prop_assert_eq!(parse_bfile("A000000", &b.to_text()).unwrap(), b);
    }

    #[test]
    fn rebuild_matches_decomposition(blocks in arb_blocks()) {
        let d = Decomposition::new(blocks.iter().map(|b| b.len()).collect()).unwrap();
        let t = d.rebuild().unwrap();
        prop_assert_eq!(decompose_unique(&t).unwrap(), d.clone());
        prop_assert_eq!(decompose_unique(&dual(&t)).unwrap(), d.reversed());
    }
}

/// Node permutation that maps `dual(t)` onto the tournament of the reversed
/// block list, when `t` is a composition of basic blocks of sizes `parts`.
fn reverse_groups(parts: &[usize]) -> Vec<usize> {
    let total: usize = parts.iter().sum();
    let mut starts = Vec::with_capacity(parts.len());
    let mut acc = 0;
    for &p in parts {
        starts.push(acc);
        acc += p;
    }
    let mut perm = Vec::with_capacity(total);
    for (i, &p) in parts.iter().enumerate().rev() {
        let start = starts[i];
        perm.extend(basic_dual_map(p).iter().map(|&k| start + k));
    }
    perm
}

/// For each basic size, the node order that turns the dual of the basic
/// representative back into the representative itself.
fn basic_dual_map(size: usize) -> Vec<usize> {
    let basic = basic_tournament(size).unwrap();
    let d = dual(&basic);
    let mut perm: Vec<usize> = (0..size).collect();
    loop {
        if d.relabel(&perm) == basic {
            return perm;
        }
        if !next_permutation(&mut perm) {
            panic!("basic tournament {size} is not self-dual");
        }
    }
}

fn next_permutation(p: &mut [usize]) -> bool {
    let Some(i) = (1..p.len()).rev().find(|&i| p[i - 1] < p[i]) else {
        return false;
    };
    let j = (i..p.len()).rev().find(|&j| p[j] > p[i - 1]).unwrap();
    p.swap(i - 1, j);
    p[i..].reverse();
    true
}

#[test]
fn large_index_identities() {
    let dfa = minimize_dfa(&build_dfa(&TrackingRule::STANDARD).unwrap());
    for k in [50, 75, 100] {
        assert_eq!(count_by_transfer_matrix(k, &dfa), recurrence_ntr(k));
        assert_eq!(ut(k + 2).unwrap(), recurrence_ntr(k));
    }
}
