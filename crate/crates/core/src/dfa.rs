//! Compiled automaton for a tracking rule.
//!
//! Non-tracked states remember the last `n - 1` observations. Any window that
//! completes a track on the newest bit lies inside the last `n` positions, so
//! that suffix is all the history the automaton needs. Observations before the
//! first one read as misses: a tracking window starts with a detection, so
//! leading misses never change the outcome. Once a track is declared the
//! automaton sits in an absorbing `tracked` state.

use std::collections::{HashMap, VecDeque};

use crate::error::{Error, Result};
use crate::rule::{BinaryString, TrackingRule};

/// Largest window length accepted by [`build_dfa`].
pub const MAX_WINDOW: usize = 16;

pub type StateId = usize;

/// Total deterministic automaton over `{0, 1}` with a single absorbing
/// accepting state.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Dfa {
    transitions: Vec<[StateId; 2]>,
    start: StateId,
    tracked: StateId,
}

impl Dfa {
    pub fn state_count(&self) -> usize {
        self.transitions.len()
    }

    pub fn start(&self) -> StateId {
        self.start
    }

    pub fn tracked(&self) -> StateId {
        self.tracked
    }

    pub fn next(&self, state: StateId, bit: bool) -> StateId {
        self.transitions[state][bit as usize]
    }

    pub fn transitions(&self) -> &[[StateId; 2]] {
        &self.transitions
    }

    pub fn state_after(&self, bits: impl IntoIterator<Item = bool>) -> StateId {
        bits.into_iter()
            .fold(self.start, |state, bit| self.next(state, bit))
    }

    /// Runs the automaton over `s`; true iff it ends in the tracked state.
    pub fn run(&self, s: &BinaryString) -> bool {
        self.state_after(s.bits().iter().copied()) == self.tracked
    }

    /// Same as [`Dfa::run`] for the `len` low bits of `value`, MSB first.
    pub fn run_index(&self, value: u64, len: usize) -> bool {
        self.state_after((0..len).rev().map(|i| (value >> i) & 1 == 1)) == self.tracked
    }

    /// Renumbers states breadth-first from the start state, dropping any state
    /// the start cannot reach.
    fn canonicalize(transitions: &[[StateId; 2]], start: StateId, tracked: StateId) -> Dfa {
        let mut order = vec![None; transitions.len()];
        let mut queue = VecDeque::from([start]);
        let mut visited = Vec::new();
        order[start] = Some(0);
        while let Some(state) = queue.pop_front() {
            visited.push(state);
            for next in transitions[state] {
                if order[next].is_none() {
                    order[next] = Some(visited.len() + queue.len());
                    queue.push_back(next);
                }
            }
        }
        let renumbered = visited
            .iter()
            .map(|&old| transitions[old].map(|next| order[next].expect("reachable")))
            .collect();
        Dfa {
            transitions: renumbered,
            start: 0,
            tracked: order[tracked].expect("tracked state is reachable"),
        }
    }
}

/// Recent history of a non-tracked state: the last `n - 1` bits, newest in
/// bit 0.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
struct History {
    bits: u32,
}

impl History {
    fn bit(&self, age: usize) -> bool {
        (self.bits >> age) & 1 == 1
    }
}

/// True when appending `bit` to `history` closes a window that tracks.
fn completes_track(history: History, bit: bool, rule: &TrackingRule) -> bool {
    if !bit {
        return false;
    }
    let mut ones = 1;
    let mut gap = 0;
    if ones >= rule.detections() {
        return true;
    }
    // `age` 0 is the bit observed just before the new one.
    for age in 0..rule.window() - 1 {
        if history.bit(age) {
            ones += 1;
            gap = 0;
            if ones >= rule.detections() {
                return true;
            }
        } else {
            gap += 1;
            if gap >= rule.loss() {
                return false;
            }
        }
    }
    false
}

/// Compiles `rule` into an automaton with at most `2^(n-1) + 1` states.
pub fn build_dfa(rule: &TrackingRule) -> Result<Dfa> {
    if rule.window() > MAX_WINDOW {
        return Err(Error::WindowTooLarge(rule.window()));
    }
    let keep = rule.window() - 1;
    let mask: u32 = if keep == 0 { 0 } else { (1u32 << keep) - 1 };

    let tracked: StateId = 0;
    let start: StateId = 1;
    let mut transitions: Vec<[StateId; 2]> = vec![[tracked, tracked], [0, 0]];
    let mut ids = HashMap::from([(History { bits: 0 }, start)]);
    let mut queue = VecDeque::from([(History { bits: 0 }, start)]);

    while let Some((history, id)) = queue.pop_front() {
        for bit in [false, true] {
            let next = if completes_track(history, bit, rule) {
                tracked
            } else {
                let successor = History {
                    bits: ((history.bits << 1) | bit as u32) & mask,
                };
                *ids.entry(successor).or_insert_with(|| {
                    let fresh = transitions.len();
                    transitions.push([0, 0]);
                    queue.push_back((successor, fresh));
                    fresh
                })
            };
            transitions[id][bit as usize] = next;
        }
    }
    Ok(Dfa::canonicalize(&transitions, start, tracked))
}

/// Moore partition refinement; the accepting set is `{tracked}`.
pub fn minimize_dfa(dfa: &Dfa) -> Dfa {
    let count = dfa.state_count();
    let mut class: Vec<usize> = (0..count).map(|s| (s == dfa.tracked) as usize).collect();
    let mut classes = if count > 1 { 2 } else { 1 };
    loop {
        let mut signatures = HashMap::new();
        let refined: Vec<usize> = (0..count)
            .map(|s| {
                let sig = (
                    class[s],
                    class[dfa.next(s, false)],
                    class[dfa.next(s, true)],
                );
                let fresh = signatures.len();
                *signatures.entry(sig).or_insert(fresh)
            })
            .collect();
        let refined_count = signatures.len();
        class = refined;
        if refined_count == classes {
            break;
        }
        classes = refined_count;
    }

    let mut transitions = vec![[0; 2]; classes];
    for s in 0..count {
        transitions[class[s]] = [class[dfa.next(s, false)], class[dfa.next(s, true)]];
    }
    Dfa::canonicalize(&transitions, class[dfa.start], class[dfa.tracked])
}

pub fn run_dfa(dfa: &Dfa, s: &BinaryString) -> bool {
    dfa.run(s)
}
