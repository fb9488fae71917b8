//! Tournaments: complete oriented graphs on labelled nodes.
//!
//! `beats(i, j)` means node `i` defeated node `j`. Composition `a + b` places
//! `b` above `a`: every node of `b` beats every node of `a`. Decompositions are
//! listed bottom first, i.e. the group that loses to everyone else comes first.

use std::collections::{BTreeMap, BTreeSet, HashMap, HashSet};
use std::fmt::{self, Write as _};
use std::str::FromStr;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Largest tournament accepted by [`canonical_form`].
pub const MAX_CANONICAL: usize = 8;
/// Largest tournament size accepted by [`unique_census`].
pub const MAX_CENSUS: usize = 7;
/// Node counts of the four basic unique tournaments.
pub const BASIC_SIZES: [usize; 4] = [1, 3, 4, 5];

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Tournament {
    n: usize,
    beats: Vec<bool>,
}

impl Tournament {
    /// Transitive tournament: node `i` beats every node below it.
    pub fn transitive(n: usize) -> Self {
        Self::from_fn(n, |i, j| i > j)
    }

    pub fn single() -> Self {
        Self::transitive(1)
    }

    /// Builds a tournament from `wins(i, j)` evaluated for `i < j`.
    pub fn from_fn(n: usize, mut wins: impl FnMut(usize, usize) -> bool) -> Self {
        assert!(n >= 1, "a tournament has at least one node");
        let mut beats = vec![false; n * n];
        for i in 0..n {
            for j in i + 1..n {
                if wins(i, j) {
                    beats[i * n + j] = true;
                } else {
                    beats[j * n + i] = true;
                }
            }
        }
        Self { n, beats }
    }

    /// Upper-triangle pairs in row-major order; bit `p` of `mask` set means the
    /// lower-numbered node of pair `p` wins.
    pub fn from_mask(n: usize, mask: u64) -> Self {
        let mut p = 0;
        Self::from_fn(n, |_, _| {
            let bit = (mask >> p) & 1 == 1;
            p += 1;
            bit
        })
    }

    /// Builds from a list of `(winner, loser)` pairs covering every pair once.
    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidTournament("no nodes".into()));
        }
        let mut beats = vec![false; n * n];
        for &(w, l) in edges {
            if w >= n || l >= n || w == l {
                return Err(Error::InvalidTournament(format!("bad edge {w}->{l}")));
            }
            if beats[w * n + l] || beats[l * n + w] {
                return Err(Error::InvalidTournament(format!(
                    "pair {{{w},{l}}} listed twice"
                )));
            }
            beats[w * n + l] = true;
        }
        let expected = n * (n - 1) / 2;
        if edges.len() != expected {
            return Err(Error::InvalidTournament(format!(
                "{} edges given, {expected} required",
                edges.len()
            )));
        }
        Ok(Self { n, beats })
    }

    pub fn node_count(&self) -> usize {
        self.n
    }

    pub fn beats(&self, i: usize, j: usize) -> bool {
        self.beats[i * self.n + j]
    }

    pub fn outdegree(&self, i: usize) -> usize {
        self.beats[i * self.n..(i + 1) * self.n]
            .iter()
            .filter(|&&b| b)
            .count()
    }

    /// Outdegrees in node order.
    pub fn raw_scores(&self) -> Vec<usize> {
        (0..self.n).map(|i| self.outdegree(i)).collect()
    }

    /// `(winner, loser)` for every pair, ordered by pair.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut edges = Vec::with_capacity(self.n * (self.n - 1) / 2);
        for i in 0..self.n {
            for j in i + 1..self.n {
                edges.push(if self.beats(i, j) { (i, j) } else { (j, i) });
            }
        }
        edges
    }

    /// Node `new` of the result is node `perm[new]` of `self`.
    pub fn relabel(&self, perm: &[usize]) -> Self {
        assert_eq!(perm.len(), self.n);
        Self::from_fn(self.n, |i, j| self.beats(perm[i], perm[j]))
    }

    /// Sub-tournament induced on `nodes`, in the given order.
    pub fn induced(&self, nodes: &[usize]) -> Self {
        Self::from_fn(nodes.len(), |i, j| self.beats(nodes[i], nodes[j]))
    }

    /// Upper triangle row by row as `"{n}:{hex}"`, bits packed MSB first.
    pub fn to_hex(&self) -> String {
        let bits: Vec<bool> = self.edges().iter().map(|&(w, l)| w < l).collect();
        let mut out = format!("{}:", self.n);
        for chunk in bits.chunks(8) {
            let byte = chunk
                .iter()
                .enumerate()
                .fold(0u8, |acc, (k, &b)| acc | ((b as u8) << (7 - k)));
            write!(out, "{byte:02x}").expect("write to string");
        }
        out
    }

    pub fn from_hex(text: &str) -> Result<Self> {
        let bad = |m: &str| Error::InvalidTournament(m.to_owned());
        let (n, hex) = text
            .trim()
            .split_once(':')
            .ok_or_else(|| bad("expected \"n:hex\""))?;
        let n: usize = n.parse().map_err(|_| bad("bad node count"))?;
        if n == 0 {
            return Err(bad("no nodes"));
        }
        let pairs = n * (n - 1) / 2;
        if hex.len() != pairs.div_ceil(8) * 2 {
            return Err(bad("hex length does not match node count"));
        }
        let bytes = (0..hex.len())
            .step_by(2)
            .map(|k| u8::from_str_radix(&hex[k..k + 2], 16))
            .collect::<std::result::Result<Vec<u8>, _>>()
            .map_err(|_| bad("invalid hex digit"))?;
        let bit = |p: usize| (bytes[p / 8] >> (7 - p % 8)) & 1 == 1;
        if (pairs..bytes.len() * 8).any(bit) {
            return Err(bad("non-zero padding bits"));
        }
        let mut p = 0;
        Ok(Self::from_fn(n, |_, _| {
            p += 1;
            bit(p - 1)
        }))
    }

    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string(&EdgeList {
            nodes: self.n,
            edges: self.edges(),
        })?)
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let list: EdgeList = serde_json::from_str(text)?;
        Self::from_edges(list.nodes, &list.edges)
    }

    /// Graphviz digraph with an arrow from each winner to its loser.
    pub fn to_dot(&self) -> String {
        let mut out = String::from("digraph tournament {\n");
        for i in 0..self.n {
            writeln!(out, "  {i} [label=\"{i} ({})\"];", self.outdegree(i)).expect("write");
        }
        for (w, l) in self.edges() {
            writeln!(out, "  {w} -> {l};").expect("write");
        }
        out.push_str("}\n");
        out
    }
}

impl FromStr for Tournament {
    type Err = Error;

    /// Accepts either the hex form or the JSON edge list.
    fn from_str(s: &str) -> Result<Self> {
        if s.trim_start().starts_with('{') {
            Self::from_json(s)
        } else {
            Self::from_hex(s)
        }
    }
}

#[derive(Serialize, Deserialize)]
struct EdgeList {
    nodes: usize,
    edges: Vec<(usize, usize)>,
}

/// Non-decreasing list of outdegrees.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct ScoreVector(Vec<usize>);

impl ScoreVector {
    /// Sorts `scores`; rejects lists no tournament could produce on size grounds.
    pub fn new(mut scores: Vec<usize>) -> Result<Self> {
        scores.sort_unstable();
        let n = scores.len();
        let sum: usize = scores.iter().sum();
        if n == 0 || sum != n * (n - 1) / 2 || scores.iter().any(|&s| s >= n) {
            return Err(Error::InvalidTournament(format!(
                "{scores:?} is not a score vector"
            )));
        }
        Ok(Self(scores))
    }

    pub fn scores(&self) -> &[usize] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// `{a,b,c}` notation.
    pub fn braced(&self) -> String {
        let inner: Vec<String> = self.0.iter().map(usize::to_string).collect();
        format!("{{{}}}", inner.join(","))
    }
}

impl fmt::Display for ScoreVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let inner: Vec<String> = self.0.iter().map(usize::to_string).collect();
        f.write_str(&inner.join(" "))
    }
}

pub fn score_vector(t: &Tournament) -> ScoreVector {
    let mut scores = t.raw_scores();
    scores.sort_unstable();
    ScoreVector(scores)
}

/// `a + b`: nodes of `a` first, then nodes of `b`, every `b` node beating every
/// `a` node.
pub fn compose(a: &Tournament, b: &Tournament) -> Tournament {
    let m = a.n;
    Tournament::from_fn(m + b.n, |i, j| match (i < m, j < m) {
        (true, true) => a.beats(i, j),
        (false, false) => b.beats(i - m, j - m),
        // i < j, so i is in `a` and j is in `b`
        _ => false,
    })
}

/// Every edge reversed.
pub fn dual(t: &Tournament) -> Tournament {
    Tournament::from_fn(t.n, |i, j| t.beats(j, i))
}

/// Backtracking search for a node bijection, restricted to nodes of equal
/// outdegree.
pub fn is_isomorphic(a: &Tournament, b: &Tournament) -> bool {
    if a.n != b.n || score_vector(a) != score_vector(b) {
        return false;
    }
    let a_scores = a.raw_scores();
    let b_scores = b.raw_scores();
    let mut image = Vec::with_capacity(a.n);
    let mut used = vec![false; b.n];
    extend_isomorphism(a, b, &a_scores, &b_scores, &mut image, &mut used)
}

fn extend_isomorphism(
    a: &Tournament,
    b: &Tournament,
    a_scores: &[usize],
    b_scores: &[usize],
    image: &mut Vec<usize>,
    used: &mut [bool],
) -> bool {
    let next = image.len();
    if next == a.n {
        return true;
    }
    for candidate in 0..b.n {
        if used[candidate] || b_scores[candidate] != a_scores[next] {
            continue;
        }
        let consistent = image
            .iter()
            .enumerate()
            .all(|(prev, &mapped)| a.beats(prev, next) == b.beats(mapped, candidate));
        if !consistent {
            continue;
        }
        image.push(candidate);
        used[candidate] = true;
        if extend_isomorphism(a, b, a_scores, b_scores, image, used) {
            return true;
        }
        image.pop();
        used[candidate] = false;
    }
    false
}

/// Isomorphism-invariant encoding for `n <= 8`.
///
/// Over all node orders whose scores are non-decreasing, read the upper
/// triangle column by column (`(0,1), (0,2), (1,2), (0,3), ...`, bit set when
/// the earlier node wins) and keep the lexicographically smallest sequence.
pub fn canonical_form(t: &Tournament) -> Result<Vec<bool>> {
    let code = canonical_code(t)?;
    let pairs = t.n * (t.n - 1) / 2;
    Ok((0..pairs).rev().map(|p| (code >> p) & 1 == 1).collect())
}

/// [`canonical_form`] packed into an integer, first pair in the highest bit.
pub fn canonical_code(t: &Tournament) -> Result<u64> {
    if t.n > MAX_CANONICAL {
        return Err(Error::SizeTooLarge {
            size: t.n,
            max: MAX_CANONICAL,
        });
    }
    let scores = t.raw_scores();
    let mut sorted = scores.clone();
    sorted.sort_unstable();
    let mut search = CanonicalSearch {
        t,
        scores: &scores,
        sorted: &sorted,
        order: Vec::with_capacity(t.n),
        used: vec![false; t.n],
        best: None,
    };
    search.descend(0);
    Ok(search.best.expect("at least one ordering").0)
}

struct CanonicalSearch<'a> {
    t: &'a Tournament,
    scores: &'a [usize],
    sorted: &'a [usize],
    order: Vec<usize>,
    used: Vec<bool>,
    /// Best full code so far and its prefix after each placed column.
    best: Option<(u64, Vec<u64>)>,
}

impl CanonicalSearch<'_> {
    fn descend(&mut self, prefix: u64) {
        let pos = self.order.len();
        if pos > 0 {
            if let Some((_, prefixes)) = &self.best {
                if prefix > prefixes[pos - 1] {
                    return;
                }
            }
        }
        if pos == self.t.n {
            let mut prefixes = Vec::with_capacity(self.t.n);
            let mut p = 0u64;
            for col in 0..self.t.n {
                for row in 0..col {
                    p = (p << 1) | self.t.beats(self.order[row], self.order[col]) as u64;
                }
                prefixes.push(p);
            }
            if self.best.as_ref().is_none_or(|(code, _)| prefix < *code) {
                self.best = Some((prefix, prefixes));
            }
            return;
        }
        for node in 0..self.t.n {
            if self.used[node] || self.scores[node] != self.sorted[pos] {
                continue;
            }
            let mut next = prefix;
            for &row in &self.order {
                next = (next << 1) | self.t.beats(row, node) as u64;
            }
            self.used[node] = true;
            self.order.push(node);
            self.descend(next);
            self.order.pop();
            self.used[node] = false;
        }
    }
}

/// Fixed representative of the basic unique tournament on `size` nodes.
pub fn basic_tournament(size: usize) -> Result<Tournament> {
    match size {
        1 => Ok(Tournament::single()),
        3 => Tournament::from_edges(3, &[(0, 1), (1, 2), (2, 0)]),
        4 => Tournament::from_edges(4, &[(0, 1), (1, 2), (2, 0), (3, 0), (3, 1), (2, 3)]),
        5 => Ok(Tournament::from_fn(5, |i, j| matches!(j - i, 1 | 2))),
        _ => Err(Error::InvalidBasicSize(size)),
    }
}

/// Strongly connected components ordered bottom-up: a component comes before
/// every component whose nodes beat it.
pub fn condensation(t: &Tournament) -> Vec<Vec<usize>> {
    let mut tarjan = Tarjan {
        t,
        index: vec![None; t.n],
        low: vec![0; t.n],
        on_stack: vec![false; t.n],
        stack: Vec::new(),
        counter: 0,
        components: Vec::new(),
    };
    for v in 0..t.n {
        if tarjan.index[v].is_none() {
            tarjan.visit(v);
        }
    }
    // Tarjan emits sink components first; in a tournament the sink is the
    // group that loses to everyone outside it.
    tarjan.components
}

struct Tarjan<'a> {
    t: &'a Tournament,
    index: Vec<Option<usize>>,
    low: Vec<usize>,
    on_stack: Vec<bool>,
    stack: Vec<usize>,
    counter: usize,
    components: Vec<Vec<usize>>,
}

impl Tarjan<'_> {
    fn visit(&mut self, v: usize) {
        self.index[v] = Some(self.counter);
        self.low[v] = self.counter;
        self.counter += 1;
        self.stack.push(v);
        self.on_stack[v] = true;
        for w in 0..self.t.n {
            if !self.t.beats(v, w) {
                continue;
            }
            match self.index[w] {
                None => {
                    self.visit(w);
                    self.low[v] = self.low[v].min(self.low[w]);
                }
                Some(iw) if self.on_stack[w] => self.low[v] = self.low[v].min(iw),
                Some(_) => {}
            }
        }
        if Some(self.low[v]) == self.index[v] {
            let mut component = Vec::new();
            loop {
                let w = self.stack.pop().expect("v is on the stack");
                self.on_stack[w] = false;
                component.push(w);
                if w == v {
                    break;
                }
            }
            component.sort_unstable();
            self.components.push(component);
        }
    }
}

/// Sizes of basic components, bottom group first.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Decomposition {
    parts: Vec<usize>,
}

impl Decomposition {
    pub fn new(parts: Vec<usize>) -> Result<Self> {
        if let Some(&bad) = parts.iter().find(|p| !BASIC_SIZES.contains(p)) {
            return Err(Error::InvalidBasicSize(bad));
        }
        Ok(Self { parts })
    }

    pub fn parts(&self) -> &[usize] {
        &self.parts
    }

    pub fn node_count(&self) -> usize {
        self.parts.iter().sum()
    }

    pub fn reversed(&self) -> Self {
        Self {
            parts: self.parts.iter().rev().copied().collect(),
        }
    }

    /// Composes the basic tournaments left to right, first part at the bottom.
    pub fn rebuild(&self) -> Option<Tournament> {
        self.parts
            .iter()
            .map(|&size| basic_tournament(size).expect("validated size"))
            .reduce(|acc, next| compose(&acc, &next))
    }
}

/// Splits a unique tournament into its basic strong components.
pub fn decompose_unique(t: &Tournament) -> Result<Decomposition> {
    let mut parts = Vec::new();
    for component in condensation(t) {
        let size = component.len();
        let basic = basic_tournament(size).map_err(|_| Error::NotUnique)?;
        if !is_isomorphic(&t.induced(&component), &basic) {
            return Err(Error::NotUnique);
        }
        parts.push(size);
    }
    Ok(Decomposition { parts })
}

/// Result of exhaustively classifying all labelled tournaments on `n` nodes.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Census {
    pub n: usize,
    /// Isomorphism classes per score vector.
    pub classes: BTreeMap<ScoreVector, usize>,
}

impl Census {
    /// Score vectors realized by exactly one isomorphism class.
    pub fn unique_count(&self) -> usize {
        self.classes.values().filter(|&&c| c == 1).count()
    }

    pub fn non_unique(&self) -> BTreeSet<ScoreVector> {
        self.classes
            .iter()
            .filter(|&(_, &c)| c > 1)
            .map(|(s, _)| s.clone())
            .collect()
    }

    pub fn class_count(&self) -> usize {
        self.classes.values().sum()
    }
}

/// Enumerates every labelled tournament on `n <= 7` nodes and counts the
/// isomorphism classes behind each score vector.
pub fn unique_census(n: usize) -> Result<Census> {
    if n == 0 || n > MAX_CENSUS {
        return Err(Error::SizeTooLarge {
            size: n,
            max: MAX_CENSUS,
        });
    }
    let pairs = n * (n - 1) / 2;
    type Buckets = HashMap<ScoreVector, HashSet<u64>>;
    let merge = |mut a: Buckets, b: Buckets| {
        for (scores, codes) in b {
            a.entry(scores).or_default().extend(codes);
        }
        a
    };
    let buckets = (0..1u64 << pairs)
        .into_par_iter()
        .fold(Buckets::new, |mut acc, mask| {
            let t = Tournament::from_mask(n, mask);
            let code = canonical_code(&t).expect("n within canonical limit");
            acc.entry(score_vector(&t)).or_default().insert(code);
            acc
        })
        .reduce(Buckets::new, merge);
    Ok(Census {
        n,
        classes: buckets
            .into_iter()
            .map(|(scores, codes)| (scores, codes.len()))
            .collect(),
    })
}
