//! RNA secondary structures as non-crossing arc diagrams.
//!
//! Positions are 1-based. Every statistic is computed with the auxiliary arc
//! `(0, n+1)` adjoined, so the outermost partial stack, helix and loop always
//! exist.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::lex::LexWords;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum StructureError {
    #[error("empty structure")]
    Empty,
    #[error("illegal character {ch:?} at position {pos}")]
    IllegalChar { pos: usize, ch: char },
    #[error("unmatched '(' at position {pos}")]
    UnmatchedOpen { pos: usize },
    #[error("unmatched ')' at position {pos}")]
    UnmatchedClose { pos: usize },
    #[error("arc ({left},{right}) spans fewer than two positions")]
    SpanTooShort { left: usize, right: usize },
    #[error("arc ({left},{right}) lies outside positions 1..={n}")]
    OutOfRange { left: usize, right: usize, n: usize },
    #[error("position {pos} belongs to more than one arc")]
    SharedPosition { pos: usize },
    #[error("arcs ({0},{1}) and ({2},{3}) cross")]
    Crossing(usize, usize, usize, usize),
}

/// A secondary structure on positions `1..=n`.
///
/// Arcs are stored sorted by left end. The auxiliary arc `(0, n+1)` is
/// implicit.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "RawStructure")]
pub struct SecondaryStructure {
    n: usize,
    arcs: Vec<(usize, usize)>,
}

#[derive(Deserialize)]
struct RawStructure {
    n: usize,
    arcs: Vec<(usize, usize)>,
}

impl TryFrom<RawStructure> for SecondaryStructure {
    type Error = StructureError;

    fn try_from(raw: RawStructure) -> Result<Self, Self::Error> {
        SecondaryStructure::new(raw.n, raw.arcs)
    }
}

impl SecondaryStructure {
    /// Builds a structure from arcs given in any order, validating every
    /// structural condition.
    pub fn new(n: usize, mut arcs: Vec<(usize, usize)>) -> Result<Self, StructureError> {
        if n == 0 {
            return Err(StructureError::Empty);
        }
        let mut owner = vec![None; n + 1];
        for &(i, j) in &arcs {
            if i < 1 || j > n || i >= j {
                return Err(StructureError::OutOfRange { left: i, right: j, n });
            }
            if j - i < 2 {
                return Err(StructureError::SpanTooShort { left: i, right: j });
            }
            for pos in [i, j] {
                if owner[pos].is_some() {
                    return Err(StructureError::SharedPosition { pos });
                }
                owner[pos] = Some((i, j));
            }
        }
        arcs.sort_unstable();
        // Non-crossing iff the arcs, read left to right, close in stack order.
        let mut open: Vec<(usize, usize)> = Vec::new();
        for (pos, slot) in owner.iter().enumerate().skip(1) {
            if let Some((i, j)) = *slot {
                if pos == i {
                    open.push((i, j));
                } else {
                    let top = open.pop().expect("left end precedes right end");
                    if top != (i, j) {
                        return Err(StructureError::Crossing(top.0, top.1, i, j));
                    }
                }
            }
        }
        Ok(SecondaryStructure { n, arcs })
    }

    pub fn len(&self) -> usize {
        self.n
    }

    /// Always false: the empty structure is not representable.
    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn arcs(&self) -> &[(usize, usize)] {
        &self.arcs
    }

    /// Number of real base pairs `b`.
    pub fn num_arcs(&self) -> usize {
        self.arcs.len()
    }

    /// Number of isolated bases `k = n - 2b`.
    pub fn num_isolated(&self) -> usize {
        self.n - 2 * self.arcs.len()
    }

    pub fn to_dot_bracket(&self) -> String {
        let mut out = vec![b'.'; self.n];
        for &(i, j) in &self.arcs {
            out[i - 1] = b'(';
            out[j - 1] = b')';
        }
        String::from_utf8(out).unwrap()
    }

    /// Partner table over positions `0..=n+1`, auxiliary arc included.
    pub(crate) fn partners(&self) -> Vec<Option<usize>> {
        let mut partner = vec![None; self.n + 2];
        partner[0] = Some(self.n + 1);
        partner[self.n + 1] = Some(0);
        for &(i, j) in &self.arcs {
            partner[i] = Some(j);
            partner[j] = Some(i);
        }
        partner
    }

    /// Arcs in left-end order with the auxiliary arc first.
    pub(crate) fn arcs_with_aux(&self) -> Vec<(usize, usize)> {
        std::iter::once((0, self.n + 1)).chain(self.arcs.iter().copied()).collect()
    }

    /// One loop per arc (auxiliary first, then by left end).
    pub fn loops(&self) -> Vec<Loop> {
        let partner = self.partners();
        self.arcs_with_aux()
            .into_iter()
            .map(|(i, j)| {
                let (mut inner_arcs, mut bases) = (0, 0);
                let mut p = i + 1;
                while p < j {
                    match partner[p] {
                        Some(q) => {
                            inner_arcs += 1;
                            p = q + 1;
                        }
                        None => {
                            bases += 1;
                            p += 1;
                        }
                    }
                }
                let degree = inner_arcs + 1;
                let kind = if i == 0 {
                    LoopKind::Exterior
                } else {
                    match degree {
                        1 => LoopKind::Hairpin,
                        2 => LoopKind::Interior,
                        _ => LoopKind::Multi,
                    }
                };
                Loop { arc: (i, j), degree, length: bases, kind }
            })
            .collect()
    }

    pub fn stats(&self) -> StructureStats {
        let partner = self.partners();
        let is_left = |p: usize| matches!(partner[p], Some(q) if q > p);

        let mut partial_stack_lengths = Vec::new();
        let mut run = 0;
        for p in 0..=self.n {
            if is_left(p) {
                run += 1;
            } else if run > 0 {
                partial_stack_lengths.push(run);
                run = 0;
            }
        }
        if run > 0 {
            partial_stack_lengths.push(run);
        }

        // A helix starts at an arc not directly continued outward by (i-1, j+1).
        let mut helix_sizes = Vec::new();
        for (i, j) in self.arcs_with_aux() {
            let continues_outer = i > 0 && partner[i - 1] == Some(j + 1);
            if continues_outer {
                continue;
            }
            let (mut a, mut c, mut size) = (i, j, 1);
            while c >= a + 2 && partner[a + 1] == Some(c - 1) {
                a += 1;
                c -= 1;
                size += 1;
            }
            helix_sizes.push(size);
        }

        let loops = self.loops();
        let loop_sizes: Vec<usize> = loops.iter().map(Loop::size).collect();
        StructureStats {
            b: self.num_arcs(),
            k: self.num_isolated(),
            partial_stack_count: partial_stack_lengths.len(),
            helix_count: helix_sizes.len(),
            nontrivial_loop_count: loop_sizes.iter().filter(|&&s| s >= 2).count(),
            partial_stack_lengths,
            helix_sizes,
            loop_sizes,
            loop_kinds: loops.iter().map(|l| l.kind).collect(),
        }
    }
}

impl fmt::Display for SecondaryStructure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_dot_bracket())
    }
}

impl FromStr for SecondaryStructure {
    type Err = StructureError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        parse_dot_bracket(s)
    }
}

/// Parses dot-bracket notation. Error positions are 1-based.
pub fn parse_dot_bracket(text: &str) -> Result<SecondaryStructure, StructureError> {
    if text.is_empty() {
        return Err(StructureError::Empty);
    }
    let mut stack = Vec::new();
    let mut arcs = Vec::new();
    for (idx, ch) in text.chars().enumerate() {
        let pos = idx + 1;
        match ch {
            '.' => {}
            '(' => stack.push(pos),
            ')' => {
                let left = stack.pop().ok_or(StructureError::UnmatchedClose { pos })?;
                if pos - left < 2 {
                    return Err(StructureError::SpanTooShort { left, right: pos });
                }
                arcs.push((left, pos));
            }
            _ => return Err(StructureError::IllegalChar { pos, ch }),
        }
    }
    if let Some(&pos) = stack.last() {
        return Err(StructureError::UnmatchedOpen { pos });
    }
    arcs.sort_unstable();
    Ok(SecondaryStructure { n: text.chars().count(), arcs })
}

pub fn compute_stats(s: &SecondaryStructure) -> StructureStats {
    s.stats()
}

pub fn classify_loops(s: &SecondaryStructure) -> Vec<LoopKind> {
    s.loops().into_iter().map(|l| l.kind).collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum LoopKind {
    Hairpin,
    Interior,
    Multi,
    Exterior,
}

/// The elements directly covered by one arc.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Loop {
    pub arc: (usize, usize),
    /// One more than the number of directly covered arcs.
    pub degree: usize,
    /// Number of directly covered isolated bases.
    pub length: usize,
    pub kind: LoopKind,
}

impl Loop {
    /// Number of directly covered elements, `degree + length - 1`.
    pub fn size(&self) -> usize {
        self.degree + self.length - 1
    }
}

/// Partial stack, helix and loop statistics of one structure, auxiliary arc
/// included. Multisets are listed in positional order.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct StructureStats {
    pub b: usize,
    pub k: usize,
    #[serde(rename = "partial_stacks")]
    pub partial_stack_lengths: Vec<usize>,
    #[serde(rename = "helices")]
    pub helix_sizes: Vec<usize>,
    #[serde(rename = "loops")]
    pub loop_sizes: Vec<usize>,
    #[serde(rename = "l_e")]
    pub partial_stack_count: usize,
    #[serde(rename = "s")]
    pub helix_count: usize,
    /// Loops of size at least two.
    #[serde(rename = "l_o")]
    pub nontrivial_loop_count: usize,
    #[serde(skip)]
    pub loop_kinds: Vec<LoopKind>,
}

impl StructureStats {
    pub fn max_partial_stack(&self) -> usize {
        self.partial_stack_lengths.iter().copied().max().unwrap_or(0)
    }

    pub fn max_loop_size(&self) -> usize {
        self.loop_sizes.iter().copied().max().unwrap_or(0)
    }

    pub fn min_helix_size(&self) -> usize {
        self.helix_sizes.iter().copied().min().unwrap_or(0)
    }

    /// Checks the bookkeeping identities every structure must satisfy.
    pub fn is_consistent(&self) -> bool {
        let sum = |v: &[usize]| v.iter().sum::<usize>();
        sum(&self.partial_stack_lengths) == self.b + 1
            && sum(&self.helix_sizes) == self.b + 1
            && self.loop_sizes.len() == self.b + 1
            && sum(&self.loop_sizes) == self.b + self.k
            && self.nontrivial_loop_count == self.loop_sizes.iter().filter(|&&s| s >= 2).count()
            && self.partial_stack_count == self.partial_stack_lengths.len()
            && self.helix_count == self.helix_sizes.len()
            && self.helix_count >= self.partial_stack_count
    }
}

/// Lazily enumerates every structure with `b` arcs and `k` isolated bases in
/// lexicographic dot-bracket order, with `'.' < '(' < ')'`.
///
/// The `b = k = 0` universe is empty.
pub fn enumerate_structures(b: usize, k: usize) -> impl Iterator<Item = SecondaryStructure> {
    let n = 2 * b + k;
    let words = LexWords::new(b".()", n, move |prefix| extendable(prefix, b, k));
    words.take_while(move |_| n > 0).map(move |w| SecondaryStructure { n, arcs: arcs_of(&w) })
}

/// Whether `prefix` extends to a valid structure with `b` arcs, `k` bases.
fn extendable(prefix: &[u8], b: usize, k: usize) -> bool {
    let n = 2 * b + k;
    let (mut dots, mut opens, mut closes) = (0, 0, 0);
    // For each open arc: does it already contain an isolated base?
    let mut stack: Vec<bool> = Vec::new();
    for &c in prefix {
        match c {
            b'.' => {
                dots += 1;
                if let Some(top) = stack.last_mut() {
                    *top = true;
                }
            }
            b'(' => {
                opens += 1;
                stack.push(false);
            }
            _ => {
                closes += 1;
                match stack.pop() {
                    Some(true) => {
                        if let Some(top) = stack.last_mut() {
                            *top = true;
                        }
                    }
                    _ => return false,
                }
            }
        }
    }
    if dots > k || opens > b {
        return false;
    }
    let (dots_left, opens_left) = (k - dots, b - opens);
    let unmatched = opens - closes;
    if n - prefix.len() != 2 * opens_left + dots_left + unmatched {
        return false;
    }
    let needs_base = matches!(stack.last(), Some(false)) || opens_left > 0;
    !needs_base || dots_left > 0
}

fn arcs_of(word: &[u8]) -> Vec<(usize, usize)> {
    let mut stack = Vec::new();
    let mut arcs = Vec::new();
    for (idx, &c) in word.iter().enumerate() {
        match c {
            b'(' => stack.push(idx + 1),
            b')' => arcs.push((stack.pop().unwrap(), idx + 1)),
            _ => {}
        }
    }
    arcs.sort_unstable();
    arcs
}

#[cfg(test)]
mod tests {
    use super::*;

    fn db(s: &str) -> SecondaryStructure {
        parse_dot_bracket(s).unwrap()
    }

    #[test]
    fn parses_simple_structures() {
        let s = db("(.)");
        assert_eq!((s.len(), s.arcs()), (3, &[(1, 3)][..]));
        let s = db("..((..))");
        assert_eq!((s.len(), s.arcs()), (8, &[(3, 8), (4, 7)][..]));
    }

    #[test]
    fn parse_errors_carry_positions() {
        assert_eq!(parse_dot_bracket("()"), Err(StructureError::SpanTooShort { left: 1, right: 2 }));
        assert_eq!(parse_dot_bracket("(.(.)"), Err(StructureError::UnmatchedOpen { pos: 1 }));
        assert_eq!(parse_dot_bracket(".)"), Err(StructureError::UnmatchedClose { pos: 2 }));
        assert_eq!(parse_dot_bracket("(.x)"), Err(StructureError::IllegalChar { pos: 3, ch: 'x' }));
        assert_eq!(parse_dot_bracket(""), Err(StructureError::Empty));
    }

    #[test]
    fn dot_bracket_output() {
        assert_eq!(SecondaryStructure::new(3, vec![(1, 3)]).unwrap().to_string(), "(.)");
        assert_eq!(SecondaryStructure::new(1, vec![]).unwrap().to_string(), ".");
        assert_eq!(SecondaryStructure::new(7, vec![(2, 6), (1, 7)]).unwrap().to_string(), "((...))");
    }

    #[test]
    fn constructor_rejects_invalid_arcs() {
        assert!(matches!(SecondaryStructure::new(6, vec![(1, 4), (3, 6)]), Err(StructureError::Crossing(..))));
        assert!(matches!(
            SecondaryStructure::new(5, vec![(1, 5), (1, 3)]),
            Err(StructureError::SharedPosition { pos: 1 })
        ));
        assert!(matches!(SecondaryStructure::new(3, vec![(1, 4)]), Err(StructureError::OutOfRange { .. })));
        assert_eq!(SecondaryStructure::new(0, vec![]), Err(StructureError::Empty));
    }

    #[test]
    fn json_shape() {
        let s = db("((...))");
        let json = serde_json::to_string(&s).unwrap();
        assert_eq!(json, r#"{"n":7,"arcs":[[1,7],[2,6]]}"#);
        let back: SecondaryStructure = serde_json::from_str(&json).unwrap();
        assert_eq!(back, s);
        assert!(serde_json::from_str::<SecondaryStructure>(r#"{"n":3,"arcs":[[1,2]]}"#).is_err());
    }

    #[test]
    fn stats_of_single_hairpin() {
        let st = db("(.)").stats();
        assert_eq!((st.b, st.k), (1, 1));
        assert_eq!(st.partial_stack_lengths, vec![2]);
        assert_eq!(st.helix_sizes, vec![2]);
        assert_eq!(st.loop_sizes, vec![1, 1]);
        assert_eq!((st.partial_stack_count, st.helix_count, st.nontrivial_loop_count), (1, 1, 0));
        assert!(st.is_consistent());
    }

    #[test]
    fn stats_of_nested_chain_and_bare_bases() {
        let st = db("((...))").stats();
        assert_eq!(st.helix_sizes, vec![3]);
        assert_eq!(st.helix_count, 1);

        let st = db("...").stats();
        assert_eq!((st.b, st.k), (0, 3));
        assert_eq!(st.partial_stack_lengths, vec![1]);
        assert_eq!(st.helix_sizes, vec![1]);
        assert_eq!(st.loop_sizes, vec![3]);
    }

    #[test]
    fn helices_split_partial_stacks() {
        // Left ends 0,1,2 form one partial stack; right ends 10,9 are adjacent
        // but 7 is not, so the stack splits into helices {0,1} and {2}.
        let st = db("((.(.)).)").stats();
        assert_eq!(st.partial_stack_lengths, vec![3, 1]);
        assert_eq!(st.helix_sizes, vec![2, 1, 1]);
        assert!(st.is_consistent());
    }

    #[test]
    fn loop_classification() {
        assert_eq!(classify_loops(&db("(.)")), vec![LoopKind::Exterior, LoopKind::Hairpin]);
        assert_eq!(classify_loops(&db("((...))")), vec![LoopKind::Exterior, LoopKind::Interior, LoopKind::Hairpin]);
        let loops = db("(.).(.)").loops();
        assert_eq!(loops[0].kind, LoopKind::Exterior);
        assert_eq!(loops[0].degree, 3);
        assert_eq!(loops[0].length, 1);
        assert_eq!(classify_loops(&db(".((.).(.))"))[2..].to_vec(), vec![LoopKind::Hairpin; 2]);
        assert_eq!(classify_loops(&db(".((.).(.))"))[1], LoopKind::Multi);
    }

    #[test]
    fn stats_json_field_names() {
        let json = serde_json::to_value(db("(.)").stats()).unwrap();
        let keys: Vec<_> = json.as_object().unwrap().keys().cloned().collect();
        for key in ["b", "k", "partial_stacks", "helices", "loops", "l_e", "s", "l_o"] {
            assert!(keys.iter().any(|k| k == key), "missing {key}");
        }
        assert_eq!(keys.len(), 8);
    }

    #[test]
    fn enumeration_small_cases() {
        let all: Vec<String> = enumerate_structures(0, 3).map(|s| s.to_string()).collect();
        assert_eq!(all, vec!["..."]);
        let all: Vec<String> = enumerate_structures(1, 1).map(|s| s.to_string()).collect();
        assert_eq!(all, vec!["(.)"]);
        assert_eq!(enumerate_structures(2, 3).count(), 20);
        assert_eq!(enumerate_structures(0, 0).count(), 0);
        assert_eq!(enumerate_structures(2, 0).count(), 0);
    }

    #[test]
    fn enumeration_is_sorted_and_distinct() {
        let rank = |c: char| ".()".find(c).unwrap();
        let words: Vec<Vec<usize>> =
            enumerate_structures(3, 4).map(|s| s.to_string().chars().map(rank).collect()).collect();
        assert!(words.windows(2).all(|w| w[0] < w[1]));
    }

    #[test]
    fn enumeration_matches_filtered_brute_force() {
        // Independent oracle: every word over the alphabet, kept if it parses.
        for (b, k) in [(1, 2), (2, 2), (2, 3), (3, 1)] {
            let n = 2 * b + k;
            let mut brute = 0;
            for code in 0..3usize.pow(n as u32) {
                let mut c = code;
                let word: String = (0..n)
                    .map(|_| {
                        let ch = b".()"[c % 3] as char;
                        c /= 3;
                        ch
                    })
                    .collect();
                if let Ok(s) = parse_dot_bracket(&word) {
                    if s.num_arcs() == b {
                        brute += 1;
                    }
                }
            }
            assert_eq!(enumerate_structures(b, k).count(), brute, "b={b} k={k}");
        }
    }
}
