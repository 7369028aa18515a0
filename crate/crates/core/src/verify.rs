//! Exhaustive cross-checks of the closed forms, bijections and series code
//! against brute-force enumeration.

use std::collections::{BTreeMap, HashSet};
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::bijection::{
    chen_forward, chen_inverse, enumerate_labelled_trees, forest_decode, forest_encode, sw_forward, sw_inverse,
    ForestParams,
};
use crate::counting::{self, SizeDistribution};
use crate::series::TreeSystem;
use crate::structure::{enumerate_structures, StructureStats};
use crate::tree::enumerate_plane_trees;

/// Largest `max_size` accepted by [`run`].
pub const MAX_SIZE_GUARD: usize = 16;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Suite {
    Formulas,
    Tables,
    Bijections,
    Forest,
    Series,
    Identities,
    Probabilities,
}

impl Suite {
    pub const ALL: [Suite; 7] = [
        Suite::Formulas,
        Suite::Tables,
        Suite::Bijections,
        Suite::Forest,
        Suite::Series,
        Suite::Identities,
        Suite::Probabilities,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Formulas => "formulas",
            Suite::Tables => "tables",
            Suite::Bijections => "bijections",
            Suite::Forest => "forest",
            Suite::Series => "series",
            Suite::Identities => "identities",
            Suite::Probabilities => "probabilities",
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Suite {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        Suite::ALL.into_iter().find(|suite| suite.name() == s).ok_or_else(|| format!("unknown suite {s:?}"))
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SuiteReport {
    pub suite: Suite,
    pub passed: u64,
    pub failed: u64,
    /// The first failing check, in sweep order (smallest sizes first).
    pub counterexample: Option<String>,
}

impl SuiteReport {
    pub fn ok(&self) -> bool {
        self.failed == 0
    }
}

impl fmt::Display for SuiteReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let verdict = if self.ok() { "PASS" } else { "FAIL" };
        write!(f, "{verdict} {}: {} passed, {} failed", self.suite, self.passed, self.failed)?;
        if let Some(c) = &self.counterexample {
            write!(f, "\n  first counterexample: {c}")?;
        }
        Ok(())
    }
}

struct Checker {
    report: SuiteReport,
}

impl Checker {
    fn new(suite: Suite) -> Self {
        Checker { report: SuiteReport { suite, passed: 0, failed: 0, counterexample: None } }
    }

    fn check(&mut self, ok: bool, describe: impl FnOnce() -> String) {
        if ok {
            self.report.passed += 1;
        } else {
            self.report.failed += 1;
            if self.report.counterexample.is_none() {
                self.report.counterexample = Some(describe());
            }
        }
    }

    fn eq<T: PartialEq + fmt::Display, E: fmt::Display>(
        &mut self,
        what: impl FnOnce() -> String,
        got: Result<T, E>,
        want: T,
    ) {
        match got {
            Ok(got) => {
                let ok = got == want;
                self.check(ok, || format!("{}: formula {got}, expected {want}", what()));
            }
            Err(e) => self.check(false, || format!("{}: {e}", what())),
        }
    }
}

/// Runs the requested suites. `max_size` bounds the structure length `2b+k`;
/// the bijection suites cap tree sizes further to stay fast.
pub fn run(suites: &[Suite], max_size: usize) -> Result<Vec<SuiteReport>, String> {
    if max_size > MAX_SIZE_GUARD {
        return Err(format!("max size {max_size} exceeds the guard of {MAX_SIZE_GUARD}"));
    }
    Ok(suites.iter().map(|&s| run_suite(s, max_size)).collect())
}

pub fn run_suite(suite: Suite, max_size: usize) -> SuiteReport {
    let mut c = Checker::new(suite);
    match suite {
        Suite::Formulas => formulas(&mut c, max_size),
        Suite::Tables => tables(&mut c),
        Suite::Bijections => bijections(&mut c, max_size.min(12), max_size.min(9)),
        Suite::Forest => forest(&mut c, max_size.min(6)),
        Suite::Series => series(&mut c, 8),
        Suite::Identities => identities(&mut c),
        Suite::Probabilities => probabilities(&mut c, 10),
    }
    c.report
}

/// Every `(b, k)` with `k >= 1` and `2b + k <= max_size`, smallest first.
pub fn shapes(max_size: usize) -> Vec<(usize, usize)> {
    let mut out: Vec<(usize, usize)> =
        (0..=max_size / 2).flat_map(|b| (1..=max_size - 2 * b).map(move |k| (b, k))).collect();
    out.sort_by_key(|&(b, k)| (2 * b + k, b));
    out
}

/// Statistics of every structure with `b` arcs and `k` isolated bases.
pub fn oracle_stats(b: usize, k: usize) -> Vec<StructureStats> {
    enumerate_structures(b, k).map(|s| s.stats()).collect()
}

fn count_where(stats: &[StructureStats], pred: impl Fn(&StructureStats) -> bool) -> BigInt {
    BigInt::from(stats.iter().filter(|s| pred(s)).count())
}

fn tally<K: Ord>(stats: &[StructureStats], key: impl Fn(&StructureStats) -> K) -> BTreeMap<K, BigInt> {
    let mut map = BTreeMap::new();
    for s in stats {
        *map.entry(key(s)).or_insert_with(BigInt::zero) += 1;
    }
    map
}

fn formulas(c: &mut Checker, max_size: usize) {
    for (b, k) in shapes(max_size) {
        let stats = oracle_stats(b, k);
        let total = BigInt::from(stats.len());
        c.eq(|| format!("narayana({b},{k})"), counting::narayana(b, k), total.clone());

        for l in 1..=b + 2 {
            let want = count_where(&stats, |s| s.partial_stack_count == l);
            c.eq(|| format!("partial-stacks({b},{k},{l})"), counting::count_by_partial_stacks(b, k, l), want);
        }
        for h in 1..=b + 2 {
            let want = count_where(&stats, |s| s.max_partial_stack() <= h);
            c.eq(|| format!("max-stack({b},{k},{h})"), counting::count_max_partial_stack(b, k, h), want);
        }
        for l in 1..=b + k + 1 {
            let want = count_where(&stats, |s| s.max_loop_size() <= l);
            c.eq(|| format!("max-loop({b},{k},{l})"), counting::count_max_loop_size(b, k, l), want);
        }
        for h in 1..=b + 1 {
            for l in 1..=b + k {
                let want = count_where(&stats, |s| s.max_partial_stack() <= h && s.max_loop_size() <= l);
                c.eq(|| format!("max-both({b},{k},{h},{l})"), counting::count_max_both(b, k, h, l), want);
            }
        }

        let mean = BigRational::new(stats.iter().map(|s| BigInt::from(s.partial_stack_count)).sum(), total);
        c.eq(|| format!("expected-stacks({b},{k})"), counting::expected_partial_stacks(b, k), mean);

        if k > 1 {
            joint(c, b, k, &stats);
        }
    }
    edge_counts(c, max_size.min(10));
}

/// Joint, marginal and helix-only counts over every candidate distribution,
/// including those the oracle never observes (which must count zero).
fn joint(c: &mut Checker, b: usize, k: usize, stats: &[StructureStats]) {
    let helices = |s: &StructureStats| SizeDistribution::from_sizes(&s.helix_sizes);
    let loops = |s: &StructureStats| SizeDistribution::from_sizes(&s.loop_sizes);
    let by_joint = tally(stats, |s| (helices(s), loops(s), s.partial_stack_count));
    let by_pair = tally(stats, |s| (helices(s), loops(s)));
    let by_helices = tally(stats, helices);
    let zero = BigInt::zero();

    let helix_dists = SizeDistribution::partitions(b + 1, 1);
    let loop_dists: Vec<SizeDistribution> =
        SizeDistribution::partitions(b + k, 1).into_iter().filter(|d| d.count() == b + 1).collect();
    for hd in &helix_dists {
        let want = by_helices.get(hd).unwrap_or(&zero).clone();
        c.eq(|| format!("helix-dist({b},{k},{hd})"), counting::count_by_helix_distribution(b, k, hd), want);
        for ld in &loop_dists {
            let key = (hd.clone(), ld.clone());
            let want = by_pair.get(&key).unwrap_or(&zero).clone();
            c.eq(|| format!("joint-marginal({b},{k},{hd},{ld})"), counting::count_joint_marginal(b, k, hd, ld), want);
            for l_e in 1..=hd.count() {
                let want = by_joint.get(&(hd.clone(), ld.clone(), l_e)).unwrap_or(&zero).clone();
                c.eq(|| format!("joint({b},{k},{hd},{ld},{l_e})"), counting::count_joint(b, k, hd, ld, l_e), want);
            }
        }
    }
    for sigma in 1..=3 {
        for s in 1..=b + 1 {
            let want = count_where(stats, |st| st.helix_count == s && st.min_helix_size() >= sigma);
            c.eq(|| format!("helices({b},{k},{s},{sigma})"), counting::count_by_num_helices(b, k, s, sigma), want);
        }
    }
}

/// Plane trees by even-level vertices and even-level internal vertices agree
/// with the partial-stack counts.
fn edge_counts(c: &mut Checker, max_edges: usize) {
    for edges in 1..=max_edges {
        let mut seen: BTreeMap<(usize, usize), BigInt> = BTreeMap::new();
        for t in enumerate_plane_trees(edges) {
            let st = t.stats();
            *seen.entry((st.even_vertices, st.even_internal)).or_insert_with(BigInt::zero) += 1;
        }
        for k in 1..=edges {
            let b = edges - k;
            for l in 1..=k.min(b + 1) {
                let want = seen.get(&(k, l)).cloned().unwrap_or_default();
                c.eq(|| format!("trees(edges={edges},k={k},l={l})"), counting::count_by_partial_stacks(b, k, l), want);
            }
        }
    }
}

/// Expected helix counts `(s, b, k) -> count` for sigma = 1 and sigma = 2.
pub const EXPECTED_TABLE_1: [[u64; 9]; 5] = [
    [1, 1, 1, 1, 1, 1, 1, 1, 1],
    [10, 18, 28, 15, 27, 42, 20, 36, 56],
    [9, 31, 76, 27, 93, 228, 54, 186, 456],
    [0, 0, 0, 7, 54, 219, 28, 216, 876],
    [0, 0, 0, 0, 0, 0, 2, 51, 375],
];

pub const EXPECTED_TABLE_2: [[u64; 9]; 2] = [[1, 1, 1, 1, 1, 1, 1, 1, 1], [0, 0, 0, 5, 9, 14, 10, 18, 28]];

/// Column order of the tables.
pub const TABLE_COLUMNS: [(usize, usize); 9] = [(2, 3), (2, 4), (2, 5), (3, 3), (3, 4), (3, 5), (4, 3), (4, 4), (4, 5)];

fn tables(c: &mut Checker) {
    let expected: [(usize, &[[u64; 9]]); 2] = [(1, &EXPECTED_TABLE_1), (2, &EXPECTED_TABLE_2)];
    for (id, rows) in expected {
        let Ok(table) = counting::helix_table(id) else {
            c.check(false, || format!("table {id} could not be computed"));
            continue;
        };
        c.check(table.len() == rows.len() * 9, || format!("table {id} has {} cells", table.len()));
        for (s_idx, row) in rows.iter().enumerate() {
            for (col, &want) in row.iter().enumerate() {
                let (b, k) = TABLE_COLUMNS[col];
                let s = s_idx + 1;
                let got = table.iter().find(|r| (r.s, r.b, r.k) == (s, b, k)).map(|r| r.count.clone());
                c.check(got == Some(BigInt::from(want)), || {
                    format!("table {id} cell (s={s},b={b},k={k}): got {got:?}, expected {want}")
                });
            }
        }
    }
}

fn bijections(c: &mut Checker, max_size: usize, max_edges: usize) {
    for (b, k) in shapes(max_size) {
        let mut sw_images = HashSet::new();
        let mut chen_images = HashSet::new();
        for s in enumerate_structures(b, k) {
            let db = s.to_dot_bracket();
            let t = sw_forward(&s);
            c.check(t.edge_count() == b + k, || format!("sw image of {db} has {} edges", t.edge_count()));
            c.check(sw_inverse(&t).as_ref() == Ok(&s), || format!("sw round trip fails on {db}"));
            c.check(sw_images.insert(t), || format!("sw image of {db} repeats"));

            let Ok(t) = chen_forward(&s) else {
                c.check(false, || format!("chen_forward fails on {db}"));
                continue;
            };
            c.check(chen_inverse(&t).as_ref() == Ok(&s), || format!("chen round trip fails on {db}"));
            let st = s.stats();
            let ts = t.stats();
            let mut stacks: Vec<usize> = ts.even_outdegrees.iter().copied().filter(|&d| d > 0).collect();
            let mut loops: Vec<usize> = ts.odd_outdegrees.iter().map(|d| d + 1).collect();
            let mut blocks = ts.eblock_sizes.clone();
            let sorted = |v: &[usize]| {
                let mut v = v.to_vec();
                v.sort_unstable();
                v
            };
            stacks.sort_unstable();
            loops.sort_unstable();
            blocks.sort_unstable();
            c.check(stacks == sorted(&st.partial_stack_lengths), || {
                format!("{db}: even outdegrees {stacks:?} vs partial stacks {:?}", st.partial_stack_lengths)
            });
            c.check(loops == sorted(&st.loop_sizes), || {
                format!("{db}: odd outdegrees + 1 {loops:?} vs loop sizes {:?}", st.loop_sizes)
            });
            c.check(blocks == sorted(&st.helix_sizes), || {
                format!("{db}: E-blocks {blocks:?} vs helices {:?}", st.helix_sizes)
            });
            c.check(chen_images.insert(t), || format!("chen image of {db} repeats"));
        }
    }
    for edges in 1..=max_edges {
        for t in enumerate_plane_trees(edges) {
            let sw_ok = sw_inverse(&t).map(|s| sw_forward(&s)).as_ref() == Ok(&t);
            c.check(sw_ok, || format!("sw fails to invert tree {t}"));
            let chen_ok = chen_inverse(&t).and_then(|s| chen_forward(&s)).as_ref() == Ok(&t);
            c.check(chen_ok, || format!("chen fails to invert tree {t}"));
        }
    }
}

fn forest(c: &mut Checker, max_edges: usize) {
    for edges in 1..=max_edges {
        for t in enumerate_labelled_trees(edges) {
            let p = ForestParams::of_shape(&t.shape());
            let f = match forest_encode(&t) {
                Ok(f) => f,
                Err(e) => {
                    c.check(false, || format!("h fails on {}: {e}", serde_json::to_string(&t).unwrap()));
                    continue;
                }
            };
            let show = || serde_json::to_string(&f).unwrap();
            c.check(f.has_expected_labels(&p), || format!("labels of {}", show()));
            c.check(f.satisfies_a(&p), || format!("(a*) fails for {}", show()));
            c.check(f.satisfies_b(&p), || format!("(b*) fails for {}", show()));
            c.check(f.satisfies_c(&p), || format!("(c*) fails for {}", show()));
            c.check(f.satisfies_d(&p), || format!("(d*) fails for {}", show()));
            let back = forest_decode(&f);
            c.check(back.as_ref() == Ok(&t), || format!("g(h(t)) != t for {}", show()));
            if let Ok(back) = back {
                c.check(forest_encode(&back).as_ref() == Ok(&f), || format!("h(g(f)) != f for {}", show()));
            }
        }
    }
}

fn series(c: &mut Checker, max_pq: usize) {
    // (system, closed form for [t1^p t2^q] w1)
    type Closed = Box<dyn Fn(usize, usize) -> Result<BigInt, counting::CountError>>;
    let mut systems: Vec<(TreeSystem, Closed)> =
        vec![(TreeSystem::EvenInternal, Box::new(|p, q| counting::count_by_partial_stacks(q - 1, p, p)))];
    for h in 1..=max_pq {
        systems.push((TreeSystem::MaxStack(h), Box::new(move |p, q| counting::count_max_partial_stack(q - 1, p, h))));
    }
    for l in 1..=2 * max_pq {
        systems.push((TreeSystem::MaxLoop(l), Box::new(move |p, q| counting::count_max_loop_size(q - 1, p, l))));
    }
    for (sys, closed) in &systems {
        let w1 = match sys.solve(max_pq, max_pq) {
            Ok((w1, _)) => w1,
            Err(e) => {
                c.check(false, || format!("{sys:?}: {e}"));
                continue;
            }
        };
        for p in 1..=max_pq {
            for q in 1..=max_pq {
                let Ok(want) = closed(p, q) else {
                    c.check(false, || format!("{sys:?} closed form fails at ({p},{q})"));
                    continue;
                };
                let fixed = w1.coeff(p, q).cloned().unwrap_or_default();
                c.check(fixed == want, || format!("{sys:?} fixed point at ({p},{q}): {fixed} vs {want}"));
                c.eq(|| format!("{sys:?} lagrange at ({p},{q})"), sys.lagrange_coeff(p, q), want);
            }
        }
    }
}

fn identities(c: &mut Checker) {
    for b in 0..=30 {
        for k in 1..=30 {
            c.eq(|| format!("narayana-sum({b},{k})"), counting::narayana_sum_identity_check(b, k), true);
        }
    }
    for b in 0..=20 {
        for k in 1..=20 {
            let n = counting::narayana(b, k).unwrap();
            let sum: Result<BigInt, _> = (1..=b + 1).map(|l| counting::count_by_partial_stacks(b, k, l)).sum();
            c.eq(|| format!("partial-stack sum({b},{k})"), sum, n.clone());
            if b <= 12 && k <= 12 {
                c.eq(|| format!("max-stack({b},{k},b+1)"), counting::count_max_partial_stack(b, k, b + 1), n.clone());
                c.eq(|| format!("max-loop({b},{k},b+k)"), counting::count_max_loop_size(b, k, b + k), n.clone());
                c.eq(|| format!("max-both({b},{k},b+1,b+k)"), counting::count_max_both(b, k, b + 1, b + k), n.clone());
            }
            if b <= 8 && k <= 8 {
                for h in 1..=b + 1 {
                    let want = counting::count_max_partial_stack(b, k, h).unwrap();
                    c.eq(|| format!("max-both({b},{k},{h},b+k)"), counting::count_max_both(b, k, h, b + k), want);
                    if h <= b {
                        for l in 1..=b + k {
                            let lagrange = TreeSystem::Both { h, l }.lagrange_coeff(k, b + 1);
                            c.eq(
                                || format!("max-both({b},{k},{h},{l}) by lagrange"),
                                lagrange.map_err(|e| e.to_string()),
                                counting::count_max_both(b, k, h, l).unwrap(),
                            );
                        }
                    }
                }
                for l in 1..=b + k {
                    let want = counting::count_max_loop_size(b, k, l).unwrap();
                    c.eq(|| format!("max-both({b},{k},b+1,{l})"), counting::count_max_both(b, k, b + 1, l), want);
                }
            }
            if k > 1 && b <= 10 && k <= 10 {
                let mut by_s: BTreeMap<usize, BigInt> = BTreeMap::new();
                for hd in SizeDistribution::partitions(b + 1, 1) {
                    *by_s.entry(hd.count()).or_default() += counting::count_by_helix_distribution(b, k, &hd).unwrap();
                }
                for (s, sum) in by_s {
                    c.eq(
                        || format!("helices({b},{k},{s},1) by distribution"),
                        counting::count_by_num_helices(b, k, s, 1),
                        sum,
                    );
                }
            }
        }
    }
}

fn probabilities(c: &mut Checker, max_b: usize) {
    for b in 0..=max_b {
        for sigma in 1..=3 {
            for s in 1..=b + 1 {
                let dists: Vec<SizeDistribution> =
                    SizeDistribution::partitions(b + 1, sigma).into_iter().filter(|d| d.count() == s).collect();
                if dists.is_empty() {
                    continue;
                }
                let total: Result<BigRational, _> =
                    dists.iter().map(|d| counting::helix_distribution_probability(b, 2, s, sigma, d)).sum();
                c.eq(|| format!("probability sum(b={b},s={s},sigma={sigma})"), total, BigRational::one());
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn shapes_are_ordered_by_length() {
        assert_eq!(shapes(3), vec![(0, 1), (0, 2), (0, 3), (1, 1)]);
    }

    #[test]
    fn suite_names_round_trip() {
        for s in Suite::ALL {
            assert_eq!(s.name().parse::<Suite>(), Ok(s));
        }
        assert!("nope".parse::<Suite>().is_err());
    }

    #[test]
    fn guard_is_enforced() {
        assert!(run(&[Suite::Tables], 17).is_err());
    }

    #[test]
    fn small_sweeps_pass() {
        for suite in [Suite::Formulas, Suite::Bijections, Suite::Forest, Suite::Tables] {
            let r = run_suite(suite, 7);
            assert!(r.ok(), "{r}");
            assert!(r.passed > 0);
        }
    }

    #[test]
    fn failures_are_reported_once() {
        let mut c = Checker::new(Suite::Tables);
        c.check(true, || unreachable!());
        c.check(false, || "first".into());
        c.check(false, || "second".into());
        assert_eq!((c.report.passed, c.report.failed), (1, 2));
        assert_eq!(c.report.counterexample.as_deref(), Some("first"));
    }
}
