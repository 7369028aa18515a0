//! A brute-force oracle that shares no code with the library: structures are
//! generated by the first-position recursion and every statistic is read off
//! the dot-bracket string directly.

#![allow(dead_code)]

use std::collections::BTreeMap;

/// All dot-bracket strings of length `n` with arc span at least 2.
pub fn all_structures(n: usize) -> Vec<String> {
    let mut memo: BTreeMap<usize, Vec<String>> = BTreeMap::new();
    for len in 0..=n {
        let mut out = Vec::new();
        if len == 0 {
            out.push(String::new());
        } else {
            for rest in &memo[&(len - 1)] {
                out.push(format!(".{rest}"));
            }
            // position 1 pairs with position j; inside has j-2 >= 1 positions
            for j in 3..=len {
                for inside in &memo[&(j - 2)] {
                    for after in &memo[&(len - j)] {
                        out.push(format!("({inside}){after}"));
                    }
                }
            }
        }
        memo.insert(len, out);
    }
    memo.remove(&n).unwrap()
}

/// Structures with `b` real arcs and `k` isolated bases.
pub fn structures(b: usize, k: usize) -> Vec<String> {
    all_structures(2 * b + k).into_iter().filter(|s| s.bytes().filter(|&c| c == b'.').count() == k).collect()
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Stats {
    pub stacks: Vec<usize>,
    pub helices: Vec<usize>,
    pub loops: Vec<usize>,
}

impl Stats {
    pub fn l_e(&self) -> usize {
        self.stacks.len()
    }
    pub fn s(&self) -> usize {
        self.helices.len()
    }
    pub fn max_stack(&self) -> usize {
        *self.stacks.iter().max().unwrap()
    }
    pub fn max_loop(&self) -> usize {
        *self.loops.iter().max().unwrap()
    }
    pub fn min_helix(&self) -> usize {
        *self.helices.iter().min().unwrap()
    }
}

/// Partner table over positions `0..=n+1`, auxiliary arc included.
fn partners(db: &str) -> Vec<Option<usize>> {
    let n = db.len();
    let mut p = vec![None; n + 2];
    p[0] = Some(n + 1);
    p[n + 1] = Some(0);
    let mut stack = Vec::new();
    for (idx, c) in db.bytes().enumerate() {
        let pos = idx + 1;
        match c {
            b'(' => stack.push(pos),
            b')' => {
                let i = stack.pop().unwrap();
                p[i] = Some(pos);
                p[pos] = Some(i);
            }
            _ => {}
        }
    }
    p
}

pub fn stats(db: &str) -> Stats {
    let p = partners(db);
    let n = db.len();
    let is_left = |i: usize| matches!(p[i], Some(j) if j > i);

    let mut stacks = Vec::new();
    let mut run = 0;
    for i in 0..=n + 1 {
        if i <= n && is_left(i) {
            run += 1;
        } else if run > 0 {
            stacks.push(run);
            run = 0;
        }
    }

    let mut helices = Vec::new();
    for i in 0..=n {
        if !is_left(i) {
            continue;
        }
        let j = p[i].unwrap();
        let continues = i > 0 && p[i - 1] == Some(j + 1);
        if continues {
            continue;
        }
        let mut size = 1;
        let (mut a, mut b) = (i, j);
        while a + 1 < b && p[a + 1] == Some(b - 1) {
            size += 1;
            a += 1;
            b -= 1;
        }
        helices.push(size);
    }

    let mut loops = Vec::new();
    for i in 0..=n {
        if !is_left(i) {
            continue;
        }
        let j = p[i].unwrap();
        let mut size = 0;
        let mut x = i + 1;
        while x < j {
            size += 1;
            x = match p[x] {
                Some(y) if y > x => y + 1,
                _ => x + 1,
            };
        }
        loops.push(size);
    }
    Stats { stacks, helices, loops }
}

/// Multiset as `size -> multiplicity`.
pub fn multiset(v: &[usize]) -> BTreeMap<usize, usize> {
    let mut m = BTreeMap::new();
    for &x in v {
        *m.entry(x).or_insert(0) += 1;
    }
    m
}

/// `"1:2,3:1"` form of a multiset.
pub fn dist_string(m: &BTreeMap<usize, usize>) -> String {
    m.iter().map(|(s, c)| format!("{s}:{c}")).collect::<Vec<_>>().join(",")
}

/// All partitions of `n` into parts of size at least `min`, as multisets.
pub fn partitions(n: usize, min: usize) -> Vec<BTreeMap<usize, usize>> {
    fn go(rest: usize, max: usize, min: usize, cur: &mut Vec<usize>, out: &mut Vec<BTreeMap<usize, usize>>) {
        if rest == 0 {
            out.push(multiset(cur));
            return;
        }
        for part in min..=max.min(rest) {
            cur.push(part);
            go(rest - part, part, min, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(n, n, min.max(1), &mut Vec::new(), &mut out);
    out
}

/// A plane tree as nested child lists, parsed from the parentheses form.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Node(pub Vec<Node>);

pub fn parse_tree(text: &str) -> Node {
    let mut stack = vec![Vec::new()];
    for c in text.chars() {
        match c {
            '(' => stack.push(Vec::new()),
            ')' => {
                let children = stack.pop().unwrap();
                stack.last_mut().unwrap().push(Node(children));
            }
            _ => panic!("bad tree text"),
        }
    }
    Node(stack.pop().unwrap())
}

/// `(even outdegrees, odd outdegrees, E-block sizes)`, all sorted.
pub fn tree_levels(root: &Node) -> (Vec<usize>, Vec<usize>, Vec<usize>) {
    fn go(t: &Node, depth: usize, even: &mut Vec<usize>, odd: &mut Vec<usize>, blocks: &mut Vec<usize>) {
        if depth.is_multiple_of(2) {
            even.push(t.0.len());
            let mut run = 0;
            for c in &t.0 {
                run += 1;
                if !c.0.is_empty() {
                    blocks.push(run);
                    run = 0;
                }
            }
            if run > 0 {
                blocks.push(run);
            }
        } else {
            odd.push(t.0.len());
        }
        for c in &t.0 {
            go(c, depth + 1, even, odd, blocks);
        }
    }
    let (mut even, mut odd, mut blocks) = (Vec::new(), Vec::new(), Vec::new());
    go(root, 0, &mut even, &mut odd, &mut blocks);
    even.sort_unstable();
    odd.sort_unstable();
    blocks.sort_unstable();
    (even, odd, blocks)
}

/// Exact binomial over `i128`, zero outside `0 <= k <= n`.
pub fn binom(n: i64, k: i64) -> i128 {
    if n < 0 || k < 0 || k > n {
        return 0;
    }
    let mut acc: i128 = 1;
    for i in 0..k.min(n - k) {
        acc = acc * (n - i) as i128 / (i + 1) as i128;
    }
    acc
}
