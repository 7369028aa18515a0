//! Plane (rooted, ordered) trees and their level statistics.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::lex::LexWords;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum TreeError {
    #[error("illegal character {ch:?} at position {pos}")]
    IllegalChar { pos: usize, ch: char },
    #[error("unbalanced parentheses at position {pos}")]
    Unbalanced { pos: usize },
}

/// A plane tree: a node with an ordered list of child subtrees.
///
/// The text form is the balanced-parentheses encoding of the root's children,
/// so a single node is `""` and a root with two leaf children is `"()()"`.
/// The JSON form is nested arrays.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct PlaneTree {
    children: Vec<PlaneTree>,
}

impl PlaneTree {
    pub fn leaf() -> Self {
        PlaneTree::default()
    }

    pub fn new(children: Vec<PlaneTree>) -> Self {
        PlaneTree { children }
    }

    pub fn children(&self) -> &[PlaneTree] {
        &self.children
    }

    pub fn is_leaf(&self) -> bool {
        self.children.is_empty()
    }

    pub fn node_count(&self) -> usize {
        1 + self.children.iter().map(PlaneTree::node_count).sum::<usize>()
    }

    pub fn edge_count(&self) -> usize {
        self.node_count() - 1
    }

    pub fn stats(&self) -> TreeStats {
        let mut st = TreeStats::default();
        self.collect_stats(0, &mut st);
        st.edges = st.even_vertices + st.odd_vertices - 1;
        st
    }

    fn collect_stats(&self, level: usize, st: &mut TreeStats) {
        let even = level.is_multiple_of(2);
        if even {
            st.even_vertices += 1;
            st.even_outdegrees.push(self.children.len());
        } else {
            st.odd_vertices += 1;
            st.odd_outdegrees.push(self.children.len());
        }
        if !self.is_leaf() {
            if even {
                st.even_internal += 1;
                if self.children.iter().all(PlaneTree::is_leaf) {
                    st.young += 1;
                }
                st.eblock_sizes.extend(eblocks(&self.children).into_iter().map(|r| r.len()));
            } else {
                st.odd_internal += 1;
            }
        }
        for child in &self.children {
            child.collect_stats(level + 1, st);
        }
    }

    fn write_parens(&self, out: &mut String) {
        for child in &self.children {
            out.push('(');
            child.write_parens(out);
            out.push(')');
        }
    }
}

/// Splits a child list into E-blocks: runs of leaves, each closed by the next
/// internal child if there is one.
pub(crate) fn eblocks<T>(children: &[T]) -> Vec<std::ops::Range<usize>>
where
    T: HasLeafness,
{
    let mut blocks = Vec::new();
    let mut start = 0;
    for (idx, child) in children.iter().enumerate() {
        if !child.is_leaf_node() {
            blocks.push(start..idx + 1);
            start = idx + 1;
        }
    }
    if start < children.len() {
        blocks.push(start..children.len());
    }
    blocks
}

pub(crate) trait HasLeafness {
    fn is_leaf_node(&self) -> bool;
}

impl HasLeafness for PlaneTree {
    fn is_leaf_node(&self) -> bool {
        self.is_leaf()
    }
}

impl fmt::Display for PlaneTree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut out = String::new();
        self.write_parens(&mut out);
        f.write_str(&out)
    }
}

impl FromStr for PlaneTree {
    type Err = TreeError;

    /// Parses the balanced-parentheses encoding; whitespace is not allowed.
    fn from_str(text: &str) -> Result<Self, Self::Err> {
        let mut stack: Vec<Vec<PlaneTree>> = vec![Vec::new()];
        for (idx, ch) in text.chars().enumerate() {
            match ch {
                '(' => stack.push(Vec::new()),
                ')' => {
                    if stack.len() < 2 {
                        return Err(TreeError::Unbalanced { pos: idx + 1 });
                    }
                    let children = stack.pop().unwrap();
                    stack.last_mut().unwrap().push(PlaneTree { children });
                }
                _ => return Err(TreeError::IllegalChar { pos: idx + 1, ch }),
            }
        }
        if stack.len() != 1 {
            return Err(TreeError::Unbalanced { pos: text.chars().count() });
        }
        Ok(PlaneTree { children: stack.pop().unwrap() })
    }
}

/// Level-based statistics of a plane tree. The root is on level 0 (even).
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct TreeStats {
    pub edges: usize,
    pub even_vertices: usize,
    pub odd_vertices: usize,
    pub even_internal: usize,
    pub odd_internal: usize,
    /// Even-level internal vertices whose children are all leaves.
    pub young: usize,
    pub eblock_sizes: Vec<usize>,
    /// Outdegree of every even-level vertex, leaves included, in preorder.
    pub even_outdegrees: Vec<usize>,
    /// Outdegree of every odd-level vertex, leaves included, in preorder.
    pub odd_outdegrees: Vec<usize>,
}

/// Lazily enumerates all plane trees with `edges` edges in lexicographic
/// order of their encoding, `'(' < ')'`.
pub fn enumerate_plane_trees(edges: usize) -> impl Iterator<Item = PlaneTree> {
    LexWords::new(b"()", 2 * edges, move |prefix| {
        let opens = prefix.iter().filter(|&&c| c == b'(').count();
        let closes = prefix.len() - opens;
        opens <= edges && closes <= opens
    })
    .map(|w| String::from_utf8(w).unwrap().parse().unwrap())
}
