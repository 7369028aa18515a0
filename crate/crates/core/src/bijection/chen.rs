//! The bijection that places isolated bases on even levels and arcs on odd
//! levels.
//!
//! Forward: the first isolated base is the root, with every arc covering it
//! as children (outermost first). Each later base becomes the new leftmost
//! child of the innermost already-placed arc covering it, and takes as its
//! own children the not-yet-placed arcs covering it.
//!
//! Inverse: visiting even-level vertices by right-to-left preorder recovers
//! the bases left to right; the children of each base are the arcs opened
//! just before it, and its parent is the innermost arc still open.

use super::BijectionError;
use crate::structure::SecondaryStructure;
use crate::tree::PlaneTree;

/// Mutable arena used while the tree is grown by prepending children.
struct Arena {
    children: Vec<Vec<usize>>,
}

impl Arena {
    fn add(&mut self) -> usize {
        self.children.push(Vec::new());
        self.children.len() - 1
    }

    fn to_tree(&self, node: usize) -> PlaneTree {
        PlaneTree::new(self.children[node].iter().map(|&c| self.to_tree(c)).collect())
    }
}

pub fn chen_forward(s: &SecondaryStructure) -> Result<PlaneTree, BijectionError> {
    if s.num_isolated() == 0 {
        return Err(BijectionError::NoIsolatedBase);
    }
    let partner = s.partners();
    let mut arena = Arena { children: Vec::new() };
    // Open arcs, outermost first; `Some(node)` once the arc is in the tree.
    let mut open: Vec<Option<usize>> = Vec::new();
    let mut root = None;
    for (pos, p) in partner.iter().enumerate() {
        match *p {
            Some(q) if q > pos => open.push(None),
            Some(_) => {
                open.pop();
            }
            None => {
                let base = arena.add();
                match root {
                    None => root = Some(base),
                    Some(_) => {
                        let parent = open
                            .iter()
                            .rev()
                            .find_map(|slot| *slot)
                            .expect("the auxiliary arc is placed with the first base");
                        arena.children[parent].insert(0, base);
                    }
                }
                for slot in open.iter_mut().filter(|slot| slot.is_none()) {
                    let arc = arena.add();
                    arena.children[base].push(arc);
                    *slot = Some(arc);
                }
            }
        }
    }
    Ok(arena.to_tree(root.expect("at least one isolated base")))
}

pub fn chen_inverse(t: &PlaneTree) -> Result<SecondaryStructure, BijectionError> {
    if t.is_leaf() {
        return Err(BijectionError::SingleNode);
    }

    // Flatten with parent links; ids are assigned in left-to-right preorder.
    let mut parent: Vec<Option<usize>> = Vec::new();
    let mut children: Vec<Vec<usize>> = Vec::new();
    flatten(t, None, &mut parent, &mut children);

    let mut bases = Vec::new();
    collect_even_right_to_left(0, 0, &children, &mut bases);

    let mut out = String::new();
    let mut open: Vec<usize> = Vec::new();
    for (j, &base) in bases.iter().enumerate() {
        if j > 0 {
            let arc = parent[base].expect("only the root has no parent");
            loop {
                match open.last() {
                    Some(&top) if top == arc => break,
                    Some(_) => {
                        open.pop();
                        out.push(')');
                    }
                    None => {
                        return Err(BijectionError::Malformed(format!(
                            "base {} hangs below an arc that is already closed",
                            j + 1
                        )))
                    }
                }
            }
        }
        for &arc in &children[base] {
            open.push(arc);
            out.push('(');
        }
        out.push('.');
    }
    out.extend(std::iter::repeat_n(')', open.len()));

    // Strip the auxiliary arc, which is the root's first child.
    let inner = out
        .strip_prefix('(')
        .and_then(|s| s.strip_suffix(')'))
        .ok_or_else(|| BijectionError::Malformed("missing auxiliary arc".into()))?;
    if inner.is_empty() {
        return Err(BijectionError::Malformed("empty structure".into()));
    }
    Ok(inner.parse()?)
}

fn flatten(t: &PlaneTree, up: Option<usize>, parent: &mut Vec<Option<usize>>, children: &mut Vec<Vec<usize>>) -> usize {
    let id = parent.len();
    parent.push(up);
    children.push(Vec::new());
    for child in t.children() {
        let c = flatten(child, Some(id), parent, children);
        children[id].push(c);
    }
    id
}

fn collect_even_right_to_left(node: usize, level: usize, children: &[Vec<usize>], out: &mut Vec<usize>) {
    if level.is_multiple_of(2) {
        out.push(node);
    }
    for &c in children[node].iter().rev() {
        collect_even_right_to_left(c, level + 1, children, out);
    }
}
