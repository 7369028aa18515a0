//! Labelled set-alternating trees and their decomposition into forests of
//! small (two-level) trees.
//!
//! Even-level vertices carry E-labels `1..=k`, odd-level vertices O-labels
//! `1..=b+1`; every E-label orders before every O-label. The encoding peels
//! blocks of leaves off the tree, always from the smallest eligible vertex,
//! and leaves a starred placeholder label behind each time. Starred E-labels
//! run `k+1..=k+s-1` and starred O-labels `b+2..=b+1+l_o`.

use std::collections::VecDeque;
use std::fmt;

use itertools::Itertools;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::BijectionError;
use crate::tree::{eblocks, enumerate_plane_trees, HasLeafness, PlaneTree};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum LabelClass {
    E,
    O,
}

impl LabelClass {
    fn other(self) -> Self {
        match self {
            LabelClass::E => LabelClass::O,
            LabelClass::O => LabelClass::E,
        }
    }
}

/// A vertex label. The derived order puts all E-labels before all O-labels
/// and is numeric within a class; starred labels have values above the
/// unstarred range of their class.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Label {
    pub class: LabelClass,
    pub value: u32,
    pub starred: bool,
}

impl Label {
    pub fn e(value: u32) -> Self {
        Label { class: LabelClass::E, value, starred: false }
    }

    pub fn o(value: u32) -> Self {
        Label { class: LabelClass::O, value, starred: false }
    }

    pub fn star(self) -> Self {
        Label { starred: true, ..self }
    }

    /// The label without its star, e.g. `E3` or `O2`.
    pub fn name(&self) -> String {
        let prefix = match self.class {
            LabelClass::E => 'E',
            LabelClass::O => 'O',
        };
        format!("{prefix}{}", self.value)
    }

    fn from_name(name: &str, starred: bool) -> Result<Self, String> {
        let (class, digits) = match name.split_at_checked(1) {
            Some(("E", rest)) => (LabelClass::E, rest),
            Some(("O", rest)) => (LabelClass::O, rest),
            _ => return Err(format!("label {name:?} must start with 'E' or 'O'")),
        };
        let value = digits.parse().map_err(|_| format!("label {name:?} has no numeric part"))?;
        Ok(Label { class, value, starred })
    }
}

impl fmt::Display for Label {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}", self.name(), if self.starred { "*" } else { "" })
    }
}

/// A labelled plane tree. JSON form: `{"label": "E1", "starred": false,
/// "children": [...]}`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct LabelledTree {
    pub label: Label,
    pub children: Vec<LabelledTree>,
}

impl HasLeafness for LabelledTree {
    fn is_leaf_node(&self) -> bool {
        self.children.is_empty()
    }
}

impl LabelledTree {
    pub fn leaf(label: Label) -> Self {
        LabelledTree { label, children: Vec::new() }
    }

    pub fn shape(&self) -> PlaneTree {
        PlaneTree::new(self.children.iter().map(LabelledTree::shape).collect())
    }

    /// Labels the even levels of `shape` with `evens` and the odd levels with
    /// `odds`, both consumed in preorder.
    pub fn from_shape(shape: &PlaneTree, evens: &[u32], odds: &[u32]) -> Self {
        fn go(
            t: &PlaneTree,
            level: usize,
            evens: &mut std::slice::Iter<'_, u32>,
            odds: &mut std::slice::Iter<'_, u32>,
        ) -> LabelledTree {
            let label = if level.is_multiple_of(2) {
                Label::e(*evens.next().expect("enough E-labels"))
            } else {
                Label::o(*odds.next().expect("enough O-labels"))
            };
            let children = t.children().iter().map(|c| go(c, level + 1, evens, odds)).collect();
            LabelledTree { label, children }
        }
        go(shape, 0, &mut evens.iter(), &mut odds.iter())
    }

    pub fn labels(&self) -> Vec<Label> {
        let mut out = vec![self.label];
        for c in &self.children {
            out.extend(c.labels());
        }
        out
    }

    fn has_starred(&self) -> bool {
        self.label.starred || self.children.iter().any(LabelledTree::has_starred)
    }

    /// Replaces the leaf labelled `target` by `subtree`; false if absent.
    fn graft(&mut self, target: Label, subtree: &LabelledTree) -> bool {
        for child in &mut self.children {
            if child.label == target && child.children.is_empty() {
                *child = subtree.clone();
                return true;
            }
            if child.graft(target, subtree) {
                return true;
            }
        }
        false
    }

    /// Checks that this is a set-alternating E-tree with at least one edge
    /// whose labels are exactly `E1..Ek` and `O1..O(b+1)`.
    pub fn validate(&self) -> Result<ForestParams, BijectionError> {
        let bad = |msg: String| Err(BijectionError::InvalidLabels(msg));
        if self.children.is_empty() {
            return bad("tree has no edges".into());
        }
        fn alternates(t: &LabelledTree, class: LabelClass) -> bool {
            t.label.class == class && !t.label.starred && t.children.iter().all(|c| alternates(c, class.other()))
        }
        if !alternates(self, LabelClass::E) {
            return bad("levels must alternate E/O from an E root, with no starred labels".into());
        }
        let params = ForestParams::of_shape(&self.shape());
        let labels = self.labels();
        for (class, count) in [(LabelClass::E, params.k), (LabelClass::O, params.b + 1)] {
            let mut values: Vec<u32> = labels.iter().filter(|l| l.class == class).map(|l| l.value).collect();
            values.sort_unstable();
            if values != (1..=count as u32).collect::<Vec<_>>() {
                return bad(format!("{class:?}-labels must be exactly 1..={count}"));
            }
        }
        Ok(params)
    }
}

#[derive(Serialize, Deserialize)]
struct NodeRepr {
    label: String,
    #[serde(default)]
    starred: bool,
    #[serde(default)]
    children: Vec<NodeRepr>,
}

impl From<&LabelledTree> for NodeRepr {
    fn from(t: &LabelledTree) -> Self {
        NodeRepr {
            label: t.label.name(),
            starred: t.label.starred,
            children: t.children.iter().map(NodeRepr::from).collect(),
        }
    }
}

impl TryFrom<NodeRepr> for LabelledTree {
    type Error = String;

    fn try_from(node: NodeRepr) -> Result<Self, String> {
        Ok(LabelledTree {
            label: Label::from_name(&node.label, node.starred)?,
            children: node.children.into_iter().map(LabelledTree::try_from).collect::<Result<_, _>>()?,
        })
    }
}

impl Serialize for LabelledTree {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        NodeRepr::from(self).serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for LabelledTree {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let node = NodeRepr::deserialize(deserializer)?;
        LabelledTree::try_from(node).map_err(serde::de::Error::custom)
    }
}

/// A root with an ordered list of leaves.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SmallTree {
    pub root: Label,
    pub leaves: Vec<Label>,
}

impl SmallTree {
    pub fn is_e_tree(&self) -> bool {
        self.root.class == LabelClass::E
    }

    fn starred_leaves(&self) -> usize {
        self.leaves.iter().filter(|l| l.starred).count()
    }

    fn has_starred(&self) -> bool {
        self.root.starred || self.starred_leaves() > 0
    }

    fn as_tree(&self) -> LabelledTree {
        LabelledTree { label: self.root, children: self.leaves.iter().copied().map(LabelledTree::leaf).collect() }
    }
}

impl Serialize for SmallTree {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        self.as_tree().serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for SmallTree {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let t = LabelledTree::deserialize(deserializer)?;
        if t.children.iter().any(|c| !c.children.is_empty()) {
            return Err(serde::de::Error::custom("a small tree has only two levels"));
        }
        Ok(SmallTree { root: t.label, leaves: t.children.into_iter().map(|c| c.label).collect() })
    }
}

/// An unordered collection of small trees, kept sorted by root label.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(from = "Vec<SmallTree>", into = "Vec<SmallTree>")]
pub struct SmallForest {
    trees: Vec<SmallTree>,
}

impl From<Vec<SmallTree>> for SmallForest {
    fn from(mut trees: Vec<SmallTree>) -> Self {
        trees.sort_by_key(|t| t.root);
        SmallForest { trees }
    }
}

impl From<SmallForest> for Vec<SmallTree> {
    fn from(f: SmallForest) -> Self {
        f.trees
    }
}

/// Shape parameters of a tree that the forest must reflect.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ForestParams {
    /// Even-level vertices.
    pub k: usize,
    /// One less than the number of odd-level vertices.
    pub b: usize,
    /// E-blocks.
    pub s: usize,
    /// Even-level internal vertices.
    pub l_e: usize,
    /// Young even-level internal vertices.
    pub y: usize,
    /// Odd-level internal vertices.
    pub l_o: usize,
}

impl ForestParams {
    pub fn of_shape(shape: &PlaneTree) -> Self {
        let st = shape.stats();
        ForestParams {
            k: st.even_vertices,
            b: st.odd_vertices.saturating_sub(1),
            s: st.eblock_sizes.len(),
            l_e: st.even_internal,
            y: st.young,
            l_o: st.odd_internal,
        }
    }
}

impl SmallForest {
    pub fn trees(&self) -> &[SmallTree] {
        &self.trees
    }

    fn e_trees(&self) -> impl Iterator<Item = &SmallTree> {
        self.trees.iter().filter(|t| t.is_e_tree())
    }

    fn o_trees(&self) -> impl Iterator<Item = &SmallTree> {
        self.trees.iter().filter(|t| !t.is_e_tree())
    }

    fn is_o_tree_leaf(&self, label: Label) -> bool {
        self.o_trees().any(|t| t.leaves.contains(&label))
    }

    fn starred_e(&self, p: &ForestParams, m: usize) -> Label {
        Label::e((p.k + m) as u32).star()
    }

    /// Labels are exactly `E1..Ek`, `(k+1)*..(k+s-1)*`, `O1..O(b+1)` and
    /// `(b+2)*..(b+1+l_o)*`, each used once.
    pub fn has_expected_labels(&self, p: &ForestParams) -> bool {
        let mut seen: Vec<Label> =
            self.trees.iter().flat_map(|t| std::iter::once(t.root).chain(t.leaves.iter().copied())).collect();
        seen.sort_unstable();
        let mut expected: Vec<Label> = (1..=p.k).map(|v| Label::e(v as u32)).collect();
        expected.extend((1..p.s).map(|m| self.starred_e(p, m)));
        expected.extend((1..=p.b + 1).map(|v| Label::o(v as u32)));
        expected.extend((1..=p.l_o).map(|m| Label::o((p.b + 1 + m) as u32).star()));
        expected.sort_unstable();
        seen == expected
    }

    /// `s` small E-trees, `l_e` of them with unstarred roots.
    pub fn satisfies_a(&self, p: &ForestParams) -> bool {
        let total = self.e_trees().count();
        let unstarred = self.e_trees().filter(|t| !t.root.starred).count();
        total == p.s && unstarred == p.l_e && total - unstarred == p.s - p.l_e
    }

    /// `l_o` small O-trees with unstarred roots, and `l_o` small E-trees whose
    /// only starred leaf is the rightmost one.
    pub fn satisfies_b(&self, p: &ForestParams) -> bool {
        let o_ok = self.o_trees().count() == p.l_o && self.o_trees().all(|t| !t.root.starred);
        let with_star: Vec<&SmallTree> = self.e_trees().filter(|t| t.starred_leaves() > 0).collect();
        o_ok && with_star.len() == p.l_o
            && with_star.iter().all(|t| t.starred_leaves() == 1 && t.leaves.last().is_some_and(|l| l.starred))
    }

    /// `y` small E-trees carry no starred label, and the `y` smallest starred
    /// E-labels are leaves of small O-trees. When the whole tree is a single
    /// young root there are no starred E-labels, so only `min(y, s-1)` of them
    /// are required.
    pub fn satisfies_c(&self, p: &ForestParams) -> bool {
        self.e_trees().filter(|t| !t.has_starred()).count() == p.y
            && (1..=p.y.min(p.s.saturating_sub(1))).all(|m| self.is_o_tree_leaf(self.starred_e(p, m)))
    }

    /// `s - y - l_o` small E-trees have a starred root and unstarred leaves;
    /// when such a root is `(k+m)*` with `m != s-1`, `(k+m+1)*` is a leaf of a
    /// small O-tree.
    pub fn satisfies_d(&self, p: &ForestParams) -> bool {
        let chosen: Vec<&SmallTree> = self.e_trees().filter(|t| t.root.starred && t.starred_leaves() == 0).collect();
        chosen.len() + p.y + p.l_o == p.s
            && chosen.iter().all(|t| {
                let m = t.root.value as usize - p.k;
                m == p.s - 1 || self.is_o_tree_leaf(self.starred_e(p, m + 1))
            })
    }
}

struct Node {
    label: Label,
    /// Original label, used for every minimality comparison.
    key: Label,
    parent: Option<usize>,
    /// Remaining blocks of children, leftmost first, as annotated on the
    /// initial tree.
    blocks: VecDeque<Vec<usize>>,
}

fn load(t: &LabelledTree, parent: Option<usize>, nodes: &mut Vec<Node>) -> usize {
    let id = nodes.len();
    nodes.push(Node { label: t.label, key: t.label, parent, blocks: VecDeque::new() });
    let ids: Vec<usize> = t.children.iter().map(|c| load(c, Some(id), nodes)).collect();
    let blocks: VecDeque<Vec<usize>> = match t.label.class {
        LabelClass::E => eblocks(&t.children).into_iter().map(|r| ids[r].to_vec()).collect(),
        LabelClass::O if ids.is_empty() => VecDeque::new(),
        LabelClass::O => VecDeque::from([ids]),
    };
    nodes[id].blocks = blocks;
    id
}

/// Decomposes a labelled set-alternating E-tree into a forest of small trees.
pub fn forest_encode(t: &LabelledTree) -> Result<SmallForest, BijectionError> {
    let params = t.validate()?;
    let mut nodes = Vec::new();
    let root = load(t, None, &mut nodes);
    let mut next_e = params.k as u32 + 1;
    let mut next_o = params.b as u32 + 2;
    let mut forest = Vec::new();

    let is_leaf = |nodes: &[Node], id: usize| nodes[id].blocks.is_empty();
    let small_tree = |nodes: &[Node], root: Label, block: &[usize]| SmallTree {
        root,
        leaves: block.iter().map(|&c| nodes[c].label).collect(),
    };

    loop {
        let root_blocks = &nodes[root].blocks;
        if root_blocks.len() == 1 && root_blocks[0].iter().all(|&c| is_leaf(&nodes, c)) {
            forest.push(small_tree(&nodes, nodes[root].label, &root_blocks[0]));
            break;
        }
        let v = (0..nodes.len())
            .filter(|&id| nodes[id].blocks.front().is_some_and(|block| block.iter().all(|&c| is_leaf(&nodes, c))))
            .min_by_key(|&id| nodes[id].key)
            .expect("some internal vertex has a leftmost block of leaves");
        let block = nodes[v].blocks.pop_front().unwrap();
        forest.push(small_tree(&nodes, nodes[v].label, &block));

        match nodes[v].key.class {
            LabelClass::E => {
                nodes[v].label = Label::e(next_e).star();
                next_e += 1;
            }
            LabelClass::O => {
                let parent = nodes[v].parent.expect("the root is an E-vertex");
                let placeholder = nodes.len();
                let label = Label::o(next_o).star();
                next_o += 1;
                nodes.push(Node { label, key: label, parent: Some(parent), blocks: VecDeque::new() });
                for block in nodes[parent].blocks.iter_mut() {
                    if let Some(slot) = block.iter_mut().find(|c| **c == v) {
                        *slot = placeholder;
                    }
                }
            }
        }
    }
    Ok(SmallForest::from(forest))
}

/// Reassembles the labelled tree from a forest produced by [`forest_encode`].
pub fn forest_decode(f: &SmallForest) -> Result<LabelledTree, BijectionError> {
    let bad = |msg: &str| BijectionError::InvalidForest(msg.to_string());
    if f.trees.is_empty() {
        return Err(bad("empty forest"));
    }
    if f.trees.iter().any(|t| t.leaves.iter().any(|l| l.class == t.root.class)) {
        return Err(bad("leaves must belong to the other label class than their root"));
    }
    let mut trees: Vec<LabelledTree> = f.trees.iter().map(SmallTree::as_tree).collect();
    while trees.len() > 1 {
        let found_idx = trees
            .iter()
            .enumerate()
            .filter(|(_, t)| !t.has_starred())
            .min_by_key(|(_, t)| t.label)
            .map(|(i, _)| i)
            .ok_or_else(|| bad("every remaining tree carries a starred label"))?;
        let found = trees.remove(found_idx);
        let target = trees
            .iter()
            .flat_map(LabelledTree::labels)
            .filter(|l| l.starred && l.class == found.label.class)
            .min()
            .ok_or_else(|| bad("no starred label left to merge with"))?;
        if let Some(j) = trees.iter().position(|t| t.label == target) {
            let other = trees.remove(j);
            let mut children = found.children;
            children.extend(other.children);
            trees.push(LabelledTree { label: found.label, children });
        } else if !trees.iter_mut().any(|t| t.graft(target, &found)) {
            return Err(bad("starred label is neither a root nor a leaf"));
        }
    }
    let tree = trees.pop().unwrap();
    if tree.has_starred() {
        return Err(bad("starred labels remain after merging"));
    }
    Ok(tree)
}

/// Every labelled set-alternating E-tree with the given number of edges:
/// each plane tree shape under every assignment of its E- and O-labels.
pub fn enumerate_labelled_trees(edges: usize) -> impl Iterator<Item = LabelledTree> {
    enumerate_plane_trees(edges).flat_map(|shape| {
        let st = shape.stats();
        let (k, o) = (st.even_vertices as u32, st.odd_vertices as u32);
        let odd_perms: Vec<Vec<u32>> = (1..=o).permutations(o as usize).collect();
        (1..=k).permutations(k as usize).flat_map(move |evens| {
            let shape = shape.clone();
            odd_perms.clone().into_iter().map(move |odds| LabelledTree::from_shape(&shape, &evens, &odds))
        })
    })
}
