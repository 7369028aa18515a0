//! Arcs and isolated bases as vertices, children being the directly covered
//! elements. The root is the auxiliary arc; leaves are the isolated bases.

use super::BijectionError;
use crate::structure::SecondaryStructure;
use crate::tree::PlaneTree;

pub fn sw_forward(s: &SecondaryStructure) -> PlaneTree {
    let partner = s.partners();
    build(&partner, 0, s.len() + 1)
}

fn build(partner: &[Option<usize>], left: usize, right: usize) -> PlaneTree {
    let mut children = Vec::new();
    let mut p = left + 1;
    while p < right {
        match partner[p] {
            Some(q) => {
                children.push(build(partner, p, q));
                p = q + 1;
            }
            None => {
                children.push(PlaneTree::leaf());
                p += 1;
            }
        }
    }
    PlaneTree::new(children)
}

pub fn sw_inverse(t: &PlaneTree) -> Result<SecondaryStructure, BijectionError> {
    if t.is_leaf() {
        return Err(BijectionError::SingleNode);
    }
    let mut out = String::new();
    for child in t.children() {
        write(child, &mut out);
    }
    Ok(out.parse()?)
}

fn write(t: &PlaneTree, out: &mut String) {
    if t.is_leaf() {
        out.push('.');
    } else {
        out.push('(');
        for child in t.children() {
            write(child, out);
        }
        out.push(')');
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::structure::enumerate_structures;
    use crate::tree::enumerate_plane_trees;

    fn fwd(s: &str) -> String {
        sw_forward(&s.parse().unwrap()).to_string()
    }

    #[test]
    fn forward_examples() {
        assert_eq!(fwd("(.)"), "(())");
        assert_eq!(fwd("..."), "()()()");
        assert_eq!(fwd("((...))"), "((()()()))");
    }

    #[test]
    fn inverse_examples() {
        assert_eq!(sw_inverse(&"(())".parse().unwrap()).unwrap().to_string(), "(.)");
        assert_eq!(sw_inverse(&"()()()()".parse().unwrap()).unwrap().to_string(), "....");
        assert_eq!(sw_inverse(&PlaneTree::leaf()), Err(BijectionError::SingleNode));
    }

    #[test]
    fn leaves_are_isolated_bases() {
        for s in enumerate_structures(3, 3) {
            let t = sw_forward(&s);
            assert_eq!(t.edge_count(), 6);
            let st = t.stats();
            let leaves = st.even_outdegrees.iter().chain(&st.odd_outdegrees).filter(|&&d| d == 0);
            assert_eq!(leaves.count(), 3);
        }
    }

    #[test]
    fn round_trips_on_small_trees() {
        for edges in 1..=7 {
            for t in enumerate_plane_trees(edges) {
                assert_eq!(sw_forward(&sw_inverse(&t).unwrap()), t);
            }
        }
    }
}
