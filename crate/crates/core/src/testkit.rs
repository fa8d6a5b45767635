//! Brute-force oracles over small trees.
//!
//! Everything here is deliberately naive: exhaustive enumeration of head
//! vectors and exhaustive search over plane partitions. The codecs are
//! checked against these, never the other way round.

use thiserror::Error;

use crate::tree::{covered_by_4bit, cross, is_projective, Arc, DepTree};

/// Largest sentence length [`enumerate`] accepts.
pub const MAX_N: usize = 7;

#[derive(Clone, Copy, Debug, Eq, PartialEq)]
pub enum Constraint {
    AllTrees,
    Projective,
    Covered4Bit,
    Covered7Bit,
}

impl Constraint {
    pub fn admits(self, tree: &DepTree) -> bool {
        match self {
            Constraint::AllTrees => true,
            Constraint::Projective => is_projective(tree).unwrap_or(false),
            Constraint::Covered4Bit => covered_by_4bit(tree).unwrap_or(false),
            Constraint::Covered7Bit => brute_two_plane(tree),
        }
    }
}

#[derive(Clone, Copy, Debug, Eq, Error, PartialEq)]
#[error("cannot enumerate trees of length {n}; the bound is {bound}")]
pub struct BoundExceeded {
    pub n: usize,
    pub bound: usize,
}

/// Every single-root tree of length `n` satisfying `constraint`, in
/// lexicographic order of head vectors.
pub fn enumerate(n: usize, constraint: Constraint) -> Result<TreeUniverse, BoundExceeded> {
    enumerate_bounded(n, constraint, MAX_N)
}

pub fn enumerate_bounded(
    n: usize,
    constraint: Constraint,
    bound: usize,
) -> Result<TreeUniverse, BoundExceeded> {
    if n > bound {
        return Err(BoundExceeded { n, bound });
    }
    Ok(TreeUniverse {
        n,
        constraint,
        next: first_vector(n),
    })
}

/// Lazily enumerated set of trees.
#[derive(Clone, Debug)]
pub struct TreeUniverse {
    n: usize,
    constraint: Constraint,
    next: Option<Vec<usize>>,
}

impl TreeUniverse {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn constraint(&self) -> Constraint {
        self.constraint
    }
}

fn first_vector(n: usize) -> Option<Vec<usize>> {
    if n == 0 {
        return None;
    }
    // word i may not head itself; the smallest legal head is 0
    Some(vec![0; n])
}

/// Advance `heads` to the next vector with `heads[k] != k + 1`.
fn advance(heads: &mut [usize]) -> bool {
    let n = heads.len();
    for k in (0..n).rev() {
        let mut h = heads[k] + 1;
        if h == k + 1 {
            h += 1;
        }
        if h <= n {
            heads[k] = h;
            return true;
        }
        heads[k] = 0;
    }
    false
}

fn is_single_root_tree(heads: &[usize]) -> bool {
    if heads.iter().filter(|&&h| h == 0).count() != 1 {
        return false;
    }
    // with one root, acyclic iff every word reaches 0 within n steps
    heads.iter().enumerate().all(|(idx, _)| {
        let mut cur = idx + 1;
        for _ in 0..=heads.len() {
            if cur == 0 {
                return true;
            }
            cur = heads[cur - 1];
        }
        false
    })
}

impl Iterator for TreeUniverse {
    type Item = DepTree;

    fn next(&mut self) -> Option<DepTree> {
        loop {
            let heads = self.next.as_mut()?;
            let candidate = heads.clone();
            if !advance(heads) {
                self.next = None;
            }
            if !is_single_root_tree(&candidate) {
                continue;
            }
            let tree = DepTree::from_heads(candidate).expect("enumerated heads are in range");
            if self.constraint.admits(&tree) {
                return Some(tree);
            }
        }
    }
}

/// Whether some split of the arcs (dummy-root arcs included) into two
/// planes leaves no two same-direction, same-plane arcs crossing. Tries all
/// `2^n` splits.
pub fn brute_two_plane(tree: &DepTree) -> bool {
    brute_two_plane_partition(tree).is_some()
}

/// A witness split for [`brute_two_plane`]: plane index per word.
pub fn brute_two_plane_partition(tree: &DepTree) -> Option<Vec<usize>> {
    let arcs: Vec<Arc> = tree.arcs();
    let m = arcs.len();
    assert!(
        m < 32,
        "brute-force partition search is limited to short sentences"
    );

    let mut conflicts = Vec::new();
    for i in 0..m {
        for j in i + 1..m {
            if arcs[i].is_rightward() == arcs[j].is_rightward() && cross(&arcs[i], &arcs[j]) {
                conflicts.push((i, j));
            }
        }
    }

    (0u32..1 << m)
        .find(|mask| {
            conflicts
                .iter()
                .all(|&(i, j)| (mask >> i) & 1 != (mask >> j) & 1)
        })
        .map(|mask| (0..m).map(|k| ((mask >> k) & 1) as usize).collect())
}

/// Whether no two arcs on the same plane cross, regardless of direction.
pub fn planes_are_crossing_free(tree: &DepTree, planes: &[Option<usize>]) -> bool {
    let arcs = tree.arcs();
    for i in 0..arcs.len() {
        for j in i + 1..arcs.len() {
            if let (Some(p), Some(q)) = (planes[i], planes[j]) {
                if p == q && cross(&arcs[i], &arcs[j]) {
                    return false;
                }
            }
        }
    }
    true
}

/// Projectivity from its yield characterization: every node's subtree
/// (the dummy root included) covers a contiguous span of words.
pub fn brute_projective(tree: &DepTree) -> bool {
    let n = tree.len();
    (0..=n).all(|node| {
        let members: Vec<usize> = (0..=n)
            .filter(|&w| {
                let mut cur = w;
                for _ in 0..=n {
                    if cur == node {
                        return true;
                    }
                    if cur == 0 {
                        return false;
                    }
                    cur = tree.head(cur);
                }
                false
            })
            .collect();
        members.windows(2).all(|w| w[1] == w[0] + 1)
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn heads_of(universe: TreeUniverse) -> Vec<Vec<usize>> {
        universe.map(|t| t.heads().to_vec()).collect()
    }

    #[test]
    fn tiny_universes() {
        assert_eq!(
            heads_of(enumerate(1, Constraint::Projective).unwrap()),
            vec![vec![0]]
        );
        assert_eq!(
            heads_of(enumerate(2, Constraint::Projective).unwrap()),
            vec![vec![0, 1], vec![2, 0]]
        );
        let projective: Vec<usize> = (1..=6)
            .map(|n| enumerate(n, Constraint::Projective).unwrap().count())
            .collect();
        assert_eq!(projective, vec![1, 2, 7, 30, 143, 728]);
        assert!(heads_of(enumerate(0, Constraint::AllTrees).unwrap()).is_empty());
    }

    #[test]
    fn all_trees_match_cayley_count() {
        // n choices of root word times n^(n-2) labeled trees rooted there
        let counts: Vec<usize> = (1..=5)
            .map(|n| enumerate(n, Constraint::AllTrees).unwrap().count())
            .collect();
        assert_eq!(counts, vec![1, 2, 9, 64, 625]);
    }

    #[test]
    fn bound() {
        assert_eq!(
            enumerate(8, Constraint::AllTrees).unwrap_err(),
            BoundExceeded { n: 8, bound: 7 }
        );
    }

    #[test]
    fn two_plane_examples() {
        let fig2 = DepTree::from_heads(vec![2, 5, 5, 5, 0, 2, 5]).unwrap();
        assert!(brute_two_plane(&fig2));
        let chain = DepTree::from_heads(vec![0, 4, 1, 1, 3]).unwrap();
        assert!(brute_two_plane(&chain));
        for t in enumerate(4, Constraint::Projective).unwrap() {
            assert!(brute_two_plane(&t));
        }
    }

    #[test]
    fn projectivity_oracle_agrees() {
        for n in 1..=6 {
            for t in enumerate(n, Constraint::AllTrees).unwrap() {
                assert_eq!(
                    is_projective(&t).unwrap(),
                    brute_projective(&t),
                    "{:?}",
                    t.heads()
                );
            }
        }
    }
}
