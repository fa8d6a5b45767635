//! Dependency trees and the structural predicates the codecs rely on.
//!
//! Words are numbered from 1; index 0 is the dummy root, placed to the left
//! of the sentence. Every word that attaches to 0 is a right dependent of
//! the dummy root.

use std::cmp::{max, min};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::TreeError;

/// Index of the dummy root.
pub const ROOT: usize = 0;

/// A directed dependency arc `head -> dep`.
#[derive(Clone, Copy, Debug, Eq, Hash, Ord, PartialEq, PartialOrd, Serialize, Deserialize)]
pub struct Arc {
    pub head: usize,
    pub dep: usize,
}

impl Arc {
    pub fn new(head: usize, dep: usize) -> Self {
        Arc { head, dep }
    }

    /// Rightward arcs point from a head to a later word. Arcs from the
    /// dummy root are always rightward.
    pub fn is_rightward(&self) -> bool {
        self.head < self.dep
    }

    pub fn left(&self) -> usize {
        min(self.head, self.dep)
    }

    pub fn right(&self) -> usize {
        max(self.head, self.dep)
    }

    pub fn span(&self) -> usize {
        self.right() - self.left()
    }

    pub fn shares_endpoint(&self, other: &Arc) -> bool {
        self.head == other.head
            || self.head == other.dep
            || self.dep == other.head
            || self.dep == other.dep
    }
}

impl fmt::Display for Arc {
    fn fmt(&self, f: &mut fmt::Formatter) -> fmt::Result {
        write!(f, "{}->{}", self.head, self.dep)
    }
}

/// True iff the spans of the two arcs strictly interleave.
///
/// Arcs that share an endpoint never cross.
pub fn cross(a: &Arc, b: &Arc) -> bool {
    let (al, ar) = (a.left(), a.right());
    let (bl, br) = (b.left(), b.right());
    (al < bl && bl < ar && ar < br) || (bl < al && al < br && br < ar)
}

/// A sentence's dependency structure.
///
/// `heads()[k]` is the head of word `k + 1`. Heads are always in range and
/// never point at the word itself; acyclicity and rootedness are checked
/// separately by [`DepTree::validate_forest`] and [`DepTree::validate_tree`],
/// since decoders produce head vectors that still need repair.
#[derive(Clone, Debug, Eq, PartialEq, Serialize, Deserialize)]
pub struct DepTree {
    heads: Vec<usize>,
    forms: Vec<String>,
    deprels: Vec<String>,
}

impl DepTree {
    /// Construct a tree with forms and dependency relations.
    pub fn new(
        heads: Vec<usize>,
        forms: Vec<String>,
        deprels: Vec<String>,
    ) -> Result<Self, TreeError> {
        if forms.len() != heads.len() || deprels.len() != heads.len() {
            return Err(TreeError::LengthMismatch {
                heads: heads.len(),
                forms: forms.len(),
                deprels: deprels.len(),
            });
        }

        let n = heads.len();
        for (idx, &head) in heads.iter().enumerate() {
            let word = idx + 1;
            if head > n {
                return Err(TreeError::HeadOutOfRange { word, head, n });
            }
            if head == word {
                return Err(TreeError::SelfLoop { word });
            }
        }

        Ok(DepTree {
            heads,
            forms,
            deprels,
        })
    }

    /// Construct an unlabeled tree. Forms and relations are empty strings.
    pub fn from_heads(heads: Vec<usize>) -> Result<Self, TreeError> {
        let n = heads.len();
        DepTree::new(heads, vec![String::new(); n], vec![String::new(); n])
    }

    /// Number of words, not counting the dummy root.
    pub fn len(&self) -> usize {
        self.heads.len()
    }

    pub fn is_empty(&self) -> bool {
        self.heads.is_empty()
    }

    pub fn heads(&self) -> &[usize] {
        &self.heads
    }

    pub fn forms(&self) -> &[String] {
        &self.forms
    }

    pub fn deprels(&self) -> &[String] {
        &self.deprels
    }

    /// Head of the 1-based word `word`.
    pub fn head(&self, word: usize) -> usize {
        self.heads[word - 1]
    }

    /// Replace the forms, keeping the structure.
    pub fn with_forms(mut self, forms: Vec<String>) -> Result<Self, TreeError> {
        if forms.len() != self.len() {
            return Err(TreeError::LengthMismatch {
                heads: self.len(),
                forms: forms.len(),
                deprels: self.deprels.len(),
            });
        }
        self.forms = forms;
        Ok(self)
    }

    /// Replace the dependency relations, keeping the structure.
    pub fn with_deprels(mut self, deprels: Vec<String>) -> Result<Self, TreeError> {
        if deprels.len() != self.len() {
            return Err(TreeError::LengthMismatch {
                heads: self.len(),
                forms: self.forms.len(),
                deprels: deprels.len(),
            });
        }
        self.deprels = deprels;
        Ok(self)
    }

    /// All arcs, in dependent order.
    pub fn arcs(&self) -> Vec<Arc> {
        arcs_of(self)
    }

    /// Words attached to the dummy root, ascending.
    pub fn roots(&self) -> Vec<usize> {
        self.heads
            .iter()
            .enumerate()
            .filter(|(_, &h)| h == ROOT)
            .map(|(idx, _)| idx + 1)
            .collect()
    }

    /// Check that the head relation is acyclic.
    pub fn validate_forest(&self) -> Result<(), TreeError> {
        match find_cycle(&self.heads) {
            Some(word) => Err(TreeError::Cycle { word }),
            None => Ok(()),
        }
    }

    /// Check that the head relation is acyclic with exactly one root word.
    pub fn validate_tree(&self) -> Result<(), TreeError> {
        if self.is_empty() {
            return Err(TreeError::Empty);
        }
        self.validate_forest()?;
        let roots = self.roots().len();
        if roots != 1 {
            return Err(TreeError::RootCount { roots });
        }
        Ok(())
    }

    /// Dependents of each node (index 0 is the dummy root), ascending.
    pub(crate) fn dependents(&self) -> Vec<Vec<usize>> {
        let mut deps = vec![Vec::new(); self.len() + 1];
        for (idx, &head) in self.heads.iter().enumerate() {
            deps[head].push(idx + 1);
        }
        deps
    }
}

/// Returns `(heads[i], i)` for every word, in dependent order.
pub fn arcs_of(tree: &DepTree) -> Vec<Arc> {
    tree.heads
        .iter()
        .enumerate()
        .map(|(idx, &head)| Arc::new(head, idx + 1))
        .collect()
}

/// Returns some word on a cycle of the head relation, if there is one.
///
/// `heads[k]` is the head of word `k + 1`; heads must be in range.
pub(crate) fn find_cycle(heads: &[usize]) -> Option<usize> {
    // 0 = unvisited, 1 = on current path, 2 = done
    let mut state = vec![0u8; heads.len() + 1];
    state[ROOT] = 2;
    for start in 1..=heads.len() {
        let mut path = Vec::new();
        let mut cur = start;
        while state[cur] == 0 {
            state[cur] = 1;
            path.push(cur);
            cur = heads[cur - 1];
        }
        if state[cur] == 1 {
            return Some(cur);
        }
        for w in path {
            state[w] = 2;
        }
    }
    None
}

/// True iff no two arcs cross, counting the dummy-root arc.
///
/// A root word covered by another arc therefore makes the tree
/// non-projective.
pub fn is_projective(tree: &DepTree) -> Result<bool, TreeError> {
    tree.validate_tree()?;
    Ok(!any_crossing(&tree.arcs(), |_, _| true))
}

/// True iff no two rightward arcs cross and no two leftward arcs cross.
/// Dummy-root arcs count as rightward.
pub fn covered_by_4bit(tree: &DepTree) -> Result<bool, TreeError> {
    tree.validate_forest()?;
    Ok(!any_crossing(&tree.arcs(), |a, b| {
        a.is_rightward() == b.is_rightward()
    }))
}

fn any_crossing(arcs: &[Arc], relevant: impl Fn(&Arc, &Arc) -> bool) -> bool {
    arcs.iter()
        .enumerate()
        .any(|(i, a)| arcs[i + 1..].iter().any(|b| relevant(a, b) && cross(a, b)))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn tree(heads: &[usize]) -> DepTree {
        DepTree::from_heads(heads.to_vec()).unwrap()
    }

    #[test]
    fn arcs_in_dependent_order() {
        assert_eq!(arcs_of(&tree(&[0])), vec![Arc::new(0, 1)]);
        assert_eq!(
            arcs_of(&tree(&[2, 0])),
            vec![Arc::new(2, 1), Arc::new(0, 2)]
        );
        assert_eq!(
            arcs_of(&tree(&[3, 3, 0, 6, 6, 3, 3])),
            vec![
                Arc::new(3, 1),
                Arc::new(3, 2),
                Arc::new(0, 3),
                Arc::new(6, 4),
                Arc::new(6, 5),
                Arc::new(3, 6),
                Arc::new(3, 7)
            ]
        );
    }

    #[test]
    fn crossing() {
        assert!(cross(&Arc::new(1, 3), &Arc::new(2, 4)));
        assert!(cross(&Arc::new(4, 2), &Arc::new(3, 1)));
        assert!(!cross(&Arc::new(1, 4), &Arc::new(2, 3)));
        assert!(!cross(&Arc::new(3, 1), &Arc::new(3, 5)));
        assert!(!cross(&Arc::new(1, 2), &Arc::new(3, 4)));
    }

    #[test]
    fn projectivity() {
        assert!(is_projective(&tree(&[3, 3, 0, 6, 6, 3, 3])).unwrap());
        assert!(!is_projective(&tree(&[2, 5, 5, 5, 0, 2, 5])).unwrap());
        assert!(is_projective(&tree(&[0])).unwrap());
        // forests are not trees
        assert!(is_projective(&tree(&[3, 0, 0])).is_err());
    }

    #[test]
    fn covered_root_is_not_projective() {
        // 3 -> 1 covers the root word 2
        let t = tree(&[3, 0, 2]);
        assert!(!is_projective(&t).unwrap());
        // but left and right arcs may cross each other in the 4-bit class
        assert!(covered_by_4bit(&t).unwrap());
    }

    #[test]
    fn four_bit_coverage() {
        assert!(!covered_by_4bit(&tree(&[2, 5, 5, 5, 0, 2, 5])).unwrap());
        // two roots, leftward arcs 3 -> 1 and 4 -> 2 interleave
        assert!(!covered_by_4bit(&tree(&[3, 4, 0, 0])).unwrap());
        assert!(covered_by_4bit(&tree(&[3, 3, 0, 6, 6, 3, 3])).unwrap());
    }

    #[test]
    fn validation() {
        assert!(matches!(
            DepTree::from_heads(vec![1]),
            Err(TreeError::SelfLoop { word: 1 })
        ));
        assert!(matches!(
            DepTree::from_heads(vec![3, 0]),
            Err(TreeError::HeadOutOfRange { .. })
        ));
        let cyclic = tree(&[2, 1, 0]);
        assert!(matches!(
            cyclic.validate_forest(),
            Err(TreeError::Cycle { .. })
        ));
        assert!(matches!(
            tree(&[0, 0]).validate_tree(),
            Err(TreeError::RootCount { roots: 2 })
        ));
        assert!(tree(&[0, 0]).validate_forest().is_ok());
        assert!(covered_by_4bit(&cyclic).is_err());
    }
}
