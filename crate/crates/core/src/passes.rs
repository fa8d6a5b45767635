//! The stack pass shared by every decoder.
//!
//! A right pass scans words left to right. A word marked as a dependent
//! takes the stack top as its head (popping it when the word is its head's
//! outermost dependent), then pushes itself if it promises dependents
//! further right. A left pass is the mirror image, scanning right to left.

use crate::repair::{EventKind, RepairLog};
use crate::tree::{Arc, DepTree, ROOT};

/// What one word contributes to one pass.
#[derive(Clone, Copy, Debug, Default)]
pub(crate) struct Step {
    /// The word's incoming arc is decoded by this pass.
    pub attach: bool,
    /// The word is its head's outermost dependent on this side.
    pub pop: bool,
    /// The word heads at least one arc decoded by this pass.
    pub push: bool,
}

#[derive(Clone, Copy, Debug, Eq, PartialEq)]
pub(crate) enum Scan {
    Rightward,
    Leftward,
}

/// Stack operation counters, summed over passes.
#[derive(Clone, Copy, Debug, Default, Eq, PartialEq)]
pub struct StackOps {
    pub pushes: usize,
    pub pops: usize,
}

/// Arcs produced by a single decoding pass.
#[derive(Clone, Debug, Default)]
pub struct PassOutput {
    pub arcs: Vec<Arc>,
    pub log: RepairLog,
    pub ops: StackOps,
}

impl PassOutput {
    pub(crate) fn from_heads(heads: &[Option<usize>], log: RepairLog, ops: StackOps) -> Self {
        let arcs = heads
            .iter()
            .enumerate()
            .filter_map(|(idx, h)| h.map(|h| Arc::new(h, idx + 1)))
            .collect();
        PassOutput { arcs, log, ops }
    }
}

/// A decoded (and repaired) sentence.
#[derive(Clone, Debug)]
pub struct Decoded {
    pub tree: DepTree,
    /// Pass anomalies followed by repair interventions.
    pub log: RepairLog,
    /// Heads as produced by the passes, before repair.
    pub raw_heads: Vec<Option<usize>>,
    pub ops: StackOps,
}

pub(crate) struct Pass<'a> {
    pub name: &'a str,
    pub scan: Scan,
    pub with_root: bool,
}

impl Pass<'_> {
    /// Run the pass, writing decoded heads into `heads` (index `k` is word
    /// `k + 1`).
    pub fn run(
        &self,
        n: usize,
        step: impl Fn(usize) -> Step,
        heads: &mut [Option<usize>],
        log: &mut RepairLog,
        ops: &mut StackOps,
    ) {
        let mut stack = Vec::new();
        if self.with_root {
            stack.push(ROOT);
            ops.pushes += 1;
        }

        let mut visit = |word: usize| {
            let Step { attach, pop, push } = step(word);
            if attach {
                match stack.last() {
                    Some(&head) => {
                        heads[word - 1] = Some(head);
                        if pop {
                            stack.pop();
                            ops.pops += 1;
                        }
                    }
                    None => log.push(
                        EventKind::EmptyStackSkip,
                        word,
                        format!("{}: no head available", self.name),
                    ),
                }
            }
            if push {
                stack.push(word);
                ops.pushes += 1;
            }
        };

        match self.scan {
            Scan::Rightward => (1..=n).for_each(&mut visit),
            Scan::Leftward => (1..=n).rev().for_each(&mut visit),
        }

        for &word in stack.iter().filter(|&&w| w != ROOT) {
            log.push(
                EventKind::LeftoverStack,
                word,
                format!("{}: unmatched dependent promise", self.name),
            );
        }
    }
}
