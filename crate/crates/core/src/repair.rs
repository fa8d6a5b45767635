//! Turning arbitrary decoder output into a valid forest or tree.
//!
//! Decoding a label sequence that does not describe a tree leaves words
//! headless, creates cycles, or yields several roots. The repair pass fixes
//! these in a fixed order (headless words, then cycles, then extra roots)
//! and records every intervention.

use std::fmt;
use std::ops::AddAssign;

use serde::{Deserialize, Serialize};

use crate::tree::{DepTree, ROOT};

/// Kinds of decoder anomalies and repair interventions.
#[derive(Clone, Copy, Debug, Eq, Hash, Ord, PartialEq, PartialOrd, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum EventKind {
    /// A dependent was read while the stack was empty; no arc was created.
    EmptyStackSkip,
    /// A word was still on a stack after its pass finished.
    LeftoverStack,
    /// The encoder could not place an arc on either plane.
    DroppedArc,
    /// A word without a head was attached to a neighbor.
    AttachHeadless,
    /// A word on a cycle was reattached.
    CycleBreak,
    /// A surplus root was attached below the first root.
    ExtraRootReattach,
}

impl EventKind {
    pub const ALL: [EventKind; 6] = [
        EventKind::EmptyStackSkip,
        EventKind::LeftoverStack,
        EventKind::DroppedArc,
        EventKind::AttachHeadless,
        EventKind::CycleBreak,
        EventKind::ExtraRootReattach,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            EventKind::EmptyStackSkip => "empty_stack_skip",
            EventKind::LeftoverStack => "leftover_stack",
            EventKind::DroppedArc => "dropped_arc",
            EventKind::AttachHeadless => "attach_headless",
            EventKind::CycleBreak => "cycle_break",
            EventKind::ExtraRootReattach => "extra_root_reattach",
        }
    }
}

impl fmt::Display for EventKind {
    fn fmt(&self, f: &mut fmt::Formatter) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Clone, Debug, Eq, PartialEq, Serialize, Deserialize)]
pub struct RepairEvent {
    pub kind: EventKind,
    pub word: usize,
    pub detail: String,
}

impl fmt::Display for RepairEvent {
    fn fmt(&self, f: &mut fmt::Formatter) -> fmt::Result {
        write!(f, "{} at word {}: {}", self.kind, self.word, self.detail)
    }
}

/// Per-kind event counters.
#[derive(Clone, Copy, Debug, Default, Eq, PartialEq, Serialize, Deserialize)]
pub struct RepairCounts {
    pub empty_stack_skip: u64,
    pub leftover_stack: u64,
    pub dropped_arc: u64,
    pub attach_headless: u64,
    pub cycle_break: u64,
    pub extra_root_reattach: u64,
}

impl RepairCounts {
    pub fn get(&self, kind: EventKind) -> u64 {
        match kind {
            EventKind::EmptyStackSkip => self.empty_stack_skip,
            EventKind::LeftoverStack => self.leftover_stack,
            EventKind::DroppedArc => self.dropped_arc,
            EventKind::AttachHeadless => self.attach_headless,
            EventKind::CycleBreak => self.cycle_break,
            EventKind::ExtraRootReattach => self.extra_root_reattach,
        }
    }

    fn slot(&mut self, kind: EventKind) -> &mut u64 {
        match kind {
            EventKind::EmptyStackSkip => &mut self.empty_stack_skip,
            EventKind::LeftoverStack => &mut self.leftover_stack,
            EventKind::DroppedArc => &mut self.dropped_arc,
            EventKind::AttachHeadless => &mut self.attach_headless,
            EventKind::CycleBreak => &mut self.cycle_break,
            EventKind::ExtraRootReattach => &mut self.extra_root_reattach,
        }
    }

    pub fn total(&self) -> u64 {
        EventKind::ALL.iter().map(|&k| self.get(k)).sum()
    }
}

impl AddAssign for RepairCounts {
    fn add_assign(&mut self, rhs: Self) {
        for kind in EventKind::ALL {
            *self.slot(kind) += rhs.get(kind);
        }
    }
}

/// Ordered log of anomalies and interventions for one sentence.
#[derive(Clone, Debug, Default, Eq, PartialEq, Serialize, Deserialize)]
pub struct RepairLog {
    events: Vec<RepairEvent>,
}

impl RepairLog {
    pub fn new() -> Self {
        RepairLog::default()
    }

    pub fn push(&mut self, kind: EventKind, word: usize, detail: impl Into<String>) {
        self.events.push(RepairEvent {
            kind,
            word,
            detail: detail.into(),
        });
    }

    pub fn extend(&mut self, other: RepairLog) {
        self.events.extend(other.events);
    }

    pub fn events(&self) -> &[RepairEvent] {
        &self.events
    }

    pub fn is_empty(&self) -> bool {
        self.events.is_empty()
    }

    pub fn len(&self) -> usize {
        self.events.len()
    }

    pub fn count(&self, kind: EventKind) -> usize {
        self.events.iter().filter(|e| e.kind == kind).count()
    }

    pub fn counts(&self) -> RepairCounts {
        let mut counts = RepairCounts::default();
        for event in &self.events {
            *counts.slot(event.kind) += 1;
        }
        counts
    }

    /// Words whose head was changed by a repair intervention.
    pub fn repaired_words(&self) -> impl Iterator<Item = usize> + '_ {
        self.events
            .iter()
            .filter(|e| {
                matches!(
                    e.kind,
                    EventKind::AttachHeadless
                        | EventKind::CycleBreak
                        | EventKind::ExtraRootReattach
                )
            })
            .map(|e| e.word)
    }
}

#[derive(Clone, Copy, Debug, Default, Eq, PartialEq)]
pub struct RepairOptions {
    /// Reattach all root words but the first below the first root.
    pub enforce_single_root: bool,
}

impl RepairOptions {
    pub fn single_root() -> Self {
        RepairOptions {
            enforce_single_root: true,
        }
    }
}

/// Repair a partial head assignment into a valid forest (or single-root
/// tree with [`RepairOptions::enforce_single_root`]).
///
/// `raw[k]` is the head of word `k + 1`, if any. Heads that are out of range
/// or point at the word itself are treated as missing.
pub fn repair(raw: &[Option<usize>], options: RepairOptions) -> (DepTree, RepairLog) {
    let n = raw.len();
    let mut log = RepairLog::new();

    let mut heads: Vec<usize> = Vec::with_capacity(n);
    for (idx, head) in raw.iter().enumerate() {
        let word = idx + 1;
        match head {
            Some(h) if *h <= n && *h != word => heads.push(*h),
            _ => {
                let neighbor = word - 1;
                let detail = match head {
                    Some(h) => format!("invalid head {}, attached to {}", h, neighbor),
                    None => format!("attached to {}", neighbor),
                };
                log.push(EventKind::AttachHeadless, word, detail);
                heads.push(neighbor);
            }
        }
    }

    break_cycles(&mut heads, &mut log);

    if options.enforce_single_root {
        let mut roots = heads
            .iter()
            .enumerate()
            .filter(|(_, &h)| h == ROOT)
            .map(|(idx, _)| idx + 1);
        if let Some(first) = roots.next() {
            let extra: Vec<usize> = roots.collect();
            for word in extra {
                log.push(
                    EventKind::ExtraRootReattach,
                    word,
                    format!("attached to root {}", first),
                );
                heads[word - 1] = first;
            }
        }
    }

    let tree = DepTree::from_heads(heads).expect("repaired heads are in range");
    (tree, log)
}

const UNSEEN: usize = usize::MAX;
const DONE: usize = usize::MAX - 1;
const CUT: usize = usize::MAX - 2;

/// Break cycles one at a time, always the first one reached when walking
/// up from words 1, 2, ... in order.
///
/// The walk resumes after each break. Words cut off the path by a break
/// are not walked again: they are all larger than the victim below them,
/// so they never decide a later victim, and a union-find maps each of them
/// to the path word its chain re-enters at.
fn break_cycles(heads: &mut [usize], log: &mut RepairLog) {
    // position on the current path, or one of the markers above
    let mut state = vec![UNSEEN; heads.len() + 1];
    state[ROOT] = DONE;
    let mut has_root = heads.contains(&ROOT);
    let mut path: Vec<usize> = Vec::new();
    // positions on `path` whose word is smaller than every later word;
    // the smallest word of any path suffix is the first entry inside it
    let mut minima: Vec<usize> = Vec::new();
    let mut cut: Vec<usize> = Vec::new();
    let mut entry: Vec<usize> = (0..=heads.len()).collect();

    for start in 1..=heads.len() {
        let mut cur = start;
        loop {
            let at = match state[cur] {
                UNSEEN => {
                    while minima.last().is_some_and(|&p| path[p] > cur) {
                        minima.pop();
                    }
                    state[cur] = path.len();
                    minima.push(path.len());
                    path.push(cur);
                    cur = heads[cur - 1];
                    continue;
                }
                DONE => break,
                CUT => state[find_entry(&mut entry, &state, cur)],
                at => at,
            };
            let reentry = path[at];
            let first = minima.partition_point(|&p| p < at);
            let victim_at = minima[first];
            let victim = path[victim_at];
            let target = if victim == 1 || !has_root {
                ROOT
            } else {
                victim - 1
            };
            log.push(
                EventKind::CycleBreak,
                victim,
                format!("head {} replaced by {}", heads[victim - 1], target),
            );
            heads[victim - 1] = target;
            has_root |= target == ROOT;
            for w in path.drain(victim_at + 1..) {
                state[w] = CUT;
                entry[w] = reentry;
                cut.push(w);
            }
            minima.truncate(first + 1);
            cur = target;
        }
        for w in path.drain(..).chain(cut.drain(..)) {
            state[w] = DONE;
        }
        minima.clear();
    }
}

fn find_entry(entry: &mut [usize], state: &[usize], word: usize) -> usize {
    let mut root = word;
    while state[root] == CUT {
        root = entry[root];
    }
    let mut cur = word;
    while state[cur] == CUT {
        let next = entry[cur];
        entry[cur] = root;
        cur = next;
    }
    root
}

#[cfg(test)]
mod tests {
    use super::*;

    fn raw(heads: &[usize]) -> Vec<Option<usize>> {
        heads.iter().map(|&h| Some(h)).collect()
    }

    /// Rescan from word 1 after every break.
    fn naive_breaks(mut heads: Vec<usize>) -> (Vec<usize>, Vec<usize>) {
        let mut victims = Vec::new();
        while let Some(on_cycle) = crate::tree::find_cycle(&heads) {
            let mut members = vec![on_cycle];
            let mut cur = heads[on_cycle - 1];
            while cur != on_cycle {
                members.push(cur);
                cur = heads[cur - 1];
            }
            let victim = *members.iter().min().unwrap();
            heads[victim - 1] = if victim == 1 || !heads.contains(&ROOT) {
                ROOT
            } else {
                victim - 1
            };
            victims.push(victim);
        }
        (heads, victims)
    }

    fn fast_breaks(mut heads: Vec<usize>) -> (Vec<usize>, Vec<usize>) {
        let mut log = RepairLog::new();
        break_cycles(&mut heads, &mut log);
        (heads, log.events().iter().map(|e| e.word).collect())
    }

    #[test]
    fn cycle_breaking_matches_rescanning() {
        for n in 1..=6usize {
            let mut heads = vec![0; n];
            loop {
                if heads.iter().enumerate().all(|(k, &h)| h != k + 1) {
                    assert_eq!(
                        fast_breaks(heads.clone()),
                        naive_breaks(heads.clone()),
                        "{:?}",
                        heads
                    );
                }
                let Some(k) = (0..n).rev().find(|&k| heads[k] < n) else {
                    break;
                };
                heads[k] += 1;
                heads[k + 1..].iter_mut().for_each(|h| *h = 0);
            }
        }
        let mut seed: u64 = 1;
        for round in 0..3000 {
            let n = 2 + round % 120;
            let heads: Vec<usize> = (1..=n)
                .map(|w| loop {
                    seed = seed
                        .wrapping_mul(6364136223846793005)
                        .wrapping_add(1442695040888963407);
                    // mostly nearby heads, so cycles chain into each other
                    let span = if round % 2 == 0 { 4 } else { n + 1 };
                    let h = (w + (seed >> 33) as usize % (2 * span))
                        .saturating_sub(span)
                        .min(n);
                    if h != w && (h != 0 || (seed >> 20).is_multiple_of(8)) {
                        break h;
                    }
                })
                .collect();
            assert_eq!(
                fast_breaks(heads.clone()),
                naive_breaks(heads.clone()),
                "{:?}",
                heads
            );
        }
    }

    #[test]
    fn valid_tree_is_untouched() {
        let (tree, log) = repair(&raw(&[3, 3, 0, 6, 6, 3, 3]), RepairOptions::single_root());
        assert_eq!(tree.heads(), &[3, 3, 0, 6, 6, 3, 3]);
        assert!(log.is_empty());
    }

    #[test]
    fn two_cycle_without_root() {
        let (tree, log) = repair(&raw(&[2, 1]), RepairOptions::default());
        assert_eq!(tree.heads(), &[0, 1]);
        assert_eq!(log.len(), 1);
        assert_eq!(log.events()[0].kind, EventKind::CycleBreak);
        assert_eq!(log.events()[0].word, 1);
    }

    #[test]
    fn all_headless() {
        let (tree, log) = repair(&[None, None, None], RepairOptions::single_root());
        assert_eq!(tree.heads(), &[0, 1, 2]);
        assert_eq!(log.count(EventKind::AttachHeadless), 3);
        assert_eq!(log.len(), 3);
    }

    #[test]
    fn cycle_with_existing_root_goes_to_left_neighbor() {
        // 1 is the root; 2 <-> 3 form a cycle
        let (tree, log) = repair(&raw(&[0, 3, 2]), RepairOptions::default());
        assert_eq!(tree.heads(), &[0, 1, 2]);
        assert_eq!(log.count(EventKind::CycleBreak), 1);
    }

    #[test]
    fn cycle_break_can_cascade() {
        // 2 -> 3 -> 4 -> 2 with 1 hanging off 3; no root anywhere
        let (tree, log) = repair(&raw(&[3, 4, 2, 3]), RepairOptions::default());
        tree.validate_forest().unwrap();
        assert!(log.count(EventKind::CycleBreak) >= 1);
        assert_eq!(tree.roots().len(), 1);
    }

    #[test]
    fn extra_roots() {
        let (tree, log) = repair(&raw(&[0, 1, 0, 0]), RepairOptions::single_root());
        assert_eq!(tree.heads(), &[0, 1, 1, 1]);
        assert_eq!(log.count(EventKind::ExtraRootReattach), 2);

        let (forest, log) = repair(&raw(&[0, 1, 0, 0]), RepairOptions::default());
        assert_eq!(forest.heads(), &[0, 1, 0, 0]);
        assert!(log.is_empty());
    }

    #[test]
    fn invalid_heads_count_as_missing() {
        let (tree, log) = repair(&[Some(1), Some(9)], RepairOptions::default());
        assert_eq!(tree.heads(), &[0, 1]);
        assert_eq!(log.count(EventKind::AttachHeadless), 2);
    }

    #[test]
    fn counts_merge() {
        let mut log = RepairLog::new();
        log.push(EventKind::CycleBreak, 1, "");
        log.push(EventKind::AttachHeadless, 2, "");
        let mut counts = log.counts();
        counts += log.counts();
        assert_eq!(counts.cycle_break, 2);
        assert_eq!(counts.total(), 4);
    }
}
