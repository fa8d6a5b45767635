//! The 7-bit two-plane encoding.
//!
//! Arcs are first split into two planes. Each word then records the
//! direction and plane of its incoming arc, whether it is its head's
//! outermost dependent on that side and plane, and whether it has left and
//! right dependents on each plane. Four independent stack passes, one per
//! direction and plane, recover the arcs.

use std::fmt;
use std::str::FromStr;

use crate::enc4::eat;
use crate::error::{LabelError, TreeError};
use crate::passes::{Decoded, Pass, Scan, StackOps, Step};
use crate::planes::{assign_planes, Plane, PlaneAssignment};
use crate::repair::{repair, EventKind, RepairLog, RepairOptions};
use crate::tree::DepTree;

/// A 7-bit label. Bit strings list the fields in declaration order.
#[derive(Clone, Copy, Debug, Default, Eq, Hash, Ord, PartialEq, PartialOrd)]
pub struct Label7 {
    /// Right dependent (`>`), otherwise left dependent (`<`).
    pub right: bool,
    /// The incoming arc lies on the second plane.
    pub second_plane: bool,
    /// Outermost dependent on its side of the head within its plane (`*`).
    pub outermost: bool,
    /// Left dependents on the first plane (`\0`).
    pub left_first: bool,
    /// Right dependents on the first plane (`/0`).
    pub right_first: bool,
    /// Left dependents on the second plane (`\1`).
    pub left_second: bool,
    /// Right dependents on the second plane (`/1`).
    pub right_second: bool,
}

impl Label7 {
    pub const WIDTH: usize = 7;

    pub fn from_bits(bits: [bool; 7]) -> Self {
        Label7 {
            right: bits[0],
            second_plane: bits[1],
            outermost: bits[2],
            left_first: bits[3],
            right_first: bits[4],
            left_second: bits[5],
            right_second: bits[6],
        }
    }

    pub fn bits(&self) -> [bool; 7] {
        [
            self.right,
            self.second_plane,
            self.outermost,
            self.left_first,
            self.right_first,
            self.left_second,
            self.right_second,
        ]
    }

    /// The label read as a binary number, first bit most significant.
    pub fn index(&self) -> u8 {
        self.bits().iter().fold(0, |acc, &b| (acc << 1) | b as u8)
    }

    pub fn from_index(index: u8) -> Self {
        assert!(index < 128, "7-bit label index out of range: {}", index);
        let mut bits = [false; 7];
        for (k, bit) in bits.iter_mut().enumerate() {
            *bit = index & (1 << (6 - k)) != 0;
        }
        Label7::from_bits(bits)
    }

    /// All 128 labels, in index order.
    pub fn all() -> impl Iterator<Item = Label7> {
        (0..128).map(Label7::from_index)
    }

    pub fn plane(&self) -> Plane {
        if self.second_plane {
            Plane::Second
        } else {
            Plane::First
        }
    }

    pub fn to_bit_string(&self) -> String {
        self.bits()
            .iter()
            .map(|&b| if b { '1' } else { '0' })
            .collect()
    }

    pub fn to_brackets(&self) -> String {
        let mut s = String::with_capacity(10);
        if self.left_first {
            s.push_str("\\0");
        }
        s.push(if self.right { '>' } else { '<' });
        s.push(if self.second_plane { '1' } else { '0' });
        if self.outermost {
            s.push('*');
        }
        if self.right_first {
            s.push_str("/0");
        }
        if self.left_second {
            s.push_str("\\1");
        }
        if self.right_second {
            s.push_str("/1");
        }
        s
    }

    /// Parse either a 7-character bit string or bracket syntax.
    pub fn parse(s: &str) -> Result<Self, LabelError> {
        parse_bits(s)
            .or_else(|| parse_brackets(s))
            .ok_or_else(|| LabelError {
                label: s.to_owned(),
                width: Self::WIDTH,
            })
    }
}

fn parse_bits(s: &str) -> Option<Label7> {
    let bytes = s.as_bytes();
    if bytes.len() != 7 || !bytes.iter().all(|b| *b == b'0' || *b == b'1') {
        return None;
    }
    let mut bits = [false; 7];
    for (bit, byte) in bits.iter_mut().zip(bytes) {
        *bit = *byte == b'1';
    }
    Some(Label7::from_bits(bits))
}

fn parse_brackets(s: &str) -> Option<Label7> {
    let mut rest = s;
    let left_first = eat(&mut rest, "\\0");
    let right = if eat(&mut rest, ">") {
        true
    } else if eat(&mut rest, "<") {
        false
    } else {
        return None;
    };
    let second_plane = if eat(&mut rest, "1") {
        true
    } else if eat(&mut rest, "0") {
        false
    } else {
        return None;
    };
    let outermost = eat(&mut rest, "*");
    let right_first = eat(&mut rest, "/0");
    let left_second = eat(&mut rest, "\\1");
    let right_second = eat(&mut rest, "/1");
    if !rest.is_empty() {
        return None;
    }
    Some(Label7 {
        right,
        second_plane,
        outermost,
        left_first,
        right_first,
        left_second,
        right_second,
    })
}

impl fmt::Display for Label7 {
    fn fmt(&self, f: &mut fmt::Formatter) -> fmt::Result {
        f.write_str(&self.to_bit_string())
    }
}

impl FromStr for Label7 {
    type Err = LabelError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Label7::parse(s)
    }
}

/// Encode a forest, silently dropping arcs that fit on neither plane.
pub fn encode7(tree: &DepTree) -> Result<Vec<Label7>, TreeError> {
    encode7_logged(tree).map(|(labels, _)| labels)
}

/// Encode a forest, logging a [`EventKind::DroppedArc`] event for every arc
/// that fits on neither plane.
pub fn encode7_logged(tree: &DepTree) -> Result<(Vec<Label7>, RepairLog), TreeError> {
    let planes = assign_planes(tree)?;
    Ok(encode7_with_planes(tree, &planes))
}

/// Encode with a given plane assignment.
///
/// The dependent of an unassigned arc is labeled as an outermost-less right
/// dependent on the first plane, and the arc contributes no child flag.
pub fn encode7_with_planes(tree: &DepTree, planes: &PlaneAssignment) -> (Vec<Label7>, RepairLog) {
    let n = tree.len();
    let mut log = RepairLog::new();

    // per node, per plane: assigned dependents, ascending
    let mut deps: Vec<[Vec<usize>; 2]> = vec![[Vec::new(), Vec::new()]; n + 1];
    for word in 1..=n {
        if let Some(p) = planes.plane_of(word) {
            deps[tree.head(word)][p.index()].push(word);
        }
    }

    let labels = (1..=n)
        .map(|word| {
            let head = tree.head(word);
            let own = &deps[word];
            let mut label = Label7 {
                left_first: own[0].first().is_some_and(|&d| d < word),
                right_first: own[0].last().is_some_and(|&d| d > word),
                left_second: own[1].first().is_some_and(|&d| d < word),
                right_second: own[1].last().is_some_and(|&d| d > word),
                ..Label7::default()
            };

            match planes.plane_of(word) {
                Some(plane) => {
                    let siblings = &deps[head][plane.index()];
                    label.right = head < word;
                    label.second_plane = plane == Plane::Second;
                    label.outermost = if label.right {
                        siblings.last() == Some(&word)
                    } else {
                        siblings.first() == Some(&word)
                    };
                }
                None => {
                    label.right = true;
                    log.push(
                        EventKind::DroppedArc,
                        word,
                        format!("arc {}->{} fits on neither plane", head, word),
                    );
                }
            }
            label
        })
        .collect();

    (labels, log)
}

const PASSES: [(Pass, Plane); 4] = [
    (
        Pass {
            name: "first-plane right pass",
            scan: Scan::Rightward,
            with_root: true,
        },
        Plane::First,
    ),
    (
        Pass {
            name: "first-plane left pass",
            scan: Scan::Leftward,
            with_root: false,
        },
        Plane::First,
    ),
    (
        Pass {
            name: "second-plane right pass",
            scan: Scan::Rightward,
            with_root: true,
        },
        Plane::Second,
    ),
    (
        Pass {
            name: "second-plane left pass",
            scan: Scan::Leftward,
            with_root: false,
        },
        Plane::Second,
    ),
];

fn step(label: &Label7, scan: Scan, plane: Plane) -> Step {
    let rightward = scan == Scan::Rightward;
    let push = match (plane, rightward) {
        (Plane::First, true) => label.right_first,
        (Plane::First, false) => label.left_first,
        (Plane::Second, true) => label.right_second,
        (Plane::Second, false) => label.left_second,
    };
    Step {
        attach: label.right == rightward && label.plane() == plane,
        pop: label.outermost,
        push,
    }
}

/// Decode a label sequence into a valid forest (or tree), repairing it if
/// the labels do not describe one.
pub fn decode7(labels: &[Label7], options: RepairOptions) -> Decoded {
    let n = labels.len();
    let mut heads = vec![None; n];
    let mut log = RepairLog::new();
    let mut ops = StackOps::default();

    for (pass, plane) in &PASSES {
        pass.run(
            n,
            |w| step(&labels[w - 1], pass.scan, *plane),
            &mut heads,
            &mut log,
            &mut ops,
        );
    }

    let (tree, repair_log) = repair(&heads, options);
    log.extend(repair_log);
    Decoded {
        tree,
        log,
        raw_heads: heads,
        ops,
    }
}
