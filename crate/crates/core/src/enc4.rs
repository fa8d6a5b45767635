//! The 4-bit projective encoding.
//!
//! Each word gets four booleans: whether it is a right dependent, whether it
//! is the outermost dependent on that side of its head, and whether it has
//! left and right dependents of its own. Decoding runs one stack pass per
//! direction.

use std::fmt;
use std::str::FromStr;

use crate::error::{LabelError, TreeError};
use crate::passes::{Decoded, Pass, PassOutput, Scan, StackOps, Step};
use crate::repair::{repair, RepairLog, RepairOptions};
use crate::tree::DepTree;

/// A 4-bit label. Bit strings list the fields in declaration order.
#[derive(Clone, Copy, Debug, Default, Eq, Hash, Ord, PartialEq, PartialOrd)]
pub struct Label4 {
    /// Right dependent (`>`), otherwise left dependent (`<`).
    pub right: bool,
    /// Outermost dependent on its side of the head (`*`).
    pub outermost: bool,
    /// Has at least one left dependent (`\`).
    pub has_left: bool,
    /// Has at least one right dependent (`/`).
    pub has_right: bool,
}

impl Label4 {
    pub const WIDTH: usize = 4;

    pub fn from_bits(bits: [bool; 4]) -> Self {
        Label4 {
            right: bits[0],
            outermost: bits[1],
            has_left: bits[2],
            has_right: bits[3],
        }
    }

    pub fn bits(&self) -> [bool; 4] {
        [self.right, self.outermost, self.has_left, self.has_right]
    }

    /// The label read as a binary number, first bit most significant.
    pub fn index(&self) -> u8 {
        self.bits().iter().fold(0, |acc, &b| (acc << 1) | b as u8)
    }

    pub fn from_index(index: u8) -> Self {
        assert!(index < 16, "4-bit label index out of range: {}", index);
        Label4::from_bits([
            index & 0b1000 != 0,
            index & 0b0100 != 0,
            index & 0b0010 != 0,
            index & 0b0001 != 0,
        ])
    }

    /// All 16 labels, in index order.
    pub fn all() -> impl Iterator<Item = Label4> {
        (0..16).map(Label4::from_index)
    }

    pub fn to_bit_string(&self) -> String {
        self.bits()
            .iter()
            .map(|&b| if b { '1' } else { '0' })
            .collect()
    }

    pub fn to_brackets(&self) -> String {
        let mut s = String::with_capacity(4);
        if self.has_left {
            s.push('\\');
        }
        s.push(if self.right { '>' } else { '<' });
        if self.outermost {
            s.push('*');
        }
        if self.has_right {
            s.push('/');
        }
        s
    }

    /// Parse either a 4-character bit string or bracket syntax.
    pub fn parse(s: &str) -> Result<Self, LabelError> {
        parse_bits(s)
            .or_else(|| parse_brackets(s))
            .ok_or_else(|| LabelError {
                label: s.to_owned(),
                width: Self::WIDTH,
            })
    }
}

fn parse_bits(s: &str) -> Option<Label4> {
    let bytes = s.as_bytes();
    if bytes.len() != 4 || !bytes.iter().all(|b| *b == b'0' || *b == b'1') {
        return None;
    }
    let mut bits = [false; 4];
    for (bit, byte) in bits.iter_mut().zip(bytes) {
        *bit = *byte == b'1';
    }
    Some(Label4::from_bits(bits))
}

fn parse_brackets(s: &str) -> Option<Label4> {
    let mut rest = s;
    let has_left = eat(&mut rest, "\\");
    let right = if eat(&mut rest, ">") {
        true
    } else if eat(&mut rest, "<") {
        false
    } else {
        return None;
    };
    let outermost = eat(&mut rest, "*");
    let has_right = eat(&mut rest, "/");
    if !rest.is_empty() {
        return None;
    }
    Some(Label4 {
        right,
        outermost,
        has_left,
        has_right,
    })
}

pub(crate) fn eat(rest: &mut &str, token: &str) -> bool {
    match rest.strip_prefix(token) {
        Some(tail) => {
            *rest = tail;
            true
        }
        None => false,
    }
}

impl fmt::Display for Label4 {
    fn fmt(&self, f: &mut fmt::Formatter) -> fmt::Result {
        f.write_str(&self.to_bit_string())
    }
}

impl FromStr for Label4 {
    type Err = LabelError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Label4::parse(s)
    }
}

/// Encode a forest. Fails only if the head relation has a cycle.
pub fn encode4(tree: &DepTree) -> Result<Vec<Label4>, TreeError> {
    tree.validate_forest()?;
    let deps = tree.dependents();

    Ok((1..=tree.len())
        .map(|word| {
            let head = tree.head(word);
            let right = head < word;
            // dependents are sorted, so the outermost one is at the end
            let outermost = if right {
                deps[head].last() == Some(&word)
            } else {
                deps[head].first() == Some(&word)
            };
            Label4 {
                right,
                outermost,
                has_left: deps[word].first().is_some_and(|&d| d < word),
                has_right: deps[word].last().is_some_and(|&d| d > word),
            }
        })
        .collect())
}

fn right_step(label: &Label4) -> Step {
    Step {
        attach: label.right,
        pop: label.outermost,
        push: label.has_right,
    }
}

fn left_step(label: &Label4) -> Step {
    Step {
        attach: !label.right,
        pop: label.outermost,
        push: label.has_left,
    }
}

const RIGHT_PASS: Pass = Pass {
    name: "right pass",
    scan: Scan::Rightward,
    with_root: true,
};

const LEFT_PASS: Pass = Pass {
    name: "left pass",
    scan: Scan::Leftward,
    with_root: false,
};

/// Recover rightward arcs (including arcs from the dummy root).
pub fn decode_right_arcs(labels: &[Label4]) -> PassOutput {
    single_pass(&RIGHT_PASS, labels, right_step)
}

/// Recover leftward arcs.
pub fn decode_left_arcs(labels: &[Label4]) -> PassOutput {
    single_pass(&LEFT_PASS, labels, left_step)
}

fn single_pass(pass: &Pass, labels: &[Label4], step: fn(&Label4) -> Step) -> PassOutput {
    let mut heads = vec![None; labels.len()];
    let mut log = RepairLog::new();
    let mut ops = StackOps::default();
    pass.run(
        labels.len(),
        |w| step(&labels[w - 1]),
        &mut heads,
        &mut log,
        &mut ops,
    );
    PassOutput::from_heads(&heads, log, ops)
}

/// Decode a label sequence into a valid forest (or tree), repairing it if
/// the labels do not describe one.
pub fn decode4(labels: &[Label4], options: RepairOptions) -> Decoded {
    let n = labels.len();
    let mut heads = vec![None; n];
    let mut log = RepairLog::new();
    let mut ops = StackOps::default();

    // A word is attached by exactly one of the passes, so they never
    // compete for the same slot.
    RIGHT_PASS.run(
        n,
        |w| right_step(&labels[w - 1]),
        &mut heads,
        &mut log,
        &mut ops,
    );
    LEFT_PASS.run(
        n,
        |w| left_step(&labels[w - 1]),
        &mut heads,
        &mut log,
        &mut ops,
    );

    let (tree, repair_log) = repair(&heads, options);
    log.extend(repair_log);
    Decoded {
        tree,
        log,
        raw_heads: heads,
        ops,
    }
}
