//! Bounded sequence-labeling encodings of dependency trees.
//!
//! Two encodings turn a dependency tree into one label per word:
//!
//! * the 4-bit encoding ([`enc4`]) covers projective trees, and more
//!   generally any forest in which arcs of the same direction never cross;
//! * the 7-bit encoding ([`enc7`]) first splits the arcs into two planes
//!   ([`planes`]) and covers trees in which arcs of the same direction and
//!   plane never cross.
//!
//! Both decode in linear time with stack passes. Label sequences that do
//! not describe a tree are decoded with the heuristics in [`repair`].

mod codec;
pub mod conllu;
pub mod enc4;
pub mod enc7;
mod error;
pub mod labels_io;
mod passes;
pub mod planes;
pub mod repair;
pub mod stats;
pub mod testkit;
pub mod tree;

pub use codec::{Encoding, Label, LabelSyntax};
pub use conllu::{parse_conllu, read_conllu, write_conllu, Sentence, Treebank};
pub use enc4::{decode4, decode_left_arcs, decode_right_arcs, encode4, Label4};
pub use enc7::{decode7, encode7, encode7_logged, Label7};
pub use error::{ConlluError, LabelError, LabelFileError, TreeError};
pub use labels_io::{read_labels, write_labels, LabeledSentence};
pub use passes::{Decoded, PassOutput, StackOps};
pub use planes::{assign_planes, crossings_graph, CrossingsGraph, Plane, PlaneAssignment};
pub use repair::{repair, EventKind, RepairCounts, RepairLog, RepairOptions};
pub use stats::{measure, report, CoverageReport, ReportFormat};
pub use tree::{arcs_of, covered_by_4bit, cross, is_projective, Arc, DepTree, ROOT};
