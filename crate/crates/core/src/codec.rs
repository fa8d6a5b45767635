//! Dispatch over the two encodings.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::enc4::{decode4, encode4, Label4};
use crate::enc7::{decode7, encode7_logged, Label7};
use crate::error::{LabelError, TreeError};
use crate::passes::Decoded;
use crate::repair::{RepairLog, RepairOptions};
use crate::tree::DepTree;

#[derive(Clone, Copy, Debug, Eq, Hash, Ord, PartialEq, PartialOrd, Serialize, Deserialize)]
pub enum Encoding {
    #[serde(rename = "4bit")]
    FourBit,
    #[serde(rename = "7bit")]
    SevenBit,
}

impl Encoding {
    pub fn name(self) -> &'static str {
        match self {
            Encoding::FourBit => "4bit",
            Encoding::SevenBit => "7bit",
        }
    }

    /// Size of the label alphabet.
    pub fn alphabet_size(self) -> usize {
        match self {
            Encoding::FourBit => 16,
            Encoding::SevenBit => 128,
        }
    }

    pub fn parse_label(self, s: &str) -> Result<Label, LabelError> {
        match self {
            Encoding::FourBit => Label4::parse(s).map(Label::Four),
            Encoding::SevenBit => Label7::parse(s).map(Label::Seven),
        }
    }

    /// Encode a forest. The log holds arcs the encoding had to drop.
    pub fn encode(self, tree: &DepTree) -> Result<(Vec<Label>, RepairLog), TreeError> {
        match self {
            Encoding::FourBit => Ok((
                encode4(tree)?.into_iter().map(Label::Four).collect(),
                RepairLog::new(),
            )),
            Encoding::SevenBit => {
                let (labels, log) = encode7_logged(tree)?;
                Ok((labels.into_iter().map(Label::Seven).collect(), log))
            }
        }
    }

    /// Decode labels of this encoding. Fails if a label has the wrong width.
    pub fn decode(self, labels: &[Label], options: RepairOptions) -> Result<Decoded, LabelError> {
        let mismatch = |l: &Label| LabelError {
            label: l.to_string(),
            width: self.alphabet_size().trailing_zeros() as usize,
        };
        match self {
            Encoding::FourBit => {
                let labels = labels
                    .iter()
                    .map(|l| l.as_four().ok_or_else(|| mismatch(l)))
                    .collect::<Result<Vec<_>, _>>()?;
                Ok(decode4(&labels, options))
            }
            Encoding::SevenBit => {
                let labels = labels
                    .iter()
                    .map(|l| l.as_seven().ok_or_else(|| mismatch(l)))
                    .collect::<Result<Vec<_>, _>>()?;
                Ok(decode7(&labels, options))
            }
        }
    }
}

impl fmt::Display for Encoding {
    fn fmt(&self, f: &mut fmt::Formatter) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Encoding {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "4bit" | "4" => Ok(Encoding::FourBit),
            "7bit" | "7" => Ok(Encoding::SevenBit),
            _ => Err(format!("unknown encoding {:?} (expected 4bit or 7bit)", s)),
        }
    }
}

/// How labels are written out.
#[derive(Clone, Copy, Debug, Default, Eq, PartialEq)]
pub enum LabelSyntax {
    #[default]
    Bits,
    Brackets,
}

impl FromStr for LabelSyntax {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "bits" => Ok(LabelSyntax::Bits),
            "brackets" => Ok(LabelSyntax::Brackets),
            _ => Err(format!(
                "unknown label syntax {:?} (expected bits or brackets)",
                s
            )),
        }
    }
}

/// A label of either encoding.
#[derive(Clone, Copy, Debug, Eq, Hash, Ord, PartialEq, PartialOrd)]
pub enum Label {
    Four(Label4),
    Seven(Label7),
}

impl Label {
    pub fn as_four(&self) -> Option<Label4> {
        match self {
            Label::Four(l) => Some(*l),
            Label::Seven(_) => None,
        }
    }

    pub fn as_seven(&self) -> Option<Label7> {
        match self {
            Label::Seven(l) => Some(*l),
            Label::Four(_) => None,
        }
    }

    pub fn render(&self, syntax: LabelSyntax) -> String {
        match (self, syntax) {
            (Label::Four(l), LabelSyntax::Bits) => l.to_bit_string(),
            (Label::Four(l), LabelSyntax::Brackets) => l.to_brackets(),
            (Label::Seven(l), LabelSyntax::Bits) => l.to_bit_string(),
            (Label::Seven(l), LabelSyntax::Brackets) => l.to_brackets(),
        }
    }
}

impl fmt::Display for Label {
    fn fmt(&self, f: &mut fmt::Formatter) -> fmt::Result {
        f.write_str(&self.render(LabelSyntax::Bits))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn width_mismatch_is_an_error() {
        let labels = vec![Encoding::SevenBit.parse_label("1010000").unwrap()];
        let err = Encoding::FourBit
            .decode(&labels, RepairOptions::default())
            .unwrap_err();
        assert_eq!(err.width, 4);
        assert!(Encoding::SevenBit
            .decode(&labels, RepairOptions::default())
            .is_ok());
    }

    #[test]
    fn names() {
        for enc in [Encoding::FourBit, Encoding::SevenBit] {
            assert_eq!(enc.name().parse::<Encoding>().unwrap(), enc);
        }
        assert!("5bit".parse::<Encoding>().is_err());
    }
}
