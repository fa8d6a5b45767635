//! Label files exchanged with sequence taggers.
//!
//! One token per line, `INDEX\tFORM\tLABEL\tDEPREL`, with a blank line after
//! each sentence. Labels may be bit strings or bracket syntax, detected per
//! token. The index and form columns are informational.

use std::io::{self, BufRead, Write};

use crate::codec::{Encoding, Label, LabelSyntax};
use crate::error::LabelFileError;

#[derive(Clone, Debug, Eq, PartialEq)]
pub struct LabeledSentence {
    pub forms: Vec<String>,
    pub labels: Vec<Label>,
    pub deprels: Vec<String>,
}

impl LabeledSentence {
    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }
}

pub fn read_labels<R: BufRead>(
    reader: R,
    encoding: Encoding,
) -> Result<Vec<LabeledSentence>, LabelFileError> {
    let mut sentences = Vec::new();
    let mut current = LabeledSentence {
        forms: Vec::new(),
        labels: Vec::new(),
        deprels: Vec::new(),
    };

    for (idx, line) in reader.lines().enumerate() {
        let line = line?;
        let line = line.strip_suffix('\r').unwrap_or(&line);
        let lineno = idx + 1;

        if line.trim().is_empty() {
            if !current.is_empty() {
                sentences.push(std::mem::replace(
                    &mut current,
                    LabeledSentence {
                        forms: Vec::new(),
                        labels: Vec::new(),
                        deprels: Vec::new(),
                    },
                ));
            }
            continue;
        }

        let fields: Vec<&str> = line.split('\t').collect();
        if fields.len() != 4 {
            return Err(LabelFileError::Ragged {
                line: lineno,
                found: fields.len(),
            });
        }
        let label = encoding
            .parse_label(fields[2])
            .map_err(|source| LabelFileError::Label {
                line: lineno,
                source,
            })?;
        current.forms.push(fields[1].to_owned());
        current.labels.push(label);
        current.deprels.push(fields[3].to_owned());
    }

    if !current.is_empty() {
        sentences.push(current);
    }
    Ok(sentences)
}

pub fn write_labeled_sentence<W: Write>(
    writer: &mut W,
    sentence: &LabeledSentence,
    syntax: LabelSyntax,
) -> io::Result<()> {
    for (idx, ((form, label), deprel)) in sentence
        .forms
        .iter()
        .zip(&sentence.labels)
        .zip(&sentence.deprels)
        .enumerate()
    {
        writeln!(
            writer,
            "{}\t{}\t{}\t{}",
            idx + 1,
            or_placeholder(form),
            label.render(syntax),
            or_placeholder(deprel)
        )?;
    }
    writeln!(writer)
}

pub fn write_labels<W: Write>(
    writer: &mut W,
    sentences: &[LabeledSentence],
    syntax: LabelSyntax,
) -> io::Result<()> {
    for sentence in sentences {
        write_labeled_sentence(writer, sentence, syntax)?;
    }
    Ok(())
}

fn or_placeholder(s: &str) -> &str {
    if s.is_empty() {
        "_"
    } else {
        s
    }
}
