//! Reading and writing CoNLL-U treebanks.
//!
//! Only the columns the encodings need are kept: ID, FORM, HEAD and DEPREL.
//! Multiword-token ranges (`3-4`) and empty nodes (`5.1`) are skipped and do
//! not occupy word indices. Malformed sentences are skipped and reported
//! rather than failing the whole file.

use std::io::{self, BufRead, Write};

use crate::error::ConlluError;
use crate::tree::DepTree;

/// A sentence with its metadata comments.
#[derive(Clone, Debug, Eq, PartialEq)]
pub struct Sentence {
    pub tree: DepTree,
    /// Comment lines, including the leading `#`.
    pub comments: Vec<String>,
}

impl Sentence {
    pub fn new(tree: DepTree) -> Self {
        Sentence {
            tree,
            comments: Vec::new(),
        }
    }

    /// Value of the `# sent_id = ...` comment, if present.
    pub fn sent_id(&self) -> Option<&str> {
        self.comments.iter().find_map(|c| {
            let (key, value) = c.trim_start_matches('#').split_once('=')?;
            (key.trim() == "sent_id").then(|| value.trim())
        })
    }
}

/// A sentence that could not be read.
#[derive(Debug)]
pub struct SkippedSentence {
    /// Line on which the sentence starts.
    pub start_line: usize,
    pub error: ConlluError,
}

#[derive(Debug, Default)]
pub struct Treebank {
    pub sentences: Vec<Sentence>,
    pub skipped: Vec<SkippedSentence>,
}

impl Treebank {
    pub fn from_trees(trees: impl IntoIterator<Item = DepTree>) -> Self {
        Treebank {
            sentences: trees.into_iter().map(Sentence::new).collect(),
            skipped: Vec::new(),
        }
    }

    pub fn len(&self) -> usize {
        self.sentences.len()
    }

    pub fn is_empty(&self) -> bool {
        self.sentences.is_empty()
    }

    pub fn trees(&self) -> impl Iterator<Item = &DepTree> {
        self.sentences.iter().map(|s| &s.tree)
    }
}

pub fn parse_conllu(text: &str) -> Treebank {
    read_conllu(text.as_bytes()).expect("reading from memory cannot fail")
}

/// Read a treebank. Only I/O errors are fatal.
pub fn read_conllu<R: BufRead>(reader: R) -> Result<Treebank, ConlluError> {
    let mut treebank = Treebank::default();
    let mut block = SentenceBlock::default();

    for (idx, line) in reader.lines().enumerate() {
        let line = line?;
        let lineno = idx + 1;
        let line = line.strip_suffix('\r').unwrap_or(&line);

        if line.trim().is_empty() {
            block.finish(&mut treebank);
            continue;
        }
        if block.start_line == 0 {
            block.start_line = lineno;
        }
        if block.error.is_some() {
            continue;
        }
        if line.starts_with('#') {
            block.comments.push(line.to_owned());
            continue;
        }
        if let Err(err) = block.add_token(line, lineno) {
            block.error = Some(err);
        }
    }
    block.finish(&mut treebank);

    Ok(treebank)
}

#[derive(Default)]
struct SentenceBlock {
    start_line: usize,
    comments: Vec<String>,
    heads: Vec<usize>,
    forms: Vec<String>,
    deprels: Vec<String>,
    head_lines: Vec<usize>,
    error: Option<ConlluError>,
}

impl SentenceBlock {
    fn add_token(&mut self, line: &str, lineno: usize) -> Result<(), ConlluError> {
        let fields: Vec<&str> = line.split('\t').collect();
        if fields.len() != 10 {
            return Err(ConlluError::ColumnCount {
                line: lineno,
                found: fields.len(),
            });
        }

        let id = fields[0];
        if id.contains('-') || id.contains('.') {
            return Ok(());
        }
        let id: usize = id.parse().map_err(|_| ConlluError::TokenIndex {
            line: lineno,
            value: id.to_owned(),
        })?;
        let expected = self.heads.len() + 1;
        if id != expected {
            return Err(ConlluError::TokenSequence {
                line: lineno,
                expected,
                found: id,
            });
        }

        let head = fields[6].parse().map_err(|_| ConlluError::NonIntegerHead {
            line: lineno,
            value: fields[6].to_owned(),
        })?;

        self.heads.push(head);
        self.forms.push(fields[1].to_owned());
        self.deprels.push(fields[7].to_owned());
        self.head_lines.push(lineno);
        Ok(())
    }

    fn finish(&mut self, treebank: &mut Treebank) {
        let block = std::mem::take(self);
        if block.start_line == 0 {
            return;
        }
        if let Some(error) = block.error {
            treebank.skipped.push(SkippedSentence {
                start_line: block.start_line,
                error,
            });
            return;
        }
        if block.heads.is_empty() {
            // comment-only block, e.g. a document header
            return;
        }

        let head_lines = block.head_lines;
        match DepTree::new(block.heads, block.forms, block.deprels) {
            Ok(tree) => treebank.sentences.push(Sentence {
                tree,
                comments: block.comments,
            }),
            Err(source) => {
                let line = match &source {
                    crate::error::TreeError::HeadOutOfRange { word, .. }
                    | crate::error::TreeError::SelfLoop { word } => head_lines[word - 1],
                    _ => block.start_line,
                };
                treebank.skipped.push(SkippedSentence {
                    start_line: block.start_line,
                    error: ConlluError::Tree { line, source },
                });
            }
        }
    }
}

fn field(s: &str) -> &str {
    if s.is_empty() {
        "_"
    } else {
        s
    }
}

pub fn write_sentence<W: Write>(writer: &mut W, sentence: &Sentence) -> io::Result<()> {
    for comment in &sentence.comments {
        writeln!(writer, "{}", comment)?;
    }
    let tree = &sentence.tree;
    for word in 1..=tree.len() {
        writeln!(
            writer,
            "{}\t{}\t_\t_\t_\t_\t{}\t{}\t_\t_",
            word,
            field(&tree.forms()[word - 1]),
            tree.head(word),
            field(&tree.deprels()[word - 1]),
        )?;
    }
    writeln!(writer)
}

pub fn write_conllu_to<W: Write>(writer: &mut W, treebank: &Treebank) -> io::Result<()> {
    for sentence in &treebank.sentences {
        write_sentence(writer, sentence)?;
    }
    Ok(())
}

pub fn write_conllu(treebank: &Treebank) -> String {
    let mut buf = Vec::new();
    write_conllu_to(&mut buf, treebank).expect("writing to memory cannot fail");
    String::from_utf8(buf).expect("CoNLL-U output is UTF-8")
}

#[cfg(test)]
mod tests {
    use super::*;

    const TWO_WORDS: &str = "# sent_id = s1\n# text = It went\n\
        1\tIt\tit\tPRON\t_\t_\t2\tnsubj\t_\t_\n\
        2\twent\tgo\tVERB\t_\t_\t0\troot\t_\t_\n\n";

    #[test]
    fn reads_sentence() {
        let tb = parse_conllu(TWO_WORDS);
        assert_eq!(tb.len(), 1);
        let s = &tb.sentences[0];
        assert_eq!(s.tree.heads(), &[2, 0]);
        assert_eq!(s.tree.forms(), &["It", "went"]);
        assert_eq!(s.tree.deprels(), &["nsubj", "root"]);
        assert_eq!(s.sent_id(), Some("s1"));
        assert_eq!(s.comments.len(), 2);
    }

    #[test]
    fn skips_multiword_and_empty_nodes() {
        let text = "1\tI\t_\t_\t_\t_\t2\tnsubj\t_\t_\n\
            2-3\tdon't\t_\t_\t_\t_\t_\t_\t_\t_\n\
            2\tdo\t_\t_\t_\t_\t0\troot\t_\t_\n\
            3\tn't\t_\t_\t_\t_\t2\tadvmod\t_\t_\n\
            3.1\tgo\t_\t_\t_\t_\t_\t_\t_\t_\n";
        let tb = parse_conllu(text);
        assert_eq!(tb.len(), 1);
        assert_eq!(tb.sentences[0].tree.heads(), &[2, 0, 2]);
    }

    #[test]
    fn empty_input() {
        assert!(parse_conllu("").is_empty());
        assert!(parse_conllu("\n\n").is_empty());
    }

    #[test]
    fn bad_sentences_are_skipped() {
        let text = format!(
            "1\ta\t_\t_\t_\t_\tX\tdep\t_\t_\n\n\
             1\tb\t_\t_\t_\t_\t0\troot\n\n\
             1\tc\t_\t_\t_\t_\t5\troot\t_\t_\n\n\
             {}",
            TWO_WORDS
        );
        let tb = parse_conllu(&text);
        assert_eq!(tb.len(), 1);
        assert_eq!(tb.skipped.len(), 3);
        assert!(matches!(
            tb.skipped[0].error,
            ConlluError::NonIntegerHead { line: 1, .. }
        ));
        assert!(matches!(
            tb.skipped[1].error,
            ConlluError::ColumnCount { line: 3, found: 8 }
        ));
        assert!(matches!(
            tb.skipped[2].error,
            ConlluError::Tree { line: 5, .. }
        ));
        assert_eq!(tb.skipped[2].error.line(), Some(5));
    }

    #[test]
    fn writes_single_token() {
        let tree = DepTree::new(vec![0], vec!["hi".into()], vec!["root".into()]).unwrap();
        let tb = Treebank::from_trees([tree]);
        assert_eq!(write_conllu(&tb), "1\thi\t_\t_\t_\t_\t0\troot\t_\t_\n\n");
    }

    #[test]
    fn round_trip() {
        let tb = parse_conllu(TWO_WORDS);
        let again = parse_conllu(&write_conllu(&tb));
        assert_eq!(tb.sentences, again.sentences);
    }
}
