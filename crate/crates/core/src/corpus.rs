//! Sentence corpora and text sampling.

use alloc::string::{String, ToString};
use alloc::vec::Vec;

use rand::Rng;

/// Newline-delimited sentences in any language.
///
/// Sentences are trimmed, never empty, and contain no control characters;
/// tabs are read as spaces.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TextCorpus {
    sentences: Vec<String>,
    language_tag: String,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum CorpusError {
    #[error("line {line}: invalid UTF-8")]
    InvalidUtf8 { line: usize },
    #[error("line {line}: control character U+{code:04X}")]
    ControlCharacter { line: usize, code: u32 },
    #[error("corpus has no usable lines")]
    Empty,
}

impl CorpusError {
    /// 1-based line the error refers to, if any.
    pub fn line(&self) -> Option<usize> {
        match self {
            CorpusError::InvalidUtf8 { line } | CorpusError::ControlCharacter { line, .. } => Some(*line),
            CorpusError::Empty => None,
        }
    }
}

impl TextCorpus {
    /// Parses raw file contents, one sentence per line.
    pub fn parse(bytes: &[u8], language_tag: &str) -> Result<Self, CorpusError> {
        let mut sentences = Vec::new();
        for (i, raw) in bytes.split(|&b| b == b'\n').enumerate() {
            let line = i + 1;
            let text = core::str::from_utf8(raw).map_err(|_| CorpusError::InvalidUtf8 { line })?;
            let text = text.strip_suffix('\r').unwrap_or(text);
            if let Some(c) = text.chars().find(|c| c.is_control() && *c != '\t') {
                return Err(CorpusError::ControlCharacter { line, code: c as u32 });
            }
            let cleaned = text.replace('\t', " ");
            let trimmed = cleaned.trim();
            if !trimmed.is_empty() {
                sentences.push(trimmed.to_string());
            }
        }
        Self::from_sentences(sentences, language_tag)
    }

    pub fn from_sentences(sentences: Vec<String>, language_tag: &str) -> Result<Self, CorpusError> {
        if sentences.is_empty() {
            return Err(CorpusError::Empty);
        }
        Ok(Self {
            sentences,
            language_tag: language_tag.to_string(),
        })
    }

    pub fn sentences(&self) -> &[String] {
        &self.sentences
    }

    pub fn language_tag(&self) -> &str {
        &self.language_tag
    }

    pub fn len(&self) -> usize {
        self.sentences.len()
    }

    pub fn is_empty(&self) -> bool {
        self.sentences.is_empty()
    }
}

/// Samples running text of at least `target_chars` characters.
///
/// Starts at a uniformly drawn sentence and walks forward through
/// consecutive sentences (wrapping at the end of the corpus), taking whole
/// words until the text reaches `target_chars`. The result never ends inside
/// a word, so it exceeds the target by less than one word. Words are joined
/// by single spaces.
pub fn sample_text<R: Rng + ?Sized>(corpus: &TextCorpus, rng: &mut R, target_chars: usize) -> String {
    let target = target_chars.max(1);
    let n = corpus.sentences.len();
    let start = rng.gen_range(0..n);
    let mut out = String::new();
    let mut len = 0usize;
    for sentence in corpus.sentences.iter().cycle().skip(start) {
        for word in sentence.split_whitespace() {
            if len > 0 {
                out.push(' ');
                len += 1;
            }
            out.push_str(word);
            len += word.chars().count();
            if len >= target {
                return out;
            }
        }
    }
    unreachable!("corpus sentences are non-empty")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::seed;

    #[test]
    fn blank_lines_dropped() {
        let c = TextCorpus::parse(b"one two\n\n  \nthree\r\n", "en").unwrap();
        assert_eq!(c.sentences(), &["one two".to_string(), "three".to_string()]);
    }

    #[test]
    fn invalid_utf8_reports_line() {
        let err = TextCorpus::parse(b"ok\nfine\nbad \xff\xfe here\n", "en").unwrap_err();
        assert_eq!(err, CorpusError::InvalidUtf8 { line: 3 });
        assert_eq!(err.line(), Some(3));
    }

    #[test]
    fn control_characters_rejected() {
        let err = TextCorpus::parse(b"a\x07b", "en").unwrap_err();
        assert!(matches!(err, CorpusError::ControlCharacter { line: 1, code: 7 }));
    }

    #[test]
    fn empty_corpus_rejected() {
        assert_eq!(TextCorpus::parse(b"\n \n", "en"), Err(CorpusError::Empty));
    }

    #[test]
    fn target_one_returns_first_word_of_a_sentence() {
        let c = TextCorpus::parse("xin chào bạn\nhello world\nmột hai ba".as_bytes(), "vi").unwrap();
        let firsts = ["xin", "hello", "một"];
        for s in 0..20 {
            let t = sample_text(&c, &mut seed::stream(s, 0), 1);
            assert!(firsts.contains(&t.as_str()), "{t}");
        }
    }

    #[test]
    fn wraps_around_short_corpus() {
        let c = TextCorpus::parse(b"a b\nc", "en").unwrap();
        let t = sample_text(&c, &mut seed::stream(3, 0), 20);
        assert!(t.chars().count() >= 20);
    }
}
