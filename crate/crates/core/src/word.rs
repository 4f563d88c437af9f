//! Words over the generators of a graph: elements of the free monoid.

use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::set::{VertexSet, MAX_VERTICES};

/// Default cap on word length for operations that build longer words.
pub const DEFAULT_MAX_WORD_LEN: usize = 10_000;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum WordError {
    #[error("invalid letter `{0}`")]
    InvalidLetter(String),
    #[error("letter {letter} out of range 1..={n}")]
    LetterOutOfRange { letter: usize, n: usize },
    #[error("word length {len} exceeds limit {limit}")]
    TooLong { len: usize, limit: usize },
}

/// A finite sequence of 1-based generator indices. The empty word is the
/// unit.
#[derive(Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Word(Vec<u8>);

impl Word {
    pub fn empty() -> Self {
        Word(Vec::new())
    }

    pub fn letter(v: usize) -> Self {
        Word(vec![to_letter(v)])
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn letters(&self) -> impl ExactSizeIterator<Item = usize> + '_ {
        self.0.iter().map(|&l| l as usize)
    }

    pub fn get(&self, i: usize) -> usize {
        self.0[i] as usize
    }

    pub(crate) fn raw(&self) -> &[u8] {
        &self.0
    }

    pub(crate) fn from_raw(raw: Vec<u8>) -> Self {
        Word(raw)
    }

    /// The set of letters occurring in the word.
    pub fn content(&self) -> VertexSet {
        self.letters().collect()
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut raw = Vec::with_capacity(self.len() + other.len());
        raw.extend_from_slice(&self.0);
        raw.extend_from_slice(&other.0);
        Word(raw)
    }

    pub fn reversed(&self) -> Word {
        Word(self.0.iter().rev().copied().collect())
    }

    /// Copy of the word with position `i` deleted.
    pub fn without(&self, i: usize) -> Word {
        let mut raw = self.0.clone();
        raw.remove(i);
        Word(raw)
    }

    /// Errors unless every letter lies in `[n]`.
    pub fn check_alphabet(&self, n: usize) -> Result<(), WordError> {
        match self.letters().find(|&l| l > n) {
            Some(letter) => Err(WordError::LetterOutOfRange { letter, n }),
            None => Ok(()),
        }
    }

    pub fn check_len(&self, limit: usize) -> Result<(), WordError> {
        if self.len() > limit {
            Err(WordError::TooLong {
                len: self.len(),
                limit,
            })
        } else {
            Ok(())
        }
    }

    /// Whether `self` embeds into `w` as a (not necessarily contiguous)
    /// subsequence.
    pub fn is_quasi_subword_of(&self, w: &Word) -> bool {
        let mut rest = w.0.iter();
        self.0.iter().all(|l| rest.any(|m| m == l))
    }
}

fn to_letter(v: usize) -> u8 {
    assert!((1..=MAX_VERTICES).contains(&v), "letter {v} out of range");
    v as u8
}

impl FromIterator<usize> for Word {
    fn from_iter<I: IntoIterator<Item = usize>>(iter: I) -> Self {
        Word(iter.into_iter().map(to_letter).collect())
    }
}

impl From<Vec<usize>> for Word {
    fn from(v: Vec<usize>) -> Self {
        v.into_iter().collect()
    }
}

impl<const K: usize> From<[usize; K]> for Word {
    fn from(v: [usize; K]) -> Self {
        v.into_iter().collect()
    }
}

/// Letters separated by single spaces; the unit prints as the empty string.
impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (k, l) in self.0.iter().enumerate() {
            if k > 0 {
                write!(f, " ")?;
            }
            write!(f, "{l}")?;
        }
        Ok(())
    }
}

impl fmt::Debug for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({})", self.0.iter().map(|l| l.to_string()).collect::<Vec<_>>().join(","))
    }
}

/// Whitespace- or comma-separated indices; the empty string is the unit.
impl FromStr for Word {
    type Err = WordError;

    fn from_str(s: &str) -> Result<Self, WordError> {
        s.split(|c: char| c == ',' || c.is_whitespace())
            .filter(|t| !t.is_empty())
            .map(|tok| {
                let v: usize = tok
                    .parse()
                    .map_err(|_| WordError::InvalidLetter(tok.to_string()))?;
                if (1..=MAX_VERTICES).contains(&v) {
                    Ok(v as u8)
                } else {
                    Err(WordError::LetterOutOfRange {
                        letter: v,
                        n: MAX_VERTICES,
                    })
                }
            })
            .collect::<Result<Vec<_>, _>>()
            .map(Word)
    }
}
