//! Braid words in the Artin generators and the moves applied to them.

use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BraidError {
    #[error("invalid token `{0}`: expected a nonzero integer")]
    BadToken(String),
    #[error("zero is not a generator letter")]
    ZeroLetter,
    #[error("letter {letter} out of range for {strands} strands")]
    LetterOutOfRange { letter: i32, strands: usize },
    #[error("strand count must be positive")]
    NoStrands,
    #[error("strand counts differ: {0} vs {1}")]
    StrandMismatch(usize, usize),
    #[error("insertion index {index} out of range 0..={len}")]
    IndexOutOfRange { index: usize, len: usize },
    #[error("basepoint ({position}, {gap}) outside 1..={strands} x 0..={len}")]
    BadBasepoint {
        position: usize,
        gap: usize,
        strands: usize,
        len: usize,
    },
}

/// A word in the Artin generators of the braid group on `n` strands.
///
/// Letter `g > 0` is σ_g and `g < 0` is σ_{|g|}^{-1}. Crossing `i` of the
/// closed diagram is letter `i`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct BraidWord {
    strands: usize,
    letters: Vec<i32>,
}

impl BraidWord {
    pub fn new(strands: usize, letters: Vec<i32>) -> Result<Self, BraidError> {
        if strands == 0 {
            return Err(BraidError::NoStrands);
        }
        for &letter in &letters {
            if letter == 0 {
                return Err(BraidError::ZeroLetter);
            }
            if letter.unsigned_abs() as usize >= strands {
                return Err(BraidError::LetterOutOfRange { letter, strands });
            }
        }
        Ok(Self { strands, letters })
    }

    pub fn identity(strands: usize) -> Self {
        assert!(strands > 0, "strand count must be positive");
        Self {
            strands,
            letters: Vec::new(),
        }
    }

    pub fn strands(&self) -> usize {
        self.strands
    }

    pub fn letters(&self) -> &[i32] {
        &self.letters
    }

    pub fn crossings(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    /// Number of positive letters.
    pub fn positive_count(&self) -> usize {
        self.letters.iter().filter(|&&g| g > 0).count()
    }

    /// Number of negative letters.
    pub fn negative_count(&self) -> usize {
        self.letters.iter().filter(|&&g| g < 0).count()
    }

    /// The word of the inverse braid.
    pub fn inverse(&self) -> Self {
        Self {
            strands: self.strands,
            letters: self.letters.iter().rev().map(|g| -g).collect(),
        }
    }

    /// Concatenation `self · other`.
    pub fn concat(&self, other: &BraidWord) -> Result<Self, BraidError> {
        if self.strands != other.strands {
            return Err(BraidError::StrandMismatch(self.strands, other.strands));
        }
        let mut letters = self.letters.clone();
        letters.extend_from_slice(&other.letters);
        Ok(Self {
            strands: self.strands,
            letters,
        })
    }

    /// Space-separated letters; the empty word prints as the empty string.
    pub fn normalized_text(&self) -> String {
        self.letters.iter().map(|g| g.to_string()).collect::<Vec<_>>().join(" ")
    }
}

impl fmt::Display for BraidWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} : {}", self.strands, self.normalized_text())
    }
}

/// A point on the closed diagram: strand position `position` (1-based) in the
/// vertical segment between letters `gap` and `gap + 1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct BasepointAddress {
    pub position: usize,
    pub gap: usize,
}

impl BasepointAddress {
    pub fn new(braid: &BraidWord, position: usize, gap: usize) -> Result<Self, BraidError> {
        if position == 0 || position > braid.strands() || gap > braid.crossings() {
            return Err(BraidError::BadBasepoint {
                position,
                gap,
                strands: braid.strands(),
                len: braid.crossings(),
            });
        }
        Ok(Self { position, gap })
    }

    /// Every address on the diagram, gap-major.
    pub fn all(braid: &BraidWord) -> Vec<Self> {
        (0..=braid.crossings())
            .flat_map(|gap| (1..=braid.strands()).map(move |position| Self { position, gap }))
            .collect()
    }
}

impl fmt::Display for BasepointAddress {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.position, self.gap)
    }
}

/// Parses whitespace- or comma-separated nonzero integers.
///
/// Without `strands`, the strand count is one more than the largest generator
/// index (1 for the empty word).
pub fn parse_braid(text: &str, strands: Option<usize>) -> Result<BraidWord, BraidError> {
    let letters = text
        .split(|c: char| c.is_whitespace() || c == ',')
        .filter(|t| !t.is_empty())
        .map(|t| t.parse::<i32>().map_err(|_| BraidError::BadToken(t.to_string())))
        .collect::<Result<Vec<_>, _>>()?;
    if letters.contains(&0) {
        return Err(BraidError::ZeroLetter);
    }
    let strands = match strands {
        Some(n) => n,
        None => 1 + letters.iter().map(|g| g.unsigned_abs() as usize).max().unwrap_or(0),
    };
    BraidWord::new(strands, letters)
}

/// a(β), the exponent sum.
pub fn exponent_sum(braid: &BraidWord) -> i64 {
    braid.letters.iter().map(|&g| i64::from(g.signum())).sum()
}

/// Self-linking number of the transverse closure: a(β) − n.
pub fn self_linking(braid: &BraidWord) -> i64 {
    exponent_sum(braid) - braid.strands as i64
}

/// `w · b · w⁻¹`.
pub fn conjugate(braid: &BraidWord, by: &BraidWord) -> Result<BraidWord, BraidError> {
    by.concat(braid)?.concat(&by.inverse())
}

/// Switches every crossing, keeping letter order.
pub fn mirror(braid: &BraidWord) -> BraidWord {
    BraidWord {
        strands: braid.strands,
        letters: braid.letters.iter().map(|g| -g).collect(),
    }
}

/// Inserts σ_n^{±1} at word index `index`, producing an (n+1)-strand braid.
///
/// Indices `0..=c` enumerate the innermost points of the closed diagram up to
/// planar isotopy; 0 and c both land on the closure arc.
pub fn stabilize(braid: &BraidWord, positive: bool, index: usize) -> Result<BraidWord, BraidError> {
    let len = braid.crossings();
    if index > len {
        return Err(BraidError::IndexOutOfRange { index, len });
    }
    let n = braid.strands as i32;
    let mut letters = braid.letters.clone();
    letters.insert(index, if positive { n } else { -n });
    Ok(BraidWord {
        strands: braid.strands + 1,
        letters,
    })
}

/// The transversely non-simple 4-braid pair related by a negative flype:
/// `(A(a,b), B(a,b))`.
pub fn flype_pair(a: u32, b: u32) -> (BraidWord, BraidWord) {
    let power = |g: i32, e: u32| std::iter::repeat_n(g, e as usize);
    let head: Vec<i32> = [3, -2, -2]
        .into_iter()
        .chain(power(3, 2 * a + 2))
        .chain([2, -3])
        .collect();
    let mut left = head.clone();
    left.extend([-1, 2]);
    left.extend(power(1, 2 * b + 2));
    let mut right = head;
    right.extend(power(1, 2 * b + 2));
    right.extend([2, -1]);
    (
        BraidWord {
            strands: 4,
            letters: left,
        },
        BraidWord {
            strands: 4,
            letters: right,
        },
    )
}
