//! Template dictionary, nearest-template matching and the two-hand sum rule.
//!
//! Template files are line-oriented text:
//!
//! ```text
//! # comment
//! <label> <c1> ... <c15> [signer=<tag>] [hand=<l|r>]
//! ```

use std::fmt::Write as _;
use std::fs;
use std::path::Path;

use thiserror::Error;

use crate::descriptors::{FourierDescriptor, DEFAULT_COEFFICIENTS};
use crate::geometry::HandSide;
use crate::scalar::Scalar;

#[derive(Debug, Error)]
pub enum ClassifyError {
    #[error("template set is empty")]
    EmptyTemplateSet,
    #[error("best match distance {distance} exceeds rejection limit {limit}")]
    Rejected { distance: f64, limit: f64 },
    #[error("line {line}: {message}")]
    ParseError { line: usize, message: String },
    #[error("line {line}: label {label} outside 1..=5")]
    BadLabel { line: usize, label: String },
    #[error("line {line}: expected {expected} coefficients, found {found}")]
    BadCoefficientCount { line: usize, expected: usize, found: usize },
    #[error("i/o failure: {0}")]
    Io(#[from] std::io::Error),
}

#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub enum HandTag {
    Left,
    Right,
    Unknown,
}

impl From<HandSide> for HandTag {
    fn from(side: HandSide) -> Self {
        match side {
            HandSide::Left => HandTag::Left,
            HandSide::Right => HandTag::Right,
            HandSide::Only => HandTag::Unknown,
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct GestureTemplate<T> {
    /// Finger count 1 to 5.
    pub label: u8,
    pub descriptor: FourierDescriptor<T>,
    pub signer: Option<String>,
    pub hand: HandTag,
}

#[derive(Clone, Debug, PartialEq, Default)]
pub struct TemplateSet<T> {
    pub templates: Vec<GestureTemplate<T>>,
}

impl<T: Scalar> TemplateSet<T> {
    pub fn new(templates: Vec<GestureTemplate<T>>) -> Self {
        Self { templates }
    }

    pub fn len(&self) -> usize {
        self.templates.len()
    }

    pub fn is_empty(&self) -> bool {
        self.templates.is_empty()
    }

    /// Labels in 1..=5 with no template.
    pub fn missing_labels(&self) -> Vec<u8> {
        (1..=5).filter(|l| !self.templates.iter().any(|t| t.label == *l)).collect()
    }

    pub fn to_text(&self) -> String {
        let mut out = String::from("# label c1..cN [signer=tag] [hand=l|r]\n");
        for t in &self.templates {
            let _ = write!(out, "{}", t.label);
            for c in &t.descriptor.coefficients {
                let _ = write!(out, " {c}");
            }
            if let Some(s) = &t.signer {
                let _ = write!(out, " signer={s}");
            }
            match t.hand {
                HandTag::Left => out.push_str(" hand=l"),
                HandTag::Right => out.push_str(" hand=r"),
                HandTag::Unknown => {}
            }
            out.push('\n');
        }
        out
    }

    /// Parses template text expecting `count` coefficients per line.
    pub fn parse(text: &str, count: usize) -> Result<Self, ClassifyError> {
        let mut templates = Vec::new();
        for (i, raw) in text.lines().enumerate() {
            let line = i + 1;
            let body = raw.trim();
            if body.is_empty() || body.starts_with('#') {
                continue;
            }
            let mut tokens = body.split_whitespace();
            let label_tok = tokens.next().expect("nonempty line");
            let label = match label_tok.parse::<u8>() {
                Ok(l @ 1..=5) => l,
                _ => return Err(ClassifyError::BadLabel { line, label: label_tok.to_string() }),
            };
            let mut coefficients = Vec::with_capacity(count);
            let mut signer = None;
            let mut hand = HandTag::Unknown;
            for tok in tokens {
                if let Some(tag) = tok.strip_prefix("signer=") {
                    signer = Some(tag.to_string());
                } else if let Some(h) = tok.strip_prefix("hand=") {
                    hand = match h {
                        "l" => HandTag::Left,
                        "r" => HandTag::Right,
                        _ => {
                            return Err(ClassifyError::ParseError {
                                line,
                                message: format!("bad hand tag {h:?}"),
                            })
                        }
                    };
                } else if signer.is_some() || hand != HandTag::Unknown {
                    return Err(ClassifyError::ParseError {
                        line,
                        message: format!("coefficient {tok:?} after trailing tags"),
                    });
                } else {
                    let v: T = tok.parse().map_err(|_| ClassifyError::ParseError {
                        line,
                        message: format!("bad number {tok:?}"),
                    })?;
                    if !v.is_finite() || v < T::zero() {
                        return Err(ClassifyError::ParseError {
                            line,
                            message: format!("coefficient {tok} must be finite and >= 0"),
                        });
                    }
                    coefficients.push(v);
                }
            }
            if coefficients.len() != count {
                return Err(ClassifyError::BadCoefficientCount {
                    line,
                    expected: count,
                    found: coefficients.len(),
                });
            }
            templates.push(GestureTemplate {
                label,
                descriptor: FourierDescriptor::new(coefficients),
                signer,
                hand,
            });
        }
        Ok(Self { templates })
    }
}

pub fn load_templates<T: Scalar>(path: impl AsRef<Path>) -> Result<TemplateSet<T>, ClassifyError> {
    load_templates_with(path, DEFAULT_COEFFICIENTS)
}

pub fn load_templates_with<T: Scalar>(
    path: impl AsRef<Path>,
    count: usize,
) -> Result<TemplateSet<T>, ClassifyError> {
    TemplateSet::parse(&fs::read_to_string(path)?, count)
}

pub fn save_templates<T: Scalar>(set: &TemplateSet<T>, path: impl AsRef<Path>) -> Result<(), ClassifyError> {
    fs::write(path, set.to_text())?;
    Ok(())
}

/// Euclidean distance between two descriptors of equal length.
pub fn euclidean<T: Scalar>(a: &FourierDescriptor<T>, b: &FourierDescriptor<T>) -> T {
    debug_assert_eq!(a.len(), b.len());
    a.coefficients
        .iter()
        .zip(&b.coefficients)
        .map(|(&x, &y)| (x - y) * (x - y))
        .sum::<T>()
        .sqrt()
}

/// A matched hand: its label, distance to the best template, and side.
#[derive(Copy, Clone, Debug, PartialEq)]
pub struct ClassifiedHand<T> {
    pub label: u8,
    pub distance: T,
    pub side: HandSide,
}

/// Nearest template by Euclidean distance. Ties go to the lower label,
/// then to the template earlier in the set.
pub fn classify_hand<T: Scalar>(
    d: &FourierDescriptor<T>,
    set: &TemplateSet<T>,
) -> Result<(u8, T), ClassifyError> {
    let mut best: Option<(u8, T)> = None;
    for t in &set.templates {
        let dist = euclidean(d, &t.descriptor);
        best = match best {
            Some((label, bd)) if bd < dist || (bd == dist && label <= t.label) => Some((label, bd)),
            _ => Some((t.label, dist)),
        };
    }
    best.ok_or(ClassifyError::EmptyTemplateSet)
}

/// [`classify_hand`] with an optional rejection limit on the match distance.
pub fn classify_hand_within<T: Scalar>(
    d: &FourierDescriptor<T>,
    set: &TemplateSet<T>,
    max_distance: Option<T>,
) -> Result<(u8, T), ClassifyError> {
    let (label, distance) = classify_hand(d, set)?;
    match max_distance {
        Some(limit) if distance > limit => {
            Err(ClassifyError::Rejected { distance: distance.as_f64(), limit: limit.as_f64() })
        }
        _ => Ok((label, distance)),
    }
}

#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub enum RecognitionMode {
    Single,
    Both,
}

#[derive(Clone, Debug, PartialEq)]
pub struct RecognitionResult<T> {
    pub number: u8,
    /// Left hand first.
    pub hands: Vec<ClassifiedHand<T>>,
    pub mode: RecognitionMode,
}

/// Combines one or two classified hands: a single hand passes its label
/// through, two hands are summed.
///
/// # Panics
/// Unless given one or two hands.
pub fn combine<T: Scalar>(hands: &[ClassifiedHand<T>]) -> RecognitionResult<T> {
    match hands {
        [one] => RecognitionResult { number: one.label, hands: vec![*one], mode: RecognitionMode::Single },
        [a, b] => {
            let mut pair = vec![*a, *b];
            pair.sort_by_key(|h| h.side);
            RecognitionResult { number: a.label + b.label, hands: pair, mode: RecognitionMode::Both }
        }
        _ => panic!("combine needs one or two hands, got {}", hands.len()),
    }
}
