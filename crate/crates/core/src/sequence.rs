//! Power sequences: words over `{a, b, t}` whose exponents are power
//! circuits, so a short sequence can denote an astronomically long word.

use num_bigint::BigInt;
use num_traits::Signed;

use crate::circuit::PowerCircuit;
use crate::error::Error;

/// Generator of the Baumslag group presentation. Inverses are expressed by
/// negative exponents, not separate letters.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Letter {
    A,
    B,
    T,
}

impl Letter {
    pub fn as_char(self) -> char {
        match self {
            Letter::A => 'a',
            Letter::B => 'b',
            Letter::T => 't',
        }
    }
}

/// A word `x_1^{N(P_1)} … x_n^{N(P_n)}` as a list of letter/exponent pairs.
#[derive(Debug, Clone, Default)]
pub struct PowerSequence {
    entries: Vec<(Letter, PowerCircuit)>,
}

impl PowerSequence {
    pub fn new() -> Self {
        PowerSequence { entries: Vec::new() }
    }

    pub fn from_entries(entries: Vec<(Letter, PowerCircuit)>) -> Self {
        PowerSequence { entries }
    }

    pub fn push(&mut self, letter: Letter, exponent: PowerCircuit) {
        self.entries.push((letter, exponent));
    }

    pub fn entries(&self) -> &[(Letter, PowerCircuit)] {
        &self.entries
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// Total number of marked vertices across all exponent circuits (the
    /// measure `M` of the sequence).
    pub fn total_marks(&self) -> usize {
        self.entries.iter().map(|(_, p)| p.mark_count()).sum()
    }

    /// Total number of vertices across all exponent circuits (the measure
    /// `V` of the sequence).
    pub fn total_vertices(&self) -> usize {
        self.entries.iter().map(|(_, p)| p.vertex_count()).sum()
    }

    /// Letter length `Σ |N(P_i)|` of the denoted word.
    pub fn letter_len(&self, bit_budget: u64) -> Result<BigInt, Error> {
        let mut total = BigInt::from(0);
        for (_, p) in &self.entries {
            total += p.eval(bit_budget)?.abs();
        }
        Ok(total)
    }

    /// Formal inverse: entries reversed with exponents negated.
    pub fn inverse(&self) -> PowerSequence {
        PowerSequence {
            entries: self
                .entries
                .iter()
                .rev()
                .map(|(l, p)| (*l, p.negate()))
                .collect(),
        }
    }

    /// Concatenation.
    pub fn concat(&self, other: &PowerSequence) -> PowerSequence {
        let mut entries = self.entries.clone();
        entries.extend(other.entries.iter().cloned());
        PowerSequence { entries }
    }

    /// Parses a word. Tokens are whitespace-separated `a|b|t` (uppercase for
    /// the inverse) with an optional `^<signed decimal>` exponent; `a^-2`
    /// and `A^2` are the same. Free reduction is *not* applied.
    pub fn parse(text: &str) -> Result<PowerSequence, Error> {
        let err = |offset: usize, msg: &str| Error::WordParse {
            offset,
            msg: msg.to_string(),
        };
        let mut entries = Vec::new();
        let mut rest = text;
        let mut offset = 0;
        loop {
            let trimmed = rest.trim_start();
            offset += rest.len() - trimmed.len();
            if trimmed.is_empty() {
                break;
            }
            let end = trimmed
                .find(char::is_whitespace)
                .unwrap_or(trimmed.len());
            let token = &trimmed[..end];

            let mut chars = token.chars();
            let head = chars.next().unwrap();
            let (letter, inverted) = match head {
                'a' => (Letter::A, false),
                'b' => (Letter::B, false),
                't' => (Letter::T, false),
                'A' => (Letter::A, true),
                'B' => (Letter::B, true),
                'T' => (Letter::T, true),
                _ => return Err(err(offset, "expected a letter a, b or t")),
            };
            let tail = chars.as_str();
            let exponent: i64 = if tail.is_empty() {
                1
            } else {
                let digits = tail
                    .strip_prefix('^')
                    .ok_or_else(|| err(offset + 1, "expected `^` before exponent"))?;
                digits
                    .parse()
                    .map_err(|_| err(offset + 2, "invalid exponent"))?
            };
            let exponent = if inverted { -exponent } else { exponent };
            entries.push((letter, PowerCircuit::constant(exponent)));
            rest = &trimmed[end..];
            offset += end;
        }
        Ok(PowerSequence { entries })
    }

    /// Renders the word back to text, evaluating every exponent. Exponent 1
    /// prints as the bare letter. Fails with [`Error::BudgetExceeded`] when
    /// an exponent does not fit the budget (write the circuit file instead).
    pub fn to_word_string(&self, bit_budget: u64) -> Result<String, Error> {
        let mut parts = Vec::with_capacity(self.entries.len());
        for (letter, p) in &self.entries {
            let n = p.eval(bit_budget)?;
            if n == BigInt::from(1) {
                parts.push(letter.as_char().to_string());
            } else {
                parts.push(format!("{}^{}", letter.as_char(), n));
            }
        }
        Ok(parts.join(" "))
    }

    /// Free reduction of the sequence: merges adjacent equal letters by
    /// adding their exponent circuits (collapsing zero vertices, not fully
    /// reducing) and removes zero-exponent entries, cascading to a fixpoint
    /// in one pass. The result denotes the same free-group element.
    ///
    /// Exponent circuits must satisfy the integrality invariant.
    pub fn reduce(&self) -> PowerSequence {
        let mut stack: Vec<(Letter, PowerCircuit)> = Vec::with_capacity(self.entries.len());
        for (letter, p) in &self.entries {
            if p.is_zero().expect("valid exponent circuit") {
                continue;
            }
            let mut merged = p.clone();
            let mut letter = *letter;
            loop {
                match stack.last() {
                    Some((top, _)) if *top == letter => {
                        let (_, prev) = stack.pop().unwrap();
                        merged = prev.add(&merged).collapse_zero_vertices();
                        if merged.is_zero().expect("valid exponent circuit") {
                            // The pair cancelled; the neighbours may now merge.
                            match stack.pop() {
                                Some((l, p)) => {
                                    letter = l;
                                    merged = p;
                                }
                                None => break,
                            }
                        }
                    }
                    _ => {
                        stack.push((letter, merged));
                        break;
                    }
                }
            }
        }
        PowerSequence { entries: stack }
    }
}
