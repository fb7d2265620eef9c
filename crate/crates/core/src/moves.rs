//! Moves and the coordinate move text used for input and output.
//!
//! Move text is `<Piece><from><-|x><to>[=<QRBN>][+|#]`, for example
//! `Qa5-c3+`, `Pf8xe7#` or `Pc7-c8=N`. The piece letter is always upper
//! case; the colour follows from the position.

use std::fmt;

use crate::error::MoveError;
use crate::position::Position;
use crate::types::{PieceKind, Square};

/// A move. The derived ordering is the canonical move order:
/// origin (file, rank), destination (file, rank), then promotion Q < R < B < N.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Move {
    pub from: Square,
    pub to: Square,
    pub promotion: Option<PieceKind>,
    pub is_capture: bool,
    pub is_en_passant: bool,
}

impl Move {
    pub fn quiet(from: Square, to: Square) -> Move {
        Move {
            from,
            to,
            promotion: None,
            is_capture: false,
            is_en_passant: false,
        }
    }

    /// Whether `self` names the same from/to/promotion triple as `other`.
    pub fn same_path(&self, other: &Move) -> bool {
        self.from == other.from && self.to == other.to && self.promotion == other.promotion
    }
}

/// Context-free rendering without piece letter or check marks (`c7c8=N`).
impl fmt::Display for Move {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{}{}{}",
            self.from,
            if self.is_capture { 'x' } else { '-' },
            self.to
        )?;
        if let Some(p) = self.promotion {
            write!(f, "={}", p.letter())?;
        }
        Ok(())
    }
}

/// Parsed but unresolved move text.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct MoveText {
    pub piece: Option<PieceKind>,
    pub from: Square,
    pub to: Square,
    pub capture: Option<bool>,
    pub promotion: Option<PieceKind>,
}

impl MoveText {
    pub fn parse(text: &str) -> Result<MoveText, MoveError> {
        let err = || MoveError::Parse(text.to_string());
        let s = text.trim();
        let s = s.trim_end_matches(['+', '#', '!', '?']);
        let mut rest = s;

        let mut piece = None;
        if let Some(c) = rest.chars().next() {
            if c.is_ascii_uppercase() {
                piece = Some(PieceKind::from_letter(c).ok_or_else(err)?);
                rest = &rest[1..];
            }
        }
        let (from, after) = take_square(rest).ok_or_else(err)?;
        rest = after;
        let mut capture = None;
        if let Some(r) = rest.strip_prefix('-') {
            capture = Some(false);
            rest = r;
        } else if let Some(r) = rest.strip_prefix('x') {
            capture = Some(true);
            rest = r;
        }
        let (to, after) = take_square(rest).ok_or_else(err)?;
        rest = after;
        let rest = rest.strip_prefix('=').unwrap_or(rest);
        let promotion = match rest {
            "" => None,
            p if p.len() == 1 => {
                let kind = PieceKind::from_letter(p.chars().next().unwrap()).ok_or_else(err)?;
                if !PieceKind::PROMOTIONS.contains(&kind) {
                    return Err(err());
                }
                Some(kind)
            }
            _ => return Err(err()),
        };
        Ok(MoveText {
            piece,
            from,
            to,
            capture,
            promotion,
        })
    }
}

fn take_square(s: &str) -> Option<(Square, &str)> {
    let bytes = s.as_bytes();
    if bytes.is_empty() || !bytes[0].is_ascii_lowercase() {
        return None;
    }
    let digits = bytes[1..].iter().take_while(|b| b.is_ascii_digit()).count();
    if digits == 0 {
        return None;
    }
    let sq = s[..1 + digits].parse().ok()?;
    Some((sq, &s[1 + digits..]))
}

impl Position {
    /// Full move text including piece letter and `+`/`#` marker.
    pub fn move_text(&self, m: &Move) -> String {
        let kind = self
            .piece_at(m.from)
            .map(|p| p.kind)
            .unwrap_or(PieceKind::Pawn);
        let mut s = format!("{}{}", kind.letter(), m);
        let next = self.apply_unchecked(m);
        if next.is_check() {
            s.push(if next.has_legal_move() { '+' } else { '#' });
        }
        s
    }

    /// Resolve move text against the legal moves of this position.
    pub fn parse_move(&self, text: &str) -> Result<Move, MoveError> {
        let mt = MoveText::parse(text)?;
        let illegal = || MoveError::Illegal(text.trim().to_string());
        let piece = self.piece_at(mt.from).ok_or_else(illegal)?;
        if mt.piece.is_some_and(|k| k != piece.kind) {
            return Err(illegal());
        }
        let m = self
            .legal_moves()
            .into_iter()
            .find(|m| m.from == mt.from && m.to == mt.to && m.promotion == mt.promotion)
            .ok_or_else(illegal)?;
        if mt.capture.is_some_and(|c| c != m.is_capture) {
            return Err(illegal());
        }
        Ok(m)
    }
}
