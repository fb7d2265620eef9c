//! Basic board vocabulary: colors, piece kinds, squares and board dimensions.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::PositionError;

/// Smallest supported number of files or ranks.
pub const MIN_DIM: u8 = 4;
/// Largest number of files (file letters run a..z).
pub const MAX_FILES: u8 = 26;
/// Largest number of ranks.
pub const MAX_RANKS: u8 = 64;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Color {
    White,
    Black,
}

impl Color {
    #[inline]
    pub fn opposite(self) -> Color {
        match self {
            Color::White => Color::Black,
            Color::Black => Color::White,
        }
    }

    #[inline]
    pub fn index(self) -> usize {
        self as usize
    }

    /// Rank direction in which this color's pawns advance.
    #[inline]
    pub fn pawn_dir(self) -> i8 {
        match self {
            Color::White => 1,
            Color::Black => -1,
        }
    }
}

impl fmt::Display for Color {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Color::White => "white",
            Color::Black => "black",
        })
    }
}

/// The six orthodox piece kinds. The declaration order doubles as the
/// promotion order used by the canonical move ordering (Q < R < B < N).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum PieceKind {
    King,
    Queen,
    Rook,
    Bishop,
    Knight,
    Pawn,
}

impl PieceKind {
    pub const ALL: [PieceKind; 6] = [
        PieceKind::King,
        PieceKind::Queen,
        PieceKind::Rook,
        PieceKind::Bishop,
        PieceKind::Knight,
        PieceKind::Pawn,
    ];

    pub const PROMOTIONS: [PieceKind; 4] = [
        PieceKind::Queen,
        PieceKind::Rook,
        PieceKind::Bishop,
        PieceKind::Knight,
    ];

    /// Upper-case letter (K, Q, R, B, N, P).
    pub fn letter(self) -> char {
        match self {
            PieceKind::King => 'K',
            PieceKind::Queen => 'Q',
            PieceKind::Rook => 'R',
            PieceKind::Bishop => 'B',
            PieceKind::Knight => 'N',
            PieceKind::Pawn => 'P',
        }
    }

    pub fn from_letter(c: char) -> Option<PieceKind> {
        Some(match c.to_ascii_uppercase() {
            'K' => PieceKind::King,
            'Q' => PieceKind::Queen,
            'R' => PieceKind::Rook,
            'B' => PieceKind::Bishop,
            'N' => PieceKind::Knight,
            'P' => PieceKind::Pawn,
            _ => return None,
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Piece {
    pub color: Color,
    pub kind: PieceKind,
}

impl Piece {
    pub const fn new(color: Color, kind: PieceKind) -> Piece {
        Piece { color, kind }
    }

    /// FEN letter: upper case for White, lower case for Black.
    pub fn fen_char(self) -> char {
        let c = self.kind.letter();
        match self.color {
            Color::White => c,
            Color::Black => c.to_ascii_lowercase(),
        }
    }

    pub fn from_fen_char(c: char) -> Option<Piece> {
        let kind = PieceKind::from_letter(c)?;
        let color = if c.is_ascii_uppercase() {
            Color::White
        } else {
            Color::Black
        };
        Some(Piece { color, kind })
    }

    /// Compact non-zero code used in state keys.
    pub(crate) fn code(self) -> u8 {
        1 + self.kind as u8 + 6 * self.color as u8
    }

    pub(crate) fn from_code(code: u8) -> Option<Piece> {
        if code == 0 || code > 12 {
            return None;
        }
        let c = code - 1;
        let color = if c >= 6 { Color::Black } else { Color::White };
        Some(Piece::new(color, PieceKind::ALL[(c % 6) as usize]))
    }
}

/// A board square, 1-based on both axes. Ordered by file, then rank.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Square {
    pub file: u8,
    pub rank: u8,
}

impl Square {
    pub const fn new(file: u8, rank: u8) -> Square {
        Square { file, rank }
    }

    /// Shift by a signed offset; `None` when the result leaves `size`.
    #[inline]
    pub fn offset(self, df: i8, dr: i8, size: BoardSize) -> Option<Square> {
        let f = self.file as i16 + df as i16;
        let r = self.rank as i16 + dr as i16;
        if f < 1 || r < 1 || f > size.files as i16 || r > size.ranks as i16 {
            None
        } else {
            Some(Square::new(f as u8, r as u8))
        }
    }

    pub fn file_char(self) -> char {
        (b'a' + self.file - 1) as char
    }
}

impl fmt::Display for Square {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}", self.file_char(), self.rank)
    }
}

impl FromStr for Square {
    type Err = PositionError;

    fn from_str(s: &str) -> Result<Square, PositionError> {
        let bad = || PositionError::BadSquare(s.to_string());
        let mut chars = s.chars();
        let file = chars
            .next()
            .filter(|c| c.is_ascii_lowercase())
            .ok_or_else(bad)?;
        let digits = chars.as_str();
        if digits.is_empty()
            || !digits.bytes().all(|b| b.is_ascii_digit())
            || digits.starts_with('0')
        {
            return Err(bad());
        }
        let rank: u8 = digits.parse().map_err(|_| bad())?;
        if rank > MAX_RANKS {
            return Err(bad());
        }
        Ok(Square::new(file as u8 - b'a' + 1, rank))
    }
}

impl Serialize for Square {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Square {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Square, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// Board dimensions: `files` columns by `ranks` rows.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct BoardSize {
    pub files: u8,
    pub ranks: u8,
}

impl BoardSize {
    pub const STANDARD: BoardSize = BoardSize { files: 8, ranks: 8 };

    pub fn new(files: u8, ranks: u8) -> Result<BoardSize, PositionError> {
        if !(MIN_DIM..=MAX_FILES).contains(&files) || !(MIN_DIM..=MAX_RANKS).contains(&ranks) {
            return Err(PositionError::BadSize { files, ranks });
        }
        Ok(BoardSize { files, ranks })
    }

    #[inline]
    pub fn contains(self, sq: Square) -> bool {
        sq.file >= 1 && sq.rank >= 1 && sq.file <= self.files && sq.rank <= self.ranks
    }

    #[inline]
    pub fn area(self) -> usize {
        self.files as usize * self.ranks as usize
    }

    #[inline]
    pub(crate) fn index(self, sq: Square) -> usize {
        (sq.rank as usize - 1) * self.files as usize + (sq.file as usize - 1)
    }

    #[inline]
    pub(crate) fn square(self, idx: usize) -> Square {
        let f = self.files as usize;
        Square::new((idx % f) as u8 + 1, (idx / f) as u8 + 1)
    }

    /// All squares in canonical (file, rank) order.
    pub fn squares(self) -> impl Iterator<Item = Square> {
        (1..=self.files).flat_map(move |f| (1..=self.ranks).map(move |r| Square::new(f, r)))
    }

    /// Vertical mirror of a square (rank r maps to R + 1 - r).
    pub fn mirror(self, sq: Square) -> Square {
        Square::new(sq.file, self.ranks + 1 - sq.rank)
    }

    /// The rank on which pawns of `color` promote.
    pub fn promotion_rank(self, color: Color) -> u8 {
        match color {
            Color::White => self.ranks,
            Color::Black => 1,
        }
    }

    /// The rank from which pawns of `color` may double-step.
    pub fn pawn_start_rank(self, color: Color) -> u8 {
        match color {
            Color::White => 2,
            Color::Black => self.ranks - 1,
        }
    }
}

impl fmt::Display for BoardSize {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}x{}", self.files, self.ranks)
    }
}

impl FromStr for BoardSize {
    type Err = PositionError;

    fn from_str(s: &str) -> Result<BoardSize, PositionError> {
        let bad = || PositionError::BadSizeText(s.to_string());
        let (f, r) = s.split_once(['x', 'X']).ok_or_else(bad)?;
        let files: u8 = f.parse().map_err(|_| bad())?;
        let ranks: u8 = r.parse().map_err(|_| bad())?;
        BoardSize::new(files, ranks)
    }
}
