//! The terminal gadgets of the reduction: checkmate, reflexmate, selfmate
//! and semi-reflexmate. Gadgets can be placed at any anchor on any board
//! large enough to hold them, merged into other positions and checked by a
//! verification battery.
//!
//! Black variants of the checkmate and reflexmate gadgets are the white
//! figures mirrored vertically inside their footprint with colours swapped.

mod figures;
mod verify;

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{GadgetError, PositionError};
use crate::moves::Move;
use crate::position::Position;
use crate::stipulation::StipulationKind;
use crate::types::{BoardSize, Color, Piece, PieceKind, Square};
use crate::xfen::serialize_xfen;

use figures::Figure;
pub use figures::ReplyRule;
pub use verify::{verify_gadget, verify_gadget_at, CheckResult, VerificationReport};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum GadgetKind {
    CheckmateWhite,
    CheckmateBlack,
    ReflexmateWhite,
    ReflexmateBlack,
    Selfmate,
    SemiReflexmate,
}

impl GadgetKind {
    pub const ALL: [GadgetKind; 6] = [
        GadgetKind::CheckmateWhite,
        GadgetKind::CheckmateBlack,
        GadgetKind::ReflexmateWhite,
        GadgetKind::ReflexmateBlack,
        GadgetKind::Selfmate,
        GadgetKind::SemiReflexmate,
    ];

    pub fn name(self) -> &'static str {
        match self {
            GadgetKind::CheckmateWhite => "checkmate_white",
            GadgetKind::CheckmateBlack => "checkmate_black",
            GadgetKind::ReflexmateWhite => "reflexmate_white",
            GadgetKind::ReflexmateBlack => "reflexmate_black",
            GadgetKind::Selfmate => "selfmate",
            GadgetKind::SemiReflexmate => "semi_reflexmate",
        }
    }

    fn figure(self) -> &'static Figure {
        match self {
            GadgetKind::CheckmateWhite | GadgetKind::CheckmateBlack => &figures::CHECKMATE,
            GadgetKind::ReflexmateWhite | GadgetKind::ReflexmateBlack => &figures::REFLEXMATE,
            GadgetKind::Selfmate => &figures::SELFMATE,
            GadgetKind::SemiReflexmate => &figures::SEMI_REFLEXMATE,
        }
    }

    pub fn is_mirrored(self) -> bool {
        matches!(
            self,
            GadgetKind::CheckmateBlack | GadgetKind::ReflexmateBlack
        )
    }

    /// Stipulation under which the gadget is used.
    pub fn stipulation_kind(self) -> StipulationKind {
        match self {
            GadgetKind::CheckmateWhite | GadgetKind::CheckmateBlack => StipulationKind::Direct,
            GadgetKind::ReflexmateWhite | GadgetKind::ReflexmateBlack => StipulationKind::Reflex,
            GadgetKind::Selfmate => StipulationKind::Selfmate,
            GadgetKind::SemiReflexmate => StipulationKind::SemiReflex,
        }
    }

    /// The side that plays the forcing role in the stipulation.
    pub fn forcing_side(self) -> Color {
        if self.is_mirrored() {
            Color::Black
        } else {
            Color::White
        }
    }

    /// Size of the footprint (files, ranks).
    pub fn dimensions(self) -> (u8, u8) {
        let f = self.figure();
        (f.files, f.ranks)
    }

    /// Board the figure is drawn on.
    pub fn figure_board(self) -> BoardSize {
        let (w, h) = self.dimensions();
        BoardSize { files: w, ranks: h }
    }
}

impl fmt::Display for GadgetKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for GadgetKind {
    type Err = GadgetError;

    fn from_str(s: &str) -> Result<GadgetKind, GadgetError> {
        let norm = s.trim().to_ascii_lowercase().replace('-', "_");
        GadgetKind::ALL
            .into_iter()
            .find(|k| k.name() == norm)
            .ok_or_else(|| GadgetError::UnknownKind(s.to_string()))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GadgetEntry {
    /// Colour of the entering queen.
    pub color: Color,
    pub square: Square,
    /// The queen's move followed by the scripted reply, if any.
    pub line: Vec<Move>,
    /// Square of the piece giving the final mate.
    pub attacker: Square,
    pub reply_rule: ReplyRule,
    /// Obtained by symmetry, not drawn in the figure.
    pub derived: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GadgetSpec {
    pub kind: GadgetKind,
    pub anchor: Square,
    pub board: BoardSize,
    pub pieces: BTreeMap<Square, Piece>,
    /// Extra pieces supplying a missing king for standalone verification.
    pub harness: BTreeMap<Square, Piece>,
    /// Gadget pieces that are allowed to move.
    pub exceptions: Vec<Square>,
    pub entries: Vec<GadgetEntry>,
}

/// Build `kind` with its lower-left corner on `anchor`.
pub fn build_gadget(
    kind: GadgetKind,
    anchor: Square,
    board: BoardSize,
) -> Result<GadgetSpec, GadgetError> {
    let fig = kind.figure();
    let fits = anchor.file >= 1
        && anchor.rank >= 1
        && anchor.file as u16 + fig.files as u16 - 1 <= board.files as u16
        && anchor.rank as u16 + fig.ranks as u16 - 1 <= board.ranks as u16;
    if !fits {
        return Err(GadgetError::Overflow {
            width: fig.files,
            height: fig.ranks,
            anchor,
            board: board.to_string(),
        });
    }
    let mirrored = kind.is_mirrored();
    let place = |sq: Square| -> Square {
        let rank = if mirrored {
            fig.ranks + 1 - sq.rank
        } else {
            sq.rank
        };
        Square::new(sq.file + anchor.file - 1, rank + anchor.rank - 1)
    };
    let colour = |c: Color| if mirrored { c.opposite() } else { c };
    let at = |s: &str| place(s.parse::<Square>().expect("figure square"));

    let expand = |list: &[(Color, PieceKind, &str)]| -> BTreeMap<Square, Piece> {
        let mut out = BTreeMap::new();
        for (color, kind, squares) in list {
            for s in squares.split_whitespace() {
                out.insert(at(s), Piece::new(colour(*color), *kind));
            }
        }
        out
    };
    let pieces = expand(fig.pieces);
    let harness = expand(fig.harness);
    let exceptions = fig.exceptions.iter().map(|s| at(s)).collect();

    let mut spec = GadgetSpec {
        kind,
        anchor,
        board,
        pieces,
        harness,
        exceptions,
        entries: Vec::new(),
    };
    for e in fig.entries {
        let raw: Vec<Move> = e
            .line
            .iter()
            .map(|(f, t)| Move::quiet(at(f), at(t)))
            .collect();
        let mut entry = GadgetEntry {
            color: colour(e.color),
            square: at(e.square),
            line: raw,
            attacker: at(e.attacker),
            reply_rule: e.reply_rule,
            derived: e.derived,
        };
        entry.line = spec.resolve_line(&entry);
        spec.entries.push(entry);
    }
    Ok(spec)
}

impl GadgetSpec {
    pub fn dimensions(&self) -> (u8, u8) {
        self.kind.dimensions()
    }

    pub fn footprint(&self) -> Vec<Square> {
        let (w, h) = self.dimensions();
        let mut out = Vec::with_capacity(w as usize * h as usize);
        for f in 0..w {
            for r in 0..h {
                out.push(Square::new(self.anchor.file + f, self.anchor.rank + r));
            }
        }
        out
    }

    pub fn in_footprint(&self, sq: Square) -> bool {
        let (w, h) = self.dimensions();
        sq.file >= self.anchor.file
            && sq.file < self.anchor.file + w
            && sq.rank >= self.anchor.rank
            && sq.rank < self.anchor.rank + h
    }

    /// Gadget plus harness pieces.
    pub fn harnessed_placement(&self) -> BTreeMap<Square, Piece> {
        let mut all = self.pieces.clone();
        all.extend(self.harness.iter().map(|(s, p)| (*s, *p)));
        all
    }

    /// Standalone position of the gadget with its harness.
    pub fn harness_position(&self, side: Color) -> Result<Position, PositionError> {
        Position::new(self.board, self.harnessed_placement(), side, None, 0, 1)
    }

    /// Harness position with the entering queen of entry `i` placed, its
    /// owner to move.
    pub fn entry_position(&self, i: usize) -> Result<Position, GadgetError> {
        let e = &self.entries[i];
        let mut all = self.harnessed_placement();
        if all.contains_key(&e.square) {
            return Err(GadgetError::Collision(e.square));
        }
        all.insert(e.square, Piece::new(e.color, PieceKind::Queen));
        Ok(Position::new(self.board, all, e.color, None, 0, 1)?)
    }

    /// Replace path-only moves by the generator's moves where legal.
    fn resolve_line(&self, e: &GadgetEntry) -> Vec<Move> {
        let mut all = self.harnessed_placement();
        all.insert(e.square, Piece::new(e.color, PieceKind::Queen));
        let Ok(mut p) = Position::new(self.board, all, e.color, None, 0, 1) else {
            return e.line.clone();
        };
        let mut out = Vec::new();
        for m in &e.line {
            match p.legal_moves().into_iter().find(|l| l.same_path(m)) {
                Some(l) => {
                    out.push(l);
                    p = p.apply_unchecked(&l);
                }
                None => {
                    out.extend(e.line[out.len()..].iter().copied());
                    break;
                }
            }
        }
        out
    }

    /// Move text of an entry's scripted line, replayed from its entry position.
    pub fn line_text(&self, i: usize) -> Vec<String> {
        let line = &self.entries[i].line;
        let Ok(mut p) = self.entry_position(i) else {
            return line.iter().map(|m| m.to_string()).collect();
        };
        let mut out = Vec::new();
        for m in line {
            match p.apply_move(m) {
                Ok(next) => {
                    out.push(p.move_text(m));
                    p = next;
                }
                Err(_) => out.push(m.to_string()),
            }
        }
        out
    }

    pub fn to_json(&self) -> GadgetJson {
        let entries = (0..self.entries.len())
            .map(|i| {
                let e = &self.entries[i];
                EntryJson {
                    color: e.color,
                    square: e.square,
                    line: self.line_text(i),
                    derived: e.derived,
                }
            })
            .collect();
        GadgetJson {
            kind: self.kind,
            anchor: self.anchor,
            board: self.board.to_string(),
            pieces: self
                .pieces
                .iter()
                .map(|(s, p)| PieceJson {
                    square: *s,
                    color: p.color,
                    kind: p.kind,
                })
                .collect(),
            harness: self
                .harness
                .iter()
                .map(|(s, p)| PieceJson {
                    square: *s,
                    color: p.color,
                    kind: p.kind,
                })
                .collect(),
            exceptions: self.exceptions.clone(),
            line: if self.entries.is_empty() {
                Vec::new()
            } else {
                self.line_text(0)
            },
            entries,
        }
    }

    /// xFEN of the harness position with the forcing side to move.
    pub fn harness_xfen(&self) -> Result<String, PositionError> {
        let p = self
            .harness_position(self.kind.forcing_side())
            .or_else(|_| self.harness_position(self.kind.forcing_side().opposite()))?;
        Ok(serialize_xfen(&p))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PieceJson {
    pub square: Square,
    pub color: Color,
    pub kind: PieceKind,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EntryJson {
    pub color: Color,
    pub square: Square,
    pub line: Vec<String>,
    pub derived: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GadgetJson {
    pub kind: GadgetKind,
    pub anchor: Square,
    pub board: String,
    pub pieces: Vec<PieceJson>,
    pub harness: Vec<PieceJson>,
    pub exceptions: Vec<Square>,
    pub entries: Vec<EntryJson>,
    /// Scripted line of the first entry.
    pub line: Vec<String>,
}

/// Add the gadget's pieces (not its harness) to `p`.
pub fn merge_into(p: &Position, g: &GadgetSpec) -> Result<Position, GadgetError> {
    if p.size() != g.board {
        return Err(GadgetError::BoardMismatch {
            gadget: g.board.to_string(),
            position: p.size().to_string(),
        });
    }
    let mut all = p.placement();
    for (sq, piece) in &g.pieces {
        if all.insert(*sq, *piece).is_some() {
            return Err(GadgetError::Collision(*sq));
        }
    }
    Ok(Position::new(
        p.size(),
        all,
        p.side_to_move(),
        p.ep_target(),
        p.halfmove_clock(),
        p.fullmove_number(),
    )?)
}
