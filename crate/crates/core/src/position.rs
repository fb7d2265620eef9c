//! Positions on an F×R board and the legal move generator.
//!
//! Rules are the orthodox ones generalised to rectangular boards: sliders
//! are bounded only by the edge, pawns double-step from rank 2 (White) or
//! rank R−1 (Black) and promote on the far rank. Castling does not exist.

use std::collections::BTreeMap;

use crate::error::PositionError;
use crate::moves::Move;
use crate::types::{BoardSize, Color, Piece, PieceKind, Square};

const KNIGHT_STEPS: [(i8, i8); 8] = [
    (1, 2),
    (2, 1),
    (2, -1),
    (1, -2),
    (-1, -2),
    (-2, -1),
    (-2, 1),
    (-1, 2),
];
const KING_STEPS: [(i8, i8); 8] = [
    (1, 0),
    (1, 1),
    (0, 1),
    (-1, 1),
    (-1, 0),
    (-1, -1),
    (0, -1),
    (1, -1),
];
const ORTHOGONAL: [(i8, i8); 4] = [(1, 0), (0, 1), (-1, 0), (0, -1)];
const DIAGONAL: [(i8, i8); 4] = [(1, 1), (-1, 1), (-1, -1), (1, -1)];

/// Full game state. Immutable from the outside; moves produce new values.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Position {
    size: BoardSize,
    board: Vec<Option<Piece>>,
    kings: [Square; 2],
    side_to_move: Color,
    ep_target: Option<Square>,
    halfmove_clock: u32,
    fullmove_number: u32,
}

/// Identity of a position for search purposes: placement, side to move and
/// en-passant target. Move counters are ignored.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct StateKey(Box<[u8]>);

impl StateKey {
    pub fn as_bytes(&self) -> &[u8] {
        &self.0
    }
}

impl Position {
    /// Build and validate a position.
    pub fn new(
        size: BoardSize,
        placement: impl IntoIterator<Item = (Square, Piece)>,
        side_to_move: Color,
        ep_target: Option<Square>,
        halfmove_clock: u32,
        fullmove_number: u32,
    ) -> Result<Position, PositionError> {
        let mut board = vec![None; size.area()];
        for (sq, piece) in placement {
            if !size.contains(sq) {
                return Err(PositionError::OffBoard(sq));
            }
            board[size.index(sq)] = Some(piece);
        }
        if fullmove_number == 0 {
            return Err(PositionError::BadFullmove);
        }
        let mut kings = [Square::new(1, 1); 2];
        for color in [Color::White, Color::Black] {
            let found: Vec<usize> = board
                .iter()
                .enumerate()
                .filter(|(_, p)| **p == Some(Piece::new(color, PieceKind::King)))
                .map(|(i, _)| i)
                .collect();
            if found.len() != 1 {
                return Err(PositionError::KingCount {
                    color,
                    count: found.len(),
                });
            }
            kings[color.index()] = size.square(found[0]);
        }
        let pos = Position {
            size,
            board,
            kings,
            side_to_move,
            ep_target,
            halfmove_clock,
            fullmove_number,
        };
        pos.validate()?;
        Ok(pos)
    }

    fn validate(&self) -> Result<(), PositionError> {
        let waiting = self.side_to_move.opposite();
        if self.attacked_by(self.king(waiting), self.side_to_move) {
            return Err(PositionError::OpponentInCheck(waiting));
        }
        if let Some(ep) = self.ep_target {
            // The pawn that just double-stepped belongs to the side not to move.
            let dir = waiting.pawn_dir();
            let pawn_sq = ep.offset(0, dir, self.size);
            let origin = ep.offset(0, -dir, self.size);
            let ok = self.size.contains(ep)
                && self.piece_at(ep).is_none()
                && pawn_sq.is_some_and(|s| {
                    self.piece_at(s) == Some(Piece::new(waiting, PieceKind::Pawn))
                })
                && origin.is_some_and(|s| {
                    s.rank == self.size.pawn_start_rank(waiting) && self.piece_at(s).is_none()
                });
            if !ok {
                return Err(PositionError::BadEnPassant(ep));
            }
        }
        Ok(())
    }

    pub fn size(&self) -> BoardSize {
        self.size
    }

    pub fn side_to_move(&self) -> Color {
        self.side_to_move
    }

    pub fn ep_target(&self) -> Option<Square> {
        self.ep_target
    }

    pub fn halfmove_clock(&self) -> u32 {
        self.halfmove_clock
    }

    pub fn fullmove_number(&self) -> u32 {
        self.fullmove_number
    }

    #[inline]
    pub fn king(&self, color: Color) -> Square {
        self.kings[color.index()]
    }

    #[inline]
    pub fn piece_at(&self, sq: Square) -> Option<Piece> {
        if self.size.contains(sq) {
            self.board[self.size.index(sq)]
        } else {
            None
        }
    }

    /// Occupied squares with their pieces, in canonical square order.
    pub fn pieces(&self) -> impl Iterator<Item = (Square, Piece)> + '_ {
        self.size
            .squares()
            .filter_map(move |sq| self.board[self.size.index(sq)].map(|p| (sq, p)))
    }

    pub fn placement(&self) -> BTreeMap<Square, Piece> {
        self.pieces().collect()
    }

    pub fn piece_count(&self) -> usize {
        self.board.iter().filter(|p| p.is_some()).count()
    }

    /// Same placement with a different side to move (en passant cleared).
    pub fn with_side_to_move(&self, color: Color) -> Result<Position, PositionError> {
        let mut p = self.clone();
        p.side_to_move = color;
        p.ep_target = None;
        p.validate()?;
        Ok(p)
    }

    /// Vertical mirror (rank r → R+1−r) with colours swapped.
    pub fn mirrored(&self) -> Position {
        let size = self.size;
        let mut board = vec![None; size.area()];
        for (sq, p) in self.pieces() {
            board[size.index(size.mirror(sq))] = Some(Piece::new(p.color.opposite(), p.kind));
        }
        Position {
            size,
            board,
            kings: [size.mirror(self.kings[1]), size.mirror(self.kings[0])],
            side_to_move: self.side_to_move.opposite(),
            ep_target: self.ep_target.map(|s| size.mirror(s)),
            halfmove_clock: self.halfmove_clock,
            fullmove_number: self.fullmove_number,
        }
    }

    pub fn state_key(&self) -> StateKey {
        let mut bytes = Vec::with_capacity(self.board.len() + 3);
        bytes.extend(self.board.iter().map(|p| p.map_or(0, Piece::code)));
        bytes.push(self.side_to_move as u8);
        match self.ep_target {
            Some(s) => bytes.extend([s.file, s.rank]),
            None => bytes.extend([0, 0]),
        }
        StateKey(bytes.into_boxed_slice())
    }

    /// Rebuild a position from a key produced on a board of the same size.
    /// Counters are reset.
    pub fn from_state_key(size: BoardSize, key: &StateKey) -> Position {
        let bytes = key.as_bytes();
        let n = size.area();
        let board: Vec<Option<Piece>> = bytes[..n].iter().map(|&c| Piece::from_code(c)).collect();
        let mut kings = [Square::new(1, 1); 2];
        for (i, p) in board.iter().enumerate() {
            if let Some(Piece {
                color,
                kind: PieceKind::King,
            }) = p
            {
                kings[color.index()] = size.square(i);
            }
        }
        let side_to_move = if bytes[n] == 0 {
            Color::White
        } else {
            Color::Black
        };
        let ep_target = (bytes[n + 1] != 0).then(|| Square::new(bytes[n + 1], bytes[n + 2]));
        Position {
            size,
            board,
            kings,
            side_to_move,
            ep_target,
            halfmove_clock: 0,
            fullmove_number: 1,
        }
    }

    /// True iff some piece of `by` attacks `target`. Pawns attack diagonally only.
    pub fn attacked_by(&self, target: Square, by: Color) -> bool {
        let size = self.size;
        let pawn = Piece::new(by, PieceKind::Pawn);
        for df in [-1, 1] {
            if let Some(s) = target.offset(df, -by.pawn_dir(), size) {
                if self.piece_at(s) == Some(pawn) {
                    return true;
                }
            }
        }
        let knight = Piece::new(by, PieceKind::Knight);
        for (df, dr) in KNIGHT_STEPS {
            if let Some(s) = target.offset(df, dr, size) {
                if self.piece_at(s) == Some(knight) {
                    return true;
                }
            }
        }
        let king = Piece::new(by, PieceKind::King);
        for (df, dr) in KING_STEPS {
            if let Some(s) = target.offset(df, dr, size) {
                if self.piece_at(s) == Some(king) {
                    return true;
                }
            }
        }
        self.ray_attack(target, by, &ORTHOGONAL, PieceKind::Rook)
            || self.ray_attack(target, by, &DIAGONAL, PieceKind::Bishop)
    }

    /// Does the piece on `from` attack `target`?
    pub fn piece_attacks(&self, from: Square, target: Square) -> bool {
        let Some(piece) = self.piece_at(from) else {
            return false;
        };
        let df = target.file as i16 - from.file as i16;
        let dr = target.rank as i16 - from.rank as i16;
        let (adf, adr) = (df.abs(), dr.abs());
        if adf == 0 && adr == 0 {
            return false;
        }
        let aligned_orth = df == 0 || dr == 0;
        let aligned_diag = adf == adr;
        match piece.kind {
            PieceKind::Pawn => adf == 1 && dr == piece.color.pawn_dir() as i16,
            PieceKind::Knight => (adf == 1 && adr == 2) || (adf == 2 && adr == 1),
            PieceKind::King => adf <= 1 && adr <= 1,
            PieceKind::Rook => aligned_orth && self.path_clear(from, target),
            PieceKind::Bishop => aligned_diag && self.path_clear(from, target),
            PieceKind::Queen => (aligned_orth || aligned_diag) && self.path_clear(from, target),
        }
    }

    fn path_clear(&self, from: Square, to: Square) -> bool {
        squares_between(from, to)
            .iter()
            .all(|s| self.piece_at(*s).is_none())
    }

    fn ray_attack(&self, target: Square, by: Color, dirs: &[(i8, i8)], slider: PieceKind) -> bool {
        for &(df, dr) in dirs {
            let mut cur = target;
            while let Some(s) = cur.offset(df, dr, self.size) {
                if let Some(p) = self.piece_at(s) {
                    if p.color == by && (p.kind == slider || p.kind == PieceKind::Queen) {
                        return true;
                    }
                    break;
                }
                cur = s;
            }
        }
        false
    }

    /// Is the side to move in check?
    pub fn is_check(&self) -> bool {
        let us = self.side_to_move;
        self.attacked_by(self.king(us), us.opposite())
    }

    pub fn is_checkmate(&self) -> bool {
        self.is_check() && !self.has_legal_move()
    }

    pub fn is_stalemate(&self) -> bool {
        !self.is_check() && !self.has_legal_move()
    }

    /// All legal moves in canonical order.
    pub fn legal_moves(&self) -> Vec<Move> {
        let mut moves = Vec::with_capacity(48);
        self.pseudo_moves(&mut moves);
        moves.retain(|m| self.is_legal_pseudo(m));
        moves.sort_unstable();
        moves
    }

    pub fn has_legal_move(&self) -> bool {
        let mut moves = Vec::with_capacity(48);
        self.pseudo_moves(&mut moves);
        moves.iter().any(|m| self.is_legal_pseudo(m))
    }

    fn is_legal_pseudo(&self, m: &Move) -> bool {
        let us = self.side_to_move;
        let next = self.apply_unchecked(m);
        !next.attacked_by(next.king(us), us.opposite())
    }

    /// Apply a move after checking that it is legal.
    pub fn apply_move(&self, m: &Move) -> Result<Position, crate::error::MoveError> {
        let legal = self.legal_moves();
        match legal.iter().find(|l| l.same_path(m)) {
            Some(l) if l == m || (!m.is_capture && !m.is_en_passant) => Ok(self.apply_unchecked(l)),
            _ => Err(crate::error::MoveError::Illegal(m.to_string())),
        }
    }

    /// Apply a move produced by this position's generator without re-checking it.
    pub fn apply_unchecked(&self, m: &Move) -> Position {
        let size = self.size;
        let mut next = self.clone();
        let from_idx = size.index(m.from);
        let to_idx = size.index(m.to);
        let piece = next.board[from_idx]
            .take()
            .expect("move from an empty square");
        let captured = next.board[to_idx].is_some() || m.is_en_passant;
        if m.is_en_passant {
            let victim = Square::new(m.to.file, m.from.rank);
            next.board[size.index(victim)] = None;
        }
        let placed = match m.promotion {
            Some(kind) => Piece::new(piece.color, kind),
            None => piece,
        };
        next.board[to_idx] = Some(placed);
        if piece.kind == PieceKind::King {
            next.kings[piece.color.index()] = m.to;
        }
        next.ep_target = None;
        if piece.kind == PieceKind::Pawn && (m.to.rank as i16 - m.from.rank as i16).abs() == 2 {
            next.ep_target = Some(Square::new(m.from.file, (m.from.rank + m.to.rank) / 2));
        }
        next.halfmove_clock = if captured || piece.kind == PieceKind::Pawn {
            0
        } else {
            self.halfmove_clock + 1
        };
        if self.side_to_move == Color::Black {
            next.fullmove_number += 1;
        }
        next.side_to_move = self.side_to_move.opposite();
        next
    }

    fn pseudo_moves(&self, out: &mut Vec<Move>) {
        let us = self.side_to_move;
        for (idx, slot) in self.board.iter().enumerate() {
            let Some(piece) = *slot else { continue };
            if piece.color != us {
                continue;
            }
            let from = self.size.square(idx);
            match piece.kind {
                PieceKind::Pawn => self.pawn_moves(from, us, out),
                PieceKind::Knight => self.step_moves(from, us, &KNIGHT_STEPS, out),
                PieceKind::King => self.step_moves(from, us, &KING_STEPS, out),
                PieceKind::Rook => self.slide_moves(from, us, &ORTHOGONAL, out),
                PieceKind::Bishop => self.slide_moves(from, us, &DIAGONAL, out),
                PieceKind::Queen => {
                    self.slide_moves(from, us, &ORTHOGONAL, out);
                    self.slide_moves(from, us, &DIAGONAL, out);
                }
            }
        }
    }

    fn target_ok(&self, to: Square, us: Color) -> Option<bool> {
        match self.piece_at(to) {
            None => Some(false),
            Some(p) if p.color != us && p.kind != PieceKind::King => Some(true),
            Some(_) => None,
        }
    }

    fn step_moves(&self, from: Square, us: Color, steps: &[(i8, i8)], out: &mut Vec<Move>) {
        for &(df, dr) in steps {
            if let Some(to) = from.offset(df, dr, self.size) {
                if let Some(is_capture) = self.target_ok(to, us) {
                    out.push(Move {
                        from,
                        to,
                        promotion: None,
                        is_capture,
                        is_en_passant: false,
                    });
                }
            }
        }
    }

    fn slide_moves(&self, from: Square, us: Color, dirs: &[(i8, i8)], out: &mut Vec<Move>) {
        for &(df, dr) in dirs {
            let mut cur = from;
            while let Some(to) = cur.offset(df, dr, self.size) {
                match self.target_ok(to, us) {
                    Some(is_capture) => {
                        out.push(Move {
                            from,
                            to,
                            promotion: None,
                            is_capture,
                            is_en_passant: false,
                        });
                        if is_capture {
                            break;
                        }
                    }
                    None => break,
                }
                cur = to;
            }
        }
    }

    fn push_pawn_move(
        &self,
        from: Square,
        to: Square,
        is_capture: bool,
        us: Color,
        out: &mut Vec<Move>,
    ) {
        if to.rank == self.size.promotion_rank(us) {
            for kind in PieceKind::PROMOTIONS {
                out.push(Move {
                    from,
                    to,
                    promotion: Some(kind),
                    is_capture,
                    is_en_passant: false,
                });
            }
        } else {
            out.push(Move {
                from,
                to,
                promotion: None,
                is_capture,
                is_en_passant: false,
            });
        }
    }

    fn pawn_moves(&self, from: Square, us: Color, out: &mut Vec<Move>) {
        let size = self.size;
        let dir = us.pawn_dir();
        // A pawn parked on its own promotion rank has nowhere to go.
        let Some(one) = from.offset(0, dir, size) else {
            return;
        };
        if self.piece_at(one).is_none() {
            self.push_pawn_move(from, one, false, us, out);
            if from.rank == size.pawn_start_rank(us) {
                if let Some(two) = one.offset(0, dir, size) {
                    if self.piece_at(two).is_none() && two.rank != size.promotion_rank(us) {
                        out.push(Move::quiet(from, two));
                    }
                }
            }
        }
        for df in [-1, 1] {
            let Some(to) = from.offset(df, dir, size) else {
                continue;
            };
            match self.piece_at(to) {
                Some(p) if p.color != us && p.kind != PieceKind::King => {
                    self.push_pawn_move(from, to, true, us, out);
                }
                None if self.ep_target == Some(to) => out.push(Move {
                    from,
                    to,
                    promotion: None,
                    is_capture: true,
                    is_en_passant: true,
                }),
                _ => {}
            }
        }
    }
}

/// Squares strictly between two squares on a common line; empty otherwise.
pub fn squares_between(from: Square, to: Square) -> Vec<Square> {
    let df = to.file as i16 - from.file as i16;
    let dr = to.rank as i16 - from.rank as i16;
    if !(df == 0 || dr == 0 || df.abs() == dr.abs()) {
        return Vec::new();
    }
    let steps = df.abs().max(dr.abs());
    let (sf, sr) = (df.signum(), dr.signum());
    (1..steps)
        .map(|i| {
            Square::new(
                (from.file as i16 + sf * i) as u8,
                (from.rank as i16 + sr * i) as u8,
            )
        })
        .collect()
}
