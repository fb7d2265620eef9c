//! Leaf counting for move generator validation.

use crate::position::Position;

pub fn perft(p: &Position, depth: u32) -> u64 {
    if depth == 0 {
        return 1;
    }
    let moves = p.legal_moves();
    if depth == 1 {
        return moves.len() as u64;
    }
    moves
        .iter()
        .map(|m| perft(&p.apply_unchecked(m), depth - 1))
        .sum()
}

/// Per-root-move leaf counts, in canonical move order.
pub fn divide(p: &Position, depth: u32) -> Vec<(String, u64)> {
    p.legal_moves()
        .iter()
        .map(|m| {
            let n = if depth <= 1 {
                1
            } else {
                perft(&p.apply_unchecked(m), depth - 1)
            };
            (p.move_text(m), n)
        })
        .collect()
}
