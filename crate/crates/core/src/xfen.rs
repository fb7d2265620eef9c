//! xFEN: FEN with a leading `<F>x<R>` board-size field.
//!
//! ```text
//! 15x16 <ranks top to bottom, '/' separated> w - - 0 1
//! ```
//!
//! Empty runs may span several digits (`12p2`). A plain six-field FEN is
//! read as an 8x8 board. The castling field must be `-`.

use crate::error::XfenError;
use crate::position::Position;
use crate::types::{BoardSize, Color, Piece, Square};

fn syntax(column: usize, message: impl Into<String>) -> XfenError {
    XfenError::Syntax {
        column,
        message: message.into(),
    }
}

/// Whitespace-separated fields with their 1-based starting columns.
fn fields(text: &str) -> Vec<(usize, &str)> {
    let mut out = Vec::new();
    let mut start = None;
    for (i, c) in text.char_indices() {
        match (c.is_whitespace(), start) {
            (true, Some(s)) => {
                out.push((s + 1, &text[s..i]));
                start = None;
            }
            (false, None) => start = Some(i),
            _ => {}
        }
    }
    if let Some(s) = start {
        out.push((s + 1, &text[s..]));
    }
    out
}

pub fn parse_xfen(text: &str) -> Result<Position, XfenError> {
    let mut fs = fields(text);
    let size = match fs.first() {
        Some(&(col, f))
            if f.contains('x') && f.chars().next().is_some_and(|c| c.is_ascii_digit()) =>
        {
            fs.remove(0);
            f.parse::<BoardSize>()
                .map_err(|e| syntax(col, e.to_string()))?
        }
        _ => BoardSize::STANDARD,
    };
    if fs.len() != 6 {
        let col = fs.get(6).map_or(text.len() + 1, |f| f.0);
        return Err(syntax(
            col,
            format!("expected 6 fields after the size, found {}", fs.len()),
        ));
    }
    let (pcol, placement_text) = fs[0];
    let placement = parse_placement(placement_text, pcol, size)?;

    let (scol, side) = fs[1];
    let side = match side {
        "w" => Color::White,
        "b" => Color::Black,
        other => {
            return Err(syntax(
                scol,
                format!("side to move must be `w` or `b`, found `{other}`"),
            ))
        }
    };
    let (_, castle) = fs[2];
    if castle != "-" {
        return Err(XfenError::Castling(castle.to_string()));
    }
    let (ecol, ep) = fs[3];
    let ep = match ep {
        "-" => None,
        s => {
            let sq: Square = s
                .parse()
                .map_err(|_| syntax(ecol, format!("bad en-passant square `{s}`")))?;
            Some(sq)
        }
    };
    let (hcol, half) = fs[4];
    let half: u32 = half
        .parse()
        .map_err(|_| syntax(hcol, format!("bad halfmove clock `{half}`")))?;
    let (fcol, full) = fs[5];
    let full: u32 = full
        .parse()
        .map_err(|_| syntax(fcol, format!("bad fullmove number `{full}`")))?;

    Ok(Position::new(size, placement, side, ep, half, full)?)
}

fn parse_placement(
    text: &str,
    col0: usize,
    size: BoardSize,
) -> Result<Vec<(Square, Piece)>, XfenError> {
    let rows: Vec<&str> = text.split('/').collect();
    if rows.len() != size.ranks as usize {
        return Err(syntax(
            col0,
            format!("expected {} ranks, found {}", size.ranks, rows.len()),
        ));
    }
    let mut out = Vec::new();
    let mut offset = 0;
    for (i, row) in rows.iter().enumerate() {
        let rank = size.ranks - i as u8;
        let mut file: usize = 0;
        let bytes = row.as_bytes();
        let mut j = 0;
        while j < bytes.len() {
            let col = col0 + offset + j;
            let c = bytes[j] as char;
            if c.is_ascii_digit() {
                let run_len = bytes[j..].iter().take_while(|b| b.is_ascii_digit()).count();
                let run: usize = row[j..j + run_len]
                    .parse()
                    .map_err(|_| syntax(col, "bad empty-square count"))?;
                if run == 0 {
                    return Err(syntax(col, "empty-square count must be positive"));
                }
                file += run;
                j += run_len;
            } else {
                let piece = Piece::from_fen_char(c)
                    .ok_or_else(|| syntax(col, format!("unexpected `{c}`")))?;
                file += 1;
                if file <= size.files as usize {
                    out.push((Square::new(file as u8, rank), piece));
                }
                j += 1;
            }
            if file > size.files as usize {
                return Err(syntax(
                    col,
                    format!("rank {rank} has more than {} files", size.files),
                ));
            }
        }
        if file != size.files as usize {
            return Err(syntax(
                col0 + offset,
                format!("rank {rank} has {file} files, expected {}", size.files),
            ));
        }
        offset += row.len() + 1;
    }
    Ok(out)
}

/// Canonical xFEN. The size prefix is always written.
pub fn serialize_xfen(p: &Position) -> String {
    let size = p.size();
    let mut s = format!("{size} ");
    for rank in (1..=size.ranks).rev() {
        let mut empty = 0;
        for file in 1..=size.files {
            match p.piece_at(Square::new(file, rank)) {
                Some(piece) => {
                    if empty > 0 {
                        s.push_str(&empty.to_string());
                        empty = 0;
                    }
                    s.push(piece.fen_char());
                }
                None => empty += 1,
            }
        }
        if empty > 0 {
            s.push_str(&empty.to_string());
        }
        if rank > 1 {
            s.push('/');
        }
    }
    let side = match p.side_to_move() {
        Color::White => 'w',
        Color::Black => 'b',
    };
    let ep = p.ep_target().map_or("-".to_string(), |e| e.to_string());
    s.push_str(&format!(
        " {side} - {ep} {} {}",
        p.halfmove_clock(),
        p.fullmove_number()
    ));
    s
}
