//! Stipulations and the reflex move filter.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::StipulationError;
use crate::moves::Move;
use crate::position::Position;
use crate::types::Color;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum StipulationKind {
    /// Forcing side mates.
    Direct,
    /// Forcing side compels the opponent to mate it.
    #[serde(rename = "self")]
    Selfmate,
    /// Selfmate where whichever side can mate must do so.
    Reflex,
    /// Selfmate where only the forced side is bound to mate when able.
    SemiReflex,
}

impl StipulationKind {
    pub fn prefix(self) -> &'static str {
        match self {
            StipulationKind::Direct => "#",
            StipulationKind::Selfmate => "s#",
            StipulationKind::Reflex => "r#",
            StipulationKind::SemiReflex => "semi-r#",
        }
    }

    /// Goal is reached when the forced side mates the forcing side.
    pub fn is_self_kind(self) -> bool {
        self != StipulationKind::Direct
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Stipulation {
    pub kind: StipulationKind,
    /// Horizon, counted in the forced side's moves.
    pub n: u32,
    pub forcing_side: Color,
}

impl Stipulation {
    pub fn new(kind: StipulationKind, n: u32) -> Result<Stipulation, StipulationError> {
        if n == 0 {
            return Err(StipulationError::ZeroHorizon);
        }
        Ok(Stipulation {
            kind,
            n,
            forcing_side: Color::White,
        })
    }

    pub fn with_forcing_side(mut self, side: Color) -> Stipulation {
        self.forcing_side = side;
        self
    }

    pub fn with_horizon(mut self, n: u32) -> Stipulation {
        self.n = n.max(1);
        self
    }

    /// Whether the reflex obligation binds `mover`.
    pub fn obliges(&self, mover: Color) -> bool {
        obliges(self.kind, self.forcing_side, mover)
    }
}

pub(crate) fn obliges(kind: StipulationKind, forcing: Color, mover: Color) -> bool {
    match kind {
        StipulationKind::Reflex => true,
        StipulationKind::SemiReflex => mover != forcing,
        _ => false,
    }
}

impl fmt::Display for Stipulation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}", self.kind.prefix(), self.n)
    }
}

impl FromStr for Stipulation {
    type Err = StipulationError;

    fn from_str(s: &str) -> Result<Stipulation, StipulationError> {
        let lower = s.trim().to_ascii_lowercase();
        let err = || StipulationError::Parse(s.to_string());
        let (kind, rest) = [
            ("semi-r#", StipulationKind::SemiReflex),
            ("s#", StipulationKind::Selfmate),
            ("r#", StipulationKind::Reflex),
            ("#", StipulationKind::Direct),
        ]
        .iter()
        .find_map(|(p, k)| lower.strip_prefix(p).map(|r| (*k, r)))
        .ok_or_else(err)?;
        if rest.is_empty() || !rest.bytes().all(|b| b.is_ascii_digit()) {
            return Err(err());
        }
        let n: u32 = rest.parse().map_err(|_| err())?;
        Stipulation::new(kind, n)
    }
}

/// Legal moves the mover may actually choose under the reflex obligation:
/// when the obligation binds and some legal move mates, only mating moves
/// are playable.
pub fn playable_moves(p: &Position, stip: &Stipulation) -> Vec<Move> {
    playable_for(p, stip.kind, stip.forcing_side)
}

pub(crate) fn playable_for(p: &Position, kind: StipulationKind, forcing: Color) -> Vec<Move> {
    let legal = p.legal_moves();
    if !obliges(kind, forcing, p.side_to_move()) {
        return legal;
    }
    let mating: Vec<Move> = legal
        .iter()
        .filter(|m| p.apply_unchecked(m).is_checkmate())
        .copied()
        .collect();
    if mating.is_empty() {
        legal
    } else {
        mating
    }
}
