//! Printed protocol artifacts, transcribed as data.
//!
//! Kets are on `b1 c1 a2 c2` (collapse table, Hadamard-transformed state) or
//! on a single qubit (Bell regrouping). Coefficient labels `aNbM` stand for
//! `alpha_N * beta_M`; `aN` and `bN` for single amplitudes. Normalization
//! constants are omitted, as in the source.

use crate::protocol::{InputState, UserBranch};
use crate::qstate::{BellOutcome, PauliOp, C64};

/// Collapse table: `a1 A b2 B : groups`, each group `sign coef ket ket`.
pub const COLLAPSE_TABLE: &str = "\
0 + 0 + : +a0b0 0000 0110 ; +a0b1 0001 0111 ; +a1b0 1000 1110 ; +a1b1 1001 1111
0 + 0 - : +a0b0 0000 0110 ; -a0b1 0001 0111 ; +a1b0 1000 1110 ; -a1b1 1001 1111
0 - 0 + : +a0b0 0000 0110 ; +a0b1 0001 0111 ; -a1b0 1000 1110 ; -a1b1 1001 1111
0 - 0 - : +a0b0 0000 0110 ; -a0b1 0001 0111 ; -a1b0 1000 1110 ; +a1b1 1001 1111
0 + 1 + : +a0b0 0001 0111 ; +a0b1 0000 0110 ; +a1b0 1001 1111 ; +a1b1 1000 1110
0 + 1 - : +a0b0 0001 0111 ; -a0b1 0000 0110 ; +a1b0 1001 1111 ; -a1b1 1000 1110
0 - 1 + : +a0b0 0001 0111 ; +a0b1 0000 0110 ; -a1b0 1001 1111 ; -a1b1 1000 1110
0 - 1 - : +a0b0 0001 0111 ; -a0b1 0000 0110 ; -a1b0 1001 1111 ; +a1b1 1000 1110
1 + 0 + : +a0b0 1000 1110 ; +a0b1 1001 1111 ; +a1b0 0001 0111 ; +a1b1 0000 0110
1 + 0 - : +a0b0 1000 1110 ; -a0b1 1001 1111 ; +a1b0 0001 0111 ; -a1b1 0000 0110
1 - 0 + : +a0b0 1000 1110 ; +a0b1 1001 1111 ; -a1b0 0001 0111 ; -a1b1 0000 0110
1 - 0 - : +a0b0 1000 1110 ; -a0b1 1001 1111 ; -a1b0 0001 0111 ; +a1b1 0000 0110
1 + 1 + : +a0b0 1001 1111 ; +a0b1 1000 1110 ; +a1b0 0001 0111 ; +a1b1 0000 0110
1 + 1 - : +a0b0 1001 1111 ; -a0b1 1000 1110 ; +a1b0 0001 0111 ; -a1b1 0000 0110
1 - 1 + : +a0b0 1001 1111 ; +a0b1 1000 1110 ; -a1b0 0001 0111 ; -a1b1 0000 0110
1 - 1 - : +a0b0 1001 1111 ; -a0b1 1000 1110 ; -a1b0 0001 0111 ; +a1b1 0000 0110
";

/// State of the `(0,+,0,+)` branch after Charlie's Hadamards: `coef : kets`.
pub const HADAMARD_STATE: &str = "\
a0b0 : +0000 +0001 +0100 +0101 +0010 +0011 -0110 -0111
a0b1 : +0000 -0001 +0100 -0101 +0010 -0011 -0110 +0111
a1b0 : +1000 +1001 +1100 +1101 +1010 +1011 -1110 -1111
a1b1 : +1000 -1001 +1100 -1101 +1010 -1011 -1110 +1111
";

/// Bell regrouping of the same state: `outcome : b1 factor : a2 factor`.
pub const BELL_REGROUPING: &str = "\
phi_plus  : +a0 0 +a1 1 : +b0 0 +b1 1
phi_minus : +a0 0 +a1 1 : +b0 1 +b1 0
psi_plus  : +a0 0 +a1 1 : +b0 0 -b1 1
psi_minus : +a0 0 +a1 1 : +b0 1 -b1 0
";

/// Printed correction table for the `(0,+,0,+)` branch:
/// `outcome : Bob's op on b1 : Alice's op on a2`.
pub const CORRECTION_TABLE: &str = "\
phi_plus  : I  : I
phi_minus : X  : I
psi_plus  : Z  : I
psi_minus : iY : I
";

/// Coefficient label.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Coef {
    Alpha(u8),
    Beta(u8),
    AlphaBeta(u8, u8),
}

impl Coef {
    fn parse(s: &str) -> Option<Coef> {
        let b = s.as_bytes();
        let digit = |c: u8| (c == b'0' || c == b'1').then(|| c - b'0');
        match b {
            [b'a', i, b'b', j] => Some(Coef::AlphaBeta(digit(*i)?, digit(*j)?)),
            [b'a', i] => Some(Coef::Alpha(digit(*i)?)),
            [b'b', j] => Some(Coef::Beta(digit(*j)?)),
            _ => None,
        }
    }

    pub fn value(self, alice: &InputState, bob: &InputState) -> C64 {
        let a = alice.amplitudes();
        let b = bob.amplitudes();
        match self {
            Coef::Alpha(i) => a[i as usize],
            Coef::Beta(j) => b[j as usize],
            Coef::AlphaBeta(i, j) => a[i as usize] * b[j as usize],
        }
    }
}

/// One signed term: `sign * coef * |ket>`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Term {
    pub negative: bool,
    pub coef: Coef,
    pub ket: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CollapseRow {
    pub branch: UserBranch,
    pub terms: Vec<Term>,
    pub source: String,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BellTerm {
    pub outcome: BellOutcome,
    pub b1: Vec<Term>,
    pub a2: Vec<Term>,
    pub source: String,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CorrectionCell {
    pub outcome: BellOutcome,
    pub b1: PauliOp,
    pub a2: PauliOp,
}

fn bit(s: &str) -> Option<u8> {
    match s {
        "0" | "+" => Some(0),
        "1" | "-" => Some(1),
        _ => None,
    }
}

fn ket(s: &str) -> Option<usize> {
    usize::from_str_radix(s, 2).ok()
}

fn signed(s: &str) -> Option<(bool, &str)> {
    s.strip_prefix('+')
        .map(|r| (false, r))
        .or_else(|| s.strip_prefix('-').map(|r| (true, r)))
}

fn bell(s: &str) -> Option<BellOutcome> {
    BellOutcome::ALL.into_iter().find(|o| o.name() == s)
}

fn pauli(s: &str) -> Option<PauliOp> {
    PauliOp::ALL.into_iter().find(|p| p.name() == s)
}

/// `+coef ket +coef ket ...` (single-qubit factor).
fn factor(s: &str) -> Option<Vec<Term>> {
    let tok: Vec<&str> = s.split_whitespace().collect();
    tok.chunks(2)
        .map(|c| {
            let (negative, coef) = signed(c.first()?)?;
            Some(Term {
                negative,
                coef: Coef::parse(coef)?,
                ket: ket(c.get(1)?)?,
            })
        })
        .collect()
}

fn lines(table: &str) -> impl Iterator<Item = &str> {
    table.lines().map(str::trim).filter(|l| !l.is_empty())
}

pub fn collapse_rows() -> Vec<CollapseRow> {
    lines(COLLAPSE_TABLE)
        .map(|line| {
            let parse = || -> Option<CollapseRow> {
                let (head, body) = line.split_once(':')?;
                let bits = head
                    .split_whitespace()
                    .map(bit)
                    .collect::<Option<Vec<_>>>()?;
                let [az, ax, bz, bx] = bits[..] else {
                    return None;
                };
                let mut terms = Vec::new();
                for group in body.split(';') {
                    let tok: Vec<&str> = group.split_whitespace().collect();
                    let (negative, coef) = signed(tok.first()?)?;
                    let coef = Coef::parse(coef)?;
                    for k in &tok[1..] {
                        terms.push(Term {
                            negative,
                            coef,
                            ket: ket(k)?,
                        });
                    }
                }
                Some(CollapseRow {
                    branch: UserBranch::new(az, ax, bz, bx),
                    terms,
                    source: line.to_string(),
                })
            };
            parse().unwrap_or_else(|| panic!("malformed collapse row: {line}"))
        })
        .collect()
}

pub fn hadamard_state() -> Vec<Term> {
    lines(HADAMARD_STATE)
        .flat_map(|line| {
            let parse = || -> Option<Vec<Term>> {
                let (coef, kets) = line.split_once(':')?;
                let coef = Coef::parse(coef.trim())?;
                kets.split_whitespace()
                    .map(|k| {
                        let (negative, k) = signed(k)?;
                        Some(Term {
                            negative,
                            coef,
                            ket: ket(k)?,
                        })
                    })
                    .collect()
            };
            parse().unwrap_or_else(|| panic!("malformed Hadamard-state line: {line}"))
        })
        .collect()
}

pub fn bell_regrouping() -> Vec<BellTerm> {
    lines(BELL_REGROUPING)
        .map(|line| {
            let parse = || -> Option<BellTerm> {
                let mut parts = line.split(':').map(str::trim);
                Some(BellTerm {
                    outcome: bell(parts.next()?)?,
                    b1: factor(parts.next()?)?,
                    a2: factor(parts.next()?)?,
                    source: line.to_string(),
                })
            };
            parse().unwrap_or_else(|| panic!("malformed Bell regrouping line: {line}"))
        })
        .collect()
}

pub fn correction_cells() -> Vec<CorrectionCell> {
    lines(CORRECTION_TABLE)
        .map(|line| {
            let parse = || -> Option<CorrectionCell> {
                let mut parts = line.split(':').map(str::trim);
                Some(CorrectionCell {
                    outcome: bell(parts.next()?)?,
                    b1: pauli(parts.next()?)?,
                    a2: pauli(parts.next()?)?,
                })
            };
            parse().unwrap_or_else(|| panic!("malformed correction line: {line}"))
        })
        .collect()
}
