use std::fmt;

use serde::{Deserialize, Serialize};

use crate::qstate::BellOutcome;
use crate::{Error, Result};

/// Classical outcomes of the two users' single-qubit measurements: Alice's
/// Z on `a1` and X on `A`, Bob's Z on `b2` and X on `B`. X outcome 0 is `|+>`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct UserBranch {
    pub alice_z: u8,
    pub alice_x: u8,
    pub bob_z: u8,
    pub bob_x: u8,
}

impl UserBranch {
    pub fn new(alice_z: u8, alice_x: u8, bob_z: u8, bob_x: u8) -> Self {
        debug_assert!(alice_z < 2 && alice_x < 2 && bob_z < 2 && bob_x < 2);
        UserBranch {
            alice_z,
            alice_x,
            bob_z,
            bob_x,
        }
    }

    /// Index in `0..16`, bits ordered `alice_z alice_x bob_z bob_x`.
    pub fn index(&self) -> usize {
        ((self.alice_z as usize) << 3)
            | ((self.alice_x as usize) << 2)
            | ((self.bob_z as usize) << 1)
            | self.bob_x as usize
    }

    pub fn from_index(i: usize) -> Self {
        let bit = |k: usize| ((i >> k) & 1) as u8;
        UserBranch::new(bit(3), bit(2), bit(1), bit(0))
    }

    pub fn all() -> impl Iterator<Item = UserBranch> {
        (0..16).map(UserBranch::from_index)
    }

    pub fn with(self, bell: BellOutcome) -> Branch {
        Branch { user: self, bell }
    }
}

fn sign(bit: u8) -> char {
    if bit == 0 {
        '+'
    } else {
        '-'
    }
}

impl fmt::Display for UserBranch {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{},{},{},{}",
            self.alice_z,
            sign(self.alice_x),
            self.bob_z,
            sign(self.bob_x)
        )
    }
}

/// A full measurement branch: the users' outcomes plus Charlie's Bell outcome.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Branch {
    pub user: UserBranch,
    pub bell: BellOutcome,
}

impl Branch {
    /// Index in `0..64`: user index times four plus Bell index.
    pub fn index(&self) -> usize {
        self.user.index() * 4 + self.bell.index()
    }

    pub fn from_index(i: usize) -> Self {
        Branch {
            user: UserBranch::from_index(i / 4),
            bell: BellOutcome::ALL[i % 4],
        }
    }

    pub fn all() -> impl Iterator<Item = Branch> {
        (0..64).map(Branch::from_index)
    }

    pub fn record(&self) -> OutcomeRecord {
        OutcomeRecord::new(self.user, Some(self.bell))
    }
}

impl fmt::Display for Branch {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.user, self.bell)
    }
}

/// The classical record of one protocol run. `charlie_bell` is `None` when
/// Charlie withholds cooperation.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct OutcomeRecord {
    pub alice_z: u8,
    pub alice_x: u8,
    pub bob_z: u8,
    pub bob_x: u8,
    pub charlie_bell: Option<BellOutcome>,
}

impl OutcomeRecord {
    pub fn new(user: UserBranch, charlie_bell: Option<BellOutcome>) -> Self {
        OutcomeRecord {
            alice_z: user.alice_z,
            alice_x: user.alice_x,
            bob_z: user.bob_z,
            bob_x: user.bob_x,
            charlie_bell,
        }
    }

    pub fn user(&self) -> UserBranch {
        UserBranch::new(self.alice_z, self.alice_x, self.bob_z, self.bob_x)
    }

    pub fn branch(&self) -> Result<Branch> {
        let bell = self.charlie_bell.ok_or(Error::MissingCharlieOutcome)?;
        Ok(self.user().with(bell))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn indices_round_trip_and_order() {
        let all: Vec<_> = Branch::all().collect();
        assert_eq!(all.len(), 64);
        for (i, b) in all.iter().enumerate() {
            assert_eq!(b.index(), i);
        }
        let mut sorted = all.clone();
        sorted.sort();
        assert_eq!(sorted, all);
    }

    #[test]
    fn record_without_charlie() {
        let rec = OutcomeRecord::new(UserBranch::new(0, 0, 0, 0), None);
        assert_eq!(rec.branch().unwrap_err(), Error::MissingCharlieOutcome);
    }

    #[test]
    fn display() {
        let b = UserBranch::new(1, 1, 0, 0).with(BellOutcome::PhiPlus);
        assert_eq!(b.to_string(), "(1,-,0,+,phi_plus)");
    }
}
