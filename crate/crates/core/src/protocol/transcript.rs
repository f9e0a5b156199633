use std::fmt;

use serde::{Deserialize, Serialize};

use super::{OutcomeRecord, UserBranch};
use crate::qstate::BellOutcome;
use crate::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Party {
    Alice,
    Bob,
    Charlie,
}

impl fmt::Display for Party {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Party::Alice => "alice",
            Party::Bob => "bob",
            Party::Charlie => "charlie",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Payload {
    /// A user's Z outcome on its channel qubit and X outcome on its payload.
    UserOutcome {
        z: u8,
        x: u8,
    },
    Bell(BellOutcome),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Message {
    pub sender: Party,
    pub recipients: Vec<Party>,
    pub payload: Payload,
}

/// Ordered classical messages of one run.
///
/// `push` rejects anything that breaks the announcement order: each user
/// announces once, Charlie announces at most once and only after both users.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Transcript {
    messages: Vec<Message>,
}

impl Transcript {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn messages(&self) -> &[Message] {
        &self.messages
    }

    fn sent_by(&self, party: Party) -> Option<&Message> {
        self.messages.iter().find(|m| m.sender == party)
    }

    pub fn push(&mut self, msg: Message) -> Result<()> {
        if self.sent_by(msg.sender).is_some() {
            return Err(Error::TranscriptOrder(format!(
                "{} already announced",
                msg.sender
            )));
        }
        match (msg.sender, msg.payload) {
            (Party::Alice | Party::Bob, Payload::UserOutcome { z, x }) => {
                if z > 1 || x > 1 {
                    return Err(Error::TranscriptOrder(format!(
                        "{} sent non-binary outcome",
                        msg.sender
                    )));
                }
                if self.sent_by(Party::Charlie).is_some() {
                    return Err(Error::TranscriptOrder(format!(
                        "{} announced after Charlie",
                        msg.sender
                    )));
                }
            }
            (Party::Charlie, Payload::Bell(_)) => {
                if self.sent_by(Party::Alice).is_none() || self.sent_by(Party::Bob).is_none() {
                    return Err(Error::TranscriptOrder(
                        "Charlie announced before both users".into(),
                    ));
                }
            }
            (sender, _) => {
                return Err(Error::TranscriptOrder(format!(
                    "{sender} sent the wrong kind of payload"
                )))
            }
        }
        self.messages.push(msg);
        Ok(())
    }

    /// Checks the ordering invariant on an already-built message list.
    pub fn from_messages(messages: Vec<Message>) -> Result<Self> {
        let mut t = Transcript::new();
        for m in messages {
            t.push(m)?;
        }
        Ok(t)
    }

    /// Messages a party can see: those it sent or was addressed in.
    pub fn view_of(&self, party: Party) -> impl Iterator<Item = &Message> {
        self.messages
            .iter()
            .filter(move |m| m.sender == party || m.recipients.contains(&party))
    }

    fn user_outcome(&self, party: Party) -> Result<(u8, u8)> {
        match self.sent_by(party).map(|m| m.payload) {
            Some(Payload::UserOutcome { z, x }) => Ok((z, x)),
            _ => Err(Error::TranscriptOrder(format!("{party} has not announced"))),
        }
    }

    pub fn charlie_outcome(&self) -> Option<BellOutcome> {
        match self.sent_by(Party::Charlie).map(|m| m.payload) {
            Some(Payload::Bell(b)) => Some(b),
            _ => None,
        }
    }

    pub fn outcome_record(&self) -> Result<OutcomeRecord> {
        let (az, ax) = self.user_outcome(Party::Alice)?;
        let (bz, bx) = self.user_outcome(Party::Bob)?;
        Ok(OutcomeRecord::new(
            UserBranch::new(az, ax, bz, bx),
            self.charlie_outcome(),
        ))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn user(sender: Party, z: u8, x: u8) -> Message {
        let other = if sender == Party::Alice {
            Party::Bob
        } else {
            Party::Alice
        };
        Message {
            sender,
            recipients: vec![other, Party::Charlie],
            payload: Payload::UserOutcome { z, x },
        }
    }

    fn charlie(b: BellOutcome) -> Message {
        Message {
            sender: Party::Charlie,
            recipients: vec![Party::Alice, Party::Bob],
            payload: Payload::Bell(b),
        }
    }

    #[test]
    fn well_ordered_transcript() {
        let t = Transcript::from_messages(vec![
            user(Party::Alice, 1, 0),
            user(Party::Bob, 0, 1),
            charlie(BellOutcome::PsiPlus),
        ])
        .unwrap();
        let rec = t.outcome_record().unwrap();
        assert_eq!(rec.user(), UserBranch::new(1, 0, 0, 1));
        assert_eq!(rec.charlie_bell, Some(BellOutcome::PsiPlus));
        assert_eq!(t.view_of(Party::Charlie).count(), 3);
        assert_eq!(t.view_of(Party::Alice).count(), 3);
    }

    #[test]
    fn charlie_before_users_is_rejected() {
        let mut t = Transcript::new();
        t.push(user(Party::Alice, 0, 0)).unwrap();
        assert!(matches!(
            t.push(charlie(BellOutcome::PhiPlus)),
            Err(Error::TranscriptOrder(_))
        ));
    }

    #[test]
    fn user_after_charlie_and_duplicates_are_rejected() {
        let mut t = Transcript::new();
        t.push(user(Party::Alice, 0, 0)).unwrap();
        assert!(t.push(user(Party::Alice, 1, 0)).is_err());
        t.push(user(Party::Bob, 0, 0)).unwrap();
        t.push(charlie(BellOutcome::PhiPlus)).unwrap();
        assert!(t.push(charlie(BellOutcome::PhiMinus)).is_err());
    }

    #[test]
    fn wrong_payload_kind() {
        let mut t = Transcript::new();
        let bad = Message {
            sender: Party::Alice,
            recipients: vec![Party::Bob],
            payload: Payload::Bell(BellOutcome::PhiPlus),
        };
        assert!(t.push(bad).is_err());
    }

    #[test]
    fn silent_charlie_leaves_record_open() {
        let t = Transcript::from_messages(vec![user(Party::Bob, 0, 0), user(Party::Alice, 0, 0)])
            .unwrap();
        assert_eq!(t.outcome_record().unwrap().charlie_bell, None);
    }
}
