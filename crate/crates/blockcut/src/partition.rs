//! Two-group vertex partitions.

use crate::error::{Error, Result};

/// Group label for a vertex. Exactly two groups exist.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
#[repr(u8)]
pub enum Group {
    One = 1,
    Two = 2,
}

impl Group {
    pub fn other(self) -> Group {
        match self {
            Group::One => Group::Two,
            Group::Two => Group::One,
        }
    }

    pub fn as_u8(self) -> u8 {
        self as u8
    }

    pub fn from_u8(value: u8) -> Option<Group> {
        match value {
            1 => Some(Group::One),
            2 => Some(Group::Two),
            _ => None,
        }
    }
}

/// Assignment of every vertex to one of two groups.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Partition {
    labels: Vec<Group>,
}

impl Partition {
    pub fn new(labels: Vec<Group>) -> Partition {
        Partition { labels }
    }

    /// Builds a partition from raw labels, accepting only values 1 and 2.
    pub fn from_labels(labels: &[u8]) -> Result<Partition> {
        labels
            .iter()
            .map(|&b| {
                Group::from_u8(b).ok_or_else(|| Error::InvalidConfig {
                    msg: format!("label {b} is not 1 or 2"),
                })
            })
            .collect::<Result<Vec<Group>>>()
            .map(Partition::new)
    }

    /// All vertices in the same group.
    pub fn uniform(n: usize, group: Group) -> Partition {
        Partition {
            labels: vec![group; n],
        }
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn group(&self, v: usize) -> Group {
        self.labels[v]
    }

    pub fn set(&mut self, v: usize, g: Group) {
        self.labels[v] = g;
    }

    pub fn labels(&self) -> &[Group] {
        &self.labels
    }

    /// Labels as raw bytes (1 or 2), the on-disk and JSON representation.
    pub fn label_bytes(&self) -> Vec<u8> {
        self.labels.iter().map(|g| g.as_u8()).collect()
    }

    /// The same partition with group names exchanged.
    pub fn swapped(&self) -> Partition {
        Partition {
            labels: self.labels.iter().map(|g| g.other()).collect(),
        }
    }

    /// Vertex counts of (group 1, group 2).
    pub fn group_sizes(&self) -> (u64, u64) {
        let ones = self.labels.iter().filter(|g| **g == Group::One).count() as u64;
        (ones, self.labels.len() as u64 - ones)
    }
}
