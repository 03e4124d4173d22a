//! Doubly infinite bead sequences. A partition is encoded by the set of
//! beads {lambda_i - i : i >= 1}; positions far to the left are all beads
//! and positions far to the right are all gaps, so a finite window
//! suffices. Bit 0 marks a bead, bit 1 marks a gap.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::partition::Partition;

/// A cofinite bead configuration on the integers, stored as a canonical
/// window. Everything left of the window is a bead, everything right of
/// it is a gap; the window itself starts with a gap and ends with a bead
/// (or is empty, for a shifted vacuum).
///
/// ```
/// use mckay::{Partition, PartitionSequence};
///
/// let lambda: Partition = "7,7,5,4,3,2,2".parse().unwrap();
/// let seq = PartitionSequence::from_partition(&lambda);
/// assert_eq!(seq.offset(), -7);
/// assert_eq!(seq.to_string(), "1100101|0101100");
/// assert_eq!(seq.to_partition().unwrap(), lambda);
/// ```
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct PartitionSequence {
    offset: i64,
    window: Vec<u8>,
}

impl PartitionSequence {
    /// Builds a sequence from an explicit window starting at `offset`.
    ///
    /// Bits other than 0 and 1 are rejected. The window is trimmed to
    /// canonical form, so equal configurations compare equal.
    pub fn new(offset: i64, window: Vec<u8>) -> Result<Self> {
        if window.iter().any(|&b| b > 1) {
            return Err(Error::Parse("sequence bits must be 0 or 1".into()));
        }
        let mut seq = PartitionSequence { offset, window };
        seq.canonicalize();
        Ok(seq)
    }

    /// The bead sequence of a partition.
    pub fn from_partition(lambda: &Partition) -> Self {
        let m = lambda.len() as i64;
        if m == 0 {
            return PartitionSequence {
                offset: 0,
                window: Vec::new(),
            };
        }
        let top = lambda.part(1) as i64 - 1;
        let beads: std::collections::BTreeSet<i64> = (1..=m)
            .map(|i| lambda.part(i as usize) as i64 - i)
            .collect();
        let window = (-m..=top)
            .map(|u| if beads.contains(&u) { 0 } else { 1 })
            .collect();
        let mut seq = PartitionSequence { offset: -m, window };
        seq.canonicalize();
        seq
    }

    fn canonicalize(&mut self) {
        let lead = self.window.iter().take_while(|&&b| b == 0).count();
        self.window.drain(..lead);
        self.offset += lead as i64;
        while self.window.last() == Some(&1) {
            self.window.pop();
        }
    }

    /// First window position; positions below it are beads.
    pub fn offset(&self) -> i64 {
        self.offset
    }

    /// One past the last window position; positions at or above it are gaps.
    pub fn span_end(&self) -> i64 {
        self.offset + self.window.len() as i64
    }

    pub fn window(&self) -> &[u8] {
        &self.window
    }

    /// The bit at position `u`: 0 for a bead, 1 for a gap.
    pub fn entry(&self, u: i64) -> u8 {
        if u < self.offset {
            0
        } else if u >= self.span_end() {
            1
        } else {
            self.window[(u - self.offset) as usize]
        }
    }

    /// Number of beads at nonnegative positions minus number of gaps at
    /// negative positions. Partitions have charge zero.
    pub fn charge(&self) -> i64 {
        self.beads_nonneg().len() as i64 - self.gaps_neg().len() as i64
    }

    /// Beads at positions >= 0, in decreasing order.
    pub fn beads_nonneg(&self) -> Vec<i64> {
        let mut out = Vec::new();
        for u in (self.offset.max(0)..self.span_end()).rev() {
            if self.entry(u) == 0 {
                out.push(u);
            }
        }
        if self.offset > 0 {
            out.extend((0..self.offset).rev());
        }
        out
    }

    /// Gaps at positions < 0, in increasing order.
    pub fn gaps_neg(&self) -> Vec<i64> {
        let mut out = Vec::new();
        if self.span_end() < 0 {
            out.extend(self.span_end()..0);
        }
        for u in self.offset..self.span_end().min(0) {
            if self.entry(u) == 1 {
                out.push(u);
            }
        }
        out.sort_unstable();
        out
    }

    /// Recovers the partition encoded by the sequence.
    ///
    /// # Errors
    ///
    /// Fails with the charge when the sequence is not balanced.
    pub fn to_partition(&self) -> Result<Partition> {
        let charge = self.charge();
        if charge != 0 {
            return Err(Error::UnbalancedSequence { charge });
        }
        Ok(self.window_partition())
    }

    /// The partition read off the window alone: each bead contributes a
    /// part equal to the number of gaps below it. This is independent of
    /// where the window sits, so it also serves charged sequences, where
    /// it describes the configuration relative to its own vacuum.
    pub fn window_partition(&self) -> Partition {
        let mut gaps_seen = 0u32;
        let mut parts_asc = Vec::new();
        for &b in &self.window {
            if b == 1 {
                gaps_seen += 1;
            } else if gaps_seen > 0 {
                parts_asc.push(gaps_seen);
            }
        }
        parts_asc.reverse();
        Partition::new(parts_asc).expect("gap counts are weakly decreasing")
    }

    /// The sequence of the conjugate partition: position u maps to
    /// the flipped bit at -u-1.
    pub fn conjugate(&self) -> Self {
        let window: Vec<u8> = self.window.iter().rev().map(|&b| 1 - b).collect();
        let offset = -self.span_end();
        let mut seq = PartitionSequence { offset, window };
        seq.canonicalize();
        seq
    }
}

/// Builds the sequence whose beads at nonnegative positions and gaps at
/// negative positions are exactly the given lists. A balanced input
/// (equal lengths) describes a partition.
pub(crate) fn sequence_from_bead_data(beads_nonneg: &[i64], gaps_neg: &[i64]) -> PartitionSequence {
    debug_assert!(beads_nonneg.iter().all(|&b| b >= 0));
    debug_assert!(gaps_neg.iter().all(|&g| g < 0));
    let beads: std::collections::BTreeSet<i64> = beads_nonneg.iter().copied().collect();
    let gaps: std::collections::BTreeSet<i64> = gaps_neg.iter().copied().collect();
    let lo = gaps.iter().next().copied().unwrap_or(0);
    let hi = beads.iter().next_back().copied().unwrap_or(-1);
    let window = (lo..=hi)
        .map(|u| {
            let is_bead = if u < 0 {
                !gaps.contains(&u)
            } else {
                beads.contains(&u)
            };
            if is_bead {
                0
            } else {
                1
            }
        })
        .collect();
    PartitionSequence::new(lo, window).expect("bits are 0 or 1")
}

impl fmt::Display for PartitionSequence {
    /// Window bits with a bar before position 0, extending the window so
    /// the bar is always visible.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let lo = self.offset.min(0);
        let hi = self.span_end().max(0);
        for u in lo..hi {
            if u == 0 {
                write!(f, "|")?;
            }
            write!(f, "{}", self.entry(u))?;
        }
        if hi == 0 {
            write!(f, "|")?;
        }
        Ok(())
    }
}

impl FromStr for PartitionSequence {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let bar = s
            .find('|')
            .ok_or_else(|| Error::Parse("sequence needs a | marking position 0".into()))?;
        let mut window = Vec::with_capacity(s.len() - 1);
        for c in s.chars() {
            match c {
                '0' => window.push(0),
                '1' => window.push(1),
                '|' => {}
                other => return Err(Error::Parse(format!("bad sequence char {other:?}"))),
            }
        }
        PartitionSequence::new(-(bar as i64), window)
    }
}
