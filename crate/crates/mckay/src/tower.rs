//! Iterated cores and quotients. Taking the p-core of every iterated
//! p-quotient of a partition produces a tower of cores indexed by level
//! and by a base-p address within the level; the partition is recovered
//! from the tower, and divisibility of the character degree by p reads
//! off the level weights.

use std::collections::BTreeMap;

use crate::abacus::{reconstruct, Abacus};
use crate::error::{Error, Result};
use crate::numtheory::digits;
use crate::partition::Partition;

/// The tower of iterated cores of a partition at an odd prime p.
/// Level k holds the cores of the k-fold quotient components, indexed
/// by an address in [0, p^k); empty entries are not stored.
///
/// ```
/// use mckay::{core_tower, Partition};
///
/// let lambda: Partition = "7,7,5,4,3,2,2".parse().unwrap();
/// let tower = core_tower(&lambda, 3).unwrap();
/// assert_eq!(tower.weights(), vec![0, 4, 2]);
/// assert_eq!(tower.entry(1, 0).to_string(), "1,1");
/// assert_eq!(tower.entry(1, 2).to_string(), "2");
/// assert!(tower.is_symmetric());
/// ```
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoreTower {
    p: u64,
    levels: Vec<BTreeMap<u64, Partition>>,
}

/// Builds the core tower of `lambda` at the odd prime `p`.
pub fn core_tower(lambda: &Partition, p: u64) -> Result<CoreTower> {
    let mut current: Vec<(u64, Partition)> = vec![(0, lambda.clone())];
    let mut levels = Vec::new();
    while !current.is_empty() {
        let mut level = BTreeMap::new();
        let mut next = Vec::new();
        for (pi, mu) in current {
            let ab = Abacus::new(&mu, p)?;
            let core = ab.core();
            if !core.is_empty() {
                level.insert(pi, core);
            }
            for (j, comp) in ab.quotient().into_iter().enumerate() {
                if !comp.is_empty() {
                    next.push((pi * p + j as u64, comp));
                }
            }
        }
        levels.push(level);
        current = next;
    }
    Ok(CoreTower { p, levels })
}

impl CoreTower {
    /// Builds a tower directly from entries. Every entry must be a
    /// p-core, and the address of an entry at level k must lie in
    /// [0, p^k).
    pub fn from_entries(p: u64, levels: Vec<BTreeMap<u64, Partition>>) -> Result<Self> {
        for (k, level) in levels.iter().enumerate() {
            let cap = p.pow(k as u32);
            for (&pi, mu) in level {
                if pi >= cap {
                    return Err(Error::Internal(format!(
                        "address {pi} out of range at level {k}"
                    )));
                }
                if mu.is_empty() {
                    return Err(Error::Internal("empty entries are not stored".into()));
                }
                if !Abacus::new(mu, p)?.is_core() {
                    return Err(Error::NotACore {
                        partition: mu.to_string(),
                        p,
                    });
                }
            }
        }
        let levels = if levels.is_empty() {
            vec![BTreeMap::new()]
        } else {
            levels
        };
        Ok(CoreTower { p, levels })
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    /// Number of levels, at least one.
    pub fn depth(&self) -> usize {
        self.levels.len()
    }

    /// Total size of the entries at each level. The partition size is
    /// the weighted sum of these with weights p^k.
    pub fn weights(&self) -> Vec<u64> {
        self.levels
            .iter()
            .map(|level| level.values().map(Partition::size).sum())
            .collect()
    }

    /// Size of the partition the tower encodes.
    pub fn size(&self) -> u64 {
        self.weights()
            .iter()
            .enumerate()
            .map(|(k, w)| w * self.p.pow(k as u32))
            .sum()
    }

    /// The entry at (level, address); empty when absent.
    pub fn entry(&self, level: usize, pi: u64) -> Partition {
        self.levels
            .get(level)
            .and_then(|m| m.get(&pi))
            .cloned()
            .unwrap_or_else(Partition::empty)
    }

    /// Nonempty entries at a level, address order.
    pub fn entries(&self, level: usize) -> Vec<(u64, &Partition)> {
        self.levels
            .get(level)
            .map(|m| m.iter().map(|(&pi, mu)| (pi, mu)).collect())
            .unwrap_or_default()
    }

    /// The mirrored address at a level.
    pub fn star_index(&self, level: usize, pi: u64) -> u64 {
        self.p.pow(level as u32) - 1 - pi
    }

    /// The middle address (p^k - 1) / 2 at a level.
    pub fn middle_index(&self, level: usize) -> u64 {
        (self.p.pow(level as u32) - 1) / 2
    }

    /// Whether conjugating the partition fixes the tower: the entry at
    /// each mirrored address is the conjugate of the original entry.
    pub fn is_symmetric(&self) -> bool {
        for (k, level) in self.levels.iter().enumerate() {
            for (&pi, mu) in level {
                if self.entry(k, self.star_index(k, pi)) != mu.conjugate() {
                    return false;
                }
            }
        }
        true
    }

    /// Rebuilds the partition the tower came from, by reconstructing
    /// cores and quotients bottom-up.
    pub fn to_partition(&self) -> Result<Partition> {
        let depth = self.levels.len();
        let mut built: BTreeMap<u64, Partition> = match self.levels.last() {
            Some(level) => level.clone(),
            None => BTreeMap::new(),
        };
        for k in (0..depth.saturating_sub(1)).rev() {
            let mut addresses: std::collections::BTreeSet<u64> =
                self.levels[k].keys().copied().collect();
            addresses.extend(built.keys().map(|pi| pi / self.p));
            let mut next = BTreeMap::new();
            for pi in addresses {
                let core = self.entry(k, pi);
                let children: Vec<Partition> = (0..self.p)
                    .map(|j| {
                        built
                            .get(&(pi * self.p + j))
                            .cloned()
                            .unwrap_or_else(Partition::empty)
                    })
                    .collect();
                let part = reconstruct(&core, &children, self.p)?;
                if !part.is_empty() {
                    next.insert(pi, part);
                }
            }
            built = next;
        }
        Ok(built.remove(&0).unwrap_or_else(Partition::empty))
    }

    /// Splits a tower with empty bottom entry into its off-middle and
    /// middle parts: entries away from the middle address of their
    /// level, and entries on it.
    ///
    /// # Errors
    ///
    /// Fails when the level-0 entry is nonempty.
    pub fn split_middle(&self) -> Result<(CoreTower, CoreTower)> {
        let core = self.entry(0, 0);
        if !core.is_empty() {
            return Err(Error::NonEmptyCore(core.to_string()));
        }
        let mut off = Vec::new();
        let mut mid = Vec::new();
        for (k, level) in self.levels.iter().enumerate() {
            let m = self.middle_index(k);
            let mut off_level = BTreeMap::new();
            let mut mid_level = BTreeMap::new();
            for (&pi, mu) in level {
                if k > 0 && pi == m {
                    mid_level.insert(pi, mu.clone());
                } else {
                    off_level.insert(pi, mu.clone());
                }
            }
            off.push(off_level);
            mid.push(mid_level);
        }
        Ok((
            CoreTower {
                p: self.p,
                levels: off,
            },
            CoreTower {
                p: self.p,
                levels: mid,
            },
        ))
    }
}

/// Whether the character degree of `lambda` is prime to p: every tower
/// level weight must equal the matching base-p digit of the size.
pub fn is_p_prime_degree(lambda: &Partition, p: u64) -> Result<bool> {
    let tower = core_tower(lambda, p)?;
    Ok(weights_match_digits(&tower.weights(), lambda.size(), p))
}

pub(crate) fn weights_match_digits(weights: &[u64], n: u64, p: u64) -> bool {
    let ds = digits(n, p);
    let len = weights.len().max(ds.len());
    (0..len).all(|k| weights.get(k).copied().unwrap_or(0) == ds.get(k).copied().unwrap_or(0))
}

/// Regularity of a partition at p: empty core, empty middle entries at
/// every positive level, and degree prime to p.
pub fn is_regular(lambda: &Partition, p: u64) -> Result<bool> {
    let tower = core_tower(lambda, p)?;
    if !tower.entry(0, 0).is_empty() {
        return Ok(false);
    }
    if !weights_match_digits(&tower.weights(), lambda.size(), p) {
        return Ok(false);
    }
    for k in 1..tower.depth() {
        if !tower.entry(k, tower.middle_index(k)).is_empty() {
            return Ok(false);
        }
    }
    Ok(true)
}
