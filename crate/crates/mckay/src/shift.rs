//! Runner shift data for self-conjugate partitions. Conjugation mirrors
//! runner gamma into runner p-1-gamma and negates its balance, so beads
//! and gaps of the quotient components organize the diagonal hooks into
//! core hooks, mirror pairs across runners, and a p-divisible part
//! carried by the middle runner.

use crate::abacus::Abacus;
use crate::error::{Error, Result};
use crate::partition::Partition;
use crate::sequence::PartitionSequence;
use crate::tower::is_regular;

/// Per-runner shift data of a self-conjugate partition: balances, the
/// bead and gap labels of each quotient component, and the split of the
/// shifted range [-delta, -1] into labels missing from and present in
/// the gap set.
///
/// ```
/// use mckay::{shift_data, Partition};
///
/// let lambda: Partition = "16,11,3,2,2,2,2,2,2,2,2,1,1,1,1,1".parse().unwrap();
/// let sd = shift_data(&lambda, 3).unwrap();
/// assert_eq!(sd.delta(0), 3);
/// assert_eq!(sd.x_set(0), &[2, 0]);
/// assert_eq!(sd.x_set(2), &[1, 0]);
/// assert_eq!(sd.a_set(0), &[-3]);
/// assert_eq!(sd.b_set(0), &[-2, -1]);
/// ```
#[derive(Clone, Debug)]
pub struct ShiftData {
    p: u64,
    deltas: Vec<i64>,
    xs: Vec<Vec<i64>>,
    ys: Vec<Vec<i64>>,
    missing: Vec<Vec<i64>>,
    present: Vec<Vec<i64>>,
}

/// Computes shift data at an odd prime p.
///
/// # Errors
///
/// Fails unless `lambda` is self-conjugate and `p` is an odd prime.
pub fn shift_data(lambda: &Partition, p: u64) -> Result<ShiftData> {
    if !lambda.is_symmetric() {
        return Err(Error::NotSymmetric(lambda.to_string()));
    }
    let ab = Abacus::new(lambda, p)?;
    let mut deltas = Vec::with_capacity(p as usize);
    let mut xs = Vec::with_capacity(p as usize);
    let mut ys = Vec::with_capacity(p as usize);
    let mut missing = Vec::with_capacity(p as usize);
    let mut present = Vec::with_capacity(p as usize);
    for gamma in 0..p {
        let comp = PartitionSequence::from_partition(&ab.runner(gamma).window_partition());
        let delta = ab.balance(gamma);
        let x = comp.beads_nonneg();
        let y = comp.gaps_neg();
        let (mut a, mut b) = (Vec::new(), Vec::new());
        if delta > 0 {
            for t in -delta..0 {
                if y.binary_search(&t).is_ok() {
                    b.push(t);
                } else {
                    a.push(t);
                }
            }
        }
        deltas.push(delta);
        xs.push(x);
        ys.push(y);
        missing.push(a);
        present.push(b);
    }
    Ok(ShiftData {
        p,
        deltas,
        xs,
        ys,
        missing,
        present,
    })
}

impl ShiftData {
    pub fn p(&self) -> u64 {
        self.p
    }

    /// Balance of runner gamma. Mirrored runners have opposite balances.
    pub fn delta(&self, gamma: u64) -> i64 {
        self.deltas[gamma as usize]
    }

    /// Bead labels (heights >= 0) of the quotient component on runner
    /// gamma, in decreasing order.
    pub fn x_set(&self, gamma: u64) -> &[i64] {
        &self.xs[gamma as usize]
    }

    /// Gap labels (heights < 0) of the quotient component on runner
    /// gamma, in increasing order.
    pub fn y_set(&self, gamma: u64) -> &[i64] {
        &self.ys[gamma as usize]
    }

    /// Labels in [-delta, -1] missing from the gap set; empty unless the
    /// balance is positive.
    pub fn a_set(&self, gamma: u64) -> &[i64] {
        &self.missing[gamma as usize]
    }

    /// Labels in [-delta, -1] present in the gap set; empty unless the
    /// balance is positive.
    pub fn b_set(&self, gamma: u64) -> &[i64] {
        &self.present[gamma as usize]
    }

    /// Total count of present labels over positive-balance runners.
    pub fn b_count(&self) -> u64 {
        self.present.iter().map(|b| b.len() as u64).sum()
    }

    /// Diagonal hook of the full partition attached to bead x on runner
    /// gamma: 2(xp + gamma) + 1.
    pub fn hook_at(&self, gamma: u64, x: i64) -> u64 {
        (2 * (x * self.p as i64 + gamma as i64) + 1) as u64
    }

    /// Diagonal hooks of the core, read from the shifted ranges of the
    /// positive-balance runners, largest first.
    pub fn core_diagonal_hooks(&self) -> Vec<u64> {
        let mut out = Vec::new();
        for gamma in 0..self.p {
            let d = self.delta(gamma);
            if d <= 0 {
                continue;
            }
            for x in self.missing[gamma as usize]
                .iter()
                .chain(self.present[gamma as usize].iter())
            {
                out.push(self.hook_at(gamma, d + x));
            }
        }
        out.sort_unstable_by(|a, b| b.cmp(a));
        out
    }

    /// Diagonal hooks of the partition rebuilt from the quotient alone
    /// (empty core), largest first.
    pub fn stripped_diagonal_hooks(&self) -> Vec<u64> {
        let mut out = Vec::new();
        for gamma in 0..self.p {
            for &x in &self.xs[gamma as usize] {
                out.push(self.hook_at(gamma, x));
            }
        }
        out.sort_unstable_by(|a, b| b.cmp(a));
        out
    }

    /// Bead-gap pairs on runner gamma: the i-th largest bead with the
    /// i-th smallest gap.
    pub fn runner_pairs(&self, gamma: u64) -> Vec<(i64, i64)> {
        self.xs[gamma as usize]
            .iter()
            .copied()
            .zip(self.ys[gamma as usize].iter().copied())
            .collect()
    }

    /// Hook pairs of the stripped partition under the mirror involution:
    /// for each runner below the middle, the bead hook together with the
    /// partner hook on the mirrored runner; on the middle runner the
    /// pairing fixes each hook, giving pairs of equal values.
    pub fn mirror_pairs(&self) -> Vec<(u64, u64)> {
        let mut out = Vec::new();
        for gamma in 0..=(self.p - 1) / 2 {
            for (x, y) in self.runner_pairs(gamma) {
                let d = self.hook_at(gamma, x);
                let partner = self.hook_at(self.p - 1 - gamma, -y - 1);
                out.push((d, partner));
            }
        }
        out
    }
}

/// The mirror-pair structure of the diagonal hooks of a regular
/// self-conjugate partition. Entry k lists the pairs contributed at
/// depth k of the middle-runner chain, with values carrying a factor
/// p^k; the multiset of all pair values is the set of diagonal hooks.
///
/// # Errors
///
/// Fails with `NotRegular` when the partition has a nonempty core, a
/// nonempty middle tower entry, or degree divisible by p.
pub fn diagonal_hook_structure(lambda: &Partition, p: u64) -> Result<Vec<Vec<(u64, u64)>>> {
    if !lambda.is_symmetric() || !is_regular(lambda, p)? {
        return Err(Error::NotRegular(lambda.to_string()));
    }
    let mut levels = Vec::new();
    let mut current = lambda.clone();
    let mut scale = 1u64;
    loop {
        let sd = shift_data(&current, p)?;
        let mut level = Vec::new();
        for gamma in 0..(p - 1) / 2 {
            for (x, y) in sd.runner_pairs(gamma) {
                let d = sd.hook_at(gamma, x);
                let partner = sd.hook_at(p - 1 - gamma, -y - 1);
                level.push((scale * d, scale * partner));
            }
        }
        levels.push(level);
        let mid = Abacus::new(&current, p)?.quotient()[((p - 1) / 2) as usize].clone();
        if mid.is_empty() {
            break;
        }
        current = mid;
        scale *= p;
    }
    Ok(levels)
}
