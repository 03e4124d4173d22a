//! The p-runner abacus. Position u of a bead sequence sits on runner
//! u mod p at height floor(u / p); cores, quotients, and hook data
//! divisible by p are read off runner by runner.

use crate::error::{Error, Result};
use crate::numtheory::check_odd_prime;
use crate::partition::Partition;
use crate::sequence::{sequence_from_bead_data, PartitionSequence};

/// A partition laid out on `p` runners.
///
/// ```
/// use mckay::{Abacus, Partition};
///
/// let lambda: Partition = "4,2,1".parse().unwrap();
/// let ab = Abacus::new(&lambda, 3).unwrap();
/// assert_eq!(ab.core().to_string(), "1");
/// assert_eq!(ab.balances(), vec![1, 0, -1]);
/// let q = ab.quotient();
/// assert_eq!(q[0].to_string(), "1,1");
/// assert!(q[1].is_empty() && q[2].is_empty());
/// ```
#[derive(Clone, Debug)]
pub struct Abacus {
    p: u64,
    seq: PartitionSequence,
}

impl Abacus {
    /// Lays `lambda` out on `p` runners.
    ///
    /// # Errors
    ///
    /// Fails unless `p` is an odd prime.
    pub fn new(lambda: &Partition, p: u64) -> Result<Self> {
        check_odd_prime(p)?;
        Ok(Abacus {
            p,
            seq: PartitionSequence::from_partition(lambda),
        })
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn sequence(&self) -> &PartitionSequence {
        &self.seq
    }

    /// Runner `gamma` as a sequence in its own height coordinate j,
    /// reading position j*p + gamma.
    pub fn runner(&self, gamma: u64) -> PartitionSequence {
        assert!(gamma < self.p, "runner index out of range");
        let p = self.p as i64;
        let g = gamma as i64;
        let j_lo = (self.seq.offset() - g).div_euclid(p);
        let j_hi = (self.seq.span_end() - g).div_euclid(p) + 1;
        let bits: Vec<u8> = (j_lo..j_hi).map(|j| self.seq.entry(j * p + g)).collect();
        PartitionSequence::new(j_lo, bits).expect("bits are 0 or 1")
    }

    /// Charge of runner `gamma`: beads at nonnegative heights minus gaps
    /// at negative heights. Balances sum to zero over all runners.
    pub fn balance(&self, gamma: u64) -> i64 {
        self.runner(gamma).charge()
    }

    pub fn balances(&self) -> Vec<i64> {
        (0..self.p).map(|g| self.balance(g)).collect()
    }

    /// The p-core: the partition left after sliding every runner's beads
    /// down as far as they go. Determined by the balances alone.
    pub fn core(&self) -> Partition {
        let p = self.p as i64;
        let mut beads = Vec::new();
        let mut gaps = Vec::new();
        for gamma in 0..self.p {
            let d = self.balance(gamma);
            let g = gamma as i64;
            if d > 0 {
                beads.extend((0..d).map(|j| j * p + g));
            } else {
                gaps.extend((d..0).map(|j| j * p + g));
            }
        }
        sequence_from_bead_data(&beads, &gaps)
            .to_partition()
            .expect("balances sum to zero")
    }

    /// The p-quotient: one partition per runner, each read off the runner
    /// in its own coordinate. Component order follows the runner index.
    pub fn quotient(&self) -> Vec<Partition> {
        (0..self.p)
            .map(|g| self.runner(g).window_partition())
            .collect()
    }

    /// Whether the partition is its own p-core.
    pub fn is_core(&self) -> bool {
        self.quotient().iter().all(Partition::is_empty)
    }

    /// Plain-text picture of the abacus. Rows are heights, highest first,
    /// labeled by the position of their runner-0 cell; `o` is a bead and
    /// `-` is a gap. Rows always cover heights 0 and -1.
    pub fn render(&self) -> String {
        let p = self.p as i64;
        let r_hi = ((self.seq.span_end() - 1).div_euclid(p)).max(0);
        let r_lo = (self.seq.offset().div_euclid(p)).min(-1);
        let width = (r_lo * p)
            .to_string()
            .len()
            .max((r_hi * p).to_string().len());
        let mut out = String::new();
        for r in (r_lo..=r_hi).rev() {
            let label = r * p;
            let cells: Vec<&str> = (0..p)
                .map(|g| {
                    if self.seq.entry(r * p + g) == 0 {
                        "o"
                    } else {
                        "-"
                    }
                })
                .collect();
            out.push_str(&format!("{:>width$}  {}\n", label, cells.join(" ")));
        }
        out
    }
}

/// Rebuilds the partition with the given p-core and p-quotient.
///
/// # Errors
///
/// Fails unless `p` is an odd prime, `core` is a p-core, and `quotient`
/// has exactly `p` components.
///
/// ```
/// use mckay::{abacus, Abacus, Partition};
///
/// let lambda: Partition = "4,2,1".parse().unwrap();
/// let ab = Abacus::new(&lambda, 3).unwrap();
/// let back = abacus::reconstruct(&ab.core(), &ab.quotient(), 3).unwrap();
/// assert_eq!(back, lambda);
/// ```
pub fn reconstruct(core: &Partition, quotient: &[Partition], p: u64) -> Result<Partition> {
    check_odd_prime(p)?;
    if quotient.len() as u64 != p {
        return Err(Error::QuotientLength {
            expected: p,
            found: quotient.len(),
        });
    }
    let core_ab = Abacus::new(core, p)?;
    if !core_ab.is_core() {
        return Err(Error::NotACore {
            partition: core.to_string(),
            p,
        });
    }
    let pi = p as i64;
    let mut beads = Vec::new();
    let mut gaps = Vec::new();
    for gamma in 0..p {
        let d = core_ab.balance(gamma);
        let g = gamma as i64;
        let comp = PartitionSequence::from_partition(&quotient[gamma as usize]);
        let lo = comp.offset() + d;
        let hi = comp.span_end() + d;
        for j in lo..hi {
            let u = j * pi + g;
            match comp.entry(j - d) {
                0 if u >= 0 => beads.push(u),
                1 if u < 0 => gaps.push(u),
                _ => {}
            }
        }
        for j in 0..lo {
            beads.push(j * pi + g);
        }
        for j in hi..0 {
            gaps.push(j * pi + g);
        }
    }
    sequence_from_bead_data(&beads, &gaps).to_partition()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> Partition {
        s.parse().unwrap()
    }

    #[test]
    fn reference_core_and_quotient() {
        let lam = p("16,11,3,2,2,2,2,2,2,2,2,1,1,1,1,1");
        let ab = Abacus::new(&lam, 3).unwrap();
        assert_eq!(ab.core(), p("7,5,3,2,2,1,1"));
        assert_eq!(ab.balances(), vec![3, 0, -3]);
        let q = ab.quotient();
        assert_eq!(q[0], p("3,2"));
        assert!(q[1].is_empty());
        assert_eq!(q[2], p("2,2,1"));
        let w: u64 = q.iter().map(Partition::size).sum();
        assert_eq!(lam.size(), ab.core().size() + 3 * w);
    }

    #[test]
    fn reference_core_diagonal_hooks() {
        let core = Abacus::new(&p("16,11,3,2,2,2,2,2,2,2,2,1,1,1,1,1"), 3)
            .unwrap()
            .core();
        assert!(core.is_symmetric());
        assert_eq!(core.diagonal_hooks(), vec![13, 7, 1]);
    }

    #[test]
    fn core_is_idempotent_and_coreless() {
        for n in 0..=12 {
            for lam in Partition::all(n) {
                let ab = Abacus::new(&lam, 3).unwrap();
                let c = ab.core();
                let cab = Abacus::new(&c, 3).unwrap();
                assert!(cab.is_core(), "core of {lam:?} not a core");
                assert_eq!(cab.core(), c);
            }
        }
    }

    #[test]
    fn reconstruct_inverts_core_quotient() {
        for n in 0..=12 {
            for lam in Partition::all(n) {
                for prime in [3u64, 5] {
                    let ab = Abacus::new(&lam, prime).unwrap();
                    let back = reconstruct(&ab.core(), &ab.quotient(), prime).unwrap();
                    assert_eq!(back, lam, "p = {prime}");
                }
            }
        }
    }

    #[test]
    fn reconstruct_validates_input() {
        let empties = vec![Partition::empty(), Partition::empty(), Partition::empty()];
        assert!(matches!(
            reconstruct(&p("1"), &empties[..2], 3),
            Err(Error::QuotientLength { .. })
        ));
        assert!(matches!(
            reconstruct(&p("3"), &empties, 3),
            Err(Error::NotACore { .. })
        ));
        assert!(matches!(
            reconstruct(&Partition::empty(), &[], 4),
            Err(Error::InvalidPrime(4))
        ));
    }

    #[test]
    fn even_or_composite_modulus_rejected() {
        assert!(Abacus::new(&p("2,1"), 2).is_err());
        assert!(Abacus::new(&p("2,1"), 9).is_err());
        assert!(Abacus::new(&p("2,1"), 1).is_err());
    }

    #[test]
    fn quotient_of_core_is_empty() {
        let ab = Abacus::new(&p("7,5,3,2,2,1,1"), 3).unwrap();
        assert!(ab.is_core());
        assert_eq!(ab.core(), p("7,5,3,2,2,1,1"));
    }

    #[test]
    fn render_reference_layout() {
        let ab = Abacus::new(&p("7,7,5,4,3,2,2"), 3).unwrap();
        let expected = concat!(
            " 6  o - -\n",
            " 3  - - o\n",
            " 0  o - o\n",
            "-3  - o -\n",
            "-6  - o o\n",
            "-9  o o -\n",
        );
        assert_eq!(ab.render(), expected);
    }

    #[test]
    fn render_empty_partition() {
        let ab = Abacus::new(&Partition::empty(), 3).unwrap();
        let expected = concat!(" 0  - - -\n", "-3  o o o\n");
        assert_eq!(ab.render(), expected);
    }

    #[test]
    fn size_decomposition_over_primes() {
        for n in 0..=14 {
            for lam in Partition::all(n) {
                for prime in [3u64, 5, 7] {
                    let ab = Abacus::new(&lam, prime).unwrap();
                    let w: u64 = ab.quotient().iter().map(Partition::size).sum();
                    assert_eq!(lam.size(), ab.core().size() + prime * w);
                }
            }
        }
    }
}
