//! Integer partitions, hooks, and character-theoretic quantities attached
//! to them: degrees via the hook length formula, diagonal hooks of
//! self-conjugate partitions, and exact character values on arbitrary
//! conjugacy classes via iterated hook removal.

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Zero};

use crate::error::{Error, Result};

/// A partition: a weakly decreasing sequence of positive integers.
///
/// The empty partition is allowed and prints as `-`.
///
/// ```
/// use mckay::Partition;
///
/// let lambda: Partition = "7,7,5,4,3,2,2".parse().unwrap();
/// assert_eq!(lambda.size(), 30);
/// assert_eq!(lambda.len(), 7);
/// assert!(lambda.is_symmetric());
/// ```
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Partition {
    parts: Vec<u32>,
}

/// One cell of a Young diagram together with its hook data.
///
/// Rows and columns are 1-based; `length = arm + leg + 1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Hook {
    pub row: u32,
    pub col: u32,
    pub arm: u32,
    pub leg: u32,
    pub length: u32,
}

impl Partition {
    /// Builds a partition, rejecting increasing or non-positive parts.
    pub fn new(parts: Vec<u32>) -> Result<Self> {
        for w in parts.windows(2) {
            if w[0] < w[1] {
                return Err(Error::MalformedPartition(format!(
                    "parts must be weakly decreasing, found {} before {}",
                    w[0], w[1]
                )));
            }
        }
        if parts.contains(&0) {
            return Err(Error::MalformedPartition("zero part".into()));
        }
        Ok(Partition { parts })
    }

    /// The empty partition.
    pub fn empty() -> Self {
        Partition { parts: Vec::new() }
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    /// Number of parts.
    pub fn len(&self) -> usize {
        self.parts.len()
    }

    /// Sum of the parts.
    pub fn size(&self) -> u64 {
        self.parts.iter().map(|&x| x as u64).sum()
    }

    pub fn parts(&self) -> &[u32] {
        &self.parts
    }

    /// The i-th part, 1-based; zero beyond the last part.
    pub fn part(&self, i: usize) -> u32 {
        if i == 0 || i > self.parts.len() {
            0
        } else {
            self.parts[i - 1]
        }
    }

    /// The transposed diagram.
    ///
    /// ```
    /// use mckay::Partition;
    ///
    /// let lambda: Partition = "4,2,1".parse().unwrap();
    /// assert_eq!(lambda.conjugate().to_string(), "3,2,1,1");
    /// ```
    pub fn conjugate(&self) -> Partition {
        if self.parts.is_empty() {
            return Partition::empty();
        }
        let cols = self.parts[0] as usize;
        let mut t = Vec::with_capacity(cols);
        for j in 1..=cols {
            let count = self.parts.iter().take_while(|&&x| x as usize >= j).count();
            t.push(count as u32);
        }
        Partition { parts: t }
    }

    /// Whether the diagram equals its transpose.
    pub fn is_symmetric(&self) -> bool {
        *self == self.conjugate()
    }

    /// Side length of the largest square contained in the diagram.
    pub fn durfee(&self) -> u32 {
        let mut d = 0u32;
        for (i, &x) in self.parts.iter().enumerate() {
            if x as usize > i {
                d = (i + 1) as u32;
            } else {
                break;
            }
        }
        d
    }

    /// All hooks of the diagram, row-major.
    pub fn hooks(&self) -> Vec<Hook> {
        let conj = self.conjugate();
        let mut out = Vec::with_capacity(self.size() as usize);
        for (i0, &row) in self.parts.iter().enumerate() {
            let row_idx = (i0 + 1) as u32;
            for j in 1..=row {
                let arm = row - j;
                let leg = conj.part(j as usize) - row_idx;
                out.push(Hook {
                    row: row_idx,
                    col: j,
                    arm,
                    leg,
                    length: arm + leg + 1,
                });
            }
        }
        out
    }

    /// Hook lengths of the diagonal cells, largest first.
    ///
    /// For a self-conjugate partition these are distinct odd numbers
    /// summing to the size.
    ///
    /// ```
    /// use mckay::Partition;
    ///
    /// let lambda: Partition = "7,7,5,4,3,2,2".parse().unwrap();
    /// assert_eq!(lambda.diagonal_hooks(), vec![13, 11, 5, 1]);
    /// ```
    pub fn diagonal_hooks(&self) -> Vec<u64> {
        let conj = self.conjugate();
        let d = self.durfee() as usize;
        (1..=d)
            .map(|i| (self.part(i) + conj.part(i) + 1 - 2 * i as u32) as u64)
            .collect()
    }

    /// Rebuilds a self-conjugate partition from its diagonal hook lengths.
    ///
    /// The lengths may come in any order but must be distinct, odd, and
    /// positive.
    pub fn from_diagonal_hooks(hooks: &[u64]) -> Result<Partition> {
        let mut hs = hooks.to_vec();
        hs.sort_unstable_by(|a, b| b.cmp(a));
        for w in hs.windows(2) {
            if w[0] == w[1] {
                return Err(Error::MalformedPartition(format!(
                    "repeated diagonal hook {}",
                    w[0]
                )));
            }
        }
        if hs.iter().any(|&h| h == 0 || h % 2 == 0) {
            return Err(Error::MalformedPartition(
                "diagonal hooks must be odd and positive".into(),
            ));
        }
        let d = hs.len();
        let arms: Vec<u64> = hs.iter().map(|&h| (h - 1) / 2).collect();
        let mut parts: Vec<u32> = (0..d).map(|i| (arms[i] + i as u64 + 1) as u32).collect();
        let mut j = d as u32 + 1;
        loop {
            let c = parts[..d].iter().filter(|&&x| x >= j).count() as u32;
            if c == 0 {
                break;
            }
            parts.push(c);
            j += 1;
        }
        let out = Partition::new(parts)?;
        debug_assert!(out.is_symmetric());
        debug_assert_eq!(out.diagonal_hooks(), hs);
        Ok(out)
    }

    /// Degree of the associated irreducible symmetric group character,
    /// by the hook length formula.
    ///
    /// ```
    /// use mckay::Partition;
    /// use num_traits::ToPrimitive;
    ///
    /// let lambda: Partition = "3,2".parse().unwrap();
    /// assert_eq!(lambda.degree().to_u64(), Some(5));
    /// ```
    pub fn degree(&self) -> BigUint {
        let n = self.size();
        let mut num = BigUint::one();
        for k in 2..=n {
            num *= BigUint::from(k);
        }
        let mut den = BigUint::one();
        for h in self.hooks() {
            den *= BigUint::from(h.length);
        }
        num / den
    }

    /// Exact character value on the class with the given cycle type,
    /// by iterated hook removal over the bead set of the partition.
    ///
    /// # Errors
    ///
    /// Fails when the cycle type has a different size.
    ///
    /// ```
    /// use mckay::Partition;
    /// use num_bigint::BigInt;
    ///
    /// let lambda: Partition = "2,1".parse().unwrap();
    /// let class: Partition = "3".parse().unwrap();
    /// assert_eq!(lambda.character_value(&class).unwrap(), BigInt::from(-1));
    /// ```
    pub fn character_value(&self, cycle_type: &Partition) -> Result<BigInt> {
        if self.size() != cycle_type.size() {
            return Err(Error::SizeMismatch {
                expected: self.size(),
                found: cycle_type.size(),
            });
        }
        let mut memo: HashMap<(Vec<u32>, usize), BigInt> = HashMap::new();
        Ok(strip_hooks(
            self.parts.clone(),
            cycle_type.parts(),
            0,
            &mut memo,
        ))
    }

    /// All partitions of `n`, in lexicographically decreasing order.
    pub fn all(n: u64) -> Vec<Partition> {
        let mut out = Vec::new();
        let mut prefix = Vec::new();
        gen_all(n, n, &mut prefix, &mut out);
        out
    }

    /// All self-conjugate partitions of `n`.
    pub fn self_conjugate(n: u64) -> Vec<Partition> {
        let mut out = Vec::new();
        let mut prefix = Vec::new();
        let max = match n % 2 {
            0 => n.saturating_sub(1),
            _ => n,
        };
        gen_distinct_odd(n, max, &mut prefix, &mut out);
        out
    }
}

fn gen_all(n: u64, max: u64, prefix: &mut Vec<u32>, out: &mut Vec<Partition>) {
    if n == 0 {
        out.push(Partition {
            parts: prefix.clone(),
        });
        return;
    }
    let mut k = max.min(n);
    while k >= 1 {
        prefix.push(k as u32);
        gen_all(n - k, k, prefix, out);
        prefix.pop();
        k -= 1;
    }
}

fn gen_distinct_odd(n: u64, max: u64, prefix: &mut Vec<u64>, out: &mut Vec<Partition>) {
    if n == 0 {
        out.push(Partition::from_diagonal_hooks(prefix).expect("distinct odd hooks"));
        return;
    }
    if max == 0 {
        return;
    }
    let mut k = max.min(n);
    if k.is_multiple_of(2) {
        k -= 1;
    }
    while k >= 1 {
        prefix.push(k);
        gen_distinct_odd(n - k, k.saturating_sub(2), prefix, out);
        prefix.pop();
        if k < 2 {
            break;
        }
        k -= 2;
    }
}

/// Recursive hook stripping over bead sets. The bead set of a partition
/// with m parts is {lambda_i + m - i : i = 1..m}; removing a t-hook moves
/// one bead down by t, with sign the parity of beads jumped over.
fn strip_hooks(
    parts: Vec<u32>,
    cycles: &[u32],
    idx: usize,
    memo: &mut HashMap<(Vec<u32>, usize), BigInt>,
) -> BigInt {
    if parts.is_empty() {
        return BigInt::one();
    }
    let key = (parts.clone(), idx);
    if let Some(v) = memo.get(&key) {
        return v.clone();
    }
    let t = cycles[idx];
    let m = parts.len();
    let beta: Vec<u32> = parts
        .iter()
        .enumerate()
        .map(|(i, &x)| x + (m - 1 - i) as u32)
        .collect();
    let mut total = BigInt::zero();
    for (pos, &b) in beta.iter().enumerate() {
        if b < t {
            break;
        }
        let target = b - t;
        if beta.contains(&target) {
            continue;
        }
        let crossings = beta.iter().filter(|&&c| target < c && c < b).count();
        let mut nb = beta.clone();
        nb[pos] = target;
        nb.sort_unstable_by(|a, b| b.cmp(a));
        let child: Vec<u32> = nb
            .iter()
            .enumerate()
            .map(|(i, &x)| x - (m - 1 - i) as u32)
            .filter(|&x| x > 0)
            .collect();
        let sub = strip_hooks(child, cycles, idx + 1, memo);
        if crossings % 2 == 0 {
            total += sub;
        } else {
            total -= sub;
        }
    }
    memo.insert(key, total.clone());
    total
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.parts.is_empty() {
            return write!(f, "-");
        }
        let strs: Vec<String> = self.parts.iter().map(|x| x.to_string()).collect();
        write!(f, "{}", strs.join(","))
    }
}

impl fmt::Debug for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({})", self)
    }
}

impl FromStr for Partition {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s.is_empty() || s == "-" {
            return Ok(Partition::empty());
        }
        let mut parts = Vec::new();
        for tok in s.split(',') {
            let x: u32 = tok
                .trim()
                .parse()
                .map_err(|_| Error::MalformedPartition(format!("bad part {tok:?}")))?;
            parts.push(x);
        }
        Partition::new(parts)
    }
}
