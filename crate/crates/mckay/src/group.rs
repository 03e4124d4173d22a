//! Ground-truth character tables for tiny permutation groups. Groups
//! are enumerated explicitly under a hard order bound; tables are
//! computed by the class-algebra eigenvector method with a modular
//! splitting step, lifted to exact cyclotomic values, and re-verified
//! against both orthogonality relations before being returned.

// Matrix updates here read one row while writing another, so the
// elimination loops stay indexed.
#![allow(clippy::needless_range_loop)]

use std::collections::{HashMap, HashSet};

use num_bigint::BigInt;
use num_integer::Integer;

use crate::cyclotomic::{factorize, CycloElt};
use crate::error::{Error, Result};
use crate::numtheory::{check_odd_prime, is_odd_prime, NavarroAut};

/// Default ceiling on group orders this oracle will enumerate.
pub const DEFAULT_ORDER_CAP: usize = 20000;

/// A permutation of 0..degree given by its image list.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Perm(Vec<u16>);

impl Perm {
    pub fn identity(degree: usize) -> Perm {
        Perm((0..degree as u16).collect())
    }

    /// Builds a permutation from its image list, which must be a
    /// bijection on 0..len.
    pub fn from_images(images: Vec<u16>) -> Result<Perm> {
        let mut seen = vec![false; images.len()];
        for &x in &images {
            if (x as usize) >= images.len() || seen[x as usize] {
                return Err(Error::Parse(format!("invalid image list {images:?}")));
            }
            seen[x as usize] = true;
        }
        Ok(Perm(images))
    }

    /// Builds a permutation of 0..degree from disjoint cycles.
    pub fn from_cycles(degree: usize, cycles: &[Vec<u16>]) -> Result<Perm> {
        let mut images: Vec<u16> = (0..degree as u16).collect();
        let mut moved = vec![false; degree];
        for cycle in cycles {
            for (i, &x) in cycle.iter().enumerate() {
                let y = cycle[(i + 1) % cycle.len()];
                if (x as usize) >= degree || moved[x as usize] {
                    return Err(Error::Parse(format!("invalid cycle list {cycles:?}")));
                }
                moved[x as usize] = true;
                images[x as usize] = y;
            }
        }
        Perm::from_images(images)
    }

    pub fn degree(&self) -> usize {
        self.0.len()
    }

    pub fn apply(&self, x: u16) -> u16 {
        self.0[x as usize]
    }

    /// Composition applying `other` first.
    pub fn mul(&self, other: &Perm) -> Perm {
        Perm(other.0.iter().map(|&x| self.0[x as usize]).collect())
    }

    pub fn inverse(&self) -> Perm {
        let mut images = vec![0u16; self.0.len()];
        for (x, &y) in self.0.iter().enumerate() {
            images[y as usize] = x as u16;
        }
        Perm(images)
    }

    pub fn pow(&self, mut e: u64) -> Perm {
        let mut acc = Perm::identity(self.degree());
        let mut base = self.clone();
        while e > 0 {
            if e % 2 == 1 {
                acc = acc.mul(&base);
            }
            base = base.mul(&base);
            e /= 2;
        }
        acc
    }

    fn cycle_lengths(&self) -> Vec<u64> {
        let mut seen = vec![false; self.0.len()];
        let mut lengths = Vec::new();
        for start in 0..self.0.len() {
            if seen[start] {
                continue;
            }
            let mut len = 0u64;
            let mut x = start;
            while !seen[x] {
                seen[x] = true;
                x = self.0[x] as usize;
                len += 1;
            }
            lengths.push(len);
        }
        lengths
    }

    pub fn order(&self) -> u64 {
        self.cycle_lengths().into_iter().fold(1, |a, l| a.lcm(&l))
    }

    pub fn is_even(&self) -> bool {
        let transpositions: u64 = self.cycle_lengths().into_iter().map(|l| l - 1).sum();
        transpositions.is_multiple_of(2)
    }
}

/// A finite permutation group held as an explicit element list with
/// its conjugacy classes.
#[derive(Clone, Debug)]
pub struct PermGroup {
    degree: usize,
    elements: Vec<Perm>,
    index: HashMap<Perm, usize>,
    class_of: Vec<usize>,
    class_members: Vec<Vec<usize>>,
}

impl PermGroup {
    /// Closes the generators under multiplication, failing once the
    /// element count passes the cap.
    pub fn from_generators(degree: usize, generators: Vec<Perm>, cap: usize) -> Result<PermGroup> {
        for g in &generators {
            if g.degree() != degree {
                return Err(Error::SubgroupMismatch(format!(
                    "generator degree {} differs from {degree}",
                    g.degree()
                )));
            }
        }
        let mut set = HashSet::new();
        let mut queue = vec![Perm::identity(degree)];
        set.insert(Perm::identity(degree));
        while let Some(x) = queue.pop() {
            for g in &generators {
                let y = x.mul(g);
                if set.insert(y.clone()) {
                    if set.len() > cap {
                        return Err(Error::GroupTooLarge {
                            order: set.len(),
                            cap,
                        });
                    }
                    queue.push(y);
                }
            }
        }
        Ok(PermGroup::from_element_set(degree, set))
    }

    fn from_element_set(degree: usize, set: HashSet<Perm>) -> PermGroup {
        let mut elements: Vec<Perm> = set.into_iter().collect();
        elements.sort();
        let index: HashMap<Perm, usize> = elements
            .iter()
            .enumerate()
            .map(|(i, p)| (p.clone(), i))
            .collect();
        let mut class_of = vec![usize::MAX; elements.len()];
        let mut class_members = Vec::new();
        for seed in 0..elements.len() {
            if class_of[seed] != usize::MAX {
                continue;
            }
            let k = class_members.len();
            let mut members = Vec::new();
            for g in &elements {
                let y = g.mul(&elements[seed]).mul(&g.inverse());
                let yi = index[&y];
                if class_of[yi] == usize::MAX {
                    class_of[yi] = k;
                    members.push(yi);
                }
            }
            members.sort_unstable();
            class_members.push(members);
        }
        PermGroup {
            degree,
            elements,
            index,
            class_of,
            class_members,
        }
    }

    /// The full symmetric group on n points.
    pub fn symmetric(n: usize) -> Result<PermGroup> {
        let mut gens = Vec::new();
        if n >= 2 {
            gens.push(Perm::from_cycles(n, &[vec![0, 1]])?);
            gens.push(Perm::from_cycles(n, &[(0..n as u16).collect()])?);
        }
        PermGroup::from_generators(n, gens, DEFAULT_ORDER_CAP)
    }

    /// The alternating group on n points.
    pub fn alternating(n: usize) -> Result<PermGroup> {
        let mut gens = Vec::new();
        if n >= 3 {
            gens.push(Perm::from_cycles(n, &[vec![0, 1, 2]])?);
            let cycle: Vec<u16> = if n % 2 == 1 {
                (0..n as u16).collect()
            } else {
                (1..n as u16).collect()
            };
            gens.push(Perm::from_cycles(n, &[cycle])?);
        }
        PermGroup::from_generators(n, gens, DEFAULT_ORDER_CAP)
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn order(&self) -> u64 {
        self.elements.len() as u64
    }

    pub fn elements(&self) -> &[Perm] {
        &self.elements
    }

    pub fn contains(&self, p: &Perm) -> bool {
        self.index.contains_key(p)
    }

    pub fn class_count(&self) -> usize {
        self.class_members.len()
    }

    /// Lexicographically least member of the class.
    pub fn class_representative(&self, k: usize) -> &Perm {
        &self.elements[self.class_members[k][0]]
    }

    pub fn class_size(&self, k: usize) -> u64 {
        self.class_members[k].len() as u64
    }

    pub fn class_of(&self, p: &Perm) -> Option<usize> {
        self.index.get(p).map(|&i| self.class_of[i])
    }

    /// Class holding the inverses of class k.
    pub fn inverse_class(&self, k: usize) -> usize {
        self.class_of(&self.class_representative(k).inverse())
            .expect("group closed under inversion")
    }

    /// Class holding the v-th powers of class k.
    pub fn power_class(&self, k: usize, v: u64) -> usize {
        self.class_of(&self.class_representative(k).pow(v))
            .expect("group closed under powers")
    }

    /// Least common multiple of the element orders.
    pub fn exponent(&self) -> u64 {
        (0..self.class_count()).fold(1, |a, k| a.lcm(&self.class_representative(k).order()))
    }
}

/// The Sylow p-subgroup of the symmetric group on n points as disjoint
/// p-cycles; requires n < p^2 so that the subgroup is their direct
/// product.
pub fn build_sylow(n: u64, p: u64) -> Result<PermGroup> {
    check_odd_prime(p)?;
    if n >= p * p {
        return Err(Error::Unsupported(format!(
            "Sylow subgroup of S_{n} at p={p} is not a product of p-cycles"
        )));
    }
    let mut gens = Vec::new();
    for j in 0..n / p {
        let cycle: Vec<u16> = (j * p..(j + 1) * p).map(|x| x as u16).collect();
        gens.push(Perm::from_cycles(n as usize, &[cycle])?);
    }
    PermGroup::from_generators(n as usize, gens, DEFAULT_ORDER_CAP)
}

/// The normalizer of a Sylow p-subgroup in the symmetric group on n
/// points, or its even part, by filtering the ambient group.
pub fn build_normalizer(n: u64, p: u64, even: bool) -> Result<PermGroup> {
    let sylow = build_sylow(n, p)?;
    let sylow_set: HashSet<&Perm> = sylow.elements().iter().collect();
    let ambient = PermGroup::symmetric(n as usize)?;
    let mut kept = HashSet::new();
    for g in ambient.elements() {
        if even && !g.is_even() {
            continue;
        }
        let gi = g.inverse();
        let normalizes = sylow
            .elements()
            .iter()
            .all(|x| sylow_set.contains(&g.mul(x).mul(&gi)));
        if normalizes {
            kept.insert(g.clone());
        }
    }
    Ok(PermGroup::from_element_set(n as usize, kept))
}

/// An exact character table: one row per irreducible character, one
/// column per conjugacy class, all values cyclotomic integers.
#[derive(Clone, Debug)]
pub struct ExactTable {
    order: u64,
    class_representatives: Vec<Perm>,
    class_sizes: Vec<u64>,
    class_orders: Vec<u64>,
    inverse_classes: Vec<usize>,
    degrees: Vec<u64>,
    values: Vec<Vec<CycloElt>>,
}

impl ExactTable {
    pub fn order(&self) -> u64 {
        self.order
    }

    pub fn class_count(&self) -> usize {
        self.class_sizes.len()
    }

    pub fn class_representative(&self, k: usize) -> &Perm {
        &self.class_representatives[k]
    }

    pub fn class_sizes(&self) -> &[u64] {
        &self.class_sizes
    }

    /// Element orders per class.
    pub fn class_orders(&self) -> &[u64] {
        &self.class_orders
    }

    pub fn inverse_class(&self, k: usize) -> usize {
        self.inverse_classes[k]
    }

    pub fn degrees(&self) -> &[u64] {
        &self.degrees
    }

    pub fn character_count(&self) -> usize {
        self.values.len()
    }

    pub fn values(&self, r: usize) -> &[CycloElt] {
        &self.values[r]
    }
}

mod modq {
    pub fn add(a: u64, b: u64, q: u64) -> u64 {
        (a + b) % q
    }

    pub fn sub(a: u64, b: u64, q: u64) -> u64 {
        (a + q - b % q) % q
    }

    pub fn mul(a: u64, b: u64, q: u64) -> u64 {
        a % q * (b % q) % q
    }

    pub fn pow(mut a: u64, mut e: u64, q: u64) -> u64 {
        let mut acc = 1 % q;
        a %= q;
        while e > 0 {
            if e % 2 == 1 {
                acc = acc * a % q;
            }
            a = a * a % q;
            e /= 2;
        }
        acc
    }

    pub fn inv(a: u64, q: u64) -> u64 {
        pow(a, q - 2, q)
    }
}

type Mat = Vec<Vec<u64>>;

fn mat_apply(m: &Mat, v: &[u64], q: u64) -> Vec<u64> {
    m.iter()
        .map(|row| {
            row.iter()
                .zip(v)
                .fold(0u64, |acc, (a, b)| (acc + modq::mul(*a, *b, q)) % q)
        })
        .collect()
}

/// Row-reduces in place; returns the pivot column per surviving row.
fn rref(rows: &mut Vec<Vec<u64>>, q: u64) -> Vec<usize> {
    let width = rows.first().map_or(0, Vec::len);
    let mut pivots = Vec::new();
    let mut r = 0;
    for col in 0..width {
        let Some(src) = (r..rows.len()).find(|&i| rows[i][col] != 0) else {
            continue;
        };
        rows.swap(r, src);
        let scale = modq::inv(rows[r][col], q);
        for x in rows[r].iter_mut() {
            *x = modq::mul(*x, scale, q);
        }
        for i in 0..rows.len() {
            if i != r && rows[i][col] != 0 {
                let factor = rows[i][col];
                for c in 0..width {
                    let delta = modq::mul(factor, rows[r][c], q);
                    rows[i][c] = modq::sub(rows[i][c], delta, q);
                }
            }
        }
        pivots.push(col);
        r += 1;
        if r == rows.len() {
            break;
        }
    }
    rows.truncate(r);
    pivots
}

/// Basis of the null space of m.
fn kernel(m: &Mat, q: u64) -> Vec<Vec<u64>> {
    let dim = m.len();
    let mut rows = m.clone();
    let pivots = rref(&mut rows, q);
    let mut basis = Vec::new();
    for free in 0..dim {
        if pivots.contains(&free) {
            continue;
        }
        let mut v = vec![0u64; dim];
        v[free] = 1;
        for (r, &col) in pivots.iter().enumerate() {
            v[col] = modq::sub(0, rows[r][free], q);
        }
        basis.push(v);
    }
    basis
}

fn determinant(mut m: Mat, q: u64) -> u64 {
    let dim = m.len();
    let mut det = 1u64;
    for col in 0..dim {
        let Some(src) = (col..dim).find(|&i| m[i][col] != 0) else {
            return 0;
        };
        if src != col {
            m.swap(col, src);
            det = modq::sub(0, det, q);
        }
        det = modq::mul(det, m[col][col], q);
        let scale = modq::inv(m[col][col], q);
        for i in col + 1..dim {
            if m[i][col] != 0 {
                let factor = modq::mul(m[i][col], scale, q);
                for c in col..dim {
                    let delta = modq::mul(factor, m[col][c], q);
                    m[i][c] = modq::sub(m[i][c], delta, q);
                }
            }
        }
    }
    det
}

/// Coefficients of det(xI - m), low degree first, by interpolation.
fn characteristic_polynomial(m: &Mat, q: u64) -> Vec<u64> {
    let dim = m.len();
    let points: Vec<u64> = (0..=dim as u64).collect();
    let values: Vec<u64> = points
        .iter()
        .map(|&t| {
            let shifted: Mat = (0..dim)
                .map(|i| {
                    (0..dim)
                        .map(|j| {
                            let diag = if i == j { t } else { 0 };
                            modq::sub(diag, m[i][j], q)
                        })
                        .collect()
                })
                .collect();
            determinant(shifted, q)
        })
        .collect();
    // Lagrange interpolation on the evaluation points.
    let mut master = vec![1u64];
    for &t in &points {
        let mut next = vec![0u64; master.len() + 1];
        for (i, &c) in master.iter().enumerate() {
            next[i + 1] = modq::add(next[i + 1], c, q);
            next[i] = modq::sub(next[i], modq::mul(c, t, q), q);
        }
        master = next;
    }
    let mut poly = vec![0u64; dim + 1];
    for (j, &tj) in points.iter().enumerate() {
        // Divide the master polynomial by (x - tj) synthetically.
        let mut quotient = vec![0u64; master.len() - 1];
        let mut carry = 0u64;
        for i in (0..master.len() - 1).rev() {
            carry = modq::add(master[i + 1], modq::mul(carry, tj, q), q);
            quotient[i] = carry;
        }
        let denom: u64 = points
            .iter()
            .enumerate()
            .filter(|&(mth, _)| mth != j)
            .fold(1, |acc, (_, &tm)| modq::mul(acc, modq::sub(tj, tm, q), q));
        let scale = modq::mul(values[j], modq::inv(denom, q), q);
        for (c, &quo) in poly.iter_mut().zip(&quotient) {
            *c = modq::add(*c, modq::mul(quo, scale, q), q);
        }
    }
    poly
}

fn poly_eval(poly: &[u64], x: u64, q: u64) -> u64 {
    poly.iter()
        .rev()
        .fold(0u64, |acc, &c| modq::add(modq::mul(acc, x, q), c, q))
}

fn smallest_splitting_prime(order: u64, exponent: u64) -> u64 {
    let floor = order.max(4);
    let mut q = exponent + 1;
    while q <= floor || !is_odd_prime(q) {
        q += exponent;
    }
    q
}

fn primitive_root(q: u64) -> u64 {
    let factors = factorize(q - 1);
    (2..q)
        .find(|&w| {
            factors
                .iter()
                .all(|&(r, _)| modq::pow(w, (q - 1) / r, q) != 1)
        })
        .expect("prime modulus has a primitive root")
}

/// Computes the exact character table of a tiny group.
///
/// # Errors
///
/// Fails when any internal consistency check (eigenvector splitting,
/// degree extraction, orthogonality) does not come out exact.
///
/// ```
/// use mckay::{character_table, PermGroup};
///
/// let table = character_table(&PermGroup::alternating(4).unwrap()).unwrap();
/// assert_eq!(table.order(), 12);
/// assert_eq!(table.degrees(), &[1, 1, 1, 3]);
/// ```
pub fn character_table(group: &PermGroup) -> Result<ExactTable> {
    let order = group.order();
    let c = group.class_count();
    let identity_class = group
        .class_of(&Perm::identity(group.degree()))
        .expect("identity is a group element");
    let q = smallest_splitting_prime(order, group.exponent());

    // Class-algebra structure constants a[i][j][k]: the number of ways
    // a fixed element of class k factors as (class i) * (class j).
    let mut constants = vec![vec![vec![0u64; c]; c]; c];
    for k in 0..c {
        let zk = group.class_representative(k);
        for x in group.elements() {
            let i = group.class_of(x).expect("element of the group");
            let y = x.inverse().mul(zk);
            let j = group.class_of(&y).expect("group closed under products");
            constants[i][j][k] += 1;
        }
    }

    // Common eigenvectors over F_q of the action matrices; each
    // one-dimensional common eigenspace carries the normalized column
    // of one irreducible character.
    let mut spaces: Vec<Vec<Vec<u64>>> = vec![(0..c)
        .map(|i| {
            let mut v = vec![0u64; c];
            v[i] = 1;
            v
        })
        .collect()];
    for i in 0..c {
        if spaces.iter().all(|b| b.len() == 1) {
            break;
        }
        // Row j, column k; the vector of normalized class sums
        // omega_k is a common eigenvector, with eigenvalue omega_i.
        let action: Mat = (0..c)
            .map(|j| (0..c).map(|k| constants[i][j][k] % q).collect())
            .collect();
        let mut next = Vec::new();
        for basis in spaces {
            if basis.len() == 1 {
                next.push(basis);
                continue;
            }
            let mut reduced = basis;
            let pivots = rref(&mut reduced, q);
            let dim = reduced.len();
            // Restriction of the action to the subspace, in the
            // coordinates read off the pivot columns.
            let restricted: Mat = (0..dim)
                .map(|s| {
                    (0..dim)
                        .map(|r| mat_apply(&action, &reduced[r], q)[pivots[s]])
                        .collect()
                })
                .collect();
            let poly = characteristic_polynomial(&restricted, q);
            let mut split = 0usize;
            for lambda in 0..q {
                if poly_eval(&poly, lambda, q) != 0 {
                    continue;
                }
                let shifted: Mat = (0..dim)
                    .map(|a| {
                        (0..dim)
                            .map(|b| {
                                let diag = if a == b { lambda } else { 0 };
                                modq::sub(restricted[a][b], diag, q)
                            })
                            .collect()
                    })
                    .collect();
                let mut lifted: Vec<Vec<u64>> = kernel(&shifted, q)
                    .into_iter()
                    .map(|x| {
                        let mut v = vec![0u64; c];
                        for (r, &coeff) in x.iter().enumerate() {
                            for (col, entry) in v.iter_mut().enumerate() {
                                *entry = modq::add(*entry, modq::mul(coeff, reduced[r][col], q), q);
                            }
                        }
                        v
                    })
                    .collect();
                rref(&mut lifted, q);
                if !lifted.is_empty() {
                    split += lifted.len();
                    next.push(lifted);
                }
            }
            if split != dim {
                return Err(Error::Internal(format!(
                    "class algebra action is not diagonalizable mod {q}"
                )));
            }
        }
        spaces = next;
    }
    if spaces.len() != c || spaces.iter().any(|b| b.len() != 1) {
        return Err(Error::Internal(
            "class algebra eigenspaces did not split to dimension one".into(),
        ));
    }

    // Per character: normalized eigenvalue vector, degree, and values
    // mod q.
    let sqrt_bound = (1..).take_while(|d| d * d <= order).last().unwrap_or(1);
    let mut rows: Vec<(u64, Vec<u64>)> = Vec::new();
    for basis in &spaces {
        let v = &basis[0];
        if v[identity_class] == 0 {
            return Err(Error::Internal(
                "eigenvector vanishes at the identity".into(),
            ));
        }
        let scale = modq::inv(v[identity_class], q);
        let omega: Vec<u64> = v.iter().map(|&x| modq::mul(x, scale, q)).collect();
        let mut s = 0u64;
        for k in 0..c {
            let term = modq::mul(omega[k], omega[group.inverse_class(k)], q);
            s = modq::add(s, modq::mul(term, modq::inv(group.class_size(k), q), q), q);
        }
        let d2 = modq::mul(order, modq::inv(s, q), q);
        let degree = (1..=sqrt_bound)
            .find(|&d| modq::mul(d, d, q) == d2)
            .ok_or_else(|| Error::Internal("no character degree matches mod q".into()))?;
        let values_mod_q: Vec<u64> = (0..c)
            .map(|k| {
                modq::mul(
                    modq::mul(degree, omega[k], q),
                    modq::inv(group.class_size(k), q),
                    q,
                )
            })
            .collect();
        rows.push((degree, values_mod_q));
    }
    rows.sort();
    let degree_square_sum: u64 = rows.iter().map(|(d, _)| d * d).sum();
    if degree_square_sum != order {
        return Err(Error::Internal(
            "degree squares do not sum to the group order".into(),
        ));
    }

    // Cyclotomic lift: on each class the value is a sum of e-th roots
    // of unity whose multiplicities are recovered mod q, where e is
    // the element order; multiplicities are genuine integers below q.
    let w = primitive_root(q);
    let mut values = Vec::new();
    for (degree, row) in &rows {
        let mut lifted_row = Vec::new();
        for k in 0..c {
            let e = group.class_representative(k).order();
            let z = modq::pow(w, (q - 1) / e, q);
            let mut value = CycloElt::zero(1);
            for u in 0..e {
                let mut m = 0u64;
                for v in 0..e {
                    let zuv = modq::pow(z, u * v % e, q);
                    m = modq::add(
                        m,
                        modq::mul(row[group.power_class(k, v)], modq::inv(zuv, q), q),
                        q,
                    );
                }
                m = modq::mul(m, modq::inv(e % q, q), q);
                if m > *degree {
                    return Err(Error::Internal(format!(
                        "root multiplicity {m} exceeds the degree {degree}"
                    )));
                }
                if m > 0 {
                    let root = CycloElt::root_of_unity(e, u as i64)?;
                    value = value.add(&root.scale(&BigInt::from(m)));
                }
            }
            lifted_row.push(value);
        }
        values.push(lifted_row);
    }

    let table = ExactTable {
        order,
        class_representatives: (0..c)
            .map(|k| group.class_representative(k).clone())
            .collect(),
        class_sizes: (0..c).map(|k| group.class_size(k)).collect(),
        class_orders: (0..c)
            .map(|k| group.class_representative(k).order())
            .collect(),
        inverse_classes: (0..c).map(|k| group.inverse_class(k)).collect(),
        degrees: rows.iter().map(|(d, _)| *d).collect(),
        values,
    };
    verify_orthogonality(&table)?;
    Ok(table)
}

/// Exact row and column orthogonality over the cyclotomic field.
fn verify_orthogonality(table: &ExactTable) -> Result<()> {
    let c = table.class_count();
    for r in 0..c {
        for s in 0..c {
            let mut acc = CycloElt::zero(1);
            for k in 0..c {
                let term = table.values[r][k].mul(&table.values[s][table.inverse_classes[k]]);
                acc = acc.add(&term.scale(&BigInt::from(table.class_sizes[k])));
            }
            let expected = if r == s { table.order as i64 } else { 0 };
            if acc != CycloElt::integer(expected) {
                return Err(Error::Internal(format!(
                    "row orthogonality fails at characters {r}, {s}"
                )));
            }
        }
    }
    for j in 0..c {
        for k in 0..c {
            let mut acc = CycloElt::zero(1);
            for r in 0..c {
                acc = acc.add(&table.values[r][j].mul(&table.values[r][table.inverse_classes[k]]));
            }
            let expected = if j == k {
                CycloElt::integer((table.order / table.class_sizes[j]) as i64)
            } else {
                CycloElt::integer(0)
            };
            if acc != expected {
                return Err(Error::Internal(format!(
                    "column orthogonality fails at classes {j}, {k}"
                )));
            }
        }
    }
    Ok(())
}

/// Counts the characters of degree coprime to p and, among them, those
/// fixed entrywise by the automorphism.
pub fn galois_fixed_count(table: &ExactTable, f: &NavarroAut, p: u64) -> Result<(u64, u64)> {
    let mut total = 0u64;
    let mut fixed = 0u64;
    for (r, degree) in table.degrees.iter().enumerate() {
        if degree % p == 0 {
            continue;
        }
        total += 1;
        let mut moved = false;
        for value in &table.values[r] {
            if value.apply_aut(f)? != *value {
                moved = true;
                break;
            }
        }
        if !moved {
            fixed += 1;
        }
    }
    Ok((total, fixed))
}

/// Induces a class function from a subgroup, given one value per class
/// of the subgroup in class order; returns one value per class of the
/// parent.
pub fn induce_class_function(
    subgroup: &PermGroup,
    group: &PermGroup,
    phi: &[CycloElt],
) -> Result<Vec<CycloElt>> {
    if subgroup.degree() != group.degree() || subgroup.elements().iter().any(|h| !group.contains(h))
    {
        return Err(Error::SubgroupMismatch(
            "subgroup elements do not lie in the parent group".into(),
        ));
    }
    if phi.len() != subgroup.class_count() {
        return Err(Error::SubgroupMismatch(format!(
            "expected {} class values, found {}",
            subgroup.class_count(),
            phi.len()
        )));
    }
    let mut induced = Vec::new();
    for k in 0..group.class_count() {
        let z = group.class_representative(k);
        let mut acc = CycloElt::zero(1);
        for x in group.elements() {
            let y = x.mul(z).mul(&x.inverse());
            if let Some(j) = subgroup.class_of(&y) {
                acc = acc.add(&phi[j]);
            }
        }
        induced.push(acc.div_exact(subgroup.order())?);
    }
    Ok(induced)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numtheory::SignClass;

    fn cycles(degree: usize, spec: &[&[u16]]) -> Perm {
        let owned: Vec<Vec<u16>> = spec.iter().map(|c| c.to_vec()).collect();
        Perm::from_cycles(degree, &owned).unwrap()
    }

    #[test]
    fn permutation_arithmetic() {
        let a = cycles(4, &[&[0, 1, 2]]);
        let b = cycles(4, &[&[2, 3]]);
        assert_eq!(a.mul(&a.inverse()), Perm::identity(4));
        assert_eq!(a.order(), 3);
        assert_eq!(b.order(), 2);
        assert_eq!(a.mul(&b).order(), 4);
        assert!(a.is_even());
        assert!(!b.is_even());
        assert_eq!(a.pow(2), a.inverse());
        // Right factor applies first.
        assert_eq!(a.mul(&b).apply(3), 0);
        assert_eq!(b.mul(&a).apply(3), 2);
    }

    #[test]
    fn permutation_validation() {
        assert!(Perm::from_images(vec![0, 0]).is_err());
        assert!(Perm::from_images(vec![0, 2]).is_err());
        assert!(Perm::from_cycles(3, &[vec![0, 1], vec![1, 2]]).is_err());
    }

    #[test]
    fn symmetric_and_alternating_enumeration() {
        let s4 = PermGroup::symmetric(4).unwrap();
        assert_eq!(s4.order(), 24);
        assert_eq!(s4.class_count(), 5);
        assert_eq!(s4.exponent(), 12);
        let a4 = PermGroup::alternating(4).unwrap();
        assert_eq!(a4.order(), 12);
        assert_eq!(a4.class_count(), 4);
        let a5 = PermGroup::alternating(5).unwrap();
        assert_eq!(a5.order(), 60);
        assert_eq!(a5.class_count(), 5);
        let a6 = PermGroup::alternating(6).unwrap();
        assert_eq!(a6.order(), 360);
        assert_eq!(a6.class_count(), 7);
    }

    #[test]
    fn class_partition_is_exact() {
        let g = PermGroup::symmetric(4).unwrap();
        let total: u64 = (0..g.class_count()).map(|k| g.class_size(k)).sum();
        assert_eq!(total, g.order());
        let sizes: Vec<u64> = (0..g.class_count()).map(|k| g.class_size(k)).collect();
        let mut sorted = sizes.clone();
        sorted.sort_unstable();
        assert_eq!(sorted, vec![1, 3, 6, 6, 8]);
    }

    #[test]
    fn order_cap_is_enforced() {
        let gens = vec![
            cycles(9, &[&[0, 1]]),
            cycles(9, &[&[0, 1, 2, 3, 4, 5, 6, 7, 8]]),
        ];
        assert!(matches!(
            PermGroup::from_generators(9, gens, DEFAULT_ORDER_CAP),
            Err(Error::GroupTooLarge { .. })
        ));
    }

    #[test]
    fn normalizer_orders_at_tiny_scale() {
        let cases = [
            (3, 3, false, 6),
            (3, 3, true, 3),
            (4, 3, false, 6),
            (4, 3, true, 3),
            (5, 3, false, 12),
            (5, 3, true, 6),
            (5, 5, false, 20),
            (5, 5, true, 10),
            (6, 3, false, 72),
            (6, 3, true, 36),
        ];
        for (n, p, even, order) in cases {
            assert_eq!(
                build_normalizer(n, p, even).unwrap().order(),
                order,
                "n={n} p={p} even={even}"
            );
        }
    }

    #[test]
    fn sylow_shape_is_guarded() {
        assert_eq!(build_sylow(6, 3).unwrap().order(), 9);
        assert!(matches!(build_sylow(9, 3), Err(Error::Unsupported(_))));
    }

    #[test]
    fn tables_of_small_groups() {
        let s3 = character_table(&PermGroup::symmetric(3).unwrap()).unwrap();
        assert_eq!(s3.degrees(), &[1, 1, 2]);
        let a4 = character_table(&PermGroup::alternating(4).unwrap()).unwrap();
        assert_eq!(a4.degrees(), &[1, 1, 1, 3]);
        let a5 = character_table(&PermGroup::alternating(5).unwrap()).unwrap();
        assert_eq!(a5.degrees(), &[1, 3, 3, 4, 5]);
    }

    #[test]
    fn cyclic_table_carries_cube_roots() {
        let c3 = PermGroup::from_generators(3, vec![cycles(3, &[&[0, 1, 2]])], 100).unwrap();
        let table = character_table(&c3).unwrap();
        assert_eq!(table.degrees(), &[1, 1, 1]);
        let omega = CycloElt::root_of_unity(3, 1).unwrap();
        let has_omega = (0..3).any(|r| (0..3).any(|k| table.values(r)[k] == omega));
        assert!(has_omega);
    }

    #[test]
    fn wreath_normalizer_table_checks_out() {
        // Order 72 with nine classes; orthogonality is re-verified
        // inside the construction.
        let n63 = build_normalizer(6, 3, false).unwrap();
        let table = character_table(&n63).unwrap();
        assert_eq!(table.order(), 72);
        let sum: u64 = table.degrees().iter().map(|d| d * d).sum();
        assert_eq!(sum, 72);
    }

    #[test]
    fn fixed_counts_on_cyclic_and_alternating_groups() {
        let c3 = PermGroup::from_generators(3, vec![cycles(3, &[&[0, 1, 2]])], 100).unwrap();
        let c3_table = character_table(&c3).unwrap();
        assert_eq!(
            galois_fixed_count(&c3_table, &NavarroAut::sigma(3), 3).unwrap(),
            (3, 3)
        );
        assert_eq!(
            galois_fixed_count(&c3_table, &NavarroAut::kappa(3), 3).unwrap(),
            (3, 1)
        );
        let a4 = character_table(&PermGroup::alternating(4).unwrap()).unwrap();
        assert_eq!(
            galois_fixed_count(&a4, &NavarroAut::id(3), 3).unwrap(),
            (3, 3)
        );
        assert_eq!(
            galois_fixed_count(&a4, &NavarroAut::sigma(3), 3).unwrap(),
            (3, 3)
        );
        assert_eq!(
            galois_fixed_count(&a4, &NavarroAut::kappa(3), 3).unwrap(),
            (3, 1)
        );
        let a5 = character_table(&PermGroup::alternating(5).unwrap()).unwrap();
        assert_eq!(
            galois_fixed_count(&a5, &NavarroAut::kappa(5), 5).unwrap(),
            (4, 2)
        );
    }

    #[test]
    fn induction_of_the_trivial_character() {
        let c3 = PermGroup::from_generators(3, vec![cycles(3, &[&[0, 1, 2]])], 100).unwrap();
        let s3 = PermGroup::symmetric(3).unwrap();
        let phi = vec![CycloElt::integer(1); 3];
        let induced = induce_class_function(&c3, &s3, &phi).unwrap();
        // Classes of S_3 in representative order: identity,
        // transposition, 3-cycle; the induced permutation character is
        // trivial plus sign.
        let expected: Vec<i64> = (0..3)
            .map(|k| match s3.class_representative(k).order() {
                1 | 3 => 2,
                _ => 0,
            })
            .collect();
        for (value, e) in induced.iter().zip(expected) {
            assert_eq!(*value, CycloElt::integer(e));
        }
    }

    #[test]
    fn induction_requires_a_subgroup() {
        let c4 = PermGroup::from_generators(4, vec![cycles(4, &[&[0, 1, 2, 3]])], 100).unwrap();
        let a4 = PermGroup::alternating(4).unwrap();
        let phi = vec![CycloElt::integer(1); c4.class_count()];
        assert!(matches!(
            induce_class_function(&c4, &a4, &phi),
            Err(Error::SubgroupMismatch(_))
        ));
    }

    #[test]
    fn induction_commutes_with_the_galois_action() {
        let c3 = PermGroup::from_generators(3, vec![cycles(3, &[&[0, 1, 2]])], 100).unwrap();
        let s3 = PermGroup::symmetric(3).unwrap();
        let omega = CycloElt::root_of_unity(3, 1).unwrap();
        let phi = vec![
            CycloElt::integer(2),
            omega.clone(),
            omega.mul(&omega).add(&CycloElt::integer(1)),
        ];
        for q in [3u64, 5] {
            for class in SignClass::ALL {
                let f = NavarroAut::from_class(q, class).unwrap();
                let lhs: Vec<CycloElt> = induce_class_function(&c3, &s3, &phi)
                    .unwrap()
                    .iter()
                    .map(|v| v.apply_aut(&f).unwrap())
                    .collect();
                let mapped: Vec<CycloElt> = phi.iter().map(|v| v.apply_aut(&f).unwrap()).collect();
                let rhs = induce_class_function(&c3, &s3, &mapped).unwrap();
                assert_eq!(lhs, rhs);
            }
        }
    }

    #[test]
    fn normalizer_p_prime_characters_are_all_fixed() {
        // Every character of the full normalizer with degree coprime
        // to p is fixed by all four sign classes.
        for (n, p) in [(3, 3), (4, 3), (5, 3), (5, 5), (6, 3)] {
            let table = character_table(&build_normalizer(n, p, false).unwrap()).unwrap();
            for class in SignClass::ALL {
                let f = NavarroAut::from_class(p, class).unwrap();
                let (total, fixed) = galois_fixed_count(&table, &f, p).unwrap();
                assert_eq!(total, fixed, "n={n} p={p} class={class}");
            }
        }
    }
}
