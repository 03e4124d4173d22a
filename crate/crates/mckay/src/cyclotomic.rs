//! Exact arithmetic in cyclotomic fields. Elements are integer
//! polynomials in a root of unity, reduced modulo the cyclotomic
//! polynomial of their conductor. Square roots of odd integers are
//! embedded through quadratic Gauss sums, which makes every sign
//! computed elsewhere in the crate checkable by direct evaluation.

use std::collections::HashMap;
use std::sync::{Arc, Mutex};

use num_bigint::BigInt;
use num_traits::{One, Zero};
use once_cell::sync::Lazy;

use crate::error::{Error, Result};
use crate::numtheory::{jacobi, pow_mod, NavarroAut, QuadValue};

/// Prime factorization by trial division, smallest prime first.
pub(crate) fn factorize(mut m: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut d = 2u64;
    while d * d <= m {
        if m.is_multiple_of(d) {
            let mut a = 0;
            while m.is_multiple_of(d) {
                m /= d;
                a += 1;
            }
            out.push((d, a));
        }
        d += if d == 2 { 1 } else { 2 };
    }
    if m > 1 {
        out.push((m, 1));
    }
    out
}

pub(crate) fn euler_phi(m: u64) -> u64 {
    factorize(m)
        .iter()
        .map(|&(q, a)| (q - 1) * q.pow(a - 1))
        .product::<u64>()
        .max(1)
}

fn divisors(m: u64) -> Vec<u64> {
    let mut out = vec![1u64];
    for (q, a) in factorize(m) {
        let snapshot = out.clone();
        let mut power = 1u64;
        for _ in 0..a {
            power *= q;
            out.extend(snapshot.iter().map(|d| d * power));
        }
    }
    out.sort_unstable();
    out
}

fn poly_trim(v: &mut Vec<BigInt>) {
    while v.last().is_some_and(|c| c.is_zero()) {
        v.pop();
    }
}

fn poly_mul(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![BigInt::zero(); a.len() + b.len() - 1];
    for (i, ca) in a.iter().enumerate() {
        if ca.is_zero() {
            continue;
        }
        for (j, cb) in b.iter().enumerate() {
            out[i + j] += ca * cb;
        }
    }
    out
}

/// Division with remainder by a monic divisor.
fn poly_divmod(num: &[BigInt], den: &[BigInt]) -> (Vec<BigInt>, Vec<BigInt>) {
    debug_assert!(den.last().is_some_and(|c| c.is_one()));
    let dd = den.len() - 1;
    let mut rem = num.to_vec();
    if rem.len() <= dd {
        poly_trim(&mut rem);
        return (Vec::new(), rem);
    }
    let mut quot = vec![BigInt::zero(); rem.len() - dd];
    for i in (dd..rem.len()).rev() {
        if rem[i].is_zero() {
            continue;
        }
        let c = std::mem::replace(&mut rem[i], BigInt::zero());
        for (j, dc) in den.iter().enumerate().take(dd) {
            let delta = &c * dc;
            rem[i - dd + j] -= delta;
        }
        quot[i - dd] = c;
    }
    rem.truncate(dd);
    poly_trim(&mut rem);
    poly_trim(&mut quot);
    (quot, rem)
}

static CYCLO_CACHE: Lazy<Mutex<HashMap<u64, Arc<Vec<BigInt>>>>> =
    Lazy::new(|| Mutex::new(HashMap::new()));

/// The m-th cyclotomic polynomial, monic over the integers.
fn cyclo_poly(m: u64) -> Arc<Vec<BigInt>> {
    if let Some(f) = CYCLO_CACHE.lock().unwrap().get(&m) {
        return Arc::clone(f);
    }
    let mut f = vec![BigInt::zero(); m as usize + 1];
    f[0] = BigInt::from(-1);
    f[m as usize] = BigInt::one();
    for d in divisors(m) {
        if d == m {
            continue;
        }
        let phi_d = cyclo_poly(d);
        let (q, r) = poly_divmod(&f, &phi_d);
        debug_assert!(r.is_empty(), "cyclotomic factors divide exactly");
        f = q;
    }
    let arc = Arc::new(f);
    CYCLO_CACHE.lock().unwrap().insert(m, Arc::clone(&arc));
    arc
}

fn inv_mod(a: u64, m: u64) -> Option<u64> {
    if m == 1 {
        return Some(0);
    }
    let (mut r0, mut r1) = (m as i128, (a % m) as i128);
    let (mut t0, mut t1) = (0i128, 1i128);
    while r1 != 0 {
        let q = r0 / r1;
        (r0, r1) = (r1, r0 - q * r1);
        (t0, t1) = (t1, t0 - q * t1);
    }
    if r0 != 1 {
        return None;
    }
    Some(t0.rem_euclid(m as i128) as u64)
}

/// An element of the cyclotomic field of its conductor, with integer
/// coordinates in the power basis 1, z, ..., z^(phi-1).
///
/// ```
/// use mckay::CycloElt;
///
/// let z = CycloElt::root_of_unity(3, 1).unwrap();
/// let sum = z.add(&z.pow(2)).add(&CycloElt::integer(1));
/// assert!(sum.is_zero());
/// ```
#[derive(Clone, Debug)]
pub struct CycloElt {
    conductor: u64,
    coeffs: Vec<BigInt>,
}

impl CycloElt {
    fn reduced(conductor: u64, raw: Vec<BigInt>) -> Self {
        let phi = euler_phi(conductor) as usize;
        let modulus = cyclo_poly(conductor);
        let (_, mut rem) = poly_divmod(&raw, &modulus);
        rem.resize(phi, BigInt::zero());
        CycloElt {
            conductor,
            coeffs: rem,
        }
    }

    pub fn zero(conductor: u64) -> Self {
        let phi = euler_phi(conductor) as usize;
        CycloElt {
            conductor,
            coeffs: vec![BigInt::zero(); phi],
        }
    }

    pub fn integer(n: i64) -> Self {
        CycloElt {
            conductor: 1,
            coeffs: vec![BigInt::from(n)],
        }
    }

    pub fn from_bigint(n: BigInt) -> Self {
        CycloElt {
            conductor: 1,
            coeffs: vec![n],
        }
    }

    /// z_m^k, the k-th power of a fixed primitive m-th root of unity.
    pub fn root_of_unity(m: u64, k: i64) -> Result<Self> {
        if m == 0 {
            return Err(Error::Internal("conductor must be positive".into()));
        }
        let k = k.rem_euclid(m as i64) as usize;
        let mut raw = vec![BigInt::zero(); k + 1];
        raw[k] = BigInt::one();
        Ok(CycloElt::reduced(m, raw))
    }

    pub fn conductor(&self) -> u64 {
        self.conductor
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    /// Rewrites the element in the field of conductor n, which must be a
    /// multiple of the current conductor.
    pub fn embed(&self, n: u64) -> Result<Self> {
        if !n.is_multiple_of(self.conductor) {
            return Err(Error::Unsupported(format!(
                "conductor {} does not divide {}",
                self.conductor, n
            )));
        }
        if n == self.conductor {
            return Ok(self.clone());
        }
        let stride = (n / self.conductor) as usize;
        let mut raw = vec![BigInt::zero(); self.coeffs.len() * stride];
        for (j, c) in self.coeffs.iter().enumerate() {
            if !c.is_zero() {
                raw[j * stride] = c.clone();
            }
        }
        Ok(CycloElt::reduced(n, raw))
    }

    fn unified(&self, other: &CycloElt) -> Result<(CycloElt, CycloElt)> {
        let n = num_integer::lcm(self.conductor, other.conductor);
        Ok((self.embed(n)?, other.embed(n)?))
    }

    pub fn add(&self, other: &CycloElt) -> CycloElt {
        let (mut a, b) = self.unified(other).expect("lcm is a common multiple");
        for (x, y) in a.coeffs.iter_mut().zip(b.coeffs.iter()) {
            *x += y;
        }
        a
    }

    pub fn sub(&self, other: &CycloElt) -> CycloElt {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> CycloElt {
        CycloElt {
            conductor: self.conductor,
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }

    pub fn mul(&self, other: &CycloElt) -> CycloElt {
        let (a, b) = self.unified(other).expect("lcm is a common multiple");
        let raw = poly_mul(&a.coeffs, &b.coeffs);
        CycloElt::reduced(a.conductor, raw)
    }

    pub fn scale(&self, k: &BigInt) -> CycloElt {
        CycloElt {
            conductor: self.conductor,
            coeffs: self.coeffs.iter().map(|c| c * k).collect(),
        }
    }

    pub fn pow(&self, mut e: u64) -> CycloElt {
        let mut base = self.clone();
        let mut acc = CycloElt::integer(1);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            base = base.mul(&base);
            e >>= 1;
        }
        acc
    }

    /// Divides every coordinate by k, failing unless the division is
    /// exact.
    pub fn div_exact(&self, k: u64) -> Result<CycloElt> {
        let k = BigInt::from(k);
        let mut coeffs = Vec::with_capacity(self.coeffs.len());
        for c in &self.coeffs {
            let (q, r) = num_integer::Integer::div_rem(c, &k);
            if !r.is_zero() {
                return Err(Error::Internal(format!(
                    "coordinate {c} is not divisible by {k}"
                )));
            }
            coeffs.push(q);
        }
        Ok(CycloElt {
            conductor: self.conductor,
            coeffs,
        })
    }

    /// The ring map z -> z^t for t a unit mod the conductor.
    pub fn apply_exponent(&self, t: u64) -> Result<CycloElt> {
        let n = self.conductor;
        let t = t % n.max(1);
        if num_integer::gcd(t, n) != 1 && n > 1 {
            return Err(Error::NotAUnit { t, modulus: n });
        }
        let mut raw = vec![BigInt::zero(); n as usize];
        for (j, c) in self.coeffs.iter().enumerate() {
            if !c.is_zero() {
                let idx = ((j as u64 * t) % n) as usize;
                raw[idx] += c;
            }
        }
        Ok(CycloElt::reduced(n, raw))
    }

    /// Complex conjugation, z -> z^(-1).
    pub fn conj(&self) -> CycloElt {
        if self.conductor <= 2 {
            return self.clone();
        }
        self.apply_exponent(self.conductor - 1)
            .expect("-1 is a unit")
    }

    /// Applies an automorphism of the family: p-power roots go to the
    /// s-th power, roots of order prime to p to the (p^e)-th power. The
    /// exponent on the full conductor is assembled by remainders.
    pub fn apply_aut(&self, f: &NavarroAut) -> Result<CycloElt> {
        let n = self.conductor;
        if n == 1 {
            return Ok(self.clone());
        }
        let p = f.p();
        let mut pa = 1u64;
        let mut n_prime = n;
        while n_prime.is_multiple_of(p) {
            n_prime /= p;
            pa *= p;
        }
        let t = if pa == 1 {
            pow_mod(p, f.e(), n)
        } else if n_prime == 1 {
            f.s() % pa
        } else {
            let r1 = f.s() % pa;
            let r2 = pow_mod(p, f.e(), n_prime);
            let inv = inv_mod(pa % n_prime, n_prime).ok_or(Error::NotAUnit {
                t: pa % n_prime,
                modulus: n_prime,
            })?;
            let diff = (r2 as i128 - r1 as i128).rem_euclid(n_prime as i128) as u64;
            r1 + pa * ((diff as u128 * inv as u128 % n_prime as u128) as u64)
        };
        self.apply_exponent(t)
    }

    /// The rational integer the element equals, if it equals one.
    pub fn to_integer(&self) -> Option<BigInt> {
        if self.coeffs[1..].iter().all(|c| c.is_zero()) {
            Some(self.coeffs[0].clone())
        } else {
            None
        }
    }
}

impl PartialEq for CycloElt {
    fn eq(&self, other: &Self) -> bool {
        let (a, b) = self.unified(other).expect("lcm is a common multiple");
        a.coeffs == b.coeffs
    }
}

impl Eq for CycloElt {}

/// The quadratic Gauss sum of an odd prime q: the sum of (j/q) z_q^j
/// over j. Its square is (-1)^((q-1)/2) q.
///
/// ```
/// use mckay::{gauss_sum, CycloElt};
///
/// let g = gauss_sum(3).unwrap();
/// assert_eq!(g.mul(&g).to_integer().unwrap(), (-3).into());
/// let g5 = gauss_sum(5).unwrap();
/// assert_eq!(g5.mul(&g5).to_integer().unwrap(), 5.into());
/// ```
pub fn gauss_sum(q: u64) -> Result<CycloElt> {
    crate::numtheory::check_odd_prime(q)?;
    let mut acc = CycloElt::zero(q);
    for j in 1..q {
        let term = CycloElt::root_of_unity(q, j as i64)?;
        let sign = jacobi(j as i64, q)?;
        acc = if sign >= 0 {
            acc.add(&term)
        } else {
            acc.sub(&term)
        };
    }
    Ok(acc)
}

/// The positive square root of an odd positive integer, as a cyclotomic
/// element: a product of Gauss sums corrected by a power of i so that
/// the value is the positive real root.
pub fn sqrt_embed(m: u64) -> Result<CycloElt> {
    if m == 0 || m.is_multiple_of(2) {
        return Err(Error::InvalidRadicand(m));
    }
    let mut acc = CycloElt::integer(1);
    let mut s_count = 0u64;
    for (q, a) in factorize(m) {
        let g = gauss_sum(q)?;
        acc = acc.mul(&g.pow(a as u64));
        if q % 4 == 3 {
            s_count += a as u64;
        }
    }
    let i_fix = CycloElt::root_of_unity(4, -(s_count as i64))?;
    Ok(acc.mul(&i_fix))
}

/// The value i^a sqrt(M) as a cyclotomic element.
pub fn quad_embed(v: &QuadValue) -> Result<CycloElt> {
    let i_part = CycloElt::root_of_unity(4, v.i_exp as i64)?;
    Ok(sqrt_embed(v.radicand)?.mul(&i_part))
}

/// Evaluates the sign of f on i^a sqrt(M) by direct cyclotomic
/// arithmetic. This is the oracle counterpart of the closed-form
/// residue-symbol computation.
///
/// # Errors
///
/// Fails with an internal error if the image is not plus or minus the
/// value, which would mean the value is not a quadratic eigenvector.
pub fn quad_sign_oracle(v: &QuadValue, f: &NavarroAut) -> Result<i8> {
    let w = quad_embed(v)?;
    let fw = w.apply_aut(f)?;
    if fw == w {
        Ok(1)
    } else if fw == w.neg() {
        Ok(-1)
    } else {
        Err(Error::Internal(format!(
            "automorphism does not act by a sign on {v}"
        )))
    }
}

/// The two Gauss periods of conductor p: the sums of z_p^j over
/// nonzero squares and over nonsquares. They sum to -1 and differ by
/// the Gauss sum.
pub fn gauss_periods(p: u64) -> Result<(CycloElt, CycloElt)> {
    crate::numtheory::check_odd_prime(p)?;
    let mut alpha = CycloElt::zero(p);
    let mut beta = CycloElt::zero(p);
    for j in 1..p {
        let term = CycloElt::root_of_unity(p, j as i64)?;
        if jacobi(j as i64, p)? == 1 {
            alpha = alpha.add(&term);
        } else {
            beta = beta.add(&term);
        }
    }
    Ok((alpha, beta))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numtheory::SignClass;

    #[test]
    fn cyclotomic_polynomials_small() {
        let to_i64 = |v: &Arc<Vec<BigInt>>| -> Vec<i64> {
            v.iter()
                .map(|c| i64::try_from(c.clone()).unwrap())
                .collect()
        };
        assert_eq!(to_i64(&cyclo_poly(1)), vec![-1, 1]);
        assert_eq!(to_i64(&cyclo_poly(2)), vec![1, 1]);
        assert_eq!(to_i64(&cyclo_poly(3)), vec![1, 1, 1]);
        assert_eq!(to_i64(&cyclo_poly(4)), vec![1, 0, 1]);
        assert_eq!(to_i64(&cyclo_poly(6)), vec![1, -1, 1]);
        assert_eq!(to_i64(&cyclo_poly(12)), vec![1, 0, -1, 0, 1]);
    }

    #[test]
    fn roots_of_unity_relations() {
        let z = CycloElt::root_of_unity(5, 1).unwrap();
        assert_eq!(z.pow(5), CycloElt::integer(1));
        let mut total = CycloElt::integer(1);
        for k in 1..5 {
            total = total.add(&z.pow(k));
        }
        assert!(total.is_zero());
    }

    #[test]
    fn embedding_preserves_value() {
        let z3 = CycloElt::root_of_unity(3, 1).unwrap();
        let lifted = z3.embed(12).unwrap();
        assert_eq!(lifted.pow(3), CycloElt::integer(1));
        assert_eq!(z3, lifted);
        assert!(z3.embed(8).is_err());
    }

    #[test]
    fn gauss_sum_squares() {
        for q in [3u64, 5, 7, 11, 13] {
            let g = gauss_sum(q).unwrap();
            let expected = if q % 4 == 1 { q as i64 } else { -(q as i64) };
            assert_eq!(
                g.mul(&g).to_integer().unwrap(),
                BigInt::from(expected),
                "q = {q}"
            );
        }
    }

    #[test]
    fn sqrt_embed_squares_to_radicand() {
        for m in (1..=45u64).step_by(2) {
            let r = sqrt_embed(m).unwrap();
            assert_eq!(r.mul(&r).to_integer().unwrap(), BigInt::from(m), "m = {m}");
        }
    }

    #[test]
    fn sqrt_embed_multiplicative_on_coprime_parts() {
        for (a, b) in [(3u64, 5u64), (5, 21), (9, 7), (3, 35)] {
            let lhs = sqrt_embed(a).unwrap().mul(&sqrt_embed(b).unwrap());
            assert_eq!(lhs, sqrt_embed(a * b).unwrap(), "a = {a}, b = {b}");
        }
    }

    #[test]
    fn sqrt_embed_rejects_even() {
        assert!(sqrt_embed(0).is_err());
        assert!(sqrt_embed(6).is_err());
    }

    #[test]
    fn conjugation_fixes_gauss_sum_up_to_sign() {
        for q in [3u64, 5] {
            let g = gauss_sum(q).unwrap();
            let expected = if q % 4 == 1 { g.clone() } else { g.neg() };
            assert_eq!(g.conj(), expected);
        }
    }

    #[test]
    fn aut_acts_by_stated_exponents() {
        let f = NavarroAut::new(3, 1, 2).unwrap();
        let z3 = CycloElt::root_of_unity(3, 1).unwrap();
        assert_eq!(z3.apply_aut(&f).unwrap(), z3.pow(2));
        let z5 = CycloElt::root_of_unity(5, 1).unwrap();
        assert_eq!(z5.apply_aut(&f).unwrap(), z5.pow(3));
        let z15 = CycloElt::root_of_unity(15, 1).unwrap();
        let image = z15.apply_aut(&f).unwrap();
        assert_eq!(image, z15.pow(8));
    }

    #[test]
    fn aut_is_a_ring_map() {
        let f = NavarroAut::new(5, 1, 3).unwrap();
        let a = gauss_sum(3).unwrap();
        let b = CycloElt::root_of_unity(20, 7).unwrap();
        let lhs = a.mul(&b).apply_aut(&f).unwrap();
        let rhs = a.apply_aut(&f).unwrap().mul(&b.apply_aut(&f).unwrap());
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn oracle_matches_closed_form_signs() {
        for p in [3u64, 5] {
            for class in SignClass::ALL {
                let f = NavarroAut::from_class(p, class).unwrap();
                for m in (1..=33u64).step_by(2) {
                    for i_exp in 0..4u64 {
                        let v = QuadValue::new(i_exp, m).unwrap();
                        let closed = f.eps_quad(&v).unwrap();
                        let oracle = quad_sign_oracle(&v, &f).unwrap();
                        assert_eq!(closed, oracle, "p = {p}, class = {class:?}, v = {v}");
                    }
                }
            }
        }
    }

    #[test]
    fn periods_sum_and_difference() {
        for p in [3u64, 5, 7, 11] {
            let (alpha, beta) = gauss_periods(p).unwrap();
            assert_eq!(alpha.add(&beta), CycloElt::integer(-1));
            assert_eq!(alpha.sub(&beta), gauss_sum(p).unwrap());
        }
    }

    #[test]
    fn div_exact_checks_divisibility() {
        let x = CycloElt::integer(6).add(&CycloElt::root_of_unity(3, 1).unwrap().scale(&4.into()));
        assert_eq!(
            x.div_exact(2).unwrap(),
            CycloElt::integer(3).add(&CycloElt::root_of_unity(3, 1).unwrap().scale(&2.into()))
        );
        assert!(x.div_exact(4).is_err());
    }

    #[test]
    fn to_integer_detects_rationals() {
        let z = CycloElt::root_of_unity(7, 1).unwrap();
        assert_eq!(z.to_integer(), None);
        let mut s = CycloElt::integer(0);
        for k in 0..7 {
            s = s.add(&z.pow(k));
        }
        assert_eq!(s.to_integer(), Some(BigInt::zero()));
    }
}
