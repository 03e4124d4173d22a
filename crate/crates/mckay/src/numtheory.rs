//! Residue symbols and the two-parameter family of Galois automorphisms
//! acting on roots of unity: a p-adic exponent on p-power roots and a
//! Frobenius power on roots of order prime to p. Signs on quadratic
//! irrationalities are computed in closed form here; the cyclotomic
//! module provides the independent embedding-based oracle.

use std::fmt;

use crate::error::{Error, Result};

/// Trial-division primality for the desk-scale moduli used here.
pub fn is_odd_prime(p: u64) -> bool {
    if p < 3 || p.is_multiple_of(2) {
        return false;
    }
    let mut d = 3u64;
    while d * d <= p {
        if p.is_multiple_of(d) {
            return false;
        }
        d += 2;
    }
    true
}

pub(crate) fn check_odd_prime(p: u64) -> Result<()> {
    if is_odd_prime(p) {
        Ok(())
    } else {
        Err(Error::InvalidPrime(p))
    }
}

/// Base-p digits of n, least significant first. Empty for n = 0.
pub fn digits(mut n: u64, p: u64) -> Vec<u64> {
    let mut out = Vec::new();
    while n > 0 {
        out.push(n % p);
        n /= p;
    }
    out
}

/// x^e mod m with 128-bit intermediates.
pub fn pow_mod(x: u64, mut e: u64, m: u64) -> u64 {
    assert!(m > 0);
    let m128 = m as u128;
    let mut base = (x as u128) % m128;
    let mut acc: u128 = 1 % m128;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * base % m128;
        }
        base = base * base % m128;
        e >>= 1;
    }
    acc as u64
}

/// The Jacobi symbol (a / m) for odd positive m.
///
/// Returns 0 when gcd(a, m) > 1.
///
/// # Errors
///
/// Fails when m is even or zero.
pub fn jacobi(a: i64, m: u64) -> Result<i8> {
    if m == 0 || m.is_multiple_of(2) {
        return Err(Error::EvenModulus(m));
    }
    let mut m = m;
    let mut a = a.rem_euclid(m as i64) as u64;
    let mut sign = 1i8;
    while a != 0 {
        while a.is_multiple_of(2) {
            a /= 2;
            if m % 8 == 3 || m % 8 == 5 {
                sign = -sign;
            }
        }
        std::mem::swap(&mut a, &mut m);
        if a % 4 == 3 && m % 4 == 3 {
            sign = -sign;
        }
        a %= m;
    }
    if m == 1 {
        Ok(sign)
    } else {
        Ok(0)
    }
}

/// The least quadratic nonresidue modulo an odd prime.
pub fn least_nonresidue(p: u64) -> Result<u64> {
    check_odd_prime(p)?;
    let mut r = 2;
    loop {
        if jacobi(r as i64, p)? == -1 {
            return Ok(r);
        }
        r += 1;
    }
}

/// The four sign classes of the automorphism family at p. Two
/// automorphisms act identically on every quadratic irrationality over
/// the rationals exactly when they share a class.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum SignClass {
    /// Even Frobenius power, square upper exponent.
    Id,
    /// Odd Frobenius power, square upper exponent.
    Sigma,
    /// Even Frobenius power, nonsquare upper exponent.
    Kappa,
    /// Odd Frobenius power, nonsquare upper exponent.
    KappaSigma,
}

impl fmt::Display for SignClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            SignClass::Id => "id",
            SignClass::Sigma => "sigma",
            SignClass::Kappa => "kappa",
            SignClass::KappaSigma => "kappa-sigma",
        };
        write!(f, "{s}")
    }
}

impl SignClass {
    pub const ALL: [SignClass; 4] = [
        SignClass::Id,
        SignClass::Sigma,
        SignClass::Kappa,
        SignClass::KappaSigma,
    ];
}

/// A Galois automorphism given by a pair (e, s): roots of unity of
/// p-power order are raised to the s-th power, roots of order prime to
/// p are raised to the (p^e)-th power.
///
/// ```
/// use mckay::{NavarroAut, SignClass};
///
/// let f = NavarroAut::new(7, 1, 3).unwrap();
/// assert_eq!(f.class().unwrap(), SignClass::KappaSigma);
/// assert_eq!(NavarroAut::sigma(7).class().unwrap(), SignClass::Sigma);
/// ```
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct NavarroAut {
    p: u64,
    e: u64,
    s: u64,
}

impl NavarroAut {
    /// # Errors
    ///
    /// Fails unless p is an odd prime and s is a unit mod p.
    pub fn new(p: u64, e: u64, s: u64) -> Result<Self> {
        check_odd_prime(p)?;
        if s.is_multiple_of(p) {
            return Err(Error::InvalidAut(format!(
                "s = {s} is divisible by p = {p}"
            )));
        }
        Ok(NavarroAut { p, e, s })
    }

    /// The identity representative (e, s) = (0, 1).
    pub fn id(p: u64) -> Self {
        NavarroAut::new(p, 0, 1).expect("p validated by caller")
    }

    /// The Frobenius representative (e, s) = (1, 1).
    pub fn sigma(p: u64) -> Self {
        NavarroAut::new(p, 1, 1).expect("p validated by caller")
    }

    /// The nonsquare-twist representative (e, s) = (0, r) with r the
    /// least nonresidue mod p.
    pub fn kappa(p: u64) -> Self {
        let r = least_nonresidue(p).expect("p validated by caller");
        NavarroAut::new(p, 0, r).expect("r is a unit")
    }

    /// The representative (e, s) = (1, r).
    pub fn kappa_sigma(p: u64) -> Self {
        let r = least_nonresidue(p).expect("p validated by caller");
        NavarroAut::new(p, 1, r).expect("r is a unit")
    }

    /// The canonical representative of a sign class.
    pub fn from_class(p: u64, class: SignClass) -> Result<Self> {
        check_odd_prime(p)?;
        Ok(match class {
            SignClass::Id => NavarroAut::id(p),
            SignClass::Sigma => NavarroAut::sigma(p),
            SignClass::Kappa => NavarroAut::kappa(p),
            SignClass::KappaSigma => NavarroAut::kappa_sigma(p),
        })
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn e(&self) -> u64 {
        self.e
    }

    pub fn s(&self) -> u64 {
        self.s
    }

    /// The sign class, determined by e mod 2 and the residue symbol of s.
    pub fn class(&self) -> Result<SignClass> {
        let odd_e = self.e % 2 == 1;
        let square_s = jacobi(self.s as i64, self.p)? == 1;
        Ok(match (odd_e, square_s) {
            (false, true) => SignClass::Id,
            (true, true) => SignClass::Sigma,
            (false, false) => SignClass::Kappa,
            (true, false) => SignClass::KappaSigma,
        })
    }

    /// Composition (this after other). Both act on the same tower of
    /// roots, so parameters add and multiply.
    pub fn compose(&self, other: &NavarroAut) -> Result<NavarroAut> {
        if self.p != other.p {
            return Err(Error::InvalidAut("mismatched primes".into()));
        }
        let s = self
            .s
            .checked_mul(other.s)
            .ok_or_else(|| Error::Internal("automorphism exponent overflow".into()))?;
        NavarroAut::new(self.p, self.e + other.e, s)
    }

    /// Action on the fourth root of unity i: returns +1 when i is fixed,
    /// -1 when it is negated. Since 4 is prime to p this is the sign of
    /// p^e mod 4.
    pub fn eps_i(&self) -> i8 {
        if self.p % 4 == 3 && self.e % 2 == 1 {
            -1
        } else {
            1
        }
    }

    /// Sign of the action on the positive square root of an odd m > 0:
    /// f(sqrt(m)) = sign * sqrt(m).
    ///
    /// Writing m = p^v * m' with p not dividing m', the sign is
    /// eps_i^[m = 3 mod 4] * (p / m')^e * (s / p)^v.
    ///
    /// # Errors
    ///
    /// Fails for even or zero m.
    pub fn sqrt_sign(&self, m: u64) -> Result<i8> {
        if m == 0 || m.is_multiple_of(2) {
            return Err(Error::InvalidRadicand(m));
        }
        let mut v = 0u64;
        let mut m_free = m;
        while m_free.is_multiple_of(self.p) {
            m_free /= self.p;
            v += 1;
        }
        let mut sign = 1i8;
        if m % 4 == 3 {
            sign *= self.eps_i();
        }
        if self.e % 2 == 1 {
            sign *= jacobi(self.p as i64, m_free)?;
        }
        if v % 2 == 1 {
            sign *= jacobi(self.s as i64, self.p)?;
        }
        debug_assert_ne!(sign, 0, "arguments are coprime by construction");
        Ok(sign)
    }

    /// Sign of the action on a quadratic value i^a * sqrt(M).
    pub fn eps_quad(&self, v: &QuadValue) -> Result<i8> {
        let mut sign = self.sqrt_sign(v.radicand)?;
        if v.i_exp % 2 == 1 {
            sign *= self.eps_i();
        }
        Ok(sign)
    }
}

impl fmt::Display for NavarroAut {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(e={}, s={})", self.e, self.s)
    }
}

/// Parses an automorphism description: one of the four class names, or
/// an explicit `e=E,s=S` pair.
pub fn parse_aut(spec: &str, p: u64) -> Result<NavarroAut> {
    check_odd_prime(p)?;
    match spec.trim() {
        "id" => return Ok(NavarroAut::id(p)),
        "sigma" => return Ok(NavarroAut::sigma(p)),
        "kappa" => return Ok(NavarroAut::kappa(p)),
        "kappa-sigma" => return Ok(NavarroAut::kappa_sigma(p)),
        _ => {}
    }
    let mut e = None;
    let mut s = None;
    for tok in spec.split(',') {
        let tok = tok.trim();
        if let Some(v) = tok.strip_prefix("e=") {
            e = Some(
                v.parse::<u64>()
                    .map_err(|_| Error::InvalidAut(format!("bad exponent {v:?}")))?,
            );
        } else if let Some(v) = tok.strip_prefix("s=") {
            s = Some(
                v.parse::<u64>()
                    .map_err(|_| Error::InvalidAut(format!("bad exponent {v:?}")))?,
            );
        } else {
            return Err(Error::InvalidAut(format!(
                "expected id, sigma, kappa, kappa-sigma, or e=E,s=S, found {tok:?}"
            )));
        }
    }
    match (e, s) {
        (Some(e), Some(s)) => NavarroAut::new(p, e, s),
        _ => Err(Error::InvalidAut("both e= and s= are required".into())),
    }
}

/// An exact value of the form i^a * sqrt(M) with M a positive odd
/// integer, the shape taken by difference characters on their defining
/// classes. The radicand is kept unreduced; signs under the
/// automorphism family are multiplicative in it.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct QuadValue {
    pub i_exp: u8,
    pub radicand: u64,
}

impl QuadValue {
    pub fn new(i_exp: u64, radicand: u64) -> Result<Self> {
        if radicand == 0 || radicand.is_multiple_of(2) {
            return Err(Error::InvalidRadicand(radicand));
        }
        Ok(QuadValue {
            i_exp: (i_exp % 4) as u8,
            radicand,
        })
    }

    pub fn one() -> Self {
        QuadValue {
            i_exp: 0,
            radicand: 1,
        }
    }

    /// Product of two quadratic values; radicands multiply without
    /// square extraction.
    pub fn mul(&self, other: &QuadValue) -> Result<QuadValue> {
        let radicand = self
            .radicand
            .checked_mul(other.radicand)
            .ok_or_else(|| Error::Internal("radicand overflow".into()))?;
        Ok(QuadValue {
            i_exp: (self.i_exp + other.i_exp) % 4,
            radicand,
        })
    }
}

impl fmt::Display for QuadValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.i_exp, self.radicand) {
            (0, 1) => write!(f, "1"),
            (1, 1) => write!(f, "i"),
            (2, 1) => write!(f, "-1"),
            (3, 1) => write!(f, "-i"),
            (0, m) => write!(f, "sqrt({m})"),
            (1, m) => write!(f, "i*sqrt({m})"),
            (2, m) => write!(f, "-sqrt({m})"),
            (3, m) => write!(f, "-i*sqrt({m})"),
            _ => unreachable!(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn odd_prime_recognition() {
        assert!(is_odd_prime(3));
        assert!(is_odd_prime(97));
        assert!(!is_odd_prime(1));
        assert!(!is_odd_prime(2));
        assert!(!is_odd_prime(9));
        assert!(!is_odd_prime(91));
    }

    #[test]
    fn jacobi_matches_square_counting() {
        for p in [3u64, 5, 7, 11, 13] {
            let squares: std::collections::HashSet<u64> = (1..p).map(|x| x * x % p).collect();
            for a in 0..p {
                let expected = if a == 0 {
                    0
                } else if squares.contains(&a) {
                    1
                } else {
                    -1
                };
                assert_eq!(jacobi(a as i64, p).unwrap(), expected, "({a}/{p})");
            }
        }
    }

    #[test]
    fn jacobi_composite_and_negative() {
        assert_eq!(jacobi(2, 15).unwrap(), 1);
        assert_eq!(jacobi(3, 15).unwrap(), 0);
        assert_eq!(jacobi(-1, 3).unwrap(), -1);
        assert_eq!(jacobi(-1, 5).unwrap(), 1);
        assert!(jacobi(1, 4).is_err());
    }

    #[test]
    fn least_nonresidue_values() {
        assert_eq!(least_nonresidue(3).unwrap(), 2);
        assert_eq!(least_nonresidue(5).unwrap(), 2);
        assert_eq!(least_nonresidue(7).unwrap(), 3);
        assert_eq!(least_nonresidue(17).unwrap(), 3);
        assert_eq!(least_nonresidue(23).unwrap(), 5);
    }

    #[test]
    fn digit_expansion() {
        assert_eq!(digits(0, 3), Vec::<u64>::new());
        assert_eq!(digits(30, 3), vec![0, 1, 0, 1]);
        assert_eq!(digits(7, 5), vec![2, 1]);
    }

    #[test]
    fn sign_classes_of_representatives() {
        for p in [3u64, 5, 7, 11, 13] {
            assert_eq!(NavarroAut::id(p).class().unwrap(), SignClass::Id);
            assert_eq!(NavarroAut::sigma(p).class().unwrap(), SignClass::Sigma);
            assert_eq!(NavarroAut::kappa(p).class().unwrap(), SignClass::Kappa);
            assert_eq!(
                NavarroAut::kappa_sigma(p).class().unwrap(),
                SignClass::KappaSigma
            );
        }
    }

    #[test]
    fn class_depends_only_on_parity_and_residue() {
        let f = NavarroAut::new(5, 4, 9).unwrap();
        assert_eq!(f.class().unwrap(), SignClass::Id);
        let g = NavarroAut::new(5, 3, 8).unwrap();
        assert_eq!(g.class().unwrap(), SignClass::KappaSigma);
    }

    #[test]
    fn aut_requires_unit_exponent() {
        assert!(NavarroAut::new(5, 0, 10).is_err());
        assert!(NavarroAut::new(4, 0, 1).is_err());
    }

    #[test]
    fn frobenius_negates_sqrt_p_exactly_for_three_mod_four() {
        for p in [3u64, 7, 11, 19] {
            assert_eq!(NavarroAut::sigma(p).sqrt_sign(p).unwrap(), -1, "p = {p}");
        }
        for p in [5u64, 13, 17] {
            assert_eq!(NavarroAut::sigma(p).sqrt_sign(p).unwrap(), 1, "p = {p}");
        }
    }

    #[test]
    fn kappa_always_negates_sqrt_p() {
        for p in [3u64, 5, 7, 11, 13, 17] {
            assert_eq!(NavarroAut::kappa(p).sqrt_sign(p).unwrap(), -1, "p = {p}");
        }
    }

    #[test]
    fn identity_fixes_all_quadratics() {
        for p in [3u64, 5, 7] {
            let f = NavarroAut::id(p);
            for m in (1..60u64).step_by(2) {
                assert_eq!(f.sqrt_sign(m).unwrap(), 1, "p = {p}, m = {m}");
            }
        }
    }

    #[test]
    fn sqrt_sign_is_multiplicative() {
        for p in [3u64, 5, 7] {
            for f in [
                NavarroAut::sigma(p),
                NavarroAut::kappa(p),
                NavarroAut::kappa_sigma(p),
            ] {
                for a in (1..30u64).step_by(2) {
                    for b in (1..30u64).step_by(2) {
                        assert_eq!(
                            f.sqrt_sign(a * b).unwrap(),
                            f.sqrt_sign(a).unwrap() * f.sqrt_sign(b).unwrap()
                        );
                    }
                }
            }
        }
    }

    #[test]
    fn eps_quad_tracks_both_factors() {
        let f = NavarroAut::sigma(3);
        let v = QuadValue::new(1, 3).unwrap();
        assert_eq!(f.eps_quad(&v).unwrap(), 1);
        let w = QuadValue::new(0, 3).unwrap();
        assert_eq!(f.eps_quad(&w).unwrap(), -1);
    }

    #[test]
    fn compose_adds_parameters() {
        let f = NavarroAut::sigma(7);
        let g = NavarroAut::kappa(7);
        let h = f.compose(&g).unwrap();
        assert_eq!(h.class().unwrap(), SignClass::KappaSigma);
        for m in (1..40u64).step_by(2) {
            assert_eq!(
                h.sqrt_sign(m).unwrap(),
                f.sqrt_sign(m).unwrap() * g.sqrt_sign(m).unwrap()
            );
        }
    }

    #[test]
    fn parse_aut_forms() {
        assert_eq!(parse_aut("sigma", 5).unwrap(), NavarroAut::sigma(5));
        assert_eq!(
            parse_aut("e=2,s=3", 5).unwrap(),
            NavarroAut::new(5, 2, 3).unwrap()
        );
        assert!(parse_aut("e=1", 5).is_err());
        assert!(parse_aut("frob", 5).is_err());
        assert!(parse_aut("e=1,s=5", 5).is_err());
    }
}
