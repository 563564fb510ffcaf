//! Exact arithmetic in the ring of integers `Z[ζ_p]` of the `p`-th cyclotomic
//! field.
//!
//! Elements are stored in the power basis `1, ζ, …, ζ^{p-2}`; the relation
//! `1 + ζ + … + ζ^{p-1} = 0` folds the top power back into the basis, so
//! every element has exactly one coordinate vector. The prime `h = 1 - ζ`
//! above `p` drives everything else in the crate: [`CyclotomicInteger::v_h`]
//! measures divisibility by it and [`QuotientRing`] implements `Z[ζ_p]/h^m`.

mod quotient;

pub use quotient::{HQuotElement, QuotientRing};

use std::fmt;
use std::hash::Hash;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_complex::Complex64;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};

use crate::{Error, Result};

/// `h`-adic valuation. `Infinite` is only ever the valuation of zero (or, in
/// a quotient ring `Z[ζ]/h^m`, of the zero residue).
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Valuation {
    Finite(u32),
    Infinite,
}

impl Valuation {
    pub fn is_infinite(self) -> bool {
        matches!(self, Valuation::Infinite)
    }

    pub fn finite(self) -> Option<u32> {
        match self {
            Valuation::Finite(v) => Some(v),
            Valuation::Infinite => None,
        }
    }

    /// `self >= k` with `Infinite` above every integer.
    pub fn at_least(self, k: u32) -> bool {
        match self {
            Valuation::Finite(v) => v >= k,
            Valuation::Infinite => true,
        }
    }
}

impl fmt::Display for Valuation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Valuation::Finite(v) => write!(f, "{v}"),
            Valuation::Infinite => f.write_str("infinite"),
        }
    }
}

impl Serialize for Valuation {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            Valuation::Finite(v) => s.serialize_u32(*v),
            Valuation::Infinite => s.serialize_str("infinite"),
        }
    }
}

pub(crate) fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// Accepts odd primes `p >= 5`.
pub fn check_prime(p: u32) -> Result<()> {
    if p >= 5 && is_prime(p as u64) {
        Ok(())
    } else {
        Err(Error::InvalidParameter(format!(
            "p = {p} is not an odd prime >= 5"
        )))
    }
}

/// Embedding index `j` whose root `A = e^{iπj/p}` is closest to `e^{iπ/6}`,
/// among the primitive `2p`-th roots of unity. The embedding sends
/// `ζ = A²` to `e^{2πij/p}`.
pub fn default_embedding_index(p: u32) -> u32 {
    let target = Complex64::from_polar(1.0, std::f64::consts::PI / 6.0);
    let two_p = 2 * p;
    (1..two_p)
        .filter(|j| j.gcd(&two_p) == 1)
        .min_by(|&x, &y| {
            let dx = (Complex64::from_polar(1.0, std::f64::consts::PI * x as f64 / p as f64)
                - target)
                .norm();
            let dy = (Complex64::from_polar(1.0, std::f64::consts::PI * y as f64 / p as f64)
                - target)
                .norm();
            dx.total_cmp(&dy)
        })
        .expect("p >= 2 has a primitive 2p-th root")
}

/// Operations shared by the exact ring and its quotients, enough to run
/// 2×2 matrix arithmetic generically.
pub trait RingElement: Clone + PartialEq + Eq + Hash + fmt::Debug {
    fn zero_like(&self) -> Self;
    fn one_like(&self) -> Self;
    fn is_zero(&self) -> bool;
    fn add_ref(&self, other: &Self) -> Self;
    fn sub_ref(&self, other: &Self) -> Self;
    fn mul_ref(&self, other: &Self) -> Self;
    fn neg_ref(&self) -> Self;
    /// `h`-adic valuation; in `Z[ζ]/h^m` zero reports `Infinite`, which means
    /// "at least `m`".
    fn h_valuation(&self) -> Valuation;
    fn is_unit(&self) -> bool;
    /// Some `q` with `self = q·by`, when the ring can certify one.
    fn try_div(&self, by: &Self) -> Option<Self>;
    /// Whether the ring is finite (a quotient `Z[ζ]/h^m`).
    const FINITE: bool;
}

/// An element of `Z[ζ_p]` in canonical power-basis coordinates.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct CyclotomicInteger {
    p: u32,
    coeffs: Vec<BigInt>,
}

impl CyclotomicInteger {
    /// Canonical form of `Σ raw[i]·ζ^i`. `raw` may have any length; indices
    /// are taken modulo `p`.
    pub fn reduce<I, T>(p: u32, raw: I) -> Result<Self>
    where
        I: IntoIterator<Item = T>,
        T: Into<BigInt>,
    {
        check_prime(p)?;
        let mut full = vec![BigInt::zero(); p as usize];
        for (i, c) in raw.into_iter().enumerate() {
            full[i % p as usize] += c.into();
        }
        Ok(Self::fold(p, full))
    }

    /// `full` has length `p`; folds `ζ^{p-1} = -(1 + … + ζ^{p-2})`.
    fn fold(p: u32, mut full: Vec<BigInt>) -> Self {
        let top = full.pop().expect("length p");
        if !top.is_zero() {
            for c in full.iter_mut() {
                *c -= &top;
            }
        }
        Self { p, coeffs: full }
    }

    pub fn zero(p: u32) -> Result<Self> {
        check_prime(p)?;
        Ok(Self {
            p,
            coeffs: vec![BigInt::zero(); p as usize - 1],
        })
    }

    pub fn from_int(p: u32, n: impl Into<BigInt>) -> Result<Self> {
        let mut z = Self::zero(p)?;
        z.coeffs[0] = n.into();
        Ok(z)
    }

    pub fn one(p: u32) -> Result<Self> {
        Self::from_int(p, 1)
    }

    /// `ζ^e` for any integer `e`; negative exponents are fine since `ζ` is a
    /// unit.
    pub fn zeta_pow(p: u32, e: i64) -> Result<Self> {
        check_prime(p)?;
        let k = e.rem_euclid(p as i64) as usize;
        let mut full = vec![BigInt::zero(); p as usize];
        full[k] = BigInt::one();
        Ok(Self::fold(p, full))
    }

    /// The prime `h = 1 - ζ`.
    pub fn h(p: u32) -> Result<Self> {
        Ok(&Self::one(p)? - &Self::zeta_pow(p, 1)?)
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    pub fn is_one(&self) -> bool {
        self.coeffs[0].is_one() && self.coeffs[1..].iter().all(Zero::is_zero)
    }

    fn check_same(&self, other: &Self) -> Result<()> {
        if self.p == other.p {
            Ok(())
        } else {
            Err(Error::InvalidParameter(format!(
                "mismatched primes {} and {}",
                self.p, other.p
            )))
        }
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self> {
        self.check_same(other)?;
        Ok(Self {
            p: self.p,
            coeffs: self
                .coeffs
                .iter()
                .zip(&other.coeffs)
                .map(|(a, b)| a + b)
                .collect(),
        })
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self> {
        self.check_same(other)?;
        Ok(Self {
            p: self.p,
            coeffs: self
                .coeffs
                .iter()
                .zip(&other.coeffs)
                .map(|(a, b)| a - b)
                .collect(),
        })
    }

    pub fn checked_mul(&self, other: &Self) -> Result<Self> {
        self.check_same(other)?;
        let p = self.p as usize;
        let mut full = vec![BigInt::zero(); p];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                if b.is_zero() {
                    continue;
                }
                full[(i + j) % p] += a * b;
            }
        }
        Ok(Self::fold(self.p, full))
    }

    pub fn int_pow(&self, mut n: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one(self.p).expect("valid p");
        while n > 0 {
            if n & 1 == 1 {
                acc = &acc * &base;
            }
            n >>= 1;
            if n > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    pub fn scale(&self, k: &BigInt) -> Self {
        Self {
            p: self.p,
            coeffs: self.coeffs.iter().map(|c| c * k).collect(),
        }
    }

    /// Image in the residue field `Z[ζ]/h = F_p` (send `ζ` to 1).
    pub fn residue_mod_h(&self) -> u32 {
        let s: BigInt = self.coeffs.iter().sum();
        s.mod_floor(&BigInt::from(self.p))
            .to_u32()
            .expect("residue below p")
    }

    /// One exact division by `h`, or `None` if `h` does not divide `self`.
    pub fn div_h(&self) -> Option<Self> {
        let p = BigInt::from(self.p);
        let sum: BigInt = self.coeffs.iter().sum();
        let (c, r) = sum.div_rem(&p);
        if !r.is_zero() {
            return None;
        }
        // X(t) = x(t) - c·Φ_p(t) vanishes at t = 1 and agrees with x at ζ.
        let n = self.coeffs.len();
        let mut poly: Vec<BigInt> = self.coeffs.iter().map(|a| a - &c).collect();
        poly.push(-c);
        // Synthetic division X(t) = (t - 1)·Q(t); then x = h·(-Q).
        let mut q = vec![BigInt::zero(); n];
        let mut acc = BigInt::zero();
        for i in (1..=n).rev() {
            acc += &poly[i];
            q[i - 1] = acc.clone();
        }
        debug_assert!((&poly[0] + &acc).is_zero());
        Some(Self {
            p: self.p,
            coeffs: q.into_iter().map(|v| -v).collect(),
        })
    }

    /// Largest `m` with `h^m | self`, found by repeated exact division.
    pub fn v_h(&self) -> Valuation {
        if self.is_zero() {
            return Valuation::Infinite;
        }
        let mut x = self.clone();
        let mut m = 0;
        while let Some(y) = x.div_h() {
            x = y;
            m += 1;
        }
        Valuation::Finite(m)
    }

    /// `y` with `self = h^m·y`. Fails instead of rounding when `v_h < m`.
    pub fn div_h_exact(&self, m: u32) -> Result<Self> {
        let mut x = self.clone();
        for done in 0..m {
            x = x.div_h().ok_or(Error::NotDivisible {
                requested: m,
                valuation: done,
            })?;
        }
        Ok(x)
    }

    /// Image under the Galois automorphism `ζ ↦ ζ^k`, `gcd(k, p) = 1`.
    pub fn galois(&self, k: u32) -> Self {
        let p = self.p as usize;
        let mut full = vec![BigInt::zero(); p];
        for (i, c) in self.coeffs.iter().enumerate() {
            full[(i * k as usize) % p] += c;
        }
        Self::fold(self.p, full)
    }

    /// Product of the conjugates other than `self`, so that
    /// `self · cofactor = N(self)`.
    fn norm_cofactor(&self) -> Self {
        (2..self.p).fold(Self::one(self.p).expect("valid p"), |acc, k| {
            &acc * &self.galois(k)
        })
    }

    /// Field norm down to `Z`.
    pub fn norm(&self) -> BigInt {
        let n = self * &self.norm_cofactor();
        debug_assert!(n.coeffs[1..].iter().all(Zero::is_zero));
        n.coeffs[0].clone()
    }

    /// `q` with `self = q·by` if it exists in `Z[ζ]`.
    pub fn div_exact(&self, by: &Self) -> Option<Self> {
        if by.p != self.p || by.is_zero() {
            return None;
        }
        let cof = by.norm_cofactor();
        let n = by.norm();
        let num = self * &cof;
        let mut coeffs = Vec::with_capacity(num.coeffs.len());
        for c in &num.coeffs {
            let (q, r) = c.div_rem(&n);
            if !r.is_zero() {
                return None;
            }
            coeffs.push(q);
        }
        Some(Self { p: self.p, coeffs })
    }

    /// If `self = ±ζ^k`, returns `(negative, k)` with `0 <= k < p`.
    pub fn as_signed_zeta_power(&self) -> Option<(bool, u32)> {
        for k in 0..self.p {
            let z = Self::zeta_pow(self.p, k as i64).expect("valid p");
            if *self == z {
                return Some((false, k));
            }
            if *self == -&z {
                return Some((true, k));
            }
        }
        None
    }

    /// Inverse of a signed root of unity `±ζ^k`.
    pub fn root_of_unity_inverse(&self) -> Option<Self> {
        let (neg, k) = self.as_signed_zeta_power()?;
        let inv = Self::zeta_pow(self.p, -(k as i64)).expect("valid p");
        Some(if neg { -&inv } else { inv })
    }

    /// Evaluates at `ζ = e^{2πij/p}`. Coefficients are summed in index order.
    pub fn embed(&self, j: u32) -> Result<Complex64> {
        if j.gcd(&self.p) != 1 {
            return Err(Error::InvalidParameter(format!(
                "embedding index {j} is not coprime to p = {}",
                self.p
            )));
        }
        let step = std::f64::consts::TAU / self.p as f64;
        let mut acc = Complex64::new(0.0, 0.0);
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let cf = c.to_f64().unwrap_or(f64::NAN);
            let angle = step * ((i as u64 * j as u64) % self.p as u64) as f64;
            acc += Complex64::from_polar(cf, angle);
        }
        Ok(acc)
    }
}

impl fmt::Debug for CyclotomicInteger {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Cyc{}({})", self.p, self)
    }
}

impl fmt::Display for CyclotomicInteger {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            let mag = c.abs();
            if first {
                if neg {
                    f.write_str("-")?;
                }
            } else {
                f.write_str(if neg { " - " } else { " + " })?;
            }
            first = false;
            match i {
                0 => write!(f, "{mag}")?,
                _ => {
                    if !mag.is_one() {
                        write!(f, "{mag}·")?;
                    }
                    if i == 1 {
                        f.write_str("ζ")?;
                    } else {
                        write!(f, "ζ^{i}")?;
                    }
                }
            }
        }
        if first {
            f.write_str("0")?;
        }
        Ok(())
    }
}

/// `{"p": 7, "coeffs": ["1", "0", …]}` with decimal strings so that large
/// coefficients survive JSON readers limited to doubles.
impl Serialize for CyclotomicInteger {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("CyclotomicInteger", 2)?;
        st.serialize_field("p", &self.p)?;
        let coeffs: Vec<String> = self.coeffs.iter().map(|c| c.to_string()).collect();
        st.serialize_field("coeffs", &coeffs)?;
        st.end()
    }
}

// Operators panic on mismatched primes; use the `checked_*` methods where the
// primes are not known to agree.
impl Add for &CyclotomicInteger {
    type Output = CyclotomicInteger;
    fn add(self, rhs: Self) -> CyclotomicInteger {
        self.checked_add(rhs).expect("operands share p")
    }
}

impl Sub for &CyclotomicInteger {
    type Output = CyclotomicInteger;
    fn sub(self, rhs: Self) -> CyclotomicInteger {
        self.checked_sub(rhs).expect("operands share p")
    }
}

impl Mul for &CyclotomicInteger {
    type Output = CyclotomicInteger;
    fn mul(self, rhs: Self) -> CyclotomicInteger {
        self.checked_mul(rhs).expect("operands share p")
    }
}

impl Neg for &CyclotomicInteger {
    type Output = CyclotomicInteger;
    fn neg(self) -> CyclotomicInteger {
        CyclotomicInteger {
            p: self.p,
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

impl RingElement for CyclotomicInteger {
    fn zero_like(&self) -> Self {
        Self::zero(self.p).expect("valid p")
    }
    fn one_like(&self) -> Self {
        Self::one(self.p).expect("valid p")
    }
    fn is_zero(&self) -> bool {
        CyclotomicInteger::is_zero(self)
    }
    fn add_ref(&self, other: &Self) -> Self {
        self + other
    }
    fn sub_ref(&self, other: &Self) -> Self {
        self - other
    }
    fn mul_ref(&self, other: &Self) -> Self {
        self * other
    }
    fn neg_ref(&self) -> Self {
        -self
    }
    fn h_valuation(&self) -> Valuation {
        self.v_h()
    }
    fn is_unit(&self) -> bool {
        let n = self.norm();
        n.is_one() || (-n).is_one()
    }
    fn try_div(&self, by: &Self) -> Option<Self> {
        self.div_exact(by)
    }
    const FINITE: bool = false;
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cyc(p: u32, raw: &[i64]) -> CyclotomicInteger {
        CyclotomicInteger::reduce(p, raw.iter().copied()).unwrap()
    }

    #[test]
    fn reduce_folds_the_cyclotomic_relation() {
        assert!(cyc(7, &[0, 0, 0, 0, 0, 0, 0, 1]).is_one());
        assert!(cyc(7, &[1; 7]).is_zero());
        assert_eq!(cyc(5, &[0, 0, 0, 0, 1]), cyc(5, &[-1, -1, -1, -1]));
    }

    #[test]
    fn reduce_rejects_bad_primes() {
        for p in [0, 1, 2, 3, 4, 9, 15] {
            assert!(matches!(
                CyclotomicInteger::reduce(p, [1i64]),
                Err(Error::InvalidParameter(_))
            ));
        }
    }

    #[test]
    fn ring_operations() {
        let p = 7;
        let z = CyclotomicInteger::zeta_pow(p, 1).unwrap();
        let h = CyclotomicInteger::h(p).unwrap();
        assert!((&h + &z).is_one());
        assert_eq!(
            CyclotomicInteger::zeta_pow(7, -5).unwrap(),
            CyclotomicInteger::zeta_pow(7, 2).unwrap()
        );
        assert!((&z * &CyclotomicInteger::zeta_pow(p, p as i64 - 1).unwrap()).is_one());
        assert_eq!(z.int_pow(7), CyclotomicInteger::one(7).unwrap());
        assert_eq!(z.int_pow(0), CyclotomicInteger::one(7).unwrap());
    }

    #[test]
    fn mismatched_primes_error() {
        let a = CyclotomicInteger::one(5).unwrap();
        let b = CyclotomicInteger::one(7).unwrap();
        assert!(matches!(a.checked_add(&b), Err(Error::InvalidParameter(_))));
        assert!(matches!(a.checked_mul(&b), Err(Error::InvalidParameter(_))));
    }

    #[test]
    fn valuations() {
        for p in [5u32, 7, 11, 13] {
            assert_eq!(
                CyclotomicInteger::zero(p).unwrap().v_h(),
                Valuation::Infinite
            );
            let pp = CyclotomicInteger::from_int(p, p).unwrap();
            assert_eq!(pp.v_h(), Valuation::Finite(p - 1));
            for m in 1..p {
                let x = &CyclotomicInteger::zeta_pow(p, m as i64).unwrap()
                    - &CyclotomicInteger::one(p).unwrap();
                assert_eq!(x.v_h(), Valuation::Finite(1), "p={p} m={m}");
            }
            let z = pp.div_h_exact(p - 1).unwrap();
            assert_eq!(z.v_h(), Valuation::Finite(0));
        }
    }

    #[test]
    fn div_h_exact_cases() {
        let p = 7;
        let h = CyclotomicInteger::h(p).unwrap();
        assert!(h.div_h_exact(1).unwrap().is_one());
        let z = CyclotomicInteger::zeta_pow(p, 1).unwrap();
        assert_eq!(
            z.div_h_exact(1),
            Err(Error::NotDivisible {
                requested: 1,
                valuation: 0
            })
        );
        let h3 = h.int_pow(3);
        assert_eq!(
            h3.div_h_exact(3).unwrap(),
            CyclotomicInteger::one(p).unwrap()
        );
        assert_eq!(h3.div_h_exact(2).unwrap(), h);
    }

    #[test]
    fn embedding_values() {
        let p = 7;
        let z = CyclotomicInteger::zeta_pow(p, 1).unwrap();
        let e = z.embed(1).unwrap();
        let expect = Complex64::from_polar(1.0, std::f64::consts::TAU / 7.0);
        assert!((e - expect).norm() < 1e-14);
        let h = CyclotomicInteger::h(p).unwrap();
        let chord = 2.0 * (std::f64::consts::PI / 7.0).sin();
        assert!((h.embed(1).unwrap().norm() - chord).abs() < 1e-14);
        // 1 + ζ + … + ζ^{p-2} = -ζ^{p-1}
        let partial = cyc(p, &[1; 6]);
        for j in 1..7 {
            let lhs = partial.embed(j).unwrap();
            let rhs = -Complex64::from_polar(1.0, std::f64::consts::TAU * (6 * j) as f64 / 7.0);
            assert!((lhs - rhs).norm() < 1e-12);
        }
        assert!(matches!(z.embed(7), Err(Error::InvalidParameter(_))));
        assert!(matches!(z.embed(0), Err(Error::InvalidParameter(_))));
    }

    #[test]
    fn default_embedding() {
        assert_eq!(default_embedding_index(7), 1);
        assert_eq!(default_embedding_index(5), 1);
        // 13/6 ≈ 2.17 → nearest odd j coprime to 26 is 3 (j/p = 0.23) or 1
        // (0.077); 3 is closer to 1/6.
        assert_eq!(default_embedding_index(13), 3);
    }

    #[test]
    fn display_and_json() {
        let x = cyc(7, &[2, -1, 0, 3]);
        assert_eq!(x.to_string(), "2 - ζ + 3·ζ^3");
        let json = serde_json::to_string(&x).unwrap();
        assert_eq!(json, r#"{"p":7,"coeffs":["2","-1","0","3","0","0"]}"#);
        assert_eq!(CyclotomicInteger::zero(7).unwrap().to_string(), "0");
    }

    #[test]
    fn norms_and_exact_division() {
        let p = 7;
        let h = CyclotomicInteger::h(p).unwrap();
        assert_eq!(h.norm(), BigInt::from(7));
        let two = CyclotomicInteger::from_int(p, 2).unwrap();
        assert_eq!(two.norm(), BigInt::from(64));
        let z = CyclotomicInteger::zeta_pow(p, 3).unwrap();
        assert!(RingElement::is_unit(&z));
        assert!(!RingElement::is_unit(&h));
        // 1 + ζ is a cyclotomic unit
        let u = cyc(p, &[1, 1]);
        assert!(RingElement::is_unit(&u));
        let x = cyc(p, &[3, -1, 4, 1, -5, 9]);
        let prod = &x * &h;
        assert_eq!(prod.div_exact(&h).unwrap(), x);
        assert_eq!(prod.div_exact(&x).unwrap(), h);
        assert!(x.div_exact(&h).is_none() || (&h * &x.div_exact(&h).unwrap()) == x);
        assert!(z.div_exact(&two).is_none());
    }

    #[test]
    fn signed_roots_of_unity() {
        let p = 11;
        for k in 0..p {
            let z = CyclotomicInteger::zeta_pow(p, k as i64).unwrap();
            assert_eq!(z.as_signed_zeta_power(), Some((false, k)));
            assert!((&z * &z.root_of_unity_inverse().unwrap()).is_one());
            let nz = -&z;
            assert_eq!(nz.as_signed_zeta_power(), Some((true, k)));
            assert!((&nz * &nz.root_of_unity_inverse().unwrap()).is_one());
        }
        assert_eq!(
            CyclotomicInteger::from_int(11, 2)
                .unwrap()
                .as_signed_zeta_power(),
            None
        );
    }
}
