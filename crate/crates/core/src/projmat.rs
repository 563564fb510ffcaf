//! 2×2 matrices over `Z[ζ_p]` and `Z[ζ_p]/h^m`, read projectively.
//!
//! Two matrices represent the same projective element when one is a unit
//! multiple of the other. Inverses go through the adjugate so arithmetic
//! never leaves the ring; the determinant factor is harmless projectively.

use std::fmt;

use num_complex::Complex64;
use num_integer::Integer;
use serde::{Serialize, Serializer};

use crate::cyclotomic::{CyclotomicInteger, HQuotElement, RingElement, Valuation};
use crate::{Error, Result};

/// Numeric margin above which an eigenvalue ratio is definitely off the unit
/// circle.
pub const OFF_CIRCLE: f64 = 1e-6;
/// Numeric margin below which an eigenvalue ratio is taken to be on it.
pub const ON_CIRCLE: f64 = 1e-9;

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Mat2<R> {
    e: [[R; 2]; 2],
}

pub type ExactMatrix = Mat2<CyclotomicInteger>;
pub type QuotMatrix = Mat2<HQuotElement>;

impl<R: RingElement> Mat2<R> {
    pub fn new(a: R, b: R, c: R, d: R) -> Self {
        Self {
            e: [[a, b], [c, d]],
        }
    }

    pub fn identity_like(x: &R) -> Self {
        Self::scalar(x.one_like())
    }

    pub fn scalar(s: R) -> Self {
        let z = s.zero_like();
        Self::new(s.clone(), z.clone(), z, s)
    }

    pub fn entry(&self, i: usize, j: usize) -> &R {
        &self.e[i][j]
    }

    pub fn entries(&self) -> impl Iterator<Item = &R> {
        self.e.iter().flatten()
    }

    pub fn map<S: RingElement>(&self, f: impl Fn(&R) -> S) -> Mat2<S> {
        Mat2::new(
            f(&self.e[0][0]),
            f(&self.e[0][1]),
            f(&self.e[1][0]),
            f(&self.e[1][1]),
        )
    }

    pub fn mul(&self, o: &Self) -> Self {
        let e = &self.e;
        let f = &o.e;
        let cell = |i: usize, j: usize| {
            e[i][0]
                .mul_ref(&f[0][j])
                .add_ref(&e[i][1].mul_ref(&f[1][j]))
        };
        Self::new(cell(0, 0), cell(0, 1), cell(1, 0), cell(1, 1))
    }

    pub fn det(&self) -> R {
        let e = &self.e;
        e[0][0]
            .mul_ref(&e[1][1])
            .sub_ref(&e[0][1].mul_ref(&e[1][0]))
    }

    pub fn trace(&self) -> R {
        self.e[0][0].add_ref(&self.e[1][1])
    }

    /// `[[d, -b], [-c, a]]`; `adjugate(M)·M = det(M)·I`.
    pub fn adjugate(&self) -> Self {
        let e = &self.e;
        Self::new(
            e[1][1].clone(),
            e[0][1].neg_ref(),
            e[1][0].neg_ref(),
            e[0][0].clone(),
        )
    }

    /// Projective inverse via the adjugate. In a quotient ring the
    /// determinant must be a unit; over `Z[ζ]` it must be nonzero.
    pub fn adj_inverse(&self) -> Result<Self> {
        let d = self.det();
        if d.is_zero() || (R::FINITE && !d.is_unit()) {
            return Err(Error::SingularMatrix);
        }
        Ok(self.adjugate())
    }

    pub fn scale(&self, s: &R) -> Self {
        self.map(|x| x.mul_ref(s))
    }

    pub fn pow(&self, mut n: u64) -> Self {
        let mut base = self.clone();
        let mut acc = Self::identity_like(&self.e[0][0]);
        while n > 0 {
            if n & 1 == 1 {
                acc = acc.mul(&base);
            }
            n >>= 1;
            if n > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    /// Exact scalar test: off-diagonals vanish and the diagonal is constant.
    pub fn is_scalar(&self) -> bool {
        self.e[0][1].is_zero() && self.e[1][0].is_zero() && self.e[0][0] == self.e[1][1]
    }

    /// `min(v_h(b), v_h(c), v_h(a - d))`: the largest `k` with `M` scalar
    /// modulo `h^k`. `Infinite` exactly for scalar matrices (in a quotient
    /// ring: for matrices scalar at the ring's level).
    pub fn h_depth(&self) -> Valuation {
        let e = &self.e;
        [
            e[0][1].h_valuation(),
            e[1][0].h_valuation(),
            e[0][0].sub_ref(&e[1][1]).h_valuation(),
        ]
        .into_iter()
        .min()
        .expect("three entries")
    }
}

/// True iff `M = u·N` for a unit `u`. Cross products are compared first; the
/// ratio is then recovered from one nonzero entry of `N` and checked to be a
/// unit.
pub fn proj_equal<R: RingElement>(m: &Mat2<R>, n: &Mat2<R>) -> bool {
    let a: Vec<&R> = m.entries().collect();
    let b: Vec<&R> = n.entries().collect();
    for i in 0..4 {
        for j in i + 1..4 {
            if a[i].mul_ref(b[j]) != a[j].mul_ref(b[i]) {
                return false;
            }
        }
    }
    let pivot = if R::FINITE {
        (0..4).find(|&i| b[i].is_unit())
    } else {
        (0..4).find(|&i| !b[i].is_zero())
    };
    let Some(i) = pivot else {
        return a.iter().all(|x| x.is_zero()) && b.iter().all(|x| x.is_zero());
    };
    let Some(u) = a[i].try_div(b[i]) else {
        return false;
    };
    u.is_unit() && n.scale(&u) == *m
}

impl QuotMatrix {
    /// Scales by the inverse of the first unit entry (row-major) so that
    /// entry becomes 1. Two unit-determinant matrices are projectively equal
    /// iff their canonical forms coincide.
    pub fn proj_canonical(&self) -> Result<Self> {
        if !self.det().is_unit() {
            return Err(Error::SingularMatrix);
        }
        let unit = self
            .entries()
            .find(|x| x.is_unit())
            .ok_or_else(|| Error::Invariant("unit determinant but no unit entry".into()))?;
        Ok(self.scale(&unit.inverse()?))
    }

    /// Flat canonical coordinates, used as a hash key.
    pub fn key(&self) -> Vec<i64> {
        self.entries()
            .flat_map(|x| x.rep().iter().copied())
            .collect()
    }
}

impl ExactMatrix {
    /// Entrywise reduction into `Z[ζ]/h^m`.
    pub fn reduce(
        &self,
        ring: &std::sync::Arc<crate::cyclotomic::QuotientRing>,
    ) -> Result<QuotMatrix> {
        let e = &self.e;
        Ok(Mat2::new(
            ring.reduce(&e[0][0])?,
            ring.reduce(&e[0][1])?,
            ring.reduce(&e[1][0])?,
            ring.reduce(&e[1][1])?,
        ))
    }

    /// Honest inverse when the determinant is a signed root of unity.
    pub fn unit_inverse(&self) -> Result<Self> {
        let dinv = self
            .det()
            .root_of_unity_inverse()
            .ok_or(Error::SingularMatrix)?;
        Ok(self.adjugate().scale(&dinv))
    }

    pub fn embed(&self, j: u32) -> Result<[[Complex64; 2]; 2]> {
        let e = &self.e;
        Ok([
            [e[0][0].embed(j)?, e[0][1].embed(j)?],
            [e[1][0].embed(j)?, e[1][1].embed(j)?],
        ])
    }

    pub fn p(&self) -> u32 {
        self.e[0][0].p()
    }
}

impl<R: RingElement + fmt::Display> fmt::Display for Mat2<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let e = &self.e;
        write!(
            f,
            "[[{}, {}], [{}, {}]]",
            e[0][0], e[0][1], e[1][0], e[1][1]
        )
    }
}

impl<R: RingElement> fmt::Debug for Mat2<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(self.e.iter()).finish()
    }
}

impl<R: Serialize> Serialize for Mat2<R> {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.e.serialize(s)
    }
}

/// Projective order: finite, or infinite.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Order {
    Finite(u64),
    Infinite,
}

impl Order {
    pub fn is_finite(self) -> bool {
        matches!(self, Order::Finite(_))
    }
}

impl fmt::Display for Order {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Order::Finite(n) => write!(f, "{n}"),
            Order::Infinite => f.write_str("infinite"),
        }
    }
}

impl Serialize for Order {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            Order::Finite(n) => s.serialize_u64(*n),
            Order::Infinite => s.serialize_str("infinite"),
        }
    }
}

pub(crate) fn euler_phi(mut n: u64) -> u64 {
    let mut result = n;
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            while n.is_multiple_of(d) {
                n /= d;
            }
            result -= result / d;
        }
        d += 1;
    }
    if n > 1 {
        result -= result / n;
    }
    result
}

/// Largest `n` with `φ(n) <= 2(p - 1)`: the eigenvalue ratio of a matrix
/// over `Z[ζ_p]` lives in a field of degree at most `2(p - 1)`, so a finite
/// projective order never exceeds this. Brute force over `n <= 4(p-1)²`,
/// which is safe because `φ(n) >= sqrt(n/2)`.
pub fn order_bound(p: u32) -> u64 {
    let d = 2 * (p as u64 - 1);
    let limit = 4 * (p as u64 - 1).pow(2);
    (1..=limit)
        .filter(|&n| euler_phi(n) <= d)
        .max()
        .unwrap_or(1)
}

/// Smallest `n <= order_bound(p)` with `M^n` scalar, else `Infinite`.
pub fn proj_order(m: &ExactMatrix) -> Order {
    let bound = order_bound(m.p());
    let mut acc = m.clone();
    for n in 1..=bound {
        if acc.is_scalar() {
            return Order::Finite(n);
        }
        acc = acc.mul(m);
    }
    Order::Infinite
}

/// Numerical eigenvalue data of an embedded matrix.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SpectralCertificate {
    pub j: u32,
    pub abs_lambda1: f64,
    pub abs_lambda2: f64,
    /// `| |λ1/λ2| - 1 |`.
    pub margin: f64,
    /// `|tr| / sqrt|det|`, invariant under scaling.
    pub abs_trace: f64,
}

impl SpectralCertificate {
    pub fn off_circle(&self) -> bool {
        self.margin > OFF_CIRCLE
    }

    pub fn on_circle(&self) -> bool {
        self.margin < ON_CIRCLE
    }
}

pub fn spectral_certificate(m: &ExactMatrix, j: u32) -> Result<SpectralCertificate> {
    let e = m.embed(j)?;
    let tr = e[0][0] + e[1][1];
    let det = e[0][0] * e[1][1] - e[0][1] * e[1][0];
    let disc = (tr * tr - 4.0 * det).sqrt();
    let l1 = (tr + disc) / 2.0;
    let l2 = (tr - disc) / 2.0;
    let (a1, a2) = (l1.norm(), l2.norm());
    let (big, small) = if a1 >= a2 { (a1, a2) } else { (a2, a1) };
    let margin = if small == 0.0 {
        f64::INFINITY
    } else {
        big / small - 1.0
    };
    Ok(SpectralCertificate {
        j,
        abs_lambda1: big,
        abs_lambda2: small,
        margin,
        abs_trace: tr.norm() / det.norm().sqrt(),
    })
}

/// Embedding indices `1 <= j < p`, one per Galois conjugate of `ζ`.
pub fn all_embeddings(p: u32) -> impl Iterator<Item = u32> {
    (1..p).filter(move |j| j.gcd(&p) == 1)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cyclotomic::QuotientRing;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    // A^{2k} = ζ^k; the displayed matrices only use even powers of A.
    fn a2(p: u32, k: i64) -> CyclotomicInteger {
        CyclotomicInteger::zeta_pow(p, k).unwrap()
    }

    fn gamma1(p: u32) -> ExactMatrix {
        Mat2::new(
            a2(p, 0),
            &a2(p, -5) - &a2(p, -1),
            CyclotomicInteger::zero(p).unwrap(),
            a2(p, -6),
        )
    }

    fn gamma2(p: u32) -> ExactMatrix {
        Mat2::new(
            a2(p, -4),
            &a2(p, 1) - &a2(p, -3),
            &a2(p, -5) - &a2(p, -7),
            &(&a2(p, 0) - &a2(p, -4)) + &a2(p, -6),
        )
    }

    fn random_cyc(rng: &mut ChaCha8Rng, p: u32) -> CyclotomicInteger {
        CyclotomicInteger::reduce(p, (0..p - 1).map(|_| rng.gen_range(-20i64..=20))).unwrap()
    }

    #[test]
    fn basic_matrix_operations() {
        let p = 7;
        let m = gamma2(p);
        let id = Mat2::identity_like(m.entry(0, 0));
        assert_eq!(id.mul(&m), m);
        let adj = m.adjugate();
        assert_eq!(adj.entry(0, 0), m.entry(1, 1));
        assert_eq!(adj.entry(0, 1), &-m.entry(0, 1));
        assert_eq!(adj.entry(1, 0), &-m.entry(1, 0));
        assert_eq!(adj.entry(1, 1), m.entry(0, 0));
        let prod = m.adj_inverse().unwrap().mul(&m);
        assert!(prod.is_scalar());
        assert_eq!(prod.entry(0, 0), &m.det());
        assert!(proj_equal(&prod, &id));
        // det(ρ7(γ1)) = A^{-12} = ζ^{-6} = ζ
        assert_eq!(gamma1(p).det(), a2(p, 1));
    }

    #[test]
    fn adj_inverse_in_quotient_requires_unit_det() {
        let ring = QuotientRing::new(7, 3).unwrap();
        let h = ring.reduce(&CyclotomicInteger::h(7).unwrap()).unwrap();
        let m = Mat2::new(h.clone(), ring.zero(), ring.zero(), ring.one());
        assert_eq!(m.adj_inverse(), Err(Error::SingularMatrix));
        let z = CyclotomicInteger::zero(7).unwrap();
        let sing = Mat2::new(z.clone(), z.clone(), z.clone(), z);
        assert_eq!(sing.adj_inverse(), Err(Error::SingularMatrix));
    }

    #[test]
    fn projective_equality() {
        let p = 7;
        let m = gamma1(p);
        assert!(proj_equal(&m, &m.scale(&a2(p, 1))));
        assert!(proj_equal(&m, &m.scale(&-&a2(p, 3))));
        let h = CyclotomicInteger::h(p).unwrap();
        assert!(!proj_equal(&m, &m.scale(&h)));
        assert!(!proj_equal(&m.scale(&h), &m));
        assert!(!proj_equal(&gamma1(p), &gamma2(p)));
        // cyclotomic units other than roots of unity also count
        let u = &a2(p, 0) + &a2(p, 1);
        assert!(proj_equal(&m.scale(&u), &m));
    }

    #[test]
    fn canonical_forms() {
        let p = 7;
        let ring = QuotientRing::new(p, 2).unwrap();
        let id = Mat2::identity_like(&ring.one());
        assert_eq!(id.proj_canonical().unwrap(), id);
        let zeta = ring.reduce(&a2(p, 1)).unwrap();
        assert_eq!(Mat2::scalar(zeta).proj_canonical().unwrap(), id);
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let ring = QuotientRing::new(p, 5).unwrap();
        let m = gamma2(p).reduce(&ring).unwrap();
        for _ in 0..20 {
            let u = ring.reduce(&random_cyc(&mut rng, p)).unwrap();
            if !u.is_unit() {
                continue;
            }
            let mu = m.scale(&u);
            assert_eq!(mu.proj_canonical().unwrap(), m.proj_canonical().unwrap());
            assert!(proj_equal(&mu, &m));
        }
        let other = gamma1(p).reduce(&ring).unwrap();
        assert_ne!(other.proj_canonical().unwrap(), m.proj_canonical().unwrap());
        assert!(!proj_equal(&other, &m));
    }

    #[test]
    fn depth_examples() {
        let p = 7;
        let one = a2(p, 0);
        assert_eq!(Mat2::identity_like(&one).h_depth(), Valuation::Infinite);
        assert_eq!(Mat2::scalar(a2(p, 1)).h_depth(), Valuation::Infinite);
        assert_eq!(gamma1(p).h_depth(), Valuation::Finite(1));
    }

    #[test]
    fn depth_is_invariant_under_unit_scaling() {
        let mut rng = ChaCha8Rng::seed_from_u64(17);
        let p = 7;
        let h = CyclotomicInteger::h(p).unwrap();
        for _ in 0..50 {
            let k = rng.gen_range(0..5u32);
            let hk = h.int_pow(k);
            let x = Mat2::new(
                random_cyc(&mut rng, p),
                random_cyc(&mut rng, p),
                random_cyc(&mut rng, p),
                random_cyc(&mut rng, p),
            );
            let m = Mat2::identity_like(&one(p)).add_scaled(&x, &hk);
            let e = rng.gen_range(0..7i64);
            let u = &a2(p, e) * &(&a2(p, 0) + &a2(p, 2)).int_pow(rng.gen_range(0..3));
            assert_eq!(m.scale(&u).h_depth(), m.h_depth());
            assert!(m.h_depth().at_least(k));
        }
    }

    #[test]
    fn depth_filtration_under_products() {
        let mut rng = ChaCha8Rng::seed_from_u64(23);
        let p = 7;
        let h = CyclotomicInteger::h(p).unwrap();
        for _ in 0..50 {
            let (k1, k2) = (rng.gen_range(1..5u32), rng.gen_range(1..5u32));
            let mk = |k: u32, rng: &mut ChaCha8Rng| {
                let x = Mat2::new(
                    random_cyc(rng, p),
                    random_cyc(rng, p),
                    random_cyc(rng, p),
                    random_cyc(rng, p),
                );
                Mat2::identity_like(&one(p)).add_scaled(&x, &h.int_pow(k))
            };
            let (m1, m2) = (mk(k1, &mut rng), mk(k2, &mut rng));
            let d = m1.mul(&m2).h_depth();
            assert!(d >= m1.h_depth().min(m2.h_depth()));
        }
    }

    fn one(p: u32) -> CyclotomicInteger {
        CyclotomicInteger::one(p).unwrap()
    }

    impl ExactMatrix {
        fn add_scaled(&self, x: &Self, s: &CyclotomicInteger) -> Self {
            let e = &self.e;
            let f = &x.e;
            Mat2::new(
                &e[0][0] + &(&f[0][0] * s),
                &e[0][1] + &(&f[0][1] * s),
                &e[1][0] + &(&f[1][0] * s),
                &e[1][1] + &(&f[1][1] * s),
            )
        }
    }

    /// Independent oracle: totient sieve up to a generous 10^4, keeping the
    /// largest n with φ(n) in range.
    fn brute_order_bound(p: u32) -> u64 {
        const LIMIT: usize = 10_000;
        let d = 2 * (p as u64 - 1);
        let mut phi: Vec<u64> = (0..=LIMIT as u64).collect();
        for i in 2..=LIMIT {
            if phi[i] == i as u64 {
                for k in (i..=LIMIT).step_by(i) {
                    phi[k] -= phi[k] / i as u64;
                }
            }
        }
        (1..=LIMIT).filter(|&n| phi[n] <= d).max().unwrap() as u64
    }

    #[test]
    fn order_bounds() {
        assert_eq!(order_bound(5), 30);
        assert_eq!(order_bound(7), 42);
        for p in [5u32, 7, 11, 13] {
            assert_eq!(order_bound(p), brute_order_bound(p));
            assert!(order_bound(p) >= 2 * p as u64);
        }
    }

    #[test]
    fn projective_orders() {
        let p = 7;
        assert_eq!(proj_order(&Mat2::identity_like(&one(p))), Order::Finite(1));
        assert_eq!(proj_order(&gamma1(p)), Order::Finite(7));
        let phi = gamma1(p).mul(&gamma2(p).unit_inverse().unwrap());
        assert_eq!(proj_order(&phi), Order::Infinite);
        // the order is minimal
        let a = gamma1(p);
        for k in 1..7 {
            assert!(!a.pow(k).is_scalar());
        }
        assert!(a.pow(7).is_scalar());
    }

    #[test]
    fn spectral_certificates() {
        let p = 7;
        let id = Mat2::identity_like(&one(p));
        for j in 1..7 {
            assert_eq!(spectral_certificate(&id, j).unwrap().margin, 0.0);
        }
        let a = spectral_certificate(&gamma1(p), 1).unwrap();
        assert!(a.on_circle(), "{a:?}");
        let phi = gamma1(p).mul(&gamma2(p).unit_inverse().unwrap());
        let c = spectral_certificate(&phi, 1).unwrap();
        assert!(c.margin > 1e-3);
        assert!((c.abs_trace - 3.692).abs() < 1e-3, "{c:?}");
        assert!(spectral_certificate(&phi, 7).is_err());
    }
}
