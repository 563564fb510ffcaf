//! The finite rings `Z[ζ_p]/h^m`.
//!
//! A residue is a coordinate vector reduced against an upper-triangular
//! (Hermite) basis of the lattice `h^m·Z[ζ_p]`, so coordinate `i` lies in
//! `[0, d_i)` where `d_i` is the `i`-th diagonal entry. Since
//! `p = unit·h^{p-1}`, the lattice contains `P·Z^{p-1}` for
//! `P = p^{⌈m/(p-1)⌉}`, which keeps intermediate values below `P²`.

use std::fmt;
use std::hash::{Hash, Hasher};
use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, ToPrimitive, Zero};

use super::{check_prime, CyclotomicInteger, RingElement, Valuation};
use crate::{Error, Result};

/// `Z[ζ_p]/h^level` together with its reduction data.
#[derive(Debug)]
pub struct QuotientRing {
    p: u32,
    level: u32,
    /// Row `i` is zero before column `i` and has a positive diagonal.
    basis: Vec<Vec<i128>>,
    /// `p^{⌈level/(p-1)⌉}`; every `P·ζ^i` lies in the lattice.
    modulus: i128,
}

// Products of two residues are below modulus² · (p - 1); i128 has ample room
// under this cap.
const MAX_MODULUS: i128 = 1 << 40;

impl QuotientRing {
    pub fn new(p: u32, level: u32) -> Result<Arc<Self>> {
        check_prime(p)?;
        if level == 0 {
            return Err(Error::InvalidParameter(
                "quotient level must be >= 1".into(),
            ));
        }
        let n = p as usize - 1;
        let c = level.div_ceil(p - 1);
        let modulus = (p as i128)
            .checked_pow(c)
            .filter(|&m| m <= MAX_MODULUS)
            .ok_or_else(|| {
                Error::InvalidParameter(format!("level {level} too deep for p = {p}"))
            })?;

        let hm = CyclotomicInteger::h(p)?.int_pow(level);
        let mut rows: Vec<Vec<BigInt>> = (0..n)
            .map(|i| {
                let z = CyclotomicInteger::zeta_pow(p, i as i64).expect("valid p");
                (&hm * &z).coeffs().to_vec()
            })
            .collect();
        hermite_upper(&mut rows)?;

        let mut basis = Vec::with_capacity(n);
        for row in &rows {
            let converted: Option<Vec<i128>> = row.iter().map(|v| v.to_i128()).collect();
            basis.push(
                converted
                    .ok_or_else(|| Error::Invariant("Hermite basis entry exceeds i128".into()))?,
            );
        }
        let ring = Self {
            p,
            level,
            basis,
            modulus,
        };
        let count: BigInt = ring.diagonal().iter().map(|&d| BigInt::from(d)).product();
        if count != BigInt::from(p).pow(level) {
            return Err(Error::Invariant(format!(
                "Z[ζ]/h^{level} has {count} residues, expected p^{level}"
            )));
        }
        Ok(Arc::new(ring))
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn level(&self) -> u32 {
        self.level
    }

    pub fn diagonal(&self) -> Vec<i128> {
        self.basis.iter().enumerate().map(|(i, r)| r[i]).collect()
    }

    fn dim(&self) -> usize {
        self.p as usize - 1
    }

    /// Canonical representative of an `i128` coordinate vector.
    fn canonicalize(&self, v: &mut [i128]) {
        for i in 0..v.len() {
            v[i] = v[i].rem_euclid(self.modulus);
            let d = self.basis[i][i];
            let q = v[i].div_euclid(d);
            if q != 0 {
                for (x, b) in v[i..].iter_mut().zip(&self.basis[i][i..]) {
                    *x -= q * b;
                }
            }
        }
    }

    fn element(self: &Arc<Self>, mut v: Vec<i128>) -> HQuotElement {
        self.canonicalize(&mut v);
        HQuotElement {
            ring: Arc::clone(self),
            rep: v.into_iter().map(|x| x as i64).collect(),
        }
    }

    /// Reduction of an exact element modulo `h^level`.
    pub fn reduce(self: &Arc<Self>, x: &CyclotomicInteger) -> Result<HQuotElement> {
        if x.p() != self.p {
            return Err(Error::InvalidParameter(format!(
                "element over p = {} reduced in a ring over p = {}",
                x.p(),
                self.p
            )));
        }
        let m = BigInt::from(self.modulus);
        let v = x
            .coeffs()
            .iter()
            .map(|c| c.mod_floor(&m).to_i128().expect("below modulus"))
            .collect();
        Ok(self.element(v))
    }

    pub fn from_int(self: &Arc<Self>, n: i64) -> HQuotElement {
        let mut v = vec![0i128; self.dim()];
        v[0] = n as i128;
        self.element(v)
    }

    pub fn zero(self: &Arc<Self>) -> HQuotElement {
        self.from_int(0)
    }

    pub fn one(self: &Arc<Self>) -> HQuotElement {
        self.from_int(1)
    }

    /// Every residue, in lexicographic order of canonical coordinates.
    pub fn residues(self: &Arc<Self>) -> impl Iterator<Item = HQuotElement> + '_ {
        let diag = self.diagonal();
        let n = diag.len();
        let mut cur = vec![0i128; n];
        let mut done = false;
        std::iter::from_fn(move || {
            if done {
                return None;
            }
            let out = HQuotElement {
                ring: Arc::clone(self),
                rep: cur.iter().map(|&x| x as i64).collect(),
            };
            let mut i = n;
            loop {
                if i == 0 {
                    done = true;
                    break;
                }
                i -= 1;
                cur[i] += 1;
                if cur[i] < diag[i] {
                    break;
                }
                cur[i] = 0;
            }
            Some(out)
        })
    }
}

/// Upper-triangular Hermite form of a full-rank square integer matrix by
/// row operations.
fn hermite_upper(rows: &mut [Vec<BigInt>]) -> Result<()> {
    let n = rows.len();
    for col in 0..n {
        loop {
            let pivot = (col..n)
                .filter(|&r| !rows[r][col].is_zero())
                .min_by_key(|&r| rows[r][col].abs());
            let Some(pr) = pivot else {
                return Err(Error::Invariant("lattice basis is singular".into()));
            };
            rows.swap(col, pr);
            let mut clean = true;
            for r in col + 1..n {
                if rows[r][col].is_zero() {
                    continue;
                }
                let q = rows[r][col].div_floor(&rows[col][col]);
                let (head, tail) = rows.split_at_mut(r);
                for (x, y) in tail[0].iter_mut().zip(&head[col]) {
                    *x -= &q * y;
                }
                if !tail[0][col].is_zero() {
                    clean = false;
                }
            }
            if clean {
                break;
            }
        }
        if rows[col][col].is_negative() {
            for x in rows[col].iter_mut() {
                *x = -&*x;
            }
        }
        for r in 0..col {
            let q = rows[r][col].div_floor(&rows[col][col]);
            if q.is_zero() {
                continue;
            }
            let (head, tail) = rows.split_at_mut(col);
            for (x, y) in head[r].iter_mut().zip(&tail[0]) {
                *x -= &q * y;
            }
        }
    }
    Ok(())
}

/// A residue class in `Z[ζ_p]/h^m`.
#[derive(Clone)]
pub struct HQuotElement {
    ring: Arc<QuotientRing>,
    rep: Vec<i64>,
}

impl PartialEq for HQuotElement {
    fn eq(&self, other: &Self) -> bool {
        self.ring.p == other.ring.p && self.ring.level == other.ring.level && self.rep == other.rep
    }
}

impl Eq for HQuotElement {}

impl Hash for HQuotElement {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.ring.level.hash(state);
        self.rep.hash(state);
    }
}

impl fmt::Debug for HQuotElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "[{}] mod h^{} (p={})",
            self.lift(),
            self.ring.level,
            self.ring.p
        )
    }
}

impl HQuotElement {
    pub fn ring(&self) -> &Arc<QuotientRing> {
        &self.ring
    }

    pub fn level(&self) -> u32 {
        self.ring.level
    }

    /// Canonical coordinates.
    pub fn rep(&self) -> &[i64] {
        &self.rep
    }

    /// The canonical representative as an exact element.
    pub fn lift(&self) -> CyclotomicInteger {
        CyclotomicInteger::reduce(self.ring.p, self.rep.iter().copied()).expect("valid p")
    }

    fn check_same(&self, other: &Self) {
        assert!(
            self.ring.p == other.ring.p && self.ring.level == other.ring.level,
            "operands live in different quotient rings"
        );
    }

    fn wide(&self) -> Vec<i128> {
        self.rep.iter().map(|&x| x as i128).collect()
    }

    pub fn residue_mod_h(&self) -> u32 {
        let s: i128 = self.wide().iter().sum();
        s.rem_euclid(self.ring.p as i128) as u32
    }

    /// Multiplicative inverse by Newton iteration `x ← x(2 - ux)`, which
    /// doubles the `h`-adic precision each step.
    pub fn inverse(&self) -> Result<Self> {
        let p = self.ring.p as i64;
        let r = self.residue_mod_h() as i64;
        if r == 0 {
            return Err(Error::Invariant("inverse of a non-unit residue".into()));
        }
        let r_inv = (1..p).find(|k| (k * r) % p == 1).expect("F_p is a field");
        let one = self.ring.one();
        let two = self.ring.from_int(2);
        let mut x = self.ring.from_int(r_inv);
        for _ in 0..64 {
            let e = self.mul_ref(&x);
            if e == one {
                return Ok(x);
            }
            x = x.mul_ref(&two.sub_ref(&e));
        }
        Err(Error::Invariant("Newton inversion did not converge".into()))
    }
}

impl RingElement for HQuotElement {
    fn zero_like(&self) -> Self {
        self.ring.zero()
    }

    fn one_like(&self) -> Self {
        self.ring.one()
    }

    fn is_zero(&self) -> bool {
        self.rep.iter().all(|&x| x == 0)
    }

    fn add_ref(&self, other: &Self) -> Self {
        self.check_same(other);
        let v = self
            .rep
            .iter()
            .zip(&other.rep)
            .map(|(&a, &b)| a as i128 + b as i128)
            .collect();
        self.ring.element(v)
    }

    fn sub_ref(&self, other: &Self) -> Self {
        self.check_same(other);
        let v = self
            .rep
            .iter()
            .zip(&other.rep)
            .map(|(&a, &b)| a as i128 - b as i128)
            .collect();
        self.ring.element(v)
    }

    fn mul_ref(&self, other: &Self) -> Self {
        self.check_same(other);
        let p = self.ring.p as usize;
        let mut full = vec![0i128; p];
        for (i, &a) in self.rep.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in other.rep.iter().enumerate() {
                full[(i + j) % p] += a as i128 * b as i128;
            }
        }
        let top = full.pop().expect("length p");
        for x in full.iter_mut() {
            *x -= top;
        }
        self.ring.element(full)
    }

    fn neg_ref(&self) -> Self {
        self.ring
            .element(self.rep.iter().map(|&a| -(a as i128)).collect())
    }

    fn h_valuation(&self) -> Valuation {
        if RingElement::is_zero(self) {
            Valuation::Infinite
        } else {
            self.lift().v_h()
        }
    }

    fn is_unit(&self) -> bool {
        self.residue_mod_h() != 0
    }

    /// Division is only attempted by units.
    fn try_div(&self, by: &Self) -> Option<Self> {
        by.inverse().ok().map(|inv| self.mul_ref(&inv))
    }

    const FINITE: bool = true;
}

impl serde::Serialize for HQuotElement {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let mut st = s.serialize_struct("HQuotElement", 3)?;
        st.serialize_field("p", &self.ring.p)?;
        st.serialize_field("level", &self.ring.level)?;
        let coeffs: Vec<String> = self.rep.iter().map(|c| c.to_string()).collect();
        st.serialize_field("coeffs", &coeffs)?;
        st.end()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn random_cyc(rng: &mut ChaCha8Rng, p: u32, bound: i64) -> CyclotomicInteger {
        CyclotomicInteger::reduce(p, (0..p - 1).map(|_| rng.gen_range(-bound..=bound))).unwrap()
    }

    #[test]
    fn residue_count_is_p_to_the_m() {
        for (p, m) in [(5u32, 1u32), (5, 2), (5, 3), (5, 5), (7, 1), (7, 2), (7, 3)] {
            let ring = QuotientRing::new(p, m).unwrap();
            let all: Vec<_> = ring.residues().collect();
            assert_eq!(all.len() as u64, (p as u64).pow(m));
            let distinct: std::collections::HashSet<_> = all.iter().cloned().collect();
            assert_eq!(distinct.len(), all.len());
            // canonical representatives are fixed points of reduction
            for r in all.iter().take(500) {
                assert_eq!(&ring.reduce(&r.lift()).unwrap(), r);
            }
        }
    }

    #[test]
    fn reduction_examples() {
        let p = 7;
        let r1 = QuotientRing::new(p, 1).unwrap();
        let z = CyclotomicInteger::zeta_pow(p, 1).unwrap();
        assert_eq!(r1.reduce(&z).unwrap(), r1.one());
        let r6 = QuotientRing::new(p, 6).unwrap();
        let seven = CyclotomicInteger::from_int(p, 7).unwrap();
        assert!(RingElement::is_zero(&r6.reduce(&seven).unwrap()));
        let r7 = QuotientRing::new(p, 7).unwrap();
        assert!(!RingElement::is_zero(&r7.reduce(&seven).unwrap()));
        let r4 = QuotientRing::new(p, 4).unwrap();
        assert!(RingElement::is_zero(
            &r4.reduce(&CyclotomicInteger::zero(p).unwrap()).unwrap()
        ));
    }

    #[test]
    fn equal_residues_iff_difference_is_deep() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        let p = 7;
        for m in 1..=8 {
            let ring = QuotientRing::new(p, m).unwrap();
            let hm = CyclotomicInteger::h(p).unwrap().int_pow(m);
            for _ in 0..40 {
                let x = random_cyc(&mut rng, p, 50);
                let y = &x + &(&hm * &random_cyc(&mut rng, p, 50));
                assert_eq!(ring.reduce(&x).unwrap(), ring.reduce(&y).unwrap());
                let w = random_cyc(&mut rng, p, 50);
                let same = ring.reduce(&x).unwrap() == ring.reduce(&w).unwrap();
                assert_eq!(same, (&x - &w).v_h().at_least(m));
            }
        }
    }

    #[test]
    fn reduction_is_a_ring_homomorphism() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for p in [5u32, 7] {
            for m in 1..=6 {
                let ring = QuotientRing::new(p, m).unwrap();
                for _ in 0..30 {
                    let x = random_cyc(&mut rng, p, 1000);
                    let y = random_cyc(&mut rng, p, 1000);
                    let (rx, ry) = (ring.reduce(&x).unwrap(), ring.reduce(&y).unwrap());
                    assert_eq!(ring.reduce(&(&x * &y)).unwrap(), rx.mul_ref(&ry));
                    assert_eq!(ring.reduce(&(&x + &y)).unwrap(), rx.add_ref(&ry));
                    assert_eq!(ring.reduce(&(&x - &y)).unwrap(), rx.sub_ref(&ry));
                    assert_eq!(ring.reduce(&-&x).unwrap(), rx.neg_ref());
                }
            }
        }
    }

    #[test]
    fn inverses_of_units() {
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        let ring = QuotientRing::new(7, 13).unwrap();
        let mut checked = 0;
        while checked < 50 {
            let x = ring.reduce(&random_cyc(&mut rng, 7, 100)).unwrap();
            if !x.is_unit() {
                assert!(x.inverse().is_err());
                continue;
            }
            assert_eq!(x.mul_ref(&x.inverse().unwrap()), ring.one());
            checked += 1;
        }
    }

    #[test]
    fn quotient_valuation_is_truncated() {
        let p = 7;
        let ring = QuotientRing::new(p, 5).unwrap();
        let h = CyclotomicInteger::h(p).unwrap();
        for k in 0..5 {
            let x = ring.reduce(&h.int_pow(k)).unwrap();
            assert_eq!(x.h_valuation(), Valuation::Finite(k));
        }
        assert_eq!(
            ring.reduce(&h.int_pow(5)).unwrap().h_valuation(),
            Valuation::Infinite
        );
    }

    #[test]
    fn rejects_bad_levels() {
        assert!(QuotientRing::new(7, 0).is_err());
        assert!(QuotientRing::new(7, 1000).is_err());
        assert!(QuotientRing::new(9, 2).is_err());
    }
}
