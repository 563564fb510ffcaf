//! The representation `ρ_p` of the pair-of-pants group `F<a, b>`.
//!
//! The three generator images are the explicit 2×2 matrices of the quantum
//! SO(3) representation at a primitive `2p`-th root `A`. Every power of `A`
//! that appears is even, so the entries live in `Z[ζ_p]` with `ζ = A²`.
//! Words are evaluated with honest inverses: each determinant is a root of
//! unity, so `M⁻¹ = det(M)⁻¹·adj(M)` stays integral.

mod schottky;
mod word;

pub use schottky::{schottky_certificate, Disk, SchottkyCertificate};
pub use word::{is_simple, GroupWord, Letter};

use num_complex::Complex64;
use num_integer::Integer;
use rand::Rng;
use serde::Serialize;

use crate::cyclotomic::{check_prime, CyclotomicInteger};
use crate::projmat::{proj_equal, proj_order, ExactMatrix, Mat2, Order};
use crate::{Error, Result};

/// `Σ c·ζ^e` for Laurent exponents `e`.
pub(crate) fn zeta_sum(p: u32, terms: &[(i64, i64)]) -> CyclotomicInteger {
    let mut acc = CyclotomicInteger::zero(p).expect("checked p");
    for &(c, e) in terms {
        let z = CyclotomicInteger::zeta_pow(p, e).expect("checked p");
        acc = &acc + &z.scale(&c.into());
    }
    acc
}

#[derive(Clone, Debug, Serialize)]
pub struct PantsRep {
    p: u32,
    j: u32,
    ma: ExactMatrix,
    mb: ExactMatrix,
    mc: ExactMatrix,
    #[serde(skip)]
    ma_inv: ExactMatrix,
    #[serde(skip)]
    mb_inv: ExactMatrix,
}

/// Builds `ρ_p` with embedding index `j` (`ζ ↦ e^{2πij/p}`).
///
/// ```
/// use quantum_covers::pantsrep::pants_rep;
/// use quantum_covers::cyclotomic::CyclotomicInteger;
///
/// let rep = pants_rep(7, 1).unwrap();
/// assert_eq!(rep.ma().det(), CyclotomicInteger::zeta_pow(7, -6).unwrap());
/// ```
pub fn pants_rep(p: u32, j: u32) -> Result<PantsRep> {
    check_prime(p)?;
    if j.gcd(&p) != 1 {
        return Err(Error::InvalidParameter(format!(
            "embedding index {j} is not coprime to p = {p}"
        )));
    }
    let z = |t: &[(i64, i64)]| zeta_sum(p, t);
    // A^{2k} = ζ^k throughout.
    let ma = Mat2::new(z(&[(1, 0)]), z(&[(1, -5), (-1, -1)]), z(&[]), z(&[(1, -6)]));
    let mb = Mat2::new(
        z(&[(1, -4)]),
        z(&[(1, 1), (-1, -3)]),
        z(&[(1, -5), (-1, -7)]),
        z(&[(1, 0), (-1, -4), (1, -6)]),
    );
    let mc = Mat2::new(z(&[(1, -4)]), z(&[]), z(&[(-1, -1), (1, -3)]), z(&[(1, 0)]));
    let ma_inv = ma.unit_inverse()?;
    let mb_inv = mb.unit_inverse()?;
    Ok(PantsRep {
        p,
        j,
        ma,
        mb,
        mc,
        ma_inv,
        mb_inv,
    })
}

impl PantsRep {
    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn j(&self) -> u32 {
        self.j
    }

    pub fn ma(&self) -> &ExactMatrix {
        &self.ma
    }

    pub fn mb(&self) -> &ExactMatrix {
        &self.mb
    }

    pub fn mc(&self) -> &ExactMatrix {
        &self.mc
    }

    pub fn letter(&self, l: Letter) -> &ExactMatrix {
        match l {
            Letter::A => &self.ma,
            Letter::AInv => &self.ma_inv,
            Letter::B => &self.mb,
            Letter::BInv => &self.mb_inv,
        }
    }

    /// `ρ(w)` as an honest matrix (not just up to scalar).
    pub fn eval_word(&self, w: &GroupWord) -> ExactMatrix {
        let id = ExactMatrix::identity_like(self.ma.entry(0, 0));
        w.letters()
            .iter()
            .fold(id, |acc, &l| acc.mul(self.letter(l)))
    }

    pub fn order(&self, w: &GroupWord) -> Order {
        proj_order(&self.eval_word(w))
    }
}

/// `ζ⁶ − ζ² + 2 − ζ⁻² + ζ⁻⁶`, the displayed trace of `ρ(a)ρ(b)⁻¹` with `A² = ζ`.
pub fn expected_trace(p: u32) -> Result<CyclotomicInteger> {
    check_prime(p)?;
    Ok(zeta_sum(p, &[(1, 6), (-1, 2), (2, 0), (-1, -2), (1, -6)]))
}

#[derive(Clone, Debug, Serialize)]
pub struct TraceIdentity {
    pub p: u32,
    /// `tr(Ma·adj(Mb))`.
    pub adjugate_trace: CyclotomicInteger,
    pub det_mb: CyclotomicInteger,
    /// `tr(Ma·adj(Mb)) / det(Mb)`.
    pub trace: CyclotomicInteger,
    pub expected: CyclotomicInteger,
    pub holds: bool,
}

pub fn trace_identity(rep: &PantsRep) -> Result<TraceIdentity> {
    let adjugate_trace = rep.ma.mul(&rep.mb.adjugate()).trace();
    let det_mb = rep.mb.det();
    let inv = det_mb
        .root_of_unity_inverse()
        .ok_or(Error::SingularMatrix)?;
    let trace = &adjugate_trace * &inv;
    let expected = expected_trace(rep.p)?;
    Ok(TraceIdentity {
        p: rep.p,
        holds: trace == expected,
        adjugate_trace,
        det_mb,
        trace,
        expected,
    })
}

/// `A¹² − A⁴ + 2 − A⁻⁴ + A⁻¹²` at a complex `A`.
pub fn trace_polynomial(a: Complex64) -> Complex64 {
    a.powi(12) - a.powi(4) + 2.0 - a.powi(-4) + a.powi(-12)
}

/// Result of searching for a scalar product of the three generator images.
#[derive(Clone, Debug, Serialize)]
pub struct Gamma3Check {
    /// Ordering and signs, e.g. `"ABC"` for `Ma⁻¹·Mb⁻¹·Mc⁻¹`.
    pub ordering: String,
    pub scalar: CyclotomicInteger,
    /// Word in `a, b` representing `γ₃` projectively.
    pub c_word: GroupWord,
    /// Every scalar ordering found, in search order.
    pub all_scalar: Vec<String>,
}

/// Tries all 6 orderings of `{Ma, Mb, Mc}` with all 8 sign patterns and
/// returns the first product that is scalar. The third boundary class is
/// then solved for as a word in `a, b` and checked against `Mc`.
pub fn gamma3_check(rep: &PantsRep) -> Result<Gamma3Check> {
    let mc_inv = rep.mc.unit_inverse()?;
    let mat = |c: char| -> &ExactMatrix {
        match c {
            'a' => &rep.ma,
            'A' => &rep.ma_inv,
            'b' => &rep.mb,
            'B' => &rep.mb_inv,
            'c' => &rep.mc,
            _ => &mc_inv,
        }
    };
    let perms = ["abc", "acb", "bac", "bca", "cab", "cba"];
    let mut found: Vec<(String, CyclotomicInteger)> = Vec::new();
    for perm in perms {
        for signs in 0..8u32 {
            let s: String = perm
                .chars()
                .enumerate()
                .map(|(i, c)| {
                    if signs >> i & 1 == 1 {
                        c.to_ascii_uppercase()
                    } else {
                        c
                    }
                })
                .collect();
            let m = s
                .chars()
                .fold(ExactMatrix::identity_like(rep.ma.entry(0, 0)), |acc, c| {
                    acc.mul(mat(c))
                });
            if m.is_scalar() {
                found.push((s, m.entry(0, 0).clone()));
            }
        }
    }
    let (ordering, scalar) = found.first().cloned().ok_or(Error::ConventionFailure)?;
    // Rotate so the c-letter is last: Y₁Y₂c^ε scalar gives c = (Y₁Y₂)^{-ε}.
    let pos = ordering.find(['c', 'C']).expect("ordering contains c");
    let rotated: String = ordering[pos + 1..]
        .chars()
        .chain(ordering[..pos].chars())
        .collect();
    let prefix = GroupWord::parse(&rotated)?;
    let c_word = if ordering.as_bytes()[pos] == b'c' {
        prefix.inverse()
    } else {
        prefix
    };
    if !proj_equal(&rep.eval_word(&c_word), &rep.mc) {
        return Err(Error::ConventionFailure);
    }
    Ok(Gamma3Check {
        ordering,
        scalar,
        c_word,
        all_scalar: found.into_iter().map(|(s, _)| s).collect(),
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct TorsionEntry {
    pub word: GroupWord,
    pub order: Order,
}

#[derive(Clone, Debug, Serialize)]
pub struct TorsionReport {
    pub p: u32,
    pub entries: Vec<TorsionEntry>,
    pub all_finite: bool,
}

/// Projective orders of the boundary classes `a, b, ab`, their inverses and
/// powers up to `max_power`, and `conjugates` random conjugates
/// `w·s^n·w⁻¹`.
pub fn simple_torsion_suite<R: Rng + ?Sized>(
    rep: &PantsRep,
    max_power: i64,
    conjugates: usize,
    rng: &mut R,
) -> TorsionReport {
    let classes = [
        GroupWord::a(),
        GroupWord::b(),
        GroupWord::parse("ab").expect("literal"),
    ];
    let mut words = Vec::new();
    for s in &classes {
        for n in 1..=max_power {
            words.push(s.pow(n));
            words.push(s.pow(-n));
        }
    }
    for _ in 0..conjugates {
        let s = &classes[rng.gen_range(0..classes.len())];
        let mut n = rng.gen_range(1..=max_power);
        if rng.gen_bool(0.5) {
            n = -n;
        }
        let len = rng.gen_range(1..=6);
        let w = GroupWord::random(rng, len);
        words.push(s.pow(n).conjugate_by(&w));
    }
    let entries: Vec<TorsionEntry> = words
        .into_iter()
        .map(|word| TorsionEntry {
            order: rep.order(&word),
            word,
        })
        .collect();
    TorsionReport {
        p: rep.p,
        all_finite: entries.iter().all(|e| e.order.is_finite()),
        entries,
    }
}

/// Comparison of `λ = ρ(a)ρ(b)⁻¹` with the matrix printed for it.
#[derive(Clone, Debug, Serialize)]
pub struct LambdaCheck {
    pub computed: ExactMatrix,
    pub displayed: ExactMatrix,
    pub projectively_equal: bool,
    /// Row-major positions where the two differ.
    pub differing_entries: Vec<(usize, usize)>,
    pub fixes_infinity: bool,
}

/// The printed `λ`, with `A² = ζ`.
pub fn displayed_lambda(p: u32) -> Result<ExactMatrix> {
    check_prime(p)?;
    let z = |t: &[(i64, i64)]| zeta_sum(p, t);
    Ok(Mat2::new(
        z(&[(1, 12), (-1, 2), (2, 0), (-1, -2), (-1, -4), (1, -6)]),
        z(&[(-1, 7), (1, 3), (-1, 1), (1, -3)]),
        z(&[(-1, -5), (1, -7)]),
        z(&[(1, -4)]),
    ))
}

pub fn lambda_check(rep: &PantsRep) -> Result<LambdaCheck> {
    let computed = rep.eval_word(&GroupWord::parse("aB")?);
    let displayed = displayed_lambda(rep.p)?;
    let differing_entries = (0..2)
        .flat_map(|i| (0..2).map(move |k| (i, k)))
        .filter(|&(i, k)| computed.entry(i, k) != displayed.entry(i, k))
        .collect();
    Ok(LambdaCheck {
        projectively_equal: proj_equal(&computed, &displayed),
        fixes_infinity: computed.entry(1, 0).is_zero(),
        computed,
        displayed,
        differing_entries,
    })
}
