//! Ping-pong certificate for a free subgroup of the image.
//!
//! For a Möbius map `g = [[α, β], [γ, δ]]` with `det g = 1` and `γ ≠ 0`,
//! the isometric circle `|γz + δ| = 1` (centre `−δ/γ`, radius `1/|γ|`) is
//! carried by `g` onto the isometric circle of `g⁻¹` (centre `α/γ`), and its
//! exterior into the interior of the target. Four pairwise disjoint closed
//! disks of this kind for `g₁^{±1}` and `g₂^{±1}` make `⟨g₁, g₂⟩` a Schottky
//! group, hence free of rank two.

use num_complex::Complex64;
use serde::Serialize;

use super::{GroupWord, PantsRep};
use crate::projmat::ExactMatrix;
use crate::{Error, Result};

type C = Complex64;

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct Disk {
    pub center: [f64; 2],
    pub radius: f64,
}

impl Disk {
    fn new(c: C, radius: f64) -> Self {
        Self {
            center: [c.re, c.im],
            radius,
        }
    }

    fn c(&self) -> C {
        C::new(self.center[0], self.center[1])
    }

    fn gap(&self, o: &Disk) -> f64 {
        (self.c() - o.c()).norm() - self.radius - o.radius
    }

    fn boundary(&self, samples: usize) -> impl Iterator<Item = C> + '_ {
        (0..samples).map(move |i| {
            let t = std::f64::consts::TAU * i as f64 / samples as f64;
            self.c() + C::from_polar(self.radius, t)
        })
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct SchottkyCertificate {
    pub p: u32,
    pub j: u32,
    pub w1: GroupWord,
    pub w2: GroupWord,
    pub n1: u32,
    pub n2: u32,
    /// Conjugating power `t` with `w2 = a^t·w1·a^{-t}`.
    pub t: u32,
    /// `[D₁⁻, D₁⁺, D₂⁻, D₂⁺]`: `g_i` maps the outside of `D_i⁻` into `D_i⁺`.
    pub disks: [Disk; 4],
    /// Smallest distance between two of the disks.
    pub min_gap: f64,
    pub samples_per_check: usize,
    /// Finite fixed point of `ρ(a)` (the other is `∞`).
    pub z0: [f64; 2],
    /// The same point from `(A⁻² − A⁻¹⁰)/(1 − A⁻¹²)`.
    pub z0_formula: [f64; 2],
    pub lambda_fixed_points: [[f64; 2]; 2],
    pub lambda_fixes_infinity: bool,
}

#[derive(Clone, Copy)]
struct Mobius([[C; 2]; 2]);

impl Mobius {
    fn normalized(m: [[C; 2]; 2]) -> Self {
        let s = (m[0][0] * m[1][1] - m[0][1] * m[1][0]).sqrt();
        Self([[m[0][0] / s, m[0][1] / s], [m[1][0] / s, m[1][1] / s]])
    }

    fn apply(&self, z: C) -> C {
        let m = &self.0;
        (m[0][0] * z + m[0][1]) / (m[1][0] * z + m[1][1])
    }

    fn inverse(&self) -> Self {
        let m = &self.0;
        Self([[m[1][1], -m[0][1]], [-m[1][0], m[0][0]]])
    }

    /// Source and target isometric disks, if `γ ≠ 0`.
    fn isometric(&self) -> Option<(Disk, Disk)> {
        let [[a, _], [c, d]] = self.0;
        if c.norm() < 1e-12 {
            return None;
        }
        let r = 1.0 / c.norm();
        Some((Disk::new(-d / c, r), Disk::new(a / c, r)))
    }

    fn fixed_points(&self) -> [C; 2] {
        let [[a, b], [c, d]] = self.0;
        let disc = ((a - d) * (a - d) + 4.0 * b * c).sqrt();
        [(a - d + disc) / (2.0 * c), (a - d - disc) / (2.0 * c)]
    }
}

fn pair(z: C) -> [f64; 2] {
    [z.re, z.im]
}

/// Checks the ping-pong mapping conditions at sample points: each boundary
/// of a source disk lands on the target boundary, and the boundaries of the
/// other three disks land strictly inside the target.
fn verify(maps: &[(Mobius, usize, usize)], disks: &[Disk; 4], samples: usize) -> bool {
    maps.iter().all(|(g, src, dst)| {
        let target = &disks[*dst];
        let on_circle = disks[*src].boundary(samples).all(|z| {
            ((g.apply(z) - target.c()).norm() - target.radius).abs() <= 1e-7 * target.radius
        });
        let inside = (0..4).filter(|i| i != src).all(|i| {
            disks[i]
                .boundary(samples)
                .all(|z| (g.apply(z) - target.c()).norm() < target.radius)
        });
        on_circle && inside
    })
}

fn embed(m: &ExactMatrix, j: u32) -> Result<Mobius> {
    Ok(Mobius::normalized(m.embed(j)?))
}

/// Searches `λ = ρ(ab⁻¹)`, `μ = ρ(a)^t·λ·ρ(a)^{-t}` for `1 <= t <= max_t`
/// and common powers `1 <= n <= max_power`, returning the first pair with
/// disjoint isometric disks that passes the sampled mapping checks.
pub fn schottky_certificate(
    rep: &PantsRep,
    max_t: u32,
    max_power: u32,
    samples: usize,
) -> Result<SchottkyCertificate> {
    let j = rep.j();
    let w1 = GroupWord::parse("aB")?;
    let lambda = rep.eval_word(&w1);
    let lam = embed(&lambda, j)?;
    let ma = embed(rep.ma(), j)?;
    let z0 = {
        let m = &ma.0;
        m[0][1] / (m[1][1] - m[0][0])
    };
    let z0_formula = {
        let a = C::from_polar(1.0, std::f64::consts::PI * j as f64 / rep.p() as f64);
        (a.powi(-2) - a.powi(-10)) / (1.0 - a.powi(-12))
    };
    let lambda_fixed = lam.fixed_points();
    for n in 1..=max_power {
        let g1 = embed(&lambda.pow(n as u64), j)?;
        let Some((d1m, d1p)) = g1.isometric() else {
            continue;
        };
        for t in 1..=max_t {
            let conj = GroupWord::a().pow(t as i64);
            let g2m = rep
                .eval_word(&conj)
                .mul(&lambda.pow(n as u64))
                .mul(&rep.eval_word(&conj.inverse()));
            let g2 = embed(&g2m, j)?;
            let Some((d2m, d2p)) = g2.isometric() else {
                continue;
            };
            let disks = [d1m, d1p, d2m, d2p];
            let min_gap = (0..4)
                .flat_map(|i| (i + 1..4).map(move |k| (i, k)))
                .map(|(i, k)| disks[i].gap(&disks[k]))
                .fold(f64::INFINITY, f64::min);
            if min_gap <= 0.0 {
                continue;
            }
            let maps = [
                (g1.inverse(), 1, 0),
                (g2.inverse(), 3, 2),
                (g1, 0, 1),
                (g2, 2, 3),
            ];
            if !verify(&maps, &disks, samples) {
                continue;
            }
            return Ok(SchottkyCertificate {
                p: rep.p(),
                j,
                w2: w1.conjugate_by(&conj),
                w1,
                n1: n,
                n2: n,
                t,
                disks,
                min_gap,
                samples_per_check: samples,
                z0: pair(z0),
                z0_formula: pair(z0_formula),
                lambda_fixed_points: [pair(lambda_fixed[0]), pair(lambda_fixed[1])],
                lambda_fixes_infinity: lambda.entry(1, 0).is_zero(),
            });
        }
    }
    Err(Error::NoCertificate(format!(
        "no disjoint isometric disks for t <= {max_t}, n <= {max_power}"
    )))
}
