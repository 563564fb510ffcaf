//! Finite images `G_k = π₁/R_k` of `ρ_p` modulo `h^{k+1}`.
//!
//! `R_k` is the set of words whose image is a scalar class modulo
//! `h^{k+1}`, equivalently `depth(ρ(w)) >= k + 1`. Membership is decided by
//! exact depth; the breadth-first closure is only needed when the whole
//! coset structure is (covers, element permutations).

use std::collections::HashMap;
use std::sync::Arc;

use rand::Rng;
use serde::Serialize;

use crate::cyclotomic::{QuotientRing, Valuation};
use crate::pantsrep::{gamma3_check, GroupWord, Letter, PantsRep};
use crate::projmat::{Order, QuotMatrix};
use crate::{Error, Result};

/// Default element budget for [`image_bfs`].
pub const DEFAULT_BFS_CAP: usize = 1_000_000;

/// Generator images reduced modulo `h^{k+1}`.
#[derive(Clone, Debug)]
pub struct ReducedRep {
    p: u32,
    k: u32,
    ring: Arc<QuotientRing>,
    /// Images of `a, A, b, B`.
    gens: [QuotMatrix; 4],
}

fn slot(l: Letter) -> usize {
    match l {
        Letter::A => 0,
        Letter::AInv => 1,
        Letter::B => 2,
        Letter::BInv => 3,
    }
}

pub fn reduce_rep(rep: &PantsRep, k: u32) -> Result<ReducedRep> {
    reduce_rep_at_level(rep, k + 1).map(|mut r| {
        r.k = k;
        r
    })
}

/// Reduction modulo `h^level` for arbitrary `level >= 1`.
pub fn reduce_rep_at_level(rep: &PantsRep, level: u32) -> Result<ReducedRep> {
    let ring = QuotientRing::new(rep.p(), level)?;
    let g = |l: Letter| -> Result<QuotMatrix> { rep.letter(l).reduce(&ring)?.proj_canonical() };
    Ok(ReducedRep {
        p: rep.p(),
        k: level - 1,
        gens: [
            g(Letter::A)?,
            g(Letter::AInv)?,
            g(Letter::B)?,
            g(Letter::BInv)?,
        ],
        ring,
    })
}

impl ReducedRep {
    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn k(&self) -> u32 {
        self.k
    }

    pub fn ring(&self) -> &Arc<QuotientRing> {
        &self.ring
    }

    pub fn generator(&self, l: Letter) -> &QuotMatrix {
        &self.gens[slot(l)]
    }

    pub fn identity(&self) -> QuotMatrix {
        QuotMatrix::identity_like(&self.ring.one())
    }

    /// Canonical projective form of `ρ(w)` modulo `h^{k+1}`.
    pub fn eval_word(&self, w: &GroupWord) -> QuotMatrix {
        let m = w
            .letters()
            .iter()
            .fold(self.identity(), |acc, &l| acc.mul(self.generator(l)));
        m.proj_canonical()
            .expect("product of unit-determinant matrices")
    }
}

/// Inverse of a unit-determinant matrix over a quotient ring.
pub fn quot_inverse(m: &QuotMatrix) -> Result<QuotMatrix> {
    let d = m.det().inverse()?;
    Ok(m.adj_inverse()?.scale(&d))
}

/// Order of `m` in `PGL₂` of the quotient ring, up to `cap`.
pub fn quot_proj_order(m: &QuotMatrix, cap: u64) -> Result<u64> {
    let mut acc = m.clone();
    for n in 1..=cap {
        if acc.is_scalar() {
            return Ok(n);
        }
        acc = acc.mul(m);
    }
    Err(Error::BudgetExceeded {
        count: cap as usize,
        cap: cap as usize,
    })
}

/// The finite group `G_k`, with the right regular action of `a` and `b`.
#[derive(Clone, Debug, Serialize)]
pub struct FiniteImage {
    pub p: u32,
    pub k: u32,
    /// `k + 1`.
    pub level: u32,
    pub order: usize,
    /// `generator_permutations[g][i]` is the index of `elements[i]·g` for
    /// `g = a, b`.
    pub generator_permutations: [Vec<usize>; 2],
    #[serde(skip)]
    pub elements: Vec<QuotMatrix>,
    /// One word per element, from the breadth-first search tree.
    #[serde(skip)]
    pub words: Vec<GroupWord>,
    #[serde(skip)]
    index: HashMap<Vec<i64>, usize>,
}

impl FiniteImage {
    pub fn identity_index(&self) -> usize {
        0
    }

    pub fn index_of(&self, m: &QuotMatrix) -> Option<usize> {
        let c = m.proj_canonical().ok()?;
        self.index.get(&c.key()).copied()
    }

    /// Index reached from the identity by right multiplication along `w`.
    pub fn act(&self, start: usize, w: &GroupWord) -> usize {
        let inv = self.inverse_permutations();
        w.letters().iter().fold(start, |i, &l| match l {
            Letter::A => self.generator_permutations[0][i],
            Letter::B => self.generator_permutations[1][i],
            Letter::AInv => inv[0][i],
            Letter::BInv => inv[1][i],
        })
    }

    pub fn inverse_permutations(&self) -> [Vec<usize>; 2] {
        let inv = |perm: &Vec<usize>| {
            let mut out = vec![0; perm.len()];
            for (i, &j) in perm.iter().enumerate() {
                out[j] = i;
            }
            out
        };
        [
            inv(&self.generator_permutations[0]),
            inv(&self.generator_permutations[1]),
        ]
    }

    /// Order of the element at `i`.
    pub fn element_order(&self, i: usize) -> u64 {
        let m = &self.elements[i];
        quot_proj_order(m, self.order as u64).expect("order divides the group order")
    }
}

/// Breadth-first closure of `⟨a, b⟩` under right multiplication, deduplicated
/// by canonical projective form. Elements are ordered by BFS layer and then
/// by insertion (`a` before `b`), so the numbering is reproducible.
pub fn image_bfs(red: &ReducedRep, cap: usize) -> Result<FiniteImage> {
    let id = red.identity();
    let mut elements = vec![id.clone()];
    let mut words = vec![GroupWord::empty()];
    let mut index: HashMap<Vec<i64>, usize> = HashMap::new();
    index.insert(id.key(), 0);
    let gens = [red.generator(Letter::A), red.generator(Letter::B)];
    let letters = [GroupWord::a(), GroupWord::b()];
    let mut perms: [Vec<usize>; 2] = [Vec::new(), Vec::new()];
    let mut head = 0;
    while head < elements.len() {
        for g in 0..2 {
            let prod = elements[head].mul(gens[g]).proj_canonical()?;
            let key = prod.key();
            let target = match index.get(&key) {
                Some(&t) => t,
                None => {
                    if elements.len() >= cap {
                        return Err(Error::BudgetExceeded {
                            count: elements.len(),
                            cap,
                        });
                    }
                    let t = elements.len();
                    index.insert(key, t);
                    words.push(words[head].mul(&letters[g]));
                    elements.push(prod);
                    t
                }
            };
            perms[g].push(target);
        }
        head += 1;
    }
    log::debug!("image at level {} has order {}", red.k + 1, elements.len());
    Ok(FiniteImage {
        p: red.p,
        k: red.k,
        level: red.k + 1,
        order: elements.len(),
        generator_permutations: perms,
        elements,
        words,
        index,
    })
}

/// `n(w, k)`: the least `n >= 1` with `depth(ρ(w)^n) >= k + 1`.
pub fn element_order_mod(rep: &PantsRep, w: &GroupWord, k: u32) -> Result<u64> {
    let red = reduce_rep(rep, k)?;
    quot_proj_order(&red.eval_word(w), 1 << 32)
}

/// `φ = ab⁻¹`, `ψ = φ^{m₀}` and the level `N` with `ψ ∈ R_N ∖ R_{N+1}`.
#[derive(Clone, Debug, Serialize)]
pub struct PsiData {
    pub p: u32,
    pub phi: GroupWord,
    pub n0: u32,
    pub m0: u64,
    /// `ψ` as the pair `(φ, m₀)`.
    pub psi_exponent: u64,
    pub n: u32,
    /// `⌊N/(p−1)⌋ + 1`.
    pub e: u32,
    /// The three boundary classes used for the `N₀` policy.
    pub boundary_classes: [GroupWord; 3],
}

impl PsiData {
    pub fn psi(&self) -> GroupWord {
        self.phi.pow(self.psi_exponent as i64)
    }

    /// `p^e`.
    pub fn bound(&self) -> u64 {
        (self.p as u64).pow(self.e)
    }
}

/// `a`, `b` and the third boundary class from [`gamma3_check`].
pub fn boundary_classes(rep: &PantsRep) -> Result<[GroupWord; 3]> {
    Ok([GroupWord::a(), GroupWord::b(), gamma3_check(rep)?.c_word])
}

/// `N₀` is the least `k` at which every boundary class has its full
/// projective order in `G_k`; then `m₀ = n(φ, N₀)`, `ψ = φ^{m₀}` and
/// `N = depth(ρ(ψ)) − 1`.
pub fn find_psi_n(rep: &PantsRep) -> Result<PsiData> {
    let p = rep.p();
    let phi = GroupWord::parse("aB")?;
    if rep.order(&phi).is_finite() {
        return Err(Error::Precondition(format!(
            "ρ(ab⁻¹) has finite order at p = {p}"
        )));
    }
    let classes = boundary_classes(rep)?;
    let orders: Vec<u64> = classes
        .iter()
        .map(|c| match rep.order(c) {
            Order::Finite(n) => Ok(n),
            Order::Infinite => Err(Error::Invariant(format!(
                "boundary class {c} has infinite order"
            ))),
        })
        .collect::<Result<_>>()?;
    let max_k = 4 * (p - 1);
    let n0 = (0..=max_k)
        .find(|&k| {
            classes
                .iter()
                .zip(&orders)
                .all(|(c, &o)| element_order_mod(rep, c, k).ok() == Some(o))
        })
        .ok_or_else(|| {
            Error::Invariant(format!("boundary orders do not stabilise by k = {max_k}"))
        })?;
    let m0 = element_order_mod(rep, &phi, n0)?;
    let depth = rep.eval_word(&phi).pow(m0).h_depth();
    let n = match depth {
        Valuation::Finite(d) if d >= 1 => d - 1,
        _ => return Err(Error::Invariant(format!("ψ has depth {depth}"))),
    };
    Ok(PsiData {
        p,
        phi,
        n0,
        m0,
        psi_exponent: m0,
        n,
        e: n / (p - 1) + 1,
        boundary_classes: classes,
    })
}

pub(crate) fn v_p(mut k: u64, p: u64) -> u32 {
    let mut v = 0;
    while k.is_multiple_of(p) {
        k /= p;
        v += 1;
    }
    v
}

#[derive(Clone, Debug, Serialize)]
pub struct DepthLawReport {
    pub n: u32,
    pub e: u32,
    pub checked: u64,
    /// First `(k, observed, expected)` that failed, if any.
    pub violation: Option<(u64, Valuation, u32)>,
    pub max_depth: u32,
    pub holds: bool,
}

/// Checks `depth(ψ^k) = N + 1 + (p−1)·v_p(k)` for `1 <= k <= min(p^e − 1,
/// cap)`, working modulo `h^{2N+3}` so every expected depth is visible.
pub fn psi_power_depth_law(rep: &PantsRep, psi: &PsiData, cap: u64) -> Result<DepthLawReport> {
    let p = rep.p() as u64;
    let level = 2 * psi.n + 3;
    let red = reduce_rep_at_level(rep, level)?;
    let base = red.eval_word(&psi.phi);
    let psi_m = base.pow(psi.psi_exponent);
    let upper = (psi.bound() - 1).min(cap);
    let mut acc = psi_m.clone();
    let mut violation = None;
    let mut max_depth = 0;
    for k in 1..=upper {
        let expected = psi.n + 1 + (p as u32 - 1) * v_p(k, p);
        let d = acc.h_depth();
        if let Valuation::Finite(x) = d {
            max_depth = max_depth.max(x);
        }
        if d != Valuation::Finite(expected) || expected >= 2 * psi.n + 2 {
            violation = Some((k, d, expected));
            break;
        }
        acc = acc.mul(&psi_m);
    }
    Ok(DepthLawReport {
        n: psi.n,
        e: psi.e,
        checked: upper,
        holds: violation.is_none(),
        violation,
        max_depth,
    })
}

/// Random element of `R_k`: a random conjugate of `u^{n(u,k)}` for a random
/// word `u`, evaluated modulo `h^level`.
pub fn random_kernel_element<R: Rng + ?Sized>(
    red_k: &ReducedRep,
    red_level: &ReducedRep,
    rng: &mut R,
) -> Result<QuotMatrix> {
    let len = rng.gen_range(1..=6);
    let u = GroupWord::random(rng, len);
    let n = quot_proj_order(&red_k.eval_word(&u), 1 << 32)?;
    let clen = rng.gen_range(0..=6);
    let r = GroupWord::random(rng, clen);
    let m = red_level
        .eval_word(&r)
        .mul(&red_level.eval_word(&u).pow(n))
        .mul(&red_level.eval_word(&r.inverse()));
    m.proj_canonical()
}

/// `x·y·x⁻¹·y⁻¹` over a quotient ring.
pub fn quot_commutator(x: &QuotMatrix, y: &QuotMatrix) -> Result<QuotMatrix> {
    Ok(x.mul(y).mul(&quot_inverse(x)?).mul(&quot_inverse(y)?))
}

#[derive(Clone, Debug, Serialize)]
pub struct CommutatorReport {
    pub n: u32,
    pub samples: usize,
    pub min_depth: Valuation,
    pub holds: bool,
}

/// Depth of `[u, v]` for `samples` random pairs `u, v ∈ R_N`; the claim is
/// `depth >= 2N + 2`. Computed modulo `h^{2N+2}` where that means scalar.
pub fn commutator_containment<R: Rng + ?Sized>(
    rep: &PantsRep,
    n: u32,
    samples: usize,
    rng: &mut R,
) -> Result<CommutatorReport> {
    let red_n = reduce_rep(rep, n)?;
    let red_hi = reduce_rep_at_level(rep, 2 * n + 3)?;
    let mut min_depth = Valuation::Infinite;
    for _ in 0..samples {
        let u = random_kernel_element(&red_n, &red_hi, rng)?;
        let v = random_kernel_element(&red_n, &red_hi, rng)?;
        debug_assert!(u.h_depth().at_least(n + 1));
        min_depth = min_depth.min(quot_commutator(&u, &v)?.h_depth());
    }
    Ok(CommutatorReport {
        n,
        samples,
        holds: min_depth.at_least(2 * n + 2),
        min_depth,
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct ExponentSample {
    pub j: u32,
    pub depth: u32,
    pub depth_of_pth_power: Valuation,
}

/// For random `w ∈ R_j ∖ R_{j+1}` with `j` in `levels`, records
/// `depth(w^p)`; the expectation is `depth(w) + p − 1`.
pub fn filtration_exponent_samples<R: Rng + ?Sized>(
    rep: &PantsRep,
    levels: std::ops::RangeInclusive<u32>,
    per_level: usize,
    rng: &mut R,
) -> Result<Vec<ExponentSample>> {
    let p = rep.p();
    let top = *levels.end() + p + 2;
    let red_hi = reduce_rep_at_level(rep, top)?;
    let mut out = Vec::new();
    for j in levels {
        let red_j = reduce_rep(rep, j)?;
        let mut found = 0;
        let mut tries = 0;
        while found < per_level {
            tries += 1;
            if tries > 1000 * per_level {
                return Err(Error::Invariant(format!(
                    "no samples of exact depth {}",
                    j + 1
                )));
            }
            let w = depth_candidate(&red_j, &red_hi, rng)?;
            if w.h_depth() != Valuation::Finite(j + 1) {
                continue;
            }
            found += 1;
            out.push(ExponentSample {
                j,
                depth: j + 1,
                depth_of_pth_power: w.pow(p as u64).h_depth(),
            });
        }
    }
    Ok(out)
}

/// Random words, commutators, iterated commutators and kernel elements, so
/// that every small depth is hit with reasonable frequency.
fn depth_candidate<R: Rng + ?Sized>(
    red_j: &ReducedRep,
    red_hi: &ReducedRep,
    rng: &mut R,
) -> Result<QuotMatrix> {
    let word = |rng: &mut R| {
        let len = rng.gen_range(1..=6);
        GroupWord::random(rng, len)
    };
    Ok(match rng.gen_range(0..4) {
        0 => red_hi.eval_word(&word(rng)),
        1 => red_hi.eval_word(&GroupWord::commutator(&word(rng), &word(rng))),
        2 => {
            let inner = GroupWord::commutator(&word(rng), &word(rng));
            red_hi.eval_word(&GroupWord::commutator(&word(rng), &inner))
        }
        _ => random_kernel_element(red_j, red_hi, rng)?,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pantsrep::pants_rep;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn rep7() -> PantsRep {
        pants_rep(7, 1).unwrap()
    }

    fn w(s: &str) -> GroupWord {
        GroupWord::parse(s).unwrap()
    }

    #[test]
    fn level_zero_image_is_trivial() {
        let red = reduce_rep(&rep7(), 0).unwrap();
        assert!(red.generator(Letter::A).is_scalar());
        assert!(red.generator(Letter::B).is_scalar());
        let img = image_bfs(&red, 10).unwrap();
        assert_eq!(img.order, 1);
        assert_eq!(element_order_mod(&rep7(), &w("aB"), 0).unwrap(), 1);
        assert_eq!(
            element_order_mod(&rep7(), &GroupWord::empty(), 3).unwrap(),
            1
        );
    }

    #[test]
    fn level_one_image() {
        let rep = rep7();
        let img = image_bfs(&reduce_rep(&rep, 1).unwrap(), 1000).unwrap();
        let mut n = img.order;
        while n.is_multiple_of(7) {
            n /= 7;
        }
        assert_eq!(n, 1);
        assert!(img.order <= 343);
        assert_eq!(element_order_mod(&rep, &w("a"), 1).unwrap(), 7);
        // Each element's depth-based order equals its permutation order.
        for (i, word) in img.words.iter().enumerate() {
            let by_depth = element_order_mod(&rep, word, 1).unwrap();
            let mut j = i;
            let mut perm_order = 0;
            loop {
                j = img.act(j, word);
                perm_order += 1;
                if j == i {
                    break;
                }
            }
            assert_eq!(by_depth, perm_order, "{word}");
            assert_eq!(img.element_order(i), by_depth);
        }
    }

    #[test]
    fn budget_is_enforced() {
        let red = reduce_rep(&rep7(), 2).unwrap();
        assert!(matches!(
            image_bfs(&red, 5),
            Err(Error::BudgetExceeded { count: 5, cap: 5 })
        ));
    }

    #[test]
    fn order_oracle_by_exact_powering() {
        let rep = rep7();
        for (s, k) in [("a", 1), ("aB", 1), ("aB", 3), ("ab", 2), ("abAB", 2)] {
            let m = rep.eval_word(&w(s));
            let oracle = (1..).find(|&n| m.pow(n).h_depth().at_least(k + 1)).unwrap();
            assert_eq!(
                element_order_mod(&rep, &w(s), k).unwrap(),
                oracle,
                "{s} at {k}"
            );
        }
    }

    #[test]
    fn psi_and_level() {
        let rep = rep7();
        let psi = find_psi_n(&rep).unwrap();
        assert_eq!(psi.n0, 1);
        assert_eq!(psi.m0, 7);
        let exact = rep.eval_word(&psi.psi());
        assert_eq!(exact.h_depth(), Valuation::Finite(psi.n + 1));
        assert!(psi.n >= 1);
        assert_eq!(rep.order(&psi.psi()), Order::Infinite);
        assert_eq!(psi.e, psi.n / 6 + 1);
    }

    #[test]
    fn depth_law_for_seven() {
        let rep = rep7();
        let psi = find_psi_n(&rep).unwrap();
        let r = psi_power_depth_law(&rep, &psi, 10_000).unwrap();
        assert!(r.holds, "{:?}", r.violation);
        assert_eq!(r.checked, psi.bound() - 1);
    }

    #[test]
    fn nesting_and_separation() {
        let rep = rep7();
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..30 {
            let u = GroupWord::random(&mut rng, 5);
            let m = rep.eval_word(&u);
            let d = m.h_depth();
            for k in 0..6 {
                if d.at_least(k + 2) {
                    assert!(d.at_least(k + 1));
                }
            }
            if !m.is_scalar() {
                assert!((0..=24).any(|k| !d.at_least(k + 1)));
            }
        }
    }

    #[test]
    fn commutators_of_level_one_kernel() {
        let rep = rep7();
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let r = commutator_containment(&rep, 1, 20, &mut rng).unwrap();
        assert!(r.holds, "{:?}", r.min_depth);
    }

    #[test]
    fn pth_powers_gain_p_minus_one() {
        let rep = rep7();
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        let samples = filtration_exponent_samples(&rep, 1..=3, 5, &mut rng).unwrap();
        for s in samples {
            assert_eq!(
                s.depth_of_pth_power,
                Valuation::Finite(s.depth + 6),
                "{s:?}"
            );
        }
        // At depth one the binomial cross term h^p interferes: ρ(a)^7 is scalar.
        assert!(rep.eval_word(&w("a")).pow(7).is_scalar());
    }
}
