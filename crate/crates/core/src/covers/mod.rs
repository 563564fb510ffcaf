//! Regular covers `S_k → S` from the finite images `G_k`, their free
//! fundamental groups `R_k`, and simple-loop homology.
//!
//! `R_k` has index `n = |G_k|` in `F<a, b>`, so it is free of rank `n + 1`
//! and `H₁(S_k) = Z^{n+1}` in the Schreier basis. `H₁ˢ` is the span of the
//! lifts `r·s^{o}·r⁻¹` of the three boundary classes `s`, where `o` is the
//! order of `s` in `G_k`.

mod snf;

pub use snf::{determinant, mat_mul, smith_normal_form, IntMatrix, SmithForm};

use std::collections::{BTreeSet, VecDeque};

use num_bigint::BigInt;
use num_traits::{One, ToPrimitive, Zero};
use serde::{Serialize, Serializer};

use crate::hquot::{find_psi_n, image_bfs, reduce_rep, FiniteImage, PsiData};
use crate::pantsrep::{GroupWord, Letter, PantsRep};
use crate::{Error, Result};

/// Right action of `a` and `b` on `{0, …, n−1}`; coset 0 is the subgroup.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CosetTable {
    pub degree: usize,
    /// `perms[0]` for `a`, `perms[1]` for `b`.
    pub perms: [Vec<usize>; 2],
    #[serde(skip)]
    inverse: [Vec<usize>; 2],
}

impl CosetTable {
    /// Validates that both maps are bijections and the action is transitive.
    pub fn new(perms: [Vec<usize>; 2]) -> Result<Self> {
        let degree = perms[0].len();
        let mut inverse = [vec![usize::MAX; degree], vec![usize::MAX; degree]];
        for g in 0..2 {
            if perms[g].len() != degree {
                return Err(Error::InvalidParameter(
                    "permutations differ in length".into(),
                ));
            }
            for (i, &j) in perms[g].iter().enumerate() {
                if j >= degree || inverse[g][j] != usize::MAX {
                    return Err(Error::InvalidParameter(format!(
                        "generator {g} is not a bijection"
                    )));
                }
                inverse[g][j] = i;
            }
        }
        let t = Self {
            degree,
            perms,
            inverse,
        };
        if t.bfs_tree().iter().any(|e| e.is_none()) && degree > 0 {
            return Err(Error::InvalidParameter("action is not transitive".into()));
        }
        Ok(t)
    }

    pub fn step(&self, c: usize, l: Letter) -> usize {
        match l {
            Letter::A => self.perms[0][c],
            Letter::B => self.perms[1][c],
            Letter::AInv => self.inverse[0][c],
            Letter::BInv => self.inverse[1][c],
        }
    }

    pub fn act(&self, c: usize, w: &GroupWord) -> usize {
        w.letters().iter().fold(c, |c, &l| self.step(c, l))
    }

    /// Parent `(coset, letter)` for each coset in the BFS tree from 0; the
    /// root has `Some((0, A))` as a placeholder.
    fn bfs_tree(&self) -> Vec<Option<(usize, Letter)>> {
        let mut parent = vec![None; self.degree];
        if self.degree == 0 {
            return parent;
        }
        parent[0] = Some((0, Letter::A));
        let mut queue = VecDeque::from([0]);
        while let Some(c) = queue.pop_front() {
            for l in Letter::ALL {
                let d = self.step(c, l);
                if parent[d].is_none() {
                    parent[d] = Some((c, l));
                    queue.push_back(d);
                }
            }
        }
        parent
    }

    /// True iff no nontrivial element fixes a point: for a transitive action
    /// this makes the subgroup normal and the cover regular.
    pub fn is_regular(&self, transversal: &[GroupWord]) -> bool {
        transversal
            .iter()
            .enumerate()
            .skip(1)
            .all(|(_, w)| (0..self.degree).all(|c| self.act(c, w) != c))
    }
}

pub fn coset_table(img: &FiniteImage) -> Result<CosetTable> {
    let t = CosetTable::new(img.generator_permutations.clone())?;
    if !t.is_regular(&img.words) {
        return Err(Error::Invariant("image action is not regular".into()));
    }
    Ok(t)
}

/// Schreier transversal and free basis of the subgroup fixing coset 0.
#[derive(Clone, Debug)]
pub struct SchreierData {
    pub table: CosetTable,
    /// `transversal[c]` carries coset 0 to `c`.
    pub transversal: Vec<GroupWord>,
    /// `(coset, generator)` edges outside the tree, one basis element each.
    pub edges: Vec<(usize, usize)>,
    /// `edge_index[g][c]` is the basis index of edge `(c, g)`, if any.
    edge_index: [Vec<Option<usize>>; 2],
}

pub fn schreier_basis(table: &CosetTable) -> SchreierData {
    let n = table.degree;
    let parent = table.bfs_tree();
    let mut transversal = vec![GroupWord::empty(); n];
    let mut order: Vec<usize> = Vec::with_capacity(n);
    // Build words in BFS order so each parent word exists first.
    let mut queue = VecDeque::from([0]);
    let mut seen = vec![false; n];
    seen[0] = true;
    while let Some(c) = queue.pop_front() {
        order.push(c);
        for l in Letter::ALL {
            let d = table.step(c, l);
            if !seen[d] && parent[d] == Some((c, l)) {
                seen[d] = true;
                transversal[d] = transversal[c].mul(&GroupWord::from_letters([l]));
                queue.push_back(d);
            }
        }
    }
    let is_tree = |c: usize, g: usize| {
        let (pos, neg) = if g == 0 {
            (Letter::A, Letter::AInv)
        } else {
            (Letter::B, Letter::BInv)
        };
        let d = table.perms[g][c];
        (d != 0 && parent[d] == Some((c, pos))) || (c != 0 && parent[c] == Some((d, neg)))
    };
    let edges: Vec<(usize, usize)> = (0..n)
        .flat_map(|c| (0..2).map(move |g| (c, g)))
        .filter(|&(c, g)| !is_tree(c, g))
        .collect();
    let mut edge_index = [vec![None; n], vec![None; n]];
    for (i, &(c, g)) in edges.iter().enumerate() {
        edge_index[g][c] = Some(i);
    }
    SchreierData {
        table: table.clone(),
        transversal,
        edges,
        edge_index,
    }
}

impl SchreierData {
    /// Nielsen–Schreier: `n + 1` for a subgroup of index `n` in `F₂`.
    pub fn rank(&self) -> usize {
        self.edges.len()
    }

    /// `t_c · x · t_{cx}⁻¹` for basis element `i`.
    pub fn generator(&self, i: usize) -> GroupWord {
        let (c, g) = self.edges[i];
        let x = if g == 0 {
            GroupWord::a()
        } else {
            GroupWord::b()
        };
        let d = self.table.perms[g][c];
        self.transversal[c]
            .mul(&x)
            .mul(&self.transversal[d].inverse())
    }

    /// `w` as a sequence of `(basis index, ±1)`.
    pub fn rewrite(&self, w: &GroupWord) -> Result<Vec<(usize, i8)>> {
        let mut c = 0;
        let mut out = Vec::new();
        for &l in w.letters() {
            let g = l.generator();
            if l.is_inverse() {
                let d = self.table.step(c, l);
                if let Some(i) = self.edge_index[g][d] {
                    out.push((i, -1));
                }
                c = d;
            } else {
                if let Some(i) = self.edge_index[g][c] {
                    out.push((i, 1));
                }
                c = self.table.step(c, l);
            }
        }
        if c != 0 {
            return Err(Error::NotAMember { coset: c });
        }
        Ok(out)
    }

    /// Product of the rewritten basis elements, which must equal `w`.
    pub fn unrewrite(&self, word: &[(usize, i8)]) -> GroupWord {
        word.iter().fold(GroupWord::empty(), |acc, &(i, s)| {
            acc.mul(&self.generator(i).pow(s as i64))
        })
    }

    pub fn abelianized_vector(&self, w: &GroupWord) -> Result<Vec<i64>> {
        let mut v = vec![0i64; self.rank()];
        for (i, s) in self.rewrite(w)? {
            v[i] += s as i64;
        }
        Ok(v)
    }

    /// Image of a vector under `H₁(S_k) → H₁(S) = Z²`.
    pub fn project(&self, v: &[i64]) -> [i64; 2] {
        let mut out = [0i64; 2];
        for (i, &x) in v.iter().enumerate() {
            let e = self.generator(i).exponent_sums();
            out[0] += x * e[0];
            out[1] += x * e[1];
        }
        out
    }
}

/// Rows `r·s^{o}·r⁻¹` for each boundary class `s` (in the given order) and
/// each transversal word `r`; `orders[i]` is the order of `classes[i]` in
/// `G_k`.
pub fn simple_loop_matrix(
    s: &SchreierData,
    classes: &[GroupWord],
    orders: &[u64],
) -> Result<Vec<Vec<i64>>> {
    let mut rows = Vec::with_capacity(classes.len() * s.transversal.len());
    for (c, &o) in classes.iter().zip(orders) {
        let lift = c.pow(o as i64);
        for r in &s.transversal {
            rows.push(s.abelianized_vector(&lift.conjugate_by(r))?);
        }
    }
    Ok(rows)
}

/// Order of `w` in the image, read off the coset permutation of `w`.
pub fn order_in_table(t: &CosetTable, w: &GroupWord) -> u64 {
    let mut c = t.act(0, w);
    let mut n = 1;
    while c != 0 {
        c = t.act(c, w);
        n += 1;
    }
    n
}

/// Finite index or `Infinite`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Index {
    Finite(BigInt),
    Infinite,
}

fn serialize_bigint<S: Serializer>(x: &BigInt, s: S) -> std::result::Result<S::Ok, S::Error> {
    match x.to_i64() {
        Some(v) => s.serialize_i64(v),
        None => s.collect_str(x),
    }
}

impl Serialize for Index {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            Index::Finite(n) => serialize_bigint(n, s),
            Index::Infinite => s.serialize_str("infinite"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Divisors(pub Vec<BigInt>);

impl Serialize for Divisors {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeSeq;
        let mut seq = s.serialize_seq(Some(self.0.len()))?;
        for d in &self.0 {
            match d.to_i64() {
                Some(v) => seq.serialize_element(&v)?,
                None => seq.serialize_element(&d.to_string())?,
            }
        }
        seq.end()
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct HomologyReport {
    pub p: u32,
    pub k: u32,
    #[serde(rename = "N")]
    pub n: u32,
    pub e: u32,
    pub degree: usize,
    pub rank: usize,
    pub elementary_divisors: Divisors,
    pub proper: bool,
    pub index: Index,
    pub bound: u64,
    pub bound_satisfied: bool,
    /// Present when `ψ ∈ R_k`, i.e. `k <= N`.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub psi_witness_excluded: Option<bool>,
    pub boundary_orders: Vec<u64>,
    /// Distinct simple-loop rows fed to the Smith form.
    pub distinct_rows: usize,
    #[serde(skip)]
    pub simple_rows: Vec<Vec<i64>>,
}

impl HomologyReport {
    pub fn free_rank(&self) -> usize {
        self.elementary_divisors
            .0
            .iter()
            .filter(|d| d.is_zero())
            .count()
    }
}

/// Default largest cover degree [`homology_report`] will build.
pub const DEFAULT_MAX_DEGREE: usize = 400;

/// Homology of the level-`k` cover. `psi` supplies `N` and `e`; the bound
/// `p^e` is only a theorem when `k = N`, but it is reported at every level.
pub fn homology_report(
    rep: &PantsRep,
    k: u32,
    psi: &PsiData,
    max_degree: usize,
) -> Result<HomologyReport> {
    let img = image_bfs(&reduce_rep(rep, k)?, max_degree)?;
    let table = coset_table(&img)?;
    let s = schreier_basis(&table);
    if s.rank() != table.degree + 1 {
        return Err(Error::Invariant(format!(
            "Schreier rank {} for degree {}",
            s.rank(),
            table.degree
        )));
    }
    let classes = &psi.boundary_classes;
    let orders: Vec<u64> = classes.iter().map(|c| order_in_table(&table, c)).collect();
    let rows = simple_loop_matrix(&s, classes, &orders)?;
    let distinct: Vec<Vec<i64>> = rows
        .iter()
        .cloned()
        .collect::<BTreeSet<_>>()
        .into_iter()
        .collect();
    let a: IntMatrix = distinct
        .iter()
        .map(|r| r.iter().map(|&x| BigInt::from(x)).collect())
        .collect();
    let smith = smith_normal_form(&a);
    smith.verify(&a)?;
    let divisors = smith.cokernel_divisors();
    let proper = divisors.iter().any(|d| !d.is_one());
    let index = if divisors.iter().any(|d| d.is_zero()) {
        Index::Infinite
    } else {
        Index::Finite(divisors.iter().product())
    };
    let bound = psi.bound();
    let bound_satisfied = match &index {
        Index::Infinite => true,
        Index::Finite(i) => *i >= BigInt::from(bound),
    };
    let psi_witness_excluded = if k <= psi.n {
        let v: Vec<BigInt> = s
            .abelianized_vector(&psi.psi())?
            .into_iter()
            .map(BigInt::from)
            .collect();
        Some(!smith.row_lattice_contains(&v))
    } else {
        None
    };
    Ok(HomologyReport {
        p: rep.p(),
        k,
        n: psi.n,
        e: psi.e,
        degree: table.degree,
        rank: s.rank(),
        elementary_divisors: Divisors(divisors),
        proper,
        index,
        bound,
        bound_satisfied,
        psi_witness_excluded,
        boundary_orders: orders,
        distinct_rows: distinct.len(),
        simple_rows: rows,
    })
}

/// [`homology_report`] at the level `N` from [`find_psi_n`].
pub fn certified_report(rep: &PantsRep, max_degree: usize) -> Result<HomologyReport> {
    let psi = find_psi_n(rep)?;
    homology_report(rep, psi.n, &psi, max_degree)
}

/// Largest `k <= N` whose cover fits in `max_degree`, with its report.
pub fn largest_feasible_report(
    rep: &PantsRep,
    psi: &PsiData,
    max_degree: usize,
) -> Result<Option<HomologyReport>> {
    let mut best = None;
    for k in 0..=psi.n {
        match homology_report(rep, k, psi, max_degree) {
            Ok(r) => best = Some(r),
            Err(Error::BudgetExceeded { .. }) => break,
            Err(e) => return Err(e),
        }
    }
    Ok(best)
}
