//! Smith normal form over `Z` with arbitrary-precision entries.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::{Error, Result};

pub type IntMatrix = Vec<Vec<BigInt>>;

/// `U·A·V = D` with `U`, `V` unimodular and `d₁ | d₂ | …` on the diagonal.
#[derive(Clone, Debug)]
pub struct SmithForm {
    pub rows: usize,
    pub cols: usize,
    /// Nonzero diagonal entries, positive, each dividing the next.
    pub divisors: Vec<BigInt>,
    pub u: IntMatrix,
    pub v: IntMatrix,
}

fn identity(n: usize) -> IntMatrix {
    (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    if i == j {
                        BigInt::one()
                    } else {
                        BigInt::zero()
                    }
                })
                .collect()
        })
        .collect()
}

/// `row_dst -= q·row_src`.
fn row_axpy(m: &mut IntMatrix, dst: usize, src: usize, q: &BigInt) {
    if q.is_zero() {
        return;
    }
    let (a, b) = if dst < src {
        let (lo, hi) = m.split_at_mut(src);
        (&mut lo[dst], &hi[0])
    } else {
        let (lo, hi) = m.split_at_mut(dst);
        (&mut hi[0], &lo[src])
    };
    for (x, y) in a.iter_mut().zip(b.iter()) {
        if !y.is_zero() {
            *x -= q * y;
        }
    }
}

/// `col_dst -= q·col_src`.
fn col_axpy(m: &mut IntMatrix, dst: usize, src: usize, q: &BigInt) {
    if q.is_zero() {
        return;
    }
    for row in m.iter_mut() {
        if !row[src].is_zero() {
            let t = q * &row[src];
            row[dst] -= t;
        }
    }
}

fn swap_cols(m: &mut IntMatrix, i: usize, j: usize) {
    for row in m.iter_mut() {
        row.swap(i, j);
    }
}

/// Smallest nonzero `|a[i][j]|` with `i, j >= t`.
fn min_entry(a: &IntMatrix, t: usize) -> Option<(usize, usize)> {
    let mut best: Option<(usize, usize)> = None;
    for (i, row) in a.iter().enumerate().skip(t) {
        for (j, x) in row.iter().enumerate().skip(t) {
            if x.is_zero() {
                continue;
            }
            if best.is_none_or(|(bi, bj)| x.abs() < a[bi][bj].abs()) {
                best = Some((i, j));
                if x.abs().is_one() {
                    return best;
                }
            }
        }
    }
    best
}

/// Pivots on the smallest remaining entry, clears its row and column, and
/// enforces divisibility of the rest by folding an offending row in.
pub fn smith_normal_form(a: &IntMatrix) -> SmithForm {
    let rows = a.len();
    let cols = a.first().map_or(0, Vec::len);
    let mut a = a.clone();
    let mut u = identity(rows);
    let mut v = identity(cols);
    let mut divisors = Vec::new();
    let mut t = 0;
    while t < rows.min(cols) {
        let Some((pi, pj)) = min_entry(&a, t) else {
            break;
        };
        a.swap(t, pi);
        u.swap(t, pi);
        swap_cols(&mut a, t, pj);
        swap_cols(&mut v, t, pj);
        loop {
            let mut clean = true;
            for i in t + 1..rows {
                if a[i][t].is_zero() {
                    continue;
                }
                let q = &a[i][t] / &a[t][t];
                row_axpy(&mut a, i, t, &q);
                row_axpy(&mut u, i, t, &q);
                clean &= a[i][t].is_zero();
            }
            for j in t + 1..cols {
                if a[t][j].is_zero() {
                    continue;
                }
                let q = &a[t][j] / &a[t][t];
                col_axpy(&mut a, j, t, &q);
                col_axpy(&mut v, j, t, &q);
                clean &= a[t][j].is_zero();
            }
            if !clean {
                // A smaller remainder exists in row or column t: move it to
                // the pivot and repeat.
                let col_best = (t + 1..rows)
                    .filter(|&i| !a[i][t].is_zero())
                    .min_by_key(|&i| a[i][t].abs());
                let row_best = (t + 1..cols)
                    .filter(|&j| !a[t][j].is_zero())
                    .min_by_key(|&j| a[t][j].abs());
                match (col_best, row_best) {
                    (Some(i), Some(j)) if a[t][j].abs() < a[i][t].abs() => {
                        swap_cols(&mut a, t, j);
                        swap_cols(&mut v, t, j);
                    }
                    (Some(i), _) => {
                        a.swap(t, i);
                        u.swap(t, i);
                    }
                    (None, Some(j)) => {
                        swap_cols(&mut a, t, j);
                        swap_cols(&mut v, t, j);
                    }
                    (None, None) => unreachable!("unclean row or column has a nonzero entry"),
                }
                continue;
            }
            let offender = (t + 1..rows).find(|&i| {
                (t + 1..cols).any(|j| !a[i][j].is_zero() && !a[i][j].is_multiple_of(&a[t][t]))
            });
            match offender {
                Some(i) => {
                    let minus_one = -BigInt::one();
                    row_axpy(&mut a, t, i, &minus_one);
                    row_axpy(&mut u, t, i, &minus_one);
                }
                None => break,
            }
        }
        if a[t][t].is_negative() {
            for x in a[t].iter_mut() {
                *x = -&*x;
            }
            for x in u[t].iter_mut() {
                *x = -&*x;
            }
        }
        divisors.push(a[t][t].clone());
        t += 1;
    }
    SmithForm {
        rows,
        cols,
        divisors,
        u,
        v,
    }
}

pub fn mat_mul(a: &IntMatrix, b: &IntMatrix) -> IntMatrix {
    let inner = b.len();
    let cols = b.first().map_or(0, Vec::len);
    a.iter()
        .map(|row| {
            let mut out = vec![BigInt::zero(); cols];
            for (k, x) in row.iter().enumerate().take(inner) {
                if x.is_zero() {
                    continue;
                }
                for (o, y) in out.iter_mut().zip(&b[k]) {
                    if !y.is_zero() {
                        *o += x * y;
                    }
                }
            }
            out
        })
        .collect()
}

/// Exact determinant by Bareiss fraction-free elimination.
pub fn determinant(m: &IntMatrix) -> BigInt {
    let n = m.len();
    if n == 0 {
        return BigInt::one();
    }
    let mut a = m.clone();
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n {
        if a[k][k].is_zero() {
            let Some(i) = (k + 1..n).find(|&i| !a[i][k].is_zero()) else {
                return BigInt::zero();
            };
            a.swap(k, i);
            sign = -sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let t = &a[i][j] * &a[k][k] - &a[i][k] * &a[k][j];
                a[i][j] = t / &prev;
            }
            a[i][k] = BigInt::zero();
        }
        prev = a[k][k].clone();
    }
    sign * &a[n - 1][n - 1]
}

impl SmithForm {
    pub fn rank(&self) -> usize {
        self.divisors.len()
    }

    /// The diagonal matrix `D`.
    pub fn diagonal_matrix(&self) -> IntMatrix {
        let mut d = vec![vec![BigInt::zero(); self.cols]; self.rows];
        for (i, x) in self.divisors.iter().enumerate() {
            d[i][i] = x.clone();
        }
        d
    }

    /// Elementary divisors of `Z^cols / rowspan(A)`: the nonzero diagonal
    /// followed by one zero per free summand.
    pub fn cokernel_divisors(&self) -> Vec<BigInt> {
        let mut out = self.divisors.clone();
        out.resize(self.cols, BigInt::zero());
        out
    }

    /// Re-checks `U·A·V = D`, `|det U| = |det V| = 1` and the divisibility
    /// chain.
    pub fn verify(&self, a: &IntMatrix) -> Result<()> {
        if mat_mul(&mat_mul(&self.u, a), &self.v) != self.diagonal_matrix() {
            return Err(Error::Verification("U·A·V differs from D".into()));
        }
        for (name, m) in [("U", &self.u), ("V", &self.v)] {
            if !determinant(m).abs().is_one() {
                return Err(Error::Verification(format!("{name} is not unimodular")));
            }
        }
        let chain = self.divisors.windows(2).all(|w| w[1].is_multiple_of(&w[0]));
        if !chain || self.divisors.iter().any(|d| !d.is_positive()) {
            return Err(Error::Verification(
                "diagonal is not a divisibility chain".into(),
            ));
        }
        Ok(())
    }

    /// Whether `x` lies in the row lattice of `A`: `rowspan(A) = rowspan(D)·V⁻¹`,
    /// so test `x·V` against the diagonal.
    pub fn row_lattice_contains(&self, x: &[BigInt]) -> bool {
        let y = mat_mul(&vec![x.to_vec()], &self.v).remove(0);
        y.iter()
            .enumerate()
            .all(|(i, yi)| match self.divisors.get(i) {
                Some(d) => yi.is_multiple_of(d),
                None => yi.is_zero(),
            })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn m(rows: &[&[i64]]) -> IntMatrix {
        rows.iter()
            .map(|r| r.iter().map(|&x| BigInt::from(x)).collect())
            .collect()
    }

    fn divisors(a: &IntMatrix) -> Vec<i64> {
        let s = smith_normal_form(a);
        s.verify(a).unwrap();
        s.divisors.iter().map(|d| d.try_into().unwrap()).collect()
    }

    /// Oracle: `d₁⋯d_i` is the gcd of the `i×i` minors.
    fn minor_gcds(a: &IntMatrix) -> Vec<BigInt> {
        let rows = a.len();
        let cols = a[0].len();
        let subsets = |n: usize, k: usize| -> Vec<Vec<usize>> {
            (0u32..1 << n)
                .filter(|s| s.count_ones() as usize == k)
                .map(|s| (0..n).filter(|i| s >> i & 1 == 1).collect())
                .collect()
        };
        let mut out = Vec::new();
        for k in 1..=rows.min(cols) {
            let mut g = BigInt::zero();
            for r in subsets(rows, k) {
                for c in subsets(cols, k) {
                    let sub: IntMatrix = r
                        .iter()
                        .map(|&i| c.iter().map(|&j| a[i][j].clone()).collect())
                        .collect();
                    g = g.gcd(&determinant(&sub));
                }
            }
            out.push(g);
        }
        out
    }

    #[test]
    fn small_cases() {
        assert_eq!(divisors(&m(&[&[2, 0], &[0, 3]])), vec![1, 6]);
        assert_eq!(divisors(&m(&[&[0, 0], &[0, 0]])), Vec::<i64>::new());
        assert_eq!(divisors(&m(&[&[1, 0], &[0, 1]])), vec![1, 1]);
        assert_eq!(
            divisors(&m(&[&[2, 4, 4], &[-6, 6, 12], &[10, -4, -16]])),
            vec![2, 6, 12]
        );
        let s = smith_normal_form(&m(&[&[1, 1], &[-1, -1]]));
        assert_eq!(s.cokernel_divisors(), vec![BigInt::one(), BigInt::zero()]);
    }

    #[test]
    fn lattice_membership() {
        let a = m(&[&[2, 0], &[0, 3]]);
        let s = smith_normal_form(&a);
        assert!(s.row_lattice_contains(&[BigInt::from(4), BigInt::from(-3)]));
        assert!(!s.row_lattice_contains(&[BigInt::from(1), BigInt::from(0)]));
        for row in &a {
            assert!(s.row_lattice_contains(row));
        }
    }

    #[test]
    fn bareiss_determinant() {
        assert_eq!(determinant(&m(&[&[2, 1], &[7, 4]])), BigInt::from(1));
        assert_eq!(determinant(&m(&[&[0, 1], &[1, 0]])), BigInt::from(-1));
        assert_eq!(
            determinant(&m(&[&[1, 2, 3], &[4, 5, 6], &[7, 8, 10]])),
            BigInt::from(-3)
        );
    }

    proptest! {
        #[test]
        fn matches_minor_gcds(v in prop::collection::vec(-6i64..=6, 12), rows in 1usize..=4) {
            let cols = 12 / rows.max(1);
            let cols = cols.min(4);
            let a: IntMatrix = (0..rows)
                .map(|i| (0..cols).map(|j| BigInt::from(v[i * cols + j])).collect())
                .collect();
            let s = smith_normal_form(&a);
            prop_assert!(s.verify(&a).is_ok());
            let gcds = minor_gcds(&a);
            let mut prod = BigInt::one();
            for (k, g) in gcds.iter().enumerate() {
                match s.divisors.get(k) {
                    Some(d) => { prod *= d; prop_assert_eq!(&prod, g); }
                    None => prop_assert!(g.is_zero()),
                }
            }
            for row in &a {
                prop_assert!(s.row_lattice_contains(row));
            }
        }
    }
}
