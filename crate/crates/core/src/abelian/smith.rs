//! Smith normal form with unimodular transforms.
//!
//! Pivoting always picks the entry of least absolute value, which keeps
//! intermediate growth small on boundary matrices (mostly ±1 entries).

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::IntegerMatrix;

/// `U · M · V = D` with `U`, `V` unimodular and `D` diagonal-rectangular,
/// diagonal entries nonnegative with each dividing the next and zeros trailing.
///
/// The inverses of `U` and `V` are recorded as well; they are needed for
/// change of coordinates and cost nothing extra to accumulate.
#[derive(Clone, Debug)]
pub struct SmithDecomposition {
    pub u: IntegerMatrix,
    pub d: IntegerMatrix,
    pub v: IntegerMatrix,
    pub u_inv: IntegerMatrix,
    pub v_inv: IntegerMatrix,
    rank: usize,
}

#[derive(Clone, Copy, Debug)]
pub(crate) struct Track {
    pub left: bool,
    pub right: bool,
}

impl Track {
    pub const ALL: Track = Track {
        left: true,
        right: true,
    };
}

impl SmithDecomposition {
    pub fn rank(&self) -> usize {
        self.rank
    }

    /// Nonzero diagonal entries `d_1 | d_2 | …`.
    pub fn invariant_factors(&self) -> Vec<BigInt> {
        (0..self.rank).map(|i| self.d[(i, i)].clone()).collect()
    }

    /// Finds an integer `x` with `M · x = rhs`, if one exists.
    pub fn solve(&self, rhs: &[BigInt]) -> Option<Vec<BigInt>> {
        let rows = self.d.rows();
        let cols = self.d.cols();
        assert_eq!(rhs.len(), rows, "right-hand side length");
        let w = self.u.apply(rhs);
        let mut y = vec![BigInt::zero(); cols];
        for (i, wi) in w.iter().enumerate() {
            if i < self.rank {
                let (q, r) = wi.div_rem(&self.d[(i, i)]);
                if !r.is_zero() {
                    return None;
                }
                y[i] = q;
            } else if !wi.is_zero() {
                return None;
            }
        }
        Some(self.v.apply(&y))
    }

    /// Columns of `V` spanning the integer kernel of `M`.
    pub fn kernel_basis(&self) -> IntegerMatrix {
        let cols: Vec<usize> = (self.rank..self.d.cols()).collect();
        self.v.select_cols(&cols)
    }
}

/// Computes the Smith normal form `U · M · V = D` of any integer matrix.
pub fn smith_normal_form(m: &IntegerMatrix) -> SmithDecomposition {
    smith_tracked(m, Track::ALL)
}

fn mag_lt(a: &BigInt, b: &BigInt) -> bool {
    a.magnitude() < b.magnitude()
}

fn is_unit(a: &BigInt) -> bool {
    a.magnitude().is_one()
}

struct Work {
    d: IntegerMatrix,
    u: Option<(IntegerMatrix, IntegerMatrix)>,
    v: Option<(IntegerMatrix, IntegerMatrix)>,
}

impl Work {
    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        self.d.swap_rows(a, b);
        if let Some((u, ui)) = &mut self.u {
            u.swap_rows(a, b);
            ui.swap_cols(a, b);
        }
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        self.d.swap_cols(a, b);
        if let Some((v, vi)) = &mut self.v {
            v.swap_cols(a, b);
            vi.swap_rows(a, b);
        }
    }

    /// row[dst] += q * row[src]
    fn add_row(&mut self, dst: usize, src: usize, q: &BigInt) {
        self.d.add_row_multiple(dst, src, q);
        if let Some((u, ui)) = &mut self.u {
            u.add_row_multiple(dst, src, q);
            ui.add_col_multiple(src, dst, &-q);
        }
    }

    /// col[dst] += q * col[src]
    fn add_col(&mut self, dst: usize, src: usize, q: &BigInt) {
        self.d.add_col_multiple(dst, src, q);
        if let Some((v, vi)) = &mut self.v {
            v.add_col_multiple(dst, src, q);
            vi.add_row_multiple(src, dst, &-q);
        }
    }

    fn negate_row(&mut self, i: usize) {
        self.d.negate_row(i);
        if let Some((u, ui)) = &mut self.u {
            u.negate_row(i);
            ui.negate_col(i);
        }
    }
}

pub(crate) fn smith_tracked(m: &IntegerMatrix, track: Track) -> SmithDecomposition {
    let rows = m.rows();
    let cols = m.cols();
    let mut w = Work {
        d: m.clone(),
        u: track
            .left
            .then(|| (IntegerMatrix::identity(rows), IntegerMatrix::identity(rows))),
        v: track
            .right
            .then(|| (IntegerMatrix::identity(cols), IntegerMatrix::identity(cols))),
    };

    let mut t = 0;
    while t < rows.min(cols) {
        // Least-magnitude nonzero entry of the trailing block.
        let mut best: Option<(usize, usize)> = None;
        'search: for i in t..rows {
            for j in t..cols {
                let x = &w.d[(i, j)];
                if x.is_zero() {
                    continue;
                }
                if best.is_none_or(|(bi, bj)| mag_lt(x, &w.d[(bi, bj)])) {
                    best = Some((i, j));
                    if is_unit(x) {
                        break 'search;
                    }
                }
            }
        }
        let Some((pi, pj)) = best else { break };
        w.swap_rows(t, pi);
        w.swap_cols(t, pj);

        loop {
            let mut leftover = false;
            for i in t + 1..rows {
                if w.d[(i, t)].is_zero() {
                    continue;
                }
                let q = &w.d[(i, t)] / &w.d[(t, t)];
                w.add_row(i, t, &-q);
                if !w.d[(i, t)].is_zero() {
                    leftover = true;
                }
            }
            for j in t + 1..cols {
                if w.d[(t, j)].is_zero() {
                    continue;
                }
                let q = &w.d[(t, j)] / &w.d[(t, t)];
                w.add_col(j, t, &-q);
                if !w.d[(t, j)].is_zero() {
                    leftover = true;
                }
            }
            if leftover {
                // A remainder smaller than the pivot survived; promote it.
                let mut best = (t, t);
                for i in t + 1..rows {
                    let x = &w.d[(i, t)];
                    if !x.is_zero() && mag_lt(x, &w.d[best]) {
                        best = (i, t);
                    }
                }
                for j in t + 1..cols {
                    let x = &w.d[(t, j)];
                    if !x.is_zero() && mag_lt(x, &w.d[best]) {
                        best = (t, j);
                    }
                }
                w.swap_rows(t, best.0);
                w.swap_cols(t, best.1);
                continue;
            }
            if is_unit(&w.d[(t, t)]) {
                break;
            }
            // Pivot must divide the whole trailing block.
            let pivot = w.d[(t, t)].clone();
            let offender = (t + 1..rows).find(|&i| {
                (t + 1..cols).any(|j| !w.d[(i, j)].is_multiple_of(&pivot))
            });
            match offender {
                Some(i) => w.add_row(t, i, &BigInt::one()),
                None => break,
            }
        }
        if w.d[(t, t)].is_negative() {
            w.negate_row(t);
        }
        t += 1;
    }

    let rank = (0..rows.min(cols))
        .take_while(|&i| !w.d[(i, i)].is_zero())
        .count();
    let (u, u_inv) = w
        .u
        .unwrap_or_else(|| (IntegerMatrix::zeros(0, 0), IntegerMatrix::zeros(0, 0)));
    let (v, v_inv) = w
        .v
        .unwrap_or_else(|| (IntegerMatrix::zeros(0, 0), IntegerMatrix::zeros(0, 0)));
    SmithDecomposition {
        u,
        d: w.d,
        v,
        u_inv,
        v_inv,
        rank,
    }
}

/// Rank of an integer matrix (over the rationals).
pub fn rank(m: &IntegerMatrix) -> usize {
    smith_tracked(
        m,
        Track {
            left: false,
            right: false,
        },
    )
    .rank()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn check(m: &IntegerMatrix) -> SmithDecomposition {
        let s = smith_normal_form(m);
        assert_eq!(s.u.mul(m).mul(&s.v), s.d, "U M V = D for {m}");
        assert_eq!(s.u.mul(&s.u_inv), IntegerMatrix::identity(m.rows()));
        assert_eq!(s.v.mul(&s.v_inv), IntegerMatrix::identity(m.cols()));
        s
    }

    #[test]
    fn zero_one_by_one_is_fixed() {
        let s = check(&IntegerMatrix::from_rows(1, &[[0]]));
        assert_eq!(s.d, IntegerMatrix::from_rows(1, &[[0]]));
        assert_eq!(s.u, IntegerMatrix::identity(1));
        assert_eq!(s.v, IntegerMatrix::identity(1));
    }

    #[test]
    fn identity_stays_identity() {
        let s = check(&IntegerMatrix::identity(2));
        assert_eq!(s.d, IntegerMatrix::identity(2));
    }

    #[test]
    fn two_four_six_eight() {
        let s = check(&IntegerMatrix::from_rows(2, &[[2, 4], [6, 8]]));
        assert_eq!(s.invariant_factors(), vec![BigInt::from(2), BigInt::from(4)]);
    }

    #[test]
    fn empty_rows_and_cols() {
        let s = check(&IntegerMatrix::zeros(0, 3));
        assert_eq!(s.rank(), 0);
        assert_eq!(s.kernel_basis().cols(), 3);
        let s = check(&IntegerMatrix::zeros(2, 0));
        assert_eq!(s.rank(), 0);
    }

    #[test]
    fn divisibility_fix_up() {
        // diag(2, 3) is not in normal form; expect diag(1, 6).
        let s = check(&IntegerMatrix::from_rows(2, &[[2, 0], [0, 3]]));
        assert_eq!(s.invariant_factors(), vec![BigInt::from(1), BigInt::from(6)]);
    }

    #[test]
    fn solve_finds_integer_solution_or_none() {
        let m = IntegerMatrix::from_rows(2, &[[2, 0], [0, 4]]);
        let s = smith_normal_form(&m);
        let x = s.solve(&[BigInt::from(4), BigInt::from(8)]).unwrap();
        assert_eq!(m.apply(&x), vec![BigInt::from(4), BigInt::from(8)]);
        assert!(s.solve(&[BigInt::from(1), BigInt::from(0)]).is_none());
    }
}
