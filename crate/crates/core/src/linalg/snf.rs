use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

use super::IntMatrix;

/// `U · M · V = D` with `U`, `V` unimodular and `D` diagonal,
/// `d_1 | d_2 | … | d_rank`, all positive.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SmithForm {
    pub d: IntMatrix,
    pub u: IntMatrix,
    pub v: IntMatrix,
    pub rank: usize,
}

impl SmithForm {
    /// The nonzero diagonal entries, in divisibility order.
    pub fn invariant_factors(&self) -> Vec<BigInt> {
        (0..self.rank).map(|i| self.d[(i, i)].clone()).collect()
    }
}

struct Reducer {
    a: Vec<Vec<BigInt>>,
    u: Option<Vec<Vec<BigInt>>>,
    // V is kept transposed so column operations become row operations.
    vt: Option<Vec<Vec<BigInt>>>,
    rows: usize,
    cols: usize,
}

fn identity_rows(n: usize) -> Vec<Vec<BigInt>> {
    (0..n)
        .map(|i| {
            let mut r = vec![BigInt::zero(); n];
            r[i] = BigInt::from(1);
            r
        })
        .collect()
}

fn axpy(target: &mut [BigInt], q: &BigInt, source: &[BigInt]) {
    // target -= q * source
    for (t, s) in target.iter_mut().zip(source) {
        if !s.is_zero() {
            *t -= q * s;
        }
    }
}

fn row_pair(m: &mut [Vec<BigInt>], dst: usize, src: usize) -> (&mut Vec<BigInt>, &Vec<BigInt>) {
    assert_ne!(dst, src);
    if dst < src {
        let (lo, hi) = m.split_at_mut(src);
        (&mut lo[dst], &hi[0])
    } else {
        let (lo, hi) = m.split_at_mut(dst);
        (&mut hi[0], &lo[src])
    }
}

impl Reducer {
    fn new(m: &IntMatrix, track: bool) -> Self {
        Reducer {
            a: m.to_rows(),
            u: track.then(|| identity_rows(m.rows())),
            vt: track.then(|| identity_rows(m.cols())),
            rows: m.rows(),
            cols: m.cols(),
        }
    }

    fn swap_rows(&mut self, i: usize, j: usize) {
        if i != j {
            self.a.swap(i, j);
            if let Some(u) = &mut self.u {
                u.swap(i, j);
            }
        }
    }

    fn swap_cols(&mut self, i: usize, j: usize) {
        if i != j {
            for row in &mut self.a {
                row.swap(i, j);
            }
            if let Some(vt) = &mut self.vt {
                vt.swap(i, j);
            }
        }
    }

    /// row[dst] -= q * row[src]
    fn sub_row(&mut self, dst: usize, q: &BigInt, src: usize) {
        let (t, s) = row_pair(&mut self.a, dst, src);
        axpy(t, q, s);
        if let Some(u) = &mut self.u {
            let (t, s) = row_pair(u, dst, src);
            axpy(t, q, s);
        }
    }

    /// col[dst] -= q * col[src]
    fn sub_col(&mut self, dst: usize, q: &BigInt, src: usize) {
        for row in &mut self.a {
            if !row[src].is_zero() {
                let delta = q * &row[src];
                row[dst] -= delta;
            }
        }
        if let Some(vt) = &mut self.vt {
            let (t, s) = row_pair(vt, dst, src);
            axpy(t, q, s);
        }
    }

    fn negate_row(&mut self, i: usize) {
        for x in &mut self.a[i] {
            *x = -std::mem::take(x);
        }
        if let Some(u) = &mut self.u {
            for x in &mut u[i] {
                *x = -std::mem::take(x);
            }
        }
    }

    fn smallest_in_submatrix(&self, t: usize) -> Option<(usize, usize)> {
        let mut best: Option<(usize, usize, BigInt)> = None;
        for i in t..self.rows {
            for j in t..self.cols {
                let v = &self.a[i][j];
                if v.is_zero() {
                    continue;
                }
                let mag = v.abs();
                if best.as_ref().is_none_or(|(_, _, b)| &mag < b) {
                    best = Some((i, j, mag));
                }
            }
        }
        best.map(|(i, j, _)| (i, j))
    }

    /// Clears row and column `t` outside the pivot; returns false if a
    /// remainder survived and the pivot must be re-chosen.
    fn clear_cross(&mut self, t: usize) -> bool {
        let mut clean = true;
        for i in t + 1..self.rows {
            if self.a[i][t].is_zero() {
                continue;
            }
            let q = &self.a[i][t] / &self.a[t][t];
            self.sub_row(i, &q, t);
            clean &= self.a[i][t].is_zero();
        }
        for j in t + 1..self.cols {
            if self.a[t][j].is_zero() {
                continue;
            }
            let q = &self.a[t][j] / &self.a[t][t];
            self.sub_col(j, &q, t);
            clean &= self.a[t][j].is_zero();
        }
        clean
    }

    fn smallest_on_cross(&self, t: usize) -> (usize, usize) {
        let mut best = (t, t);
        let mut mag = self.a[t][t].abs();
        for i in t + 1..self.rows {
            let v = self.a[i][t].abs();
            if !v.is_zero() && v < mag {
                mag = v;
                best = (i, t);
            }
        }
        for j in t + 1..self.cols {
            let v = self.a[t][j].abs();
            if !v.is_zero() && v < mag {
                mag = v;
                best = (t, j);
            }
        }
        best
    }

    fn non_divisible_row(&self, t: usize) -> Option<usize> {
        let p = &self.a[t][t];
        (t + 1..self.rows).find(|&i| (t + 1..self.cols).any(|j| !self.a[i][j].is_multiple_of(p)))
    }

    fn run(&mut self) -> usize {
        let mut t = 0;
        while t < self.rows.min(self.cols) {
            let Some((pi, pj)) = self.smallest_in_submatrix(t) else {
                break;
            };
            self.swap_rows(t, pi);
            self.swap_cols(t, pj);
            loop {
                if !self.clear_cross(t) {
                    let (i, j) = self.smallest_on_cross(t);
                    self.swap_rows(t, i);
                    self.swap_cols(t, j);
                    continue;
                }
                match self.non_divisible_row(t) {
                    Some(i) => {
                        // row t += row i, then the cross is dirty again
                        self.sub_row(t, &BigInt::from(-1), i);
                    }
                    None => break,
                }
            }
            if self.a[t][t].is_negative() {
                self.negate_row(t);
            }
            t += 1;
        }
        t
    }

    fn into_form(self, rank: usize) -> SmithForm {
        let d = rows_to_matrix(self.rows, self.cols, self.a);
        let u = rows_to_matrix(self.rows, self.rows, self.u.expect("tracked"));
        let v = rows_to_matrix(self.cols, self.cols, self.vt.expect("tracked")).transpose();
        SmithForm { d, u, v, rank }
    }
}

fn rows_to_matrix(rows: usize, cols: usize, data: Vec<Vec<BigInt>>) -> IntMatrix {
    IntMatrix::from_entries(rows, cols, data.into_iter().flatten().collect()).expect("row lengths are consistent")
}

/// Smith normal form with unimodular transforms.
///
/// The pivot is always the smallest nonzero magnitude in the remaining
/// submatrix.
pub fn smith_normal_form(m: &IntMatrix) -> SmithForm {
    let mut r = Reducer::new(m, true);
    let rank = r.run();
    r.into_form(rank)
}

/// Invariant factors only; skips the transform bookkeeping.
pub fn invariant_factors(m: &IntMatrix) -> Vec<BigInt> {
    let mut r = Reducer::new(m, false);
    let rank = r.run();
    (0..rank).map(|i| r.a[i][i].clone()).collect()
}
