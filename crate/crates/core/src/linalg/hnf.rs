use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

use super::IntMatrix;

/// Column-style Hermite normal form of a column lattice.
///
/// `h` has exactly `rank` columns. Column `j` has its pivot in row
/// `pivot_rows[j]`, which strictly increases with `j`; entries above a pivot
/// are zero, pivots are positive, and every other entry in a pivot row lies
/// in `[0, pivot)`. Two matrices span the same column lattice iff their
/// forms are identical.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct HermiteForm {
    pub h: IntMatrix,
    pub rank: usize,
    pub pivot_rows: Vec<usize>,
}

impl HermiteForm {
    /// Ambient dimension of the lattice.
    pub fn ambient(&self) -> usize {
        self.h.rows()
    }

    /// Index of the lattice in its saturation's ambient, when full rank.
    pub fn full_rank_index(&self) -> Option<BigInt> {
        (self.rank == self.h.rows()).then(|| {
            self.pivot_rows
                .iter()
                .enumerate()
                .map(|(j, &i)| self.h[(i, j)].clone())
                .product()
        })
    }

    /// Membership of `v` in the column lattice, by back-substitution on pivots.
    pub fn contains(&self, v: &[BigInt]) -> bool {
        self.coefficients(v).is_some()
    }

    /// Coefficients `x` with `h · x = v`, if `v` is in the lattice.
    pub fn coefficients(&self, v: &[BigInt]) -> Option<Vec<BigInt>> {
        assert_eq!(v.len(), self.h.rows(), "vector length mismatch");
        let mut residual = v.to_vec();
        let mut x = Vec::with_capacity(self.rank);
        for (j, &p) in self.pivot_rows.iter().enumerate() {
            let (q, r) = residual[p].div_rem(&self.h[(p, j)]);
            if !r.is_zero() {
                return None;
            }
            if !q.is_zero() {
                for (i, r) in residual.iter_mut().enumerate().skip(p) {
                    let c = &self.h[(i, j)];
                    if !c.is_zero() {
                        *r -= &q * c;
                    }
                }
            }
            x.push(q);
        }
        residual.iter().all(Zero::is_zero).then_some(x)
    }
}

fn sub_scaled(cols: &mut [Vec<BigInt>], dst: usize, q: &BigInt, src: usize, from_row: usize) {
    if q.is_zero() {
        return;
    }
    let (d, s) = if dst < src {
        let (lo, hi) = cols.split_at_mut(src);
        (&mut lo[dst], &hi[0])
    } else {
        let (lo, hi) = cols.split_at_mut(dst);
        (&mut hi[0], &lo[src])
    };
    for i in from_row..d.len() {
        if !s[i].is_zero() {
            d[i] -= q * &s[i];
        }
    }
}

pub fn hermite_normal_form(m: &IntMatrix) -> HermiteForm {
    let rows = m.rows();
    let mut cols = m.columns();
    let mut pivot_rows = Vec::new();
    let mut c = 0;
    for i in 0..rows {
        if c == cols.len() {
            break;
        }
        // Euclid across the row: leave a single nonzero in column c.
        loop {
            let mut best: Option<(usize, BigInt)> = None;
            for (j, col) in cols.iter().enumerate().skip(c) {
                if col[i].is_zero() {
                    continue;
                }
                let mag = col[i].abs();
                if best.as_ref().is_none_or(|(_, b)| &mag < b) {
                    best = Some((j, mag));
                }
            }
            let Some((j, _)) = best else { break };
            cols.swap(c, j);
            let mut done = true;
            for j in c + 1..cols.len() {
                if cols[j][i].is_zero() {
                    continue;
                }
                let q = &cols[j][i] / &cols[c][i];
                sub_scaled(&mut cols, j, &q, c, i);
                done &= cols[j][i].is_zero();
            }
            if done {
                break;
            }
        }
        if cols[c][i].is_zero() {
            continue;
        }
        if cols[c][i].is_negative() {
            for x in cols[c][i..].iter_mut() {
                *x = -std::mem::take(x);
            }
        }
        for j in 0..c {
            let q = cols[j][i].div_floor(&cols[c][i]);
            sub_scaled(&mut cols, j, &q, c, i);
        }
        pivot_rows.push(i);
        c += 1;
    }
    cols.truncate(c);
    HermiteForm {
        h: IntMatrix::from_columns(rows, &cols),
        rank: c,
        pivot_rows,
    }
}
