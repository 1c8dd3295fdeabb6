//! Kernels, lattice comparison and membership, cokernels.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::Zero;

use super::{hermite_normal_form, smith_normal_form, AbelianGroupStructure, IntMatrix};
use crate::{Error, Result};

/// Basis of `{x : M x = 0}` as the columns of the returned matrix, in Hermite form.
///
/// Taken from the columns of `V` past the rank in `U M V = D`; since `V` is
/// unimodular the result is the full kernel lattice, never a finite-index
/// sublattice of it.
pub fn kernel_basis(m: &IntMatrix) -> IntMatrix {
    let s = smith_normal_form(m);
    let tail: Vec<usize> = (s.rank..m.cols()).collect();
    hermite_normal_form(&s.v.select_cols(&tail)).h
}

fn same_rows(a: &IntMatrix, b: &IntMatrix) -> Result<()> {
    if a.rows() != b.rows() {
        return Err(Error::Shape(format!(
            "lattices live in Z^{} and Z^{}",
            a.rows(),
            b.rows()
        )));
    }
    Ok(())
}

/// Whether the column lattices of `a` and `b` coincide.
pub fn lattice_equal(a: &IntMatrix, b: &IntMatrix) -> Result<bool> {
    same_rows(a, b)?;
    Ok(hermite_normal_form(a).h == hermite_normal_form(b).h)
}

/// Whether every column of `b` lies in the column lattice of `a`.
pub fn lattice_contains(a: &IntMatrix, b: &IntMatrix) -> Result<bool> {
    same_rows(a, b)?;
    let f = hermite_normal_form(a);
    Ok(b.columns().iter().all(|c| f.contains(c)))
}

/// An integer `x` with `M x = b`, or `None` when `b` is outside the column lattice.
pub fn solve_in_lattice(m: &IntMatrix, b: &[BigInt]) -> Result<Option<Vec<BigInt>>> {
    if b.len() != m.rows() {
        return Err(Error::Shape(format!(
            "right-hand side has length {}, matrix has {} rows",
            b.len(),
            m.rows()
        )));
    }
    let s = smith_normal_form(m);
    let ub = s.u.mul_vec(b)?;
    let mut y = vec![BigInt::zero(); m.cols()];
    for (i, c) in ub.iter().enumerate() {
        if i < s.rank {
            let (q, r) = c.div_rem(&s.d[(i, i)]);
            if !r.is_zero() {
                return Ok(None);
            }
            y[i] = q;
        } else if !c.is_zero() {
            return Ok(None);
        }
    }
    Ok(Some(s.v.mul_vec(&y)?))
}

/// Isomorphism type of `Z^rows / (column lattice of M)`.
pub fn cokernel_structure(m: &IntMatrix) -> AbelianGroupStructure {
    let factors = super::invariant_factors(m);
    AbelianGroupStructure::from_smith(m.rows() - factors.len(), &factors)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cyclo::root_power;

    fn ints(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn kernel_of_all_ones_row() {
        let m = IntMatrix::from_rows(&[vec![1, 1, 1]]);
        let k = kernel_basis(&m);
        assert_eq!(k.cols(), 2);
        assert!(m.mul(&k).unwrap().is_zero());
        let expected = IntMatrix::from_columns(3, &[ints(&[1, -1, 0]), ints(&[0, 1, -1])]);
        assert!(lattice_equal(&k, &expected).unwrap());
    }

    #[test]
    fn kernel_of_invertible_is_empty() {
        let m = IntMatrix::from_rows(&[vec![2, 1], vec![1, 1]]);
        assert_eq!(kernel_basis(&m).cols(), 0);
    }

    #[test]
    fn kernel_of_sixth_root_evaluation() {
        let cols: Vec<Vec<BigInt>> = (0..6).map(|l| root_power(6, l).coords().to_vec()).collect();
        let m = IntMatrix::from_columns(2, &cols);
        let k = kernel_basis(&m);
        assert_eq!(k.cols(), 4);
        assert!(m.mul(&k).unwrap().is_zero());
        assert_eq!(m.rank() + k.cols(), 6);
    }

    #[test]
    fn kernel_is_saturated() {
        // 2x + 4y = 0 has kernel generated by (2, -1), not (4, -2)
        let m = IntMatrix::from_rows(&[vec![2, 4]]);
        let k = kernel_basis(&m);
        assert!(lattice_equal(&k, &IntMatrix::from_columns(2, &[ints(&[2, -1])])).unwrap());
    }

    #[test]
    fn equality_examples() {
        let m = IntMatrix::from_rows(&[vec![1, 2], vec![3, 4]]);
        let v = IntMatrix::from_rows(&[vec![1, 5], vec![0, 1]]);
        assert!(lattice_equal(&m, &m.mul(&v).unwrap()).unwrap());
        assert!(!lattice_equal(&IntMatrix::identity(2), &IntMatrix::diagonal(&[1, 2])).unwrap());
        let a = IntMatrix::from_columns(2, &[ints(&[2, 0]), ints(&[1, 1])]);
        let b = IntMatrix::from_columns(2, &[ints(&[2, 0]), ints(&[0, 2]), ints(&[1, 1])]);
        assert!(lattice_equal(&a, &b).unwrap());
        assert!(lattice_contains(&IntMatrix::identity(2), &IntMatrix::diagonal(&[1, 2])).unwrap());
        assert!(!lattice_contains(&IntMatrix::diagonal(&[1, 2]), &IntMatrix::identity(2)).unwrap());
        assert!(lattice_equal(&IntMatrix::identity(2), &IntMatrix::identity(3)).is_err());
    }

    #[test]
    fn solve_examples() {
        let b = ints(&[3, -7, 2]);
        assert_eq!(solve_in_lattice(&IntMatrix::identity(3), &b).unwrap(), Some(b));
        assert_eq!(solve_in_lattice(&IntMatrix::diagonal(&[2]), &ints(&[3])).unwrap(), None);
        let m = IntMatrix::from_columns(2, &[ints(&[1, 1]), ints(&[1, -1])]);
        assert_eq!(solve_in_lattice(&m, &ints(&[2, 0])).unwrap(), Some(ints(&[1, 1])));
        assert_eq!(solve_in_lattice(&m, &ints(&[1, 0])).unwrap(), None);
        assert!(solve_in_lattice(&m, &ints(&[1])).is_err());
    }

    #[test]
    fn cokernel_examples() {
        let c = cokernel_structure(&IntMatrix::diagonal(&[5]));
        assert_eq!((c.free_rank, c.torsion.clone()), (0, ints(&[5])));
        let c = cokernel_structure(&IntMatrix::zeros(3, 0));
        assert_eq!(c, AbelianGroupStructure::free(3));
        let c = cokernel_structure(&IntMatrix::from_columns(3, &[ints(&[1, -1, 1])]));
        assert_eq!(c, AbelianGroupStructure::free(2));
    }
}
