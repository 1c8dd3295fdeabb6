//! Oracles shared by the integration targets.

use balacyc::linalg::AbelianGroupStructure;
use num_bigint::BigInt;
use num_integer::Integer;

/// Φ_n by repeated exact division of z^n - 1 by Φ_d, d | n, d < n, in i64.
pub fn phi_coeffs(n: u64) -> Vec<i64> {
    let mut p = vec![0i64; n as usize + 1];
    p[0] = -1;
    p[n as usize] = 1;
    for d in 1..n {
        if !n.is_multiple_of(d) {
            continue;
        }
        let q = phi_coeffs(d);
        let dq = q.len() - 1;
        let mut out = vec![0i64; p.len() - dq];
        for top in (dq..p.len()).rev() {
            let c = p[top];
            out[top - dq] = c;
            for (i, &qi) in q.iter().enumerate() {
                p[top - dq + i] -= c * qi;
            }
        }
        assert!(p.iter().all(|&r| r == 0));
        p = out;
    }
    p
}

pub fn gcd_of(values: &[i64]) -> u64 {
    values.iter().fold(0i64, |g, &v| g.gcd(&v)) as u64
}

/// Rows of the table: `(homology, cohomology)` in dimensions `0..=k`.
pub fn table(primes: &[u64], a: &[u64]) -> (Vec<AbelianGroupStructure>, Vec<AbelianGroupStructure>) {
    let n: u64 = primes.iter().product();
    let c = phi_coeffs(n);
    let ca: Vec<i64> = a.iter().map(|&j| c[j as usize]).collect();
    let d = gcd_of(&ca);
    let k = primes.len() - 1;
    let zero = AbelianGroupStructure::trivial;
    let mut h = vec![zero(); k + 1];
    let mut co = vec![zero(); k + 1];
    let size = a.len();
    if d == 0 {
        h[k - 1] = AbelianGroupStructure::free(1);
        h[k] = AbelianGroupStructure::free(size);
        co[k - 1] = AbelianGroupStructure::free(1);
        co[k] = AbelianGroupStructure::free(size);
    } else {
        h[k - 1] = AbelianGroupStructure::from_cyclic_orders(0, &[BigInt::from(d)]);
        h[k] = AbelianGroupStructure::free(size - 1);
        co[k] = AbelianGroupStructure::from_cyclic_orders(size - 1, &[BigInt::from(d)]);
    }
    (h, co)
}
