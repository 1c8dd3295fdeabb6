//! Cyclotomic polynomials and the rings of cyclotomic integers `Z[ζ_N]`.
//!
//! Elements of `Z[ζ_N]` are stored in the power basis `1, ζ, …, ζ^{φ(N)-1}`
//! after reduction modulo the monic polynomial `Φ_N`, so equality and
//! zero-testing are plain coordinate comparisons.

use std::collections::HashMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::{Arc, Mutex, OnceLock};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::{Error, Result};

/// Integer polynomial, coefficient `i` multiplies `z^i`. Trailing zeros are trimmed.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct CycloPoly {
    coeffs: Vec<BigInt>,
}

impl CycloPoly {
    pub fn new(mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        CycloPoly { coeffs }
    }

    pub fn from_i64s(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    /// `z^n - 1`
    pub fn x_pow_minus_one(n: usize) -> Self {
        let mut coeffs = vec![BigInt::zero(); n + 1];
        coeffs[0] = BigInt::from(-1);
        coeffs[n] += BigInt::one();
        Self::new(coeffs)
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    /// Coefficient of `z^i`, zero past the degree.
    pub fn coeff(&self, i: usize) -> BigInt {
        self.coeffs.get(i).cloned().unwrap_or_default()
    }

    /// Degree; the zero polynomial reports 0.
    pub fn degree(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_monic(&self) -> bool {
        self.coeffs.last().is_some_and(|c| c.is_one())
    }

    pub fn mul(&self, other: &CycloPoly) -> CycloPoly {
        if self.is_zero() || other.is_zero() {
            return CycloPoly::default();
        }
        let mut out = vec![BigInt::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        CycloPoly::new(out)
    }

    /// Quotient and remainder of division by a monic polynomial.
    pub fn div_rem_monic(&self, divisor: &CycloPoly) -> (CycloPoly, CycloPoly) {
        assert!(divisor.is_monic(), "divisor must be monic");
        let d = divisor.degree();
        if self.coeffs.len() <= d {
            return (CycloPoly::default(), self.clone());
        }
        let mut rem = self.coeffs.clone();
        let mut quot = vec![BigInt::zero(); rem.len() - d];
        for top in (d..rem.len()).rev() {
            let c = std::mem::take(&mut rem[top]);
            if c.is_zero() {
                continue;
            }
            for (i, dc) in divisor.coeffs[..d].iter().enumerate() {
                rem[top - d + i] -= &c * dc;
            }
            quot[top - d] = c;
        }
        rem.truncate(d);
        (CycloPoly::new(quot), CycloPoly::new(rem))
    }
}

impl fmt::Display for CycloPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.coeffs.iter().map(|c| c.to_string()).collect();
        write!(f, "{}", parts.join(" "))
    }
}

impl Serialize for CycloPoly {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_seq(self.coeffs.iter().map(|c| c.to_string()))
    }
}

impl<'de> Deserialize<'de> for CycloPoly {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let raw = Vec::<String>::deserialize(d)?;
        let coeffs = raw
            .iter()
            .map(|s| s.parse::<BigInt>().map_err(D::Error::custom))
            .collect::<std::result::Result<Vec<_>, _>>()?;
        Ok(CycloPoly::new(coeffs))
    }
}

fn factorize(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut p = 2;
    while p * p <= n {
        if n.is_multiple_of(p) {
            let mut e = 0;
            while n.is_multiple_of(p) {
                n /= p;
                e += 1;
            }
            out.push((p, e));
        }
        p += 1;
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

fn phi_cache() -> &'static Mutex<HashMap<u64, u64>> {
    static CACHE: OnceLock<Mutex<HashMap<u64, u64>>> = OnceLock::new();
    CACHE.get_or_init(Default::default)
}

/// Euler's totient by trial division; `euler_phi(1) == 1`.
pub fn euler_phi(n: u64) -> u64 {
    assert!(n > 0, "euler_phi(0) is undefined");
    if let Some(&v) = phi_cache().lock().unwrap().get(&n) {
        return v;
    }
    let v = factorize(n).into_iter().fold(n, |acc, (p, _)| acc / p * (p - 1));
    phi_cache().lock().unwrap().insert(n, v);
    v
}

/// Positive divisors of `n` in increasing order.
pub fn divisors(n: u64) -> Vec<u64> {
    assert!(n > 0);
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut d = 1;
    while d * d <= n {
        if n.is_multiple_of(d) {
            small.push(d);
            if d * d != n {
                large.push(n / d);
            }
        }
        d += 1;
    }
    small.extend(large.into_iter().rev());
    small
}

pub fn is_prime(n: u64) -> bool {
    n >= 2 && factorize(n) == [(n, 1)]
}

/// gcd of a collection of integers, nonnegative; the empty gcd is 0.
pub fn gcd_all<'a>(values: impl IntoIterator<Item = &'a BigInt>) -> BigInt {
    values.into_iter().fold(BigInt::zero(), |acc, v| acc.gcd(v))
}

fn poly_cache() -> &'static Mutex<HashMap<u64, Arc<CycloPoly>>> {
    static CACHE: OnceLock<Mutex<HashMap<u64, Arc<CycloPoly>>>> = OnceLock::new();
    CACHE.get_or_init(Default::default)
}

fn cyclotomic_shared(n: u64) -> Arc<CycloPoly> {
    if let Some(p) = poly_cache().lock().unwrap().get(&n) {
        return Arc::clone(p);
    }
    // z^n - 1 = prod_{d | n} Φ_d; divide out the proper divisors.
    let mut poly = CycloPoly::x_pow_minus_one(n as usize);
    for d in divisors(n) {
        if d == n {
            continue;
        }
        let (q, r) = poly.div_rem_monic(&cyclotomic_shared(d));
        debug_assert!(r.is_zero(), "Φ_{d} does not divide z^{n}-1 residue");
        poly = q;
    }
    let poly = Arc::new(poly);
    poly_cache()
        .lock()
        .unwrap()
        .entry(n)
        .or_insert_with(|| Arc::clone(&poly));
    poly
}

/// The `n`-th cyclotomic polynomial `Φ_n`, monic of degree `φ(n)`.
pub fn cyclotomic_poly(n: u64) -> Result<CycloPoly> {
    if n == 0 {
        return Err(Error::ZeroIndex);
    }
    Ok((*cyclotomic_shared(n)).clone())
}

/// Element of `Z[ζ_N]` in the power basis modulo `Φ_N`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CycInt {
    conductor: u64,
    coords: Vec<BigInt>,
}

impl CycInt {
    pub fn zero(conductor: u64) -> Self {
        assert!(conductor > 0, "conductor must be positive");
        CycInt {
            conductor,
            coords: vec![BigInt::zero(); euler_phi(conductor) as usize],
        }
    }

    pub fn one(conductor: u64) -> Self {
        Self::from_int(conductor, BigInt::one())
    }

    pub fn from_int(conductor: u64, value: BigInt) -> Self {
        let mut out = Self::zero(conductor);
        out.coords[0] = value;
        out
    }

    /// Builds an element from power-basis coordinates; `coords.len()` must be `φ(N)`.
    pub fn from_coords(conductor: u64, coords: Vec<BigInt>) -> Result<Self> {
        let phi = euler_phi(conductor) as usize;
        if coords.len() != phi {
            return Err(Error::Shape(format!(
                "Z[ζ_{conductor}] has rank {phi}, got {} coordinates",
                coords.len()
            )));
        }
        Ok(CycInt { conductor, coords })
    }

    /// `Σ_e weights[e] ζ_N^e`, exponents taken modulo `N`.
    pub fn from_exponent_weights(conductor: u64, weights: &[BigInt]) -> Self {
        assert!(conductor > 0, "conductor must be positive");
        let n = conductor as usize;
        let mut folded = vec![BigInt::zero(); n];
        for (e, w) in weights.iter().enumerate() {
            if !w.is_zero() {
                folded[e % n] += w;
            }
        }
        Self::reduce(conductor, folded)
    }

    fn reduce(conductor: u64, mut buf: Vec<BigInt>) -> Self {
        let modulus = cyclotomic_shared(conductor);
        let phi = modulus.degree();
        let m = modulus.coeffs();
        for top in (phi..buf.len()).rev() {
            let c = std::mem::take(&mut buf[top]);
            if c.is_zero() {
                continue;
            }
            for (i, mc) in m[..phi].iter().enumerate() {
                if !mc.is_zero() {
                    buf[top - phi + i] -= &c * mc;
                }
            }
        }
        buf.resize(phi, BigInt::zero());
        CycInt { conductor, coords: buf }
    }

    pub fn conductor(&self) -> u64 {
        self.conductor
    }

    pub fn coords(&self) -> &[BigInt] {
        &self.coords
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(Zero::is_zero)
    }

    pub fn is_one(&self) -> bool {
        self.coords[0].is_one() && self.coords[1..].iter().all(Zero::is_zero)
    }

    fn check_conductor(&self, other: &CycInt) {
        assert_eq!(self.conductor, other.conductor, "cyclotomic conductor mismatch");
    }

    pub fn try_add(&self, other: &CycInt) -> Result<CycInt> {
        if self.conductor != other.conductor {
            return Err(Error::Shape(format!(
                "conductor mismatch: {} vs {}",
                self.conductor, other.conductor
            )));
        }
        Ok(self + other)
    }

    pub fn try_mul(&self, other: &CycInt) -> Result<CycInt> {
        if self.conductor != other.conductor {
            return Err(Error::Shape(format!(
                "conductor mismatch: {} vs {}",
                self.conductor, other.conductor
            )));
        }
        Ok(self * other)
    }

    pub fn scale(&self, m: &BigInt) -> CycInt {
        CycInt {
            conductor: self.conductor,
            coords: self.coords.iter().map(|c| c * m).collect(),
        }
    }

    /// Multiplies by `ζ_N^e` without a full product.
    pub fn mul_root_power(&self, e: i64) -> CycInt {
        let n = self.conductor as usize;
        let shift = e.rem_euclid(n as i64) as usize;
        let mut buf = vec![BigInt::zero(); n];
        for (i, c) in self.coords.iter().enumerate() {
            buf[(i + shift) % n] += c;
        }
        Self::reduce(self.conductor, buf)
    }

    /// Numerical value under `ζ_N ↦ exp(2πi/N)`, as `(re, im)`.
    pub fn to_complex(&self) -> (f64, f64) {
        let step = 2.0 * std::f64::consts::PI / self.conductor as f64;
        self.coords.iter().enumerate().fold((0.0, 0.0), |(re, im), (i, c)| {
            let c = c.to_f64().unwrap_or(f64::NAN);
            let angle = step * i as f64;
            (re + c * angle.cos(), im + c * angle.sin())
        })
    }
}

impl fmt::Display for CycInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut terms = Vec::new();
        for (i, c) in self.coords.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let sign = if c.is_negative() { "-" } else { "+" };
            let mag = c.abs();
            let body = match (i, mag.is_one()) {
                (0, _) => mag.to_string(),
                (1, true) => "ζ".to_string(),
                (_, true) => format!("ζ^{i}"),
                (1, false) => format!("{mag}ζ"),
                _ => format!("{mag}ζ^{i}"),
            };
            terms.push((sign, body));
        }
        if terms.is_empty() {
            return write!(f, "0");
        }
        for (k, (sign, body)) in terms.iter().enumerate() {
            match (k, *sign) {
                (0, "-") => write!(f, "-{body}")?,
                (0, _) => write!(f, "{body}")?,
                _ => write!(f, " {sign} {body}")?,
            }
        }
        Ok(())
    }
}

impl Add for &CycInt {
    type Output = CycInt;
    fn add(self, rhs: &CycInt) -> CycInt {
        self.check_conductor(rhs);
        CycInt {
            conductor: self.conductor,
            coords: self.coords.iter().zip(&rhs.coords).map(|(a, b)| a + b).collect(),
        }
    }
}

impl Sub for &CycInt {
    type Output = CycInt;
    fn sub(self, rhs: &CycInt) -> CycInt {
        self.check_conductor(rhs);
        CycInt {
            conductor: self.conductor,
            coords: self.coords.iter().zip(&rhs.coords).map(|(a, b)| a - b).collect(),
        }
    }
}

impl Neg for &CycInt {
    type Output = CycInt;
    fn neg(self) -> CycInt {
        CycInt {
            conductor: self.conductor,
            coords: self.coords.iter().map(|c| -c).collect(),
        }
    }
}

impl Mul for &CycInt {
    type Output = CycInt;
    fn mul(self, rhs: &CycInt) -> CycInt {
        self.check_conductor(rhs);
        let phi = self.coords.len();
        let mut buf = vec![BigInt::zero(); 2 * phi - 1];
        for (i, a) in self.coords.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coords.iter().enumerate() {
                if !b.is_zero() {
                    buf[i + j] += a * b;
                }
            }
        }
        CycInt::reduce(self.conductor, buf)
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for CycInt {
            type Output = CycInt;
            fn $m(self, rhs: CycInt) -> CycInt {
                (&self).$m(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

/// `ζ_N^e` in the power basis.
pub fn root_power(conductor: u64, e: i64) -> CycInt {
    assert!(conductor > 0, "conductor must be positive");
    let n = conductor as i64;
    let mut weights = vec![BigInt::zero(); conductor as usize];
    weights[e.rem_euclid(n) as usize] = BigInt::one();
    CycInt::from_exponent_weights(conductor, &weights)
}

/// `Σ_ℓ f(ℓ) ζ_n^ℓ`.
pub fn eval_at_root(f: &[BigInt], n: u64) -> CycInt {
    CycInt::from_exponent_weights(n, f)
}
