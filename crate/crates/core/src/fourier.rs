//! Finite abelian groups `Z_{m_0} × … × Z_{m_{r-1}}`, their characters, and
//! the exact Fourier transform `f̂(χ) = Σ_x f(x) χ(x)` on `Z[G]`.
//!
//! A character is named by an exponent tuple `a`; it sends `x` to
//! `Π_j exp(2πi a_j x_j / m_j)`. All character values of a group live in the
//! single ring `Z[ζ_N]` with `N` the exponent of the group, each `ζ_{m_j}`
//! being embedded as `ζ_N^{N/m_j}`.

use std::collections::{BTreeMap, BTreeSet};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::cyclo::CycInt;
use crate::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct GroupElement(pub Vec<u64>);

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Character(pub Vec<u64>);

impl Character {
    pub fn is_trivial(&self) -> bool {
        self.0.iter().all(|&a| a == 0)
    }
}

/// Product of cyclic groups; the empty product is the trivial group.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "Vec<u64>", into = "Vec<u64>")]
pub struct FiniteAbelianGroup {
    orders: Vec<u64>,
}

impl TryFrom<Vec<u64>> for FiniteAbelianGroup {
    type Error = Error;
    fn try_from(orders: Vec<u64>) -> Result<Self> {
        FiniteAbelianGroup::new(orders)
    }
}

impl From<FiniteAbelianGroup> for Vec<u64> {
    fn from(g: FiniteAbelianGroup) -> Self {
        g.orders
    }
}

impl FiniteAbelianGroup {
    pub fn new(orders: Vec<u64>) -> Result<Self> {
        if orders.contains(&0) {
            return Err(Error::InvalidGroup(format!(
                "cyclic orders must be positive, got {orders:?}"
            )));
        }
        let g = FiniteAbelianGroup { orders };
        if g.orders.iter().try_fold(1u64, |acc, &m| acc.checked_mul(m)).is_none() {
            return Err(Error::InvalidGroup("group order overflows u64".into()));
        }
        Ok(g)
    }

    pub fn cyclic(m: u64) -> Result<Self> {
        Self::new(vec![m])
    }

    pub fn trivial() -> Self {
        FiniteAbelianGroup { orders: Vec::new() }
    }

    /// Direct product; cyclic factors are concatenated in order.
    pub fn product(groups: &[FiniteAbelianGroup]) -> Result<Self> {
        Self::new(groups.iter().flat_map(|g| g.orders.iter().copied()).collect())
    }

    pub fn orders(&self) -> &[u64] {
        &self.orders
    }

    pub fn order(&self) -> u64 {
        self.orders.iter().product()
    }

    /// lcm of the cyclic orders; the conductor of every character value.
    pub fn exponent(&self) -> u64 {
        self.orders.iter().fold(1, |acc, &m| acc.lcm(&m))
    }

    pub fn is_trivial(&self) -> bool {
        self.order() == 1
    }

    pub fn contains(&self, x: &GroupElement) -> bool {
        x.0.len() == self.orders.len() && x.0.iter().zip(&self.orders).all(|(a, m)| a < m)
    }

    pub fn check(&self, x: &GroupElement) -> Result<()> {
        if self.contains(x) {
            Ok(())
        } else {
            Err(Error::NotInGroup(x.0.clone()))
        }
    }

    /// Position in the lexicographic enumeration; `x` must belong to the group.
    pub fn index_of(&self, x: &GroupElement) -> usize {
        debug_assert!(self.contains(x));
        x.0.iter()
            .zip(&self.orders)
            .fold(0usize, |acc, (&a, &m)| acc * m as usize + a as usize)
    }

    pub fn element_at(&self, mut index: usize) -> GroupElement {
        let mut coords = vec![0; self.orders.len()];
        for (c, &m) in coords.iter_mut().zip(&self.orders).rev() {
            *c = (index % m as usize) as u64;
            index /= m as usize;
        }
        GroupElement(coords)
    }

    /// All elements in lexicographic coordinate order.
    pub fn elements(&self) -> Vec<GroupElement> {
        (0..self.order() as usize).map(|i| self.element_at(i)).collect()
    }

    /// All characters in lexicographic exponent order.
    pub fn characters(&self) -> Vec<Character> {
        self.elements().into_iter().map(|x| Character(x.0)).collect()
    }

    pub fn identity(&self) -> GroupElement {
        GroupElement(vec![0; self.orders.len()])
    }

    pub fn add(&self, x: &GroupElement, y: &GroupElement) -> GroupElement {
        GroupElement(
            x.0.iter()
                .zip(&y.0)
                .zip(&self.orders)
                .map(|((a, b), m)| (a + b) % m)
                .collect(),
        )
    }

    pub fn neg(&self, x: &GroupElement) -> GroupElement {
        GroupElement(x.0.iter().zip(&self.orders).map(|(a, m)| (m - a) % m).collect())
    }

    /// `e` with `χ(x) = ζ_N^e`, `0 <= e < N`.
    pub fn char_exponent(&self, chi: &Character, x: &GroupElement) -> u64 {
        let n = self.exponent();
        chi.0
            .iter()
            .zip(&x.0)
            .zip(&self.orders)
            .fold(0u64, |acc, ((&a, &g), &m)| {
                let term = (a * g % m) * (n / m) % n;
                (acc + term) % n
            })
    }

    pub fn char_eval(&self, chi: &Character, x: &GroupElement) -> CycInt {
        crate::cyclo::root_power(self.exponent(), self.char_exponent(chi, x) as i64)
    }
}

/// An element of `Z[G]`, stored densely in element order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroupFunction {
    group: FiniteAbelianGroup,
    values: Vec<BigInt>,
}

impl GroupFunction {
    pub fn zero(group: &FiniteAbelianGroup) -> Self {
        GroupFunction {
            group: group.clone(),
            values: vec![BigInt::zero(); group.order() as usize],
        }
    }

    /// `values[i]` is the value at `group.element_at(i)`.
    pub fn from_values(group: &FiniteAbelianGroup, values: Vec<BigInt>) -> Result<Self> {
        if values.len() as u64 != group.order() {
            return Err(Error::Shape(format!(
                "group of order {} needs {} values, got {}",
                group.order(),
                group.order(),
                values.len()
            )));
        }
        Ok(GroupFunction {
            group: group.clone(),
            values,
        })
    }

    pub fn indicator(group: &FiniteAbelianGroup, x: &GroupElement) -> Result<Self> {
        group.check(x)?;
        let mut f = Self::zero(group);
        f.values[group.index_of(x)] = BigInt::from(1);
        Ok(f)
    }

    pub fn group(&self) -> &FiniteAbelianGroup {
        &self.group
    }

    pub fn values(&self) -> &[BigInt] {
        &self.values
    }

    pub fn get(&self, x: &GroupElement) -> &BigInt {
        &self.values[self.group.index_of(x)]
    }

    pub fn set(&mut self, x: &GroupElement, v: BigInt) {
        let i = self.group.index_of(x);
        self.values[i] = v;
    }

    pub fn is_zero(&self) -> bool {
        self.values.iter().all(Zero::is_zero)
    }

    pub fn support(&self) -> Vec<GroupElement> {
        self.values
            .iter()
            .enumerate()
            .filter(|(_, v)| !v.is_zero())
            .map(|(i, _)| self.group.element_at(i))
            .collect()
    }

    /// `a·self + b·other`
    pub fn combine(&self, a: &BigInt, other: &GroupFunction, b: &BigInt) -> GroupFunction {
        assert_eq!(self.group, other.group, "functions on different groups");
        GroupFunction {
            group: self.group.clone(),
            values: self
                .values
                .iter()
                .zip(&other.values)
                .map(|(x, y)| a * x + b * y)
                .collect(),
        }
    }
}

/// `f̂(χ)` for a single character.
pub fn transform_at(f: &GroupFunction, chi: &Character) -> CycInt {
    let g = &f.group;
    let n = g.exponent();
    let mut weights = vec![BigInt::zero(); n as usize];
    for (i, v) in f.values.iter().enumerate() {
        if v.is_zero() {
            continue;
        }
        let e = g.char_exponent(chi, &g.element_at(i));
        weights[e as usize] += v;
    }
    CycInt::from_exponent_weights(n, &weights)
}

/// The full transform, by direct character sums.
pub fn fourier_transform(f: &GroupFunction) -> BTreeMap<Character, CycInt> {
    f.group
        .characters()
        .into_iter()
        .map(|chi| {
            let v = transform_at(f, &chi);
            (chi, v)
        })
        .collect()
}

/// Characters at which `f̂` does not vanish.
pub fn fourier_support(f: &GroupFunction) -> BTreeSet<Character> {
    fourier_transform(f)
        .into_iter()
        .filter(|(_, v)| !v.is_zero())
        .map(|(chi, _)| chi)
        .collect()
}

/// Characters of `G_0 × … × G_k` that are nontrivial on every factor `G_i`,
/// written as exponent tuples of the product group.
pub fn positive_dual_block(colors: &[FiniteAbelianGroup]) -> Vec<Character> {
    let mut out: Vec<Vec<u64>> = vec![Vec::new()];
    for g in colors {
        let nontrivial: Vec<Character> = g.characters().into_iter().filter(|c| !c.is_trivial()).collect();
        out = out
            .into_iter()
            .flat_map(|prefix| {
                nontrivial.iter().map(move |c| {
                    let mut p = prefix.clone();
                    p.extend_from_slice(&c.0);
                    p
                })
            })
            .collect();
    }
    out.into_iter().map(Character).collect()
}

/// Checks `|G|·f(x) = Σ_χ f̂(χ) χ(-x)` exactly at every `x`.
pub fn inversion_check(f: &GroupFunction) -> bool {
    let g = &f.group;
    let n = g.exponent() as usize;
    let transform = fourier_transform(f);
    let order = BigInt::from(g.order());
    g.elements().iter().all(|x| {
        let minus_x = g.neg(x);
        let mut buf = vec![BigInt::zero(); n];
        for (chi, value) in &transform {
            let shift = g.char_exponent(chi, &minus_x) as usize;
            for (i, c) in value.coords().iter().enumerate() {
                if !c.is_zero() {
                    buf[(i + shift) % n] += c;
                }
            }
        }
        let lhs = CycInt::from_int(g.exponent(), &order * f.get(x));
        CycInt::from_exponent_weights(g.exponent(), &buf) == lhs
    })
}
