//! The complexes `K_A = X(θ(A ∪ A_0))` over `Z_{p_0} * … * Z_{p_k}` and the
//! description of their (co)homology by the coefficients `c_j` of `Φ_n`,
//! `n = p_0 ⋯ p_k`.
//!
//! `θ : Z_n → Z_{p_0} × … × Z_{p_k}` is the Chinese-remainder map and
//! `A_0 = {φ(n)+1, …, n-1}`. For `A ⊆ {0, …, φ(n)}` with `d_A = gcd(c_j : j ∈ A)`
//! (zero when all those coefficients vanish) the predicted reduced groups are
//!
//! | dim     | homology                          | cohomology               |
//! |---------|-----------------------------------|--------------------------|
//! | `k - 1` | `Z/d_A`                           | `Z` if `d_A = 0`, else 0 |
//! | `k`     | `Z^{|A|}` if `d_A = 0`, else `Z^{|A|-1}` | `Z^{|A|-1} ⊕ Z/d_A` |
//!
//! and zero in every other dimension.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{ToPrimitive, Zero};
use serde::{Serialize, Serializer};

use crate::balanced::{by_dimension, coboundary_lattice, is_coboundary, uct_consistent, BalancedComplex, Colors};
use crate::cyclo::{cyclotomic_poly, euler_phi, gcd_all, is_prime, root_power, CycloPoly};
use crate::fourier::{transform_at, Character, FiniteAbelianGroup, GroupElement, GroupFunction};
use crate::linalg::{
    cokernel_structure, hermite_normal_form, kernel_basis, AbelianGroupStructure, HermiteForm, IntMatrix,
};
use crate::{Error, Result};

/// Checks the prime tuple and returns `n = Π p_i`. At least two primes are
/// required so that `k >= 1`.
pub fn validate_primes(primes: &[u64]) -> Result<u64> {
    if primes.len() < 2 {
        return Err(Error::InvalidPrimes(format!(
            "need at least two primes (k >= 1), got {primes:?}"
        )));
    }
    if let Some(p) = primes.iter().find(|&&p| !is_prime(p)) {
        return Err(Error::InvalidPrimes(format!("{p} is not prime")));
    }
    let mut sorted = primes.to_vec();
    sorted.sort_unstable();
    if sorted.windows(2).any(|w| w[0] == w[1]) {
        return Err(Error::InvalidPrimes(format!("primes must be distinct, got {primes:?}")));
    }
    primes
        .iter()
        .try_fold(1u64, |acc, &p| acc.checked_mul(p))
        .ok_or_else(|| Error::InvalidPrimes("product overflows u64".into()))
}

fn theta_unchecked(primes: &[u64], x: u64) -> GroupElement {
    GroupElement(primes.iter().map(|&p| x % p).collect())
}

/// `θ(x) = (x mod p_0, …, x mod p_k)`.
pub fn theta(primes: &[u64], x: u64) -> Result<GroupElement> {
    let n = validate_primes(primes)?;
    if x >= n {
        return Err(Error::InvalidIndexSet(format!("{x} is not a residue mod {n}")));
    }
    Ok(theta_unchecked(primes, x))
}

/// `λ = Σ_j Π_{t≠j} p_t mod n`, a unit of `Z_n`.
pub fn lambda_unit(primes: &[u64]) -> Result<u64> {
    let n = validate_primes(primes)?;
    let lambda = primes.iter().map(|&p| n / p).fold(0u64, |acc, t| (acc + t) % n);
    assert_eq!(lambda.gcd(&n), 1, "λ must be a unit mod {n}");
    Ok(lambda)
}

/// `Z_n^*` in increasing order.
pub fn units(n: u64) -> Vec<u64> {
    (0..n).filter(|m| m.gcd(&n) == 1).collect()
}

fn colors_for(primes: &[u64]) -> Colors {
    Colors::cyclic(primes).expect("primes are nontrivial orders")
}

/// The data attached to a pair `(primes, A)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CycloComplexSpec {
    pub primes: Vec<u64>,
    pub n: u64,
    pub phi_n: u64,
    /// `A`, sorted.
    pub a: Vec<u64>,
    /// `A_0 = {φ(n)+1, …, n-1}`.
    pub a0: Vec<u64>,
    /// `Φ_n`.
    pub c: CycloPoly,
    pub c_a: Vec<BigInt>,
    /// `gcd(c_A)`, zero when `c_A = 0` or `A = ∅`.
    pub d_a: BigInt,
    pub lambda: u64,
}

impl CycloComplexSpec {
    pub fn new(primes: &[u64], a: &[u64]) -> Result<Self> {
        let n = validate_primes(primes)?;
        let phi_n = euler_phi(n);
        let mut sorted = a.to_vec();
        sorted.sort_unstable();
        if let Some(w) = sorted.windows(2).find(|w| w[0] == w[1]) {
            return Err(Error::InvalidIndexSet(format!("{} listed twice", w[0])));
        }
        if let Some(&j) = sorted.iter().find(|&&j| j > phi_n) {
            return Err(Error::InvalidIndexSet(format!(
                "{j} is outside {{0, …, φ({n})}} = {{0, …, {phi_n}}}"
            )));
        }
        let c = cyclotomic_poly(n)?;
        let c_a: Vec<BigInt> = sorted.iter().map(|&j| c.coeff(j as usize)).collect();
        let d_a = gcd_all(&c_a);
        Ok(CycloComplexSpec {
            primes: primes.to_vec(),
            n,
            phi_n,
            a: sorted,
            a0: (phi_n + 1..n).collect(),
            c,
            c_a,
            d_a,
            lambda: lambda_unit(primes)?,
        })
    }

    pub fn k(&self) -> usize {
        self.primes.len() - 1
    }

    pub fn colors(&self) -> Colors {
        colors_for(&self.primes)
    }

    /// `A ∪ A_0` in increasing order.
    pub fn top_indices(&self) -> Vec<u64> {
        self.a.iter().chain(&self.a0).copied().collect()
    }

    /// `θ(A ∪ A_0)`, listed in the order of [`Self::top_indices`].
    pub fn top_cells(&self) -> Vec<GroupElement> {
        self.top_indices()
            .into_iter()
            .map(|x| theta_unchecked(&self.primes, x))
            .collect()
    }

    pub fn build(&self) -> Result<BalancedComplex> {
        BalancedComplex::build(&self.colors(), &self.top_cells())
    }

    fn require_nonempty(&self) -> Result<()> {
        if self.a.is_empty() {
            Err(Error::EmptyIndexSet)
        } else {
            Ok(())
        }
    }

    /// Predicted `H̃_0, …, H̃_k`.
    pub fn predicted_homology(&self) -> Result<Vec<AbelianGroupStructure>> {
        self.require_nonempty()?;
        let k = self.k();
        let size = self.a.len();
        Ok((0..=k)
            .map(|i| {
                if i + 1 == k {
                    AbelianGroupStructure::from_cyclic_orders(0, std::slice::from_ref(&self.d_a))
                } else if i == k {
                    AbelianGroupStructure::free(if self.d_a.is_zero() { size } else { size - 1 })
                } else {
                    AbelianGroupStructure::trivial()
                }
            })
            .collect())
    }

    /// Predicted `H̃^0, …, H̃^k`.
    pub fn predicted_cohomology(&self) -> Result<Vec<AbelianGroupStructure>> {
        self.require_nonempty()?;
        let k = self.k();
        let size = self.a.len();
        Ok((0..=k)
            .map(|i| {
                if i + 1 == k {
                    AbelianGroupStructure::free(usize::from(self.d_a.is_zero()))
                } else if i == k {
                    AbelianGroupStructure::from_cyclic_orders(size - 1, std::slice::from_ref(&self.d_a))
                } else {
                    AbelianGroupStructure::trivial()
                }
            })
            .collect())
    }
}

/// `K_A` as a balanced complex with colors `Z_{p_0}, …, Z_{p_k}`.
pub fn build_ka(primes: &[u64], a: &[u64]) -> Result<BalancedComplex> {
    CycloComplexSpec::new(primes, a)?.build()
}

pub fn predicted_homology(primes: &[u64], a: &[u64], i: usize) -> Result<AbelianGroupStructure> {
    let spec = CycloComplexSpec::new(primes, a)?;
    let mut all = spec.predicted_homology()?;
    if i >= all.len() {
        return Err(Error::Shape(format!("dimension {i} exceeds k = {}", spec.k())));
    }
    Ok(all.swap_remove(i))
}

pub fn predicted_cohomology(primes: &[u64], a: &[u64], i: usize) -> Result<AbelianGroupStructure> {
    let spec = CycloComplexSpec::new(primes, a)?;
    let mut all = spec.predicted_cohomology()?;
    if i >= all.len() {
        return Err(Error::Shape(format!("dimension {i} exceeds k = {}", spec.k())));
    }
    Ok(all.swap_remove(i))
}

fn big_as_number<S: Serializer>(v: &BigInt, s: S) -> std::result::Result<S::Ok, S::Error> {
    match v.to_i64() {
        Some(x) => s.serialize_i64(x),
        None => s.serialize_str(&v.to_string()),
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GroupTable {
    pub homology: BTreeMap<String, AbelianGroupStructure>,
    pub cohomology: BTreeMap<String, AbelianGroupStructure>,
}

/// Computed versus predicted (co)homology of one `K_A`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TheoremReport {
    pub schema: u32,
    pub primes: Vec<u64>,
    pub n: u64,
    #[serde(rename = "A")]
    pub a: Vec<u64>,
    #[serde(rename = "dA", serialize_with = "big_as_number")]
    pub d_a: BigInt,
    pub predicted: GroupTable,
    pub computed: GroupTable,
    #[serde(rename = "match")]
    pub matches: bool,
    pub euler_poincare: bool,
    pub uct: bool,
}

impl TheoremReport {
    pub fn ok(&self) -> bool {
        self.matches && self.euler_poincare && self.uct
    }
}

/// Computes `H̃_*` and `H̃^*` of `K_A` in every dimension and grades them
/// against the cyclotomic prediction; also checks
/// `rank H̃_k - rank H̃_{k-1} = |A| - 1` and universal-coefficient consistency.
pub fn verify_theorems(primes: &[u64], a: &[u64]) -> Result<TheoremReport> {
    let spec = CycloComplexSpec::new(primes, a)?;
    let predicted_h = spec.predicted_homology()?;
    let predicted_c = spec.predicted_cohomology()?;
    let x = spec.build()?;
    let computed_h = x.homology();
    let computed_c = x.cohomology();
    let k = spec.k();
    let euler_poincare = computed_h[k].free_rank as i64 - computed_h[k - 1].free_rank as i64 == spec.a.len() as i64 - 1;
    let uct = uct_consistent(&computed_h, &computed_c);
    let matches = computed_h == predicted_h && computed_c == predicted_c;
    Ok(TheoremReport {
        schema: crate::SCHEMA_VERSION,
        primes: spec.primes.clone(),
        n: spec.n,
        a: spec.a.clone(),
        d_a: spec.d_a.clone(),
        predicted: GroupTable {
            homology: by_dimension(predicted_h),
            cohomology: by_dimension(predicted_c),
        },
        computed: GroupTable {
            homology: by_dimension(computed_h),
            cohomology: by_dimension(computed_c),
        },
        matches,
        euler_poincare,
        uct,
    })
}

/// The `φ(n) × n` matrix whose column `ℓ` holds the coordinates of `ζ_n^ℓ`.
pub fn root_evaluation_matrix(n: u64) -> IntMatrix {
    let columns: Vec<Vec<BigInt>> = (0..n).map(|l| root_power(n, l as i64).coords().to_vec()).collect();
    IntMatrix::from_columns(euler_phi(n) as usize, &columns)
}

/// Shared per-prime-tuple data for repeated lattice checks.
#[derive(Clone, Debug)]
pub struct Prop2Context {
    primes: Vec<u64>,
    colors: Colors,
    // saturated kernel of f ↦ Σ f(ℓ) ζ_n^ℓ
    cb_kernel: IntMatrix,
}

impl Prop2Context {
    pub fn new(primes: &[u64]) -> Result<Self> {
        let n = validate_primes(primes)?;
        Ok(Prop2Context {
            primes: primes.to_vec(),
            colors: colors_for(primes),
            cb_kernel: kernel_basis(&root_evaluation_matrix(n)),
        })
    }

    /// `C_B(A) = {f|_{A ∪ A_0} : Σ_ℓ f(ℓ) ζ_n^ℓ = 0}`, coordinates in
    /// increasing order of `A ∪ A_0`.
    pub fn cb_lattice(&self, a: &[u64]) -> Result<HermiteForm> {
        let spec = CycloComplexSpec::new(&self.primes, a)?;
        let rows: Vec<usize> = spec.top_indices().iter().map(|&x| x as usize).collect();
        Ok(hermite_normal_form(&self.cb_kernel.select_rows(&rows)))
    }

    /// `θ_A^* B^k(K_A)`: the coboundary lattice on `θ(A ∪ A_0)`, with its
    /// coordinates relabelled by `A ∪ A_0` through `θ`.
    pub fn pulled_back_coboundaries(&self, a: &[u64]) -> Result<HermiteForm> {
        let spec = CycloComplexSpec::new(&self.primes, a)?;
        coboundary_lattice(&self.colors, &spec.top_cells())
    }

    pub fn verify(&self, a: &[u64]) -> Result<bool> {
        Ok(self.pulled_back_coboundaries(a)?.h == self.cb_lattice(a)?.h)
    }
}

pub fn cb_lattice(primes: &[u64], a: &[u64]) -> Result<HermiteForm> {
    Prop2Context::new(primes)?.cb_lattice(a)
}

/// `θ_A^* B^k(K_A) = C_B(A)` as an exact lattice identity.
pub fn verify_prop2(primes: &[u64], a: &[u64]) -> Result<bool> {
    Prop2Context::new(primes)?.verify(a)
}

/// Checks, for every `m ∈ Z_n`, that the `Z_n`-transform of `θ^*h` at `λm`
/// equals the `G`-transform of `h` at `θ(m)`; also checks `λ Z_n^* = Z_n^*`
/// and `θ^{-1}(Ĝ⁺) = Z_n^*`.
pub fn change_of_variables_check(primes: &[u64], h: &GroupFunction) -> Result<bool> {
    let n = validate_primes(primes)?;
    let colors = colors_for(primes);
    if h.group() != colors.product() {
        return Err(Error::Shape("h must be a function on Z_{p_0} × … × Z_{p_k}".into()));
    }
    let lambda = lambda_unit(primes)?;
    let pullback = pullback(primes, h);
    let all_m = (0..n).all(|m| {
        let lhs = transform_at(&pullback, &Character(vec![lambda * m % n]));
        let rhs = transform_at(h, &Character(theta_unchecked(primes, m).0));
        lhs == rhs
    });
    Ok(all_m && unit_identities(primes)?)
}

/// Single-`m` form of [`change_of_variables_check`].
pub fn change_of_variables_at(primes: &[u64], h: &GroupFunction, m: u64) -> Result<bool> {
    let n = validate_primes(primes)?;
    let lambda = lambda_unit(primes)?;
    if h.group() != colors_for(primes).product() {
        return Err(Error::Shape("h must be a function on Z_{p_0} × … × Z_{p_k}".into()));
    }
    let lhs = transform_at(&pullback(primes, h), &Character(vec![lambda * (m % n) % n]));
    let rhs = transform_at(h, &Character(theta_unchecked(primes, m % n).0));
    Ok(lhs == rhs)
}

/// `θ^* h` on `Z_n`.
pub fn pullback(primes: &[u64], h: &GroupFunction) -> GroupFunction {
    let n: u64 = primes.iter().product();
    let zn = FiniteAbelianGroup::cyclic(n).expect("n >= 1");
    let values = (0..n).map(|x| h.get(&theta_unchecked(primes, x)).clone()).collect();
    GroupFunction::from_values(&zn, values).expect("n values")
}

/// `λ Z_n^* = Z_n^*` and `θ^{-1}(Ĝ⁺) = Z_n^*`.
pub fn unit_identities(primes: &[u64]) -> Result<bool> {
    let n = validate_primes(primes)?;
    let lambda = lambda_unit(primes)?;
    let u = units(n);
    let mut scaled: Vec<u64> = u.iter().map(|&m| lambda * m % n).collect();
    scaled.sort_unstable();
    let positive: Vec<u64> = (0..n)
        .filter(|&x| theta_unchecked(primes, x).0.iter().all(|&r| r != 0))
        .collect();
    Ok(scaled == u && positive == u)
}

/// `f(ℓ) = c_ℓ` for `ℓ <= φ(n)`, zero otherwise, moved to `G` along `θ`;
/// values listed in the element order of `G`.
pub fn fuchs_vector(primes: &[u64]) -> Result<Vec<BigInt>> {
    let n = validate_primes(primes)?;
    let c = cyclotomic_poly(n)?;
    let g = colors_for(primes).product().clone();
    let mut values = vec![BigInt::zero(); n as usize];
    for l in 0..n {
        values[g.index_of(&theta_unchecked(primes, l))] = c.coeff(l as usize);
    }
    Ok(values)
}

/// The truncated coefficient vector of `Φ_n` is a `k`-coboundary of `X(G)`.
pub fn fuchs_check(primes: &[u64]) -> Result<bool> {
    let colors = colors_for(primes);
    let all = colors.product().elements();
    is_coboundary(&colors, &all, &fuchs_vector(primes)?)
}

/// The quotient `Z^{A ∪ A_0} / C_B(A)` computed several ways.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PresentationReport {
    pub primes: Vec<u64>,
    #[serde(rename = "A")]
    pub a: Vec<u64>,
    /// Cokernel of `C_B(A)` in `Z^{A ∪ A_0}`.
    pub direct: AbelianGroupStructure,
    /// Cokernel of the single column `c_A` in `Z^A`.
    pub via_relation: AbelianGroupStructure,
    /// `Z^{|A|-1} ⊕ Z/d_A`.
    pub expected: AbelianGroupStructure,
    /// `H̃^k(K_A)` from the complex itself.
    pub topological: AbelianGroupStructure,
    /// For each `t ∈ A_0`, `g_t + Σ_{j∈A} u_j g_j ∈ C_B(A)`.
    pub generators: bool,
    /// `Σ_{j∈A} c_j g_j ∈ C_B(A)`.
    pub relation: bool,
}

impl PresentationReport {
    pub fn holds(&self) -> bool {
        self.direct == self.expected
            && self.via_relation == self.expected
            && self.topological == self.expected
            && self.generators
            && self.relation
    }
}

pub fn presentation_check(primes: &[u64], a: &[u64]) -> Result<PresentationReport> {
    let spec = CycloComplexSpec::new(primes, a)?;
    spec.require_nonempty()?;
    let ctx = Prop2Context::new(primes)?;
    let cb = ctx.cb_lattice(&spec.a)?;
    let direct = cokernel_structure(&cb.h);
    let via_relation = cokernel_structure(&IntMatrix::from_columns(spec.a.len(), std::slice::from_ref(&spec.c_a)));
    let expected = AbelianGroupStructure::from_cyclic_orders(spec.a.len() - 1, std::slice::from_ref(&spec.d_a));
    let topological = spec.build()?.reduced_cohomology(spec.k())?;

    let top = spec.top_indices();
    let position = |x: u64| top.iter().position(|&y| y == x).expect("index in A ∪ A_0");
    let phi = spec.phi_n as usize;
    let generators = spec.a0.iter().all(|&t| {
        // ζ_n^t = -Σ_{ℓ<φ(n)} u_ℓ ζ_n^ℓ
        let coords = root_power(spec.n, t as i64);
        let mut v = vec![BigInt::zero(); top.len()];
        v[position(t)] = BigInt::from(1);
        for &j in &spec.a {
            if (j as usize) < phi {
                v[position(j)] = -&coords.coords()[j as usize];
            }
        }
        cb.contains(&v)
    });
    let mut rel = vec![BigInt::zero(); top.len()];
    for (&j, cj) in spec.a.iter().zip(&spec.c_a) {
        rel[position(j)] = cj.clone();
    }
    let relation = cb.contains(&rel);
    Ok(PresentationReport {
        primes: spec.primes,
        a: spec.a,
        direct,
        via_relation,
        expected,
        topological,
        generators,
        relation,
    })
}
