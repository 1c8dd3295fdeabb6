//! Balanced complexes `X(A) = Y^(k-1) ∪ A` inside the join `G_0 * … * G_k`.
//!
//! A cell is a choice of at most one vertex from each color group; every cell
//! is written with its colors in increasing order, and the boundary sign of the
//! face that drops the vertex in position `p` is `(-1)^p`. Cells of each
//! dimension are ordered lexicographically by `(support, vertices)`, which
//! fixes the row and column order of every matrix built here.
//!
//! Homology is always reduced: `boundary_matrix(x, 0)` is the augmentation row.

use std::collections::{BTreeMap, HashMap, HashSet};

use num_bigint::BigInt;
use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::fourier::{positive_dual_block, FiniteAbelianGroup, GroupElement, GroupFunction};
use crate::linalg::{
    hermite_normal_form, invariant_factors, kernel_basis, solve_in_lattice, AbelianGroupStructure, HermiteForm,
    IntMatrix,
};
use crate::{Error, Result};

/// The color groups `G_0, …, G_k` of a join, each nontrivial.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "Vec<FiniteAbelianGroup>", into = "Vec<FiniteAbelianGroup>")]
pub struct Colors {
    groups: Vec<FiniteAbelianGroup>,
    product: FiniteAbelianGroup,
    // start of each color's coordinates inside a product element
    offsets: Vec<usize>,
}

impl TryFrom<Vec<FiniteAbelianGroup>> for Colors {
    type Error = Error;
    fn try_from(groups: Vec<FiniteAbelianGroup>) -> Result<Self> {
        Colors::new(groups)
    }
}

impl From<Colors> for Vec<FiniteAbelianGroup> {
    fn from(c: Colors) -> Self {
        c.groups
    }
}

impl Colors {
    pub fn new(groups: Vec<FiniteAbelianGroup>) -> Result<Self> {
        if groups.is_empty() {
            return Err(Error::InvalidGroup("a join needs at least one color".into()));
        }
        if let Some(i) = groups.iter().position(FiniteAbelianGroup::is_trivial) {
            return Err(Error::InvalidGroup(format!("color group {i} is trivial")));
        }
        let product = FiniteAbelianGroup::product(&groups)?;
        let mut offsets = Vec::with_capacity(groups.len());
        let mut at = 0;
        for g in &groups {
            offsets.push(at);
            at += g.orders().len();
        }
        Ok(Colors {
            groups,
            product,
            offsets,
        })
    }

    /// Colors `Z_{m_0}, …, Z_{m_k}`.
    pub fn cyclic(orders: &[u64]) -> Result<Self> {
        Self::new(
            orders
                .iter()
                .map(|&m| FiniteAbelianGroup::cyclic(m))
                .collect::<Result<_>>()?,
        )
    }

    /// Parses the JSON form `[[2],[3]]` or `[[2,2],[3]]`.
    pub fn from_json(s: &str) -> Result<Self> {
        serde_json::from_str(s).map_err(|e| Error::Parse(e.to_string()))
    }

    pub fn groups(&self) -> &[FiniteAbelianGroup] {
        &self.groups
    }

    /// Top dimension `k`.
    pub fn k(&self) -> usize {
        self.groups.len() - 1
    }

    /// `G = G_0 × … × G_k`.
    pub fn product(&self) -> &FiniteAbelianGroup {
        &self.product
    }

    /// The color-`i` component of a product element.
    pub fn slot(&self, x: &GroupElement, i: usize) -> GroupElement {
        let start = self.offsets[i];
        let len = self.groups[i].orders().len();
        GroupElement(x.0[start..start + len].to_vec())
    }

    pub fn join(&self, parts: &[GroupElement]) -> GroupElement {
        GroupElement(parts.iter().flat_map(|p| p.0.iter().copied()).collect())
    }

    /// `L_i`, the product of all colors except `i`.
    pub fn deleted_product(&self, i: usize) -> FiniteAbelianGroup {
        let rest: Vec<FiniteAbelianGroup> = self
            .groups
            .iter()
            .enumerate()
            .filter(|&(j, _)| j != i)
            .map(|(_, g)| g.clone())
            .collect();
        FiniteAbelianGroup::product(&rest).expect("sub-product of a valid product")
    }

    /// The element of `L_i` obtained by dropping color `i`.
    pub fn delete_slot(&self, x: &GroupElement, i: usize) -> GroupElement {
        let start = self.offsets[i];
        let len = self.groups[i].orders().len();
        let mut coords = x.0[..start].to_vec();
        coords.extend_from_slice(&x.0[start + len..]);
        GroupElement(coords)
    }

    /// Number of top-dimensional spheres in the wedge `X(G)`: `Π (|G_i| - 1)`.
    pub fn wedge_count(&self) -> u64 {
        self.groups.iter().map(|g| g.order() - 1).product()
    }
}

/// An oriented cell: one vertex from each color in `support`, colors increasing.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct ColoredSimplex {
    pub support: Vec<usize>,
    pub vertices: Vec<GroupElement>,
}

impl ColoredSimplex {
    pub fn dimension(&self) -> usize {
        self.support.len() - 1
    }

    /// Face dropping the vertex in position `p`.
    pub fn face(&self, p: usize) -> ColoredSimplex {
        let mut f = self.clone();
        f.support.remove(p);
        f.vertices.remove(p);
        f
    }
}

fn combinations(n: usize, r: usize) -> Vec<Vec<usize>> {
    fn go(start: usize, n: usize, r: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == r {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            go(i + 1, n, r, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(0, n, r, &mut Vec::with_capacity(r), &mut out);
    out
}

/// `X(A)`: the full `(k-1)`-skeleton of the join plus the top cells `A`.
#[derive(Clone, Debug)]
pub struct BalancedComplex {
    colors: Colors,
    top_cells: Vec<GroupElement>,
    cells: Vec<Vec<ColoredSimplex>>,
    index: Vec<HashMap<ColoredSimplex, usize>>,
}

impl BalancedComplex {
    pub fn build(colors: &Colors, top_cells: &[GroupElement]) -> Result<Self> {
        check_top_cells(colors, top_cells)?;
        let k = colors.k();
        let mut sorted = top_cells.to_vec();
        sorted.sort();

        let mut cells = Vec::with_capacity(k + 1);
        for dim in 0..k {
            let mut layer = Vec::new();
            for support in combinations(k + 1, dim + 1) {
                let sub: Vec<FiniteAbelianGroup> = support.iter().map(|&c| colors.groups[c].clone()).collect();
                for x in FiniteAbelianGroup::product(&sub)?.elements() {
                    let mut vertices = Vec::with_capacity(sub.len());
                    let mut at = 0;
                    for g in &sub {
                        let len = g.orders().len();
                        vertices.push(GroupElement(x.0[at..at + len].to_vec()));
                        at += len;
                    }
                    layer.push(ColoredSimplex {
                        support: support.clone(),
                        vertices,
                    });
                }
            }
            cells.push(layer);
        }
        cells.push(
            sorted
                .iter()
                .map(|a| ColoredSimplex {
                    support: (0..=k).collect(),
                    vertices: (0..=k).map(|i| colors.slot(a, i)).collect(),
                })
                .collect(),
        );
        let index = cells
            .iter()
            .map(|layer| layer.iter().cloned().enumerate().map(|(i, c)| (c, i)).collect())
            .collect();
        Ok(BalancedComplex {
            colors: colors.clone(),
            top_cells: sorted,
            cells,
            index,
        })
    }

    pub fn colors(&self) -> &Colors {
        &self.colors
    }

    pub fn k(&self) -> usize {
        self.colors.k()
    }

    /// Top cells in canonical (sorted) order.
    pub fn top_cells(&self) -> &[GroupElement] {
        &self.top_cells
    }

    pub fn cells(&self, dim: usize) -> &[ColoredSimplex] {
        self.cells.get(dim).map_or(&[], Vec::as_slice)
    }

    pub fn f_vector(&self) -> Vec<usize> {
        self.cells.iter().map(Vec::len).collect()
    }

    /// Matrix of `∂_dim : C_dim → C_{dim-1}`; `dim = 0` gives the augmentation
    /// row and `dim = k + 1` the empty `n_k × 0` matrix.
    pub fn boundary_matrix(&self, dim: usize) -> IntMatrix {
        if dim == 0 {
            let n0 = self.cells[0].len();
            return IntMatrix::from_entries(1, n0, vec![BigInt::from(1); n0]).expect("shape");
        }
        if dim > self.k() {
            return IntMatrix::zeros(self.cells(dim - 1).len(), 0);
        }
        let rows = &self.index[dim - 1];
        let mut m = IntMatrix::zeros(self.cells[dim - 1].len(), self.cells[dim].len());
        for (j, cell) in self.cells[dim].iter().enumerate() {
            for p in 0..=dim {
                let i = rows[&cell.face(p)];
                m[(i, j)] = BigInt::from(if p % 2 == 0 { 1 } else { -1 });
            }
        }
        m
    }

    /// Reduced homology groups `H̃_0, …, H̃_k`.
    pub fn homology(&self) -> Vec<AbelianGroupStructure> {
        let k = self.k();
        let factors: Vec<Vec<BigInt>> = (0..=k + 1)
            .map(|d| invariant_factors(&self.boundary_matrix(d)))
            .collect();
        (0..=k)
            .map(|i| {
                let free = self.cells[i].len() - factors[i].len() - factors[i + 1].len();
                AbelianGroupStructure::from_cyclic_orders(free, &factors[i + 1])
            })
            .collect()
    }

    /// Reduced cohomology groups `H̃^0, …, H̃^k`, from the transposed matrices.
    pub fn cohomology(&self) -> Vec<AbelianGroupStructure> {
        let k = self.k();
        // coboundary[d] is δ^{d-1} = ∂_d^T : C^{d-1} → C^d
        let factors: Vec<Vec<BigInt>> = (0..=k + 1)
            .map(|d| invariant_factors(&self.boundary_matrix(d).transpose()))
            .collect();
        (0..=k)
            .map(|i| {
                let free = self.cells[i].len() - factors[i + 1].len() - factors[i].len();
                AbelianGroupStructure::from_cyclic_orders(free, &factors[i])
            })
            .collect()
    }

    pub fn reduced_homology(&self, i: usize) -> Result<AbelianGroupStructure> {
        self.check_dim(i)?;
        Ok(self.homology().swap_remove(i))
    }

    pub fn reduced_cohomology(&self, i: usize) -> Result<AbelianGroupStructure> {
        self.check_dim(i)?;
        Ok(self.cohomology().swap_remove(i))
    }

    fn check_dim(&self, i: usize) -> Result<()> {
        if i > self.k() {
            return Err(Error::Shape(format!("dimension {i} exceeds k = {}", self.k())));
        }
        Ok(())
    }

    pub fn report(&self) -> HomologyReport {
        let homology = self.homology();
        let cohomology = self.cohomology();
        HomologyReport {
            schema: crate::SCHEMA_VERSION,
            colors: self.colors.clone(),
            top_cells: self.top_cells.clone(),
            f_vector: self.f_vector(),
            uct: uct_consistent(&homology, &cohomology),
            homology: by_dimension(homology),
            cohomology: by_dimension(cohomology),
        }
    }
}

pub(crate) fn by_dimension(groups: Vec<AbelianGroupStructure>) -> BTreeMap<String, AbelianGroupStructure> {
    groups
        .into_iter()
        .enumerate()
        .map(|(i, g)| (i.to_string(), g))
        .collect()
}

/// JSON record of a complex and its reduced (co)homology.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct HomologyReport {
    pub schema: u32,
    pub colors: Colors,
    #[serde(rename = "A")]
    pub top_cells: Vec<GroupElement>,
    pub f_vector: Vec<usize>,
    pub homology: BTreeMap<String, AbelianGroupStructure>,
    pub cohomology: BTreeMap<String, AbelianGroupStructure>,
    pub uct: bool,
}

/// Universal-coefficient consistency: `H̃^i` has the free rank of `H̃_i` and
/// the torsion of `H̃_{i-1}`.
pub fn uct_consistent(homology: &[AbelianGroupStructure], cohomology: &[AbelianGroupStructure]) -> bool {
    homology.len() == cohomology.len()
        && (0..homology.len()).all(|i| {
            let below: &[BigInt] = if i == 0 { &[] } else { &homology[i - 1].torsion };
            cohomology[i].free_rank == homology[i].free_rank && cohomology[i].torsion == below
        })
}

fn check_top_cells(colors: &Colors, cells: &[GroupElement]) -> Result<()> {
    let mut seen = HashSet::with_capacity(cells.len());
    for a in cells {
        colors.product().check(a)?;
        if !seen.insert(a) {
            return Err(Error::DuplicateCell(a.0.clone()));
        }
    }
    Ok(())
}

/// A `(k-1)`-cochain `(ψ_0, …, ψ_k)` of the full join; `ψ_i` is indexed by
/// the elements of `L_i` in lexicographic order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CochainTuple {
    components: Vec<Vec<BigInt>>,
}

impl CochainTuple {
    pub fn new(colors: &Colors, components: Vec<Vec<BigInt>>) -> Result<Self> {
        if components.len() != colors.k() + 1 {
            return Err(Error::Shape(format!(
                "expected {} components, got {}",
                colors.k() + 1,
                components.len()
            )));
        }
        for (i, c) in components.iter().enumerate() {
            let want = colors.deleted_product(i).order() as usize;
            if c.len() != want {
                return Err(Error::Shape(format!(
                    "component {i} lives on L_{i} of size {want}, got {}",
                    c.len()
                )));
            }
        }
        Ok(CochainTuple { components })
    }

    pub fn components(&self) -> &[Vec<BigInt>] {
        &self.components
    }

    /// Coordinates in the column order of [`coboundary_top_matrix`].
    pub fn flatten(&self) -> Vec<BigInt> {
        self.components.iter().flatten().cloned().collect()
    }

    /// `d_{k-1}ψ (g) = Σ_i (-1)^i ψ_i(g with color i deleted)`.
    pub fn coboundary(&self, colors: &Colors) -> GroupFunction {
        let g = colors.product();
        let deleted: Vec<FiniteAbelianGroup> = (0..=colors.k()).map(|i| colors.deleted_product(i)).collect();
        let values = g
            .elements()
            .iter()
            .map(|x| {
                let mut acc = BigInt::zero();
                for (i, l) in deleted.iter().enumerate() {
                    let v = &self.components[i][l.index_of(&colors.delete_slot(x, i))];
                    if i % 2 == 0 {
                        acc += v;
                    } else {
                        acc -= v;
                    }
                }
                acc
            })
            .collect();
        GroupFunction::from_values(g, values).expect("one value per element")
    }
}

/// Matrix of `d_{k-1} : C^{k-1}(X(G)) → C^k(X(G))`.
///
/// Rows are the elements of `G` in lexicographic order; columns are the
/// disjoint union `L_0 ⊔ … ⊔ L_k`, each block in lexicographic order.
pub fn coboundary_top_matrix(colors: &Colors) -> IntMatrix {
    let g = colors.product();
    let deleted: Vec<FiniteAbelianGroup> = (0..=colors.k()).map(|i| colors.deleted_product(i)).collect();
    let mut block_start = Vec::with_capacity(deleted.len());
    let mut total = 0;
    for l in &deleted {
        block_start.push(total);
        total += l.order() as usize;
    }
    let mut m = IntMatrix::zeros(g.order() as usize, total);
    for (row, x) in g.elements().iter().enumerate() {
        for (i, l) in deleted.iter().enumerate() {
            let col = block_start[i] + l.index_of(&colors.delete_slot(x, i));
            m[(row, col)] = BigInt::from(if i % 2 == 0 { 1 } else { -1 });
        }
    }
    m
}

fn rows_of(colors: &Colors, a: &[GroupElement]) -> Result<Vec<usize>> {
    check_top_cells(colors, a)?;
    Ok(a.iter().map(|x| colors.product().index_of(x)).collect())
}

/// `d_{k-1}` followed by restriction to `A`; row `r` is `A[r]`.
pub fn restricted_coboundary(colors: &Colors, a: &[GroupElement]) -> Result<IntMatrix> {
    Ok(coboundary_top_matrix(colors).select_rows(&rows_of(colors, a)?))
}

/// The lattice `B^k(X(A)) ⊂ Z^A` of integral coboundaries, coordinates in the
/// order of `a`.
pub fn coboundary_lattice(colors: &Colors, a: &[GroupElement]) -> Result<HermiteForm> {
    Ok(hermite_normal_form(&restricted_coboundary(colors, a)?))
}

/// Integer matrix of `f ↦ (f̂(χ))_{χ ∈ Ĝ⁺}`, each character contributing the
/// `φ(N)` power-basis coordinates of its value.
pub fn positive_transform_matrix(colors: &Colors) -> IntMatrix {
    let g = colors.product();
    let chars = positive_dual_block(colors.groups());
    let elements = g.elements();
    let phi = crate::cyclo::euler_phi(g.exponent()) as usize;
    let mut m = IntMatrix::zeros(chars.len() * phi, elements.len());
    for (c, chi) in chars.iter().enumerate() {
        for (j, x) in elements.iter().enumerate() {
            for (t, v) in g.char_eval(chi, x).coords().iter().enumerate() {
                m[(c * phi + t, j)] = v.clone();
            }
        }
    }
    m
}

/// `{f|_A : supp f̂ ⊂ Ĝ - Ĝ⁺}`, via the saturated kernel of
/// [`positive_transform_matrix`] projected to the coordinates of `a`.
pub fn fourier_lattice(colors: &Colors, a: &[GroupElement]) -> Result<HermiteForm> {
    let rows = rows_of(colors, a)?;
    let kernel = kernel_basis(&positive_transform_matrix(colors));
    Ok(hermite_normal_form(&kernel.select_rows(&rows)))
}

/// Coboundary lattice and Fourier lattice agree on `A`.
pub fn verify_prop1(colors: &Colors, a: &[GroupElement]) -> Result<bool> {
    Ok(coboundary_lattice(colors, a)?.h == fourier_lattice(colors, a)?.h)
}

/// Whether `f` (indexed like `a`) is the restriction of a `k`-coboundary.
pub fn is_coboundary(colors: &Colors, a: &[GroupElement], f: &[BigInt]) -> Result<bool> {
    if f.len() != a.len() {
        return Err(Error::Shape(format!("f has {} values for {} cells", f.len(), a.len())));
    }
    Ok(solve_in_lattice(&restricted_coboundary(colors, a)?, f)?.is_some())
}
