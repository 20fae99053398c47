//! The K-theoretic invariant `(K₀, K₀₊, Σ_ℒ, Σ_ℛ, Δ)` of finite direct sums
//! of Cartan factors.
//!
//! `K₀ ≅ ℤᵖ` is stored as its rank and the positive cone is always `ℕ₀ᵖ`.
//! Scales are boxes `∏ {0, …, maxᵢ}`; `Δ` never contains the zero class.

use std::collections::BTreeSet;
use std::fmt;

use num_rational::BigRational;
use num_traits::{One, Zero};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::factors::{binomial, build_factor, tro_shapes, ConcreteFactor, FactorDescriptor};
use crate::grids::build_grid;
use crate::matrix::{ternary_product, Matrix};
use crate::scalar::GaussianRational;
use crate::spin::{classify_spin_tripotent, SpinElement, SpinTripotentClass};

pub const DEFAULT_SEED: u64 = 42;
pub const DEFAULT_BUDGET: usize = 200;
/// Largest spin factor handled by [`delta_bruteforce`] (`64×64` matrices).
pub const MAX_SAMPLED_SPIN_DIM: usize = 13;

/// Per-coordinate maxima; coordinate `i` ranges over `{0, …, maxima[i]}`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct ScaleBox {
    pub maxima: Vec<u64>,
}

impl ScaleBox {
    pub fn new(maxima: Vec<u64>) -> Result<Self> {
        if maxima.contains(&0) {
            return Err(Error::Domain("scale maxima must be positive".into()));
        }
        Ok(Self { maxima })
    }

    pub fn len(&self) -> usize {
        self.maxima.len()
    }

    pub fn is_empty(&self) -> bool {
        self.maxima.is_empty()
    }

    pub fn contains(&self, v: &[u64]) -> bool {
        v.len() == self.maxima.len() && v.iter().zip(&self.maxima).all(|(x, m)| x <= m)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct KJBInvariant {
    pub rank: usize,
    pub left_scale: ScaleBox,
    pub right_scale: ScaleBox,
    pub delta: BTreeSet<Vec<u64>>,
    pub summand_shapes: Vec<(u64, u64)>,
}

impl KJBInvariant {
    /// Invariant of the zero triple; the neutral element of direct sums.
    pub fn zero() -> Self {
        Self {
            rank: 0,
            left_scale: ScaleBox { maxima: vec![] },
            right_scale: ScaleBox { maxima: vec![] },
            delta: BTreeSet::new(),
            summand_shapes: vec![],
        }
    }

    fn from_shapes(shapes: Vec<(u64, u64)>, delta: BTreeSet<Vec<u64>>) -> Self {
        Self {
            rank: shapes.len(),
            left_scale: ScaleBox {
                maxima: shapes.iter().map(|s| s.0).collect(),
            },
            right_scale: ScaleBox {
                maxima: shapes.iter().map(|s| s.1).collect(),
            },
            delta,
            summand_shapes: shapes,
        }
    }

    /// Checks the structural invariants (used after deserialization).
    pub fn validate(&self) -> Result<()> {
        let p = self.rank;
        if self.left_scale.len() != p || self.right_scale.len() != p || self.summand_shapes.len() != p {
            return Err(Error::Shape(format!("invariant of rank {p} with mismatched component lengths")));
        }
        ScaleBox::new(self.left_scale.maxima.clone())?;
        ScaleBox::new(self.right_scale.maxima.clone())?;
        for (i, &(n, m)) in self.summand_shapes.iter().enumerate() {
            if self.left_scale.maxima[i] != n || self.right_scale.maxima[i] != m {
                return Err(Error::Domain(format!("summand {i} shape disagrees with the scales")));
            }
        }
        for d in &self.delta {
            if d.iter().all(|&x| x == 0) {
                return Err(Error::Domain("Δ contains the zero class".into()));
            }
            if !self.left_scale.contains(d) || !self.right_scale.contains(d) {
                return Err(Error::Domain(format!("Δ element {d:?} outside the scales")));
            }
        }
        Ok(())
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(self).expect("invariant serializes")
    }

    pub fn from_json(v: &serde_json::Value) -> Result<Self> {
        let inv: Self = serde_json::from_value(v.clone()).map_err(|e| Error::Domain(e.to_string()))?;
        inv.validate()?;
        Ok(inv)
    }
}

fn render_vec(v: &[u64]) -> String {
    if v.len() == 1 {
        v[0].to_string()
    } else {
        let parts: Vec<String> = v.iter().map(u64::to_string).collect();
        format!("({})", parts.join(","))
    }
}

impl fmt::Display for KJBInvariant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "K0 = Z^{}", self.rank)?;
        writeln!(f, "left scale maxima  = {}", render_vec(&self.left_scale.maxima))?;
        writeln!(f, "right scale maxima = {}", render_vec(&self.right_scale.maxima))?;
        let d: Vec<String> = self.delta.iter().map(|v| render_vec(v)).collect();
        write!(f, "Delta = {{{}}}", d.join(", "))
    }
}

/// A positive group homomorphism `ℤᵖ → ℤ^q`; `matrix[j][i]` is the image
/// coefficient of generator `i` in coordinate `j`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct K0Morphism {
    pub matrix: Vec<Vec<u64>>,
}

impl K0Morphism {
    pub fn new(matrix: Vec<Vec<u64>>) -> Result<Self> {
        let p = matrix.first().map(Vec::len).unwrap_or(0);
        if matrix.is_empty() || p == 0 || matrix.iter().any(|r| r.len() != p) {
            return Err(Error::Shape("K0 morphism must be a nonempty rectangular matrix".into()));
        }
        Ok(Self { matrix })
    }

    pub fn identity(p: usize) -> Self {
        Self {
            matrix: (0..p).map(|j| (0..p).map(|i| u64::from(i == j)).collect()).collect(),
        }
    }

    /// Permutation morphism sending generator `i` to generator `perm[i]`.
    pub fn permutation(perm: &[usize]) -> Self {
        let p = perm.len();
        let mut matrix = vec![vec![0; p]; p];
        for (i, &j) in perm.iter().enumerate() {
            matrix[j][i] = 1;
        }
        Self { matrix }
    }

    /// Target rank `q`.
    pub fn rows(&self) -> usize {
        self.matrix.len()
    }

    /// Source rank `p`.
    pub fn cols(&self) -> usize {
        self.matrix.first().map(Vec::len).unwrap_or(0)
    }

    pub fn apply(&self, x: &[u64]) -> Result<Vec<u64>> {
        if x.len() != self.cols() {
            return Err(Error::Shape(format!("vector of length {} for a {}-column morphism", x.len(), self.cols())));
        }
        Ok(self
            .matrix
            .iter()
            .map(|row| row.iter().zip(x).map(|(a, b)| a * b).sum())
            .collect())
    }

    /// `after ∘ self`.
    pub fn then(&self, after: &K0Morphism) -> Result<K0Morphism> {
        if after.cols() != self.rows() {
            return Err(Error::Shape("composable morphisms need matching ranks".into()));
        }
        let matrix = after
            .matrix
            .iter()
            .map(|row| {
                (0..self.cols())
                    .map(|i| row.iter().zip(&self.matrix).map(|(b, arow)| b * arow[i]).sum())
                    .collect()
            })
            .collect();
        Ok(Self { matrix })
    }
}

/// Table invariant of a single factor.
pub fn invariant_of_factor(d: FactorDescriptor) -> Result<KJBInvariant> {
    d.validate()?;
    let c = d.canonical();
    let shapes = tro_shapes(&c);
    let delta: BTreeSet<Vec<u64>> = match c {
        FactorDescriptor::Rectangular { rows, cols } if c.is_hilbert() => {
            let n = rows.max(cols) as u64;
            [(1..=n).map(|k| binomial(n - 1, k - 1)).collect()].into()
        }
        FactorDescriptor::Rectangular { rows, cols } => (1..=rows.min(cols) as u64).map(|k| vec![k, k]).collect(),
        FactorDescriptor::Symplectic { n } => (1..=n as u64 / 2).map(|k| vec![2 * k]).collect(),
        FactorDescriptor::Hermitian { n } => (1..=n as u64).map(|k| vec![k]).collect(),
        FactorDescriptor::Spin { dim: 2 } => {
            return Err(Error::Unsupported("IV(2) is not a Cartan factor".into()));
        }
        FactorDescriptor::Spin { dim } if dim % 2 == 0 => {
            let n = (dim / 2) as u32;
            let (lo, hi) = (1u64 << (n - 2), 1u64 << (n - 1));
            [vec![lo, lo], vec![hi, hi]].into()
        }
        FactorDescriptor::Spin { dim } => {
            let n = (dim / 2) as u32;
            [vec![1u64 << (n - 1)], vec![1u64 << n]].into()
        }
    };
    Ok(KJBInvariant::from_shapes(shapes, delta))
}

/// Invariant of `Z₁ ⊕ Z₂`. A tripotent of the sum is `u ⊕ v` with `u`, `v`
/// tripotents (possibly zero) of the parts.
pub fn invariant_direct_sum(a: &KJBInvariant, b: &KJBInvariant) -> KJBInvariant {
    let za = vec![0; a.rank];
    let zb = vec![0; b.rank];
    let with_zero_a: Vec<&Vec<u64>> = std::iter::once(&za).chain(&a.delta).collect();
    let with_zero_b: Vec<&Vec<u64>> = std::iter::once(&zb).chain(&b.delta).collect();
    let mut delta = BTreeSet::new();
    for x in &with_zero_a {
        for y in &with_zero_b {
            let v: Vec<u64> = x.iter().chain(y.iter()).copied().collect();
            if v.iter().any(|&t| t != 0) {
                delta.insert(v);
            }
        }
    }
    let shapes = a.summand_shapes.iter().chain(&b.summand_shapes).copied().collect();
    KJBInvariant::from_shapes(shapes, delta)
}

/// Invariant of `Z₁ ⊕ … ⊕ Z_k` computed in one step: `Δ` is the set of
/// nonzero tuples `(δ₁, …, δ_k)` with `δᵢ ∈ Δ(Zᵢ) ∪ {0}`.
pub fn invariant_of_triple(ds: &[FactorDescriptor]) -> Result<KJBInvariant> {
    let parts = ds.iter().map(|&d| invariant_of_factor(d)).collect::<Result<Vec<_>>>()?;
    let mut shapes = Vec::new();
    let mut tuples: Vec<Vec<u64>> = vec![vec![]];
    for part in &parts {
        shapes.extend_from_slice(&part.summand_shapes);
        let zero = vec![0; part.rank];
        let mut next = Vec::with_capacity(tuples.len() * (part.delta.len() + 1));
        for t in &tuples {
            for d in std::iter::once(&zero).chain(&part.delta) {
                let mut v = t.clone();
                v.extend_from_slice(d);
                next.push(v);
            }
        }
        tuples = next;
    }
    let delta = tuples.into_iter().filter(|v| v.iter().any(|&x| x != 0)).collect();
    Ok(KJBInvariant::from_shapes(shapes, delta))
}

pub fn invariant_of_expression(e: &crate::expr::FactorExpression) -> Result<KJBInvariant> {
    invariant_of_triple(&e.summands)
}

/// Random rational orthogonal matrix: a signed permutation followed by
/// `rotations` plane rotations with Pythagorean cosines and sines.
/// Few rotations keep denominators small.
pub(crate) fn random_orthogonal(n: usize, rotations: usize, rng: &mut impl Rng) -> Matrix {
    const TRIPLES: [(i64, i64, i64); 3] = [(3, 4, 5), (5, 12, 13), (8, 15, 17)];
    let mut perm: Vec<usize> = (0..n).collect();
    perm.shuffle(rng);
    let signs: Vec<i64> = (0..n).map(|_| if rng.gen_bool(0.5) { 1 } else { -1 }).collect();
    let mut o = Matrix::from_fn(n, n, |i, j| {
        GaussianRational::from_int(if perm[j] == i { signs[j] } else { 0 })
    });
    if n < 2 {
        return o;
    }
    for _ in 0..rotations {
        let p = rng.gen_range(0..n);
        let q = (p + rng.gen_range(1..n)) % n;
        let (a, b, c) = TRIPLES[rng.gen_range(0..TRIPLES.len())];
        let (cos, sin) = if rng.gen_bool(0.5) { (a, b) } else { (b, a) };
        let sin = if rng.gen_bool(0.5) { sin } else { -sin };
        let g = Matrix::from_fn(n, n, |i, j| match (i, j) {
            _ if i == j && (i == p || i == q) => GaussianRational::ratio(cos, c),
            _ if i == j => GaussianRational::one(),
            _ if i == p && j == q => GaussianRational::ratio(-sin, c),
            _ if i == q && j == p => GaussianRational::ratio(sin, c),
            _ => GaussianRational::zero(),
        });
        o = g.mul(&o).expect("square");
    }
    o
}

/// Random rational point `((1 − t²) + 2ti)/(1 + t²)` on the unit circle.
fn random_phase(rng: &mut impl Rng) -> GaussianRational {
    let t = BigRational::new(rng.gen_range(-3i64..=3).into(), rng.gen_range(1i64..=3).into());
    let den = BigRational::one() + &t * &t;
    GaussianRational::new((BigRational::one() - &t * &t) / &den, (&t + &t) / &den)
}

/// Random spin tripotent in normal form: `μ(½v + (i/2)w)` (minimal) or
/// `μv` (maximal) for real orthonormal `v`, `w` and `|μ| = 1`.
pub fn spin_normal_form(dim: usize, rng: &mut impl Rng) -> Result<SpinElement> {
    if dim < 2 {
        return Err(Error::Domain("spin normal forms need dimension at least 2".into()));
    }
    let o = random_orthogonal(dim, 3, rng);
    let col = |k: usize| SpinElement::new((0..dim).map(|r| o.get(r, k).clone()).collect());
    let mu = random_phase(rng);
    let a = rng.gen_range(0..dim);
    Ok(if rng.gen_bool(0.5) {
        let b = (a + rng.gen_range(1..dim)) % dim;
        let half = GaussianRational::ratio(1, 2);
        let ihalf = GaussianRational::new(BigRational::zero(), BigRational::new(1.into(), 2.into()));
        col(a).scale(&half).add(&col(b).scale(&ihalf))?.scale(&mu)
    } else {
        col(a).scale(&mu)
    })
}

/// `count` seeded samples of [`spin_normal_form`].
pub fn sample_spin_normal_forms(dim: usize, seed: u64, count: usize) -> Result<Vec<SpinElement>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count).map(|_| spin_normal_form(dim, &mut rng)).collect()
}

/// Pairwise orthogonal subsets (Peirce eigenvalue 0 both ways) of a grid,
/// enumerated exhaustively.
fn orthogonal_subsets(f: &ConcreteFactor, elements: &[Matrix]) -> Result<Vec<Vec<usize>>> {
    let k = elements.len();
    let mut orth = vec![vec![false; k]; k];
    for a in 0..k {
        for b in a + 1..k {
            let ab = f.peirce_eigenvalue(&elements[a], &elements[b])?;
            let ba = f.peirce_eigenvalue(&elements[b], &elements[a])?;
            let zero = Some(GaussianRational::zero());
            orth[a][b] = ab == zero && ba == zero;
            orth[b][a] = orth[a][b];
        }
    }
    fn go(start: usize, orth: &[Vec<bool>], cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        for i in start..orth.len() {
            if cur.iter().all(|&j| orth[i][j]) {
                cur.push(i);
                out.push(cur.clone());
                go(i + 1, orth, cur, out);
                cur.pop();
            }
        }
    }
    let mut out = Vec::new();
    go(0, &orth, &mut Vec::new(), &mut out);
    Ok(out)
}

fn sum_of(elements: &[Matrix], subset: &[usize]) -> Matrix {
    let (r, c) = elements[0].shape();
    subset.iter().fold(Matrix::zeros(r, c), |acc, &i| &acc + &elements[i])
}

/// Brute-force `Δ`: class vectors of tripotents found by exhaustive grid
/// enumeration (types I–III) and by random sampling (all types; the only
/// source for spin factors). Sampling is seeded and must stabilize: the
/// last new class has to appear within the first half of the budget.
pub fn delta_bruteforce(d: FactorDescriptor, seed: u64, budget: usize) -> Result<BTreeSet<Vec<u64>>> {
    d.validate()?;
    if budget == 0 {
        return Err(Error::Domain("sample budget must be positive".into()));
    }
    let target = match d {
        FactorDescriptor::Symplectic { n: 4 } => FactorDescriptor::Spin { dim: 6 },
        FactorDescriptor::Spin { dim: 2 } => return Err(Error::Unsupported("IV(2) is not a Cartan factor".into())),
        _ => d,
    };
    if target.dimension() > 36 {
        return Err(Error::Unsupported(format!("{d} has dimension above 36")));
    }
    if matches!(target, FactorDescriptor::Spin { dim } if dim > MAX_SAMPLED_SPIN_DIM) {
        return Err(Error::Unsupported(format!(
            "{d}: spin matrices above dimension {MAX_SAMPLED_SPIN_DIM} are too large to sample"
        )));
    }
    let f = build_factor(target)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut found = BTreeSet::new();
    let mut last_new = 0usize;

    match target {
        FactorDescriptor::Spin { dim } => {
            for sample in 0..budget {
                let e = spin_normal_form(dim, &mut rng)?;
                match classify_spin_tripotent(&e) {
                    SpinTripotentClass::Minimal | SpinTripotentClass::Maximal => {}
                    other => {
                        return Err(Error::Verification(format!("normal form classified as {other:?}")));
                    }
                }
                let z = f.spin_to_matrix(&e)?;
                if ternary_product(&z, &z, &z)? != z {
                    return Err(Error::Verification("sampled spin tripotent fails on the matrix side".into()));
                }
                if found.insert(f.tripotent_class_vector(&z)?) {
                    last_new = sample;
                }
            }
        }
        _ => {
            let grid = build_grid(target)?;
            let subsets = orthogonal_subsets(&f, &grid.elements)?;
            for s in &subsets {
                found.insert(f.tripotent_class_vector(&sum_of(&grid.elements, s))?);
            }
            let (rows, cols) = f.ambient;
            for sample in 0..budget {
                let s = &subsets[rng.gen_range(0..subsets.len())];
                let z = sum_of(&grid.elements, s);
                let z = match target {
                    FactorDescriptor::Rectangular { .. } => {
                        let o1 = random_orthogonal(rows, rows, &mut rng);
                        let o2 = random_orthogonal(cols, cols, &mut rng);
                        o1.mul(&z)?.mul(&o2.transpose())?
                    }
                    _ => {
                        let o = random_orthogonal(rows, rows, &mut rng);
                        o.mul(&z)?.mul(&o.transpose())?
                    }
                };
                if found.insert(f.tripotent_class_vector(&z)?) {
                    last_new = sample;
                }
            }
        }
    }
    if budget > 1 && 2 * last_new >= budget {
        return Err(Error::NotStabilized(format!(
            "{d}: a new class appeared at sample {last_new} of {budget}"
        )));
    }
    Ok(found)
}

/// `true` iff `alpha` maps the cone, both scales and `Δ` of `src` into
/// those of `dst`.
pub fn is_invariant_morphism(src: &KJBInvariant, dst: &KJBInvariant, alpha: &K0Morphism) -> Result<bool> {
    if alpha.cols() != src.rank || alpha.rows() != dst.rank {
        return Err(Error::Shape(format!(
            "{}×{} morphism between ranks {} and {}",
            alpha.rows(),
            alpha.cols(),
            src.rank,
            dst.rank
        )));
    }
    if !dst.left_scale.contains(&alpha.apply(&src.left_scale.maxima)?)
        || !dst.right_scale.contains(&alpha.apply(&src.right_scale.maxima)?)
    {
        return Ok(false);
    }
    for d in &src.delta {
        if !dst.delta.contains(&alpha.apply(d)?) {
            return Ok(false);
        }
    }
    Ok(true)
}

fn projection(delta: &BTreeSet<Vec<u64>>, coords: &[usize]) -> BTreeSet<Vec<u64>> {
    delta.iter().map(|v| coords.iter().map(|&i| v[i]).collect()).collect()
}

/// Searches for a permutation of generators carrying `a` onto `b`
/// (order isomorphisms of `ℤᵖ` preserving `ℕ₀ᵖ` are permutations).
pub fn find_invariant_isomorphism(a: &KJBInvariant, b: &KJBInvariant) -> Option<K0Morphism> {
    find_permutation(a, b).map(|p| K0Morphism::permutation(&p))
}

fn find_permutation(a: &KJBInvariant, b: &KJBInvariant) -> Option<Vec<usize>> {
    let p = a.rank;
    if p != b.rank || a.delta.len() != b.delta.len() {
        return None;
    }
    let signature = |inv: &KJBInvariant, i: usize| {
        let values: BTreeSet<u64> = inv.delta.iter().map(|v| v[i]).collect();
        (inv.left_scale.maxima[i], inv.right_scale.maxima[i], values)
    };
    let sa: Vec<_> = (0..p).map(|i| signature(a, i)).collect();
    let sb: Vec<_> = (0..p).map(|i| signature(b, i)).collect();

    fn go(
        i: usize,
        a: &KJBInvariant,
        b: &KJBInvariant,
        sa: &[(u64, u64, BTreeSet<u64>)],
        sb: &[(u64, u64, BTreeSet<u64>)],
        used: &mut Vec<bool>,
        perm: &mut Vec<usize>,
    ) -> bool {
        let p = sa.len();
        if i == p {
            return true;
        }
        for j in 0..p {
            if used[j] || sa[i] != sb[j] {
                continue;
            }
            perm.push(j);
            let src: Vec<usize> = (0..=i).collect();
            if projection(&a.delta, &src) == projection(&b.delta, perm) {
                used[j] = true;
                if go(i + 1, a, b, sa, sb, used, perm) {
                    return true;
                }
                used[j] = false;
            }
            perm.pop();
        }
        false
    }

    let mut perm = Vec::with_capacity(p);
    go(0, a, b, &sa, &sb, &mut vec![false; p], &mut perm).then_some(perm)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "verdict")]
pub enum IsoVerdict {
    Isomorphic {
        /// Generator `i` of the first invariant goes to `permutation[i]`.
        permutation: Vec<usize>,
        morphism: K0Morphism,
    },
    NotIsomorphic {
        reason: String,
    },
}

impl IsoVerdict {
    pub fn is_isomorphic(&self) -> bool {
        matches!(self, Self::Isomorphic { .. })
    }
}

/// Decides whether two finite direct sums of factors are isomorphic by
/// comparing their invariants.
pub fn decide_isomorphism(zs: &[FactorDescriptor], ws: &[FactorDescriptor]) -> Result<IsoVerdict> {
    if zs.is_empty() || ws.is_empty() {
        return Err(Error::Domain("empty list of factors".into()));
    }
    let a = invariant_of_triple(zs)?;
    let b = invariant_of_triple(ws)?;
    if let Some(permutation) = find_permutation(&a, &b) {
        let morphism = K0Morphism::permutation(&permutation);
        return Ok(IsoVerdict::Isomorphic { permutation, morphism });
    }
    let sorted = |v: &[(u64, u64)]| {
        let mut v = v.to_vec();
        v.sort_unstable();
        v
    };
    let reason = if a.rank != b.rank {
        format!("K0 ranks differ: {} vs {}", a.rank, b.rank)
    } else if sorted(&a.summand_shapes) != sorted(&b.summand_shapes) {
        "scales differ".to_string()
    } else if a.delta.len() != b.delta.len() {
        format!("Delta sizes differ: {} vs {}", a.delta.len(), b.delta.len())
    } else {
        "no permutation of K0 generators carries one Delta onto the other".to_string()
    };
    Ok(IsoVerdict::NotIsomorphic { reason })
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn set(v: &[&[u64]]) -> BTreeSet<Vec<u64>> {
        v.iter().map(|x| x.to_vec()).collect()
    }

    #[test]
    fn hilbert_row() {
        let inv = invariant_of_factor(FactorDescriptor::Rectangular { rows: 1, cols: 3 }).unwrap();
        assert_eq!(inv.rank, 3);
        assert_eq!(inv.left_scale.maxima, vec![3, 3, 1]);
        assert_eq!(inv.right_scale.maxima, vec![1, 3, 3]);
        assert_eq!(inv.delta, set(&[&[1, 2, 1]]));
        let col = invariant_of_factor(FactorDescriptor::Rectangular { rows: 3, cols: 1 }).unwrap();
        assert_eq!(col, inv);
    }

    #[test]
    fn symplectic_and_spin_rows() {
        let inv = invariant_of_factor(FactorDescriptor::Symplectic { n: 7 }).unwrap();
        assert_eq!(inv.left_scale.maxima, vec![7]);
        assert_eq!(inv.delta, set(&[&[2], &[4], &[6]]));
        let inv = invariant_of_factor(FactorDescriptor::Spin { dim: 5 }).unwrap();
        assert_eq!(inv.left_scale.maxima, vec![4]);
        assert_eq!(inv.delta, set(&[&[2], &[4]]));
        assert!(matches!(
            invariant_of_factor(FactorDescriptor::Spin { dim: 2 }),
            Err(Error::Unsupported(_))
        ));
    }

    #[test]
    fn direct_sum_of_two_hermitian_twos() {
        let a = invariant_of_factor(FactorDescriptor::Hermitian { n: 2 }).unwrap();
        let s = invariant_direct_sum(&a, &a);
        assert_eq!(s.rank, 2);
        assert_eq!(s.left_scale.maxima, vec![2, 2]);
        assert_eq!(s.delta.len(), 8);
        assert_eq!(invariant_direct_sum(&a, &KJBInvariant::zero()), a);
    }

    #[test]
    fn morphism_examples() {
        let c2 = invariant_of_factor(FactorDescriptor::Hermitian { n: 2 }).unwrap();
        let c3 = invariant_of_factor(FactorDescriptor::Hermitian { n: 3 }).unwrap();
        assert!(is_invariant_morphism(&c3, &c3, &K0Morphism::identity(1)).unwrap());
        assert!(!is_invariant_morphism(&c2, &c2, &K0Morphism::new(vec![vec![2]]).unwrap()).unwrap());
        let c5 = invariant_of_factor(FactorDescriptor::Hermitian { n: 5 }).unwrap();
        let sum = invariant_direct_sum(&c2, &c2);
        assert!(is_invariant_morphism(&sum, &c5, &K0Morphism::new(vec![vec![1, 1]]).unwrap()).unwrap());
        assert!(is_invariant_morphism(&sum, &c5, &K0Morphism::identity(2)).is_err());
    }

    #[test]
    fn isomorphism_search() {
        let ii6 = invariant_of_factor(FactorDescriptor::Symplectic { n: 6 }).unwrap();
        let iii6 = invariant_of_factor(FactorDescriptor::Hermitian { n: 6 }).unwrap();
        assert_eq!(find_invariant_isomorphism(&ii6, &ii6), Some(K0Morphism::identity(1)));
        assert_eq!(find_invariant_isomorphism(&ii6, &iii6), None);
        let h = invariant_of_factor(FactorDescriptor::Rectangular { rows: 1, cols: 2 }).unwrap();
        let s3 = invariant_of_factor(FactorDescriptor::Spin { dim: 3 }).unwrap();
        assert_eq!(find_invariant_isomorphism(&h, &s3), None);
    }

    #[test]
    fn transpose_swaps_summands() {
        let v = decide_isomorphism(
            &[FactorDescriptor::Rectangular { rows: 2, cols: 3 }],
            &[FactorDescriptor::Rectangular { rows: 3, cols: 2 }],
        )
        .unwrap();
        assert_eq!(
            v,
            IsoVerdict::Isomorphic {
                permutation: vec![1, 0],
                morphism: K0Morphism::permutation(&[1, 0])
            }
        );
    }

    #[test]
    fn oracle_small_cases() {
        assert_eq!(
            delta_bruteforce(FactorDescriptor::Hermitian { n: 3 }, 42, 50).unwrap(),
            set(&[&[1], &[2], &[3]])
        );
        assert_eq!(
            delta_bruteforce(FactorDescriptor::Spin { dim: 4 }, 42, 50).unwrap(),
            set(&[&[1, 1], &[2, 2]])
        );
        assert_eq!(
            delta_bruteforce(FactorDescriptor::Rectangular { rows: 2, cols: 2 }, 42, 50).unwrap(),
            set(&[&[1, 1], &[2, 2]])
        );
    }

    #[test]
    fn json_roundtrip() {
        let inv = invariant_of_triple(&[FactorDescriptor::Rectangular { rows: 1, cols: 3 }, FactorDescriptor::Spin { dim: 5 }])
            .unwrap();
        let j = inv.to_json();
        assert_eq!(j["rank"], 4);
        assert_eq!(KJBInvariant::from_json(&j).unwrap(), inv);
        let mut bad = j.clone();
        bad["delta"] = serde_json::json!([[9, 9, 9, 9]]);
        assert!(KJBInvariant::from_json(&bad).is_err());
    }

    fn small_morphism(q: usize, p: usize) -> impl Strategy<Value = K0Morphism> {
        prop::collection::vec(prop::collection::vec(0u64..3, p), q).prop_map(|m| K0Morphism { matrix: m })
    }

    proptest! {
        #[test]
        fn composition_is_matrix_product(a in small_morphism(2, 3), b in small_morphism(3, 2), x in prop::collection::vec(0u64..5, 3)) {
            let ba = a.then(&b).unwrap();
            prop_assert_eq!(ba.apply(&x).unwrap(), b.apply(&a.apply(&x).unwrap()).unwrap());
        }

        #[test]
        fn delta_within_scales(n in 2usize..9) {
            for d in [FactorDescriptor::Hermitian { n }, FactorDescriptor::Spin { dim: n + 1 }, FactorDescriptor::Rectangular { rows: 1, cols: n }] {
                prop_assert!(invariant_of_factor(d).unwrap().validate().is_ok());
            }
        }
    }
}
