//! Concrete realizations of the classical Cartan factors.

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

use num_rational::BigRational;
use num_traits::One;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::matrix::{ternary_product, Matrix};
use crate::scalar::GaussianRational;
use crate::spin::{self, SpinElement};

/// Symbolic Cartan factor.
///
/// `Rectangular { rows, cols }` is `I(rows, cols)`, the space of complex
/// `rows × cols` matrices. `Spin { dim }` is `IV(dim)`; its parity decides
/// whether the top generator of the spin system is dropped.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum FactorDescriptor {
    Rectangular { rows: usize, cols: usize },
    Symplectic { n: usize },
    Hermitian { n: usize },
    Spin { dim: usize },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum SpinParity {
    Even,
    Odd,
}

impl FactorDescriptor {
    /// Checks the parameter ranges. `IV(2)` is accepted so the smallest spin
    /// grid can be built, although ℂ² with the spin product is not a factor.
    pub fn validate(&self) -> Result<()> {
        let ok = match *self {
            Self::Rectangular { rows, cols } => rows >= 1 && cols >= 1,
            Self::Symplectic { n } => n >= 4,
            Self::Hermitian { n } => n >= 2,
            Self::Spin { dim } => dim >= 2,
        };
        if ok {
            Ok(())
        } else {
            Err(Error::Domain(format!("parameters out of range for {self}")))
        }
    }

    pub fn dimension(&self) -> usize {
        match *self {
            Self::Rectangular { rows, cols } => rows * cols,
            Self::Symplectic { n } => n * (n - 1) / 2,
            Self::Hermitian { n } => n * (n + 1) / 2,
            Self::Spin { dim } => dim,
        }
    }

    /// `I(1,n)` or `I(n,1)`: the factor is a Hilbert space.
    pub fn is_hilbert(&self) -> bool {
        matches!(*self, Self::Rectangular { rows, cols } if rows == 1 || cols == 1)
    }

    pub fn spin_parity(&self) -> Option<SpinParity> {
        match *self {
            Self::Spin { dim } if dim % 2 == 0 => Some(SpinParity::Even),
            Self::Spin { .. } => Some(SpinParity::Odd),
            _ => None,
        }
    }

    /// Representative used for invariant computations: the classical
    /// coincidences `I(2,2) ≅ IV(4)`, `II(4) ≅ IV(6)`, `III(2) ≅ IV(3)` are
    /// sent to the spin side, and column Hilbert spaces `I(n,1)` to `I(1,n)`.
    pub fn canonical(&self) -> Self {
        match *self {
            Self::Rectangular { rows: 2, cols: 2 } => Self::Spin { dim: 4 },
            Self::Symplectic { n: 4 } => Self::Spin { dim: 6 },
            Self::Hermitian { n: 2 } => Self::Spin { dim: 3 },
            Self::Rectangular { rows, cols: 1 } if rows > 1 => Self::Rectangular { rows: 1, cols: rows },
            d => d,
        }
    }

    /// Label of the associated graded root system, e.g. `"A4"`, `"C2"`.
    pub fn root_label(&self) -> String {
        match *self {
            Self::Rectangular { rows, cols } => format!("A{}", rows + cols - 1),
            Self::Symplectic { n } => format!("D{n}"),
            Self::Hermitian { n } => format!("C{n}"),
            Self::Spin { dim } if dim % 2 == 0 => format!("D{}", dim / 2 + 1),
            Self::Spin { dim } => format!("B{}", dim / 2 + 1),
        }
    }
}

impl fmt::Display for FactorDescriptor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            Self::Rectangular { rows, cols } => write!(f, "I({rows},{cols})"),
            Self::Symplectic { n } => write!(f, "II({n})"),
            Self::Hermitian { n } => write!(f, "III({n})"),
            Self::Spin { dim } => write!(f, "IV({dim})"),
        }
    }
}

impl FromStr for FactorDescriptor {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let e = crate::expr::FactorExpression::from_str(s)?;
        match e.summands.as_slice() {
            [d] => Ok(*d),
            _ => Err(Error::Parse {
                position: 0,
                message: "expected a single factor".into(),
            }),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum ProductRule {
    MatrixTernary,
    SpinAbstract,
}

/// A Cartan factor realized as a span of matrices over ℚ(i).
#[derive(Clone, Debug)]
pub struct ConcreteFactor {
    pub descriptor: FactorDescriptor,
    pub ambient: (usize, usize),
    pub basis: Vec<Matrix>,
    pub product_rule: ProductRule,
    /// Full spin system `s₀..s_{2n}` for spin factors.
    spin_system: Option<Vec<Matrix>>,
    /// Central projections splitting the even spin realization in two.
    spin_halves: Option<(Matrix, Matrix)>,
}

/// Builds the concrete factor with its standard matrix basis.
pub fn build_factor(d: FactorDescriptor) -> Result<ConcreteFactor> {
    d.validate()?;
    let (ambient, basis, rule, system, halves) = match d {
        FactorDescriptor::Rectangular { rows, cols } => {
            let basis = (0..rows)
                .flat_map(|i| (0..cols).map(move |j| Matrix::unit(rows, cols, i, j)))
                .collect();
            ((rows, cols), basis, ProductRule::MatrixTernary, None, None)
        }
        FactorDescriptor::Symplectic { n } => {
            let mut basis = Vec::new();
            for i in 0..n {
                for j in i + 1..n {
                    basis.push(&Matrix::unit(n, n, i, j) - &Matrix::unit(n, n, j, i));
                }
            }
            ((n, n), basis, ProductRule::MatrixTernary, None, None)
        }
        FactorDescriptor::Hermitian { n } => {
            let mut basis: Vec<Matrix> = (0..n).map(|i| Matrix::unit(n, n, i, i)).collect();
            for i in 0..n {
                for j in i + 1..n {
                    basis.push(&Matrix::unit(n, n, i, j) + &Matrix::unit(n, n, j, i));
                }
            }
            ((n, n), basis, ProductRule::MatrixTernary, None, None)
        }
        FactorDescriptor::Spin { dim } => {
            let n = spin::tensor_factors_for_dim(dim);
            let system = spin::spin_system(n)?;
            let basis = system[..dim].to_vec();
            let halves = if dim % 2 == 0 { Some(central_halves(&system[1..dim])?) } else { None };
            ((1 << n, 1 << n), basis, ProductRule::SpinAbstract, Some(system), halves)
        }
    };
    Ok(ConcreteFactor {
        descriptor: d,
        ambient,
        basis,
        product_rule: rule,
        spin_system: system,
        spin_halves: halves,
    })
}

/// For an odd number of anticommuting symmetries `s₁..s_k`, the product
/// `Γ = c·s₁⋯s_k` commutes with each of them; with `c ∈ {1, i}` chosen so
/// that `Γ² = 1`, the projections `½(1 ± Γ)` split the generated algebra
/// into two simple summands.
fn central_halves(gens: &[Matrix]) -> Result<(Matrix, Matrix)> {
    let size = gens[0].rows();
    let id = Matrix::identity(size);
    let mut gamma = id.clone();
    for g in gens {
        gamma = gamma.mul(g)?;
    }
    if gamma.mul(&gamma)? != id {
        gamma = gamma.scale(&GaussianRational::i());
    }
    debug_assert_eq!(gamma.mul(&gamma)?, id);
    Ok(((&id + &gamma).half(), (&id - &gamma).half()))
}

impl ConcreteFactor {
    pub fn dimension(&self) -> usize {
        self.basis.len()
    }

    pub fn spin_system(&self) -> Option<&[Matrix]> {
        self.spin_system.as_deref()
    }

    /// Linear combination of the basis.
    pub fn element(&self, coords: &[GaussianRational]) -> Result<Matrix> {
        if coords.len() != self.basis.len() {
            return Err(Error::Shape(format!(
                "{} coordinates for a factor of dimension {}",
                coords.len(),
                self.basis.len()
            )));
        }
        let mut m = Matrix::zeros(self.ambient.0, self.ambient.1);
        for (c, b) in coords.iter().zip(&self.basis) {
            if !c.is_zero() {
                m = &m + &b.scale(c);
            }
        }
        Ok(m)
    }

    /// Coordinates of `z` over the basis; `OutsideSpan` if `z` is not in it.
    pub fn coordinates(&self, z: &Matrix) -> Result<Vec<GaussianRational>> {
        if z.shape() != self.ambient {
            return Err(Error::OutsideSpan);
        }
        let coords: Vec<GaussianRational> = match self.descriptor {
            FactorDescriptor::Rectangular { .. } => z.entries().to_vec(),
            FactorDescriptor::Symplectic { n } => {
                let mut c = Vec::with_capacity(self.dimension());
                for i in 0..n {
                    for j in i + 1..n {
                        c.push(z.get(i, j).clone());
                    }
                }
                c
            }
            FactorDescriptor::Hermitian { n } => {
                let mut c: Vec<GaussianRational> = (0..n).map(|i| z.get(i, i).clone()).collect();
                for i in 0..n {
                    for j in i + 1..n {
                        c.push(z.get(i, j).clone());
                    }
                }
                c
            }
            FactorDescriptor::Spin { .. } => {
                let inv = BigRational::one() / BigRational::from_integer((self.ambient.0 as i64).into());
                self.basis
                    .iter()
                    .map(|s| Ok(s.mul(z)?.trace()?.scale(&inv)))
                    .collect::<Result<_>>()?
            }
        };
        if &self.element(&coords)? != z {
            return Err(Error::OutsideSpan);
        }
        Ok(coords)
    }

    pub fn contains(&self, z: &Matrix) -> bool {
        self.coordinates(z).is_ok()
    }

    /// Abstract spin coordinates (see [`crate::spin`]) of an element.
    pub fn spin_coordinates(&self, z: &Matrix) -> Result<SpinElement> {
        let system = self
            .spin_system
            .as_ref()
            .ok_or_else(|| Error::Domain(format!("{} is not a spin factor", self.descriptor)))?;
        spin::from_matrix(z, system, self.dimension())
    }

    pub fn spin_to_matrix(&self, e: &SpinElement) -> Result<Matrix> {
        let system = self
            .spin_system
            .as_ref()
            .ok_or_else(|| Error::Domain(format!("{} is not a spin factor", self.descriptor)))?;
        if e.dim() != self.dimension() {
            return Err(Error::Shape(format!(
                "spin element of dimension {} for {}",
                e.dim(),
                self.descriptor
            )));
        }
        spin::to_matrix(e, system)
    }

    /// The triple product of the factor. Spin factors evaluate the abstract
    /// formula on coordinates; everything else uses `½(ab*c + cb*a)`.
    pub fn triple_product(&self, a: &Matrix, b: &Matrix, c: &Matrix) -> Result<Matrix> {
        match self.product_rule {
            ProductRule::MatrixTernary => {
                for x in [a, b, c] {
                    self.coordinates(x)?;
                }
                ternary_product(a, b, c)
            }
            ProductRule::SpinAbstract => {
                let (ea, eb, ec) = (self.spin_coordinates(a)?, self.spin_coordinates(b)?, self.spin_coordinates(c)?);
                self.spin_to_matrix(&spin::spin_triple(&ea, &eb, &ec)?)
            }
        }
    }

    /// `½(ab*c + cb*a)` in the ambient matrix space, for any factor.
    pub fn ambient_triple_product(&self, a: &Matrix, b: &Matrix, c: &Matrix) -> Result<Matrix> {
        for x in [a, b, c] {
            self.coordinates(x)?;
        }
        ternary_product(a, b, c)
    }

    pub fn is_tripotent(&self, z: &Matrix) -> Result<bool> {
        Ok(&self.triple_product(z, z, z)? == z)
    }

    /// `λ` with `{u,u,z} = λz`, or `None` if `z` is not an eigenvector of `u□u`.
    pub fn peirce_eigenvalue(&self, u: &Matrix, z: &Matrix) -> Result<Option<GaussianRational>> {
        if !self.is_tripotent(u)? {
            return Err(Error::NotTripotent);
        }
        if z.is_zero() {
            return Err(Error::Domain("Peirce eigenvalue of the zero element".into()));
        }
        let w = self.triple_product(u, u, z)?;
        let k = z.entries().iter().position(|x| !x.is_zero()).expect("z is nonzero");
        let lambda = w.entries()[k].checked_div(&z.entries()[k])?;
        Ok((z.scale(&lambda) == w).then_some(lambda))
    }

    /// Shapes `(nᵢ, mᵢ)` of the summands of the enveloping TRO.
    pub fn tro_shapes(&self) -> Vec<(u64, u64)> {
        tro_shapes(&self.descriptor)
    }

    /// Image of `z` under the realization of the factor inside its
    /// enveloping TRO, one matrix per summand.
    ///
    /// Hilbert spaces act by creation operators `Λ^{k−1} → Λ^k`; `I(n,m)`
    /// embeds as `z ⊕ zᵀ`; types II and III embed as themselves; odd spin
    /// factors act on `ℂ^{2ⁿ}`, and even ones are cut by the two central
    /// projections of the generated algebra (the images stay `2ⁿ×2ⁿ`).
    pub fn tro_image(&self, z: &Matrix) -> Result<Vec<Matrix>> {
        self.coordinates(z)?;
        Ok(match self.descriptor {
            d if d.is_hilbert() => hilbert_creation_operators(z.entries()),
            FactorDescriptor::Rectangular { .. } => vec![z.clone(), z.transpose()],
            FactorDescriptor::Symplectic { .. } | FactorDescriptor::Hermitian { .. } => vec![z.clone()],
            FactorDescriptor::Spin { .. } => match &self.spin_halves {
                Some((p, q)) => vec![p.mul(z)?, q.mul(z)?],
                None => vec![z.clone()],
            },
        })
    }

    /// K₀ class of `ρ(z)ρ(z)*`: its rank in each TRO summand, computed as
    /// `rank ρ(z)` (the same number).
    pub fn tripotent_class_vector(&self, z: &Matrix) -> Result<Vec<u64>> {
        if !self.is_tripotent(z)? {
            return Err(Error::NotTripotent);
        }
        Ok(self.tro_image(z)?.iter().map(|x| x.rank() as u64).collect())
    }
}

pub fn binomial(n: u64, k: u64) -> u64 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    (0..k).fold(1u64, |acc, i| acc * (n - i) / (i + 1))
}

/// TRO summand shapes per factor type (structural data, not computed).
pub fn tro_shapes(d: &FactorDescriptor) -> Vec<(u64, u64)> {
    match *d {
        FactorDescriptor::Rectangular { rows, cols } if rows == 1 || cols == 1 => {
            let n = rows.max(cols) as u64;
            (1..=n).map(|k| (binomial(n, k), binomial(n, k - 1))).collect()
        }
        FactorDescriptor::Rectangular { rows, cols } => {
            let (n, m) = (rows as u64, cols as u64);
            vec![(n, m), (m, n)]
        }
        FactorDescriptor::Symplectic { n } | FactorDescriptor::Hermitian { n } => vec![(n as u64, n as u64)],
        FactorDescriptor::Spin { dim } => {
            let n = (dim / 2) as u32;
            if dim % 2 == 0 {
                let h = 1u64 << (n - 1);
                vec![(h, h), (h, h)]
            } else {
                let f = 1u64 << n;
                vec![(f, f)]
            }
        }
    }
}

/// Creation operators `v ↦ z ∧ v` from `Λ^{k−1}ℂᴺ` to `Λ^kℂᴺ`, `k = 1..N`.
fn hilbert_creation_operators(z: &[GaussianRational]) -> Vec<Matrix> {
    let n = z.len();
    let subsets: Vec<Vec<Vec<usize>>> = (0..=n).map(|k| k_subsets(n, k)).collect();
    let index: Vec<HashMap<&[usize], usize>> = subsets
        .iter()
        .map(|layer| layer.iter().enumerate().map(|(i, s)| (s.as_slice(), i)).collect())
        .collect();
    (1..=n)
        .map(|k| {
            let (rows, cols) = (subsets[k].len(), subsets[k - 1].len());
            let mut data = vec![GaussianRational::zero(); rows * cols];
            for (col, s) in subsets[k - 1].iter().enumerate() {
                for (j, zj) in z.iter().enumerate() {
                    if zj.is_zero() || s.contains(&j) {
                        continue;
                    }
                    let before = s.iter().filter(|&&x| x < j).count();
                    let mut t = s.clone();
                    t.insert(before, j);
                    let row = index[k][t.as_slice()];
                    data[row * cols + col] = if before % 2 == 0 { zj.clone() } else { -zj };
                }
            }
            Matrix::new(rows, cols, data).expect("consistent shape")
        })
        .collect()
}

/// Sorted `k`-subsets of `0..n` in lexicographic order.
fn k_subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn go(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            go(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(0, n, k, &mut Vec::new(), &mut out);
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(n: i64) -> GaussianRational {
        GaussianRational::from_int(n)
    }

    #[test]
    fn descriptor_ranges() {
        assert!(FactorDescriptor::Symplectic { n: 3 }.validate().is_err());
        assert!(FactorDescriptor::Hermitian { n: 1 }.validate().is_err());
        assert!(FactorDescriptor::Rectangular { rows: 0, cols: 2 }.validate().is_err());
        assert!(FactorDescriptor::Spin { dim: 1 }.validate().is_err());
        assert!(build_factor(FactorDescriptor::Symplectic { n: 4 }).is_ok());
    }

    #[test]
    fn basis_sizes() {
        let f = build_factor(FactorDescriptor::Rectangular { rows: 2, cols: 3 }).unwrap();
        assert_eq!(f.dimension(), 6);
        let f = build_factor(FactorDescriptor::Hermitian { n: 2 }).unwrap();
        assert_eq!(
            f.basis,
            vec![
                Matrix::unit(2, 2, 0, 0),
                Matrix::unit(2, 2, 1, 1),
                &Matrix::unit(2, 2, 0, 1) + &Matrix::unit(2, 2, 1, 0)
            ]
        );
        let f = build_factor(FactorDescriptor::Spin { dim: 4 }).unwrap();
        assert_eq!(f.dimension(), 4);
        assert_eq!(f.ambient, (4, 4));
        let stacked = Matrix::from_rows(f.basis.iter().map(|b| b.entries().to_vec()).collect()).unwrap();
        assert_eq!(stacked.rank(), 4);
    }

    #[test]
    fn tripotent_examples() {
        let f = build_factor(FactorDescriptor::Rectangular { rows: 2, cols: 2 }).unwrap();
        assert!(f.is_tripotent(&Matrix::zeros(2, 2)).unwrap());
        let p = &Matrix::unit(2, 2, 0, 0) + &Matrix::unit(2, 2, 1, 1);
        assert!(f.is_tripotent(&p).unwrap());
        assert!(!f.is_tripotent(&Matrix::unit(2, 2, 0, 0).scale(&r(2))).unwrap());
    }

    #[test]
    fn symplectic_unit_is_tripotent() {
        let f = build_factor(FactorDescriptor::Symplectic { n: 4 }).unwrap();
        let a = &Matrix::unit(4, 4, 0, 1) - &Matrix::unit(4, 4, 1, 0);
        assert_eq!(f.triple_product(&a, &a, &a).unwrap(), a);
    }

    #[test]
    fn outside_span_is_rejected() {
        let f = build_factor(FactorDescriptor::Symplectic { n: 4 }).unwrap();
        let e = Matrix::unit(4, 4, 0, 0);
        assert_eq!(f.is_tripotent(&e), Err(Error::OutsideSpan));
        let h = build_factor(FactorDescriptor::Hermitian { n: 3 }).unwrap();
        assert_eq!(h.coordinates(&Matrix::unit(3, 3, 0, 1)), Err(Error::OutsideSpan));
    }

    #[test]
    fn peirce_eigenvalues_of_units() {
        let f = build_factor(FactorDescriptor::Rectangular { rows: 2, cols: 2 }).unwrap();
        let e11 = Matrix::unit(2, 2, 0, 0);
        assert_eq!(f.peirce_eigenvalue(&e11, &e11).unwrap(), Some(r(1)));
        assert_eq!(f.peirce_eigenvalue(&e11, &Matrix::unit(2, 2, 1, 1)).unwrap(), Some(r(0)));
        assert_eq!(f.peirce_eigenvalue(&e11, &Matrix::unit(2, 2, 0, 1)).unwrap(), Some(GaussianRational::ratio(1, 2)));
        let mixed = &Matrix::unit(2, 2, 0, 1) + &Matrix::unit(2, 2, 1, 1);
        assert_eq!(f.peirce_eigenvalue(&e11, &mixed).unwrap(), None);
        assert_eq!(f.peirce_eigenvalue(&e11.scale(&r(2)), &e11), Err(Error::NotTripotent));
    }

    #[test]
    fn class_vectors() {
        let f = build_factor(FactorDescriptor::Hermitian { n: 4 }).unwrap();
        assert_eq!(f.tripotent_class_vector(&Matrix::unit(4, 4, 2, 2)).unwrap(), vec![1]);
        let f = build_factor(FactorDescriptor::Rectangular { rows: 1, cols: 3 }).unwrap();
        assert_eq!(f.tripotent_class_vector(&Matrix::unit(1, 3, 0, 1)).unwrap(), vec![1, 2, 1]);
        let f = build_factor(FactorDescriptor::Rectangular { rows: 3, cols: 2 }).unwrap();
        let z = &Matrix::unit(3, 2, 0, 1) + &Matrix::unit(3, 2, 2, 0);
        assert_eq!(f.tripotent_class_vector(&z).unwrap(), vec![2, 2]);
        assert_eq!(f.tripotent_class_vector(&z.scale(&r(3))), Err(Error::NotTripotent));
    }

    #[test]
    fn spin_class_vectors() {
        // odd dim 2n+1, n = 2: identity (maximal) has rank 2ⁿ
        let f = build_factor(FactorDescriptor::Spin { dim: 5 }).unwrap();
        let id = Matrix::identity(4);
        assert_eq!(f.tripotent_class_vector(&id).unwrap(), vec![4]);
        // even dim 2n, n = 3: u₁ = ½(1 − s₁) is minimal with class (2^{n−2}, 2^{n−2})
        let f = build_factor(FactorDescriptor::Spin { dim: 6 }).unwrap();
        let u1 = (&f.basis[0] - &f.basis[1]).half();
        assert_eq!(f.tripotent_class_vector(&u1).unwrap(), vec![2, 2]);
        assert_eq!(f.tripotent_class_vector(&f.basis[0]).unwrap(), vec![4, 4]);
    }

    #[test]
    fn binomials() {
        assert_eq!(binomial(5, 2), 10);
        assert_eq!(binomial(4, 0), 1);
        assert_eq!(binomial(3, 4), 0);
        assert_eq!(tro_shapes(&FactorDescriptor::Rectangular { rows: 1, cols: 3 }), vec![(3, 1), (3, 3), (1, 3)]);
    }

    #[test]
    fn canonical_representatives() {
        use FactorDescriptor::*;
        assert_eq!(Rectangular { rows: 2, cols: 2 }.canonical(), Spin { dim: 4 });
        assert_eq!(Symplectic { n: 4 }.canonical(), Spin { dim: 6 });
        assert_eq!(Hermitian { n: 2 }.canonical(), Spin { dim: 3 });
        assert_eq!(Rectangular { rows: 3, cols: 1 }.canonical(), Rectangular { rows: 1, cols: 3 });
        assert_eq!(Hermitian { n: 5 }.canonical(), Hermitian { n: 5 });
    }
}
