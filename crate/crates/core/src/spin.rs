//! Pauli spin systems and the coordinate model of spin factors.
//!
//! A spin factor of dimension `d` is modelled two ways: abstractly as ℂᵈ
//! with the triple product
//! `{a,b,c} = ⟨a,b⟩c + ⟨c,b⟩a − ⟨a,c̄⟩b̄`, and concretely as the span of a
//! spin system `s₀ = 1, s₁, …` inside `2ⁿ×2ⁿ` matrices with the rectangular
//! ternary product. The two are identified by
//!
//! ```text
//! coordinate 0  ↦  i·s₀,      coordinate j ≥ 1  ↦  s_j
//! ```
//!
//! The factor `i` on the identity is forced: `s₀` commutes with every `s_j`
//! while the abstract basis vectors behave like mutually anticommuting
//! symmetries. With this choice the abstract inner product is the standard
//! one, so minimal tripotents satisfy `⟨e,e⟩ = ½` exactly.

use num_rational::BigRational;
use num_traits::One;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::matrix::Matrix;
use crate::report::VerificationReport;
use crate::scalar::GaussianRational;

/// `σ₁ = diag(1, −1)`.
pub fn sigma1() -> Matrix {
    Matrix::from_ints(2, 2, &[1, 0, 0, -1]).unwrap()
}

/// `σ₂` swaps the two basis vectors.
pub fn sigma2() -> Matrix {
    Matrix::from_ints(2, 2, &[0, 1, 1, 0]).unwrap()
}

/// `σ₃ = (0 i; −i 0)`.
pub fn sigma3() -> Matrix {
    Matrix::new(
        2,
        2,
        vec![
            GaussianRational::zero(),
            GaussianRational::i(),
            GaussianRational::int_pair(0, -1),
            GaussianRational::zero(),
        ],
    )
    .unwrap()
}

/// The spin system `s₀, s₁, …, s_{2n}` on `n` tensor factors (matrices of
/// size `2ⁿ`):
///
/// `s_{2l+1} = σ₃^{⊗l} ⊗ σ₁ ⊗ 1^{⊗(n−l−1)}`,
/// `s_{2l+2} = σ₃^{⊗l} ⊗ σ₂ ⊗ 1^{⊗(n−l−1)}` for `0 ≤ l < n`.
pub fn spin_system(n: usize) -> Result<Vec<Matrix>> {
    if n == 0 {
        return Err(Error::Domain("spin system needs at least one tensor factor".into()));
    }
    let id2 = Matrix::identity(2);
    let s3 = sigma3();
    let mut out = Vec::with_capacity(2 * n + 1);
    out.push(Matrix::identity(1 << n));
    for l in 0..n {
        let prefix = s3.tensor_power(l);
        let suffix = id2.tensor_power(n - l - 1);
        for sigma in [sigma1(), sigma2()] {
            out.push(prefix.tensor(&sigma).tensor(&suffix));
        }
    }
    Ok(out)
}

/// Checks `s_i s_j + s_j s_i = 2δ_{ij}·1` and `s_i* = s_i` for `1 ≤ i, j ≤ 2n`.
pub fn verify_spin_system(n: usize) -> Result<VerificationReport> {
    let s = spin_system(n)?;
    let size = 1 << n;
    let two = Matrix::identity(size).scale(&GaussianRational::from_int(2));
    let zero = Matrix::zeros(size, size);
    let mut rep = VerificationReport::new(format!("spin system n={n}"));
    let witness = (1..=2 * n).find(|&i| s[i].adjoint() != s[i]).map(|i| format!("s_{i} is not self-adjoint"));
    rep.push("self-adjoint", witness);
    let mut witness = None;
    'outer: for i in 1..=2 * n {
        for j in i..=2 * n {
            let ac = &s[i].mul(&s[j])? + &s[j].mul(&s[i])?;
            if ac != if i == j { two.clone() } else { zero.clone() } {
                witness = Some(format!("s_{i} s_{j} + s_{j} s_{i} is wrong"));
                break 'outer;
            }
        }
    }
    rep.push("anticommutation", witness);
    Ok(rep)
}

/// Number of tensor factors needed to realize a spin factor of dimension `dim`.
pub fn tensor_factors_for_dim(dim: usize) -> usize {
    dim / 2
}

/// Element of an abstract spin factor ℂᵈ.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SpinElement {
    pub coords: Vec<GaussianRational>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum SpinTripotentClass {
    Zero,
    Minimal,
    Maximal,
    NotTripotent,
}

impl SpinElement {
    pub fn new(coords: Vec<GaussianRational>) -> Self {
        Self { coords }
    }

    pub fn zero(dim: usize) -> Self {
        Self::new(vec![GaussianRational::zero(); dim])
    }

    pub fn basis(dim: usize, k: usize) -> Self {
        let mut e = Self::zero(dim);
        e.coords[k] = GaussianRational::one();
        e
    }

    pub fn dim(&self) -> usize {
        self.coords.len()
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(GaussianRational::is_zero)
    }

    /// Coordinatewise conjugation.
    pub fn conj(&self) -> Self {
        Self::new(self.coords.iter().map(GaussianRational::conj).collect())
    }

    /// `⟨a,b⟩ = Σ aᵢ·conj(bᵢ)`.
    pub fn inner(&self, other: &Self) -> Result<GaussianRational> {
        self.check_dim(other)?;
        let mut s = GaussianRational::zero();
        for (a, b) in self.coords.iter().zip(&other.coords) {
            s += &(a * &b.conj());
        }
        Ok(s)
    }

    pub fn scale(&self, k: &GaussianRational) -> Self {
        Self::new(self.coords.iter().map(|x| x * k).collect())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_dim(other)?;
        Ok(Self::new(self.coords.iter().zip(&other.coords).map(|(a, b)| a + b).collect()))
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.check_dim(other)?;
        Ok(Self::new(self.coords.iter().zip(&other.coords).map(|(a, b)| a - b).collect()))
    }

    fn check_dim(&self, other: &Self) -> Result<()> {
        if self.dim() != other.dim() {
            return Err(Error::Shape(format!(
                "spin elements of dimensions {} and {}",
                self.dim(),
                other.dim()
            )));
        }
        Ok(())
    }
}

/// `{a,b,c} = ⟨a,b⟩c + ⟨c,b⟩a − ⟨a,c̄⟩b̄`.
pub fn spin_triple(a: &SpinElement, b: &SpinElement, c: &SpinElement) -> Result<SpinElement> {
    let ab = a.inner(b)?;
    let cb = c.inner(b)?;
    let acbar = a.inner(&c.conj())?;
    c.scale(&ab).add(&a.scale(&cb))?.sub(&b.conj().scale(&acbar))
}

/// Splits nonzero tripotents into minimal (`⟨e,ē⟩ = 0`, `⟨e,e⟩ = ½`) and
/// maximal (`e = μr`, `|μ| = 1`, `r̄ = r`, `⟨r,r⟩ = 1`).
///
/// The maximal case is tested without extracting `μ`: `e` is a unimodular
/// multiple of a real unit vector iff `⟨e,e⟩ = 1` and `|⟨e,ē⟩| = ⟨e,e⟩`
/// (equality in Cauchy–Schwarz, since `‖ē‖ = ‖e‖`).
pub fn classify_spin_tripotent(e: &SpinElement) -> SpinTripotentClass {
    if e.is_zero() {
        return SpinTripotentClass::Zero;
    }
    let ee = e.inner(e).expect("same dimension").re;
    let e_ebar = e.inner(&e.conj()).expect("same dimension");
    let half = BigRational::new(1.into(), 2.into());
    if e_ebar.is_zero() && ee == half {
        SpinTripotentClass::Minimal
    } else if !e_ebar.is_zero() && ee.is_one() && e_ebar.norm_sqr().is_one() {
        SpinTripotentClass::Maximal
    } else {
        SpinTripotentClass::NotTripotent
    }
}

/// Matrix realization of an abstract spin element over the given spin
/// system basis (`system[0]` must be the identity).
pub fn to_matrix(e: &SpinElement, system: &[Matrix]) -> Result<Matrix> {
    if e.dim() > system.len() || e.dim() == 0 {
        return Err(Error::Shape(format!(
            "spin element of dimension {} for a system of {} matrices",
            e.dim(),
            system.len()
        )));
    }
    let n = system[0].rows();
    let mut m = Matrix::zeros(n, n);
    for (k, (c, s)) in e.coords.iter().zip(system).enumerate() {
        if c.is_zero() {
            continue;
        }
        let coeff = if k == 0 { c * &GaussianRational::i() } else { c.clone() };
        m = &m + &s.scale(&coeff);
    }
    Ok(m)
}

/// Inverse of [`to_matrix`] restricted to the span of `system[..dim]`.
/// Coefficients are read off with the normalized trace form, under which
/// the spin system is orthonormal, and then checked by re-expansion.
pub fn from_matrix(m: &Matrix, system: &[Matrix], dim: usize) -> Result<SpinElement> {
    if dim > system.len() || m.shape() != system[0].shape() {
        return Err(Error::Shape("matrix does not fit the spin system".into()));
    }
    let size = BigRational::from_integer((m.rows() as i64).into());
    let inv_size = BigRational::one() / size;
    let mut coords = Vec::with_capacity(dim);
    for (k, s) in system.iter().take(dim).enumerate() {
        let c = s.mul(m)?.trace()?.scale(&inv_size);
        coords.push(if k == 0 { &c * &GaussianRational::int_pair(0, -1) } else { c });
    }
    let e = SpinElement::new(coords);
    if &to_matrix(&e, system)? != m {
        return Err(Error::OutsideSpan);
    }
    Ok(e)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matrix::ternary_product;
    use num_traits::Zero;

    fn q(n: i64, d: i64) -> GaussianRational {
        GaussianRational::ratio(n, d)
    }

    #[test]
    fn pauli_squares_are_identity() {
        for s in [sigma1(), sigma2(), sigma3()] {
            assert_eq!(s.mul(&s).unwrap(), Matrix::identity(2));
            assert_eq!(s.adjoint(), s);
        }
    }

    #[test]
    fn small_systems_match_formulas() {
        let s = spin_system(1).unwrap();
        assert_eq!(s, vec![Matrix::identity(2), sigma1(), sigma2()]);
        let s = spin_system(2).unwrap();
        assert_eq!(s[3], sigma3().tensor(&sigma1()));
        assert_eq!(s[4], sigma3().tensor(&sigma2()));
        assert_eq!(s[1], sigma1().tensor(&Matrix::identity(2)));
        assert!(spin_system(0).is_err());
    }

    #[test]
    fn anticommutation_up_to_four() {
        for n in 1..=4 {
            let s = spin_system(n).unwrap();
            let id = Matrix::identity(1 << n);
            for i in 1..=2 * n {
                for j in 1..=2 * n {
                    let ac = &s[i].mul(&s[j]).unwrap() + &s[j].mul(&s[i]).unwrap();
                    let expected = if i == j { id.scale(&GaussianRational::from_int(2)) } else { Matrix::zeros(1 << n, 1 << n) };
                    assert_eq!(ac, expected, "n={n} i={i} j={j}");
                }
            }
        }
    }

    #[test]
    fn classification_examples() {
        let mut c = vec![q(1, 2), GaussianRational::new(BigRational::zero(), BigRational::new(1.into(), 2.into()))];
        c.extend(std::iter::repeat(GaussianRational::zero()).take(3));
        assert_eq!(classify_spin_tripotent(&SpinElement::new(c)), SpinTripotentClass::Minimal);
        let r = SpinElement::new(vec![q(3, 5), q(4, 5), q(0, 1)]);
        assert_eq!(classify_spin_tripotent(&r), SpinTripotentClass::Maximal);
        let mu = GaussianRational::new(BigRational::new(3.into(), 5.into()), BigRational::new((-4).into(), 5.into()));
        assert_eq!(classify_spin_tripotent(&r.scale(&mu)), SpinTripotentClass::Maximal);
        let bad = SpinElement::new(vec![q(1, 1), q(1, 1), q(0, 1)]);
        assert_eq!(classify_spin_tripotent(&bad), SpinTripotentClass::NotTripotent);
        assert_eq!(classify_spin_tripotent(&SpinElement::zero(4)), SpinTripotentClass::Zero);
    }

    #[test]
    fn minimal_normal_form_is_tripotent() {
        // e with ⟨e,e⟩ = ½ and ⟨e,ē⟩ = 0
        let e = SpinElement::new(vec![q(1, 2), GaussianRational::new(BigRational::zero(), BigRational::new(1.into(), 2.into())), q(0, 1)]);
        assert_eq!(spin_triple(&e, &e, &e).unwrap(), e);
    }

    #[test]
    fn abstract_and_matrix_products_agree_for_n1() {
        let sys = spin_system(1).unwrap();
        let dim = 3;
        for a in 0..dim {
            for b in 0..dim {
                for c in 0..dim {
                    let (ea, eb, ec) = (SpinElement::basis(dim, a), SpinElement::basis(dim, b), SpinElement::basis(dim, c));
                    let abstract_ = to_matrix(&spin_triple(&ea, &eb, &ec).unwrap(), &sys).unwrap();
                    let ambient = ternary_product(
                        &to_matrix(&ea, &sys).unwrap(),
                        &to_matrix(&eb, &sys).unwrap(),
                        &to_matrix(&ec, &sys).unwrap(),
                    )
                    .unwrap();
                    assert_eq!(abstract_, ambient, "basis triple ({a},{b},{c})");
                }
            }
        }
    }

    #[test]
    fn matrix_coordinates_roundtrip() {
        let sys = spin_system(2).unwrap();
        let e = SpinElement::new(vec![q(1, 2), GaussianRational::int_pair(0, 3), q(-1, 3), q(0, 1), q(2, 1)]);
        let m = to_matrix(&e, &sys).unwrap();
        assert_eq!(from_matrix(&m, &sys, 5).unwrap(), e);
        // s₄ is outside the span of s₀..s₃
        assert_eq!(from_matrix(&sys[4], &sys, 4), Err(Error::OutsideSpan));
    }
}
