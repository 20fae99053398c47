use kjb_core::factors::{build_factor, FactorDescriptor};
use kjb_core::grids::{build_grid, grid_root_table, verify_grid};
use kjb_core::matrix::ternary_product;
use kjb_core::spin::{classify_spin_tripotent, sigma1, sigma2, sigma3, spin_system, SpinElement, SpinTripotentClass};
use kjb_core::{GaussianRational, Matrix};

fn g(re: i64, im: i64) -> GaussianRational {
    GaussianRational::int_pair(re, im)
}

fn q(n: i64, d: i64) -> GaussianRational {
    GaussianRational::ratio(n, d)
}

fn ihalf() -> GaussianRational {
    &q(1, 2) * &GaussianRational::i()
}

#[test]
fn matrix_products() {
    let a = Matrix::from_ints(3, 2, &[1, 2, 3, 4, 5, 6]).unwrap();
    assert_eq!(Matrix::identity(3).mul(&a).unwrap(), a);
    assert_eq!(sigma1().mul(&sigma1()).unwrap(), Matrix::identity(2));
    assert_eq!(
        Matrix::unit(2, 3, 0, 1).mul(&Matrix::unit(3, 2, 1, 0)).unwrap(),
        Matrix::unit(2, 2, 0, 0)
    );
    assert!(a.mul(&a).is_err());
}

#[test]
fn adjoints() {
    let d = Matrix::from_ints(2, 2, &[3, 0, 0, -7]).unwrap();
    assert_eq!(d.adjoint(), d);
    assert_eq!(sigma3().adjoint(), sigma3());
    let ie12 = Matrix::unit(2, 2, 0, 1).scale(&GaussianRational::i());
    assert_eq!(ie12.adjoint(), Matrix::unit(2, 2, 1, 0).scale(&g(0, -1)));
}

#[test]
fn tensors_and_ranks() {
    assert_eq!(Matrix::identity(2).tensor(&Matrix::identity(2)), Matrix::identity(4));
    let s = spin_system(2).unwrap();
    assert_eq!(sigma3().tensor(&sigma1()), s[3]);
    assert_eq!(sigma3().tensor(&sigma2()), s[4]);
    assert_eq!(sigma1().tensor(&Matrix::identity(2)).rank(), 4);
    assert_eq!(Matrix::zeros(3, 4).rank(), 0);
    assert_eq!((&Matrix::unit(3, 3, 0, 0) + &Matrix::unit(3, 3, 1, 1)).rank(), 2);
    let s3 = spin_system(3).unwrap();
    let u1 = (&s3[0] - &s3[1]).half();
    assert_eq!(u1.rank(), 4);
}

#[test]
fn ternary_products() {
    let e11 = Matrix::unit(2, 2, 0, 0);
    assert_eq!(ternary_product(&e11, &e11, &e11).unwrap(), e11);
    let a = Matrix::from_ints(2, 2, &[1, 2, 3, 4]).unwrap();
    assert!(ternary_product(&a, &Matrix::zeros(2, 2), &a).unwrap().is_zero());
    let s = spin_system(2).unwrap();
    assert_eq!(ternary_product(&s[1], &s[1], &s[2]).unwrap(), s[2]);
}

#[test]
fn small_spin_system() {
    let s = spin_system(1).unwrap();
    assert_eq!(s, vec![Matrix::identity(2), sigma1(), sigma2()]);
}

#[test]
fn factor_bases() {
    let f = build_factor(FactorDescriptor::Rectangular { rows: 2, cols: 3 }).unwrap();
    assert_eq!(f.dimension(), 6);
    assert!(f.basis.iter().all(|b| b.entries().iter().filter(|x| !x.is_zero()).count() == 1));
    let h = build_factor(FactorDescriptor::Hermitian { n: 2 }).unwrap();
    assert_eq!(
        h.basis,
        vec![
            Matrix::unit(2, 2, 0, 0),
            Matrix::unit(2, 2, 1, 1),
            &Matrix::unit(2, 2, 0, 1) + &Matrix::unit(2, 2, 1, 0)
        ]
    );
    let sp = build_factor(FactorDescriptor::Spin { dim: 4 }).unwrap();
    assert_eq!(sp.dimension(), 4);
    assert_eq!(sp.ambient, (4, 4));
    let stacked = Matrix::from_rows(sp.basis.iter().map(|b| b.entries().to_vec()).collect()).unwrap();
    assert_eq!(stacked.rank(), 4);
}

#[test]
fn span_closed_on_basis_triples() {
    for d in [
        FactorDescriptor::Rectangular { rows: 2, cols: 3 },
        FactorDescriptor::Symplectic { n: 4 },
        FactorDescriptor::Hermitian { n: 3 },
        FactorDescriptor::Spin { dim: 5 },
        FactorDescriptor::Spin { dim: 6 },
    ] {
        let f = build_factor(d).unwrap();
        for a in &f.basis {
            for b in &f.basis {
                for c in &f.basis {
                    let t = f.ambient_triple_product(a, b, c).unwrap();
                    assert!(f.contains(&t), "{d}: ambient product leaves the span");
                    assert_eq!(f.triple_product(a, b, c).unwrap(), t, "{d}: abstract and matrix products differ");
                }
            }
        }
    }
}

#[test]
fn triple_product_examples() {
    let f = build_factor(FactorDescriptor::Rectangular { rows: 2, cols: 2 }).unwrap();
    let e11 = Matrix::unit(2, 2, 0, 0);
    assert_eq!(f.triple_product(&e11, &e11, &e11).unwrap(), e11);
    let ii = build_factor(FactorDescriptor::Symplectic { n: 4 }).unwrap();
    let x = &Matrix::unit(4, 4, 0, 1) - &Matrix::unit(4, 4, 1, 0);
    assert_eq!(ii.triple_product(&x, &x, &x).unwrap(), x);
    let sp = build_factor(FactorDescriptor::Spin { dim: 3 }).unwrap();
    let e = SpinElement::new(vec![q(1, 2), ihalf(), q(0, 1)]);
    let z = sp.spin_to_matrix(&e).unwrap();
    assert_eq!(sp.triple_product(&z, &z, &z).unwrap(), z);
}

#[test]
fn tripotency_examples() {
    let f = build_factor(FactorDescriptor::Rectangular { rows: 2, cols: 2 }).unwrap();
    assert!(f.is_tripotent(&Matrix::zeros(2, 2)).unwrap());
    assert!(f.is_tripotent(&Matrix::identity(2)).unwrap());
    assert!(!f.is_tripotent(&Matrix::unit(2, 2, 0, 0).scale(&g(2, 0))).unwrap());
}

#[test]
fn spin_classification_examples() {
    let minimal = SpinElement::new(vec![q(1, 2), ihalf(), q(0, 1), q(0, 1)]);
    assert_eq!(classify_spin_tripotent(&minimal), SpinTripotentClass::Minimal);
    let r = SpinElement::new(vec![q(3, 5), q(0, 1), q(4, 5)]);
    assert_eq!(classify_spin_tripotent(&r), SpinTripotentClass::Maximal);
    let bad = SpinElement::new(vec![q(1, 1), q(1, 1), q(0, 1)]);
    assert_eq!(classify_spin_tripotent(&bad), SpinTripotentClass::NotTripotent);
    assert_eq!(classify_spin_tripotent(&SpinElement::zero(3)), SpinTripotentClass::Zero);
}

#[test]
fn class_vectors() {
    let h = build_factor(FactorDescriptor::Hermitian { n: 4 }).unwrap();
    assert_eq!(h.tripotent_class_vector(&Matrix::unit(4, 4, 2, 2)).unwrap(), vec![1]);
    assert!(h.tripotent_class_vector(&Matrix::unit(4, 4, 2, 2).scale(&g(2, 0))).is_err());

    // odd dim 2n+1 = 7, n = 3: maximal ↦ 2³
    let odd = build_factor(FactorDescriptor::Spin { dim: 7 }).unwrap();
    let r = odd.spin_to_matrix(&SpinElement::basis(7, 4)).unwrap();
    assert_eq!(odd.tripotent_class_vector(&r).unwrap(), vec![8]);

    // even dim 2n = 8, n = 4: minimal ↦ (2², 2²)
    let even = build_factor(FactorDescriptor::Spin { dim: 8 }).unwrap();
    let mut c = vec![q(0, 1); 8];
    c[2] = q(1, 2);
    c[5] = ihalf();
    let e = even.spin_to_matrix(&SpinElement::new(c)).unwrap();
    assert_eq!(even.tripotent_class_vector(&e).unwrap(), vec![4, 4]);
}

#[test]
fn peirce_examples() {
    let f = build_factor(FactorDescriptor::Rectangular { rows: 2, cols: 2 }).unwrap();
    let e11 = Matrix::unit(2, 2, 0, 0);
    assert_eq!(f.peirce_eigenvalue(&e11, &e11).unwrap(), Some(q(1, 1)));
    assert_eq!(f.peirce_eigenvalue(&e11, &Matrix::unit(2, 2, 1, 1)).unwrap(), Some(q(0, 1)));
    assert_eq!(f.peirce_eigenvalue(&e11, &Matrix::unit(2, 2, 0, 1)).unwrap(), Some(q(1, 2)));
    let mixed = &Matrix::unit(2, 2, 0, 1) + &Matrix::unit(2, 2, 1, 1);
    assert_eq!(f.peirce_eigenvalue(&e11, &mixed).unwrap(), None);
    assert!(f.peirce_eigenvalue(&e11.scale(&g(2, 0)), &e11).is_err());
}

#[test]
fn grid_examples() {
    let r33 = build_grid(FactorDescriptor::Rectangular { rows: 3, cols: 3 }).unwrap();
    assert!(verify_grid(&r33).passed());
    for a in 0..r33.len() {
        for b in 0..r33.len() {
            let lambda = r33.factor.peirce_eigenvalue(&r33.elements[a], &r33.elements[b]).unwrap().unwrap();
            let orthogonal = r33.label(a).dot(r33.label(b)) == q(0, 1).re;
            assert_eq!(lambda.is_zero(), orthogonal, "{} vs {}", r33.names[a], r33.names[b]);
        }
    }
    let h3 = build_grid(FactorDescriptor::Hermitian { n: 3 }).unwrap();
    let t = grid_root_table(&h3).unwrap();
    assert!(t.keys().any(|k| k.norm_alpha == "4" || k.norm_beta == "4"));
}
