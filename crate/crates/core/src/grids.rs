//! Standard grids and their labelling by the 1-part of a graded root system.

use std::collections::{BTreeMap, HashSet};

use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::factors::{build_factor, ConcreteFactor, FactorDescriptor};
use crate::matrix::{Matrix, MatrixJson};
use crate::report::VerificationReport;
use crate::roots::{build_graded_root_system, cartan_integer, GradedKind, GradedRootSystem, RootVector};
use crate::scalar::{self, GaussianRational};

#[derive(Clone, Debug)]
pub struct Grid {
    pub factor: ConcreteFactor,
    pub roots: GradedRootSystem,
    pub elements: Vec<Matrix>,
    pub names: Vec<String>,
    /// Index into `roots.roots` for each element.
    pub labels: Vec<usize>,
}

/// Root-pair invariant `(cartan_integer(β, α), ⟨α,α⟩, ⟨β,β⟩)` for an
/// ordered grid pair `(g_α, g_β)`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct PairInvariant {
    pub cartan: i64,
    pub norm_alpha: String,
    pub norm_beta: String,
}

pub type GridRootTable = BTreeMap<PairInvariant, String>;

/// Builds the standard grid of a factor together with its root labels.
pub fn build_grid(d: FactorDescriptor) -> Result<Grid> {
    let factor = build_factor(d)?;
    let roots = build_graded_root_system(GradedKind::for_factor(&d))?;
    let dim = roots.dim;
    let e = RootVector::unit;
    let mut elements = Vec::new();
    let mut names = Vec::new();
    let mut label_vecs = Vec::new();
    match d {
        FactorDescriptor::Rectangular { rows, cols } => {
            for i in 0..rows {
                for j in 0..cols {
                    elements.push(Matrix::unit(rows, cols, i, j));
                    names.push(format!("E_{{{},{}}}", i + 1, j + 1));
                    label_vecs.push(e(dim, j, 1).add(&e(dim, cols + i, -1)));
                }
            }
        }
        FactorDescriptor::Symplectic { n } => {
            for i in 0..n {
                for j in i + 1..n {
                    elements.push(&Matrix::unit(n, n, i, j) - &Matrix::unit(n, n, j, i));
                    names.push(format!("E_{{{0},{1}}}-E_{{{1},{0}}}", i + 1, j + 1));
                    label_vecs.push(e(dim, i, 1).add(&e(dim, j, 1)));
                }
            }
        }
        FactorDescriptor::Hermitian { n } => {
            for i in 0..n {
                elements.push(Matrix::unit(n, n, i, i));
                names.push(format!("E_{{{0},{0}}}", i + 1));
                label_vecs.push(e(dim, i, 2));
            }
            for i in 0..n {
                for j in i + 1..n {
                    elements.push(&Matrix::unit(n, n, i, j) + &Matrix::unit(n, n, j, i));
                    names.push(format!("E_{{{0},{1}}}+E_{{{1},{0}}}", i + 1, j + 1));
                    label_vecs.push(e(dim, i, 1).add(&e(dim, j, 1)));
                }
            }
        }
        FactorDescriptor::Spin { dim: fdim } => {
            let s = factor.spin_system().expect("spin factor").to_vec();
            let n = fdim / 2;
            let inf = n;
            let i = GaussianRational::i();
            elements.push((&s[0] - &s[1]).half());
            names.push("u_1".into());
            label_vecs.push(e(dim, inf, 1).add(&e(dim, 0, 1)));
            elements.push((&s[0] + &s[1]).half().scale(&GaussianRational::from_int(-1)));
            names.push("~u_1".into());
            label_vecs.push(e(dim, inf, 1).add(&e(dim, 0, -1)));
            for k in 1..n {
                let a = &s[2 * k];
                let b = s[2 * k + 1].scale(&i);
                elements.push((a + &b).half());
                names.push(format!("u_{}", k + 1));
                label_vecs.push(e(dim, inf, 1).add(&e(dim, k, 1)));
                elements.push((a - &b).half());
                names.push(format!("~u_{}", k + 1));
                label_vecs.push(e(dim, inf, 1).add(&e(dim, k, -1)));
            }
            if fdim % 2 == 1 {
                elements.push(s[2 * n].clone());
                names.push("u_0".into());
                label_vecs.push(e(dim, inf, 1));
            }
        }
    }
    let labels = label_vecs
        .iter()
        .map(|v| roots.index_of(v).ok_or_else(|| Error::Verification(format!("grid label {v:?} is not a root"))))
        .collect::<Result<_>>()?;
    Ok(Grid {
        factor,
        roots,
        elements,
        names,
        labels,
    })
}

impl Grid {
    pub fn descriptor(&self) -> FactorDescriptor {
        self.factor.descriptor
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn label(&self, k: usize) -> &RootVector {
        &self.roots.roots[self.labels[k]]
    }

    /// Symplectic grids are only claimed for `n ≥ 5`; `𝒮(4)` is built anyway.
    pub fn outside_standard_range(&self) -> bool {
        matches!(self.descriptor(), FactorDescriptor::Symplectic { n } if n < 5)
    }

    /// Replaces element `k` (used to build corrupted fixtures).
    pub fn with_element(mut self, k: usize, m: Matrix) -> Self {
        self.elements[k] = m;
        self
    }

    pub fn to_json(&self) -> GridJson {
        GridJson {
            factor: self.descriptor().to_string(),
            root_system: self.roots.label(),
            outside_standard_range: self.outside_standard_range(),
            elements: (0..self.len())
                .map(|k| GridElementJson {
                    name: self.names[k].clone(),
                    label: self.label(k).to_strings(),
                    coords: self
                        .factor
                        .coordinates(&self.elements[k])
                        .map(|c| c.iter().map(scalar::to_json_pair).collect())
                        .unwrap_or_default(),
                    matrix: self.elements[k].to_json(),
                })
                .collect(),
        }
    }

    /// Rebuilds a grid from its JSON form. Elements are taken from the
    /// matrices verbatim, so a corrupted fixture loads and then fails
    /// [`verify_grid`].
    pub fn from_json(j: &GridJson) -> Result<Self> {
        let d: FactorDescriptor = j.factor.parse()?;
        let factor = build_factor(d)?;
        let roots = build_graded_root_system(GradedKind::for_factor(&d))?;
        let mut elements = Vec::with_capacity(j.elements.len());
        let mut names = Vec::with_capacity(j.elements.len());
        let mut labels = Vec::with_capacity(j.elements.len());
        for el in &j.elements {
            elements.push(Matrix::from_json(&el.matrix)?);
            names.push(el.name.clone());
            let v = RootVector::from_strings(&el.label)?;
            labels.push(
                roots
                    .index_of(&v)
                    .ok_or_else(|| Error::Domain(format!("label {v:?} is not a root of {}", roots.label())))?,
            );
        }
        Ok(Self {
            factor,
            roots,
            elements,
            names,
            labels,
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GridElementJson {
    pub name: String,
    pub label: Vec<String>,
    pub coords: Vec<[String; 2]>,
    pub matrix: MatrixJson,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GridJson {
    pub factor: String,
    pub root_system: String,
    pub outside_standard_range: bool,
    pub elements: Vec<GridElementJson>,
}

fn pair_invariant(alpha: &RootVector, beta: &RootVector) -> PairInvariant {
    let c = cartan_integer(beta, alpha).expect("roots are nonzero");
    PairInvariant {
        cartan: i64::try_from(c.to_integer()).expect("small Cartan integer"),
        norm_alpha: scalar::rational_to_string(&alpha.dot(alpha)),
        norm_beta: scalar::rational_to_string(&beta.dot(beta)),
    }
}

fn allowed_eigenvalue(l: &GaussianRational) -> bool {
    l.is_real() && (l.re.is_zero() || l.re.is_one() || l.re == BigRational::new(1.into(), 2.into()))
}

/// Checks the bijection with `R₁`, tripotency, the Peirce eigenvalue range
/// and that the eigenvalue depends only on the root-pair invariant.
pub fn verify_grid(g: &Grid) -> VerificationReport {
    verify_grid_table(g).0
}

fn verify_grid_table(g: &Grid) -> (VerificationReport, GridRootTable) {
    let mut rep = VerificationReport::new(format!("grid of {}", g.descriptor()));

    let one: HashSet<usize> = g.roots.one_part.iter().copied().collect();
    let distinct: HashSet<usize> = g.labels.iter().copied().collect();
    let witness = if g.labels.len() != g.elements.len() {
        Some(format!("{} labels for {} elements", g.labels.len(), g.elements.len()))
    } else if distinct.len() != g.labels.len() {
        Some("labels are not pairwise distinct".to_string())
    } else if let Some(k) = (0..g.len()).find(|&k| !one.contains(&g.labels[k])) {
        Some(format!("label of {} is not in R1", g.names[k]))
    } else if g.len() != one.len() {
        Some(format!("{} elements but |R1| = {}", g.len(), one.len()))
    } else {
        None
    };
    rep.push("bijection with R1", witness);

    let tripotent: Vec<bool> = g.elements.iter().map(|z| g.factor.is_tripotent(z).unwrap_or(false)).collect();
    let witness = tripotent
        .iter()
        .position(|t| !t)
        .map(|k| format!("{} is not a tripotent", g.names[k]));
    rep.push("elements are tripotents", witness);

    let mut eigen_witness = None;
    let mut table: GridRootTable = BTreeMap::new();
    let mut table_witness = None;
    'pairs: for a in 0..g.len() {
        for b in 0..g.len() {
            let lambda = if tripotent[a] {
                g.factor.peirce_eigenvalue(&g.elements[a], &g.elements[b])
            } else {
                Err(Error::NotTripotent)
            };
            let lambda = match lambda {
                Ok(Some(l)) if allowed_eigenvalue(&l) => l,
                Ok(Some(l)) => {
                    eigen_witness = Some(format!("{{{0},{0},{1}}} = {2}·{1}", g.names[a], g.names[b], l));
                    break 'pairs;
                }
                Ok(None) => {
                    eigen_witness = Some(format!("{} is not an eigenvector of {}□{}", g.names[b], g.names[a], g.names[a]));
                    break 'pairs;
                }
                Err(e) => {
                    eigen_witness = Some(format!("pair ({}, {}): {e}", g.names[a], g.names[b]));
                    break 'pairs;
                }
            };
            if a >= g.labels.len() || b >= g.labels.len() {
                continue;
            }
            let key = pair_invariant(g.label(a), g.label(b));
            let value = lambda.to_string();
            match table.get(&key) {
                Some(prev) if *prev != value && table_witness.is_none() => {
                    table_witness = Some(format!(
                        "invariant {key:?} gives both {prev} and {value} (pair {}, {})",
                        g.names[a], g.names[b]
                    ));
                }
                Some(_) => {}
                None => {
                    table.insert(key, value);
                }
            }
        }
    }
    rep.push("Peirce eigenvalues in {0, 1/2, 1}", eigen_witness);
    rep.push("eigenvalue is a function of the root pair", table_witness);
    (rep, table)
}

/// The finite map from root-pair invariants to Peirce eigenvalues.
pub fn grid_root_table(g: &Grid) -> Result<GridRootTable> {
    let (rep, table) = verify_grid_table(g);
    if let Some(f) = rep.failures().next() {
        return Err(Error::Verification(format!("{}: {}", f.name, f.witness.clone().unwrap_or_default())));
    }
    Ok(table)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn key(cartan: i64, na: &str, nb: &str) -> PairInvariant {
        PairInvariant {
            cartan,
            norm_alpha: na.into(),
            norm_beta: nb.into(),
        }
    }

    #[test]
    fn rectangular_grid_exhausts_r1() {
        let g = build_grid(FactorDescriptor::Rectangular { rows: 2, cols: 3 }).unwrap();
        assert_eq!(g.len(), 6);
        assert_eq!(g.roots.label(), "A4");
        let rep = verify_grid(&g);
        assert!(rep.passed(), "{rep:?}");
    }

    #[test]
    fn spin_grid_of_dimension_six() {
        let g = build_grid(FactorDescriptor::Spin { dim: 6 }).unwrap();
        assert_eq!(g.names, vec!["u_1", "~u_1", "u_2", "~u_2", "u_3", "~u_3"]);
        assert_eq!(g.roots.label(), "D4");
        assert!(verify_grid(&g).passed());
    }

    #[test]
    fn odd_spin_grid_includes_u0() {
        let g = build_grid(FactorDescriptor::Spin { dim: 5 }).unwrap();
        assert_eq!(g.len(), 5);
        assert_eq!(g.names.last().unwrap(), "u_0");
        assert_eq!(*g.label(4), RootVector::unit(3, 2, 1));
        let rep = verify_grid(&g);
        assert!(rep.passed(), "{rep:?}");
    }

    #[test]
    fn hermitian_labels() {
        let g = build_grid(FactorDescriptor::Hermitian { n: 2 }).unwrap();
        let labels: Vec<RootVector> = (0..3).map(|k| g.label(k).clone()).collect();
        assert_eq!(
            labels,
            vec![RootVector::from_ints(&[2, 0]), RootVector::from_ints(&[0, 2]), RootVector::from_ints(&[1, 1])]
        );
        let h3 = build_grid(FactorDescriptor::Hermitian { n: 3 }).unwrap();
        let table = grid_root_table(&h3).unwrap();
        assert!(table.keys().any(|k| k.norm_beta == "4"));
    }

    #[test]
    fn doubled_element_fails_tripotency() {
        let g = build_grid(FactorDescriptor::Rectangular { rows: 2, cols: 2 }).unwrap();
        let doubled = g.elements[1].scale(&GaussianRational::from_int(2));
        let bad = g.with_element(1, doubled);
        let rep = verify_grid(&bad);
        let c = rep.check("elements are tripotents").unwrap();
        assert!(!c.passed);
        assert!(c.witness.as_ref().unwrap().contains("E_{1,2}"));
        assert!(grid_root_table(&bad).is_err());
    }

    #[test]
    fn rectangular_table_entries() {
        let g = build_grid(FactorDescriptor::Rectangular { rows: 2, cols: 2 }).unwrap();
        let t = grid_root_table(&g).unwrap();
        assert_eq!(t[&key(0, "2", "2")], "0");
        assert_eq!(t[&key(1, "2", "2")], "1/2");
        assert_eq!(t[&key(2, "2", "2")], "1");
    }

    #[test]
    fn json_roundtrip_keeps_grid() {
        let g = build_grid(FactorDescriptor::Spin { dim: 5 }).unwrap();
        let j = g.to_json();
        let back = Grid::from_json(&j).unwrap();
        assert_eq!(back.elements, g.elements);
        assert_eq!(back.labels, g.labels);
        assert!(verify_grid(&back).passed());
    }

    #[test]
    fn symplectic_four_is_flagged() {
        let g = build_grid(FactorDescriptor::Symplectic { n: 4 }).unwrap();
        assert!(g.outside_standard_range());
        assert!(verify_grid(&g).passed());
        assert!(!build_grid(FactorDescriptor::Symplectic { n: 5 }).unwrap().outside_standard_range());
    }
}
