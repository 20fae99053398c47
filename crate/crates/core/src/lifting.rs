//! Lifting K₀ morphisms between finite-dimensional TROs `⊕ᵢ 𝕄_{nᵢ,mᵢ}` to
//! block-diagonal multiplicity embeddings.
//!
//! Destination block `j` receives `matrix[j][i]` copies of source block `i`,
//! in ascending source order, followed by trailing zero padding.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::invariant::K0Morphism;
use crate::matrix::Matrix;
use crate::scalar::GaussianRational;

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct TroShape {
    pub summands: Vec<(usize, usize)>,
}

impl TroShape {
    pub fn new(summands: Vec<(usize, usize)>) -> Result<Self> {
        if summands.is_empty() || summands.iter().any(|&(n, m)| n == 0 || m == 0) {
            return Err(Error::Domain("TRO shape needs at least one summand with positive dimensions".into()));
        }
        Ok(Self { summands })
    }

    pub fn len(&self) -> usize {
        self.summands.len()
    }

    pub fn is_empty(&self) -> bool {
        self.summands.is_empty()
    }

    pub fn zero_element(&self) -> Vec<Matrix> {
        self.summands.iter().map(|&(n, m)| Matrix::zeros(n, m)).collect()
    }

    fn check_element(&self, x: &[Matrix]) -> Result<()> {
        if x.len() != self.len() || x.iter().zip(&self.summands).any(|(m, s)| m.shape() != *s) {
            return Err(Error::Shape(format!("element does not have shape {self}")));
        }
        Ok(())
    }
}

impl fmt::Display for TroShape {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.summands.iter().map(|(n, m)| format!("({n},{m})")).collect();
        write!(f, "[{}]", parts.join(","))
    }
}

/// Parses `[(2,3),(1,1)]`; whitespace is ignored.
impl FromStr for TroShape {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let compact: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        let parse_err = |message: &str| Error::Parse {
            position: 0,
            message: format!("{message} in TRO shape {s:?}"),
        };
        let inner = compact
            .strip_prefix('[')
            .and_then(|t| t.strip_suffix(']'))
            .ok_or_else(|| parse_err("expected [...]"))?;
        let mut summands = Vec::new();
        for part in inner.split("),") {
            let part = part.trim_start_matches('(').trim_end_matches(')');
            let (n, m) = part.split_once(',').ok_or_else(|| parse_err("expected (rows,cols)"))?;
            let n = n.parse().map_err(|_| parse_err("bad row count"))?;
            let m = m.parse().map_err(|_| parse_err("bad column count"))?;
            summands.push((n, m));
        }
        Self::new(summands)
    }
}

/// Contents of one destination block.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BlockLayout {
    /// Source summand of each diagonal copy, in order.
    pub copies: Vec<usize>,
    pub row_padding: usize,
    pub col_padding: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MultiplicityPlan {
    pub src: TroShape,
    pub dst: TroShape,
    pub matrix: K0Morphism,
    pub layout: Vec<BlockLayout>,
}

fn check_shape(src: &TroShape, dst: &TroShape, alpha: &K0Morphism) -> Result<()> {
    if alpha.cols() != src.len() || alpha.rows() != dst.len() {
        return Err(Error::Shape(format!(
            "{}×{} morphism between {} and {} summands",
            alpha.rows(),
            alpha.cols(),
            src.len(),
            dst.len()
        )));
    }
    Ok(())
}

fn first_violation(src: &TroShape, dst: &TroShape, alpha: &K0Morphism) -> Option<Error> {
    for (j, row) in alpha.matrix.iter().enumerate() {
        let (k, l) = dst.summands[j];
        let rows: u64 = row.iter().zip(&src.summands).map(|(a, s)| a * s.0 as u64).sum();
        let cols: u64 = row.iter().zip(&src.summands).map(|(a, s)| a * s.1 as u64).sum();
        if rows > k as u64 {
            return Some(Error::ScaleViolation {
                block: j,
                side: "left",
                sum: rows,
                bound: k as u64,
            });
        }
        if cols > l as u64 {
            return Some(Error::ScaleViolation {
                block: j,
                side: "right",
                sum: cols,
                bound: l as u64,
            });
        }
    }
    None
}

/// `Σᵢ a_{j,i} nᵢ ≤ k_j` and `Σᵢ a_{j,i} mᵢ ≤ l_j` for every destination block.
pub fn check_scale_conditions(src: &TroShape, dst: &TroShape, alpha: &K0Morphism) -> Result<bool> {
    check_shape(src, dst, alpha)?;
    Ok(first_violation(src, dst, alpha).is_none())
}

pub fn build_multiplicity_plan(src: &TroShape, dst: &TroShape, alpha: &K0Morphism) -> Result<MultiplicityPlan> {
    check_shape(src, dst, alpha)?;
    if let Some(e) = first_violation(src, dst, alpha) {
        return Err(e);
    }
    let layout = alpha
        .matrix
        .iter()
        .zip(&dst.summands)
        .map(|(row, &(k, l))| {
            let copies: Vec<usize> = row
                .iter()
                .enumerate()
                .flat_map(|(i, &a)| std::iter::repeat(i).take(a as usize))
                .collect();
            let used_rows: usize = copies.iter().map(|&i| src.summands[i].0).sum();
            let used_cols: usize = copies.iter().map(|&i| src.summands[i].1).sum();
            BlockLayout {
                copies,
                row_padding: k - used_rows,
                col_padding: l - used_cols,
            }
        })
        .collect();
    Ok(MultiplicityPlan {
        src: src.clone(),
        dst: dst.clone(),
        matrix: alpha.clone(),
        layout,
    })
}

/// Image of `x = x₁ ⊕ … ⊕ x_p` under the block-diagonal embedding.
pub fn apply_plan(plan: &MultiplicityPlan, x: &[Matrix]) -> Result<Vec<Matrix>> {
    plan.src.check_element(x)?;
    let mut out = Vec::with_capacity(plan.dst.len());
    for (block, &(k, l)) in plan.layout.iter().zip(&plan.dst.summands) {
        let mut data = vec![GaussianRational::zero(); k * l];
        let (mut r0, mut c0) = (0, 0);
        for &i in &block.copies {
            let xi = &x[i];
            for r in 0..xi.rows() {
                for c in 0..xi.cols() {
                    data[(r0 + r) * l + c0 + c] = xi.get(r, c).clone();
                }
            }
            r0 += xi.rows();
            c0 += xi.cols();
        }
        out.push(Matrix::new(k, l, data)?);
    }
    Ok(out)
}

/// Induced map on K₀, read off from ranks: generator `i` is the class of
/// the rank-one projection `e e*` with `e` the corner unit of summand `i`.
pub fn k0_of_plan(plan: &MultiplicityPlan) -> Result<K0Morphism> {
    let p = plan.src.len();
    let q = plan.dst.len();
    let mut matrix = vec![vec![0u64; p]; q];
    for i in 0..p {
        let mut x = plan.src.zero_element();
        let (n, m) = plan.src.summands[i];
        x[i] = Matrix::unit(n, m, 0, 0);
        for (j, y) in apply_plan(plan, &x)?.iter().enumerate() {
            matrix[j][i] = y.mul(&y.adjoint())?.rank() as u64;
        }
    }
    K0Morphism::new(matrix)
}

/// Blockwise `x y* z`.
pub fn tro_product(x: &[Matrix], y: &[Matrix], z: &[Matrix]) -> Result<Vec<Matrix>> {
    if x.len() != y.len() || y.len() != z.len() {
        return Err(Error::Shape("TRO elements with different numbers of blocks".into()));
    }
    x.iter()
        .zip(y)
        .zip(z)
        .map(|((a, b), c)| a.mul(&b.adjoint())?.mul(c))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn shape(s: &str) -> TroShape {
        s.parse().unwrap()
    }

    fn alpha(m: Vec<Vec<u64>>) -> K0Morphism {
        K0Morphism::new(m).unwrap()
    }

    #[test]
    fn parses_shapes() {
        assert_eq!(shape("[(2,3), (1,1)]").summands, vec![(2, 3), (1, 1)]);
        assert!("[(0,1)]".parse::<TroShape>().is_err());
        assert!("(2,3)".parse::<TroShape>().is_err());
        assert_eq!(shape("[(2,3),(1,1)]").to_string(), "[(2,3),(1,1)]");
    }

    #[test]
    fn scale_conditions() {
        let s = shape("[(2,2)]");
        assert!(check_scale_conditions(&s, &s, &K0Morphism::identity(1)).unwrap());
        assert!(check_scale_conditions(&s, &shape("[(5,5)]"), &alpha(vec![vec![2]])).unwrap());
        assert!(!check_scale_conditions(&s, &shape("[(3,3)]"), &alpha(vec![vec![2]])).unwrap());
        assert!(matches!(
            build_multiplicity_plan(&s, &shape("[(3,3)]"), &alpha(vec![vec![2]])),
            Err(Error::ScaleViolation { block: 0, side: "left", sum: 4, bound: 3 })
        ));
        assert!(check_scale_conditions(&s, &s, &K0Morphism::identity(2)).is_err());
    }

    #[test]
    fn layout_examples() {
        let plan = build_multiplicity_plan(&shape("[(1,1),(1,1)]"), &shape("[(3,3)]"), &alpha(vec![vec![1, 2]])).unwrap();
        assert_eq!(
            plan.layout,
            vec![BlockLayout {
                copies: vec![0, 1, 1],
                row_padding: 0,
                col_padding: 0
            }]
        );
        let x = vec![Matrix::from_ints(1, 1, &[2]).unwrap(), Matrix::from_ints(1, 1, &[3]).unwrap()];
        let y = apply_plan(&plan, &x).unwrap();
        assert_eq!(y, vec![Matrix::from_ints(3, 3, &[2, 0, 0, 0, 3, 0, 0, 0, 3]).unwrap()]);
        assert_eq!(k0_of_plan(&plan).unwrap(), alpha(vec![vec![1, 2]]));

        let plan = build_multiplicity_plan(&shape("[(2,3)]"), &shape("[(5,7)]"), &alpha(vec![vec![2]])).unwrap();
        assert_eq!(plan.layout[0].copies, vec![0, 0]);
        assert_eq!((plan.layout[0].row_padding, plan.layout[0].col_padding), (1, 1));
    }

    #[test]
    fn identity_plan_is_identity() {
        let s = shape("[(2,3),(1,2)]");
        let plan = build_multiplicity_plan(&s, &s, &K0Morphism::identity(2)).unwrap();
        assert!(plan.layout.iter().all(|b| b.row_padding == 0 && b.col_padding == 0));
        let x = vec![
            Matrix::from_ints(2, 3, &[1, 2, 3, 4, 5, 6]).unwrap(),
            Matrix::from_ints(1, 2, &[7, 8]).unwrap(),
        ];
        assert_eq!(apply_plan(&plan, &x).unwrap(), x);
        assert_eq!(apply_plan(&plan, &s.zero_element()).unwrap(), s.zero_element());
        assert_eq!(k0_of_plan(&plan).unwrap(), K0Morphism::identity(2));
    }

    fn element(shape: &TroShape, seed: &[i64]) -> Vec<Matrix> {
        let mut k = 0;
        shape
            .summands
            .iter()
            .map(|&(n, m)| {
                Matrix::from_fn(n, m, |_, _| {
                    k += 1;
                    GaussianRational::int_pair(seed[k % seed.len()], seed[(k * 7 + 3) % seed.len()])
                })
            })
            .collect()
    }

    proptest! {
        #[test]
        fn plan_is_ternary_multiplicative(
            a in prop::collection::vec(0u64..3, 2),
            seed in prop::collection::vec(-3i64..4, 5..11),
        ) {
            let src = shape("[(1,2),(2,1)]");
            let dst = TroShape::new(vec![(6, 6)]).unwrap();
            let alpha = K0Morphism::new(vec![a]).unwrap();
            let plan = build_multiplicity_plan(&src, &dst, &alpha).unwrap();
            let x = element(&src, &seed);
            let y = element(&src, &seed[1..]);
            let z = element(&src, &seed[2..]);
            let lhs = tro_product(&apply_plan(&plan, &x).unwrap(), &apply_plan(&plan, &y).unwrap(), &apply_plan(&plan, &z).unwrap()).unwrap();
            let rhs = apply_plan(&plan, &tro_product(&x, &y, &z).unwrap()).unwrap();
            prop_assert_eq!(lhs, rhs);
            prop_assert_eq!(k0_of_plan(&plan).unwrap(), alpha);
        }
    }
}
