//! 3-graded root systems attached to the classical Cartan factors.
//!
//! Coordinates are rational and taken w.r.t. an orthonormal basis. Type I
//! systems live in the sum-zero subspace of `ℓ²(m+n)`; spin systems carry
//! the `e_∞` coordinate last.

use std::collections::{HashMap, HashSet, VecDeque};
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::factors::FactorDescriptor;
use crate::matrix::Matrix;
use crate::report::VerificationReport;
use crate::scalar::{self, GaussianRational};

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct RootVector {
    pub coords: Vec<BigRational>,
}

impl RootVector {
    pub fn new(coords: Vec<BigRational>) -> Self {
        Self { coords }
    }

    pub fn from_ints(coords: &[i64]) -> Self {
        Self::new(coords.iter().map(|&x| BigRational::from_integer(x.into())).collect())
    }

    pub fn zero(dim: usize) -> Self {
        Self::new(vec![BigRational::zero(); dim])
    }

    /// `c·e_k` in dimension `dim`.
    pub fn unit(dim: usize, k: usize, c: i64) -> Self {
        let mut v = Self::zero(dim);
        v.coords[k] = BigRational::from_integer(c.into());
        v
    }

    pub fn dim(&self) -> usize {
        self.coords.len()
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(Zero::is_zero)
    }

    pub fn dot(&self, other: &Self) -> BigRational {
        self.coords.iter().zip(&other.coords).map(|(a, b)| a * b).sum()
    }

    pub fn add(&self, other: &Self) -> Self {
        Self::new(self.coords.iter().zip(&other.coords).map(|(a, b)| a + b).collect())
    }

    pub fn sub(&self, other: &Self) -> Self {
        Self::new(self.coords.iter().zip(&other.coords).map(|(a, b)| a - b).collect())
    }

    pub fn neg(&self) -> Self {
        Self::new(self.coords.iter().map(|a| -a).collect())
    }

    pub fn scale(&self, k: &BigRational) -> Self {
        Self::new(self.coords.iter().map(|a| a * k).collect())
    }

    pub fn to_strings(&self) -> Vec<String> {
        self.coords.iter().map(scalar::rational_to_string).collect()
    }

    pub fn from_strings(s: &[String]) -> Result<Self> {
        Ok(Self::new(s.iter().map(|x| scalar::parse_rational(x)).collect::<Result<_>>()?))
    }
}

impl fmt::Debug for RootVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({})", self.to_strings().join(", "))
    }
}

/// `s_α(x) = x − 2⟨x,α⟩/⟨α,α⟩·α`.
pub fn reflect(alpha: &RootVector, x: &RootVector) -> Result<RootVector> {
    let aa = alpha.dot(alpha);
    if aa.is_zero() {
        return Err(Error::Domain("reflection in the zero vector".into()));
    }
    let k = BigRational::from_integer(2.into()) * x.dot(alpha) / aa;
    Ok(x.sub(&alpha.scale(&k)))
}

/// `2⟨α,β⟩/⟨β,β⟩` as an exact rational.
pub fn cartan_integer(alpha: &RootVector, beta: &RootVector) -> Result<BigRational> {
    let bb = beta.dot(beta);
    if bb.is_zero() {
        return Err(Error::Domain("Cartan integer against the zero vector".into()));
    }
    Ok(BigRational::from_integer(2.into()) * alpha.dot(beta) / bb)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum RootFamily {
    A,
    B,
    C,
    D,
    /// Hand-built sets, e.g. counterexamples.
    Custom,
}

/// Which Cartan factor family (and grid) a graded system belongs to.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum GradedKind {
    /// `𝒜_{m+n−1}` with `R₁ = {e_i − e_{m+j}}`.
    Rectangular { n: usize, m: usize },
    /// `𝒟_n` with `R₁ = {e_i + e_j, i ≠ j}`.
    Symplectic { n: usize },
    /// `𝒞_n` with `R₁ = {e_i + e_j}`.
    Hermitian { n: usize },
    /// `𝒟_{n+1}` with `R₁ = {e_∞ ± e_i}`; the grid has `2n` elements.
    SpinEven { n: usize },
    /// `ℬ_{n+1}` with `R₁ = {e_∞ ± e_i} ∪ {e_∞}`; the grid has `2n+1` elements.
    SpinOdd { n: usize },
}

impl GradedKind {
    /// Graded system associated to a factor's standard grid.
    pub fn for_factor(d: &FactorDescriptor) -> Self {
        match *d {
            FactorDescriptor::Rectangular { rows, cols } => Self::Rectangular { n: rows, m: cols },
            FactorDescriptor::Symplectic { n } => Self::Symplectic { n },
            FactorDescriptor::Hermitian { n } => Self::Hermitian { n },
            FactorDescriptor::Spin { dim } if dim % 2 == 0 => Self::SpinEven { n: dim / 2 },
            FactorDescriptor::Spin { dim } => Self::SpinOdd { n: dim / 2 },
        }
    }

    pub fn rank(&self) -> usize {
        match *self {
            Self::Rectangular { n, m } => n + m - 1,
            Self::Symplectic { n } | Self::Hermitian { n } => n,
            Self::SpinEven { n } | Self::SpinOdd { n } => n + 1,
        }
    }

    fn params(&self) -> Vec<usize> {
        match *self {
            Self::Rectangular { n, m } => vec![n, m],
            Self::Symplectic { n } | Self::Hermitian { n } | Self::SpinEven { n } | Self::SpinOdd { n } => vec![n],
        }
    }
}

/// Subspace `X` the roots are required to span.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Ambient {
    Full,
    SumZero,
}

#[derive(Clone, Debug)]
pub struct GradedRootSystem {
    pub family: RootFamily,
    pub kind: Option<GradedKind>,
    pub dim: usize,
    pub ambient: Ambient,
    pub roots: Vec<RootVector>,
    /// Indices into `roots`.
    pub one_part: Vec<usize>,
    index: HashMap<RootVector, usize>,
}

/// JSON form `{family, params, dim, roots, one_part}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RootSystemJson {
    pub family: RootFamily,
    pub params: Vec<usize>,
    pub dim: usize,
    pub roots: Vec<Vec<String>>,
    pub one_part: Vec<usize>,
}

pub fn build_graded_root_system(kind: GradedKind) -> Result<GradedRootSystem> {
    let e = RootVector::unit;
    let out_of_range = |what: &str| Err(Error::Domain(format!("{kind:?}: {what}")));
    let (family, dim, ambient, roots, one): (RootFamily, usize, Ambient, Vec<RootVector>, Vec<RootVector>) = match kind {
        GradedKind::Rectangular { n, m } => {
            if n < 1 || m < 1 {
                return out_of_range("n, m must be at least 1");
            }
            let d = n + m;
            let mut roots = Vec::new();
            for k in 0..d {
                for l in 0..d {
                    if k != l {
                        roots.push(e(d, k, 1).add(&e(d, l, -1)));
                    }
                }
            }
            let one = (0..m)
                .flat_map(|i| (0..n).map(move |j| (i, j)))
                .map(|(i, j)| e(d, i, 1).add(&e(d, m + j, -1)))
                .collect();
            (RootFamily::A, d, Ambient::SumZero, roots, one)
        }
        GradedKind::Symplectic { n } => {
            if n < 4 {
                return out_of_range("n must be at least 4");
            }
            let one = pairs(n, false).map(|(i, j)| e(n, i, 1).add(&e(n, j, 1))).collect();
            (RootFamily::D, n, Ambient::Full, d_roots(n), one)
        }
        GradedKind::Hermitian { n } => {
            if n < 2 {
                return out_of_range("n must be at least 2");
            }
            let mut roots = d_roots(n);
            for i in 0..n {
                roots.push(e(n, i, 2));
                roots.push(e(n, i, -2));
            }
            let one = pairs(n, true).map(|(i, j)| e(n, i, 1).add(&e(n, j, 1))).collect();
            (RootFamily::C, n, Ambient::Full, roots, one)
        }
        GradedKind::SpinEven { n } | GradedKind::SpinOdd { n } => {
            if n < 1 {
                return out_of_range("n must be at least 1");
            }
            let d = n + 1;
            let inf = n;
            let mut roots = d_roots(d);
            let mut one: Vec<RootVector> = (0..n)
                .flat_map(|i| [e(d, inf, 1).add(&e(d, i, 1)), e(d, inf, 1).add(&e(d, i, -1))])
                .collect();
            let family = if let GradedKind::SpinOdd { .. } = kind {
                for i in 0..d {
                    roots.push(e(d, i, 1));
                    roots.push(e(d, i, -1));
                }
                one.push(e(d, inf, 1));
                RootFamily::B
            } else {
                RootFamily::D
            };
            (family, d, Ambient::Full, roots, one)
        }
    };
    let mut sys = GradedRootSystem::custom(dim, ambient, roots, &one)?;
    sys.family = family;
    sys.kind = Some(kind);
    Ok(sys)
}

/// `{±e_i ± e_j : i < j}` in dimension `n`.
fn d_roots(n: usize) -> Vec<RootVector> {
    let mut roots = Vec::new();
    for (i, j) in pairs(n, false) {
        for (si, sj) in [(1, 1), (1, -1), (-1, 1), (-1, -1)] {
            roots.push(RootVector::unit(n, i, si).add(&RootVector::unit(n, j, sj)));
        }
    }
    roots
}

fn pairs(n: usize, diagonal: bool) -> impl Iterator<Item = (usize, usize)> {
    (0..n).flat_map(move |i| ((if diagonal { i } else { i + 1 })..n).map(move |j| (i, j)))
}

impl GradedRootSystem {
    /// A hand-built graded set. Duplicate roots are merged; every element of
    /// `one_part` must be one of the roots.
    pub fn custom(dim: usize, ambient: Ambient, roots: Vec<RootVector>, one_part: &[RootVector]) -> Result<Self> {
        if roots.iter().any(|r| r.dim() != dim) {
            return Err(Error::Shape(format!("all roots must have dimension {dim}")));
        }
        let mut unique = Vec::with_capacity(roots.len());
        let mut index = HashMap::new();
        for r in roots {
            if !index.contains_key(&r) {
                index.insert(r.clone(), unique.len());
                unique.push(r);
            }
        }
        let mut one = Vec::with_capacity(one_part.len());
        for r in one_part {
            match index.get(r) {
                Some(&i) if !one.contains(&i) => one.push(i),
                Some(_) => {}
                None => return Err(Error::Domain(format!("1-part element {r:?} is not a root"))),
            }
        }
        Ok(Self {
            family: RootFamily::Custom,
            kind: None,
            dim,
            ambient,
            roots: unique,
            one_part: one,
            index,
        })
    }

    pub fn len(&self) -> usize {
        self.roots.len()
    }

    pub fn is_empty(&self) -> bool {
        self.roots.is_empty()
    }

    pub fn contains(&self, v: &RootVector) -> bool {
        self.index.contains_key(v)
    }

    pub fn index_of(&self, v: &RootVector) -> Option<usize> {
        self.index.get(v).copied()
    }

    pub fn one_part_roots(&self) -> impl Iterator<Item = &RootVector> {
        self.one_part.iter().map(|&i| &self.roots[i])
    }

    /// `R₋₁ = −R₁ ∩ R`, as indices.
    pub fn minus_one_part(&self) -> Vec<usize> {
        self.one_part_roots().filter_map(|r| self.index_of(&r.neg())).collect()
    }

    /// `R₀ = R ∖ (R₁ ∪ R₋₁)`, as indices.
    pub fn zero_part(&self) -> Vec<usize> {
        let graded: HashSet<usize> = self.one_part.iter().copied().chain(self.minus_one_part()).collect();
        (0..self.len()).filter(|i| !graded.contains(i)).collect()
    }

    pub fn label(&self) -> String {
        let letter = match self.family {
            RootFamily::A => "A",
            RootFamily::B => "B",
            RootFamily::C => "C",
            RootFamily::D => "D",
            RootFamily::Custom => "?",
        };
        format!("{letter}{}", self.kind.map_or(self.dim, |k| k.rank()))
    }

    /// Cartan integer of two members; errors if either is not a root or the
    /// value is not integral.
    pub fn cartan_integer_of(&self, alpha: &RootVector, beta: &RootVector) -> Result<i64> {
        if !self.contains(alpha) || !self.contains(beta) {
            return Err(Error::Domain("Cartan integer of non-roots".into()));
        }
        let c = cartan_integer(alpha, beta)?;
        if !c.is_integer() {
            return Err(Error::Domain(format!("non-integral Cartan integer {c} for {alpha:?}, {beta:?}")));
        }
        Ok(i64::try_from(c.to_integer()).expect("small Cartan integer"))
    }

    pub fn to_json(&self) -> RootSystemJson {
        RootSystemJson {
            family: self.family,
            params: self.kind.map(|k| k.params()).unwrap_or_default(),
            dim: self.dim,
            roots: self.roots.iter().map(RootVector::to_strings).collect(),
            one_part: self.one_part.clone(),
        }
    }
}

fn rational_rank(vectors: &[&RootVector], dim: usize) -> usize {
    if vectors.is_empty() || dim == 0 {
        return 0;
    }
    let data = vectors
        .iter()
        .flat_map(|v| v.coords.iter().map(|c| GaussianRational::real(c.clone())))
        .collect();
    Matrix::new(vectors.len(), dim, data).expect("consistent shape").rank()
}

/// Root system axioms (a)–(d).
pub fn verify_root_axioms(r: &GradedRootSystem) -> VerificationReport {
    let mut rep = VerificationReport::new(format!("root axioms for {}", r.label()));

    // (a) finite, spans X, no zero
    let witness = if let Some(z) = r.roots.iter().find(|v| v.is_zero()) {
        Some(format!("zero vector {z:?} is a root"))
    } else {
        let all: Vec<&RootVector> = r.roots.iter().collect();
        let (target, outside) = match r.ambient {
            Ambient::Full => (r.dim, None),
            Ambient::SumZero => (
                r.dim.saturating_sub(1),
                r.roots.iter().find(|v| !v.coords.iter().sum::<BigRational>().is_zero()),
            ),
        };
        let rank = rational_rank(&all, r.dim);
        if let Some(v) = outside {
            Some(format!("{v:?} lies outside the sum-zero subspace"))
        } else if rank != target {
            Some(format!("roots span a space of dimension {rank}, expected {target}"))
        } else {
            None
        }
    };
    rep.push("root-(a) finite, spanning, no zero", witness);

    // (b) closed under reflections
    let witness = r.roots.iter().find_map(|a| {
        if a.is_zero() {
            return None;
        }
        r.roots.iter().find_map(|x| {
            let s = reflect(a, x).expect("nonzero root");
            (!r.contains(&s)).then(|| format!("s_{a:?}({x:?}) = {s:?} is not a root"))
        })
    });
    rep.push("root-(b) reflection closure", witness);

    // (c) integral Cartan numbers
    let witness = r.roots.iter().find_map(|a| {
        r.roots.iter().filter(|b| !b.is_zero()).find_map(|b| {
            let c = cartan_integer(a, b).expect("nonzero root");
            (!c.is_integer()).then(|| format!("2<{a:?},{b:?}>/<{b:?},{b:?}> = {c}"))
        })
    });
    rep.push("root-(c) integral Cartan numbers", witness);

    // (d) only ±α on the line through α
    let witness = r.roots.iter().filter(|a| !a.is_zero()).find_map(|a| {
        if !r.contains(&a.neg()) {
            return Some(format!("-{a:?} is not a root"));
        }
        r.roots.iter().find_map(|b| {
            let parallel = rational_rank(&[a, b], r.dim) < 2;
            let ok = *b == *a || *b == a.neg();
            (parallel && !ok).then(|| format!("{a:?} and {b:?} are proportional"))
        })
    });
    rep.push("root-(d) reduced", witness);
    rep
}

/// Grading axioms (d)–(h). Axiom (f) is checked in the form
/// `R₀ = {α − β : α, β ∈ R₁, α ≠ β, ⟨α,β⟩ ≠ 0}`.
pub fn verify_grading_axioms(r: &GradedRootSystem) -> VerificationReport {
    let mut rep = VerificationReport::new(format!("grading axioms for {}", r.label()));
    let one: Vec<&RootVector> = r.one_part_roots().collect();
    let one_set: HashSet<&RootVector> = one.iter().copied().collect();

    // (d) R = R₁ ⊔ R₀ ⊔ R₋₁
    let witness = one.iter().find(|a| one_set.contains(&a.neg())).map(|a| format!("{a:?} and its negative are both in R₁"));
    rep.push("grading-(d) disjoint decomposition", witness);

    // (e) R₋₁ = −R₁
    let witness = one.iter().find(|a| !r.contains(&a.neg())).map(|a| format!("-{a:?} is not a root"));
    rep.push("grading-(e) R-1 = -R1", witness);

    // (f) R₀ is generated by differences of non-orthogonal 1-roots
    let zero: HashSet<&RootVector> = r.zero_part().into_iter().map(|i| &r.roots[i]).collect();
    let mut diffs: HashSet<RootVector> = HashSet::new();
    for a in &one {
        for b in &one {
            if a != b && !a.dot(b).is_zero() {
                diffs.insert(a.sub(b));
            }
        }
    }
    let witness = diffs
        .iter()
        .find(|d| !zero.contains(d))
        .map(|d| format!("difference {d:?} of 1-roots is not in R0"))
        .or_else(|| zero.iter().find(|z| !diffs.contains(**z)).map(|z| format!("{z:?} in R0 is not a difference of 1-roots")));
    rep.push("grading-(f) R0 from differences", witness);

    // (g) α + β ∉ R for α, β ∈ R₁
    let witness = one.iter().find_map(|a| {
        one.iter().find_map(|b| {
            let s = a.add(b);
            r.contains(&s).then(|| format!("{a:?} + {b:?} = {s:?} is a root"))
        })
    });
    rep.push("grading-(g) no sums in R1+R1", witness);

    // (h) R₀ + R₁ ∩ R ⊆ R₁
    let witness = zero.iter().find_map(|a| {
        one.iter().find_map(|b| {
            let s = a.add(b);
            (r.contains(&s) && !one_set.contains(&s)).then(|| format!("{a:?} + {b:?} = {s:?} is a root outside R1"))
        })
    });
    rep.push("grading-(h) R0 + R1 stays in R1", witness);
    rep
}

/// Connectivity of the non-orthogonality graph on the roots.
pub fn is_irreducible(r: &GradedRootSystem) -> Result<bool> {
    if r.is_empty() {
        return Err(Error::Domain("irreducibility of the empty root set".into()));
    }
    let n = r.len();
    let mut seen = vec![false; n];
    let mut queue = VecDeque::from([0]);
    seen[0] = true;
    while let Some(i) = queue.pop_front() {
        for j in 0..n {
            if !seen[j] && !r.roots[i].dot(&r.roots[j]).is_zero() {
                seen[j] = true;
                queue.push_back(j);
            }
        }
    }
    Ok(seen.into_iter().all(|s| s))
}

/// Simple roots w.r.t. a generic linear functional: the positive roots that
/// are not sums of two positive roots. They form a ℤ-basis of the root
/// lattice of a (reduced, crystallographic) root system.
pub fn simple_roots(r: &GradedRootSystem) -> Vec<RootVector> {
    // weights d, d−1, …, 1 plus a tiny tail to break ties if needed
    let functional = |attempt: i64| -> Vec<BigRational> {
        (0..r.dim)
            .map(|k| {
                let base = BigRational::from_integer(((r.dim - k) as i64).into());
                base + BigRational::new(BigInt::from(attempt * (k as i64 + 1)), BigInt::from(7919 * (k as i64 + 3)))
            })
            .collect()
    };
    let eval = |w: &[BigRational], v: &RootVector| -> BigRational { w.iter().zip(&v.coords).map(|(a, b)| a * b).sum() };
    let w = (0..)
        .map(functional)
        .find(|w| r.roots.iter().all(|v| !eval(w, v).is_zero()))
        .expect("a generic functional exists");
    let positive: Vec<&RootVector> = r.roots.iter().filter(|v| eval(&w, v).is_positive()).collect();
    let pos_set: HashSet<&RootVector> = positive.iter().copied().collect();
    positive
        .iter()
        .filter(|v| !positive.iter().any(|a| a != *v && pos_set.contains(&v.sub(a))))
        .map(|v| (*v).clone())
        .collect()
}

/// Integer coordinates of `v` over the simple roots of `r`, or `None` if
/// `v` is not in the root lattice.
pub fn root_lattice_coordinates(r: &GradedRootSystem, v: &RootVector) -> Result<Option<Vec<BigInt>>> {
    lattice_coordinates(&simple_roots(r), v)
}

/// Integer coordinates of `v` over linearly independent `generators`, or
/// `None` if `v` is outside their ℤ-span. Verified by re-expansion.
pub fn lattice_coordinates(generators: &[RootVector], v: &RootVector) -> Result<Option<Vec<BigInt>>> {
    let dim = v.dim();
    if generators.iter().any(|g| g.dim() != dim) {
        return Err(Error::Shape("generator dimension mismatch".into()));
    }
    if generators.is_empty() {
        return Ok(v.is_zero().then(Vec::new));
    }
    let refs: Vec<&RootVector> = generators.iter().collect();
    if rational_rank(&refs, dim) != generators.len() {
        return Err(Error::Domain("generators are linearly dependent".into()));
    }
    // columns are generators
    let a = Matrix::from_fn(dim, generators.len(), |i, j| GaussianRational::real(generators[j].coords[i].clone()));
    let b: Vec<GaussianRational> = v.coords.iter().map(|c| GaussianRational::real(c.clone())).collect();
    let Some(x) = a.solve(&b)? else {
        return Ok(None);
    };
    if x.iter().any(|c| !c.re.is_integer()) {
        return Ok(None);
    }
    let ks: Vec<BigInt> = x.iter().map(|c| c.re.to_integer()).collect();
    let back = generators
        .iter()
        .zip(&ks)
        .fold(RootVector::zero(dim), |acc, (g, k)| acc.add(&g.scale(&BigRational::from_integer(k.clone()))));
    if back != *v {
        return Err(Error::Verification("lattice coordinates do not re-expand".into()));
    }
    Ok(Some(ks))
}

/// All standard graded systems of rank at most `max_rank`.
pub fn standard_systems(max_rank: usize) -> Vec<GradedKind> {
    let mut out = Vec::new();
    for total in 2..=max_rank + 1 {
        for n in 1..total {
            out.push(GradedKind::Rectangular { n, m: total - n });
        }
    }
    for n in 4..=max_rank {
        out.push(GradedKind::Symplectic { n });
    }
    for n in 2..=max_rank {
        out.push(GradedKind::Hermitian { n });
    }
    for n in 1..max_rank {
        out.push(GradedKind::SpinEven { n });
        out.push(GradedKind::SpinOdd { n });
    }
    out
}
