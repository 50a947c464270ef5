//! Finite-dimensional matrix Lie algebras: `sl2`, `sl_N`, `gl_N`, `so_N`, `sp_N`.
//!
//! Each algebra carries its basis as `N×N` matrices, the trace form of the
//! defining representation, root data with dual root vectors, the Cartan
//! dual pairs and `ν⁻¹(ρ)`. Orthogonal and symplectic algebras use the
//! `{-k, …, k}` row numbering and the generators `F_ij = E_ij − θ_ij E_{-j,-i}`.

use std::fmt;

use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exactla::{commutator, format_scalar, int, ratio, Matrix, Scalar};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum AlgebraKind {
    Sl2,
    Sl,
    Gl,
    So,
    Sp,
}

impl AlgebraKind {
    pub fn name(self) -> &'static str {
        match self {
            AlgebraKind::Sl2 => "sl2",
            AlgebraKind::Sl => "sl",
            AlgebraKind::Gl => "gl",
            AlgebraKind::So => "so",
            AlgebraKind::Sp => "sp",
        }
    }
}

impl fmt::Display for AlgebraKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl std::str::FromStr for AlgebraKind {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "sl2" => Ok(AlgebraKind::Sl2),
            "sl" => Ok(AlgebraKind::Sl),
            "gl" => Ok(AlgebraKind::Gl),
            "so" => Ok(AlgebraKind::So),
            "sp" => Ok(AlgebraKind::Sp),
            other => Err(Error::Parse(format!("unknown algebra kind '{other}'"))),
        }
    }
}

/// Coordinates of an algebra element in the algebra's basis.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Element(pub Vec<Scalar>);

impl Element {
    pub fn zero(dim: usize) -> Self {
        Element(vec![Scalar::zero(); dim])
    }

    pub fn basis(dim: usize, i: usize) -> Self {
        let mut e = Self::zero(dim);
        e.0[i] = Scalar::one();
        e
    }

    pub fn scale(&self, k: &Scalar) -> Self {
        Element(self.0.iter().map(|x| x * k).collect())
    }

    pub fn add(&self, other: &Element) -> Self {
        Element(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(Zero::is_zero)
    }

    /// Nonzero coordinates.
    pub fn support(&self) -> impl Iterator<Item = (usize, &Scalar)> {
        self.0.iter().enumerate().filter(|(_, c)| !c.is_zero())
    }
}

/// A weight, stored as its values on the Cartan basis of the algebra.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Weight(pub Vec<Scalar>);

impl Weight {
    pub fn zero(rank: usize) -> Self {
        Weight(vec![Scalar::zero(); rank])
    }

    pub fn from_i64(xs: &[i64]) -> Self {
        Weight(xs.iter().map(|&x| int(x)).collect())
    }

    pub fn add(&self, other: &Weight) -> Weight {
        Weight(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn sub(&self, other: &Weight) -> Weight {
        Weight(self.0.iter().zip(&other.0).map(|(a, b)| a - b).collect())
    }

    pub fn scale(&self, k: &Scalar) -> Weight {
        Weight(self.0.iter().map(|a| a * k).collect())
    }

    pub fn to_strings(&self) -> Vec<String> {
        self.0.iter().map(format_scalar).collect()
    }
}

impl fmt::Display for Weight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({})", self.to_strings().join(", "))
    }
}

#[derive(Clone, Debug)]
pub struct BasisElement {
    pub label: String,
    pub matrix: Matrix,
}

/// One positive root `α` with its root vector `e_α` (a basis element) and the
/// dual lowering vector `e_{-α}`, normalized so that `(e_{-α}, e_α) = 1`.
#[derive(Clone, Debug)]
pub struct PositiveRoot {
    pub root: Weight,
    pub raising: usize,
    pub lowering: usize,
    pub dual_lowering: Element,
}

#[derive(Clone, Debug)]
pub struct LieAlgebra {
    kind: AlgebraKind,
    size: usize,
    basis: Vec<BasisElement>,
    gram: Matrix,
    gram_inv: Matrix,
    cartan: Vec<usize>,
    cartan_gram_inv: Matrix,
    positive_roots: Vec<PositiveRoot>,
    simple_roots: Vec<usize>,
    rho: Weight,
    rho_vec: Element,
    cartan_dual: Vec<(Element, Element)>,
    index_set: Option<Vec<i64>>,
}

/// `θ_ij`: `1` for orthogonal algebras, `sign(i)·sign(j)` for symplectic ones.
pub fn theta(kind: AlgebraKind, i: i64, j: i64) -> Result<i64> {
    match kind {
        AlgebraKind::So => Ok(1),
        AlgebraKind::Sp => {
            if i == 0 || j == 0 {
                return Err(Error::InvalidIndex("symplectic indices are nonzero".into()));
            }
            Ok(i.signum() * j.signum())
        }
        _ => Err(Error::InvalidAlgebra {
            kind: kind.to_string(),
            size: 0,
        }),
    }
}

/// Row numbering `{-k, …, -1, (0), 1, …, k}` for orthogonal/symplectic algebras.
pub fn index_set(kind: AlgebraKind, size: usize) -> Result<Vec<i64>> {
    let invalid = || Error::InvalidAlgebra {
        kind: kind.to_string(),
        size,
    };
    let k = (size / 2) as i64;
    match kind {
        AlgebraKind::So if size >= 3 => Ok((-k..=k).filter(|&i| size % 2 == 1 || i != 0).collect()),
        AlgebraKind::Sp if size >= 2 && size.is_multiple_of(2) => Ok((-k..=k).filter(|&i| i != 0).collect()),
        _ => Err(invalid()),
    }
}

fn position(indices: &[i64], i: i64) -> Result<usize> {
    indices
        .iter()
        .position(|&x| x == i)
        .ok_or_else(|| Error::InvalidIndex(format!("index {i} not in {indices:?}")))
}

/// `F_ij = E_ij − θ_ij E_{-j,-i}` as an `N×N` matrix.
pub fn f_matrix(kind: AlgebraKind, size: usize, i: i64, j: i64) -> Result<Matrix> {
    let idx = index_set(kind, size)?;
    let th = theta(kind, i, j)?;
    let mut m = Matrix::unit(size, position(&idx, i)?, position(&idx, j)?);
    let (p, q) = (position(&idx, -j)?, position(&idx, -i)?);
    m[(p, q)] -= int(th);
    Ok(m)
}

/// All `F_ij` over the index set, row-major, zero ones included.
pub fn f_generators(kind: AlgebraKind, size: usize) -> Result<Vec<((i64, i64), Matrix)>> {
    let idx = index_set(kind, size)?;
    let mut out = Vec::with_capacity(idx.len() * idx.len());
    for &i in &idx {
        for &j in &idx {
            out.push(((i, j), f_matrix(kind, size, i, j)?));
        }
    }
    Ok(out)
}

/// A 4-tuple `(i, j, k, l)` for which the `F` bracket identity fails.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FBracketViolation {
    pub indices: (i64, i64, i64, i64),
}

/// Brute-force check of
/// `[F_ij, F_kl] = δ_jk F_il − δ_il F_kj + δ_{l,-j} θ_ij F_{k,-i} − δ_{i,-k} θ_ij F_{-j,l}`
/// over every index 4-tuple.
pub fn check_f_bracket(kind: AlgebraKind, size: usize) -> Result<std::result::Result<(), FBracketViolation>> {
    let idx = index_set(kind, size)?;
    let f = |i: i64, j: i64| f_matrix(kind, size, i, j);
    let delta = |a: i64, b: i64| if a == b { Scalar::one() } else { Scalar::zero() };
    for &i in &idx {
        for &j in &idx {
            let fij = f(i, j)?;
            let th = int(theta(kind, i, j)?);
            for &k in &idx {
                for &l in &idx {
                    let lhs = commutator(&fij, &f(k, l)?)?;
                    let mut rhs = Matrix::zeros(size, size);
                    rhs.add_scaled(&delta(j, k), &f(i, l)?);
                    rhs.add_scaled(&-delta(i, l), &f(k, j)?);
                    rhs.add_scaled(&(delta(l, -j) * &th), &f(k, -i)?);
                    rhs.add_scaled(&-(delta(i, -k) * &th), &f(-j, l)?);
                    if lhs != rhs {
                        return Ok(Err(FBracketViolation {
                            indices: (i, j, k, l),
                        }));
                    }
                }
            }
        }
    }
    Ok(Ok(()))
}

fn ad_eigenvalue(h: &Matrix, b: &Matrix) -> Result<Scalar> {
    let c = commutator(h, b)?;
    let (pos, bv) = b
        .entries()
        .iter()
        .enumerate()
        .find(|(_, x)| !x.is_zero())
        .ok_or_else(|| Error::Invariant("zero basis element".into()))?;
    let value = &c.entries()[pos] / bv;
    if c != b.scale(&value) {
        return Err(Error::Invariant("basis element is not an ad-eigenvector".into()));
    }
    Ok(value)
}

/// Builds the algebra of the given kind with `N×N` defining matrices.
pub fn build_algebra(kind: AlgebraKind, size: usize) -> Result<LieAlgebra> {
    let invalid = || Error::InvalidAlgebra {
        kind: kind.to_string(),
        size,
    };
    let unit = |i: usize, j: usize| Matrix::unit(size, i, j);
    let mut basis = Vec::new();
    let mut cartan = Vec::new();
    let mut index_set_opt = None;
    // diagonal of a regular element fixing the positive system
    let regular: Vec<Scalar>;
    match kind {
        AlgebraKind::Sl2 => {
            if size != 2 {
                return Err(invalid());
            }
            basis.push(BasisElement { label: "x".into(), matrix: unit(0, 1) });
            basis.push(BasisElement { label: "y".into(), matrix: unit(1, 0) });
            let mut h = unit(0, 0);
            h[(1, 1)] = int(-1);
            basis.push(BasisElement { label: "h".into(), matrix: h });
            cartan.push(2);
            regular = vec![int(2), int(1)];
        }
        AlgebraKind::Gl | AlgebraKind::Sl => {
            if size == 0 || (kind == AlgebraKind::Sl && size < 2) {
                return Err(invalid());
            }
            for i in 0..size {
                for j in 0..size {
                    if kind == AlgebraKind::Sl && i == j {
                        continue;
                    }
                    if kind == AlgebraKind::Gl && i == j {
                        cartan.push(basis.len());
                    }
                    basis.push(BasisElement {
                        label: format!("E({},{})", i + 1, j + 1),
                        matrix: unit(i, j),
                    });
                }
            }
            if kind == AlgebraKind::Sl {
                for i in 0..size - 1 {
                    let mut h = unit(i, i);
                    h[(i + 1, i + 1)] = int(-1);
                    cartan.push(basis.len());
                    basis.push(BasisElement {
                        label: format!("H({})", i + 1),
                        matrix: h,
                    });
                }
            }
            regular = (0..size).map(|i| int((size - i) as i64)).collect();
        }
        AlgebraKind::So | AlgebraKind::Sp => {
            let idx = index_set(kind, size)?;
            let k = (size / 2) as i64;
            for &i in &idx {
                for &j in &idx {
                    let m = f_matrix(kind, size, i, j)?;
                    if m.is_zero() || i + j < 0 {
                        continue;
                    }
                    if i == j && i > 0 {
                        cartan.push(basis.len());
                    }
                    basis.push(BasisElement {
                        label: format!("F({i},{j})"),
                        matrix: m,
                    });
                }
            }
            // Cartan ordered F(1,1), …, F(k,k)
            cartan.sort_by_key(|&c| basis[c].label.clone());
            regular = idx
                .iter()
                .map(|&i| match i.signum() {
                    1 => int(k + 1 - i),
                    -1 => int(-(k + 1 + i)),
                    _ => int(0),
                })
                .collect();
            index_set_opt = Some(idx);
        }
    }

    let dim = basis.len();
    let gram = Matrix::from_rows(
        (0..dim)
            .map(|a| {
                (0..dim)
                    .map(|b| basis[a].matrix.mul(&basis[b].matrix).map(|p| p.trace()))
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<Vec<_>>>()?,
    );
    let gram_inv = gram
        .inverse()
        .ok_or_else(|| Error::Invariant("trace form is degenerate".into()))?;
    let cartan_gram = gram.submatrix(&cartan, &cartan);
    let cartan_gram_inv = cartan_gram
        .inverse()
        .ok_or_else(|| Error::Invariant("trace form degenerate on Cartan".into()))?;

    let h_reg = Matrix::diagonal(&regular);
    let mut root_of = vec![None; dim];
    for (b, elem) in basis.iter().enumerate() {
        if cartan.contains(&b) {
            continue;
        }
        let values = cartan
            .iter()
            .map(|&c| ad_eigenvalue(&basis[c].matrix, &elem.matrix))
            .collect::<Result<Vec<_>>>()?;
        let height = ad_eigenvalue(&h_reg, &elem.matrix)?;
        if height.is_zero() {
            return Err(Error::Invariant(format!("{} has zero height", elem.label)));
        }
        root_of[b] = Some((Weight(values), height));
    }

    let mut positive_roots = Vec::new();
    for (b, r) in root_of.iter().enumerate() {
        let Some((root, height)) = r else { continue };
        if !height.is_positive() {
            continue;
        }
        let neg = root.scale(&-Scalar::one());
        let lowering = root_of
            .iter()
            .position(|o| o.as_ref().is_some_and(|(w, _)| *w == neg))
            .ok_or_else(|| Error::Invariant(format!("no negative root vector for {}", basis[b].label)))?;
        let pairing = &gram[(lowering, b)];
        if pairing.is_zero() {
            return Err(Error::Invariant("root spaces not paired by the form".into()));
        }
        positive_roots.push(PositiveRoot {
            root: root.clone(),
            raising: b,
            lowering,
            dual_lowering: Element::basis(dim, lowering).scale(&pairing.recip()),
        });
    }

    let simple_roots: Vec<usize> = (0..positive_roots.len())
        .filter(|&a| {
            let alpha = &positive_roots[a].root;
            !positive_roots.iter().any(|b| {
                let rest = alpha.sub(&b.root);
                positive_roots.iter().any(|c| c.root == rest)
            })
        })
        .collect();

    let rank = cartan.len();
    let half = ratio(1, 2);
    let rho = positive_roots
        .iter()
        .fold(Weight::zero(rank), |acc, r| acc.add(&r.root))
        .scale(&half);

    let mut alg = LieAlgebra {
        kind,
        size,
        basis,
        gram,
        gram_inv,
        cartan,
        cartan_gram_inv,
        positive_roots,
        simple_roots,
        rho: rho.clone(),
        rho_vec: Element::zero(dim),
        cartan_dual: Vec::new(),
        index_set: index_set_opt,
    };
    alg.rho_vec = alg.nu_inv(&rho);
    alg.cartan_dual = (0..rank)
        .map(|i| {
            let u = Element::basis(dim, alg.cartan[i]);
            let dual = (0..rank).fold(Element::zero(dim), |acc, j| {
                acc.add(&Element::basis(dim, alg.cartan[j]).scale(&alg.cartan_gram_inv[(j, i)]))
            });
            (u, dual)
        })
        .collect();
    Ok(alg)
}

impl LieAlgebra {
    pub fn kind(&self) -> AlgebraKind {
        self.kind
    }

    /// Size `N` of the defining matrices.
    pub fn size(&self) -> usize {
        self.size
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    /// Dimension of the Cartan subalgebra.
    pub fn rank(&self) -> usize {
        self.cartan.len()
    }

    pub fn basis(&self) -> &[BasisElement] {
        &self.basis
    }

    pub fn label(&self, i: usize) -> &str {
        &self.basis[i].label
    }

    pub fn index_of(&self, label: &str) -> Result<usize> {
        self.basis
            .iter()
            .position(|b| b.label == label)
            .ok_or_else(|| Error::InvalidIndex(format!("no basis element '{label}' in {}", self.kind)))
    }

    pub fn element(&self, label: &str) -> Result<Element> {
        Ok(Element::basis(self.dim(), self.index_of(label)?))
    }

    pub fn cartan_indices(&self) -> &[usize] {
        &self.cartan
    }

    pub fn positive_roots(&self) -> &[PositiveRoot] {
        &self.positive_roots
    }

    pub fn simple_roots(&self) -> impl Iterator<Item = &PositiveRoot> {
        self.simple_roots.iter().map(|&i| &self.positive_roots[i])
    }

    pub fn simple_root(&self, j: usize) -> Result<&PositiveRoot> {
        j.checked_sub(1)
            .and_then(|i| self.simple_roots.get(i))
            .map(|&i| &self.positive_roots[i])
            .ok_or_else(|| Error::InvalidIndex(format!("simple root {j} of {}", self.kind)))
    }

    pub fn rho(&self) -> &Weight {
        &self.rho
    }

    /// `ν⁻¹(ρ)`.
    pub fn rho_vec(&self) -> &Element {
        &self.rho_vec
    }

    /// Pairs `(u_i, u^i)` of Cartan elements with `(u_i, u^j) = δ_ij`.
    pub fn cartan_dual_pairs(&self) -> &[(Element, Element)] {
        &self.cartan_dual
    }

    pub fn index_set(&self) -> Option<&[i64]> {
        self.index_set.as_deref()
    }

    pub fn gram(&self) -> &Matrix {
        &self.gram
    }

    pub fn matrix_of(&self, x: &Element) -> Matrix {
        let mut m = Matrix::zeros(self.size, self.size);
        for (i, c) in x.support() {
            m.add_scaled(c, &self.basis[i].matrix);
        }
        m
    }

    /// Coordinates of a matrix in the basis; errors if it is not in the algebra.
    pub fn coords(&self, m: &Matrix) -> Result<Element> {
        let pairings: Vec<Scalar> = self
            .basis
            .iter()
            .map(|b| b.matrix.mul(m).map(|p| p.trace()))
            .collect::<Result<_>>()?;
        let e = Element(self.gram_inv.mul_vec(&pairings)?);
        if self.matrix_of(&e) != *m {
            return Err(Error::InvalidIndex("matrix does not lie in the algebra".into()));
        }
        Ok(e)
    }

    /// Trace form `(x, y) = tr(xy)`.
    pub fn form(&self, x: &Element, y: &Element) -> Scalar {
        let gy = self.gram.mul_vec(&y.0).expect("element length");
        crate::exactla::dot(&x.0, &gy)
    }

    pub fn bracket(&self, x: &Element, y: &Element) -> Result<Element> {
        self.coords(&commutator(&self.matrix_of(x), &self.matrix_of(y))?)
    }

    /// The contravariant anti-involution: matrix transpose.
    pub fn transpose(&self, x: &Element) -> Result<Element> {
        self.coords(&self.matrix_of(x).transpose())
    }

    /// `F_ij` as an element (orthogonal/symplectic only).
    pub fn f_element(&self, i: i64, j: i64) -> Result<Element> {
        self.coords(&f_matrix(self.kind, self.size, i, j)?)
    }

    /// `E_ij` (1-based) as an element (gl only).
    pub fn e_element(&self, i: usize, j: usize) -> Result<Element> {
        if self.kind != AlgebraKind::Gl || i == 0 || j == 0 || i > self.size || j > self.size {
            return Err(Error::InvalidIndex(format!("E({i},{j}) in {}{}", self.kind, self.size)));
        }
        Ok(Element::basis(self.dim(), (i - 1) * self.size + (j - 1)))
    }

    /// `ν: 𝔥 → 𝔥*`, `ν(h)(h') = (h, h')`. `h` must lie in the Cartan subalgebra.
    pub fn nu(&self, h: &Element) -> Weight {
        Weight(
            self.cartan
                .iter()
                .map(|&c| self.form(h, &Element::basis(self.dim(), c)))
                .collect(),
        )
    }

    /// `ν⁻¹: 𝔥* → 𝔥`.
    pub fn nu_inv(&self, w: &Weight) -> Element {
        let x = self.cartan_gram_inv.mul_vec(&w.0).expect("weight length");
        let mut e = Element::zero(self.dim());
        for (c, v) in self.cartan.iter().zip(x) {
            e.0[*c] = v;
        }
        e
    }

    /// `λ(h)` for `h` in the Cartan subalgebra.
    pub fn pairing(&self, w: &Weight, h: &Element) -> Scalar {
        self.cartan
            .iter()
            .zip(&w.0)
            .fold(Scalar::zero(), |acc, (&c, x)| acc + x * &h.0[c])
    }

    /// Transported form on weights, `(λ, μ) = (ν⁻¹λ, ν⁻¹μ)`.
    pub fn weight_form(&self, a: &Weight, b: &Weight) -> Scalar {
        let x = self.cartan_gram_inv.mul_vec(&b.0).expect("weight length");
        crate::exactla::dot(&a.0, &x)
    }

    /// Coroot `α^∨ = 2 ν⁻¹(α) / (α, α)`.
    pub fn coroot(&self, root: &Weight) -> Element {
        let norm = self.weight_form(root, root);
        self.nu_inv(root).scale(&(int(2) / norm))
    }

    /// Whether `λ(α_i^∨)` is a nonnegative integer for every simple root.
    pub fn is_dominant_integral(&self, w: &Weight) -> bool {
        w.0.len() == self.rank()
            && self.simple_roots().all(|r| {
                let v = self.pairing(w, &self.coroot(&r.root));
                v.is_integer() && !v.is_negative()
            })
    }

    /// Weyl dimension formula `Π_{α>0} (λ+ρ, α) / (ρ, α)`.
    pub fn weyl_dimension(&self, w: &Weight) -> Scalar {
        let lr = w.add(&self.rho);
        self.positive_roots.iter().fold(Scalar::one(), |acc, r| {
            acc * self.weight_form(&lr, &r.root) / self.weight_form(&self.rho, &r.root)
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn all_small() -> Vec<LieAlgebra> {
        let mut out = vec![build_algebra(AlgebraKind::Sl2, 2).unwrap()];
        for n in 1..=4 {
            out.push(build_algebra(AlgebraKind::Gl, n).unwrap());
        }
        for n in 2..=4 {
            out.push(build_algebra(AlgebraKind::Sl, n).unwrap());
        }
        for n in 3..=6 {
            out.push(build_algebra(AlgebraKind::So, n).unwrap());
        }
        for n in [2, 4, 6] {
            out.push(build_algebra(AlgebraKind::Sp, n).unwrap());
        }
        out
    }

    #[test]
    fn sl2_data() {
        let g = build_algebra(AlgebraKind::Sl2, 2).unwrap();
        let labels: Vec<&str> = g.basis().iter().map(|b| b.label.as_str()).collect();
        assert_eq!(labels, ["x", "y", "h"]);
        let (x, y, h) = (g.element("x").unwrap(), g.element("y").unwrap(), g.element("h").unwrap());
        assert_eq!(g.form(&x, &y), int(1));
        assert_eq!(g.form(&h, &h), int(2));
        let roots = g.positive_roots();
        assert_eq!(roots.len(), 1);
        assert_eq!(roots[0].raising, 0);
        assert_eq!(roots[0].dual_lowering, y);
        assert_eq!(*g.rho_vec(), h.scale(&ratio(1, 2)));
        assert_eq!(g.bracket(&h, &x).unwrap(), x.scale(&int(2)));
        assert_eq!(g.bracket(&h, &y).unwrap(), y.scale(&int(-2)));
        assert_eq!(g.bracket(&x, &y).unwrap(), h);
        let alpha = &roots[0].root;
        assert_eq!(g.weight_form(alpha, alpha), int(2));
        assert_eq!(g.coroot(alpha), h);
    }

    #[test]
    fn gl_trace_form() {
        let n = 3;
        let g = build_algebra(AlgebraKind::Gl, n).unwrap();
        for i in 1..=n {
            for j in 1..=n {
                for k in 1..=n {
                    for l in 1..=n {
                        let expect = if i == l && j == k { 1 } else { 0 };
                        let v = g.form(&g.e_element(i, j).unwrap(), &g.e_element(k, l).unwrap());
                        assert_eq!(v, int(expect));
                    }
                }
            }
        }
        // self-dual Cartan
        for (u, ud) in g.cartan_dual_pairs() {
            assert_eq!(u, ud);
        }
    }

    #[test]
    fn dimensions() {
        let dims = |k, n| build_algebra(k, n).unwrap().dim();
        assert_eq!(dims(AlgebraKind::Gl, 3), 9);
        assert_eq!(dims(AlgebraKind::Sl, 3), 8);
        assert_eq!(dims(AlgebraKind::So, 3), 3);
        assert_eq!(dims(AlgebraKind::So, 4), 6);
        assert_eq!(dims(AlgebraKind::So, 5), 10);
        assert_eq!(dims(AlgebraKind::Sp, 2), 3);
        assert_eq!(dims(AlgebraKind::Sp, 4), 10);
    }

    #[test]
    fn invalid_kinds() {
        assert!(build_algebra(AlgebraKind::Sl2, 3).is_err());
        assert!(build_algebra(AlgebraKind::Sp, 3).is_err());
        assert!(build_algebra(AlgebraKind::So, 2).is_err());
        assert!(build_algebra(AlgebraKind::Sl, 1).is_err());
        assert!(f_generators(AlgebraKind::Gl, 3).is_err());
    }

    #[test]
    fn form_is_invariant_and_symmetric() {
        for g in all_small() {
            let n = g.dim();
            for a in 0..n {
                let x = Element::basis(n, a);
                for b in 0..n {
                    let y = Element::basis(n, b);
                    assert_eq!(g.form(&x, &y), g.form(&y, &x));
                    let xy = g.bracket(&x, &y).unwrap();
                    for c in 0..n {
                        let z = Element::basis(n, c);
                        let xz = g.bracket(&x, &z).unwrap();
                        let s = g.form(&xy, &z) + g.form(&y, &xz);
                        assert!(s.is_zero(), "{}{}: invariance fails", g.kind(), g.size());
                    }
                }
            }
        }
    }

    #[test]
    fn dual_pairs_and_rho() {
        for g in all_small() {
            for r in g.positive_roots() {
                let e = Element::basis(g.dim(), r.raising);
                assert_eq!(g.form(&r.dual_lowering, &e), int(1));
            }
            for (i, (u, _)) in g.cartan_dual_pairs().iter().enumerate() {
                for (j, (_, ud)) in g.cartan_dual_pairs().iter().enumerate() {
                    assert_eq!(g.form(u, ud), int((i == j) as i64));
                }
            }
            for r in g.simple_roots() {
                let lhs = g.pairing(&r.root, g.rho_vec());
                let rhs = g.weight_form(&r.root, &r.root) * ratio(1, 2);
                assert_eq!(lhs, rhs, "{}{}", g.kind(), g.size());
            }
            assert_eq!(g.simple_roots().count(), match g.kind() {
                AlgebraKind::Gl | AlgebraKind::Sl => g.size() - 1,
                AlgebraKind::Sl2 => 1,
                _ => g.size() / 2,
            });
        }
    }

    #[test]
    fn nu_round_trip() {
        for g in all_small() {
            let w = g.rho().clone();
            assert_eq!(g.nu(&g.nu_inv(&w)), w);
        }
    }

    fn kron(a: &Matrix, b: &Matrix) -> Matrix {
        let (n, m) = (a.rows(), b.rows());
        let mut out = Matrix::zeros(n * m, n * m);
        for i in 0..n {
            for j in 0..n {
                if a[(i, j)].is_zero() {
                    continue;
                }
                for k in 0..m {
                    for l in 0..m {
                        out[(i * m + k, j * m + l)] = &a[(i, j)] * &b[(k, l)];
                    }
                }
            }
        }
        out
    }

    /// `Σ_a b^a ⊗ b_a` built from an arbitrary ordering of the basis and its Gram inverse.
    fn casimir_tensor_generic(g: &LieAlgebra, order: &[usize]) -> Matrix {
        let mats: Vec<&Matrix> = order.iter().map(|&i| &g.basis()[i].matrix).collect();
        let gram = Matrix::from_rows(
            mats.iter()
                .map(|a| mats.iter().map(|b| a.mul(b).unwrap().trace()).collect())
                .collect(),
        );
        let inv = gram.inverse().unwrap();
        let n = g.size();
        let mut out = Matrix::zeros(n * n, n * n);
        for a in 0..mats.len() {
            for b in 0..mats.len() {
                out.add_scaled(&inv[(a, b)], &kron(mats[a], mats[b]));
            }
        }
        out
    }

    fn casimir_tensor_from_root_data(g: &LieAlgebra) -> Matrix {
        let n = g.size();
        let mut out = Matrix::zeros(n * n, n * n);
        for (u, ud) in g.cartan_dual_pairs() {
            out.add_scaled(&int(1), &kron(&g.matrix_of(ud), &g.matrix_of(u)));
        }
        for r in g.positive_roots() {
            let e = g.basis()[r.raising].matrix.clone();
            let f = g.matrix_of(&r.dual_lowering);
            out.add_scaled(&int(1), &kron(&f, &e));
            out.add_scaled(&int(1), &kron(&e, &f));
        }
        out
    }

    #[test]
    fn split_casimir_is_basis_independent() {
        for g in all_small() {
            let forward: Vec<usize> = (0..g.dim()).collect();
            let backward: Vec<usize> = (0..g.dim()).rev().collect();
            let a = casimir_tensor_generic(&g, &forward);
            let b = casimir_tensor_generic(&g, &backward);
            assert_eq!(a, b);
            assert_eq!(a, casimir_tensor_from_root_data(&g), "{}{}", g.kind(), g.size());
        }
    }

    #[test]
    fn theta_properties() {
        for kind in [AlgebraKind::So, AlgebraKind::Sp] {
            let idx = index_set(kind, 4).unwrap();
            for &i in &idx {
                for &j in &idx {
                    let t = theta(kind, i, j).unwrap();
                    assert_eq!(t * t, 1);
                    assert_eq!(t, theta(kind, j, i).unwrap());
                    for &k in &idx {
                        assert_eq!(t * theta(kind, j, k).unwrap(), theta(kind, i, k).unwrap());
                    }
                }
            }
        }
        assert_eq!(theta(AlgebraKind::Sp, -1, 2).unwrap(), -1);
        assert_eq!(theta(AlgebraKind::So, -1, 2).unwrap(), 1);
    }

    #[test]
    fn orthogonal_f_antidiagonal_vanishes() {
        for n in [3, 4, 5] {
            for &i in &index_set(AlgebraKind::So, n).unwrap() {
                assert!(f_matrix(AlgebraKind::So, n, i, -i).unwrap().is_zero());
            }
        }
    }

    #[test]
    fn f_bracket_small_cases() {
        assert_eq!(check_f_bracket(AlgebraKind::So, 3).unwrap(), Ok(()));
        assert_eq!(check_f_bracket(AlgebraKind::Sp, 2).unwrap(), Ok(()));
    }

    #[test]
    fn f_generators_span_and_close() {
        for (kind, n) in [(AlgebraKind::So, 3), (AlgebraKind::So, 4), (AlgebraKind::Sp, 4)] {
            let g = build_algebra(kind, n).unwrap();
            let fs = f_generators(kind, n).unwrap();
            for (_, a) in &fs {
                assert!(g.coords(a).is_ok());
                for (_, b) in &fs {
                    assert!(g.coords(&commutator(a, b).unwrap()).is_ok());
                }
            }
        }
    }

    #[test]
    fn weyl_dimensions() {
        let gl3 = build_algebra(AlgebraKind::Gl, 3).unwrap();
        assert_eq!(gl3.weyl_dimension(&Weight::from_i64(&[1, 0, 0])), int(3));
        assert_eq!(gl3.weyl_dimension(&Weight::from_i64(&[2, 1, 0])), int(8));
        let sl2 = build_algebra(AlgebraKind::Sl2, 2).unwrap();
        assert_eq!(sl2.weyl_dimension(&Weight::from_i64(&[4])), int(5));
        let so5 = build_algebra(AlgebraKind::So, 5).unwrap();
        assert_eq!(so5.weyl_dimension(&Weight::from_i64(&[1, 0])), int(5));
        assert_eq!(so5.weyl_dimension(&Weight::from_i64(&[1, 1])), int(10));
        let sp4 = build_algebra(AlgebraKind::Sp, 4).unwrap();
        assert_eq!(sp4.weyl_dimension(&Weight::from_i64(&[1, 0])), int(4));
    }
}
