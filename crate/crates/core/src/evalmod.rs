//! Evaluation modules `V(λ̄, ā) = V(λ_1) ⊗ … ⊗ V(λ_n)` of the loop algebra,
//! where `X ⊗ t^k` acts as `Σ_i a_i^k (X in slot i)`.

use std::collections::BTreeMap;
use std::sync::{Arc, OnceLock};

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exactla::{format_scalar, int, Matrix, Scalar};
use crate::interp::{lagrange_idempotents, EvaluationPoints, IdempotentBasis, LaurentPoly};
use crate::liealg::{AlgebraKind, Element, LieAlgebra, Weight};
use crate::reps::{irrep_from_tensor_power, sl2_irrep_over, Representation};
use crate::tensor::{add_entry, axpy, kernel_of_images, SparseVec, TensorLayout};

/// Finitely supported vector of an evaluation module, keyed by linear basis
/// index (lexicographic order of basis tuples).
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ModuleVector(pub(crate) SparseVec);

impl ModuleVector {
    pub fn zero() -> Self {
        ModuleVector(SparseVec::new())
    }

    pub fn unit(index: usize) -> Self {
        ModuleVector([(index, Scalar::one())].into_iter().collect())
    }

    pub fn from_entries<I: IntoIterator<Item = (usize, Scalar)>>(entries: I) -> Self {
        let mut v = SparseVec::new();
        for (i, c) in entries {
            add_entry(&mut v, i, c);
        }
        ModuleVector(v)
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    pub fn get(&self, index: usize) -> Scalar {
        self.0.get(&index).cloned().unwrap_or_else(Scalar::zero)
    }

    /// Nonzero entries in increasing index order.
    pub fn entries(&self) -> impl Iterator<Item = (usize, &Scalar)> {
        self.0.iter().map(|(&i, c)| (i, c))
    }

    pub fn scale(&self, k: &Scalar) -> Self {
        let mut out = SparseVec::new();
        axpy(&mut out, k, &self.0);
        ModuleVector(out)
    }

    pub fn add(&self, other: &ModuleVector) -> Self {
        self.add_scaled(&Scalar::one(), other)
    }

    pub fn sub(&self, other: &ModuleVector) -> Self {
        self.add_scaled(&-Scalar::one(), other)
    }

    /// `self + k · other`.
    pub fn add_scaled(&self, k: &Scalar, other: &ModuleVector) -> Self {
        let mut out = self.0.clone();
        axpy(&mut out, k, &other.0);
        ModuleVector(out)
    }
}

/// Basis tuples of one total weight, with positions for coordinate conversion.
#[derive(Clone, Debug)]
pub struct WeightSpace {
    weight: Weight,
    indices: Vec<usize>,
    position: BTreeMap<usize, usize>,
}

impl WeightSpace {
    fn new(weight: Weight, indices: Vec<usize>) -> Self {
        let position = indices.iter().enumerate().map(|(p, &i)| (i, p)).collect();
        WeightSpace {
            weight,
            indices,
            position,
        }
    }

    pub fn weight(&self) -> &Weight {
        &self.weight
    }

    pub fn dim(&self) -> usize {
        self.indices.len()
    }

    /// Linear module indices of the member basis tuples, increasing.
    pub fn indices(&self) -> &[usize] {
        &self.indices
    }

    pub fn contains_index(&self, index: usize) -> bool {
        self.position.contains_key(&index)
    }

    /// Coordinates of `v` in this weight space; errors if `v` has support outside it.
    pub fn coords(&self, v: &ModuleVector) -> Result<Vec<Scalar>> {
        let mut out = vec![Scalar::zero(); self.dim()];
        for (i, c) in v.entries() {
            let p = self
                .position
                .get(&i)
                .ok_or_else(|| Error::DomainMismatch(format!("vector leaves weight space {}", self.weight)))?;
            out[*p] = c.clone();
        }
        Ok(out)
    }

    pub fn vector(&self, coords: &[Scalar]) -> ModuleVector {
        ModuleVector::from_entries(self.indices.iter().zip(coords).map(|(&i, c)| (i, c.clone())))
    }
}

/// Structured record identifying an evaluation module.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ModuleDescriptor {
    pub algebra: AlgebraKind,
    pub size: usize,
    pub weights: Vec<Vec<String>>,
    pub points: Vec<String>,
}

#[derive(Debug)]
pub struct EvaluationModule {
    algebra: Arc<LieAlgebra>,
    factors: Vec<Arc<Representation>>,
    points: EvaluationPoints,
    idempotents: IdempotentBasis,
    layout: TensorLayout,
    weight_spaces: OnceLock<BTreeMap<Weight, Vec<usize>>>,
}

impl EvaluationModule {
    pub fn new(factors: Vec<Arc<Representation>>, points: EvaluationPoints) -> Result<Self> {
        if factors.is_empty() {
            return Err(Error::DimensionMismatch("an evaluation module needs at least one factor".into()));
        }
        if factors.len() != points.len() {
            return Err(Error::DimensionMismatch(format!(
                "{} factors but {} evaluation points",
                factors.len(),
                points.len()
            )));
        }
        let algebra = factors[0].algebra().clone();
        for f in &factors {
            let g = f.algebra();
            if g.kind() != algebra.kind() || g.size() != algebra.size() {
                return Err(Error::DimensionMismatch("factors over different algebras".into()));
            }
        }
        let layout = TensorLayout::new(factors.iter().map(|f| f.dim()).collect());
        let idempotents = lagrange_idempotents(&points);
        Ok(EvaluationModule {
            algebra,
            factors,
            points,
            idempotents,
            layout,
            weight_spaces: OnceLock::new(),
        })
    }

    /// Builds the factors `V(λ_i)` from highest weights; equal weights share one realization.
    pub fn from_weights(algebra: Arc<LieAlgebra>, weights: &[Weight], points: EvaluationPoints, max_power: usize) -> Result<Self> {
        let mut built: BTreeMap<Weight, Arc<Representation>> = BTreeMap::new();
        let mut factors = Vec::with_capacity(weights.len());
        for w in weights {
            if let Some(rep) = built.get(w) {
                factors.push(rep.clone());
                continue;
            }
            let rep = if algebra.kind() == AlgebraKind::Sl2 {
                let m = w.0.first().filter(|_| w.0.len() == 1 && algebra.is_dominant_integral(w));
                let m = m
                    .and_then(|m| m.to_integer().try_into().ok())
                    .ok_or_else(|| Error::InvalidWeight(format!("{w} is not dominant integral for sl2")))?;
                sl2_irrep_over(algebra.clone(), m)
            } else {
                irrep_from_tensor_power(algebra.clone(), w, max_power)?
            };
            let rep = Arc::new(rep);
            built.insert(w.clone(), rep.clone());
            factors.push(rep);
        }
        Self::new(factors, points)
    }

    pub fn algebra(&self) -> &Arc<LieAlgebra> {
        &self.algebra
    }

    pub fn factors(&self) -> &[Arc<Representation>] {
        &self.factors
    }

    pub fn factor_count(&self) -> usize {
        self.factors.len()
    }

    pub fn points(&self) -> &EvaluationPoints {
        &self.points
    }

    pub fn idempotents(&self) -> &IdempotentBasis {
        &self.idempotents
    }

    pub fn dim(&self) -> usize {
        self.layout.total()
    }

    pub fn layout(&self) -> &TensorLayout {
        &self.layout
    }

    pub fn descriptor(&self) -> ModuleDescriptor {
        ModuleDescriptor {
            algebra: self.algebra.kind(),
            size: self.algebra.size(),
            weights: self.factors.iter().map(|f| f.highest_weight().to_strings()).collect(),
            points: self.points.as_slice().iter().map(format_scalar).collect(),
        }
    }

    /// `λ = Σ λ_i`.
    pub fn top_weight(&self) -> Weight {
        self.factors
            .iter()
            .fold(Weight::zero(self.algebra.rank()), |acc, f| acc.add(f.highest_weight()))
    }

    /// `v = v_1 ⊗ … ⊗ v_n`.
    pub fn top_vector(&self) -> ModuleVector {
        let digits: Vec<usize> = self.factors.iter().map(|f| f.hw_index()).collect();
        ModuleVector::unit(self.layout.index(&digits))
    }

    pub fn weight_of_index(&self, index: usize) -> Weight {
        self.layout
            .digits(index)
            .iter()
            .zip(&self.factors)
            .fold(Weight::zero(self.algebra.rank()), |acc, (&d, f)| acc.add(&f.weights()[d]))
    }

    fn weight_map(&self) -> &BTreeMap<Weight, Vec<usize>> {
        self.weight_spaces.get_or_init(|| {
            let mut out: BTreeMap<Weight, Vec<usize>> = BTreeMap::new();
            for i in 0..self.dim() {
                out.entry(self.weight_of_index(i)).or_default().push(i);
            }
            out
        })
    }

    /// All weights occurring in the module, increasing.
    pub fn weights(&self) -> Vec<Weight> {
        self.weight_map().keys().cloned().collect()
    }

    pub fn weight_space(&self, mu: &Weight) -> WeightSpace {
        let indices = self.weight_map().get(mu).cloned().unwrap_or_default();
        WeightSpace::new(mu.clone(), indices)
    }

    fn check_slot(&self, slot: usize) -> Result<usize> {
        if slot == 0 || slot > self.factor_count() {
            return Err(Error::InvalidIndex(format!("slot {slot} of {}", self.factor_count())));
        }
        Ok(slot - 1)
    }

    fn apply_into(&self, acc: &mut SparseVec, k: &Scalar, x: &Element, slot0: usize, v: &SparseVec) {
        let rep = &self.factors[slot0];
        for (i, c) in x.support() {
            self.layout.apply_slot_into(acc, &(k * c), slot0, rep.sparse_action(i), v);
        }
    }

    /// `Σ_s coeffs[s] · (X in slot s)`.
    pub fn act_weighted(&self, x: &Element, coeffs: &[Scalar], v: &ModuleVector) -> Result<ModuleVector> {
        if coeffs.len() != self.factor_count() {
            return Err(Error::DimensionMismatch(format!(
                "{} slot coefficients for {} factors",
                coeffs.len(),
                self.factor_count()
            )));
        }
        if x.0.len() != self.algebra.dim() {
            return Err(Error::DimensionMismatch("element of a different algebra".into()));
        }
        let mut out = SparseVec::new();
        for (s, k) in coeffs.iter().enumerate() {
            self.apply_into(&mut out, k, x, s, &v.0);
        }
        Ok(ModuleVector(out))
    }

    /// `X` acting in slot `slot` (1-based) only.
    pub fn act_slot(&self, x: &Element, slot: usize, v: &ModuleVector) -> Result<ModuleVector> {
        let s = self.check_slot(slot)?;
        let mut coeffs = vec![Scalar::zero(); self.factor_count()];
        coeffs[s] = Scalar::one();
        self.act_weighted(x, &coeffs, v)
    }

    /// `X ⊗ 1`.
    pub fn act_diagonal(&self, x: &Element, v: &ModuleVector) -> Result<ModuleVector> {
        self.act_weighted(x, &vec![Scalar::one(); self.factor_count()], v)
    }

    /// `X ⊗ t^k`.
    pub fn act_loop(&self, x: &Element, k: i64, v: &ModuleVector) -> Result<ModuleVector> {
        self.act_poly(x, &LaurentPoly::monomial(Scalar::one(), k), v)
    }

    /// `X ⊗ p(t)`, i.e. `Σ_s p(a_s) · (X in slot s)`.
    pub fn act_poly(&self, x: &Element, p: &LaurentPoly, v: &ModuleVector) -> Result<ModuleVector> {
        let coeffs: Vec<Scalar> = self.points.as_slice().iter().map(|a| p.evaluate(a)).collect::<Result<_>>()?;
        self.act_weighted(x, &coeffs, v)
    }

    /// Basis of `V⁺_μ`: joint kernel of the simple raising operators on `V_μ`.
    pub fn highest_weight_space(&self, mu: &Weight) -> Result<Vec<ModuleVector>> {
        let space = self.weight_space(mu);
        if space.dim() == 0 {
            return Ok(Vec::new());
        }
        let raising: Vec<Element> = self
            .algebra
            .simple_roots()
            .map(|r| Element::basis(self.algebra.dim(), r.raising))
            .collect();
        let stride = self.dim();
        let mut images = Vec::with_capacity(space.dim());
        for &idx in space.indices() {
            let unit = ModuleVector::unit(idx);
            let mut stacked = SparseVec::new();
            for (r, e) in raising.iter().enumerate() {
                for (i, c) in self.act_diagonal(e, &unit)?.0 {
                    add_entry(&mut stacked, r * stride + i, c);
                }
            }
            images.push(stacked);
        }
        Ok(kernel_of_images(&images).iter().map(|c| space.vector(c)).collect())
    }

    /// Product of the factor contravariant forms on basis tuples `i`, `j`.
    pub fn form_entry(&self, i: usize, j: usize) -> Scalar {
        let (di, dj) = (self.layout.digits(i), self.layout.digits(j));
        let mut out = Scalar::one();
        for ((f, a), b) in self.factors.iter().zip(di).zip(dj) {
            let x = &f.form()[(a, b)];
            if x.is_zero() {
                return Scalar::zero();
            }
            out *= x;
        }
        out
    }

    /// Contravariant form `⟨u, w⟩`, with `⟨v, v⟩ = 1` on the top vector.
    pub fn contravariant_form(&self, u: &ModuleVector, w: &ModuleVector) -> Scalar {
        let mut out = Scalar::zero();
        for (i, a) in u.entries() {
            for (j, b) in w.entries() {
                out += a * b * self.form_entry(i, j);
            }
        }
        out
    }

    /// Gram matrix of the contravariant form on a weight space basis.
    pub fn gram_on(&self, space: &WeightSpace) -> Matrix {
        let idx = space.indices();
        let mut m = Matrix::zeros(idx.len(), idx.len());
        for (p, &i) in idx.iter().enumerate() {
            for (q, &j) in idx.iter().enumerate() {
                m[(p, q)] = self.form_entry(i, j);
            }
        }
        m
    }

    /// Chevalley-normalized lowering vector `e_{-α_j}` with `[e_{α_j}, e_{-α_j}] = α_j^∨`.
    pub fn chevalley_lowering(&self, j: usize) -> Result<Element> {
        let r = self.algebra.simple_root(j)?;
        let norm = self.algebra.weight_form(&r.root, &r.root);
        Ok(r.dual_lowering.scale(&(int(2) / norm)))
    }

    /// `m_i = λ_i(α_j^∨)` for every factor.
    pub fn simple_root_labels(&self, j: usize) -> Result<Vec<Scalar>> {
        let r = self.algebra.simple_root(j)?;
        let co = self.algebra.coroot(&r.root);
        Ok(self
            .factors
            .iter()
            .map(|f| self.algebra.pairing(f.highest_weight(), &co))
            .collect())
    }

    fn lowered(&self, j: usize, slots: &[usize]) -> Result<ModuleVector> {
        let f = self.chevalley_lowering(j)?;
        let mut v = self.top_vector();
        for &s in slots {
            v = self.act_slot(&f, s, &v)?;
        }
        Ok(v)
    }

    /// `w_k`: `e_{-α_j}` applied to the top vector in slot `k`.
    pub fn w_vec(&self, j: usize, k: usize) -> Result<ModuleVector> {
        self.lowered(j, &[k])
    }

    /// `z_{k,l} = m_l w_k − m_k w_l ∈ V⁺_{λ−α_j}`.
    pub fn z_vec(&self, j: usize, k: usize, l: usize) -> Result<ModuleVector> {
        let m = self.simple_root_labels(j)?;
        let (mk, ml) = (&m[self.check_slot(k)?], &m[self.check_slot(l)?]);
        Ok(self.w_vec(j, k)?.scale(ml).add_scaled(&-mk, &self.w_vec(j, l)?))
    }

    /// `e_{-α_j}` applied in slots `k ≠ l` of the top vector.
    pub fn zz_vec(&self, j: usize, k: usize, l: usize) -> Result<ModuleVector> {
        if k == l {
            return Err(Error::InvalidIndex(format!("distinct slots required, got {k} twice")));
        }
        self.lowered(j, &[k, l])
    }

    /// `e_{-α_j}²` applied in slot `k` of the top vector.
    pub fn zsq_vec(&self, j: usize, k: usize) -> Result<ModuleVector> {
        self.lowered(j, &[k, k])
    }

    /// `A_{k,l} = 2(m_k−1)(m_l−1) zz_{k,l} − (m_k−1)m_k zsq_l − (m_l−1)m_l zsq_k ∈ V⁺_{λ−2α_j}`.
    pub fn a_vec(&self, j: usize, k: usize, l: usize) -> Result<ModuleVector> {
        let m = self.simple_root_labels(j)?;
        let (mk, ml) = (&m[self.check_slot(k)?], &m[self.check_slot(l)?]);
        let one = Scalar::one();
        let c_kl = int(2) * (mk - &one) * (ml - &one);
        let c_l = -(mk - &one) * mk;
        let c_k = -(ml - &one) * ml;
        Ok(self
            .zz_vec(j, k, l)?
            .scale(&c_kl)
            .add_scaled(&c_l, &self.zsq_vec(j, l)?)
            .add_scaled(&c_k, &self.zsq_vec(j, k)?))
    }
}
