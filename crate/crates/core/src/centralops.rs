//! Central operators on evaluation modules: `Ω(a,b)` and the Gelfand-type
//! invariants `T_k` (gl) and `S_k` (so, sp), applied vector by vector and
//! materialized on the whole module or on a single weight space.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::evalmod::{EvaluationModule, ModuleVector, WeightSpace};
use crate::exactla::{int, Matrix, Scalar};
use crate::interp::LaurentPoly;
use crate::liealg::{AlgebraKind, Element, Weight};

/// Default bound on the number of index cycles `N^k` of a Gelfand invariant.
pub const DEFAULT_TERM_BUDGET: u128 = 100_000;

/// Loop coefficient: a Laurent polynomial, or the idempotent `P_i` of the module's points.
#[derive(Clone, Debug, PartialEq)]
pub enum Coeff {
    Poly(LaurentPoly),
    Idempotent(usize),
}

impl Coeff {
    /// Values at the evaluation points, one per slot.
    pub fn slot_values(&self, module: &EvaluationModule) -> Result<Vec<Scalar>> {
        match self {
            Coeff::Poly(p) => module.points().as_slice().iter().map(|a| p.evaluate(a)).collect(),
            Coeff::Idempotent(i) => {
                if *i == 0 || *i > module.factor_count() {
                    return Err(Error::InvalidIndex(format!("P{i} with {} points", module.factor_count())));
                }
                Ok((1..=module.factor_count())
                    .map(|s| if s == *i { Scalar::one() } else { Scalar::zero() })
                    .collect())
            }
        }
    }
}

impl fmt::Display for Coeff {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Coeff::Poly(p) => write!(f, "{p}"),
            Coeff::Idempotent(i) => write!(f, "P{i}"),
        }
    }
}

impl FromStr for Coeff {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if let Some(rest) = s.strip_prefix('P') {
            return rest
                .parse::<usize>()
                .map(Coeff::Idempotent)
                .map_err(|_| Error::Parse(format!("bad idempotent {s:?}")));
        }
        s.parse::<LaurentPoly>().map(Coeff::Poly)
    }
}

impl From<LaurentPoly> for Coeff {
    fn from(p: LaurentPoly) -> Self {
        Coeff::Poly(p)
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct OmegaSpec {
    pub a: Coeff,
    pub b: Coeff,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum GelfandFamily {
    /// `T_k`, built from `E_ij` (gl).
    T,
    /// `S_k`, built from `F_ij` (so, sp).
    S,
}

#[derive(Clone, Debug, PartialEq)]
pub struct GelfandSpec {
    pub family: GelfandFamily,
    pub coeffs: Vec<Coeff>,
}

impl GelfandSpec {
    pub fn k(&self) -> usize {
        self.coeffs.len()
    }

    /// The same invariant with its coefficients in reverse order.
    pub fn reversed(&self) -> Self {
        GelfandSpec {
            family: self.family,
            coeffs: self.coeffs.iter().rev().cloned().collect(),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum OperatorSpec {
    Omega(OmegaSpec),
    Gelfand(GelfandSpec),
}

impl OperatorSpec {
    pub fn omega(a: Coeff, b: Coeff) -> Self {
        OperatorSpec::Omega(OmegaSpec { a, b })
    }

    /// `Ω(l,k) = Ω(P_l, P_k)`.
    pub fn omega_lk(l: usize, k: usize) -> Self {
        Self::omega(Coeff::Idempotent(l), Coeff::Idempotent(k))
    }

    pub fn gelfand(family: GelfandFamily, coeffs: Vec<Coeff>) -> Self {
        OperatorSpec::Gelfand(GelfandSpec { family, coeffs })
    }
}

impl fmt::Display for OperatorSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            OperatorSpec::Omega(OmegaSpec {
                a: Coeff::Idempotent(l),
                b: Coeff::Idempotent(k),
            }) => write!(f, "omega_lk({l},{k})"),
            OperatorSpec::Omega(s) => write!(f, "omega(a={}, b={})", s.a, s.b),
            OperatorSpec::Gelfand(g) => {
                let name = match g.family {
                    GelfandFamily::T => "T",
                    GelfandFamily::S => "S",
                };
                let cs: Vec<String> = g.coeffs.iter().map(Coeff::to_string).collect();
                write!(f, "{name}({}; {})", g.k(), cs.join(", "))
            }
        }
    }
}

/// Splits on commas that are not nested inside parentheses.
fn split_top_level(s: &str, sep: char) -> Vec<&str> {
    let mut out = Vec::new();
    let mut depth = 0i32;
    let mut start = 0;
    for (i, c) in s.char_indices() {
        match c {
            '(' => depth += 1,
            ')' => depth -= 1,
            c if c == sep && depth == 0 => {
                out.push(&s[start..i]);
                start = i + c.len_utf8();
            }
            _ => {}
        }
    }
    out.push(&s[start..]);
    out
}

impl FromStr for OperatorSpec {
    type Err = Error;

    fn from_str(text: &str) -> Result<Self> {
        let s = text.trim();
        let bad = |why: &str| Error::Parse(format!("operator {s:?}: {why}"));
        let open = s.find('(').ok_or_else(|| bad("expected name(arguments)"))?;
        if !s.ends_with(')') {
            return Err(bad("missing closing parenthesis"));
        }
        let name = s[..open].trim();
        let body = &s[open + 1..s.len() - 1];
        match name {
            "omega" => {
                let args = split_top_level(body, ',');
                if args.len() != 2 {
                    return Err(bad("omega takes two coefficients"));
                }
                let mut a = None;
                let mut b = None;
                for (pos, arg) in args.iter().enumerate() {
                    let (key, value) = match arg.split_once('=') {
                        Some((k, v)) => (k.trim(), v),
                        None => (if pos == 0 { "a" } else { "b" }, *arg),
                    };
                    let c: Coeff = value.parse()?;
                    match key {
                        "a" if a.is_none() => a = Some(c),
                        "b" if b.is_none() => b = Some(c),
                        _ => return Err(bad(&format!("unexpected argument {key:?}"))),
                    }
                }
                Ok(OperatorSpec::omega(a.ok_or_else(|| bad("missing a"))?, b.ok_or_else(|| bad("missing b"))?))
            }
            "omega_lk" => {
                let args = split_top_level(body, ',');
                let idx: Vec<usize> = args
                    .iter()
                    .map(|x| x.trim().parse::<usize>().map_err(|_| bad("indices must be positive integers")))
                    .collect::<Result<_>>()?;
                match idx[..] {
                    [l, k] => Ok(OperatorSpec::omega_lk(l, k)),
                    _ => Err(bad("omega_lk takes two indices")),
                }
            }
            "T" | "S" => {
                let (k, rest) = body.split_once(';').ok_or_else(|| bad("expected T(k; b1, ..., bk)"))?;
                let k: usize = k.trim().parse().map_err(|_| bad("k must be a positive integer"))?;
                if k == 0 {
                    return Err(bad("k must be at least 1"));
                }
                let coeffs: Vec<Coeff> = split_top_level(rest, ',')
                    .iter()
                    .map(|c| c.parse())
                    .collect::<Result<_>>()?;
                if coeffs.len() != k {
                    return Err(bad(&format!("expected {k} coefficients, found {}", coeffs.len())));
                }
                let family = if name == "T" { GelfandFamily::T } else { GelfandFamily::S };
                Ok(OperatorSpec::gelfand(family, coeffs))
            }
            _ => Err(bad(&format!("unknown operator {name:?}"))),
        }
    }
}

/// Where an operator is materialized.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Domain {
    Whole,
    Weight(Weight),
}

impl Domain {
    /// Linear module indices spanning the domain, increasing.
    pub fn indices(&self, module: &EvaluationModule) -> Vec<usize> {
        match self {
            Domain::Whole => (0..module.dim()).collect(),
            Domain::Weight(mu) => module.weight_space(mu).indices().to_vec(),
        }
    }

    fn space(&self, module: &EvaluationModule) -> WeightSpace {
        match self {
            Domain::Whole => unreachable!("whole domain has no single weight"),
            Domain::Weight(mu) => module.weight_space(mu),
        }
    }
}

/// An operator restricted to a domain, in the domain's basis.
#[derive(Clone, Debug)]
pub struct OperatorMatrix {
    pub spec: OperatorSpec,
    pub domain: Domain,
    pub indices: Vec<usize>,
    pub matrix: Matrix,
}

/// Applies operators to module vectors with a fixed term budget.
#[derive(Clone, Copy, Debug)]
pub struct Evaluator<'a> {
    module: &'a EvaluationModule,
    term_budget: u128,
}

impl<'a> Evaluator<'a> {
    pub fn new(module: &'a EvaluationModule) -> Self {
        Evaluator {
            module,
            term_budget: DEFAULT_TERM_BUDGET,
        }
    }

    pub fn with_budget(module: &'a EvaluationModule, term_budget: u128) -> Self {
        Evaluator { module, term_budget }
    }

    pub fn module(&self) -> &EvaluationModule {
        self.module
    }

    /// Checks the operator against the module without applying it.
    pub fn validate(&self, spec: &OperatorSpec) -> Result<()> {
        match spec {
            OperatorSpec::Omega(o) => {
                o.a.slot_values(self.module)?;
                o.b.slot_values(self.module)?;
            }
            OperatorSpec::Gelfand(g) => {
                for c in &g.coeffs {
                    c.slot_values(self.module)?;
                }
                self.gelfand_generators(g)?;
            }
        }
        Ok(())
    }

    pub fn apply(&self, spec: &OperatorSpec, v: &ModuleVector) -> Result<ModuleVector> {
        match spec {
            OperatorSpec::Omega(o) => self.apply_omega(o, v),
            OperatorSpec::Gelfand(g) => self.apply_gelfand(g, v),
        }
    }

    fn apply_omega(&self, spec: &OmegaSpec, v: &ModuleVector) -> Result<ModuleVector> {
        let m = self.module;
        let g = m.algebra();
        let a = spec.a.slot_values(m)?;
        let b = spec.b.slot_values(m)?;
        let ab: Vec<Scalar> = a.iter().zip(&b).map(|(x, y)| int(2) * x * y).collect();
        let mut out = m.act_weighted(g.rho_vec(), &ab, v)?;
        for (lower, upper) in g.cartan_dual_pairs() {
            // u^i(a) u_i(b)
            let inner = m.act_weighted(lower, &b, v)?;
            out = out.add(&m.act_weighted(upper, &a, &inner)?);
        }
        for r in g.positive_roots() {
            let e = Element::basis(g.dim(), r.raising);
            let f = &r.dual_lowering;
            out = out.add(&m.act_weighted(f, &a, &m.act_weighted(&e, &b, v)?)?);
            out = out.add(&m.act_weighted(f, &b, &m.act_weighted(&e, &a, v)?)?);
        }
        Ok(out)
    }

    /// Index set and generator lookup `(i, j) ↦ E_ij` or `F_ij`.
    fn gelfand_generators(&self, spec: &GelfandSpec) -> Result<(Vec<i64>, Vec<Vec<Element>>)> {
        let g = self.module.algebra();
        let kind = g.kind();
        let indices: Vec<i64> = match (spec.family, kind) {
            (GelfandFamily::T, AlgebraKind::Gl) => (1..=g.size() as i64).collect(),
            (GelfandFamily::S, AlgebraKind::So | AlgebraKind::Sp) => g.index_set().expect("so/sp index set").to_vec(),
            (GelfandFamily::T, _) => return Err(Error::Precondition(format!("T_k needs gl, module is over {kind}"))),
            (GelfandFamily::S, _) => return Err(Error::Precondition(format!("S_k needs so or sp, module is over {kind}"))),
        };
        if spec.coeffs.is_empty() {
            return Err(Error::Precondition("Gelfand invariant with k = 0".into()));
        }
        let terms = (indices.len() as u128)
            .checked_pow(spec.k() as u32)
            .unwrap_or(u128::MAX);
        if terms > self.term_budget {
            return Err(Error::BudgetExceeded {
                terms,
                budget: self.term_budget,
            });
        }
        let table = indices
            .iter()
            .map(|&i| {
                indices
                    .iter()
                    .map(|&j| match spec.family {
                        GelfandFamily::T => g.e_element(i as usize, j as usize),
                        GelfandFamily::S => g.f_element(i, j),
                    })
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        Ok((indices, table))
    }

    /// `Σ_{i_1..i_k} X_{i_1 i_2}(b_1) ⋯ X_{i_k i_1}(b_k) v`, summed by dynamic
    /// programming over the cycle: the rightmost factor is applied first.
    fn apply_gelfand(&self, spec: &GelfandSpec, v: &ModuleVector) -> Result<ModuleVector> {
        let m = self.module;
        let (indices, x) = self.gelfand_generators(spec)?;
        let n = indices.len();
        let k = spec.k();
        let coeffs: Vec<Vec<Scalar>> = spec.coeffs.iter().map(|c| c.slot_values(m)).collect::<Result<_>>()?;
        let mut out = ModuleVector::zero();
        for i1 in 0..n {
            if k == 1 {
                out = out.add(&m.act_weighted(&x[i1][i1], &coeffs[0], v)?);
                continue;
            }
            // partial[j] = X_{j i1}(b_k) v, indexed by i_k = j
            let mut partial: Vec<ModuleVector> = (0..n)
                .map(|j| m.act_weighted(&x[j][i1], &coeffs[k - 1], v))
                .collect::<Result<_>>()?;
            for r in (1..k - 1).rev() {
                let mut next = vec![ModuleVector::zero(); n];
                for (j, slot) in next.iter_mut().enumerate() {
                    for (l, p) in partial.iter().enumerate() {
                        if p.is_zero() || x[j][l].is_zero() {
                            continue;
                        }
                        *slot = slot.add(&m.act_weighted(&x[j][l], &coeffs[r], p)?);
                    }
                }
                partial = next;
            }
            for (l, p) in partial.iter().enumerate() {
                if p.is_zero() || x[i1][l].is_zero() {
                    continue;
                }
                out = out.add(&m.act_weighted(&x[i1][l], &coeffs[0], p)?);
            }
        }
        Ok(out)
    }

    /// Materializes `spec` on `domain`; errors if the image leaves the domain.
    pub fn materialize(&self, spec: &OperatorSpec, domain: &Domain) -> Result<OperatorMatrix> {
        self.validate(spec)?;
        let indices = domain.indices(self.module);
        let n = indices.len();
        let mut matrix = Matrix::zeros(n, n);
        let position = |i: usize| indices.binary_search(&i).ok();
        for (col, &idx) in indices.iter().enumerate() {
            let image = self.apply(spec, &ModuleVector::unit(idx))?;
            for (i, c) in image.entries() {
                let row = position(i).ok_or_else(|| {
                    Error::DomainMismatch(format!("{spec} maps basis vector {idx} outside the domain"))
                })?;
                matrix[(row, col)] = c.clone();
            }
        }
        Ok(OperatorMatrix {
            spec: spec.clone(),
            domain: domain.clone(),
            indices,
            matrix,
        })
    }

    /// Restriction of `spec` to the subspace spanned by `basis` inside the weight space `mu`.
    /// Returns the matrix in that basis; errors if the subspace is not invariant.
    pub fn restrict(&self, spec: &OperatorSpec, mu: &Weight, basis: &[ModuleVector]) -> Result<Matrix> {
        let space = Domain::Weight(mu.clone()).space(self.module);
        let cols: Vec<Vec<Scalar>> = basis.iter().map(|b| space.coords(b)).collect::<Result<_>>()?;
        let frame = Matrix::from_columns(space.dim(), &cols);
        let mut out = Vec::with_capacity(basis.len());
        for b in basis {
            let image = space.coords(&self.apply(spec, b)?)?;
            let c = frame
                .solve(&image)
                .ok_or_else(|| Error::DomainMismatch(format!("{spec} does not preserve the subspace")))?;
            out.push(c);
        }
        Ok(Matrix::from_columns(basis.len(), &out))
    }
}

pub fn omega_matrix(module: &EvaluationModule, spec: &OmegaSpec, domain: &Domain) -> Result<OperatorMatrix> {
    Evaluator::new(module).materialize(&OperatorSpec::Omega(spec.clone()), domain)
}

pub fn omega_lk(module: &EvaluationModule, l: usize, k: usize, domain: &Domain) -> Result<OperatorMatrix> {
    Evaluator::new(module).materialize(&OperatorSpec::omega_lk(l, k), domain)
}

pub fn gelfand_matrix(module: &EvaluationModule, spec: &GelfandSpec, domain: &Domain, term_budget: u128) -> Result<OperatorMatrix> {
    Evaluator::with_budget(module, term_budget).materialize(&OperatorSpec::Gelfand(spec.clone()), domain)
}

/// Outcome of comparing `Op(X u)` with `X (Op u)` for every algebra basis element `X`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CentralityReport {
    pub generators_checked: usize,
    pub vectors_checked: usize,
    /// Largest absolute numerator over all entries of all commutators.
    #[serde(serialize_with = "crate::centralops::ser_bigint")]
    pub max_abs_numerator: BigInt,
    /// Labels of generators with a nonzero commutator.
    pub failing_generators: Vec<String>,
}

impl CentralityReport {
    pub fn is_central(&self) -> bool {
        self.max_abs_numerator.is_zero()
    }
}

pub(crate) fn ser_bigint<S: serde::Serializer>(x: &BigInt, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&x.to_string())
}

fn record(report: &mut CentralityReport, label: &str, diff: &ModuleVector) {
    let mut bad = false;
    for (_, c) in diff.entries() {
        bad = true;
        let n = c.numer().abs();
        if n > report.max_abs_numerator {
            report.max_abs_numerator = n;
        }
    }
    if bad && !report.failing_generators.iter().any(|g| g == label) {
        report.failing_generators.push(label.to_string());
    }
}

/// Commutators `[Op, X ⊗ 1]` on every basis vector of `domain`. The operator is applied
/// vector-wise, so weight-space domains are checked without leaving the module.
pub fn centrality_check(evaluator: &Evaluator<'_>, spec: &OperatorSpec, domain: &Domain) -> Result<CentralityReport> {
    let module = evaluator.module();
    evaluator.validate(spec)?;
    let g = module.algebra();
    let indices = domain.indices(module);
    let mut report = CentralityReport {
        generators_checked: g.dim(),
        vectors_checked: indices.len(),
        max_abs_numerator: BigInt::zero(),
        failing_generators: Vec::new(),
    };
    for &idx in &indices {
        let u = ModuleVector::unit(idx);
        let op_u = evaluator.apply(spec, &u)?;
        for a in 0..g.dim() {
            let x = Element::basis(g.dim(), a);
            let lhs = evaluator.apply(spec, &module.act_diagonal(&x, &u)?)?;
            let rhs = module.act_diagonal(&x, &op_u)?;
            record(&mut report, g.label(a), &lhs.sub(&rhs));
        }
    }
    Ok(report)
}

/// Commutators of a whole-module matrix with the diagonal action of every basis element.
pub fn centrality_of_matrix(module: &EvaluationModule, op: &Matrix) -> Result<CentralityReport> {
    if op.rows() != module.dim() || op.cols() != module.dim() {
        return Err(Error::DimensionMismatch(format!(
            "{}x{} operator on a module of dimension {}",
            op.rows(),
            op.cols(),
            module.dim()
        )));
    }
    let g = module.algebra();
    let mut report = CentralityReport {
        generators_checked: g.dim(),
        vectors_checked: module.dim(),
        max_abs_numerator: BigInt::zero(),
        failing_generators: Vec::new(),
    };
    for a in 0..g.dim() {
        let x = Element::basis(g.dim(), a);
        let mut xm = Matrix::zeros(module.dim(), module.dim());
        for j in 0..module.dim() {
            for (i, c) in module.act_diagonal(&x, &ModuleVector::unit(j))?.entries() {
                xm[(i, j)] = c.clone();
            }
        }
        let comm = crate::exactla::commutator(op, &xm)?;
        let diff = ModuleVector::from_entries(comm.entries().iter().cloned().enumerate());
        record(&mut report, g.label(a), &diff);
    }
    Ok(report)
}
