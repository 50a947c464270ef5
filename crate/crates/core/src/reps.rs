//! Irreducible finite-dimensional highest weight representations as explicit
//! matrices on a weight-graded basis.

use std::collections::{BTreeMap, VecDeque};
use std::sync::Arc;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::exactla::{int, Matrix, Scalar};
use crate::liealg::{build_algebra, AlgebraKind, Element, LieAlgebra, Weight};
use crate::tensor::{add_entry, express, kernel_of_images, sparse_rank, SparseColumns, SparseVec, TensorLayout};

/// Default bound on the tensor power searched by [`irrep_from_tensor_power`].
pub const DEFAULT_MAX_POWER: usize = 6;

#[derive(Clone, Debug)]
pub struct Representation {
    algebra: Arc<LieAlgebra>,
    actions: Vec<Matrix>,
    sparse: Vec<SparseColumns>,
    weights: Vec<Weight>,
    highest_weight: Weight,
    hw_index: usize,
    form: Matrix,
}

impl Representation {
    fn assemble(
        algebra: Arc<LieAlgebra>,
        actions: Vec<Matrix>,
        weights: Vec<Weight>,
        highest_weight: Weight,
        form: Matrix,
    ) -> Self {
        let sparse = actions.iter().map(SparseColumns::from_matrix).collect();
        Representation {
            algebra,
            actions,
            sparse,
            weights,
            highest_weight,
            hw_index: 0,
            form,
        }
    }

    /// One-dimensional trivial representation.
    pub fn trivial(algebra: Arc<LieAlgebra>) -> Self {
        let actions = vec![Matrix::zeros(1, 1); algebra.dim()];
        let zero = Weight::zero(algebra.rank());
        Self::assemble(algebra, actions, vec![zero.clone()], zero, Matrix::identity(1))
    }

    pub fn algebra(&self) -> &Arc<LieAlgebra> {
        &self.algebra
    }

    pub fn dim(&self) -> usize {
        self.weights.len()
    }

    /// Action matrix of the `i`-th basis element of the algebra.
    pub fn action(&self, i: usize) -> &Matrix {
        &self.actions[i]
    }

    pub(crate) fn sparse_action(&self, i: usize) -> &SparseColumns {
        &self.sparse[i]
    }

    pub fn action_of(&self, x: &Element) -> Matrix {
        let mut m = Matrix::zeros(self.dim(), self.dim());
        for (i, c) in x.support() {
            m.add_scaled(c, &self.actions[i]);
        }
        m
    }

    pub fn weights(&self) -> &[Weight] {
        &self.weights
    }

    pub fn highest_weight(&self) -> &Weight {
        &self.highest_weight
    }

    /// Index of the highest weight vector `v` (always the first basis vector).
    pub fn hw_index(&self) -> usize {
        self.hw_index
    }

    /// Gram matrix of the contravariant form, `⟨X w, u⟩ = ⟨w, Xᵀ u⟩`, `⟨v, v⟩ = 1`.
    pub fn form(&self) -> &Matrix {
        &self.form
    }

    pub fn weight_spaces(&self) -> BTreeMap<Weight, Vec<usize>> {
        weight_spaces(self)
    }
}

/// Partition of basis indices by weight.
pub fn weight_spaces(rep: &Representation) -> BTreeMap<Weight, Vec<usize>> {
    let mut out: BTreeMap<Weight, Vec<usize>> = BTreeMap::new();
    for (i, w) in rep.weights.iter().enumerate() {
        out.entry(w.clone()).or_default().push(i);
    }
    out
}

/// `V(m)` for `sl2` on the basis `v, yv, …, y^m v`, with
/// `x·(y^a v) = a(m − a + 1) y^{a−1} v`.
pub fn sl2_irrep(m: usize) -> Representation {
    let algebra = Arc::new(build_algebra(AlgebraKind::Sl2, 2).expect("sl2 is valid"));
    sl2_irrep_over(algebra, m)
}

/// As [`sl2_irrep`], sharing an existing `sl2` algebra.
pub fn sl2_irrep_over(algebra: Arc<LieAlgebra>, m: usize) -> Representation {
    assert_eq!(algebra.kind(), AlgebraKind::Sl2);
    let dim = m + 1;
    let mi = m as i64;
    let mut x = Matrix::zeros(dim, dim);
    let mut y = Matrix::zeros(dim, dim);
    let mut h = Matrix::zeros(dim, dim);
    let mut norms = Vec::with_capacity(dim);
    let mut norm = Scalar::one();
    for a in 0..dim {
        let ai = a as i64;
        h[(a, a)] = int(mi - 2 * ai);
        if a + 1 < dim {
            y[(a + 1, a)] = Scalar::one();
        }
        if a > 0 {
            x[(a - 1, a)] = int(ai * (mi - ai + 1));
            norm *= int(ai * (mi - ai + 1));
        }
        norms.push(norm.clone());
    }
    let weights = (0..dim).map(|a| Weight(vec![int(mi - 2 * a as i64)])).collect();
    Representation::assemble(
        algebra,
        vec![x, y, h],
        weights,
        Weight(vec![int(mi)]),
        Matrix::diagonal(&norms),
    )
}

/// Weights of the standard basis vectors of the defining representation.
fn defining_weights(g: &LieAlgebra) -> Vec<Weight> {
    (0..g.size())
        .map(|p| {
            Weight(
                g.cartan_indices()
                    .iter()
                    .map(|&c| g.basis()[c].matrix[(p, p)].clone())
                    .collect(),
            )
        })
        .collect()
}

/// Realizes `V(λ)` inside the smallest tensor power `(ℚ^N)^{⊗d}`, `d ≤ max_power`,
/// containing a highest weight vector of weight `λ`, then closes that vector
/// under the simple lowering operators breadth-first.
pub fn irrep_from_tensor_power(algebra: Arc<LieAlgebra>, lambda: &Weight, max_power: usize) -> Result<Representation> {
    if !algebra.is_dominant_integral(lambda) {
        return Err(Error::InvalidWeight(format!("{lambda} is not dominant integral for {}", algebra.kind())));
    }
    let g = algebra.as_ref();
    let n = g.size();
    let def_weights = defining_weights(g);
    let def_ops: Vec<SparseColumns> = g.basis().iter().map(|b| SparseColumns::from_matrix(&b.matrix)).collect();
    let raising: Vec<usize> = g.simple_roots().map(|r| r.raising).collect();
    let lowering: Vec<Element> = g.simple_roots().map(|r| r.dual_lowering.clone()).collect();
    let simple: Vec<Weight> = g.simple_roots().map(|r| r.root.clone()).collect();

    for d in 0..=max_power {
        let layout = TensorLayout::new(vec![n; d]);
        let weight_of = |idx: usize| {
            layout
                .digits(idx)
                .iter()
                .fold(Weight::zero(g.rank()), |acc, &p| acc.add(&def_weights[p]))
        };
        let space: Vec<usize> = (0..layout.total()).filter(|&i| weight_of(i) == *lambda).collect();
        if space.is_empty() {
            continue;
        }
        let diag = |op: usize, v: &SparseVec| -> SparseVec {
            let mut out = SparseVec::new();
            for s in 0..d {
                layout.apply_slot_into(&mut out, &Scalar::one(), s, &def_ops[op], v);
            }
            out
        };
        let diag_elem = |x: &Element, v: &SparseVec| -> SparseVec {
            let mut out = SparseVec::new();
            for (i, c) in x.support() {
                for (k, val) in diag(i, v) {
                    add_entry(&mut out, k, c * val);
                }
            }
            out
        };
        // joint kernel of the simple raising operators on the λ weight space
        let mut images: Vec<SparseVec> = Vec::new();
        for &idx in &space {
            let unit: SparseVec = [(idx, Scalar::one())].into_iter().collect();
            let mut stacked = SparseVec::new();
            for (r, &op) in raising.iter().enumerate() {
                for (k, val) in diag(op, &unit) {
                    add_entry(&mut stacked, r * layout.total() + k, val);
                }
            }
            images.push(stacked);
        }
        let kernel = kernel_of_images(&images);
        let Some(first) = kernel.into_iter().next() else {
            continue;
        };
        let hw: SparseVec = space
            .iter()
            .zip(first)
            .filter(|(_, c)| !c.is_zero())
            .map(|(&i, c)| (i, c))
            .collect();

        // breadth-first closure under the simple lowering operators
        let mut basis: Vec<SparseVec> = vec![hw];
        let mut weights: Vec<Weight> = vec![lambda.clone()];
        let mut by_weight: BTreeMap<Weight, Vec<usize>> = BTreeMap::new();
        by_weight.insert(lambda.clone(), vec![0]);
        let mut queue = VecDeque::from([0usize]);
        while let Some(b) = queue.pop_front() {
            for (f, alpha) in lowering.iter().zip(&simple) {
                let u = diag_elem(f, &basis[b]);
                if u.is_empty() {
                    continue;
                }
                let w = weights[b].sub(alpha);
                let members = by_weight.entry(w.clone()).or_default();
                let mut family: Vec<&SparseVec> = members.iter().map(|&i| &basis[i]).collect();
                family.push(&u);
                if sparse_rank(&family) > members.len() {
                    members.push(basis.len());
                    basis.push(u);
                    weights.push(w);
                    queue.push_back(basis.len() - 1);
                }
            }
        }

        let dim = basis.len();
        let mut actions = Vec::with_capacity(g.dim());
        for op in 0..g.dim() {
            let mut m = Matrix::zeros(dim, dim);
            for (j, b) in basis.iter().enumerate() {
                let u = diag(op, b);
                if u.is_empty() {
                    continue;
                }
                let target = weights[j].add(&weight_shift(g, op));
                let members = by_weight.get(&target).ok_or_else(|| {
                    Error::Invariant(format!("irreducible span not closed under {}", g.label(op)))
                })?;
                let family: Vec<&SparseVec> = members.iter().map(|&i| &basis[i]).collect();
                let coords = express(&family, &u).ok_or_else(|| {
                    Error::Invariant(format!("irreducible span not closed under {}", g.label(op)))
                })?;
                for (&i, c) in members.iter().zip(coords) {
                    m[(i, j)] = c;
                }
            }
            actions.push(m);
        }
        let ambient = |a: &SparseVec, b: &SparseVec| -> Scalar {
            a.iter()
                .filter_map(|(i, x)| b.get(i).map(|y| x * y))
                .fold(Scalar::zero(), |acc, v| acc + v)
        };
        let vv = ambient(&basis[0], &basis[0]);
        let form = crate::exactla::gram_matrix(&basis, |a, b| ambient(a, b) / &vv);
        return Ok(Representation::assemble(algebra.clone(), actions, weights, lambda.clone(), form));
    }
    Err(Error::Unrealizable {
        weight: lambda.to_string(),
        max_power,
    })
}

/// Weight carried by the `op`-th basis element (zero for Cartan elements).
fn weight_shift(g: &LieAlgebra, op: usize) -> Weight {
    for r in g.positive_roots() {
        if r.raising == op {
            return r.root.clone();
        }
        if r.lowering == op {
            return r.root.scale(&-Scalar::one());
        }
    }
    Weight::zero(g.rank())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactla::{commutator, is_zero_vec, Echelon};

    fn alg(kind: AlgebraKind, n: usize) -> Arc<LieAlgebra> {
        Arc::new(build_algebra(kind, n).unwrap())
    }

    fn check_bracket_fidelity(rep: &Representation) {
        let g = rep.algebra();
        for a in 0..g.dim() {
            for b in 0..g.dim() {
                let br = g.bracket(&Element::basis(g.dim(), a), &Element::basis(g.dim(), b)).unwrap();
                let lhs = rep.action_of(&br);
                let rhs = commutator(rep.action(a), rep.action(b)).unwrap();
                assert_eq!(lhs, rhs, "bracket of {} and {}", g.label(a), g.label(b));
            }
        }
    }

    fn check_weight_vectors(rep: &Representation) {
        let g = rep.algebra();
        for (ci, &c) in g.cartan_indices().iter().enumerate() {
            let m = rep.action(c);
            for (i, w) in rep.weights().iter().enumerate() {
                let col = m.column(i);
                for (r, x) in col.iter().enumerate() {
                    let expect = if r == i { w.0[ci].clone() } else { Scalar::zero() };
                    assert_eq!(*x, expect);
                }
            }
        }
        for r in g.positive_roots() {
            assert!(is_zero_vec(&rep.action(r.raising).column(rep.hw_index())));
        }
    }

    fn check_contravariant(rep: &Representation) {
        let g = rep.algebra();
        let form = rep.form();
        assert!(form.is_positive_definite());
        assert_eq!(form[(0, 0)], int(1));
        for a in 0..g.dim() {
            let x = rep.action(a);
            let xt = rep.action_of(&g.transpose(&Element::basis(g.dim(), a)).unwrap());
            assert_eq!(x.transpose().mul(form).unwrap(), form.mul(&xt).unwrap());
        }
    }

    fn check_irreducible(rep: &Representation) {
        let n = rep.dim();
        for start in 0..n {
            let mut e = Echelon::new(n);
            let mut unit = vec![Scalar::zero(); n];
            unit[start] = Scalar::one();
            e.insert(&unit);
            let mut frontier = vec![unit];
            while let Some(v) = frontier.pop() {
                for a in 0..rep.algebra().dim() {
                    let u = rep.action(a).mul_vec(&v).unwrap();
                    if e.insert(&u) {
                        frontier.push(u);
                    }
                }
            }
            assert_eq!(e.dim(), n);
        }
    }

    fn check_all(rep: &Representation) {
        check_bracket_fidelity(rep);
        check_weight_vectors(rep);
        check_contravariant(rep);
        check_irreducible(rep);
    }

    #[test]
    fn sl2_small_irreps() {
        let triv = sl2_irrep(0);
        assert_eq!(triv.dim(), 1);
        assert!((0..3).all(|a| triv.action(a).is_zero()));
        let v1 = sl2_irrep(1);
        assert_eq!(*v1.action(2), Matrix::from_i64(&[&[1, 0], &[0, -1]]));
        assert_eq!(v1.action(0)[(0, 1)], int(1));
        let v2 = sl2_irrep(2);
        assert_eq!(v2.action(0)[(1, 2)], int(2));
        for m in 0..=6 {
            let v = sl2_irrep(m);
            assert_eq!(v.dim(), m + 1);
            check_all(&v);
        }
        assert_eq!(v1.form()[(1, 1)], int(1));
    }

    #[test]
    fn sl2_weight_spaces() {
        let ws = weight_spaces(&sl2_irrep(2));
        let dims: Vec<(Weight, usize)> = ws.into_iter().map(|(w, v)| (w, v.len())).collect();
        assert_eq!(
            dims,
            vec![(Weight::from_i64(&[-2]), 1), (Weight::from_i64(&[0]), 1), (Weight::from_i64(&[2]), 1)]
        );
        let triv = Representation::trivial(alg(AlgebraKind::Sl2, 2));
        assert_eq!(weight_spaces(&triv).keys().cloned().collect::<Vec<_>>(), vec![Weight::zero(1)]);
    }

    #[test]
    fn tensor_power_examples() {
        let gl2 = alg(AlgebraKind::Gl, 2);
        let def = irrep_from_tensor_power(gl2.clone(), &Weight::from_i64(&[1, 0]), 4).unwrap();
        assert_eq!(def.dim(), 2);
        check_all(&def);
        let det = irrep_from_tensor_power(gl2.clone(), &Weight::from_i64(&[1, 1]), 4).unwrap();
        assert_eq!(det.dim(), 1);
        assert_eq!(*det.action(gl2.index_of("E(1,1)").unwrap()), Matrix::identity(1));
        assert_eq!(*det.action(gl2.index_of("E(2,2)").unwrap()), Matrix::identity(1));

        let sl2 = alg(AlgebraKind::Sl2, 2);
        let adj = irrep_from_tensor_power(sl2, &Weight::from_i64(&[2]), 4).unwrap();
        assert_eq!(adj.dim(), 3);
        check_all(&adj);
        let mut a: Vec<Weight> = adj.weights().to_vec();
        let mut b: Vec<Weight> = sl2_irrep(2).weights().to_vec();
        a.sort();
        b.sort();
        assert_eq!(a, b);
    }

    #[test]
    fn tensor_power_errors() {
        let gl2 = alg(AlgebraKind::Gl, 2);
        assert!(matches!(
            irrep_from_tensor_power(gl2.clone(), &Weight::from_i64(&[0, 1]), 4),
            Err(Error::InvalidWeight(_))
        ));
        assert!(matches!(
            irrep_from_tensor_power(gl2, &Weight::from_i64(&[5, 0]), 3),
            Err(Error::Unrealizable { .. })
        ));
        // spin representation of so_3 never appears in tensor powers of the vector rep
        let so3 = alg(AlgebraKind::So, 3);
        let half = Weight(vec![crate::exactla::ratio(1, 2)]);
        assert!(irrep_from_tensor_power(so3, &half, 3).is_err());
    }

    /// Number of semistandard tableaux of shape `lambda` with entries in `1..=n`.
    fn count_ssyt(lambda: &[usize], n: usize) -> usize {
        let cells: Vec<(usize, usize)> = lambda
            .iter()
            .enumerate()
            .flat_map(|(r, &len)| (0..len).map(move |c| (r, c)))
            .collect();
        fn fill(cells: &[(usize, usize)], k: usize, n: usize, grid: &mut BTreeMap<(usize, usize), usize>) -> usize {
            if k == cells.len() {
                return 1;
            }
            let (r, c) = cells[k];
            let mut total = 0;
            for v in 1..=n {
                if c > 0 && grid[&(r, c - 1)] > v {
                    continue;
                }
                if r > 0 && grid[&(r - 1, c)] >= v {
                    continue;
                }
                grid.insert((r, c), v);
                total += fill(cells, k + 1, n, grid);
                grid.remove(&(r, c));
            }
            total
        }
        fill(&cells, 0, n, &mut BTreeMap::new())
    }

    #[test]
    fn gl_dimensions_match_tableau_count() {
        for (n, shapes) in [
            (2usize, vec![vec![1, 0], vec![2, 0], vec![2, 1], vec![3, 0], vec![1, 1]]),
            (3, vec![vec![1, 0, 0], vec![1, 1, 0], vec![2, 0, 0], vec![2, 1, 0], vec![1, 1, 1]]),
        ] {
            let g = alg(AlgebraKind::Gl, n);
            for shape in shapes {
                let w = Weight(shape.iter().map(|&x| int(x as i64)).collect());
                let rep = irrep_from_tensor_power(g.clone(), &w, 4).unwrap();
                let oracle = count_ssyt(&shape, n);
                assert_eq!(rep.dim(), oracle, "gl{n} {shape:?}");
                assert_eq!(g.weyl_dimension(&w), int(oracle as i64));
                check_all(&rep);
            }
        }
    }

    #[test]
    fn other_kinds_build_cleanly() {
        for (kind, n, w) in [
            (AlgebraKind::Sl, 3, vec![1, 0]),
            (AlgebraKind::Sl, 3, vec![0, 1]),
            (AlgebraKind::Sl, 3, vec![1, 1]),
            (AlgebraKind::So, 3, vec![1]),
            (AlgebraKind::So, 3, vec![2]),
            (AlgebraKind::So, 5, vec![1, 0]),
            (AlgebraKind::Sp, 4, vec![1, 0]),
            (AlgebraKind::Sp, 4, vec![1, 1]),
        ] {
            let g = alg(kind, n);
            let w = Weight::from_i64(&w);
            let rep = irrep_from_tensor_power(g.clone(), &w, 4).unwrap();
            assert_eq!(int(rep.dim() as i64), g.weyl_dimension(&w), "{kind}{n} {w}");
            check_all(&rep);
        }
    }
}
