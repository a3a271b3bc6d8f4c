//! Representations of a bound quiver algebra: one exact rational matrix per
//! arrow, of shape `d(head) x d(tail)`.

use crate::algebra::{AlgebraError, AlgebraRef, ArrowId, Path};
use crate::linalg::{Q, QMat};
use num::{One, Zero};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum RepError {
    #[error("matrix for arrow `{arrow}` has shape {got_rows}x{got_cols}, expected {want_rows}x{want_cols}")]
    ShapeMismatch { arrow: String, want_rows: usize, want_cols: usize, got_rows: usize, got_cols: usize },
    #[error("representations live over different algebras")]
    AlgebraMismatch,
    #[error("operation undefined on the zero module")]
    ZeroModule,
    #[error("relation `{0}` does not evaluate to zero")]
    RelationFails(String),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error("{0}")]
    Io(String),
}

/// A point of `mod(A, d)`: dimension vector plus arrow matrices.
///
/// Every constructor exported by this crate produces representations that
/// satisfy all relations; `new` checks shapes only, so callers loading
/// untrusted data should follow up with [`Representation::check_relations`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Representation {
    algebra: AlgebraRef,
    dims: Vec<usize>,
    mats: Vec<QMat>,
}

impl Representation {
    pub fn new(
        algebra: AlgebraRef,
        dims: Vec<usize>,
        mats: Vec<QMat>,
    ) -> Result<Self, RepError> {
        assert_eq!(dims.len(), algebra.quiver().vertex_count());
        assert_eq!(mats.len(), algebra.quiver().arrow_count());
        for (i, a) in algebra.quiver().arrows().iter().enumerate() {
            let want_rows = dims[algebra.quiver().vertex_index(a.head)?];
            let want_cols = dims[algebra.quiver().vertex_index(a.tail)?];
            if mats[i].rows() != want_rows || mats[i].cols() != want_cols {
                return Err(RepError::ShapeMismatch {
                    arrow: a.name.clone(),
                    want_rows,
                    want_cols,
                    got_rows: mats[i].rows(),
                    got_cols: mats[i].cols(),
                });
            }
        }
        Ok(Representation { algebra, dims, mats })
    }

    pub fn zero(algebra: AlgebraRef, dims: Vec<usize>) -> Result<Self, RepError> {
        let q = algebra.quiver().clone();
        let mats = q
            .arrows()
            .iter()
            .map(|a| {
                QMat::zeros(
                    dims[q.vertex_index(a.head).unwrap()],
                    dims[q.vertex_index(a.tail).unwrap()],
                )
            })
            .collect();
        Representation::new(algebra, dims, mats)
    }

    /// Simple module concentrated at vertex `v`.
    pub fn simple(algebra: AlgebraRef, v: u32) -> Result<Self, RepError> {
        let i = algebra.quiver().vertex_index(v)?;
        let mut dims = vec![0; algebra.quiver().vertex_count()];
        dims[i] = 1;
        Representation::zero(algebra, dims)
    }

    pub fn algebra(&self) -> &AlgebraRef {
        &self.algebra
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn dim_total(&self) -> usize {
        self.dims.iter().sum()
    }

    pub fn vertex_dim(&self, v: u32) -> usize {
        self.dims[self.algebra.quiver().vertex_index(v).unwrap()]
    }

    pub fn mat(&self, a: ArrowId) -> &QMat {
        &self.mats[a.0]
    }

    pub fn mats(&self) -> &[QMat] {
        &self.mats
    }

    pub fn same_algebra(&self, other: &Representation) -> bool {
        AlgebraRef::ptr_eq(&self.algebra, &other.algebra) || *self.algebra == *other.algebra
    }

    /// Evaluate a path: product of arrow matrices in application order.
    pub fn evaluate_path(&self, p: &Path) -> QMat {
        let q = self.algebra.quiver();
        let start = self.dims[q.vertex_index(p.tail()).unwrap()];
        let mut acc = QMat::identity(start);
        for &a in p.arrows() {
            acc = self.mat(a).mul(&acc);
        }
        acc
    }

    /// True iff every relation evaluates to the zero matrix.
    pub fn check_relations(&self) -> bool {
        self.algebra.relations().iter().all(|r| self.evaluate_path(r).is_zero())
    }

    /// First failing relation, if any, rendered right-to-left.
    pub fn failing_relation(&self) -> Option<String> {
        self.algebra
            .relations()
            .iter()
            .find(|r| !self.evaluate_path(r).is_zero())
            .map(|r| r.display(self.algebra.quiver()))
    }

    /// Block-diagonal direct sum.
    pub fn direct_sum(&self, other: &Representation) -> Result<Representation, RepError> {
        if !self.same_algebra(other) {
            return Err(RepError::AlgebraMismatch);
        }
        let dims: Vec<usize> =
            self.dims.iter().zip(&other.dims).map(|(a, b)| a + b).collect();
        let q = self.algebra.quiver();
        let vi = |v: u32| q.vertex_index(v).unwrap();
        let mats = q
            .arrows()
            .iter()
            .enumerate()
            .map(|(i, a)| {
                let (m, n) = (&self.mats[i], &other.mats[i]);
                let mut out = QMat::zeros(dims[vi(a.head)], dims[vi(a.tail)]);
                for r in 0..m.rows() {
                    for c in 0..m.cols() {
                        out.set(r, c, m.at(r, c).clone());
                    }
                }
                for r in 0..n.rows() {
                    for c in 0..n.cols() {
                        out.set(m.rows() + r, m.cols() + c, n.at(r, c).clone());
                    }
                }
                out
            })
            .collect();
        Representation::new(self.algebra.clone(), dims, mats)
    }

    pub fn direct_sum_all(summands: &[Representation]) -> Result<Representation, RepError> {
        let mut it = summands.iter();
        let first = it.next().ok_or(RepError::ZeroModule)?;
        let mut acc = first.clone();
        for s in it {
            acc = acc.direct_sum(s)?;
        }
        Ok(acc)
    }

    /// Conjugate by a tuple of invertible vertex matrices: `M(a) -> g_h M(a) g_t^{-1}`
    /// realized as the base change sending this point to an isomorphic one.
    /// `g` must be square invertible per vertex; used mainly by tests.
    pub fn conjugate(&self, g: &[QMat]) -> Result<Representation, RepError> {
        let q = self.algebra.quiver();
        let vi = |v: u32| q.vertex_index(v).unwrap();
        let mut g_inv = Vec::with_capacity(g.len());
        for (i, gi) in g.iter().enumerate() {
            assert_eq!(gi.rows(), self.dims[i]);
            g_inv.push(invert(gi).ok_or_else(|| RepError::Io("singular base change".into()))?);
        }
        let mats = q
            .arrows()
            .iter()
            .enumerate()
            .map(|(i, a)| g[vi(a.head)].mul(&self.mats[i]).mul(&g_inv[vi(a.tail)]))
            .collect();
        Representation::new(self.algebra.clone(), self.dims.clone(), mats)
    }

    /// The smallest subrepresentation containing the given vectors (per-vertex
    /// coordinates); returned as one spanning matrix of columns per vertex.
    pub fn subrep_generated(&self, generators: &[(usize, Vec<Q>)]) -> Vec<QMat> {
        let q = self.algebra.quiver();
        let vi = |v: u32| q.vertex_index(v).unwrap();
        let mut spans: Vec<Vec<Vec<Q>>> = vec![Vec::new(); self.dims.len()];
        for (v, vec) in generators {
            assert_eq!(vec.len(), self.dims[*v]);
            spans[*v].push(vec.clone());
        }
        loop {
            let mut changed = false;
            for (i, a) in q.arrows().iter().enumerate() {
                let (t, h) = (vi(a.tail), vi(a.head));
                let images: Vec<Vec<Q>> =
                    spans[t].iter().map(|v| self.mats[i].apply(v)).collect();
                for img in images {
                    if img.iter().all(|x| x.is_zero()) {
                        continue;
                    }
                    if !in_span(&spans[h], &img) {
                        spans[h].push(img);
                        changed = true;
                    }
                }
            }
            if !changed {
                break;
            }
        }
        spans
            .into_iter()
            .enumerate()
            .map(|(i, vecs)| {
                let basis = reduce_span(vecs);
                QMat::from_fn(self.dims[i], basis.len(), |r, c| basis[c][r].clone())
            })
            .collect()
    }

    /// Quotient by a subrepresentation given as per-vertex column-span matrices.
    /// The subspaces must be arrow-stable; quotient bases are chosen
    /// deterministically from the standard basis.
    pub fn quotient(&self, sub: &[QMat]) -> Result<Representation, RepError> {
        let q = self.algebra.quiver();
        let vi = |v: u32| q.vertex_index(v).unwrap();
        // Per vertex: complete the subspace to a full basis; the inverse of the
        // basis matrix projects onto quotient coordinates, and the complement
        // columns of the basis give a section.
        let mut proj = Vec::with_capacity(self.dims.len());
        let mut sect = Vec::with_capacity(self.dims.len());
        let mut qdims = Vec::with_capacity(self.dims.len());
        for (i, s) in sub.iter().enumerate() {
            let d = self.dims[i];
            assert_eq!(s.rows(), d);
            let mut cols: Vec<Vec<Q>> =
                (0..s.cols()).map(|c| (0..d).map(|r| s.at(r, c).clone()).collect()).collect();
            cols = reduce_span(cols);
            let k = cols.len();
            for e in 0..d {
                if cols.len() == d {
                    break;
                }
                let mut cand = vec![Q::zero(); d];
                cand[e] = Q::one();
                if !in_span(&cols, &cand) {
                    cols.push(cand);
                }
            }
            let basis = QMat::from_fn(d, d, |r, c| cols[c][r].clone());
            let inv = invert(&basis).expect("completed basis is invertible");
            proj.push(QMat::from_fn(d - k, d, |r, c| inv.at(k + r, c).clone()));
            sect.push(QMat::from_fn(d, d - k, |r, c| basis.at(r, k + c).clone()));
            qdims.push(d - k);
        }
        let mut mats = Vec::with_capacity(self.mats.len());
        for (i, a) in q.arrows().iter().enumerate() {
            let (t, h) = (vi(a.tail), vi(a.head));
            mats.push(proj[h].mul(&self.mats[i]).mul(&sect[t]));
        }
        Representation::new(self.algebra.clone(), qdims, mats)
    }
}

/// Inverse of a square rational matrix via kernel-free Gauss-Jordan; None if singular.
pub fn invert(m: &QMat) -> Option<QMat> {
    let n = m.rows();
    if m.cols() != n {
        return None;
    }
    let mut a = m.clone();
    let mut inv = QMat::identity(n);
    for col in 0..n {
        let pivot = (col..n).find(|&r| !a.at(r, col).is_zero())?;
        if pivot != col {
            for c in 0..n {
                let (x, y) = (a.at(pivot, c).clone(), a.at(col, c).clone());
                a.set(pivot, c, y);
                a.set(col, c, x);
                let (x, y) = (inv.at(pivot, c).clone(), inv.at(col, c).clone());
                inv.set(pivot, c, y);
                inv.set(col, c, x);
            }
        }
        let p = a.at(col, col).clone();
        for c in 0..n {
            a.set(col, c, a.at(col, c) / &p);
            inv.set(col, c, inv.at(col, c) / &p);
        }
        for r in 0..n {
            if r != col && !a.at(r, col).is_zero() {
                let f = a.at(r, col).clone();
                for c in 0..n {
                    let va = a.at(r, c) - &f * a.at(col, c);
                    a.set(r, c, va);
                    let vi = inv.at(r, c) - &f * inv.at(col, c);
                    inv.set(r, c, vi);
                }
            }
        }
    }
    Some(inv)
}

fn in_span(span: &[Vec<Q>], v: &[Q]) -> bool {
    if v.iter().all(|x| x.is_zero()) {
        return true;
    }
    if span.is_empty() {
        return false;
    }
    let rows = span.len();
    let cols = v.len();
    let m = QMat::from_fn(rows + 1, cols, |r, c| {
        if r < rows {
            span[r][c].clone()
        } else {
            v[c].clone()
        }
    });
    let base = QMat::from_fn(rows, cols, |r, c| span[r][c].clone());
    m.rank() == base.rank()
}

/// Reduce a spanning set to an independent, deterministically chosen basis.
fn reduce_span(vecs: Vec<Vec<Q>>) -> Vec<Vec<Q>> {
    let mut basis: Vec<Vec<Q>> = Vec::new();
    for v in vecs {
        if !in_span(&basis, &v) {
            basis.push(v);
        }
    }
    basis
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::linalg::q_from_i64;

    fn qcol(vals: &[i64]) -> QMat {
        QMat::from_fn(vals.len(), 1, |r, _| q_from_i64(vals[r]))
    }

    /// The Jordan-block subdiagonal shift on K[x]/(x^m), basis 1, x, .., x^{m-1}.
    fn shift(m: usize) -> QMat {
        QMat::from_fn(m, m, |r, c| if r == c + 1 { q_from_i64(1) } else { q_from_i64(0) })
    }

    #[test]
    fn lambda3_relation_check_from_table_entry() {
        let alg = fixtures::lambda(3);
        // d = (1,3), B = J_3, A = x^2 column: relation b^2 a vanishes.
        let good = Representation::new(alg.clone(), vec![1, 3], vec![qcol(&[0, 0, 1]), shift(3)])
            .unwrap();
        assert!(good.check_relations());
        // A = 1 lands outside ker b^2: B^2 A != 0.
        let bad = Representation::new(alg, vec![1, 3], vec![qcol(&[1, 0, 0]), shift(3)]).unwrap();
        assert!(!bad.check_relations());
        assert_eq!(bad.failing_relation().unwrap(), "b b a");
    }

    #[test]
    fn zero_rep_satisfies_relations() {
        let alg = fixtures::lambda(4);
        let z = Representation::zero(alg, vec![2, 3]).unwrap();
        assert!(z.check_relations());
    }

    #[test]
    fn direct_sum_dims_and_relations() {
        let alg = fixtures::a2();
        let s1 = Representation::simple(alg.clone(), 1).unwrap();
        let s2 = Representation::simple(alg, 2).unwrap();
        let sum = s1.direct_sum(&s2).unwrap();
        assert_eq!(sum.dims(), &[1, 1]);
        assert!(sum.check_relations());
        let a = sum.mat(crate::algebra::ArrowId(0));
        assert!(a.is_zero());
    }

    #[test]
    fn quotient_of_projective_by_socle() {
        // P(1) on A2 has dims (1,1); quotient by the socle S2 gives S1.
        let alg = fixtures::a2();
        let p1 = crate::projective::indecomposable_projective(&alg, 1).unwrap();
        assert_eq!(p1.dims(), &[1, 1]);
        let sub = p1.subrep_generated(&[(1, vec![q_from_i64(1)])]);
        let quo = p1.quotient(&sub).unwrap();
        assert_eq!(quo.dims(), &[1, 0]);
        assert!(quo.check_relations());
    }

    #[test]
    fn shape_mismatch_detected() {
        let alg = fixtures::a2();
        let err =
            Representation::new(alg, vec![1, 1], vec![QMat::zeros(2, 1)]).unwrap_err();
        assert!(matches!(err, RepError::ShapeMismatch { .. }));
    }
}
