//! Indecomposable projective representations and morphisms out of them.

use crate::algebra::AlgebraRef;
use crate::linalg::{Q, QMat};
use crate::rep::{RepError, Representation};
use num::{One, Zero};

/// `P(v)`: basis given by the path-basis elements starting at `v`, with arrow
/// action by left concatenation truncated by the relations.
pub fn indecomposable_projective(alg: &AlgebraRef, v: u32) -> Result<Representation, RepError> {
    let q = alg.quiver();
    q.vertex_index(v)?;
    // Per vertex: the basis paths v -> j, kept in global basis order.
    let mut local: Vec<Vec<usize>> = vec![Vec::new(); q.vertex_count()];
    for (i, p) in alg.path_basis().iter().enumerate() {
        if p.tail() == v {
            local[q.vertex_index(p.head()).unwrap()].push(i);
        }
    }
    let dims: Vec<usize> = local.iter().map(|l| l.len()).collect();
    let mut mats = Vec::with_capacity(q.arrow_count());
    for (ai, a) in q.arrows().iter().enumerate() {
        let t = q.vertex_index(a.tail).unwrap();
        let h = q.vertex_index(a.head).unwrap();
        let mut m = QMat::zeros(dims[h], dims[t]);
        for (col, &pi) in local[t].iter().enumerate() {
            let p = &alg.path_basis()[pi];
            if let Some(ext) = p.extended(q, crate::algebra::ArrowId(ai)) {
                if let Some(ei) = alg.basis_index(&ext) {
                    let row = local[h].iter().position(|&x| x == ei).unwrap();
                    m.set(row, col, Q::one());
                }
            }
        }
        mats.push(m);
    }
    Representation::new(alg.clone(), dims, mats)
}

/// The morphism `P(v) -> X` sending the idempotent generator to `gen` (a vector
/// in the `v`-component of `X`), as vertex-wise matrices.
pub fn projective_hom(
    alg: &AlgebraRef,
    v: u32,
    target: &Representation,
    gen: &[Q],
) -> Result<Vec<QMat>, RepError> {
    let q = alg.quiver();
    assert_eq!(gen.len(), target.vertex_dim(v));
    let mut local: Vec<Vec<usize>> = vec![Vec::new(); q.vertex_count()];
    for (i, p) in alg.path_basis().iter().enumerate() {
        if p.tail() == v {
            local[q.vertex_index(p.head()).unwrap()].push(i);
        }
    }
    let mut blocks = Vec::with_capacity(q.vertex_count());
    for (j, paths) in local.iter().enumerate() {
        let rows = target.dims()[j];
        let mut m = QMat::zeros(rows, paths.len());
        for (col, &pi) in paths.iter().enumerate() {
            let p = &alg.path_basis()[pi];
            let img = target.evaluate_path(p).apply(gen);
            for (r, val) in img.into_iter().enumerate() {
                if !val.is_zero() {
                    m.set(r, col, val);
                }
            }
        }
        blocks.push(m);
    }
    Ok(blocks)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    #[test]
    fn a2_projective_at_source() {
        let alg = fixtures::a2();
        let p1 = indecomposable_projective(&alg, 1).unwrap();
        assert_eq!(p1.dims(), &[1, 1]);
        let a = p1.mat(crate::algebra::ArrowId(0));
        assert_eq!(a.at(0, 0), &Q::one());
        assert!(p1.check_relations());
    }

    #[test]
    fn kronecker_projective_dims() {
        let alg = fixtures::kronecker();
        let p1 = indecomposable_projective(&alg, 1).unwrap();
        assert_eq!(p1.dims(), &[1, 2]);
        let p2 = indecomposable_projective(&alg, 2).unwrap();
        assert_eq!(p2.dims(), &[0, 1]);
    }

    #[test]
    fn lambda3_projective_at_one() {
        let alg = fixtures::lambda(3);
        let p1 = indecomposable_projective(&alg, 1).unwrap();
        assert_eq!(p1.dims(), &[1, 2]);
        assert!(p1.check_relations());
    }

    #[test]
    fn algebra_dim_splits_over_projectives() {
        for alg in [fixtures::butterfly(), fixtures::lambda(5), fixtures::kronecker()] {
            let total: usize = alg
                .quiver()
                .vertices()
                .to_vec()
                .into_iter()
                .map(|v| indecomposable_projective(&alg, v).unwrap().dim_total())
                .sum();
            assert_eq!(total, alg.dim());
        }
    }

    #[test]
    fn relations_vanish_on_projectives() {
        for alg in [fixtures::butterfly(), fixtures::lambda(6)] {
            for &v in alg.quiver().vertices() {
                let p = indecomposable_projective(&alg, v).unwrap();
                assert!(p.check_relations());
            }
        }
    }
}
