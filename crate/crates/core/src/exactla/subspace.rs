use num_traits::Zero;

use super::{Matrix, Scalar};
use crate::error::{Error, Result};

/// A linear subspace of `F^n`, stored as its reduced row-echelon basis.
///
/// Two equal subspaces always have identical bases, so `==` is subspace equality.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Subspace<F> {
    ambient: usize,
    basis: Vec<Vec<F>>,
    pivots: Vec<usize>,
}

impl<F: Scalar> Subspace<F> {
    pub fn zero(ambient: usize) -> Self {
        Subspace { ambient, basis: Vec::new(), pivots: Vec::new() }
    }

    pub fn full(ambient: usize) -> Self {
        Matrix::<F>::identity(ambient).row_space()
    }

    /// Span of arbitrary (possibly dependent) vectors.
    pub fn from_vectors(ambient: usize, vectors: Vec<Vec<F>>) -> Self {
        if vectors.is_empty() {
            return Self::zero(ambient);
        }
        assert!(vectors.iter().all(|v| v.len() == ambient), "vector length mismatch");
        let (r, pivots) = Matrix::from_rows(vectors).rref();
        let basis = (0..pivots.len()).map(|i| r.row(i).to_vec()).collect();
        Subspace { ambient, basis, pivots }
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn is_zero(&self) -> bool {
        self.basis.is_empty()
    }

    pub fn basis(&self) -> &[Vec<F>] {
        &self.basis
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    /// Remainder of `v` after eliminating the pivot coordinates.
    pub fn reduce(&self, v: &[F]) -> Vec<F> {
        let mut out = v.to_vec();
        for (row, &p) in self.basis.iter().zip(&self.pivots) {
            if out[p].is_zero() {
                continue;
            }
            let c = out[p].clone();
            for (o, r) in out.iter_mut().zip(row) {
                if !r.is_zero() {
                    *o -= c.clone() * r.clone();
                }
            }
        }
        out
    }

    pub fn contains(&self, v: &[F]) -> bool {
        self.reduce(v).iter().all(Zero::is_zero)
    }

    pub fn contains_subspace(&self, other: &Subspace<F>) -> bool {
        other.basis.iter().all(|v| self.contains(v))
    }

    fn check(&self, other: &Subspace<F>) -> Result<()> {
        if self.ambient != other.ambient {
            return Err(Error::Dimension(format!(
                "subspaces of F^{} and F^{}",
                self.ambient, other.ambient
            )));
        }
        Ok(())
    }

    pub fn sum(&self, other: &Subspace<F>) -> Result<Subspace<F>> {
        self.check(other)?;
        let vectors = self.basis.iter().chain(&other.basis).cloned().collect();
        Ok(Self::from_vectors(self.ambient, vectors))
    }

    /// Intersection via the left kernel of the stacked bases.
    pub fn intersection(&self, other: &Subspace<F>) -> Result<Subspace<F>> {
        self.check(other)?;
        if self.is_zero() || other.is_zero() {
            return Ok(Self::zero(self.ambient));
        }
        let a = Matrix::from_rows(self.basis.clone());
        let stacked = a.vstack(&Matrix::from_rows(other.basis.clone()));
        let relations = stacked.transpose().kernel_basis();
        let vectors = relations
            .basis()
            .iter()
            .map(|coeffs| {
                let head = &coeffs[..self.dim()];
                a.transpose().mul_vec(head)
            })
            .collect();
        Ok(Self::from_vectors(self.ambient, vectors))
    }

    pub fn equal(&self, other: &Subspace<F>) -> Result<bool> {
        self.check(other)?;
        Ok(self == other)
    }
}

/// Projection onto a canonical complement of a subspace.
///
/// Pivots are taken at the *last* nonzero coordinate of each spanning vector,
/// so the surviving coordinates are the earliest ones. Quotient constructions
/// use this to keep the lowest-indexed basis elements as representatives.
#[derive(Clone, Debug)]
pub struct ComplementProjector<F> {
    ambient: usize,
    rows: Vec<Vec<F>>,
    pivots: Vec<usize>,
    kept: Vec<usize>,
}

impl<F: Scalar> ComplementProjector<F> {
    pub fn new(ambient: usize, vectors: Vec<Vec<F>>) -> Self {
        let reversed: Vec<Vec<F>> =
            vectors.into_iter().map(|v| v.into_iter().rev().collect()).collect();
        let space = Subspace::from_vectors(ambient, reversed);
        let rows: Vec<Vec<F>> =
            space.basis().iter().map(|v| v.iter().rev().cloned().collect()).collect();
        let pivots: Vec<usize> = space.pivots().iter().map(|&p| ambient - 1 - p).collect();
        let kept = (0..ambient).filter(|i| !pivots.contains(i)).collect();
        ComplementProjector { ambient, rows, pivots, kept }
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    /// Dimension of the subspace being factored out.
    pub fn killed(&self) -> usize {
        self.pivots.len()
    }

    /// Coordinates that survive in the quotient, in increasing order.
    pub fn kept(&self) -> &[usize] {
        &self.kept
    }

    /// Coordinates of the class of `v` in the quotient basis.
    pub fn project(&self, v: &[F]) -> Vec<F> {
        let mut w = v.to_vec();
        for (row, &p) in self.rows.iter().zip(&self.pivots) {
            if w[p].is_zero() {
                continue;
            }
            let c = w[p].clone();
            for (o, r) in w.iter_mut().zip(row) {
                if !r.is_zero() {
                    *o -= c.clone() * r.clone();
                }
            }
        }
        self.kept.iter().map(|&i| w[i].clone()).collect()
    }

    /// Projection as a matrix `ambient -> kept.len()`.
    pub fn matrix(&self) -> Matrix<F> {
        let cols: Vec<Vec<F>> = (0..self.ambient)
            .map(|j| {
                let mut e = vec![F::zero(); self.ambient];
                e[j] = F::one();
                self.project(&e)
            })
            .collect();
        Matrix::from_columns(self.kept.len(), &cols)
    }

    /// The chosen representative of the `i`-th quotient basis vector.
    pub fn section(&self, i: usize) -> Vec<F> {
        let mut e = vec![F::zero(); self.ambient];
        e[self.kept[i]] = F::one();
        e
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactla::Fp;

    type F = Fp<101>;

    fn v(xs: &[i64]) -> Vec<F> {
        xs.iter().map(|&x| F::from_int(x)).collect()
    }

    #[test]
    fn equal_spans_share_a_basis() {
        let a = Subspace::from_vectors(3, vec![v(&[1, 2, 3]), v(&[0, 1, 1])]);
        let b = Subspace::from_vectors(3, vec![v(&[1, 3, 4]), v(&[2, 5, 7]), v(&[1, 1, 2])]);
        assert_eq!(a, b);
        assert_eq!(a.intersection(&a).unwrap(), a);
    }

    #[test]
    fn complementary_coordinate_subspaces() {
        let a = Subspace::from_vectors(4, vec![v(&[1, 0, 0, 0]), v(&[0, 1, 0, 0])]);
        let b = Subspace::from_vectors(4, vec![v(&[0, 0, 1, 0]), v(&[0, 0, 0, 1])]);
        assert!(a.intersection(&b).unwrap().is_zero());
        assert_eq!(a.sum(&b).unwrap(), Subspace::full(4));
    }

    #[test]
    fn ambient_mismatch_is_an_error() {
        let a = Subspace::<F>::zero(2);
        let b = Subspace::<F>::zero(3);
        assert!(matches!(a.sum(&b), Err(Error::Dimension(_))));
        assert!(a.intersection(&b).is_err());
        assert!(a.equal(&b).is_err());
    }

    #[test]
    fn projector_keeps_leading_coordinates() {
        // kill x1 + x2 + x3: pivot lands on x3
        let p = ComplementProjector::new(3, vec![v(&[1, 1, 1])]);
        assert_eq!(p.kept(), &[0, 1]);
        assert_eq!(p.project(&v(&[0, 0, 1])), v(&[-1, -1]));
        assert_eq!(p.project(&p.section(1)), v(&[0, 1]));
        assert_eq!(p.matrix().rank(), 2);
    }
}
