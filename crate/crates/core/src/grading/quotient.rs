use std::sync::Arc;


use super::{Element, GradedAlgebra};
use crate::error::{Error, Result};
use crate::exactla::{ComplementProjector, Matrix, Scalar};

/// The quotient `A → A/(l)` by a linear form, with the data needed to move
/// elements in both directions.
///
/// `section` sends each quotient basis vector to the source basis vector it
/// was kept from, which is a right inverse of `project`.
#[derive(Clone, Debug)]
pub struct QuotientMap<F> {
    source: Arc<GradedAlgebra<F>>,
    target: Arc<GradedAlgebra<F>>,
    form: Element<F>,
    projectors: Vec<ComplementProjector<F>>,
}

impl<F: Scalar> QuotientMap<F> {
    pub fn source(&self) -> &Arc<GradedAlgebra<F>> {
        &self.source
    }

    pub fn target(&self) -> &Arc<GradedAlgebra<F>> {
        &self.target
    }

    /// The linear form being factored out, as an element of the source.
    pub fn form(&self) -> &Element<F> {
        &self.form
    }

    pub fn project(&self, a: &Element<F>) -> Element<F> {
        Element { degree: a.degree, coords: self.projectors[a.degree].project(&a.coords) }
    }

    pub fn section(&self, a: &Element<F>) -> Element<F> {
        let p = &self.projectors[a.degree];
        let mut out = vec![F::zero(); p.ambient()];
        for (c, &k) in a.coords.iter().zip(p.kept()) {
            out[k] = c.clone();
        }
        Element { degree: a.degree, coords: out }
    }

    /// Projection `A_d → (A/(l))_d` as a matrix.
    pub fn projection_matrix(&self, d: usize) -> Matrix<F> {
        self.projectors[d].matrix()
    }
}

/// `A/(l)` for a nonzero linear form `l`, at the same degree bound.
pub fn quotient_by_linear<F: Scalar>(a: &Arc<GradedAlgebra<F>>, l: &Element<F>) -> Result<QuotientMap<F>> {
    if l.degree != 1 {
        return Err(Error::Precondition("quotient form must be linear".into()));
    }
    if l.coords.len() != a.dim(1) {
        return Err(Error::Dimension("linear form does not belong to the algebra".into()));
    }
    if l.is_zero() {
        return Err(Error::Precondition("cannot factor out the zero form".into()));
    }
    let bound = a.degree_bound();
    let mut projectors = vec![ComplementProjector::new(1, Vec::new())];
    for d in 1..=bound {
        let image = a.mul_map(l, d - 1)?;
        let cols = (0..image.cols()).map(|j| image.column(j)).collect();
        projectors.push(ComplementProjector::new(a.dim(d), cols));
    }
    let labels: Vec<Vec<String>> = (0..=bound)
        .map(|d| projectors[d].kept().iter().map(|&i| a.labels(d)[i].clone()).collect())
        .collect();
    let target = GradedAlgebra::from_product_rule(labels, |d1, i, d2, j| {
        let v = a.basis_product(d1, projectors[d1].kept()[i], d2, projectors[d2].kept()[j]);
        projectors[d1 + d2].project(&v)
    });
    Ok(QuotientMap { source: a.clone(), target: Arc::new(target), form: l.clone(), projectors })
}

/// Whether multiplication by `l` is injective `A_k → A_{k+1}` for every
/// `k < D`. For an Artinian algebra this is never true unless `A = k`.
pub fn is_regular_up_to_bound<F: Scalar>(a: &GradedAlgebra<F>, l: &Element<F>) -> Result<bool> {
    for k in 0..a.degree_bound() {
        if a.mul_map(l, k)?.rank() != a.dim(k) {
            return Ok(false);
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactla::Fp;
    use crate::grading::stanley_reisner;
    use crate::graph::{four_cycle, Graph};

    type F = Fp<1_073_741_789>;

    #[test]
    fn four_cycle_by_two_sums() {
        let g = four_cycle();
        let s = Arc::new(stanley_reisner::<F>(&g, 3).unwrap());
        // vertex order x1, x2, y1, y2
        let q1 = quotient_by_linear(&s, &s.linear_form(&[1, 1, 0, 0])).unwrap();
        let mid = q1.target().clone();
        let l2 = q1.project(&s.linear_form(&[0, 0, 1, 1]));
        let q2 = quotient_by_linear(&mid, &l2).unwrap();
        assert_eq!(q2.target().hilbert(), vec![1, 2, 1, 0]);
        assert_eq!(q2.target().labels(1), &["x1".to_string(), "y1".to_string()]);
        q2.target().check_axioms().unwrap();
    }

    #[test]
    fn quotient_by_a_variable() {
        let g = Graph::from_edges(&["a", "b"], &[("a", "b")]).unwrap();
        let s = Arc::new(stanley_reisner::<F>(&g, 3).unwrap());
        let q = quotient_by_linear(&s, &s.basis_element(1, 1)).unwrap();
        assert_eq!(q.target().hilbert(), vec![1, 1, 1, 1]);
    }

    #[test]
    fn zero_form_rejected() {
        let g = four_cycle();
        let s = Arc::new(stanley_reisner::<F>(&g, 2).unwrap());
        assert!(quotient_by_linear(&s, &s.zero(1)).is_err());
    }

    #[test]
    fn section_is_right_inverse() {
        let g = four_cycle();
        let s = Arc::new(stanley_reisner::<F>(&g, 3).unwrap());
        let q = quotient_by_linear(&s, &s.linear_form(&[1, 2, 3, 4])).unwrap();
        for d in 0..=3 {
            for i in 0..q.target().dim(d) {
                let e = q.target().basis_element(d, i);
                assert_eq!(q.project(&q.section(&e)), e);
            }
        }
        assert!(is_regular_up_to_bound(&s, &s.linear_form(&[1, 2, 3, 4])).unwrap());
        assert!(!is_regular_up_to_bound(&s, &s.linear_form(&[1, 0, 0, 0])).unwrap());
    }
}
