//! Lifting a linear totally acyclic complex over `R = S/(x)` to one over `S`
//! with doubled ranks, for `x` a linear regular element of `S`.
//!
//! With `δ̃_i` a lift of `δ_i`, write `δ̃_{i-1} δ̃_i = x M_i`. The lifted
//! differential is `ε_i = [[δ̃_i, x I], [M_i, δ̃_{i-1}]]` for even `i` and
//! `[[δ̃_i, -x I], [-M_i, δ̃_{i-1}]]` for odd `i`.

use std::sync::Arc;

use crate::complexes::{compose_check, graded_exactness, ChainOrigin, FreeComplexWindow, GradedMatrix};
use crate::error::{Error, Result};
use crate::exactla::Scalar;
use crate::grading::{is_regular_up_to_bound, Element, GradedAlgebra, QuotientMap};

/// One lift `R → S`.
#[derive(Clone, Debug)]
pub struct LiftStep<F: Scalar> {
    pub quotient: QuotientMap<F>,
    /// Index of the first lifted matrix.
    pub lo: i64,
    /// `δ̃_lo, …, δ̃_hi`.
    pub lifted: Vec<GradedMatrix<F>>,
    /// `M_{lo+1}, …, M_hi`.
    pub corrections: Vec<GradedMatrix<F>>,
    /// `ε_{lo+1}, …, ε_hi` over `S`.
    pub window: FreeComplexWindow<F>,
}

impl<F: Scalar> LiftStep<F> {
    pub fn x(&self) -> &Element<F> {
        self.quotient.form()
    }

    pub fn target(&self) -> &Arc<GradedAlgebra<F>> {
        self.quotient.source()
    }
}

/// Entrywise section `R → S`.
pub fn lift_matrix<F: Scalar>(d: &GradedMatrix<F>, q: &QuotientMap<F>) -> Result<GradedMatrix<F>> {
    let r = q.target();
    if d.elements().iter().any(|e| e.coords.len() != r.dim(e.degree)) {
        return Err(Error::Dimension("matrix does not live over the quotient".into()));
    }
    Ok(d.map(|e| q.section(e), d.degree()))
}

/// Reduces every entry `S → R`.
pub fn reduce_matrix<F: Scalar>(d: &GradedMatrix<F>, q: &QuotientMap<F>) -> GradedMatrix<F> {
    d.map(|e| q.project(e), d.degree())
}

/// The matrix `M` with `x M = δ̃_i δ̃_{i+1}`, solved entry by entry.
pub fn correction_matrix<F: Scalar>(
    s: &GradedAlgebra<F>,
    x: &Element<F>,
    dt_i: &GradedMatrix<F>,
    dt_next: &GradedMatrix<F>,
) -> Result<GradedMatrix<F>> {
    let prod = dt_i.mul(s, dt_next)?;
    let deg = prod.degree();
    if deg < x.degree {
        return Err(Error::Precondition("product has lower degree than the regular element".into()));
    }
    let mdeg = deg - x.degree;
    let mult = s.mul_map(x, mdeg)?;
    GradedMatrix::from_fn(prod.rows(), prod.cols(), mdeg, |i, j| {
        let rhs = prod.entry(i, j).coords;
        let coords = mult.solve(&rhs).unwrap_or_default();
        Element { degree: mdeg, coords }
    })
    .and_then(|m| {
        // unsolvable entries came back empty
        if m.elements().iter().any(|e| e.coords.len() != s.dim(mdeg)) {
            return Err(Error::Inconsistent(format!(
                "product of lifted differentials is not divisible by x ({}x{} block)",
                prod.rows(),
                prod.cols()
            )));
        }
        Ok(m)
    })
}

/// `ε_i` from `δ̃_i`, `δ̃_{i-1}` and `M_i`.
pub fn assemble_epsilon<F: Scalar>(
    s: &GradedAlgebra<F>,
    x: &Element<F>,
    dt_i: &GradedMatrix<F>,
    dt_prev: &GradedMatrix<F>,
    m_i: &GradedMatrix<F>,
    i: i64,
) -> Result<GradedMatrix<F>> {
    if dt_prev.cols() != dt_i.rows() || m_i.rows() != dt_prev.rows() || m_i.cols() != dt_i.cols() {
        return Err(Error::Shape(format!("blocks of ε_{i} do not fit")));
    }
    let xi = GradedMatrix::diagonal(s, dt_i.rows(), x);
    if i.rem_euclid(2) == 0 {
        GradedMatrix::blocks(dt_i, &xi, m_i, dt_prev)
    } else {
        GradedMatrix::blocks(dt_i, &xi.neg(), &m_i.neg(), dt_prev)
    }
}

fn lcm(a: usize, b: usize) -> usize {
    fn gcd(a: usize, b: usize) -> usize {
        if b == 0 {
            a
        } else {
            gcd(b, a % b)
        }
    }
    a / gcd(a, b) * b
}

/// Lifts without certifying the source first. The source must still be a
/// complex, or the corrections do not exist.
pub fn lift_window<F: Scalar>(w: &FreeComplexWindow<F>, q: &QuotientMap<F>) -> Result<LiftStep<F>> {
    if **w.algebra() != **q.target() {
        return Err(Error::Precondition("window does not live over the quotient ring".into()));
    }
    if w.diffs().iter().any(|d| d.degree() != 1) {
        return Err(Error::Precondition("only linear differentials can be lifted".into()));
    }
    let s = q.source().clone();
    let x = q.form().clone();
    if !is_regular_up_to_bound(&s, &x)? {
        return Err(Error::Precondition("x is not regular up to the degree bound".into()));
    }
    // a periodic source is extended by one step so no index is lost
    let source = match w.periodicity() {
        Some(p) if p.verified => w.extend_low(1)?,
        _ => w.clone(),
    };
    let lo = source.lo();
    let lifted = source.diffs().iter().map(|d| lift_matrix(d, q)).collect::<Result<Vec<_>>>()?;
    let corrections = lifted
        .windows(2)
        .map(|p| correction_matrix(&s, &x, &p[0], &p[1]))
        .collect::<Result<Vec<_>>>()?;
    // x (M_i δ̃_{i+1} - δ̃_{i-1} M_{i+1}) = 0
    for k in 0..corrections.len().saturating_sub(1) {
        let left = corrections[k].mul(&s, &lifted[k + 2])?;
        let right = lifted[k].mul(&s, &corrections[k + 1])?;
        if !left.sub(&right)?.scale_by(&s, &x)?.is_zero() {
            return Err(Error::Inconsistent(format!("cancellation fails at index {}", lo + k as i64 + 1)));
        }
    }
    let mut eps = Vec::with_capacity(corrections.len());
    for (k, m) in corrections.iter().enumerate() {
        let i = lo + k as i64 + 1;
        eps.push(assemble_epsilon(&s, &x, &lifted[k + 1], &lifted[k], m, i)?);
    }
    if eps.is_empty() {
        return Err(Error::Shape("lifting needs at least two differentials".into()));
    }
    let origin = source.origin().and_then(|o| {
        o.stage.checked_sub(1).map(|stage| ChainOrigin { reduction: o.reduction.clone(), stage })
    });
    let mut window = FreeComplexWindow::new(s, lo + 1, eps, source.twist(lo))?.with_origin(origin);
    if let Some(p) = source.periodicity() {
        if p.verified {
            window = window.with_period(lcm(p.period, 2));
        }
    }
    Ok(LiftStep { quotient: q.clone(), lo, lifted, corrections, window })
}

/// Lifts a certified window: the source must compose to zero and be exact
/// with exact dual in every checked degree.
pub fn lift_complex<F: Scalar>(w: &FreeComplexWindow<F>, q: &QuotientMap<F>) -> Result<LiftStep<F>> {
    if !compose_check(w)? {
        return Err(Error::Precondition("source is not a complex".into()));
    }
    if !graded_exactness(w, None)?.all_exact() {
        return Err(Error::Precondition("source window is not exact with exact dual".into()));
    }
    lift_window(w, q)
}

/// Lifts through a chain `S_0 → S_1 → … → S_d` (top first) ending at the
/// window's ring.
pub fn lift_through_sequence<F: Scalar>(
    w: &FreeComplexWindow<F>,
    chain: &[QuotientMap<F>],
) -> Result<(FreeComplexWindow<F>, Vec<LiftStep<F>>)> {
    let mut current = w.clone();
    let mut steps = Vec::with_capacity(chain.len());
    for q in chain.iter().rev() {
        let step = lift_complex(&current, q)?;
        current = step.window.clone();
        steps.push(step);
    }
    Ok((current, steps))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complexes::{ezd_complex, is_minimal};
    use crate::exactla::Fp;
    use crate::grading::{artinian_reduction, ReductionMode};
    use crate::graph::four_cycle;
    use crate::structure::EzdPair;

    type F = Fp<1_073_741_789>;

    fn setup(bound: usize) -> (crate::grading::ArtinianReduction<F>, FreeComplexWindow<F>) {
        let red = artinian_reduction::<F>(&four_cycle(), ReductionMode::CanonicalBipartite, bound).unwrap();
        let r = red.ring().clone();
        let x = r.basis_element(1, 0);
        let w = ezd_complex(&r, &EzdPair { a: x.clone(), b: x, certified: true }, 2).unwrap();
        (red, w)
    }

    #[test]
    fn one_step_doubles_ranks() {
        let (red, w) = setup(4);
        let q = &red.chain()[1];
        let step = lift_complex(&w, q).unwrap();
        assert_eq!((step.window.lo(), step.window.hi()), (w.lo(), w.hi()));
        assert!(step.window.betti_numbers().iter().all(|&b| b == 2));
        assert!(compose_check(&step.window).unwrap());
        assert!(graded_exactness(&step.window, None).unwrap().all_exact());
        assert!(is_minimal(&step.window));
        for (dt, d) in step.lifted.iter().zip(w.extend_low(1).unwrap().diffs()) {
            assert_eq!(&reduce_matrix(dt, q), d);
        }
        for (k, m) in step.corrections.iter().enumerate() {
            let prod = step.lifted[k].mul(q.source(), &step.lifted[k + 1]).unwrap();
            assert_eq!(m.scale_by(q.source(), q.form()).unwrap(), prod);
        }
    }

    #[test]
    fn epsilon_parity() {
        let (red, w) = setup(3);
        let step = lift_complex(&w, &red.chain()[1]).unwrap();
        let even = step.window.diff(0);
        let odd = step.window.diff(1);
        assert_eq!(even.entry(0, 1), step.x().clone());
        assert_eq!(odd.entry(0, 1), step.x().neg());
    }

    #[test]
    fn full_chain_gives_rank_four() {
        let (red, w) = setup(4);
        let (top, steps) = lift_through_sequence(&w, &red.chain()).unwrap();
        assert_eq!(steps.len(), 2);
        assert!(top.betti_numbers().iter().all(|&b| b == 4));
        assert!(compose_check(&top).unwrap());
        assert!(graded_exactness(&top, None).unwrap().all_exact());
        let (same, none) = lift_through_sequence(&w, &[]).unwrap();
        assert_eq!(same, w);
        assert!(none.is_empty());
    }

    #[test]
    fn corrupted_source_lifts_but_fails_verification() {
        let (red, w) = setup(4);
        let r = w.algebra().clone();
        let mut diffs = w.diffs().to_vec();
        diffs[2] = GradedMatrix::zeros(&r, 1, 1, 1);
        let bad = FreeComplexWindow::new(r, w.lo(), diffs, w.base_twist()).unwrap();
        assert!(lift_complex(&bad, &red.chain()[1]).is_err());
        let step = lift_window(&bad, &red.chain()[1]).unwrap();
        assert!(compose_check(&step.window).unwrap());
        assert!(!graded_exactness(&step.window, None).unwrap().all_exact());
    }
}
