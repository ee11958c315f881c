use std::sync::Arc;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::{quotient_by_linear, stanley_reisner, Element, GradedAlgebra, QuotientMap};
use crate::error::{Error, Result};
use crate::exactla::{Matrix, Scalar};
use crate::graph::{Graph, GraphFile};

/// Everything needed to rebuild a reduction deterministically.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReductionSpec {
    pub graph: GraphFile,
    pub mode: ReductionMode,
    pub degree_bound: usize,
}

impl ReductionSpec {
    pub fn build<F: Scalar>(&self) -> Result<ArtinianReduction<F>> {
        artinian_reduction(&Graph::from_file(&self.graph)?, self.mode, self.degree_bound)
    }
}

/// How the two linear forms of a reduction are chosen.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "mode", rename_all = "kebab-case")]
pub enum ReductionMode {
    /// `l1 = Σ X-side variables`, `l2 = Σ Y-side variables`.
    CanonicalBipartite,
    /// Uniform random coefficients, resampled until the Hilbert function is right.
    Generic { seed: u64 },
}

const GENERIC_ATTEMPTS: usize = 16;

/// `R_Γ → R_Γ/(l1) → R_Γ/(l1, l2)` for a connected graph.
#[derive(Clone, Debug)]
pub struct ArtinianReduction<F> {
    graph: Graph,
    mode: ReductionMode,
    forms: [Vec<F>; 2],
    first: QuotientMap<F>,
    second: QuotientMap<F>,
}

impl<F: Scalar> ArtinianReduction<F> {
    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn mode(&self) -> ReductionMode {
        self.mode
    }

    /// Coefficients of `l1` and `l2` over the vertices.
    pub fn forms(&self) -> &[Vec<F>; 2] {
        &self.forms
    }

    pub fn ambient(&self) -> &Arc<GradedAlgebra<F>> {
        self.first.source()
    }

    pub fn ring(&self) -> &Arc<GradedAlgebra<F>> {
        self.second.target()
    }

    pub fn spec(&self) -> ReductionSpec {
        ReductionSpec { graph: self.graph.to_file(), mode: self.mode, degree_bound: self.ambient().degree_bound() }
    }

    /// Stage `0` is `R_Γ`, `1` is `R_Γ/(l1)`, `2` is `R`.
    pub fn stage(&self, k: usize) -> Option<&Arc<GradedAlgebra<F>>> {
        match k {
            0 => Some(self.first.source()),
            1 => Some(self.first.target()),
            2 => Some(self.second.target()),
            _ => None,
        }
    }

    /// The chain of quotient maps, top (`R_Γ`) first.
    pub fn chain(&self) -> Vec<QuotientMap<F>> {
        vec![self.first.clone(), self.second.clone()]
    }

    /// Image in `R` of an element of `R_Γ`.
    pub fn reduce(&self, a: &Element<F>) -> Element<F> {
        self.second.project(&self.first.project(a))
    }

    /// Image in `R_1` of the variable of vertex `v`.
    pub fn vertex_image(&self, v: usize) -> Element<F> {
        self.reduce(&self.ambient().basis_element(1, v))
    }

    /// Image in `R_1` of `Σ c_v x_v`.
    pub fn linear_image(&self, coeffs: &[F]) -> Element<F> {
        let ambient = self.ambient();
        let l = Element { degree: 1, coords: coeffs.to_vec() };
        debug_assert_eq!(coeffs.len(), ambient.dim(1));
        self.reduce(&l)
    }

    /// For a bipartite reduction, the map `x + y ↦ x − y` on `R_1` where `x`
    /// lies in the span of the X-side images and `y` in the span of the Y side.
    pub fn sign_flip(&self) -> Result<Matrix<F>> {
        let (xs, ys) = self
            .graph
            .bipartition()
            .ok_or_else(|| Error::Precondition("graph is not bipartite".into()))?;
        let dim = self.ring().dim(1);
        let side_basis = |side: &[usize]| {
            let vecs = side.iter().map(|&v| self.vertex_image(v).coords).collect();
            crate::exactla::Subspace::from_vectors(dim, vecs).basis().to_vec()
        };
        let xb = side_basis(xs);
        let yb = side_basis(ys);
        if xb.len() + yb.len() != dim {
            return Err(Error::Degenerate("side spans do not split R_1".into()));
        }
        let mut cols = xb.clone();
        cols.extend(yb.iter().cloned());
        let change = Matrix::from_columns(dim, &cols);
        if change.rank() != dim {
            return Err(Error::Degenerate("side spans are not independent".into()));
        }
        let mut signed = cols;
        for v in signed.iter_mut().skip(xb.len()) {
            for c in v.iter_mut() {
                *c = -c.clone();
            }
        }
        let signed = Matrix::from_columns(dim, &signed);
        // flip = signed · change⁻¹
        let inverse_cols: Vec<Vec<F>> = (0..dim)
            .map(|j| {
                let mut e = vec![F::zero(); dim];
                e[j] = F::one();
                change.solve(&e).expect("change of basis is invertible")
            })
            .collect();
        Ok(signed.mul(&Matrix::from_columns(dim, &inverse_cols)))
    }
}

/// Expected Hilbert function `(1, n-2, e-n+1, 0, …)` of a regular reduction.
pub fn expected_hilbert(n: usize, e: usize, bound: usize) -> Vec<usize> {
    let mut h = vec![0; bound + 1];
    h[0] = 1;
    if bound >= 1 {
        h[1] = n - 2;
    }
    if bound >= 2 {
        h[2] = e + 1 - n;
    }
    h
}

/// Reduces `R_Γ` modulo two linear forms and certifies regularity through the
/// Hilbert function.
pub fn artinian_reduction<F: Scalar>(
    g: &Graph,
    mode: ReductionMode,
    bound: usize,
) -> Result<ArtinianReduction<F>> {
    if !g.is_connected() || g.n() < 2 {
        return Err(Error::Precondition("reduction needs a connected graph on at least two vertices".into()));
    }
    let ambient = Arc::new(stanley_reisner::<F>(g, bound)?);
    let expected = expected_hilbert(g.n(), g.e(), bound);
    match mode {
        ReductionMode::CanonicalBipartite => {
            let (xs, ys) = g
                .bipartition()
                .ok_or_else(|| Error::Precondition("canonical reduction needs a bipartite graph".into()))?;
            let indicator = |side: &[usize]| {
                let mut v = vec![F::zero(); g.n()];
                for &i in side {
                    v[i] = F::one();
                }
                v
            };
            let forms = [indicator(xs), indicator(ys)];
            let red = reduce_with(g, &ambient, mode, forms)?;
            if red.ring().hilbert() != expected {
                return Err(Error::Degenerate(format!(
                    "canonical forms give Hilbert function {:?}, expected {:?}",
                    red.ring().hilbert(),
                    expected
                )));
            }
            Ok(red)
        }
        ReductionMode::Generic { seed } => {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            for _ in 0..GENERIC_ATTEMPTS {
                let forms = [
                    (0..g.n()).map(|_| F::sample(&mut rng)).collect(),
                    (0..g.n()).map(|_| F::sample(&mut rng)).collect(),
                ];
                match reduce_with(g, &ambient, mode, forms) {
                    Ok(red) if red.ring().hilbert() == expected => return Ok(red),
                    _ => continue,
                }
            }
            Err(Error::Degenerate(format!("no regular pair of forms after {GENERIC_ATTEMPTS} samples")))
        }
    }
}

/// Reduction by explicitly given forms, with no Hilbert certification.
pub fn reduce_with<F: Scalar>(
    g: &Graph,
    ambient: &Arc<GradedAlgebra<F>>,
    mode: ReductionMode,
    forms: [Vec<F>; 2],
) -> Result<ArtinianReduction<F>> {
    let l1 = Element { degree: 1, coords: forms[0].clone() };
    let first = quotient_by_linear(ambient, &l1)?;
    let l2 = first.project(&Element { degree: 1, coords: forms[1].clone() });
    let second = quotient_by_linear(first.target(), &l2)?;
    Ok(ArtinianReduction { graph: g.clone(), mode, forms, first, second })
}
