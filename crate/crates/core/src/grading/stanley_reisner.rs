use std::collections::HashMap;

use super::relations::{monomial_label, Exponents};
use super::GradedAlgebra;
use crate::error::{Error, Result};
use crate::exactla::Scalar;
use crate::graph::Graph;

/// Stanley–Reisner ring of a graph, truncated at degree `bound`.
///
/// A monomial survives exactly when its support is a vertex or an edge, so the
/// degree-`d` basis consists of the pure powers `x_i^d` and the mixed
/// monomials `x_i^a x_j^b` over edges. Basis order is graded-lex descending in
/// the vertex order.
pub fn stanley_reisner<F: Scalar>(g: &Graph, bound: usize) -> Result<GradedAlgebra<F>> {
    if bound < 2 {
        return Err(Error::Precondition("degree bound must be at least 2".into()));
    }
    let n = g.n();
    let mut monos: Vec<Vec<Exponents>> = vec![vec![vec![0; n]]];
    for d in 1..=bound as u32 {
        let mut list = Vec::new();
        for v in 0..n {
            let mut e = vec![0; n];
            e[v] = d;
            list.push(e);
        }
        for &(i, j) in g.edges() {
            for a in 1..d {
                let mut e = vec![0; n];
                e[i] = a;
                e[j] = d - a;
                list.push(e);
            }
        }
        list.sort_unstable_by(|a, b| b.cmp(a));
        monos.push(list);
    }
    let index: Vec<HashMap<&Exponents, usize>> =
        monos.iter().map(|l| l.iter().enumerate().map(|(i, m)| (m, i)).collect()).collect();
    let labels = monos
        .iter()
        .map(|l| l.iter().map(|m| monomial_label(g.labels(), m)).collect())
        .collect();
    Ok(GradedAlgebra::from_product_rule(labels, |d1, i, d2, j| {
        let prod: Exponents = monos[d1][i].iter().zip(&monos[d2][j]).map(|(a, b)| a + b).collect();
        let mut out = vec![F::zero(); monos[d1 + d2].len()];
        if let Some(&k) = index[d1 + d2].get(&prod) {
            out[k] = F::one();
        }
        out
    }))
}
