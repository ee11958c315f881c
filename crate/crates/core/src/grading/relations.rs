use std::collections::HashMap;


use super::GradedAlgebra;
use crate::error::{Error, Result};
use crate::exactla::{ComplementProjector, Scalar};

pub type Exponents = Vec<u32>;

/// Polynomial in a fixed list of variables, as a sparse term list.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Polynomial<F> {
    pub nvars: usize,
    pub terms: Vec<(Exponents, F)>,
}

impl<F: Scalar> Polynomial<F> {
    pub fn new(nvars: usize, terms: Vec<(Exponents, F)>) -> Self {
        let mut merged: Vec<(Exponents, F)> = Vec::new();
        for (e, c) in terms {
            assert_eq!(e.len(), nvars);
            match merged.iter_mut().find(|(m, _)| *m == e) {
                Some((_, acc)) => *acc += c,
                None => merged.push((e, c)),
            }
        }
        merged.retain(|(_, c)| !c.is_zero());
        Polynomial { nvars, terms: merged }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Common degree of all terms, or `None` if not homogeneous (or zero).
    pub fn homogeneous_degree(&self) -> Option<usize> {
        let mut degs = self.terms.iter().map(|(e, _)| e.iter().sum::<u32>() as usize);
        let first = degs.next()?;
        degs.all(|d| d == first).then_some(first)
    }

    /// Parses sums of terms such as `X^2 - 2*X*Y + 3/4*Y^2` over the given variable names.
    pub fn parse(text: &str, vars: &[&str]) -> Result<Self> {
        let err = |m: &str| Error::Parse(format!("polynomial {text:?}: {m}"));
        let cleaned: String = text.chars().filter(|c| !c.is_whitespace()).collect();
        if cleaned.is_empty() {
            return Err(err("empty"));
        }
        let mut pieces = Vec::new();
        let mut current = String::new();
        for (i, ch) in cleaned.chars().enumerate() {
            if (ch == '+' || ch == '-') && i > 0 {
                pieces.push(std::mem::take(&mut current));
            }
            current.push(ch);
        }
        pieces.push(current);
        let mut terms = Vec::new();
        for piece in pieces {
            let (sign, body) = match piece.strip_prefix('-') {
                Some(rest) => (-F::one(), rest),
                None => (F::one(), piece.strip_prefix('+').unwrap_or(&piece)),
            };
            if body.is_empty() {
                return Err(err("dangling sign"));
            }
            let mut coeff = sign;
            let mut exps = vec![0u32; vars.len()];
            for factor in body.split('*') {
                let (base, power) = match factor.split_once('^') {
                    Some((b, p)) => (b, p.parse::<u32>().map_err(|_| err("bad exponent"))?),
                    None => (factor, 1),
                };
                if let Some(idx) = vars.iter().position(|v| *v == base) {
                    exps[idx] += power;
                } else {
                    let c = F::parse_scalar(base).ok_or_else(|| err("unknown symbol"))?;
                    for _ in 0..power {
                        coeff *= c.clone();
                    }
                }
            }
            terms.push((exps, coeff));
        }
        Ok(Polynomial::new(vars.len(), terms))
    }
}

/// All exponent vectors of total degree `d` in `n` variables, graded-lex descending
/// (`x1^d` first).
pub fn monomials(n: usize, d: usize) -> Vec<Exponents> {
    fn rec(n: usize, d: u32, prefix: &mut Exponents, out: &mut Vec<Exponents>) {
        if prefix.len() + 1 == n {
            prefix.push(d);
            out.push(prefix.clone());
            prefix.pop();
            return;
        }
        for e in (0..=d).rev() {
            prefix.push(e);
            rec(n, d - e, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    if n == 0 {
        if d == 0 {
            out.push(Vec::new());
        }
        return out;
    }
    rec(n, d as u32, &mut Vec::new(), &mut out);
    out
}

pub fn monomial_label(vars: &[String], exps: &[u32]) -> String {
    let parts: Vec<String> = vars
        .iter()
        .zip(exps)
        .filter(|(_, &e)| e > 0)
        .map(|(v, &e)| if e == 1 { v.clone() } else { format!("{v}^{e}") })
        .collect();
    if parts.is_empty() {
        "1".to_string()
    } else {
        parts.join("*")
    }
}

/// `k[vars] / (relations)` truncated at degree `bound`.
///
/// In each degree the relation space is spanned by `relation · monomial`; the
/// basis is the set of monomials left over after eliminating, for every
/// relation-space vector, its smallest monomial in graded-lex order.
pub fn algebra_from_relations<F: Scalar>(
    vars: &[String],
    relations: &[Polynomial<F>],
    bound: usize,
) -> Result<GradedAlgebra<F>> {
    let n = vars.len();
    let mut rels: Vec<(usize, &Polynomial<F>)> = Vec::new();
    for r in relations {
        if r.nvars != n {
            return Err(Error::Dimension("relation uses a different variable count".into()));
        }
        if r.is_zero() {
            continue;
        }
        let d = r
            .homogeneous_degree()
            .ok_or_else(|| Error::Parse("relation is not homogeneous".into()))?;
        if d == 0 {
            return Err(Error::Precondition("relation of degree 0 makes the quotient trivial".into()));
        }
        rels.push((d, r));
    }
    let mut monos = Vec::new();
    let mut index: Vec<HashMap<Exponents, usize>> = Vec::new();
    let mut projectors = Vec::new();
    for d in 0..=bound {
        let list = monomials(n, d);
        let idx: HashMap<Exponents, usize> = list.iter().cloned().enumerate().map(|(i, m)| (m, i)).collect();
        let mut span = Vec::new();
        for &(rd, r) in &rels {
            if rd > d {
                continue;
            }
            for m in monomials(n, d - rd) {
                let mut v = vec![F::zero(); list.len()];
                for (e, c) in &r.terms {
                    let prod: Exponents = e.iter().zip(&m).map(|(a, b)| a + b).collect();
                    v[idx[&prod]] += c.clone();
                }
                span.push(v);
            }
        }
        projectors.push(ComplementProjector::new(list.len(), span));
        monos.push(list);
        index.push(idx);
    }
    let labels: Vec<Vec<String>> = (0..=bound)
        .map(|d| projectors[d].kept().iter().map(|&i| monomial_label(vars, &monos[d][i])).collect())
        .collect();
    Ok(GradedAlgebra::from_product_rule(labels, |d1, i, d2, j| {
        let a = &monos[d1][projectors[d1].kept()[i]];
        let b = &monos[d2][projectors[d2].kept()[j]];
        let prod: Exponents = a.iter().zip(b).map(|(x, y)| x + y).collect();
        let d = d1 + d2;
        let mut e = vec![F::zero(); monos[d].len()];
        e[index[d][&prod]] = F::one();
        projectors[d].project(&e)
    }))
}

/// Convenience wrapper parsing relation strings.
pub fn algebra_from_relation_strings<F: Scalar>(
    vars: &[&str],
    relations: &[&str],
    bound: usize,
) -> Result<GradedAlgebra<F>> {
    let polys = relations.iter().map(|r| Polynomial::parse(r, vars)).collect::<Result<Vec<_>>>()?;
    let names: Vec<String> = vars.iter().map(|s| s.to_string()).collect();
    algebra_from_relations(&names, &polys, bound)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactla::Fp;

    type F = Fp<1_073_741_789>;

    #[test]
    fn monomial_enumeration() {
        assert_eq!(monomials(2, 2), vec![vec![2, 0], vec![1, 1], vec![0, 2]]);
        assert_eq!(monomials(3, 3).len(), 10);
        assert_eq!(monomials(1, 0), vec![vec![0]]);
    }

    #[test]
    fn example_ring_dimensions() {
        let a: GradedAlgebra<F> =
            algebra_from_relation_strings(&["X", "Y"], &["X^2 - Y^2", "X^2 - X*Y", "X^3"], 3).unwrap();
        assert_eq!(a.hilbert(), vec![1, 2, 1, 0]);
        a.check_axioms().unwrap();
    }

    #[test]
    fn polynomial_ring_in_one_variable() {
        let a: GradedAlgebra<F> = algebra_from_relation_strings(&["t"], &[], 3).unwrap();
        assert_eq!(a.hilbert(), vec![1, 1, 1, 1]);
    }

    #[test]
    fn all_quadrics_kill_degree_two() {
        let a: GradedAlgebra<F> =
            algebra_from_relation_strings(&["a", "b", "c"], &["a^2", "a*b", "a*c", "b^2", "b*c", "c^2"], 3)
                .unwrap();
        assert_eq!(a.hilbert(), vec![1, 3, 0, 0]);
    }

    #[test]
    fn degree_zero_relation_is_rejected() {
        let r = algebra_from_relation_strings::<F>(&["x"], &["3"], 2);
        assert!(matches!(r, Err(Error::Precondition(_))));
        let r = algebra_from_relation_strings::<F>(&["x", "y"], &["x^2 - y"], 2);
        assert!(matches!(r, Err(Error::Parse(_))));
    }

    #[test]
    fn parse_handles_coefficients() {
        let p = Polynomial::<F>::parse("2*x*y - x*y + 3*y^2", &["x", "y"]).unwrap();
        assert_eq!(p.terms.len(), 2);
        assert_eq!(p.homogeneous_degree(), Some(2));
    }
}
