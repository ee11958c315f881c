use std::collections::BTreeMap;

use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exactla::{FieldSpec, Matrix, Scalar};

/// Truncation `A_0 ⊕ A_1 ⊕ … ⊕ A_D` of a standard graded commutative algebra.
///
/// Each degree carries an explicit basis; multiplication is stored as dense
/// structure tensors `table[(d1, d2)][i][j] ∈ A_{d1+d2}` for `1 ≤ d1 ≤ d2`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GradedAlgebra<F> {
    bound: usize,
    labels: Vec<Vec<String>>,
    tables: BTreeMap<(usize, usize), Vec<F>>,
}

/// Homogeneous element: a degree plus coordinates in that degree's basis.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Element<F> {
    pub degree: usize,
    pub coords: Vec<F>,
}

impl<F: Scalar> Element<F> {
    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(Zero::is_zero)
    }

    pub fn scale(&self, c: &F) -> Self {
        Element { degree: self.degree, coords: self.coords.iter().map(|x| x.clone() * c.clone()).collect() }
    }

    pub fn add(&self, other: &Element<F>) -> Self {
        assert_eq!(self.degree, other.degree, "adding elements of different degree");
        let coords = self.coords.iter().zip(&other.coords).map(|(a, b)| a.clone() + b.clone()).collect();
        Element { degree: self.degree, coords }
    }

    pub fn sub(&self, other: &Element<F>) -> Self {
        self.add(&other.scale(&-F::one()))
    }

    pub fn neg(&self) -> Self {
        self.scale(&-F::one())
    }
}

impl<F: Scalar> GradedAlgebra<F> {
    /// Assembles an algebra from per-degree labels and a product rule on basis
    /// elements. `product(d1, i, d2, j)` must return coordinates in degree `d1 + d2`.
    pub fn from_product_rule(
        labels: Vec<Vec<String>>,
        mut product: impl FnMut(usize, usize, usize, usize) -> Vec<F>,
    ) -> Self {
        assert!(!labels.is_empty() && labels[0].len() == 1, "degree 0 must be one-dimensional");
        let bound = labels.len() - 1;
        let mut tables = BTreeMap::new();
        for d1 in 1..=bound {
            for d2 in d1..=bound - d1 {
                let (n1, n2, n3) = (labels[d1].len(), labels[d2].len(), labels[d1 + d2].len());
                let mut data = Vec::with_capacity(n1 * n2 * n3);
                for i in 0..n1 {
                    for j in 0..n2 {
                        let v = product(d1, i, d2, j);
                        assert_eq!(v.len(), n3, "product has wrong length");
                        data.extend(v);
                    }
                }
                tables.insert((d1, d2), data);
            }
        }
        GradedAlgebra { bound, labels, tables }
    }

    pub fn degree_bound(&self) -> usize {
        self.bound
    }

    pub fn dim(&self, d: usize) -> usize {
        self.labels.get(d).map_or(0, Vec::len)
    }

    /// `(dim A_0, …, dim A_D)`.
    pub fn hilbert(&self) -> Vec<usize> {
        self.labels.iter().map(Vec::len).collect()
    }

    /// Sum of all graded dimensions; the length when the algebra is Artinian.
    pub fn total_dim(&self) -> usize {
        self.hilbert().iter().sum()
    }

    /// True when some degree `≤ D` vanishes, hence every higher degree does too.
    pub fn is_artinian(&self) -> bool {
        self.labels.iter().any(Vec::is_empty)
    }

    /// Largest degree with a nonzero component.
    pub fn top_degree(&self) -> usize {
        (0..=self.bound).rev().find(|&d| self.dim(d) > 0).unwrap_or(0)
    }

    pub fn labels(&self, d: usize) -> &[String] {
        &self.labels[d]
    }

    pub fn all_labels(&self) -> &[Vec<String>] {
        &self.labels
    }

    pub fn tables(&self) -> &BTreeMap<(usize, usize), Vec<F>> {
        &self.tables
    }

    pub fn zero(&self, d: usize) -> Element<F> {
        Element { degree: d, coords: vec![F::zero(); self.dim(d)] }
    }

    pub fn one(&self) -> Element<F> {
        Element { degree: 0, coords: vec![F::one()] }
    }

    pub fn basis_element(&self, d: usize, i: usize) -> Element<F> {
        let mut e = self.zero(d);
        e.coords[i] = F::one();
        e
    }

    /// Basis of `A_1`.
    pub fn generators(&self) -> Vec<Element<F>> {
        (0..self.dim(1)).map(|i| self.basis_element(1, i)).collect()
    }

    pub fn element(&self, d: usize, coords: Vec<F>) -> Result<Element<F>> {
        if d > self.bound {
            return Err(Error::DegreeOverflow(d, self.bound));
        }
        if coords.len() != self.dim(d) {
            return Err(Error::Dimension(format!(
                "degree {d} has dimension {}, got {} coordinates",
                self.dim(d),
                coords.len()
            )));
        }
        Ok(Element { degree: d, coords })
    }

    /// `c1*label1 + c2*label2 + …` over the basis of the element's degree.
    pub fn format(&self, e: &Element<F>) -> String {
        let terms: Vec<String> = e
            .coords
            .iter()
            .zip(&self.labels[e.degree])
            .filter(|(c, _)| !c.is_zero())
            .map(|(c, l)| if c.is_one() { l.clone() } else { format!("{c}*{l}") })
            .collect();
        if terms.is_empty() {
            "0".into()
        } else {
            terms.join(" + ").replace("+ -", "- ")
        }
    }

    /// Element of `A_1` from integer coefficients.
    pub fn linear_form(&self, coeffs: &[i64]) -> Element<F> {
        assert_eq!(coeffs.len(), self.dim(1));
        Element { degree: 1, coords: coeffs.iter().map(|&c| F::from_int(c)).collect() }
    }

    /// Product of basis elements `e_{d1,i} · e_{d2,j}`.
    pub fn basis_product(&self, d1: usize, i: usize, d2: usize, j: usize) -> Vec<F> {
        if d1 == 0 {
            let mut v = vec![F::zero(); self.dim(d2)];
            v[j] = F::one();
            return v;
        }
        if d2 == 0 {
            return self.basis_product(d2, j, d1, i);
        }
        let (d1, i, d2, j) = if d1 <= d2 { (d1, i, d2, j) } else { (d2, j, d1, i) };
        let n2 = self.dim(d2);
        let n3 = self.dim(d1 + d2);
        let start = (i * n2 + j) * n3;
        self.tables[&(d1, d2)][start..start + n3].to_vec()
    }

    pub fn mul(&self, a: &Element<F>, b: &Element<F>) -> Result<Element<F>> {
        let d = a.degree + b.degree;
        if d > self.bound {
            return Err(Error::DegreeOverflow(d, self.bound));
        }
        self.check(a)?;
        self.check(b)?;
        let mut out = vec![F::zero(); self.dim(d)];
        if self.dim(d) == 0 {
            return Ok(Element { degree: d, coords: out });
        }
        if a.degree == 0 || b.degree == 0 {
            let (s, v) = if a.degree == 0 { (&a.coords[0], b) } else { (&b.coords[0], a) };
            return Ok(v.scale(s));
        }
        let (a, b) = if a.degree <= b.degree { (a, b) } else { (b, a) };
        let table = &self.tables[&(a.degree, b.degree)];
        let (n2, n3) = (b.coords.len(), out.len());
        for (i, ai) in a.coords.iter().enumerate() {
            if ai.is_zero() {
                continue;
            }
            for (j, bj) in b.coords.iter().enumerate() {
                if bj.is_zero() {
                    continue;
                }
                let c = ai.clone() * bj.clone();
                let start = (i * n2 + j) * n3;
                for (o, t) in out.iter_mut().zip(&table[start..start + n3]) {
                    if !t.is_zero() {
                        *o += c.clone() * t.clone();
                    }
                }
            }
        }
        Ok(Element { degree: d, coords: out })
    }

    /// Matrix of multiplication by `a` from `A_k` to `A_{k + deg a}`.
    pub fn mul_map(&self, a: &Element<F>, k: usize) -> Result<Matrix<F>> {
        let d = a.degree + k;
        if d > self.bound {
            return Err(Error::DegreeOverflow(d, self.bound));
        }
        self.check(a)?;
        let columns: Vec<Vec<F>> = (0..self.dim(k))
            .map(|j| {
                let mut col = vec![F::zero(); self.dim(d)];
                for (i, ai) in a.coords.iter().enumerate() {
                    if ai.is_zero() {
                        continue;
                    }
                    for (o, t) in col.iter_mut().zip(self.basis_product(a.degree, i, k, j)) {
                        if !t.is_zero() {
                            *o += ai.clone() * t;
                        }
                    }
                }
                col
            })
            .collect();
        Ok(Matrix::from_columns(self.dim(d), &columns))
    }

    /// Multiplication `A_k → ⊕_g A_{k+1}` by every generator, stacked.
    pub fn generator_map(&self, k: usize) -> Result<Matrix<F>> {
        let mut out: Option<Matrix<F>> = None;
        for g in self.generators() {
            let m = self.mul_map(&g, k)?;
            out = Some(match out {
                None => m,
                Some(acc) => acc.vstack(&m),
            });
        }
        Ok(out.unwrap_or_else(|| Matrix::zeros(0, self.dim(k))))
    }

    fn check(&self, a: &Element<F>) -> Result<()> {
        if a.degree > self.bound || a.coords.len() != self.dim(a.degree) {
            return Err(Error::Dimension(format!(
                "element of degree {} with {} coordinates does not belong to this algebra",
                a.degree,
                a.coords.len()
            )));
        }
        Ok(())
    }

    /// Same algebra cut off at a smaller bound.
    pub fn truncate(&self, bound: usize) -> Self {
        let bound = bound.min(self.bound);
        let labels = self.labels[..=bound].to_vec();
        let tables = self
            .tables
            .iter()
            .filter(|((a, b), _)| a + b <= bound)
            .map(|(k, v)| (*k, v.clone()))
            .collect();
        GradedAlgebra { bound, labels, tables }
    }

    /// Agreement of bases and products up to the smaller of the two bounds.
    pub fn agrees_with(&self, other: &GradedAlgebra<F>) -> bool {
        let b = self.bound.min(other.bound);
        self.truncate(b) == other.truncate(b)
    }

    /// Commutativity and associativity on all basis triples within the cutoff,
    /// plus unit behaviour. Returns the first violation found.
    pub fn check_axioms(&self) -> std::result::Result<(), String> {
        for d1 in 1..=self.bound {
            for d2 in 1..=self.bound.saturating_sub(d1) {
                for i in 0..self.dim(d1) {
                    for j in 0..self.dim(d2) {
                        if self.basis_product(d1, i, d2, j) != self.basis_product(d2, j, d1, i) {
                            return Err(format!("commutativity fails at ({d1},{i})·({d2},{j})"));
                        }
                    }
                }
            }
        }
        for d1 in 1..=self.bound {
            for d2 in 1..=self.bound {
                for d3 in 1..=self.bound {
                    if d1 + d2 + d3 > self.bound {
                        continue;
                    }
                    for i in 0..self.dim(d1) {
                        for j in 0..self.dim(d2) {
                            for k in 0..self.dim(d3) {
                                let (a, b, c) = (
                                    self.basis_element(d1, i),
                                    self.basis_element(d2, j),
                                    self.basis_element(d3, k),
                                );
                                let left = self.mul(&self.mul(&a, &b).unwrap(), &c).unwrap();
                                let right = self.mul(&a, &self.mul(&b, &c).unwrap()).unwrap();
                                if left != right {
                                    return Err(format!("associativity fails at degrees {d1},{d2},{d3}"));
                                }
                            }
                        }
                    }
                }
            }
        }
        for d in 0..=self.bound {
            for i in 0..self.dim(d) {
                let e = self.basis_element(d, i);
                if self.mul(&self.one(), &e).unwrap() != e {
                    return Err(format!("unit fails at ({d},{i})"));
                }
            }
        }
        Ok(())
    }

    pub fn to_json(&self) -> AlgebraJson {
        AlgebraJson {
            field: F::field_spec(),
            degree_bound: self.bound,
            labels: self.labels.clone(),
            tables: self
                .tables
                .iter()
                .map(|(&(left, right), data)| TableJson {
                    left,
                    right,
                    data: data.iter().map(ToString::to_string).collect(),
                })
                .collect(),
        }
    }

    pub fn from_json(json: &AlgebraJson) -> Result<Self> {
        check_field::<F>(&json.field)?;
        let labels = json.labels.clone();
        if labels.len() != json.degree_bound + 1 || labels[0].len() != 1 {
            return Err(Error::Parse("algebra labels do not match the degree bound".into()));
        }
        let mut tables = BTreeMap::new();
        for t in &json.tables {
            if t.left == 0 || t.left > t.right || t.left + t.right > json.degree_bound {
                return Err(Error::Parse(format!("unexpected table ({}, {})", t.left, t.right)));
            }
            let expected = labels[t.left].len() * labels[t.right].len() * labels[t.left + t.right].len();
            if t.data.len() != expected {
                return Err(Error::Parse(format!("table ({}, {}) has wrong size", t.left, t.right)));
            }
            tables.insert((t.left, t.right), parse_scalars::<F>(&t.data)?);
        }
        let alg = GradedAlgebra { bound: json.degree_bound, labels, tables };
        for d1 in 1..=alg.bound {
            for d2 in d1..=alg.bound - d1 {
                if !alg.tables.contains_key(&(d1, d2)) {
                    return Err(Error::Parse(format!("missing table ({d1}, {d2})")));
                }
            }
        }
        Ok(alg)
    }
}

/// Serialized algebra.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AlgebraJson {
    pub field: FieldSpec,
    pub degree_bound: usize,
    pub labels: Vec<Vec<String>>,
    pub tables: Vec<TableJson>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TableJson {
    pub left: usize,
    pub right: usize,
    pub data: Vec<String>,
}

pub(crate) fn check_field<F: Scalar>(found: &FieldSpec) -> Result<()> {
    let expected = F::field_spec();
    if *found != expected {
        return Err(Error::FieldMismatch { found: found.to_string(), expected: expected.to_string() });
    }
    Ok(())
}

pub(crate) fn parse_scalars<F: Scalar>(items: &[String]) -> Result<Vec<F>> {
    items
        .iter()
        .map(|s| F::parse_scalar(s).ok_or_else(|| Error::Parse(format!("bad scalar {s:?}"))))
        .collect()
}
