//! Finite windows of complexes of graded free modules and their exact
//! verification.
//!
//! A window holds differentials `d_lo, …, d_hi` with `d_i : F_i → F_{i-1}`
//! given as a `b_{i-1} × b_i` matrix of homogeneous elements. Every matrix
//! has one entry degree; module twists follow from it.

use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exactla::{Matrix, Scalar, Subspace};
use crate::grading::{check_field, parse_scalars, AlgebraJson, Element, GradedAlgebra, ReductionSpec};
use crate::structure::{ideal_pieces, verify_ezd, EzdPair};

/// Matrix of homogeneous elements of one degree.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GradedMatrix<F: Scalar> {
    rows: usize,
    cols: usize,
    degree: usize,
    entries: Vec<Vec<F>>,
}

impl<F: Scalar> GradedMatrix<F> {
    pub fn zeros(alg: &GradedAlgebra<F>, rows: usize, cols: usize, degree: usize) -> Self {
        GradedMatrix { rows, cols, degree, entries: vec![vec![F::zero(); alg.dim(degree)]; rows * cols] }
    }

    /// Row-major list of elements, all of degree `degree`.
    pub fn from_elements(rows: usize, cols: usize, degree: usize, elems: Vec<Element<F>>) -> Result<Self> {
        if elems.len() != rows * cols {
            return Err(Error::Shape(format!("{rows}x{cols} matrix needs {} entries", rows * cols)));
        }
        if elems.iter().any(|e| e.degree != degree) {
            return Err(Error::Precondition(format!("matrix entries must all have degree {degree}")));
        }
        Ok(GradedMatrix { rows, cols, degree, entries: elems.into_iter().map(|e| e.coords).collect() })
    }

    pub fn from_fn(
        rows: usize,
        cols: usize,
        degree: usize,
        mut f: impl FnMut(usize, usize) -> Element<F>,
    ) -> Result<Self> {
        let elems = (0..rows).flat_map(|i| (0..cols).map(move |j| (i, j))).map(|(i, j)| f(i, j)).collect();
        Self::from_elements(rows, cols, degree, elems)
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn entry(&self, i: usize, j: usize) -> Element<F> {
        Element { degree: self.degree, coords: self.entries[i * self.cols + j].clone() }
    }

    pub fn entry_coords_mut(&mut self, i: usize, j: usize) -> &mut Vec<F> {
        &mut self.entries[i * self.cols + j]
    }

    pub fn elements(&self) -> Vec<Element<F>> {
        self.entries.iter().map(|c| Element { degree: self.degree, coords: c.clone() }).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(|e| e.iter().all(|c| c.is_zero()))
    }

    pub fn transpose(&self) -> Self {
        let mut entries = Vec::with_capacity(self.entries.len());
        for j in 0..self.cols {
            for i in 0..self.rows {
                entries.push(self.entries[i * self.cols + j].clone());
            }
        }
        GradedMatrix { rows: self.cols, cols: self.rows, degree: self.degree, entries }
    }

    pub fn map(&self, mut f: impl FnMut(&Element<F>) -> Element<F>, degree: usize) -> Self {
        let entries = self
            .entries
            .iter()
            .map(|c| f(&Element { degree: self.degree, coords: c.clone() }).coords)
            .collect();
        GradedMatrix { rows: self.rows, cols: self.cols, degree, entries }
    }

    pub fn neg(&self) -> Self {
        self.map(Element::neg, self.degree)
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        if (self.rows, self.cols, self.degree) != (other.rows, other.cols, other.degree) {
            return Err(Error::Shape("adding matrices of different shape or degree".into()));
        }
        let entries = self
            .entries
            .iter()
            .zip(&other.entries)
            .map(|(a, b)| a.iter().zip(b).map(|(x, y)| x.clone() + y.clone()).collect())
            .collect();
        Ok(GradedMatrix { rows: self.rows, cols: self.cols, degree: self.degree, entries })
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.neg())
    }

    /// Product in the algebra.
    pub fn mul(&self, alg: &GradedAlgebra<F>, other: &Self) -> Result<Self> {
        if self.cols != other.rows {
            return Err(Error::Shape(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let degree = self.degree + other.degree;
        if degree > alg.degree_bound() {
            return Err(Error::DegreeOverflow(degree, alg.degree_bound()));
        }
        let mut out = GradedMatrix::zeros(alg, self.rows, other.cols, degree);
        for i in 0..self.rows {
            for j in 0..other.cols {
                let mut acc = alg.zero(degree);
                for k in 0..self.cols {
                    let a = self.entry(i, k);
                    let b = other.entry(k, j);
                    if a.is_zero() || b.is_zero() {
                        continue;
                    }
                    acc = acc.add(&alg.mul(&a, &b)?);
                }
                out.entries[i * other.cols + j] = acc.coords;
            }
        }
        Ok(out)
    }

    /// Every entry scaled by the same element.
    pub fn scale_by(&self, alg: &GradedAlgebra<F>, x: &Element<F>) -> Result<Self> {
        let mut out = GradedMatrix::zeros(alg, self.rows, self.cols, self.degree + x.degree);
        for (o, e) in out.entries.iter_mut().zip(self.elements()) {
            *o = alg.mul(x, &e)?.coords;
        }
        Ok(out)
    }

    /// `x · I_n`.
    pub fn diagonal(alg: &GradedAlgebra<F>, n: usize, x: &Element<F>) -> Self {
        let mut out = GradedMatrix::zeros(alg, n, n, x.degree);
        for i in 0..n {
            out.entries[i * n + i] = x.coords.clone();
        }
        out
    }

    /// `[[tl, tr], [bl, br]]`.
    pub fn blocks(tl: &Self, tr: &Self, bl: &Self, br: &Self) -> Result<Self> {
        let degree = tl.degree;
        if [tr.degree, bl.degree, br.degree].iter().any(|&d| d != degree)
            || tl.rows != tr.rows
            || bl.rows != br.rows
            || tl.cols != bl.cols
            || tr.cols != br.cols
        {
            return Err(Error::Shape("incompatible blocks".into()));
        }
        let (rows, cols) = (tl.rows + bl.rows, tl.cols + tr.cols);
        let mut entries = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                let (m, r, c) = match (i < tl.rows, j < tl.cols) {
                    (true, true) => (tl, i, j),
                    (true, false) => (tr, i, j - tl.cols),
                    (false, true) => (bl, i - tl.rows, j),
                    (false, false) => (br, i - tl.rows, j - tl.cols),
                };
                entries.push(m.entries[r * m.cols + c].clone());
            }
        }
        Ok(GradedMatrix { rows, cols, degree, entries })
    }

    /// The linear map `(A_s)^cols → (A_{s+deg})^rows` over the field.
    pub fn block_map(&self, alg: &GradedAlgebra<F>, s: usize) -> Result<Matrix<F>> {
        let t = s + self.degree;
        let (ns, nt) = (alg.dim(s), alg.dim(t));
        if t > alg.degree_bound() {
            if alg.is_artinian() {
                return Ok(Matrix::zeros(0, self.cols * ns));
            }
            return Err(Error::DegreeOverflow(t, alg.degree_bound()));
        }
        let mut m = Matrix::zeros(self.rows * nt, self.cols * ns);
        for i in 0..self.rows {
            for j in 0..self.cols {
                let e = self.entry(i, j);
                if e.is_zero() {
                    continue;
                }
                let block = alg.mul_map(&e, s)?;
                for r in 0..nt {
                    for c in 0..ns {
                        m[(i * nt + r, j * ns + c)] = block[(r, c)].clone();
                    }
                }
            }
        }
        Ok(m)
    }

    fn check_in(&self, alg: &GradedAlgebra<F>) -> Result<()> {
        if self.degree > alg.degree_bound() || self.entries.iter().any(|e| e.len() != alg.dim(self.degree)) {
            return Err(Error::Dimension("matrix entries do not belong to the algebra".into()));
        }
        Ok(())
    }

    pub fn to_json(&self) -> MatrixJson {
        MatrixJson {
            rows: self.rows,
            cols: self.cols,
            degree: self.degree,
            entries: (0..self.rows)
                .map(|i| {
                    (0..self.cols)
                        .map(|j| self.entries[i * self.cols + j].iter().map(ToString::to_string).collect())
                        .collect()
                })
                .collect(),
        }
    }

    pub fn from_json(json: &MatrixJson) -> Result<Self> {
        if json.entries.len() != json.rows || json.entries.iter().any(|r| r.len() != json.cols) {
            return Err(Error::Parse("matrix entries do not match the declared shape".into()));
        }
        let entries = json
            .entries
            .iter()
            .flatten()
            .map(|e| parse_scalars::<F>(e))
            .collect::<Result<Vec<_>>>()?;
        Ok(GradedMatrix { rows: json.rows, cols: json.cols, degree: json.degree, entries })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MatrixJson {
    pub rows: usize,
    pub cols: usize,
    pub degree: usize,
    /// `entries[i][j]` holds coordinates in the degree-`degree` basis.
    pub entries: Vec<Vec<Vec<String>>>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Periodicity {
    pub period: usize,
    /// `d_i = d_{i+period}` wherever both lie in the window.
    pub verified: bool,
}

/// Which ring of a reduction chain a window lives over.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ChainOrigin {
    pub reduction: ReductionSpec,
    /// `0` for the Stanley–Reisner ring, `2` for the Artinian reduction.
    pub stage: usize,
}

#[derive(Clone, Debug)]
pub struct FreeComplexWindow<F: Scalar> {
    algebra: Arc<GradedAlgebra<F>>,
    lo: i64,
    diffs: Vec<GradedMatrix<F>>,
    base_twist: i64,
    periodicity: Option<Periodicity>,
    origin: Option<ChainOrigin>,
}

impl<F: Scalar> PartialEq for FreeComplexWindow<F> {
    fn eq(&self, other: &Self) -> bool {
        self.algebra == other.algebra
            && self.lo == other.lo
            && self.diffs == other.diffs
            && self.base_twist == other.base_twist
            && self.periodicity == other.periodicity
            && self.origin == other.origin
    }
}

impl<F: Scalar> FreeComplexWindow<F> {
    /// `diffs[k]` is `d_{lo+k}`; `base_twist` is the twist of `F_{lo-1}`.
    pub fn new(algebra: Arc<GradedAlgebra<F>>, lo: i64, diffs: Vec<GradedMatrix<F>>, base_twist: i64) -> Result<Self> {
        if diffs.is_empty() {
            return Err(Error::Shape("a window needs at least one differential".into()));
        }
        for d in &diffs {
            d.check_in(&algebra)?;
        }
        for (k, pair) in diffs.windows(2).enumerate() {
            if pair[0].cols != pair[1].rows {
                return Err(Error::Shape(format!(
                    "d_{} has {} columns but d_{} has {} rows",
                    lo + k as i64,
                    pair[0].cols,
                    lo + k as i64 + 1,
                    pair[1].rows
                )));
            }
        }
        Ok(FreeComplexWindow { algebra, lo, diffs, base_twist, periodicity: None, origin: None })
    }

    /// Records a period and checks it against the stored differentials.
    pub fn with_period(mut self, period: usize) -> Self {
        let verified = period > 0 && (0..self.diffs.len().saturating_sub(period)).all(|k| self.diffs[k] == self.diffs[k + period]);
        self.periodicity = Some(Periodicity { period, verified });
        self
    }

    pub fn with_origin(mut self, origin: Option<ChainOrigin>) -> Self {
        self.origin = origin;
        self
    }

    pub fn algebra(&self) -> &Arc<GradedAlgebra<F>> {
        &self.algebra
    }

    pub fn lo(&self) -> i64 {
        self.lo
    }

    pub fn hi(&self) -> i64 {
        self.lo + self.diffs.len() as i64 - 1
    }

    pub fn len(&self) -> usize {
        self.diffs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.diffs.is_empty()
    }

    pub fn periodicity(&self) -> Option<Periodicity> {
        self.periodicity
    }

    pub fn origin(&self) -> Option<&ChainOrigin> {
        self.origin.as_ref()
    }

    pub fn base_twist(&self) -> i64 {
        self.base_twist
    }

    pub fn contains(&self, i: i64) -> bool {
        (self.lo..=self.hi()).contains(&i)
    }

    pub fn diff(&self, i: i64) -> &GradedMatrix<F> {
        assert!(self.contains(i), "index {i} outside the window");
        &self.diffs[(i - self.lo) as usize]
    }

    pub fn diffs(&self) -> &[GradedMatrix<F>] {
        &self.diffs
    }

    /// Rank of `F_i` for `lo - 1 ≤ i ≤ hi`.
    pub fn betti(&self, i: i64) -> usize {
        if i == self.lo - 1 {
            self.diffs[0].rows
        } else {
            self.diff(i).cols
        }
    }

    pub fn betti_numbers(&self) -> Vec<usize> {
        (self.lo - 1..=self.hi()).map(|i| self.betti(i)).collect()
    }

    /// `n_i` with `F_i = A(-n_i)^{b_i}`.
    pub fn twist(&self, i: i64) -> i64 {
        let steps: usize = (self.lo..=i).map(|k| self.diff(k).degree).sum();
        self.base_twist + steps as i64
    }

    /// Indices `i` with both `d_i` and `d_{i+1}` in the window.
    pub fn interior(&self) -> std::ops::Range<i64> {
        self.lo..self.hi()
    }

    /// Prepends `k` differentials copied from one period later.
    pub fn extend_low(&self, k: usize) -> Result<Self> {
        let p = match self.periodicity {
            Some(Periodicity { period, verified: true }) if period <= self.diffs.len() => period,
            _ => return Err(Error::Precondition("extension needs a verified period inside the window".into())),
        };
        let mut diffs = self.diffs.clone();
        for _ in 0..k {
            let d = diffs[p - 1].clone();
            diffs.insert(0, d);
        }
        let shift: usize = diffs[..k].iter().map(|d| d.degree).sum();
        let w = FreeComplexWindow::new(self.algebra.clone(), self.lo - k as i64, diffs, self.base_twist - shift as i64)?;
        Ok(w.with_period(p).with_origin(self.origin.clone()))
    }

    pub fn to_json(&self) -> ComplexJson {
        ComplexJson {
            algebra: self.algebra.to_json(),
            lo: self.lo,
            base_twist: self.base_twist,
            betti: self.betti_numbers(),
            differentials: self.diffs.iter().map(GradedMatrix::to_json).collect(),
            periodicity: self.periodicity.map(|p| p.period),
            origin: self.origin.clone(),
        }
    }

    pub fn from_json(json: &ComplexJson) -> Result<Self> {
        check_field::<F>(&json.algebra.field)?;
        let algebra = Arc::new(GradedAlgebra::from_json(&json.algebra)?);
        Self::from_json_with(algebra, json)
    }

    /// Loads the differentials over an already built algebra, which must
    /// agree with the inline one.
    pub fn from_json_with(algebra: Arc<GradedAlgebra<F>>, json: &ComplexJson) -> Result<Self> {
        check_field::<F>(&json.algebra.field)?;
        if algebra.to_json() != json.algebra {
            return Err(Error::Parse("inline algebra does not match".into()));
        }
        let diffs = json.differentials.iter().map(GradedMatrix::from_json).collect::<Result<Vec<_>>>()?;
        let w = FreeComplexWindow::new(algebra, json.lo, diffs, json.base_twist)?;
        if w.betti_numbers() != json.betti {
            return Err(Error::Parse("betti numbers do not match the matrices".into()));
        }
        let w = match json.periodicity {
            Some(p) => w.with_period(p),
            None => w,
        };
        Ok(w.with_origin(json.origin.clone()))
    }

    pub fn to_json_string(&self) -> String {
        serde_json::to_string_pretty(&self.to_json()).expect("complex serialises")
    }

    pub fn from_json_str(text: &str) -> Result<Self> {
        Self::from_json(&serde_json::from_str(text)?)
    }
}

/// Complex file.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ComplexJson {
    pub algebra: AlgebraJson,
    pub lo: i64,
    pub base_twist: i64,
    /// `b_{lo-1}, …, b_hi`.
    pub betti: Vec<usize>,
    pub differentials: Vec<MatrixJson>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub periodicity: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub origin: Option<ChainOrigin>,
}

/// `d_i d_{i+1} = 0` for every consecutive pair.
pub fn compose_check<F: Scalar>(w: &FreeComplexWindow<F>) -> Result<bool> {
    for i in w.interior() {
        match w.diff(i).mul(&w.algebra, w.diff(i + 1)) {
            Ok(p) if !p.is_zero() => return Ok(false),
            Ok(_) => {}
            // products beyond the bound of an Artinian algebra vanish
            Err(Error::DegreeOverflow(..)) if w.algebra.is_artinian() => {}
            Err(e) => return Err(e),
        }
    }
    Ok(true)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExactnessEntry {
    pub index: i64,
    /// Degree `s` of the algebra in which the coordinates of `F_i` live.
    pub degree: usize,
    pub kernel_dim: usize,
    pub image_rank: usize,
    pub exact: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExactnessReport {
    pub entries: Vec<ExactnessEntry>,
    pub dual_entries: Vec<ExactnessEntry>,
    pub exact: bool,
    pub dual_exact: bool,
    /// Largest algebra degree checked.
    pub max_degree: usize,
    /// Every nonzero degree was checked (Artinian algebras).
    pub complete: bool,
}

impl ExactnessReport {
    pub fn all_exact(&self) -> bool {
        self.exact && self.dual_exact
    }
}

fn rank_at<F: Scalar>(alg: &GradedAlgebra<F>, m: &GradedMatrix<F>, s: usize) -> Result<usize> {
    if alg.dim(s) == 0 {
        return Ok(0);
    }
    Ok(m.block_map(alg, s)?.rank())
}

/// Largest algebra degree checked and whether that covers everything.
fn degree_range<F: Scalar>(w: &FreeComplexWindow<F>, bound: Option<usize>) -> (usize, bool) {
    let alg = &w.algebra;
    let max_deg = w.diffs.iter().map(|d| d.degree).max().unwrap_or(0);
    let (natural, complete) = if alg.is_artinian() {
        (alg.top_degree(), true)
    } else {
        (alg.degree_bound().saturating_sub(max_deg), false)
    };
    match bound {
        Some(b) if b < natural => (b, false),
        _ => (natural, complete),
    }
}

fn exactness_entries<F: Scalar>(w: &FreeComplexWindow<F>, max_degree: usize) -> Result<Vec<ExactnessEntry>> {
    let alg = &w.algebra;
    let mut out = Vec::new();
    for i in w.interior() {
        let (di, dnext) = (w.diff(i), w.diff(i + 1));
        for s in 0..=max_degree {
            let kernel_dim = di.cols * alg.dim(s) - rank_at(alg, di, s)?;
            let image_rank = if s >= dnext.degree { rank_at(alg, dnext, s - dnext.degree)? } else { 0 };
            out.push(ExactnessEntry { index: i, degree: s, kernel_dim, image_rank, exact: kernel_dim == image_rank });
        }
    }
    Ok(out)
}

/// Degreewise exactness of the window and of its dual at every interior index.
///
/// Entries compare dimensions only; the summary flags also require the
/// differentials to compose to zero, which the dual inherits.
pub fn graded_exactness<F: Scalar>(w: &FreeComplexWindow<F>, bound: Option<usize>) -> Result<ExactnessReport> {
    let (max_degree, complete) = degree_range(w, bound);
    let composes = compose_check(w)?;
    let entries = exactness_entries(w, max_degree)?;
    let dual_entries = exactness_entries(&dual(w), max_degree)?;
    Ok(ExactnessReport {
        exact: composes && entries.iter().all(|e| e.exact),
        dual_exact: composes && dual_entries.iter().all(|e| e.exact),
        entries,
        dual_entries,
        max_degree,
        complete,
    })
}

/// `Hom(-, A)`: `e_j = d_{1-j}^T`, twists negated.
pub fn dual<F: Scalar>(w: &FreeComplexWindow<F>) -> FreeComplexWindow<F> {
    let diffs: Vec<GradedMatrix<F>> = w.diffs.iter().rev().map(GradedMatrix::transpose).collect();
    FreeComplexWindow {
        algebra: w.algebra.clone(),
        lo: 1 - w.hi(),
        diffs,
        base_twist: -w.twist(w.hi()),
        periodicity: w.periodicity,
        origin: w.origin.clone(),
    }
}

/// No entry is a unit: every nonzero differential has positive degree.
pub fn is_minimal<F: Scalar>(w: &FreeComplexWindow<F>) -> bool {
    w.diffs.iter().all(|d| d.degree > 0 || d.is_zero())
}

/// `⋯ → A --a--> A --b--> A --a--> ⋯` with `d_i = a` for even `i`.
pub fn ezd_complex<F: Scalar>(
    alg: &Arc<GradedAlgebra<F>>,
    pair: &EzdPair<F>,
    half_length: usize,
) -> Result<FreeComplexWindow<F>> {
    if !verify_ezd(alg, &pair.a, &pair.b)? {
        return Err(Error::Precondition("pair is not a certified pair of exact zero divisors".into()));
    }
    let h = half_length as i64;
    let diffs = (-h..=h)
        .map(|i| {
            let e = if i.rem_euclid(2) == 0 { &pair.a } else { &pair.b };
            GradedMatrix::from_elements(1, 1, 1, vec![e.clone()])
        })
        .collect::<Result<Vec<_>>>()?;
    let period = if pair.a == pair.b { 1 } else { 2 };
    // twist of F_0 is zero
    Ok(FreeComplexWindow::new(alg.clone(), -h, diffs, -h - 1)?.with_period(period))
}

/// Presentation `d_{i+1}` of the cokernel module at `F_i`.
pub fn cokernel_presentation<F: Scalar>(w: &FreeComplexWindow<F>, i: i64) -> Result<GradedMatrix<F>> {
    if !w.contains(i) || !w.contains(i + 1) {
        return Err(Error::Precondition(format!("index {i} is not interior to the window")));
    }
    Ok(w.diff(i + 1).clone())
}

/// Degree 1 and degree 2 pieces of the ideal generated by the entries.
pub fn fitting_support<F: Scalar>(
    alg: &GradedAlgebra<F>,
    pres: &GradedMatrix<F>,
) -> Result<(Subspace<F>, Subspace<F>)> {
    if pres.is_zero() {
        return Ok((Subspace::zero(alg.dim(1)), Subspace::zero(alg.dim(2))));
    }
    if pres.degree != 1 {
        return Err(Error::Precondition("presentation entries must be linear".into()));
    }
    let pieces = ideal_pieces(alg, &pres.elements())?;
    Ok((pieces[1].clone(), pieces[2].clone()))
}

/// Why the ring has no exact zero divisors.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum NoEzdEvidence {
    /// Removing these two vertices disconnects the graph.
    DisconnectingPair { x: String, y: String },
    /// A search found nothing.
    SearchExhausted { trials: usize, exhaustive: bool },
    /// The ring has a pair of exact zero divisors.
    EzdFound,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "verdict", rename_all = "kebab-case")]
pub enum Indecomposability {
    /// A rank-two cokernel with no cyclic totally reflexive summand possible.
    Indecomposable { evidence: NoEzdEvidence },
    Inconclusive { reason: String },
}

/// The cokernel at `F_i` is indecomposable when it has two generators and the
/// ring has no exact zero divisors, since any summand would be cyclic.
pub fn indecomposability_certificate<F: Scalar>(
    w: &FreeComplexWindow<F>,
    i: i64,
    evidence: &NoEzdEvidence,
) -> Indecomposability {
    if cokernel_presentation(w, i).is_err() {
        return Indecomposability::Inconclusive { reason: format!("index {i} is not interior") };
    }
    if w.betti(i) != 2 {
        return Indecomposability::Inconclusive { reason: format!("rank {} at index {i}, need 2", w.betti(i)) };
    }
    match evidence {
        NoEzdEvidence::EzdFound => {
            Indecomposability::Inconclusive { reason: "the ring has exact zero divisors".into() }
        }
        e => Indecomposability::Indecomposable { evidence: e.clone() },
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactla::Fp;
    use crate::grading::algebra_from_relation_strings;
    use num_traits::One;

    type F = Fp<1_073_741_789>;

    fn c4() -> Arc<GradedAlgebra<F>> {
        Arc::new(algebra_from_relation_strings(&["x", "y"], &["x^2", "y^2"], 3).unwrap())
    }

    fn pair(r: &GradedAlgebra<F>, a: &[i64], b: &[i64]) -> EzdPair<F> {
        EzdPair { a: r.linear_form(a), b: r.linear_form(b), certified: true }
    }

    #[test]
    fn ezd_window_is_exact() {
        let r = c4();
        for (a, b) in [([1, 0], [1, 0]), ([1, 1], [1, -1])] {
            let w = ezd_complex(&r, &pair(&r, &a, &b), 3).unwrap();
            assert!(compose_check(&w).unwrap());
            let rep = graded_exactness(&w, None).unwrap();
            assert!(rep.all_exact() && rep.complete);
            assert!(w.periodicity().unwrap().verified);
        }
    }

    #[test]
    fn non_ezd_window_is_not_exact() {
        let r = Arc::new(algebra_from_relation_strings::<F>(&["x", "y"], &["x^2", "y^2", "x*y"], 3).unwrap());
        let x = GradedMatrix::from_elements(1, 1, 1, vec![r.linear_form(&[1, 0])]).unwrap();
        let w = FreeComplexWindow::new(r, 0, vec![x.clone(), x.clone(), x], 0).unwrap();
        assert!(compose_check(&w).unwrap());
        assert!(!graded_exactness(&w, None).unwrap().exact);
    }

    #[test]
    fn perturbed_window_fails_composition() {
        let r = c4();
        let w = ezd_complex(&r, &pair(&r, &[1, 0], &[1, 0]), 2).unwrap();
        let mut diffs = w.diffs().to_vec();
        diffs[1].entry_coords_mut(0, 0)[1] = F::one();
        let bad = FreeComplexWindow::new(r, w.lo(), diffs, 0).unwrap();
        assert!(!compose_check(&bad).unwrap());
    }

    #[test]
    fn dual_is_involution_and_swaps_pair() {
        let r = c4();
        let w = ezd_complex(&r, &pair(&r, &[1, 1], &[1, -1]), 2).unwrap();
        assert_eq!(dual(&dual(&w)), w);
        let swapped = ezd_complex(&r, &pair(&r, &[1, -1], &[1, 1]), 2).unwrap();
        let d = dual(&w);
        assert_eq!((d.lo(), d.hi()), (-1, 3));
        for j in -1..=2 {
            assert_eq!(d.diff(j), swapped.diff(j));
        }
    }

    #[test]
    fn fitting_support_of_variable() {
        let r = c4();
        let p = GradedMatrix::from_elements(1, 1, 1, vec![r.linear_form(&[1, 0])]).unwrap();
        let (s1, s2) = fitting_support(&r, &p).unwrap();
        assert_eq!(s1.dim(), 1);
        assert_eq!(s2.dim(), 1);
        let zero = GradedMatrix::zeros(&r, 2, 2, 1);
        let (z1, z2) = fitting_support(&r, &zero).unwrap();
        assert!(z1.is_zero() && z2.is_zero());
    }

    #[test]
    fn json_round_trip_is_bit_exact() {
        let r = c4();
        let w = ezd_complex(&r, &pair(&r, &[1, 1], &[1, -1]), 2).unwrap();
        let text = w.to_json_string();
        let back = FreeComplexWindow::<F>::from_json_str(&text).unwrap();
        assert_eq!(back, w);
        assert_eq!(back.to_json_string(), text);
    }

    #[test]
    fn unit_entries_are_not_minimal() {
        let r = c4();
        let one = GradedMatrix::from_elements(1, 1, 0, vec![r.one()]).unwrap();
        let zero = GradedMatrix::zeros(&r, 1, 1, 0);
        let w = FreeComplexWindow::new(r, 0, vec![one, zero], 0).unwrap();
        assert!(!is_minimal(&w));
        assert!(compose_check(&w).unwrap());
    }

    #[test]
    fn indecomposability_needs_rank_two() {
        let r = c4();
        let w = ezd_complex(&r, &pair(&r, &[1, 0], &[1, 0]), 2).unwrap();
        let ev = NoEzdEvidence::DisconnectingPair { x: "x5".into(), y: "y5".into() };
        assert!(matches!(indecomposability_certificate(&w, 0, &ev), Indecomposability::Inconclusive { .. }));
    }
}
