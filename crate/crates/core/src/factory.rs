//! The ten-vertex ring without exact zero divisors and its totally acyclic
//! complexes of rank two, built from pairs of 2×2 blocks `(A_n, B_n)`.
//!
//! `A_n` has entries in `a_1 = <x1, y1, x2, y2>` and `B_n` in
//! `b_1 = <x3, y3, x4, y4>`. Since `ab = 0` and `a ∩ b = (δ)`, the kernel of
//! `A_n + B_n` in degree one is spanned by the solutions of
//! `A c = -B d = δ e_j`, which give the next pair.

use std::sync::Arc;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::complexes::{
    compose_check, cokernel_presentation, fitting_support, graded_exactness, FreeComplexWindow, GradedMatrix,
    NoEzdEvidence,
};
use crate::error::{Error, Result};
use crate::exactla::{Matrix, Scalar, Subspace};
use crate::grading::{artinian_reduction, ArtinianReduction, Element, GradedAlgebra, ReductionMode};
use crate::graph::special_graph;
use crate::structure::{ideal_pieces, normalise};

pub const DEFAULT_RETRIES: usize = 64;
pub const DEFAULT_FORWARD: usize = 4;
pub const DEFAULT_BACKWARD: usize = 4;

/// The two ideals of the special ring.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Side {
    A,
    B,
}

impl Side {
    /// Generators in cyclic order, so that consecutive products (and the
    /// product of the last with the first) span the degree-two piece.
    pub fn labels(self) -> [&'static str; 4] {
        match self {
            Side::A => ["x1", "y1", "x2", "y2"],
            Side::B => ["x3", "y3", "x4", "y4"],
        }
    }
}

#[derive(Clone, Debug)]
pub struct SpecialRing<F: Scalar> {
    reduction: ArtinianReduction<F>,
    a_gens: [Element<F>; 4],
    b_gens: [Element<F>; 4],
    a_pieces: [Subspace<F>; 2],
    b_pieces: [Subspace<F>; 2],
    delta: Element<F>,
}

/// Builds the ring, the ideals `a` and `b`, and the generator `δ` of their
/// intersection, checking `m = a + b`, `ab = 0` and `dim(a ∩ b) = 1`.
pub fn build_special_ring<F: Scalar>() -> Result<SpecialRing<F>> {
    build_special_ring_with_bound(3)
}

/// Same ring with a larger degree bound, for lifting along the reduction chain.
pub fn build_special_ring_with_bound<F: Scalar>(bound: usize) -> Result<SpecialRing<F>> {
    if bound < 3 {
        return Err(Error::Precondition("the special ring needs a degree bound of at least 3".into()));
    }
    let g = special_graph();
    let reduction = artinian_reduction::<F>(&g, ReductionMode::CanonicalBipartite, bound)?;
    let r = reduction.ring().clone();
    if r.hilbert()[..4] != [1, 8, 7, 0] {
        return Err(Error::Inconsistent(format!("special ring has Hilbert function {:?}", r.hilbert())));
    }
    let gens = |side: Side| -> Result<[Element<F>; 4]> {
        let v: Vec<Element<F>> = side
            .labels()
            .iter()
            .map(|l| {
                g.index_of(l)
                    .map(|i| reduction.vertex_image(i))
                    .ok_or_else(|| Error::Graph(format!("missing vertex {l}")))
            })
            .collect::<Result<_>>()?;
        Ok(v.try_into().expect("four generators"))
    };
    let (a_gens, b_gens) = (gens(Side::A)?, gens(Side::B)?);
    let pa = ideal_pieces(&r, &a_gens)?;
    let pb = ideal_pieces(&r, &b_gens)?;
    for d in 1..=2 {
        if pa[d].dim() != 4 || pb[d].dim() != 4 {
            return Err(Error::Inconsistent(format!("ideal pieces in degree {d} are not 4-dimensional")));
        }
        if pa[d].sum(&pb[d])?.dim() != r.dim(d) {
            return Err(Error::Inconsistent(format!("a + b misses part of degree {d}")));
        }
    }
    for x in &a_gens {
        for y in &b_gens {
            if !r.mul(x, y)?.is_zero() {
                return Err(Error::Inconsistent("ab is not zero".into()));
            }
        }
    }
    let meet = pa[2].intersection(&pb[2])?;
    if meet.dim() != 1 || !pa[1].intersection(&pb[1])?.is_zero() {
        return Err(Error::Inconsistent("a and b do not meet in a single line of degree two".into()));
    }
    let delta = Element { degree: 2, coords: normalise(meet.basis()[0].clone()) };
    Ok(SpecialRing {
        reduction,
        a_gens,
        b_gens,
        a_pieces: [pa[1].clone(), pa[2].clone()],
        b_pieces: [pb[1].clone(), pb[2].clone()],
        delta,
    })
}

impl<F: Scalar> SpecialRing<F> {
    pub fn ring(&self) -> &Arc<GradedAlgebra<F>> {
        self.reduction.ring()
    }

    pub fn reduction(&self) -> &ArtinianReduction<F> {
        &self.reduction
    }

    pub fn gens(&self, side: Side) -> &[Element<F>; 4] {
        match side {
            Side::A => &self.a_gens,
            Side::B => &self.b_gens,
        }
    }

    /// `a_d` or `b_d` for `d = 1, 2`.
    pub fn piece(&self, side: Side, d: usize) -> &Subspace<F> {
        assert!(d == 1 || d == 2, "ideal pieces are stored in degrees 1 and 2");
        match side {
            Side::A => &self.a_pieces[d - 1],
            Side::B => &self.b_pieces[d - 1],
        }
    }

    pub fn delta(&self) -> &Element<F> {
        &self.delta
    }

    /// `Σ c_k g_k` over the generators of one side.
    pub fn element(&self, side: Side, coeffs: &[F; 4]) -> Element<F> {
        let r = self.ring();
        let mut out = r.zero(1);
        for (c, g) in coeffs.iter().zip(self.gens(side)) {
            out = out.add(&g.scale(c));
        }
        out
    }

    /// Coefficients of a linear element over the generators of one side.
    pub fn coefficients(&self, side: Side, e: &Element<F>) -> Option<[F; 4]> {
        if e.degree != 1 {
            return None;
        }
        let cols: Vec<Vec<F>> = self.gens(side).iter().map(|g| g.coords.clone()).collect();
        let m = Matrix::from_columns(self.ring().dim(1), &cols);
        m.solve(&e.coords).map(|v| v.try_into().expect("four coefficients"))
    }

    /// The disconnecting pair of the graph, which rules out exact zero divisors.
    pub fn no_ezd_evidence(&self) -> Result<NoEzdEvidence> {
        match self.reduction.graph().disconnecting_pair()? {
            Some((x, y)) => {
                let g = self.reduction.graph();
                Ok(NoEzdEvidence::DisconnectingPair { x: g.label(x).to_string(), y: g.label(y).to_string() })
            }
            None => Err(Error::Inconsistent("special graph has no disconnecting pair".into())),
        }
    }

    /// A 2×2 linear matrix from coefficients `[entry][generator]`, entries in
    /// row-major order.
    pub fn block_from_coeffs(&self, side: Side, coeffs: &[[F; 4]; 4]) -> GradedMatrix<F> {
        let elems = coeffs.iter().map(|c| self.element(side, c)).collect();
        GradedMatrix::from_elements(2, 2, 1, elems).expect("2x2 block")
    }

    fn block_coeffs(&self, side: Side, m: &GradedMatrix<F>) -> Result<[[F; 4]; 4]> {
        if (m.rows(), m.cols(), m.degree()) != (2, 2, 1) {
            return Err(Error::Shape("blocks are 2x2 linear matrices".into()));
        }
        let v: Vec<[F; 4]> = m
            .elements()
            .iter()
            .map(|e| {
                self.coefficients(side, e)
                    .ok_or_else(|| Error::Precondition(format!("entry outside side {side:?} in degree one")))
            })
            .collect::<Result<_>>()?;
        Ok(v.try_into().expect("four entries"))
    }

    /// The map `(side_1)^2 → (R_2)^2` in coordinates: columns indexed by
    /// (vector slot, generator), rows by (row, R_2 basis).
    fn restricted_map(&self, side: Side, m: &GradedMatrix<F>) -> Result<Matrix<F>> {
        let r = self.ring();
        let full = m.block_map(r, 1)?;
        let n1 = r.dim(1);
        let mut embed = Matrix::zeros(m.cols() * n1, m.cols() * 4);
        for j in 0..m.cols() {
            for (k, g) in self.gens(side).iter().enumerate() {
                for (t, c) in g.coords.iter().enumerate() {
                    embed[(j * n1 + t, j * 4 + k)] = c.clone();
                }
            }
        }
        Ok(full.mul(&embed))
    }
}

/// Injectivity of `Ã`, `Ãᵗ`, `B̃`, `B̃ᵗ`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct InjectivityFlags {
    pub a: bool,
    pub a_t: bool,
    pub b: bool,
    pub b_t: bool,
}

impl InjectivityFlags {
    pub fn all(&self) -> bool {
        self.a && self.a_t && self.b && self.b_t
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct PairBlock<F: Scalar> {
    pub index: i64,
    pub a: GradedMatrix<F>,
    pub b: GradedMatrix<F>,
    pub flags: InjectivityFlags,
}

impl<F: Scalar> PairBlock<F> {
    /// Checks both sides and computes the flags.
    pub fn new(sr: &SpecialRing<F>, index: i64, a: GradedMatrix<F>, b: GradedMatrix<F>) -> Result<Self> {
        let flags = InjectivityFlags {
            a: injectivity_check(sr, &a, Side::A, false)?,
            a_t: injectivity_check(sr, &a, Side::A, true)?,
            b: injectivity_check(sr, &b, Side::B, false)?,
            b_t: injectivity_check(sr, &b, Side::B, true)?,
        };
        Ok(PairBlock { index, a, b, flags })
    }

    pub fn differential(&self) -> GradedMatrix<F> {
        self.a.add(&self.b).expect("blocks have equal shape")
    }

    fn transposed(&self, sr: &SpecialRing<F>) -> Result<Self> {
        PairBlock::new(sr, -self.index, self.a.transpose(), self.b.transpose())
    }
}

/// The 8×8 coefficient matrix of `(side_1)^2 → (side_2)^2`. Rows follow the
/// products `g1g2, g2g3, g3g4, g4g1`, each for both matrix rows; columns
/// are the coefficients of the two vector entries.
pub fn m_matrix<F: Scalar>(sr: &SpecialRing<F>, block: &GradedMatrix<F>, side: Side) -> Result<Matrix<F>> {
    let c = sr.block_coeffs(side, block)?;
    let mut m = Matrix::zeros(8, 8);
    for t in 0..4 {
        let u = (t + 1) % 4;
        for i in 0..2 {
            for j in 0..2 {
                let x = &c[2 * i + j];
                m[(2 * t + i, 4 * j + t)] = x[u].clone();
                m[(2 * t + i, 4 * j + u)] = x[t].clone();
            }
        }
    }
    Ok(m)
}

/// Whether the block (or its transpose) is injective on `(side_1)^2`, decided
/// by the rank of the 8×8 coefficient matrix.
pub fn injectivity_check<F: Scalar>(
    sr: &SpecialRing<F>,
    block: &GradedMatrix<F>,
    side: Side,
    transpose: bool,
) -> Result<bool> {
    let m = if transpose { block.transpose() } else { block.clone() };
    Ok(m_matrix(sr, &m, side)?.rank() == 8)
}

/// The same test through the multiplication tables of the ring.
pub fn direct_injectivity<F: Scalar>(
    sr: &SpecialRing<F>,
    block: &GradedMatrix<F>,
    side: Side,
    transpose: bool,
) -> Result<bool> {
    let m = if transpose { block.transpose() } else { block.clone() };
    sr.block_coeffs(side, &m)?;
    Ok(sr.restricted_map(side, &m)?.rank() == 8)
}

fn solve_side<F: Scalar>(
    sr: &SpecialRing<F>,
    side: Side,
    m: &GradedMatrix<F>,
    rhs_scale: F,
    step: i64,
) -> Result<GradedMatrix<F>> {
    let lin = sr.restricted_map(side, m)?;
    let n2 = sr.ring().dim(2);
    let delta = sr.delta().scale(&rhs_scale);
    let mut cols = Vec::with_capacity(2);
    for j in 0..2 {
        let mut rhs = vec![F::zero(); 2 * n2];
        rhs[j * n2..(j + 1) * n2].clone_from_slice(&delta.coords);
        let sol = lin.solve(&rhs).ok_or_else(|| Error::Extension {
            step,
            reason: format!("δ e_{} is not in the image of side {side:?}", j + 1),
        })?;
        cols.push(sol);
    }
    // column j of the new block is the j-th solution
    let coeffs: [[F; 4]; 4] = std::array::from_fn(|e| {
        let (i, j) = (e / 2, e % 2);
        std::array::from_fn(|k| cols[j][4 * i + k].clone())
    });
    Ok(sr.block_from_coeffs(side, &coeffs))
}

fn require_injective<F: Scalar>(block: &PairBlock<F>, step: i64) -> Result<()> {
    if !block.flags.all() {
        return Err(Error::Extension { step, reason: format!("injectivity fails at block {}: {:?}", block.index, block.flags) });
    }
    Ok(())
}

/// The pair at `n + 1`, from `A c_j = δ e_j` and `B d_j = -δ e_j`.
pub fn extend_forward<F: Scalar>(sr: &SpecialRing<F>, block: &PairBlock<F>) -> Result<PairBlock<F>> {
    let step = block.index + 1;
    require_injective(block, step)?;
    let a = solve_side(sr, Side::A, &block.a, F::one(), step)?;
    let b = solve_side(sr, Side::B, &block.b, -F::one(), step)?;
    let next = PairBlock::new(sr, step, a, b)?;
    if !block.differential().mul(sr.ring(), &next.differential())?.is_zero() {
        return Err(Error::Extension { step, reason: "composition with the previous pair is not zero".into() });
    }
    Ok(next)
}

/// The pair at `n - 1`, by extending the transposes forward.
pub fn extend_backward<F: Scalar>(sr: &SpecialRing<F>, block: &PairBlock<F>) -> Result<PairBlock<F>> {
    let step = block.index - 1;
    require_injective(block, step)?;
    let t = block.transposed(sr)?;
    let fwd = extend_forward(sr, &t).map_err(|e| match e {
        Error::Extension { reason, .. } => Error::Extension { step, reason },
        e => e,
    })?;
    let prev = PairBlock::new(sr, step, fwd.a.transpose(), fwd.b.transpose())?;
    if !prev.differential().mul(sr.ring(), &block.differential())?.is_zero() {
        return Err(Error::Extension { step, reason: "composition with the next pair is not zero".into() });
    }
    Ok(prev)
}

/// The explicit periodic pair for the parity of `index`.
pub fn canonical_blocks<F: Scalar>(sr: &SpecialRing<F>, index: i64) -> Result<PairBlock<F>> {
    let f = |v: [i64; 4]| v.map(F::from_int);
    // coefficients over (x, y, x', y') in the cyclic generator order
    let entries = if index.rem_euclid(2) == 0 {
        [f([1, 1, 1, 1]), f([1, 1, -1, -1]), f([1, 1, -1, -1]), f([1, -1, 1, -1])]
    } else {
        [f([1, 1, 1, 1]), f([1, -1, -1, 1]), f([1, -1, -1, 1]), f([1, -1, 1, -1])]
    };
    PairBlock::new(sr, index, sr.block_from_coeffs(Side::A, &entries), sr.block_from_coeffs(Side::B, &entries))
}

/// Uniform coefficients for both blocks, resampled until all four
/// injectivity checks pass.
pub fn random_blocks<F: Scalar>(sr: &SpecialRing<F>, seed: u64, retries: usize) -> Result<PairBlock<F>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..retries {
        let mut draw = || -> [[F; 4]; 4] { std::array::from_fn(|_| std::array::from_fn(|_| F::sample(&mut rng))) };
        let (ca, cb) = (draw(), draw());
        let block = PairBlock::new(sr, 0, sr.block_from_coeffs(Side::A, &ca), sr.block_from_coeffs(Side::B, &cb))?;
        if block.flags.all() {
            return Ok(block);
        }
    }
    Err(Error::Degenerate(format!("no admissible blocks after {retries} samples")))
}

/// A window of differentials `A_n + B_n` together with the pairs.
#[derive(Clone, Debug)]
pub struct FactoryWindow<F: Scalar> {
    pub window: FreeComplexWindow<F>,
    pub blocks: Vec<PairBlock<F>>,
}

fn assemble<F: Scalar>(sr: &SpecialRing<F>, blocks: Vec<PairBlock<F>>) -> Result<FactoryWindow<F>> {
    let lo = blocks[0].index;
    let diffs = blocks.iter().map(PairBlock::differential).collect();
    // F_0 sits in degree zero
    let window = FreeComplexWindow::new(sr.ring().clone(), lo, diffs, lo - 1)?;
    Ok(FactoryWindow { window, blocks })
}

/// Extends `forward` steps up and `backward` steps down from `start`,
/// rechecking all four injectivity conditions at every new pair.
pub fn build_window<F: Scalar>(
    sr: &SpecialRing<F>,
    start: &PairBlock<F>,
    forward: usize,
    backward: usize,
) -> Result<FactoryWindow<F>> {
    require_injective(start, start.index)?;
    let mut down = Vec::with_capacity(backward);
    let mut cur = start.clone();
    for _ in 0..backward {
        cur = extend_backward(sr, &cur)?;
        require_injective(&cur, cur.index)?;
        down.push(cur.clone());
    }
    let mut blocks: Vec<PairBlock<F>> = down.into_iter().rev().collect();
    blocks.push(start.clone());
    let mut cur = start.clone();
    for _ in 0..forward {
        cur = extend_forward(sr, &cur)?;
        require_injective(&cur, cur.index)?;
        blocks.push(cur.clone());
    }
    assemble(sr, blocks)
}

/// The explicit blocks alternated over `-backward..=forward`, period two.
pub fn canonical_window<F: Scalar>(sr: &SpecialRing<F>, forward: usize, backward: usize) -> Result<FactoryWindow<F>> {
    let blocks = (-(backward as i64)..=forward as i64)
        .map(|n| canonical_blocks(sr, n))
        .collect::<Result<Vec<_>>>()?;
    let mut fw = assemble(sr, blocks)?;
    fw.window = fw.window.with_period(2);
    Ok(fw)
}

/// Certification of a factory window.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FactoryCertificate {
    pub flags: Vec<(i64, InjectivityFlags)>,
    /// `dim ker` of each differential on `(R_1)^2`.
    pub kernel_dims: Vec<(i64, usize)>,
    pub composes: bool,
    pub exact: bool,
    pub dual_exact: bool,
    pub complete: bool,
}

impl FactoryCertificate {
    pub fn certified(&self) -> bool {
        self.composes
            && self.exact
            && self.dual_exact
            && self.complete
            && self.flags.iter().all(|(_, f)| f.all())
            && self.kernel_dims.iter().all(|&(_, k)| k == 2)
    }
}

pub fn certify<F: Scalar>(sr: &SpecialRing<F>, fw: &FactoryWindow<F>) -> Result<FactoryCertificate> {
    let r = sr.ring();
    let report = graded_exactness(&fw.window, None)?;
    let kernel_dims = fw
        .blocks
        .iter()
        .map(|b| {
            let m = b.differential().block_map(r, 1)?;
            Ok((b.index, m.cols() - m.rank()))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(FactoryCertificate {
        flags: fw.blocks.iter().map(|b| (b.index, b.flags)).collect(),
        kernel_dims,
        composes: compose_check(&fw.window)?,
        exact: report.exact,
        dual_exact: report.dual_exact,
        complete: report.complete,
    })
}

/// Whether the cokernels at index 0 have different Fitting supports.
pub fn distinct_modules<F: Scalar>(w1: &FreeComplexWindow<F>, w2: &FreeComplexWindow<F>) -> Result<bool> {
    let s1 = fitting_support(w1.algebra(), &cokernel_presentation(w1, 0)?)?;
    let s2 = fitting_support(w2.algebra(), &cokernel_presentation(w2, 0)?)?;
    Ok(s1 != s2)
}
