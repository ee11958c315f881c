//! Structure of Artinian graded algebras with `m^3 = 0`: socle, the Yoshino
//! necessary conditions, weak Lefschetz checks, exact zero divisors and
//! decompositions of the maximal ideal into two ideals.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exactla::{Matrix, Scalar, Subspace};
use crate::grading::relations::{monomials, Exponents, Polynomial};
use crate::grading::{algebra_from_relations, Element, GradedAlgebra};
use crate::graph::Graph;

fn require_artinian<F: Scalar>(r: &GradedAlgebra<F>) -> Result<()> {
    if !r.is_artinian() {
        return Err(Error::Precondition("algebra is not Artinian within its degree bound".into()));
    }
    Ok(())
}

fn require_linear<F: Scalar>(r: &GradedAlgebra<F>, a: &Element<F>) -> Result<()> {
    if a.degree != 1 || a.coords.len() != r.dim(1) {
        return Err(Error::Precondition("expected a linear element of the algebra".into()));
    }
    Ok(())
}

/// `(0 : m)` degree by degree; entry `d` is a subspace of `R_d`.
pub fn socle<F: Scalar>(r: &GradedAlgebra<F>) -> Result<Vec<Subspace<F>>> {
    require_artinian(r)?;
    let mut out = Vec::with_capacity(r.degree_bound() + 1);
    for d in 0..=r.degree_bound() {
        if r.dim(d) == 0 {
            out.push(Subspace::zero(0));
            continue;
        }
        // the top nonzero degree sits below the bound, so d + 1 <= D here
        out.push(r.generator_map(d)?.kernel_basis());
    }
    Ok(out)
}

/// Dimension of the socle.
pub fn ring_type<F: Scalar>(r: &GradedAlgebra<F>) -> Result<usize> {
    Ok(socle(r)?.iter().map(Subspace::dim).sum())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum TrVerdict {
    /// Every checked necessary condition holds.
    AdmitsPossible,
    /// Some necessary condition fails: only free totally reflexive modules.
    NoNonFreeTr,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct YoshinoReport {
    pub socle_equals_m2: bool,
    pub dim_r1: usize,
    pub dim_r2: usize,
    pub type_r: usize,
    /// `dim R_1 = r + 1` and `dim R_2 = r`.
    pub dims_match: bool,
    pub quadratic_presentation: bool,
    pub verdict: TrVerdict,
}

/// Degree-2 relations among the degree-1 basis: kernel of `Sym^2(R_1) → R_2`.
pub fn quadratic_relations<F: Scalar>(r: &GradedAlgebra<F>) -> Result<Vec<Polynomial<F>>> {
    let m = r.dim(1);
    if r.degree_bound() < 2 {
        return Err(Error::Precondition("need degree bound at least 2".into()));
    }
    let monos = monomials(m, 2);
    let columns: Vec<Vec<F>> = monos
        .iter()
        .map(|e| {
            let idx: Vec<usize> = (0..m).flat_map(|i| std::iter::repeat_n(i, e[i] as usize)).collect();
            r.basis_product(1, idx[0], 1, idx[1])
        })
        .collect();
    let map = Matrix::from_columns(r.dim(2), &columns);
    Ok(map
        .kernel_basis()
        .basis()
        .iter()
        .map(|v| {
            let terms: Vec<(Exponents, F)> = monos.iter().cloned().zip(v.iter().cloned()).collect();
            Polynomial::new(m, terms)
        })
        .collect())
}

/// Whether the algebra is cut out by its quadratic relations, compared degree
/// by degree up to the bound.
pub fn has_quadratic_presentation<F: Scalar>(r: &GradedAlgebra<F>) -> Result<bool> {
    let rels = quadratic_relations(r)?;
    let q = algebra_from_relations(r.labels(1), &rels, r.degree_bound())?;
    Ok(q.hilbert() == r.hilbert())
}

pub fn yoshino_check<F: Scalar>(r: &GradedAlgebra<F>) -> Result<YoshinoReport> {
    require_artinian(r)?;
    if r.top_degree() > 2 {
        return Err(Error::Precondition("the maximal ideal cube must vanish".into()));
    }
    let soc = socle(r)?;
    let socle_equals_m2 = (1..=r.degree_bound()).all(|d| {
        if d == 1 {
            soc[d].is_zero()
        } else {
            soc[d].dim() == r.dim(d)
        }
    });
    let type_r: usize = soc.iter().map(Subspace::dim).sum();
    let (dim_r1, dim_r2) = (r.dim(1), r.dim(2));
    let dims_match = dim_r1 == type_r + 1 && dim_r2 == type_r;
    let quadratic_presentation = has_quadratic_presentation(r)?;
    let verdict = if socle_equals_m2 && dims_match && quadratic_presentation {
        TrVerdict::AdmitsPossible
    } else {
        TrVerdict::NoNonFreeTr
    };
    Ok(YoshinoReport { socle_equals_m2, dim_r1, dim_r2, type_r, dims_match, quadratic_presentation, verdict })
}

/// Surjectivity of `·l : R_1 → R_2`.
pub fn wlp_check<F: Scalar>(r: &GradedAlgebra<F>, l: &Element<F>) -> Result<bool> {
    require_linear(r, l)?;
    Ok(r.mul_map(l, 1)?.rank() == r.dim(2))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct WlpReport {
    pub trials: usize,
    pub surjective: usize,
    /// Some sampled form is surjective.
    pub holds: bool,
}

pub const DEFAULT_WLP_TRIALS: usize = 8;

pub fn random_linear<F: Scalar, R: rand::Rng>(r: &GradedAlgebra<F>, rng: &mut R) -> Element<F> {
    Element { degree: 1, coords: (0..r.dim(1)).map(|_| F::sample(rng)).collect() }
}

/// WLP for a general linear form, tested on `trials` seeded samples.
pub fn generic_wlp<F: Scalar>(r: &GradedAlgebra<F>, trials: usize, seed: u64) -> Result<WlpReport> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut surjective = 0;
    for _ in 0..trials {
        if wlp_check(r, &random_linear(r, &mut rng))? {
            surjective += 1;
        }
    }
    Ok(WlpReport { trials, surjective, holds: surjective > 0 })
}

/// The linear system for `l1 f1 + l2 f2 + l f = 0` in degree 2 of the
/// Stanley–Reisner ring. Unknowns are ordered `u_1..u_n, v_1..v_n, w_1..w_n`.
#[derive(Clone, Debug)]
pub struct KernelSystem<F: Scalar> {
    pub matrix: Matrix<F>,
    pub solutions: Subspace<F>,
    pub koszul: [Vec<F>; 3],
    /// A solution completing the Koszul ones when the solution space is 4-dimensional.
    pub f4: Option<Vec<F>>,
}

impl<F: Scalar> KernelSystem<F> {
    pub fn dim(&self) -> usize {
        self.solutions.dim()
    }

    /// The `f` part (`w` coordinates) of the fourth solution.
    pub fn f4_form(&self) -> Option<Vec<F>> {
        let n = self.matrix.cols() / 3;
        self.f4.as_ref().map(|v| v[2 * n..].to_vec())
    }
}

pub fn kernel_system<F: Scalar>(g: &Graph, l1: &[F], l2: &[F], l: &[F]) -> Result<KernelSystem<F>> {
    let n = g.n();
    if !g.is_connected() {
        return Err(Error::Precondition("graph is disconnected".into()));
    }
    if l1.len() != n || l2.len() != n || l.len() != n {
        return Err(Error::Dimension("one coefficient per vertex expected".into()));
    }
    let (alpha, beta, a) = (l1, l2, l);
    let mut rows = Vec::with_capacity(g.e() + n);
    for &(i, j) in g.edges() {
        let mut row = vec![F::zero(); 3 * n];
        row[i] = alpha[j].clone();
        row[j] = alpha[i].clone();
        row[n + i] = beta[j].clone();
        row[n + j] = beta[i].clone();
        row[2 * n + i] = a[j].clone();
        row[2 * n + j] = a[i].clone();
        rows.push(row);
    }
    for i in 0..n {
        let mut row = vec![F::zero(); 3 * n];
        row[i] = alpha[i].clone();
        row[n + i] = beta[i].clone();
        row[2 * n + i] = a[i].clone();
        rows.push(row);
    }
    let matrix = if rows.is_empty() { Matrix::zeros(0, 3 * n) } else { Matrix::from_rows(rows) };
    let solutions = matrix.kernel_basis();
    let neg = |v: &[F]| v.iter().map(|c| -c.clone()).collect::<Vec<F>>();
    let zero = vec![F::zero(); n];
    let koszul = [
        [neg(beta), alpha.to_vec(), zero.clone()].concat(),
        [neg(a), zero.clone(), alpha.to_vec()].concat(),
        [zero, neg(a), beta.to_vec()].concat(),
    ];
    let f4 = if solutions.dim() == 4 {
        let k = Subspace::from_vectors(3 * n, koszul.to_vec());
        solutions.basis().iter().map(|b| k.reduce(b)).find(|r| r.iter().any(|c| !c.is_zero())).map(normalise)
    } else {
        None
    };
    Ok(KernelSystem { matrix, solutions, koszul, f4 })
}

/// Scales so the first nonzero coordinate is 1.
pub fn normalise<F: Scalar>(mut v: Vec<F>) -> Vec<F> {
    if let Some(p) = v.iter().find(|c| !c.is_zero()).cloned() {
        let inv = p.inverse().expect("nonzero");
        for c in v.iter_mut() {
            *c *= inv.clone();
        }
    }
    v
}

/// A certified pair of exact zero divisors.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EzdPair<F> {
    pub a: Element<F>,
    pub b: Element<F>,
    pub certified: bool,
}

/// Length of the principal ideal `(a)`: `Σ_k rank(·a : R_k → R_{k+deg a})`.
pub fn principal_length<F: Scalar>(r: &GradedAlgebra<F>, a: &Element<F>) -> Result<usize> {
    let mut total = 0;
    for k in 0..=r.degree_bound() {
        if k + a.degree > r.degree_bound() {
            break;
        }
        total += r.mul_map(a, k)?.rank();
    }
    Ok(total)
}

/// `ab = 0` and `len((a)) + len((b)) = len(R)`.
pub fn verify_ezd<F: Scalar>(r: &GradedAlgebra<F>, a: &Element<F>, b: &Element<F>) -> Result<bool> {
    require_artinian(r)?;
    require_linear(r, a)?;
    require_linear(r, b)?;
    if !r.mul(a, b)?.is_zero() {
        return Ok(false);
    }
    Ok(principal_length(r, a)? + principal_length(r, b)? == r.total_dim())
}

/// How [`find_ezd`] looks for a pair.
#[derive(Clone, Debug)]
pub enum EzdStrategy<F: Scalar> {
    /// Sample `z` with one-dimensional `ker(·z)` and pair it with its sign flip.
    BipartiteCanonical { flip: Matrix<F>, trials: usize, seed: u64 },
    /// Sample `z` and pair it with the generator of `ker(·z)` when that is a line.
    Random { trials: usize, seed: u64 },
    /// Every line of `R_1` over a small prime field, at most `budget` of them.
    ExhaustiveLines { budget: usize },
}

#[derive(Clone, Debug)]
pub struct EzdSearch<F> {
    pub pair: Option<EzdPair<F>>,
    pub trials: usize,
    /// Every candidate line was examined.
    pub exhaustive: bool,
}

/// The only possible partner of `a`: the generator of `ker(·a : R_1 → R_2)`
/// when that kernel is a line.
fn partner<F: Scalar>(r: &GradedAlgebra<F>, a: &Element<F>) -> Result<Option<Element<F>>> {
    let ker = r.mul_map(a, 1)?.kernel_basis();
    Ok((ker.dim() == 1).then(|| Element { degree: 1, coords: ker.basis()[0].clone() }))
}

fn certify<F: Scalar>(r: &GradedAlgebra<F>, a: Element<F>, b: Element<F>) -> Result<Option<EzdPair<F>>> {
    Ok(verify_ezd(r, &a, &b)?.then_some(EzdPair { a, b, certified: true }))
}

pub fn find_ezd<F: Scalar>(r: &GradedAlgebra<F>, strategy: &EzdStrategy<F>) -> Result<EzdSearch<F>> {
    require_artinian(r)?;
    if r.top_degree() > 2 {
        return Err(Error::Precondition("the maximal ideal cube must vanish".into()));
    }
    let m = r.dim(1);
    if m == 0 {
        return Ok(EzdSearch { pair: None, trials: 0, exhaustive: true });
    }
    match strategy {
        EzdStrategy::BipartiteCanonical { flip, trials, seed } => {
            if flip.rows() != m || flip.cols() != m {
                return Err(Error::Shape("sign flip must act on R_1".into()));
            }
            let mut rng = ChaCha8Rng::seed_from_u64(*seed);
            for t in 0..*trials {
                let z = random_linear(r, &mut rng);
                if r.mul_map(&z, 1)?.kernel_basis().dim() != 1 {
                    continue;
                }
                let zp = Element { degree: 1, coords: flip.mul_vec(&z.coords) };
                if let Some(pair) = certify(r, z, zp)? {
                    return Ok(EzdSearch { pair: Some(pair), trials: t + 1, exhaustive: false });
                }
            }
            Ok(EzdSearch { pair: None, trials: *trials, exhaustive: false })
        }
        EzdStrategy::Random { trials, seed } => {
            let mut rng = ChaCha8Rng::seed_from_u64(*seed);
            for t in 0..*trials {
                let z = random_linear(r, &mut rng);
                if let Some(b) = partner(r, &z)? {
                    if let Some(pair) = certify(r, z, b)? {
                        return Ok(EzdSearch { pair: Some(pair), trials: t + 1, exhaustive: false });
                    }
                }
            }
            Ok(EzdSearch { pair: None, trials: *trials, exhaustive: false })
        }
        EzdStrategy::ExhaustiveLines { budget } => {
            let elems = F::elements()
                .ok_or_else(|| Error::Precondition("line enumeration needs a small prime field".into()))?;
            let mut count = 0;
            let mut all = true;
            for lead in 0..m {
                let free = m - lead - 1;
                let mut digits = vec![0usize; free];
                loop {
                    if count == *budget {
                        all = false;
                        break;
                    }
                    let mut coords = vec![F::zero(); m];
                    coords[lead] = F::one();
                    for (k, &dg) in digits.iter().enumerate() {
                        coords[lead + 1 + k] = elems[dg].clone();
                    }
                    count += 1;
                    let z = Element { degree: 1, coords };
                    if let Some(b) = partner(r, &z)? {
                        if let Some(pair) = certify(r, z, b)? {
                            return Ok(EzdSearch { pair: Some(pair), trials: count, exhaustive: false });
                        }
                    }
                    // odometer over the free coordinates
                    let mut k = 0;
                    while k < free {
                        digits[k] += 1;
                        if digits[k] < elems.len() {
                            break;
                        }
                        digits[k] = 0;
                        k += 1;
                    }
                    if k == free {
                        break;
                    }
                }
                if !all {
                    break;
                }
            }
            Ok(EzdSearch { pair: None, trials: count, exhaustive: all })
        }
    }
}

/// Graded pieces `I_1, …, I_D` of the ideal generated by linear elements
/// (index 0 holds the zero subspace of `R_0`).
pub fn ideal_pieces<F: Scalar>(r: &GradedAlgebra<F>, gens: &[Element<F>]) -> Result<Vec<Subspace<F>>> {
    for g in gens {
        require_linear(r, g)?;
    }
    let mut pieces = vec![Subspace::zero(1)];
    pieces.push(Subspace::from_vectors(r.dim(1), gens.iter().map(|g| g.coords.clone()).collect()));
    for d in 2..=r.degree_bound() {
        let mut vecs = Vec::new();
        for v in pieces[d - 1].basis() {
            let e = Element { degree: d - 1, coords: v.clone() };
            for x in r.generators() {
                vecs.push(r.mul(&x, &e)?.coords);
            }
        }
        pieces.push(Subspace::from_vectors(r.dim(d), vecs));
    }
    Ok(pieces)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum PairVerdict {
    /// `m = a ⊕ b` with both nonzero and at least three generators.
    NoNonFreeTr,
    /// `m = a + b` and `ab = 0`, but the ideals meet.
    Overlapping,
    NotADecomposition,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct IdealPairReport {
    pub dims_a: Vec<usize>,
    pub dims_b: Vec<usize>,
    pub intersection_dims: Vec<usize>,
    pub sum_is_maximal: bool,
    pub product_zero: bool,
    pub direct_sum: bool,
    /// Minimal number of generators of `m`.
    pub nu: usize,
    pub verdict: PairVerdict,
}

pub fn ideal_pair_analysis<F: Scalar>(
    r: &GradedAlgebra<F>,
    gens_a: &[Element<F>],
    gens_b: &[Element<F>],
) -> Result<IdealPairReport> {
    let pa = ideal_pieces(r, gens_a)?;
    let pb = ideal_pieces(r, gens_b)?;
    let mut sum_is_maximal = true;
    let mut intersection_dims = vec![0];
    for d in 1..=r.degree_bound() {
        if pa[d].sum(&pb[d])?.dim() != r.dim(d) {
            sum_is_maximal = false;
        }
        intersection_dims.push(pa[d].intersection(&pb[d])?.dim());
    }
    let mut product_zero = true;
    'outer: for a in gens_a {
        for b in gens_b {
            if !r.mul(a, b)?.is_zero() {
                product_zero = false;
                break 'outer;
            }
        }
    }
    let direct_sum = sum_is_maximal && intersection_dims.iter().all(|&d| d == 0);
    let nonzero = !pa[1].is_zero() && !pb[1].is_zero();
    let nu = r.dim(1);
    let verdict = if direct_sum && nonzero && nu >= 3 {
        PairVerdict::NoNonFreeTr
    } else if sum_is_maximal && product_zero && nonzero {
        PairVerdict::Overlapping
    } else {
        PairVerdict::NotADecomposition
    };
    Ok(IdealPairReport {
        dims_a: pa.iter().map(Subspace::dim).collect(),
        dims_b: pb.iter().map(Subspace::dim).collect(),
        intersection_dims,
        sum_is_maximal,
        product_zero,
        direct_sum,
        nu,
        verdict,
    })
}

/// Largest `dim R_1` for which all two-part splits of the basis are tried.
pub const PARTITION_SEARCH_LIMIT: usize = 12;

/// First split of the degree-1 basis into two parts generating a direct-sum
/// decomposition of `m`. `None` when no split works or `dim R_1` is too large.
pub fn partition_search<F: Scalar>(r: &GradedAlgebra<F>) -> Result<Option<(Vec<usize>, Vec<usize>)>> {
    let m = r.dim(1);
    if !(2..=PARTITION_SEARCH_LIMIT).contains(&m) {
        return Ok(None);
    }
    let gens = r.generators();
    // basis vector 0 always goes to the first part
    for mask in 0..(1u32 << (m - 1)) - 1 {
        let (mut a, mut b) = (vec![0], Vec::new());
        for i in 1..m {
            if mask >> (i - 1) & 1 == 1 {
                a.push(i);
            } else {
                b.push(i);
            }
        }
        let ga: Vec<Element<F>> = a.iter().map(|&i| gens[i].clone()).collect();
        let gb: Vec<Element<F>> = b.iter().map(|&i| gens[i].clone()).collect();
        if ideal_pair_analysis(r, &ga, &gb)?.verdict == PairVerdict::NoNonFreeTr {
            return Ok(Some((a, b)));
        }
    }
    Ok(None)
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::One;
    use crate::exactla::Fp;
    use crate::grading::{algebra_from_relation_strings, artinian_reduction, ReductionMode};
    use crate::graph::{four_cycle, special_graph};

    type F = Fp<1_073_741_789>;

    fn example_ring() -> GradedAlgebra<F> {
        algebra_from_relation_strings(&["x", "y"], &["x^2 - y^2", "x^2 - x*y", "x^3"], 3).unwrap()
    }

    fn c4() -> GradedAlgebra<F> {
        algebra_from_relation_strings(&["x", "y"], &["x^2", "y^2"], 3).unwrap()
    }

    #[test]
    fn example_ring_has_linear_socle() {
        let r = example_ring();
        let s = socle(&r).unwrap();
        assert_eq!(s[1].dim(), 1);
        // spanned by x - y
        assert!(s[1].contains(&[F::one(), -F::one()]));
        assert!(!s[1].contains(&[F::one(), F::one()]));
        let y = yoshino_check(&r).unwrap();
        assert!(!y.socle_equals_m2);
        assert_eq!(y.verdict, TrVerdict::NoNonFreeTr);
    }

    #[test]
    fn example_ring_wlp() {
        let r = example_ring();
        assert!(wlp_check(&r, &r.linear_form(&[2, 3])).unwrap());
        assert!(!wlp_check(&r, &r.linear_form(&[1, -1])).unwrap());
        assert!(!wlp_check(&r, &r.linear_form(&[5, -5])).unwrap());
    }

    #[test]
    fn square_zero_ring() {
        let r = algebra_from_relation_strings::<F>(&["a", "b", "c"], &["a^2", "b^2", "c^2", "a*b", "a*c", "b*c"], 3)
            .unwrap();
        let s = socle(&r).unwrap();
        assert_eq!(s[1].dim(), 3);
        assert_eq!(yoshino_check(&r).unwrap().verdict, TrVerdict::NoNonFreeTr);
    }

    #[test]
    fn special_ring_yoshino() {
        let red = artinian_reduction::<F>(&special_graph(), ReductionMode::CanonicalBipartite, 3).unwrap();
        let y = yoshino_check(red.ring()).unwrap();
        assert!(y.socle_equals_m2 && y.dims_match && y.quadratic_presentation);
        assert_eq!(y.type_r, 7);
        assert_eq!(y.verdict, TrVerdict::AdmitsPossible);
    }

    #[test]
    fn c4_ezd() {
        let r = c4();
        let x = r.linear_form(&[1, 0]);
        let y = r.linear_form(&[0, 1]);
        assert!(verify_ezd(&r, &x, &x).unwrap());
        assert!(!verify_ezd(&r, &x, &y).unwrap());
        let found = find_ezd(&r, &EzdStrategy::Random { trials: 20, seed: 1 }).unwrap();
        assert!(found.pair.unwrap().certified);
    }

    #[test]
    fn bipartite_canonical_search_on_four_cycle() {
        let red = artinian_reduction::<F>(&four_cycle(), ReductionMode::CanonicalBipartite, 3).unwrap();
        let flip = red.sign_flip().unwrap();
        let s = find_ezd(red.ring(), &EzdStrategy::BipartiteCanonical { flip, trials: 10, seed: 0 }).unwrap();
        let p = s.pair.unwrap();
        assert!(red.ring().mul(&p.a, &p.b).unwrap().is_zero());
        assert!(wlp_check(red.ring(), &p.a).unwrap());
    }

    #[test]
    fn exhaustive_lines_small_field() {
        type G = Fp<5>;
        let r = algebra_from_relation_strings::<G>(&["x", "y"], &["x^2", "y^2"], 3).unwrap();
        let s = find_ezd(&r, &EzdStrategy::ExhaustiveLines { budget: 100 }).unwrap();
        assert!(s.pair.is_some());
        let e = algebra_from_relation_strings::<G>(&["x", "y"], &["x^2 - y^2", "x^2 - x*y", "x^3"], 3).unwrap();
        let s = find_ezd(&e, &EzdStrategy::ExhaustiveLines { budget: 100 }).unwrap();
        assert!(s.pair.is_none() && s.exhaustive);
        assert_eq!(s.trials, 6);
    }

    #[test]
    fn kernel_system_on_four_cycle() {
        let g = four_cycle();
        let l1: Vec<F> = [1, 1, 0, 0].iter().map(|&c| F::from_int(c)).collect();
        let l2: Vec<F> = [0, 0, 1, 1].iter().map(|&c| F::from_int(c)).collect();
        let l: Vec<F> = [3, 7, 2, 9].iter().map(|&c| F::from_int(c)).collect();
        let ks = kernel_system(&g, &l1, &l2, &l).unwrap();
        for k in &ks.koszul {
            assert!(ks.solutions.contains(k));
        }
        assert_eq!(ks.dim(), 4);
        assert!(ks.f4.is_some());
    }

    #[test]
    fn special_ring_pair_analysis() {
        let red = artinian_reduction::<F>(&special_graph(), ReductionMode::CanonicalBipartite, 3).unwrap();
        let r = red.ring();
        let pick = |names: &[&str]| -> Vec<Element<F>> {
            names
                .iter()
                .map(|n| r.basis_element(1, r.labels(1).iter().position(|l| l == n).unwrap()))
                .collect()
        };
        let rep = ideal_pair_analysis(r, &pick(&["x1", "x2", "y1", "y2"]), &pick(&["x3", "x4", "y3", "y4"])).unwrap();
        assert!(rep.sum_is_maximal && rep.product_zero && !rep.direct_sum);
        assert_eq!(rep.intersection_dims, vec![0, 0, 1, 0]);
        assert_eq!(rep.verdict, PairVerdict::Overlapping);
        assert!(partition_search(r).unwrap().is_none());
    }
}
