//! Report objects and their text rendering.

use std::fmt::{self, Display, Formatter};

use serde::Serialize;
use totref_core::complexes::{ExactnessEntry, ExactnessReport, Indecomposability, NoEzdEvidence, Periodicity};
use totref_core::factory::FactoryCertificate;
use totref_core::structure::{IdealPairReport, WlpReport, YoshinoReport};
use totref_core::ConditionReport;

#[derive(Clone, Debug, Serialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum Witness {
    Ezd { a: String, b: String },
    Factory { evidence: NoEzdEvidence, window: VerifyReport },
}

#[derive(Clone, Debug, Serialize)]
#[serde(tag = "verdict", rename_all = "kebab-case")]
pub enum Verdict {
    NoNonFreeTr { reasons: Vec<String> },
    Admits { witness: Box<Witness> },
    Inconclusive { reason: String },
}

impl Verdict {
    pub fn is_inconclusive(&self) -> bool {
        matches!(self, Verdict::Inconclusive { .. })
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct HilbertReport {
    pub mode: String,
    pub computed: Vec<usize>,
    pub expected: Vec<usize>,
    pub matches: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct KernelReport {
    pub form: String,
    pub dim: usize,
    pub koszul_bound_holds: bool,
    pub wlp_for_form: bool,
    /// `dim = 4` exactly when the same form has the weak Lefschetz property.
    pub consistent: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct SplitReport {
    pub a: Vec<String>,
    pub b: Vec<String>,
    pub analysis: IdealPairReport,
}

#[derive(Clone, Debug, Serialize)]
pub struct EzdReport {
    pub strategy: String,
    pub a: Option<String>,
    pub b: Option<String>,
    pub trials: usize,
    pub exhaustive: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct AnalyzeReport {
    pub field: String,
    pub conditions: ConditionReport,
    pub hilbert: HilbertReport,
    pub yoshino: YoshinoReport,
    pub wlp: WlpReport,
    pub kernel_system: Option<KernelReport>,
    pub split: Option<SplitReport>,
    pub ezd: EzdReport,
    pub no_ezd_certificate: Option<NoEzdEvidence>,
    pub verdict: Verdict,
}

#[derive(Clone, Debug, Serialize)]
pub struct VerifyReport {
    pub lo: i64,
    pub hi: i64,
    pub betti: Vec<usize>,
    pub composes: bool,
    pub exact: bool,
    pub dual_exact: bool,
    pub max_degree: usize,
    pub complete: bool,
    pub minimal: bool,
    pub periodicity: Option<Periodicity>,
    pub failures: Vec<ExactnessEntry>,
    pub dual_failures: Vec<ExactnessEntry>,
}

impl VerifyReport {
    pub fn new(
        (lo, hi): (i64, i64),
        betti: Vec<usize>,
        composes: bool,
        minimal: bool,
        periodicity: Option<Periodicity>,
        ex: ExactnessReport,
    ) -> Self {
        VerifyReport {
            lo,
            hi,
            betti,
            composes,
            exact: ex.exact,
            dual_exact: ex.dual_exact,
            max_degree: ex.max_degree,
            complete: ex.complete,
            minimal,
            periodicity,
            failures: ex.entries.into_iter().filter(|e| !e.exact).collect(),
            dual_failures: ex.dual_entries.into_iter().filter(|e| !e.exact).collect(),
        }
    }

    pub fn passed(&self) -> bool {
        self.composes && self.exact && self.dual_exact && self.minimal && self.periodicity.is_none_or(|p| p.verified)
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct BuildReport {
    pub field: String,
    pub mode: String,
    pub witness: Option<String>,
    pub verification: Option<VerifyReport>,
    pub factory: Option<FactoryCertificate>,
    pub indecomposability: Option<Indecomposability>,
    pub reason: Option<String>,
}

#[derive(Clone, Debug, Serialize)]
pub struct LiftStepReport {
    pub from_stage: usize,
    pub to_stage: usize,
    pub x: String,
    pub verification: VerifyReport,
}

#[derive(Clone, Debug, Serialize)]
pub struct LiftReport {
    pub field: String,
    pub steps: Vec<LiftStepReport>,
    pub passed: bool,
}

fn yes(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

impl Display for Verdict {
    fn fmt(&self, f: &mut Formatter<'_>) -> fmt::Result {
        match self {
            Verdict::NoNonFreeTr { reasons } => write!(f, "no non-free totally reflexive modules ({})", reasons.join("; ")),
            Verdict::Admits { witness } => match witness.as_ref() {
                Witness::Ezd { a, b } => write!(f, "admits non-free totally reflexive modules (exact zero divisors {a} / {b})"),
                Witness::Factory { evidence, window } => write!(
                    f,
                    "admits non-free totally reflexive modules (rank-two factory window {}..{}, certified: {}; no exact zero divisors: {evidence:?})",
                    window.lo,
                    window.hi,
                    yes(window.passed())
                ),
            },
            Verdict::Inconclusive { reason } => write!(f, "inconclusive ({reason})"),
        }
    }
}

impl Display for VerifyReport {
    fn fmt(&self, f: &mut Formatter<'_>) -> fmt::Result {
        writeln!(f, "  indices {}..{}, betti {:?}", self.lo, self.hi, self.betti)?;
        writeln!(f, "  composes to zero: {}", yes(self.composes))?;
        writeln!(
            f,
            "  exact: {}, dual exact: {} (degrees 0..={}{})",
            yes(self.exact),
            yes(self.dual_exact),
            self.max_degree,
            if self.complete { ", complete" } else { "" }
        )?;
        writeln!(f, "  minimal: {}", yes(self.minimal))?;
        if let Some(p) = self.periodicity {
            writeln!(f, "  period {}: {}", p.period, if p.verified { "verified" } else { "NOT verified" })?;
        }
        for e in self.failures.iter().chain(&self.dual_failures).take(8) {
            writeln!(f, "  failure at index {} degree {}: kernel {} vs image {}", e.index, e.degree, e.kernel_dim, e.image_rank)?;
        }
        write!(f, "  result: {}", if self.passed() { "PASS" } else { "FAIL" })
    }
}

impl Display for AnalyzeReport {
    fn fmt(&self, f: &mut Formatter<'_>) -> fmt::Result {
        let c = &self.conditions;
        writeln!(f, "field {}", self.field)?;
        writeln!(f, "graph: n = {}, e = {}, bipartite: {}, tree: {}", c.n, c.e, yes(c.bipartite), yes(c.tree))?;
        writeln!(
            f,
            "necessary conditions: e = 2n-4: {}, triangle-free: {}, leaf-free: {}",
            yes(c.edge_count_ok),
            yes(c.triangle_free),
            yes(c.leaf_free)
        )?;
        match &c.build_order {
            Some(o) => writeln!(f, "build order: {}", o.join(", "))?,
            None => writeln!(f, "build order: none")?,
        }
        if let Some((x, y)) = &c.disconnecting_pair {
            writeln!(f, "disconnecting pair: ({x}, {y})")?;
        }
        let h = &self.hilbert;
        writeln!(f, "reduction ({}): Hilbert {:?}, expected {:?}: {}", h.mode, h.computed, h.expected, yes(h.matches))?;
        let y = &self.yoshino;
        writeln!(
            f,
            "socle = m^2: {}, type {}, dims match: {}, quadratic: {}",
            yes(y.socle_equals_m2),
            y.type_r,
            yes(y.dims_match),
            yes(y.quadratic_presentation)
        )?;
        writeln!(f, "weak Lefschetz: {} of {} forms surjective", self.wlp.surjective, self.wlp.trials)?;
        if let Some(k) = &self.kernel_system {
            writeln!(f, "kernel system for {}: dim {}, consistent with WLP: {}", k.form, k.dim, yes(k.consistent))?;
        }
        if let Some(s) = &self.split {
            writeln!(f, "direct-sum split: ({}) + ({})", s.a.join(", "), s.b.join(", "))?;
        }
        match (&self.ezd.a, &self.ezd.b) {
            (Some(a), Some(b)) => writeln!(f, "exact zero divisors: {a} / {b}")?,
            _ => writeln!(
                f,
                "exact zero divisors: none found ({} {} trials{})",
                self.ezd.strategy,
                self.ezd.trials,
                if self.ezd.exhaustive { ", exhaustive" } else { "" }
            )?,
        }
        write!(f, "verdict: {}", self.verdict)
    }
}

impl Display for BuildReport {
    fn fmt(&self, f: &mut Formatter<'_>) -> fmt::Result {
        writeln!(f, "field {}, mode {}", self.field, self.mode)?;
        if let Some(w) = &self.witness {
            writeln!(f, "witness: {w}")?;
        }
        if let Some(c) = &self.factory {
            writeln!(f, "injectivity at every pair: {}", yes(c.flags.iter().all(|(_, fl)| fl.all())))?;
            writeln!(f, "degree-one kernels: {:?}", c.kernel_dims.iter().map(|k| k.1).collect::<Vec<_>>())?;
        }
        if let Some(i) = &self.indecomposability {
            writeln!(f, "cokernel at index 0: {i:?}")?;
        }
        if let Some(r) = &self.reason {
            writeln!(f, "no window: {r}")?;
        }
        match &self.verification {
            Some(v) => write!(f, "verification:\n{v}"),
            None => write!(f, "verification: skipped"),
        }
    }
}

impl Display for LiftReport {
    fn fmt(&self, f: &mut Formatter<'_>) -> fmt::Result {
        writeln!(f, "field {}", self.field)?;
        for s in &self.steps {
            writeln!(f, "lift stage {} -> {} along {}:\n{}", s.from_stage, s.to_stage, s.x, s.verification)?;
        }
        write!(f, "result: {}", if self.passed { "PASS" } else { "FAIL" })
    }
}
