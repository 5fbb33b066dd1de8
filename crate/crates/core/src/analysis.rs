//! Computed code parameters and per-claim verdicts.
//!
//! The distance of the quantum code is identified with the minimum distance of
//! the classical code ker(H^orth). Two independent routes compute it: exact
//! enumeration of the kernel via a nullspace basis, and a bounded search over
//! all low-weight vectors. Claim checking never presumes a stated property;
//! self-orthogonality, dimension and distance are measured and adjudicated.

use crate::binmat::{BinMatrix, BinVector, SelfOrthReport};
use crate::builder::{
    build_code, paper_params, BuildError, CodeFamily, CssCode, DistanceClaim, PaperParams,
    DEFAULT_SIZE_CAP,
};
use std::collections::BTreeMap;
use std::fmt;
use thiserror::Error;

/// Default cap on the kernel dimension for exact enumeration.
pub const DEFAULT_DIM_CAP: usize = 26;
/// Default vector budget for the bounded low-weight search.
pub const DEFAULT_WEIGHT_BUDGET: u64 = 100_000_000;
/// Sentinel distance for a trivial kernel (no nonzero codeword).
pub const DISTANCE_INFINITE: u64 = u64::MAX;

#[derive(Debug, Error, PartialEq, Eq, Clone)]
pub enum AnalysisError {
    #[error("CapExceeded: kernel dimension {dim} exceeds cap {cap}")]
    CapExceeded { dim: usize, cap: usize },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DistanceKind {
    Exact,
    LowerBoundVerified,
    Inconclusive,
}

impl fmt::Display for DistanceKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            DistanceKind::Exact => write!(f, "exact"),
            DistanceKind::LowerBoundVerified => write!(f, "lower-bound-verified"),
            DistanceKind::Inconclusive => write!(f, "inconclusive"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DistanceResult {
    pub kind: DistanceKind,
    /// Minimum weight if exact (DISTANCE_INFINITE for a trivial kernel);
    /// verified floor w+1 if lower-bound-verified.
    pub value: u64,
    /// Lexicographically smallest minimum-weight codeword, when exact.
    pub witness: Option<BinVector>,
    /// Vectors examined.
    pub work: u64,
}

impl DistanceResult {
    pub fn value_display(&self) -> String {
        if self.value == DISTANCE_INFINITE {
            "inf".to_string()
        } else {
            self.value.to_string()
        }
    }
}

/// rank(H^orth) and the CSS dimension k = n - 2 rank.
pub fn computed_dimension(code: &CssCode) -> (usize, i64) {
    let rank = code.h_orth.rank();
    (rank, code.n() as i64 - 2 * rank as i64)
}

/// Exact minimum distance by enumerating the kernel through a nullspace basis,
/// walking the 2^dim - 1 nonzero combinations in Gray-code order.
pub fn exact_distance(h: &BinMatrix, dim_cap: usize) -> Result<DistanceResult, AnalysisError> {
    let basis = h.nullspace_basis();
    let dim = basis.len();
    if dim == 0 {
        return Ok(DistanceResult {
            kind: DistanceKind::Exact,
            value: DISTANCE_INFINITE,
            witness: None,
            work: 0,
        });
    }
    if dim > dim_cap {
        return Err(AnalysisError::CapExceeded { dim, cap: dim_cap });
    }
    let mut current = BinVector::zeros(h.cols());
    let mut best_weight = usize::MAX;
    let mut best: Option<BinVector> = None;
    let total: u64 = 1u64 << dim;
    for g in 1..total {
        let flip = g.trailing_zeros() as usize;
        current.xor_assign(&basis[flip]);
        let w = current.weight();
        if w < best_weight
            || (w == best_weight && best.as_ref().is_some_and(|b| current.lex_less(b)))
        {
            best_weight = w;
            best = Some(current.clone());
        }
    }
    Ok(DistanceResult {
        kind: DistanceKind::Exact,
        value: best_weight as u64,
        witness: best,
        work: total - 1,
    })
}

fn binomial(n: u64, k: u64) -> u128 {
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc * (n - i) as u128 / (i + 1) as u128;
        if acc > u128::from(u64::MAX) {
            return u128::from(u64::MAX);
        }
    }
    acc
}

/// Enumerate all vectors of weight <= w. If none lies in the kernel the floor
/// w+1 is verified; if one does, the smallest such weight is the exact
/// distance. A search larger than the budget is reported inconclusive.
pub fn verify_distance_floor(h: &BinMatrix, w: usize, budget: u64) -> DistanceResult {
    let cols = h.cols() as u64;
    let total: u128 = (1..=w as u64).map(|j| binomial(cols, j)).sum();
    if total > budget as u128 {
        return DistanceResult {
            kind: DistanceKind::Inconclusive,
            value: 0,
            witness: None,
            work: 0,
        };
    }
    // per-column syndromes
    let col_syndromes: Vec<BinVector> = (0..h.cols()).map(|c| h.col(c)).collect();
    let mut work = 0u64;
    for weight in 1..=w {
        let mut found: Vec<Vec<usize>> = Vec::new();
        let mut support = Vec::with_capacity(weight);
        let mut syndrome = BinVector::zeros(h.rows());
        #[allow(clippy::too_many_arguments)]
        fn descend(
            cols: usize,
            weight: usize,
            start: usize,
            support: &mut Vec<usize>,
            syndrome: &mut BinVector,
            col_syndromes: &[BinVector],
            found: &mut Vec<Vec<usize>>,
            work: &mut u64,
        ) {
            if support.len() == weight {
                *work += 1;
                if syndrome.is_zero() {
                    found.push(support.clone());
                }
                return;
            }
            let remaining = weight - support.len();
            for c in start..=cols.saturating_sub(remaining) {
                support.push(c);
                syndrome.xor_assign(&col_syndromes[c]);
                descend(
                    cols,
                    weight,
                    c + 1,
                    support,
                    syndrome,
                    col_syndromes,
                    found,
                    work,
                );
                syndrome.xor_assign(&col_syndromes[c]);
                support.pop();
            }
        }
        descend(
            h.cols(),
            weight,
            0,
            &mut support,
            &mut syndrome,
            &col_syndromes,
            &mut found,
            &mut work,
        );
        if !found.is_empty() {
            let mut best: Option<BinVector> = None;
            for supp in found {
                let mut v = BinVector::zeros(h.cols());
                for c in supp {
                    v.set(c, true);
                }
                if best.as_ref().is_none_or(|b| v.lex_less(b)) {
                    best = Some(v);
                }
            }
            return DistanceResult {
                kind: DistanceKind::Exact,
                value: weight as u64,
                witness: best,
                work,
            };
        }
    }
    DistanceResult {
        kind: DistanceKind::LowerBoundVerified,
        value: w as u64 + 1,
        witness: None,
        work,
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum Verdict {
    Confirmed,
    Refuted,
    Unverified,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Verdict::Confirmed => write!(f, "CONFIRMED"),
            Verdict::Refuted => write!(f, "REFUTED"),
            Verdict::Unverified => write!(f, "UNVERIFIED"),
        }
    }
}

/// Claimed parameters vs. measured rank, dimension and distance.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClaimReport {
    pub family: CodeFamily,
    pub m: usize,
    pub q: u32,
    pub case_label: String,
    pub recipe: String,
    pub n: usize,
    pub gen_rows: usize,
    pub paper: PaperParams,
    pub computed_rank: usize,
    pub computed_k: i64,
    pub self_orth: SelfOrthReport,
    pub distance: DistanceResult,
    pub verdicts: BTreeMap<&'static str, Verdict>,
}

impl ClaimReport {
    pub fn family_name(&self) -> &'static str {
        match self.family {
            CodeFamily::Punctured => "h1",
            CodeFamily::Full => "h2",
            CodeFamily::ParallelClass(_) => "parallel",
        }
    }

    pub fn class_index(&self) -> Option<usize> {
        match self.family {
            CodeFamily::ParallelClass(i) => Some(i),
            _ => None,
        }
    }

    pub fn all_confirmed(&self) -> bool {
        self.verdicts.values().all(|v| *v == Verdict::Confirmed)
    }

    pub fn any_refuted(&self) -> bool {
        self.verdicts.values().any(|v| *v == Verdict::Refuted)
    }

    pub fn any_unverified(&self) -> bool {
        self.verdicts.values().any(|v| *v == Verdict::Unverified)
    }
}

/// Definition-style regularity assessment of the core matrix plus the overlap
/// histogram of the assembled check matrix.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RegularityReport {
    pub core: crate::binmat::RegularityMetrics,
    /// Constant column weight, when the core is column-regular.
    pub rho: Option<usize>,
    /// Constant row weight, when the core is row-regular.
    pub lambda: Option<usize>,
    pub regular: bool,
    pub h_orth_overlaps: BTreeMap<usize, u64>,
}

pub fn regularity_report(code: &CssCode) -> RegularityReport {
    let core = code.core.regularity_metrics();
    let rho = constant(&core.col_weights);
    let lambda = constant(&core.row_weights);
    let regular = rho.is_some() && lambda.is_some();
    let h_orth_overlaps = if code.h_orth.rows() >= 2 {
        code.h_orth.overlap_histogram().unwrap_or_default()
    } else {
        BTreeMap::new()
    };
    RegularityReport {
        core,
        rho,
        lambda,
        regular,
        h_orth_overlaps,
    }
}

fn constant(xs: &[usize]) -> Option<usize> {
    let first = *xs.first()?;
    xs.iter().all(|&x| x == first).then_some(first)
}

#[derive(Debug, Clone, Copy)]
pub struct CheckOptions {
    pub dim_cap: usize,
    pub weight_budget: u64,
}

impl Default for CheckOptions {
    fn default() -> Self {
        CheckOptions {
            dim_cap: DEFAULT_DIM_CAP,
            weight_budget: DEFAULT_WEIGHT_BUDGET,
        }
    }
}

fn distance_verdict(claim: &PaperParams, d: &DistanceResult) -> Verdict {
    match (claim.d_kind, d.kind) {
        (DistanceClaim::Exact, DistanceKind::Exact) => {
            if d.value == claim.d_bound {
                Verdict::Confirmed
            } else {
                Verdict::Refuted
            }
        }
        // no codeword of weight <= w exists, so the true distance is >= w+1
        (DistanceClaim::Exact, DistanceKind::LowerBoundVerified) => {
            if d.value > claim.d_bound {
                Verdict::Refuted
            } else {
                Verdict::Unverified
            }
        }
        (DistanceClaim::LowerBound, DistanceKind::Exact) => {
            if d.value >= claim.d_bound {
                Verdict::Confirmed
            } else {
                Verdict::Refuted
            }
        }
        (DistanceClaim::LowerBound, DistanceKind::LowerBoundVerified) => {
            if d.value >= claim.d_bound {
                Verdict::Confirmed
            } else {
                Verdict::Unverified
            }
        }
        (_, DistanceKind::Inconclusive) => Verdict::Unverified,
    }
}

/// Build (family, m, q), measure everything, and adjudicate the claims.
pub fn claim_check(
    family: CodeFamily,
    m: usize,
    q: u32,
    size_cap: u64,
    opts: CheckOptions,
) -> Result<ClaimReport, BuildError> {
    let code = build_code(family, m, q, size_cap)?;
    let paper = paper_params(family, m, q)?;
    let self_orth = code.h_orth.self_orth_check();
    let (computed_rank, computed_k) = computed_dimension(&code);
    let dim = code.n() - computed_rank;
    let distance = if dim <= opts.dim_cap {
        exact_distance(&code.h_orth, opts.dim_cap).expect("dimension within cap")
    } else {
        let w = match paper.d_kind {
            DistanceClaim::Exact => paper.d_bound as usize,
            DistanceClaim::LowerBound => paper.d_bound as usize - 1,
        };
        verify_distance_floor(&code.h_orth, w, opts.weight_budget)
    };

    let mut verdicts = BTreeMap::new();
    verdicts.insert(
        "self-orthogonality",
        if self_orth.ok {
            Verdict::Confirmed
        } else {
            Verdict::Refuted
        },
    );
    // dimension is meaningful only for a valid stabilizer
    verdicts.insert(
        "dimension",
        if self_orth.ok && computed_k == paper.k {
            Verdict::Confirmed
        } else {
            Verdict::Refuted
        },
    );
    verdicts.insert("distance", distance_verdict(&paper, &distance));

    Ok(ClaimReport {
        family,
        m,
        q,
        case_label: code.recipe.case_label.to_string(),
        recipe: code.recipe.describe(),
        n: code.n(),
        gen_rows: code.gen_rows(),
        paper,
        computed_rank,
        computed_k,
        self_orth,
        distance,
        verdicts,
    })
}

/// Family selector used by sweeps and the CLI.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FamilyKind {
    H1,
    H2,
    Parallel,
}

impl fmt::Display for FamilyKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FamilyKind::H1 => write!(f, "h1"),
            FamilyKind::H2 => write!(f, "h2"),
            FamilyKind::Parallel => write!(f, "parallel"),
        }
    }
}

impl std::str::FromStr for FamilyKind {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "h1" => Ok(FamilyKind::H1),
            "h2" => Ok(FamilyKind::H2),
            "parallel" => Ok(FamilyKind::Parallel),
            other => Err(format!(
                "unknown family {other:?} (expected h1|h2|parallel)"
            )),
        }
    }
}

#[derive(Debug, Clone)]
pub struct SweepItem {
    pub family: FamilyKind,
    pub m: usize,
    pub q: u32,
    pub class_index: Option<usize>,
    pub outcome: Result<ClaimReport, String>,
}

#[derive(Debug, Clone)]
pub struct SweepReport {
    pub items: Vec<SweepItem>,
    /// For each (m, q) swept with the parallel family: do all class codes
    /// agree on (n, rank, k, distance)?
    pub parallel_consistency: Vec<(usize, u32, bool)>,
}

/// Run claim-check over families x cases. Per-item errors are recorded; the
/// sweep never aborts.
pub fn sweep(
    families: &[FamilyKind],
    cases: &[(usize, u32)],
    size_cap: u64,
    opts: CheckOptions,
) -> SweepReport {
    let mut items = Vec::new();
    let mut parallel_consistency = Vec::new();
    for &(m, q) in cases {
        for &fam in families {
            match fam {
                FamilyKind::H1 | FamilyKind::H2 => {
                    let family = if fam == FamilyKind::H1 {
                        CodeFamily::Punctured
                    } else {
                        CodeFamily::Full
                    };
                    let outcome =
                        claim_check(family, m, q, size_cap, opts).map_err(|e| e.to_string());
                    items.push(SweepItem {
                        family: fam,
                        m,
                        q,
                        class_index: None,
                        outcome,
                    });
                }
                FamilyKind::Parallel => {
                    let classes = match (q as u64).checked_pow(m as u32) {
                        Some(size) if size <= size_cap && q >= 2 => {
                            ((size - 1) / (q as u64 - 1)) as usize
                        }
                        _ => 0,
                    };
                    if classes == 0 {
                        items.push(SweepItem {
                            family: fam,
                            m,
                            q,
                            class_index: None,
                            outcome: Err(BuildError::UnsupportedGeometry {
                                size: (q as u64).checked_pow(m as u32).unwrap_or(u64::MAX),
                                cap: size_cap,
                            }
                            .to_string()),
                        });
                        continue;
                    }
                    let mut signatures = Vec::new();
                    for i in 0..classes {
                        let outcome =
                            claim_check(CodeFamily::ParallelClass(i), m, q, size_cap, opts)
                                .map_err(|e| e.to_string());
                        if let Ok(r) = &outcome {
                            signatures.push((r.n, r.computed_rank, r.computed_k, r.distance.value));
                        }
                        items.push(SweepItem {
                            family: fam,
                            m,
                            q,
                            class_index: Some(i),
                            outcome,
                        });
                    }
                    let consistent =
                        signatures.len() == classes && signatures.windows(2).all(|w| w[0] == w[1]);
                    parallel_consistency.push((m, q, consistent));
                }
            }
        }
    }
    SweepReport {
        items,
        parallel_consistency,
    }
}

/// Convenience wrapper with the default size cap and options.
pub fn claim_check_default(
    family: CodeFamily,
    m: usize,
    q: u32,
) -> Result<ClaimReport, BuildError> {
    claim_check(family, m, q, DEFAULT_SIZE_CAP, CheckOptions::default())
}
