//! Construction of the three geometry code families: core incidence matrices,
//! case-dependent orthogonalization recipes, assembled check matrices and CSS
//! stabilizers, and the closed-form parameter claims that go with them.
//!
//! Construction never asserts self-orthogonality; that is measured afterwards
//! by the analysis layer.

use crate::binmat::BinMatrix;
use crate::field::FieldError;
use crate::geometry::{GeometryError, GeometrySpec};
use serde::Serialize;
use std::fmt;
use thiserror::Error;

/// Default cap on the point count q^m.
pub const DEFAULT_SIZE_CAP: u64 = 4096;

#[derive(Debug, Error, PartialEq, Eq, Clone)]
pub enum BuildError {
    #[error("NonpositiveDimension: claimed k = {k} for {family} m={m} q={q}")]
    NonpositiveDimension {
        family: String,
        m: usize,
        q: u32,
        k: i64,
    },
    #[error("InvalidClassIndex: class {index} out of range [0, {classes})")]
    InvalidClassIndex { index: usize, classes: usize },
    #[error("UnsupportedGeometry: q^m = {size} exceeds size cap {cap}")]
    UnsupportedGeometry { size: u64, cap: u64 },
    #[error(transparent)]
    Field(#[from] FieldError),
    #[error(transparent)]
    Geometry(#[from] GeometryError),
}

impl BuildError {
    /// Stable short name used in CLI error reporting.
    pub fn name(&self) -> &'static str {
        match self {
            BuildError::NonpositiveDimension { .. } => "NonpositiveDimension",
            BuildError::InvalidClassIndex { .. } => "InvalidClassIndex",
            BuildError::UnsupportedGeometry { .. } => "UnsupportedGeometry",
            BuildError::Field(_) => "FieldError",
            BuildError::Geometry(_) => "GeometryError",
        }
    }
}

/// The three code families of the construction.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CodeFamily {
    /// Nonzero points x origin-avoiding lines.
    Punctured,
    /// All points x all lines.
    Full,
    /// Lines of one parallel class x all points.
    ParallelClass(usize),
}

impl fmt::Display for CodeFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CodeFamily::Punctured => write!(f, "h1"),
            CodeFamily::Full => write!(f, "h2"),
            CodeFamily::ParallelClass(i) => write!(f, "parallel[{i}]"),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Block {
    Core,
    OnesColumn,
    Identity,
}

impl fmt::Display for Block {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Block::Core => write!(f, "core"),
            Block::OnesColumn => write!(f, "ones"),
            Block::Identity => write!(f, "id"),
        }
    }
}

/// Block layout of the orthogonalized check matrix; always begins with Core.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OrthRecipe {
    pub case_label: &'static str,
    pub blocks: Vec<Block>,
}

impl OrthRecipe {
    pub fn describe(&self) -> String {
        self.blocks
            .iter()
            .map(|b| b.to_string())
            .collect::<Vec<_>>()
            .join("|")
    }
}

/// Whether a claimed distance is exact or only a lower bound.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum DistanceClaim {
    Exact,
    LowerBound,
}

impl fmt::Display for DistanceClaim {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            DistanceClaim::Exact => write!(f, "exact"),
            DistanceClaim::LowerBound => write!(f, "lower"),
        }
    }
}

/// The [[n, k, d]] parameters claimed by the closed-form case tables.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PaperParams {
    pub n: u64,
    pub k: i64,
    pub d_bound: u64,
    pub d_kind: DistanceClaim,
}

/// A built family instance: core matrix, recipe, and assembled check matrix.
#[derive(Debug, Clone)]
pub struct CssCode {
    pub family: CodeFamily,
    pub m: usize,
    pub q: u32,
    pub core: BinMatrix,
    pub recipe: OrthRecipe,
    pub h_orth: BinMatrix,
}

impl CssCode {
    /// Code length = number of columns of the check matrix.
    pub fn n(&self) -> usize {
        self.h_orth.cols()
    }

    /// Number of stabilizer generators per Pauli type.
    pub fn gen_rows(&self) -> usize {
        self.h_orth.rows()
    }
}

/// B_t = (q^t - 1)/(q - 1) = 1 + q + ... + q^{t-1}.
pub fn b_coefficient(t: u32, q: u64) -> u64 {
    (0..t).map(|i| q.pow(i)).sum()
}

fn geometry(m: usize, q: u32, size_cap: u64) -> Result<GeometrySpec, BuildError> {
    let size = (q as u64).checked_pow(m as u32).unwrap_or(u64::MAX);
    if size > size_cap {
        return Err(BuildError::UnsupportedGeometry {
            size,
            cap: size_cap,
        });
    }
    Ok(GeometrySpec::for_order(m, q)?)
}

/// Pick the orthogonalization block layout for a family and geometry.
pub fn select_recipe(family: CodeFamily, m: usize, q: u32) -> Result<OrthRecipe, BuildError> {
    use Block::*;
    let q_even = q.is_multiple_of(2);
    let recipe = match family {
        CodeFamily::Punctured => {
            if !q_even && m == 2 {
                OrthRecipe {
                    case_label: "h1/q-odd-m-2",
                    blocks: vec![Core, OnesColumn, Identity, Identity],
                }
            } else if !q_even && m.is_multiple_of(2) {
                OrthRecipe {
                    case_label: "h1/q-odd-m-even",
                    blocks: vec![Core, OnesColumn],
                }
            } else {
                // q even, or q and m both odd
                OrthRecipe {
                    case_label: "h1/even-row-weight",
                    blocks: vec![Core, OnesColumn, Identity],
                }
            }
        }
        CodeFamily::Full => {
            if q_even && m == 2 {
                OrthRecipe {
                    case_label: "h2/q-even-m-2",
                    blocks: vec![Core, OnesColumn, Identity, Identity],
                }
            } else if !q_even && m.is_multiple_of(2) {
                OrthRecipe {
                    case_label: "h2/q-odd-m-even",
                    blocks: vec![Core, OnesColumn, Identity],
                }
            } else {
                // q even with m >= 3, or q and m both odd
                OrthRecipe {
                    case_label: "h2/odd-row-weight",
                    blocks: vec![Core, OnesColumn],
                }
            }
        }
        CodeFamily::ParallelClass(_) => {
            if q == 2 {
                OrthRecipe {
                    case_label: "parallel/q-2",
                    blocks: vec![Core, Identity, Identity],
                }
            } else if !q_even {
                OrthRecipe {
                    case_label: "parallel/q-odd",
                    blocks: vec![Core, Identity],
                }
            } else {
                // q even with q >= 4
                OrthRecipe {
                    case_label: "parallel/q-even-ge4",
                    blocks: vec![Core],
                }
            }
        }
    };
    // reject parameter combinations whose claimed dimension is nonpositive
    let params = paper_params_for_case(family, m, q, recipe.case_label);
    if params.k <= 0 {
        return Err(BuildError::NonpositiveDimension {
            family: family.to_string(),
            m,
            q,
            k: params.k,
        });
    }
    Ok(recipe)
}

fn paper_params_for_case(family: CodeFamily, m: usize, q: u32, case: &str) -> PaperParams {
    let qq = q as u64;
    let qm = qq.pow(m as u32);
    let qm1 = qq.pow(m as u32 - 1);
    let b_m = b_coefficient(m as u32, qq);
    let b_m1 = b_coefficient(m as u32 - 1, qq);
    match (family, case) {
        (CodeFamily::Punctured, "h1/q-odd-m-even") => PaperParams {
            n: (qm - 1) * b_m1 + 1,
            k: (qm as i64 - 1) * (b_m1 as i64 - 2) + 1,
            d_bound: qq + 1,
            d_kind: DistanceClaim::LowerBound,
        },
        (CodeFamily::Punctured, "h1/even-row-weight") => PaperParams {
            n: (qm - 1) * (b_m1 + 1) + 1,
            k: (qm as i64 - 1) * (b_m1 as i64 - 1) + 1,
            d_bound: qq + 1,
            d_kind: DistanceClaim::LowerBound,
        },
        (CodeFamily::Punctured, "h1/q-odd-m-2") => PaperParams {
            n: 3 * qq * qq - 2,
            k: (qq * qq) as i64,
            d_bound: 2,
            d_kind: DistanceClaim::Exact,
        },
        (CodeFamily::Full, "h2/odd-row-weight") => PaperParams {
            n: qm1 * b_m + 1,
            k: (qm1 * b_m) as i64 - 2 * qm as i64 + 1,
            d_bound: qq + 1,
            d_kind: DistanceClaim::LowerBound,
        },
        (CodeFamily::Full, "h2/q-odd-m-even") => PaperParams {
            n: qm1 * b_m + qm + 1,
            k: (qm1 * b_m) as i64 - qm as i64 + 1,
            d_bound: qq + 1,
            d_kind: DistanceClaim::LowerBound,
        },
        (CodeFamily::Full, "h2/q-even-m-2") => PaperParams {
            n: 3 * qq * qq + qq + 1,
            k: (qq * qq + qq + 1) as i64,
            d_bound: 2,
            d_kind: DistanceClaim::Exact,
        },
        (CodeFamily::ParallelClass(_), "parallel/q-even-ge4") => PaperParams {
            n: qm,
            k: qm as i64 - 2 * qm1 as i64,
            d_bound: 2,
            d_kind: DistanceClaim::Exact,
        },
        (CodeFamily::ParallelClass(_), "parallel/q-odd") => PaperParams {
            n: qm + qm1,
            k: qm as i64 - qm1 as i64,
            d_bound: 2,
            d_kind: DistanceClaim::Exact,
        },
        (CodeFamily::ParallelClass(_), "parallel/q-2") => PaperParams {
            n: 2 * qm,
            k: qm as i64,
            d_bound: 2,
            d_kind: DistanceClaim::Exact,
        },
        _ => unreachable!("case label {case} does not belong to family {family}"),
    }
}

/// The claimed closed-form parameters for (family, m, q).
pub fn paper_params(family: CodeFamily, m: usize, q: u32) -> Result<PaperParams, BuildError> {
    let recipe = select_recipe(family, m, q)?;
    Ok(paper_params_for_case(family, m, q, recipe.case_label))
}

/// Build the core matrix of a family, oriented so rows index stabilizer
/// generators: points x lines for the point-indexed families, lines x points
/// for a parallel class.
pub fn build_core(
    family: CodeFamily,
    m: usize,
    q: u32,
    size_cap: u64,
) -> Result<BinMatrix, BuildError> {
    let g = geometry(m, q, size_cap)?;
    match family {
        CodeFamily::Punctured => {
            let lines: Vec<_> = g
                .lines()
                .into_iter()
                .filter(|l| !l.through_origin())
                .collect();
            let rows = g.n_points() - 1;
            let mut core = BinMatrix::zeros(rows, lines.len());
            for (c, line) in lines.iter().enumerate() {
                for &p in &line.points {
                    core.set(p - 1, c, true);
                }
            }
            Ok(core)
        }
        CodeFamily::Full => {
            let lines = g.lines();
            let mut core = BinMatrix::zeros(g.n_points(), lines.len());
            for (c, line) in lines.iter().enumerate() {
                for &p in &line.points {
                    core.set(p, c, true);
                }
            }
            Ok(core)
        }
        CodeFamily::ParallelClass(i) => {
            let classes = g.parallel_classes();
            if i >= classes.len() {
                return Err(BuildError::InvalidClassIndex {
                    index: i,
                    classes: classes.len(),
                });
            }
            let class = &classes[i];
            let mut core = BinMatrix::zeros(class.lines.len(), g.n_points());
            for (r, line) in class.lines.iter().enumerate() {
                for &p in &line.points {
                    core.set(r, p, true);
                }
            }
            Ok(core)
        }
    }
}

/// Build a full family instance: core + recipe -> assembled check matrix.
pub fn build_code(
    family: CodeFamily,
    m: usize,
    q: u32,
    size_cap: u64,
) -> Result<CssCode, BuildError> {
    let recipe = select_recipe(family, m, q)?;
    let core = build_core(family, m, q, size_cap)?;
    let rows = core.rows();
    let ones = BinMatrix::ones_column(rows);
    let id = BinMatrix::identity(rows);
    let blocks: Vec<&BinMatrix> = recipe
        .blocks
        .iter()
        .map(|b| match b {
            Block::Core => &core,
            Block::OnesColumn => &ones,
            Block::Identity => &id,
        })
        .collect();
    let h_orth = BinMatrix::hstack(&blocks).expect("blocks share the core row count");
    Ok(CssCode {
        family,
        m,
        q,
        core,
        recipe,
        h_orth,
    })
}

/// The (2r) x (2n) block-diagonal stabilizer diag(H, H): rows 0..r are the
/// X-type generators, rows r..2r the Z-type generators.
pub fn assemble_stabilizer(code: &CssCode) -> BinMatrix {
    BinMatrix::block_diag(&code.h_orth, &code.h_orth)
}
