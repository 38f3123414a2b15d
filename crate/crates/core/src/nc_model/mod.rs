//! Combinatorial resolution data for a function whose zero set is a simple
//! normal crossing divisor, plus the stratified census of its log spaces.
//!
//! A model lists the divisor components with their multiplicities and, for
//! every nonempty stratum `D°_J`, its class as a polynomial in `L`. Subsets
//! missing from `strata` are empty strata. In local mode the classes are those
//! of `D°_J` intersected with the fibre over the base point.

mod builtin;
mod chart;
pub(crate) mod io;

pub use builtin::{builtin_example, BUILTIN_NAMES};
pub use chart::{format_rational, parse_rational, Chart, GaussianRational, UnitPoly, UnitTerm};
pub use io::{load_model, save_model};

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use crate::motivic_ring::LefschetzPoly;

/// A set of component ids, kept sorted.
pub type Subset = BTreeSet<String>;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Mode {
    Global,
    Local,
}

impl Mode {
    pub fn as_str(self) -> &'static str {
        match self {
            Mode::Global => "global",
            Mode::Local => "local",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Component {
    pub id: String,
    pub multiplicity: u64,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Stratum {
    pub components: Vec<String>,
    pub class: LefschetzPoly,
}

impl Stratum {
    pub fn subset(&self) -> Subset {
        self.components.iter().cloned().collect()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NCModel {
    pub ambient_dim: usize,
    pub mode: Mode,
    pub components: Vec<Component>,
    pub strata: Vec<Stratum>,
    pub charts: Vec<Chart>,
}

/// One broken invariant, with a locator into the model document.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Violation {
    pub locator: String,
    pub message: String,
}

impl Violation {
    pub fn new(locator: impl Into<String>, message: impl Into<String>) -> Self {
        Self {
            locator: locator.into(),
            message: message.into(),
        }
    }
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: {}", self.locator, self.message)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ModelError {
    #[error("parse error at line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("invalid model: {}", join_violations(.0))]
    Invalid(Vec<Violation>),
    #[error("unknown component id `{0}`")]
    UnknownComponent(String),
    #[error("component subset must be nonempty")]
    EmptySubset,
    #[error("no stratum for subset {{{}}}", .0.join(","))]
    UnknownStratum(Vec<String>),
    #[error("unknown builtin example `{0}`")]
    UnknownExample(String),
}

fn join_violations(v: &[Violation]) -> String {
    v.iter()
        .map(ToString::to_string)
        .collect::<Vec<_>>()
        .join("; ")
}

impl NCModel {
    pub fn component(&self, id: &str) -> Option<&Component> {
        self.components.iter().find(|c| c.id == id)
    }

    pub fn multiplicity(&self, id: &str) -> Result<u64, ModelError> {
        self.component(id)
            .map(|c| c.multiplicity)
            .ok_or_else(|| ModelError::UnknownComponent(id.to_string()))
    }

    /// Class of the stratum indexed by `subset`; zero when the stratum is absent.
    pub fn stratum_class(&self, subset: &Subset) -> LefschetzPoly {
        self.find_stratum(subset)
            .map(|s| s.class.clone())
            .unwrap_or_default()
    }

    pub fn find_stratum(&self, subset: &Subset) -> Option<&Stratum> {
        self.strata.iter().find(|s| &s.subset() == subset)
    }

    /// Parses a list of ids into a subset, checking that each exists.
    pub fn subset_of<S: AsRef<str>>(&self, ids: &[S]) -> Result<Subset, ModelError> {
        let mut out = Subset::new();
        for id in ids {
            let id = id.as_ref();
            if self.component(id).is_none() {
                return Err(ModelError::UnknownComponent(id.to_string()));
            }
            out.insert(id.to_string());
        }
        if out.is_empty() {
            return Err(ModelError::EmptySubset);
        }
        Ok(out)
    }

    /// Present strata sorted by (size, ids), skipping zero classes.
    pub fn sorted_strata(&self) -> Vec<(Subset, &LefschetzPoly)> {
        let mut out: Vec<_> = self
            .strata
            .iter()
            .filter(|s| !s.class.is_zero())
            .map(|s| (s.subset(), &s.class))
            .collect();
        out.sort_by(|a, b| {
            a.0.len()
                .cmp(&b.0.len())
                .then_with(|| a.0.iter().cmp(b.0.iter()))
        });
        out
    }

    pub fn validate(&self) -> Vec<Violation> {
        validate(self)
    }

    pub fn ensure_valid(&self) -> Result<(), ModelError> {
        let v = validate(self);
        if v.is_empty() {
            Ok(())
        } else {
            Err(ModelError::Invalid(v))
        }
    }
}

pub fn validate(model: &NCModel) -> Vec<Violation> {
    let mut out = Vec::new();
    let n = model.ambient_dim;
    if n == 0 {
        out.push(Violation::new("ambient_dim", "must be positive"));
    }

    let mut seen = BTreeSet::new();
    for (i, c) in model.components.iter().enumerate() {
        if !seen.insert(c.id.as_str()) {
            out.push(Violation::new(
                format!("components[{i}]"),
                format!("duplicate component id `{}`", c.id),
            ));
        }
        if c.multiplicity == 0 {
            out.push(Violation::new(
                format!("components[{i}].multiplicity"),
                format!("multiplicity of `{}` must be >= 1", c.id),
            ));
        }
    }

    let mut subsets: BTreeMap<Subset, usize> = BTreeMap::new();
    for (j, s) in model.strata.iter().enumerate() {
        let loc = format!("strata[{j}]");
        if s.components.is_empty() {
            out.push(Violation::new(&loc, "stratum subset is empty"));
        }
        let subset = s.subset();
        if subset.len() != s.components.len() {
            out.push(Violation::new(&loc, "stratum lists a component twice"));
        }
        for id in &s.components {
            if !seen.contains(id.as_str()) {
                out.push(Violation::new(&loc, format!("unknown component id `{id}`")));
            }
        }
        if subset.len() > n {
            out.push(Violation::new(
                &loc,
                format!("{} components exceed ambient dimension {n}", subset.len()),
            ));
        }
        if let Some(prev) = subsets.insert(subset.clone(), j) {
            out.push(Violation::new(
                &loc,
                format!("same subset as strata[{prev}]"),
            ));
        }
        if let Some(deg) = s.class.degree() {
            let bound = n.saturating_sub(subset.len());
            if deg > bound || subset.len() > n {
                out.push(Violation::new(
                    format!("{loc}.class"),
                    format!("degree {deg} exceeds dimension bound {bound}"),
                ));
            }
        }
    }

    for (k, chart) in model.charts.iter().enumerate() {
        let loc = format!("charts[{k}]");
        if chart.dim == 0 {
            out.push(Violation::new(&loc, "chart dimension must be positive"));
        }
        let mut ids = BTreeSet::new();
        for (&idx, id) in &chart.divisor_coords {
            if idx >= chart.dim {
                out.push(Violation::new(
                    format!("{loc}.divisor_coords"),
                    format!("coordinate {idx} out of range for dimension {}", chart.dim),
                ));
            }
            if !seen.contains(id.as_str()) {
                out.push(Violation::new(
                    format!("{loc}.divisor_coords"),
                    format!("unknown component id `{id}`"),
                ));
            }
            if !ids.insert(id.as_str()) {
                out.push(Violation::new(
                    format!("{loc}.divisor_coords"),
                    format!("component `{id}` assigned to two coordinates"),
                ));
            }
        }
        if chart.unit.terms.is_empty() {
            out.push(Violation::new(
                format!("{loc}.unit"),
                "unit polynomial is zero",
            ));
        }
        for (t, term) in chart.unit.terms.iter().enumerate() {
            if term.exponents.len() != chart.dim {
                out.push(Violation::new(
                    format!("{loc}.unit[{t}].exponents"),
                    format!(
                        "expected {} exponents, found {}",
                        chart.dim,
                        term.exponents.len()
                    ),
                ));
            }
        }
    }
    out
}

/// Which part of the complete log space a fibre piece belongs to.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum PieceTag {
    /// every radius infinite: the Kato-Nakayama circle bundle
    Top,
    /// every radius finite: the algebraic torus bundle
    Mot,
    Mixed,
}

impl PieceTag {
    pub fn as_str(self) -> &'static str {
        match self {
            PieceTag::Top => "top",
            PieceTag::Mot => "mot",
            PieceTag::Mixed => "mixed",
        }
    }

    pub fn from_finite(finite: usize, total: usize) -> Self {
        if finite == total {
            PieceTag::Mot
        } else if finite == 0 {
            PieceTag::Top
        } else {
            PieceTag::Mixed
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CensusPiece {
    /// components with finite radius (factor `C*`); the rest contribute `S^1`
    pub finite: Vec<String>,
    pub tag: PieceTag,
    pub label: String,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Census {
    pub subset: Vec<String>,
    pub pieces: Vec<CensusPiece>,
}

impl Census {
    pub fn count(&self, tag: PieceTag) -> usize {
        self.pieces.iter().filter(|p| p.tag == tag).count()
    }
}

/// Decomposes the fibre `((0, inf] x S^1)^J` of the complete log space over a
/// point of `D°_J` into its `2^|J|` products of `C*` and `S^1` factors.
///
/// Ordering: the topological piece, then the motivic piece, then the mixed
/// pieces by increasing bitmask of finite-radius components.
pub fn census(model: &NCModel, subset: &[&str]) -> Result<Census, ModelError> {
    let subset: Vec<String> = model.subset_of(subset)?.into_iter().collect();
    let k = subset.len();
    let full: u64 = if k >= 64 { u64::MAX } else { (1u64 << k) - 1 };
    let mut masks: Vec<u64> = vec![0];
    if k > 0 {
        masks.push(full);
    }
    masks.extend((1..full).filter(|m| *m != full));
    let pieces = masks
        .into_iter()
        .map(|mask| {
            let finite: Vec<String> = subset
                .iter()
                .enumerate()
                .filter(|(i, _)| mask >> i & 1 == 1)
                .map(|(_, id)| id.clone())
                .collect();
            let label = (0..k)
                .map(|i| if mask >> i & 1 == 1 { "C*" } else { "S^1" })
                .collect::<Vec<_>>()
                .join("×");
            CensusPiece {
                tag: PieceTag::from_finite(finite.len(), k),
                finite,
                label,
            }
        })
        .collect();
    Ok(Census { subset, pieces })
}

/// All present strata `K ⊇ J`, in (size, ids) order.
pub fn closure_strata(model: &NCModel, subset: &[&str]) -> Result<Vec<Subset>, ModelError> {
    let j = model.subset_of(subset)?;
    Ok(model
        .sorted_strata()
        .into_iter()
        .map(|(s, _)| s)
        .filter(|s| j.is_subset(s))
        .collect())
}
