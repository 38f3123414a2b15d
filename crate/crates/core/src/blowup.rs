//! Blowing up a smooth center `C ⊆ D_K` in normal crossings with `D`, at the
//! level of resolution data, and checking that the Milnor-fibre realizations
//! do not change.
//!
//! With `c = codim C`, `k = |K|` and `m = c - k`, the exceptional divisor `E`
//! over a point of `C` is `P^(c-1)` in coordinates split as `m` directions
//! along `D_K` and one direction normal to each `D_k`. Over `C ∩ D°_{K∪R}`
//! the stratum `{E} ∪ Q ∪ R` (`Q ⊆ K`) has fibre
//! `{[v] : v_q = 0 for q in Q, v_k != 0 for k in K \ Q}`. The order of
//! vanishing of `f` along `E` is `N_E = sum_{k in K} N_k`.

use std::collections::BTreeSet;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::milnor::{acampo_zeta, keyed_class, milnor_fibre_euler, naive_absolute_class};
use crate::motivic_ring::{
    keyed_combine, zeta_equal, KeyedClass, KeyedOp, LefschetzPoly, ZetaFactorization,
};
use crate::nc_model::io::{class_from_json, class_to_json, parse_error, JsonInt};
use crate::nc_model::{Component, Mode, ModelError, NCModel, Stratum, Subset, Violation};

/// Class of `C ∩ D°_{K∪R}` for one `R ⊆ L`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CenterStratum {
    pub r: Vec<String>,
    pub class: LefschetzPoly,
}

/// Combinatorial description of a blow-up center.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CenterSpec {
    /// components containing the center
    pub k: Vec<String>,
    /// components meeting the center transversally
    pub l: Vec<String>,
    pub codim: usize,
    pub center_strata: Vec<CenterStratum>,
    pub new_component_id: String,
}

impl CenterSpec {
    /// A center with one nonempty stratum at `R = ∅`.
    pub fn single(k: &[&str], codim: usize, class: LefschetzPoly, new_id: &str) -> Self {
        Self {
            k: k.iter().map(|s| s.to_string()).collect(),
            l: Vec::new(),
            codim,
            center_strata: vec![CenterStratum {
                r: Vec::new(),
                class,
            }],
            new_component_id: new_id.to_string(),
        }
    }

    /// A single point lying on exactly the components `k`.
    pub fn point(k: &[&str], codim: usize, new_id: &str) -> Self {
        Self::single(k, codim, LefschetzPoly::one(), new_id)
    }

    fn k_set(&self) -> Subset {
        self.k.iter().cloned().collect()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum BlowupError {
    #[error(transparent)]
    Model(#[from] ModelError),
    #[error("invalid center: {}", .0.iter().map(ToString::to_string).collect::<Vec<_>>().join("; "))]
    InvalidCenter(Vec<Violation>),
    #[error("center stratum over {{{}}} lies outside the tracked fibre (stratum absent in local model)", .0.join(","))]
    OutsideTrackedLocus(Vec<String>),
    #[error(
        "exceptional fibre parameters out of range: c={c}, k={k}, q={q} (need 1 <= k <= c, q <= k)"
    )]
    ParamRange { c: usize, k: usize, q: usize },
}

/// Class of the part of `P^(c-1)` where a fixed `q` of the `k` normal
/// coordinates vanish and the other `k - q` do not:
/// `L^m (L-1)^(k-q-1)` for `q < k`, `[P^(m-1)]` for `q = k`.
pub fn exceptional_fibre_strata(
    c: usize,
    k: usize,
    q: usize,
) -> Result<LefschetzPoly, BlowupError> {
    if k == 0 || k > c || q > k {
        return Err(BlowupError::ParamRange { c, k, q });
    }
    let m = c - k;
    Ok(if q < k {
        LefschetzPoly::monomial(1, m) * LefschetzPoly::punctured_line().pow(k - q - 1)
    } else {
        LefschetzPoly::projective_space(m)
    })
}

/// All subsets of `items` (sorted input), ordered by size then lexicographically.
fn subsets_of(items: &[String]) -> Vec<Vec<String>> {
    let n = items.len();
    let mut out: Vec<Vec<String>> = (0u64..1 << n)
        .map(|mask| {
            items
                .iter()
                .enumerate()
                .filter(|(i, _)| mask >> i & 1 == 1)
                .map(|(_, s)| s.clone())
                .collect()
        })
        .collect();
    out.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
    out
}

/// Checks the center against the model. Local-mode centers over absent
/// strata are reported through [`BlowupError::OutsideTrackedLocus`].
pub fn validate_center(model: &NCModel, center: &CenterSpec) -> Result<(), BlowupError> {
    let mut v = Vec::new();
    let n = model.ambient_dim;
    let known = |id: &str| model.component(id).is_some();
    if center.k.is_empty() {
        v.push(Violation::new("K", "must be nonempty"));
    }
    let k_set: BTreeSet<&str> = center.k.iter().map(String::as_str).collect();
    let l_set: BTreeSet<&str> = center.l.iter().map(String::as_str).collect();
    if k_set.len() != center.k.len() || l_set.len() != center.l.len() {
        v.push(Violation::new("K/L", "repeated component id"));
    }
    for id in center.k.iter().chain(&center.l) {
        if !known(id) {
            v.push(Violation::new(
                "K/L",
                format!("unknown component id `{id}`"),
            ));
        }
    }
    if let Some(id) = k_set.intersection(&l_set).next() {
        v.push(Violation::new("K/L", format!("`{id}` is in both K and L")));
    }
    if center.codim < center.k.len() || center.codim == 0 {
        v.push(Violation::new(
            "codim",
            format!(
                "codimension {} is below |K| = {}",
                center.codim,
                center.k.len()
            ),
        ));
    }
    if center.codim > n {
        v.push(Violation::new(
            "codim",
            format!("codimension {} exceeds ambient dimension {n}", center.codim),
        ));
    }
    if center.new_component_id.is_empty() || known(&center.new_component_id) {
        v.push(Violation::new(
            "new_component_id",
            format!("`{}` is empty or already used", center.new_component_id),
        ));
    }
    let mut seen_r = BTreeSet::new();
    let mut outside = None;
    for (i, cs) in center.center_strata.iter().enumerate() {
        let loc = format!("center_strata[{i}]");
        let r: BTreeSet<&str> = cs.r.iter().map(String::as_str).collect();
        if r.len() != cs.r.len() {
            v.push(Violation::new(&loc, "R lists a component twice"));
        }
        if let Some(bad) = r.difference(&l_set).next() {
            v.push(Violation::new(&loc, format!("`{bad}` is not in L")));
        }
        if !seen_r.insert(r.clone()) {
            v.push(Violation::new(&loc, "repeated R"));
        }
        let Some(deg) = cs.class.degree() else {
            continue;
        };
        let dim = n.saturating_sub(center.codim + r.len());
        if deg > dim {
            v.push(Violation::new(
                format!("{loc}.class"),
                format!("degree {deg} exceeds dim(C ∩ D_R) = {dim}"),
            ));
        }
        let ambient: Subset = k_set.union(&r).map(|s| s.to_string()).collect();
        match model.stratum_class(&ambient).degree() {
            None if model.mode == Mode::Local => {
                outside.get_or_insert(ambient.into_iter().collect::<Vec<_>>());
            }
            None => v.push(Violation::new(
                &loc,
                "center meets a stratum that is empty in the model",
            )),
            Some(amb) if deg > amb => v.push(Violation::new(
                format!("{loc}.class"),
                format!("degree {deg} exceeds degree {amb} of the ambient stratum"),
            )),
            Some(_) => {}
        }
    }
    if !v.is_empty() {
        return Err(BlowupError::InvalidCenter(v));
    }
    if let Some(ids) = outside {
        return Err(BlowupError::OutsideTrackedLocus(ids));
    }
    Ok(())
}

/// Resolution data after blowing up `center`.
///
/// Charts are dropped: they describe neighbourhoods in the old model and are
/// not transported.
pub fn apply_blowup(model: &NCModel, center: &CenterSpec) -> Result<NCModel, BlowupError> {
    model.ensure_valid()?;
    validate_center(model, center)?;

    let k_set = center.k_set();
    let k_sorted: Vec<String> = k_set.iter().cloned().collect();
    let c = center.codim;
    let k = k_sorted.len();
    let n_e: u64 = k_sorted
        .iter()
        .map(|id| model.multiplicity(id))
        .sum::<Result<u64, _>>()?;

    let center_class = |j: &Subset| -> LefschetzPoly {
        if !k_set.is_subset(j) {
            return LefschetzPoly::zero();
        }
        let r: BTreeSet<&String> = j.difference(&k_set).collect();
        center
            .center_strata
            .iter()
            .find(|cs| cs.r.iter().collect::<BTreeSet<_>>() == r)
            .map(|cs| cs.class.clone())
            .unwrap_or_default()
    };

    let mut strata: Vec<Stratum> = model
        .strata
        .iter()
        .filter_map(|s| {
            let class = &s.class - &center_class(&s.subset());
            (!class.is_zero()).then(|| Stratum {
                components: s.components.clone(),
                class,
            })
        })
        .collect();

    for cs in &center.center_strata {
        if cs.class.is_zero() {
            continue;
        }
        let mut r = cs.r.clone();
        r.sort();
        for q in subsets_of(&k_sorted) {
            let class = &cs.class * &exceptional_fibre_strata(c, k, q.len())?;
            if class.is_zero() {
                continue;
            }
            let mut components = vec![center.new_component_id.clone()];
            components.extend(q);
            components.extend(r.iter().cloned());
            strata.push(Stratum { components, class });
        }
    }

    let mut components = model.components.clone();
    components.push(Component {
        id: center.new_component_id.clone(),
        multiplicity: n_e,
    });
    let out = NCModel {
        ambient_dim: model.ambient_dim,
        mode: model.mode,
        components,
        strata,
        charts: Vec::new(),
    };
    debug_assert!(out.validate().is_empty(), "{:?}", out.validate());
    Ok(out)
}

/// Stratum classes that cannot be classes of nonempty varieties: a negative
/// leading coefficient means a negative count of top-dimensional pieces.
pub fn suspicious_classes(model: &NCModel) -> Vec<Violation> {
    model
        .strata
        .iter()
        .enumerate()
        .filter(|(_, s)| s.class.leading_coeff().is_some_and(|c| c.is_negative()))
        .map(|(j, s)| {
            Violation::new(
                format!("strata[{j}].class"),
                format!(
                    "class {} of {{{}}} has negative leading coefficient",
                    s.class,
                    s.components.join(",")
                ),
            )
        })
        .collect()
}

/// Realizations of the Milnor fibre that must survive a blow-up, plus the
/// keyed class that need not.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Realizations {
    pub zeta: ZetaFactorization,
    pub euler: BigInt,
    pub naive_class: LefschetzPoly,
    pub keyed: KeyedClass,
}

impl Realizations {
    pub fn of(model: &NCModel) -> Result<Self, ModelError> {
        Ok(Self {
            zeta: acampo_zeta(model)?,
            euler: milnor_fibre_euler(model)?,
            naive_class: naive_absolute_class(model)?,
            keyed: keyed_class(model)?,
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InvarianceReport {
    pub before: Realizations,
    pub after: Realizations,
    pub zeta_equal: bool,
    pub euler_equal: bool,
    pub naive_equal: bool,
    /// keyed class after minus before; informational
    pub keyed_delta: KeyedClass,
    pub warnings: Vec<Violation>,
    pub blown_up: NCModel,
}

impl InvarianceReport {
    pub fn all_equal(&self) -> bool {
        self.zeta_equal && self.euler_equal && self.naive_equal
    }

    pub fn compare(before: &NCModel, after: NCModel) -> Result<Self, BlowupError> {
        let b = Realizations::of(before)?;
        let a = Realizations::of(&after)?;
        Ok(Self {
            zeta_equal: zeta_equal(&b.zeta, &a.zeta),
            euler_equal: b.euler == a.euler,
            naive_equal: b.naive_class == a.naive_class,
            keyed_delta: keyed_combine(&a.keyed, &b.keyed, KeyedOp::Sub),
            warnings: suspicious_classes(&after),
            before: b,
            after: a,
            blown_up: after,
        })
    }
}

impl fmt::Display for InvarianceReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let verdict = |ok: bool| if ok { "equal" } else { "DIFFERENT" };
        writeln!(
            f,
            "zeta:        {} | {} -> {}",
            verdict(self.zeta_equal),
            self.before.zeta,
            self.after.zeta
        )?;
        writeln!(
            f,
            "euler:       {} | {} -> {}",
            verdict(self.euler_equal),
            self.before.euler,
            self.after.euler
        )?;
        writeln!(
            f,
            "naive class: {} | {} -> {}",
            verdict(self.naive_equal),
            self.before.naive_class,
            self.after.naive_class
        )?;
        writeln!(
            f,
            "keyed:       {} -> {} (delta {})",
            self.before.keyed, self.after.keyed, self.keyed_delta
        )?;
        for w in &self.warnings {
            writeln!(f, "warning: {w}")?;
        }
        write!(
            f,
            "verdict: {}",
            if self.all_equal() {
                "invariant"
            } else {
                "NOT invariant"
            }
        )
    }
}

pub fn check_invariance(
    model: &NCModel,
    center: &CenterSpec,
) -> Result<InvarianceReport, BlowupError> {
    let after = apply_blowup(model, center)?;
    InvarianceReport::compare(model, after)
}

/// Coefficients `(a, b)` of `sum_{Q ⊆ K} (-1)^(|Q|+1) T_Q = a*A + b*B` for
/// `|K| = k`, with `T_Q = A` for `Q ≠ K` and `T_K = A - B`.
pub fn telescoping_sum(k: usize) -> (BigInt, BigInt) {
    let mut a = BigInt::zero();
    let mut b = BigInt::zero();
    let mut binom = BigInt::one();
    for q in 0..=k {
        let sign = if q % 2 == 1 {
            BigInt::one()
        } else {
            -BigInt::one()
        };
        let weight = &binom * &sign;
        a += &weight;
        if q == k {
            b -= &weight;
        }
        binom = binom * BigInt::from(k - q) / BigInt::from(q + 1);
    }
    (a, b)
}

/// True iff the alternating sum over `Q ⊆ K` collapses to `(-1)^k B`.
pub fn telescoping_check(k: usize) -> bool {
    if k == 0 {
        return false;
    }
    let (a, b) = telescoping_sum(k);
    let expected = if k.is_multiple_of(2) {
        BigInt::one()
    } else {
        -BigInt::one()
    };
    a.is_zero() && b == expected
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct CenterStratumDoc {
    #[serde(rename = "R")]
    r: Vec<String>,
    class: Vec<JsonInt>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct CenterDoc {
    #[serde(rename = "K")]
    k: Vec<String>,
    #[serde(rename = "L", default)]
    l: Vec<String>,
    codim: usize,
    new_component_id: String,
    center_strata: Vec<CenterStratumDoc>,
}

pub fn load_center(text: &str) -> Result<CenterSpec, ModelError> {
    let doc: CenterDoc = serde_json::from_str(text).map_err(|e| parse_error(&e))?;
    Ok(CenterSpec {
        k: doc.k,
        l: doc.l,
        codim: doc.codim,
        new_component_id: doc.new_component_id,
        center_strata: doc
            .center_strata
            .into_iter()
            .map(|s| CenterStratum {
                r: s.r,
                class: class_from_json(s.class),
            })
            .collect(),
    })
}

pub fn save_center(center: &CenterSpec) -> String {
    let doc = CenterDoc {
        k: center.k.clone(),
        l: center.l.clone(),
        codim: center.codim,
        new_component_id: center.new_component_id.clone(),
        center_strata: center
            .center_strata
            .iter()
            .map(|s| CenterStratumDoc {
                r: s.r.clone(),
                class: class_to_json(&s.class),
            })
            .collect(),
    };
    let mut out = serde_json::to_string_pretty(&doc).expect("center serializes");
    out.push('\n');
    out
}
