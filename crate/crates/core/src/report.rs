//! Serializable report types.
//!
//! Rationals are written as canonical lowest-terms strings (`"17/42"`,
//! `"2"`); divisor coefficients are JSON numbers when they are integers
//! that fit in 64 bits and strings otherwise. Keys are emitted sorted, so
//! identical inputs give byte-identical JSON.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use crate::divisor::{AntinefDivisor, IntDivisor, OrthantPoint};
use crate::enumerate::{CFacet, ConstancyRecord, Enumeration, Warning};
use crate::graph::Resolution;
use crate::jumping::{
    ComponentCheck, DichotomyReport, EndCheck, JumpIdentityReport, MinimalJumpingDivisor,
    NumericReport,
};
use crate::rational::{self, Rational};
use crate::region::{Halfspace, RegionPolytope};

/// A number that is written as a JSON integer when possible.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Scalar {
    Int(i64),
    Text(String),
}

impl Scalar {
    pub fn from_big(n: &BigInt) -> Self {
        i64::try_from(n).map_or_else(|_| Scalar::Text(n.to_string()), Scalar::Int)
    }

    pub fn from_rational(q: &Rational) -> Self {
        if q.is_integer() {
            Scalar::from_big(&q.to_integer())
        } else {
            Scalar::Text(rational::format(q))
        }
    }

    pub fn to_rational(&self) -> crate::Result<Rational> {
        match self {
            Scalar::Int(n) => Ok(rational::int(*n)),
            Scalar::Text(s) => rational::parse(s),
        }
    }
}

pub fn scalars(values: &[BigInt]) -> Vec<Scalar> {
    values.iter().map(Scalar::from_big).collect()
}

pub fn rational_scalars(values: &[Rational]) -> Vec<Scalar> {
    values.iter().map(Scalar::from_rational).collect()
}

pub fn point_strings(p: &OrthantPoint) -> Vec<String> {
    p.coords().iter().map(rational::format).collect()
}

fn divisor_scalars(d: &AntinefDivisor) -> Vec<Scalar> {
    scalars(d.coefficients())
}

fn int_divisor_scalars(d: &IntDivisor) -> Vec<Scalar> {
    scalars(d.coefficients())
}

/// Pretty JSON with sorted keys and a trailing newline.
pub fn to_json<T: Serialize>(value: &T) -> String {
    let value = serde_json::to_value(value).expect("report types serialize");
    let mut out = serde_json::to_string_pretty(&value).expect("values serialize");
    out.push('\n');
    out
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CanonicalReport {
    pub components: Vec<String>,
    pub canonical: Vec<Scalar>,
    pub rupture: Vec<String>,
    pub dicritical: Vec<String>,
    /// Excesses `ρ_{i,j}` per ideal, over the exceptional components.
    pub excesses: BTreeMap<String, Vec<Scalar>>,
}

impl CanonicalReport {
    pub fn new(res: &Resolution) -> Self {
        let graph = res.graph();
        let ids = |set: &std::collections::BTreeSet<usize>| {
            set.iter().map(|&j| graph.id(j).to_string()).collect()
        };
        let ideals = res.ideals();
        CanonicalReport {
            components: graph.ids().to_vec(),
            canonical: rational_scalars(res.canonical().coefficients()),
            rupture: ids(&res.classification().rupture),
            dicritical: ids(&res.classification().dicritical),
            excesses: ideals
                .names()
                .iter()
                .enumerate()
                .map(|(i, name)| (name.clone(), scalars(&ideals.excesses()[i])))
                .collect(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MmiReport {
    pub lambda: Vec<String>,
    pub divisor: Vec<Scalar>,
    pub floor: Vec<Scalar>,
    /// Undefined at the origin.
    pub left_limit: Option<Vec<Scalar>>,
    pub jumping_point: Option<bool>,
}

impl MmiReport {
    pub fn new(res: &Resolution, lambda: &OrthantPoint) -> crate::Result<Self> {
        let divisor = res.mmi_at(lambda)?;
        let floor = res.mixed_divisor_floor(lambda)?;
        let left = if lambda.is_origin() {
            None
        } else {
            Some(res.mmi_left_limit(lambda)?)
        };
        Ok(MmiReport {
            lambda: point_strings(lambda),
            divisor: divisor_scalars(&divisor),
            floor: int_divisor_scalars(&floor),
            jumping_point: left.as_ref().map(|l| l != &divisor),
            left_limit: left.as_ref().map(divisor_scalars),
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct InequalityReport {
    pub component: String,
    pub coeffs: Vec<Scalar>,
    pub rhs: String,
}

impl InequalityReport {
    pub fn new(res: &Resolution, h: &Halfspace) -> Self {
        InequalityReport {
            component: res.graph().id(h.component).to_string(),
            coeffs: scalars(&h.coeffs),
            rhs: rational::format(&h.rhs),
        }
    }
}

fn inequalities(res: &Resolution, region: &RegionPolytope) -> Vec<InequalityReport> {
    region
        .halfspaces()
        .iter()
        .map(|h| InequalityReport::new(res, h))
        .collect()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RegionReport {
    pub lambda: Vec<String>,
    pub divisor: Vec<Scalar>,
    pub inequalities: Vec<InequalityReport>,
    pub bounded: bool,
}

impl RegionReport {
    pub fn new(res: &Resolution, region: &RegionPolytope) -> Self {
        RegionReport {
            lambda: point_strings(region.lambda()),
            divisor: divisor_scalars(region.divisor()),
            inequalities: inequalities(res, region),
            bounded: region.is_bounded(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CFacetReport {
    pub component: String,
    pub cell: usize,
    pub from: Vec<String>,
    pub to: Vec<String>,
    pub midpoint: Vec<String>,
}

impl CFacetReport {
    pub fn new(res: &Resolution, f: &CFacet) -> Self {
        CFacetReport {
            component: res.graph().id(f.component).to_string(),
            cell: f.cell,
            from: point_strings(&f.from),
            to: point_strings(&f.to),
            midpoint: point_strings(&f.midpoint),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RecordReport {
    pub id: usize,
    pub representative: Vec<String>,
    pub duplicates: Vec<Vec<String>>,
    pub divisor: Vec<Scalar>,
    pub inequalities: Vec<InequalityReport>,
    pub cfacets: Vec<CFacetReport>,
    pub predecessors: Vec<usize>,
    /// Number of connected components of the constancy region.
    pub cells: usize,
    pub truncated: bool,
}

impl RecordReport {
    pub fn new(res: &Resolution, r: &ConstancyRecord) -> Self {
        RecordReport {
            id: r.id,
            representative: point_strings(&r.representative),
            duplicates: r.duplicates.iter().map(point_strings).collect(),
            divisor: divisor_scalars(r.divisor()),
            inequalities: inequalities(res, &r.region),
            cfacets: r.facets.iter().map(|f| CFacetReport::new(res, f)).collect(),
            predecessors: r.predecessors.clone(),
            cells: r.cell.component_count(),
            truncated: r.truncated,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct StepReport {
    pub point: Vec<String>,
    pub record: usize,
    pub duplicate: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct EnumerationReport {
    #[serde(rename = "box")]
    pub corner: Vec<String>,
    pub visited: Vec<StepReport>,
    pub records: Vec<RecordReport>,
    pub pending: Vec<Vec<String>>,
    pub warnings: Vec<String>,
    pub distinct_divisors: usize,
}

fn warning_name(w: Warning) -> String {
    match w {
        Warning::BoxTooSmall => "BoxTooSmall".into(),
    }
}

impl EnumerationReport {
    pub fn new(res: &Resolution, e: &Enumeration) -> Self {
        EnumerationReport {
            corner: point_strings(&e.corner),
            visited: e
                .steps
                .iter()
                .map(|s| StepReport {
                    point: point_strings(&s.point),
                    record: s.record,
                    duplicate: s.duplicate,
                })
                .collect(),
            records: e.records.iter().map(|r| RecordReport::new(res, r)).collect(),
            pending: e.pending.iter().map(point_strings).collect(),
            warnings: e.warnings.iter().copied().map(warning_name).collect(),
            distinct_divisors: e.records.len(),
        }
    }
}

/// One supporting segment of a jumping wall, for `walls`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct WallReport {
    pub record: usize,
    pub component: String,
    pub coeffs: Vec<Scalar>,
    pub rhs: String,
    pub from: Vec<String>,
    pub to: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct WallsReport {
    #[serde(rename = "box")]
    pub corner: Vec<String>,
    pub walls: Vec<WallReport>,
    pub warnings: Vec<String>,
}

impl WallsReport {
    pub fn new(res: &Resolution, e: &Enumeration) -> Self {
        let mut walls = Vec::new();
        for r in &e.records {
            for f in &r.facets {
                let h = r
                    .region
                    .halfspaces()
                    .iter()
                    .find(|h| h.component == f.component)
                    .expect("facet lies on a wall of its region");
                walls.push(WallReport {
                    record: r.id,
                    component: res.graph().id(f.component).to_string(),
                    coeffs: scalars(&h.coeffs),
                    rhs: rational::format(&h.rhs),
                    from: point_strings(&f.from),
                    to: point_strings(&f.to),
                });
            }
        }
        WallsReport {
            corner: point_strings(&e.corner),
            walls,
            warnings: e.warnings.iter().copied().map(warning_name).collect(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct JumpingNumbersReport {
    pub ideal: Option<String>,
    pub direction: Option<Vec<Scalar>>,
    pub upto: String,
    pub jumping_numbers: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MinimalJumpingDivisorReport {
    pub lambda: Vec<String>,
    pub components: Vec<String>,
    pub divisor: Vec<Scalar>,
    pub valence: Vec<usize>,
}

fn ids(res: &Resolution, comps: &[usize]) -> Vec<String> {
    comps.iter().map(|&j| res.graph().id(j).to_string()).collect()
}

impl MinimalJumpingDivisorReport {
    pub fn new(res: &Resolution, g: &MinimalJumpingDivisor) -> Self {
        MinimalJumpingDivisorReport {
            lambda: point_strings(&g.lambda),
            components: ids(res, &g.components),
            divisor: int_divisor_scalars(&g.reduced()),
            valence: g.valence.clone(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct JumpIdentitySection {
    pub passed: bool,
    pub target: Vec<Scalar>,
    pub left_limit: Vec<Scalar>,
    pub from_left_divisor: Vec<Scalar>,
    pub from_left_floor: Vec<Scalar>,
}

impl From<&JumpIdentityReport> for JumpIdentitySection {
    fn from(r: &JumpIdentityReport) -> Self {
        JumpIdentitySection {
            passed: r.passed,
            target: divisor_scalars(&r.target),
            left_limit: divisor_scalars(&r.left),
            from_left_divisor: divisor_scalars(&r.from_left_divisor),
            from_left_floor: divisor_scalars(&r.from_left_floor),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ComponentCheckReport {
    pub component: String,
    pub direct: String,
    pub formula: String,
    pub rupture: bool,
    pub dicritical: bool,
    pub passed: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct EndCheckReport {
    pub component: String,
    pub rupture: bool,
    pub dicritical: bool,
    pub passed: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct NumericSection {
    pub passed: bool,
    pub g: Vec<String>,
    pub components: Vec<ComponentCheckReport>,
    pub ends: Vec<EndCheckReport>,
}

impl NumericSection {
    pub fn new(res: &Resolution, r: &NumericReport) -> Self {
        let comp = |c: &ComponentCheck| ComponentCheckReport {
            component: res.graph().id(c.component).to_string(),
            direct: rational::format(&c.direct),
            formula: rational::format(&c.formula),
            rupture: c.rupture,
            dicritical: c.dicritical,
            passed: c.passed,
        };
        let end = |e: &EndCheck| EndCheckReport {
            component: res.graph().id(e.component).to_string(),
            rupture: e.rupture,
            dicritical: e.dicritical,
            passed: e.passed,
        };
        NumericSection {
            passed: r.passed,
            g: ids(res, &r.g),
            components: r.components.iter().map(comp).collect(),
            ends: r.ends.iter().map(end).collect(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DichotomyFailureReport {
    pub g: Vec<String>,
    pub divisor: Vec<Scalar>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DichotomySection {
    pub passed: bool,
    pub candidates: Vec<String>,
    pub checked: usize,
    pub exhaustive: bool,
    pub unique_minimum: bool,
    pub failures: Vec<DichotomyFailureReport>,
}

impl DichotomySection {
    pub fn new(res: &Resolution, r: &DichotomyReport) -> Self {
        DichotomySection {
            passed: r.passed,
            candidates: ids(res, &r.candidates),
            checked: r.checked,
            exhaustive: r.exhaustive,
            unique_minimum: r.unique_minimum,
            failures: r
                .failures
                .iter()
                .map(|f| DichotomyFailureReport {
                    g: ids(res, &f.g),
                    divisor: divisor_scalars(&f.divisor),
                })
                .collect(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerifyReport {
    pub lambda: Vec<String>,
    pub minimal_jumping_divisor: Vec<String>,
    pub jump_identity: JumpIdentitySection,
    pub numeric_conditions: NumericSection,
    pub contribution_dichotomy: DichotomySection,
    pub passed: bool,
}

impl VerifyReport {
    pub fn new(res: &Resolution, lambda: &OrthantPoint, cap: usize) -> crate::Result<Self> {
        let g = res.minimal_jumping_divisor(lambda)?;
        let identity = res.verify_jump_identity(lambda)?;
        let numeric = res.verify_numeric_conditions(lambda)?;
        let dichotomy = res.verify_contribution_dichotomy(lambda, cap)?;
        Ok(VerifyReport {
            lambda: point_strings(lambda),
            minimal_jumping_divisor: ids(res, &g.components),
            passed: identity.passed && numeric.passed && dichotomy.passed,
            jump_identity: (&identity).into(),
            numeric_conditions: NumericSection::new(res, &numeric),
            contribution_dichotomy: DichotomySection::new(res, &dichotomy),
        })
    }
}
