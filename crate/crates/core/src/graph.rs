//! Log-resolution data: the weighted dual graph, the ideal divisors and the
//! quantities derived from them (relative canonical divisor, excesses,
//! rupture and dicritical components).

use std::collections::{BTreeMap, BTreeSet, HashMap};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::rational::{self, Rational};

/// Default cap on unloading sweeps before reporting non-termination.
pub const DEFAULT_MAX_UNLOAD_ITERS: usize = 1_000_000;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RawExceptional {
    pub id: String,
    #[serde(rename = "self")]
    pub self_intersection: i64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RawAffine {
    pub id: String,
    #[serde(default)]
    pub meets: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RawIdeal {
    pub name: String,
    pub mult: BTreeMap<String, i64>,
}

/// The JSON input document.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RawInput {
    pub exceptional: Vec<RawExceptional>,
    #[serde(default)]
    pub edges: Vec<[String; 2]>,
    #[serde(default)]
    pub affine: Vec<RawAffine>,
    #[serde(default)]
    pub ideals: Vec<RawIdeal>,
}

impl RawInput {
    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Input(e.to_string()))
    }
}

/// Dual graph of a log-resolution. Components `0..s` are exceptional,
/// `s..t` are affine (strict transforms crossing the exceptional locus).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DualGraph {
    ids: Vec<String>,
    self_intersections: Vec<i64>,
    exceptional_neighbors: Vec<Vec<usize>>,
    affine_crossings: Vec<Vec<usize>>,
    exceptional_affine: Vec<Vec<usize>>,
}

impl DualGraph {
    /// Checks the structural assumptions on a dual graph: unique ids,
    /// resolved references, a tree of exceptional curves and a negative
    /// definite intersection matrix.
    pub fn validate(
        exceptional: &[RawExceptional],
        edges: &[[String; 2]],
        affine: &[RawAffine],
    ) -> Result<Self> {
        if exceptional.is_empty() {
            return Err(Error::Input("no exceptional components".into()));
        }
        let s = exceptional.len();
        let mut index = HashMap::new();
        let mut ids = Vec::with_capacity(s + affine.len());
        for comp in exceptional {
            if index.insert(comp.id.clone(), ids.len()).is_some() {
                return Err(Error::DuplicateId(comp.id.clone()));
            }
            ids.push(comp.id.clone());
        }
        for comp in affine {
            if index.insert(comp.id.clone(), ids.len()).is_some() {
                return Err(Error::DuplicateId(comp.id.clone()));
            }
            ids.push(comp.id.clone());
        }

        let exceptional_index = |id: &String, context: &str| -> Result<usize> {
            match index.get(id) {
                Some(&i) if i < s => Ok(i),
                _ => Err(Error::DanglingReference {
                    context: context.to_string(),
                    id: id.clone(),
                }),
            }
        };

        let mut exceptional_neighbors = vec![Vec::new(); s];
        let mut seen_edges = BTreeSet::new();
        for [a, b] in edges {
            let i = exceptional_index(a, "edge")?;
            let j = exceptional_index(b, "edge")?;
            if i == j {
                return Err(Error::NotATree {
                    reason: format!("self-loop at `{a}`"),
                });
            }
            if !seen_edges.insert((i.min(j), i.max(j))) {
                return Err(Error::MultipleIntersection(a.clone(), b.clone()));
            }
            exceptional_neighbors[i].push(j);
            exceptional_neighbors[j].push(i);
        }
        for list in &mut exceptional_neighbors {
            list.sort_unstable();
        }

        let mut affine_crossings = Vec::with_capacity(affine.len());
        let mut exceptional_affine = vec![Vec::new(); s];
        for (a, comp) in affine.iter().enumerate() {
            let mut meets = Vec::with_capacity(comp.meets.len());
            for target in &comp.meets {
                let j = exceptional_index(target, &format!("affine component `{}`", comp.id))?;
                if meets.contains(&j) {
                    return Err(Error::MultipleIntersection(comp.id.clone(), target.clone()));
                }
                meets.push(j);
                exceptional_affine[j].push(s + a);
            }
            meets.sort_unstable();
            affine_crossings.push(meets);
        }

        if seen_edges.len() + 1 != s {
            return Err(Error::NotATree {
                reason: format!("{} edges on {} vertices", seen_edges.len(), s),
            });
        }
        let mut reached = vec![false; s];
        let mut stack = vec![0];
        reached[0] = true;
        while let Some(v) = stack.pop() {
            for &w in &exceptional_neighbors[v] {
                if !reached[w] {
                    reached[w] = true;
                    stack.push(w);
                }
            }
        }
        if let Some(v) = reached.iter().position(|r| !r) {
            return Err(Error::NotATree {
                reason: format!("`{}` is not connected to `{}`", ids[v], ids[0]),
            });
        }

        let graph = DualGraph {
            ids,
            self_intersections: exceptional.iter().map(|c| c.self_intersection).collect(),
            exceptional_neighbors,
            affine_crossings,
            exceptional_affine,
        };
        graph.check_negative_definite()?;
        Ok(graph)
    }

    fn check_negative_definite(&self) -> Result<()> {
        // Gaussian elimination on −M without pivoting: every pivot must be
        // positive (equivalently, all leading principal minors are).
        let s = self.exceptional_count();
        let mut a: Vec<Vec<Rational>> = (0..s)
            .map(|i| {
                (0..s)
                    .map(|j| rational::int(-self.intersection_number(i, j)))
                    .collect()
            })
            .collect();
        for k in 0..s {
            if !a[k][k].is_positive() {
                return Err(Error::NotNegativeDefinite {
                    components: self.ids[..=k].to_vec(),
                });
            }
            for i in k + 1..s {
                if a[i][k].is_zero() {
                    continue;
                }
                let factor = &a[i][k] / &a[k][k];
                for j in k..s {
                    let delta = &factor * &a[k][j];
                    a[i][j] -= delta;
                }
            }
        }
        Ok(())
    }

    pub fn exceptional_count(&self) -> usize {
        self.self_intersections.len()
    }

    pub fn component_count(&self) -> usize {
        self.ids.len()
    }

    pub fn is_exceptional(&self, i: usize) -> bool {
        i < self.exceptional_count()
    }

    pub fn id(&self, i: usize) -> &str {
        &self.ids[i]
    }

    pub fn ids(&self) -> &[String] {
        &self.ids
    }

    pub fn index_of(&self, id: &str) -> Option<usize> {
        self.ids.iter().position(|x| x == id)
    }

    pub fn self_intersection(&self, i: usize) -> i64 {
        self.self_intersections[i]
    }

    /// `E_i · E_j` for exceptional `i, j`.
    pub fn intersection_number(&self, i: usize, j: usize) -> i64 {
        if i == j {
            self.self_intersections[i]
        } else if self.exceptional_neighbors[i].binary_search(&j).is_ok() {
            1
        } else {
            0
        }
    }

    pub fn intersection_matrix(&self) -> Vec<Vec<i64>> {
        let s = self.exceptional_count();
        (0..s)
            .map(|i| (0..s).map(|j| self.intersection_number(i, j)).collect())
            .collect()
    }

    pub fn exceptional_neighbors(&self, i: usize) -> &[usize] {
        &self.exceptional_neighbors[i]
    }

    /// All components meeting exceptional component `i`, affine ones included.
    pub fn neighbors(&self, i: usize) -> Vec<usize> {
        if self.is_exceptional(i) {
            let mut all = self.exceptional_neighbors[i].clone();
            all.extend_from_slice(&self.exceptional_affine[i]);
            all
        } else {
            self.affine_crossings[i - self.exceptional_count()].clone()
        }
    }

    pub fn affine_crossings(&self, affine: usize) -> &[usize] {
        &self.affine_crossings[affine - self.exceptional_count()]
    }

    /// `D · E_i` for an integral divisor `D` over all components and an
    /// exceptional `E_i`.
    pub fn dot_int(&self, d: &[BigInt], i: usize) -> BigInt {
        let mut acc = &d[i] * self.self_intersections[i];
        for &j in &self.exceptional_neighbors[i] {
            acc += &d[j];
        }
        for &a in &self.exceptional_affine[i] {
            acc += &d[a];
        }
        acc
    }

    pub fn dot_rational(&self, d: &[Rational], i: usize) -> Rational {
        let mut acc = &d[i] * rational::int(self.self_intersections[i]);
        for &j in &self.exceptional_neighbors[i] {
            acc += &d[j];
        }
        for &a in &self.exceptional_affine[i] {
            acc += &d[a];
        }
        acc
    }

    pub fn relative_canonical(&self) -> CanonicalDivisor {
        let s = self.exceptional_count();
        let matrix: Vec<Vec<Rational>> = (0..s)
            .map(|i| {
                (0..s)
                    .map(|j| rational::int(self.intersection_number(i, j)))
                    .collect()
            })
            .collect();
        let rhs: Vec<Rational> = (0..s)
            .map(|i| rational::int(-2 - self.self_intersections[i]))
            .collect();
        let coefficients = solve(matrix, rhs).expect("negative definite matrix is invertible");
        CanonicalDivisor { coefficients }
    }
}

/// Solves `A x = b` over the rationals with partial pivoting on non-zero
/// entries. Returns `None` for singular systems.
pub(crate) fn solve(mut a: Vec<Vec<Rational>>, mut b: Vec<Rational>) -> Option<Vec<Rational>> {
    let n = b.len();
    for k in 0..n {
        let pivot = (k..n).find(|&i| !a[i][k].is_zero())?;
        a.swap(k, pivot);
        b.swap(k, pivot);
        for i in k + 1..n {
            if a[i][k].is_zero() {
                continue;
            }
            let factor = &a[i][k] / &a[k][k];
            for j in k..n {
                let delta = &factor * &a[k][j];
                a[i][j] -= delta;
            }
            let delta = &factor * &b[k];
            b[i] -= delta;
        }
    }
    let mut x = vec![Rational::zero(); n];
    for k in (0..n).rev() {
        let mut acc = b[k].clone();
        for j in k + 1..n {
            acc -= &a[k][j] * &x[j];
        }
        x[k] = acc / &a[k][k];
    }
    Some(x)
}

/// Relative canonical divisor, supported on the exceptional components.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CanonicalDivisor {
    coefficients: Vec<Rational>,
}

impl CanonicalDivisor {
    pub fn coefficients(&self) -> &[Rational] {
        &self.coefficients
    }

    /// Coefficient at component `j`; zero on affine components.
    pub fn at(&self, j: usize) -> Rational {
        self.coefficients.get(j).cloned().unwrap_or_else(Rational::zero)
    }

    /// Residual `(K + E_i)·E_i + 2` for every exceptional component; all
    /// zero for a correct canonical divisor.
    pub fn adjunction_defects(&self, graph: &DualGraph) -> Vec<Rational> {
        let t = graph.component_count();
        let mut full: Vec<Rational> = (0..t).map(|j| self.at(j)).collect();
        (0..graph.exceptional_count())
            .map(|i| {
                full[i] += Rational::one();
                let value = graph.dot_rational(&full, i) + rational::int(2);
                full[i] -= Rational::one();
                value
            })
            .collect()
    }
}

/// The tuple of ideal divisors `F_1..F_r`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IdealDivisorSet {
    names: Vec<String>,
    divisors: Vec<Vec<BigInt>>,
    excesses: Vec<Vec<BigInt>>,
}

impl IdealDivisorSet {
    pub fn new(graph: &DualGraph, names: Vec<String>, divisors: Vec<Vec<BigInt>>) -> Result<Self> {
        if divisors.is_empty() {
            return Err(Error::NoIdeals);
        }
        if names.len() != divisors.len() {
            return Err(Error::DimensionMismatch {
                expected: divisors.len(),
                actual: names.len(),
            });
        }
        let mut unique = BTreeSet::new();
        for name in &names {
            if !unique.insert(name) {
                return Err(Error::DuplicateId(name.clone()));
            }
        }
        for (name, f) in names.iter().zip(&divisors) {
            if f.len() != graph.component_count() {
                return Err(Error::DimensionMismatch {
                    expected: graph.component_count(),
                    actual: f.len(),
                });
            }
            if f.iter().any(Signed::is_negative) {
                return Err(Error::NegativeMultiplicity(name.clone()));
            }
            if f.iter().all(Zero::is_zero) {
                return Err(Error::ZeroIdeal(name.clone()));
            }
        }
        let excesses = excesses(graph, &divisors)?;
        for (i, row) in excesses.iter().enumerate() {
            if let Some(j) = row.iter().position(Signed::is_negative) {
                return Err(Error::NotAntinef {
                    ideal: names[i].clone(),
                    component: graph.id(j).to_string(),
                    excess: row[j].to_string(),
                });
            }
        }
        Ok(IdealDivisorSet {
            names,
            divisors,
            excesses,
        })
    }

    pub fn from_raw(graph: &DualGraph, raw: &[RawIdeal]) -> Result<Self> {
        let mut names = Vec::with_capacity(raw.len());
        let mut divisors = Vec::with_capacity(raw.len());
        for ideal in raw {
            let mut f = vec![BigInt::zero(); graph.component_count()];
            for (id, &m) in &ideal.mult {
                let j = graph.index_of(id).ok_or_else(|| Error::DanglingReference {
                    context: format!("ideal `{}`", ideal.name),
                    id: id.clone(),
                })?;
                f[j] = BigInt::from(m);
            }
            names.push(ideal.name.clone());
            divisors.push(f);
        }
        Self::new(graph, names, divisors)
    }

    pub fn len(&self) -> usize {
        self.divisors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.divisors.is_empty()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    pub fn divisor(&self, i: usize) -> &[BigInt] {
        &self.divisors[i]
    }

    /// `e_{i,j}`: multiplicity of ideal `i` along component `j`.
    pub fn value(&self, i: usize, j: usize) -> &BigInt {
        &self.divisors[i][j]
    }

    /// Column `(e_{1,j}, …, e_{r,j})`.
    pub fn column(&self, j: usize) -> Vec<BigInt> {
        self.divisors.iter().map(|f| f[j].clone()).collect()
    }

    /// `ρ_{i,j} = −F_i · E_j` for exceptional `E_j`.
    pub fn excess(&self, i: usize, j: usize) -> &BigInt {
        &self.excesses[i][j]
    }

    pub fn excesses(&self) -> &[Vec<BigInt>] {
        &self.excesses
    }

    /// Whether every ideal has exceptional support only.
    pub fn is_m_primary(&self, graph: &DualGraph) -> bool {
        let s = graph.exceptional_count();
        self.divisors.iter().all(|f| f[s..].iter().all(Zero::is_zero))
    }
}

/// Excess matrix `ρ_{i,j} = −F_i · E_j` over exceptional `E_j`.
pub fn excesses(graph: &DualGraph, divisors: &[Vec<BigInt>]) -> Result<Vec<Vec<BigInt>>> {
    divisors
        .iter()
        .map(|f| {
            if f.len() != graph.component_count() {
                return Err(Error::DimensionMismatch {
                    expected: graph.component_count(),
                    actual: f.len(),
                });
            }
            Ok((0..graph.exceptional_count())
                .map(|j| -graph.dot_int(f, j))
                .collect())
        })
        .collect()
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Classification {
    pub rupture: BTreeSet<usize>,
    pub dicritical: BTreeSet<usize>,
}

impl Classification {
    /// Rupture or dicritical components: the ones that can support walls.
    pub fn wall_relevant(&self) -> BTreeSet<usize> {
        self.rupture.union(&self.dicritical).copied().collect()
    }
}

pub fn classify_components(graph: &DualGraph, ideals: &IdealDivisorSet) -> Classification {
    let s = graph.exceptional_count();
    let rupture = (0..s)
        .filter(|&j| graph.exceptional_neighbors(j).len() >= 3)
        .collect();
    let dicritical = (0..s)
        .filter(|&j| (0..ideals.len()).any(|i| ideals.excess(i, j).is_positive()))
        .collect();
    Classification {
        rupture,
        dicritical,
    }
}

/// A validated log-resolution together with everything derived from it.
#[derive(Debug, Clone)]
pub struct Resolution {
    graph: DualGraph,
    ideals: IdealDivisorSet,
    canonical: CanonicalDivisor,
    classification: Classification,
    affine_walls: bool,
    max_unload_iters: usize,
}

impl Resolution {
    pub fn new(graph: DualGraph, ideals: IdealDivisorSet) -> Result<Self> {
        let canonical = graph.relative_canonical();
        if canonical
            .adjunction_defects(&graph)
            .iter()
            .any(|d| !d.is_zero())
        {
            return Err(Error::Invariant(
                "relative canonical divisor fails adjunction".into(),
            ));
        }
        let classification = classify_components(&graph, &ideals);
        Ok(Resolution {
            graph,
            ideals,
            canonical,
            classification,
            affine_walls: false,
            max_unload_iters: DEFAULT_MAX_UNLOAD_ITERS,
        })
    }

    pub fn from_raw(raw: &RawInput) -> Result<Self> {
        let graph = DualGraph::validate(&raw.exceptional, &raw.edges, &raw.affine)?;
        let ideals = IdealDivisorSet::from_raw(&graph, &raw.ideals)?;
        Self::new(graph, ideals)
    }

    pub fn from_json(text: &str) -> Result<Self> {
        Self::from_raw(&RawInput::from_json(text)?)
    }

    /// Also emit region inequalities for affine components carrying an
    /// ideal multiplicity. Off by default.
    pub fn with_affine_walls(mut self, on: bool) -> Self {
        self.affine_walls = on;
        self
    }

    pub fn with_max_unload_iters(mut self, cap: usize) -> Self {
        self.max_unload_iters = cap;
        self
    }

    pub fn graph(&self) -> &DualGraph {
        &self.graph
    }

    pub fn ideals(&self) -> &IdealDivisorSet {
        &self.ideals
    }

    pub fn canonical(&self) -> &CanonicalDivisor {
        &self.canonical
    }

    pub fn classification(&self) -> &Classification {
        &self.classification
    }

    pub fn affine_walls(&self) -> bool {
        self.affine_walls
    }

    pub fn max_unload_iters(&self) -> usize {
        self.max_unload_iters
    }

    pub fn ideal_count(&self) -> usize {
        self.ideals.len()
    }

    pub fn is_m_primary(&self) -> bool {
        self.ideals.is_m_primary(&self.graph)
    }

    pub fn is_rupture(&self, j: usize) -> bool {
        self.classification.rupture.contains(&j)
    }

    pub fn is_dicritical(&self, j: usize) -> bool {
        self.classification.dicritical.contains(&j)
    }

    /// Components whose hyperplanes bound regions, in index order.
    pub fn wall_components(&self) -> Vec<usize> {
        let mut comps: Vec<usize> = self.classification.wall_relevant().into_iter().collect();
        if self.affine_walls {
            let s = self.graph.exceptional_count();
            comps.extend(
                (s..self.graph.component_count())
                    .filter(|&j| (0..self.ideals.len()).any(|i| self.ideals.value(i, j).is_positive())),
            );
        }
        comps
    }
}
