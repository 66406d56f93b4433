//! Walking the constancy regions of the positive orthant.
//!
//! Starting from the origin, each step picks a pending point whose region is
//! minimal among the pending ones, computes its ideal, and — unless that
//! ideal has been seen before — subtracts all previously found regions to
//! get the constancy region `C(λ)`. The outer boundary of `C(λ)` is cut
//! into facets, and a midpoint of every facet becomes a new pending point.
//! The walk stops once no pending point lies in the region of the box
//! corner, at which point every ideal attained inside the box has a record.
//!
//! The geometry is exact for one and two ideals.

use std::collections::{HashMap, VecDeque};

use num_traits::{Signed, Zero};

use crate::divisor::{AntinefDivisor, OrthantPoint};
use crate::error::{Error, Result};
use crate::graph::Resolution;
use crate::plane::{self, Line, Point2, Polygon};
use crate::rational::{self, Rational};
use crate::region::RegionPolytope;

/// Safety net for the outer loop; the walk is finite in theory.
const MAX_STEPS: usize = 100_000;

/// A facet of the outer boundary of a constancy region.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CFacet {
    /// Component `E_j` whose wall `a_j·z = c_j` supports the facet.
    pub component: usize,
    /// Index of the connected component of `C(λ)` the facet bounds.
    pub cell: usize,
    pub from: OrthantPoint,
    pub to: OrthantPoint,
    pub midpoint: OrthantPoint,
}

/// `C(λ)` split into connected components, each a union of convex pieces.
/// In dimension one the single component is the interval `[lo, hi)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Cell {
    Plane(Vec<Vec<Polygon>>),
    Interval(Rational, Rational),
}

impl Cell {
    pub fn component_count(&self) -> usize {
        match self {
            Cell::Plane(components) => components.len(),
            Cell::Interval(lo, hi) => usize::from(lo < hi),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Decomposition {
    pub cell: Cell,
    pub facets: Vec<CFacet>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConstancyRecord {
    pub id: usize,
    pub representative: OrthantPoint,
    /// Later representatives found with the same ideal.
    pub duplicates: Vec<OrthantPoint>,
    pub region: RegionPolytope,
    pub cell: Cell,
    pub facets: Vec<CFacet>,
    /// Records directly below this one in the order of ideals.
    pub predecessors: Vec<usize>,
    /// The region leaves the box.
    pub truncated: bool,
}

impl ConstancyRecord {
    pub fn divisor(&self) -> &AntinefDivisor {
        self.region.divisor()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Step {
    pub point: OrthantPoint,
    pub record: usize,
    pub duplicate: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Warning {
    /// The whole box lies inside the region of the origin.
    BoxTooSmall,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Enumeration {
    pub corner: OrthantPoint,
    pub steps: Vec<Step>,
    pub records: Vec<ConstancyRecord>,
    /// Points still pending when the walk stopped.
    pub pending: Vec<OrthantPoint>,
    pub warnings: Vec<Warning>,
}

impl Enumeration {
    /// The visited points, in order.
    pub fn visited(&self) -> Vec<&OrthantPoint> {
        self.steps.iter().map(|s| &s.point).collect()
    }

    pub fn facet_count(&self) -> usize {
        self.records.iter().map(|r| r.facets.len()).sum()
    }

    pub fn record_for(&self, divisor: &AntinefDivisor) -> Option<&ConstancyRecord> {
        self.records.iter().find(|r| r.divisor() == divisor)
    }
}

fn from_point2(p: &Point2) -> OrthantPoint {
    OrthantPoint::new(vec![p[0].clone(), p[1].clone()])
        .expect("facet points lie in the orthant")
}

struct UnionFind(Vec<usize>);

impl UnionFind {
    fn find(&mut self, i: usize) -> usize {
        let parent = self.0[i];
        if parent == i {
            return i;
        }
        let root = self.find(parent);
        self.0[i] = root;
        root
    }

    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            self.0[ra.max(rb)] = ra.min(rb);
        }
    }
}

fn share_edge(p: &Polygon, q: &Polygon) -> bool {
    p.edges()
        .any(|(a, b)| q.edges().any(|(c, d)| plane::segments_overlap(a, b, c, d)))
}

fn group_pieces(pieces: Vec<Polygon>) -> Vec<Vec<Polygon>> {
    let n = pieces.len();
    let mut uf = UnionFind((0..n).collect());
    for i in 0..n {
        for j in i + 1..n {
            if share_edge(&pieces[i], &pieces[j]) {
                uf.union(i, j);
            }
        }
    }
    let mut roots: Vec<usize> = Vec::new();
    let mut groups: Vec<Vec<Polygon>> = Vec::new();
    for (i, piece) in pieces.into_iter().enumerate() {
        let r = uf.find(i);
        match roots.iter().position(|&x| x == r) {
            Some(g) => groups[g].push(piece),
            None => {
                roots.push(r);
                groups.push(vec![piece]);
            }
        }
    }
    groups
}

/// The prior regions not contained in another prior region. Regions are
/// ordered like their divisors, so these cover the union of all of them.
fn maximal<'a>(prior: &[&'a RegionPolytope]) -> Vec<&'a RegionPolytope> {
    let mut out: Vec<&RegionPolytope> = Vec::new();
    for (i, r) in prior.iter().enumerate() {
        let dominated = prior.iter().enumerate().any(|(k, other)| {
            let (a, b) = (r.divisor(), other.divisor());
            a.le(b) && (a != b || k < i)
        });
        if !dominated {
            out.push(r);
        }
    }
    out
}

fn plane_decomposition(region: &RegionPolytope, prior: &[&RegionPolytope]) -> Result<Decomposition> {
    let mut pieces = vec![region.polygon()?];
    for other in maximal(prior) {
        let lines = other
            .halfspaces()
            .iter()
            .map(|h| h.line())
            .collect::<Result<Vec<_>>>()?;
        pieces = pieces
            .iter()
            .flat_map(|p| plane::difference(p, &lines))
            .collect();
        if pieces.is_empty() {
            break;
        }
    }
    let components = group_pieces(pieces);

    let lines: Vec<(usize, Line)> = region
        .halfspaces()
        .iter()
        .map(|h| Ok((h.component, h.line()?)))
        .collect::<Result<_>>()?;
    let mut facets: Vec<(usize, Rational, CFacet)> = Vec::new();
    for (cell, pieces) in components.iter().enumerate() {
        for (order, (component, line)) in lines.iter().enumerate() {
            let normal = line.normalized();
            if lines[..order].iter().any(|(_, l)| l.normalized() == normal) {
                continue;
            }
            let segments: Vec<(Point2, Point2)> = pieces
                .iter()
                .flat_map(|p| p.edges())
                .filter(|(a, b)| line.contains(a) && line.contains(b))
                .map(|(a, b)| (a.clone(), b.clone()))
                .collect();
            for (from, to) in plane::merge_collinear(line, &segments) {
                if from == to {
                    return Err(Error::GeometryDegeneracy(format!(
                        "empty facet on the wall of component {component}"
                    )));
                }
                let mid = plane::midpoint(&from, &to);
                facets.push((
                    order,
                    line.param(&from),
                    CFacet {
                        component: *component,
                        cell,
                        from: from_point2(&from),
                        to: from_point2(&to),
                        midpoint: from_point2(&mid),
                    },
                ));
            }
        }
    }
    facets.sort_by(|a, b| (a.0, &a.1).cmp(&(b.0, &b.1)));
    Ok(Decomposition {
        cell: Cell::Plane(components),
        facets: facets.into_iter().map(|(_, _, f)| f).collect(),
    })
}

fn line_decomposition(region: &RegionPolytope, prior: &[&RegionPolytope]) -> Result<Decomposition> {
    let unit = [rational::int(1)];
    let exit = |r: &RegionPolytope| {
        r.ray_exit(&unit).ok_or_else(|| {
            Error::GeometryDegeneracy(format!("region of {} is unbounded", r.lambda()))
        })
    };
    let hi = exit(region)?;
    let mut lo = Rational::zero();
    for other in prior {
        let t = exit(other)?;
        if t > lo {
            lo = t;
        }
    }
    if lo >= hi {
        return Ok(Decomposition {
            cell: Cell::Interval(hi.clone(), hi),
            facets: Vec::new(),
        });
    }
    let component = region
        .halfspaces()
        .iter()
        .filter(|h| h.coeffs[0].is_positive())
        .find(|h| h.rhs == &hi * rational::from_big(&h.coeffs[0]))
        .map(|h| h.component)
        .expect("the exit is attained by some wall");
    let at = OrthantPoint::new(vec![hi.clone()])?;
    Ok(Decomposition {
        cell: Cell::Interval(lo, hi),
        facets: vec![CFacet {
            component,
            cell: 0,
            from: at.clone(),
            to: at.clone(),
            midpoint: at,
        }],
    })
}

impl Resolution {
    /// `C(λ) = R(λ) ∖ ∪ R(λ_i)` over the prior regions, together with its
    /// C-facets (for one or two ideals).
    pub fn c_facets(&self, region: &RegionPolytope, prior: &[&RegionPolytope]) -> Result<Decomposition> {
        match region.dim() {
            1 => line_decomposition(region, prior),
            2 => plane_decomposition(region, prior),
            r => Err(Error::GeometryUnsupported(r)),
        }
    }

    /// Enumerates the constancy regions needed to cover the box
    /// `[0, corner]`.
    pub fn enumerate_constancy_regions(&self, corner: &OrthantPoint) -> Result<Enumeration> {
        let r = self.ideal_count();
        if corner.dim() != r {
            return Err(Error::DimensionMismatch {
                expected: r,
                actual: corner.dim(),
            });
        }
        if r > 2 {
            return Err(Error::GeometryUnsupported(r));
        }
        if corner.coords().iter().any(|c| !c.is_positive()) {
            return Err(Error::InvalidBox);
        }

        let mut cache: HashMap<OrthantPoint, AntinefDivisor> = HashMap::new();
        let mut ideal = |p: &OrthantPoint| -> Result<AntinefDivisor> {
            if let Some(d) = cache.get(p) {
                return Ok(d.clone());
            }
            let d = self.mmi_at(p)?;
            cache.insert(p.clone(), d.clone());
            Ok(d)
        };

        let origin = OrthantPoint::origin(r);
        let top = ideal(corner)?;
        let mut warnings = Vec::new();
        if ideal(&origin)? == top {
            warnings.push(Warning::BoxTooSmall);
        }

        let mut pending: VecDeque<OrthantPoint> = VecDeque::from([origin]);
        let mut steps: Vec<Step> = Vec::new();
        let mut records: Vec<ConstancyRecord> = Vec::new();

        loop {
            if steps.len() >= MAX_STEPS {
                return Err(Error::NonTermination(steps.len()));
            }
            // (j.1) first pending point inside the region of the corner …
            let mut current = None;
            for (i, p) in pending.iter().enumerate() {
                if ideal(p)?.le(&top) {
                    current = Some(i);
                    break;
                }
            }
            let Some(mut current) = current else { break };
            // … then descend to a point whose region is minimal.
            'descend: loop {
                let d = ideal(&pending[current])?;
                for (i, p) in pending.iter().enumerate() {
                    if i == current {
                        continue;
                    }
                    let e = ideal(p)?;
                    if e.le(&d) && e != d {
                        current = i;
                        continue 'descend;
                    }
                }
                break;
            }
            let lambda = pending.remove(current).expect("index in range");
            let divisor = ideal(&lambda)?;

            // (j.2) already known ideal.
            if let Some(rec) = records.iter_mut().find(|rec| rec.divisor() == &divisor) {
                rec.duplicates.push(lambda.clone());
                steps.push(Step {
                    point: lambda,
                    record: rec.id,
                    duplicate: true,
                });
                continue;
            }

            // (j.3) new constancy region and its facets.
            let region = self.region_for(&lambda, divisor.clone());
            let prior: Vec<&RegionPolytope> = records.iter().map(|rec| &rec.region).collect();
            let Decomposition { cell, facets } = self.c_facets(&region, &prior)?;
            for facet in &facets {
                let left = self.mmi_left_limit(&facet.midpoint)?;
                if left != divisor {
                    return Err(Error::Invariant(format!(
                        "facet midpoint {} has left limit {} instead of {}",
                        facet.midpoint, left, divisor
                    )));
                }
                let seen = pending.contains(&facet.midpoint)
                    || steps.iter().any(|s| s.point == facet.midpoint);
                if !seen {
                    pending.push_back(facet.midpoint.clone());
                }
            }
            let truncated = (0..r).any(|i| match region.coordinate_bound(i) {
                Some(b) => b > corner.coords()[i],
                None => true,
            });
            let id = records.len();
            records.push(ConstancyRecord {
                id,
                representative: lambda.clone(),
                duplicates: Vec::new(),
                region,
                cell,
                facets,
                predecessors: Vec::new(),
                truncated,
            });
            // (j.4)
            steps.push(Step {
                point: lambda,
                record: id,
                duplicate: false,
            });
        }

        link_predecessors(&mut records);
        Ok(Enumeration {
            corner: corner.clone(),
            steps,
            records,
            pending: pending.into_iter().collect(),
            warnings,
        })
    }
}

/// Hasse covers of the componentwise order on the record divisors.
fn link_predecessors(records: &mut [ConstancyRecord]) {
    let divisors: Vec<AntinefDivisor> = records.iter().map(|r| r.divisor().clone()).collect();
    let below = |i: usize, j: usize| divisors[i].le(&divisors[j]) && divisors[i] != divisors[j];
    for j in 0..records.len() {
        records[j].predecessors = (0..divisors.len())
            .filter(|&i| below(i, j) && !(0..divisors.len()).any(|k| below(i, k) && below(k, j)))
            .collect();
    }
}
