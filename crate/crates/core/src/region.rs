//! Regions `R(λ) = {λ' : J(a^λ) ⊆ J(a^λ')}` as rational polytopes, the
//! full-component membership oracle, and the single-ideal jumping-number
//! chain used along rays.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{Signed, Zero};

use crate::divisor::{AntinefDivisor, IntDivisor, OrthantPoint};
use crate::error::{Error, Result};
use crate::graph::Resolution;
use crate::plane::{Line, Polygon, Side};
use crate::rational::{self, Rational};

/// Strict inequality `coeffs·z < rhs` attached to a component `E_j`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Halfspace {
    pub component: usize,
    pub coeffs: Vec<BigInt>,
    pub rhs: Rational,
}

impl Halfspace {
    pub fn lhs(&self, z: &[Rational]) -> Rational {
        self.coeffs
            .iter()
            .zip(z)
            .fold(Rational::zero(), |acc, (a, x)| acc + rational::from_big(a) * x)
    }

    pub fn holds(&self, z: &[Rational]) -> bool {
        self.lhs(z) < self.rhs
    }

    pub fn line(&self) -> Result<Line> {
        if self.coeffs.len() != 2 {
            return Err(Error::GeometryUnsupported(self.coeffs.len()));
        }
        Ok(Line::new(
            [
                rational::from_big(&self.coeffs[0]),
                rational::from_big(&self.coeffs[1]),
            ],
            self.rhs.clone(),
        ))
    }
}

impl fmt::Display for Halfspace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms: Vec<String> = self
            .coeffs
            .iter()
            .enumerate()
            .filter(|(_, a)| !a.is_zero())
            .map(|(i, a)| format!("{a}·z{}", i + 1))
            .collect();
        write!(f, "{} < {}", terms.join(" + "), rational::format(&self.rhs))
    }
}

/// The region of a point: the open polytope `{z ≥ 0 : a_j·z < c_j}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RegionPolytope {
    lambda: OrthantPoint,
    divisor: AntinefDivisor,
    halfspaces: Vec<Halfspace>,
}

impl RegionPolytope {
    pub fn lambda(&self) -> &OrthantPoint {
        &self.lambda
    }

    pub fn divisor(&self) -> &AntinefDivisor {
        &self.divisor
    }

    pub fn halfspaces(&self) -> &[Halfspace] {
        &self.halfspaces
    }

    pub fn dim(&self) -> usize {
        self.lambda.dim()
    }

    pub fn contains(&self, z: &OrthantPoint) -> bool {
        z.dim() == self.dim() && self.halfspaces.iter().all(|h| h.holds(z.coords()))
    }

    /// Every coordinate direction is cut by some inequality.
    pub fn is_bounded(&self) -> bool {
        (0..self.dim()).all(|i| self.halfspaces.iter().any(|h| h.coeffs[i].is_positive()))
    }

    /// Largest value of coordinate `i` over the closure, when bounded.
    pub fn coordinate_bound(&self, i: usize) -> Option<Rational> {
        self.halfspaces
            .iter()
            .filter(|h| h.coeffs[i].is_positive())
            .map(|h| &h.rhs / rational::from_big(&h.coeffs[i]))
            .min()
    }

    /// Supremum of `t ≥ 0` with `t·u` in the region.
    pub fn ray_exit(&self, u: &[Rational]) -> Option<Rational> {
        self.halfspaces
            .iter()
            .filter_map(|h| {
                let slope = h.lhs(u);
                slope.is_positive().then(|| &h.rhs / slope)
            })
            .min()
    }

    /// Closure of the region as an exact convex polygon (`r = 2` only).
    pub fn polygon(&self) -> Result<Polygon> {
        if self.dim() != 2 {
            return Err(Error::GeometryUnsupported(self.dim()));
        }
        let (Some(x), Some(y)) = (self.coordinate_bound(0), self.coordinate_bound(1)) else {
            return Err(Error::GeometryDegeneracy(format!(
                "region of {} is unbounded",
                self.lambda
            )));
        };
        let mut poly = Polygon::rectangle(Rational::zero(), Rational::zero(), x, y);
        for h in &self.halfspaces {
            poly = poly.clip(&h.line()?, Side::Below);
        }
        Ok(poly)
    }
}

impl Resolution {
    /// Half-space description of `R(λ)` for the precomputed `D_λ`.
    pub fn region_for(&self, lambda: &OrthantPoint, divisor: AntinefDivisor) -> RegionPolytope {
        let canonical = self.canonical();
        let halfspaces = self
            .wall_components()
            .into_iter()
            .filter_map(|j| {
                let coeffs = self.ideals().column(j);
                if coeffs.iter().all(Zero::is_zero) {
                    return None;
                }
                let rhs = canonical.at(j)
                    + rational::int(1)
                    + rational::from_big(&divisor.coefficients()[j]);
                Some(Halfspace {
                    component: j,
                    coeffs,
                    rhs,
                })
            })
            .collect();
        RegionPolytope {
            lambda: lambda.clone(),
            divisor,
            halfspaces,
        }
    }

    pub fn region_of(&self, lambda: &OrthantPoint) -> Result<RegionPolytope> {
        let divisor = self.mmi_at(lambda)?;
        Ok(self.region_for(lambda, divisor))
    }

    /// Whether `⌊λ'·e_j − k_j⌋ ≤ v_j(D)` at every component.
    pub fn dominated_by(&self, lambda_prime: &OrthantPoint, divisor: &IntDivisor) -> Result<bool> {
        let floor = self.mixed_divisor_floor(lambda_prime)?;
        Ok(floor.le(divisor))
    }

    /// Oracle for `λ' ∈ R(λ)` checking every component, independent of the
    /// polytope description.
    pub fn membership(&self, lambda_prime: &OrthantPoint, lambda: &OrthantPoint) -> Result<bool> {
        let target = self.mmi_at(lambda)?;
        self.dominated_by(lambda_prime, target.divisor())
    }

    /// Least jumping number strictly greater than `lambda` of the ideal
    /// whose divisor is `f`.
    pub fn next_jumping_number(&self, f: &IntDivisor, lambda: &Rational) -> Result<Rational> {
        let graph = self.graph();
        if f.len() != graph.component_count() {
            return Err(Error::DimensionMismatch {
                expected: graph.component_count(),
                actual: f.len(),
            });
        }
        if f.coefficients().iter().all(|e| !e.is_positive()) {
            return Err(Error::ZeroDivisor);
        }
        if lambda.is_negative() {
            return Err(Error::PreconditionViolated("negative λ".into()));
        }
        let canonical = self.canonical();
        let floor = IntDivisor::new(
            (0..graph.component_count())
                .map(|j| {
                    rational::floor(
                        &(lambda * rational::from_big(&f.coefficients()[j]) - canonical.at(j)),
                    )
                })
                .collect(),
        );
        let closed = self.close(floor)?;
        Ok(f.coefficients()
            .iter()
            .enumerate()
            .filter(|(_, e)| e.is_positive())
            .map(|(j, e)| {
                (canonical.at(j) + rational::int(1) + rational::from_big(&closed.coefficients()[j]))
                    / rational::from_big(e)
            })
            .min()
            .expect("some coefficient is positive"))
    }

    /// `Σ u_i F_i`.
    pub fn combined_divisor(&self, u: &[BigInt]) -> Result<IntDivisor> {
        if u.len() != self.ideal_count() {
            return Err(Error::DimensionMismatch {
                expected: self.ideal_count(),
                actual: u.len(),
            });
        }
        Ok(IntDivisor::new(
            (0..self.graph().component_count())
                .map(|j| {
                    u.iter()
                        .enumerate()
                        .map(|(i, ui)| ui * self.ideals().value(i, j))
                        .sum()
                })
                .collect(),
        ))
    }

    /// Parameters `t ∈ (0, t_max]` at which `J(a^{t·u})` jumps, i.e. the
    /// jumping numbers of `a_1^{u_1}⋯a_r^{u_r}` up to `t_max`.
    pub fn wall_ray_restriction(&self, u: &[BigInt], t_max: &Rational) -> Result<Vec<Rational>> {
        if u.iter().any(Signed::is_negative) {
            return Err(Error::NegativeCoordinate(
                u.iter().position(Signed::is_negative).unwrap(),
            ));
        }
        let f = self.combined_divisor(u)?;
        let mut out = Vec::new();
        let mut t = self.next_jumping_number(&f, &Rational::zero())?;
        while &t <= t_max {
            out.push(t.clone());
            t = self.next_jumping_number(&f, &t)?;
        }
        Ok(out)
    }
}
