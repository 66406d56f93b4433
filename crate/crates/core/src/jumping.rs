//! Jumping points, minimal jumping divisors and checks of their structure.
//!
//! For a jumping point `λ`, write `D_λ` for the divisor of `J(a^λ)` and
//! `D_λ⁻` for the divisor of `J(a^{(1−ε)λ})`. The minimal jumping divisor
//! `G_λ` is the reduced divisor on the components `E_j ≤ ΣF_i` with
//! `λ·e_j − k_j = 1 + v_j(D_λ⁻)`. No numeric `ε` is used anywhere: the left
//! limit is evaluated symbolically.

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

use crate::divisor::{AntinefDivisor, IntDivisor, OrthantPoint};
use crate::error::{Error, Result};
use crate::graph::Resolution;
use crate::rational::{self, Rational};

/// Exhaustive enumeration limit for [`Resolution::verify_contribution_dichotomy`].
pub const DEFAULT_DICHOTOMY_CAP: usize = 1 << 16;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Contribution {
    No,
    Contributes,
    ContributesCritically,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MinimalJumpingDivisor {
    pub lambda: OrthantPoint,
    /// Support of `G_λ`, in increasing order.
    pub components: Vec<usize>,
    /// `a_G(E_i)`: number of components of `G_λ` adjacent to `E_i`, for
    /// every component of the graph.
    pub valence: Vec<usize>,
    component_count: usize,
}

impl MinimalJumpingDivisor {
    /// `G_λ` as a 0/1 divisor.
    pub fn reduced(&self) -> IntDivisor {
        IntDivisor::zero(self.component_count).plus_reduced(&self.components)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct JumpIdentityReport {
    pub lambda: OrthantPoint,
    pub g: Vec<usize>,
    pub target: AntinefDivisor,
    pub left: AntinefDivisor,
    /// Closure of `D_λ⁻ + G_λ`.
    pub from_left_divisor: AntinefDivisor,
    /// Closure of `⌊(1−ε)λF − K⌋ + G_λ`.
    pub from_left_floor: AntinefDivisor,
    pub passed: bool,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ComponentCheck {
    pub component: usize,
    /// `(⌈K − λF⌉ + G)·E_i` computed from the intersection matrix.
    pub direct: Rational,
    /// The same number from excesses, valences and fractional parts.
    pub formula: Rational,
    pub rupture: bool,
    pub dicritical: bool,
    pub passed: bool,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EndCheck {
    pub component: usize,
    pub rupture: bool,
    pub dicritical: bool,
    pub passed: bool,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NumericReport {
    pub lambda: OrthantPoint,
    pub g: Vec<usize>,
    pub components: Vec<ComponentCheck>,
    pub ends: Vec<EndCheck>,
    pub passed: bool,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DichotomyFailure {
    pub g: Vec<usize>,
    pub divisor: AntinefDivisor,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DichotomyReport {
    pub lambda: OrthantPoint,
    /// Components of `ΣF_i` where `λ·e_j − k_j` is an integer.
    pub candidates: Vec<usize>,
    pub minimal: Vec<usize>,
    /// Number of subsets of the candidates that were tested.
    pub checked: usize,
    /// All `2^n` subsets were tested.
    pub exhaustive: bool,
    pub failures: Vec<DichotomyFailure>,
    /// The jumping divisors among the tested ones have `G_λ` as their only
    /// minimal element.
    pub unique_minimum: bool,
    pub passed: bool,
}

impl Resolution {
    fn total_multiplicity_positive(&self, j: usize) -> bool {
        (0..self.ideal_count()).any(|i| self.ideals().value(i, j).is_positive())
    }

    pub fn is_jumping_point(&self, lambda: &OrthantPoint) -> Result<bool> {
        let left = self.mmi_left_limit(lambda)?;
        Ok(left != self.mmi_at(lambda)?)
    }

    /// Components `E_j ≤ ΣF_i` where `λ·e_j − k_j` is an integer.
    pub fn candidate_components(&self, lambda: &OrthantPoint) -> Vec<usize> {
        (0..self.graph().component_count())
            .filter(|&j| {
                self.total_multiplicity_positive(j) && self.shifted_value(lambda, j).is_integer()
            })
            .collect()
    }

    /// `a_G(E_i)` for every component.
    pub fn valence(&self, g: &[usize]) -> Vec<usize> {
        let graph = self.graph();
        (0..graph.component_count())
            .map(|i| graph.neighbors(i).iter().filter(|n| g.contains(n)).count())
            .collect()
    }

    /// Components of `g` that have at most one neighbour in `g`.
    fn ends(&self, g: &[usize]) -> Vec<usize> {
        let valence = self.valence(g);
        g.iter().copied().filter(|&j| valence[j] <= 1).collect()
    }

    pub fn minimal_jumping_divisor(&self, lambda: &OrthantPoint) -> Result<MinimalJumpingDivisor> {
        if !self.is_jumping_point(lambda)? {
            return Err(Error::NotAJumpingPoint);
        }
        let left = self.mmi_left_limit(lambda)?;
        let components: Vec<usize> = (0..self.graph().component_count())
            .filter(|&j| {
                self.total_multiplicity_positive(j)
                    && self.shifted_value(lambda, j)
                        == rational::int(1) + rational::from_big(&left.coefficients()[j])
            })
            .collect();

        // G_λ ≤ ⌈K − (1−ε)λF⌉ − ⌈K − λF⌉ = ⌊λF − K⌋ − ⌊(1−ε)λF − K⌋.
        let floor = self.mixed_divisor_floor(lambda)?;
        let left_floor = self.left_limit_floor(lambda)?;
        for &j in &components {
            let room = &floor.coefficients()[j] - &left_floor.coefficients()[j];
            if room < BigInt::from(1) {
                return Err(Error::Invariant(format!(
                    "minimal jumping divisor exceeds the rounding gap at {}",
                    self.graph().id(j)
                )));
            }
        }
        let valence = self.valence(&components);
        Ok(MinimalJumpingDivisor {
            lambda: lambda.clone(),
            components,
            valence,
            component_count: self.graph().component_count(),
        })
    }

    fn check_reduced(&self, g: &[usize]) -> Result<Vec<usize>> {
        let set: BTreeSet<usize> = g.iter().copied().collect();
        if let Some(&j) = set.iter().find(|&&j| j >= self.graph().component_count()) {
            return Err(Error::DanglingReference {
                context: "reduced divisor".into(),
                id: j.to_string(),
            });
        }
        if let Some(&j) = set.iter().find(|&&j| !self.total_multiplicity_positive(j)) {
            return Err(Error::PreconditionViolated(format!(
                "{} is not a component of ΣF_i",
                self.graph().id(j)
            )));
        }
        Ok(set.into_iter().collect())
    }

    /// Closure of `⌊λF − K⌋ − G`.
    fn lowered_closure(&self, floor: &IntDivisor, g: &[usize]) -> Result<AntinefDivisor> {
        self.close(floor.minus_reduced(g))
    }

    pub fn contributes(&self, g: &[usize], lambda: &OrthantPoint) -> Result<Contribution> {
        let g = self.check_reduced(g)?;
        for &j in &g {
            let value = self.shifted_value(lambda, j);
            if !value.is_integer() {
                return Err(Error::IntegralityViolated {
                    component: self.graph().id(j).to_string(),
                    value: rational::format(&value),
                });
            }
        }
        let target = self.mmi_at(lambda)?;
        let floor = self.mixed_divisor_floor(lambda)?;
        let enlarges = |h: &[usize]| -> Result<bool> {
            Ok(self.lowered_closure(&floor, h)? != target)
        };
        if !enlarges(&g)? {
            return Ok(Contribution::No);
        }
        // Enlarging is monotone in G, so it suffices to drop one component.
        for skip in 0..g.len() {
            let smaller: Vec<usize> = g
                .iter()
                .enumerate()
                .filter(|&(i, _)| i != skip)
                .map(|(_, &j)| j)
                .collect();
            if enlarges(&smaller)? {
                return Ok(Contribution::Contributes);
            }
        }
        Ok(Contribution::ContributesCritically)
    }

    pub fn verify_jump_identity(&self, lambda: &OrthantPoint) -> Result<JumpIdentityReport> {
        let g = self.minimal_jumping_divisor(lambda)?;
        let target = self.mmi_at(lambda)?;
        let left = self.mmi_left_limit(lambda)?;
        let from_left_divisor = self.close(left.divisor().plus_reduced(&g.components))?;
        let from_left_floor =
            self.close(self.left_limit_floor(lambda)?.plus_reduced(&g.components))?;
        let passed = from_left_divisor == target && from_left_floor == target;
        Ok(JumpIdentityReport {
            lambda: lambda.clone(),
            g: g.components,
            target,
            left,
            from_left_divisor,
            from_left_floor,
            passed,
        })
    }

    pub fn verify_numeric_conditions(&self, lambda: &OrthantPoint) -> Result<NumericReport> {
        let g = self.minimal_jumping_divisor(lambda)?;
        self.numeric_conditions_for(lambda, &g.components)
    }

    /// The intersection-number checks for an arbitrary reduced divisor `g`.
    pub fn numeric_conditions_for(&self, lambda: &OrthantPoint, g: &[usize]) -> Result<NumericReport> {
        let g = self.check_reduced(g)?;
        let graph = self.graph();
        let floor = self.mixed_divisor_floor(lambda)?;
        // ⌈K − λF⌉ + G = −⌊λF − K⌋ + G.
        let d: Vec<BigInt> = floor
            .coefficients()
            .iter()
            .enumerate()
            .map(|(j, v)| -v + BigInt::from(u8::from(g.contains(&j))))
            .collect();
        let valence = self.valence(&g);
        let mut components = Vec::new();
        for &i in g.iter().filter(|&&i| graph.is_exceptional(i)) {
            let direct = rational::from_big(&graph.dot_int(&d, i));
            let excess_term = lambda
                .coords()
                .iter()
                .enumerate()
                .fold(Rational::zero(), |acc, (m, l)| {
                    acc + l * rational::from_big(self.ideals().excess(m, i))
                });
            let fractional = graph
                .neighbors(i)
                .iter()
                .fold(Rational::zero(), |acc, &j| {
                    acc + rational::fract(&self.shifted_value(lambda, j))
                });
            let formula = rational::int(-2)
                + excess_term
                + rational::int(valence[i] as i64)
                + fractional;
            let rupture = self.is_rupture(i);
            let dicritical = self.is_dicritical(i);
            let passed = direct == formula
                && direct.is_integer()
                && !direct.is_negative()
                && (rupture || dicritical || direct.is_zero());
            components.push(ComponentCheck {
                component: i,
                direct,
                formula,
                rupture,
                dicritical,
                passed,
            });
        }
        let ends: Vec<EndCheck> = self
            .ends(&g)
            .into_iter()
            .filter(|&j| graph.is_exceptional(j))
            .map(|j| {
                let rupture = self.is_rupture(j);
                let dicritical = self.is_dicritical(j);
                EndCheck {
                    component: j,
                    rupture,
                    dicritical,
                    passed: rupture || dicritical,
                }
            })
            .collect();
        let passed = components.iter().all(|c| c.passed) && ends.iter().all(|e| e.passed);
        Ok(NumericReport {
            lambda: lambda.clone(),
            g,
            components,
            ends,
            passed,
        })
    }

    /// Tests every reduced `G` supported on the candidate components
    /// (or a random sample of `cap` of them when there are more than `cap`).
    pub fn verify_contribution_dichotomy(
        &self,
        lambda: &OrthantPoint,
        cap: usize,
    ) -> Result<DichotomyReport> {
        let minimal = self.minimal_jumping_divisor(lambda)?.components;
        let candidates = self.candidate_components(lambda);
        let left = self.mmi_left_limit(lambda)?;
        let target = self.mmi_at(lambda)?;
        let floor = self.mixed_divisor_floor(lambda)?;
        let n = candidates.len();

        let exhaustive = n < usize::BITS as usize && (1usize << n) <= cap;
        let subsets: Vec<Vec<usize>> = if exhaustive {
            (0..1usize << n)
                .map(|mask| {
                    (0..n)
                        .filter(|b| mask >> b & 1 == 1)
                        .map(|b| candidates[b])
                        .collect()
                })
                .collect()
        } else {
            let mut rng = StdRng::seed_from_u64(0x6d6d69);
            let mut out = vec![Vec::new(), minimal.clone(), candidates.clone()];
            while out.len() < cap.max(3) {
                out.push(candidates.iter().copied().filter(|_| rng.gen()).collect());
            }
            out
        };

        let mut failures = Vec::new();
        let mut jumping: Vec<Vec<usize>> = Vec::new();
        for g in &subsets {
            let closed = self.lowered_closure(&floor, g)?;
            let contains_minimal = minimal.iter().all(|j| g.contains(j));
            let ok = if contains_minimal {
                closed == left
            } else {
                closed != left && left.le(&closed) && closed.le(&target)
            };
            if closed == left {
                jumping.push(g.clone());
            }
            if !ok {
                failures.push(DichotomyFailure {
                    g: g.clone(),
                    divisor: closed,
                });
            }
        }
        let minimal_elements: Vec<&Vec<usize>> = jumping
            .iter()
            .filter(|g| {
                !jumping
                    .iter()
                    .any(|h| h.len() < g.len() && h.iter().all(|j| g.contains(j)))
            })
            .collect();
        let unique_minimum = minimal_elements.len() == 1 && *minimal_elements[0] == minimal;
        let passed = failures.is_empty() && unique_minimum;
        Ok(DichotomyReport {
            lambda: lambda.clone(),
            candidates,
            minimal,
            checked: subsets.len(),
            exhaustive,
            failures,
            unique_minimum,
            passed,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn example() -> Resolution {
        Resolution::from_json(include_str!("../../../data/example.json")).unwrap()
    }

    fn point(c: &[(i64, i64)]) -> OrthantPoint {
        OrthantPoint::from_ratios(c)
    }

    #[test]
    fn jumping_points() {
        let res = example();
        assert!(res.is_jumping_point(&point(&[(1, 6), (1, 1)])).unwrap());
        assert!(!res.is_jumping_point(&point(&[(1, 10), (1, 10)])).unwrap());
        assert!(res.is_jumping_point(&point(&[(17, 42), (1, 4)])).unwrap());
        assert_eq!(
            res.is_jumping_point(&point(&[(0, 1), (0, 1)])),
            Err(Error::ZeroPoint)
        );
    }

    #[test]
    fn minimal_divisors() {
        let res = example();
        for (lambda, expected) in [
            (point(&[(1, 6), (1, 1)]), vec![1]),
            (point(&[(17, 42), (1, 4)]), vec![4]),
            (point(&[(1, 6), (3, 2)]), vec![1]),
        ] {
            let g = res.minimal_jumping_divisor(&lambda).unwrap();
            assert_eq!(g.components, expected, "{lambda}");
        }
        let g = res.minimal_jumping_divisor(&point(&[(1, 6), (1, 1)])).unwrap();
        assert_eq!(g.reduced(), IntDivisor::from_i64(&[0, 1, 0, 0, 0]));
        assert_eq!(g.valence, vec![1, 0, 0, 0, 1]);
        assert_eq!(
            res.minimal_jumping_divisor(&point(&[(1, 10), (1, 10)])),
            Err(Error::NotAJumpingPoint)
        );
    }

    #[test]
    fn contributions() {
        let res = example();
        let l = point(&[(1, 6), (1, 1)]);
        assert_eq!(
            res.contributes(&[1], &l).unwrap(),
            Contribution::ContributesCritically
        );
        assert_eq!(res.contributes(&[], &l).unwrap(), Contribution::No);
        assert!(matches!(
            res.contributes(&[4], &l),
            Err(Error::IntegralityViolated { .. })
        ));
    }

    #[test]
    fn jump_identities() {
        let res = example();
        for lambda in [
            point(&[(1, 6), (1, 1)]),
            point(&[(17, 42), (1, 4)]),
            point(&[(1, 6), (3, 2)]),
        ] {
            let report = res.verify_jump_identity(&lambda).unwrap();
            assert!(report.passed, "{lambda}");
        }
        let report = res.verify_jump_identity(&point(&[(1, 6), (3, 2)])).unwrap();
        assert_eq!(report.target.divisor(), &IntDivisor::from_i64(&[1, 2, 2, 4, 6]));
    }

    #[test]
    fn numeric_conditions() {
        let res = example();
        let report = res
            .verify_numeric_conditions(&point(&[(1, 6), (1, 1)]))
            .unwrap();
        assert!(report.passed);
        assert_eq!(report.components[0].direct, rational::int(0));
        let report = res
            .verify_numeric_conditions(&point(&[(17, 42), (1, 4)]))
            .unwrap();
        assert!(report.passed);
        assert_eq!(report.components[0].formula, rational::int(0));
    }

    #[test]
    fn isolated_plain_component_is_flagged() {
        let res = example();
        // At (1/6,1) the value λ·e − k at E4 is 1/3, so use a point where E4
        // is integral: λ = (0, 2) gives 8 − 6 = 2.
        let lambda = point(&[(0, 1), (2, 1)]);
        let report = res.numeric_conditions_for(&lambda, &[3]).unwrap();
        assert!(!report.passed);
        assert!(!report.ends[0].passed);
    }

    #[test]
    fn dichotomy() {
        let res = example();
        for lambda in [point(&[(1, 6), (1, 1)]), point(&[(1, 2), (1, 1)])] {
            let report = res
                .verify_contribution_dichotomy(&lambda, DEFAULT_DICHOTOMY_CAP)
                .unwrap();
            assert!(report.passed, "{lambda}: {report:?}");
            assert!(report.exhaustive);
        }
        let report = res
            .verify_contribution_dichotomy(&point(&[(1, 6), (1, 1)]), DEFAULT_DICHOTOMY_CAP)
            .unwrap();
        assert_eq!(report.candidates, vec![1]);
        assert_eq!(report.checked, 2);
        assert_eq!(
            res.verify_contribution_dichotomy(&point(&[(1, 10), (1, 10)]), 16),
            Err(Error::NotAJumpingPoint)
        );
    }
}
