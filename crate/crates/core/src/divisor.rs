//! Divisor arithmetic on a fixed dual graph: rounding, antinef tests, the
//! unloading procedure and the evaluation of mixed multiplier ideals.
//!
//! Complete ideals are represented by antinef divisors (Lipman), so ideal
//! inclusion is reversed componentwise comparison: `I(D1) ⊇ I(D2)` iff
//! `D1 ≤ D2`.

use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::graph::{DualGraph, Resolution};
use crate::rational::{self, Rational};

/// Integral divisor over all components of a dual graph.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct IntDivisor(Vec<BigInt>);

impl IntDivisor {
    pub fn new(coefficients: Vec<BigInt>) -> Self {
        IntDivisor(coefficients)
    }

    pub fn from_i64(values: &[i64]) -> Self {
        IntDivisor(values.iter().map(|&v| BigInt::from(v)).collect())
    }

    pub fn zero(len: usize) -> Self {
        IntDivisor(vec![BigInt::zero(); len])
    }

    pub fn coefficients(&self) -> &[BigInt] {
        &self.0
    }

    pub fn into_inner(self) -> Vec<BigInt> {
        self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Componentwise `≤`.
    pub fn le(&self, other: &IntDivisor) -> bool {
        self.0.len() == other.0.len() && self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    pub fn to_rational(&self) -> Divisor {
        Divisor(self.0.iter().map(rational::from_big).collect())
    }

    /// Adds one to every listed component.
    pub fn plus_reduced(&self, components: &[usize]) -> IntDivisor {
        let mut out = self.clone();
        for &j in components {
            out.0[j] += 1;
        }
        out
    }

    pub fn minus_reduced(&self, components: &[usize]) -> IntDivisor {
        let mut out = self.clone();
        for &j in components {
            out.0[j] -= 1;
        }
        out
    }
}

impl fmt::Display for IntDivisor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(ToString::to_string).collect();
        write!(f, "({})", parts.join(","))
    }
}

/// Rational divisor over all components of a dual graph.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Divisor(Vec<Rational>);

impl Divisor {
    pub fn new(coefficients: Vec<Rational>) -> Self {
        Divisor(coefficients)
    }

    pub fn from_i64(values: &[i64]) -> Self {
        Divisor(values.iter().map(|&v| rational::int(v)).collect())
    }

    pub fn coefficients(&self) -> &[Rational] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn is_integral(&self) -> bool {
        self.0.iter().all(Rational::is_integer)
    }

    pub fn to_integral(&self) -> Result<IntDivisor> {
        if !self.is_integral() {
            return Err(Error::NonIntegralDivisor);
        }
        Ok(IntDivisor(self.0.iter().map(Rational::to_integer).collect()))
    }

    pub fn ceil(&self) -> IntDivisor {
        IntDivisor(self.0.iter().map(rational::ceil).collect())
    }

    pub fn floor(&self) -> IntDivisor {
        IntDivisor(self.0.iter().map(rational::floor).collect())
    }

    pub fn le(&self, other: &Divisor) -> bool {
        self.0.len() == other.0.len() && self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }
}

impl From<IntDivisor> for Divisor {
    fn from(d: IntDivisor) -> Self {
        d.to_rational()
    }
}

/// Integral antinef divisor: `−D·E_i ≥ 0` at every exceptional `E_i`.
/// Stands for the complete ideal `π_* O(−D)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct AntinefDivisor(IntDivisor);

impl AntinefDivisor {
    pub fn new(graph: &DualGraph, d: IntDivisor) -> Result<Self> {
        check_len(graph, d.len())?;
        if excesses_of(graph, d.coefficients()).iter().any(Signed::is_negative) {
            return Err(Error::PreconditionViolated(format!("{d} is not antinef")));
        }
        Ok(AntinefDivisor(d))
    }

    pub fn divisor(&self) -> &IntDivisor {
        &self.0
    }

    pub fn coefficients(&self) -> &[BigInt] {
        self.0.coefficients()
    }

    pub fn into_divisor(self) -> IntDivisor {
        self.0
    }

    pub fn le(&self, other: &AntinefDivisor) -> bool {
        self.0.le(&other.0)
    }
}

impl fmt::Display for AntinefDivisor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

/// A point `λ` of the closed positive orthant with rational coordinates.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct OrthantPoint(Vec<Rational>);

impl OrthantPoint {
    pub fn new(coords: Vec<Rational>) -> Result<Self> {
        if let Some(i) = coords.iter().position(Signed::is_negative) {
            return Err(Error::NegativeCoordinate(i));
        }
        Ok(OrthantPoint(coords))
    }

    pub fn origin(dim: usize) -> Self {
        OrthantPoint(vec![Rational::zero(); dim])
    }

    pub fn parse(text: &str) -> Result<Self> {
        Self::new(rational::parse_list(text)?)
    }

    /// Convenience constructor from `(numerator, denominator)` pairs.
    pub fn from_ratios(coords: &[(i64, i64)]) -> Self {
        Self::new(coords.iter().map(|&(n, d)| rational::ratio(n, d)).collect())
            .expect("nonnegative coordinates")
    }

    pub fn coords(&self) -> &[Rational] {
        &self.0
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn is_origin(&self) -> bool {
        self.0.iter().all(Zero::is_zero)
    }

    pub fn le(&self, other: &OrthantPoint) -> bool {
        self.0.len() == other.0.len() && self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    pub fn scaled(&self, t: &Rational) -> OrthantPoint {
        OrthantPoint(self.0.iter().map(|c| c * t).collect())
    }
}

impl fmt::Display for OrthantPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&rational::format_point(&self.0))
    }
}

/// Relation between the ideals of two antinef divisors.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum IdealRelation {
    Equal,
    /// The first ideal strictly contains the second (`D1 < D2`).
    StrictlyContains,
    StrictlyContained,
    Incomparable,
}

/// Compares the complete ideals of two antinef divisors.
pub fn ideal_contains(d1: &AntinefDivisor, d2: &AntinefDivisor) -> Result<IdealRelation> {
    let (a, b) = (d1.coefficients(), d2.coefficients());
    if a.len() != b.len() {
        return Err(Error::GraphMismatch(a.len(), b.len()));
    }
    let mut less = false;
    let mut greater = false;
    for (x, y) in a.iter().zip(b) {
        match x.cmp(y) {
            Ordering::Less => less = true,
            Ordering::Greater => greater = true,
            Ordering::Equal => {}
        }
    }
    Ok(match (less, greater) {
        (false, false) => IdealRelation::Equal,
        (true, false) => IdealRelation::StrictlyContains,
        (false, true) => IdealRelation::StrictlyContained,
        (true, true) => IdealRelation::Incomparable,
    })
}

fn check_len(graph: &DualGraph, len: usize) -> Result<()> {
    if len != graph.component_count() {
        return Err(Error::DimensionMismatch {
            expected: graph.component_count(),
            actual: len,
        });
    }
    Ok(())
}

fn excesses_of(graph: &DualGraph, d: &[BigInt]) -> Vec<BigInt> {
    (0..graph.exceptional_count())
        .map(|i| -graph.dot_int(d, i))
        .collect()
}

/// One unloading sweep on an integral divisor. Returns whether anything
/// changed.
fn unload_sweep(graph: &DualGraph, d: &mut [BigInt]) -> bool {
    let raises: Vec<(usize, BigInt)> = (0..graph.exceptional_count())
        .filter_map(|i| {
            let excess = -graph.dot_int(d, i);
            if excess.is_negative() {
                // n_i = ⌈ρ_i / E_i²⌉ with ρ_i < 0 and E_i² < 0.
                let n = rational::ceil(&Rational::new(
                    excess,
                    BigInt::from(graph.self_intersection(i)),
                ));
                Some((i, n))
            } else {
                None
            }
        })
        .collect();
    let changed = !raises.is_empty();
    for (i, n) in raises {
        d[i] += n;
    }
    changed
}

impl DualGraph {
    /// Excesses `−D·E_i` of an integral divisor at the exceptional components.
    pub fn excesses_of(&self, d: &IntDivisor) -> Result<Vec<BigInt>> {
        check_len(self, d.len())?;
        Ok(excesses_of(self, d.coefficients()))
    }

    pub fn is_antinef(&self, d: &Divisor) -> Result<bool> {
        check_len(self, d.len())?;
        let d = d.to_integral()?;
        Ok(excesses_of(self, d.coefficients())
            .iter()
            .all(|e| !e.is_negative()))
    }

    /// `⌈D⌉ + Σ_{E_i∈Θ} n_i E_i`, where `Θ` collects the exceptional
    /// components of negative excess and `n_i` is the least integer making
    /// the excess at `E_i` nonnegative.
    pub fn unload_once(&self, d: &Divisor) -> Result<IntDivisor> {
        check_len(self, d.len())?;
        let mut out = d.ceil();
        unload_sweep(self, &mut out.0);
        Ok(out)
    }

    /// Minimal integral antinef divisor dominating `D`, by unloading to a
    /// fixed point. Affine coefficients are `⌈D⌉` and never move.
    pub fn antinef_closure(&self, d: &Divisor, max_sweeps: usize) -> Result<AntinefDivisor> {
        check_len(self, d.len())?;
        self.close_integral(d.ceil(), max_sweeps)
    }

    pub(crate) fn close_integral(
        &self,
        mut d: IntDivisor,
        max_sweeps: usize,
    ) -> Result<AntinefDivisor> {
        let mut sweeps = 0;
        while unload_sweep(self, &mut d.0) {
            sweeps += 1;
            if sweeps >= max_sweeps {
                return Err(Error::NonTermination(sweeps));
            }
        }
        Ok(AntinefDivisor(d))
    }
}

/// Outcome of comparing `I(D1)` with `I(D2)` when `D1 ≤ D2`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NonClosedComparison {
    pub equal: bool,
    /// A component with `v_i(D̃1) < v_i(D2)` when the ideals differ.
    pub witness: Option<usize>,
}

impl Resolution {
    fn check_point(&self, lambda: &OrthantPoint) -> Result<()> {
        if lambda.dim() != self.ideal_count() {
            return Err(Error::DimensionMismatch {
                expected: self.ideal_count(),
                actual: lambda.dim(),
            });
        }
        Ok(())
    }

    pub fn antinef_closure(&self, d: &Divisor) -> Result<AntinefDivisor> {
        self.graph().antinef_closure(d, self.max_unload_iters())
    }

    pub fn close(&self, d: IntDivisor) -> Result<AntinefDivisor> {
        check_len(self.graph(), d.len())?;
        self.graph().close_integral(d, self.max_unload_iters())
    }

    /// Decides `π_*O(−D1) = π_*O(−D2)` for `D1 ≤ D2` without closing `D2`.
    pub fn compare_nonclosed(&self, d1: &Divisor, d2: &Divisor) -> Result<NonClosedComparison> {
        check_len(self.graph(), d1.len())?;
        check_len(self.graph(), d2.len())?;
        if !d1.le(d2) {
            return Err(Error::PreconditionViolated("D1 ≰ D2".into()));
        }
        let closed = self.antinef_closure(d1)?;
        let target = d2.ceil();
        let witness = closed
            .coefficients()
            .iter()
            .zip(target.coefficients())
            .position(|(a, b)| a < b);
        Ok(NonClosedComparison {
            equal: witness.is_none(),
            witness,
        })
    }

    /// `λ_1 e_{1,j} + … + λ_r e_{r,j}`.
    pub fn weighted_value(&self, lambda: &OrthantPoint, j: usize) -> Rational {
        let ideals = self.ideals();
        lambda
            .coords()
            .iter()
            .enumerate()
            .fold(Rational::zero(), |acc, (i, l)| {
                acc + l * rational::from_big(ideals.value(i, j))
            })
    }

    /// `λ·e_{•,j} − k_j`, the value whose floor is the coefficient of
    /// `⌊Σλ_iF_i − K⌋` at `E_j`.
    pub fn shifted_value(&self, lambda: &OrthantPoint, j: usize) -> Rational {
        self.weighted_value(lambda, j) - self.canonical().at(j)
    }

    /// `⌊λ_1F_1 + … + λ_rF_r − K_π⌋`.
    pub fn mixed_divisor_floor(&self, lambda: &OrthantPoint) -> Result<IntDivisor> {
        self.check_point(lambda)?;
        Ok(IntDivisor(
            (0..self.graph().component_count())
                .map(|j| rational::floor(&self.shifted_value(lambda, j)))
                .collect(),
        ))
    }

    /// `⌊(1−ε)(λ_1F_1 + … + λ_rF_r) − K_π⌋` for all small `ε > 0`.
    pub fn left_limit_floor(&self, lambda: &OrthantPoint) -> Result<IntDivisor> {
        self.check_point(lambda)?;
        if lambda.is_origin() {
            return Err(Error::ZeroPoint);
        }
        Ok(IntDivisor(
            (0..self.graph().component_count())
                .map(|j| {
                    let q = self.shifted_value(lambda, j);
                    if self.weighted_value(lambda, j).is_positive() {
                        rational::floor_below(&q)
                    } else {
                        rational::floor(&q)
                    }
                })
                .collect(),
        ))
    }

    /// Antinef divisor `D_λ` of the mixed multiplier ideal `J(a^λ)`.
    pub fn mmi_at(&self, lambda: &OrthantPoint) -> Result<AntinefDivisor> {
        let floor = self.mixed_divisor_floor(lambda)?;
        self.graph().close_integral(floor, self.max_unload_iters())
    }

    /// Antinef divisor of `J(a^{(1−ε)λ})` for sufficiently small `ε > 0`.
    pub fn mmi_left_limit(&self, lambda: &OrthantPoint) -> Result<AntinefDivisor> {
        let floor = self.left_limit_floor(lambda)?;
        self.graph().close_integral(floor, self.max_unload_iters())
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
    fn antinef_tests() {
        let res = example();
        let g = res.graph();
        assert!(g.is_antinef(&Divisor::from_i64(&[1, 1, 1, 2, 3])).unwrap());
        assert!(g.is_antinef(&Divisor::from_i64(&[0, 0, 0, 0, 0])).unwrap());
        assert!(!g.is_antinef(&Divisor::from_i64(&[0, 1, 0, 0, 0])).unwrap());
        assert_eq!(
            g.excesses_of(&IntDivisor::from_i64(&[0, 1, 0, 0, 0])).unwrap(),
            IntDivisor::from_i64(&[-1, 4, 0, 0, -1]).into_inner()
        );
        let half = Divisor::new(vec![rational::ratio(1, 2); 5]);
        assert_eq!(g.is_antinef(&half), Err(Error::NonIntegralDivisor));
        assert!(matches!(
            g.is_antinef(&Divisor::from_i64(&[1, 2])),
            Err(Error::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn single_unloading_step() {
        let res = example();
        let g = res.graph();
        assert_eq!(
            g.unload_once(&Divisor::from_i64(&[0, 1, 0, 0, 0])).unwrap(),
            IntDivisor::from_i64(&[1, 1, 0, 0, 1])
        );
        let antinef = Divisor::from_i64(&[1, 2, 2, 4, 6]);
        assert_eq!(g.unload_once(&antinef).unwrap(), antinef.to_integral().unwrap());
        // Rational input is rounded up first.
        let frac = Divisor::new(vec![
            rational::ratio(1, 2),
            rational::int(1),
            rational::int(1),
            rational::int(2),
            rational::ratio(5, 2),
        ]);
        assert_eq!(
            g.unload_once(&frac).unwrap(),
            IntDivisor::from_i64(&[1, 1, 1, 2, 3])
        );
    }

    #[test]
    fn closure_of_negative_canonical_is_zero() {
        let res = example();
        let minus_k = Divisor::from_i64(&[-1, -2, -3, -6, -9]);
        let first = res.graph().unload_once(&minus_k).unwrap();
        assert_eq!(first, IntDivisor::from_i64(&[-1, -2, -3, -6, -8]));
        assert_eq!(
            res.antinef_closure(&minus_k).unwrap().divisor(),
            &IntDivisor::zero(5)
        );
    }

    #[test]
    fn golden_closures() {
        let res = example();
        for (input, expected) in [
            ([0, 1, 0, 0, 0], [1, 1, 1, 2, 3]),
            ([1, 2, 1, 2, 3], [1, 2, 2, 4, 6]),
            ([1, 3, 2, 4, 6], [2, 3, 3, 6, 9]),
            ([1, 2, 2, 4, 7], [1, 2, 3, 5, 7]),
        ] {
            let closed = res.antinef_closure(&Divisor::from_i64(&input)).unwrap();
            assert_eq!(closed.divisor(), &IntDivisor::from_i64(&expected), "{input:?}");
        }
    }

    #[test]
    fn closure_iteration_cap() {
        let res = example().with_max_unload_iters(2);
        let err = res
            .antinef_closure(&Divisor::from_i64(&[0, 1, 0, 0, 0]))
            .unwrap_err();
        assert_eq!(err, Error::NonTermination(2));
    }

    #[test]
    fn ideal_relations() {
        let res = example();
        let g = res.graph();
        let a = AntinefDivisor::new(g, IntDivisor::from_i64(&[1, 1, 1, 2, 3])).unwrap();
        let b = AntinefDivisor::new(g, IntDivisor::from_i64(&[1, 2, 2, 4, 6])).unwrap();
        assert_eq!(ideal_contains(&a, &b).unwrap(), IdealRelation::StrictlyContains);
        assert_eq!(ideal_contains(&b, &a).unwrap(), IdealRelation::StrictlyContained);
        assert_eq!(ideal_contains(&a, &a).unwrap(), IdealRelation::Equal);
        let c = AntinefDivisor::new(g, IntDivisor::from_i64(&[1, 2, 3, 5, 7])).unwrap();
        let d = AntinefDivisor::new(g, IntDivisor::from_i64(&[2, 3, 3, 6, 9])).unwrap();
        assert_eq!(ideal_contains(&c, &d).unwrap(), IdealRelation::StrictlyContains);
        assert!(AntinefDivisor::new(g, IntDivisor::from_i64(&[0, 1, 0, 0, 0])).is_err());

        let l1 = res.mmi_at(&point(&[(1, 6), (1, 1)])).unwrap();
        let l2 = res.mmi_at(&point(&[(17, 42), (1, 4)])).unwrap();
        assert_eq!(ideal_contains(&l1, &l2).unwrap(), IdealRelation::Equal);
    }

    #[test]
    fn incomparable_and_mismatched() {
        let one = AntinefDivisor(IntDivisor::from_i64(&[2, 1]));
        let two = AntinefDivisor(IntDivisor::from_i64(&[1, 2]));
        assert_eq!(ideal_contains(&one, &two).unwrap(), IdealRelation::Incomparable);
        let three = AntinefDivisor(IntDivisor::from_i64(&[1, 2, 3]));
        assert_eq!(ideal_contains(&one, &three), Err(Error::GraphMismatch(2, 3)));
    }

    #[test]
    fn nonclosed_comparison() {
        let res = example();
        let d1 = Divisor::from_i64(&[0, 1, 0, 0, 0]);
        let same = res
            .compare_nonclosed(&d1, &Divisor::from_i64(&[1, 1, 1, 2, 3]))
            .unwrap();
        assert!(same.equal);
        assert!(res.compare_nonclosed(&d1, &d1).unwrap().equal);
        let bigger = res
            .compare_nonclosed(&d1, &Divisor::from_i64(&[1, 2, 2, 4, 6]))
            .unwrap();
        assert_eq!(bigger, NonClosedComparison { equal: false, witness: Some(1) });
        assert!(matches!(
            res.compare_nonclosed(&Divisor::from_i64(&[1, 2, 2, 4, 6]), &d1),
            Err(Error::PreconditionViolated(_))
        ));
    }

    #[test]
    fn mixed_floors() {
        let res = example();
        assert_eq!(
            res.mixed_divisor_floor(&point(&[(1, 6), (1, 1)])).unwrap(),
            IntDivisor::from_i64(&[0, 1, 0, 0, 0])
        );
        assert_eq!(
            res.mixed_divisor_floor(&point(&[(0, 1), (0, 1)])).unwrap(),
            IntDivisor::from_i64(&[-1, -2, -3, -6, -9])
        );
        assert_eq!(
            res.mixed_divisor_floor(&point(&[(23, 42), (3, 4)])).unwrap(),
            IntDivisor::from_i64(&[1, 2, 2, 4, 7])
        );
        assert!(matches!(
            res.mixed_divisor_floor(&point(&[(1, 1)])),
            Err(Error::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn golden_mixed_multiplier_ideals() {
        let res = example();
        for (lambda, expected) in [
            (point(&[(0, 1), (0, 1)]), [0, 0, 0, 0, 0]),
            (point(&[(1, 6), (1, 1)]), [1, 1, 1, 2, 3]),
            (point(&[(1, 6), (3, 2)]), [1, 2, 2, 4, 6]),
            (point(&[(23, 42), (3, 4)]), [1, 2, 3, 5, 7]),
            (point(&[(1, 6), (2, 1)]), [2, 3, 3, 6, 9]),
        ] {
            assert_eq!(
                res.mmi_at(&lambda).unwrap().divisor(),
                &IntDivisor::from_i64(&expected),
                "{lambda}"
            );
        }
    }

    #[test]
    fn left_limits() {
        let res = example();
        let l1 = point(&[(1, 6), (1, 1)]);
        assert_eq!(res.left_limit_floor(&l1).unwrap(), IntDivisor::zero(5));
        assert_eq!(res.mmi_left_limit(&l1).unwrap().divisor(), &IntDivisor::zero(5));
        let l2 = point(&[(17, 42), (1, 4)]);
        assert_eq!(res.mmi_left_limit(&l2).unwrap().divisor(), &IntDivisor::zero(5));
        let interior = point(&[(1, 10), (1, 10)]);
        assert_eq!(
            res.mmi_left_limit(&interior).unwrap(),
            res.mmi_at(&interior).unwrap()
        );
        assert_eq!(
            res.mmi_left_limit(&OrthantPoint::origin(2)),
            Err(Error::ZeroPoint)
        );
    }

    #[test]
    fn orthant_points() {
        assert_eq!(
            OrthantPoint::parse("17/42,1/4").unwrap(),
            point(&[(17, 42), (1, 4)])
        );
        assert_eq!(
            OrthantPoint::parse("1,-1"),
            Err(Error::NegativeCoordinate(1))
        );
        assert_eq!(point(&[(1, 6), (1, 1)]).to_string(), "(1/6, 1)");
    }
}
