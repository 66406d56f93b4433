//! Shared fixtures and random input generators for the integration tests.
#![allow(dead_code)]

use std::collections::BTreeMap;

use mmi_core::graph::{RawExceptional, RawIdeal};
use mmi_core::rational::{self, Rational};
use mmi_core::{DualGraph, OrthantPoint, RawInput, Resolution};
use num_traits::Zero;
use rand::Rng;

pub const EXAMPLE: &str = include_str!("../../../../data/example.json");

pub fn example() -> Resolution {
    Resolution::from_json(EXAMPLE).unwrap()
}

pub fn pt(c: &[(i64, i64)]) -> OrthantPoint {
    OrthantPoint::from_ratios(c)
}

fn exc(i: usize, s: i64) -> RawExceptional {
    RawExceptional {
        id: format!("E{}", i + 1),
        self_intersection: s,
    }
}

fn edge(i: usize, j: usize) -> [String; 2] {
    [format!("E{}", i + 1), format!("E{}", j + 1)]
}

/// Random tree on `n` vertices with self-intersections in `[-5, -1]`,
/// redrawn until the intersection matrix is negative definite.
pub fn random_tree<R: Rng>(rng: &mut R, n: usize) -> (DualGraph, Vec<i64>, Vec<(usize, usize)>) {
    loop {
        let selfs: Vec<i64> = (0..n).map(|_| rng.gen_range(-5..=-1)).collect();
        let edges: Vec<(usize, usize)> = (1..n).map(|i| (rng.gen_range(0..i), i)).collect();
        let raw: Vec<RawExceptional> = selfs.iter().enumerate().map(|(i, &s)| exc(i, s)).collect();
        let raw_edges: Vec<[String; 2]> = edges.iter().map(|&(i, j)| edge(i, j)).collect();
        if let Ok(g) = DualGraph::validate(&raw, &raw_edges, &[]) {
            return (g, selfs, edges);
        }
    }
}

/// Exceptional configuration of `steps` random point blow-ups starting
/// from a single blow-up of a smooth point.
pub fn random_blowups<R: Rng>(rng: &mut R, steps: usize) -> (Vec<i64>, Vec<(usize, usize)>) {
    let mut selfs = vec![-1i64];
    let mut edges: Vec<(usize, usize)> = Vec::new();
    for _ in 1..steps {
        let new = selfs.len();
        let i = rng.gen_range(0..new);
        let touching: Vec<usize> = edges
            .iter()
            .filter_map(|&(a, b)| {
                if a == i {
                    Some(b)
                } else if b == i {
                    Some(a)
                } else {
                    None
                }
            })
            .collect();
        if !touching.is_empty() && rng.gen_bool(0.5) {
            let j = touching[rng.gen_range(0..touching.len())];
            edges.retain(|&(a, b)| !((a == i && b == j) || (a == j && b == i)));
            edges.push((i, new));
            edges.push((j, new));
            selfs[i] -= 1;
            selfs[j] -= 1;
        } else {
            edges.push((i, new));
            selfs[i] -= 1;
        }
        selfs.push(-1);
    }
    (selfs, edges)
}

/// Solves `m x = b` exactly.
pub fn solve(m: &[Vec<i64>], b: &[i64]) -> Vec<Rational> {
    let n = b.len();
    let mut a: Vec<Vec<Rational>> = m
        .iter()
        .zip(b)
        .map(|(row, &bi)| {
            let mut r: Vec<Rational> = row.iter().map(|&x| rational::int(x)).collect();
            r.push(rational::int(bi));
            r
        })
        .collect();
    for k in 0..n {
        let p = (k..n).find(|&i| !a[i][k].is_zero()).expect("nonsingular");
        a.swap(k, p);
        for i in 0..n {
            if i != k && !a[i][k].is_zero() {
                let f = &a[i][k] / &a[k][k];
                for j in k..=n {
                    let d = &f * &a[k][j];
                    a[i][j] -= d;
                }
            }
        }
    }
    (0..n).map(|i| &a[i][n] / &a[i][i]).collect()
}

/// A random m-primary input with `r` ideals on a graph of at most
/// `max_steps` blow-ups. Each ideal is `F = −M⁻¹ρ` for a random
/// nonnegative excess vector `ρ`; `M` is unimodular, so `F` is integral.
pub fn random_input<R: Rng>(rng: &mut R, max_steps: usize, r: usize) -> RawInput {
    let steps = rng.gen_range(1..=max_steps);
    let (selfs, edges) = random_blowups(rng, steps);
    let n = selfs.len();
    let mut m = vec![vec![0i64; n]; n];
    for (i, &s) in selfs.iter().enumerate() {
        m[i][i] = s;
    }
    for &(i, j) in &edges {
        m[i][j] = 1;
        m[j][i] = 1;
    }
    let ideals = (0..r)
        .map(|t| {
            let mut rho: Vec<i64> = (0..n)
                .map(|_| if rng.gen_bool(0.3) { rng.gen_range(1..=2) } else { 0 })
                .collect();
            if rho.iter().all(|&x| x == 0) {
                rho[rng.gen_range(0..n)] = 1;
            }
            let minus: Vec<i64> = rho.iter().map(|x| -x).collect();
            let f = solve(&m, &minus);
            let mult: BTreeMap<String, i64> = f
                .iter()
                .enumerate()
                .map(|(i, q)| {
                    assert!(q.is_integer(), "unimodular system gives integral divisors");
                    (format!("E{}", i + 1), i64::try_from(q.to_integer()).unwrap())
                })
                .collect();
            RawIdeal {
                name: format!("a{}", t + 1),
                mult,
            }
        })
        .collect();
    RawInput {
        exceptional: selfs.iter().enumerate().map(|(i, &s)| exc(i, s)).collect(),
        edges: edges.iter().map(|&(i, j)| edge(i, j)).collect(),
        affine: Vec::new(),
        ideals,
    }
}

pub fn random_rational<R: Rng>(rng: &mut R, max: i64) -> Rational {
    let den = rng.gen_range(1..=24i64);
    rational::ratio(rng.gen_range(0..=max * den), den)
}

pub fn random_point<R: Rng>(rng: &mut R, dim: usize, max: i64) -> OrthantPoint {
    OrthantPoint::new((0..dim).map(|_| random_rational(rng, max)).collect()).unwrap()
}

/// Minimal integral antinef divisor `≥ d` by brute force over the box
/// `[d, upper]`, in plain machine integers. Returns `None` if the box holds
/// no antinef divisor.
pub fn lattice_minimal_antinef(m: &[Vec<i64>], d: &[i64], upper: &[i64]) -> Option<Vec<i64>> {
    let n = d.len();
    let mut best: Option<Vec<i64>> = None;
    let mut cur = d.to_vec();
    loop {
        let antinef = (0..n).all(|i| (0..n).map(|j| m[i][j] * cur[j]).sum::<i64>() <= 0);
        if antinef {
            best = Some(match best {
                None => cur.clone(),
                Some(b) => b.iter().zip(&cur).map(|(x, y)| *x.min(y)).collect(),
            });
        }
        let mut k = 0;
        loop {
            if k == n {
                return best.filter(|b| {
                    (0..n).all(|i| (0..n).map(|j| m[i][j] * b[j]).sum::<i64>() <= 0)
                });
            }
            if cur[k] < upper[k] {
                cur[k] += 1;
                break;
            }
            cur[k] = d[k];
            k += 1;
        }
    }
}
