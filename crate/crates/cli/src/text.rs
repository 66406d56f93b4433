//! Plain-text rendering of the reports.

use std::fmt::Write;

use mmi_core::report::{
    CanonicalReport, EnumerationReport, JumpingNumbersReport, MinimalJumpingDivisorReport,
    MmiReport, RegionReport, Scalar, VerifyReport, WallsReport,
};

fn scalars(v: &[Scalar]) -> String {
    let parts: Vec<String> = v
        .iter()
        .map(|s| match s {
            Scalar::Int(n) => n.to_string(),
            Scalar::Text(t) => t.clone(),
        })
        .collect();
    format!("({})", parts.join(","))
}

fn point(p: &[String]) -> String {
    format!("({})", p.join(", "))
}

pub fn canonical(r: &CanonicalReport) -> String {
    let mut s = format!("components: {}\n", r.components.join(" "));
    writeln!(s, "K = {}", scalars(&r.canonical)).unwrap();
    writeln!(s, "rupture: {}", r.rupture.join(" ")).unwrap();
    writeln!(s, "dicritical: {}", r.dicritical.join(" ")).unwrap();
    for (name, rho) in &r.excesses {
        writeln!(s, "excess {name}: {}", scalars(rho)).unwrap();
    }
    s
}

pub fn mmi(r: &MmiReport) -> String {
    let mut s = format!("lambda = {}\n", point(&r.lambda));
    writeln!(s, "floor   = {}", scalars(&r.floor)).unwrap();
    writeln!(s, "D       = {}", scalars(&r.divisor)).unwrap();
    if let Some(left) = &r.left_limit {
        writeln!(s, "D-      = {}", scalars(left)).unwrap();
    }
    if let Some(j) = r.jumping_point {
        writeln!(s, "jumping point: {j}").unwrap();
    }
    s
}

fn inequality_lines(s: &mut String, ineqs: &[mmi_core::report::InequalityReport]) {
    for h in ineqs {
        writeln!(s, "  {}: {}·z < {}", h.component, scalars(&h.coeffs), h.rhs).unwrap();
    }
}

pub fn region(r: &RegionReport) -> String {
    let mut s = format!("region of {} with D = {}\n", point(&r.lambda), scalars(&r.divisor));
    inequality_lines(&mut s, &r.inequalities);
    s
}

pub fn enumeration(r: &EnumerationReport) -> String {
    let mut s = format!("box {}\nvisited:\n", point(&r.corner));
    for step in &r.visited {
        writeln!(
            s,
            "  {} -> record {}{}",
            point(&step.point),
            step.record,
            if step.duplicate { " (same ideal)" } else { "" }
        )
        .unwrap();
    }
    for rec in &r.records {
        writeln!(
            s,
            "record {}: D = {} at {}{}",
            rec.id,
            scalars(&rec.divisor),
            point(&rec.representative),
            if rec.truncated { " [truncated]" } else { "" }
        )
        .unwrap();
        inequality_lines(&mut s, &rec.inequalities);
        for f in &rec.cfacets {
            writeln!(
                s,
                "  facet on {}: {} – {}, midpoint {}",
                f.component,
                point(&f.from),
                point(&f.to),
                point(&f.midpoint)
            )
            .unwrap();
        }
    }
    writeln!(s, "distinct ideals: {}", r.distinct_divisors).unwrap();
    for w in &r.warnings {
        writeln!(s, "warning: {w}").unwrap();
    }
    s
}

pub fn walls(r: &WallsReport) -> String {
    let mut s = format!("box {}\n", point(&r.corner));
    for w in &r.walls {
        writeln!(
            s,
            "{}·z = {} ({}, record {}): {} – {}",
            scalars(&w.coeffs),
            w.rhs,
            w.component,
            w.record,
            point(&w.from),
            point(&w.to)
        )
        .unwrap();
    }
    s
}

pub fn jumping_numbers(r: &JumpingNumbersReport) -> String {
    format!("{}\n", r.jumping_numbers.join(" "))
}

pub fn min_jumping_divisor(r: &MinimalJumpingDivisorReport) -> String {
    format!(
        "G at {} = {} {}\n",
        point(&r.lambda),
        r.components.join(" + "),
        scalars(&r.divisor)
    )
}

pub fn verify(r: &VerifyReport) -> String {
    let status = |b: bool| if b { "pass" } else { "FAIL" };
    let mut s = format!(
        "lambda = {}, G = {}\n",
        point(&r.lambda),
        r.minimal_jumping_divisor.join(" + ")
    );
    writeln!(s, "jump identity:        {}", status(r.jump_identity.passed)).unwrap();
    writeln!(s, "numeric conditions:   {}", status(r.numeric_conditions.passed)).unwrap();
    for c in &r.numeric_conditions.components {
        writeln!(
            s,
            "  {}: direct {} formula {}",
            c.component, c.direct, c.formula
        )
        .unwrap();
    }
    writeln!(
        s,
        "contribution dichotomy: {} ({} subsets{})",
        status(r.contribution_dichotomy.passed),
        r.contribution_dichotomy.checked,
        if r.contribution_dichotomy.exhaustive { ", exhaustive" } else { ", sampled" }
    )
    .unwrap();
    writeln!(s, "overall: {}", status(r.passed)).unwrap();
    s
}
