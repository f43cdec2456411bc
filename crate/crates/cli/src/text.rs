//! Plain-text rendering of the result documents.

use std::fmt::Write;

use crate::report::*;

/// `(Z/2)^2 + Z/4`, or `0`.
pub(crate) fn group(factors: &[u64]) -> String {
    if factors.is_empty() {
        return "0".into();
    }
    let mut parts: Vec<String> = Vec::new();
    let mut i = 0;
    while i < factors.len() {
        let j = factors[i..].iter().take_while(|&&f| f == factors[i]).count();
        parts.push(if j == 1 { format!("Z/{}", factors[i]) } else { format!("(Z/{})^{j}", factors[i]) });
        i += j;
    }
    parts.join(" + ")
}

fn matrix(out: &mut String, m: &MatrixReport, indent: &str) {
    if m.rows == 0 || m.cols == 0 {
        let _ = writeln!(out, "{indent}(zero map {} -> {})", m.cols, m.rows);
        return;
    }
    for row in &m.matrix {
        let cells: Vec<String> = row.iter().map(u64::to_string).collect();
        let _ = writeln!(out, "{indent}{}", cells.join(" "));
    }
}

fn complex(out: &mut String, c: &ComplexReport) {
    for t in &c.terms {
        let _ = writeln!(out, "C^{} = {}", t.degree, group(&t.factors));
        for p in &t.provenance {
            let _ = writeln!(out, "    {} [{}] rank {}", p.summand, p.part, p.rank);
        }
    }
    for d in &c.differentials {
        let _ = writeln!(out, "d^{}: {} x {}", d.degree, d.rows, d.cols);
        matrix(out, d, "    ");
    }
}

fn cohomology(out: &mut String, h: &[CohomologyReport]) {
    for x in h {
        let _ = writeln!(out, "H^{} = {}", x.degree, group(&x.invariant_factors));
        if let Some(reps) = &x.representatives {
            for r in reps {
                let cells: Vec<String> = r.iter().map(u64::to_string).collect();
                let _ = writeln!(out, "    rep ({})", cells.join(", "));
            }
        }
    }
}

fn warnings(out: &mut String, w: &[String]) {
    for x in w {
        let _ = writeln!(out, "warning: {x}");
    }
}

pub(crate) fn validate(r: &ValidateReport) -> String {
    let mut out = format!("{}\n", r.report);
    for i in &r.issues {
        let _ = writeln!(out, "  {}: {} ({})", i.location, i.hypothesis, i.detail);
    }
    warnings(&mut out, &r.warnings);
    out
}

pub(crate) fn rgamma(r: &RGammaReport) -> String {
    let mut out = format!("{}: modulus {}, |G| = {}\n", r.command, r.modulus, r.group_order);
    if r.h1_triviality_attested {
        out.push_str("H^1 triviality attested\n");
    }
    warnings(&mut out, &r.warnings);
    complex(&mut out, &r.complex);
    cohomology(&mut out, &r.cohomology);
    for a in &r.galois_action {
        let _ = writeln!(out, "action of {}", a.generator);
        for m in &a.terms {
            let _ = writeln!(out, "  on C^{}:", m.degree);
            matrix(&mut out, m, "    ");
        }
        for m in &a.cohomology {
            let _ = writeln!(out, "  on H^{}:", m.degree);
            matrix(&mut out, m, "    ");
        }
    }
    out
}

pub(crate) fn descend(r: &DescendReport) -> String {
    let mut out = format!(
        "descend: modulus {}, {} route, Galois order {}, descent group order {}\n",
        r.modulus, r.route, r.galois_order, r.descent_group_order
    );
    warnings(&mut out, &r.warnings);
    complex(&mut out, &r.complex);
    cohomology(&mut out, &r.cohomology);
    out
}

pub(crate) fn pullback(r: &PullbackReport) -> String {
    let mut out = format!("pullback: modulus {}\ntarget\n", r.modulus);
    cohomology(&mut out, &r.target_cohomology);
    out.push_str("source\n");
    cohomology(&mut out, &r.source_cohomology);
    for m in &r.morphism {
        let _ = writeln!(out, "on C^{}:", m.degree);
        matrix(&mut out, m, "    ");
    }
    for m in &r.on_cohomology {
        let _ = writeln!(out, "on H^{}:", m.degree);
        matrix(&mut out, m, "    ");
    }
    out
}

pub(crate) fn inertia(d: &InertiaDoc) -> String {
    let r = &d.report;
    let mut out = format!(
        "inertia: field of {} elements, {} points, group of order {} generated by {}\n",
        r.field_size,
        r.point_count,
        r.group_order,
        r.generators.join(", ")
    );
    warnings(&mut out, &r.warnings);
    for q in &r.queries {
        let _ = write!(out, "{} ({}): ", q.label, q.point.join(", "));
        match (&q.stabilizer, &q.reason) {
            (Some(s), _) => {
                let gens = if s.generators.is_empty() { "e".to_string() } else { s.generators.join(", ") };
                let _ = writeln!(out, "stabilizer of order {} generated by {gens}", s.order);
            }
            (None, Some(reason)) => {
                let _ = writeln!(out, "{} ({reason})", q.status);
            }
            (None, None) => {
                let _ = writeln!(out, "{}", q.status);
            }
        }
    }
    out
}

pub(crate) fn selftest(r: &SelftestReport) -> String {
    let mut out = String::new();
    for c in &r.checks {
        let _ = writeln!(out, "{} {}: {}", if c.passed { "ok  " } else { "FAIL" }, c.name, c.detail);
    }
    for n in &r.notes {
        let _ = writeln!(out, "note: {n}");
    }
    let _ = writeln!(out, "{}", if r.passed { "selftest passed" } else { "selftest FAILED" });
    out
}

#[cfg(test)]
mod tests {
    use super::group;

    #[test]
    fn groups_are_written_with_multiplicities() {
        assert_eq!(group(&[]), "0");
        assert_eq!(group(&[2]), "Z/2");
        assert_eq!(group(&[2, 2, 4]), "(Z/2)^2 + Z/4");
    }
}
