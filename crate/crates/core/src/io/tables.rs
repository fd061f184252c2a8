use std::fmt::Write;

use crate::diagnostics::{CriterionReport, TrajectoryDiagnostics, Verdict};
use crate::solver::{EnergyLedger, LEDGER_COLUMNS};

/// Float formatting used in every text output: 17 significant digits.
pub fn fmt_f(x: f64) -> String {
    // `+ 0.0` turns -0 into +0
    format!("{:.16e}", x + 0.0)
}

/// `# `-prefixed copy of a configuration text.
pub fn echo_lines(config: &str) -> String {
    config.lines().map(|l| format!("# {l}\n")).collect()
}

fn opt(x: Option<f64>) -> String {
    x.map(fmt_f).unwrap_or_else(|| "nan".into())
}

/// Energy ledger as CSV, columns `LEDGER_COLUMNS`.
pub fn ledger_csv(ledger: &EnergyLedger, echo: &str) -> String {
    let mut out = echo_lines(echo);
    out.push_str(&LEDGER_COLUMNS.join(","));
    out.push('\n');
    for r in ledger.rows() {
        let cols = [
            fmt_f(r.t),
            fmt_f(r.kinetic),
            fmt_f(r.magnetic),
            fmt_f(r.diss_u),
            fmt_f(r.diss_b),
            fmt_f(r.cross_helicity),
            opt(r.residual),
        ];
        out.push_str(&cols.join(","));
        out.push('\n');
    }
    out
}

/// Column names of [`diagnostics_csv`] for shells `-1 ..= q_max`.
pub fn diagnostics_columns(q_max: i32) -> Vec<String> {
    let mut cols: Vec<String> = ["t", "Lambda_r", "Q", "f", "hs_energy", "low_besov"]
        .iter()
        .map(|s| s.to_string())
        .collect();
    for prefix in ["u_inf", "u_r", "b_r", "curl_inf"] {
        cols.extend((-1..=q_max).map(|q| format!("{prefix}_q{q}")));
    }
    cols
}

/// One row per snapshot: `t, Λ_r, Q, f, H^s energy, low-mode Besov norm`,
/// then per-shell `‖u_q‖_∞`, `‖u_q‖_r`, `‖b_q‖_r`, `‖Δ_q curl u‖_∞`.
pub fn diagnostics_csv(diag: &TrajectoryDiagnostics, echo: &str) -> String {
    let mut out = echo_lines(echo);
    out.push_str(&diagnostics_columns(diag.q_max()).join(","));
    out.push('\n');
    for r in &diag.records {
        let mut cols = vec![
            fmt_f(r.t),
            fmt_f(r.lambda),
            r.q_index.to_string(),
            fmt_f(r.f_value),
            fmt_f(r.hs_energy),
            fmt_f(r.low_besov),
        ];
        for v in [&r.shell_inf_norms, &r.shell_r_norms, &r.shell_r_norms_b, &r.curl_inf_norms] {
            cols.extend(v.iter().map(|&x| fmt_f(x)));
        }
        out.push_str(&cols.join(","));
        out.push('\n');
    }
    out
}

fn verdict(v: Verdict) -> &'static str {
    v.label()
}

fn flag(b: bool) -> &'static str {
    if b {
        "true"
    } else {
        "false"
    }
}

/// Structured text report, one record per line as
/// `<kind>\t<key>=<value>\t...`. Kinds and their keys, in order:
///
/// * `config`: r, l, s, c_r, eps_depth, c_cap, nu, mu, t_end, window_start, q_max
/// * `threshold_time`: q, t
/// * `criterion`: q, value
/// * `criterion_summary`: top_shell, at_top, max_top4, slope_top4, threshold, verdict
/// * `condition`: id, value, threshold, verdict, description
/// * `condition_shell`: id, q, value
/// * `condition_ladder`: id, eps, max_top4, at_top
/// * `ordering`: q, threshold_time, gated, from_threshold_time, smallest_eps, slack, first_holds, second_holds
/// * `lemma`: q, six chain terms t0..t5, five step ratios k0..k4, overall
/// * `lemma_summary`: pointwise_max (steps k0..k3), closing (k4 on top-shell
///   maxima), overall (top-shell maxima), max_ratio, c_cap, within_cap
/// * `gronwall`: t, hs_energy, rate, f, c_emp
/// * `gronwall_summary`: max_c_emp, violations
/// * `q_series`: t, Q, Q_bar
pub fn report_text(rep: &CriterionReport, echo: &str) -> String {
    let mut o = echo_lines(echo);
    let c = &rep.config;
    let _ = writeln!(
        o,
        "config\tr={}\tl={}\ts={}\tc_r={}\teps_depth={}\tc_cap={}\tnu={}\tmu={}\tt_end={}\twindow_start={}\tq_max={}",
        fmt_f(c.r),
        fmt_f(c.l),
        fmt_f(c.s),
        fmt_f(c.c_r),
        c.eps_depth,
        fmt_f(c.c_cap),
        fmt_f(rep.nu),
        fmt_f(rep.mu),
        fmt_f(rep.t_end),
        fmt_f(rep.window_start),
        rep.q_max
    );
    for (q, t) in &rep.threshold_times {
        let _ = writeln!(o, "threshold_time\tq={q}\tt={}", fmt_f(*t));
    }
    for (i, v) in rep.criterion.per_q.iter().enumerate() {
        let _ = writeln!(o, "criterion\tq={}\tvalue={}", i as i32 - 1, fmt_f(*v));
    }
    let s = &rep.criterion.surrogate;
    let _ = writeln!(
        o,
        "criterion_summary\ttop_shell={}\tat_top={}\tmax_top4={}\tslope_top4={}\tthreshold={}\tverdict={}",
        s.top_shell,
        fmt_f(s.at_top),
        fmt_f(s.max_top4),
        fmt_f(s.slope_top4),
        fmt_f(c.c_r),
        verdict(rep.criterion_verdict)
    );
    for cond in &rep.conditions {
        let _ = writeln!(
            o,
            "condition\tid={}\tvalue={}\tthreshold={}\tverdict={}\tdescription={}",
            cond.id,
            opt(cond.value),
            fmt_f(cond.threshold),
            verdict(cond.verdict),
            cond.description
        );
        if let Some(per_q) = &cond.per_q {
            for (i, v) in per_q.per_q.iter().enumerate() {
                let _ = writeln!(o, "condition_shell\tid={}\tq={}\tvalue={}", cond.id, i as i32 - 1, fmt_f(*v));
            }
        }
        for rung in &cond.ladder {
            let _ = writeln!(
                o,
                "condition_ladder\tid={}\teps={}\tmax_top4={}\tat_top={}",
                cond.id,
                fmt_f(rung.eps),
                fmt_f(rung.integrals.surrogate.max_top4),
                fmt_f(rung.integrals.surrogate.at_top)
            );
        }
    }
    for r in &rep.ordering {
        let second = match r.second_holds {
            Some(b) => flag(b),
            None => "n/a",
        };
        let _ = writeln!(
            o,
            "ordering\tq={}\tthreshold_time={}\tgated={}\tfrom_threshold_time={}\tsmallest_eps={}\tslack={}\tfirst_holds={}\tsecond_holds={}",
            r.q,
            fmt_f(r.threshold_time),
            fmt_f(r.gated),
            fmt_f(r.from_threshold_time),
            fmt_f(r.smallest_eps),
            fmt_f(r.slack),
            flag(r.first_holds),
            second
        );
    }
    for r in &rep.lemma.rows {
        let _ = write!(o, "lemma\tq={}", r.q);
        for (i, t) in r.terms.iter().enumerate() {
            let _ = write!(o, "\tt{i}={}", fmt_f(*t));
        }
        for (i, k) in r.ratios.iter().enumerate() {
            let _ = write!(o, "\tk{i}={}", fmt_f(*k));
        }
        let _ = writeln!(o, "\toverall={}", fmt_f(r.overall));
    }
    let _ = writeln!(
        o,
        "lemma_summary\tpointwise_max={}\tclosing={}\toverall={}\tmax_ratio={}\tc_cap={}\twithin_cap={}",
        fmt_f(rep.lemma.pointwise_max()),
        fmt_f(rep.lemma.closing),
        fmt_f(rep.lemma.overall),
        fmt_f(rep.lemma.max_ratio()),
        fmt_f(rep.lemma.c_cap),
        flag(rep.lemma.within_cap())
    );
    for g in &rep.gronwall.rows {
        let _ = writeln!(
            o,
            "gronwall\tt={}\ths_energy={}\trate={}\tf={}\tc_emp={}",
            fmt_f(g.t),
            fmt_f(g.hs_energy),
            fmt_f(g.rate),
            fmt_f(g.f_value),
            fmt_f(g.c_emp)
        );
    }
    let _ = writeln!(
        o,
        "gronwall_summary\tmax_c_emp={}\tviolations={}",
        fmt_f(rep.gronwall.max_constant()),
        rep.gronwall.violations.len()
    );
    for (t, q, qb) in &rep.q_series {
        let _ = writeln!(o, "q_series\tt={}\tQ={q}\tQ_bar={qb}", fmt_f(*t));
    }
    o
}

/// Plot-ready CSV companions of a report as `(file suffix, contents)`.
pub fn report_companions(rep: &CriterionReport, echo: &str) -> Vec<(&'static str, String)> {
    let head = echo_lines(echo);
    let mut shells = head.clone();
    shells.push_str("q,threshold_time,criterion,cond1,cond4,cond5,gated,from_threshold_time,smallest_eps\n");
    let per = |id: u8, i: usize| {
        rep.conditions
            .iter()
            .find(|c| c.id == id)
            .and_then(|c| c.per_q.as_ref())
            .map(|p| p.per_q[i])
            .unwrap_or(f64::NAN)
    };
    for (i, v) in rep.criterion.per_q.iter().enumerate() {
        let o = &rep.ordering[i];
        let _ = writeln!(
            shells,
            "{},{},{},{},{},{},{},{},{}",
            i as i32 - 1,
            fmt_f(o.threshold_time),
            fmt_f(*v),
            fmt_f(per(1, i)),
            fmt_f(per(4, i)),
            fmt_f(per(5, i)),
            fmt_f(o.gated),
            fmt_f(o.from_threshold_time),
            fmt_f(o.smallest_eps)
        );
    }
    let mut gron = head.clone();
    gron.push_str("t,hs_energy,rate,f,c_emp\n");
    for g in &rep.gronwall.rows {
        let _ = writeln!(
            gron,
            "{},{},{},{},{}",
            fmt_f(g.t),
            fmt_f(g.hs_energy),
            fmt_f(g.rate),
            fmt_f(g.f_value),
            fmt_f(g.c_emp)
        );
    }
    let mut lemma = head.clone();
    lemma.push_str("q,t0,t1,t2,t3,t4,t5,k0,k1,k2,k3,k4,overall\n");
    for r in &rep.lemma.rows {
        let cols: Vec<String> = std::iter::once(r.q.to_string())
            .chain(r.terms.iter().map(|&x| fmt_f(x)))
            .chain(r.ratios.iter().map(|&x| fmt_f(x)))
            .chain(std::iter::once(fmt_f(r.overall)))
            .collect();
        let _ = writeln!(lemma, "{}", cols.join(","));
    }
    let mut qs = head;
    qs.push_str("t,Q,Q_bar\n");
    for (t, q, qb) in &rep.q_series {
        let _ = writeln!(qs, "{},{q},{qb}", fmt_f(*t));
    }
    vec![("shells.csv", shells), ("gronwall.csv", gron), ("lemma.csv", lemma), ("q_series.csv", qs)]
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn seventeen_digits() {
        let s = fmt_f(0.1);
        assert_eq!(s, "1.0000000000000001e-1");
        assert_eq!(s.parse::<f64>().unwrap(), 0.1);
        assert_eq!(fmt_f(1.0 / 3.0).parse::<f64>().unwrap(), 1.0 / 3.0);
        assert_eq!(echo_lines("a = 1\nb = 2"), "# a = 1\n# b = 2\n");
    }
}
