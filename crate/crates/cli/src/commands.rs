use crate::input::{sorted_profile, CommitteeDocument};
use crate::report::{rat, sorted_view, user_member, user_members, user_values, Report};
use crate::CliError;
use logroll_core::lp::{lp_min_transfer_with, sample_equilibria_with, CoalitionFamily};
use logroll_core::{
    aggregates, all_equilibria_across_aisle, canonical_equilibrium, classify_transfer_pattern,
    critical_member, decision, ex_post_intensities, find_blocking_coalition, is_equilibrium,
    is_stable, is_stable_bruteforce, min_total_transfer, run_selection, scale_committee,
    stability_margin, BlockingDeviation, Committee, Error, PairedProfile, PromiseProfile,
    Rational, SelectionTrace,
};
use serde_json::{json, Map, Value};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SolveMode {
    Canonical,
    Selection,
    Both,
}

#[derive(Debug, Clone)]
pub enum Command {
    Classify,
    Solve {
        mode: SolveMode,
    },
    /// Profiles are in user order.
    Check {
        profile: Vec<Rational>,
        status_quo: Option<Vec<Rational>>,
    },
    Block {
        profile: Vec<Rational>,
        status_quo: Option<Vec<Rational>>,
    },
    Verify {
        samples: usize,
    },
    Sweep {
        lambdas: Vec<Rational>,
    },
}

#[derive(Debug, Clone)]
pub struct Options {
    pub seed: u64,
    pub brute_force_cap: usize,
    pub lp_cap: usize,
}

impl Default for Options {
    fn default() -> Self {
        Options {
            seed: 0,
            brute_force_cap: logroll_core::stability::DEFAULT_BRUTE_FORCE_CAP,
            lp_cap: logroll_core::lp::DEFAULT_LP_CAP,
        }
    }
}

pub fn run(doc: &CommitteeDocument, command: &Command, options: &Options) -> Result<Report, CliError> {
    let committee = doc.committee()?;
    let labels = doc.labels.as_deref();
    let mut report = match command {
        Command::Classify => classify(&committee)?,
        Command::Solve { mode } => solve(&committee, *mode, labels)?,
        Command::Check { profile, status_quo } => {
            let paired = paired(&committee, profile, status_quo.as_ref())?;
            check(&committee, &paired, status_quo.is_some(), options)?
        }
        Command::Block { profile, status_quo } => {
            let paired = paired(&committee, profile, status_quo.as_ref())?;
            block(&committee, &paired)?
        }
        Command::Verify { samples } => verify(&committee, *samples, options)?,
        Command::Sweep { lambdas } => sweep(&committee, lambdas)?,
    };
    report.json["sorted_view"] = sorted_view(&committee, labels);
    Ok(report)
}

fn committee_fields(committee: &Committee) -> Map<String, Value> {
    let mut m = Map::new();
    m.insert("intensities".into(), user_values(committee, committee.intensities()));
    m.insert("kappa".into(), json!(committee.kappa()));
    m.insert("kappa_hat".into(), json!(committee.kappa_hat()));
    m
}

fn paired(
    committee: &Committee,
    profile: &[Rational],
    status_quo: Option<&Vec<Rational>>,
) -> Result<PairedProfile, CliError> {
    let reform = sorted_profile(committee, profile.to_vec())?;
    let status_quo = match status_quo {
        Some(s) => sorted_profile(committee, s.clone())?,
        None => PromiseProfile::zero(committee.size()),
    };
    Ok(PairedProfile::new(reform, status_quo)?)
}

fn classify(committee: &Committee) -> Result<Report, CliError> {
    let agg = aggregates(committee);
    let delta: Map<String, Value> = agg
        .delta_u
        .iter()
        .map(|(&k, v)| (user_member(committee, k).to_string(), rat(v)))
        .collect();
    let across = match all_equilibria_across_aisle(committee) {
        Ok(b) => json!(b),
        Err(Error::KappaTooSmall) => Value::Null,
        Err(e) => return Err(e.into()),
    };
    let mut m = committee_fields(committee);
    m.insert("command".into(), json!("classify"));
    m.insert("opponents".into(), json!(agg.opponents));
    m.insert("regime".into(), json!(agg.regime.name()));
    m.insert("min_total_transfer".into(), rat(&min_total_transfer(committee)));
    m.insert(
        "critical_member".into(),
        json!(critical_member(committee).map(|k| user_member(committee, k))),
    );
    m.insert("all_equilibria_across_aisle".into(), across);
    m.insert(
        "aggregates".into(),
        json!({
            "U_R": rat(&agg.u_r),
            "U_S": rat(&agg.u_s),
            "G_S": rat(&agg.g_s),
            "delta_U": delta,
            "delta_U_kappa_hat": rat(&agg.delta_u_kappa_hat),
            "u_star": agg.u_star.as_ref().map(rat),
            "k_star": agg.k_star.map(|k| user_member(committee, k)),
            "T_star": agg.t_star.as_ref().map(rat),
        }),
    );
    Ok(Report::new(Value::Object(m)).with_scalar_rows())
}

/// Refuses to emit a profile that does not pass its own check.
fn verified(committee: &Committee, r: &PromiseProfile, what: &str) -> Result<(), CliError> {
    let verdict = is_equilibrium(committee, r)?;
    if !verdict.is_equilibrium() {
        return Err(CliError::Verification(format!(
            "{what} profile {r} fails: {:?}",
            verdict.violations
        )));
    }
    Ok(())
}

fn profile_json(committee: &Committee, r: &PromiseProfile) -> Result<Map<String, Value>, CliError> {
    let v = ex_post_intensities(committee, &PairedProfile::reform_only(r.clone()))?;
    let mut m = Map::new();
    m.insert("promises".into(), user_values(committee, r.values()));
    m.insert("ex_post".into(), user_values(committee, v.values()));
    m.insert("total_transfer".into(), rat(&r.total_transfer()));
    m.insert(
        "pattern".into(),
        json!(classify_transfer_pattern(committee, r)?.name()),
    );
    Ok(m)
}

fn trace_json(committee: &Committee, trace: &SelectionTrace) -> Value {
    let steps: Vec<Value> = trace
        .steps
        .iter()
        .map(|s| {
            json!({
                "intensities": user_values(committee, s.intensities.values()),
                "step": rat(&s.step),
                "k1": s.k1,
                "k2": s.k2,
            })
        })
        .collect();
    json!({
        "steps": steps,
        "final_step": trace.final_step.as_ref().map(rat),
        "final_intensities": user_values(committee, trace.final_intensities.values()),
    })
}

fn solve(committee: &Committee, mode: SolveMode, labels: Option<&[String]>) -> Result<Report, CliError> {
    let mut m = committee_fields(committee);
    m.insert("command".into(), json!("solve"));
    let agg = aggregates(committee);
    m.insert("regime".into(), json!(agg.regime.name()));
    m.insert("min_total_transfer".into(), rat(&min_total_transfer(committee)));

    let mut columns: Vec<(&str, Vec<Rational>)> = Vec::new();
    if matches!(mode, SolveMode::Canonical | SolveMode::Both) {
        let r = canonical_equilibrium(committee);
        verified(committee, &r, "canonical")?;
        m.insert("canonical".into(), Value::Object(profile_json(committee, &r)?));
        columns.push(("canonical", committee.to_user(r.values())?));
    }
    if matches!(mode, SolveMode::Selection | SolveMode::Both) {
        let (r, trace) = run_selection(committee);
        verified(committee, &r, "selection")?;
        let mut s = profile_json(committee, &r)?;
        s.insert("trace".into(), trace_json(committee, &trace));
        m.insert("selection".into(), Value::Object(s));
        columns.push(("selection", committee.to_user(r.values())?));
    }

    let intensities = committee.to_user(committee.intensities())?;
    let mut header = vec!["member", "label", "intensity"];
    header.extend(columns.iter().map(|(name, _)| *name));
    let rows = (0..committee.size())
        .map(|k| {
            let mut row = vec![
                (k + 1).to_string(),
                labels.map(|l| l[k].clone()).unwrap_or_default(),
                intensities[k].to_string(),
            ];
            row.extend(columns.iter().map(|(_, values)| values[k].to_string()));
            row
        })
        .collect();
    Ok(Report::new(Value::Object(m)).with_table(&header, rows))
}

fn blocking_json(
    committee: &Committee,
    original: &PairedProfile,
    deviation: &BlockingDeviation,
) -> Result<Value, CliError> {
    if !deviation.verify(committee, original)? {
        return Err(CliError::Verification(
            "blocking deviation failed its replay".into(),
        ));
    }
    Ok(json!({
        "coalition": user_members(committee, deviation.coalition.members()),
        "direction": deviation.direction.to_string(),
        "reform_promises": user_values(committee, deviation.new_profile.reform.values()),
        "status_quo_promises": user_values(committee, deviation.new_profile.status_quo.values()),
    }))
}

fn check(
    committee: &Committee,
    profile: &PairedProfile,
    has_status_quo: bool,
    options: &Options,
) -> Result<Report, CliError> {
    let stable = is_stable(committee, profile)?;
    let enumeration = match is_stable_bruteforce(committee, profile, options.brute_force_cap) {
        Ok(b) => Some(b),
        Err(Error::InstanceTooLarge { .. }) => None,
        Err(e) => return Err(e.into()),
    };
    if enumeration.is_some_and(|b| b != stable) {
        return Err(CliError::Verification(
            "margin test and coalition enumeration disagree".into(),
        ));
    }
    let reduced = profile.reduce_to_reform_contingent();
    let v = ex_post_intensities(committee, profile)?;

    let mut m = committee_fields(committee);
    m.insert("command".into(), json!("check"));
    m.insert("promises".into(), user_values(committee, profile.reform.values()));
    m.insert(
        "status_quo_promises".into(),
        if has_status_quo {
            user_values(committee, profile.status_quo.values())
        } else {
            Value::Null
        },
    );
    m.insert("decision".into(), json!(decision(committee, profile)?.to_string()));
    m.insert("stable".into(), json!(stable));
    m.insert("enumeration_stable".into(), json!(enumeration));
    m.insert("margin".into(), rat(&stability_margin(committee, &reduced)?));
    m.insert("total_transfer".into(), rat(&profile.total_transfer()));
    m.insert("ex_post".into(), user_values(committee, v.values()));
    if has_status_quo {
        m.insert("equilibrium".into(), Value::Null);
        m.insert("pattern".into(), Value::Null);
    } else {
        let verdict = is_equilibrium(committee, &profile.reform)?;
        let violations: Vec<Value> = verdict
            .violations
            .iter()
            .map(|x| {
                json!({
                    "condition": x.condition.name(),
                    "members": user_members(committee, &x.members),
                })
            })
            .collect();
        m.insert("is_equilibrium".into(), json!(verdict.is_equilibrium()));
        m.insert(
            "equilibrium".into(),
            json!({
                "regime": verdict.regime.name(),
                "is_equilibrium": verdict.is_equilibrium(),
                "violations": violations,
            }),
        );
        m.insert(
            "pattern".into(),
            json!(classify_transfer_pattern(committee, &profile.reform)?.name()),
        );
    }
    let blocking = match find_blocking_coalition(committee, profile)? {
        Some(d) => blocking_json(committee, profile, &d)?,
        None => Value::Null,
    };
    m.insert("blocking".into(), blocking);
    Ok(Report::new(Value::Object(m)).with_scalar_rows())
}

fn block(committee: &Committee, profile: &PairedProfile) -> Result<Report, CliError> {
    let deviation = find_blocking_coalition(committee, profile)?;
    let mut m = committee_fields(committee);
    m.insert("command".into(), json!("block"));
    m.insert("stable".into(), json!(deviation.is_none()));
    let mut rows = Vec::new();
    let blocking = match &deviation {
        Some(d) => {
            let j = blocking_json(committee, profile, d)?;
            rows.push(vec![
                "coalition".to_string(),
                user_members(committee, d.coalition.members())
                    .iter()
                    .map(ToString::to_string)
                    .collect::<Vec<_>>()
                    .join(" "),
            ]);
            rows.push(vec!["direction".to_string(), d.direction.to_string()]);
            j
        }
        None => Value::Null,
    };
    m.insert("blocking".into(), blocking);
    let mut report = Report::new(Value::Object(m)).with_scalar_rows();
    report.rows.extend(rows);
    Ok(report)
}

fn verify(committee: &Committee, samples: usize, options: &Options) -> Result<Report, CliError> {
    let closed = min_total_transfer(committee);
    let lp = lp_min_transfer_with(committee, CoalitionFamily::Smallest, options.lp_cap)?;
    let agree = lp.optimum == closed;
    let lp_ok = is_equilibrium(committee, &lp.profile)?.is_equilibrium();
    let drawn = sample_equilibria_with(committee, samples, options.seed, options.lp_cap)?;
    let mut samples_ok = true;
    for r in &drawn {
        samples_ok &= is_equilibrium(committee, r)?.is_equilibrium();
    }

    let mut m = committee_fields(committee);
    m.insert("command".into(), json!("verify"));
    m.insert("regime".into(), json!(aggregates(committee).regime.name()));
    m.insert("closed_form".into(), rat(&closed));
    m.insert("lp_optimum".into(), rat(&lp.optimum));
    m.insert("agree".into(), json!(agree));
    m.insert("lp_profile".into(), user_values(committee, lp.profile.values()));
    m.insert(
        "active_coalitions".into(),
        json!(lp
            .active
            .iter()
            .map(|c| user_members(committee, c.members()))
            .collect::<Vec<_>>()),
    );
    m.insert("seed".into(), json!(options.seed));
    m.insert(
        "samples".into(),
        Value::Array(drawn.iter().map(|r| user_values(committee, r.values())).collect()),
    );
    m.insert("samples_verified".into(), json!(samples_ok));
    if !agree || !lp_ok || !samples_ok {
        return Err(CliError::Verification(format!(
            "closed form {closed}, linear program {}, lp profile accepted {lp_ok}, samples accepted {samples_ok}",
            lp.optimum
        )));
    }
    Ok(Report::new(Value::Object(m)).with_scalar_rows())
}

fn sweep(committee: &Committee, lambdas: &[Rational]) -> Result<Report, CliError> {
    let base = min_total_transfer(committee);
    let mut rows = Vec::new();
    let mut entries = Vec::new();
    for lambda in lambdas {
        let scaled = scale_committee(committee, lambda)?;
        let t = min_total_transfer(&scaled);
        if t != lambda * &base {
            return Err(CliError::Verification(format!(
                "minimum transfer {t} at lambda {lambda} is not {lambda} times {base}"
            )));
        }
        let regime = aggregates(&scaled).regime.name();
        entries.push(json!({
            "lambda": rat(lambda),
            "min_total_transfer": rat(&t),
            "regime": regime,
        }));
        rows.push(vec![lambda.to_string(), t.to_string(), regime.to_string()]);
    }
    let mut m = committee_fields(committee);
    m.insert("command".into(), json!("sweep"));
    m.insert("base_min_total_transfer".into(), rat(&base));
    m.insert("rows".into(), Value::Array(entries));
    Ok(Report::new(Value::Object(m)).with_table(&["lambda", "min_total_transfer", "regime"], rows))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn doc(text: &str) -> CommitteeDocument {
        CommitteeDocument::parse(text).unwrap()
    }

    #[test]
    fn classify_reports_user_indices() {
        let d = doc(r#"{"intensities": [8, -8, 4, 2, -14, 8, 6], "kappa": 3}"#);
        let r = run(&d, &Command::Classify, &Options::default()).unwrap();
        assert_eq!(r.json["regime"], "higher-order-preemption");
        assert_eq!(r.json["aggregates"]["u_star"], "3");
        assert_eq!(r.json["aggregates"]["T_star"], "14");
        // sorted position 4 holds the intensity 4, user member 3
        assert_eq!(r.json["aggregates"]["k_star"], 3);
        assert_eq!(r.json["sorted_view"]["order"], json!([5, 2, 4, 3, 7, 1, 6]));
    }

    #[test]
    fn check_accepts_equilibrium() {
        let d = doc(r#"{"intensities": [-4, 1, 5], "kappa": 2}"#);
        let cmd = Command::Check {
            profile: crate::input::parse_profile("3,0,-3").unwrap(),
            status_quo: None,
        };
        let r = run(&d, &cmd, &Options::default()).unwrap();
        assert_eq!(r.json["stable"], true);
        assert_eq!(r.json["is_equilibrium"], true);
        assert_eq!(r.json["blocking"], Value::Null);
    }

    #[test]
    fn model_errors_map_to_exit_three() {
        let d = doc(r#"{"intensities": [-4, 1, 2], "kappa": 2}"#);
        let e = run(&d, &Command::Classify, &Options::default()).unwrap_err();
        assert_eq!(e.exit_code(), 3);
        let d = doc(r#"{"intensities": [-4, 1, 5], "kappa": 2}"#);
        let cmd = Command::Check {
            profile: crate::input::parse_profile("1,0,0").unwrap(),
            status_quo: None,
        };
        assert_eq!(run(&d, &cmd, &Options::default()).unwrap_err().exit_code(), 3);
    }

    #[test]
    fn lp_cap_maps_to_its_own_code() {
        let d = doc(r#"{"intensities": [-4, 1, 5], "kappa": 2}"#);
        let options = Options {
            lp_cap: 2,
            ..Options::default()
        };
        let e = run(&d, &Command::Verify { samples: 1 }, &options).unwrap_err();
        assert_eq!(e.exit_code(), 5);
    }
}
