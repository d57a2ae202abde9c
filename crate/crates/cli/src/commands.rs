//! Subcommand implementations.

use std::io::Write;
use std::process::ExitCode;

use qgheat_core::chebyshev::{cheb_coeff_eval, cheb_pair, cheb_zeros};
use qgheat_core::contractivity::{
    dimension_estimate, envelope_f, envelope_g_o2, l1_linf_envelope, EnvelopeParams,
};
use qgheat_core::error::Error;
use qgheat_core::hypercontractivity::{
    constant_c, constant_d, dn_log_upper_bound, dn_upper_bound, hyper_gap_sum,
    log_sobolev_constant, q_exponent_path, r_p, rp_crossing_scan, tau_cubic, tau_linear,
    tau_series, HypParams, TauResult,
};
use qgheat_core::interval::CertifiedValue;
use qgheat_core::levelmodel::{
    check_hyper_chain_at, check_spectral_gap, check_ultra, random_level_vectors,
};
use qgheat_core::rational::{from_int, rational, Rational};
use qgheat_core::spectrum::{
    bound_reports_up_to, spectral_lines_up_to, Family, GroupKind,
};
use rayon::prelude::*;

use crate::output::{emit, Record, Value};
use crate::{Cli, Command, EnvelopeKind, GroupArg, GroupOpts, Suite, TauMethodArg};

pub fn exit_code_for(e: &Error) -> u8 {
    match e {
        Error::ToleranceNotAchieved(_) => 3,
        _ => 2,
    }
}

fn kind_of(group: GroupArg, n: u64) -> Result<GroupKind, Error> {
    match group {
        GroupArg::O => GroupKind::free_orthogonal(n),
        GroupArg::S => GroupKind::free_permutation(n),
    }
}

fn group_name(kind: GroupKind) -> &'static str {
    match kind.family() {
        Family::FreeOrthogonal => "O",
        Family::FreePermutation => "S",
    }
}

fn resolve_kind(opts: &GroupOpts) -> Result<GroupKind, Error> {
    match opts.group {
        GroupArg::O if opts.c.is_some() => Err(Error::InvalidParameter(
            "--C applies to the S family; use --D for O".into(),
        )),
        GroupArg::S if opts.d.is_some() => Err(Error::InvalidParameter(
            "--D applies to the O family; use --C for S".into(),
        )),
        group => kind_of(group, opts.n),
    }
}

/// Resolves the norm-comparison constant, defaulting to the certified D_N
/// upper bound for O_N⁺ (N > 2) and to the lower bound 1 otherwise, with a
/// banner on stderr whenever a default is used.
fn resolve_constant(opts: &GroupOpts, kind: GroupKind) -> Result<f64, Error> {
    match kind.family() {
        Family::FreeOrthogonal => match opts.d {
            Some(d) => Ok(d),
            None => {
                if kind.n() > 2 {
                    let bound = dn_upper_bound(kind.n() as f64, 1e-12)?;
                    eprintln!(
                        "warning: no --D given; using the certified upper bound D = {:.9} for {}",
                        bound.hi,
                        kind
                    );
                    Ok(bound.hi)
                } else {
                    eprintln!(
                        "warning: no --D given and the product bound needs N > 2; \
                         using D = 1 for O_2+ (lower-bound-only)"
                    );
                    Ok(1.0)
                }
            }
        },
        Family::FreePermutation => match opts.c {
            Some(c) => Ok(c),
            None => {
                eprintln!(
                    "warning: C_N has no known formula; using the lower bound C = 1 for {} \
                     (outputs are lower-bound-only)",
                    kind
                );
                Ok(1.0)
            }
        },
    }
}

/// Exact spectral sweeps cost O(smax²) big-integer work; keep requests at
/// desk scale.
fn check_smax(smax: u64) -> Result<(), Error> {
    if smax > 5000 {
        return Err(Error::InvalidParameter(format!(
            "smax = {smax} is beyond the supported sweep size (max 5000)"
        )));
    }
    Ok(())
}

fn time_grid(tmin: f64, tmax: f64, points: usize, linear: bool) -> Result<Vec<f64>, Error> {
    if !(tmin > 0.0 && tmin < tmax) {
        return Err(Error::InvalidParameter(format!(
            "need 0 < tmin < tmax, got [{tmin}, {tmax}]"
        )));
    }
    if points < 2 {
        return Err(Error::InvalidParameter("need at least 2 grid points".into()));
    }
    let n = (points - 1) as f64;
    Ok((0..points)
        .map(|i| {
            if linear {
                tmin + (tmax - tmin) * i as f64 / n
            } else {
                (tmin.ln() + (tmax.ln() - tmin.ln()) * i as f64 / n).exp()
            }
        })
        .collect())
}

fn g_tolerance(d: f64, t: f64) -> f64 {
    1e-9 * 4.0 * d * d * (1.0 + (3.0 / t).powf(1.5))
}

fn tau_by(
    method: TauMethodArg,
    kind: GroupKind,
    params: &HypParams,
    tol: f64,
    allow_unverified: bool,
) -> Result<TauResult, Error> {
    match method {
        TauMethodArg::Series => tau_series(kind, params, tol),
        TauMethodArg::Cubic => tau_cubic(kind, params, tol),
        TauMethodArg::Linear => tau_linear(kind, params, allow_unverified),
        TauMethodArg::All => unreachable!("expanded by the caller"),
    }
}

pub fn run(cli: Cli) -> Result<ExitCode, Error> {
    let mut records = Vec::new();
    let mut failed = false;

    match cli.command {
        Command::Spectrum { group, smax } => {
            check_smax(smax)?;
            let kind = resolve_kind(&group)?;
            for line in spectral_lines_up_to(kind, smax) {
                records.push(
                    Record::new("spectrum")
                        .input("group", Value::Str(group_name(kind).into()))
                        .input("N", Value::UInt(kind.n()))
                        .result("s", Value::UInt(line.s))
                        .result("lambda", Value::rational(&line.lambda))
                        .result("dim", Value::Str(line.dim.to_string()))
                        .result("mult", Value::Str(line.mult.to_string())),
                );
            }
        }

        Command::Envelope {
            group,
            kind: envelope_kind,
            l1,
            tmin,
            tmax,
            points,
            linear,
        } => {
            let kind = resolve_kind(&group)?;
            let constant = resolve_constant(&group, kind)?;
            if envelope_kind == EnvelopeKind::G
                && (kind.family() != Family::FreeOrthogonal || kind.n() != 2)
            {
                return Err(Error::InvalidParameter(
                    "the g envelope is specific to O_2+".into(),
                ));
            }
            let params = EnvelopeParams::for_group(kind, constant)?;
            for t in time_grid(tmin, tmax, points, linear)? {
                let t_eff = if l1 { 0.5 * t } else { t };
                let value = match envelope_kind {
                    EnvelopeKind::F => envelope_f(&params, t_eff)?,
                    EnvelopeKind::G => envelope_g_o2(constant, t_eff, g_tolerance(constant, t_eff))?,
                };
                records.push(
                    Record::new("envelope")
                        .input("group", Value::Str(group_name(kind).into()))
                        .input("N", Value::UInt(kind.n()))
                        .input("constant", Value::Float(constant))
                        .input(
                            "kind",
                            Value::Str(
                                match (envelope_kind, l1) {
                                    (EnvelopeKind::F, false) => "f",
                                    (EnvelopeKind::F, true) => "f_l1",
                                    (EnvelopeKind::G, false) => "g",
                                    (EnvelopeKind::G, true) => "g_l1",
                                }
                                .into(),
                            ),
                        )
                        .result("t", Value::Float(t))
                        .result("value", Value::enclosure(&value)),
                );
            }
        }

        Command::Tau {
            group,
            p,
            method,
            tol,
            allow_unverified,
        } => {
            let kind = resolve_kind(&group)?;
            let constant = resolve_constant(&group, kind)?;
            let params = HypParams::new(p, constant)?;
            let methods: Vec<TauMethodArg> = match method {
                TauMethodArg::All => vec![
                    TauMethodArg::Series,
                    TauMethodArg::Cubic,
                    TauMethodArg::Linear,
                ],
                m => vec![m],
            };
            for m in methods {
                if m == TauMethodArg::Linear && p < 4.0 && !allow_unverified && method == TauMethodArg::All {
                    eprintln!(
                        "note: skipping the linear method (certified for p >= 4 only; \
                         pass --allow-unverified to include it)"
                    );
                    continue;
                }
                let result = tau_by(m, kind, &params, tol, allow_unverified)?;
                let mut record = Record::new("tau")
                    .input("group", Value::Str(group_name(kind).into()))
                    .input("N", Value::UInt(kind.n()))
                    .input("p", Value::Float(p))
                    .input("constant", Value::Float(constant))
                    .result("method", Value::Str(result.method.name().into()))
                    .result("tau", Value::enclosure(&result.tau));
                if m == TauMethodArg::Linear && p < 4.0 {
                    record = record.uncertified();
                }
                records.push(record);
            }
        }

        Command::Rp {
            family,
            p,
            tol,
            scan,
            pmin,
            pmax,
            steps,
        } => {
            let fam = match family {
                GroupArg::O => Family::FreeOrthogonal,
                GroupArg::S => Family::FreePermutation,
            };
            if scan {
                let bracket = rp_crossing_scan(fam, pmin, pmax, steps)?;
                let mut record = Record::new("rp_scan")
                    .input("family", Value::Str(fam.short_name().into()))
                    .input("pmin", Value::Float(pmin))
                    .input("pmax", Value::Float(pmax))
                    .input("steps", Value::UInt(steps as u64))
                    .result("crossing_found", Value::Bool(bracket.is_some()));
                if let Some((below, above)) = bracket {
                    record = record
                        .result("p_above_one", Value::Float(below))
                        .result("p_below_one", Value::Float(above));
                }
                records.push(record);
            } else {
                let p = p.expect("clap enforces --p unless --scan");
                let value = r_p(fam, p, tol)?;
                records.push(
                    Record::new("rp")
                        .input("family", Value::Str(fam.short_name().into()))
                        .input("p", Value::Float(p))
                        .result("rp", Value::enclosure(&value)),
                );
            }
        }

        Command::Dn { n, tol } => {
            let bound = dn_upper_bound(n, tol)?;
            let log_bound = dn_log_upper_bound(n, tol)?;
            records.push(
                Record::new("dn")
                    .input("N", Value::Float(n))
                    .result("bound", Value::enclosure(&bound))
                    .result("n_log_bound", Value::enclosure(&log_bound.scale(n))),
            );
        }

        Command::Logsob { group, tol } => {
            let kind = resolve_kind(&group)?;
            let constant = resolve_constant(&group, kind)?;
            let report = log_sobolev_constant(kind, constant, tol)?;
            records.push(
                Record::new("logsob")
                    .input("group", Value::Str(group_name(kind).into()))
                    .input("N", Value::UInt(kind.n()))
                    .input("constant", Value::Float(constant))
                    .result("c", Value::enclosure(&report.constant))
                    .result("tau_series", Value::enclosure(&report.tau_series.tau))
                    .result("tau_cubic", Value::enclosure(&report.tau_cubic.tau))
                    .result("tau_linear", Value::enclosure(&report.tau_linear.tau)),
            );
        }

        Command::Qpath { t0, t, points } => {
            let ts = match t {
                Some(t) => vec![t],
                None => {
                    if points < 2 {
                        return Err(Error::InvalidParameter("need at least 2 points".into()));
                    }
                    (0..points)
                        .map(|i| t0 * i as f64 / (points - 1) as f64)
                        .collect()
                }
            };
            for t in ts {
                let q = q_exponent_path(t, t0)?;
                records.push(
                    Record::new("qpath")
                        .input("t0", Value::Float(t0))
                        .result("t", Value::Float(t))
                        .result("q", Value::Float(q)),
                );
            }
        }

        Command::Dim {
            group,
            envelope,
            tmin,
            tmax,
            points,
        } => {
            let kind = resolve_kind(&group)?;
            let constant = resolve_constant(&group, kind)?;
            let dimension = match envelope {
                EnvelopeKind::F => {
                    let params = EnvelopeParams::for_group(kind, constant)?;
                    dimension_estimate(|t| l1_linf_envelope(&params, t), tmin, tmax, points)?
                }
                EnvelopeKind::G => {
                    if kind.family() != Family::FreeOrthogonal || kind.n() != 2 {
                        return Err(Error::InvalidParameter(
                            "the g envelope is specific to O_2+".into(),
                        ));
                    }
                    dimension_estimate(
                        |t| envelope_g_o2(constant, 0.5 * t, g_tolerance(constant, 0.5 * t)),
                        tmin,
                        tmax,
                        points,
                    )?
                }
            };
            records.push(
                Record::new("dim")
                    .input("group", Value::Str(group_name(kind).into()))
                    .input("N", Value::UInt(kind.n()))
                    .input(
                        "envelope",
                        Value::Str(if envelope == EnvelopeKind::F { "f" } else { "g" }.into()),
                    )
                    .input("tmin", Value::Float(tmin))
                    .input("tmax", Value::Float(tmax))
                    .result("dimension", Value::Float(dimension)),
            );
        }

        Command::Check {
            suite,
            group,
            n,
            smax,
            samples,
            seed,
            p,
            d,
            c,
        } => {
            check_smax(smax)?;
            let (suite_records, all_hold) =
                run_suite(suite, group, n, smax, samples, seed, p, d, c)?;
            records = suite_records;
            failed = !all_hold;
        }

        Command::Sweep {
            group,
            n,
            p,
            t,
            method,
            tol,
            d,
            c,
        } => {
            if n.is_empty() || p.is_empty() {
                return Err(Error::InvalidParameter(
                    "sweep needs at least one N and one p".into(),
                ));
            }
            let constant = match (group, d, c) {
                (GroupArg::O, Some(d), _) => d,
                (GroupArg::S, _, Some(c)) => c,
                _ => {
                    eprintln!("warning: no constant given; sweeping with constant = 1");
                    1.0
                }
            };
            let methods: Vec<TauMethodArg> = match method {
                TauMethodArg::All => vec![
                    TauMethodArg::Series,
                    TauMethodArg::Cubic,
                    TauMethodArg::Linear,
                ],
                m => vec![m],
            };
            let mut grid = Vec::new();
            for &n_value in &n {
                for &p_value in &p {
                    grid.push((n_value, p_value));
                }
            }
            let pool = thread_pool();
            let results: Vec<Result<Vec<Record>, Error>> = pool.install(|| {
                grid.par_iter()
                    .map(|&(n_value, p_value)| {
                        let kind = kind_of(group, n_value)?;
                        let params = HypParams::new(p_value, constant)?;
                        let mut rows = Vec::new();
                        for &m in &methods {
                            if m == TauMethodArg::Linear && p_value < 4.0 {
                                continue;
                            }
                            let result = tau_by(m, kind, &params, tol, false)?;
                            rows.push(
                                Record::new("sweep_tau")
                                    .input("group", Value::Str(group_name(kind).into()))
                                    .input("N", Value::UInt(n_value))
                                    .input("p", Value::Float(p_value))
                                    .input("constant", Value::Float(constant))
                                    .result("method", Value::Str(result.method.name().into()))
                                    .result("tau", Value::enclosure(&result.tau)),
                            );
                        }
                        for &t_value in &t {
                            let gap = hyper_gap_sum(kind, &params, t_value, 1e-8)?;
                            rows.push(
                                Record::new("sweep_gap")
                                    .input("group", Value::Str(group_name(kind).into()))
                                    .input("N", Value::UInt(n_value))
                                    .input("p", Value::Float(p_value))
                                    .input("constant", Value::Float(constant))
                                    .result("t", Value::Float(t_value))
                                    .result("gap_sum", Value::enclosure(&gap)),
                            );
                        }
                        Ok(rows)
                    })
                    .collect()
            });
            for r in results {
                records.extend(r?);
            }
        }
    }

    let stdout = std::io::stdout();
    let mut lock = stdout.lock();
    emit(&records, cli.format, &mut lock)
        .and_then(|()| lock.flush())
        .map_err(|e| Error::InvalidParameter(format!("failed to write output: {e}")))?;
    Ok(if failed {
        ExitCode::from(3)
    } else {
        ExitCode::SUCCESS
    })
}

fn thread_pool() -> rayon::ThreadPool {
    let mut builder = rayon::ThreadPoolBuilder::new();
    if let Ok(value) = std::env::var("QGHEAT_THREADS") {
        if let Ok(threads) = value.parse::<usize>() {
            if threads >= 1 {
                builder = builder.num_threads(threads);
            }
        }
    }
    builder.build().expect("thread pool")
}

#[allow(clippy::too_many_arguments)]
fn run_suite(
    suite: Suite,
    group: Option<GroupArg>,
    n: Option<u64>,
    smax: u64,
    samples: usize,
    seed: u64,
    p: f64,
    d: Option<f64>,
    c: Option<f64>,
) -> Result<(Vec<Record>, bool), Error> {
    let mut records = Vec::new();
    let mut all_hold = true;

    let default_kinds = || -> Result<Vec<GroupKind>, Error> {
        match (group, n) {
            (Some(g), Some(n)) => Ok(vec![kind_of(g, n)?]),
            (Some(GroupArg::O), None) => Ok([2u64, 3, 5].iter().map(|&n| kind_of(GroupArg::O, n).unwrap()).collect()),
            (Some(GroupArg::S), None) => Ok([4u64, 5, 9].iter().map(|&n| kind_of(GroupArg::S, n).unwrap()).collect()),
            (None, _) => Ok(vec![
                kind_of(GroupArg::O, 2)?,
                kind_of(GroupArg::O, 3)?,
                kind_of(GroupArg::O, 5)?,
                kind_of(GroupArg::S, 4)?,
                kind_of(GroupArg::S, 5)?,
                kind_of(GroupArg::S, 9)?,
            ]),
        }
    };
    let constant_for = |kind: GroupKind| -> f64 {
        match kind.family() {
            Family::FreeOrthogonal => d.unwrap_or(1.0),
            Family::FreePermutation => c.unwrap_or(1.0),
        }
    };

    match suite {
        Suite::Chebyshev => {
            let two = from_int(2);
            let special_max = smax.min(500);
            let mut holds = true;
            for s in 0..=special_max {
                let (value, derivative) = cheb_pair(s, &two);
                let expected_value = from_int(s as i64 + 1);
                let expected_derivative = rational((s * (s + 1) * (s + 2)) as i64, 6);
                holds &= value == expected_value && derivative == expected_derivative;
            }
            all_hold &= holds;
            records.push(
                Record::new("check")
                    .input("suite", Value::Str("chebyshev".into()))
                    .result("test", Value::Str("special_values_at_2".into()))
                    .result("smax", Value::UInt(special_max))
                    .result("holds", Value::Bool(holds)),
            );

            let mut holds = true;
            let mut cases = 0u64;
            for x in [rational(3, 2), rational(-7, 5), from_int(9)] {
                for s in 0..=40u64 {
                    holds &= cheb_pair(s, &x).0 == cheb_coeff_eval(s, &x);
                    cases += 1;
                }
            }
            all_hold &= holds;
            records.push(
                Record::new("check")
                    .input("suite", Value::Str("chebyshev".into()))
                    .result("test", Value::Str("recurrence_vs_coefficients".into()))
                    .result("cases", Value::UInt(cases))
                    .result("holds", Value::Bool(holds)),
            );

            let zeros_max = smax.min(64);
            let eps = Rational::new(1.into(), 1_000_000.into());
            let two_r = from_int(2);
            let mut holds = true;
            let mut previous: Option<Vec<qgheat_core::RootEnclosure>> = None;
            for s in 1..=zeros_max {
                let zeros = cheb_zeros(s, &eps)?;
                holds &= zeros.len() == s as usize;
                holds &= zeros
                    .iter()
                    .all(|e| e.lo >= -two_r.clone() && e.hi <= two_r);
                if s <= smax.min(41) {
                    if let Some(inner) = &previous {
                        for (j, e) in inner.iter().enumerate() {
                            holds &= zeros[j].hi < e.lo && e.hi < zeros[j + 1].lo;
                        }
                    }
                    previous = Some(zeros);
                }
            }
            all_hold &= holds;
            records.push(
                Record::new("check")
                    .input("suite", Value::Str("chebyshev".into()))
                    .result("test", Value::Str("zeros_in_range_and_interlacing".into()))
                    .result("smax", Value::UInt(zeros_max))
                    .result("holds", Value::Bool(holds)),
            );
        }

        Suite::Bounds => {
            let kinds: Vec<GroupKind> = match (group, n) {
                (Some(g), Some(n)) => vec![kind_of(g, n)?],
                (Some(GroupArg::O), None) => (2..=20).map(|n| kind_of(GroupArg::O, n).unwrap()).collect(),
                (Some(GroupArg::S), None) => (4..=20).map(|n| kind_of(GroupArg::S, n).unwrap()).collect(),
                (None, _) => (2..=20)
                    .map(|n| kind_of(GroupArg::O, n).unwrap())
                    .chain((4..=20).map(|n| kind_of(GroupArg::S, n).unwrap()))
                    .collect(),
            };
            let per_level = kinds.len() == 1;
            for kind in kinds {
                let reports = bound_reports_up_to(kind, smax);
                if per_level {
                    let lines = spectral_lines_up_to(kind, smax);
                    for (report, line) in reports.iter().zip(&lines[1..]) {
                        all_hold &= report.holds;
                        records.push(
                            Record::new("check")
                                .input("suite", Value::Str("bounds".into()))
                                .input("group", Value::Str(group_name(kind).into()))
                                .input("N", Value::UInt(kind.n()))
                                .result("s", Value::UInt(line.s))
                                .result("lower", Value::rational(&report.lower))
                                .result("minus_lambda", Value::rational(&-line.lambda.clone()))
                                .result("upper", Value::Str(report.upper.to_string()))
                                .result("upper_finite", Value::Bool(report.upper_finite))
                                .result("holds", Value::Bool(report.holds)),
                        );
                    }
                } else {
                    let failures = reports.iter().filter(|r| !r.holds).count();
                    all_hold &= failures == 0;
                    records.push(
                        Record::new("check")
                            .input("suite", Value::Str("bounds".into()))
                            .input("group", Value::Str(group_name(kind).into()))
                            .input("N", Value::UInt(kind.n()))
                            .result("smax", Value::UInt(smax))
                            .result("failures", Value::UInt(failures as u64))
                            .result("holds", Value::Bool(failures == 0)),
                    );
                }
            }
        }

        Suite::Gap => {
            let kinds = default_kinds()?;
            let vectors = random_level_vectors(seed, samples);
            for kind in kinds {
                let failures = vectors
                    .iter()
                    .filter(|v| !check_spectral_gap(kind, v).holds)
                    .count();
                all_hold &= failures == 0;
                records.push(
                    Record::new("check")
                        .input("suite", Value::Str("gap".into()))
                        .input("group", Value::Str(group_name(kind).into()))
                        .input("N", Value::UInt(kind.n()))
                        .input("samples", Value::UInt(samples as u64))
                        .input("seed", Value::UInt(seed))
                        .result("failures", Value::UInt(failures as u64))
                        .result("holds", Value::Bool(failures == 0)),
                );
            }
        }

        Suite::Ultra => {
            let kinds = default_kinds()?;
            let vectors = random_level_vectors(seed, samples);
            let times = [0.1, 1.0, 10.0];
            for kind in kinds {
                let constant = constant_for(kind);
                let mut failures = 0usize;
                for v in &vectors {
                    for t in times {
                        if !check_ultra(kind, v, t, constant)?.holds {
                            failures += 1;
                        }
                    }
                }
                all_hold &= failures == 0;
                records.push(
                    Record::new("check")
                        .input("suite", Value::Str("ultra".into()))
                        .input("group", Value::Str(group_name(kind).into()))
                        .input("N", Value::UInt(kind.n()))
                        .input("constant", Value::Float(constant))
                        .input("samples", Value::UInt(samples as u64))
                        .input("seed", Value::UInt(seed))
                        .result("times", Value::UInt(times.len() as u64))
                        .result("failures", Value::UInt(failures as u64))
                        .result("holds", Value::Bool(failures == 0)),
                );
            }
        }

        Suite::Hyper => {
            let kinds = default_kinds()?;
            let vectors = random_level_vectors(seed, samples);
            for kind in kinds {
                let constant = constant_for(kind);
                let params = HypParams::new(p, constant)?;
                let tau = tau_series(kind, &params, 1e-9)?;
                let mut failures = 0usize;
                for v in &vectors {
                    let report = check_hyper_chain_at(kind, v, p, tau.tau.hi, constant, tau.tau.hi)?;
                    if !report.holds {
                        failures += 1;
                    }
                }
                all_hold &= failures == 0;
                records.push(
                    Record::new("check")
                        .input("suite", Value::Str("hyper".into()))
                        .input("group", Value::Str(group_name(kind).into()))
                        .input("N", Value::UInt(kind.n()))
                        .input("p", Value::Float(p))
                        .input("constant", Value::Float(constant))
                        .input("samples", Value::UInt(samples as u64))
                        .input("seed", Value::UInt(seed))
                        .result("tau_hi", Value::Float(tau.tau.hi))
                        .result("failures", Value::UInt(failures as u64))
                        .result("holds", Value::Bool(failures == 0)),
                );
            }
        }

        Suite::Identities => {
            let r4 = r_p(Family::FreeOrthogonal, 4.0, 1e-10)?;
            let holds = r4.contains(1.0) && r4.width() <= 1e-10;
            all_hold &= holds;
            records.push(
                Record::new("check")
                    .input("suite", Value::Str("identities".into()))
                    .result("test", Value::Str("r4_equals_one_orthogonal".into()))
                    .result("value", Value::enclosure(&r4))
                    .result("width", Value::Float(r4.width()))
                    .result("holds", Value::Bool(holds)),
            );

            let r4s = r_p(Family::FreePermutation, 4.0, 1e-10)?;
            let holds = r4s.contains(1.0) && r4s.width() <= 1e-10;
            all_hold &= holds;
            records.push(
                Record::new("check")
                    .input("suite", Value::Str("identities".into()))
                    .result("test", Value::Str("r4_equals_one_permutation".into()))
                    .result("value", Value::enclosure(&r4s))
                    .result("width", Value::Float(r4s.width()))
                    .result("holds", Value::Bool(holds)),
            );

            let c_const = constant_c();
            let residual =
                (CertifiedValue::exact(3.0).pow(&c_const).midpoint() - (4.0 + 2.0 * 3.0f64.sqrt()))
                    .abs();
            let holds = residual <= 1e-12;
            all_hold &= holds;
            records.push(
                Record::new("check")
                    .input("suite", Value::Str("identities".into()))
                    .result("test", Value::Str("three_pow_c_is_4_plus_2sqrt3".into()))
                    .result("residual", Value::Float(residual))
                    .result("holds", Value::Bool(holds)),
            );

            let z = CertifiedValue::exact(3.0).pow(&constant_d().neg()).midpoint();
            let residual = (4.0 * z * z - 11.0 * z + 1.0).abs();
            let holds = residual <= 1e-12;
            all_hold &= holds;
            records.push(
                Record::new("check")
                    .input("suite", Value::Str("identities".into()))
                    .result("test", Value::Str("quadratic_in_3_pow_minus_d".into()))
                    .result("residual", Value::Float(residual))
                    .result("holds", Value::Bool(holds)),
            );
        }
    }

    Ok((records, all_hold))
}
