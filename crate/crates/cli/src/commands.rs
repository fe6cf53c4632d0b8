use std::collections::BTreeMap;
use std::path::Path;

use kfind_core::baselines::elbow_estimate;
use kfind_core::convex::identify_k_convex;
use kfind_core::gadgets::{
    build_checkntsc_instance, check_ntsc_decision_bruteforce, exact_cover, no_instance, yes_instance,
    ThreeCoverInstance,
};
use kfind_core::generators::{
    elbow_counterexample_spec, sample_gaussian_mixture, sample_sbm, LabeledSample, SbmSpec,
};
use kfind_core::peel::RunReport;
use kfind_core::verify::{
    check_ntsc_with_floor, check_separation, check_weak_ntsc_with_floor, exhaustive_identify, CheckMode,
    ConditionReport, SeparationKind, Witness,
};
use kfind_core::{identify_k, identify_k_with_w0, min_weight, AlgoConstants, Clustering, Error, PointSet};

use crate::io::{fmt_f64, format_labels, format_points, parse_labels, read_points, read_text, write_text};
use crate::report::{sha256_hex, Report};
use crate::specfile::parse_spec;
use crate::{
    Common, ConditionArg, ConvexArgs, ElbowArgs, ExhaustiveArgs, GadgetArgs, GenArgs, GenerateArg, ModeArg,
    PeelArgs, VerifyArgs,
};
use crate::CliError;

fn fail(report: &Report, source: Error) -> CliError {
    CliError::Algo { source, report: Box::new(report.clone()) }
}

fn constants(common: &Common) -> Result<AlgoConstants, CliError> {
    let mut c = AlgoConstants::default();
    for item in &common.set {
        let (k, v) = item
            .split_once('=')
            .ok_or_else(|| CliError::Input(format!("--set expects KEY=VALUE, got {item:?}")))?;
        c.set(k.trim(), v.trim()).map_err(|e| CliError::Input(e.to_string()))?;
    }
    Ok(c)
}

fn header(command: &str, seed: u64, input: &Path, text: &str, p: &PointSet) -> Report {
    let mut r = Report::new(command);
    r.push("seed", seed);
    r.push("input", input.display());
    r.push("input_sha256", sha256_hex(text.as_bytes()));
    r.push("n", p.n());
    r.push("d", p.d());
    r
}

fn read_labels(path: &Path, n: usize) -> Result<(Vec<usize>, String), CliError> {
    let text = read_text(path)?;
    Ok((parse_labels(&text, n)?, text))
}

/// Points outside the majority label of their peeled set, plus the residual.
fn misassigned(parts: &[Vec<usize>], n: usize, labels: &[usize]) -> usize {
    let assigned: usize = parts.iter().map(Vec::len).sum();
    let mut wrong = n - assigned;
    for part in parts {
        let mut counts: BTreeMap<usize, usize> = BTreeMap::new();
        for &i in part {
            *counts.entry(labels[i]).or_insert(0) += 1;
        }
        wrong += part.len() - counts.values().copied().max().unwrap_or(0);
    }
    wrong
}

/// `j` for points peeled at iteration `j` (1-based), 0 for the residual.
fn assignment(parts: &[Vec<usize>], n: usize) -> Vec<usize> {
    let mut a = vec![0; n];
    for (j, part) in parts.iter().enumerate() {
        for &i in part {
            a[i] = j + 1;
        }
    }
    a
}

fn push_trace(r: &mut Report, trace: &[kfind_core::peel::WHatAttempt]) {
    r.push("w_hat_trace.len", trace.len());
    for (t, a) in trace.iter().enumerate() {
        let failed = a.failed.map(|f| f.to_string()).unwrap_or_else(|| "none".into());
        r.push(format!("w_hat_trace.{}", t + 1), format!("{},{},{},{}", fmt_f64(a.w_hat), a.rank, a.k_hat, failed));
    }
}

fn push_run(r: &mut Report, run: &RunReport, n: usize) {
    r.push("k_hat", run.k_hat);
    r.push_f("w_hat", run.w_hat);
    r.push("rank", run.rank);
    r.push("exhausted", run.exhausted);
    r.push_list("flags", &run.flags);
    r.push("residual", run.residual.len());
    for (j, it) in run.iterations.iter().enumerate() {
        let key = format!("iter.{}", j + 1);
        r.push(format!("{key}.seed_center"), it.seed_center);
        r.push_f(format!("{key}.seed_sigma"), it.seed_sigma);
        r.push_f(format!("{key}.radius"), it.radius);
        r.push(format!("{key}.peeled"), it.peeled.len());
        r.push_f(format!("{key}.peeled_sigma"), it.peeled_sigma);
        if let Some(m) = it.m_star {
            r.push(format!("{key}.m_star"), m);
        }
        if let Some(o) = it.opt {
            r.push_f(format!("{key}.opt"), o);
        }
        if let Some(rs) = &it.rounding {
            r.push_f(format!("{key}.rounding_ratio"), rs.spectral_bound_ratio);
            r.push(format!("{key}.mass_deficit"), rs.mass_deficit);
        }
    }
    if !run.pruned.is_empty() {
        let sizes: Vec<usize> = run.pruned.iter().map(Vec::len).collect();
        r.push_list("pruned_sizes", &sizes);
    }
    if !run.w_hat_trace.is_empty() {
        push_trace(r, &run.w_hat_trace);
    }
    r.push_list("assignment", &assignment(&run.peeled_sets(), n));
}

fn push_sample(r: &mut Report, s: &LabeledSample, csv: &str, labels: &str) {
    r.push("n", s.points.n());
    r.push("d", s.points.d());
    r.push("points_sha256", sha256_hex(csv.as_bytes()));
    r.push("labels_sha256", sha256_hex(labels.as_bytes()));
    let mut counts: BTreeMap<usize, usize> = BTreeMap::new();
    for &l in &s.labels {
        *counts.entry(l).or_insert(0) += 1;
    }
    for (l, c) in &counts {
        r.push(format!("count.{l}"), c);
    }
    if let Ok(c) = Clustering::from_labels(&s.labels) {
        r.push_f("min_weight", min_weight(&c));
    }
}

fn write_sample(a: &GenArgs, r: &mut Report, s: &LabeledSample) -> Result<(), CliError> {
    let csv = format_points(&s.points);
    let labels = format_labels(&s.labels);
    write_text(&a.output, &csv)?;
    if let Some(path) = &a.labels {
        write_text(path, &labels)?;
    }
    push_sample(r, s, &csv, &labels);
    Ok(())
}

pub fn gen_gmm(a: &GenArgs) -> Result<Report, CliError> {
    let text = read_text(&a.input)?;
    let spec = parse_spec(&text)?;
    let mixture = spec.mixture.ok_or_else(|| CliError::Input("spec file has no [component] section".into()))?;
    let n = a.n.or(spec.n).ok_or_else(|| CliError::Input("point count missing: pass --n or set n =".into()))?;
    let seed = a.seed.or(spec.seed).unwrap_or(0);
    let mut r = Report::new("gen-gmm");
    r.push("seed", seed);
    r.push("input_sha256", sha256_hex(text.as_bytes()));
    r.push("k", mixture.k());
    let sample = sample_gaussian_mixture(&mixture, n, seed).map_err(|e| fail(&r, e))?;
    write_sample(a, &mut r, &sample)?;
    Ok(r)
}

pub fn gen_sbm(a: &GenArgs) -> Result<Report, CliError> {
    let text = read_text(&a.input)?;
    let spec = parse_spec(&text)?;
    let mut sbm = spec.sbm.ok_or_else(|| CliError::Input("spec file has no [sbm] section".into()))?;
    if let Some(n) = a.n {
        sbm = SbmSpec::new(sbm.prob, sbm.weights, n).map_err(|e| CliError::Input(e.to_string()))?;
    }
    let seed = a.seed.or(spec.seed).unwrap_or(0);
    let mut r = Report::new("gen-sbm");
    r.push("seed", seed);
    r.push("input_sha256", sha256_hex(text.as_bytes()));
    r.push("k", sbm.k());
    let sample = sample_sbm(&sbm, seed).map_err(|e| fail(&r, e))?;
    write_sample(a, &mut r, &sample)?;
    Ok(r)
}

pub fn identify_peel(a: &PeelArgs) -> Result<Report, CliError> {
    let (p, text) = read_points(&a.input)?;
    let constants = constants(&a.common)?;
    let labels = a.labels.as_ref().map(|path| read_labels(path, p.n())).transpose()?;
    let seed = a.common.seed.unwrap_or(0);
    let mut r = header("identify-peel", seed, &a.input, &text, &p);
    let run = match a.w0 {
        Some(w0) => {
            r.push("mode", "known-w0");
            r.push_f("w0", w0);
            identify_k_with_w0(&p, w0, &constants)
        }
        None => {
            r.push("mode", "sweep");
            identify_k(&p, &constants)
        }
    };
    let mut run = match run {
        Ok(run) => run,
        Err(Error::NoAcceptableW { trace }) => {
            push_trace(&mut r, &trace);
            r.push_constants(&constants);
            return Err(CliError::Algo { source: Error::NoAcceptableW { trace }, report: Box::new(r) });
        }
        Err(e) => {
            r.push_constants(&constants);
            return Err(fail(&r, e));
        }
    };
    run.rng_seed = seed;
    push_run(&mut r, &run, p.n());
    if let Some((labels, ltext)) = labels {
        r.push("labels_sha256", sha256_hex(ltext.as_bytes()));
        r.push("misassigned", misassigned(&run.peeled_sets(), p.n(), &labels));
    }
    r.push_constants(&constants);
    Ok(r)
}

pub fn identify_convex(a: &ConvexArgs) -> Result<Report, CliError> {
    let (p, text) = read_points(&a.input)?;
    let constants = constants(&a.common)?;
    let labels = a.labels.as_ref().map(|path| read_labels(path, p.n())).transpose()?;
    let seed = a.common.seed.unwrap_or(0);
    let mut r = header("identify-convex", seed, &a.input, &text, &p);
    r.push_f("w0", a.w0);
    let run = identify_k_convex(&p, a.w0, &constants).map_err(|e| {
        let mut r = r.clone();
        r.push_constants(&constants);
        fail(&r, e)
    })?;
    push_run(&mut r, &run, p.n());
    if let Some((labels, ltext)) = labels {
        r.push("labels_sha256", sha256_hex(ltext.as_bytes()));
        r.push("misassigned", misassigned(&run.peeled_sets(), p.n(), &labels));
    }
    r.push_constants(&constants);
    Ok(r)
}

pub fn identify_exhaustive(a: &ExhaustiveArgs) -> Result<Report, CliError> {
    let (p, text) = read_points(&a.input)?;
    let constants = constants(&a.common)?;
    let mut r = header("identify-exhaustive", a.common.seed.unwrap_or(0), &a.input, &text, &p);
    r.push("tight_floor", constants.tight_floor(p.n()));
    let res = exhaustive_identify(&p, &constants).map_err(|e| fail(&r, e))?;
    r.push("k_hat", res.k);
    r.push("partitions_checked", res.partitions_checked);
    r.push_list("assignment", &assignment(&res.parts, p.n()));
    r.push_constants(&constants);
    Ok(r)
}

fn push_condition(r: &mut Report, rep: &ConditionReport) {
    r.push("verdict", rep.holds.name());
    r.push("trials", rep.trials);
    match &rep.witness {
        None => r.push("witness", "none"),
        Some(Witness::Subset { cluster, subset, direction, lhs, rhs }) => {
            r.push("witness", "subset");
            r.push("witness.cluster", cluster + 1);
            r.push_list("witness.subset", subset);
            if let Some(dir) = direction {
                let dir: Vec<String> = dir.iter().map(|v| fmt_f64(*v)).collect();
                r.push_list("witness.direction", &dir);
            }
            r.push_f("witness.lhs", *lhs);
            r.push_f("witness.rhs", *rhs);
        }
        Some(Witness::Pair { first, second, distance, bound }) => {
            r.push("witness", "pair");
            r.push("witness.first", first + 1);
            r.push("witness.second", second + 1);
            r.push_f("witness.distance", *distance);
            r.push_f("witness.bound", *bound);
        }
    }
}

pub fn verify(a: &VerifyArgs) -> Result<Report, CliError> {
    let (p, text) = read_points(&a.input)?;
    let constants = constants(&a.common)?;
    let (labels, ltext) = read_labels(&a.labels, p.n())?;
    let clusters = Clustering::from_labels(&labels).map_err(|e| CliError::Input(e.to_string()))?;
    let seed = a.common.seed.unwrap_or(0);
    let mut r = header("verify", seed, &a.input, &text, &p);
    r.push("labels_sha256", sha256_hex(ltext.as_bytes()));
    r.push("clusters", clusters.k());
    let mode = match a.mode {
        ModeArg::Exact => CheckMode::Exact,
        ModeArg::Sampled => CheckMode::Sampled { trials: a.trials, seed },
    };
    r.push("mode", if a.mode == ModeArg::Exact { "exact" } else { "sampled" });
    let floor = constants.tight_floor(p.n());
    let gamma = || a.gamma.ok_or_else(|| CliError::Input("separation checks need --gamma".into()));
    let rep = match a.condition {
        ConditionArg::WeakNtsc => {
            r.push("tight_floor", floor);
            check_weak_ntsc_with_floor(&p, &clusters, mode, floor)
        }
        ConditionArg::Ntsc => {
            r.push("tight_floor", floor);
            r.push("directions", a.directions);
            check_ntsc_with_floor(&p, &clusters, mode, a.directions, floor)
        }
        ConditionArg::WeakSeparation => {
            let g = gamma()?;
            r.push_f("gamma", g);
            check_separation(&p, &clusters, g, SeparationKind::Weak)
        }
        ConditionArg::StrongSeparation => {
            let g = gamma()?;
            r.push_f("gamma", g);
            check_separation(&p, &clusters, g, SeparationKind::Strong)
        }
    }
    .map_err(|e| fail(&r, e))?;
    r.push("condition", rep.condition.name());
    push_condition(&mut r, &rep);
    Ok(r)
}

pub fn bench_elbow(a: &ElbowArgs) -> Result<Report, CliError> {
    let seed = a.common.seed.unwrap_or(0);
    let (p, mut r) = match &a.input {
        Some(path) => {
            let (p, text) = read_points(path)?;
            let r = header("bench-elbow", seed, path, &text, &p);
            (p, r)
        }
        None => {
            let mut r = Report::new("bench-elbow");
            r.push("seed", seed);
            r.push("source", "counterexample");
            r.push("k", a.k);
            let spec = elbow_counterexample_spec(a.k, a.d).map_err(|e| fail(&r, e))?;
            let s = sample_gaussian_mixture(&spec, a.n, seed).map_err(|e| fail(&r, e))?;
            r.push("n", s.points.n());
            r.push("d", s.points.d());
            r.push("points_sha256", sha256_hex(format_points(&s.points).as_bytes()));
            (s.points, r)
        }
    };
    r.push("kmax", a.kmax);
    r.push("restarts", a.restarts);
    let e = elbow_estimate(&p, a.kmax, a.restarts, seed).map_err(|e| fail(&r, e))?;
    r.push("k_star", e.k_star);
    let (n, d) = (p.n() as f64, p.d() as f64);
    for (k, delta) in &e.deltas {
        r.push_f(format!("delta.{k}"), *delta);
        r.push_f(format!("delta.{k}.per_nd"), delta / (n * d));
    }
    for (k, ratio) in &e.ratios {
        r.push_f(format!("ratio.{k}"), *ratio);
    }
    Ok(r)
}

pub fn gadget(a: &GadgetArgs) -> Result<Report, CliError> {
    let seed = a.common.seed.unwrap_or(0);
    let mut r = Report::new("gadget-3cover");
    r.push("seed", seed);
    let inst = match (&a.input, a.generate) {
        (Some(path), None) => {
            let text = read_text(path)?;
            r.push("input", path.display());
            r.push("input_sha256", sha256_hex(text.as_bytes()));
            ThreeCoverInstance::parse(&text).map_err(|e| CliError::Input(e.to_string()))?
        }
        (None, Some(GenerateArg::Yes)) => {
            r.push("generate", "yes");
            yes_instance(a.m, seed).map_err(|e| CliError::Input(e.to_string()))?
        }
        (None, Some(GenerateArg::No)) => {
            r.push("generate", "no");
            r.push("attempts", a.attempts);
            no_instance(a.m, seed, a.attempts).ok_or_else(|| {
                fail(
                    &r,
                    Error::InvalidParameter(format!("no instance without an exact cover in {} draws", a.attempts)),
                )
            })?
        }
        _ => return Err(CliError::Input("pass exactly one of --input and --generate".into())),
    };
    if let Some(path) = &a.instance {
        write_text(path, &inst.to_text())?;
    }
    r.push("universe_size", inst.universe_size);
    r.push("sets", inst.sets.len());
    r.push("instance_sha256", sha256_hex(inst.to_text().as_bytes()));
    let (x, h) = build_checkntsc_instance(&inst).map_err(|e| fail(&r, e))?;
    r.push("h", h);
    let decision = check_ntsc_decision_bruteforce(&x, h).map_err(|e| fail(&r, e))?;
    let cover = exact_cover(&inst);
    r.push("decision", decision.holds);
    r.push_f("best_sigma", decision.best_sigma);
    let best: Vec<usize> = decision.best_subset.iter().map(|i| i + 1).collect();
    r.push_list("best_subset", &best);
    r.push("subsets_checked", decision.subsets_checked);
    r.push("exact_cover", cover.is_some());
    if let Some(c) = &cover {
        let c: Vec<usize> = c.iter().map(|i| i + 1).collect();
        r.push_list("cover", &c);
    }
    r.push("agree", decision.holds == cover.is_some());
    Ok(r)
}
