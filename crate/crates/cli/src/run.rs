//! The pipelines behind each subcommand.

use mwlp::besov::{
    equivalence_constant, equivalence_experiment, partition_decay_check, shell_corpus, BesovParams,
    DyadicPartition,
};
use mwlp::bound::{
    bandlimited_corpus, empirical_ratio, large_p_ratio, report_from_weight_factors, rescale_experiment,
    weight_factors, WeightFactors, ONE_SIDED_BETA,
};
use mwlp::muckenhoupt::{
    ap_constant, default_directions, default_lattice_radius, doubling_report_with_radius, CubeFamily,
};
use mwlp::scalar::{self, Annuli, Line, ScalarSymbol, ScalarWeight};
use mwlp::spectral::{apply_multiplier, sampling_series_field, MultiplierSymbol, SymbolForm, TorusGrid};
use mwlp::weights::{dilate_weight, WeightKind, WeightSpec};
use num_complex::Complex64;

use crate::config::{besov_grid, partition, Command, ExperimentConfig};
use crate::report::*;

/// Runs every pipeline selected by the config. Module errors become report
/// entries; the run always completes.
pub fn run(cfg: &ExperimentConfig) -> RunReport {
    let start = std::time::Instant::now();
    let mut rep = RunReport::new(cfg.clone());
    if cfg.command.runs(Command::ApConstant) {
        ap_pipeline(cfg, &mut rep);
    }
    if cfg.command.runs(Command::Doubling) {
        doubling_pipeline(cfg, &mut rep);
    }
    if cfg.command.runs(Command::SamplingCheck) {
        sampling_pipeline(cfg, &mut rep);
    }
    if cfg.command.runs(Command::MultiplierBound) {
        multiplier_pipeline(cfg, &mut rep);
    }
    if cfg.command.runs(Command::BesovEquiv) {
        besov_pipeline(cfg, &mut rep);
    }
    rep.wall_time = start.elapsed();
    rep
}

/// The scalar reference weight, when the cross-check applies.
fn scalar_weight(cfg: &ExperimentConfig, spec: &WeightSpec) -> Option<ScalarWeight> {
    if cfg.scalar_check {
        ScalarWeight::from_spec(spec)
    } else {
        None
    }
}

/// The 1-D scalar line for a grid, if its size suits the radix-2 transform.
fn scalar_line(grid: &TorusGrid) -> Option<Line> {
    (grid.n == 1 && grid.m.is_power_of_two()).then_some(Line {
        period: grid.period as f64,
        m: grid.m,
    })
}

fn ap_pipeline(cfg: &ExperimentConfig, rep: &mut RunReport) {
    const P: &str = "ap-constant";
    for (wi, spec) in cfg.weights.iter().enumerate() {
        let fam = match cfg.family_for(spec.n, None) {
            Ok(f) => f,
            Err(e) => {
                rep.error(P, &format!("weight {wi}"), &e);
                continue;
            }
        };
        let sw = scalar_weight(cfg, spec);
        for &p in &cfg.ap.p {
            let mut jobs: Vec<(f64, CubeFamily)> = vec![(1.0, fam.clone())];
            for &q in &cfg.ap.refinements {
                if q != fam.q {
                    jobs.push((1.0, fam.clone().with_q(q)));
                }
            }
            for &r in &cfg.ap.dilations {
                match fam.dilate(1.0 / r) {
                    Ok(f) => jobs.push((r, f)),
                    Err(e) => rep.error(P, &format!("weight {wi}, R = {r}"), &e),
                }
            }
            for (r, f) in jobs {
                let ctx = format!("weight {wi}, p = {p}, R = {r}, q = {}", f.q);
                let w = match dilate_weight(spec, r) {
                    Ok(w) => w,
                    Err(e) => {
                        rep.error(P, &ctx, &e);
                        continue;
                    }
                };
                match ap_constant(&w, p, &f) {
                    Ok(est) => {
                        if let Some(sw) = sw {
                            let sw = ScalarWeight {
                                coef: sw.coef * r.powf(sw.alpha),
                                ..sw
                            };
                            if let Ok(v) = scalar::ap_constant(&sw, p, &f) {
                                rep.cross_check(P, &ctx, "A_p", &[(est.value, v)]);
                            }
                        }
                        rep.ap.push(ApRow {
                            weight: wi,
                            p,
                            dilation: r,
                            q: f.q,
                            estimate: est,
                        });
                    }
                    Err(e) => rep.error(P, &ctx, &e),
                }
            }
        }
    }
}

fn doubling_pipeline(cfg: &ExperimentConfig, rep: &mut RunReport) {
    const P: &str = "doubling";
    let p = cfg.doubling.p;
    for (wi, spec) in cfg.weights.iter().enumerate() {
        let ctx = format!("weight {wi}, p = {p}");
        let fam = match cfg.family_for(spec.n, cfg.doubling.cubes.as_ref()) {
            Ok(f) => f,
            Err(e) => {
                rep.error(P, &ctx, &e);
                continue;
            }
        };
        let radius = cfg.doubling.lattice_radius.unwrap_or(default_lattice_radius(spec.n));
        let dirs = default_directions(spec.dim, cfg.seed);
        match doubling_report_with_radius(spec, p, &fam, &dirs, radius) {
            Ok(report) => {
                if let Some(sw) = scalar_weight(cfg, spec) {
                    let s = scalar::doubling(&sw, &fam, radius);
                    rep.cross_check(P, &ctx, "C_dbl", &[(report.c_dbl, s.c_dbl)]);
                    rep.cross_check(P, &ctx, "beta", &[(report.beta, s.beta)]);
                    rep.cross_check(P, &ctx, "c_w", &[(report.c_w, s.c_w)]);
                    if let Some(a1) = report.scalar_a1_max {
                        rep.cross_check(P, &ctx, "scalar_a1_max", &[(a1, s.a1_max)]);
                    }
                }
                rep.doubling.push(DoublingRow { weight: wi, p, report });
            }
            Err(e) => rep.error(P, &ctx, &e),
        }
    }
}

fn fitted_symbol(form: &SymbolForm, grid: &TorusGrid, m: f64) -> mwlp::Result<MultiplierSymbol> {
    let phi = MultiplierSymbol::new(form, grid)?;
    let fit = phi.fit_decay(m)?;
    Ok(phi.with_decay(fit))
}

fn sampling_pipeline(cfg: &ExperimentConfig, rep: &mut RunReport) {
    const P: &str = "sampling-check";
    let s = &cfg.sampling;
    let run = || -> mwlp::Result<(SamplingSummary, Vec<(f64, f64)>)> {
        let grid = cfg.grid_for(1)?;
        let phi = fitted_symbol(&s.symbol, &grid, s.m)?;
        let corpus = bandlimited_corpus(&grid, 1.0, s.dim, s.fields, cfg.seed)?;
        let line = scalar_line(&grid).filter(|_| cfg.scalar_check && s.dim == 1);
        let eval = |xi: f64| s.symbol.eval(&[xi]);
        let sym = ScalarSymbol {
            radius: s.symbol.radius(),
            scale: s.symbol.decay_scale(),
            eval: &eval,
        };
        let mut rows = Vec::new();
        let mut pairs = Vec::new();
        for (i, f) in corpus.iter().enumerate() {
            let direct = apply_multiplier(&phi, f)?;
            for &u in &s.offsets {
                let series = sampling_series_field(&phi, f, &[u])?;
                let d = series.max_abs_diff(&direct) / direct.max_abs();
                if let Some(line) = &line {
                    pairs.push((d, scalar::sampling_discrepancy(line, &sym, f.values(), u)));
                }
                rows.push(SamplingRow {
                    field: i,
                    offset: u,
                    discrepancy: d,
                });
            }
        }
        let max = rows.iter().map(|r| r.discrepancy).fold(0.0, f64::max);
        Ok((
            SamplingSummary {
                symbol: s.symbol.label(),
                fit: phi.decay().expect("fit attached"),
                max_discrepancy: max,
                rows,
            },
            pairs,
        ))
    };
    match run() {
        Ok((summary, pairs)) => {
            if !pairs.is_empty() {
                // Both sides are at roundoff level; compare them absolutely.
                rep.cross_check(P, "corpus", "discrepancy", &pairs);
            }
            rep.sampling = Some(summary);
        }
        Err(e) => rep.error(P, "corpus", &e),
    }
}

/// Grid, cube family, doubling directions and corpus for one weight.
type Setup = (TorusGrid, CubeFamily, Vec<Vec<Complex64>>, Vec<mwlp::spectral::SampledVectorField>);

fn multiplier_pipeline(cfg: &ExperimentConfig, rep: &mut RunReport) {
    const P: &str = "multiplier-bound";
    let mc = &cfg.multiplier;
    for (wi, spec) in cfg.weights.iter().enumerate() {
        let setup = || -> mwlp::Result<Setup> {
            let grid = cfg.grid_for(spec.n)?;
            let fam = cfg.family_for(spec.n, None)?;
            let dirs = default_directions(spec.dim, cfg.seed);
            let corpus = bandlimited_corpus(&grid, 1.0, spec.dim, mc.corpus_size, cfg.seed)?;
            Ok((grid, fam, dirs, corpus))
        };
        let (grid, fam, dirs, corpus) = match setup() {
            Ok(v) => v,
            Err(e) => {
                rep.error(P, &format!("weight {wi}"), &e);
                continue;
            }
        };
        let mut factors: Vec<(f64, WeightFactors)> = Vec::new();
        for case in &mc.cases {
            let ctx = format!("weight {wi}, p = {}, M = {}, {}", case.p, case.m, case.symbol.label());
            let phi = match fitted_symbol(&case.symbol, &grid, case.m) {
                Ok(phi) => phi,
                Err(e) => {
                    rep.error(P, &ctx, &e);
                    continue;
                }
            };
            if case.p >= 1.0 && matches!(spec.kind, WeightKind::Identity) {
                match large_p_ratio(spec, &phi, case.p, &corpus) {
                    Ok(r) => rep.young.push(YoungRow {
                        weight: wi,
                        p: case.p,
                        symbol: case.symbol.label(),
                        ratio_max: r.max,
                        kernel_l1: phi.convolution_l1_norm(),
                    }),
                    Err(e) => rep.error(P, &ctx, &e),
                }
            }
            if case.p > 1.0 {
                rep.warn(P, &ctx, "no-constant-chain", "the constant chain covers 0 < p <= 1 only");
                continue;
            }
            let wf = match factors.iter().find(|(p, _)| *p == case.p) {
                Some((_, w)) => w.clone(),
                None => match weight_factors(spec, case.p, &fam, &dirs) {
                    Ok(w) => {
                        factors.push((case.p, w.clone()));
                        w
                    }
                    Err(e) => {
                        rep.error(P, &ctx, &e);
                        continue;
                    }
                },
            };
            let result = (|| -> mwlp::Result<(mwlp::bound::BoundednessReport, Vec<f64>)> {
                let mut report = report_from_weight_factors(spec, &phi, case.p, &wf)?;
                let ratios = empirical_ratio(spec, &phi, case.p, &corpus)?;
                report.ratio_max = Some(ratios.max);
                report.corpus_size = corpus.len();
                if !mc.r_sweep.is_empty() {
                    let sweep = rescale_experiment(spec, &case.symbol, case.p, &mc.r_sweep, &grid, &corpus)?;
                    report.r_sweep = sweep.iter().map(|pt| (pt.radius, pt.ratio_max)).collect();
                }
                Ok((report, ratios.ratios))
            })();
            match result {
                Ok((report, ratios)) => {
                    for w in &report.warnings {
                        let detail = if w == ONE_SIDED_BETA {
                            "beta is a lower estimate; M > (n + beta)/p was checked with it"
                        } else {
                            w.as_str()
                        };
                        rep.warn(P, &ctx, w, detail);
                    }
                    if let (Some(sw), Some(line)) = (scalar_weight(cfg, spec), scalar_line(&grid)) {
                        let values: Vec<Vec<Complex64>> = corpus.iter().map(|f| f.values().to_vec()).collect();
                        scalar_multiplier(rep, &ctx, sw, line, case, &report, &ratios, &values, &fam);
                    }
                    rep.multiplier.push(MultiplierRow {
                        weight: wi,
                        report,
                        ratios,
                    });
                }
                Err(e) => rep.error(P, &ctx, &e),
            }
        }
    }
}

#[allow(clippy::too_many_arguments)]
fn scalar_multiplier(
    rep: &mut RunReport,
    ctx: &str,
    sw: ScalarWeight,
    line: Line,
    case: &crate::config::MultiplierCase,
    report: &mwlp::bound::BoundednessReport,
    ratios: &[f64],
    corpus: &[Vec<Complex64>],
    fam: &CubeFamily,
) {
    const P: &str = "multiplier-bound";
    let eval = |xi: f64| case.symbol.eval(&[xi]);
    let sym = ScalarSymbol {
        radius: case.symbol.radius(),
        scale: case.symbol.decay_scale(),
        eval: &eval,
    };
    let k = sym.decay_constant(&line, case.m);
    let ap = scalar::ap_constant(&sw, case.p, fam);
    let d = scalar::doubling(&sw, fam, default_lattice_radius(1));
    rep.cross_check(P, ctx, "K", &[(report.k, k)]);
    rep.cross_check(P, ctx, "beta", &[(report.beta, d.beta)]);
    rep.cross_check(P, ctx, "c_w", &[(report.c_w, d.c_w)]);
    if let Ok(ap) = ap {
        rep.cross_check(P, ctx, "A_p", &[(report.ap, ap)]);
        if let Ok(c) = scalar::chain_constant(case.p, k, case.m, d.beta, d.c_w, ap) {
            rep.cross_check(P, ctx, "L", &[(report.l, c.l)]);
            rep.cross_check(P, ctx, "c_M", &[(report.c_m, c.c_m)]);
            rep.cross_check(P, ctx, "C_theory", &[(report.c_theory, c.c_theory)]);
        }
    }
    let reference = scalar::multiplier_ratio(&line, &sym, &sw, case.p, corpus);
    let pairs: Vec<(f64, f64)> = ratios.iter().copied().zip(reference).collect();
    rep.cross_check(P, ctx, "ratios", &pairs);
    let mut sweep = Vec::new();
    for &(r, ratio) in &report.r_sweep {
        let rline = Line {
            period: line.period / r,
            m: line.m,
        };
        let eval = |xi: f64| case.symbol.eval(&[xi / r]);
        let sym = ScalarSymbol {
            radius: r * case.symbol.radius(),
            scale: r,
            eval: &eval,
        };
        let v = scalar::multiplier_ratio(&rline, &sym, &sw, case.p, corpus)
            .into_iter()
            .fold(f64::NEG_INFINITY, f64::max);
        sweep.push((ratio, v));
    }
    if !sweep.is_empty() {
        rep.cross_check(P, ctx, "R_sweep", &sweep);
    }
}

fn annuli(d: &DyadicPartition) -> Annuli {
    Annuli {
        c1: d.c1,
        c2: d.c2,
        lo: d.j_lo,
        hi: d.j_hi,
    }
}

fn besov_pipeline(cfg: &ExperimentConfig, rep: &mut RunReport) {
    const P: &str = "besov-equiv";
    let b = &cfg.besov;
    let (psi, phi) = match (partition(&b.psi), partition(&b.phi)) {
        (Ok(a), Ok(c)) => (a, c),
        (Err(e), _) | (_, Err(e)) => {
            rep.error(P, "partitions", &e);
            return;
        }
    };
    let mut checked: Vec<(usize, bool)> = Vec::new();
    for (wi, spec) in cfg.weights.iter().enumerate() {
        let ctx = format!("weight {wi}");
        let grid = match besov_grid(b, spec.n) {
            Ok(g) => g,
            Err(e) => {
                rep.error(P, &ctx, &e);
                continue;
            }
        };
        // Decay checks once per dimension.
        let ok = match checked.iter().find(|(n, _)| *n == spec.n) {
            Some(&(_, ok)) => ok,
            None => {
                let mut ok = true;
                for part in [&psi, &phi] {
                    match partition_decay_check(part, b.m, &grid) {
                        Ok(decay) => {
                            if decay.spread > 0.1 {
                                rep.warn(P, &part.label(), "decay-spread", format!("K_j spread {:.4}", decay.spread));
                            }
                            rep.besov_decay.push(BesovDecay {
                                partition: part.label(),
                                decay,
                            });
                        }
                        Err(e) => {
                            rep.error(P, &format!("decay check {}", part.label()), &e);
                            ok = false;
                        }
                    }
                }
                checked.push((spec.n, ok));
                ok
            }
        };
        if !ok {
            continue;
        }
        if let Err(e) = besov_for_weight(cfg, rep, wi, spec, &grid, &psi, &phi) {
            rep.error(P, &ctx, &e);
        }
    }
}

#[allow(clippy::too_many_arguments)]
fn besov_for_weight(
    cfg: &ExperimentConfig,
    rep: &mut RunReport,
    wi: usize,
    spec: &WeightSpec,
    grid: &TorusGrid,
    psi: &DyadicPartition,
    phi: &DyadicPartition,
) -> mwlp::Result<()> {
    const P: &str = "besov-equiv";
    let b = &cfg.besov;
    let [inner, outer] = b.shell.unwrap_or_else(|| {
        let (a, c) = (psi.covered_interior(), phi.covered_interior());
        [a.0.max(c.0), a.1.min(c.1)]
    });
    let size = b.corpus_size;
    let total = if b.stability { 2 * size } else { size };
    let corpus = shell_corpus(grid, inner, outer, spec.dim, total, cfg.seed)?;
    let fam = cfg.family_for(spec.n, None)?;
    let wf = if b.p <= 1.0 {
        Some(weight_factors(spec, b.p, &fam, &default_directions(spec.dim, cfg.seed))?)
    } else {
        rep.warn(P, &format!("weight {wi}"), "no-constant-chain", "C_equiv is assembled for p <= 1 only");
        None
    };
    let sw = scalar_weight(cfg, spec);
    let line = scalar_line(grid);
    for &s in &b.s {
        for q in &b.q {
            let ctx = format!("weight {wi}, s = {s}, q = {}", if q.0.is_infinite() { "inf".into() } else { q.0.to_string() });
            let params = BesovParams {
                s,
                p: b.p,
                q: q.0,
                weight: spec.clone(),
            };
            // Ratios do not depend on the rest of the corpus, so the base
            // corpus is a prefix of the doubled one.
            let all = equivalence_experiment(&corpus, &params, psi, phi)?;
            let ratios = all.ratios[..size].to_vec();
            let r_min = ratios.iter().copied().fold(f64::INFINITY, f64::min);
            let r_max = ratios.iter().copied().fold(f64::NEG_INFINITY, f64::max);
            let swapped = equivalence_experiment(&corpus[..size], &params, phi, psi)?;
            let reciprocity_error = ratios
                .iter()
                .zip(&swapped.ratios)
                .map(|(a, b)| (a * b - 1.0).abs())
                .fold(0.0, f64::max);
            let truncated = all.truncated.iter().filter(|&&i| i < size).count();
            if truncated > 0 {
                rep.warn(P, &ctx, "truncation", format!("{truncated} corpus members have spectral mass outside the covered interior"));
            }
            let doubled = b.stability.then(|| BracketShift {
                corpus_size: total,
                r_min: all.r_min,
                r_max: all.r_max,
                shift: (all.r_max / r_max - 1.0).max(r_min / all.r_min - 1.0),
            });
            let constant = match &wf {
                Some(w) => match equivalence_constant(psi, phi, &params, b.m, w, grid) {
                    Ok(c) => Some(c),
                    Err(e) => {
                        rep.error(P, &ctx, &e);
                        None
                    }
                },
                None => None,
            };
            if let (Some(sw), Some(line)) = (sw, line) {
                let fpsi = |j: i32, r: f64| psi.psi(j, r);
                let fphi = |j: i32, r: f64| phi.psi(j, r);
                let pairs: Vec<(f64, f64)> = corpus[..size]
                    .iter()
                    .zip(&ratios)
                    .map(|(f, &r)| {
                        let a = scalar::besov_norm(&line, f.values(), &fpsi, psi.js(), &sw, s, b.p, q.0);
                        let c = scalar::besov_norm(&line, f.values(), &fphi, phi.js(), &sw, s, b.p, q.0);
                        (r, a / c)
                    })
                    .collect();
                rep.cross_check(P, &ctx, "ratios", &pairs);
                if let (Some(c), Some(w)) = (&constant, &wf) {
                    let (beta, c_w) = (w.doubling.beta, w.doubling.c_w);
                    let ab = scalar::directed_constant(&line, annuli(psi), &fpsi, annuli(phi), s, b.p, q.0, b.m, beta, c_w, w.ap);
                    let ba = scalar::directed_constant(&line, annuli(phi), &fphi, annuli(psi), s, b.p, q.0, b.m, beta, c_w, w.ap);
                    if let (Ok(ab), Ok(ba)) = (ab, ba) {
                        rep.cross_check(P, &ctx, "C_equiv", &[(c.c_equiv, ab * ba)]);
                    }
                }
            }
            rep.besov.push(BesovRow {
                weight: wi,
                s,
                p: b.p,
                q: *q,
                corpus_size: size,
                r_min,
                r_max,
                bracket: r_max / r_min,
                c_equiv: constant.as_ref().map(|c| c.c_equiv),
                psi_from_phi: constant.as_ref().map(|c| c.psi_from_phi.clone()),
                phi_from_psi: constant.map(|c| c.phi_from_psi),
                reciprocity_error,
                doubled,
                ratios,
            });
        }
    }
    Ok(())
}
