//! The verification commands.

use std::sync::Arc;
use std::time::Instant;

use voa_core::distinguished::{
    omega_aff, omega_alpha, omega_h, omega_parafermion, parafermion_singular, root_parafermion_singular,
    theta_singular, w3_alpha,
};
use voa_core::fock::enumerate_weight;
use voa_core::lie::AlgebraType;
use voa_core::rational::q;
use voa_core::subspaces::{
    charge_zero_space, from_buckets, full_space, generated_ideal, generated_subalgebra, generated_subalgebra_modulo,
    highest_weight_bucket, intersect, quotient_dims,
};
use voa_core::{BasisLabel, Charge, FockVector, GradedBasis, LieData, Limits, VacuumModule, Q};

use crate::config::{ConfigEcho, RunConfig, Which};
use crate::parallel::par_map;
use crate::report::{CheckReport, DimTable, RunReport, Timing};
use crate::CliError;

/// Extra terms added to every iterate sum under `--truncation-regression`.
pub const REGRESSION_SLACK: u32 = 5;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Command {
    GradedDims,
    CheckVirasoro,
    CheckCommutant,
    CheckGenerators,
    CheckIdeal,
    CheckWeyl,
}

impl Command {
    pub fn name(self) -> &'static str {
        match self {
            Command::GradedDims => "graded-dims",
            Command::CheckVirasoro => "check-virasoro",
            Command::CheckCommutant => "check-commutant",
            Command::CheckGenerators => "check-generators",
            Command::CheckIdeal => "check-ideal",
            Command::CheckWeyl => "check-weyl",
        }
    }
}

/// Shared state of one command run.
pub struct Context {
    pub cfg: RunConfig,
    pub lie: LieData,
    pub limits: Limits,
    pub slack: u32,
}

impl Context {
    pub fn new(cfg: &RunConfig, slack: u32) -> Result<Self, CliError> {
        cfg.validate()?;
        let ty: AlgebraType = cfg.algebra.parse()?;
        let lie = LieData::build(ty, cfg.rank_cap)?;
        let start = Instant::now();
        let cap = cfg.wall_clock;
        let limits = Limits {
            max_bucket_dim: cfg.max_bucket_dim,
            interrupt: Some(Arc::new(move || start.elapsed() > cap)),
        };
        Ok(Context { cfg: cfg.clone(), lie, limits, slack })
    }

    pub fn vm(&self) -> VacuumModule<'_> {
        VacuumModule::with_truncation_slack(&self.lie, self.cfg.level, self.slack)
    }

    fn zero(&self) -> Charge {
        Charge::zero(self.lie.rank())
    }

    fn show(&self, v: &FockVector) -> String {
        format!("{}", v.display(&self.lie))
    }

    fn root(&self, r: usize) -> String {
        self.lie.root_name(&self.lie.positive_roots()[r])
    }

    /// The Heisenberg commutant through `top`, one weight per task.
    pub fn commutant(&self, top: u32) -> Result<GradedBasis, CliError> {
        let zero = self.zero();
        let buckets = par_map((0..=top).collect(), |w| {
            let vm = self.vm();
            highest_weight_bucket(&vm, &zero, w, &self.limits)
        });
        let buckets = buckets.into_iter().collect::<Result<Vec<_>, _>>()?;
        Ok(from_buckets(&self.lie, top, buckets, &self.limits)?)
    }

    /// The ideal of the commutant generated by the parafermion singular vector.
    pub fn commutant_ideal(&self, n0: &GradedBasis, top: u32) -> Result<GradedBasis, CliError> {
        let vm = self.vm();
        let sing = parafermion_singular(&vm)?.vector;
        let mult: Vec<FockVector> = n0.all_vectors().cloned().collect();
        Ok(generated_ideal(&vm, &sing, n0, &mult, top, &self.limits)?)
    }

    /// The maximal ideal of `V(k,0)` through `top`, from the highest-root singular vector.
    pub fn vacuum_ideal(&self, top: u32) -> Result<GradedBasis, CliError> {
        let vm = self.vm();
        let full = full_space(&self.lie, top, &self.limits)?;
        let gens: Vec<FockVector> = (0..self.lie.dim()).map(|a| vm.straighten(&[(a, -1)])).collect();
        let sing = theta_singular(&vm)?.vector;
        Ok(generated_ideal(&vm, &sing, &full, &gens, top, &self.limits)?)
    }

    fn root_generators(&self, vm: &VacuumModule<'_>) -> Result<Vec<FockVector>, CliError> {
        let mut gens = Vec::new();
        for r in 0..self.lie.num_positive_roots() {
            gens.push(omega_alpha(vm, r)?.vector);
            gens.push(w3_alpha(vm, r)?.vector);
        }
        Ok(gens)
    }

    fn cartan_generators(&self, vm: &VacuumModule<'_>) -> Vec<FockVector> {
        (0..self.lie.rank()).map(|i| vm.straighten(&[(self.lie.cartan_index(i), -1)])).collect()
    }
}

/// First vector of `a` outside `b`, looking only at weights `<= top`.
fn first_outside(lie: &LieData, a: &GradedBasis, b: &GradedBasis, top: u32) -> Option<FockVector> {
    (0..=top.min(a.max_weight())).find_map(|w| a.vectors_at(w).find(|v| !b.contains(lie, v)).cloned())
}

fn truncated_dims(s: &GradedBasis, top: u32) -> Vec<usize> {
    (0..=top).map(|w| s.dim(w)).collect()
}

/// Bucket-for-bucket equality through weight `top`.
fn compare_spaces(
    ctx: &Context,
    check: &str,
    (name_a, a): (&str, &GradedBasis),
    (name_b, b): (&str, &GradedBasis),
    top: u32,
) -> CheckReport {
    let lie = &ctx.lie;
    let report = match first_outside(lie, a, b, top) {
        Some(v) => CheckReport::fail(check, ctx.show(&v), format!("vector of {name_a} missing from {name_b}")),
        None => match first_outside(lie, b, a, top) {
            Some(v) => CheckReport::fail(check, ctx.show(&v), format!("vector of {name_b} missing from {name_a}")),
            None => CheckReport::pass(check),
        },
    };
    report.dims(name_a, truncated_dims(a, top)).dims(name_b, truncated_dims(b, top))
}

fn timed(f: impl FnOnce() -> Result<CheckReport, CliError>) -> Result<CheckReport, CliError> {
    let start = Instant::now();
    let mut r = f()?;
    r.timing = Timing::elapsed(start.elapsed());
    Ok(r)
}

/// Runs `command` under `cfg`.
pub fn run(command: Command, cfg: &RunConfig) -> Result<RunReport, CliError> {
    let start = Instant::now();
    let mut report = run_with_slack(command, cfg, 0)?;
    if cfg.truncation_regression {
        let padded = run_with_slack(command, cfg, REGRESSION_SLACK)?;
        let same = padded.without_timing().reports == report.without_timing().reports
            && padded.table == report.table;
        let check = CheckReport::from_witness(
            "truncation-regression",
            (!same).then(|| format!("results differ with {REGRESSION_SLACK} extra iterate terms")),
            "enlarged truncation bounds changed a result",
        )
        .constant("slack", REGRESSION_SLACK);
        report.reports.push(check);
        report.passed = report.reports.iter().all(|r| r.passed);
    }
    report.stamp(start.elapsed());
    Ok(report)
}

fn run_with_slack(command: Command, cfg: &RunConfig, slack: u32) -> Result<RunReport, CliError> {
    let ctx = Context::new(cfg, slack)?;
    let (reports, table) = match command {
        Command::GradedDims => graded_dims(&ctx)?,
        Command::CheckVirasoro => (check_virasoro(&ctx)?, None),
        Command::CheckCommutant => (check_commutant(&ctx)?, None),
        Command::CheckGenerators => {
            let which = cfg
                .which
                .ok_or_else(|| CliError::Config("check-generators needs --which".into()))?;
            (check_generators(&ctx, which)?, None)
        }
        Command::CheckIdeal => (check_ideal(&ctx)?, None),
        Command::CheckWeyl => (check_weyl(&ctx)?, None),
    };
    Ok(RunReport::new(command.name(), ConfigEcho::from(cfg), reports, table))
}

fn graded_dims(ctx: &Context) -> Result<(Vec<CheckReport>, Option<DimTable>), CliError> {
    let top = ctx.cfg.max_weight;
    let lie = &ctx.lie;
    let v0 = charge_zero_space(lie, top, &ctx.limits)?;
    let n0 = ctx.commutant(top)?;
    let ideal = ctx.commutant_ideal(&n0, top)?;
    let quotient = quotient_dims(lie, &n0, &ideal)?;
    let table = DimTable {
        columns: ["weight", "charge_zero", "commutant", "ideal", "parafermion"].map(String::from).to_vec(),
        rows: quotient.rows.iter().map(|r| vec![r.weight as usize, v0.dim(r.weight), r.ambient, r.ideal, r.quotient]).collect(),
    };
    let report = CheckReport::pass("ideal-within-commutant").dims("parafermion", quotient.quotient_dims());
    Ok((vec![report], Some(table)))
}

/// Monomials of weight `1..=top` built only from Cartan modes.
fn heisenberg_monomials(lie: &LieData, top: u32) -> Vec<FockVector> {
    let zero = Charge::zero(lie.rank());
    (1..=top)
        .flat_map(|w| enumerate_weight(lie, w).remove(&zero).unwrap_or_default())
        .filter(|m| m.factors().iter().all(|f| matches!(lie.label(f.label as usize), BasisLabel::Cartan(_))))
        .map(FockVector::from_monomial)
        .collect()
}

fn all_monomials(lie: &LieData, top: u32) -> Vec<FockVector> {
    (0..=top).flat_map(|w| enumerate_weight(lie, w).into_values().flatten()).map(FockVector::from_monomial).collect()
}

#[derive(Clone, Copy)]
enum VirasoroJob {
    Affine,
    Heisenberg,
    Coset,
    Root(usize),
    Primary(usize),
}

fn check_virasoro(ctx: &Context) -> Result<Vec<CheckReport>, CliError> {
    if ctx.cfg.max_weight < 2 {
        return Err(CliError::Config("check-virasoro needs --max-weight >= 2".into()));
    }
    let lie = &ctx.lie;
    let k = q(ctx.cfg.level as i64);
    let m = ctx.cfg.mode_bound;
    let c_aff = &k * q(lie.dim() as i64) / (&k + q(lie.dual_coxeter() as i64));
    let rank = q(lie.rank() as i64);
    let mut jobs = vec![VirasoroJob::Affine, VirasoroJob::Heisenberg, VirasoroJob::Coset];
    jobs.extend((0..lie.num_positive_roots()).map(VirasoroJob::Root));
    jobs.extend((0..lie.num_positive_roots()).map(VirasoroJob::Primary));
    let results = par_map(jobs, |job| {
        timed(|| {
            let vm = ctx.vm();
            let (name, omega, samples, expected) = match job {
                VirasoroJob::Affine => ("omega_aff".to_string(), omega_aff(&vm)?, all_monomials(lie, m), c_aff.clone()),
                VirasoroJob::Heisenberg => ("omega_h".into(), omega_h(&vm)?, heisenberg_monomials(lie, m), rank.clone()),
                VirasoroJob::Coset => {
                    let top = ctx.cfg.max_weight.min(m + 1);
                    let n0: Vec<FockVector> = ctx.commutant(top)?.all_vectors().cloned().collect();
                    ("omega".into(), omega_parafermion(&vm)?, n0, &c_aff - &rank)
                }
                VirasoroJob::Root(r) => {
                    let w = omega_alpha(&vm, r)?;
                    let samples = vec![w.vector.clone(), w3_alpha(&vm, r)?.vector];
                    let ka = q(lie.level_rescale(r, ctx.cfg.level) as i64);
                    (w.name.clone(), w, samples, q(3) * &ka / (&ka + q(2)) - q(1))
                }
                VirasoroJob::Primary(r) => {
                    let w = omega_alpha(&vm, r)?.vector;
                    let w3 = w3_alpha(&vm, r)?;
                    let check = format!("primary[{}]", w3.name);
                    let ok = vm.primary_check(&w, &w3.vector, &q(3));
                    let report = CheckReport::from_witness(
                        check,
                        (!ok).then(|| ctx.show(&w3.vector)),
                        "not a weight-3 primary of the root Virasoro vector",
                    );
                    return Ok(report.constant("conformal_weight", 3));
                }
            };
            let check = format!("virasoro[{name}]");
            let v = vm.virasoro_check(&omega.vector, m, &samples);
            let computed = v.central_charge.clone().map(|c| c.to_string()).unwrap_or_else(|| "none".into());
            let report = match (&v.failure, &v.central_charge) {
                (Some(f), _) => CheckReport::fail(
                    check,
                    ctx.show(&f.witness),
                    format!("{} at (m, n) = ({}, {})", f.reason, f.m, f.n),
                ),
                (None, Some(c)) if *c != expected => CheckReport::fail(
                    check,
                    ctx.show(&omega.vector),
                    format!("central charge {c}, expected {expected}"),
                ),
                _ => CheckReport::pass(check),
            };
            Ok(report
                .constant("central_charge", computed)
                .constant("expected_central_charge", &expected)
                .constant("relations_checked", v.relations_checked))
        })
    });
    results.into_iter().collect()
}

fn heisenberg_witness(ctx: &Context, vm: &VacuumModule<'_>, v: &FockVector, top: i32) -> Option<String> {
    let lie = &ctx.lie;
    for i in 0..lie.rank() {
        for m in 0..=top {
            let t = vm.apply_basis_vector(lie.cartan_index(i), m, v);
            if !t.is_zero() {
                return Some(format!("h[{}]({m}) applied gives {}", i + 1, ctx.show(&t)));
            }
        }
    }
    None
}

fn check_commutant(ctx: &Context) -> Result<Vec<CheckReport>, CliError> {
    const MODES: i32 = 3;
    let lie = &ctx.lie;
    let mut jobs: Vec<Option<usize>> = vec![None];
    jobs.extend((0..lie.num_positive_roots()).map(Some));
    let results = par_map(jobs, |job| -> Result<Vec<CheckReport>, CliError> {
        let vm = ctx.vm();
        let vectors = match job {
            None => vec![omega_parafermion(&vm)?],
            Some(r) => vec![omega_alpha(&vm, r)?, w3_alpha(&vm, r)?],
        };
        let mut out = Vec::new();
        for nv in vectors {
            let report = timed(|| {
                let w = heisenberg_witness(ctx, &vm, &nv.vector, MODES);
                Ok(CheckReport::from_witness(format!("commutant[{}]", nv.name), w, "a Cartan mode does not annihilate")
                    .constant("modes", format!("0..={MODES}")))
            })?;
            let report = match job {
                Some(r) => report.constant("k_alpha", lie.level_rescale(r, ctx.cfg.level)),
                None => report,
            };
            out.push(report);
        }
        Ok(out)
    });
    Ok(results.into_iter().collect::<Result<Vec<_>, _>>()?.into_iter().flatten().collect())
}

fn check_generators(ctx: &Context, which: Which) -> Result<Vec<CheckReport>, CliError> {
    let lie = &ctx.lie;
    let top = ctx.cfg.max_weight;
    let vm = ctx.vm();
    let mut out = Vec::new();
    match which {
        Which::ChargeZero => {
            out.push(timed(|| {
                let mut gens = ctx.cartan_generators(&vm);
                for r in 0..lie.num_positive_roots() {
                    gens.push(vm.straighten(&[(lie.neg_index(r), -2), (lie.pos_index(r), -1)]));
                }
                let generated = generated_subalgebra(&vm, &gens, top, &ctx.limits)?;
                let v0 = charge_zero_space(lie, top, &ctx.limits)?;
                Ok(compare_spaces(ctx, "thm2.1", ("charge_zero", &v0), ("generated", &generated), top))
            })?);
        }
        Which::Commutant => {
            let n0 = ctx.commutant(top)?;
            let gens = ctx.root_generators(&vm)?;
            let generated = generated_subalgebra(&vm, &gens, top, &ctx.limits)?;
            out.push(timed(|| Ok(compare_spaces(ctx, "thm3.1", ("commutant", &n0), ("generated", &generated), top)))?);
            out.push(timed(|| {
                let mut more = gens.clone();
                more.extend(ctx.cartan_generators(&vm));
                let with_cartan = generated_subalgebra(&vm, &more, top, &ctx.limits)?;
                let v0 = charge_zero_space(lie, top, &ctx.limits)?;
                Ok(compare_spaces(
                    ctx,
                    "thm3.1-with-cartan",
                    ("charge_zero", &v0),
                    ("generated", &with_cartan),
                    top,
                ))
            })?);
        }
        Which::Parafermion => {
            out.push(timed(|| {
                let n0 = ctx.commutant(top)?;
                let ideal = ctx.commutant_ideal(&n0, top)?;
                let gens = ctx.root_generators(&vm)?;
                let generated = generated_subalgebra_modulo(&vm, &gens, &ideal, top, &ctx.limits)?;
                let quotient = quotient_dims(lie, &n0, &ideal)?.quotient_dims();
                let image: Vec<usize> = (0..=top).map(|w| generated.dim(w) - ideal.dim(w)).collect();
                Ok(compare_spaces(ctx, "thm4.1-gens", ("commutant", &n0), ("generated_plus_ideal", &generated), top)
                    .dims("parafermion", quotient)
                    .dims("generated_image", image))
            })?);
        }
    }
    Ok(out)
}

fn check_ideal(ctx: &Context) -> Result<Vec<CheckReport>, CliError> {
    let lie = &ctx.lie;
    let top = ctx.cfg.max_weight;
    let k = ctx.cfg.level;
    let root_top = (0..lie.num_positive_roots()).map(|r| lie.level_rescale(r, k) + 1).max().unwrap_or(0);
    let wide = top.max(root_top);
    let n0 = ctx.commutant(wide)?;
    let ideal = ctx.commutant_ideal(&n0, wide)?;
    let mut out = Vec::new();
    out.push(timed(|| {
        let j = ctx.vacuum_ideal(top)?;
        let j_cap = intersect(&j, &n0);
        let quotient = quotient_dims(lie, &n0, &ideal)?;
        Ok(compare_spaces(ctx, "ideal-cross-check", ("commutant_ideal", &ideal), ("vacuum_ideal_cap_commutant", &j_cap), top)
            .dims("vacuum_ideal", truncated_dims(&j, top))
            .dims("parafermion", quotient.quotient_dims().into_iter().take(top as usize + 1).collect()))
    })?);
    let vm = ctx.vm();
    for r in 0..lie.num_positive_roots() {
        out.push(timed(|| {
            let v = root_parafermion_singular(&vm, r)?;
            let inside = ideal.contains(lie, &v.vector);
            let check = format!("root-singular-in-ideal[{}]", ctx.root(r));
            Ok(CheckReport::from_witness(check, (!inside).then(|| ctx.show(&v.vector)), "not in the commutant ideal")
                .constant("k_alpha", lie.level_rescale(r, k))
                .constant("weight", v.weight))
        })?);
    }
    Ok(out)
}

fn check_weyl(ctx: &Context) -> Result<Vec<CheckReport>, CliError> {
    let lie = &ctx.lie;
    let top = ctx.cfg.max_weight;
    let vm = ctx.vm();
    let j = ctx.vacuum_ideal(top)?;
    let mut out = Vec::new();
    for i in 1..=lie.rank() {
        out.push(timed(|| {
            let s = lie.weyl_element(&[i])?;
            let check = format!("weyl-preserves-ideal[s{i}]");
            for w in 0..=top {
                for charge in j.charges_at(w) {
                    let image_charge = Charge(lie.reflect_root(&[i], &charge.0));
                    if j.dim_charge(w, &charge) != j.dim_charge(w, &image_charge) {
                        return Ok(CheckReport::fail(
                            check,
                            format!("weight {w}, charge {charge}"),
                            format!("bucket dimension differs at the reflected charge {image_charge}"),
                        ));
                    }
                    for v in j.bucket_vectors(w, &charge) {
                        let image = vm.weyl_apply(&s, v);
                        if !j.contains(lie, &image) {
                            return Ok(CheckReport::fail(check, ctx.show(v), "image leaves the ideal"));
                        }
                    }
                }
            }
            Ok(CheckReport::pass(check).dims("vacuum_ideal", truncated_dims(&j, top)))
        })?);
    }
    let theta = lie.positive_roots()[lie.theta()].clone();
    let sing = parafermion_singular(&vm)?.vector;
    for r in 0..lie.num_positive_roots() {
        let Some(word) = lie.weyl_word_between(&theta, &lie.positive_roots()[r]) else { continue };
        out.push(timed(|| {
            let s = lie.weyl_element(&word)?;
            let image = vm.weyl_apply(&s, &sing);
            let target = root_parafermion_singular(&vm, r)?.vector;
            let check = format!("weyl-singular[{}]", ctx.root(r));
            let ratio: Option<Q> = image.proportionality(&target).filter(|a| *a != q(0));
            let word_text: Vec<String> = word.iter().map(|i| format!("s{i}")).collect();
            let report = CheckReport::from_witness(check, ratio.is_none().then(|| ctx.show(&image)), "image is not a multiple of the root singular vector")
                .constant("word", if word_text.is_empty() { "e".to_string() } else { word_text.join(" ") });
            Ok(match ratio {
                Some(a) => report.constant("scalar", a),
                None => report,
            })
        })?);
    }
    Ok(out)
}
