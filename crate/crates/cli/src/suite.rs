use std::time::Instant;

use dbracket::{certify, check_compat, check_moment_map, Claim, Context};
use kontsevich::{closed_form, commute_report, compact_point, flow, vector_field, FlowConfig, HamiltonianSpec, KSystem};
use models::{build_multiplicative, fuse_from_pieces};
use ncalg::{render_element, Element, VertexType};
use rand::seq::IndexedRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use repspace::lie::{basis_o, basis_sp, cartan3, cartan_o_closed, cartan_sp_closed, gram_duals};
use repspace::{
    cartan_action, check_moment_map_rep, jacobiator, sample_point, Entry, JacMode, Mode, RepBracket, RepPoint, Scaled, TypedDims,
};

use crate::build::{build_context, dims, quiver};
use crate::dsl::{KontsevichSection, ModelKind, ModelSpec, PointKind, RepSection, Suite};
use crate::error::CliError;
use crate::report::{CheckRecord, Report, Status};

/// Failures listed in a record's details before truncation.
const MAX_DETAILS: usize = 5;

#[derive(Debug, Clone, PartialEq)]
pub struct RunOptions {
    pub tolerance: f64,
    pub seed_override: Option<u64>,
    pub timings: bool,
    /// Worker threads for per-seed checks.
    pub threads: usize,
}

impl Default for RunOptions {
    fn default() -> Self {
        RunOptions { tolerance: 1e-9, seed_override: None, timings: false, threads: 1 }
    }
}

impl RunOptions {
    /// Thread count from `DQP_THREADS`, default 1.
    pub fn threads_from_env() -> usize {
        std::env::var("DQP_THREADS").ok().and_then(|v| v.parse().ok()).filter(|&n| n > 0).unwrap_or(1)
    }
}

/// The model as the run sees it, with `--seed-override` applied.
pub fn effective_spec(spec: &ModelSpec, opts: &RunOptions) -> ModelSpec {
    let mut spec = spec.clone();
    if let (Some(s), Some(r)) = (opts.seed_override, spec.rep.as_mut()) {
        r.seeds = vec![s];
    }
    spec
}

fn timed(opts: &RunOptions, f: impl FnOnce() -> CheckRecord) -> CheckRecord {
    let start = Instant::now();
    let mut r = f();
    if opts.timings {
        r.elapsed_ms = Some(start.elapsed().as_millis() as u64);
    }
    r
}

/// Runs `f` on every seed, `threads` at a time, keeping seed order.
fn per_seed<F>(seeds: &[u64], threads: usize, f: F) -> Vec<CheckRecord>
where
    F: Fn(u64) -> CheckRecord + Sync,
{
    if threads <= 1 || seeds.len() <= 1 {
        return seeds.iter().map(|&s| f(s)).collect();
    }
    let mut out: Vec<Option<CheckRecord>> = vec![None; seeds.len()];
    std::thread::scope(|scope| {
        let handles: Vec<_> = (0..threads.min(seeds.len()))
            .map(|w| {
                let f = &f;
                scope.spawn(move || {
                    (w..seeds.len()).step_by(threads).map(|i| (i, f(seeds[i]))).collect::<Vec<_>>()
                })
            })
            .collect();
        for h in handles {
            for (i, r) in h.join().expect("worker panicked") {
                out[i] = Some(r);
            }
        }
    });
    out.into_iter().map(|r| r.expect("every seed ran")).collect()
}

fn exact_record(name: &str, checked: usize, failures: Vec<(String, String)>) -> CheckRecord {
    let status = if failures.is_empty() { Status::Pass } else { Status::Fail };
    let mut r = CheckRecord::new(name, status);
    r.details.push(format!("{checked} identities checked, {} failed", failures.len()));
    r.reproducer = failures.first().map(|f| f.0.clone());
    r.details.extend(failures.into_iter().take(MAX_DETAILS).map(|f| f.1));
    r
}

fn run_certify(ctx: &Context) -> CheckRecord {
    let rep = certify(&ctx.db);
    let fails = rep
        .failures
        .iter()
        .map(|f| {
            (
                format!("generators ({}, {}, {})", f.a, f.b, f.c),
                format!("{{{{{},{},{}}}}}: triple bracket = {}; expected {}", f.a, f.b, f.c, f.jacobiator, f.expected),
            )
        })
        .collect();
    let mut r = exact_record("certify", rep.triples_checked, fails);
    r.details.insert(0, format!("claim {}", rep.claim.name()));
    r
}

fn run_compat(ctx: &Context) -> CheckRecord {
    let Some(phi) = &ctx.phi else {
        return CheckRecord::skipped("compat", "no anti-involution");
    };
    let rep = check_compat(&ctx.db, phi);
    let fails = rep
        .failures
        .iter()
        .map(|f| (format!("generators ({}, {})", f.a, f.b), format!("<<{},{}>>: φ⊗φ side = {}; bracket side = {}", f.a, f.b, f.lhs, f.rhs)))
        .collect();
    exact_record("compat", rep.pairs_checked, fails)
}

fn run_moment_exact(ctx: &Context) -> CheckRecord {
    let Some(m) = &ctx.moment else {
        return CheckRecord::skipped("moment.exact", "no moment map");
    };
    let rep = check_moment_map(&ctx.db, m);
    let fails = rep
        .failures
        .iter()
        .map(|f| (format!("vertex {}, generator {}", f.vertex, f.generator), format!("vertex {}, {}: {} vs {}", f.vertex, f.generator, f.lhs, f.rhs)))
        .collect();
    exact_record("moment.exact", rep.checked, fails)
}

fn run_fusion(spec: &ModelSpec) -> CheckRecord {
    let a = spec.algebra.as_ref().expect("checked by caller");
    if a.kind != ModelKind::Multiplicative {
        return CheckRecord::skipped("fusion", "the fusion oracle applies to multiplicative quivers");
    }
    let result = fuse_from_pieces(&quiver(a)).and_then(|(fused, q)| Ok((fused, build_multiplicative(&q)?)));
    let (fused, direct) = match result {
        Ok(x) => x,
        Err(e) => return CheckRecord::skipped("fusion", e.to_string()),
    };
    let alg = direct.alg();
    let n = alg.num_gens() as u32;
    let mut fails = Vec::new();
    for x in 0..n {
        for y in 0..n {
            if fused.db.entry(x, y) != direct.db.entry(x, y) {
                let (gx, gy) = (&alg.gen(x).name, &alg.gen(y).name);
                fails.push((
                    format!("generators ({gx}, {gy})"),
                    format!("<<{gx},{gy}>>: fused {} vs direct {}", fused.db.render_entry(x, y), direct.db.render_entry(x, y)),
                ));
            }
        }
    }
    if fused.moment != direct.moment {
        fails.push(("moment map".into(), "fused and direct moment maps differ".into()));
    }
    if fused.phi != direct.phi {
        fails.push(("anti-involution".into(), "fused and direct anti-involutions differ".into()));
    }
    exact_record("fusion", (n * n) as usize, fails)
}

fn run_cartan(d: &TypedDims, opts: &RunOptions) -> Vec<CheckRecord> {
    if d.mode() == Mode::Gl {
        return vec![CheckRecord::skipped("cartan", "no structure group on GL points")];
    }
    let mut blocks: Vec<(VertexType, usize)> = d.types().iter().copied().zip(d.alpha().iter().copied()).collect();
    blocks.sort();
    blocks.dedup();
    blocks
        .into_iter()
        .filter(|&(_, n)| n > 0)
        .map(|(t, n)| timed(opts, || {
            let name = format!("cartan[{}{n}]", t.tag());
            let (basis, listed, closed) = match t {
                VertexType::Sp => {
                    let (b, d) = basis_sp(n / 2);
                    (b, d, cartan_sp_closed(n / 2))
                }
                _ => {
                    let (b, d) = basis_o(n);
                    (b, d, cartan_o_closed(n))
                }
            };
            let mut fails = Vec::new();
            if gram_duals(&basis).as_ref() != Some(&listed) {
                fails.push(("dual basis".into(), "listed duals differ from the Gram-matrix duals".into()));
            }
            let built = cartan3(&basis, &listed);
            if built != closed {
                fails.push((
                    "trivector".into(),
                    format!("Σ F⊗F′⊗F″ has {} terms, closed form {} terms", built.len(), closed.len()),
                ));
            }
            exact_record(&name, 2, fails)
        }))
        .collect()
}

/// Every block entry of every generator.
pub fn all_entries(p: &RepPoint) -> Vec<Entry> {
    let t = p.tables();
    let mut out = Vec::new();
    for (g, gen) in p.alg().gens().iter().enumerate() {
        for i in t.block(gen.tail as usize) {
            for j in t.block(gen.head as usize) {
                out.push(Entry::new(g as u32, i, j));
            }
        }
    }
    out
}

fn entry_name(ctx: &Context, e: Entry) -> String {
    format!("{}[{},{}]", ctx.alg().gen(e.gen).name, e.i, e.j)
}

fn run_jacobi(ctx: &Context, d: &TypedDims, r: &RepSection, seed: u64, tol: f64) -> CheckRecord {
    let quasi = match ctx.db.claim() {
        Claim::Poisson => false,
        Claim::QuasiPoisson => true,
        Claim::None => return CheckRecord::skipped("jacobi", "the table claims no Jacobi identity").with_seed(seed),
    };
    if quasi && d.mode() == Mode::Gl {
        return CheckRecord::skipped("jacobi", "the Cartan action needs a twisted point").with_seed(seed);
    }
    let p = match sample_point(ctx, d, seed) {
        Ok(p) => p,
        Err(e) => return CheckRecord::skipped("jacobi", e.to_string()).with_seed(seed),
    };
    let br = match RepBracket::new(ctx, &p) {
        Ok(b) => b,
        Err(e) => return CheckRecord::skipped("jacobi", e.to_string()).with_seed(seed),
    };
    let entries = all_entries(&p);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let (mut worst_abs, mut worst_rel, mut worst) = (0.0f64, 0.0f64, None);
    for _ in 0..r.trials {
        let mut pick = || *entries.choose(&mut rng).expect("nonempty point");
        let (x, y, z) = (pick(), pick(), pick());
        let j = jacobiator(&br, x, y, z, JacMode::ClosedForm);
        let target = if quasi { cartan_action(&p, x, y, z).unwrap_or(Scaled::ZERO) } else { Scaled::ZERO };
        let rel = j.rel_diff(&target);
        worst_abs = worst_abs.max((j.value - target.value).abs());
        if rel > worst_rel || worst.is_none() {
            worst_rel = worst_rel.max(rel);
            worst = Some((x, y, z, j, target));
        }
    }
    let status = if worst_rel <= tol { Status::Pass } else { Status::Fail };
    let mut rec = CheckRecord::new("jacobi", status).with_seed(seed).with_errors(worst_abs, worst_rel);
    rec.details.push(format!("{} triples against {}", r.trials, if quasi { "the Cartan action" } else { "zero" }));
    if let (Status::Fail, Some((x, y, z, j, t))) = (status, worst) {
        rec.details.push(format!("jacobiator {:e} vs target {:e}", j.value, t.value));
        rec.reproducer = Some(format!("seed={seed} triple=({}, {}, {})", entry_name(ctx, x), entry_name(ctx, y), entry_name(ctx, z)));
    }
    rec
}

fn run_moment_rep(ctx: &Context, d: &TypedDims, seed: u64, tol: f64) -> CheckRecord {
    let name = "moment.rep";
    if ctx.moment.is_none() {
        return CheckRecord::skipped(name, "no moment map").with_seed(seed);
    }
    if d.mode() == Mode::Gl {
        return CheckRecord::skipped(name, "moment maps are checked on twisted points").with_seed(seed);
    }
    let rep = match sample_point(ctx, d, seed).and_then(|p| check_moment_map_rep(ctx, &p, None)) {
        Ok(r) => r,
        Err(e) => return CheckRecord::skipped(name, e.to_string()).with_seed(seed),
    };
    let status = if rep.passed(tol) { Status::Pass } else { Status::Fail };
    let mut rec = CheckRecord::new(name, status).with_seed(seed).with_errors(rep.max_abs_error, rep.max_rel_error.max(rep.value_error));
    rec.details.push(format!("{} identities, value error {:e}", rep.checked, rep.value_error));
    if status == Status::Fail {
        if let Some(w) = &rep.worst {
            rec.details.push(w.clone());
        }
        rec.reproducer = Some(format!("seed={seed} {}", rep.worst.as_deref().unwrap_or("value check")));
    }
    rec
}

/// Closed elements used by the trace check: loops and closed length-2 paths.
fn trace_elements(ctx: &Context) -> Vec<Element> {
    let alg = ctx.alg();
    let gens: Vec<Element> = alg.gens().iter().map(|g| alg.g(&g.name)).collect();
    let closed = |x: &Element| !x.is_zero() && x.iter().all(|(w, _)| w.is_closed());
    let mut out: Vec<Element> = gens.iter().filter(|x| closed(x)).cloned().collect();
    for a in &gens {
        for b in &gens {
            let ab = a * b;
            if closed(&ab) && !out.contains(&ab) {
                out.push(ab);
            }
        }
    }
    out.truncate(8);
    out
}

fn run_trace(ctx: &Context, d: &TypedDims, seed: u64, tol: f64) -> CheckRecord {
    let name = "trace";
    let elems = trace_elements(ctx);
    if elems.is_empty() {
        return CheckRecord::skipped(name, "no closed paths of length ≤ 2").with_seed(seed);
    }
    let p = match sample_point(ctx, d, seed) {
        Ok(p) => p,
        Err(e) => return CheckRecord::skipped(name, e.to_string()).with_seed(seed),
    };
    let br = match RepBracket::new(ctx, &p) {
        Ok(b) => b,
        Err(e) => return CheckRecord::skipped(name, e.to_string()).with_seed(seed),
    };
    let (mut worst_abs, mut worst_rel, mut worst) = (0.0f64, 0.0f64, None);
    for a in &elems {
        for b in &elems {
            let (Ok(c), Ok(s), Ok(t)) = (br.trace(a, b), br.trace_by_indices(a, b), br.trace(b, a)) else {
                continue;
            };
            let scale = c.abs().max(s.abs()).max(1.0);
            for diff in [(c - s).abs(), (c + t).abs()] {
                worst_abs = worst_abs.max(diff);
                if diff / scale > worst_rel {
                    worst_rel = diff / scale;
                    worst = Some((a.clone(), b.clone(), c, s, t));
                }
            }
        }
    }
    let status = if worst_rel <= tol { Status::Pass } else { Status::Fail };
    let mut rec = CheckRecord::new(name, status).with_seed(seed).with_errors(worst_abs, worst_rel);
    rec.details.push(format!("{} trace pairs: closed form, index sum and antisymmetry", elems.len() * elems.len()));
    if let (Status::Fail, Some((a, b, c, s, t))) = (status, worst) {
        let (ra, rb) = (render_element(ctx.alg(), &a), render_element(ctx.alg(), &b));
        rec.details.push(format!("{{tr {ra}, tr {rb}}}: closed {c:e}, index sum {s:e}, reversed {t:e}"));
        rec.reproducer = Some(format!("seed={seed} a={ra} b={rb}"));
    }
    rec
}

pub fn hamiltonian(sys: &KSystem, k: &KontsevichSection) -> HamiltonianSpec {
    match &k.lambda {
        Some(l) => HamiltonianSpec::modified(sys, l.clone()),
        None => HamiltonianSpec::original(sys),
    }
}

pub fn flow_config(k: &KontsevichSection, seed: u64) -> FlowConfig {
    FlowConfig {
        dt: k.dt,
        steps: k.steps,
        max_power: k.max_power,
        sample_every: k.sample_every,
        horizon: f64::INFINITY,
        seed,
    }
}

/// Start point of a flow on `L₁,₀` from the `[rep]` section.
pub fn flow_point(sys: &KSystem, r: &RepSection, k: &KontsevichSection, seed: u64) -> Result<RepPoint, CliError> {
    let [n] = r.alpha[..] else {
        return Err(CliError::Spec(format!("the handle algebra has one vertex; alpha has {} entries", r.alpha.len())));
    };
    if r.mode == Mode::Gl {
        if k.point == PointKind::Sampled {
            return Ok(sample_point(&sys.ctx, &TypedDims::gl(vec![n]), seed)?);
        }
        let o = compact_point(sys, n, VertexType::O, seed)?;
        return Ok(RepPoint::from_matrices(sys.alg(), TypedDims::gl(vec![n]), o.matrices().to_vec(), seed)?);
    }
    let t = *r.types.first().ok_or_else(|| CliError::Spec("twisted flows need `types` in [rep]".into()))?;
    Ok(match k.point {
        PointKind::Compact => compact_point(sys, n, t, seed)?,
        PointKind::Sampled => sample_point(&sys.ctx, &TypedDims::new(vec![n], vec![t], Mode::Twisted)?, seed)?,
    })
}

fn run_kontsevich(spec: &ModelSpec, opts: &RunOptions) -> Result<Vec<CheckRecord>, CliError> {
    let Some(k) = &spec.kontsevich else {
        return Ok(vec![CheckRecord::skipped("kontsevich", "no [kontsevich] section")]);
    };
    let sys = KSystem::new()?;
    let h = hamiltonian(&sys, k);
    let mut out = Vec::new();
    out.push(timed(opts, || {
        let (got, want) = (vector_field(&sys, &h), closed_form(&sys, &h));
        let mut fails = Vec::new();
        for (x, g, w) in [("u", &got.u, &want.u), ("v", &got.v, &want.v)] {
            if g != w {
                fails.push((format!("{} {x}", h.label()), format!("{x}' = {} vs closed form {}", sys.render(g), sys.render(w))));
            }
        }
        exact_record("kontsevich.field", 2, fails)
    }));
    out.push(timed(opts, || {
        let rep = commute_report(&sys, &h, 6);
        let mut fails: Vec<(String, String)> = rep
            .pairs
            .iter()
            .filter(|p| !p.2)
            .map(|p| (format!("k={} l={}", p.0, p.1), format!("<h^{}, h^{}> does not reduce to 0", p.0, p.1)))
            .collect();
        fails.extend(rep.displays.iter().filter(|d| !d.1).map(|d| (d.0.clone(), format!("display {} differs from eval", d.0))));
        exact_record("kontsevich.commute", rep.pairs.len() + rep.displays.len(), fails)
    }));
    let Some(r) = &spec.rep else {
        out.push(CheckRecord::skipped("kontsevich.flow", "no [rep] section"));
        return Ok(out);
    };
    let seeds = r.seeds.clone();
    let flows = per_seed(&seeds, opts.threads, |seed| {
        timed(opts, || {
            let run = flow_point(&sys, r, k, seed).and_then(|p| Ok(flow(&sys, &p, &h, &flow_config(k, seed))?));
            match run {
                Ok(tr) => {
                    let d = tr.report.max_drift();
                    let status = if d <= k.drift_tol { Status::Pass } else { Status::Fail };
                    let mut rec = CheckRecord::new("kontsevich.flow", status).with_seed(seed).with_errors(d, d);
                    rec.details.push(format!(
                        "{} steps of {}: trace drift {:?}, Φ drift {:e}",
                        tr.report.steps, tr.report.dt, tr.report.max_trace_drift, tr.report.max_phi_drift
                    ));
                    if status == Status::Fail {
                        rec.reproducer = Some(format!("seed={seed}"));
                    }
                    rec
                }
                Err(e) => {
                    let mut rec = CheckRecord::new("kontsevich.flow", Status::Fail).with_seed(seed);
                    rec.details.push(e.to_string());
                    rec.reproducer = Some(format!("seed={seed}"));
                    rec
                }
            }
        })
    });
    out.extend(flows);
    Ok(out)
}

/// Runs the requested suites in the fixed order of [`Suite::ALL`].
pub fn run_suite(spec: &ModelSpec, opts: &RunOptions) -> Result<Report, CliError> {
    let spec = effective_spec(spec, opts);
    let input = format!("{spec}\ntolerance = {:e}\n", opts.tolerance);
    let requested = spec.verify.clone().unwrap_or_default();
    let mut checks = Vec::new();
    let needs_algebra = requested.iter().any(|s| *s != Suite::Kontsevich);
    let ctx = if needs_algebra { Some(build_context(crate::build::algebra(&spec)?)?) } else { None };
    let numeric = |s: &Suite| matches!(s, Suite::Jacobi | Suite::Moment | Suite::Trace | Suite::Cartan);
    let rep_dims = match (&ctx, &spec.rep) {
        (Some(ctx), Some(r)) if requested.iter().any(numeric) => Some((r, dims(ctx, r)?)),
        _ => None,
    };
    let tol = opts.tolerance;
    for suite in Suite::ALL.into_iter().filter(|s| requested.contains(s)) {
        let ctx = ctx.as_ref();
        match suite {
            Suite::Certify => checks.push(timed(opts, || run_certify(ctx.unwrap()))),
            Suite::Compat => checks.push(timed(opts, || run_compat(ctx.unwrap()))),
            Suite::Moment => {
                let ctx = ctx.unwrap();
                checks.push(timed(opts, || run_moment_exact(ctx)));
                match &rep_dims {
                    Some((r, d)) => checks.extend(per_seed(&r.seeds, opts.threads, |s| timed(opts, || run_moment_rep(ctx, d, s, tol)))),
                    None => checks.push(CheckRecord::skipped("moment.rep", "no [rep] section")),
                }
            }
            Suite::Fusion => checks.push(timed(opts, || run_fusion(&spec))),
            Suite::Cartan => match &rep_dims {
                Some((_, d)) => checks.extend(run_cartan(d, opts)),
                None => checks.push(CheckRecord::skipped("cartan", "no [rep] section")),
            },
            Suite::Jacobi => match &rep_dims {
                Some((r, d)) => {
                    let ctx = ctx.unwrap();
                    checks.extend(per_seed(&r.seeds, opts.threads, |s| timed(opts, || run_jacobi(ctx, d, r, s, tol))))
                }
                None => checks.push(CheckRecord::skipped("jacobi", "no [rep] section")),
            },
            Suite::Trace => match &rep_dims {
                Some((r, d)) => {
                    let ctx = ctx.unwrap();
                    checks.extend(per_seed(&r.seeds, opts.threads, |s| timed(opts, || run_trace(ctx, d, s, tol))))
                }
                None => checks.push(CheckRecord::skipped("trace", "no [rep] section")),
            },
            Suite::Kontsevich => checks.extend(run_kontsevich(&spec, opts)?),
        }
    }
    Ok(Report::new(&input, tol, checks))
}
