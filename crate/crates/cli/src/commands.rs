//! One report builder per subcommand.

use std::collections::BTreeMap;
use std::fs;
use std::path::PathBuf;
use std::sync::atomic::{AtomicUsize, Ordering};
use std::thread;

use cayley_ci_core::ci::{
    bci_check_z27, h_k_placement, non_ci_certificate, oracle_agreement, separation_check, Certificate, Check,
    ORACLE_SAMPLES,
};
use cayley_ci_core::ci::oracle::{all_connection_sets, groups_of_order_eight, groups_up_to_six};
use cayley_ci_core::digraph::{cayley, haar, orbital_coloring, two_closure, verify_phi_t, SearchOptions};
use cayley_ci_core::matgroup::families::{is_self_paired, parabolic};
use cayley_ci_core::matgroup::{
    build_t, check_alpha, check_modulus, orbit_families, resolve_x, special_case_z27, CosetImages, FamilyKind, Fq,
    SpecialCase, DEFAULT_MAX_Q,
};
use cayley_ci_core::matgroup::h_group;
use cayley_ci_core::schur::{generated_sring, transitivity_module, verify_table1, SRingPartition};
use serde_json::json;
use thiserror::Error;

use crate::report::Report;

#[derive(Debug, Error)]
pub enum CliError {
    #[error(transparent)]
    Core(#[from] cayley_ci_core::Error),
    #[error("{0}")]
    Usage(String),
    #[error("cannot write {path}: {source}")]
    Io { path: String, source: std::io::Error },
    #[error("cannot serialize: {0}")]
    Json(#[from] serde_json::Error),
}

/// Exit status for a run that could not produce a report.
pub const EXIT_BUDGET: u8 = 2;
pub const EXIT_USAGE: u8 = 64;
pub const EXIT_INTERNAL: u8 = 70;
pub const EXIT_IO: u8 = 74;

impl CliError {
    pub fn exit_code(&self) -> u8 {
        use cayley_ci_core::Error as E;
        match self {
            CliError::Usage(_) => EXIT_USAGE,
            CliError::Core(E::NotOddPrime(_) | E::FieldTooLarge { .. } | E::InvalidParameter(_) | E::ModulusMismatch(..)) => {
                EXIT_USAGE
            }
            CliError::Core(E::BudgetExceeded(_) | E::BoundExceeded { .. }) => EXIT_BUDGET,
            CliError::Core(_) | CliError::Json(_) => EXIT_INTERNAL,
            CliError::Io { .. } => EXIT_IO,
        }
    }
}

pub type CliResult<T> = Result<T, CliError>;

/// Settings shared by every subcommand.
#[derive(Clone, Debug, Default)]
pub struct Ctx {
    pub out: Option<PathBuf>,
    pub opts: SearchOptions,
}

impl Ctx {
    /// Writes `contents` under the output directory, if one was given.
    fn artifact(&self, report: &mut Report, name: &str, contents: &str) -> CliResult<()> {
        let Some(dir) = &self.out else {
            return Ok(());
        };
        let io = |source| CliError::Io {
            path: dir.display().to_string(),
            source,
        };
        fs::create_dir_all(dir).map_err(io)?;
        let path = dir.join(name);
        fs::write(&path, contents).map_err(|source| CliError::Io {
            path: path.display().to_string(),
            source,
        })?;
        report.artifact_paths.push(path.display().to_string());
        Ok(())
    }

    fn certificate_artifact(&self, report: &mut Report, name: &str, cert: &Certificate) -> CliResult<()> {
        let mut text = serde_json::to_string_pretty(cert)?;
        text.push('\n');
        self.artifact(report, name, &text)
    }
}

/// A subcommand with its arguments resolved.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Task {
    Orbits(u32),
    Separate(u32),
    TwoClosed(u32),
    SchurGen(u32, Option<i64>),
    NonCi(u32, Option<i64>),
    Z27,
    Alpha(u32),
    Phi(u32),
    Oracle,
}

impl Task {
    pub fn name(&self) -> &'static str {
        match self {
            Task::Orbits(_) => "orbits",
            Task::Separate(_) => "separate",
            Task::TwoClosed(_) => "two-closed",
            Task::SchurGen(..) => "schur-gen",
            Task::NonCi(..) => "non-ci",
            Task::Z27 => "z27",
            Task::Alpha(_) => "alpha",
            Task::Phi(_) => "phi",
            Task::Oracle => "oracle",
        }
    }

    fn tag(&self) -> String {
        match self {
            Task::Orbits(q)
            | Task::Separate(q)
            | Task::TwoClosed(q)
            | Task::SchurGen(q, _)
            | Task::NonCi(q, _)
            | Task::Alpha(q)
            | Task::Phi(q) => format!("{} q={q}", self.name()),
            Task::Z27 | Task::Oracle => self.name().to_string(),
        }
    }

    pub fn run(&self, ctx: &Ctx) -> CliResult<Report> {
        let mut report = Report::new(self.name());
        report.param("budget", ctx.opts.budget);
        match *self {
            Task::Orbits(q) => orbits(ctx, &mut report, q)?,
            Task::Separate(q) => separate(&mut report, q)?,
            Task::TwoClosed(q) => two_closed(ctx, &mut report, q)?,
            Task::SchurGen(q, x) => schur_gen(ctx, &mut report, q, x)?,
            Task::NonCi(q, x) => non_ci(ctx, &mut report, q, x)?,
            Task::Z27 => z27(ctx, &mut report)?,
            Task::Alpha(q) => alpha(&mut report, q)?,
            Task::Phi(q) => phi(&mut report, q)?,
            Task::Oracle => oracle(ctx, &mut report)?,
        }
        Ok(report)
    }
}

fn check_q(report: &mut Report, q: u32) -> CliResult<()> {
    check_modulus(q, DEFAULT_MAX_Q)?;
    report.param("q", q);
    Ok(())
}

/// The parameter `x`; only `q > 7` accepts a user value.
fn parameter_x(report: &mut Report, q: u32, x: Option<i64>) -> CliResult<Option<Fq>> {
    if x.is_some() && q <= 7 {
        return Err(CliError::Usage(format!("--x is fixed for q = {q}; it can only be chosen when q > 7")));
    }
    let x = resolve_x(q, x.map(|v| Fq::new(q, v)))?;
    report.param("x", x.map(|v| v.value()));
    Ok(x)
}

fn size_profile(sizes: impl IntoIterator<Item = usize>) -> String {
    let mut counts: BTreeMap<usize, usize> = BTreeMap::new();
    for s in sizes {
        *counts.entry(s).or_default() += 1;
    }
    counts.iter().map(|(s, c)| format!("{c}x{s}")).collect::<Vec<_>>().join(" ")
}

fn orbits(ctx: &Ctx, report: &mut Report, q: u32) -> CliResult<()> {
    check_q(report, q)?;
    let h = h_group(q);
    let img = CosetImages::new(q)?;
    let families = orbit_families(q);
    let brute = transitivity_module(&h, img.d.generators())?;
    let closed = SRingPartition::from_classes(h.order(), families.iter().map(|f| f.members.clone()).collect())?;
    let count = |kind| families.iter().filter(|f| f.kind == kind).count();
    let paired = |kind| families.iter().filter(|f| f.kind == kind && is_self_paired(f)).count();
    let half = (q as usize - 1) / 2;
    let qu = q as usize;
    report
        .claim(Check::new("singleton orbits", qu, count(FamilyKind::Singleton)))
        .claim(Check::new("coset-class orbits", half, count(FamilyKind::Coset)))
        .claim(Check::new("parabolic orbits", qu, count(FamilyKind::Parabolic)))
        .claim(Check::flag("brute-force orbits equal the closed-form families", brute == closed))
        .claim(Check::new(
            "orbit sizes",
            size_profile(vec![1; qu].into_iter().chain(vec![2 * qu; half]).chain(vec![qu; qu])),
            size_profile(brute.classes().iter().map(Vec::len)),
        ))
        .claim(Check::new("total orbit mass", 2 * qu * qu, families.iter().map(|f| f.len()).sum::<usize>()));
    let singles: Vec<String> = families
        .iter()
        .filter(|f| f.kind == FamilyKind::Singleton && is_self_paired(f))
        .map(|f| f.name())
        .collect();
    report
        .claim(Check::new("self-paired singleton orbits", "S_0", singles.join(",")))
        .claim(Check::new("self-paired coset classes", half, paired(FamilyKind::Coset)))
        .claim(Check::new("self-paired parabolic orbits", qu, paired(FamilyKind::Parabolic)));
    let table: Vec<_> = families
        .iter()
        .map(|f| json!({ "family": f.name(), "size": f.len(), "self_paired": is_self_paired(f) }))
        .collect();
    report.observe("families", table);
    ctx.artifact(report, &format!("orbits-q{q}.partition"), &brute.to_text())
}

fn separate(report: &mut Report, q: u32) -> CliResult<()> {
    check_q(report, q)?;
    let mut subset = vec![0];
    subset.extend(parabolic(Fq::zero(q)));
    let separates = separation_check(q, &subset)?;
    if q >= 5 {
        report.claim(Check::flag("{e} ∪ P_0 separates the G-orbitals", separates));
    } else {
        report.observe("{e} ∪ P_0 separates the G-orbitals (not asserted below q = 5)", separates);
    }
    Ok(())
}

fn two_closed(ctx: &Ctx, report: &mut Report, q: u32) -> CliResult<()> {
    check_q(report, q)?;
    let img = CosetImages::new(q)?;
    let n = img.action.degree();
    let gens = img.g.generators();
    let closure = two_closure(n, gens, ctx.opts)?;
    let group = closure.group()?;
    let qu = q as u64;
    let coloring = orbital_coloring(n, gens)?;
    report
        .claim(Check::new("|G^(2)| = 4q^3", 4 * qu * qu * qu, &closure.order))
        .claim(Check::flag("G^(2) contains G", gens.iter().all(|g| group.contains(g))))
        .claim(Check::new("orbitals of G on H", orbit_families(q).len(), coloring.color_count()));
    ctx.artifact(report, &format!("orbitals-q{q}.colored"), &coloring.to_text())
}

fn schur_gen(ctx: &Ctx, report: &mut Report, q: u32, x: Option<i64>) -> CliResult<()> {
    check_q(report, q)?;
    let x = parameter_x(report, q, x)?;
    let h = h_group(q);
    let img = CosetImages::new(q)?;
    let t = build_t(q, x)?;
    let module = transitivity_module(&h, img.d.generators())?;
    let generated = generated_sring(&h, &t)?;
    report
        .claim(Check::new("basic sets of <<T>>", module.len(), generated.len()))
        .claim(Check::flag("<<T>> = V(H,G_e) class by class", generated == module));
    let table = verify_table1(q)?;
    report.claim(Check::new(
        "product table entries verified",
        table.checked,
        table.checked - table.mismatches.len(),
    ));
    if !table.mismatches.is_empty() {
        report.observe("product table mismatches", table.mismatches);
    }
    ctx.artifact(report, &format!("schur-gen-q{q}-generated.partition"), &generated.to_text())?;
    ctx.artifact(report, &format!("schur-gen-q{q}-module.partition"), &module.to_text())
}

fn certificate_claims(ctx: &Ctx, report: &mut Report, cert: &Certificate) -> CliResult<()> {
    // a truncated search that fell short is an abort, not a refutation
    if !cert.search_complete && !cert.passed() {
        return Err(cayley_ci_core::Error::BudgetExceeded(ctx.opts.budget).into());
    }
    for c in cert.search_checks.iter().chain(&cert.replay_checks) {
        report.claim(c.clone());
    }
    report.claim(Check::flag("certificate replays from its payload", cert.verify()?));
    report.observe("search complete", cert.search_complete);
    Ok(())
}

fn non_ci(ctx: &Ctx, report: &mut Report, q: u32, x: Option<i64>) -> CliResult<()> {
    check_q(report, q)?;
    let x = parameter_x(report, q, x)?;
    let cert = non_ci_certificate(q, x, ctx.opts)?;
    certificate_claims(ctx, report, &cert)?;
    if q < 7 {
        let p = h_k_placement(q, &cert.connection_set, ctx.opts)?;
        report
            .claim(Check::flag("image of H is regular", p.h_regular))
            .claim(Check::flag("image of K is regular", p.k_regular))
            .claim(Check::flag("images of H and K are not conjugate in Aut", !p.conjugate))
            .observe("image of H is normal in Aut", p.h_normal)
            .observe("image of K is normal in Aut", p.k_normal);
    }
    if cert.automorphisms_examined > 0 {
        report.observe("automorphisms of H examined", cert.automorphisms_examined);
    }
    let h = h_group(q);
    ctx.certificate_artifact(report, &format!("non-ci-q{q}.json"), &cert)?;
    ctx.artifact(report, &format!("non-ci-q{q}-S.digraph"), &cayley(&h, &cert.connection_set)?.to_text())?;
    if !cert.other_set.is_empty() {
        ctx.artifact(report, &format!("non-ci-q{q}-T.digraph"), &cayley(&h, &cert.other_set)?.to_text())?;
    }
    Ok(())
}

fn z27(ctx: &Ctx, report: &mut Report) -> CliResult<()> {
    let cert = bci_check_z27(ctx.opts)?;
    certificate_claims(ctx, report, &cert)?;
    let sc = special_case_z27()?;
    ctx.certificate_artifact(report, "z27.json", &cert)?;
    ctx.artifact(report, "z27.digraph", &cayley(&sc.group, &sc.connection_set)?.to_text())?;
    let haar_graph = haar(&SpecialCase::abelian_group(), &sc.haar_set())?;
    ctx.artifact(report, "z27-haar.digraph", &haar_graph.to_text())
}

fn alpha(report: &mut Report, q: u32) -> CliResult<()> {
    check_q(report, q)?;
    let a = check_alpha(&CosetImages::new(q)?)?;
    report
        .claim(Check::flag("alpha is multiplicative on generators of G", a.homomorphism_on_generators))
        .claim(Check::flag("G^alpha = G", a.g_preserved))
        .claim(Check::flag("D^alpha = D", a.d_preserved))
        .claim(Check::flag("H^alpha = K", a.h_to_k))
        .claim(Check::flag("K^alpha = H", a.k_to_h))
        .claim(Check::flag("(Dh)^alpha = D h^alpha-hat for all h", a.coset_compatible))
        .claim(Check::flag("S_x -> S_-x, C_t -> C_t, P_x -> P_-x", a.family_action))
        .claim(Check::flag("induced permutation normalizes G", a.normalizes_g));
    Ok(())
}

fn phi(report: &mut Report, q: u32) -> CliResult<()> {
    check_q(report, q)?;
    let mut passing = 0;
    for t in 1..q as i64 {
        let ok = verify_phi_t(q, t)?;
        passing += usize::from(ok);
        report.claim(Check::flag(&format!("Phi_{t} is isomorphic to Cay(Z_q, {{±{t}}})"), ok));
    }
    report.claim(Check::new("values of t passing", q - 1, passing));
    Ok(())
}

fn oracle(ctx: &Ctx, report: &mut Report) -> CliResult<()> {
    report.param("samples_per_order_8_group", ORACLE_SAMPLES);
    let exhaustive: usize = groups_up_to_six()
        .iter()
        .map(|g| all_connection_sets(g.group.order()).len())
        .sum();
    let expected = exhaustive + ORACLE_SAMPLES * groups_of_order_eight().len();
    let r = oracle_agreement(ORACLE_SAMPLES, ctx.opts)?;
    report
        .claim(Check::new("connection sets compared", expected, r.cases))
        .claim(Check::new("disagreements", 0, r.disagreements.len()))
        .observe("non-CI connection sets", r.non_ci_cases);
    if !r.disagreements.is_empty() {
        report.observe("disagreeing cases", r.disagreements);
    }
    Ok(())
}

/// The default sweep, with `q = 13` added when `slow` is set.
pub fn sweep(slow: bool) -> Vec<Task> {
    let mut qs = vec![3u32, 5, 7, 11];
    if slow {
        qs.push(13);
    }
    let mut tasks = Vec::new();
    for &q in &qs {
        tasks.push(Task::Orbits(q));
        if q >= 5 {
            tasks.push(Task::Separate(q));
        }
        tasks.extend([
            Task::TwoClosed(q),
            Task::SchurGen(q, None),
            Task::NonCi(q, None),
            Task::Alpha(q),
            Task::Phi(q),
        ]);
    }
    tasks.extend([Task::Z27, Task::Oracle]);
    tasks
}

/// Runs every task on up to `jobs` threads and merges the reports in task order.
pub fn run_all(ctx: &Ctx, slow: bool, jobs: usize) -> CliResult<Report> {
    let tasks = sweep(slow);
    let next = AtomicUsize::new(0);
    let mut results: Vec<(usize, CliResult<Report>)> = thread::scope(|scope| {
        let workers: Vec<_> = (0..jobs.clamp(1, tasks.len()))
            .map(|_| {
                scope.spawn(|| {
                    let mut done = Vec::new();
                    loop {
                        let i = next.fetch_add(1, Ordering::Relaxed);
                        let Some(task) = tasks.get(i) else { break };
                        done.push((i, task.run(ctx)));
                    }
                    done
                })
            })
            .collect();
        workers
            .into_iter()
            .flat_map(|w| w.join().expect("worker thread panicked"))
            .collect()
    });
    results.sort_by_key(|(i, _)| *i);
    let mut report = Report::new("all");
    let qs: Vec<u32> = tasks
        .iter()
        .filter_map(|t| match t {
            Task::Orbits(q) => Some(*q),
            _ => None,
        })
        .collect();
    report.param("budget", ctx.opts.budget).param("q_sweep", qs).param("slow", slow);
    for (i, result) in results {
        report.absorb(&tasks[i].tag(), result?);
    }
    Ok(report)
}
