use std::collections::BTreeMap;
use std::path::Path;
use std::time::Instant;

use serde::Serialize;
use serde_json::{json, Value};

use gonal_core::action::build_action;
use gonal_core::atlas::{
    all_subspaces_brute, core_dim_lower_bounds, galois_closure, gaussian_count, orbit_classes, GaloisReport,
    Hyperplane, BRUTE_FORCE_CAP,
};
use gonal_core::calculus::{decomposition_report, genus_quotient_by_core, parameter_sweep};
use gonal_core::fixtures::{example_params, EXAMPLE};
use gonal_core::fq::Subspace;
use gonal_core::groupring::{build_group, verify_all, Transversals};
use gonal_core::reps::{rational_count_with_kernel_in_n, rep_table, RepFamily};
use gonal_core::words::parse_generator_words;
use gonal_core::{CoverParams, Error};

use crate::envelope::{Check, ParamsEcho, ReportEnvelope};

/// Exit status plus message for anything that stops a command early.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Failure {
    pub code: u8,
    pub message: String,
}

pub const EXIT_OK: u8 = 0;
pub const EXIT_VERIFICATION: u8 = 1;
pub const EXIT_INPUT: u8 = 2;
pub const EXIT_CAP: u8 = 3;

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::CapExceeded { .. } => EXIT_CAP,
            Error::IdentityFailure(_) | Error::VerificationFailure(_) => EXIT_VERIFICATION,
            _ => EXIT_INPUT,
        };
        Failure { code, message: e.to_string() }
    }
}

fn envelope(
    command: &str,
    params: Option<&CoverParams>,
    checks: Vec<Check>,
    payload: Value,
    start: Instant,
) -> ReportEnvelope {
    ReportEnvelope {
        command: command.into(),
        params: params.map(ParamsEcho::from),
        checks,
        payload,
        timing_us: start.elapsed().as_micros() as u64,
    }
}

fn to_value(x: impl Serialize) -> Value {
    serde_json::to_value(x).expect("payload serializes")
}

fn checks_from(pairs: &[(String, bool)]) -> Vec<Check> {
    pairs.iter().map(|(n, ok)| Check::new(n.clone(), *ok)).collect()
}

pub fn params(p: u32, q: u32, r: u32) -> Result<CoverParams, Failure> {
    Ok(CoverParams::new(p, q, r)?)
}

#[derive(Serialize)]
struct InvariantsPayload {
    g: u32,
    g_tilde: String,
    g_y: String,
    g_t: String,
    cone_points: u32,
    prym_dim: String,
    m: String,
    t: String,
    s0: u32,
    genus_by_core_dim: BTreeMap<usize, String>,
}

pub fn invariants(params: &CoverParams) -> Result<ReportEnvelope, Failure> {
    let start = Instant::now();
    let r = decomposition_report(params)?;
    let payload = InvariantsPayload {
        g: r.g,
        g_tilde: r.g_tilde.to_string(),
        g_y: r.g_y.to_string(),
        g_t: r.g_t.to_string(),
        cone_points: r.cone_points,
        prym_dim: r.prym_dim.to_string(),
        m: r.m.to_string(),
        t: r.t.to_string(),
        s0: r.s0,
        genus_by_core_dim: r.genus_z.iter().map(|(d, g)| (*d, g.to_string())).collect(),
    };
    Ok(envelope("invariants", Some(params), checks_from(&r.checks), to_value(payload), start))
}

#[derive(Debug, Clone, Copy, Default)]
pub struct AtlasOptions {
    pub orbits: bool,
    pub cores: bool,
    pub limit: Option<usize>,
    pub cap: u128,
}

#[derive(Serialize)]
struct ClassRow {
    index: usize,
    representative: String,
    core_dim: usize,
    core_order: String,
    group: String,
    quotient_genus: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    members: Option<Vec<String>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    core_basis: Option<Vec<String>>,
}

fn vector(v: &[u32]) -> String {
    format!("({})", v.iter().map(u32::to_string).collect::<Vec<_>>().join(","))
}

fn basis(s: &Subspace) -> Vec<String> {
    s.basis().iter().map(|v| vector(v)).collect()
}

pub fn atlas(params: &CoverParams, opts: AtlasOptions) -> Result<ReportEnvelope, Failure> {
    let start = Instant::now();
    let action = build_action(params);
    let classes = orbit_classes(&action, opts.cap)?;
    let (p, q) = (params.p(), params.q());
    let t = params.t().expect("validated parameters");
    let (bound, _) = core_dim_lower_bounds(params);
    let s0 = params.s0() as usize;

    let mut histogram: BTreeMap<usize, usize> = BTreeMap::new();
    for c in &classes {
        *histogram.entry(c.core_dim()).or_default() += 1;
    }
    let shown = opts.limit.unwrap_or(classes.len()).min(classes.len());
    let mut rows = Vec::with_capacity(shown);
    for (i, c) in classes.iter().take(shown).enumerate() {
        let k = params.n() - c.core_dim();
        rows.push(ClassRow {
            index: i + 1,
            representative: c.representative.to_string(),
            core_dim: c.core_dim(),
            core_order: gonal_core::BigUint::from(q).pow(c.core_dim() as u32).to_string(),
            group: format!("Z_{q}^{k} ⋊ Z_{p}"),
            quotient_genus: genus_quotient_by_core(params, c.core_dim())?.to_string(),
            members: opts.orbits.then(|| c.members.iter().map(Hyperplane::to_string).collect()),
            core_basis: opts.cores.then(|| basis(&c.core)),
        });
    }
    let checks = vec![
        Check::new("class count equals t", t == classes.len().into()),
        Check::new("every orbit has p members", classes.iter().all(|c| c.members.len() == p as usize)),
        Check::new(
            "every core is T-invariant",
            classes.iter().all(|c| c.core.is_invariant_under(action.matrix()).unwrap_or(false)),
        ),
        Check::new("core dimensions are multiples of s0", classes.iter().all(|c| c.core_dim() % s0 == 0)),
        Check::new("core dimension >= (p-1)(r-3)", classes.iter().all(|c| c.core_dim() >= bound)),
    ];
    let payload = json!({
        "hyperplanes": params.m().to_string(),
        "t": t.to_string(),
        "s0": s0,
        "core_dim_histogram": histogram.iter().map(|(d, n)| (d.to_string(), json!(n))).collect::<serde_json::Map<_, _>>(),
        "shown": shown,
        "classes": rows,
    });
    Ok(envelope("atlas", Some(params), checks, payload, start))
}

fn galois_payload(r: &GaloisReport, genus: String) -> Value {
    json!({
        "normal": r.hyperplane.to_string(),
        "core_dim": r.core_dim,
        "core_order": r.core_order().to_string(),
        "k": r.k,
        "group": r.descriptor(),
        "group_order": r.group_order().to_string(),
        "composite_is_galois": r.is_composite_galois,
        "k_exceeds_p_minus_one": r.exceeds_p_minus_one,
        "quotient_genus": genus,
    })
}

pub fn galois_from_text(params: &CoverParams, text: &str) -> Result<ReportEnvelope, Failure> {
    let start = Instant::now();
    let l = parse_generator_words(text, params)?;
    let h = Hyperplane::from_subspace(&l)?;
    let report = galois_closure(&h, &build_action(params))?;
    let genus = genus_quotient_by_core(params, report.core_dim)?.to_string();
    let checks = vec![
        Check::new("q^k = 1 mod p", report.congruence_holds),
        Check::new("core dimension >= (p-1)(r-3)", report.core_dim >= core_dim_lower_bounds(params).0),
    ];
    Ok(envelope("galois", Some(params), checks, galois_payload(&report, genus), start))
}

pub fn galois(params: &CoverParams, path: &Path) -> Result<ReportEnvelope, Failure> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Failure { code: EXIT_INPUT, message: format!("cannot read {}: {e}", path.display()) })?;
    let mut env = galois_from_text(params, &text)?;
    if let Value::Object(m) = &mut env.payload {
        m.insert("subgroup_file".into(), json!(path.display().to_string()));
    }
    Ok(env)
}

fn families(fs: &[RepFamily]) -> Value {
    fs.iter().map(|f| json!({"rep": f.label, "degree": f.degree.to_string(), "count": f.count.to_string()})).collect()
}

pub fn reps(params: &CoverParams) -> Result<ReportEnvelope, Failure> {
    let start = Instant::now();
    let table = rep_table(params)?;
    let complex_total: gonal_core::BigUint = table.complex.iter().map(|f| &f.count).sum();
    let payload = json!({
        "group_order": (params.group_order() * params.p()).to_string(),
        "complex_irreducibles": complex_total.to_string(),
        "complex": families(&table.complex),
        "rational": families(&table.rational),
        "isotypical": table.pairing.iter().map(|f| json!({
            "rep": f.rep, "factor": f.factor, "dim": f.dim.to_string(), "count": f.count.to_string()
        })).collect::<Value>(),
        "permutation": table.permutation.iter().map(|d| json!({
            "subgroup": d.subgroup, "index": d.index.to_string(), "constituents": d.constituents.join(" + ")
        })).collect::<Value>(),
    });
    Ok(envelope("reps", Some(params), checks_from(&table.checks), payload, start))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum Suite {
    Groupring,
    Counts,
    Identities,
    Fixtures,
}

pub const ALL_SUITES: [Suite; 4] = [Suite::Fixtures, Suite::Identities, Suite::Counts, Suite::Groupring];

impl Suite {
    pub fn name(self) -> &'static str {
        match self {
            Suite::Groupring => "groupring",
            Suite::Counts => "counts",
            Suite::Identities => "identities",
            Suite::Fixtures => "fixtures",
        }
    }
}

#[derive(Debug, Clone, Copy)]
pub struct VerifyOptions {
    /// Largest group order for the group-ring suite.
    pub cap: u128,
    /// Largest `n` for the counting suite.
    pub max_n: usize,
}

fn check_of<T>(name: String, r: Result<T, Error>, ok: impl FnOnce(&T) -> Option<String>) -> Result<Check, Failure> {
    match r {
        Ok(v) => Ok(match ok(&v) {
            None => Check::new(name, true),
            Some(why) => Check::failed(name, why),
        }),
        Err(e @ Error::CapExceeded { .. }) => Err(e.into()),
        Err(e) => Ok(Check::failed(name, e.to_string())),
    }
}

fn fixtures_suite(out: &mut Vec<Check>) -> Result<(), Failure> {
    let params = example_params();
    let action = build_action(&params);
    for ex in EXAMPLE {
        let name = format!(
            "fixture {}: core {}^{}, {}, genus {}",
            ex.name,
            params.q(),
            ex.core_dim,
            ex.descriptor,
            ex.quotient_genus
        );
        let result = parse_generator_words(ex.generators, &params)
            .and_then(|l| Hyperplane::from_subspace(&l))
            .and_then(|h| galois_closure(&h, &action))
            .and_then(|r| Ok((genus_quotient_by_core(&params, r.core_dim)?, r)));
        out.push(check_of(name, result, |(genus, r)| {
            let ok = r.core_dim == ex.core_dim
                && r.descriptor() == ex.descriptor
                && genus.to_string() == ex.quotient_genus.to_string();
            (!ok).then(|| format!("got core dim {}, {}, genus {genus}", r.core_dim, r.descriptor()))
        })?);
    }
    Ok(())
}

fn identities_suite(selected: Option<&CoverParams>, out: &mut Vec<Check>) -> Result<(), Failure> {
    let sweep = match selected {
        Some(c) => vec![c.clone()],
        None => parameter_sweep(13, 7, 6),
    };
    let mut failures = Vec::new();
    for c in &sweep {
        if let Err(e) = decomposition_report(c).and_then(|_| rep_table(c)) {
            failures.push(format!("{c}: {e}"));
        }
    }
    let name = format!("genus, Prym and representation identities over {} parameter sets", sweep.len());
    out.push(match failures.first() {
        None => Check::new(name, true),
        Some(first) => Check::failed(name, first.clone()),
    });
    let targets: Vec<CoverParams> = match selected {
        Some(c) => vec![c.clone()],
        None => [(3, 2, 4), (5, 2, 3)].iter().map(|&(p, q, r)| CoverParams::new(p, q, r).expect("valid")).collect(),
    };
    for c in targets {
        let name = format!("{c}: rational irreducibles with kernel in N~ = orbit classes");
        let result = orbit_classes(&build_action(&c), gonal_core::atlas::DEFAULT_ATLAS_CAP)
            .and_then(|classes| Ok((rational_count_with_kernel_in_n(&c)?, classes.len())));
        out.push(check_of(name, result, |(count, classes)| {
            (*count != (*classes).into()).then(|| format!("{count} vs {classes}"))
        })?);
    }
    Ok(())
}

fn counts_suite(max_n: usize, out: &mut Vec<Check>) -> Result<(), Failure> {
    for q in [2u32, 3] {
        let name = format!("Gaussian binomials vs brute force, q={q}, n<={max_n}");
        let mut witness = None;
        for n in 0..=max_n {
            let all = all_subspaces_brute(n, q, BRUTE_FORCE_CAP)?;
            for k in 0..=n {
                let brute = all.iter().filter(|s| s.dim() == k).count();
                let formula = gaussian_count(n, k, q);
                if witness.is_none() && formula != brute.into() {
                    witness = Some(format!("n={n} k={k}: {formula} vs {brute}"));
                }
            }
        }
        out.push(match witness {
            None => Check::new(name, true),
            Some(w) => Check::failed(name, w),
        });
    }
    Ok(())
}

fn groupring_suite(
    selected: Option<&CoverParams>,
    cap: u128,
    out: &mut Vec<Check>,
    payload: &mut serde_json::Map<String, Value>,
) -> Result<(), Failure> {
    let targets: Vec<CoverParams> = match selected {
        Some(c) => vec![c.clone()],
        None => [(5, 2, 3), (3, 2, 4)].iter().map(|&(p, q, r)| CoverParams::new(p, q, r).expect("valid")).collect(),
    };
    for c in targets {
        let group = build_group(&c, cap)?;
        let scalar = gonal_core::BigUint::from(c.q()).pow(c.n() as u32 - 1);
        let name = format!("{c}: (sum over L)(sum of Phi^k) = {scalar} on A_L, cross terms vanish, all hyperplanes");
        let result = verify_all(&group, Transversals::All);
        if let Ok(s) = &result {
            payload.insert(
                c.to_string(),
                json!({
                    "group_order": group.order(),
                    "frobenius_orbits": s.frobenius.orbit_count,
                    "hyperplanes": s.hyperplanes.len(),
                    "a_l_dim": s.expected_a_dim,
                    "scalar": s.scalar.to_string(),
                    "claim": s.claim,
                }),
            );
        }
        out.push(check_of(name, result, |s| {
            s.hyperplanes
                .iter()
                .find(|h| h.scalar != s.scalar || !h.cross_terms_vanish)
                .map(|h| format!("hyperplane {}", h.hyperplane))
        })?);
    }
    Ok(())
}

pub fn verify(
    suites: &[Suite],
    selected: Option<&CoverParams>,
    opts: VerifyOptions,
) -> Result<ReportEnvelope, Failure> {
    let start = Instant::now();
    let mut checks = Vec::new();
    let mut groupring = serde_json::Map::new();
    for &suite in suites {
        match suite {
            Suite::Fixtures => fixtures_suite(&mut checks)?,
            Suite::Identities => identities_suite(selected, &mut checks)?,
            Suite::Counts => counts_suite(opts.max_n, &mut checks)?,
            Suite::Groupring => groupring_suite(selected, opts.cap, &mut checks, &mut groupring)?,
        }
    }
    let payload = json!({
        "suites": suites.iter().map(|s| s.name()).collect::<Vec<_>>(),
        "checks_run": checks.len(),
        "groupring": groupring,
    });
    Ok(envelope("verify", selected, checks, payload, start))
}
