//! The `hermlie` command line: `validate`, `hodge` and `verify` over a preset
//! or a group-spec file.
//!
//! Exit codes: 0 all checks pass, 1 an identity fails, 2 the input is
//! rejected, 3 a spectral-gap warning leaves the result inconclusive.

pub mod presets;
pub mod spec;

use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use crate::clifford::{self, SpinorData};
use crate::dolbeault::{self, HodgeNumbers, SpectralWarning};
use crate::error::Error;
use crate::hermitian::{self, Geometry};
use crate::liealg::{torus_check, GENERIC_SEED};
use crate::report::{Check, Status, SuiteReport};
use presets::ResolvedGroup;
use spec::GroupSpec;

pub const EXIT_PASS: i32 = 0;
pub const EXIT_FAIL: i32 = 1;
pub const EXIT_INPUT: i32 = 2;
pub const EXIT_INCONCLUSIVE: i32 = 3;

/// Trials per complex dimension in the standard-model Clifford checks.
pub const MODEL_TRIALS: usize = 100;
/// Random spinors for the quadratic-form identity.
pub const QUADRATIC_SAMPLES: usize = 50;

pub const SUITES: &[&str] = &["identities", "weyl", "hopf", "clifford", "lichnerowicz"];

#[derive(Parser, Debug)]
#[command(
    name = "hermlie",
    version,
    about = "Hermitian geometry of compact Lie groups"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Check the Lie algebra and the Samelson frame.
    Validate(CommonArgs),
    /// Invariant Hodge numbers h^{0,p} against C(r, p).
    Hodge(CommonArgs),
    /// Run verification suites.
    Verify(VerifyArgs),
}

#[derive(Args, Debug, Clone)]
pub struct CommonArgs {
    /// Built-in group.
    #[arg(long, conflicts_with = "file", required_unless_present = "file")]
    pub preset: Option<String>,
    /// Group-spec JSON file.
    #[arg(long)]
    pub file: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = Format::Human)]
    pub format: Format,
    /// Seed for randomized checks.
    #[arg(long, default_value_t = 1)]
    pub seed: u64,
    /// Tolerance for scalar and form identities.
    #[arg(long, default_value_t = hermitian::DEFAULT_TOL)]
    pub tol: f64,
    /// Write the report here instead of stdout.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Args, Debug, Clone)]
pub struct VerifyArgs {
    #[command(flatten)]
    pub common: CommonArgs,
    /// Comma-separated suites, or `all`.
    #[arg(long, default_value = "all")]
    pub suites: String,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Human,
    Json,
}

#[derive(Clone, Debug, Serialize)]
pub struct GroupInfo {
    pub name: String,
    pub real_dimension: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub complex_dimension: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub torus_dimension: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub bi_invariant: Option<bool>,
}

#[derive(Clone, Debug, Serialize)]
pub struct Provenance {
    pub source: String,
    pub seed: u64,
    pub tolerance: f64,
    pub preset_version: u32,
    pub generic_seed: u64,
}

#[derive(Clone, Debug, Serialize)]
pub struct HodgeTable {
    pub numbers: Vec<usize>,
    pub prediction: Vec<usize>,
    pub threshold: f64,
    pub warnings: Vec<SpectralWarning>,
    pub euler_characteristic: i64,
    pub status: Status,
}

impl From<&HodgeNumbers> for HodgeTable {
    fn from(h: &HodgeNumbers) -> Self {
        let status = if !h.matches_prediction() {
            Status::Fail
        } else if !h.conclusive() {
            Status::Inconclusive
        } else {
            Status::Pass
        };
        HodgeTable {
            numbers: h.numbers.clone(),
            prediction: h.prediction.clone(),
            threshold: h.threshold,
            warnings: h.warnings.clone(),
            euler_characteristic: h.euler_characteristic,
            status,
        }
    }
}

/// Everything a command prints. Field order is the JSON order.
#[derive(Clone, Debug, Serialize)]
pub struct Report {
    pub tool: &'static str,
    pub version: &'static str,
    pub command: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub group: Option<GroupInfo>,
    pub provenance: Provenance,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub hodge: Option<HodgeTable>,
    pub suites: Vec<SuiteReport>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
    pub status: Status,
    pub exit_code: i32,
}

impl Report {
    fn new(command: &str, args: &CommonArgs) -> Report {
        let source = match (&args.preset, &args.file) {
            (Some(p), _) => format!("preset:{p}"),
            (None, Some(f)) => format!("file:{}", f.display()),
            _ => "none".into(),
        };
        Report {
            tool: "hermlie",
            version: env!("CARGO_PKG_VERSION"),
            command: command.into(),
            group: None,
            provenance: Provenance {
                source,
                seed: args.seed,
                tolerance: args.tol,
                preset_version: presets::PRESET_VERSION,
                generic_seed: GENERIC_SEED,
            },
            hodge: None,
            suites: Vec::new(),
            error: None,
            status: Status::Pass,
            exit_code: EXIT_PASS,
        }
    }

    fn set_group(&mut self, g: &ResolvedGroup) {
        self.group = Some(GroupInfo {
            name: g.name.clone(),
            real_dimension: g.real_dim(),
            complex_dimension: Some(g.n()),
            torus_dimension: Some(g.torus_dim()),
            bi_invariant: Some(g.herm.bi_invariant),
        });
    }

    fn fail_input(&mut self, e: &Error) {
        self.error = Some(e.to_string());
        self.status = Status::Fail;
        self.exit_code = EXIT_INPUT;
    }

    /// Status and exit code from the collected suites and Hodge table.
    fn finish(&mut self) {
        let mut statuses: Vec<Status> = self.suites.iter().map(|s| s.status()).collect();
        if let Some(h) = &self.hodge {
            statuses.push(h.status);
        }
        let fail = statuses.contains(&Status::Fail);
        let inconclusive = statuses.contains(&Status::Inconclusive);
        let any_pass = statuses.contains(&Status::Pass);
        self.status = if fail {
            Status::Fail
        } else if inconclusive {
            Status::Inconclusive
        } else if any_pass || statuses.is_empty() {
            Status::Pass
        } else {
            Status::NotApplicable
        };
        self.exit_code = if fail {
            EXIT_FAIL
        } else if inconclusive {
            EXIT_INCONCLUSIVE
        } else {
            EXIT_PASS
        };
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serializes");
        s.push('\n');
        s
    }

    pub fn to_human(&self) -> String {
        let mut out = String::new();
        out.push_str(&format!(
            "hermlie {} {}\n",
            self.command, self.provenance.source
        ));
        if let Some(g) = &self.group {
            out.push_str(&format!(
                "group {}: real dimension {}",
                g.name, g.real_dimension
            ));
            if let (Some(n), Some(t)) = (g.complex_dimension, g.torus_dimension) {
                out.push_str(&format!(", n = {n}, torus dimension {t}"));
            }
            if let Some(b) = g.bi_invariant {
                out.push_str(if b {
                    ", bi-invariant"
                } else {
                    ", not bi-invariant"
                });
            }
            out.push('\n');
        }
        out.push_str(&format!(
            "seed {}  tolerance {:e}\n",
            self.provenance.seed, self.provenance.tolerance
        ));
        if let Some(h) = &self.hodge {
            out.push_str("\n  p  h^{0,p}  C(r,p)\n");
            for (p, (a, b)) in h.numbers.iter().zip(&h.prediction).enumerate() {
                out.push_str(&format!("  {p:>1}  {a:>7}  {b:>6}\n"));
            }
            out.push_str(&format!(
                "  {}  kernel threshold {:.3e}, Euler characteristic {}\n",
                h.status.label(),
                h.threshold,
                h.euler_characteristic
            ));
            for w in &h.warnings {
                out.push_str(&format!(
                    "  warning: eigenvalue {:.3e} near the threshold in degree {}\n",
                    w.eigenvalue, w.p
                ));
            }
        }
        for s in &self.suites {
            out.push_str(&format!("\n[{}] {}\n", s.suite, s.status().label()));
            for p in &s.premises {
                let r = p
                    .residual
                    .map(|r| format!(" ({r:.3e})"))
                    .unwrap_or_default();
                out.push_str(&format!(
                    "  premise {:<32} {}{}\n",
                    p.name,
                    if p.holds { "holds" } else { "fails" },
                    r
                ));
            }
            let w = s
                .checks
                .iter()
                .map(|c| c.id.chars().count())
                .max()
                .unwrap_or(0);
            for c in &s.checks {
                let res = c
                    .residual
                    .map(|r| format!("{r:.3e} / {:.0e}", c.tolerance))
                    .unwrap_or_else(|| "-".into());
                out.push_str(&format!(
                    "  {:<12} {:<w$}  {:<20}  {}\n",
                    c.status.label(),
                    c.id,
                    res,
                    c.statement,
                ));
                if let Some(n) = &c.note {
                    out.push_str(&format!("  {:<12} {:<w$}  {}\n", "", "", n));
                }
            }
        }
        if let Some(e) = &self.error {
            out.push_str(&format!("error: {e}\n"));
        }
        out.push_str(&format!(
            "\n{} (exit {})\n",
            self.status.label(),
            self.exit_code
        ));
        out
    }
}

fn load_spec(args: &CommonArgs) -> Result<GroupSpec, Error> {
    match (&args.preset, &args.file) {
        (Some(p), _) => Ok(GroupSpec::from_preset(p)),
        (None, Some(f)) => {
            let text = std::fs::read_to_string(f)
                .map_err(|e| Error::Spec(format!("{}: {e}", f.display())))?;
            GroupSpec::from_json(&text)
        }
        _ => Err(Error::Spec("either --preset or --file is required".into())),
    }
}

fn validation_suites(spec: &GroupSpec) -> Result<(Vec<SuiteReport>, Option<ResolvedGroup>), Error> {
    let (alg, _) = spec.algebra()?;
    let v = alg.validate();
    let mut a = SuiteReport::new("algebra");
    a.push(Check::residual(
        "antisymmetry",
        "c^k_ij + c^k_ji = 0",
        v.antisymmetry,
        v.tolerance,
    ));
    a.push(Check::residual(
        "jacobi",
        "[[X,Y],Z] + [[Y,Z],X] + [[Z,X],Y] = 0",
        v.jacobi,
        v.tolerance,
    ));
    a.push(Check::residual(
        "unimodular",
        "tr ad X = 0",
        v.unimodularity,
        v.tolerance,
    ));
    if !v.pass {
        return Ok((vec![a], None));
    }
    let mut f = SuiteReport::new("frame");
    if alg.dim() % 2 != 0 {
        f.push(Check::not_applicable(
            "complex_structure",
            "Samelson complex structure exists",
            &format!("odd real dimension {}", alg.dim()),
        ));
        return Ok((vec![a, f], None));
    }
    let g = spec.resolve()?;
    let tc = torus_check(&g.alg, &g.frame.torus_basis);
    f.push(Check::residual(
        "torus_abelian",
        "[t, t] = 0",
        tc.bracket_residual,
        1e-10,
    ));
    f.push(Check::boolean(
        "torus_maximal",
        "centralizer of t is t",
        tc.maximal,
        Some(if tc.dimension == g.alg.dim() {
            format!(
                "torus dimension {}: the algebra is abelian and t is all of it",
                tc.dimension
            )
        } else {
            format!(
                "torus dimension {}, centralizer dimension {}",
                tc.dimension, tc.centralizer_dimension
            )
        }),
    ));
    let d = &g.frame.diagnostics;
    f.push(Check::residual(
        "root_eigenvectors",
        "[X, Z_α] = iα(X) Z_α",
        d.eigen_residual,
        1e-10,
    ));
    f.push(Check::residual(
        "frame_unitary",
        "g(Z_j, conj Z_k) = δ_jk",
        d.orthonormality,
        1e-10,
    ));
    f.push(Check::residual(
        "frame_isotropic",
        "g(Z_j, Z_k) = 0",
        d.isotropy,
        1e-10,
    ));
    f.push(Check::boolean(
        "frame_spans",
        "s ⊕ conj(s) = g^c",
        d.splitting > 1e-8,
        Some(format!("smallest singular value {:.3e}", d.splitting)),
    ));
    f.push(Check::residual(
        "subalgebra",
        "[s, s] ⊂ s",
        d.closure,
        1e-10,
    ));
    f.push(Check::residual("j_real", "J is real", d.j_imaginary, 1e-10));
    f.push(Check::residual(
        "j_orthogonal",
        "g(JX, JY) = g(X, Y)",
        g.herm.compatibility_residual,
        1e-10,
    ));
    f.push(Check::residual(
        "integrable",
        "N_J = 0",
        g.herm.nijenhuis_residual(&g.alg),
        1e-10,
    ));
    Ok((vec![a, f], Some(g)))
}

/// Parses the suite list; unknown names are input errors.
pub fn parse_suites(s: &str) -> Result<Vec<&'static str>, Error> {
    if s.trim() == "all" {
        return Ok(SUITES.to_vec());
    }
    let mut out = Vec::new();
    for part in s.split(',').map(str::trim).filter(|p| !p.is_empty()) {
        let found = SUITES.iter().find(|&&x| x == part).ok_or_else(|| {
            Error::InvalidInput(format!(
                "unknown suite '{part}' (available: {}, all)",
                SUITES.join(", ")
            ))
        })?;
        if !out.contains(found) {
            out.push(*found);
        }
    }
    if out.is_empty() {
        return Err(Error::InvalidInput("no suites selected".into()));
    }
    Ok(out)
}

/// Runs the named suites on a resolved group.
pub fn verify_suites(
    g: &ResolvedGroup,
    suites: &[&str],
    seed: u64,
    tol: f64,
) -> Result<(Vec<SuiteReport>, HodgeNumbers), Error> {
    let geo = Geometry::new(&g.alg, &g.herm)?;
    let hodge = dolbeault::hodge_numbers(&g.alg, &g.frame)?;
    let mut out = Vec::new();
    for &s in suites {
        match s {
            "identities" => {
                out.push(hermitian::identity_suite_geo(&geo, tol));
                out.push(hermitian::flatness_suite_geo(&geo));
                out.push(hermitian::anticanonical_suite_geo(&geo, tol));
            }
            "weyl" => out.push(hermitian::weyl_suite_geo(&geo, tol)),
            "hopf" => {
                let mut rep = hermitian::generalized_hopf_geo(&geo, tol);
                let applicable = rep.premises.iter().all(|p| p.holds);
                let c = Check::boolean(
                    "hopf_first_hodge_number",
                    "generalized Hopf implies h^{0,1} = 1",
                    hodge.numbers.get(1) == Some(&1),
                    Some(format!(
                        "h^{{0,1}} = {}",
                        hodge.numbers.get(1).copied().unwrap_or(0)
                    )),
                );
                rep.push(if applicable {
                    c
                } else {
                    c.demote("not a generalized Hopf structure")
                });
                out.push(rep);
            }
            "clifford" => {
                out.push(clifford::model_suite(MODEL_TRIALS, seed)?);
                let data = SpinorData::new(&g.alg, &g.herm, &g.frame)?;
                out.push(clifford::spinor_suite(&data, 1e-9_f64.max(tol))?);
            }
            "lichnerowicz" => {
                if g.herm.bi_invariant {
                    out.push(clifford::lichnerowicz_verify(
                        &g.alg,
                        &g.herm,
                        &g.frame,
                        QUADRATIC_SAMPLES,
                        seed,
                    )?);
                } else {
                    let mut rep = SuiteReport::new("lichnerowicz");
                    rep.premise(
                        "bi-invariant metric",
                        false,
                        Some(g.herm.bi_invariance_residual),
                    );
                    rep.push(Check::not_applicable(
                        "bismut_lichnerowicz",
                        "□² = (∇^{B,C})*∇^{B,C} + s/4 + (i/2)ρ^C + ¼dd^cΩ - |d^cΩ|²/8",
                        &Error::NotBiInvariant(g.herm.bi_invariance_residual).to_string(),
                    ));
                    out.push(rep);
                }
            }
            other => return Err(Error::InvalidInput(format!("unknown suite '{other}'"))),
        }
    }
    Ok((out, hodge))
}

fn execute(cli: &Cli) -> (Report, CommonArgs) {
    match &cli.command {
        Command::Validate(args) => {
            let mut rep = Report::new("validate", args);
            match load_spec(args).and_then(|s| validation_suites(&s)) {
                Ok((suites, g)) => {
                    if let Some(g) = &g {
                        rep.set_group(g);
                    }
                    rep.suites = suites;
                    rep.finish();
                    if rep.exit_code == EXIT_FAIL {
                        rep.exit_code = EXIT_INPUT;
                    }
                }
                Err(e) => rep.fail_input(&e),
            }
            (rep, args.clone())
        }
        Command::Hodge(args) => {
            let mut rep = Report::new("hodge", args);
            match load_spec(args).and_then(|s| s.resolve()) {
                Ok(g) => {
                    rep.set_group(&g);
                    match dolbeault::hodge_numbers(&g.alg, &g.frame) {
                        Ok(h) => {
                            rep.hodge = Some(HodgeTable::from(&h));
                            rep.finish();
                        }
                        Err(e) => rep.fail_input(&e),
                    }
                }
                Err(e) => rep.fail_input(&e),
            }
            (rep, args.clone())
        }
        Command::Verify(v) => {
            let args = &v.common;
            let mut rep = Report::new("verify", args);
            let res = parse_suites(&v.suites).and_then(|suites| {
                let g = load_spec(args)?.resolve()?;
                let (reports, _) = verify_suites(&g, &suites, args.seed, args.tol)?;
                Ok((g, reports))
            });
            match res {
                Ok((g, reports)) => {
                    rep.set_group(&g);
                    rep.suites = reports;
                    rep.finish();
                }
                Err(e) => rep.fail_input(&e),
            }
            (rep, args.clone())
        }
    }
}

/// Parses `argv`, runs the command and writes the report. Returns the exit code.
pub fn run<I, T>(argv: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() {
                EXIT_INPUT
            } else {
                EXIT_PASS
            };
            let text = e.render().to_string();
            let _ = if e.use_stderr() {
                stderr.write_all(text.as_bytes())
            } else {
                stdout.write_all(text.as_bytes())
            };
            return code;
        }
    };
    let (rep, args) = execute(&cli);
    let text = match args.format {
        Format::Human => rep.to_human(),
        Format::Json => rep.to_json(),
    };
    match &args.out {
        Some(path) => {
            if let Err(e) = std::fs::write(path, &text) {
                let _ = writeln!(stderr, "error: cannot write {}: {e}", path.display());
                return EXIT_INPUT;
            }
            let _ = writeln!(
                stderr,
                "{} (exit {}), report written to {}",
                rep.status.label(),
                rep.exit_code,
                path.display()
            );
        }
        None => {
            let _ = stdout.write_all(text.as_bytes());
        }
    }
    rep.exit_code
}

/// JSON report for the named command, as used by the FFI layer.
pub fn report_json(
    command: &str,
    spec: &GroupSpec,
    suites: &str,
    seed: u64,
    tol: f64,
) -> (String, i32) {
    let args = CommonArgs {
        preset: spec.preset.clone(),
        file: None,
        format: Format::Json,
        seed,
        tol,
        out: None,
    };
    let mut rep = Report::new(command, &args);
    if spec.preset.is_none() {
        rep.provenance.source = format!("spec:{}", spec.display_name());
    }
    let outcome: Result<(), Error> = (|| {
        match command {
            "validate" => {
                let (s, g) = validation_suites(spec)?;
                if let Some(g) = &g {
                    rep.set_group(g);
                }
                rep.suites = s;
                rep.finish();
                if rep.exit_code == EXIT_FAIL {
                    rep.exit_code = EXIT_INPUT;
                }
            }
            "hodge" => {
                let g = spec.resolve()?;
                rep.set_group(&g);
                rep.hodge = Some(HodgeTable::from(&dolbeault::hodge_numbers(
                    &g.alg, &g.frame,
                )?));
                rep.finish();
            }
            "verify" => {
                let names = parse_suites(suites)?;
                let g = spec.resolve()?;
                rep.set_group(&g);
                rep.suites = verify_suites(&g, &names, seed, tol)?.0;
                rep.finish();
            }
            other => return Err(Error::InvalidInput(format!("unknown command '{other}'"))),
        }
        Ok(())
    })();
    if let Err(e) = outcome {
        rep.fail_input(&e);
    }
    (rep.to_json(), rep.exit_code)
}
