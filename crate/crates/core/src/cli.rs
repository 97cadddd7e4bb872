//! The `pcperm` command line.
//!
//! Exit codes: 0 on success, 1 when a required identity fails, 2 on usage
//! errors (including unknown identities), 3 when a size guard refuses the
//! request.

use std::io::Write;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::json;

use crate::cauchy_sequences::{evaluate, CellParams, SequenceError, SequenceFamily};
use crate::identity_registry::{self, BoxOverride, IdentityReport, Profile, RegistryError, ReportStatus};
use crate::permutation_lab::{
    count_brute, cycle_size_filter, enumerate_augmented_with, enumerate_brute_with, enumerate_partial_with, is_callan,
    is_poly_cauchy, orbit_statistics, BoundMode, ColoredPermutation, LabError, SizeGuard, BRUTE_LIMIT, PARTIAL_LIMIT,
};
use crate::special_numbers::stirling1;

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAIL: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_GUARD: i32 = 3;

/// Largest `n` accepted by `involution` without `--force`.
pub const INVOLUTION_N_MAX: usize = 5;
/// Largest `k` accepted by `involution` without `--force`.
pub const INVOLUTION_K_MAX: usize = 3;

#[derive(Debug, Parser)]
#[command(name = "pcperm", version, about = "Exact poly-Cauchy numbers, permutations and identity checks")]
pub struct Cli {
    /// Output format.
    #[arg(long, value_enum, global = true, default_value_t = Format::Tsv)]
    pub format: Format,
    /// Lift size guards.
    #[arg(long, global = true)]
    pub force: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Tsv,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum TableFamily {
    Hat,
    Bernoulli,
    Shifted,
    Restricted,
    Associated,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Variant {
    Plain,
    Callan,
    Restricted,
    Associated,
    Partial,
    Augmented,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum PolyFamily {
    Z,
    Q,
    RhoQ,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ProfileArg {
    Quick,
    Full,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Print a triangle of numbers, rows n and columns k.
    Table {
        #[arg(value_enum)]
        family: TableFamily,
        #[arg(long, default_value_t = 5)]
        n_max: usize,
        #[arg(long, default_value_t = 5)]
        k_max: usize,
        #[arg(long)]
        alpha: Option<usize>,
        #[arg(long)]
        bound: Option<usize>,
    },
    /// Count, and optionally list, a permutation family.
    Enumerate {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        k: usize,
        #[arg(long, value_enum, default_value_t = Variant::Plain)]
        variant: Variant,
        #[arg(long)]
        bound: Option<usize>,
        #[arg(long)]
        alpha: Option<usize>,
        #[arg(long)]
        list: bool,
    },
    /// Print a polynomial in canonical form.
    Poly {
        #[arg(long, value_enum)]
        family: PolyFamily,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        k: usize,
    },
    /// Check identities on their parameter boxes.
    Verify {
        /// Identity id, or `all`.
        #[arg(long, default_value = "all")]
        identity: String,
        #[arg(long, value_enum, default_value_t = ProfileArg::Quick)]
        profile: ProfileArg,
        #[arg(long)]
        n_max: Option<usize>,
        #[arg(long)]
        k_max: Option<i64>,
    },
    /// Audit the sign-reversing involution on structured configurations.
    Involution {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        k: usize,
        /// Number of special elements.
        #[arg(long, default_value_t = 0)]
        r: usize,
    },
}

enum Failure {
    Usage(String),
    Guard(String),
}

impl From<LabError> for Failure {
    fn from(e: LabError) -> Self {
        match e {
            LabError::SizeLimit { .. } => Failure::Guard(e.to_string()),
            other => Failure::Usage(other.to_string()),
        }
    }
}

impl From<SequenceError> for Failure {
    fn from(e: SequenceError) -> Self {
        Failure::Usage(e.to_string())
    }
}

impl From<RegistryError> for Failure {
    fn from(e: RegistryError) -> Self {
        match e {
            RegistryError::Lab(l) => l.into(),
            other => Failure::Usage(other.to_string()),
        }
    }
}

type Outcome = Result<i32, Failure>;

/// Parses `args` (including the program name) and runs the command, writing
/// results to `out` and diagnostics to `err`. Returns the exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = e.exit_code();
            let text = e.render().to_string();
            if e.use_stderr() {
                let _ = write!(err, "{text}");
            } else {
                let _ = write!(out, "{text}");
            }
            return code;
        }
    };
    match dispatch(&cli, out, err) {
        Ok(code) => code,
        Err(Failure::Usage(msg)) => {
            let _ = writeln!(err, "error: {msg}");
            EXIT_USAGE
        }
        Err(Failure::Guard(msg)) => {
            let _ = writeln!(err, "error: {msg}; pass --force to run anyway");
            EXIT_GUARD
        }
    }
}

fn dispatch(cli: &Cli, out: &mut dyn Write, err: &mut dyn Write) -> Outcome {
    if cli.force {
        let _ = writeln!(err, "warning: --force lifts size guards; this may take a very long time");
    }
    match &cli.command {
        Command::Table { family, n_max, k_max, alpha, bound } => {
            cmd_table(cli.format, *family, *n_max, *k_max, CellParams { alpha: *alpha, bound: *bound }, out)
        }
        Command::Enumerate { n, k, variant, bound, alpha, list } => {
            cmd_enumerate(cli, *n, *k, *variant, *bound, *alpha, *list, out)
        }
        Command::Poly { family, n, k } => cmd_poly(cli.format, *family, *n, *k, out),
        Command::Verify { identity, profile, n_max, k_max } => {
            let profile = match profile {
                ProfileArg::Quick => Profile::Quick,
                ProfileArg::Full => Profile::Full,
            };
            cmd_verify(cli.format, identity, BoxOverride { n_max: *n_max, k_max: *k_max, profile }, out)
        }
        Command::Involution { n, k, r } => cmd_involution(cli, *n, *k, *r, out),
    }
}

fn emit(out: &mut dyn Write, text: &str) -> Outcome {
    out.write_all(text.as_bytes()).map_err(|e| Failure::Usage(e.to_string()))?;
    Ok(EXIT_OK)
}

fn cmd_table(
    format: Format,
    family: TableFamily,
    n_max: usize,
    k_max: usize,
    params: CellParams,
    out: &mut dyn Write,
) -> Outcome {
    let seq = match family {
        TableFamily::Hat => SequenceFamily::HatC,
        TableFamily::Bernoulli => SequenceFamily::PolyBernoulli,
        TableFamily::Shifted => SequenceFamily::Shifted,
        TableFamily::Restricted => SequenceFamily::Restricted,
        TableFamily::Associated => SequenceFamily::Associated,
    };
    let mut rows = Vec::with_capacity(n_max + 1);
    for n in 0..=n_max {
        let row: Vec<String> = (0..=k_max)
            .map(|k| evaluate(seq, n, k as i64, params).map(|c| c.value.to_string()))
            .collect::<Result<_, _>>()?;
        rows.push(row);
    }
    let text = match format {
        Format::Tsv => render_table_tsv(&rows, k_max),
        Format::Json => {
            let v = json!({
                "family": seq.name(),
                "n_max": n_max,
                "k_max": k_max,
                "alpha": params.alpha,
                "bound": params.bound,
                "rows": rows,
            });
            format!("{v}\n")
        }
    };
    emit(out, &text)
}

/// Header `n\k 0 1 ...`, then one tab-separated row per `n`.
pub fn render_table_tsv(rows: &[Vec<String>], k_max: usize) -> String {
    let mut s = String::from("n\\k");
    for k in 0..=k_max {
        s.push('\t');
        s.push_str(&k.to_string());
    }
    s.push('\n');
    for (n, row) in rows.iter().enumerate() {
        s.push_str(&n.to_string());
        for v in row {
            s.push('\t');
            s.push_str(v);
        }
        s.push('\n');
    }
    s
}

#[allow(clippy::too_many_arguments)]
fn cmd_enumerate(
    cli: &Cli,
    n: usize,
    k: usize,
    variant: Variant,
    bound: Option<usize>,
    alpha: Option<usize>,
    list: bool,
    out: &mut dyn Write,
) -> Outcome {
    let default_limit = if variant == Variant::Partial { PARTIAL_LIMIT } else { BRUTE_LIMIT };
    let guard = if cli.force { SizeGuard::unlimited() } else { SizeGuard::new(default_limit) };
    let need = |v: Option<usize>, name: &str| {
        v.ok_or_else(|| Failure::Usage(format!("variant {variant:?} requires --{name}").to_lowercase()))
    };
    let (count, items): (usize, Vec<String>) = match variant {
        Variant::Partial => {
            let parts = enumerate_partial_with(guard, n, k)?;
            (parts.len(), parts.iter().map(ToString::to_string).collect())
        }
        Variant::Augmented => {
            let a = need(alpha, "alpha")?;
            let parts = enumerate_augmented_with(guard, n, k, a)?;
            (parts.len(), parts.iter().map(ToString::to_string).collect())
        }
        _ => {
            let pred: Box<dyn Fn(&ColoredPermutation) -> bool> = match variant {
                Variant::Plain => Box::new(is_poly_cauchy),
                Variant::Callan => Box::new(is_callan),
                Variant::Restricted => {
                    let b = need(bound, "bound")?;
                    Box::new(move |p| is_poly_cauchy(p) && cycle_size_filter(p, BoundMode::AtMost, b))
                }
                Variant::Associated => {
                    let b = need(bound, "bound")?;
                    Box::new(move |p| is_poly_cauchy(p) && cycle_size_filter(p, BoundMode::AtLeast, b))
                }
                Variant::Partial | Variant::Augmented => unreachable!(),
            };
            if list {
                let perms = enumerate_brute_with(guard, n, k, pred)?;
                (perms.len(), perms.iter().map(ToString::to_string).collect())
            } else {
                (count_brute(guard, n, k, pred)?, Vec::new())
            }
        }
    };
    let name = format!("{variant:?}").to_lowercase();
    let text = match cli.format {
        Format::Tsv => {
            let mut s = format!("{count}\n");
            if list {
                for item in &items {
                    s.push_str(item);
                    s.push('\n');
                }
            }
            s
        }
        Format::Json => {
            let mut v = json!({ "n": n, "k": k, "variant": name, "count": count });
            if list {
                v["permutations"] = json!(items);
            }
            format!("{v}\n")
        }
    };
    emit(out, &text)
}

fn cmd_poly(format: Format, family: PolyFamily, n: usize, k: usize, out: &mut dyn Write) -> Outcome {
    let seq = match family {
        PolyFamily::Z => SequenceFamily::PolyZ,
        PolyFamily::Q => SequenceFamily::PolyQ,
        PolyFamily::RhoQ => SequenceFamily::PolyRhoQ,
    };
    let rendered = evaluate(seq, n, k as i64, CellParams::default())?.value.to_string();
    let text = match format {
        Format::Tsv => format!("{rendered}\n"),
        Format::Json => format!("{}\n", json!({ "family": seq.name(), "n": n, "k": k, "poly": rendered })),
    };
    emit(out, &text)
}

fn report_line(r: &IdentityReport) -> String {
    let status = match r.status {
        ReportStatus::Pass => "pass",
        ReportStatus::Fail => "fail",
        ReportStatus::Probe => "probe",
    };
    let mut s =
        format!("{}\t{status}\t{} cells\t{} failures\t{}\n", r.identity, r.cells, r.failures.len(), r.convention);
    for f in &r.failures {
        let params: Vec<String> = f.params.iter().map(|(k, v)| format!("{k}={v}")).collect();
        s.push_str(&format!("  {}: lhs = {}, rhs = {}\n", params.join(" "), f.lhs, f.rhs));
    }
    if let Some(vs) = &r.variants {
        for v in vs {
            s.push_str(&format!(
                "  variant [{}]: {} vanishing, {} nonzero{}\n",
                v.variant,
                v.vanishing_cells,
                v.nonzero_cells,
                if v.identically_zero { ", identically zero on the box" } else { "" }
            ));
        }
    }
    s
}

fn cmd_verify(format: Format, identity: &str, over: BoxOverride, out: &mut dyn Write) -> Outcome {
    let ids: Vec<String> = if identity == "all" {
        identity_registry::known_ids()
    } else {
        vec![identity_registry::find(identity)?.id.to_string()]
    };
    let mut code = EXIT_OK;
    for id in ids {
        let report = identity_registry::verify(&id, Some(over))?;
        if !report.passed() {
            code = EXIT_FAIL;
        }
        let text = match format {
            Format::Tsv => report_line(&report),
            Format::Json => format!("{}\n", report.to_json()),
        };
        emit(out, &text)?;
    }
    Ok(code)
}

fn cmd_involution(cli: &Cli, n: usize, k: usize, r: usize, out: &mut dyn Write) -> Outcome {
    if r > n {
        return Err(Failure::Usage(format!("--r {r} exceeds --n {n}")));
    }
    if !cli.force && (n > INVOLUTION_N_MAX || k > INVOLUTION_K_MAX) {
        return Err(Failure::Guard(format!(
            "involution audit is limited to n <= {INVOLUTION_N_MAX} and k <= {INVOLUTION_K_MAX} (got n = {n}, k = {k})"
        )));
    }
    let stats = orbit_statistics(n, k, r, SizeGuard::unlimited())?;
    let expected: num_bigint::BigInt =
        (0..=r).map(|l| stirling1(r, l) * num_traits::pow(num_bigint::BigInt::from(n - r + l + 1), k)).sum();
    let matches = num_bigint::BigInt::from(stats.fixed_points) == expected;
    let ok = matches && stats.sign_reversing_involution && stats.fixed_points_expected_shape;
    let text = match cli.format {
        Format::Tsv => format!(
            "configurations\t{}\ntwo_orbits\t{}\nfixed_points\t{}\nexpected_fixed_points\t{}\nfixed_points_match\t{}\nsigned_sum\t{}\nsign_reversing_involution\t{}\nfixed_point_shape\t{}\n",
            stats.configurations,
            stats.two_orbits,
            stats.fixed_points,
            expected,
            matches,
            stats.signed_sum,
            stats.sign_reversing_involution,
            stats.fixed_points_expected_shape,
        ),
        Format::Json => format!(
            "{}\n",
            json!({
                "n": n,
                "k": k,
                "r": r,
                "configurations": stats.configurations,
                "two_orbits": stats.two_orbits,
                "fixed_points": stats.fixed_points,
                "expected_fixed_points": expected.to_string(),
                "fixed_points_match": matches,
                "signed_sum": stats.signed_sum.to_string(),
                "sign_reversing_involution": stats.sign_reversing_involution,
                "fixed_point_shape": stats.fixed_points_expected_shape,
            })
        ),
    };
    emit(out, &text)?;
    Ok(if ok { EXIT_OK } else { EXIT_FAIL })
}
