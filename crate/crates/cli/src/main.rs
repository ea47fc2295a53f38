//! `sigstrength`: dimension polynomials and strengths of difference schemes.

mod error;
mod file;
mod points;

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};
use sigstrength::charset::AutoreducedSet;
use sigstrength::lattice::{minimal_elements, omega, phi};
use sigstrength::oracle::verify_system;
use sigstrength::schemes::{self, CATALOG_NAMES};
use sigstrength::strength::{strength_of_system, system_charset};
use sigstrength::{Ambient, DifferenceSystem, LatticeSet, NumericalPolynomial, Ranking, SchemeKind};

use error::CliError;
use file::{parse_ranking, SystemFile};
use points::{format_point, parse_points};

#[derive(Parser)]
#[command(name = "sigstrength", version, about = "Dimension polynomials and strength of difference systems")]
struct Cli {
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Subcommand)]
enum Command {
    /// Dimension polynomial of a subset of N^m.
    Omega(PointArgs),
    /// Dimension polynomial of a subset of Z^m.
    Phi(PointArgs),
    /// Characteristic set of a system, with leaders.
    Charset(TargetArgs),
    /// Full strength report.
    Strength(TargetArgs),
    /// Print or export a catalog scheme as a system.
    Discretize {
        name: String,
        #[arg(long, default_value = "forward")]
        scheme: String,
        #[arg(long)]
        components: Option<usize>,
        /// Write the system file here.
        #[arg(long)]
        export: Option<PathBuf>,
    },
    /// Compare grid counts against the dimension polynomial.
    Verify {
        #[command(flatten)]
        target: TargetArgs,
        #[arg(long, default_value_t = 3)]
        rmax: usize,
        #[arg(long, default_value_t = 3)]
        trials: usize,
        #[arg(long, default_value_t = 1)]
        seed: u64,
    },
    /// List catalog entries and their expected strengths.
    CatalogList,
}

#[derive(Args)]
struct PointArgs {
    /// Points such as "(2,0) (-1,1)".
    points: Option<String>,
    /// Read the points from a file instead.
    #[arg(long, conflicts_with = "points")]
    file: Option<PathBuf>,
    /// Dimension; needed when the list is empty.
    #[arg(long)]
    m: Option<usize>,
}

#[derive(Args)]
struct TargetArgs {
    /// Catalog name or path to a system file.
    target: String,
    #[arg(long, default_value = "forward")]
    scheme: String,
    /// Number of components for chromatography.
    #[arg(long)]
    components: Option<usize>,
    /// Ranking such as "a2>a1" or "a1>a2;y2>y1".
    #[arg(long)]
    ranking: Option<String>,
}

struct Loaded {
    label: String,
    system: DifferenceSystem,
    ranking: Ranking,
    expected: Option<NumericalPolynomial>,
}

fn catalog_entry(name: &str, components: Option<usize>) -> Result<schemes::CatalogEntry, CliError> {
    match (name, components) {
        ("chromatography", Some(0)) => Err(CliError::Parse("chromatography needs at least one component".into())),
        ("chromatography", Some(k)) => Ok(schemes::chromatography(k)),
        (_, Some(_)) => Err(CliError::Parse(format!("--components does not apply to {name}"))),
        _ => Ok(schemes::catalog_lookup(name)?),
    }
}

fn load(args: &TargetArgs) -> Result<Loaded, CliError> {
    let path = Path::new(&args.target);
    let mut loaded = if path.exists() || args.target.ends_with(".json") {
        let text = std::fs::read_to_string(path).map_err(|e| CliError::Parse(format!("{}: {e}", path.display())))?;
        let (system, ranking) = SystemFile::parse(&text)?.to_system()?;
        Loaded { label: args.target.clone(), system, ranking, expected: None }
    } else {
        let scheme: SchemeKind = args.scheme.parse()?;
        let entry = catalog_entry(&args.target, args.components)?;
        let form = entry.form(scheme)?;
        Loaded {
            label: format!("{} ({scheme})", entry.name),
            system: form.system.clone(),
            ranking: form.ranking.clone(),
            expected: Some(form.expected_psi.clone()),
        }
    };
    if let Some(text) = &args.ranking {
        loaded.ranking = parse_ranking(text, &loaded.system.names)?;
    }
    Ok(loaded)
}

fn ranking_text(rk: &Ranking, sys: &DifferenceSystem) -> String {
    let names = &sys.names;
    let t: Vec<&str> = rk.translation_priority().iter().map(|&i| names.translations[i].as_str()).collect();
    let mut out = t.join(" > ");
    if sys.n() > 1 {
        let y: Vec<&str> =
            rk.indeterminate_priority().iter().rev().map(|&i| names.indeterminates[i].as_str()).collect();
        out.push_str("; ");
        out.push_str(&y.join(" > "));
    }
    out
}

fn points_text(set: &LatticeSet) -> String {
    if set.is_empty() {
        return "{}".into();
    }
    set.points().map(format_point).collect::<Vec<_>>().join(" ")
}

fn points_json(set: &LatticeSet) -> Value {
    Value::Array(set.points().map(|p| json!(p)).collect())
}

fn charset_lines(set: &AutoreducedSet, sys: &DifferenceSystem) -> Vec<(String, String)> {
    set.elements().iter().zip(set.leaders()).map(|(p, u)| (sys.names.term(&u), sys.display_polynomial(p))).collect()
}

fn cmd_points(args: &PointArgs, ambient: Ambient, format: Format) -> Result<String, CliError> {
    let text = match (&args.points, &args.file) {
        (_, Some(f)) => std::fs::read_to_string(f).map_err(|e| CliError::Parse(format!("{}: {e}", f.display())))?,
        (Some(p), None) => p.clone(),
        (None, None) => String::new(),
    };
    let pts = parse_points(&text)?;
    let m = match (args.m, pts.first()) {
        (Some(m), _) => m,
        (None, Some(p)) => p.len(),
        (None, None) => return Err(CliError::Parse("empty point list: pass --m".into())),
    };
    let set = LatticeSet::new(ambient, m, pts)?;
    let (name, poly) = match ambient {
        Ambient::Naturals => ("omega", omega(&set)?),
        Ambient::Integers => ("phi", phi(&set)?),
    };
    let minimal = minimal_elements(&set);
    Ok(match format {
        Format::Text => {
            format!("{name} = {poly}\nbinomial = {}\nminimal = {}\n", poly.binomial_display(), points_text(&minimal))
        }
        Format::Json => json_text(json!({
            "m": m,
            name: poly.to_string(),
            "binomial": poly.binomial_display(),
            "minimal": points_json(&minimal),
        })),
    })
}

fn json_text(v: Value) -> String {
    serde_json::to_string_pretty(&v).expect("serializable") + "\n"
}

fn cmd_charset(args: &TargetArgs, format: Format) -> Result<String, CliError> {
    let l = load(args)?;
    let set = system_charset(&l.system.polynomials, &l.ranking)?;
    let lines = charset_lines(&set, &l.system);
    Ok(match format {
        Format::Text => {
            let mut out = format!(
                "system: {}\nranking: {}\ncharacteristic set ({} elements):\n",
                l.label,
                ranking_text(&l.ranking, &l.system),
                lines.len()
            );
            for (u, p) in lines {
                out.push_str(&format!("  leader {u}: {p}\n"));
            }
            out
        }
        Format::Json => json_text(json!({
            "system": l.label,
            "ranking": ranking_text(&l.ranking, &l.system),
            "charset": lines.iter().map(|(u, p)| json!({"leader": u, "polynomial": p})).collect::<Vec<_>>(),
        })),
    })
}

fn cmd_strength(args: &TargetArgs, format: Format) -> Result<String, CliError> {
    let l = load(args)?;
    let report = strength_of_system(&l.system, &l.ranking)?;
    let lines = charset_lines(&report.charset, &l.system);
    let names = &l.system.names.indeterminates;
    Ok(match format {
        Format::Text => {
            let mut out = format!(
                "system: {}\nranking: {}\ncharacteristic set ({} elements):\n",
                l.label,
                ranking_text(&l.ranking, &l.system),
                lines.len()
            );
            for (u, p) in &lines {
                out.push_str(&format!("  leader {u}: {p}\n"));
            }
            out.push_str("leader exponents:\n");
            for (i, set) in report.leader_sets.iter().enumerate() {
                out.push_str(&format!("  {}: {} -> {}\n", names[i], points_text(set), report.per_indeterminate[i]));
            }
            out.push_str(&format!("psi = {}\n", report.psi));
            out.push_str(&format!("binomial = {}\n", report.psi.binomial_display()));
            out.push_str(&format!("sigma-transcendence degree = {}\n", report.sigma_tr_deg));
            out
        }
        Format::Json => json_text(json!({
            "system": l.label,
            "ranking": ranking_text(&l.ranking, &l.system),
            "charset": lines.iter().map(|(u, p)| json!({"leader": u, "polynomial": p})).collect::<Vec<_>>(),
            "leader_exponents": report.leader_sets.iter().enumerate().map(|(i, s)| json!({
                "indeterminate": names[i],
                "points": points_json(s),
                "phi": report.per_indeterminate[i].to_string(),
            })).collect::<Vec<_>>(),
            "psi": report.psi.to_string(),
            "binomial": report.psi.binomial_display(),
            "sigma_tr_deg": report.sigma_tr_deg.to_string(),
        })),
    })
}

fn cmd_discretize(
    name: &str,
    scheme: &str,
    components: Option<usize>,
    export: Option<&Path>,
    format: Format,
) -> Result<String, CliError> {
    let scheme: SchemeKind = scheme.parse()?;
    let entry = catalog_entry(name, components)?;
    let form = entry.form(scheme)?;
    let file = SystemFile::from_system(&form.system, Some(&form.ranking));
    if let Some(path) = export {
        std::fs::write(path, file.to_json()).map_err(|e| CliError::Parse(format!("{}: {e}", path.display())))?;
    }
    Ok(match format {
        Format::Text => {
            let mut out = format!("system: {} ({scheme})\n", entry.name);
            for p in &form.system.polynomials {
                out.push_str(&format!("  {} = 0\n", form.system.display_polynomial(p)));
            }
            out
        }
        Format::Json => file.to_json(),
    })
}

fn cmd_verify(args: &TargetArgs, rmax: usize, trials: usize, seed: u64, format: Format) -> Result<String, CliError> {
    let l = load(args)?;
    let expected = match l.expected {
        Some(p) => p,
        None => strength_of_system(&l.system, &l.ranking)?.psi,
    };
    let report = verify_system(&l.system, &expected, rmax, trials, seed)?;
    let bindings = |b: &std::collections::BTreeMap<String, sigstrength::BigRational>| {
        b.iter().map(|(k, v)| format!("{k} = {v}")).collect::<Vec<_>>().join(", ")
    };
    let out = match format {
        Format::Text => {
            let status = if report.all_passed() { "OK" } else { "MISMATCH" };
            let mut out = format!("{status}: {}/{} checks\n", report.passed(), report.total());
            for c in report.mismatches() {
                out.push_str(&format!(
                    "  trial {}, r = {}: grid count {}, psi(r) = {} [{}]\n",
                    c.trial + 1,
                    c.r,
                    c.observed,
                    c.expected,
                    bindings(&c.bindings)
                ));
            }
            out
        }
        Format::Json => json_text(json!({
            "system": l.label,
            "psi": expected.to_string(),
            "passed": report.passed(),
            "total": report.total(),
            "checks": report.checks.iter().map(|c| json!({
                "trial": c.trial + 1,
                "r": c.r,
                "grid_count": c.observed,
                "psi": c.expected.to_string(),
                "bindings": bindings(&c.bindings),
            })).collect::<Vec<_>>(),
        })),
    };
    if report.all_passed() {
        Ok(out)
    } else {
        print!("{out}");
        Err(CliError::Mismatch(format!("{} of {} checks failed", report.total() - report.passed(), report.total())))
    }
}

fn cmd_catalog_list(format: Format) -> Result<String, CliError> {
    let mut rows = Vec::new();
    for name in CATALOG_NAMES.iter().copied().chain(["reaction-kinetics-linear"]) {
        let entry = schemes::catalog_lookup(name)?;
        let forms: Vec<(String, String)> =
            entry.forms.iter().map(|f| (f.scheme.to_string(), f.expected_psi.to_string())).collect();
        rows.push((name, forms));
    }
    Ok(match format {
        Format::Text => rows
            .iter()
            .map(|(name, forms)| {
                let shown: Vec<String> = forms.iter().map(|(s, p)| format!("{s} {p}")).collect();
                format!("{name:<26}{}\n", shown.join(" | "))
            })
            .collect(),
        Format::Json => json_text(Value::Array(
            rows.iter()
                .map(|(name, forms)| {
                    json!({"name": name, "forms": forms.iter().map(|(s, p)| json!({"scheme": s, "psi": p})).collect::<Vec<_>>()})
                })
                .collect(),
        )),
    })
}

fn run(cli: &Cli) -> Result<String, CliError> {
    match &cli.command {
        Command::Omega(a) => cmd_points(a, Ambient::Naturals, cli.format),
        Command::Phi(a) => cmd_points(a, Ambient::Integers, cli.format),
        Command::Charset(a) => cmd_charset(a, cli.format),
        Command::Strength(a) => cmd_strength(a, cli.format),
        Command::Discretize { name, scheme, components, export } => {
            cmd_discretize(name, scheme, *components, export.as_deref(), cli.format)
        }
        Command::Verify { target, rmax, trials, seed } => cmd_verify(target, *rmax, *trials, *seed, cli.format),
        Command::CatalogList => cmd_catalog_list(cli.format),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(out) => {
            print!("{out}");
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
