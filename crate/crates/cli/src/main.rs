//! `ncdg`: loads algebra and module specs, runs the verification suites, and
//! prints deterministic reports.
//!
//! Reports go to standard output (JSON by default, plain text with
//! `--format text`); a one-line human summary per suite goes to standard
//! error. Exit codes: 0 when every check passed, 1 when any check failed,
//! 2 when the input could not be used.

use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use ncdg_core::{
    canonical_symplectic, catalog, dual_connection, dual_module, omega_ccr_eval, quantum_poisson,
    reports_to_json, run_algebra_suite, run_suites, torsion_der, validation_report, Algebra,
    CheckStatus, Connection, DerivationBasis, Matrix, Module, ModuleKind, PoissonBracketTable,
    Scalar, SuiteOptions, SuiteReport, SymplecticError, WeylElement, SUITE_NAMES,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

#[derive(Parser)]
#[command(
    name = "ncdg",
    version,
    about = "Exact verification suites for derivation-based differential calculus"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run a named verification suite over algebra spec files.
    Run(RunArgs),
    /// Print the structural facts of one algebra spec.
    Describe(DescribeArgs),
    /// Print the canonical symplectic data of one algebra spec.
    Symplectic(SymplecticArgs),
    /// Check or transform a connection given by matrices over a module spec.
    Connection(ConnectionArgs),
    /// Tabulate the deformation series against the scaled commutator.
    Weyl(WeylArgs),
    /// Write the bundled spec files to a directory.
    EmitSpecs(EmitSpecsArgs),
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Text,
}

#[derive(Args)]
struct RunArgs {
    /// Suite name; one of algebra, universal, forms, cartan, symplectic,
    /// connections, torsion, weyl, all.
    #[arg(long, default_value = "all")]
    suite: String,
    /// Seed for the sampling generator.
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Degree bound for the deformation-algebra tables.
    #[arg(long, default_value_t = 5)]
    max_degree: usize,
    /// Random samples checked per law.
    #[arg(long, default_value_t = 50)]
    samples: usize,
    /// Report format on standard output.
    #[arg(long, value_enum, default_value_t = Format::Json)]
    format: Format,
    /// Algebra spec files; the bundled fleet when omitted.
    specs: Vec<PathBuf>,
}

#[derive(Args)]
struct DescribeArgs {
    /// Algebra spec file.
    spec: PathBuf,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
}

#[derive(Args)]
struct SymplecticArgs {
    /// Algebra spec file.
    spec: PathBuf,
    /// Run the symplectic law suite instead of printing the tables.
    #[arg(long)]
    check: bool,
    /// Seed for the law suite sampling.
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Random samples checked per law under --check.
    #[arg(long, default_value_t = 50)]
    samples: usize,
    /// Report format under --check.
    #[arg(long, value_enum, default_value_t = Format::Json)]
    format: Format,
}

#[derive(Args)]
#[command(group(
    clap::ArgGroup::new("mode")
        .required(true)
        .args(["check", "curvature", "dual", "torsion"])
))]
struct ConnectionArgs {
    /// Algebra spec file.
    spec: PathBuf,
    /// Module spec file over that algebra.
    #[arg(long)]
    module: PathBuf,
    /// Connection file: {"matrices": [one module-sized matrix per basis
    /// derivation]}.
    #[arg(long)]
    nabla: PathBuf,
    /// Validate the two connection axioms.
    #[arg(long)]
    check: bool,
    /// Print the curvature endomorphisms R(X_a, X_b).
    #[arg(long)]
    curvature: bool,
    /// Print the induced rule on the dual module.
    #[arg(long)]
    dual: bool,
    /// Print the torsion table; the module must be the derivation module.
    #[arg(long)]
    torsion: bool,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
}

#[derive(Clone, Copy, ValueEnum)]
enum PairChoice {
    All,
    Random,
}

#[derive(Args)]
struct WeylArgs {
    /// Degree bound for the monomial table.
    #[arg(long, default_value_t = 4)]
    max_degree: usize,
    /// Which monomial pairs to tabulate.
    #[arg(long, value_enum, default_value_t = PairChoice::All)]
    pairs: PairChoice,
    /// Seed for the random pair draw.
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Number of pairs drawn under --pairs random.
    #[arg(long, default_value_t = 32)]
    count: usize,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    format: Format,
}

#[derive(Args)]
struct EmitSpecsArgs {
    /// Output directory.
    #[arg(long, default_value = "specs")]
    dir: PathBuf,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = match cli.command {
        Command::Run(args) => cmd_run(args),
        Command::Describe(args) => cmd_describe(args),
        Command::Symplectic(args) => cmd_symplectic(args),
        Command::Connection(args) => cmd_connection(args),
        Command::Weyl(args) => cmd_weyl(args),
        Command::EmitSpecs(args) => cmd_emit_specs(args),
    };
    match outcome {
        Ok(false) => ExitCode::SUCCESS,
        Ok(true) => ExitCode::from(1),
        Err(message) => {
            eprintln!("error: {message}");
            ExitCode::from(2)
        }
    }
}

/// `Ok(true)` means some check failed; `Err` is an input problem.
type Outcome = Result<bool, String>;

fn load_fleet(paths: &[PathBuf]) -> Result<Vec<Algebra>, String> {
    if paths.is_empty() {
        return Ok(catalog::bundled());
    }
    paths
        .iter()
        .map(|p| Algebra::load(p).map_err(|e| e.to_string()))
        .collect()
}

fn emit_reports(reports: &[SuiteReport], format: Format) {
    match format {
        Format::Json => print!("{}", reports_to_json(reports)),
        Format::Text => print!("{}", reports_to_text(reports)),
    }
    for r in reports {
        let (pass, fail, unsupported) = r.tally();
        eprintln!(
            "{}/{}: {pass} pass, {fail} fail, {unsupported} unsupported",
            r.suite, r.algebra
        );
    }
}

fn reports_to_text(reports: &[SuiteReport]) -> String {
    let mut out = String::new();
    for r in reports {
        let (pass, fail, unsupported) = r.tally();
        let _ = writeln!(
            out,
            "suite {} on {} (seed {}): {pass} pass, {fail} fail, {unsupported} unsupported",
            r.suite, r.algebra, r.seed
        );
        for check in &r.checks {
            let tag = match check.status {
                CheckStatus::Pass => "pass",
                CheckStatus::Fail => "FAIL",
                CheckStatus::Unsupported => "unsupported",
            };
            let _ = writeln!(out, "  [{tag}] {}", check.law);
            if let Some(witness) = &check.witness {
                let _ = writeln!(out, "          {witness}");
            }
        }
    }
    out
}

fn cmd_run(args: RunArgs) -> Outcome {
    if !SUITE_NAMES.contains(&args.suite.as_str()) {
        return Err(format!(
            "unknown suite {:?}; expected one of {}",
            args.suite,
            SUITE_NAMES.join(", ")
        ));
    }
    let algebras = load_fleet(&args.specs)?;
    let opts = SuiteOptions {
        seed: args.seed,
        samples: args.samples,
        max_degree: args.max_degree,
    };
    let reports = run_suites(&args.suite, &algebras, &opts).map_err(|e| e.to_string())?;
    emit_reports(&reports, args.format);
    Ok(reports.iter().any(|r| !r.all_passed()))
}

fn combo(coords: &[Scalar], prefix: &str) -> String {
    let mut parts = Vec::new();
    for (a, c) in coords.iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        if c.is_one() {
            parts.push(format!("{prefix}{a}"));
        } else {
            parts.push(format!("({c})·{prefix}{a}"));
        }
    }
    if parts.is_empty() {
        "0".to_owned()
    } else {
        parts.join(" + ")
    }
}

/// The scalar `λ` with `z = λ·1`, when there is one.
fn central_scalar(algebra: &Algebra, z: &[Scalar]) -> Option<Scalar> {
    let unit = algebra.unit();
    let k = unit.coeffs().iter().position(|c| !c.is_zero())?;
    let lambda = &z[k] * &unit.coeffs()[k].inv()?;
    if unit.scale(&lambda).coeffs() == z {
        Some(lambda)
    } else {
        None
    }
}

fn describe_text(algebra: &Algebra, derb: &DerivationBasis) -> String {
    let dim = algebra.dim();
    let labels: Vec<&str> = (0..dim).map(|i| algebra.label(i)).collect();
    let mut out = String::new();
    let _ = writeln!(out, "algebra {}: dim {dim}", algebra.name());
    let _ = writeln!(out, "  basis: {}", labels.join(", "));
    let _ = writeln!(out, "  unit: {}", algebra.unit());
    let center = algebra.center();
    let _ = writeln!(out, "center: dim {}", center.dim());
    for (k, v) in center.vectors().iter().enumerate() {
        let _ = writeln!(out, "  z{k} = {}", algebra.element(v.clone()));
    }
    let inner = derb.inner_dim();
    let _ = writeln!(
        out,
        "derivations: dim {}, inner {inner}, outer {}",
        derb.dim(),
        derb.dim() - inner
    );
    for a in 0..derb.dim() {
        match derb.inner_witness(derb.derivation(a)) {
            Some(x) => {
                let _ = writeln!(out, "  X{a} = ad({x})");
            }
            None => {
                let images: Vec<String> = (0..dim)
                    .map(|i| {
                        format!("{} -> {}", labels[i], derb.derivation(a).apply(&algebra.basis_element(i)))
                    })
                    .collect();
                let _ = writeln!(out, "  X{a}: {}", images.join(", "));
            }
        }
    }
    let mut brackets = Vec::new();
    for a in 0..derb.dim() {
        for b in a + 1..derb.dim() {
            let coords = derb.bracket_coords(a, b);
            if coords.iter().any(|c| !c.is_zero()) {
                brackets.push(format!("  [X{a}, X{b}] = {}", combo(coords, "X")));
            }
        }
    }
    if brackets.is_empty() {
        let _ = writeln!(out, "brackets: all vanish");
    } else {
        let _ = writeln!(out, "brackets ({} nonzero):", brackets.len());
        for line in brackets {
            let _ = writeln!(out, "{line}");
        }
    }
    let hermitian = (0..dim)
        .filter(|&i| algebra.basis_element(i).is_hermitian())
        .count();
    let star_closed = center
        .vectors()
        .iter()
        .all(|v| center.contains(&algebra.star_coeffs(v)));
    let _ = writeln!(
        out,
        "involution: validated on load; {hermitian} of {dim} basis elements hermitian; center star-closed: {}",
        if star_closed { "yes" } else { "no" }
    );
    out
}

fn describe_json(algebra: &Algebra, derb: &DerivationBasis) -> serde_json::Value {
    let dim = algebra.dim();
    let center = algebra.center();
    let derivations: Vec<serde_json::Value> = (0..derb.dim())
        .map(|a| {
            let witness = derb
                .inner_witness(derb.derivation(a))
                .map(|x| x.to_string());
            serde_json::json!({
                "name": format!("X{a}"),
                "inner_witness": witness,
            })
        })
        .collect();
    let mut brackets = Vec::new();
    for a in 0..derb.dim() {
        for b in a + 1..derb.dim() {
            let coords = derb.bracket_coords(a, b);
            if coords.iter().any(|c| !c.is_zero()) {
                brackets.push(serde_json::json!({
                    "pair": format!("[X{a}, X{b}]"),
                    "value": combo(coords, "X"),
                }));
            }
        }
    }
    let hermitian = (0..dim)
        .filter(|&i| algebra.basis_element(i).is_hermitian())
        .count();
    let star_closed = center
        .vectors()
        .iter()
        .all(|v| center.contains(&algebra.star_coeffs(v)));
    serde_json::json!({
        "name": algebra.name(),
        "dim": dim,
        "basis": (0..dim).map(|i| algebra.label(i)).collect::<Vec<_>>(),
        "unit": algebra.unit().to_string(),
        "center": {
            "dim": center.dim(),
            "basis": center.vectors().iter()
                .map(|v| algebra.element(v.clone()).to_string())
                .collect::<Vec<_>>(),
        },
        "derivations": {
            "dim": derb.dim(),
            "inner": derb.inner_dim(),
            "outer": derb.dim() - derb.inner_dim(),
            "basis": derivations,
            "brackets": brackets,
        },
        "involution": {
            "hermitian_basis_count": hermitian,
            "center_star_closed": star_closed,
        },
    })
}

fn cmd_describe(args: DescribeArgs) -> Outcome {
    let algebra = Algebra::load(&args.spec).map_err(|e| e.to_string())?;
    let derb = DerivationBasis::compute(&algebra);
    match args.format {
        Format::Text => print!("{}", describe_text(&algebra, &derb)),
        Format::Json => {
            let value = describe_json(&algebra, &derb);
            println!(
                "{}",
                serde_json::to_string_pretty(&value).expect("description serializes")
            );
        }
    }
    Ok(false)
}

fn symplectic_text(
    algebra: &Algebra,
    derb: &DerivationBasis,
    table: &PoissonBracketTable,
) -> String {
    let d = derb.dim();
    let dim = algebra.dim();
    let mut out = String::new();
    let _ = writeln!(
        out,
        "canonical symplectic form on {} (derivation basis X0..X{})",
        algebra.name(),
        d - 1
    );
    let _ = writeln!(out, "omega(X_a, X_b):");
    for a in 0..d {
        let row: Vec<String> = (0..d)
            .map(|b| {
                let value = table.omega().value_on(&[a, b]);
                match central_scalar(algebra, &value) {
                    Some(lambda) => lambda.to_string(),
                    None => ncdg_core::algebra::format_element(algebra, &value),
                }
            })
            .collect();
        let _ = writeln!(out, "  X{a}: [{}]", row.join(", "));
    }
    let _ = writeln!(out, "hamiltonian table:");
    for i in 0..dim {
        let coords = derb
            .coordinates(table.ham(i))
            .expect("hamiltonians land in the derivation space");
        let _ = writeln!(out, "  ham({}) = {}", algebra.label(i), combo(&coords, "X"));
    }
    let _ = writeln!(out, "poisson table:");
    for i in 0..dim {
        for j in 0..dim {
            let _ = writeln!(
                out,
                "  {{{}, {}}} = {}",
                algebra.label(i),
                algebra.label(j),
                table.basis_bracket(i, j)
            );
        }
    }
    out
}

fn cmd_symplectic(args: SymplecticArgs) -> Outcome {
    let algebra = Algebra::load(&args.spec).map_err(|e| e.to_string())?;
    if args.check {
        let opts = SuiteOptions {
            seed: args.seed,
            samples: args.samples,
            ..SuiteOptions::default()
        };
        let report = run_algebra_suite("symplectic", &algebra, &opts).map_err(|e| e.to_string())?;
        let failed = !report.all_passed();
        emit_reports(std::slice::from_ref(&report), args.format);
        return Ok(failed);
    }
    let derb = DerivationBasis::compute(&algebra);
    let omega = match canonical_symplectic(&derb) {
        Ok(omega) => omega,
        Err(
            reason @ (SymplecticError::CenterNotTrivial | SymplecticError::OuterDerivationsExist),
        ) => {
            println!("unsupported: {reason}");
            return Ok(false);
        }
        Err(other) => return Err(other.to_string()),
    };
    let table = PoissonBracketTable::new(&omega).map_err(|e| e.to_string())?;
    print!("{}", symplectic_text(&algebra, &derb, &table));
    Ok(false)
}

/// On-disk shape of a connection: one endomorphism matrix per basis
/// derivation, rows of exact scalar strings.
#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct NablaSpec {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    name: Option<String>,
    matrices: Vec<Vec<Vec<Scalar>>>,
}

fn dump_matrix(m: &Matrix) -> Vec<Vec<Scalar>> {
    (0..m.rows()).map(|r| m.row_vec(r)).collect()
}

fn fmt_matrix(m: &Matrix, indent: &str) -> String {
    let mut out = String::new();
    for r in 0..m.rows() {
        let row: Vec<String> = (0..m.cols()).map(|c| m.at(r, c).to_string()).collect();
        let _ = writeln!(out, "{indent}[{}]", row.join(", "));
    }
    out
}

fn load_nabla(path: &Path, derb: &DerivationBasis, module: &Module) -> Result<Vec<Matrix>, String> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| format!("failed to read {}: {e}", path.display()))?;
    let spec: NablaSpec =
        serde_json::from_str(&text).map_err(|e| format!("ParseError in nabla file: {e}"))?;
    if spec.matrices.len() != derb.dim() {
        return Err(format!(
            "nabla lists {} matrices, the derivation basis has {}",
            spec.matrices.len(),
            derb.dim()
        ));
    }
    let dim = module.dim();
    spec.matrices
        .into_iter()
        .enumerate()
        .map(|(a, rows)| {
            if rows.len() != dim || rows.iter().any(|r| r.len() != dim) {
                return Err(format!("nabla matrix {a} is not {dim}x{dim}"));
            }
            Ok(Matrix::from_rows(rows))
        })
        .collect()
}

fn cmd_connection(args: ConnectionArgs) -> Outcome {
    let algebra = Algebra::load(&args.spec).map_err(|e| e.to_string())?;
    let derb = DerivationBasis::compute(&algebra);
    let module = Module::load(&algebra, &args.module).map_err(|e| e.to_string())?;
    let nabla = load_nabla(&args.nabla, &derb, &module)?;

    if args.check {
        let violations = validation_report(&module, &derb, &nabla);
        if violations.is_empty() {
            println!(
                "connection on {} (kind {}) over {}: both axioms hold",
                module.name(),
                module.kind(),
                algebra.name()
            );
            return Ok(false);
        }
        for violation in &violations {
            println!("violation: {violation}");
        }
        return Ok(true);
    }

    // The remaining modes transform a connection, so the axioms are a
    // precondition on the input rather than the check under test.
    let conn = Connection::new(&module, &derb, nabla)
        .map_err(|e| format!("the nabla file is not a connection: {e}"))?;

    if args.curvature {
        let mut flat = true;
        let mut grid = serde_json::Map::new();
        for a in 0..derb.dim() {
            for b in a + 1..derb.dim() {
                let r = conn.curvature_basis(a, b);
                flat &= r.is_zero();
                match args.format {
                    Format::Text => {
                        println!("R(X{a}, X{b}) =");
                        print!("{}", fmt_matrix(&r, "  "));
                    }
                    Format::Json => {
                        grid.insert(
                            format!("R(X{a}, X{b})"),
                            serde_json::to_value(dump_matrix(&r)).expect("scalars serialize"),
                        );
                    }
                }
            }
        }
        match args.format {
            Format::Text => println!("flat: {}", if flat { "yes" } else { "no" }),
            Format::Json => {
                let value = serde_json::json!({ "flat": flat, "curvature": grid });
                println!(
                    "{}",
                    serde_json::to_string_pretty(&value).expect("curvature serializes")
                );
            }
        }
        return Ok(false);
    }

    if args.dual {
        let dual = dual_module(&module);
        let dconn = dual_connection(&conn, &dual).map_err(|e| e.to_string())?;
        match args.format {
            Format::Text => {
                println!(
                    "dual module {} (kind {}), dim {}",
                    dual.module().name(),
                    dual.module().kind(),
                    dual.module().dim()
                );
                for a in 0..derb.dim() {
                    println!("nabla'(X{a}) =");
                    print!("{}", fmt_matrix(dconn.matrix(a), "  "));
                }
            }
            Format::Json => {
                let spec = NablaSpec {
                    name: Some(format!("{}_dual", module.name())),
                    matrices: dconn.matrices().iter().map(dump_matrix).collect(),
                };
                println!(
                    "{}",
                    serde_json::to_string_pretty(&spec).expect("nabla serializes")
                );
            }
        }
        return Ok(false);
    }

    // --torsion
    let mut torsion_free = true;
    let mut rows = Vec::new();
    for a in 0..derb.dim() {
        for b in a + 1..derb.dim() {
            let t = torsion_der(&conn, derb.derivation(a), derb.derivation(b))
                .map_err(|e| e.to_string())?;
            torsion_free &= t.is_zero();
            let coords = derb
                .coordinates(&t)
                .expect("torsion values are derivations");
            rows.push((a, b, combo(&coords, "X")));
        }
    }
    match args.format {
        Format::Text => {
            for (a, b, value) in &rows {
                println!("T(X{a}, X{b}) = {value}");
            }
            println!("torsion-free: {}", if torsion_free { "yes" } else { "no" });
        }
        Format::Json => {
            let mut grid = serde_json::Map::new();
            for (a, b, value) in &rows {
                grid.insert(format!("T(X{a}, X{b})"), serde_json::json!(value));
            }
            let value = serde_json::json!({ "torsion_free": torsion_free, "torsion": grid });
            println!(
                "{}",
                serde_json::to_string_pretty(&value).expect("torsion serializes")
            );
        }
    }
    Ok(false)
}

/// Monomials `q^m p^n h^k` of total degree at most `max_degree`, in degree
/// order.
fn weyl_monomials(max_degree: usize) -> Vec<WeylElement> {
    let mut out = Vec::new();
    for total in 0..=max_degree {
        for m in 0..=total {
            for n in 0..=(total - m) {
                out.push(WeylElement::monomial(m, n, total - m - n, Scalar::one()));
            }
        }
    }
    out
}

fn cmd_weyl(args: WeylArgs) -> Outcome {
    let monomials = weyl_monomials(args.max_degree);
    let pairs: Vec<(usize, usize)> = match args.pairs {
        PairChoice::All => (0..monomials.len())
            .flat_map(|i| (0..monomials.len()).map(move |j| (i, j)))
            .collect(),
        PairChoice::Random => {
            let mut rng = ChaCha8Rng::seed_from_u64(args.seed);
            (0..args.count)
                .map(|_| {
                    (
                        rng.gen_range(0..monomials.len()),
                        rng.gen_range(0..monomials.len()),
                    )
                })
                .collect()
        }
    };
    let mut report = SuiteReport::new("weyl-table", "ccr", args.seed);
    for (i, j) in pairs {
        let (x, y) = (&monomials[i], &monomials[j]);
        let series = omega_ccr_eval(x, y, args.max_degree)
            .expect("table monomials stay within the degree bound");
        let bracket =
            quantum_poisson(x, y).expect("commutators of monomials are divisible by hbar");
        let law = format!("x = {x}, y = {y}: series = {series}, bracket = {bracket}");
        if series == bracket {
            report.pass(&law);
        } else {
            report.fail(&law, format!("difference = {}", &series - &bracket));
        }
    }
    let report = report.finish();
    let failed = !report.all_passed();
    emit_reports(std::slice::from_ref(&report), args.format);
    Ok(failed)
}

fn cmd_emit_specs(args: EmitSpecsArgs) -> Outcome {
    let write = |path: &Path, text: String| -> Result<(), String> {
        std::fs::write(path, text).map_err(|e| format!("failed to write {}: {e}", path.display()))?;
        eprintln!("wrote {}", path.display());
        Ok(())
    };
    std::fs::create_dir_all(&args.dir)
        .map_err(|e| format!("failed to create {}: {e}", args.dir.display()))?;
    let mut algebras = catalog::bundled();
    algebras.push(catalog::kronecker_quiver());
    for algebra in &algebras {
        let path = args.dir.join(format!("{}.json", algebra.name()));
        write(&path, algebra.to_json())?;
    }
    // A worked module/connection pair so the connection subcommand is usable
    // out of the box.
    let m2 = catalog::matrix_algebra(2);
    let derb = DerivationBasis::compute(&m2);
    let module = Module::regular(&m2, ModuleKind::CENTRAL_BIMODULE, "m2_regular");
    let mut module_json =
        serde_json::to_string_pretty(&module.to_spec()).expect("module spec serializes");
    module_json.push('\n');
    write(&args.dir.join("m2_regular_module.json"), module_json)?;
    let conn = Connection::regular(&module, &derb).expect("the regular rule is a connection");
    let nabla = NablaSpec {
        name: Some("m2_regular_nabla".into()),
        matrices: conn.matrices().iter().map(dump_matrix).collect(),
    };
    let mut nabla_json = serde_json::to_string_pretty(&nabla).expect("nabla serializes");
    nabla_json.push('\n');
    write(&args.dir.join("m2_regular_nabla.json"), nabla_json)?;
    // The derivation module with the bracket rule, for the torsion mode.
    let der = ncdg_core::der_module(&derb);
    let mut der_json = serde_json::to_string_pretty(&der.to_spec()).expect("module spec serializes");
    der_json.push('\n');
    write(&args.dir.join("m2_der_module.json"), der_json)?;
    let bracket = Connection::bracket(&derb).expect("the bracket rule is a connection on sl2");
    let bracket_nabla = NablaSpec {
        name: Some("m2_bracket_nabla".into()),
        matrices: bracket.matrices().iter().map(dump_matrix).collect(),
    };
    let mut bracket_json =
        serde_json::to_string_pretty(&bracket_nabla).expect("nabla serializes");
    bracket_json.push('\n');
    write(&args.dir.join("m2_bracket_nabla.json"), bracket_json)?;
    Ok(false)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn monomial_counts_follow_the_simplex_numbers() {
        assert_eq!(weyl_monomials(0).len(), 1);
        assert_eq!(weyl_monomials(2).len(), 10);
        assert_eq!(weyl_monomials(5).len(), 56);
    }

    #[test]
    fn central_scalars_are_recognized_against_the_unit() {
        let m2 = catalog::matrix_algebra(2);
        let z = m2.unit().scale(&Scalar::gaussian(3, -1, 2));
        assert_eq!(
            central_scalar(&m2, z.coeffs()),
            Some(Scalar::gaussian(3, -1, 2))
        );
        let off = m2.basis_element(1);
        assert_eq!(central_scalar(&m2, off.coeffs()), None);
    }

    #[test]
    fn combos_print_like_elements() {
        let coords = vec![Scalar::one(), Scalar::zero(), Scalar::from_int(-2)];
        assert_eq!(combo(&coords, "X"), "X0 + (-2)·X2");
        assert_eq!(combo(&[Scalar::zero()], "X"), "0");
    }

    #[test]
    fn nabla_files_are_shape_checked() {
        let m2 = catalog::matrix_algebra(2);
        let derb = DerivationBasis::compute(&m2);
        let module = Module::regular(&m2, ModuleKind::CENTRAL_BIMODULE, "m");
        let dir = tempfile::tempdir().expect("tempdir");
        let path = dir.path().join("nabla.json");
        std::fs::write(&path, "{\"matrices\": []}").expect("write");
        let err = load_nabla(&path, &derb, &module).unwrap_err();
        assert!(err.contains("3"), "unexpected message: {err}");
    }
}
