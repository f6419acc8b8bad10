//! Command-line front end: loads algebras and comodules from JSON files or
//! the built-in zoo, runs the check suites, the uniqueness solver, and the
//! brute-force cross-check. Exit codes: 0 all checks pass, 1 a check failed,
//! 2 the input could not be used.

use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

use sweedler::algebra::{builtin, center, check_algebra, Algebra};
use sweedler::braiding::{default_test_objects, verify_braiding, BraidFamily, BraidingOptions};
use sweedler::comodule::{check_comodule, check_descent_equivalence, coinvariants};
use sweedler::error::Error;
use sweedler::field::{scalar_to_string, FieldSpec, Scalar};
use sweedler::io::{load_algebra, load_comodule};
use sweedler::oracle::enumerate_with_oracle;
use sweedler::report::{Report, Status};
use sweedler::separability::{
    build_E_from_augmentation, build_E_from_separability, build_E_unit_projection, check_E,
    check_separability_element, find_separability_element, CentralMap, SeparabilityElement,
};
use sweedler::solver::enumerate_braidings;

#[derive(Parser)]
#[command(name = "sweedler", version, about = "Exact checks for comodules over the canonical coring A (x) A and the braiding on them")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Axioms, center, and separability of an algebra
    Algebra {
        #[arg(value_enum)]
        action: AlgebraAction,
        #[command(flatten)]
        source: Source,
        #[command(flatten)]
        out: Output,
    },
    /// Axioms, coinvariants, and descent for a comodule over an algebra
    Comodule {
        #[arg(value_enum)]
        action: ComoduleAction,
        /// Algebra file then comodule file; only the comodule file with --builtin
        files: Vec<String>,
        /// Built-in algebra name instead of an algebra file
        #[arg(long)]
        builtin: Option<String>,
        /// Base field for --builtin: Q or F<p>
        #[arg(long, default_value = "Q")]
        field: String,
        /// Do not run the axiom checks on load
        #[arg(long)]
        skip_checks: bool,
        #[command(flatten)]
        out: Output,
    },
    /// Verify the braiding axioms or solve for every braiding
    Braiding {
        #[arg(value_enum)]
        action: BraidingAction,
        #[command(flatten)]
        source: Source,
        /// Comma-separated subset of the default objects: a, axa, fv1, fv2, fv1twisted
        #[arg(long, value_delimiter = ',')]
        objects: Vec<String>,
        /// Splitting map constructor for the solve pipeline
        #[arg(long = "with-E", value_enum)]
        with_e: Option<EKind>,
        /// Character values on the basis for --with-E augmentation, e.g. "(1,0)"
        #[arg(long)]
        augmentation: Option<String>,
        /// Twisting element a for the family c^a, e.g. "(1,0)"
        #[arg(long)]
        ca: Option<String>,
        /// Cross-check the solve result against the brute-force search
        #[arg(long)]
        oracle: bool,
        #[command(flatten)]
        out: Output,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum AlgebraAction {
    Check,
    Center,
    Separability,
}

#[derive(Clone, Copy, ValueEnum)]
enum ComoduleAction {
    Check,
    Coinvariants,
    Descent,
}

#[derive(Clone, Copy, ValueEnum)]
enum BraidingAction {
    Verify,
    Solve,
}

#[derive(Clone, Copy, ValueEnum)]
enum EKind {
    Separability,
    UnitProjection,
    Augmentation,
}

#[derive(Args)]
struct Source {
    /// Algebra file (JSON); omit when --builtin is given
    file: Option<String>,
    /// Built-in algebra: q, dual-numbers, prod2, m2, group:c2, quaternion:-1,-1, truncpoly:3
    #[arg(long, conflicts_with = "file")]
    builtin: Option<String>,
    /// Base field for --builtin: Q or F<p>
    #[arg(long, default_value = "Q")]
    field: String,
}

#[derive(Args)]
struct Output {
    /// Emit machine-readable JSON; to stdout with no value, else to the path
    #[arg(long, num_args = 0..=1, default_missing_value = "-")]
    json: Option<String>,
}

fn parse_field(s: &str) -> Result<FieldSpec, Error> {
    let t = s.trim();
    if t.eq_ignore_ascii_case("q") {
        return Ok(FieldSpec::Rationals);
    }
    if let Some(p) = t.strip_prefix('F').or_else(|| t.strip_prefix('f')) {
        let p: u64 = p
            .parse()
            .map_err(|_| Error::InvalidField(format!("cannot read a prime from {s:?}")))?;
        return FieldSpec::prime(p);
    }
    Err(Error::InvalidField(format!("unknown field {s:?}; use Q or F<p>")))
}

impl Source {
    fn load(&self) -> Result<Algebra, Error> {
        match (&self.file, &self.builtin) {
            (Some(path), None) => load_algebra(path),
            (None, Some(name)) => builtin(parse_field(&self.field)?, name),
            (None, None) => Err(Error::InvalidInput(
                "give an algebra file or --builtin <name>".into(),
            )),
            (Some(_), Some(_)) => unreachable!("clap rejects the combination"),
        }
    }
}

impl Output {
    fn emit(&self, payload: &serde_json::Value) -> Result<(), Error> {
        match &self.json {
            None => Ok(()),
            Some(target) => {
                let text = serde_json::to_string_pretty(payload).expect("serializable payload");
                if target == "-" {
                    println!("{text}");
                    Ok(())
                } else {
                    std::fs::write(target, text + "\n")?;
                    Ok(())
                }
            }
        }
    }

    /// Human output goes to stdout unless JSON already occupies it.
    fn quiet(&self) -> bool {
        self.json.as_deref() == Some("-")
    }
}

fn parse_element(a: &Algebra, s: &str, what: &str) -> Result<Vec<Scalar>, Error> {
    let trimmed = s.trim().trim_start_matches(['(', '[']).trim_end_matches([')', ']']);
    let parts: Vec<&str> = trimmed.split(',').map(str::trim).collect();
    if parts.len() != a.dim {
        return Err(Error::InvalidInput(format!(
            "{what} needs {} coordinates, got {}",
            a.dim,
            parts.len()
        )));
    }
    parts.iter().map(|p| a.field.parse(p)).collect()
}

fn print_report(r: &Report, quiet: bool) {
    if quiet {
        return;
    }
    println!("== {}", r.suite);
    for c in &r.checks {
        let mark = match c.status {
            Status::Pass => "pass",
            Status::Fail => "FAIL",
        };
        match &c.witness {
            Some(w) => println!("  [{mark}] {}: {w}", c.name),
            None => println!("  [{mark}] {}", c.name),
        }
    }
    println!("overall: {}", if r.passed() { "pass" } else { "FAIL" });
}

fn report_value(r: &Report) -> serde_json::Value {
    serde_json::to_value(r).expect("reports serialize")
}

/// Loading gate shared by every command: the algebra axioms must hold before
/// anything else is computed from the structure constants.
fn gated_algebra(source: &Source, out: &Output) -> Result<Algebra, CmdFailure> {
    let a = source.load().map_err(CmdFailure::Input)?;
    let rep = check_algebra(&a);
    if !rep.passed() {
        print_report(&rep, out.quiet());
        out.emit(&report_value(&rep)).map_err(CmdFailure::Input)?;
        return Err(CmdFailure::Checks);
    }
    Ok(a)
}

enum CmdFailure {
    Checks,
    Input(Error),
}

impl From<Error> for CmdFailure {
    fn from(e: Error) -> CmdFailure {
        CmdFailure::Input(e)
    }
}

fn separability_terms(a: &Algebra, e: &SeparabilityElement) -> Vec<String> {
    let mut terms = Vec::new();
    for r in 0..a.dim {
        for c in 0..a.dim {
            let v = e.matrix.at(r, c);
            if v.is_zero() {
                continue;
            }
            let coeff = if v.is_one() { String::new() } else { format!("{v}*") };
            terms.push(format!("{coeff}{} (x) {}", a.basis[r], a.basis[c]));
        }
    }
    terms
}

fn cmd_algebra(action: AlgebraAction, source: &Source, out: &Output) -> Result<bool, CmdFailure> {
    match action {
        AlgebraAction::Check => {
            let a = source.load()?;
            let rep = check_algebra(&a);
            print_report(&rep, out.quiet());
            out.emit(&report_value(&rep))?;
            Ok(rep.passed())
        }
        AlgebraAction::Center => {
            let a = gated_algebra(source, out)?;
            let z = center(&a);
            if !out.quiet() {
                println!("center dimension {}", z.len());
                for v in &z {
                    println!("  {}", a.el_to_string(v));
                }
            }
            out.emit(&json!({
                "center_dim": z.len(),
                "basis": z.iter().map(|v| a.el_to_string(v)).collect::<Vec<_>>(),
            }))?;
            Ok(true)
        }
        AlgebraAction::Separability => {
            let a = gated_algebra(source, out)?;
            match find_separability_element(&a) {
                Some(e) => {
                    let rep = check_separability_element(&a, &e);
                    let terms = separability_terms(&a, &e);
                    if !out.quiet() {
                        println!("e = {}", terms.join(" + "));
                    }
                    print_report(&rep, out.quiet());
                    out.emit(&json!({
                        "separable": true,
                        "element": terms,
                        "checks": report_value(&rep),
                    }))?;
                    Ok(rep.passed())
                }
                None => {
                    if !out.quiet() {
                        println!("none");
                    }
                    out.emit(&json!({ "separable": false }))?;
                    Ok(true)
                }
            }
        }
    }
}

fn cmd_comodule(
    action: ComoduleAction,
    files: &[String],
    builtin_name: &Option<String>,
    field: &str,
    skip_checks: bool,
    out: &Output,
) -> Result<bool, CmdFailure> {
    let (a, comodule_path) = match builtin_name {
        Some(name) => {
            let [path] = files else {
                return Err(Error::InvalidInput(
                    "with --builtin give exactly one file: the comodule".into(),
                )
                .into());
            };
            (builtin(parse_field(field)?, name)?, path)
        }
        None => {
            let [alg, path] = files else {
                return Err(Error::InvalidInput(
                    "give two files: the algebra then the comodule".into(),
                )
                .into());
            };
            (load_algebra(alg)?, path)
        }
    };
    if !skip_checks {
        let rep = check_algebra(&a);
        if !rep.passed() {
            print_report(&rep, out.quiet());
            out.emit(&report_value(&rep))?;
            return Err(CmdFailure::Checks);
        }
    }
    let m = load_comodule(&a, comodule_path)?;
    let axioms = check_comodule(&a, &m);
    if !skip_checks && !axioms.passed() && !matches!(action, ComoduleAction::Check) {
        print_report(&axioms, out.quiet());
        out.emit(&report_value(&axioms))?;
        return Err(CmdFailure::Checks);
    }
    match action {
        ComoduleAction::Check => {
            print_report(&axioms, out.quiet());
            out.emit(&report_value(&axioms))?;
            Ok(axioms.passed())
        }
        ComoduleAction::Coinvariants => {
            let basis = coinvariants(&a, &m);
            if !out.quiet() {
                println!("coinvariants dimension {}", basis.len());
                for v in &basis {
                    let coords: Vec<String> = v.iter().map(scalar_to_string).collect();
                    println!("  ({})", coords.join(", "));
                }
            }
            out.emit(&json!({
                "coinvariants_dim": basis.len(),
                "basis": basis
                    .iter()
                    .map(|v| v.iter().map(scalar_to_string).collect::<Vec<_>>())
                    .collect::<Vec<_>>(),
            }))?;
            Ok(true)
        }
        ComoduleAction::Descent => {
            let rep = check_descent_equivalence(&a, 2, &m);
            print_report(&rep, out.quiet());
            out.emit(&report_value(&rep))?;
            Ok(rep.passed())
        }
    }
}

fn choose_objects(
    a: &Algebra,
    keys: &[String],
) -> Result<Vec<(String, sweedler::comodule::Comodule)>, Error> {
    let all = default_test_objects(a)?;
    if keys.is_empty() {
        return Ok(all);
    }
    let normalize =
        |s: &str| s.chars().filter(|c| c.is_ascii_alphanumeric()).collect::<String>().to_lowercase();
    let mut chosen = Vec::new();
    for key in keys {
        let want = normalize(key);
        match all.iter().find(|(name, _)| normalize(name) == want) {
            Some(pair) => chosen.push(pair.clone()),
            None => {
                let known: Vec<String> = all.iter().map(|(n, _)| normalize(n)).collect();
                return Err(Error::InvalidInput(format!(
                    "unknown object {key:?}; choose from {}",
                    known.join(", ")
                )));
            }
        }
    }
    Ok(chosen)
}

fn build_e(
    a: &Algebra,
    kind: Option<EKind>,
    augmentation: &Option<String>,
) -> Result<CentralMap, CmdFailure> {
    let constructed = match kind {
        Some(EKind::Separability) => {
            let sep = find_separability_element(a).ok_or_else(|| {
                Error::InvalidInput("the algebra has no separability element".into())
            })?;
            build_E_from_separability(a, &sep)?
        }
        Some(EKind::UnitProjection) => build_E_unit_projection(a),
        Some(EKind::Augmentation) => {
            let text = augmentation.as_ref().ok_or_else(|| {
                Error::InvalidInput(
                    "--with-E augmentation needs --augmentation with the character values".into(),
                )
            })?;
            let eps = parse_element(a, text, "the augmentation")?;
            build_E_from_augmentation(a, &eps)?
        }
        None => match find_separability_element(a) {
            Some(sep) => build_E_from_separability(a, &sep)?,
            None => build_E_unit_projection(a),
        },
    };
    let rep = check_E(a, &constructed);
    if !rep.passed() {
        let witness = rep
            .first_failure()
            .map(|c| c.name.clone())
            .unwrap_or_else(|| "unknown".into());
        return Err(Error::CheckFailed(format!(
            "the chosen splitting map is not valid here ({witness}); pick another --with-E"
        ))
        .into());
    }
    Ok(constructed)
}

fn cmd_braiding(
    action: BraidingAction,
    source: &Source,
    objects: &[String],
    with_e: Option<EKind>,
    augmentation: &Option<String>,
    ca: &Option<String>,
    oracle: bool,
    out: &Output,
) -> Result<bool, CmdFailure> {
    let a = gated_algebra(source, out)?;
    match action {
        BraidingAction::Verify => {
            let objs = choose_objects(&a, objects)?;
            let family = match ca {
                Some(text) => BraidFamily::Ca(parse_element(&a, text, "the twist element")?),
                None => BraidFamily::Canonical,
            };
            let rep = verify_braiding(&a, &family, &objs, &BraidingOptions::default());
            print_report(&rep, out.quiet());
            out.emit(&report_value(&rep))?;
            Ok(rep.passed())
        }
        BraidingAction::Solve => {
            let e = build_e(&a, with_e, augmentation)?;
            let (rep, orc) = if oracle {
                let (rep, orc) = enumerate_with_oracle(&a, &e)?;
                (rep, Some(orc))
            } else {
                (enumerate_braidings(&a, &e)?, None)
            };
            if !out.quiet() {
                println!("== braiding solve over {}", a.field);
                for s in &rep.stages {
                    println!("  stage {:<45} solution dim {}", s.name, s.dim);
                }
                for s in &rep.survivors {
                    println!("  survivor: {s}");
                }
                println!(
                    "  canonical survives every stage: {}",
                    if rep.canonical_survives_stages { "yes" } else { "no" }
                );
                println!(
                    "  survivor set is exactly the canonical braiding: {}",
                    if rep.exactly_canonical { "yes" } else { "no" }
                );
                for n in &rep.notes {
                    println!("  note: {n}");
                }
                if let Some(orc) = &orc {
                    for s in &orc.stages {
                        println!("  oracle {:<46} solution dim {}", s.name, s.dim);
                    }
                    println!(
                        "  oracle agrees with the pipeline: {}",
                        match rep.oracle_agrees {
                            Some(true) => "yes",
                            Some(false) => "no",
                            None => "not compared",
                        }
                    );
                }
            }
            let payload = match &orc {
                Some(orc) => json!({
                    "solver": serde_json::to_value(&rep).expect("reports serialize"),
                    "oracle": serde_json::to_value(orc).expect("reports serialize"),
                }),
                None => serde_json::to_value(&rep).expect("reports serialize"),
            };
            out.emit(&payload)?;
            Ok(rep.oracle_agrees != Some(false))
        }
    }
}

fn main() -> ExitCode {
    // Die quietly when the consumer of a pipe goes away, as cat and grep do.
    #[cfg(unix)]
    unsafe {
        libc::signal(libc::SIGPIPE, libc::SIG_DFL);
    }
    let cli = Cli::parse();
    let outcome = match &cli.cmd {
        Cmd::Algebra { action, source, out } => cmd_algebra(*action, source, out),
        Cmd::Comodule { action, files, builtin, field, skip_checks, out } => {
            cmd_comodule(*action, files, builtin, field, *skip_checks, out)
        }
        Cmd::Braiding { action, source, objects, with_e, augmentation, ca, oracle, out } => {
            cmd_braiding(*action, source, objects, *with_e, augmentation, ca, *oracle, out)
        }
    };
    match outcome {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) | Err(CmdFailure::Checks) => ExitCode::from(1),
        Err(CmdFailure::Input(e)) => {
            eprintln!("error: {e}");
            let code = match e {
                Error::CheckFailed(_) | Error::DescentFailure(_) => 1,
                _ => 2,
            };
            ExitCode::from(code)
        }
    }
}
