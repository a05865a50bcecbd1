//! `cotwist`: exact computations on finite-dimensional bialgebras — axiom
//! verification, co-Hochschild cohomology, twisted derivations and their
//! crossed module, R-matrix tangent data, Lie/U(g) machinery, and the free
//! differential bialgebra E(H).
//!
//! Exit codes: 0 success, 1 verification failure (report carries witnesses),
//! 2 input error.

use std::collections::BTreeMap;
use std::io::Read;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use cotwist_core::bialgebra::Check;
use cotwist_core::catalog;
use cotwist_core::cohomology;
use cotwist_core::format::{
    self, bialgebra_to_file, emit_algebra, file_to_bialgebra, file_to_lie, lie_to_file,
    parse_algebra, Report,
};
use cotwist_core::freediff::{EElement, FreeDiffAlgebra, PolyTensor};
use cotwist_core::lie;
use cotwist_core::scalar::parse_scalar;
use cotwist_core::tensor::TensorElement;
use cotwist_core::twisted;

#[derive(Parser)]
#[command(name = "cotwist", version, about = "Exact bialgebra computations")]
struct Cli {
    /// Output format for reports.
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Text,
}

#[derive(Subcommand)]
enum Command {
    /// Verify the axioms of a bialgebra or Lie algebra file.
    Verify { file: String },
    /// Co-Hochschild cohomology of a bialgebra.
    Cohomology {
        file: String,
        #[arg(long)]
        degree: Option<usize>,
        /// Compute all degrees 1..=N instead of a single degree.
        #[arg(long)]
        max_degree: Option<usize>,
    },
    /// Twisted derivations (d, φ) of a bialgebra.
    Twisted {
        file: String,
        /// Compute the crossed module ∂: H_ε → Der_tw with π0, π1.
        #[arg(long)]
        crossed_module: bool,
        /// Include the Jacobiator table (implies --crossed-module).
        #[arg(long)]
        jacobiator: bool,
        /// Attempt to separate every basis twisted derivation.
        #[arg(long)]
        separate_all: bool,
    },
    /// R-matrix verification and tangent theory.
    Rmatrix {
        file: String,
        /// Element file holding R ∈ H⊗H.
        #[arg(long)]
        r: String,
        #[arg(long)]
        tangent: bool,
        #[arg(long)]
        stabilizer: bool,
    },
    /// Lie algebra computations.
    Lie {
        file: String,
        /// Outer derivations Der(g)/Inn(g).
        #[arg(long)]
        outder: bool,
        /// Invariants of Λⁿg for the given n.
        #[arg(long)]
        exterior_invariants: Option<usize>,
        /// Schouten-bracket checks on Λ²-invariants.
        #[arg(long)]
        schouten: bool,
        /// The semidirect Lie algebra OutDer(g) ⋉ (Λ²g)^g.
        #[arg(long)]
        semidirect: bool,
    },
    /// U(g) computations via the graded symmetric coalgebra.
    Ug {
        file: String,
        /// Cochain degree n for graded co-Hochschild cohomology of S(g).
        #[arg(long)]
        graded_cohomology: Option<usize>,
        /// Truncation bound N on the symmetric grade.
        #[arg(long, default_value_t = 3)]
        trunc: usize,
        /// Restrict to the g-invariant subcomplex.
        #[arg(long)]
        invariant: bool,
        /// Element file with φ ∈ g⊗g: run the invariant-twist check.
        #[arg(long)]
        twist_check: Option<String>,
    },
    /// The truncated free differential bialgebra E(k[x₁…x_k]).
    Ediff {
        /// Comma-separated polynomial generators, e.g. "x,y".
        gens: String,
        /// JSON file with φ as [[left_exponents, right_exponents, "p/q"], …].
        #[arg(long)]
        phi: Option<String>,
        #[arg(long, default_value_t = 4)]
        weight: u32,
        /// Run the structural and twisted-derivation verifications.
        #[arg(long)]
        verify: bool,
    },
    /// Built-in algebra catalog.
    Catalog {
        #[command(subcommand)]
        action: CatalogAction,
    },
}

#[derive(Subcommand)]
enum CatalogAction {
    /// List the available names.
    List,
    /// Emit an algebra file to stdout.
    Emit { name: String },
}

fn read_input(path: &str) -> Result<String, String> {
    if path == "-" {
        let mut buf = String::new();
        std::io::stdin()
            .read_to_string(&mut buf)
            .map_err(|e| format!("reading stdin: {e}"))?;
        Ok(buf)
    } else {
        std::fs::read_to_string(path).map_err(|e| format!("reading {path}: {e}"))
    }
}

fn load_element(path: &str, dim: usize, degree: usize) -> Result<TensorElement, String> {
    let text = read_input(path)?;
    let t = format::parse_element(&text).map_err(|e| e.to_string())?;
    if t.dim != dim || t.degree != degree {
        return Err(format!(
            "element has dim {} degree {}, expected dim {dim} degree {degree}",
            t.dim, t.degree
        ));
    }
    Ok(t)
}

fn command_echo() -> Vec<String> {
    std::env::args().skip(1).collect()
}

fn run() -> Result<Report, RunError> {
    let cli = Cli::parse();
    let report = match &cli.command {
        Command::Verify { file } => cmd_verify(file)?,
        Command::Cohomology {
            file,
            degree,
            max_degree,
        } => cmd_cohomology(file, *degree, *max_degree)?,
        Command::Twisted {
            file,
            crossed_module,
            jacobiator,
            separate_all,
        } => cmd_twisted(file, *crossed_module || *jacobiator, *jacobiator, *separate_all)?,
        Command::Rmatrix {
            file,
            r,
            tangent,
            stabilizer,
        } => cmd_rmatrix(file, r, *tangent, *stabilizer)?,
        Command::Lie {
            file,
            outder,
            exterior_invariants,
            schouten,
            semidirect,
        } => cmd_lie(file, *outder, *exterior_invariants, *schouten, *semidirect)?,
        Command::Ug {
            file,
            graded_cohomology,
            trunc,
            invariant,
            twist_check,
        } => cmd_ug(file, *graded_cohomology, *trunc, *invariant, twist_check.as_deref())?,
        Command::Ediff {
            gens,
            phi,
            weight,
            verify,
        } => cmd_ediff(gens, phi.as_deref(), *weight, *verify)?,
        Command::Catalog { action } => match action {
            CatalogAction::List => {
                let mut r = Report::new(command_echo(), "catalog");
                r.vectors.insert(
                    "bialgebras".into(),
                    catalog::BIALGEBRA_NAMES.iter().map(|s| s.to_string()).collect(),
                );
                r.vectors.insert(
                    "lie_algebras".into(),
                    catalog::LIE_NAMES.iter().map(|s| s.to_string()).collect(),
                );
                r
            }
            CatalogAction::Emit { name } => {
                let text = if let Some(b) = catalog::bialgebra_by_name(name) {
                    emit_algebra(&bialgebra_to_file(&b, Some(name.clone())))
                } else if let Some(l) = catalog::lie_by_name(name) {
                    emit_algebra(&lie_to_file(&l, Some(name.clone())))
                } else {
                    return Err(RunError::Input(format!("unknown catalog name {name:?}")));
                };
                print!("{text}");
                return Err(RunError::Done);
            }
        },
    };
    match cli.format {
        Format::Json => print!("{}", report.to_json()),
        Format::Text => print!("{}", report.to_text()),
    }
    Ok(report)
}

enum RunError {
    Input(String),
    /// Output already produced; exit 0 without a report.
    Done,
}

fn cmd_verify(file: &str) -> Result<Report, RunError> {
    let text = read_input(file).map_err(RunError::Input)?;
    let f = parse_algebra(&text).map_err(|e| RunError::Input(e.to_string()))?;
    let mut report = Report::new(command_echo(), &text);
    match f.kind.as_str() {
        "bialgebra" => {
            let b = file_to_bialgebra(&f).map_err(|e| RunError::Input(e.to_string()))?;
            report.set_number("dim", b.dim as i64);
            report.push_checks(&b.verify().checks);
        }
        "lie_algebra" => {
            let l = file_to_lie(&f).map_err(|e| RunError::Input(e.to_string()))?;
            report.set_number("dim", l.dim as i64);
            report.push_checks(&l.verify().checks);
        }
        k => return Err(RunError::Input(format!("unknown kind {k:?}"))),
    }
    Ok(report)
}

fn load_bialgebra(file: &str) -> Result<(String, cotwist_core::Bialgebra), RunError> {
    let text = read_input(file).map_err(RunError::Input)?;
    let f = parse_algebra(&text).map_err(|e| RunError::Input(e.to_string()))?;
    let b = file_to_bialgebra(&f).map_err(|e| RunError::Input(e.to_string()))?;
    Ok((text, b))
}

fn cmd_cohomology(
    file: &str,
    degree: Option<usize>,
    max_degree: Option<usize>,
) -> Result<Report, RunError> {
    let (text, b) = load_bialgebra(file)?;
    let degrees: Vec<usize> = match (degree, max_degree) {
        (_, Some(m)) => (1..=m).collect(),
        (Some(n), None) => vec![n],
        (None, None) => return Err(RunError::Input("need --degree or --max-degree".into())),
    };
    if degrees.iter().any(|&n| n == 0) {
        return Err(RunError::Input("degree must be ≥ 1".into()));
    }
    let mut report = Report::new(command_echo(), &text);
    for n in degrees {
        let h = cohomology::cohomology(&b, n);
        report.set_number(&format!("H{n}_dim"), h.dim as i64);
        report.set_number(&format!("H{n}_cocycles"), h.cocycle_dim as i64);
        report.set_number(&format!("H{n}_coboundaries"), h.coboundary_dim as i64);
        for (i, rep) in h.representatives.iter().enumerate() {
            report.set_element(&format!("H{n}_rep{i}"), rep);
        }
    }
    Ok(report)
}

fn cmd_twisted(
    file: &str,
    crossed_module: bool,
    jacobiator: bool,
    separate_all: bool,
) -> Result<Report, RunError> {
    let (text, b) = load_bialgebra(file)?;
    let mut report = Report::new(command_echo(), &text);
    let sp = twisted::twisted_derivation_space(&b);
    report.set_number("der_tw_dim", sp.basis.len() as i64);
    if crossed_module {
        let cm = twisted::crossed_module(&b);
        report.set_number("pi0_dim", cm.pi0_dim() as i64);
        report.set_number("pi1_dim", cm.pi1.dim() as i64);
        for (i, j, coords) in &cm.pi0_structure {
            report.set_vector(&format!("pi0_bracket_{i}_{j}"), coords);
        }
        report.push_checks(&cm.checks);
        if jacobiator {
            for (i, j, k, v) in &cm.jacobiator {
                report.set_vector(&format!("jacobiator_{i}_{j}_{k}"), v);
            }
        }
        let oq = twisted::outer_quotients(&b);
        report.set_number("invariant_twists_dim", oq.invariant_twists.dim() as i64);
        report.set_number("outer_twists_dim", oq.outer_twists_reps.len() as i64);
        report.set_number(
            "bialgebra_derivations_dim",
            oq.bialgebra_derivations.dim() as i64,
        );
        report.set_number("outer_bialgebra_dim", oq.outer_bialgebra_reps.len() as i64);
        report.push_checks(&oq.checks);
    }
    if separate_all {
        let mut checks = Vec::new();
        for (i, t) in sp.basis.iter().enumerate() {
            match twisted::separate(&b, t) {
                Some((a, _)) => checks.push(Check {
                    name: format!("basis twisted derivation {i} separable"),
                    pass: true,
                    witness: Some(format!(
                        "gauge element coordinates {:?}",
                        a.iter()
                            .map(cotwist_core::scalar::format_scalar)
                            .collect::<Vec<_>>()
                    )),
                }),
                None => checks.push(Check::fail(
                    &format!("basis twisted derivation {i} separable"),
                    "no gauge element".into(),
                )),
            }
        }
        report.push_checks(&checks);
    }
    Ok(report)
}

fn cmd_rmatrix(
    file: &str,
    r_file: &str,
    tangent: bool,
    stabilizer: bool,
) -> Result<Report, RunError> {
    let (text, b) = load_bialgebra(file)?;
    let big_r = load_element(r_file, b.dim, 2).map_err(RunError::Input)?;
    let mut report = Report::new(command_echo(), &text);
    let checks = twisted::r_matrix_verify(&b, &big_r)
        .map_err(|e| RunError::Input(e.to_string()))?;
    report.push_checks(&checks);
    if tangent {
        let t = twisted::tangent_r_space(&b, &big_r);
        report.set_number("tangent_dim", t.dim() as i64);
        for (i, v) in t.basis.iter().enumerate() {
            report.set_element(
                &format!("tangent_rep{i}"),
                &TensorElement::from_vector(b.dim, 2, v),
            );
        }
        report.push_checks(&twisted::r_module_report(&b, &big_r));
    }
    if stabilizer {
        let s = twisted::stabilizer_der(&b, &big_r);
        report.set_number("stabilizer_dim", s.dim() as i64);
    }
    Ok(report)
}

fn cmd_lie(
    file: &str,
    outder: bool,
    exterior_invariants: Option<usize>,
    schouten: bool,
    semidirect: bool,
) -> Result<Report, RunError> {
    let text = read_input(file).map_err(RunError::Input)?;
    let f = parse_algebra(&text).map_err(|e| RunError::Input(e.to_string()))?;
    let g = file_to_lie(&f).map_err(|e| RunError::Input(e.to_string()))?;
    let mut report = Report::new(command_echo(), &text);
    report.set_number("dim", g.dim as i64);
    report.push_checks(&g.verify().checks);
    if outder {
        let od = g.outer_derivations();
        report.set_number("derivations_dim", od.derivations.dim() as i64);
        report.set_number("inner_dim", od.inner.dim() as i64);
        report.set_number("outer_dim", od.outer_dim() as i64);
    }
    if let Some(k) = exterior_invariants {
        let inv = g.exterior_invariants(k);
        report.set_number(&format!("lambda{k}_invariants_dim"), inv.dim() as i64);
        for (i, v) in inv.basis.iter().enumerate() {
            report.set_vector(&format!("lambda{k}_invariant{i}"), v);
        }
    }
    if schouten {
        // degree-1 Schouten is the bracket; it vanishes on Λ²-invariants
        let inv = g.exterior_invariants(2);
        let mut ok = true;
        for v in &inv.basis {
            for i in 0..g.dim {
                let s = g.schouten(&g.basis_vector(i), 1, v, 2);
                if !s.iter().all(num::Zero::is_zero) {
                    ok = false;
                }
            }
        }
        report.push_checks(&[if ok {
            Check::ok("Schouten bracket vanishes on (Λ²g)^g")
        } else {
            Check::fail("Schouten bracket vanishes on (Λ²g)^g", "residual".into())
        }]);
    }
    if semidirect {
        let sd = g.semidirect_outder_tw();
        report.set_number("semidirect_outer_dim", sd.outer.outer_dim() as i64);
        report.set_number(
            "semidirect_invariant_dim",
            sd.invariant_twists.dim() as i64,
        );
        report.set_number("semidirect_total_dim", sd.algebra.dim as i64);
        report.push_checks(&sd.algebra.verify().checks);
    }
    Ok(report)
}

fn cmd_ug(
    file: &str,
    graded: Option<usize>,
    trunc: usize,
    invariant: bool,
    twist_check: Option<&str>,
) -> Result<Report, RunError> {
    let text = read_input(file).map_err(RunError::Input)?;
    let f = parse_algebra(&text).map_err(|e| RunError::Input(e.to_string()))?;
    let g = file_to_lie(&f).map_err(|e| RunError::Input(e.to_string()))?;
    let mut report = Report::new(command_echo(), &text);
    if graded.is_none() && twist_check.is_none() {
        return Err(RunError::Input(
            "need --graded-cohomology or --twist-check".into(),
        ));
    }
    if let Some(n) = graded {
        let h = lie::graded_cohomology(&g, trunc, n, invariant);
        report.set_number("total_dim", h.total_dim() as i64);
        for p in &h.per_grade {
            report.set_number(&format!("grade{}_dim", p.grade), p.dim as i64);
        }
    }
    if let Some(path) = twist_check {
        let phi = load_element(path, g.dim, 2).map_err(RunError::Input)?;
        let r = lie::ug_invariant_twist_check(&g, &phi);
        report.push_checks(&r.checks);
    }
    Ok(report)
}

fn parse_phi_file(text: &str, num_gens: usize) -> Result<PolyTensor, String> {
    let raw: Vec<(Vec<u32>, Vec<u32>, String)> =
        serde_json::from_str(text).map_err(|e| e.to_string())?;
    let mut out = PolyTensor::new();
    for (a, b, c) in raw {
        if a.len() != num_gens || b.len() != num_gens {
            return Err(format!(
                "exponent vectors must have length {num_gens}"
            ));
        }
        let s = parse_scalar(&c).ok_or_else(|| format!("bad scalar literal {c:?}"))?;
        out.push(((a, b), s));
    }
    Ok(out)
}

fn cmd_ediff(
    gens: &str,
    phi_path: Option<&str>,
    weight: u32,
    verify: bool,
) -> Result<Report, RunError> {
    let names: Vec<String> = gens.split(',').map(|s| s.trim().to_string()).collect();
    if names.iter().any(String::is_empty) {
        return Err(RunError::Input("empty generator name".into()));
    }
    let phi_text = match phi_path {
        Some(p) => read_input(p).map_err(RunError::Input)?,
        None => "[]".into(),
    };
    let phi = parse_phi_file(&phi_text, names.len()).map_err(RunError::Input)?;
    let e = FreeDiffAlgebra::build(names.len(), names.clone(), &phi, weight)
        .map_err(|err| RunError::Input(err.to_string()))?;
    let mut report = Report::new(command_echo(), &format!("{gens}\n{phi_text}"));
    for w in 0..=weight as usize {
        report.set_number(&format!("quotient_dim_weight{w}"), e.quotient_dim(w) as i64);
    }
    // Coproduct table of the letters, rendered canonically.
    let mut table: BTreeMap<String, Vec<String>> = BTreeMap::new();
    for g in 0..names.len() {
        for o in 0..weight {
            let letter = vec![(o, g)];
            let nm = e.word_name(&letter);
            match e.coproduct(&EElement::from_word(letter)) {
                Ok(t) => {
                    let lines: Vec<String> = t
                        .coords
                        .iter()
                        .map(|((l, r), c)| {
                            format!(
                                "{} · {} ⊗ {}",
                                cotwist_core::scalar::format_scalar(c),
                                e.word_name(l),
                                e.word_name(r)
                            )
                        })
                        .collect();
                    table.insert(format!("Delta({nm})"), lines);
                }
                Err(_) => {
                    table.insert(format!("Delta({nm})"), vec!["(weight overflow)".into()]);
                }
            }
        }
    }
    report.vectors.extend(table);
    if verify {
        report.push_checks(&e.verify());
        report.push_checks(&e.verify_twisted_derivation());
    }
    Ok(report)
}

fn main() -> ExitCode {
    match run() {
        Ok(report) => {
            if report.pass {
                ExitCode::from(0)
            } else {
                ExitCode::from(1)
            }
        }
        Err(RunError::Done) => ExitCode::from(0),
        Err(RunError::Input(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
