//! Command-line surface: every verification and computation behind one
//! deterministic binary. Exit codes: 0 when all checks pass, 1 when
//! violations were found, 2 on input errors.

use crate::algebra::{AlgebraKind, AlgebraTable, Window};
use crate::catalog::{builtin_algebra, load_module_spec, load_spec, AntiModule};
use crate::error::{AlgError, Result};
use crate::rational::int;
use crate::report::Report;
use clap::{Args, Parser, Subcommand};
use serde::Serialize;
use std::collections::BTreeMap;
use std::path::PathBuf;

#[derive(Parser, Debug)]
#[command(name = "antialg", version, about = "exact computer algebra for Lie antialgebras")]
pub struct Cli {
    #[command(subcommand)]
    command: Command,
    /// machine-readable JSON on stdout instead of the human summary
    #[arg(long, global = true)]
    json: bool,
}

#[derive(Args, Debug, Clone)]
struct AlgebraArgs {
    /// builtin algebra name: asl2, ah1:<kappa>, ak1:<window>, k1:<window>, osp12
    #[arg(long)]
    algebra: Option<String>,
    /// path to an .alg.json spec file
    #[arg(long)]
    spec: Option<PathBuf>,
    /// index window bound for family algebras
    #[arg(long)]
    window: Option<i64>,
}

impl AlgebraArgs {
    fn resolve(&self) -> Result<AlgebraTable> {
        match (&self.algebra, &self.spec) {
            (Some(name), None) => builtin_algebra(name, self.window).ok_or_else(|| {
                AlgError::Precondition(format!("unknown algebra name `{name}`"))
            }),
            (None, Some(path)) => load_spec(path),
            _ => Err(AlgError::Precondition(
                "exactly one of --algebra or --spec is required".into(),
            )),
        }
    }

    fn window(&self) -> Option<Window> {
        self.window.map(Window::symmetric)
    }
}

#[derive(Subcommand, Debug)]
enum Command {
    /// verify the defining identities of an antialgebra or superalgebra
    CheckAxioms(AlgebraArgs),
    /// solve for the derivation superalgebra, or verify the conformal action
    Derivations(AlgebraArgs),
    /// build the associated Lie superalgebra on the odd square
    Superize(AlgebraArgs),
    /// representation checks
    Rep {
        #[command(subcommand)]
        cmd: RepCommand,
    },
    /// the symplectic superspace origin
    Geo {
        #[command(subcommand)]
        cmd: GeoCommand,
    },
    /// cohomology dimensions of a finite algebra with coefficients
    Cohomology {
        #[command(flatten)]
        algebra: AlgebraArgs,
        /// trivial | adjoint | coadjoint | <path to .mod.json>
        #[arg(long, default_value = "trivial")]
        module: String,
        #[arg(long, default_value_t = 2)]
        max_degree: usize,
    },
    /// distinguished cocycles
    Cocycle {
        #[command(subcommand)]
        cmd: CocycleCommand,
    },
    /// the split bilinear map equivalence
    Associator(AlgebraArgs),
    /// print the calibrated convention ledger
    Conventions,
}

#[derive(Subcommand, Debug)]
enum RepCommand {
    /// verify the anticommutator law for the superspace model
    Check {
        #[arg(long, default_value_t = 3)]
        window: i64,
    },
    /// calibrate and report the superspace model scalars
    Frep {
        #[arg(long, default_value_t = 3)]
        window: i64,
    },
    /// the ghost Casimir square on the windowed model
    Casimir {
        #[arg(long, default_value_t = 6)]
        window: i64,
    },
}

#[derive(Subcommand, Debug)]
enum GeoCommand {
    /// the degree-one Laurent basis reproduces the conformal antialgebra
    VerifyAk1 {
        #[arg(long, default_value_t = 5)]
        window: i64,
    },
    /// the space of invariant bivectors with bounded coefficients
    Invariants {
        #[arg(long, default_value_t = 1)]
        degree: i64,
    },
}

#[derive(Subcommand, Debug)]
enum CocycleCommand {
    /// the dual one-cocycle on the conformal antialgebra
    Gamma {
        #[arg(long, default_value_t = 6)]
        window: i64,
    },
}

#[derive(Serialize)]
struct Output {
    passed: bool,
    reports: Vec<Report>,
    #[serde(skip_serializing_if = "BTreeMap::is_empty")]
    data: BTreeMap<String, serde_json::Value>,
}

impl Output {
    fn new() -> Output {
        Output { passed: true, reports: Vec::new(), data: BTreeMap::new() }
    }

    fn push(&mut self, r: Report) {
        self.passed &= r.passed();
        self.reports.push(r);
    }

    fn datum<V: Serialize>(&mut self, key: &str, v: V) {
        self.data.insert(key.into(), serde_json::to_value(v).expect("serializable"));
    }
}

/// Run the command line; returns the process exit code. All output is
/// deterministic: ordered maps, ordered reports, stable pivoting underneath.
pub fn run<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            // clap handles --help/--version through this path as well
            let _ = e.print();
            return if e.use_stderr() { 2 } else { 0 };
        }
    };
    match execute(&cli) {
        Ok(out) => {
            if cli.json {
                println!("{}", serde_json::to_string_pretty(&out).expect("serializable"));
            } else {
                for r in &out.reports {
                    println!("{r}");
                }
                for (k, v) in &out.data {
                    println!("{k}: {v}");
                }
                println!("overall: {}", if out.passed { "pass" } else { "FAIL" });
            }
            if out.passed {
                0
            } else {
                1
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            2
        }
    }
}

fn execute(cli: &Cli) -> Result<Output> {
    let mut out = Output::new();
    crate::conventions::resolve_pinned()?;
    match &cli.command {
        Command::CheckAxioms(a) => {
            let algebra = a.resolve()?;
            let report = match algebra.kind {
                AlgebraKind::Antialgebra => algebra.check_antialgebra(a.window())?,
                AlgebraKind::Superalgebra => algebra.check_superalgebra(a.window())?,
            };
            out.push(report);
        }
        Command::Derivations(a) => {
            let algebra = a.resolve()?;
            if algebra.is_finite() {
                let der = crate::derivations::derivation_algebra(&algebra)?;
                let (d0, d1) = der.dims();
                out.datum("derivation_dims", format!("{d0}|{d1}"));
                out.push(der.table.check_superalgebra(None)?);
                if der.dims() == (3, 2) {
                    let iso = crate::osp::match_osp12(&der.table).is_ok();
                    out.datum("matches_osp12", iso);
                }
            } else {
                let w = a.window().or(algebra.default_window()).unwrap_or(Window::symmetric(3));
                out.push(crate::derivations::check_k1_action(w)?);
            }
        }
        Command::Superize(a) => {
            let algebra = a.resolve()?;
            let sup = crate::superization::superize(&algebra)?;
            let (d0, d1) = sup.dims();
            out.datum("dims", format!("{d0}|{d1}"));
            out.push(sup.table.check_superalgebra(None)?);
        }
        Command::Rep { cmd } => match cmd {
            RepCommand::Check { window } => {
                let w = Window::symmetric(*window);
                let rep = crate::representations::build_frep(w)?;
                out.push(crate::representations::check_poly_rep(&rep, w, window + 2)?);
            }
            RepCommand::Frep { window } => {
                let w = Window::symmetric(*window);
                let rep = crate::representations::build_frep(w)?;
                out.datum("c_ell", crate::rational::fmt_rat(&rep.c_ell));
                out.datum("c_e", crate::rational::fmt_rat(&rep.c_e));
                out.datum("odd_odd_flipped", rep.odd_odd_flipped);
                out.push(crate::representations::check_poly_rep(&rep, w, window + 2)?);
            }
            RepCommand::Casimir { window } => {
                let module = crate::representations::PolySuperModule::new(-window, *window, 2);
                let rep = crate::representations::build_frep(Window::symmetric(3))?;
                let snap = crate::representations::frep_asl2_matrix_rep(&rep, &module)?;
                let a = snap.chi[&crate::graded::BasisLabel::plain("a")].scale(&int(2));
                let b = snap.chi[&crate::graded::BasisLabel::plain("b")].scale(&int(2));
                let e = a.compose(&b).sub(&b.compose(&a));
                let interior = module.interior_columns(4);
                let relations =
                    crate::representations::check_asl2_rep(&e, &a, &b, Some(&interior))?;
                out.push(relations);
                let gamma = crate::representations::ghost_casimir(&a, &b);
                let q = gamma.compose(&gamma).sub(
                    &crate::representations::GradedMatrix::identity(snap.d0, snap.d1)
                        .scale(&crate::rational::rat(1, 4)),
                );
                let ok = q.vanishes_on(&module.interior_columns(6));
                out.datum("casimir_square_is_quarter_identity", ok);
                out.passed &= ok;
            }
        },
        Command::Geo { cmd } => match cmd {
            GeoCommand::VerifyAk1 { window } => {
                out.push(crate::geometry::verify_ak1_origin(Window::symmetric(*window))?);
            }
            GeoCommand::Invariants { degree } => {
                let space = crate::geometry::invariant_bivector_space(*degree, false)?;
                out.datum("dimension", space.dim());
                let p = space.coordinates_of(&crate::geometry::poisson_bivector());
                let l = space.coordinates_of(&crate::geometry::lambda_bivector());
                let spanned = match (p, l) {
                    (Some(p), Some(l)) => {
                        let mut rows = space.basis.clone();
                        rows.push(p);
                        rows.push(l);
                        crate::linalg::RatMatrix::from_rows(rows).rank() == space.dim()
                    }
                    _ => false,
                };
                out.datum("spanned_by_the_two_invariants", spanned);
                out.passed &= space.dim() == 2 && spanned;
            }
        },
        Command::Cohomology { algebra, module, max_degree } => {
            let a = algebra.resolve()?;
            let mut dims: BTreeMap<String, serde_json::Value> = BTreeMap::new();
            match module.as_str() {
                "trivial" => {
                    let complex = crate::cohomology::CochainComplex::trivial_even(&a);
                    for k in 1..=*max_degree {
                        let (ev, od) = complex.cohomology_dims(k)?;
                        dims.insert(
                            k.to_string(),
                            serde_json::json!({"even": ev, "odd": od}),
                        );
                    }
                }
                other => {
                    let m = match other {
                        "adjoint" => AntiModule::adjoint(&a)?,
                        "coadjoint" => AntiModule::coadjoint(&a)?,
                        path => load_module_spec(std::path::Path::new(path))?,
                    };
                    let complex = crate::cohomology::CoefficientComplex::new(&m)?;
                    for k in 1..=*max_degree {
                        let (ev, od) = complex.cohomology_dims(k)?;
                        dims.insert(
                            k.to_string(),
                            serde_json::json!({"even": ev, "odd": od}),
                        );
                    }
                }
            }
            out.datum("cohomology", dims);
        }
        Command::Cocycle { cmd } => match cmd {
            CocycleCommand::Gamma { window } => {
                let g = crate::cohomology::gamma_cocycle(Window::symmetric(*window))?;
                out.datum("nontrivial_on_window", g.nontrivial_on_window);
                let nt = g.nontrivial_on_window;
                out.push(g.closedness);
                out.passed &= nt;
            }
        },
        Command::Associator(a) => {
            let algebra = a.resolve()?;
            let m = crate::associator::bracket_to_m(&algebra)?;
            out.push(crate::associator::skew_equivalence(&m, a.window())?);
        }
        Command::Conventions => {
            let ledger = crate::conventions::resolve_pinned()?;
            out.datum("conventions", serde_json::to_value(&ledger)?);
        }
    }
    Ok(out)
}
