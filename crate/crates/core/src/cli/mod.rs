//! Command-line front end. Exit codes: 0 when every check holds, 1 when an
//! identity is violated, 2 on input or usage errors.

pub mod document;
pub mod report;

use std::collections::BTreeMap;
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};

use crate::bimyb::{
    check_bimyb, check_even_tempered, check_polynomial_stability, check_prop4, check_remark4,
    check_remark5, check_remark6, q_bracket, BiMyb,
};
use crate::bunch::{
    check_compatible, check_gamma_homomorphism, check_mcybe_variant, check_myb,
    check_primed_lie_condition, make_gamma_bunch, primed_bracket, tangent_bracket, MybAlgebra,
};
use crate::catalog::{build, claims_matrix, Bundle, ClaimsConfig, ENTRIES};
use crate::error::Error;
use crate::liecore::{
    check_antisymmetry, check_jacobi, BracketMap, CheckReport, Element, LinearOperator, Window,
};
use crate::ratlin::{parse_rational, Rational};
use crate::rep::{check_corollary, check_faithful, check_family_closure, check_representation};

pub use document::{
    export_document, load_bundle, parse_input, resolve, to_json, InputDocument, InputError,
};
pub use report::ReportDocument;

#[derive(Debug, Parser)]
#[command(
    name = "bunchcheck",
    version,
    about = "Exact checks of bracket identities for Lie pencils and mYB operators"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    #[command(flatten)]
    pub opts: Options,
}

#[derive(Debug, Default, clap::Args)]
pub struct Options {
    /// JSON input document (`-` reads stdin).
    #[arg(long, global = true)]
    pub input: Option<String>,
    /// Check graded algebras on the index window [-W, W].
    #[arg(long, global = true)]
    pub window: Option<u32>,
    /// Comma-separated lambda samples, e.g. `0,1,1/2`.
    #[arg(long, global = true, value_delimiter = ',', allow_hyphen_values = true)]
    pub lambdas: Option<Vec<String>>,
    /// Emit a JSON report.
    #[arg(long, global = true)]
    pub json: bool,
    /// Report every counterexample, not just the first.
    #[arg(long, global = true)]
    pub all_counterexamples: bool,
    /// Write output to a file instead of stdout.
    #[arg(long, global = true)]
    pub out: Option<String>,
    #[arg(long, global = true)]
    pub algebra: Option<String>,
    #[arg(long, global = true)]
    pub algebra2: Option<String>,
    #[arg(long, global = true)]
    pub operator: Option<String>,
    #[arg(long, global = true)]
    pub operator2: Option<String>,
    /// Operator playing the role of the derivation for `remark5`.
    #[arg(long, global = true)]
    pub xi: Option<String>,
    #[arg(long, global = true)]
    pub assoc: Option<String>,
    #[arg(long, global = true)]
    pub element: Option<String>,
    #[arg(long, global = true)]
    pub pencil: Option<String>,
    #[arg(long, global = true)]
    pub rep: Option<String>,
    #[arg(long, global = true)]
    pub family: Option<String>,
    /// Constant of the classical normalization for `mcybe`.
    #[arg(long, global = true, allow_hyphen_values = true)]
    pub c: Option<String>,
    /// Polynomial coefficients a0,a1,... for `make poly`.
    #[arg(long, global = true, value_delimiter = ',', allow_hyphen_values = true)]
    pub coeffs: Option<Vec<String>>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Run an identity check on objects from the input document.
    Check {
        #[arg(value_enum)]
        identity: CheckKind,
    },
    /// Derive a new object and print the extended input document.
    Make {
        #[arg(value_enum)]
        what: MakeKind,
    },
    /// Built-in example algebras.
    Catalog {
        #[command(subcommand)]
        action: CatalogAction,
    },
    /// Evaluate every recorded statement on its concrete instances.
    Claims,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum CheckKind {
    Jacobi,
    Myb,
    Mcybe,
    PrimedLie,
    Compat,
    Bunch,
    Bimyb,
    Prop4,
    Remark5,
    Remark6,
    EvenTempered,
    Rep,
    Corollary,
    Closure,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum MakeKind {
    Tangent,
    Primed,
    Qbracket,
    Poly,
}

#[derive(Debug, Subcommand)]
pub enum CatalogAction {
    List,
    /// Export an entry, e.g. `witt?W=8&n=2`.
    Export {
        name: String,
    },
}

/// Result of one invocation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

enum Failure {
    Usage(String),
    /// A gate rejected the inputs; the report explains why.
    Violated(CheckReport),
}

impl From<InputError> for Failure {
    fn from(e: InputError) -> Self {
        Failure::Usage(e.to_string())
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::GateFailed(r) | Error::MybViolated(r) => Failure::Violated(*r),
            other => Failure::Usage(other.to_string()),
        }
    }
}

type Res<T> = Result<T, Failure>;

enum Output {
    Checks(Vec<CheckReport>),
    Claims(crate::catalog::ClaimsMatrix),
    Text(String),
}

struct Context {
    opts: Options,
    doc: InputDocument,
    bundle: Bundle,
}

fn pick<'a, T>(
    map: &'a BTreeMap<String, T>,
    flag: &Option<String>,
    what: &str,
    option: &str,
) -> Res<(&'a str, &'a T)> {
    match flag {
        Some(name) => map
            .get_key_value(name)
            .map(|(k, v)| (k.as_str(), v))
            .ok_or_else(|| Failure::Usage(format!("unknown {what} {name:?}"))),
        None if map.len() == 1 => {
            let (k, v) = map.iter().next().expect("one entry");
            Ok((k.as_str(), v))
        }
        None => Err(Failure::Usage(format!(
            "input has {} candidates for the {what}; choose one with --{option}",
            map.len()
        ))),
    }
}

/// Second object: explicit, or the one remaining when exactly two exist.
fn pick_other<'a, T>(
    map: &'a BTreeMap<String, T>,
    first: &str,
    flag: &Option<String>,
    what: &str,
    option: &str,
) -> Res<(&'a str, &'a T)> {
    if flag.is_some() || map.len() != 2 {
        return pick(map, flag, what, option);
    }
    let (k, v) = map
        .iter()
        .find(|(k, _)| k.as_str() != first)
        .expect("two entries");
    Ok((k.as_str(), v))
}

fn rationals(values: &[String], flag: &str) -> Res<Vec<Rational>> {
    values
        .iter()
        .map(|v| parse_rational(v.trim()).map_err(|e| Failure::Usage(format!("--{flag}: {e}"))))
        .collect()
}

impl Context {
    fn window(&self, br: &BracketMap) -> Window {
        match (br.dim(), self.opts.window) {
            (Some(_), _) => Window::Full,
            (None, Some(w)) => Window::Symmetric(w),
            (None, None) => Window::Symmetric(br.default_window()),
        }
    }

    fn lambdas(&self) -> Res<Vec<Rational>> {
        match &self.opts.lambdas {
            Some(v) => rationals(v, "lambdas"),
            None => Ok(crate::bunch::default_lambdas()),
        }
    }

    fn algebra(&self) -> Res<(&str, &BracketMap)> {
        pick(
            &self.bundle.algebras,
            &self.opts.algebra,
            "algebra",
            "algebra",
        )
    }

    fn operator(&self) -> Res<(&str, &LinearOperator)> {
        pick(
            &self.bundle.operators,
            &self.opts.operator,
            "operator",
            "operator",
        )
    }

    fn element(&self) -> Res<&Element> {
        Ok(pick(
            &self.bundle.elements,
            &self.opts.element,
            "element",
            "element",
        )?
        .1)
    }

    fn assoc(&self) -> Res<&crate::bimyb::AssocAlgebra> {
        Ok(pick(
            &self.bundle.assoc_algebras,
            &self.opts.assoc,
            "associative algebra",
            "assoc",
        )?
        .1)
    }

    /// Either two named operators on an algebra, or multiplication by an
    /// element of an associative algebra.
    fn bimyb(&self) -> Res<BiMyb> {
        let use_assoc = self.opts.assoc.is_some()
            || (self.bundle.operators.is_empty() && !self.bundle.assoc_algebras.is_empty());
        if use_assoc {
            return Ok(BiMyb::from_assoc(self.assoc()?, self.element()?)?);
        }
        let (_, br) = self.algebra()?;
        let (first, r1) = self.operator()?;
        let (_, r2) = pick_other(
            &self.bundle.operators,
            first,
            &self.opts.operator2,
            "operator",
            "operator2",
        )?;
        Ok(BiMyb::new(br.clone(), r1.clone(), r2.clone()))
    }

    fn check(&self, kind: CheckKind) -> Res<Vec<CheckReport>> {
        Ok(match kind {
            CheckKind::Jacobi => {
                let (_, br) = self.algebra()?;
                let w = self.window(br);
                vec![check_antisymmetry(br, w)?, check_jacobi(br, w)?]
            }
            CheckKind::Myb => {
                let ((_, br), (_, r)) = (self.algebra()?, self.operator()?);
                vec![check_myb(br, r, self.window(br))?]
            }
            CheckKind::Mcybe => {
                let ((_, br), (_, r)) = (self.algebra()?, self.operator()?);
                let c = self
                    .opts
                    .c
                    .as_ref()
                    .ok_or_else(|| Failure::Usage("check mcybe needs --c".into()))?;
                let c = parse_rational(c).map_err(|e| Failure::Usage(format!("--c: {e}")))?;
                vec![check_mcybe_variant(br, r, &c, self.window(br))?]
            }
            CheckKind::PrimedLie => {
                let ((_, br), (_, r)) = (self.algebra()?, self.operator()?);
                vec![check_primed_lie_condition(br, r, self.window(br))?]
            }
            CheckKind::Compat => {
                let (first, a) = self.algebra()?;
                let (_, b) = pick_other(
                    &self.bundle.algebras,
                    first,
                    &self.opts.algebra2,
                    "algebra",
                    "algebra2",
                )?;
                let w = self.window(a);
                vec![
                    check_jacobi(a, w)?,
                    check_jacobi(b, w)?,
                    check_compatible(a, b, w)?,
                ]
            }
            CheckKind::Bunch => self.check_bunch()?,
            CheckKind::Bimyb => {
                let b = self.bimyb()?;
                vec![check_bimyb(&b, self.window(&b.algebra))?]
            }
            CheckKind::Prop4 => vec![check_prop4(self.assoc()?, self.element()?, Window::Full)?],
            CheckKind::Remark5 => {
                let ((_, br), (_, r)) = (self.algebra()?, self.operator()?);
                let xi = self
                    .opts
                    .xi
                    .as_ref()
                    .ok_or_else(|| Failure::Usage("check remark5 needs --xi".into()))?;
                let xi = self
                    .bundle
                    .operators
                    .get(xi)
                    .ok_or_else(|| Failure::Usage(format!("unknown operator {xi:?}")))?;
                vec![check_remark5(br, r, xi, self.window(br))?]
            }
            CheckKind::Remark6 => {
                vec![check_remark6(self.assoc()?, self.element()?, Window::Full)?]
            }
            CheckKind::EvenTempered => {
                let b = self.bimyb()?;
                let w = self.window(&b.algebra);
                vec![
                    check_remark4(&b, w)?,
                    check_even_tempered(&b, w)?,
                    check_polynomial_stability(&b, &crate::catalog::bimyb_polynomial_set(), w)?,
                ]
            }
            CheckKind::Rep => {
                let (_, refs) = pick(
                    &self.bundle.representations,
                    &self.opts.rep,
                    "representation",
                    "rep",
                )?;
                let rep = document::representation(&self.bundle, refs)?;
                vec![
                    check_representation(&rep, Window::Full)?,
                    check_faithful(&rep)?,
                ]
            }
            CheckKind::Corollary => {
                let ((_, br), (_, r)) = (self.algebra()?, self.operator()?);
                let w = self.window(br);
                let m = MybAlgebra::new(br.clone(), r.clone(), w)?;
                vec![check_corollary(&m, &self.lambdas()?, w)?]
            }
            CheckKind::Closure => {
                let (_, members) =
                    pick(&self.bundle.families, &self.opts.family, "family", "family")?;
                let fam = document::family(&self.bundle, members)?;
                vec![check_family_closure(&fam, Window::Full)?]
            }
        })
    }

    /// A named pencil (Lie gates plus, with an operator, the homomorphism
    /// condition), or the pencil generated by an mYB operator.
    fn check_bunch(&self) -> Res<Vec<CheckReport>> {
        let lambdas = self.lambdas()?;
        if self.opts.pencil.is_some() || !self.bundle.pencils.is_empty() {
            let (_, refs) = pick(&self.bundle.pencils, &self.opts.pencil, "pencil", "pencil")?;
            let p = document::pencil(&self.bundle, refs)?;
            let w = self.window(p.base());
            let mut out = vec![
                check_jacobi(p.base(), w)?.renamed("jacobi (base)"),
                check_jacobi(p.direction(), w)?.renamed("jacobi (direction)"),
                check_compatible(p.base(), p.direction(), w)?,
            ];
            if p.operator().is_some() {
                out.push(check_gamma_homomorphism(&p, &lambdas, w)?);
            }
            return Ok(out);
        }
        let ((_, br), (_, r)) = (self.algebra()?, self.operator()?);
        let w = self.window(br);
        let p = make_gamma_bunch(&MybAlgebra::new(br.clone(), r.clone(), w)?)?;
        Ok(vec![
            check_jacobi(p.direction(), w)?.renamed("jacobi (tangent)"),
            check_compatible(p.base(), p.direction(), w)?,
            check_gamma_homomorphism(&p, &lambdas, w)?,
        ])
    }

    fn make(&self, what: MakeKind) -> Res<String> {
        let mut doc = self.doc.clone();
        match what {
            MakeKind::Tangent | MakeKind::Primed => {
                let ((a, br), (o, r)) = (self.algebra()?, self.operator()?);
                let (name, derived) = if what == MakeKind::Tangent {
                    (format!("{a}_tangent_{o}"), tangent_bracket(br, r)?)
                } else {
                    (format!("{a}_primed_{o}"), primed_bracket(br, r)?)
                };
                doc.algebras.insert(name, document::algebra_doc(&derived)?);
            }
            MakeKind::Qbracket => {
                let (a, assoc) = pick(
                    &self.bundle.assoc_algebras,
                    &self.opts.assoc,
                    "associative algebra",
                    "assoc",
                )?;
                let (e, q) = pick(
                    &self.bundle.elements,
                    &self.opts.element,
                    "element",
                    "element",
                )?;
                doc.algebras.insert(
                    format!("{a}_qbracket_{e}"),
                    document::algebra_doc(&q_bracket(assoc, q)?)?,
                );
            }
            MakeKind::Poly => {
                let (o, _) = self.operator()?;
                let coeffs = self
                    .opts
                    .coeffs
                    .as_ref()
                    .ok_or_else(|| Failure::Usage("make poly needs --coeffs".into()))?;
                let coeffs = rationals(coeffs, "coeffs")?;
                let op = document::OperatorDoc {
                    kind: document::OperatorKind::Polynomial,
                    rows: None,
                    offset: None,
                    scale: None,
                    entries: None,
                    grade: None,
                    coeffs: Some(coeffs.into_iter().map(document::JsonRational).collect()),
                    of: Some(o.to_string()),
                };
                doc.operators.insert(format!("{o}_poly"), op);
            }
        }
        // The extended document must itself be valid input.
        resolve(&doc)?;
        Ok(to_json(&doc))
    }
}

fn catalog_list(json: bool) -> String {
    if json {
        let rows: Vec<_> = ENTRIES
            .iter()
            .map(|e| {
                serde_json::json!({
                    "name": e.name,
                    "params": e.params,
                    "produces": e.produces,
                    "description": e.description,
                })
            })
            .collect();
        let mut s = serde_json::to_string_pretty(&rows).expect("catalog serializes");
        s.push('\n');
        return s;
    }
    ENTRIES
        .iter()
        .map(|e| format!("{:<10} {:<10} {}\n", e.name, e.params, e.description))
        .collect()
}

fn read_input(opts: &Options) -> Res<(InputDocument, Bundle)> {
    let Some(path) = &opts.input else {
        return Ok((InputDocument::default(), Bundle::default()));
    };
    let text = if path == "-" {
        std::io::read_to_string(std::io::stdin())
    } else {
        std::fs::read_to_string(path)
    }
    .map_err(|e| Failure::Usage(format!("cannot read {path}: {e}")))?;
    let doc = parse_input(&text).map_err(|e| Failure::Usage(format!("{path}: {e}")))?;
    let bundle = resolve(&doc).map_err(|e| Failure::Usage(format!("{path}: {e}")))?;
    Ok((doc, bundle))
}

fn dispatch(cli: Cli) -> Res<Output> {
    let (doc, bundle) = read_input(&cli.opts)?;
    let needs_input = matches!(cli.command, Command::Check { .. } | Command::Make { .. });
    if needs_input && cli.opts.input.is_none() {
        return Err(Failure::Usage("this command needs --input <file>".into()));
    }
    let ctx = Context {
        opts: cli.opts,
        doc,
        bundle,
    };
    Ok(match cli.command {
        Command::Check { identity } => Output::Checks(ctx.check(identity)?),
        Command::Make { what } => Output::Text(ctx.make(what)?),
        Command::Catalog {
            action: CatalogAction::List,
        } => Output::Text(catalog_list(ctx.opts.json)),
        Command::Catalog {
            action: CatalogAction::Export { name },
        } => Output::Text(to_json(&export_document(&build(&name)?)?)),
        Command::Claims => {
            let mut config = ClaimsConfig::default();
            if let Some(w) = ctx.opts.window {
                config.witt_window = w;
            }
            if ctx.opts.lambdas.is_some() {
                config.lambdas = ctx.lambdas()?;
            }
            Output::Claims(claims_matrix(&config)?)
        }
    })
}

/// Runs one invocation; `args` excludes the program name.
pub fn execute<I, S>(args: I) -> Outcome
where
    I: IntoIterator<Item = S>,
    S: Into<String>,
{
    let args: Vec<String> = args.into_iter().map(Into::into).collect();
    let started = Instant::now();
    let cli = match Cli::try_parse_from(
        std::iter::once("bunchcheck".to_string()).chain(args.iter().cloned()),
    ) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            return if code == 0 {
                Outcome {
                    code,
                    stdout: text,
                    stderr: String::new(),
                }
            } else {
                Outcome {
                    code,
                    stdout: String::new(),
                    stderr: text,
                }
            };
        }
    };
    let (json, all, out) = (
        cli.opts.json,
        cli.opts.all_counterexamples,
        cli.opts.out.clone(),
    );
    let elapsed = || started.elapsed().as_millis() as u64;
    let (code, text) = match dispatch(cli) {
        Ok(Output::Text(t)) => (0, t),
        Ok(Output::Checks(checks)) => {
            let code = if checks.iter().all(|c| c.holds) { 0 } else { 1 };
            let text = if json {
                ReportDocument::new(args.clone(), &checks, None, all, elapsed()).to_json()
            } else {
                report::render_checks(&checks, all)
            };
            (code, text)
        }
        Ok(Output::Claims(m)) => {
            let code = if m.contradictions().next().is_some() {
                1
            } else {
                0
            };
            let text = if json {
                ReportDocument::new(args.clone(), &[], Some(&m), all, elapsed()).to_json()
            } else {
                report::render_claims(&m)
            };
            (code, text)
        }
        Err(Failure::Violated(r)) => {
            let checks = [r];
            let text = if json {
                ReportDocument::new(args.clone(), &checks, None, all, elapsed()).to_json()
            } else {
                report::render_checks(&checks, all)
            };
            (1, text)
        }
        Err(Failure::Usage(msg)) => {
            return Outcome {
                code: 2,
                stdout: String::new(),
                stderr: format!("error: {msg}\n"),
            }
        }
    };
    match out {
        Some(path) => match std::fs::write(&path, &text) {
            Ok(()) => Outcome {
                code,
                stdout: String::new(),
                stderr: String::new(),
            },
            Err(e) => Outcome {
                code: 2,
                stdout: String::new(),
                stderr: format!("error: cannot write {path}: {e}\n"),
            },
        },
        None => Outcome {
            code,
            stdout: text,
            stderr: String::new(),
        },
    }
}

/// Entry point for the binary.
pub fn main() -> i32 {
    let out = execute(std::env::args().skip(1));
    print!("{}", out.stdout);
    eprint!("{}", out.stderr);
    out.code
}
