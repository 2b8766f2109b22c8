use std::path::{Path, PathBuf};

use clap::error::ErrorKind;
use clap::{ArgGroup, Parser, Subcommand, ValueEnum};
use framekit_core::analysis::{self, Pick, SampledForm};
use framekit_core::constructors::{self, left_regular, Representation};
use framekit_core::frame::{self, FramePair, FrameReport};
use framekit_core::ovf::{self, OvfPair};
use framekit_core::pframes::{self, DEFAULT_SAMPLES};
use framekit_core::{Error, Interval, Tolerance};
use serde::Serialize;

use crate::format::{self, field_name, FormatError, FrameFile, GroupFile, OvfFile, PFrameFile, VectorFile};
use crate::report::{fmt_f64, Report};

#[derive(Parser, Debug)]
#[command(name = "framekit", version, about = "Verify, construct and analyze finite frame pairs")]
struct Cli {
    /// Seed for every randomized check
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Sample count for randomized checks
    #[arg(long, global = true, default_value_t = DEFAULT_SAMPLES)]
    samples: usize,
    #[arg(long = "abs-tol", global = true, default_value_t = 1e-9)]
    abs_tol: f64,
    #[arg(long = "rel-tol", global = true, default_value_t = 1e-9)]
    rel_tol: f64,
    /// Write the produced file here instead of inlining it in the report
    #[arg(short = 'o', long = "output", global = true)]
    output: Option<PathBuf>,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand, Debug)]
enum Cmd {
    /// Frame bounds, tightness and Parseval check of a frame pair
    Verify { file: PathBuf },
    /// Canonical dual of a frame pair
    Dual { file: PathBuf },
    /// Riesz and orthonormal frame classification
    Classify { file: PathBuf },
    #[command(subcommand)]
    Construct(Construct),
    #[command(subcommand)]
    Analyze(Analyze),
    #[command(subcommand)]
    Pframe(Pframe),
    #[command(subcommand)]
    Ovf(Ovf),
}

#[derive(Subcommand, Debug)]
enum Construct {
    /// k·l vectors on the plane built from k- and l-th roots of unity
    Circular {
        #[arg(long)]
        k: usize,
        #[arg(long)]
        l: usize,
    },
    /// Orbit frame of a group representation (left regular unless the table carries `rep`)
    Group {
        #[arg(long)]
        table: PathBuf,
        #[arg(long)]
        x: String,
        #[arg(long)]
        tau: String,
    },
}

#[derive(Subcommand, Debug)]
enum Analyze {
    /// Run the frame reconstruction iteration on a vector
    Reconstruct {
        file: PathBuf,
        #[arg(long, default_value_t = 10)]
        steps: usize,
        #[arg(long)]
        h: String,
    },
    /// Extend to a tight pair
    #[command(group(ArgGroup::new("how").required(true).args(["lambda", "minimal"])))]
    Extend {
        file: PathBuf,
        #[arg(long)]
        lambda: Option<f64>,
        #[arg(long)]
        minimal: bool,
    },
    /// Frame test through mixed spanning selections
    Span { file: PathBuf },
    /// Trace, dimension and variation identities
    Formulas { file: PathBuf },
    /// Certify frame bounds of a perturbed family
    Perturb {
        file: PathBuf,
        #[arg(long, value_enum)]
        kind: PerturbArg,
        #[arg(long)]
        y: PathBuf,
        #[arg(long, default_value_t = 0.0)]
        alpha: f64,
        #[arg(long, default_value_t = 0.0)]
        beta: f64,
        #[arg(long, default_value_t = 0.0)]
        gamma: f64,
    },
    /// Move a pair between the real and complex fields
    #[command(group(ArgGroup::new("target").required(true).args(["to_complex", "to_real"])))]
    Convert {
        file: PathBuf,
        #[arg(long)]
        to_complex: bool,
        #[arg(long)]
        to_real: bool,
    },
}

#[derive(ValueEnum, Clone, Copy, Debug)]
enum PerturbArg {
    Quadratic,
    Normsum,
    Linear,
    Bessel,
}

#[derive(Subcommand, Debug)]
enum Pframe {
    /// Resolvent condition and frame bound enclosures
    Verify { file: PathBuf },
    /// Canonical dual of a p-frame pair
    Dual { file: PathBuf },
    /// Stability of an orthonormal base under perturbation
    PaleyWiener {
        #[arg(long)]
        p: f64,
        #[arg(long)]
        base: PathBuf,
        #[arg(long)]
        perturbed: PathBuf,
    },
    /// 4-inequality and 4-parallelogram law for two vectors
    Fourlaws {
        #[arg(long)]
        x: String,
        #[arg(long)]
        y: String,
    },
}

#[derive(Subcommand, Debug)]
enum Ovf {
    /// Frame bounds and Riesz/orthonormal flags of an operator-valued pair
    Verify { file: PathBuf },
    /// Canonical dual of an operator-valued pair
    Dual { file: PathBuf },
    /// Factor against an orthonormal block basis
    Factorize {
        file: PathBuf,
        /// Reference basis; defaults to coordinate blocks
        #[arg(long)]
        onb: Option<PathBuf>,
    },
    /// Embed into a larger space where the pair becomes a basis pair
    Dilate { file: PathBuf },
    /// Lift a frame pair file to an operator-valued pair
    Bridge { file: PathBuf },
}

enum Failure {
    Usage(String),
    Input(FormatError),
    Domain(Error),
}

impl From<FormatError> for Failure {
    fn from(e: FormatError) -> Failure {
        Failure::Input(e)
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Failure {
        Failure::Domain(e)
    }
}

type Outcome = Result<Report, Failure>;

struct Ctx {
    tol: Tolerance,
    seed: u64,
    samples: usize,
    output: Option<PathBuf>,
}

impl Ctx {
    fn frame(&self, path: &Path) -> Result<FramePair, Failure> {
        Ok(format::read_json::<FrameFile>(path)?.to_pair(self.tol)?)
    }

    fn ovf(&self, path: &Path) -> Result<OvfPair, Failure> {
        Ok(format::read_json::<OvfFile>(path)?.to_pair(self.tol)?)
    }

    fn pframe(&self, path: &Path) -> Result<pframes::PFramePair, Failure> {
        Ok(format::read_json::<PFrameFile>(path)?.to_pair(self.tol)?)
    }

    fn vectors(&self, path: &Path) -> Result<framekit_core::Mat, Failure> {
        Ok(format::read_json::<VectorFile>(path)?.to_mat()?)
    }

    /// Written to `-o` when given, otherwise inlined as one JSON line.
    fn emit<T: Serialize>(&self, r: &mut Report, doc: &T) -> Result<(), Failure> {
        match &self.output {
            Some(path) => {
                format::write_json(path, doc)?;
                r.text("output", path.display().to_string());
            }
            None => {
                r.text("document", format::to_json(doc));
            }
        }
        Ok(())
    }
}

/// Parses `argv` (program name first), runs the command and returns the exit
/// code with the text to print: 0 success, 2 when the input is well formed
/// but violates a mathematical precondition, 1 for usage, IO and parse errors.
pub fn run<I, S>(argv: I) -> (i32, String)
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
                ErrorKind::DisplayHelpOnMissingArgumentOrSubcommand => 1,
                _ => 1,
            };
            return (code, e.to_string());
        }
    };
    let tol = match Tolerance::new(cli.abs_tol, cli.rel_tol) {
        Ok(t) => t,
        Err(_) => return (1, "error: BadTolerance\nmessage: tolerances must be finite and nonnegative\n".into()),
    };
    let ctx = Ctx { tol, seed: cli.seed, samples: cli.samples, output: cli.output };
    match dispatch(&ctx, cli.cmd) {
        Ok(r) => (0, r.render()),
        Err(Failure::Domain(e)) => (2, format!("error: {}\nmessage: {e}\n", e.name())),
        Err(Failure::Input(FormatError::Io { path, source })) => {
            (1, format!("error: IoError\nmessage: {path}: {source}\n"))
        }
        Err(Failure::Input(FormatError::Parse(msg))) => (1, format!("error: ParseError\nmessage: {msg}\n")),
        Err(Failure::Usage(msg)) => (1, format!("error: UsageError\nmessage: {msg}\n")),
    }
}

fn dispatch(ctx: &Ctx, cmd: Cmd) -> Outcome {
    match cmd {
        Cmd::Verify { file } => cmd_verify(ctx, &file),
        Cmd::Dual { file } => cmd_dual(ctx, &file),
        Cmd::Classify { file } => cmd_classify(ctx, &file),
        Cmd::Construct(c) => match c {
            Construct::Circular { k, l } => cmd_circular(ctx, k, l),
            Construct::Group { table, x, tau } => cmd_group(ctx, &table, &x, &tau),
        },
        Cmd::Analyze(a) => match a {
            Analyze::Reconstruct { file, steps, h } => cmd_reconstruct(ctx, &file, steps, &h),
            Analyze::Extend { file, lambda, minimal } => cmd_extend(ctx, &file, lambda, minimal),
            Analyze::Span { file } => cmd_span(ctx, &file),
            Analyze::Formulas { file } => cmd_formulas(ctx, &file),
            Analyze::Perturb { file, kind, y, alpha, beta, gamma } => {
                cmd_perturb(ctx, &file, kind, &y, [alpha, beta, gamma])
            }
            Analyze::Convert { file, to_complex, to_real } => cmd_convert(ctx, &file, to_complex, to_real),
        },
        Cmd::Pframe(p) => match p {
            Pframe::Verify { file } => cmd_pverify(ctx, &file),
            Pframe::Dual { file } => cmd_pdual(ctx, &file),
            Pframe::PaleyWiener { p, base, perturbed } => cmd_paley_wiener(ctx, p, &base, &perturbed),
            Pframe::Fourlaws { x, y } => cmd_fourlaws(ctx, &x, &y),
        },
        Cmd::Ovf(o) => match o {
            Ovf::Verify { file } => cmd_ovf_verify(ctx, &file),
            Ovf::Dual { file } => cmd_ovf_dual(ctx, &file),
            Ovf::Factorize { file, onb } => cmd_factorize(ctx, &file, onb.as_deref()),
            Ovf::Dilate { file } => cmd_ovf_dilate(ctx, &file),
            Ovf::Bridge { file } => cmd_bridge(ctx, &file),
        },
    }
}

fn shape(r: &mut Report, fp: &FramePair) {
    r.text("field", field_name(fp.field())).int("dim", fp.dim()).int("count", fp.count());
}

fn frame_lines(r: &mut Report, rep: &FrameReport) {
    r.flag("self_adjoint", rep.self_adjoint)
        .flag("psd", rep.psd)
        .flag("invertible", rep.invertible)
        .flag("is_bessel", rep.is_bessel)
        .flag("is_frame", rep.is_frame)
        .num("lower_a", rep.lower_a)
        .num("upper_b", rep.upper_b)
        .flag("tight", rep.tight)
        .flag("parseval", rep.parseval);
    if rep.tight {
        r.num("constant", rep.upper_b);
    }
}

fn interval_lines(r: &mut Report, key: &str, iv: Option<Interval>) {
    match iv {
        Some(iv) => {
            r.num(&format!("{key}_lo"), iv.lower).num(&format!("{key}_hi"), iv.upper);
        }
        None => {
            r.text(&format!("{key}_lo"), "n/a").text(&format!("{key}_hi"), "n/a");
        }
    }
}

fn cmd_verify(ctx: &Ctx, file: &Path) -> Outcome {
    let fp = ctx.frame(file)?;
    let mut r = Report::new(
        "verify",
        "a pair is a frame when its frame operator is self-adjoint, positive and invertible; the optimal bounds are its extreme eigenvalues",
    );
    shape(&mut r, &fp);
    frame_lines(&mut r, &frame::verify(&fp));
    Ok(r)
}

fn cmd_dual(ctx: &Ctx, file: &Path) -> Outcome {
    let fp = ctx.frame(file)?;
    let dual = frame::canonical_dual(&fp)?;
    let mut r = Report::new(
        "dual",
        "the canonical dual applies the inverse frame operator to the analysis vectors and reconstructs every vector",
    );
    shape(&mut r, &dual);
    r.flag("is_dual", frame::is_dual(&fp, &dual)?);
    frame_lines(&mut r, &frame::verify(&dual));
    ctx.emit(&mut r, &FrameFile::from_pair(&dual))?;
    Ok(r)
}

fn cmd_classify(ctx: &Ctx, file: &Path) -> Outcome {
    let fp = ctx.frame(file)?;
    let c = frame::classify(&fp)?;
    let rep = frame::verify(&fp);
    let mut r = Report::new(
        "classify",
        "a frame pair is a Riesz pair when the cross Gram matrix is invertible and orthonormal when it is the identity",
    );
    shape(&mut r, &fp);
    r.flag("is_frame", rep.is_frame)
        .flag("riesz_frame", c.riesz_frame)
        .flag("orthonormal_frame", c.orthonormal_frame);
    Ok(r)
}

fn cmd_circular(ctx: &Ctx, k: usize, l: usize) -> Outcome {
    let c = constructors::circular_kl(k, l, ctx.tol)?;
    let mut r = Report::new(
        "construct circular",
        "vectors at angles spaced by roots of unity form a tight frame for the plane",
    );
    shape(&mut r, &c.fp);
    r.int("k", k)
        .int("l", l)
        .flag("tight", c.tight)
        .num("constant", c.constant)
        .nums("residual", &c.residual);
    ctx.emit(&mut r, &FrameFile::from_pair(&c.fp))?;
    Ok(r)
}

fn cmd_group(ctx: &Ctx, table: &Path, x: &str, tau: &str) -> Outcome {
    let gf: GroupFile = format::read_json(table)?;
    let group = gf.table()?;
    let rep = match gf.rep_mats()? {
        Some(mats) => Representation::new(group, mats, ctx.tol)?,
        None => left_regular(&group),
    };
    let x = format::parse_vector(x)?;
    let tau = format::parse_vector(tau)?;
    let gfr = constructors::group_frame(&rep, &x, &tau)?;
    let fp = gfr.fp.with_tol(ctx.tol);
    let invariant = constructors::check_group_invariance(&fp, rep.group())?;
    let mut r = Report::new(
        "construct group",
        "the orbit of a generator pair under a unitary group representation is a group-invariant pair whose bounds enclose (order/dim)·<x, tau>",
    );
    shape(&mut r, &fp);
    r.int("order", rep.group().order());
    frame_lines(&mut r, &gfr.report);
    r.text("generator_bound", format!("{:?}", gfr.bound))
        .flag("generator_bound_ok", gfr.generator_bound_ok)
        .opt_num("bound_value", gfr.bound_value)
        .flag("invariant", invariant);
    ctx.emit(&mut r, &FrameFile::from_pair(&fp))?;
    Ok(r)
}

fn cmd_reconstruct(ctx: &Ctx, file: &Path, steps: usize, h: &str) -> Outcome {
    let fp = ctx.frame(file)?;
    let h = format::parse_vector(h)?;
    let trace = analysis::iterate_reconstruct(&fp, &h, steps)?;
    let rep = frame::verify(&fp);
    let mut r = Report::new(
        "analyze reconstruct",
        "the frame iteration with relaxation 2/(a+b) converges to the input geometrically with ratio (b-a)/(b+a)",
    );
    shape(&mut r, &fp);
    r.num("lower_a", rep.lower_a)
        .num("upper_b", rep.upper_b)
        .num("ratio", (rep.upper_b - rep.lower_a) / (rep.upper_b + rep.lower_a))
        .int("steps", steps)
        .nums("errors", &trace.errors)
        .nums("bounds", &trace.bound_curve)
        .flag("within_bound", trace.errors.iter().zip(&trace.bound_curve).all(|(e, b)| *e <= b + ctx.tol.bound(*b)));
    if let Some(last) = trace.iterates.last() {
        r.cvec("final_iterate", last);
    }
    Ok(r)
}

fn cmd_extend(ctx: &Ctx, file: &Path, lambda: Option<f64>, minimal: bool) -> Outcome {
    let fp = ctx.frame(file)?;
    let ext = match (lambda, minimal) {
        (_, true) => analysis::extend_tight_minimal(&fp)?,
        (Some(l), false) => analysis::extend_tight_append(&fp, l)?,
        (None, false) => return Err(Failure::Usage("pass --lambda or --minimal".into())),
    };
    let rep = frame::verify(&ext);
    let mut r = Report::new(
        "analyze extend",
        "appending the square-root vectors of lambda·I minus the frame operator yields a tight pair with constant lambda",
    );
    shape(&mut r, &ext);
    r.int("added", ext.count() - fp.count());
    frame_lines(&mut r, &rep);
    ctx.emit(&mut r, &FrameFile::from_pair(&ext))?;
    Ok(r)
}

fn cmd_span(ctx: &Ctx, file: &Path) -> Outcome {
    let fp = ctx.frame(file)?;
    let s = analysis::span_characterization(&fp)?;
    let mut r = Report::new(
        "analyze span",
        "when every tau_j x_j* is positive, the pair is a frame exactly when every mixed selection of x_j or tau_j spans the space",
    );
    shape(&mut r, &fp);
    r.flag("is_frame", s.is_frame);
    match &s.witness {
        Some(w) => {
            let picks: Vec<&str> = w.iter().map(|p| if *p == Pick::X { "x" } else { "tau" }).collect();
            r.text("witness", format!("[{}]", picks.join(", ")));
        }
        None => {
            r.text("witness", "n/a");
        }
    }
    r.flag("agrees_with_spectrum", s.is_frame == frame::verify(&fp).is_frame);
    Ok(r)
}

fn cmd_formulas(ctx: &Ctx, file: &Path) -> Outcome {
    let fp = ctx.frame(file)?;
    let f = analysis::formulas_report(&fp);
    let mut r = Report::new(
        "analyze formulas",
        "the trace of the frame operator equals the sum of <x_j, tau_j>, and Parseval pairs sum to the dimension",
    );
    shape(&mut r, &fp);
    r.cplx("trace_s", f.trace_s)
        .cplx("sum_inner", f.sum_inner)
        .flag("trace_ok", f.trace_ok)
        .cplx("trace_s2", f.trace_s2)
        .cplx("double_sum", f.double_sum)
        .flag("trace_s2_ok", f.trace_s2_ok)
        .opt_flag("variation_ok", f.variation_ok)
        .opt_flag("dim_formula_ok", f.dim_formula_ok)
        .opt_num("equal_diag_b", f.equal_diag_b)
        .opt_flag("equal_diag_ok", f.equal_diag_ok);
    Ok(r)
}

fn cmd_perturb(ctx: &Ctx, file: &Path, kind: PerturbArg, y: &Path, [alpha, beta, gamma]: [f64; 3]) -> Outcome {
    let fp = ctx.frame(file)?;
    let y = ctx.vectors(y)?;
    let (cert, theorem) = match kind {
        PerturbArg::Quadratic => (
            analysis::perturb_quadratic(&fp, &y)?,
            "a family close to a frame in summed squared distance stays a frame with bounds shifted by that distance",
        ),
        PerturbArg::Normsum => (
            analysis::perturb_normsum(&fp, &y)?,
            "a family whose summed squared deviations are below the lower bound remains a frame",
        ),
        PerturbArg::Linear => (
            analysis::perturb_sampled(&fp, &y, SampledForm::Linear, alpha, beta, gamma, ctx.samples, ctx.seed)?,
            "a linear combination bound on the deviations keeps the perturbed family a frame",
        ),
        PerturbArg::Bessel => (
            analysis::perturb_sampled(&fp, &y, SampledForm::Quadratic, alpha, beta, gamma, ctx.samples, ctx.seed)?,
            "a quadratic-form bound on the deviations keeps the perturbed family a frame",
        ),
    };
    let mut r = Report::new("analyze perturb", theorem);
    shape(&mut r, &fp);
    r.text("kind", cert.kind.name())
        .flag("hypothesis_ok", cert.hypothesis_ok)
        .num("predicted_lower", cert.predicted_lower)
        .num("predicted_upper", cert.predicted_upper)
        .flag("actual_is_frame", cert.actual_is_frame)
        .num("actual_lower", cert.actual_lower)
        .num("actual_upper", cert.actual_upper)
        .flag("window_holds", cert.window_holds);
    if matches!(kind, PerturbArg::Linear | PerturbArg::Bessel) {
        r.int("samples", ctx.samples).text("seed", ctx.seed.to_string());
    }
    Ok(r)
}

fn cmd_convert(ctx: &Ctx, file: &Path, to_complex: bool, to_real: bool) -> Outcome {
    let fp = ctx.frame(file)?;
    let out = match (to_complex, to_real) {
        (true, false) => analysis::real_to_complex(&fp)?,
        (false, true) => analysis::complex_to_real(&fp)?,
        _ => return Err(Failure::Usage("pass exactly one of --to-complex or --to-real".into())),
    };
    let before = frame::verify(&fp);
    let after = frame::verify(&out);
    let mut r = Report::new(
        "analyze convert",
        "moving a frame pair between the real and complex fields preserves the frame property and its optimal bounds",
    );
    shape(&mut r, &out);
    r.flag("was_frame", before.is_frame).num("was_lower_a", before.lower_a).num("was_upper_b", before.upper_b);
    frame_lines(&mut r, &after);
    ctx.emit(&mut r, &FrameFile::from_pair(&out))?;
    Ok(r)
}

fn cmd_pverify(ctx: &Ctx, file: &Path) -> Outcome {
    let pf = ctx.pframe(file)?;
    let rep = pframes::p_verify_with(&pf, ctx.samples, ctx.seed);
    let mut r = Report::new(
        "pframe verify",
        "a p-frame pair needs the operator sum f_j(.)tau_j to avoid the negative real axis; its bounds come from the p-th root of that operator",
    );
    r.num("p", pf.p()).text("field", field_name(pf.field())).int("dim", pf.dim()).int("count", pf.count());
    r.flag("resolvent_ok", rep.resolvent_ok).flag("tight", rep.tight).flag("parseval", rep.parseval);
    interval_lines(&mut r, "lower_a", rep.lower_a);
    interval_lines(&mut r, "upper_b", rep.upper_b);
    r.int("samples", ctx.samples).text("seed", ctx.seed.to_string());
    Ok(r)
}

fn cmd_pdual(ctx: &Ctx, file: &Path) -> Outcome {
    let pf = ctx.pframe(file)?;
    let d = pframes::p_canonical_dual(&pf)?;
    let mut r = Report::new(
        "pframe dual",
        "composing the functionals with the inverse operator gives a dual p-frame pair that reconstructs every vector",
    );
    r.num("p", d.dual.p()).int("dim", d.dual.dim()).int("count", d.dual.count()).flag("is_dual", d.is_dual);
    ctx.emit(&mut r, &PFrameFile::from_pair(&d.dual))?;
    Ok(r)
}

fn cmd_paley_wiener(ctx: &Ctx, p: f64, base: &Path, perturbed: &Path) -> Outcome {
    let base = ctx.vectors(base)?;
    let y = ctx.vectors(perturbed)?;
    let pw = pframes::paley_wiener_check(&base, &y, p, ctx.samples, ctx.seed, &ctx.tol)?;
    let mut r = Report::new(
        "pframe paley-wiener",
        "a family within lambda < 1 of an orthonormal basis in the p-norm sense is again a Riesz basis",
    );
    r.num("p", p)
        .int("dim", y.rows())
        .int("count", y.cols())
        .num("lambda_upper", pw.lambda_upper)
        .flag("concluded", pw.concluded)
        .opt_flag("riesz", pw.riesz)
        .int("samples", ctx.samples)
        .text("seed", ctx.seed.to_string());
    Ok(r)
}

fn cmd_fourlaws(ctx: &Ctx, x: &str, y: &str) -> Outcome {
    let x = format::parse_vector(x)?;
    let y = format::parse_vector(y)?;
    let f = pframes::four_laws_check(&x, &y, &ctx.tol)?;
    let mut r = Report::new(
        "pframe fourlaws",
        "in the 4-norm, the difference of fourth powers of sum and difference is controlled by the norms, and a parallelogram-type law holds",
    );
    r.int("dim", x.len())
        .num("ineq4_lhs", f.ineq4_lhs)
        .num("ineq4_rhs", f.ineq4_rhs)
        .flag("ineq4_ok", f.ineq4_ok)
        .num("pl4_lhs", f.pl4_lhs)
        .num("pl4_rhs", f.pl4_rhs)
        .flag("pl4_ok", f.pl4_ok);
    match pframes::project_line_l4(&x, &y, &ctx.tol) {
        Ok(lp) => {
            r.num("projection_t", lp.t_star).num("projection_dist", lp.dist);
        }
        Err(_) => {
            r.text("projection_t", "n/a").text("projection_dist", "n/a");
        }
    }
    Ok(r)
}

fn ovf_shape(r: &mut Report, op: &OvfPair) {
    r.text("field", field_name(op.field())).int("m", op.domain_dim()).int("n", op.count());
    match op.uniform_codim() {
        Some(d) => r.int("d", d),
        None => r.text("d", format!("{:?}", op.codims())),
    };
}

fn ovf_lines(r: &mut Report, op: &OvfPair) {
    let rep = ovf::verify_ovf(op);
    frame_lines(r, &rep.frame);
    r.flag("riesz_ovf", rep.riesz_ovf).flag("orthonormal_ovf", rep.orthonormal_ovf);
}

fn cmd_ovf_verify(ctx: &Ctx, file: &Path) -> Outcome {
    let op = ctx.ovf(file)?;
    let mut r = Report::new(
        "ovf verify",
        "an operator-valued pair is a frame when the sum of psi_j* A_j is self-adjoint, positive and invertible",
    );
    ovf_shape(&mut r, &op);
    ovf_lines(&mut r, &op);
    Ok(r)
}

fn cmd_ovf_dual(ctx: &Ctx, file: &Path) -> Outcome {
    let op = ctx.ovf(file)?;
    let dual = ovf::canonical_dual_ovf(&op)?;
    let rel = ovf::duality_relation(&op, &dual)?;
    let mut r = Report::new(
        "ovf dual",
        "composing each member with the inverse frame operator gives the canonical dual operator-valued pair",
    );
    ovf_shape(&mut r, &dual);
    r.flag("is_dual", rel.dual);
    ovf_lines(&mut r, &dual);
    ctx.emit(&mut r, &OvfFile::from_pair(&dual))?;
    Ok(r)
}

fn cmd_factorize(ctx: &Ctx, file: &Path, onb: Option<&Path>) -> Outcome {
    let op = ctx.ovf(file)?;
    let basis = match onb {
        Some(path) => ctx.ovf(path)?,
        None => {
            let d = op.uniform_codim().ok_or(Error::ShapeMismatch("default basis needs a uniform codimension"))?;
            if op.domain_dim() != op.count() * d {
                return Err(Error::ShapeMismatch("factorization needs m = n·d").into());
            }
            ovf::onb_blocks(op.count(), d)?
        }
    };
    let f = ovf::factorize_against_onb(&op, &basis)?;
    let mut r = Report::new(
        "ovf factorize",
        "every operator-valued pair factors through an orthonormal block basis, and the factor operators decide its class",
    );
    ovf_shape(&mut r, &op);
    r.text("class", f.class.name())
        .flag("bessel", f.flags.bessel)
        .flag("frame", f.flags.frame)
        .flag("riesz_ovf", f.flags.riesz_ovf)
        .flag("riesz_basis", f.flags.riesz_basis)
        .flag("orthonormal_ovf", f.flags.orthonormal_ovf)
        .flag("onb_pair", f.flags.onb_pair);
    match &f.weights {
        Some(w) => r.nums("weights", w),
        None => r.text("weights", "n/a"),
    };
    Ok(r)
}

fn cmd_ovf_dilate(ctx: &Ctx, file: &Path) -> Outcome {
    let op = ctx.ovf(file)?;
    let big = ovf::dilate_ovf(&op)?;
    let mut r = Report::new(
        "ovf dilate",
        "a Parseval operator-valued pair is the compression of an orthonormal block basis of a larger space",
    );
    ovf_shape(&mut r, &big);
    ovf_lines(&mut r, &big);
    ctx.emit(&mut r, &OvfFile::from_pair(&big))?;
    Ok(r)
}

fn cmd_bridge(ctx: &Ctx, file: &Path) -> Outcome {
    let fp = ctx.frame(file)?;
    let op = ovf::ovf_bridge(&fp);
    let mut r = Report::new(
        "ovf bridge",
        "a frame pair is the operator-valued pair of one-dimensional functionals <., x_j> and <., tau_j>, with the same frame operator",
    );
    ovf_shape(&mut r, &op);
    ovf_lines(&mut r, &op);
    let same = frame::verify(&fp);
    r.text("frame_bounds", format!("[{}, {}]", fmt_f64(same.lower_a), fmt_f64(same.upper_b)));
    ctx.emit(&mut r, &OvfFile::from_pair(&op))?;
    Ok(r)
}
