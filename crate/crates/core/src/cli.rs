//! Command-line surface. Every command prints JSON documents (one per line) to
//! standard output or to `--output`; diagnostics go to standard error.
//!
//! Exit codes: 0 success, 1 a verification check failed, 2 invalid input.

use std::io::Write;
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};

use crate::algebra::lattice::{fmt_q, parse_q, vadd, vscale, zero_vec, Q, QVec};
use crate::error::{Error, Result};
use crate::hcseries::{self, SweepOptions};
use crate::heckeops::{self, orbit_sum, xi_product, Check, Context, Label};
use crate::macops::{self, PiSel, Route, XiPoly};
use crate::rankone;
use crate::rootdata::{CartanType, Case, RootDatum};
use crate::serial::{self, Document, ErrorDoc, LayerDoc, OperatorDoc, PolyDoc, SeriesDoc, VerifyDoc, SCHEMA};

#[derive(Parser, Debug, Clone)]
#[command(name = "macdonald-hc", version, about = "Exact Macdonald operators, polynomials and Harish-Chandra series")]
pub struct Cli {
    /// Affine root system case: a, b or c.
    #[arg(long, global = true, default_value = "a")]
    pub case: String,
    /// Cartan type of the finite root system (A, B, C, D, G).
    #[arg(long = "type", global = true, default_value = "A")]
    pub cartan_type: String,
    #[arg(long, global = true, default_value_t = 1)]
    pub rank: usize,
    /// Specialized labels `k`: comma-separated rationals, one per orbit, or one
    /// value for every orbit. Without it the labels are formal.
    #[arg(long, global = true, allow_hyphen_values = true)]
    pub k: Option<String>,
    /// Extra denominator for rational `q`-exponents.
    #[arg(long = "q-denominator", global = true, default_value_t = 1)]
    pub q_denominator: i64,
    /// Coweight selector: `quasi` or a minuscule index `j`.
    #[arg(long, global = true)]
    pub pi: Option<String>,
    /// Worker threads for the series recurrence.
    #[arg(long, global = true, default_value_t = 1)]
    pub threads: usize,
    /// Write the documents to this file instead of standard output.
    #[arg(long, short, global = true)]
    pub output: Option<PathBuf>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug, Clone)]
pub enum Command {
    /// Describe the root datum.
    Datum,
    /// Macdonald operator `D_{π'}`.
    Mdop {
        #[arg(long, value_enum, default_value = "both")]
        route: RouteArg,
    },
    /// Monic Macdonald polynomial for a dominant weight (coordinates in the basis of `L`).
    Mdpoly {
        #[arg(long, allow_hyphen_values = true)]
        weight: String,
    },
    /// Harish-Chandra series through a height, formal or at a spectral point.
    Hcseries {
        #[arg(long)]
        height: usize,
        /// Spectral point as rational coordinates in the basis of `L`.
        #[arg(long, allow_hyphen_values = true)]
        specialize: Option<String>,
        /// Print one document per height layer as soon as it is computed.
        #[arg(long)]
        stream: bool,
    },
    /// Run a verification suite.
    Verify {
        #[arg(value_enum)]
        suite: Suite,
        /// Truncation or weight height used by the suite.
        #[arg(long)]
        height: Option<usize>,
        /// Monomial box radius for the Hecke presentation.
        #[arg(long)]
        radius: Option<i64>,
    },
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
pub enum RouteArg {
    Hecke,
    Explicit,
    Both,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
pub enum Suite {
    Hecke,
    Commute,
    Gamma,
    Rankone,
    Triangular,
    Hcseries,
    Baker,
}

impl Suite {
    fn tag(&self) -> &'static str {
        match self {
            Suite::Hecke => "hecke",
            Suite::Commute => "commute",
            Suite::Gamma => "gamma",
            Suite::Rankone => "rankone",
            Suite::Triangular => "triangular",
            Suite::Hcseries => "hcseries",
            Suite::Baker => "baker",
        }
    }
}

/// Validated job parameters.
#[derive(Clone, Debug)]
pub struct JobConfig {
    pub case: Case,
    pub cartan_type: CartanType,
    pub rank: usize,
    pub label: Label,
    pub q_denominator: i64,
    pub pi: Option<PiSel>,
    pub threads: usize,
}

impl JobConfig {
    pub fn from_cli(cli: &Cli) -> Result<JobConfig> {
        let case = Case::parse(&cli.case)?;
        let cartan_type = CartanType::parse(&cli.cartan_type)?;
        let label = match &cli.k {
            None => Label::Generic,
            Some(s) => Label::Specialized(parse_rationals(s)?),
        };
        if cli.q_denominator < 1 {
            return Err(Error::Parse(format!("q-denominator {} must be positive", cli.q_denominator)));
        }
        let pi = cli.pi.as_deref().map(PiSel::parse).transpose()?;
        Ok(JobConfig { case, cartan_type, rank: cli.rank, label, q_denominator: cli.q_denominator, pi, threads: cli.threads.max(1) })
    }

    pub fn datum(&self) -> Result<RootDatum> {
        RootDatum::build(self.case, self.cartan_type, self.rank)
    }

    /// Context with a single label value broadcast to every orbit.
    pub fn context(&self, extra: i64) -> Result<Context> {
        let rd = self.datum()?;
        let label = match &self.label {
            Label::Specialized(k) if k.len() == 1 => Label::Specialized(vec![k[0]; heckeops::label_arity(&rd)]),
            l => l.clone(),
        };
        Context::with_denominator(rd, label, self.q_denominator * extra)
    }

    /// Selected coweights: the `--pi` choice, or every supported one.
    pub fn pis(&self, rd: &RootDatum) -> Result<Vec<(PiSel, QVec)>> {
        let sels = match self.pi {
            Some(s) => vec![s],
            None => macops::supported_pis(rd),
        };
        sels.into_iter().map(|s| Ok((s, macops::pi_prime(rd, s)?))).collect()
    }

    pub fn first_pi(&self, rd: &RootDatum) -> Result<(PiSel, QVec)> {
        Ok(self.pis(rd)?.remove(0))
    }
}

fn parse_rationals(s: &str) -> Result<Vec<Q>> {
    s.split(',').map(|t| parse_q(t.trim())).collect()
}

fn parse_integers(s: &str) -> Result<Vec<i64>> {
    s.split(',')
        .map(|t| t.trim().parse::<i64>().map_err(|_| Error::Parse(format!("integer coordinate {t}"))))
        .collect()
}

fn check_len(what: &str, v: usize, n: usize) -> Result<()> {
    if v != n {
        return Err(Error::Parse(format!("{what} has {v} coordinates, rank is {n}")));
    }
    Ok(())
}

/// Root coordinates of a point given by rational coordinates in the basis of `L`.
fn l_point(rd: &RootDatum, c: &[Q]) -> QVec {
    c.iter().zip(rd.lat_l.basis()).fold(zero_vec(rd.n), |acc, (x, b)| vadd(&acc, &vscale(b, *x)))
}

/// Denominator making `q^{⟨μ',λ⟩}` representable for `μ'` in `½L'`.
fn spectral_denominator(rd: &RootDatum, lambda: &[Q]) -> i64 {
    let d = rd.lat_lp.basis().iter().map(|b| rd.ip(b, lambda)).collect::<Vec<_>>();
    2 * hcseries::denominator(&d)
}

fn xi_equal(a: &XiPoly, b: &XiPoly) -> bool {
    let nz = |p: &XiPoly| p.iter().filter(|(_, f)| !f.is_zero()).map(|(k, f)| (k.clone(), f.clone())).collect::<Vec<_>>();
    nz(a) == nz(b)
}

fn qstrings(v: &[Q]) -> Vec<String> {
    v.iter().map(fmt_q).collect()
}

/// Runs one parsed command, handing each document to `emit`. Returns whether
/// all verification checks passed.
pub fn execute(cli: &Cli, emit: &mut dyn FnMut(Document) -> Result<()>) -> Result<bool> {
    let cfg = JobConfig::from_cli(cli)?;
    match &cli.command {
        Command::Datum => {
            let ctx = cfg.context(1)?;
            emit(Document::Datum(serial::datum_doc(&ctx)))?;
            Ok(true)
        }
        Command::Mdop { route } => {
            let ctx = cfg.context(1)?;
            let (sel, pi) = cfg.first_pi(&ctx.rd)?;
            let (routes, d, agree) = match route {
                RouteArg::Hecke => (vec!["hecke"], macops::macdonald_operator(&ctx, &pi, Route::Hecke)?, None),
                RouteArg::Explicit => (vec!["explicit"], macops::macdonald_operator(&ctx, &pi, Route::Explicit)?, None),
                RouteArg::Both => {
                    let h = macops::macdonald_operator(&ctx, &pi, Route::Hecke)?;
                    let e = macops::macdonald_operator(&ctx, &pi, Route::Explicit)?;
                    let agree = h.equals(&e);
                    (vec!["hecke", "explicit"], e, Some(agree))
                }
            };
            emit(Document::Mdop(OperatorDoc {
                schema: SCHEMA.into(),
                datum: ctx.rd.describe(),
                pi: sel.tag(),
                routes: routes.into_iter().map(String::from).collect(),
                routes_agree: agree,
                terms: serial::op_to_json(&ctx, &d),
            }))?;
            Ok(agree != Some(false))
        }
        Command::Mdpoly { weight } => {
            let ctx = cfg.context(1)?;
            let w = parse_integers(weight)?;
            check_len("weight", w.len(), ctx.rd.n)?;
            let lambda = ctx.rd.lat_l.point(&w);
            let (_, pi) = cfg.first_pi(&ctx.rd)?;
            let d = macops::macdonald_operator(&ctx, &pi, Route::Explicit)?;
            let p = orbit_sum(&ctx.rd, &pi);
            let poly = macops::macdonald_polynomial(&ctx, &d, &p, &lambda)?;
            let ev = macops::eigenvalue_twist(&ctx, &p, &lambda)?;
            emit(Document::Mdpoly(PolyDoc {
                schema: SCHEMA.into(),
                datum: ctx.rd.describe(),
                weight: w,
                eigenvalue: serial::scalar(&ctx, &ev),
                coeffs: serial::sym_to_json(&ctx, &poly)?,
            }))?;
            Ok(true)
        }
        Command::Hcseries { height, specialize, stream } => series(&cfg, *height, specialize.as_deref(), *stream, emit),
        Command::Verify { suite, height, radius } => {
            let (checks, reports) = run_suite(&cfg, *suite, *height, *radius)?;
            let pass = checks.iter().all(|c| c.pass);
            let ctx_name = cfg.datum()?.describe();
            emit(Document::Verify(VerifyDoc {
                schema: SCHEMA.into(),
                datum: ctx_name,
                suite: suite.tag().into(),
                pass,
                checks,
                reports,
            }))?;
            Ok(pass)
        }
    }
}

fn series(cfg: &JobConfig, h: usize, specialize: Option<&str>, stream: bool, emit: &mut dyn FnMut(Document) -> Result<()>) -> Result<bool> {
    let rd = cfg.datum()?;
    let name = rd.describe();
    let (sel, pi) = cfg.first_pi(&rd)?;
    let mut layer_doc = |ctx: &Context, height: usize, c: &crate::algebra::series::ConeCoeffs| -> Result<()> {
        if stream {
            emit(Document::Layer(serial::LayerLine {
                schema: SCHEMA.into(),
                datum: name.clone(),
                layer: LayerDoc { height, coeffs: serial::series_to_json(ctx, c) },
            }))?;
        }
        Ok(())
    };
    let (ctx, s, point) = match specialize {
        None => {
            let ctx = cfg.context(1)?;
            let d = macops::macdonald_operator(&ctx, &pi, Route::Explicit)?;
            let e = hcseries::expand_operator(&ctx, &d, h)?;
            let opts = SweepOptions { layer_order: None, threads: cfg.threads };
            let s = hcseries::hc_series_formal_streaming(&ctx, &e, &pi, h, &opts, |k, c| layer_doc(&ctx, k, c))?;
            (ctx, s, None)
        }
        Some(text) => {
            let c = parse_rationals(text)?;
            check_len("spectral point", c.len(), rd.n)?;
            let lambda = l_point(&rd, &c);
            let ctx = cfg.context(spectral_denominator(&rd, &lambda))?;
            let ops = hcseries::generator_operators(&ctx, h)?;
            let s = hcseries::hc_series_specialized(&ctx, &ops, &pi, &lambda, h)?;
            for (k, layer) in serial::series_layers(&ctx, &s.coeffs, h).into_iter().enumerate() {
                let c = serial::series_from_json(&ctx, &layer.coeffs)?;
                layer_doc(&ctx, k, &c)?;
            }
            (ctx, s, Some(qstrings(&lambda)))
        }
    };
    if !stream {
        emit(Document::Hcseries(SeriesDoc {
            schema: SCHEMA.into(),
            datum: name.clone(),
            pi: sel.tag(),
            height: h,
            spectral_point: point,
            layers: serial::series_layers(&ctx, &s.coeffs, h),
        }))?;
    }
    Ok(true)
}

/// Whether `β(p(Y))` for a non-special `p` fits the memory of a desk machine.
fn hecke_route_affordable(rd: &RootDatum) -> bool {
    !(rd.case == Case::C && rd.n >= 2)
}

fn default_series_height(n: usize) -> usize {
    match n {
        1 => 4,
        2 => 3,
        _ => 2,
    }
}

/// Checks and JSON reports of one verification suite.
pub fn run_suite(cfg: &JobConfig, suite: Suite, height: Option<usize>, radius: Option<i64>) -> Result<(Vec<Check>, serde_json::Value)> {
    let mut checks = vec![];
    let mut reports = serde_json::Value::Null;
    match suite {
        Suite::Hecke => {
            let ctx = cfg.context(1)?;
            let r = radius.unwrap_or(4);
            checks = heckeops::verify_presentation(&ctx, r)?;
            checks.push(heckeops::verify_polynomial_action(&ctx, r)?);
        }
        Suite::Commute => {
            let ctx = cfg.context(1)?;
            let pis = cfg.pis(&ctx.rd)?;
            let ops: Vec<_> = pis
                .iter()
                .map(|(s, p)| Ok((s.tag(), macops::macdonald_operator(&ctx, p, Route::Explicit)?)))
                .collect::<Result<_>>()?;
            for (i, (a, da)) in ops.iter().enumerate() {
                for (b, db) in &ops[i + 1..] {
                    let c = macops::commutator(&ctx, da, db)?;
                    checks.push(Check::new(format!("[D_{a}, D_{b}] = 0"), c.is_zero(), None));
                }
            }
            // `D_p` for non-special `p` goes through the Hecke route, which is
            // only affordable in rank one.
            if ctx.rd.n == 1 {
                let (tag, d) = &ops[0];
                let d2 = macops::build_dp(&ctx, &orbit_sum(&ctx.rd, &vscale(&pis[0].1, Q::from_integer(2))))?;
                let c = macops::commutator(&ctx, d, &d2)?;
                checks.push(Check::new(format!("[D_{tag}, D_(m_2{tag})] = 0"), c.is_zero(), None));
            } else if ops.len() < 2 {
                return Err(Error::PreconditionViolated(format!("{} has a single special coweight", ctx.rd.describe())));
            }
        }
        Suite::Gamma => {
            let ctx = cfg.context(1)?;
            for (sel, pi) in cfg.pis(&ctx.rd)? {
                let tag = sel.tag();
                let d = macops::macdonald_operator(&ctx, &pi, Route::Explicit)?;
                let m = orbit_sum(&ctx.rd, &pi);
                checks.push(Check::new(format!("gamma(D_{tag}) = m_{tag}"), xi_equal(&macops::gamma_hc(&ctx, &d)?, &m), None));
                let dd = d.compose(&ctx, &d)?;
                let m2 = xi_product(&m, &m);
                checks.push(Check::new(format!("gamma(D_{tag}^2) = m_{tag}^2"), xi_equal(&macops::gamma_hc(&ctx, &dd)?, &m2), None));
                if hecke_route_affordable(&ctx.rd) {
                    let built = macops::build_dp(&ctx, &m2)?;
                    checks.push(Check::new(format!("D_(m_{tag}^2) = D_{tag}^2"), built.equals(&dd), None));
                }
            }
        }
        Suite::Rankone => {
            let ctx = cfg.context(1)?;
            let mut all = serde_json::Map::new();
            for (sel, pi) in cfg.pis(&ctx.rd)? {
                let (cases, mut cs) = rankone::verify_all(&ctx, &pi)?;
                for c in &cases {
                    cs.push(Check::new(format!("{} rank-one reduction i={} ({:?})", sel.tag(), c.index, c.part), c.identity_holds, None));
                }
                checks.extend(cs);
                all.insert(sel.tag(), serde_json::to_value(&cases).map_err(|e| Error::Parse(e.to_string()))?);
            }
            reports = serde_json::Value::Object(all);
        }
        Suite::Triangular => {
            let ctx = cfg.context(1)?;
            let h = height.unwrap_or(if ctx.rd.n == 1 { 6 } else { 3 }) as i64;
            for (sel, pi) in cfg.pis(&ctx.rd)? {
                let d = macops::macdonald_operator(&ctx, &pi, Route::Explicit)?;
                let p = orbit_sum(&ctx.rd, &pi);
                for lambda in ctx.rd.dominant_weights(h) {
                    let (_, ok) = macops::triangular_image(&ctx, &d, &p, &lambda)?;
                    let w = ctx.rd.lat_l.try_coords(&lambda)?;
                    checks.push(Check::new(format!("D_{} m_{:?} triangular", sel.tag(), w), ok, None));
                }
            }
        }
        Suite::Hcseries => {
            let ctx = cfg.context(1)?;
            let h = height.unwrap_or(default_series_height(ctx.rd.n));
            let (sel, pi) = cfg.first_pi(&ctx.rd)?;
            let d = macops::macdonald_operator(&ctx, &pi, Route::Explicit)?;
            let e = hcseries::expand_operator(&ctx, &d, h)?;
            let opts = SweepOptions { layer_order: None, threads: cfg.threads };
            let s = hcseries::hc_series_formal_with(&ctx, &e, &pi, h, &opts)?;
            let zero = vec![0; ctx.rd.n];
            checks.push(Check::new("Gamma_0 = 1", s.coeff(&zero).is_one(), None));
            checks.push(Check::new(format!("D_{} Phi = r Phi", sel.tag()), hcseries::verify_eigen(&ctx, &s, &e, h)?, None));
            for (other, p) in macops::supported_pis(&ctx.rd).into_iter().filter(|o| *o != sel).map(|o| (o, macops::pi_prime(&ctx.rd, o))) {
                let d2 = macops::macdonald_operator(&ctx, &p?, Route::Explicit)?;
                let defect = hcseries::eigen_defect(&ctx, &s, &hcseries::expand_operator(&ctx, &d2, h)?, h)?;
                checks.push(Check::new(format!("D_{} Phi = r Phi", other.tag()), defect.is_none(), defect.map(|x| format!("fails at {x:?}"))));
            }
            checks.push(Check::new("denominators divide recurrence factors", hcseries::denominators_divide(&ctx, &s, &e)?, None));
            let mut bad = s.clone();
            let mut x = zero.clone();
            x[0] = 1;
            let v = &bad.coeff(&x) + &crate::algebra::Frac::one();
            bad.coeffs.insert(x, v);
            checks.push(Check::new("perturbed series is rejected", !hcseries::verify_eigen(&ctx, &bad, &e, h)?, None));
        }
        Suite::Baker => {
            let ctx = cfg.context(1)?;
            let (_, pi) = cfg.first_pi(&ctx.rd)?;
            let top = hcseries::baker_support(&ctx)?.iter().map(|x| x.iter().sum::<i64>()).max().unwrap_or(0) as usize;
            let h = height.unwrap_or(top + 2);
            let samples = ctx.rd.lat_l.basis().to_vec();
            let r = hcseries::baker_check(&ctx, &pi, h, &samples)?;
            checks.push(Check::new("coefficients vanish outside the support set", r.support_violations.is_empty(), None));
            checks.push(Check::new("Gamma_x t(-rho) K_0 is a polynomial", r.irregular.is_empty(), None));
            checks.push(Check::new("K_0 agrees with its factorwise evaluation", r.normalization_ok, None));
            reports = serde_json::to_value(&r).map_err(|e| Error::Parse(e.to_string()))?;
        }
    }
    Ok((checks, reports))
}

/// Parses `args`, runs the command and writes JSON lines to `out` (or the
/// `--output` file). Returns the process exit code.
pub fn run_args<I, T>(args: I, out: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            use clap::error::ErrorKind;
            if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                let _ = write!(out, "{e}");
                return 0;
            }
            eprintln!("{e}");
            let doc = Document::Error(ErrorDoc { schema: SCHEMA.into(), code: "usage".into(), message: e.kind().to_string() });
            let _ = writeln!(out, "{}", to_line(&doc));
            return 2;
        }
    };
    let mut file = match &cli.output {
        Some(p) => match std::fs::File::create(p) {
            Ok(f) => Some(std::io::BufWriter::new(f)),
            Err(e) => {
                eprintln!("cannot open {}: {e}", p.display());
                let doc = Document::Error(ErrorDoc { schema: SCHEMA.into(), code: "output".into(), message: e.to_string() });
                let _ = writeln!(out, "{}", to_line(&doc));
                return 2;
            }
        },
        None => None,
    };
    let sink: &mut dyn Write = match file.as_mut() {
        Some(f) => f,
        None => out,
    };
    let mut emit = |d: Document| -> Result<()> {
        writeln!(sink, "{}", to_line(&d)).map_err(|e| Error::Parse(format!("write failed: {e}")))?;
        sink.flush().map_err(|e| Error::Parse(format!("write failed: {e}")))
    };
    let result = execute(&cli, &mut emit);
    match &result {
        Ok(false) => eprintln!("verification failed"),
        Err(e) => {
            eprintln!("error: {e}");
            let _ = emit(serial::error_doc(e));
        }
        Ok(true) => {}
    }
    exit_code(&result)
}

pub fn exit_code(result: &Result<bool>) -> i32 {
    match result {
        Ok(true) => 0,
        Ok(false) => 1,
        Err(_) => 2,
    }
}

fn to_line(d: &Document) -> String {
    serde_json::to_string(d).expect("documents serialize")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exit_codes() {
        assert_eq!(exit_code(&Ok(true)), 0);
        assert_eq!(exit_code(&Ok(false)), 1);
        assert_eq!(exit_code(&Err(Error::SingularSpectralPoint)), 2);
    }

    #[test]
    fn single_label_is_broadcast() {
        let cli = Cli::try_parse_from(["x", "--case", "c", "--type", "C", "--k", "1", "datum"]).unwrap();
        let ctx = JobConfig::from_cli(&cli).unwrap().context(1).unwrap();
        assert_eq!(ctx.label, Label::Specialized(vec![Q::from_integer(1); 5]));
    }

    #[test]
    fn dominant_weights_by_height() {
        let rd = RootDatum::build(Case::A, CartanType::A, 2).unwrap();
        let ws = rd.dominant_weights(2);
        // 0, ω1, ω2, ω1+ω2, 2ω1, 2ω2 have heights 0, 2/3, 2/3, 2, 4/3, 4/3.
        assert_eq!(ws.len(), 6);
        assert!(ws.windows(2).all(|w| rd.height(&w[0]) <= rd.height(&w[1])));
    }
}
