use std::fmt::Write as _;
use std::io::Read;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use hypertree_spectra::eigen::{find_totally_nonzero_eigenvector, find_witness, EigenConfig, Eigenpair};
use hypertree_spectra::generate::GenSpec;
use hypertree_spectra::matching::{matching_counts_tree, matching_polynomial};
use hypertree_spectra::paperdata::{conjecture_probe, degree_check, fixture, verify_theorem2, FixtureName};
use hypertree_spectra::roots::{RootConfig, DEFAULT_ROOT_TOL, DEFAULT_SEED};
use hypertree_spectra::spectra::{set_spectrum, set_spectrum_with_catalog, spectral_radius, DEFAULT_TOL};
use hypertree_spectra::subtrees::{distinct_matching_polynomials_capped, DEFAULT_MAX_SUBSETS};
use hypertree_spectra::{Error, SpectrumConfig, UniformHypergraph};

#[derive(Parser, Debug)]
#[command(name = "hypertree", version, about = "Matching polynomials and set-spectra of k-uniform hypertrees")]
struct Cli {
    /// Set membership and eigen residual tolerance.
    #[arg(long, global = true, default_value_t = DEFAULT_TOL)]
    tol: f64,
    /// Relative residual every polynomial root must meet.
    #[arg(long, global = true, default_value_t = DEFAULT_ROOT_TOL)]
    root_tol: f64,
    #[arg(long, global = true, default_value_t = DEFAULT_SEED)]
    seed: u64,
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Shorthand for `--format csv`.
    #[arg(long, global = true)]
    csv: bool,
    /// Cap on enumerated connected subtrees.
    #[arg(long, global = true, default_value_t = DEFAULT_MAX_SUBSETS)]
    max_subsets: usize,
    #[command(subcommand)]
    verb: Verb,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
    Csv,
}

#[derive(clap::Args, Debug)]
struct Input {
    /// Hypergraph JSON file, or `-` for stdin.
    #[arg(default_value = "-")]
    input: String,
    /// Build the input from a generator spec instead of reading it.
    #[arg(long, value_name = "SPEC", conflicts_with = "input")]
    gen: Option<String>,
}

#[derive(Subcommand, Debug)]
enum Verb {
    /// Emit canonical JSON for `comb K`, `path T K`, `star T K`,
    /// `power K <spec>` or `fixture H1|H2|H3`.
    Gen {
        #[arg(required = true, num_args = 1.., allow_hyphen_values = true)]
        spec: Vec<String>,
    },
    /// Matching polynomial in x.
    Matchpoly(Input),
    /// Connected induced subtrees and their distinct matching polynomials.
    Subtrees(Input),
    /// Set-spectrum.
    Spectrum(Input),
    /// Spectral radius.
    Radius(Input),
    /// Structural and spectral power-tree verdicts.
    Ispower(Input),
    /// Whether every nonzero eigenvalue has a real k-th power.
    Cyclotomic(Input),
    /// Eigenvectors: for one eigenvalue, or a subtree witness for every one.
    Eigvec {
        #[command(flatten)]
        input: Input,
        /// `re` or `re,im`.
        #[arg(long, allow_hyphen_values = true)]
        lambda: Option<String>,
    },
    /// Spectrum as plot data, `re,im,source_poly,alpha_re,alpha_im`.
    RootsCsv(Input),
    /// Degree, set-spectrum and divisibility checks on the reference fixtures.
    CheckPaper,
}

enum Failure {
    Lib(Error),
    Usage(String),
    Checks(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Lib(e)
    }
}

type Outcome = std::result::Result<String, Failure>;

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(out) => {
            print!("{out}");
            ExitCode::SUCCESS
        }
        Err(Failure::Lib(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(if e.is_convergence() { 3 } else { 2 })
        }
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Checks(out)) => {
            print!("{out}");
            ExitCode::from(1)
        }
    }
}

impl Cli {
    fn format(&self) -> Format {
        if self.csv {
            Format::Csv
        } else {
            self.format
        }
    }

    fn roots(&self) -> RootConfig {
        RootConfig {
            root_tol: self.root_tol,
            seed: self.seed,
            ..RootConfig::default()
        }
    }

    fn spectrum(&self) -> SpectrumConfig {
        SpectrumConfig {
            tol: self.tol,
            roots: self.roots(),
            max_subsets: self.max_subsets,
        }
    }

    fn eigen(&self) -> EigenConfig {
        EigenConfig {
            tol: self.tol,
            seed: self.seed,
            ..EigenConfig::default()
        }
    }
}

fn load(input: &Input) -> Result<UniformHypergraph, Failure> {
    if let Some(spec) = &input.gen {
        return Ok(spec.parse::<GenSpec>()?.generate()?);
    }
    let bytes = if input.input == "-" {
        let mut buf = Vec::new();
        std::io::stdin()
            .read_to_end(&mut buf)
            .map_err(|e| Failure::Usage(format!("reading stdin: {e}")))?;
        buf
    } else {
        std::fs::read(&input.input).map_err(|e| Failure::Usage(format!("reading {}: {e}", input.input)))?
    };
    Ok(UniformHypergraph::from_json_bytes(&bytes)?)
}

fn no_csv(cli: &Cli) -> Result<(), Failure> {
    if cli.format() == Format::Csv {
        return Err(Failure::Usage("csv output is only available for spectrum and roots-csv".into()));
    }
    Ok(())
}

fn pretty(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("values serialize");
    s.push('\n');
    s
}

fn cx(z: num_complex::Complex64) -> Value {
    json!([z.re + 0.0, z.im + 0.0])
}

fn run(cli: &Cli) -> Outcome {
    match &cli.verb {
        Verb::Gen { spec } => {
            let spec: GenSpec = spec.join(" ").parse()?;
            Ok(format!("{}\n", spec.generate()?.to_json()))
        }
        Verb::Matchpoly(input) => {
            no_csv(cli)?;
            let h = load(input)?;
            let phi = matching_polynomial(&h)?;
            Ok(match cli.format() {
                Format::Json => {
                    let counts: Vec<String> = matching_counts_tree(&h)?
                        .counts()
                        .iter()
                        .map(|c| c.to_string())
                        .collect();
                    pretty(&json!({
                        "k": h.k(),
                        "x_form": phi.x_form(h.k()),
                        "alpha_coeffs": phi,
                        "matching_counts": counts,
                    }))
                }
                _ => format!("{}\n", phi.x_form(h.k())),
            })
        }
        Verb::Subtrees(input) => {
            no_csv(cli)?;
            let h = load(input)?;
            let cat = distinct_matching_polynomials_capped(&h, cli.max_subsets)?;
            Ok(match cli.format() {
                Format::Json => pretty(&cat.to_json_value()),
                _ => {
                    let mut out = String::new();
                    for (s, &p) in cat.subsets.iter().zip(&cat.poly_of) {
                        let edges: Vec<&Vec<usize>> = s.indices().iter().map(|&i| &h.edges()[i]).collect();
                        let _ = writeln!(out, "{edges:?}  {}", cat.polys[p].x_form(h.k()));
                    }
                    let _ = writeln!(out, "{} subtrees, {} distinct polynomials:", cat.subsets.len(), cat.polys.len());
                    for p in &cat.polys {
                        let _ = writeln!(out, "  {}", p.x_form(h.k()));
                    }
                    out
                }
            })
        }
        Verb::Spectrum(input) => {
            let h = load(input)?;
            let s = set_spectrum(&h, &cli.spectrum())?;
            Ok(match cli.format() {
                Format::Csv => s.to_csv(),
                Format::Json => pretty(&s.to_json_value(&cli.roots())),
                Format::Text => {
                    let mut out = String::new();
                    for l in s.lambdas() {
                        let _ = writeln!(out, "{} {}", l.re, l.im);
                    }
                    out
                }
            })
        }
        Verb::RootsCsv(input) => {
            let h = load(input)?;
            Ok(set_spectrum(&h, &cli.spectrum())?.to_csv())
        }
        Verb::Radius(input) => {
            no_csv(cli)?;
            let h = load(input)?;
            let r = spectral_radius(&h, &cli.roots())?;
            Ok(match cli.format() {
                Format::Json => pretty(&json!({ "spectral_radius": r })),
                _ => format!("{r}\n"),
            })
        }
        Verb::Ispower(input) => {
            no_csv(cli)?;
            let h = load(input)?;
            let structural = h.is_power_tree()?;
            let spectral = set_spectrum(&h, &cli.spectrum())?.is_cyclotomic();
            Ok(match cli.format() {
                Format::Json => pretty(&json!({
                    "structural": structural,
                    "spectral": spectral,
                    "agree": structural == spectral,
                })),
                _ => format!(
                    "structural: {structural}\nspectral: {spectral}\nagree: {}\n",
                    structural == spectral
                ),
            })
        }
        Verb::Cyclotomic(input) => {
            no_csv(cli)?;
            let h = load(input)?;
            let verdict = set_spectrum(&h, &cli.spectrum())?.is_cyclotomic();
            Ok(match cli.format() {
                Format::Json => pretty(&json!({ "cyclotomic": verdict, "tol": cli.tol })),
                _ => format!("{verdict}\n"),
            })
        }
        Verb::Eigvec { input, lambda } => {
            no_csv(cli)?;
            let h = load(input)?;
            match lambda {
                Some(text) => eigvec_single(cli, &h, text),
                None => eigvec_witnesses(cli, &h),
            }
        }
        Verb::CheckPaper => {
            no_csv(cli)?;
            check_paper(cli)
        }
    }
}

fn parse_lambda(text: &str) -> Result<num_complex::Complex64, Failure> {
    let bad = || Failure::Usage(format!("--lambda expects `re` or `re,im`, got {text:?}"));
    let mut parts = text.split(',').map(|p| p.trim().parse::<f64>());
    let re = parts.next().ok_or_else(bad)?.map_err(|_| bad())?;
    let im = match parts.next() {
        Some(p) => p.map_err(|_| bad())?,
        None => 0.0,
    };
    if parts.next().is_some() || !re.is_finite() || !im.is_finite() {
        return Err(bad());
    }
    Ok(num_complex::Complex64::new(re, im))
}

fn pair_json(p: &Eigenpair) -> Value {
    json!({
        "lambda": cx(p.lambda),
        "x": p.x.iter().map(|&z| cx(z)).collect::<Vec<_>>(),
        "residual": p.residual,
        "support": p.support.as_slice(),
        "totally_nonzero": p.totally_nonzero,
    })
}

fn pair_text(out: &mut String, p: &Eigenpair) {
    let _ = writeln!(out, "  residual {:e}, support {:?}", p.residual, p.support.as_slice());
    for (i, z) in p.x.iter().enumerate() {
        let _ = writeln!(out, "  x{} = {} {}", i + 1, z.re + 0.0, z.im + 0.0);
    }
}

fn eigvec_single(cli: &Cli, h: &UniformHypergraph, text: &str) -> Outcome {
    let lambda = parse_lambda(text)?;
    let p = find_totally_nonzero_eigenvector(h, lambda, &cli.eigen())?;
    Ok(match cli.format() {
        Format::Json => pretty(&pair_json(&p)),
        _ => {
            let mut out = format!("lambda {} {}\n", p.lambda.re, p.lambda.im);
            pair_text(&mut out, &p);
            out
        }
    })
}

fn eigvec_witnesses(cli: &Cli, h: &UniformHypergraph) -> Outcome {
    let (spectrum, catalog) = set_spectrum_with_catalog(h, &cli.spectrum())?;
    let mut rows = Vec::new();
    let mut out = String::new();
    for v in spectrum.nonzero() {
        let w = find_witness(&catalog, v, &cli.eigen())?;
        let edges: Vec<&Vec<usize>> = w.subset.indices().iter().map(|&i| &h.edges()[i]).collect();
        rows.push(json!({
            "lambda": cx(v.lambda),
            "subtree_edges": edges,
            "local_residual": w.local.residual,
            "eigenpair": pair_json(&w.extended),
        }));
        let _ = writeln!(out, "lambda {} {} on subtree {edges:?}", v.lambda.re, v.lambda.im);
        pair_text(&mut out, &w.extended);
    }
    Ok(match cli.format() {
        Format::Json => pretty(&json!({ "tol": cli.tol, "witnesses": rows })),
        _ => out,
    })
}

fn check_paper(cli: &Cli) -> Outcome {
    let cfg = cli.spectrum();
    let mut rows = Vec::new();
    let mut text = String::from("fixture  degree       set-spectrum  divisibility\n");
    let mut all = true;
    for name in FixtureName::ALL {
        let fx = fixture(name);
        let degree_ok = degree_check(&fx);
        let t2 = verify_theorem2(name, &cfg)?;
        let probe = conjecture_probe(name)?;
        let divides = probe.entries.iter().filter(|e| e.divides).count();
        all &= degree_ok && t2.passed() && probe.passed();
        let verdict = |ok: bool| if ok { "pass" } else { "FAIL" };
        let _ = writeln!(
            text,
            "{name:<8} {:<12} {:<13} {} ({divides}/{})",
            format!("{} {}", fx.total_degree(), verdict(degree_ok)),
            verdict(t2.passed()),
            verdict(probe.passed()),
            probe.entries.len(),
        );
        rows.push(json!({
            "fixture": name,
            "degree": fx.total_degree(),
            "expected_degree": fx.expected_degree(),
            "degree_ok": degree_ok,
            "set_spectrum": t2,
            "set_spectrum_ok": t2.passed(),
            "divisibility": probe,
            "divisibility_ok": probe.passed(),
        }));
    }
    let out = match cli.format() {
        Format::Json => pretty(&json!({ "tol": cli.tol, "all_passed": all, "fixtures": rows })),
        _ => text,
    };
    if all {
        Ok(out)
    } else {
        Err(Failure::Checks(out))
    }
}
