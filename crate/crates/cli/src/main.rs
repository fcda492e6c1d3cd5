use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::de::DeserializeOwned;
use serde::Serialize;
use serde_json::{json, Value};

use horosagbi::algebra::{format_polynomial, parse_polynomial, Polynomial};
use horosagbi::checklist::run_checklist;
use horosagbi::gc::{
    change_of_vars_matrices, gc_polytope, gc_prime_polytope, newton_polytope, weyl_dim, DominantWeight, Group,
    NewtonVariant,
};
use horosagbi::polyhedra::{lattice_points, minkowski_sum, vertices, HPolytope};
use horosagbi::rational::{format_q, parse_q, q};
use horosagbi::sagbi::{
    degenerate, flat_family_member, hilbert_function, psi_embed, subduct, verify_sagbi, ChoiceRule, EmbeddedAlgebra,
    HoroVarietySpec, SubductOptions, VerifyOptions,
};
use horosagbi::symplectic::{generic_unipotent, initial_exponent_set, rep_space, symbolic_inverse, RepSpace};

/// Exact computations for toric degenerations of horospherical
/// SP(2n)-varieties.
///
/// Documents are JSON. Rationals are strings "p/q" (plain integers are also
/// accepted on input). Polytopes: {"dim", "inequalities": [{"a": [..], "b"}]}
/// meaning a·z >= b. Weights: {"group": "SP"|"GL", "n", "lambda": [..]}.
/// Specs: {"n", "weights": [[..]], "lattice": [[..]], "moment_vertices": [[..]]}.
/// Polynomials: terms "c * x[i,j]^e * y[k]^e * t^e" joined by " + ".
///
/// Exit status: 0 on success, 1 on a domain error, 2 on a usage error or
/// malformed input.
#[derive(Parser)]
#[command(name = "horosagbi", version)]
struct Cli {
    /// Write the result here (atomically) instead of standard output.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum GroupArg {
    #[value(name = "SP", alias = "sp")]
    Sp,
    #[value(name = "GL", alias = "gl")]
    Gl,
}

#[derive(Clone, Copy, ValueEnum)]
enum VariantArg {
    Delta,
    DeltaPrime,
}

#[derive(Args)]
struct WeightArgs {
    /// Weight document; alternative to --group/--n/--lambda.
    #[arg(long, conflicts_with_all = ["group", "lambda"])]
    weight: Option<PathBuf>,
    #[arg(long, value_enum, default_value = "SP")]
    group: GroupArg,
    #[arg(long)]
    n: Option<usize>,
    /// Comma-separated components, e.g. 2,1 or 3/2,0.
    #[arg(long, allow_hyphen_values = true)]
    lambda: Option<String>,
}

#[derive(Args)]
struct SpecArgs {
    /// Spec document.
    #[arg(long, conflicts_with = "weights")]
    spec: Option<PathBuf>,
    #[arg(long)]
    n: Option<usize>,
    /// Weights separated by ';', e.g. "1,0;1,1". The lattice is spanned by
    /// the nonzero weights and the moment polytope is their convex hull.
    #[arg(long)]
    weights: Option<String>,
}

#[derive(Args)]
struct PolyArgs {
    /// Polynomial in text form.
    #[arg(long, conflicts_with = "poly_file")]
    poly: Option<String>,
    /// File holding a polynomial in text form.
    #[arg(long)]
    poly_file: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Command {
    /// Gelfand-Cetlin polytope of a weight.
    Gc(WeightArgs),
    /// Transformed polytope A^{-1}(Δ_λ - Bλ) of an SP weight.
    Gcprime(WeightArgs),
    /// Newton polytope in (λ, x)-space over the convex hull of SP weights.
    Newton {
        #[arg(long)]
        n: usize,
        /// Weights separated by ';'.
        #[arg(long)]
        weights: String,
        #[arg(long, value_enum, default_value = "delta")]
        variant: VariantArg,
    },
    /// Number of lattice points of a polytope (optionally dilated by k).
    Count {
        polytope: PathBuf,
        #[arg(long, default_value_t = 1)]
        k: u32,
    },
    /// Vertices of a polytope.
    Vertices { polytope: PathBuf },
    /// Minkowski sum of two polytopes.
    Minkowski { first: PathBuf, second: PathBuf },
    /// Weyl dimension of an irreducible representation.
    Weyldim(WeightArgs),
    /// The matrices A, B of the change of variables q = A p + B λ.
    Changevars {
        #[arg(long)]
        n: usize,
    },
    /// The generic unipotent matrix of SP(2n) and its inverse.
    Unipotent {
        #[arg(long)]
        n: usize,
    },
    /// Basis of V_λ as polynomials on the unipotent subgroup.
    Repspace(WeightArgs),
    /// Initial exponents of a representation space.
    Initials {
        /// Representation-space document; alternative to weight options.
        #[arg(long)]
        repspace: Option<PathBuf>,
        #[command(flatten)]
        weight: WeightArgs,
    },
    /// Compares initial exponents of V_λ with the lattice points of Δ'_λ.
    OkounkovCheck(WeightArgs),
    /// Dimension of the degree-k part of the coordinate ring.
    Hilbert {
        #[command(flatten)]
        spec: SpecArgs,
        #[arg(long)]
        k: u32,
    },
    /// Generators of the embedded algebra and their initial exponents.
    Embed {
        #[command(flatten)]
        spec: SpecArgs,
    },
    /// Subduction of a polynomial against the embedded algebra.
    Subduct {
        #[command(flatten)]
        spec: SpecArgs,
        #[command(flatten)]
        poly: PolyArgs,
        /// Choose decompositions at random (requires --seed).
        #[arg(long, requires = "seed")]
        random_choice: bool,
        #[arg(long)]
        seed: Option<u64>,
        #[arg(long)]
        max_steps: Option<usize>,
        #[arg(long)]
        record_remainders: bool,
    },
    /// Bounded-level SAGBI verification report.
    SagbiVerify {
        #[command(flatten)]
        spec: SpecArgs,
        #[arg(long = "max-level", default_value_t = 3)]
        max_level: u32,
        #[arg(long, default_value_t = 0)]
        trials: usize,
        /// Required when --trials is positive.
        #[arg(long)]
        seed: Option<u64>,
        /// Random choices during subduction trials.
        #[arg(long)]
        randomized: bool,
    },
    /// Semigroup generators, binomial relations and Hilbert certificate.
    Degenerate {
        #[command(flatten)]
        spec: SpecArgs,
        #[arg(long = "max-level", default_value_t = 3)]
        max_level: u32,
        #[arg(long = "deg-bound", default_value_t = 3)]
        deg_bound: u32,
    },
    /// A member of the flat family degenerating a polynomial to its initial term.
    Family {
        #[command(flatten)]
        spec: SpecArgs,
        #[command(flatten)]
        poly: PolyArgs,
        #[arg(long)]
        tau: String,
        #[arg(long = "max-level", default_value_t = 2)]
        max_level: u32,
    },
    /// Runs the acceptance checklist and prints a pass/fail table.
    Suite {
        /// Comma-separated check ids.
        #[arg(long)]
        only: Option<String>,
    },
}

enum CliError {
    Usage(String),
    Domain(horosagbi::Error),
}

impl From<horosagbi::Error> for CliError {
    fn from(e: horosagbi::Error) -> Self {
        CliError::Domain(e)
    }
}

type CliResult<T> = Result<T, CliError>;

fn read_text(path: &Path) -> CliResult<String> {
    fs::read_to_string(path).map_err(|e| CliError::Usage(format!("{}: {e}", path.display())))
}

fn read_json<T: DeserializeOwned>(path: &Path) -> CliResult<T> {
    let text = read_text(path)?;
    let de = &mut serde_json::Deserializer::from_str(&text);
    serde_path_to_error::deserialize(de).map_err(|e| {
        let at = e.path().to_string();
        CliError::Usage(format!("{}: field `{at}`: {}", path.display(), e.inner()))
    })
}

fn parse_components(s: &str) -> CliResult<Vec<horosagbi::Q>> {
    s.split(',')
        .map(|p| parse_q(p.trim()).map_err(|e| CliError::Usage(format!("--lambda: {e}"))))
        .collect()
}

fn parse_int_list(s: &str, what: &str) -> CliResult<Vec<i64>> {
    s.split(',')
        .map(|p| p.trim().parse::<i64>().map_err(|e| CliError::Usage(format!("{what}: `{p}`: {e}"))))
        .collect()
}

fn parse_weight_list(s: &str) -> CliResult<Vec<Vec<i64>>> {
    s.split(';').map(|w| parse_int_list(w, "--weights")).collect()
}

fn weight(args: &WeightArgs) -> CliResult<DominantWeight> {
    if let Some(path) = &args.weight {
        return read_json(path);
    }
    let lambda = args.lambda.as_deref().ok_or_else(|| CliError::Usage("missing --lambda or --weight".into()))?;
    let lambda = parse_components(lambda)?;
    if let Some(n) = args.n {
        if n != lambda.len() {
            return Err(CliError::Usage(format!("--n {n} but --lambda has {} entries", lambda.len())));
        }
    }
    let group = match args.group {
        GroupArg::Sp => Group::Sp,
        GroupArg::Gl => Group::Gl,
    };
    Ok(DominantWeight::new(group, lambda)?)
}

fn spec(args: &SpecArgs) -> CliResult<HoroVarietySpec> {
    if let Some(path) = &args.spec {
        return read_json(path);
    }
    let weights = args.weights.as_deref().ok_or_else(|| CliError::Usage("missing --spec or --weights".into()))?;
    let weights = parse_weight_list(weights)?;
    let n = args.n.unwrap_or_else(|| weights[0].len());
    Ok(HoroVarietySpec::from_weights(n, weights)?)
}

fn polynomial(args: &PolyArgs, e: &EmbeddedAlgebra) -> CliResult<Polynomial> {
    let text = match (&args.poly, &args.poly_file) {
        (Some(s), _) => s.clone(),
        (None, Some(p)) => read_text(p)?,
        (None, None) => return Err(CliError::Usage("missing --poly or --poly-file".into())),
    };
    parse_polynomial(text.trim(), e.universe()).map_err(|err| CliError::Usage(format!("polynomial: {err}")))
}

fn polytope(path: &Path) -> CliResult<HPolytope> {
    let p: HPolytope = read_json(path)?;
    p.validated().map_err(|e| CliError::Usage(format!("{}: {e}", path.display())))
}

fn to_value<T: Serialize>(v: &T) -> Value {
    serde_json::to_value(v).expect("serializable")
}

fn run(cmd: Command) -> CliResult<(Value, bool)> {
    let ok = |v: Value| Ok((v, true));
    match cmd {
        Command::Gc(w) => ok(to_value(&gc_polytope(&weight(&w)?))),
        Command::Gcprime(w) => ok(to_value(&gc_prime_polytope(&weight(&w)?)?)),
        Command::Newton { n, weights, variant } => {
            let ws = parse_weight_list(&weights)?
                .iter()
                .map(|w| {
                    if w.len() != n {
                        return Err(CliError::Usage(format!("weight {w:?} does not have {n} entries")));
                    }
                    Ok(DominantWeight::sp(w)?)
                })
                .collect::<CliResult<Vec<_>>>()?;
            let variant = match variant {
                VariantArg::Delta => NewtonVariant::Delta,
                VariantArg::DeltaPrime => NewtonVariant::DeltaPrime,
            };
            ok(to_value(&newton_polytope(&ws, variant)?))
        }
        Command::Count { polytope: path, k } => {
            let p = polytope(&path)?.dilate(&q(k as i64))?;
            ok(json!(lattice_points(&p)?.len()))
        }
        Command::Vertices { polytope: path } => {
            let vs = vertices(&polytope(&path)?)?;
            let vs: Vec<Vec<String>> = vs.iter().map(|v| v.iter().map(format_q).collect()).collect();
            ok(json!(vs))
        }
        Command::Minkowski { first, second } => ok(to_value(&minkowski_sum(&polytope(&first)?, &polytope(&second)?)?)),
        Command::Weyldim(w) => ok(json!(weyl_dim(&weight(&w)?)?)),
        Command::Changevars { n } => ok(to_value(&change_of_vars_matrices(n)?)),
        Command::Unipotent { n } => {
            let u = generic_unipotent(n)?;
            let inv = symbolic_inverse(&u)?;
            let order = horosagbi::algebra::TermOrder::okounkov(u.universe());
            let show = |m: &Vec<Vec<Polynomial>>| -> Vec<Vec<String>> {
                m.iter().map(|row| row.iter().map(|p| format_polynomial(p, &order)).collect()).collect()
            };
            ok(json!({"n": n, "matrix": show(u.entries()), "inverse": show(&inv)}))
        }
        Command::Repspace(w) => ok(to_value(&rep_space(&weight(&w)?)?)),
        Command::Initials { repspace, weight: w } => {
            let s: RepSpace = match repspace {
                Some(path) => read_json(&path)?,
                None => rep_space(&weight(&w)?)?,
            };
            ok(to_value(&initial_exponent_set(&s, &s.order())?))
        }
        Command::OkounkovCheck(w) => {
            let w = weight(&w)?;
            let s = rep_space(&w)?;
            let initials = initial_exponent_set(&s, &s.order())?;
            let points = lattice_points(&gc_prime_polytope(&w)?)?;
            let matches = initials == points;
            Ok((json!({"match": matches, "count": initials.len()}), matches))
        }
        Command::Hilbert { spec: s, k } => ok(json!(hilbert_function(&spec(&s)?, k)?)),
        Command::Embed { spec: s } => {
            let e = psi_embed(&spec(&s)?)?;
            let gens: Vec<String> = e.generators().iter().map(|g| format_polynomial(g, e.order())).collect();
            let inits: Vec<Vec<i64>> = e.initial_exponents().iter().map(|x| x.to_i64_vec()).collect();
            ok(json!({"generators": gens, "initial_exponents": inits}))
        }
        Command::Subduct { spec: s, poly, random_choice, seed, max_steps, record_remainders } => {
            let e = psi_embed(&spec(&s)?)?;
            let f = polynomial(&poly, &e)?;
            let rule = match (random_choice, seed) {
                (true, Some(seed)) => ChoiceRule::Random(seed),
                _ => ChoiceRule::LowestLex,
            };
            let tr = subduct(&f, &e, SubductOptions { rule, max_steps, record_remainders })?;
            ok(to_value(&tr.to_doc(&e)))
        }
        Command::SagbiVerify { spec: s, max_level, trials, seed, randomized } => {
            let seed = match (trials, seed) {
                (0, s) => s.unwrap_or(0),
                (_, Some(s)) => s,
                (_, None) => return Err(CliError::Usage("--trials needs an explicit --seed".into())),
            };
            let e = psi_embed(&spec(&s)?)?;
            let r = verify_sagbi(&e, VerifyOptions { max_level, trials, seed, randomized })?;
            let passed = r.passed();
            Ok((to_value(&r), passed))
        }
        Command::Degenerate { spec: s, max_level, deg_bound } => {
            let e = psi_embed(&spec(&s)?)?;
            ok(to_value(&degenerate(&e, max_level, deg_bound)?))
        }
        Command::Family { spec: s, poly, tau, max_level } => {
            let e = psi_embed(&spec(&s)?)?;
            let f = polynomial(&poly, &e)?;
            let tau = parse_q(&tau).map_err(|err| CliError::Usage(format!("--tau: {err}")))?;
            let g = flat_family_member(&f, &e, &tau, max_level)?;
            ok(json!({"tau": format_q(&tau), "polynomial": format_polynomial(&g, e.order())}))
        }
        Command::Suite { only } => {
            let ids = only.as_deref().map(|s| parse_int_list(s, "--only")).transpose()?;
            let ids: Option<Vec<u32>> = ids.map(|v| v.into_iter().map(|i| i as u32).collect());
            let results = run_checklist(ids.as_deref());
            for r in &results {
                eprintln!(
                    "[{}] {}. {} ({}; {:.2}s)",
                    if r.passed { "PASS" } else { "FAIL" },
                    r.id,
                    r.name,
                    r.detail,
                    r.seconds
                );
            }
            let all = results.iter().all(|r| r.passed);
            let rows: Vec<Value> = results
                .iter()
                .map(|r| json!({"id": r.id, "name": r.name, "passed": r.passed, "detail": r.detail}))
                .collect();
            Ok((json!({"passed": all, "checks": rows}), all))
        }
    }
}

fn emit(v: &Value, out: Option<&Path>) -> Result<(), String> {
    let mut text = serde_json::to_string_pretty(v).map_err(|e| e.to_string())?;
    text.push('\n');
    match out {
        None => std::io::stdout().write_all(text.as_bytes()).map_err(|e| e.to_string()),
        Some(path) => {
            let dir = path.parent().filter(|d| !d.as_os_str().is_empty()).unwrap_or(Path::new("."));
            let mut tmp = tempfile::NamedTempFile::new_in(dir).map_err(|e| format!("{}: {e}", dir.display()))?;
            tmp.write_all(text.as_bytes()).map_err(|e| e.to_string())?;
            tmp.persist(path).map_err(|e| format!("{}: {e}", path.display()))?;
            Ok(())
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    match run(cli.command) {
        Ok((v, passed)) => match emit(&v, cli.out.as_deref()) {
            Ok(()) if passed => ExitCode::SUCCESS,
            Ok(()) => ExitCode::from(1),
            Err(e) => {
                eprintln!("error: {e}");
                ExitCode::from(1)
            }
        },
        Err(CliError::Usage(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(2)
        }
        Err(CliError::Domain(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(1)
        }
    }
}
