//! `monogen`: monogenity checks for composites of totally real fields and
//! imaginary quadratic fields.

use std::fs;
use std::process::ExitCode;
use std::sync::Arc;

use clap::{Args, Parser, Subcommand};
use monogen_core::composite::{CompositeElement, CompositeField};
use monogen_core::exact::poly::parse_int_poly;
use monogen_core::number_field::{format_rational, FieldSpec};
use monogen_core::simplest_quartic::GridOptions;
use monogen_core::solver::satisfies_bounds;
use monogen_core::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

#[derive(Parser, Debug)]
#[command(name = "monogen", version, about = "Power integral bases in composites K = L M")]
struct Cli {
    /// Worker threads for box and grid work (default: all cores)
    #[arg(long, global = true)]
    jobs: Option<usize>,
    /// Write the JSON report to this path ("-" for standard output)
    #[arg(long, global = true, value_name = "PATH")]
    json: Option<String>,
    /// Hard cap on interval precision in bits
    #[arg(long, global = true, default_value_t = 8192)]
    precision_cap: u32,
    /// Seed for randomized checks
    #[arg(long, global = true, default_value_t = 1)]
    seed: u64,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug, Clone)]
struct FieldArgs {
    /// Simplest quartic parameter a
    #[arg(long, conflicts_with_all = ["field", "poly"])]
    a: Option<u64>,
    /// Field description file (JSON)
    #[arg(long, value_name = "FILE", conflicts_with = "poly")]
    field: Option<String>,
    /// Monic polynomial as comma-separated coefficients, constant term first (power basis)
    #[arg(long, allow_hyphen_values = true)]
    poly: Option<String>,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Degree, discriminant, basis and real roots of L
    FieldInfo {
        #[command(flatten)]
        field: FieldArgs,
    },
    /// |I_L(x_2, ..., x_n)| for coordinates in the integral basis
    Index {
        #[command(flatten)]
        field: FieldArgs,
        #[arg(long, allow_hyphen_values = true)]
        coords: String,
    },
    /// Exact index of an element of K with its three factors
    CompositeIndex {
        #[command(flatten)]
        field: FieldArgs,
        #[arg(long)]
        d: i64,
        /// x_2..x_n or x_1..x_n
        #[arg(long, allow_hyphen_values = true)]
        x: String,
        /// y_1..y_n
        #[arg(long, allow_hyphen_values = true)]
        y: String,
    },
    /// All generators of power integral bases of K
    Solve {
        #[command(flatten)]
        field: FieldArgs,
        #[arg(long)]
        d: i64,
        /// Source of power integral bases of L: box, table, or a JSON file
        #[arg(long)]
        pib: Option<String>,
        #[arg(long = "box", default_value_t = 20)]
        box_radius: i64,
    },
    /// Solve every simplest quartic composite with a <= a-max, d <= d-max
    VerifyCq {
        #[arg(long, default_value_t = 20)]
        a_max: u64,
        #[arg(long, default_value_t = 30)]
        d_max: u64,
        #[arg(long = "box", default_value_t = 20)]
        box_radius: i64,
        /// Include per-pair wall-clock milliseconds
        #[arg(long)]
        timings: bool,
    },
    /// Box search of the d = 3 composite of a simplest quartic field
    D3Search {
        #[arg(long)]
        a: u64,
        #[arg(long = "box", default_value_t = 20)]
        box_radius: i64,
    },
    /// The octic example x^4 - 4x^2 - x + 1 with M = Q(i)
    CheckExample5,
    /// Checks composite_index = |eq1| |eq2| |F| on random elements
    IdentityCheck {
        #[command(flatten)]
        field: FieldArgs,
        #[arg(long)]
        d: i64,
        #[arg(long, default_value_t = 200)]
        samples: usize,
        #[arg(long, default_value_t = 5)]
        range: i64,
    },
}

enum Failure {
    Error(Error),
    Check(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Error(e)
    }
}

type Outcome = std::result::Result<(String, Value), Failure>;

fn parse_ints(s: &str) -> Result<Vec<i64>> {
    s.split(',')
        .map(|t| t.trim().parse::<i64>().map_err(|e| Error::Parse(format!("bad integer {:?}: {}", t, e))))
        .collect()
}

fn load_field(args: &FieldArgs) -> Result<(NumberField, Option<u64>)> {
    match (&args.a, &args.field, &args.poly) {
        (Some(a), None, None) => Ok((make_simplest_quartic(*a)?, Some(*a))),
        (None, Some(path), None) => {
            let text = fs::read_to_string(path).map_err(|e| Error::Parse(format!("{}: {}", path, e)))?;
            Ok((FieldSpec::from_json(&text)?.build()?, None))
        }
        (None, None, Some(p)) => Ok((NumberField::with_power_basis(parse_int_poly(p)?, None)?, None)),
        _ => Err(Error::InvalidParameter("give exactly one of --a, --field, --poly".into())),
    }
}

fn composite(l: NumberField, d: i64, cap: u32) -> Result<CompositeField> {
    Ok(CompositeField::new(Arc::new(l), ImagQuadField::new(d)?)?.with_precision_cap(cap))
}

fn to_value<T: serde::Serialize>(v: &T) -> Value {
    serde_json::to_value(v).expect("serializable report")
}

fn field_info(args: &FieldArgs) -> Outcome {
    let (l, _) = load_field(args)?;
    let roots: Vec<Value> = l
        .root_intervals()
        .iter()
        .map(|r| json!([format_rational(&r.lo.to_rational()), format_rational(&r.hi.to_rational())]))
        .collect();
    let mut text = format!(
        "degree        {}\npolynomial    {}\nD(f)          {}\nD_L           {}\ntotally real  yes ({} real roots)\nbasis\n",
        l.degree(),
        l.poly(),
        l.poly_discriminant(),
        l.discriminant(),
        l.degree()
    );
    for (i, p) in l.basis_polys().iter().enumerate() {
        text.push_str(&format!("  l_{} = {}\n", i + 1, p));
    }
    let v = json!({
        "field": to_value(&FieldSpec::describe(&l)),
        "degree": l.degree(),
        "poly_discriminant": l.poly_discriminant().to_string(),
        "discriminant": l.discriminant().to_string(),
        "totally_real": true,
        "root_intervals": roots,
    });
    Ok((text, v))
}

fn index_cmd(args: &FieldArgs, coords: &str) -> Outcome {
    let (l, _) = load_field(args)?;
    let x = parse_ints(coords)?;
    l.check_tail(&x)?;
    let idx = l.element_index(&x)?;
    Ok((format!("{}\n", idx), json!({"coords": x, "index": idx.to_string()})))
}

fn composite_index_cmd(args: &FieldArgs, d: i64, x: &str, y: &str, cap: u32) -> Outcome {
    let (l, _) = load_field(args)?;
    let n = l.degree();
    let k = composite(l, d, cap)?;
    let mut x = parse_ints(x)?;
    if x.len() + 1 == n {
        x.insert(0, 0);
    }
    let y = parse_ints(y)?;
    let alpha = CompositeElement::new(x, y);
    let fac = k.factors(&alpha)?;
    let idx = k.composite_index(&alpha)?;
    let text = format!(
        "index           {}\nI_L(X)          {}\neq1 N_M(I_L(X)) {}\neq2 N_L(y)      {}\nthird F         {}\nD_K             {}\n",
        idx,
        fac.relative_form,
        fac.eq1,
        fac.eq2,
        fac.third,
        k.discriminant()
    );
    let v = json!({
        "x": alpha.x,
        "y": alpha.y,
        "d": d,
        "index": idx.to_string(),
        "relative_form": {"a": fac.relative_form.a.to_string(), "b": fac.relative_form.b.to_string()},
        "eq1": fac.eq1.to_string(),
        "eq2": fac.eq2.to_string(),
        "third": fac.third.to_string(),
        "d_k": k.discriminant().to_string(),
    });
    Ok((text, v))
}

fn render_report(rep: &SolverReport) -> String {
    let mut s = format!(
        "regime        {}\nD_L           {}\nD_M           {}\nD_K           {}\nbounds        |I_L({})| <= {}  |I_L(y)| <= {}\nsource        {} (box {})\ncandidates    {} pairs, {} pruned by eq1, {} third-factor tests\nverdict       {}\ncompleteness  {}\n",
        rep.regime.label(),
        rep.field.d_l,
        rep.field.d_m,
        rep.field.d_k,
        if rep.regime.is_res() { "2x+y" } else { "x" },
        rep.bounds.bound_x.display(),
        rep.bounds.bound_y.display(),
        rep.pib_source,
        rep.box_radius,
        rep.stats.pairs,
        rep.stats.pruned_eq1,
        rep.stats.third_tested,
        enum_label(&rep.verdict),
        enum_label(&rep.completeness),
    );
    if !rep.generators.is_empty() {
        s.push_str("generators (x_2..x_n | y_1..y_n)\n");
        for g in &rep.generators {
            s.push_str(&format!("  {:?} | {:?}", g.x, g.y));
            if let Some(nf) = &g.normal_form {
                s.push_str(&format!("   {}", nf));
            }
            s.push('\n');
        }
    }
    s.push_str("assumptions\n");
    for a in &rep.assumptions {
        s.push_str(&format!("  - {}\n", a));
    }
    s
}

fn enum_label<T: serde::Serialize>(v: &T) -> String {
    match to_value(v) {
        Value::String(s) => s,
        other => other.to_string(),
    }
}

fn solve_cmd(args: &FieldArgs, d: i64, pib: Option<&str>, r: i64, cap: u32) -> Outcome {
    let (l, a) = load_field(args)?;
    let source = match (pib, a) {
        (Some("box"), _) => PibSource::Box,
        (Some("table"), Some(a)) | (None, Some(a)) => PibSource::Explicit(olajos_generators(a)),
        (Some("table"), None) => {
            return Err(Error::InvalidParameter("--pib table needs --a".into()).into());
        }
        (None, None) => PibSource::Box,
        (Some(path), _) => {
            let text = fs::read_to_string(path).map_err(|e| Error::Parse(format!("{}: {}", path, e)))?;
            PibSource::from_json(&text)?
        }
    };
    let k = composite(l, d, cap)?;
    let rep = solve(&k, &source, &SolveOptions { box_radius: r })?;
    Ok((render_report(&rep), to_value(&rep)))
}

fn verify_cq_cmd(a_max: u64, d_max: u64, r: i64, timings: bool, cap: u32) -> Outcome {
    let a_values: Vec<u64> = (1..=a_max).collect();
    let d_values: Vec<u64> = (1..=d_max).collect();
    let rep = verify_theorem_cq(&a_values, &d_values, &GridOptions { box_radius: r, precision_cap: cap, timings });
    let mut s = String::new();
    for g in &rep.grid {
        if let Some(v) = &g.verdict {
            s.push_str(&format!(
                "a={:<3} d={:<3} {:<14} {}\n",
                g.a,
                g.d,
                enum_label(v),
                g.completeness.as_ref().map(enum_label).unwrap_or_default()
            ));
        }
    }
    let sm = &rep.summary;
    s.push_str(&format!(
        "pairs {}  solved {}  skipped {}  not monogenic {}  monogenic {}  inconclusive {}\ncounterexamples {:?}\n",
        sm.pairs, sm.solved, sm.skipped, sm.not_monogenic, sm.monogenic, sm.inconclusive, sm.counterexamples
    ));
    let v = to_value(&rep);
    if !sm.counterexamples.is_empty() {
        return Err(Failure::Check(format!("{}monogenic composites found", s)));
    }
    Ok((s, v))
}

fn d3_cmd(a: u64, r: i64, cap: u32) -> Outcome {
    let rep = d3_partial_search(a, r, cap)?;
    Ok((render_report(&rep), to_value(&rep)))
}

fn check_example5(cap: u32) -> Outcome {
    let l = NumberField::with_power_basis(IntPoly::from_i64s(&[1, -1, -4, 0, 1]), None)?;
    let dl = l.discriminant().to_string();
    let k = composite(l, 1, cap)?;
    let alpha = CompositeElement::new(vec![0; 4], vec![0, 1, 0, 0]);
    let chi = k.char_poly(&alpha)?;
    let g = RatPoly::from_i64s(&[1, 0, 9, 0, 18, 0, 8, 0, 1]);
    let idx = k.composite_index(&alpha)?;
    let fac = k.factors(&alpha)?;
    let form = k.real_field().index_form()?;
    let bounds = theorem_main_bounds(&k);
    let checks = [
        ("D_L = 1957", dl == "1957"),
        ("D_K = 980441344", k.discriminant().to_string() == "980441344"),
        ("char poly of i*xi = x^8 + 8x^6 + 18x^4 + 9x^2 + 1", chi == g),
        ("composite index of i*xi = 1", idx.to_string() == "1"),
        ("factors are units", fac.all_units()),
        ("bounds hold", satisfies_bounds(&form, &bounds, alpha.x_tail(), alpha.y_tail())),
    ];
    let mut text = String::new();
    for (name, ok) in &checks {
        text.push_str(&format!("{} {}\n", if *ok { "PASS" } else { "FAIL" }, name));
    }
    text.push_str(&format!("D_K = {}\n", k.discriminant()));
    let all = checks.iter().all(|c| c.1);
    let v = json!({
        "d_l": dl,
        "d_k": k.discriminant().to_string(),
        "char_poly": chi.coeffs().iter().map(format_rational).collect::<Vec<_>>(),
        "index": idx.to_string(),
        "eq1": fac.eq1.to_string(),
        "eq2": fac.eq2.to_string(),
        "third": fac.third.to_string(),
        "checks": checks.iter().map(|(n, ok)| json!({"check": n, "pass": ok})).collect::<Vec<_>>(),
        "pass": all,
    });
    if all {
        Ok((text, v))
    } else {
        Err(Failure::Check(text))
    }
}

fn identity_cmd(args: &FieldArgs, d: i64, samples: usize, range: i64, seed: u64, cap: u32) -> Outcome {
    let (l, _) = load_field(args)?;
    let n = l.degree();
    let k = composite(l, d, cap)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut mismatches = Vec::new();
    for _ in 0..samples {
        let x: Vec<i64> = (0..n).map(|_| rng.gen_range(-range..=range)).collect();
        let y: Vec<i64> = (0..n).map(|_| rng.gen_range(-range..=range)).collect();
        let alpha = CompositeElement::new(x, y);
        let fac = k.factors(&alpha)?;
        let idx = k.composite_index(&alpha)?;
        if fac.product_abs() != idx {
            mismatches.push(json!({"x": alpha.x, "y": alpha.y, "index": idx.to_string(), "product": fac.product_abs().to_string()}));
        }
    }
    let text = format!("{} samples, {} mismatches (seed {})\n", samples, mismatches.len(), seed);
    let v = json!({"samples": samples, "seed": seed, "d": d, "mismatches": mismatches});
    if mismatches.is_empty() {
        Ok((text, v))
    } else {
        Err(Failure::Check(text))
    }
}

fn exit_code(e: &Error) -> u8 {
    match e.class() {
        ErrorClass::Parse => 2,
        ErrorClass::Validation => 3,
        ErrorClass::Precision => 4,
        ErrorClass::Internal => 5,
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(j) = cli.jobs {
        if j == 0 {
            eprintln!("error: --jobs must be at least 1");
            return ExitCode::from(2);
        }
        rayon::ThreadPoolBuilder::new().num_threads(j).build_global().expect("thread pool");
    }
    let cap = cli.precision_cap;
    let out = match &cli.command {
        Command::FieldInfo { field } => field_info(field),
        Command::Index { field, coords } => index_cmd(field, coords),
        Command::CompositeIndex { field, d, x, y } => composite_index_cmd(field, *d, x, y, cap),
        Command::Solve { field, d, pib, box_radius } => solve_cmd(field, *d, pib.as_deref(), *box_radius, cap),
        Command::VerifyCq { a_max, d_max, box_radius, timings } => verify_cq_cmd(*a_max, *d_max, *box_radius, *timings, cap),
        Command::D3Search { a, box_radius } => d3_cmd(*a, *box_radius, cap),
        Command::CheckExample5 => check_example5(cap),
        Command::IdentityCheck { field, d, samples, range } => identity_cmd(field, *d, *samples, *range, cli.seed, cap),
    };
    match out {
        Ok((text, value)) => {
            let emit_json = |v: &Value| -> std::io::Result<()> {
                let s = serde_json::to_string_pretty(v).expect("json") + "\n";
                match cli.json.as_deref() {
                    Some("-") => {
                        print!("{}", s);
                        Ok(())
                    }
                    Some(path) => fs::write(path, s),
                    None => Ok(()),
                }
            };
            if cli.json.as_deref() != Some("-") {
                print!("{}", text);
            }
            if let Err(e) = emit_json(&value) {
                eprintln!("error: writing JSON: {}", e);
                return ExitCode::from(2);
            }
            ExitCode::SUCCESS
        }
        Err(Failure::Check(text)) => {
            print!("{}", text);
            ExitCode::from(1)
        }
        Err(Failure::Error(e)) => {
            eprintln!("error: {}", e);
            ExitCode::from(exit_code(&e))
        }
    }
}
