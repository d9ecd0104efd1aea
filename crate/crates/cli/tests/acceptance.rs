use std::collections::BTreeSet;
use std::process::{Command, ExitCode};
use std::sync::Arc;
use std::time::{Duration, Instant};

use monogen_core::composite::{CompositeElement, CompositeField};
use monogen_core::exact::resultant::discriminant;
use monogen_core::number_field::canonical_sign;
use monogen_core::simplest_quartic::GridOptions;
use monogen_core::solver::satisfies_bounds;
use monogen_core::*;
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const SEED: u64 = 20240611;
const EXAMPLE_LIMIT: Duration = Duration::from_secs(1);
const TABLE_LIMIT: Duration = Duration::from_secs(60);
const GRID_LIMIT: Duration = Duration::from_secs(600);
const GRID_JOBS: usize = 4;
const GRID_A_MAX: u64 = 20;
const GRID_D_MAX: u64 = 30;
const GRID_BOX: i64 = 20;
const IDENTITY_SAMPLES: usize = 1020;
const IDENTITY_RANGE: i64 = 5;
const LAW_SAMPLES: usize = 500;
const LAW_RANGE: i64 = 6;
const FAMILY_A_MAX: u64 = 50;
const CAP: u32 = 8192;

type Check = std::result::Result<String, String>;

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> std::result::Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn err(e: Error) -> String {
    e.to_string()
}

fn example_field() -> Result<Arc<NumberField>> {
    Ok(Arc::new(NumberField::with_power_basis(IntPoly::from_i64s(&[1, -1, -4, 0, 1]), None)?))
}

fn worked_example() -> Check {
    let start = Instant::now();
    let k = CompositeField::new(example_field().map_err(err)?, ImagQuadField::new(1).map_err(err)?).map_err(err)?;
    let alpha = CompositeElement::new(vec![0; 4], vec![0, 1, 0, 0]);
    ensure(k.real_field().discriminant() == &BigInt::from(1957), || "D_L != 1957".into())?;
    ensure(k.discriminant() == &BigInt::from(980441344u64), || format!("D_K = {}", k.discriminant()))?;
    let chi = k.char_poly(&alpha).map_err(err)?;
    ensure(chi == RatPoly::from_i64s(&[1, 0, 9, 0, 18, 0, 8, 0, 1]), || format!("char poly {:?}", chi))?;
    ensure(k.composite_index(&alpha).map_err(err)?.is_one(), || "index != 1".into())?;
    let fac = k.factors(&alpha).map_err(err)?;
    ensure(fac.all_units(), || format!("factors {} {} {}", fac.eq1, fac.eq2, fac.third))?;
    let form = k.real_field().index_form().map_err(err)?;
    ensure(satisfies_bounds(&form, &theorem_main_bounds(&k), alpha.x_tail(), alpha.y_tail()), || "bounds".into())?;
    let t = start.elapsed();
    ensure(t < EXAMPLE_LIMIT, || format!("took {:?}", t))?;
    Ok(format!("D_K = 980441344, index 1, unit factors, {:?}", t))
}

fn generator_tables() -> Check {
    let start = Instant::now();
    let mut total = 0;
    for (a, r) in [(2u64, 15i64), (4, 10)] {
        let l = make_simplest_quartic(a).map_err(err)?;
        let found: BTreeSet<Vec<i64>> =
            enumerate_bounded_index(&l, &BigInt::one(), r).map_err(err)?.into_iter().map(|(v, _)| v).collect();
        let expected: BTreeSet<Vec<i64>> = olajos_generators(a)
            .into_iter()
            .map(|mut v| {
                canonical_sign(&mut v);
                v
            })
            .collect();
        ensure(found == expected, || format!("a={}: box search {:?} vs table {:?}", a, found, expected))?;
        for v in &expected {
            let idx = l.element_index(v).map_err(err)?;
            ensure(idx.is_one(), || format!("a={} {:?}: index {}", a, v, idx))?;
        }
        total += expected.len();
    }
    let t = start.elapsed();
    ensure(t < TABLE_LIMIT, || format!("took {:?}", t))?;
    Ok(format!("{} generators reproduced and verified, {:?}", total, t))
}

fn cq_grid() -> Check {
    let start = Instant::now();
    let pool = rayon::ThreadPoolBuilder::new().num_threads(GRID_JOBS).build().map_err(|e| e.to_string())?;
    let a_values: Vec<u64> = (1..=GRID_A_MAX).collect();
    let d_values: Vec<u64> = (1..=GRID_D_MAX).collect();
    let opts = GridOptions { box_radius: GRID_BOX, precision_cap: CAP, timings: false };
    let rep = pool.install(|| verify_theorem_cq(&a_values, &d_values, &opts));
    let s = &rep.summary;
    ensure(s.counterexamples.is_empty(), || format!("counterexamples {:?}", s.counterexamples))?;
    ensure(s.solved > 0 && s.not_monogenic == s.solved, || format!("{:?}", s))?;
    for g in &rep.grid {
        ensure(g.verdict.is_some() || g.skip_reason.is_some(), || format!("a={} d={} has no outcome", g.a, g.d))?;
        if g.verdict.is_some() {
            ensure(g.d != 3 && g.completeness.is_some(), || format!("a={} d={}", g.a, g.d))?;
        }
    }
    let t = start.elapsed();
    ensure(t < GRID_LIMIT, || format!("took {:?}", t))?;
    Ok(format!("{} solved NOT_MONOGENIC, {} skipped, 0 counterexamples, {:?}", s.solved, s.skipped, t))
}

fn identity() -> Check {
    let fields = [
        (example_field().map_err(err)?, 1i64),
        (example_field().map_err(err)?, 2),
        (example_field().map_err(err)?, 3),
        (Arc::new(make_simplest_quartic(1).map_err(err)?), 2),
        (Arc::new(make_simplest_quartic(2).map_err(err)?), 7),
        (Arc::new(make_simplest_quartic(5).map_err(err)?), 1),
    ];
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    let per = IDENTITY_SAMPLES.div_ceil(fields.len());
    let mut count = 0;
    for (l, d) in fields {
        let k = CompositeField::new(l, ImagQuadField::new(d).map_err(err)?).map_err(err)?;
        let form = k.real_field().index_form().map_err(err)?;
        for _ in 0..per {
            let x: Vec<i64> = (0..4).map(|_| rng.gen_range(-IDENTITY_RANGE..=IDENTITY_RANGE)).collect();
            let y: Vec<i64> = (0..4).map(|_| rng.gen_range(-IDENTITY_RANGE..=IDENTITY_RANGE)).collect();
            let alpha = CompositeElement::new(x, y);
            let fac = k.factors(&alpha).map_err(err)?;
            let idx = k.composite_index(&alpha).map_err(err)?;
            ensure(fac.product_abs() == idx, || format!("d={} {:?}: {} vs {}", d, alpha, fac.product_abs(), idx))?;
            let exact = form.eval_quad(k.quadratic(), alpha.x_tail(), alpha.y_tail());
            ensure(exact == fac.relative_form, || format!("d={} {:?}: relative form", d, alpha))?;
            ensure(k.quadratic().norm(&exact) == fac.eq1, || format!("d={} {:?}: eq1", d, alpha))?;
            count += 1;
        }
    }
    Ok(format!("{} elements over 6 (L, d) pairs agree", count))
}

fn family_laws() -> Check {
    let mut checked = 0;
    for a in 1..=FAMILY_A_MAX {
        let Ok(p) = SimplestQuarticParams::new(a) else { continue };
        let l = make_simplest_quartic(a).map_err(err)?;
        let expected = BigInt::from(4) * BigInt::from(a * a + 16).pow(3);
        ensure(p.poly_discriminant() == expected, || format!("a={}: disc f", a))?;
        ensure(discriminant(&p.poly().to_rat()).map_err(err)? == BigRational::from_integer(expected.clone()), || {
            format!("a={}: resultant disc", a)
        })?;
        let det = l.basis().det();
        let dl = &det * &det * BigRational::from_integer(expected);
        ensure(dl == BigRational::from_integer(l.discriminant().clone()), || format!("a={}: D_L", a))?;
        checked += 1;
    }
    Ok(format!("{} admissible a <= {} checked", checked, FAMILY_A_MAX))
}

fn index_laws() -> Check {
    let fields = [
        example_field().map_err(err)?,
        Arc::new(make_simplest_quartic(1).map_err(err)?),
        Arc::new(make_simplest_quartic(2).map_err(err)?),
        Arc::new(make_simplest_quartic(4).map_err(err)?),
        Arc::new(make_simplest_quartic(5).map_err(err)?),
    ];
    let mut rng = ChaCha8Rng::seed_from_u64(SEED ^ 0x5eed);
    for i in 0..LAW_SAMPLES {
        let l = &fields[i % fields.len()];
        let x: Vec<i64> = (0..3).map(|_| rng.gen_range(-LAW_RANGE..=LAW_RANGE)).collect();
        let disc = l.element_discriminant(&x).map_err(err)?;
        let q = &disc / l.discriminant();
        ensure(&q * l.discriminant() == disc && !q.is_negative(), || format!("{:?}: D/D_L", x))?;
        let r = q.sqrt();
        ensure(&r * &r == q, || format!("{:?}: D/D_L not a square", x))?;
        let idx = l.element_index(&x).map_err(err)?;
        ensure(idx.abs() == r, || format!("{:?}: index", x))?;

        let lambda: i64 = rng.gen_range(2..=5);
        let scaled: Vec<i64> = x.iter().map(|c| c * lambda).collect();
        let lhs = l.element_index(&scaled).map_err(err)?;
        ensure(lhs == BigInt::from(lambda).pow(6) * &idx, || format!("{:?}: homogeneity", x))?;

        let m: i64 = rng.gen_range(-50..=50);
        let e = l.element_from_tail(&x);
        let mut shifted = e.clone();
        shifted.coords[0] += BigRational::from_integer(m.into());
        let d1 = discriminant(&l.char_poly(&e).map_err(err)?).map_err(err)?;
        let d2 = discriminant(&l.char_poly(&shifted).map_err(err)?).map_err(err)?;
        ensure(d1 == d2, || format!("{:?}: translation by {}", x, m))?;
    }
    Ok(format!("{} vectors: square quotient, degree-6 homogeneity, translation invariance", LAW_SAMPLES))
}

fn bounds() -> Check {
    let l = Arc::new(make_simplest_quartic(2).map_err(err)?);
    let k3 = CompositeField::new(l.clone(), ImagQuadField::new(3).map_err(err)?).map_err(err)?;
    let b3 = theorem_main_bounds(&k3);
    ensure(b3.regime == Regime::ResD3 && b3.e == 6, || format!("{:?}", b3))?;
    ensure(b3.bound_x.exact() == Some(BigRational::from_integer(64.into())), || b3.bound_x.display())?;
    ensure(b3.bound_y.floor() == BigInt::from(2), || b3.bound_y.display())?;
    ensure(b3.bound_y.admits(&BigInt::from(2)) && !b3.bound_y.admits(&BigInt::from(3)), || b3.bound_y.display())?;
    let k7 = CompositeField::new(l, ImagQuadField::new(7).map_err(err)?).map_err(err)?;
    let b7 = theorem_main_bounds(&k7);
    ensure(b7.bound_y.exact() == Some(BigRational::new(64.into(), 343.into())), || b7.bound_y.display())?;
    ensure(b7.bound_y.floor().is_zero() && !b7.bound_y.admits(&BigInt::one()), || b7.bound_y.display())?;
    Ok(format!("d=3: {} and y-floor {}; d=7: y-bound {}", b3.bound_x.display(), b3.bound_y.floor(), b7.bound_y.display()))
}

fn run_cli(args: &[&str]) -> std::result::Result<(Vec<u8>, i32), String> {
    let out = Command::new(env!("CARGO_BIN_EXE_monogen")).args(args).output().map_err(|e| e.to_string())?;
    Ok((out.stdout, out.status.code().unwrap_or(-1)))
}

fn determinism() -> Check {
    let runs: [&[&str]; 4] = [
        &["--json", "-", "check-example5"],
        &["--json", "-", "solve", "--a", "2", "--d", "7", "--box", "6"],
        &["--json", "-", "verify-cq", "--a-max", "4", "--d-max", "7", "--box", "6"],
        &["--json", "-", "--seed", "7", "identity-check", "--a", "1", "--d", "2", "--samples", "20"],
    ];
    for args in runs {
        let (a, ca) = run_cli(args)?;
        let (b, cb) = run_cli(args)?;
        ensure(ca == 0 && cb == 0, || format!("{:?}: exit {} / {}", args, ca, cb))?;
        ensure(a == b, || format!("{:?}: output differs between runs", args))?;
        let v: serde_json::Value = serde_json::from_slice(&a).map_err(|e| format!("{:?}: {}", args, e))?;
        ensure(serde_json::to_vec_pretty(&v).map_err(|e| e.to_string())? == a.trim_ascii_end(), || {
            format!("{:?}: JSON does not re-serialize identically", args)
        })?;
    }
    let codes: [(&[&str], i32); 4] = [
        (&["index", "--a", "2", "--coords", "1,x"], 2),
        (&["index", "--a", "3", "--coords", "1,0,0"], 3),
        (&["solve", "--a", "2", "--d", "1"], 3),
        (&["--precision-cap", "64", "composite-index", "--a", "2", "--d", "7", "--x", "0,1,0", "--y", "1,0,0,0"], 4),
    ];
    for (args, want) in codes {
        let (_, code) = run_cli(args)?;
        ensure(code == want, || format!("{:?}: exit {} (want {})", args, code, want))?;
    }
    Ok("4 commands byte-identical across runs, exit codes 2/3/4 honored".into())
}

fn main() -> ExitCode {
    let criteria: [(&str, fn() -> Check); 8] = [
        ("worked example", worked_example),
        ("generator tables", generator_tables),
        ("simplest quartic grid", cq_grid),
        ("index factorization", identity),
        ("family discriminants", family_laws),
        ("index form laws", index_laws),
        ("bounds", bounds),
        ("determinism", determinism),
    ];
    let mut failed = 0;
    for (i, (name, f)) in criteria.iter().enumerate() {
        match f() {
            Ok(msg) => println!("PASS {} {}: {}", i + 1, name, msg),
            Err(msg) => {
                failed += 1;
                println!("FAIL {} {}: {}", i + 1, name, msg);
            }
        }
    }
    println!("{}/{} criteria passed", criteria.len() - failed, criteria.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
