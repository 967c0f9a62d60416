use std::io::Write;

use fracwave::mittag::{mittag_leffler, ml, MLSpec, Policy};
use fracwave::solutions::{OdibatSolution, QuinticSolution, SimilaritySolution};
use fracwave::subspace::check_invariance;
use fracwave::tolerances::Tolerances;
use fracwave::verify::{
    odibat_samples, periodic_samples, verify_odibat, verify_quintic_pde, verify_quintic_system,
    verify_similarity, ResidualReport, Window,
};
use fracwave::{Basis, KOperator, Scalar};
use serde::Serialize;
use serde_json::json;

use crate::output::{with_sink, write_csv, write_json};
use crate::{
    Command, Failure, Family, FigureArgs, Format, GridArgs, InvarianceArgs, MlArgs, OpKind,
    PolicyArg, TargetArg, TextFormat, VerifyArgs, EXIT_OK, EXIT_VERIFY,
};

const SCHEMA: u32 = 1;

pub fn dispatch(
    cmd: Command,
    tol: Tolerances,
    out: &mut dyn Write,
    err: &mut dyn Write,
) -> Result<u8, Failure> {
    match cmd {
        Command::Ml(a) => ml_table(a, out),
        Command::Invariance(a) => invariance(a, out),
        Command::Solve(a) => solve(a.family, out),
        Command::Verify(a) => verify(a, tol, out, err),
        Command::Figure(a) => figure(a, out),
    }
    .map(|c| c.unwrap_or(EXIT_OK))
}

fn ml_table(args: MlArgs, out: &mut dyn Write) -> Result<Option<u8>, Failure> {
    let (header, rows) = if let (Some(a), Some(z)) = (args.a, &args.z) {
        let policy = match args.policy {
            PolicyArg::Auto => Policy::Auto,
            PolicyArg::Series => Policy::Series,
            PolicyArg::Asymptotic => Policy::Asymptotic,
            PolicyArg::Integral => Policy::Integral,
            PolicyArg::ExpSpecial => Policy::ExpSpecial,
            PolicyArg::TrigSpecial => Policy::TrigSpecial,
        };
        let spec = MLSpec::new(a, args.b)?.with_policy(policy);
        let rows = z.0.iter().map(|&z| Ok(vec![z, ml(&spec, z)?])).collect::<Result<Vec<_>, Failure>>()?;
        (vec!["z".to_string(), "value".to_string()], rows)
    } else if let (Some(family), Some(t)) = (&args.two_alpha, &args.t) {
        let mut header = vec!["t".to_string()];
        header.extend(family.0.iter().map(|v| format!("two_alpha={v}")));
        let rows = t
            .0
            .iter()
            .map(|&t| {
                let mut row = vec![t];
                for &ta in &family.0 {
                    row.push(family_value(ta, 1.0, t)?);
                }
                Ok(row)
            })
            .collect::<Result<Vec<_>, Failure>>()?;
        (header, rows)
    } else {
        return Err(Failure::usage("ml needs either --a with --z, or --two-alpha with --t"));
    };
    with_sink(&args.out, out, |w| write_csv(w, &header, &rows))?;
    Ok(None)
}

/// `E_{2α,1}(-μ̄² t^{2α})`
fn family_value(two_alpha: f64, mubar: f64, t: f64) -> Result<f64, Failure> {
    if !(two_alpha > 0.0) {
        return Err(Failure::usage(format!("2α must be positive, got {two_alpha}")));
    }
    if t < 0.0 {
        return Err(Failure::usage(format!("t must be >= 0, got {t}")));
    }
    Ok(mittag_leffler(two_alpha, 1.0, -mubar * mubar * t.powf(two_alpha))?)
}

fn invariance(args: InvarianceArgs, out: &mut dyn Write) -> Result<Option<u8>, Failure> {
    let or = |v: &Option<Scalar>, d: Scalar| v.clone().unwrap_or(d);
    let (op, default_basis) = match args.op {
        OpKind::Third => (KOperator::third_order(), "monomial:3".to_string()),
        OpKind::Quintic => (
            KOperator::quintic(
                or(&args.nu, Scalar::one()),
                or(&args.beta, Scalar::ratio(9, 2)),
                or(&args.gamma, Scalar::int(2)),
            )?,
            "trig:1".to_string(),
        ),
        OpKind::RosenauHyman => (KOperator::rosenau_hyman(), "trig:1".to_string()),
        OpKind::Odibat => (KOperator::odibat(args.a.clone())?, format!("trig:sqrt({})", args.a)),
        OpKind::Custom => {
            let mut op = KOperator {
                nu: or(&args.nu, Scalar::zero()),
                beta: or(&args.beta, Scalar::zero()),
                gamma_c: or(&args.gamma, Scalar::zero()),
                p: args.p,
                n: args.n,
                m: args.m,
                convective: args.convective.clone(),
            };
            op.validate()?;
            if op.convective.as_ref().is_some_and(Scalar::is_zero) {
                op.convective = None;
            }
            let basis = args
                .basis
                .clone()
                .ok_or_else(|| Failure::usage("--op custom needs --basis"))?;
            (op, basis)
        }
    };
    let basis: Basis = args.basis.as_deref().unwrap_or(&default_basis).parse()?;
    let report = check_invariance(&op, &basis)?;
    with_sink(&args.out, out, |w| match args.format {
        TextFormat::Text => Ok(write!(w, "{report}")?),
        TextFormat::Json => write_json(w, &json!({ "schema": SCHEMA, "report": report })),
    })?;
    Ok(None)
}

#[derive(Serialize)]
struct Point {
    x: f64,
    t: f64,
    u: f64,
}

fn solve(family: Family, out: &mut dyn Write) -> Result<Option<u8>, Failure> {
    let (record, grid, eval): (serde_json::Value, GridArgs, Box<dyn Fn(f64, f64) -> fracwave::Result<f64>>) =
        match family {
            Family::Similarity { alpha, grid } => {
                let s = SimilaritySolution::build(alpha)?;
                let rec = json!({ "kind": "similarity", "solution": s, "C0_alternative": s.c0_reference() });
                (rec, grid, Box::new(move |x, t| s.eval(x, t)))
            }
            Family::Quintic { params: p, grid } => {
                let q = QuinticSolution::build(p.alpha, p.nu, p.beta, p.gamma, p.c)?;
                (json!({ "kind": "quintic", "solution": q }), grid, Box::new(move |x, t| q.eval(x, t)))
            }
            Family::Odibat { params: p, grid } => {
                let o = OdibatSolution::build(p.a, p.c, p.alpha)?;
                (json!({ "kind": "odibat", "solution": o }), grid, Box::new(move |x, t| o.eval(x, t)))
            }
        };
    let default_t = if record["kind"] == "similarity" { "0.5:5.01:0.5" } else { "0:5.01:0.5" };
    let times = match &grid.t {
        Some(t) => t.0.clone(),
        None => default_t.parse::<crate::Samples>().map_err(Failure::usage)?.0,
    };
    let mut points = Vec::new();
    for &t in &times {
        for &x in &grid.x.0 {
            points.push(Point { x, t, u: eval(x, t)? });
        }
    }
    with_sink(&grid.out, out, |w| match grid.format {
        Format::Csv => {
            let rows: Vec<Vec<f64>> = points.iter().map(|p| vec![p.x, p.t, p.u]).collect();
            write_csv(w, &["x".into(), "t".into(), "u".into()], &rows)
        }
        Format::Json => write_json(w, &json!({ "schema": SCHEMA, "solution": record, "values": points })),
    })?;
    Ok(None)
}

fn verify(
    args: VerifyArgs,
    mut tol: Tolerances,
    out: &mut dyn Write,
    err: &mut dyn Write,
) -> Result<Option<u8>, Failure> {
    if let Some(v) = args.tol_analytic {
        tol.analytic = v;
    }
    if let Some(v) = args.tol_numerical {
        tol.numerical = v;
    }
    let window = Window { t0: args.t0, t_end: args.t_end, h: args.h, refinements: args.refinements };
    let xs = args.x.as_ref().map(|s| s.0.clone());
    let report: ResidualReport = match args.target {
        TargetArg::SimilaritySystem => verify_similarity(args.alpha)?,
        TargetArg::QuinticSystem => verify_quintic_system(args.alpha, args.mubar, &window)?,
        TargetArg::QuinticPde => {
            let q = QuinticSolution::build(args.alpha, args.nu, args.beta, args.gamma, args.c)?;
            verify_quintic_pde(&q, &window, &xs.unwrap_or_else(|| periodic_samples(16)))?
        }
        TargetArg::OdibatPde => {
            let o = OdibatSolution::build(args.a, args.c_speed, args.alpha)?;
            let xs = match xs {
                Some(x) => x,
                None => odibat_samples(&o, window.t_end, 16)?,
            };
            verify_odibat(&o, &window, &xs)?
        }
    };
    let passed = report.check(&tol);
    let record = json!({
        "schema": SCHEMA,
        "passed": passed,
        "tolerances": { "analytic": tol.analytic, "numerical": tol.numerical },
        "report": report,
    });
    with_sink(&args.out, out, |w| write_json(w, &record))?;
    let verdict = match passed {
        Some(true) => "PASS",
        Some(false) => "FAIL",
        None => "REPORT",
    };
    writeln!(err, "{} {verdict}", report.summary())?;
    Ok((passed == Some(false)).then_some(EXIT_VERIFY))
}

fn figure(args: FigureArgs, out: &mut dyn Write) -> Result<Option<u8>, Failure> {
    if !(args.dt > 0.0 && args.t_end > 0.0) {
        return Err(Failure::usage("--dt and --t-end must be positive"));
    }
    let steps = (args.t_end / args.dt).round() as usize;
    let mut rows = Vec::new();
    for &ta in &args.two_alpha.0 {
        for k in 0..=steps {
            let t = k as f64 * args.dt;
            rows.push(vec![ta, t, family_value(ta, args.mubar, t)?]);
        }
    }
    let header = ["two_alpha", "t", "value"].map(String::from);
    with_sink(&args.out, out, |w| write_csv(w, &header, &rows))?;
    Ok(None)
}
