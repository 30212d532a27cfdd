use ffcn_core::eichler::{embed_count, LocalQuadKind, LocalQuatKind, QuatAlgebra};
use ffcn_core::factor::is_squarefree;
use ffcn_core::oracle::brute_embed_count;
use ffcn_core::quad_class::class_data_for;
use ffcn_core::theta::{theta_lambda_table, theta_o_table};
use ffcn_core::verify::{run_suite, Suite};
use ffcn_core::{
    bracket_symbol, hurwitz_h, hurwitz_h_zero, split_level, tamagawa_unit_volume, BigRational, FieldCtx, LevelPair,
    Poly, QuadDiscriminant, Strategy, ThetaOParams,
};
use serde_json::{json, Map, Value};

use crate::output::{self, Document};
use crate::{Command, GlobalOpts};

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum StrategyArg {
    Both,
    Definition,
    Product,
}

/// Rendered output plus an optional verification failure (exit code 1).
pub struct Outcome {
    pub text: String,
    pub failure: Option<String>,
}

type CmdResult = Result<Outcome, String>;

fn field(q: u64) -> Result<FieldCtx, String> {
    FieldCtx::new(q).map_err(|e| e.to_string())
}

fn parse(ctx: FieldCtx, flag: &str, s: &str) -> Result<Poly, String> {
    Poly::parse(ctx, s).map_err(|e| format!("--{flag}: {e}"))
}

fn object(value: Value) -> Map<String, Value> {
    match value {
        Value::Object(m) => m,
        _ => unreachable!("bodies are JSON objects"),
    }
}

fn finish(global: &GlobalOpts, command: &'static str, q: Option<u32>, body: Value, failure: Option<String>) -> CmdResult {
    let doc = Document { command, q, seed: global.seed, body: object(body), table: None };
    Ok(Outcome { text: doc.render(global.output), failure })
}

pub fn run(command: &Command, global: &GlobalOpts) -> CmdResult {
    match command {
        Command::ClassNumber { q, d } => class_number(global, *q, d),
        Command::Hurwitz { q, nplus, nminus, d, strategy } => hurwitz(global, *q, nplus, nminus, d, *strategy),
        Command::HZero { q, nplus, nminus } => h_zero(global, *q, nplus, nminus),
        Command::SplitLevel { q, frakd, frakn } => split(global, *q, frakd, frakn),
        Command::ThetaO { q, nplus, nminus, max_deg } => theta_o(global, *q, nplus, nminus, *max_deg),
        Command::ThetaLambda { q, frakd, frakn, max_deg } => theta_lambda(global, *q, frakd, frakn, *max_deg),
        Command::EmbedLocal { kind, level, quat, oracle } => embed_local(global, kind, *level, quat, *oracle),
        Command::Verify { suite } => verify(global, suite),
    }
}

fn class_number(global: &GlobalOpts, q: u64, d: &str) -> CmdResult {
    let ctx = field(q)?;
    let d = parse(ctx, "d", d)?;
    let disc = QuadDiscriminant::new(&d).map_err(|e| e.to_string())?;
    let data = class_data_for(&disc).map_err(|e| e.to_string())?;
    let body = json!({
        "d": output::poly(&disc.d),
        "d0": output::poly(&disc.d0),
        "conductor": output::poly(&disc.f),
        "infinity_type": disc.itype.as_str(),
        "h": data.h,
        "w": data.w,
        "h_over_w": output::rational(&data.h_over_w),
    });
    finish(global, "class-number", Some(ctx.q()), body, None)
}

fn levels(ctx: FieldCtx, nplus: &str, nminus: &str) -> Result<LevelPair, String> {
    LevelPair::new(parse(ctx, "nplus", nplus)?, parse(ctx, "nminus", nminus)?).map_err(|e| e.to_string())
}

fn hurwitz(global: &GlobalOpts, q: u64, nplus: &str, nminus: &str, d: &str, strategy: StrategyArg) -> CmdResult {
    let ctx = field(q)?;
    let levels = levels(ctx, nplus, nminus)?;
    let d = parse(ctx, "d", d)?;
    let eval = |s| hurwitz_h(&levels, &d, s).map_err(|e| e.to_string());
    let definition = matches!(strategy, StrategyArg::Both | StrategyArg::Definition)
        .then(|| eval(Strategy::DefinitionSum))
        .transpose()?;
    let product = matches!(strategy, StrategyArg::Both | StrategyArg::Product)
        .then(|| eval(Strategy::LocalProduct))
        .transpose()?;
    let agree = match (&definition, &product) {
        (Some(a), Some(b)) => Some(a == b),
        _ => None,
    };
    let body = json!({
        "d": output::poly(&d),
        "n_plus": output::poly(levels.n_plus()),
        "n_minus": output::poly(levels.n_minus()),
        "definition_sum": definition.as_ref().map(output::rational),
        "local_product": product.as_ref().map(output::rational),
        "agree": agree,
    });
    let failure = (agree == Some(false)).then(|| "the two evaluation strategies disagree".to_string());
    finish(global, "hurwitz", Some(ctx.q()), body, failure)
}

fn h_zero(global: &GlobalOpts, q: u64, nplus: &str, nminus: &str) -> CmdResult {
    let ctx = field(q)?;
    let levels = levels(ctx, nplus, nminus)?;
    let h0 = hurwitz_h_zero(&levels);
    let volume = tamagawa_unit_volume(&levels);
    let product = &h0 * &volume;
    let expected = BigRational::from_integer((1 - i64::from(ctx.q())).into());
    let holds = product == expected;
    let body = json!({
        "n_plus": output::poly(levels.n_plus()),
        "n_minus": output::poly(levels.n_minus()),
        "h_zero": output::rational(&h0),
        "volume": output::rational(&volume),
        "product": output::rational(&product),
        "expected_product": output::rational(&expected),
        "identity_holds": holds,
    });
    let failure = (!holds).then(|| format!("volume * H(0) = {product}, expected {expected}"));
    finish(global, "h-zero", Some(ctx.q()), body, failure)
}

/// Verdicts on each split_level precondition, evaluated independently.
fn split_verdicts(frak_d: &Poly, frak_n: &Poly) -> Value {
    let monic_squarefree = |p: &Poly| !p.is_zero() && p.is_monic() && is_squarefree(p);
    json!({
        "frak_d_monic_squarefree": monic_squarefree(frak_d),
        "frak_n_monic_squarefree": monic_squarefree(frak_n),
        "coprime": frak_d.gcd(frak_n).is_one(),
        "frak_d_even_degree": frak_d.deg().is_some_and(|n| n % 2 == 0),
    })
}

fn split(global: &GlobalOpts, q: u64, frakd: &str, frakn: &str) -> CmdResult {
    let ctx = field(q)?;
    let frak_d = parse(ctx, "frakd", frakd)?;
    let frak_n = parse(ctx, "frakn", frakn)?;
    let verdicts = split_verdicts(&frak_d, &frak_n);
    let params = split_level(&frak_d, &frak_n).map_err(|e| e.to_string())?;
    let count = params.ramified_prime_count();
    let body = json!({
        "frak_d": output::poly(&frak_d),
        "frak_n": output::poly(&frak_n),
        "n_plus": output::poly(&params.n_plus),
        "n_minus": output::poly(&params.n_minus),
        "d_plus": output::poly(&params.d_plus),
        "d_minus": output::poly(&params.d_minus),
        "ramified_prime_count": count,
        "verdicts": verdicts,
        "nondegenerate": true,
        "even_ramification": count % 2 == 0,
    });
    finish(global, "split-level", Some(ctx.q()), body, None)
}

fn emit_table(global: &GlobalOpts, command: &'static str, q: u32, params: Value, table: &ffcn_core::FourierTable) -> CmdResult {
    let mut body = object(output::table(table));
    body.insert("params".into(), params);
    let doc = Document { command, q: Some(q), seed: global.seed, body, table: Some(table) };
    Ok(Outcome { text: doc.render(global.output), failure: None })
}

fn theta_o(global: &GlobalOpts, q: u64, nplus: &str, nminus: &str, max_deg: usize) -> CmdResult {
    let ctx = field(q)?;
    let params = ThetaOParams::new(levels(ctx, nplus, nminus)?).map_err(|e| e.to_string())?;
    let table = theta_o_table(&params, max_deg, global.max_deg_ceiling).map_err(|e| e.to_string())?;
    let p = json!({
        "n_plus": output::poly(params.levels.n_plus()),
        "n_minus": output::poly(params.levels.n_minus()),
    });
    emit_table(global, "theta-o", ctx.q(), p, &table)
}

fn theta_lambda(global: &GlobalOpts, q: u64, frakd: &str, frakn: &str, max_deg: usize) -> CmdResult {
    let ctx = field(q)?;
    let params = split_level(&parse(ctx, "frakd", frakd)?, &parse(ctx, "frakn", frakn)?).map_err(|e| e.to_string())?;
    let table = theta_lambda_table(&params, max_deg, global.max_deg_ceiling).map_err(|e| e.to_string())?;
    let p = json!({
        "frak_d": output::poly(&params.frak_d),
        "frak_n": output::poly(&params.frak_n),
        "n_plus": output::poly(&params.n_plus),
        "n_minus": output::poly(&params.n_minus),
        "d_plus": output::poly(&params.d_plus),
        "d_minus": output::poly(&params.d_minus),
    });
    emit_table(global, "theta-lambda", ctx.q(), p, &table)
}

fn parse_kind(s: &str) -> Result<LocalQuadKind, String> {
    match s {
        "split" | "split-etale" => Ok(LocalQuadKind::SplitEtale),
        "unramified" | "inert" => Ok(LocalQuadKind::UnramifiedField),
        "ramified" => Ok(LocalQuadKind::RamifiedField),
        _ => Err(format!("--kind {s:?}: expected split, unramified or ramified")),
    }
}

fn parse_quat(s: &str) -> Result<LocalQuatKind, String> {
    match s {
        "division-maximal" => Ok(LocalQuatKind::DIVISION_MAXIMAL),
        "matrix-maximal" => Ok(LocalQuatKind::MATRIX_MAXIMAL),
        "matrix-hereditary" => Ok(LocalQuatKind::MATRIX_HEREDITARY),
        "division-hereditary" => Err("hereditary orders are only considered in M_2(L)".into()),
        _ => Err(format!("--quat {s:?}: expected division-maximal, matrix-maximal or matrix-hereditary")),
    }
}

fn embed_local(global: &GlobalOpts, kind: &str, level: u32, quat: &str, oracle: bool) -> CmdResult {
    let e_kind = parse_kind(kind)?;
    let d_kind = parse_quat(quat)?;
    let value = embed_count(e_kind, level, d_kind).map_err(|e| e.to_string())?;
    let mut body = json!({
        "kind": e_kind.as_str(),
        "level": level,
        "quat": d_kind.as_str(),
        "value": value,
    });
    let mut failure = None;
    if oracle {
        if d_kind.algebra == QuatAlgebra::Division {
            return Err("--oracle only covers matrix orders".into());
        }
        if level > 1 {
            return Err("--oracle supports ℓ <= 1".into());
        }
        let ctx = field(3)?;
        let p = Poly::t(ctx);
        let d0 = Poly::nonzero_up_to_degree(ctx, 1)
            .find(|d| d.valuation(&p) <= 1 && bracket_symbol(d, &p) == Ok(e_kind.symbol()))
            .expect("every splitting type occurs at t");
        let brute = brute_embed_count(&d0, &p, level, d_kind, 2 * level + 2).map_err(|e| e.to_string())?;
        if brute != value {
            failure = Some(format!("table value {value} but {brute} orbits"));
        }
        body["oracle"] = json!({ "q": 3, "p": output::poly(&p), "d0": output::poly(&d0), "orbits": brute });
    }
    finish(global, "embed-local", None, body, failure)
}

fn verify(global: &GlobalOpts, suite: &str) -> CmdResult {
    let suite = Suite::parse(suite)
        .ok_or_else(|| format!("--suite {suite:?}: expected classnum, hurwitz, embed, theta or all"))?;
    let report = run_suite(suite, global.seed);
    let criteria: Vec<Value> = report
        .criteria
        .iter()
        .map(|(id, checks)| {
            let rows: Vec<Value> = checks
                .iter()
                .map(|c| json!({ "case": c.case, "expected": c.expected, "actual": c.actual, "passed": c.passed }))
                .collect();
            let passed = !checks.is_empty() && checks.iter().all(|c| c.passed);
            json!({ "id": id, "passed": passed, "checks": rows })
        })
        .collect();
    let failed: Vec<&str> = report
        .criteria
        .iter()
        .filter(|(_, checks)| checks.is_empty() || checks.iter().any(|c| !c.passed))
        .map(|(id, _)| *id)
        .collect();
    let body = json!({ "suite": suite.as_str(), "passed": report.passed(), "criteria": criteria });
    let failure = (!failed.is_empty()).then(|| failed.join(", "));
    finish(global, "verify", None, body, failure)
}
