//! Oracle-backed verification suites.
//!
//! Every criterion expands into a list of [`Check`]s recording both compared
//! values, so a report shows exactly what was matched against what.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::eichler::{embed_count, LocalQuadKind, LocalQuatKind, QuatAlgebra, QuatOrder};
use crate::error::{Error, Result};
use crate::factor::{first_irreducible, is_squarefree};
use crate::hurwitz::{
    denominator_divides_q_plus_one, hurwitz_h, hurwitz_h_zero, tamagawa_unit_volume, LevelPair, Strategy,
};
use crate::oracle::class_group::default_bound;
use crate::oracle::{brute_class_group, brute_embed_count, brute_unit_count, brute_unit_index, point_count_p1};
use crate::poly::Poly;
use crate::quad_class::{character_sum, class_data, class_number_maximal, unit_index_local};
use crate::symbols::{bracket_symbol, is_imaginary, is_preceq_zero};
use crate::theta::{
    split_level, t_support, t_support_scan, theta_lambda_table, theta_o_table, ThetaOParams,
    DEFAULT_MAX_DEG_CEILING,
};
use crate::FieldCtx;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Suite {
    ClassNum,
    Hurwitz,
    Embed,
    Theta,
    All,
}

impl Suite {
    pub fn parse(s: &str) -> Option<Self> {
        Some(match s {
            "classnum" => Suite::ClassNum,
            "hurwitz" => Suite::Hurwitz,
            "embed" => Suite::Embed,
            "theta" => Suite::Theta,
            "all" => Suite::All,
            _ => return None,
        })
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Suite::ClassNum => "classnum",
            Suite::Hurwitz => "hurwitz",
            Suite::Embed => "embed",
            Suite::Theta => "theta",
            Suite::All => "all",
        }
    }

    fn contains(self, other: Suite) -> bool {
        self == Suite::All || self == other
    }
}

/// One compared pair.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Check {
    pub criterion: &'static str,
    pub case: String,
    pub expected: String,
    pub actual: String,
    pub passed: bool,
}

impl Check {
    fn compare<T: fmt::Display + PartialEq>(criterion: &'static str, case: String, expected: T, actual: T) -> Self {
        let passed = expected == actual;
        Self { criterion, case, expected: expected.to_string(), actual: actual.to_string(), passed }
    }

    fn holds(criterion: &'static str, case: String, property: &str, ok: bool) -> Self {
        let actual = if ok { property.to_string() } else { format!("not ({property})") };
        Self { criterion, case, expected: property.to_string(), actual, passed: ok }
    }

    fn from_result<T: fmt::Display + PartialEq>(
        criterion: &'static str,
        case: String,
        expected: Result<T>,
        actual: Result<T>,
    ) -> Self {
        let show = |r: &Result<T>| match r {
            Ok(v) => v.to_string(),
            Err(e) => format!("error: {e}"),
        };
        let passed = matches!((&expected, &actual), (Ok(a), Ok(b)) if a == b);
        Self { criterion, case, expected: show(&expected), actual: show(&actual), passed }
    }
}

/// A named acceptance criterion and the suite it belongs to.
pub struct Criterion {
    pub id: &'static str,
    pub suite: Suite,
    pub description: &'static str,
    run: fn(u64) -> Vec<Check>,
}

impl Criterion {
    pub fn run(&self, seed: u64) -> Vec<Check> {
        (self.run)(seed)
    }
}

type ErrorMatcher = fn(&Error) -> bool;

pub const CRITERIA: &[Criterion] = &[
    Criterion {
        id: "maximal-class-numbers",
        suite: Suite::ClassNum,
        description: "q=3, squarefree imaginary d0 with deg <= 3: closed form = ideal-class enumeration (= P(1) for odd degree)",
        run: maximal_class_numbers,
    },
    Criterion {
        id: "order-class-numbers",
        suite: Suite::ClassNum,
        description: "q=3 orders t^3, 2t^3, t*c^2 and q=5 deg d <= 2: class_data = enumeration",
        run: order_class_numbers,
    },
    Criterion {
        id: "character-sum-vanishing",
        suite: Suite::ClassNum,
        description: "S_n = 0 for deg d0 <= n <= deg d0 + 2 on 20 random d0 per q in {3, 5}",
        run: character_sum_vanishing,
    },
    Criterion {
        id: "hurwitz-strategies",
        suite: Suite::Hurwitz,
        description: "divisor sum = local product on 100 random (levels, d), q in {3, 5}, deg d <= 4",
        run: hurwitz_strategies,
    },
    Criterion {
        id: "volume-identity",
        suite: Suite::Hurwitz,
        description: "vol * H(0) = -(q-1) on 20 random level pairs per q in {3, 5}",
        run: volume_identity,
    },
    Criterion {
        id: "embedding-tables",
        suite: Suite::Embed,
        description: "embed_count table regression and agreement with orbit counting for ‖p‖ = 3, ℓ in {0, 1}",
        run: embedding_tables,
    },
    Criterion {
        id: "local-unit-indices",
        suite: Suite::Embed,
        description: "unit_index_local = residue enumeration for ‖p‖ in {3, 5, 9}, ℓ in {0, 1, 2}, all splitting types",
        run: local_unit_indices,
    },
    Criterion {
        id: "theta-tables",
        suite: Suite::Theta,
        description: "theta-lambda (t^2+1, t+1) recomputed term by term; theta-o (1, t^2+t) positivity and denominators",
        run: theta_tables,
    },
    Criterion {
        id: "level-splitting-parity",
        suite: Suite::Theta,
        description: "100 random valid (frak_d, frak_n) give an even number of primes in d-n-; invalid inputs rejected",
        run: level_splitting_parity,
    },
];

/// All checks of a suite, grouped by criterion.
#[derive(Clone, Debug, Default)]
pub struct Report {
    pub seed: u64,
    pub criteria: Vec<(&'static str, Vec<Check>)>,
}

impl Report {
    pub fn passed(&self) -> bool {
        self.criteria.iter().all(|(_, checks)| !checks.is_empty() && checks.iter().all(|c| c.passed))
    }

    pub fn checks(&self) -> impl Iterator<Item = &Check> {
        self.criteria.iter().flat_map(|(_, c)| c.iter())
    }
}

pub fn run_suite(suite: Suite, seed: u64) -> Report {
    let criteria = CRITERIA
        .iter()
        .filter(|c| suite.contains(c.suite))
        .map(|c| (c.id, c.run(seed)))
        .collect();
    Report { seed, criteria }
}

pub fn criterion(id: &str) -> Option<&'static Criterion> {
    CRITERIA.iter().find(|c| c.id == id)
}

fn f(q: u64) -> FieldCtx {
    FieldCtx::new(q).expect("odd prime")
}

fn rng_for(seed: u64, tag: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed ^ tag.wrapping_mul(0x9e37_79b9_7f4a_7c15))
}

fn random_poly(rng: &mut ChaCha8Rng, ctx: FieldCtx, deg: usize) -> Poly {
    let q = ctx.q();
    let mut coeffs: Vec<u32> = (0..deg).map(|_| rng.gen_range(0..q)).collect();
    coeffs.push(rng.gen_range(1..q));
    Poly::from_residues(ctx, coeffs)
}

fn random_monic(rng: &mut ChaCha8Rng, ctx: FieldCtx, deg: usize) -> Poly {
    random_poly(rng, ctx, deg).monic()
}

fn random_squarefree_monic(rng: &mut ChaCha8Rng, ctx: FieldCtx, max_deg: usize) -> Poly {
    loop {
        let deg = rng.gen_range(0..=max_deg);
        let m = random_monic(rng, ctx, deg);
        if is_squarefree(&m) {
            return m;
        }
    }
}

fn random_levels(rng: &mut ChaCha8Rng, ctx: FieldCtx) -> LevelPair {
    loop {
        let a = random_squarefree_monic(rng, ctx, 2);
        let b = random_squarefree_monic(rng, ctx, 2);
        if let Ok(levels) = LevelPair::new(a, b) {
            return levels;
        }
    }
}

/// Imaginary d with deg d <= max_deg, biased towards nontrivial conductors.
fn random_imaginary(rng: &mut ChaCha8Rng, ctx: FieldCtx, max_deg: usize) -> Poly {
    loop {
        let d = if rng.gen_bool(0.5) {
            let deg = rng.gen_range(1..=max_deg / 2);
            let c = random_monic(rng, ctx, deg);
            let rest = max_deg - 2 * c.degree();
            let deg = rng.gen_range(0..=rest);
            let d0 = random_poly(rng, ctx, deg);
            &(&d0 * &c) * &c
        } else {
            let deg = rng.gen_range(0..=max_deg);
            random_poly(rng, ctx, deg)
        };
        if is_imaginary(&d) {
            return d;
        }
    }
}

fn squarefree_imaginary(ctx: FieldCtx, max_deg: usize) -> Vec<Poly> {
    Poly::nonzero_up_to_degree(ctx, max_deg)
        .filter(|d| is_imaginary(d) && is_squarefree(d))
        .collect()
}

fn maximal_class_numbers(_seed: u64) -> Vec<Check> {
    const ID: &str = "maximal-class-numbers";
    let cases = squarefree_imaginary(f(3), 3);
    cases
        .par_iter()
        .flat_map_iter(|d0| {
            let closed = class_number_maximal(d0);
            let h = closed.as_ref().map(|c| c.h).map_err(Clone::clone);
            let w = closed.as_ref().map(|c| c.w).map_err(Clone::clone);
            let mut checks = vec![
                Check::from_result(ID, format!("h({d0}) vs ideal classes"), h.clone(), brute_class_group(d0, default_bound(d0))),
                Check::from_result(ID, format!("w({d0}) vs unit count"), w, brute_unit_count(d0)),
            ];
            if d0.degree() % 2 == 1 {
                checks.push(Check::from_result(ID, format!("h({d0}) vs P(1)"), h, point_count_p1(d0)));
            }
            checks
        })
        .collect()
}

fn order_class_numbers(_seed: u64) -> Vec<Check> {
    const ID: &str = "order-class-numbers";
    let f3 = f(3);
    let p3 = |s: &str| Poly::parse(f3, s).expect("literal");
    let mut cases = vec![p3("t^3"), p3("2*t^3")];
    for c in Poly::monic_of_degree(f3, 0).chain(Poly::monic_of_degree(f3, 1)) {
        cases.push(&(&p3("t") * &c) * &c);
    }
    cases.extend(Poly::nonzero_up_to_degree(f(5), 2).filter(is_imaginary));
    let mut checks: Vec<Check> = cases
        .par_iter()
        .flat_map_iter(|d| {
            let data = class_data(d);
            let h = data.as_ref().map(|c| c.h).map_err(Clone::clone);
            let w = data.as_ref().map(|c| c.w).map_err(Clone::clone);
            let case = format!("q={} d={d}", d.q());
            [
                Check::from_result(ID, format!("h: {case}"), h, brute_class_group(d, default_bound(d))),
                Check::from_result(ID, format!("w: {case}"), w, brute_unit_count(d)),
            ]
        })
        .collect();
    checks.push(Check::from_result(ID, "worked value h(t^3)".into(), Ok(3), class_data(&p3("t^3")).map(|c| c.h)));
    checks
}

fn character_sum_vanishing(seed: u64) -> Vec<Check> {
    const ID: &str = "character-sum-vanishing";
    let mut checks = Vec::new();
    for q in [3u64, 5] {
        let ctx = f(q);
        let mut rng = rng_for(seed, 0x5100 + q);
        let mut d0s = Vec::new();
        while d0s.len() < 20 {
            let deg = rng.gen_range(1..=5);
            let d = random_poly(&mut rng, ctx, deg);
            if is_imaginary(&d) && is_squarefree(&d) {
                d0s.push(d);
            }
        }
        let found: Vec<Check> = d0s
            .par_iter()
            .flat_map_iter(|d0| {
                let n0 = d0.degree();
                (n0..=n0 + 2).map(move |n| Check::compare(ID, format!("q={q} S_{n}({d0})"), 0, character_sum(d0, n)))
            })
            .collect();
        checks.extend(found);
    }
    checks
}

fn hurwitz_strategies(seed: u64) -> Vec<Check> {
    const ID: &str = "hurwitz-strategies";
    let mut cases = Vec::new();
    for q in [3u64, 5] {
        let ctx = f(q);
        let mut rng = rng_for(seed, 0x4800 + q);
        for _ in 0..50 {
            let levels = random_levels(&mut rng, ctx);
            let d = random_imaginary(&mut rng, ctx, 4);
            cases.push((levels, d));
        }
    }
    let mut checks: Vec<Check> = cases
        .par_iter()
        .map(|(levels, d)| {
            Check::from_result(
                ID,
                format!("q={} (n+, n-) = ({}, {}) d={d}", d.q(), levels.n_plus(), levels.n_minus()),
                hurwitz_h(levels, d, Strategy::DefinitionSum),
                hurwitz_h(levels, d, Strategy::LocalProduct),
            )
        })
        .collect();
    let f3 = f(3);
    let t3 = Poly::parse(f3, "t^3").expect("literal");
    let trivial = LevelPair::trivial(f3);
    for strategy in [Strategy::DefinitionSum, Strategy::LocalProduct] {
        checks.push(Check::from_result(
            ID,
            format!("worked value H^(1,1)(t^3) via {strategy:?}"),
            Ok(BigRational::from_integer(4.into())),
            hurwitz_h(&trivial, &t3, strategy),
        ));
    }
    checks
}

fn volume_identity(seed: u64) -> Vec<Check> {
    const ID: &str = "volume-identity";
    let mut checks = Vec::new();
    for q in [3u64, 5] {
        let ctx = f(q);
        let mut rng = rng_for(seed, 0x7600 + q);
        for _ in 0..20 {
            let levels = random_levels(&mut rng, ctx);
            let product = tamagawa_unit_volume(&levels) * hurwitz_h_zero(&levels);
            checks.push(Check::compare(
                ID,
                format!("q={q} (n+, n-) = ({}, {})", levels.n_plus(), levels.n_minus()),
                BigRational::from_integer(BigInt::from(1) - BigInt::from(q)),
                product,
            ));
        }
    }
    checks
}

fn embedding_tables(_seed: u64) -> Vec<Check> {
    const ID: &str = "embedding-tables";
    use LocalQuadKind::*;
    let mut checks = Vec::new();
    // Table regression, one row per (E kind, ℓ = 0 / ℓ >= 1), columns
    // division maximal, matrix maximal, matrix hereditary.
    let rows = [
        (SplitEtale, [0, 1, 2], [0, 1, 2]),
        (UnramifiedField, [2, 1, 0], [0, 1, 2]),
        (RamifiedField, [1, 1, 1], [0, 1, 2]),
    ];
    let orders = [LocalQuatKind::DIVISION_MAXIMAL, LocalQuatKind::MATRIX_MAXIMAL, LocalQuatKind::MATRIX_HEREDITARY];
    for (kind, at_zero, at_positive) in rows {
        for (i, order) in orders.iter().enumerate() {
            for level in 0..=3 {
                let expected = if level == 0 { at_zero[i] } else { at_positive[i] };
                checks.push(Check::from_result(
                    ID,
                    format!("table {kind} ℓ={level} {}", order.as_str()),
                    Ok(expected),
                    embed_count(kind, level, *order),
                ));
            }
        }
        let bad = LocalQuatKind { algebra: QuatAlgebra::Division, order: QuatOrder::Hereditary };
        checks.push(Check::holds(
            ID,
            format!("table {kind} division-hereditary"),
            "rejected",
            embed_count(kind, 0, bad).is_err(),
        ));
    }
    let f3 = f(3);
    let mut oracle_cases = Vec::new();
    for prime in ["t", "t+1"] {
        let p = Poly::parse(f3, prime).expect("literal");
        for kind in LocalQuadKind::ALL {
            let d0 = Poly::nonzero_up_to_degree(f3, 1)
                .find(|d| d.valuation(&p) <= 1 && bracket_symbol(d, &p) == Ok(kind.symbol()))
                .expect("every splitting type occurs");
            for level in 0..=1u32 {
                for order in [LocalQuatKind::MATRIX_MAXIMAL, LocalQuatKind::MATRIX_HEREDITARY] {
                    oracle_cases.push((p.clone(), d0.clone(), kind, level, order));
                }
            }
        }
    }
    let oracle: Vec<Check> = oracle_cases
        .par_iter()
        .map(|(p, d0, kind, level, order)| {
            Check::from_result(
                ID,
                format!("orbits p={p} d0={d0} ({kind}) ℓ={level} {}", order.as_str()),
                embed_count(*kind, *level, *order),
                brute_embed_count(d0, p, *level, *order, 2 * level + 2),
            )
        })
        .collect();
    checks.extend(oracle);
    checks
}

fn local_unit_indices(_seed: u64) -> Vec<Check> {
    const ID: &str = "local-unit-indices";
    let mut cases = Vec::new();
    for (q, deg) in [(3u64, 1usize), (5, 1), (3, 2)] {
        let ctx = f(q);
        let p = first_irreducible(ctx, deg);
        for kind in LocalQuadKind::ALL {
            let d0 = Poly::nonzero_up_to_degree(ctx, deg + 1)
                .find(|d| {
                    is_imaginary(d) && is_squarefree(d) && bracket_symbol(d, &p) == Ok(kind.symbol())
                })
                .expect("every splitting type occurs");
            for level in 0..=2 {
                cases.push((p.clone(), d0.clone(), kind, level));
            }
        }
    }
    cases
        .par_iter()
        .map(|(p, d0, kind, level)| {
            Check::from_result(
                ID,
                format!("‖p‖={} p={p} d0={d0} ({kind}) ℓ={level}", p.norm_u64()),
                unit_index_local(d0, p, *level),
                brute_unit_index(d0, p, *level),
            )
        })
        .collect()
}

fn theta_tables(_seed: u64) -> Vec<Check> {
    const ID: &str = "theta-tables";
    let f3 = f(3);
    let p3 = |s: &str| Poly::parse(f3, s).expect("literal");
    let mut checks = Vec::new();

    let params = match split_level(&p3("t^2+1"), &p3("t+1")) {
        Ok(p) => p,
        Err(e) => {
            checks.push(Check::holds(ID, format!("split_level(t^2+1, t+1): {e}"), "valid levels", false));
            return checks;
        }
    };
    match theta_lambda_table(&params, 2, DEFAULT_MAX_DEG_CEILING) {
        Ok(table) => {
            let h0 = hurwitz_h_zero(params.levels());
            checks.push(Check::compare(
                ID,
                "theta-lambda constant term = -2 H(0)".into(),
                -h0.clone() * BigRational::from_integer(2.into()),
                table.constant_term.clone(),
            ));
            for (a, value) in &table.coefficients {
                let recomputed = recompute_intersection(&params, a, &h0);
                checks.push(Check::from_result(ID, format!("theta-lambda a={a}"), recomputed, Ok(value.clone())));
                let wider = t_support_scan(a, a.degree().div_ceil(2) + 1);
                checks.push(Check::holds(
                    ID,
                    format!("t_support({a}) stable under a wider scan"),
                    "equal supports",
                    wider == t_support(a),
                ));
            }
        }
        Err(e) => checks.push(Check::holds(ID, format!("theta-lambda table: {e}"), "table built", false)),
    }

    let levels = LevelPair::new(p3("1"), p3("t^2+t")).and_then(ThetaOParams::new);
    match levels.and_then(|l| theta_o_table(&l, 2, DEFAULT_MAX_DEG_CEILING)) {
        Ok(table) => {
            checks.push(Check::holds(
                ID,
                "theta-o constant term H(0) = -1/2".into(),
                "equal",
                table.constant_term == BigRational::new((-1).into(), 2.into()),
            ));
            for (d, value) in &table.coefficients {
                checks.push(Check::holds(ID, format!("theta-o M({d}) = {value} >= 0"), "nonnegative", !value.is_negative()));
                checks.push(Check::holds(
                    ID,
                    format!("theta-o M({d}) = {value} denominator | q+1"),
                    "divides",
                    denominator_divides_q_plus_one(value, 3),
                ));
                if !is_preceq_zero(d) {
                    checks.push(Check::compare(
                        ID,
                        format!("theta-o split index {d}"),
                        BigRational::zero(),
                        value.clone(),
                    ));
                }
            }
        }
        Err(e) => checks.push(Check::holds(ID, format!("theta-o table: {e}"), "table built", false)),
    }
    checks
}

/// 2·Σ_t H(frak_d (t² - 4a)) with every term evaluated by the local product.
fn recompute_intersection(params: &crate::theta::ThetaLambdaParams, a: &Poly, h0: &BigRational) -> Result<BigRational> {
    let four_a = a.scale(4 % a.q());
    let mut total = BigRational::zero();
    for t in Poly::all_below_degree(a.ctx(), a.degree().div_ceil(2) + 1) {
        let disc = &(&t * &t) - &four_a;
        if disc.is_zero() {
            total += h0.clone();
        } else if is_imaginary(&disc) {
            total += hurwitz_h(params.levels(), &(&params.frak_d * &disc), Strategy::LocalProduct)?;
        }
    }
    Ok(total * BigRational::from_integer(2.into()))
}

fn level_splitting_parity(seed: u64) -> Vec<Check> {
    const ID: &str = "level-splitting-parity";
    let mut checks = Vec::new();
    let mut valid = 0;
    let mut rng = rng_for(seed, 0x5000);
    let mut attempts = 0;
    while valid < 100 && attempts < 100_000 {
        attempts += 1;
        let ctx = f(if rng.gen_bool(0.5) { 3 } else { 5 });
        let (dd, dn) = (2 * rng.gen_range(1..=2), rng.gen_range(1..=3));
        let frak_d = random_monic(&mut rng, ctx, dd);
        let frak_n = random_monic(&mut rng, ctx, dn);
        if !is_squarefree(&frak_d) || !is_squarefree(&frak_n) || !frak_d.gcd(&frak_n).is_one() {
            continue;
        }
        match split_level(&frak_d, &frak_n) {
            Ok(params) => {
                valid += 1;
                let count = params.ramified_prime_count();
                checks.push(Check::compare(
                    ID,
                    format!("q={} (frak_d, frak_n) = ({frak_d}, {frak_n}): {count} primes, parity", ctx.q()),
                    0,
                    count % 2,
                ));
            }
            Err(Error::DegenerateLevel) => {}
            Err(e) => checks.push(Check::holds(ID, format!("({frak_d}, {frak_n}): {e}"), "accepted", false)),
        }
    }
    checks.push(Check::compare(ID, "valid pairs generated".into(), 100, valid));

    let f3 = f(3);
    let p3 = |s: &str| Poly::parse(f3, s).expect("literal");
    let invalid: [(&str, &str, ErrorMatcher); 5] = [
        ("t^2+1", "t", |e| matches!(e, Error::DegenerateLevel)),
        ("t", "t+1", |e| matches!(e, Error::OddDegree(_))),
        ("t^2", "t+1", |e| matches!(e, Error::NotSquarefree { .. })),
        ("t^2+t", "t", |e| matches!(e, Error::NotCoprime(..))),
        ("2*t^2+2", "t", |e| matches!(e, Error::NotMonic { .. })),
    ];
    for (d, n, expected) in invalid {
        let result = split_level(&p3(d), &p3(n));
        let actual = match &result {
            Ok(_) => "accepted".to_string(),
            Err(e) => format!("error: {e}"),
        };
        let passed = result.as_ref().err().is_some_and(expected);
        checks.push(Check {
            criterion: ID,
            case: format!("invalid ({d}, {n})"),
            expected: "documented configuration error".into(),
            actual,
            passed,
        });
    }
    checks
}
