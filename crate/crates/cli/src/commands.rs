use std::fs;
use std::path::Path;

use anyhow::{Context, Result};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::Value;

use rchain_core::builders::{
    build_kind, even_default_enlargement, half_rank, solve_enlargement, solve_enlargement_generic,
    Kind,
};
use rchain_core::dual::{analyze as analyze_tensor, carrier};
use rchain_core::json::{self, Provenance};
use rchain_core::rational::{self, Rational};
use rchain_core::roots::{classify_type, root_system, theta_filtration, Series};
use rchain_core::{Error, Execution};

/// Process exit statuses.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Status {
    Ok = 0,
    CybeFails = 1,
    BadInput = 2,
    Inconsistent = 3,
}

pub fn exit_code(e: &anyhow::Error) -> Status {
    match e.downcast_ref::<Error>() {
        Some(Error::Inconsistent(_)) => Status::Inconsistent,
        _ => Status::BadInput,
    }
}

fn emit(v: &Value, out: Option<&Path>, summary: &str) -> Result<()> {
    let text = json::to_canonical_string(v);
    match out {
        Some(path) => {
            fs::write(path, text).with_context(|| format!("cannot write {}", path.display()))?;
            println!("{summary}");
        }
        None => print!("{text}"),
    }
    Ok(())
}

fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path).with_context(|| format!("cannot read {}", path.display()))
}

/// A nonzero rational `p/q` with `|p| <= 5`, `1 <= q <= 4`.
fn draw(rng: &mut ChaCha8Rng) -> Rational {
    let p = loop {
        let p: i64 = rng.gen_range(-5..=5);
        if p != 0 {
            break p;
        }
    };
    rational::frac(p, rng.gen_range(1..=4))
}

fn params(
    given: Option<&str>,
    m: usize,
    rng: Option<&mut ChaCha8Rng>,
) -> Result<Option<Vec<Rational>>> {
    Ok(match (given, rng) {
        (Some(s), _) => Some(rational::parse_list(s)?),
        (None, Some(rng)) => Some((0..m).map(|_| draw(rng)).collect()),
        (None, None) => None,
    })
}

pub fn build(
    kind: &str,
    n: usize,
    xi: Option<&str>,
    zeta: Option<&str>,
    seed: Option<u64>,
    out: Option<&Path>,
) -> Result<Status> {
    let kind: Kind = kind.parse()?;
    let m = half_rank(n)?;
    let mut rng = seed.map(ChaCha8Rng::seed_from_u64);
    let xi = params(xi, m, rng.as_mut())?;
    let zeta = if kind.uses_zeta() {
        params(zeta, m, rng.as_mut())?
    } else {
        None
    };
    let r = build_kind(kind, n, xi.clone(), zeta.clone())?;
    let ones = || vec![rational::one(); m];
    let provenance = Provenance {
        kind,
        n,
        xi: xi.unwrap_or_else(ones),
        zeta: kind.uses_zeta().then(|| zeta.unwrap_or_else(ones)),
        normalization_c: match kind {
            Kind::Ech => Some(solve_enlargement(n)?.normalization_c),
            _ => None,
        },
    };
    let c = carrier(&r);
    let summary = format!(
        "{kind} n={n}: {} terms; carrier dim {}, contains_borel {}, neg_dim {}",
        r.term_count(),
        c.dim,
        c.contains_borel,
        c.negative_intersection_dim
    );
    emit(&json::tensor_file(&r, Some(&provenance)), out, &summary)?;
    Ok(Status::Ok)
}

pub fn verify(input: &Path, out: Option<&Path>) -> Result<Status> {
    let (r, _) = json::read_tensor_file(&read(input)?)?;
    let report = json::verify_report(&r)?;
    let holds = report["holds"] == Value::Bool(true);
    let summary = format!(
        "CYBE {}: {} residual terms",
        if holds { "holds" } else { "fails" },
        report["residual_term_count"]
    );
    emit(&report, out, &summary)?;
    Ok(if holds { Status::Ok } else { Status::CybeFails })
}

pub fn solve(n: usize, exploratory: bool, out: Option<&Path>) -> Result<Status> {
    let sol = if n.is_multiple_of(2) && exploratory {
        solve_enlargement_generic(&even_default_enlargement(n)?, Execution::default())?
    } else {
        solve_enlargement(n)?
    };
    let summary = format!(
        "n={n}: unique {}, c = {}, CYBE {}",
        sol.unique,
        rational::format(&sol.normalization_c),
        sol.cybe_holds
    );
    emit(&json::solution(&sol), out, &summary)?;
    Ok(Status::Ok)
}

pub fn analyze(input: &Path, out: Option<&Path>) -> Result<Status> {
    let (r, provenance) = json::read_tensor_file(&read(input)?)?;
    let a = analyze_tensor(&r);
    if !a.graded && provenance.is_none() && !r.is_zero() {
        return Err(
            Error::Unrecognized("no chain structure and no provenance header".into()).into(),
        );
    }
    let summary = format!(
        "carrier dim {}, contains_borel {}, quasiprimitive {:?}",
        a.carrier.dim, a.carrier.contains_borel, a.quasiprimitive
    );
    emit(&json::analysis(&a), out, &summary)?;
    Ok(Status::Ok)
}

pub fn roots(series: &str, rank: usize, out: Option<&Path>) -> Result<Status> {
    let series: Series = series.parse()?;
    let rs = root_system(series, rank)?;
    let filtration = theta_filtration(&rs);
    let class = classify_type(series, rank)?;
    let summary = format!(
        "{}{rank}: type {}, f = {}, dim V_f = {}",
        series.letter(),
        class.type_tag,
        class.f,
        class.dim_last
    );
    emit(
        &json::classification(series, rank, &filtration, &class),
        out,
        &summary,
    )?;
    Ok(Status::Ok)
}
