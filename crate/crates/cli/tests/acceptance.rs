//! Acceptance suite: one PASS/FAIL line per criterion, all checks exact.

use std::panic::{self, AssertUnwindSafe};
use std::path::Path;
use std::process::Command;
use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use rchain_core::builders::{
    build_dj_sl3, build_e_hat, build_ech, build_fch, build_rch, build_rch_with_cartans, build_rj,
    build_rotation, solve_enlargement, ChainParams,
};
use rchain_core::dual::{
    analyze, assign_gradings, diagram_quasiprimitive, dual_structure, quasiprimitive_set,
    strictly_quasiprimitive, Color, DualAlgebra,
};
use rchain_core::json::{tensor_file, to_canonical_string};
use rchain_core::lie::{bracket, chain_cartan, h_perp, matrix_unit, root_eval, RootVector};
use rchain_core::rational::{frac, one, zero, Rational};
use rchain_core::roots::{classify_type, Series, TypeTag};
use rchain_core::tensor::{schouten, wedge};
use rchain_core::{BiTensor, LieElement};

const ODD_N: [usize; 5] = [3, 5, 7, 9, 11];
const SEED: u64 = 0x5eed_c7be;

type Outcome = Result<String, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn ones(m: usize) -> Vec<Rational> {
    vec![one(); m]
}

fn nonzero(rng: &mut ChaCha8Rng) -> Rational {
    loop {
        let p: i64 = rng.gen_range(-9..=9);
        if p != 0 {
            return frac(p, rng.gen_range(1..=7));
        }
    }
}

fn draws(rng: &mut ChaCha8Rng, m: usize) -> Vec<Rational> {
    (0..m).map(|_| nonzero(rng)).collect()
}

fn cybe_zero(r: &BiTensor, what: &str) -> Result<(), String> {
    let s = schouten(r).map_err(|e| format!("{what}: {e}"))?;
    ensure(s.is_zero(), || {
        format!("{what}: {} residual terms", s.term_count())
    })
}

fn criterion_1() -> Outcome {
    let t = Instant::now();
    for n in ODD_N {
        cybe_zero(
            &build_fch(n, &ones((n - 1) / 2)).unwrap(),
            &format!("fch({n})"),
        )?;
    }
    let secs = t.elapsed().as_secs_f64();
    ensure(secs < 10.0, || format!("took {secs:.2}s"))?;
    Ok(format!(
        "fch(n, 1…1) CYBE exact for n = 3..11 in {secs:.2}s"
    ))
}

fn criterion_2() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    let mut checked = 0;
    for n in ODD_N {
        let m = (n - 1) / 2;
        let mut params = vec![ones(m)];
        params.extend((0..20).map(|_| draws(&mut rng, m)));
        for xi in &params {
            cybe_zero(
                &build_rotation(n, xi).unwrap(),
                &format!("rotation({n}, {xi:?})"),
            )?;
            cybe_zero(&build_rch(n, xi).unwrap(), &format!("rch({n}, {xi:?})"))?;
            checked += 2;
        }
    }
    Ok(format!(
        "{checked} rotation/rch tensors (1…1 and 20 seeded ξ per n) satisfy CYBE"
    ))
}

fn run_cli(args: &[&str]) -> std::process::Output {
    Command::new(env!("CARGO_BIN_EXE_rchain"))
        .args(args)
        .output()
        .expect("rchain binary runs")
}

fn write(dir: &Path, name: &str, r: &BiTensor) -> String {
    let path = dir.join(name);
    std::fs::write(&path, to_canonical_string(&tensor_file(r, None))).unwrap();
    path.to_string_lossy().into_owned()
}

fn criterion_3() -> Outcome {
    let dir = tempfile::tempdir().map_err(|e| e.to_string())?;
    let rch3 = build_rch(3, &[one()]).unwrap();
    let naive = &rch3 + &build_rj(3, &[one()], &[one()]).unwrap();
    let out = run_cli(&["verify", "--in", &write(dir.path(), "naive.json", &naive)]);
    let report: serde_json::Value =
        serde_json::from_slice(&out.stdout).map_err(|e| e.to_string())?;
    let residual = report["residual_term_count"].as_u64().unwrap_or(0);
    ensure(out.status.code() == Some(1) && residual > 0, || {
        format!(
            "rch(3)+rJ(3): exit {:?}, residual {residual}",
            out.status.code()
        )
    })?;

    let deformed = &rch3 + &build_dj_sl3();
    let out = run_cli(&["verify", "--in", &write(dir.path(), "dj3.json", &deformed)]);
    ensure(out.status.code() == Some(0), || {
        format!("rch(3)+dj3: exit {:?}", out.status.code())
    })?;

    let expected = &wedge(
        &chain_cartan(3, 1, 2).unwrap().scale(&frac(2, 1)),
        &matrix_unit(3, 1, 3).unwrap(),
    )
    .unwrap()
        + &wedge(
            &matrix_unit(3, 1, 2).unwrap(),
            &matrix_unit(3, 2, 3).unwrap(),
        )
        .unwrap();
    ensure(rch3 == expected, || format!("rch(3) = {rch3}"))?;
    Ok(format!(
        "rch(3)+rJ(3) exit 1 ({residual} residual terms); rch(3)+dj3 exit 0; rch(3) = 2H12∧E13 + E12∧E23"
    ))
}

fn criterion_4() -> Outcome {
    let n = 11;
    let e_hat = build_e_hat(n, &ones(5)).unwrap();
    for k in 1..=5 {
        let h = h_perp(n, k).unwrap();
        for (l, e) in e_hat.iter().enumerate() {
            let want = if l + 1 == k {
                e.clone()
            } else {
                LieElement::zero(n)
            };
            let got = bracket(&h, e).unwrap();
            ensure(got == want, || {
                format!("[H{k}⊥, Ê{}] = {}", l + 1, got.label())
            })?;
        }
        for s in 1..=5 {
            let theta = RootVector::e_diff(n, s, n - s + 1);
            let v = root_eval(&theta, &h).unwrap();
            ensure(v == zero(), || format!("θ{s}(H{k}⊥) = {v}"))?;
        }
    }
    Ok("[H_k⊥, Ê_l] = δ_kl Ê_k and θ_s(H_k⊥) = 0 for k, l, s = 1..5 at n = 11".into())
}

/// Closed form: `Ĥ_k = 2 Σ_{i=lo}^{hi} (H_{2i-1,2i} + H_i⊥)`.
fn closed_form_hat_h(k: usize) -> LieElement {
    let (lo, hi) = [(1, 5), (2, 5), (2, 4), (3, 4), (3, 3)][k - 1];
    let mut out = LieElement::zero(11);
    for i in lo..=hi {
        out = &out + &chain_cartan(11, 2 * i - 1, 2 * i).unwrap();
        out = &out + &h_perp(11, i).unwrap();
    }
    out.scale(&frac(2, 1))
}

fn criterion_5() -> Outcome {
    let sol = solve_enlargement(11).map_err(|e| e.to_string())?;
    ensure(sol.unique, || "solution not unique".into())?;
    let mut scale: Option<Rational> = None;
    for k in 1..=5 {
        let want = closed_form_hat_h(k);
        let got = &sol.hat_h[k - 1];
        let (u, c) = want.iter().next().expect("nonzero");
        let s = got.entries().get(u).cloned().unwrap_or_else(zero) / c;
        ensure(*got == want.scale(&s), || {
            format!(
                "Ĥ_{k} = {} is not a multiple of the closed form",
                got.label()
            )
        })?;
        match &scale {
            None => scale = Some(s),
            Some(prev) => ensure(*prev == s, || {
                format!("Ĥ_{k} scale {s} differs from {prev}")
            })?,
        }
    }
    cybe_zero(
        &build_ech(&ChainParams::ones(11).unwrap()).unwrap(),
        "ech(11)",
    )?;
    Ok(format!(
        "unique solve; Ĥ_1..Ĥ_5 = {} × closed form (c = {}); ech(11) CYBE exact",
        scale.unwrap(),
        sol.normalization_c
    ))
}

fn criterion_6() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED ^ 6);
    let mut count = 0;
    for n in [5usize, 7, 11] {
        let m = (n - 1) / 2;
        let hat_h = solve_enlargement(n).map_err(|e| e.to_string())?.hat_h;
        for _ in 0..20 {
            let xi = draws(&mut rng, m);
            let zeta: Vec<Rational> = (0..m)
                .map(|_| {
                    if rng.gen_bool(0.2) {
                        zero()
                    } else {
                        nonzero(&mut rng)
                    }
                })
                .collect();
            let p = ChainParams::new(n, xi.clone(), zeta).map_err(|e| e.to_string())?;
            cybe_zero(&build_ech(&p).unwrap(), &format!("ech({n}, {p:?})"))?;

            let limit =
                build_ech(&ChainParams::new(n, xi.clone(), vec![zero(); m]).unwrap()).unwrap();
            ensure(
                limit == build_rch_with_cartans(n, &xi, &hat_h).unwrap(),
                || format!("ζ → 0 limit of ech({n}) is not the rotated chain"),
            )?;

            let mut off = p.xi().to_vec();
            for s in 0..m {
                off[s] = zero();
                let q = ChainParams::new(n, off.clone(), p.zeta().to_vec())
                    .map_err(|e| format!("switch-off step {}: {e}", s + 1))?;
                cybe_zero(
                    &build_ech(&q).unwrap(),
                    &format!("ech({n}) with ξ_1..ξ_{} = 0", s + 1),
                )?;
            }
            count += 1;
        }
    }
    Ok(format!(
        "{count} seeded (ξ, ζ) draws: ech CYBE exact, ζ → 0 gives rch(Ĥ), ξ switch-off 1→m keeps CYBE"
    ))
}

fn criterion_7() -> Outcome {
    let ech = analyze(&build_ech(&ChainParams::ones(11).unwrap()).unwrap());
    let c = &ech.carrier;
    ensure(
        c.contains_borel && c.negative_intersection_dim == 5 && c.dim == 70,
        || {
            format!(
                "ech(11): borel {}, neg_dim {}, dim {}",
                c.contains_borel, c.negative_intersection_dim, c.dim
            )
        },
    )?;
    let fch = analyze(&build_fch(11, &ones(5)).unwrap());
    ensure(!fch.carrier.contains_borel, || {
        "fch(11) carrier contains the Borel".into()
    })?;
    Ok("ech(11): contains_borel, neg_dim 5, dim 70; fch(11): no Borel".into())
}

fn jacobi_ok(d: &DualAlgebra, a: usize, b: usize, c: usize) -> bool {
    d.jacobiator(a, b, c).is_empty()
}

fn criterion_8() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED ^ 8);
    let mut triples = 0;
    for n in [3usize, 5, 7] {
        let m = (n - 1) / 2;
        for (name, r) in [
            ("fch", build_fch(n, &ones(m)).unwrap()),
            ("rch", build_rch(n, &ones(m)).unwrap()),
        ] {
            let d = dual_structure(&r);
            ensure(d.abelian_ideal_ok(), || {
                format!("{name}({n}): complement duals not an abelian ideal")
            })?;
            let dim = d.dim();
            if n == 3 {
                for a in 0..dim {
                    for b in 0..dim {
                        for c in 0..dim {
                            ensure(jacobi_ok(&d, a, b, c), || {
                                format!("{name}(3): Jacobi fails at ({a},{b},{c})")
                            })?;
                            triples += 1;
                        }
                    }
                }
            } else {
                for _ in 0..200 {
                    let (a, b, c) = (
                        rng.gen_range(0..dim),
                        rng.gen_range(0..dim),
                        rng.gen_range(0..dim),
                    );
                    ensure(jacobi_ok(&d, a, b, c), || {
                        format!("{name}({n}): Jacobi fails at ({a},{b},{c})")
                    })?;
                    triples += 1;
                }
            }
        }
    }
    Ok(format!(
        "abelian ideal exact for fch/rch n = 3, 5, 7; Jacobi exact on {triples} triples"
    ))
}

fn criterion_9() -> Outcome {
    for n in [3usize, 5, 7, 11] {
        let m = (n - 1) / 2;
        let d = assign_gradings(&build_rch(n, &ones(m)).unwrap()).map_err(|e| e.to_string())?;
        let mut got = strictly_quasiprimitive(&d);
        let mut want: Vec<String> = (1..=m)
            .map(|k| format!("E[{},{}]*", 2 * k, 2 * k - 1))
            .collect();
        got.sort();
        want.sort();
        ensure(got == want, || {
            format!("rch({n}): quasiprimitive {got:?}, expected {want:?}")
        })?;
    }
    let mut rng = ChaCha8Rng::seed_from_u64(SEED ^ 9);
    let mut inputs = 0;
    for n in [3usize, 5, 7, 11] {
        let m = (n - 1) / 2;
        let mut family = Vec::new();
        for xi in [ones(m), draws(&mut rng, m)] {
            family.push(("fch", build_fch(n, &xi).unwrap()));
            family.push(("rotation", build_rotation(n, &xi).unwrap()));
            family.push(("rch", build_rch(n, &xi).unwrap()));
        }
        for (name, r) in family {
            let d = assign_gradings(&r).map_err(|e| format!("{name}({n}): {e}"))?;
            let mut table: Vec<String> = quasiprimitive_set(&d)
                .into_iter()
                .filter(|l| d.colors[d.index_of(l).unwrap()] == Color::Red)
                .collect();
            let mut diagram = diagram_quasiprimitive(&d).map_err(|e| e.to_string())?;
            table.sort();
            diagram.sort();
            ensure(table == diagram, || {
                format!("{name}({n}): table {table:?} vs diagram {diagram:?}")
            })?;
            inputs += 1;
        }
    }
    Ok(format!(
        "rch(n) quasiprimitive = {{E[2k,2k-1]*}} for n = 3, 5, 7, 11; diagram = table on {inputs} chain-family inputs"
    ))
}

fn criterion_10() -> Outcome {
    let mut checked = 0;
    for rank in 1..=10 {
        let a = classify_type(Series::A, rank).map_err(|e| e.to_string())?;
        if rank % 2 == 0 {
            let m = rank / 2;
            ensure(a.type_tag == TypeTag::I && a.dim_last == m, || {
                format!("A{rank}: {a:?}")
            })?;
            checked += 1;
        } else if rank >= 3 {
            let m = rank.div_ceil(2);
            ensure(a.type_tag == TypeTag::I && a.dim_last == m - 1, || {
                format!("A{rank}: {a:?}")
            })?;
            checked += 1;
        }
        for s in [Series::B, Series::C] {
            let c = classify_type(s, rank).map_err(|e| e.to_string())?;
            ensure(c.type_tag == TypeTag::II, || {
                format!("{}{rank}: {c:?}", s.letter())
            })?;
            checked += 1;
        }
        if rank >= 2 {
            let d = classify_type(Series::D, rank).map_err(|e| e.to_string())?;
            let ok = if rank % 2 == 0 {
                d.type_tag == TypeTag::II
            } else {
                d.type_tag == TypeTag::I && d.dim_last == 1
            };
            ensure(ok, || format!("D{rank}: {d:?}"))?;
            checked += 1;
        }
    }
    Ok(format!(
        "{checked} classical root systems of rank ≤ 10 match the type table"
    ))
}

fn main() {
    let criteria: [(usize, fn() -> Outcome); 10] = [
        (1, criterion_1),
        (2, criterion_2),
        (3, criterion_3),
        (4, criterion_4),
        (5, criterion_5),
        (6, criterion_6),
        (7, criterion_7),
        (8, criterion_8),
        (9, criterion_9),
        (10, criterion_10),
    ];
    panic::set_hook(Box::new(|_| {}));
    let mut failed = 0;
    for (k, check) in criteria {
        let t = Instant::now();
        let outcome = panic::catch_unwind(AssertUnwindSafe(check))
            .unwrap_or_else(|p| Err(format!("panicked: {}", panic_message(&p))));
        let secs = t.elapsed().as_secs_f64();
        match outcome {
            Ok(msg) => println!("PASS criterion {k}: {msg} [{secs:.2}s]"),
            Err(msg) => {
                failed += 1;
                println!("FAIL criterion {k}: {msg} [{secs:.2}s]");
            }
        }
    }
    if failed > 0 {
        std::process::exit(1);
    }
}

fn panic_message(p: &Box<dyn std::any::Any + Send>) -> String {
    p.downcast_ref::<&str>()
        .map(|s| s.to_string())
        .or_else(|| p.downcast_ref::<String>().cloned())
        .unwrap_or_else(|| "unknown panic".into())
}
