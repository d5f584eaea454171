//! Acceptance runner: one PASS/FAIL line per criterion with its pinned
//! limits. Exits nonzero if any criterion fails.

#[path = "../../hahnfield/tests/common/mod.rs"]
mod common;

use std::process::Command;
use std::time::{Duration, Instant};

use common::checks::{ring_laws, split_case, sqrt_oracle, tower_samples};
use common::cuts::{check_laws, dyadic, lex2, rand_cut, z};
use common::series::{half_derived, half_trivial, lexq, rand_series, zq};
use hahnfield::extend::{
    alg_mult_criterion, artin_schreier_q, ball_of, hensel_lift, pc_verify, wtoc_data, MinPoly,
};
use hahnfield::factor::cocycle_verify;
use hahnfield::tower::{
    check_tower_axioms, in_complement, in_ideal, mu, sigma_reconstruct, split_at, TruncationTower,
};
use hahnfield::{Ambient, Cut, Elem, Series, Side, Q64};
use hahnfield_cli::parse::{parse_field, parse_group, parse_series};
use hahnfield_cli::sample;
use rand::{Rng, SeedableRng};

type Outcome = Result<String, String>;

struct Criterion {
    id: u32,
    name: &'static str,
    limit: Option<Duration>,
    run: fn() -> Outcome,
}

fn secs(s: u64) -> Option<Duration> {
    Some(Duration::from_secs(s))
}

const LAW_TUPLES: u64 = 10_000;

fn cut_laws() -> Outcome {
    for (name, g) in [("Z", z()), ("Z^2lex", lex2()), ("Z[1/2]^8", dyadic())] {
        for seed in 0..LAW_TUPLES {
            let mut r = common::rng(seed);
            let (a, b, c, d) = (
                rand_cut(&g, &mut r),
                rand_cut(&g, &mut r),
                rand_cut(&g, &mut r),
                rand_cut(&g, &mut r),
            );
            check_laws(&g, &a, &b, &c, &d, &mut r)
                .map_err(|e| format!("{name} seed {seed}: {e}"))?;
        }
    }
    Ok(format!("{LAW_TUPLES} tuples per group over 3 groups"))
}

fn oracle() -> Outcome {
    let n = common::oracle::check_all(&z())?;
    Ok(format!("{n} comparisons on [-50, 50]"))
}

fn series_ring() -> Outcome {
    for (name, amb) in [("trivial", half_trivial()), ("derived", half_derived())] {
        for seed in 0..1000 {
            ring_laws(&amb, seed, 30).map_err(|e| format!("{name} seed {seed}: {e}"))?;
        }
    }
    let amb = half_derived();
    let mut r = common::rng(1);
    let mut e = || Elem::scalar(Q64::new(r.gen_range(-40..=40), 2));
    let triples: Vec<_> = (0..1000).map(|_| (e(), e(), e())).collect();
    let rep = cocycle_verify(&amb.group, &amb.field, &amb.factor, &triples);
    if !rep.passed() {
        return Err(format!("cocycle: {rep:?}"));
    }
    Ok("1000 triples under each factor set, 1000 cocycle triples, depth 30".into())
}

fn geometric_inverse() -> Outcome {
    let amb = zq();
    let k = &amb.field;
    let x = Series::from_terms(
        &amb,
        vec![(Elem::int(0), k.one()), (Elem::int(1), k.int(-1))],
    )
    .map_err(|e| e.to_string())?;
    let inv = x.invert().map_err(|e| e.to_string())?;
    for n in 0..50 {
        if inv.coeff(&Elem::int(n)).map_err(|e| e.to_string())? != k.one() {
            return Err(format!("coefficient {n}"));
        }
    }
    if !x
        .mul(&inv)
        .eq_prefix(&Series::one(&amb), 50)
        .map_err(|e| e.to_string())?
    {
        return Err("product is not 1".into());
    }
    Ok("50 coefficients".into())
}

fn tower() -> Outcome {
    let err = |e: hahnfield::Error| e.to_string();
    for (name, amb) in [("Z", zq()), ("Z^2lex", lexq())] {
        let checks = check_tower_axioms(&TruncationTower, &tower_samples(&amb, 11, 100, 30));
        if let Some(bad) = checks.iter().find(|c| !c.passed) {
            return Err(format!("{name}: {bad:?}"));
        }
        for seed in 0..1000 {
            let mut r = common::rng(seed);
            let x = rand_series(&amb, &mut r);
            let lam = rand_cut(&amb.group, &mut r);
            let (x1, x2) = split_at(&x, &lam).map_err(err)?;
            let ok = x1.add(&x2).eq_prefix(&x, 30).map_err(err)?
                && in_complement(&x1, &lam).map_err(err)?
                && in_ideal(&x2, &lam).map_err(err)?;
            if !ok {
                return Err(format!("{name} split seed {seed}"));
            }
            let y = sigma_reconstruct(&TruncationTower, &x, 30).map_err(err)?;
            if !y
                .eq_prefix(&x.materialize(30).map_err(err)?, 30)
                .map_err(err)?
            {
                return Err(format!("{name} reconstruction seed {seed}"));
            }
        }
    }
    Ok("100 axiom samples, 1000 splits and 1000 reconstructions per group".into())
}

fn sharp_inverse() -> Outcome {
    let err = |e: hahnfield::Error| e.to_string();
    let amb = lexq();
    let k = &amb.field;
    let want = lex2().z_mul(&Cut::plus(Elem::ints(&[0, 1]))).map_err(err)?;
    if want != Cut::Sub(Elem::ints(&[0, 0]), 1, Side::Plus) {
        return Err(format!("z_mul gave {want:?}"));
    }
    for u in [
        vec![(Elem::ints(&[0, 0]), 1)],
        vec![(Elem::ints(&[0, 0]), 2), (Elem::ints(&[0, 1]), -1)],
    ] {
        let mut t = vec![(Elem::ints(&[0, 0]), k.one())];
        t.extend(
            u.into_iter()
                .map(|(e, c)| (e.add(&Elem::ints(&[0, 1])), k.int(c))),
        );
        let a = Series::from_terms(&amb, t).map_err(err)?;
        let got = mu(&a.invert().map_err(err)?).map_err(err)?;
        if got != want {
            return Err(format!("mu of the inverse is {got:?}"));
        }
    }
    Ok("sub((0,0),1)+ for two choices of u".into())
}

fn quotient_split() -> Outcome {
    for (name, amb) in [("Z", zq()), ("Z^2lex", lexq())] {
        for seed in 0..200 {
            split_case(&amb, seed, 20).map_err(|e| format!("{name} seed {seed}: {e}"))?;
        }
    }
    Ok("200 cases per group, depth 20".into())
}

fn worked_example() -> Outcome {
    let err = |e: hahnfield::Error| e.to_string();
    let w = wtoc_data(2, 8).map_err(err)?;
    let g = &w.amb.group;
    let pc = pc_verify(&w.seq).map_err(err)?;
    let vals: Vec<Elem> = pc.diffs.iter().filter_map(|(_, v)| v.clone()).collect();
    let direct = g.set_cut(&vals, Side::Plus, true).map_err(err)?;
    let ball = ball_of(&w.seq).map_err(err)?;
    let zero_minus = Cut::minus(Elem::int(0));
    if !pc.passed || ball != zero_minus || direct != zero_minus {
        return Err(format!("ball {ball:?}, supremum {direct:?}"));
    }
    let a = alg_mult_criterion(&MinPoly::new(w.a_poly.dense(), ball.clone()).map_err(err)?)
        .map_err(err)?;
    let b = alg_mult_criterion(&MinPoly::new(w.b_poly.dense(), ball.clone()).map_err(err)?)
        .map_err(err)?;
    if !a.passed || b.passed {
        return Err(format!("criterion a {} b {}", a.passed, b.passed));
    }
    let row = b
        .rows
        .iter()
        .find(|r| !r.passed)
        .ok_or("no failing coefficient")?;
    let b0 = &w.b_poly.dense()[0];
    let want_b0 = Series::monomial(&w.amb, Elem::int(-1), w.amb.field.one())
        .add(&Series::constant(&w.amb, w.amb.field.var().map_err(err)?));
    if row.k != 0 || row.cut != zero_minus || !b0.eq_prefix(&want_b0.neg(), 8).map_err(err)? {
        return Err(format!("witness {row:?}"));
    }
    Ok("ball 0-, a-polynomial passes, b-polynomial fails at its constant".into())
}

fn artin_schreier() -> Outcome {
    let err = |e: hahnfield::Error| e.to_string();
    let w = wtoc_data(2, 8).map_err(err)?;
    for (name, poly) in [("a", &w.a_poly), ("b", &w.b_poly)] {
        let r = artin_schreier_q(poly, &w.seq, 2).map_err(err)?;
        if r.rows.len() != 6 || !r.passed() {
            return Err(format!("{name}: {:?}", r.rows));
        }
    }
    Ok("values agree and increase for nu0 = 2, nu in 3..=8".into())
}

fn hensel() -> Outcome {
    let err = |e: hahnfield::Error| e.to_string();
    let amb = zq();
    let k = &amb.field;
    let p = [
        Series::from_terms(
            &amb,
            vec![(Elem::int(0), k.int(-1)), (Elem::int(1), k.int(-1))],
        )
        .map_err(err)?,
        Series::zero(&amb),
        Series::one(&amb),
    ];
    let h = hensel_lift(&p, &k.one(), 20).map_err(err)?;
    for (n, want) in sqrt_oracle(20).iter().enumerate() {
        if h.root.coeff(&Elem::int(n as i64)).map_err(err)? != k.from_q(want).map_err(err)? {
            return Err(format!("coefficient {n}"));
        }
    }
    let vals: Vec<Option<Elem>> = h.residuals.clone();
    let increasing = vals.windows(2).all(|w| match (&w[0], &w[1]) {
        (Some(a), Some(b)) => a < b,
        (Some(_), None) => true,
        _ => false,
    });
    if !increasing || vals.len() < 4 {
        return Err(format!("residual valuations {vals:?}"));
    }
    Ok(format!("20 coefficients, {} Newton steps", vals.len()))
}

fn cli() -> Outcome {
    let scripts: [&[&str]; 4] = [
        &["example-wtoc", "--p", "2"],
        &["tower-check", "--samples", "20", "--seed", "7"],
        &[
            "cocycle-check",
            "--group",
            "Q<1/2>",
            "--factor-set",
            "derived:1/2:2:2",
            "--samples",
            "200",
            "--seed",
            "3",
        ],
        &[
            "quot-split",
            "--d",
            "1+t",
            "--c",
            "1-t",
            "--k",
            "2",
            "--at",
            "3+",
        ],
    ];
    for args in scripts {
        let run = || {
            Command::new(env!("CARGO_BIN_EXE_hahnfield"))
                .args(args)
                .output()
                .map_err(|e| e.to_string())
        };
        let (a, b) = (run()?, run()?);
        if a.status.code() != Some(0) || a.stdout != b.stdout {
            return Err(format!("{args:?}"));
        }
    }
    let mut r = rand_chacha::ChaCha8Rng::seed_from_u64(0);
    let ambs: Vec<_> = [
        ("Z", "Q"),
        ("Z^2lex", "Q"),
        ("Z[1/2]^4", "PH(F2(y),4)"),
        ("Q<1/2>", "F5"),
    ]
    .iter()
    .map(|(g, k)| Ambient::simple(parse_group(g).unwrap(), parse_field(k).unwrap()).unwrap())
    .collect();
    for i in 0..100 {
        let amb = &ambs[i % ambs.len()];
        let x = sample::finite(amb, &mut r, 5);
        let text = x.literal(usize::MAX).map_err(|e| e.to_string())?;
        let back = parse_series(&text, amb).map_err(|e| format!("{text}: {e}"))?;
        if !back.eq_prefix(&x, 64).map_err(|e| e.to_string())? {
            return Err(format!("round trip of {text}"));
        }
    }
    Ok("4 scripts byte-identical, 100 literals round-trip".into())
}

fn main() {
    let criteria = [
        Criterion {
            id: 1,
            name: "cut-algebra laws",
            limit: secs(10),
            run: cut_laws,
        },
        Criterion {
            id: 2,
            name: "set-model oracle",
            limit: secs(10),
            run: oracle,
        },
        Criterion {
            id: 3,
            name: "series ring and factor sets",
            limit: secs(30),
            run: series_ring,
        },
        Criterion {
            id: 4,
            name: "geometric inverse",
            limit: None,
            run: geometric_inverse,
        },
        Criterion {
            id: 5,
            name: "truncation tower",
            limit: None,
            run: tower,
        },
        Criterion {
            id: 6,
            name: "sharp inverse cut",
            limit: None,
            run: sharp_inverse,
        },
        Criterion {
            id: 7,
            name: "quotient split",
            limit: secs(60),
            run: quotient_split,
        },
        Criterion {
            id: 8,
            name: "characteristic-two example",
            limit: secs(5),
            run: worked_example,
        },
        Criterion {
            id: 9,
            name: "additive q construction",
            limit: None,
            run: artin_schreier,
        },
        Criterion {
            id: 10,
            name: "Newton lift",
            limit: None,
            run: hensel,
        },
        Criterion {
            id: 11,
            name: "CLI determinism and literals",
            limit: None,
            run: cli,
        },
    ];
    let mut failed = 0;
    for c in &criteria {
        let start = Instant::now();
        let out = (c.run)();
        let took = start.elapsed();
        let late = c.limit.is_some_and(|l| took > l);
        let limit = c.limit.map_or("no limit".to_string(), |l| {
            format!("limit {} s", l.as_secs())
        });
        let (tag, detail) = match (&out, late) {
            (Ok(d), false) => ("PASS", d.clone()),
            (Ok(d), true) => ("FAIL", format!("{d}; too slow")),
            (Err(e), _) => ("FAIL", e.clone()),
        };
        if tag == "FAIL" {
            failed += 1;
        }
        println!(
            "{tag} {:>2} {:<30} {:>8.2} s ({limit}, exact)  {detail}",
            c.id,
            c.name,
            took.as_secs_f64()
        );
    }
    println!(
        "{} of {} criteria passed",
        criteria.len() - failed,
        criteria.len()
    );
    if failed > 0 {
        std::process::exit(1);
    }
}
