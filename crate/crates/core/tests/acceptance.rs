//! Acceptance criteria. Runs as a plain binary so every criterion prints one
//! `PASS`/`FAIL` line whatever the test harness does with captured output.

use std::path::PathBuf;
use std::process::Command;
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde_json::Value;

use tightcl::bundle::{cone_ring, decompose_bundle, formula_degree, syzygy_bundle};
use tightcl::closure::{
    frobenius_member, ideal_piece, tight_closure_ideal, tight_closure_member, FrobeniusResult, Verdict,
};
use tightcl::field::{make_field, Fe, Field};
use tightcl::polyring::{parse, CubicCurve, IdealData, Mono, Polynomial};
use tightcl::Error;

const FERMAT: &str = "x^3 + y^3 + z^3";

type Outcome = Result<String, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn ideal(p: u64, gens: &[&str]) -> IdealData {
    let f = make_field(p, 1).unwrap();
    let curve = CubicCurve::new(&f, parse(&f, FERMAT).unwrap()).unwrap();
    IdealData::new(&curve, gens.iter().map(|g| parse(&f, g).unwrap()).collect()).unwrap()
}

fn problems() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/problems")
}

fn tc(args: &[&str]) -> (i32, Vec<u8>, Duration) {
    let t = Instant::now();
    let out = Command::new(env!("CARGO_BIN_EXE_tc")).args(args).output().expect("run tc");
    (out.status.code().unwrap_or(-1), out.stdout, t.elapsed())
}

fn tc_json(args: &[&str]) -> Result<(i32, Value, Duration), String> {
    let mut all = vec!["--json"];
    all.extend_from_slice(args);
    let (code, out, t) = tc(&all);
    let v = serde_json::from_slice(&out).map_err(|e| format!("tc {args:?}: bad JSON: {e}"))?;
    Ok((code, v, t))
}

fn types(v: &Value) -> Vec<(i64, i64)> {
    v["summands"]
        .as_array()
        .map(|a| a.iter().map(|s| (s["rank"].as_i64().unwrap(), s["degree"].as_i64().unwrap())).collect())
        .unwrap_or_default()
}

fn random_poly(rng: &mut ChaCha8Rng, f: &Field, d: u32) -> Polynomial {
    loop {
        let mut terms = vec![];
        for m in Mono::all_of_degree(d) {
            if rng.gen_bool(0.6) {
                terms.push((m, Fe(rng.gen_range(0..f.size()))));
            }
        }
        let g = Polynomial::from_terms(f, terms);
        if !g.is_zero() {
            return g;
        }
    }
}

fn random_smooth_cubic(rng: &mut ChaCha8Rng, f: &Field) -> CubicCurve {
    loop {
        if let Ok(c) = CubicCurve::new(f, random_poly(rng, f, 3)) {
            return c;
        }
    }
}

/// Random primary ideal with `n` generators of degree at most `max_deg`.
fn random_ideal(rng: &mut ChaCha8Rng, curve: &CubicCurve, n: usize, max_deg: u32) -> IdealData {
    loop {
        let gens = (0..n).map(|_| {
            let d = rng.gen_range(1..=max_deg);
            random_poly(rng, curve.field(), d)
        });
        match IdealData::new(curve, gens.collect()) {
            Ok(i) => return i,
            Err(Error::NotPrimary) => continue,
            Err(e) => panic!("{e}"),
        }
    }
}

/// A random nonzero element of `I_m` (needs `m ≥ min d_i`) or a random form of degree `m`.
fn random_candidate(rng: &mut ChaCha8Rng, i: &IdealData, m: u32, in_ideal: bool) -> Polynomial {
    let f = i.field();
    loop {
        let g = if in_ideal {
            let mut s = Polynomial::zero();
            for (g, &d) in i.gens().iter().zip(i.degrees()) {
                if d <= m {
                    s = s.add(f, &g.mul(f, &random_poly(rng, f, m - d)));
                }
            }
            s
        } else {
            random_poly(rng, f, m)
        };
        if !g.is_zero() {
            return g;
        }
    }
}

fn criterion_1() -> Outcome {
    let mut notes = vec![];
    for file in ["fermat5_squares.toml", "fermat7_squares.toml"] {
        let path = problems().join(file);
        let path = path.to_str().unwrap();
        let (code, v, t) = tc_json(&["check", path])?;
        ensure(t < Duration::from_secs(60), || format!("{file}: check took {t:?}"))?;
        ensure(code == 0 && v["verdict"] == "member" && v["in_ideal"] == false, || {
            format!("{file}: check gave exit {code}, verdict {}, in_ideal {}", v["verdict"], v["in_ideal"])
        })?;
        let (code, v, t2) = tc_json(&["decompose", path, "--degree", "3"])?;
        ensure(t2 < Duration::from_secs(60), || format!("{file}: decompose took {t2:?}"))?;
        let s = &v["summands"];
        ensure(
            code == 0
                && types(&v) == [(2, 0)]
                && s[0]["h0"] == 1
                && s[0]["h1"] == 1,
            || format!("{file}: decompose gave {s}"),
        )?;
        notes.push(format!("{} check {:.2?} decompose {:.2?}", v["field"].as_str().unwrap(), t, t2));
    }
    Ok(format!("xyz member, not in ideal; one summand (2,0) with h0 = h1 = 1 [{}]", notes.join("; ")))
}

fn criterion_2() -> Outcome {
    let i = ideal(5, &["x^2", "y^2", "x^2"]);
    let d = decompose_bundle(&syzygy_bundle(&i, 3).map_err(|e| e.to_string())?).map_err(|e| e.to_string())?;
    let mut t = d.types();
    t.sort();
    ensure(t == [(1, -3), (1, 3)], || format!("decomposition {t:?}"))?;
    let xyz = parse(i.field(), "x*y*z").unwrap();
    let v1 = tight_closure_member(&i, &xyz).map_err(|e| e.to_string())?.verdict;
    ensure(v1 == Verdict::NonMember, || format!("xyz verdict {v1:?}"))?;
    let j = ideal(5, &["x^2", "y^2"]);
    let v2 = tight_closure_member(&j, &xyz).map_err(|e| e.to_string())?.verdict;
    ensure(v1 == v2, || format!("(x^2, y^2) gives {v2:?}"))?;
    let path = problems().join("fermat5_repeated.toml");
    let (code, v, _) = tc_json(&["check", path.to_str().unwrap()])?;
    ensure(code == 1 && v["verdict"] == "non-member", || format!("tc check exit {code}"))?;
    Ok("{(1,+3),(1,-3)}; xyz non-member for (x^2,y^2,x^2) and (x^2,y^2)".into())
}

fn criterion_3() -> Outcome {
    let i = ideal(5, &["x", "y", "z^3"]);
    let z2 = parse(i.field(), "z^2").unwrap();
    let v = tight_closure_member(&i, &z2).map_err(|e| e.to_string())?.verdict;
    ensure(v == Verdict::Member, || format!("z^2 verdict {v:?}"))?;
    let d = decompose_bundle(&syzygy_bundle(&i, 3).map_err(|e| e.to_string())?).map_err(|e| e.to_string())?;
    let mut t = d.types();
    t.sort();
    ensure(t == [(1, 0), (1, 3)], || format!("decomposition {t:?}"))?;
    Ok("z^2 member; {(1,+3),(1,0)}".into())
}

fn criterion_4() -> Outcome {
    let i = ideal(5, &["x^2", "y^2", "z^2"]);
    let f = i.field();
    let c = tight_closure_ideal(&i).map_err(|e| e.to_string())?;
    let gens: Vec<String> = c.generators.iter().map(|g| g.display(f)).collect();
    ensure(gens == ["x^2", "y^2", "z^2", "x*y*z"], || format!("generators {gens:?}"))?;
    ensure(c.slopes.k == 3.into(), || format!("threshold {}", c.slopes.k))?;
    // degreewise: the ideal generated by the output against (x^2,y^2,z^2) + R_{>=3},
    // and every standard monomial against the membership test
    let closure = IdealData::new(i.curve(), c.generators.clone()).map_err(|e| e.to_string())?;
    let ring = cone_ring(i.curve());
    for m in 1..=5i64 {
        let got = ideal_piece(&closure, m);
        let want = if m >= 3 { ring.dim(m) } else { ideal_piece(&i, m).dim() };
        ensure(got.dim() == want, || format!("degree {m}: closure has dim {}, expected {want}", got.dim()))?;
        ensure(ideal_piece(&i, m).is_subspace_of(f, &got), || format!("degree {m}: ideal not contained"))?;
        for k in 0..ring.dim(m) {
            let mut v = vec![Fe::ZERO; ring.dim(m)];
            v[k] = Fe::ONE;
            let g = ring.poly(&v, m);
            let member = tight_closure_member(&i, &g).map_err(|e| e.to_string())?.verdict == Verdict::Member;
            ensure(member == got.contains(f, &v), || format!("degree {m}: {} disagrees", g.display(f)))?;
        }
    }
    Ok("closure (x^2, y^2, z^2, x*y*z), k = 3, degrees 1..5 agree".into())
}

fn criterion_5() -> Outcome {
    let start = Instant::now();
    let f = make_field(5, 1).unwrap();
    let results: Vec<Result<(), String>> = (0..100u64)
        .into_par_iter()
        .map(|k| {
            let mut rng = ChaCha8Rng::seed_from_u64(0x5000 + k);
            let curve = random_smooth_cubic(&mut rng, &f);
            let n = rng.gen_range(2..=4);
            let i = random_ideal(&mut rng, &curve, n, 3);
            let m = *i.degrees().iter().max().unwrap() as i64 + 1;
            let d = decompose_bundle(&syzygy_bundle(&i, m).map_err(|e| format!("instance {k}: {e}"))?)
                .map_err(|e| format!("instance {k}: {e}"))?;
            let (r, deg) = d.types().iter().fold((0, 0), |a, s| (a.0 + s.0, a.1 + s.1));
            let sum: i64 = i.degrees().iter().map(|&d| d as i64).sum();
            let want = -3 * (sum - (n as i64 - 1) * m);
            ensure(deg == want && r == n as i64 - 1 && formula_degree(&i, m) == want, || {
                format!("instance {k}: ranks {r}, degrees {deg}, expected ({}, {want})", n - 1)
            })
        })
        .collect();
    let t = start.elapsed();
    let failures: Vec<String> = results.into_iter().filter_map(Result::err).collect();
    ensure(failures.is_empty(), || format!("{} of 100 failed: {}", failures.len(), failures.join("; ")))?;
    ensure(t < Duration::from_secs(600), || format!("took {t:?}"))?;
    Ok(format!("100 ideals, sums match, {t:.2?}"))
}

fn criterion_6() -> Outcome {
    let results: Vec<Result<bool, String>> = (0..100u64)
        .into_par_iter()
        .map(|k| {
            let mut rng = ChaCha8Rng::seed_from_u64(0x6000 + k);
            let p = [2, 3, 5, 7][rng.gen_range(0..4)];
            let f = make_field(p, 1).unwrap();
            let curve = random_smooth_cubic(&mut rng, &f);
            let n = rng.gen_range(2..=4);
            let i = random_ideal(&mut rng, &curve, n, 3);
            let in_ideal = k % 2 == 0;
            let low = if in_ideal { *i.degrees().iter().min().unwrap() } else { 1 };
            let m = rng.gen_range(low..=*i.degrees().iter().max().unwrap() + 2);
            let g = random_candidate(&mut rng, &i, m, in_ideal);
            let c = tight_closure_member(&i, &g).map_err(|e| format!("instance {k}: {e}"))?;
            let all_vanish = c.summands.iter().all(|s| s.class_component_vanishes);
            let member = i.contains(&g);
            ensure(all_vanish == member, || {
                format!("instance {k}: {} over F_{p}: vanish {all_vanish}, member {member}", g.display(&f))
            })?;
            Ok(member)
        })
        .collect();
    let mut members = 0;
    let mut failures = vec![];
    for r in results {
        match r {
            Ok(m) => members += m as usize,
            Err(e) => failures.push(e),
        }
    }
    ensure(failures.is_empty(), || format!("{} of 100 failed: {}", failures.len(), failures.join("; ")))?;
    Ok(format!("100 instances agree ({members} in the ideal)"))
}

fn criterion_7() -> Outcome {
    let start = Instant::now();
    let rows: Vec<Result<(Verdict, FrobeniusResult), String>> = (0..50u64)
        .into_par_iter()
        .map(|k| {
            let mut rng = ChaCha8Rng::seed_from_u64(0x7000 + k);
            let p = if k % 2 == 0 { 2 } else { 5 };
            let f = make_field(p, 1).unwrap();
            let curve = CubicCurve::new(&f, parse(&f, FERMAT).unwrap()).unwrap();
            let n = rng.gen_range(2..=3);
            let i = random_ideal(&mut rng, &curve, n, 2);
            // candidates near the threshold degree, where closure and ideal differ
            let sum: u32 = i.degrees().iter().sum();
            let k_deg = (sum as f64 / (n - 1) as f64).ceil() as u32;
            let m = rng.gen_range(k_deg.saturating_sub(2).max(1)..=k_deg);
            let g = random_candidate(&mut rng, &i, m, false);
            let v = tight_closure_member(&i, &g).map_err(|e| format!("instance {k}: {e}"))?.verdict;
            let fr = frobenius_member(&i, &g, 3).map_err(|e| format!("instance {k}: {e}"))?;
            let consistent = !matches!((v, fr), (Verdict::NonMember, FrobeniusResult::Found { .. }));
            ensure(consistent, || format!("instance {k} over F_{p}: {} {v:?} but {fr:?}", g.display(&f)))?;
            Ok((v, fr))
        })
        .collect();
    let mut failures = vec![];
    let (mut members, mut inconclusive, mut non_members, mut outside_ideal) = (0, 0, 0, 0);
    for r in rows {
        match r {
            Ok((Verdict::Member, fr)) => {
                members += 1;
                match fr {
                    FrobeniusResult::NotFound { .. } => inconclusive += 1,
                    FrobeniusResult::Found { e } if e > 0 => outside_ideal += 1,
                    _ => {}
                }
            }
            Ok((Verdict::NonMember, _)) => non_members += 1,
            Err(e) => failures.push(e),
        }
    }
    let t = start.elapsed();
    ensure(failures.is_empty(), || failures.join("; "))?;
    ensure(members > 0 && 5 * inconclusive < members, || {
        format!("{inconclusive} inconclusive of {members} members")
    })?;
    ensure(t < Duration::from_secs(900), || format!("took {t:?}"))?;
    Ok(format!(
        "50 instances: {members} members ({outside_ideal} witnessed at e >= 1, {inconclusive} inconclusive), {non_members} non-members, {t:.2?}"
    ))
}

fn criterion_8() -> Outcome {
    let p = |f: &str| problems().join(f).to_str().unwrap().to_string();
    let runs: Vec<Vec<String>> = vec![
        vec!["check".into(), p("fermat5_squares.toml")],
        vec!["check".into(), p("fermat4_ext.toml")],
        vec!["check".into(), p("hesse7_mixed.toml")],
        vec!["closure".into(), p("fermat5_squares_closure.toml")],
        vec!["decompose".into(), p("fermat5_repeated.toml")],
        vec!["decompose".into(), p("fermat5_lines.toml"), "--degree".into(), "3".into()],
        vec!["info".into(), p("fermat7_squares.toml")],
    ];
    let mut count = 0;
    for args in &runs {
        for json in [false, true] {
            let mut outputs = vec![];
            for threads in ["1", "1", "1", "2", "4"] {
                let mut a: Vec<&str> = vec!["--threads", threads];
                if json {
                    a.push("--json");
                }
                a.extend(args.iter().map(String::as_str));
                let (code, out, _) = tc(&a);
                outputs.push((code, out));
                count += 1;
            }
            ensure(outputs.iter().all(|o| *o == outputs[0]), || format!("tc {args:?} (json {json}) differs between runs"))?;
            ensure(!outputs[0].1.is_empty(), || format!("tc {args:?} printed nothing"))?;
        }
    }
    Ok(format!("{count} runs over 4 commands, identical across repeats and 1/2/4 threads"))
}

fn main() {
    let criteria: [(&str, fn() -> Outcome); 8] = [
        ("Fermat (x^2,y^2,z^2) over F_5 and F_7", criterion_1),
        ("(x^2,y^2,x^2) splits as O(1)+O(-1)", criterion_2),
        ("(x,y,z^3)", criterion_3),
        ("closure and threshold of (x^2,y^2,z^2)", criterion_4),
        ("degree formula on random ideals", criterion_5),
        ("class vanishing equals ideal membership", criterion_6),
        ("Frobenius differential test", criterion_7),
        ("determinism", criterion_8),
    ];
    let mut failed = 0;
    for (n, (name, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = std::panic::catch_unwind(run).unwrap_or_else(|_| Err("panicked".into()));
        let t = start.elapsed();
        match outcome {
            Ok(msg) => println!("criterion {}: PASS {name}: {msg} ({t:.2?})", n + 1),
            Err(msg) => {
                failed += 1;
                println!("criterion {}: FAIL {name}: {msg} ({t:.2?})", n + 1);
            }
        }
    }
    println!("acceptance: {} passed, {failed} failed", criteria.len() - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
