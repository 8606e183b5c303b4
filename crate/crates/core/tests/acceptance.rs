mod common;

use std::cell::Cell;
use std::collections::BTreeMap;
use std::process::Command;
use std::time::{Duration, Instant};

use common::{oracle, polyline_set, Expected};
use proptest::test_runner::{Config, RngAlgorithm, TestCaseError, TestRng, TestRunner};
use ringwing::bounds::{
    bound_cimikowski, bound_new, bound_rings_only, bound_vijaya2015, lemma4, lemma5, lemma6,
    lemma7, lemma_sum, recursion_step,
};
use ringwing::crossing_counter::{count_crossings, validate_good_drawing, CensusError};
use ringwing::ring_layout::{layout_rb, layout_ring, quarter_diagram, RingGeometry};
use ringwing::topology::build_wrapped_butterfly;

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn bin() -> Command {
    let mut c = Command::new(env!("CARGO_BIN_EXE_ringwing"));
    c.env_remove("RINGWING_THREADS");
    c
}

/// Parses the `census` line of `ringwing verify` into key/value pairs.
fn verify_census(r: u32) -> Result<(i32, BTreeMap<String, u64>, String), String> {
    let out = bin()
        .args(["verify", "-r", &r.to_string()])
        .output()
        .map_err(|e| e.to_string())?;
    let text = String::from_utf8_lossy(&out.stdout).into_owned();
    let mut census = BTreeMap::new();
    if let Some(line) = text
        .lines()
        .find(|l| l.trim_start().starts_with("census") && l.contains("total="))
    {
        for tok in line.split_whitespace().skip(1) {
            if let Some((k, v)) = tok.split_once('=') {
                census.insert(
                    k.to_string(),
                    v.parse().map_err(|_| format!("bad census token {tok}"))?,
                );
            }
        }
    }
    Ok((out.status.code().unwrap_or(-1), census, text))
}

fn check_verify(r: u32, want: &[(&str, u64)], limit: Duration) -> Outcome {
    let t = Instant::now();
    let (code, census, text) = verify_census(r)?;
    let took = t.elapsed();
    if code != 0 {
        let failing: Vec<&str> = text.lines().filter(|l| l.contains("FAIL")).collect();
        return Err(format!("exit {code}: {}", failing.join("; ").trim()));
    }
    for (k, v) in want {
        let got = census.get(*k).copied();
        if got != Some(*v) {
            return Err(format!("{k} = {got:?}, want {v}"));
        }
    }
    if took > limit {
        return Err(format!("took {took:.2?}, limit {limit:?}"));
    }
    Ok(format!("total {} in {took:.2?}", census["total"]))
}

fn c1() -> Outcome {
    let want = [
        ("total", 96),
        ("IExRE", 32),
        ("WIExRE", 64),
        ("IExWIE", 0),
        ("WIExWIE", 0),
        ("IExIE", 0),
        ("RExRE", 0),
    ];
    check_verify(4, &want, Duration::from_secs(5))
}

fn c2() -> Outcome {
    let want = [
        ("total", 544),
        ("IExRE", 192),
        ("WIExRE", 256),
        ("IExWIE", 64),
        ("WIExWIE", 32),
    ];
    check_verify(5, &want, Duration::from_secs(30))
}

fn c3() -> Outcome {
    let d = layout_rb(4).map_err(|e| e.to_string())?;
    let q = count_crossings(&quarter_diagram(&d)).map_err(|e| e.to_string())?;
    if q.total != 24 {
        return Err(format!("quarter has {} crossings", q.total));
    }
    Ok("quarter total 24".into())
}

fn c4() -> Outcome {
    let mut notes = vec![];
    for r in 4..=6 {
        let d = layout_rb(r).map_err(|e| format!("r = {r}: {e}"))?;
        let v = validate_good_drawing(&d);
        if !v.is_empty() {
            return Err(format!(
                "r = {r}: {} violations, first: {:?}",
                v.len(),
                v[0]
            ));
        }
        notes.push(format!("r={r} ok"));
    }
    Ok(notes.join(", "))
}

fn c5() -> Outcome {
    for r in 4..=7 {
        let g = build_wrapped_butterfly(r).map_err(|e| e.to_string())?;
        let geom = match RingGeometry::new(r) {
            Ok(g) => g,
            Err(_) => RingGeometry::bare(r).map_err(|e| e.to_string())?,
        };
        for k in 1..=g.blocks() {
            let ring = layout_ring(&g.block_subgraph(k).map_err(|e| e.to_string())?, &geom)
                .map_err(|e| format!("r = {r}, block {k}: {e}"))?;
            let c = count_crossings(&ring).map_err(|e| format!("r = {r}, block {k}: {e}"))?;
            if c.total != 0 || !c.violations.is_empty() {
                return Err(format!("r = {r}, block {k}: {} crossings", c.total));
            }
        }
    }
    for r in 4..=6 {
        let g = build_wrapped_butterfly(r).map_err(|e| e.to_string())?;
        for k1 in 1..=g.blocks() {
            for k2 in k1 + 1..=g.blocks() {
                g.verify_block_isomorphism(k1, k2)
                    .map_err(|e| format!("r = {r}, blocks {k1},{k2}: {e}"))?;
            }
        }
    }
    Ok("rings planar for r=4..7, all block pairs isomorphic for r=4..6".into())
}

fn c6() -> Outcome {
    let e = |x: ringwing::bounds::BoundsError| x.to_string();
    if bound_new(4).map_err(e)? != 96 {
        return Err("bound_new(4) != 96".into());
    }
    if lemma6(4).map_err(e)? != 0 || lemma7(4).map_err(e)? != 0 {
        return Err("lemma6(4) or lemma7(4) nonzero".into());
    }
    for r in 4..=20 {
        if bound_rings_only(r).map_err(e)? != lemma4(r).map_err(e)? + lemma5(r).map_err(e)? {
            return Err(format!("rings_only != lemma4 + lemma5 at r = {r}"));
        }
        if r >= 5
            && recursion_step(bound_new(r - 1).map_err(e)?, r).map_err(e)?
                != bound_new(r).map_err(e)?
        {
            return Err(format!("recursion fails at r = {r}"));
        }
        let n = bound_new(r).map_err(e)?;
        if !(n < bound_vijaya2015(r) && bound_vijaya2015(r) < bound_cimikowski(r)) {
            return Err(format!("ordering fails at r = {r}"));
        }
    }
    Ok("r=4..20 exact".into())
}

fn c7() -> Outcome {
    let t = Instant::now();
    let d = layout_rb(6).map_err(|e| e.to_string())?;
    let c = count_crossings(&d).map_err(|e| e.to_string())?;
    let took = t.elapsed();
    let bound = bound_new(6).map_err(|e| e.to_string())?;
    let lsum = lemma_sum(6).map_err(|e| e.to_string())?;
    let total = c.total as i128;
    let msg = format!(
        "measured {total}, bound {bound}, lemma sum {lsum}, gap {} in {took:.2?}",
        total - lsum
    );
    if total > bound || took > Duration::from_secs(300) {
        return Err(msg);
    }
    Ok(msg)
}

fn c8() -> Outcome {
    let config = Config {
        cases: 1000,
        failure_persistence: None,
        ..Config::default()
    };
    let mut runner =
        TestRunner::new_with_rng(config, TestRng::deterministic_rng(RngAlgorithm::ChaCha));
    let cases = Cell::new(0u32);
    let degenerate = Cell::new(0u32);
    let res = runner.run(&polyline_set(), |d| {
        cases.set(cases.get() + 1);
        match (oracle(&d), count_crossings(&d)) {
            (Expected::Degenerate, Err(CensusError::Degenerate(_))) => {
                degenerate.set(degenerate.get() + 1)
            }
            (Expected::Census { total, by_class }, Ok(c)) => {
                if c.total != total {
                    return Err(TestCaseError::fail(format!(
                        "total {} vs oracle {total}",
                        c.total
                    )));
                }
                for (k, v) in &c.by_class {
                    if *v != by_class.get(k).copied().unwrap_or(0) {
                        return Err(TestCaseError::fail(format!("class {k} disagrees")));
                    }
                }
            }
            (want, got) => {
                return Err(TestCaseError::fail(format!(
                    "oracle {want:?}, counter {:?}",
                    got.map(|c| c.total)
                )));
            }
        }
        Ok(())
    });
    res.map_err(|e| e.to_string())?;
    let (cases, degenerate) = (cases.get(), degenerate.get());
    if cases < 1000 {
        return Err(format!("only {cases} cases ran"));
    }
    Ok(format!("{cases} cases agree ({degenerate} degenerate)"))
}

fn c9() -> Outcome {
    for r in 2..=8u32 {
        let g = build_wrapped_butterfly(r).map_err(|e| e.to_string())?;
        let ok = g.vertex_count() == (r as usize) << r
            && g.edges().len() == (r as usize) << (r + 1)
            && g.vertices().all(|v| g.degree(v) == 4)
            && g.is_connected();
        if !ok {
            return Err(format!("r = {r}"));
        }
    }
    Ok("r=2..8".into())
}

fn c10() -> Outcome {
    let dir = tempfile::tempdir().map_err(|e| e.to_string())?;
    let run = |name: &str| -> Result<Vec<u8>, String> {
        let path = dir.path().join(name);
        let out = bin()
            .args(["layout", "-r", "5", "-o"])
            .arg(&path)
            .output()
            .map_err(|e| e.to_string())?;
        if !out.status.success() {
            return Err(String::from_utf8_lossy(&out.stderr).trim().to_string());
        }
        std::fs::read(&path).map_err(|e| e.to_string())
    };
    let (a, b) = (run("a.json")?, run("b.json")?);
    if a != b {
        return Err("layout -r 5 output differs between runs".into());
    }
    let path = dir.path().join("a.json");
    let mut counts = vec![];
    for threads in ["1", "2", "4", "8"] {
        let out = bin()
            .arg("count")
            .arg(&path)
            .args(["--threads", threads])
            .output()
            .map_err(|e| e.to_string())?;
        if !out.status.success() {
            return Err(format!(
                "count --threads {threads} exited {:?}",
                out.status.code()
            ));
        }
        counts.push(out.stdout);
    }
    if counts.windows(2).any(|w| w[0] != w[1]) {
        return Err("census differs across --threads".into());
    }
    Ok(format!(
        "{} bytes identical, census equal for threads 1,2,4,8",
        a.len()
    ))
}

fn main() {
    let criteria: [Criterion; 10] = [
        ("1 RB(4) reproduction", c1),
        ("2 RB(5) reproduction", c2),
        ("3 quarter symmetry", c3),
        ("4 good drawing r=4..6", c4),
        ("5 ring planarity and block isomorphism", c5),
        ("6 bound consistency battery", c6),
        ("7 r=6 bound validity", c7),
        ("8 oracle equivalence", c8),
        ("9 graph-size properties", c9),
        ("10 determinism", c10),
    ];
    let mut failed = 0;
    for (name, f) in criteria {
        match f() {
            Ok(detail) => println!("PASS  {name}: {detail}"),
            Err(detail) => {
                failed += 1;
                println!("FAIL  {name}: {detail}");
            }
        }
    }
    println!(
        "{} of {} criteria pass",
        criteria.len() - failed,
        criteria.len()
    );
}
