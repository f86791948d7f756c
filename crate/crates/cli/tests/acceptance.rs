//! One line per acceptance criterion; exits non-zero if any fails.

use std::process::Command;
use std::sync::Arc;
use std::time::Instant;

use cshom::corpus;
use cshom::fraisse::{self, AgeSample};
use cshom::graph::GraphPattern;
use cshom::homogeneity::{self, SweepReport};
use cshom::rms_morphism::enumerate_rms_morphisms;
use cshom::semigroup::{is_homogeneous, MapKind, MorphismSearch, DEFAULT_SUBSEMIGROUP_CAP};
use cshom::{
    EdgeColouredBipartiteGraph, ElemSet, FiniteGroup, FiniteSemigroup, ReesMatrixSemigroup,
    SandwichMatrix,
};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

type Check = Result<String, String>;

fn ensure(ok: bool, msg: impl Into<String>) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg.into())
    }
}

fn err(e: impl std::fmt::Display) -> String {
    e.to_string()
}

fn brute(s: &FiniteSemigroup) -> Result<bool, String> {
    Ok(is_homogeneous(s, DEFAULT_SUBSEMIGROUP_CAP)
        .map_err(err)?
        .homogeneous)
}

fn criterion_1() -> Check {
    let mut parts = Vec::new();
    for (name, size) in [("S2", 8), ("S3", 27), ("S4", 32)] {
        let start = Instant::now();
        let out = Command::new(env!("CARGO_BIN_EXE_cshom"))
            .args(["--json", "homogeneous", name, "--method", "brute"])
            .output()
            .map_err(err)?;
        let v: serde_json::Value = serde_json::from_slice(&out.stdout).map_err(err)?;
        ensure(
            v["result"] == true && out.status.code() == Some(0),
            format!("{name}: brute force returned {}", v["result"]),
        )?;
        let table = corpus_rms(name).to_semigroup();
        ensure(
            table.len() == size,
            format!("{name} has {} elements", table.len()),
        )?;
        parts.push(format!(
            "{name}={size} elts in {:.2}s",
            start.elapsed().as_secs_f64()
        ));
    }
    Ok(parts.join(", "))
}

fn corpus_rms(name: &str) -> ReesMatrixSemigroup {
    match name {
        "S2" => corpus::s2(),
        "S3" => corpus::s3(),
        _ => corpus::s4(),
    }
}

fn criterion_2() -> Check {
    let s4 = corpus::s4();
    let m = s4.matrix();
    let start = Instant::now();
    let mut flips = 0;
    for r in 1..m.rows() {
        for c in 1..m.cols() {
            let mut entries = m.entries().to_vec();
            entries[r * m.cols() + c] ^= 1;
            let p =
                SandwichMatrix::new(m.group().clone(), m.rows(), m.cols(), entries).map_err(err)?;
            let s = Arc::new(ReesMatrixSemigroup::new(p));
            let b = brute(&s.to_semigroup())?;
            let v = homogeneity::classify_homogeneous(&s).map_err(err)?.verdict;
            ensure(
                !b && !v.is_homogeneous(),
                format!("flip at ({r},{c}): brute={b}, classifier={v}"),
            )?;
            flips += 1;
        }
    }
    ensure(flips == 9, format!("{flips} flips"))?;
    Ok(format!(
        "{flips}/9 flips rejected by both in {:.2}s",
        start.elapsed().as_secs_f64()
    ))
}

fn criterion_3() -> Result<(String, SweepReport, SweepReport), String> {
    let start = Instant::now();
    let small = homogeneity::groups_up_to(3).map_err(err)?;
    let four: Vec<_> = homogeneity::groups_up_to(4)
        .map_err(err)?
        .into_iter()
        .filter(|g| g.order() == 4)
        .collect();
    let a = homogeneity::sweep(&small, 3, None).map_err(err)?;
    let b = homogeneity::sweep(&four, 2, None).map_err(err)?;
    let instances = a.instances + b.instances;
    let dis = a.disagreements.len() + b.disagreements.len();
    let inv = a.invariant_failures.len() + b.invariant_failures.len();
    ensure(
        dis == 0 && inv == 0,
        format!("{dis} disagreements, {inv} invariant failures over {instances} instances"),
    )?;
    let line = format!(
        "{instances} instances, {} homogeneous, 0 disagreements in {:.2}s",
        a.homogeneous + b.homogeneous,
        start.elapsed().as_secs_f64()
    );
    Ok((line, a, b))
}

fn criterion_4() -> Check {
    let z2 = FiniteGroup::cyclic(2);
    let z4 = FiniteGroup::cyclic(4);
    let cases = [
        ("Z4", z4.clone(), true),
        ("Z2xZ4", FiniteGroup::direct_product(&z2, &z4), false),
        ("Z2xZ2", FiniteGroup::direct_product(&z2, &z2), true),
    ];
    let mut parts = Vec::new();
    for (name, g, expected) in cases {
        let group_verdict = homogeneity::group_is_homogeneous(&g).map_err(err)?;
        let g = Arc::new(g);
        for (cols, rows) in [(2, 2), (3, 2)] {
            let s = Arc::new(ReesMatrixSemigroup::new(SandwichMatrix::trivial(
                g.clone(),
                rows,
                cols,
            )));
            let v = homogeneity::classify_homogeneous(&s)
                .map_err(err)?
                .verdict
                .is_homogeneous();
            let b = brute(&s.to_semigroup())?;
            ensure(
                v == expected && b == expected && group_verdict == expected,
                format!("{name} {cols}x{rows}: classifier={v}, brute={b}, group={group_verdict}, expected {expected}"),
            )?;
        }
        parts.push(format!("{name}={expected}"));
    }
    Ok(parts.join(", "))
}

fn criterion_5() -> Check {
    let arc = |s: ReesMatrixSemigroup| Arc::new(s);
    let corpus = [
        arc(corpus::s2()),
        arc(corpus::band_rms(2, 2)),
        arc(corpus::band_rms(2, 3)),
        arc(corpus::rectangular_group(2, 2, 2)),
        arc(corpus::rectangular_group(1, 1, 3)),
    ];
    let mut pairs = 0;
    let mut maps_seen = 0;
    for s in &corpus {
        for t in &corpus {
            let ours = enumerate_rms_morphisms(s, t, false).map_err(err)?;
            let (a, b) = (s.to_semigroup(), t.to_semigroup());
            let mut table = MorphismSearch::new(&a, &b, MapKind::Homomorphism).all();
            let mut maps = ours
                .iter()
                .map(|p| p.index_map())
                .collect::<Result<Vec<_>, _>>()
                .map_err(err)?;
            maps.sort();
            table.sort();
            ensure(
                maps == table,
                format!(
                    "{}x{} -> {}x{}: {} vs {} maps",
                    s.cols(),
                    s.rows(),
                    t.cols(),
                    t.rows(),
                    maps.len(),
                    table.len()
                ),
            )?;
            pairs += 1;
            maps_seen += maps.len();
        }
    }
    Ok(format!(
        "{pairs} ordered pairs, {maps_seen} morphisms, 0 mismatches"
    ))
}

fn criterion_6() -> Check {
    let start = Instant::now();
    let colours = ["x", "y", "z"];
    let mut graphs = 0;
    let mut homogeneous = 0;
    for nl in 1..=3usize {
        for nr in 1..=3usize {
            let cells = nl * nr;
            for code in 0..3usize.pow(cells as u32) {
                let f: Vec<usize> = (0..cells)
                    .map(|k| code / 3usize.pow(k as u32) % 3)
                    .collect();
                let g = EdgeColouredBipartiteGraph::new(
                    (1..=nl).map(|k| k.to_string()).collect(),
                    (1..=nr).map(|k| k.to_string()).collect(),
                    colours.iter().map(|c| c.to_string()).collect(),
                    f,
                )
                .map_err(err)?;
                let pattern = g.classify_pattern() != GraphPattern::Other;
                let brute = g.is_homogeneous().homogeneous;
                ensure(
                    pattern == brute,
                    format!("{nl}x{nr} colouring {code}: pattern={pattern}, brute={brute}"),
                )?;
                graphs += 1;
                homogeneous += brute as usize;
            }
        }
    }
    Ok(format!(
        "{graphs} graphs, {homogeneous} homogeneous, 0 mismatches in {:.2}s",
        start.elapsed().as_secs_f64()
    ))
}

fn criterion_7() -> Check {
    let k: Vec<FiniteSemigroup> = (1..=3)
        .flat_map(|m| (1..=3).map(move |n| FiniteSemigroup::rectangular_band(m, n)))
        .collect();
    let within = AgeSample::rectangular_bands(9);
    let hp = fraisse::check_hp(&k, &within, DEFAULT_SUBSEMIGROUP_CAP).map_err(err)?;
    ensure(hp.is_none(), format!("HP fails: {hp:?}"))?;
    let jep = fraisse::check_jep(&k, &within);
    ensure(jep.holds, "JEP fails")?;
    let amalgams = fraisse::amalgams_among(&k);
    let ap = fraisse::check_ap(&amalgams, &within);
    let ok = ap.witnesses.iter().filter(|w| w.is_some()).count();
    ensure(
        ap.holds,
        format!("AP: {ok}/{} amalgams succeed", amalgams.len()),
    )?;
    Ok(format!(
        "HP, JEP ({} pairs), AP ({ok}/{} amalgams)",
        jep.witnesses.len(),
        amalgams.len()
    ))
}

fn criterion_8() -> Check {
    let z2 = Arc::new(corpus::z2());
    let h = ElemSet::full(2);
    let age_h = fraisse::age(&z2.to_semigroup(), 2, DEFAULT_SUBSEMIGROUP_CAP).map_err(err)?;
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    let mut successes = 0;
    let mut failures = Vec::new();
    for trial in 0..50 {
        let result = (|| -> Result<(), String> {
            let [core, b1, b2] = fraisse::random_cs_amalgam(&mut rng, &z2, h, 3).map_err(err)?;
            let out = fraisse::amalgamate_cs(&core, &b1, &b2, &z2, 2).map_err(err)?;
            ensure(
                out.g1.validate().map_err(err)?.is_none(),
                "g1 does not validate",
            )?;
            ensure(
                out.g2.validate().map_err(err)?.is_none(),
                "g2 does not validate",
            )?;
            for x in core.elements() {
                let label = core.element_label(x);
                let y1 = out
                    .g1
                    .apply(b1.parse_element(&label).map_err(err)?)
                    .map_err(err)?;
                let y2 = out
                    .g2
                    .apply(b2.parse_element(&label).map_err(err)?)
                    .map_err(err)?;
                ensure(y1 == y2, format!("embeddings disagree at {label}"))?;
            }
            let data = out.t.entry_group_data();
            let (sub, _) = out.t.group().subgroup(data.generated).map_err(err)?;
            ensure(
                age_h.position(&sub.to_semigroup()).is_some(),
                "entry group outside age(H)",
            )?;
            Ok(())
        })();
        match result {
            Ok(()) => successes += 1,
            Err(e) => failures.push(format!("trial {trial}: {e}")),
        }
    }
    ensure(
        successes == 50,
        format!("{successes}/50; {}", failures.join("; ")),
    )?;
    Ok("50/50 amalgams".into())
}

fn criterion_9() -> Check {
    let z2 = Arc::new(corpus::z2());
    let h = ElemSet::full(2);
    let start = Instant::now();
    let s = fraisse::grow_generic_rms(&z2, h, 2, None).map_err(err)?;
    ensure(s.entry_group_data().generated == h, "G^P is not Z2")?;
    let seed_defects = fraisse::rms_defects(&s, h, 2, 1, 1).map_err(err)?;
    ensure(
        seed_defects.is_empty(),
        format!("{} defects on seed vertices", seed_defects.defects.len()),
    )?;
    let (nr, nc) = (s.rows() - 1, s.cols() - 1);
    let again = fraisse::grow_generic_rms(&z2, h, 2, Some(&s)).map_err(err)?;
    let d = fraisse::rms_defects(&again, h, 2, nr, nc).map_err(err)?;
    ensure(
        d.is_empty(),
        format!("{} defects on the previous vertex set", d.defects.len()),
    )?;
    Ok(format!(
        "{}x{} after one pass, {}x{} after regrowth, in {:.2}s",
        s.cols(),
        s.rows(),
        again.cols(),
        again.rows(),
        start.elapsed().as_secs_f64()
    ))
}

fn criterion_10(sweeps: Option<&(SweepReport, SweepReport)>) -> Check {
    let m = corpus::monogenic_4_2();
    let h = brute(&m)?;
    let cs = m.is_completely_simple();
    let reg = m.is_regular();
    ensure(
        h && !cs && !reg,
        format!("homogeneous={h}, completely simple={cs}, regular={reg}"),
    )?;
    let (a, b) = sweeps.ok_or("sweep unavailable")?;
    let bad = a.regular_not_completely_simple + b.regular_not_completely_simple;
    ensure(
        bad == 0,
        format!("{bad} regular homogeneous sweep instances are not completely simple"),
    )?;
    Ok("monogenic: homogeneous, not completely simple, not regular; sweep: all regular homogeneous completely simple".into())
}

fn main() {
    let mut results: Vec<Check> = vec![criterion_1(), criterion_2()];
    let (c3, sweeps) = match criterion_3() {
        Ok((line, a, b)) => (Ok(line), Some((a, b))),
        Err(e) => (Err(e), None),
    };
    results.push(c3);
    results.extend([
        criterion_4(),
        criterion_5(),
        criterion_6(),
        criterion_7(),
        criterion_8(),
        criterion_9(),
    ]);
    results.push(criterion_10(sweeps.as_ref()));
    let mut failed = 0;
    for (n, r) in results.iter().enumerate() {
        match r {
            Ok(msg) => println!("criterion {}: PASS {msg}", n + 1),
            Err(msg) => {
                failed += 1;
                println!("criterion {}: FAIL {msg}", n + 1);
            }
        }
    }
    println!(
        "acceptance: {}/{} passed",
        results.len() - failed,
        results.len()
    );
    if failed > 0 {
        std::process::exit(1);
    }
}
