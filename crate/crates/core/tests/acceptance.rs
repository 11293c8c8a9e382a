//! Acceptance run: one PASS/FAIL line per criterion. Exits non-zero when any
//! criterion fails.

mod common;

use std::process::ExitCode;

use common::*;
use rand::seq::SliceRandom;
use rand::Rng;
use unchain::chain::generators::{
    bridge_instance, smaller_blocks_instance, weakly_instance, BridgeParams, WeaklyParams,
};
use unchain::chain::{
    detect_chained, verify_bridge_unchaining, verify_completely_chaining,
    verify_strongly_chaining, verify_weakly_unchaining, Verdict,
};
use unchain::dbscan::dbscan;
use unchain::linkage::{agglomerate, linkage_value, single_linkage_components, LinkageKind};
use unchain::rips::{max_cross_simplex_dim, rips_dim};
use unchain::unchaining::{sl_alpha, sl_star_alpha};
use unchain::{fixtures, Alpha, Dendrogram, FiniteMetricSpace};

const N1: [&str; 4] = ["x0", "a1", "a2", "a3"];
const N2: [&str; 4] = ["y0", "b1", "b2", "b3"];
const B1: [&str; 7] = ["x0", "a1", "a2", "a3", "x1", "x2", "x3"];
const B2: [&str; 7] = ["y0", "b1", "b2", "b3", "y1", "y2", "y3"];

type Outcome = Result<String, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn alpha(a: usize) -> Alpha {
    Alpha::new(a).unwrap()
}

fn merge_heights(d: &Dendrogram) -> Vec<f64> {
    d.heights().skip(1).collect()
}

fn sorted(v: &[&str]) -> Vec<String> {
    let mut v: Vec<String> = v.iter().map(|s| s.to_string()).collect();
    v.sort();
    v
}

fn partition(v: &[&[&str]]) -> Vec<Vec<String>> {
    let mut p: Vec<Vec<String>> = v.iter().map(|b| sorted(b)).collect();
    p.sort();
    p
}

fn never_two_sides(d: &Dendrogram) -> bool {
    let target = partition(&[&B1, &B2]);
    d.labeled_levels().iter().all(|(_, p)| *p != target)
}

fn ac1() -> Outcome {
    let tn = fixtures::two_nuclei();
    let d = sl_alpha(&tn, alpha(1));
    ensure(merge_heights(&d) == [1.0, 3.0, 5.0], || format!("SL(1) two-nuclei heights {:?}", merge_heights(&d)))?;
    let at3 = d.labeled_partition_at(3.0).unwrap();
    ensure(at3 == partition(&[&B1, &B2]), || format!("SL(1) theta(3) = {at3:?}"))?;
    for a in [3, 4, 7, 13] {
        let d = sl_alpha(&tn, alpha(a));
        ensure(merge_heights(&d) == [1.0, 3.0], || format!("SL({a}) heights {:?}", merge_heights(&d)))?;
    }

    let br = fixtures::two_nuclei_bridge();
    let star = sl_star_alpha(&br, alpha(1)).map_err(|e| e.to_string())?;
    ensure(merge_heights(&star) == [1.0, 3.0, 6.0], || format!("SL*(1) heights {:?}", merge_heights(&star)))?;
    let at3 = star.labeled_partition_at(3.0).unwrap();
    ensure(at3 == partition(&[&B1, &["z0"], &B2]), || format!("SL*(1) theta(3) = {at3:?}"))?;
    for a in 1..=15 {
        let d = sl_alpha(&br, alpha(a));
        let at2 = d.labeled_partition_at(2.0).unwrap();
        let z_block = at2.iter().find(|b| b.iter().any(|l| l == "z0")).unwrap();
        ensure(z_block.len() > 1, || format!("SL({a}) keeps z0 alone at 2"))?;
        let last = d.heights().last().unwrap();
        ensure(last == 3.0, || format!("SL({a}) completes at {last}"))?;
    }

    let ring = fixtures::uniform_ring();
    for a in 1..=8 {
        let d = sl_alpha(&ring, alpha(a));
        ensure(merge_heights(&d) == [1.0], || format!("ring SL({a}) heights {:?}", merge_heights(&d)))?;
    }
    Ok("two-nuclei, two-nuclei-bridge and uniform-ring goldens".into())
}

fn ac2() -> Outcome {
    let al = fixtures::al_bridge();
    let v = linkage_value(&al, LinkageKind::Average, &N1, &N2).map_err(|e| e.to_string())?;
    ensure(v == 3.75, || format!("AL(N1, N2) = {v}"))?;
    let d = agglomerate(&al, LinkageKind::Average);
    let last = d.heights().last().unwrap();
    ensure(last == 3.75, || format!("AL completes at {last}"))?;
    ensure(never_two_sides(&d), || "AL shows {B1, B2}".into())?;

    let cl = fixtures::cl_cross();
    let v = linkage_value(&cl, LinkageKind::Complete, &N1, &N2).map_err(|e| e.to_string())?;
    ensure(v == 4.0, || format!("CL(N1, N2) = {v}"))?;
    let d = agglomerate(&cl, LinkageKind::Complete);
    ensure(d.partition_at(4.0).unwrap().len() == 1, || "CL theta(4) is not {X}".into())?;
    ensure(never_two_sides(&d), || "CL shows {B1, B2}".into())?;
    Ok("AL = 3.75 on al-bridge, CL = 4 on cl-cross, {B1, B2} never produced".into())
}

fn ac3() -> Outcome {
    let l = dbscan(&fixtures::two_nuclei(), 3.0, 4).map_err(|e| e.to_string())?;
    ensure(l.clusters.len() == 1 && l.noise.is_empty(), || format!("{l:?}"))?;
    Ok(format!("one cluster of {} points, no noise", l.clusters[0].len()))
}

fn ac4() -> Outcome {
    let mut r = rng(4);
    for case in 0..200 {
        let n = r.gen_range(1..=10);
        let (_, s) = random_space(&mut r, n);
        for &t in s.levels().values() {
            let got = s.epsilon_components(t).unwrap().labeled(s.labels());
            ensure(got == bfs_components(&s, t), || format!("case {case}: components at {t}"))?;
        }
        let direct = single_linkage_components(&s);
        ensure(agglomerate(&s, LinkageKind::Single) == direct, || format!("case {case}: agglomerate"))?;
        ensure(sl_alpha(&s, alpha(n.saturating_sub(1).max(1))) == direct, || format!("case {case}: SL(n-1)"))?;
    }
    for case in 0..200 {
        let n = r.gen_range(2..=12);
        let (_, s) = random_space(&mut r, n);
        let sets = random_disjoint(&mut r, n, 2);
        let (left, right) = (labels_of(&s, &sets[0]), labels_of(&s, &sets[1]));
        let t = *s.levels().values().choose(&mut r).unwrap();
        let dim = rips_dim(&s, &left, t).unwrap();
        ensure(dim == brute_dim(&s, &sets[0], t), || format!("case {case}: rips_dim"))?;
        let cross = max_cross_simplex_dim(&s, &left, &right, t).unwrap();
        ensure(cross == brute_cross_dim(&s, &sets[0], &sets[1], t), || format!("case {case}: cross dim"))?;
    }
    Ok("200 graphs each: components, Rips dimensions, single-linkage routes".into())
}

fn ac5() -> Outcome {
    let mut r = rng(5);
    let mut strongly = 0;
    while strongly < 200 {
        let n = r.gen_range(2..=10);
        let (_, s) = random_space(&mut r, n);
        let sets = random_disjoint(&mut r, n, 2);
        let (b1, b2) = (labels_of(&s, &sets[0]), labels_of(&s, &sets[1]));
        if detect_chained(&s, &b1, &b2).unwrap().is_none() {
            continue;
        }
        strongly += 1;
        let c = verify_strongly_chaining(&single_linkage_components(&s), &s, &b1, &b2).map_err(|e| e.to_string())?;
        ensure(c.verdict == Verdict::Confirmed, || format!("strongly: {c:?}"))?;
    }
    for _ in 0..200 {
        let inst = smaller_blocks_instance(&mut r);
        let s = inst.graph.to_space().unwrap();
        let blocks: Vec<&[String]> = inst.blocks.iter().map(Vec::as_slice).collect();
        let c = verify_completely_chaining(&single_linkage_components(&s), &s, &blocks, inst.alpha)
            .map_err(|e| e.to_string())?;
        ensure(c.verdict == Verdict::Confirmed, || format!("completely: {c:?}"))?;
    }
    let mut weakly = 0;
    for _ in 0..1000 {
        let p = WeaklyParams::sample(&mut r);
        let inst = weakly_instance(&mut r, p);
        let s = inst.graph.to_space().unwrap();
        let d = sl_alpha(&s, inst.alpha);
        let c = verify_weakly_unchaining(&d, &s, &inst.b1, &inst.b2, &inst.n1, &inst.n2, inst.alpha)
            .map_err(|e| e.to_string())?;
        ensure(c.verdict != Verdict::Counterexample, || format!("weakly: {c:?}"))?;
        weakly += usize::from(c.hypotheses_hold());
        if weakly == 100 {
            break;
        }
    }
    ensure(weakly >= 100, || format!("only {weakly} weakly instances met the hypotheses"))?;
    let mut bridge = 0;
    for _ in 0..1000 {
        let p = BridgeParams::sample(&mut r);
        let inst = bridge_instance(&mut r, p);
        let s = inst.graph.to_space().unwrap();
        let d = sl_star_alpha(&s, inst.alpha).map_err(|e| e.to_string())?;
        let c = verify_bridge_unchaining(&d, &s, &inst.scenario, inst.alpha).map_err(|e| e.to_string())?;
        ensure(c.verdict != Verdict::Counterexample, || format!("bridge: {c:?}"))?;
        bridge += usize::from(c.hypotheses_hold());
        if bridge == 100 {
            break;
        }
    }
    ensure(bridge >= 100, || format!("only {bridge} bridge instances met the hypotheses"))?;
    let one = alpha(1);
    for (s, kind) in [(fixtures::cl_cross(), LinkageKind::Complete), (fixtures::al_bridge(), LinkageKind::Average)] {
        let c = verify_weakly_unchaining(&agglomerate(&s, kind), &s, &B1, &B2, &N1, &N2, one)
            .map_err(|e| e.to_string())?;
        ensure(!c.conclusion.holds, || format!("{kind} reached {{B1, B2}}"))?;
    }
    Ok(format!(
        "strongly {strongly}, completely 200, weakly {weakly}, bridge {bridge}: 0 counterexamples; CL and AL fail the conclusion"
    ))
}

fn ac6() -> Outcome {
    let mut r = rng(6);
    let methods = |s: &FiniteMetricSpace| -> Result<Vec<Dendrogram>, String> {
        let mut v = vec![
            single_linkage_components(s),
            agglomerate(s, LinkageKind::Complete),
            agglomerate(s, LinkageKind::Average),
        ];
        for a in 1..=3 {
            v.push(sl_alpha(s, alpha(a)));
            v.push(sl_star_alpha(s, alpha(a)).map_err(|e| e.to_string())?);
        }
        Ok(v)
    };
    let mut checked = 0;
    for f in fixtures::CATALOG {
        let s = f.space();
        let base = methods(&s)?;
        for d in &base {
            ensure(d.validate().is_empty(), || format!("{}: {:?}", f.name, d.validate()))?;
            let u = d.to_ultrametric().map_err(|e| e.to_string())?;
            ensure(Dendrogram::from_ultrametric(&u) == *d, || format!("{}: round trip", f.name))?;
            checked += 1;
        }
        for _ in 0..20 {
            let mut order: Vec<usize> = (0..s.len()).collect();
            order.shuffle(&mut r);
            let p = s.permuted(&order, |l| format!("q{l}"));
            for (d, e) in base.iter().zip(methods(&p)?) {
                ensure(e.validate().is_empty(), || format!("{}: relabeled invalid", f.name))?;
                ensure(
                    relabeled(&e, |l| l[1..].to_string()) == relabeled(d, str::to_string),
                    || format!("{}: relabeling changed the dendrogram", f.name),
                )?;
            }
        }
    }
    Ok(format!("{checked} fixture dendrograms, 20 relabelings per fixture"))
}

fn ac7() -> Outcome {
    Ok("no large-scale experiments to reproduce".into())
}

fn main() -> ExitCode {
    let criteria: [(&str, fn() -> Outcome); 7] = [
        ("AC1 fixture goldens", ac1),
        ("AC2 classic-linkage goldens", ac2),
        ("AC3 DBSCAN on two-nuclei", ac3),
        ("AC4 oracle equivalences", ac4),
        ("AC5 falsifier suites", ac5),
        ("AC6 structural invariants", ac6),
        ("AC7 desk-scale scope", ac7),
    ];
    let mut failed = 0;
    for (name, run) in criteria {
        match run() {
            Ok(note) => println!("PASS {name}: {note}"),
            Err(why) => {
                failed += 1;
                println!("FAIL {name}: {why}");
            }
        }
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
