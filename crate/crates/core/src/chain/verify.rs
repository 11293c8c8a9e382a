use serde::{Deserialize, Serialize};

use crate::dendrogram::{Dendrogram, Ultrametric, UltrametricError};
use crate::metric::{level_le, same_level, FiniteMetricSpace};
use crate::partition::Partition;
use crate::rips::subset_dim;
use crate::subset::{disjoint, nonempty, SubsetError};
use crate::unchaining::{sl_star_alpha, Alpha};

use super::{
    detect_chained, detect_single_edge_chained, detect_smaller_block_chained, ChainError,
    Conclusion, Hypothesis, ScenarioCheck,
};

/// Points of an α-bridge-unchaining scenario: two blocks, the bridge chain
/// `z_0..z_k` in order, and the singletons to be absorbed on each side.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BridgeScenario {
    pub b1: Vec<String>,
    pub b2: Vec<String>,
    pub z: Vec<String>,
    pub x: Vec<String>,
    pub y: Vec<String>,
}

/// Blocks of the moderate bridge theorem: the chain `B_0..B_k`, the blocks
/// `B'_r` near `B_0`, the blocks `B''_s` near `B_k`, and the two levels.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ModerateScenario {
    pub chain: Vec<Vec<String>>,
    pub left: Vec<Vec<String>>,
    pub right: Vec<Vec<String>>,
    pub t_j: f64,
    pub t_i: f64,
}

fn hyp(id: &str, holds: bool, witness: impl Into<String>) -> Hypothesis {
    Hypothesis {
        id: id.to_string(),
        holds,
        witness: witness.into(),
    }
}

fn same_labels(d: &Dendrogram, space: &FiniteMetricSpace) -> Result<(), ChainError> {
    if d.labels() == space.labels() {
        Ok(())
    } else {
        Err(ChainError::LabelMismatch)
    }
}

fn names(space: &FiniteMetricSpace, idx: &[usize]) -> String {
    let mut v: Vec<&str> = idx.iter().map(|&i| space.label(i)).collect();
    v.sort_unstable();
    format!("{{{}}}", v.join(","))
}

fn strs<S: AsRef<str>>(v: &[S]) -> Vec<&str> {
    v.iter().map(AsRef::as_ref).collect()
}

fn gt(d: f64, t: f64) -> bool {
    !level_le(d, t)
}

fn previous_level(space: &FiniteMetricSpace, t: f64) -> Option<f64> {
    let i = space.levels().index_of(t)?;
    (i > 0).then(|| space.levels().get(i - 1))
}

/// Checks at every stored level that a block containing `subset` also
/// contains every point of `required`.
fn implication(
    d: &Dendrogram,
    space: &FiniteMetricSpace,
    subset: &[usize],
    required: &[usize],
    what: &str,
) -> Conclusion {
    let mut first = None;
    for level in d.levels() {
        let Some(bi) = level.partition.block_containing(subset) else {
            continue;
        };
        let block = &level.partition.blocks()[bi];
        let missing: Vec<usize> = required
            .iter()
            .copied()
            .filter(|p| block.binary_search(p).is_err())
            .collect();
        if !missing.is_empty() {
            return Conclusion {
                holds: false,
                height: Some(level.height),
                detail: format!(
                    "at t = {} the block {} contains {} but not {}",
                    level.height,
                    names(space, block),
                    names(space, subset),
                    names(space, &missing)
                ),
            };
        }
        first.get_or_insert(level.height);
    }
    Conclusion {
        holds: true,
        height: first,
        detail: format!("every block containing {} contains {what}", names(space, subset)),
    }
}

/// If `B1` lies in a block of `θ(t)`, so does `y0`, at every level.
pub fn verify_strongly_chaining(
    d: &Dendrogram,
    space: &FiniteMetricSpace,
    b1: &[impl AsRef<str>],
    b2: &[impl AsRef<str>],
) -> Result<ScenarioCheck, ChainError> {
    same_labels(d, space)?;
    let rep = detect_chained(space, b1, b2)?
        .ok_or_else(|| ChainError::Precondition("the subsets are not chained".into()))?;
    let mut ys: Vec<usize> = rep.witness_idx.iter().map(|w| w[1]).collect();
    ys.sort_unstable();
    ys.dedup();
    let hypotheses = vec![hyp(
        "chained",
        true,
        format!("(a, b) = ({}, {}), y0 in {}", rep.a, rep.b, names(space, &ys)),
    )];
    let conclusion = implication(d, space, &rep.block_idx[0], &ys, "y0");
    Ok(ScenarioCheck::new("strongly", hypotheses, conclusion))
}

/// If `B_0` lies in a block of `θ(t)`, so does the whole witness chain.
pub fn verify_completely_chaining<S: AsRef<str>>(
    d: &Dendrogram,
    space: &FiniteMetricSpace,
    blocks: &[&[S]],
    alpha: Alpha,
) -> Result<ScenarioCheck, ChainError> {
    same_labels(d, space)?;
    let rep = detect_smaller_block_chained(space, blocks, alpha)?.ok_or_else(|| {
        ChainError::Precondition("the blocks are not chained through smaller blocks".into())
    })?;
    let chain = &rep.witness_idx[0];
    let hypotheses = vec![hyp(
        "smaller_blocks",
        true,
        format!(
            "(a, b) = ({}, {}), chain {}",
            rep.a,
            rep.b,
            rep.witnesses[0].join(",")
        ),
    )];
    let conclusion = implication(d, space, &rep.block_idx[0], chain, "the chain");
    Ok(ScenarioCheck::new("completely", hypotheses, conclusion))
}

/// Hypotheses of the weakly unchaining implication for `X = B1 ∪ B2` with
/// nuclei `N1 ⊆ B1`, `N2 ⊆ B2`; conclusion: some level is exactly
/// `{B1, B2}`. The detail also reports whether `θ(t_i)` refines `{B1, B2}`.
#[allow(clippy::too_many_arguments)]
pub fn verify_weakly_unchaining(
    d: &Dendrogram,
    space: &FiniteMetricSpace,
    b1: &[impl AsRef<str>],
    b2: &[impl AsRef<str>],
    n1: &[impl AsRef<str>],
    n2: &[impl AsRef<str>],
    alpha: Alpha,
) -> Result<ScenarioCheck, ChainError> {
    same_labels(d, space)?;
    let sides = disjoint(space, &[&strs(b1), &strs(b2)])?;
    let (s1, s2) = (&sides[0], &sides[1]);
    let nuc = [nonempty(space, n1)?, nonempty(space, n2)?];
    let mut h = Vec::new();

    h.push(hyp(
        "cover",
        s1.len() + s2.len() == space.len(),
        format!("#B1 + #B2 = {} of {}", s1.len() + s2.len(), space.len()),
    ));
    let inside = |n: &[usize], s: &[usize]| n.iter().all(|p| s.binary_search(p).is_ok());
    h.push(hyp(
        "nuclei_in_sides",
        inside(&nuc[0], s1) && inside(&nuc[1], s2),
        format!("N1 = {}, N2 = {}", names(space, &nuc[0]), names(space, &nuc[1])),
    ));

    let edge = detect_single_edge_chained(space, b1, b2)?;
    let partition = Partition::from_blocks(vec![s1.clone(), s2.clone()]);
    let refines_note = match &edge {
        None => {
            h.push(hyp("single_edge", false, "no single edge chains B1 to B2"));
            for id in ["nuclei_formed", "nuclei_dense", "bridge_in_nuclei", "diameters"] {
                h.push(hyp(id, false, "needs the single edge"));
            }
            String::new()
        }
        Some(rep) => {
            let (tj, ti) = (rep.a, rep.b);
            let (x0, y0) = (rep.witness_idx[0][0], rep.witness_idx[0][1]);
            h.push(hyp(
                "single_edge",
                true,
                format!(
                    "edge ({}, {}), (t_j, t_i) = ({tj}, {ti}), threshold of B1 equals t_j: {}",
                    space.label(x0),
                    space.label(y0),
                    rep.literal_reading == Some(true)
                ),
            ));
            let formed = match previous_level(space, tj) {
                Some(prev) => {
                    let p = d.partition_at(prev).expect("non-negative level");
                    let ok = nuc.iter().all(|n| p.block_containing(n).is_some());
                    hyp("nuclei_formed", ok, format!("t_(j-1) = {prev}"))
                }
                None => hyp("nuclei_formed", false, "t_j is the first level"),
            };
            h.push(formed);
            let level = space.levels().floor_index(tj);
            let dims: Vec<usize> = nuc.iter().map(|n| subset_dim(space, n, level)).collect();
            h.push(hyp(
                "nuclei_dense",
                dims.iter().all(|&k| k > alpha.get()),
                format!("dim F_t_j(N1) = {}, dim F_t_j(N2) = {}, alpha = {alpha}", dims[0], dims[1]),
            ));
            h.push(hyp(
                "bridge_in_nuclei",
                nuc[0].binary_search(&x0).is_ok() && nuc[1].binary_search(&y0).is_ok(),
                format!("bridge ends {} and {}", space.label(x0), space.label(y0)),
            ));
            let (d1, d2) = (space.subset_diameter(s1), space.subset_diameter(s2));
            h.push(hyp(
                "diameters",
                level_le(d1, ti) && level_le(d2, ti),
                format!("diam B1 = {d1}, diam B2 = {d2}, t_i = {ti}"),
            ));
            let at_ti = d.partition_at(ti).expect("non-negative level");
            format!("; theta(t_i) refines {{B1, B2}}: {}", at_ti.refines(&partition))
        }
    };

    let height = d.height_of_partition(partition.blocks());
    let conclusion = Conclusion {
        holds: height.is_some(),
        height,
        detail: match height {
            Some(t) => format!("theta({t}) = {{B1, B2}}{refines_note}"),
            None => format!("no level equals {{B1, B2}}{refines_note}"),
        },
    };
    Ok(ScenarioCheck::new("weakly", h, conclusion))
}

/// Hypotheses a) to h) of α-bridge-unchaining plus the requirement that
/// `θ(t_{i-1})` is exactly the scenario partition; conclusion: some level
/// is `{B1 ∪ x's, z_0, ..., z_k, B2 ∪ y's}`.
///
/// `t_i` is `d(z_0, z_1)` when the chain has a link, otherwise the largest
/// of the distances bounded in c), d) and e). The size balance in h) is
/// checked as `α·#B1 >= #B2` and `α·#B2 >= #B1`; the strict form is
/// reported in the witness.
pub fn verify_bridge_unchaining(
    d: &Dendrogram,
    space: &FiniteMetricSpace,
    scenario: &BridgeScenario,
    alpha: Alpha,
) -> Result<ScenarioCheck, ChainError> {
    same_labels(d, space)?;
    let sides = disjoint(space, &[&strs(&scenario.b1), &strs(&scenario.b2)])?;
    let (s1, s2) = (&sides[0], &sides[1]);
    let z: Vec<usize> = scenario
        .z
        .iter()
        .map(|l| space.resolve(&[l]).map(|v| v[0]))
        .collect::<Result<_, _>>()
        .map_err(SubsetError::from)?;
    if z.is_empty() {
        return Err(SubsetError::Empty.into());
    }
    let xs = space.resolve(&scenario.x).map_err(SubsetError::from)?;
    let ys = space.resolve(&scenario.y).map_err(SubsetError::from)?;
    let mut seen = vec![false; space.len()];
    for &p in s1.iter().chain(s2).chain(&z).chain(&xs).chain(&ys) {
        if std::mem::replace(&mut seen[p], true) {
            return Err(SubsetError::Overlap(space.label(p).to_string()).into());
        }
    }
    let k = z.len() - 1;
    let dset = |p: usize, s: &[usize]| space.set_distance(&[p], s);

    let ti = if k >= 1 {
        space.dist(z[0], z[1])
    } else {
        xs.iter()
            .map(|&x| dset(x, s1))
            .chain(ys.iter().map(|&y| dset(y, s2)))
            .chain([dset(z[0], s1), dset(z[k], s2)])
            .fold(0.0, f64::max)
    };
    let mut h = Vec::new();

    let mut blocks = vec![s1.clone(), s2.clone()];
    blocks.extend(z.iter().chain(&xs).chain(&ys).map(|&p| vec![p]));
    let scenario_partition = Partition::from_blocks(blocks);
    h.push(match previous_level(space, ti) {
        Some(prev) => hyp(
            "partition",
            d.partition_at(prev).expect("non-negative level") == &scenario_partition,
            format!("t_i = {ti}, t_(i-1) = {prev}"),
        ),
        None => hyp("partition", false, format!("t_i = {ti} has no previous level")),
    });

    let links: Vec<f64> = z.windows(2).map(|w| space.dist(w[0], w[1])).collect();
    h.push(hyp(
        "a",
        links.iter().all(|&l| same_level(l, ti)),
        format!("links {links:?}"),
    ));
    let mut b_ok = true;
    for j1 in 0..=k {
        for j2 in (j1 + 2)..=k {
            b_ok &= gt(space.dist(z[j1], z[j2]), ti);
        }
    }
    h.push(hyp("b", b_ok, "non-consecutive chain points beyond t_i"));
    let cx = xs.iter().map(|&x| dset(x, s1)).fold(0.0, f64::max);
    h.push(hyp("c", level_le(cx, ti), format!("max d(x_r, B1) = {cx}")));
    let dy = ys.iter().map(|&y| dset(y, s2)).fold(0.0, f64::max);
    h.push(hyp("d", level_le(dy, ti), format!("max d(y_s, B2) = {dy}")));
    let (e0, ek) = (dset(z[0], s1), dset(z[k], s2));
    h.push(hyp(
        "e",
        level_le(e0, ti) && level_le(ek, ti),
        format!("d(z_0, B1) = {e0}, d(z_k, B2) = {ek}"),
    ));
    let inner_min = z
        .get(1..k)
        .unwrap_or(&[])
        .iter()
        .map(|&p| dset(p, s1).min(dset(p, s2)))
        .fold(f64::INFINITY, f64::min);
    h.push(hyp("f", gt(inner_min, ti), format!("min over inner z = {inner_min}")));
    let mut g = vec![space.set_distance(s1, s2)];
    for &x in &xs {
        g.push(dset(x, s2));
        g.extend(z.iter().map(|&p| space.dist(x, p)));
        g.extend(ys.iter().map(|&y| space.dist(x, y)));
    }
    for &y in &ys {
        g.push(dset(y, s1));
        g.extend(z.iter().map(|&p| space.dist(p, y)));
    }
    let gmin = g.into_iter().fold(f64::INFINITY, f64::min);
    h.push(hyp("g", gt(gmin, ti), format!("minimum = {gmin}")));
    let (n1, n2, a) = (s1.len(), s2.len(), alpha.get());
    let strict = a * n1 > n2 && a * n2 > n1;
    h.push(hyp(
        "h",
        a < n1.max(n2) && a * n1 >= n2 && a * n2 >= n1,
        format!("#B1 = {n1}, #B2 = {n2}, alpha = {a}, strict balance: {strict}"),
    ));

    let mut left = s1.clone();
    left.extend(&xs);
    let mut right = s2.clone();
    right.extend(&ys);
    let mut target = vec![left, right];
    target.extend(z.iter().map(|&p| vec![p]));
    let height = d.height_of_partition(&target);
    let conclusion = Conclusion {
        holds: height.is_some(),
        height,
        detail: match height {
            Some(t) => format!("theta({t}) isolates the bridge"),
            None => "no level isolates the bridge".into(),
        },
    };
    Ok(ScenarioCheck::new("bridge", h, conclusion))
}

/// Runs SL*(α) and checks the block-level bridge statement: hypotheses a)
/// to h) on `θ*(t_{j-1})`, conclusion
/// `θ*(t_i) = {B_0 ∪ B'.., B_1, ..., B_{k-1}, B_k ∪ B''..}`. The size
/// balance in g) is checked with `>=`; the strict form is reported in the
/// witness.
pub fn verify_moderate_bridge_theorem(
    space: &FiniteMetricSpace,
    alpha: Alpha,
    scenario: &ModerateScenario,
) -> Result<ScenarioCheck, ChainError> {
    let m = &scenario.chain;
    if m.len() < 3 {
        return Err(SubsetError::TooFew(3).into());
    }
    let all: Vec<Vec<&str>> = m
        .iter()
        .chain(&scenario.left)
        .chain(&scenario.right)
        .map(|b| strs(b))
        .collect();
    let refs: Vec<&[&str]> = all.iter().map(Vec::as_slice).collect();
    let sets = disjoint(space, &refs)?;
    let k = m.len() - 1;
    let chain = &sets[..=k];
    let left = &sets[k + 1..k + 1 + scenario.left.len()];
    let right = &sets[k + 1 + scenario.left.len()..];
    let (tj, ti) = (scenario.t_j, scenario.t_i);
    let d = sl_star_alpha(space, alpha)?;
    let mut h = Vec::new();

    let in_d = space.levels().index_of(tj).is_some() && space.levels().index_of(ti).is_some();
    h.push(hyp(
        "levels",
        in_d && tj > 0.0 && level_le(tj, ti) && ti < 2.0 * tj && !same_level(ti, 2.0 * tj),
        format!("t_j = {tj}, t_i = {ti}"),
    ));
    let start = Partition::from_blocks(sets.clone());
    h.push(match previous_level(space, tj) {
        Some(prev) => hyp(
            "partition",
            d.partition_at(prev).expect("non-negative level") == &start,
            format!("t_(j-1) = {prev}"),
        ),
        None => hyp("partition", false, "t_j has no previous level"),
    });

    let gaps: Vec<f64> = chain.windows(2).map(|w| space.set_distance(&w[0], &w[1])).collect();
    h.push(hyp(
        "a",
        gaps.iter().all(|&g| same_level(g, tj)),
        format!("consecutive gaps {gaps:?}"),
    ));
    let mut b_ok = true;
    for l1 in 0..=k {
        for l2 in (l1 + 2)..=k {
            b_ok &= gt(space.set_distance(&chain[l1], &chain[l2]), ti);
        }
    }
    h.push(hyp("b", b_ok, "non-consecutive chain blocks beyond t_i"));
    let c = left.iter().map(|b| space.set_distance(b, &chain[0])).fold(0.0, f64::max);
    h.push(hyp("c", level_le(c, ti), format!("max d(B'_r, B_0) = {c}")));
    let dd = right.iter().map(|b| space.set_distance(b, &chain[k])).fold(0.0, f64::max);
    h.push(hyp("d", level_le(dd, ti), format!("max d(B''_s, B_k) = {dd}")));
    let e = left
        .iter()
        .flat_map(|b| chain[1..].iter().map(move |c| (b, c)))
        .map(|(b, c)| space.set_distance(b, c))
        .fold(f64::INFINITY, f64::min);
    h.push(hyp("e", gt(e, ti), format!("min d(B'_r, B_l), l >= 1 = {e}")));
    let f = right
        .iter()
        .flat_map(|b| chain[..k].iter().map(move |c| (b, c)))
        .map(|(b, c)| space.set_distance(b, c))
        .fold(f64::INFINITY, f64::min);
    h.push(hyp("f", gt(f, ti), format!("min d(B_l, B''_s), l < k = {f}")));
    let a = alpha.get();
    let (n0, nk) = (chain[0].len(), chain[k].len());
    let inner_max = chain[1..k].iter().map(Vec::len).max().unwrap_or(0);
    let strict = a * n0 > nk && a * nk > n0;
    h.push(hyp(
        "g",
        a * inner_max < n0.max(nk) && a * n0 >= nk && a * nk >= n0,
        format!("#B_0 = {n0}, #B_k = {nk}, max inner = {inner_max}, strict balance: {strict}"),
    ));
    let level = space.levels().floor_index(ti);
    let small = chain[1..k]
        .iter()
        .chain(left)
        .chain(right)
        .map(|b| subset_dim(space, b, level))
        .max()
        .unwrap_or(0);
    h.push(hyp(
        "h",
        small < a,
        format!("largest dim F_t_i over inner and side blocks = {small}"),
    ));

    let mut first = chain[0].clone();
    first.extend(left.iter().flatten());
    let mut last = chain[k].clone();
    last.extend(right.iter().flatten());
    let mut target = vec![first, last];
    target.extend(chain[1..k].iter().cloned());
    let target = Partition::from_blocks(target);
    let got = d.partition_at(ti).expect("non-negative level");
    let holds = got == &target;
    let conclusion = Conclusion {
        holds,
        height: Some(ti),
        detail: if holds {
            format!("theta*({ti}) matches")
        } else {
            format!("theta*({ti}) = {:?}", got.labeled(space.labels()))
        },
    };
    Ok(ScenarioCheck::new("moderate", h, conclusion))
}

/// A quadruple `(x, y, z, w)` with `u_sl(x, y) <= u_sl(z, w)` but
/// `u(x, y) > u(z, w)`, if any.
pub fn check_sl_order_dominance(
    u: &Ultrametric,
    u_sl: &Ultrametric,
) -> Result<Option<[String; 4]>, UltrametricError> {
    if u.labels() != u_sl.labels() {
        return Err(UltrametricError::LabelMismatch);
    }
    let n = u.len();
    let pairs: Vec<(usize, usize)> = (0..n)
        .flat_map(|i| ((i + 1)..n).map(move |j| (i, j)))
        .collect();
    for &(x, y) in &pairs {
        for &(z, w) in &pairs {
            if level_le(u_sl.get(x, y), u_sl.get(z, w)) && gt(u.get(x, y), u.get(z, w)) {
                let l = |i: usize| u.labels()[i].clone();
                return Ok(Some([l(x), l(y), l(z), l(w)]));
            }
        }
    }
    Ok(None)
}
