//! End-to-end acceptance checks. Prints one PASS/FAIL line per criterion.
//!
//! Expected values are spelled out here from the closed forms rather than
//! taken from the library, so a wrong formula in the library cannot agree
//! with itself.

use std::collections::HashSet;
use std::process::Command;
use std::time::Instant;

use irregularity_core::enumerate::{all_graphs_by_order, labeled_edge_subsets};
use irregularity_core::sequences::is_graphical;
use irregularity_core::verify::{
    check_conjecture, k_minimal, k_minimal_sequences, rankings_agree, verify_bicyclic,
    verify_bounds, verify_transform_deltas, verify_trees, verify_unicyclic, ConjectureMode,
    ConjectureReport, RankedMinimum,
};
use irregularity_core::{
    canonical_form, degree_sequence, irr_t_of_sequence, parse_graph6, total_irregularity,
    write_graph6, DegreeSequence, Family, Graph, VerificationReport,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Check = Result<String, String>;

/// Sequence from `(degree, multiplicity)` runs.
fn seq(runs: &[(u32, usize)]) -> DegreeSequence {
    let v: Vec<u32> = runs.iter().flat_map(|&(d, k)| std::iter::repeat_n(d, k)).collect();
    DegreeSequence::new(v).unwrap()
}

fn expect_ranks(
    r: &VerificationReport,
    values: &[u64],
    seqs: &[DegreeSequence],
) -> Result<(), String> {
    let got: Vec<(u64, Vec<DegreeSequence>)> =
        r.ranks.iter().map(|x| (x.value, x.sequences.clone())).collect();
    let want: Vec<(u64, Vec<DegreeSequence>)> =
        values.iter().zip(seqs).map(|(&v, s)| (v, vec![s.clone()])).collect();
    if got != want {
        return Err(format!("{} n={}: got {:?}, want {:?}", r.family.name(), r.n, got, want));
    }
    if !r.passed() {
        return Err(format!("{} n={}: report verdict {:?}", r.family.name(), r.n, r.verdict));
    }
    Ok(())
}

fn c1_trees() -> Check {
    let reports = verify_trees(6..=11).map_err(|e| e.to_string())?;
    for r in &reports {
        let n = r.n as u64;
        let k = r.n;
        expect_ranks(
            r,
            &[2 * n - 4, 4 * n - 10, 6 * n - 20],
            &[
                seq(&[(2, k - 2), (1, 2)]),
                seq(&[(3, 1), (2, k - 4), (1, 3)]),
                seq(&[(3, 2), (2, k - 6), (1, 4)]),
            ],
        )?;
        let path = canonical_form(&Graph::path(k).unwrap()).unwrap();
        let minimizers: Vec<Graph> = Family::Tree
            .graphs(k)
            .unwrap()
            .into_iter()
            .filter(|g| total_irregularity(g) == 2 * n - 4)
            .collect();
        if minimizers.len() != 1 || canonical_form(&minimizers[0]).unwrap() != path {
            return Err(format!("n={k}: rank-1 tree is not only the path"));
        }
    }
    Ok(format!("{} reports, n = 6..11", reports.len()))
}

fn c2_unicyclic() -> Check {
    let reports = verify_unicyclic(5..=10).map_err(|e| e.to_string())?;
    for r in &reports {
        let n = r.n as u64;
        let k = r.n;
        expect_ranks(
            r,
            &[0, 2 * n - 2, 4 * n - 8],
            &[
                seq(&[(2, k)]),
                seq(&[(3, 1), (2, k - 2), (1, 1)]),
                seq(&[(3, 2), (2, k - 4), (1, 2)]),
            ],
        )?;
        let cycle = canonical_form(&Graph::cycle(k).unwrap()).unwrap();
        let zero: Vec<Graph> = Family::Unicyclic
            .graphs(k)
            .unwrap()
            .into_iter()
            .filter(|g| total_irregularity(g) == 0)
            .collect();
        if zero.len() != 1 || canonical_form(&zero[0]).unwrap() != cycle {
            return Err(format!("n={k}: rank-1 unicyclic graph is not only the cycle"));
        }
    }
    Ok(format!("{} reports, n = 5..10", reports.len()))
}

fn c3_bicyclic() -> Check {
    let reports = verify_bicyclic(7..=10).map_err(|e| e.to_string())?;
    for r in &reports {
        let n = r.n as u64;
        let k = r.n;
        let a = seq(&[(3, 2), (2, k - 2)]);
        let b = seq(&[(4, 1), (2, k - 1)]);
        let c = seq(&[(3, 3), (2, k - 4), (1, 1)]);
        match r.family {
            Family::BicyclicInfinityL1 => expect_ranks(
                r,
                &[2 * n - 2, 4 * n - 6],
                &[b, seq(&[(4, 1), (3, 1), (2, k - 3), (1, 1)])],
            )?,
            Family::BicyclicInfinityL2plus | Family::BicyclicTheta => {
                expect_ranks(r, &[2 * n - 4, 4 * n - 10], &[a, c])?
            }
            Family::BicyclicAll => expect_ranks(r, &[2 * n - 4, 2 * n - 2, 4 * n - 10], &[a, b, c])?,
            f => return Err(format!("unexpected family {f:?}")),
        }
    }
    Ok(format!("{} reports (three classes and all), n = 7..10", reports.len()))
}

fn c4_deltas() -> Check {
    let mut moves = 0;
    for family in [Family::Tree, Family::Unicyclic, Family::BicyclicAll] {
        for n in 1..=8 {
            let row = verify_transform_deltas(family, n).map_err(|e| e.to_string())?;
            if !row.passed() {
                return Err(format!("{row:?}"));
            }
            moves += row.moves;
        }
    }
    if moves == 0 {
        return Err("no moves examined".into());
    }
    Ok(format!("{moves} moves, every delta = -2(r+1) < 0"))
}

fn c5_c6_bounds() -> (Check, Check) {
    let rows = match verify_bounds(1..=11) {
        Ok(rows) => rows,
        Err(e) => return (Err(e.to_string()), Err(e.to_string())),
    };
    let mut c5 = Ok(());
    let mut c6 = Ok(());
    let (mut graphs, mut ratio) = (0, 0);
    for row in &rows {
        let n = row.n as i64;
        if row.n <= 8 {
            if !row.general_checked || row.cubic_bound != 2 * n * n * n - 3 * n * n - 2 * n + 3 {
                c5 = Err(format!("n={}: general bound not checked", row.n));
            }
            if row.cubic_violations > 0 {
                c5 = Err(format!("n={}: {} cubic bound violations", row.n, row.cubic_violations));
            }
            if row.ratio_violations > 0 {
                c6 = Err(format!("n={}: {} ratio violations", row.n, row.ratio_violations));
            }
            graphs += row.connected_graphs;
            ratio += row.ratio_checked;
        }
        let tree_bound = ((row.n - 1) * row.n.saturating_sub(2)) as u64;
        if row.tree_bound != tree_bound || row.tree_bound_violations > 0 {
            c5 = Err(format!("n={}: tree bound", row.n));
        }
        if row.n >= 3 && !(row.star_is_unique_maximizer && row.tree_max_irr_t == tree_bound) {
            c5 = Err(format!("n={}: star is not the unique maximizer", row.n));
        }
        if row.n >= 3 && (row.tree_ratio_checked != row.trees || row.tree_ratio_violations > 0) {
            c6 = Err(format!("n={}: tree ratio", row.n));
        }
    }
    (
        c5.map(|_| format!("{graphs} connected graphs n <= 8, all trees n <= 11")),
        c6.map(|_| format!("{ratio} connected non-regular graphs n <= 8, all trees 3 <= n <= 11")),
    )
}

/// Conjecture search. Returns the check plus whether any violation found is
/// a genuine one (confirmed independently of the search).
fn c7_conjecture() -> (Check, bool) {
    let graph = check_conjecture(1..=9, ConjectureMode::Graph);
    let sequence = check_conjecture(1..=16, ConjectureMode::Sequence);
    let (graph, sequence) = match (graph, sequence) {
        (Ok(g), Ok(s)) => (g, s),
        (Err(e), _) | (_, Err(e)) => return (Err(e.to_string()), false),
    };
    for n in 4..=9 {
        let g = &graph.rows[n - 1];
        let s = &sequence.rows[n - 1];
        if g.min_nonregular != s.min_nonregular || g.minimizers != s.minimizers {
            return (Err(format!("modes disagree at n={n}")), false);
        }
    }
    let genuine = [&graph, &sequence].iter().all(|r| confirm_violations(r));
    let violating: Vec<usize> = sequence
        .rows
        .iter()
        .filter(|r| r.min_nonregular.is_some_and(|v| v < r.bound))
        .map(|r| r.n)
        .collect();
    match (&graph.counterexample, &sequence.counterexample) {
        (None, None) => (Ok("no counterexample, modes agree for n = 4..9".into()), true),
        (g, s) => {
            let c = g.as_ref().or(s.as_ref()).unwrap();
            (
                Err(format!(
                    "counterexample {} with irr_t {} < {} (witness {}); violations at n = {:?}; \
                     modes agree on minima for n = 4..9",
                    c.sequence,
                    c.irr_t,
                    c.bound,
                    c.witness.as_deref().unwrap_or("-"),
                    violating
                )),
                genuine,
            )
        }
    }
}

/// Every reported violation re-checked from its graph6 witness by the
/// pairwise definition.
fn confirm_violations(report: &ConjectureReport) -> bool {
    report.rows.iter().filter_map(|r| r.counterexample.as_ref()).all(|c| {
        let Some(w) = c.witness.as_deref() else { return false };
        let Ok(g) = parse_graph6(w) else { return false };
        let mut pairwise = 0u64;
        for u in 0..g.n() {
            for v in u + 1..g.n() {
                pairwise += g.degree(u).abs_diff(g.degree(v)) as u64;
            }
        }
        g.n() == c.n
            && g.is_connected()
            && !g.is_regular()
            && degree_sequence(&g) == c.sequence
            && pairwise == c.irr_t
            && pairwise < 2 * c.n as u64 - 4
    })
}

/// Non-increasing sequences of length `n` with entries in `0..=top`.
fn all_sequences(n: usize, top: u32) -> Vec<Vec<u32>> {
    fn go(n: usize, cap: u32, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if cur.len() == n {
            out.push(cur.clone());
            return;
        }
        for d in (0..=cap).rev() {
            cur.push(d);
            go(n, d, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(n, top, &mut Vec::new(), &mut out);
    out
}

fn c8_oracles() -> Check {
    let levels = all_graphs_by_order(9).map_err(|e| e.to_string())?;
    let mut graphs = 0;
    for g in levels.iter().flatten() {
        let mut pairwise = 0u64;
        for u in 0..g.n() {
            for v in u + 1..g.n() {
                pairwise += g.degree(u).abs_diff(g.degree(v)) as u64;
            }
        }
        if pairwise != irr_t_of_sequence(&degree_sequence(g)) || pairwise != total_irregularity(g)
        {
            return Err(format!("irr_t mismatch on {}", write_graph6(g).unwrap()));
        }
        graphs += 1;
    }
    let mut sequences = 0;
    for n in 1..=7 {
        let realized: HashSet<Vec<u32>> =
            labeled_edge_subsets(n).map(|g| degree_sequence(&g).into_vec()).collect();
        for s in all_sequences(n, n as u32) {
            let got = is_graphical(&DegreeSequence::new(s.clone()).unwrap());
            if got != realized.contains(&s) {
                return Err(format!("is_graphical({s:?}) = {got}"));
            }
            sequences += 1;
        }
    }
    let mut rankings = 0;
    for (family, from) in [(Family::Tree, 2), (Family::Unicyclic, 3), (Family::BicyclicAll, 4)] {
        for n in from..=10 {
            let graph_level: Vec<RankedMinimum> =
                k_minimal(family, n, 3).map_err(|e| e.to_string())?;
            let seq_level = k_minimal_sequences(family, n, 3).ok_or("no sequence ranking")?;
            if !rankings_agree(&graph_level, &seq_level) {
                return Err(format!("{} n={n}: rankings differ", family.name()));
            }
            rankings += 1;
        }
    }
    Ok(format!(
        "{graphs} graphs (pairwise = formula), {sequences} sequences (Erdős–Gallai = brute force), \
         {rankings} rankings agree"
    ))
}

fn cli(args: &[&str]) -> Result<Vec<u8>, String> {
    let out = Command::new(env!("CARGO_BIN_EXE_irregularity"))
        .args(args)
        .output()
        .map_err(|e| e.to_string())?;
    match out.status.code() {
        Some(0) | Some(1) => Ok(out.stdout),
        code => Err(format!("{args:?} exited with {code:?}")),
    }
}

fn c9_determinism() -> Check {
    let runs: [&[&str]; 4] = [
        &["verify", "--family", "bicyclic", "--n-min", "5", "--n-max", "9", "--format", "json"],
        &["verify", "--family", "tree", "--n-min", "4", "--n-max", "11", "--format", "json"],
        &["conjecture", "--n-max", "9", "--mode", "graph", "--format", "json"],
        &["conjecture", "--n-max", "16", "--mode", "sequence", "--format", "json"],
    ];
    for args in runs {
        let mut outputs = Vec::new();
        for threads in ["1", "4", "8"] {
            let mut full = vec!["--threads", threads];
            full.extend_from_slice(args);
            outputs.push(cli(&full)?);
        }
        if outputs[0].is_empty() || outputs.iter().any(|o| o != &outputs[0]) {
            return Err(format!("{args:?}: output differs across thread counts"));
        }
    }
    Ok("verify and conjecture byte-identical with 1, 4 and 8 threads".into())
}

fn c10_graph6() -> Check {
    let levels = all_graphs_by_order(9).map_err(|e| e.to_string())?;
    let mut count = 0;
    for g in levels.iter().flatten() {
        let line = write_graph6(g).map_err(|e| e.to_string())?;
        if parse_graph6(&line).map_err(|e| e.to_string())? != *g {
            return Err(format!("round trip failed for {line}"));
        }
        count += 1;
    }
    let mut rng = ChaCha8Rng::seed_from_u64(0x6a09e667);
    for _ in 0..1000 {
        let n = rng.gen_range(0..=62);
        let p: f64 = rng.gen();
        let mut edges = Vec::new();
        for v in 1..n {
            for u in 0..v {
                if rng.gen_bool(p) {
                    edges.push((u, v));
                }
            }
        }
        let g = Graph::from_edges(n, &edges).map_err(|e| e.to_string())?;
        let line = write_graph6(&g).map_err(|e| e.to_string())?;
        if parse_graph6(&line).map_err(|e| e.to_string())? != g {
            return Err(format!("round trip failed for random graph {line}"));
        }
    }
    Ok(format!("{count} enumerated graphs n <= 9 and 1000 random graphs n <= 62"))
}

fn main() {
    let mut failed = Vec::new();
    let mut report = |id: u32, name: &str, check: Check, started: Instant| {
        let secs = started.elapsed().as_secs_f64();
        match check {
            Ok(detail) => println!("criterion {id:>2} PASS  {name}: {detail} [{secs:.1}s]"),
            Err(detail) => {
                println!("criterion {id:>2} FAIL  {name}: {detail} [{secs:.1}s]");
                failed.push(id);
            }
        }
    };

    let t = Instant::now();
    report(1, "tree minima", c1_trees(), t);
    let t = Instant::now();
    report(2, "unicyclic minima", c2_unicyclic(), t);
    let t = Instant::now();
    report(3, "bicyclic minima", c3_bicyclic(), t);
    let t = Instant::now();
    report(4, "transformation deltas", c4_deltas(), t);
    let t = Instant::now();
    let (c5, c6) = c5_c6_bounds();
    report(5, "upper bounds", c5, t);
    report(6, "ratio bounds", c6, t);
    let t = Instant::now();
    let (c7, genuine) = c7_conjecture();
    report(7, "2n-4 lower bound for non-regular graphs", c7, t);
    let t = Instant::now();
    report(8, "oracle equivalences", c8_oracles(), t);
    let t = Instant::now();
    report(9, "determinism", c9_determinism(), t);
    let t = Instant::now();
    report(10, "graph6 round trip", c10_graph6(), t);

    // Criterion 7 cannot hold: the bound is false for every odd n >= 5. It
    // is tolerated only when each reported violation re-checks as genuine.
    let unexpected: Vec<u32> = failed.iter().copied().filter(|&id| !(id == 7 && genuine)).collect();
    if failed.contains(&7) && genuine {
        println!("note: criterion 7 fails on verified counterexamples (see README)");
    }
    if !unexpected.is_empty() {
        println!("unexpected failures: {unexpected:?}");
        std::process::exit(1);
    }
}
