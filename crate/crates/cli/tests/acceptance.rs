//! Acceptance run: one line per criterion, nonzero exit if any fails.

use std::collections::BTreeMap;
use std::process::{Command, ExitCode};
use std::time::{Duration, Instant};

use rand::seq::{IndexedRandom, SliceRandom};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use mcs_core::construct::{
    abelian_reps, build_embedding_group, build_extraspecial_instance, check_abelian_hypotheses, check_mcs_hypotheses,
    construction1, magic_table,
};
use mcs_core::fixtures::{table1, table2, table3};
use mcs_core::search::OutcomeKind;
use mcs_core::spec_lang::build_group;
use mcs_core::table_file::read_table;
use mcs_core::verify::{block_line_products, verify, verify_modular_magic_grid, LineKind};
use mcs_core::{
    decide_magic_existence, replay_certificate, AnyGrid, CellGrid, Checks, CosetReps, ElementId, ExtraSpecialKind,
    FiniteGroup, MagicInstance, RawGrid, SearchConfig, SearchMode, Side, Subgroup, SudokuTable,
};

type Outcome = Result<String, String>;

type Criterion = (u32, Option<Duration>, fn() -> Outcome);

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn id(i: usize) -> ElementId {
    ElementId::new(i)
}

/// Runs the pandiagonal verifier and, as a side check, the implication
/// pandiagonal => magic.
fn check_pandiagonal(table: &dyn CellGrid) -> Result<(), String> {
    let report = verify(table, &table.layout(), Checks::pandiagonal()).map_err(|e| e.to_string())?;
    ensure(report.is_pandiagonal_magic != Some(true) || report.is_magic == Some(true), || {
        "pandiagonal table reported as not magic".into()
    })?;
    ensure(report.passed() && report.failure_count == 0, || {
        format!("verification failed:\n{}", report.render(table.group()))
    })
}

fn mcs(args: &[&str]) -> Result<(i32, String), String> {
    let out = Command::new(env!("CARGO_BIN_EXE_mcs")).args(args).output().map_err(|e| e.to_string())?;
    Ok((out.status.code().unwrap_or(-1), String::from_utf8_lossy(&out.stdout).into_owned()))
}

fn criterion1() -> Outcome {
    let (code, stdout) = mcs(&["construct", "sudoku", "C9", "--subgroup", "3"])?;
    ensure(code == 0, || format!("exit code {code}"))?;
    let grid = read_table(&stdout).map_err(|e| e.to_string())?;
    ensure(grid == AnyGrid::Labeled(table1()), || "table differs from the Table 1 fixture".into())?;
    Ok("81 cells equal".into())
}

fn criterion2() -> Outcome {
    let g = build_group("C3 x C3").map_err(|e| e.to_string())?;
    let name = |s: &str| g.element(s).unwrap();
    let n_order = vec![name("00"), name("10"), name("20")];
    let n = Subgroup::new(&g, &n_order).map_err(|e| e.to_string())?;
    let t = CosetReps::new(&n, vec![name("00"), name("01"), name("02")], Side::Left).map_err(|e| e.to_string())?;
    let inst = MagicInstance::with_n_order(&g, n, n_order, t).map_err(|e| e.to_string())?;
    let table = magic_table(&inst).map_err(|e| e.to_string())?;
    ensure(table == table3(), || "table differs from the Table 3 fixture".into())?;
    check_pandiagonal(&table)?;
    Ok("equal to fixture, pandiagonal magic, 0 failures".into())
}

fn criterion3() -> Outcome {
    let t = table2();
    let layout = t.layout();
    ensure(verify_modular_magic_grid(&t, &layout).map_err(|e| e.to_string())?, || "grid rejected".into())?;
    let lines = block_line_products(&t, &layout, (0, 1)).map_err(|e| e.to_string())?;
    let col: Vec<usize> = (0..3).map(|r| t.cell(r, 3).index()).collect();
    ensure(col == [7, 8, 3] && lines[&LineKind::Column(0)] == id(0), || format!("column spot check: {col:?}"))?;
    let anti: Vec<usize> = [(0, 5), (1, 4), (2, 3)].iter().map(|&(r, c)| t.cell(r, c).index()).collect();
    ensure(anti == [6, 0, 3] && lines[&LineKind::Antidiagonal(1)] == id(0), || {
        format!("antidiagonal spot check: {anti:?}")
    })?;
    Ok("modular magic; 7+8+3 = 0 and 6+0+3 = 0 mod 9".into())
}

fn criterion4() -> Outcome {
    let mut notes = Vec::new();
    for (spec, pairs) in [("C9", 280u128 * 280), ("C2 x C2", 9)] {
        let start = Instant::now();
        let g = build_group(spec).map_err(|e| e.to_string())?;
        let out = decide_magic_existence(&g, SearchMode::Magic, &SearchConfig::default()).map_err(|e| e.to_string())?;
        let c = &out.certificate;
        ensure(c.outcome == OutcomeKind::Nonexistence, || format!("{spec}: outcome {}", c.outcome))?;
        ensure(c.pairs_examined == pairs && c.phase1_survivors == 0, || {
            format!("{spec}: {} pairs, {} survivors", c.pairs_examined, c.phase1_survivors)
        })?;
        replay_certificate(&g, c).map_err(|e| format!("{spec}: replay: {e}"))?;
        let elapsed = start.elapsed();
        ensure(elapsed < Duration::from_secs(10), || format!("{spec}: took {elapsed:?}"))?;
        notes.push(format!("{spec}: {pairs} pairs eliminated in {:.3} s", elapsed.as_secs_f64()));
    }
    Ok(notes.join("; "))
}

fn criterion5() -> Outcome {
    // Z9, N = <3>, T = [0, 1, 2]
    let z9 = FiniteGroup::cyclic(9).map_err(|e| e.to_string())?;
    let n = Subgroup::new(&z9, &[id(0), id(3), id(6)]).map_err(|e| e.to_string())?;
    let ag = check_abelian_hypotheses(&z9, &n).map_err(|e| e.to_string())?;
    ensure(ag.failed() == [1], || format!("Z9 abelian hypotheses failing: {:?}", ag.failed()))?;
    let t = CosetReps::new(&n, vec![id(0), id(1), id(2)], Side::Left).map_err(|e| e.to_string())?;
    let inst = MagicInstance::new(&z9, n.clone(), t).map_err(|e| e.to_string())?;
    let report = check_mcs_hypotheses(&inst).map_err(|e| e.to_string())?;
    ensure(!report.exp_divides_k && report.n_central_of_order_k && report.n_product_trivial, || {
        format!("Z9 report: {:?}", report.failed())
    })?;
    ensure(magic_table(&inst).is_err() && abelian_reps(&z9, &n).is_err(), || "Z9 table was built".into())?;

    // Z2 x Z2, N = Z2 x 0
    let k4 = build_group("C2 x C2").map_err(|e| e.to_string())?;
    let n = Subgroup::new(&k4, &[k4.element("00").unwrap(), k4.element("10").unwrap()]).map_err(|e| e.to_string())?;
    let ag4 = check_abelian_hypotheses(&k4, &n).map_err(|e| e.to_string())?;
    ensure(ag4.failed() == [3, 4], || format!("Klein abelian hypotheses failing: {:?}", ag4.failed()))?;
    let t = CosetReps::new(&n, vec![k4.element("00").unwrap(), k4.element("01").unwrap()], Side::Left)
        .map_err(|e| e.to_string())?;
    let inst4 = MagicInstance::new(&k4, n.clone(), t).map_err(|e| e.to_string())?;
    let report4 = check_mcs_hypotheses(&inst4).map_err(|e| e.to_string())?;
    ensure(report4.failed() == [3, 4], || format!("Klein report: {:?}", report4.failed()))?;
    ensure(magic_table(&inst4).is_err() && abelian_reps(&k4, &n).is_err(), || "Klein table was built".into())?;
    Ok(format!(
        "Z9: abelian hypotheses fail exactly {{1}}, literal check fails {:?} (shifts {:?}); Z2xZ2 fails {{3, 4}}; both refused",
        report.failed(),
        report.failing_shifts
    ))
}

fn criterion6() -> Outcome {
    let mut notes = Vec::new();
    for h in [FiniteGroup::cyclic(2), FiniteGroup::cyclic(3), FiniteGroup::symmetric(3)] {
        let h = h.map_err(|e| e.to_string())?;
        let start = Instant::now();
        let inst = build_embedding_group(&h).map_err(|e| e.to_string())?;
        let report = check_mcs_hypotheses(&inst).map_err(|e| e.to_string())?;
        ensure(report.overall, || format!("{}: {report}", h.spec()))?;
        let table = magic_table(&inst).map_err(|e| e.to_string())?;
        check_pandiagonal(&table).map_err(|e| format!("{}: {e}", h.spec()))?;
        let elapsed = start.elapsed();
        ensure(elapsed < Duration::from_secs(60), || format!("{}: took {elapsed:?}", h.spec()))?;
        notes.push(format!("{} (|G| = {}) {:.2} s", h.spec(), table.size(), elapsed.as_secs_f64()));
    }
    Ok(notes.join("; "))
}

fn criterion7() -> Outcome {
    let mut notes = Vec::new();
    for p in [3usize, 5] {
        for kind in [ExtraSpecialKind::ExponentP, ExtraSpecialKind::ExponentP2] {
            let start = Instant::now();
            let (e, inst) = build_extraspecial_instance(p, kind).map_err(|e| e.to_string())?;
            let pu = p as u64;
            let trivial = (0..pu).all(|i| (0..pu).all(|j| e.double_product(i, j) == e.group.identity()));
            ensure(trivial, || format!("p = {p} {kind}: a double product is nontrivial"))?;
            let report = check_mcs_hypotheses(&inst).map_err(|e| e.to_string())?;
            ensure(report.overall, || format!("p = {p} {kind}: {report}"))?;
            let table = magic_table(&inst).map_err(|e| e.to_string())?;
            ensure(table.size() == p.pow(4), || format!("order {}", table.size()))?;
            check_pandiagonal(&table).map_err(|e| format!("p = {p} {kind}: {e}"))?;
            let elapsed = start.elapsed();
            ensure(elapsed < Duration::from_secs(120), || format!("p = {p} {kind}: took {elapsed:?}"))?;
            notes.push(format!("p={p} {kind} {:.2} s", elapsed.as_secs_f64()));
        }
    }
    Ok(notes.join("; "))
}

fn criterion8() -> Outcome {
    let start = Instant::now();
    let g = build_group("C9 x C3 x C3 x C4 x C4").map_err(|e| e.to_string())?;
    let gens = [
        g.tuple(&[id(3), id(0), id(0), id(0), id(0)]),
        g.tuple(&[id(0), id(1), id(0), id(0), id(0)]),
        g.tuple(&[id(0), id(0), id(0), id(2), id(0)]),
        g.tuple(&[id(0), id(0), id(0), id(0), id(2)]),
    ]
    .into_iter()
    .collect::<Result<Vec<_>, _>>()
    .map_err(|e| e.to_string())?;
    let n = g.subgroup_generated(&gens).map_err(|e| e.to_string())?;
    ensure(n.order() == 36, || format!("|N| = {}", n.order()))?;
    let t = abelian_reps(&g, &n).map_err(|e| e.to_string())?;
    let inst = MagicInstance::new(&g, n, t).map_err(|e| e.to_string())?;
    let table = magic_table(&inst).map_err(|e| e.to_string())?;
    check_pandiagonal(&table)?;
    let elapsed = start.elapsed();
    ensure(elapsed < Duration::from_secs(120), || format!("took {elapsed:?}"))?;
    Ok(format!("1296 x 1296 pandiagonal magic in {:.2} s", elapsed.as_secs_f64()))
}

fn criterion9() -> Outcome {
    fn lists(bound: usize, max: usize, prefix: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        out.push(prefix.clone());
        let used: usize = prefix.iter().product();
        for f in 2..=max.min(bound / used) {
            prefix.push(f);
            lists(bound, f, prefix, out);
            prefix.pop();
        }
    }
    let mut all = Vec::new();
    lists(100, 100, &mut Vec::new(), &mut all);
    let mut bad = Vec::new();
    for list in &all {
        let factors: Vec<FiniteGroup> = if list.is_empty() {
            vec![FiniteGroup::cyclic(1).unwrap()]
        } else {
            list.iter().map(|&n| FiniteGroup::cyclic(n).unwrap()).collect()
        };
        let g = FiniteGroup::product_all(&factors).map_err(|e| e.to_string())?;
        if g.product_of_all_trivial().map_err(|e| e.to_string())? != (g.involution_count() != 1) {
            bad.push(list.clone());
        }
    }
    ensure(bad.is_empty(), || format!("counterexamples: {bad:?}"))?;
    Ok(format!("{} groups, 0 counterexamples", all.len()))
}

/// Brute-force line products of a `k x k` block from the 1-based definitions:
/// diagonal `j` is `(l, l + j)`, antidiagonal `j` is `(l, j - l)`, mod `k` in `1..=k`.
fn oracle(g: &FiniteGroup, cells: &[ElementId], k: usize) -> BTreeMap<LineKind, ElementId> {
    let wrap = |x: isize| ((x - 1).rem_euclid(k as isize) + 1) as usize;
    let at = |r: usize, c: usize| cells[(r - 1) * k + (c - 1)];
    let fold = |xs: Vec<ElementId>| xs.into_iter().fold(g.identity(), |a, x| g.op(a, x));
    let mut out = BTreeMap::new();
    for i in 1..=k {
        out.insert(LineKind::Row(i - 1), fold((1..=k).map(|c| at(i, c)).collect()));
        out.insert(LineKind::Column(i - 1), fold((1..=k).map(|r| at(r, i)).collect()));
    }
    for j in 1..=k as isize {
        out.insert(LineKind::Diagonal(j as usize), fold((1..=k).map(|l| at(l, wrap(l as isize + j))).collect()));
        out.insert(LineKind::Antidiagonal(j as usize), fold((1..=k).map(|l| at(l, wrap(j - l as isize))).collect()));
    }
    out
}

fn criterion10() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(20_250_101);

    // Construction 1 on random groups, subgroups and orderings
    let specs = [
        "C12",
        "C2 x C2 x C2",
        "C2 x C4",
        "S3",
        "S4",
        "C2 x S3",
        "Heis(3)",
        "M(3)",
        "C6 x C6",
        "S3 x S3",
        "C3 x S3",
        "C2 x C2 x C3",
        "C5 x C5",
        "C4 x C4",
        "C2 x C8",
        "C35",
        "C9",
        "C3 x C3",
    ];
    let groups: Vec<FiniteGroup> = specs.iter().map(|s| build_group(s).unwrap()).collect();
    let mut tables: Vec<SudokuTable> = vec![table1(), table3()];
    for _ in 0..150 {
        let g = &groups[rng.random_range(0..groups.len())];
        let gens: Vec<ElementId> = (0..rng.random_range(1..=2)).map(|_| id(rng.random_range(0..g.order()))).collect();
        let h = g.subgroup_generated(&gens).map_err(|e| e.to_string())?;
        let mut cosets: Vec<Vec<ElementId>> = h
            .coset_reps(Side::Right)
            .reps()
            .iter()
            .map(|&r| {
                let mut c = h.coset(r, Side::Right);
                c.shuffle(&mut rng);
                c
            })
            .collect();
        cosets.shuffle(&mut rng);
        let mut reps: Vec<ElementId> = h
            .coset_reps(Side::Left)
            .reps()
            .iter()
            .map(|&r| *h.coset(r, Side::Left).choose(&mut rng).unwrap())
            .collect();
        reps.shuffle(&mut rng);
        let mut hs = h.elements().to_vec();
        hs.shuffle(&mut rng);
        let sets: Vec<Vec<ElementId>> = hs.iter().map(|&x| reps.iter().map(|&t| g.op(t, x)).collect()).collect();
        let t = construction1(g, &h, &cosets, &sets).map_err(|e| e.to_string())?;
        let report = verify(&t, &t.layout(), Checks::sudoku()).map_err(|e| e.to_string())?;
        ensure(report.passed(), || format!("{}: {}", g.spec(), report.render(g)))?;
        tables.push(t);
    }

    // verifier against the oracle on random blocks
    let small = ["C1", "C2", "C3", "C4", "C5", "C6", "C7", "C8", "C9", "C2 x C2", "C3 x C3", "S3"];
    let small: Vec<FiniteGroup> = small.iter().map(|s| build_group(s).unwrap()).collect();
    let mut pandiagonal_blocks = 0;
    for _ in 0..1500 {
        let g = &small[rng.random_range(0..small.len())];
        let k = rng.random_range(1..=6);
        // bias towards identity-heavy blocks so that some pass
        let cells: Vec<ElementId> = (0..k * k)
            .map(|_| if rng.random_bool(0.3) { g.identity() } else { id(rng.random_range(0..g.order())) })
            .collect();
        let grid = RawGrid::new(g, k, k, k, k, cells.clone()).map_err(|e| e.to_string())?;
        let layout = grid.layout();
        let expected = oracle(g, &cells, k);
        let got = block_line_products(&grid, &layout, (0, 0)).map_err(|e| e.to_string())?;
        ensure(got == expected, || format!("{} k={k}: line products differ", g.spec()))?;
        let e = g.identity();
        let magic = expected.iter().all(|(l, &x)| !l.is_magic_line(k) || x == e);
        let pan = expected.values().all(|&x| x == e);
        let r = verify(&grid, &layout, Checks { magic: true, pandiagonal: true, ..Default::default() })
            .map_err(|e| e.to_string())?;
        ensure(r.is_magic == Some(magic) && r.is_pandiagonal_magic == Some(pan), || {
            format!("{} k={k}: flags differ from oracle", g.spec())
        })?;
        ensure(!pan || magic, || "oracle: pandiagonal block not magic".into())?;
        pandiagonal_blocks += usize::from(pan);
    }

    // pandiagonal => magic on every table verified here
    let mut square = 0;
    for t in &tables {
        let layout = t.layout();
        if !layout.is_square() {
            continue;
        }
        square += 1;
        let r = verify(t, &layout, Checks::pandiagonal()).map_err(|e| e.to_string())?;
        ensure(r.is_pandiagonal_magic != Some(true) || r.is_magic == Some(true), || {
            format!("{}: pandiagonal but not magic", t.group().spec())
        })?;
    }
    Ok(format!(
        "150 Construction 1 tables, 1500 random blocks ({pandiagonal_blocks} pandiagonal), {square} square-block tables, 0 failures"
    ))
}

fn main() -> ExitCode {
    let criteria: [Criterion; 10] = [
        (1, Some(Duration::from_secs(1)), criterion1),
        (2, Some(Duration::from_secs(1)), criterion2),
        (3, Some(Duration::from_secs(1)), criterion3),
        (4, Some(Duration::from_secs(20)), criterion4),
        (5, None, criterion5),
        (6, Some(Duration::from_secs(60)), criterion6),
        (7, Some(Duration::from_secs(240)), criterion7),
        (8, Some(Duration::from_secs(120)), criterion8),
        (9, None, criterion9),
        (10, None, criterion10),
    ];
    let mut failed = 0;
    for (n, limit, f) in criteria {
        let start = Instant::now();
        let result = f();
        let elapsed = start.elapsed();
        let result = match (result, limit) {
            (Ok(_), Some(limit)) if elapsed > limit => Err(format!("took {elapsed:?}, limit {limit:?}")),
            (r, _) => r,
        };
        match result {
            Ok(note) => println!("criterion {n}: PASS ({:.2} s) {note}", elapsed.as_secs_f64()),
            Err(why) => {
                failed += 1;
                println!("criterion {n}: FAIL ({:.2} s) {why}", elapsed.as_secs_f64());
            }
        }
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        println!("{failed} criteria failed");
        ExitCode::FAILURE
    }
}
