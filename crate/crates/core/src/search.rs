//! Exhaustive existence decisions for magic Cayley-sudoku tables of small
//! groups of order `k^2`.
//!
//! A candidate table is determined by its row labels and column labels. Cut
//! into bands of `k` consecutive labels, the bands form two partitions of the
//! group into `k`-sets. Permuting whole bands only moves blocks around, so the
//! search runs over unordered partition pairs:
//!
//! * phase 1 discards partition pairs violating ordering-free necessary
//!   conditions. For abelian `G`, with row band `R` and column band `C`, every
//!   row product is `x^k * prod(C)` and every column product `prod(R) * c^k`,
//!   both of which must be the identity, and `{x * c}` must be all of `G`.
//!   For nonabelian `G` only the last (sudoku) condition is used;
//! * phase 2 enumerates within-band orderings of the survivors and checks
//!   every block directly. It is only run for `k <= 3`.
//!
//! In pandiagonal mode, rotating a band's ordering cyclically maps broken
//! (anti)diagonals onto cyclic rotations of broken (anti)diagonals, and a
//! cyclic rotation of a product equal to the identity is the identity. Phase 2
//! therefore fixes the first element of the first row band and of the first
//! column band in that mode.

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;
use std::time::{Duration, Instant};

use rayon::prelude::*;
use thiserror::Error;

use crate::construct::exact_sqrt;
use crate::group::{ElementId, FiniteGroup};
use crate::table::{CellGrid, SudokuTable};
use crate::verify::{verify_magic, verify_pandiagonal_magic};

/// Largest block size for which phase 2 runs.
pub const MAX_ORDERING_K: usize = 3;

/// Largest group order the search accepts (band sets are `u64` bitmasks).
pub const MAX_SEARCH_ORDER: usize = 64;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SearchError {
    #[error("group order {0} is not a perfect square")]
    NotPerfectSquare(usize),
    #[error("could not build thread pool: {0}")]
    ThreadPool(String),
    #[error("malformed certificate: {0}")]
    MalformedCertificate(String),
    #[error("certificate invalid: {field} is {claimed} but recomputation gives {recomputed}")]
    CertificateInvalid { field: &'static str, claimed: String, recomputed: String },
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash, Default)]
pub enum SearchMode {
    /// Rows, columns, main diagonal and main antidiagonal.
    #[default]
    Magic,
    /// Rows, columns and all broken diagonals and antidiagonals.
    Pandiagonal,
}

impl fmt::Display for SearchMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            SearchMode::Magic => "magic",
            SearchMode::Pandiagonal => "pandiagonal",
        })
    }
}

impl FromStr for SearchMode {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "magic" => Ok(SearchMode::Magic),
            "pandiagonal" => Ok(SearchMode::Pandiagonal),
            other => Err(format!("unknown search mode {other:?}")),
        }
    }
}

#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub struct SearchConfig {
    /// Phase 1 gives up (inconclusive) above this many partition pairs.
    pub max_partition_pairs: u128,
    /// Phase 2 gives up (inconclusive) above this many ordering combinations.
    pub max_orderings: u128,
    /// Worker threads; `None` uses the global pool.
    pub threads: Option<usize>,
    /// Disable the rotation symmetry reduction in pandiagonal mode.
    pub unreduced: bool,
}

impl Default for SearchConfig {
    fn default() -> Self {
        SearchConfig { max_partition_pairs: 50_000_000, max_orderings: 2_000_000_000, threads: None, unreduced: false }
    }
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash)]
pub enum OutcomeKind {
    Witness,
    Nonexistence,
    Inconclusive,
}

impl fmt::Display for OutcomeKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            OutcomeKind::Witness => "witness",
            OutcomeKind::Nonexistence => "nonexistence",
            OutcomeKind::Inconclusive => "inconclusive",
        })
    }
}

impl FromStr for OutcomeKind {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "witness" => Ok(OutcomeKind::Witness),
            "nonexistence" => Ok(OutcomeKind::Nonexistence),
            "inconclusive" => Ok(OutcomeKind::Inconclusive),
            other => Err(format!("unknown outcome {other:?}")),
        }
    }
}

/// Search statistics; everything here is deterministic.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Certificate {
    pub group_spec: String,
    pub order: usize,
    pub k: usize,
    pub mode: SearchMode,
    pub partitions_per_side: u128,
    pub pairs_examined: u128,
    pub phase1_survivors: u128,
    pub orderings_examined: u128,
    pub outcome: OutcomeKind,
    /// Why the search stopped short, for inconclusive outcomes.
    pub reason: Option<String>,
}

const CERT_HEADER: &str = "# magic cayley-sudoku search certificate";

impl Certificate {
    pub fn to_text(&self) -> String {
        let mut s = String::new();
        s.push_str(CERT_HEADER);
        s.push('\n');
        s.push_str(&format!("group_spec: {}\n", self.group_spec));
        s.push_str(&format!("order: {}\n", self.order));
        s.push_str(&format!("k: {}\n", self.k));
        s.push_str(&format!("mode: {}\n", self.mode));
        s.push_str(&format!("partitions_per_side: {}\n", self.partitions_per_side));
        s.push_str(&format!("pairs_examined: {}\n", self.pairs_examined));
        s.push_str(&format!("phase1_survivors: {}\n", self.phase1_survivors));
        s.push_str(&format!("orderings_examined: {}\n", self.orderings_examined));
        s.push_str(&format!("outcome: {}\n", self.outcome));
        if let Some(r) = &self.reason {
            s.push_str(&format!("reason: {r}\n"));
        }
        s
    }

    pub fn parse(text: &str) -> Result<Self, SearchError> {
        let mut fields: HashMap<&str, &str> = HashMap::new();
        for line in text.lines() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let (key, value) = line
                .split_once(':')
                .ok_or_else(|| SearchError::MalformedCertificate(format!("line without ':' {line:?}")))?;
            if fields.insert(key.trim(), value.trim()).is_some() {
                return Err(SearchError::MalformedCertificate(format!("duplicate key {:?}", key.trim())));
            }
        }
        let get = |key: &str| {
            fields.get(key).copied().ok_or_else(|| SearchError::MalformedCertificate(format!("missing {key}")))
        };
        fn num<T: FromStr>(key: &str, v: &str) -> Result<T, SearchError> {
            v.parse().map_err(|_| SearchError::MalformedCertificate(format!("bad number for {key}: {v:?}")))
        }
        Ok(Certificate {
            group_spec: get("group_spec")?.to_string(),
            order: num("order", get("order")?)?,
            k: num("k", get("k")?)?,
            mode: get("mode")?.parse().map_err(SearchError::MalformedCertificate)?,
            partitions_per_side: num("partitions_per_side", get("partitions_per_side")?)?,
            pairs_examined: num("pairs_examined", get("pairs_examined")?)?,
            phase1_survivors: num("phase1_survivors", get("phase1_survivors")?)?,
            orderings_examined: num("orderings_examined", get("orderings_examined")?)?,
            outcome: get("outcome")?.parse().map_err(SearchError::MalformedCertificate)?,
            reason: fields.get("reason").map(|s| s.to_string()),
        })
    }
}

impl fmt::Display for Certificate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}

#[derive(Clone, Debug)]
pub struct SearchOutcome {
    pub certificate: Certificate,
    /// Present exactly when the outcome is a witness; passes the mode's verifier.
    pub witness: Option<SudokuTable>,
    pub elapsed: Duration,
}

impl SearchOutcome {
    pub fn kind(&self) -> OutcomeKind {
        self.certificate.outcome
    }
}

/// Row bands and column bands of a candidate table, each a partition of the
/// group into `k` sets of size `k` (bands sorted by their minimum).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BandPartition {
    pub row_bands: Vec<Vec<ElementId>>,
    pub col_bands: Vec<Vec<ElementId>>,
}

impl BandPartition {
    /// Bands of a labeled table with square `k x k` blocks.
    pub fn of_table(table: &SudokuTable) -> Self {
        let k = table.block_rows();
        let bands = |labels: &[ElementId]| {
            let mut out: Vec<Vec<ElementId>> = labels
                .chunks(k)
                .map(|c| {
                    let mut v = c.to_vec();
                    v.sort_unstable();
                    v
                })
                .collect();
            out.sort();
            out
        };
        BandPartition { row_bands: bands(table.row_labels()), col_bands: bands(table.col_labels()) }
    }
}

/// `C(n, r)`, saturating.
fn binomial(n: u128, r: u128) -> u128 {
    let mut acc: u128 = 1;
    for i in 0..r {
        acc = acc.saturating_mul(n - i) / (i + 1);
    }
    acc
}

/// Number of partitions of a `k^2`-set into `k` unordered blocks of size `k`.
pub fn equal_partition_count(k: usize) -> u128 {
    let k = k as u128;
    let mut acc: u128 = 1;
    for i in 0..k {
        let remaining = k * k - i * k;
        acc = acc.saturating_mul(binomial(remaining - 1, k - 1));
    }
    acc
}

/// All partitions of `0..k^2` into `k` blocks of size `k`, as bitmasks. Blocks
/// are listed by increasing minimum; partitions in lexicographic order of that
/// listing.
pub fn equal_partitions(k: usize) -> Vec<Vec<u64>> {
    fn rec(k: usize, remaining: u64, current: &mut Vec<u64>, out: &mut Vec<Vec<u64>>) {
        if remaining == 0 {
            out.push(current.clone());
            return;
        }
        let first = remaining.trailing_zeros();
        let rest = remaining & !(1u64 << first);
        choose(k - 1, rest, 1u64 << first, &mut |block| {
            current.push(block);
            rec(k, remaining & !block, current, out);
            current.pop();
        });
    }
    // every subset of `pool` with `r` more elements, added to `base`
    fn choose(r: usize, pool: u64, base: u64, f: &mut dyn FnMut(u64)) {
        if r == 0 {
            f(base);
            return;
        }
        let mut p = pool;
        while p != 0 {
            let bit = p & p.wrapping_neg();
            p &= !bit;
            if (p.count_ones() as usize) + 1 < r {
                break;
            }
            choose(r - 1, p, base | bit, f);
        }
    }
    let n = k * k;
    let all = if n == 64 { u64::MAX } else { (1u64 << n) - 1 };
    let mut out = Vec::new();
    rec(k, all, &mut Vec::with_capacity(k), &mut out);
    out
}

fn members(mask: u64) -> impl Iterator<Item = ElementId> {
    (0..64).filter(move |i| mask >> i & 1 == 1).map(ElementId::new)
}

struct BandInfo {
    product: ElementId,
    /// `Some(v)` when `x^k = v` for every member `x`.
    power_const: Option<ElementId>,
}

/// Phase-1 test for a single block with row band `r` and column band `c`.
struct BlockFilter<'a> {
    group: &'a FiniteGroup,
    k: usize,
    abelian: bool,
    bands: HashMap<u64, BandInfo>,
}

impl<'a> BlockFilter<'a> {
    fn new(group: &'a FiniteGroup, k: usize) -> Self {
        BlockFilter { group, k, abelian: group.is_abelian(), bands: HashMap::new() }
    }

    fn register(&mut self, mask: u64) {
        let g = self.group;
        let k = self.k as u64;
        self.bands.entry(mask).or_insert_with(|| {
            let product = g.product_of(members(mask));
            let mut powers = members(mask).map(|x| g.pow(x, k));
            let first = powers.next().expect("nonempty band");
            let power_const = powers.all(|p| p == first).then_some(first);
            BandInfo { product, power_const }
        });
    }

    fn block_ok(&self, r: u64, c: u64) -> bool {
        let g = self.group;
        if self.abelian {
            let (ri, ci) = (&self.bands[&r], &self.bands[&c]);
            // rows: x^k * prod(C) = 1;  columns: prod(R) * c^k = 1
            if ri.power_const != Some(g.inverse(ci.product)) || ci.power_const != Some(g.inverse(ri.product)) {
                return false;
            }
        }
        let mut seen = 0u64;
        for x in members(r) {
            for y in members(c) {
                let bit = 1u64 << g.op(x, y).index();
                if seen & bit != 0 {
                    return false;
                }
                seen |= bit;
            }
        }
        true
    }
}

/// Whether a band pair passes the phase-1 conditions.
pub fn phase1_accepts(group: &FiniteGroup, bands: &BandPartition) -> bool {
    let k = bands.row_bands.len();
    let mask = |b: &Vec<ElementId>| b.iter().fold(0u64, |m, x| m | 1u64 << x.index());
    let rows: Vec<u64> = bands.row_bands.iter().map(mask).collect();
    let cols: Vec<u64> = bands.col_bands.iter().map(mask).collect();
    let mut filter = BlockFilter::new(group, k);
    for &m in rows.iter().chain(&cols) {
        filter.register(m);
    }
    rows.iter().all(|&r| cols.iter().all(|&c| filter.block_ok(r, c)))
}

fn permutations(items: &[ElementId]) -> Vec<Vec<ElementId>> {
    if items.len() <= 1 {
        return vec![items.to_vec()];
    }
    let mut out = Vec::new();
    for i in 0..items.len() {
        let mut rest = items.to_vec();
        let head = rest.remove(i);
        for mut tail in permutations(&rest) {
            tail.insert(0, head);
            out.push(tail);
        }
    }
    out
}

fn block_is_magic(g: &FiniteGroup, rows: &[ElementId], cols: &[ElementId], mode: SearchMode) -> bool {
    let k = rows.len();
    let e = g.identity();
    let cell = |r: usize, c: usize| g.op(rows[r], cols[c]);
    for r in 0..k {
        if g.product_of((0..k).map(|c| cell(r, c))) != e {
            return false;
        }
    }
    for c in 0..k {
        if g.product_of((0..k).map(|r| cell(r, c))) != e {
            return false;
        }
    }
    let js: Vec<usize> = match mode {
        SearchMode::Magic => {
            let mut v = vec![1, k];
            v.dedup();
            v
        }
        SearchMode::Pandiagonal => (1..=k).collect(),
    };
    for &j in &js {
        if g.product_of((0..k).map(|r| cell(r, crate::verify::diagonal_col(k, j, r)))) != e {
            return false;
        }
        if g.product_of((0..k).map(|r| cell(r, crate::verify::antidiagonal_col(k, j, r)))) != e {
            return false;
        }
    }
    true
}

/// Orderings of a band, restricted to those starting with its minimum when
/// `reduced`.
fn band_orderings(band: &[ElementId], reduced: bool) -> Vec<Vec<ElementId>> {
    let perms = permutations(band);
    if reduced {
        perms.into_iter().filter(|p| p[0] == band[0]).collect()
    } else {
        perms
    }
}

struct Phase2Result {
    examined: u128,
    witness: Option<(Vec<ElementId>, Vec<ElementId>)>,
}

/// Enumerates every combination of within-band orderings for one band pair,
/// in a fixed order, stopping at the first magic one.
fn phase2_pair(
    g: &FiniteGroup,
    rows: &[Vec<ElementId>],
    cols: &[Vec<ElementId>],
    mode: SearchMode,
    reduced: bool,
) -> Phase2Result {
    let k = rows.len();
    let row_orders: Vec<Vec<Vec<ElementId>>> =
        rows.iter().enumerate().map(|(a, b)| band_orderings(b, reduced && a == 0)).collect();
    let col_orders: Vec<Vec<Vec<ElementId>>> =
        cols.iter().enumerate().map(|(a, b)| band_orderings(b, reduced && a == 0)).collect();
    // ok[a][b][s][t]: block (a, b) is magic under row ordering s, column ordering t
    let ok: Vec<Vec<Vec<Vec<bool>>>> = (0..k)
        .map(|a| {
            (0..k)
                .map(|b| {
                    row_orders[a]
                        .iter()
                        .map(|s| col_orders[b].iter().map(|t| block_is_magic(g, s, t, mode)).collect())
                        .collect()
                })
                .collect()
        })
        .collect();
    let row_radix: Vec<usize> = row_orders.iter().map(|o| o.len()).collect();
    let col_radix: Vec<usize> = col_orders.iter().map(|o| o.len()).collect();
    let mut examined: u128 = 0;
    let mut s = vec![0usize; k];
    loop {
        let mut t = vec![0usize; k];
        loop {
            examined += 1;
            if (0..k).all(|a| (0..k).all(|b| ok[a][b][s[a]][t[b]])) {
                let row_labels = (0..k).flat_map(|a| row_orders[a][s[a]].clone()).collect();
                let col_labels = (0..k).flat_map(|b| col_orders[b][t[b]].clone()).collect();
                return Phase2Result { examined, witness: Some((row_labels, col_labels)) };
            }
            if !advance(&mut t, &col_radix) {
                break;
            }
        }
        if !advance(&mut s, &row_radix) {
            break;
        }
    }
    Phase2Result { examined, witness: None }
}

/// Odometer increment, last digit fastest. Returns false on wrap-around.
fn advance(digits: &mut [usize], radix: &[usize]) -> bool {
    for i in (0..digits.len()).rev() {
        digits[i] += 1;
        if digits[i] < radix[i] {
            return true;
        }
        digits[i] = 0;
    }
    false
}

fn factorial(n: usize) -> u128 {
    (1..=n as u128).product()
}

/// Number of ordering combinations phase 2 tries for one band pair.
pub fn orderings_per_pair(k: usize, mode: SearchMode, reduced: bool) -> u128 {
    let full = factorial(k).saturating_pow(2 * k as u32);
    if reduced && mode == SearchMode::Pandiagonal && k > 0 {
        full / (k as u128 * k as u128)
    } else {
        full
    }
}

fn with_pool<T: Send>(threads: Option<usize>, f: impl FnOnce() -> T + Send) -> Result<T, SearchError> {
    match threads {
        None => Ok(f()),
        Some(n) => {
            let pool = rayon::ThreadPoolBuilder::new()
                .num_threads(n)
                .build()
                .map_err(|e| SearchError::ThreadPool(e.to_string()))?;
            Ok(pool.install(f))
        }
    }
}

/// Decides whether `group` has a magic (or pandiagonal magic) Cayley-sudoku
/// table with `k x k` blocks, `k^2 = |G|`.
pub fn decide_magic_existence(
    group: &FiniteGroup,
    mode: SearchMode,
    config: &SearchConfig,
) -> Result<SearchOutcome, SearchError> {
    let start = Instant::now();
    let order = group.order();
    let k = exact_sqrt(order).ok_or(SearchError::NotPerfectSquare(order))?;
    let partitions_per_side = equal_partition_count(k);
    let mut cert = Certificate {
        group_spec: group.spec().to_string(),
        order,
        k,
        mode,
        partitions_per_side,
        pairs_examined: 0,
        phase1_survivors: 0,
        orderings_examined: 0,
        outcome: OutcomeKind::Inconclusive,
        reason: None,
    };
    let pairs = partitions_per_side.saturating_mul(partitions_per_side);
    if order > MAX_SEARCH_ORDER || pairs > config.max_partition_pairs {
        cert.reason =
            Some(format!("phase 1 space of {pairs} partition pairs exceeds the bound {}", config.max_partition_pairs));
        return Ok(SearchOutcome { certificate: cert, witness: None, elapsed: start.elapsed() });
    }

    let partitions = equal_partitions(k);
    debug_assert_eq!(partitions.len() as u128, partitions_per_side);
    let mut filter = BlockFilter::new(group, k);
    for p in &partitions {
        for &m in p {
            filter.register(m);
        }
    }
    let filter = &filter;
    let partitions_ref = &partitions;
    let survivors: Vec<(usize, usize)> = with_pool(config.threads, || {
        partitions_ref
            .par_iter()
            .enumerate()
            .flat_map_iter(|(i, rows)| {
                partitions_ref
                    .iter()
                    .enumerate()
                    .filter(move |(_, cols)| rows.iter().all(|&r| cols.iter().all(|&c| filter.block_ok(r, c))))
                    .map(move |(j, _)| (i, j))
            })
            .collect()
    })?;
    cert.pairs_examined = pairs;
    cert.phase1_survivors = survivors.len() as u128;

    if survivors.is_empty() {
        cert.outcome = OutcomeKind::Nonexistence;
        return Ok(SearchOutcome { certificate: cert, witness: None, elapsed: start.elapsed() });
    }
    if k > MAX_ORDERING_K {
        cert.reason = Some(format!(
            "{} band-partition pairs survive phase 1 and k = {k} exceeds the ordering-phase limit {MAX_ORDERING_K}",
            survivors.len()
        ));
        return Ok(SearchOutcome { certificate: cert, witness: None, elapsed: start.elapsed() });
    }
    let reduced = mode == SearchMode::Pandiagonal && !config.unreduced;
    let budget = orderings_per_pair(k, mode, reduced).saturating_mul(survivors.len() as u128);
    if budget > config.max_orderings {
        cert.reason = Some(format!("ordering space of {budget} exceeds the bound {}", config.max_orderings));
        return Ok(SearchOutcome { certificate: cert, witness: None, elapsed: start.elapsed() });
    }

    let to_bands = |p: &Vec<u64>| -> Vec<Vec<ElementId>> { p.iter().map(|&m| members(m).collect()).collect() };
    for &(i, j) in &survivors {
        let rows = to_bands(&partitions[i]);
        let cols = to_bands(&partitions[j]);
        let res = phase2_pair(group, &rows, &cols, mode, reduced);
        cert.orderings_examined += res.examined;
        if let Some((row_labels, col_labels)) = res.witness {
            let table = SudokuTable::from_labels(group, row_labels, col_labels, k, k)
                .expect("labels are permutations of the group");
            let layout = table.layout();
            let verified = match mode {
                SearchMode::Magic => verify_magic(&table, &layout),
                SearchMode::Pandiagonal => verify_pandiagonal_magic(&table, &layout),
            };
            assert_eq!(verified, Ok(true), "phase 2 witness must verify");
            cert.outcome = OutcomeKind::Witness;
            return Ok(SearchOutcome { certificate: cert, witness: Some(table), elapsed: start.elapsed() });
        }
    }
    cert.outcome = OutcomeKind::Nonexistence;
    Ok(SearchOutcome { certificate: cert, witness: None, elapsed: start.elapsed() })
}

/// Counts all magic ordering combinations of one band pair; used to validate
/// the rotation reduction.
pub fn count_magic_orderings(group: &FiniteGroup, bands: &BandPartition, mode: SearchMode, reduced: bool) -> u128 {
    let k = bands.row_bands.len();
    let row_orders: Vec<Vec<Vec<ElementId>>> =
        bands.row_bands.iter().enumerate().map(|(a, b)| band_orderings(b, reduced && a == 0)).collect();
    let col_orders: Vec<Vec<Vec<ElementId>>> =
        bands.col_bands.iter().enumerate().map(|(a, b)| band_orderings(b, reduced && a == 0)).collect();
    let row_radix: Vec<usize> = row_orders.iter().map(|o| o.len()).collect();
    let col_radix: Vec<usize> = col_orders.iter().map(|o| o.len()).collect();
    let mut count = 0;
    let mut s = vec![0usize; k];
    loop {
        let mut t = vec![0usize; k];
        loop {
            if (0..k).all(|a| (0..k).all(|b| block_is_magic(group, &row_orders[a][s[a]], &col_orders[b][t[b]], mode))) {
                count += 1;
            }
            if !advance(&mut t, &col_radix) {
                break;
            }
        }
        if !advance(&mut s, &row_radix) {
            break;
        }
    }
    count
}

/// Independent phase-1 recount: partitions as restricted-growth labelings,
/// block conditions evaluated by direct products.
fn replay_phase1(group: &FiniteGroup, k: usize) -> (u128, u128, u128) {
    fn labelings(
        n: usize,
        k: usize,
        pos: usize,
        labels: &mut Vec<usize>,
        sizes: &mut Vec<usize>,
        out: &mut Vec<Vec<usize>>,
    ) {
        if pos == n {
            out.push(labels.clone());
            return;
        }
        let used = sizes.iter().filter(|&&s| s > 0).count();
        for b in 0..k.min(used + 1) {
            if sizes[b] < k {
                sizes[b] += 1;
                labels.push(b);
                labelings(n, k, pos + 1, labels, sizes, out);
                labels.pop();
                sizes[b] -= 1;
            }
        }
    }
    let n = k * k;
    let mut all = Vec::new();
    labelings(n, k, 0, &mut Vec::new(), &mut vec![0; k], &mut all);
    let bands: Vec<Vec<Vec<ElementId>>> = all
        .iter()
        .map(|lab| (0..k).map(|b| (0..n).filter(|&x| lab[x] == b).map(ElementId::new).collect()).collect())
        .collect();
    let abelian = group.is_abelian();
    let e = group.identity();
    let block_ok = |r: &[ElementId], c: &[ElementId]| {
        if abelian {
            for &x in r {
                if group.product_of(c.iter().map(|&y| group.op(x, y))) != e {
                    return false;
                }
            }
            for &y in c {
                if group.product_of(r.iter().map(|&x| group.op(x, y))) != e {
                    return false;
                }
            }
        }
        let mut entries: Vec<ElementId> = r.iter().flat_map(|&x| c.iter().map(move |&y| group.op(x, y))).collect();
        entries.sort_unstable();
        entries.dedup();
        entries.len() == n
    };
    let mut survivors = 0u128;
    for rows in &bands {
        for cols in &bands {
            if rows.iter().all(|r| cols.iter().all(|c| block_ok(r, c))) {
                survivors += 1;
            }
        }
    }
    let count = bands.len() as u128;
    (count, count * count, survivors)
}

/// Re-derives the phase-1 statistics with an independent enumerator and
/// compares them to the certificate.
pub fn replay_certificate(group: &FiniteGroup, cert: &Certificate) -> Result<(), SearchError> {
    fn check<T: PartialEq + ToString>(field: &'static str, claimed: T, recomputed: T) -> Result<(), SearchError> {
        if claimed == recomputed {
            Ok(())
        } else {
            Err(SearchError::CertificateInvalid {
                field,
                claimed: claimed.to_string(),
                recomputed: recomputed.to_string(),
            })
        }
    }
    check("group_spec", cert.group_spec.as_str(), group.spec())?;
    check("order", cert.order, group.order())?;
    let k = exact_sqrt(group.order()).ok_or(SearchError::NotPerfectSquare(group.order()))?;
    check("k", cert.k, k)?;
    if cert.outcome == OutcomeKind::Inconclusive {
        return Err(SearchError::CertificateInvalid {
            field: "outcome",
            claimed: cert.outcome.to_string(),
            recomputed: "a conclusive outcome".into(),
        });
    }
    let (partitions, pairs, survivors) = replay_phase1(group, k);
    check("partitions_per_side", cert.partitions_per_side, partitions)?;
    check("pairs_examined", cert.pairs_examined, pairs)?;
    check("phase1_survivors", cert.phase1_survivors, survivors)?;
    if survivors == 0 {
        check("outcome", cert.outcome, OutcomeKind::Nonexistence)?;
        check("orderings_examined", cert.orderings_examined, 0)?;
    } else if k > MAX_ORDERING_K {
        check("outcome", cert.outcome, OutcomeKind::Inconclusive)?;
    }
    Ok(())
}
