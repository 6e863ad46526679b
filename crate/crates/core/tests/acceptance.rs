//! Acceptance suite. Each criterion is checked against brute-force oracles
//! written in this crate's test code and prints one PASS/FAIL line.
//!
//! Run with `cargo test -p pavoid-core --test acceptance`.

mod common;

use std::io::Write;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::time::{Duration, Instant};

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use rand::Rng;

use common::*;
use pavoid_core::bounds::{self, eval, int_params, Rounding};
use pavoid_core::constructions::{grid_product, x_matrix};
use pavoid_core::counting::{count_avoiders, supermultiplicativity_violations};
use pavoid_core::extremal::{ex_exact, Budget};
use pavoid_core::greedy::{repfree_params, robust_find};
use pavoid_core::highdim::{
    antichain_probability, count_avoiders_dd, merge_avoiders, monotone_subpattern, random_antichain_part,
    random_interleaving, AntichainMode, AntichainProbability, DDimPermutation,
};
use pavoid_core::repetition::{per_vector_census, random_repetition_free, repetition_census};
use pavoid_core::rng::SeededRng;
use pavoid_core::{contains, BinaryMatrix, Permutation};

type Outcome = Result<String, String>;

fn check(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn within(start: Instant, limit: Duration, what: &str) -> Result<(), String> {
    let t = start.elapsed();
    check(t < limit, || format!("{what} took {t:.1?}, limit {limit:?}"))
}

fn random_grid(rows: usize, cols: usize, density: f64, rng: &mut SeededRng) -> Grid {
    (0..rows).map(|_| (0..cols).map(|_| rng.random_bool(density)).collect()).collect()
}

fn to_matrix(g: &Grid) -> BinaryMatrix {
    let bits: Vec<bool> = g.iter().flatten().copied().collect();
    BinaryMatrix::from_bits(g.len(), g[0].len(), &bits).unwrap()
}

/// Checks an embedding by hand: increasing maps that send every pattern one to a host one.
fn embedding_ok(host: &Grid, pattern: &Grid, rows: &[usize], cols: &[usize]) -> bool {
    let inc = |m: &[usize]| m.windows(2).all(|w| w[0] < w[1]);
    rows.len() == pattern.len()
        && cols.len() == pattern[0].len()
        && inc(rows)
        && inc(cols)
        && rows.iter().all(|&r| (1..=host.len()).contains(&r))
        && cols.iter().all(|&c| (1..=host[0].len()).contains(&c))
        && (0..pattern.len())
            .all(|i| (0..pattern[0].len()).all(|j| !pattern[i][j] || host[rows[i] - 1][cols[j] - 1]))
}

fn all_ones_with_zeros(n: usize, zeros: &[(usize, usize)]) -> Grid {
    let mut g = vec![vec![true; n]; n];
    for &(i, j) in zeros {
        g[i][j] = false;
    }
    g
}

fn distinct_cells(n: usize, count: usize, rng: &mut SeededRng) -> Vec<(usize, usize)> {
    let mut cells = Vec::with_capacity(count);
    while cells.len() < count {
        let c = (rng.below(n), rng.below(n));
        if !cells.contains(&c) {
            cells.push(c);
        }
    }
    cells
}

fn c1_containment() -> Outcome {
    let start = Instant::now();
    let mut rng = SeededRng::new(1);
    let (mut yes, mut no) = (0, 0);
    for t in 0..500 {
        let density = [0.3, 0.5, 0.7, 0.9][t % 4];
        let host = random_grid(1 + rng.below(8), 1 + rng.below(8), density, &mut rng);
        let pattern = random_grid(1 + rng.below(4), 1 + rng.below(4), 0.5, &mut rng);
        let want = contains_by_subsets(&host, &pattern);
        let got = contains(&to_matrix(&host), &to_matrix(&pattern));
        check(got.is_some() == want, || format!("instance {t}: got {}, oracle {want}", got.is_some()))?;
        if let Some(e) = got {
            check(embedding_ok(&host, &pattern, &e.row_map, &e.col_map), || format!("instance {t}: bad embedding"))?;
            yes += 1;
        } else {
            no += 1;
        }
    }
    within(start, Duration::from_secs(60), "500 instances")?;
    Ok(format!("500/500 agree ({yes} contained, {no} avoided) in {:.2?}", start.elapsed()))
}

fn c2_extremal() -> Outcome {
    let i2 = perm_grid(&[1, 2]);
    let mut i2_values = Vec::new();
    for n in 1..=5 {
        let r = ex_exact(n, &to_matrix(&i2), Budget::UNLIMITED).map_err(|e| e.to_string())?;
        check(r.is_exact() && r.value == 2 * n as u64 - 1, || format!("ex({n}, I_2) = {} {:?}", r.value, r.status))?;
        i2_values.push(r.value);
    }
    let mut patterns: Vec<Grid> = (1..=3).flat_map(all_perms).map(|p| perm_grid(&p)).collect();
    // every binary pattern up to 2 x 2 as well, not only permutations
    for (r, c) in [(1, 1), (1, 2), (2, 1), (2, 2)] {
        for mask in 1u32..1 << (r * c) {
            patterns.push((0..r).map(|i| (0..c).map(|j| mask >> (i * c + j) & 1 == 1).collect()).collect());
        }
    }
    let mut compared = 0;
    let mut series = vec![i2_values];
    for p in &patterns {
        let mut values = Vec::new();
        for n in 1..=4 {
            let r = ex_exact(n, &to_matrix(p), Budget::UNLIMITED).map_err(|e| e.to_string())?;
            let want = ex_by_enumeration(n, p);
            check(r.is_exact() && r.value == want, || format!("ex({n}, {p:?}) = {}, enumeration {want}", r.value))?;
            let w = grid(r.witness.as_ref().ok_or("exact result without witness")?);
            let ones = w.iter().flatten().filter(|&&b| b).count() as u64;
            check(ones == r.value && !contains_by_subsets(&w, p), || format!("bad witness for ex({n}, {p:?})"))?;
            values.push(r.value);
            compared += 1;
        }
        series.push(values);
    }
    let mut pairs = 0;
    for s in &series {
        for m in 1..s.len() {
            for n in 1..=s.len() - m {
                check(s[m + n - 1] >= s[m - 1] + s[n - 1], || format!("superadditivity fails at {m} + {n} in {s:?}"))?;
                pairs += 1;
            }
        }
    }
    Ok(format!(
        "ex(n, I_2) = 2n - 1 for n <= 5; {compared} values over {} patterns match enumeration; {pairs} superadditivity pairs",
        patterns.len()
    ))
}

fn c3_census() -> Outcome {
    let start = Instant::now();
    let mut checked = 0;
    for k in 2..=7usize {
        let kf = factorial(k);
        // with_rep[r] = permutations with some vector repeated >= r times
        let mut with_rep = vec![0u128; k];
        // per_vec[r] = for each vector, permutations where it is repeated >= r times
        let mut per_vec = vec![std::collections::HashMap::<(i64, i64), u128>::new(); k];
        for p in all_perms(k) {
            let h = distance_counts(&p);
            let top = h.values().copied().max().unwrap_or(0);
            for r in 1..k {
                if top >= r {
                    with_rep[r] += 1;
                }
                for (&v, &c) in &h {
                    if c >= r {
                        *per_vec[r].entry(v).or_insert(0) += 1;
                    }
                }
            }
        }
        let rows = repetition_census(k).map_err(|e| e.to_string())?;
        for r in 1..k {
            let rf = factorial(r);
            let pv_max = per_vec[r].values().copied().max().unwrap_or(0);
            check(pv_max <= kf / rf, || format!("k = {k}, r = {r}: per-vector {pv_max} > k!/r!"))?;
            check(with_rep[r] <= 2 * (k * k) as u128 * kf / rf, || format!("k = {k}, r = {r}: {} too many", with_rep[r]))?;
            let row = rows.iter().find(|row| row.r == r).ok_or("missing census row")?;
            check(row.count == with_rep[r], || format!("k = {k}, r = {r}: census {} vs {}", row.count, with_rep[r]))?;
            let pv = per_vector_census(k, r).map_err(|e| e.to_string())?;
            check(pv.max == pv_max, || format!("k = {k}, r = {r}: per-vector census {} vs {pv_max}", pv.max))?;
            checked += 1;
        }
    }
    within(start, Duration::from_secs(300), "census")?;
    Ok(format!("{checked} (k, r) pairs for k <= 7, zero violations, in {:.2?}", start.elapsed()))
}

fn c4_greedy() -> Outcome {
    let (k, r) = (9usize, 3usize);
    let params = repfree_params(k as u64, r as u64).map_err(|e| e.to_string())?;
    check(params.total_zero_budget == 4, || format!("zero budget {}", params.total_zero_budget))?;
    let mut rng = SeededRng::new(4);
    let mut by_zeros = [0usize; 5];
    for t in 0..1000 {
        let p = random_repetition_free(k, r, &mut rng, 10_000).map_err(|e| e.to_string())?;
        let top = distance_counts(p.images()).values().copied().max().unwrap_or(0);
        check(top < r, || format!("instance {t}: {p} has a {top}-repetition"))?;
        let zeros = if t % 4 == 0 { t / 4 % 5 } else { 4 };
        by_zeros[zeros] += 1;
        let host = all_ones_with_zeros(4 * k, &distinct_cells(4 * k, zeros, &mut rng));
        let e = robust_find(&to_matrix(&host), &p).map_err(|e| e.to_string())?;
        let e = e.ok_or_else(|| format!("instance {t}: no occurrence of {p}"))?;
        check(embedding_ok(&host, &perm_grid(p.images()), &e.row_map, &e.col_map), || {
            format!("instance {t}: invalid occurrence")
        })?;
    }
    for k in 9..=10_000u64 {
        // smallest w with (24 w)^3 r >= 35^3 k, largest at r = 3
        for r in [3u64, 4, 5, k / 3, k] {
            if r < 3 {
                continue;
            }
            let mut w = 1u128;
            while (24 * w).pow(3) * (r as u128) < 35u128.pow(3) * k as u128 {
                w += 1;
            }
            let p = repfree_params(k, r).map_err(|e| e.to_string())?;
            check(p.w as u128 == w && 3 * w <= k as u128, || format!("k = {k}, r = {r}: w = {} (expected {w})", p.w))?;
        }
    }
    Ok(format!("1000/1000 robust_find successes (hosts by zero count {by_zeros:?}); w <= k/3 for k in [9, 10000]"))
}

fn c5_grid_product() -> Outcome {
    let i2 = perm_grid(&[1, 2]);
    let ex3 = ex_by_enumeration(3, &i2);
    check(ex3 == 5, || format!("ex(3, I_2) = {ex3}"))?;
    let lib = ex_exact(3, &to_matrix(&i2), Budget::UNLIMITED).map_err(|e| e.to_string())?;
    check(lib.value == 5, || format!("library ex(3, I_2) = {}", lib.value))?;
    let g = grid_product(&Permutation::identity(2), &Permutation::identity(2));
    check(g.images() == [1, 3, 2, 4], || format!("I_2 # I_2 = {g}"))?;
    let target = perm_grid(&[1, 3, 2, 4]);
    let tm = to_matrix(&target);
    let mut rng = SeededRng::new(5);
    for t in 0..100_000 {
        let host = all_ones_with_zeros(8, &distinct_cells(8, 7, &mut rng));
        check(contains_by_rows(&host, &target), || format!("sample {t} avoids 1324"))?;
        // spot-check the library on a slice of the samples
        if t % 100 == 0 {
            check(contains(&to_matrix(&host), &tm).is_some(), || format!("library misses sample {t}"))?;
        }
    }
    Ok("ex(3, I_2) = 5; 100000/100000 8x8 hosts with 7 zeros contain 1324".into())
}

fn c6_xmatrix() -> Outcome {
    let start = Instant::now();
    let x6: Grid = (0..6).map(|i| (0..6).map(|j| j == i || j == 5 - i).collect()).collect();
    check(grid(&x_matrix(6).map_err(|e| e.to_string())?) == x6, || "x_matrix(6) shape".into())?;
    let cells: Vec<(usize, usize)> = (0..12).flat_map(|i| (0..12).map(move |j| (i, j))).collect();
    let mut placements = 1;
    let mut distinct = std::collections::HashSet::new();
    let full = all_ones_with_zeros(12, &[]);
    check(contains_by_rows(&full, &x6), || "all-ones host avoids X_6".into())?;
    distinct.insert(Vec::new());
    // 0 zeros, then 1 zero, then pairs a <= b (so single zeros come up twice)
    for (a, &cell) in cells.iter().enumerate() {
        let host = all_ones_with_zeros(12, &[cell]);
        check(contains_by_rows(&host, &x6), || format!("zero at {cell:?} avoids X_6"))?;
        placements += 1;
        distinct.insert(vec![a]);
    }
    for a in 0..cells.len() {
        for b in a..cells.len() {
            let host = all_ones_with_zeros(12, &[cells[a], cells[b]]);
            check(contains_by_rows(&host, &x6), || format!("zeros at {:?}, {:?} avoid X_6", cells[a], cells[b]))?;
            placements += 1;
            let mut key = vec![a, b];
            key.dedup();
            distinct.insert(key);
        }
    }
    check(placements == 10_585, || format!("{placements} placements"))?;
    check(distinct.len() == 10_441, || format!("{} distinct matrices", distinct.len()))?;
    within(start, Duration::from_secs(300), "X_6 sweep")?;
    Ok(format!(
        "10585 placements ({} distinct matrices) of <= 2 zeros in 12x12 all contain X_6, in {:.2?}",
        distinct.len(),
        start.elapsed()
    ))
}

fn c7_counting() -> Outcome {
    let patterns: Vec<Vec<usize>> = (3..=4).flat_map(all_perms).collect();
    let perms_by_n: Vec<Vec<Vec<usize>>> = (0..=8).map(|n| if n == 0 { vec![] } else { all_perms(n) }).collect();
    let results: Vec<Result<(), String>> = std::thread::scope(|s| {
        let handles: Vec<_> = patterns
            .iter()
            .map(|pat| {
                let perms_by_n = &perms_by_n;
                s.spawn(move || -> Result<(), String> {
                    let p = Permutation::new(pat.clone()).map_err(|e| e.to_string())?;
                    let mut own = vec![1u128];
                    let mut lib = Vec::new();
                    for n in 1..=8 {
                        let c = perms_by_n[n].iter().filter(|q| !seq_contains(q, pat)).count() as u128;
                        let got = count_avoiders(&p, n).map_err(|e| e.to_string())?;
                        check(got == BigUint::from(c), || format!("|S_{p}({n})| = {got}, enumeration {c}"))?;
                        own.push(c);
                        lib.push(got);
                    }
                    for m in 1..8 {
                        for n in 1..=8 - m {
                            check(own[m + n] >= own[m] * own[n], || format!("{p}: supermultiplicativity at {m} + {n}"))?;
                        }
                    }
                    let bad = supermultiplicativity_violations(&lib);
                    check(bad.is_empty(), || format!("{p}: library reports violations {bad:?}"))
                })
            })
            .collect();
        handles.into_iter().map(|h| h.join().expect("worker panicked")).collect()
    });
    results.into_iter().collect::<Result<Vec<_>, _>>()?;
    let c = count_avoiders(&Permutation::new(vec![1, 2, 3]).unwrap(), 4).map_err(|e| e.to_string())?;
    check(c == BigUint::from(14u32), || format!("|S_123(4)| = {c}"))?;
    Ok(format!("{} patterns match enumeration for n <= 8; |S_123(4)| = 14; supermultiplicative", patterns.len()))
}

fn frk_own(r: u64, k: u64, t: u64, s: u64) -> BigUint {
    if s > t {
        BigUint::from(0u32)
    } else if k == 1 {
        BigUint::from(r - 1)
    } else {
        BigUint::from(2u32) * (frk_own(r, k, t / 2, s) + frk_own(r, k - 1, t / 2, s / 2))
    }
}

fn c8_bounds() -> Outcome {
    let int = |x: i64| BigRational::from_integer(x.into());
    let spots: [(&str, Vec<(&str, &str)>, i64); 5] = [
        ("marcus_tardos", vec![("k", "2")], 192),
        ("framework", vec![("u", "4"), ("q", "1/2")], 2048),
        ("jk_minor", vec![("k", "2")], 6144),
        ("xmatrix_rhs", vec![("k", "6")], 142),
        ("scattered_count", vec![("k", "5"), ("r", "3")], 1000),
    ];
    for (name, params, want) in &spots {
        let params: bounds::Params =
            params.iter().map(|(k, v)| (k.to_string(), bounds::parse_rational(v).unwrap())).collect();
        let v = eval(name, &params).map_err(|e| e.to_string())?;
        check(v.value == Some(int(*want)), || format!("{name} = {:?}, expected {want}", v.value))?;
    }
    let mut cases = 0;
    for r in 1..=6u64 {
        for k in 1..=6u64 {
            for te in 0..=10 {
                for se in (k - 1)..=te {
                    let (t, s) = (1u64 << te, 1u64 << se);
                    let v = bounds::frk_recurrence(r, k, t, s).map_err(|e| e.to_string())?;
                    let own = frk_own(r, k, t, s);
                    let closed = BigUint::from(r) * BigUint::from(t / s).pow(2) * BigUint::from(4u32).pow(k as u32 - 1);
                    check(v.recurrence == own && v.closed == closed, || format!("f_({r},{k})({t},{s}) mismatch"))?;
                    check(own <= closed, || format!("f_({r},{k})({t},{s}) = {own} > {closed}"))?;
                    cases += 1;
                }
            }
        }
    }
    Ok(format!("5 spot values match; recurrence <= closed form on {cases} (r, k, t, s)"))
}

/// Counts pairs of permutations (axes 2 and 3) whose points have no chain longer than `max_chain`.
fn count_dd_own(n: usize, max_chain: usize) -> u128 {
    let perms = all_perms(n);
    let mut count = 0;
    for a in &perms {
        for b in &perms {
            let pts: Vec<Vec<usize>> = (0..n).map(|i| vec![i + 1, a[i], b[i]]).collect();
            if longest_chain(&pts) <= max_chain {
                count += 1;
            }
        }
    }
    count
}

/// Triples of linear orders on `[n]` whose intersection is an antichain.
fn antichain_triples(n: usize) -> u128 {
    // position of element e in each order; a pair is comparable if ordered alike in all three
    let perms = all_perms(n);
    let mut count = 0;
    for a in &perms {
        for b in &perms {
            for c in &perms {
                let comparable = (0..n).any(|x| {
                    (x + 1..n).any(|y| {
                        let s = a[x] < a[y];
                        (b[x] < b[y]) == s && (c[x] < c[y]) == s
                    })
                });
                if !comparable {
                    count += 1;
                }
            }
        }
    }
    count
}

fn rat(x: u128) -> BigRational {
    BigRational::from_integer(BigInt::from(x))
}

fn c9_highdim() -> Outcome {
    for n in 1..=5usize {
        let nf = factorial(n);
        let triples = antichain_triples(n);
        let q_own = BigRational::new(BigInt::from(triples), BigInt::from(nf * nf * nf));
        let AntichainProbability::Exact(q) =
            antichain_probability(3, n, AntichainMode::Exact).map_err(|e| e.to_string())?
        else {
            return Err("exact mode returned an estimate".into());
        };
        check(q == q_own, || format!("Q_3({n}) = {q}, enumeration {q_own}"))?;
        if n == 2 {
            check(q == BigRational::new(3.into(), 4.into()), || format!("Q_3(2) = {q}"))?;
        }
        let own2 = count_dd_own(n, 1);
        let lib2 = count_avoiders_dd(&DDimPermutation::identity(3, 2).unwrap(), n).map_err(|e| e.to_string())?;
        check(lib2 == BigUint::from(own2), || format!("n = {n}: library count {lib2}, enumeration {own2}"))?;
        check(rat(own2) == rat(nf * nf) * &q, || format!("n = {n}: {own2} != (n!)^2 Q_3(n)"))?;

        let bw = eval("brightwell", &int_params(&[("d", 3), ("n", n as i64)])).map_err(|e| e.to_string())?;
        check(bw.rounding == Rounding::Down || bw.rounding == Rounding::Exact, || "brightwell not rounded down".into())?;
        let bw = bw.value.ok_or("brightwell value missing")?;
        check(q >= bw / rat(nf), || format!("Q_3({n}) = {q} below the antichain bound"))?;

        for (k, own) in [(2usize, own2), (3, count_dd_own(n, 2))] {
            let lower = eval("highdim_lower", &int_params(&[("d", 3), ("k", k as i64), ("n", n as i64)]))
                .map_err(|e| e.to_string())?;
            check(lower.rounding == Rounding::Down, || "merging bound not rounded down".into())?;
            let lower = lower.value.ok_or("merging bound missing")?;
            // own >= lower * (n!)^(3/2), squared
            check(rat(own * own) >= &lower * &lower * rat(nf * nf * nf), || {
                format!("k = {k}, n = {n}: {own} below the merging lower bound")
            })?;
        }
    }
    let mut shapes = std::collections::BTreeSet::new();
    for seed in 0..200u64 {
        let mut rng = SeededRng::new(seed);
        let (l, m) = (2 + rng.below(3), 2 + rng.below(3));
        let parts = (0..l)
            .map(|_| random_antichain_part(3, m, &mut rng, 100_000))
            .collect::<Result<Vec<_>, _>>()
            .map_err(|e| e.to_string())?;
        for part in &parts {
            check(longest_chain(&part.points()) == 1, || format!("seed {seed}: part is not an antichain"))?;
        }
        let inter: Vec<Vec<usize>> = (0..3).map(|_| random_interleaving(l, m, &mut rng)).collect();
        let merged = merge_avoiders(&parts, &inter).map_err(|e| format!("seed {seed}: {e}"))?;
        let pts = merged.points();
        check(pts.len() == l * m, || format!("seed {seed}: {} points", pts.len()))?;
        for axis in 0..3 {
            let mut vals: Vec<usize> = pts.iter().map(|p| p[axis]).collect();
            vals.sort();
            check(vals == (1..=l * m).collect::<Vec<_>>(), || format!("seed {seed}: axis {axis} is not a permutation"))?;
        }
        let chain = longest_chain(&pts);
        check(chain <= l, || format!("seed {seed}: chain of {chain} in a merge of {l} parts"))?;
        shapes.insert((l, m));
    }
    Ok(format!(
        "count = (n!)^2 Q_3(n) and both bounds hold for n <= 5; Q_3(2) = 3/4; 200 merges over {} (l, m) shapes avoid I^3_(l+1)",
        shapes.len()
    ))
}

fn c10_monotone() -> Outcome {
    let mut total = 0;
    for k in 1..=8usize {
        let need = (1..=k).find(|s| s * s >= k).unwrap();
        for p in all_perms(k) {
            let dd = DDimPermutation::from_axes(&[p.clone()]).map_err(|e| e.to_string())?;
            let (sub, pos) = monotone_subpattern(&dd);
            check(pos.len() >= need && pos.windows(2).all(|w| w[0] < w[1]), || format!("{p:?}: positions {pos:?}"))?;
            let vals: Vec<usize> = pos.iter().map(|&i| p[i - 1]).collect();
            let inc = vals.windows(2).all(|w| w[0] < w[1]);
            let dec = vals.windows(2).all(|w| w[0] > w[1]);
            check(inc || dec, || format!("{p:?}: {vals:?} is not monotone"))?;
            // the reported pattern is the rank-reduced restriction
            let want: Vec<Vec<usize>> = (0..vals.len())
                .map(|i| vec![i + 1, vals.iter().filter(|&&v| v <= vals[i]).count()])
                .collect();
            check(sub.points() == want, || format!("{p:?}: subpattern {:?} != {want:?}", sub.points()))?;
            check(seq_contains(&p, &want.iter().map(|q| q[1]).collect::<Vec<_>>()), || format!("{p:?}: not contained"))?;
            total += 1;
        }
    }
    Ok(format!("{total} permutations with k <= 8 give verified monotone subpatterns of size >= ceil(sqrt(k))"))
}

/// Writes past the test harness's output capture so the lines show up in a plain `cargo test`.
fn report(line: &str) {
    let mut err = std::io::stderr().lock();
    let _ = writeln!(err, "{line}");
}

#[test]
fn acceptance() {
    let criteria: [(&str, fn() -> Outcome); 10] = [
        ("containment oracle equivalence", c1_containment),
        ("exact extremal values", c2_extremal),
        ("repetition census bounds", c3_census),
        ("greedy occurrences at k = 9, r = 3", c4_greedy),
        ("grid product instance", c5_grid_product),
        ("X_6 in 12x12 with <= 2 zeros", c6_xmatrix),
        ("avoider counting", c7_counting),
        ("bound catalog", c8_bounds),
        ("high-dimensional counts and bounds", c9_highdim),
        ("monotone subpatterns", c10_monotone),
    ];
    let mut failed = Vec::new();
    for (i, (name, f)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let result = catch_unwind(AssertUnwindSafe(f)).unwrap_or_else(|e| {
            let msg = e.downcast_ref::<String>().cloned().or_else(|| e.downcast_ref::<&str>().map(|s| s.to_string()));
            Err(format!("panicked: {}", msg.unwrap_or_default()))
        });
        let t = start.elapsed();
        match result {
            Ok(detail) => report(&format!("PASS {:>2} {name} ({t:.2?}): {detail}", i + 1)),
            Err(e) => {
                report(&format!("FAIL {:>2} {name} ({t:.2?}): {e}", i + 1));
                failed.push(i + 1);
            }
        }
    }
    assert!(failed.is_empty(), "failed criteria: {failed:?}");
}
