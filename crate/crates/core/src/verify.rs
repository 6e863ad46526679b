//! Property checks against the brute-force oracles, run by `pavoid verify`.
//!
//! `Scale::Quick` finishes in seconds; `Scale::Full` uses the full instance
//! counts and size ranges.

use std::time::{Duration, Instant};

use num_bigint::BigUint;
use num_rational::BigRational;
use rand::Rng;

use crate::bounds::{self, eval, int_params, parse_rational};
use crate::constructions::{grid_product, x_matrix};
use crate::counting::{count_avoiders, supermultiplicativity_violations};
use crate::extremal::{ex_exact, Budget};
use crate::greedy::{repfree_params, robust_find};
use crate::highdim::{
    antichain_probability, count_avoiders_dd, merge_avoiders, monotone_guarantee, monotone_subpattern,
    random_antichain_part, random_interleaving, AntichainMode, AntichainProbability, DDimPermutation,
};
use crate::matrix::{contains, is_interval_minor, BinaryMatrix, Permutation};
use crate::oracle;
use crate::repetition::{per_vector_census, random_repetition_free, repetition_census};
use crate::rng::SeededRng;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Scale {
    Quick,
    Full,
}

impl Scale {
    fn pick<T>(self, quick: T, full: T) -> T {
        match self {
            Scale::Quick => quick,
            Scale::Full => full,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Check {
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
    pub elapsed: Duration,
}

type Outcome = std::result::Result<String, String>;

pub const CHECKS: &[&str] = &[
    "containment",
    "interval-minor",
    "extremal",
    "census",
    "greedy",
    "grid-product",
    "xmatrix",
    "counting",
    "bounds",
    "highdim",
    "monotone",
];

/// Runs the named checks (all of them when `names` is empty).
pub fn run(names: &[String], scale: Scale, seed: u64) -> crate::Result<Vec<Check>> {
    let selected: Vec<&'static str> = if names.is_empty() {
        CHECKS.to_vec()
    } else {
        names
            .iter()
            .map(|n| {
                CHECKS.iter().copied().find(|c| c == n).ok_or_else(|| {
                    crate::Error::InvalidArgument(format!("unknown check `{n}`; known: {}", CHECKS.join(", ")))
                })
            })
            .collect::<crate::Result<_>>()?
    };
    Ok(selected
        .into_iter()
        .map(|name| {
            let start = Instant::now();
            let outcome = match name {
                "containment" => containment(scale, seed),
                "interval-minor" => interval_minor(scale, seed),
                "extremal" => extremal(scale),
                "census" => census(scale),
                "greedy" => greedy(scale, seed),
                "grid-product" => grid_product_check(scale, seed),
                "xmatrix" => xmatrix(),
                "counting" => counting(scale),
                "bounds" => bound_catalog(scale),
                "highdim" => highdim(scale, seed),
                "monotone" => monotone(scale),
                _ => unreachable!(),
            };
            let (passed, detail) = match outcome {
                Ok(d) => (true, d),
                Err(d) => (false, d),
            };
            Check { name, passed, detail, elapsed: start.elapsed() }
        })
        .collect())
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> std::result::Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn random_matrix(rows: usize, cols: usize, rng: &mut SeededRng) -> BinaryMatrix {
    let bits: Vec<bool> = (0..rows * cols).map(|_| rng.random_bool(0.5)).collect();
    BinaryMatrix::from_bits(rows, cols, &bits).expect("positive size")
}

fn containment(scale: Scale, seed: u64) -> Outcome {
    let mut rng = SeededRng::new(seed);
    let total = scale.pick(100, 500);
    for t in 0..total {
        let host = random_matrix(1 + rng.below(8), 1 + rng.below(8), &mut rng);
        let pattern = random_matrix(1 + rng.below(4), 1 + rng.below(4), &mut rng);
        let fast = contains(&host, &pattern);
        if let Some(e) = &fast {
            ensure(e.is_valid(&host, &pattern), || format!("instance {t}: invalid embedding"))?;
        }
        ensure(fast.is_some() == oracle::contains_exhaustive(&host, &pattern), || {
            format!("instance {t}: mismatch on host\n{host}pattern\n{pattern}")
        })?;
    }
    Ok(format!("{total}/{total} instances agree with subset enumeration"))
}

fn interval_minor(scale: Scale, seed: u64) -> Outcome {
    let mut rng = SeededRng::new(seed ^ 0x5eed);
    let total = scale.pick(100, 1000);
    for t in 0..total {
        let host = random_matrix(1 + rng.below(6), 1 + rng.below(6), &mut rng);
        let pattern = random_matrix(1 + rng.below(3), 1 + rng.below(3), &mut rng);
        let fast = is_interval_minor(&pattern, &host).map_err(|e| e.to_string())?;
        ensure(fast == oracle::interval_minor_exhaustive(&pattern, &host), || {
            format!("instance {t}: mismatch on host\n{host}pattern\n{pattern}")
        })?;
        let k = 1 + rng.below(3);
        let p = crate::constructions::random_permutation_with(k, &mut rng).expect("k >= 1").to_matrix();
        let minor = is_interval_minor(&p, &host).map_err(|e| e.to_string())?;
        ensure(minor == contains(&host, &p).is_some(), || format!("instance {t}: minor and containment disagree"))?;
    }
    Ok(format!("{total} random instances agree with decomposition enumeration"))
}

fn extremal(scale: Scale) -> Outcome {
    let i2 = Permutation::identity(2).to_matrix();
    let mut exact = Vec::new();
    for n in 1..=5 {
        let r = ex_exact(n, &i2, Budget::UNLIMITED).map_err(|e| e.to_string())?;
        ensure(r.is_exact() && r.value == 2 * n as u64 - 1, || format!("ex({n}, I_2) = {} ({:?})", r.value, r.status))?;
        exact.push(r.value);
    }
    for m in 1..=5 {
        for n in 1..=5 - m {
            ensure(exact[m + n - 1] >= exact[m - 1] + exact[n - 1], || format!("superadditivity fails at {m} + {n}"))?;
        }
    }
    let nmax = scale.pick(3, 4);
    let mut compared = 0;
    for k in 1..=3 {
        for p in oracle::all_permutations(k) {
            let pm = p.to_matrix();
            let mut values = Vec::new();
            for n in 1..=nmax {
                let r = ex_exact(n, &pm, Budget::UNLIMITED).map_err(|e| e.to_string())?;
                let brute = oracle::ex_exhaustive(n, &pm);
                ensure(r.is_exact() && r.value == brute, || format!("ex({n}, {p}) = {} but enumeration gives {brute}", r.value))?;
                let w = r.witness.expect("exact results carry a witness");
                ensure(contains(&w, &pm).is_none() && w.count_ones() as u64 == r.value, || {
                    format!("bad witness for ex({n}, {p})")
                })?;
                values.push(r.value);
                compared += 1;
            }
            for m in 1..nmax {
                for n in 1..=nmax - m {
                    ensure(values[m + n - 1] >= values[m - 1] + values[n - 1], || {
                        format!("superadditivity fails for {p} at {m} + {n}")
                    })?;
                }
            }
        }
    }
    Ok(format!("ex(n, I_2) = 2n - 1 for n <= 5; {compared} values match 2^(n^2) enumeration"))
}

fn census(scale: Scale) -> Outcome {
    let kmax = scale.pick(6, 7);
    let mut rows = 0;
    for k in 2..=kmax {
        for row in repetition_census(k).map_err(|e| e.to_string())? {
            ensure(row.count <= row.bound, || format!("k = {k}, r = {}: {} > {}", row.r, row.count, row.bound))?;
            let pv = per_vector_census(k, row.r).map_err(|e| e.to_string())?;
            ensure(pv.max <= pv.bound, || format!("k = {k}, r = {}: per-vector {} > {}", row.r, pv.max, pv.bound))?;
            rows += 1;
        }
    }
    Ok(format!("{rows} (k, r) pairs within both bounds for k <= {kmax}"))
}

fn host_with_zeros(n: usize, zeros: usize, rng: &mut SeededRng) -> BinaryMatrix {
    let mut host = BinaryMatrix::all_ones(n, n).expect("n >= 1");
    let mut placed = 0;
    while placed < zeros {
        let (i, j) = (1 + rng.below(n), 1 + rng.below(n));
        if host.get(i, j) {
            host.set(i, j, false);
            placed += 1;
        }
    }
    host
}

fn greedy(scale: Scale, seed: u64) -> Outcome {
    let (k, r) = (9usize, 3usize);
    let params = repfree_params(k as u64, r as u64).map_err(|e| e.to_string())?;
    let zeros = params.total_zero_budget as usize;
    let total = scale.pick(100, 1000);
    let mut rng = SeededRng::new(seed);
    for t in 0..total {
        let p = random_repetition_free(k, r, &mut rng, 1000).map_err(|e| e.to_string())?;
        let host = host_with_zeros(4 * k, zeros, &mut rng);
        let e = robust_find(&host, &p).map_err(|e| e.to_string())?;
        let ok = e.as_ref().is_some_and(|e| e.is_valid(&host, &p.to_matrix()));
        ensure(ok, || format!("instance {t}: no occurrence of {p}"))?;
    }
    let kmax = scale.pick(2000u64, 10_000);
    for k in 9..=kmax {
        for r in [3, 4, k / 3, k / 2, k].into_iter().filter(|&r| (3..=k).contains(&r)) {
            let p = repfree_params(k, r).map_err(|e| e.to_string())?;
            ensure(3 * p.w <= k, || format!("w = {} > k/3 at k = {k}, r = {r}", p.w))?;
        }
    }
    Ok(format!("{total}/{total} hosts with {zeros} zeros; w <= k/3 for k in [9, {kmax}]"))
}

fn grid_product_check(scale: Scale, seed: u64) -> Outcome {
    let i2 = Permutation::identity(2);
    let ex3 = ex_exact(3, &i2.to_matrix(), Budget::UNLIMITED).map_err(|e| e.to_string())?;
    ensure(ex3.value == 5, || format!("ex(3, I_2) = {}", ex3.value))?;
    let target = Permutation::new(vec![1, 3, 2, 4]).expect("valid").to_matrix();
    let total = scale.pick(10_000, 100_000);
    let mut rng = SeededRng::new(seed);
    for t in 0..total {
        let host = host_with_zeros(8, 7, &mut rng);
        ensure(contains(&host, &target).is_some(), || format!("sample {t} avoids 1324:\n{host}"))?;
    }
    let g = grid_product(&i2, &i2);
    Ok(format!("{total}/{total} 8x8 hosts with 7 zeros contain 1324 (I_2 # I_2 = {g})"))
}

fn xmatrix() -> Outcome {
    let x6 = x_matrix(6).map_err(|e| e.to_string())?;
    let cells: Vec<(usize, usize)> = (1..=12).flat_map(|i| (1..=12).map(move |j| (i, j))).collect();
    let mut placements = 0usize;
    let mut host = BinaryMatrix::all_ones(12, 12).expect("positive");
    let mut check = |host: &BinaryMatrix| -> std::result::Result<(), String> {
        placements += 1;
        ensure(contains(host, &x6).is_some(), || format!("12x12 host avoids X_6:\n{host}"))
    };
    check(&host)?;
    for &(i, j) in &cells {
        host.set(i, j, false);
        check(&host)?;
        host.set(i, j, true);
    }
    for a in 0..cells.len() {
        for b in a..cells.len() {
            host.set(cells[a].0, cells[a].1, false);
            host.set(cells[b].0, cells[b].1, false);
            check(&host)?;
            host.set(cells[a].0, cells[a].1, true);
            host.set(cells[b].0, cells[b].1, true);
        }
    }
    Ok(format!("{placements} zero placements (10441 distinct matrices) contain X_6"))
}

fn counting(scale: Scale) -> Outcome {
    let nmax = scale.pick(7, 8);
    let mut series = 0;
    for k in 3..=4 {
        for p in oracle::all_permutations(k) {
            let mut counts = Vec::new();
            for n in 1..=nmax {
                let c = count_avoiders(&p, n).map_err(|e| e.to_string())?;
                let brute = oracle::count_avoiders_enumerate(&p, n);
                ensure(c == BigUint::from(brute), || format!("|S_{p}({n})| = {c}, enumeration {brute}"))?;
                counts.push(c);
            }
            let bad = supermultiplicativity_violations(&counts);
            ensure(bad.is_empty(), || format!("supermultiplicativity fails for {p} at {bad:?}"))?;
            series += 1;
        }
    }
    let c = count_avoiders(&Permutation::new(vec![1, 2, 3]).expect("valid"), 4).map_err(|e| e.to_string())?;
    ensure(c == BigUint::from(14u32), || format!("|S_123(4)| = {c}"))?;
    Ok(format!("{series} patterns match n! enumeration for n <= {nmax}"))
}

fn bound_catalog(scale: Scale) -> Outcome {
    let int = |x: i64| BigRational::from_integer(x.into());
    let spot = |name: &str, params: bounds::Params, want: i64| -> std::result::Result<(), String> {
        let v = eval(name, &params).map_err(|e| e.to_string())?;
        ensure(v.value == Some(int(want)), || format!("{name} = {:?}, expected {want}", v.value))
    };
    spot("marcus_tardos", int_params(&[("k", 2)]), 192)?;
    let mut fw = int_params(&[("u", 4)]);
    fw.insert("q".into(), parse_rational("1/2").expect("fraction"));
    spot("framework", fw, 2048)?;
    spot("jk_minor", int_params(&[("k", 2)]), 6144)?;
    spot("xmatrix_rhs", int_params(&[("k", 6)]), 142)?;
    spot("scattered_count", int_params(&[("k", 5), ("r", 3)]), 1000)?;
    let tmax = scale.pick(6u32, 10);
    let mut cases = 0;
    for r in 1..=6u64 {
        for k in 1..=6u64 {
            for te in 0..=tmax {
                for se in 0..=te {
                    let (t, s) = (1u64 << te, 1u64 << se);
                    if s < 1 << (k - 1) {
                        continue;
                    }
                    let v = bounds::frk_recurrence(r, k, t, s).map_err(|e| e.to_string())?;
                    ensure(v.recurrence <= v.closed, || format!("f_({r},{k})({t},{s}) = {v}"))?;
                    cases += 1;
                }
            }
        }
    }
    Ok(format!("spot values match; recurrence <= closed form on {cases} cases"))
}

fn highdim(scale: Scale, seed: u64) -> Outcome {
    let nmax = scale.pick(4, 5);
    let i32 = DDimPermutation::identity(3, 2).map_err(|e| e.to_string())?;
    for n in 1..=nmax {
        let count = count_avoiders_dd(&i32, n).map_err(|e| e.to_string())?;
        let AntichainProbability::Exact(q) = antichain_probability(3, n, AntichainMode::Exact).map_err(|e| e.to_string())?
        else {
            unreachable!()
        };
        let fact = BigRational::from_integer(crate::bounds::factorial(n as u64).into());
        let expected = &fact * &fact * &q;
        ensure(BigRational::from_integer(count.clone().into()) == expected, || {
            format!("n = {n}: count {count} != (n!)^2 Q_3(n) = {expected}")
        })?;
        let bw = eval("brightwell", &int_params(&[("d", 3), ("n", n as i64)])).map_err(|e| e.to_string())?;
        let bw = bw.value.ok_or("brightwell value underflowed")?;
        ensure(q >= bw / &fact, || format!("Q_3({n}) below the antichain lower bound"))?;
        for k in 2..=3usize {
            let ik = DDimPermutation::identity(3, k).map_err(|e| e.to_string())?;
            let c = count_avoiders_dd(&ik, n).map_err(|e| e.to_string())?;
            let lower = eval("highdim_lower", &int_params(&[("d", 3), ("k", k as i64), ("n", n as i64)]))
                .map_err(|e| e.to_string())?;
            // count >= lower * (n!)^(3/2), squared to stay rational
            let lower = lower.value.ok_or("merging lower bound underflowed")?;
            let lhs = BigRational::from_integer(c.clone().into());
            ensure(&lhs * &lhs >= &lower * &lower * &fact * &fact * &fact, || {
                format!("k = {k}, n = {n}: count {c} below the merging lower bound")
            })?;
        }
    }
    let AntichainProbability::Exact(q2) = antichain_probability(3, 2, AntichainMode::Exact).map_err(|e| e.to_string())?
    else {
        unreachable!()
    };
    ensure(q2 == BigRational::new(3.into(), 4.into()), || format!("Q_3(2) = {q2}"))?;
    let seeds = 200;
    for s in 0..seeds {
        let mut rng = SeededRng::new(seed.wrapping_add(s));
        let parts = (0..3)
            .map(|_| random_antichain_part(3, 3, &mut rng, 10_000))
            .collect::<crate::Result<Vec<_>>>()
            .map_err(|e| e.to_string())?;
        let inter: Vec<Vec<usize>> = (0..3).map(|_| random_interleaving(3, 3, &mut rng)).collect();
        merge_avoiders(&parts, &inter).map_err(|e| format!("seed {s}: {e}"))?;
    }
    Ok(format!("count = (n!)^2 Q_3(n) for n <= {nmax}; lower bounds hold; {seeds} merges avoid I^3_4"))
}

fn monotone(scale: Scale) -> Outcome {
    let kmax = scale.pick(7, 8);
    let mut total = 0;
    for k in 1..=kmax {
        let need = monotone_guarantee(k, 2);
        for p in oracle::all_permutations(k) {
            let dd = DDimPermutation::from_axes(&[p.images().to_vec()]).map_err(|e| e.to_string())?;
            let (sub, pos) = monotone_subpattern(&dd);
            ensure(sub.is_monotone() && sub.size() >= need, || format!("{p}: got size {}", sub.size()))?;
            let images: Vec<usize> = pos.iter().map(|&i| p.image(i)).collect();
            let restricted = p.restriction(&pos).map_err(|e| e.to_string())?;
            ensure(contains(&p.to_matrix(), &restricted.to_matrix()).is_some(), || format!("{p}: not contained"))?;
            ensure(images.windows(2).all(|w| w[0] < w[1]) || images.windows(2).all(|w| w[0] > w[1]), || {
                format!("{p}: positions {pos:?} not monotone")
            })?;
            total += 1;
        }
    }
    Ok(format!("{total} permutations with k <= {kmax} give monotone subpatterns of size >= ceil(sqrt(k))"))
}
