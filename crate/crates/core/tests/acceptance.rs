//! Acceptance suite: one PASS/FAIL line per criterion. All tolerances are
//! exact (integer equality); nothing here is approximate.

mod common;

use std::collections::{BTreeMap, BTreeSet, HashSet};
use std::panic::{self, AssertUnwindSafe};
use std::process::ExitCode;
use std::time::Instant;

use rand::seq::index::sample;
use rand::{seq::SliceRandom, SeedableRng};
use rand_chacha::ChaCha8Rng;

use common::{all_valid_codes, is_prime, levels, relabelings};
use tangle_core::enumerate::{weak_filter, Class, CountsTable};
use tangle_core::flype::{apply_flype, flype_sites, orbits};
use tangle_core::map::vertex_of;
use tangle_core::tables::{expected, expected_total, verify};
use tangle_core::{canonical_code, genealogy, invariant_root_code, CascadeCode, PlanarMap};

/// Checks report a one-line summary or a failure description.
type Outcome = Result<String, String>;

struct Ctx {
    /// Enumerated levels n = 1..=9.
    levels: Vec<Vec<CascadeCode>>,
    /// Flype orbits per level n = 1..=8, filled by criterion 2.
    orbits: Vec<Vec<Vec<CascadeCode>>>,
}

impl Ctx {
    fn level(&self, n: usize) -> &[CascadeCode] {
        &self.levels[n - 1]
    }
}

fn table_from<F: Fn(&PlanarMap) -> bool>(class: Class, ctx: &Ctx, n_max: usize, keep: F) -> CountsTable {
    let mut t = CountsTable::new(class);
    for n in 1..=n_max {
        t.tally_level(n, ctx.level(n), &keep).unwrap();
    }
    t
}

fn compare(t: &CountsTable, n_max: usize) -> Outcome {
    let diff = verify(t, n_max);
    if !diff.is_empty() {
        let lines: Vec<String> = diff.iter().map(ToString::to_string).collect();
        return Err(format!("{} cell(s) differ: {}", diff.len(), lines.join("; ")));
    }
    for n in 1..=n_max {
        if Some(t.total(n)) != expected_total(t.class, n) {
            return Err(format!("total at n={n}: got {}", t.total(n)));
        }
    }
    let totals: Vec<String> = t.totals().iter().map(u64::to_string).collect();
    Ok(format!("all cells n<=9 match; totals {}", totals.join(", ")))
}

fn c1_projections(ctx: &mut Ctx) -> Outcome {
    let t = table_from(Class::Projections, ctx, 9, |_| true);
    if t.get(9, 10) != 6257 {
        return Err(format!("(9,10) = {}", t.get(9, 10)));
    }
    compare(&t, 9)
}

fn c2_alternating(ctx: &mut Ctx) -> Outcome {
    let mut t = CountsTable::new(Class::Alternating);
    ctx.orbits.clear();
    for n in 1..=8 {
        let o = orbits(ctx.level(n)).map_err(|e| e.to_string())?;
        t.entries.entry((n, 2)).or_insert(0);
        for orbit in &o {
            t.add(n, orbit[0].expand().unwrap().k(), 1);
        }
        ctx.orbits.push(o);
    }
    let diff = verify(&t, 8);
    if !diff.is_empty() {
        let lines: Vec<String> = diff.iter().map(ToString::to_string).collect();
        return Err(format!("{} cell(s) differ: {}", diff.len(), lines.join("; ")));
    }
    // The k = n + 1 diagonal has no flypes at all.
    for n in 1..=8 {
        if t.get(n, n + 1) != expected(Class::Projections, n, n + 1).unwrap() {
            return Err(format!("diagonal n={n} differs from projections"));
        }
    }
    let totals: Vec<String> = t.totals().iter().map(u64::to_string).collect();
    Ok(format!("all cells n<=8 match; totals {}", totals.join(", ")))
}

fn c3_reduced(ctx: &mut Ctx) -> Outcome {
    compare(&table_from(Class::Reduced, ctx, 9, PlanarMap::is_reduced), 9)
}

fn c4_oracle(ctx: &mut Ctx) -> Outcome {
    let mut checked = 0usize;
    for n in 1..=5 {
        // Bucket every prime expansion by its invariant root-code.
        let mut buckets: BTreeMap<Vec<u8>, (usize, CascadeCode)> = BTreeMap::new();
        for c in all_valid_codes(n) {
            checked += 1;
            let m = c.expand().unwrap();
            if !is_prime(&m) {
                continue;
            }
            let key = invariant_root_code(&m).unwrap().0 .0;
            buckets.entry(key).or_insert((m.k(), c));
        }
        let mut by_k: BTreeMap<usize, u64> = BTreeMap::new();
        for (k, _) in buckets.values() {
            *by_k.entry(*k).or_insert(0) += 1;
        }
        let mut enumerated: BTreeMap<usize, u64> = BTreeMap::new();
        for c in ctx.level(n) {
            *enumerated.entry(c.expand().unwrap().k()).or_insert(0) += 1;
        }
        if by_k != enumerated {
            return Err(format!("n={n}: oracle {by_k:?} vs enumerator {enumerated:?}"));
        }
        // Same projections, not just the same numbers.
        let from_oracle: BTreeSet<CascadeCode> = buckets
            .values()
            .map(|(_, c)| canonical_code(&c.expand().unwrap()).unwrap())
            .collect();
        let from_enum: BTreeSet<CascadeCode> = ctx.level(n).iter().cloned().collect();
        if from_oracle != from_enum {
            return Err(format!("n={n}: canonical code sets differ"));
        }
    }
    Ok(format!("{checked} valid codes n<=5 bucketed; per-(n,k) counts and code sets identical"))
}

fn invariant_under_relabeling(m: &PlanarMap, perm: &[usize]) -> Result<(), String> {
    let code = invariant_root_code(m).unwrap().0;
    let canon = canonical_code(m).unwrap();
    for (i, r) in relabelings(m, perm).iter().enumerate() {
        if invariant_root_code(r).unwrap().0 != code {
            return Err(format!("root-code changed under relabeling #{i} of {canon}"));
        }
        if canonical_code(r).unwrap() != canon {
            return Err(format!("canonical code changed under relabeling #{i} of {canon}"));
        }
    }
    Ok(())
}

fn c5_invariance(ctx: &mut Ctx) -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(0x7a6e);
    let mut maps = 0;
    for n in 1..=5 {
        for c in all_valid_codes(n) {
            let m = c.expand().unwrap();
            if !is_prime(&m) {
                continue;
            }
            let mut perm: Vec<usize> = (0..n).collect();
            perm.shuffle(&mut rng);
            invariant_under_relabeling(&m, &perm)?;
            maps += 1;
        }
    }
    let level8 = ctx.level(8);
    for i in sample(&mut rng, level8.len(), 1000).into_iter() {
        let m = level8[i].expand().unwrap();
        let mut perm: Vec<usize> = (0..8).collect();
        perm.shuffle(&mut rng);
        invariant_under_relabeling(&m, &perm)?;
    }
    Ok(format!("{maps} prime maps n<=5 (all drawings) and 1000 sampled n=8 maps fixed under all 4k relabelings"))
}

fn c6_nesting(ctx: &mut Ctx) -> Outcome {
    let mut count = 0;
    for n in 1..=7 {
        for c in ctx.level(n) {
            let g = genealogy(c).map_err(|e| format!("{c}: {e}"))?;
            if g.prefixes.len() != n || g.prefixes.last() != Some(c) {
                return Err(format!("{c}: genealogy has {} prefixes", g.prefixes.len()));
            }
            count += 1;
        }
    }
    Ok(format!("{count} canonical codes n<=7: every prefix re-canonicalizes to itself"))
}

fn c7_structure(ctx: &mut Ctx) -> Outcome {
    for n in 1..=8 {
        let level = ctx.level(n);
        let set: HashSet<&CascadeCode> = level.iter().collect();
        if set.len() != level.len() {
            return Err(format!("n={n}: {} duplicate codes", level.len() - set.len()));
        }
    }
    for n in 1..7 {
        let parents: HashSet<CascadeCode> = ctx
            .level(n + 1)
            .iter()
            .map(|c| c.prefix(c.steps.len() - 1))
            .collect();
        if let Some(dead) = ctx.level(n).iter().find(|c| !parents.contains(*c)) {
            return Err(format!("dead end at {dead}"));
        }
    }
    let mut moves = 0usize;
    for n in 1..=8 {
        for c in ctx.level(n) {
            let m = c.expand().unwrap();
            for site in flype_sites(&m) {
                let f = apply_flype(&m, &site).map_err(|e| format!("{c}: {e}"))?;
                if f.crossing_count() != n || f.k() != m.k() || !is_prime(&f) {
                    return Err(format!("flype of {c} broke (n, k) or primality"));
                }
                moves += 1;
            }
        }
    }
    // Orbits from criterion 2 stay inside one k.
    for orbit in ctx.orbits.iter().flatten() {
        let k = orbit[0].expand().unwrap().k();
        if orbit.iter().any(|c| c.expand().unwrap().k() != k) {
            return Err(format!("orbit of {} mixes leg counts", orbit[0]));
        }
    }
    Ok(format!(
        "no duplicates n<=8; no dead ends n<7; {moves} flype moves preserve (n,k) and primality"
    ))
}

fn c8_weak_filter(_: &mut Ctx) -> Outcome {
    let mut kept = 0;
    let mut total = 0;
    for n in 1..=5 {
        for c in all_valid_codes(n) {
            let m = c.expand().unwrap();
            if !is_prime(&m) {
                continue;
            }
            total += 1;
            // Count legs per crossing from the boundary side.
            let mut per = vec![0; n];
            for &d in m.legs() {
                per[vertex_of(d)] += 1;
            }
            let want = n == 1 || per.iter().all(|&l| l <= 1);
            if weak_filter(&m) != want {
                return Err(format!("weak filter wrong on {c}"));
            }
            kept += usize::from(want);
        }
    }
    Ok(format!("{kept} of {total} prime drawings n<=5 pass; postcondition holds (informational class)"))
}

fn main() -> ExitCode {
    let start = Instant::now();
    let mut ctx = Ctx {
        levels: levels(9),
        orbits: Vec::new(),
    };
    println!("acceptance: enumerated n<=9 in {:.1?}; tolerance: exact integer equality", start.elapsed());
    type Check = fn(&mut Ctx) -> Outcome;
    let checks: [(&str, Check); 8] = [
        ("1 projection counts (n<=9)", c1_projections),
        ("2 alternating counts (n<=8)", c2_alternating),
        ("3 reduced counts (n<=9)", c3_reduced),
        ("4 brute-force oracle (n<=5)", c4_oracle),
        ("5 relabeling invariance", c5_invariance),
        ("6 nesting property (n<=7)", c6_nesting),
        ("7 structural invariants", c7_structure),
        ("8 weak filter postcondition", c8_weak_filter),
    ];
    let mut failed = 0;
    panic::set_hook(Box::new(|_| {}));
    for (name, check) in checks {
        let t = Instant::now();
        let outcome = panic::catch_unwind(AssertUnwindSafe(|| check(&mut ctx)))
            .unwrap_or_else(|p| {
                let msg = p
                    .downcast_ref::<String>()
                    .cloned()
                    .or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string()))
                    .unwrap_or_default();
                Err(format!("panicked: {msg}"))
            });
        match outcome {
            Ok(detail) => println!("PASS criterion {name}: {detail} [{:.1?}]", t.elapsed()),
            Err(detail) => {
                failed += 1;
                println!("FAIL criterion {name}: {detail} [{:.1?}]", t.elapsed());
            }
        }
    }
    println!("acceptance: {} passed, {failed} failed", 8 - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
