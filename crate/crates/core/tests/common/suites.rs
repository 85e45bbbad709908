//! Property suites shared by their own test targets and the acceptance
//! report. Each returns a one-line summary, or the first counterexample.

use std::collections::{BTreeMap, BTreeSet};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use statrs::distribution::{ChiSquared, ContinuousCDF};
use stelim::cycles::elementary_cycles;
use stelim::ordering::brute_force_optimal;
use stelim::sampler::samples;
use stelim::{
    run_heuristic, CanonicalString, Digraph, Efa, Heuristic, Letter, SampleSpec, Trim, Variant,
};

use super::{nfa_accepts, random_trim_nfa, regex_words, words};

pub type Verdict = Result<String, String>;

pub fn every_heuristic(seed: u64) -> Vec<Heuristic> {
    vec![
        Heuristic::Canonical,
        Heuristic::Random(seed),
        Heuristic::Dm,
        Heuristic::CycleStatic,
        Heuristic::CycleDynamic,
        Heuristic::BridgesLast,
        Heuristic::BruteForce,
    ]
}

/// Each heuristic under each variant yields an expression that agrees with
/// the automaton on every word of length at most 8.
pub fn language_preservation(count: usize) -> Verdict {
    let mut rng = ChaCha8Rng::seed_from_u64(31);
    let mut automata = Vec::new();
    while automata.len() < count {
        let n = 1 + automata.len() % 6;
        automata.extend(random_trim_nfa(&mut rng, n, 2, 0.3));
    }
    let words = words(2, 8);
    let mut conversions = 0;
    for (i, nfa) in automata.iter().enumerate() {
        let expected: BTreeSet<Vec<Letter>> = words
            .iter()
            .filter(|w| nfa_accepts(nfa, w))
            .cloned()
            .collect();
        for h in every_heuristic(i as u64) {
            for variant in Variant::ALL {
                let out = run_heuristic(nfa, &h, variant).map_err(|e| e.to_string())?;
                if regex_words(&out.regex, 2, 8) != expected {
                    return Err(format!(
                        "{h} {variant} on {nfa:?} gives {}",
                        out.regex.to_text(2)
                    ));
                }
                conversions += 1;
            }
        }
    }
    Ok(format!("{count} automata, {conversions} conversions"))
}

/// No heuristic result is smaller than the exhaustive optimum.
pub fn heuristic_lower_bound(count: usize) -> Verdict {
    let spec = SampleSpec::new(5, 2, count, 77).unwrap();
    let mut compared = 0;
    for s in samples(&spec).unwrap() {
        let Trim::Trimmed { nfa, .. } = s.dfa().trim() else {
            continue;
        };
        let efa = Efa::from_nfa(&nfa);
        for variant in Variant::ALL {
            let best = brute_force_optimal(&efa, variant, 8)
                .map_err(|e| e.to_string())?
                .best_size;
            for h in every_heuristic(s.index as u64) {
                let size = run_heuristic(&nfa, &h, variant)
                    .map_err(|e| e.to_string())?
                    .size;
                if size < best || (h == Heuristic::BruteForce && size != best) {
                    return Err(format!(
                        "{h} {variant} on {}: {size} vs optimum {best}",
                        s.canonical
                    ));
                }
                compared += 1;
            }
        }
    }
    Ok(format!("{count} samples, {compared} comparisons"))
}

/// Every cycle found by trying each vertex subset in each cyclic order
/// that starts at its smallest vertex.
pub fn brute_force_cycles(g: &Digraph) -> BTreeSet<Vec<usize>> {
    let n = g.vertex_count();
    let mut found = BTreeSet::new();
    for mask in 1u32..(1 << n) {
        let vs: Vec<usize> = (0..n).filter(|&v| mask >> v & 1 == 1).collect();
        let mut rest = vs[1..].to_vec();
        permutations(&mut rest, 0, &mut |order| {
            let cycle: Vec<usize> = std::iter::once(vs[0])
                .chain(order.iter().copied())
                .collect();
            if (0..cycle.len()).all(|i| g.has_arc(cycle[i], cycle[(i + 1) % cycle.len()])) {
                found.insert(cycle);
            }
        });
    }
    found
}

fn permutations(items: &mut Vec<usize>, from: usize, visit: &mut dyn FnMut(&[usize])) {
    if from == items.len() {
        visit(items);
        return;
    }
    for i in from..items.len() {
        items.swap(from, i);
        permutations(items, from + 1, visit);
        items.swap(from, i);
    }
}

/// Cycle enumeration agrees with exhaustive search, cycle by cycle.
pub fn cycle_oracle(rounds: usize) -> Verdict {
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    let mut total = 0;
    for round in 0..rounds {
        let n = 1 + round % 7;
        let p = rng.gen_range(0.15..0.6);
        let mut g = Digraph::new(n);
        for u in 0..n {
            for v in 0..n {
                if rng.gen_bool(p) {
                    g.add_arc(u, v);
                }
            }
        }
        let expected = brute_force_cycles(&g);
        let set = elementary_cycles(&g).map_err(|e| e.to_string())?;
        let got: BTreeSet<Vec<usize>> = set.cycles.iter().cloned().collect();
        let counts: Vec<u64> = (0..n)
            .map(|v| expected.iter().filter(|c| c.contains(&v)).count() as u64)
            .collect();
        if got.len() != set.cycles.len() || got != expected || set.per_state_count != counts {
            return Err(format!(
                "digraph {round} ({n} vertices): {got:?} vs {expected:?}"
            ));
        }
        total += expected.len();
    }
    Ok(format!("{rounds} digraphs, {total} cycles"))
}

/// Canonical digit strings of all ICDFAs with `n` states over `k` letters,
/// from every transition table with initial state 0.
pub fn enumerate_canonical(n: usize, k: usize) -> BTreeSet<Vec<usize>> {
    let cells = n * k;
    let mut out = BTreeSet::new();
    for code in 0..n.pow(cells as u32) {
        let table: Vec<usize> = (0..cells).map(|i| code / n.pow(i as u32) % n).collect();
        let mut label = vec![None; n];
        label[0] = Some(0);
        let mut order = vec![0];
        let mut i = 0;
        while i < order.len() {
            for a in 0..k {
                let t = table[order[i] * k + a];
                if label[t].is_none() {
                    label[t] = Some(order.len());
                    order.push(t);
                }
            }
            i += 1;
        }
        if order.len() == n {
            out.insert(
                order
                    .iter()
                    .flat_map(|&q| (0..k).map(move |a| (q, a)))
                    .map(|(q, a)| label[table[q * k + a]].unwrap())
                    .collect(),
            );
        }
    }
    out
}

/// χ² goodness of fit of sampled (automaton, final set) pairs at n=3, k=2
/// against the uniform distribution, at significance 0.01.
pub fn sampler_uniformity(draws: usize) -> Verdict {
    let (n, k) = (3, 2);
    let automata = enumerate_canonical(n, k);
    let final_sets = (1 << n) - 1;
    let spec = SampleSpec::new(n, k, draws, 99).unwrap();
    let mut counts: BTreeMap<(Vec<usize>, Vec<usize>), u64> = BTreeMap::new();
    for s in samples(&spec).unwrap() {
        let key = (
            s.canonical.digits().to_vec(),
            s.canonical.finals().iter().copied().collect(),
        );
        *counts.entry(key).or_default() += 1;
    }
    let cells = automata.len() * final_sets;
    if counts.len() != cells || !counts.keys().all(|(d, _)| automata.contains(d)) {
        return Err(format!("{} cells observed, {cells} expected", counts.len()));
    }
    let expected = draws as f64 / cells as f64;
    let chi2: f64 = counts
        .values()
        .map(|&c| (c as f64 - expected).powi(2) / expected)
        .sum();
    let critical = ChiSquared::new((cells - 1) as f64)
        .unwrap()
        .inverse_cdf(0.99);
    let summary = format!("chi2 {chi2:.1}, critical {critical:.1}, {cells} cells, {draws} draws");
    if chi2 < critical {
        Ok(summary)
    } else {
        Err(summary)
    }
}

/// Text and automaton round trips of sampled automata for every
/// (n, k) in {10, 20} × {2, 3, 5, 10}.
pub fn codec_round_trip(per_cell: usize) -> Verdict {
    let mut total = 0;
    for n in [10, 20] {
        for k in [2, 3, 5, 10] {
            let spec = SampleSpec::new(n, k, per_cell, 2024).unwrap();
            for s in samples(&spec).unwrap() {
                let line = s.canonical.to_string();
                let parsed = line.parse::<CanonicalString>().map_err(|e| e.to_string())?;
                let (again, _) = CanonicalString::from_dfa(&s.dfa()).map_err(|e| e.to_string())?;
                if parsed != s.canonical || again != s.canonical {
                    return Err(format!("round trip of `{line}`"));
                }
                total += 1;
            }
        }
    }
    Ok(format!("{total} automata"))
}
