//! Shared helpers: a brute-force gaze oracle written straight from the
//! feature definitions, plus random trial generation.

#![allow(dead_code)]

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use sarcaze::corpus::{Fixation, Label, Sentence, Trial};

pub fn sentence(id: u32, n: usize) -> Sentence {
    let text: Vec<String> = (1..=n).map(|i| format!("w{i}")).collect();
    Sentence::new(id, text.join(" "), Label::NonSarcastic).unwrap()
}

pub fn trial(id: u32, words: &[usize], durations: &[f64], xs: &[f64]) -> Trial {
    let fixations = words
        .iter()
        .zip(durations)
        .zip(xs)
        .map(|((&word_index, &duration), &x)| Fixation { word_index, duration, x })
        .collect();
    Trial::new(id, "P1", fixations).unwrap()
}

/// Random trial over an `n`-word sentence, `n ≤ max_words`, with at most
/// `max_fix` fixations. Durations are whole milliseconds.
pub fn random_trial(rng: &mut ChaCha8Rng, max_words: usize, max_fix: usize) -> (Sentence, Trial) {
    let n = rng.random_range(1..=max_words);
    let m = rng.random_range(1..=max_fix);
    let words: Vec<usize> = (0..m).map(|_| rng.random_range(1..=n)).collect();
    let durations: Vec<f64> = (0..m).map(|_| rng.random_range(50..=600) as f64).collect();
    let xs: Vec<f64> = words
        .iter()
        .map(|&w| (w * 90) as f64 + rng.random_range(0..40) as f64)
        .collect();
    (sentence(1, n), trial(1, &words, &durations, &xs))
}

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// The 18 reference features in the order FDUR FC SL REG SKIP RSF LREG, then
/// ED F1H F1S F2H F2S PSH PSS PSDH PSDS RSH RSS RSDH RSDS.
pub fn oracle_features(n: usize, t: &Trial) -> Vec<f64> {
    let w: Vec<usize> = t.fixations.iter().map(|f| f.word_index).collect();
    let d: Vec<f64> = t.fixations.iter().map(|f| f.duration).collect();
    let x: Vec<f64> = t.fixations.iter().map(|f| f.x).collect();
    let nf = n as f64;

    let mut total = 0.0;
    for v in &d {
        total += v;
    }

    let mut path = 0usize;
    let mut reg = 0usize;
    let mut rsf = 0usize;
    let mut widest = -1.0;
    let mut widest_from = 0usize;
    for i in 1..w.len() {
        let (a, b) = (w[i - 1], w[i]);
        if a == b {
            continue;
        }
        path += a.abs_diff(b);
        if b < a {
            reg += 1;
            if 2 * a > n && 2 * b <= n {
                rsf += 1;
            }
            let amp = (x[i] - x[i - 1]).abs();
            if amp > widest {
                widest = amp;
                widest_from = a;
            }
        }
    }
    let mut skipped = 0;
    for tok in 1..=n {
        if !w.contains(&tok) {
            skipped += 1;
        }
    }
    let lreg = if reg == 0 { 0.0 } else { widest_from as f64 / nf };

    // adjacency matrices indexed [from][to]
    let mut fwd = vec![vec![0usize; n + 1]; n + 1];
    let mut bwd = vec![vec![0usize; n + 1]; n + 1];
    let mut dur = vec![0.0; n + 1];
    let mut seen = vec![false; n + 1];
    for i in 0..w.len() {
        dur[w[i]] += d[i];
        seen[w[i]] = true;
    }
    for i in 1..w.len() {
        let (a, b) = (w[i - 1], w[i]);
        if a < b {
            fwd[a][b] += 1;
        } else if a > b {
            bwd[a][b] += 1;
        }
    }
    let vertices: Vec<usize> = (1..=n).filter(|&v| seen[v]).collect();
    let mut edges = 0;
    for a in 1..=n {
        for b in 1..=n {
            if fwd[a][b] + bwd[a][b] > 0 {
                edges += 1;
            }
        }
    }
    let ed = edges as f64 / vertices.len() as f64;

    let dist = |a: usize, b: usize| a.abs_diff(b) as f64;
    let schemes: [&dyn Fn(usize, usize) -> f64; 6] = [
        &|a, _| dur[a],
        &|_, b| dur[b],
        &|a, b| fwd[a][b] as f64,
        &|a, b| fwd[a][b] as f64 * dist(a, b),
        &|a, b| bwd[a][b] as f64,
        &|a, b| bwd[a][b] as f64 * dist(a, b),
    ];
    let mut out = vec![
        total / nf,
        w.len() as f64 / nf,
        path as f64 / nf,
        reg as f64,
        skipped as f64 / nf,
        rsf as f64,
        lreg,
        ed,
    ];
    for weight in schemes {
        let mut scores: Vec<f64> = vertices
            .iter()
            .map(|&a| {
                let mut s = 0.0;
                for b in 1..=n {
                    if fwd[a][b] + bwd[a][b] > 0 {
                        s += weight(a, b);
                    }
                }
                s
            })
            .collect();
        scores.sort_by(|p, q| q.partial_cmp(p).unwrap());
        out.push(scores[0]);
        out.push(if scores.len() > 1 { scores[1] } else { 0.0 });
    }
    out
}

/// The library's 20 gaze features in the oracle's order.
pub fn library_features(s: &Sentence, t: &Trial) -> Vec<f64> {
    let simple = sarcaze::gaze::simple_gaze_features(t, s).unwrap();
    let g = sarcaze::saliency::build_saliency_graph(t, s).unwrap();
    let complex = sarcaze::saliency::complex_gaze_features(&g).unwrap();
    simple.to_array().into_iter().chain(complex.to_array()).collect()
}
