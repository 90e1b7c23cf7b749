use std::collections::BTreeSet;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::{Error, Result};

/// Fitted LDA state.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TopicModel {
    pub k: usize,
    pub alpha: f64,
    pub beta: f64,
    /// Sorted stems; column order of `phi`.
    pub vocabulary: Vec<String>,
    /// `k x V` topic-word distributions.
    pub phi: Vec<Vec<f64>>,
    /// Per-document topic distributions.
    pub theta: Vec<Vec<f64>>,
    pub seed: u64,
    pub iterations: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct LdaParams {
    pub k: usize,
    pub alpha: f64,
    pub beta: f64,
    pub iterations: usize,
    pub seed: u64,
}

impl LdaParams {
    /// `alpha = 50 / k`, `beta = 0.01`, 500 sweeps.
    pub fn with_defaults(k: usize, seed: u64) -> Self {
        LdaParams {
            k,
            alpha: 50.0 / k.max(1) as f64,
            beta: 0.01,
            iterations: 500,
            seed,
        }
    }
}

fn normalized(row: Vec<f64>) -> Vec<f64> {
    let total: f64 = row.iter().sum();
    row.into_iter().map(|v| v / total).collect()
}

/// Fits LDA by collapsed Gibbs sampling.
///
/// Each of `documents` is a bag of stems. Topic assignments start uniformly
/// at random and are resampled `iterations` times from
/// `(n_dk + alpha) (n_kw + beta) / (n_k + V beta)`. The random stream is
/// ChaCha8 seeded with `seed`, so the output is identical across runs and
/// platforms for equal inputs.
pub fn lda_fit(documents: &[Vec<String>], params: LdaParams) -> Result<TopicModel> {
    let LdaParams {
        k,
        alpha,
        beta,
        iterations,
        seed,
    } = params;
    if k == 0 {
        return Err(Error::Topic("topic count must be at least 1".into()));
    }
    if iterations == 0 {
        return Err(Error::Topic("iterations must be at least 1".into()));
    }
    if !(alpha > 0.0 && alpha.is_finite() && beta > 0.0 && beta.is_finite()) {
        return Err(Error::Topic(format!("alpha and beta must be positive, got {alpha} and {beta}")));
    }

    let vocabulary: Vec<String> = documents.iter().flatten().cloned().collect::<BTreeSet<_>>().into_iter().collect();
    if vocabulary.is_empty() {
        return Err(Error::Topic("empty vocabulary".into()));
    }
    let v = vocabulary.len();
    let docs: Vec<Vec<usize>> = documents
        .iter()
        .map(|d| d.iter().map(|w| vocabulary.binary_search(w).expect("word in vocabulary")).collect())
        .collect();

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut doc_topic = vec![vec![0u32; k]; docs.len()];
    let mut topic_word = vec![vec![0u32; v]; k];
    let mut topic_total = vec![0u32; k];
    let mut assignments: Vec<Vec<usize>> = Vec::with_capacity(docs.len());
    for (d, words) in docs.iter().enumerate() {
        let z: Vec<usize> = words.iter().map(|_| rng.gen_range(0..k as u32) as usize).collect();
        for (&w, &t) in words.iter().zip(&z) {
            doc_topic[d][t] += 1;
            topic_word[t][w] += 1;
            topic_total[t] += 1;
        }
        assignments.push(z);
    }

    let v_beta = v as f64 * beta;
    let mut weights = vec![0.0; k];
    for _ in 0..iterations {
        for (d, words) in docs.iter().enumerate() {
            for (i, &w) in words.iter().enumerate() {
                let old = assignments[d][i];
                doc_topic[d][old] -= 1;
                topic_word[old][w] -= 1;
                topic_total[old] -= 1;

                let mut total = 0.0;
                for t in 0..k {
                    total += (doc_topic[d][t] as f64 + alpha) * (topic_word[t][w] as f64 + beta)
                        / (topic_total[t] as f64 + v_beta);
                    weights[t] = total;
                }
                let u = rng.gen::<f64>() * total;
                let new = weights.iter().position(|&c| u < c).unwrap_or(k - 1);

                assignments[d][i] = new;
                doc_topic[d][new] += 1;
                topic_word[new][w] += 1;
                topic_total[new] += 1;
            }
        }
    }

    let phi = topic_word
        .iter()
        .zip(&topic_total)
        .map(|(row, &n)| normalized(row.iter().map(|&c| (c as f64 + beta) / (n as f64 + v_beta)).collect()))
        .collect();
    let k_alpha = k as f64 * alpha;
    let theta = doc_topic
        .iter()
        .zip(&docs)
        .map(|(row, words)| normalized(row.iter().map(|&c| (c as f64 + alpha) / (words.len() as f64 + k_alpha)).collect()))
        .collect();

    Ok(TopicModel {
        k,
        alpha,
        beta,
        vocabulary,
        phi,
        theta,
        seed,
        iterations,
    })
}

/// The `n` most probable stems of a topic with their probabilities, ties
/// broken alphabetically. Returns the whole vocabulary when `n` exceeds it.
pub fn top_keywords(model: &TopicModel, topic_id: usize, n: usize) -> Result<Vec<(String, f64)>> {
    let row = model
        .phi
        .get(topic_id)
        .ok_or_else(|| Error::Topic(format!("topic {topic_id} out of range (k = {})", model.k)))?;
    let mut ranked: Vec<(usize, f64)> = row.iter().copied().enumerate().collect();
    ranked.sort_by(|a, b| b.1.total_cmp(&a.1).then_with(|| model.vocabulary[a.0].cmp(&model.vocabulary[b.0])));
    Ok(ranked
        .into_iter()
        .take(n)
        .map(|(i, p)| (model.vocabulary[i].clone(), p))
        .collect())
}
