use crate::error::{Error, Result};
use crate::word_core::{arch_ends_of, reverse_arch_starts_of, Alphabet, Word};

/// The interleaving `w = α_1 β_1 ⋯ α_{k-1} β_{k-1} α_k` of a `(k-1)`-universal word,
/// with `ar_i(w) = α_i β_i` and the reversed arches covering `β_i α_{i+1}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AlphaBetaFactorization {
    pub alphas: Vec<Word>,
    pub betas: Vec<Word>,
    /// 1-based end of each forward arch (`E_i`).
    pub arch_ends: Vec<usize>,
    /// 1-based start of each `β_i` (`S_i`), which is also where the reversed arch
    /// covering `β_i α_{i+1}` begins.
    pub beta_starts: Vec<usize>,
    pub len: usize,
}

impl AlphaBetaFactorization {
    pub fn k(&self) -> usize {
        self.alphas.len()
    }

    /// `α_i`, 1-based.
    pub fn alpha(&self, i: usize) -> &Word {
        &self.alphas[i - 1]
    }

    /// `β_i`, 1-based.
    pub fn beta(&self, i: usize) -> &Word {
        &self.betas[i - 1]
    }

    /// Inclusive 1-based spans of `α_1, β_1, …, α_k` in order. Empty blocks have
    /// `start = end + 1`.
    pub fn boundaries(&self) -> Vec<(usize, usize)> {
        let k = self.k();
        let mut out = Vec::with_capacity(2 * k - 1);
        let mut prev_end = 0;
        for i in 0..k - 1 {
            out.push((prev_end + 1, self.beta_starts[i] - 1));
            out.push((self.beta_starts[i], self.arch_ends[i]));
            prev_end = self.arch_ends[i];
        }
        out.push((prev_end + 1, self.len));
        out
    }

    /// Concatenation of the blocks, which must give back the word.
    pub fn reassemble(&self) -> Word {
        let mut w = Word::empty();
        for (i, a) in self.alphas.iter().enumerate() {
            w.extend_from(a);
            if let Some(b) = self.betas.get(i) {
                w.extend_from(b);
            }
        }
        w
    }
}

pub fn alpha_beta_factorize(
    alphabet: &Alphabet,
    w: &Word,
    k: usize,
) -> Result<AlphaBetaFactorization> {
    if k == 0 {
        return Err(Error::Contract("k must be at least 1".into()));
    }
    let sigma = alphabet.sigma();
    let ranks = w.as_ranks();
    let arch_ends = arch_ends_of(ranks, sigma);
    if arch_ends.len() != k - 1 {
        return Err(Error::Contract(format!(
            "{} has universality index {}, expected {}",
            alphabet.render(w),
            arch_ends.len(),
            k - 1
        )));
    }
    let rev_starts = reverse_arch_starts_of(ranks, sigma);
    debug_assert_eq!(rev_starts.len(), k - 1);
    // the j-th reversed arch from the right covers β_{k-j} α_{k-j+1}
    let beta_starts: Vec<usize> = (1..k).map(|i| rev_starts[k - 1 - i]).collect();
    let mut alphas = Vec::with_capacity(k);
    let mut betas = Vec::with_capacity(k - 1);
    let mut prev_end = 0;
    for i in 0..k - 1 {
        let (s, e) = (beta_starts[i], arch_ends[i]);
        if !(prev_end < s && s <= e) {
            return Err(Error::Contract(format!(
                "reversed arch boundary {s} does not fall inside arch {} of {}",
                i + 1,
                alphabet.render(w)
            )));
        }
        alphas.push(w.factor(prev_end + 1..=s - 1));
        betas.push(w.factor(s..=e));
        prev_end = e;
    }
    alphas.push(w.factor(prev_end + 1..=w.len()));
    Ok(AlphaBetaFactorization {
        alphas,
        betas,
        arch_ends,
        beta_starts,
        len: w.len(),
    })
}
