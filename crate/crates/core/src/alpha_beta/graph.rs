use crate::alpha_beta::factor::{alpha_beta_factorize, AlphaBetaFactorization};
use crate::error::{Error, Result};
use crate::word_core::{Alphabet, LetterSet, Word};

/// Candidate sets and counts over the α-β factorization of a `(k-1)`-universal word.
///
/// Positions are 1-based. A chain of leftmost occurrences, one per arch, spells
/// the first `k-1` letters of an absent factor; `M` at a chain position lists the
/// letters allowed next, and `h` counts the absent factors running through it.
#[derive(Debug, Clone)]
pub struct CandidateGraph {
    k: usize,
    sigma: usize,
    word: Word,
    factorization: AlphaBetaFactorization,
    level: Vec<usize>,
    leftmost: Vec<Option<usize>>,
    m_root: LetterSet,
    m: Vec<Option<LetterSet>>,
    h: Vec<Option<u128>>,
    h_root: u128,
    missing: LetterSet,
}

impl CandidateGraph {
    pub fn k(&self) -> usize {
        self.k
    }

    pub fn factorization(&self) -> &AlphaBetaFactorization {
        &self.factorization
    }

    /// Arch level of a position (`k` for positions in the rest).
    pub fn f(&self, pos: usize) -> usize {
        self.level[pos - 1]
    }

    /// Leftmost position of `letter` inside arch `level`.
    pub fn g(&self, letter: u8, level: usize) -> Option<usize> {
        if level == 0 || level >= self.k {
            return None;
        }
        self.leftmost[(level - 1) * self.sigma + letter as usize]
    }

    /// Letters allowed first: `alph(β_1) ∖ alph(α_1)`. For `k = 1` this is the
    /// set of letters missing from the word.
    pub fn m_root(&self) -> LetterSet {
        self.m_root
    }

    /// Letters allowed after the letter at a β position.
    pub fn m_at(&self, pos: usize) -> Option<LetterSet> {
        self.m.get(pos.checked_sub(1)?).copied().flatten()
    }

    /// `Σ ∖ alph(r(w))`, the letters an absent factor may end with.
    pub fn missing_from_rest(&self) -> LetterSet {
        self.missing
    }

    pub fn m_prime_root(&self) -> Vec<usize> {
        if self.k == 1 {
            return vec![];
        }
        self.m_root.iter().filter_map(|c| self.g(c, 1)).collect()
    }

    /// Successor positions of a β position below the last arch.
    pub fn m_prime(&self, pos: usize) -> Option<Vec<usize>> {
        let set = self.m_at(pos)?;
        let lvl = self.f(pos);
        if lvl + 1 >= self.k {
            return None;
        }
        Some(set.iter().filter_map(|c| self.g(c, lvl + 1)).collect())
    }

    /// Number of absent factors whose chain passes through `pos`.
    pub fn h(&self, pos: usize) -> Option<u128> {
        self.h.get(pos.checked_sub(1)?).copied().flatten()
    }

    /// Total number of absent length-`k` factors.
    pub fn h_root(&self) -> u128 {
        self.h_root
    }

    /// The chain spelling `u[1..k-1]`, if `u` is absent.
    pub fn chain_for(&self, u: &Word) -> Option<Vec<usize>> {
        if u.len() != self.k {
            return None;
        }
        let r = u.as_ranks();
        if self.k == 1 {
            return self.missing.contains(r[0]).then(Vec::new);
        }
        if !self.m_root.contains(r[0]) {
            return None;
        }
        let mut pos = self.g(r[0], 1)?;
        let mut chain = vec![pos];
        for i in 1..self.k {
            if !self.m_at(pos)?.contains(r[i]) {
                return None;
            }
            if i + 1 < self.k {
                pos = self.g(r[i], i + 1)?;
                chain.push(pos);
            }
        }
        Some(chain)
    }

    pub fn word(&self) -> &Word {
        &self.word
    }
}

pub fn candidate_graph(alphabet: &Alphabet, w: &Word, k: usize) -> Result<CandidateGraph> {
    let factorization = alpha_beta_factorize(alphabet, w, k)?;
    let sigma = alphabet.sigma();
    let n = w.len();
    let full = alphabet.full();
    let missing = full.difference(factorization.alpha(k).alph());
    if missing.is_empty() {
        return Err(Error::Contract("rest contains every letter".into()));
    }
    let ends = &factorization.arch_ends;
    let starts = &factorization.beta_starts;

    let mut level = vec![k; n];
    let mut leftmost = vec![None; (k - 1) * sigma];
    let mut arch_start = 1;
    for (i, &e) in ends.iter().enumerate() {
        for pos in arch_start..=e {
            level[pos - 1] = i + 1;
            let slot = &mut leftmost[i * sigma + w.at(pos) as usize];
            if slot.is_none() {
                *slot = Some(pos);
            }
        }
        arch_start = e + 1;
    }

    if k == 1 {
        return Ok(CandidateGraph {
            k,
            sigma,
            word: w.clone(),
            factorization,
            level,
            leftmost,
            m_root: missing,
            m: vec![None; n],
            h: vec![None; n],
            h_root: missing.len() as u128,
            missing,
        });
    }

    let beta_alph = |i: usize| {
        if i == k {
            missing
        } else {
            factorization.beta(i).alph()
        }
    };
    let mut m = vec![None; n];
    for i in 1..k {
        let beta = factorization.beta(i);
        let tail = factorization.alpha(i + 1).alph();
        let next_beta = beta_alph(i + 1);
        let b = beta.as_ranks();
        // after[t] = alph(β_i[t+1..]) ∪ alph(α_{i+1}), 0-based t
        let mut after = vec![tail; b.len() + 1];
        for t in (0..b.len()).rev() {
            let mut s = after[t + 1];
            s.insert(b[t]);
            after[t] = s;
        }
        let mut prefix = LetterSet::EMPTY;
        for (offset, &c) in b.iter().enumerate() {
            prefix.insert(c);
            let set = next_beta.difference(after[offset + 1]).intersection(prefix);
            m[starts[i - 1] + offset - 1] = Some(set);
        }
    }
    let m_root = factorization.beta(1).alph().difference(factorization.alpha(1).alph());

    let mut h: Vec<Option<u128>> = vec![None; n];
    for i in (1..k).rev() {
        for pos in starts[i - 1]..=ends[i - 1] {
            let set = m[pos - 1].expect("β position has a candidate set");
            let value = if i == k - 1 {
                set.len() as u128
            } else {
                let mut total = 0u128;
                for c in set.iter() {
                    let target = leftmost[i * sigma + c as usize]
                        .expect("candidate letter occurs in the next arch");
                    let sub = h[target - 1].expect("successor lies in the next β block");
                    total = total
                        .checked_add(sub)
                        .ok_or(Error::Overflow("summing candidate counts"))?;
                }
                total
            };
            h[pos - 1] = Some(value);
        }
    }
    let mut h_root = 0u128;
    for c in m_root.iter() {
        let target = leftmost[c as usize].expect("root letter occurs in the first arch");
        h_root = h_root
            .checked_add(h[target - 1].expect("root successor lies in β_1"))
            .ok_or(Error::Overflow("summing candidate counts"))?;
    }

    Ok(CandidateGraph {
        k,
        sigma,
        word: w.clone(),
        factorization,
        level,
        leftmost,
        m_root,
        m,
        h,
        h_root,
        missing,
    })
}
