use crate::alpha_beta::factor::AlphaBetaFactorization;
use crate::alpha_beta::graph::{candidate_graph, CandidateGraph};
use crate::error::{Budget, Result};
use crate::word_core::{Alphabet, Word};

/// An absent factor together with the chain of positions spelling its first
/// `k-1` letters, one leftmost occurrence per arch.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct AbsenceWitness {
    pub u: Word,
    pub chain: Vec<usize>,
}

/// Walks every chain of the graph in lexicographic order of the spelled word.
pub fn absence_witnesses(graph: &CandidateGraph, budget: Budget) -> Result<Vec<AbsenceWitness>> {
    budget.admit("absent factor enumeration", Some(graph.h_root()))?;
    let k = graph.k();
    let mut out = Vec::new();
    if k == 1 {
        for c in graph.missing_from_rest().iter() {
            out.push(AbsenceWitness { u: Word::from_ranks(vec![c]), chain: vec![] });
        }
        return Ok(out);
    }
    let mut chain = Vec::with_capacity(k - 1);
    let mut letters = Vec::with_capacity(k);
    for c in graph.m_root().iter() {
        let pos = graph.g(c, 1).expect("root letter occurs in the first arch");
        letters.push(c);
        chain.push(pos);
        walk(graph, &mut chain, &mut letters, &mut out);
        letters.pop();
        chain.pop();
    }
    Ok(out)
}

fn walk(g: &CandidateGraph, chain: &mut Vec<usize>, letters: &mut Vec<u8>, out: &mut Vec<AbsenceWitness>) {
    let pos = *chain.last().unwrap();
    let level = chain.len();
    let set = g.m_at(pos).expect("chain positions lie in β blocks");
    for c in set.iter() {
        letters.push(c);
        if level + 1 == g.k() {
            out.push(AbsenceWitness {
                u: Word::from_ranks(letters.clone()),
                chain: chain.clone(),
            });
        } else {
            chain.push(g.g(c, level + 1).expect("candidate occurs in the next arch"));
            walk(g, chain, letters, out);
            chain.pop();
        }
        letters.pop();
    }
}

/// All absent length-`k` factors of a `(k-1)`-universal word, with chains.
pub fn absent_factors_structured(
    alphabet: &Alphabet,
    w: &Word,
    k: usize,
    budget: Budget,
) -> Result<Vec<AbsenceWitness>> {
    absence_witnesses(&candidate_graph(alphabet, w, k)?, budget)
}

/// The number of absent length-`k` factors, read off the candidate graph.
pub fn deficiency_structured(alphabet: &Alphabet, w: &Word, k: usize) -> Result<u128> {
    Ok(candidate_graph(alphabet, w, k)?.h_root())
}

/// Direct block test: `u` is absent iff `u[1] ∈ alph(β_1) ∖ alph(α_1)`,
/// `u[i] ∈ alph(β_i)`, `u[i]u[i+1]` is not a scattered factor of `β_i α_{i+1}`
/// for every `i < k`, and `u[k] ∉ alph(r(w))`.
pub fn absent_by_blocks(f: &AlphaBetaFactorization, u: &Word) -> bool {
    block_criterion(f, u, true)
}

pub(crate) fn block_criterion(
    f: &AlphaBetaFactorization,
    u: &Word,
    check_first_pair: bool,
) -> bool {
    let k = f.k();
    if u.len() != k {
        return false;
    }
    let r = u.as_ranks();
    if f.alpha(k).alph().contains(r[k - 1]) {
        return false;
    }
    if k == 1 {
        return true;
    }
    if !f.beta(1).alph().difference(f.alpha(1).alph()).contains(r[0]) {
        return false;
    }
    for i in 1..k {
        if !f.beta(i).alph().contains(r[i - 1]) {
            return false;
        }
        if i == 1 && !check_first_pair {
            continue;
        }
        let window = f.beta(i).concat(f.alpha(i + 1));
        if has_pair(window.as_ranks(), r[i - 1], r[i]) {
            return false;
        }
    }
    true
}

fn has_pair(x: &[u8], first: u8, second: u8) -> bool {
    match x.iter().position(|&c| c == first) {
        Some(p) => x[p + 1..].contains(&second),
        None => false,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::alpha_beta::alpha_beta_factorize;
    use crate::word_core::absent_set;

    fn absent(spec: &str, w: &str, k: usize) -> Vec<String> {
        let a = Alphabet::new(spec).unwrap();
        absent_factors_structured(&a, &a.parse(w).unwrap(), k, Budget::DEFAULT)
            .unwrap()
            .into_iter()
            .map(|x| a.render(&x.u))
            .collect()
    }

    #[test]
    fn worked_example() {
        assert_eq!(absent("abc", "aabcbccab", 3), ["baa", "bac", "caa", "cac"]);
        let a = Alphabet::new("abc").unwrap();
        let ws = absent_factors_structured(&a, &a.parse("aabcbccab").unwrap(), 3, Budget::DEFAULT)
            .unwrap();
        let chains: Vec<Vec<usize>> = ws.iter().map(|x| x.chain.clone()).collect();
        assert_eq!(chains, [vec![3, 8], vec![3, 8], vec![4, 8], vec![4, 8]]);
    }

    #[test]
    fn seven_absent_factors() {
        let a = Alphabet::new("abc").unwrap();
        let w = a.parse("abcbcabb").unwrap();
        let brute: Vec<String> = absent_set(&a, &w, 3, Budget::DEFAULT)
            .unwrap()
            .iter()
            .map(|u| a.render(u))
            .collect();
        assert_eq!(brute.len(), 7);
        assert_eq!(absent("abc", "abcbcabb", 3), brute);
        assert_eq!(deficiency_structured(&a, &w, 3).unwrap(), 7);
    }

    #[test]
    fn binary_alternating() {
        assert_eq!(absent("ab", "ababa", 3), ["bbb"]);
        let a = Alphabet::new("ab").unwrap();
        assert_eq!(deficiency_structured(&a, &a.parse("ababa").unwrap(), 3).unwrap(), 1);
    }

    #[test]
    fn first_pair_condition_is_required() {
        let a = Alphabet::new("abc").unwrap();
        let w = a.parse("aabcbccab").unwrap();
        let f = alpha_beta_factorize(&a, &w, 3).unwrap();
        let bcc = a.parse("bcc").unwrap();
        assert!(!absent_by_blocks(&f, &bcc));
        assert!(block_criterion(&f, &bcc, false));
        for u in a.words_of_length(3) {
            let brute = !crate::word_core::is_scattered_factor(&a, &u, &w);
            assert_eq!(absent_by_blocks(&f, &u), brute, "{}", a.render(&u));
        }
    }

    #[test]
    fn budget_limits_enumeration() {
        let a = Alphabet::new("abc").unwrap();
        let w = a.parse("aabcbccab").unwrap();
        assert!(absent_factors_structured(&a, &w, 3, Budget(3)).is_err());
    }
}
