use std::collections::HashSet;
use std::fs::File;
use std::io::{self, Write};
use std::path::Path;
use std::thread;
use std::time::Instant;

use serde::{Deserialize, Serialize};

use crate::error::{checked_pow, Budget, Result};
use crate::oracle_lab::enumerate::word_space;
use crate::word_core::{
    absent_set, count_distinct_subsequences, scatfact_set, Alphabet, CongruenceMode, Word,
};

/// How members are recognized and signatures computed. The two strategies share
/// no code beyond the next-occurrence table, so a census run under each is a
/// self-check of the oracle.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum CensusStrategy {
    /// Distinct-subsequence DP for membership, odometer probing for the absent set.
    #[default]
    CountingDp,
    /// Full scattered-factor enumeration for both.
    FactorSet,
}

pub const STABILIZATION_RULE: &str =
    "heuristic: no new class appeared at the last two lengths; not a completeness proof";

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CensusParams {
    pub alphabet: String,
    pub sigma: usize,
    pub k: usize,
    pub m: u128,
    pub max_len: usize,
    pub mode: CongruenceMode,
    pub strategy: CensusStrategy,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FormulaComparison {
    pub claim: String,
    pub formula: String,
    pub claimed: u128,
    pub observed: u128,
    #[serde(rename = "match")]
    pub matches: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CensusReport {
    pub params: CensusParams,
    pub class_count: usize,
    pub member_count: u64,
    pub stabilized: bool,
    pub stabilization_rule: String,
    /// Number of classes whose shortest member has length `n`, indexed by `n`.
    pub new_classes_by_length: Vec<usize>,
    /// The shortest-lex member of each class, in order of discovery.
    pub representatives: Vec<String>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub formula_comparison: Option<FormulaComparison>,
    pub runtime_ms: u64,
}

impl CensusReport {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    /// JSON without the wall-clock field; equal parameters give equal bytes.
    pub fn canonical_json(&self) -> String {
        let mut copy = self.clone();
        copy.runtime_ms = 0;
        copy.to_json()
    }

    pub fn write_json(&self, path: &Path) -> io::Result<()> {
        let mut f = File::create(path)?;
        f.write_all(self.to_json().as_bytes())?;
        f.write_all(b"\n")
    }
}

#[derive(Debug, Serialize)]
struct CsvRow<'a> {
    alphabet: &'a str,
    sigma: usize,
    k: usize,
    m: u128,
    max_len: usize,
    mode: CongruenceMode,
    strategy: CensusStrategy,
    class_count: usize,
    member_count: u64,
    stabilized: bool,
    claim: Option<&'a str>,
    claimed: Option<u128>,
    observed: Option<u128>,
    #[serde(rename = "match")]
    matches: Option<bool>,
    runtime_ms: u64,
    representatives: String,
}

/// One row per report; representatives are space separated (`ε` for the empty word).
pub fn write_reports_csv(reports: &[CensusReport], path: &Path) -> io::Result<()> {
    let mut out = csv::Writer::from_path(path)?;
    for r in reports {
        let fc = r.formula_comparison.as_ref();
        out.serialize(CsvRow {
            alphabet: &r.params.alphabet,
            sigma: r.params.sigma,
            k: r.params.k,
            m: r.params.m,
            max_len: r.params.max_len,
            mode: r.params.mode,
            strategy: r.params.strategy,
            class_count: r.class_count,
            member_count: r.member_count,
            stabilized: r.stabilized,
            claim: fc.map(|c| c.claim.as_str()),
            claimed: fc.map(|c| c.claimed),
            observed: fc.map(|c| c.observed),
            matches: fc.map(|c| c.matches),
            runtime_ms: r.runtime_ms,
            representatives: r
                .representatives
                .iter()
                .map(|s| if s.is_empty() { "ε" } else { s.as_str() })
                .collect::<Vec<_>>()
                .join(" "),
        })
        .map_err(io::Error::other)?;
    }
    out.flush()
}

fn binom2(n: u128) -> u128 {
    n * n.saturating_sub(1) / 2
}

/// The closed-form class count that applies to `(σ, m, k)`, if any.
pub fn claimed_class_count(sigma: usize, m: u128, k: usize) -> Option<(&'static str, &'static str, u128)> {
    let total = checked_pow(sigma, k)?;
    let s = sigma as u128;
    if k == 0 {
        return None;
    }
    if m == 1 {
        Some(("nearly-class-count", "sigma^k", total))
    } else if m == total {
        Some(("short-words-single-class", "1", 1))
    } else if m + 1 == total {
        Some(("single-present-class-count", "sigma^k", total))
    } else if m + 2 == total && sigma >= 2 {
        Some((
            "two-present-class-count",
            "2*binom(sigma,2)*(k+2)",
            2 * binom2(s) * (k as u128 + 2),
        ))
    } else {
        None
    }
}

type Member = (Word, Vec<u8>);

// σ^k is admitted once per census; per-word calls skip the check.
const UNBOUNDED: Budget = Budget(u64::MAX);
const UNBOUNDED_MSG: &str = "unbounded budget";

fn level_range(mode: CongruenceMode, k: usize) -> std::ops::RangeInclusive<usize> {
    match mode {
        CongruenceMode::ExactK => k..=k,
        CongruenceMode::UpToK => 1..=k,
    }
}

/// Canonical bytes of the absent sets at the compared levels: each level's sorted
/// absent factors concatenated, levels separated by `0xff`.
fn signature(
    alphabet: &Alphabet,
    w: &Word,
    k: usize,
    m: u128,
    mode: CongruenceMode,
    strategy: CensusStrategy,
) -> Option<Vec<u8>> {
    let sigma = alphabet.sigma();
    let total = checked_pow(sigma, k)?;
    let absent_at = |j: usize| -> Vec<Word> {
        match strategy {
            CensusStrategy::CountingDp => absent_set(alphabet, w, j, UNBOUNDED).expect(UNBOUNDED_MSG),
            CensusStrategy::FactorSet => {
                let present: HashSet<Word> = scatfact_set(alphabet, w, j, UNBOUNDED)
                    .expect(UNBOUNDED_MSG)
                    .into_iter()
                    .collect();
                alphabet.words_of_length(j).filter(|u| !present.contains(u)).collect()
            }
        }
    };
    let member = match strategy {
        CensusStrategy::CountingDp => {
            total - count_distinct_subsequences(alphabet, w, k).ok()? == m
        }
        CensusStrategy::FactorSet => {
            total - scatfact_set(alphabet, w, k, UNBOUNDED).expect(UNBOUNDED_MSG).len() as u128 == m
        }
    };
    if !member {
        return None;
    }
    let mut sig = Vec::new();
    for (idx, j) in level_range(mode, k).enumerate() {
        if idx > 0 {
            sig.push(0xff);
        }
        for u in absent_at(j) {
            sig.extend_from_slice(u.as_ranks());
        }
    }
    Some(sig)
}

/// Members of length `n`, in lex order, sharded by first letter.
fn members_of_length(
    alphabet: &Alphabet,
    n: usize,
    k: usize,
    m: u128,
    mode: CongruenceMode,
    strategy: CensusStrategy,
) -> Vec<Member> {
    let test = |w: Word| signature(alphabet, &w, k, m, mode, strategy).map(|s| (w, s));
    if n == 0 {
        return test(Word::empty()).into_iter().collect();
    }
    let sigma = alphabet.sigma() as u8;
    thread::scope(|scope| {
        let shards: Vec<_> = (0..sigma)
            .map(|first| {
                scope.spawn(move || {
                    alphabet
                        .words_of_length(n - 1)
                        .filter_map(|tail| {
                            let mut ranks = Vec::with_capacity(n);
                            ranks.push(first);
                            ranks.extend_from_slice(tail.as_ranks());
                            test(Word::from_ranks(ranks))
                        })
                        .collect::<Vec<_>>()
                })
            })
            .collect();
        shards
            .into_iter()
            .flat_map(|h| h.join().expect("census shard panicked"))
            .collect()
    })
}

pub fn census(
    alphabet: &Alphabet,
    m: u128,
    k: usize,
    max_len: usize,
    mode: CongruenceMode,
    budget: Budget,
) -> Result<CensusReport> {
    census_with(alphabet, m, k, max_len, mode, CensusStrategy::default(), budget)
}

/// Groups every member of `NUniv_{Σ,m,k}` up to length `max_len` by congruence
/// signature.
pub fn census_with(
    alphabet: &Alphabet,
    m: u128,
    k: usize,
    max_len: usize,
    mode: CongruenceMode,
    strategy: CensusStrategy,
    budget: Budget,
) -> Result<CensusReport> {
    let started = Instant::now();
    budget.admit("word space", word_space(alphabet.sigma(), max_len))?;
    budget.admit("length-k factor space", checked_pow(alphabet.sigma(), k))?;

    let mut seen: HashSet<Vec<u8>> = HashSet::new();
    let mut representatives = Vec::new();
    let mut new_classes_by_length = Vec::with_capacity(max_len + 1);
    let mut member_count = 0u64;
    for n in 0..=max_len {
        let mut fresh = 0;
        for (w, sig) in members_of_length(alphabet, n, k, m, mode, strategy) {
            member_count += 1;
            if seen.insert(sig) {
                fresh += 1;
                representatives.push(alphabet.render(&w));
            }
        }
        new_classes_by_length.push(fresh);
    }
    let stabilized = max_len >= 2 && new_classes_by_length[max_len - 1..].iter().all(|&c| c == 0);
    let class_count = seen.len();
    let formula_comparison =
        claimed_class_count(alphabet.sigma(), m, k).map(|(claim, formula, claimed)| {
            FormulaComparison {
                claim: claim.to_string(),
                formula: formula.to_string(),
                claimed,
                observed: class_count as u128,
                matches: claimed == class_count as u128,
            }
        });
    Ok(CensusReport {
        params: CensusParams {
            alphabet: alphabet.spec(),
            sigma: alphabet.sigma(),
            k,
            m,
            max_len,
            mode,
            strategy,
        },
        class_count,
        member_count,
        stabilized,
        stabilization_rule: STABILIZATION_RULE.to_string(),
        new_classes_by_length,
        representatives,
        formula_comparison,
        runtime_ms: started.elapsed().as_millis() as u64,
    })
}
