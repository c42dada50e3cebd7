use std::collections::{BTreeMap, BTreeSet, HashMap};

use serde::{Deserialize, Serialize};

use crate::alpha_beta::{
    absent_factors_structured, alpha_beta_factorize, candidate_graph, congruent_structured,
    predicate_c,
};
use crate::error::{checked_pow, Budget, Result};
use crate::extremes::{classify_extreme, m2_property_check, ExtremeTag};
use crate::nearly::{
    all_splits, check_nearly, class_membership, construct_w_u, in_pump_set, MembershipMethod,
};
use crate::oracle_lab::census::{census_with, CensusStrategy, FormulaComparison};
use crate::oracle_lab::enumerate::all_words;
use crate::word_core::{
    absent_set, arch_factorize, count_distinct_subsequences, deficiency, is_perfectly_universal,
    scatfact_set, universality_index, Alphabet, CongruenceMode, NextOccurrenceTable,
    Word,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ClaimStatus {
    Pass,
    Fail,
    /// A closed form was compared against the oracle; the comparison is data.
    Compare,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClaimReport {
    pub id: String,
    pub statement: String,
    pub scope: String,
    pub status: ClaimStatus,
    pub checked: u64,
    pub violations: u64,
    /// At most a handful of failing instances.
    pub witnesses: Vec<String>,
    #[serde(skip_serializing_if = "Vec::is_empty", default)]
    pub comparisons: Vec<FormulaComparison>,
}

/// How much of the word space each claim sweeps.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Scale {
    /// Seconds; for smoke runs and the CLI default.
    #[default]
    Quick,
    /// Binary words up to length 14 and ternary words up to length 9.
    Full,
}

impl Scale {
    fn main_range(self) -> [(&'static str, usize); 2] {
        match self {
            Scale::Quick => [("ab", 10), ("abc", 6)],
            Scale::Full => [("ab", 14), ("abc", 9)],
        }
    }

    fn pick(self, quick: usize, full: usize) -> usize {
        match self {
            Scale::Quick => quick,
            Scale::Full => full,
        }
    }
}

const LEVELS: [usize; 3] = [2, 3, 4];
const MAX_WITNESSES: usize = 5;

struct Ctx {
    scale: Scale,
    budget: Budget,
}

#[derive(Default)]
struct Tally {
    scope: String,
    checked: u64,
    violations: u64,
    witnesses: Vec<String>,
    comparisons: Vec<FormulaComparison>,
}

impl Tally {
    fn scoped(scope: impl Into<String>) -> Self {
        Tally { scope: scope.into(), ..Tally::default() }
    }

    fn check(&mut self, ok: bool, witness: impl FnOnce() -> String) {
        self.checked += 1;
        if !ok {
            self.violations += 1;
            if self.witnesses.len() < MAX_WITNESSES {
                self.witnesses.push(witness());
            }
        }
    }
}

struct Claim {
    id: &'static str,
    statement: &'static str,
    run: fn(&Ctx) -> Result<Tally>,
}

fn main_scope(scale: Scale) -> String {
    let [(_, l2), (_, l3)] = scale.main_range();
    format!("sigma=2 len<={l2}, sigma=3 len<={l3}, k in {{2,3,4}}")
}

fn alphabet(spec: &str) -> Alphabet {
    Alphabet::new(spec).expect("registry alphabets are valid")
}

fn def(a: &Alphabet, w: &Word, k: usize) -> Result<u128> {
    deficiency(a, w, k)
}

fn show(a: &Alphabet, w: &Word) -> String {
    if w.is_empty() {
        "ε".to_string()
    } else {
        a.render(w)
    }
}

/// Runs `body` on every (alphabet, word, k) of the main range.
fn sweep_main(
    ctx: &Ctx,
    tally: &mut Tally,
    mut body: impl FnMut(&Alphabet, &Word, usize, &mut Tally) -> Result<()>,
) -> Result<()> {
    for (spec, max_len) in ctx.scale.main_range() {
        let a = alphabet(spec);
        for w in all_words(&a, max_len) {
            for k in LEVELS {
                body(&a, &w, k, tally)?;
            }
        }
    }
    Ok(())
}

fn decision_matches_oracle(ctx: &Ctx) -> Result<Tally> {
    let mut t = Tally::scoped(main_scope(ctx.scale));
    sweep_main(ctx, &mut t, |a, w, k, t| {
        let fast = check_nearly(a, w, k).is_nearly;
        let brute = def(a, w, k)? == 1;
        t.check(fast == brute, || format!("{} k={k}: decision {fast}, oracle {brute}", show(a, w)));
        Ok(())
    })?;
    Ok(t)
}

fn nearly_implies_iota_and_rests(ctx: &Ctx) -> Result<Tally> {
    let mut t = Tally::scoped(main_scope(ctx.scale));
    sweep_main(ctx, &mut t, |a, w, k, t| {
        if def(a, w, k)? != 1 {
            return Ok(());
        }
        let sigma = a.sigma();
        let fwd = arch_factorize(a, w);
        let rev = arch_factorize(a, &w.reversed());
        let ok = fwd.iota() == k - 1
            && fwd.rest().alph().len() == sigma - 1
            && rev.rest().alph().len() == sigma - 1;
        t.check(ok, || format!("{} k={k}", show(a, w)));
        Ok(())
    })?;
    Ok(t)
}

fn absent_factor_formula(ctx: &Ctx) -> Result<Tally> {
    let mut t = Tally::scoped(main_scope(ctx.scale));
    sweep_main(ctx, &mut t, |a, w, k, t| {
        if def(a, w, k)? != 1 {
            return Ok(());
        }
        let f = arch_factorize(a, w);
        let mut expected = f.modus().clone();
        match f.missing_rest_letter(a.sigma()) {
            Some(c) => expected.push(c),
            None => {
                t.check(false, || format!("{} k={k}: rest misses no single letter", show(a, w)));
                return Ok(());
            }
        }
        let absent = absent_set(a, w, k, ctx.budget)?;
        t.check(absent == vec![expected.clone()], || {
            format!("{} k={k}: formula gives {}", show(a, w), show(a, &expected))
        });
        Ok(())
    })?;
    Ok(t)
}

/// For `ι(w) = k-1` and a rest missing exactly `a_w`: every `v` ending in `a_w`
/// other than `m(w)a_w` has some `i` with `v[i]v[i+1]` inside arch `i`
/// (with `v[k-1]a_w` inside arch `k-1` as the last option).
fn pairwise_arch_condition(a: &Alphabet, w: &Word, k: usize, last: u8) -> bool {
    let f = arch_factorize(a, w);
    let pair_in = |arch: &Word, x: u8, y: u8| {
        NextOccurrenceTable::new(arch, a.sigma()).embeds_ranks(&[x, y])
    };
    a.words_of_length(k - 1).all(|prefix| {
        if &prefix == f.modus() {
            return true;
        }
        let v = prefix.as_ranks();
        (1..k - 1).any(|i| pair_in(f.arch(i), v[i - 1], v[i]))
            || pair_in(f.arch(k - 1), v[k - 2], last)
    })
}

fn pairwise_arch_criterion(ctx: &Ctx) -> Result<Tally> {
    let mut t = Tally::scoped(format!(
        "{}; words with iota=k-1 and a rest missing one letter",
        main_scope(ctx.scale)
    ));
    sweep_main(ctx, &mut t, |a, w, k, t| {
        let f = arch_factorize(a, w);
        let Some(last) = f.missing_rest_letter(a.sigma()) else {
            return Ok(());
        };
        if f.iota() != k - 1 {
            return Ok(());
        }
        let cond = pairwise_arch_condition(a, w, k, last);
        let brute = def(a, w, k)? == 1;
        t.check(cond == brute, || format!("{} k={k}: criterion {cond}, oracle {brute}", show(a, w)));
        Ok(())
    })?;
    Ok(t)
}

fn leading_arch_removal(ctx: &Ctx) -> Result<Tally> {
    let mut t = Tally::scoped(main_scope(ctx.scale));
    sweep_main(ctx, &mut t, |a, w, k, t| {
        if def(a, w, k)? != 1 {
            return Ok(());
        }
        let f = arch_factorize(a, w);
        let starts: Vec<usize> = std::iter::once(1).chain(f.arch_ends().iter().map(|e| e + 1)).collect();
        for l in 1..k {
            let cut = w.factor(starts[l]..=w.len());
            let m = def(a, &cut, k - l)?;
            t.check(m == 1, || format!("{} k={k} l={l}: {} has deficiency {m}", show(a, w), show(a, &cut)));
        }
        Ok(())
    })?;
    Ok(t)
}

fn middle_arch_removal_counterexample(_: &Ctx) -> Result<Tally> {
    let mut t = Tally::scoped("ab.aab.b at k=3 versus ab.b at k=2");
    let a = alphabet("ab");
    let w = a.parse("abaabb")?;
    let cut = a.parse("abb")?;
    let (mw, mc) = (def(&a, &w, 3)?, def(&a, &cut, 2)?);
    t.check(mw == 1, || format!("abaabb deficiency {mw} at k=3"));
    t.check(mc != 1, || format!("abb deficiency {mc} at k=2"));
    Ok(t)
}

fn leading_arch_removal_needs_nearly(_: &Ctx) -> Result<Tally> {
    let mut t = Tally::scoped("abc.bca.bb at k=3 versus its cut at k=2");
    let a = alphabet("abc");
    let w = a.parse("abcbcabb")?;
    let mw = def(&a, &w, 3)?;
    t.check(mw == 7, || format!("abcbcabb deficiency {mw} at k=3"));
    for cut in ["bcabb", "bcabbb"] {
        let mc = def(&a, &a.parse(cut)?, 2)?;
        t.check(mc == 3, || format!("{cut} deficiency {mc} at k=2"));
    }
    Ok(t)
}

fn all_splits_factorization(ctx: &Ctx) -> Result<Tally> {
    let mut t = Tally::scoped(main_scope(ctx.scale));
    sweep_main(ctx, &mut t, |a, w, k, t| {
        if def(a, w, k)? != 1 {
            return Ok(());
        }
        for s in all_splits(a, w, k) {
            t.check(s.holds(), || {
                format!("{} k={k}: split ({}, {}) {:?}", show(a, w), s.prefix_arches, s.suffix_arches, s.outcome)
            });
        }
        Ok(())
    })?;
    Ok(t)
}

fn palindrome_range(ctx: &Ctx) -> ([(&'static str, usize); 2], String) {
    let (l2, l3) = (ctx.scale.pick(5, 7), ctx.scale.pick(4, 5));
    ([("ab", l2), ("abc", l3)], format!("sigma=2 len<={l2}, sigma=3 len<={l3}, k in {{1,2,3}}"))
}

/// Calls `body(w, k, nearly(w, k), a, nearly(w.a.w^R, 2k-1))` for every letter `a`.
fn palindrome_sweep(
    ctx: &Ctx,
    t: &mut Tally,
    mut body: impl FnMut(&Alphabet, &Word, usize, bool, u8, bool, &mut Tally),
    mut even: impl FnMut(&Alphabet, &Word, usize, bool, bool, &mut Tally),
) -> Result<()> {
    let (range, _) = palindrome_range(ctx);
    for (spec, max_len) in range {
        let a = alphabet(spec);
        for w in all_words(&a, max_len) {
            let rev = w.reversed();
            for k in 1..=3 {
                let nearly = def(&a, &w, k)? == 1;
                even(&a, &w, k, nearly, def(&a, &w.concat(&rev), 2 * k - 1)? == 1, t);
                for c in 0..a.sigma() as u8 {
                    let mut mid = w.clone();
                    mid.push(c);
                    let odd = def(&a, &mid.concat(&rev), 2 * k - 1)? == 1;
                    body(&a, &w, k, nearly, c, odd, t);
                }
            }
        }
    }
    Ok(())
}

fn palindrome_extension(ctx: &Ctx) -> Result<Tally> {
    let mut t = Tally::scoped(palindrome_range(ctx).1);
    palindrome_sweep(
        ctx,
        &mut t,
        |a, w, k, nearly, c, odd, t| {
            if nearly {
                let expected = arch_factorize(a, w).rest().alph().contains(c);
                t.check(odd == expected, || {
                    format!("{} k={k} a={}: w.a.w^R nearly {odd}", show(a, w), a.letter(c))
                });
            }
        },
        |a, w, k, nearly, even, t| {
            t.check(even == nearly, || format!("{} k={k}: w.w^R nearly {even}", show(a, w)));
        },
    )?;
    Ok(t)
}

fn palindrome_extension_converse(ctx: &Ctx) -> Result<Tally> {
    let mut t = Tally::scoped(palindrome_range(ctx).1);
    palindrome_sweep(
        ctx,
        &mut t,
        |a, w, k, nearly, c, odd, t| {
            if !nearly {
                t.check(!odd, || {
                    format!("{} k={k} a={}: w not nearly but w.a.w^R is", show(a, w), a.letter(c))
                });
            }
        },
        |_, _, _, _, _, _| {},
    )?;
    Ok(t)
}

fn perfect_words(a: &Alphabet, j: usize, max_len: usize, take: usize) -> Vec<Word> {
    all_words(a, max_len)
        .filter(|w| is_perfectly_universal(a, w, j))
        .take(take)
        .collect()
}

/// `ι(w) = k-1` and both rests missing exactly one letter.
fn characterisation_premises(a: &Alphabet, w: &Word, k: usize) -> bool {
    let sigma = a.sigma();
    let fwd = arch_factorize(a, w);
    let rev = arch_factorize(a, &w.reversed());
    fwd.iota() == k - 1 && fwd.rest().alph().len() == sigma - 1 && rev.rest().alph().len() == sigma - 1
}

fn sandwich_construction(ctx: &Ctx) -> Result<Tally> {
    let take = ctx.scale.pick(6, 10);
    let mut t = Tally::scoped(format!(
        "sigma in {{2,3}}; odd k in {{1,3}}: u.x.v^R; even k in {{2,4}}: u.x2.y.x1.v^R with single-letter y; first {take} perfect words per level"
    ));
    for spec in ["ab", "abc"] {
        let a = alphabet(spec);
        let sigma = a.sigma();
        let middles: Vec<Word> = (1..=3)
            .flat_map(|n| a.words_of_length(n))
            .filter(|x| x.alph().len() == sigma - 1)
            .collect();
        for k in [1, 3] {
            let perf = perfect_words(&a, (k - 1) / 2, 5, take);
            for u in &perf {
                for v in &perf {
                    for x in &middles {
                        let w = u.concat(x).concat(&v.reversed());
                        if !characterisation_premises(&a, &w, k) {
                            continue;
                        }
                        let m = def(&a, &w, k)?;
                        t.check(m == 1, || format!("{} k={k}: deficiency {m}", show(&a, &w)));
                    }
                }
            }
        }
        for k in [2, 4] {
            let perf = perfect_words(&a, k / 2 - 1, 5, take);
            for u in &perf {
                for v in &perf {
                    for x2 in &middles {
                        for x1 in &middles {
                            for y in 0..sigma as u8 {
                                if x2.alph().contains(y) || x1.alph().contains(y) {
                                    continue;
                                }
                                let mut w = u.concat(x2);
                                w.push(y);
                                let w = w.concat(x1).concat(&v.reversed());
                                if !characterisation_premises(&a, &w, k) {
                                    continue;
                                }
                                let m = def(&a, &w, k)?;
                                t.check(m == 1, || format!("{} k={k}: deficiency {m}", show(&a, &w)));
                            }
                        }
                    }
                }
            }
        }
    }
    Ok(t)
}

fn minimal_witness_construction(ctx: &Ctx) -> Result<Tally> {
    let mut t = Tally::scoped("every u in sigma^k, sigma in {2,3}, k in {2,3,4}");
    for spec in ["ab", "abc"] {
        let a = alphabet(spec);
        for k in LEVELS {
            for u in a.words_of_length(k) {
                let w = construct_w_u(&a, &u)?;
                let absent = absent_set(&a, &w, k, ctx.budget)?;
                let expected_len = k * a.sigma() + u.condense().len() - 2;
                t.check(absent == vec![u.clone()] && w.len() == expected_len, || {
                    format!("u={}: w_u={} absent {:?}", show(&a, &u), show(&a, &w), absent.iter().map(|x| show(&a, x)).collect::<Vec<_>>())
                });
            }
        }
    }
    Ok(t)
}

fn absent_factor_class_count(ctx: &Ctx) -> Result<Tally> {
    let mut t = Tally::scoped(format!(
        "{}; only levels whose minimal witnesses (length k*sigma+k-2) fit the range",
        main_scope(ctx.scale)
    ));
    for (spec, max_len) in ctx.scale.main_range() {
        let a = alphabet(spec);
        for k in LEVELS {
            if k * a.sigma() + k - 2 > max_len {
                continue;
            }
            let mut realized = BTreeSet::new();
            for w in all_words(&a, max_len) {
                if let Some(u) = check_nearly(&a, &w, k).absent {
                    realized.insert(u);
                }
            }
            let total = checked_pow(a.sigma(), k).unwrap_or(0);
            t.check(realized.len() as u128 == total, || {
                format!("sigma={} k={k}: {} absent factors realized", a.sigma(), realized.len())
            });
        }
    }
    Ok(t)
}

fn membership_method_agreement(ctx: &Ctx) -> Result<Tally> {
    let (l2, l3) = (ctx.scale.pick(7, 10), ctx.scale.pick(5, 7));
    let mut t = Tally::scoped(format!("sigma=2 len<={l2}, sigma=3 len<={l3}, k in {{2,3}}, every u in sigma^k"));
    for (spec, max_len) in [("ab", l2), ("abc", l3)] {
        let a = alphabet(spec);
        for k in [2, 3] {
            let targets: Vec<Word> = a.words_of_length(k).collect();
            for w in all_words(&a, max_len) {
                for u in &targets {
                    let direct = class_membership(&a, &w, u, k, MembershipMethod::Direct, ctx.budget)?;
                    let pumped = class_membership(&a, &w, u, k, MembershipMethod::BasisPump, ctx.budget)?;
                    t.check(direct == pumped, || {
                        format!("{} u={}: direct {direct}, basis-pump {pumped}", show(&a, &w), show(&a, u))
                    });
                }
            }
        }
    }
    Ok(t)
}

fn arch_inflation_preserves_class(ctx: &Ctx) -> Result<Tally> {
    let (l2, l3) = (ctx.scale.pick(7, 9), ctx.scale.pick(6, 7));
    let mut t = Tally::scoped(format!(
        "nearly words with sigma=2 len<={l2}, sigma=3 len<={l3}, k in {{2,3}}; all single-letter insertions"
    ));
    for (spec, max_len) in [("ab", l2), ("abc", l3)] {
        let a = alphabet(spec);
        for k in [2, 3] {
            for v in all_words(&a, max_len) {
                let Some(u) = check_nearly(&a, &v, k).absent else {
                    continue;
                };
                for pos in 0..=v.len() {
                    for c in 0..a.sigma() as u8 {
                        let mut ranks = v.as_ranks().to_vec();
                        ranks.insert(pos, c);
                        let cand = Word::from_ranks(ranks);
                        if !in_pump_set(&a, &cand, &v, k)? {
                            continue;
                        }
                        let got = absent_set(&a, &cand, k, ctx.budget)?;
                        t.check(got == vec![u.clone()], || {
                            format!("{} inflated to {}", show(&a, &v), show(&a, &cand))
                        });
                    }
                }
            }
        }
    }
    Ok(t)
}

/// `(ar_2(w^R) ⋯ ar_{k-1}(w^R) r(w^R))^R`: `w` without its last reversed arch.
fn drop_last_reversed_arch(a: &Alphabet, w: &Word) -> Option<Word> {
    let rev = arch_factorize(a, &w.reversed());
    let first = rev.arch_ends().first()?;
    Some(w.factor(1..=w.len() - first))
}

fn reversal_recursion(ctx: &Ctx) -> Result<Tally> {
    let mut t = Tally::scoped(main_scope(ctx.scale));
    sweep_main(ctx, &mut t, |a, w, k, t| {
        let lhs = def(a, w, k)? == 1;
        let f = arch_factorize(a, w);
        let rhs = f.iota() == k - 1
            && f.rest().alph().len() == a.sigma() - 1
            && match drop_last_reversed_arch(a, w) {
                Some(cut) => def(a, &cut, k - 1)? == 1,
                None => false,
            };
        t.check(lhs == rhs, || format!("{} k={k}: nearly {lhs}, recursion {rhs}", show(a, w)));
        Ok(())
    })?;
    Ok(t)
}

fn reversal_recursion_regression(_: &Ctx) -> Result<Tally> {
    let mut t = Tally::scoped("bca.abc.ab at k=3");
    let a = alphabet("abc");
    let w = a.parse("bcaabcab")?;
    t.check(!check_nearly(&a, &w, 3).is_nearly, || "bcaabcab decided nearly".into());
    let m = def(&a, &w, 3)?;
    t.check(m != 1, || format!("bcaabcab deficiency {m}"));
    let cut = drop_last_reversed_arch(&a, &w).unwrap_or_default();
    let mc = def(&a, &cut, 2)?;
    t.check(mc != 1, || format!("{} deficiency {mc} at k=2", show(&a, &cut)));
    Ok(t)
}

fn with_iota_below(a: &Alphabet, w: &Word, k: usize) -> bool {
    universality_index(a, w) == k - 1
}

fn modus_candidate_chain(ctx: &Ctx) -> Result<Tally> {
    let mut t = Tally::scoped(format!("{}; words with iota=k-1", main_scope(ctx.scale)));
    sweep_main(ctx, &mut t, |a, w, k, t| {
        if !with_iota_below(a, w, k) {
            return Ok(());
        }
        let g = candidate_graph(a, w, k)?;
        let modus = arch_factorize(a, w).modus().clone();
        for i in 1..k - 1 {
            let ok = g
                .g(modus.at(i), i)
                .and_then(|p| g.m_at(p))
                .is_some_and(|set| set.contains(modus.at(i + 1)));
            t.check(ok, || format!("{} k={k} i={i}", show(a, w)));
        }
        Ok(())
    })?;
    Ok(t)
}

fn structured_absent_set(ctx: &Ctx) -> Result<Tally> {
    let mut t = Tally::scoped(format!("{}; words with iota=k-1", main_scope(ctx.scale)));
    sweep_main(ctx, &mut t, |a, w, k, t| {
        if !with_iota_below(a, w, k) {
            return Ok(());
        }
        let mut got: Vec<Word> = absent_factors_structured(a, w, k, ctx.budget)?
            .into_iter()
            .map(|x| x.u)
            .collect();
        got.sort();
        let brute = absent_set(a, w, k, ctx.budget)?;
        t.check(got == brute, || format!("{} k={k}", show(a, w)));
        Ok(())
    })?;
    Ok(t)
}

fn absent_count_recursion(ctx: &Ctx) -> Result<Tally> {
    let mut t = Tally::scoped(format!("{}; words with iota=k-1", main_scope(ctx.scale)));
    sweep_main(ctx, &mut t, |a, w, k, t| {
        if !with_iota_below(a, w, k) {
            return Ok(());
        }
        let h = candidate_graph(a, w, k)?.h_root();
        let m = def(a, w, k)?;
        t.check(h == m, || format!("{} k={k}: h={h}, deficiency {m}", show(a, w)));
        Ok(())
    })?;
    Ok(t)
}

fn alpha_beta_invariants(ctx: &Ctx) -> Result<Tally> {
    let mut t = Tally::scoped(format!("{}; words with iota=k-1", main_scope(ctx.scale)));
    sweep_main(ctx, &mut t, |a, w, k, t| {
        if !with_iota_below(a, w, k) {
            return Ok(());
        }
        let ab = alpha_beta_factorize(a, w, k)?;
        let fwd = arch_factorize(a, w);
        let rev = arch_factorize(a, &w.reversed());
        let mut ok = ab.reassemble() == *w
            && ab.alpha(k) == fwd.rest()
            && ab.alpha(1).reversed() == *rev.rest();
        for i in 1..k {
            ok &= ab.alpha(i).concat(ab.beta(i)) == *fwd.arch(i);
            ok &= ab.beta(k - i).concat(ab.alpha(k - i + 1)).reversed() == *rev.arch(i);
        }
        t.check(ok, || format!("{} k={k}", show(a, w)));
        Ok(())
    })?;
    Ok(t)
}

/// Words with `ι = k-1` up to `max_len`, each with its absent set.
fn universal_below(a: &Alphabet, k: usize, max_len: usize, budget: Budget) -> Result<Vec<(Word, Vec<Word>)>> {
    all_words(a, max_len)
        .filter(|w| with_iota_below(a, w, k))
        .map(|w| {
            let absent = absent_set(a, &w, k, budget)?;
            Ok((w, absent))
        })
        .collect()
}

fn shared_chain_criterion(ctx: &Ctx) -> Result<Tally> {
    let cases = match ctx.scale {
        Scale::Quick => vec![("ab", 2, 6), ("ab", 3, 7), ("abc", 2, 5)],
        Scale::Full => vec![("ab", 2, 8), ("ab", 3, 9), ("abc", 2, 6), ("abc", 3, 7)],
    };
    let scope = cases
        .iter()
        .map(|(s, k, l)| format!("sigma={} k={k} len<={l}", s.len()))
        .collect::<Vec<_>>()
        .join("; ");
    let mut t = Tally::scoped(format!("{scope}; all ordered pairs with iota=k-1, every u absent from the first"));
    for (spec, k, max_len) in cases {
        let a = alphabet(spec);
        let words = universal_below(&a, k, max_len, ctx.budget)?;
        for (w, absent) in &words {
            for (w2, absent2) in &words {
                for u in absent {
                    let c = predicate_c(&a, u, w, w2, k)?;
                    let brute = absent2.binary_search(u).is_ok();
                    t.check(c == brute, || {
                        format!("u={} w={} w'={}: predicate {c}, oracle {brute}", show(&a, u), show(&a, w), show(&a, w2))
                    });
                }
            }
        }
    }
    Ok(t)
}

/// Samples per exact-k signature within each deficiency bucket: the first
/// `per_class` members in length-then-lex order plus the last one.
fn bucket_samples(words: &[(Word, Vec<Word>)], per_class: usize) -> BTreeMap<usize, Vec<(Word, usize)>> {
    let mut classes: HashMap<&[Word], (usize, Vec<&Word>)> = HashMap::new();
    let mut order = Vec::new();
    for (w, absent) in words {
        let next_id = classes.len();
        let entry = classes.entry(absent.as_slice()).or_insert_with(|| {
            order.push(absent.as_slice());
            (next_id, Vec::new())
        });
        entry.1.push(w);
    }
    let mut buckets: BTreeMap<usize, Vec<(Word, usize)>> = BTreeMap::new();
    for sig in order {
        let (id, members) = &classes[sig];
        let mut picked: Vec<&Word> = members.iter().take(per_class).copied().collect();
        if members.len() > per_class {
            picked.push(members[members.len() - 1]);
        }
        let bucket = buckets.entry(sig.len()).or_default();
        bucket.extend(picked.into_iter().map(|w| (w.clone(), *id)));
    }
    buckets
}

fn structured_congruence(ctx: &Ctx) -> Result<Tally> {
    let max_len = ctx.scale.pick(7, 9);
    let per_class = 2;
    let mut t = Tally::scoped(format!(
        "sigma=3 k=3 len<={max_len}, iota=k-1; per deficiency bucket every pair among the first {per_class} and the last member of each signature class"
    ));
    let a = alphabet("abc");
    let k = 3;
    let words = universal_below(&a, k, max_len, ctx.budget)?;
    for bucket in bucket_samples(&words, per_class).values() {
        for (i, (w, cw)) in bucket.iter().enumerate() {
            for (w2, cw2) in &bucket[i..] {
                let got = congruent_structured(&a, w, w2, k, ctx.budget)?;
                let expected = cw == cw2;
                t.check(got == expected, || {
                    format!("{} ~ {}: structured {got}, signatures {expected}", show(&a, w), show(&a, w2))
                });
            }
        }
    }
    Ok(t)
}

fn short_words_single_class(ctx: &Ctx) -> Result<Tally> {
    let mut t = Tally::scoped(main_scope(ctx.scale));
    sweep_main(ctx, &mut t, |a, w, k, t| {
        let total = checked_pow(a.sigma(), k).unwrap_or(0);
        let full = def(a, w, k)? == total;
        t.check(full == (w.len() < k), || format!("{} k={k}", show(a, w)));
        Ok(())
    })?;
    Ok(t)
}

fn two_present_shape(ctx: &Ctx) -> Result<Tally> {
    let mut t = Tally::scoped(main_scope(ctx.scale));
    sweep_main(ctx, &mut t, |a, w, k, t| {
        if classify_extreme(a, w, k).tag != ExtremeTag::TwoPresent {
            return Ok(());
        }
        let ok = w.alph().len() == 2 && w.condense().len() == 2;
        t.check(ok, || format!("{} k={k}", show(a, w)));
        Ok(())
    })?;
    Ok(t)
}

fn census_cases(ctx: &Ctx, bound: impl Fn(usize, usize) -> usize) -> Vec<(&'static str, usize, usize)> {
    let mut out = Vec::new();
    for spec in ["ab", "abc"] {
        for k in [2, 3] {
            if ctx.scale == Scale::Quick && spec == "abc" && k == 3 {
                continue;
            }
            out.push((spec, k, bound(spec.len(), k)));
        }
    }
    out
}

fn census_scope(cases: &[(&str, usize, usize)]) -> String {
    cases
        .iter()
        .map(|(s, k, l)| format!("sigma={} k={k} len<={l}", s.len()))
        .collect::<Vec<_>>()
        .join("; ")
}

fn class_count_claim(ctx: &Ctx, m_of: fn(u128) -> u128, bound: fn(usize, usize) -> usize) -> Result<Tally> {
    let cases = census_cases(ctx, bound);
    let mut t = Tally::scoped(census_scope(&cases));
    for (spec, k, max_len) in cases {
        let a = alphabet(spec);
        let total = checked_pow(a.sigma(), k).unwrap_or(0);
        let r = census_with(&a, m_of(total), k, max_len, CongruenceMode::ExactK, CensusStrategy::CountingDp, ctx.budget)?;
        t.check(r.class_count as u128 == total && r.stabilized, || {
            format!("sigma={} k={k}: {} classes, stabilized {}", a.sigma(), r.class_count, r.stabilized)
        });
        t.comparisons.extend(r.formula_comparison);
    }
    Ok(t)
}

fn nearly_class_count(ctx: &Ctx) -> Result<Tally> {
    class_count_claim(ctx, |_| 1, |sigma, k| k * sigma + k)
}

fn single_present_class_count(ctx: &Ctx) -> Result<Tally> {
    let mut t = class_count_claim(ctx, |total| total - 1, |_, k| k + 2)?;
    for (spec, k, max_len) in census_cases(ctx, |_, k| k + 2) {
        let a = alphabet(spec);
        let mut present = BTreeSet::new();
        for w in all_words(&a, max_len) {
            if count_distinct_subsequences(&a, &w, k)? == 1 {
                present.insert(scatfact_set(&a, &w, k, ctx.budget)?);
            }
        }
        let total = checked_pow(a.sigma(), k).unwrap_or(0);
        t.check(present.len() as u128 == total, || {
            format!("sigma={} k={k}: {} distinct present factors", a.sigma(), present.len())
        });
    }
    Ok(t)
}

fn two_present_class_count(ctx: &Ctx) -> Result<Tally> {
    let cases = census_cases(ctx, |_, k| k + 4);
    let mut t = Tally::scoped(format!("{}; both enumeration strategies", census_scope(&cases)));
    for (spec, k, max_len) in cases {
        let a = alphabet(spec);
        let m = checked_pow(a.sigma(), k).unwrap_or(0) - 2;
        let dp = census_with(&a, m, k, max_len, CongruenceMode::ExactK, CensusStrategy::CountingDp, ctx.budget)?;
        let set = census_with(&a, m, k, max_len, CongruenceMode::ExactK, CensusStrategy::FactorSet, ctx.budget)?;
        t.check(dp.class_count == set.class_count && dp.representatives == set.representatives, || {
            format!("sigma={} k={k}: strategies give {} and {}", a.sigma(), dp.class_count, set.class_count)
        });
        t.comparisons.extend(dp.formula_comparison);
    }
    Ok(t)
}

fn missing_two_structure(ctx: &Ctx) -> Result<Tally> {
    let max_len = ctx.scale.pick(8, 10);
    let mut t = Tally::scoped(format!("sigma=3 len<={max_len}, k in {{2,3}}"));
    let a = alphabet("abc");
    for w in all_words(&a, max_len) {
        for k in [2, 3] {
            if def(&a, &w, k)? != 2 {
                continue;
            }
            let r = m2_property_check(&a, &w, k)?;
            t.check(r.holds, || format!("{} k={k}: {:?}", show(&a, &w), r));
        }
    }
    Ok(t)
}

fn double_oracle_agreement(ctx: &Ctx) -> Result<Tally> {
    let mut t = Tally::scoped(main_scope(ctx.scale));
    sweep_main(ctx, &mut t, |a, w, k, t| {
        let total = checked_pow(a.sigma(), k).unwrap_or(0);
        let dp = count_distinct_subsequences(a, w, k)?;
        let listed = scatfact_set(a, w, k, ctx.budget)?.len() as u128;
        let absent = absent_set(a, w, k, ctx.budget)?.len() as u128;
        t.check(dp == listed && listed + absent == total, || {
            format!("{} k={k}: dp {dp}, listed {listed}, absent {absent}", show(a, w))
        });
        Ok(())
    })?;
    Ok(t)
}

fn mirror_symmetry(ctx: &Ctx) -> Result<Tally> {
    let mut t = Tally::scoped(main_scope(ctx.scale));
    sweep_main(ctx, &mut t, |a, w, k, t| {
        let rev = w.reversed();
        let same_iota = universality_index(a, w) == universality_index(a, &rev);
        let fwd = check_nearly(a, w, k);
        let back = check_nearly(a, &rev, k);
        let mirrored = fwd.absent.as_ref().map(Word::reversed) == back.absent;
        t.check(same_iota && mirrored, || format!("{} k={k}", show(a, w)));
        Ok(())
    })?;
    Ok(t)
}

const REGISTRY: &[Claim] = &[
    Claim {
        id: "decision-matches-oracle",
        statement: "the linear-time decision agrees with brute-force deficiency = 1",
        run: decision_matches_oracle,
    },
    Claim {
        id: "nearly-implies-iota-and-rests",
        statement: "nearly k-universal words have k-1 arches and rests of w and w^R missing exactly one letter",
        run: nearly_implies_iota_and_rests,
    },
    Claim {
        id: "absent-factor-formula",
        statement: "the unique absent factor of a nearly k-universal word is m(w)a_w",
        run: absent_factor_formula,
    },
    Claim {
        id: "pairwise-arch-criterion",
        statement: "for iota=k-1 and a rest missing a_w: nearly iff every v ending in a_w other than m(w)a_w has v[i]v[i+1] inside arch i for some i",
        run: pairwise_arch_criterion,
    },
    Claim {
        id: "leading-arch-removal",
        statement: "removing l leading arches of a nearly k-universal word leaves a nearly (k-l)-universal word",
        run: leading_arch_removal,
    },
    Claim {
        id: "middle-arch-removal-counterexample",
        statement: "removing a middle arch need not preserve nearly universality",
        run: middle_arch_removal_counterexample,
    },
    Claim {
        id: "leading-arch-removal-needs-nearly",
        statement: "leading-arch removal does not preserve the deficiency when it exceeds one",
        run: leading_arch_removal_needs_nearly,
    },
    Claim {
        id: "all-splits-factorization",
        statement: "a nearly k-universal word factorizes as u.x.v^R with perfect u, v for every split p+s+1=k",
        run: all_splits_factorization,
    },
    Claim {
        id: "palindrome-extension",
        statement: "w.w^R is nearly (2k-1)-universal iff w is nearly k-universal; for nearly w, w.a.w^R is iff a is in the rest of w",
        run: palindrome_extension,
    },
    Claim {
        id: "palindrome-extension-converse",
        statement: "w.a.w^R is never nearly (2k-1)-universal when w is not nearly k-universal",
        run: palindrome_extension_converse,
    },
    Claim {
        id: "sandwich-construction",
        statement: "u.x.v^R is nearly k-universal for odd k; for even k, u.x2.y.x1.v^R with y outside alph(x1) and alph(x2) is nearly k-universal",
        run: sandwich_construction,
    },
    Claim {
        id: "minimal-witness-construction",
        statement: "w_u misses exactly u and has length k*sigma + |cond(u)| - 2",
        run: minimal_witness_construction,
    },
    Claim {
        id: "absent-factor-class-count",
        statement: "every u in sigma^k is the absent factor of some nearly k-universal word",
        run: absent_factor_class_count,
    },
    Claim {
        id: "membership-method-agreement",
        statement: "class membership through the basis and arch inflation agrees with the direct decision",
        run: membership_method_agreement,
    },
    Claim {
        id: "arch-inflation-preserves-class",
        statement: "inflating arches or the rest of a nearly k-universal word keeps its absent factor",
        run: arch_inflation_preserves_class,
    },
    Claim {
        id: "reversal-recursion",
        statement: "nearly k-universal iff iota=k-1, the rest misses one letter, and dropping the last reversed arch leaves a nearly (k-1)-universal word",
        run: reversal_recursion,
    },
    Claim {
        id: "reversal-recursion-regression",
        statement: "bca.abc.ab is not nearly 3-universal",
        run: reversal_recursion_regression,
    },
    Claim {
        id: "modus-candidate-chain",
        statement: "m(w)[i+1] is a candidate at the leftmost occurrence of m(w)[i] in arch i",
        run: modus_candidate_chain,
    },
    Claim {
        id: "structured-absent-set",
        statement: "the candidate-graph absent set equals the brute-force absent set",
        run: structured_absent_set,
    },
    Claim {
        id: "absent-count-recursion",
        statement: "the root count of the candidate graph equals the deficiency",
        run: absent_count_recursion,
    },
    Claim {
        id: "alpha-beta-invariants",
        statement: "alpha-beta blocks reassemble w and align with the arches of w and w^R",
        run: alpha_beta_invariants,
    },
    Claim {
        id: "shared-chain-criterion",
        statement: "for u absent from w: u is absent from w' iff their chains admit u's letters in both candidate sets",
        run: shared_chain_criterion,
    },
    Claim {
        id: "structured-congruence",
        statement: "congruence through candidate graphs agrees with equality of absent sets",
        run: structured_congruence,
    },
    Claim {
        id: "short-words-single-class",
        statement: "deficiency sigma^k holds exactly for words shorter than k",
        run: short_words_single_class,
    },
    Claim {
        id: "nearly-class-count",
        statement: "nearly k-universal words form sigma^k congruence classes",
        run: nearly_class_count,
    },
    Claim {
        id: "single-present-class-count",
        statement: "words with one present k-factor form sigma^k classes, one per factor",
        run: single_present_class_count,
    },
    Claim {
        id: "two-present-shape",
        statement: "words with exactly two present k-factors have two letters and two blocks",
        run: two_present_shape,
    },
    Claim {
        id: "two-present-class-count",
        statement: "class count of words with two present k-factors compared with 2*binom(sigma,2)*(k+2)",
        run: two_present_class_count,
    },
    Claim {
        id: "missing-two-structure",
        statement: "over sigma>2, deficiency 2 forces iota=k-1 and the rest-alphabet disjunction",
        run: missing_two_structure,
    },
    Claim {
        id: "double-oracle-agreement",
        statement: "the subsequence DP, factor listing, and absent probing give consistent counts",
        run: double_oracle_agreement,
    },
    Claim {
        id: "mirror-symmetry",
        statement: "iota(w)=iota(w^R), and the absent factor of w^R is the reversed absent factor of w",
        run: mirror_symmetry,
    },
];

/// Identifiers of every registered claim, in registry order.
pub fn claim_ids() -> Vec<&'static str> {
    REGISTRY.iter().map(|c| c.id).collect()
}

/// Runs the named claims (all of them when `ids` is empty). Unknown names and
/// claims that hit a capacity limit come back as failing reports.
pub fn verify_claims(ids: &[&str], scale: Scale, budget: Budget) -> Vec<ClaimReport> {
    let ctx = Ctx { scale, budget };
    let selected: Vec<&str> = if ids.is_empty() { claim_ids() } else { ids.to_vec() };
    selected
        .into_iter()
        .map(|id| match REGISTRY.iter().find(|c| c.id == id) {
            None => ClaimReport {
                id: id.to_string(),
                statement: "unknown claim".to_string(),
                scope: String::new(),
                status: ClaimStatus::Fail,
                checked: 0,
                violations: 1,
                witnesses: vec![format!("no claim named {id}")],
                comparisons: vec![],
            },
            Some(claim) => {
                let (tally, error) = match (claim.run)(&ctx) {
                    Ok(t) => (t, None),
                    Err(e) => (Tally::default(), Some(e.to_string())),
                };
                let status = if error.is_some() || tally.violations > 0 {
                    ClaimStatus::Fail
                } else if tally.comparisons.is_empty() || tally.comparisons.iter().all(|c| c.matches) {
                    ClaimStatus::Pass
                } else {
                    ClaimStatus::Compare
                };
                let mut witnesses = tally.witnesses;
                witnesses.extend(error);
                ClaimReport {
                    id: claim.id.to_string(),
                    statement: claim.statement.to_string(),
                    scope: tally.scope,
                    status,
                    checked: tally.checked,
                    violations: tally.violations,
                    witnesses,
                    comparisons: tally.comparisons,
                }
            }
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ids_are_unique() {
        let ids = claim_ids();
        let set: BTreeSet<_> = ids.iter().collect();
        assert_eq!(set.len(), ids.len());
    }

    #[test]
    fn unknown_claim_is_reported() {
        let r = verify_claims(&["no-such-claim"], Scale::Quick, Budget::DEFAULT);
        assert_eq!(r[0].status, ClaimStatus::Fail);
    }

    #[test]
    fn regressions_pass() {
        for r in verify_claims(
            &["middle-arch-removal-counterexample", "leading-arch-removal-needs-nearly", "reversal-recursion-regression"],
            Scale::Quick,
            Budget::DEFAULT,
        ) {
            assert_eq!(r.status, ClaimStatus::Pass, "{r:?}");
        }
    }

    #[test]
    fn capacity_failure_is_data() {
        let r = verify_claims(&["absent-factor-formula"], Scale::Quick, Budget(4));
        assert_eq!(r[0].status, ClaimStatus::Fail);
        assert!(r[0].witnesses.last().unwrap().contains("capacity"));
    }
}
