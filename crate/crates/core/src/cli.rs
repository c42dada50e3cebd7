//! The `nuniv` command line. Parsing and dispatch live here so the binary stays
//! a one-liner and the whole surface can be driven from tests.

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use crate::alpha_beta::{absent_factors_structured, candidate_graph, congruent_structured};
use crate::error::{checked_pow, Budget, Error, Result};
use crate::extremes::classify_extreme;
use crate::nearly::{basis_of, check_nearly, construct_w_u, SplitOutcome, SplitViolation};
use crate::oracle_lab::{
    census_with, claim_ids, verify_claims, write_reports_csv, CensusStrategy, ClaimStatus, Scale,
};
use crate::word_core::{
    absent_set, arch_factorize, deficiency, simon_congruent, Alphabet, CongruenceMode, LetterSet,
    Word,
};

pub const EXIT_YES: i32 = 0;
pub const EXIT_NO: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_CAPACITY: i32 = 3;

#[derive(Debug, Parser)]
#[command(name = "nuniv", version, about = "Analyze m-nearly k-universal words")]
struct Cli {
    /// Emit JSON instead of text.
    #[arg(long, global = true)]
    json: bool,

    /// Maximum number of objects an enumeration may produce.
    #[arg(long, global = true, env = "NUNIV_BUDGET", default_value_t = Budget::DEFAULT.0)]
    budget: u64,

    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Args)]
struct AlphabetArg {
    /// Alphabet letters in order, e.g. `abc`.
    #[arg(short = 'a', long = "alphabet")]
    alphabet: String,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Arches, universality index, modus, rest, deficiency, extreme tag.
    Analyze {
        word: String,
        #[command(flatten)]
        alphabet: AlphabetArg,
        #[arg(short)]
        k: usize,
    },
    /// Decide nearly k-universality and report the absent factor.
    CheckNearly {
        word: String,
        #[command(flatten)]
        alphabet: AlphabetArg,
        #[arg(short)]
        k: usize,
    },
    /// Build the minimal word whose only absent |u|-factor is u.
    Construct {
        u: String,
        #[command(flatten)]
        alphabet: AlphabetArg,
        /// Letter order used for the construction (a permutation of the alphabet).
        #[arg(long)]
        order: Option<String>,
    },
    /// List the absent k-factors.
    Absent {
        word: String,
        #[command(flatten)]
        alphabet: AlphabetArg,
        #[arg(short)]
        k: usize,
        #[arg(long, value_enum, default_value_t = AbsentMethod::Brute)]
        method: AbsentMethod,
    },
    /// Test Simon congruence of two words.
    Congruent {
        w1: String,
        w2: String,
        #[command(flatten)]
        alphabet: AlphabetArg,
        #[arg(short)]
        k: usize,
        #[arg(long, value_enum, default_value_t = CongruenceMethod::Signature)]
        method: CongruenceMethod,
        #[arg(long, value_enum, default_value_t = ModeArg::ExactK)]
        mode: ModeArg,
    },
    /// Show the alpha-beta factorization and candidate graph.
    AlphaBeta {
        word: String,
        #[command(flatten)]
        alphabet: AlphabetArg,
        #[arg(short)]
        k: usize,
    },
    /// Basis of the congruence class of w_u.
    Basis {
        u: String,
        #[command(flatten)]
        alphabet: AlphabetArg,
        #[arg(long)]
        order: Option<String>,
        /// Print only the size of the basis.
        #[arg(long)]
        count_only: bool,
    },
    /// Count congruence classes among words of a given deficiency.
    Census {
        #[command(flatten)]
        alphabet: AlphabetArg,
        #[arg(short)]
        k: usize,
        /// Deficiency.
        #[arg(long)]
        m: u128,
        #[arg(long)]
        max_len: usize,
        #[arg(long, value_enum, default_value_t = ModeArg::ExactK)]
        mode: ModeArg,
        #[arg(long, value_enum, default_value_t = StrategyArg::CountingDp)]
        strategy: StrategyArg,
        /// Write the report here (`.csv` for CSV, JSON otherwise).
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run the property registry against the brute-force oracle.
    Verify {
        /// Claim to run; repeat for several. All claims when omitted.
        #[arg(long = "claim")]
        claims: Vec<String>,
        #[arg(long, value_enum, default_value_t = ScaleArg::Quick)]
        scale: ScaleArg,
        /// List claim ids and exit.
        #[arg(long)]
        list: bool,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum AbsentMethod {
    /// Candidate-graph walk (requires iota = k-1).
    Notu,
    Brute,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum CongruenceMethod {
    /// Compare scattered-factor sets.
    Signature,
    /// Shared candidate chains (requires iota = k-1 for both words).
    Mequiv,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum ModeArg {
    ExactK,
    UpToK,
}

impl From<ModeArg> for CongruenceMode {
    fn from(m: ModeArg) -> Self {
        match m {
            ModeArg::ExactK => CongruenceMode::ExactK,
            ModeArg::UpToK => CongruenceMode::UpToK,
        }
    }
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum StrategyArg {
    CountingDp,
    FactorSet,
}

impl From<StrategyArg> for CensusStrategy {
    fn from(s: StrategyArg) -> Self {
        match s {
            StrategyArg::CountingDp => CensusStrategy::CountingDp,
            StrategyArg::FactorSet => CensusStrategy::FactorSet,
        }
    }
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum ScaleArg {
    Quick,
    Full,
}

/// What a command produced: text or JSON, plus the verdict.
struct Outcome {
    text: String,
    json: Value,
    affirmative: bool,
}

impl Outcome {
    fn yes(text: String, json: Value) -> Self {
        Outcome { text, json, affirmative: true }
    }
}

fn exit_code(e: &Error) -> i32 {
    match e {
        Error::Validation(_) | Error::Contract(_) => EXIT_USAGE,
        Error::Capacity { .. } | Error::Overflow(_) => EXIT_CAPACITY,
    }
}

fn io_err(e: std::io::Error) -> Error {
    Error::Validation(format!("cannot write report: {e}"))
}

struct Env {
    alphabet: Alphabet,
    budget: Budget,
}

impl Env {
    fn new(spec: &str, budget: Budget) -> Result<Self> {
        Ok(Env { alphabet: Alphabet::new(spec)?, budget })
    }

    fn word(&self, text: &str) -> Result<Word> {
        self.alphabet.parse(text)
    }

    fn show(&self, w: &Word) -> String {
        self.alphabet.render(w)
    }

    fn set(&self, s: LetterSet) -> String {
        format!("{{{}}}", s.iter().map(|c| self.alphabet.letter(c).to_string()).collect::<Vec<_>>().join(","))
    }

    fn words(&self, ws: &[Word]) -> Vec<String> {
        ws.iter().map(|w| self.show(w)).collect()
    }
}

fn display_word(s: &str) -> &str {
    if s.is_empty() {
        "ε"
    } else {
        s
    }
}

/// Alphabet for `--order`: same letters as `base`, construction order as given.
fn ordered(base: &Alphabet, order: Option<&str>) -> Result<Alphabet> {
    match order {
        None => Ok(base.clone()),
        Some(o) => {
            let ord = Alphabet::new(o)?;
            if !ord.same_letters(base) {
                return Err(Error::Validation(format!(
                    "order {o} is not a permutation of the alphabet {}",
                    base.spec()
                )));
            }
            Ok(ord)
        }
    }
}

fn analyze(env: &Env, word: &str, k: usize) -> Result<Outcome> {
    let a = &env.alphabet;
    let w = env.word(word)?;
    let f = arch_factorize(a, &w);
    let m = deficiency(a, &w, k)?;
    let extreme = classify_extreme(a, &w, k);
    let missing = f.missing_rest_letter(a.sigma()).map(|c| a.letter(c).to_string());
    let arches = env.words(f.arches());
    let tag = serde_json::to_value(extreme.tag).expect("tag serializes");
    let detail = extreme.detail.map(|d| {
        json!({"x": a.letter(d.x).to_string(), "y": a.letter(d.y).to_string(), "p": d.p, "q": d.q})
    });
    let mut text = format!(
        "word {}\narches {}\niota {}\nmodus {}\nrest {}\n",
        display_word(word),
        if arches.is_empty() { "-".to_string() } else { arches.join(" · ") },
        f.iota(),
        display_word(&env.show(f.modus())),
        display_word(&env.show(f.rest())),
    );
    if let Some(c) = &missing {
        text.push_str(&format!("rest misses {c}\n"));
    }
    text.push_str(&format!("deficiency {m} (k={k})\nextreme {}", tag.as_str().unwrap_or("")));
    if let Some(d) = extreme.detail {
        text.push_str(&format!(" {}^{} {}^{}", a.letter(d.x), d.p, a.letter(d.y), d.q));
    }
    text.push('\n');
    let mut ex = json!({"tag": tag});
    if let Some(d) = detail {
        ex["detail"] = d;
    }
    Ok(Outcome::yes(
        text,
        json!({
            "word": word,
            "alphabet": a.spec(),
            "k": k,
            "arches": arches,
            "iota": f.iota(),
            "modus": env.show(f.modus()),
            "rest": env.show(f.rest()),
            "missing_rest_letter": missing,
            "deficiency": m.to_string(),
            "extreme": ex,
        }),
    ))
}

fn split_json(s: &crate::nearly::SplitRecord) -> Value {
    let mut v = json!({
        "prefix_arches": s.prefix_arches,
        "suffix_arches": s.suffix_arches,
        "holds": s.holds(),
    });
    match s.outcome {
        SplitOutcome::Factorized { u_end, v_start } => {
            v["u_end"] = json!(u_end);
            v["v_start"] = json!(v_start);
        }
        SplitOutcome::Violated(why) => {
            v["violation"] = json!(match why {
                SplitViolation::NotEnoughArches => "not-enough-arches".to_string(),
                SplitViolation::EmptyMiddle => "empty-middle".to_string(),
                SplitViolation::MiddleAlphabet { size } => format!("middle-alphabet-size-{size}"),
            });
        }
    }
    v
}

fn check(env: &Env, word: &str, k: usize) -> Result<Outcome> {
    let w = env.word(word)?;
    let verdict = check_nearly(&env.alphabet, &w, k);
    let absent = verdict.absent.as_ref().map(|u| env.show(u));
    let text = match &absent {
        Some(u) => format!("nearly {k}-universal; absent = {u}\n"),
        None => format!("not nearly {k}-universal: {}\n", verdict.reason),
    };
    Ok(Outcome {
        text,
        json: json!({
            "word": word,
            "k": k,
            "is_nearly": verdict.is_nearly,
            "absent": absent,
            "reason": verdict.reason.to_string(),
            "splits": verdict.splits.iter().map(split_json).collect::<Vec<_>>(),
        }),
        affirmative: verdict.is_nearly,
    })
}

fn construct(env: &Env, u: &str, order: Option<&str>) -> Result<Outcome> {
    let ord = ordered(&env.alphabet, order)?;
    let w = construct_w_u(&ord, &ord.parse(u)?)?;
    let rendered = ord.render(&w);
    Ok(Outcome::yes(
        format!("{}\n", display_word(&rendered)),
        json!({"u": u, "order": ord.spec(), "w_u": rendered, "length": w.len()}),
    ))
}

fn absent(env: &Env, word: &str, k: usize, method: AbsentMethod) -> Result<Outcome> {
    let a = &env.alphabet;
    let w = env.word(word)?;
    let (factors, chains): (Vec<Word>, Option<Vec<Vec<usize>>>) = match method {
        AbsentMethod::Brute => (absent_set(a, &w, k, env.budget)?, None),
        AbsentMethod::Notu => {
            let ws = absent_factors_structured(a, &w, k, env.budget)?;
            let chains = ws.iter().map(|x| x.chain.clone()).collect();
            (ws.into_iter().map(|x| x.u).collect(), Some(chains))
        }
    };
    let names = env.words(&factors);
    let text = format!("{} absent: {}\n", names.len(), names.iter().map(|s| display_word(s)).collect::<Vec<_>>().join(" "));
    let mut j = json!({
        "word": word,
        "k": k,
        "method": match method { AbsentMethod::Brute => "brute", AbsentMethod::Notu => "notu" },
        "count": names.len(),
        "absent": names,
    });
    if let Some(c) = chains {
        j["chains"] = json!(c);
    }
    Ok(Outcome::yes(text, j))
}

fn congruent(
    env: &Env,
    w1: &str,
    w2: &str,
    k: usize,
    method: CongruenceMethod,
    mode: CongruenceMode,
) -> Result<Outcome> {
    let a = &env.alphabet;
    let (x, y) = (env.word(w1)?, env.word(w2)?);
    let same = match method {
        CongruenceMethod::Signature => simon_congruent(a, &x, &y, k, mode, env.budget)?,
        CongruenceMethod::Mequiv => {
            if mode == CongruenceMode::UpToK {
                return Err(Error::Validation("mequiv supports only exact-k".into()));
            }
            congruent_structured(a, &x, &y, k, env.budget)?
        }
    };
    Ok(Outcome {
        text: if same { "congruent\n" } else { "not congruent\n" }.to_string(),
        json: json!({
            "w1": w1,
            "w2": w2,
            "k": k,
            "method": match method { CongruenceMethod::Signature => "signature", CongruenceMethod::Mequiv => "mequiv" },
            "mode": mode,
            "congruent": same,
        }),
        affirmative: same,
    })
}

fn alpha_beta(env: &Env, word: &str, k: usize) -> Result<Outcome> {
    let a = &env.alphabet;
    let w = env.word(word)?;
    let g = candidate_graph(a, &w, k)?;
    let f = g.factorization();
    let alphas = env.words(&f.alphas);
    let betas = env.words(&f.betas);
    let mut blocks = Vec::new();
    for i in 0..k {
        blocks.push(format!("α{}={}", i + 1, display_word(&alphas[i])));
        if i + 1 < k {
            blocks.push(format!("β{}={}", i + 1, display_word(&betas[i])));
        }
    }
    let mut positions = Vec::new();
    let mut text = format!(
        "{}\nM root {} next {:?}\n",
        blocks.join(" "),
        env.set(g.m_root()),
        g.m_prime_root()
    );
    for pos in 1..=w.len() {
        let Some(set) = g.m_at(pos) else { continue };
        let h = g.h(pos).unwrap_or(0);
        let succ = g.m_prime(pos);
        text.push_str(&format!(
            "pos {pos} {} level {} M {} h {h}{}\n",
            a.letter(w.at(pos)),
            g.f(pos),
            env.set(set),
            succ.as_ref().map(|s| format!(" next {s:?}")).unwrap_or_default(),
        ));
        positions.push(json!({
            "pos": pos,
            "letter": a.letter(w.at(pos)).to_string(),
            "level": g.f(pos),
            "m": env.set(set),
            "m_prime": succ,
            "h": h.to_string(),
        }));
    }
    text.push_str(&format!("h root {}\n", g.h_root()));
    Ok(Outcome::yes(
        text,
        json!({
            "word": word,
            "k": k,
            "alphas": alphas,
            "betas": betas,
            "boundaries": f.boundaries(),
            "m_root": env.set(g.m_root()),
            "m_prime_root": g.m_prime_root(),
            "positions": positions,
            "h_root": g.h_root().to_string(),
        }),
    ))
}

fn basis(env: &Env, u: &str, order: Option<&str>, count_only: bool) -> Result<Outcome> {
    let ord = ordered(&env.alphabet, order)?;
    let b = basis_of(&ord, &ord.parse(u)?)?;
    let count = b.count();
    let w_u = ord.render(&b.word_u);
    let count_text = count.map_or("more than 2^128".to_string(), |c| c.to_string());
    let mut text = format!("w_u {}\ncount {count_text}\n", display_word(&w_u));
    let mut j = json!({"u": u, "order": ord.spec(), "w_u": w_u, "count": count_text});
    if !count_only {
        let elements: Vec<String> = b.elements(env.budget)?.iter().map(|w| ord.render(w)).collect();
        for e in &elements {
            text.push_str(e);
            text.push('\n');
        }
        j["elements"] = json!(elements);
    }
    Ok(Outcome::yes(text, j))
}

fn write_out(path: &Path, json: &Value) -> Result<()> {
    let body = serde_json::to_string_pretty(json).expect("JSON value serializes");
    std::fs::write(path, body + "\n").map_err(io_err)
}

#[allow(clippy::too_many_arguments)]
fn census_cmd(
    env: &Env,
    k: usize,
    m: u128,
    max_len: usize,
    mode: CongruenceMode,
    strategy: CensusStrategy,
    out: Option<&Path>,
) -> Result<Outcome> {
    let r = census_with(&env.alphabet, m, k, max_len, mode, strategy, env.budget)?;
    if let Some(p) = out {
        if p.extension().is_some_and(|e| e == "csv") {
            write_reports_csv(std::slice::from_ref(&r), p).map_err(io_err)?;
        } else {
            r.write_json(p).map_err(io_err)?;
        }
    }
    let mut text = format!(
        "{} classes among {} members (sigma={}, k={k}, m={m}, len<={max_len})\nstabilized {} ({})\n",
        r.class_count, r.member_count, r.params.sigma, r.stabilized, r.stabilization_rule
    );
    if let Some(fc) = &r.formula_comparison {
        text.push_str(&format!(
            "{}: claimed {} = {}, observed {}, {}\n",
            fc.claim,
            fc.formula,
            fc.claimed,
            fc.observed,
            if fc.matches { "match" } else { "mismatch" }
        ));
    }
    text.push_str("representatives:");
    for rep in &r.representatives {
        text.push(' ');
        text.push_str(display_word(rep));
    }
    text.push('\n');
    let json = serde_json::to_value(&r).expect("report serializes");
    Ok(Outcome::yes(text, json))
}

fn verify(claims: &[String], scale: Scale, list: bool, budget: Budget, out: Option<&Path>) -> Result<Outcome> {
    if list {
        let ids = claim_ids();
        return Ok(Outcome::yes(ids.join("\n") + "\n", json!(ids)));
    }
    let ids: Vec<&str> = claims.iter().map(String::as_str).collect();
    let reports = verify_claims(&ids, scale, budget);
    let json = serde_json::to_value(&reports).expect("reports serialize");
    if let Some(p) = out {
        write_out(p, &json)?;
    }
    let mut text = String::new();
    for r in &reports {
        let status = match r.status {
            ClaimStatus::Pass => "PASS",
            ClaimStatus::Fail => "FAIL",
            ClaimStatus::Compare => "COMPARE",
        };
        text.push_str(&format!("{status} {} ({} checked, {} violations)\n", r.id, r.checked, r.violations));
        for w in &r.witnesses {
            text.push_str(&format!("  witness: {w}\n"));
        }
        for c in &r.comparisons {
            text.push_str(&format!("  {}: claimed {} observed {}\n", c.formula, c.claimed, c.observed));
        }
    }
    let ok = reports.iter().all(|r| r.status != ClaimStatus::Fail);
    Ok(Outcome { text, json, affirmative: ok })
}

fn dispatch(cli: &Cli) -> Result<Outcome> {
    let budget = Budget(cli.budget);
    let env = |a: &AlphabetArg| Env::new(&a.alphabet, budget);
    match &cli.command {
        Command::Analyze { word, alphabet, k } => analyze(&env(alphabet)?, word, *k),
        Command::CheckNearly { word, alphabet, k } => check(&env(alphabet)?, word, *k),
        Command::Construct { u, alphabet, order } => construct(&env(alphabet)?, u, order.as_deref()),
        Command::Absent { word, alphabet, k, method } => absent(&env(alphabet)?, word, *k, *method),
        Command::Congruent { w1, w2, alphabet, k, method, mode } => {
            congruent(&env(alphabet)?, w1, w2, *k, *method, (*mode).into())
        }
        Command::AlphaBeta { word, alphabet, k } => alpha_beta(&env(alphabet)?, word, *k),
        Command::Basis { u, alphabet, order, count_only } => {
            basis(&env(alphabet)?, u, order.as_deref(), *count_only)
        }
        Command::Census { alphabet, k, m, max_len, mode, strategy, out } => {
            let e = env(alphabet)?;
            if checked_pow(e.alphabet.sigma(), *k).is_none_or(|t| *m > t) {
                return Err(Error::Validation(format!("deficiency {m} exceeds sigma^k")));
            }
            census_cmd(&e, *k, *m, *max_len, (*mode).into(), (*strategy).into(), out.as_deref())
        }
        Command::Verify { claims, scale, list, out } => {
            let scale = match scale {
                ScaleArg::Quick => Scale::Quick,
                ScaleArg::Full => Scale::Full,
            };
            verify(claims, scale, *list, budget, out.as_deref())
        }
    }
}

/// Parses `args` (including the program name), runs the command, and returns
/// the process exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_YES };
            let rendered = e.render().to_string();
            let sink: &mut dyn Write = if e.use_stderr() { err } else { out };
            let _ = sink.write_all(rendered.as_bytes());
            return code;
        }
    };
    match dispatch(&cli) {
        Ok(o) => {
            let body = if cli.json {
                serde_json::to_string_pretty(&o.json).expect("JSON value serializes") + "\n"
            } else {
                o.text
            };
            let _ = out.write_all(body.as_bytes());
            if o.affirmative {
                EXIT_YES
            } else {
                EXIT_NO
            }
        }
        Err(e) => {
            let code = exit_code(&e);
            if cli.json {
                let kind = if code == EXIT_CAPACITY { "capacity" } else { "usage" };
                let body = json!({"error": e.to_string(), "kind": kind});
                let _ = writeln!(err, "{body}");
            } else {
                let _ = writeln!(err, "error: {e}");
            }
            code
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn call(args: &[&str]) -> (i32, String, String) {
        let mut out = Vec::new();
        let mut err = Vec::new();
        let mut full = vec!["nuniv"];
        full.extend_from_slice(args);
        let code = run(full, &mut out, &mut err);
        (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
    }

    #[test]
    fn documented_examples() {
        let (c, o, _) = call(&["check-nearly", "accbbacab", "-a", "abc", "-k", "3"]);
        assert_eq!((c, o.as_str()), (0, "nearly 3-universal; absent = bcc\n"));
        let (c, o, _) = call(&["construct", "abccab", "-a", "abc"]);
        assert_eq!((c, o.as_str()), (0, "bcbaaccbabcabacbcbaac\n"));
        let (c, o, _) = call(&["congruent", "aabcbccab", "aabcbcab", "-a", "abc", "-k", "3"]);
        assert_eq!((c, o.as_str()), (1, "not congruent\n"));
    }

    #[test]
    fn exit_codes_follow_the_contract() {
        assert_eq!(call(&["check-nearly", "abd", "-a", "abc", "-k", "2"]).0, EXIT_USAGE);
        assert_eq!(call(&["frobnicate"]).0, EXIT_USAGE);
        assert_eq!(call(&["absent", "abcabc", "-a", "abc", "-k", "2", "--method", "notu"]).0, EXIT_USAGE);
        assert_eq!(call(&["--budget", "4", "absent", "ab", "-a", "abc", "-k", "3"]).0, EXIT_CAPACITY);
        assert_eq!(call(&["--help"]).0, EXIT_YES);
    }

    #[test]
    fn order_permutes_construction() {
        let (c, o, _) = call(&["construct", "abbc", "-a", "abc", "--order", "cba"]);
        assert_eq!((c, o.as_str()), (0, "cbbacabcacbba\n"));
        assert_eq!(call(&["construct", "abbc", "-a", "abc", "--order", "abd"]).0, EXIT_USAGE);
    }
}
