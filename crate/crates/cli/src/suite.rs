//! `verify-lcm --random`: the seeded pair suite on a worker pool.

use clap::Args;
use rayon::prelude::*;
use serde_json::{json, Value};

use rslab::suite::random_pair;
use rslab::{exceptional_poles, verify_theorem_1_2};

use crate::{report, Failure, Output};

#[derive(Args, Debug)]
pub struct VerifyArgs {
    /// First principal series (file or inline).
    #[arg(long)]
    pub pi1: Option<String>,
    /// Second principal series (file or inline).
    #[arg(long)]
    pub pi2: Option<String>,
    /// Run the seeded random suite at rank n, written `n=3` or `3`.
    #[arg(long, value_name = "n=N", conflicts_with_all = ["pi1", "pi2"])]
    pub random: Option<String>,
    /// Number of random pairs.
    #[arg(long, default_value_t = 1000)]
    pub count: u64,
    /// Suite seed; each case draws from its own stream under it.
    #[arg(long, default_value_t = 42)]
    pub seed: u64,
    /// Worker threads; 0 picks one per core.
    #[arg(long, env = "RSLAB_JOBS", default_value_t = 0)]
    pub jobs: usize,
    /// Only the verdict, not the contribution grid.
    #[arg(long)]
    pub quiet: bool,
}

fn parse_rank(arg: &str) -> Result<usize, Failure> {
    let digits = arg.strip_prefix("n=").unwrap_or(arg);
    match digits.trim().parse::<usize>() {
        Ok(n) if n >= 1 => Ok(n),
        _ => Err(Failure::Input(format!(
            "--random: expected n=N with N >= 1, got {arg:?}"
        ))),
    }
}

struct CaseResult {
    index: u64,
    equal: bool,
    exceptional: bool,
    failure: Option<Value>,
}

fn run_case(seed: u64, n: usize, index: u64) -> CaseResult {
    let case = random_pair(seed, n, index);
    match verify_theorem_1_2(&case.pi1, &case.pi2) {
        Ok(r) => CaseResult {
            index,
            equal: r.equal,
            exceptional: !exceptional_poles(&case.pi1, &case.pi2)
                .map(|p| p.is_empty())
                .unwrap_or(true),
            failure: (!r.equal).then(|| json!({"index": index, "report": report::report_json(&r)})),
        },
        Err(e) => CaseResult {
            index,
            equal: false,
            exceptional: false,
            failure: Some(json!({
                "index": index,
                "pi1": case.pi1.to_string(),
                "pi2": case.pi2.to_string(),
                "error": e.to_string(),
            })),
        },
    }
}

pub fn run_random(args: &VerifyArgs) -> Result<Output, Failure> {
    let n = parse_rank(args.random.as_deref().unwrap_or_default())?;
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(args.jobs)
        .build()
        .map_err(|e| Failure::Input(format!("--jobs: {e}")))?;
    // Each case draws from its own stream, so results do not depend on scheduling.
    let results: Vec<CaseResult> = pool.install(|| {
        (0..args.count)
            .into_par_iter()
            .map(|i| run_case(args.seed, n, i))
            .collect()
    });

    let equal = results.iter().filter(|r| r.equal).count();
    let exceptional = results.iter().filter(|r| r.exceptional).count();
    let failures: Vec<Value> = results.iter().filter_map(|r| r.failure.clone()).collect();
    debug_assert!(results.windows(2).all(|w| w[0].index < w[1].index));

    let mut text = format!(
        "verify-lcm random n={n} seed={}: {equal}/{} equal, {exceptional} with nonempty P_ex",
        args.seed, args.count
    );
    for f in &failures {
        text.push_str(&format!("\n  FAILED case {}: {}", f["index"], f));
    }
    Ok(Output {
        json: json!({
            "command": "verify-lcm",
            "mode": "random",
            "n": n,
            "count": args.count,
            "seed": args.seed,
            "equal": equal,
            "nonempty_p_ex": exceptional,
            "failures": failures,
        }),
        text,
        verified_false: equal as u64 != args.count,
    })
}
