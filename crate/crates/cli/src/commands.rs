use std::fmt::{self, Write as _};
use std::ops::RangeInclusive;

use ghz_lhv::lhv::LhvTable;
use ghz_lhv::oracle::{
    ghz_classify, statevector_classify, tableau_evolve, Circuit, OracleKind, StabilizerTableau,
    MAX_STATEVECTOR_QUBITS,
};
use ghz_lhv::protocol::{communication_cost, run_protocol, Partition};
use ghz_lhv::verify::{sweep_joint, sweep_protocol, sweep_tableau, sweep_truncation};
use ghz_lhv::{lhv, Assignment, Classification, PauliString, Phase};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use serde_json::{json, Value};

use crate::{
    ClassifyArgs, Common, OracleArg, ProtocolArgs, TableArgs, TableauArgs, VerifyArgs, VerifyMode,
};

/// Name of the generator behind `--seed`, echoed in every protocol report.
const RNG_NAME: &str = "ChaCha8Rng::seed_from_u64";

const MAX_JOINT_N: usize = 8;
const MAX_PROTOCOL_N: usize = 5;

#[derive(Debug)]
pub struct UsageError(String);

impl fmt::Display for UsageError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl From<ghz_lhv::Error> for UsageError {
    fn from(err: ghz_lhv::Error) -> Self {
        UsageError(err.to_string())
    }
}

fn usage<T>(msg: impl Into<String>) -> Result<T, UsageError> {
    Err(UsageError(msg.into()))
}

pub struct Report {
    pub output: String,
    pub success: bool,
}

#[derive(Serialize, Default)]
struct RunConfig {
    command: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    n: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    n_range: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    observable: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    partition: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    oracle: Option<&'static str>,
    #[serde(skip_serializing_if = "Option::is_none")]
    seed: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    rng: Option<&'static str>,
    #[serde(skip_serializing_if = "Option::is_none")]
    trials: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    mode: Option<&'static str>,
    #[serde(skip_serializing_if = "Option::is_none")]
    circuit: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    evolution: Option<bool>,
    output: &'static str,
}

impl RunConfig {
    fn new(command: &'static str, common: &Common) -> Self {
        RunConfig {
            command,
            output: if common.json { "json" } else { "human" },
            ..Default::default()
        }
    }
}

fn finish(
    common: &Common,
    config: RunConfig,
    results: Value,
    summary: Value,
    human: String,
    success: bool,
) -> Result<Report, UsageError> {
    let output = if common.json {
        let doc = json!({ "config": config, "results": results, "summary": summary });
        let mut text = serde_json::to_string_pretty(&doc).map_err(|e| UsageError(e.to_string()))?;
        text.push('\n');
        text
    } else {
        human
    };
    Ok(Report { output, success })
}

fn classification_json(c: Classification) -> Value {
    match c {
        Classification::Deterministic(v) => json!({ "kind": "deterministic", "value": v }),
        Classification::Random => json!({ "kind": "random" }),
    }
}

fn parse_observable(text: &str, n: usize) -> Result<PauliString, UsageError> {
    let p: PauliString = text.parse()?;
    if p.len() != n {
        return usage(format!("observable {p} has {} letters, expected {n}", p.len()));
    }
    Ok(p)
}

fn check_n(n: usize, max: usize) -> Result<(), UsageError> {
    if n == 0 || n > max {
        usage(format!("--n must be between 1 and {max}, got {n}"))
    } else {
        Ok(())
    }
}

fn table_rows_json(table: &LhvTable) -> Value {
    table
        .rows()
        .iter()
        .map(|r| json!([r.x.to_string(), r.y.to_string(), r.z.to_string()]))
        .collect()
}

fn render_table(out: &mut String, title: &str, table: &LhvTable) {
    let _ = writeln!(out, "== {title} ==");
    let cells: Vec<[String; 3]> = table
        .rows()
        .iter()
        .map(|r| [r.x.to_string(), r.y.to_string(), r.z.to_string()])
        .collect();
    let width = |c: usize| cells.iter().map(|r| r[c].len()).max().unwrap_or(1).max(1);
    let (wx, wy) = (width(0), width(1));
    let _ = writeln!(out, "      {:<wx$} | {:<wy$} | Z", "X", "Y");
    for (k, [x, y, z]) in cells.iter().enumerate() {
        let _ = writeln!(out, "q{:<3}  {x:<wx$} | {y:<wy$} | {z}", k + 1);
    }
}

pub fn table(args: &TableArgs) -> Result<Report, UsageError> {
    check_n(args.n, lhv::MAX_VARS)?;
    let n = args.n;
    let mut steps: Vec<(String, LhvTable)> = Vec::new();
    if args.evolution {
        let mut t = LhvTable::initial(n)?;
        steps.push(("initial".into(), t.clone()));
        t = t.apply_hadamard(1)?;
        steps.push(("H(1)".into(), t.clone()));
        for j in 2..=n {
            t = t.apply_cnot(1, j)?;
            steps.push((format!("CNOT(1,{j})"), t.clone()));
        }
    } else {
        steps.push(("GHZ".into(), LhvTable::ghz(n)?));
    }
    let mut human = String::new();
    for (k, (title, table)) in steps.iter().enumerate() {
        if k > 0 {
            human.push('\n');
        }
        render_table(&mut human, title, table);
    }
    let results = json!({
        "tables": steps
            .iter()
            .map(|(title, t)| json!({ "step": title, "rows": table_rows_json(t) }))
            .collect::<Vec<_>>()
    });
    let summary = json!({ "n": n, "steps": steps.len() });
    let mut config = RunConfig::new("table", &args.common);
    config.n = Some(n);
    config.evolution = Some(args.evolution);
    finish(&args.common, config, results, summary, human, true)
}

fn oracle_kind(arg: OracleArg) -> OracleKind {
    match arg {
        OracleArg::Analytic => OracleKind::Analytic,
        OracleArg::Statevector => OracleKind::StateVector,
        OracleArg::Tableau => OracleKind::Tableau,
    }
}

pub fn classify(args: &ClassifyArgs) -> Result<Report, UsageError> {
    let kind = oracle_kind(args.oracle);
    let max = if kind == OracleKind::StateVector {
        MAX_STATEVECTOR_QUBITS
    } else {
        lhv::MAX_VARS
    };
    check_n(args.n, max)?;
    let obs = parse_observable(&args.observable, args.n)?;
    if !obs.is_observable() {
        return usage(format!("{obs} is not Hermitian; use a + or - sign"));
    }
    let model = LhvTable::ghz(args.n)?.classify_joint(&obs)?;
    let oracle = match kind {
        OracleKind::Analytic => ghz_classify(&obs)?,
        OracleKind::StateVector => statevector_classify(&obs, args.n)?,
        OracleKind::Tableau => tableau_evolve(&Circuit::ghz(args.n)?)?.classify(&obs)?,
    };
    let agree = model == oracle;
    let human = format!(
        "observable:  {obs}\nlhv:         {model}\n{:<13}{oracle}\n{}\n",
        format!("{}:", kind.name()),
        if agree { "agree" } else { "DISAGREE" }
    );
    let results = json!({
        "observable": obs.to_string(),
        "lhv": classification_json(model),
        "oracle": { "name": kind.name(), "classification": classification_json(oracle) },
    });
    let summary = json!({ "agree": agree });
    let mut config = RunConfig::new("classify", &args.common);
    config.n = Some(args.n);
    config.observable = Some(args.observable.clone());
    config.oracle = Some(kind.name());
    finish(&args.common, config, results, summary, human, agree)
}

fn sign_str(v: i8) -> &'static str {
    if v > 0 {
        "+1"
    } else {
        "-1"
    }
}

fn signs(values: &[i8]) -> String {
    values.iter().map(|&v| sign_str(v)).collect::<Vec<_>>().join(",")
}

fn phase_str(p: Phase) -> &'static str {
    match p.exponent() {
        0 => "1",
        1 => "i",
        2 => "-1",
        _ => "-i",
    }
}

pub fn protocol(args: &ProtocolArgs) -> Result<Report, UsageError> {
    check_n(args.n, lhv::MAX_VARS)?;
    if args.trials == 0 {
        return usage("--trials must be at least 1");
    }
    let n = args.n;
    let obs = parse_observable(&args.observable, n)?;
    if obs.phase() != Phase::ONE {
        return usage("local measurement choices take no sign prefix");
    }
    let partition = match &args.partition {
        Some(text) => Partition::parse(text, n)?,
        None => Partition::singletons(n),
    };
    let table = LhvTable::ghz(n)?;
    let joint = table.classify_joint(&obs)?;
    let mut rng = ChaCha8Rng::seed_from_u64(args.seed);

    let mut human = format!(
        "observable {obs}, partition {partition}, {} parties, seed {}\n",
        partition.len(),
        args.seed
    );
    let mut trials = Vec::with_capacity(args.trials);
    let (mut plus, mut consistent) = (0usize, true);
    for trial in 1..=args.trials {
        let a = Assignment::random(n, &mut rng)?;
        let run = run_protocol(&table, &partition, &obs, &a)?;
        let product = run.product();
        if product == 1 {
            plus += 1;
        }
        if let Classification::Deterministic(v) = joint {
            consistent &= product == v;
        }
        let _ = writeln!(
            human,
            "trial {trial}: R=[{}] outcomes=[{}] flip={} product={}",
            signs(&a.values()),
            signs(&run.outcomes()),
            if run.flipped() { "yes" } else { "no" },
            sign_str(product)
        );
        trials.push(json!({
            "trial": trial,
            "assignment": a.values(),
            "outcomes": run.outcomes(),
            "q": run.reports.iter().map(|r| phase_str(r.q)).collect::<Vec<_>>(),
            "messages": run.transcript.messages.iter()
                .map(|m| json!({ "sender": m.sender, "q": phase_str(m.q) }))
                .collect::<Vec<_>>(),
            "flip_product": phase_str(run.transcript.flip_product),
            "flipped": run.flipped(),
            "product": product,
        }));
    }
    let bits = communication_cost(&partition);
    let minus = args.trials - plus;
    let _ = writeln!(
        human,
        "joint: {joint}; product +1 in {plus}/{t}, -1 in {minus}/{t}; bits per run: {bits}; {}",
        if consistent { "consistent" } else { "INCONSISTENT" },
        t = args.trials
    );
    let summary = json!({
        "joint": classification_json(joint),
        "bits": bits,
        "product_plus": plus,
        "product_minus": minus,
        "frequency_plus": plus as f64 / args.trials as f64,
        "consistent": consistent,
    });
    let mut config = RunConfig::new("protocol", &args.common);
    config.n = Some(n);
    config.observable = Some(args.observable.clone());
    config.partition = Some(partition.to_string());
    config.seed = Some(args.seed);
    config.rng = Some(RNG_NAME);
    config.trials = Some(args.trials);
    finish(&args.common, config, json!({ "trials": trials }), summary, human, consistent)
}

fn parse_range(text: &str) -> Result<RangeInclusive<usize>, UsageError> {
    let bad = || UsageError(format!("cannot parse qubit range {text:?}"));
    let parse = |s: &str| s.trim().parse::<usize>().map_err(|_| bad());
    let range = if let Some((a, b)) = text.split_once("..=") {
        parse(a)?..=parse(b)?
    } else if let Some((a, b)) = text.split_once("..") {
        parse(a)?..=parse(b)?
    } else if let Some((a, b)) = text.split_once('-') {
        parse(a)?..=parse(b)?
    } else {
        let n = parse(text)?;
        n..=n
    };
    if range.is_empty() || *range.start() == 0 {
        return Err(bad());
    }
    Ok(range)
}

pub fn verify(args: &VerifyArgs) -> Result<Report, UsageError> {
    let (mode_name, default_range, max) = match args.mode {
        VerifyMode::Joint => ("joint", "2..8", MAX_JOINT_N),
        VerifyMode::Protocol => ("protocol", "2..5", MAX_PROTOCOL_N),
        VerifyMode::CnotRules => ("cnot-rules", "2", usize::MAX),
        VerifyMode::Tableau => ("tableau", "2..10", lhv::MAX_VARS),
    };
    let range_text = args.n.clone().unwrap_or_else(|| default_range.into());
    let range = parse_range(&range_text)?;
    if *range.end() > max {
        return usage(format!("{mode_name} verification supports n ≤ {max}"));
    }
    if args.partition.is_some() && !matches!(args.mode, VerifyMode::Protocol) {
        return usage("--partition only applies to --mode protocol");
    }

    let mut human = String::new();
    let mut results = Vec::new();
    let mut passed = true;
    let mut checks = 0usize;
    match args.mode {
        VerifyMode::Joint => {
            for n in range.clone() {
                let s = sweep_joint(n, true)?;
                passed &= s.passed();
                checks += s.checked;
                let _ = writeln!(
                    human,
                    "joint n={n}: {}/{} agree (lhv, analytic, tableau, statevector); certain +1: {}, certain -1: {} of {} signed",
                    s.agreed,
                    s.checked,
                    s.plus_certain,
                    s.minus_certain,
                    2 * s.checked
                );
                results.push(json!({
                    "n": n,
                    "checked": s.checked,
                    "agreed": s.agreed,
                    "certain_plus": s.plus_certain,
                    "certain_minus": s.minus_certain,
                    "passed": s.passed(),
                    "witnesses": s.disagreements.iter().map(|d| json!({
                        "observable": d.observable.to_string(),
                        "lhv": classification_json(d.lhv),
                        "analytic": classification_json(d.analytic),
                        "tableau": classification_json(d.tableau),
                        "statevector": d.statevector.map(classification_json),
                    })).collect::<Vec<_>>(),
                }));
            }
        }
        VerifyMode::Protocol => {
            if args.partition.is_some() && range.start() != range.end() {
                return usage("--partition needs a single --n");
            }
            for n in range.clone() {
                let partitions = match (&args.partition, args.all_partitions) {
                    (Some(text), _) => vec![Partition::parse(text, n)?],
                    (None, true) => Partition::all(n),
                    (None, false) => vec![Partition::singletons(n)],
                };
                let s = sweep_protocol(n, &partitions)?;
                let t = sweep_truncation(n)?;
                let ok = s.passed() && t.witness.is_none();
                passed &= ok;
                checks += s.runs;
                let _ = writeln!(
                    human,
                    "protocol n={n}: {} partition(s) x {} observables x {} assignments, {}/{} consistent, bit counts {}; truncation {}/{}",
                    s.partitions,
                    s.observables,
                    1usize << n,
                    s.consistent,
                    s.partitions * s.observables,
                    if s.bit_counts_ok { "ok" } else { "WRONG" },
                    t.agreed,
                    t.checked
                );
                results.push(json!({
                    "n": n,
                    "partitions": s.partitions,
                    "observables": s.observables,
                    "assignments": 1usize << n,
                    "runs": s.runs,
                    "consistent": s.consistent,
                    "bit_counts_ok": s.bit_counts_ok,
                    "truncation_checked": t.checked,
                    "truncation_agreed": t.agreed,
                    "passed": ok,
                    "witnesses": s.failures.iter().map(|f| json!({
                        "observable": f.observable.to_string(),
                        "partition": f.partition.to_string(),
                        "joint": classification_json(f.joint),
                        "assignment": f.witness.map(|a| a.values()),
                    })).collect::<Vec<_>>(),
                }));
            }
        }
        VerifyMode::CnotRules => {
            let report = ghz_lhv::verify::cnot_rules();
            passed = report.passed();
            checks = report.relations.iter().map(|r| r.configurations_checked).sum();
            for r in &report.relations {
                let _ = writeln!(
                    human,
                    "{} -> {}: {}{}",
                    r.before,
                    r.after,
                    if r.holds_under_precondition { "holds" } else { "FAILS" },
                    match (r.special, r.violation_without_precondition.is_some()) {
                        (true, true) => " (needs XYZ=i; falsified without it)",
                        (true, false) => " (needs XYZ=i; NOT falsified without it)",
                        _ => "",
                    }
                );
                results.push(json!({
                    "before": r.before.to_string(),
                    "after": r.after.to_string(),
                    "special": r.special,
                    "configurations": r.configurations_checked,
                    "holds_under_precondition": r.holds_under_precondition,
                    "falsified_without_precondition": r.violation_without_precondition.is_some(),
                }));
            }
            let _ = writeln!(
                human,
                "{}/15 relations hold under XYZ=i; {}/4 special relations falsified without it",
                report.holding_under_precondition(),
                report.special_falsified()
            );
        }
        VerifyMode::Tableau => {
            for n in range.clone() {
                let s = sweep_tableau(n)?;
                passed &= s.passed();
                checks += 1;
                let gens: Vec<String> = s.generators.iter().map(|g| g.to_string()).collect();
                let _ = writeln!(
                    human,
                    "tableau n={n}: {} {}",
                    StabilizerTableau::from_generators(s.generators.clone())?,
                    if s.passed() { "ok" } else { "MISMATCH" }
                );
                results.push(json!({
                    "n": n,
                    "generators": gens,
                    "expected": s.expected.iter().map(|g| g.to_string()).collect::<Vec<_>>(),
                    "commuting_and_independent": s.commuting_and_independent,
                    "passed": s.passed(),
                }));
            }
        }
    }
    let _ = writeln!(human, "{}", if passed { "PASS" } else { "FAIL" });
    let summary = json!({ "passed": passed, "checks": checks });
    let mut config = RunConfig::new("verify", &args.common);
    config.mode = Some(mode_name);
    if !matches!(args.mode, VerifyMode::CnotRules) {
        config.n_range = Some(format!("{}..={}", range.start(), range.end()));
    }
    config.partition = args
        .partition
        .clone()
        .or_else(|| args.all_partitions.then(|| "all".to_string()));
    finish(&args.common, config, Value::Array(results), summary, human, passed)
}

pub fn tableau(args: &TableauArgs) -> Result<Report, UsageError> {
    check_n(args.n, ghz_lhv::pauli::MAX_QUBITS)?;
    let circuit = match &args.circuit {
        Some(text) => Circuit::parse(text, args.n)?,
        None => Circuit::ghz(args.n)?,
    };
    let mut tab = StabilizerTableau::initial(args.n)?;
    let mut steps = vec![("initial".to_string(), tab.clone())];
    for gate in circuit.gates() {
        tab = tab.apply(gate)?;
        if args.evolution {
            steps.push((gate.to_string(), tab.clone()));
        }
    }
    if !args.evolution {
        steps = vec![("final".to_string(), tab.clone())];
    }
    let mut human = format!("circuit: {circuit}\n");
    for (label, t) in &steps {
        let _ = writeln!(human, "{label}: {t}");
    }
    let results = json!({
        "steps": steps.iter().map(|(label, t)| json!({
            "step": label,
            "generators": t.generators().iter().map(|g| g.to_string()).collect::<Vec<_>>(),
        })).collect::<Vec<_>>()
    });
    let summary = json!({
        "gates": circuit.gates().len(),
        "commuting": tab.pairwise_commuting(),
        "rank": tab.rank(),
    });
    let mut config = RunConfig::new("tableau", &args.common);
    config.n = Some(args.n);
    config.circuit = Some(circuit.to_string());
    config.evolution = Some(args.evolution);
    finish(&args.common, config, results, summary, human, true)
}
