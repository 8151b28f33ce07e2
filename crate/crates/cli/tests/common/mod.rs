#![allow(dead_code)]

use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;

pub fn bin() -> Command {
    let mut c = Command::new(env!("CARGO_BIN_EXE_burchcx"));
    c.env_remove("BURCHCX_CACHE_DIR");
    c
}

pub fn specs() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/specs")
}

pub fn spec(name: &str) -> PathBuf {
    specs().join(name)
}

/// The documents reproducing the worked examples.
pub const EXAMPLE_SPECS: &[&str] = &[
    "square_zero_b1.spec",
    "square_zero_b2.spec",
    "square_zero_b3.spec",
    "axes_b2.spec",
    "axes_b3.spec",
    "axes_b4.spec",
    "complete_intersection.spec",
];

pub fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

pub fn code(o: &Output) -> i32 {
    o.status.code().unwrap_or(-1)
}

pub fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

pub fn stderr(o: &Output) -> String {
    String::from_utf8_lossy(&o.stderr).into_owned()
}

/// The report text before its trailing timing block.
pub fn without_timing(report: &str) -> &str {
    let cut = report.find("\n  \"timing\": {").expect("report has a timing block");
    &report[..cut]
}

fn text(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        Value::Null => "NA".into(),
        other => other.to_string(),
    }
}

fn analysis_value(a: &Value, quantity: &str) -> Option<String> {
    match quantity {
        "complexity" => Some(text(&a["complexity"])),
        "curvature" => Some(text(&a["curvature"]["value"])),
        "analysis_status" => Some(text(&a["status"])),
        _ => None,
    }
}

/// The JSON value a TSV row claims to carry.
fn lookup(task: &Value, quantity: &str, n: Option<usize>, degree: Option<&str>) -> Option<String> {
    let r = &task["result"];
    if quantity == "error" {
        return Some(text(&task["error"]).replace(['\t', '\n'], " "));
    }
    if quantity == "status" && n.is_none() {
        return Some(text(&task["status"]));
    }
    let op = r["op"].as_str()?;
    let seq = |key: &str| -> Option<String> {
        let n = n?;
        match degree {
            None => Some(text(&r[key][n])),
            Some(d) => Some(text(&r[if key == "betti" { "graded" } else { "twists" }][n][d])),
        }
    };
    match (op, quantity) {
        ("betti", "betti") => seq("betti"),
        ("resolve", "rank") => seq("ranks"),
        ("bass", "bass") => Some(text(&r["bass"][n?])),
        ("betti" | "resolve" | "bass", "status") => Some(text(&r["status"][n?])),
        ("betti" | "bass", q) => analysis_value(&r["analysis"], q),
        ("tor" | "ext", q) => {
            if let Some(q) = q.strip_prefix("mu_") {
                return analysis_value(&r["mu_analysis"], q);
            }
            let row = &r["degrees"][n?];
            match q {
                "dim" => Some(text(&row["dims"][degree?])),
                "mu" | "length" | "annihilator" | "status" => Some(text(&row[q])),
                _ => None,
            }
        }
        ("invariant", "prefix") => Some(text(&r["verdict"]["analysis"]["prefix"][n?])),
        ("invariant", "value") => Some(text(&r["value"])),
        ("invariant", q) => analysis_value(&r["verdict"]["analysis"], q),
        ("burch", "verdict") => Some(text(&r["certificate"]["verdict"])),
        ("burch", "witness") => Some(text(&r["certificate"]["witness"]["element"])),
        ("depth", "depth") => Some(text(&r["depth"]["value"])),
        _ => None,
    }
}

/// Checks every TSV row against the JSON report and that every task appears.
pub fn tsv_matches_json(json: &str, tsv: &str) -> Result<usize, String> {
    let report: Value = serde_json::from_str(json).map_err(|e| e.to_string())?;
    let tasks = report["tasks"].as_array().ok_or("no tasks array")?;
    let mut lines = tsv.lines();
    if lines.next() != Some("task\top\tquantity\tn\tdegree\tvalue") {
        return Err("bad TSV header".into());
    }
    let mut rows = 0;
    let mut seen = vec![false; tasks.len()];
    for line in lines {
        let cols: Vec<&str> = line.split('\t').collect();
        let [task, op, quantity, n, degree, value] = cols[..] else { return Err(format!("bad row {line:?}")) };
        let i: usize = task.parse().map_err(|_| format!("bad task index in {line:?}"))?;
        let t = tasks.get(i).ok_or_else(|| format!("no task {i}"))?;
        let json_op = t["result"]["op"].as_str().unwrap_or("error");
        if op != json_op {
            return Err(format!("op {op} vs {json_op}"));
        }
        let n = if n == "-" { None } else { Some(n.parse::<usize>().map_err(|_| format!("bad n in {line:?}"))?) };
        let degree = if degree == "-" { None } else { Some(degree) };
        let expected = lookup(t, quantity, n, degree).ok_or_else(|| format!("no JSON value for {line:?}"))?;
        if expected != value {
            return Err(format!("row {line:?}: JSON has {expected:?}"));
        }
        seen[i] = true;
        rows += 1;
    }
    if let Some(i) = seen.iter().position(|s| !s) {
        return Err(format!("task {i} has no TSV rows"));
    }
    Ok(rows)
}
