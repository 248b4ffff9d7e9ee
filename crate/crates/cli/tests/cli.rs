use std::io::{BufRead, BufReader, Write};
use std::path::Path;
use std::process::{Command, Output, Stdio};

use serde_json::{json, Value};

use schedrl_core::env::{parse_env_spec, Env, EnvConfig};
use schedrl_core::scenario::ScenarioConfig;

fn schedrl(args: &[&str]) -> Output {
    let out = Command::new(env!("CARGO_BIN_EXE_schedrl"))
        .args(args)
        .output()
        .expect("binary runs");
    assert!(
        out.status.success(),
        "schedrl {args:?} failed:\n{}",
        String::from_utf8_lossy(&out.stderr)
    );
    out
}

fn p(path: &Path) -> &str {
    path.to_str().unwrap()
}

fn csv_rows(path: &Path) -> (Vec<String>, Vec<Vec<String>>) {
    let mut reader = csv::Reader::from_path(path).unwrap();
    let header = reader.headers().unwrap().iter().map(String::from).collect();
    let rows = reader
        .records()
        .map(|r| r.unwrap().iter().map(String::from).collect())
        .collect();
    (header, rows)
}

#[test]
fn train_eval_transfer_plot_pipeline() {
    let dir = tempfile::tempdir().unwrap();
    let runs = dir.path().join("runs");
    schedrl(&["train", "--scenario", "1", "--seeds", "1,2", "--steps", "200", "--out", p(&runs)]);
    for f in ["curve_s1_seed1.csv", "curve_s1_seed2.csv", "curve_s1_aggregate.csv", "agent_s1_seed1.params"] {
        assert!(runs.join(f).is_file(), "missing {f}");
    }
    let manifest: Value =
        serde_json::from_str(&std::fs::read_to_string(runs.join("train_s1_manifest.json")).unwrap()).unwrap();
    assert_eq!(manifest["command"], "train");
    assert_eq!(manifest["config"]["run"]["ppo"]["total_steps"], 200);
    assert_eq!(manifest["config"]["outcomes"].as_array().unwrap().len(), 2);

    let params = runs.join("agent_s1_seed1.params");
    let report = dir.path().join("eval.csv");
    let agent_spec = format!("agent:{}", p(&params));
    let out = schedrl(&[
        "eval", "--policy", &format!("random,sjf,{agent_spec}"), "--scenarios", "1,2", "--trials", "20", "--out",
        p(&report),
    ]);
    assert!(String::from_utf8_lossy(&out.stdout).contains("mean slowdown"));
    let (header, rows) = csv_rows(&report);
    assert_eq!(&header[..3], ["scenario", "policy", "variant"]);
    assert_eq!(rows.len(), 6);
    assert!(rows.iter().any(|r| r[1] == "agent:agent_s1_seed1"));
    let (_, welch) = csv_rows(&dir.path().join("eval_welch.csv"));
    assert_eq!(welch.len(), 6, "three pairs per scenario");
    let manifest: Value =
        serde_json::from_str(&std::fs::read_to_string(dir.path().join("eval_manifest.json")).unwrap()).unwrap();
    assert_eq!(manifest["config"]["trials"], 20);

    // same seed, same numbers
    let again = dir.path().join("again.csv");
    schedrl(&[
        "eval", "--policy", &format!("random,sjf,{agent_spec}"), "--scenarios", "1,2", "--trials", "20", "--out",
        p(&again),
    ]);
    assert_eq!(csv_rows(&report).1, csv_rows(&again).1);

    let transfer = dir.path().join("transfer.csv");
    let specialist = format!("1={}", p(&params));
    let out = schedrl(&[
        "transfer", "--params", p(&params), "--scenarios", "all", "--specialist", &specialist, "--trials", "10",
        "--out", p(&transfer),
    ]);
    assert!(String::from_utf8_lossy(&out.stdout).contains("beats the specialist in"));
    assert_eq!(csv_rows(&transfer).1.len(), 10);

    let plots = dir.path().join("plots");
    let out = schedrl(&[
        "plot",
        p(&runs.join("curve_s1_aggregate.csv")),
        p(&report),
        p(&transfer),
        "--out-dir",
        p(&plots),
    ]);
    assert_eq!(String::from_utf8_lossy(&out.stdout).lines().count(), 3);
    for f in ["curve_s1_aggregate.svg", "eval.svg", "transfer.svg"] {
        let svg = std::fs::read_to_string(plots.join(f)).unwrap();
        assert!(svg.starts_with("<svg"), "{f}");
    }
}

#[test]
fn config_file_supplies_flags_and_command_line_wins() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("eval.conf");
    std::fs::write(&cfg, "# desk run\npolicy = fcfs\ntrials = 7\nscenarios = 3\nstochastic = false\n").unwrap();
    let out_a = dir.path().join("a.csv");
    schedrl(&["--config", p(&cfg), "eval", "--out", p(&out_a)]);
    let (_, rows) = csv_rows(&out_a);
    assert_eq!(rows.len(), 1);
    assert_eq!((rows[0][0].as_str(), rows[0][1].as_str(), rows[0][3].as_str()), ("3", "fcfs", "7"));

    let out_b = dir.path().join("b.csv");
    schedrl(&["eval", "--config", p(&cfg), "--trials", "5", "--out", p(&out_b)]);
    assert_eq!(csv_rows(&out_b).1[0][3], "5");

    let bad = dir.path().join("bad.conf");
    std::fs::write(&bad, "just words\n").unwrap();
    let out = Command::new(env!("CARGO_BIN_EXE_schedrl"))
        .args(["eval", "--config", p(&bad)])
        .output()
        .unwrap();
    assert!(!out.status.success());
    assert!(String::from_utf8_lossy(&out.stderr).contains("expected key = value"));
}

#[test]
fn bad_arguments_fail_cleanly() {
    for args in [
        &["eval", "--policy", "nonsense"][..],
        &["eval", "--policy", "fcfs", "--scenarios", "11"],
        &["eval", "--policy", "fcfs", "--env", "rep=vector"],
        &["serve", "--env", "W=0"],
    ] {
        let out = Command::new(env!("CARGO_BIN_EXE_schedrl")).args(args).output().unwrap();
        assert!(!out.status.success(), "{args:?} should fail");
        assert!(!out.stderr.is_empty());
    }
}

struct Client {
    child: std::process::Child,
    stdin: std::process::ChildStdin,
    stdout: BufReader<std::process::ChildStdout>,
}

impl Client {
    fn spawn(env: &str) -> Self {
        let mut child = Command::new(env!("CARGO_BIN_EXE_schedrl"))
            .args(["serve", "--env", env, "--transport", "stdio"])
            .stdin(Stdio::piped())
            .stdout(Stdio::piped())
            .spawn()
            .unwrap();
        let stdin = child.stdin.take().unwrap();
        let stdout = BufReader::new(child.stdout.take().unwrap());
        Self { child, stdin, stdout }
    }

    fn raw(&mut self, line: &str) -> Value {
        writeln!(self.stdin, "{line}").unwrap();
        self.stdin.flush().unwrap();
        let mut reply = String::new();
        self.stdout.read_line(&mut reply).unwrap();
        serde_json::from_str(&reply).unwrap()
    }

    fn send(&mut self, msg: Value) -> Value {
        self.raw(&msg.to_string())
    }

    fn close(mut self) {
        assert_eq!(self.send(json!({"id": 0, "op": "close"}))["closed"], true);
        assert!(self.child.wait().unwrap().success());
    }
}

fn floats(v: &Value) -> Vec<f64> {
    v.as_array().unwrap().iter().map(|x| x.as_f64().unwrap()).collect()
}

#[test]
fn served_trajectory_matches_in_process_env() {
    let spec = "rep=compact,trans=sparse,rew=window,scenario=4";
    let mut client = Client::spawn(spec);
    let s = client.send(json!({"id": 1, "op": "spec"}));
    assert_eq!(s["version"], "v1");
    assert_eq!(s["shape"], json!([121]));
    assert_eq!(s["actions"], 11);

    let (variant, scenario) = parse_env_spec(spec).unwrap();
    let mut env = Env::new(EnvConfig::new(variant, ScenarioConfig::get(scenario.unwrap()).unwrap()).unwrap()).unwrap();
    let mut seed = 100u64;
    let mut id = 2u64;
    let reset = |client: &mut Client, env: &mut Env, seed: u64, id: u64| {
        let r = client.send(json!({"id": id, "op": "reset", "seed": seed}));
        assert_eq!(r["id"], id);
        assert_eq!(floats(&r["observation"]["data"]), env.reset(seed).unwrap().into_vec());
    };
    reset(&mut client, &mut env, seed, id);
    for step in 0..1000u64 {
        id += 1;
        let action = ((step * 7 + step / 3) % 11) as usize;
        let remote = client.send(json!({"id": id, "op": "step", "action": action}));
        let local = env.step(action).unwrap();
        assert_eq!(remote["id"], id);
        assert_eq!(floats(&remote["observation"]["data"]), local.observation.as_slice());
        assert_eq!(remote["reward"].as_f64().unwrap().to_bits(), local.reward.to_bits());
        assert_eq!(remote["done"], local.done);
        assert_eq!(remote["info"]["sim_steps"], local.info.sim_steps);
        assert_eq!(remote["info"]["scheduled"], json!(local.info.scheduled));
        if local.done {
            let after = client.send(json!({"id": id, "op": "step", "action": 0}));
            assert!(after["error"].as_str().unwrap().contains("episode"));
            seed += 1;
            id += 1;
            reset(&mut client, &mut env, seed, id);
        }
    }
    client.close();
}

#[test]
fn protocol_errors_keep_the_session_open() {
    let mut client = Client::spawn("rep=image,trans=dense,rew=all,H=20,scenario=1");
    let s = client.send(json!({"id": 1, "op": "spec"}));
    assert_eq!(s["shape"], json!([20, 10 + 10 * 10 + 1]));

    let early = client.send(json!({"id": 2, "op": "step", "action": 0}));
    assert_eq!(early["error"], "reset required before step");
    assert_eq!(early["id"], 2);

    let junk = client.raw("{not json");
    assert!(junk["error"].as_str().unwrap().starts_with("malformed request"));
    let unknown = client.send(json!({"id": 3, "op": "step", "action": 0, "extra": 1}));
    assert!(unknown["error"].as_str().unwrap().starts_with("malformed request"));
    assert_eq!(unknown["id"], 3);
    let no_seed = client.send(json!({"id": 4, "op": "reset"}));
    assert!(no_seed["error"].is_string());

    let r = client.send(json!({"id": 5, "op": "reset", "seed": 9}));
    assert_eq!(r["observation"]["shape"], json!([20, 111]));
    let bad = client.send(json!({"id": 6, "op": "step", "action": 99}));
    assert!(bad["error"].is_string());
    let ok = client.send(json!({"id": 7, "op": "step", "action": 10}));
    assert_eq!(ok["info"]["sim_steps"], 1);
    client.close();
}
