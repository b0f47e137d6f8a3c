//! Acceptance suite, CLI criterion: byte-deterministic round-trips, exit
//! codes, and the golden Heisenberg curvature in both output formats.

use std::process::{Command, Output};

fn randers(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_randers"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn criterion(name: &str, body: impl FnOnce() -> Result<String, String>) {
    match body() {
        Ok(detail) => println!("ACCEPTANCE {name}: PASS ({detail})"),
        Err(msg) => {
            println!("ACCEPTANCE {name}: FAIL ({msg})");
            panic!("{name} failed: {msg}");
        }
    }
}

fn ensure(cond: bool, msg: impl Fn() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

#[test]
fn criterion_9_cli_round_trips() {
    criterion("C9 cli round-trips", || {
        let dir = tempfile::tempdir().map_err(|e| e.to_string())?;
        let catalog_args: Vec<(&str, Vec<&str>)> = vec![
            ("heisenberg", vec!["--lambda", "1", "--c", "0.3"]),
            ("almost_abelian", vec!["--n", "3", "--xi", "0.4"]),
            ("abelian", vec!["--n", "3", "--x", "0.2,0,0"]),
            ("su2_plus_line", vec!["--c", "0.3"]),
        ];

        for (name, params) in &catalog_args {
            let spec = dir.path().join(format!("{name}.json"));
            let spec_str = spec.to_str().unwrap();

            // catalog emission is deterministic
            let mut args = vec!["catalog", name];
            args.extend(params.iter().copied());
            let first = randers(&[args.clone(), vec!["--emit", spec_str]].concat());
            ensure(first.status.success(), || {
                format!("{name}: catalog emit failed: {first:?}")
            })?;
            let bytes_a = std::fs::read(&spec).map_err(|e| e.to_string())?;
            let second = randers(&args);
            ensure(second.status.success(), || format!("{name}: catalog stdout failed"))?;
            // stdout appends a newline to the same document
            ensure(second.stdout.strip_suffix(b"\n") == Some(bytes_a.as_slice()), || {
                format!("{name}: emitted file differs from stdout form")
            })?;

            // validate accepts the emitted file
            let v = randers(&["validate", spec_str]);
            ensure(v.status.code() == Some(0), || {
                format!("{name}: validate exited {:?}", v.status.code())
            })?;

            // report is byte-deterministic in both formats
            for format in ["json", "table"] {
                let r1 = randers(&["report", spec_str, "--format", format]);
                let r2 = randers(&["report", spec_str, "--format", format]);
                ensure(r1.status.success() && r2.status.success(), || {
                    format!("{name}: report --format {format} failed")
                })?;
                ensure(r1.stdout == r2.stdout, || {
                    format!("{name}: report --format {format} is not byte-deterministic")
                })?;
            }
        }

        // emitted heisenberg reproduces the golden sectional values in
        // both formats
        let spec = dir.path().join("heisenberg.json");
        let spec_str = spec.to_str().unwrap();
        let json_out = randers(&["report", spec_str, "--format", "json"]);
        let doc: serde_json::Value =
            serde_json::from_slice(&json_out.stdout).map_err(|e| e.to_string())?;
        let gx = doc["sectional"]["gx"]
            .as_array()
            .ok_or("missing sectional gx block")?;
        let kxy = gx
            .iter()
            .find(|e| e["label_i"] == "x" && e["label_j"] == "y")
            .ok_or("missing K(x,y)")?["value"]
            .as_f64()
            .ok_or("K(x,y) not a number")?;
        ensure((kxy + 0.75).abs() < 1e-9, || {
            format!("json K(x,y) = {kxy} != -0.75")
        })?;
        let table_out = randers(&["report", spec_str, "--format", "table"]);
        let table = String::from_utf8(table_out.stdout).map_err(|e| e.to_string())?;
        ensure(
            table.contains("K(x, y)") && table.contains("-7.50000000000e-1"),
            || "table output lacks K(x, y) = -0.75".to_string(),
        )?;

        // emitted files reproduce the catalog goldens through load + report
        for (name, entry) in [
            (
                "heisenberg",
                randers_core::catalog::heisenberg(1.0, 0.3).unwrap(),
            ),
            (
                "almost_abelian",
                randers_core::catalog::almost_abelian(3, 0.4).unwrap(),
            ),
            (
                "abelian",
                randers_core::catalog::abelian(3, &[0.2, 0.0, 0.0]).unwrap(),
            ),
            (
                "su2_plus_line",
                randers_core::catalog::su2_plus_line(0.3).unwrap(),
            ),
        ] {
            let spec = dir.path().join(format!("{name}.json"));
            let out = randers(&["report", spec.to_str().unwrap(), "--format", "json"]);
            let doc: serde_json::Value =
                serde_json::from_slice(&out.stdout).map_err(|e| e.to_string())?;
            ensure(
                doc["classification"]["douglas"] == entry.expected.douglas
                    && doc["classification"]["berwald"] == entry.expected.berwald,
                || format!("{name}: classification differs from golden"),
            )?;
            let table = doc["sectional"]["gx"].as_array().unwrap();
            for (&(i, j), want) in entry.expected.sectional_input_pairs.as_ref().unwrap() {
                let got = table
                    .iter()
                    .find(|e| e["i"] == (i + 1) as i64 && e["j"] == (j + 1) as i64)
                    .ok_or_else(|| format!("{name}: missing pair ({i},{j})"))?["value"]
                    .as_f64()
                    .unwrap();
                ensure((got - want).abs() < 1e-9, || {
                    format!("{name}: K({i},{j}) = {got} != {want}")
                })?;
            }
        }

        // corrupted Jacobi rejected with the documented exit code
        let bad = dir.path().join("bad.json");
        std::fs::write(
            &bad,
            r#"{
                "dim": 3,
                "brackets": [
                    {"i": 1, "j": 2, "k": 2, "value": 1.0},
                    {"i": 1, "j": 3, "k": 3, "value": 1.0},
                    {"i": 2, "j": 3, "k": 1, "value": 1.0}
                ],
                "metric": "identity",
                "X": [0, 0, 0.3]
            }"#,
        )
        .map_err(|e| e.to_string())?;
        let out = randers(&["validate", bad.to_str().unwrap()]);
        ensure(out.status.code() == Some(4), || {
            format!("corrupted Jacobi exited {:?}, want 4", out.status.code())
        })?;
        let stderr = String::from_utf8(out.stderr).map_err(|e| e.to_string())?;
        ensure(stderr.contains("Jacobi"), || {
            format!("diagnostic does not name Jacobi: {stderr}")
        })?;

        Ok("4 catalog entries emitted, validated, byte-deterministic, goldens reproduced; \
            K(x,y) = -0.75 in json and table; Jacobi corruption exits 4"
            .into())
    });
}
