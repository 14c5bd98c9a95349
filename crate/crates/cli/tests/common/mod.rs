#![allow(dead_code)]

use std::path::{Path, PathBuf};
use std::process::{Command, Output};

pub struct Case {
    pub name: &'static str,
    pub args: &'static [&'static str],
}

impl Case {
    pub fn is_json(&self) -> bool {
        self.args.contains(&"--json")
    }

    pub fn golden_path(&self) -> PathBuf {
        let ext = if self.is_json() { "json" } else { "txt" };
        golden_dir().join(format!("{}.{ext}", self.name))
    }
}

pub const CASES: &[Case] = &[
    Case {
        name: "check_two_triples",
        args: &["check", "5; 3,3,1^8"],
    },
    Case {
        name: "check_two_triples_both",
        args: &["check", "5; 3,3,1^8", "--method", "both"],
    },
    Case {
        name: "check_two_triples_json",
        args: &["--json", "check", "5; 3,3,1^8", "--method", "both"],
    },
    Case {
        name: "check_exceptional",
        args: &["check", "0; 0,0,-1", "--method", "both"],
    },
    Case {
        name: "check_line",
        args: &["check", "1; 1,1", "--method", "both"],
    },
    Case {
        name: "check_cubic",
        args: &["check", "3; 2,1^6", "--method", "both"],
    },
    Case {
        name: "check_sextic_json",
        args: &["--json", "check", "6; 3,2^7", "--method", "both"],
    },
    Case {
        name: "check_double_conic",
        args: &["check", "2; 2,2", "--method", "both"],
    },
    Case {
        name: "check_double_conic_json",
        args: &["--json", "check", "2; 2,2"],
    },
    Case {
        name: "check_anticanonical",
        args: &["check", "-3; -1^10", "--method", "both"],
    },
    Case {
        name: "reduce_two_triples",
        args: &["reduce", "5; 3,3,1^8"],
    },
    Case {
        name: "reduce_sextic",
        args: &["reduce", "6; 3,2^7"],
    },
    Case {
        name: "reduce_cubic_json",
        args: &["--json", "reduce", "3; 2,1^6"],
    },
    Case {
        name: "enumerate_n6_expanded",
        args: &[
            "enumerate",
            "--n",
            "6",
            "--max-degree",
            "2",
            "--expand-permutations",
        ],
    },
    Case {
        name: "enumerate_n7",
        args: &["enumerate", "--n", "7", "--max-degree", "3"],
    },
    Case {
        name: "enumerate_n8",
        args: &["enumerate", "--n", "8", "--max-degree", "6"],
    },
    Case {
        name: "enumerate_n3_json",
        args: &["--json", "enumerate", "--n", "3", "--max-degree", "5"],
    },
    Case {
        name: "enumerate_n4_expanded_json",
        args: &[
            "--json",
            "enumerate",
            "--n",
            "4",
            "--max-degree",
            "2",
            "--expand-permutations",
        ],
    },
    Case {
        name: "interpolate_double_conic",
        args: &["interpolate", "2; 2,2"],
    },
    Case {
        name: "interpolate_double_conic_json",
        args: &["--json", "interpolate", "2; 2,2"],
    },
    Case {
        name: "interpolate_line",
        args: &["interpolate", "1; 1,1"],
    },
    Case {
        name: "interpolate_quartic",
        args: &["interpolate", "4; 2,2,1^8"],
    },
    Case {
        name: "interpolate_five_doubles",
        args: &["interpolate", "4; 2^5"],
    },
    Case {
        name: "interpolate_five_doubles_json",
        args: &["--json", "interpolate", "4; 2^5"],
    },
];

pub fn golden_dir() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("tests")
        .join("golden")
}

pub fn bin() -> Command {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_exceptional"));
    cmd.env_remove("EXCEPTIONAL_CACHE_DIR");
    cmd
}

pub fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("spawn exceptional")
}

/// Runs a case and compares stdout with its golden file. With
/// `UPDATE_GOLDEN=1` the golden file is rewritten instead.
pub fn check_case(case: &Case) -> Result<(), String> {
    let out = run(case.args);
    if !out.status.success() {
        return Err(format!(
            "{}: exit {:?}: {}",
            case.name,
            out.status.code(),
            String::from_utf8_lossy(&out.stderr)
        ));
    }
    let stdout = String::from_utf8(out.stdout).map_err(|e| format!("{}: {e}", case.name))?;
    let path = case.golden_path();
    if std::env::var_os("UPDATE_GOLDEN").is_some() {
        std::fs::write(&path, &stdout).map_err(|e| format!("{}: {e}", path.display()))?;
        return Ok(());
    }
    let want = std::fs::read_to_string(&path).map_err(|e| format!("{}: {e}", path.display()))?;
    if stdout != want {
        return Err(format!(
            "{}: output differs from {}\n--- got ---\n{stdout}",
            case.name,
            path.display()
        ));
    }
    Ok(())
}

pub fn schema_validator() -> jsonschema::Validator {
    let schema: serde_json::Value =
        serde_json::from_str(exceptional_cli::commands::SCHEMA).expect("schema parses");
    jsonschema::validator_for(&schema).expect("schema compiles")
}

pub fn validate(validator: &jsonschema::Validator, text: &str) -> Result<(), String> {
    let doc: serde_json::Value = serde_json::from_str(text).map_err(|e| e.to_string())?;
    let errors: Vec<String> = validator
        .iter_errors(&doc)
        .map(|e| format!("{} at {}", e, e.instance_path()))
        .collect();
    if errors.is_empty() {
        Ok(())
    } else {
        Err(errors.join("; "))
    }
}
