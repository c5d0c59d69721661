use serde_json::Value;

pub fn config(name: &str) -> String {
    format!("{}/../../configs/{name}.json", env!("CARGO_MANIFEST_DIR"))
}

pub fn run(cfg: &str, args: &[&str]) -> (i32, Value) {
    let path = config(cfg);
    let mut argv = vec!["latvoa", "--config", path.as_str()];
    argv.extend_from_slice(args);
    let (code, out) = latvoa_cli::run(argv);
    (code, serde_json::from_str(&out).unwrap_or_else(|e| panic!("report is not JSON ({e}): {out}")))
}
