use std::fs;
use std::process::{Command, Output};

fn ringwing(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_ringwing"))
        .args(args)
        .env_remove("RINGWING_THREADS")
        .output()
        .unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn generate_formats_and_guards() {
    let o = ringwing(&["generate", "-r", "3", "--format", "edgelist"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).lines().count(), 48);
    let o = ringwing(&["generate", "-r", "4", "--format", "dot"]);
    assert_eq!(stdout(&o).matches(" -- ").count(), 128);
    assert_eq!(stdout(&o).matches("class=").count(), 128);
    assert_eq!(ringwing(&["generate", "-r", "1"]).status.code(), Some(2));
    assert_eq!(ringwing(&["generate", "-r", "13"]).status.code(), Some(2));
    assert_eq!(ringwing(&["generate"]).status.code(), Some(2));
}

#[test]
fn layout_writes_json_and_svg() {
    let dir = tempfile::tempdir().unwrap();
    let json = dir.path().join("rb4.json");
    let o = ringwing(&["layout", "-r", "4", "-o", json.to_str().unwrap(), "--svg"]);
    assert_eq!(
        o.status.code(),
        Some(0),
        "{}",
        String::from_utf8_lossy(&o.stderr)
    );
    let text = fs::read_to_string(&json).unwrap();
    let doc: serde_json::Value = serde_json::from_str(&text).unwrap();
    assert_eq!(doc["vertices"].as_array().unwrap().len(), 64);
    assert_eq!(doc["edges"].as_array().unwrap().len(), 128);
    assert!(fs::read_to_string(dir.path().join("rb4.svg"))
        .unwrap()
        .starts_with("<svg"));
    assert_eq!(ringwing(&["layout", "-r", "3"]).status.code(), Some(2));
    assert_eq!(ringwing(&["layout", "-r", "8"]).status.code(), Some(2));
}

#[test]
fn count_reports_the_census_and_rejects_bad_files() {
    let dir = tempfile::tempdir().unwrap();
    let json = dir.path().join("rb4.json");
    ringwing(&["layout", "-r", "4", "-o", json.to_str().unwrap()]);
    let o = ringwing(&["count", json.to_str().unwrap(), "--threads", "2"]);
    assert_eq!(o.status.code(), Some(0));
    let doc: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(doc["total"], 96);
    assert_eq!(doc["by_class"]["IExRE"], 32);
    assert_eq!(doc["by_class"]["WIExRE"], 64);

    let text = fs::read_to_string(&json).unwrap();
    let cut = dir.path().join("cut.json");
    fs::write(&cut, &text[..text.len() / 2]).unwrap();
    let o = ringwing(&["count", cut.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("line"));
    assert_eq!(
        ringwing(&["count", "/nonexistent/drawing.json"])
            .status
            .code(),
        Some(2)
    );
}

#[test]
fn count_fails_on_a_bad_drawing() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("bad.json");
    let doc = serde_json::json!({
        "r": 4,
        "vertices": [
            {"level": 0, "row": 0, "x": "0", "y": "0", "ring": 1, "sector": 1},
            {"level": 1, "row": 0, "x": "2", "y": "2", "ring": 1, "sector": 1},
            {"level": 0, "row": 1, "x": "0", "y": "2", "ring": 1, "sector": 2},
            {"level": 1, "row": 1, "x": "2", "y": "0", "ring": 1, "sector": 2},
        ],
        "edges": [
            {"u": [0, 0], "v": [1, 0], "class": "RE", "polyline": [["0", "0"], ["2", "2"]]},
            {"u": [0, 1], "v": [1, 1], "class": "RE", "polyline": [["0", "2"], ["1", "-1"], ["1", "3"], ["2", "0"]]},
        ],
    });
    fs::write(&path, doc.to_string()).unwrap();
    let o = ringwing(&["count", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn threads_come_from_the_environment() {
    let dir = tempfile::tempdir().unwrap();
    let json = dir.path().join("rb4.json");
    ringwing(&["layout", "-r", "4", "-o", json.to_str().unwrap()]);
    let run = |v: &str| {
        Command::new(env!("CARGO_BIN_EXE_ringwing"))
            .args(["count", json.to_str().unwrap()])
            .env("RINGWING_THREADS", v)
            .output()
            .unwrap()
    };
    let (a, b) = (run("1"), run("3"));
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    assert_eq!(run("many").status.code(), Some(2));
}

#[test]
fn verify_passes_at_four() {
    let o = ringwing(&["verify", "-r", "4"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    assert!(stdout(&o).contains("total=96"));
    assert_eq!(ringwing(&["verify", "-r", "3"]).status.code(), Some(2));
    assert_eq!(ringwing(&["verify", "-r", "7"]).status.code(), Some(2));
}

#[test]
fn layout_and_count_at_five() {
    let dir = tempfile::tempdir().unwrap();
    let json = dir.path().join("rb5.json");
    let svg = dir.path().join("picture.svg");
    let o = ringwing(&[
        "layout",
        "-r",
        "5",
        "-o",
        json.to_str().unwrap(),
        "--svg",
        svg.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(0));
    assert!(svg.exists());
    let o = ringwing(&["count", json.to_str().unwrap()]);
    let doc: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(doc["total"], 544);
    let o = ringwing(&["verify", "-r", "5"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
}

#[test]
fn bounds_table() {
    let o = ringwing(&["bounds", "4", "8", "--format", "csv"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines.len(), 6);
    assert!(lines[0].starts_with("r,cimikowski,vijaya2015"));
    assert!(lines[1].starts_with("4,272,208,96,96,"));
    assert!(lines[3].ends_with(",192"));
    let md = stdout(&ringwing(&["bounds", "4", "5", "--format", "md"]));
    assert!(md.starts_with('|'));
    assert_eq!(ringwing(&["bounds", "4", "21"]).status.code(), Some(2));
    assert_eq!(
        ringwing(&["bounds", "4", "21", "--force"]).status.code(),
        Some(0)
    );
    assert_eq!(
        ringwing(&["bounds", "4", "41", "--force"]).status.code(),
        Some(2)
    );
    assert_eq!(ringwing(&["bounds", "3", "5"]).status.code(), Some(2));
}
