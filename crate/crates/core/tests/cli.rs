use std::process::Command;

use wslab::cli::run;
use wslab::{GroupParam, NormalForm};

fn wslab(args: &[&str]) -> wslab::cli::Outcome {
    run(std::iter::once("wslab").chain(args.iter().copied()))
}

fn ok(args: &[&str]) -> String {
    let out = wslab(args);
    assert_eq!(out.code, 0, "{args:?}: {}", out.stderr);
    out.stdout
}

#[test]
fn relator_normalizes_to_identity() {
    assert_eq!(ok(&["nf", "--k", "3", "h^-1*g*h^-1*g*h^-1*g"]), "1\n");
}

#[test]
fn group_operations() {
    assert_eq!(ok(&["mul", "--k", "3", "g", "G"]), "1\n");
    assert_eq!(ok(&["mul", "--k", "inf", "h", "G"]), "s^1\n");
    assert_eq!(ok(&["inv", "--k", "3", "g^2 s"]), "s^2*g^-2\n");
    assert_eq!(ok(&["order", "--k", "6", "s^2"]), "3\n");
    assert_eq!(ok(&["order", "--k", "3", "g"]), "inf\n");
}

#[test]
fn nf_output_reparses() {
    for (k, w) in [
        ("3", "h h G h g g H"),
        ("2", "g s g S g"),
        ("inf", "h G h G h"),
    ] {
        let text = ok(&["nf", "--k", k, w]);
        let p: GroupParam = k.parse().unwrap();
        let x = NormalForm::parse(w, p).unwrap();
        assert_eq!(NormalForm::parse(text.trim(), p).unwrap(), x);
        assert_eq!(text.trim(), x.to_string());
    }
}

#[test]
fn ws_verify_reports() {
    let out = ok(&["ws-verify", "--k", "3", "--ell", "1", "--radius", "6"]);
    assert!(out.contains("pass gE = E \\ {1}"), "{out}");
    assert!(out.contains("pass hE = E \\ {s^1}"), "{out}");
    assert!(out.trim_end().ends_with("\nwS-subset"), "{out}");
    let out = ok(&["ws-verify", "--k", "3", "--ell", "3", "--radius", "6"]);
    assert!(out.contains("a = 1\nb = 1\n"), "{out}");
    assert!(out.contains("not a wS-subset"), "{out}");
}

#[test]
fn ws_verify_json() {
    let out = ok(&[
        "ws-verify",
        "--k",
        "3",
        "--ell",
        "2",
        "--radius",
        "4",
        "--json",
    ]);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["status"], "pass");
    assert_eq!(v["b"], "s^2");
    assert_eq!(v["subset"]["kind"], "cut");
    assert_eq!(v["witnesses"], serde_json::json!([]));
}

#[test]
fn subset_commands() {
    let list = ok(&["ws-list", "--k", "4"]);
    assert_eq!(list.lines().count(), 4);
    assert_eq!(list.matches("ws=true").count(), 3);
    assert_eq!(
        ok(&["ws-member", "--k", "3", "--ell", "1", "g^-1"]),
        "false\n"
    );
    assert_eq!(
        ok(&["ws-member", "--k", "3", "--ell", "1", "--bfs", "s"]),
        "true\n"
    );
    assert_eq!(
        ok(&["ws-member", "--k", "inf", "--example1", "g h^-1 g"]),
        "true\n"
    );
    assert_eq!(
        ok(&[
            "ws-normalize",
            "--k",
            "3",
            "--ell",
            "2",
            "--translate",
            "g h"
        ]),
        "ell=2 translate=g^1*s^1*g^1\n"
    );
    assert_eq!(
        ok(&["ws-normalize", "--k", "3", "--example1"]),
        "ell=1 translate=g^1\n"
    );
    let out = wslab(&["ws-normalize", "--k", "3", "--ell", "3"]);
    assert_eq!(out.code, 3);
    assert!(out.stderr.contains("not a weak Sierpinski subset"));
}

#[test]
fn charge_command() {
    let out = ok(&["charge", "--k", "3", "--ell", "1", "g"]);
    assert_eq!(out, "f 1\noutflow 1 [1]\ninflow 0 []\n");
    let v: serde_json::Value =
        serde_json::from_str(&ok(&["charge", "--k", "2", "--ell", "1", "G", "--json"])).unwrap();
    assert_eq!(v["f"], -1);
}

#[test]
fn analysis_commands() {
    assert_eq!(ok(&["classify", "H g H g"]), "(h^-1*g)^2\n");
    assert!(ok(&["classify", "g g h"]).starts_with("bad\nfork g"));
    let out = wslab(&["classify", "g G"]);
    assert_eq!(out.code, 3);
    assert!(ok(&["fork-lemma", "--max-len", "6"]).starts_with("pass"));
    assert!(ok(&["free-check", "--k", "2", "--max-len", "5"]).starts_with("pass"));
    let out = ok(&["example1-check", "--k", "2", "--radius", "5"]);
    assert!(
        out.contains("literal g: fail") && out.contains("witnesses=1\n"),
        "{out}"
    );
}

#[test]
fn graph_commands() {
    assert_eq!(
        ok(&["ball", "--k", "3", "--radius", "2"]),
        "vertices 17\nedges 16\nspheres 1 4 12\n"
    );
    let loops = ok(&["loops", "--k", "2", "--radius", "4"]);
    assert!(loops.starts_with("girth 4\nexponent 2\n"), "{loops}");
    let dot = ok(&["dot", "--k", "3", "--radius", "2", "--ell", "1"]);
    assert!(dot.starts_with("digraph cayley {"));
    assert!(dot.contains("fillcolor"));
    let v: serde_json::Value =
        serde_json::from_str(&ok(&["ball", "--k", "inf", "--radius", "1", "--json"])).unwrap();
    assert_eq!(v["param"], "inf");
    assert_eq!(v["vertices"].as_array().unwrap().len(), 5);
}

#[test]
fn dot_to_file() {
    let path = std::env::temp_dir().join(format!("wslab-cli-{}.dot", std::process::id()));
    let out = ok(&[
        "dot",
        "--k",
        "2",
        "--radius",
        "2",
        "--output",
        path.to_str().unwrap(),
    ]);
    assert!(out.starts_with("wrote "));
    let text = std::fs::read_to_string(&path).unwrap();
    std::fs::remove_file(&path).unwrap();
    assert_eq!(text, ok(&["dot", "--k", "2", "--radius", "2"]));
}

#[test]
fn exit_codes() {
    assert_eq!(wslab(&["nf", "--k", "1", "g"]).code, 3);
    assert_eq!(wslab(&["nf", "--k", "3", "g^"]).code, 3);
    assert_eq!(wslab(&["mul", "--k", "3", "g"]).code, 2);
    assert_eq!(wslab(&["frobnicate"]).code, 2);
    assert_eq!(wslab(&["ws-verify", "--k", "3", "--radius", "3"]).code, 2);
    assert_eq!(
        wslab(&["ws-verify", "--k", "3", "--ell", "4", "--radius", "3"]).code,
        3
    );
    assert_eq!(wslab(&["loops", "--k", "3", "--radius", "3"]).code, 3);
    let help = wslab(&["--help"]);
    assert_eq!(help.code, 0);
    for cmd in [
        "nf",
        "mul",
        "inv",
        "order",
        "ball",
        "dot",
        "ws-member",
        "ws-verify",
        "ws-list",
        "ws-normalize",
        "loops",
        "classify",
        "fork-lemma",
        "charge",
        "free-check",
        "example1-check",
    ] {
        assert!(help.stdout.contains(cmd), "help lacks {cmd}");
    }
}

#[test]
fn output_is_deterministic() {
    for args in [
        &["dot", "--k", "3", "--radius", "3", "--ell", "2"][..],
        &["ball", "--k", "2", "--radius", "3", "--json"],
        &["loops", "--k", "3", "--radius", "6", "--json"],
    ] {
        assert_eq!(ok(args), ok(args));
    }
}

#[test]
fn binary_honours_vertex_cap() {
    let bin = env!("CARGO_BIN_EXE_wslab");
    let out = Command::new(bin)
        .args(["ball", "--k", "3", "--radius", "6"])
        .env("WSLAB_VERTEX_CAP", "100")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(4));
    assert!(String::from_utf8_lossy(&out.stderr).contains("vertex cap of 100"));
    let out = Command::new(bin)
        .args(["nf", "--k", "2", "g g G h"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(String::from_utf8_lossy(&out.stdout), "g^1*s^1*g^1\n");
}
