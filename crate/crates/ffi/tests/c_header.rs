//! Compiles a small C client against the generated header, and links and
//! runs it when the static library is available.

use std::path::{Path, PathBuf};
use std::process::Command;

const CLIENT: &str = r#"
#include <stdio.h>
#include "copwin.h"

int main(void) {
    CopwinGraph *g = NULL;
    if (copwin_graph_from_text("4\n0 1\n1 2\n2 3\n", &g) != COPWIN_STATUS_OK) return 1;
    bool wins = false;
    if (copwin_decide_cop_win(g, &wins) != COPWIN_STATUS_OK || !wins) return 2;
    CopwinGameResult result;
    if (copwin_play(g, NULL, COPWIN_COP_S_STAR, COPWIN_ROBBER_GREEDY, 0, &result) != COPWIN_STATUS_OK) return 3;
    if (!result.captured) return 4;
    if (copwin_graph_from_text("x", &g) != COPWIN_STATUS_PARSE) return 5;
    printf("%s\n", copwin_last_error());
    copwin_graph_free(g);
    return 0;
}
"#;

fn compiler() -> Option<&'static str> {
    ["cc", "gcc", "clang"].into_iter().find(|c| Command::new(c).arg("--version").output().is_ok())
}

fn static_lib() -> Option<PathBuf> {
    let exe = std::env::current_exe().ok()?;
    // target/<profile>/deps/<test binary>
    let profile_dir = exe.parent()?.parent()?;
    let lib = profile_dir.join("libcopwin_ffi.a");
    lib.exists().then_some(lib)
}

#[test]
fn header_compiles_and_links() {
    let Some(cc) = compiler() else {
        eprintln!("no C compiler; skipping");
        return;
    };
    let include = Path::new(env!("CARGO_MANIFEST_DIR")).join("include");
    let dir = tempfile::tempdir().unwrap();
    let src = dir.path().join("client.c");
    std::fs::write(&src, CLIENT).unwrap();
    let status = Command::new(cc)
        .args(["-std=c99", "-Wall", "-Werror", "-fsyntax-only", "-I"])
        .arg(&include)
        .arg(&src)
        .status()
        .unwrap();
    assert!(status.success(), "header does not compile");

    let Some(lib) = static_lib() else {
        eprintln!("static library not built yet; skipping link step");
        return;
    };
    let exe = dir.path().join("client");
    let status = Command::new(cc)
        .arg("-I")
        .arg(&include)
        .arg(&src)
        .arg(&lib)
        .args(["-lpthread", "-ldl", "-lm", "-o"])
        .arg(&exe)
        .status()
        .unwrap();
    assert!(status.success(), "link failed");
    let out = Command::new(&exe).output().unwrap();
    assert!(out.status.success(), "client exited with {:?}", out.status);
    assert!(String::from_utf8_lossy(&out.stdout).contains("line"));
}
