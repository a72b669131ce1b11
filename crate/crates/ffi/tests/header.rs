use std::path::{Path, PathBuf};
use std::process::Command;

fn header() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("include/stardiag.h")
}

#[test]
fn header_declares_every_export() {
    let text = std::fs::read_to_string(header()).unwrap();
    for name in [
        "sd_last_error",
        "sd_graph_new",
        "sd_graph_free",
        "sd_graph_vertex_count",
        "sd_graph_edge_count",
        "sd_tg_formula",
        "sd_tg_bruteforce",
        "sd_kappa_formula",
        "sd_kappa_bruteforce",
        "sd_is_g_good_neighbor",
        "sd_distinguishable",
        "sd_witness_json",
        "sd_string_free",
    ] {
        assert!(text.contains(&format!("{name}(")), "{name} missing from header");
    }
    assert!(text.contains("typedef struct SdGraph SdGraph;"));
    assert!(text.contains("SD_STATUS_BUDGET_EXCEEDED = 4"));
    assert!(text.contains("#define SD_MODEL_MM 1"));
}

fn cc() -> Option<&'static str> {
    ["cc", "gcc", "clang"].into_iter().find(|c| {
        Command::new(c)
            .arg("--version")
            .output()
            .is_ok_and(|o| o.status.success())
    })
}

/// Compiles and runs a C program against the static library.
#[test]
fn c_program_links_and_runs() {
    let Some(cc) = cc() else {
        eprintln!("no C compiler found; skipping");
        return;
    };
    // target/<profile>/deps/<test binary>
    let profile_dir = std::env::current_exe()
        .unwrap()
        .parent()
        .unwrap()
        .parent()
        .unwrap()
        .to_path_buf();
    let lib = profile_dir.join("libstardiag_ffi.a");
    assert!(lib.exists(), "{} not built", lib.display());

    let dir = tempfile::tempdir().unwrap();
    let src = dir.path().join("main.c");
    std::fs::write(
        &src,
        r#"#include <stdio.h>
#include "stardiag.h"
int main(void) {
    SdGraph *g = NULL;
    uint64_t v = 0;
    bool b = true;
    if (sd_graph_new("nkstar:4,2", &g) != SD_STATUS_OK) return 1;
    if (sd_tg_bruteforce(g, 2, SD_MODEL_PMC, &v) != SD_STATUS_OK || v != 5) return 2;
    if (sd_distinguishable(g, SD_MODEL_MM, "12,13,14", "12,13,14,21,31,41", &b) != SD_STATUS_OK || b) return 3;
    if (sd_tg_formula(5, 4, 2, SD_MODEL_PMC, &v) != SD_STATUS_OK || v != 17) return 4;
    if (sd_graph_new("nope", &g) != SD_STATUS_INVALID_ARGUMENT || sd_last_error() == NULL) return 5;
    sd_graph_free(g);
    printf("ok\n");
    return 0;
}
"#,
    )
    .unwrap();
    let exe = dir.path().join("main");
    let status = Command::new(cc)
        .arg(&src)
        .arg("-I")
        .arg(header().parent().unwrap())
        .arg(&lib)
        .args(["-lpthread", "-ldl", "-lm", "-o"])
        .arg(&exe)
        .status()
        .unwrap();
    assert!(status.success(), "C compilation failed");
    let out = Command::new(&exe).output().unwrap();
    assert!(out.status.success(), "C program exited with {:?}", out.status.code());
    assert_eq!(String::from_utf8_lossy(&out.stdout), "ok\n");
}
