use std::path::Path;
use std::process::Command;

/// The generated header compiles as C and as C++.
#[test]
fn header_compiles() {
    let header = Path::new(env!("CARGO_MANIFEST_DIR")).join("include/artin.h");
    let text = std::fs::read_to_string(&header).unwrap();
    for name in ["artin_graph_parse", "artin_oracle_new", "artin_m_distance", "artin_last_error", "ARTIN_STATUS_OK"] {
        assert!(text.contains(name), "{name} missing from header");
    }
    for (cc, lang) in [("cc", "c"), ("c++", "c++")] {
        let Ok(status) = Command::new(cc).args(["-fsyntax-only", "-Wall", "-Werror", "-x", lang]).arg(&header).status()
        else {
            eprintln!("{cc} not found; skipping");
            continue;
        };
        assert!(status.success(), "{cc} rejected the header");
    }
}
