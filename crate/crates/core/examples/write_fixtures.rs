//! Regenerates `fixtures/*.json` and runs each fixture's command on it.
//!
//!     cargo run --example write_fixtures

use std::path::Path;

use superconn::cli::{run_text, Flags};
use superconn::fixtures;
use superconn::io::serialize_instance;

fn main() -> anyhow::Result<()> {
    let dir = Path::new(env!("CARGO_MANIFEST_DIR")).join("fixtures");
    std::fs::create_dir_all(&dir)?;
    for f in fixtures::all() {
        let text = serialize_instance(&f.instance);
        let path = dir.join(format!("{}.json", f.name));
        std::fs::write(&path, &text)?;
        let flags = Flags { max_k: f.max_k, ..Flags::default() };
        let outcome = run_text(f.command, &text, &flags);
        println!("{:<12} {:<16} exit {}", f.name, f.command.name(), outcome.exit_code());
        if outcome.exit_code() != 0 {
            print!("{}", outcome.report.to_text());
        }
    }
    Ok(())
}
