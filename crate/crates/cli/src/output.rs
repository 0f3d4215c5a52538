//! Atomic file output: write a temporary sibling, then rename, so a
//! failing run never leaves partial files behind.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

/// Resolve a user-supplied path against `$MAGNON_OUT_DIR` when the path
/// is relative and the variable is set.
pub fn resolve_path(path: &Path) -> PathBuf {
    if path.is_relative() {
        if let Some(dir) = std::env::var_os("MAGNON_OUT_DIR") {
            return PathBuf::from(dir).join(path);
        }
    }
    path.to_path_buf()
}

pub fn write_atomic(path: &Path, contents: &str) -> std::io::Result<()> {
    let path = resolve_path(path);
    let mut tmp = path.clone();
    let mut name = path
        .file_name()
        .map(|n| n.to_os_string())
        .unwrap_or_else(|| "out".into());
    name.push(".tmp");
    tmp.set_file_name(name);

    let result = (|| {
        let mut f = fs::File::create(&tmp)?;
        f.write_all(contents.as_bytes())?;
        f.sync_all()?;
        fs::rename(&tmp, &path)
    })();
    if result.is_err() {
        let _ = fs::remove_file(&tmp);
    }
    result
}

/// Pretty JSON with a trailing newline.
pub fn json_text(value: &serde_json::Value) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("serializable value");
    s.push('\n');
    s
}

/// Print to stdout, treating a closed pipe as a no-op so that
/// `magnon ... | head` behaves like any other Unix tool. File outputs
/// are always written before anything is printed.
pub fn print_out(text: &str) -> std::io::Result<()> {
    match write!(std::io::stdout(), "{text}") {
        Err(e) if e.kind() == std::io::ErrorKind::BrokenPipe => Ok(()),
        other => other,
    }
}
