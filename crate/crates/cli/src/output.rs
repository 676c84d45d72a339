use std::io::Write;
use std::path::Path;

use serde::Serialize;

use crate::Failure;

/// Writes `contents` next to `path` and renames it into place, so readers
/// never observe a partial file.
pub fn write_atomic(path: &Path, contents: &str) -> Result<(), Failure> {
    let fail = |e: std::io::Error| Failure::Usage(format!("cannot write {}: {e}", path.display()));
    let name = path
        .file_name()
        .ok_or_else(|| Failure::Usage(format!("{} is not a file path", path.display())))?;
    let mut tmp_name = std::ffi::OsString::from(".");
    tmp_name.push(name);
    tmp_name.push(format!(".tmp{}", std::process::id()));
    let tmp = path.with_file_name(tmp_name);
    std::fs::write(&tmp, contents).map_err(fail)?;
    std::fs::rename(&tmp, path).map_err(|e| {
        let _ = std::fs::remove_file(&tmp);
        fail(e)
    })
}

/// Sends a finished table to `out`, or to stdout when no path is given.
pub fn emit(contents: &str, out: Option<&Path>) -> Result<(), Failure> {
    match out {
        Some(path) => write_atomic(path, contents),
        None => {
            let mut stdout = std::io::stdout().lock();
            stdout
                .write_all(contents.as_bytes())
                .and_then(|_| stdout.flush())
                .map_err(|e| Failure::Usage(format!("stdout: {e}")))
        }
    }
}

/// Pretty JSON with shortest round-trip floats, newline terminated.
pub fn json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("serializable value");
    s.push('\n');
    s
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn atomic_write_replaces_file() {
        let dir = tempfile::tempdir().unwrap();
        let p = dir.path().join("a.csv");
        write_atomic(&p, "x\n1\n").unwrap();
        write_atomic(&p, "x\n2\n").unwrap();
        assert_eq!(std::fs::read_to_string(&p).unwrap(), "x\n2\n");
        assert_eq!(std::fs::read_dir(dir.path()).unwrap().count(), 1);
    }

    #[test]
    fn json_floats_round_trip() {
        let v = vec![0.1f64 + 0.2, 1.0 / 3.0, 1e-300];
        let back: Vec<f64> = serde_json::from_str(&json(&v)).unwrap();
        assert_eq!(back, v);
    }
}
