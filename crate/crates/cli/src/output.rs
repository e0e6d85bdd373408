use std::fmt::Write as _;
use std::fs;
use std::path::PathBuf;

use anyhow::Context;

use crate::CliResult;

/// Where results go: files in a directory, or the primary table on stdout.
pub(crate) struct Sink {
    dir: Option<PathBuf>,
}

impl Sink {
    pub(crate) fn new(dir: Option<PathBuf>) -> CliResult<Self> {
        if let Some(d) = &dir {
            fs::create_dir_all(d).with_context(|| format!("creating {}", d.display()))?;
        }
        Ok(Sink { dir })
    }

    pub(crate) fn has_dir(&self) -> bool {
        self.dir.is_some()
    }

    /// Secondary outputs are only written when a directory was given.
    pub(crate) fn emit(&self, name: &str, content: &str, primary: bool) -> CliResult<()> {
        match &self.dir {
            Some(d) => {
                let path = d.join(name);
                fs::write(&path, content).with_context(|| format!("writing {}", path.display()))
            }
            None => {
                if primary {
                    print!("{content}");
                }
                Ok(())
            }
        }
    }
}

/// CSV with a header row and one row per entry of `rows`.
pub(crate) fn csv_table(header: &[String], rows: &[Vec<String>]) -> String {
    let mut out = header.join(",");
    out.push('\n');
    for r in rows {
        writeln!(out, "{}", r.join(",")).unwrap();
    }
    out
}
