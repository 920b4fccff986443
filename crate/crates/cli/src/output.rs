//! Atomic output files that are rolled back unless the command completes.

use std::fs;
use std::io::Write;
use std::path::{Component, Path, PathBuf};

use crate::error::{CliError, Result};

/// Files written by one command. Each file goes to a temporary sibling and
/// is renamed into place. Dropping the set without [`OutputSet::commit`]
/// removes every file it wrote and any directories it created.
#[derive(Debug)]
pub struct OutputSet {
    root: PathBuf,
    files: Vec<PathBuf>,
    created_dirs: Vec<PathBuf>,
    committed: bool,
}

impl OutputSet {
    pub fn create(root: impl Into<PathBuf>) -> Result<Self> {
        let mut set = OutputSet {
            root: root.into(),
            files: Vec::new(),
            created_dirs: Vec::new(),
            committed: false,
        };
        let root = set.root.clone();
        set.ensure_dir(&root)?;
        Ok(set)
    }

    pub fn root(&self) -> &Path {
        &self.root
    }

    fn ensure_dir(&mut self, dir: &Path) -> Result<()> {
        let mut missing = Vec::new();
        let mut cur = Some(dir);
        while let Some(d) = cur {
            if d.as_os_str().is_empty() || d.exists() {
                break;
            }
            missing.push(d.to_path_buf());
            cur = d.parent();
        }
        for d in missing.into_iter().rev() {
            fs::create_dir(&d).map_err(|e| CliError::io(&d, e))?;
            self.created_dirs.push(d);
        }
        if !dir.as_os_str().is_empty() && !dir.is_dir() {
            return Err(CliError::io(dir, std::io::Error::other("not a directory")));
        }
        Ok(())
    }

    /// Write `contents` to `rel` below the root.
    pub fn write(&mut self, rel: impl AsRef<Path>, contents: &[u8]) -> Result<PathBuf> {
        let path = self.root.join(rel);
        if let Some(parent) = path.parent() {
            let parent = parent.to_path_buf();
            self.ensure_dir(&parent)?;
        }
        let file_name = path
            .file_name()
            .map(|n| n.to_string_lossy().into_owned())
            .unwrap_or_default();
        let tmp = path.with_file_name(format!(".{file_name}.tmp"));
        let result = (|| {
            let mut f = fs::File::create(&tmp)?;
            f.write_all(contents)?;
            f.sync_all()?;
            fs::rename(&tmp, &path)
        })();
        if let Err(e) = result {
            let _ = fs::remove_file(&tmp);
            return Err(CliError::io(&path, e));
        }
        if !self.files.contains(&path) {
            self.files.push(path.clone());
        }
        Ok(path)
    }

    /// Keep everything written so far.
    pub fn commit(mut self) -> Vec<PathBuf> {
        self.committed = true;
        std::mem::take(&mut self.files)
    }
}

impl Drop for OutputSet {
    fn drop(&mut self) {
        if self.committed {
            return;
        }
        for f in &self.files {
            let _ = fs::remove_file(f);
        }
        for d in self.created_dirs.iter().rev() {
            let _ = fs::remove_dir(d);
        }
    }
}

fn absolute(path: &Path) -> Result<PathBuf> {
    std::path::absolute(path).map_err(|e| CliError::io(path, e))
}

fn normalize(path: &Path) -> PathBuf {
    let mut out = PathBuf::new();
    for c in path.components() {
        match c {
            Component::CurDir => {}
            Component::ParentDir => {
                out.pop();
            }
            other => out.push(other),
        }
    }
    out
}

/// `path` expressed relative to the directory `base`, using `..` steps as
/// needed. Both are resolved against the working directory first.
pub fn relative_path(path: &Path, base: &Path) -> Result<PathBuf> {
    let path = normalize(&absolute(path)?);
    let base = normalize(&absolute(base)?);
    let p: Vec<_> = path.components().collect();
    let b: Vec<_> = base.components().collect();
    let common = p.iter().zip(&b).take_while(|(x, y)| x == y).count();
    if common == 0 {
        return Ok(path);
    }
    let mut rel = PathBuf::new();
    for _ in common..b.len() {
        rel.push("..");
    }
    for c in &p[common..] {
        rel.push(c);
    }
    Ok(rel)
}

/// Render path components with `/` separators so files are identical
/// across platforms.
pub fn portable(path: &Path) -> String {
    path.components()
        .map(|c| c.as_os_str().to_string_lossy().into_owned())
        .collect::<Vec<_>>()
        .join("/")
}
