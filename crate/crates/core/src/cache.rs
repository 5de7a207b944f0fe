//! Generator files and the on-disk closure cache.

use std::fs;
use std::io;
use std::path::{Path, PathBuf};

use sha2::{Digest, Sha256};

use crate::category::{generate_closure, BoundedCategory, ClosureOptions};
use crate::engine::BoundError;
use crate::partition::{ExplicitPartition, Partition, PartitionError};

#[derive(Debug, thiserror::Error)]
pub enum FileError {
    #[error("line {line}: {source}")]
    Line {
        line: usize,
        #[source]
        source: PartitionError,
    },
    #[error(transparent)]
    Io(#[from] io::Error),
    #[error(transparent)]
    Bound(#[from] BoundError),
}

/// One partition per line: a word, or an explicit JSON object for partitions
/// with more blocks than letters. Blank lines and `#` lines are skipped.
pub fn parse_generators(text: &str) -> Result<Vec<Partition>, FileError> {
    let mut out = Vec::new();
    for (idx, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let parsed = if line.starts_with('{') {
            ExplicitPartition::from_json(line).and_then(Partition::try_from)
        } else {
            Partition::parse(line)
        };
        out.push(parsed.map_err(|source| FileError::Line {
            line: idx + 1,
            source,
        })?);
    }
    Ok(out)
}

pub fn read_generators(path: &Path) -> Result<Vec<Partition>, FileError> {
    parse_generators(&fs::read_to_string(path)?)
}

/// Content hash of the generator set and the bounds.
pub fn cache_key(generators: &[Partition], options: &ClosureOptions) -> String {
    let mut words: Vec<String> = generators.iter().map(|g| g.to_string()).collect();
    words.sort();
    words.dedup();
    let mut hasher = Sha256::new();
    for w in &words {
        hasher.update(w.as_bytes());
        hasher.update(b"\n");
    }
    hasher.update(
        format!(
            "L={}\nL'={}\nsym={}\n",
            options.bound, options.working_bound, options.color_symmetry as u8
        )
        .as_bytes(),
    );
    hex::encode(hasher.finalize())
}

pub fn cache_path(dir: &Path, generators: &[Partition], options: &ClosureOptions) -> PathBuf {
    dir.join(format!("{}.txt", cache_key(generators, options)))
}

/// Certificate lines followed by the sorted element words of length `1..=L`.
pub fn listing(cat: &BoundedCategory) -> String {
    let mut out = String::new();
    for c in cat.certificates() {
        out.push_str(&format!("# certificate: {c}\n"));
    }
    for w in cat.words_up_to(cat.bound()) {
        out.push_str(&w);
        out.push('\n');
    }
    out
}

/// The listing for the closure, read from the cache directory when present
/// and written there otherwise. The flag reports a cache hit.
pub fn cached_listing(
    dir: &Path,
    generators: &[Partition],
    options: ClosureOptions,
) -> Result<(String, bool), FileError> {
    let path = cache_path(dir, generators, &options);
    if let Ok(text) = fs::read_to_string(&path) {
        return Ok((text, true));
    }
    let cat = generate_closure(generators, options)?;
    let text = listing(&cat);
    fs::create_dir_all(dir)?;
    let tmp = path.with_extension("tmp");
    fs::write(&tmp, &text)?;
    fs::rename(&tmp, &path)?;
    Ok((text, false))
}
