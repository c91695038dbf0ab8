//! Enumerator corpus: the bundled copy compiled into the binary, or any
//! directory of `*.json` enumerator documents.

use std::fs;
use std::path::Path;

use duursma_core::{load_enumerator, FormalWeightEnumerator};

macro_rules! bundled {
    ($($name:literal),* $(,)?) => {
        &[$(($name, include_str!(concat!("../../../corpus/", $name)))),*]
    };
}

pub const BUNDLED: &[(&str, &str)] = bundled!(
    "golay24.json",
    "hamming8.json",
    "phi_12.json",
    "phi_16.json",
    "phi_20.json",
    "phi_24.json",
    "phi_28.json",
    "phi_32.json",
    "phi_36.json",
    "phi_40.json",
    "phi_8.json",
);

/// One corpus file, parsed or with the reason it was rejected.
pub type CorpusEntry = (String, Result<FormalWeightEnumerator, String>);

pub fn bundled() -> Vec<CorpusEntry> {
    BUNDLED
        .iter()
        .map(|(name, text)| (name.to_string(), load_enumerator(text).map_err(|e| e.to_string())))
        .collect()
}

/// Every `*.json` file in `dir`, sorted by file name.
pub fn from_dir(dir: &Path) -> std::io::Result<Vec<CorpusEntry>> {
    let mut names: Vec<_> = fs::read_dir(dir)?
        .filter_map(|e| e.ok())
        .map(|e| e.path())
        .filter(|p| p.extension().is_some_and(|x| x == "json"))
        .collect();
    names.sort();
    names
        .into_iter()
        .map(|path| {
            let name = path
                .file_name()
                .map(|n| n.to_string_lossy().into_owned())
                .unwrap_or_default();
            let text = fs::read_to_string(&path)?;
            Ok((name, load_enumerator(&text).map_err(|e| e.to_string())))
        })
        .collect()
}
