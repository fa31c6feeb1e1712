use std::io::Write;
use std::path::{Path, PathBuf};

use serde::de::DeserializeOwned;
use serde::Serialize;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum Failure {
    #[error("{0}")]
    Usage(String),
    #[error("{file}: schema violation at {path}: {message}")]
    Schema {
        file: String,
        path: String,
        message: String,
    },
    #[error("{path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
    #[error(transparent)]
    Compute(#[from] qss_core::Error),
}

impl Failure {
    pub fn exit_code(&self) -> u8 {
        use qss_core::Error as E;
        match self {
            Failure::Usage(_) | Failure::Schema { .. } => 2,
            Failure::Compute(
                E::Schema { .. }
                | E::ZeroShots
                | E::InvalidConfig(_)
                | E::InvalidProbability { .. }
                | E::InvalidMapping(_)
                | E::InvalidGraph(_),
            ) => 2,
            Failure::Io { .. } | Failure::Compute(_) => 1,
        }
    }
}

fn io_err(path: &Path) -> impl FnOnce(std::io::Error) -> Failure + '_ {
    move |source| Failure::Io {
        path: path.display().to_string(),
        source,
    }
}

pub fn read_text(path: &Path) -> Result<String, Failure> {
    std::fs::read_to_string(path).map_err(io_err(path))
}

/// Parses JSON, reporting the path of the first offending field.
pub fn parse_json<T: DeserializeOwned>(file: &Path, text: &str) -> Result<T, Failure> {
    let de = &mut serde_json::Deserializer::from_str(text);
    serde_path_to_error::deserialize(de).map_err(|e| {
        let path = e.path().to_string();
        Failure::Schema {
            file: file.display().to_string(),
            path: if path.is_empty() { ".".into() } else { path },
            message: e.into_inner().to_string(),
        }
    })
}

pub fn read_json<T: DeserializeOwned>(path: &Path) -> Result<T, Failure> {
    parse_json(path, &read_text(path)?)
}

/// Maps a core schema error onto the file it came from.
pub fn in_file(file: &Path) -> impl FnOnce(qss_core::Error) -> Failure + '_ {
    move |e| match e {
        qss_core::Error::Schema { path, message } => Failure::Schema {
            file: file.display().to_string(),
            path,
            message,
        },
        other => Failure::Compute(other),
    }
}

pub fn to_json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("output types serialize");
    s.push('\n');
    s
}

/// Writes via a temporary file in the same directory, then renames.
pub fn write_atomic(path: &Path, contents: &str) -> Result<(), Failure> {
    let dir = match path.parent() {
        Some(d) if !d.as_os_str().is_empty() => d.to_path_buf(),
        _ => PathBuf::from("."),
    };
    let mut tmp = tempfile::NamedTempFile::new_in(&dir).map_err(io_err(path))?;
    tmp.write_all(contents.as_bytes()).map_err(io_err(path))?;
    tmp.persist(path).map_err(|e| io_err(path)(e.error))?;
    Ok(())
}

/// To `out` if given, otherwise stdout.
pub fn emit(out: Option<&Path>, contents: &str) -> Result<(), Failure> {
    match out {
        Some(path) => write_atomic(path, contents),
        None => {
            let mut stdout = std::io::stdout().lock();
            stdout
                .write_all(contents.as_bytes())
                .and_then(|_| stdout.flush())
                .map_err(io_err(Path::new("<stdout>")))
        }
    }
}

#[derive(Serialize)]
struct CsvRow<'a> {
    label: &'a str,
    p0: f64,
    p1: f64,
}

/// `label,p0,p1` rows.
pub fn csv_table(rows: &[(String, f64, f64)]) -> String {
    let mut w = csv::Writer::from_writer(Vec::new());
    for (label, p0, p1) in rows {
        w.serialize(CsvRow { label, p0: *p0, p1: *p1 })
            .expect("writing to memory");
    }
    String::from_utf8(w.into_inner().expect("writing to memory")).expect("csv is utf-8")
}
