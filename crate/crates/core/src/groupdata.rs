//! Shipped permutation generators for the groups used by the census, with
//! load-time validation of order and transitivity.

use std::path::{Path, PathBuf};

use num_bigint::BigUint;
use thiserror::Error;

use crate::permgroup::{GroupError, PermError, Permutation, PermutationGroup};

/// Environment variable naming a directory that replaces the embedded data.
pub const DATA_DIR_ENV: &str = "CAYLEY_CENSUS_DATA";

#[derive(Debug, Error)]
pub enum DataError {
    #[error("unknown group `{0}`")]
    UnknownGroup(String),
    #[error("{source_name}: line {line}: {message}")]
    Parse { source_name: String, line: usize, message: String },
    #[error("{name}: generators give order {actual}, expected {expected}")]
    OrderMismatch { name: String, expected: String, actual: String },
    #[error("{name}: expected {} group, got {}", if *.expected { "a transitive" } else { "an intransitive" }, if *.expected { "an intransitive one" } else { "a transitive one" })]
    TransitivityMismatch { name: String, expected: bool },
    #[error("{name}: {source}")]
    Group { name: String, source: GroupError },
    #[error("reading {path}: {source}")]
    Io { path: PathBuf, source: std::io::Error },
}

/// One entry of the fixed catalog.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct CatalogEntry {
    pub name: &'static str,
    pub degree: usize,
    pub expected_order: u128,
    pub transitive: bool,
    text: &'static str,
}

macro_rules! entry {
    ($name:literal, $deg:expr, $order:expr, $trans:expr) => {
        CatalogEntry {
            name: $name,
            degree: $deg,
            expected_order: $order,
            transitive: $trans,
            text: include_str!(concat!("../data/", $name, ".gens")),
        }
    };
}

/// The catalog, sorted by name.
const CATALOG: &[CatalogEntry] = &[
    entry!("A11.deg11", 11, 19_958_400, true),
    entry!("A11.deg12", 12, 19_958_400, false),
    entry!("A12.deg12", 12, 239_500_800, true),
    entry!("M11.deg11", 11, 7_920, true),
    entry!("M11.deg12", 12, 7_920, true),
    entry!("M11.deg24", 24, 7_920, false),
    entry!("M12.2.deg24", 24, 190_080, true),
    entry!("M12.deg12", 12, 95_040, true),
    entry!("M12.deg24", 24, 95_040, false),
    entry!("M23.deg24", 24, 10_200_960, false),
    entry!("M24.deg24", 24, 244_823_040, true),
    entry!("S12.deg12", 12, 479_001_600, true),
];

pub fn catalog() -> &'static [CatalogEntry] {
    CATALOG
}

pub fn catalog_entry(name: &str) -> Result<&'static CatalogEntry, DataError> {
    CATALOG.iter().find(|e| e.name == name).ok_or_else(|| DataError::UnknownGroup(name.to_string()))
}

/// A parsed generator file.
#[derive(Clone, Debug)]
pub struct GeneratorFile {
    pub degree: usize,
    pub order: BigUint,
    pub comments: Vec<String>,
    pub generators: Vec<Permutation>,
}

fn parse_err(source_name: &str, line: usize, message: impl Into<String>) -> DataError {
    DataError::Parse { source_name: source_name.to_string(), line, message: message.into() }
}

/// Parses the generator file format: `degree <n>`, `order <m>`, then one
/// permutation per line as 1-based images. `#` lines are comments.
pub fn parse_generator_file(source_name: &str, text: &str) -> Result<GeneratorFile, DataError> {
    let mut degree: Option<usize> = None;
    let mut order: Option<BigUint> = None;
    let mut comments = Vec::new();
    let mut generators = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let lineno = i + 1;
        let line = raw.trim_end_matches('\r').trim();
        if line.is_empty() {
            continue;
        }
        if let Some(c) = line.strip_prefix('#') {
            comments.push(c.trim().to_string());
            continue;
        }
        let mut words = line.split_whitespace();
        if degree.is_none() {
            match (words.next(), words.next(), words.next()) {
                (Some("degree"), Some(n), None) => {
                    let n: usize = n.parse().map_err(|_| parse_err(source_name, lineno, "bad degree"))?;
                    if n == 0 {
                        return Err(parse_err(source_name, lineno, "degree must be positive"));
                    }
                    degree = Some(n);
                }
                _ => return Err(parse_err(source_name, lineno, "expected `degree <n>`")),
            }
            continue;
        }
        if order.is_none() {
            match (words.next(), words.next(), words.next()) {
                (Some("order"), Some(m), None) => {
                    let m: BigUint = m.parse().map_err(|_| parse_err(source_name, lineno, "bad order"))?;
                    order = Some(m);
                }
                _ => return Err(parse_err(source_name, lineno, "expected `order <m>`")),
            }
            continue;
        }
        let n = degree.expect("degree parsed");
        let images = line
            .split_whitespace()
            .map(|w| w.parse::<u32>())
            .collect::<Result<Vec<u32>, _>>()
            .map_err(|_| parse_err(source_name, lineno, "non-numeric image"))?;
        if images.len() != n {
            return Err(parse_err(source_name, lineno, format!("expected {n} images, found {}", images.len())));
        }
        let perm = Permutation::from_one_based(&images).map_err(|e| match e {
            PermError::NotABijection { .. } | PermError::PointOutOfRange { .. } => {
                parse_err(source_name, lineno, format!("not a permutation: {e}"))
            }
            other => parse_err(source_name, lineno, other.to_string()),
        })?;
        generators.push(perm);
    }
    let degree = degree.ok_or_else(|| parse_err(source_name, 1, "missing `degree` line"))?;
    let order = order.ok_or_else(|| parse_err(source_name, 2, "missing `order` line"))?;
    if generators.is_empty() {
        return Err(parse_err(source_name, text.lines().count().max(1), "no generators"));
    }
    Ok(GeneratorFile { degree, order, comments, generators })
}

/// Serializes generators in the same format.
pub fn format_generator_file(gens: &[Permutation], order: &BigUint, comments: &[String]) -> String {
    let degree = gens.first().map(|g| g.degree()).unwrap_or(0);
    let mut out = format!("degree {degree}\norder {order}\n");
    for c in comments {
        out.push_str(&format!("# {c}\n"));
    }
    for g in gens {
        let line: Vec<String> = g.one_based().iter().map(|x| x.to_string()).collect();
        out.push_str(&line.join(" "));
        out.push('\n');
    }
    out
}

/// A validated group together with its catalog metadata.
#[derive(Clone, Debug)]
pub struct GroupSpec {
    pub name: String,
    pub degree: usize,
    pub expected_order: BigUint,
    pub transitive: bool,
    pub comments: Vec<String>,
    pub group: PermutationGroup,
}

impl GroupSpec {
    pub fn generators(&self) -> &[Permutation] {
        self.group.generators()
    }
}

fn data_text(entry: &CatalogEntry) -> Result<String, DataError> {
    match std::env::var_os(DATA_DIR_ENV) {
        Some(dir) => {
            let path = Path::new(&dir).join(format!("{}.gens", entry.name));
            std::fs::read_to_string(&path).map_err(|source| DataError::Io { path, source })
        }
        None => Ok(entry.text.to_string()),
    }
}

/// Builds a group from a parsed file and checks order and (optionally) transitivity.
pub fn validate(name: &str, file: GeneratorFile, transitive: Option<bool>) -> Result<GroupSpec, DataError> {
    let group = PermutationGroup::new(file.generators.clone())
        .map_err(|source| DataError::Group { name: name.to_string(), source })?;
    let actual = group.order_big();
    if actual != file.order {
        return Err(DataError::OrderMismatch {
            name: name.to_string(),
            expected: file.order.to_string(),
            actual: actual.to_string(),
        });
    }
    let is_transitive = group.is_transitive();
    if let Some(expected) = transitive {
        if expected != is_transitive {
            return Err(DataError::TransitivityMismatch { name: name.to_string(), expected });
        }
    }
    Ok(GroupSpec {
        name: name.to_string(),
        degree: file.degree,
        expected_order: file.order,
        transitive: is_transitive,
        comments: file.comments,
        group,
    })
}

/// Loads and validates a catalog group.
pub fn load_group(name: &str) -> Result<GroupSpec, DataError> {
    let entry = catalog_entry(name)?;
    let text = data_text(entry)?;
    let file = parse_generator_file(name, &text)?;
    if file.degree != entry.degree {
        return Err(parse_err(name, 1, format!("degree {} differs from catalog degree {}", file.degree, entry.degree)));
    }
    if file.order != BigUint::from(entry.expected_order) {
        return Err(DataError::OrderMismatch {
            name: name.to_string(),
            expected: entry.expected_order.to_string(),
            actual: file.order.to_string(),
        });
    }
    validate(name, file, Some(entry.transitive))
}

/// Loads a user-supplied generator file; order is checked, transitivity is not.
pub fn load_group_file(path: &Path) -> Result<GroupSpec, DataError> {
    let text = std::fs::read_to_string(path).map_err(|source| DataError::Io { path: path.to_path_buf(), source })?;
    let name = path.display().to_string();
    let file = parse_generator_file(&name, &text)?;
    validate(&name, file, None)
}
