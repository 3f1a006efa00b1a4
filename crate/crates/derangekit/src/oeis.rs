//! OEIS b-files: parsing, fetching, caching, and shift-tolerant comparison.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::sync::Mutex;
use std::time::{Duration, Instant};

use derangekit_core::catalog::parse_a_number;
use derangekit_core::BigInteger;
use thiserror::Error;

/// Environment variable overriding the cache directory.
pub const CACHE_ENV: &str = "DERANGEKIT_CACHE";
/// Environment variable overriding the bundled fixture directory.
pub const FIXTURES_ENV: &str = "DERANGEKIT_FIXTURES";

pub const DEFAULT_MAX_SHIFT: u32 = 3;
pub const DEFAULT_MIN_OVERLAP: usize = 8;

/// Minimum spacing between two HTTP requests.
const REQUEST_SPACING: Duration = Duration::from_secs(1);

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Source {
    Network,
    Cache,
    Fixture,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FetchMode {
    Network,
    Offline,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BFile {
    pub a_number: u32,
    /// Consecutive `(index, value)` pairs.
    pub terms: Vec<(i64, BigInteger)>,
    pub source: Source,
}

impl BFile {
    pub fn first_index(&self) -> Option<i64> {
        self.terms.first().map(|t| t.0)
    }

    /// Value at OEIS index `index`, if listed.
    pub fn get(&self, index: i64) -> Option<&BigInteger> {
        let first = self.first_index()?;
        let offset = usize::try_from(index.checked_sub(first)?).ok()?;
        self.terms.get(offset).map(|t| &t.1)
    }
}

#[derive(Debug, Error)]
pub enum OeisError {
    #[error("invalid A-number '{0}'")]
    InvalidANumber(String),
    #[error("network failure fetching {a_number}: {message}")]
    Network { a_number: String, message: String },
    #[error("malformed b-file line {line}: '{text}'")]
    MalformedLine { line: usize, text: String },
    #[error("cache miss for {0} in offline mode")]
    CacheMiss(String),
    #[error("i/o error on {path}: {source}")]
    Io {
        path: PathBuf,
        source: std::io::Error,
    },
}

/// Parses b-file text. Blank lines and lines starting with `#` are skipped;
/// indices must increase by exactly one.
pub fn parse_bfile(a_number: u32, text: &str, source: Source) -> Result<BFile, OeisError> {
    let mut terms: Vec<(i64, BigInteger)> = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let malformed = || OeisError::MalformedLine {
            line: i + 1,
            text: raw.to_string(),
        };
        let mut fields = line.split_whitespace();
        let index: i64 = fields.next().and_then(|f| f.parse().ok()).ok_or_else(malformed)?;
        let value: BigInteger = fields.next().and_then(|f| f.parse().ok()).ok_or_else(malformed)?;
        if fields.next().is_some() {
            return Err(malformed());
        }
        if let Some(&(prev, _)) = terms.last() {
            if index != prev + 1 {
                return Err(malformed());
            }
        }
        terms.push((index, value));
    }
    Ok(BFile {
        a_number,
        terms,
        source,
    })
}

pub fn bfile_name(a_number: u32) -> String {
    format!("b{a_number:06}.txt")
}

pub fn bfile_url(a_number: u32) -> String {
    format!("https://oeis.org/A{a_number:06}/b{a_number:06}.txt")
}

/// The bundled fixture directory of this crate.
pub fn bundled_fixture_dir() -> PathBuf {
    std::env::var_os(FIXTURES_ENV)
        .map(PathBuf::from)
        .unwrap_or_else(|| Path::new(env!("CARGO_MANIFEST_DIR")).join("fixtures"))
}

/// `$DERANGEKIT_CACHE`, else the platform cache directory.
pub fn default_cache_dir() -> PathBuf {
    std::env::var_os(CACHE_ENV)
        .map(PathBuf::from)
        .or_else(|| dirs::cache_dir().map(|d| d.join("derangekit")))
        .unwrap_or_else(|| PathBuf::from(".derangekit-cache"))
}

/// Fetches b-files over HTTP, one at a time, and keeps verbatim copies in a
/// cache directory. Offline lookups consult the cache, then the fixtures.
pub struct OeisClient {
    cache_dir: PathBuf,
    fixture_dir: Option<PathBuf>,
    last_request: Mutex<Option<Instant>>,
}

impl OeisClient {
    pub fn new(cache_dir: impl Into<PathBuf>, fixture_dir: Option<PathBuf>) -> Self {
        OeisClient {
            cache_dir: cache_dir.into(),
            fixture_dir,
            last_request: Mutex::new(None),
        }
    }

    /// Default cache directory plus the bundled fixtures.
    pub fn from_env() -> Self {
        OeisClient::new(default_cache_dir(), Some(bundled_fixture_dir()))
    }

    pub fn cache_dir(&self) -> &Path {
        &self.cache_dir
    }

    pub fn fetch(&self, a_number: &str, mode: FetchMode) -> Result<BFile, OeisError> {
        let id = parse_a_number(a_number)
            .map_err(|_| OeisError::InvalidANumber(a_number.to_string()))?;
        match mode {
            FetchMode::Offline => self
                .read_local(id)?
                .ok_or_else(|| OeisError::CacheMiss(a_number.to_string())),
            FetchMode::Network => {
                let text = self.download(id)?;
                let bfile = parse_bfile(id, &text, Source::Network)?;
                self.store(id, &text)?;
                Ok(bfile)
            }
        }
    }

    fn read_local(&self, id: u32) -> Result<Option<BFile>, OeisError> {
        let dirs = [
            Some((&self.cache_dir, Source::Cache)),
            self.fixture_dir.as_ref().map(|d| (d, Source::Fixture)),
        ];
        for (dir, source) in dirs.into_iter().flatten() {
            let path = dir.join(bfile_name(id));
            match fs::read_to_string(&path) {
                Ok(text) => return parse_bfile(id, &text, source).map(Some),
                Err(e) if e.kind() == std::io::ErrorKind::NotFound => continue,
                Err(source) => return Err(OeisError::Io { path, source }),
            }
        }
        Ok(None)
    }

    fn download(&self, id: u32) -> Result<String, OeisError> {
        let mut last = self.last_request.lock().expect("request lock poisoned");
        if let Some(at) = *last {
            let elapsed = at.elapsed();
            if elapsed < REQUEST_SPACING {
                std::thread::sleep(REQUEST_SPACING - elapsed);
            }
        }
        *last = Some(Instant::now());
        let network = |message: String| OeisError::Network {
            a_number: format!("A{id:06}"),
            message,
        };
        let agent: ureq::Agent = ureq::Agent::config_builder()
            .timeout_global(Some(Duration::from_secs(30)))
            .build()
            .into();
        agent
            .get(&bfile_url(id))
            .call()
            .map_err(|e| network(e.to_string()))?
            .body_mut()
            .read_to_string()
            .map_err(|e| network(e.to_string()))
    }

    /// Writes `text` to the cache through a temporary file and a rename.
    fn store(&self, id: u32, text: &str) -> Result<(), OeisError> {
        let io = |path: &Path| {
            let path = path.to_path_buf();
            move |source| OeisError::Io { path, source }
        };
        fs::create_dir_all(&self.cache_dir).map_err(io(&self.cache_dir))?;
        let target = self.cache_dir.join(bfile_name(id));
        let tmp = self
            .cache_dir
            .join(format!(".{}.{}.tmp", bfile_name(id), std::process::id()));
        let mut file = fs::File::create(&tmp).map_err(io(&tmp))?;
        file.write_all(text.as_bytes()).map_err(io(&tmp))?;
        file.sync_all().map_err(io(&tmp))?;
        fs::rename(&tmp, &target).map_err(io(&target))
    }

    /// Stores already-downloaded text, as if fetched over the network.
    pub fn insert(&self, a_number: u32, text: &str) -> Result<BFile, OeisError> {
        let bfile = parse_bfile(a_number, text, Source::Network)?;
        self.store(a_number, text)?;
        Ok(bfile)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Verdict {
    Match,
    Mismatch,
    Unverifiable,
}

impl std::fmt::Display for Verdict {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Verdict::Match => "match",
            Verdict::Mismatch => "mismatch",
            Verdict::Unverifiable => "unverifiable",
        })
    }
}

/// Outcome of aligning generated terms with a b-file.
///
/// `shift` maps generated index `i` to OEIS index `i + shift`. For a
/// mismatch it is the best partial alignment found. `compared_terms` is the
/// longest run of consecutive agreeing terms at that shift.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MatchReport {
    pub verdict: Verdict,
    pub shift: i64,
    pub compared_terms: usize,
}

impl MatchReport {
    pub fn unverifiable() -> Self {
        MatchReport {
            verdict: Verdict::Unverifiable,
            shift: 0,
            compared_terms: 0,
        }
    }
}

/// Shifts in order of increasing magnitude, positive first on ties.
fn shifts(max_shift: u32) -> impl Iterator<Item = i64> {
    std::iter::once(0).chain((1..=i64::from(max_shift)).flat_map(|s| [s, -s]))
}

/// Aligns `generated` (first term at index `start`) with `reference`.
///
/// Returns a match at the smallest `|shift|` whose longest run of
/// consecutive equal terms reaches `min_overlap`. When no shift overlaps
/// the reference in at least `min_overlap` positions, or fewer than
/// `min_overlap` terms were generated, the result is unverifiable.
pub fn compare_with_shift(
    generated: &[BigInteger],
    start: i64,
    reference: &BFile,
    max_shift: u32,
    min_overlap: usize,
) -> MatchReport {
    if generated.len() < min_overlap {
        return MatchReport::unverifiable();
    }
    let mut best: Option<(usize, i64)> = None;
    let mut any_overlap = false;
    for shift in shifts(max_shift) {
        let mut overlap = 0;
        let mut run = 0;
        let mut longest = 0;
        for (i, value) in generated.iter().enumerate() {
            match reference.get(start + i as i64 + shift) {
                Some(r) => {
                    overlap += 1;
                    run = if r == value { run + 1 } else { 0 };
                    longest = longest.max(run);
                }
                None => run = 0,
            }
        }
        if overlap >= min_overlap {
            any_overlap = true;
        }
        if longest >= min_overlap {
            return MatchReport {
                verdict: Verdict::Match,
                shift,
                compared_terms: longest,
            };
        }
        if best.is_none_or(|(l, _)| longest > l) {
            best = Some((longest, shift));
        }
    }
    if !any_overlap {
        return MatchReport::unverifiable();
    }
    let (compared_terms, shift) = best.unwrap_or((0, 0));
    MatchReport {
        verdict: Verdict::Mismatch,
        shift,
        compared_terms,
    }
}
