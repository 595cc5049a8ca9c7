//! The line-oriented job format.
//!
//! ```text
//! # the maximal ideal on a plane curve
//! ring x y @ 32003
//! module: y^2 - x^5
//! filtration adic: x, y
//! option seed=7
//! ```

use std::fmt;
use std::sync::Arc;

use formring_core::filtration::{CyclicModule, HilbertFiltration};
use formring_core::groebner::Ideal;
use formring_core::locallen::LengthSchedule;
use formring_core::polyring::{parse_poly, Field, Polynomial, Ring, DEFAULT_PRIME};
use formring_core::Error as CoreError;

#[derive(Debug, thiserror::Error)]
#[error("line {line}, column {col}: {msg}")]
pub struct JobError {
    pub line: usize,
    pub col: usize,
    pub msg: String,
}

fn err(line: usize, col: usize, msg: impl Into<String>) -> JobError {
    JobError {
        line,
        col,
        msg: msg.into(),
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    #[default]
    Json,
    Table,
}

impl fmt::Display for Format {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Format::Json => "json",
            Format::Table => "table",
        })
    }
}

/// A generator list as written, with the column of each entry.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GenList {
    pub line: usize,
    pub items: Vec<(usize, String)>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FiltrationSpec {
    Adic(GenList),
    Table(Vec<GenList>),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Options {
    pub seed: u64,
    pub n_cap: usize,
    pub t_max: u32,
    pub format: Format,
    pub force: bool,
    pub cm_assumed: bool,
}

impl Default for Options {
    fn default() -> Self {
        Options {
            seed: 7,
            n_cap: formring_core::hilbert::DEFAULT_N_CAP,
            t_max: LengthSchedule::default().t_max,
            format: Format::Json,
            force: false,
            cm_assumed: true,
        }
    }
}

/// A parsed job file, before the ring is built.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct JobSpec {
    pub vars: Vec<String>,
    pub characteristic: u64,
    pub ring_line: usize,
    pub module: Option<GenList>,
    pub filtration: FiltrationSpec,
    pub reduction: Option<GenList>,
    pub options: Options,
}

/// Splits `text` (starting at column `base`) on `sep`, keeping columns.
fn split_cols(text: &str, base: usize, sep: char) -> Vec<(usize, String)> {
    let mut out = Vec::new();
    let mut start = 0;
    for (i, c) in text.char_indices().chain(std::iter::once((text.len(), sep))) {
        if c == sep {
            let piece = &text[start..i];
            let lead = piece.len() - piece.trim_start().len();
            out.push((base + start + lead, piece.trim().to_string()));
            start = i + c.len_utf8();
        }
    }
    out
}

fn gen_list(line: usize, text: &str, base: usize) -> Result<GenList, JobError> {
    let mut text = text;
    let mut base = base;
    let trimmed = text.trim();
    if trimmed.starts_with('[') {
        let open = text.find('[').expect("bracket");
        let close = text
            .rfind(']')
            .ok_or_else(|| err(line, base + open, "unclosed '['"))?;
        base += open + 1;
        text = &text[open + 1..close];
    }
    let items = split_cols(text, base, ',');
    if let Some((col, _)) = items.iter().find(|(_, s)| s.is_empty()) {
        return Err(err(line, *col, "empty generator"));
    }
    Ok(GenList { line, items })
}

fn parse_bool(v: &str) -> Option<bool> {
    match v {
        "true" | "yes" | "1" => Some(true),
        "false" | "no" | "0" => Some(false),
        _ => None,
    }
}

impl JobSpec {
    pub fn parse(text: &str) -> Result<JobSpec, JobError> {
        let mut ring: Option<(Vec<String>, u64, usize)> = None;
        let mut module = None;
        let mut filtration = None;
        let mut reduction = None;
        let mut options = Options::default();
        for (idx, raw) in text.lines().enumerate() {
            let line = idx + 1;
            let content = raw.split('#').next().unwrap_or("");
            if content.trim().is_empty() {
                continue;
            }
            let indent = content.len() - content.trim_start().len();
            let body = content.trim_end();
            let rest_of = |kw: &str| -> (usize, &str) {
                let start = indent + kw.len();
                (start + 1, &body[start..])
            };
            let word = body[indent..].split(|c: char| c.is_whitespace() || c == ':').next().unwrap_or("");
            match word {
                "ring" => {
                    let (col, rest) = rest_of("ring");
                    let (names, ch) = match rest.split_once('@') {
                        Some((n, c)) => {
                            let ccol = col + n.len() + 1;
                            let c = c.trim();
                            let ch = c
                                .parse::<u64>()
                                .map_err(|_| err(line, ccol, format!("bad characteristic {c:?}")))?;
                            (n, ch)
                        }
                        None => (rest, DEFAULT_PRIME),
                    };
                    let vars: Vec<String> = names.split_whitespace().map(str::to_string).collect();
                    if vars.is_empty() {
                        return Err(err(line, col, "ring needs at least one variable"));
                    }
                    ring = Some((vars, ch, line));
                }
                "module" => {
                    let (col, rest) = rest_of("module");
                    let rest = rest
                        .strip_prefix(':')
                        .ok_or_else(|| err(line, col, "expected ':' after 'module'"))?;
                    module = Some(gen_list(line, rest, col + 1)?);
                }
                "reduction" => {
                    let (col, rest) = rest_of("reduction");
                    let rest = rest
                        .strip_prefix(':')
                        .ok_or_else(|| err(line, col, "expected ':' after 'reduction'"))?;
                    reduction = Some(gen_list(line, rest, col + 1)?);
                }
                "filtration" => {
                    let (col, rest) = rest_of("filtration");
                    let (kind, gens) = rest
                        .split_once(':')
                        .ok_or_else(|| err(line, col, "expected 'adic:' or 'table:'"))?;
                    let gcol = col + kind.len() + 1;
                    filtration = Some(match kind.trim() {
                        "adic" => FiltrationSpec::Adic(gen_list(line, gens, gcol)?),
                        "table" => FiltrationSpec::Table(
                            split_cols(gens, gcol, ';')
                                .into_iter()
                                .map(|(c, _)| {
                                    let end = gens[c - gcol..].find(';').map_or(gens.len(), |e| c - gcol + e);
                                    gen_list(line, &gens[c - gcol..end], c)
                                })
                                .collect::<Result<_, _>>()?,
                        ),
                        other => {
                            return Err(err(line, col, format!("unknown filtration kind {other:?}")))
                        }
                    });
                }
                "option" => {
                    let (col, rest) = rest_of("option");
                    for (c, kv) in split_cols(rest, col, ' ').into_iter().filter(|(_, s)| !s.is_empty()) {
                        let (k, v) = kv.split_once('=').unwrap_or((kv.as_str(), "true"));
                        let bad = || err(line, c, format!("bad value for option {k}: {v:?}"));
                        match k {
                            "seed" => options.seed = v.parse().map_err(|_| bad())?,
                            "ncap" | "n_cap" => options.n_cap = v.parse().map_err(|_| bad())?,
                            "tmax" | "t_max" => options.t_max = v.parse().map_err(|_| bad())?,
                            "force" => options.force = parse_bool(v).ok_or_else(bad)?,
                            "cm" => options.cm_assumed = parse_bool(v).ok_or_else(bad)?,
                            "format" => {
                                options.format = match v {
                                    "json" => Format::Json,
                                    "table" => Format::Table,
                                    _ => return Err(bad()),
                                }
                            }
                            _ => return Err(err(line, c, format!("unknown option {k:?}"))),
                        }
                    }
                }
                other => {
                    return Err(err(line, indent + 1, format!("unknown directive {other:?}")));
                }
            }
        }
        let (vars, characteristic, ring_line) = ring.ok_or_else(|| err(1, 1, "missing 'ring' line"))?;
        let filtration = filtration.ok_or_else(|| err(1, 1, "missing 'filtration' line"))?;
        Ok(JobSpec {
            vars,
            characteristic,
            ring_line,
            module,
            filtration,
            reduction,
            options,
        })
    }
}

/// A job with its ring, module and filtration built.
pub struct Job {
    pub ring: Arc<Ring>,
    pub filtration: HilbertFiltration,
    pub reduction: Option<Ideal>,
    pub options: Options,
}

/// Input problems found while building a job.
#[derive(Debug, thiserror::Error)]
pub enum BuildError {
    #[error(transparent)]
    Syntax(#[from] JobError),
    #[error("{0}")]
    Core(#[from] CoreError),
}

fn build_ideal(ring: &Arc<Ring>, list: &GenList) -> Result<Ideal, JobError> {
    let polys = list
        .items
        .iter()
        .map(|(col, text)| {
            parse_poly(text, ring).map_err(|e| match e {
                CoreError::Parse { pos, msg } => err(list.line, col + pos, msg),
                CoreError::UnknownVariable { name, pos } => {
                    err(list.line, col + pos, format!("unknown variable {name:?}"))
                }
                other => err(list.line, *col, other.to_string()),
            })
        })
        .collect::<Result<Vec<Polynomial>, _>>()?;
    Ideal::new(ring, polys).map_err(|e| err(list.line, 1, e.to_string()))
}

impl JobSpec {
    pub fn build(&self) -> Result<Job, BuildError> {
        let field = Field::from_characteristic(self.characteristic)
            .map_err(|e| err(self.ring_line, 1, e.to_string()))?;
        let ring = Ring::new(&self.vars, field).map_err(|e| err(self.ring_line, 1, e.to_string()))?;
        let module = match &self.module {
            None => CyclicModule::free(&ring),
            Some(list) => {
                let k = build_ideal(&ring, list)?;
                if k.is_zero() {
                    CyclicModule::free(&ring)
                } else {
                    CyclicModule::new(k, self.options.cm_assumed)
                        .map_err(|e| err(list.line, 1, format!("bad module: {e}")))?
                }
            }
        };
        let filtration = match &self.filtration {
            FiltrationSpec::Adic(list) => HilbertFiltration::adic(build_ideal(&ring, list)?, module)?,
            FiltrationSpec::Table(lists) => {
                let ideals = lists
                    .iter()
                    .map(|l| build_ideal(&ring, l))
                    .collect::<Result<Vec<_>, _>>()?;
                HilbertFiltration::table(ideals, module)?
            }
        }
        .with_schedule(LengthSchedule {
            t_max: self.options.t_max,
        });
        let reduction = self
            .reduction
            .as_ref()
            .map(|l| build_ideal(&ring, l))
            .transpose()?;
        Ok(Job {
            ring,
            filtration,
            reduction,
            options: self.options.clone(),
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_fixture_b() {
        let spec = JobSpec::parse(
            "# the maximal ideal on a plane curve\nring x y @ 32003\nmodule: y^2 - x^5\nfiltration adic: x, y\noption seed=9 format=table\n",
        )
        .unwrap();
        assert_eq!(spec.vars, vec!["x", "y"]);
        assert_eq!(spec.characteristic, 32003);
        assert_eq!(spec.options.seed, 9);
        assert_eq!(spec.options.format, Format::Table);
        let FiltrationSpec::Adic(list) = &spec.filtration else {
            panic!("adic expected")
        };
        assert_eq!(list.items, vec![(18, "x".to_string()), (21, "y".to_string())]);
        let job = spec.build().unwrap();
        assert_eq!(job.filtration.dim(), 1);
    }

    #[test]
    fn parses_tables() {
        let spec = JobSpec::parse("ring x y\nfiltration table: [x, y] ; [x^2, y^2]\n").unwrap();
        let FiltrationSpec::Table(lists) = &spec.filtration else {
            panic!("table expected")
        };
        assert_eq!(lists.len(), 2);
        assert_eq!(lists[1].items[1].1, "y^2");
        assert_eq!(spec.characteristic, DEFAULT_PRIME);
    }

    #[test]
    fn located_diagnostics() {
        let e = JobSpec::parse("ring x y\nfiltration adic: x, z\n").unwrap().build();
        let Err(BuildError::Syntax(e)) = e else {
            panic!("syntax error expected")
        };
        assert_eq!((e.line, e.col), (2, 21));

        let e = JobSpec::parse("ring x y\nfiltration adic: x, y^\n").unwrap().build();
        assert!(matches!(e, Err(BuildError::Syntax(JobError { line: 2, .. }))));

        let e = JobSpec::parse("ring x y\nfiltraton adic: x\n").unwrap_err();
        assert_eq!((e.line, e.col), (2, 1));
        let e = JobSpec::parse("ring x y\nfiltration adic: x\noption speed=3\n").unwrap_err();
        assert_eq!(e.line, 3);
    }
}
