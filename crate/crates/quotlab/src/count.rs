//! Exhaustive point counts split into blocks of the enumeration index, each
//! block sharded over the rayon pool. Progress can be saved after every
//! block to a one-line checkpoint `m n r q next_index points`.

use std::fs;
use std::path::{Path, PathBuf};

use quotlab_core::enumerate::{
    count_stable_commuting_range, finish_count, CountParams, CountResult,
};
use rayon::prelude::*;

use crate::CliError;

pub const BLOCK: u128 = 1 << 20;
pub const SHARD: u128 = 1 << 12;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Checkpoint {
    pub m: usize,
    pub n: usize,
    pub r: usize,
    pub q: u32,
    pub next_index: u128,
    pub points: u128,
}

impl Checkpoint {
    pub fn start(p: &CountParams) -> Self {
        Self {
            m: p.m,
            n: p.n,
            r: p.r,
            q: p.q,
            next_index: 0,
            points: 0,
        }
    }

    pub fn matches(&self, p: &CountParams) -> bool {
        (self.m, self.n, self.r, self.q) == (p.m, p.n, p.r, p.q)
    }

    pub fn encode(&self) -> String {
        format!(
            "{} {} {} {} {} {}\n",
            self.m, self.n, self.r, self.q, self.next_index, self.points
        )
    }

    pub fn parse(text: &str) -> Option<Self> {
        let f: Vec<&str> = text.split_whitespace().collect();
        let [m, n, r, q, next_index, points] = f.as_slice() else {
            return None;
        };
        Some(Self {
            m: m.parse().ok()?,
            n: n.parse().ok()?,
            r: r.parse().ok()?,
            q: q.parse().ok()?,
            next_index: next_index.parse().ok()?,
            points: points.parse().ok()?,
        })
    }

    /// `None` if the file does not exist.
    pub fn load(path: &Path) -> Result<Option<Self>, CliError> {
        match fs::read_to_string(path) {
            Ok(text) => Self::parse(&text)
                .map(Some)
                .ok_or_else(|| CliError::Checkpoint {
                    path: path.display().to_string(),
                    reason: "expected `m n r q next_index points`".into(),
                }),
            Err(e) if e.kind() == std::io::ErrorKind::NotFound => Ok(None),
            Err(e) => Err(e.into()),
        }
    }

    /// Writes to a sibling temporary file and renames it into place.
    pub fn save(&self, path: &Path) -> Result<(), CliError> {
        let mut tmp = PathBuf::from(path);
        tmp.as_mut_os_string().push(".tmp");
        fs::write(&tmp, self.encode())?;
        fs::rename(&tmp, path)?;
        Ok(())
    }
}

fn count_block(params: &CountParams, start: u128, end: u128) -> Result<u128, CliError> {
    let shards: Vec<u128> = (start..end).step_by(SHARD as usize).collect();
    let counts = shards
        .par_iter()
        .map(|&s| count_stable_commuting_range(params, s..(s + SHARD).min(end)))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(counts.into_iter().sum())
}

/// Counts `𝔽_q`-points, resuming from and updating `checkpoint` if given.
pub fn count_points(
    params: &CountParams,
    budget: u128,
    checkpoint: Option<&Path>,
) -> Result<CountResult, CliError> {
    let total = params.check_budget(budget)?;
    let mut state = match checkpoint.map(Checkpoint::load).transpose()?.flatten() {
        Some(c) if !c.matches(params) => {
            return Err(CliError::Usage(format!(
                "checkpoint is for (m, n, r, q) = ({}, {}, {}, {})",
                c.m, c.n, c.r, c.q
            )))
        }
        Some(c) if c.next_index > total => {
            return Err(CliError::Checkpoint {
                path: checkpoint.unwrap().display().to_string(),
                reason: format!("next_index {} beyond {total} tuples", c.next_index),
            })
        }
        Some(c) => c,
        None => Checkpoint::start(params),
    };
    while state.next_index < total {
        let end = (state.next_index + BLOCK).min(total);
        state.points += count_block(params, state.next_index, end)?;
        state.next_index = end;
        if let Some(path) = checkpoint {
            state.save(path)?;
        }
    }
    Ok(finish_count(params, state.points)?)
}
