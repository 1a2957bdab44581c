//! Input readers. Symbol and set formats are consumed line by line so the
//! single-pass commands never hold the whole input.

use std::collections::HashMap;
use std::fs::File;
use std::io::{self, BufRead, BufReader};
use std::path::Path;

use cooccur::{Item, ItemSet};

use crate::args::InputFormat;
use crate::error::CliError;

pub fn open(path: Option<&Path>) -> Result<Box<dyn BufRead>, CliError> {
    match path {
        None => Ok(Box::new(BufReader::new(io::stdin()))),
        Some(p) => File::open(p)
            .map(|f| Box::new(BufReader::new(f)) as Box<dyn BufRead>)
            .map_err(|e| CliError::Input(format!("cannot read {}: {e}", p.display()))),
    }
}

/// Applies the format's normalization to a query token.
pub fn normalize(format: InputFormat, token: &str) -> String {
    match format {
        InputFormat::Fasta => token.trim().to_uppercase(),
        _ => token.trim().to_owned(),
    }
}

/// Calls `f` with every symbol of a `tokens`, `chars` or `fasta` input.
pub fn for_each_symbol(
    reader: impl BufRead,
    format: InputFormat,
    mut f: impl FnMut(&str),
) -> Result<(), CliError> {
    let mut buf = [0u8; 4];
    for line in reader.lines() {
        let line = line?;
        match format {
            InputFormat::Tokens => line.split_whitespace().for_each(&mut f),
            InputFormat::Chars => {
                for c in line.chars() {
                    if c != '\r' {
                        f(c.encode_utf8(&mut buf));
                    }
                }
            }
            InputFormat::Fasta => {
                if line.starts_with('>') {
                    continue;
                }
                for c in line.trim().chars().flat_map(char::to_uppercase) {
                    f(c.encode_utf8(&mut buf));
                }
            }
            InputFormat::Sets | InputFormat::Events => {
                return Err(CliError::Usage(format!(
                    "{format:?} is not a symbol format"
                )))
            }
        }
    }
    Ok(())
}

/// Calls `f` with the items of every line of a `sets` input.
pub fn for_each_set(reader: impl BufRead, mut f: impl FnMut(&[&str])) -> Result<(), CliError> {
    for line in reader.lines() {
        let line = line?;
        let row: Vec<&str> = line
            .split(',')
            .map(str::trim)
            .filter(|s| !s.is_empty())
            .collect();
        f(&row);
    }
    Ok(())
}

/// Reads `item,timestamp` rows. A first row whose timestamp does not parse is
/// taken as a header. Every other malformed row is reported by line number.
pub fn read_events(reader: impl io::Read) -> Result<Vec<(String, f64)>, CliError> {
    let mut rdr = csv::ReaderBuilder::new()
        .has_headers(false)
        .flexible(true)
        .trim(csv::Trim::All)
        .from_reader(reader);
    let mut events = Vec::new();
    let mut bad = Vec::new();
    for (idx, rec) in rdr.records().enumerate() {
        let line = idx + 1;
        let parsed = rec.ok().and_then(|r| {
            if r.len() != 2 || r[0].is_empty() {
                return None;
            }
            r[1].parse::<f64>().ok().map(|t| (r[0].to_owned(), t))
        });
        match parsed {
            Some(ev) => events.push(ev),
            None if line == 1 => {}
            None => bad.push(line),
        }
    }
    if !bad.is_empty() {
        let lines: Vec<String> = bad.iter().map(ToString::to_string).collect();
        return Err(CliError::Input(format!(
            "malformed event rows at lines {}",
            lines.join(", ")
        )));
    }
    Ok(events)
}

/// Query tokens mapped to ids `0..k`; every other token maps to the shared
/// id `k`, which is never part of the itemset.
#[derive(Debug)]
pub struct Query {
    names: Vec<String>,
    ids: HashMap<String, Item>,
    seen: Vec<bool>,
}

impl Query {
    pub fn new(names: Vec<String>) -> Result<Self, CliError> {
        let mut ids = HashMap::new();
        for (i, name) in names.iter().enumerate() {
            if name.is_empty() {
                return Err(CliError::Usage("empty item in query".into()));
            }
            if ids.insert(name.clone(), Item(i as u32)).is_some() {
                return Err(CliError::Usage(format!("item {name:?} listed twice")));
            }
        }
        if names.is_empty() {
            return Err(CliError::Usage("no query items given".into()));
        }
        let seen = vec![false; names.len()];
        Ok(Self { names, ids, seen })
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn other(&self) -> Item {
        Item(self.names.len() as u32)
    }

    pub fn itemset(&self) -> ItemSet {
        ItemSet::new((0..self.names.len() as u32).map(Item)).expect("non-empty, distinct")
    }

    pub fn classify(&mut self, token: &str) -> Item {
        match self.ids.get(token) {
            Some(&id) => {
                self.seen[id.index()] = true;
                id
            }
            None => self.other(),
        }
    }

    /// Id of a query token without marking it seen.
    pub fn id(&self, token: &str) -> Option<Item> {
        self.ids.get(token).copied()
    }

    pub fn unseen(&self) -> impl Iterator<Item = &str> {
        self.names
            .iter()
            .zip(&self.seen)
            .filter(|(_, &s)| !s)
            .map(|(n, _)| n.as_str())
    }

    pub fn warn_unseen(&self) {
        for name in self.unseen() {
            eprintln!("warning: item never occurs: {name}");
        }
    }
}
