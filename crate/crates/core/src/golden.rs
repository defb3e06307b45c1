//! Reference tables of `β` with their Z/W index sets, and set-level
//! comparison against computed results.
//!
//! File grammar (one record per line):
//!
//! ```text
//! file    := (blank | comment | header | row) *
//! comment := '#' <anything>
//! header  := 'case' SP label
//! row     := index SP scale SP '(' int (',' int)* ')' SP 'z=' list SP 'w=' list
//! scale   := int '/' int
//! list    := '-' | int (',' int)*
//! ```
//!
//! The row's `β` is `scale * (int, ..., int)`; `-` denotes an empty index set.
//! `index` is the row label used in mismatch reports.

use std::collections::HashMap;
use std::fmt;
use std::path::Path;

use crate::case::{block_sums_vanish, in_chamber, CaseDescriptor};
use crate::error::{Error, Result};
use crate::linalg::{int, parse_rational, RatVector, Rational};
use crate::stratify::StrataSet;

const BUILTIN: [&str; 4] = [
    include_str!("../data/golden/case1.txt"),
    include_str!("../data/golden/case2.txt"),
    include_str!("../data/golden/case3.txt"),
    include_str!("../data/golden/case4.txt"),
];

/// `|B|` for the built-in cases.
pub const BUILTIN_ROW_COUNTS: [usize; 4] = [49, 81, 292, 183];

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GoldenRow {
    pub index: usize,
    pub scale: Rational,
    pub vector: Vec<i64>,
    pub z: Vec<usize>,
    pub w: Vec<usize>,
}

impl GoldenRow {
    pub fn beta(&self) -> RatVector {
        RatVector::from_vec(self.vector.iter().map(|&x| &self.scale * int(x)).collect())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GoldenTable {
    pub case: String,
    pub rows: Vec<GoldenRow>,
}

fn parse_list(s: &str, line: usize) -> Result<Vec<usize>> {
    if s == "-" {
        return Ok(Vec::new());
    }
    s.split(',')
        .map(|x| {
            x.parse()
                .map_err(|_| Error::Golden(format!("line {line}: bad index {x:?}")))
        })
        .collect()
}

fn parse_row(text: &str, line: usize) -> Result<GoldenRow> {
    let bad = |what: &str| Error::Golden(format!("line {line}: {what}: {text:?}"));
    let (index, rest) = text.split_once(' ').ok_or_else(|| bad("missing fields"))?;
    let index = index.parse().map_err(|_| bad("bad row index"))?;
    let (scale, rest) = rest.trim_start().split_once(' ').ok_or_else(|| bad("missing vector"))?;
    let scale = parse_rational(scale).map_err(|_| bad("bad scale"))?;
    let rest = rest.trim_start();
    let close = rest.find(')').ok_or_else(|| bad("unterminated vector"))?;
    let vector = rest
        .strip_prefix('(')
        .ok_or_else(|| bad("vector must start with '('"))?[..close - 1]
        .split(',')
        .map(|x| x.trim().parse::<i64>())
        .collect::<std::result::Result<Vec<_>, _>>()
        .map_err(|_| bad("bad vector entry"))?;
    let mut fields = rest[close + 1..].split_whitespace();
    let z = fields
        .next()
        .and_then(|f| f.strip_prefix("z="))
        .ok_or_else(|| bad("missing z="))?;
    let w = fields
        .next()
        .and_then(|f| f.strip_prefix("w="))
        .ok_or_else(|| bad("missing w="))?;
    if fields.next().is_some() {
        return Err(bad("trailing fields"));
    }
    Ok(GoldenRow {
        index,
        scale,
        vector,
        z: parse_list(z, line)?,
        w: parse_list(w, line)?,
    })
}

/// Parses a golden document; `expected_rows` rejects truncated files.
pub fn parse_golden(text: &str, expected_rows: Option<usize>) -> Result<GoldenTable> {
    let mut case = None;
    let mut rows = Vec::new();
    for (k, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        if let Some(label) = line.strip_prefix("case ") {
            case = Some(label.trim().to_string());
            continue;
        }
        rows.push(parse_row(line, k + 1)?);
    }
    let case = case.ok_or_else(|| Error::Golden("missing 'case' header".into()))?;
    if let Some(n) = expected_rows {
        if rows.len() != n {
            return Err(Error::Golden(format!(
                "case {case}: expected {n} rows, found {} (last row index {:?})",
                rows.len(),
                rows.last().map(|r| r.index)
            )));
        }
    }
    Ok(GoldenTable { case, rows })
}

pub fn load_golden(id: u32) -> Result<GoldenTable> {
    let k = (id as usize).checked_sub(1).filter(|&k| k < 4).ok_or(Error::UnknownCase(id))?;
    parse_golden(BUILTIN[k], Some(BUILTIN_ROW_COUNTS[k]))
}

/// Loads a golden file; `expected_rows` is the `|B|` of the case it is
/// meant to be compared against.
pub fn load_golden_file(path: &Path, expected_rows: Option<usize>) -> Result<GoldenTable> {
    let text = std::fs::read_to_string(path).map_err(|source| Error::Io {
        path: path.to_path_buf(),
        source,
    })?;
    parse_golden(&text, expected_rows)
}

/// Structural problems of a table independent of any computation: rows not
/// in the chamber, not traceless, overlapping Z/W, duplicated `β`.
pub fn structural_problems(case: &CaseDescriptor, table: &GoldenTable) -> Vec<String> {
    let mut problems = Vec::new();
    let mut seen: HashMap<RatVector, usize> = HashMap::new();
    for row in &table.rows {
        let beta = row.beta();
        if beta.len() != case.dim() {
            problems.push(format!("row {}: length {} != D = {}", row.index, beta.len(), case.dim()));
            continue;
        }
        if !in_chamber(case, &beta) {
            problems.push(format!("row {}: not block-sorted", row.index));
        }
        if !block_sums_vanish(case, &beta) {
            problems.push(format!("row {}: block sums not zero", row.index));
        }
        if row.z.iter().any(|j| row.w.contains(j)) {
            problems.push(format!("row {}: Z and W overlap", row.index));
        }
        if let Some(prev) = seen.insert(beta, row.index) {
            problems.push(format!("row {}: duplicates row {prev}", row.index));
        }
    }
    problems
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Mismatch {
    pub golden_index: usize,
    pub beta: RatVector,
    pub computed: (Vec<usize>, Vec<usize>),
    pub golden: (Vec<usize>, Vec<usize>),
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ComparisonReport {
    /// Golden rows whose `β` was not computed (row index, β).
    pub missing: Vec<(usize, RatVector)>,
    /// Computed `β` absent from the golden table.
    pub extra: Vec<RatVector>,
    pub mismatched: Vec<Mismatch>,
}

impl ComparisonReport {
    pub fn is_pass(&self) -> bool {
        self.missing.is_empty() && self.extra.is_empty() && self.mismatched.is_empty()
    }

    pub fn problem_count(&self) -> usize {
        self.missing.len() + self.extra.len() + self.mismatched.len()
    }
}

impl fmt::Display for ComparisonReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_pass() {
            return writeln!(f, "no differences");
        }
        for (i, b) in &self.missing {
            writeln!(f, "missing: golden row {i} beta = {b}")?;
        }
        for b in &self.extra {
            writeln!(f, "extra: computed beta = {b}")?;
        }
        for m in &self.mismatched {
            writeln!(
                f,
                "mismatch: golden row {} beta = {}: computed z={:?} w={:?}, golden z={:?} w={:?}",
                m.golden_index, m.beta, m.computed.0, m.computed.1, m.golden.0, m.golden.1
            )?;
        }
        Ok(())
    }
}

/// Set comparison of `(β, Z, W)` triples keyed by `β`.
pub fn compare(computed: &StrataSet, golden: &GoldenTable) -> ComparisonReport {
    let by_beta: HashMap<&RatVector, (&Vec<usize>, &Vec<usize>)> =
        computed.records.iter().map(|r| (&r.beta, (&r.z, &r.w))).collect();
    let mut report = ComparisonReport::default();
    let mut golden_betas = HashMap::new();
    for row in &golden.rows {
        let beta = row.beta();
        match by_beta.get(&beta) {
            None => report.missing.push((row.index, beta.clone())),
            Some(&(z, w)) if *z != row.z || *w != row.w => report.mismatched.push(Mismatch {
                golden_index: row.index,
                beta: beta.clone(),
                computed: (z.clone(), w.clone()),
                golden: (row.z.clone(), row.w.clone()),
            }),
            Some(_) => {}
        }
        golden_betas.insert(beta, row.index);
    }
    for r in &computed.records {
        if !golden_betas.contains_key(&r.beta) {
            report.extra.push(r.beta.clone());
        }
    }
    report
}

/// A golden table viewed as a computed set, with no witnesses.
pub fn as_strata_set(table: &GoldenTable) -> StrataSet {
    StrataSet {
        case: table.case.clone(),
        records: table
            .rows
            .iter()
            .map(|row| crate::stratify::StratumRecord {
                beta: row.beta(),
                z: row.z.clone(),
                w: row.w.clone(),
                witnesses: Vec::new(),
            })
            .collect(),
        stats: Vec::new(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::case::builtin_case;
    use crate::linalg::rat;

    #[test]
    fn builtin_tables_load() {
        for id in 1..=4 {
            let t = load_golden(id).unwrap();
            assert_eq!(t.rows.len(), BUILTIN_ROW_COUNTS[id as usize - 1]);
            assert_eq!(t.case, id.to_string());
            let problems = structural_problems(&builtin_case(id).unwrap(), &t);
            assert!(problems.is_empty(), "case {id}: {problems:?}");
        }
        assert!(load_golden(0).is_err());
        assert!(load_golden(5).is_err());
    }

    #[test]
    fn specific_rows() {
        let t3 = load_golden(3).unwrap();
        let last = t3.rows.last().unwrap();
        assert_eq!(last.index, 292);
        assert_eq!(
            last.beta(),
            RatVector::from_ints(&[-8, -8, -8, 12, 12, -5, -5, -5, 15]).scaled(&rat(1, 20).unwrap())
        );
        assert_eq!((last.z.as_slice(), last.w.as_slice()), (&[40][..], &[][..]));

        let t4 = load_golden(4).unwrap();
        let row = &t4.rows[45];
        assert_eq!(row.index, 46);
        assert_eq!(row.scale, rat(5, 24).unwrap());
        assert_eq!(row.z, vec![21, 36, 46, 52, 55, 56]);
        assert!(row.w.is_empty());
    }

    #[test]
    fn reflexive_and_injected_fault() {
        let t = load_golden(1).unwrap();
        assert!(compare(&as_strata_set(&t), &t).is_pass());
        let mut perturbed = t.clone();
        perturbed.rows[3].z[0] += 1;
        let report = compare(&as_strata_set(&t), &perturbed);
        assert_eq!(report.mismatched.len(), 1);
        assert_eq!(report.problem_count(), 1);
        assert_eq!(report.mismatched[0].golden_index, 4);
    }

    #[test]
    fn missing_and_extra() {
        let t = load_golden(1).unwrap();
        let mut fewer = as_strata_set(&t);
        let dropped = fewer.records.remove(0);
        let report = compare(&fewer, &t);
        assert_eq!(report.missing, vec![(1, dropped.beta.clone())]);
        let mut smaller = t.clone();
        smaller.rows.remove(0);
        let report = compare(&as_strata_set(&t), &smaller);
        assert_eq!(report.extra, vec![dropped.beta]);
    }

    #[test]
    fn parse_errors_identify_rows() {
        let ok = "case 9\n1 1/2 (1,-1) z=1 w=-\n";
        assert_eq!(parse_golden(ok, Some(1)).unwrap().rows.len(), 1);
        assert!(parse_golden(ok, Some(2)).is_err());
        assert!(parse_golden("1 1/2 (1,-1) z=1 w=-\n", None).is_err());
        let err = parse_golden("case 9\n1 1/2 (1,x) z=1 w=-\n", None).unwrap_err();
        assert!(err.to_string().contains("line 2"));
        assert!(parse_golden("case 9\n1 1/2 (1,-1) z=1\n", None).is_err());
        assert!(parse_golden("case 9\n1 1/2 (1,-1) z=a w=-\n", None).is_err());
    }
}
