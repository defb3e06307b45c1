//! JSON, LaTeX and CSV renderings of a [`StrataSet`]. Rationals are always
//! written as `p/q` strings.

use std::fmt::Write as _;

use itertools::Itertools;
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::combinadic::Combination;
use crate::error::{Error, Result};
use crate::linalg::{format_rational, parse_rational, RatVector, Rational};
use crate::stratify::{RankStats, StrataSet, StratumRecord, Witness};

#[derive(Serialize, Deserialize)]
struct JsonSet {
    case: String,
    records: Vec<JsonRecord>,
    stats: JsonStats,
}

#[derive(Serialize, Deserialize)]
struct JsonRecord {
    beta: Vec<String>,
    z: Vec<usize>,
    w: Vec<usize>,
    witnesses: Vec<JsonWitness>,
}

#[derive(Serialize, Deserialize)]
struct JsonWitness {
    #[serde(rename = "R")]
    r: usize,
    combination: Vec<usize>,
    coeffs: Vec<String>,
}

#[derive(Serialize, Deserialize)]
struct JsonStats {
    /// Number of coordinates; needed to rebuild witness combinations.
    #[serde(rename = "N")]
    n: Option<usize>,
    cardinality: usize,
    per_rank: Vec<JsonRankStats>,
}

#[derive(Serialize, Deserialize)]
struct JsonRankStats {
    #[serde(rename = "R")]
    r: usize,
    combinations: u64,
    representatives: usize,
    accepted: usize,
}

fn strings(v: &[Rational]) -> Vec<String> {
    v.iter().map(format_rational).collect()
}

fn rationals(v: &[String]) -> Result<Vec<Rational>> {
    v.iter().map(|s| parse_rational(s)).collect()
}

pub fn to_json(set: &StrataSet) -> String {
    let n = set
        .records
        .iter()
        .flat_map(|r| r.witnesses.first())
        .map(|w| w.combination.n())
        .next();
    let doc = JsonSet {
        case: set.case.clone(),
        records: set
            .records
            .iter()
            .map(|r| JsonRecord {
                beta: strings(r.beta.as_slice()),
                z: r.z.clone(),
                w: r.w.clone(),
                witnesses: r
                    .witnesses
                    .iter()
                    .map(|w| JsonWitness {
                        r: w.r,
                        combination: w.combination.indices().to_vec(),
                        coeffs: strings(&w.coeffs),
                    })
                    .collect(),
            })
            .collect(),
        stats: JsonStats {
            n,
            cardinality: set.records.len(),
            per_rank: set
                .stats
                .iter()
                .map(|s| JsonRankStats {
                    r: s.r,
                    combinations: s.combinations,
                    representatives: s.representatives,
                    accepted: s.accepted,
                })
                .collect(),
        },
    };
    let mut s = serde_json::to_string_pretty(&doc).expect("serializable");
    s.push('\n');
    s
}

pub fn from_json(text: &str) -> Result<StrataSet> {
    let doc: JsonSet = serde_json::from_str(text)?;
    if doc.stats.cardinality != doc.records.len() {
        return Err(Error::Parse(format!(
            "cardinality {} does not match {} records",
            doc.stats.cardinality,
            doc.records.len()
        )));
    }
    let mut records = Vec::with_capacity(doc.records.len());
    for r in doc.records {
        let witnesses = r
            .witnesses
            .into_iter()
            .map(|w| {
                let n = doc
                    .stats
                    .n
                    .ok_or_else(|| Error::Parse("witnesses present but stats.N missing".into()))?;
                Ok(Witness {
                    r: w.r,
                    combination: Combination::new(w.combination, n)?,
                    coeffs: rationals(&w.coeffs)?,
                })
            })
            .collect::<Result<Vec<_>>>()?;
        records.push(StratumRecord {
            beta: RatVector::from_vec(rationals(&r.beta)?),
            z: r.z,
            w: r.w,
            witnesses,
        });
    }
    Ok(StrataSet {
        case: doc.case,
        records,
        stats: doc
            .stats
            .per_rank
            .into_iter()
            .map(|s| RankStats {
                r: s.r,
                combinations: s.combinations,
                representatives: s.representatives,
                accepted: s.accepted,
            })
            .collect(),
    })
}

/// Writes `v = scale * ints` with `ints` a primitive integer vector and
/// `scale > 0`. The zero vector gives scale 1.
pub fn primitive_form(v: &RatVector) -> (Rational, Vec<BigInt>) {
    let l = v.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
    let ints: Vec<BigInt> = v.iter().map(|x| (x * &l).to_integer()).collect();
    let g = ints.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
    if g.is_zero() {
        return (Rational::one(), ints);
    }
    let scale = Rational::new(g.clone(), l);
    (scale, ints.into_iter().map(|x| x / &g).collect())
}

fn latex_scale(q: &Rational) -> String {
    if q.is_integer() {
        q.numer().to_string()
    } else {
        format!("\\tfrac{{{}}}{{{}}}", q.numer(), q.denom())
    }
}

fn index_list(v: &[usize]) -> String {
    if v.is_empty() {
        "\\emptyset".into()
    } else {
        v.iter().join(",")
    }
}

/// A `longtable` with one row per record: `β_i`, `Z` indices, `W` indices.
pub fn to_latex(set: &StrataSet) -> String {
    let mut s = String::new();
    writeln!(s, "% case {}: {} records", set.case, set.records.len()).unwrap();
    s.push_str("\\begin{longtable}{lll}\n");
    s.push_str("$\\beta$ & $Z_\\beta$ & $W_\\beta$ \\\\\n\\hline\n");
    for (i, r) in set.records.iter().enumerate() {
        let (scale, ints) = primitive_form(&r.beta);
        debug_assert!(scale.is_positive() || r.beta.is_zero());
        writeln!(
            s,
            "$\\beta_{{{}}} = {}({})$ & ${}$ & ${}$ \\\\",
            i + 1,
            latex_scale(&scale),
            ints.iter().join(","),
            index_list(&r.z),
            index_list(&r.w)
        )
        .unwrap();
    }
    s.push_str("\\end{longtable}\n");
    s
}

/// Columns `index,beta,z,w`; list entries are separated by spaces.
pub fn to_csv(set: &StrataSet) -> String {
    let mut s = String::from("index,beta,z,w\n");
    for (i, r) in set.records.iter().enumerate() {
        writeln!(
            s,
            "{},{},{},{}",
            i + 1,
            r.beta.iter().map(format_rational).join(" "),
            r.z.iter().join(" "),
            r.w.iter().join(" ")
        )
        .unwrap();
    }
    s
}
