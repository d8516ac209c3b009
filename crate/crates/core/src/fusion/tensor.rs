use std::collections::BTreeMap;
use std::fmt;

use super::FusionError;
use crate::report::VerificationReport;

/// Nonnegative fusion data `N(i, j, k) = N_{ij}^k` with a contragredient involution.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FusionTensor {
    labels: Vec<String>,
    dual: Vec<usize>,
    entries: BTreeMap<(usize, usize, usize), u64>,
}

impl FusionTensor {
    pub fn new(labels: Vec<String>, dual: Vec<usize>) -> Result<Self, FusionError> {
        if labels.is_empty() {
            return Err(FusionError::Parse(0, "no labels".into()));
        }
        if dual.len() != labels.len() || dual.iter().any(|&d| d >= labels.len()) {
            return Err(FusionError::NotInvolution("dual map is not defined on every label".into()));
        }
        if let Some(i) = (0..dual.len()).find(|&i| dual[dual[i]] != i) {
            return Err(FusionError::NotInvolution(format!("({}')' != {}", labels[i], labels[i])));
        }
        Ok(FusionTensor {
            labels,
            dual,
            entries: BTreeMap::new(),
        })
    }

    pub fn set(&mut self, i: usize, j: usize, k: usize, n: u64) {
        if n == 0 {
            self.entries.remove(&(i, j, k));
        } else {
            self.entries.insert((i, j, k), n);
        }
    }

    pub fn size(&self) -> usize {
        self.labels.len()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn dual(&self, i: usize) -> usize {
        self.dual[i]
    }

    /// `N_{ij}^k`.
    pub fn get(&self, i: usize, j: usize, k: usize) -> u64 {
        self.entries.get(&(i, j, k)).copied().unwrap_or(0)
    }

    /// `N_{ijk} = N_{ij}^{k'}`.
    pub fn lowered(&self, i: usize, j: usize, k: usize) -> u64 {
        self.get(i, j, self.dual[k])
    }

    pub fn nonzero(&self) -> impl Iterator<Item = (&(usize, usize, usize), &u64)> {
        self.entries.iter()
    }

    fn label_index(&self, tok: &str) -> Option<usize> {
        self.labels
            .iter()
            .position(|l| l == tok)
            .or_else(|| tok.parse::<usize>().ok().filter(|&i| i < self.labels.len()))
    }

    /// Parses the plain-text format:
    ///
    /// ```text
    /// labels: V a b
    /// dual: a->b b->a
    /// a a b 1
    /// ```
    ///
    /// Labels may be given by name or index; unlisted duals are self-dual;
    /// `#` starts a comment; missing entries are zero.
    pub fn parse(text: &str) -> Result<Self, FusionError> {
        let mut labels: Option<Vec<String>> = None;
        let mut pairs: Vec<(usize, String, String)> = Vec::new();
        let mut rows: Vec<(usize, Vec<String>)> = Vec::new();
        for (lineno, raw) in text.lines().enumerate() {
            let lineno = lineno + 1;
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            if let Some(rest) = line.strip_prefix("labels:") {
                if labels.is_some() {
                    return Err(FusionError::Parse(lineno, "duplicate labels line".into()));
                }
                let ls: Vec<String> = rest.split_whitespace().map(str::to_string).collect();
                if ls.is_empty() {
                    return Err(FusionError::Parse(lineno, "empty labels line".into()));
                }
                labels = Some(ls);
            } else if let Some(rest) = line.strip_prefix("dual:") {
                for tok in rest.split_whitespace() {
                    let (a, b) = tok
                        .split_once("->")
                        .or_else(|| tok.split_once('→'))
                        .ok_or_else(|| FusionError::Parse(lineno, format!("bad dual pair `{tok}`")))?;
                    pairs.push((lineno, a.to_string(), b.to_string()));
                }
            } else {
                let toks: Vec<String> = line.split_whitespace().map(str::to_string).collect();
                if toks.len() != 4 {
                    return Err(FusionError::Parse(lineno, format!("expected `i j k N`, got `{line}`")));
                }
                rows.push((lineno, toks));
            }
        }
        let labels = labels.ok_or_else(|| FusionError::Parse(0, "missing `labels:` line".into()))?;
        let n = labels.len();
        let scratch = FusionTensor {
            labels: labels.clone(),
            dual: (0..n).collect(),
            entries: BTreeMap::new(),
        };
        let lookup = |t: &FusionTensor, lineno: usize, tok: &str| {
            t.label_index(tok)
                .ok_or_else(|| FusionError::UnknownLabel(lineno, tok.to_string()))
        };
        let mut dual: Vec<usize> = (0..n).collect();
        for (lineno, a, b) in &pairs {
            let (ia, ib) = (lookup(&scratch, *lineno, a)?, lookup(&scratch, *lineno, b)?);
            dual[ia] = ib;
        }
        let mut t = FusionTensor::new(labels, dual)?;
        for (lineno, toks) in rows {
            let i = lookup(&t, lineno, &toks[0])?;
            let j = lookup(&t, lineno, &toks[1])?;
            let k = lookup(&t, lineno, &toks[2])?;
            let v: u64 = toks[3]
                .parse()
                .map_err(|_| FusionError::Parse(lineno, format!("bad multiplicity `{}`", toks[3])))?;
            t.set(i, j, k, v);
        }
        Ok(t)
    }
}

impl fmt::Display for FusionTensor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "labels: {}", self.labels.join(" "))?;
        let duals: Vec<String> = (0..self.size())
            .filter(|&i| self.dual[i] != i)
            .map(|i| format!("{}->{}", self.labels[i], self.labels[self.dual[i]]))
            .collect();
        if !duals.is_empty() {
            writeln!(f, "dual: {}", duals.join(" "))?;
        }
        for ((i, j, k), n) in &self.entries {
            writeln!(f, "{} {} {} {n}", self.labels[*i], self.labels[*j], self.labels[*k])?;
        }
        Ok(())
    }
}

/// `N_{ijk}` is invariant under all permutations of `(i, j, k)`.
pub fn check_s3_symmetry(t: &FusionTensor) -> VerificationReport {
    let mut report = VerificationReport::new("fusion-s3", format!("labels={}", t.size()));
    let n = t.size();
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                let base = t.lowered(i, j, k);
                let perms = [(j, i, k), (i, k, j), (k, j, i), (j, k, i), (k, i, j)];
                let ok = perms.iter().all(|&(a, b, c)| t.lowered(a, b, c) == base);
                report.record(ok, &[i as i64, j as i64, k as i64], "N_ijk");
            }
        }
    }
    if readings_differ(t) {
        report.notes.push(
            "entries read as N_ij^k and as N_ijk (lower index through the dual map) differ for this tensor"
                .into(),
        );
    }
    report
}

/// Whether reading the file entries as `N_{ij}^k` or as `N_{ijk}` gives different tensors.
pub fn readings_differ(t: &FusionTensor) -> bool {
    t.nonzero()
        .any(|(&(i, j, k), &v)| t.get(i, j, t.dual(k)) != v)
}
