//! 3-SAT instances: three distinct literals per clause, DIMACS input and
//! truth assignments with per-clause witnesses.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use crate::error::{Error, Result};

/// A variable or its negation.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct Literal {
    pub variable: String,
    pub positive: bool,
}

impl Literal {
    pub fn positive(variable: impl Into<String>) -> Literal {
        Literal {
            variable: variable.into(),
            positive: true,
        }
    }

    pub fn negative(variable: impl Into<String>) -> Literal {
        Literal {
            variable: variable.into(),
            positive: false,
        }
    }

    pub fn satisfied_by(&self, values: &BTreeMap<String, bool>) -> bool {
        values.get(&self.variable) == Some(&self.positive)
    }
}

impl fmt::Display for Literal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.positive {
            write!(f, "{}", self.variable)
        } else {
            write!(f, "!{}", self.variable)
        }
    }
}

/// A disjunction of exactly three distinct literals.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Clause {
    literals: [Literal; 3],
}

impl Clause {
    pub fn new(literals: [Literal; 3]) -> Result<Clause> {
        let mut seen = BTreeSet::new();
        for l in &literals {
            if !seen.insert((l.variable.clone(), l.positive)) {
                return Err(Error::InvalidClause(format!(
                    "literal `{l}` repeats; a clause has exactly three distinct literals"
                )));
            }
        }
        Ok(Clause { literals })
    }

    pub fn literals(&self) -> &[Literal; 3] {
        &self.literals
    }

    pub fn variables(&self) -> Vec<&str> {
        self.literals.iter().map(|l| l.variable.as_str()).collect()
    }

    /// True when the three literals use three distinct variables; clauses
    /// that fail this contain a variable and its negation and are
    /// tautologies.
    pub fn has_distinct_variables(&self) -> bool {
        let vars: BTreeSet<&str> = self.literals.iter().map(|l| l.variable.as_str()).collect();
        vars.len() == 3
    }

    pub fn satisfied_by(&self, values: &BTreeMap<String, bool>) -> bool {
        self.literals.iter().any(|l| l.satisfied_by(values))
    }

    /// The first literal made true by `values`, if any.
    pub fn first_satisfied_literal(&self, values: &BTreeMap<String, bool>) -> Option<&Literal> {
        self.literals.iter().find(|l| l.satisfied_by(values))
    }
}

impl fmt::Display for Clause {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "({} | {} | {})",
            self.literals[0], self.literals[1], self.literals[2]
        )
    }
}

/// A 3-SAT instance: the variable set is derived from the clauses.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CnfInstance {
    variables: Vec<String>,
    clauses: Vec<Clause>,
}

impl CnfInstance {
    pub fn new(clauses: Vec<Clause>) -> CnfInstance {
        let variables: BTreeSet<String> = clauses
            .iter()
            .flat_map(|c| c.literals.iter().map(|l| l.variable.clone()))
            .collect();
        CnfInstance {
            variables: variables.into_iter().collect(),
            clauses,
        }
    }

    /// Variables in lexicographic order.
    pub fn variables(&self) -> &[String] {
        &self.variables
    }

    pub fn clauses(&self) -> &[Clause] {
        &self.clauses
    }

    /// Indices of clauses with three distinct variables; the others are
    /// tautologies and take no part in gadget constructions.
    pub fn retained_indices(&self) -> Vec<usize> {
        self.clauses
            .iter()
            .enumerate()
            .filter(|(_, c)| c.has_distinct_variables())
            .map(|(i, _)| i)
            .collect()
    }

    pub fn satisfied_by(&self, values: &BTreeMap<String, bool>) -> bool {
        self.clauses.iter().all(|c| c.satisfied_by(values))
    }
}

/// A truth assignment, optionally with one satisfying variable recorded
/// per clause.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TruthAssignment {
    pub values: BTreeMap<String, bool>,
    pub witnesses: Option<BTreeMap<usize, String>>,
}

impl TruthAssignment {
    pub fn new(values: BTreeMap<String, bool>) -> TruthAssignment {
        TruthAssignment {
            values,
            witnesses: None,
        }
    }

    pub fn satisfies(&self, instance: &CnfInstance) -> bool {
        instance.satisfied_by(&self.values)
    }

    /// Checks that every recorded witness variable really makes its clause
    /// true under `values`.
    pub fn witnesses_consistent(&self, instance: &CnfInstance) -> bool {
        let Some(witnesses) = &self.witnesses else {
            return true;
        };
        witnesses.iter().all(|(&idx, var)| {
            instance.clauses().get(idx).is_some_and(|clause| {
                clause
                    .literals()
                    .iter()
                    .any(|l| &l.variable == var && l.satisfied_by(&self.values))
            })
        })
    }
}

/// Parses DIMACS CNF text: `p cnf <vars> <clauses>`, clauses as
/// 0-terminated signed integers, `c` comment lines. Variable `k` becomes
/// `x<k>`. Exactly three distinct literals per clause are enforced.
pub fn parse_dimacs(text: &str) -> Result<CnfInstance> {
    let mut declared: Option<(usize, usize)> = None;
    let mut pending: Vec<i64> = Vec::new();
    let mut clauses: Vec<Clause> = Vec::new();

    for (lineno, raw) in text.lines().enumerate() {
        let line = raw.trim();
        let lineno = lineno + 1;
        if line.is_empty() || line.starts_with('c') || line.starts_with('%') {
            continue;
        }
        if let Some(rest) = line.strip_prefix('p') {
            if declared.is_some() {
                return Err(Error::parse(lineno, "duplicate problem line"));
            }
            let fields: Vec<&str> = rest.split_whitespace().collect();
            if fields.len() != 3 || fields[0] != "cnf" {
                return Err(Error::parse(lineno, "expected `p cnf <vars> <clauses>`"));
            }
            let vars = fields[1]
                .parse::<usize>()
                .map_err(|_| Error::parse(lineno, "bad variable count"))?;
            let count = fields[2]
                .parse::<usize>()
                .map_err(|_| Error::parse(lineno, "bad clause count"))?;
            declared = Some((vars, count));
            continue;
        }
        let Some((nvars, _)) = declared else {
            return Err(Error::parse(lineno, "clause data before the problem line"));
        };
        for tok in line.split_whitespace() {
            let lit = tok
                .parse::<i64>()
                .map_err(|_| Error::parse(lineno, format!("bad literal `{tok}`")))?;
            if lit == 0 {
                let done = std::mem::take(&mut pending);
                if done.len() != 3 {
                    return Err(Error::parse(
                        lineno,
                        format!("clause has {} literals, expected exactly 3", done.len()),
                    ));
                }
                let lits: Vec<Literal> = done
                    .iter()
                    .map(|&l| Literal {
                        variable: format!("x{}", l.unsigned_abs()),
                        positive: l > 0,
                    })
                    .collect();
                let clause = Clause::new([lits[0].clone(), lits[1].clone(), lits[2].clone()])
                    .map_err(|e| Error::parse(lineno, e.to_string()))?;
                clauses.push(clause);
            } else {
                if lit.unsigned_abs() as usize > nvars {
                    return Err(Error::parse(
                        lineno,
                        format!("literal `{lit}` exceeds the declared {nvars} variables"),
                    ));
                }
                pending.push(lit);
            }
        }
    }

    if !pending.is_empty() {
        return Err(Error::parse(0, "unterminated clause at end of input"));
    }
    let Some((_, count)) = declared else {
        return Err(Error::parse(0, "missing problem line"));
    };
    if clauses.len() != count {
        return Err(Error::parse(
            0,
            format!("{} clauses found but {count} declared", clauses.len()),
        ));
    }
    Ok(CnfInstance::new(clauses))
}

/// Emits DIMACS text; variables are numbered in lexicographic order and
/// the mapping recorded in comments.
pub fn emit_dimacs(instance: &CnfInstance) -> String {
    let index: BTreeMap<&str, usize> = instance
        .variables()
        .iter()
        .enumerate()
        .map(|(i, v)| (v.as_str(), i + 1))
        .collect();
    let mut out = String::new();
    for (name, i) in &index {
        out.push_str(&format!("c x{i} = {name}\n"));
    }
    out.push_str(&format!(
        "p cnf {} {}\n",
        instance.variables().len(),
        instance.clauses().len()
    ));
    for clause in instance.clauses() {
        let nums: Vec<String> = clause
            .literals()
            .iter()
            .map(|l| {
                let i = index[l.variable.as_str()] as i64;
                (if l.positive { i } else { -i }).to_string()
            })
            .collect();
        out.push_str(&nums.join(" "));
        out.push_str(" 0\n");
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn lit(spec: &str) -> Literal {
        match spec.strip_prefix('!') {
            Some(v) => Literal::negative(v),
            None => Literal::positive(spec),
        }
    }

    fn clause(a: &str, b: &str, c: &str) -> Clause {
        Clause::new([lit(a), lit(b), lit(c)]).unwrap()
    }

    #[test]
    fn clause_rejects_repeated_literals() {
        assert!(Clause::new([lit("x"), lit("x"), lit("y")]).is_err());
        // x and !x are distinct literals, so this is a legal tautology
        let c = clause("x", "!x", "y");
        assert!(!c.has_distinct_variables());
    }

    #[test]
    fn instance_collects_sorted_variables() {
        let i = CnfInstance::new(vec![clause("b", "a", "c"), clause("d", "a", "!b")]);
        assert_eq!(i.variables(), ["a", "b", "c", "d"]);
        assert_eq!(i.retained_indices(), vec![0, 1]);
    }

    #[test]
    fn tautologies_are_not_retained() {
        let i = CnfInstance::new(vec![clause("x", "!x", "y"), clause("x", "y", "z")]);
        assert_eq!(i.retained_indices(), vec![1]);
    }

    #[test]
    fn evaluation() {
        let i = CnfInstance::new(vec![clause("x", "y", "!z")]);
        let mut values = BTreeMap::new();
        values.insert("x".to_string(), false);
        values.insert("y".to_string(), false);
        values.insert("z".to_string(), true);
        assert!(!i.satisfied_by(&values));
        values.insert("z".to_string(), false);
        assert!(i.satisfied_by(&values));
        let c = &i.clauses()[0];
        assert_eq!(c.first_satisfied_literal(&values).unwrap().variable, "z");
    }

    #[test]
    fn dimacs_round_trip() {
        let text = "c a comment\np cnf 3 2\n1 -2 3 0\n-1 2 3 0\n";
        let i = parse_dimacs(text).unwrap();
        assert_eq!(i.variables(), ["x1", "x2", "x3"]);
        assert_eq!(i.clauses().len(), 2);
        assert!(!i.clauses()[0].literals()[1].positive);
        let again = parse_dimacs(&emit_dimacs(&i)).unwrap();
        assert_eq!(again, i);
    }

    #[test]
    fn dimacs_rejects_malformed_input() {
        assert!(parse_dimacs("p cnf 2 1\n1 -2 0\n").is_err()); // 2 literals
        assert!(parse_dimacs("p cnf 2 1\n1 2 3 0\n").is_err()); // var out of range
        assert!(parse_dimacs("p cnf 3 2\n1 2 3 0\n").is_err()); // count mismatch
        assert!(parse_dimacs("1 2 3 0\n").is_err()); // no header
        assert!(parse_dimacs("p cnf 3 1\n1 2 3\n").is_err()); // unterminated
        assert!(parse_dimacs("p cnf 3 1\n1 1 2 0\n").is_err()); // repeated literal
    }

    #[test]
    fn multi_line_clauses_parse() {
        let i = parse_dimacs("p cnf 3 1\n1 2\n3 0\n").unwrap();
        assert_eq!(i.clauses().len(), 1);
    }
}
