//! CNF formulas with a forall/exists variable partition, DIMACS-style
//! I/O, the 3-SAT-to-MINMAX-2-SAT clause gadget, and brute-force
//! evaluators for the quantified satisfaction counts.

use crate::bits::Mask;
use thiserror::Error;

/// A literal over the combined variable space; variables `0..n_forall`
/// are the universally quantified block, the rest are existential.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Lit {
    pub var: usize,
    pub negated: bool,
}

impl Lit {
    pub fn pos(var: usize) -> Self {
        Lit { var, negated: false }
    }

    pub fn neg(var: usize) -> Self {
        Lit { var, negated: true }
    }

    pub fn eval(&self, assignment: &Mask) -> bool {
        assignment.get(self.var) ^ self.negated
    }
}

/// CNF with clause multiplicity; clauses keep at most `max_clause_len`
/// literals (3 before the gadget, 2 after).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CnfFormula {
    pub n_forall: usize,
    pub n_exists: usize,
    pub clauses: Vec<Vec<Lit>>,
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum CnfError {
    #[error("line {0}: {1}")]
    Malformed(usize, String),
    #[error("missing `p cnf <vars> <clauses>` header")]
    MissingHeader,
    #[error("clause {0} is empty")]
    EmptyClause(usize),
    #[error("clause {0} has {1} literals, limit {2}")]
    ClauseTooLong(usize, usize, usize),
    #[error("literal references variable {0} but only {1} are declared")]
    VarOutOfRange(usize, usize),
    #[error("budget: {0} variables exceed the enumeration cap {1}")]
    SizeBudget(usize, usize),
}

pub const CNF_ENUMERATION_BUDGET: usize = 24;

impl CnfFormula {
    pub fn new(n_forall: usize, n_exists: usize, clauses: Vec<Vec<Lit>>) -> Result<Self, CnfError> {
        let total = n_forall + n_exists;
        for (i, c) in clauses.iter().enumerate() {
            if c.is_empty() {
                return Err(CnfError::EmptyClause(i));
            }
            for l in c {
                if l.var >= total {
                    return Err(CnfError::VarOutOfRange(l.var, total));
                }
            }
        }
        Ok(CnfFormula {
            n_forall,
            n_exists,
            clauses,
        })
    }

    pub fn num_vars(&self) -> usize {
        self.n_forall + self.n_exists
    }

    pub fn num_clauses(&self) -> usize {
        self.clauses.len()
    }

    pub fn max_clause_len(&self) -> usize {
        self.clauses.iter().map(|c| c.len()).max().unwrap_or(0)
    }

    /// Number of clauses satisfied by a full assignment.
    pub fn satisfied_count(&self, assignment: &Mask) -> usize {
        self.clauses
            .iter()
            .filter(|c| c.iter().any(|l| l.eval(assignment)))
            .count()
    }

    pub fn violated_count(&self, assignment: &Mask) -> usize {
        self.num_clauses() - self.satisfied_count(assignment)
    }
}

/// Parse DIMACS-style text: `p cnf <vars> <clauses>` header, a comment
/// line `c forall <n>` declaring that variables 1..n are the universal
/// block, and clause lines of 1-based signed literals terminated by `0`.
pub fn parse_dimacs(text: &str) -> Result<CnfFormula, CnfError> {
    let mut declared: Option<(usize, usize)> = None;
    let mut n_forall = 0usize;
    let mut clauses: Vec<Vec<Lit>> = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let lineno = idx + 1;
        let line = raw.trim();
        if line.is_empty() {
            continue;
        }
        if let Some(rest) = line.strip_prefix("c") {
            let rest = rest.trim();
            if let Some(v) = rest.strip_prefix("forall") {
                n_forall = v
                    .trim()
                    .parse()
                    .map_err(|_| CnfError::Malformed(lineno, "bad forall count".into()))?;
            }
            continue;
        }
        if let Some(rest) = line.strip_prefix("p cnf") {
            let toks: Vec<&str> = rest.split_whitespace().collect();
            if toks.len() != 2 {
                return Err(CnfError::Malformed(lineno, "bad problem line".into()));
            }
            let vars = toks[0]
                .parse()
                .map_err(|_| CnfError::Malformed(lineno, "bad var count".into()))?;
            let m = toks[1]
                .parse()
                .map_err(|_| CnfError::Malformed(lineno, "bad clause count".into()))?;
            declared = Some((vars, m));
            continue;
        }
        let Some((vars, _)) = declared else {
            return Err(CnfError::MissingHeader);
        };
        let mut clause = Vec::new();
        for tok in line.split_whitespace() {
            let v: i64 = tok
                .parse()
                .map_err(|_| CnfError::Malformed(lineno, format!("bad literal `{tok}`")))?;
            if v == 0 {
                break;
            }
            let var = v.unsigned_abs() as usize - 1;
            if var >= vars {
                return Err(CnfError::VarOutOfRange(var, vars));
            }
            clause.push(Lit {
                var,
                negated: v < 0,
            });
        }
        if clause.is_empty() {
            return Err(CnfError::EmptyClause(clauses.len()));
        }
        clauses.push(clause);
    }
    let Some((vars, _)) = declared else {
        return Err(CnfError::MissingHeader);
    };
    CnfFormula::new(n_forall, vars - n_forall, clauses)
}

pub fn serialize_dimacs(f: &CnfFormula) -> String {
    let mut out = String::new();
    out.push_str(&format!("c forall {}\n", f.n_forall));
    out.push_str(&format!("p cnf {} {}\n", f.num_vars(), f.num_clauses()));
    for c in &f.clauses {
        for l in c {
            let v = (l.var + 1) as i64;
            out.push_str(&format!("{} ", if l.negated { -v } else { v }));
        }
        out.push_str("0\n");
    }
    out
}

/// Expand a <=3-CNF into a <=2-CNF with threshold `7m`: each 3-literal
/// clause `(a ∨ b ∨ c)` becomes the 10 clauses
/// `(a) (b) (c) (d) (¬a∨¬b) (¬a∨¬c) (¬b∨¬c) (a∨¬d) (b∨¬d) (c∨¬d)`
/// with a fresh existential `d`: a satisfied clause admits exactly 7,
/// an unsatisfied one at most 6. Shorter clauses pass through as 7
/// verbatim copies so the per-clause accounting stays exact.
pub fn gadget_3sat_to_minmax(f3: &CnfFormula) -> Result<(CnfFormula, usize), CnfError> {
    if f3.max_clause_len() > 3 {
        return Err(CnfError::ClauseTooLong(0, f3.max_clause_len(), 3));
    }
    let m = f3.num_clauses();
    let k = 7 * m;
    let three_count = f3.clauses.iter().filter(|c| c.len() == 3).count();
    let base = f3.num_vars();
    let mut clauses: Vec<Vec<Lit>> = Vec::new();
    let mut next_d = base;
    for clause in &f3.clauses {
        if clause.len() == 3 {
            let (a, b, c) = (clause[0], clause[1], clause[2]);
            let d = Lit::pos(next_d);
            next_d += 1;
            let neg = |l: Lit| Lit {
                var: l.var,
                negated: !l.negated,
            };
            clauses.push(vec![a]);
            clauses.push(vec![b]);
            clauses.push(vec![c]);
            clauses.push(vec![d]);
            clauses.push(vec![neg(a), neg(b)]);
            clauses.push(vec![neg(a), neg(c)]);
            clauses.push(vec![neg(b), neg(c)]);
            clauses.push(vec![a, neg(d)]);
            clauses.push(vec![b, neg(d)]);
            clauses.push(vec![c, neg(d)]);
        } else {
            for _ in 0..7 {
                clauses.push(clause.clone());
            }
        }
    }
    let out = CnfFormula::new(f3.n_forall, f3.n_exists + three_count, clauses)?;
    Ok((out, k))
}

fn check_budget(f: &CnfFormula) -> Result<(), CnfError> {
    if f.num_vars() > CNF_ENUMERATION_BUDGET {
        return Err(CnfError::SizeBudget(f.num_vars(), CNF_ENUMERATION_BUDGET));
    }
    Ok(())
}

fn assemble(n_forall: usize, n_exists: usize, x: &Mask, y: &Mask) -> Mask {
    let mut a = Mask::zeros(n_forall + n_exists);
    for i in 0..n_forall {
        if x.get(i) {
            a.set(i, true);
        }
    }
    for j in 0..n_exists {
        if y.get(j) {
            a.set(n_forall + j, true);
        }
    }
    a
}

/// `forall x exists y: at least k clauses satisfied`.
pub fn eval_minmax(f: &CnfFormula, k: usize) -> Result<bool, CnfError> {
    check_budget(f)?;
    for x in Mask::lex_iter(f.n_forall) {
        let mut found = false;
        for y in Mask::lex_iter(f.n_exists) {
            let a = assemble(f.n_forall, f.n_exists, &x, &y);
            if f.satisfied_count(&a) >= k {
                found = true;
                break;
            }
        }
        if !found {
            return Ok(false);
        }
    }
    Ok(true)
}

/// `exists x forall y: at least k clauses violated`.
pub fn eval_neg_minmax(f: &CnfFormula, k: usize) -> Result<bool, CnfError> {
    check_budget(f)?;
    for x in Mask::lex_iter(f.n_forall) {
        let mut all = true;
        for y in Mask::lex_iter(f.n_exists) {
            let a = assemble(f.n_forall, f.n_exists, &x, &y);
            if f.violated_count(&a) < k {
                all = false;
                break;
            }
        }
        if all {
            return Ok(true);
        }
    }
    Ok(false)
}

/// Brute-force `forall x exists y: all clauses satisfied` for <=3-CNF;
/// the oracle the gadget is verified against.
pub fn eval_forall_exists_sat(f: &CnfFormula) -> Result<bool, CnfError> {
    eval_minmax(f, f.num_clauses())
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::rngs::StdRng;
    use rand::{Rng, SeedableRng};

    fn two_clause_formula() -> CnfFormula {
        // (a1 ∨ b1) ∧ (¬a1 ∨ ¬b1) with one forall and one exists variable
        CnfFormula::new(
            1,
            1,
            vec![
                vec![Lit::pos(0), Lit::pos(1)],
                vec![Lit::neg(0), Lit::neg(1)],
            ],
        )
        .unwrap()
    }

    #[test]
    fn minmax_example() {
        let f = two_clause_formula();
        assert!(eval_minmax(&f, 2).unwrap());
        assert!(!eval_neg_minmax(&f, 1).unwrap());
    }

    #[test]
    fn empty_formula_trivially_true() {
        let f = CnfFormula::new(2, 1, vec![]).unwrap();
        assert!(eval_minmax(&f, 0).unwrap());
        assert!(eval_neg_minmax(&f, 0).unwrap());
        let (g, k) = gadget_3sat_to_minmax(&f).unwrap();
        assert_eq!(k, 0);
        assert_eq!(g.num_clauses(), 0);
    }

    /// Per-assignment gadget accounting: a satisfied 3-clause admits a
    /// `d` reaching exactly 7 of its 10 clauses and never more; an
    /// unsatisfied clause caps at 6.
    #[test]
    fn gadget_accounting_over_all_assignments() {
        let f3 = CnfFormula::new(
            0,
            3,
            vec![vec![Lit::pos(0), Lit::pos(1), Lit::pos(2)]],
        )
        .unwrap();
        let (f2, k) = gadget_3sat_to_minmax(&f3).unwrap();
        assert_eq!(k, 7);
        assert_eq!(f2.num_clauses(), 10);
        assert_eq!(f2.n_exists, 4);
        for abc in Mask::lex_iter(3) {
            let sat = f3.satisfied_count(&abc) == 1;
            let mut best = 0;
            for d in [false, true] {
                let mut a = Mask::zeros(4);
                for i in 0..3 {
                    if abc.get(i) {
                        a.set(i, true);
                    }
                }
                a.set(3, d);
                best = best.max(f2.satisfied_count(&a));
            }
            if sat {
                assert_eq!(best, 7, "satisfied clause must reach exactly 7");
            } else {
                assert!(best <= 6, "unsatisfied clause caps at 6");
            }
        }
    }

    #[test]
    fn unsatisfied_clause_d_values() {
        // all literals false: d = 0 gives 6, d = 1 gives 4
        let f3 = CnfFormula::new(0, 3, vec![vec![Lit::pos(0), Lit::pos(1), Lit::pos(2)]]).unwrap();
        let (f2, _) = gadget_3sat_to_minmax(&f3).unwrap();
        let mut a = Mask::zeros(4);
        assert_eq!(f2.satisfied_count(&a), 6);
        a.set(3, true);
        assert_eq!(f2.satisfied_count(&a), 4);
    }

    #[test]
    fn gadget_preserves_quantified_satisfiability() {
        let mut rng = StdRng::seed_from_u64(83);
        for _ in 0..40 {
            let n_forall = rng.gen_range(0..3);
            let n_exists = rng.gen_range(1..4);
            let total = n_forall + n_exists;
            let m = rng.gen_range(1..5);
            let clauses: Vec<Vec<Lit>> = (0..m)
                .map(|_| {
                    let len = rng.gen_range(1..=3usize);
                    let mut vars: Vec<usize> = (0..total).collect();
                    let mut clause = Vec::new();
                    for _ in 0..len.min(total) {
                        let i = rng.gen_range(0..vars.len());
                        let var = vars.remove(i);
                        clause.push(Lit {
                            var,
                            negated: rng.gen(),
                        });
                    }
                    clause
                })
                .collect();
            let f3 = CnfFormula::new(n_forall, n_exists, clauses).unwrap();
            let (f2, k) = gadget_3sat_to_minmax(&f3).unwrap();
            assert_eq!(
                eval_forall_exists_sat(&f3).unwrap(),
                eval_minmax(&f2, k).unwrap()
            );
        }
    }

    #[test]
    fn dimacs_roundtrip() {
        let f = two_clause_formula();
        let text = serialize_dimacs(&f);
        let back = parse_dimacs(&text).unwrap();
        assert_eq!(f, back);
    }

    #[test]
    fn dimacs_errors() {
        assert_eq!(parse_dimacs("1 2 0\n").unwrap_err(), CnfError::MissingHeader);
        assert!(matches!(
            parse_dimacs("p cnf 2 1\n3 0\n").unwrap_err(),
            CnfError::VarOutOfRange(2, 2)
        ));
    }
}
