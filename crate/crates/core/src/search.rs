//! Backtracking search for compatible families: natural transformations,
//! ends and limits of finite set diagrams all reduce to choosing one value
//! per variable subject to equations `hu(x_u) = hv(x_v)`.

use crate::error::Result;
use crate::guard::SearchBudget;

const UNSET: usize = usize::MAX;

#[derive(Debug, Clone)]
struct Equation {
    u: usize,
    /// `None` means the identity, which lets an assignment of `v` force `u`.
    hu: Option<usize>,
    v: usize,
    hv: usize,
}

#[derive(Debug, Clone, Default)]
pub(crate) struct FamilySearch {
    domains: Vec<usize>,
    tables: Vec<Vec<usize>>,
    equations: Vec<Equation>,
    by_var: Vec<Vec<usize>>,
}

impl FamilySearch {
    pub(crate) fn new(domains: Vec<usize>) -> Self {
        let n = domains.len();
        FamilySearch {
            domains,
            by_var: vec![Vec::new(); n],
            ..Default::default()
        }
    }

    pub(crate) fn table(&mut self, t: Vec<usize>) -> usize {
        self.tables.push(t);
        self.tables.len() - 1
    }

    /// Requires `x_u = hv(x_v)`.
    pub(crate) fn forced(&mut self, u: usize, v: usize, hv: usize) {
        self.push(Equation { u, hu: None, v, hv });
    }

    /// Requires `hu(x_u) = hv(x_v)`.
    pub(crate) fn equal(&mut self, u: usize, hu: usize, v: usize, hv: usize) {
        self.push(Equation { u, hu: Some(hu), v, hv });
    }

    fn push(&mut self, e: Equation) {
        let id = self.equations.len();
        self.by_var[e.u].push(id);
        if e.v != e.u {
            self.by_var[e.v].push(id);
        }
        self.equations.push(e);
    }

    /// All solutions, in lexicographic order of the assignment vector.
    pub(crate) fn solve(&self, budget: &mut SearchBudget) -> Result<Vec<Vec<usize>>> {
        let mut assign = vec![UNSET; self.domains.len()];
        let mut trail = Vec::new();
        let mut out = Vec::new();
        self.dfs(0, &mut assign, &mut trail, &mut out, budget)?;
        Ok(out)
    }

    fn dfs(
        &self,
        start: usize,
        assign: &mut Vec<usize>,
        trail: &mut Vec<usize>,
        out: &mut Vec<Vec<usize>>,
        budget: &mut SearchBudget,
    ) -> Result<()> {
        budget.tick()?;
        let mut var = start;
        while var < assign.len() && assign[var] != UNSET {
            var += 1;
        }
        if var == assign.len() {
            out.push(assign.clone());
            return Ok(());
        }
        for val in 0..self.domains[var] {
            let mark = trail.len();
            if self.assign(var, val, assign, trail) {
                self.dfs(var + 1, assign, trail, out, budget)?;
            }
            while trail.len() > mark {
                let x = trail.pop().expect("trail entry");
                assign[x] = UNSET;
            }
        }
        Ok(())
    }

    fn assign(&self, var: usize, val: usize, assign: &mut [usize], trail: &mut Vec<usize>) -> bool {
        let mut queue = vec![(var, val)];
        while let Some((x, vx)) = queue.pop() {
            if assign[x] != UNSET {
                if assign[x] != vx {
                    return false;
                }
                continue;
            }
            assign[x] = vx;
            trail.push(x);
            for &e in &self.by_var[x] {
                let eq = &self.equations[e];
                let (au, av) = (assign[eq.u], assign[eq.v]);
                if av == UNSET {
                    continue;
                }
                let target = self.tables[eq.hv][av];
                match eq.hu {
                    None if au == UNSET => queue.push((eq.u, target)),
                    None if au != target => return false,
                    Some(t) if au != UNSET && self.tables[t][au] != target => return false,
                    _ => {}
                }
            }
        }
        true
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::guard::SizeGuard;

    #[test]
    fn forced_chain_has_one_solution_per_root_value() {
        let mut s = FamilySearch::new(vec![3, 3, 3]);
        let succ = s.table(vec![1, 2, 0]);
        s.forced(1, 0, succ);
        s.forced(2, 1, succ);
        let sols = s.solve(&mut SearchBudget::new(&SizeGuard::default(), "test")).unwrap();
        assert_eq!(sols, vec![vec![0, 1, 2], vec![1, 2, 0], vec![2, 0, 1]]);
    }

    #[test]
    fn empty_domain_kills_every_solution() {
        let s = FamilySearch::new(vec![2, 0]);
        assert!(s.solve(&mut SearchBudget::new(&SizeGuard::default(), "test")).unwrap().is_empty());
        let none = FamilySearch::new(vec![]);
        assert_eq!(none.solve(&mut SearchBudget::new(&SizeGuard::default(), "test")).unwrap(), vec![Vec::<usize>::new()]);
    }

    #[test]
    fn budget_trips() {
        let s = FamilySearch::new(vec![10; 6]);
        let guard = SizeGuard {
            max_search: 100,
            ..SizeGuard::default()
        };
        assert!(s.solve(&mut SearchBudget::new(&guard, "test")).is_err());
    }
}
