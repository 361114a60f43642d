use super::selection::dominates;
use super::{Attribute, Individual};
use std::collections::HashSet;

/// Non-dominated archive over everything seen during a run, keyed by the
/// printed form of each expression.
#[derive(Clone, Debug, PartialEq)]
pub struct HallOfFame {
    objectives: Vec<Attribute>,
    members: Vec<Individual>,
}

impl HallOfFame {
    pub fn new(objectives: Vec<Attribute>) -> Self {
        HallOfFame {
            objectives,
            members: Vec::new(),
        }
    }

    pub fn objectives(&self) -> &[Attribute] {
        &self.objectives
    }

    pub fn members(&self) -> &[Individual] {
        &self.members
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn into_members(self) -> Vec<Individual> {
        self.members
    }

    /// Adds `candidate` unless it is invalid, already present, or dominated.
    /// Members it dominates are evicted. Returns whether it was added.
    pub fn insert(&mut self, candidate: &Individual) -> bool {
        if !candidate.valid {
            return false;
        }
        let key = candidate.expr.to_string();
        let objs = candidate.objectives(&self.objectives);
        for m in &self.members {
            let mo = m.objectives(&self.objectives);
            if dominates(&mo, &objs) || m.expr.to_string() == key {
                return false;
            }
        }
        let attrs = &self.objectives;
        self.members.retain(|m| !dominates(&objs, &m.objectives(attrs)));
        self.members.push(candidate.clone());
        true
    }

    pub fn extend<'a>(&mut self, candidates: impl IntoIterator<Item = &'a Individual>) {
        for c in candidates {
            self.insert(c);
        }
    }

    /// Lowest value of `attr` among the members.
    pub fn best(&self, attr: Attribute) -> Option<f64> {
        self.members
            .iter()
            .map(|m| m.attribute(attr))
            .min_by(f64::total_cmp)
    }

    /// The member minimising `attr`.
    pub fn best_by(&self, attr: Attribute) -> Option<&Individual> {
        self.members
            .iter()
            .min_by(|a, b| a.attribute(attr).total_cmp(&b.attribute(attr)))
    }

    /// Number of distinct printed expressions, used as a sanity check.
    pub fn distinct(&self) -> usize {
        self.members
            .iter()
            .map(|m| m.expr.to_string())
            .collect::<HashSet<_>>()
            .len()
    }
}
