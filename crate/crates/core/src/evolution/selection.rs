//! Non-dominated sorting, crowding distance, tournaments, and survivor
//! selection.

use super::{Attribute, Individual, Island};
use crate::options::{option_error, OptionsError};
use rand::seq::index::sample;
use rand::Rng;

#[derive(Clone, Debug, PartialEq)]
pub struct SelectionConfig {
    pub pareto_objectives: Vec<Attribute>,
    pub tournament_objectives: Vec<Attribute>,
    /// Share of each island's capacity filled by Pareto selection; the rest
    /// is filled by tournaments.
    pub pareto_ratio: f64,
    pub tournament_size: usize,
}

impl Default for SelectionConfig {
    fn default() -> Self {
        SelectionConfig {
            pareto_objectives: vec![Attribute::MsProcessedE, Attribute::Compl],
            tournament_objectives: vec![Attribute::MsProcessedE, Attribute::Compl],
            pareto_ratio: 0.5,
            tournament_size: 4,
        }
    }
}

impl SelectionConfig {
    pub fn validate(&self) -> Result<(), OptionsError> {
        if self.pareto_objectives.is_empty() {
            return Err(option_error("pareto_objectives", "needs at least one attribute"));
        }
        if self.tournament_objectives.is_empty() {
            return Err(option_error(
                "tournament_objectives",
                "needs at least one attribute",
            ));
        }
        if !(0.0..=1.0).contains(&self.pareto_ratio) {
            return Err(option_error(
                "pareto_ratio",
                format!("{} outside the range [0,1]", self.pareto_ratio),
            ));
        }
        if self.tournament_size < 2 {
            return Err(option_error("tournament_size", "must be at least 2"));
        }
        Ok(())
    }
}

/// `a` dominates `b` under minimisation.
pub fn dominates(a: &[f64], b: &[f64]) -> bool {
    let mut strictly = false;
    for (x, y) in a.iter().zip(b) {
        if x > y {
            return false;
        }
        if x < y {
            strictly = true;
        }
    }
    strictly
}

/// Crowding distance of each member of `front` (indices into `objs`),
/// returned in `front` order. Boundary points get infinity.
pub fn crowding_distance(objs: &[Vec<f64>], front: &[usize]) -> Vec<f64> {
    let n = front.len();
    let mut dist = vec![0.0; n];
    if n == 0 {
        return dist;
    }
    let m = objs[front[0]].len();
    let mut order: Vec<usize> = (0..n).collect();
    for k in 0..m {
        order.sort_by(|&a, &b| objs[front[a]][k].total_cmp(&objs[front[b]][k]));
        let lo = objs[front[order[0]]][k];
        let hi = objs[front[order[n - 1]]][k];
        dist[order[0]] = f64::INFINITY;
        dist[order[n - 1]] = f64::INFINITY;
        if hi > lo {
            for w in 1..n.saturating_sub(1) {
                let prev = objs[front[order[w - 1]]][k];
                let next = objs[front[order[w + 1]]][k];
                dist[order[w]] += (next - prev) / (hi - lo);
            }
        }
    }
    dist
}

/// Fast non-dominated sort. Fronts are ordered best first; members of a
/// front are ordered by descending crowding distance (ties by index).
pub fn non_dominated_sort(objs: &[Vec<f64>]) -> Vec<Vec<usize>> {
    let n = objs.len();
    let mut dominated_by_me: Vec<Vec<usize>> = vec![Vec::new(); n];
    let mut domination_count = vec![0usize; n];
    for i in 0..n {
        for j in (i + 1)..n {
            if dominates(&objs[i], &objs[j]) {
                dominated_by_me[i].push(j);
                domination_count[j] += 1;
            } else if dominates(&objs[j], &objs[i]) {
                dominated_by_me[j].push(i);
                domination_count[i] += 1;
            }
        }
    }
    let mut fronts = Vec::new();
    let mut current: Vec<usize> = (0..n).filter(|&i| domination_count[i] == 0).collect();
    while !current.is_empty() {
        let mut next = Vec::new();
        for &i in &current {
            for &j in &dominated_by_me[i] {
                domination_count[j] -= 1;
                if domination_count[j] == 0 {
                    next.push(j);
                }
            }
        }
        next.sort_unstable();
        fronts.push(current);
        current = next;
    }
    for front in fronts.iter_mut() {
        let dist = crowding_distance(objs, front);
        let mut paired: Vec<(usize, f64)> = front.iter().copied().zip(dist).collect();
        paired.sort_by(|a, b| b.1.total_cmp(&a.1).then(a.0.cmp(&b.0)));
        *front = paired.into_iter().map(|(i, _)| i).collect();
    }
    fronts
}

/// Front rank (0 = best) and crowding distance of every point.
pub fn rank_and_crowding(objs: &[Vec<f64>]) -> (Vec<usize>, Vec<f64>) {
    let mut rank = vec![0; objs.len()];
    let mut crowd = vec![0.0; objs.len()];
    for (r, front) in non_dominated_sort(objs).iter().enumerate() {
        for (&i, d) in front.iter().zip(crowding_distance(objs, front)) {
            rank[i] = r;
            crowd[i] = d;
        }
    }
    (rank, crowd)
}

fn objective_matrix(pool: &[Individual], attrs: &[Attribute]) -> Vec<Vec<f64>> {
    pool.iter().map(|ind| ind.objectives(attrs)).collect()
}

/// Winner among `contestants` by (rank, crowding, random).
fn tournament_winner<R: Rng + ?Sized>(
    contestants: &[usize],
    rank: &[usize],
    crowd: &[f64],
    rng: &mut R,
) -> usize {
    let keyed: Vec<(usize, u64)> = contestants.iter().map(|&c| (c, rng.random())).collect();
    keyed
        .into_iter()
        .min_by(|(a, ka), (b, kb)| {
            rank[*a]
                .cmp(&rank[*b])
                .then(crowd[*b].total_cmp(&crowd[*a]))
                .then(ka.cmp(kb))
        })
        .map(|(c, _)| c)
        .unwrap()
}

/// Runs `count` independent tournaments over `pool` and returns the indices
/// of the winners (the same individual may win several times). Each
/// tournament draws `tournament_size` distinct contestants.
pub fn tournament_select<R: Rng + ?Sized>(
    pool: &[Individual],
    cfg: &SelectionConfig,
    count: usize,
    rng: &mut R,
) -> Vec<usize> {
    if pool.is_empty() {
        return Vec::new();
    }
    let objs = objective_matrix(pool, &cfg.tournament_objectives);
    let (rank, crowd) = rank_and_crowding(&objs);
    let size = cfg.tournament_size.min(pool.len());
    (0..count)
        .map(|_| {
            let contestants = sample(rng, pool.len(), size).into_vec();
            tournament_winner(&contestants, &rank, &crowd, rng)
        })
        .collect()
}

/// Survivor selection for one island: invalid members are dropped, then
/// `round(pareto_ratio * capacity)` survivors are taken front by front,
/// and the remaining slots are filled by tournaments among the rest
/// (each winner leaves the pool). Survivors age by one generation.
pub fn select_next_generation<R: Rng + ?Sized>(
    island: Island,
    cfg: &SelectionConfig,
    rng: &mut R,
) -> Island {
    let Island {
        id,
        population,
        capacity,
    } = island;
    let pool: Vec<Individual> = population.into_iter().filter(|i| i.valid).collect();

    let mut chosen: Vec<usize> = if pool.len() <= capacity {
        (0..pool.len()).collect()
    } else {
        let n_pareto = ((cfg.pareto_ratio * capacity as f64).round() as usize).min(capacity);
        let mut chosen = Vec::with_capacity(capacity);
        if n_pareto > 0 {
            let objs = objective_matrix(&pool, &cfg.pareto_objectives);
            'fronts: for front in non_dominated_sort(&objs) {
                for i in front {
                    if chosen.len() == n_pareto {
                        break 'fronts;
                    }
                    chosen.push(i);
                }
            }
        }
        let mut taken = vec![false; pool.len()];
        chosen.iter().for_each(|&i| taken[i] = true);
        let mut rest: Vec<usize> = (0..pool.len()).filter(|&i| !taken[i]).collect();
        if !rest.is_empty() && chosen.len() < capacity {
            let sub: Vec<Individual> = rest.iter().map(|&i| pool[i].clone()).collect();
            let objs = objective_matrix(&sub, &cfg.tournament_objectives);
            let (rank, crowd) = rank_and_crowding(&objs);
            // positions into `sub` still available
            let mut open: Vec<usize> = (0..sub.len()).collect();
            while chosen.len() < capacity && !open.is_empty() {
                let size = cfg.tournament_size.min(open.len());
                let picks = sample(rng, open.len(), size).into_vec();
                let contestants: Vec<usize> = picks.iter().map(|&p| open[p]).collect();
                let winner = tournament_winner(&contestants, &rank, &crowd, rng);
                chosen.push(rest[winner]);
                open.retain(|&o| o != winner);
            }
            rest.clear();
        }
        chosen
    };
    chosen.sort_unstable();

    let mut slots: Vec<Option<Individual>> = pool.into_iter().map(Some).collect();
    let population = chosen
        .into_iter()
        .map(|i| {
            let mut ind = slots[i].take().unwrap();
            ind.age += 1;
            ind
        })
        .collect();
    Island {
        id,
        population,
        capacity,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn dominance() {
        assert!(dominates(&[1.0, 1.0], &[2.0, 2.0]));
        assert!(dominates(&[1.0, 2.0], &[1.0, 3.0]));
        assert!(!dominates(&[1.0, 2.0], &[1.0, 2.0]));
        assert!(!dominates(&[1.0, 3.0], &[2.0, 2.0]));
    }

    #[test]
    fn small_sorts() {
        assert_eq!(non_dominated_sort(&[vec![1.0, 1.0]]), vec![vec![0]]);
        assert_eq!(
            non_dominated_sort(&[vec![2.0, 2.0], vec![1.0, 1.0]]),
            vec![vec![1], vec![0]]
        );
        let objs = vec![
            vec![1.0, 5.0],
            vec![2.0, 3.0],
            vec![3.0, 2.0],
            vec![5.0, 1.0],
            vec![4.0, 4.0],
        ];
        let fronts = non_dominated_sort(&objs);
        assert_eq!(fronts.len(), 2);
        // boundary points first, then by crowding
        assert_eq!(&fronts[0][..2], &[0, 3]);
        assert_eq!(fronts[1], vec![4]);
    }

    #[test]
    fn crowding_boundaries_infinite() {
        let objs = vec![vec![0.0, 2.0], vec![1.0, 1.0], vec![2.0, 0.0]];
        let d = crowding_distance(&objs, &[0, 1, 2]);
        assert!(d[0].is_infinite() && d[2].is_infinite());
        assert_eq!(d[1], 2.0);
    }
}
