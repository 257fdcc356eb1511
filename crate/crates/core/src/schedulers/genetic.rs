//! Genetic-algorithm baseline over assignment chromosomes.
//!
//! A chromosome holds one node index per task, restricted to the task's
//! memory-feasible nodes. Fitness is the total cost of the chromosome with
//! tasks dispatched in input order (lower is better). Each generation keeps
//! `elitism` best individuals and fills the rest with tournament-selected,
//! single-point-crossed, per-gene-mutated children.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::cost::ViolationPolicy;
use crate::error::ScheduleError;
use crate::model::Instance;
use crate::schedule::{schedule_total, Schedule, Scratch};
use crate::schedulers::feasibility;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct GeneticParams {
    pub population: usize,
    pub generations: usize,
    pub tournament_size: usize,
    pub crossover_rate: f64,
    pub mutation_rate: f64,
    pub elitism: usize,
}

impl Default for GeneticParams {
    fn default() -> Self {
        Self {
            population: 100,
            generations: 1000,
            tournament_size: 4,
            crossover_rate: 0.8,
            mutation_rate: 0.1,
            elitism: 1,
        }
    }
}

impl GeneticParams {
    pub fn validate(&self) -> Result<(), ScheduleError> {
        let fail = |msg: &str| Err(ScheduleError::InvalidParams(msg.to_string()));
        if self.population == 0 {
            return fail("population must be >= 1");
        }
        if self.tournament_size == 0 {
            return fail("tournament_size must be >= 1");
        }
        if !(0.0..=1.0).contains(&self.crossover_rate) {
            return fail("crossover_rate must lie in [0, 1]");
        }
        if !(0.0..=1.0).contains(&self.mutation_rate) {
            return fail("mutation_rate must lie in [0, 1]");
        }
        if self.elitism > self.population {
            return fail("elitism cannot exceed the population");
        }
        Ok(())
    }
}

struct Individual {
    genes: Vec<usize>,
    fitness: f64,
}

struct Evolution<'a> {
    instance: &'a Instance,
    feasible: Vec<Vec<usize>>,
    order: Vec<usize>,
    policy: ViolationPolicy,
    scratch: Scratch,
    rng: ChaCha8Rng,
}

impl Evolution<'_> {
    fn fitness(&mut self, genes: &[usize]) -> f64 {
        schedule_total(self.instance, genes, &self.order, self.policy, &mut self.scratch)
    }

    fn random_gene(&mut self, task: usize) -> usize {
        let choices = &self.feasible[task];
        choices[self.rng.random_range(0..choices.len())]
    }

    fn initial_population(&mut self, size: usize) -> Vec<Individual> {
        (0..size)
            .map(|_| {
                let genes: Vec<usize> = (0..self.feasible.len()).map(|i| self.random_gene(i)).collect();
                let fitness = self.fitness(&genes);
                Individual { genes, fitness }
            })
            .collect()
    }

    fn tournament<'p>(&mut self, population: &'p [Individual], size: usize) -> &'p Individual {
        let mut best = &population[self.rng.random_range(0..population.len())];
        for _ in 1..size {
            let other = &population[self.rng.random_range(0..population.len())];
            if other.fitness < best.fitness {
                best = other;
            }
        }
        best
    }
}

fn rank(population: &[Individual]) -> Vec<usize> {
    let mut idx: Vec<usize> = (0..population.len()).collect();
    idx.sort_by(|&a, &b| population[a].fitness.total_cmp(&population[b].fitness).then(a.cmp(&b)));
    idx
}

/// Evolves assignments for `params.generations` generations and returns the
/// best individual seen, dispatched in input order.
pub fn genetic(
    instance: &Instance,
    params: &GeneticParams,
    policy: ViolationPolicy,
    seed: u64,
) -> Result<Schedule, ScheduleError> {
    params.validate()?;
    let n = instance.num_tasks();
    let mut evo = Evolution {
        instance,
        feasible: feasibility(instance)?,
        order: (0..n).collect(),
        policy,
        scratch: Scratch::default(),
        rng: ChaCha8Rng::seed_from_u64(seed),
    };

    let mut population = evo.initial_population(params.population);
    let ranked = rank(&population);
    let mut best_genes = population[ranked[0]].genes.clone();
    let mut best_fitness = population[ranked[0]].fitness;

    for _ in 0..params.generations {
        let ranked = rank(&population);
        let mut next: Vec<Individual> = ranked[..params.elitism]
            .iter()
            .map(|&k| Individual {
                genes: population[k].genes.clone(),
                fitness: population[k].fitness,
            })
            .collect();
        while next.len() < params.population {
            let mut child = evo.tournament(&population, params.tournament_size).genes.clone();
            let other = evo.tournament(&population, params.tournament_size);
            if n > 1 && evo.rng.random_bool(params.crossover_rate) {
                let cut = evo.rng.random_range(1..n);
                child[cut..].copy_from_slice(&other.genes[cut..]);
            }
            if params.mutation_rate > 0.0 {
                #[allow(clippy::needless_range_loop)] // `evo` is borrowed mutably inside
                for i in 0..n {
                    if evo.rng.random_bool(params.mutation_rate) {
                        child[i] = evo.random_gene(i);
                    }
                }
            }
            let fitness = evo.fitness(&child);
            next.push(Individual { genes: child, fitness });
        }
        population = next;
        for ind in &population {
            if ind.fitness < best_fitness {
                best_fitness = ind.fitness;
                best_genes.clone_from(&ind.genes);
            }
        }
    }

    Ok(Schedule::in_input_order(instance, best_genes))
}
