//! DE/rand/1/bin minimiser.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::SearchError;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DeParams {
    pub population: usize,
    /// Differential weight, in (0, 2).
    pub f: f64,
    /// Crossover rate, in [0, 1].
    pub cr: f64,
    pub generations: usize,
    /// Stop once the population's value spread is below `tol·(1 + |mean|)`.
    pub tol: f64,
    pub seed: u64,
}

impl Default for DeParams {
    fn default() -> Self {
        Self {
            population: 32,
            f: 0.7,
            cr: 0.9,
            generations: 150,
            tol: 1e-6,
            seed: 2024,
        }
    }
}

impl DeParams {
    pub fn validate(&self) -> Result<(), SearchError> {
        if self.population < 4 {
            return Err(SearchError::Config(format!(
                "differential evolution needs a population of at least 4, got {}",
                self.population
            )));
        }
        if !(self.f > 0.0 && self.f < 2.0) {
            return Err(SearchError::Config(format!("differential weight {} outside (0, 2)", self.f)));
        }
        if !(0.0..=1.0).contains(&self.cr) {
            return Err(SearchError::Config(format!("crossover rate {} outside [0, 1]", self.cr)));
        }
        if !(self.tol >= 0.0) {
            return Err(SearchError::Config("convergence tolerance must be non-negative".into()));
        }
        Ok(())
    }
}

/// Best-so-far after one generation; generation 0 is the initial population.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DeGeneration {
    pub generation: usize,
    pub best_value: f64,
    pub best_point: Vec<f64>,
    pub mean_value: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DeResult {
    pub best_point: Vec<f64>,
    pub best_value: f64,
    pub trace: Vec<DeGeneration>,
    pub evaluations: usize,
    pub converged: bool,
}

/// Minimises `objective` over the box `bounds`.
///
/// `seeds` replace the first members of the random initial population (after
/// clipping). Evaluation runs in parallel; every random draw happens on the
/// calling thread, so results depend only on `params.seed`.
pub fn differential_evolution<F>(
    objective: F,
    bounds: &[(f64, f64)],
    params: &DeParams,
    seeds: &[Vec<f64>],
) -> Result<DeResult, SearchError>
where
    F: Fn(&[f64]) -> f64 + Sync,
{
    params.validate()?;
    let dim = bounds.len();
    if dim == 0 {
        return Err(SearchError::Config("empty search box".into()));
    }
    for (i, &(lo, hi)) in bounds.iter().enumerate() {
        if !(lo.is_finite() && hi.is_finite() && lo <= hi) {
            return Err(SearchError::Config(format!("bound {i} = [{lo}, {hi}] is not a finite interval")));
        }
    }
    if let Some(s) = seeds.iter().find(|s| s.len() != dim) {
        return Err(SearchError::Config(format!("seed point has {} coordinates, expected {dim}", s.len())));
    }

    let clip = |x: &mut Vec<f64>| {
        for (v, &(lo, hi)) in x.iter_mut().zip(bounds) {
            *v = v.clamp(lo, hi);
        }
    };
    let eval = |pts: &[Vec<f64>]| -> Vec<f64> {
        pts.par_iter()
            .map(|p| {
                let v = objective(p);
                if v.is_nan() {
                    f64::INFINITY
                } else {
                    v
                }
            })
            .collect()
    };

    let np = params.population;
    let mut rng = ChaCha8Rng::seed_from_u64(params.seed);
    let mut pop: Vec<Vec<f64>> = (0..np)
        .map(|_| bounds.iter().map(|&(lo, hi)| if lo == hi { lo } else { rng.random_range(lo..=hi) }).collect())
        .collect();
    for (member, s) in pop.iter_mut().zip(seeds) {
        *member = s.clone();
        clip(member);
    }
    let mut values = eval(&pop);
    let mut evaluations = np;

    let argmin = |v: &[f64]| {
        v.iter()
            .enumerate()
            .fold(0, |b, (i, &x)| if x < v[b] { i } else { b })
    };
    let mut best = argmin(&values);
    let mut best_point = pop[best].clone();
    let mut best_value = values[best];
    let mean = |v: &[f64]| v.iter().sum::<f64>() / v.len() as f64;
    let mut trace = vec![DeGeneration {
        generation: 0,
        best_value,
        best_point: best_point.clone(),
        mean_value: mean(&values),
    }];
    let mut converged = spread_below(&values, params.tol);

    let mut generation = 1;
    while generation <= params.generations && !converged {
        let trials: Vec<Vec<f64>> = (0..np)
            .map(|i| {
                let (a, b, c) = distinct_three(&mut rng, np, i);
                let j_rand = rng.random_range(0..dim);
                let mut trial = pop[i].clone();
                for j in 0..dim {
                    if j == j_rand || rng.random::<f64>() < params.cr {
                        trial[j] = pop[a][j] + params.f * (pop[b][j] - pop[c][j]);
                    }
                }
                clip(&mut trial);
                trial
            })
            .collect();
        let trial_values = eval(&trials);
        evaluations += np;
        for (i, (t, v)) in trials.into_iter().zip(trial_values).enumerate() {
            if v <= values[i] {
                pop[i] = t;
                values[i] = v;
            }
        }
        best = argmin(&values);
        if values[best] < best_value {
            best_value = values[best];
            best_point = pop[best].clone();
        }
        trace.push(DeGeneration {
            generation,
            best_value,
            best_point: best_point.clone(),
            mean_value: mean(&values),
        });
        converged = spread_below(&values, params.tol);
        generation += 1;
    }

    Ok(DeResult {
        best_point,
        best_value,
        trace,
        evaluations,
        converged,
    })
}

fn spread_below(values: &[f64], tol: f64) -> bool {
    let lo = values.iter().cloned().fold(f64::INFINITY, f64::min);
    let hi = values.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
    let mean = values.iter().sum::<f64>() / values.len() as f64;
    hi.is_finite() && hi - lo <= tol * (1.0 + mean.abs())
}

fn distinct_three(rng: &mut ChaCha8Rng, n: usize, exclude: usize) -> (usize, usize, usize) {
    let mut pick = |taken: &[usize]| loop {
        let k = rng.random_range(0..n);
        if k != exclude && !taken.contains(&k) {
            return k;
        }
    };
    let a = pick(&[]);
    let b = pick(&[a]);
    let c = pick(&[a, b]);
    (a, b, c)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sphere(x: &[f64]) -> f64 {
        x.iter().map(|v| v * v).sum()
    }

    #[test]
    fn sphere_converges() {
        let p = DeParams {
            generations: 200,
            tol: 0.0,
            ..DeParams::default()
        };
        let r = differential_evolution(sphere, &[(-5.0, 5.0); 4], &p, &[]).unwrap();
        assert!(r.best_value < 1e-6, "best {}", r.best_value);
    }

    #[test]
    fn constant_objective_gives_flat_trace() {
        let r = differential_evolution(|_| 3.0, &[(0.0, 1.0); 2], &DeParams::default(), &[]).unwrap();
        assert!(r.trace.iter().all(|g| g.best_value == 3.0));
        assert!(r.converged);
    }

    #[test]
    fn small_population_is_rejected() {
        let p = DeParams {
            population: 3,
            ..DeParams::default()
        };
        assert!(matches!(
            differential_evolution(sphere, &[(0.0, 1.0)], &p, &[]),
            Err(SearchError::Config(_))
        ));
    }

    #[test]
    fn seed_member_is_kept_when_optimal() {
        let p = DeParams {
            generations: 5,
            ..DeParams::default()
        };
        let r = differential_evolution(sphere, &[(-1.0, 1.0); 3], &p, &[vec![0.0; 3]]).unwrap();
        assert_eq!(r.best_value, 0.0);
        assert_eq!(r.trace[0].best_value, 0.0);
    }

    #[test]
    fn fixed_coordinates_stay_fixed() {
        let r = differential_evolution(sphere, &[(-2.0, 2.0), (1.5, 1.5)], &DeParams::default(), &[]).unwrap();
        assert_eq!(r.best_point[1], 1.5);
    }
}
