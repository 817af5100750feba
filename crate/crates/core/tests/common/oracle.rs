//! Dynamic-programming reference for miniature single-storage dispatch.
//!
//! Works in its own units (kW, kWh, kg, kg/h, hours) straight from the model
//! equations. Two bounds are produced:
//!
//! * `upper`: storage levels restricted to a uniform grid, each transition
//!   solved exactly. Every restricted schedule is feasible for the LP.
//! * `lower`: storage levels relaxed to bins, each step free to pick any pair
//!   of levels inside its two bins. The LP optimum maps onto one such path.
//!
//! The capacity charge is handled by capping grid power at K. On an interval
//! `[K_a, K_b]` the relaxed cost is at least `relaxed(K_b) + c·K_a`; intervals
//! whose bound is not yet above the best restricted cost are bisected.

#![allow(dead_code)]

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum StoreKind {
    /// State in kg, control is charge flow in kg/h.
    Accumulator,
    /// State in kWh, control is charge power in kW.
    Battery,
}

#[derive(Debug, Clone)]
pub struct Instance {
    pub kind: StoreKind,
    /// Step length, h.
    pub dt: f64,
    /// EUR/kWh.
    pub spot: Vec<f64>,
    /// EUR/kWh, non-negative.
    pub volumetric: Vec<f64>,
    /// EUR/kW per hour, non-negative.
    pub fcr: Vec<f64>,
    /// Horizon capacity charge, EUR/kW of peak.
    pub peak_price: f64,
    /// Steam demand, kg/h.
    pub demand: Vec<f64>,
    /// Enthalpy, kJ/kg.
    pub dh: f64,
    /// Boiler capacity, kW.
    pub p_max: f64,
    /// Storage level window and initial level.
    pub level_min: f64,
    pub level_max: f64,
    pub level_init: f64,
    /// Fraction of the level kept per step.
    pub keep: f64,
    pub eta_in: f64,
    pub eta_out: f64,
    /// Battery power limit γQ, kW; zero for the accumulator.
    pub power_limit: f64,
    /// Objective constant: initial stored energy at mean price, EUR.
    pub offset: f64,
}

#[derive(Debug, Clone, Copy)]
pub struct Bracket {
    pub lower: f64,
    pub upper: f64,
}

impl Bracket {
    pub fn width(&self) -> f64 {
        self.upper - self.lower
    }

    pub fn contains(&self, x: f64, tol: f64) -> bool {
        x >= self.lower - tol && x <= self.upper + tol
    }
}

type Pt = (f64, f64);

// Keeps the part of a convex polygon where a·Δ + b·x <= c.
fn clip(poly: &[Pt], a: f64, b: f64, c: f64) -> Vec<Pt> {
    let eps = 1e-9 * (1.0 + c.abs());
    let f = |p: &Pt| a * p.0 + b * p.1 - c;
    let mut out = Vec::with_capacity(poly.len() + 2);
    for i in 0..poly.len() {
        let p = poly[i];
        let q = poly[(i + 1) % poly.len()];
        let (fp, fq) = (f(&p), f(&q));
        if fp <= eps {
            out.push(p);
        }
        if (fp <= eps) != (fq <= eps) {
            let s = fp / (fp - fq);
            out.push((p.0 + s * (q.0 - p.0), p.1 + s * (q.1 - p.1)));
        }
    }
    out
}

impl Instance {
    pub fn steps(&self) -> usize {
        self.demand.len()
    }

    /// Cap on grid power from the FCR down-regulation row (with zero FCR).
    fn grid_cap(&self) -> f64 {
        self.p_max + self.power_limit
    }

    /// Range of grid power over level changes `Δ ∈ [d_lo, d_hi]` at step `t`,
    /// or `None` when no admissible control exists.
    fn grid_range(&self, t: usize, d_lo: f64, d_hi: f64) -> Option<(f64, f64)> {
        let dt = self.dt;
        let (ei, eo) = (self.eta_in, self.eta_out);
        // Outflow implied by (Δ, x): out = eo·(ei·x·dt − Δ)/dt.
        let x_big = 1e4 * (1.0 + self.level_max / dt + self.p_max * 3600.0 / self.dh + self.demand[t]);
        let mut poly = vec![(d_lo, 0.0), (d_hi, 0.0), (d_hi, x_big), (d_lo, x_big)];
        // out >= 0  <=>  Δ − ei·dt·x <= 0.
        poly = clip(&poly, 1.0, -ei * dt, 0.0);
        let grid: Box<dyn Fn(f64, f64) -> f64> = match self.kind {
            StoreKind::Accumulator => {
                let k = self.dh / 3600.0;
                let d = self.demand[t];
                // p_eb = k·(d + x − out) in [0, p_max]; linear in (Δ, x):
                // p_eb = k·(d + x(1 − ei·eo) + eo·Δ/dt).
                let (a, b, c0) = (k * eo / dt, k * (1.0 - ei * eo), k * d);
                poly = clip(&poly, a, b, self.p_max - c0);
                poly = clip(&poly, -a, -b, c0);
                Box::new(move |dd, x| c0 + a * dd + b * x)
            }
            StoreKind::Battery => {
                let p_eb = self.demand[t] * self.dh / 3600.0;
                if p_eb > self.p_max * (1.0 + 1e-12) {
                    return None;
                }
                let g = self.power_limit;
                // x <= g, out <= g, |x − out| <= g.
                poly = clip(&poly, 0.0, 1.0, g);
                poly = clip(&poly, -eo / dt, eo * ei, g);
                let (a, b) = (eo / dt, 1.0 - ei * eo);
                poly = clip(&poly, a, b, g);
                poly = clip(&poly, -a, -b, g);
                // grid = p_eb + x − out >= 0.
                poly = clip(&poly, -a, -b, p_eb);
                Box::new(move |dd, x| p_eb + a * dd + b * x)
            }
        };
        if poly.is_empty() {
            return None;
        }
        let mut lo = f64::INFINITY;
        let mut hi = f64::NEG_INFINITY;
        for &(dd, x) in &poly {
            let v = grid(dd, x);
            lo = lo.min(v);
            hi = hi.max(v);
        }
        Some((lo.max(0.0), hi.min(self.grid_cap())))
    }

    /// Least step cost for grid power in `[lo, hi]` capped at `cap`.
    fn step_cost(&self, t: usize, lo: f64, hi: f64, cap: f64) -> f64 {
        let hi = hi.min(cap);
        if lo > hi + 1e-9 {
            return f64::INFINITY;
        }
        let hi = hi.max(lo);
        let energy = self.spot[t] + self.volumetric[t];
        let u = self.grid_cap();
        let cost = |g: f64| self.dt * (energy * g - self.fcr[t] * g.min(u - g).max(0.0));
        let mut best = cost(lo).min(cost(hi));
        let kink = 0.5 * u;
        if kink > lo && kink < hi {
            best = best.min(cost(kink));
        }
        best
    }

    /// Grid-power ranges for every transition; `prev` and `next` are level
    /// intervals (degenerate for the restricted grid).
    fn ranges(&self, prev: &[(f64, f64)], next: &[(f64, f64)]) -> Vec<Vec<Vec<Option<(f64, f64)>>>> {
        (0..self.steps())
            .map(|t| {
                let from: Vec<(f64, f64)> = if t == 0 {
                    vec![(self.level_init, self.level_init)]
                } else {
                    prev.to_vec()
                };
                from.iter()
                    .map(|&(a_lo, a_hi)| {
                        next.iter()
                            .map(|&(b_lo, b_hi)| self.grid_range(t, b_lo - self.keep * a_hi, b_hi - self.keep * a_lo))
                            .collect()
                    })
                    .collect()
            })
            .collect()
    }

    fn dp(&self, ranges: &[Vec<Vec<Option<(f64, f64)>>>], cap: f64) -> f64 {
        let n_next = ranges[0][0].len();
        let mut value: Vec<f64> = vec![0.0];
        for (t, table) in ranges.iter().enumerate() {
            let mut next = vec![f64::INFINITY; n_next];
            for (i, row) in table.iter().enumerate() {
                if !value[i].is_finite() {
                    continue;
                }
                for (j, r) in row.iter().enumerate() {
                    if let Some((lo, hi)) = *r {
                        let c = value[i] + self.step_cost(t, lo, hi, cap);
                        if c < next[j] {
                            next[j] = c;
                        }
                    }
                }
            }
            value = next;
        }
        value.into_iter().fold(f64::INFINITY, f64::min)
    }

    /// Brackets the optimal objective with `bins` level bins, spending at most
    /// `budget` DP passes per bound on the peak cap.
    pub fn bracket(&self, bins: usize, budget: usize) -> Bracket {
        let span = self.level_max - self.level_min;
        let h = span / bins as f64;
        let points: Vec<(f64, f64)> = (0..=bins)
            .map(|j| {
                let x = if j == bins { self.level_max } else { self.level_min + h * j as f64 };
                (x, x)
            })
            .collect();
        let cells: Vec<(f64, f64)> = (0..bins)
            .map(|j| {
                let lo = self.level_min + h * j as f64;
                let hi = if j + 1 == bins { self.level_max } else { lo + h };
                (lo, hi)
            })
            .collect();
        let restricted = self.ranges(&points, &points);
        let relaxed = self.ranges(&cells, &cells);
        let u = self.grid_cap();
        let c = self.peak_price;

        if c <= 0.0 {
            return Bracket {
                lower: self.dp(&relaxed, u) + self.offset,
                upper: self.dp(&restricted, u) + self.offset,
            };
        }

        let upper_at = |k: f64| self.dp(&restricted, k) + c * k;
        let lower_at = |k: f64| self.dp(&relaxed, k);
        let initial = 17;
        let mut caps: Vec<f64> = (0..initial).map(|i| u * i as f64 / (initial - 1) as f64).collect();
        let mut low: Vec<f64> = caps.iter().map(|&k| lower_at(k)).collect();
        let mut upper = caps.iter().map(|&k| upper_at(k)).fold(f64::INFINITY, f64::min);
        let mut passes = initial;
        let min_width = u * 1e-6;
        loop {
            let bound = |i: usize, caps: &[f64], low: &[f64]| low[i + 1] + c * caps[i];
            let split = (0..caps.len() - 1)
                .filter(|&i| caps[i + 1] - caps[i] > min_width && bound(i, &caps, &low) < upper)
                .min_by(|&a, &b| bound(a, &caps, &low).total_cmp(&bound(b, &caps, &low)));
            let Some(i) = split else { break };
            if passes >= budget {
                break;
            }
            let mid = 0.5 * (caps[i] + caps[i + 1]);
            caps.insert(i + 1, mid);
            low.insert(i + 1, lower_at(mid));
            upper = upper.min(upper_at(mid));
            passes += 1;
        }
        let lower = (0..caps.len() - 1)
            .map(|i| low[i + 1] + c * caps[i])
            .fold(f64::INFINITY, f64::min);
        Bracket {
            lower: lower + self.offset,
            upper: upper + self.offset,
        }
    }
}
