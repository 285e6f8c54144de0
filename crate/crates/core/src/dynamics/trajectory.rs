use serde::Serialize;

/// Observables recorded at one instant. Energies are in units of ω₀.
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize)]
pub struct Record {
    pub e_a: f64,
    pub e_b: f64,
    pub ergotropy_b: f64,
    pub abs_mean_a_sq: f64,
    pub abs_mean_b_sq: f64,
    pub trace_err: f64,
    pub top_pop_a: f64,
    pub top_pop_b: f64,
}

/// Time series of [`Record`]s, plus sparse positivity samples.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct Trajectory {
    pub times: Vec<f64>,
    pub rows: Vec<Record>,
    /// `(t, λ_min(ρ(t)))` at the sampled times.
    pub min_eigenvalues: Vec<(f64, f64)>,
}

impl Trajectory {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn len(&self) -> usize {
        self.times.len()
    }

    pub fn is_empty(&self) -> bool {
        self.times.is_empty()
    }

    /// Appends a row; times must strictly increase.
    pub fn push(&mut self, t: f64, row: Record) {
        if let Some(&last) = self.times.last() {
            assert!(t > last, "trajectory times must increase ({t} after {last})");
        }
        self.times.push(t);
        self.rows.push(row);
    }

    /// Concatenates `next`, dropping its first row if it repeats our last time.
    pub fn extend_with(&mut self, next: Trajectory) {
        for (t, row) in next.times.into_iter().zip(next.rows) {
            if self.times.last().is_some_and(|&last| t <= last) {
                continue;
            }
            self.push(t, row);
        }
        self.min_eigenvalues.extend(next.min_eigenvalues);
    }

    pub fn column(&self, f: impl Fn(&Record) -> f64) -> Vec<f64> {
        self.rows.iter().map(f).collect()
    }

    pub fn e_a(&self) -> Vec<f64> {
        self.column(|r| r.e_a)
    }

    pub fn e_b(&self) -> Vec<f64> {
        self.column(|r| r.e_b)
    }

    pub fn ergotropy(&self) -> Vec<f64> {
        self.column(|r| r.ergotropy_b)
    }

    pub fn max_trace_error(&self) -> f64 {
        self.rows.iter().map(|r| r.trace_err).fold(0.0, f64::max)
    }

    /// Smallest sampled eigenvalue, if any samples were taken.
    pub fn min_sampled_eigenvalue(&self) -> Option<f64> {
        self.min_eigenvalues.iter().map(|&(_, l)| l).reduce(f64::min)
    }

    pub fn max_top_population(&self) -> f64 {
        self.rows
            .iter()
            .map(|r| r.top_pop_a.max(r.top_pop_b))
            .fold(0.0, f64::max)
    }
}
