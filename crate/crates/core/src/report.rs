//! Machine-readable solve reports and approximation floors.

use serde::Serialize;

use crate::instance::Instance;
use crate::scalar::Weight;
use crate::solvers::{Algorithm, SolveReport};
use crate::viability::truncated_depth;

/// Guaranteed fraction of the optimum for `greedy_p`: `(1 - e^{-p/(p+d-1)}) / 2`.
pub fn floor_greedy(p: usize, d: usize) -> f64 {
    floor_enum(p, d) / 2.0
}

/// Guaranteed fraction of the optimum for `enum_p`: `1 - e^{-p/(p+d-1)}`.
pub fn floor_enum(p: usize, d: usize) -> f64 {
    let (p, d) = (p as f64, d as f64);
    1.0 - (-p / (p + d - 1.0)).exp()
}

/// Floor for `algorithm`, or `None` when it has no guarantee.
pub fn floor_for(algorithm: Algorithm, p: usize, d: usize) -> Option<f64> {
    match algorithm {
        Algorithm::Faller => None,
        Algorithm::GreedyP => Some(floor_greedy(p, d)),
        Algorithm::EnumP => Some(floor_enum(p, d)),
        Algorithm::Exact => Some(1.0),
    }
}

/// `value / optimum`, defined as 1 when the optimum is 0.
pub fn ratio<W: Weight>(value: W, optimum: W) -> f64 {
    if optimum.is_zero() {
        1.0
    } else {
        value.to_f64_lossy() / optimum.to_f64_lossy()
    }
}

/// Stable JSON shape of one solver run.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Report {
    pub algorithm: String,
    pub p: Option<usize>,
    pub k: usize,
    pub d: usize,
    pub n: usize,
    pub value: u128,
    pub set: Vec<String>,
    pub viable: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub optimum: Option<u128>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub ratio: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub floor: Option<f64>,
    /// `None` when timing is suppressed for reproducible output.
    pub elapsed_ms: Option<u64>,
}

impl Report {
    pub fn new<W: Weight>(inst: &Instance<W>, run: &SolveReport<W>, timing: bool) -> Self {
        let sp = inst.species();
        Report {
            algorithm: run.algorithm.name().to_string(),
            p: run.p,
            k: inst.budget,
            d: truncated_depth(&inst.web, inst.budget).d,
            n: inst.species_count(),
            value: run.value.widen(),
            set: run.chosen.iter().map(|i| sp.name(i).to_string()).collect(),
            viable: run.viable,
            optimum: None,
            ratio: None,
            floor: None,
            elapsed_ms: timing.then(|| run.elapsed.as_millis() as u64),
        }
    }

    /// Adds the optimum, the achieved ratio and the guaranteed floor.
    pub fn with_optimum<W: Weight>(mut self, value: W, optimum: W) -> Self {
        self.optimum = Some(optimum.widen());
        self.ratio = Some(ratio(value, optimum));
        let algorithm = self.algorithm.parse().expect("report holds a known algorithm");
        self.floor = floor_for(algorithm, self.p.unwrap_or(1), self.d);
        self
    }

    /// Ratio at least the floor; `None` without a floor or optimum.
    pub fn passes(&self) -> Option<bool> {
        let (ratio, floor) = (self.ratio?, self.floor?);
        Some(ratio + 1e-12 >= floor)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("report serializes")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::solvers::{solve, SolverConfig};

    #[test]
    fn floors() {
        assert!((floor_greedy(1, 2) - 0.196_734).abs() < 1e-6);
        assert!((floor_enum(1, 1) - (1.0 - (-1.0f64).exp())).abs() < 1e-12);
        assert!(floor_greedy(2, 3) < floor_enum(2, 3));
        assert_eq!(floor_for(Algorithm::Faller, 1, 2), None);
    }

    #[test]
    fn ratio_of_zero_optimum() {
        assert_eq!(ratio(0u64, 0), 1.0);
        assert_eq!(ratio(2u64, 10), 0.2);
    }

    #[test]
    fn json_shape() {
        let inst = Instance::<u64>::parse("[tree]\n(y:0,z:10,x1:1,x2:1)r;\n[web]\nz y\n[budget]\n2\n").unwrap();
        let run = solve(&inst, &SolverConfig::new(Algorithm::Faller)).unwrap();
        let rep = Report::new(&inst, &run, false).with_optimum(run.value, 10u64);
        assert_eq!(
            rep.to_json(),
            r#"{"algorithm":"faller","p":null,"k":2,"d":2,"n":4,"value":2,"set":["x1","x2"],"viable":true,"optimum":10,"ratio":0.2,"elapsed_ms":null}"#
        );
        assert_eq!(rep.passes(), None);
    }
}
