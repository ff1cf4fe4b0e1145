//! Fixed inputs shared by the benchmarks.

use implicit_core::{ProblemInstance, Variables};

pub const GOLDEN: [&str; 4] = [
    "3*s^2*t*v-2*s*u*t^2-s^2*v^2+s*u*t*v-3*s*u*v^2-u^2*t*v+4*u^2*v^2-u^2*t^2",
    "3*s^2*t*v-s^2*v^2-3*s*u*t*v-s*u*v^2+u^2*t*v+u^2*t^2+u^2*t^2+s^2*t^2",
    "2*s^2*t^2-3*s^2*t*v-s^2*v^2+s*u*t*v+3*s*u*v^2-3*u^2*t*v+2*u^2*v^2-u^2*t^2",
    "2*s^2*t^2-3*s^2*t*v-2*s*u*t^2+s^2*v^2+5*s*u*t*v-3*s*u*v^2-3*u^2*t*v+4*u^2*v^2-u^2*t^2",
];

/// Bidegree (2,2) parametrization of a degree-8 surface in `P^3`.
pub fn golden_instance() -> ProblemInstance {
    let vars = Variables::new(
        vec![
            vec!["s".to_string(), "u".to_string()],
            vec!["t".to_string(), "v".to_string()],
        ],
        (0..4).map(|j| format!("X_{j}")).collect(),
    )
    .expect("valid variables");
    ProblemInstance::parse(vars, &GOLDEN).expect("valid instance")
}
