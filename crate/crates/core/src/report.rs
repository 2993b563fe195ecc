//! One structured record per solver run.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::feasibility::{is_scattered, ProblemInstance};
use crate::graph::{connected_components, Graph, Vertex};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct InstanceMeta {
    pub n: usize,
    pub m: usize,
    pub max_degree: usize,
    pub components: usize,
}

impl InstanceMeta {
    pub fn of(g: &Graph) -> Self {
        InstanceMeta {
            n: g.n(),
            m: g.m(),
            max_degree: g.max_degree(),
            components: connected_components(g).len(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SolverParams {
    pub name: String,
    pub d: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub rho: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub rule: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunReport {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub instance: Option<String>,
    pub meta: InstanceMeta,
    pub solver: SolverParams,
    pub size: usize,
    /// Recomputed from the graph, never copied from the solver.
    pub feasible: bool,
    /// 0-based vertex ids.
    pub vertices: Vec<Vertex>,
    /// External labels of `vertices`, when the input carried labels.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub labels: Option<Vec<u64>>,
    pub telemetry: BTreeMap<String, u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub oracle_size: Option<usize>,
    /// `oracle_size / size`, 1 when both are 0.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub ratio: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub wall_time_ms: Option<f64>,
}

impl RunReport {
    /// Builds a report for `vertices`, checking feasibility from scratch.
    pub fn new(
        g: &Graph,
        solver: SolverParams,
        vertices: Vec<Vertex>,
        telemetry: BTreeMap<String, u64>,
    ) -> Result<Self> {
        let inst = ProblemInstance::new(g.clone(), solver.d)?;
        let feasible = is_scattered(&inst, &vertices)?.certified();
        Ok(RunReport {
            instance: None,
            meta: InstanceMeta::of(g),
            size: vertices.len(),
            solver,
            feasible,
            vertices,
            labels: None,
            telemetry,
            oracle_size: None,
            ratio: None,
            wall_time_ms: None,
        })
    }

    pub fn with_oracle(mut self, oracle_size: usize) -> Self {
        self.oracle_size = Some(oracle_size);
        self.ratio = Some(match (oracle_size, self.size) {
            (0, 0) => 1.0,
            (_, 0) => f64::INFINITY,
            (o, s) => o as f64 / s as f64,
        });
        self
    }
}
