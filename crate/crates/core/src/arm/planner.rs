use std::collections::HashMap;

use super::{arm_pip_of, build_complex, ArmError, ArmSpec, ArmState};
use crate::complex::{Certificate, CubeComplex, VertexId};
use crate::geodesic::{geodesic, GeodesicPlan, Metric, Oracle, PlanJson};
use crate::{Guard, Ideal};

/// The certified configuration space of one arm, ready for planning.
///
/// ```
/// use cubeplan::arm::ArmPlanner;
/// use cubeplan::{ArmSpec, Guard, Metric};
///
/// let spec = ArmSpec::new(2, 6)?;
/// let planner = ArmPlanner::new(spec, Guard::default())?;
/// let (plan, states) = planner.plan(&spec.straight(), &spec.state("URDRUR")?, Metric::Linf)?;
/// assert_eq!(plan.distance, 8);
/// assert_eq!(states.len(), 9);
/// # Ok::<(), cubeplan::arm::ArmError>(())
/// ```
#[derive(Clone, Debug)]
pub struct ArmPlanner {
    pub spec: ArmSpec,
    pub complex: CubeComplex,
    pub certificate: Certificate,
    vertex_of: HashMap<Ideal, VertexId>,
}

impl ArmPlanner {
    /// Builds and certifies the space, rooted at the straight arm.
    pub fn new(spec: ArmSpec, guard: Guard) -> Result<Self, ArmError> {
        let complex = build_complex(spec, guard)?;
        let certificate = arm_pip_of(&complex, &spec.straight())?;
        let vertex_of = certificate.extraction.vertex_index();
        Ok(ArmPlanner {
            spec,
            complex,
            certificate,
            vertex_of,
        })
    }

    pub fn vertex(&self, state: &ArmState) -> Result<VertexId, ArmError> {
        self.complex
            .vertex_id(&state.to_string())
            .ok_or_else(|| ArmError::InvalidState(state.to_string()))
    }

    pub fn ideal(&self, state: &ArmState) -> Result<&Ideal, ArmError> {
        Ok(&self.certificate.extraction.ideals[self.vertex(state)?])
    }

    pub fn state_of(&self, ideal: &Ideal) -> Option<ArmState> {
        let v = *self.vertex_of.get(ideal)?;
        self.complex.vertex_name(v).parse().ok()
    }

    /// Plans through the PIP and returns the visited arm states alongside.
    pub fn plan(
        &self,
        from: &ArmState,
        to: &ArmState,
        metric: Metric,
    ) -> Result<(GeodesicPlan, Vec<ArmState>), ArmError> {
        let pip = self.certificate.pip();
        let plan = geodesic(pip, self.ideal(from)?, self.ideal(to)?, metric)?;
        let states = plan
            .vertex_trace
            .iter()
            .map(|i| self.state_of(i).expect("plan stays on consistent ideals"))
            .collect();
        Ok((plan, states))
    }

    /// JSON form of a plan, with vertices written as direction words.
    pub fn plan_json(&self, plan: &GeodesicPlan) -> PlanJson {
        plan.to_json(self.certificate.pip(), |i| {
            self.state_of(i).map(|s| s.to_string()).unwrap_or_default()
        })
    }

    /// Breadth-first distance on the complex, for cross-checking.
    pub fn oracle_distance(&self, from: &ArmState, to: &ArmState, metric: Metric) -> Result<u32, ArmError> {
        Ok(Oracle::new(&self.complex).distance(self.vertex(from)?, self.vertex(to)?, metric)?)
    }
}
