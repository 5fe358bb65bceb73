//! Name-keyed registry of M-step and stopping-rule strategies.
//!
//! The built-in set is `joint`, `two-stage` and `joint-literal` for the
//! M-step and `loglik`, `params` for stopping. Callers may register their
//! own implementations under new names and select them at runtime.

use std::collections::BTreeMap;
use std::sync::Arc;

use super::mstep::{JointMStep, LiteralJointMStep, MStep, TwoStageMStep};
use super::stopping::{LogLikRelChange, ParamRelChange, StoppingRule};
use crate::error::EstimationError;

#[derive(Clone, Default)]
pub struct StrategyRegistry {
    m_steps: BTreeMap<String, Arc<dyn MStep>>,
    stopping: BTreeMap<String, Arc<dyn StoppingRule>>,
}

impl StrategyRegistry {
    pub fn empty() -> Self {
        Self::default()
    }

    pub fn builtin() -> Self {
        let mut reg = Self::empty();
        reg.register_m_step(Arc::new(JointMStep));
        reg.register_m_step(Arc::new(TwoStageMStep));
        reg.register_m_step(Arc::new(LiteralJointMStep));
        reg.register_stopping(Arc::new(LogLikRelChange));
        reg.register_stopping(Arc::new(ParamRelChange));
        reg
    }

    /// Registers under `strategy.name()`, replacing any previous entry.
    pub fn register_m_step(&mut self, strategy: Arc<dyn MStep>) -> Option<Arc<dyn MStep>> {
        self.m_steps.insert(strategy.name().to_owned(), strategy)
    }

    pub fn register_stopping(&mut self, rule: Arc<dyn StoppingRule>) -> Option<Arc<dyn StoppingRule>> {
        self.stopping.insert(rule.name().to_owned(), rule)
    }

    pub fn m_step(&self, name: &str) -> Result<Arc<dyn MStep>, EstimationError> {
        self.m_steps
            .get(name)
            .cloned()
            .ok_or_else(|| unknown("M-step", name, self.m_step_names()))
    }

    pub fn stopping(&self, name: &str) -> Result<Arc<dyn StoppingRule>, EstimationError> {
        self.stopping
            .get(name)
            .cloned()
            .ok_or_else(|| unknown("stopping", name, self.stopping_names()))
    }

    pub fn m_step_names(&self) -> Vec<&str> {
        self.m_steps.keys().map(String::as_str).collect()
    }

    pub fn stopping_names(&self) -> Vec<&str> {
        self.stopping.keys().map(String::as_str).collect()
    }
}

impl std::fmt::Debug for StrategyRegistry {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("StrategyRegistry")
            .field("m_steps", &self.m_step_names())
            .field("stopping", &self.stopping_names())
            .finish()
    }
}

fn unknown(kind: &'static str, name: &str, available: Vec<&str>) -> EstimationError {
    EstimationError::UnknownStrategy {
        kind,
        name: name.to_owned(),
        available: available.join(", "),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn builtin_names() {
        let reg = StrategyRegistry::builtin();
        assert_eq!(reg.m_step_names(), vec!["joint", "joint-literal", "two-stage"]);
        assert_eq!(reg.stopping_names(), vec!["loglik", "params"]);
        assert!(reg.m_step("two-stage").unwrap().fixes_rho());
        assert!(!reg.m_step("joint").unwrap().fixes_rho());
    }

    #[test]
    fn unknown_name_lists_alternatives() {
        let err = StrategyRegistry::builtin().stopping("grad").err().expect("unknown name");
        match err {
            EstimationError::UnknownStrategy { available, .. } => {
                assert_eq!(available, "loglik, params")
            }
            other => panic!("unexpected {other:?}"),
        }
    }
}
