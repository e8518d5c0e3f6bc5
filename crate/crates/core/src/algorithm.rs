//! Every online rule behind one trait, and a name-keyed registry of
//! factories so experiments pick an algorithm at runtime.

use std::collections::BTreeMap;
use std::sync::Arc;

use rand::RngCore;

use crate::error::{Error, Result};
use crate::harness::ratio::Benchmark;
use crate::model::{ArrivalOrder, Instance, RunOutcome};
use crate::online::{aug_on_run, check_augmented_capacity, on_run_with};
use crate::secretary::{classical_secretary, default_threshold, ksec_t_threshold, t_threshold};

/// An online selection rule run over one arrival order.
pub trait OnlineAlgorithm: Send + Sync {
    fn name(&self) -> &str;

    /// Runs once. `coin` supplies the algorithm's own randomness and is
    /// independent of the arrival order.
    fn run(&self, instance: &Instance, order: &ArrivalOrder, coin: &mut dyn RngCore) -> Result<RunOutcome>;

    /// Size of the target set counted as a success (`best_k_subset` size).
    fn target_size(&self) -> usize {
        1
    }

    /// Offline value the competitive ratio is measured against.
    fn benchmark(&self) -> Benchmark;
}

fn resolve_t(t: Option<usize>, n: usize) -> Result<usize> {
    let t = t.unwrap_or_else(|| default_threshold(n));
    if t > n {
        return Err(Error::InvalidArgument(format!("t = {t} exceeds n = {n}")));
    }
    Ok(t)
}

fn check_run(instance: &Instance, order: &ArrivalOrder) -> Result<()> {
    if instance.is_empty() {
        return Err(Error::EmptyInstance);
    }
    if order.len() != instance.len() {
        return Err(Error::InvalidArgument(format!(
            "arrival order has {} entries for {} items",
            order.len(),
            instance.len()
        )));
    }
    Ok(())
}

/// t-Threshold; `t = None` means `floor(n / e)`.
#[derive(Debug, Clone, Copy)]
pub struct TThreshold {
    pub t: Option<usize>,
}

impl OnlineAlgorithm for TThreshold {
    fn name(&self) -> &str {
        "t-threshold"
    }

    fn run(&self, instance: &Instance, order: &ArrivalOrder, _coin: &mut dyn RngCore) -> Result<RunOutcome> {
        check_run(instance, order)?;
        let t = resolve_t(self.t, instance.len())?;
        Ok(t_threshold(instance.arrivals(order), t))
    }

    fn benchmark(&self) -> Benchmark {
        Benchmark::BestK(1)
    }
}

#[derive(Debug, Clone, Copy)]
pub struct ClassicalSecretary {
    pub t: Option<usize>,
}

impl OnlineAlgorithm for ClassicalSecretary {
    fn name(&self) -> &str {
        "classical"
    }

    fn run(&self, instance: &Instance, order: &ArrivalOrder, _coin: &mut dyn RngCore) -> Result<RunOutcome> {
        check_run(instance, order)?;
        let t = resolve_t(self.t, instance.len())?;
        Ok(classical_secretary(instance.arrivals(order), t))
    }

    fn benchmark(&self) -> Benchmark {
        Benchmark::BestK(1)
    }
}

#[derive(Debug, Clone, Copy)]
pub struct KSecThreshold {
    pub k: usize,
    pub t: Option<usize>,
}

impl OnlineAlgorithm for KSecThreshold {
    fn name(&self) -> &str {
        "ksec-t-threshold"
    }

    fn run(&self, instance: &Instance, order: &ArrivalOrder, _coin: &mut dyn RngCore) -> Result<RunOutcome> {
        check_run(instance, order)?;
        let t = resolve_t(self.t, instance.len())?;
        Ok(ksec_t_threshold(instance.arrivals(order), self.k, t))
    }

    fn target_size(&self) -> usize {
        self.k
    }

    fn benchmark(&self) -> Benchmark {
        Benchmark::BestK(self.k)
    }
}

/// `AUG-ON` at augmented capacity `capacity`.
#[derive(Debug, Clone, Copy)]
pub struct AugOn {
    pub capacity: f64,
    pub t: Option<usize>,
}

impl OnlineAlgorithm for AugOn {
    fn name(&self) -> &str {
        "aug-on"
    }

    fn run(&self, instance: &Instance, order: &ArrivalOrder, _coin: &mut dyn RngCore) -> Result<RunOutcome> {
        check_run(instance, order)?;
        let t = resolve_t(self.t, instance.len())?;
        Ok(aug_on_run(instance, order, self.capacity, t)?.outcome)
    }

    fn benchmark(&self) -> Benchmark {
        Benchmark::Off {
            capacity: self.capacity,
        }
    }
}

/// `ON`: `AUG-ON` with probability `1 / capacity`, otherwise nothing.
#[derive(Debug, Clone, Copy)]
pub struct On {
    pub capacity: f64,
}

impl OnlineAlgorithm for On {
    fn name(&self) -> &str {
        "on"
    }

    fn run(&self, instance: &Instance, order: &ArrivalOrder, coin: &mut dyn RngCore) -> Result<RunOutcome> {
        Ok(on_run_with(instance, order, self.capacity, coin)?.outcome)
    }

    fn benchmark(&self) -> Benchmark {
        Benchmark::Fractional { capacity: 1.0 }
    }
}

/// Knobs shared by the built-in factories.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AlgorithmParams {
    /// Observation length; `None` means `floor(n / e)`.
    pub t: Option<usize>,
    pub k: usize,
    /// Augmented capacity `C` for the knapsack rules.
    pub capacity: f64,
}

impl Default for AlgorithmParams {
    fn default() -> Self {
        Self {
            t: None,
            k: 1,
            capacity: 2.0,
        }
    }
}

pub type AlgorithmFactory = Arc<dyn Fn(&AlgorithmParams) -> Result<Box<dyn OnlineAlgorithm>> + Send + Sync>;

#[derive(Clone, Default)]
pub struct AlgorithmRegistry {
    factories: BTreeMap<String, AlgorithmFactory>,
}

impl AlgorithmRegistry {
    pub fn new() -> Self {
        Self::default()
    }

    /// Registry holding `t-threshold`, `classical`, `ksec-t-threshold`,
    /// `aug-on` and `on`.
    pub fn with_builtins() -> Self {
        let mut registry = Self::new();
        registry.register("t-threshold", |p| Ok(Box::new(TThreshold { t: p.t })));
        registry.register("classical", |p| Ok(Box::new(ClassicalSecretary { t: p.t })));
        registry.register("ksec-t-threshold", |p| {
            if p.k == 0 {
                return Err(Error::InvalidArgument("k must be >= 1".into()));
            }
            Ok(Box::new(KSecThreshold { k: p.k, t: p.t }))
        });
        registry.register("aug-on", |p| {
            check_augmented_capacity(p.capacity)?;
            Ok(Box::new(AugOn {
                capacity: p.capacity,
                t: p.t,
            }))
        });
        registry.register("on", |p| {
            check_augmented_capacity(p.capacity)?;
            Ok(Box::new(On { capacity: p.capacity }))
        });
        registry
    }

    pub fn register<F>(&mut self, name: impl Into<String>, factory: F)
    where
        F: Fn(&AlgorithmParams) -> Result<Box<dyn OnlineAlgorithm>> + Send + Sync + 'static,
    {
        self.factories.insert(name.into(), Arc::new(factory));
    }

    pub fn build(&self, name: &str, params: &AlgorithmParams) -> Result<Box<dyn OnlineAlgorithm>> {
        let factory = self
            .factories
            .get(name)
            .ok_or_else(|| Error::UnknownAlgorithm(name.to_string()))?;
        factory(params)
    }

    pub fn names(&self) -> impl Iterator<Item = &str> {
        self.factories.keys().map(String::as_str)
    }
}
