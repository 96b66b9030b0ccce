//! Small exact quantum-circuit simulator: pure states to 20 qubits, density
//! matrices to 10, with depolarizing, pairwise-correlated, and time-smoothed
//! noise, plus the entanglement / error-correlation / fluctuation statistics
//! built on them.

mod channel;
mod distance;
mod entangle;
mod error;
mod gate;
mod noisycat;
mod state;
mod trajectory;

pub use channel::{
    correlated_depolarize, depolarize, error_correlation, time_smoothed_channels,
    CorrelatedNoiseSpec, KrausChannel,
};
pub use distance::trace_distance;
pub use entangle::{emergent_entanglement, entanglement_entropy};
pub use error::{CircuitError, Result};
pub use gate::{apply_gate_density, apply_gate_pure, Circuit, Gate, GateKind};
pub use noisycat::{noisy_cat_check, NoisyCatCheck, NoisyCatConfig};
pub use state::{DensityState, PureState, MAX_DENSITY_QUBITS, MAX_PURE_QUBITS};
pub use trajectory::{
    fluctuation_scaling, run_noisy_trajectories, CompiledNoise, ErrorTrace, FluctuationRow,
    FluctuationTable, NoiseModel, TrajectoryReport, TrajectoryStats,
};

pub type Complex64 = num_complex::Complex<f64>;
