from simulators.ensemble import MODELS, Ensemble, run_ensemble
from simulators.params import ClassicalState, EmissionRecord, SimParams, StepSizeError

__all__ = ["MODELS", "ClassicalState", "EmissionRecord", "Ensemble", "SimParams", "StepSizeError",
           "run_ensemble"]
