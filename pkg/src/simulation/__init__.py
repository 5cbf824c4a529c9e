"""Two-state cycle simulator, stimulus loading and stimulus values."""

from src.simulation.simulator import (
    CycleRecord,
    SimState,
    complete_golden_outputs,
    elaborate,
    run,
    simulate,
    step_cycle,
)
from src.simulation.stimulus import Stimulus, StimulusCycle, load_stimulus, parse_stimulus

__all__ = [
    "CycleRecord",
    "SimState",
    "Stimulus",
    "StimulusCycle",
    "complete_golden_outputs",
    "elaborate",
    "load_stimulus",
    "parse_stimulus",
    "run",
    "simulate",
    "step_cycle",
]
