"""Driver-node selection for dynamic networks: the DOC algorithm and the MM baseline."""

from .controller import ALL, ControlScheme, WeightState, run, run_baseline, step
from .graph import Snapshot, TemporalNetwork, degree, incident_edges
from .kernels import BACKEND
from .matching import DriverSet, Matching, drivers_of, hopcroft_karp, ordered_augment, restrict
from .metrics import CostReport, cost_report, ecc, snapshot_similarity, umds
from .synth import SynthConfig, er_directed, generate_dynamic, rewire

__version__ = "0.1.0"
