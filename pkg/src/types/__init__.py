from src.types.grid import PeriodicGrid, RealField, require_same_grid
from src.types.params import PhysicalParams
from src.types.state import Snapshot, SolverConfig, SurfaceState
from src.types.bulk import BULK_NAMES, CONTOUR_NAMES, BulkIntegrals, BulkSample, HarmonicExtension
from src.types.ledger import DensitySample, DriftEntry, IdentityResidual, WeakFormLedger
from src.types.scenario import CheckResult, CheckSpec, RunReport, Scenario
