"""Random minima and maxima of non-identical lifetimes, and numerical checks of
their stochastic-order preservation results."""

from .dist import DistSpec, shift_family
from .errors import (
    AllPointsTrimmed,
    EndpointSingularity,
    NoConvergence,
    NonPositiveKernel,
    ScenarioError,
    ScenarioMismatch,
    StochordError,
    UnknownFamily,
    ZeroDenominator,
)
from .mc import SimConfig, oracle_compare, run_oracle, sample_lifetime, simulate_random_extreme
from .order_stats import (
    ComponentFamily,
    Kind,
    SystemSpec,
    max_cdf,
    max_pdf,
    max_rev_hazard,
    min_hazard,
    min_pdf,
    min_sf,
)
from .ordering import (
    Grid,
    OrderingVerdict,
    check_hr,
    check_lr,
    check_lr_chain,
    check_ratio_monotone_in_n,
    check_revhazard_monotone_in_n,
    check_rh,
    check_st,
)
from .propositions import PropositionScenario, proposition_scenarios
from .random_extremes import (
    RandomExtremeSpec,
    SizePmf,
    rand_hazard,
    rand_max_cdf,
    rand_max_pdf,
    rand_min_pdf,
    rand_min_sf,
    rand_rev_hazard,
    truncate_pmf,
)
from .reproduce import reproduce
from .scenario_files import bundled, load_scenario
from .theorems import Scenario, TheoremReport, verify_st_preservation, verify_theorem
from .variation import (
    Kernel,
    SignedSequenceFn,
    check_rr2,
    check_tp2,
    counterexample,
    sign_changes,
    vd_transform,
    verify_proposition,
)

__version__ = "0.1.0"
