"""Energy-aware traffic offloading planner for heterogeneous cellular networks."""

from importlib import resources

from .model import (BsPowerParams, CellAllocation, CellKind, MacroConfig,
                    OffloadDecision, ParameterError, PowerBreakdown, QosConfig,
                    RadioEnv, Scenario, SmallCellConfig, bs_power,
                    energy_service_rate, sbs_bandwidth_from_rate, validate_scenario)
from .energy_queue import (QueueStationary, UnstableQueueError, arrival_probability,
                           empty_probability, handover_power, stationary_distribution)
from .outage import (ClosedFormOutage, RequiredBandwidths, SpectralEfficiencies,
                     mmu_effective_density, outage_msu_closed, outage_ssu_closed,
                     required_bandwidths, spectral_efficiencies, tau_mm, tau_ms, tau_ss)
from .montecarlo import (EnergyQueueStats, SimConfig, simulate_energy_queue,
                         simulate_outage_msu, simulate_outage_ssu)
from .single_cell import (CellContext, CellDecision, cell_context, concavity_factor,
                          decide, decide_hsbs, decide_rsbs, gain_hsbs, gain_rsbs,
                          greedy_decision, kappa, mu_feasible_bounds, offload_ratio,
                          optimal_mu_hsbs, optimal_mu_rsbs, zeta_ee)
from .multi_cell import (METHODS, NetworkPlan, ReactivationCandidate, build_plan,
                         exhaustive_search, greedy_no_sleep, greedy_with_sleep,
                         mbs_power, network_power, reactivate_knapsack,
                         reference_power, teato, w_m_max)
from .scenario import (DailyProfiles, DailyResult, ScenarioError, ScenarioSpec,
                       daily_run, load_profiles_csv, load_scenario, parse_scenario,
                       scenario_at_period, synthetic_profiles)

__version__ = "0.1.0"


def bundled_scenario_path(name: str) -> str:
    """Filesystem path of a scenario shipped with the package (table3, default5)."""
    return str(resources.files("hcnplan.data").joinpath(f"{name}.json"))
