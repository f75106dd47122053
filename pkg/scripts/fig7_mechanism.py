"""Show why collection time first falls and then rises with density when the
splitting ratio is re-optimised per deployment (the figure-7 setting)."""
import numpy as np

from uavrelay.config import Config
from uavrelay.experiments import FIGURE_SETTINGS
from uavrelay.optimizer import build_problem, solve_analytic
from uavrelay.scenario import run_cycle
from uavrelay.swipt import SwiptConfig

cfg = Config().override(**FIGURE_SETTINGS[7]["overrides"])
print("density,users,G1,eta_ps_opt,t_collect,t_total")
for lam in FIGURE_SETTINGS[7]["densities"]:
    c = cfg.override(**{"mission.user_density": lam, "mission.seed": 0})
    dep = c.mission.deploy()
    prob = build_problem(c.mission, c.channel, dep, c.swipt, c.aero)
    sol = solve_analytic(prob)
    sw = SwiptConfig(**{**c.swipt.__dict__, "eta_ps": sol.eta_ps, "eta_bat": sol.eta_bat})
    rep = run_cycle(c.mission, c.channel, c.aero, sw, "B", dep)
    t_collect = float(np.sum([u.collection_time for u in rep.per_user]))
    print(f"{lam:g},{len(dep)},{prob.g1:.4g},{sol.eta_ps:.4f},{t_collect:.4g},{rep.ledger.t_total:.4g}")
