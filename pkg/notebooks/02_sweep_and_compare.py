# %% [markdown]
# # Load sweeps and the topology comparison
#
# The bench test varied a load resistor and logged output power and
# efficiency.  Here the same sweep runs against the calibrated model, and
# the three wirings are compared on peak power and voltage stability.

# %%
import numpy as np

from dronedock import TopologyKind, calibrate, default_calibration_target, default_module_spec
from dronedock.sweep import compare_topologies, default_sweep_config, max_power_point, run_sweep

fit = calibrate(default_calibration_target(), default_module_spec())

# %% [markdown]
# ## Series sweep
#
# The peak lands where the chain leaves constant-current mode.

# %%
result = run_sweep(fit.network("SC"), default_sweep_config("SC"))
r, p, eta = result.column("r_load"), result.column("p_out"), result.column("eta")
for k in range(0, len(r), 11):
    print(f"R={r[k]:7.3f}  P={p[k]:6.2f} W  eta={eta[k]:.3f}")
k, op, p_peak, eta_peak = max_power_point(result)
print(f"peak {p_peak:.2f} W at {op.r_load:.3f} ohm, eta {eta_peak:.3f}")

# %% [markdown]
# ## All three wirings

# %%
nets = [fit.network(t) for t in TopologyKind]
report = compare_topologies(nets, [default_sweep_config(t) for t in TopologyKind])
for entry in report["topologies"]:
    print(
        f"{entry['topology']:>3}: peak {entry['peak_p_out_w']:6.2f} W at {entry['peak_r_load_ohm']:6.3f} ohm, "
        f"droop {entry['voltage_droop_ratio']:.3f}"
    )
print("series / parallel peak ratios:", {k: round(v, 3) for k, v in report["sc_peak_ratios"].items()})

# %% [markdown]
# ## The diode cliff
#
# At light resistance the diode branches lose a large share of the output
# voltage, so the curve falls well below its plateau.

# %%
u = run_sweep(fit.network("PCD"), default_sweep_config("PCD")).column("u_out")
print(f"plateau {u.max():.3f} V, lowest load {u[0]:.3f} V, drop {100 * (1 - u[0] / u.max()):.1f}%")
print(np.round(u[::10], 3))
