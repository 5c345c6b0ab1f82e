# %% [markdown]
# # Fitting the module model
#
# Only the series peak was measured: 96.5 W at 56.6 % efficiency.  Output
# power ignores the link efficiency, so the droop resistance is fitted
# first and the efficiency then follows directly.  The shared wiring
# resistance is chosen so the series peak is about twice the parallel one.

# %%
from dataclasses import replace

from dronedock import CalibrationInfeasible, CalibrationTarget, calibrate, default_calibration_target, default_module_spec

base = default_module_spec()
fit = calibrate(default_calibration_target(), base)
for key, value in fit.report().items():
    print(f"{key:>20}: {value:.6g}")

# %% [markdown]
# ## Without the ratio constraint
#
# Dropping the ratio leaves the wiring at zero.  The series peak is still
# matched, but the parallel wirings then deliver about as much power.

# %%
plain = calibrate(CalibrationTarget(), base)
print(plain.report())

# %% [markdown]
# ## Targets the model cannot reach
#
# A 500 W peak would need negative droop.  The error carries the closest
# parameters found.

# %%
try:
    calibrate(replace(CalibrationTarget(), p_out_peak=500.0), base)
except CalibrationInfeasible as exc:
    print(exc)
    print(exc.best)
