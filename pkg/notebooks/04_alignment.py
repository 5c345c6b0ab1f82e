# %% [markdown]
# # Passive alignment
#
# The drone lands on a three-sided frustum.  It slides into place only if
# the sides are steep enough to beat friction, and any residual offset
# opens gaps between the facing coils.

# %%
import numpy as np

from dronedock import FrustumSpec, min_slope_angle, self_locking_check
from dronedock.align import align_report, misalignment_to_gaps, snap_yaw

# %% [markdown]
# ## Friction threshold

# %%
for mu in (0.1, 0.2, 0.2254, 0.3):
    ok = self_locking_check(FrustumSpec(mu=mu))
    print(f"mu={mu:<6}  alpha_min={min_slope_angle(mu):6.3f} deg  12.7 deg slides: {ok}")

# %% [markdown]
# ## Gaps from an offset landing
#
# Moving the inner frustum toward one side closes that face and opens the
# other two; the cap rises until nothing interpenetrates.

# %%
frustum = FrustumSpec()
for dx in (0.0, 2.0, 5.0, 10.0):
    print(f"dx={dx:5.1f} mm  gaps={np.round(misalignment_to_gaps(frustum, (dx, 0.0), 0.0), 3)}")

# %% [markdown]
# ## Yaw
#
# Any approach heading is folded into the +/-60 degree window by the 3-fold
# symmetry.  The rotational adapter then takes up the residual; without it
# even a few degrees would open large gaps.

# %%
for yaw in (0.0, 5.0, 130.0, -100.0):
    residual = snap_yaw(yaw)
    bare = misalignment_to_gaps(frustum, (0.0, 0.0), residual)
    print(f"approach {yaw:7.1f} -> residual {residual:6.1f}, gaps without adapter {np.round(bare, 2)}")
print(align_report(frustum, (2.0, 0.0), 130.0))
