# %% [markdown]
# # Three ways to wire the receivers
#
# The receiving unit carries three identical charging modules.  Their
# outputs can be chained in series or paralleled, the latter optionally
# through one diode per branch.  This script solves a single operating point
# for each wiring and shows how the modules share the load.

# %%
import numpy as np

from dronedock import ModuleSpec, default_module_spec, default_network, solve_operating_point

# %% [markdown]
# ## Lossless modules
#
# With no droop, every module holds exactly 12 V until it reaches its 3 A
# limit.  Series stacks the voltages; the parallel wirings hold the bus at
# one module voltage (less one diode drop when the diodes are fitted).

# %%
ideal = ModuleSpec(r_droop=0.0, eta_link=1.0, p_idle=0.0)
for topology, r_load in [("SC", 36.0), ("PC", 12.0), ("PCD", 11.3)]:
    op = solve_operating_point(default_network(topology, ideal), r_load)
    print(f"{topology:>3}: u_out={op.u_out:6.3f} V  i_out={op.i_out:5.3f} A  branches={op.per_module_i}")

# %% [markdown]
# ## Pushing into the current limit
#
# Lowering the load resistance drives the series chain into constant-current
# mode at 3 A, after which the output voltage simply follows the load.

# %%
net = default_network("SC", default_module_spec())
for r in (40.0, 20.0, 10.0, 5.0):
    op = solve_operating_point(net, r)
    print(f"R={r:5.1f}  u_out={op.u_out:6.3f}  i_out={op.i_out:5.3f}  limited={op.current_limited}")

# %% [markdown]
# ## A misaligned module
#
# Past the 10 mm gap limit a module stops delivering.  In series it becomes a
# plain conductor; with diodes its branch blocks and the other two carry
# the load.

# %%
gaps = (0.0, 12.0, 0.0)
for topology in ("SC", "PCD"):
    op = solve_operating_point(default_network(topology, gaps=gaps), 8.0)
    print(topology, np.round(op.per_module_i, 4), "diodes:", op.diode_states or "n/a")
