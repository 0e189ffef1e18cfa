# %% [markdown]
# # Point guards and the B_n family
#
# When a guard is a single point, every delay is an integer and the region
# argument no longer works. B_n is a ring of n states where a single input
# must be applied exactly one time unit after the previous one.

# %%
from tfsm import build_region_fsm, fsm_derive, gen_bn, hs_exists_point, is_homing, tail_of
from tfsm.textformat import serialize

b = gen_bn(4)
print(serialize(b))

# %% [markdown]
# The region FSM of B4 is homed by two inputs, but the timed machine has no
# homing sequence at all.

# %%
print(fsm_derive(build_region_fsm(b).fsm, "hs"))
print(is_homing(b, [("i1", 1), ("i1", 2)]))
print(hs_exists_point(b))

# %% [markdown]
# The search keeps, for each state, a "tail": the outputs still pending and
# how long until each appears. Tails are bounded, so the search is finite.

# %%
print(tail_of(b, "s0", [("i1", 1), ("i1", 2), ("i1", 3), ("i1", 4)]))

# %%
for n in range(4, 9):
    r = fsm_derive(build_region_fsm(gen_bn(n)).fsm, "hs")
    print(n, len(r), hs_exists_point(gen_bn(n))[0])
