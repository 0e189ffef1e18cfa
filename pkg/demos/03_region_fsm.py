# %% [markdown]
# # The region FSM
#
# Cutting every guard at all boundaries used by an input gives a finite set of
# intervals. Reading an interval instead of an exact delay, and an (output,
# delay) pair instead of a timed output, turns the TFSM into a classical FSM.

# %%
from tfsm import build_region_fsm, corpus, fsm_check, is_homing, lift, project
from tfsm.textformat import to_dot

m = corpus.load("S4")
region = build_region_fsm(m)
print(region.refined_guards)
for t in region.fsm.transitions:
    print(t)

# %% [markdown]
# Integer delays can make outputs of different transitions appear at the same
# instant. Then the region FSM can separate states that the timed machine
# cannot: (i1,1)(i2,3) is not homing for S4, but its projection is homing for
# the region FSM.

# %%
seq = [("i1", 1), ("i2", 3)]
w = project(region, seq)
print(w, is_homing(m, seq), fsm_check(region.fsm, "hs", w))

# %% [markdown]
# Lifting picks non-integer delays inside each interval, and those always
# agree with the region FSM.

# %%
timed = lift(m, w)
print(timed, is_homing(m, timed))

# %%
print(to_dot(region))
