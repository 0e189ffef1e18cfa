# %% [markdown]
# # Timed runs and output delays
#
# A timed FSM reads inputs at absolute times. Each transition checks the time
# elapsed since the previous input against its guard, and its output appears
# `d` time units later. This notebook walks through one run of the S1 machine.

# %%
from fractions import Fraction

from tfsm import corpus, induce_run, is_homing, is_synchronizing, timed_out

m = corpus.load("S1")
print(corpus.text("S1"))

# %% [markdown]
# Apply i1 at time 2, then i2 at 4 and 5, starting from s0. Outputs are not
# emitted in input order: the first output is delayed by 4, the second by 1.

# %%
alpha = [("i1", 2), ("i2", 4), ("i2", 5)]
run = induce_run(m, "s0", alpha)
for step in run.steps:
    print(f"{step.src} --{step.input}@{step.t}--> {step.dst}   {step.output} at {step.tau}")

# %% [markdown]
# The observer only sees outputs grouped by the time they appear.

# %%
print(timed_out(m, "s0", alpha))

# %% [markdown]
# A homing sequence lets the observer name the final state from these outputs.
# A synchronizing sequence ends in one state no matter where it starts.

# %%
print("(i1,2) homing:", is_homing(m, [("i1", 2)]))
print("(i1,2)(i2,4) homing:", is_homing(m, [("i1", 2), ("i2", 4)]))
print("(i1,2)(i1,4)(i1,6) synchronizing:", is_synchronizing(m, [("i1", 2), ("i1", 4), ("i1", 6)]))

# %% [markdown]
# Times are exact fractions. Floats are refused so that boundaries never blur.

# %%
print(is_homing(m, [("i1", Fraction(5, 2))]))
try:
    is_homing(m, [("i1", 2.5)])
except Exception as exc:
    print(type(exc).__name__, exc)
