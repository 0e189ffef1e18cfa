# %% [markdown]
# # Shortest sequences with the timed successor tree
#
# For machines whose guards are half-open intervals, the successor tree tries
# one delay per integer step, shifted by a small non-integer offset. Because
# the offset is non-integer, two outputs never collide at the same instant.

# %%
from tfsm import corpus, derive_shortest, is_homing, is_synchronizing
from tfsm.successor_tree import default_theta, shortest_search

m = corpus.load("S2")
print(corpus.text("S2"))
print("offset:", default_theta(m))

# %%
r = shortest_search(m, "hs")
print("homing:", r.sequence, "nodes:", r.nodes, "depth:", r.depth)
print(is_homing(m, r.sequence))

# %% [markdown]
# On this machine the shortest homing sequence also synchronizes.

# %%
ss = derive_shortest(m, "ss")
print("synchronizing:", ss, is_synchronizing(m, ss))
