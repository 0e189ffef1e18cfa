# %% [markdown]
# # From careful synchronization to timed homing
#
# A partial automaton is carefully synchronized by a word that is defined at
# every state and merges them all. Turning each letter into a point-guarded
# input with one output and delay 1 gives a TFSM with a homing sequence
# exactly when the automaton has such a word.

# %%
import random

from tfsm import Pfa, careful_sync_brute, hs_exists_point, is_homing, pfa_to_tfsm
from tfsm.point import careful_sync_search, word_to_timed

table = {("q0", "a"): "q1", ("q1", "a"): "q2", ("q2", "a"): "q0",
         ("q0", "r"): "q0", ("q1", "r"): "q0", ("q2", "r"): "q0"}
a = Pfa("A", ["q0", "q1", "q2"], ["a", "r"], table)
print(careful_sync_brute(a, 6))
print(hs_exists_point(pfa_to_tfsm(a)))

# %% [markdown]
# Drop the reset at q2. Now r is undefined there, so no careful word exists
# and the timed machine has no homing sequence either.

# %%
del table[("q2", "r")]
a = Pfa("A", ["q0", "q1", "q2"], ["a", "r"], table)
print(careful_sync_brute(a, 6))
print(hs_exists_point(pfa_to_tfsm(a)))

# %% [markdown]
# Compare both sides on a batch of random partial automata.

# %%
rng = random.Random(1)
agree = 0
for _ in range(30):
    states = [f"q{k}" for k in range(rng.randint(1, 4))]
    table = {(q, x): rng.choice(states) for q in states for x in "ab" if rng.random() < 0.8}
    a = Pfa("A", states, ["a", "b"], table)
    word, conclusive = careful_sync_search(a, 12)
    found, witness = hs_exists_point(pfa_to_tfsm(a))
    if conclusive and (word is not None) == found:
        agree += 1
    if word is not None:
        assert is_homing(pfa_to_tfsm(a), word_to_timed(word))
print(agree, "of 30 agree")
