# %% [markdown]
# # The command line
#
# Every command prints JSON (or DOT) and signals its outcome in the exit code:
# 0 found, 1 none, 2 usage or parse error, 3 unsupported machine, 4 budget
# exhausted. Times are printed as exact "p/q" strings.

# %%
from tfsm import corpus
from tfsm.cli import run_command


def tfsm(*argv):
    code = run_command(list(argv))
    print("exit", code)


tfsm("derive", "--goal", "hs", "--method", "tree", str(corpus.path("S2")))

# %%
tfsm("derive", "--goal", "hs", "--method", "point", str(corpus.path("B4")))

# %%
tfsm("check", "--goal", "hs", "--seq", "i1@2,i2@4", str(corpus.path("S1")))

# %%
tfsm("simulate", "--from", "s0", "--seq", "i1@2,i2@4,i2@5", str(corpus.path("S1")))

# %%
tfsm("region", "--dot", str(corpus.path("S4")))

# %%
tfsm("gen-bn", "5")
