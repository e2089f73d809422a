import numpy as np

from bosonic_renyi.gaussian import random_state

ACCEPTANCE_LINES = []


def random_states(modes, count, seed=0, **kw):
    return [random_state(modes, np.random.SeedSequence([seed, modes, i]), **kw) for i in range(count)]


def report(criterion, ok, detail):
    """Record one acceptance line for the terminal summary and echo it."""
    line = f"[{'PASS' if ok else 'FAIL'}] {criterion}: {detail}"
    ACCEPTANCE_LINES.append(line)
    print(line)
