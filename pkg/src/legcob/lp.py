"""Exact feasibility test behind the contractibility certificate.

A chord can be surgered away when a height function exists that pins it
to level zero while every disk keeps positive area: the height at the
positive corner must exceed the heights of the negative corners summed.
Writing each other height as one plus a nonnegative slack turns that
into one linear constraint per disk,

    s_p - sum of s_n over negatives (target excluded)  >=  count of
    those negatives,

and a disk whose positive corner IS the target is an outright
obstruction.  The system is monotone: each constraint only pushes one
height up, so its least solution is grown by repeated sweeps over
integers.  A finite least solution is assembled from derivations that
never repeat a variable, hence arrives within as many sweeps as there
are heights; one further sweep that still changes something certifies
an unsatisfiable cycle.  No tolerance enters anywhere.
"""

from .disks import enumerate_disks


def margin_requirements(disks, target):
    """One (positive, negatives) pair per disk, the target dropped from
    the negatives; None when some disk is positive at the target."""
    reqs = []
    for d in disks:
        if d.positive == target:
            return None
        reqs.append((d.positive, [n for n in d.word if n != target]))
    return reqs


def least_heights(reqs, variables):
    """Least nonnegative solution of the margin system, or None.

    Each requirement reads s_p >= len(negs) + sum of s_n.  Sweeping
    them to a fixpoint stays below any solution, so divergence is a
    proof of infeasibility, not an artifact of the iteration order.
    """
    val = {v: 0 for v in variables}
    for _ in range(len(val) + 1):
        changed = False
        for p, negs in reqs:
            need = len(negs) + sum(val[n] for n in negs)
            if need > val[p]:
                val[p] = need
                changed = True
        if not changed:
            return val
    return None


def contractible(state, target, disks=None, budget=10 ** 6):
    """Certify that the crossing named `target` can be resolved away."""
    state.chord(target)
    if disks is None:
        disks = enumerate_disks(state, budget)
    reqs = margin_requirements(disks, target)
    if reqs is None:
        return False
    variables = [c.name for c in state.chords() if c.name != target]
    return least_heights(reqs, variables) is not None


def contractible_chords(state, budget=10 ** 6):
    """Map every chord to its contractibility flag, one shared disk pass."""
    disks = enumerate_disks(state, budget)
    return {c.name: contractible(state, c.name, disks)
            for c in state.chords()}
