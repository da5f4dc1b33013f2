"""Symbolic spinning of Legendrian ends.

Spinning sweeps a Legendrian around an extra circle factor, one
dimension up.  The front machinery in the rest of the package does not
survive that, so this module keeps only a ledger of classical data and
the exact rules for how one spin transforms it: the dimension goes up
by one, the Betti numbers convolve with those of the circle, the Euler
characteristic vanishes, and the self-linking tb is forced to zero in
even dimensions while becoming unknown in odd ones.
"""

from __future__ import annotations

from dataclasses import dataclass

from .cobordism import as_word, cobordism_report, make_torus_saddle_script
from .errors import InputError
from .grid import torus_knot_grid
from .resolve import resolve


@dataclass(frozen=True)
class InvariantRecord:
    """Classical data of a Legendrian end, tracked through spins.

    tb is None when nothing pins it down.  trace records how the
    record was produced, innermost construction first.
    """

    n: int
    tb: int | None
    chi: int
    betti: tuple
    trace: tuple

    def to_jsonable(self):
        return {"n": self.n, "tb": self.tb, "chi": self.chi,
                "betti": list(self.betti), "trace": list(self.trace)}


def base_record(tb, label):
    """A one-dimensional end: a knot with the given tb."""
    return InvariantRecord(1, tb, 0, (1, 1), (label,))


def record_from_grid(grid, label="grid"):
    if not grid.is_knot():
        raise InputError("spin records start from knots")
    return base_record(grid.thurston_bennequin(), label)


def spin(record):
    """One spin: cross with a circle.

    Betti numbers convolve with (1, 1), which doubles their total and
    kills the alternating sum, so the spun Euler characteristic is
    always zero.  tb becomes 0 in even dimension and unknown in odd.
    """
    old = record.betti
    betti = tuple((old[i] if i < len(old) else 0)
                  + (old[i - 1] if i >= 1 else 0)
                  for i in range(len(old) + 1))
    chi = sum(b if i % 2 == 0 else -b for i, b in enumerate(betti))
    if chi != 0:
        raise AssertionError("spun Euler characteristic must vanish")
    n = record.n + 1
    tb = 0 if n % 2 == 0 else None
    return InvariantRecord(n, tb, chi, betti, record.trace + ("spin",))


def theorem_tb_check(record):
    """The even-dimensional constraint: tb of such an end must vanish.

    Odd-dimensional ends carry no constraint; the check reports
    conditional when their tb is known and insufficient data when the
    spin rules lost track of it.
    """
    if record.n % 2 == 0:
        ok = record.tb == 0
        return {"status": "holds" if ok else "violated",
                "n": record.n, "tb": record.tb, "expected": 0}
    if record.tb is None:
        return {"status": "insufficient data", "n": record.n, "tb": None}
    return {"status": "conditional", "n": record.n, "tb": record.tb}


def spin_chain(record, m):
    out = [record]
    for _ in range(m):
        out.append(spin(out[-1]))
    return out


def tori_pipeline(j, k, m=1, budget=10 ** 6, sigma=0):
    """Saddle cobordism between two odd torus knots, then m spins per end.

    Builds the script, replays it with every move revalidated, checks
    that the bottom word is literally the resolved smaller torus knot,
    runs the full cobordism report, and pushes both ends through the
    spin calculus.  The ends are identified with torus fronts at the
    word level only; matching them to the standard surfaces between
    those knots rests on classification results outside this package.
    """
    if not (isinstance(m, int) and 0 <= m):
        raise InputError("spin count must be a nonnegative integer")
    script = make_torus_saddle_script(j, k, budget)
    states = script.states(budget)
    bottom_word, top_word = as_word(states[0]), as_word(states[-1])
    word_match = (bottom_word.signature()
                  == resolve(torus_knot_grid(j)).signature())
    report = cobordism_report(script, budget, sigma)
    ends = {}
    for side, word, param in (("bottom", bottom_word, j),
                              ("top", top_word, k)):
        chain = spin_chain(base_record(word.tb(), "torus(%d)" % param), m)
        ends[side] = {
            "records": [r.to_jsonable() for r in chain],
            "tb_checks": [theorem_tb_check(r) for r in chain],
        }
    ok = word_match and report["ok"]
    for side in ends:
        ok = ok and all(c["status"] != "violated"
                        for c in ends[side]["tb_checks"])
    return {
        "ok": ok,
        "j": j,
        "k": k,
        "spins": m,
        "word_match": word_match,
        "cobordism": report,
        "ends": ends,
        "note": ("ends are matched to torus fronts at the word level; "
                 "identifying the surface itself relies on external "
                 "classification"),
    }
