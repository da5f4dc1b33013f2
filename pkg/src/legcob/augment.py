"""Augmentations of the chord algebra and the homology they linearize.

An augmentation sends each generator to 0 or 1, vanishes off degree
zero, kills every differential, and fixes no unit.  Conjugating the
differential by an augmentation and keeping the linear part gives a
degree minus-one map on the free Z/2 module over the chords; its
homology dimensions are the Poincare data reported here.
"""

from itertools import product

from .errors import BudgetExceeded, InputError

MAX_FREE_CHORDS = 22  # 2^22 assignments is the practical search ceiling


def _eval_word(word, eps):
    value = 1
    for letter in word:
        value &= eps[letter]
        if not value:
            return 0
    return 1


def _eval_poly(words, eps):
    total = 0
    for word in words:
        total ^= _eval_word(word, eps)
    return total


def augmentations(dga):
    """All graded augmentations, ordered by their bit pattern.

    Generators of nonzero degree are forced to 0, so the search runs
    over degree-zero chords only; each candidate must kill d of every
    generator.
    """
    names = [n for n, _ in dga.generators]
    free = [n for n, deg in dga.generators if deg == 0]
    if len(free) > MAX_FREE_CHORDS:
        raise BudgetExceeded(
            "%d degree-zero chords is beyond the augmentation search"
            % len(free))
    found = []
    for bits in product((0, 1), repeat=len(free)):
        eps = {n: 0 for n in names}
        for n, b in zip(free, bits):
            eps[n] = b
        if all(_eval_poly(dga.d[n], eps) == 0 for n in names):
            found.append(eps)
    return found


def linearized_matrix(dga, eps):
    """Rows of the linearized differential as column bitmasks.

    Entry (c, g) collects, over monomials of d(c) and occurrences of g
    in them, the product of eps over the other letters.
    """
    rows = {}
    for name, _ in dga.generators:
        mask = 0
        for word in dga.d[name]:
            for i, letter in enumerate(word):
                coeff = 1
                for j, other in enumerate(word):
                    if j != i:
                        coeff &= eps[other]
                        if not coeff:
                            break
                if coeff:
                    mask ^= 1 << dga.index[letter]
        rows[name] = mask
    return rows


def _rank(masks):
    pivots = {}  # leading bit -> reduced vector owning it
    rank = 0
    for m in masks:
        cur = m
        while cur:
            lead = cur.bit_length() - 1
            if lead in pivots:
                cur ^= pivots[lead]
            else:
                pivots[lead] = cur
                rank += 1
                break
    return rank


def lch_dims(dga, eps):
    """Homology dimensions of the linearized complex, by degree.

    The differential drops degree by one; with a modulus the degrees
    wrap around.  Only nonzero dimensions are listed.
    """
    rows = linearized_matrix(dga, eps)
    by_degree = {}
    for name, deg in dga.generators:
        by_degree.setdefault(deg, []).append(name)
    ranks = {}
    for deg, names in by_degree.items():
        ranks[deg] = _rank([rows[n] for n in names])
    dims = {}
    for deg, names in by_degree.items():
        up = deg + 1
        if dga.modulus:
            up %= dga.modulus
        dim = len(names) - ranks[deg] - ranks.get(up, 0)
        if dim < 0:
            raise AssertionError("negative homology dimension")
        if dim:
            dims[deg] = dim
    return dims


def lch_euler(dims):
    """Alternating sum of dimensions; only meaningful without a modulus."""
    return sum(d if k % 2 == 0 else -d for k, d in dims.items())


def augmentation_report(dga):
    """Count plus per-augmentation Poincare dimensions, JSON-ready."""
    augs = augmentations(dga)
    report = {"augmentations": len(augs), "poincare": []}
    for eps in augs:
        dims = lch_dims(dga, eps)
        report["poincare"].append({
            "aug": {n: eps[n] for n, _ in dga.generators},
            "dims": {str(k): v for k, v in dims.items()},
        })
    return report
