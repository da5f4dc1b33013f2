"""The differential graded algebra of an event word, coefficients Z/2.

Generators are the chords.  The differential of a chord collects, over
all disks with their positive corner there, the boundary words of
negative corners; coefficients live in Z/2 so a word appearing an even
number of times drops out.
"""

from .disks import enumerate_disks
from .errors import InputError


class DGA:
    def __init__(self, generators, modulus, d, heights):
        self.generators = list(generators)  # (name, degree) in word order
        self.modulus = modulus
        self.d = d  # name -> tuple of monomials, each a tuple of names
        self.heights = dict(heights)
        self.index = {name: i for i, (name, _) in enumerate(self.generators)}
        self.degree = {name: deg for name, deg in self.generators}

    def _monomial_key(self, word):
        return (len(word), tuple(self.index[n] for n in word))

    def differential_of(self, name):
        if name not in self.d:
            raise InputError("no generator named %r" % name)
        return self.d[name]

    def d_squared_witness(self):
        """First generator whose differential fails to square to zero.

        Returns (name, monomial) or None.  Expanding d on a monomial is
        the Leibniz sum over its letters; signs are invisible in Z/2.
        """
        for name, _ in self.generators:
            counts = {}
            for word in self.d[name]:
                for i, letter in enumerate(word):
                    for inner in self.d[letter]:
                        expanded = word[:i] + inner + word[i + 1:]
                        counts[expanded] = counts.get(expanded, 0) + 1
            odd = sorted((w for w, c in counts.items() if c % 2),
                         key=self._monomial_key)
            if odd:
                return name, odd[0]
        return None

    def chord_count_by_degree(self):
        table = {}
        for _, deg in self.generators:
            table[deg] = table.get(deg, 0) + 1
        return table

    def signed_chord_count(self):
        """Chords of even degree minus chords of odd degree.

        Parity is well defined: the grading modulus of a word is always
        even (twice a rotation number on each component).
        """
        total = 0
        for _, deg in self.generators:
            total += 1 if deg % 2 == 0 else -1
        return total

    def to_jsonable(self):
        d_out = {}
        for name, _ in self.generators:
            words = sorted(self.d[name], key=self._monomial_key)
            d_out[name] = [" ".join(w) if w else "1" for w in words]
        return {
            "generators": [{"name": n, "degree": deg}
                           for n, deg in self.generators],
            "modulus": self.modulus,
            "d": d_out,
        }


def build_dga(state, budget=10 ** 6):
    """Assemble the algebra of a word; needs the chord grading."""
    grading = state.grading()
    if not grading.available:
        raise InputError("chord grading unavailable: " + grading.reason)
    disks = enumerate_disks(state, budget)
    counts = {info.name: {} for info in state.chords()}
    for disk in disks:
        bucket = counts[disk.positive]
        bucket[disk.word] = bucket.get(disk.word, 0) + 1
    d = {}
    for name, bucket in counts.items():
        d[name] = tuple(w for w, c in bucket.items() if c % 2)
    generators = [(info.name, grading.degrees[info.name])
                  for info in state.chords()]
    return DGA(generators, grading.modulus, d, state.heights)
