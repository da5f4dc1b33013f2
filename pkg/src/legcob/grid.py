"""Square grid diagrams and their classical Legendrian invariants.

A grid of size g places one X and one O marker in every row and column.
Vertical segments join X to O inside each column, horizontal segments
join O to X inside each row, and verticals always cross over
horizontals.  Rows are counted from the bottom, so the counterclockwise
45 degree rotation used elsewhere sends a cell (col, row) to the front
point (col - row, col + row).

Corners are named by where their two rays point.  A NW corner (rays
north and west) is a local maximum of col - row, hence a right cusp of
the front; SE corners are left cusps; NE and SW corners are smooth.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import InputError

ORIENTATIONS = ("auto", "reversed")

NW, NE, SW, SE = "NW", "NE", "SW", "SE"


@dataclass(frozen=True)
class Corner:
    marker: str  # "x" or "o"
    col: int
    row: int
    kind: str  # NW | NE | SW | SE


@dataclass(frozen=True)
class GridCrossing:
    col: int  # column of the vertical (over) strand
    row: int  # row of the horizontal (under) strand
    sign: int


def _check_perm(values, g, label):
    if not isinstance(values, (list, tuple)) or len(values) != g:
        raise InputError("%s not a permutation" % label)
    seen = set()
    for v in values:
        if not isinstance(v, int) or isinstance(v, bool) or not 0 <= v < g:
            raise InputError("%s not a permutation" % label)
        seen.add(v)
    if len(seen) != g:
        raise InputError("%s not a permutation" % label)


class GridDiagram:
    """Immutable grid diagram with an orientation convention flag."""

    def __init__(self, x_cells, o_cells, orientation="auto"):
        g = len(x_cells) if isinstance(x_cells, (list, tuple)) else 0
        if g < 2:
            raise InputError("grid size must be at least 2")
        _check_perm(x_cells, g, "x_cells")
        _check_perm(o_cells, g, "o_cells")
        for c in range(g):
            if x_cells[c] == o_cells[c]:
                raise InputError("x and o markers collide in column %d" % c)
        if orientation not in ORIENTATIONS:
            raise InputError("orientation must be one of %s" % (ORIENTATIONS,))
        self.g = g
        self.x_cells = tuple(x_cells)
        self.o_cells = tuple(o_cells)
        self.orientation = orientation
        # row -> column lookups
        self._xcol = [0] * g
        self._ocol = [0] * g
        for c in range(g):
            self._xcol[x_cells[c]] = c
            self._ocol[o_cells[c]] = c

    # -- structure ---------------------------------------------------------

    def xcol(self, row):
        return self._xcol[row]

    def ocol(self, row):
        return self._ocol[row]

    def component_count(self):
        """Number of link components traced by the X -> O -> X walk."""
        nxt = [self._xcol[self.o_cells[c]] for c in range(self.g)]
        seen = [False] * self.g
        comps = 0
        for start in range(self.g):
            if seen[start]:
                continue
            comps += 1
            c = start
            while not seen[c]:
                seen[c] = True
                c = nxt[c]
        return comps

    def is_knot(self):
        return self.component_count() == 1

    def _require_knot(self):
        if not self.is_knot():
            raise InputError("grid traces a link; this computation needs a knot")

    def traversal(self):
        """Marker walk of a knot: [(marker, col, row), ...] starting at column 0's X."""
        self._require_knot()
        seq = []
        c = 0
        while True:
            seq.append(("x", c, self.x_cells[c]))
            seq.append(("o", c, self.o_cells[c]))
            c = self._xcol[self.o_cells[c]]
            if c == 0:
                break
        return seq

    # -- corners and crossings ---------------------------------------------

    def corners(self):
        out = []
        for c in range(self.g):
            xr, orow = self.x_cells[c], self.o_cells[c]
            v = "N" if orow > xr else "S"
            h = "E" if self._ocol[xr] > c else "W"
            out.append(Corner("x", c, xr, v + h))
            v = "N" if xr > orow else "S"
            h = "E" if self._xcol[orow] > c else "W"
            out.append(Corner("o", c, orow, v + h))
        return out

    def corner_kind(self, marker, col):
        row = self.x_cells[col] if marker == "x" else self.o_cells[col]
        if marker == "x":
            v = "N" if self.o_cells[col] > row else "S"
            h = "E" if self._ocol[row] > col else "W"
        else:
            v = "N" if self.x_cells[col] > row else "S"
            h = "E" if self._xcol[row] > col else "W"
        return v + h

    def crossings(self):
        """Transverse vertical-over-horizontal intersections with signs.

        The sign is det(d_over, d_under) for the traversal directions,
        which reduces to -vy*ux with vy the vertical's sense and ux the
        horizontal's.
        """
        out = []
        for c in range(self.g):
            lo, hi = sorted((self.x_cells[c], self.o_cells[c]))
            vy = 1 if self.o_cells[c] > self.x_cells[c] else -1
            for r in range(lo + 1, hi):
                a, b = sorted((self._xcol[r], self._ocol[r]))
                if a < c < b:
                    ux = 1 if self._xcol[r] > self._ocol[r] else -1
                    out.append(GridCrossing(c, r, -vy * ux))
        return out

    def writhe(self):
        return sum(cr.sign for cr in self.crossings())

    # -- classical invariants ------------------------------------------------

    def thurston_bennequin(self):
        """Writhe minus the number of right cusps (NW corners).

        Pure corner counting, so it also covers multi-component grids,
        where it totals the components and their mutual linking under
        the front conventions baked into the grid.
        """
        right_cusps = sum(1 for c in self.corners() if c.kind == NW)
        return self.writhe() - right_cusps

    def rotation_number(self):
        """Turning number of the crossing-resolved diagram.

        Computed as the turning number of the grid walk plus one extra
        clockwise or counterclockwise loop for each right cusp: a
        downward right cusp (NW corner at an O) contributes +1 and an
        upward one (NW at an X) contributes -1.
        """
        seq = self.traversal()
        turns = 0
        n = len(seq)
        dirs = []
        for i in range(n):
            marker, c, r = seq[i]
            if marker == "x":
                dirs.append((0, 1) if self.o_cells[c] > r else (0, -1))
            else:
                row = r
                dirs.append((1, 0) if self._xcol[row] > self._ocol[row] else (-1, 0))
        for i in range(n):
            din = dirs[i - 1]
            dout = dirs[i]
            turns += din[0] * dout[1] - din[1] * dout[0]
        if turns % 4:
            raise AssertionError("closed walk turning not a multiple of 4")
        w0 = turns // 4
        down_rc = up_rc = 0
        for corner in self.corners():
            if corner.kind == NW:
                if corner.marker == "o":
                    down_rc += 1
                else:
                    up_rc += 1
        rot = w0 + down_rc - up_rc
        return -rot if self.orientation == "reversed" else rot

    # -- commutation moves ---------------------------------------------------

    def _col_span(self, c):
        return tuple(sorted((self.x_cells[c], self.o_cells[c])))

    def _row_span(self, r):
        return tuple(sorted((self._xcol[r], self._ocol[r])))

    @staticmethod
    def _spans_commute(s1, s2):
        # disjoint or strictly nested; any shared endpoint is illegal
        if s1[1] < s2[0] or s2[1] < s1[0]:
            return True
        if s1[0] < s2[0] and s2[1] < s1[1]:
            return True
        if s2[0] < s1[0] and s1[1] < s2[1]:
            return True
        return False

    def can_commute_columns(self, i):
        if not 0 <= i < self.g - 1:
            return False
        return self._spans_commute(self._col_span(i), self._col_span(i + 1))

    def can_commute_rows(self, j):
        if not 0 <= j < self.g - 1:
            return False
        return self._spans_commute(self._row_span(j), self._row_span(j + 1))

    def commute_columns(self, i):
        if not self.can_commute_columns(i):
            raise InputError("columns %d and %d do not commute" % (i, i + 1))
        x = list(self.x_cells)
        o = list(self.o_cells)
        x[i], x[i + 1] = x[i + 1], x[i]
        o[i], o[i + 1] = o[i + 1], o[i]
        return GridDiagram(x, o, self.orientation)

    def commute_rows(self, j):
        if not self.can_commute_rows(j):
            raise InputError("rows %d and %d do not commute" % (j, j + 1))
        swap = {j: j + 1, j + 1: j}
        x = [swap.get(r, r) for r in self.x_cells]
        o = [swap.get(r, r) for r in self.o_cells]
        return GridDiagram(x, o, self.orientation)

    # -- serialization -------------------------------------------------------

    def to_jsonable(self):
        return {
            "g": self.g,
            "x": list(self.x_cells),
            "o": list(self.o_cells),
            "orientation": self.orientation,
        }

    def __eq__(self, other):
        return (
            isinstance(other, GridDiagram)
            and self.x_cells == other.x_cells
            and self.o_cells == other.o_cells
            and self.orientation == other.orientation
        )

    def __hash__(self):
        return hash((self.x_cells, self.o_cells, self.orientation))

    def __repr__(self):
        return "GridDiagram(x=%r, o=%r, %s)" % (
            list(self.x_cells),
            list(self.o_cells),
            self.orientation,
        )


def parse_grid(data):
    """Build a GridDiagram from its JSON form {"g", "x", "o", "orientation"}."""
    if not isinstance(data, dict):
        raise InputError("grid record must be an object")
    if "x" not in data or "o" not in data:
        raise InputError("grid record needs x and o marker lists")
    g = data.get("g", len(data["x"]) if isinstance(data["x"], list) else 0)
    if not isinstance(g, int) or isinstance(g, bool):
        raise InputError("grid size g must be an integer")
    x = data["x"]
    if not isinstance(x, list) or len(x) != g:
        raise InputError("x_cells not a permutation")
    o = data["o"]
    if not isinstance(o, list) or len(o) != g:
        raise InputError("o_cells not a permutation")
    return GridDiagram(x, o, data.get("orientation", "auto"))


# -- stock diagrams ----------------------------------------------------------


def unknot_grid():
    """Smallest grid: one left cusp, one right cusp, tb -1."""
    return GridDiagram([1, 0], [0, 1])


def stabilized_unknot_grid():
    """A once-stabilized unknot: tb -2, rotation -1, no augmentations."""
    return GridDiagram([2, 0, 1], [0, 1, 2])


def torus_knot_grid(k):
    """Positive (2, 2k+1) torus knot as a 4-plat style grid, k >= 1.

    Size 2k+3; the front has two stacked left cusps, 2k+1 positive
    braid crossings between the middle strands, and two stacked right
    cusps.  tb comes out to 2k-1.
    """
    if not isinstance(k, int) or isinstance(k, bool) or k < 1:
        raise InputError("torus family parameter must be an integer >= 1")
    g = 2 * k + 3
    x = [(-i) % g for i in range(g)]
    o = [(g - 2 - i) % g for i in range(g)]
    return GridDiagram(x, o)


def slack_unknot_grid():
    """Max-tb unknot drawn with a detour so that two columns commute.

    Columns 0 and 1 have disjoint spans, so they admit a legal
    commutation move; the tight diagrams above admit none.
    """
    return GridDiagram([4, 0, 3, 2, 1], [3, 1, 0, 4, 2])


def random_grid(rng, gmax=8, gmin=2):
    """Seeded random single-component grid with size in [gmin, gmax].

    The size is drawn first and kept through rejection, so large grids
    are as likely as small ones even though fewer marker placements
    of a large grid come out connected.
    """
    g = rng.randint(gmin, gmax)
    while True:
        x = rng.sample(range(g), g)
        o = rng.sample(range(g), g)
        if any(x[c] == o[c] for c in range(g)):
            continue
        grid = GridDiagram(x, o)
        if grid.is_knot():
            return grid
