"""Front resolution of grid diagrams into one-dimensional event words.

Rotating a grid 45 degrees counterclockwise turns it into a front whose
vertical segments become descending lines and horizontal segments
ascending ones, with descending always crossing over ascending.  NW
corners become right cusps, SE corners left cusps, NE and SW corners
smooth bends.  Sweeping the front left to right yields a word of birth,
cross, and cap events acting on a stack of strands ordered bottom to
top; each right cusp resolves into a self-crossing immediately followed
by the cap that kills its two strands.

The word is the entire combinatorial content.  Chord gradings, disk
counts, and cobordism moves all work on the word alone, so states
produced by surgery moves no longer need a grid behind them.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd

from .errors import InputError
from .grid import GridDiagram, NW, SE


@dataclass(frozen=True)
class Birth:
    """Left cusp: inserts two strands at slots pos and pos+1.

    dirs holds the travel direction (+1 rightward, -1 leftward) of the
    lower and upper newborn strand; a cusp always joins one of each.
    """

    uid: int
    pos: int
    dirs: tuple


@dataclass(frozen=True)
class Cross:
    """Crossing of the strands at slots pos and pos+1, which then swap.

    Before the swap the strand at pos ascends and the one at pos+1
    descends through the crossing point; the descending strand is the
    over strand.
    """

    uid: int
    pos: int
    name: str


@dataclass(frozen=True)
class Cap:
    """Right cusp: kills the strands at slots pos and pos+1.

    Always immediately preceded by the cross event that resolves the
    cusp into a loop.
    """

    uid: int
    pos: int


@dataclass(frozen=True)
class ChordInfo:
    name: str
    index: int  # event index of the cross
    asc: tuple  # line at slot pos before the swap
    desc: tuple  # line at slot pos+1 before the swap; the over strand
    sign: int  # +1 when both lines travel the same way


class Grading:
    """Maslov data of a word: chord degrees and the grading modulus."""

    def __init__(self, available, modulus, degrees, reason=""):
        self.available = available
        self.modulus = modulus
        self.degrees = degrees
        self.reason = reason


def parse_frac(value):
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        if "/" in value:
            num, den = value.split("/", 1)
            return Fraction(int(num), int(den))
        return Fraction(int(value))
    raise InputError("cannot read height %r" % (value,))


def frac_str(value):
    f = Fraction(value)
    return "%d/%d" % (f.numerator, f.denominator)


class _Simulation:
    """One full sweep of a word, with every intermediate stack recorded."""

    def __init__(self, events):
        self.dirs = {}
        self.chords = []
        self.birth_pairs = []  # (upper line, lower line, event index)
        self.cap_pairs = []  # (upper line, lower line, event index)
        self.active_before = []
        self.chord_by_name = {}
        self._parent = {}
        active = []
        prev = None
        for k, ev in enumerate(events):
            self.active_before.append(tuple(active))
            p = ev.pos
            if isinstance(ev, Birth):
                if not 0 <= p <= len(active):
                    raise InputError("birth slot %d out of range" % p)
                if tuple(ev.dirs) not in ((1, -1), (-1, 1)):
                    raise InputError("birth directions must oppose")
                lower, upper = (ev.uid, 0), (ev.uid, 1)
                if lower in self.dirs:
                    raise InputError("duplicate event uid %d" % ev.uid)
                self.dirs[lower] = ev.dirs[0]
                self.dirs[upper] = ev.dirs[1]
                self._parent[lower] = lower
                self._parent[upper] = upper
                self._union(lower, upper)
                active[p:p] = [lower, upper]
                self.birth_pairs.append((upper, lower, k))
            elif isinstance(ev, Cross):
                if not 0 <= p < len(active) - 1:
                    raise InputError("crossing slot %d out of range" % p)
                asc, desc = active[p], active[p + 1]
                sign = 1 if self.dirs[asc] == self.dirs[desc] else -1
                if ev.name in self.chord_by_name:
                    raise InputError("duplicate chord name %r" % ev.name)
                info = ChordInfo(ev.name, k, asc, desc, sign)
                self.chord_by_name[ev.name] = info
                self.chords.append(info)
                active[p], active[p + 1] = desc, asc
            elif isinstance(ev, Cap):
                if not 0 <= p < len(active) - 1:
                    raise InputError("cap slot %d out of range" % p)
                if not (isinstance(prev, Cross) and prev.pos == p):
                    raise InputError("cap without its resolution crossing")
                hi, lo = active[p], active[p + 1]
                if self.dirs[hi] == self.dirs[lo]:
                    raise InputError("cap strands must travel opposite ways")
                self.cap_pairs.append((hi, lo, k))
                self._union(hi, lo)
                del active[p:p + 2]
            else:
                raise InputError("unknown event %r" % (ev,))
            prev = ev
        if active:
            raise InputError("word ends with open strands")

    def _find(self, a):
        while self._parent[a] != a:
            self._parent[a] = self._parent[self._parent[a]]
            a = self._parent[a]
        return a

    def _union(self, a, b):
        ra, rb = self._find(a), self._find(b)
        if ra != rb:
            # deterministic: smaller tuple wins as root
            if rb < ra:
                ra, rb = rb, ra
            self._parent[rb] = ra

    def component(self, line):
        return self._find(line)

    def component_lines(self, line):
        root = self._find(line)
        return sorted(l for l in self.dirs if self._find(l) == root)

    def component_roots(self):
        return sorted({self._find(l) for l in self.dirs})


class WordState:
    """An event word, validated on construction.

    heights maps chord names to rational filtration levels.  They are
    carried along for serialization and move bookkeeping; none of the
    counting below reads them.
    """

    def __init__(self, events, heights=None, grid=None):
        self.events = tuple(events)
        self.grid = grid
        self.sim = _Simulation(self.events)
        if heights is None:
            heights = {
                info.name: Fraction(rank + 1)
                for rank, info in enumerate(self.sim.chords)
            }
        else:
            heights = {name: parse_frac(h) for name, h in heights.items()}
            missing = [c.name for c in self.sim.chords if c.name not in heights]
            if missing:
                raise InputError("missing heights for %s" % ", ".join(missing))
            heights = {c.name: heights[c.name] for c in self.sim.chords}
        self.heights = heights
        self._grading = None

    # -- basic data ----------------------------------------------------------

    def chords(self):
        return list(self.sim.chords)

    def chord(self, name):
        info = self.sim.chord_by_name.get(name)
        if info is None:
            raise InputError("no chord named %r" % name)
        return info

    def component_count(self):
        return len(self.sim.component_roots())

    def is_knot(self):
        return self.component_count() == 1

    def active_at(self, index):
        """Strand stack just before event `index` (or after the last one)."""
        if index < len(self.events):
            return self.sim.active_before[index]
        return ()

    def tb(self):
        """Sum of crossing signs; the Thurston-Bennequin number of a knot.

        Loop crossings carry sign -1, one per right cusp, so this is
        writhe minus right cusps without ever naming the cusps.
        """
        return sum(c.sign for c in self.sim.chords)

    def component_tb(self, root):
        total = 0
        for c in self.sim.chords:
            ra = self.sim.component(c.asc)
            rb = self.sim.component(c.desc)
            if ra == root and rb == root:
                total += c.sign
        return total

    def rotation(self):
        """Rotation number, knots only.

        Counts cusps the traversal passes downward minus upward, halved.
        A birth is downward when its lower strand leaves rightward; a
        cap is downward when its surviving upper branch arrives
        rightward.
        """
        if not self.is_knot():
            raise InputError("rotation needs a knot")
        down = up = 0
        for k, ev in enumerate(self.events):
            if isinstance(ev, Birth):
                if ev.dirs[0] == 1:
                    down += 1
                else:
                    up += 1
            elif isinstance(ev, Cap):
                hi = self.sim.active_before[k][ev.pos]
                if self.sim.dirs[hi] == 1:
                    down += 1
                else:
                    up += 1
        if (down - up) % 2:
            raise AssertionError("odd cusp imbalance")
        return (down - up) // 2

    # -- grading ---------------------------------------------------------------

    def grading(self):
        """Maslov potential relations: upper exceeds lower by one at every cusp.

        The relation graph on strands and the component graph coincide,
        so a potential exists on each component separately.  Degrees of
        chords joining different components would depend on arbitrary
        offsets; such words report grading unavailable.
        """
        if self._grading is not None:
            return self._grading
        sim = self.sim
        edges = [(hi, lo) for hi, lo, _ in sim.birth_pairs]
        edges += [(hi, lo) for hi, lo, _ in sim.cap_pairs]
        adj = {}
        for hi, lo in edges:
            adj.setdefault(hi, []).append((lo, -1))
            adj.setdefault(lo, []).append((hi, 1))
        mu = {}
        for root in sim.component_roots():
            start = min(sim.component_lines(root))
            mu[start] = 0
            queue = [start]
            while queue:
                u = queue.pop()
                for v, step in adj.get(u, ()):
                    if v not in mu:
                        mu[v] = mu[u] + step
                        queue.append(v)
        modulus = 0
        for hi, lo in edges:
            modulus = gcd(modulus, abs(mu[hi] - mu[lo] - 1))
        degrees = {}
        available = True
        reason = ""
        for c in sim.chords:
            if sim.component(c.asc) != sim.component(c.desc):
                available = False
                reason = "chord %s joins different components" % c.name
                degrees = {}
                break
            deg = mu[c.desc] - mu[c.asc]
            degrees[c.name] = deg % modulus if modulus else deg
        self._grading = Grading(available, modulus, degrees, reason)
        return self._grading

    # -- component surgery -----------------------------------------------------

    def split_component(self, root):
        """Separate one component from the rest.

        Returns (kept word, removed word, removed event indices).  The
        removed indices refer to this word's event list; reinserting the
        removed events at those indices restores it.  Fails if any chord
        ties the component to the rest.
        """
        sim = self.sim
        inside = set(sim.component_lines(root))
        for c in sim.chords:
            if (c.asc in inside) != (c.desc in inside):
                raise InputError(
                    "component is linked to the rest at chord %s" % c.name)
        kept, removed, removed_idx = [], [], []
        for k, ev in enumerate(self.events):
            active = sim.active_before[k]
            if isinstance(ev, Birth):
                member = (ev.uid, 0) in inside
                strands = active
            elif isinstance(ev, Cross):
                member = sim.chord_by_name[ev.name].asc in inside
                strands = active
            else:
                member = active[ev.pos] in inside
                strands = active
            # rank of the slot among strands on the event's own side
            new_pos = sum(1 for l in strands[:ev.pos] if (l in inside) == member)
            if isinstance(ev, Birth):
                clone = Birth(ev.uid, new_pos, ev.dirs)
            elif isinstance(ev, Cross):
                clone = Cross(ev.uid, new_pos, ev.name)
            else:
                clone = Cap(ev.uid, new_pos)
            if member:
                removed.append(clone)
                removed_idx.append(k)
            else:
                kept.append(clone)
        inside_names = {c.name for c in sim.chords if c.asc in inside}
        kept_heights = {n: h for n, h in self.heights.items()
                        if n not in inside_names}
        removed_heights = {n: h for n, h in self.heights.items()
                           if n in inside_names}
        return (WordState(kept, kept_heights),
                WordState(removed, removed_heights),
                removed_idx)

    def restrict(self, root):
        """The named component alone, repositioned as its own word."""
        _, piece, _ = self.split_component(root)
        return piece

    # -- identity ----------------------------------------------------------------

    def signature(self):
        """Structural key: event kinds and slots, names and uids ignored."""
        sig = []
        for ev in self.events:
            if isinstance(ev, Birth):
                sig.append(("b", ev.pos, ev.dirs))
            elif isinstance(ev, Cross):
                sig.append(("x", ev.pos))
            else:
                sig.append(("c", ev.pos))
        return tuple(sig)

    def serialize(self):
        events = []
        for ev in self.events:
            if isinstance(ev, Birth):
                events.append({"kind": "birth", "uid": ev.uid, "pos": ev.pos,
                               "dirs": list(ev.dirs)})
            elif isinstance(ev, Cross):
                events.append({"kind": "cross", "uid": ev.uid, "pos": ev.pos,
                               "name": ev.name})
            else:
                events.append({"kind": "cap", "uid": ev.uid, "pos": ev.pos})
        heights = {n: frac_str(h) for n, h in self.heights.items()}
        return {"events": events, "heights": heights}


def event_from_json(data):
    if not isinstance(data, dict) or "kind" not in data:
        raise InputError("event record must be an object with a kind")
    kind = data["kind"]
    try:
        uid, pos = int(data["uid"]), int(data["pos"])
    except (KeyError, TypeError, ValueError):
        raise InputError("event needs integer uid and pos")
    if kind == "birth":
        dirs = data.get("dirs")
        if not isinstance(dirs, (list, tuple)) or len(dirs) != 2:
            raise InputError("birth needs a two-entry dirs list")
        return Birth(uid, pos, (int(dirs[0]), int(dirs[1])))
    if kind == "cross":
        name = data.get("name")
        if not isinstance(name, str) or not name:
            raise InputError("crossing needs a name")
        return Cross(uid, pos, name)
    if kind == "cap":
        return Cap(uid, pos)
    raise InputError("unknown event kind %r" % kind)


def word_from_json(data):
    if not isinstance(data, dict) or "events" not in data:
        raise InputError("word record needs an events list")
    events = [event_from_json(e) for e in data["events"]]
    heights = data.get("heights")
    return WordState(events, heights)


# -- the resolution itself -----------------------------------------------------


def _front(col, row):
    return (col - row, col + row)


class _Arc:
    """Cusp-to-cusp strand of the front, stored left to right."""

    __slots__ = ("aid", "points", "direction", "cols", "rows")

    def __init__(self, aid, points, direction, cols, rows):
        self.aid = aid
        self.points = points  # front coordinates, x strictly increasing
        self.direction = direction  # traversal travel, +1 rightward
        self.cols = cols  # columns whose vertical segment lies on this arc
        self.rows = rows

    def z_at(self, x):
        pts = self.points
        if not pts[0][0] <= x <= pts[-1][0]:
            raise AssertionError("arc queried outside its span")
        for (x0, z0), (x1, z1) in zip(pts, pts[1:]):
            if x0 <= x <= x1:
                slope = (z1 - z0) // (x1 - x0)
                return z0 + slope * (x - x0)
        return pts[-1][1]


def _build_arcs(grid):
    """Cut the marker walk at cusps; kinks stay interior to their arc."""
    walk = grid.traversal()
    n = len(walk)
    kinds = [grid.corner_kind(m, c) for m, c, _ in walk]
    cusp_at = [k in (NW, SE) for k in kinds]
    if not any(cusp_at):
        raise AssertionError("front without cusps")
    start = cusp_at.index(True)
    order = list(range(start, n)) + list(range(start))
    arcs = []
    cusp_arcs = {}  # walk index of cusp -> [arc ending there, arc starting]
    current = [order[0]]
    for step in order[1:] + [order[0]]:
        current.append(step)
        if cusp_at[step]:
            pts = [_front(walk[i][1], walk[i][2]) for i in current]
            cols = {walk[current[i]][1]
                    for i in range(len(current) - 1)
                    if walk[current[i]][0] == "x"}
            rows = {walk[current[i]][2]
                    for i in range(len(current) - 1)
                    if walk[current[i]][0] == "o"}
            direction = 1 if pts[1][0] > pts[0][0] else -1
            if direction == -1:
                pts = pts[::-1]
            xs = [p[0] for p in pts]
            if xs != sorted(xs) or len(set(xs)) != len(xs):
                raise AssertionError("arc not monotone across the sweep")
            arc = _Arc(len(arcs), pts, direction, cols, rows)
            arcs.append(arc)
            cusp_arcs.setdefault(current[0], [None, None])[1] = arc
            cusp_arcs.setdefault(step, [None, None])[0] = arc
            current = [step]
    return walk, kinds, arcs, cusp_arcs


def resolve(grid):
    """Sweep the rotated grid into a WordState.

    Knots only.  Chords get stable names in sweep order: loop chords
    a1, a2, ... at right cusps and crossing chords c1, c2, ...
    """
    if not isinstance(grid, GridDiagram):
        raise InputError("resolve expects a grid diagram")
    walk, kinds, arcs, cusp_arcs = _build_arcs(grid)
    flip = -1 if grid.orientation == "reversed" else 1

    col_arc = {}
    row_arc = {}
    for arc in arcs:
        for c in arc.cols:
            col_arc[c] = arc
        for r in arc.rows:
            row_arc[r] = arc

    raw = []  # (x, z, sub, payload)
    for i, (marker, col, row) in enumerate(walk):
        x, z = _front(col, row)
        if kinds[i] == SE:
            end_arc, start_arc = cusp_arcs[i]
            vertical = end_arc if col in end_arc.cols else start_arc
            horizontal = start_arc if vertical is end_arc else end_arc
            raw.append((x, z, 0, ("birth", vertical, horizontal, marker)))
        elif kinds[i] == NW:
            end_arc, start_arc = cusp_arcs[i]
            vertical = end_arc if col in end_arc.cols else start_arc
            horizontal = start_arc if vertical is end_arc else end_arc
            raw.append((x, z, 0, ("loop", vertical, horizontal)))
            raw.append((x, z, 1, ("cap", vertical, horizontal)))
    for cr in grid.crossings():
        x, z = _front(cr.col, cr.row)
        raw.append((x, z, 0, ("cross", col_arc[cr.col], row_arc[cr.row])))
    raw.sort(key=lambda t: (t[0], t[1], t[2]))

    events = []
    chord_z = []
    active = []  # arcs, bottom to top
    loops = crossings = 0
    for uid, (x, z, _, payload) in enumerate(raw):
        below = sum(1 for a in active if a.z_at(x) < z)
        kind = payload[0]
        if kind == "birth":
            _, vertical, horizontal, marker = payload
            dirs = (flip, -flip) if marker == "x" else (-flip, flip)
            if (vertical.direction * flip, horizontal.direction * flip) != dirs:
                raise AssertionError("cusp directions disagree with marker")
            events.append(Birth(uid, below, dirs))
            active[below:below] = [vertical, horizontal]
        elif kind == "cross":
            _, varc, harc = payload
            if active[below] is not harc or active[below + 1] is not varc:
                raise AssertionError("crossing strands out of order")
            crossings += 1
            name = "c%d" % crossings
            events.append(Cross(uid, below, name))
            chord_z.append((z, uid, name))
            active[below], active[below + 1] = varc, harc
        elif kind == "loop":
            _, vertical, horizontal = payload
            if active[below] is not horizontal or active[below + 1] is not vertical:
                raise AssertionError("cusp strands out of order")
            loops += 1
            name = "a%d" % loops
            events.append(Cross(uid, below, name))
            chord_z.append((z, uid, name))
            active[below], active[below + 1] = vertical, horizontal
        else:
            events.append(Cap(uid, below))
            del active[below:below + 2]
    if active:
        raise AssertionError("sweep left strands alive")

    heights = {}
    for rank, (_, _, name) in enumerate(sorted(chord_z)):
        heights[name] = Fraction(rank + 1)

    word = WordState(events, heights, grid=grid)
    if word.component_count() != grid.component_count():
        raise AssertionError("word and grid disagree on components")
    if grid.is_knot():
        # classical invariants are recomputed straight from the grid as a
        # cross-check on the whole resolution
        if word.tb() != grid.thurston_bennequin():
            raise AssertionError("word and grid disagree on tb")
        rot = grid.rotation_number()
        if word.rotation() != rot:
            raise AssertionError("word and grid disagree on rotation")
        grading = word.grading()
        if grading.available and grading.modulus != 2 * abs(rot):
            raise AssertionError("grading modulus is not twice the rotation")
    return word
