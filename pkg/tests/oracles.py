"""Independent oracles and hand-computed anchors used by the tests.

Everything here is deliberately written against different definitions
than the package code: tb comes from an exact push-off linking number
instead of the writhe-and-cusps formula, rotation from a cusp census
instead of a turning number, linearized homology from a set-based
elimination instead of bitmask ranks, and the height feasibility from
a rational simplex instead of the fixpoint sweep.  The frozen tables at
the bottom were worked out by hand on paper before the package produced
its first output, and the tests compare against them verbatim.
"""

import itertools
from fractions import Fraction

# -- tb as a push-off linking number ---------------------------------------------
#
# The front of a grid lives in the plane rotated 45 degrees: a grid
# point (c, r) sits at (c - r, c + r).  Column segments get slope -1
# and row segments slope +1, and the slope -1 strand is always the over
# strand.  tb equals the linking number of the front with its push-off
# in the positive z direction, so shift a second copy up by a tiny
# rational and count signed crossings between the copies exactly.


def _front_segments(grid):
    """Oriented front segments: verticals X to O, horizontals O to X."""
    g = grid.g
    xcol = [0] * g
    ocol = [0] * g
    for c in range(g):
        xcol[grid.x_cells[c]] = c
        ocol[grid.o_cells[c]] = c
    segs = []
    for c in range(g):
        a = (c - grid.x_cells[c], c + grid.x_cells[c])
        b = (c - grid.o_cells[c], c + grid.o_cells[c])
        segs.append((a, b))
    for r in range(g):
        a = (ocol[r] - r, ocol[r] + r)
        b = (xcol[r] - r, xcol[r] + r)
        segs.append((a, b))
    return segs


def _cross_pairs(segs_a, segs_b):
    """Signed transverse interior intersections, or None on a degeneracy."""
    total = 0
    for (p1, p2) in segs_a:
        d1 = (p2[0] - p1[0], p2[1] - p1[1])
        for (q1, q2) in segs_b:
            d2 = (q2[0] - q1[0], q2[1] - q1[1])
            den = d1[0] * d2[1] - d1[1] * d2[0]
            if den == 0:
                continue  # parallel; same-slope strands never cross
            w = (q1[0] - p1[0], q1[1] - p1[1])
            t = Fraction(w[0] * d2[1] - w[1] * d2[0], den)
            u = Fraction(w[0] * d1[1] - w[1] * d1[0], den)
            if t in (0, 1) or u in (0, 1):
                return None
            if not (0 < t < 1 and 0 < u < 1):
                continue
            # slope -1 is the over strand; directions keep orientation
            slope1 = Fraction(d1[1], d1[0])
            over, under = (d1, d2) if slope1 < 0 else (d2, d1)
            det = over[0] * under[1] - over[1] * under[0]
            total += 1 if det > 0 else -1
    return total


def tb_pushoff(grid):
    """Linking number of the front with its upward push-off."""
    segs = _front_segments(grid)
    for denom in (997, 9973, 99991):
        delta = Fraction(1, denom)
        shifted = [((a[0], a[1] + delta), (b[0], b[1] + delta))
                   for a, b in segs]
        total = _cross_pairs(segs, shifted)
        if total is not None:
            if total % 2:
                raise AssertionError("push-off crossing count is odd")
            return total // 2
    raise AssertionError("no generic push-off offset found")


# -- rotation as a cusp census ----------------------------------------------------
#
# A corner whose free rays point north and west is a right cusp of the
# front, south and east a left cusp.  Traversed with the default
# orientation, a right cusp at an O and a left cusp at an X are passed
# downward; the other two upward.  The rotation number is half the
# downward count minus the upward count.


def rotation_cusps(grid):
    g = grid.g
    xcol = [0] * g
    ocol = [0] * g
    for c in range(g):
        xcol[grid.x_cells[c]] = c
        ocol[grid.o_cells[c]] = c
    down = up = 0
    for c in range(g):
        for marker, row, partner_row, partner_col in (
                ("x", grid.x_cells[c], grid.o_cells[c], ocol[grid.x_cells[c]]),
                ("o", grid.o_cells[c], grid.x_cells[c], xcol[grid.o_cells[c]])):
            north = partner_row > row
            west = partner_col < c
            if north and west:  # right cusp
                if marker == "o":
                    down += 1
                else:
                    up += 1
            elif not north and not west:  # left cusp
                if marker == "x":
                    down += 1
                else:
                    up += 1
    if (down - up) % 2:
        raise AssertionError("odd cusp imbalance")
    rot = (down - up) // 2
    return -rot if grid.orientation == "reversed" else rot


# -- GF2 ranks by set elimination ---------------------------------------------------


def gf2_rank_sets(rows):
    """Rank over Z/2 of rows given as iterables of column labels."""
    basis = []  # (pivot, frozenset)
    rank = 0
    for row in rows:
        cur = set(row)
        while cur:
            pivot = min(cur)
            hit = next((b for p, b in basis if p == pivot), None)
            if hit is None:
                basis.append((pivot, frozenset(cur)))
                rank += 1
                break
            cur ^= hit
    return rank


def lch_dims_oracle(dga, eps):
    """Linearized homology dimensions, recomputed from the raw d table.

    The linearized boundary of x keeps, for each word of d(x) and each
    letter position, that letter weighted by the augmentation of all
    the other letters.  Dimensions come from set-based kernel ranks on
    the matrix and its transpose, which must agree.
    """
    degree = dict(dga.generators)
    names_by_deg = {}
    for n, k in dga.generators:
        names_by_deg.setdefault(k, []).append(n)
    columns = {}
    for n, _ in dga.generators:
        counts = {}
        for word in dga.d[n]:
            for i, letter in enumerate(word):
                rest = 1
                for j, other in enumerate(word):
                    if j != i:
                        rest *= eps[other]
                if rest:
                    counts[letter] = counts.get(letter, 0) + 1
        columns[n] = {m for m, c in counts.items() if c % 2}
    m = dga.modulus
    dims = {}
    for k in names_by_deg:
        srcs = names_by_deg[k]
        below = k - 1 if m == 0 else (k - 1) % m
        above = k + 1 if m == 0 else (k + 1) % m
        rank_k = gf2_rank_sets(columns[n] for n in srcs)
        t_rows = []
        for n in names_by_deg.get(above, []):
            row = {s for s in columns[n] if degree[s] == k}
            t_rows.append(row)
        rank_above = gf2_rank_sets(t_rows)
        # transposing must not change a rank
        t_check = gf2_rank_sets(
            {s for s in columns[n] if degree[s] == below} for n in srcs)
        if t_check != rank_k:
            raise AssertionError("rank disagrees with its transpose")
        dim = len(srcs) - rank_k - rank_above
        if dim < 0:
            raise AssertionError("negative homology dimension")
        if dim:
            dims[k] = dim
    return dims


# -- rational simplex for the margin system -------------------------------------------

_MAX_PIVOTS = 20000  # Bland's rule terminates; this is a hard backstop


def simplex_feasible(constraints, variables):
    """Is {A s >= b, s >= 0} nonempty?  Constraints are (coeffs, rhs)."""
    index = {v: i for i, v in enumerate(variables)}
    n = len(variables)
    m = len(constraints)
    rows = []
    artificial_rows = []
    for i, (coeffs, rhs) in enumerate(constraints):
        a = [Fraction(0)] * n
        for v, c in coeffs.items():
            a[index[v]] += c
        rhs = Fraction(rhs)
        if rhs <= 0:
            # flip to (-a) s + slack = -rhs, slack starts basic
            a = [-x for x in a]
            rhs = -rhs
            slack_sign = 1
        else:
            slack_sign = -1
            artificial_rows.append(i)
        rows.append((a, slack_sign, rhs))

    n_art = len(artificial_rows)
    ncols = n + m + n_art
    tableau = []
    basis = []
    art_col = {}
    for j, i in enumerate(artificial_rows):
        art_col[i] = n + m + j
    for i, (a, slack_sign, rhs) in enumerate(rows):
        row = a + [Fraction(0)] * (m + n_art) + [rhs]
        row[n + i] = Fraction(slack_sign)
        if i in art_col:
            row[art_col[i]] = Fraction(1)
            basis.append(art_col[i])
        else:
            basis.append(n + i)
        tableau.append(row)

    cost = [Fraction(0)] * (ncols + 1)
    for i in artificial_rows:
        cost[art_col[i]] = Fraction(1)
    for i in artificial_rows:
        row = tableau[i]
        for j in range(ncols + 1):
            cost[j] -= row[j]

    for _ in range(_MAX_PIVOTS):
        entering = -1
        for j in range(ncols):
            if cost[j] < 0:
                entering = j
                break
        if entering < 0:
            return -cost[ncols] == 0
        pivot_row = -1
        best = None
        for i in range(m):
            coef = tableau[i][entering]
            if coef > 0:
                ratio = tableau[i][ncols] / coef
                if (best is None or ratio < best
                        or (ratio == best and basis[i] < basis[pivot_row])):
                    best = ratio
                    pivot_row = i
        if pivot_row < 0:
            raise AssertionError("unbounded phase-one objective")
        piv = tableau[pivot_row][entering]
        tableau[pivot_row] = [x / piv for x in tableau[pivot_row]]
        for i in range(m):
            if i != pivot_row and tableau[i][entering]:
                f = tableau[i][entering]
                prow = tableau[pivot_row]
                tableau[i] = [x - f * y for x, y in zip(tableau[i], prow)]
        if cost[entering]:
            f = cost[entering]
            prow = tableau[pivot_row]
            cost = [x - f * y for x, y in zip(cost, prow)]
        basis[pivot_row] = entering
    raise AssertionError("simplex exceeded %d pivots" % _MAX_PIVOTS)


def contractible_oracle(word, target, disks):
    """Margin-system feasibility for one chord, decided by the simplex."""
    if any(d.positive == target for d in disks):
        return False
    variables = [c.name for c in word.chords() if c.name != target]
    constraints = []
    for d in disks:
        coeffs = {d.positive: 1}
        rhs = 0
        for name in d.word:
            if name == target:
                continue
            coeffs[name] = coeffs.get(name, 0) - 1
            rhs += 1
        constraints.append((coeffs, rhs))
    return simplex_feasible(constraints, variables)


# -- disk census by direct path enumeration ---------------------------------------
#
# A from-scratch disk enumerator for cross-checking the package engine.
# It walks every sweep path one at a time by depth-first recursion: no
# feasibility filter, no merging of states across paths, words spliced
# eagerly at every join instead of replayed from an op log, arc ids
# substituted through the pending work instead of union-found, and the
# positive-corner marker located by scanning words instead of tracked.
# It even allows up to two fresh wedge sheets per left cusp, a move the
# package engine caps at one, so agreement also certifies that second
# wedges never finish a disk.  Identical children of one parent are
# deduplicated (two matchings that swap indistinguishable sheets are
# the same geometric move), which needs a relabel-invariant key.
# Disks must have Euler characteristic one (creations minus saddles),
# no cap may collapse a multi-sheet cycle, and a dying edge must sit on
# the near strand of the cusp's pair (a far-strand edge wraps the lens
# and fusing it would put a branch point on the boundary); the same
# exclusion removes the birth split whose halves both cover the new
# lens.  All three checks mirror the engine's.


def _word_key(word):
    return tuple(("+", x[1]) if isinstance(x, tuple) else ("l", x)
                 for x in word)


def _config_key(sheets, arcs, circle):
    """Key invariant under arc renaming and reordering of equal sheets."""
    sigs = sorted(
        ((lo, hi, _word_key(arcs[a]), _word_key(arcs[b]), a, b)
         for (lo, hi, a, b) in sheets),
        key=lambda t: t[:4])
    groups = []
    for i, s in enumerate(sigs):
        if groups and sigs[groups[-1][0]][:4] == s[:4]:
            groups[-1].append(i)
        else:
            groups.append([i])
    best = None
    for perm in itertools.product(
            *[list(itertools.permutations(g)) for g in groups]):
        order = [i for g in perm for i in g]
        names = {}
        out = []
        for i in order:
            lo, hi, ka, kb, a, b = sigs[i]
            for x in (a, b):
                if x not in names:
                    names[x] = len(names)
            out.append((lo, hi, names[a], names[b], ka, kb))
        cand = tuple(out)
        if best is None or cand < best:
            best = cand
    return (best, None if circle is None else _word_key(circle))


def _has_marker(word):
    return any(isinstance(x, tuple) for x in word)


def _subst(sheets, dead, new):
    return [(lo, hi, new if a in dead else a, new if b in dead else b)
            for (lo, hi, a, b) in sheets]


def _birth_children(p, sheets, arcs, circle, wedge_cap):
    per = []
    for s in sheets:
        lo, hi, a, b = s
        if hi < p:
            per.append((("keep", s),))
        elif lo >= p:
            per.append((("keep", (lo + 2, hi + 2, a, b)),))
        else:
            per.append((("wedge", s), ("split", s)))
    for combo in itertools.product(*per):
        for extra in range(wedge_cap + 1):
            if circle is not None and extra:
                continue
            sh = []
            arcs2 = dict(arcs)
            cuts = 0
            for (tag, (lo, hi, a, b)) in combo:
                if tag == "keep":
                    sh.append((lo, hi, a, b))
                elif tag == "wedge":
                    sh.append((lo, hi + 2, a, b))
                else:  # split around the newborn pair, near strands
                    n = max(arcs2, default=-1) + 1
                    arcs2[n] = ()
                    sh.append((lo, p, a, n))
                    sh.append((p + 1, hi + 2, n, b))
                    cuts += 1
            for _ in range(extra):
                n = max(arcs2, default=-1) + 1
                arcs2[n] = ()
                sh.append((p, p + 1, n, n))
            yield sh, arcs2, circle, extra - cuts


def _cross_children(p, name, sheets, arcs, circle):
    marker_free = circle is None and not any(
        _has_marker(w) for w in arcs.values())
    per = []
    for s in sheets:
        lo, hi, a, b = s
        if lo == p and hi == p + 1:
            per.append((("pinch", s),))
        elif lo == p:
            per.append((("keep", (p + 1, hi, a, b)),))
        elif hi == p + 1:
            per.append((("keep", (lo, p, a, b)),))
        elif lo == p + 1:
            per.append((("keep", (p, hi, a, b)), ("lturn", s)))
        elif hi == p:
            per.append((("keep", (lo, p + 1, a, b)), ("uturn", s)))
        else:
            per.append((("keep", s),))
    for combo in itertools.product(*per):
        for opens in (0, 1):
            pinches = [s for tag, s in combo if tag == "pinch"]
            spent = len(pinches) + opens
            if spent and not marker_free:
                continue
            if spent > 1:
                continue
            arcs2 = dict(arcs)
            circle2 = circle
            # letters land before any same-event splice copies the arc
            for (tag, (lo, hi, a, b)) in combo:
                if tag == "lturn":
                    arcs2[a] = arcs2[a] + (name,)
                elif tag == "uturn":
                    arcs2[b] = (name,) + arcs2[b]
            sh = [s if tag != "pinch" else None
                  for tag, s in combo]
            sh = [s for s in sh if s is not None]
            sh = [(lo, hi, a, b) for (lo, hi, a, b) in sh]
            ok = True
            for (lo, hi, a, b) in pinches:
                if a == b:
                    circle2 = arcs2.pop(a) + (("+", name),)
                else:
                    n = max(arcs2, default=-1) + 1
                    arcs2[n] = arcs2.pop(a) + (("+", name),) + arcs2.pop(b)
                    sh = _subst(sh, (a, b), n)
            if opens:
                n = max(arcs2, default=-1) + 1
                arcs2[n] = (("+", name),)
                sh.append((p, p + 1, n, n))
            if circle2 is not None and sh:
                ok = False
            if ok:
                yield sh, arcs2, circle2, opens


def _cap_children(p, sheets, arcs, circle):
    keeps = []
    low_here, low_east, up_here, up_east = [], [], [], []
    for i, (lo, hi, a, b) in enumerate(sheets):
        if hi < p:
            keeps.append((lo, hi, a, b))
        elif lo > p + 1:
            keeps.append((lo - 2, hi - 2, a, b))
        elif lo < p and hi > p + 1:
            keeps.append((lo, hi - 2, a, b))
        else:
            if hi == p:
                up_here.append(i)
            if lo == p + 1:
                low_east.append(i)
            if hi == p + 1:
                if lo != p:
                    return  # far-strand edge: boundary branch point
                up_east.append(i)
            if lo == p:
                if hi != p + 1:
                    return
                low_here.append(i)
    if len(up_here) != len(low_east) or len(up_east) != len(low_here):
        return
    if not (up_here or low_east or up_east or low_here):
        yield keeps, dict(arcs), circle, 0
        return
    dying = sorted(set(low_here + low_east + up_here + up_east))
    for m1 in itertools.permutations(up_here):
        for m2 in itertools.permutations(up_east):
            pairs = list(zip(low_east, m1)) + list(zip(low_here, m2))
            arcs2 = dict(arcs)
            circle2 = circle
            kept = list(keeps)
            ends = {i: [sheets[i][2], sheets[i][3]] for i in dying}
            ok = True
            for (iin, iout) in pairs:
                a = ends[iin][0]
                b = ends[iout][1]
                if a == b:
                    # the arc bites its own tail: the boundary circle
                    word = arcs2.pop(a)
                    if circle2 is not None or not _has_marker(word):
                        ok = False
                        break
                    circle2 = word
                    for e in ends.values():
                        e[0] = None if e[0] == a else e[0]
                        e[1] = None if e[1] == a else e[1]
                else:
                    n = max(arcs2, default=-1) + 1
                    arcs2[n] = arcs2.pop(a) + arcs2.pop(b)
                    kept = _subst(kept, (a, b), n)
                    for e in ends.values():
                        e[0] = n if e[0] in (a, b) else e[0]
                        e[1] = n if e[1] in (a, b) else e[1]
            if not ok:
                continue
            # fuse matched sheets into merged survivors
            adj = {i: [] for i in dying}
            for (iin, iout) in pairs:
                adj[iin].append(iout)
                adj[iout].append(iin)
            consumed_low = set(low_east) | set(low_here)
            consumed_up = set(up_here) | set(up_east)
            sh = kept
            seen = set()
            fused = 0
            for i in dying:
                if i in seen:
                    continue
                comp = [i]
                seen.add(i)
                queue = [i]
                while queue:
                    u = queue.pop()
                    for v in adj[u]:
                        if v not in seen:
                            seen.add(v)
                            comp.append(v)
                            queue.append(v)
                fused += len(comp) - 1
                open_low = [j for j in comp if j not in consumed_low]
                open_up = [j for j in comp if j not in consumed_up]
                if not open_low and not open_up:
                    if len(comp) > 1:
                        ok = False  # branched cycle, not an immersion
                        break
                    continue  # one sheet rounding off smoothly
                if len(open_low) != 1 or len(open_up) != 1:
                    ok = False
                    break
                lo2 = min(sheets[j][0] for j in comp)
                hi2 = max(sheets[j][1] for j in comp) - 2
                if lo2 >= hi2:
                    ok = False
                    break
                sh.append((lo2, hi2,
                           ends[open_low[0]][0], ends[open_up[0]][1]))
            if not ok:
                continue
            if circle2 is not None and sh:
                continue
            yield sh, arcs2, circle2, -fused


def disk_census_paths(events, budget=10 ** 7, wedge_cap=2):
    """Disk boundary words counted by exhaustive path enumeration.

    Returns {(positive corner, word): count}.  Raises AssertionError
    past `budget` expanded nodes; no silent truncation.
    """
    census = {}
    nodes = [0]

    def walk(k, sheets, arcs, circle, chi):
        nodes[0] += 1
        if nodes[0] > budget:
            raise AssertionError("oracle exceeded %d nodes" % budget)
        if k == len(events):
            if circle is None or sheets or chi != 1:
                return
            at = next(i for i, x in enumerate(circle)
                      if isinstance(x, tuple))
            word = tuple(circle[at + 1:] + circle[:at])
            key = (circle[at][1], word)
            census[key] = census.get(key, 0) + 1
            return
        ev = events[k]
        kind = type(ev).__name__
        if kind == "Birth":
            children = _birth_children(ev.pos, sheets, arcs, circle,
                                       wedge_cap)
        elif kind == "Cross":
            children = _cross_children(ev.pos, ev.name, sheets, arcs,
                                       circle)
        else:
            children = _cap_children(ev.pos, sheets, arcs, circle)
        done = set()
        for (sh, arcs2, circle2, dchi) in children:
            key = (_config_key(sh, arcs2, circle2), chi + dchi)
            if key in done:
                continue
            done.add(key)
            walk(k + 1, tuple(sh), arcs2, circle2, chi + dchi)

    walk(0, (), {}, None, 0)
    return census


# -- hand-computed anchors -------------------------------------------------------------
#
# The unknot word has one loop chord a1 and two boundary strips, one
# closing east into the cap and one opening west out of the birth; they
# cancel mod 2.  The trefoil differential below is the classical
# five-chord computation redone on paper with the strip sweep: each
# monomial was traced corner by corner.  The augmentation table follows
# by substituting all 8 points of {0,1}^3 into 1+c1+c3+c3*c2*c1.

UNKNOT_D = {"a1": []}
UNKNOT_AUG_COUNT = 1
UNKNOT_LCH = {1: 1}

TREFOIL_DEGREES = {"a1": 1, "a2": 1, "c1": 0, "c2": 0, "c3": 0}
TREFOIL_D = {
    "a1": ["1", "c1", "c3", "c3 c2 c1"],
    "a2": ["1", "c1", "c3", "c1 c2 c3"],
    "c1": [],
    "c2": [],
    "c3": [],
}
TREFOIL_AUG_COUNT = 5
TREFOIL_AUGS = [
    {"c1": 0, "c2": 0, "c3": 1},
    {"c1": 0, "c2": 1, "c3": 1},
    {"c1": 1, "c2": 0, "c3": 0},
    {"c1": 1, "c2": 1, "c3": 0},
    {"c1": 1, "c2": 1, "c3": 1},
]
TREFOIL_LCH = {0: 2, 1: 1}
TREFOIL_CONTRACTIBLE = {"a1": False, "a2": False,
                        "c1": True, "c2": True, "c3": True}

# deleting c3 and c2 from the trefoil word leaves a one-crossing unknot
# whose loops both bound a bare strip and a strip through c1
ONE_CROSSING_UNKNOT_D = {"a1": ["1", "c1"], "a2": ["1", "c1"], "c1": []}
ONE_CROSSING_UNKNOT_LCH = {1: 1}

STAB_UNKNOT_AUG_COUNT = 0
STAB_UNKNOT_MODULUS = 2

# classical invariant table for the stock grids
CLASSICAL = {
    "unknot": {"tb": -1, "rotation": 0, "modulus": 0},
    "stab": {"tb": -2, "rotation": -1, "modulus": 2},
    "slack": {"tb": -1, "rotation": 0, "modulus": 0},
    "trefoil": {"tb": 1, "rotation": 0, "modulus": 0},
    "torus2": {"tb": 3, "rotation": 0, "modulus": 0},
    "torus3": {"tb": 5, "rotation": 0, "modulus": 0},
    "torus4": {"tb": 7, "rotation": 0, "modulus": 0},
}

# surface homology of the stock cobordisms, worked out from the handle
# attachments: the disk is one cap; the trefoil filling is one cap and
# two saddles whose feet pair off inside a single component; the torus
# saddle tubes never meet a cap
HANDLE_HOMOLOGY = {
    "unknot_disk": (1, 0, 0),
    "trefoil_filling": (1, 2, 0),
    "torus_1_2": (0, 2, 0),
    "cylinder": (0, 0, 0),
}
