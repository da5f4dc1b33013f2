"""Immersed disks with convex corners, counted along the event word.

A disk meets each vertical line of the resolved diagram in a finite
multiset of slot intervals.  Each interval (a sheet) is bounded below
and above by pieces of the disk boundary; distinct sheets may overlap
because the disk is immersed, not embedded.  Sweeping west to east,
sheets open at left cusps or just east of a crossing, deform as
boundary strands cross, split where a cusp is born inside one, merge
or die at right cusps.  The boundary pieces (arcs) collect the chord
names of the negative corners they turn through, and the unique
positive corner rides along as a marker.  When the final sheet closes
the arcs have fused into one circle; reading the circle from just
after the marker gives the disk's boundary word, negative corners in
counterclockwise order.

Closing the boundary circle is not enough to make the swept surface an
immersed disk.  Two further integers are carried along.  The Euler
characteristic (sheet creations +1, split and merge saddles -1) must
end at one, else the surface grew a handle.  And the boundary tangent
of an immersed disk turns through exactly one full revolution, so the
sweep sums the half turns it picks up: the single positive corner is
one, each cusp nose the boundary rounds is plus or minus one by the
sense of the U-turn (plus when the wrap agrees with the nose, at a
fresh sheet opening on a left cusp, a lens sheet folding shut on a
right cusp, or a cap fusion whose edges die on the far strands of the
pair; minus against it, at a split around a newborn cusp or a fusion
whose edges die on the near strands), and negative corners are flat.
A closed state is a disk only when the nose sum is one, making two
half turns with the positive corner; any other total betrays a branch
point, a map no perturbation makes an immersion.  A cap gluing two or
more sheets into a closed cycle collapses a circle fiber to a point
and is rejected outright the same way.

Enumeration runs in two passes over the same transition rules.  A
coarse pass forgets the arc wiring and keeps only the interval
multiset plus two flags (marker spent, circle closed); a forward
sweep and a backward marking over that small space decide which
coarse states can still finish.  The exact pass then walks the word
level by level, merging states with equal canonical form while adding
their path multiplicities, and prunes any state whose coarse
projection cannot reach acceptance.  If the coarse space itself blows
up sweeping from the west, the word is mirrored (births and caps swap
roles) and swept from the east; boundary words are reversed back at
the end.
"""

import itertools

from .errors import BudgetExceeded
from .resolve import Birth, Cap, Cross

_TRIAL_CAP = 200000  # coarse states allowed before trying the mirror


class Disk:
    """One rigid disk: its positive corner and its negative boundary word."""

    __slots__ = ("positive", "word")

    def __init__(self, positive, word):
        self.positive = positive
        self.word = word

    def __repr__(self):
        return "Disk(%s <- %s)" % (self.positive, " ".join(self.word) or "1")


def _mirror_events(events):
    """Reflect the word left-right: births and caps swap roles."""
    out = []
    for ev in reversed(events):
        if isinstance(ev, Birth):
            out.append(Cap(uid=ev.uid, pos=ev.pos))
        elif isinstance(ev, Cap):
            out.append(Birth(uid=ev.uid, pos=ev.pos, dirs=(-1, 1)))
        else:
            out.append(ev)
    return out


def _coarse_branches(ev, ivs, pu, cl):
    """Children of a coarse state: (sorted interval tuple, pu2, cl2).

    pu is True once the marker has been spent, cl once the boundary
    circle has closed.  Every exact transition projects to a coarse
    one, so pruning against coarse reachability never loses a disk.
    """
    p = ev.pos
    if isinstance(ev, Birth):
        opts = []
        for (lo, hi) in ivs:
            if hi < p:
                opts.append(((lo, hi),))
            elif lo >= p:
                opts.append(((lo + 2, hi + 2),))
            else:
                opts.append((("w", lo, hi), ("o", lo, hi)))
        for combo in itertools.product(*opts):
            for nopen in (0, 1):
                if cl and nopen:
                    continue
                sh = []
                for c in combo:
                    if c[0] == "w":
                        sh.append((c[1], c[2] + 2))
                    elif c[0] == "o":
                        sh.append((c[1], p))
                        sh.append((p + 1, c[2] + 2))
                    else:
                        sh.append(c)
                if nopen:
                    sh.append((p, p + 1))
                yield tuple(sorted(sh)), pu, cl
        return

    if isinstance(ev, Cross):
        opts = []
        for (lo, hi) in ivs:
            if lo == p and hi == p + 1:
                opts.append(("pinch",))
            elif lo == p:
                opts.append(((p + 1, hi),))
            elif hi == p + 1:
                opts.append(((lo, p),))
            elif lo == p + 1:
                opts.append(((p, hi), (lo, hi)))
            elif hi == p:
                opts.append(((lo, p + 1), (lo, hi)))
            else:
                opts.append(((lo, hi),))
        for combo in itertools.product(*opts):
            for eopen in (0, 1):
                sh = []
                pu2 = pu
                cl2 = cl
                ok = True
                pinched = False
                for c in combo:
                    if c == "pinch":
                        if pu2:
                            ok = False
                            break
                        pu2 = True
                        pinched = True
                    else:
                        sh.append(c)
                if not ok:
                    continue
                if eopen:
                    if pu2 or cl2:
                        continue
                    pu2 = True
                    sh.append((p, p + 1))
                if pinched and not sh and not cl2:
                    # the pinched sheet's arcs may have formed the circle
                    yield (), pu2, True
                yield tuple(sorted(sh)), pu2, cl2
        return

    # Cap: strands at p and p+1 die.
    keeps = []
    Uu, Lv, Uv, Lu = [], [], [], []
    tag = 0
    for (lo, hi) in ivs:
        tag += 1
        s = (lo, hi, tag)
        if hi < p:
            keeps.append((lo, hi))
        elif lo > p + 1:
            keeps.append((lo - 2, hi - 2))
        elif lo < p and hi > p + 1:
            keeps.append((lo, hi - 2))
        else:
            if hi == p:
                Uu.append(s)
            if lo == p + 1:
                Lv.append(s)
            if hi == p + 1:
                if lo != p:
                    return  # wraps the lens: boundary branch point
                Uv.append(s)
            if lo == p:
                if hi != p + 1:
                    return
                Lu.append(s)
    if len(Uu) != len(Lv) or len(Uv) != len(Lu):
        return
    if not (Uu or Lv or Uv or Lu):
        yield tuple(sorted(keeps)), pu, cl
        return
    consumedL = {s[2] for s in Lv} | {s[2] for s in Lu}
    consumedU = {s[2] for s in Uu} | {s[2] for s in Uv}
    emitted = set()
    for m1 in itertools.permutations(range(len(Uu))):
        for m2 in itertools.permutations(range(len(Uv))):
            touched = {}
            for s in Uu + Lv + Uv + Lu:
                touched[s[2]] = s
            adj = {t: [] for t in touched}
            for i in range(len(Lv)):
                a, b = Lv[i][2], Uu[m1[i]][2]
                adj[a].append(b)
                adj[b].append(a)
            for j in range(len(Lu)):
                d, c = Lu[j][2], Uv[m2[j]][2]
                adj[d].append(c)
                adj[c].append(d)
            visited = set()
            sh = list(keeps)
            ok = True
            for t in touched:
                if t in visited:
                    continue
                comp = []
                stk = [t]
                visited.add(t)
                while stk:
                    u = stk.pop()
                    comp.append(touched[u])
                    for v in adj[u]:
                        if v not in visited:
                            visited.add(v)
                            stk.append(v)
                survL = [c for c in comp if c[2] not in consumedL]
                survU = [c for c in comp if c[2] not in consumedU]
                if not survL and not survU:
                    if len(comp) > 1:
                        # a cycle of sheets collapsing to the cusp is a
                        # branch point, never part of an immersed disk
                        ok = False
                        break
                    # a lone sheet folds through the cusp or closes
                    continue
                if len(survL) != 1 or len(survU) != 1:
                    ok = False
                    break
                lo2 = min(c[0] for c in comp)
                hi2 = max(c[1] for c in comp) - 2
                if lo2 >= hi2:
                    ok = False
                    break
                sh.append((lo2, hi2))
            if not ok:
                continue
            if sh:
                # closing with sheets left is never legal, so nothing
                # can have closed on this branch
                key = (tuple(sorted(sh)), pu, cl)
            else:
                # every live end was consumed: the arcs have all become
                # circles, so the boundary circle closed here (it needs
                # the marker, and only one circle may ever form)
                if not pu or cl:
                    continue
                key = ((), True, True)
            if key in emitted:
                continue
            emitted.add(key)
            yield key


def _coarse_levels(events, cap, bump):
    """Forward BFS over coarse states; None once the total exceeds cap."""
    levels = [{((), False, False)}]
    total = 1
    for k in range(len(events)):
        nxt = set()
        for (ivs, pu, cl) in levels[k]:
            bump()
            for child in _coarse_branches(events[k], ivs, pu, cl):
                nxt.add(child)
        total += len(nxt)
        if total > cap:
            return None
        levels.append(nxt)
    return levels


def _backward_good(events, levels, bump):
    """Mark the coarse states that can still reach acceptance."""
    m = len(events)
    good = [None] * (m + 1)
    good[m] = {s for s in levels[m] if s[2] and not s[0]}
    for k in range(m - 1, -1, -1):
        g = set()
        nxtgood = good[k + 1]
        for st in levels[k]:
            bump()
            for child in _coarse_branches(events[k], st[0], st[1], st[2]):
                if child in nxtgood:
                    g.add(st)
                    break
        good[k] = g
    return good


def _branches(ev, sheets, pos_arc, closed, nextid):
    """Children of an exact state: (sheets, pos_arc, closed, ops, dchi).

    A sheet is (lo, hi, aL, aU): slot interval plus the arcs whose live
    ends ride its lower and upper edge.  pos_arc is None while the
    marker is unspent, -1 once it sits inside the closed circle, else
    the arc currently holding it.  dchi is the Euler characteristic
    change: +1 per sheet created, -1 per split or merge saddle.  ops
    replay the word bookkeeping:
      ("app", arc, letter)   append a lower-edge negative corner
      ("pre", arc, letter)   prepend an upper-edge negative corner
      ("new", arc)           fresh empty arc
      ("newpos", arc, name)  fresh arc holding the marker
      ("join", n, a, b)      arcs a, b fuse into n (a's tail to b's head)
      ("joinpos", n, a, b, name)  fuse with the marker in between
      ("close", a)           arc a closes into the boundary circle
      ("closepos", a, name)  close with the marker appended
    """
    p = ev.pos
    if isinstance(ev, Birth):
        opts = []
        for (lo, hi, aL, aU) in sheets:
            if hi < p:
                opts.append(("keep",))
            elif lo >= p:
                opts.append(("shift",))
            else:
                opts.append(("wedge", "osplit"))
        for combo in itertools.product(*opts):
            for nopen in (0, 1):
                if closed and nopen:
                    continue
                sh = []
                ops = []
                nid = nextid
                saddles = 0
                for (s, c) in zip(sheets, combo):
                    lo, hi, aL, aU = s
                    if c == "keep":
                        sh.append(s)
                    elif c == "shift":
                        sh.append((lo + 2, hi + 2, aL, aU))
                    elif c == "wedge":
                        # cusp opens inside the sheet; interior only
                        sh.append((lo, hi + 2, aL, aU))
                    else:
                        # osplit: the sheet splits around the newborn
                        # pair; both halves end on their near strand
                        n = nid
                        nid += 1
                        ops.append(("new", n))
                        sh.append((lo, p, aL, n))
                        sh.append((p + 1, hi + 2, n, aU))
                        saddles += 1
                if nopen:
                    # a new sheet with the cusp as its smooth west tip
                    n = nid
                    nid += 1
                    ops.append(("new", n))
                    sh.append((p, p + 1, n, n))
                yield tuple(sh), pos_arc, closed, ops, nopen - saddles
        return

    if isinstance(ev, Cross):
        name = ev.name
        opts = []
        for (lo, hi, aL, aU) in sheets:
            if lo == p and hi == p + 1:
                opts.append(("pinch",))
            elif lo == p:
                opts.append(("dlo",))
            elif hi == p + 1:
                opts.append(("dhi",))
            elif lo == p + 1:
                opts.append(("lpass", "lturn"))
            elif hi == p:
                opts.append(("upass", "uturn"))
            else:
                opts.append(("keep",))
        for combo in itertools.product(*opts):
            for eopen in (0, 1):
                sh = []
                turn_ops = []
                join_ops = []
                nid = nextid
                pa = pos_arc
                cl = closed
                ok = True
                parent = {}

                def find(a):
                    while a in parent:
                        a = parent[a]
                    return a

                for (s, c) in zip(sheets, combo):
                    lo, hi, aL, aU = s
                    if c == "keep":
                        sh.append(s)
                    elif c == "dlo":
                        # boundary strand carried across, edge follows
                        sh.append((p + 1, hi, aL, aU))
                    elif c == "dhi":
                        sh.append((lo, p, aL, aU))
                    elif c == "lpass":
                        sh.append((p, hi, aL, aU))
                    elif c == "lturn":
                        # negative corner on the lower edge, reads forward
                        turn_ops.append(("app", aL, name))
                        sh.append(s)
                    elif c == "upass":
                        sh.append((lo, p + 1, aL, aU))
                    elif c == "uturn":
                        # negative corner on the upper edge, reads backward
                        turn_ops.append(("pre", aU, name))
                        sh.append(s)
                    else:  # pinch: positive corner opening west
                        if pa is not None:
                            ok = False
                            break
                        if aL == aU:
                            if cl:
                                ok = False
                                break
                            cl = True
                            pa = -1
                            join_ops.append(("closepos", aL, name))
                        else:
                            n = nid
                            nid += 1
                            join_ops.append(("joinpos", n, aL, aU, name))
                            parent[aL] = n
                            parent[aU] = n
                            pa = n
                if not ok:
                    continue
                if eopen:
                    # positive corner opening east starts a new sheet
                    if pa is not None or cl:
                        continue
                    n = nid
                    nid += 1
                    join_ops.append(("newpos", n, name))
                    sh.append((p, p + 1, n, n))
                    pa = n
                if parent:
                    sh = [(l, h, find(a), find(b)) for (l, h, a, b) in sh]
                if cl and sh:
                    continue
                # turns first: a letter must land before its arc is copied
                yield tuple(sh), pa, cl, turn_ops + join_ops, eopen
        return

    # Cap: strands at p and p+1 die.  An upper edge may die only on the
    # lower strand and a lower edge only on the upper one (near-strand
    # rule); the bare lens sheet dies on both at once.  Dying edges are
    # matched up in every way; each matched pair fuses the arcs through
    # the cusp.
    keeps = []
    Uu, Lv, Uv, Lu = [], [], [], []
    for s in sheets:
        lo, hi, aL, aU = s
        if hi < p:
            keeps.append(s)
        elif lo > p + 1:
            keeps.append((lo - 2, hi - 2, aL, aU))
        elif lo < p and hi > p + 1:
            keeps.append((lo, hi - 2, aL, aU))
        else:
            if hi == p:
                Uu.append(s)
            if lo == p + 1:
                Lv.append(s)
            if hi == p + 1:
                if lo != p:
                    return  # wraps the lens: boundary branch point
                Uv.append(s)
            if lo == p:
                if hi != p + 1:
                    return
                Lu.append(s)
    if len(Uu) != len(Lv) or len(Uv) != len(Lu):
        return
    consumedL = {id(x) for x in Lv} | {id(x) for x in Lu}
    consumedU = {id(x) for x in Uu} | {id(x) for x in Uv}
    for m1 in itertools.permutations(range(len(Uu))):
        for m2 in itertools.permutations(range(len(Uv))):
            ops = []
            cl = closed
            pa = pos_arc
            ok = True
            parent = {}

            def find(a):
                while a in parent:
                    a = parent[a]
                return a

            nid = nextid
            joins = [(Lv[i][2], Uu[m1[i]][3]) for i in range(len(Lv))] + \
                    [(Lu[j][2], Uv[m2[j]][3]) for j in range(len(Lu))]
            for (ain, aout) in joins:
                ra, rb = find(ain), find(aout)
                if ra == rb:
                    # the arc closes into a circle; it must be the
                    # boundary circle, so it must hold the marker
                    if cl or pa is None or pa == -1 or find(pa) != ra:
                        ok = False
                        break
                    cl = True
                    pa = -1
                    ops.append(("close", ra))
                else:
                    n = nid
                    nid += 1
                    ops.append(("join", n, ra, rb))
                    parent[ra] = n
                    parent[rb] = n
            if not ok:
                continue
            touched = []
            seen = set()
            for s in Uu + Lv + Uv + Lu:
                if id(s) not in seen:
                    seen.add(id(s))
                    touched.append(s)
            adj = {id(s): [] for s in touched}
            for i in range(len(Lv)):
                a, b = Lv[i], Uu[m1[i]]
                adj[id(a)].append(id(b))
                adj[id(b)].append(id(a))
            for j in range(len(Lu)):
                d, c = Lu[j], Uv[m2[j]]
                adj[id(d)].append(id(c))
                adj[id(c)].append(id(d))
            byid = {id(s): s for s in touched}
            visited = set()
            sh = list(keeps)
            saddles = 0
            for s in touched:
                if id(s) in visited:
                    continue
                comp = []
                stk = [id(s)]
                visited.add(id(s))
                while stk:
                    u = stk.pop()
                    comp.append(byid[u])
                    for v in adj[u]:
                        if v not in visited:
                            visited.add(v)
                            stk.append(v)
                saddles += len(comp) - 1
                survL = [c for c in comp if id(c) not in consumedL]
                survU = [c for c in comp if id(c) not in consumedU]
                if not survL and not survU:
                    if len(comp) > 1:
                        # a cycle of sheets collapsing to the cusp is a
                        # branch point, never part of an immersed disk
                        ok = False
                        break
                    continue  # a lone sheet's smooth east tip
                if len(survL) != 1 or len(survU) != 1:
                    ok = False
                    break
                lo2 = min(c[0] for c in comp)
                hi2 = max(c[1] for c in comp) - 2
                if lo2 >= hi2:
                    ok = False
                    break
                sh.append((lo2, hi2, find(survL[0][2]),
                           find(survU[0][3])))
            if not ok:
                continue
            if parent:
                sh = [(l, h, find(a), find(b)) for (l, h, a, b) in sh]
            if cl and sh:
                continue
            if pa is not None and pa != -1:
                pa = find(pa)
            yield tuple(sh), pa, cl, ops, -saddles


def _wkey(word):
    return tuple(("p", x[1]) if isinstance(x, tuple) else ("l", x)
                 for x in word)


def _full_canon(sheets, arcw, closed_word):
    """Canonical key of an exact state, arc ids renamed away.

    Sheets with identical interval and words are interchangeable, so
    the key minimizes over their orderings; arcs are then numbered by
    first appearance.  States with equal keys have identical futures,
    which is what lets the sweep merge them and add multiplicities.
    """
    order = sorted(
        range(len(sheets)),
        key=lambda i: (sheets[i][0], sheets[i][1],
                       _wkey(arcw[sheets[i][2]]),
                       _wkey(arcw[sheets[i][3]])))
    groups = []
    for i in order:
        sig = (sheets[i][0], sheets[i][1],
               _wkey(arcw[sheets[i][2]]), _wkey(arcw[sheets[i][3]]))
        if groups and groups[-1][0] == sig:
            groups[-1][1].append(i)
        else:
            groups.append((sig, [i]))
    best = None
    for perm in itertools.product(
            *[list(itertools.permutations(g)) for _, g in groups]):
        seq = [i for g in perm for i in g]
        ren = {}
        out = []
        for i in seq:
            lo, hi, aL, aU = sheets[i]
            for a in (aL, aU):
                if a not in ren:
                    ren[a] = len(ren)
            out.append((lo, hi, ren[aL], ren[aU],
                        _wkey(arcw[aL]), _wkey(arcw[aU])))
        key = tuple(out)
        if best is None or key < best:
            best = key
    return (best, None if closed_word is None else _wkey(closed_word))


def _census(state, budget, direction):
    """Count completed disks: (positive, word) -> multiplicity."""
    events = state.events
    steps = [0]

    def bump():
        steps[0] += 1
        if steps[0] > budget:
            raise BudgetExceeded("disk search exceeded %d steps" % budget)

    mirrored = False
    if direction == "east":
        events = _mirror_events(events)
        mirrored = True
        levels = _coarse_levels(events, budget, bump)
    elif direction == "west":
        levels = _coarse_levels(events, budget, bump)
    else:
        trial = min(_TRIAL_CAP, budget)
        levels = _coarse_levels(events, trial, bump)
        if levels is None:
            mev = _mirror_events(events)
            levels = _coarse_levels(mev, trial, bump)
            if levels is not None:
                events = mev
                mirrored = True
        if levels is None:
            levels = _coarse_levels(events, budget, bump)
    if levels is None:
        raise BudgetExceeded("disk search exceeded %d steps" % budget)
    good = _backward_good(events, levels, bump)
    m = len(events)

    def next_id(sheets):
        return max([a for s in sheets for a in (s[2], s[3])],
                   default=-1) + 1

    start_key = (_full_canon((), {}, None), 0)
    level = {start_key: [1, (), {}, None, None, 0]}
    for k in range(m):
        ev = events[k]
        nxt = {}
        nxtgood = good[k + 1]
        for key, (mult, sheets, arcw, pos_arc, closed_word, chi) \
                in level.items():
            bump()
            children = set()
            for (sh, pa, cl, ops, dchi) in _branches(
                    ev, sheets, pos_arc, closed_word is not None,
                    next_id(sheets)):
                ck = (tuple(sorted((s[0], s[1]) for s in sh)),
                      pa is not None, cl)
                if ck not in nxtgood:
                    continue
                aw = dict(arcw)
                cw = closed_word
                for op in ops:
                    tag = op[0]
                    if tag == "app":
                        aw[op[1]] = aw[op[1]] + (op[2],)
                    elif tag == "pre":
                        aw[op[1]] = (op[2],) + aw[op[1]]
                    elif tag == "new":
                        aw[op[1]] = ()
                    elif tag == "newpos":
                        aw[op[1]] = (("+", op[2]),)
                    elif tag == "join":
                        aw[op[1]] = aw[op[2]] + aw[op[3]]
                    elif tag == "joinpos":
                        aw[op[1]] = aw[op[2]] + (("+", op[4]),) + aw[op[3]]
                    elif tag == "close":
                        cw = aw[op[1]]
                    elif tag == "closepos":
                        cw = aw[op[1]] + (("+", op[2]),)
                ckey = (_full_canon(sh, aw, cw), chi + dchi)
                if ckey in children:
                    continue  # same child twice is one geometric move
                children.add(ckey)
                slot = nxt.get(ckey)
                if slot is None:
                    nxt[ckey] = [mult, sh, aw, pa, cw, chi + dchi]
                else:
                    slot[0] += mult
        level = nxt

    census = {}
    for key, (mult, sheets, arcw, pos_arc, closed_word, chi) \
            in level.items():
        if closed_word is None or sheets or chi != 1:
            continue
        circle = closed_word
        idx = [i for i, x in enumerate(circle) if isinstance(x, tuple)]
        assert len(idx) == 1, circle
        i = idx[0]
        word = tuple(circle[i + 1:] + circle[:i])
        if mirrored:
            word = tuple(reversed(word))
        census[(circle[i][1], word)] = \
            census.get((circle[i][1], word), 0) + mult
    return census


def enumerate_disks(state, budget=10 ** 6, direction=None):
    """All disks of the word with one positive corner.

    Each disk appears once per rigid representative, so repeated
    boundary words carry their multiplicity as repeated entries.  The
    list is sorted by positive corner and word, both in chord order.
    Raises BudgetExceeded once the search has expanded more than
    `budget` states across both passes.  direction forces the sweep
    ("west" or "east"); leave it None to let the search pick.
    """
    census = _census(state, budget, direction)
    index = {info.name: i for i, info in enumerate(state.chords())}
    out = []
    for (name, word) in sorted(
            census, key=lambda k: (index[k[0]],
                                   len(k[1]),
                                   tuple(index[x] for x in k[1]))):
        for _ in range(census[(name, word)]):
            out.append(Disk(name, word))
    return out


def disks_by_positive(disks):
    table = {}
    for d in disks:
        table.setdefault(d.positive, []).append(d)
    return table
