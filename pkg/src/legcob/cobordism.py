"""Cobordisms between Legendrian ends, stored as scripts of moves.

A script records a bottom end plus moves read bottom to top:

  isotopy   commute two adjacent grid columns or rows; legal only while
            the state still has a grid behind it
  saddle    insert one crossing into the event word; the crossing must
            be co-directed and certified contractible in the word that
            contains it
  cap       insert a whole split component that passes the max-tb
            unknot certificate

Scripts are produced by the inverse operations (delete a crossing,
delete a component) and replayed upward, so a stored script is evidence
that gets rechecked, never trusted.  The moves are the handles of the
surface: caps are its local minima, saddles its index-one critical
points, and the two-step chain complex they span computes the homology
of the cobordism relative to its bottom end.
"""

from collections import Counter

from .augment import augmentations, lch_dims, lch_euler
from .dga import build_dga
from .errors import InputError, MoveError
from .grid import GridDiagram, parse_grid, torus_knot_grid, unknot_grid
from .lp import contractible
from .resolve import (Birth, Cross, WordState, event_from_json, frac_str,
                      parse_frac, resolve, word_from_json)

EMPTY = WordState(())


class Move:
    __slots__ = ("kind", "data")

    def __init__(self, kind, data):
        if kind not in ("isotopy", "saddle", "cap"):
            raise InputError("unknown move kind %r" % kind)
        self.kind = kind
        self.data = data

    def __repr__(self):
        return "Move(%s)" % self.kind


def as_word(state):
    if isinstance(state, WordState):
        return state
    if isinstance(state, GridDiagram):
        return resolve(state)
    raise InputError("state is neither a grid nor a word")


# -- the unknot certificate -----------------------------------------------------


_STANDARD_SIGNATURES = (
    (("b", 0, (1, -1)), ("x", 0), ("c", 0)),
    (("b", 0, (-1, 1)), ("x", 0), ("c", 0)),
)


def unknot_certificate(word, budget=10 ** 6):
    """Decide whether a standalone word is a max-tb unknot.

    Structural escape hatch first: the three-event word is the unknot
    by inspection.  Otherwise the component must look right on every
    invariant this package computes: tb -1, integer grading, exactly
    one augmentation whose linearized homology is one class in degree
    one.  That profile is a certificate, not a complete unknot
    detector; a counterfeit passing all of it would be news.
    """
    if word.component_count() != 1:
        return False, "not a single component"
    if word.tb() != -1:
        return False, "tb is %d" % word.tb()
    grading = word.grading()
    if not grading.available or grading.modulus != 0:
        return False, "grading drifts around the component"
    if word.signature() in _STANDARD_SIGNATURES:
        return True, "standard word"
    dga = build_dga(word, budget)
    augs = augmentations(dga)
    if len(augs) != 1:
        return False, "%d augmentations" % len(augs)
    dims = lch_dims(dga, augs[0])
    if dims != {1: 1}:
        return False, "linearized homology %r" % (dims,)
    return True, "algebraic profile"


# -- single moves, downward generation ------------------------------------------


def saddle_down(word, chord, budget=10 ** 6):
    """Delete one crossing; returns the smaller word and the move record."""
    info = word.chord(chord)
    if info.sign != 1:
        raise MoveError("saddle at %s needs co-directed strands" % chord)
    if not contractible(word, chord, budget=budget):
        raise MoveError("chord %s is not contractible" % chord)
    ev = word.events[info.index]
    below_events = word.events[:info.index] + word.events[info.index + 1:]
    heights = {n: h for n, h in word.heights.items() if n != chord}
    below = WordState(below_events, heights)
    data = {
        "index": info.index,
        "pos": ev.pos,
        "chord": chord,
        "uid": ev.uid,
        "sign": 1,
        "height": frac_str(word.heights[chord]),
    }
    return below, Move("saddle", data)


def cap_down(word, root=None, budget=10 ** 6):
    """Delete one split component; it must pass the unknot certificate."""
    roots = word.sim.component_roots()
    if root is None:
        if len(roots) != 1:
            raise MoveError("cap needs an explicit component on a link")
        root = roots[0]
    try:
        kept, piece, removed_idx = word.split_component(root)
    except InputError as err:
        raise MoveError("cap cannot split the component off: %s" % err)
    ok, why = unknot_certificate(piece, budget)
    if not ok:
        raise MoveError("component fails the unknot certificate: " + why)
    events_json = [_event_json(word.events[k]) for k in removed_idx]
    data = {
        "indices": list(removed_idx),
        "events": events_json,
        "heights": {n: frac_str(h) for n, h in piece.heights.items()},
    }
    return kept, Move("cap", data)


def _event_json(ev):
    if isinstance(ev, Birth):
        return {"kind": "birth", "uid": ev.uid, "pos": ev.pos,
                "dirs": list(ev.dirs)}
    if isinstance(ev, Cross):
        return {"kind": "cross", "uid": ev.uid, "pos": ev.pos, "name": ev.name}
    return {"kind": "cap", "uid": ev.uid, "pos": ev.pos}


# -- single moves, upward replay -------------------------------------------------


def apply_isotopy_up(state, data):
    if not isinstance(state, GridDiagram):
        raise MoveError("isotopy move needs a grid-backed state")
    if not state.is_knot():
        raise MoveError("isotopy moves are limited to knots")
    move, i = data.get("move"), data.get("i")
    if not isinstance(i, int):
        raise MoveError("isotopy move needs an integer index")
    if move == "col_commute":
        if not state.can_commute_columns(i):
            raise MoveError("columns %d and %d do not commute" % (i, i + 1))
        return state.commute_columns(i)
    if move == "row_commute":
        if not state.can_commute_rows(i):
            raise MoveError("rows %d and %d do not commute" % (i, i + 1))
        return state.commute_rows(i)
    raise MoveError("unknown isotopy move %r" % move)


def apply_saddle_up(state, data, budget=10 ** 6):
    below = as_word(state)
    try:
        index = int(data["index"])
        chord = data["chord"]
        ev = Cross(int(data["uid"]), int(data["pos"]), chord)
        height = parse_frac(data["height"])
    except (KeyError, TypeError, ValueError):
        raise MoveError("malformed saddle move")
    if not 0 <= index <= len(below.events):
        raise MoveError("saddle index %d out of range" % index)
    if any(e.uid == ev.uid for e in below.events):
        raise MoveError("saddle reuses event uid %d" % ev.uid)
    events = below.events[:index] + (ev,) + below.events[index:]
    heights = dict(below.heights)
    if chord in heights:
        raise MoveError("saddle reuses chord name %r" % chord)
    heights[chord] = height
    above = WordState(events, heights)
    info = above.chord(chord)
    if info.sign != 1:
        raise MoveError("saddle at %s needs co-directed strands" % chord)
    if not contractible(above, chord, budget=budget):
        raise MoveError("chord %s is not contractible" % chord)
    return above


def apply_cap_up(state, data, budget=10 ** 6):
    below = as_word(state)
    try:
        indices = [int(i) for i in data["indices"]]
        events = [event_from_json(e) for e in data["events"]]
        heights = {n: parse_frac(h) for n, h in data["heights"].items()}
    except (KeyError, TypeError, ValueError):
        raise MoveError("malformed cap move")
    if len(indices) != len(events) or not events:
        raise MoveError("cap move indices and events disagree")
    if indices != sorted(indices) or len(set(indices)) != len(indices):
        raise MoveError("cap insertion indices must strictly increase")
    old_uids = {e.uid for e in below.events}
    new_uids = {e.uid for e in events}
    if len(new_uids) != len(events) or old_uids & new_uids:
        raise MoveError("cap reuses event uids")
    merged = list(below.events)
    for idx, ev in zip(indices, events):
        if idx > len(merged):
            raise MoveError("cap insertion index %d out of range" % idx)
        merged.insert(idx, ev)
    all_heights = dict(below.heights)
    for n, h in heights.items():
        if n in all_heights:
            raise MoveError("cap reuses chord name %r" % n)
        all_heights[n] = h
    above = WordState(merged, all_heights)
    birth_uids = [e.uid for e in events if isinstance(e, Birth)]
    if not birth_uids:
        raise MoveError("cap inserts no strands")
    root = above.sim.component((birth_uids[0], 0))
    lines = above.sim.component_lines(root)
    expected = sorted((u, s) for u in birth_uids for s in (0, 1))
    if lines != expected:
        raise MoveError("inserted events do not form their own component")
    try:
        kept, piece, removed_idx = above.split_component(root)
    except InputError:
        raise MoveError("inserted component tangles with existing events")
    if removed_idx != indices or kept.events != below.events:
        raise MoveError("inserted component tangles with existing events")
    ok, why = unknot_certificate(piece, budget)
    if not ok:
        raise MoveError("capped component fails the certificate: " + why)
    return above


def apply_move_up(state, move, budget=10 ** 6):
    if move.kind == "isotopy":
        return apply_isotopy_up(state, move.data)
    if move.kind == "saddle":
        return apply_saddle_up(state, move.data, budget)
    return apply_cap_up(state, move.data, budget)


# -- scripts ----------------------------------------------------------------------


class Script:
    """A bottom end plus moves bottom to top."""

    def __init__(self, bottom, moves):
        if not isinstance(bottom, (GridDiagram, WordState)):
            raise InputError("script bottom must be a grid, word, or empty")
        self.bottom = bottom
        self.moves = list(moves)

    def states(self, budget=10 ** 6):
        """Replay upward, validating every move; returns all levels."""
        out = [self.bottom]
        for mv in self.moves:
            out.append(apply_move_up(out[-1], mv, budget))
        return out

    def serialize(self):
        if isinstance(self.bottom, GridDiagram):
            bottom = self.bottom.to_jsonable()
        elif self.bottom.events:
            bottom = {"word": self.bottom.serialize()}
        else:
            bottom = "empty"
        return {"bottom": bottom,
                "moves": [{"kind": m.kind, "data": m.data} for m in self.moves]}


def parse_script(data):
    if not isinstance(data, dict) or "moves" not in data:
        raise InputError("script record needs bottom and moves")
    bottom = data.get("bottom", "empty")
    if bottom == "empty":
        state = EMPTY
    elif isinstance(bottom, dict) and "word" in bottom:
        state = word_from_json(bottom["word"])
    elif isinstance(bottom, dict):
        state = parse_grid(bottom)
    else:
        raise InputError("unreadable script bottom")
    moves = []
    for m in data["moves"]:
        if not isinstance(m, dict) or "kind" not in m or "data" not in m:
            raise InputError("each move needs kind and data")
        moves.append(Move(m["kind"], m["data"]))
    return Script(state, moves)


# -- stock scripts ------------------------------------------------------------------


def make_cylinder(grid, moves):
    """Isotopy-only script: moves is a list of ("col"|"row", index)."""
    out = []
    cur = grid
    for kind, i in moves:
        if kind == "col":
            data = {"move": "col_commute", "i": i}
        elif kind == "row":
            data = {"move": "row_commute", "i": i}
        else:
            raise InputError("cylinder moves are ('col'|'row', index)")
        cur = apply_isotopy_up(cur, data)
        out.append(Move("isotopy", data))
    return Script(grid, out)


def make_unknot_disk_script():
    """The disk: empty bottom, one cap giving the standard unknot."""
    word = resolve(unknot_grid())
    below, mv = cap_down(word)
    if below.events:
        raise AssertionError("capping the unknot left events behind")
    return Script(below, [mv])


def make_trefoil_filling_script(budget=10 ** 6):
    """Genus-one exact filling of the trefoil: cap, then two saddles."""
    word = resolve(torus_knot_grid(1))
    w2, m3 = saddle_down(word, "c3", budget)
    w1, m2 = saddle_down(w2, "c2", budget)
    w0, mcap = cap_down(w1, budget=budget)
    if w0.events:
        raise AssertionError("trefoil filling bottom is not empty")
    return Script(w0, [mcap, m2, m3])


def make_torus_saddle_script(j, k, budget=10 ** 6):
    """Saddle cobordism between (2,2j+1) and (2,2k+1) torus knots, j < k.

    Generated downward from the bigger plat: contracting the last two
    braid crossings turns one plat word into the literal event word of
    the previous torus knot, which is asserted against a fresh
    resolution.
    """
    if not (isinstance(j, int) and isinstance(k, int) and 1 <= j < k):
        raise InputError("torus script needs integers 1 <= j < k")
    word = resolve(torus_knot_grid(k))
    down = []
    for t in range(k, j, -1):
        word, mv = saddle_down(word, "c%d" % (2 * t + 1), budget)
        down.append(mv)
        word, mv = saddle_down(word, "c%d" % (2 * t), budget)
        down.append(mv)
    if word.signature() != resolve(torus_knot_grid(j)).signature():
        raise AssertionError("saddle sequence missed the smaller torus word")
    return Script(word, down[::-1])


# -- homology of the cobordism -------------------------------------------------------


def _gf2_rank(masks):
    pivots = {}
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


def handle_homology(script, states=None, budget=10 ** 6):
    """Mod-2 homology of the surface relative to its bottom end.

    Caps span degree zero, saddles degree one, nothing in degree two.
    The boundary of a saddle reads off where its two feet end up: each
    foot's component is traced down move by move until it dies at a cap
    (that cap's generator) or survives to the bottom (zero).  Tracing
    down a saddle keeps the component of the smallest strand, one of
    the gradient flow choices; any choice gives the same homology.
    """
    if states is None:
        states = script.states(budget)
    words = {}

    def word_at(i):
        if i not in words:
            words[i] = as_word(states[i])
        return words[i]

    cap_index = {}
    saddles = []
    for i, mv in enumerate(script.moves):
        if mv.kind == "cap":
            cap_index[i] = len(cap_index)
        elif mv.kind == "saddle":
            saddles.append(i)

    def fate(level, line):
        while level > 0:
            mv = script.moves[level - 1]
            if mv.kind == "isotopy":
                return None  # grids below are all one knot; nothing caps it
            if mv.kind == "saddle":
                cur = word_at(level)
                comp = cur.sim.component_lines(cur.sim.component(line))
                line = min(comp)
            else:
                birth_uids = {e["uid"] for e in mv.data["events"]
                              if e["kind"] == "birth"}
                if line[0] in birth_uids:
                    return cap_index[level - 1]
            level -= 1
        return None

    rows = []
    for i in saddles:
        mv = script.moves[i]
        below = word_at(i)
        stack = below.active_at(mv.data["index"])
        feet = (stack[mv.data["pos"]], stack[mv.data["pos"] + 1])
        mask = 0
        for foot in feet:
            f = fate(i, foot)
            if f is not None:
                mask ^= 1 << f
        rows.append(mask)

    rank = _gf2_rank(rows)
    h0 = len(cap_index) - rank
    h1 = len(saddles) - rank
    return (h0, h1, 0)


# -- end-to-end checks -----------------------------------------------------------------


def les_euler_check(bottom, top, handle_dims, budget=10 ** 6):
    """Euler-characteristic consequence of the cobordism exact sequence.

    For every pair of augmentations on the two ends, the alternating
    sums of linearized homology must differ by the alternating sum of
    the handle homology.  Needs both ends to be nonempty
    integer-graded knots carrying augmentations.
    """
    bw, tw = as_word(bottom), as_word(top)
    if not bw.events or not tw.events:
        return {"status": "not applicable",
                "reason": "needs two nonempty ends"}
    for w, side in ((bw, "bottom"), (tw, "top")):
        if not w.is_knot():
            return {"status": "hypothesis unverifiable",
                    "reason": "%s end is a link" % side}
        grading = w.grading()
        if not grading.available or grading.modulus != 0:
            return {"status": "hypothesis unverifiable",
                    "reason": "%s end is not integer graded" % side}
    bottom_dga, top_dga = build_dga(bw, budget), build_dga(tw, budget)
    bottom_augs = augmentations(bottom_dga)
    top_augs = augmentations(top_dga)
    if not bottom_augs or not top_augs:
        return {"status": "insufficient data",
                "reason": "an end carries no augmentations"}
    h0, h1, h2 = handle_dims
    handle_euler = h0 - h1 + h2
    chi_bottom = [lch_euler(lch_dims(bottom_dga, e)) for e in bottom_augs]
    chi_top = [lch_euler(lch_dims(top_dga, e)) for e in top_augs]
    # a pair satisfies the sequence when chi_top - chi_bottom + handle == 0,
    # so only the multiset of values on each side matters
    count_top = Counter(chi_top)
    satisfied = sum(count_top.get(x - handle_euler, 0) for x in chi_bottom)
    total = len(chi_bottom) * len(chi_top)
    return {
        "status": "checked",
        "handle_euler": handle_euler,
        "euler_bottom": chi_bottom,
        "euler_top": chi_top,
        "pairs": {"total": total, "satisfied": satisfied},
        "any_satisfied": satisfied > 0,
        "all_satisfied": satisfied == total,
    }


def filling_dim_check(top, handle_dims, sigma=0, budget=10 ** 6):
    """Dimension match for fillings: some augmentation's linearized
    homology must equal the surface homology after the degree flip
    i -> 1 - i + sigma.  Over Z/2 cohomology and homology dimensions
    agree, so the cohomological statement is checked on homology.
    """
    tw = as_word(top)
    if not tw.events:
        return {"status": "not applicable", "reason": "empty top end"}
    if not tw.is_knot():
        return {"status": "hypothesis unverifiable",
                "reason": "top end is a link"}
    grading = tw.grading()
    if not grading.available or grading.modulus != 0:
        return {"status": "hypothesis unverifiable",
                "reason": "top end is not integer graded"}
    dga = build_dga(tw, budget)
    augs = augmentations(dga)
    if not augs:
        return {"status": "insufficient data", "reason": "no augmentations"}
    surface = {m: handle_dims[m] for m in range(3) if handle_dims[m]}
    matches = []
    for idx, eps in enumerate(augs):
        dims = lch_dims(dga, eps)
        degrees = set(dims) | {1 - m + sigma for m in surface}
        if all(dims.get(i, 0) == surface.get(1 - i + sigma, 0)
               for i in degrees):
            matches.append(idx)
    return {"status": "checked", "sigma": sigma, "matches": matches,
            "match_found": bool(matches)}


def _end_summary(state):
    word = as_word(state)
    if not word.events:
        return {"kind": "empty"}
    out = {
        "kind": "grid" if isinstance(state, GridDiagram) else "word",
        "components": word.component_count(),
        "chords": len(word.chords()),
        "tb": word.tb(),
    }
    if isinstance(state, GridDiagram):
        out["g"] = state.g
    return out


def _chord_count_check(state):
    word = as_word(state)
    if not word.events:
        return {"status": "not applicable"}
    grading = word.grading()
    if not grading.available:
        return {"status": "hypothesis unverifiable",
                "reason": grading.reason}
    signed = sum(1 if d % 2 == 0 else -1 for d in grading.degrees.values())
    return {"status": "checked", "signed_sum": signed, "tb": word.tb(),
            "holds": signed == word.tb()}


def cobordism_report(script, budget=10 ** 6, sigma=0):
    """Replay a script and run every identity this package knows about."""
    states = script.states(budget)
    bottom, top = states[0], states[-1]
    counts = {"isotopy": 0, "saddle": 0, "cap": 0}
    for mv in script.moves:
        counts[mv.kind] += 1
    chi = counts["cap"] - counts["saddle"]
    bw, tw = as_word(bottom), as_word(top)
    tb_bottom = bw.tb() if bw.events else 0
    tb_top = tw.tb() if tw.events else 0
    delta = tb_top - tb_bottom
    handle = handle_homology(script, states, budget)
    les = les_euler_check(bottom, top, handle, budget)
    if bw.events:
        filling = {"status": "not applicable", "reason": "bottom end nonempty"}
    else:
        filling = filling_dim_check(top, handle, sigma, budget)
    chord_counts = {"bottom": _chord_count_check(bottom),
                    "top": _chord_count_check(top)}
    ok = delta == -chi
    for side in ("bottom", "top"):
        if chord_counts[side]["status"] == "checked":
            ok = ok and chord_counts[side]["holds"]
    if les["status"] == "checked":
        ok = ok and les["any_satisfied"]
    if filling["status"] == "checked":
        ok = ok and filling["match_found"]
    return {
        "ok": ok,
        "bottom": _end_summary(bottom),
        "top": _end_summary(top),
        "moves": [mv.kind for mv in script.moves],
        "counts": counts,
        "euler_characteristic": chi,
        "tb": {"bottom": bw.tb() if bw.events else None,
               "top": tw.tb() if tw.events else None},
        "tb_euler_identity": {"delta_tb": delta, "minus_chi": -chi,
                              "holds": delta == -chi},
        "chord_count": chord_counts,
        "handle_homology": list(handle),
        "les_euler": les,
        "filling_dims": filling,
        "sigma": sigma,
        "budget": budget,
    }
