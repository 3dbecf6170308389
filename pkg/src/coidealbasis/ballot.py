"""Ballot-strip tilings of skew path regions and their generating functions.

The region between two comparable paths is a 45-degree rotated skew diagram
of unit squares, one square per (column, height) pair.  A strip occupies one
square in each of a run of consecutive columns, moving up or down by one
height unit per column, never dipping below its starting height, and ending
l' levels above where it started.  A strip with a rising tail (l' >= 1) must
end in the last column.  A strip with l down-steps has type (l, l'); a unit
square is the type (0, 0) strip.

Two different stacking disciplines give two families of generating functions:

* Rule I ("loose" stacking): whenever a strip touches another from directly
  above, its full vertical shadow must lie inside the strip below; strips
  with odd rising tails occur an even number of times per type, and strips
  with positive even tails are forbidden.

* Rule II ("tight" stacking): a strip touched from above (vertically or
  diagonally) is touched by exactly one strip, and together they must cover
  every position above the lower strip, except past the last column; rising
  tails come in towers (odd tail below, tail+1 above).  Rule II additionally
  allows a projection sub-region hugging the lower path to be set aside and
  filled with specially weighted unit squares.

Weights, written via t = -q: Rule I gives t^-1 per even-tail strip and 1 per
odd-tail strip; Rule II gives -t^-1 per even-tail strip, 1 per odd-tail strip
and t^-1 per projection unit square.  The resulting sums match the parabolic
Kazhdan-Lusztig polynomials computed independently in hecke.py, which is how
the acceptance suite pins the geometry.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

from .laurent import LaurentPoly, ONE, ZERO
from .paths import (
    Shape,
    eta_inverse,
    heights,
    is_below,
    min_path,
    paths_between,
    zeta,
)

WT_EVEN_I = LaurentPoly.t_power(-1)  # t^-1 = -q^-1
WT_EVEN_II = -LaurentPoly.t_power(-1)  # -t^-1 = q^-1
WT_PUNIT = LaurentPoly.t_power(-1)


def skew_region(alpha, beta):
    """Squares above alpha and not above beta; alpha must lie below beta."""
    if not is_below(alpha, beta):
        raise ValueError("lower path must lie below upper path")
    ha, hb = heights(alpha), heights(beta)
    boxes = set()
    for x in range(1, len(alpha) + 1):
        y = ha[x - 1] + 1
        while y <= hb[x - 1]:
            boxes.add((x, y))
            y += 2
    return boxes


@dataclass(frozen=True)
class Strip:
    """A placed strip: its squares in column order."""

    boxes: tuple

    @property
    def start_y(self) -> int:
        return self.boxes[0][1]

    @property
    def end_y(self) -> int:
        return self.boxes[-1][1]

    @property
    def tail(self) -> int:
        """l' = height climbed from first to last square."""
        return self.end_y - self.start_y

    @property
    def down_steps(self) -> int:
        """l = number of descending steps."""
        return (len(self.boxes) - 1 - self.tail) // 2

    def weight(self, rule: str) -> LaurentPoly:
        if self.tail % 2 == 1:
            return ONE
        return WT_EVEN_I if rule == "I" else WT_EVEN_II


@dataclass(frozen=True)
class StripConfig:
    """One configuration: the strips plus any projection-domain unit squares."""

    strips: tuple
    p_units: frozenset = frozenset()

    def weight(self, rule: str) -> LaurentPoly:
        w = ONE
        for s in self.strips:
            w = w * s.weight(rule)
        for _ in self.p_units:
            w = w * WT_PUNIT
        return w

    def to_json(self) -> dict:
        return {
            "strips": [[list(b) for b in s.boxes] for s in self.strips],
            "p_units": sorted([list(b) for b in self.p_units]),
        }


_UPPER = ((0, 2), (-1, 1), (1, 1))


def _upper_positions(box):
    x, y = box
    return ((x, y + 2), (x - 1, y + 1), (x + 1, y + 1))


class _Search:
    """Column-by-column backtracking enumeration of strip tilings."""

    def __init__(self, region, last_col, rule):
        self.region = frozenset(region)
        self.N = last_col
        self.rule = rule
        self.by_col = {}
        for x, y in region:
            self.by_col.setdefault(x, []).append(y)
        for ys in self.by_col.values():
            ys.sort()
        self.results = []

    def run(self):
        if not self.region:
            return [()]
        cols = range(min(self.by_col), max(self.by_col) + 1)
        self._column(list(cols), 0, {}, {}, [])
        return self.results

    # state:
    #  open_: dict (x_last, y_last) -> sid for strips open at the previous column
    #  strips: dict sid -> dict(boxes=[...], start=y, shadow=owner, above=sid|None)
    #  assignment built incrementally inside strips' box lists; a separate
    #  box->sid map is threaded for neighbour lookups.

    def _column(self, cols, ci, open_, state, boxmap_items):
        if ci == len(cols):
            self._finish(open_, state, dict(boxmap_items))
            return
        x = cols[ci]
        ys = self.by_col.get(x, [])
        boxmap = dict(boxmap_items)
        self._assign(cols, ci, x, ys, 0, open_, {}, state, boxmap)

    def _assign(self, cols, ci, x, ys, yi, open_, used, state, boxmap):
        if yi == len(ys):
            self._after_column(cols, ci, x, open_, used, state, boxmap)
            return
        y = ys[yi]
        box = (x, y)
        # extend an open strip from column x-1
        for prev in ((x - 1, y - 1), (x - 1, y + 1)):
            sid = open_.get(prev)
            if sid is None or sid in used:
                continue
            st = state[sid]
            if y < st["start"]:
                continue  # would dip below the starting height
            if self.rule == "I" and not self._shadow_ok(st["shadow"], box, boxmap):
                continue
            st2 = dict(state)
            st2[sid] = {**st, "boxes": st["boxes"] + (box,)}
            bm2 = dict(boxmap)
            bm2[box] = sid
            self._assign(cols, ci, x, ys, yi + 1, open_, {**used, sid: box}, st2, bm2)
        # start a new strip here
        sid = len(state)
        shadow = None
        if self.rule == "I":
            below = (x, y - 2)
            # lower squares of the column are assigned first, so the owner of
            # the shadow square is already known when it lies in the region
            shadow = boxmap[below] if below in self.region else "FLOOR"
        st2 = dict(state)
        st2[sid] = {"boxes": (box,), "start": y, "shadow": shadow, "above": None}
        bm2 = dict(boxmap)
        bm2[box] = sid
        self._assign(cols, ci, x, ys, yi + 1, open_, {**used, sid: box}, st2, bm2)

    def _shadow_ok(self, owner, box, boxmap):
        below = (box[0], box[1] - 2)
        if owner == "FLOOR":
            return below not in self.region
        return below in self.region and boxmap.get(below) == owner

    def _after_column(self, cols, ci, x, open_, used, state, boxmap):
        # strips that were open and not extended close at column x-1
        closed = [sid for pos, sid in open_.items() if sid not in used]
        for sid in closed:
            if not self._close_ok(sid, state, boxmap, final_col=x - 1):
                return
        if self.rule == "II" and not self._contacts_ok(x, state, boxmap):
            return
        new_open = {}
        for sid, st in state.items():
            last = st["boxes"][-1]
            if last[0] == x:
                new_open[last] = sid
        self._column(cols, ci + 1, new_open, state, list(boxmap.items()))

    def _close_ok(self, sid, state, boxmap, final_col):
        st = state[sid]
        strip = Strip(st["boxes"])
        if strip.tail >= 1:
            if final_col != self.N:
                return False  # rising tails must end on the last column
            if self.rule == "I" and strip.tail % 2 == 0:
                return False
        if self.rule == "II" and st["above"] is not None:
            above = st["above"]
            for box in st["boxes"]:
                if not self._covered(box, sid, above, boxmap):
                    return False
        return True

    # -- Rule II contact bookkeeping ------------------------------------

    def _contacts_ok(self, x, state, boxmap):
        """Register above-relations created by column x; detect conflicts."""
        for (bx, by), sid in list(boxmap.items()):
            if bx != x:
                continue
            # vertical within the column
            lower = boxmap.get((x, by - 2))
            if lower is not None and lower != sid:
                if not self._set_above(lower, sid, state, boxmap, x):
                    return False
            # this box sits NE of (x-1, by-1)
            sw = boxmap.get((x - 1, by - 1))
            if sw is not None and sw != sid:
                if not self._set_above(sw, sid, state, boxmap, x):
                    return False
            # this box sits SE below (x-1, by+1)
            nw = boxmap.get((x - 1, by + 1))
            if nw is not None and nw != sid:
                if not self._set_above(sid, nw, state, boxmap, x):
                    return False
        # incremental packing check for boxes whose neighbourhood is decided
        for sid, st in state.items():
            if st["above"] is None:
                continue
            for box in st["boxes"]:
                if box[0] == x - 1:
                    if not self._covered(box, sid, st["above"], boxmap):
                        return False
        return True

    def _set_above(self, lower, upper, state, boxmap, col):
        st = state[lower]
        if st["above"] is None:
            state[lower] = {**st, "above": upper}
            # retro-check boxes whose whole neighbourhood is already assigned
            # (everything up to the column being processed)
            for box in st["boxes"]:
                if box[0] + 1 <= col:
                    if not self._covered(box, lower, upper, boxmap):
                        return False
            return True
        return st["above"] == upper

    def _covered(self, box, sid, above, boxmap):
        for p in _upper_positions(box):
            if p[0] > self.N:
                continue
            owner = boxmap.get(p)
            if owner is None or owner not in (sid, above):
                return False
        return True

    # -- final validation -------------------------------------------------

    def _finish(self, open_, state, boxmap):
        for pos, sid in open_.items():
            if not self._close_ok(sid, state, boxmap, final_col=pos[0]):
                return
        strips = {sid: Strip(st["boxes"]) for sid, st in state.items()}
        if self.rule == "I":
            if not self._final_rule1(strips, boxmap):
                return
        else:
            if not self._final_rule2(strips, state, boxmap):
                return
        self.results.append(tuple(strips[sid] for sid in sorted(strips)))

    def _final_rule1(self, strips, boxmap):
        counts = {}
        for sid, s in strips.items():
            if s.tail >= 1:
                if s.tail % 2 == 0 or s.boxes[-1][0] != self.N:
                    return False
                counts[(s.down_steps, s.tail)] = counts.get((s.down_steps, s.tail), 0) + 1
            # full-shadow rule, re-verified on the complete assignment
            shadow = [(x, y - 2) for x, y in s.boxes]
            owners = {boxmap.get(b) for b in shadow if b in self.region}
            if owners:
                if len(owners) != 1 or any(b not in self.region for b in shadow):
                    return False
        return all(c % 2 == 0 for c in counts.values())

    def _final_rule2(self, strips, state, boxmap):
        touchers = {sid: set() for sid in strips}
        for box, sid in boxmap.items():
            for p in _upper_positions(box):
                o = boxmap.get(p)
                if o is not None and o != sid:
                    touchers[sid].add(o)
        for sid, ts in touchers.items():
            if len(ts) > 1:
                return False
            if ts:
                above = next(iter(ts))
                for box in strips[sid].boxes:
                    if not self._covered(box, sid, above, boxmap):
                        return False
        for sid, s in strips.items():
            if s.tail < 1:
                continue
            if s.boxes[-1][0] != self.N:
                return False
            if s.tail % 2 == 1:
                ts = touchers[sid]
                if not ts:
                    return False
                a = strips[next(iter(ts))]
                if a.tail != s.tail + 1 or a.down_steps < s.down_steps:
                    return False
            else:
                found = False
                for sid2, below in strips.items():
                    if touchers[sid2] == {sid} and below.tail == s.tail - 1 and below.down_steps <= s.down_steps:
                        found = True
                        break
                if not found:
                    return False
        return True


def rule1_configs(alpha, beta):
    """All Rule I configurations on the region between alpha and beta."""
    region = skew_region(alpha, beta)
    tilings = _Search(region, len(alpha), "I").run()
    return [StripConfig(strips=t) for t in tilings]


def rule2_tilings(gamma, beta):
    """Rule II tilings of the region between gamma and beta, no projection
    domain.  There is at most one; the list is empty when the packing rules
    cannot be met."""
    region = skew_region(gamma, beta)
    tilings = _Search(region, len(gamma), "II").run()
    if len(tilings) > 1:
        raise AssertionError(
            f"rule II tiling is not unique for {gamma}/{beta}: {len(tilings)} found"
        )
    return tilings


def rule2_configs(alpha, beta, shape: Shape):
    """All Rule II configurations, one per viable projection-domain choice.

    The lower path must be an eta image for the shape; the projection domain
    for a choice gamma (between alpha and min(zeta(k), beta)) is the region
    between alpha and gamma, filled with unit squares."""
    k = eta_inverse(alpha, shape)
    if k is None:
        raise ValueError("lower path must be an eta image for the shape")
    top = min_path(zeta(k, shape), beta)
    configs = []
    for gamma in paths_between(alpha, top):
        p_boxes = skew_region(alpha, gamma)
        for strips in rule2_tilings(gamma, beta):
            configs.append(StripConfig(strips=strips, p_units=frozenset(p_boxes)))
    return configs


def enumerate_configs(alpha, beta, rule: str, eps: str, shape: Shape = None):
    """The full configuration set for either rule and either sign.

    For eps='+' the roles of the paths are exchanged (the order reverses), so
    the enumeration runs on (beta, alpha)."""
    if eps == "+":
        return enumerate_configs(beta, alpha, rule, "-", shape)
    if alpha == beta:
        return [StripConfig(strips=())]
    if rule == "I":
        return rule1_configs(alpha, beta)
    if rule == "II":
        if shape is None:
            raise ValueError("rule II requires the shape (projection domains)")
        return rule2_configs(alpha, beta, shape)
    raise ValueError(f"rule must be 'I' or 'II', got {rule!r}")


@lru_cache(maxsize=None)
def _q_polynomial_cached(alpha, beta, rule, eps, shape_m):
    shape = Shape(shape_m) if shape_m is not None else None
    configs = enumerate_configs(alpha, beta, rule, eps, shape)
    total = ZERO
    for c in configs:
        total = total + c.weight(rule)
    return total


def q_polynomial(alpha, beta, rule: str, eps: str, shape: Shape = None) -> LaurentPoly:
    """The generating function of configurations, in Z[q,q^-1] via t = -q.

    Defined when the paths coincide (value 1) or are comparable in the order
    attached to eps; incomparable paths raise ValueError."""
    alpha, beta = tuple(alpha), tuple(beta)
    if alpha != beta:
        lo, hi = (alpha, beta) if eps == "-" else (beta, alpha)
        if not is_below(lo, hi):
            raise ValueError("paths are not comparable in the requested order")
    shape_m = shape.m if (shape is not None and rule == "II") else None
    return _q_polynomial_cached(alpha, beta, rule, eps, shape_m)


def rule2_weight_sum(gamma, beta) -> LaurentPoly:
    """Weight of the unique Rule II tiling between two paths, or 0 if none.

    This is the quantity that matches the eps='-' parabolic Kazhdan-Lusztig
    polynomial evaluated at minus its argument."""
    if gamma == beta:
        return ONE
    if not is_below(gamma, beta):
        return ZERO
    total = ZERO
    for strips in rule2_tilings(gamma, beta):
        total = total + StripConfig(strips=strips).weight("II")
    return total


@dataclass
class InversionReport:
    shape: tuple
    pairs_checked: int
    failures: list

    @property
    def ok(self) -> bool:
        return not self.failures


def verify_inversion(shape: Shape, jobs: int = 1) -> InversionReport:
    """Check that Rule I and Rule II generating functions are inverse to each
    other over admissible intermediate paths, for every comparable pair of
    eta images of the shape."""
    from .paths import eta_images

    images = eta_images(shape)
    items = []
    for _, a, ha in images:
        for _, c, hc in images:
            if all(x <= y for x, y in zip(ha, hc)):
                items.append((a, c))

    failures = []
    if jobs > 1:
        from concurrent.futures import ProcessPoolExecutor

        with ProcessPoolExecutor(max_workers=jobs) as ex:
            for res in ex.map(
                _inversion_worker,
                [(a, c, shape.m) for a, c in items],
                chunksize=64,
            ):
                if res is not None:
                    failures.append(res)
    else:
        for pair in items:
            res = _inversion_worker((pair[0], pair[1], shape.m))
            if res is not None:
                failures.append(res)
    return InversionReport(shape=shape.m, pairs_checked=len(items), failures=failures)


def _inversion_worker(args):
    a, c, shape_m = args
    shape = Shape(shape_m)
    from .paths import eta_images, heights

    ha, hc = heights(a), heights(c)
    total = ZERO
    for _, b, hb in eta_images(shape):
        if all(x <= y <= z for x, y, z in zip(ha, hb, hc)):
            total = total + q_polynomial(a, b, "I", "-", shape) * q_polynomial(
                b, c, "II", "-", shape
            )
    expected = ONE if a == c else ZERO
    return None if total == expected else (a, c, total)


def render_config(config: StripConfig, n_cols: int) -> str:
    """ASCII picture: one character per square, strips labelled a, b, c, ...
    and projection unit squares shown as '#'."""
    cells = {}
    for i, s in enumerate(config.strips):
        label = chr(ord("a") + (i % 26))
        for b in s.boxes:
            cells[b] = label
    for b in config.p_units:
        cells[b] = "#"
    if not cells:
        return "(empty)"
    ys = [y for _, y in cells]
    lines = []
    for y in range(max(ys), min(ys) - 1, -1):
        row = []
        for x in range(1, n_cols + 1):
            row.append(cells.get((x, y), "."))
        lines.append(" ".join(row))
    return "\n".join(lines)
