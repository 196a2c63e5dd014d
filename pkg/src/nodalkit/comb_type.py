"""Combinatorial types of nodal sets at a singular point.

An *interior type* records how the 2p rays of a p-bouquet of loops at an
interior singular point pair up: a fixed-point-free involution tau on
{0..2p-1} with odd differences and no crossings.  The complement of the
bouquet on the sphere has p+1 domains; the *domain labeling* delta assigns to
each of the 2p circular intervals between consecutive rays the label of the
domain it lies in.  labeling_from_type / type_from_labeling convert back and
forth (each map determines the other).

A *boundary type* is the analogue at a boundary singular point of index
2k-3: rays 1..2k-3 on a half-circle, one of them (the odd position `a`) is an
arc going off to the boundary, the remaining rays pair up within the two
blocks K+ = {1..a-1} and K- = {a+1..2k-3}.  From a boundary type we build the
interval words m_theta, m^(0), m^(pi) whose first-repeat positions drive the
rotating-function argument.

Indexing: canonical form is 0-based for interior types (rays and intervals
0..2p-1) and 1-based for boundary rays (matching the half-circle picture);
parsers accept an explicit base flag.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

from .errors import CapExceeded, InconsistentLabeling, InvalidType, NoRepeat

ENUM_CAP = 10

ARROW_TOKENS = ("v", "↓", "down", "|")  # accepted spellings of the boundary arrow


# ---------------------------------------------------------------------------
# interior types
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class InteriorType:
    """Fixed-point-free non-crossing involution on {0..2p-1} with odd differences."""
    p: int
    tau: tuple  # tau[j] = image of ray j, length 2p

    def pairs(self):
        """Loops as (i, tau(i)) with i < tau(i), sorted."""
        return tuple(sorted((i, self.tau[i]) for i in range(2 * self.p)
                            if i < self.tau[i]))

    def to_json(self) -> dict:
        return {"p": self.p, "tau": list(self.tau)}

    @staticmethod
    def from_json(obj: dict) -> "InteriorType":
        return InteriorType(int(obj["p"]), tuple(int(x) for x in obj["tau"]))

    @staticmethod
    def from_pairs(pairs) -> "InteriorType":
        pairs = list(pairs)
        n = 2 * len(pairs)
        tau = [None] * n
        for i, j in pairs:
            tau[i] = j
            tau[j] = i
        if any(t is None for t in tau):
            raise InvalidType("pairs do not cover 0..%d" % (n - 1))
        return InteriorType(len(pairs), tuple(tau))


def validate_interior(t: InteriorType):
    """Return a list of violated-invariant descriptions (empty = valid)."""
    n = 2 * t.p
    problems = []
    if t.p < 1:
        problems.append("p must be >= 1")
        return problems
    if len(t.tau) != n:
        problems.append("tau must have length 2p = %d" % n)
        return problems
    if sorted(t.tau) != list(range(n)):
        problems.append("tau is not a permutation of 0..%d" % (n - 1))
        return problems
    for j in range(n):
        if t.tau[j] == j:
            problems.append("fixed point at %d" % j)
        elif t.tau[t.tau[j]] != j:
            problems.append("not an involution at %d" % j)
    for j in range(n):
        if t.tau[j] != j and (t.tau[j] - j) % 2 == 0:
            problems.append("even difference on pair (%d,%d)" % (j, t.tau[j]))
            break
    pairs = [(i, t.tau[i]) for i in range(n) if i < t.tau[i]]
    for a, b in pairs:
        for c, d in pairs:
            if a < c < b < d:
                problems.append("crossing pairs (%d,%d) and (%d,%d)" % (a, b, c, d))
    return problems


def _require_valid_interior(t: InteriorType):
    problems = validate_interior(t)
    if problems:
        raise InvalidType("; ".join(problems))


def _noncrossing_matchings(points):
    """All non-crossing perfect matchings of the (sorted) point list.

    Classic Catalan recursion: the first point matches a point leaving even
    blocks on both sides.
    """
    if not points:
        yield ()
        return
    first = points[0]
    for idx in range(1, len(points), 2):
        inner = points[1:idx]
        outer = points[idx + 1:]
        for m_in in _noncrossing_matchings(inner):
            for m_out in _noncrossing_matchings(outer):
                yield ((first, points[idx]),) + m_in + m_out


def enumerate_interior(p: int, cap: int = ENUM_CAP):
    """All valid InteriorTypes for p loops, lexicographically sorted by tau."""
    if p < 1:
        raise InvalidType("p must be >= 1")
    if p > cap:
        raise CapExceeded("p=%d exceeds cap %d" % (p, cap))
    out = [InteriorType.from_pairs(m)
           for m in _noncrossing_matchings(list(range(2 * p)))]
    out.sort(key=lambda t: t.tau)
    return out


@lru_cache(maxsize=None)
def catalan(n: int) -> int:
    c = 1
    for i in range(n):
        c = c * 2 * (2 * i + 1) // (i + 2)
    return c


# ---------------------------------------------------------------------------
# domain labelings (interior case)
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class DomainLabeling:
    """delta: interval index 0..2p-1 -> domain label 1..p+1."""
    delta: tuple

    @property
    def p(self) -> int:
        return len(self.delta) // 2

    def to_json(self) -> dict:
        return {"delta": list(self.delta)}


def validate_labeling(d: DomainLabeling):
    problems = []
    n = len(d.delta)
    if n == 0 or n % 2:
        problems.append("delta length must be a positive even number")
        return problems
    p = n // 2
    labels = sorted(set(d.delta))
    if labels != list(range(1, p + 2)):
        problems.append("label set must be exactly 1..p+1")
    for j in range(n):
        if d.delta[j] == d.delta[(j + 1) % n]:
            problems.append("equal labels on adjacent intervals %d,%d" % (j, (j + 1) % n))
    return problems


def labeling_from_type(t: InteriorType) -> DomainLabeling:
    """Sweep the intervals counter-clockwise; each interval gets the label of
    its domain = the innermost loop enclosing it (or the outer domain); new
    labels are assigned in first-encounter order starting at 1."""
    _require_valid_interior(t)
    n = 2 * t.p
    pairs = t.pairs()  # loop (a,b) encloses intervals a..b-1

    def innermost(j):
        best = None
        for a, b in pairs:
            if a <= j < b and (best is None or b - a < best[1] - best[0]):
                best = (a, b)
        return best  # None = outer domain

    labels = {}
    delta = []
    for j in range(n):
        key = innermost(j)
        if key not in labels:
            labels[key] = len(labels) + 1
        delta.append(labels[key])
    return DomainLabeling(tuple(delta))


def type_from_labeling(d: DomainLabeling) -> InteriorType:
    """Invert labeling_from_type via the occurrence-scanning argument.

    Within a region whose surrounding domain has label L, the maximal runs of
    intervals not labeled L are exactly the sub-bouquets hanging off single
    loops; each run [a..b] yields the loop (a, b+1) and recurses.  The outer
    domain is the label of the last interval (which no loop can enclose).
    """
    problems = validate_labeling(d)
    if problems:
        raise InconsistentLabeling("; ".join(problems))
    delta = d.delta
    n = len(delta)
    pairs = []

    def parse(lo, hi, outer):
        j = lo
        while j <= hi:
            if delta[j] == outer:
                j += 1
                continue
            # maximal run without the outer label
            b = j
            while b + 1 <= hi and delta[b + 1] != outer:
                b += 1
            pairs.append((j, b + 1))
            parse(j, b, delta[j])
            j = b + 1

    parse(0, n - 1, delta[n - 1])
    if len(pairs) != n // 2:
        raise InconsistentLabeling("reconstruction produced %d loops, expected %d"
                                   % (len(pairs), n // 2))
    t = InteriorType.from_pairs(pairs)
    if validate_interior(t):
        raise InconsistentLabeling("reconstructed involution is invalid")
    if labeling_from_type(t).delta != delta:
        raise InconsistentLabeling("labeling is not realizable by any valid involution")
    return t


# ---------------------------------------------------------------------------
# rotation / shift invariance
# ---------------------------------------------------------------------------

def rotate_type(t: InteriorType, shift: int) -> InteriorType:
    """Conjugate tau by the cyclic shift j -> j+shift (mod 2p)."""
    _require_valid_interior(t)
    n = 2 * t.p
    s = shift % n
    tau = [0] * n
    for j in range(n):
        tau[(j + s) % n] = (t.tau[j] + s) % n
    return InteriorType(t.p, tuple(tau))


def shift_invariant_types(p: int, cap: int = ENUM_CAP):
    """Types fixed by the elementary rotation.  The rotating-function argument
    on the sphere predicts the empty list for p >= 2."""
    return [t for t in enumerate_interior(p, cap) if rotate_type(t, 1) == t]


# ---------------------------------------------------------------------------
# boundary types
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class BoundaryType:
    """Involution on {arrow} + {1..2k-3}; position 0 stands for the arrow.

    tau[0] = a pairs the arrow with the boundary-bound arc at the odd ray a;
    the remaining rays pair up inside the blocks {1..a-1} and {a+1..2k-3},
    each block non-crossing and fixed-point-free.
    """
    k: int
    tau: tuple  # length 2k-2, index 0 = arrow

    @property
    def a(self) -> int:
        return self.tau[0]

    @property
    def a_plus(self) -> int:
        """(a-1)/2: number of loops on the + side."""
        return (self.a - 1) // 2

    def block_pairs(self, side: str):
        """Loop pairs within K+ ('plus': rays 1..a-1) or K- ('minus')."""
        lo, hi = (1, self.a - 1) if side == "plus" else (self.a + 1, 2 * self.k - 3)
        return tuple(sorted((i, self.tau[i]) for i in range(lo, hi + 1)
                            if i < self.tau[i]))

    def to_json(self) -> dict:
        return {"k": self.k, "tau": list(self.tau)}

    @staticmethod
    def from_json(obj: dict) -> "BoundaryType":
        return BoundaryType(int(obj["k"]), tuple(int(x) for x in obj["tau"]))


def validate_boundary(t: BoundaryType):
    problems = []
    if t.k < 3:
        problems.append("k must be >= 3")
        return problems
    n = 2 * t.k - 2  # arrow + 2k-3 rays
    if len(t.tau) != n:
        problems.append("tau must have length 2k-2 = %d" % n)
        return problems
    if sorted(t.tau) != list(range(n)):
        problems.append("tau is not a permutation")
        return problems
    a = t.tau[0]
    if a % 2 == 0:
        problems.append("arc position a=%d must be odd" % a)
    if t.tau[a] != 0:
        problems.append("tau must pair the arrow with ray a")
    for lo, hi, name in ((1, a - 1, "K+"), (a + 1, n - 1, "K-")):
        block = range(lo, hi + 1)
        for j in block:
            if not (lo <= t.tau[j] <= hi):
                problems.append("%s not invariant at ray %d" % (name, j))
            elif t.tau[j] == j:
                problems.append("fixed point at ray %d" % j)
            elif t.tau[t.tau[j]] != j:
                problems.append("not an involution at ray %d" % j)
        pairs = [(i, t.tau[i]) for i in block if lo <= t.tau[i] <= hi and i < t.tau[i]]
        for x, y in pairs:
            for u, v in pairs:
                if x < u < y < v:
                    problems.append("crossing in %s: (%d,%d),(%d,%d)" % (name, x, y, u, v))
    return problems


def _require_valid_boundary(t: BoundaryType):
    problems = validate_boundary(t)
    if problems:
        raise InvalidType("; ".join(problems))


def enumerate_boundary(k: int, cap: int = ENUM_CAP):
    """All valid BoundaryTypes for index 2k-3; count is
    sum over odd a of Catalan((a-1)/2) * Catalan((2k-3-a+... )/2)."""
    if k < 3:
        raise InvalidType("k must be >= 3")
    if k > cap:
        raise CapExceeded("k=%d exceeds cap %d" % (k, cap))
    n = 2 * k - 2
    out = []
    for a in range(1, n, 2):
        for m_plus in _noncrossing_matchings(list(range(1, a))):
            for m_minus in _noncrossing_matchings(list(range(a + 1, n))):
                tau = [0] * n
                tau[0] = a
                tau[a] = 0
                for i, j in m_plus + m_minus:
                    tau[i] = j
                    tau[j] = i
                out.append(BoundaryType(k, tuple(tau)))
    out.sort(key=lambda t: t.tau)
    return out


# ---------------------------------------------------------------------------
# words
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Word:
    letters: tuple

    def __str__(self):
        return "".join(str(c) for c in self.letters)

    def __len__(self):
        return len(self.letters)


def validate_word(w: Word):
    problems = []
    for i in range(len(w.letters) - 1):
        if w.letters[i] == w.letters[i + 1]:
            problems.append("equal adjacent letters at %d" % i)
    return problems


def _block_labels(pairs, intervals, offset):
    """Label intervals of one half-circle block in first-encounter order.

    `pairs` are the block's loops; loop (u,v) encloses intervals u+1..v.
    Labels start at offset+1.
    """
    def innermost(j):
        best = None
        for u, v in pairs:
            if u < j <= v and (best is None or v - u < best[1] - best[0]):
                best = (u, v)
        return best

    labels = {}
    out = []
    for j in intervals:
        key = innermost(j)
        if key not in labels:
            labels[key] = offset + len(labels) + 1
        out.append(labels[key])
    return out


def boundary_words(t: BoundaryType):
    """(m_theta, m_zero, m_pi) for a boundary type.

    m_theta labels the 2k-2 intervals along the half-circle: intervals 1..a on
    the + side of the arc (labels 1..a_plus+1), intervals a+1..2k-2 on the -
    side (labels a_plus+2..k).  m_zero prepends the first - label (the arc has
    closed into a loop on the - side); m_pi appends the label 1.
    """
    _require_valid_boundary(t)
    n = 2 * t.k - 2
    a = t.a
    plus = _block_labels(t.block_pairs("plus"), range(1, a + 1), 0)
    minus = _block_labels(t.block_pairs("minus"), range(a + 1, n + 1), t.a_plus + 1)
    m_theta = Word(tuple(plus + minus))
    m_zero = Word((t.a_plus + 2,) + m_theta.letters)
    m_pi = Word(m_theta.letters + (1,))
    for w in (m_theta, m_zero, m_pi):
        problems = validate_word(w)
        if problems:
            raise InvalidType("word %s: %s" % (w, "; ".join(problems)))
    return m_theta, m_zero, m_pi


def first_repeat(w: Word) -> int:
    """min{j >= 2 : letter_j = letter_1}, 1-based."""
    if not w.letters:
        raise NoRepeat("empty word")
    for j in range(1, len(w.letters)):
        if w.letters[j] == w.letters[0]:
            return j + 1
    raise NoRepeat("first letter of %s never recurs" % w)


@dataclass(frozen=True)
class RotatingLimitReport:
    boundary_type: BoundaryType
    m_theta: Word
    m_zero: Word
    m_pi: Word
    pos_zero: int          # structural position 4+|p+| = a+2 (also the literal scan)
    pos_pi: int            # structural position 2+|p+| = a
    scan_zero: int         # literal first_repeat of m_zero
    scan_pi: int           # literal first_repeat of m_pi
    passed: bool


def rotating_limit_check(t: BoundaryType) -> RotatingLimitReport:
    """Mechanize the endpoint contradiction of the rotating-function argument.

    The two limit words m^(0) and m^(pi) describe the same nodal pattern read
    with an extra interval merged at either end; their structural first-repeat
    positions are a+2 and a, always two apart, and their literal first-repeat
    scans always differ (scan(m_zero) = a+2 exactly, while scan(m_pi) <= a for
    a >= 3 and = 2k-1 for a = 1).  Distinct positions = distinct patterns.
    """
    m_theta, m_zero, m_pi = boundary_words(t)
    a = t.a
    pos_zero, pos_pi = a + 2, a
    scan_zero = first_repeat(m_zero)
    scan_pi = first_repeat(m_pi)
    passed = (scan_zero != scan_pi) and (scan_zero == pos_zero) \
        and (pos_zero - pos_pi == 2)
    return RotatingLimitReport(t, m_theta, m_zero, m_pi,
                               pos_zero, pos_pi, scan_zero, scan_pi, passed)


def canonical_word(w: Word) -> Word:
    """Renumber letters in first-occurrence order (label-bijection canonical form)."""
    seen = {}
    out = []
    for c in w.letters:
        if c not in seen:
            seen[c] = len(seen) + 1
        out.append(seen[c])
    return Word(tuple(out))


def compare_patterns(w_left: Word, w_right: Word):
    """('equal', None) or ('distinct', witness string)."""
    if len(w_left) != len(w_right):
        return "distinct", "lengths %d vs %d" % (len(w_left), len(w_right))
    try:
        fl, fr = first_repeat(w_left), first_repeat(w_right)
        if fl != fr:
            return "distinct", "first_repeat %d vs %d" % (fl, fr)
    except NoRepeat:
        pass
    cl, cr = canonical_word(w_left), canonical_word(w_right)
    if cl != cr:
        return "distinct", "no label bijection: canonical %s vs %s" % (cl, cr)
    return "equal", None


# ---------------------------------------------------------------------------
# 2-row matrix text format
# ---------------------------------------------------------------------------

def format_tau_text(t) -> str:
    """Two-row matrix: first row indices (arrow written as 'v' for boundary
    types), second row images."""
    if isinstance(t, InteriorType):
        top = [str(j) for j in range(2 * t.p)]
        bot = [str(x) for x in t.tau]
    elif isinstance(t, BoundaryType):
        def tok(i):
            return "v" if i == 0 else str(i)
        top = [tok(j) for j in range(2 * t.k - 2)]
        bot = [tok(x) for x in t.tau]
    else:
        raise InvalidType("not a type: %r" % (t,))
    width = max(len(s) for s in top + bot)
    fmt = "%%%ds" % width
    return " ".join(fmt % s for s in top) + "\n" + " ".join(fmt % s for s in bot) + "\n"


def parse_tau_text(text: str, base: int = 0):
    """Parse the 2-row matrix format.

    Returns an InteriorType when no arrow token appears, else a BoundaryType.
    `base` gives the smallest ray index used in the file for interior types
    (sources vary between 0- and 1-based labels); canonical form is 0-based.
    """
    rows = [line.split() for line in text.strip().splitlines()
            if line.strip() and not line.lstrip().startswith("#")]
    if len(rows) != 2 or len(rows[0]) != len(rows[1]):
        raise InvalidType("expected two rows of equal length")
    top, bot = rows

    def is_arrow(tok):
        return tok.lower() in ARROW_TOKENS

    if any(is_arrow(x) for x in top + bot):
        n = len(top)

        def conv(tok):
            return 0 if is_arrow(tok) else int(tok)
        idx = [conv(x) for x in top]
        img = [conv(x) for x in bot]
        if sorted(idx) != list(range(n)):
            raise InvalidType("first row must list the arrow and rays 1..%d" % (n - 1))
        tau = [0] * n
        for i, j in zip(idx, img):
            tau[i] = j
        k = (n + 2) // 2
        t = BoundaryType(k, tuple(tau))
        _require_valid_boundary(t)
        return t

    idx = [int(x) - base for x in top]
    img = [int(x) - base for x in bot]
    n = len(idx)
    if n % 2 or sorted(idx) != list(range(n)):
        raise InvalidType("first row must list rays %d..%d" % (base, base + n - 1))
    tau = [0] * n
    for i, j in zip(idx, img):
        tau[i] = j
    t = InteriorType(n // 2, tuple(tau))
    _require_valid_interior(t)
    return t


@dataclass(frozen=True)
class TypeMatrix:
    """Generic 2-row matrix with possibly symbolic tokens (parse/print/compare
    only; no validity constraints are imposed on symbolic entries)."""
    top: tuple
    bottom: tuple

    @staticmethod
    def parse(text: str) -> "TypeMatrix":
        rows = [line.split() for line in text.strip().splitlines()
                if line.strip() and not line.lstrip().startswith("#")]
        if len(rows) != 2 or len(rows[0]) != len(rows[1]):
            raise InvalidType("expected two rows of equal length")
        return TypeMatrix(tuple(rows[0]), tuple(rows[1]))

    def __str__(self):
        width = max(len(s) for s in self.top + self.bottom)
        fmt = "%%%ds" % width
        return (" ".join(fmt % s for s in self.top) + "\n"
                + " ".join(fmt % s for s in self.bottom) + "\n")
