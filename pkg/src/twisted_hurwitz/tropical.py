"""Tropical covers of the circle with marked branch points, via quotients.

The target is a circle carrying branch points p_1 < ... < p_{g-1} (g >= 2)
and a base point p_0 on the arc between p_{g-1} and p_1.  A quotient cover
of degree d has exactly one vertex over each branch point, of valence 3 or
valence 2 (a 2-valent vertex is the image of an involution-fixed 4-valent
vertex of the double cover upstairs; both its germs carry the same weight).
Every edge is oriented by the covering map — it winds forward around the
circle — and is recorded as a tuple

    (i, j, k, w):  leaves the vertex over p_{i+1}, crosses p_0 exactly k
                   times, arrives at the vertex over p_{j+1}, weight w >= 1.

Positions are 0-based in memory.  Geometry forces k >= 1 when i >= j (the
path must pass p_0 to reach an earlier position, and loops wrap fully),
while i < j allows k = 0.  The degree is d = sum over edges of w*k (the
total weight over p_0), balancing holds at every vertex (incoming germ
weights = outgoing germ weights), and the cover is connected.  Two covers
are the same iff their edge multisets agree — positions are pinned, so
covers differing by which branch point a vertex sits over are distinct.

The twisted covers upstairs are double covers with a fixed-point-free-on-
edges involution: each 3-valent vertex v doubles into (v,+) and (v,-), each
2-valent vertex lifts to a single fixed 4-valent vertex (v,o), and every
edge lifts to two copies swapped by the involution.  The only discrete
choice is a gluing sign for each edge whose endpoints are both doubled:
"straight" joins + to + and - to -, "crossed" joins + to -.  Enumerating
all sign assignments, keeping the connected ones, and identifying
isomorphic results (vertex sign flips composed with involution-equivariant
edge matchings) yields the distinct twisted covers over a given quotient.

Each twisted cover pi is counted with multiplicity

    2^{g-1} * (1/|Aut(pi)|) * prod_{2-valent v} (omega_v - 1)
            * prod_{quotient edges} w(e),

so quotients with a weight-1 two-valent vertex contribute nothing and are
dropped by the enumerator.  The closed quotient-side formulas — the count
of lifts sum(1/|Aut(pi)|) = (2^{g'} - delta_{0c}) / (2^{c+1} |Aut(qbar)|)
and the resulting quotient multiplicity (2^{g'} - delta_{0c}) * 2^{2g'-3} *
(1/|Aut(qbar)|) * prod(omega_v - 1) * prod w(e) — are implemented as
independent cross-checks, not trusted: verify_preimage_formula recomputes
the left side from explicit lifts.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from itertools import product as iproduct

from .graphs import FeynmanGraph

STRAIGHT, CROSSED = 0, 1


def _germ_counts(edges, s):
    germs = [0] * s
    for i, j, _k, _w in edges:
        germs[i] += 1
        germs[j] += 1
    return germs


def _is_balanced(edges, s):
    """Incoming germ weight equals outgoing germ weight at every position."""
    inw = [0] * s
    outw = [0] * s
    for i, j, _k, w in edges:
        outw[i] += w
        inw[j] += w
    return inw == outw


def _quotient_connected(edges, s):
    if s == 0:
        return False
    parent = list(range(s))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for i, j, _k, _w in edges:
        ri, rj = find(i), find(j)
        if ri != rj:
            parent[ri] = rj
    root = find(0)
    return all(find(v) == root for v in range(s))


def _quotient_aut(edges):
    """Automorphisms of the position-pinned quotient: permutations of
    identical edges (same endpoints, crossings and weight)."""
    mult = {}
    for e in edges:
        mult[e] = mult.get(e, 0) + 1
    out = 1
    for m in mult.values():
        f = 1
        for t in range(2, m + 1):
            f *= t
        out *= f
    return out


def _two_valent_weights(edges, s):
    """Map position -> germ weight for the 2-valent positions."""
    germs = _germ_counts(edges, s)
    weight = {}
    for i, j, _k, w in edges:
        for v in (i, j):
            if germs[v] == 2:
                weight[v] = w  # balancing makes both germs equal
    return weight


# ---------------------------------------------------------------------------
# quotient enumeration


def _edge_candidates(s, d):
    out = []
    for i in range(s):
        for j in range(s):
            kmin = 0 if i < j else 1
            for w in range(1, d + 1):
                for k in range(kmin, d // w + 1):
                    out.append((i, j, k, w))
    return sorted(out)


def _enumerate_multisets(d, g):
    """All balanced connected degree-d edge multisets with one 2- or
    3-valent vertex per position, as sorted tuples, ascending."""
    s = g - 1
    cands = _edge_candidates(s, d)
    germs = [0] * s
    results = []

    def rec(start, budget, chosen):
        if budget == 0 and all(x in (2, 3) for x in germs):
            edges = tuple(chosen)
            if _is_balanced(edges, s) and _quotient_connected(edges, s):
                results.append(edges)
        for idx in range(start, len(cands)):
            i, j, k, w = cands[idx]
            if w * k > budget:
                continue
            if i == j:
                if germs[i] > 1:
                    continue
                germs[i] += 2
            else:
                if germs[i] > 2 or germs[j] > 2:
                    continue
                germs[i] += 1
                germs[j] += 1
            chosen.append(cands[idx])
            rec(idx, budget - w * k, chosen)
            chosen.pop()
            if i == j:
                germs[i] -= 2
            else:
                germs[i] -= 1
                germs[j] -= 1

    rec(0, d, [])
    return sorted(results)


# ---------------------------------------------------------------------------
# explicit double covers (lifts)


def _doubled(germs, v):
    """Vertices are doubled upstairs unless they are 2-valent (those lift
    to a single involution-fixed 4-valent vertex)."""
    return germs[v] != 2


def e33_indices(edges, s):
    germs = _germ_counts(edges, s)
    return tuple(
        idx
        for idx, (i, j, _k, _w) in enumerate(edges)
        if _doubled(germs, i) and _doubled(germs, j)
    )


def _lift_records(edges, s, sign_by_edge):
    """Edge records of the double cover: list of (class, endpoint-pair),
    where record 2m and 2m+1 are the two lifts of quotient edge m (swapped
    by the involution).  Lift vertices are (position, +1/-1) for doubled
    positions and (position, 0) for fixed ones."""
    germs = _germ_counts(edges, s)
    recs = []
    for idx, (i, j, k, w) in enumerate(edges):
        cls = (i, j, k, w)
        di, dj = _doubled(germs, i), _doubled(germs, j)
        if di and dj:
            flip = -1 if sign_by_edge.get(idx, STRAIGHT) == CROSSED else 1
            ends0 = ((i, 1), (j, flip))
            ends1 = ((i, -1), (j, -flip))
        elif di:
            ends0 = ((i, 1), (j, 0))
            ends1 = ((i, -1), (j, 0))
        elif dj:
            ends0 = ((i, 0), (j, 1))
            ends1 = ((i, 0), (j, -1))
        else:
            ends0 = ((i, 0), (j, 0))
            ends1 = ((i, 0), (j, 0))
        recs.append((cls, tuple(sorted(ends0))))
        recs.append((cls, tuple(sorted(ends1))))
    return recs


def _lift_vertices(edges, s):
    germs = _germ_counts(edges, s)
    out = []
    for v in range(s):
        if germs[v] == 0:
            continue
        if _doubled(germs, v):
            out.extend([(v, 1), (v, -1)])
        else:
            out.append((v, 0))
    return out


def _lift_connected(recs, vertices):
    index = {v: n for n, v in enumerate(vertices)}
    parent = list(range(len(vertices)))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for _cls, (a, b) in recs:
        ra, rb = find(index[a]), find(index[b])
        if ra != rb:
            parent[ra] = rb
    root = find(0)
    return all(find(n) == root for n in range(len(vertices)))


def _apply_flip(vertex, flipped):
    v, sg = vertex
    if sg and v in flipped:
        return (v, -sg)
    return vertex


def _flipped_multiset(recs, flipped):
    return sorted(
        (cls, tuple(sorted((_apply_flip(a, flipped), _apply_flip(b, flipped)))))
        for cls, (a, b) in recs
    )


def _equivariant_matchings(recs, flipped):
    """Count edge bijections recs -> recs compatible with the vertex flip
    `flipped` and commuting with the involution (lift partners 2m <-> 2m+1
    must map to partners).  Candidate images must share the path class and
    have the flipped endpoints."""
    n = len(recs)
    by_key = {}
    for t, (cls, ends) in enumerate(recs):
        by_key.setdefault((cls, ends), []).append(t)

    goal = [None] * n
    for e, (cls, (a, b)) in enumerate(recs):
        goal[e] = (cls, tuple(sorted((_apply_flip(a, flipped), _apply_flip(b, flipped)))))

    assigned = [None] * n
    used = [False] * n

    def bt(e):
        while e < n and assigned[e] is not None:
            e += 1
        if e == n:
            return 1
        total = 0
        for t in by_key.get(goal[e], ()):
            if used[t] or used[t ^ 1]:
                continue
            assigned[e], assigned[e ^ 1] = t, t ^ 1
            used[t] = used[t ^ 1] = True
            total += bt(e + 1)
            assigned[e] = assigned[e ^ 1] = None
            used[t] = used[t ^ 1] = False
        return total

    return bt(0)


def _lift_automorphisms(recs, doubled_positions):
    base = sorted(recs)
    total = 0
    for bits in iproduct((0, 1), repeat=len(doubled_positions)):
        flipped = {v for v, b in zip(doubled_positions, bits) if b}
        if _flipped_multiset(recs, flipped) != base:
            continue
        total += _equivariant_matchings(recs, flipped)
    return total


def lift_classes(edges, s):
    """Isomorphism classes of connected double covers over a quotient.

    Returns (classes, connected_count, assignment_count) where classes is a
    list of (signs, automorphism_count) with signs the lexicographically
    smallest gluing assignment in the class, ordered by signs.
    """
    e33 = e33_indices(edges, s)
    germs = _germ_counts(edges, s)
    doubled_positions = [v for v in range(s) if germs[v] and _doubled(germs, v)]
    vertices = _lift_vertices(edges, s)

    seen = {}
    connected = 0
    for signs in iproduct((STRAIGHT, CROSSED), repeat=len(e33)):
        sign_by_edge = dict(zip(e33, signs))
        recs = _lift_records(edges, s, sign_by_edge)
        if not _lift_connected(recs, vertices):
            continue
        connected += 1
        canon = min(
            tuple(_flipped_multiset(recs, {v for v, b in zip(doubled_positions, bits) if b}))
            for bits in iproduct((0, 1), repeat=len(doubled_positions))
        )
        if canon not in seen:
            seen[canon] = (signs, _lift_automorphisms(recs, doubled_positions))

    classes = sorted(seen.values())
    return classes, connected, 2 ** len(e33)


# ---------------------------------------------------------------------------
# covers and multiplicities


@dataclass(frozen=True)
class QuotientCover:
    """A quotient cover together with one isomorphism class of double cover.

    `edges` is the sorted multiset of (i, j, k, w) tuples.  `lift` holds the
    gluing sign (0 straight / 1 crossed) for each edge index listed by
    e33_indices(edges), lexicographically minimal in its isomorphism class.
    """

    d: int
    g: int
    edges: tuple
    lift: tuple
    lift_automorphisms: int

    def __post_init__(self):
        object.__setattr__(self, "edges", tuple(sorted(tuple(e) for e in self.edges)))
        object.__setattr__(self, "lift", tuple(self.lift))
        if self.g < 2:
            raise ValueError("quotient covers need g >= 2")
        expected = len(e33_indices(self.edges, self.positions))
        if len(self.lift) != expected:
            raise ValueError(
                "lift has %d signs, expected %d" % (len(self.lift), expected)
            )

    @property
    def positions(self):
        return self.g - 1

    def valences(self):
        return tuple(_germ_counts(self.edges, self.positions))

    @property
    def four_valent_count(self):
        """Number of 4-valent vertices upstairs = 2-valent quotient positions."""
        return sum(1 for x in self.valences() if x == 2)

    @property
    def quotient_genus(self):
        return len(self.edges) - self.positions + 1

    def two_valent_weights(self):
        return _two_valent_weights(self.edges, self.positions)

    def graph(self) -> FeynmanGraph:
        return FeynmanGraph(
            self.positions, tuple((min(i, j), max(i, j)) for i, j, _k, _w in self.edges)
        )

    def order(self):
        return tuple(range(self.positions))

    def weights(self):
        return tuple(w for _i, _j, _k, w in self.edges)

    def crossings(self):
        return tuple(k for _i, _j, k, _w in self.edges)

    def degree_over_base(self):
        return sum(w * k for _i, _j, k, w in self.edges)

    def quotient_automorphism_count(self):
        return _quotient_aut(self.edges)


@dataclass(frozen=True)
class CoverMultiplicity:
    value: Fraction
    four_valent_count: int
    quotient_genus: int


def cover_multiplicity(cover: QuotientCover, g=None) -> CoverMultiplicity:
    """Multiplicity of one twisted cover (quotient + lift class)."""
    if g is not None and g != cover.g:
        raise ValueError("cover was enumerated for g=%d, asked for g=%d" % (cover.g, g))
    g = cover.g
    c = cover.four_valent_count
    gp = cover.quotient_genus
    if 2 * gp != g - c + 1:
        raise ValueError(
            "structural genus %d does not satisfy 2g' = g - c + 1 (g=%d, c=%d)"
            % (gp, g, c)
        )
    value = Fraction(2 ** (g - 1), cover.lift_automorphisms)
    for wv in cover.two_valent_weights().values():
        value *= wv - 1
    for _i, _j, _k, w in cover.edges:
        value *= w
    return CoverMultiplicity(value=value, four_valent_count=c, quotient_genus=gp)


def quotient_multiplicity(edges, g) -> Fraction:
    """Closed-form multiplicity of a whole quotient cover (all lifts at
    once): (2^{g'}-delta_{0c}) * 2^{2g'-3} / |Aut(qbar)| * prod(omega_v - 1)
    * prod w(e).  Used as a cross-check against summing cover_multiplicity
    over the lift classes."""
    s = g - 1
    edges = tuple(sorted(edges))
    germs = _germ_counts(edges, s)
    c = sum(1 for x in germs if x == 2)
    gp = len(edges) - s + 1
    lead = 2**gp - (1 if c == 0 else 0)
    scale = (
        Fraction(2 ** (2 * gp - 3)) if 2 * gp >= 3 else Fraction(1, 2 ** (3 - 2 * gp))
    )
    value = lead * scale * Fraction(1, _quotient_aut(edges))
    for wv in _two_valent_weights(edges, s).values():
        value *= wv - 1
    for _i, _j, _k, w in edges:
        value *= w
    return value


def enumerate_quotient_covers(d: int, g: int) -> list:
    """All twisted covers (quotient + lift class) of degree d, genus g,
    with nonzero multiplicity, sorted by (edges, lift)."""
    if d < 1:
        raise ValueError("degree must be >= 1")
    if g < 2:
        raise ValueError("the tropical pipeline needs g >= 2 (one branch point)")
    s = g - 1
    out = []
    for edges in _enumerate_multisets(d, g):
        if any(w == 1 for w in _two_valent_weights(edges, s).values()):
            continue  # multiplicity factor (omega_v - 1) vanishes
        classes, _conn, _total = lift_classes(edges, s)
        for signs, aut in classes:
            out.append(
                QuotientCover(
                    d=d, g=g, edges=edges, lift=signs, lift_automorphisms=aut
                )
            )
    return sorted(out, key=lambda cv: (cv.edges, cv.lift))


def count_tropical(d: int, g: int) -> Fraction:
    """Degree-d genus-g twisted count via the tropical pipeline."""
    total = Fraction(0)
    for cover in enumerate_quotient_covers(d, g):
        total += cover_multiplicity(cover).value
    return total


def verify_preimage_formula(cover: QuotientCover, g=None) -> bool:
    """Recompute sum over lift classes of 1/|Aut| from explicit double
    covers and compare with (2^{g'} - delta_{0c}) / (2^{c+1} |Aut(qbar)|)."""
    details = preimage_details(cover, g)
    return details["lift_sum"] == details["closed_form"]


def preimage_details(cover: QuotientCover, g=None) -> dict:
    if g is not None and g != cover.g:
        raise ValueError("cover was enumerated for g=%d, asked for g=%d" % (cover.g, g))
    edges = cover.edges
    s = cover.positions
    if len(edges) > 12:
        raise ValueError("cover too large for explicit lift enumeration (> 12 edges)")
    classes, connected, total = lift_classes(edges, s)
    germs = _germ_counts(edges, s)
    c = sum(1 for x in germs if x == 2)
    gp = len(edges) - s + 1
    lift_sum = sum((Fraction(1, aut) for _signs, aut in classes), Fraction(0))
    closed = Fraction(2**gp - (1 if c == 0 else 0), 2 ** (c + 1) * _quotient_aut(edges))
    return {
        "lift_sum": lift_sum,
        "closed_form": closed,
        "classes": classes,
        "connected_assignments": connected,
        "total_assignments": total,
        "four_valent_count": c,
        "quotient_genus": gp,
    }


# ---------------------------------------------------------------------------
# export


def cover_record(cover: QuotientCover) -> dict:
    """JSON-ready description of one twisted cover."""
    e33 = set(e33_indices(cover.edges, cover.positions))
    sign_by_edge = dict(zip(sorted(e33), cover.lift))
    mult = cover_multiplicity(cover)
    edges = []
    for idx, (i, j, k, w) in enumerate(cover.edges):
        sign = sign_by_edge.get(idx)
        edges.append(
            {
                "from": i + 1,
                "to": j + 1,
                "crossings": k,
                "weight": w,
                "lift": None if sign is None else ("crossed" if sign else "straight"),
            }
        )
    return {
        "degree": cover.d,
        "genus": cover.g,
        "positions": cover.positions,
        "edges": edges,
        "four_valent_count": mult.four_valent_count,
        "quotient_genus": mult.quotient_genus,
        "lift_automorphisms": cover.lift_automorphisms,
        "multiplicity": {
            "numerator": str(mult.value.numerator),
            "denominator": str(mult.value.denominator),
        },
    }


def cover_to_json(covers) -> str:
    return json.dumps([cover_record(cv) for cv in covers], indent=2)


def cover_to_dot(cover: QuotientCover, name="cover") -> str:
    """DOT rendering; edges are oriented by the covering map (forward
    around the circle), vertices carry their branch-point position."""
    e33 = sorted(e33_indices(cover.edges, cover.positions))
    sign_by_edge = dict(zip(e33, cover.lift))
    germs = _germ_counts(cover.edges, cover.positions)
    lines = ["digraph %s {" % name]
    for v in range(cover.positions):
        lines.append(
            '  v%d [label="p%d (%d-valent)"];' % (v, v + 1, germs[v])
        )
    for idx, (i, j, k, w) in enumerate(cover.edges):
        label = "w=%d k=%d" % (w, k)
        if idx in sign_by_edge:
            label += " lift=%s" % ("crossed" if sign_by_edge[idx] else "straight")
        lines.append('  v%d -> v%d [label="%s"];' % (i, j, label))
    lines.append("}")
    return "\n".join(lines)
