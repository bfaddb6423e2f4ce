"""Batch verification suites over graph enumerations.

Each suite turns one of the library's theorems into a stream of
checkable instances: sink counts against acyclic orientations, vertex
deletion, e-positivity of unit interval graphs, tree and cut-vertex
classification, marked-key nonnegativity, and the arithmetic
progressions of graph families.

Enumeration is exhaustive below ``SAMPLE_AT`` vertices and switches to
seeded random sampling of distinct graphs at and above it, so the
default runs stay in the minutes range.  ``run_suite`` yields one
result dict per instance in a deterministic order, optionally fanned
out over a process pool; the order and content are identical for any
worker count.
"""

import random
from concurrent.futures import ProcessPoolExecutor
from fractions import Fraction

from . import ncsym, ubcqsym, ubcsym
from .graphs import (
    LabelledGraph,
    delete_vertex,
    enumerate_acyclic_orientations,
    enumerate_labelled_graphs,
    enumerate_unit_interval_graphs,
    m_sequence,
    melting_ice_cream,
    melting_lollipop,
    melting_lollipop_ii,
    sink_counts,
    sink_counts_at,
    sink_counts_avoiding,
    snowy_twin_peaks,
    wide_melting_lollipop,
)
from .sym import SymElement

SUITES = (
    "sinks",
    "stanley",
    "sinks-avoiding",
    "theta",
    "conjecture-e",
    "progression",
    "trees",
    "cut-vertex",
    "orientations",
)

DEFAULT_MAX_N = {
    "sinks": 6,
    "stanley": 6,
    "sinks-avoiding": 6,
    "theta": 6,
    "conjecture-e": 7,
    "trees": 8,
    "cut-vertex": 6,
    "orientations": 5,
    "progression": 0,
}

# hard per-suite bounds so a stray --max-n cannot start a week-long run
MAX_N_CAP = {
    "sinks": 6,
    "stanley": 6,
    "sinks-avoiding": 7,
    "theta": 6,
    "conjecture-e": 8,
    "trees": 8,
    "cut-vertex": 6,
    "orientations": 6,
    "progression": 0,
}

SAMPLE_AT = 6
SAMPLE_SIZE = 500

PROGRESSION_FAMILIES = ("gamma", "lollipop", "ic", "stp", "wl", "wl1")

_PROGRESSION_ALIASES = {
    "melting-lollipop-ii": "gamma",
    "melting-lollipop": "lollipop",
    "ml": "lollipop",
    "ice-cream": "ic",
    "melting-ice-cream": "ic",
    "snowy-twin-peaks": "stp",
    "wide-melting-lollipop": "wl",
}


# ---------------------------------------------------------------------------
# graph streams


def _sample_graphs(n, count, rng, connected=True, with_cut_vertex=False):
    """Distinct random graphs on [n], edge probability 1/2, filtered."""
    pairs = [(i, j) for i in range(1, n + 1) for j in range(i + 1, n + 1)]
    seen = set()
    out = []
    while len(out) < count:
        edges = tuple(p for p in pairs if rng.random() < 0.5)
        if edges in seen:
            continue
        seen.add(edges)
        g = LabelledGraph(n, edges)
        if connected and not g.is_connected():
            continue
        if with_cut_vertex and not _cut_vertices(g):
            continue
        out.append(g)
    return out


def _graph_stream(max_n, rng, connected):
    for n in range(1, max_n + 1):
        if n < SAMPLE_AT:
            yield from enumerate_labelled_graphs(n, connected_only=connected)
        else:
            yield from _sample_graphs(n, SAMPLE_SIZE, rng, connected=connected)


def _cut_vertices(g: LabelledGraph) -> tuple:
    """Vertices of a connected graph whose removal disconnects it."""
    if g.n < 3:
        return ()
    return tuple(
        v for v in range(1, g.n + 1) if len(delete_vertex(g, v).components()) > 1
    )


# ---------------------------------------------------------------------------
# tree enumeration up to isomorphism


def _ahu_key(t: LabelledGraph) -> str:
    """Canonical bracket encoding of an unlabelled tree, rooted at its centre."""
    if t.n == 1:
        return "()"
    adjacency = {v: set() for v in range(1, t.n + 1)}
    for i, j in t.edges:
        adjacency[i].add(j)
        adjacency[j].add(i)
    remaining = set(adjacency)
    degree = {v: len(adjacency[v]) for v in adjacency}
    layer = [v for v in adjacency if degree[v] == 1]
    while len(remaining) > 2:
        peeled = []
        for v in layer:
            remaining.discard(v)
            for u in adjacency[v]:
                degree[u] -= 1
                if degree[u] == 1 and u in remaining:
                    peeled.append(u)
        layer = peeled

    def encode(v, parent):
        inner = sorted(encode(u, v) for u in adjacency[v] if u != parent)
        return "(" + "".join(inner) + ")"

    return min(encode(c, 0) for c in remaining)


def trees_up_to_isomorphism(max_n: int):
    """One labelled representative per unlabelled tree, by vertex count.

    Grows every tree on n vertices by hanging a new leaf on each vertex
    of every (n-1)-vertex tree, then dedupes by canonical form; every
    tree arises this way because deleting a leaf shrinks it.
    """
    assert max_n >= 1
    level = [LabelledGraph(1)]
    yield level[0]
    for n in range(2, max_n + 1):
        grown = {}
        for t in level:
            for v in range(1, t.n + 1):
                candidate = LabelledGraph(n, t.edges + ((v, n),))
                grown.setdefault(_ahu_key(candidate), candidate)
        level = [grown[key] for key in sorted(grown)]
        yield from level


# ---------------------------------------------------------------------------
# progression batteries


def progression_battery(name: str, params: dict):
    """The graph sequence and comparison level for one named progression.

    Returns (graphs, via, description).  Each sequence interpolates
    between two distinguished members of its family; the suite then
    checks that the chromatic elements form an arithmetic progression,
    which pins every interior member as a convex combination of the
    endpoints.
    """
    key = _PROGRESSION_ALIASES.get(name, name)
    if key not in PROGRESSION_FAMILIES:
        known = ", ".join(PROGRESSION_FAMILIES)
        raise ValueError(f"unknown progression family {name!r}; known: {known}")

    def need(*wanted):
        missing = [p for p in wanted if p not in params]
        extra = [p for p in params if p not in wanted]
        if missing or extra:
            raise ValueError(
                f"progression family {key!r} takes params {wanted}; "
                f"missing {missing or 'none'}, unexpected {extra or 'none'}"
            )
        return tuple(int(params[p]) for p in wanted)

    if key == "gamma":
        # clique melts from vertex 1 down: between the detached scoop and
        # the once-melted lollipop, compared after forgetting the marking
        m, n = need("m", "n")
        graphs = [melting_lollipop_ii(m, n, k) for k in range(m - 1, 0, -1)]
        via = "x"
    elif key == "lollipop":
        m, n = need("m", "n")
        graphs = [melting_lollipop(m, n, k) for k in range(0, m)]
        via = "x"
    elif key == "ic":
        # between the clique with a loose vertex and twin peaks
        (n,) = need("n")
        graphs = [melting_ice_cream(n, k) for k in range(n, 0, -1)]
        via = "y"
    elif key == "stp":
        # between an edge glued to twin peaks and the doubly melted cone
        (n,) = need("n")
        graphs = [snowy_twin_peaks(n, k) for k in range(1, n - 1)]
        graphs.append(melting_ice_cream(n, 2))
        via = "y"
    elif key == "wl":
        # between a clique glued to a triangular ladder and the next
        # wider member of the same family
        m, n = need("m", "n")
        if n < 1:
            raise ValueError(f"wl progression needs n >= 1, got n={n}")
        graphs = [wide_melting_lollipop(m, n, k) for k in range(m - 2, 0, -1)]
        graphs.append(wide_melting_lollipop(m + 1, n - 1, m - 2))
        via = "y"
    else:
        # single-tail case, between clique-plus-triangle and the reversed
        # snowy twin peaks
        (m,) = need("m")
        graphs = [wide_melting_lollipop(m, 1, k) for k in range(m - 2, 0, -1)]
        via = "y"

    label = " ".join([f"family={key}"] + [f"{p}={v}" for p, v in sorted(params.items())])
    return graphs, via, label


_DEFAULT_BATTERIES = (
    [("gamma", {"m": m, "n": n}) for m in range(3, 7) for n in range(1, 4)]
    + [("lollipop", {"m": m, "n": n}) for m in range(2, 6) for n in range(1, 3)]
    + [("ic", {"n": n}) for n in range(2, 6)]
    + [("stp", {"n": n}) for n in range(3, 7)]
    + [("wl", {"m": m, "n": n}) for m, n in ((4, 1), (4, 2), (4, 3), (5, 1), (5, 2), (6, 1))]
    + [("wl1", {"m": m}) for m in range(4, 7)]
)


# ---------------------------------------------------------------------------
# per-instance checkers; instances are picklable tuples so a process
# pool can run them


def _edges_label(g: LabelledGraph) -> str:
    return "n={} edges={}".format(g.n, ",".join(f"{i}-{j}" for i, j in g.edges) or "none")


def _check_sinks(payload):
    n, edges = payload
    g = LabelledGraph(n, edges)
    for v in range(1, n + 1):
        got = ubcsym.phi(ubcsym.y_centred(g, v)).as_dict()
        want = sink_counts_at(g, v)
        if got != want:
            return False, f"vertex {v}: phi gave {got}, orientations give {want}"
    return True, None


def _check_stanley(payload):
    n, edges = payload
    g = LabelledGraph(n, edges)
    by_length = {}
    for lam, c in ncsym.X_of(g).converted("e").terms.items():
        j = len(lam)
        by_length[j] = by_length.get(j, Fraction(0)) + c
    got = {j: c for j, c in by_length.items() if c}
    want = sink_counts(g)
    if got != want:
        return False, f"e-expansion lengths give {got}, orientations give {want}"
    return True, None


def _check_avoiding(payload):
    n, edges = payload
    g = LabelledGraph(n, edges)
    got = ubcsym.sink_avoiding_from_coeffs(ubcsym.y_centred(g, n))
    if n == 1:
        # deleting the only vertex leaves the empty graph, which has one
        # orientation and no sinks
        want = {0: 1}
    else:
        want = sink_counts_avoiding(g, n)
    if got != want:
        return False, f"coefficients give {got}, orientations give {want}"
    return True, None


def _check_theta(payload):
    n, edges = payload
    g = LabelledGraph(n, edges)
    for v in range(1, n + 1):
        got = ubcsym.theta(ubcsym.y_centred(g, v))
        if n == 1:
            want = SymElement(0, "p", {(): Fraction(1)})
        else:
            want = ncsym.X_of(delete_vertex(g, v))
        if got != want:
            return False, f"vertex {v}: theta gave {got!r}, deletion gives {want!r}"
    return True, None


def _check_conjecture_e(payload):
    n, edges = payload
    g = LabelledGraph(n, edges)
    ok, worst = ubcsym.is_e_positive(ubcsym.y_centred(g, n))
    if not ok:
        return False, f"negative e-coefficient at key {worst}"
    return True, None


def _check_trees(payload):
    n, edges = payload
    t = LabelledGraph(n, edges)
    degree = {v: len(t.neighbors(v)) for v in range(1, n + 1)}
    is_path = all(d <= 2 for d in degree.values())
    for v in range(1, n + 1):
        expected = is_path and degree[v] <= 1
        actual, _ = ubcsym.is_e_positive(ubcsym.y_centred(t, v))
        if actual != expected:
            kind = "path endpoint" if expected else "interior or branching"
            return False, f"vertex {v} ({kind}): positivity came out {actual}"
    return True, None


def _check_cut_vertex(payload):
    n, edges, cuts = payload
    g = LabelledGraph(n, edges)
    for v in cuts:
        ok, _ = ubcsym.is_e_positive(ubcsym.y_centred(g, v))
        if ok:
            return False, f"cut vertex {v} unexpectedly gave a positive element"
    return True, None


def _check_orientations(payload):
    n, edges = payload
    g = LabelledGraph(n, edges)
    for o in enumerate_acyclic_orientations(g):
        q = ubcqsym.q_expansion(ubcqsym.poset_of(o))
        for key, c in q.terms.items():
            if c < 0 or c.denominator != 1:
                return False, f"orientation {o.directed}: coefficient {c} at {key}"
        sinks = o.sinks()
        want = {len(sinks): 1} if n in sinks else {}
        got = ubcqsym.phi_q(q).as_dict()
        if got != want:
            return False, f"orientation {o.directed}: phi_q gave {got}, sinks {sinks}"
    return True, None


def _check_progression(payload):
    name, param_items = payload
    graphs, via, _ = progression_battery(name, dict(param_items))
    if ubcsym.verify_progression(graphs, via=via):
        return True, None
    return False, "chromatic elements do not form an arithmetic progression"


_CHECKERS = {
    "sinks": _check_sinks,
    "stanley": _check_stanley,
    "sinks-avoiding": _check_avoiding,
    "theta": _check_theta,
    "conjecture-e": _check_conjecture_e,
    "trees": _check_trees,
    "cut-vertex": _check_cut_vertex,
    "orientations": _check_orientations,
    "progression": _check_progression,
}


def _check_instance(item):
    suite, label, payload = item
    try:
        ok, detail = _CHECKERS[suite](payload)
    except Exception as exc:  # surface as a failure instead of killing the pool
        ok, detail = False, f"{type(exc).__name__}: {exc}"
    return {"ok": ok, "instance": label, "detail": None if ok else (detail or "mismatch")}


# ---------------------------------------------------------------------------
# instance streams


def _instances(name, max_n, seed, family, params):
    rng = random.Random(seed)
    if name == "progression":
        if family is not None:
            batteries = [(family, params or {})]
        else:
            if params:
                raise ValueError("progression params need an explicit --family")
            batteries = _DEFAULT_BATTERIES
        for fam, ps in batteries:
            graphs, via, label = progression_battery(fam, ps)
            assert graphs and via in ("x", "y")
            yield ("progression", f"progression {label}", (fam, tuple(sorted(ps.items()))))
        return

    if name in ("sinks", "cut-vertex"):
        connected = True
    else:
        connected = False

    if name == "conjecture-e" or name == "sinks-avoiding":
        for n in range(1, max_n + 1):
            for g in enumerate_unit_interval_graphs(n):
                yield (name, f"unit interval n={n} m={list(m_sequence(g))}", (g.n, g.edges))
    elif name == "trees":
        for t in trees_up_to_isomorphism(max_n):
            yield (name, "tree " + _edges_label(t), (t.n, t.edges))
    elif name == "cut-vertex":
        for n in range(3, max_n + 1):
            if n < SAMPLE_AT:
                pool = (g for g in enumerate_labelled_graphs(n, connected_only=True))
                pool = [g for g in pool if _cut_vertices(g)]
            else:
                pool = _sample_graphs(n, SAMPLE_SIZE, rng, connected=True, with_cut_vertex=True)
            for g in pool:
                cuts = _cut_vertices(g)
                label = _edges_label(g) + f" cuts={list(cuts)}"
                yield (name, label, (g.n, g.edges, cuts))
    elif name == "orientations":
        for g in _graph_stream(max_n, rng, connected=False):
            yield (name, _edges_label(g), (g.n, g.edges))
    else:  # sinks, stanley, theta
        for g in _graph_stream(max_n, rng, connected=connected):
            yield (name, _edges_label(g), (g.n, g.edges))


def run_suite(name, max_n=None, threads=1, fail_fast=False, seed=0, family=None, params=None):
    """Check every instance of the named suite, yielding result dicts.

    Results arrive in a deterministic enumeration order regardless of
    the worker count.  ``family``/``params`` select a single progression
    battery; other suites take ``max_n`` up to a per-suite cap.
    """
    if name not in SUITES:
        known = ", ".join(SUITES)
        raise ValueError(f"unknown suite {name!r}; known: {known}")
    if threads < 1:
        raise ValueError(f"need at least one worker, got threads={threads}")
    if max_n is None:
        max_n = DEFAULT_MAX_N[name]
    elif name != "progression" and max_n > MAX_N_CAP[name]:
        raise ValueError(f"suite {name!r} caps max-n at {MAX_N_CAP[name]}, got {max_n}")

    items = list(_instances(name, max_n, seed, family, params))
    if threads == 1:
        for item in items:
            result = _check_instance(item)
            yield result
            if fail_fast and not result["ok"]:
                return
    else:
        chunk = max(1, len(items) // (threads * 4))
        with ProcessPoolExecutor(max_workers=threads) as pool:
            for result in pool.map(_check_instance, items, chunksize=chunk):
                yield result
                if fail_fast and not result["ok"]:
                    return


def scan_e_positivity(max_n: int):
    """Positivity verdict for every unit interval graph up to max_n.

    Unlike the suites this reports rather than judges: each record
    carries the m-sequence, the verdict, and the worst key when the
    element has a negative coefficient.
    """
    if max_n > MAX_N_CAP["conjecture-e"]:
        raise ValueError(f"scan caps max-n at {MAX_N_CAP['conjecture-e']}, got {max_n}")
    for n in range(1, max_n + 1):
        for g in enumerate_unit_interval_graphs(n):
            ok, worst = ubcsym.is_e_positive(ubcsym.y_centred(g, g.n))
            yield {
                "n": n,
                "m": list(m_sequence(g)),
                "e_positive": ok,
                "worst": None if ok else f"({list(worst[0])};{worst[1]})",
            }
