"""End-to-end acceptance checks, one per shipped guarantee.

Every test prints a single PASS line on success (run with ``-s`` to see
them); a failure reads as the criterion number plus the first
counterexample.  All comparisons are exact rational equality — there
are no tolerances anywhere in the library.
"""

import time
from fractions import Fraction as F

from csf import ncsym, ubcsym
from csf.core import BType, SetPartition, btypes_of_degree
from csf.graphs import (
    LabelledGraph,
    complete,
    concatenate,
    enumerate_labelled_graphs,
    enumerate_unit_interval_graphs,
    kayak_paddle,
    path,
    twin_peaks,
)
from csf.ncsym import NCSymElement
from csf.sym import SymElement
from csf.ubcsym import UBCSymElement
from csf.verify import run_suite


def _pass(num, message):
    print(f"criterion {num:02d} PASS: {message}")


def _run(suite, **kw):
    results = list(run_suite(suite, **kw))
    bad = [r for r in results if not r["ok"]]
    assert not bad, f"{suite}: {len(bad)} failures, first: {bad[0]}"
    return results


def test_c01_three_path_expansions():
    t0 = time.monotonic()
    y = ubcsym.change_basis(ubcsym.y_centred(path(3), 3), "e")
    assert y == UBCSymElement(3, "e", {BType((2,), 1): F(1, 2), BType((), 3): F(1, 2)})
    big = ncsym.change_basis(ncsym.Y_of(path(3)), "e")
    want = NCSymElement(3, "e", {
        SetPartition.parse("12/3"): F(1, 2),
        SetPartition.parse("13/2"): F(-1, 2),
        SetPartition.parse("1/23"): F(1, 2),
        SetPartition.parse("123"): F(1, 2),
    })
    assert big == want
    elapsed = time.monotonic() - t0
    assert elapsed < 1.0
    _pass(1, f"three-path expansions exact in both algebras ({elapsed:.2f}s)")


def test_c02_four_path_and_six_vertex_expansions():
    t0 = time.monotonic()
    y4 = ubcsym.change_basis(ubcsym.y_centred(path(4), 4), "e")
    assert y4 == UBCSymElement(4, "e", {
        BType((3,), 1): F(1, 3), BType((2,), 2): F(1, 2), BType((), 4): F(1, 6),
    })
    g = LabelledGraph(6, [(1, 2), (2, 3), (3, 4), (2, 6), (5, 6), (3, 5)])
    y6 = ubcsym.change_basis(ubcsym.y_centred(g, 6), "e")
    assert y6 == UBCSymElement(6, "e", {
        BType((4, 1), 1): F(1, 12), BType((5,), 1): F(1, 60),
        BType((2, 2), 2): F(1, 4), BType((3, 1), 2): F(1, 6),
        BType((4,), 2): F(1, 24), BType((1, 1), 4): F(1, 6),
        BType((2,), 4): F(1, 12), BType((1,), 5): F(1, 6),
        BType((), 6): F(1, 40),
    })
    elapsed = time.monotonic() - t0
    assert elapsed < 1.0
    _pass(2, f"four-path and nine-term six-vertex expansions exact ({elapsed:.2f}s)")


def test_c03_sink_counts_from_coefficients():
    t0 = time.monotonic()
    assert ubcsym.phi(ubcsym.y_centred(path(4), 4)).as_dict() == {1: 1, 2: 3}
    results = _run("sinks")
    sampled = sum(1 for r in results if r["instance"].startswith("n=6"))
    assert len(results) == 1272 and sampled == 500
    elapsed = time.monotonic() - t0
    assert elapsed < 600.0
    _pass(3, f"sink polynomial matches orientations on {len(results)} graphs ({elapsed:.1f}s)")


def test_c04_e_expansion_length_sums_count_sinks():
    results = _run("stanley")
    assert len(results) == 1599
    _pass(4, f"e-expansion length sums equal sink counts on {len(results)} graphs")


def test_c05_sink_avoiding_counts():
    t0 = time.monotonic()
    results = _run("sinks-avoiding")
    assert len(results) == 196
    elapsed = time.monotonic() - t0
    assert elapsed < 300.0
    _pass(5, f"last-vertex-avoiding sink counts on {len(results)} unit interval graphs ({elapsed:.1f}s)")


def test_c06_deletion_map_matches_vertex_deletion():
    results = _run("theta")
    assert len(results) == 1599
    _pass(6, f"deletion map equals deleted-graph image on {len(results)} graphs")


def test_c07_unit_interval_e_positivity_to_seven():
    t0 = time.monotonic()
    results = _run("conjecture-e", max_n=7, threads=2)
    at_seven = sum(1 for r in results if "n=7" in r["instance"])
    assert len(results) == 625 and at_seven == 429
    elapsed = time.monotonic() - t0
    assert elapsed < 600.0
    _pass(7, f"e-positivity of all {len(results)} unit interval graphs, {at_seven} at n=7 ({elapsed:.1f}s)")


def test_c08_induction_agrees_with_oracle():
    checked = 0
    for d in range(1, 7):
        for t in btypes_of_degree(d):
            native = ubcsym.induct(UBCSymElement.single("e", t))
            lifted = NCSymElement.single("e", ubcsym.canonical_lift(t))
            oracle = ubcsym.proj_ubc(ncsym.induct(lifted))
            assert native == oracle, t
            checked += 1
    _pass(8, f"e-basis induction matches lift-induct-project on {checked} keys")


def test_c09_append_maps():
    checked = 0
    for size in range(1, 5):
        for g in enumerate_labelled_graphs(size, connected_only=False):
            y = ubcsym.y_centred(g, g.n)
            for n in range(1, 5):
                glued = concatenate(g, complete(n))
                direct = ubcsym.change_basis(ubcsym.y_centred(glued, glued.n), "e")
                assert ubcsym.append_complete(y, n) == direct, (g.edges, n)
                inducted = ubcsym.induct(ubcsym.y_centred(glued, g.n))
                assert ubcsym.append_complete_inducted(y, n) == ubcsym.change_basis(
                    inducted, "e"
                ), (g.edges, n)
                checked += 2
    positive = 0
    for d in range(1, 5):
        for t in btypes_of_degree(d):
            for n in range(2, 6):
                image = ubcsym.append_graph(UBCSymElement.single("e", t), twin_peaks(n))
                ok, witness = ubcsym.is_e_positive(image)
                assert ok, (t, n, witness)
                positive += 1
    _pass(9, f"append closed forms on {checked} gluings; key positivity on {positive} images")


def test_c10_progression_batteries():
    results = _run("progression")
    assert len(results) == 37
    _pass(10, f"all {len(results)} family progressions are exact convex interpolations")


def test_c11_nine_vertex_interpolation():
    t0 = time.monotonic()
    base = list(complete(6).edges) + [(6, 7), (5, 8), (1, 9)]
    g0 = LabelledGraph(9, base)
    g1 = LabelledGraph(9, base + [(2, 9)])
    g3 = LabelledGraph(9, base + [(2, 9), (3, 9), (4, 9)])
    x0, x1, x3 = (ncsym.X_of(g).converted("p") for g in (g0, g1, g3))
    assert x1 == F(2, 3) * x0 + F(1, 3) * x3
    elapsed = time.monotonic() - t0
    assert elapsed < 60.0
    _pass(11, f"nine-vertex two-thirds/one-third interpolation exact ({elapsed:.2f}s)")


def test_c12_tree_and_cut_vertex_classification():
    trees = _run("trees")
    cuts = _run("cut-vertex")
    assert len(trees) == 48 and len(cuts) == 1021
    _pass(12, f"{len(trees)} trees and {len(cuts)} cut-vertex graphs classified correctly")


def test_c13_kayak_paddle_positivity():
    checked = 0
    for m in (3, 4):
        for n in (3, 4):
            for l in (0, 1, 2):
                x = ncsym.X_of(kayak_paddle(m, l, n)).converted("e")
                worst = min(x.terms.values())
                assert worst >= 0, (m, l, n, worst)
                checked += 1
    _pass(13, f"{checked} kayak paddle graphs have e-positive symmetric functions")


def test_c14_orientation_expansions():
    results = _run("orientations")
    assert len(results) == 1099
    _pass(14, f"fundamental expansions nonneg integral over orientations of {len(results)} graphs")


def test_c15_engine_coherence():
    checked = 0
    for n in range(1, 7):
        for g in enumerate_unit_interval_graphs(n):
            subsets = ubcsym.y_centred(g, g.n, engine="subsets")
            delcon = ubcsym.y_centred(g, g.n, engine="delcon")
            oracle = ubcsym.y_centred(g, g.n, engine="oracle")
            assert subsets == delcon == oracle, g.edges
            checked += 1
    assert checked == 196
    _pass(15, f"three expansion engines agree on {checked} unit interval graphs")
