import math

import numpy as np
import pytest

from randsurf.cycles import (
    MAX_CYCLE_LENGTH,
    brute_force_counts,
    class_count_primitive,
    count_cycles,
    count_vector,
    fixed_point_count,
)
from randsurf.gluing import sample_uniform_gluing
from randsurf.words import canonicalize, enumerate_classes_by_length


def test_length_guard(torus_gluing):
    with pytest.raises(ValueError):
        count_cycles(torus_gluing, 0)
    with pytest.raises(ValueError):
        count_cycles(torus_gluing, MAX_CYCLE_LENGTH + 1)


def test_torus_counts(torus_gluing):
    report = count_cycles(torus_gluing, 4)
    assert report.count_of("LR") == 3
    assert report.count_of("LLRR") == 3
    assert report.count_of("LRLR") == 3
    assert report.count_of("L") == 0
    assert report.count_of("LLR") == 0
    assert report.shortest_geodesic_length == pytest.approx(2 * math.acosh(1.5))


def test_sphere_counts(sphere_gluing):
    report = count_cycles(sphere_gluing, 4)
    assert report.count_of("L") == 2
    assert report.count_of("LL") == 2
    assert report.count_of("LLL") == 2
    assert report.count_of("LLLL") == 3
    assert report.count_of("LLRR") == 1
    assert report.count_of("LR") == 0
    assert report.count_of("LLR") == 0


def test_sphere_systole_estimate(sphere_gluing):
    # up to length 3 the sphere gluing only carries parabolic classes
    assert count_cycles(sphere_gluing, 3).shortest_geodesic_length is None
    report = count_cycles(sphere_gluing, 4)
    assert report.shortest_geodesic_length == pytest.approx(
        canonicalize("LLRR").length
    )


def test_dfs_equals_brute_force_on_goldens(torus_gluing, sphere_gluing):
    for g in (torus_gluing, sphere_gluing):
        assert count_cycles(g, 5).counts == brute_force_counts(g, 5)


def test_dfs_equals_brute_force_fuzz():
    rng = np.random.default_rng(5)
    for _ in range(30):
        n = int(rng.integers(1, 7))
        g = sample_uniform_gluing(n, seed=int(rng.integers(1 << 30)), index=0)
        assert count_cycles(g, 5).counts == brute_force_counts(g, 5)


def test_mirror_convention_mirrors_every_class():
    rng = np.random.default_rng(6)
    for _ in range(10):
        g = sample_uniform_gluing(int(rng.integers(1, 6)), seed=int(rng.integers(1 << 30)), index=0)
        plain = count_cycles(g, 5).counts
        flipped = count_cycles(g, 5, mirror_convention=True).counts
        assert {c.mirror_class(): k for c, k in plain.items()} == dict(flipped)


def test_fixed_point_route_matches_dfs():
    rng = np.random.default_rng(7)
    primitive = [c for c in enumerate_classes_by_length(5) if c.primitive]
    for _ in range(25):
        n = int(rng.integers(1, 11))
        g = sample_uniform_gluing(n, seed=int(rng.integers(1 << 30)), index=0)
        full = count_cycles(g, 5).counts
        for cls in primitive:
            assert class_count_primitive(g, cls) == full.get(cls, 0), (n, cls)


def test_fixed_point_count_small_and_large_paths_agree():
    # same gluing shape, thresholded containers differ at 6N = 48
    rng = np.random.default_rng(8)
    for n in (8, 9):  # 6N straddles the pure-python cutoff
        g = sample_uniform_gluing(n, seed=3, index=0)
        for word in ("LR", "LLR", "LLRR"):
            direct = fixed_point_count(g, word)
            cls = canonicalize(word)
            assert direct % 1 == 0
            assert class_count_primitive(g, cls) * (2 * len(word)) == cls.class_size * direct


def test_count_vector_handles_non_primitive_classes(torus_gluing):
    classes = [canonicalize(w) for w in ("LL", "LR", "LRLR")]
    vec = count_vector(torus_gluing, classes)
    assert [vec[c] for c in classes] == [0, 3, 3]


def test_count_vector_preserves_order_and_fills_zeros():
    g = sample_uniform_gluing(4, seed=17, index=0)
    classes = [canonicalize(w) for w in ("LLLR", "LR", "LLR")]
    vec = count_vector(g, classes)
    full = count_cycles(g, 4).counts
    assert list(vec) == classes
    for c in classes:
        assert vec[c] == full.get(c, 0)
