import random

import pytest

from urygrid.errors import GuardError, ValidationError
from urygrid.katetov import (KatetovFunction, build_approximant,
                             homogeneity_check, injectivity_check, is_katetov,
                             iso_group, katetov_extension, katetov_witness,
                             point_function, realize_one_point, sup_distance)
from urygrid.spaces import FiniteMetricSpace, random_grid_space, validate_space


def random_total_katetov(space, rng):
    """Katetov profile on a random subset, extended maximally."""
    size = rng.randint(1, space.n)
    support = tuple(rng.sample(space.points, size))
    values = []
    q = space.denominator
    for t, p in enumerate(support):
        lo, hi = 0, q
        for s, v in zip(support[:t], values):
            d = space.distance(s, p)
            lo = max(lo, v - d, d - v)
            hi = min(hi, v + d)
        values.append(rng.randint(lo, hi))
    return katetov_extension(KatetovFunction(space, support, tuple(values)))


class TestIsKatetov:
    def test_single_point_support_is_always_katetov(self, two_point_q4):
        for v in range(5):
            assert is_katetov(KatetovFunction(two_point_q4, ("a",), (v,)))

    def test_lower_bound_failure_with_witness(self, two_point_q4):
        f = KatetovFunction(two_point_q4, ("a", "b"), (0, 1))
        assert katetov_witness(f) == ("a", "b")

    def test_valid_pair(self, two_point_q4):
        assert is_katetov(KatetovFunction(two_point_q4, ("a", "b"), (1, 1)))

    def test_out_of_range_value_is_structural(self, two_point_q4):
        with pytest.raises(ValidationError):
            KatetovFunction(two_point_q4, ("a",), (5,))


class TestExtension:
    def test_two_point_worked_example(self, two_point_q4):
        g = katetov_extension(KatetovFunction(two_point_q4, ("a",), (1,)))
        assert g.values == (1, 3)

    def test_extension_caps_at_diameter(self):
        space = FiniteMetricSpace(("a", "b"), 4, ((0, 3), (3, 0)))
        g = katetov_extension(KatetovFunction(space, ("a",), (3,)))
        assert g.value_at("b") == 4

    def test_total_input_is_returned_unchanged(self, two_point_q4):
        f = KatetovFunction(two_point_q4, ("a", "b"), (1, 1))
        assert katetov_extension(f).total_values() == (1, 1)

    def test_restriction_recovers_input_and_output_is_katetov(self):
        rng = random.Random(2)
        for _ in range(10_000):
            space = random_grid_space(rng.randint(1, 6), rng.randint(1, 9),
                                      rng.randrange(10 ** 6))
            size = rng.randint(1, space.n)
            support = tuple(rng.sample(space.points, size))
            values = []
            for t, p in enumerate(support):
                lo, hi = 0, space.denominator
                for s, v in zip(support[:t], values):
                    d = space.distance(s, p)
                    lo = max(lo, v - d, d - v)
                    hi = min(hi, v + d)
                values.append(rng.randint(lo, hi))
            f = KatetovFunction(space, support, tuple(values))
            g = katetov_extension(f)
            assert is_katetov(g)
            for p, v in zip(support, values):
                assert g.value_at(p) == v

    def test_monotone_in_the_support(self):
        rng = random.Random(4)
        for _ in range(200):
            space = random_grid_space(rng.randint(2, 6), 8, rng.randrange(10 ** 6))
            g = random_total_katetov(space, rng)
            big = tuple(rng.sample(space.points, rng.randint(2, space.n)))
            small = big[:rng.randint(1, len(big) - 1)]
            f_big = KatetovFunction(space, big, tuple(g.value_at(p) for p in big))
            f_small = KatetovFunction(space, small, tuple(g.value_at(p) for p in small))
            ext_big = katetov_extension(f_big).total_values()
            ext_small = katetov_extension(f_small).total_values()
            assert all(a >= b for a, b in zip(ext_small, ext_big))

    def test_rejects_non_katetov_input(self, two_point_q4):
        with pytest.raises(ValidationError):
            katetov_extension(KatetovFunction(two_point_q4, ("a", "b"), (0, 1)))


class TestPointFunction:
    def test_distance_row(self, two_point_q4):
        assert point_function(two_point_q4, "a").total_values() == (0, 2)

    def test_vanishes_at_its_point(self):
        rng = random.Random(6)
        for _ in range(20):
            space = random_grid_space(5, 7, rng.randrange(10 ** 6))
            p = rng.choice(space.points)
            assert point_function(space, p).value_at(p) == 0

    def test_equals_extension_of_zero_at_the_point(self):
        rng = random.Random(8)
        for _ in range(50):
            space = random_grid_space(rng.randint(1, 6), 6, rng.randrange(10 ** 6))
            p = rng.choice(space.points)
            ext = katetov_extension(KatetovFunction(space, (p,), (0,)))
            assert ext.total_values() == point_function(space, p).total_values()


class TestSupDistance:
    def test_zero_on_equal(self, two_point_q4):
        f = point_function(two_point_q4, "a")
        assert sup_distance(f, f) == 0

    def test_distance_to_point_function_evaluates(self):
        # sup |f - h_x| is attained at x and equals f(x)
        rng = random.Random(10)
        for _ in range(200):
            space = random_grid_space(rng.randint(1, 6), 8, rng.randrange(10 ** 6))
            f = random_total_katetov(space, rng)
            x = rng.choice(space.points)
            assert sup_distance(f, point_function(space, x)) == f.value_at(x)

    def test_componentwise_example(self, two_point_q4):
        f = KatetovFunction(two_point_q4, ("a", "b"), (1, 3))
        g = KatetovFunction(two_point_q4, ("a", "b"), (0, 2))
        assert sup_distance(f, g) == 1


class TestRealizeOnePoint:
    def test_duplicate_of_existing_point_is_flagged(self, two_point_q4):
        ext = realize_one_point(two_point_q4, point_function(two_point_q4, "a"))
        assert ext.identified_with == ("a",)
        assert ext.space.pseudo

    def test_fresh_point_gives_valid_space(self, two_point_q4):
        f = KatetovFunction(two_point_q4, ("a", "b"), (1, 1))
        ext = realize_one_point(two_point_q4, f)
        assert ext.space.n == 3 and not ext.identified_with
        assert validate_space(ext.space.points, 4, ext.space.dist).ok

    def test_constant_diameter_is_realizable(self):
        rng = random.Random(12)
        for _ in range(20):
            space = random_grid_space(rng.randint(1, 5), 6, rng.randrange(10 ** 6))
            f = KatetovFunction(space, space.points, (6,) * space.n)
            assert realize_one_point(space, f).space.n == space.n + 1


class TestInjectivity:
    def test_single_point_space(self):
        space = FiniteMetricSpace(("a",), 2, ((0,),))
        report = injectivity_check(space, 1)
        assert {v for (_, (v,)) in report.unrealized} == {1, 2}

    def test_point_profiles_always_realized(self):
        rng = random.Random(14)
        for _ in range(20):
            space = random_grid_space(rng.randint(2, 5), 4, rng.randrange(10 ** 6))
            report = injectivity_check(space, 2)
            for support, values in report.unrealized:
                for x in space.points:
                    assert tuple(space.distance(x, p) for p in support) != values


class TestBuildApproximant:
    def test_closed_seed_is_unchanged(self):
        # the 1-point seed is trivially closed at subset size 1 and grid 1
        seed = FiniteMetricSpace(("a",), 1, ((0,),))
        result = build_approximant(seed, 1, 1, 8)
        # grid 1 allows only value 1 off the point itself; one extension needed
        assert result.status == "closed"

    def test_capped_when_budget_equals_seed(self):
        seed = FiniteMetricSpace(("a",), 2, ((0,),))
        result = build_approximant(seed, 1, 2, 1)
        assert result.status == "capped"
        assert result.space == seed

    def test_single_point_seed_closes_at_subset_one(self):
        seed = FiniteMetricSpace(("a",), 2, ((0,),))
        result = build_approximant(seed, 1, 2, 32)
        assert result.status == "closed"
        assert injectivity_check(result.space, 1).ok
        row = {result.space.distance("a", p) for p in result.space.points}
        assert {1, 2} <= row

    def test_seed_embeds_isometrically(self):
        rng = random.Random(16)
        seed = random_grid_space(3, 2, 5)
        result = build_approximant(seed, 2, 2, 48, rng_seed=1)
        for p in seed.points:
            for q_ in seed.points:
                assert result.space.distance(p, q_) == seed.distance(p, q_)

    def test_external_one_point_extensions_match_inside_a_closed_space(self):
        # embed a small subspace of the closed space as an abstract space K,
        # extend K by an external point p in every grid-feasible way, and the
        # closed space must already hold a point matching p's profile
        seed = FiniteMetricSpace(("a",), 2, ((0,),))
        closed = build_approximant(seed, 2, 2, 64).space
        rng = random.Random(77)
        matched = 0
        for _ in range(60):
            names = rng.sample(closed.points, 2)
            sub = closed.restrict(names)
            for f0 in range(3):
                for f1 in range(3):
                    values = (f0, f1)
                    cand = KatetovFunction(sub, tuple(names), values)
                    if not is_katetov(cand) or 0 in values:
                        continue
                    induced = KatetovFunction(closed, tuple(names), values)
                    hit = any(
                        all(closed.distance(x, nm) == v
                            for nm, v in zip(names, values))
                        for x in closed.points)
                    assert hit, (names, values)
                    matched += 1
        assert matched > 0


class TestIsoGroup:
    def test_two_point_space(self, two_point_q4):
        assert iso_group(two_point_q4) == ((0, 1), (1, 0))

    def test_all_distances_distinct_gives_identity_only(self):
        space = FiniteMetricSpace(("a", "b", "c"), 4,
                                  ((0, 1, 2), (1, 0, 3), (2, 3, 0)))
        assert iso_group(space) == ((0, 1, 2),)

    def test_equilateral_triangle_gives_all_permutations(self, triangle_q2):
        assert len(iso_group(triangle_q2)) == 6

    def test_group_axioms_by_table(self):
        rng = random.Random(18)
        for _ in range(15):
            space = random_grid_space(rng.randint(2, 6), 3, rng.randrange(10 ** 6))
            group = set(iso_group(space))
            assert tuple(range(space.n)) in group
            for g in group:
                inv = tuple(sorted(range(space.n), key=g.__getitem__))
                assert inv in group
                for h in group:
                    assert tuple(g[h[i]] for i in range(space.n)) in group

    def test_size_guard_refuses(self):
        space = random_grid_space(11, 3, 0)
        with pytest.raises(GuardError):
            iso_group(space)


class TestHomogeneity:
    def test_size_zero_is_vacuously_homogeneous(self, two_point_q4):
        assert homogeneity_check(two_point_q4, 0).ok

    def test_equilateral_triangle_is_homogeneous(self, triangle_q2):
        assert homogeneity_check(triangle_q2, 2).ok

    def test_path_end_pair_to_middle_pair_is_reported(self, path_q4):
        report = homogeneity_check(path_q4, 2)
        assert not report.ok
        assert (("a", "b"), ("b", "c")) in report.non_extendable
