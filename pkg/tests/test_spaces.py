import random

import pytest

from urygrid.errors import ValidationError
from urygrid.spaces import (FiniteMetricSpace, PartialSpec, amalgam,
                            quotient_pseudometric, random_grid_space,
                            shortest_path_completion, validate_space)


class TestValidate:
    def test_smallest_nondegenerate_space_is_valid(self):
        assert validate_space(["a", "b"], 2, [[0, 1], [1, 0]]).ok

    def test_triangle_violation_with_witness(self):
        report = validate_space(["a", "b", "c"], 4,
                                [[0, 1, 3], [1, 0, 1], [3, 1, 0]])
        kinds = {v.kind for v in report.problems}
        assert kinds == {"triangle"}
        witnesses = {v.witness for v in report.problems}
        assert (0, 2, 1) in witnesses  # d(a,c) > d(a,b) + d(b,c)

    def test_asymmetric_entry(self):
        report = validate_space(["a", "b"], 4, [[0, 1], [2, 0]])
        assert any(v.kind == "symmetry" for v in report.problems)

    def test_structural_errors_are_distinct_from_axioms(self):
        report = validate_space(["a", "b"], 4, [[0, 1]])
        assert report.structural and not report.axiom_violations
        report = validate_space(["a", "b"], 4, [[0, 9], [9, 0]])
        assert all(v.kind == "range" for v in report.problems)
        report = validate_space(["a", "b"], 4, [[0, 1.5], [1.5, 0]])
        assert report.structural

    def test_zero_off_diagonal_needs_pseudo_flag(self):
        assert not validate_space(["a", "b"], 4, [[0, 0], [0, 0]]).ok
        assert validate_space(["a", "b"], 4, [[0, 0], [0, 0]], pseudo=True).ok

    def test_nonzero_diagonal(self):
        report = validate_space(["a"], 4, [[1]])
        assert any(v.kind == "diagonal" for v in report.problems)

    def test_constructor_raises_on_invalid(self):
        with pytest.raises(ValidationError):
            FiniteMetricSpace(("a", "b"), 4, ((0, 1), (2, 0)))


class TestCompletion:
    def test_already_metric_is_unchanged(self):
        entries = ((0, 1, 2), (1, 0, 1), (2, 1, 0))
        spec = PartialSpec(("a", "b", "c"), 4, entries)
        assert shortest_path_completion(spec).dist == entries

    def test_single_chain(self):
        spec = PartialSpec(("a", "b", "c"), 4,
                           ((0, 1, None), (1, 0, 1), (None, 1, 0)))
        out = shortest_path_completion(spec)
        assert out.distance("a", "c") == 2

    def test_chain_capped_at_denominator(self):
        spec = PartialSpec(("a", "b", "c"), 4,
                           ((0, 3, None), (3, 0, 3), (None, 3, 0)))
        out = shortest_path_completion(spec)
        assert out.distance("a", "c") == 4

    def test_disconnected_names_unreachable_pair(self):
        spec = PartialSpec(("a", "b"), 4, ((0, None), (None, 0)))
        with pytest.raises(ValidationError) as e:
            shortest_path_completion(spec)
        assert "a" in str(e.value) and "b" in str(e.value)

    def test_idempotent(self):
        rng = random.Random(5)
        for _ in range(30):
            n = rng.randint(2, 6)
            q = rng.randint(2, 9)
            entries = [[None] * n for _ in range(n)]
            for i in range(n):
                entries[i][i] = 0
            # a random connected partial specification: a spanning path plus noise
            order = list(range(n))
            rng.shuffle(order)
            for i, j in zip(order, order[1:]):
                entries[i][j] = entries[j][i] = rng.randint(1, q)
            for _ in range(n):
                i, j = rng.randrange(n), rng.randrange(n)
                if i != j and entries[i][j] is None:
                    entries[i][j] = entries[j][i] = rng.randint(1, q)
            once = shortest_path_completion(
                PartialSpec(tuple(f"p{i}" for i in range(n)), q,
                            tuple(tuple(r) for r in entries)))
            twice = shortest_path_completion(
                PartialSpec(once.points, q, once.dist))
            assert once.dist == twice.dist

    def test_quadrangle_inequality_on_completions(self):
        rng = random.Random(9)
        for _ in range(20):
            space = random_grid_space(6, 10, rng.randrange(10 ** 6))
            for _ in range(40):
                i, j, k, l = rng.sample(range(6), 4)
                sides = [space.dist[i][j], space.dist[j][k],
                         space.dist[k][l], space.dist[l][i]]
                for s in range(4):
                    assert sides[s] <= sum(sides) - sides[s]


class TestQuotient:
    def test_metric_input_unchanged(self, two_point_q4):
        result = quotient_pseudometric(two_point_q4)
        assert result.space == two_point_q4
        assert result.classes == (("a",), ("b",))

    def test_forced_identification(self):
        space = FiniteMetricSpace(("a", "b", "c"), 4,
                                  ((0, 0, 2), (0, 0, 2), (2, 2, 0)), pseudo=True)
        result = quotient_pseudometric(space)
        assert result.space.points == ("a", "c")
        assert result.space.distance("a", "c") == 2
        assert result.projection["b"] == "a"

    def test_all_zero_collapses_to_a_point(self):
        space = FiniteMetricSpace(("a", "b", "c"), 4,
                                  ((0, 0, 0), (0, 0, 0), (0, 0, 0)), pseudo=True)
        result = quotient_pseudometric(space)
        assert result.space.n == 1

    def test_quotient_is_always_a_metric(self):
        rng = random.Random(3)
        for _ in range(20):
            base = random_grid_space(5, 6, rng.randrange(10 ** 6))
            rows = [list(r) for r in base.dist]
            # zero out one off-diagonal pair to force an identification
            i, j = rng.sample(range(5), 2)
            for k in range(5):
                rows[i][k] = rows[k][i] = rows[j][k]
            rows[i][i] = 0
            pseudo = FiniteMetricSpace(base.points, 6,
                                       tuple(tuple(r) for r in rows), pseudo=True)
            out = quotient_pseudometric(pseudo).space
            assert not out.pseudo


class TestAmalgam:
    def test_identity_glue_returns_the_space(self, two_point_q4):
        out = amalgam(two_point_q4, two_point_q4, {"a": "a", "b": "b"})
        assert out.points == two_point_q4.points
        assert out.dist == two_point_q4.dist

    def test_chain_through_glued_point(self):
        x = FiniteMetricSpace(("a", "m"), 4, ((0, 1), (1, 0)))
        y = FiniteMetricSpace(("m", "b"), 4, ((0, 1), (1, 0)))
        out = amalgam(x, y, {"m": "m"})
        assert out.distance("a", "b") == 2

    def test_chain_capped(self):
        x = FiniteMetricSpace(("a", "m"), 4, ((0, 3), (3, 0)))
        y = FiniteMetricSpace(("m", "b"), 4, ((0, 3), (3, 0)))
        out = amalgam(x, y, {"m": "m"})
        assert out.distance("a", "b") == 4

    def test_glue_must_preserve_distances(self):
        x = FiniteMetricSpace(("a", "b"), 4, ((0, 1), (1, 0)))
        y = FiniteMetricSpace(("u", "v"), 4, ((0, 2), (2, 0)))
        with pytest.raises(ValidationError) as e:
            amalgam(x, y, {"a": "u", "b": "v"})
        assert e.value.witness is not None

    def test_restrictions_embed_isometrically(self):
        rng = random.Random(21)
        for _ in range(25):
            x = random_grid_space(rng.randint(2, 5), 8, rng.randrange(10 ** 6))
            y = random_grid_space(rng.randint(2, 5), 8, rng.randrange(10 ** 6))
            # glue a random pair of same-distance point pairs when one exists
            glue = {}
            for a1 in range(x.n):
                for a2 in range(a1 + 1, x.n):
                    for b1 in range(y.n):
                        for b2 in range(y.n):
                            if b1 != b2 and x.dist[a1][a2] == y.dist[b1][b2]:
                                glue = {x.points[a1]: y.points[b1],
                                        x.points[a2]: y.points[b2]}
                                break
                        if glue:
                            break
                    if glue:
                        break
                if glue:
                    break
            if not glue:
                glue = {x.points[0]: y.points[0]}
            y = FiniteMetricSpace(tuple(f"y_{p}" if p not in glue.values() else p
                                        for p in y.points), 8, y.dist)
            out = amalgam(x, y, glue)
            for p in x.points:
                for q_ in x.points:
                    assert out.distance(p, q_) == x.distance(p, q_)
            inv = {v: k for k, v in glue.items()}
            for p in y.points:
                for q_ in y.points:
                    pn = inv.get(p, p)
                    qn = inv.get(q_, q_)
                    assert out.distance(pn, qn) == y.distance(p, q_)

    def test_empty_glue_fills_with_cap(self):
        x = FiniteMetricSpace(("a",), 4, ((0,),))
        y = FiniteMetricSpace(("b",), 4, ((0,),))
        out = amalgam(x, y, {})
        assert out.distance("a", "b") == 4


class TestRandomGridSpace:
    def test_single_point(self):
        space = random_grid_space(1, 4, 0)
        assert space.n == 1 and space.dist == ((0,),)

    def test_deterministic_per_seed(self):
        assert random_grid_space(5, 8, 1) == random_grid_space(5, 8, 1)
        assert random_grid_space(5, 8, 1) != random_grid_space(5, 8, 2)

    def test_output_validates(self):
        space = random_grid_space(5, 8, 1)
        assert validate_space(space.points, 8, space.dist).ok

    def test_many_seeds_validate(self):
        for seed in range(40):
            space = random_grid_space(6, 11, seed)
            assert validate_space(space.points, 11, space.dist).ok
