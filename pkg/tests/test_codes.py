import itertools

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from coverlab.bits import parse_bits
from coverlab.codes import (
    LinearCode,
    bilateral_min_distance,
    dual,
    dual_bch,
    extend_code,
    full_code,
    hamming_code,
    has_small_dependency,
    min_distance,
    random_linear_code,
    read_code,
    repetition_code,
    sum_code,
    write_code,
    zero_code,
)
from coverlab.covering import covering_radius

from conftest import all_subspaces

HAMMING_7_4 = ["1000110", "0100101", "0010011", "0001111"]


def brute_min_weight(code):
    return min(bin(int(w)).count("1") for w in code.codeword_ints()[1:])


def dependency_oracle(cols, k, target=0):
    cols = [int(c) for c in cols]
    for size in range(1, k + 1):
        for sub in itertools.combinations(cols, size):
            acc = 0
            for c in sub:
                acc ^= c
            if acc == target:
                return True
    return False


def orthogonal(a, b):
    return all((x & y).bit_count() % 2 == 0 for x in a.rows for y in b.rows)


class TestDistances:
    def test_repetition(self):
        assert min_distance(repetition_code(9)) == 9

    def test_hamming_7_4(self):
        c = LinearCode(7, [parse_bits(r) for r in HAMMING_7_4])
        assert min_distance(c) == 3
        d = dual(c)
        assert d.k == 3 and set(d.weights()[1:]) == {4}

    def test_bch_2_4(self):
        bch = dual_bch(2, 4).dual
        assert bch.k == 7
        assert min_distance(bch) >= 5
        assert min_distance(bch) == brute_min_weight(bch)

    def test_simplex_bilateral(self):
        assert bilateral_min_distance(dual_bch(1, 4)) == 7

    def test_all_ones_gives_zero(self):
        assert bilateral_min_distance(repetition_code(6)) == 0
        # large-code path: dual of the [15,4] simplex contains the all-ones word
        assert dual_bch(1, 4).dual.bilateral_min_distance == 0

    def test_large_code_path_matches_enumeration(self):
        # k = 21 > 20 and k > n - k forces the dependency search
        c = hamming_code(5).dual.dual
        assert c.k == 26
        assert c.min_distance == 3
        small = random_linear_code(24, 22, 7)
        assert small.min_distance == brute_min_weight(small)
        assert small.bilateral_min_distance == min(
            min(w, 24 - w) for w in (bin(int(x)).count("1") for x in small.codeword_ints()[1:]))

    def test_zero_code_distance_undefined(self):
        with pytest.raises(ValueError):
            min_distance(zero_code(4))


class TestDependencySearch:
    @settings(max_examples=50, deadline=None)
    @given(st.integers(2, 9), st.integers(1, 6), st.integers(0, 10_000), st.booleans())
    def test_matches_brute_force(self, n, k, seed, use_target):
        rng = np.random.default_rng(seed)
        cols = rng.integers(0, 1 << 6, size=n).astype(np.uint64)
        target = int(np.bitwise_xor.reduce(cols)) if use_target else 0
        assert has_small_dependency(cols, k, target) == dependency_oracle(cols, k, target)


class TestDual:
    def test_identity_dual(self):
        assert full_code(5).dual.k == 0

    @pytest.mark.parametrize("seed", range(10))
    def test_rank_nullity_and_orthogonality(self, seed):
        c = random_linear_code(16, 1 + seed, seed)
        d = dual(c)
        assert c.k + d.k == 16
        assert orthogonal(c, d)
        dd = dual(d)
        assert dd.k == c.k and all(c.contains(r) for r in dd.rows)


class TestDualBCH:
    def test_simplex(self):
        c = dual_bch(1, 4)
        assert (c.n, c.k) == (15, 4)
        assert set(c.weights()[1:]) == {8}

    def test_dual_bch_2_5(self):
        c = dual_bch(2, 5)
        assert (c.n, c.k) == (31, 10)
        assert set(c.weights()[1:]) == {12, 16, 20}

    def test_dimension_3_6(self):
        assert dual_bch(3, 6).k == 18

    @pytest.mark.parametrize("s,m", [(s, m) for m in range(2, 7) for s in range(1, 8)
                                     if 2 * s - 2 < 2 ** (m / 2)])
    def test_family(self, s, m):
        try:
            c = dual_bch(s, m)
        except ValueError as exc:
            # only allowed when the cosets collide, never silently
            assert "cosets" in str(exc)
            return
        n = 2 ** m - 1
        assert (c.n, c.k) == (n, s * m)
        assert orthogonal(c, c.dual)
        if c.k <= 20:
            w = c.weights()[1:]
            assert np.all(np.abs(w - 2 ** (m - 1)) <= (s - 1) * 2 ** (m / 2) + 1e-9)
        assert c.dual.min_distance >= min(2 * s + 1, n)

    def test_precondition(self):
        with pytest.raises(ValueError):
            dual_bch(4, 4)
        with pytest.raises(ValueError):
            dual_bch(1, 1)

    def test_deterministic_rows(self):
        assert dual_bch(2, 5).rows == dual_bch(2, 5).rows


class TestExtendAndSum:
    def test_extend_zero_code(self):
        q = extend_code(zero_code(3), 2)
        assert (q.n, q.k) == (5, 2)
        assert sorted(int(x) for x in q.codeword_ints()) == [0, 8, 16, 24]

    def test_dual_ends_in_zeros(self):
        c = random_linear_code(9, 4, 3)
        q = extend_code(c, 3)
        for w in q.dual.codeword_ints():
            assert int(w) >> 9 == 0
        assert np.array_equal(q.dual.weight_spectrum()[:10], c.dual.weight_spectrum())

    def test_bilateral_after_extension(self):
        q = extend_code(dual_bch(3, 6), 7)
        assert q.dual.bilateral_min_distance >= 7

    @pytest.mark.parametrize("seed", range(8))
    def test_bilateral_guarantee_random(self, seed):
        c = random_linear_code(10, 6, seed)
        d = c.dual.min_distance
        q = extend_code(c, d)
        assert q.dual.bilateral_min_distance >= d

    def test_sum(self):
        c = random_linear_code(10, 4, 1)
        s = sum_code(c, zero_code(10))
        assert s.k == c.k and all(c.contains(r) for r in s.rows)
        assert sum_code(c, c).k == c.k
        d = random_linear_code(10, 5, 2)
        assert sum_code(c, d).k <= c.k + d.k

    def test_sum_length_mismatch(self):
        with pytest.raises(ValueError):
            sum_code(zero_code(3), zero_code(4))


class TestRandomAndIO:
    def test_reproducible(self):
        assert random_linear_code(20, 8, 99).rows == random_linear_code(20, 8, 99).rows

    def test_full_dimension_covers(self):
        assert covering_radius(random_linear_code(8, 8, 0)) == 0

    def test_dependent_rows_rejected(self):
        with pytest.raises(ValueError):
            LinearCode(3, [0b011, 0b110, 0b101])

    def test_round_trip(self, tmp_path):
        c = dual_bch(2, 4)
        path = tmp_path / "c.txt"
        write_code(c, path)
        assert read_code(path).rows == c.rows

    def test_malformed(self, tmp_path):
        path = tmp_path / "bad.txt"
        path.write_text("4 2\n1010\n")
        with pytest.raises(ValueError):
            read_code(path)
        path.write_text("4 1\n10a0\n")
        with pytest.raises(ValueError):
            read_code(path)


def test_all_small_codes_distance_consistency():
    for rows in all_subspaces(5, max_dim=3):
        if not rows:
            continue
        c = LinearCode(5, rows)
        assert c.min_distance == brute_min_weight(c)
        assert c.k + c.dual.k == 5


def trace_code(s, m):
    """Span of (Tr(beta * alpha^(i j)))_j over odd i < 2s and beta in a GF(2^m) basis."""
    from coverlab.gf import FieldGF2m

    field = FieldGF2m(m)
    n = field.order

    def tr(x):
        total, y = 0, x
        for _ in range(m):
            total ^= y
            y = field.mul(y, y)
        return total

    rows = []
    for i in range(1, 2 * s, 2):
        for t in range(m):
            beta = int(field.alpha_pow(t))
            row = 0
            for j in range(n):
                if tr(field.mul(beta, int(field.alpha_pow(i * j)))):
                    row |= 1 << j
            rows.append(row)
    return LinearCode.span(n, rows)


@pytest.mark.parametrize("s,m", [(1, 3), (1, 4), (2, 4), (2, 5), (3, 5), (3, 6)])
def test_dual_bch_equals_trace_code(s, m):
    a, b = dual_bch(s, m), trace_code(s, m)
    assert a.k == b.k == s * m
    assert all(a.contains(r) for r in b.rows)
