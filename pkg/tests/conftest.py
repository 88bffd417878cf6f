import itertools

import numpy as np
import pytest


def direct_xor_convolve(f, g):
    """O(4^n) double sum: out[x] = sum_y f[y] g[x ^ y]."""
    size = len(f)
    out = np.zeros(size, dtype=np.result_type(f, g))
    for x in range(size):
        for y in range(size):
            out[x] += f[y] * g[x ^ y]
    return out


def direct_transform(f):
    """2^-n sum_x f(x) (-1)^<x,z>, one z at a time."""
    size = len(f)
    out = np.zeros(size, dtype=np.result_type(f, np.float64))
    for z in range(size):
        for x in range(size):
            out[z] += f[x] * (-1) ** bin(x & z).count("1")
    return out / size


def all_vectors(n):
    return range(1 << n)


def all_subspaces(n, max_dim=None):
    """Every subspace of GF(2)^n exactly once, as its reduced echelon basis.

    A basis row with pivot p (its lowest set bit) may carry any bits above p
    outside the other pivot columns.
    """
    top = n if max_dim is None else max_dim
    out = []
    for k in range(top + 1):
        for pivots in itertools.combinations(range(n), k):
            pivot_set = set(pivots)
            frees = [[j for j in range(p + 1, n) if j not in pivot_set] for p in pivots]
            choices = [range(1 << len(f)) for f in frees]
            for pick in itertools.product(*choices):
                rows = []
                for p, f, bits in zip(pivots, frees, pick):
                    row = 1 << p
                    for t, j in enumerate(f):
                        if (bits >> t) & 1:
                            row |= 1 << j
                    rows.append(row)
                out.append(tuple(rows))
    return out


@pytest.fixture
def rng():
    return np.random.default_rng(12345)
