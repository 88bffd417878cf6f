import math

import numpy as np
import pytest

from coverlab.codes import dual_bch, extend_code, full_code, random_linear_code
from coverlab.covering import ball_volume, uncovered_fraction
from coverlab.spectral import (
    SupportDistribution,
    WeightDistribution,
    avg_coset_l1,
    avg_coset_l1_fraction,
    binomial_dist,
    binomial_exact,
    coset_l1_samples,
    coset_l1_values,
    coset_representatives,
    convolve,
    e_theta,
    exp_cube,
    exp_fourier_closed_form,
    exp_fourier_transform,
    exp_fourier_unimodular,
    l1_to_binomial,
    linf_to_binomial,
    mse_translate_lhs,
    mse_translate_rhs,
    read_distribution,
    translate,
    uniform_cos_moment,
    uniform_e_theta,
    weight_dist,
)
from coverlab.bits import walsh_hadamard

from conftest import direct_xor_convolve


def random_mu(n, rng, size=None):
    size = size or int(rng.integers(1, min(1 << n, 40) + 1))
    pts = rng.choice(1 << n, size=size, replace=False)
    return SupportDistribution(n, pts, rng.dirichlet(np.ones(size)))


class TestDistributions:
    def test_binomial(self):
        assert np.allclose(binomial_dist(1).probs, [0.5, 0.5])
        assert np.allclose(binomial_dist(2).probs, [0.25, 0.5, 0.25])
        for n in (1, 10, 64):
            assert sum(binomial_exact(n)) == 1

    def test_weight_distribution_validation(self):
        with pytest.raises(ValueError):
            WeightDistribution(np.array([0.5, 0.6]))
        with pytest.raises(ValueError):
            WeightDistribution(np.array([-0.1, 1.1]))

    def test_support_validation(self):
        with pytest.raises(ValueError):
            SupportDistribution(3, [1, 1], [0.5, 0.5])
        with pytest.raises(ValueError):
            SupportDistribution(3, [8], [1.0])
        with pytest.raises(ValueError):
            SupportDistribution(3, [1, 2], [0.5, 0.4])

    def test_weight_dist(self):
        assert np.allclose(weight_dist(SupportDistribution.uniform(7)).probs, binomial_dist(7).probs)
        assert np.allclose(weight_dist(SupportDistribution.point(5, 0b10110)).probs,
                           np.eye(6)[3])
        simplex = weight_dist(SupportDistribution.from_code(dual_bch(1, 4))).probs
        expected = np.zeros(16)
        expected[0], expected[8] = 1 / 16, 15 / 16
        assert np.allclose(simplex, expected)

    def test_translate(self, rng):
        mu = random_mu(6, rng)
        same = translate(mu, 0)
        assert np.array_equal(same.support, mu.support)
        back = translate(translate(mu, 0b101101), 0b101101)
        assert np.array_equal(back.support, mu.support)
        with pytest.raises(ValueError):
            translate(mu, 1 << 6)

    def test_coset_weight_distribution(self):
        c = random_linear_code(8, 3, 5)
        u = 0b10010011
        mu = translate(SupportDistribution.from_code(c), u)
        direct = np.bincount([bin(int(x) ^ u).count("1") for x in c.codeword_ints()],
                             minlength=9) / 8
        assert np.allclose(weight_dist(mu).probs, direct)

    def test_convolve(self, rng):
        mu = random_mu(5, rng)
        assert np.allclose(convolve(SupportDistribution.point(5), mu).to_cube(), mu.to_cube())
        code = SupportDistribution.from_code(random_linear_code(6, 3, 2))
        assert np.allclose(convolve(code, code).to_cube(), code.to_cube())
        for n in (2, 4, 6):
            a, b = random_mu(n, rng), random_mu(n, rng)
            assert np.allclose(convolve(a, b).to_cube(),
                               direct_xor_convolve(a.to_cube(), b.to_cube()), atol=1e-12)

    def test_read_distribution(self, tmp_path):
        path = tmp_path / "mu.txt"
        path.write_text("3 2\n101 1/4\n011 0.75\n")
        mu = read_distribution(path)
        assert mu.n == 3 and len(mu) == 2
        assert mu.character(0b001) == pytest.approx(-0.25 + 0.75)
        assert mu.character(0b100) == pytest.approx(-1.0)
        path.write_text("3 2\n101 1/4\n")
        with pytest.raises(ValueError):
            read_distribution(path)


class TestETheta:
    def test_basic(self, rng):
        mu = random_mu(6, rng)
        assert e_theta(mu, 0.0) == pytest.approx(1.0)
        assert e_theta(SupportDistribution.point(6, 0b111), 0.4) == pytest.approx(np.exp(1.2j))
        assert e_theta(SupportDistribution.uniform(6), 0.9) == pytest.approx(uniform_e_theta(6, 0.9))

    @pytest.mark.parametrize("theta", [0.1, 1.0, 2.5, math.pi])
    def test_uniform_modulus(self, theta):
        assert abs(uniform_e_theta(9, theta)) ** 2 == pytest.approx(uniform_cos_moment(9, theta),
                                                                    abs=1e-10)


class TestMseIdentity:
    def test_uniform(self):
        mu = SupportDistribution.uniform(6)
        assert mse_translate_lhs(mu, 1.0) == pytest.approx(0, abs=1e-12)
        assert mse_translate_rhs(mu, 1.0) == pytest.approx(0, abs=1e-12)

    def test_point_mass(self):
        theta = math.pi / 3
        expected = 1 - ((1 + math.cos(theta)) / 2) ** 6
        mu = SupportDistribution.point(6, 0b001011)
        assert mse_translate_lhs(mu, theta) == pytest.approx(expected, abs=1e-12)
        assert mse_translate_rhs(mu, theta) == pytest.approx(expected, abs=1e-12)

    @pytest.mark.parametrize("n", range(4, 11))
    def test_identity(self, n, rng):
        for _ in range(10):
            mu = random_mu(n, rng)
            theta = float(rng.uniform(0, 2 * math.pi))
            assert abs(mse_translate_lhs(mu, theta) - mse_translate_rhs(mu, theta)) < 1e-9

    def test_linear_code_reduction(self):
        code = random_linear_code(9, 4, 1)
        mu = SupportDistribution.from_code(code)
        theta = 0.8
        direct = float(np.cos(theta) ** np.arange(10) @ weight_dist(mu).probs)
        assert mse_translate_rhs(mu, theta) == pytest.approx(direct - uniform_cos_moment(9, theta))

    def test_sampled_mode_close(self, rng):
        mu = random_mu(12, rng)
        exact = mse_translate_lhs(mu, 1.1)
        sampled = mse_translate_lhs(mu, 1.1, mode="sampled", samples=20_000, seed=3)
        assert sampled == pytest.approx(exact, abs=0.05)

    def test_exact_mode_limit(self):
        mu = SupportDistribution.point(23)
        with pytest.raises(ValueError):
            mse_translate_lhs(mu, 1.0)


class TestL1:
    def test_distances(self):
        b = binomial_dist(5)
        assert l1_to_binomial(b) == 0 and linf_to_binomial(b) == 0
        assert l1_to_binomial(np.array([1.0, 0, 0])) == pytest.approx(1.5)

    def test_linf_below_l1(self, rng):
        for _ in range(20):
            wd = weight_dist(random_mu(8, rng))
            assert linf_to_binomial(wd) <= l1_to_binomial(wd) + 1e-15

    def test_full_code(self):
        assert avg_coset_l1(full_code(6)) == pytest.approx(0, abs=1e-15)

    def test_coset_representatives_distinct_cosets(self):
        c = random_linear_code(9, 4, 3)
        reps = coset_representatives(c)
        syndromes = {tuple((int(r) & h).bit_count() % 2 for h in c.dual.rows) for r in reps}
        assert len(reps) == 32 and len(syndromes) == 32

    def test_exact_matches_full_sweep(self):
        c = random_linear_code(10, 4, 8)
        full = coset_l1_values(c, np.arange(1 << 10, dtype=np.uint64)).mean()
        assert avg_coset_l1(c) == pytest.approx(full, abs=1e-12)
        assert float(avg_coset_l1_fraction(c)) == pytest.approx(full, abs=1e-12)

    @pytest.mark.parametrize("d", [2, 4, 5])
    def test_simplex_extended_exact_vs_sampled(self, d):
        q = extend_code(dual_bch(1, 4), d)
        exact = avg_coset_l1(q)
        vals = coset_l1_samples(q, 4000, seed=d)
        half = 2.576 * vals.std(ddof=1) / math.sqrt(len(vals))
        assert abs(vals.mean() - exact) <= half + 1e-12

    def test_permutation_invariance(self, rng):
        c = random_linear_code(9, 4, 11)
        perm = rng.permutation(9)
        rows = [sum(((r >> j) & 1) << int(perm[j]) for j in range(9)) for r in c.rows]
        from coverlab.codes import LinearCode
        assert avg_coset_l1(LinearCode(9, rows)) == pytest.approx(avg_coset_l1(c), abs=1e-12)

    @pytest.mark.parametrize("seed", range(6))
    def test_markov_chain(self, seed):
        q = random_linear_code(12, 6 + seed % 4, seed)
        avg = avg_coset_l1_fraction(q)
        for r in range(3, 7):
            assert uncovered_fraction(q, r) <= avg / ball_volume(12, r)


class TestExponentialFourier:
    @pytest.mark.parametrize("r", [-0.9, 0.0, 0.37, 1.0])
    @pytest.mark.parametrize("n", [1, 4, 10])
    def test_real(self, r, n):
        assert np.max(np.abs(exp_fourier_transform(n, r) - exp_fourier_closed_form(n, r))) < 1e-10

    @pytest.mark.parametrize("theta", [0.3, 1.0, 2.5, -1.2])
    def test_unimodular(self, theta):
        n = 8
        r = complex(np.exp(1j * theta))
        fast = walsh_hadamard(exp_cube(n, r))
        assert np.max(np.abs(fast - exp_fourier_unimodular(n, theta))) < 1e-10
        assert np.max(np.abs(fast - exp_fourier_closed_form(n, r))) < 1e-10
