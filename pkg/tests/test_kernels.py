"""The two count kernels (pure Python / compiled) must be interchangeable."""

import importlib.util
import os
import subprocess
import sys

import pytest

from twisted_hurwitz import KERNEL_BACKEND
from twisted_hurwitz.factorizations import _alpha_lookup, _twisted_tables
from twisted_hurwitz import _slowcount

HAVE_EXT = importlib.util.find_spec("twisted_hurwitz._fastcount") is not None


def test_backend_is_one_of_the_two():
    assert KERNEL_BACKEND in ("python", "cython")


def _run_all_sigmas(kernel, d, g, connected):
    etas, eta_taus, alphas, sigmas = _twisted_tables(d)
    total = 0
    for sigma in sigmas:
        lookup = _alpha_lookup(sigma, alphas)
        total += kernel.count_for_sigma(
            sigma, etas, eta_taus, alphas, lookup, g - 1, connected
        )
    return total


@pytest.mark.skipif(not HAVE_EXT, reason="compiled extension not built")
@pytest.mark.parametrize("d", [1, 2, 3])
@pytest.mark.parametrize("g", [1, 2, 3, 4])
@pytest.mark.parametrize("connected", [True, False])
def test_fast_and_slow_kernels_agree(d, g, connected):
    from twisted_hurwitz import _fastcount

    assert _fastcount.BACKEND == "cython"
    slow = _run_all_sigmas(_slowcount, d, g, connected)
    fast = _run_all_sigmas(_fastcount, d, g, connected)
    assert slow == fast


def test_env_flag_forces_python_backend():
    env = dict(os.environ, TH_NO_EXT="1")
    out = subprocess.run(
        [sys.executable, "-c", "import twisted_hurwitz; print(twisted_hurwitz.KERNEL_BACKEND)"],
        env=env,
        capture_output=True,
        text=True,
        check=True,
    )
    assert out.stdout.strip() == "python"


def test_zero_depth_counts_commuting_alphas():
    # g = 1: no transposition slots at all; the kernel must still work
    etas, eta_taus, alphas, sigmas = _twisted_tables(2)
    total = 0
    for sigma in sigmas:
        lookup = _alpha_lookup(sigma, alphas)
        total += _slowcount.count_for_sigma(
            sigma, etas, eta_taus, alphas, lookup, 0, False
        )
    # oracle: sum over the three twist-admissible sigmas of their
    # hyperoctahedral centralizer orders (8 + 4 + 4)
    assert total == 16
