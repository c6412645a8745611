"""Counting tuple factorizations in symmetric groups.

This is the reference pipeline: twisted counts are defined as weighted
numbers of tuples

    (sigma, eta_1, ..., eta_{g-1}, alpha)   in   S_{2d}^{g+1}

where sigma is twist-symmetric and admissible, each eta_s is a transposition
(i j) with j != tau(i), alpha centralizes the pairing involution tau, and

    eta_{g-1} * ... * eta_1 * sigma * (tau eta_1 tau) * ... * (tau eta_{g-1} tau)
        = alpha * sigma * alpha^{-1}

(first transposition innermost).  The count, divided by 2^d * d!, is the
twisted degree-d genus-g invariant; "connected" restricts to tuples whose
entries together with the conjugated transpositions generate a transitive
subgroup.

The classical (untwisted) analogue over the torus is included as a
smoke-test companion: tuples (sigma, tau_1..tau_{2g-2}, alpha) in S_d with
tau_{2g-2} ... tau_1 sigma = alpha sigma alpha^{-1}, divided by d!.

Searches are budgeted: a query whose projected tuple-tree size exceeds the
budget raises BudgetExceeded instead of running for hours.  The default
budget is 10**9 nodes and may be overridden per call or via the TH_BUDGET
environment variable.
"""

import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from time import perf_counter

from . import perms
from ._kernel import KERNEL_BACKEND, count_for_sigma

DEFAULT_BUDGET = 10**9


class BudgetExceeded(RuntimeError):
    """Raised when a query's projected search size exceeds the budget."""

    def __init__(self, projected, budget):
        super().__init__(
            "projected search size %d exceeds budget %d; "
            "pass a larger budget= or set TH_BUDGET" % (projected, budget)
        )
        self.projected = projected
        self.budget = budget


def resolve_budget(budget=None):
    """Explicit argument wins, then TH_BUDGET, then the default."""
    if budget is not None:
        return int(budget)
    env = os.environ.get("TH_BUDGET")
    if env is not None and env.strip():
        try:
            return int(env)
        except ValueError:
            raise ValueError("TH_BUDGET must be an integer, got %r" % env) from None
    return DEFAULT_BUDGET


@dataclass(frozen=True)
class HurwitzQuery:
    kind: str  # "twisted" | "classical"
    d: int
    g: int
    connected: bool


@dataclass(frozen=True)
class HurwitzResult:
    query: HurwitzQuery
    tuple_count: int
    normalization: int
    value: Fraction
    backend: str
    elapsed_ms: float


def _check_dg(d, g):
    if d < 1:
        raise ValueError("degree d must be >= 1, got %r" % (d,))
    if g < 1:
        raise ValueError("genus g must be >= 1, got %r" % (g,))


@lru_cache(maxsize=None)
def _twisted_tables(d):
    """(etas, eta_taus, alphas, sigmas) for degree d, all sorted tuples."""
    tau = perms.pairing_involution(d)
    etas = perms.admissible_transpositions(d)
    eta_taus = tuple(perms.conjugate(e, tau) for e in etas)
    alphas = perms.hyperoctahedral_group(d)
    sigmas = perms.twist_admissible_set(d)
    return etas, eta_taus, alphas, sigmas


def _alpha_lookup(sigma, alphas):
    """Map bytes(alpha sigma alpha^{-1}) -> list of alpha indices."""
    table = {}
    for ai, alpha in enumerate(alphas):
        key = bytes(perms.conjugate(sigma, alpha))
        table.setdefault(key, []).append(ai)
    return table


def _twisted_projected(d, g):
    etas, _, alphas, sigmas = _twisted_tables(d)
    return len(sigmas) * len(etas) ** (g - 1) * len(alphas)


def _count_sigma_range(args):
    """Worker: count tuples for sigmas[lo:hi].  Rebuilds tables locally so
    only small picklable arguments cross the process boundary."""
    d, g, connected, lo, hi = args
    etas, eta_taus, alphas, sigmas = _twisted_tables(d)
    total = 0
    for sigma in sigmas[lo:hi]:
        lookup = _alpha_lookup(sigma, alphas)
        total += count_for_sigma(sigma, etas, eta_taus, alphas, lookup, g - 1, connected)
    return total


def count_twisted(d, g, connected=True, budget=None, threads=1):
    """Twisted degree-d genus-g count as an exact Fraction (in a HurwitzResult)."""
    _check_dg(d, g)
    limit = resolve_budget(budget)
    projected = _twisted_projected(d, g)
    if projected > limit:
        raise BudgetExceeded(projected, limit)

    start = perf_counter()
    _, _, alphas, sigmas = _twisted_tables(d)
    if threads > 1 and len(sigmas) > 1:
        workers = min(threads, len(sigmas))
        step = -(-len(sigmas) // workers)
        blocks = [
            (d, g, connected, lo, min(lo + step, len(sigmas)))
            for lo in range(0, len(sigmas), step)
        ]
        with ProcessPoolExecutor(max_workers=workers) as pool:
            total = sum(pool.map(_count_sigma_range, blocks))
    else:
        total = _count_sigma_range((d, g, connected, 0, len(sigmas)))
    elapsed = (perf_counter() - start) * 1000.0

    norm = 2**d * _factorial(d)
    return HurwitzResult(
        query=HurwitzQuery("twisted", d, g, connected),
        tuple_count=total,
        normalization=norm,
        value=Fraction(total, norm),
        backend=KERNEL_BACKEND,
        elapsed_ms=elapsed,
    )


def _factorial(n):
    out = 1
    for k in range(2, n + 1):
        out *= k
    return out


def enumerate_twisted_tuples(d, g, connected=True, budget=None):
    """Yield the counted tuples (sigma, (eta_1, ..., eta_{g-1}), alpha).

    Deterministic order: sigma ascending, then transposition slots in table
    order (outer slots vary slowest), then alpha ascending.  Transitivity is
    checked independently of the counting kernel, so comparing the length of
    this stream against count_twisted().tuple_count is a real consistency
    test, not a tautology.
    """
    _check_dg(d, g)
    limit = resolve_budget(budget)
    projected = _twisted_projected(d, g)
    if projected > limit:
        raise BudgetExceeded(projected, limit)

    tau = perms.pairing_involution(d)
    etas, eta_taus, alphas, sigmas = _twisted_tables(d)
    n = 2 * d

    for sigma in sigmas:
        lookup = _alpha_lookup(sigma, alphas)

        def walk(product, chosen):
            if len(chosen) == g - 1:
                for ai in lookup.get(bytes(product), ()):
                    alpha = alphas[ai]
                    if connected:
                        gens = [sigma, alpha]
                        gens.extend(etas[e] for e in chosen)
                        gens.extend(eta_taus[e] for e in chosen)
                        if not perms.acts_transitively(gens, n):
                            continue
                    yield sigma, tuple(etas[e] for e in chosen), alpha
                return
            for e in range(len(etas)):
                nxt = perms.compose(etas[e], perms.compose(product, eta_taus[e]))
                yield from walk(nxt, chosen + (e,))

        yield from walk(sigma, ())


@lru_cache(maxsize=None)
def _classical_tables(d):
    group = perms.symmetric_group(d)
    swaps = tuple(
        perms.transposition(d, i, j) for i in range(d) for j in range(i + 1, d)
    )
    return group, swaps


def count_classical(d, g, connected=True, budget=None):
    """Torus cover count: (sigma, tau_1..tau_{2g-2}, alpha) tuples over d!."""
    _check_dg(d, g)
    limit = resolve_budget(budget)
    group, swaps = _classical_tables(d)
    projected = len(group) ** 2 * max(len(swaps), 1) ** (2 * g - 2)
    if projected > limit:
        raise BudgetExceeded(projected, limit)

    start = perf_counter()
    total = 0
    for sigma in group:
        lookup = _alpha_lookup(sigma, group)
        total += _classical_walk(sigma, group, swaps, lookup, 2 * g - 2, connected, d)
    elapsed = (perf_counter() - start) * 1000.0

    return HurwitzResult(
        query=HurwitzQuery("classical", d, g, connected),
        tuple_count=total,
        normalization=_factorial(d),
        value=Fraction(total, _factorial(d)),
        backend="python",
        elapsed_ms=elapsed,
    )


def _classical_walk(sigma, group, swaps, lookup, depth, connected, n):
    count = 0
    stack = [(sigma, (), 0)]
    while stack:
        product, chosen, level = stack.pop()
        if level == depth:
            for ai in lookup.get(bytes(product), ()):
                alpha = group[ai]
                if connected:
                    gens = [sigma, alpha] + [swaps[s] for s in chosen]
                    if not perms.acts_transitively(gens, n):
                        continue
                count += 1
            continue
        for s in range(len(swaps)):
            stack.append((perms.compose(swaps[s], product), chosen + (s,), level + 1))
    return count
