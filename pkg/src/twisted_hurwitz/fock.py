"""Bosonic Fock-space pipeline for the disconnected twisted counts.

States are finite linear combinations of basis vectors b_mu indexed by
partitions, with coefficients that are polynomials in a bookkeeping variable
z (z grades the number of 4-valent vertices in the covers the matrix
elements enumerate).  The ladder operators alpha_n obey

    [alpha_n, alpha_m] = n * delta(n, -m),

negative indices create parts, positive ones annihilate them, and the inner
product makes alpha_n adjoint to alpha_{-n} with <v_empty|v_empty> = 1, so
<b_mu|b_nu> = delta(mu,nu) * prod(mu_i) * |Aut(mu)|.

The vertex operator is

    M = 2 * ( sum_{k>0} (k-1) * alpha_{-k} alpha_k * z
              + 1/2 * sum_{i,j>0} (alpha_{-j} alpha_{-i} alpha_{i+j}
                                   + alpha_{-(i+j)} alpha_i alpha_j) ).

The disconnected twisted double number with profiles mu, nu and g-1 branch
points is

    (1 / (prod mu_i * prod nu_j)) *
        sum_c coef_{z^c} <b_mu | M^{g-1} | b_nu> * 2^{(g-c+1)/2} / 2^{c+1},

and the disconnected invariant of the elliptic curve sums this over mu = nu
running through partitions of d, weighted by 1/(|Aut(mu)| prod mu_i).  Note
the per-branch-point doubling lives entirely in the vertex operator's global
factor of 2 (M^{g-1} contributes 2^{g-1}); applying another 2^{g-1} on top
would double-count it, as the cross-check against the factorization pipeline
shows.  Only even exponents g-c+1 may carry nonzero coefficients; a nonzero
coefficient at odd g-c+1 signals a transcription bug and raises
ParityViolation instead of being silently skipped.
"""

from __future__ import annotations

import warnings
from collections import Counter
from fractions import Fraction
from functools import lru_cache
from math import factorial

# ---------------------------------------------------------------------------
# partitions


def partitions(n):
    """All partitions of n as weakly decreasing tuples, reverse-lex order."""
    if n == 0:
        yield ()
        return

    def rec(remaining, largest):
        if remaining == 0:
            yield ()
            return
        for first in range(min(remaining, largest), 0, -1):
            for rest in rec(remaining - first, first):
                yield (first,) + rest

    yield from rec(n, n)


def check_partition(mu):
    mu = tuple(mu)
    if any(p < 1 for p in mu):
        raise ValueError("partition parts must be positive: %r" % (mu,))
    if any(mu[i] < mu[i + 1] for i in range(len(mu) - 1)):
        raise ValueError("partition must be weakly decreasing: %r" % (mu,))
    return mu


def aut_count(mu):
    """|Aut(mu)| = product over part values of (multiplicity!)."""
    out = 1
    for m in Counter(mu).values():
        out *= factorial(m)
    return out


def parts_product(mu):
    out = 1
    for p in mu:
        out *= p
    return out


# ---------------------------------------------------------------------------
# z-polynomials


class ZPoly:
    """Polynomial in z with Fraction coefficients, dict {exponent: coeff}."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs=None):
        self.coeffs = {
            e: Fraction(c) for e, c in (coeffs or {}).items() if c != 0
        }

    @classmethod
    def const(cls, c):
        return cls({0: Fraction(c)})

    def __add__(self, other):
        out = dict(self.coeffs)
        for e, c in other.coeffs.items():
            out[e] = out.get(e, Fraction(0)) + c
        return ZPoly(out)

    def __mul__(self, other):
        if isinstance(other, ZPoly):
            out = {}
            for e1, c1 in self.coeffs.items():
                for e2, c2 in other.coeffs.items():
                    out[e1 + e2] = out.get(e1 + e2, Fraction(0)) + c1 * c2
            return ZPoly(out)
        return self.scale(other)

    __rmul__ = __mul__

    def scale(self, c):
        return ZPoly({e: v * Fraction(c) for e, v in self.coeffs.items()})

    def shift(self, k=1):
        """Multiply by z^k."""
        return ZPoly({e + k: v for e, v in self.coeffs.items()})

    def coefficient(self, e):
        return self.coeffs.get(e, Fraction(0))

    def degree(self):
        return max(self.coeffs, default=0)

    def __eq__(self, other):
        if isinstance(other, ZPoly):
            return self.coeffs == other.coeffs
        if isinstance(other, (int, Fraction)):
            return self == ZPoly.const(other)
        return NotImplemented

    def __hash__(self):
        return hash(frozenset(self.coeffs.items()))

    def __bool__(self):
        return bool(self.coeffs)

    def __repr__(self):
        if not self.coeffs:
            return "0"
        bits = []
        for e in sorted(self.coeffs):
            c = self.coeffs[e]
            if e == 0:
                bits.append(str(c))
            elif e == 1:
                bits.append(f"{c}*z")
            else:
                bits.append(f"{c}*z^{e}")
        return " + ".join(bits)


# ---------------------------------------------------------------------------
# Fock vectors


class FockVector:
    """Finite sum of z-polynomial multiples of basis vectors b_mu.

    Treated as immutable: all operations return new vectors.
    """

    __slots__ = ("terms",)

    def __init__(self, terms=None):
        self.terms = {mu: p for mu, p in (terms or {}).items() if p}

    @classmethod
    def basis(cls, mu):
        return cls({check_partition(mu): ZPoly.const(1)})

    @classmethod
    def zero(cls):
        return cls({})

    def __add__(self, other):
        out = dict(self.terms)
        for mu, p in other.terms.items():
            out[mu] = out.get(mu, ZPoly()) + p
        return FockVector(out)

    def scale(self, c):
        if isinstance(c, ZPoly):
            return FockVector({mu: p * c for mu, p in self.terms.items()})
        return FockVector({mu: p.scale(c) for mu, p in self.terms.items()})

    def coefficient(self, mu):
        return self.terms.get(tuple(mu), ZPoly())

    def energies(self):
        return {sum(mu) for mu in self.terms}

    def __eq__(self, other):
        return isinstance(other, FockVector) and self.terms == other.terms

    def __bool__(self):
        return bool(self.terms)

    def __repr__(self):
        if not self.terms:
            return "FockVector(0)"
        bits = [f"({p})*b{mu}" for mu, p in sorted(self.terms.items())]
        return "FockVector(" + " + ".join(bits) + ")"


def b(mu):
    return FockVector.basis(mu)


def apply_alpha(n, v):
    """Act by the ladder operator alpha_n on a vector (n != 0).

    alpha_{-k} (k>0) inserts a part k; alpha_k removes one part k and
    multiplies by k * (number of parts equal to k), the normal-ordering
    constant from [alpha_k, alpha_{-k}] = k.
    """
    if n == 0:
        raise ValueError("alpha_0 is central; n must be non-zero")
    out = {}
    for mu, poly in v.terms.items():
        if n < 0:
            key = tuple(sorted(mu + (-n,), reverse=True))
            out[key] = out.get(key, ZPoly()) + poly
        else:
            mult = mu.count(n)
            if mult == 0:
                continue
            lst = list(mu)
            lst.remove(n)
            key = tuple(lst)
            out[key] = out.get(key, ZPoly()) + poly.scale(n * mult)
    return FockVector(out)


def inner_product(u, v):
    """<u|v> as a ZPoly; basis vectors satisfy <b_mu|b_nu> = delta * prod(mu) * |Aut|."""
    out = ZPoly()
    for mu, pu in u.terms.items():
        pv = v.terms.get(mu)
        if pv:
            out = out + (pu * pv).scale(parts_product(mu) * aut_count(mu))
    return out


def apply_m(v, energy_cap):
    """One application of the vertex operator M (energy-preserving).

    energy_cap bounds the partition sizes that may appear; since M preserves
    the energy grading this is a precondition check, not a truncation.
    """
    for mu in v.terms:
        if sum(mu) > energy_cap:
            raise ValueError(
                "vector has energy %d above cap %d" % (sum(mu), energy_cap)
            )
    out = FockVector.zero()
    for mu, poly in v.terms.items():
        base = FockVector({mu: poly})
        # 2 z sum_k (k-1) alpha_{-k} alpha_k
        for k in sorted(set(mu)):
            if k == 1:
                continue
            term = apply_alpha(-k, apply_alpha(k, base))
            out = out + term.scale(ZPoly({1: Fraction(2 * (k - 1))}))
        # sum over ordered pairs i,j>0 (the operator's 2 * 1/2 prefactor
        # cancels against unordering): alpha_{-j} alpha_{-i} alpha_{i+j}
        # (cut a part into two)
        for k in sorted(set(mu)):
            cut = apply_alpha(k, base)
            for i in range(1, k):
                out = out + apply_alpha(-(k - i), apply_alpha(-i, cut))
        # alpha_{-(i+j)} alpha_i alpha_j  (join two parts)
        for j in sorted(set(mu)):
            once = apply_alpha(j, base)
            for i in sorted({p for m2 in once.terms for p in m2}):
                joined = apply_alpha(i, once)
                if joined:
                    out = out + apply_alpha(-(i + j), joined)
    return out


def matrix_element(mu, nu, power):
    """<b_mu | M^power | b_nu> as a ZPoly (zero when sizes differ)."""
    mu, nu = check_partition(mu), check_partition(nu)
    if sum(mu) != sum(nu):
        return ZPoly()
    cap = sum(nu)
    vec = FockVector.basis(nu)
    for _ in range(power):
        vec = apply_m(vec, cap)
    return inner_product(FockVector.basis(mu), vec)


# ---------------------------------------------------------------------------
# twisted counts


class ParityViolation(RuntimeError):
    """A nonzero z^c coefficient appeared where g - c + 1 is odd."""


def _prefactor_sum(poly, g):
    """sum_c coef_{z^c}(poly) * 2^{(g-c+1)/2} / 2^{c+1}, checking z-parity."""
    total = Fraction(0)
    for c, coef in sorted(poly.coeffs.items()):
        if coef == 0:
            continue
        if (g - c + 1) % 2:
            raise ParityViolation(
                "nonzero z^%d coefficient %s at g=%d: exponent (g-c+1)/2 "
                "is not an integer; vertex-count parity is broken" % (c, coef, g)
            )
        total += coef * Fraction(2 ** ((g - c + 1) // 2), 2 ** (c + 1))
    return total


def twisted_double_disconnected(mu, nu, g):
    """Disconnected twisted double number with profiles mu, nu and g-1 branch points.

    Returns 0 (with a RuntimeWarning) when |mu| != |nu|: energy conservation
    makes every matrix element vanish, so the query is almost surely a typo.
    """
    mu, nu = check_partition(mu), check_partition(nu)
    if g < 1:
        raise ValueError("g must be >= 1, got %r" % (g,))
    if sum(mu) != sum(nu):
        warnings.warn(
            "profile sizes differ (%d vs %d); count is 0" % (sum(mu), sum(nu)),
            RuntimeWarning,
            stacklevel=2,
        )
        return Fraction(0)
    me = matrix_element(mu, nu, g - 1)
    return _prefactor_sum(me, g) / (parts_product(mu) * parts_product(nu))


@lru_cache(maxsize=None)
def elliptic_disconnected(d, g):
    """Disconnected twisted invariant of the elliptic curve, degree d, genus g."""
    if d < 1 or g < 1:
        raise ValueError("need d >= 1 and g >= 1")
    total = Fraction(0)
    for mu in partitions(d):
        me = matrix_element(mu, mu, g - 1)
        total += _prefactor_sum(me, g) / (aut_count(mu) * parts_product(mu))
    return total


def elliptic_from_doubles(d, g):
    """Same invariant assembled from the double numbers; must agree with
    elliptic_disconnected identically (the weights cancel one prod mu_i)."""
    if d < 1 or g < 1:
        raise ValueError("need d >= 1 and g >= 1")
    total = Fraction(0)
    for mu in partitions(d):
        total += (
            Fraction(parts_product(mu), aut_count(mu))
            * twisted_double_disconnected(mu, mu, g)
        )
    return total
