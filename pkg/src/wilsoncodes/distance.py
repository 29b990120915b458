"""What is known about d_{t,n,k}, the minimum distance of ker W_{t,n,k}.

Three kinds of rules feed a :class:`DistanceFact`:

* recursive lower bounds (derivative at a point, splitting at a point) that
  call back into the facts for smaller parameters;
* constructive upper bounds, each backed by a design that :func:`witness`
  can emit on demand;
* closed-form values valid above explicit thresholds on n.

Rule tags name the mechanism rather than a numbering scheme:

=====================  ==========================================================
``zero-design``        any two k-subsets: d_{0,n,k} = 2
``point-derivative``   (D^i)' is a (t-1)-design: d_{t,n,k} >= d_{t-1,n-1,k-1} + 1
``point-split``        k - t even: D^i and D minus D^i are (t-1)-designs
``strength-1``         d_{1,n,k} is 4 for odd k, 3 for even k
``top-strength``       d_{k-1,n,k} = k + 1
``strength-2-*``       exact values for t = 2 by residue of k
``strength-3-*``       exact values for t = 3 (even k from the ILP search)
``universal``          C(k-s, t-s) odd for all s <= t: d = 2^(t+1)
``pair``               two blocks sharing k-1 points
``subsets``            all k-subsets of a (k+1)-set, k - t odd
``pasch``              generalised Pasch configuration, 2^(t+1) blocks
``hadamard-stretch``   stretched 2-(7,4) Hadamard design, 7 blocks, 4 | k
``triangle-stretch``   stretched {12,13,23}, 3 blocks, t = 1 and k even
``doubling``           d_{t,n,k} <= 2 d_{t-1,n-2,k-1}
=====================  ==========================================================
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable

from . import designs
from .designs import BinaryDesign
from .errors import DomainError
from .wilson import binom_parity

# d_{3,n,k} for even k >= 6, read off from the ILP search over 7..11 blocks;
# every larger even k has no design below the doubling bound of 12.
EVEN_K_STRENGTH3 = {6: 7, 8: 9, 10: 11}
EVEN_K_STRENGTH3_DEFAULT = 12


@dataclass(frozen=True)
class Bound:
    value: int
    provenance: tuple[str, ...]


@dataclass(frozen=True)
class DistanceFact:
    t: int
    n: int
    k: int
    lo: int
    hi: int | None
    lo_provenance: tuple[str, ...]
    hi_provenance: tuple[str, ...]

    @property
    def exact(self) -> bool:
        return self.hi is not None and self.lo == self.hi

    def cell(self) -> str:
        """Compact rendering: ``7`` for exact values, ``21..28`` for intervals."""
        if self.exact:
            return str(self.lo)
        return f"{self.lo}..{self.hi if self.hi is not None else 'inf'}"

    def as_dict(self) -> dict:
        return {
            "t": self.t,
            "n": self.n,
            "k": self.k,
            "lo": self.lo,
            "hi": self.hi,
            "exact": self.exact,
            "lo_provenance": list(self.lo_provenance),
            "hi_provenance": list(self.hi_provenance),
        }


def _check(t: int, n: int, k: int) -> None:
    if not 0 <= t < k < n:
        raise DomainError(f"need 0 <= t < k < n, got t={t}, n={n}, k={k}")


def _ceil_div(a: int, b: int) -> int:
    return -(-a // b)


def _best(cands: Iterable[tuple[int, str]], pick) -> Bound | None:
    cands = list(cands)
    if not cands:
        return None
    v = pick(c[0] for c in cands)
    return Bound(v, tuple(dict.fromkeys(tag for val, tag in cands if val == v)))


def is_universal(t: int, k: int) -> bool:
    """Every binary t-(n,k)-design is also an s-design for all s <= t."""
    return all(binom_parity(k - s, t - s) for s in range(t + 1))


# -- lower bounds ---------------------------------------------------------------


def _recursive_lower(t: int, n: int, k: int) -> list[tuple[int, str]]:
    out = []
    if t == 0:
        out.append((2, "zero-design"))
        return out
    out.append((fact(t - 1, n - 1, k - 1).lo + 1, "point-derivative"))
    if (k - t) % 2 == 0 and n >= k + 2:
        through = max(fact(t - 1, n, k).lo, fact(t - 1, n - 1, k - 1).lo)
        out.append((through + fact(t - 1, n - 1, k).lo, "point-split"))
    if t == 1:
        out.append((4 if k % 2 and n >= k + 2 else 3, "strength-1"))
    return out


def lower_bound(t: int, n: int, k: int) -> Bound:
    """Best bound from the point recursions and the t <= 1 base cases."""
    _check(t, n, k)
    return _lower_cached(t, n, k)


@lru_cache(maxsize=None)
def _lower_cached(t: int, n: int, k: int) -> Bound:
    return _best(_recursive_lower(t, n, k), max)


def _closed_form_lower(t: int, n: int, k: int) -> list[tuple[int, str]]:
    """Lower halves of the closed-form results, at their own thresholds."""
    out = []
    if t == k - 1:
        out.append((k + 1, "top-strength"))
    if t == 2 and k >= 5 and k % 2 and n >= k + 2:
        out.append((6, "strength-2-odd-k"))
    if t == 2 and k % 4 == 0 and n >= k + 2:
        out.append((7, "strength-2-k0mod4"))
    if t == 2 and k % 4 == 2 and n >= k + 1:
        out.append((8, "strength-2-k2mod4"))
    if t == 3 and k >= 5 and k % 2 and n >= k + 4:
        out.append((14, "strength-3-odd-k"))
    if t == 3 and k >= 6 and k % 2 == 0 and n >= k + 2:
        out.append((EVEN_K_STRENGTH3.get(k, EVEN_K_STRENGTH3_DEFAULT), "strength-3-even-k"))
    if is_universal(t, k) and n >= k + t + 1:
        out.append((2 ** (t + 1), "universal"))
    return out


# -- exact values ---------------------------------------------------------------


def exact_value(t: int, n: int, k: int) -> Bound | None:
    """Closed-form d_{t,n,k} when (t, n, k) meets a result's hypotheses, else None.

    Thresholds on n are the ones at which both the lower argument and a
    witnessing construction are available.
    """
    _check(t, n, k)
    cands = []
    if t == 0:
        cands.append((2, "zero-design"))
    if t == k - 1:
        cands.append((k + 1, "top-strength"))
    if t == 1:
        if k % 2 and n >= k + 2:
            cands.append((4, "strength-1"))
        if k % 2 == 0 and n >= max(k + 2, 3 * k // 2):
            cands.append((3, "strength-1"))
    if t == 2:
        if k >= 5 and k % 2 and n >= max(k + 3, 3 * (k - 1) // 2 + 2):
            cands.append((6, "strength-2-odd-k"))
        if k % 4 == 0 and n >= 7 * k // 4 + 2:
            cands.append((7, "strength-2-k0mod4"))
        if k % 4 == 2 and n >= k + 3:
            cands.append((8, "strength-2-k2mod4"))
    if t == 3:
        if k >= 5 and k % 4 == 1 and n >= max(k + 4, _ceil_div(7 * k + 1, 4)):
            cands.append((14, "strength-3-odd-k"))
        if k >= 7 and k % 4 == 3 and n >= k + 4:
            cands.append((16, "strength-3-odd-k"))
        if k >= 6 and k % 2 == 0:
            if k in EVEN_K_STRENGTH3 and n >= k + 4:
                cands.append((EVEN_K_STRENGTH3[k], "strength-3-even-k"))
            elif k not in EVEN_K_STRENGTH3 and n >= max(k + 4, 3 * (k - 2) // 2 + 4):
                cands.append((EVEN_K_STRENGTH3_DEFAULT, "strength-3-even-k"))
    if is_universal(t, k) and n >= k + t + 1:
        cands.append((2 ** (t + 1), "universal"))
    values = {v for v, _ in cands}
    if len(values) > 1:
        raise AssertionError(f"closed forms disagree at {(t, n, k)}: {cands}")
    return _best(cands, max)


# -- upper bounds -----------------------------------------------------------------


def _upper_rules(t: int, n: int, k: int) -> list[tuple[int, str]]:
    out = []
    if t == 0 and n >= k + 1:
        out.append((2, "pair"))
    if (k - t) % 2 and n >= k + 1:
        out.append((k + 1, "subsets"))
    if n >= k + t + 1:
        out.append((2 ** (t + 1), "pasch"))
    if t == 2 and k % 4 == 0 and n >= 7 * k // 4:
        out.append((7, "hadamard-stretch"))
    if t == 1 and k % 2 == 0 and n >= 3 * k // 2:
        out.append((3, "triangle-stretch"))
    if t >= 1 and n - 2 > k - 1:
        sub = _upper_cached(t - 1, n - 2, k - 1)
        if sub is not None:
            out.append((2 * sub.value, "doubling"))
    return out


def upper_bound(t: int, n: int, k: int) -> Bound | None:
    """Smallest block count among applicable constructions, or None if none fits."""
    _check(t, n, k)
    return _upper_cached(t, n, k)


@lru_cache(maxsize=None)
def _upper_cached(t: int, n: int, k: int) -> Bound | None:
    return _best(_upper_rules(t, n, k), min)


def witness(t: int, n: int, k: int) -> BinaryDesign | None:
    """A binary t-(n,k)-design with exactly ``upper_bound(t, n, k)`` blocks."""
    ub = upper_bound(t, n, k)
    if ub is None:
        return None
    tag = ub.provenance[0]
    if tag == "pair":
        D = designs.construct_pair(k)
    elif tag == "subsets":
        D = designs.construct_subsets(t, k)
    elif tag == "pasch":
        D = designs.construct_pasch(t, k)
    elif tag == "hadamard-stretch":
        D = designs.construct_hadamard_stretch(k // 4)
    elif tag == "triangle-stretch":
        D = designs.construct_triangle_stretch(k)
    elif tag == "doubling":
        D = designs.doubling(witness(t - 1, n - 2, k - 1))
    else:  # pragma: no cover - every upper rule is handled above
        raise AssertionError(tag)
    return D.with_points(n)


# -- merged facts -------------------------------------------------------------------


def fact(t: int, n: int, k: int) -> DistanceFact:
    """Merge recursions, closed forms and constructions into one interval."""
    _check(t, n, k)
    return _fact_cached(t, n, k)


@lru_cache(maxsize=None)
def _fact_cached(t: int, n: int, k: int) -> DistanceFact:
    lower = _recursive_lower(t, n, k) + _closed_form_lower(t, n, k)
    ex = exact_value(t, n, k)
    if ex is not None:
        lower += [(ex.value, tag) for tag in ex.provenance]
    lo = _best(lower, max)
    hi = _upper_cached(t, n, k)
    if ex is not None and (lo.value != ex.value or hi is None or hi.value != ex.value):
        raise AssertionError(f"closed form {ex} inconsistent with bounds {lo}, {hi} at {(t, n, k)}")
    if hi is not None and lo.value > hi.value:
        raise AssertionError(f"empty interval {lo}, {hi} at {(t, n, k)}")
    return DistanceFact(
        t=t,
        n=n,
        k=k,
        lo=lo.value,
        hi=hi.value if hi is not None else None,
        lo_provenance=lo.provenance,
        hi_provenance=hi.provenance if hi is not None else (),
    )


def large_n(t: int, k: int) -> int:
    """An n beyond every threshold used for (t, k) and its recursive sub-cases."""
    return 3 * k + 4 * t + 10


def table1_row(t: int, ks: Iterable[int]) -> list[DistanceFact | None]:
    """Facts for d_{t,n,k} at large n, one per k; None where k <= t."""
    if t < 1:
        raise DomainError("table rows start at t = 1")
    return [fact(t, large_n(t, k), k) if k > t else None for k in ks]


def clear_caches() -> None:
    _lower_cached.cache_clear()
    _upper_cached.cache_clear()
    _fact_cached.cache_clear()
