"""Truncated arithmetic in End = W(F_{p^n})<T> / (T a - phi(a) T, T^n - p u), with u = 1.

Witt vectors W(F_{p^m}) / p^N are Z/p^N[theta]/(F) where F is the integer
lift of the residue field modulus.  Frobenius is the ring map fixed by its
value on theta, which is read off from the Teichmuller digits of theta.

An element of End is written sum_i a_i T^i with Teichmuller digits a_i.
Internally it is held as n Witt components, sum_{r<n} w_r T^r, using
T^{r + jn} = p^j T^r.  Elements are truncated mod T^M.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property, lru_cache
from math import inf
from typing import Iterable, Sequence

from .fp_algebra import ExtField, check_prime, make_ext_field

Vec = tuple[int, ...]


class SolverFailure(RuntimeError):
    """No residue digit satisfies a stage of the order-p search."""


@dataclass(frozen=True, eq=False)
class WittRing:
    """W(F_{p^m}) / p^N."""

    p: int
    m: int
    N: int
    field: ExtField = field(init=False, repr=False)

    def __post_init__(self):
        check_prime(self.p)
        if self.m < 1 or self.N < 1:
            raise ValueError("need m >= 1 and N >= 1")
        object.__setattr__(self, "field", make_ext_field(self.p, self.m))

    def __eq__(self, other):
        return isinstance(other, WittRing) and (self.p, self.m, self.N) == (other.p, other.m, other.N)

    def __hash__(self):
        return hash((self.p, self.m, self.N))

    @property
    def modulus(self) -> int:
        return self.p**self.N

    # arithmetic on coefficient tuples
    def zero(self) -> Vec:
        return (0,) * self.m

    def scalar(self, c: int) -> Vec:
        return ((c % self.modulus),) + (0,) * (self.m - 1)

    def add(self, a: Vec, b: Vec) -> Vec:
        q = self.modulus
        return tuple((x + y) % q for x, y in zip(a, b))

    def sub(self, a: Vec, b: Vec) -> Vec:
        q = self.modulus
        return tuple((x - y) % q for x, y in zip(a, b))

    def neg(self, a: Vec) -> Vec:
        q = self.modulus
        return tuple(-x % q for x in a)

    def scale(self, a: Vec, c: int) -> Vec:
        q = self.modulus
        return tuple(x * c % q for x in a)

    def mul(self, a: Vec, b: Vec) -> Vec:
        m, q = self.m, self.modulus
        prod = [0] * (2 * m - 1)
        for i, x in enumerate(a):
            if x:
                for j, y in enumerate(b):
                    prod[i + j] += x * y
        F = self.field.modulus  # monic, F[m] == 1
        for d in range(2 * m - 2, m - 1, -1):
            c = prod[d]
            if c:
                for t in range(m):
                    prod[d - m + t] -= c * F[t]
        return tuple(x % q for x in prod[:m])

    def pow(self, a: Vec, e: int) -> Vec:
        out = self.scalar(1)
        while e:
            if e & 1:
                out = self.mul(out, a)
            a = self.mul(a, a)
            e >>= 1
        return out

    # residue field interface
    def residue(self, a: Vec) -> int:
        return self.field.from_poly([x % self.p for x in a])

    def lift(self, code: int) -> Vec:
        return tuple(self.field.to_poly(code))

    def teichmuller(self, code: int) -> Vec:
        return _teichmuller(self.p, self.m, self.N, code)

    def digits(self, a: Vec) -> list[int]:
        """Teichmuller digits d_j with a = sum_j tau(d_j) p^j, j < N."""
        out = []
        for _ in range(self.N):
            d = self.residue(a)
            out.append(d)
            a = self.sub(a, self.teichmuller(d))
            assert all(x % self.p == 0 for x in a)
            a = tuple(x // self.p for x in a)
        return out

    def from_digits(self, ds: Sequence[int]) -> Vec:
        acc = self.zero()
        for j, d in enumerate(ds[: self.N]):
            if d:
                acc = self.add(acc, self.scale(self.teichmuller(d), self.p**j))
        return acc

    @cached_property
    def _frob_images(self) -> list[Vec]:
        """phi(theta^i) for i < m."""
        if self.m == 1:
            return [self.scalar(1)]
        theta = (0, 1) + (0,) * (self.m - 2)
        phi_theta = self.from_digits([self.field.frobenius(d) for d in self.digits(theta)])
        out = [self.scalar(1)]
        for _ in range(1, self.m):
            out.append(self.mul(out[-1], phi_theta))
        return out

    def frobenius(self, a: Vec, times: int = 1) -> Vec:
        times %= self.m
        imgs = self._frob_images
        for _ in range(times):
            acc = [0] * self.m
            for i, x in enumerate(a):
                if x:
                    for t, y in enumerate(imgs[i]):
                        acc[t] += x * y
            a = tuple(v % self.modulus for v in acc)
        return a


@lru_cache(maxsize=None)
def _teichmuller(p: int, m: int, N: int, code: int) -> Vec:
    W = WittRing(p, m, N)
    y = W.lift(code)
    q = p**m
    for _ in range(N + 1):
        nxt = W.pow(y, q)
        if nxt == y:
            return y
        y = nxt
    assert W.pow(y, q) == y
    return y


@lru_cache(maxsize=None)
def endo_ring(p: int, n: int, M: int) -> "EndoRing":
    return EndoRing(p, n, M)


@dataclass(frozen=True, eq=False)
class EndoRing:
    """End of the height-n Honda formal group over F_{p^n}, truncated mod T^M."""

    p: int
    n: int
    M: int

    def __post_init__(self):
        check_prime(self.p)
        if self.n < 1 or self.M < 1:
            raise ValueError("need n >= 1 and M >= 1")

    def __eq__(self, other):
        return isinstance(other, EndoRing) and (self.p, self.n, self.M) == (other.p, other.n, other.M)

    def __hash__(self):
        return hash((self.p, self.n, self.M))

    @cached_property
    def W(self) -> WittRing:
        return WittRing(self.p, self.n, -(-self.M // self.n) + 1)

    @property
    def residue_field(self) -> ExtField:
        return self.W.field

    def element(self, digits: Iterable[int] | dict[int, int]) -> "EndoElement":
        if isinstance(digits, dict):
            ds = [0] * self.M
            for i, a in digits.items():
                if i < self.M:
                    ds[i] = a
        else:
            ds = list(digits)[: self.M]
            ds += [0] * (self.M - len(ds))
        return EndoElement(self, tuple(ds))

    def zero(self) -> "EndoElement":
        return self.element([])

    def one(self) -> "EndoElement":
        return self.element([1])

    def T(self) -> "EndoElement":
        return self.element({1: 1})

    def teich(self, a: int) -> "EndoElement":
        return self.element({0: a})

    def from_int(self, z: int) -> "EndoElement":
        return self._from_components([self.W.scalar(z)] + [self.W.zero()] * (self.n - 1))

    # component form
    def _components(self, digits: Sequence[int]) -> list[Vec]:
        W, n = self.W, self.n
        return [W.from_digits(digits[r::n]) for r in range(n)]

    def _from_components(self, comps: Sequence[Vec]) -> "EndoElement":
        ds = [0] * self.M
        for r, w in enumerate(comps):
            for j, d in enumerate(self.W.digits(w)):
                i = r + j * self.n
                if i < self.M:
                    ds[i] = d
        return EndoElement(self, tuple(ds))

    def _mul_components(self, x: Sequence[Vec], y: Sequence[Vec]) -> list[Vec]:
        W, n, p = self.W, self.n, self.p
        acc = [W.zero() for _ in range(n)]
        for s, ys in enumerate(y):
            if not any(ys):
                continue
            for r, xr in enumerate(x):
                if not any(xr):
                    continue
                prod = W.mul(xr, W.frobenius(ys, r))
                if r + s < n:
                    acc[r + s] = W.add(acc[r + s], prod)
                else:
                    acc[r + s - n] = W.add(acc[r + s - n], W.scale(prod, p))
        return acc


@dataclass(frozen=True, eq=False)
class EndoElement:
    ring: EndoRing
    digits: tuple[int, ...]

    def __post_init__(self):
        if len(self.digits) != self.ring.M:
            raise ValueError("digit vector length must equal the T-precision")
        q = self.ring.residue_field.order
        if any(not 0 <= d < q for d in self.digits):
            raise ValueError("digits must be residue field elements")

    def _check(self, other: "EndoElement"):
        if not isinstance(other, EndoElement) or self.ring != other.ring:
            raise ValueError("elements of different endomorphism rings")

    @cached_property
    def components(self) -> list[Vec]:
        return self.ring._components(self.digits)

    def __eq__(self, other):
        return isinstance(other, EndoElement) and self.ring == other.ring and self.digits == other.digits

    def __hash__(self):
        return hash((self.ring, self.digits))

    def __repr__(self):
        nz = {i: a for i, a in enumerate(self.digits) if a}
        return f"EndoElement(p={self.ring.p}, n={self.ring.n}, M={self.ring.M}, digits={nz})"

    def __add__(self, other):
        self._check(other)
        W = self.ring.W
        return self.ring._from_components(
            [W.add(a, b) for a, b in zip(self.components, other.components)])

    def __neg__(self):
        W = self.ring.W
        return self.ring._from_components([W.neg(a) for a in self.components])

    def __sub__(self, other):
        self._check(other)
        W = self.ring.W
        return self.ring._from_components(
            [W.sub(a, b) for a, b in zip(self.components, other.components)])

    def __mul__(self, other):
        return endo_mul(self, other)

    def __pow__(self, e: int):
        if e < 0:
            raise ValueError("negative powers are not supported")
        ring = self.ring
        comps = ring.one().components
        base = self.components
        while e:
            if e & 1:
                comps = ring._mul_components(comps, base)
            base = ring._mul_components(base, base)
            e >>= 1
        return ring._from_components(comps)

    def is_zero(self) -> bool:
        return not any(self.digits)

    def truncate(self, M: int) -> "EndoElement":
        """Image in the coarser ring mod T^M."""
        if M > self.ring.M:
            raise ValueError("cannot raise precision")
        return endo_ring(self.ring.p, self.ring.n, M).element(self.digits[:M])

    def frobenius_twist(self) -> "EndoElement":
        F = self.ring.residue_field
        return EndoElement(self.ring, tuple(F.frobenius(a) for a in self.digits))


def endo_mul(x: EndoElement, y: EndoElement) -> EndoElement:
    """Product using T^i a = phi^i(a) T^i and T^n = p, truncated mod T^M."""
    x._check(y)
    ring = x.ring
    return ring._from_components(ring._mul_components(x.components, y.components))


@dataclass(frozen=True)
class TValuation:
    j: int | None  # None encodes +infinity
    n: int

    @property
    def value(self) -> Fraction | float:
        return inf if self.j is None else Fraction(self.j, self.n)

    def __str__(self):
        return "inf" if self.j is None else str(Fraction(self.j, self.n))


def t_valuation(x: EndoElement) -> TValuation:
    j = next((i for i, a in enumerate(x.digits) if a), None)
    return TValuation(j, x.ring.n)


def _leading_degree(x: EndoElement) -> int | None:
    return t_valuation(x).j


def _is_pth_root_of_unity(x: EndoElement) -> bool:
    p = x.ring.p
    return (x**p - x.ring.one()).is_zero()


MAX_SEARCH_FIELD = 3**6


def find_order_p_unit(p: int, k: int, M: int, max_field: int = MAX_SEARCH_FIELD) -> EndoElement:
    """An element zeta != 1 with zeta^p = 1 mod T^M, found digit by digit.

    zeta = 1 + sum_{i >= k} a_i T^i.  The digit a_j first influences zeta^p
    in T-degree j + n, so stage j picks a_j (exhaustively, in field order)
    making zeta^p - 1 vanish mod T^{j+n+1}.  Dead ends backtrack.  The
    search runs to precision M + n so that every returned digit is pinned
    down, then truncates to T^M.
    """
    check_prime(p)
    if k < 1:
        raise ValueError("k must be positive")
    n = k * (p - 1)
    if M < n + k + 1:
        raise ValueError(f"T-precision M={M} must be at least n + k + 1 = {n + k + 1}")
    q = p**n
    if q > max_field:
        raise ValueError(f"residue field of order {q} exceeds the search limit {max_field}")
    work = M + n
    last = work - n - 1
    digits = [1] + [0] * (work - 1)

    def stage_ok(j: int) -> bool:
        x = endo_ring(p, n, j + n + 1).element(digits[: j + n + 1])
        return _is_pth_root_of_unity(x)

    def search(j: int) -> bool:
        if j > last:
            return True
        valid = []
        for a in range(1 if j == k else 0, q):
            digits[j] = a
            if stage_ok(j):
                valid.append(a)
        for a in valid:
            digits[j] = a
            if search(j + 1):
                return True
        digits[j] = 0
        return False

    if not search(k):
        raise SolverFailure(f"no order-{p} unit found for (p, k) = ({p}, {k}) at M = {M}")
    zeta = endo_ring(p, n, M).element(digits[:M])
    if not _is_pth_root_of_unity(zeta) or zeta == zeta.ring.one():
        raise SolverFailure("postcondition zeta^p = 1, zeta != 1 failed")
    return zeta


def tbar_coefficients(zeta: EndoElement) -> dict[int, int]:
    """Digits a_i (i >= 1) of zeta - 1; these are the residues of t_i(zeta) up to units."""
    if zeta.digits[0] == 0:
        raise ValueError("zeta is not a unit")
    d = (zeta - zeta.ring.one()).digits
    return {i: d[i] for i in range(1, len(d))}


@dataclass(frozen=True)
class ExclusionRow:
    """Leading T-degree of (1 + a T^j)^p - 1 over all nonzero residues a."""

    j: int
    predicted_degree: int
    observed_degrees: tuple[int | None, ...]

    @property
    def excluded(self) -> bool:
        return all(d == self.predicted_degree for d in self.observed_degrees)


@dataclass(frozen=True)
class TkReport:
    p: int
    k: int
    n: int
    M: int
    zeta_digits: tuple[int, ...]
    zeta_order_p: bool
    valuation: TValuation
    valuation_matches: bool
    vanishing_below_k: bool
    unit_at_k: bool
    tbar: dict[int, int]
    exclusions: tuple[ExclusionRow, ...] = ()

    @property
    def passed(self) -> bool:
        return (self.zeta_order_p and self.valuation_matches and self.vanishing_below_k
                and self.unit_at_k and all(r.excluded for r in self.exclusions))

    def as_dict(self) -> dict:
        return {
            "p": self.p, "k": self.k, "n": self.n, "M": self.M,
            "zeta_digits": list(self.zeta_digits),
            "zeta_order_p": self.zeta_order_p,
            "valuation": str(self.valuation),
            "expected_valuation": str(Fraction(1, self.p - 1)),
            "valuation_matches": self.valuation_matches,
            "vanishing_below_k": self.vanishing_below_k,
            "unit_at_k": self.unit_at_k,
            "tbar": {str(i): a for i, a in self.tbar.items()},
            "exclusions": [{"j": r.j, "predicted_degree": r.predicted_degree,
                            "observed_degrees": list(r.observed_degrees),
                            "excluded": r.excluded} for r in self.exclusions],
        }


def leading_digit_exclusions(p: int, k: int, M: int) -> tuple[ExclusionRow, ...]:
    """For each j != k, show no element 1 + a T^j + ... has order p.

    When j < k the first term of zeta^p - 1 is (a T^j)^p in degree pj; when
    j > k it is p a T^j in degree j + n.  Higher digits cannot reach those
    degrees, so a nonzero coefficient there rules out every completion.
    """
    n = k * (p - 1)
    ring = endo_ring(p, n, M)
    rows = []
    for j in range(1, M):
        if j == k:
            continue
        pred = p * j if j < k else j + n
        if pred >= M:
            continue
        obs = tuple(_leading_degree(ring.element({0: 1, j: a}) ** p - ring.one())
                    for a in range(1, p**n))
        rows.append(ExclusionRow(j, pred, obs))
    return tuple(rows)


def verify_tk_lemma(p: int, k: int, M: int, max_field: int = MAX_SEARCH_FIELD) -> TkReport:
    """Find zeta of order p and check its digits vanish below k and not at k."""
    if M <= k:
        raise ValueError("precision must exceed k")
    n = k * (p - 1)
    zeta = find_order_p_unit(p, k, M, max_field)
    tbar = tbar_coefficients(zeta)
    v = t_valuation(zeta - zeta.ring.one())
    return TkReport(
        p=p, k=k, n=n, M=M,
        zeta_digits=zeta.digits,
        zeta_order_p=_is_pth_root_of_unity(zeta) and zeta != zeta.ring.one(),
        valuation=v,
        valuation_matches=v.j is not None and v.value * (p - 1) == 1,
        vanishing_below_k=all(tbar[i] == 0 for i in range(1, k)),
        unit_at_k=tbar[k] != 0,
        tbar=tbar,
        exclusions=leading_digit_exclusions(p, k, M),
    )
