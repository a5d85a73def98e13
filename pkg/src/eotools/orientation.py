"""p-adic orientation orders of the tautological line bundle.

Orders are always powers of p here, so they are stored as exponents.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .fp_algebra import check_prime
from .stunted import PkParams


def nu_p(n: int, p: int) -> int:
    """p-adic valuation of a nonzero integer."""
    check_prime(p)
    if n == 0:
        raise ValueError("nu_p(0) is infinite")
    n = abs(n)
    e = 0
    while n % p == 0:
        n //= p
        e += 1
    return e


def theta_sphere_valuation(p: int, n: int) -> int:
    """Valuation of the sphere orientation order of gamma over CP^n (Atiyah-Todd).

    max{r + nu_p(r) : 1 <= r <= floor(n/(p-1))} when p <= n + 1, else 0.
    """
    check_prime(p)
    if n < 1:
        raise ValueError("n must be positive")
    if p > n + 1:
        return 0
    return max(r + nu_p(r, p) for r in range(1, n // (p - 1) + 1))


class InconsistentBoundError(AssertionError):
    pass


@dataclass(frozen=True)
class OrientationReport:
    p: int
    k: int
    n: int  # CP^n dimension, beta_hat - 1
    sphere_valuation: int
    bound_valuation: int
    known_valuation: int | None = None
    known_source: str | None = None
    conjecture_valuation: int = field(default=0)

    @property
    def bound_order(self) -> int:
        return self.p**self.bound_valuation

    def as_dict(self) -> dict:
        return {
            "p": self.p, "k": self.k, "n": self.n,
            "sphere_valuation": self.sphere_valuation,
            "bound_valuation": self.bound_valuation,
            "bound_order": f"{self.p}^{self.bound_valuation}",
            "known_valuation": self.known_valuation,
            "known_source": self.known_source,
            "conjecture_valuation": self.conjecture_valuation,
        }


def known_exact_valuation(p: int, k: int) -> tuple[int | None, str | None]:
    # height p-1 (k = 1): the order is exactly p
    if k == 1:
        return 1, "height p-1: exact value p"
    return None, None


def eo_bound(p: int, k: int) -> OrientationReport:
    """EO orientation bound p^(p^k - 1), derived from the sphere order over CP^(beta_hat-1)."""
    params = PkParams(p, k)
    n = params.beta_hat - 1
    v = theta_sphere_valuation(p, n)
    if v != p**k - 1:
        raise InconsistentBoundError(
            f"sphere valuation {v} over CP^{n} differs from p^k - 1 = {p**k - 1}")
    known, src = known_exact_valuation(p, k)
    return OrientationReport(p, k, n, v, p**k - 1, known, src, conjecture_valuation=k)


@dataclass(frozen=True)
class OrderRow:
    label: str
    valuation: int
    relation: str  # "=", "divides", "upper bound"
    source: str


@dataclass(frozen=True)
class KnownOrdersTable:
    p: int
    k: int
    rows: tuple[OrderRow, ...]
    chain_holds: bool
    sphere_row_n: int

    def as_dict(self) -> dict:
        return {"p": self.p, "k": self.k, "sphere_row_n": self.sphere_row_n,
                "chain_holds": self.chain_holds,
                "rows": [r.__dict__ for r in self.rows]}


def known_orders_report(p: int, k: int, n_override: int | None = None) -> KnownOrdersTable:
    """Bound, known values and conjecture for Theta(gamma, EO), as p-adic valuations.

    Checks conjecture | known | bound for every known row present.
    ``n_override`` moves the comparison row Theta(gamma^n, S) to another n;
    the bound itself always uses n = beta_hat - 1.
    """
    rep = eo_bound(p, k)
    height = PkParams(p, k).n
    rows = [OrderRow("EO bound", rep.bound_valuation, "upper bound",
                     "sphere order over CP^(beta_hat-1)")]
    known = []
    if k == 1:
        known.append(OrderRow("height p-1", 1, "=", "exact value p at height p-1"))
    if p == 2:
        known.append(OrderRow("real Johnson-Wilson", height, "divides",
                              "ER(n) orientation order 2^n"))
    rows += known
    rows.append(OrderRow("conjecture", k, "=", "conjectured value p^k"))
    sphere_n = rep.n if n_override is None else n_override
    rows.append(OrderRow(f"sphere over CP^{sphere_n}", theta_sphere_valuation(p, sphere_n),
                         "=", "Atiyah-Todd formula"))
    chain = all(k <= r.valuation <= rep.bound_valuation for r in known)
    chain = chain and k <= rep.bound_valuation
    return KnownOrdersTable(p, k, tuple(rows), chain, sphere_n)
