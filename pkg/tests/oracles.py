"""Independent reference computations used by the tests.

Nothing here imports the package's linear algebra: elimination is redone on
plain lists so that a bug in fp_algebra cannot hide in both routes.
"""

from __future__ import annotations

import random


def _reduce(rows: list[list[int]], p: int) -> tuple[list[list[int]], list[int]]:
    rows = [[x % p for x in r] for r in rows]
    if not rows:
        return [], []
    ncols = len(rows[0])
    pivots = []
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, len(rows)) if rows[i][c]), None)
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        inv = pow(rows[r][c], p - 2, p)
        rows[r] = [x * inv % p for x in rows[r]]
        for i in range(len(rows)):
            if i != r and rows[i][c]:
                f = rows[i][c]
                rows[i] = [(x - f * y) % p for x, y in zip(rows[i], rows[r])]
        pivots.append(c)
        r += 1
        if r == len(rows):
            break
    return rows, pivots


def rank(rows: list[list[int]], p: int) -> int:
    return len(_reduce(rows, p)[1])


def matmul(A, B, p):
    return [[sum(a * b for a, b in zip(row, col)) % p for col in zip(*B)] for row in A]


def matvec(A, v, p):
    return [sum(a * x for a, x in zip(row, v)) % p for row in A]


def kernel(A: list[list[int]], p: int) -> list[list[int]]:
    n = len(A[0]) if A else 0
    R, piv = _reduce(A, p)
    free = [c for c in range(n) if c not in piv]
    out = []
    for f in free:
        v = [0] * n
        v[f] = 1
        for i, pc in enumerate(piv):
            v[pc] = -R[i][f] % p
        out.append(v)
    return out


def inverse(A, p):
    n = len(A)
    aug = [list(row) + [int(i == j) for j in range(n)] for i, row in enumerate(A)]
    R, piv = _reduce(aug, p)
    if piv[:n] != list(range(n)):
        raise ValueError("singular")
    return [row[n:] for row in R[:n]]


def matpow(A, e, p):
    n = len(A)
    out = [[int(i == j) for j in range(n)] for i in range(n)]
    for _ in range(e):
        out = matmul(out, A, p)
    return out


def jordan_chains(A: list[list[int]], p: int) -> list[list[list[int]]]:
    """Explicit Jordan chains of a nilpotent matrix, longest first.

    For j from the nilpotency index down to 1, new chain generators are
    picked from ker A^j to extend ker A^{j-1} plus the length-j pieces of
    longer chains already found.
    """
    n = len(A)
    e = 0
    P = [[int(i == j) for j in range(n)] for i in range(n)]
    while any(any(r) for r in P):
        P = matmul(P, A, p)
        e += 1
        if e > n:
            raise ValueError("not nilpotent")
    kers = {j: kernel(matpow(A, j, p), p) if j else [] for j in range(e + 1)}
    chains: list[list[list[int]]] = []
    for j in range(e, 0, -1):
        span = list(kers[j - 1])
        for ch in chains:
            span.append(ch[len(ch) - j])
        base = rank(span, p) if span else 0
        for v in kers[j]:
            if rank(span + [v], p) > base:
                span.append(v)
                base += 1
                chain = [v]
                for _ in range(j - 1):
                    chain.append(matvec(A, chain[-1], p))
                chains.append(chain)
    return chains


def chain_block_sizes(A, p) -> list[int]:
    """Block sizes from an explicit chain basis, after checking it really is one."""
    n = len(A)
    chains = jordan_chains(A, p)
    vecs = [v for ch in chains for v in ch]
    if len(vecs) != n or rank(vecs, p) != n:
        raise AssertionError("chains do not form a basis")
    for ch in chains:
        if any(matvec(A, ch[i], p) != ch[i + 1] for i in range(len(ch) - 1)):
            raise AssertionError("chain is not a shift")
        if any(matvec(A, ch[-1], p)):
            raise AssertionError("chain does not end in the kernel")
    return sorted(len(ch) for ch in chains)


def random_invertible(n, p, rng: random.Random):
    while True:
        A = [[rng.randrange(p) for _ in range(n)] for _ in range(n)]
        if rank(A, p) == n:
            return A


def jordan_matrix(blocks, p):
    n = sum(blocks)
    J = [[0] * n for _ in range(n)]
    pos = 0
    for b in blocks:
        for i in range(b - 1):
            J[pos + i][pos + i + 1] = 1
        pos += b
    return J


def random_nilpotent(p: int, max_dim: int, rng: random.Random) -> tuple[list[list[int]], list[int]]:
    """A conjugate of a random Jordan matrix with blocks <= p, and its seeded type."""
    dim = rng.randint(1, max_dim)
    blocks = []
    while sum(blocks) < dim:
        blocks.append(rng.randint(1, min(p, dim - sum(blocks))))
    P = random_invertible(dim, p, rng)
    N = matmul(matmul(P, jordan_matrix(blocks, p), p), inverse(P, p), p)
    return N, sorted(blocks)


def nu(n: int, p: int) -> int:
    e = 0
    while n % p == 0:
        n //= p
        e += 1
    return e


def atiyah_todd_brute(p: int, n: int) -> int:
    """The sphere-order valuation, evaluated with no shortcuts."""
    if p > n + 1:
        return 0
    best = None
    r = 1
    while r * (p - 1) <= n:
        val = r + nu(r, p)
        best = val if best is None or val > best else best
        r += 1
    return best
