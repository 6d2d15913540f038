"""Exact symplectic Fourier transform on Q[E_N] and its matrices in the span bases.

Everything here is integer arithmetic with a single power-of-two scale, so
no floating point enters.  Matrices follow the column convention: column X
holds the coefficients of Phi(basis vector X).
"""

from __future__ import annotations

import graphlib
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Hashable, Literal, Sequence

import numpy as np

from .bases import transition_matrix
from .correspondences import eps_prime_table, eps_table
from .dyadic import Dyadic, DyadicLike, DyadicMatrix
from .gf2 import EvenSubset, check_n, even_masks, orbits, popcount, sign_of
from .orders import build_order, find_cycle, transitive_closure
from .report import Report, Tally

Basis = Literal["A_on_c", "Aprime_on_cprime", "bar_plus_on_tilde"]

N5_BLOCK = (EvenSubset.of(5, (4, 5)), EvenSubset.of(5, (1, 5)), EvenSubset.of(5, (2, 4)), EvenSubset.of(5, (1, 3)))
N5_PRINTED = ((-1, -1, 0, 1), (-1, -1, 1, 0), (-2, 2, 1, 1), (2, -2, 1, 1))


class SingularTransition(ArithmeticError):
    """A transition matrix that is not unitriangular in any order."""


def _ints(m: np.ndarray) -> np.ndarray:
    out = np.empty(m.shape, dtype=object)
    out[...] = m.astype(np.int64).tolist()
    return out


@lru_cache(maxsize=None)
def _kernel(masks: tuple[int, ...]) -> np.ndarray:
    """(-1)^{|X & X'|} over the given masks, as Python ints."""
    return _ints(np.array([[1 - 2 * (popcount(a & b) & 1) for b in masks] for a in masks]))


def _scale(n: int) -> int:
    return (n - 1) // 2


def fourier_matrix(n: int) -> DyadicMatrix:
    check_n(n)
    masks = even_masks(n)
    return DyadicMatrix(tuple(EvenSubset(n, m) for m in masks), _kernel(tuple(masks)), _scale(n))


def fourier_apply(f: Sequence[DyadicLike], n: int) -> list[Dyadic]:
    """Phi(f) for f given by its values on E_N in ascending mask order."""
    check_n(n)
    masks = even_masks(n)
    if len(f) != len(masks):
        raise ValueError(f"expected {len(masks)} values, got {len(f)}")
    vals = [Dyadic.of(v) for v in f]
    e = max((v.exp for v in vals), default=0)
    ints = _ints(np.zeros(len(vals), dtype=np.int64))
    ints[:] = [v.num << (e - v.exp) for v in vals]
    out = _kernel(tuple(masks)).dot(ints)
    return [Dyadic(int(v), e + _scale(n)) for v in out]


def _topological(nonzero: np.ndarray) -> list[int] | None:
    """An index order making the pattern upper triangular, or None."""
    ts = graphlib.TopologicalSorter({j: () for j in range(len(nonzero))})
    for i, j in zip(*np.nonzero(nonzero)):
        if i != j:
            ts.add(int(j), int(i))
    try:
        return list(ts.static_order())
    except graphlib.CycleError:
        return None


def unitriangular_solve(c: np.ndarray, r: np.ndarray) -> np.ndarray:
    """X with c @ X = r, for a 0/1 matrix c that is unitriangular up to a simultaneous permutation."""
    order = _topological(c != 0)
    if order is None or any(c[i, i] != 1 for i in range(len(c))):
        raise SingularTransition("transition matrix is not unitriangular")
    cp = _ints(c[np.ix_(order, order)])
    rp = r[order]
    y = np.empty_like(rp)
    for k in range(len(order) - 1, -1, -1):
        y[k] = rp[k] - cp[k, k + 1:].dot(y[k + 1:]) if k + 1 < len(order) else rp[k]
    x = np.empty_like(y)
    x[order] = y
    return x


def _plus_kernel(n: int) -> np.ndarray:
    reps = tuple(o.rep.bits for o in orbits(n, "+"))
    return _kernel(reps)


@lru_cache(maxsize=None)
def operator_matrix(n: int, basis: Basis) -> DyadicMatrix:
    check_n(n)
    if basis in ("A_on_c", "Aprime_on_cprime"):
        c = transition_matrix(n, "c" if basis == "A_on_c" else "cprime")
        s = _kernel(tuple(x.bits for x in c.carrier))
        exp = _scale(n)
    elif basis == "bar_plus_on_tilde":
        c = transition_matrix(n, "cplus")
        s = _plus_kernel(n)
        exp = (n - 3) // 2
    else:
        raise ValueError(f"unknown basis {basis!r}")
    image = s.dot(_ints(c.entries))
    return DyadicMatrix(c.carrier, unitriangular_solve(c.entries, image), exp)


def span_dimension(x: EvenSubset, primed: bool = False) -> int:
    """dim <X> (or dim '<X>): the number of arcs of the preimage matching."""
    table = eps_prime_table(x.n) if primed else eps_table(x.n)
    return len(table.backward[x].arcs)


@dataclass(frozen=True)
class FlagAnalysis:
    """Stability of a flag of coordinate subspaces and the induced quotient maps."""

    stable: dict[int, bool]
    blocks: dict[int, DyadicMatrix]
    leaks: list[tuple[Hashable, Hashable]] = field(default_factory=list)


def analyse_flag(m: DyadicMatrix, levels: Sequence[int]) -> FlagAnalysis:
    """Flag F_k = span of basis vectors with level >= k (levels ranked by integer value).

    F_k is stable iff Phi of a vector at level >= k has no component below k.
    The quotient map on F_k / F_{k+1} is the diagonal block at level k.
    """
    nz = m.nonzero()
    lv = list(levels)
    stable: dict[int, bool] = {}
    leaks = []
    blocks = {}
    for k in sorted(set(lv)):
        ok = True
        for i, j in zip(*np.nonzero(nz)):
            if lv[j] >= k and lv[i] < k:
                ok = False
                leaks.append((m.carrier[i], m.carrier[j]))
        stable[k] = ok
        idx = [i for i, v in enumerate(lv) if v == k]
        sub = m.ints[np.ix_(idx, idx)]
        blocks[k] = DyadicMatrix(tuple(m.carrier[i] for i in idx), sub, m.exp)
    return FlagAnalysis(stable, blocks, sorted(set(leaks), key=str))


def _block_sign(b: DyadicMatrix) -> int | None:
    if b.is_identity():
        return 1
    neg = DyadicMatrix(b.carrier, -b.ints, b.exp)
    return -1 if neg.is_identity() else None


def filtration_check(n: int) -> Report:
    """The dim<X> flag in the psi_<X> basis: stable, with +-identity quotients."""
    a = operator_matrix(n, "A_on_c")
    levels = [span_dimension(x) for x in a.carrier]
    flag = analyse_flag(a, levels)
    t = Tally("5.1-filtration", n)
    signs = {}
    for k in sorted(flag.stable, reverse=True):
        t.check(flag.stable[k], lambda k=k: f"flag level >= {k} not stable: {flag.leaks[:3]}")
        sign = _block_sign(flag.blocks[k])
        t.check(sign is not None, lambda k=k: f"quotient at level {k} is not +-identity")
        signs[k] = sign
    t.detail["signs"] = {str(k): v for k, v in signs.items()}
    t.counts["levels"] = len(signs)
    return t.report()


@dataclass(frozen=True)
class Verdict:
    """Outcome of a triangularizability test with its certificate."""

    triangularizable: bool
    order: tuple[int, ...] | None = None
    cycle: tuple[int, ...] | None = None


def triangularizable(m: DyadicMatrix | np.ndarray) -> Verdict:
    """Is there an index order making every nonzero entry (i, j) satisfy i weakly before j?

    The certificate is the order itself, or a directed cycle of nonzero
    off-diagonal entries; a 2-cycle is preferred when one exists.
    """
    nz = m.nonzero() if isinstance(m, DyadicMatrix) else np.asarray(m) != 0
    nz = nz.copy()
    np.fill_diagonal(nz, False)
    both = nz & nz.T
    if both.any():
        i, j = (int(v) for v in np.argwhere(both)[0])
        return Verdict(False, cycle=(i, j))
    order = _topological(nz)
    if order is not None:
        return Verdict(True, order=tuple(order))
    edges = [(int(i), int(j)) for i, j in zip(*np.nonzero(nz))]
    reach = transitive_closure(nz)
    for i, j in edges:
        if reach[j, i]:
            return Verdict(False, cycle=tuple(find_cycle(edges, i, j)[:-1]))
    raise AssertionError("cycle detection disagrees with the topological sort")


def involution_report(n: int, exact_operators: bool = True) -> Report:
    """Phi^2 = 1 on every delta, Parseval on deltas and a fixed integer vector, A^2 = 'A^2 = 1."""
    check_n(n)
    t = Tally("5.1-involution", n)
    phi = fourier_matrix(n)
    t.check((phi @ phi).is_identity(), "Phi^2 != 1")
    size = len(phi)
    f = [(3 * i * i + 1) % 7 - 3 for i in range(size)]
    g = fourier_apply(f, n)
    t.check(sum((v * v for v in g), Dyadic(0)) == sum(v * v for v in f), "Parseval fails")
    t.check(fourier_apply(g, n) == [Dyadic(v) for v in f], "Phi(Phi(f)) != f")
    if exact_operators:
        for basis in ("A_on_c", "Aprime_on_cprime", "bar_plus_on_tilde"):
            m = operator_matrix(n, basis)
            t.check((m @ m).is_identity(), f"{basis} squared is not the identity")
    return t.report()


def form_report(n: int) -> Report:
    """(,) is nondegenerate on E_N; its radical on E_N^+ is {0, [1, N-1]}."""
    check_n(n)
    t = Tally("5.2-form", n)
    masks = even_masks(n)
    plus = [m for m in masks if sign_of(m, n) == "+"]

    def radical(vs: list[int]) -> list[int]:
        return [x for x in vs if all(popcount(x & y) % 2 == 0 for y in vs)]

    t.check(radical(masks) == [0], "pairing on E_N is degenerate")
    t.check(radical(plus) == [0, (1 << (n - 1)) - 1], "radical on E_N^+ is not {0, [1,N-1]}")
    k = _plus_kernel(n)
    t.check(bool((k.dot(k) == (2 ** (n - 3)) * _ints(np.eye(len(k), dtype=np.int64))).all()), "(,)^+ degenerate")
    return t.report()


def n5_certify() -> Report:
    """The N=5 decomposition of Q[E_5] in the psi_'<X> basis and its induced maps."""
    n = 5
    m = operator_matrix(n, "Aprime_on_cprime")
    carrier = list(m.carrier)
    block = [carrier.index(x) for x in N5_BLOCK]
    # levels: 3 for dim 2, 2 for the other dim-1 vectors, 1 for the special block, 0 for the empty set
    levels = []
    for i, x in enumerate(carrier):
        d = span_dimension(x, primed=True)
        levels.append({2: 3, 1: 1 if i in block else 2, 0: 0}[d])
    flag = analyse_flag(m, levels)
    t = Tally("5.1-n5", n)
    for k, name in ((3, "Q_2"), (2, "Q_2+Q_1"), (1, "Q_2+Q_1+Q'_1")):
        t.check(flag.stable[k], f"{name} not Phi-stable")
    alphas = {name: _block_sign(flag.blocks[k]) for k, name in ((3, "alpha_2"), (2, "alpha_1"), (0, "alpha_0"))}
    for name, want in (("alpha_2", 1), ("alpha_1", -1), ("alpha_0", -1)):
        t.check(alphas[name] == want, f"{name} = {alphas[name]}, expected {want}")

    sub = m.ints[np.ix_(block, block)]
    twice = [[Dyadic(int(sub[i, j]), m.exp) * 2 for j in range(4)] for i in range(4)]
    t.check(all(v.exp == 0 for row in twice for v in row), "2 alpha'_1 is not integral")
    got = tuple(tuple(v.num for v in row) for row in twice)
    transposed = tuple(zip(*got))
    convention = "column" if got == N5_PRINTED else "transpose" if transposed == N5_PRINTED else None
    t.check(convention is not None, lambda: f"2 alpha'_1 = {got} matches the reference block in neither convention")

    verdict = triangularizable(np.array(got))
    t.check(not verdict.triangularizable, "alpha'_1 block is triangularizable")
    t.check(verdict.cycle == (0, 1) and got[0][1] == got[1][0] == -1, f"2-cycle certificate {verdict.cycle}")

    x24 = EvenSubset.of(n, (2, 4))
    t.check(span_dimension(x24, primed=True) == 1 and span_dimension(x24) == 2, "dim' <24> vs dim <24>")
    t.detail.update(
        alphas=alphas,
        twice_alpha_prime_1=[list(r) for r in got],
        convention=convention,
        block_order=[list(x.elements) for x in N5_BLOCK],
        cycle=list(verdict.cycle or ()),
        sizes={str(k): len(flag.blocks[k]) for k in sorted(flag.blocks)},
    )
    return t.report()


def conjecture_report(n: int) -> Report:
    """Triangularizability of the Fourier matrix on Q[bar E_N^+] in the tilde basis (reported, not asserted)."""
    m = operator_matrix(n, "bar_plus_on_tilde")
    t = Tally("5.2", n)
    t.check((m @ m).is_identity(), "Fourier matrix on bar E_N^+ is not an involution")
    verdict = triangularizable(m)
    bar = build_order(n, "bar_plus")
    nz = m.nonzero()
    off = [(int(i), int(j)) for i, j in zip(*np.nonzero(nz)) if i != j]
    compatible = all(bool(bar.reach[i, j]) for i, j in off)
    names = [list(y.rep.elements) for y in m.carrier]
    t.detail.update(
        triangularizable=verdict.triangularizable,
        certificate_kind="order" if verdict.triangularizable else "cycle",
        certificate=[names[i] for i in (verdict.order if verdict.triangularizable else verdict.cycle)],
        compatible_with_bar_order=compatible,
    )
    t.counts.update(size=len(m), nonzero=int(nz.sum()))
    rep = t.report()
    return rep if not rep.ok else t.report(status="reported")
