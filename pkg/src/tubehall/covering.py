"""
Quiver coverings relating |d| copies of A_infinity^infinity to m cyclic quivers.

Q has vertices (j, i) with 0 <= j < |d| and i in Z, arrows (j, i) -> (j, i-1).
Q-bar has vertices (j, i) with 0 <= j < m and 0 <= i < n', arrows
(j, i) -> (j, i-1 mod n').  The automorphism sigma of Q lowers j and wraps
the last copy into the first with a step of sgn(d) in i.  The covering map C
identifies sigma^n-orbits, and sigma-bar is the automorphism of Q-bar with
C o sigma^{-1} = sigma-bar^{-1} o C.

All floors round toward minus infinity (Python ``//``).  The 1-based vertex
labels used by :mod:`tube_rep` appear only in :func:`tau_power`, where the
rank-n' tube twist is applied to stalk objects.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Mapping, Sequence

from . import derived_tube as dt
from .orbit_atlas import derive_params
from .tube_rep import IndecLabel

StalkObject = dt.StalkObject


@dataclass(frozen=True, order=True)
class VertexQ:
    j: int
    i: int


@dataclass(frozen=True, order=True)
class VertexBarQ:
    j: int
    i: int


@dataclass(frozen=True)
class CoverContext:
    d: int
    n: int
    m: int = field(init=False)
    n_prime: int = field(init=False)
    c: int = field(init=False)

    def __post_init__(self) -> None:
        if self.d == 0:
            raise ValueError("the covering needs d != 0")
        params = derive_params(1 - self.d, self.n)
        object.__setattr__(self, "m", params.m)
        object.__setattr__(self, "n_prime", params.n_prime)
        object.__setattr__(self, "c", params.c)

    @property
    def copies(self) -> int:
        return abs(self.d)

    @property
    def sgn(self) -> int:
        return 1 if self.d > 0 else -1

    def check_q(self, v: VertexQ) -> VertexQ:
        if not 0 <= v.j < self.copies:
            raise ValueError(f"copy index {v.j} out of range for |d|={self.copies}")
        return v

    def check_bar(self, v: VertexBarQ) -> VertexBarQ:
        if not (0 <= v.j < self.m and 0 <= v.i < self.n_prime):
            raise ValueError(f"{v} is not a vertex of the quotient quiver")
        return v


def sigma(ctx: CoverContext, v: VertexQ) -> VertexQ:
    ctx.check_q(v)
    if v.j >= 1:
        return VertexQ(v.j - 1, v.i)
    return VertexQ(ctx.copies - 1, v.i + ctx.sgn)


def sigma_inv(ctx: CoverContext, v: VertexQ) -> VertexQ:
    ctx.check_q(v)
    if v.j <= ctx.copies - 2:
        return VertexQ(v.j + 1, v.i)
    return VertexQ(0, v.i - ctx.sgn)


def sigma_power(ctx: CoverContext, v: VertexQ, k: int) -> VertexQ:
    """sigma^k(v) for any integer k, in closed form."""
    ctx.check_q(v)
    t = v.j - k
    return VertexQ(t % ctx.copies, v.i - ctx.sgn * (t // ctx.copies))


def cover_map(ctx: CoverContext, v: VertexQ) -> VertexBarQ:
    ctx.check_q(v)
    q = v.j // ctx.m
    i = v.i - q * ctx.c
    return VertexBarQ(v.j - q * ctx.m, i - (i // ctx.n_prime) * ctx.n_prime)


def bar_sigma(ctx: CoverContext, v: VertexBarQ) -> VertexBarQ:
    ctx.check_bar(v)
    if v.j >= 1:
        return VertexBarQ(v.j - 1, v.i)
    return VertexBarQ(ctx.m - 1, (v.i + ctx.c) % ctx.n_prime)


def bar_sigma_inv(ctx: CoverContext, v: VertexBarQ) -> VertexBarQ:
    ctx.check_bar(v)
    if v.j <= ctx.m - 2:
        return VertexBarQ(v.j + 1, v.i)
    return VertexBarQ(0, (v.i - ctx.c) % ctx.n_prime)


def bar_sigma_power(ctx: CoverContext, v: VertexBarQ, k: int) -> VertexBarQ:
    step = bar_sigma if k >= 0 else bar_sigma_inv
    for _ in range(abs(k)):
        v = step(ctx, v)
    return v


def window_vertices(ctx: CoverContext, window: int) -> list[VertexQ]:
    return [VertexQ(j, i) for j in range(ctx.copies) for i in range(-window, window + 1)]


def bar_vertices(ctx: CoverContext) -> list[VertexBarQ]:
    return [VertexBarQ(j, i) for j in range(ctx.m) for i in range(ctx.n_prime)]


@dataclass
class DiagramReport:
    d: int
    n: int
    window: int
    checked: int = 0
    violations: list[dict] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.violations

    def to_json(self) -> dict:
        return {"d": self.d, "n": self.n, "window": self.window, "checked": self.checked,
                "ok": self.ok, "violations": self.violations}


def check_diagrams(ctx: CoverContext, window: int = 50) -> DiagramReport:
    """Commuting square, sigma^n-periodicity, arrows, surjectivity and sigma-bar^m."""
    rep = DiagramReport(ctx.d, ctx.n, window)

    def bad(kind: str, v, got, want) -> None:
        rep.violations.append({"kind": kind, "vertex": [v.j, v.i], "got": list(got), "expected": list(want)})

    image = set()
    for v in window_vertices(ctx, window):
        rep.checked += 1
        cv = cover_map(ctx, v)
        image.add(cv)
        if sigma(ctx, sigma_inv(ctx, v)) != v or sigma_inv(ctx, sigma(ctx, v)) != v:
            bad("sigma-inverse", v, (v.j, v.i), (v.j, v.i))
        if sigma_power(ctx, v, 1) != sigma(ctx, v) or sigma_power(ctx, v, -1) != sigma_inv(ctx, v):
            bad("sigma-power", v, (sigma_power(ctx, v, 1).j, sigma_power(ctx, v, 1).i), (sigma(ctx, v).j, sigma(ctx, v).i))
        lhs, rhs = cover_map(ctx, sigma_inv(ctx, v)), bar_sigma_inv(ctx, cv)
        if lhs != rhs:
            bad("square", v, (lhs.j, lhs.i), (rhs.j, rhs.i))
        per = cover_map(ctx, sigma_power(ctx, v, ctx.n))
        if per != cv:
            bad("periodicity", v, (per.j, per.i), (cv.j, cv.i))
        head = cover_map(ctx, VertexQ(v.j, v.i - 1))
        want = VertexBarQ(cv.j, (cv.i - 1) % ctx.n_prime)
        if head != want:
            bad("arrow", v, (head.j, head.i), (want.j, want.i))
    if window >= ctx.n:
        missing = set(bar_vertices(ctx)) - image
        for u in sorted(missing):
            rep.violations.append({"kind": "surjectivity", "vertex": [u.j, u.i]})
    for u in bar_vertices(ctx):
        got = bar_sigma_power(ctx, u, ctx.m)
        want = VertexBarQ(u.j, (u.i + ctx.c) % ctx.n_prime)
        if got != want:
            bad("bar-sigma-m", u, (got.j, got.i), (want.j, want.i))
    return rep


# ---------------------------------------------------------------- dimension vectors


def push_down(ctx: CoverContext, X: Mapping[VertexQ, int]) -> dict[VertexBarQ, int]:
    out: dict[VertexBarQ, int] = {}
    for v, k in X.items():
        if k:
            u = cover_map(ctx, v)
            out[u] = out.get(u, 0) + k
    return out


def pull_back(ctx: CoverContext, Y: Mapping[VertexBarQ, int], vertices: Sequence[VertexQ]) -> dict[VertexQ, int]:
    return {v: Y.get(cover_map(ctx, v), 0) for v in vertices}


def orbit_sum(ctx: CoverContext, X: Mapping[VertexQ, int], vertices: Sequence[VertexQ]) -> dict[VertexQ, int]:
    """Sum over p of the dimension vectors of sigma^{np} X, evaluated on ``vertices``."""
    out = {v: 0 for v in vertices}
    support = [v for v, k in X.items() if k]
    if not support or not vertices:
        return out
    lo = min(v.i for v in vertices)
    hi = max(v.i for v in vertices)
    wanted = set(vertices)
    for u in support:
        # sigma^n moves i by at least one every |d| applications, so the orbit
        # leaves [lo, hi] after a bounded number of steps in each direction
        bound = (hi - lo + abs(u.i) + max(abs(lo), abs(hi)) + 2) * ctx.copies + 2
        for p in range(-bound, bound + 1):
            w = sigma_power(ctx, u, ctx.n * p)
            if w in wanted:
                out[w] += X[u]
    return out


def orbit_sum_dims(ctx: CoverContext, X: Mapping[VertexQ, int], window: int | None = None) -> tuple[dict[VertexBarQ, int], dict[VertexQ, int]]:
    """Push X down along C and pull it back; assert agreement with the sigma^n-orbit sum.

    Returns (push-down on Q-bar, pull-back on the window).
    """
    for v in X:
        ctx.check_q(v)
    if window is None:
        window = max([abs(v.i) for v in X] + [0]) + 2 * ctx.n
    vertices = window_vertices(ctx, window)
    down = push_down(ctx, X)
    back = pull_back(ctx, down, vertices)
    expected = orbit_sum(ctx, X, vertices)
    if back != expected:
        raise AssertionError("pull-back of the push-down differs from the sigma^n-orbit sum")
    return down, {v: k for v, k in back.items() if k}


# ---------------------------------------------------------------- reindexing


def index_bookkeeping(m: int, p: int) -> tuple[int, int]:
    """(p', j_p) with p' = ceil(p/m) and j_p = m + p - m p', so 1 <= j_p <= m."""
    if m < 1:
        raise ValueError("m must be positive")
    pp = -((-p) // m)
    return pp, m + p - m * pp


class WindowTooSmall(ValueError):
    pass


def tau_power(obj: StalkObject, k: int, rank: int) -> StalkObject:
    """tau^k on a stalk object of the tube of the given rank (tau adds one to the socle)."""
    return StalkObject(tuple((s, IndecLabel((lab.socle - 1 + k) % rank + 1, lab.length)) for s, lab in obj.summands))


def twist_step(ctx: CoverContext, Y: Sequence[StalkObject]) -> list[StalkObject]:
    """One application of Sigma o sigma-bar^{-1}: (tau^c Sigma Y_{m-1}, Sigma Y_0, ..., Sigma Y_{m-2})."""
    r = ctx.n_prime
    return [tau_power(Y[-1], ctx.c, r).suspend()] + [y.suspend() for y in Y[:-1]]


def twist_step_inv(ctx: CoverContext, Y: Sequence[StalkObject]) -> list[StalkObject]:
    r = ctx.n_prime
    return [y.suspend(-1) for y in Y[1:]] + [tau_power(Y[0], -ctx.c, r).suspend(-1)]


def twist_power(ctx: CoverContext, Y: Sequence[StalkObject], p: int) -> list[StalkObject]:
    """(Sigma o sigma-bar^{-1})^p Y in closed form, through (p', j_p)."""
    m, r = ctx.m, ctx.n_prime
    pp, jp = index_bookkeeping(m, p)
    out = []
    for j in range(m):
        if j < jp:
            out.append(tau_power(Y[m - jp + j], ctx.c * pp, r).suspend(p))
        else:
            out.append(tau_power(Y[j - jp], ctx.c * (pp - 1), r).suspend(p))
    return out


def _hom_dim(X: StalkObject, Y: StalkObject, rank: int) -> int:
    a = dt.hom_dim_derived(X, Y, rank, 2)
    b = dt.hom_dim_derived(X, Y, rank, 3)
    if a != b:
        raise AssertionError(f"Hom dimension differs between F_2 ({a}) and F_3 ({b})")
    return a


def _shift_range(objs: Sequence[StalkObject]) -> tuple[int, int] | None:
    shifts = [s for o in objs for s, _ in o.summands]
    return (min(shifts), max(shifts)) if shifts else None


def psi_dim_identity(ctx: CoverContext, X: Sequence[StalkObject], Y: Sequence[StalkObject], window: tuple[int, int] = (-5, 5)) -> tuple[int, int]:
    """Both sides of the reindexing identity for the twisted orbit Hom.

    lhs = sum over p of sum_j dim Hom(X_j, ((Sigma sigma-bar^{-1})^p Y)_j)
    rhs = sum over p', j, j' of dim Hom(X_j, Sigma^{j-j'+mp'} tau^{cp'} Y_j')

    ``window`` is the p'-range; p runs over m(lo-1)+1 .. m*hi, the p whose
    p' lies in it.  Raises :class:`WindowTooSmall` if some possibly nonzero
    term falls outside.
    """
    m, r = ctx.m, ctx.n_prime
    if len(X) != m or len(Y) != m:
        raise ValueError(f"X and Y must have m={m} components")
    lo, hi = window
    sx, sy = _shift_range(X), _shift_range(Y)
    if sx is None or sy is None:
        return 0, 0
    # Hom(Sigma^s A, Sigma^t B) vanishes unless t - s is 0 or 1
    p_lo, p_hi = sx[0] - sy[1], sx[1] - sy[0] + 1
    if p_lo < m * (lo - 1) + 1 or p_hi > m * hi:
        raise WindowTooSmall(f"shifts need p in [{p_lo}, {p_hi}], window covers [{m * (lo - 1) + 1}, {m * hi}]")
    if -((-(p_lo - m + 1)) // m) < lo or (p_hi + m - 1) // m > hi:
        raise WindowTooSmall(f"shifts need p' beyond [{lo}, {hi}]")
    lhs = 0
    for p in range(m * (lo - 1) + 1, m * hi + 1):
        Z = twist_power(ctx, Y, p)
        lhs += sum(_hom_dim(X[j], Z[j], r) for j in range(m))
    rhs = 0
    for pp in range(lo, hi + 1):
        for j in range(m):
            for jj in range(m):
                rhs += _hom_dim(X[j], tau_power(Y[jj], ctx.c * pp, r).suspend(j - jj + m * pp), r)
    return lhs, rhs


def psi_object(ctx: CoverContext, X: Sequence[StalkObject]) -> StalkObject:
    """Psi(X) = sum over j of Sigma^{m-1-j} X_j."""
    out = StalkObject.zero()
    for j, x in enumerate(X):
        out = out + x.suspend(ctx.m - 1 - j)
    return out


def psi_orbit_dim(ctx: CoverContext, X: Sequence[StalkObject], Y: Sequence[StalkObject], window: tuple[int, int] = (-5, 5)) -> int:
    """sum over p' of dim Hom(Psi X, Sigma^{mp'} tau^{cp'} Psi Y); equals the rhs of :func:`psi_dim_identity`."""
    PX, PY = psi_object(ctx, X), psi_object(ctx, Y)
    return sum(_hom_dim(PX, tau_power(PY, ctx.c * pp, ctx.n_prime).suspend(ctx.m * pp), ctx.n_prime)
               for pp in range(window[0], window[1] + 1))


# ---------------------------------------------------------------- rendering


def cover_dot(ctx: CoverContext, window: int = 3) -> str:
    """DOT for Q (|i| <= window) and Q-bar; every Q vertex is labelled with its C-image."""
    lines = ["digraph cover {", "  node [shape=plaintext];", "  subgraph cluster_Q {", '    label="Q";']
    for v in window_vertices(ctx, window):
        u = cover_map(ctx, v)
        lines.append(f'    "Q:{v.j},{v.i}" [label="({v.j},{v.i}) -> ({u.j},{u.i})"];')
    for v in window_vertices(ctx, window):
        if v.i > -window:
            lines.append(f'    "Q:{v.j},{v.i}" -> "Q:{v.j},{v.i - 1}";')
    lines += ["  }", "  subgraph cluster_Qbar {", '    label="Q-bar";']
    for u in bar_vertices(ctx):
        lines.append(f'    "B:{u.j},{u.i}" [label="({u.j},{u.i})"];')
    for u in bar_vertices(ctx):
        lines.append(f'    "B:{u.j},{u.i}" -> "B:{u.j},{(u.i - 1) % ctx.n_prime}";')
    lines += ["  }", "}"]
    return "\n".join(lines) + "\n"


def cover_report(ctx: CoverContext, window: int = 50) -> dict:
    rep = check_diagrams(ctx, window)
    return {"d": ctx.d, "n": ctx.n, "m": ctx.m, "n_prime": ctx.n_prime, "c": ctx.c, "diagrams": rep.to_json()}
