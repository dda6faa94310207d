"""Strong shift equivalence: certificate verifiers and the reduction of a
square matrix to a nonsingular core by iterated full-rank factorization.

Starting from ``A = B_1 C_1``, each step factors the previous swap
``C_i B_i`` again.  A singular intermediate strictly shrinks, so within
``n`` steps some ``C_l B_l`` is either nonsingular (a chain of lag ``l``
to the core) or zero (then ``A^(l+1) = 0``).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional

from .factor import full_rank_factorization
from .matrix import Matrix, ShapeError, char_poly_reversed, det, mat_pow, rank

__all__ = [
    "Check",
    "Report",
    "ElementaryStep",
    "SSEChain",
    "ShiftEquivalencePair",
    "NilpotencyWitness",
    "verify_elementary",
    "verify_sse_chain",
    "verify_se",
    "lag_index",
    "sse_to_nonsingular",
    "compose_chain_to_se",
    "power_chain_identity",
    "zeta_invariant",
]


@dataclass(frozen=True)
class Check:
    name: str
    ok: bool
    where: Optional[str] = None


@dataclass
class Report:
    """Ordered list of identity checks; truthy iff every check passed."""

    checks: list = field(default_factory=list)

    def add(self, name: str, ok: bool, where: str | None = None) -> bool:
        self.checks.append(Check(name, bool(ok), where))
        return ok

    def __bool__(self) -> bool:
        return all(c.ok for c in self.checks)

    @property
    def first_failure(self) -> Check | None:
        return next((c for c in self.checks if not c.ok), None)

    def to_dict(self) -> dict:
        out = {
            "ok": bool(self),
            "checks": [{"identity": c.name, "ok": c.ok, **({"where": c.where} if c.where else {})}
                       for c in self.checks],
        }
        fail = self.first_failure
        if fail is not None:
            out["first_failure"] = {"identity": fail.name, "where": fail.where}
        return out


@dataclass(frozen=True)
class ElementaryStep:
    """``source = U*V`` and ``target = V*U``."""

    U: Matrix
    V: Matrix
    source: Matrix
    target: Matrix

    @classmethod
    def from_pair(cls, u: Matrix, v: Matrix) -> "ElementaryStep":
        return cls(u, v, u * v, v * u)


@dataclass(frozen=True)
class SSEChain:
    source: Matrix
    core: Matrix
    steps: tuple
    lag: int


@dataclass(frozen=True)
class ShiftEquivalencePair:
    U: Matrix
    V: Matrix
    lag: int


@dataclass(frozen=True)
class NilpotencyWitness:
    """``chain`` ends in a zero core, so ``source^(lag+1) = 0``."""

    lag: int
    chain: SSEChain

    @property
    def source(self) -> Matrix:
        return self.chain.source


def _step_report(step: ElementaryStep, report: Report, label: str = "") -> bool:
    u, v = step.U, step.V
    if u.cols != v.rows or v.cols != u.rows:
        raise ShapeError(f"U {u.shape} and V {v.shape} are not compatible")
    ok1 = report.add("A=UV", step.source.shape == (u.rows, v.cols) and u * v == step.source, label or None)
    ok2 = report.add("VU=B", step.target.shape == (v.rows, u.cols) and v * u == step.target, label or None)
    return ok1 and ok2


def verify_elementary(step: ElementaryStep) -> Report:
    report = Report()
    _step_report(step, report)
    return report


def verify_sse_chain(chain: SSEChain) -> Report:
    """Check every step, every link and the lag; reports the first failure's step."""
    report = Report()
    steps = chain.steps
    report.add("lag = number of steps", chain.lag == len(steps), f"lag {chain.lag}, steps {len(steps)}")
    if not steps:
        report.add("source = core", chain.source == chain.core)
        return report
    report.add("steps[0].from = source", steps[0].source == chain.source, "step 0")
    for i, step in enumerate(steps):
        try:
            _step_report(step, report, f"step {i}")
        except ShapeError as exc:
            report.add("A=UV", False, f"step {i}: {exc}")
        if i + 1 < len(steps):
            report.add("steps[i].to = steps[i+1].from", step.target == steps[i + 1].source, f"step {i}")
    report.add("steps[-1].to = core", steps[-1].target == chain.core, f"step {len(steps) - 1}")
    return report


def verify_se(a: Matrix, b: Matrix, u: Matrix, v: Matrix, lag: int) -> Report:
    """The four identities ``AU=UB, VA=BV, A^l=UV, B^l=VU``."""
    if not a.is_square() or not b.is_square():
        raise ShapeError("A and B must be square")
    if u.shape != (a.rows, b.rows) or v.shape != (b.rows, a.rows):
        raise ShapeError(f"U {u.shape} / V {v.shape} incompatible with A {a.shape}, B {b.shape}")
    if lag < 1:
        raise ValueError("lag must be at least 1")
    report = Report()
    report.add("AU=UB", a * u == u * b)
    report.add("VA=BV", v * a == b * v)
    report.add("A^l=UV", mat_pow(a, lag) == u * v, f"l={lag}")
    report.add("B^l=VU", mat_pow(b, lag) == v * u, f"l={lag}")
    return report


def lag_index(a: Matrix) -> int:
    """Least ``k >= 1`` with ``rank(a^k) == rank(a^(k+1))``."""
    if not a.is_square():
        raise ShapeError("lag index needs a square matrix")
    k = 1
    cur = a
    r = rank(cur)
    while True:
        nxt = cur * a
        rn = rank(nxt)
        if rn == r:
            return k
        k, cur, r = k + 1, nxt, rn


def sse_to_nonsingular(a: Matrix):
    """Return an :class:`SSEChain` to a nonsingular core, or a
    :class:`NilpotencyWitness` when the iteration reaches zero.

    Both results are verified before they are returned.
    """
    if not a.is_square():
        raise ShapeError("strong shift equivalence needs a square matrix")
    if a.is_zero():
        chain = SSEChain(a, a, (), 0)
        return NilpotencyWitness(0, chain)
    steps = []
    cur = a
    while True:
        f = full_rank_factorization(cur)
        step = ElementaryStep.from_pair(f.P, f.Q)
        steps.append(step)
        nxt = step.target
        if nxt.is_zero():
            chain = SSEChain(a, nxt, tuple(steps), len(steps))
            if not verify_sse_chain(chain) or not mat_pow(a, len(steps) + 1).is_zero():
                raise AssertionError("nilpotency witness failed verification")
            return NilpotencyWitness(len(steps), chain)
        if det(nxt):
            chain = SSEChain(a, nxt, tuple(steps), len(steps))
            if not verify_sse_chain(chain):
                raise AssertionError("chain failed verification")
            return chain
        if nxt.rows >= cur.rows:
            raise AssertionError("singular intermediate did not shrink")
        cur = nxt


def _product(mats, ring, n):
    out = Matrix.identity(ring, n)
    for m in mats:
        out = out * m
    return out


def compose_chain_to_se(chain: SSEChain) -> ShiftEquivalencePair:
    """``U = U_1...U_l`` and ``V = V_l...V_1`` give a lag-``l`` shift equivalence."""
    if chain.lag < 1:
        raise ValueError("composition needs a chain of lag at least 1")
    if not verify_sse_chain(chain):
        raise ValueError("chain does not verify")
    ring = chain.source.ring
    n = chain.source.rows
    u = _product([s.U for s in chain.steps], ring, n)
    v = _product([s.V for s in reversed(chain.steps)], ring, chain.core.rows)
    pair = ShiftEquivalencePair(u, v, chain.lag)
    if not verify_se(chain.source, chain.core, u, v, chain.lag):
        raise AssertionError("composed pair failed verification")
    return pair


def power_chain_identity(a: Matrix, chain: SSEChain) -> bool:
    """``a^l = (U_1...U_l)(V_l...V_1)`` and ``a^(l+1) = (U_1...U_l) core (V_l...V_1)``."""
    l = chain.lag
    ring, n = a.ring, a.rows
    u = _product([s.U for s in chain.steps], ring, n)
    v = _product([s.V for s in reversed(chain.steps)], ring, chain.core.rows)
    return mat_pow(a, l) == u * v and mat_pow(a, l + 1) == u * chain.core * v


def zeta_invariant(step: ElementaryStep) -> bool:
    """``det(I - t*UV) == det(I - t*VU)``."""
    return char_poly_reversed(step.U * step.V) == char_poly_reversed(step.V * step.U)
