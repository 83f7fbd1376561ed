"""State-space models and rational-matrix arithmetic.

Continuous-time LTI systems G(s) = C (sI - A)^-1 B + D are the universal
carrier for plants, multiplier weights and IQC factors.  All operations are
pure; models are immutable after construction.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field

import numpy as np
import scipy.linalg

from .errors import (
    DimensionError,
    IllPosedLoop,
    ImaginaryAxisPole,
    SingularResolvent,
)

# Hurwitz certification margin: eigenvalues must satisfy Re(lam) < -EPS_STAB.
EPS_STAB = 1e-9

__all__ = [
    "EPS_STAB",
    "StateSpaceModel",
    "FrequencyGrid",
    "DelayChannelSpec",
    "ss",
    "static_gain",
    "identity",
    "zero_system",
    "from_tf",
    "freq_response",
    "delay_deviation_response",
    "para_hermitian_conjugate",
    "series",
    "parallel",
    "append",
    "vstack_outputs",
    "hstack_inputs",
    "feedback",
    "interconnect",
    "stable_unstable_split",
    "minreal",
    "to_dict",
    "from_dict",
    "dumps",
    "loads",
]


def _as_matrix(M, rows=None, cols=None, name="matrix"):
    M = np.atleast_2d(np.asarray(M, dtype=float))
    if rows is not None and M.shape[0] != rows:
        raise DimensionError(f"{name}: expected {rows} rows, got {M.shape[0]}")
    if cols is not None and M.shape[1] != cols:
        raise DimensionError(f"{name}: expected {cols} cols, got {M.shape[1]}")
    return M


@dataclass(frozen=True)
class StateSpaceModel:
    """Real state-space realization (A, B, C, D).

    Zero-state (static) systems are allowed: A is then 0x0.  Input or output
    widths of zero are permitted so that absent channels (e.g. a plant with
    no disturbance input) need no special casing.
    """

    A: np.ndarray
    B: np.ndarray
    C: np.ndarray
    D: np.ndarray

    def __post_init__(self):
        A = np.atleast_2d(np.asarray(self.A, dtype=float))
        if A.size == 0:
            A = A.reshape(0, 0)
        if A.shape[0] != A.shape[1]:
            raise DimensionError(f"A must be square, got {A.shape}")
        n = A.shape[0]
        D = np.atleast_2d(np.asarray(self.D, dtype=float))
        p, m = D.shape
        B = np.asarray(self.B, dtype=float).reshape(n, -1) if np.size(self.B) else np.zeros((n, m))
        if B.shape != (n, m):
            B = _as_matrix(self.B, n, m, "B")
        C = np.asarray(self.C, dtype=float).reshape(-1, n) if np.size(self.C) else np.zeros((p, n))
        if C.shape != (p, n):
            C = _as_matrix(self.C, p, n, "C")
        for key, val in (("A", A), ("B", B), ("C", C), ("D", D)):
            val = np.ascontiguousarray(val)
            val.flags.writeable = False
            object.__setattr__(self, key, val)

    @property
    def nstates(self) -> int:
        return self.A.shape[0]

    @property
    def ninputs(self) -> int:
        return self.D.shape[1]

    @property
    def noutputs(self) -> int:
        return self.D.shape[0]

    def poles(self) -> np.ndarray:
        return np.linalg.eigvals(self.A) if self.nstates else np.zeros(0, dtype=complex)

    @property
    def stable(self) -> bool:
        """True iff every eigenvalue of A has real part < -EPS_STAB."""
        return bool(np.all(self.poles().real < -EPS_STAB)) if self.nstates else True

    def __call__(self, w: float) -> np.ndarray:
        return freq_response(self, w)

    def __repr__(self):
        return (
            f"StateSpaceModel(n={self.nstates}, inputs={self.ninputs}, "
            f"outputs={self.noutputs})"
        )


def ss(A, B, C, D) -> StateSpaceModel:
    """Build a model from loosely-shaped matrix data."""
    A = np.atleast_2d(np.asarray(A, dtype=float))
    if A.size == 0:
        A = A.reshape(0, 0)
    D = np.atleast_2d(np.asarray(D, dtype=float))
    n = A.shape[0]
    p, m = D.shape
    B = _as_matrix(np.asarray(B, dtype=float).reshape(n, -1) if n else np.zeros((0, m)), n, m, "B")
    C = _as_matrix(np.asarray(C, dtype=float).reshape(-1, n) if n else np.zeros((p, 0)), p, n, "C")
    return StateSpaceModel(A, B, C, D)


def static_gain(D) -> StateSpaceModel:
    D = np.atleast_2d(np.asarray(D, dtype=float))
    p, m = D.shape
    return StateSpaceModel(np.zeros((0, 0)), np.zeros((0, m)), np.zeros((p, 0)), D)


def identity(n: int) -> StateSpaceModel:
    return static_gain(np.eye(n))


def zero_system(p: int, m: int) -> StateSpaceModel:
    return static_gain(np.zeros((p, m)))


def from_tf(num, den) -> StateSpaceModel:
    """SISO transfer function num(s)/den(s) to controllable canonical form.

    Coefficients in descending powers of s; requires deg(num) <= deg(den).
    """
    num = np.atleast_1d(np.asarray(num, dtype=float))
    den = np.atleast_1d(np.asarray(den, dtype=float))
    den = np.trim_zeros(den, "f")
    if den.size == 0:
        raise DimensionError("denominator is zero")
    if num.size > den.size:
        raise DimensionError("transfer function must be proper")
    num = num / den[0]
    den = den / den[0]
    n = den.size - 1
    if n == 0:
        return static_gain([[num[-1] if num.size else 0.0]])
    num = np.concatenate([np.zeros(den.size - num.size), num])
    d = num[0]
    # strictly-proper remainder coefficients, descending, length n
    rem = num[1:] - d * den[1:]
    A = np.zeros((n, n))
    A[0, :] = -den[1:]
    if n > 1:
        A[1:, :-1] = np.eye(n - 1)
    B = np.zeros((n, 1))
    B[0, 0] = 1.0
    C = rem[np.newaxis, :]
    return StateSpaceModel(A, B, C, [[d]])


# ---------------------------------------------------------------------------
# frequency-domain evaluation
# ---------------------------------------------------------------------------


def freq_response(sys: StateSpaceModel, w: float) -> np.ndarray:
    """Evaluate G(jw) = D + C (jw I - A)^-1 B; w = inf returns D."""
    if np.isinf(w):
        return sys.D.astype(complex)
    if sys.nstates == 0:
        return sys.D.astype(complex)
    M = 1j * w * np.eye(sys.nstates) - sys.A
    try:
        X = np.linalg.solve(M, sys.B.astype(complex))
    except np.linalg.LinAlgError as exc:
        raise SingularResolvent(f"jw*I - A singular at w={w}") from exc
    if sys.B.size:
        resid = np.linalg.norm(M @ X - sys.B) / max(1.0, np.linalg.norm(sys.B))
        if not np.isfinite(resid) or resid > 1e-6:
            raise SingularResolvent(f"jw*I - A numerically singular at w={w}")
    return sys.D + sys.C @ X


def delay_deviation_response(tau: float, w: float) -> complex:
    """Frequency response e^{-jw tau} - 1 of the delay-deviation operator."""
    if tau < 0:
        raise ValueError("tau must be nonnegative")
    if np.isinf(w):
        # no limit exists; return the worst-case magnitude point on the circle
        return complex(-2.0)
    return complex(np.exp(-1j * w * tau) - 1.0)


def para_hermitian_conjugate(sys: StateSpaceModel) -> StateSpaceModel:
    """G~(s) = G(-conj(s))*, realized as (-A^T, -C^T, B^T, D^T)."""
    return StateSpaceModel(-sys.A.T, -sys.C.T, sys.B.T, sys.D.T)


# ---------------------------------------------------------------------------
# interconnections
# ---------------------------------------------------------------------------


def series(first: StateSpaceModel, second: StateSpaceModel) -> StateSpaceModel:
    """Cascade: output of `first` drives `second`; transfer = G2(s) G1(s)."""
    if first.noutputs != second.ninputs:
        raise DimensionError(
            f"series: {first.noutputs} outputs vs {second.ninputs} inputs"
        )
    n1, n2 = first.nstates, second.nstates
    A = np.block(
        [
            [first.A, np.zeros((n1, n2))],
            [second.B @ first.C, second.A],
        ]
    )
    B = np.vstack([first.B, second.B @ first.D])
    C = np.hstack([second.D @ first.C, second.C])
    D = second.D @ first.D
    return StateSpaceModel(A, B, C, D)


def parallel(g1: StateSpaceModel, g2: StateSpaceModel) -> StateSpaceModel:
    """Sum of transfer functions: same inputs, outputs added."""
    if (g1.ninputs, g1.noutputs) != (g2.ninputs, g2.noutputs):
        raise DimensionError("parallel: I/O dimensions must match")
    A = scipy.linalg.block_diag(g1.A, g2.A)
    B = np.vstack([g1.B, g2.B])
    C = np.hstack([g1.C, g2.C])
    return StateSpaceModel(A, B, C, g1.D + g2.D)


def append(g1: StateSpaceModel, g2: StateSpaceModel) -> StateSpaceModel:
    """Block-diagonal stack diag(G1, G2)."""
    A = scipy.linalg.block_diag(g1.A, g2.A)
    B = scipy.linalg.block_diag(g1.B, g2.B)
    C = scipy.linalg.block_diag(g1.C, g2.C)
    D = scipy.linalg.block_diag(g1.D, g2.D)
    return StateSpaceModel(A, B, C, D)


def vstack_outputs(g1: StateSpaceModel, g2: StateSpaceModel) -> StateSpaceModel:
    """Shared input, outputs stacked: [G1; G2]."""
    if g1.ninputs != g2.ninputs:
        raise DimensionError("vstack_outputs: input widths must match")
    A = scipy.linalg.block_diag(g1.A, g2.A)
    B = np.vstack([g1.B, g2.B])
    C = scipy.linalg.block_diag(g1.C, g2.C)
    D = np.vstack([g1.D, g2.D])
    return StateSpaceModel(A, B, C, D)


def hstack_inputs(g1: StateSpaceModel, g2: StateSpaceModel) -> StateSpaceModel:
    """Inputs concatenated, outputs added: [G1 G2]."""
    if g1.noutputs != g2.noutputs:
        raise DimensionError("hstack_inputs: output widths must match")
    A = scipy.linalg.block_diag(g1.A, g2.A)
    B = scipy.linalg.block_diag(g1.B, g2.B)
    C = np.hstack([g1.C, g2.C])
    D = np.hstack([g1.D, g2.D])
    return StateSpaceModel(A, B, C, D)


def blockcat(rows) -> StateSpaceModel:
    """Assemble a block transfer matrix [[G11, G12, ...], ...].

    Row blocks share inputs columnwise; each block gets independent state.
    """
    row_sys = []
    for row in rows:
        acc = row[0]
        for g in row[1:]:
            acc = hstack_inputs(acc, g)
        row_sys.append(acc)
    acc = row_sys[0]
    for g in row_sys[1:]:
        acc = vstack_outputs(acc, g)
    return acc


def feedback(g: StateSpaceModel, h: StateSpaceModel | None = None, sign: int = -1) -> StateSpaceModel:
    """Close the loop u = r + sign * H(y) around y = G(u); returns r -> y.

    Raises IllPosedLoop when the static loop matrix I - sign*Dg*Dh is singular.
    """
    if h is None:
        h = identity(g.noutputs)
    if g.noutputs != h.ninputs or h.noutputs != g.ninputs:
        raise DimensionError("feedback: loop dimensions not conformal")
    L = np.eye(g.noutputs) - sign * (g.D @ h.D)
    if np.linalg.cond(L) > 1e12:
        raise IllPosedLoop("static loop matrix I - sign*Dg*Dh is singular")
    Li = np.linalg.inv(L)
    ng, nh = g.nstates, h.nstates
    # y = Li (Cg xg + sign Dg Ch xh + Dg r)
    Cy = Li @ np.hstack([g.C, sign * (g.D @ h.C)])
    Dy = Li @ g.D
    # u = r + sign (Ch xh + Dh y)
    Cu = sign * np.hstack([np.zeros((g.ninputs, ng)), h.C]) + sign * (h.D @ Cy)
    Du = np.eye(g.ninputs) + sign * (h.D @ Dy)
    A = np.block(
        [
            [g.A, np.zeros((ng, nh))],
            [np.zeros((nh, ng)), h.A],
        ]
    ) + np.vstack([g.B @ Cu, h.B @ Cy])
    B = np.vstack([g.B @ Du, h.B @ Dy])
    return StateSpaceModel(A, B, Cy, Dy)


_WIRINGS = {
    "series": series,
    "parallel": parallel,
    "append": append,
    "feedback": feedback,
}


def interconnect(parts, wiring: str) -> StateSpaceModel:
    """Compose a list of systems with a named wiring.

    wiring is one of 'series', 'parallel', 'append' (left-fold over the
    parts) or 'feedback' (one part with unity feedback, or a [plant,
    controller] pair).
    """
    if wiring not in _WIRINGS:
        raise ValueError(f"unknown wiring {wiring!r}")
    parts = list(parts)
    if not parts:
        raise ValueError("interconnect needs at least one part")
    if wiring == "feedback":
        if len(parts) == 1:
            return feedback(parts[0])
        if len(parts) == 2:
            return feedback(parts[0], parts[1])
        raise ValueError("feedback wiring takes one or two parts")
    acc = parts[0]
    op = _WIRINGS[wiring]
    for g in parts[1:]:
        acc = op(acc, g)
    return acc


# ---------------------------------------------------------------------------
# spectral splitting and model reduction
# ---------------------------------------------------------------------------


def stable_unstable_split(sys: StateSpaceModel, eps_stab: float = EPS_STAB):
    """Additive split G = G_S + G_U with G_S stable and G_U antistable.

    Performed via ordered real Schur decomposition and a Sylvester solve.
    The full D matrix is carried by G_S; G_U is strictly proper.
    """
    n = sys.nstates
    if n == 0:
        return sys, zero_system(sys.noutputs, sys.ninputs)
    lam = sys.poles()
    if np.any(np.abs(lam.real) <= eps_stab):
        raise ImaginaryAxisPole(
            f"eigenvalue within {eps_stab:g} of the imaginary axis: {lam}"
        )
    T, Z, sdim = scipy.linalg.schur(sys.A, output="real", sort="lhp")
    if sdim == n:
        return sys, zero_system(sys.noutputs, sys.ninputs)
    Bz = Z.T @ sys.B
    Cz = sys.C @ Z
    if sdim == 0:
        return (
            static_gain(sys.D),
            StateSpaceModel(T, Bz, Cz, np.zeros_like(sys.D)),
        )
    T11, T12, T22 = T[:sdim, :sdim], T[:sdim, sdim:], T[sdim:, sdim:]
    # decouple: [[I, Y],[0, I]] block-diagonalizes T when T11 Y - Y T22 = -T12
    Y = scipy.linalg.solve_sylvester(T11, -T22, -T12)
    B1 = Bz[:sdim] - Y @ Bz[sdim:]
    B2 = Bz[sdim:]
    C1 = Cz[:, :sdim]
    C2 = Cz[:, :sdim] @ Y + Cz[:, sdim:]
    g_stable = StateSpaceModel(T11, B1, C1, sys.D)
    g_anti = StateSpaceModel(T22, B2, C2, np.zeros_like(sys.D))
    return g_stable, g_anti


def _gramian_factor(P):
    w, V = np.linalg.eigh((P + P.T) / 2)
    w = np.clip(w, 0.0, None)
    return V * np.sqrt(w)


def _balanced_truncate_stable(sys: StateSpaceModel, tol: float) -> StateSpaceModel:
    n = sys.nstates
    if n == 0:
        return sys
    P = scipy.linalg.solve_continuous_lyapunov(sys.A, -sys.B @ sys.B.T)
    Q = scipy.linalg.solve_continuous_lyapunov(sys.A.T, -sys.C.T @ sys.C)
    Lp = _gramian_factor(P)
    Lq = _gramian_factor(Q)
    U, sv, Vt = np.linalg.svd(Lq.T @ Lp)
    if sv.size == 0 or sv[0] <= 0:
        return static_gain(sys.D)
    k = int(np.sum(sv > tol * sv[0]))
    if k == 0:
        return static_gain(sys.D)
    s_half = np.sqrt(sv[:k])
    Tr = Lp @ Vt[:k].T / s_half
    Tl = (U[:, :k] / s_half).T @ Lq.T
    return StateSpaceModel(Tl @ sys.A @ Tr, Tl @ sys.B, sys.C @ Tr, sys.D)


def minreal(sys: StateSpaceModel, tol: float = 1e-9) -> StateSpaceModel:
    """Balanced-truncation cleanup: drop Hankel singular values <= tol * max.

    Splits into stable/antistable parts first; each part is reduced
    separately so the frequency response is preserved to the tolerance.
    """
    if sys.nstates == 0:
        return sys
    g_s, g_u = stable_unstable_split(sys)
    g_s = _balanced_truncate_stable(g_s, tol)
    if g_u.nstates:
        mirror = StateSpaceModel(-g_u.A, g_u.B, g_u.C, np.zeros_like(g_u.D))
        mirror = _balanced_truncate_stable(mirror, tol)
        g_u = StateSpaceModel(-mirror.A, mirror.B, mirror.C, np.zeros_like(sys.D))
        return parallel(g_s, g_u)
    return g_s


# ---------------------------------------------------------------------------
# grids and delay-channel metadata
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class FrequencyGrid:
    """Ordered nonnegative frequencies with an w = inf tail point.

    The infinite point is evaluated from D matrices; verification grids must
    carry at least 50 finite points.
    """

    points: np.ndarray
    include_inf: bool = True

    def __post_init__(self):
        pts = np.asarray(self.points, dtype=float).ravel()
        if pts.size and (np.any(pts < 0) or np.any(np.diff(pts) <= 0)):
            raise ValueError("grid must be nonnegative and strictly increasing")
        pts = np.ascontiguousarray(pts)
        pts.flags.writeable = False
        object.__setattr__(self, "points", pts)

    def __iter__(self):
        yield from self.points
        if self.include_inf:
            yield np.inf

    def __len__(self):
        return self.points.size + (1 if self.include_inf else 0)

    @staticmethod
    def logspace(w_lo: float, w_hi: float, n: int = 200, include_zero: bool = False,
                 include_inf: bool = True) -> "FrequencyGrid":
        pts = np.geomspace(w_lo, w_hi, n)
        if include_zero:
            pts = np.concatenate([[0.0], pts])
        return FrequencyGrid(pts, include_inf)

    @staticmethod
    def for_delay(tau_max: float, n: int = 200, decades: float = 3.0,
                  include_zero: bool = False) -> "FrequencyGrid":
        """Log grid centered on the delay corner frequency 1/tau_max."""
        w0 = 1.0 / tau_max
        return FrequencyGrid.logspace(
            w0 * 10.0 ** (-decades), w0 * 10.0 ** decades, n, include_zero
        )


@dataclass(frozen=True)
class DelayChannelSpec:
    """Width and admissible-delay description of the delay channel."""

    n_v: int
    kind: str = "constant"  # "constant" | "varying"
    tau_max: float = 1.0
    rate: float = 0.0

    def __post_init__(self):
        if self.kind not in ("constant", "varying"):
            raise ValueError(f"kind must be constant|varying, got {self.kind!r}")
        if self.n_v < 1:
            raise ValueError("delay channel width must be >= 1")
        if not self.tau_max > 0:
            raise ValueError("tau_max must be positive")
        if self.kind == "varying" and not (0 <= self.rate < 1):
            raise ValueError("varying delays require rate bound 0 <= r < 1")


# ---------------------------------------------------------------------------
# structured-text import/export
# ---------------------------------------------------------------------------


def to_dict(sys: StateSpaceModel) -> dict:
    return {
        "n": sys.nstates,
        "m": sys.ninputs,
        "p": sys.noutputs,
        "A": sys.A.tolist(),
        "B": sys.B.tolist(),
        "C": sys.C.tolist(),
        "D": sys.D.tolist(),
    }


def from_dict(data: dict) -> StateSpaceModel:
    try:
        n, m, p = int(data["n"]), int(data["m"]), int(data["p"])
        A = np.asarray(data["A"], dtype=float).reshape(n, n)
        B = np.asarray(data["B"], dtype=float).reshape(n, m)
        C = np.asarray(data["C"], dtype=float).reshape(p, n)
        D = np.asarray(data["D"], dtype=float).reshape(p, m)
    except (KeyError, ValueError) as exc:
        raise DimensionError(f"malformed state-space dictionary: {exc}") from exc
    return StateSpaceModel(A, B, C, D)


def dumps(sys: StateSpaceModel) -> str:
    return json.dumps(to_dict(sys), indent=1)


def loads(text: str) -> StateSpaceModel:
    return from_dict(json.loads(text))
