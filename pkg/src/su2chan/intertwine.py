"""Intertwiners between tensor products and irreducible components, and
the quantum channels built from them.

The map J_k sends the tensor space of levels (mu, nu) onto the component
of level mu + nu - 2k.  On monomials it is diagonal in total degree:
z^a w^b goes to a multiple of xi^(a + b - k), with the multiple given by
the differential-operator form

    J_k = (-1)^k sum_j (-1)^j C(k,j) [(-mu)_j (-nu)_{k-j}]^{-1}
          d_z^j d_w^{k-j}  evaluated at z = w = xi.

All matrices map monomial coefficient vectors to monomial coefficient
vectors, so composition of maps is plain matrix multiplication and the
Gram forms enter only through adjoints.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, List, Optional, Tuple

import numpy as np

from .exactnum import CRational, binomial, falling_pochhammer, rising_pochhammer
from .repspace import (
    KernelOperator,
    LevelMismatchError,
    gram_diagonal,
    to_orthonormal_matrix,
)


class InvalidSpecError(ValueError):
    pass


@dataclass(frozen=True)
class ChannelSpec:
    """The triple (mu, nu, k) selecting one component channel."""

    mu: int
    nu: int
    k: int

    def __post_init__(self):
        if not (0 <= self.k <= self.mu <= self.nu):
            raise InvalidSpecError(
                f"need 0 <= k <= mu <= nu, got (mu={self.mu}, nu={self.nu}, "
                f"k={self.k})")

    @property
    def target_level(self) -> int:
        return self.mu + self.nu - 2 * self.k

    @property
    def tensor_dim(self) -> int:
        return (self.mu + 1) * (self.nu + 1)

    def tensor_index(self, a: int, b: int) -> int:
        return a * (self.nu + 1) + b


def _jk_column_coefficient(spec: ChannelSpec, a: int, b: int) -> Fraction:
    """Coefficient c with J_k(z^a w^b) = c xi^(a + b - k)."""
    mu, nu, k = spec.mu, spec.nu, spec.k
    total = Fraction(0)
    for j in range(k + 1):
        den = rising_pochhammer(-mu, j) * rising_pochhammer(-nu, k - j)
        # (-mu)_j vanishes only for j > mu, where the derivative factor
        # (a)_j^- also vanishes; skip such terms.
        if den == 0:
            continue
        total += (Fraction(-1) ** j * binomial(k, j) / den
                  * falling_pochhammer(a, j) * falling_pochhammer(b, k - j))
    return Fraction(-1) ** k * total


@dataclass
class IntertwinerMatrix:
    """J_k as a (target_dim) x (tensor_dim) exact matrix on coefficients."""

    spec: ChannelSpec
    matrix: List[List[Fraction]]


def jk_matrix(spec: ChannelSpec) -> IntertwinerMatrix:
    """Matrix of J_k; column (a, b) has a single nonzero row a + b - k."""
    mu, nu, k = spec.mu, spec.nu, spec.k
    rows = spec.target_level + 1
    m = [[Fraction(0)] * spec.tensor_dim for _ in range(rows)]
    for a in range(mu + 1):
        for b in range(nu + 1):
            r = a + b - k
            if 0 <= r <= spec.target_level:
                m[r][spec.tensor_index(a, b)] = _jk_column_coefficient(spec, a, b)
    return IntertwinerMatrix(spec, m)


def tensor_gram_diagonal(spec: ChannelSpec) -> List[Fraction]:
    gm = gram_diagonal(spec.mu)
    gn = gram_diagonal(spec.nu)
    return [gm[a] * gn[b]
            for a in range(spec.mu + 1) for b in range(spec.nu + 1)]


def jk_adjoint_matrix(spec: ChannelSpec) -> List[List[Fraction]]:
    """Adjoint of J_k w.r.t. the Gram forms: G_tensor^{-1} J^T G_target.

    J_k has real rational entries, so conjugation is transposition.
    """
    jk = jk_matrix(spec).matrix
    gt = tensor_gram_diagonal(spec)
    go = gram_diagonal(spec.target_level)
    rows = spec.tensor_dim
    cols = spec.target_level + 1
    return [[jk[c][r] * go[c] / gt[r] for c in range(cols)] for r in range(rows)]


def c_squared(spec: ChannelSpec) -> Fraction:
    """Schur constant with J_k J_k* = C^{-2} I on the target space."""
    mu, nu, k = spec.mu, spec.nu, spec.k
    num = rising_pochhammer(-nu, k) * rising_pochhammer(-mu, k)
    den = Fraction(math.factorial(k)) \
        * rising_pochhammer(mu + nu - 2 * k + 2, k)
    return num / den


def jk_product(spec_k: ChannelSpec, spec_l: ChannelSpec) -> List[List[Fraction]]:
    """J_k J_l* as an exact matrix on the level-(mu+nu-2l) target space.

    Both specs must share (mu, nu).  For k = l this is C^{-2} I; for
    k != l it vanishes (nonisomorphic irreducible targets).
    """
    if (spec_k.mu, spec_k.nu) != (spec_l.mu, spec_l.nu):
        raise InvalidSpecError("specs must share (mu, nu)")
    jk = jk_matrix(spec_k).matrix
    jl_adj = jk_adjoint_matrix(spec_l)
    rows = len(jk)
    cols = len(jl_adj[0])
    inner = len(jl_adj)
    out = [[Fraction(0)] * cols for _ in range(rows)]
    for i in range(rows):
        for t in range(inner):
            v = jk[i][t]
            if v:
                row = jl_adj[t]
                for j in range(cols):
                    if row[j]:
                        out[i][j] += v * row[j]
    return out


def pk_orthogonality_check(mu: int, nu: int) -> dict:
    """Exact verification of the orthogonal decomposition at (mu, nu).

    Checks, for all 0 <= k, l <= mu:
      * c_squared(k) J_k J_k* = I on the target space,
      * J_k J_l* = 0 for k != l,
      * sum_k c_squared(k) J_k* J_k = I on the tensor space.
    Returns a report dict with a witness entry for the first failure.
    """
    report = {"mu": mu, "nu": nu, "schur_scalar": True,
              "cross_vanish": True, "completeness": True, "witness": None}

    def witness(kind, k, l, i, j, value):
        if report["witness"] is None:
            report["witness"] = {"identity": kind, "k": k, "l": l,
                                 "row": i, "col": j, "value": str(value)}

    specs = [ChannelSpec(mu, nu, k) for k in range(mu + 1)]
    for k, sk in enumerate(specs):
        for l, sl in enumerate(specs):
            prod = jk_product(sk, sl)
            if k == l:
                c2 = c_squared(sk)
                for i, row in enumerate(prod):
                    for j, v in enumerate(row):
                        want = (1 / c2) if i == j else Fraction(0)
                        if v != want:
                            report["schur_scalar"] = False
                            witness("schur_scalar", k, l, i, j, v)
            else:
                for i, row in enumerate(prod):
                    for j, v in enumerate(row):
                        if v != 0:
                            report["cross_vanish"] = False
                            witness("cross_vanish", k, l, i, j, v)

    dim = (mu + 1) * (nu + 1)
    total = [[Fraction(0)] * dim for _ in range(dim)]
    for sk in specs:
        jk = jk_matrix(sk).matrix
        adj = jk_adjoint_matrix(sk)
        c2 = c_squared(sk)
        for i in range(dim):
            for t in range(len(jk)):
                v = adj[i][t]
                if v:
                    for j in range(dim):
                        if jk[t][j]:
                            total[i][j] += c2 * v * jk[t][j]
    for i in range(dim):
        for j in range(dim):
            want = Fraction(1) if i == j else Fraction(0)
            if total[i][j] != want:
                report["completeness"] = False
                witness("completeness", None, None, i, j, total[i][j])
    report["ok"] = (report["schur_scalar"] and report["cross_vanish"]
                    and report["completeness"])
    return report


def apply_channel(spec: ChannelSpec, a: KernelOperator,
                  _c2_override: Optional[Fraction] = None) -> KernelOperator:
    """T(A) = c^2 J_k (A (x) I) J_k* as exact kernel coefficients.

    The tensor factor A (x) I is never materialized densely: on monomial
    coefficients it maps z^j w^q to (sum_i a_ij g_j z^i) w^q.
    ``_c2_override`` exists for fault-injection tests only.
    """
    if a.level != spec.mu:
        raise LevelMismatchError(
            f"operator level {a.level} does not match spec mu={spec.mu}")
    mu, nu, k = spec.mu, spec.nu, spec.k
    out_level = spec.target_level
    gm = gram_diagonal(mu)
    go = gram_diagonal(out_level)
    jk = jk_matrix(spec).matrix
    adj = jk_adjoint_matrix(spec)
    c2 = c_squared(spec) if _c2_override is None else _c2_override

    # columns of the output operator matrix, indexed by target monomial c
    out = [[CRational(0) for _ in range(out_level + 1)]
           for _ in range(out_level + 1)]
    for c in range(out_level + 1):
        # (A (x) I) J* applied to xi^c, as a sparse tensor coefficient map
        tensor_col: Dict[Tuple[int, int], CRational] = {}
        for a_idx in range(mu + 1):
            for b_idx in range(nu + 1):
                v = adj[spec.tensor_index(a_idx, b_idx)][c]
                if not v:
                    continue
                w = gm[a_idx] * v
                for i in range(mu + 1):
                    if a.coeffs[i][a_idx]:
                        key = (i, b_idx)
                        cur = tensor_col.get(key, CRational(0))
                        tensor_col[key] = cur + a.coeffs[i][a_idx] * w
        # apply J_k
        for (i, b_idx), v in tensor_col.items():
            r = i + b_idx - k
            if 0 <= r <= out_level:
                jv = jk[r][spec.tensor_index(i, b_idx)]
                if jv:
                    out[r][c] = out[r][c] + v * jv * c2
    # operator matrix -> kernel coefficients
    coeffs = [[out[i][c] / go[c] for c in range(out_level + 1)]
              for i in range(out_level + 1)]
    return KernelOperator(out_level, coeffs)


def normalization_factor(spec: ChannelSpec) -> Fraction:
    return Fraction(spec.mu + 1, spec.target_level + 1)


def apply_normalized_channel(spec: ChannelSpec, a: KernelOperator,
                             **kwargs) -> KernelOperator:
    """Trace-preserving rescaling (mu+1)/(mu+nu-2k+1) of the channel."""
    return apply_channel(spec, a, **kwargs).scale(normalization_factor(spec))


def choi_matrix(spec: ChannelSpec) -> np.ndarray:
    """Choi matrix of the normalized channel in orthonormal bases.

    Entry [(i, a), (j, b)] equals <e_a, That(E_ij) e_b> with E_ij the
    orthonormal matrix units at level mu.  Positive semidefiniteness of
    this hermitian matrix certifies complete positivity.
    """
    mu = spec.mu
    out_dim = spec.target_level + 1
    n_in = mu + 1
    gm = gram_diagonal(mu)
    choi = np.zeros((n_in * out_dim, n_in * out_dim), dtype=complex)
    for i in range(n_in):
        for j in range(n_in):
            # orthonormal matrix unit e_i e_j^H as a kernel operator:
            # coeffs = delta / sqrt(g_i g_j); build exactly up to the sqrt
            unit = KernelOperator.zero(mu)
            unit.coeffs[i][j] = CRational(1)
            img = apply_normalized_channel(spec, unit)
            m = to_orthonormal_matrix(img) / np.sqrt(float(gm[i] * gm[j]))
            choi[i * out_dim:(i + 1) * out_dim,
                 j * out_dim:(j + 1) * out_dim] = m
    return choi


def choi_min_eigenvalue(spec: ChannelSpec) -> float:
    return float(np.linalg.eigvalsh(choi_matrix(spec)).min())


def choi_partial_trace_output(choi: np.ndarray, spec: ChannelSpec) -> np.ndarray:
    """Trace out the output factor; trace preservation gives the identity."""
    n_in = spec.mu + 1
    out_dim = spec.target_level + 1
    pt = np.zeros((n_in, n_in), dtype=complex)
    for i in range(n_in):
        for j in range(n_in):
            block = choi[i * out_dim:(i + 1) * out_dim,
                         j * out_dim:(j + 1) * out_dim]
            pt[i, j] = np.trace(block)
    return pt


def channel_report(spec: ChannelSpec, operators: List[KernelOperator]) -> dict:
    """JSON-ready structural report for one channel spec."""
    from .repspace import operator_trace
    trace_ok = True
    for a in operators:
        if operator_trace(apply_normalized_channel(spec, a)) \
                != operator_trace(a):
            trace_ok = False
            break
    return {
        "spec": {"mu": spec.mu, "nu": spec.nu, "k": spec.k},
        "c_squared": str(c_squared(spec)),
        "trace_preserving": trace_ok,
        "choi_min_eigenvalue": choi_min_eigenvalue(spec),
    }
