"""Exterior algebra on 4D Minkowski space at a point.

Coordinates are ordered (t, x, y, z) with metric diag(-1, 1, 1, 1) and
orientation vol = dt^dx^dy^dz.  A k-form stores its components over strictly
increasing multi-indices, so a 2-form has the six components

    (tx, ty, tz, xy, xz, yz)

Every operation accepts a leading batch shape on the component arrays, which
is how the solver evaluates forms on a whole grid at once.  Vectors are plain
arrays whose last axis has length 4.

With this orientation the invariants come out as X = |e|^2 - |b|^2 and
Y = 2 e.b for F = two_form_from_eb(e, b); no extra sign constant on the Hodge
map is needed.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations

import numpy as np

from .errors import ContractViolation

DIM = 4
METRIC = np.array([-1.0, 1.0, 1.0, 1.0])

BASIS = [tuple(combinations(range(DIM), k)) for k in range(DIM + 1)]
INDEX = [{idx: n for n, idx in enumerate(b)} for b in BASIS]
NCOMP = [len(b) for b in BASIS]


def permutation_sign(seq):
    """Sign of the permutation sorting ``seq`` (0 if it has repeats)."""
    seq = list(seq)
    if len(set(seq)) != len(seq):
        return 0
    sign = 1
    for i in range(len(seq)):
        for j in range(i + 1, len(seq)):
            if seq[i] > seq[j]:
                sign = -sign
    return sign


def _wedge_table(k, l):
    tab = np.zeros((NCOMP[k], NCOMP[l], NCOMP[k + l]))
    for i, a in enumerate(BASIS[k]):
        for j, b in enumerate(BASIS[l]):
            s = permutation_sign(a + b)
            if s:
                tab[i, j, INDEX[k + l][tuple(sorted(a + b))]] = s
    return tab


def _hodge_table(k):
    # *e^I = (prod_{i in I} g^{ii}) eps_{I J} e^J, J the sorted complement
    tab = np.zeros((NCOMP[k], NCOMP[DIM - k]))
    for i, a in enumerate(BASIS[k]):
        comp = tuple(m for m in range(DIM) if m not in a)
        sign = permutation_sign(a + comp) * np.prod(METRIC[list(a)])
        tab[i, INDEX[DIM - k][comp]] = sign
    return tab


def _interior_table(k):
    # i_v e^I = sum_p (-1)^p v^{I_p} e^{I without I_p}
    tab = np.zeros((DIM, NCOMP[k], NCOMP[k - 1]))
    for i, a in enumerate(BASIS[k]):
        for p, m in enumerate(a):
            rest = a[:p] + a[p + 1:]
            tab[m, i, INDEX[k - 1][rest]] += (-1) ** p
    return tab


_WEDGE = {(k, l): _wedge_table(k, l)
          for k in range(DIM + 1) for l in range(DIM + 1 - k)}
_HODGE = [_hodge_table(k) for k in range(DIM + 1)]
_INTERIOR = [None] + [_interior_table(k) for k in range(1, DIM + 1)]


@dataclass(frozen=True, eq=False)
class KForm:
    """A k-form (or a batch of them) on Minkowski space."""

    degree: int
    comps: np.ndarray

    def __post_init__(self):
        if not 0 <= self.degree <= DIM:
            raise ContractViolation(f"form degree {self.degree} outside 0..4")
        comps = np.asarray(self.comps, dtype=float)
        if comps.ndim == 0:
            comps = comps[None]
        if comps.shape[-1] != NCOMP[self.degree]:
            raise ContractViolation(
                f"a {self.degree}-form needs {NCOMP[self.degree]} components, "
                f"got {comps.shape[-1]}")
        object.__setattr__(self, "comps", comps)

    @classmethod
    def zeros(cls, degree, batch=()):
        return cls(degree, np.zeros(tuple(batch) + (NCOMP[degree],)))

    @property
    def batch_shape(self):
        return self.comps.shape[:-1]

    def component(self, *indices):
        """Component along e^{i1...ik} for an arbitrary index order."""
        s = permutation_sign(indices)
        if s == 0:
            return np.zeros(self.batch_shape)
        return s * self.comps[..., INDEX[self.degree][tuple(sorted(indices))]]

    def _check_same(self, other):
        if not isinstance(other, KForm) or other.degree != self.degree:
            raise ContractViolation("can only add forms of equal degree")

    def __add__(self, other):
        self._check_same(other)
        return KForm(self.degree, self.comps + other.comps)

    def __sub__(self, other):
        self._check_same(other)
        return KForm(self.degree, self.comps - other.comps)

    def __neg__(self):
        return KForm(self.degree, -self.comps)

    def __mul__(self, scalar):
        scalar = np.asarray(scalar, dtype=float)
        return KForm(self.degree, self.comps * scalar[..., None])

    __rmul__ = __mul__

    def __truediv__(self, scalar):
        return self * (1.0 / np.asarray(scalar, dtype=float))

    def __getitem__(self, item):
        """Index into the batch dimensions."""
        if not isinstance(item, tuple):
            item = (item,)
        return KForm(self.degree, self.comps[item + (Ellipsis,)])

    def allclose(self, other, rtol=1e-12, atol=1e-12):
        return self.degree == other.degree and np.allclose(
            self.comps, other.comps, rtol=rtol, atol=atol)

    def __repr__(self):
        return f"KForm(degree={self.degree}, comps={self.comps!r})"


def scalar(value):
    """Promote a number (or array) to a 0-form."""
    return KForm(0, np.asarray(value, dtype=float)[..., None])


def basis_form(*indices):
    """The basis form e^{i1} ^ ... ^ e^{ik} (indices may be unsorted)."""
    k = len(indices)
    out = np.zeros(NCOMP[k])
    s = permutation_sign(indices)
    if s:
        out[INDEX[k][tuple(sorted(indices))]] = s
    return KForm(k, out)


dt, dx, dy, dz = (basis_form(a) for a in range(DIM))
VOL = basis_form(0, 1, 2, 3)


def wedge(a: KForm, b: KForm) -> KForm:
    k, l = a.degree, b.degree
    if k + l > DIM:
        raise ContractViolation(f"wedge of degrees {k} and {l} exceeds 4")
    comps = np.einsum("...i,...j,ijt->...t", a.comps, b.comps, _WEDGE[k, l])
    return KForm(k + l, comps)


def hodge(a: KForm) -> KForm:
    return KForm(DIM - a.degree, a.comps @ _HODGE[a.degree])


def interior(v, a: KForm) -> KForm:
    """Contraction i_v a of a vector (last axis 4) into a form."""
    if a.degree == 0:
        raise ContractViolation("interior product of a 0-form")
    v = np.asarray(v, dtype=float)
    if v.shape[-1] != DIM:
        raise ContractViolation("vectors need 4 components")
    comps = np.einsum("...m,...i,mit->...t", v, a.comps, _INTERIOR[a.degree])
    return KForm(a.degree - 1, comps)


def lower(v) -> KForm:
    """Metric dual 1-form of a vector."""
    return KForm(1, np.asarray(v, dtype=float) * METRIC)


def raise_index(alpha: KForm) -> np.ndarray:
    """Metric dual vector of a 1-form."""
    if alpha.degree != 1:
        raise ContractViolation("raise_index needs a 1-form")
    return alpha.comps * METRIC


def inner(u, v):
    """g(u, v) for vectors."""
    return np.sum(np.asarray(u) * METRIC * np.asarray(v), axis=-1)


def frame_vector(a):
    """The dual basis vector X_a."""
    out = np.zeros(DIM)
    out[a] = 1.0
    return out


def _require_two_form(F):
    if F.degree != 2:
        raise ContractViolation(f"expected a 2-form, got degree {F.degree}")


def invariant_X(F: KForm):
    """X = *(F ^ *F) = |e|^2 - |b|^2.

    Evaluated as the contracted (e, b) expression, which is cheaper than the
    wedge/Hodge route and rounds |e|^2 and |b|^2 identically to a plain sum.
    """
    _require_two_form(F)
    e, b = eb_from_two_form(F)
    return np.sum(e * e, axis=-1) - np.sum(b * b, axis=-1)


def invariant_Y(F: KForm):
    """Y = *(F ^ F) = 2 e.b with the fixed orientation."""
    _require_two_form(F)
    e, b = eb_from_two_form(F)
    return 2.0 * np.sum(e * b, axis=-1)


def two_form_from_eb(e, b) -> KForm:
    """F = sum_i e_i dx^i ^ dt + b_x dy^dz + b_y dz^dx + b_z dx^dy."""
    e = np.asarray(e, dtype=float)
    b = np.asarray(b, dtype=float)
    e, b = np.broadcast_arrays(e, b)
    comps = np.stack([-e[..., 0], -e[..., 1], -e[..., 2],
                      b[..., 2], -b[..., 1], b[..., 0]], axis=-1)
    return KForm(2, comps)


def eb_from_two_form(F: KForm):
    """Inverse of :func:`two_form_from_eb`; returns (e, b)."""
    _require_two_form(F)
    c = F.comps
    e = -c[..., 0:3]
    b = np.stack([c[..., 5], -c[..., 4], c[..., 3]], axis=-1)
    return e, b
