"""Shared oracles and strategies.

The oracles here work with explicit antisymmetric 4x4 arrays and the
Levi-Civita symbol, independent of the packed component tables in
:mod:`nledlab.forms`.
"""

import itertools

import numpy as np
import pytest
from hypothesis import settings

from nledlab import forms

settings.register_profile("default", max_examples=60, deadline=None)
settings.load_profile("default")

ETA = np.diag([-1.0, 1.0, 1.0, 1.0])


def levi_civita():
    eps = np.zeros((4, 4, 4, 4))
    for perm in itertools.permutations(range(4)):
        inv = sum(1 for i in range(4) for j in range(i + 1, 4) if perm[i] > perm[j])
        eps[perm] = -1.0 if inv % 2 else 1.0
    return eps


EPS = levi_civita()  # eps_{0123} = +1 for vol = dt^dx^dy^dz in an orthonormal frame


def tensor_of(F):
    """F_{mu nu} as an antisymmetric matrix from a packed 2-form."""
    T = np.zeros(F.comps.shape[:-1] + (4, 4))
    for n, (a, b) in enumerate(forms.BASIS[2]):
        T[..., a, b] = F.comps[..., n]
        T[..., b, a] = -F.comps[..., n]
    return T


def raise_both(T):
    return np.einsum("am,bn,...mn->...ab", ETA, ETA, T)


def hodge_tensor(T):
    """(*F)_{rs} = 1/2 eps_{mnrs} F^{mn}."""
    return 0.5 * np.einsum("mnrs,...mn->...rs", EPS, raise_both(T))


def top_coefficient(A, B):
    """c with A ^ B = c dt^dx^dy^dz for two 2-forms given as tensors."""
    return 0.25 * np.einsum("mnrs,...mn,...rs->...", EPS, A, B)


def oracle_X(F):
    T = tensor_of(F)
    # * of c vol is -c (one timelike index raised)
    return -top_coefficient(T, hodge_tensor(T))


def oracle_Y(F):
    T = tensor_of(F)
    return -top_coefficient(T, T)


def random_two_form(rng, batch=(), scale=1.0):
    return forms.KForm(2, scale * rng.standard_normal(tuple(batch) + (6,)))


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)
