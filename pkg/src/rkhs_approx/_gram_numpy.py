"""Pure-NumPy pairwise kernel evaluation.

Fallback for the compiled core in ``_gramext``; both expose the same five
``*_cross(X, Y, ...)`` functions returning the matrix ``K(x_i, y_j)``. The
second argument is the one that gets conjugated on the disk kernels.
"""

import numpy as np


def _sqdist(X, Y):
    xx = np.einsum("ij,ij->i", X, X)
    yy = np.einsum("ij,ij->i", Y, Y)
    d2 = xx[:, None] + yy[None, :] - 2.0 * (X @ Y.T)
    np.maximum(d2, 0.0, out=d2)
    return d2


def gaussian_cross(X, Y, gamma):
    return np.exp(-gamma * _sqdist(X, Y))


def laplacian_cross(X, Y, gamma):
    return np.exp(-gamma * np.sqrt(_sqdist(X, Y)))


def polynomial_cross(X, Y, degree, offset):
    return (X @ Y.T + offset) ** degree


def szego_cross(Z, W):
    return 1.0 / (1.0 - np.conj(W)[None, :] * Z[:, None])


def bergman_cross(Z, W):
    t = 1.0 - np.conj(W)[None, :] * Z[:, None]
    return 1.0 / (t * t)
