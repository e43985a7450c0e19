"""Additive Fourier analysis on F_p.

Transform convention: fhat(xi) = sum_x f(x) exp(-2*pi*i*xi*x/p).

Two transform routes: a direct O(p^2) evaluation (the correctness oracle,
used below DIRECT_LIMIT) and numpy's fast length-p transform (pocketfft's
Bluestein cyclic-convolution algorithm handles prime lengths) above it.
Both agree on overlap; tests pin this.
"""

from __future__ import annotations

import numpy as np

from .errors import DimensionMismatch, EmptySet
from .modp import SubgroupContext

#: Below this length the direct O(p^2) transform is used.
DIRECT_LIMIT = 4096

#: Absolute guard for spectrum threshold comparisons (avoids boundary flapping).
SPECTRUM_GUARD = 1e-9


def indicator(p: int, A) -> np.ndarray:
    """0/1 vector of length p for a subset of residues."""
    f = np.zeros(p, dtype=np.float64)
    for a in A:
        f[a % p] = 1.0
    return f


def dft_direct(f) -> np.ndarray:
    """Definition-conforming transform, row blocks to bound memory."""
    f = np.asarray(f, dtype=np.complex128)
    p = f.shape[0]
    out = np.empty(p, dtype=np.complex128)
    xs = np.arange(p)
    block = max(1, (1 << 22) // max(p, 1))
    for start in range(0, p, block):
        xi = np.arange(start, min(start + block, p))
        phases = np.exp(-2j * np.pi * (xi[:, None] * xs[None, :] % p) / p)
        out[start:start + xi.size] = phases @ f
    return out


def dft(f) -> np.ndarray:
    f = np.asarray(f, dtype=np.complex128)
    if f.ndim != 1:
        raise DimensionMismatch("expected a 1-d density function")
    if f.shape[0] < DIRECT_LIMIT:
        return dft_direct(f)
    return np.fft.fft(f)


def idft(fhat) -> np.ndarray:
    fhat = np.asarray(fhat, dtype=np.complex128)
    p = fhat.shape[0]
    if p < DIRECT_LIMIT:
        return np.conj(dft_direct(np.conj(fhat))) / p
    return np.fft.ifft(fhat)


def spectrum(p: int, A, tau: float) -> list[int]:
    """Frequencies xi with |Ahat(xi)| >= tau*|A| (within a 1e-9 guard).

    Always contains 0; sorted ascending.
    """
    A = sorted({a % p for a in A})
    if not A:
        raise EmptySet("spectrum of the empty set")
    fhat = dft(indicator(p, A))
    thr = tau * len(A) - SPECTRUM_GUARD
    return [int(x) for x in np.nonzero(np.abs(fhat) >= thr)[0]]


def bohr_set(p: int, spec, tau: float) -> list[int]:
    """Residues b with ||b*xi/p|| <= tau for every xi in spec; sorted.

    ||.|| is the distance to the nearest integer; 0 always qualifies.
    """
    bs = np.arange(p, dtype=np.int64)
    keep = np.ones(p, dtype=bool)
    bound = max(0.0, tau * p + SPECTRUM_GUARD)  # 0 qualifies whatever tau is
    for xi in spec:
        r = bs * (xi % p) % p
        keep &= np.minimum(r, p - r) <= bound
    return [int(b) for b in bs[keep]]


def convolve(f, g) -> np.ndarray:
    """Cyclic convolution (f*g)(t) = sum_x f(x) g(t-x).

    Direct summation below DIRECT_LIMIT (exact on integer inputs), transform
    route above.
    """
    f = np.asarray(f)
    g = np.asarray(g)
    if f.shape != g.shape or f.ndim != 1:
        raise DimensionMismatch(f"shape mismatch: {f.shape} vs {g.shape}")
    p = f.shape[0]
    if p < DIRECT_LIMIT:
        lin = np.convolve(f, g)
        out = lin[:p].copy()
        out[:p - 1] += lin[p:]
        return out
    return np.fft.ifft(np.fft.fft(f) * np.fft.fft(g))


def schur_count(w) -> float:
    """T(w) = sum over x+y=z of w(x)w(y)w(z), by direct summation."""
    w = np.asarray(w, dtype=np.float64)
    return float(np.dot(convolve(w, w).real, w))


def schur_count_via_transform(w) -> float:
    """(1/p) sum_xi what(xi)|what(xi)|^2 (equals T(w) for real w)."""
    w = np.asarray(w, dtype=np.float64)
    what = dft(w)
    return float(np.sum(what * np.abs(what) ** 2).real / w.shape[0])


def wiener_norms(p: int, A) -> tuple[float, float]:
    """(w, rw): the normalized l1 mass of the transform and of its real part.

    rw <= w always; rw == w when A = -A (the transform is then real).
    """
    A = sorted({a % p for a in A})
    if not A:
        raise EmptySet("Wiener norm of the empty set")
    fhat = dft(indicator(p, A))
    w = float(np.sum(np.abs(fhat))) / p
    rw = float(np.sum(np.abs(fhat.real))) / p
    return w, rw


def subgroup_transform_max(sub: SubgroupContext) -> float:
    """max over xi != 0 of |Gammahat(xi)|; at most sqrt(p)."""
    fhat = dft(indicator(sub.p, sub.members))
    return float(np.max(np.abs(fhat[1:])))
