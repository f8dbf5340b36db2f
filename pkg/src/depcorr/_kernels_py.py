"""Numpy fallback for the compiled kernels in ``_kernels.pyx``.

Same signatures and semantics; used when the extension is not built or when
``DEPCORR_PURE_PYTHON`` is set.
"""
import numpy as np

TINY = 1e-300


def nw_fitted(x, y, h):
    inv = 0.5 / (h * h)
    d = x[:, None] - x[None, :]
    w = np.exp(-(d * d) * inv)
    return (w @ y) / w.sum(axis=1)


def loo_cv_profile(x, y, hs):
    n = x.shape[0]
    d = x[:, None] - x[None, :]
    d2 = d * d
    out = np.empty(len(hs))
    for k, h in enumerate(hs):
        w = np.exp(-d2 * (0.5 / (h * h)))
        w[np.diag_indices(n)] = 0.0
        den = w.sum(axis=1)
        if np.any(den < TINY):
            out[k] = np.inf
            continue
        resid = y - (w @ y) / den
        out[k] = np.dot(resid, resid) / n
    return out


def hyp2f1_series(a, b, c, z, tol, max_terms):
    z = np.asarray(z, dtype=np.float64)
    s = np.ones_like(z)
    term = np.ones_like(z)
    active = np.ones(z.shape, dtype=bool)
    for k in range(max_terms):
        if not active.any():
            break
        term[active] = term[active] * (a + k) * (b + k) / ((c + k) * (k + 1.0)) * z[active]
        s[active] += term[active]
        active &= np.abs(term) >= tol
    return s
