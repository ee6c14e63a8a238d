"""Reference controllable-predecessor kernel (numpy, no compilation needed)."""

import numpy as np


def cpre(rho_e, rho_s, target):
    """States (rows of ``rho_e``/``rho_s``) forcing a move into ``target``.

    rho_e: bool[rows, n_env]; rho_s: bool[rows, n_env, n_sys];
    target: bool[n_env * n_sys]. Returns bool[rows].
    """
    n_env, n_sys = rho_s.shape[1], rho_s.shape[2]
    t = np.asarray(target, dtype=bool).reshape(n_env, n_sys)
    answer = np.logical_and(rho_s, t[None, :, :]).any(axis=2)
    return np.logical_or(answer, np.logical_not(rho_e)).all(axis=1)
