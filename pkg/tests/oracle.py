"""Straight-line reference for the statistics pipeline.

Deliberately naive: plain ``sum``, no shared code with the package, and the
normal distribution taken from the standard library. It exists only to be
compared against ``metasweep.engine``.
"""

import math
from statistics import NormalDist


def reference_analysis(studies, alpha=0.05, hedges=True):
    """``studies`` is a list of (n1, mean1, sd1, n2, mean2, sd2) tuples."""
    deltas, sigmas, pooled = [], [], []
    for n1, m1, s1, n2, m2, s2 in studies:
        S = math.sqrt(((n1 - 1) * s1 ** 2 + (n2 - 1) * s2 ** 2) / (n1 + n2 - 2))
        d = (m1 - m2) / S
        if hedges:
            d = (1 - 3 / (4 * (n1 + n2) - 9)) * d
        sig = math.sqrt((n1 + n2) / (n1 * n2) + d ** 2 / (2 * (n1 + n2)))
        pooled.append(S)
        deltas.append(d)
        sigmas.append(sig)

    K = len(studies)
    w_fe = [1 / s ** 2 for s in sigmas]
    mu_fe = sum(w * d for w, d in zip(w_fe, deltas)) / sum(w_fe)
    Q = sum(w * (d - mu_fe) ** 2 for w, d in zip(w_fe, deltas))
    xi = sum(w_fe) - sum(w ** 2 for w in w_fe) / sum(w_fe)
    tau2 = max((Q - (K - 1)) / xi, 0.0)
    i2 = 0.0 if Q == 0 else min(max((Q - (K - 1)) / Q * 100, 0.0), 100.0)

    random_effects = i2 > 50
    if random_effects:
        w = [1 / (s ** 2 + tau2) for s in sigmas]
    else:
        w = w_fe
    mu = sum(wk * d for wk, d in zip(w, deltas)) / sum(w)
    sigma = sum(w) ** -0.5
    q = NormalDist().inv_cdf(1 - alpha / 2)
    Z = mu / sigma
    p = math.erfc(abs(Z) / math.sqrt(2))
    return {
        "S": pooled,
        "delta": deltas,
        "sigma_intra": sigmas,
        "weight": w,
        "ci_low_k": [d - s * q for d, s in zip(deltas, sigmas)],
        "ci_high_k": [d + s * q for d, s in zip(deltas, sigmas)],
        "Q": Q,
        "xi": xi,
        "tau2": tau2,
        "I2": i2,
        "random": random_effects,
        "mu": mu,
        "sigma": sigma,
        "ci": (mu - sigma * q, mu + sigma * q),
        "Z": Z,
        "p": p,
    }
