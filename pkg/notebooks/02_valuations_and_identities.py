# %% [markdown]
# # Contravariant valuations and the identities they satisfy
#
# `pi_zeta` sums zeta(x.u / h_P(u), V_P(u)) over facets whose hyperplane
# misses the origin. On the scaled simplex sT^n it collapses to a single term.

# %%
from fractions import Fraction as F
from math import factorial

import numpy as np

from vallab import AbsPower, LinearMap, Polynomial, ZetaSpec, apply_linear, pi_zeta, simplex
from vallab.harness import Generator, check_dissection, check_diagonal_limit, random_polytope, random_unimodular
from vallab.harness.suites import NAMED_ZETAS
from vallab.scalar import SQRT2

zeta = ZetaSpec(AbsPower(2))
for s, t in ((1, 1), (F(1, 2), 3), (2, F(-1, 3))):
    lhs = pi_zeta(simplex(3, 3, s), zeta, (0, 0, t))
    rhs = zeta(F(t) / s, F(s) ** 3 / factorial(3))
    print(s, t, lhs, rhs)

# %% [markdown]
# Contravariance: pushing P forward by a unimodular map is the same as pulling
# x back by its inverse.

# %%
g = Generator(3, 3).for_trial(0)
P = random_polytope(g, allow_degenerate=False)
phi = random_unimodular(g)
x = (1, F(-1, 2), 2)
print(pi_zeta(apply_linear(P, phi), zeta, x) == pi_zeta(P, zeta, phi.inverse(x)))

# %% [markdown]
# Dissecting the simplex by H_lambda, for a few rational lambda.

# %%
for lam in (F(1, 4), F(1, 3), F(2, 5)):
    for d in (2, 3):
        print(lam, d, check_dissection(zeta, F(3, 2), 1, lam, d).passed)

# %% [markdown]
# Approaching the diagonal x1 = r along x1 e1 - r e2: the values follow
# zeta((x1 - r)/s, s^n/n!) and meet the on-point value from both sides.

# %%
r = F(1)
xs = np.linspace(0.5, 1.5, 11)
vals = [float(pi_zeta(simplex(3, 3), zeta, (F(v).limit_denominator(100), -r, 0))) for v in xs]
print(np.round(vals, 6))
print(check_diagonal_limit(zeta, 1, 1).passed, check_diagonal_limit(ZetaSpec(AbsPower(1.5)), 1, 1).passed)

# %% [markdown]
# Over Q(sqrt2), zeta(t, a + b sqrt2) = t a is additive in its second argument
# but not real-linear, so the resulting valuation is not of the form
# eta(t) * V_P(u). It still passes every identity.

# %%
w = NAMED_ZETAS["quad_witness"]
print(w(1, SQRT2), SQRT2 * w(1, 1))
Q = simplex(3, 3, 1 + SQRT2)
print(pi_zeta(Q, w, (0, 0, 1)), pi_zeta(Q, ZetaSpec.of(Polynomial((0, 1))), (0, 0, 1)))
