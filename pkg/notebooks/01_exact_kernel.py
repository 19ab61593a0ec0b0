# %% [markdown]
# # Exact polytopes and their normal measures
#
# Every coordinate here is a `Fraction` or an element of Q(sqrt2), so facet
# data comes out exact. Facet normals are primitive integer vectors and are
# never normalized, which keeps square roots out of every formula.

# %%
from fractions import Fraction as F

from vallab import Hyperplane, cone_volume_measure, cut, hull, projection_mixed, simplex, volume
from vallab.scalar import SQRT2

T3 = simplex(3, 3)
for f in T3.facets:
    print(f.normal, "support", f.support, "area/|u|", f.normalized_area, "cone volume", f.cone_volume)

# %% [markdown]
# Only the facet whose hyperplane misses the origin carries cone volume.
# Moving the cube off the origin makes one atom negative while the total stays
# equal to the volume.

# %%
cube = hull([(a, b, c) for a in (0, 1) for b in (0, 1) for c in (0, 1)])
shifted = hull([(a + 1, b, c) for a in (0, 1) for b in (0, 1) for c in (0, 1)])
for P in (T3, cube, shifted):
    M = cone_volume_measure(P)
    print(M.atoms, "total", M.total(), "volume", volume(P))

# %% [markdown]
# A triangle in R^3 gets two opposite facets with equal area; anything of
# smaller dimension gets none.

# %%
tri = simplex(2, 3)
print([(f.normal, f.normalized_area) for f in tri.facets])
print(hull([(0, 0, 0), (1, 1, 1)]).facets)
print("V1(triangle, [-2e3, 2e3]) =", projection_mixed(tri, (0, 0, 2)))

# %% [markdown]
# Cutting by the plane x1 = x2 splits T3 into two congruent halves whose
# new vertex (1/2, 1/2, 0) is exact.

# %%
minus, plus, piece = cut(T3, Hyperplane((1, -1, 0), 0))
print(sorted(tuple(map(str, v)) for v in minus.vertices), volume(minus), volume(plus), piece.dim)

# %% [markdown]
# The same machinery runs over Q(sqrt2).

# %%
Q = simplex(3, 3, 1 + SQRT2)
print(volume(Q), float(volume(Q)), (1 + 2**0.5) ** 3 / 6)
print(sum(f.cone_volume for f in Q.facets) == volume(Q))
