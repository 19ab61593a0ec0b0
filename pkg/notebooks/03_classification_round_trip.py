# %% [markdown]
# # Reading classification data off a black-box valuation
#
# The extractor only evaluates the valuation on a handful of simplices. The
# recovered constants and the sampled eta are enough to rebuild it, and the
# rebuilt valuation agrees with the original on random polytopes.

# %%
from fractions import Fraction as F

from vallab import AbsPower, ClassificationData, ZetaSpec, z_origin, z_general
from vallab.harness import BlackBoxValuation, Generator, NotClassifiable, extract_classification, random_polytope
from vallab.harness.suites import NAMED_ZETAS
from vallab.valuations import pi_zeta

truth = ClassificationData(zeta1=ZetaSpec(AbsPower(2)), c_nm1=5, c0=2, c0_prime=-1)
Z = BlackBoxValuation(lambda P, x: z_origin(P, truth, x), "o")
got = extract_classification(Z)
print(got.c_nm1, got.c0, got.c0_prime)
print([(str(t), str(got.zeta1.eta_a(t))) for t in (F(-3), F(-1, 2), F(0), F(5, 4))])

# %%
rebuilt = BlackBoxValuation(lambda P, x: z_origin(P, got, x), "o")
gen = Generator(0, 3)
agree = 0
for k in range(20):
    P = random_polytope(gen.for_trial(k), contains_origin=True)
    agree += all(Z(P, x) == rebuilt(P, x) for x in ((1, 2, 3), (F(1, 2), -1, 0)))
print(agree, "of 20 polytopes agree")

# %% [markdown]
# On all polytopes the extractor also uses the origin-free simplices
# s[e1, ..., ed], which separates the terms living on [o, P].

# %%
full = ClassificationData(
    zeta1=ZetaSpec(AbsPower(3)), zeta2=ZetaSpec(AbsPower(1)),
    c_nm1=1, c_nm1_tilde=F(-1, 2), c0=2, c0_prime=3, c0_tilde=F(5, 3),
)
Z15 = BlackBoxValuation(lambda P, x: z_general(P, full, x), "all")
back = extract_classification(Z15, mode="all")
print({k: str(getattr(back, k)) for k in ("c_nm1", "c_nm1_tilde", "c0", "c0_prime", "c0_tilde")})

# %% [markdown]
# A valuation that is not additive in the volume argument is rejected with a
# concrete witness.

# %%
try:
    extract_classification(BlackBoxValuation(lambda P, x: pi_zeta(P, NAMED_ZETAS["squared_s"], x), "o"))
except NotClassifiable as exc:
    print(exc, exc.witness)
