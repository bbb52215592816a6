# %% [markdown]
# # Lorentzian metrics on the Heisenberg group
#
# On h3, [e_2, e_3] = e_1, Lorentzian inner products fall into three classes
# up to isometry and scaling.  One is flat; the other two are not Einstein
# but are algebraic Ricci solitons.  Each class also matches one of Rahmani's
# three normal forms.

# %%
import numpy as np

from pseudomilnor import classify_curvature, heisenberg3, milnor_frame, rahmani_form, synthesize_metric

h = heisenberg3()

# %%
for lam in (0, 1, 2):
    a = synthesize_metric(h, lam, 2, 1, scale=1.5)
    frame = milnor_frame(h, a)
    r = rahmani_form(frame)
    report = classify_curvature(h, a)
    sol = report.algebraic_soliton
    print(f"lam={lam}: Rahmani case {r.case} parameter {r.parameter}")
    print(f"   flat={report.flat}  Einstein residual={report.residuals['einstein']:.3f}"
          f"  soliton c={None if sol is None else round(sol.c, 6)}")

# %% [markdown]
# The bracket table of the frame for lam = 2: [x1, x2] = 2 (x1 + 2 x3) and
# [x2, x3] = x1 + 2 x3.

# %%
frame = milnor_frame(h, synthesize_metric(h, 2, 2, 1))
b = frame.bracket_coordinates()
print("[x1, x2] =", np.round(b[0, 1], 12))
print("[x2, x3] =", np.round(b[1, 2], 12))

# %% [markdown]
# The Levi-Civita connection is computed two ways: as [X, Y]/2 + U(X, Y) and
# straight from the Koszul formula.  They agree to rounding.

# %%
from pseudomilnor import levi_civita, levi_civita_koszul

a = synthesize_metric(h, 0, 2, 1)
print("max difference:", np.abs(levi_civita(h, a).gamma - levi_civita_koszul(h, a).gamma).max())
