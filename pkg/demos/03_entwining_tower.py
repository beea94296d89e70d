"""From graded modules to corings: the G-set / Doi-Koppinen / entwining
tower, and the correspondence between entwining axioms and coring axioms.

A G-graded algebra A and a right G-set X induce a Doi-Koppinen structure
(kG, A, kX), hence an entwining psi(x (x) a_g) = a_g (x) xg, hence a coring
A (x) kX with Delta(a (x) x) = (a (x) x) (x)_A (1 (x) x).  The category of
X-graded A-modules is the category of comodules over that coring.

The construction accepts *invalid* mixing maps on purpose and reports; the
axiom audit of the induced structure then fails exactly when an entwining
axiom fails, which is the content of the correspondence theorem.

Run: python3 demos/03_entwining_tower.py
"""

import numpy as np

from corings import (GF, EntwiningStructure, GradedData, Matrix, check_coring,
                     check_entwining, coring_from_entwining, cyclic_group,
                     dk_from_graded, entwining_from_dk, graded_coring, group_algebra,
                     regular_gset)

F3 = GF(3)

# k[Z2] graded by Z2, acting on X = Z2 regularly
G = cyclic_group(2)
A, degrees = group_algebra(G, F3)
Gd = GradedData(G, regular_gset(G), A, degrees)
print("graded data:", "valid" if Gd.validate().ok else "INVALID")

D = dk_from_graded(Gd)
print("Doi-Koppinen structure (kG, A, kX):",
      "valid" if D.validate().ok else "INVALID")

E = entwining_from_dk(D)
print("entwining axioms ES1-ES4:",
      "pass" if check_entwining(E).ok else "FAIL")

C = graded_coring(Gd)
print(f"coring A (x) kX: dim {C.dim},",
      "valid" if check_coring(C).ok else "INVALID")

# now mutilate psi and watch both sides fail in matched places
bad_psi = E.psi.copy()
bad_psi.a.setflags(write=True)
bad_psi.a[:, 0] = 0  # psi(x0 (x) 1) := 0 breaks the unit axiom ES3
E_bad = EntwiningStructure(A, E.coalgebra, Matrix(F3, bad_psi.a))
erep = check_entwining(E_bad)
coring_bad, crep = coring_from_entwining(E_bad)
print("\nafter zeroing psi(x0 (x) 1):")
print("  entwining failures:", [c.name for c in erep.failures()])
print("  coring failures:   ", [c.name for c in crep.failures()])
print("  both reports fail together:", (not erep.ok) and (not crep.ok))

# sweep a few random psi: the two verdicts always agree
rng = np.random.default_rng(5)
agree = 0
for _ in range(200):
    psi = Matrix(F3, rng.integers(0, 3, size=(4, 4)))
    Er = EntwiningStructure(A, E.coalgebra, psi)
    _, rep = coring_from_entwining(Er)
    agree += check_entwining(Er).ok == rep.ok
print(f"\nrandom psi sample: verdicts agree on {agree}/200")
