"""Convolution duals: the right dual C* and left dual *C of a coring.

C* is the set of right-A-linear maps C -> A with the convolution product
(f * g)(c) = sum f(g(c_1) c_2) and unit eps.  For a group-like coalgebra
the dual is the pointwise function algebra; for a matrix coring it is the
matrix algebra.  Comodules transport to modules over R = (*C)^op.

Run: python3 demos/02_dual_algebras.py
"""

import itertools

from corings import (GF, DualElement, Matrix, check_algebra, comodule_to_dual_module,
                     convolution_inverse, grouplike_coalgebra, matrix_coring,
                     regular_bicomodule, right_dual_algebra, scalar_algebra)
from corings.convolution import RIGHT

F3 = GF(3)

# kZ2 over F3: the dual is k x k with pointwise operations
C = grouplike_coalgebra(["e", "g"], F3)
dual = right_dual_algebra(C)
print(f"(kZ2)* over F3: dim {dual.dim}, axioms "
      f"{'pass' if check_algebra(dual.algebra).ok else 'FAIL'}")

# convolution inverses are pointwise inverses of the values
for values in ([1, 2], [2, 2], [1, 0]):
    p = DualElement(C, RIGHT, Matrix(F3, [values]))
    q = convolution_inverse(p)
    if q is None:
        print(f"  p = {values}: not invertible (a zero value)")
    else:
        print(f"  p = {values}: inverse has values {q.values.a[0].tolist()}")

# the matrix coring dualizes to the matrix algebra (noncommutative, dim 4)
mc2 = matrix_coring(scalar_algebra(F3), 2)
dual2 = right_dual_algebra(mc2)
x01 = F3.zeros((1, 4)); x01[0, 1] = 1
x10 = F3.zeros((1, 4)); x10[0, 2] = 1
ab = dual2.convolve(Matrix(F3, x01), Matrix(F3, x10))
ba = dual2.convolve(Matrix(F3, x10), Matrix(F3, x01))
print(f"\nM^c_2(F3)*: dim {dual2.dim}; x01 * x10 != x10 * x01: {ab != ba}")

# transport: the regular kZ2-comodule becomes a module over R = (*C)^op,
# acting pointwise on the group-likes
reg = regular_bicomodule(C).as_right
transport = comodule_to_dual_module(reg)
print(f"\ntransport to R-modules: ring dim {transport.ring.dim}, "
      f"module axioms {'pass' if transport.module.validate().ok else 'FAIL'}")

# count convolution units among all 9 dual elements (units of k x k: 4)
units = sum(
    convolution_inverse(DualElement(C, RIGHT, Matrix(F3, [[a, b]]))) is not None
    for a, b in itertools.product(range(3), repeat=2))
print(f"units among the 9 elements of (kZ2)*: {units}")
