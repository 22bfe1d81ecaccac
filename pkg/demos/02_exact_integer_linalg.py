"""Certified exact integer linear algebra.

Run:  python3 demos/02_exact_integer_linalg.py
"""

from d2kit import (
    IntMatrix,
    infeasibility_certificate,
    kernel_basis,
    rank_over_field,
    smith_normal_form,
    solve_integer_system,
)

A = IntMatrix.from_rows([[2, 0], [0, 3]])
res = smith_normal_form(A)
print("A =", A.to_rows())
print("Smith form D =", res.D.to_rows(), "(note the divisibility chain 1 | 6)")
print("certificate U*A*V == D:", res.U * A * res.V == res.D)

A = IntMatrix.from_rows([[2, -3]])
print("\nSNF of [[2,-3]] has diagonal", smith_normal_form(A).diagonal())

# Integer systems come back either with an exact solution or with a
# verifiable certificate that none exists.
A = IntMatrix.from_rows([[2]])
print("\n2x = 4  ->", solve_integer_system(A, IntMatrix.from_rows([[4]])).to_rows())
B = IntMatrix.from_rows([[3]])
print("2x = 3  ->", solve_integer_system(A, B))
cert = infeasibility_certificate(A, B)
print("certificate: y =", cert.row, "modulus", cert.modulus,
      "| verifies:", cert.verify(A, B))

A = IntMatrix.from_rows([[1, 2, 3]])
print("\nkernel of [1 2 3]:", kernel_basis(A))
print("rank of diag(2,3) over Q:", rank_over_field(IntMatrix.from_rows(
    [[2, 0], [0, 3]]), "Q"))
print("rank of diag(2,3) over F_2:", rank_over_field(IntMatrix.from_rows(
    [[2, 0], [0, 3]]), 2))
