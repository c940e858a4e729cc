"""Regular representation -> semidirect sum -> recovered representation.

Run: python3 demos/representation_round_trip.py
"""

from __future__ import annotations

from nlsa import (
    GF,
    act3,
    kernel_and_faithful,
    regular_representation,
    representation_from_module,
    semidirect_sum,
    validate_algebra,
    validate_representation,
)


def main() -> None:
    A = act3(GF(3))
    rho = regular_representation(A)
    print(f"regular representation valid: {validate_representation(rho).ok}")
    B = semidirect_sum(rho)
    print(f"semidirect sum: dim {B.dim}, valid {validate_algebra(B).ok}")
    m = rho.module_dim
    V = B.span([B.e(i) for i in range(m)])
    A_sub = B.span([B.e(i) for i in range(m, B.dim)])
    back = representation_from_module(B, A_sub, V)
    print(f"round trip exact: {back.canonical_operators() == rho.canonical_operators()}")
    ker, faithful = kernel_and_faithful(rho)
    print(f"kernel: {ker.describe(A.names)}, faithful: {faithful}")


if __name__ == "__main__":
    main()
