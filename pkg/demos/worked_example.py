"""The 4-ary (1|1) algebra [b,b,b,b] = c: nilpotent, yet A/A^2 is one-dimensional.

Run: python3 demos/worked_example.py
"""

from __future__ import annotations

from nlsa import GF, engel_scan, fitting_zero_component, nilpotency_class, paper_bc, validate_algebra
from nlsa.series import derived_square


def main() -> None:
    for p in (2, 3, 5):
        A = paper_bc(4, GF(p))
        rep = validate_algebra(A)
        A2 = derived_square(A)
        print(f"over F{p}: valid={rep.ok} dim A={A.dim} dim A^2={A2.dim}")
        print(f"  class {nilpotency_class(A)}, Engel scan: {engel_scan(A).verdict}")
        # the zero Fitting component of D(b,b,c) is the whole algebra
        Z = fitting_zero_component(A, ["b", "b", "c"])
        print(f"  zero Fitting component of D(b,b,c): {Z.describe(A.names)}")


if __name__ == "__main__":
    main()
