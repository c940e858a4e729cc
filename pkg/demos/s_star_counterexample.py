"""An S* algebra that is not nilpotent.

act3 is the 3-ary (2|1) algebra [x1,x2,y] = y.  Every proper subalgebra is
abelian, so the S* condition holds vacuously, but D(x1,x2) fixes y.

Run: python3 demos/s_star_counterexample.py
"""

from __future__ import annotations

from nlsa import GF, act3, engel_scan, enumerate_graded_subspaces, is_s_star, nilpotency_class
from nlsa.series import derived_square


def main() -> None:
    A = act3(GF(3))
    cat = enumerate_graded_subspaces(A)
    proper = [cat.subspaces[i] for i in cat.subalgebras if i != cat.top]
    nonabelian = [H for H in proper if not derived_square(A, H).is_zero]
    print(f"proper subalgebras: {len(proper)}, non-abelian among them: {len(nonabelian)}")
    print(f"is_s_star: {is_s_star(A, cat).s_star}")
    print(f"nilpotency class: {nilpotency_class(A)}")
    scan = engel_scan(A)
    print(f"Engel scan: {scan.verdict}, witness tuple {scan.witness}")


if __name__ == "__main__":
    main()
