"""Left and right Jacobians of the translations on each dual group.

Lebesgue measure is left invariant everywhere; the right Jacobian is the
modular function, equal to 1 exactly for the unimodular variants.
"""

from fractions import Fraction

from plq.cases import CaseSpec
from plq.liegroup import dual_group, jacobian_of_translation

CASES = (
    CaseSpec("case1", n=2, lam=Fraction(1, 2)),
    CaseSpec("case2", n=2, lam=Fraction(1, 2)),
    CaseSpec("mixed", n=2, lam=Fraction(1, 2), nu=Fraction(1, 3)),
    CaseSpec("mixed", n=2, lam=Fraction(1, 2), nu=Fraction(-1, 2)),
    CaseSpec("case3", n=2, J=[[0, 1], [-1, 0]]),
    CaseSpec("rieffel", n=2, m=2),
    CaseSpec("nonuni", n=2, m=1),
)

if __name__ == "__main__":
    for case in CASES:
        G = dual_group(case)
        left, right = jacobian_of_translation(G, "left"), jacobian_of_translation(G, "right")
        params = {k: v for k, v in case.describe().items() if k in ("lambda", "nu")}
        tag = "unimodular" if right == 1 else "non-unimodular"
        print(f"{case.kind:8} {str(params):32} left={left}  right={right}  ({tag})")
