"""Shared constructions for the test suite: the worked algebras."""

from relhomalg.fields import QQ
from relhomalg.quiver import Quiver, build_algebra
from relhomalg.rep import projective, socle, cokernel


def cycle3_selfinjective(field=QQ):
    """3-cycle with all length-3 paths zero: self-injective Nakayama, dim 9."""
    q = Quiver(3, [("a", 1, 2), ("b", 2, 3), ("c", 3, 1)])
    one = field.one
    rels = [
        [(one, (0, 1, 2))],  # a b c
        [(one, (1, 2, 0))],  # b c a
        [(one, (2, 0, 1))],  # c a b
    ]
    return build_algebra(field, q, rels, 3)


def cycle3_verbatim(field=QQ):
    """3-cycle with the mixed-length relation word abc = bcab = cabc = 0."""
    q = Quiver(3, [("a", 1, 2), ("b", 2, 3), ("c", 3, 1)])
    one = field.one
    rels = [
        [(one, (0, 1, 2))],
        [(one, (1, 2, 0, 1))],
        [(one, (2, 0, 1, 2))],
    ]
    return build_algebra(field, q, rels, 4)


def a2_algebra(field=QQ):
    q = Quiver(2, [("a", 1, 2)])
    return build_algebra(field, q, [], 2)


def loop_dual_numbers(field=QQ):
    """k[x]/(x^2) as a one-vertex one-loop quiver."""
    q = Quiver(1, [("x", 1, 1)])
    return build_algebra(field, q, [], 2)


def sub_quotient(m, sub_incl):
    return cokernel(sub_incl)[0]


def uniserials(algebra):
    """All quotients P_i / rad^k P_i, k >= 1 (the Nakayama indecomposables)."""
    out = []
    n = algebra.quiver.n
    for i in range(1, n + 1):
        p = projective(algebra, i)
        cur = p
        names = []
        while not cur.is_zero():
            out.append(cur)
            s, incl = socle(cur)
            if s.total_dim == cur.total_dim:
                break
            cur, _ = cokernel(incl)
    return out
