from relhomalg.algebra import (
    Resolution,
    ext_dims,
    free_resolution,
    quiver_to_abstract,
    rep_to_abstract,
)
from relhomalg.complexes import (
    Complex,
    HomotopyHom,
    chain_identity,
    cone,
    null_homotopy_witness,
    stalk_complex,
)
from relhomalg.rep import ModuleMap, hom_space, projective, simple

from helpers import a2_algebra, cycle3_selfinjective


def test_null_homotopy_witness_on_contractible(L7_modules):
    m = L7_modules["P2"]
    contractible, _, _ = cone(chain_identity(stalk_complex(m, 0, label="P2")))
    hh = HomotopyHom(contractible, contractible, 0)
    ident = chain_identity(contractible)
    wit = null_homotopy_witness(hh, ident.comps)
    assert wit is not None  # validated inside: id = s d + d s exactly
    assert wit.s  # a genuine nonzero homotopy


def test_null_homotopy_witness_absent_for_identity_stalk(L7_modules):
    x = stalk_complex(L7_modules["P1"], 0, label="P1")
    hh = HomotopyHom(x, x, 0)
    assert null_homotopy_witness(hh, chain_identity(x).comps) is None


def test_null_homotopy_witness_odd_shift(L7_modules):
    # degree 1 maps from a two-term complex: any cycle here is null-homotopic
    # exactly when it lies in the image of D, and the witness must validate
    # with the odd-shift sign convention
    m2, p1 = L7_modules["M2"], L7_modules["P1"]
    d = hom_space(m2, p1)[0]
    x = Complex(p1.algebra, {-1: m2, 0: p1}, {-1: d})
    hh = HomotopyHom(x, x, 1)
    if hh.boundaries.cols:
        vec = hh.boundaries.col(0)
        cm = hh.vector_to_chain_map(vec)
        wit = null_homotopy_witness(hh, cm.comps)
        assert wit is not None


def test_free_resolution_over_quiver_algebra():
    A2 = a2_algebra()
    A = quiver_to_abstract(A2)
    s1 = rep_to_abstract(simple(A2, 1), A)
    res = free_resolution(s1, 4)
    for lvl in res.levels:
        # every piece is a full free module A*1
        assert all(p.basis.cols == A.dim for p in lvl.pieces)
    # ext dims agree with the idempotent-cover engine
    s2 = rep_to_abstract(simple(A2, 2), A)
    assert ext_dims(res, s2, 3) == ext_dims(Resolution(s1), s2, 3)


def test_free_resolution_never_terminates_on_nonfree_kernel():
    # over the 3-cycle algebra the first syzygy of a simple is never free,
    # so the free resolution keeps going while pd stays censored; ext dims
    # remain correct because they are resolution-independent
    L = cycle3_selfinjective()
    A = quiver_to_abstract(L)
    s1 = rep_to_abstract(simple(L, 1), A)
    free = free_resolution(s1, 3)
    assert not free.complete
    s2 = rep_to_abstract(simple(L, 2), A)
    assert ext_dims(free, s2, 2) == ext_dims(Resolution(s1), s2, 2)
