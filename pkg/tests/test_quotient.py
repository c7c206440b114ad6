import pytest

from sevenvalent import models
from sevenvalent.automorphism import are_isomorphic, automorphism_group
from sevenvalent.graphs import DihedrantSpec, dihedrant, dihedrant_translation
from sevenvalent.permgroup import Permutation, build_group
from sevenvalent.quotient import is_basic, normal_quotient, table1_verify, verify_praeger

M = 29 * 127


@pytest.fixture(scope="module")
def cd7366():
    g = models.cd(M).graph
    return g, automorphism_group(g)


@pytest.fixture(scope="module")
def cd58():
    return dihedrant(DihedrantSpec.smallest_root(29))


def test_trivial_and_transitive_quotients(cd58):
    triv = build_group([Permutation.identity(58)], 58)
    q = normal_quotient(cd58, triv)
    assert q.is_cover and are_isomorphic(q.quotient, cd58) is not None
    A = automorphism_group(cd58)
    q = normal_quotient(cd58, A)
    assert q.orbit_count == 1 and q.quotient.edge_count == 0 and not q.is_cover


def test_cd7366_quotient_is_cd58(cd7366, cd58):
    g, _ = cd7366
    N = build_group([dihedrant_translation(M, 29)], g.n)
    assert N.order == 127 and N.is_semiregular()
    q = normal_quotient(g, N)
    assert q.orbit_count == 58 and q.is_cover
    assert set(q.multiplicities.values()) == {127}
    assert are_isomorphic(q.quotient, cd58) is not None


def test_praeger_checks_on_cd7366(cd7366):
    g, A = cd7366
    chk = verify_praeger(g, A, [dihedrant_translation(M, 29)])
    assert chk.check1 and chk.check2 and chk.check3
    assert chk.s_graph == chk.s_quotient == 1


def test_praeger_preconditions(cd58):
    A = automorphism_group(cd58)
    rot = dihedrant_translation(29)
    with pytest.raises(ValueError, match="orbits"):
        verify_praeger(cd58, A, [rot])
    reflection = next(x for x in A.generators if x.order() == 2 and not A.subgroup([x]).is_normal_in(A))
    with pytest.raises(ValueError, match="not normal"):
        verify_praeger(cd58, A, [reflection])


def test_is_basic(cd7366, cd58):
    g, A = cd7366
    rep = is_basic(g, aut=A)
    assert not rep.basic and rep.witness.order == 127
    assert rep.completeness == "exhaustive"
    assert is_basic(cd58).basic
    assert is_basic(models.k77().graph).basic
    assert is_basic(models.cc30().graph).basic


def test_table1_rows_small():
    reps = {r.row.row_id: r for r in table1_verify(["K77", "CC30", "CD86"])}
    assert reps["K77"].status == "pass" and reps["CC30"].status == "pass"
    assert reps["CD86"].status == "discrepancy-noted"
    with pytest.raises(ValueError):
        table1_verify(["nope"])
