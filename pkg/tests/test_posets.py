from latflow.posets import GradedPoset, check_isomorphism, first_mismatch, poset_isomorphic
from latflow.orientations import enumerate_cac, enumerate_sc


def chain2():
    return GradedPoset(keys=["a", "b"], grades=[0, 1], covers=[(0, 1)])


def antichain2():
    return GradedPoset(keys=["a", "b"], grades=[0, 0], covers=[])


def test_shuffled_copy_is_isomorphic(theta):
    p = enumerate_sc(theta)
    q = p.shuffled(seed=7)
    ok, mapping = poset_isomorphic(p, q)
    assert ok
    assert check_isomorphism(p, q, mapping)
    assert first_mismatch(p, q, mapping) is None


def test_chain_vs_antichain():
    ok, mapping = poset_isomorphic(chain2(), antichain2())
    assert not ok and mapping is None


def test_theta_sc_matches_k3_cac(theta, k3):
    assert poset_isomorphic(enumerate_sc(theta), enumerate_cac(k3))[0]


def test_first_mismatch_reports_bad_map(theta):
    p = enumerate_sc(theta)
    bad = {i: i for i in range(len(p))}
    bad[0], bad[len(p) - 1] = len(p) - 1, 0
    assert not check_isomorphism(p, p, bad)
    assert first_mismatch(p, p, bad) == 0


def test_dot_export(theta):
    dot = enumerate_sc(theta).to_dot()
    assert dot.startswith("digraph") and dot.rstrip().endswith("}")
    assert dot.count("->") == len(enumerate_sc(theta).covers)
