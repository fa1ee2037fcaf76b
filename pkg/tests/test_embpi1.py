from hypothesis import assume, given, strategies as st

from barbellcalc.embpi1 import (
    Conjugate,
    NotConjugate,
    SemidirectElement,
    are_conjugate_same_group_part,
    brute_force_conjugator,
    loop_class_standard,
    loop_class_twisted,
    loop_class_twisted_closed_form,
)
from barbellcalc.groupring import (
    RingElement,
    Solvable,
    conj_action,
    dax_composite,
    minus_conj_solvable,
    minus_id_minus_conj,
)
from barbellcalc.groupword import GroupPresentation, conjugate, multiply
from oracles import ZZ, Z3Z
from strategies import nontrivial_words, presentations, ring_elements, words

s, t = ZZ.gen(0), ZZ.gen(1)


def sd_elements(p):
    return st.builds(SemidirectElement, ring_elements(p), words(p))


def test_law_examples():
    x = RingElement.word(t, 2)
    y = s
    assert SemidirectElement.of_group(y) * SemidirectElement.of_ring(x, ZZ) == SemidirectElement(
        conj_action(y, x), y
    )
    x2 = RingElement.word(s * t, -1)
    assert SemidirectElement.of_ring(x, ZZ) * SemidirectElement.of_ring(x2, ZZ) == (
        SemidirectElement.of_ring(x + x2, ZZ)
    )


@given(st.data())
def test_group_laws(data):
    p = data.draw(presentations)
    u, v, w = (data.draw(sd_elements(p)) for _ in range(3))
    assert (u * v) * w == u * (v * w)
    assert u * u.inverse() == SemidirectElement.identity(p)
    assert u.inverse() * u == SemidirectElement.identity(p)


def test_loop_classes():
    assert loop_class_standard(s, t) == SemidirectElement.of_group(s * t)
    assert loop_class_twisted(s, t, RingElement()) == loop_class_standard(s, t)


@given(st.data())
def test_twisted_closed_form(data):
    p = data.draw(presentations)
    a1, a2 = data.draw(nontrivial_words(p)), data.draw(nontrivial_words(p))
    beta0 = data.draw(ring_elements(p))
    tw = loop_class_twisted(a1, a2, beta0)
    assert tw == loop_class_twisted_closed_form(a1, a2, beta0)
    assert tw.group_part == loop_class_standard(a1, a2).group_part == multiply(a1, a2)


def test_conjugacy_examples():
    v = are_conjugate_same_group_part(RingElement(), s * t)
    assert isinstance(v, Conjugate) and v.witness == SemidirectElement.identity(ZZ)
    beta0 = dax_composite([1, 2], s * t)
    tw = loop_class_twisted(s, t, beta0)
    assert isinstance(are_conjugate_same_group_part(tw.ring_part, s * t), NotConjugate)


@given(st.data())
def test_image_elements_conjugate(data):
    p = data.draw(presentations)
    alpha = data.draw(nontrivial_words(p))
    x = data.draw(ring_elements(p))
    v = are_conjugate_same_group_part(minus_id_minus_conj(alpha, x), alpha)
    assert isinstance(v, Conjugate)


@given(st.data())
def test_normalized_form_same_verdict(data):
    p = data.draw(st.sampled_from([ZZ, Z3Z, GroupPresentation((0, 4))]))
    a1, a2 = data.draw(nontrivial_words(p, 2)), data.draw(nontrivial_words(p, 2))
    assume(not multiply(a1, a2).is_identity)
    beta0 = data.draw(ring_elements(p, 3, 3))
    tw = loop_class_twisted(a1, a2, beta0)
    direct = are_conjugate_same_group_part(tw.ring_part, multiply(a1, a2))
    normalized = minus_conj_solvable(a2 * a1, beta0 - conj_action(a2, beta0))
    assert isinstance(direct, Conjugate) == isinstance(normalized, Solvable)


def test_against_brute_force_conjugator():
    # small instances: v = x - C_alpha x with |supp x| <= 2, plus perturbed ones
    group_words = [ZZ.identity(), s, t, s * t, s.inverse(), t.inverse()]
    alpha = s * t
    pool = [s, t, s * t, t * s]
    cases = [
        RingElement([(s, 1)]) - conj_action(alpha, RingElement([(s, 1)])),
        RingElement([(t, 1), (s, -1)]),
        RingElement([(t * s, 1)]) - RingElement([(s * t, 1)]),
        RingElement([(t, 2)]),
    ]
    ring_words = {w for x in cases for w in x} | set(pool)
    ring_words |= {conjugate(alpha, w) for w in pool}
    for v in cases:
        fast = are_conjugate_same_group_part(v, alpha)
        slow = brute_force_conjugator(v, alpha, ring_words, group_words, max_support=2)
        assert isinstance(fast, Conjugate) == (slow is not None)
