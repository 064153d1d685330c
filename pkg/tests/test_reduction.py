"""Reduction pipeline tests.

The small worked cases were frozen after solving the digit congruences
by hand and replaying them through the series layer; every frozen
witness is re-verified here rather than trusted.
"""

import random

import pytest

from nottorsion.characters import (
    Character,
    break_sequence,
    char_act,
    char_eval,
    enumerate_characters,
    format_character_literal,
    is_reduced,
    parse_character_literal,
)
from nottorsion.reduction import (
    Witness,
    WitnessCheck,
    clear_low_p_part,
    reduce,
    reduce_mod_p,
    verify_witness,
)
from nottorsion.series import (
    NottinghamElement,
    parse_nottingham,
)


def random_character(rng, p, l, m):
    pool = list(enumerate_characters(p, l, m))
    return pool[rng.randrange(len(pool))]


SMALL_TYPES = [(2, 1, 2), (2, 1, 3), (2, 3, 6), (2, 3, 7), (2, 5, 15),
               (3, 1, 3), (3, 1, 4), (3, 2, 6), (3, 2, 7), (3, 2, 8),
               (5, 1, 5), (5, 1, 6)]


# ---------------------------------------------------------------------------
# Witness container.


def test_witness_requires_kernel_multiple_of_p():
    u = parse_nottingham("t*(1+t^2)", 3, 4)
    Witness(u, 0)
    Witness(u, 3)
    Witness(u, 6)
    with pytest.raises(ValueError):
        Witness(u, 1)
    with pytest.raises(ValueError):
        Witness(u, 5)


def test_witness_serializes_as_product():
    u = parse_nottingham("t*(1+t^2)*(1+t^4)^2", 3, 4)
    assert Witness(u, 0).to_text() == "t*(1+t^2)*(1+t^4)^2"


# ---------------------------------------------------------------------------
# Stage 1: killing unit coefficients below l.


def test_stage1_worked_case():
    # type <2,7>: the unit at index 1 dies via the step congruence
    # x_1 + 1*c*x_2 = 0 mod 3, so c = 2; the witness records it
    chi = parse_character_literal("1:1,2:1,7:3", 3)
    out, w = reduce_mod_p(chi)
    assert out == parse_character_literal("1:3,2:4,4:6,7:3", 3)
    assert w.element.unit.coefficient(1) == 2
    assert w.to_text() == "t*(1+t)^2*(1+t^2)*(1+t^3)^2*(1+t^4)^2"
    assert verify_witness(chi, out, w).ok


def test_stage1_leaves_clean_input_alone():
    chi = parse_character_literal("5:1,15:2", 2)
    out, w = reduce_mod_p(chi)
    assert out == chi
    assert w.element == NottinghamElement.identity(2, chi.bound)
    assert w.kernel_value == 0


def test_stage1_postcondition_everywhere():
    rng = random.Random(301)
    for p, l, m in SMALL_TYPES:
        for _ in range(12):
            chi = random_character(rng, p, l, m)
            out, w = reduce_mod_p(chi)
            # no unit values below l, the break type is intact, and the
            # witness is a valid strict-equivalence certificate
            assert all(out.value(j) % p == 0 for j in range(1, l))
            assert break_sequence(out) == (l, m)
            assert char_eval(chi, w.element.unit) == w.kernel_value
            assert verify_witness(chi, out, w).ok


def test_stage1_rejects_non_surjective():
    with pytest.raises(ValueError):
        reduce_mod_p(Character(3, {1: 3}))


# ---------------------------------------------------------------------------
# Stage 2: clearing p-digits outside the window.


def test_stage2_worked_case():
    # type <1,4> over F_3: one step with d=1, e=2 clears the digit at 2
    chi = parse_character_literal("1:1,2:3,4:3", 3)
    out, w = clear_low_p_part(chi)
    assert out == parse_character_literal("1:1,4:3", 3)
    assert w.to_text() == "t*(1+t^2)*(1+t^4)^2"
    assert verify_witness(chi, out, w).ok


def test_stage2_requires_stage1_form():
    # unit value at index 1 below l = 2
    with pytest.raises(ValueError):
        clear_low_p_part(parse_character_literal("1:1,2:1,7:3", 3))


def test_stage2_fixes_reduced_input():
    chi = parse_character_literal("5:1,11:2,15:2", 2)
    out, w = clear_low_p_part(chi)
    assert out == chi
    assert w.element == NottinghamElement.identity(2, chi.bound)


# ---------------------------------------------------------------------------
# Full reduction.


def test_reduce_worked_cases():
    chi = parse_character_literal("1:1,2:3,4:3", 3)
    form, w = reduce(chi)
    assert form.to_character() == parse_character_literal("1:1,4:3", 3)
    assert w.to_text() == "t*(1+t^2)*(1+t^4)^2"

    chi = parse_character_literal("5:1,7:2,15:2", 2)
    form, w = reduce(chi)
    assert form.to_character() == parse_character_literal("5:1,15:2", 2)
    assert w.to_text() == "t*(1+t^8)"
    assert verify_witness(chi, form.to_character(), w).ok

    chi = parse_character_literal("1:1,2:1,7:3", 3)
    form, w = reduce(chi)
    assert form.to_character() == parse_character_literal("2:1,7:3", 3)
    assert w.to_text() == "t*(1+t)^2*(1+t^2)*(1+t^4)^2*(1+t^5)^2*(1+t^6)*(1+t^7)"
    assert verify_witness(chi, form.to_character(), w).ok


def test_reduce_is_identity_on_reduced():
    rng = random.Random(302)
    for p, l, m in SMALL_TYPES:
        from nottorsion.characters import enumerate_reduced_forms

        forms = list(enumerate_reduced_forms(p, l, m))
        for rf in rng.sample(forms, min(4, len(forms))):
            form, w = reduce(rf.to_character())
            assert form == rf
            assert w.element == NottinghamElement.identity(p, rf.to_character().bound)
            assert w.kernel_value == 0


def test_reduce_soundness_randomized():
    rng = random.Random(303)
    for p, l, m in SMALL_TYPES:
        for _ in range(12):
            chi = random_character(rng, p, l, m)
            form, w = reduce(chi)
            psi = form.to_character()
            assert is_reduced(psi)
            chk = verify_witness(chi, psi, w)
            assert chk.ok, (p, l, m, format_character_literal(chi), chk.reason)
            # digit preservation through both stages
            assert psi.value(l) % p == chi.value(l) % p
            if m % p:
                assert psi.value(m) == chi.value(m)


def test_reduce_idempotent():
    rng = random.Random(304)
    for p, l, m in SMALL_TYPES[:8]:
        for _ in range(6):
            chi = random_character(rng, p, l, m)
            form, _ = reduce(chi)
            again, w = reduce(form.to_character())
            assert again == form
            assert w.element == NottinghamElement.identity(p, form.to_character().bound)


# ---------------------------------------------------------------------------
# Witness verification.


def test_verify_accepts_identity():
    chi = parse_character_literal("5:1,15:2", 2)
    chk = verify_witness(chi, chi, NottinghamElement.identity(2, chi.bound))
    assert chk.ok and chk.reason == "ok" and bool(chk)


def test_verify_flags_action_mismatch():
    chi = parse_character_literal("5:1,15:2", 2)
    psi = parse_character_literal("5:1,11:2,15:2", 2)
    chk = verify_witness(chi, psi, NottinghamElement.identity(2, chi.bound))
    assert not chk.ok and chk.reason == "action-mismatch" and not bool(chk)


def test_verify_flags_kernel_violation():
    # t*(1+t) fixes this character's action orbit position but fails the
    # kernel condition: the character takes value 1 on its unit part
    chi = parse_character_literal("1:1,4:3", 3)
    u = parse_nottingham("t*(1+t)", 3, chi.bound)
    assert char_act(u, chi) == chi
    assert char_eval(chi, u.unit) == 1
    chk = verify_witness(chi, chi, u)
    assert not chk.ok and chk.reason == "kernel-violation"


def test_verify_flags_incompatible():
    chi = parse_character_literal("5:1,15:2", 2)
    # wrong prime
    chk = verify_witness(chi, chi, NottinghamElement.identity(3, 15))
    assert not chk.ok and chk.reason == "incompatible"
    # element tracked too shallow to evaluate the action
    chk = verify_witness(chi, chi, NottinghamElement.identity(2, 3))
    assert not chk.ok and chk.reason == "incompatible"


def test_verify_accepts_witness_object():
    chi = parse_character_literal("1:1,2:3,4:3", 3)
    form, w = reduce(chi)
    assert verify_witness(chi, form.to_character(), w).ok
    assert verify_witness(chi, form.to_character(), w.element).ok


def test_verify_ignores_cached_kernel_value():
    # the element is the whole certificate; verification recomputes the
    # kernel value instead of trusting the (here doctored) cache
    chi = parse_character_literal("5:1,15:2", 2)
    u = NottinghamElement.identity(2, chi.bound)
    doctored = Witness(u, 2)
    chk = verify_witness(chi, chi, doctored)
    assert chk.ok


def test_act_then_reduce_composite_flow():
    # act by u0 = t*(1+t^3+t^4), with no compensator needed at the top
    # (the kernel value is already 0), then clean up with stage 2; the
    # landing point is the reduced neighbor with an extra digit at 11
    chi = parse_character_literal("5:1,15:2", 2)
    u0 = parse_nottingham("t*(1+t^3+t^4)", 2, 15)
    assert char_eval(chi, u0.unit) == 0
    acted = char_act(u0, chi)
    assert acted == parse_character_literal("3:2,5:1,11:2,15:2", 2)
    assert acted.value(11) == 2
    assert verify_witness(chi, acted, u0).ok
    assert not is_reduced(acted)

    form, w2 = reduce(acted)
    psi = form.to_character()
    assert psi == parse_character_literal("5:1,11:2,15:2", 2)
    # compose the two certificates into one strict equivalence chi -> psi
    from nottorsion.series import nott_compose

    total = nott_compose(w2.element, u0)
    chk = verify_witness(chi, psi, total)
    assert chk.ok


def test_witness_check_reason_vocabulary():
    assert WitnessCheck.REASONS == ("ok", "action-mismatch", "kernel-violation", "incompatible")
    with pytest.raises(ValueError):
        WitnessCheck(True, "because")
