import random

import pytest

from d2kit.coset import todd_coxeter
from d2kit.presentations import (
    abelianization,
    deficiency,
    parse_presentation,
    serialize_presentation,
)
from d2kit.tietze import (
    AddGenerator,
    AddRelator,
    ExtensionResult,
    InvalidMove,
    LiftingViolatesRelator,
    NotASubpresentation,
    RemoveGenerator,
    RemoveRelator,
    apply_move,
    deficiency_search,
    derived_word,
    invert_move,
    replace_subpresentation,
    simplify,
    subpresentation,
)
from d2kit.words import Word

A5 = parse_presentation("gens: a b\nrels: a^2 b^3 (a b)^5\n")
TREFOIL = parse_presentation("gens: x y\nrels: (x^2 y^-3)\n")
Z5_REDUNDANT = parse_presentation("gens: x y\nrels: x^5 y\n")


def test_add_generator_then_remove_round_trip():
    P = TREFOIL
    move = AddGenerator("z", Word([(0, 1), (1, -1)]))
    Q = apply_move(P, move)
    assert Q.num_generators == 3 and Q.num_relators == 2
    assert deficiency(Q) == deficiency(P)
    back = apply_move(Q, invert_move(P, move))
    assert back == P


def test_add_relator_with_derivation_and_remove():
    P = A5
    derivation = ((Word([(1, 1)]), 0, 1), (Word(), 1, -1))
    w = derived_word(P.relators, derivation)
    move = AddRelator(w, derivation)
    Q = apply_move(P, move)
    assert Q.num_relators == 4
    assert deficiency(Q) == deficiency(P) - 1
    back = apply_move(Q, invert_move(P, move))
    assert back == P


def test_add_relator_bad_derivation_rejected():
    P = A5
    with pytest.raises(InvalidMove):
        apply_move(P, AddRelator(Word([(0, 1)]), ((Word(), 1, 1),)))


def test_remove_relator_requires_honest_derivation():
    P = parse_presentation("gens: x\nrels: x^2 x^2\n")
    Q = apply_move(P, RemoveRelator(1, ((Word(), 0, 1),)))
    assert Q.num_relators == 1
    with pytest.raises(InvalidMove):
        apply_move(P, RemoveRelator(1, ((Word(), 1, 1),)))  # uses itself


def test_remove_generator_eliminates_via_single_occurrence():
    Q = apply_move(Z5_REDUNDANT, RemoveGenerator(1))
    assert Q == parse_presentation("gens: x\nrels: x^5\n")
    with pytest.raises(InvalidMove):
        apply_move(TREFOIL, RemoveGenerator(0))  # x occurs twice


def test_remove_generator_substitutes():
    # < x y | y x^-2, y^5 > : remove y -> < x | x^10 >
    P = parse_presentation("gens: x y\nrels: (y x^-2) y^5\n")
    Q = apply_move(P, RemoveGenerator(1))
    assert Q == parse_presentation("gens: x\nrels: x^10\n")


def test_simplify_examples():
    assert simplify(Z5_REDUNDANT) == parse_presentation("gens: x\nrels: x^5\n")
    assert simplify(A5) == A5
    assert simplify(TREFOIL) == TREFOIL
    # empty + duplicate relators vanish
    P = parse_presentation("gens: x\nrels: () x^2 x^2 (x x^2 x^-1)\n")
    assert simplify(P) == parse_presentation("gens: x\nrels: x^2\n")


def _defining_relator_index(P, gen):
    for i, r in enumerate(P.relators):
        if r.generator_count(gen) == 1:
            return i
    return None


def random_verified_moves(P, rng, count):
    """A deterministic stream of group-preserving moves applied in sequence.

    `track_added` holds indices of relators added redundantly (so removing
    them later is safe); RemoveGenerator deletes its defining relator, which
    shifts the tracked indices.
    """
    track_added = []
    out = []

    def drop_index(removed):
        nonlocal track_added
        track_added = [i if i < removed else i - 1
                       for i in track_added if i != removed]

    for _ in range(count):
        kind = rng.choice(["addrel", "addgen", "removerel", "remgen"])
        if kind == "addrel" and P.num_relators:
            deriv = []
            for _ in range(rng.randint(1, 2)):
                j = rng.randrange(P.num_relators)
                u = Word([(rng.randrange(P.num_generators), rng.choice((1, -1)))
                          for _ in range(rng.randint(0, 2))]) if P.num_generators else Word()
                deriv.append((u, j, rng.choice((1, -1))))
            w = derived_word(P.relators, tuple(deriv))
            move = AddRelator(w, tuple(deriv))
            track_added.append(P.num_relators)
            P = apply_move(P, move)
            out.append(move)
        elif kind == "addgen":
            name = f"t{len(P.generators)}_{rng.randrange(1000)}"
            w = Word([(rng.randrange(P.num_generators), rng.choice((1, -1)))
                      for _ in range(rng.randint(0, 3))]) if P.num_generators else Word()
            move = AddGenerator(name, w)
            P = apply_move(P, move)
            out.append(move)
        elif kind == "removerel" and track_added:
            idx = track_added.pop()
            move = RemoveRelator(idx, None)
            P = apply_move(P, move)
            out.append(move)
            drop_index(idx)
        elif kind == "remgen":
            target = None
            for g in range(P.num_generators):
                if _defining_relator_index(P, g) is not None:
                    target = g
                    break
            if target is not None:
                defining = _defining_relator_index(P, target)
                move = RemoveGenerator(target)
                P = apply_move(P, move)
                out.append(move)
                drop_index(defining)
    return P, out


@pytest.mark.parametrize("seed,text", [
    (101, "gens: a b\nrels: a^2 b^3 (a b)^5\n"),
    (202, "gens: x y\nrels: (x^2 y^-3)\n"),
    (303, "gens: a b\nrels: a^2 b^2 (a b)^3\n"),
    (404, "gens: x\nrels: x^5\n"),
])
def test_abelianization_invariant_under_random_move_sequences(seed, text):
    P0 = parse_presentation(text)
    h0 = abelianization(P0).invariant_factors
    rng = random.Random(seed)
    for trial in range(25):
        P, _ = random_verified_moves(P0, rng, 6)
        assert abelianization(P).invariant_factors == h0


def test_order_invariant_under_random_move_sequences():
    rng = random.Random(11)
    for text, order in [("gens: x\nrels: x^5\n", 5),
                        ("gens: a b\nrels: a^2 b^2 (a b)^3\n", 6),
                        ("gens: a b\nrels: (a^2 b^-2) (b^-1 a b a)\n", 8)]:
        P0 = parse_presentation(text)
        for _ in range(5):
            P, _ = random_verified_moves(P0, rng, 5)
            tc = todd_coxeter(P, 20000)
            assert tc.complete and tc.num_cosets == order


def test_deficiency_effect_of_moves():
    P = TREFOIL
    Q = apply_move(P, AddGenerator("z", Word([(0, 1)])))
    assert deficiency(Q) == deficiency(P)
    R = apply_move(P, AddRelator(P.relators[0], ((Word(), 0, 1),)))
    assert deficiency(R) == deficiency(P) - 1


def test_deficiency_search_examples():
    res = deficiency_search(Z5_REDUNDANT, budget=50)
    assert res.best == parse_presentation("gens: x\nrels: x^5\n")
    assert res.deficiency == 0
    res = deficiency_search(TREFOIL, budget=50)
    assert res.deficiency == 1
    res = deficiency_search(A5, budget=30)
    assert res.deficiency == -1
    assert res.visited <= 30


def test_deficiency_search_deterministic():
    a = deficiency_search(A5, budget=20)
    b = deficiency_search(A5, budget=20)
    assert serialize_presentation(a.best) == serialize_presentation(b.best)
    assert a.deficiency == b.deficiency and a.visited == b.visited


def test_subpresentation():
    sub = subpresentation(A5, [0], [0])
    assert sub == parse_presentation("gens: a\nrels: a^2\n")
    with pytest.raises(NotASubpresentation):
        subpresentation(A5, [0], [2])  # (ab)^5 uses b
    with pytest.raises(IndexError):
        subpresentation(A5, [5], [0])


def test_replace_subpresentation_a5_example():
    alternative = parse_presentation("gens: c\nrels: c^2\n")
    res = replace_subpresentation(A5, [0], [0], alternative,
                                  {0: Word([(0, 1)])})
    assert isinstance(res, ExtensionResult)
    out = res.presentation
    assert out == parse_presentation("gens: c b\nrels: c^2 b^3 (c b)^5\n")
    # counts: |alt gens| + (n - n') and |alt rels| + (m - m')
    assert out.num_generators == 1 + (2 - 1)
    assert out.num_relators == 1 + (3 - 1)
    assert res.lifting_verified
    tc = todd_coxeter(out, 20000)
    assert tc.complete and tc.num_cosets == 60


def test_replace_subpresentation_identity_case():
    res = replace_subpresentation(
        A5, [0, 1], [0, 1, 2], A5,
        {0: Word([(0, 1)]), 1: Word([(1, 1)])})
    assert res.presentation == A5


def test_replace_subpresentation_two_relator_example():
    P = parse_presentation("gens: x y\nrels: x^2 y^3\n")
    alt = parse_presentation("gens: z\nrels: z^2\n")
    res = replace_subpresentation(P, [0], [0], alt, {0: Word([(0, 1)])})
    assert res.presentation == parse_presentation("gens: z y\nrels: z^2 y^3\n")


def test_replace_subpresentation_bad_lifting():
    alt = parse_presentation("gens: c\nrels: c^3\n")  # c^2 does not hold
    with pytest.raises(LiftingViolatesRelator):
        replace_subpresentation(A5, [0], [0], alt, {0: Word([(0, 1)])})


def test_replace_subpresentation_infinite_target_is_caller_asserted():
    P = parse_presentation("gens: x y\nrels: x^2\n")
    alt = parse_presentation("gens: z\nrels:\n")  # Z: never enumerates? (it does: no)
    res = replace_subpresentation(
        parse_presentation("gens: x y\nrels: (x^2 y^-3)\n"),
        [0, 1], [0],
        parse_presentation("gens: u v\nrels: (u^2 v^-3)\n"),
        {0: Word([(0, 1)]), 1: Word([(1, 1)])}, max_cosets=500)
    assert not res.lifting_verified
    assert any("caller-asserted" in n for n in res.notes)


def test_name_clash_renaming():
    P = parse_presentation("gens: x y\nrels: x^2 y^3\n")
    alt = parse_presentation("gens: y\nrels: y^2\n")  # clashes with kept y
    res = replace_subpresentation(P, [0], [0], alt, {0: Word([(0, 1)])})
    assert res.presentation.generators == ("y", "y_")
