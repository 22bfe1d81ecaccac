"""Words, presentations, abelianization, and deficiency search.

Run:  python3 demos/01_presentations_and_words.py
"""

from d2kit import (
    Word,
    abelianization,
    deficiency,
    deficiency_search,
    is_perfect,
    parse_presentation,
    serialize_presentation,
)

# Words are freely reduced pairs (generator index, sign).
w = Word([(0, 1), (0, -1), (1, 1)])          # x x^-1 y
print("x x^-1 y reduces to:", w.letters)      # ((1, 1),)
print("(xy)^-1 =", (Word([(0, 1), (1, 1)]).inverse()).letters)

# The .fp format: whitespace separates relators; parentheses group.
trefoil = parse_presentation("gens: x y\nrels: (x^2 y^-3)\n")
print("\ntrefoil:", trefoil)
print("serialized round trip:\n" + serialize_presentation(trefoil))

ab = abelianization(trefoil)
print("exponent matrix:", ab.matrix.to_rows())
print("H1 =", ab.invariant_factors)          # Z: the trefoil abelianizes to Z
print("perfect?", is_perfect(trefoil))
print("deficiency of this presentation:", deficiency(trefoil))

a5 = parse_presentation("gens: a b\nrels: a^2 b^3 (a b)^5\n")
print("\nA5 preset:", a5)
print("H1 =", abelianization(a5).invariant_factors, "(perfect)")

# A redundant generator is eliminated by the verified Tietze search.
redundant = parse_presentation("gens: x y\nrels: x^5 y\n")
res = deficiency_search(redundant, budget=50)
print("\nsearch on < x y | x^5, y >:")
print("  best presentation:", res.best)
print("  deficiency found:", res.deficiency)
