"""Todd-Coxeter enumeration: orders, multiplication tables, and the
normal-generator search on a perfect group.

Run:  python3 demos/03_coset_enumeration.py
"""

from d2kit import (
    find_normal_generator,
    group_model,
    is_trivial_quotient,
    parse_presentation,
    todd_coxeter,
)
from d2kit.words import Word

for text, name in [("gens: x\nrels: x^5\n", "Z/5"),
                   ("gens: a b\nrels: a^2 b^2 (a b)^3\n", "S3"),
                   ("gens: a b\nrels: (a^2 b^-2) (b^-1 a b a)\n", "Q8"),
                   ("gens: a b\nrels: a^2 b^3 (a b)^5\n", "A5")]:
    P = parse_presentation(text)
    tc = todd_coxeter(P, 20000)
    print(f"{name}: order {tc.num_cosets} ({tc.status})")

# An infinite group never closes; the tool reports only what is certified.
trefoil = parse_presentation("gens: x y\nrels: (x^2 y^-3)\n")
tc = todd_coxeter(trefoil, 5000)
print("trefoil:", tc.status, f"(no conclusion within 5000 cosets)")

# Multiplication tables use deterministic first-visit numbering.
s3 = group_model(parse_presentation("gens: a b\nrels: a^2 b^2 (a b)^3\n"), 1000)
a, b = s3.generator_images
print("\nS3 table rows:", [list(r) for r in s3.mult[:3]], "...")
print("nonabelian: a*b =", s3.mult[a][b], "but b*a =", s3.mult[b][a])

# Normal generation: A5 is perfect and normally generated by the letter a.
a5 = parse_presentation("gens: a b\nrels: a^2 b^3 (a b)^5\n")
res = find_normal_generator(a5, max_len=2, max_cosets=20000)
print("\nA5 normal generator search:", "found" if res.found else "not found")
print("witness word:", a5.format_word(res.word))
print("re-check: quotient by <<a>> ->",
      is_trivial_quotient(a5, [Word([(0, 1)])], 20000).kind)
