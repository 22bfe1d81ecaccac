"""Freely reduced words over an indexed generating set.

A letter is a pair (generator index, sign) with sign +1 or -1. Words are
immutable and always stored freely reduced; the empty word is the identity.
"""

from __future__ import annotations


def reduce_letters(letters):
    """Freely reduce a letter sequence (stack cancellation)."""
    out = []
    for g, s in letters:
        if s not in (1, -1):
            raise ValueError(f"letter sign must be +1 or -1, got {s!r}")
        if out and out[-1][0] == g and out[-1][1] == -s:
            out.pop()
        else:
            out.append((int(g), s))
    return tuple(out)


class Word:
    __slots__ = ("letters",)

    def __init__(self, letters=()):
        object.__setattr__(self, "letters", reduce_letters(letters))

    def __setattr__(self, name, value):
        raise AttributeError("Word is immutable")

    @classmethod
    def identity(cls):
        return _IDENTITY

    @classmethod
    def generator(cls, index, sign=1):
        return cls(((index, sign),))

    def __len__(self):
        return len(self.letters)

    def __bool__(self):
        return bool(self.letters)

    def is_identity(self):
        return not self.letters

    def __mul__(self, other):
        return Word(self.letters + other.letters)

    def inverse(self):
        return Word(tuple((g, -s) for g, s in reversed(self.letters)))

    __invert__ = inverse

    def __pow__(self, n):
        if n == 0:
            return _IDENTITY
        base = self if n > 0 else self.inverse()
        return Word(base.letters * abs(n))

    def conjugated_by(self, u):
        """u * self * u^-1."""
        return u * self * u.inverse()

    def exponent_sum(self, gen):
        return sum(s for g, s in self.letters if g == gen)

    def generator_count(self, gen):
        return sum(1 for g, _ in self.letters if g == gen)

    def max_generator(self):
        return max((g for g, _ in self.letters), default=-1)

    def cyclically_reduced(self):
        """Return (core, conjugator) with self == conjugator * core * conjugator^-1
        and core cyclically reduced."""
        letters = list(self.letters)
        prefix = []
        while len(letters) >= 2 and letters[0] == (letters[-1][0], -letters[-1][1]):
            prefix.append(letters[0])
            letters = letters[1:-1]
        return Word(letters), Word(prefix)

    def substituted(self, images):
        """Replace generator i by the word images[i] (extended to inverses)."""
        out = []
        for g, s in self.letters:
            w = images[g]
            out.extend(w.letters if s > 0 else w.inverse().letters)
        return Word(out)

    def __eq__(self, other):
        return isinstance(other, Word) and self.letters == other.letters

    def __hash__(self):
        return hash(self.letters)

    def __lt__(self, other):
        # length-lexicographic; letter order (0,+1) < (0,-1) < (1,+1) < ...
        return self._lex_key() < other._lex_key()

    def _lex_key(self):
        return (len(self.letters),
                tuple(2 * g + (0 if s > 0 else 1) for g, s in self.letters))

    def __repr__(self):
        return f"Word({self.letters!r})"


_IDENTITY = object.__new__(Word)
object.__setattr__(_IDENTITY, "letters", ())


def reduce_word(w):
    """Freely reduce; accepts a Word or a raw letter sequence."""
    if isinstance(w, Word):
        return w
    return Word(w)


def words_in_length_lex_order(num_generators, max_length):
    """Yield all freely reduced words up to max_length, shortest first,
    ties broken lexicographically by (generator index, +1 before -1)."""
    alphabet = [(g, s) for g in range(num_generators) for s in (1, -1)]
    yield Word()
    level = [()]
    for _ in range(max_length):
        nxt = []
        for prefix in level:
            for g, s in alphabet:
                if prefix and prefix[-1] == (g, -s):
                    continue
                letters = prefix + ((g, s),)
                nxt.append(letters)
                yield Word(letters)
        level = nxt
