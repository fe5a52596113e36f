"""Free-word algorithms for two-generator presentations.

Words over the free group on a, b are written in ASCII with uppercase
letters denoting inverses ("aBA" = a b^-1 a^-1, no separators).  The
module parses and reduces such words, abelianizes two-generator
presentations, decides Brown's fibering criterion for a character on a
one-relator kernel (unique minimum and maximum of the prefix sums), lists
the primitive characters onto the integers, and decides whether a mod-2
character admits an integral lift.
"""

from __future__ import annotations

from dataclasses import dataclass

from .intalg import FgAbelianGroup, IntMatrix, kernel_basis, smith_normal_form, solve_linear

# letters are encoded as +-1 (a, a^-1) and +-2 (b, b^-1)
_CHAR_TO_LETTER = {"a": 1, "A": -1, "b": 2, "B": -2}
_LETTER_TO_CHAR = {v: k for k, v in _CHAR_TO_LETTER.items()}


class BadCharacter(ValueError):
    """Word text contains a character outside {a, b, A, B}."""


class PreconditionViolated(ValueError):
    """Input to the fibering criterion fails one of its stated hypotheses."""


class NotACharacter(ValueError):
    """The mod-2 assignment does not vanish on all relators."""


@dataclass(frozen=True)
class FreeWord:
    """A word in the free group on a and b, stored as signed letters."""

    letters: tuple[int, ...]

    def __post_init__(self) -> None:
        for x in self.letters:
            if x not in (-2, -1, 1, 2):
                raise ValueError(f"invalid letter code {x}")

    def __str__(self) -> str:
        return "".join(_LETTER_TO_CHAR[x] for x in self.letters)

    def __len__(self) -> int:
        return len(self.letters)

    def is_empty(self) -> bool:
        return not self.letters

    def inverse(self) -> "FreeWord":
        return FreeWord(tuple(-x for x in reversed(self.letters)))

    def exponents(self) -> tuple[int, int]:
        """Exponent sums (on a, on b)."""
        ea = sum(1 if x == 1 else -1 if x == -1 else 0 for x in self.letters)
        eb = sum(1 if x == 2 else -1 if x == -2 else 0 for x in self.letters)
        return ea, eb


def free_reduce(letters) -> tuple[int, ...]:
    """Cancel adjacent inverse pairs until none remain."""
    out: list[int] = []
    for x in letters:
        if out and out[-1] == -x:
            out.pop()
        else:
            out.append(x)
    return tuple(out)


def parse_word(s: str) -> FreeWord:
    """Parse ASCII text into a freely reduced word."""
    letters = []
    for ch in s:
        if ch not in _CHAR_TO_LETTER:
            raise BadCharacter(f"invalid word character {ch!r}")
        letters.append(_CHAR_TO_LETTER[ch])
    return FreeWord(free_reduce(letters))


def cyclically_reduce(w: FreeWord) -> FreeWord:
    """Shortest word conjugate to w: free reduction plus end-cancellation."""
    letters = list(free_reduce(w.letters))
    while len(letters) >= 2 and letters[0] == -letters[-1]:
        letters = letters[1:-1]
        letters = list(free_reduce(letters))
    return FreeWord(tuple(letters))


def rotate(w: FreeWord, k: int) -> FreeWord:
    """Cyclic rotation by k letters (conjugation by the length-k prefix)."""
    if not w.letters:
        return w
    k %= len(w.letters)
    return FreeWord(w.letters[k:] + w.letters[:k])


@dataclass(frozen=True)
class Presentation:
    """A presentation with the two fixed generators a and b."""

    relators: tuple[FreeWord, ...]

    def __post_init__(self) -> None:
        for r in self.relators:
            if free_reduce(r.letters) != r.letters:
                raise ValueError("relators must be freely reduced")
            if not r.letters:
                raise ValueError("relators must be nonempty after free reduction")

    @staticmethod
    def parse(text: str) -> "Presentation":
        """Parse `<a,b|word1,word2>`; the relator list may be empty."""
        t = text.strip()
        if not (t.startswith("<") and t.endswith(">")):
            raise ValueError("presentation must be delimited by angle brackets")
        body = t[1:-1]
        if "|" not in body:
            raise ValueError("presentation needs a generator|relator separator")
        gens, _, rel_text = body.partition("|")
        if gens.replace(" ", "") != "a,b":
            raise ValueError("the generators must be exactly a,b")
        rel_text = rel_text.strip()
        relators = []
        if rel_text:
            for piece in rel_text.split(","):
                piece = piece.strip()
                if not piece:
                    raise ValueError("empty relator entry")
                relators.append(parse_word(piece))
        return Presentation(tuple(relators))

    def __str__(self) -> str:
        return "<a,b|" + ",".join(str(r) for r in self.relators) + ">"

    def exponent_matrix(self) -> IntMatrix:
        """2 x r matrix whose columns are the relators' exponent sums."""
        cols = [r.exponents() for r in self.relators]
        return IntMatrix.from_rows([[c[0] for c in cols], [c[1] for c in cols]])


@dataclass(frozen=True)
class ZMap:
    """A character on the free group, determined by its values on a, b."""

    a: int
    b: int

    def on_letter(self, x: int) -> int:
        if x == 1:
            return self.a
        if x == -1:
            return -self.a
        if x == 2:
            return self.b
        return -self.b

    def on_word(self, w: FreeWord) -> int:
        ea, eb = w.exponents()
        return ea * self.a + eb * self.b

    def kills(self, p: Presentation) -> bool:
        return all(self.on_word(r) == 0 for r in p.relators)


def abelianization(p: Presentation) -> FgAbelianGroup:
    """The quotient of Z^2 by the relators' exponent columns, in canonical
    form (free rank plus a divisibility chain of torsion coefficients)."""
    if not p.relators:
        return FgAbelianGroup.free(2)
    factors = smith_normal_form(p.exponent_matrix()).d
    rank = 2 - len(factors)
    torsion = tuple(v for v in factors if v >= 2)
    return FgAbelianGroup(rank, torsion)


@dataclass(frozen=True)
class BrownVerdict:
    """Outcome of the fibering criterion on one relator.

    fibered is True exactly when the prefix sums attain their minimum
    once and their maximum once; indices are 1-based positions of the
    first attainment.  reason explains a False verdict.
    """

    fibered: bool
    values: tuple[int, ...]
    min_index: int
    min_value: int
    max_index: int
    max_value: int
    reason: str | None = None


def brown_fibered(relator: FreeWord, phi: ZMap) -> BrownVerdict:
    """Unique-extrema test on the prefix sums phi(R_1) ... phi(R_n).

    Requires a nontrivial cyclically reduced relator killed by phi, with
    phi nonzero on both generators.  The prefix index is 1-based and no
    implicit zero value is prepended.
    """
    if relator.is_empty():
        raise PreconditionViolated("the relator must be nontrivial")
    if cyclically_reduce(relator).letters != relator.letters:
        raise PreconditionViolated("the relator must be cyclically reduced")
    if phi.a == 0 or phi.b == 0:
        raise PreconditionViolated("the character must be nonzero on both generators")
    if phi.on_word(relator) != 0:
        raise PreconditionViolated("the character must kill the relator")
    values = []
    total = 0
    for x in relator.letters:
        total += phi.on_letter(x)
        values.append(total)
    lo, hi = min(values), max(values)
    min_index = values.index(lo) + 1
    max_index = values.index(hi) + 1
    reasons = []
    if values.count(lo) != 1:
        reasons.append("minimum attained more than once")
    if values.count(hi) != 1:
        reasons.append("maximum attained more than once")
    return BrownVerdict(
        fibered=not reasons,
        values=tuple(values),
        min_index=min_index,
        min_value=lo,
        max_index=max_index,
        max_value=hi,
        reason="; ".join(reasons) if reasons else None,
    )


@dataclass(frozen=True)
class Epimorphisms:
    """Primitive characters onto Z up to sign.

    With first Betti number one the list holds the unique character; with
    Betti number two it holds the two coordinate projections as a basis
    and multiple_exist is set; an empty list means none exist.
    """

    maps: tuple[ZMap, ...]
    multiple_exist: bool


def _character_lattice(p: Presentation) -> IntMatrix:
    """Basis (as columns) of the integer characters vanishing on all
    relators: the kernel of the transposed exponent matrix."""
    if not p.relators:
        return IntMatrix.identity(2)
    return kernel_basis(p.exponent_matrix().transpose())


def _normalized_sign(v: tuple[int, int]) -> tuple[int, int]:
    if v[1] > 0 or (v[1] == 0 and v[0] > 0):
        return v
    return (-v[0], -v[1])


def epimorphisms_to_Z(p: Presentation) -> Epimorphisms:
    """All primitive characters of the presented group onto Z, up to sign."""
    lattice = _character_lattice(p)
    if lattice.cols == 0:
        return Epimorphisms((), False)
    if lattice.cols == 1:
        va, vb = _normalized_sign((lattice.at(0, 0), lattice.at(1, 0)))
        return Epimorphisms((ZMap(va, vb),), False)
    return Epimorphisms((ZMap(1, 0), ZMap(0, 1)), True)


def integral_lift_exists(p: Presentation, w1a: int, w1b: int) -> bool:
    """Is the mod-2 character (w1a, w1b) the reduction of an integral one?

    The assignment must vanish mod 2 on every relator (NotACharacter
    otherwise).  Decided by solving for an integer combination of the
    character lattice congruent to (w1a, w1b) mod 2.
    """
    w = (w1a % 2, w1b % 2)
    for r in p.relators:
        ea, eb = r.exponents()
        if (ea * w[0] + eb * w[1]) % 2 != 0:
            raise NotACharacter("the assignment does not vanish on all relators mod 2")
    lattice = _character_lattice(p)
    return solve_linear(lattice, [w[0], w[1]], modulus=2) is not None


def no_lift_certificate(p: Presentation, w1a: int, w1b: int) -> bool:
    """Sufficient condition for the absence of an integral lift.

    Applies when the abelianization is Z plus nontrivial torsion, some
    relator passes the fibering criterion for the unique character, and
    the mod-2 assignment differs from both reductions 0 and phi mod 2.
    Sufficient only; integral_lift_exists is the decision procedure and
    is never overridden by this check.
    """
    ab = abelianization(p)
    if ab.free_rank != 1 or not ab.torsion:
        return False
    epis = epimorphisms_to_Z(p)
    if len(epis.maps) != 1:
        return False
    phi = epis.maps[0]
    if phi.a == 0 or phi.b == 0:
        return False
    witness = False
    for r in p.relators:
        if phi.on_word(r) == 0 and cyclically_reduce(r).letters == r.letters:
            if brown_fibered(r, phi).fibered:
                witness = True
                break
    if not witness:
        return False
    w = (w1a % 2, w1b % 2)
    return w != (0, 0) and w != (phi.a % 2, phi.b % 2)
