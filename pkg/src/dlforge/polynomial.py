"""Exact graded-commutative polynomial arithmetic over F2 and Q.

Supports weighted gradings, explicit monomial-relation quotients (nilpotent
generators and the like), and the indecomposable-projection bookkeeping used
by the homology models.  All arithmetic is exact: scalars are either bits
(the field with two elements) or ``fractions.Fraction``.  No floating point
appears anywhere in this package.

Monomials are stored as sorted tuples of ``(generator_index, exponent)``
pairs; a polynomial is a mapping from monomials to nonzero scalars.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

__all__ = [
    "GF2",
    "QQ",
    "Generator",
    "PolynomialRing",
    "GradedPolynomial",
    "QuotientPresentation",
    "binomial_mod2",
    "indecomposable_degrees",
]


class _F2:
    """Scalar arithmetic for the field with two elements (bits 0/1)."""

    name = "F2"
    zero = 0
    one = 1

    def coerce(self, v):
        if isinstance(v, Fraction):
            if v.denominator != 1:
                raise ValueError("cannot reduce a non-integer mod 2: %r" % (v,))
            v = v.numerator
        return int(v) & 1

    def add(self, a, b):
        return a ^ b

    def mul(self, a, b):
        return a & b

    def neg(self, a):
        return a

    def is_unit(self, a):
        return a == 1

    def inv(self, a):
        if a != 1:
            raise ZeroDivisionError("0 is not invertible")
        return 1

    def is_integral(self, a):
        return True

    def fmt(self, a):
        return str(a)


class _QQ:
    """Scalar arithmetic for exact rationals."""

    name = "Q"
    zero = Fraction(0)
    one = Fraction(1)

    def coerce(self, v):
        return Fraction(v)

    def add(self, a, b):
        return a + b

    def mul(self, a, b):
        return a * b

    def neg(self, a):
        return -a

    def is_unit(self, a):
        return a != 0

    def inv(self, a):
        return Fraction(1) / a

    def is_integral(self, a):
        return a.denominator == 1

    def fmt(self, a):
        return str(a)


GF2 = _F2()
QQ = _QQ()


@dataclass(frozen=True)
class Generator:
    """A named algebra generator with an integer degree."""

    name: str
    degree: int

    def __post_init__(self):
        if not self.name:
            raise ValueError("generator needs a name")


def binomial_mod2(n, k):
    """Binomial coefficient mod 2 via the bitmask form of Lucas' theorem.

    Out-of-range arguments (negative, or k > n) give 0.
    """
    if k < 0 or n < 0 or k > n:
        return 0
    return 1 if (n - k) & k == 0 else 0


def indecomposable_degrees(generators, max_degree):
    """Degrees <= max_degree in which some generator lives."""
    return {g.degree for g in generators if g.degree <= max_degree}


class PolynomialRing:
    """A graded polynomial ring with named generators and optional relations.

    ``relations`` is a ``QuotientPresentation`` (or None).  Elements reduce
    against the relations on construction, so every ``GradedPolynomial`` is
    in normal form.
    """

    def __init__(self, scalars, generators, relations=None):
        self.scalars = scalars
        self.generators = tuple(generators)
        names = [g.name for g in self.generators]
        if len(set(names)) != len(names):
            raise ValueError("generator names must be distinct")
        self.index = {g.name: i for i, g in enumerate(self.generators)}
        self.degrees = tuple(g.degree for g in self.generators)
        self.relations = None
        if relations is not None:
            self.relations = relations._bind(self)

    # -- element constructors -------------------------------------------

    def make(self, terms):
        """Normalize a {monomial: scalar} mapping into an element."""
        return GradedPolynomial(self, self._reduce(terms))

    def zero(self):
        return GradedPolynomial(self, {})

    def one(self):
        return self.scalar(self.scalars.one)

    def scalar(self, c):
        c = self.scalars.coerce(c)
        return self.make({(): c} if c != self.scalars.zero else {})

    def gen(self, name, exp=1):
        if name not in self.index:
            raise KeyError("no generator named %r" % name)
        if exp < 0:
            raise ValueError("exponents must be nonnegative")
        mono = ((self.index[name], exp),) if exp else ()
        return self.make({mono: self.scalars.one})

    def monomial(self, powers, coeff=1):
        """Element c * prod(name^exp) from a {name: exp} mapping."""
        mono = tuple(sorted((self.index[n], e) for n, e in powers.items() if e))
        return self.make({mono: self.scalars.coerce(coeff)})

    # -- internals -------------------------------------------------------

    def _reduce(self, terms):
        cleaned = {m: c for m, c in terms.items() if c != self.scalars.zero}
        if self.relations is None:
            return cleaned
        return self.relations._reduce_terms(cleaned)

    def monomial_degree(self, mono):
        return sum(self.degrees[i] * e for i, e in mono)

    def __repr__(self):
        rel = "" if self.relations is None else " with relations"
        return "PolynomialRing(%s[%s]%s)" % (
            self.scalars.name,
            ", ".join(g.name for g in self.generators),
            rel,
        )


class QuotientPresentation:
    """A finite list of monomial relations lhs -> rhs imposed on a ring.

    Only the monomial-headed rewrites needed here are supported (nilpotent
    generators, explicitly given binomial relations); this is not a Groebner
    engine.  ``relations`` is a list of ``({name: exp}, rhs)`` pairs where
    ``rhs`` is a ``{monomial_powers: coeff}`` mapping (``{}`` for zero).
    """

    _MAX_PASSES = 10_000

    def __init__(self, relations):
        self.spec = list(relations)

    def _bind(self, ring):
        bound = QuotientPresentation.__new__(QuotientPresentation)
        bound.spec = self.spec
        bound.ring = ring
        bound.rules = []
        for lhs_powers, rhs in self.spec:
            lhs = tuple(sorted((ring.index[n], e) for n, e in lhs_powers.items() if e))
            if not lhs:
                raise ValueError("relation head must be a nontrivial monomial")
            rhs_terms = {}
            for powers, c in rhs.items():
                mono = tuple(sorted((ring.index[n], e) for n, e in dict(powers).items() if e))
                rhs_terms[mono] = ring.scalars.coerce(c)
            ldeg = ring.monomial_degree(lhs)
            for m in rhs_terms:
                if ring.monomial_degree(m) != ldeg:
                    raise ValueError("relation is not homogeneous")
            bound.rules.append((lhs, rhs_terms))
        return bound

    @staticmethod
    def _divide(mono, lhs):
        """mono / lhs as a monomial, or None if lhs does not divide mono."""
        have = dict(mono)
        for i, e in lhs:
            if have.get(i, 0) < e:
                return None
        for i, e in lhs:
            have[i] -= e
            if have[i] == 0:
                del have[i]
        return tuple(sorted(have.items()))

    def _reduce_terms(self, terms):
        ring = self.ring
        for _ in range(self._MAX_PASSES):
            out = {}
            changed = False
            for mono, coeff in terms.items():
                hit = None
                for lhs, rhs in self.rules:
                    q = self._divide(mono, lhs)
                    if q is not None:
                        hit = (q, rhs)
                        break
                if hit is None:
                    c = ring.scalars.add(out.get(mono, ring.scalars.zero), coeff)
                    if c == ring.scalars.zero:
                        out.pop(mono, None)
                    else:
                        out[mono] = c
                    continue
                changed = True
                q, rhs = hit
                for rmono, rc in rhs.items():
                    m = _merge_monomials(q, rmono)
                    c = ring.scalars.add(
                        out.get(m, ring.scalars.zero), ring.scalars.mul(coeff, rc)
                    )
                    if c == ring.scalars.zero:
                        out.pop(m, None)
                    else:
                        out[m] = c
            terms = out
            if not changed:
                return terms
        raise RuntimeError("relation rewriting did not terminate")


def _merge_monomials(a, b):
    have = dict(a)
    for i, e in b:
        have[i] = have.get(i, 0) + e
    return tuple(sorted((i, e) for i, e in have.items() if e))


class GradedPolynomial:
    """An element of a ``PolynomialRing``.  Treat as immutable."""

    __slots__ = ("ring", "terms", "_hash")

    def __init__(self, ring, terms):
        self.ring = ring
        self.terms = terms
        self._hash = None

    # -- ring structure ---------------------------------------------------

    def _check(self, other):
        if self.ring is not other.ring:
            raise ValueError("elements of different rings")

    def __add__(self, other):
        self._check(other)
        sc = self.ring.scalars
        out = dict(self.terms)
        for m, c in other.terms.items():
            s = sc.add(out.get(m, sc.zero), c)
            if s == sc.zero:
                out.pop(m, None)
            else:
                out[m] = s
        return self.ring.make(out)

    def __sub__(self, other):
        return self + other.scale(self.ring.scalars.neg(self.ring.scalars.one))

    def __mul__(self, other):
        self._check(other)
        sc = self.ring.scalars
        out = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                m = _merge_monomials(m1, m2)
                s = sc.add(out.get(m, sc.zero), sc.mul(c1, c2))
                if s == sc.zero:
                    out.pop(m, None)
                else:
                    out[m] = s
        return self.ring.make(out)

    def __pow__(self, n):
        if n < 0:
            raise ValueError("negative power")
        acc = self.ring.one()
        base = self
        while n:
            if n & 1:
                acc = acc * base
            base = base * base
            n >>= 1
        return acc

    def scale(self, c):
        sc = self.ring.scalars
        c = sc.coerce(c)
        return self.ring.make({m: sc.mul(v, c) for m, v in self.terms.items()})

    def __eq__(self, other):
        return (
            isinstance(other, GradedPolynomial)
            and self.ring is other.ring
            and self.terms == other.terms
        )

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((id(self.ring), tuple(sorted(self.terms.items()))))
        return self._hash

    # -- grading ----------------------------------------------------------

    def is_zero(self):
        return not self.terms

    def is_homogeneous(self):
        degs = {self.ring.monomial_degree(m) for m in self.terms}
        return len(degs) <= 1

    def degree(self):
        """Degree of a homogeneous element (0 for the zero element)."""
        degs = {self.ring.monomial_degree(m) for m in self.terms}
        if not degs:
            return 0
        if len(degs) > 1:
            raise ValueError("not homogeneous: degrees %s" % sorted(degs))
        return degs.pop()

    def homogeneous_component(self, d):
        return self.ring.make(
            {m: c for m, c in self.terms.items() if self.ring.monomial_degree(m) == d}
        )

    def degrees_present(self):
        return sorted({self.ring.monomial_degree(m) for m in self.terms})

    # -- structure queries --------------------------------------------------

    def constant_term(self):
        return self.terms.get((), self.ring.scalars.zero)

    def indecomposable_part(self):
        """Image under projection to the span of single generators.

        Keeps terms that are a lone generator to the first power; constants
        and products (including proper powers) are decomposable and drop.
        """
        out = {m: c for m, c in self.terms.items() if len(m) == 1 and m[0][1] == 1}
        return self.ring.make(out)

    def is_integral(self):
        sc = self.ring.scalars
        return all(sc.is_integral(c) for c in self.terms.values())

    def assert_integral(self, what="value"):
        if not self.is_integral():
            raise ArithmeticError("%s left the integral lattice: %s" % (what, self))
        return self

    def inverse(self, max_steps=64):
        """Inverse of unit-scalar + nilpotent elements.

        Works whenever the non-constant part is nilpotent in the ring (for
        example modulo relations like a square-zero generator); raises if the
        geometric series fails to terminate.
        """
        sc = self.ring.scalars
        c = self.constant_term()
        if not sc.is_unit(c):
            raise ZeroDivisionError("constant term %r is not a unit" % (c,))
        cinv = sc.inv(c)
        n = (self - self.ring.scalar(c)).scale(sc.neg(cinv))
        acc = self.ring.one()
        p = self.ring.one()
        for _ in range(max_steps):
            p = p * n
            if p.is_zero():
                return acc.scale(cinv)
            acc = acc + p
        raise ArithmeticError("element is not unit + nilpotent: %s" % self)

    def map_generators(self, target_ring, images):
        """Ring map determined by generator images.

        ``images`` maps each generator name appearing in ``self`` to an
        element of ``target_ring``; scalars map along the identity.
        """
        out = target_ring.zero()
        for mono, coeff in self.terms.items():
            term = target_ring.scalar(coeff)
            for i, e in mono:
                name = self.ring.generators[i].name
                if name not in images:
                    raise KeyError("no image for generator %r" % name)
                term = term * images[name] ** e
            out = out + term
        return out

    # -- display ------------------------------------------------------------

    def _mono_sort_key(self, mono):
        vec = [0] * len(self.ring.generators)
        for i, e in mono:
            vec[i] = e
        return (self.ring.monomial_degree(mono), [-v for v in reversed(vec)])

    def _fmt_mono(self, mono):
        parts = []
        for i, e in mono:
            name = self.ring.generators[i].name
            parts.append(name if e == 1 else "%s^%d" % (name, e))
        return " ".join(parts)

    def __str__(self):
        if not self.terms:
            return "0"
        sc = self.ring.scalars
        chunks = []
        for mono in sorted(self.terms, key=self._mono_sort_key):
            c = self.terms[mono]
            body = self._fmt_mono(mono)
            negative = sc is QQ and c < 0
            mag = -c if negative else c
            if not body:
                text = sc.fmt(mag)
            elif mag == sc.one:
                text = body
            else:
                text = "%s %s" % (sc.fmt(mag), body)
            if not chunks:
                chunks.append("-" + text if negative else text)
            else:
                chunks.append(("- " if negative else "+ ") + text)
        return " ".join(chunks)

    def __repr__(self):
        return "<%s>" % self


def graded_inverse(p, bound):
    """Degreewise inverse of an element with unit constant term.

    Returns the list of homogeneous components ``inv[0..bound]`` of the
    inverse of ``p`` in the graded completion of its ring.
    """
    ring = p.ring
    sc = ring.scalars
    c0 = p.constant_term()
    if not sc.is_unit(c0):
        raise ZeroDivisionError("constant term is not a unit")
    c0inv = sc.inv(c0)
    comps = [p.homogeneous_component(d) for d in range(bound + 1)]
    inv = [ring.scalar(c0inv)]
    for d in range(1, bound + 1):
        acc = ring.zero()
        for i in range(1, d + 1):
            if not comps[i].is_zero():
                acc = acc + comps[i] * inv[d - i]
        inv.append(acc.scale(sc.neg(c0inv)))
    return inv
