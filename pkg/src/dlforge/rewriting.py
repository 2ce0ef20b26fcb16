"""Normalization of operation expressions in free unstable algebras.

Classes live in the free graded-commutative algebra, over the field with
two elements, on admissible operation words.  A word Q^{s_1}..Q^{s_k} g is
kept as a basis symbol when consecutive entries satisfy s_i <= 2 s_{i+1}
and the excess s_1 - (s_2 + .. + s_k) exceeds |g| (for admissible words the
per-level slack only grows downward, so strictness at the top gives
strictness everywhere).  Everything else rewrites:

  * additivity        Q^s (a + b)  ->  Q^s a + Q^s b
  * instability       Q^s a = 0 for s < |a|,   Q^s a = a^2 for s = |a|
  * Cartan            Q^s (a b)    ->  sum Q^p a Q^q b over p + q = s
  * Adem, for r > 2s  Q^r Q^s      ->  sum binom(i-s-1, 2i-r) Q^{r+s-i} Q^i

Polynomials are frozensets of monomials (coefficients are bits); a monomial
is a sorted tuple of (word, exponent) pairs and a word is (superscripts,
generator name).
"""

from __future__ import annotations

from .expressions import (
    GenRef,
    Power,
    Product,
    QOp,
    Sum,
    format_expression,
    homogeneous_degree,
    parse_expression,
)
from .polynomial import binomial_mod2

__all__ = [
    "DLPolynomial",
    "RewriteBudgetExceeded",
    "adem_step",
    "normalize",
    "normalize_word",
    "is_admissible",
    "verify_identity",
]

# Watchdog: upper bound on Adem rewrites inside one top-level normalization.
STEP_BUDGET = 1_000_000


class RewriteBudgetExceeded(RuntimeError):
    pass


def is_admissible(superscripts):
    """Pairwise admissibility s_i <= 2 s_{i+1} of a superscript sequence."""
    return all(a <= 2 * b for a, b in zip(superscripts, superscripts[1:]))


def adem_step(r, s, degree_context=None):
    """Expansion of Q^r Q^s for r > 2s as [(superscript pair, bit), ...].

    The window is ceil(r/2) <= i <= r - s - 1; each surviving i contributes
    Q^{r+s-i} Q^i with coefficient binom(i-s-1, 2i-r) mod 2.  When a degree
    is supplied, pairs whose inner entry vanishes on every class of that
    degree (i < degree) are dropped.
    """
    if r <= 2 * s:
        raise ValueError("Q%d Q%d is already admissible" % (r, s))
    out = []
    for i in range((r + 1) // 2, r - s):
        bit = binomial_mod2(i - s - 1, 2 * i - r)
        if not bit:
            continue
        if degree_context is not None and i < degree_context:
            continue
        out.append(((r + s - i, i), 1))
    return out


class _Engine:
    """Normalization engine bound to one generator context."""

    def __init__(self, context):
        self.ctx = context
        self.steps = 0

    # -- degrees -------------------------------------------------------------

    def word_degree(self, word):
        ops, g = word
        return self.ctx.degree(g) + sum(ops)

    def mono_degree(self, mono):
        return sum(self.word_degree(w) * e for w, e in mono)

    # -- polynomial helpers (frozensets of monomials) --------------------------

    @staticmethod
    def add(p, q):
        return p ^ q

    @staticmethod
    def mul_mono(m1, m2):
        have = dict(m1)
        for w, e in m2:
            have[w] = have.get(w, 0) + e
        return tuple(sorted(have.items()))

    def mul(self, p, q):
        out = set()
        for m1 in p:
            for m2 in q:
                out ^= {self.mul_mono(m1, m2)}
        return frozenset(out)

    @staticmethod
    def square(p):
        # Frobenius in characteristic two: square each monomial.
        return frozenset(tuple((w, 2 * e) for w, e in m) for m in p)

    # -- the operation --------------------------------------------------------

    def apply_poly(self, s, p):
        out = set()
        for m in p:
            out ^= self.apply_mono(s, m)
        return frozenset(out)

    def apply_mono(self, s, mono):
        if not mono:
            return _ONE if s == 0 else _ZERO
        cache = self.ctx._mono_cache if self.ctx.caching else None
        key = (s, mono)
        if cache is not None and key in cache:
            return cache[key]
        if len(mono) == 1 and mono[0][1] == 1:
            result = self.apply_word(s, mono[0][0])
        elif all(e % 2 == 0 for _, e in mono):
            if s % 2:
                result = _ZERO
            else:
                half = tuple((w, e // 2) for w, e in mono)
                result = self.square(self.apply_mono(s // 2, half))
        else:
            w, e = mono[0]
            u = ((w, 1),)
            rest = tuple(m for m in ((w, e - 1),) + mono[1:] if m[1] > 0)
            du, dv = self.word_degree(w), self.mono_degree(rest)
            acc = set()
            for i in range(du, s - dv + 1):
                left = self.apply_mono(i, u)
                if not left:
                    continue
                right = self.apply_mono(s - i, rest)
                if right:
                    acc ^= self.mul(left, right)
            result = frozenset(acc)
        if __debug__ and result:
            d = s + self.mono_degree(mono)
            assert all(self.mono_degree(m) == d for m in result), "degree drift"
        if cache is not None:
            cache[key] = result
        return result

    def apply_word(self, s, word):
        cache = self.ctx._word_cache if self.ctx.caching else None
        key = (s, word)
        if cache is not None and key in cache:
            return cache[key]
        d = self.word_degree(word)
        if s < d:
            result = _ZERO
        elif s == d:
            result = frozenset({((word, 2),)})
        else:
            ops, g = word
            if not ops or s <= 2 * ops[0]:
                result = frozenset({((((s,) + ops, g), 1),)})
            else:
                self.steps += 1
                if self.steps > STEP_BUDGET:
                    raise RewriteBudgetExceeded("rewrite budget exhausted")
                rest = (ops[1:], g)
                acc = set()
                for (top, inner), _bit in adem_step(s, ops[0]):
                    lower = self.apply_word(inner, rest)
                    if lower:
                        acc ^= self.apply_poly(top, lower)
                result = frozenset(acc)
        if cache is not None:
            cache[key] = result
        return result

    # -- expression evaluation ---------------------------------------------------

    def evaluate(self, node):
        if isinstance(node, GenRef):
            self.ctx.degree(node.name)  # raises on unknown names
            return frozenset({((((), node.name), 1),)})
        if isinstance(node, Sum):
            out = set()
            for t in node.terms:
                out ^= self.evaluate(t)
            return frozenset(out)
        if isinstance(node, Product):
            out = _ONE
            for f in node.factors:
                out = self.mul(out, self.evaluate(f))
            return out
        if isinstance(node, Power):
            base = self.evaluate(node.base)
            out = _ONE
            n = node.exp
            while n:
                if n & 1:
                    out = self.mul(out, base)
                base = self.square(base)  # Frobenius: (a+b)^2 = a^2 + b^2
                n >>= 1
            return out
        if isinstance(node, QOp):
            return self.apply_poly(node.s, self.evaluate(node.arg))
        raise TypeError("not an expression node: %r" % (node,))


_ZERO = frozenset()
_ONE = frozenset({()})


class DLPolynomial:
    """A normalized polynomial in admissible words, over the two-element field."""

    __slots__ = ("context", "monomials")

    def __init__(self, context, monomials):
        self.context = context
        self.monomials = frozenset(monomials)

    def __eq__(self, other):
        return (
            isinstance(other, DLPolynomial)
            and (
                self.context is other.context
                or self.context.fingerprint() == other.context.fingerprint()
            )
            and self.monomials == other.monomials
        )

    def __hash__(self):
        return hash(self.monomials)

    def __add__(self, other):
        self._check(other)
        return DLPolynomial(self.context, self.monomials ^ other.monomials)

    def __mul__(self, other):
        self._check(other)
        eng = _Engine(self.context)
        acc = set()
        for m in self.monomials:
            for n in other.monomials:
                acc ^= {eng.mul_mono(m, n)}
        return DLPolynomial(self.context, acc)

    def _check(self, other):
        if (
            self.context is not other.context
            and self.context.fingerprint() != other.context.fingerprint()
        ):
            raise ValueError("polynomials over different contexts")

    def is_zero(self):
        return not self.monomials

    def degrees(self):
        eng = _Engine(self.context)
        return sorted({eng.mono_degree(m) for m in self.monomials})

    def term_count(self):
        return len(self.monomials)

    # -- canonical form ------------------------------------------------------

    @staticmethod
    def _word_key(word):
        ops, g = word
        return (sum(ops), ops, g)

    def _mono_key(self, mono):
        eng = _Engine(self.context)
        return (
            eng.mono_degree(mono),
            tuple(sorted((self._word_key(w), e) for w, e in mono)),
        )

    def sorted_monomials(self):
        return sorted(self.monomials, key=self._mono_key)

    def to_expression(self):
        """Rebuild a canonical AST (None stands for the zero polynomial)."""
        if not self.monomials:
            return None
        terms = []
        for mono in self.sorted_monomials():
            factors = []
            for word, e in sorted(mono, key=lambda we: (self._word_key(we[0]), we[1])):
                ops, g = word
                node = GenRef(g)
                for s in reversed(ops):
                    node = QOp(s, node)
                if e > 1:
                    node = Power(node, e)
                factors.append(node)
            terms.append(factors[0] if len(factors) == 1 else Product(tuple(factors)))
        return terms[0] if len(terms) == 1 else Sum(tuple(terms))

    def __str__(self):
        node = self.to_expression()
        return "0" if node is None else format_expression(node)

    def __repr__(self):
        return "<DL %s>" % self


def normalize(expr, context):
    """Normal form of an expression (or source text) over ``context``."""
    if isinstance(expr, str):
        expr = parse_expression(expr, context)
    eng = _Engine(context)
    return DLPolynomial(context, eng.evaluate(expr))


def normalize_word(superscripts, generator, context, strategy="bottom-up"):
    """Normalize Q^{s_1} .. Q^{s_k} applied to a generator.

    ``bottom-up`` resolves instability and inadmissibility from the inner
    end outward (the canonical route).  ``top-down`` first rewrites the bare
    superscript sequence with Adem steps, always picking the leftmost
    inadmissible pair, and only then evaluates each admissible sequence;
    ``rightmost`` does the same but always picks the rightmost pair.
    Confluence of the calculus means all three answers agree.
    """
    superscripts = tuple(superscripts)
    eng = _Engine(context)
    if strategy == "bottom-up":
        poly = eng.evaluate(GenRef(generator))
        for s in reversed(superscripts):
            poly = eng.apply_poly(s, poly)
        return DLPolynomial(context, poly)
    if strategy not in ("top-down", "rightmost"):
        raise ValueError("unknown strategy %r" % strategy)
    scan = range if strategy == "top-down" else (lambda n: reversed(range(n)))
    pending = {superscripts}
    admissible = set()
    steps = 0
    while pending:
        seq = pending.pop()
        spot = next(
            (i for i in scan(len(seq) - 1) if seq[i] > 2 * seq[i + 1]),
            None,
        )
        if spot is None:
            admissible ^= {seq}
            continue
        steps += 1
        if steps > STEP_BUDGET:
            raise RewriteBudgetExceeded("rewrite budget exhausted")
        for (top, inner), _bit in adem_step(seq[spot], seq[spot + 1]):
            new = seq[:spot] + (top, inner) + seq[spot + 2 :]
            pending ^= {new}
    out = _ZERO
    for seq in admissible:
        poly = eng.evaluate(GenRef(generator))
        for s in reversed(seq):
            poly = eng.apply_poly(s, poly)
        out = out ^ poly
    return DLPolynomial(context, out)


def _coerce_side(value, context):
    if value is None or value == "0":
        return None
    if isinstance(value, str):
        return parse_expression(value, context)
    return value


def verify_identity(lhs, rhs, context):
    """Check lhs = rhs in the free algebra.

    Returns (holds, witness) where the witness is the normalized difference.
    Both sides must be homogeneous of the same degree; ``None`` or ``"0"``
    stands for the zero class (any degree).
    """
    lhs = _coerce_side(lhs, context)
    rhs = _coerce_side(rhs, context)
    degs = []
    for side in (lhs, rhs):
        if side is not None:
            degs.append(homogeneous_degree(side, context))
    if len(degs) == 2 and degs[0] != degs[1]:
        from .expressions import DegreeMismatchError

        raise DegreeMismatchError("sides have degrees %d and %d" % (degs[0], degs[1]))
    zero = DLPolynomial(context, frozenset())
    left = normalize(lhs, context) if lhs is not None else zero
    right = normalize(rhs, context) if rhs is not None else zero
    diff = left + right
    return diff.is_zero(), diff
