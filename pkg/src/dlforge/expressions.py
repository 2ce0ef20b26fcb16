"""Operation expressions: grammar, AST, and canonical printing.

The surface syntax::

    expr   := term ('+' term)*
    term   := factor+                 (juxtaposition is multiplication)
    factor := primary ('^' INT)?
    primary:= NAME | 'Q' INT factor | '(' expr ')'

``Q`` immediately followed by digits is an operation token, so generator
names must not match ``Q[0-9]+``.  Generators are declared in a context,
one per line::

    gen x deg 2
    gen z30 deg 30
    base x deg 2        # alternative spelling marking a scalar generator

A ``base`` generator is a scalar from the ground algebra: substitution maps
fix it and suspension neither shifts nor kills it.
"""

from __future__ import annotations

from dataclasses import dataclass

__all__ = [
    "ExpressionSyntaxError",
    "UnknownGeneratorError",
    "DegreeMismatchError",
    "GeneratorContext",
    "GenRef",
    "QOp",
    "Product",
    "Power",
    "Sum",
    "parse_expression",
    "parse_context",
    "expression_degrees",
    "min_en_level",
    "en_level_witness",
]


class ExpressionSyntaxError(ValueError):
    def __init__(self, message, position):
        super().__init__("%s (at position %d)" % (message, position))
        self.position = position


class UnknownGeneratorError(KeyError):
    pass


class DegreeMismatchError(ValueError):
    pass


class GeneratorContext:
    """Declared generators with degrees, plus the rewriting caches.

    ``base`` names the scalar generators (elements of the ground algebra
    that maps and suspension leave alone); everything else is a module
    generator.
    """

    def __init__(self, generators, base=()):
        self.degrees = {}
        self.order = []
        for name, deg in generators:
            if name in self.degrees:
                raise ValueError("duplicate generator %r" % name)
            _check_gen_name(name)
            self.degrees[name] = deg
            self.order.append(name)
        self.base = frozenset(base)
        for b in self.base:
            if b not in self.degrees:
                raise ValueError("base generator %r is not declared" % b)
        self._word_cache = {}
        self._mono_cache = {}
        self.caching = True

    def degree(self, name):
        try:
            return self.degrees[name]
        except KeyError:
            raise UnknownGeneratorError(name) from None

    def is_base(self, name):
        return name in self.base

    def clear_caches(self):
        self._word_cache.clear()
        self._mono_cache.clear()

    def names(self):
        return tuple(self.order)

    def fingerprint(self):
        """Content identity: two contexts with equal fingerprints are
        interchangeable (same names, degrees, and base markings)."""
        return tuple(
            (n, self.degrees[n], n in self.base) for n in sorted(self.order)
        )

    def __repr__(self):
        decls = ", ".join(
            "%s:%d%s" % (n, self.degrees[n], "*" if n in self.base else "")
            for n in self.order
        )
        return "GeneratorContext(%s)" % decls


def _check_gen_name(name):
    if not name or not name[0].isalpha():
        raise ValueError("bad generator name %r" % name)
    if not all(c.isalnum() or c in "_'" for c in name[1:]):
        raise ValueError("bad generator name %r" % name)
    if name[0] == "Q" and len(name) > 1 and name[1:].isdigit():
        raise ValueError("generator name %r collides with the operation syntax" % name)


# -- AST ------------------------------------------------------------------


@dataclass(frozen=True)
class GenRef:
    name: str


@dataclass(frozen=True)
class QOp:
    s: int
    arg: "Node"


@dataclass(frozen=True)
class Product:
    factors: tuple


@dataclass(frozen=True)
class Power:
    base: "Node"
    exp: int


@dataclass(frozen=True)
class Sum:
    terms: tuple


def q(s, arg):
    return QOp(s, arg)


def gen(name):
    return GenRef(name)


def prod(*factors):
    flat = []
    for f in factors:
        if isinstance(f, Product):
            flat.extend(f.factors)
        else:
            flat.append(f)
    if len(flat) == 1:
        return flat[0]
    return Product(tuple(flat))


def add(*terms):
    flat = []
    for t in terms:
        if isinstance(t, Sum):
            flat.extend(t.terms)
        else:
            flat.append(t)
    if len(flat) == 1:
        return flat[0]
    return Sum(tuple(flat))


def power(base, exp):
    if exp == 1:
        return base
    return Power(base, exp)


# -- lexer / parser ---------------------------------------------------------


def _tokenize(text):
    tokens = []
    i, n = 0, len(text)
    while i < n:
        c = text[i]
        if c.isspace():
            i += 1
            continue
        if c in "+^()":
            tokens.append((c, c, i))
            i += 1
            continue
        if c.isdigit():
            j = i
            while j < n and text[j].isdigit():
                j += 1
            tokens.append(("INT", int(text[i:j]), i))
            i = j
            continue
        if c == "Q" and i + 1 < n and text[i + 1].isdigit():
            j = i + 1
            while j < n and text[j].isdigit():
                j += 1
            tokens.append(("Q", int(text[i + 1 : j]), i))
            i = j
            continue
        if c.isalpha():
            j = i
            while j < n and (text[j].isalnum() or text[j] in "_'"):
                j += 1
            tokens.append(("NAME", text[i:j], i))
            i = j
            continue
        raise ExpressionSyntaxError("unexpected character %r" % c, i)
    tokens.append(("EOF", None, n))
    return tokens


class _Parser:
    def __init__(self, tokens, context):
        self.tokens = tokens
        self.pos = 0
        self.context = context

    def peek(self):
        return self.tokens[self.pos]

    def take(self, kind=None):
        tok = self.tokens[self.pos]
        if kind is not None and tok[0] != kind:
            raise ExpressionSyntaxError("expected %s, found %r" % (kind, tok[1]), tok[2])
        self.pos += 1
        return tok

    def parse_expr(self):
        terms = [self.parse_term()]
        while self.peek()[0] == "+":
            self.take("+")
            terms.append(self.parse_term())
        return add(*terms)

    def parse_term(self):
        factors = [self.parse_factor()]
        while self.peek()[0] in ("NAME", "Q", "("):
            factors.append(self.parse_factor())
        return prod(*factors)

    def parse_factor(self):
        node = self.parse_primary()
        if self.peek()[0] == "^":
            self.take("^")
            tok = self.take("INT")
            if tok[1] < 1:
                raise ExpressionSyntaxError("powers must be positive", tok[2])
            node = power(node, tok[1])
        return node

    def parse_primary(self):
        kind, value, pos = self.peek()
        if kind == "NAME":
            self.take()
            if self.context is not None and value not in self.context.degrees:
                raise UnknownGeneratorError(value)
            return GenRef(value)
        if kind == "Q":
            self.take()
            return QOp(value, self.parse_factor())
        if kind == "(":
            self.take()
            node = self.parse_expr()
            self.take(")")
            return node
        raise ExpressionSyntaxError("expected a generator, Q-operation or '('", pos)


def parse_expression(text, context=None):
    """Parse ``text`` into an AST, resolving names against ``context``."""
    parser = _Parser(_tokenize(text), context)
    node = parser.parse_expr()
    parser.take("EOF")
    return node


def parse_context(text):
    """Parse generator declarations (``gen``/``base`` lines) into a context."""
    gens = []
    base = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        if len(parts) != 4 or parts[0] not in ("gen", "base") or parts[2] != "deg":
            raise ValueError("line %d: expected 'gen NAME deg INT', got %r" % (lineno, raw))
        try:
            deg = int(parts[3])
        except ValueError:
            raise ValueError("line %d: bad degree %r" % (lineno, parts[3])) from None
        gens.append((parts[1], deg))
        if parts[0] == "base":
            base.append(parts[1])
    return GeneratorContext(gens, base=base)


# -- printing -----------------------------------------------------------------


def format_expression(node):
    """Canonical textual form; parses back to an equal AST."""
    return _fmt(node, 0)


# precedence levels: 0 sum, 1 product, 2 factor (powers and operation
# applications), 3 primary.  An operation application is itself a factor,
# so chains like Q12 Q8 x print flat; only a power forces parentheses
# around its base.
def _fmt(node, level):
    if isinstance(node, GenRef):
        return node.name
    if isinstance(node, QOp):
        text = "Q%d %s" % (node.s, _fmt(node.arg, 2))
        return "(%s)" % text if level >= 3 else text
    if isinstance(node, Power):
        text = "%s^%d" % (_fmt(node.base, 3), node.exp)
        return "(%s)" % text if level >= 3 else text
    if isinstance(node, Product):
        text = " ".join(_fmt(f, 2) for f in node.factors)
        return "(%s)" % text if level >= 2 else text
    if isinstance(node, Sum):
        text = " + ".join(_fmt(t, 1) for t in node.terms)
        return "(%s)" % text if level >= 1 else text
    raise TypeError("not an expression node: %r" % (node,))


# -- degree and E_n bookkeeping -----------------------------------------------


def expression_degrees(node, context):
    """Set of degrees of the homogeneous components of ``node``."""
    if isinstance(node, GenRef):
        return {context.degree(node.name)}
    if isinstance(node, QOp):
        return {node.s + d for d in expression_degrees(node.arg, context)}
    if isinstance(node, Power):
        return {node.exp * d for d in expression_degrees(node.base, context)}
    if isinstance(node, Product):
        degs = {0}
        for f in node.factors:
            degs = {a + b for a in degs for b in expression_degrees(f, context)}
        return degs
    if isinstance(node, Sum):
        out = set()
        for t in node.terms:
            out |= expression_degrees(t, context)
        return out
    raise TypeError("not an expression node: %r" % (node,))


def homogeneous_degree(node, context):
    degs = expression_degrees(node, context)
    if len(degs) != 1:
        raise DegreeMismatchError("expression is not homogeneous: degrees %s" % sorted(degs))
    return degs.pop()


def _en_scan(node, context):
    """Yield (r, argument degree) for every operation node."""
    if isinstance(node, QOp):
        for d in expression_degrees(node.arg, context):
            yield (node.s, d)
        yield from _en_scan(node.arg, context)
    elif isinstance(node, Power):
        yield from _en_scan(node.base, context)
    elif isinstance(node, (Product, Sum)):
        for child in node.factors if isinstance(node, Product) else node.terms:
            yield from _en_scan(child, context)


def min_en_level(node, context):
    """Least n so that every operation taken lives in an E_n-algebra.

    Applying Q^r to a class of degree s needs n >= r - s + 2.  The answer is
    the maximum of that bound over all operation nodes (1 if there are none).
    """
    best = 1
    for r, d in _en_scan(node, context):
        best = max(best, r - d + 2)
    return best


def en_level_witness(node, context):
    """The (r, argument degree) pair realizing min_en_level, or None."""
    best = None
    for r, d in _en_scan(node, context):
        if best is None or r - d + 2 > best[0] - best[1] + 2:
            best = (r, d)
    return best
