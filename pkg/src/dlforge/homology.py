"""Concrete operation modules: the dual Steenrod algebra and H_*MU.

Both carry Dyer-Lashof actions given by closed formulas on generators
(Steinberger's generating function and case rule; Priddy's quotient of
generating functions) and extended to all polynomials by additivity, the
Cartan formula, and the square rule.  The two defining routes for the
dual Steenrod action overlap; ``self_check`` compares them and treats any
disagreement as a fatal implementation bug, not something to paper over.
"""

from __future__ import annotations

from functools import lru_cache

from .expressions import (
    GenRef,
    Power,
    Product,
    QOp,
    Sum,
    UnknownGeneratorError,
    parse_expression,
)
from .polynomial import (
    GF2,
    Generator,
    PolynomialRing,
    binomial_mod2,
    graded_inverse,
)
from .rewriting import DLPolynomial, adem_step

__all__ = [
    "DLModel",
    "DualSteenrodAlgebra",
    "MUHomology",
    "ModelInconsistencyError",
    "dual_steenrod",
    "mu_homology",
    "map_p",
    "check_dl_compatibility",
    "evaluate_in_model",
    "indeterminacy_scan",
    "indecomposable_dimension",
    "get_model",
]


class ModelInconsistencyError(RuntimeError):
    """Two defining routes for an action disagree (an implementation bug)."""


class DLModel:
    """A graded F2-algebra with a Dyer-Lashof action defined on generators.

    Subclasses provide ``generator_action(s, index)``; the extension to all
    elements is additivity over terms, the square rule on even monomials,
    and the Cartan formula peeling one generator at a time.  Values are
    memoized per (s, monomial); the tables are append-only and deterministic.
    """

    def __init__(self, name, ring, max_degree):
        self.name = name
        self.ring = ring
        self.max_degree = max_degree
        self._gen_cache = {}
        self._mono_cache = {}

    def generator_action(self, s, index):
        raise NotImplementedError

    def q(self, s, element):
        """Q^s extended to an arbitrary element."""
        if s < 0:
            raise ValueError("operations have non-negative superscripts")
        if not element.is_zero() and s + element.degree() > self.max_degree:
            raise ValueError(
                "Q%d lands beyond the model's degree cap %d" % (s, self.max_degree)
            )
        out = self.ring.zero()
        for mono in element.terms:
            out = out + self._q_mono(s, mono)
        return out

    def q_word(self, superscripts, element):
        """Iterated operation Q^{s_1} .. Q^{s_k} applied right-to-left."""
        for s in reversed(tuple(superscripts)):
            element = self.q(s, element)
        return element

    def _q_gen(self, s, index):
        key = (s, index)
        if key not in self._gen_cache:
            value = self.generator_action(s, index)
            if __debug__ and not value.is_zero():
                assert value.degrees_present() == [s + self.ring.degrees[index]]
            self._gen_cache[key] = value
        return self._gen_cache[key]

    def _q_mono(self, s, mono):
        key = (s, mono)
        cached = self._mono_cache.get(key)
        if cached is not None:
            return cached
        if not mono:
            result = self.ring.one() if s == 0 else self.ring.zero()
        elif len(mono) == 1 and mono[0][1] == 1:
            result = self._q_gen(s, mono[0][0])
        elif all(e % 2 == 0 for _, e in mono):
            if s % 2:
                result = self.ring.zero()
            else:
                half = tuple((i, e // 2) for i, e in mono)
                root = self._q_mono(s // 2, half)
                result = root * root
        else:
            i, e = mono[0]
            rest = tuple(m for m in ((i, e - 1),) + mono[1:] if m[1] > 0)
            dv = self.ring.monomial_degree(rest)
            result = self.ring.zero()
            for p in range(0, s - dv + 1):
                left = self._q_gen(p, i)
                if left.is_zero():
                    continue
                right = self._q_mono(s - p, rest)
                if not right.is_zero():
                    result = result + left * right
        if __debug__ and not result.is_zero():
            want = s + self.ring.monomial_degree(mono)
            assert result.degrees_present() == [want], "degree drift in %s" % self.name
        self._mono_cache[key] = result
        return result

    # -- basis enumeration and decomposability --------------------------------

    def monomials_of_degree(self, d):
        """All monomials of the given degree, as ring elements."""
        out = []

        def build(idx, remaining, acc):
            if remaining == 0:
                out.append(tuple(acc))
                return
            if idx >= len(self.ring.generators):
                return
            build(idx + 1, remaining, acc)
            gd = self.ring.degrees[idx]
            e = 1
            while gd * e <= remaining:
                acc.append((idx, e))
                build(idx + 1, remaining - gd * e, acc)
                acc.pop()
                e += 1

        build(0, d, [])
        return [self.ring.make({tuple(sorted(m)): 1}) for m in sorted(out)]

    def monomials_up_to(self, d):
        out = []
        for k in range(1, d + 1):
            out.extend(self.monomials_of_degree(k))
        return out

    def is_decomposable(self, element):
        return element.indecomposable_part().is_zero()

    # -- structural spot checks ------------------------------------------------

    def cartan_check(self, s, u, v):
        """Direct Q^s(uv) against the explicit Cartan convolution."""
        direct = self.q(s, u * v)
        total = self.ring.zero()
        for p in range(s + 1):
            total = total + self.q(p, u) * self.q(s - p, v)
        return direct == total

    def adem_check(self, r, s, element):
        """Direct Q^r Q^s against the Adem-expanded route (needs r > 2s)."""
        direct = self.q(r, self.q(s, element))
        expanded = self.ring.zero()
        for (top, inner), _bit in adem_step(r, s):
            expanded = expanded + self.q(top, self.q(inner, element))
        return direct == expanded

    def __repr__(self):
        return "<%s up to degree %d>" % (self.name, self.max_degree)


class DualSteenrodAlgebra(DLModel):
    """F2[xi_1, xi_2, ...] with |xi_i| = 2^i - 1 and Steinberger's action.

    Two defining routes coexist: the generating function
    1 + xi_1 + Q^1 xi_1 + Q^2 xi_1 + ... = (1 + xi_1 + xi_2 + ...)^{-1}
    pins every Q^s xi_1, and the case rule
    Q^s xibar_i = Q^{s + 2^i - 2} xi_1 for s = 0, -1 mod 2^i (else 0)
    pins the conjugates.  Actions on the xi_i themselves come from the
    conjugate rule plus the Milnor recursion for xibar_i.
    """

    def __init__(self, max_degree=40):
        count = 1
        while 2 ** (count + 1) - 1 <= max_degree:
            count += 1
        gens = [Generator("xi%d" % i, 2**i - 1) for i in range(1, count + 1)]
        super().__init__("dual-steenrod", PolynomialRing(GF2, gens), max_degree)
        self.top_index = count
        self._antipodes = {0: self.ring.one()}
        self._inverse = None

    def xi(self, i, exp=1):
        if i == 0:
            return self.ring.one()
        return self.ring.gen("xi%d" % i, exp)

    def antipode_xi(self, i):
        """The conjugate xibar_i from the Milnor recursion
        xibar_i = sum_{j<i} xi_{i-j}^{2^j} xibar_j, with xibar_0 = 1."""
        if i < 0:
            raise ValueError("conjugates are indexed from 0")
        if i not in self._antipodes:
            total = self.ring.zero()
            for j in range(i):
                total = total + self.xi(i - j, 2**j) * self.antipode_xi(j)
            self._antipodes[i] = total
        return self._antipodes[i]

    def _inverse_component(self, d):
        """Degree-d component of (1 + xi_1 + xi_2 + ...)^{-1}."""
        if self._inverse is None or len(self._inverse) <= d:
            total = self.ring.one()
            for i in range(1, self.top_index + 1):
                total = total + self.xi(i)
            self._inverse = graded_inverse(total, self.max_degree)
        return self._inverse[d]

    def q_xi1(self, s):
        """Q^s xi_1, read off the generating-function identity."""
        if s == 0:
            return self.ring.zero()
        return self._inverse_component(s + 1)

    def conjugate_action(self, s, i):
        """Q^s xibar_i by the case rule (s = 0 falls to instability)."""
        if i < 1:
            raise ValueError("the case rule starts at xibar_1")
        if s == 0:
            return self.ring.zero()
        block = 2**i
        if s % block in (0, block - 1):
            return self.q_xi1(s + block - 2)
        return self.ring.zero()

    def generator_action(self, s, index):
        i = index + 1
        if i == 1:
            return self.q_xi1(s)
        # xi_i = xibar_i + correction, with the correction in lower xi's.
        correction = self.antipode_xi(i) + self.xi(i)
        return self.conjugate_action(s, i) + self.q(s, correction)

    def q_conjugate(self, s, i):
        """Q^s xibar_i via the full Cartan route (for cross-checking)."""
        return self.q(s, self.antipode_xi(i))

    def self_check(self, strict=True):
        """Cross-check every pair of defining routes that overlap.

        Returns (checked, failures); with ``strict`` a failure raises
        ModelInconsistencyError immediately.
        """
        failures = []
        checked = []

        def record(label, ok, detail=""):
            checked.append(label)
            if not ok:
                failures.append((label, detail))
                if strict:
                    raise ModelInconsistencyError("%s: %s" % (label, detail))

        for i in range(1, self.top_index + 1):
            residual = self.ring.zero()
            for j in range(i + 1):
                residual = residual + self.xi(i - j, 2**j) * self.antipode_xi(j)
            record("milnor-recursion-%d" % i, residual.is_zero(), str(residual))
        for i in range(1, self.top_index + 1):
            record(
                "inverse-matches-conjugate-%d" % i,
                self._inverse_component(2**i - 1) == self.antipode_xi(i),
                "degree %d" % (2**i - 1),
            )
        for i in range(1, self.top_index):
            target = 2 ** (i + 1)
            if 2**i + (2 ** (i + 1) - 1) - 1 > self.max_degree:
                continue
            record(
                "conjugate-ladder-%d" % i,
                self.conjugate_action(2**i, i) == self.antipode_xi(i + 1),
                "Q^{2^%d} xibar_%d" % (i, i),
            )
        for i in range(1, self.top_index + 1):
            d = 2**i - 1
            if 2 * d > self.max_degree:
                continue
            bar = self.antipode_xi(i)
            record(
                "conjugate-square-%d" % i,
                self.conjugate_action(d, i) == bar * bar,
                "Q^%d xibar_%d" % (d, i),
            )
        for i in range(1, min(3, self.top_index) + 1):
            for s in range(0, min(12, self.max_degree - (2**i - 1))):
                case = self.conjugate_action(s, i)
                cartan = self.q_conjugate(s, i)
                record(
                    "case-vs-cartan-%d-%d" % (i, s),
                    case == cartan,
                    "Q^%d xibar_%d: %s vs %s" % (s, i, case, cartan),
                )
        return checked, failures


class MUHomology(DLModel):
    """F2[b_1, b_2, ...] with |b_k| = 2k and the Priddy action.

    Q^j b_k is the degree-(2k + j) component of
    (sum_{n>=k} sum_{u=0}^{k} binom(n-k+u-1, u) b_{n+u} b_{k-u}) (sum b_n)^{-1}
    with b_0 = 1; the u = 0 binomial is 1 by convention (it has top n-k-1,
    which is -1 when n = k).  Odd-degree components vanish identically, so
    every odd operation on the even algebra is zero.
    """

    def __init__(self, max_degree=40):
        count = max_degree // 2
        gens = [Generator("b%d" % k, 2 * k) for k in range(1, count + 1)]
        super().__init__("h-mu", PolynomialRing(GF2, gens), max_degree)
        self.top_index = count
        self._den_inverse = None

    def b(self, k, exp=1):
        if k == 0:
            return self.ring.one()
        return self.ring.gen("b%d" % k, exp)

    def _denominator_inverse(self, d):
        if self._den_inverse is None:
            total = self.ring.one()
            for k in range(1, self.top_index + 1):
                total = total + self.b(k)
            self._den_inverse = graded_inverse(total, self.max_degree)
        return self._den_inverse[d]

    @staticmethod
    def _priddy_binom(n, k, u):
        if u == 0:
            return 1
        return binomial_mod2(n - k + u - 1, u)

    def _numerator(self, k, degree_bound):
        total = self.ring.zero()
        for n in range(k, degree_bound // 2 - k + 1):
            for u in range(0, k + 1):
                if self._priddy_binom(n, k, u):
                    total = total + self.b(n + u) * self.b(k - u)
        return total

    def generator_action(self, j, index):
        k = index + 1
        d = 2 * k + j
        if d > self.max_degree:
            raise ValueError("Q%d b%d lands beyond the degree cap" % (j, k))
        numerator = self._numerator(k, d)
        out = self.ring.zero()
        for low in numerator.degrees_present():
            if low > d:
                continue
            out = out + numerator.homogeneous_component(low) * self._denominator_inverse(d - low)
        value = out.homogeneous_component(d) if not out.is_zero() else out
        if d % 2 == 1 and not value.is_zero():
            raise ModelInconsistencyError(
                "odd-degree operation Q%d b%d is nonzero: %s" % (j, k, value)
            )
        return value


@lru_cache(maxsize=None)
def dual_steenrod(max_degree=40):
    return DualSteenrodAlgebra(max_degree)


@lru_cache(maxsize=None)
def mu_homology(max_degree=40):
    return MUHomology(max_degree)


def get_model(name, max_degree=40):
    if name == "dual-steenrod":
        return dual_steenrod(max_degree)
    if name == "h-mu":
        return mu_homology(max_degree)
    raise KeyError("unknown model %r" % name)


def map_p(element, source=None, target=None):
    """The ring map sending b_{2^m - 1} to xi_m^2 and other b_k to zero."""
    source = source or mu_homology()
    target = target or dual_steenrod()
    images = {}
    for k in range(1, source.top_index + 1):
        if (k + 1) & k == 0:  # k + 1 is a power of two
            m = (k + 1).bit_length() - 1
            if 2 * (2**m - 1) <= target.max_degree:
                images["b%d" % k] = target.xi(m, 2)
            else:
                images["b%d" % k] = target.ring.zero()
        else:
            images["b%d" % k] = target.ring.zero()
    return element.map_generators(target.ring, images)


def check_dl_compatibility(s_range, degree_range, source=None, target=None):
    """Does map_p commute with every Q^s over the given ranges?

    Returns (ok, failures) with failing triples (s, monomial, lhs, rhs).
    """
    source = source or mu_homology()
    target = target or dual_steenrod()
    failures = []
    for u in source.monomials_up_to(degree_range):
        for s in range(0, s_range + 1):
            lhs = map_p(source.q(s, u), source, target)
            rhs = target.q(s, map_p(u, source, target))
            if lhs != rhs:
                failures.append((s, u, lhs, rhs))
    return not failures, failures


def evaluate_in_model(expr, assignment, model, context=None):
    """Evaluate an operation expression in a model under an assignment.

    ``assignment`` maps generator names to model elements; degrees are
    validated against ``context`` when one is supplied.
    """
    if isinstance(expr, DLPolynomial):
        if context is None:
            context = expr.context
        expr = expr.to_expression()
        if expr is None:
            return model.ring.zero()
    if isinstance(expr, str):
        expr = parse_expression(expr, context)
    if context is not None:
        for name, value in assignment.items():
            if value.is_zero():
                continue
            want = context.degree(name)
            if value.degrees_present() != [want]:
                raise ValueError(
                    "assignment for %r has degrees %s, expected %d"
                    % (name, value.degrees_present(), want)
                )

    def walk(node):
        if isinstance(node, GenRef):
            try:
                return assignment[node.name]
            except KeyError:
                raise UnknownGeneratorError(node.name) from None
        if isinstance(node, QOp):
            return model.q(node.s, walk(node.arg))
        if isinstance(node, Power):
            return walk(node.base) ** node.exp
        if isinstance(node, Product):
            out = model.ring.one()
            for f in node.factors:
                out = out * walk(f)
            return out
        if isinstance(node, Sum):
            out = model.ring.zero()
            for t in node.terms:
                out = out + walk(t)
            return out
        raise TypeError("not an expression node: %r" % (node,))

    return walk(expr)


def indecomposable_dimension(model, degree):
    """Dimension of the indecomposable quotient in one degree (free case:
    the number of polynomial generators living there)."""
    return sum(1 for g in model.ring.generators if g.degree == degree)


def indeterminacy_scan(suspended_map, model, base_assignment, generator_name=None):
    """Feed every model basis class through each term of a suspended image.

    For each image term (one module generator each, by construction) and
    each monomial basis element of the model in that generator's degree,
    evaluates the term and records whether the value is decomposable.
    Returns a dict with per-term rows and the overall verdict.
    """
    from .substitutions import _flatten_terms, _module_count
    from .expressions import format_expression

    source = suspended_map.source
    targets = suspended_map.target
    if generator_name is None:
        module_gens = [g for g in source.order if not source.is_base(g)]
        if len(module_gens) != 1:
            raise ValueError("scan needs a single module source generator")
        generator_name = module_gens[0]
    image = suspended_map.image(generator_name)
    rows = []
    all_ok = True
    if image is not None:
        for term in _flatten_terms(image):
            if _module_count(term, targets) != 1:
                raise ValueError("suspended term with module count != 1")
            slot = _single_module_ref(term, targets)
            degree = targets.degree(slot)
            basis = model.monomials_of_degree(degree)
            bad = []
            for element in basis:
                value = evaluate_in_model(
                    term, dict(base_assignment, **{slot: element}), model
                )
                if not model.is_decomposable(value):
                    bad.append((element, value))
            ok = not bad
            all_ok = all_ok and ok
            rows.append(
                {
                    "term": format_expression(term),
                    "source_degree": degree,
                    "basis_size": len(basis),
                    "decomposable": ok,
                    "witness": "" if ok else "%s -> %s" % bad[0],
                }
            )
    return {
        "generator": generator_name,
        "terms": rows,
        "all_decomposable": all_ok,
        "closure_note": (
            "operations, sums, products, and scalar multiples preserve"
            " decomposables, so checking the listed generators suffices"
        ),
    }


def _single_module_ref(node, context):
    if isinstance(node, GenRef):
        return None if context.is_base(node.name) else node.name
    if isinstance(node, QOp):
        return _single_module_ref(node.arg, context)
    if isinstance(node, Power):
        return _single_module_ref(node.base, context)
    if isinstance(node, Product):
        for f in node.factors:
            found = _single_module_ref(f, context)
            if found is not None:
                return found
        return None
    raise TypeError("unexpected node in a flattened term: %r" % (node,))
