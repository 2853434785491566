"""
Exact arithmetic in free *-algebras over Z[q, q^-1]: tensor powers,
substitution homomorphisms and a bounded rewriting engine
"""

import os
import logging
from dataclasses import dataclass, replace
from enum import Enum
from types import MappingProxyType
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

logger = logging.getLogger(__name__)

DEFAULT_STEP_LIMIT = int(os.getenv("QTOWER_STEP_LIMIT", "1000000"))


class DegreeMismatchError(ValueError):
    pass


class UnassignedGeneratorError(KeyError):
    pass


class RuleOrientationError(ValueError):
    pass


class LaurentInt:
    """
    Integer Laurent polynomial in a formal variable q, stored as sorted
    (exponent, coefficient) pairs without zero coefficients
    """

    __slots__ = ("_coeffs",)

    def __init__(self, coeffs=None):
        if coeffs is None:
            coeffs = {}
        elif isinstance(coeffs, int):
            coeffs = {0: coeffs}
        self._coeffs = tuple(
            sorted((int(e), int(c)) for e, c in coeffs.items() if c != 0)
        )

    @classmethod
    def q(cls, k=1):
        return cls({k: 1})

    @property
    def coeffs(self):
        return dict(self._coeffs)

    def __bool__(self):
        return bool(self._coeffs)

    def __eq__(self, other):
        other = _as_laurent(other)
        if other is None:
            return NotImplemented
        return self._coeffs == other._coeffs

    def __hash__(self):
        return hash(self._coeffs)

    def __add__(self, other):
        other = _as_laurent(other)
        if other is None:
            return NotImplemented
        res = dict(self._coeffs)
        for e, c in other._coeffs:
            res[e] = res.get(e, 0) + c
        return LaurentInt(res)

    __radd__ = __add__

    def __neg__(self):
        return LaurentInt({e: -c for e, c in self._coeffs})

    def __sub__(self, other):
        other = _as_laurent(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = _as_laurent(other)
        if other is None:
            return NotImplemented
        res = {}
        for e1, c1 in self._coeffs:
            for e2, c2 in other._coeffs:
                res[e1 + e2] = res.get(e1 + e2, 0) + c1 * c2
        return LaurentInt(res)

    __rmul__ = __mul__

    def __pow__(self, k):
        if k < 0:
            return self.inverse() ** (-k)
        res = LaurentInt(1)
        for _ in range(k):
            res = res * self
        return res

    def is_unit(self):
        return len(self._coeffs) == 1 and abs(self._coeffs[0][1]) == 1

    def is_constant(self):
        return all(e == 0 for e, _ in self._coeffs)

    def inverse(self):
        if not self.is_unit():
            raise ValueError("%s is not a unit of Z[q, q^-1]" % self)
        ((e, c),) = self._coeffs
        return LaurentInt({-e: c})

    def __str__(self):
        if not self._coeffs:
            return "0"
        parts = []
        for e, c in reversed(self._coeffs):
            if e == 0:
                body = str(abs(c))
            else:
                mono = "q" if e == 1 else "q^%d" % e
                body = mono if abs(c) == 1 else "%d*%s" % (abs(c), mono)
            if not parts:
                parts.append(("-" if c < 0 else "") + body)
            else:
                parts.append(("- " if c < 0 else "+ ") + body)
        return " ".join(parts)

    def __repr__(self):
        return "LaurentInt(%r)" % self.coeffs


def _as_laurent(x):
    if isinstance(x, LaurentInt):
        return x
    if isinstance(x, int):
        return LaurentInt(x)
    return None


@dataclass(frozen=True)
class GenSymbol:
    name: str
    indices: Tuple[int, ...] = ()
    starred: bool = False

    def __post_init__(self):
        object.__setattr__(self, "indices", tuple(int(i) for i in self.indices))
        if self.name in ("one", "zero"):
            if self.indices:
                raise ValueError("%s carries no indices" % self.name)
            # 0* = 0 and 1* = 1
            object.__setattr__(self, "starred", False)

    @property
    def is_scalar(self):
        return self.name in ("one", "zero")

    def star(self):
        if self.is_scalar:
            return self
        return replace(self, starred=not self.starred)

    def unstarred(self):
        return replace(self, starred=False) if self.starred else self

    def __str__(self):
        res = self.name
        if self.indices:
            res += "[%s]" % ",".join(str(i) for i in self.indices)
        if self.starred:
            res += "'"
        return res


ONE = GenSymbol("one")
ZERO = GenSymbol("zero")

Word = Tuple[GenSymbol, ...]
Monomial = Tuple[Word, ...]


def letter_key(g):
    """
    Larger key = larger letter: unstarred above starred, then lower
    indices above higher ones
    """
    return (
        not g.starred,
        tuple(-ord(c) for c in g.name),
        tuple(-i for i in g.indices),
    )


def word_key(w):
    return (len(w), tuple(letter_key(g) for g in w))


def monomial_key(m):
    return tuple(word_key(w) for w in m)


class NCTensorPoly:
    """
    Element of the d-th tensor power of a free *-algebra, as a map from
    d-tuples of words to Laurent coefficients
    """

    __slots__ = ("degree", "_terms")

    def __init__(self, degree, terms=None):
        if degree < 1:
            raise ValueError("Invalid tensor degree %d" % degree)
        self.degree = degree
        self._terms = {}
        for words, c in (terms or {}).items():
            words = tuple(tuple(w) for w in words)
            if len(words) != degree:
                raise DegreeMismatchError(
                    "term of degree %d in a degree %d polynomial" % (len(words), degree)
                )
            c = _as_laurent(c)
            if c:
                self._terms[words] = c

    @classmethod
    def zero(cls, degree=1):
        return cls(degree)

    @classmethod
    def unit(cls, degree=1, coeff=1):
        return cls(degree, {((),) * degree: coeff})

    @classmethod
    def generator(cls, g, coeff=1):
        return normalize(cls(1, {((g,),): coeff}))

    @classmethod
    def monomial(cls, *words, coeff=1):
        return normalize(cls(len(words), {tuple(words): coeff}))

    @property
    def terms(self):
        return MappingProxyType(self._terms)

    def is_zero(self):
        return not self._terms

    def __bool__(self):
        return bool(self._terms)

    def is_scalar(self):
        return all(all(len(w) == 0 for w in words) for words in self._terms)

    def scalar_value(self):
        assert self.is_scalar()
        return self._terms.get(((),) * self.degree, LaurentInt())

    def lift(self, degree):
        """
        Scalar as an element of another tensor degree
        """
        if degree == self.degree:
            return self
        if not self.is_scalar():
            raise DegreeMismatchError(
                "cannot lift a non-scalar from degree %d to %d" % (self.degree, degree)
            )
        return NCTensorPoly.unit(degree, self.scalar_value())

    def generators(self):
        return {g.unstarred() for words in self._terms for w in words for g in w}

    def leading_term(self):
        if not self._terms:
            raise ValueError("the zero polynomial has no leading term")
        m = max(self._terms, key=monomial_key)
        return m, self._terms[m]

    def __add__(self, other):
        other = _as_poly(other, self.degree)
        if other.degree != self.degree:
            raise DegreeMismatchError("%d != %d" % (self.degree, other.degree))
        res = dict(self._terms)
        for m, c in other._terms.items():
            _accumulate(res, m, c)
        return NCTensorPoly(self.degree, res)

    __radd__ = __add__

    def __neg__(self):
        return NCTensorPoly(self.degree, {m: -c for m, c in self._terms.items()})

    def __sub__(self, other):
        return self + (-_as_poly(other, self.degree))

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        c = _as_laurent(other)
        if c is not None:
            return NCTensorPoly(self.degree, {m: v * c for m, v in self._terms.items()})
        return mul(self, other)

    def __rmul__(self, other):
        c = _as_laurent(other)
        if c is None:
            return NotImplemented
        return self * c

    def __pow__(self, k):
        if k < 0:
            raise ValueError("negative powers of %s" % self)
        res = NCTensorPoly.unit(self.degree)
        for _ in range(k):
            res = mul(res, self)
        return res

    def adjoint(self):
        return adjoint(self)

    def __eq__(self, other):
        if not isinstance(other, NCTensorPoly):
            return NotImplemented
        return poly_equal(self, other)

    def __hash__(self):
        p = normalize(self)
        return hash((p.degree, frozenset(p._terms.items())))

    def __str__(self):
        return render(self)

    def __repr__(self):
        return "NCTensorPoly(%d, %r)" % (self.degree, render(self))


def _as_poly(x, degree):
    if isinstance(x, NCTensorPoly):
        return x
    c = _as_laurent(x)
    if c is None:
        raise TypeError("cannot convert %r to a polynomial" % (x,))
    return NCTensorPoly.unit(degree, c)


def _accumulate(terms, key, val):
    acc = terms.get(key)
    val = val if acc is None else acc + val
    if val:
        terms[key] = val
    else:
        terms.pop(key, None)


def normalize(p):
    """
    Absorb the unit, annihilate words containing the zero generator and
    merge equal monomials
    """
    terms = {}
    for words, c in p._terms.items():
        if any(ZERO in w for w in words):
            continue
        key = tuple(tuple(g for g in w if g != ONE) for w in words)
        _accumulate(terms, key, c)
    return NCTensorPoly(p.degree, terms)


def mul(p, r):
    if p.degree != r.degree:
        raise DegreeMismatchError(
            "cannot multiply degree %d by degree %d" % (p.degree, r.degree)
        )
    terms = {}
    for m1, c1 in p._terms.items():
        for m2, c2 in r._terms.items():
            key = tuple(a + b for a, b in zip(m1, m2))
            _accumulate(terms, key, c1 * c2)
    return normalize(NCTensorPoly(p.degree, terms))


def adjoint(p):
    # q is a formal real scalar: coefficients are fixed
    terms = {}
    for words, c in p._terms.items():
        key = tuple(tuple(g.star() for g in reversed(w)) for w in words)
        _accumulate(terms, key, c)
    return normalize(NCTensorPoly(p.degree, terms))


def tensor(p, r):
    terms = {}
    for m1, c1 in p._terms.items():
        for m2, c2 in r._terms.items():
            _accumulate(terms, m1 + m2, c1 * c2)
    return normalize(NCTensorPoly(p.degree + r.degree, terms))


def poly_equal(p, r):
    if p.degree != r.degree:
        return False
    return normalize(p)._terms == normalize(r)._terms


def _word_image(morphism, word, cache):
    res = cache.get(word)
    if res is not None:
        return res
    k = morphism.image_degree
    acc = {((),) * k: LaurentInt(1)}
    for g in word:
        img = morphism.image(g)._terms
        nxt = {}
        for m1, c1 in acc.items():
            for m2, c2 in img.items():
                _accumulate(nxt, tuple(a + b for a, b in zip(m1, m2)), c1 * c2)
        acc = nxt
        if not acc:
            break
    res = NCTensorPoly(k, acc)
    cache[word] = res
    return res


def apply_morphism(morphism, p, leg=None):
    """
    Substitute generator images in the selected legs of p (all legs when
    leg is None). A morphism with images of degree k > 1 replaces each
    selected leg by k legs, so it may only act on a single leg.
    """
    k = morphism.image_degree
    if leg is None:
        if k != 1 and p.degree != 1:
            raise ValueError(
                "a degree-raising morphism only applies to a single leg"
            )
        legs = set(range(p.degree))
    else:
        if not 0 <= leg < p.degree:
            raise ValueError("Invalid leg %d for degree %d" % (leg, p.degree))
        legs = {leg}

    cache = {}
    result = {}
    for words, c in p._terms.items():
        partial = {(): c}
        for idx, w in enumerate(words):
            if idx in legs:
                img = _word_image(morphism, w, cache)._terms
                nxt = {}
                for pre, pc in partial.items():
                    for m, ic in img.items():
                        _accumulate(nxt, pre + m, pc * ic)
                partial = nxt
            else:
                partial = {pre + (w,): pc for pre, pc in partial.items()}
            if not partial:
                break
        for key, val in partial.items():
            _accumulate(result, key, val)

    degree = p.degree + len(legs) * (k - 1)
    return normalize(NCTensorPoly(degree, result))


@dataclass(frozen=True)
class RewriteRule:
    lhs: Word
    rhs: NCTensorPoly
    origin: str

    def __str__(self):
        return "%s: %s -> %s" % (self.origin, render_word(self.lhs), self.rhs)


def orient(relation, origin):
    """
    Orient a degree-1 relation as leading monomial -> remainder
    """
    if relation.degree != 1:
        raise RuleOrientationError("%s: relations have tensor degree 1" % origin)
    relation = normalize(relation)
    if relation.is_zero():
        raise RuleOrientationError("%s: relation is zero" % origin)
    (lm,), lc = relation.leading_term()
    if not lm:
        raise RuleOrientationError("%s: relation has no leading word" % origin)
    if not lc.is_unit():
        raise RuleOrientationError(
            "%s: leading coefficient %s is not invertible" % (origin, lc)
        )
    rest = relation - NCTensorPoly(1, {(lm,): lc})
    rhs = rest * (-lc.inverse())
    return RewriteRule(lm, rhs, origin)


class ReductionStatus(Enum):
    REDUCED_TO_ZERO = "ReducedToZero"
    NORMAL_FORM = "NormalForm"
    STEP_LIMIT = "StepLimit"


@dataclass(frozen=True)
class TraceStep:
    rule: RewriteRule
    leg: int
    monomial: Monomial
    position: int
    coeff: LaurentInt


@dataclass(frozen=True)
class ReductionOutcome:
    status: ReductionStatus
    steps: int
    result: NCTensorPoly
    trace: Optional[Tuple[TraceStep, ...]] = None

    @property
    def normal_form(self):
        return self.result if self.status is ReductionStatus.NORMAL_FORM else None


class _RuleIndex:
    def __init__(self, rules):
        self.by_lhs = {}
        for rule in rules:
            if rule.lhs in self.by_lhs:
                logger.debug(
                    "%s shadowed by %s", rule.origin, self.by_lhs[rule.lhs].origin
                )
                continue
            self.by_lhs[rule.lhs] = rule
        self.lengths = sorted({len(lhs) for lhs in self.by_lhs})

    def find(self, w):
        for pos in range(len(w)):
            for length in self.lengths:
                if pos + length > len(w):
                    break
                rule = self.by_lhs.get(w[pos : pos + length])
                if rule is not None:
                    return pos, rule
        return None


def _find_reducible(terms, indexes):
    for mono in sorted(terms, key=monomial_key, reverse=True):
        for leg, w in enumerate(mono):
            hit = indexes[leg].find(w)
            if hit is not None:
                return mono, leg, hit[0], hit[1]
    return None


def reduce(p, rules=(), step_limit=None, leg_rules=None, keep_trace=False):
    """
    Rewrite the order-greatest reducible monomial (leftmost occurrence)
    until no rule applies or step_limit steps were made. In tensor degree
    d the rules act on each leg independently; leg_rules gives a separate
    rule set per leg.
    """
    if step_limit is None:
        step_limit = DEFAULT_STEP_LIMIT
    p = normalize(p)
    if leg_rules is not None:
        if len(leg_rules) != p.degree:
            raise ValueError("%d rule sets for degree %d" % (len(leg_rules), p.degree))
        indexes = [_RuleIndex(r) for r in leg_rules]
    else:
        shared = _RuleIndex(rules)
        indexes = [shared] * p.degree

    terms = dict(p._terms)
    trace = [] if keep_trace else None
    steps = 0
    status = ReductionStatus.NORMAL_FORM
    while terms:
        hit = _find_reducible(terms, indexes)
        if hit is None:
            break
        if steps >= step_limit:
            status = ReductionStatus.STEP_LIMIT
            break
        mono, leg, pos, rule = hit
        c = terms.pop(mono)
        w = mono[leg]
        left, right = w[:pos], w[pos + len(rule.lhs) :]
        for (rw,), rc in rule.rhs._terms.items():
            key = mono[:leg] + (left + rw + right,) + mono[leg + 1 :]
            _accumulate(terms, key, c * rc)
        steps += 1
        if keep_trace:
            trace.append(TraceStep(rule, leg, mono, pos, c))

    result = NCTensorPoly(p.degree, terms)
    if result.is_zero():
        status = ReductionStatus.REDUCED_TO_ZERO
    logger.debug("reduce: %s after %d steps", status.value, steps)
    return ReductionOutcome(
        status, steps, result, tuple(trace) if keep_trace else None
    )


def replay_trace(outcome):
    """
    Sum of the relation multiples recorded in a trace; equals p - result
    """
    if outcome.trace is None:
        raise ValueError("reduction was run without keep_trace")
    degree = outcome.result.degree
    terms = {}
    for step in outcome.trace:
        w = step.monomial[step.leg]
        left = w[: step.position]
        right = w[step.position + len(step.rule.lhs) :]
        _accumulate(terms, step.monomial, step.coeff)
        for (rw,), rc in step.rule.rhs._terms.items():
            key = (
                step.monomial[: step.leg]
                + (left + rw + right,)
                + step.monomial[step.leg + 1 :]
            )
            _accumulate(terms, key, -step.coeff * rc)
    return NCTensorPoly(degree, terms)


def render_word(w):
    if not w:
        return "1"
    return "*".join(str(g) for g in w)


def _render_coeff(c):
    """
    Sign and multiplicative prefix of a coefficient
    """
    if len(c._coeffs) == 1:
        ((e, v),) = c._coeffs
        sign = "-" if v < 0 else "+"
        body = str(LaurentInt({e: abs(v)}))
        return sign, ("" if body == "1" else body)
    return "+", "(%s)" % c


def render(p):
    """
    Canonical text form, e.g. u[1,1](x)u[2,2] - q*u[1,2](x)u[2,1]
    """
    p = normalize(p)
    if p.is_zero():
        return "0"
    parts = []
    for words in sorted(p._terms, key=monomial_key, reverse=True):
        sign, prefix = _render_coeff(p._terms[words])
        body = "(x)".join(render_word(w) for w in words)
        if p.degree == 1 and not words[0]:
            text = prefix or "1"
        elif prefix:
            text = "%s*%s" % (prefix, body)
        else:
            text = body
        if not parts:
            parts.append(text if sign == "+" else "-" + text)
        else:
            parts.append("%s %s" % (sign, text))
    return " ".join(parts)
