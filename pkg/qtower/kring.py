"""
Integral exterior Hopf algebras on odd generators r_1 .. r_{n-1} modelling
K*(SU(n)), the branching maps between them and the induced tower
"""

import logging
import itertools
from functools import cached_property, lru_cache

from .abgrp import FGAbelianGroup, GroupHom, _mat, is_surjective
from .towers import GroupTower, TailPattern

logger = logging.getLogger(__name__)

NAGY_COMPARISON = "Nagy comparison"
SURJECTIVE_TOWER = "surjective tower"


def _merge_sign(s, t):
    """
    Sign of the shuffle sorting s + t (both sorted)
    """
    inversions = sum(1 for a in s for b in t if a > b)
    return -1 if inversions % 2 else 1


class ExtAlgebra:
    def __init__(self, n):
        if n < 1:
            raise ValueError("Invalid level %d" % n)
        self.n = n
        self.generators = tuple(range(1, n))

    @cached_property
    def basis(self):
        return [
            s for k in range(len(self.generators) + 1)
            for s in itertools.combinations(self.generators, k)
        ]

    @property
    def rank(self):
        return 2 ** (self.n - 1)

    def parity_basis(self, parity):
        return [s for s in self.basis if len(s) % 2 == parity]

    def one(self):
        return ExtElement(self, {(): 1})

    def zero(self):
        return ExtElement(self, {})

    def gen(self, i):
        if i not in self.generators:
            raise ValueError("r%d is not a generator of level %d" % (i, self.n))
        return ExtElement(self, {(i,): 1})

    def __eq__(self, other):
        return isinstance(other, ExtAlgebra) and other.n == self.n

    def __hash__(self):
        return hash(("ExtAlgebra", self.n))

    def __repr__(self):
        return "ExtAlgebra(%d)" % self.n


class ExtElement:
    __slots__ = ("algebra", "coords")

    def __init__(self, algebra, coords):
        self.algebra = algebra
        self.coords = {}
        for s, c in coords.items():
            s = tuple(s)
            if list(s) != sorted(set(s)) or any(i not in algebra.generators for i in s):
                raise ValueError("Invalid basis subset %s" % (s,))
            if c:
                self.coords[s] = self.coords.get(s, 0) + c
        self.coords = {s: c for s, c in self.coords.items() if c}

    def _check(self, other):
        if other.algebra != self.algebra:
            raise ValueError("%r and %r live in different algebras" % (self, other))

    def __add__(self, other):
        self._check(other)
        res = dict(self.coords)
        for s, c in other.coords.items():
            res[s] = res.get(s, 0) + c
        return ExtElement(self.algebra, res)

    def __neg__(self):
        return ExtElement(self.algebra, {s: -c for s, c in self.coords.items()})

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, int):
            return ExtElement(self.algebra, {s: c * other for s, c in self.coords.items()})
        return ext_mul(self, other)

    __rmul__ = __mul__

    def __eq__(self, other):
        if not isinstance(other, ExtElement):
            return NotImplemented
        return self.algebra == other.algebra and self.coords == other.coords

    def is_zero(self):
        return not self.coords

    def is_homogeneous(self, parity=None):
        parities = {len(s) % 2 for s in self.coords}
        if parity is None:
            return len(parities) <= 1
        return parities <= {parity}

    def __str__(self):
        return render(self)

    def __repr__(self):
        return "ExtElement(%d, %s)" % (self.algebra.n, render(self))


def ext_mul(x, y):
    x._check(y)
    res = {}
    for s, a in x.coords.items():
        for t, b in y.coords.items():
            if set(s) & set(t):
                continue
            key = tuple(sorted(s + t))
            res[key] = res.get(key, 0) + _merge_sign(s, t) * a * b
    return ExtElement(x.algebra, res)


def _render_subset(s):
    return "^".join("r%d" % i for i in s) if s else "1"


def render(x):
    if x.is_zero():
        return "0"
    parts = []
    for s in sorted(x.coords, key=lambda s: (len(s), s)):
        c = x.coords[s]
        body = _render_subset(s)
        if abs(c) != 1:
            body = "%d*%s" % (abs(c), body) if s else str(abs(c))
        if not parts:
            parts.append(body if c > 0 else "-" + body)
        else:
            parts.append(("+ " if c > 0 else "- ") + body)
    return " ".join(parts)


class ExtMorphism:
    """
    Graded algebra map given on generators, extended multiplicatively
    """

    def __init__(self, source, target, gen_images):
        self.source = source
        self.target = target
        self.gen_images = dict(gen_images)
        if set(self.gen_images) != set(source.generators):
            raise ValueError("Images must cover r1..r%d" % (source.n - 1))
        self.homogeneous = True
        for i, img in self.gen_images.items():
            if img.algebra != target:
                raise ValueError("Image of r%d is not in %r" % (i, target))
            if not img.is_homogeneous(1):
                self.homogeneous = False
        if not self.homogeneous:
            logger.warning("Morphism %r -> %r is not graded", source, target)

    def apply(self, x):
        return apply(self, x)

    def compose(self, other):
        return compose(self, other)


def apply(m, x):
    if x.algebra != m.source:
        raise ValueError("%r is not in %r" % (x, m.source))
    res = m.target.zero()
    for s, c in x.coords.items():
        term = m.target.one()
        for i in s:
            term = ext_mul(term, m.gen_images[i])
        res = res + term * c
    return res


def compose(m1, m2):
    """
    m1 o m2
    """
    if m2.target != m1.source:
        raise ValueError("Morphisms do not compose")
    return ExtMorphism(
        m2.source, m1.target, {i: apply(m1, img) for i, img in m2.gen_images.items()}
    )


@lru_cache(maxsize=None)
def branching_morphism(n, boundary="zero"):
    """
    r^n_i -> r^{n-1}_i + r^{n-1}_{i-1}; the boundary classes r_0, r_{n-1}
    map to 0, or to the unit with boundary="unit"
    """
    if n < 2:
        raise ValueError("Branching needs n >= 2, got %d" % n)
    if boundary not in ("zero", "unit"):
        raise ValueError("Invalid boundary convention %s" % boundary)
    source, target = ExtAlgebra(n), ExtAlgebra(n - 1)
    images = {}
    for i in source.generators:
        img = target.zero()
        for k in (i, i - 1):
            if k in target.generators:
                img = img + target.gen(k)
            elif boundary == "unit":
                img = img + target.one()
        images[i] = img
    return ExtMorphism(source, target, images)


def induced_matrix(m, parity=None):
    """
    Matrix of m on the (parity part of the) subset bases; rows index the
    target basis
    """
    if parity is None:
        src, dst = m.source.basis, m.target.basis
    else:
        src, dst = m.source.parity_basis(parity), m.target.parity_basis(parity)
    row = {s: r for r, s in enumerate(dst)}
    res = [[0] * len(src) for _ in dst]
    for c, s in enumerate(src):
        for t, v in apply(m, ExtElement(m.source, {s: 1})).coords.items():
            if t not in row:
                raise ValueError("%r does not preserve parity" % m)
            res[row[t]][c] += v
    return _mat(res, len(dst), len(src))


class ExtTensor:
    """
    Element of A (x) A as a map from pairs of subsets to integers
    """

    __slots__ = ("algebra", "coords")

    def __init__(self, algebra, coords):
        self.algebra = algebra
        self.coords = {k: v for k, v in coords.items() if v}

    def __eq__(self, other):
        if not isinstance(other, ExtTensor):
            return NotImplemented
        return self.algebra == other.algebra and self.coords == other.coords

    def __str__(self):
        if not self.coords:
            return "0"
        parts = []
        for (s, t), c in sorted(self.coords.items(), key=lambda kv: (-len(kv[0][0]), kv[0])):
            body = "%s(x)%s" % (_render_subset(s), _render_subset(t))
            if abs(c) != 1:
                body = "%d*%s" % (abs(c), body)
            if not parts:
                parts.append(body if c > 0 else "-" + body)
            else:
                parts.append(("+ " if c > 0 else "- ") + body)
        return " ".join(parts)


def tensor_mul(x, y):
    """
    (a (x) b)(c (x) d) = (-1)^{|b||c|} ac (x) bd
    """
    res = {}
    for (s1, t1), a in x.coords.items():
        for (s2, t2), b in y.coords.items():
            if set(s1) & set(s2) or set(t1) & set(t2):
                continue
            sign = _merge_sign(s1, s2) * _merge_sign(t1, t2)
            if len(t1) * len(s2) % 2:
                sign = -sign
            key = (tuple(sorted(s1 + s2)), tuple(sorted(t1 + t2)))
            res[key] = res.get(key, 0) + sign * a * b
    return ExtTensor(x.algebra, res)


def tensor_of(x, y):
    x._check(y)
    return ExtTensor(
        x.algebra, {(s, t): a * b for s, a in x.coords.items() for t, b in y.coords.items()}
    )


def hopf_comul(x):
    """
    Coproduct with primitive generators
    """
    A = x.algebra
    res = {}
    for s, c in x.coords.items():
        term = ExtTensor(A, {((), ()): 1})
        for i in s:
            term = tensor_mul(term, ExtTensor(A, {((i,), ()): 1, ((), (i,)): 1}))
        for k, v in term.coords.items():
            res[k] = res.get(k, 0) + c * v
    return ExtTensor(A, res)


def tensor_apply(m, t):
    """
    (m (x) m)(t)
    """
    res = {}
    for (s, u), c in t.coords.items():
        a = apply(m, ExtElement(m.source, {s: 1}))
        b = apply(m, ExtElement(m.source, {u: 1}))
        for k, v in tensor_of(a, b).coords.items():
            res[k] = res.get(k, 0) + c * v
    return ExtTensor(m.target, res)


def su_k_tower(n_max):
    """
    K0 (even part) and K1 (odd part) towers of Lambda(r_1 .. r_{n-1}) for
    2 <= n <= n_max along the branching maps
    """
    if n_max < 2:
        raise ValueError("n_max must be >= 2")
    towers = []
    for parity in (0, 1):
        groups = [FGAbelianGroup.free(2 ** (n - 2)) for n in range(2, n_max + 1)]
        maps = {}
        for n in range(3, n_max + 1):
            h = GroupHom(
                groups[n - 2], groups[n - 3], induced_matrix(branching_morphism(n), parity)
            )
            if not is_surjective(h):
                logger.error("K%d branching map %d -> %d is not surjective", parity, n, n - 1)
                raise RuntimeError("branching map %d -> %d is not surjective" % (n, n - 1))
            maps[n] = h
        towers.append(
            GroupTower(
                "K%d(SU)" % parity,
                2,
                groups,
                maps,
                TailPattern.RANK_GEOMETRIC if n_max > 2 else None,
                (NAGY_COMPARISON, SURJECTIVE_TOWER),
            )
        )
    return tuple(towers)
