"""
Finitely generated abelian groups and homomorphisms in a fixed generator
presentation, exact sequences and six-term deduction

Matrices are numpy arrays of dtype object holding Python ints, so the
arithmetic is exact.
"""

import logging
from dataclasses import dataclass, field
from enum import Enum
from math import gcd, prod
from typing import Dict, List, Optional, Tuple

import numpy as np

logger = logging.getLogger(__name__)


class InconsistentSequenceError(ValueError):
    pass


def _zeros(rows, cols):
    return np.zeros((rows, cols), dtype=object)


def _eye(k):
    res = _zeros(k, k)
    for i in range(k):
        res[i, i] = 1
    return res


def _mat(data, rows, cols):
    if rows == 0 or cols == 0:
        return _zeros(rows, cols)
    res = np.array(np.asarray(data).tolist(), dtype=object)
    if res.shape != (rows, cols):
        raise ValueError("Invalid matrix shape %s, expected %s" % (res.shape, (rows, cols)))
    return res


def _dot(a, b):
    if a.shape[1] == 0:
        return _zeros(a.shape[0], b.shape[1])
    return a.dot(b)


def _smith(M):
    """
    Smith normal form with tracked transforms: returns U, Uinv, D, V, Vinv
    with U M V = D
    """
    D = np.array(M, dtype=object).copy()
    m, n = D.shape
    U, Uinv = _eye(m), _eye(m)
    V, Vinv = _eye(n), _eye(n)

    def swap_rows(a, b):
        D[[a, b]] = D[[b, a]]
        U[[a, b]] = U[[b, a]]
        Uinv[:, [a, b]] = Uinv[:, [b, a]]

    def swap_cols(a, b):
        D[:, [a, b]] = D[:, [b, a]]
        V[:, [a, b]] = V[:, [b, a]]
        Vinv[[a, b]] = Vinv[[b, a]]

    def add_row(dst, src, k):
        # row dst += k * row src
        D[dst] += k * D[src]
        U[dst] += k * U[src]
        Uinv[:, src] -= k * Uinv[:, dst]

    def add_col(dst, src, k):
        # col dst += k * col src
        D[:, dst] += k * D[:, src]
        V[:, dst] += k * V[:, src]
        Vinv[src] -= k * Vinv[dst]

    t = 0
    while t < min(m, n):
        nonzero = [
            (abs(D[i, j]), i, j) for i in range(t, m) for j in range(t, n) if D[i, j] != 0
        ]
        if not nonzero:
            break
        _, i, j = min(nonzero)
        if i != t:
            swap_rows(t, i)
        if j != t:
            swap_cols(t, j)
        p = D[t, t]
        dirty = False
        for i in range(t + 1, m):
            if D[i, t] != 0:
                add_row(i, t, -(D[i, t] // p))
                dirty = dirty or D[i, t] != 0
        for j in range(t + 1, n):
            if D[t, j] != 0:
                add_col(j, t, -(D[t, j] // p))
                dirty = dirty or D[t, j] != 0
        if dirty:
            continue
        bad = next(
            (i for i in range(t + 1, m) for j in range(t + 1, n) if D[i, j] % p != 0), None
        )
        if bad is not None:
            add_row(t, bad, 1)
            continue
        if p < 0:
            D[t] = -D[t]
            U[t] = -U[t]
            Uinv[:, t] = -Uinv[:, t]
        t += 1
    return U, Uinv, D, V, Vinv


def smith_normal_form(M):
    """
    Returns (U, D, V) with U, V unimodular and U M V = D diagonal, d1 | d2 | ...
    """
    M = np.array(np.asarray(M).tolist(), dtype=object)
    if M.ndim != 2:
        raise ValueError("Expected a 2d matrix")
    U, _, D, V, _ = _smith(M)
    return U, D, V


def _diagonal(D):
    return [D[i, i] for i in range(min(D.shape))]


def _quotient(A, m):
    """
    Z^m modulo the column span of A
    """
    if A.shape[1] == 0:
        return FGAbelianGroup(m)
    _, _, D, _, _ = _smith(A)
    nonzero = [abs(d) for d in _diagonal(D) if d != 0]
    return FGAbelianGroup(m - len(nonzero), tuple(d for d in nonzero if d > 1))


@dataclass(frozen=True)
class FGAbelianGroup:
    """
    Z^rank (+) Z/d1 (+) ... (+) Z/dk with d1 | d2 | ... | dk, di >= 2.
    Generators are ordered free part first.
    """

    rank: int = 0
    invariant_factors: Tuple[int, ...] = ()

    def __post_init__(self):
        factors = tuple(int(d) for d in self.invariant_factors)
        object.__setattr__(self, "invariant_factors", factors)
        if self.rank < 0:
            raise ValueError("Invalid rank %d" % self.rank)
        if any(d < 2 for d in factors):
            raise ValueError("Invariant factors must be >= 2: %s" % (factors,))
        if any(b % a != 0 for a, b in zip(factors, factors[1:])):
            raise ValueError("Invariant factors must form a divisibility chain: %s" % (factors,))

    @classmethod
    def zero(cls):
        return cls()

    @classmethod
    def free(cls, r):
        return cls(r)

    @classmethod
    def cyclic(cls, d):
        return cls.from_orders([d])

    @classmethod
    def from_orders(cls, orders):
        """
        Direct sum of cyclic groups Z/d (d = 0 meaning Z)
        """
        orders = [int(d) for d in orders]
        A = _zeros(len(orders), len(orders))
        for i, d in enumerate(orders):
            A[i, i] = d
        return _quotient(A, len(orders))

    @property
    def orders(self):
        return (0,) * self.rank + self.invariant_factors

    @property
    def ngens(self):
        return self.rank + len(self.invariant_factors)

    def relation_matrix(self):
        res = _zeros(self.ngens, self.ngens)
        for i, d in enumerate(self.orders):
            res[i, i] = d
        return res

    def is_trivial(self):
        return self.ngens == 0

    def is_free(self):
        return not self.invariant_factors

    def direct_sum(self, other):
        return FGAbelianGroup.from_orders(self.orders + other.orders)

    def order(self):
        if self.rank > 0:
            return None
        return prod(self.invariant_factors)

    def torsion_count(self, k):
        """
        Number of elements x with k x = 0 (finite groups only)
        """
        if self.rank > 0:
            raise ValueError("%s is infinite" % self)
        return prod(gcd(k, d) for d in self.invariant_factors)

    def __str__(self):
        parts = []
        if self.rank == 1:
            parts.append("Z")
        elif self.rank > 1:
            parts.append("Z^%d" % self.rank)
        parts.extend("Z/%d" % d for d in self.invariant_factors)
        return " (+) ".join(parts) if parts else "0"


def is_torsion_free(G):
    return G.is_free()


class GroupHom:
    """
    Homomorphism G -> H as an integer matrix acting on generator
    coordinates; torsion rows are reduced modulo their order
    """

    def __init__(self, source, target, matrix):
        self.source = source
        self.target = target
        M = _mat(matrix, target.ngens, source.ngens)
        for r, e in enumerate(target.orders):
            if e:
                M[r] = [x % e for x in M[r]]
        for c, d in enumerate(source.orders):
            if d == 0:
                continue
            for r, e in enumerate(target.orders):
                ok = (d * M[r, c]) % e == 0 if e else M[r, c] == 0
                if not ok:
                    raise ValueError(
                        "Matrix is not well defined on the relations of %s" % source
                    )
        self.matrix = M

    @classmethod
    def identity(cls, G):
        return cls(G, G, _eye(G.ngens))

    @classmethod
    def zero(cls, G, H):
        return cls(G, H, _zeros(H.ngens, G.ngens))

    def compose(self, other):
        """
        self o other
        """
        if other.target != self.source:
            raise ValueError("Cannot compose %s -> %s after %s -> %s" % (
                self.source, self.target, other.source, other.target))
        return GroupHom(other.source, self.target, _dot(self.matrix, other.matrix))

    def is_zero(self):
        return all(x == 0 for x in self.matrix.flat)

    def __eq__(self, other):
        if not isinstance(other, GroupHom):
            return NotImplemented
        return (
            self.source == other.source
            and self.target == other.target
            and all(a == b for a, b in zip(self.matrix.flat, other.matrix.flat))
        )

    def __repr__(self):
        return "GroupHom(%s -> %s, %s)" % (self.source, self.target, self.matrix.tolist())


def cokernel(h):
    A = np.hstack([h.matrix, h.target.relation_matrix()])
    return _quotient(A, h.target.ngens)


def _kernel_lattice(h):
    """
    Vectors x of Z^n (source coordinates) with h(x) = 0, as columns
    """
    n = h.source.ngens
    B = np.hstack([h.matrix, -h.target.relation_matrix()])
    _, _, D, V, _ = _smith(B)
    r = sum(1 for d in _diagonal(D) if d != 0)
    return V[:n, r:]


def image(h):
    return _quotient(_kernel_lattice(h), h.source.ngens)


def kernel(h):
    L = _kernel_lattice(h)
    if L.shape[1] == 0:
        return FGAbelianGroup()
    U, Uinv, D, _, _ = _smith(L)
    diag = _diagonal(D)
    r = sum(1 for d in diag if d != 0)
    n = h.source.ngens
    rels = []
    for c, d in enumerate(h.source.orders):
        if d == 0:
            continue
        s = _zeros(n, 1)
        s[c, 0] = d
        y = _dot(U, s)[:, 0]
        assert all(y[i] == 0 for i in range(r, n))
        assert all(y[i] % diag[i] == 0 for i in range(r))
        rels.append([y[i] // diag[i] for i in range(r)])
    C = _mat(np.array(rels, dtype=object).T if rels else [], r, len(rels))
    return _quotient(C, r)


def is_surjective(h):
    return cokernel(h).is_trivial()


def is_injective(h):
    return kernel(h).is_trivial()


def is_iso(h):
    return is_surjective(h) and is_injective(h)


def _in_span(A, v):
    m, k = A.shape
    if k == 0:
        return all(x == 0 for x in v)
    U, _, D, _, _ = _smith(A)
    y = _dot(U, np.array(v, dtype=object).reshape(m, 1))[:, 0]
    for i in range(m):
        d = D[i, i] if i < k else 0
        if d == 0:
            if y[i] != 0:
                return False
        elif y[i] % d != 0:
            return False
    return True


def is_exact_at(incoming, outgoing):
    """
    im(incoming) = ker(outgoing) as subgroups of the middle group
    """
    if incoming.target != outgoing.source:
        raise ValueError(
            "Maps do not meet: %s vs %s" % (incoming.target, outgoing.source)
        )
    if not outgoing.compose(incoming).is_zero():
        return False
    L = _kernel_lattice(outgoing)
    S = np.hstack([incoming.matrix, incoming.target.relation_matrix()])
    return all(_in_span(S, L[:, c]) for c in range(L.shape[1]))


def same_image(f, g):
    """
    f and g have the same image in their common target
    """
    if f.target != g.target:
        raise ValueError("Maps have different targets")
    rel = f.target.relation_matrix()
    F = np.hstack([f.matrix, rel])
    G = np.hstack([g.matrix, rel])
    return all(_in_span(F, G[:, c]) for c in range(G.shape[1])) and all(
        _in_span(G, F[:, c]) for c in range(F.shape[1])
    )


def is_exact_sequence(homs):
    return all(is_exact_at(f, g) for f, g in zip(homs, homs[1:]))


def euler_characteristic(groups):
    return sum((-1) ** i * G.rank for i, G in enumerate(groups))


@dataclass(frozen=True)
class Extension:
    sub: FGAbelianGroup
    quotient: FGAbelianGroup


@dataclass(frozen=True)
class AmbiguousReport:
    extension: Extension
    reason: str = ""


def solve_extension(e):
    """
    Middle term of 0 -> sub -> X -> quotient -> 0 when it is determined
    """
    if e.quotient.is_free():
        return e.sub.direct_sum(e.quotient)
    if e.sub.is_trivial():
        return e.quotient
    return AmbiguousReport(
        e, "extension of %s by %s is not determined" % (e.quotient, e.sub)
    )


class MapState(Enum):
    KNOWN = "Known"
    ZERO = "Zero"
    UNKNOWN = "Unknown"


@dataclass(frozen=True)
class MapSlot:
    state: MapState = MapState.UNKNOWN
    hom: Optional[GroupHom] = None

    @classmethod
    def known(cls, h):
        return cls(MapState.KNOWN, h)

    @classmethod
    def zero(cls):
        return cls(MapState.ZERO)

    @classmethod
    def unknown(cls):
        return cls(MapState.UNKNOWN)

    def __str__(self):
        if self.state is MapState.KNOWN:
            return "known %s" % self.hom.matrix.tolist()
        return self.state.value.lower()


NODE_NAMES = ("K0(I)", "K0(A)", "K0(B)", "K1(I)", "K1(A)", "K1(B)")


@dataclass
class SixTerm:
    """
    Cyclic exact sequence K0(I) -> K0(A) -> K0(B) -> K1(I) -> K1(A) -> K1(B) ->
    with maps[i]: nodes[i] -> nodes[i + 1]
    """

    nodes: List[Optional[FGAbelianGroup]]
    maps: List[MapSlot] = field(default_factory=lambda: [MapSlot()] * 6)
    witnesses: Dict[int, GroupHom] = field(default_factory=dict)
    notes: Dict[int, str] = field(default_factory=dict)

    def __post_init__(self):
        self.nodes = list(self.nodes)
        self.maps = [MapSlot() if m is None else m for m in self.maps]
        if len(self.nodes) != 6 or len(self.maps) != 6:
            raise ValueError("A six-term sequence has six nodes and six maps")
        for i, slot in enumerate(self.maps):
            if slot.state is not MapState.KNOWN:
                continue
            j = (i + 1) % 6
            for k, G in ((i, slot.hom.source), (j, slot.hom.target)):
                if self.nodes[k] is None:
                    self.nodes[k] = G
                elif self.nodes[k] != G:
                    raise ValueError(
                        "map %d does not match node %s: %s" % (i, NODE_NAMES[k], self.nodes[k])
                    )

    def concrete_map(self, i):
        slot = self.maps[i]
        if slot.state is MapState.KNOWN:
            return slot.hom
        if i in self.witnesses:
            return self.witnesses[i]
        src, dst = self.nodes[i], self.nodes[(i + 1) % 6]
        if slot.state is MapState.ZERO and src is not None and dst is not None:
            return GroupHom.zero(src, dst)
        return None

    def resolved(self):
        return all(G is not None for G in self.nodes)

    def to_text(self):
        lines = []
        for i in range(6):
            G = self.nodes[i]
            line = "%-6s %-16s --[%s]-->" % (NODE_NAMES[i], "?" if G is None else G, self.maps[i])
            if i in self.notes:
                line += "  " + self.notes[i]
            lines.append(line)
        return "\n".join(lines)


@dataclass(frozen=True)
class UnderdeterminedReport:
    partial: SixTerm
    unresolved: Tuple[int, ...]

    def __str__(self):
        return "unresolved: %s" % ", ".join(NODE_NAMES[i] for i in self.unresolved)


def check_sixterm(st):
    """
    Exactness at every node where both maps are concrete, plus the rank
    Euler characteristic
    """
    for i in range(6):
        f, g = st.concrete_map((i - 1) % 6), st.concrete_map(i)
        if f is not None and g is not None and not is_exact_at(f, g):
            logger.debug("not exact at %s", NODE_NAMES[i])
            return False
    if st.resolved():
        return euler_characteristic(st.nodes) == 0
    return True


def _coker_of(nodes, maps, k):
    dst = nodes[(k + 1) % 6]
    if dst is not None and dst.is_trivial():
        return FGAbelianGroup()
    slot = maps[k]
    if slot.state is MapState.ZERO:
        return dst
    if slot.state is MapState.KNOWN:
        return cokernel(slot.hom)
    return None


def _ker_of(nodes, maps, k):
    src = nodes[k]
    if src is not None and src.is_trivial():
        return FGAbelianGroup()
    slot = maps[k]
    if slot.state is MapState.ZERO:
        return src
    if slot.state is MapState.KNOWN:
        return kernel(slot.hom)
    return None


def _split_witnesses(st, nodes, maps, i):
    """
    Inclusion and projection for X_i = X_{i-1} (+) X_{i+1}, both free,
    when the outer maps are zero
    """
    a, b = (i - 1) % 6, (i + 1) % 6
    if maps[(i - 2) % 6].state is not MapState.ZERO or maps[b].state is not MapState.ZERO:
        return
    if maps[a].state is not MapState.UNKNOWN or maps[i].state is not MapState.UNKNOWN:
        return
    A, B, X = nodes[a], nodes[b], nodes[i]
    if not (A.is_free() and B.is_free()):
        return
    incl = _zeros(X.ngens, A.ngens)
    for k in range(A.rank):
        incl[k, k] = 1
    proj = _zeros(B.ngens, X.ngens)
    for k in range(B.rank):
        proj[k, A.rank + k] = 1
    st.witnesses[a] = GroupHom(A, X, incl)
    st.witnesses[i] = GroupHom(X, B, proj)
    st.notes[a] = "split inclusion"
    st.notes[i] = "split projection"


def solve_sixterm(st):
    """
    Forced deductions on a six-term exact sequence until a fixed point:
    zero incoming maps give injections, zero outgoing maps surjections,
    injective and surjective maps isomorphisms, and a node between known
    neighbours the extension 0 -> coker -> X -> ker -> 0
    """
    out = SixTerm(list(st.nodes), list(st.maps), dict(st.witnesses), dict(st.notes))
    if not check_sixterm(out):
        raise InconsistentSequenceError("Known data violates exactness")
    nodes, maps = out.nodes, out.maps
    injective, surjective = set(), set()

    changed = True
    while changed:
        changed = False
        for i in range(6):
            j = (i + 1) % 6
            if maps[i].state is MapState.UNKNOWN and any(
                G is not None and G.is_trivial() for G in (nodes[i], nodes[j])
            ):
                maps[i] = MapSlot.zero()
                changed = True

        for i in range(6):
            j = (i + 1) % 6
            if maps[(i - 1) % 6].state is MapState.ZERO and i not in injective:
                injective.add(i)
                changed = True
            if maps[j].state is MapState.ZERO and i not in surjective:
                surjective.add(i)
                changed = True

            if maps[i].state is MapState.ZERO:
                for flag, k in ((injective, i), (surjective, j)):
                    if i not in flag:
                        continue
                    if nodes[k] is None:
                        nodes[k] = FGAbelianGroup()
                        changed = True
                    elif not nodes[k].is_trivial():
                        raise InconsistentSequenceError(
                            "zero map %d cannot be injective or surjective on %s"
                            % (i, nodes[k])
                        )
                continue

            if i in injective and i in surjective:
                A, B = nodes[i], nodes[j]
                if A is None and B is not None:
                    nodes[i] = B
                    changed = True
                elif B is None and A is not None:
                    nodes[j] = A
                    changed = True
                elif A is not None and A != B:
                    raise InconsistentSequenceError(
                        "%s and %s are forced isomorphic" % (A, B)
                    )
                if (
                    nodes[i] is not None
                    and maps[i].state is MapState.UNKNOWN
                    and i not in out.witnesses
                ):
                    out.witnesses[i] = GroupHom.identity(nodes[i])
                    out.notes[i] = "iso, determined up to sign"
                    changed = True

        for i in range(6):
            if nodes[i] is not None:
                continue
            sub = _coker_of(nodes, maps, (i - 2) % 6)
            quo = _ker_of(nodes, maps, (i + 1) % 6)
            if sub is None or quo is None:
                continue
            res = solve_extension(Extension(sub, quo))
            if isinstance(res, AmbiguousReport):
                out.notes[i] = res.reason
                continue
            nodes[i] = res
            changed = True
            _split_witnesses(out, nodes, maps, i)

    unresolved = tuple(i for i in range(6) if nodes[i] is None)
    if unresolved:
        logger.info("six-term: %d nodes unresolved", len(unresolved))
        return UnderdeterminedReport(out, unresolved)
    if not check_sixterm(out):
        raise InconsistentSequenceError("Deduced sequence fails the exactness check")
    return out


def group_from_dict(d):
    return FGAbelianGroup(int(d.get("rank", 0)), tuple(d.get("factors", ())))


def group_to_dict(G):
    return {"rank": G.rank, "factors": list(G.invariant_factors)}


def sixterm_from_dict(d):
    """
    {"nodes": [group or null] * 6, "maps": ["zero" | "unknown" | matrix] * 6}
    """
    nodes = [None if x is None else group_from_dict(x) for x in d["nodes"]]
    maps = []
    for i, m in enumerate(d.get("maps", ["unknown"] * 6)):
        if m == "zero":
            maps.append(MapSlot.zero())
        elif m is None or m == "unknown":
            maps.append(MapSlot.unknown())
        else:
            src, dst = nodes[i], nodes[(i + 1) % 6]
            if src is None or dst is None:
                raise ValueError("map %d is given but its nodes are not" % i)
            maps.append(MapSlot.known(GroupHom(src, dst, m)))
    return SixTerm(nodes, maps)
