"""
Towers of finitely generated abelian groups A_n -> A_{n-1}: lim and lim^1
classification over a finite window plus a declared tail, and the Milnor
sequence for representable K-theory
"""

import logging
from dataclasses import dataclass
from enum import Enum
from typing import Optional, Tuple

from .abgrp import (
    FGAbelianGroup,
    GroupHom,
    MapSlot,
    SixTerm,
    UnderdeterminedReport,
    group_from_dict,
    group_to_dict,
    is_iso,
    is_surjective,
    same_image,
    solve_sixterm,
)

logger = logging.getLogger(__name__)

Z = FGAbelianGroup.free(1)
ZERO_GROUP = FGAbelianGroup.zero()

# K_0, K_1 of the ideals in the defining extensions
COMPACTS_K = (Z, ZERO_GROUP)
CIRCLE_COMPACTS_K = (Z, Z)
CIRCLE_K = (Z, Z)


class TailPattern(Enum):
    CONSTANT = "Constant"
    RANK_LINEAR = "RankLinear"
    RANK_GEOMETRIC = "RankGeometric"
    CUSTOM = "Custom"


class GroupTower:
    """
    Groups A_start .. A_end with maps[n]: A_n -> A_{n-1} for n > start
    """

    def __init__(self, name, start, groups, maps, tail=None, provenance=()):
        self.name = name
        self.start = start
        self.groups = list(groups)
        self.maps = dict(maps) if isinstance(maps, dict) else {
            start + k + 1: h for k, h in enumerate(maps)
        }
        self.tail = tail
        self.provenance = tuple(provenance)
        if not self.groups:
            raise ValueError("%s: empty tower" % name)
        for n in range(start + 1, self.end + 1):
            h = self.maps.get(n)
            if h is None:
                raise ValueError("%s: missing map from level %d" % (name, n))
            if h.source != self.group(n) or h.target != self.group(n - 1):
                raise ValueError("%s: map %d does not match its groups" % (name, n))
        self._check_tail()

    @property
    def end(self):
        return self.start + len(self.groups) - 1

    def group(self, n):
        if not self.start <= n <= self.end:
            raise ValueError("%s has no level %d" % (self.name, n))
        return self.groups[n - self.start]

    def map(self, n):
        return self.maps[n]

    def composite(self, m, n):
        """
        A_m -> A_n for m >= n
        """
        h = GroupHom.identity(self.group(m))
        for k in range(m, n, -1):
            h = self.map(k).compose(h)
        return h

    def ranks(self):
        return [G.rank for G in self.groups]

    def _check_tail(self):
        if self.tail in (None, TailPattern.CUSTOM) or len(self.groups) < 2:
            return
        a, b = self.group(self.end - 1), self.group(self.end)
        last = self.map(self.end)
        if self.tail is TailPattern.CONSTANT:
            ok = a == b
            if ok and len(self.groups) > 2:
                ok = self.map(self.end - 1) == last
        else:
            ok = a.is_free() and b.is_free() and is_surjective(last)
            if self.tail is TailPattern.RANK_LINEAR:
                ok = ok and b.rank > a.rank
            else:
                ok = ok and a.rank > 0 and b.rank % a.rank == 0 and b.rank // a.rank >= 2
        if not ok:
            raise ValueError("%s: tail pattern %s does not fit the window" % (
                self.name, self.tail.value))

    def window(self, window=None):
        if window is None:
            return self.start, self.end
        lo, hi = window
        if lo > hi or lo < self.start or hi > self.end:
            raise ValueError("Window %d..%d outside %d..%d" % (lo, hi, self.start, self.end))
        return lo, hi

    def to_dict(self):
        return {
            "name": self.name,
            "start": self.start,
            "groups": [group_to_dict(G) for G in self.groups],
            "maps": [self.maps[n].matrix.tolist() for n in range(self.start + 1, self.end + 1)],
            "tail": None if self.tail is None else self.tail.value,
        }

    @classmethod
    def from_dict(cls, d):
        start = int(d.get("start", 1))
        groups = [group_from_dict(x) for x in d["groups"]]
        maps = [
            GroupHom(groups[k + 1], groups[k], m) for k, m in enumerate(d.get("maps", []))
        ]
        tail = d.get("tail")
        return cls(
            d.get("name", "tower"), start, groups, maps, None if tail is None else TailPattern(tail)
        )


def truncate(tower, drop=1):
    if drop >= len(tower.groups):
        raise ValueError("Cannot drop %d of %d levels" % (drop, len(tower.groups)))
    start = tower.start + drop
    return GroupTower(
        tower.name,
        start,
        tower.groups[drop:],
        {n: h for n, h in tower.maps.items() if n > start},
        tower.tail,
        tower.provenance,
    )


class Lim1Tag(Enum):
    ZERO_ML = "ZeroML"
    UNKNOWN = "UnknownWithinWindow"


class MLJustification(Enum):
    SURJECTIVE = "Surjective"
    EVENTUALLY_ZERO = "EventuallyZero"
    STABILIZED_IMAGES = "StabilizedImages"


@dataclass(frozen=True)
class Lim1Class:
    tag: Lim1Tag
    justification: Optional[MLJustification] = None
    window: Tuple[int, int] = (0, 0)
    evidence: str = ""

    @property
    def is_zero(self):
        return self.tag is Lim1Tag.ZERO_ML

    def __str__(self):
        if self.is_zero:
            return "0 (ZeroML: %s)" % self.justification.value
        return "unknown within window %d..%d" % self.window


def _vanishing_length(t, lo, hi):
    for length in range(1, hi - lo + 1):
        if all(t.composite(m, m - length).is_zero() for m in range(lo + length, hi + 1)):
            return length
    return None


def _stable_images(t, lo, hi):
    top = range((lo + hi + 1) // 2, hi + 1)
    for n in range(lo, top[0]):
        images = [t.composite(m, n) for m in top if m >= n]
        ref = images[0]
        for h in images[1:]:
            if not same_image(ref, h):
                return False
    return True


def lim1_classify(t, window=None):
    lo, hi = t.window(window)
    maps = [t.map(n) for n in range(lo + 1, hi + 1)]
    if not maps:
        return Lim1Class(Lim1Tag.UNKNOWN, None, (lo, hi), "no maps in the window")
    if all(is_surjective(h) for h in maps):
        return Lim1Class(Lim1Tag.ZERO_ML, MLJustification.SURJECTIVE, (lo, hi),
                         "%d maps with trivial cokernel" % len(maps))
    if t.tail is not TailPattern.CUSTOM:
        length = _vanishing_length(t, lo, hi)
        if length is not None:
            return Lim1Class(Lim1Tag.ZERO_ML, MLJustification.EVENTUALLY_ZERO, (lo, hi),
                             "composites of length %d vanish" % length)
    if t.tail is TailPattern.CONSTANT and hi - lo >= 2 and _stable_images(t, lo, hi):
        return Lim1Class(Lim1Tag.ZERO_ML, MLJustification.STABILIZED_IMAGES, (lo, hi),
                         "images stable over the top half of the window")
    return Lim1Class(Lim1Tag.UNKNOWN, None, (lo, hi))


class ProTag(Enum):
    TRIVIAL = "Trivial"
    STABLE = "Stable"
    PRO_FREE = "ProFree"
    UNCLASSIFIED = "Unclassified"


@dataclass(frozen=True)
class ProGroupClass:
    tag: ProTag
    group: Optional[FGAbelianGroup] = None
    ranks: Tuple[int, ...] = ()
    label: str = ""
    evidence: str = ""

    def is_torsion_free(self):
        if self.tag is ProTag.STABLE:
            return self.group.is_free()
        if self.tag in (ProTag.TRIVIAL, ProTag.PRO_FREE):
            return True
        return None

    def __str__(self):
        if self.tag is ProTag.TRIVIAL:
            return "0"
        if self.tag is ProTag.STABLE:
            return str(self.group)
        if self.tag is ProTag.PRO_FREE:
            return "%s (ProFree)" % self.label
        return "unclassified (%s)" % self.evidence


def lim_classify(t, window=None):
    lo, hi = t.window(window)
    groups = [t.group(n) for n in range(lo, hi + 1)]
    maps = [t.map(n) for n in range(lo + 1, hi + 1)]
    top = groups[(len(groups) - 1) // 2:]
    if maps and all(G.is_trivial() for G in top):
        return ProGroupClass(ProTag.TRIVIAL, evidence="groups eventually 0")
    if maps and all(h.is_zero() for h in maps) and t.tail is not TailPattern.CUSTOM:
        return ProGroupClass(ProTag.TRIVIAL, evidence="maps zero (EventuallyZero)")
    if (
        maps
        and t.tail in (None, TailPattern.CONSTANT)
        and all(G == groups[0] for G in groups)
        and all(is_iso(h) for h in maps)
    ):
        return ProGroupClass(ProTag.STABLE, groups[0], evidence="isomorphisms on %d..%d" % (lo, hi))
    ranks = tuple(G.rank for G in groups)
    if (
        maps
        and t.tail in (TailPattern.RANK_LINEAR, TailPattern.RANK_GEOMETRIC)
        and all(G.is_free() for G in groups)
        and all(is_surjective(h) for h in maps)
        and all(a < b for a, b in zip(ranks, ranks[1:]))
    ):
        return ProGroupClass(ProTag.PRO_FREE, ranks=ranks, label="Z^inf",
                             evidence="free, surjective, %s" % t.tail.value)
    return ProGroupClass(ProTag.UNCLASSIFIED, ranks=ranks,
                         evidence="ranks %s on %d..%d" % (list(ranks), lo, hi))


@dataclass(frozen=True)
class MilnorResult:
    """
    0 -> lim^1 K_{1-i} -> RK_i -> lim K_i -> 0, for i = 0, 1
    """

    rk: Tuple[ProGroupClass, ProGroupClass]
    lim: Tuple[ProGroupClass, ProGroupClass]
    lim1: Tuple[Lim1Class, Lim1Class]
    split_justification: Optional[str] = None
    provenance: Tuple[str, ...] = ()

    @property
    def rk0(self):
        return self.rk[0]

    @property
    def rk1(self):
        return self.rk[1]


def milnor_assemble(k0, k1, window=None, provenance=()):
    if (k0.start, k0.end) != (k1.start, k1.end):
        raise ValueError("K0 and K1 towers are indexed differently")
    towers = (k0, k1)
    lim = tuple(lim_classify(t, window) for t in towers)
    # RK_i sees lim^1 of the opposite parity
    lim1 = (lim1_classify(k1, window), lim1_classify(k0, window))
    rk = []
    split = None
    for i in (0, 1):
        if lim1[i].is_zero:
            rk.append(lim[i])
        elif lim[i].is_torsion_free():
            split = "torsion free"
            rk.append(ProGroupClass(
                ProTag.UNCLASSIFIED,
                label="lim1 K%d (+) %s" % (1 - i, lim[i]),
                evidence="split: lim K%d is torsion free" % i,
            ))
        else:
            rk.append(ProGroupClass(
                ProTag.UNCLASSIFIED, evidence="extension of lim K%d by an unknown lim1" % i
            ))
    prov = tuple(provenance) + tuple(p for t in towers for p in t.provenance)
    return MilnorResult(tuple(rk), lim, lim1, split, tuple(dict.fromkeys(prov)))


def sphere_hexagon(prev):
    """
    C(T) (x) K -> C(S^{2n-1}_q) -> C(S^{2n-3}_q), connecting maps zero
    """
    return SixTerm(
        [CIRCLE_COMPACTS_K[0], None, prev[0], CIRCLE_COMPACTS_K[1], None, prev[1]],
        [MapSlot.zero(), MapSlot.unknown(), MapSlot.zero(),
         MapSlot.unknown(), MapSlot.zero(), MapSlot.unknown()],
    )


def cp_hexagon(prev):
    """
    K -> C(CP^n_q) -> C(CP^{n-1}_q)
    """
    return SixTerm([COMPACTS_K[0], None, prev[0], COMPACTS_K[1], None, prev[1]])


def _solve(st, n):
    res = solve_sixterm(st)
    if isinstance(res, UnderdeterminedReport):
        raise RuntimeError("level %d: %s" % (n, res))
    return res


def _induced(solved, i, n):
    h = solved.concrete_map(i)
    if h is None:
        raise RuntimeError("level %d: no map deduced at position %d" % (n, i))
    return h


def _hexagon_tower(name, hexagon, bottom, n_max, tails, bottom_level=None):
    """
    Solve the hexagons level by level; the bottom groups enter the towers
    only when bottom_level is given
    """
    first = 2 if bottom_level is None else bottom_level + 1
    start = first if bottom_level is None else bottom_level
    groups0 = [] if bottom_level is None else [bottom[0]]
    groups1 = [] if bottom_level is None else [bottom[1]]
    maps0, maps1 = {}, {}
    prev = bottom
    for n in range(first, n_max + 1):
        solved = _solve(hexagon(prev), n)
        cur = (solved.nodes[1], solved.nodes[4])
        logger.debug("%s(%d): K0 = %s, K1 = %s", name, n, cur[0], cur[1])
        if n > start:
            maps0[n] = _induced(solved, 1, n)
            maps1[n] = _induced(solved, 4, n)
        groups0.append(cur[0])
        groups1.append(cur[1])
        prev = cur
    return (
        GroupTower("K0(%s)" % name, start, groups0, maps0, tails[0]),
        GroupTower("K1(%s)" % name, start, groups1, maps1, tails[1]),
    )


def sphere_tower(n_max):
    """
    K-theory of S^{2n-1}_q for 2 <= n <= n_max, starting from the circle
    """
    if n_max < 2:
        raise ValueError("n_max must be >= 2")
    return _hexagon_tower(
        "S", sphere_hexagon, CIRCLE_K, n_max, (TailPattern.CONSTANT, TailPattern.CONSTANT)
    )


def cp_tower(n_max):
    """
    K-theory of CP^n_q for 0 <= n <= n_max, starting from CP^0 = point
    """
    if n_max < 1:
        raise ValueError("n_max must be >= 1")
    return _hexagon_tower(
        "CP",
        cp_hexagon,
        (Z, ZERO_GROUP),
        n_max,
        (TailPattern.RANK_LINEAR, TailPattern.CONSTANT),
        bottom_level=0,
    )


def su_tower(n_max):
    from .kring import su_k_tower

    return su_k_tower(n_max)


def plot_tower(ax, tower, **kwargs):
    levels = list(range(tower.start, tower.end + 1))
    ax.bar(levels, tower.ranks(), **kwargs)
    for n, G in zip(levels, tower.groups):
        if G.invariant_factors:
            ax.annotate(str(G), (n, G.rank), ha="center", va="bottom")
    ax.set_xlabel("n")
    ax.set_ylabel("rank")
    ax.set_title(tower.name)
