"""
Presented quantum groups SU_q(n), the w-tower, their morphisms and the
symbolic verification suites run on them
"""

import os
import logging
import itertools
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from functools import cached_property, lru_cache
from typing import Dict, Tuple

from .ncalg import (
    ONE,
    ZERO,
    GenSymbol,
    LaurentInt,
    NCTensorPoly,
    ReductionStatus,
    RuleOrientationError,
    UnassignedGeneratorError,
    adjoint,
    apply_morphism,
    mul,
    normalize,
    orient,
    poly_equal,
    reduce,
    tensor,
)

logger = logging.getLogger(__name__)

DEFAULT_JOBS = int(os.getenv("QTOWER_JOBS", "1"))
MAX_THETA_IDEAL_LEVEL = 5


def inversion_length(seq):
    if len(set(seq)) != len(seq):
        raise ValueError("Repeated entries in %s" % (tuple(seq),))
    return sum(1 for i, j in itertools.combinations(range(len(seq)), 2) if seq[i] > seq[j])


def e_symbol(seq, n):
    """
    q-deformed Levi-Civita symbol: (-q)^l(seq) on distinct entries, else 0
    """
    for i in seq:
        if not 1 <= i <= n:
            raise ValueError("Index %d out of range 1..%d" % (i, n))
    if len(set(seq)) != len(seq):
        return LaurentInt()
    k = inversion_length(seq)
    return LaurentInt({k: (-1) ** k})


def matrix_generators(name, n):
    return [GenSymbol(name, (i, j)) for i in range(1, n + 1) for j in range(1, n + 1)]


class Presentation:
    """
    Generators and relations (G, R) of a universal *-algebra. Algebraic
    relations may be given lazily as a callable; norm records are metadata
    and never enter the rewriting.
    """

    def __init__(
        self, label, level, generators, relations=(), norm_relations=(), family=None
    ):
        self.label = label
        self.level = level
        self.family = family
        self.generators = frozenset(generators) | {ONE, ZERO}
        self._relations = relations
        self.norm_relations = tuple(norm_relations)
        self._norm_bounds = {g: Fraction(b) for g, b in self.norm_relations}

    @property
    def key(self):
        return (self.label, self.level)

    @cached_property
    def alg_relations(self):
        src = self._relations() if callable(self._relations) else self._relations
        res = []
        for rid, rel in src:
            rel = normalize(rel)
            if rel.is_zero():
                logger.debug("%s(%d): dropped relation %s (zero)", self.label, self.level, rid)
                continue
            res.append((rid, rel))
        logger.debug("%s(%d): %d relations", self.label, self.level, len(res))
        return tuple(res)

    @cached_property
    def rules(self):
        res = []
        for rid, rel in self.alg_relations:
            try:
                res.append(orient(rel, rid))
            except RuleOrientationError as e:
                logger.warning("Skipping relation: %s", e)
        return tuple(res)

    def matrix_generators(self):
        return sorted((g for g in self.generators if not g.is_scalar), key=_gen_sort_key)

    def sorted_generators(self):
        return self.matrix_generators() + [ONE, ZERO]

    def norm_bound(self, g):
        return self._norm_bounds.get(g)

    def __repr__(self):
        return "Presentation(%s, level=%d, %d generators)" % (
            self.label,
            self.level,
            len(self.generators),
        )


def _gen_sort_key(g):
    return (g.name, g.indices, g.starred)


def trivial_presentation(family="u"):
    """
    Level 1 bottom of a matrix tower: only the unit and zero survive
    """
    return Presentation("%s_trivial" % family, 1, (), (), family=family)


def _suq_relations(n, name="u"):
    u = {(i, j): GenSymbol(name, (i, j)) for i in range(1, n + 1) for j in range(1, n + 1)}
    idx = range(1, n + 1)
    for i, j in itertools.product(idx, repeat=2):
        delta = 1 if i == j else 0
        row = {((u[i, k], u[j, k].star()),): 1 for k in idx}
        col = {((u[k, i].star(), u[k, j]),): 1 for k in idx}
        if delta:
            row[((),)] = -1
            col[((),)] = -1
        yield "U_row_%d_%d" % (i, j), NCTensorPoly(1, row)
        yield "U_col_%d_%d" % (i, j), NCTensorPoly(1, col)

    perms = list(itertools.permutations(idx))
    signs = [e_symbol(p, n) for p in perms]
    for js in itertools.product(idx, repeat=n):
        terms = {}
        for perm, e in zip(perms, signs):
            terms[(tuple(u[j, i] for j, i in zip(js, perm)),)] = e
        rhs = e_symbol(js, n)
        if rhs:
            terms[((),)] = -rhs
        yield "E_" + "_".join(str(j) for j in js), NCTensorPoly(1, terms)


@lru_cache(maxsize=None)
def build_suq(n):
    if n < 2:
        raise ValueError("SU_q(n) is presented for n >= 2, got %d" % n)
    return Presentation(
        "su_q", n, matrix_generators("u", n), lambda: list(_suq_relations(n)), family="u"
    )


@lru_cache(maxsize=None)
def build_w_presentation(n):
    if n < 2:
        raise ValueError("The w-tower starts at n = 2, got %d" % n)
    gens = matrix_generators("w", n)
    return Presentation("w", n, gens, (), [(g, Fraction(1)) for g in gens], family="w")


def build_circle():
    """
    Universal C*-algebra generated by a unitary x
    """
    x = GenSymbol("x")
    rels = [
        ("circle_right", NCTensorPoly(1, {((x, x.star()),): 1, ((),): -1})),
        ("circle_left", NCTensorPoly(1, {((x.star(), x),): 1, ((),): -1})),
    ]
    return Presentation("circle", 1, [x], rels, family="x")


def level_presentation(family, n):
    if n == 1:
        return _trivial(family)
    if family == "u":
        return build_suq(n)
    if family == "w":
        return build_w_presentation(n)
    raise ValueError("Unknown family %s" % family)


@lru_cache(maxsize=None)
def _trivial(family):
    return trivial_presentation(family)


class AlgebraMorphism:
    """
    *-homomorphism given by generator images; image(g*) is the adjoint of
    image(g)
    """

    def __init__(self, name, source, target, assignment, image_degree=1):
        self.name = name
        self.source = source
        self.target = target
        self.image_degree = image_degree
        self.assignment = dict(assignment)
        self.assignment.setdefault(ONE, NCTensorPoly.unit(image_degree))
        self.assignment.setdefault(ZERO, NCTensorPoly.zero(image_degree))
        for g, img in self.assignment.items():
            if g.starred:
                raise ValueError("%s: assign unstarred generators only" % name)
            if img.degree != image_degree:
                raise ValueError(
                    "%s: image of %s has degree %d, expected %d"
                    % (name, g, img.degree, image_degree)
                )
        missing = source.generators - set(self.assignment)
        if missing:
            raise UnassignedGeneratorError(
                "%s: no image for %s" % (name, ", ".join(sorted(str(g) for g in missing)))
            )
        self._adjoints = {}

    def image(self, g):
        base = g.unstarred()
        try:
            img = self.assignment[base]
        except KeyError:
            raise UnassignedGeneratorError("%s: no image for %s" % (self.name, g))
        if not g.starred:
            return img
        res = self._adjoints.get(base)
        if res is None:
            res = adjoint(img)
            self._adjoints[base] = res
        return res

    def __call__(self, p, leg=None):
        return apply_morphism(self, p, leg)

    def __repr__(self):
        return "AlgebraMorphism(%s: %s -> %s)" % (self.name, self.source.key, self.target.key)


def _truncation(name, source, target):
    family = source.family
    assignment = {}
    for g in source.matrix_generators():
        i, j = g.indices
        h = GenSymbol(family, (i, j))
        # the level 1 target has no matrix generators: theta_2 is the counit
        if h in target.generators:
            assignment[g] = NCTensorPoly.generator(h)
        elif i == j:
            assignment[g] = NCTensorPoly.unit()
        else:
            assignment[g] = NCTensorPoly.zero()
    return AlgebraMorphism(name, source, target, assignment)


@lru_cache(maxsize=None)
def build_theta(n, family="u"):
    if n < 2:
        raise ValueError("theta_n is defined for n >= 2, got %d" % n)
    source = level_presentation(family, n)
    target = level_presentation(family, n - 1)
    return _truncation("theta_%d" % n, source, target)


@lru_cache(maxsize=None)
def build_delta(n, family="u"):
    if n < 1:
        raise ValueError("Invalid level %d" % n)
    pres = level_presentation(family, n)
    assignment = {}
    for g in pres.matrix_generators():
        i, j = g.indices
        img = NCTensorPoly.zero(2)
        for k in range(1, n + 1):
            img = img + NCTensorPoly.monomial(
                (GenSymbol(family, (i, k)),), (GenSymbol(family, (k, j)),)
            )
        assignment[g] = img
    return AlgebraMorphism("delta_%d" % n, pres, pres, assignment, image_degree=2)


@lru_cache(maxsize=None)
def build_pi(n):
    if n < 1:
        raise ValueError("Invalid level %d" % n)
    source = level_presentation("w", n)
    target = level_presentation("u", n)
    assignment = {
        g: NCTensorPoly.generator(GenSymbol("u", g.indices))
        for g in source.matrix_generators()
    }
    return AlgebraMorphism("pi_%d" % n, source, target, assignment)


class Status(Enum):
    VERIFIED = "Verified"
    REFUTED = "RefutedAtNormalForm"
    UNKNOWN = "Unknown"


_FROM_REDUCTION = {
    ReductionStatus.REDUCED_TO_ZERO: Status.VERIFIED,
    ReductionStatus.NORMAL_FORM: Status.REFUTED,
    ReductionStatus.STEP_LIMIT: Status.UNKNOWN,
}


@dataclass(frozen=True)
class ItemOutcome:
    item_id: str
    status: Status
    steps: int = 0
    detail: str = ""


@dataclass
class VerificationReport:
    task: str
    levels: Tuple[int, ...]
    items: Tuple[ItemOutcome, ...]

    def __post_init__(self):
        self.items = tuple(sorted(self.items, key=lambda x: x.item_id))
        self.levels = tuple(self.levels)

    @property
    def summary(self):
        res = {s.value: 0 for s in Status}
        for item in self.items:
            res[item.status.value] += 1
        res["total"] = len(self.items)
        return res

    def count(self, status):
        return sum(1 for x in self.items if x.status is status)

    def all_verified(self):
        return all(x.status is Status.VERIFIED for x in self.items)

    def to_dict(self):
        return {
            "task": self.task,
            "level": list(self.levels),
            "items": [
                {"id": x.item_id, "status": x.status.value, "steps": x.steps}
                for x in self.items
            ],
            "summary": self.summary,
        }

    def to_text(self, verbose=False):
        lines = ["%s (level %s)" % (self.task, ", ".join(str(n) for n in self.levels))]
        for x in self.items:
            if verbose or x.status is not Status.VERIFIED:
                line = "  %-40s %-20s %d" % (x.item_id, x.status.value, x.steps)
                if x.detail:
                    line += "  " + x.detail
                lines.append(line)
        s = self.summary
        lines.append(
            "%d/%d Verified, %d refuted, %d unknown"
            % (s["Verified"], s["total"], s["RefutedAtNormalForm"], s["Unknown"])
        )
        return "\n".join(lines)


def _map_items(fn, items, jobs):
    jobs = DEFAULT_JOBS if jobs is None else jobs
    if jobs > 1:
        with ThreadPoolExecutor(max_workers=jobs) as executor:
            return list(executor.map(fn, items))
    return [fn(x) for x in items]


def _equality_item(item_id, lhs, rhs):
    status = Status.VERIFIED if poly_equal(lhs, rhs) else Status.REFUTED
    logger.debug("%s: %s", item_id, status.value)
    return ItemOutcome(item_id, status)


def verify_coassoc(n, step_limit=None, jobs=None, family="u"):
    delta = build_delta(n, family)

    def check(g):
        d = delta(NCTensorPoly.generator(g))
        return _equality_item(str(g), delta(d, leg=0), delta(d, leg=1))

    items = _map_items(check, delta.source.sorted_generators(), jobs)
    report = VerificationReport("coassoc", (n,), items)
    logger.info("coassoc(%d): %s", n, report.summary)
    return report


def verify_square(n, step_limit=None, jobs=None, family="u"):
    theta = build_theta(n, family)
    delta_n = build_delta(n, family)
    delta_m = build_delta(n - 1, family)

    def check(g):
        x = NCTensorPoly.generator(g)
        return _equality_item(str(g), delta_m(theta(x)), theta(delta_n(x)))

    items = _map_items(check, theta.source.sorted_generators(), jobs)
    report = VerificationReport("square", (n, n - 1), items)
    logger.info("square(%d): %s", n, report.summary)
    return report


def verify_delta_star(n, family="u"):
    """
    Delta commutes with the involution and is multiplicative on g g*
    """
    delta = build_delta(n, family)
    items = []
    for g in delta.source.sorted_generators():
        x = NCTensorPoly.generator(g)
        dx = delta(x)
        items.append(_equality_item("star:%s" % g, delta(adjoint(x)), adjoint(dx)))
        items.append(
            _equality_item("mul:%s" % g, delta(mul(x, adjoint(x))), mul(dx, adjoint(dx)))
        )
    return VerificationReport("delta-star", (n,), items)


def verify_pi_square(n):
    theta_u = build_theta(n, "u")
    theta_w = build_theta(n, "w")
    pi_n = build_pi(n)
    pi_m = build_pi(n - 1)
    items = []
    for g in pi_n.source.sorted_generators():
        x = NCTensorPoly.generator(g)
        items.append(_equality_item(str(g), theta_u(pi_n(x)), pi_m(theta_w(x))))
    return VerificationReport("pi-square", (n, n - 1), items)


def _reduction_item(item_id, p, rules, step_limit, leg_rules=None):
    if normalize(p).is_zero():
        return ItemOutcome(item_id, Status.VERIFIED)
    outcome = reduce(p, rules, step_limit=step_limit, leg_rules=leg_rules)
    status = _FROM_REDUCTION[outcome.status]
    detail = str(outcome.result) if status is Status.REFUTED else ""
    logger.debug("%s: %s after %d steps", item_id, status.value, outcome.steps)
    return ItemOutcome(item_id, status, outcome.steps, detail)


def verify_theta_ideal(n, step_limit=None, jobs=None, family="u", allow_large=False):
    if n > MAX_THETA_IDEAL_LEVEL and not allow_large:
        raise ValueError(
            "theta-ideal above n = %d needs allow_large" % MAX_THETA_IDEAL_LEVEL
        )
    theta = build_theta(n, family)
    rules = theta.target.rules

    def check(item):
        rid, rel = item
        return _reduction_item(rid, theta(rel), rules, step_limit)

    items = _map_items(check, theta.source.alg_relations, jobs)
    report = VerificationReport("theta-ideal", (n, n - 1), items)
    logger.info("theta-ideal(%d): %s", n, report.summary)
    return report


class PresentationTower:
    """
    Presentations indexed by level, down maps level n -> n-1 and optional
    set-theoretic sections s_m: G_m -> G_{m+1}
    """

    def __init__(self, name, levels, down_maps, sections=None):
        self.name = name
        self.levels = dict(levels)
        self.down_maps = dict(down_maps)
        self.sections = None if sections is None else {m: dict(s) for m, s in sections.items()}
        for n, m in self.down_maps.items():
            if m.source is not self.levels[n] or m.target is not self.levels[n - 1]:
                raise ValueError("%s: down map %s is not level %d -> %d" % (name, m, n, n - 1))

    @property
    def n_min(self):
        return min(self.levels)

    @property
    def n_max(self):
        return max(self.levels)

    def level(self, n):
        try:
            return self.levels[n]
        except KeyError:
            raise ValueError("%s has no level %d" % (self.name, n))

    def down_map(self, n):
        try:
            return self.down_maps[n]
        except KeyError:
            raise ValueError("%s has no map from level %d" % (self.name, n))

    def theta_symbol(self, n, g):
        if g.is_scalar:
            return g
        img = self.down_map(n).image(g)
        if img.is_zero():
            return ZERO
        ((words, c),) = img.terms.items()
        (w,) = words
        if c != 1 or len(w) > 1:
            raise ValueError("%s: theta_%d(%s) is not a generator" % (self.name, n, g))
        return w[0] if w else ONE

    def section_symbol(self, m, g):
        if self.sections is None:
            raise ValueError("%s has no sections" % self.name)
        if g.is_scalar:
            return g
        try:
            return self.sections[m][g]
        except KeyError:
            raise ValueError("%s: no section for %s at level %d" % (self.name, g, m))

    def move(self, i, g, t):
        """
        Image of g in G_i at level t through iterated thetas (t < i) or
        sections (t > i)
        """
        h = g
        for n in range(i, t, -1):
            h = self.theta_symbol(n, h)
        for m in range(i, t):
            h = self.section_symbol(m, h)
        return h

    def window(self, window=None):
        if window is None:
            return self.n_min, self.n_max
        lo, hi = window
        if lo > hi or lo < self.n_min or hi > self.n_max:
            raise ValueError(
                "Window %d..%d outside %d..%d" % (lo, hi, self.n_min, self.n_max)
            )
        return lo, hi


def _naive_sections(family, n_min, n_max):
    res = {}
    for m in range(n_min, n_max):
        res[m] = {
            g: GenSymbol(family, g.indices)
            for g in level_presentation(family, m).matrix_generators()
        }
    return res


def su_q_tower(n_min, n_max, sections=True):
    if n_min < 1 or n_max < n_min:
        raise ValueError("Invalid range %d..%d" % (n_min, n_max))
    levels = {n: level_presentation("u", n) for n in range(n_min, n_max + 1)}
    maps = {n: build_theta(n, "u") for n in range(n_min + 1, n_max + 1)}
    secs = _naive_sections("u", n_min, n_max) if sections else None
    return PresentationTower("su_q", levels, maps, secs)


def w_tower(n_min, n_max):
    if n_min < 1 or n_max < n_min:
        raise ValueError("Invalid range %d..%d" % (n_min, n_max))
    levels = {n: level_presentation("w", n) for n in range(n_min, n_max + 1)}
    maps = {n: build_theta(n, "w") for n in range(n_min + 1, n_max + 1)}
    return PresentationTower("w", levels, maps, _naive_sections("w", n_min, n_max))


def gamma_split(tower, i, g, window=None):
    lo, hi = tower.window(window)
    if tower.sections is None:
        raise ValueError("%s has no sections" % tower.name)
    if g not in tower.level(i).generators:
        raise ValueError("%s is not a generator of level %d" % (g, i))
    return {t: tower.move(i, g, t) for t in range(lo, hi + 1)}


def check_sections(tower, window=None):
    lo, hi = tower.window(window)
    items = []
    for m in range(lo, hi):
        for g in tower.level(m).sorted_generators():
            back = tower.theta_symbol(m + 1, tower.section_symbol(m, g))
            status = Status.VERIFIED if back == g else Status.REFUTED
            items.append(ItemOutcome("S%d:%s" % (m, g), status))
    return VerificationReport("sections", tuple(range(lo, hi + 1)), items)


def check_hypothesis_b(tower, window=None, step_limit=None, jobs=None):
    lo, hi = tower.window(window)
    if tower.sections is None:
        raise ValueError("%s has no sections" % tower.name)
    pairs = list(itertools.product(range(lo, hi + 1), repeat=2))
    # rule sets are cached lazily; build them before any worker thread runs
    for n in range(lo, hi + 1):
        tower.level(n).rules

    def check(pair):
        i, t = pair
        source, target = tower.level(i), tower.level(t)
        images = {g: tower.move(i, g, t) for g in source.generators}
        gamma = AlgebraMorphism(
            "gamma_%d_%d" % (i, t),
            source,
            target,
            {g: NCTensorPoly.generator(h) for g, h in images.items()},
        )
        res = []
        for rid, rel in source.alg_relations:
            res.append(
                _reduction_item(
                    "R%d->%d:%s" % (i, t, rid), gamma(rel), target.rules, step_limit
                )
            )
        for g, bound in source.norm_relations:
            h = images[g]
            image_bound = target.norm_bound(h)
            ok = h.is_scalar or (image_bound is not None and image_bound <= bound)
            res.append(
                ItemOutcome(
                    "N%d->%d:%s" % (i, t, g), Status.VERIFIED if ok else Status.REFUTED
                )
            )
        return res

    items = [x for chunk in _map_items(check, pairs, jobs) for x in chunk]
    report = VerificationReport("hypothesis-b", tuple(range(lo, hi + 1)), items)
    logger.info("hypothesis-b(%s): %s", tower.name, report.summary)
    return report


@dataclass
class TwoTowerLink:
    """
    Compatible maps theta'_n: A_n -> B_n, where B_n is the level n - shift
    of b_tower
    """

    name: str
    a_tower: PresentationTower
    b_tower: PresentationTower
    link_maps: Dict[int, AlgebraMorphism]
    shift: int = 1
    family: str = "u"

    def link_map(self, n):
        try:
            return self.link_maps[n]
        except KeyError:
            raise ValueError("%s has no link map at level %d" % (self.name, n))

    def samples(self, n):
        """
        Elements of the homogeneous space at level n
        """
        a = self.a_tower.level(n)
        last_row = [NCTensorPoly.generator(GenSymbol(a.family, (n, j))) for j in range(1, n + 1)]
        if self.name == "sphere":
            return [("u[%d,%d]" % (n, j + 1), f) for j, f in enumerate(last_row)]
        res = []
        for i, j in itertools.product(range(n), repeat=2):
            label = "u[%d,%d]'*u[%d,%d]" % (n, i + 1, n, j + 1)
            res.append((label, mul(adjoint(last_row[i]), last_row[j])))
        return res


def _link(name, n_max):
    if n_max < 2:
        raise ValueError("Links need n_max >= 2, got %d" % n_max)
    a = su_q_tower(2, n_max, sections=False)
    b = su_q_tower(1, n_max - 1, sections=False)
    return TwoTowerLink(name, a, b, {n: build_theta(n) for n in range(2, n_max + 1)})


def sphere_link(n_max):
    """
    S^{2n-1}_q as the invariants of SU_q(n) under SU_q(n-1)
    """
    return _link("sphere", n_max)


def cp_link(n_max):
    """
    Same quotient maps; the samples are the generators v_i* v_j of
    CP^{n-1}_q
    """
    return _link("cp", n_max)


def _check_level(f, pres):
    unknown = {g for g in f.generators() if g not in pres.generators}
    if f.degree != 1 or unknown:
        raise ValueError(
            "Element is not in level %d of %s" % (pres.level, pres.label)
        )


def coaction_defect(f, link, n, side="left"):
    a = link.a_tower.level(n)
    _check_level(f, a)
    theta = link.link_map(n)
    d = build_delta(n, link.family)(f)
    one = NCTensorPoly.unit()
    if side == "left":
        return apply_morphism(theta, d, leg=0) - tensor(one, f)
    if side == "right":
        return apply_morphism(theta, d, leg=1) - tensor(f, one)
    raise ValueError("Invalid side %s" % side)


def _coaction_item(item_id, f, link, n, step_limit, side):
    g = coaction_defect(f, link, n, side)
    a = link.a_tower.level(n)
    b = link.link_map(n).target
    leg_rules = [b.rules, a.rules] if side == "left" else [a.rules, b.rules]
    return _reduction_item(item_id, g, (), step_limit, leg_rules)


def coaction_invariant(f, link, n, step_limit=None, side="left"):
    return _coaction_item("f", f, link, n, step_limit, side).status


def verify_hs_restriction(link, n, samples=None, step_limit=None, side="left"):
    if samples is None:
        samples = link.samples(n)
    theta = link.a_tower.down_map(n)
    items = []
    for label, f in samples:
        pre = _coaction_item("pre:%s" % label, f, link, n, step_limit, side)
        if pre.status is not Status.VERIFIED:
            logger.warning("%s is not invariant at level %d", label, n)
        items.append(pre)
        items.append(_coaction_item(label, theta(f), link, n - 1, step_limit, side))
    return VerificationReport("hs-restriction", (n, n - 1), items)


def verify_link(link, n):
    """
    psi_n theta'_n = theta'_{n-1} theta_n and theta' intertwines the
    comultiplications, on the generators of A_n
    """
    a = link.a_tower.level(n)
    theta_a = link.a_tower.down_map(n)
    link_n = link.link_map(n)
    link_m = link.link_map(n - 1)
    psi = link.b_tower.down_map(n - link.shift)
    delta_a = build_delta(n, link.family)
    delta_b = build_delta(n - link.shift, link.family)
    items = []
    for g in a.sorted_generators():
        x = NCTensorPoly.generator(g)
        items.append(_equality_item("diag2:%s" % g, psi(link_n(x)), link_m(theta_a(x))))
        items.append(_equality_item("diag3:%s" % g, link_n(delta_a(x)), delta_b(link_n(x))))
    return VerificationReport("link-%s" % link.name, (n, n - 1), items)


def plot_report(ax, report):
    counts = report.summary
    labels = [s.value for s in Status]
    colors = {"Verified": "tab:green", "RefutedAtNormalForm": "tab:red", "Unknown": "tab:gray"}
    ax.bar(labels, [counts[s] for s in labels], color=[colors[s] for s in labels])
    ax.set_title("%s (n = %s)" % (report.task, ", ".join(str(n) for n in report.levels)))
    ax.set_ylabel("items")
