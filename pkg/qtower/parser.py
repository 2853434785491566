"""
Text formats: polynomial expressions, presentation documents and tower
documents
"""

import itertools
import logging
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Tuple

import lark

from .ncalg import (
    ONE,
    ZERO,
    GenSymbol,
    LaurentInt,
    NCTensorPoly,
    adjoint,
    mul,
    normalize,
    render,
    tensor,
)

logger = logging.getLogger(__name__)


class ParseError(ValueError):
    def __init__(self, message, line=None, column=None):
        self.message, self.line, self.column = message, line, column
        if line is not None:
            message = "Line {0}, column {1}: {2}".format(line, column, message)
        super(ParseError, self).__init__(message)


grammar = r"""
?sum: signed
    | sum "+" signed            -> add
    | sum "-" signed            -> sub

?signed: tensor
    | "-" tensor                -> neg

?tensor: product
    | tensor TENSOR product     -> tensor

?product: factor
    | product "*" factor        -> mul
    | product factor            -> mul

?factor: atom
    | factor "'"                -> adjoint
    | factor "^" SIGNED_INT     -> power

?atom: generator
    | INT                       -> integer
    | "(" sum ")"

generator: NAME ("[" INT ("," INT)* "]")?

expression: _NL? sum _NL?

document: _NL? header (_NL _item)* _NL?
header: "presentation" NAME "level" INT "ring" ring
ring: "laurent" "(" NAME ")"    -> laurent
    | NAME                      -> plain
_item: generators | relation | norm
generators: "generators" gen_range ("," gen_range)*
gen_range: NAME "[" span ("," span)* "]"
         | NAME
span: INT (".." INT)?
relation: "relation" NAME ":" sum
norm: "norm" generator "<=" bound
bound: INT ("/" INT)?

tower: _NL? "tower" NAME (_NL _tower_item)* _NL?
_tower_item: family | sections | levels
family: "family" NAME
sections: "sections" NAME
levels: "levels" INT ".." INT

TENSOR.2: "(x)"
NAME: /[A-Za-z_][A-Za-z0-9_]*/
_NL: /((#[^\n]*)?\r?\n[\t ]*)+/
COMMENT: /#[^\n]*/

%import common.INT
%import common.SIGNED_INT
%import common.WS_INLINE
%ignore WS_INLINE
%ignore COMMENT
"""

_parser = lark.Lark(grammar, parser="lalr", start=["expression", "document", "tower"],
                    propagate_positions=True)


@lark.v_args(inline=True)
class _ToPoly(lark.Transformer):
    def __init__(self, generators=None):
        super().__init__()
        self.generators = generators

    def _pair(self, a, b):
        if a.degree == b.degree:
            return a, b
        if a.is_scalar():
            return a.lift(b.degree), b
        if b.is_scalar():
            return a, b.lift(a.degree)
        raise ValueError("tensor degrees %d and %d do not match" % (a.degree, b.degree))

    def add(self, a, b):
        a, b = self._pair(a, b)
        return a + b

    def sub(self, a, b):
        a, b = self._pair(a, b)
        return a - b

    def neg(self, a):
        return -a

    def tensor(self, a, _, b):
        return tensor(a, b)

    def mul(self, a, b):
        a, b = self._pair(a, b)
        return mul(a, b)

    def adjoint(self, a):
        return adjoint(a)

    def power(self, a, k):
        k = int(k)
        if a.is_scalar() and a.degree == 1:
            return NCTensorPoly.unit(1, a.scalar_value() ** k)
        return a ** k

    def integer(self, tok):
        return NCTensorPoly.unit(1, int(tok))

    def generator(self, name, *indices):
        name = str(name)
        if not indices:
            if name == "q":
                return NCTensorPoly.unit(1, LaurentInt.q())
            if name == "one":
                return NCTensorPoly.unit(1)
            if name == "zero":
                return NCTensorPoly.zero(1)
        g = GenSymbol(name, tuple(int(i) for i in indices))
        if self.generators is not None and g not in self.generators:
            raise ValueError("unknown generator %s" % g)
        return NCTensorPoly.generator(g)

    def expression(self, p):
        return normalize(p)


def _parse(text, start):
    try:
        return _parser.parse(text, start=start)
    except lark.exceptions.UnexpectedInput as e:
        raise ParseError(
            "syntax error\n" + e.get_context(text).rstrip(), e.line, e.column
        ) from None


def _transform(transformer, tree):
    try:
        return transformer.transform(tree)
    except lark.exceptions.VisitError as e:
        meta = getattr(e.obj, "meta", None)
        line = getattr(meta, "line", None) if meta is not None else None
        column = getattr(meta, "column", None) if meta is not None else None
        raise ParseError(str(e.orig_exc), line, column) from None


def parse_expression(text, generators=None):
    """
    Polynomial from text such as u[1,1]*u[2,2] - q*u[1,2]*u[2,1] - 1
    """
    return _transform(_ToPoly(generators), _parse(text, "expression"))


@dataclass
class PresentationDoc:
    name: str
    level: int
    ring: str
    generators: Tuple[GenSymbol, ...]
    relations: Tuple[Tuple[str, NCTensorPoly], ...]
    norms: Tuple[Tuple[GenSymbol, Fraction], ...]


def _expand_range(node):
    name = str(node.children[0])
    spans = []
    for span in node.children[1:]:
        lo = int(span.children[0])
        hi = int(span.children[1]) if len(span.children) > 1 else lo
        if hi < lo:
            raise ParseError("empty range %d..%d" % (lo, hi), span.meta.line, span.meta.column)
        spans.append(range(lo, hi + 1))
    if not spans:
        return [GenSymbol(name)]
    return [GenSymbol(name, idx) for idx in itertools.product(*spans)]


def parse_presentation_doc(text):
    tree = _parse(text, "document")
    header = tree.children[0]
    name, level, ring = header.children
    ring_tag = "laurent(%s)" % ring.children[0] if ring.data == "laurent" else str(ring.children[0])
    if ring_tag not in ("laurent(q)", "int"):
        raise ParseError("unknown ring %s" % ring_tag, header.meta.line, header.meta.column)

    gens = []
    for item in tree.find_data("gen_range"):
        gens.extend(_expand_range(item))
    known = set(gens) | {ONE, ZERO}

    relations, norms, seen = [], [], set()
    to_poly = _ToPoly(known)
    for item in tree.children[1:]:
        if item.data == "relation":
            rid = str(item.children[0])
            if rid in seen:
                raise ParseError("duplicate relation %s" % rid, item.meta.line, item.meta.column)
            seen.add(rid)
            p = normalize(_transform(to_poly, item.children[1]))
            if p.degree != 1:
                raise ParseError("relation %s is a tensor" % rid, item.meta.line, item.meta.column)
            if ring_tag == "int" and any(not c.is_constant() for c in p.terms.values()):
                raise ParseError("q in an integer presentation", item.meta.line, item.meta.column)
            relations.append((rid, p))
        elif item.data == "norm":
            g = _transform(_ToPoly(known), item.children[0])
            words = [w for ws in g.terms for w in ws]
            if len(words) != 1 or len(words[0]) != 1 or words[0][0].is_scalar:
                raise ParseError("norm needs a generator", item.meta.line, item.meta.column)
            bound = item.children[1].children
            value = Fraction(int(bound[0]), int(bound[1]) if len(bound) > 1 else 1)
            norms.append((words[0][0], value))
    return PresentationDoc(
        str(name), int(level), ring_tag, tuple(gens), tuple(relations), tuple(norms)
    )


def parse_presentation(text):
    from .qpres import Presentation

    doc = parse_presentation_doc(text)
    family = doc.generators[0].name if doc.generators else None
    return Presentation(doc.name, doc.level, doc.generators, doc.relations, doc.norms, family)


def _render_generators(gens):
    by_name = {}
    for g in gens:
        by_name.setdefault(g.name, []).append(g.indices)
    parts = []
    for name in sorted(by_name):
        idx = sorted(by_name[name])
        if idx == [()]:
            parts.append(name)
            continue
        dims = len(idx[0])
        lows = [min(i[d] for i in idx) for d in range(dims)]
        highs = [max(i[d] for i in idx) for d in range(dims)]
        full = 1
        for lo, hi in zip(lows, highs):
            full *= hi - lo + 1
        if full == len(idx) and all(len(i) == dims for i in idx):
            spans = ",".join("%d..%d" % (lo, hi) if hi > lo else str(lo) for lo, hi in zip(lows, highs))
            parts.append("%s[%s]" % (name, spans))
        else:
            parts.extend("%s[%s]" % (name, ",".join(str(k) for k in i)) for i in idx)
    return ", ".join(parts)


def render_presentation(p, ring="laurent(q)"):
    lines = ["presentation %s level %d ring %s" % (p.label, p.level, ring)]
    gens = p.matrix_generators()
    if gens:
        lines.append("generators " + _render_generators(gens))
    for rid, rel in p.alg_relations:
        lines.append("relation %s: %s" % (rid, render(rel)))
    for g, bound in p.norm_relations:
        lines.append("norm %s <= %s" % (g, bound))
    return "\n".join(lines) + "\n"


@dataclass
class TowerDoc:
    name: str
    family: str = "u"
    sections: str = "none"
    levels: Optional[Tuple[int, int]] = None


def parse_tower(text):
    tree = _parse(text, "tower")
    doc = TowerDoc(str(tree.children[0]))
    for item in tree.children[1:]:
        value = [str(x) for x in item.children]
        if item.data == "family":
            if value[0] not in ("u", "w"):
                raise ParseError("unknown family %s" % value[0], item.meta.line, item.meta.column)
            doc.family = value[0]
        elif item.data == "sections":
            if value[0] not in ("naive", "none"):
                raise ParseError("unknown sections %s" % value[0], item.meta.line, item.meta.column)
            doc.sections = value[0]
        else:
            doc.levels = (int(value[0]), int(value[1]))
    return doc


def render_tower(doc):
    lines = ["tower %s" % doc.name, "family %s" % doc.family, "sections %s" % doc.sections]
    if doc.levels is not None:
        lines.append("levels %d..%d" % doc.levels)
    return "\n".join(lines) + "\n"


def build_tower(doc, window=None):
    """
    PresentationTower described by a tower document over the given window
    """
    from .qpres import su_q_tower, w_tower

    lo, hi = window or doc.levels or (None, None)
    if lo is None:
        raise ValueError("tower %s needs a level range" % doc.name)
    if doc.family == "w":
        if doc.sections != "naive":
            raise NotImplementedError("the w-tower always carries its sections")
        return w_tower(lo, hi)
    return su_q_tower(lo, hi, sections=doc.sections == "naive")
