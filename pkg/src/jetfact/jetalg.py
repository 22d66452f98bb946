"""Finitely generated commutative differential algebras of jets.

A presentation lists generator names, relation elements, and a truncation
bound.  The free object on generators x, y, ... has one variable per
(generator, order) pair; the derivation bumps orders by one and extends by
the Leibniz rule, and the weight of a monomial is the sum of (order + 1)
over its factors.

Quotients are handled by saturating the differential ideal degree by
degree up to the truncation bound: relation jets are multiplied by all
monomials that keep the weight in range and the resulting span is put in
reduced row-echelon form under a fixed monomial order.  Reduction against
that echelon basis gives canonical normal forms.  Relations whose jets are
weight-homogeneous (relations of the degree-zero algebra always are) make
the quotient genuinely graded; inhomogeneous relations are accepted but
the grading then reflects leading structure only, which is a documented
restriction of the truncated model.

Presentations are immutable after construction.  The internal caches
(normal forms of monomials, weight bases) are idempotent, so concurrent
readers at worst recompute a value; no synchronization is required.
"""

from __future__ import annotations

import json

from .exprs import parse_element, unparse_element
from .grading import GradedElement, format_element
from .scalars import Scalar
from ._kernels import lc_derive, lc_mul, mono_weight

__all__ = [
    "AlgebraPresentation",
    "AlgebraHom",
    "DifferentialHom",
    "LiftError",
    "multiply",
    "derive",
    "weight_basis",
    "lift_hom",
]


def _order_key(mono):
    return (mono_weight(mono), mono)


class AlgebraPresentation:
    """Generators, relations, and truncation bound of a jet algebra."""

    def __init__(self, generators, relations=(), max_weight: int = 6):
        generators = tuple(generators)
        if len(set(generators)) != len(generators):
            raise ValueError("generator names must be distinct")
        if max_weight < 0:
            raise ValueError("max_weight must be non-negative")
        self.generators = generators
        self.wmax = max_weight
        rels = []
        for r in relations:
            if isinstance(r, str):
                r = parse_element(r, generators, max_weight)
            if not r.generators() <= set(generators):
                raise ValueError("relation uses undeclared generators")
            if r:
                rels.append(r)
        self.relations = tuple(rels)
        self._pivots = {}
        self._basis_cache = {}
        self._mono_nf = {}
        if rels:
            self._build_reducer()

    # -- reduction engine ------------------------------------------------------

    def _build_reducer(self):
        jets = []
        for rel in self.relations:
            cur = dict(rel.data)
            while cur:
                jets.append(cur)
                cur = lc_derive(cur, self.wmax)
        rows = []
        for jet in jets:
            mw = min(mono_weight(m) for m in jet)
            for mono in self._monomials_up_to(self.wmax - mw):
                row = lc_mul({mono: Scalar(1)}, jet, self.wmax)
                if row:
                    rows.append(row)
        for row in rows:
            row = self._reduce_data(row)
            if not row:
                continue
            lead = max(row, key=_order_key)
            inv = Scalar(1) / row[lead]
            row = {m: c * inv for m, c in row.items()}
            for prow in self._pivots.values():
                c = prow.get(lead)
                if c is None:
                    continue
                for m, v in row.items():
                    acc = prow.get(m)
                    nv = -(c * v) if acc is None else acc - c * v
                    if nv:
                        prow[m] = nv
                    else:
                        prow.pop(m, None)
            self._pivots[lead] = row

    def _reduce_data(self, data: dict) -> dict:
        if not self._pivots:
            return data
        data = dict(data)
        while True:
            hits = [m for m in data if m in self._pivots]
            if not hits:
                return data
            m = max(hits, key=_order_key)
            c = data.pop(m)
            for pm, pv in self._pivots[m].items():
                if pm == m:
                    continue
                acc = data.get(pm)
                nv = -(c * pv) if acc is None else acc - c * pv
                if nv:
                    data[pm] = nv
                else:
                    data.pop(pm, None)

    def normal_form(self, elem: GradedElement) -> GradedElement:
        self._check_element(elem)
        return GradedElement._make(self._reduce_data(elem.data), self.wmax)

    def reduce_monomial(self, mono) -> GradedElement:
        """Cached normal form of a single free monomial.

        The hot path of the section layer: grouped tensor factors multiply
        into one free monomial whose reduction is shared across keys.
        """
        out = self._mono_nf.get(mono)
        if out is None:
            if mono_weight(mono) > self.wmax:
                out = GradedElement.zero(self.wmax)
            else:
                out = GradedElement._make(
                    self._reduce_data({mono: Scalar(1)}), self.wmax
                )
            self._mono_nf[mono] = out
        return out

    # -- element constructors ------------------------------------------------

    def unit(self) -> GradedElement:
        return GradedElement.one(self.wmax)

    def zero(self) -> GradedElement:
        return GradedElement.zero(self.wmax)

    def gen(self, name: str, order: int = 0) -> GradedElement:
        if name not in self.generators:
            raise ValueError(f"unknown generator {name!r}")
        return self.normal_form(GradedElement.generator(name, order, self.wmax))

    def parse(self, text: str) -> GradedElement:
        return self.normal_form(parse_element(text, self.generators, self.wmax))

    def _check_element(self, elem: GradedElement):
        if elem.wmax != self.wmax:
            raise ValueError(
                f"element truncation {elem.wmax} does not match presentation {self.wmax}"
            )
        extra = elem.generators() - set(self.generators)
        if extra:
            raise ValueError(f"element uses undeclared generators {sorted(extra)}")

    # -- ring operations ---------------------------------------------------------

    def multiply(self, a: GradedElement, b: GradedElement) -> GradedElement:
        self._check_element(a)
        self._check_element(b)
        prod = lc_mul(a.data, b.data, self.wmax)
        return GradedElement._make(self._reduce_data(prod), self.wmax)

    def product(self, elements) -> GradedElement:
        out = self.unit()
        for e in elements:
            out = self.multiply(out, e)
        return out

    def derive(self, a: GradedElement, times: int = 1) -> GradedElement:
        self._check_element(a)
        data = a.data
        for _ in range(times):
            data = self._reduce_data(lc_derive(data, self.wmax))
        return GradedElement._make(data, self.wmax)

    # -- graded bases ---------------------------------------------------------

    def _monomials_up_to(self, bound: int):
        out = []
        for delta in range(0, max(bound, 0) + 1):
            out.extend(self._free_monomials(delta))
        return out

    def _free_monomials(self, delta: int):
        """All free monomials of exact weight delta in canonical factor order."""
        if delta < 0:
            return []
        if delta == 0:
            return [()]
        factors = [
            (g, m) for g in sorted(self.generators) for m in range(delta - 1, -1, -1)
        ]
        out = []
        acc = []

        def rec(start, remaining):
            if remaining == 0:
                out.append(tuple(acc))
                return
            for idx in range(start, len(factors)):
                cost = factors[idx][1] + 1
                if cost > remaining:
                    continue
                acc.append(factors[idx])
                rec(idx, remaining - cost)
                acc.pop()

        rec(0, delta)
        return out

    def weight_basis(self, delta: int):
        """Monomial basis of the weight-delta component, modulo relations."""
        if delta < 0:
            return []
        if delta > self.wmax:
            raise ValueError(f"weight {delta} exceeds truncation bound {self.wmax}")
        if delta not in self._basis_cache:
            self._basis_cache[delta] = [
                m for m in self._free_monomials(delta) if m not in self._pivots
            ]
        return list(self._basis_cache[delta])

    def dims(self, upto=None):
        upto = self.wmax if upto is None else upto
        return [len(self.weight_basis(d)) for d in range(upto + 1)]

    def basis_monomials(self):
        """Concatenated weight bases for all weights up to the bound."""
        out = []
        for delta in range(self.wmax + 1):
            out.extend(self.weight_basis(delta))
        return out

    def coordinates(self, elem: GradedElement):
        """Exact coordinates of normal_form(elem) over basis_monomials()."""
        nf = self.normal_form(elem)
        index = {m: i for i, m in enumerate(self.basis_monomials())}
        vec = [Scalar(0)] * len(index)
        for mono, coeff in nf.data.items():
            vec[index[mono]] = coeff
        return vec

    # -- serialization ---------------------------------------------------------

    def to_json(self) -> dict:
        return {
            "generators": list(self.generators),
            "relations": [unparse_element(r) for r in self.relations],
            "max_weight": self.wmax,
        }

    @classmethod
    def from_json(cls, doc: dict) -> "AlgebraPresentation":
        return cls(
            doc["generators"],
            doc.get("relations", ()),
            int(doc.get("max_weight", 6)),
        )

    @classmethod
    def from_file(cls, path) -> "AlgebraPresentation":
        with open(path, "r", encoding="utf-8") as fh:
            return cls.from_json(json.load(fh))

    def __repr__(self):
        rels = ", ".join(format_element(r) for r in self.relations)
        return (
            f"<AlgebraPresentation gens={list(self.generators)} "
            f"relations=[{rels}] W={self.wmax}>"
        )

    def __eq__(self, other):
        if not isinstance(other, AlgebraPresentation):
            return NotImplemented
        return (
            self.generators == other.generators
            and self.wmax == other.wmax
            and [r.data for r in self.relations] == [r.data for r in other.relations]
        )

    def __hash__(self):
        return hash((self.generators, self.wmax, len(self.relations)))


def multiply(a: GradedElement, b: GradedElement, P: AlgebraPresentation) -> GradedElement:
    """Commutative product in the quotient algebra, truncated at the bound."""
    return P.multiply(a, b)


def derive(a: GradedElement, P: AlgebraPresentation) -> GradedElement:
    """Leibniz derivation: bumps every jet order, raising weight by one."""
    return P.derive(a)


def weight_basis(P: AlgebraPresentation, delta: int):
    return P.weight_basis(delta)


class AlgebraHom:
    """Unital algebra morphism between presentations, given on variables.

    images maps (generator, order) pairs to target elements; monomials map
    to products of variable images and the map extends linearly.
    """

    def __init__(self, source: AlgebraPresentation, target: AlgebraPresentation, images):
        self.source = source
        self.target = target
        self._images = dict(images)
        self._mono_cache = {(): target.unit()}

    def image_of_variable(self, gen: str, order: int) -> GradedElement:
        try:
            return self._images[(gen, order)]
        except KeyError:
            raise KeyError(f"no image assigned for variable {gen}^({order})") from None

    def _image_of_monomial(self, mono) -> GradedElement:
        cached = self._mono_cache.get(mono)
        if cached is not None:
            return cached
        head = self._image_of_monomial(mono[:-1])
        g, m = mono[-1]
        out = self.target.multiply(head, self.image_of_variable(g, m))
        self._mono_cache[mono] = out
        return out

    def apply(self, elem: GradedElement) -> GradedElement:
        self.source._check_element(elem)
        out = self.target.zero()
        for mono, coeff in elem.data.items():
            out = out + self._image_of_monomial(mono).scale(coeff)
        return self.target.normal_form(out)

    def map_images(self, fn) -> "AlgebraHom":
        """Post-compose with an algebra endomorphism of the target.

        fn must be a unital algebra map on target elements; the composite
        is again an algebra morphism defined variable-wise.
        """
        images = {var: fn(img) for var, img in self.variable_items()}
        return AlgebraHom(self.source, self.target, images)

    def variable_items(self):
        return self._images.items()


class LiftError(ValueError):
    """A requested differential extension does not respect the relations."""


class DifferentialHom(AlgebraHom):
    """The differential extension of a map defined on order-zero generators.

    The variable x^(m) maps to the m-th derivative of the image of x, so
    the morphism commutes with the derivations by construction.
    """

    def __init__(self, source, target, gen0_images: dict):
        super().__init__(source, target, {})
        self.gen0_images = dict(gen0_images)

    def image_of_variable(self, gen: str, order: int) -> GradedElement:
        key = (gen, order)
        img = self._images.get(key)
        if img is None:
            if gen not in self.gen0_images:
                raise KeyError(f"no image assigned for generator {gen!r}")
            img = self.target.derive(self.gen0_images[gen], times=order)
            self._images[key] = img
        return img

    def variable_items(self):
        for gen in self.gen0_images:
            for order in range(self.source.wmax):
                yield (gen, order), self.image_of_variable(gen, order)


def lift_hom(f0, source: AlgebraPresentation, target: AlgebraPresentation) -> DifferentialHom:
    """Extend a generator assignment to the unique differential morphism.

    f0 is a dict mapping source generator names to target elements, or a
    list aligned with source.generators.  The extension sends x^(m) to the
    m-th derivative of f0(x).  Raises LiftError when a relation image does
    not vanish in the target up to the truncation bound.
    """
    if not isinstance(f0, dict):
        f0 = dict(zip(source.generators, f0))
    missing = set(source.generators) - set(f0)
    if missing:
        raise LiftError(f"no image for generators {sorted(missing)}")
    hom = DifferentialHom(source, target, f0)
    for rel in source.relations:
        img = hom.apply(rel)
        if img:
            raise LiftError(
                f"relation {format_element(rel)} maps to nonzero {format_element(img)}"
            )
    return hom
