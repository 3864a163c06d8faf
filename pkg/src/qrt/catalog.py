"""Named bound quivers together with their standard separating family."""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction

from .exactfield import QQ, FieldSpec, parse_scalar
from .quiver import BoundQuiver, QuiverError, canonical, kronecker
from .tubes import SeparatingFamily, canonical_family, kronecker_family


class CatalogError(ValueError):
    pass


@dataclass
class CatalogEntry:
    name: str
    bq: BoundQuiver
    family: SeparatingFamily


_ID_RE = re.compile(r"^(Kronecker|EuclideanA|CanonicalAlgebra)(?:\(([^)]*)\))?$")


def parse_catalog_id(text: str) -> tuple[str, list[int], list[str]]:
    """'CanonicalAlgebra(2,2,2,2;3)' -> ('CanonicalAlgebra', [2,2,2,2], ['3'])."""
    m = _ID_RE.match(text.replace(" ", ""))
    if not m:
        raise CatalogError(f"unknown catalog id {text!r}")
    kind, args = m.group(1), m.group(2) or ""
    weights_part, _, lam_part = args.partition(";")
    weights = [int(x) for x in weights_part.split(",") if x]
    lams = [x for x in lam_part.split(",") if x]
    return kind, weights, lams


def catalog(name: str, field: FieldSpec = QQ, lambdas=None, strict: bool = True,
            validate: bool = True) -> CatalogEntry:
    """Build a catalog algebra.

    ``lambdas`` (scalars or scalar text) override parameters given in the id.
    With ``strict=False`` coinciding parameters are accepted; the family is
    then left unvalidated.
    """
    kind, weights, lam_text = parse_catalog_id(name)
    if kind == "Kronecker":
        if weights or lam_text:
            raise CatalogError("Kronecker takes no parameters")
        bq = kronecker(field)
        return CatalogEntry("Kronecker", bq, kronecker_family(bq))
    if kind == "EuclideanA":
        if len(weights) != 2 or lam_text or lambdas:
            raise CatalogError("EuclideanA takes two arm lengths")
        if min(weights) < 1:
            raise CatalogError("arm lengths must be positive")
    else:
        if not 2 <= len(weights) <= 4 or min(weights) < 1:
            raise CatalogError("CanonicalAlgebra needs 2 to 4 positive arm lengths")
    t = len(weights)
    if sum(Fraction(1, p) for p in weights) < t - 2:
        raise CatalogError("parameters are not tame")
    lams = list(lambdas) if lambdas is not None else [parse_scalar(x, field) for x in lam_text]
    lams = [parse_scalar(x, field) if isinstance(x, str) else field(x) for x in lams]
    if t >= 3 and strict:
        vals = [field(1)] + lams
        if any(v == 0 for v in vals) or len(set(vals)) != len(vals):
            raise CatalogError("parameters must be nonzero and pairwise distinct, and differ from 1")
    try:
        bq = canonical(weights, lams, field, strict=strict)
    except QuiverError as e:
        raise CatalogError(str(e)) from None
    fam = canonical_family(bq, weights, lams, validate=validate and strict)
    label = f"{kind}(" + ",".join(map(str, weights)) + (";" + ",".join(lam_text) if lam_text else "") + ")"
    return CatalogEntry(label, bq, fam)
