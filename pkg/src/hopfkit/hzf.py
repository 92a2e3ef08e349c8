"""HZF: canonical JSON files for algebras, forms, products and quadruples.

Algebra object::

    {"field": "Q" | "Fp:<p>" | "Qfunc:[a,b]",
     "basis": [...] | {"rule": "kZ" | "kX" | "product", "window": N},
     "unit": id, "mult": [[i, j, {k: literal}]...],
     "comult": [[i, {"pairs": [[j, k, literal]...]}]...],
     "counit": {i: literal}, "antipode": [[i, {j: literal}]...], "meta": {...}}

Keys of inner objects are basis labels; ids themselves are strings, ints or
nested lists (for tuples).  Form block::

    {"left": name, "right": name, "entries": [[i, j, literal]...],
     "default": "zero" | "counit-product", "rule": optional}

Serialization sorts everything and is byte-stable.
"""

from __future__ import annotations

import json
import re
from typing import Mapping

from .exactmath import Field, LinComb, basis_from_json, basis_key, basis_to_json, field_from_tag, label
from .hopfcore import HopfAlgebra, structure_equal
from .pairings import BilinearForm


class HZFError(ValueError):
    pass


def dumps(obj) -> str:
    return json.dumps(obj, indent=1, sort_keys=True, ensure_ascii=False) + "\n"


def _lit(F: Field, x) -> str:
    return F.format(x)


def _lc(F: Field, v: Mapping) -> dict:
    return {label(k): _lit(F, c) for k, c in sorted(v.items(), key=lambda kv: basis_key(kv[0]))}


def _sorted(xs):
    return sorted(xs, key=basis_key)


# ---------------------------------------------------------------------------
# algebras


_IDENT = re.compile(r"[A-Za-z][A-Za-z0-9_]*")


def _rule_algebra(rule: str, F: Field, window: int) -> HopfAlgebra:
    from .catalog import kX, kZ

    table = {"kZ": kZ, "kX": kX}
    if rule not in table:
        raise HZFError(f"unknown algebra rule {rule!r}")
    return table[rule](F, window)


def dump_algebra(H: HopfAlgebra) -> dict:
    F = H.field
    meta = {k: v for k, v in H.meta.items() if isinstance(v, (int, str, list, bool))}
    meta.setdefault("name", H.name)
    if not H.is_finite:
        rule = H.meta.get("rule")
        if rule not in ("kZ", "kX"):
            raise HZFError(f"{H.name} is rule-backed without a known rule")
        return {"field": F.tag, "basis": {"rule": rule, "window": H.default_window}, "meta": meta}
    basis = H.basis
    one = H.one.terms
    unit = basis_to_json(next(iter(one))) if len(one) == 1 and next(iter(one.values())) == F.one else _lc(F, one)
    mult = []
    for i in basis:
        for j in basis:
            v = H.mult(i, j)
            if v.terms:
                mult.append([basis_to_json(i), basis_to_json(j), _lc(F, v.terms)])
    comult = []
    for i in basis:
        pairs = sorted(H.comult(i).terms.items(), key=lambda kv: (basis_key(kv[0][0]), basis_key(kv[0][1])))
        comult.append([basis_to_json(i), {"pairs": [[basis_to_json(a), basis_to_json(b), _lit(F, c)] for (a, b), c in pairs]}])
    counit = {label(i): _lit(F, H.counit(i)) for i in basis if H.counit(i)}
    out = {"field": F.tag, "basis": [basis_to_json(b) for b in basis], "unit": unit, "mult": mult,
           "comult": comult, "counit": counit, "meta": meta}
    if H.antipode is not None:
        out["antipode"] = [[basis_to_json(i), _lc(F, H.antipode(i).terms)] for i in basis]
    return out


def _resolver(basis):
    by_label = {label(b): b for b in basis}

    def res(key):
        if key not in by_label:
            raise HZFError(f"unknown basis label {key!r}")
        return by_label[key]

    return res


def load_algebra(obj, field: Field | None = None) -> HopfAlgebra:
    """Build an algebra from an HZF object or text; ``field`` overrides the
    declared field (literals are re-parsed in it)."""
    if isinstance(obj, str):
        obj = json.loads(obj)
    try:
        F = field or field_from_tag(obj["field"])
        meta = dict(obj.get("meta", {}))
        name = meta.pop("name", "")
        basis_spec = obj["basis"]
        if isinstance(basis_spec, dict):
            if basis_spec.get("rule") == "product":
                raise HZFError("product files are loaded with load_product")
            return _rule_algebra(basis_spec["rule"], F, int(basis_spec["window"]))
        basis = [basis_from_json(b) for b in basis_spec]
        res = _resolver(basis)
        known = set(basis)

        def bid(x):
            b = basis_from_json(x)
            if b not in known:
                raise HZFError(f"unknown basis id {x!r}")
            return b

        conv = lambda d: {res(k): F.parse(v) for k, v in d.items()}
        unit = obj["unit"]
        unit = LinComb(conv(unit)) if isinstance(unit, dict) else bid(unit)
        mult = {(bid(i), bid(j)): conv(v) for i, j, v in obj["mult"]}
        comult = {bid(i): {(bid(a), bid(b)): F.parse(c) for a, b, c in v["pairs"]} for i, v in obj["comult"]}
        counit = conv(obj.get("counit", {}))
        antipode = None
        if "antipode" in obj:
            antipode = {bid(i): conv(v) for i, v in obj["antipode"]}
    except (KeyError, TypeError, ValueError) as exc:
        if isinstance(exc, HZFError):
            raise
        raise HZFError(f"malformed HZF algebra: {exc}") from exc
    return HopfAlgebra.from_tables(F, basis, unit, mult, comult, counit, antipode, name=name, meta=meta)


# ---------------------------------------------------------------------------
# forms


def dump_form(f: BilinearForm, left: str, right: str) -> dict:
    F = f.field
    if not (f.left.is_finite and f.right.is_finite):
        rule = f.meta.get("rule")
        if rule is None:
            raise HZFError(f"{f.name} is rule-backed without a serializable rule")
        return {"left": left, "right": right, "rule": rule, "params": dict(f.meta.get("params", {})),
                "name": f.name}
    default = f.default if f.table_backed else "zero"
    entries = []
    for x in f.left.basis:
        for y in f.right.basis:
            v = f(x, y)
            base = f.left.counit(x) * f.right.counit(y) if default == "counit-product" else F.zero
            if v != base:
                entries.append([basis_to_json(x), basis_to_json(y), _lit(F, v)])
    return {"left": left, "right": right, "entries": entries, "default": default, "name": f.name}


def _rule_form(rule: str, left: HopfAlgebra, right: HopfAlgebra, params: dict) -> BilinearForm:
    from .catalog import kx_braiding, kx_kz_pairing, kz_braiding

    F = left.field

    def scalar(v):
        return v if _IDENT.fullmatch(v) else F.parse(v)

    if rule == "kZ-q":
        return kz_braiding(left, scalar(params.get("q", "q")))
    if rule == "kX-tau":
        return kx_braiding(left, scalar(params.get("alpha", "alpha")))
    if rule == "kX-kZ":
        return kx_kz_pairing(left, right)
    raise HZFError(f"unknown form rule {rule!r}")


def load_form(obj, algebras: Mapping[str, HopfAlgebra]) -> BilinearForm:
    if isinstance(obj, str):
        obj = json.loads(obj)
    try:
        left, right = algebras[obj["left"]], algebras[obj["right"]]
    except KeyError as exc:
        raise HZFError(f"form refers to unknown algebra {exc}") from exc
    if "rule" in obj:
        return _rule_form(obj["rule"], left, right, obj.get("params", {}))
    F = left.field
    table = {}
    for i, j, v in obj.get("entries", []):
        table[(basis_from_json(i), basis_from_json(j))] = F.parse(v)
    try:
        return BilinearForm(left, right, table=table, default=obj.get("default", "zero"), name=obj.get("name", ""))
    except ValueError as exc:
        raise HZFError(str(exc)) from exc


# ---------------------------------------------------------------------------
# products


def _map_entries(m, X, Y, F) -> list:
    out = []
    for x in X.basis:
        for y in Y.basis:
            v = m(x, y)
            if v.terms:
                out.append([basis_to_json(x), basis_to_json(y), _lc(F, v.terms)])
    return out


def dump_product(P) -> dict:
    """Product tables plus the data needed to rebuild it."""
    A, H, F = P.A, P.H, P.field
    d = P.datum
    section = {"provenance": P.provenance, "name": P.name}
    if A.is_finite and H.is_finite:
        section.update({"A": dump_algebra(A), "H": dump_algebra(H)})
        if not d.trivial_lact:
            section["lact"] = _map_entries(d.lact, H, A, F)
        if not d.trivial_ract:
            section["ract"] = _map_entries(d.ract, H, A, F)
        if not d.trivial_cocycle:
            section["cocycle"] = _map_entries(d.cocycle, H, H, F)
    else:
        if P.provenance != "gqd":
            raise HZFError("rule-backed products are stored only as generalized quantum doubles")
        section.update({"A": dump_algebra(A), "H": dump_algebra(H)})
    if P.pairing is not None:
        section["pairing"] = dump_form(P.pairing, "H", "A")
    if P.is_finite:
        out = dump_algebra(P)
    else:
        out = {"field": F.tag, "basis": {"rule": "product", "window": P.default_window}, "meta": {"name": P.name}}
    out["product"] = section
    return out


def _loaded_map(entries, F, X, Y, Z):
    if entries is None:
        return None
    rz = _resolver(Z.basis)
    table = {}
    for x, y, v in entries:
        table[(basis_from_json(x), basis_from_json(y))] = {rz(k): F.parse(c) for k, c in v.items()}
    return lambda x, y: table.get((x, y), {})


def load_product(obj, field: Field | None = None, *, verify: bool = True):
    from .products import build_crossed_product, build_double_cross, build_gqd, build_unified_product, ExtendingDatum

    if isinstance(obj, str):
        obj = json.loads(obj)
    if "product" not in obj:
        raise HZFError("not a product file (no 'product' section)")
    sec = obj["product"]
    A, H = load_algebra(sec["A"], field), load_algebra(sec["H"], field)
    F = A.field
    prov = sec["provenance"]
    name = sec.get("name", "")
    if prov == "gqd":
        lam = load_form(sec["pairing"], {"A": A, "H": H})
        P = build_gqd(A, H, lam, check=False, name=name)
    else:
        lact = _loaded_map(sec.get("lact"), F, H, A, A) if A.is_finite else None
        ract = _loaded_map(sec.get("ract"), F, H, A, H) if A.is_finite else None
        coc = _loaded_map(sec.get("cocycle"), F, H, H, A) if A.is_finite else None
        if prov in ("dcp", "coadjoint-double"):
            P = build_double_cross(A, H, lact, ract, check=False, name=name, provenance=prov)
        elif prov == "crossed":
            P = build_crossed_product(A, H, lact, coc, check=False, name=name)
        elif prov == "unified":
            P = build_unified_product(ExtendingDatum(A, H, lact=lact, ract=ract, cocycle=coc), check=False, name=name)
        else:
            raise HZFError(f"unknown provenance {prov!r}")
    if verify and P.is_finite and isinstance(obj.get("basis"), list):
        stored = load_algebra(obj, field)
        rep = structure_equal(stored, P)
        if not rep.ok:
            raise HZFError(f"stored tables disagree with the rebuilt product: {rep.failed()[0].describe()}")
    return P


def load_any(obj, field: Field | None = None):
    """A product when the file carries a product section, else an algebra."""
    if isinstance(obj, str):
        obj = json.loads(obj)
    return load_product(obj, field) if "product" in obj else load_algebra(obj, field)


DATUM_KINDS = ("unified", "dcp", "crossed", "gqd")


def build_from_datum(obj, algebras: Mapping[str, HopfAlgebra] | None = None, *, field: Field | None = None,
                     check: bool = True, window: int | None = None):
    """Build the product described by an extending-datum block.

    ``{"base": "A", "hpart": "H" | {algebra}, "kind": "unified", "lact": entries,
    "ract": entries, "cocycle": entries, "pairing": form, "algebras": {...}}``
    where entries are ``[[h, x, {k: literal}]...]``.  Named algebras come from
    the block's own "algebras" object or from ``algebras``.
    """
    from .products import build_crossed_product, build_double_cross, build_gqd, build_unified_product, ExtendingDatum

    if isinstance(obj, str):
        obj = json.loads(obj)
    algs = dict(algebras or {})
    for k, v in obj.get("algebras", {}).items():
        algs[k] = load_algebra(v, field)

    def algebra(ref):
        if isinstance(ref, dict):
            return load_algebra(ref, field)
        if ref not in algs:
            raise HZFError(f"datum refers to unknown algebra {ref!r}")
        return algs[ref]

    try:
        A, H = algebra(obj["base"]), algebra(obj["hpart"])
    except KeyError as exc:
        raise HZFError(f"datum block lacks {exc}") from exc
    if A.field != H.field:
        raise HZFError("base and H-part over different fields")
    kind = obj.get("kind", "unified")
    if kind not in DATUM_KINDS:
        raise HZFError(f"unknown datum kind {kind!r}; expected one of {', '.join(DATUM_KINDS)}")
    name = obj.get("name", "")
    F = A.field
    if kind == "gqd":
        if "pairing" not in obj:
            raise HZFError("a generalized quantum double needs a 'pairing' block")
        names = {"A": A, "H": H}
        for ref, X in ((obj["base"], A), (obj["hpart"], H)):
            if isinstance(ref, str):
                names[ref] = X
        lam = load_form(obj["pairing"], names)
        return build_gqd(A, H, lam, check=check, window=window, name=name)
    if not (A.is_finite and H.is_finite):
        raise HZFError("explicit action tables need finite algebras")
    lact = _loaded_map(obj.get("lact"), F, H, A, A)
    ract = _loaded_map(obj.get("ract"), F, H, A, H)
    coc = _loaded_map(obj.get("cocycle"), F, H, H, A)
    if kind == "dcp":
        if coc is not None:
            raise HZFError("a double cross product has no cocycle")
        return build_double_cross(A, H, lact, ract, check=check, window=window, name=name)
    if kind == "crossed":
        if ract is not None:
            raise HZFError("a crossed product has no right action")
        return build_crossed_product(A, H, lact, coc, check=check, window=window, name=name)
    datum = ExtendingDatum(A, H, lact=lact, ract=ract, cocycle=coc, name=name or "")
    return build_unified_product(datum, check=check, window=window, name=name)


def load_datum(obj, algebras: Mapping[str, HopfAlgebra] | None = None, *, field: Field | None = None):
    """The extending datum of a block, without building the product."""
    from .products import ExtendingDatum

    if isinstance(obj, str):
        obj = json.loads(obj)
    algs = dict(algebras or {})
    for k, v in obj.get("algebras", {}).items():
        algs[k] = load_algebra(v, field)
    get = lambda ref: load_algebra(ref, field) if isinstance(ref, dict) else algs[ref]
    try:
        A, H = get(obj["base"]), get(obj["hpart"])
    except KeyError as exc:
        raise HZFError(f"datum refers to unknown algebra {exc}") from exc
    F = A.field
    return ExtendingDatum(A, H, lact=_loaded_map(obj.get("lact"), F, H, A, A),
                          ract=_loaded_map(obj.get("ract"), F, H, A, H),
                          cocycle=_loaded_map(obj.get("cocycle"), F, H, H, A), name=obj.get("name", ""))


# ---------------------------------------------------------------------------
# quadruples


def dump_quadruple(q) -> dict:
    return {"p": dump_form(q.p, "A", "A"), "tau": dump_form(q.tau, "H", "H"),
            "u": dump_form(q.u, "A", "H"), "v": dump_form(q.v, "H", "A")}


def load_quadruple(obj, P):
    from .coquasi import Quadruple

    if isinstance(obj, str):
        obj = json.loads(obj)
    algs = {"A": P.A, "H": P.H}
    try:
        return Quadruple(**{k: load_form(obj[k], algs) for k in ("p", "tau", "u", "v")}, datum=P.datum)
    except KeyError as exc:
        raise HZFError(f"quadruple file lacks block {exc}") from exc


def read(path: str) -> dict:
    with open(path, encoding="utf-8") as fh:
        try:
            return json.load(fh)
        except json.JSONDecodeError as exc:
            raise HZFError(f"{path}: {exc}") from exc


def write(path: str, obj) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(dumps(obj))
