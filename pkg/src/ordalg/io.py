"""JSON formats for posets, parallel pairs, presentations and algebras."""

from __future__ import annotations

import itertools
import json
from pathlib import Path

from .finposet import FinPoset, FinPreorder, MonotoneMap, OrderError, ParallelPair
from .terms import Signature
from .variety import OrderedAlgebra, Presentation, BUILTINS, builtin


class InputError(ValueError):
    """Malformed or inconsistent input."""


def read_json(path) -> object:
    try:
        return json.loads(Path(path).read_text())
    except OSError as e:
        raise InputError(f"cannot read {path}: {e.strerror}") from None
    except json.JSONDecodeError as e:
        raise InputError(f"{path}: invalid JSON ({e})") from None


def _label(x):
    # JSON arrays come back as lists; labels must be hashable
    return tuple(_label(y) for y in x) if isinstance(x, list) else x


def load_preorder(obj, *, poset: bool = True) -> FinPreorder:
    """{"elements": [...], "leq": [[a, b], ...]}, closed on load."""
    if not isinstance(obj, dict) or not isinstance(obj.get("elements"), list):
        raise InputError("a poset needs an 'elements' list")
    try:
        els = [_label(x) for x in obj["elements"]]
        pairs = [(_label(a), _label(b)) for a, b in obj.get("leq", [])]
    except (KeyError, TypeError, ValueError) as e:
        raise InputError(f"bad poset object: {e}") from None
    known = set(els)
    for a, b in pairs:
        if a not in known or b not in known:
            raise InputError(f"pair ({a}, {b}) mentions an unknown element")
    try:
        pre = FinPreorder.from_pairs(els, pairs)
        if not poset:
            return pre
        return FinPoset(pre.elements, pre.matrix)
    except OrderError as e:
        raise InputError(str(e)) from None


def load_poset(obj) -> FinPoset:
    return load_preorder(obj, poset=True)


def poset_to_json(P: FinPreorder, show=str) -> dict:
    """Covering pairs only; loading restores the closure."""
    return {"elements": [show(x) for x in P.elements],
            "leq": [[show(a), show(b)] for a, b in P.hasse_edges()]}


def load_pair(obj) -> ParallelPair:
    """{"A": poset, "B": poset, "f0": {a: b}, "f1": {a: b}}."""
    try:
        A, B = load_poset(obj["A"]), load_poset(obj["B"])
        maps = []
        for key in ("f0", "f1"):
            table = {str(k): _label(v) for k, v in obj[key].items()}
            maps.append(MonotoneMap(A, B, [table[str(a)] for a in A.elements]))
        return ParallelPair(*maps)
    except KeyError as e:
        raise InputError(f"parallel pair: missing {e}") from None
    except (OrderError, ValueError) as e:
        raise InputError(f"parallel pair: {e}") from None


def load_presentation(source) -> Presentation:
    """A builtin name, a path to a JSON file, or an already-parsed object."""
    if isinstance(source, str) and source in BUILTINS:
        return builtin(source).presentation
    obj = read_json(source) if isinstance(source, (str, Path)) else source
    try:
        return Presentation.from_json(obj)
    except (KeyError, TypeError) as e:
        raise InputError(f"bad presentation: {e}") from None
    except ValueError as e:
        raise InputError(f"bad presentation: {e}") from None


def load_algebra(obj) -> OrderedAlgebra:
    """{"signature": ... | "builtin": name, "carrier": poset, "ops": {...}}.

    Nullary operations map to a value, n-ary ones to a list of rows
    [a1, ..., an, value] that must cover every argument tuple.
    """
    try:
        if "builtin" in obj:
            sig = builtin(obj["builtin"]).presentation.signature
        else:
            sig = Signature.from_json(obj["signature"])
        A = load_poset(obj["carrier"])
        ops = {}
        for name, k in sig:
            raw = obj["ops"][name]
            if k == 0:
                ops[name] = {(): _label(raw)}
                continue
            table = {}
            for row in raw:
                if len(row) != k + 1:
                    raise InputError(f"{name}: row {row} should have {k + 1} entries")
                table[tuple(_label(x) for x in row[:k])] = _label(row[k])
            ops[name] = table
    except KeyError as e:
        raise InputError(f"algebra: missing {e}") from None
    except (TypeError, ValueError) as e:
        raise InputError(f"algebra: {e}") from None
    for name, k in sig:
        for args in itertools.product(A.elements, repeat=k):
            v = ops[name].get(args)
            if v is None:
                raise InputError(f"{name} undefined at {list(args)}")
            if v not in A:
                raise InputError(f"{name}{list(args)} = {v} is not in the carrier")
    alg = OrderedAlgebra(sig, A, ops)
    bad = alg.monotonicity_violations()
    if bad:
        name, a, b = bad[0]
        raise InputError(f"{name} is not monotone: {list(a)} <= {list(b)}")
    return alg


def algebra_to_json(alg: OrderedAlgebra) -> dict:
    ops = {}
    for name, k in alg.signature:
        tab = alg.table(name)
        ops[name] = tab[()] if k == 0 else [list(args) + [v] for args, v in tab.items()]
    return {"signature": alg.signature.to_json(), "carrier": poset_to_json(alg.carrier), "ops": ops}
