"""Strict JSON input documents: facts, search domains and per-unit grid facts.

Unknown keys are rejected.  Errors carry the JSON line/column for syntax
problems or a dotted field path for schema problems.
"""

from __future__ import annotations

import json
from fractions import Fraction
from pathlib import Path
from typing import Any, Dict, Mapping, Optional, Tuple, Union

from .search import VARIABLES, SearchDomain
from .statute import (
    CoupleFacts,
    NumeratorMode,
    SpouseTimeline,
    StatuteParams,
    TimeUnit,
)

SUPPORTED_SCHEMA = 1


class DocumentError(ValueError):
    pass


def _load(source: Union[str, Path]) -> Any:
    path = Path(source)
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as exc:
        raise DocumentError(f"{path}: cannot read: {exc.strerror}") from exc
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise DocumentError(f"{path}: line {exc.lineno} column {exc.colno}: {exc.msg}") from exc


def _obj(v: Any, where: str, required=(), optional=()) -> Dict[str, Any]:
    if not isinstance(v, dict):
        raise DocumentError(f"{where}: expected an object")
    unknown = sorted(set(v) - set(required) - set(optional))
    if unknown:
        raise DocumentError(f"{where}: unknown key(s): {', '.join(unknown)}")
    missing = [k for k in required if k not in v]
    if missing:
        raise DocumentError(f"{where}: missing key(s): {', '.join(missing)}")
    return v


def _count(v: Any, where: str) -> int:
    if isinstance(v, bool) or not isinstance(v, int):
        raise DocumentError(f"{where}: expected a non-negative integer, got {json.dumps(v)}")
    if v < 0:
        raise DocumentError(f"{where}: must be >= 0, got {v}")
    return v


def _flag(v: Any, where: str) -> bool:
    if not isinstance(v, bool):
        raise DocumentError(f"{where}: expected true or false")
    return v


def _money(v: Any, where: str) -> Fraction:
    if isinstance(v, bool) or isinstance(v, float) or not isinstance(v, (int, str)):
        raise DocumentError(f"{where}: expected an integer or an exact string like \"1000/3\"")
    try:
        x = Fraction(v)
    except (ValueError, ZeroDivisionError) as exc:
        raise DocumentError(f"{where}: not an exact amount: {v!r}") from exc
    if x < 0:
        raise DocumentError(f"{where}: must be >= 0")
    return x


def _choice(v: Any, enum, where: str):
    try:
        return enum(v)
    except ValueError:
        allowed = ", ".join(e.value for e in enum)
        raise DocumentError(f"{where}: expected one of {allowed}, got {json.dumps(v)}") from None


def _header(doc: Dict[str, Any], where: str) -> None:
    if doc.get("schema_version") != SUPPORTED_SCHEMA:
        raise DocumentError(f"{where}.schema_version: expected {SUPPORTED_SCHEMA}")


def spouse_from(v: Any, where: str) -> SpouseTimeline:
    d = _obj(v, where, ("ownership", "use"), ("since_prior_exclusion", "qualifying_reason"))
    prior = d.get("since_prior_exclusion")
    return SpouseTimeline(
        _count(d["ownership"], f"{where}.ownership"),
        _count(d["use"], f"{where}.use"),
        None if prior is None else _count(prior, f"{where}.since_prior_exclusion"),
        _flag(d.get("qualifying_reason", False), f"{where}.qualifying_reason"),
    )


def couple_from(v: Any, where: str) -> CoupleFacts:
    d = _obj(v, where, ("spouse_a", "spouse_b"))
    return CoupleFacts(spouse_from(d["spouse_a"], f"{where}.spouse_a"), spouse_from(d["spouse_b"], f"{where}.spouse_b"))


_PARAM_KEYS = ("time_unit", "base_limit", "joint_limit", "numerator_mode")


def _params_from(d: Mapping[str, Any], where: str) -> StatuteParams:
    kw: Dict[str, Any] = {}
    if "time_unit" in d:
        kw["time_unit"] = _choice(d["time_unit"], TimeUnit, f"{where}.time_unit")
    if "numerator_mode" in d:
        kw["numerator_mode"] = _choice(d["numerator_mode"], NumeratorMode, f"{where}.numerator_mode")
    for k in ("base_limit", "joint_limit"):
        if k in d:
            kw[k] = _money(d[k], f"{where}.{k}")
    return StatuteParams(**kw)


def parse_facts(doc: Any, where: str = "$") -> Tuple[CoupleFacts, StatuteParams]:
    d = _obj(doc, where, ("schema_version", "spouse_a", "spouse_b"), _PARAM_KEYS)
    _header(d, where)
    facts = CoupleFacts(spouse_from(d["spouse_a"], f"{where}.spouse_a"), spouse_from(d["spouse_b"], f"{where}.spouse_b"))
    return facts, _params_from(d, where)


def load_facts(path: Union[str, Path]) -> Tuple[CoupleFacts, StatuteParams]:
    return parse_facts(_load(path), str(path))


def _range(v: Any, where: str) -> Tuple[int, int]:
    if not (isinstance(v, list) and len(v) == 2):
        raise DocumentError(f"{where}: expected [low, high]")
    lo, hi = _count(v[0], f"{where}[0]"), _count(v[1], f"{where}[1]")
    if lo > hi:
        raise DocumentError(f"{where}: empty range {lo}..{hi}")
    return lo, hi


def parse_domain(doc: Any, where: str = "$") -> Tuple[SearchDomain, StatuteParams]:
    d = _obj(
        doc, where, ("schema_version", "ranges"),
        _PARAM_KEYS + ("reason_policy", "reasons", "require_failure"),
    )
    _header(d, where)
    r = _obj(d["ranges"], f"{where}.ranges", tuple(v.value for v in VARIABLES))
    ranges = {k: _range(r[k], f"{where}.ranges.{k}") for k in r}
    policy = d.get("reason_policy", "fixed")
    if policy not in ("fixed", "failing"):
        raise DocumentError(f"{where}.reason_policy: expected fixed or failing, got {json.dumps(policy)}")
    reasons = _obj(d.get("reasons", {}), f"{where}.reasons", (), ("a", "b"))
    domain = SearchDomain(
        **ranges,
        reason_policy=policy,
        reason_a=_flag(reasons.get("a", False), f"{where}.reasons.a"),
        reason_b=_flag(reasons.get("b", False), f"{where}.reasons.b"),
        require_failure=_flag(d.get("require_failure", False), f"{where}.require_failure"),
    )
    return domain, _params_from(d, where)


def load_domain(path: Union[str, Path]) -> Tuple[SearchDomain, StatuteParams]:
    return parse_domain(_load(path), str(path))


def parse_grid(doc: Any, where: str = "$") -> Tuple[Dict[TimeUnit, CoupleFacts], StatuteParams]:
    d = _obj(doc, where, ("schema_version", "units"), ("base_limit", "joint_limit"))
    _header(d, where)
    units = _obj(d["units"], f"{where}.units", (), tuple(u.value for u in TimeUnit))
    facts = {TimeUnit(k): couple_from(v, f"{where}.units.{k}") for k, v in units.items()}
    return facts, _params_from(d, where)


def load_grid(path: Union[str, Path]) -> Tuple[Dict[TimeUnit, CoupleFacts], StatuteParams]:
    return parse_grid(_load(path), str(path))


def parse_range(text: str) -> Tuple[int, int]:
    """``"1..36"`` or a single ``"5"`` as an inclusive range."""
    lo, sep, hi = text.partition("..")
    try:
        lo_i = int(lo)
        hi_i = int(hi) if sep else lo_i
    except ValueError:
        raise DocumentError(f"range {text!r}: expected LOW..HIGH") from None
    if lo_i < 0:
        raise DocumentError(f"range {text!r}: bounds must be >= 0")
    if lo_i > hi_i:
        raise DocumentError(f"range {text!r} is empty")
    return lo_i, hi_i


def apply_overrides(p: StatuteParams, unit: Optional[str] = None, mode: Optional[str] = None) -> StatuteParams:
    changes: Dict[str, Any] = {}
    if unit:
        changes["time_unit"] = TimeUnit(unit)
    if mode:
        changes["numerator_mode"] = NumeratorMode(mode)
    return p.with_(**changes) if changes else p
