"""Embedding certificates: build, serialize, parse and re-verify.

A certificate records everything needed to recheck a ball triple from a
family parameter without trusting the producer.  The serialized form is
JSON with a fixed key order and one top-level key per line, so equal inputs
give byte-identical documents.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Any, Optional

from . import __version__
from .curves import framing, verify_eq2, x_of_curves
from .diophantine import eval_a
from .families import (
    DEFAULT_A_BOUND,
    DEFAULT_F2_BOUND,
    DEFAULT_MARKOV_BOUND,
    FAMILIES,
    QSolution,
    family_data,
    family_qsolution,
    normalize_ball,
    qsystem_holds,
)
from .lattice import LatticeVector, closing_pairing, monodromy, recognize_lambda_power

CHECK_NAMES = ("eq1", "eq2", "closes", "q_system_exact")
HANDLE_COUNTS = {"h0": 1, "h1": 1, "h2": 3, "h3": 1, "h4": 0}


class CertificateError(ValueError):
    """A certificate failed one of its checks or is malformed."""


@dataclass(frozen=True)
class Bounds:
    markov: int = DEFAULT_MARKOV_BOUND
    f2: int = DEFAULT_F2_BOUND
    a: int = DEFAULT_A_BOUND

    def __post_init__(self):
        if min(self.markov, self.f2, self.a) <= 0:
            raise ValueError("search bounds must be positive")


def _companion(family: str, params) -> Optional[dict]:
    """Fibonacci/Lucas indices behind the F3 entries, as (sign, index) pairs."""
    if family != "F3":
        return None
    a, b, eps = params
    return {
        "a": a, "b": b, "eps": eps,
        "p_fibonacci": [[1, a], [1, b - eps * a], [-eps, b]],
        "x_lucas": [[1, a], [-eps, a + eps * b], [1, b]],
    }


def _checks(family: str, params, deltas, curves, a: int, qs: Optional[QSolution]) -> dict[str, bool]:
    m = monodromy(zip(curves, deltas))
    x = x_of_curves(curves)
    q_ok = qs is not None and qsystem_holds(family, params, qs) and tuple(qs.curves) == tuple(curves)
    return {
        "eq1": eval_a(deltas, x) == a == 2 - m.trace(),
        "eq2": verify_eq2(deltas, [c.p for c in curves], x),
        "closes": closing_pairing(m) == 0,
        "q_system_exact": bool(q_ok),
    }


def build_certificate(family: str, params, sign: int = 1, bounds: Bounds = Bounds()) -> dict[str, Any]:
    """Certificate as an ordered dict.  Raises CertificateError if any check fails."""
    family = family.upper()
    if family not in FAMILIES:
        raise ValueError(f"unknown family {family!r}")
    params = tuple(int(v) for v in params)
    deltas, _, _ = family_data(family, params)
    qs = family_qsolution(family, params, sign)
    curves = tuple(qs.curves)
    m = monodromy(zip(curves, deltas))
    x = x_of_curves(curves)
    a = 2 - m.trace()
    checks = _checks(family, params, deltas, curves, a, qs)
    recognized = recognize_lambda_power(m)
    cert = {
        "format": "hdecomp-certificate/1",
        "tool_version": __version__,
        "family": family,
        "parameters": list(params),
        "sign_choice": sign,
        "handles": dict(HANDLE_COUNTS),
        "curves": [[c.p, c.q] for c in curves],
        "deltas": list(deltas),
        "framings": [framing(c, d) for c, d in zip(curves, deltas)],
        "monodromy": [[m.m00, m.m01], [m.m10, m.m11]],
        "recognized": list(recognized) if recognized else None,
        "a": a,
        "x": list(x),
        "balls": [_ball_entry(c, d) for c, d in zip(curves, deltas)],
        "companion_indices": _companion(family, params),
        "bounds": {"markov": bounds.markov, "f2": bounds.f2, "a": bounds.a},
        "checks": checks,
    }
    failed = [k for k, v in checks.items() if not v]
    if failed:
        raise CertificateError(f"checks failed: {', '.join(failed)}")
    return cert


def _ball_entry(curve: LatticeVector, delta: int) -> list[int]:
    b = normalize_ball(curve.p, curve.q, delta)
    return [b.orientation, b.p, b.q]


def dumps(cert: dict[str, Any]) -> str:
    """One top-level key per line, values compact; still plain JSON."""
    body = ",\n".join(f"  {json.dumps(k)}: {json.dumps(v, separators=(', ', ': '))}" for k, v in cert.items())
    return "{\n" + body + "\n}\n"


def loads(text: str) -> dict[str, Any]:
    try:
        cert = json.loads(text)
    except json.JSONDecodeError as exc:
        raise CertificateError(f"not a certificate document: {exc}") from None
    if not isinstance(cert, dict) or cert.get("format") != "hdecomp-certificate/1":
        raise CertificateError("missing or unknown certificate format tag")
    return cert


def verify_certificate(cert: dict[str, Any]) -> list[str]:
    """Recompute every derived field and check; return a list of problems (empty if valid)."""
    problems = []
    try:
        family = cert["family"]
        params = tuple(cert["parameters"])
        sign = cert["sign_choice"]
        curves = tuple(LatticeVector(*c) for c in cert["curves"])
        deltas = tuple(cert["deltas"])
        a = cert["a"]
    except (KeyError, TypeError) as exc:
        return [f"malformed certificate: {exc!r}"]
    try:
        expected = build_certificate(family, params, sign, Bounds(**cert["bounds"]))
    except Exception as exc:  # noqa: BLE001 - every failure is reported, not raised
        return [f"rebuild failed: {exc}"]
    for key, value in expected.items():
        if key != "tool_version" and cert.get(key) != value:
            problems.append(f"field {key!r} does not match its recomputation")
    try:
        checks = _checks(family, params, deltas, curves, a, family_qsolution(family, params, sign))
    except Exception as exc:  # noqa: BLE001
        return problems + [f"check evaluation failed: {exc}"]
    problems += [f"check {k} fails" for k in CHECK_NAMES if not checks[k]]
    problems += [f"check {k} is not recorded as true" for k in CHECK_NAMES if cert.get("checks", {}).get(k) is not True]
    return problems


def format_text(cert: dict[str, Any]) -> str:
    def ball(e):
        return f"{'+' if e[0] == 1 else '-'}B({e[1]},{e[2]})"

    rec = cert["recognized"]
    lines = [
        f"family      {cert['family']} {tuple(cert['parameters'])} sign {cert['sign_choice']:+d}",
        f"curves      {'  '.join(f'({p},{q})' for p, q in cert['curves'])}",
        f"deltas      {tuple(cert['deltas'])}",
        f"framings    {tuple(cert['framings'])}",
        f"monodromy   {cert['monodromy']}",
        f"recognized  {'none' if rec is None else f'sign {rec[0]:+d}, k {rec[1]}'}",
        f"a, x        {cert['a']}, {tuple(cert['x'])}",
        f"balls       {', '.join(ball(e) for e in cert['balls'])}",
        f"checks      {', '.join(f'{k}={v}' for k, v in cert['checks'].items())}",
    ]
    return "\n".join(lines) + "\n"
