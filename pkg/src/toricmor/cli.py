"""Command line entry point.

    toricmor VERB [INPUT] [--direction v1,...,vn] [--verbose]

INPUT is a JSON document path, or ``-``/absent for standard input. Ray
indices in ``degrees``, ``exponents`` and ``J`` follow the reindexed order
reported by ``validate`` (distinguished cone last); for documents that
already list the distinguished cone last the two orders coincide.
"""

from __future__ import annotations

import argparse
import json
import sys
from typing import Any, Mapping

from . import selftest
from .errors import DocumentError, ToricMorError
from .fan import Fan, parse_fan, primitive_collections, relation_matrix
from .jacobian import integrate_theta
from .localization import (choose_direction, localization_terms, make_direction,
                           pushforward_class, vanishing_predicate)
from .numerics import DegreeData, derive_degree_data, euler_char_Y

VERBS = ("validate", "primitive-collections", "degree-data", "chi-y", "pushforward",
         "integrate", "check-vanishing", "selftest")


def _int_list(doc: Mapping[str, Any], key: str, length: int | None = None) -> list[int]:
    if key not in doc:
        raise DocumentError(f"missing key {key!r}")
    value = doc[key]
    if not isinstance(value, list) or any(isinstance(v, bool) or not isinstance(v, int)
                                          for v in value):
        raise DocumentError(f"{key!r} must be an array of integers")
    if length is not None and len(value) != length:
        raise DocumentError(f"{key!r} must have length {length}, got {len(value)}")
    return list(value)


def _fan(doc: Mapping[str, Any]) -> Fan:
    return parse_fan(doc.get("fan", doc))


def _degree_data(doc: Mapping[str, Any], fan: Fan) -> DegreeData:
    if "genus" not in doc:
        raise DocumentError("missing key 'genus'")
    g = doc["genus"]
    if isinstance(g, bool) or not isinstance(g, int):
        raise DocumentError("'genus' must be an integer")
    return derive_degree_data(fan, g, _int_list(doc, "degrees", fan.l))


def _exponents(doc: Mapping[str, Any], fan: Fan) -> list[int]:
    m = _int_list(doc, "exponents", fan.r)
    if any(v < 0 for v in m):
        raise DocumentError("'exponents' must be nonnegative")
    return m


def _direction(fan: Fan, text: str | None):
    if text is None:
        return choose_direction(fan)
    try:
        v = [int(s) for s in text.split(",")]
    except ValueError:
        raise DocumentError(f"--direction expects comma-separated integers, got {text!r}") from None
    return make_direction(fan, v)


def _one_based(seq) -> list[int]:
    return [i + 1 for i in seq]


def _terms_report(fan, dd, m, direction) -> list[dict]:
    return [{"cone": _one_based(fan.max_cones[x]), "series": term.to_json()}
            for x, term in enumerate(localization_terms(fan, dd, m, direction))]


def execute(verb: str, doc: Mapping[str, Any] | None, direction: str | None = None,
            verbose: bool = False) -> tuple[dict, int]:
    """Run one verb; returns ``(report, exit status)``."""
    if verb == "selftest":
        checks = [{"check": name, "passed": ok, "detail": detail}
                  for name, ok, detail in selftest.run()]
        failed = sum(not c["passed"] for c in checks)
        return {"checks": checks, "failed": failed, "passed": len(checks) - failed}, int(failed > 0)
    if verb not in VERBS:
        raise DocumentError(f"unknown verb {verb!r}")
    if not isinstance(doc, Mapping):
        raise DocumentError("input must be a JSON object")

    fan = _fan(doc)
    if verb == "validate":
        return {
            "valid": True, "n": fan.n, "r": fan.r, "l": fan.l,
            "permutation": _one_based(fan.permutation),
            "rays": [list(v) for v in fan.rays],
            "max_cones": [_one_based(c) for c in fan.max_cones],
            "relation_matrix": [list(row) for row in relation_matrix(fan)],
        }, 0
    if verb == "primitive-collections":
        return {"primitive_collections": [_one_based(p) for p in primitive_collections(fan)]}, 0

    dd = _degree_data(doc, fan)
    if verb == "degree-data":
        return {"genus": dd.g, "d": list(dd.d), "N": list(dd.N), "dim_mor": dd.dim_mor,
                "dim_W": dd.dim_W, "dim_V": dd.dim_V, "dim_Y": dd.dim_Y}, 0
    if verb == "chi-y":
        return {"chi_Y": euler_char_Y(fan, dd)}, 0

    m = _exponents(doc, fan)
    dirn = _direction(fan, direction)
    report: dict[str, Any] = {"exponents": m, "direction": list(dirn.v)}
    if verb == "pushforward":
        p = pushforward_class(fan, dd, m, dirn)
        report["pushforward"] = p.to_records()
    elif verb == "integrate":
        if sum(m) != dd.dim_V:
            raise DocumentError(f"degree mismatch: sum of exponents {sum(m)} != dim_V {dd.dim_V}")
        p = pushforward_class(fan, dd, m, dirn)
        report["value"] = str(integrate_theta(p, fan, dd.g))
        if verbose:
            report["pushforward"] = p.to_records()
    elif verb == "check-vanishing":
        J = [j - 1 for j in _int_list(doc, "J")]
        if any(not 0 <= j < fan.r for j in J):
            raise DocumentError(f"'J' entries must lie in 1..{fan.r}")
        cert = vanishing_predicate(fan, dd, J, m)
        p = pushforward_class(fan, dd, m, dirn)
        report.update({"J": _one_based(cert.subset), "spans_cone": cert.spans_cone,
                       "short_rays": _one_based(cert.short_rays), "predicate": cert.holds,
                       "pushforward": p.to_records()})
        if sum(m) == dd.dim_V:
            report["integral"] = str(integrate_theta(p, fan, dd.g))
        if cert.holds and not p.is_zero():
            report["violation"] = "vanishing predicate holds but the push-forward is nonzero"
            return report, 1
    if verbose:
        report["fixed_point_terms"] = _terms_report(fan, dd, m, dirn)
    return report, 0


def _read_input(path: str | None) -> Any:
    try:
        if path in (None, "-"):
            text = sys.stdin.read()
        else:
            with open(path, encoding="utf-8") as fh:
                text = fh.read()
    except OSError as exc:
        raise DocumentError(f"cannot read input: {exc}") from None
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise DocumentError(f"malformed document: {exc}") from None


def main(argv: list[str] | None = None) -> int:
    parser = argparse.ArgumentParser(prog="toricmor", description=__doc__.splitlines()[0])
    parser.add_argument("verb", choices=VERBS)
    parser.add_argument("input", nargs="?", help="JSON document; '-' or absent reads stdin")
    parser.add_argument("--direction", help="override the direction, e.g. 1,2")
    parser.add_argument("--verbose", action="store_true",
                        help="add the push-forward class and per-fixed-point series")
    args = parser.parse_args(argv)

    try:
        doc = None if args.verb == "selftest" else _read_input(args.input)
        report, status = execute(args.verb, doc, args.direction, args.verbose)
    except ToricMorError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2 if isinstance(exc, DocumentError) else 1
    json.dump(report, sys.stdout, indent=2, sort_keys=True)
    sys.stdout.write("\n")
    return status


if __name__ == "__main__":
    sys.exit(main())
