"""Command-line interface: partition calculus, integrality verdicts, atlas
queries and the built-in acceptance self-test.

Output is deterministic: JSON mode serializes with sorted keys and fixed
indentation, so identical inputs produce byte-identical bytes, and the text
mode renders the same payload.  Exit codes follow one convention everywhere:
0 for success, 1 when a consistency or acceptance check fails or a data file
fails validation, 2 for usage and input errors.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from dataclasses import dataclass
from typing import Iterator, Optional

from .delta_check import PRESETS, delta_verdict, preset_report
from .errors import (
    AtlasLoadError,
    CapabilityError,
    InputError,
    IntegrityError,
    OrbitNotFoundError,
    StepInapplicableError,
)
from .orbit_atlas import GROUPS, check_consistency, load_atlas, query
from .orbit_partitions import (
    ClassicalOrbit,
    birational_sources,
    elementary_step,
    is_birationally_rigid,
    is_special,
    is_valid_type,
    rigid_special_source,
)
from .root_system import build_root_system
from .selfcheck import run_all

ENV_ATLAS_PATH = "ORBIT_ATLAS_PATH"

__all__ = ["CommandResult", "main"]


@dataclass(frozen=True)
class CommandResult:
    status: str
    payload: dict
    diagnostics: tuple[str, ...] = ()
    exit_code: int = 0


def _ok(payload: dict, diagnostics: tuple[str, ...] = ()) -> CommandResult:
    return CommandResult("ok", payload, diagnostics, 0)


def _parse_parts(text: str) -> tuple[int, ...]:
    try:
        return tuple(int(chunk) for chunk in text.split(","))
    except ValueError:
        raise InputError(
            f"--parts must be comma-separated integers, got {text!r}"
        ) from None


def _parse_levi(text: str, rank: int) -> tuple[int, ...]:
    if text == "all":
        return tuple(range(1, rank + 1))
    try:
        return tuple(int(chunk) for chunk in text.split(","))
    except ValueError:
        raise InputError(
            f"--levi must be comma-separated labels or 'all', got {text!r}"
        ) from None


def _atlas_path(args: argparse.Namespace) -> Optional[str]:
    explicit = getattr(args, "data", None)
    if explicit:
        return explicit
    return os.environ.get(ENV_ATLAS_PATH) or None


def cmd_partition(args: argparse.Namespace) -> CommandResult:
    parts = _parse_parts(args.parts)
    base = {"type": args.type, "parts": list(parts)}

    if args.action == "validate":
        # a well-formed partition of the wrong parity is an answer, not an error
        return _ok({**base, "valid": is_valid_type(parts, args.type)})

    orbit = ClassicalOrbit(args.type, parts)
    if args.action == "special":
        return _ok({**base, "special": is_special(orbit)})
    if args.action == "rigid":
        return _ok({**base, "birationally_rigid": is_birationally_rigid(orbit)})
    if args.action == "step":
        if args.n is None:
            raise InputError("'step' needs --n")
        stepped, variant = elementary_step(orbit, args.n, args.variant)
        return _ok(
            {**base, "n": args.n, "result": list(stepped.parts), "variant": variant}
        )
    if args.action == "sources":
        found = birational_sources(orbit)
        return _ok(
            {
                **base,
                "sources": [
                    {
                        "parts": list(s.orbit.parts),
                        "script": [[n, v] for n, v in s.script.steps],
                    }
                    for s in found
                ],
            }
        )
    source = rigid_special_source(orbit)  # action == rigid-special-source
    return _ok(
        {
            **base,
            "source": list(source.orbit.parts),
            "script": [[n, v] for n, v in source.script.steps],
        }
    )


def cmd_delta(args: argparse.Namespace) -> CommandResult:
    if args.preset is not None:
        if args.system is not None or args.levi is not None:
            raise InputError("give either --preset or --system/--levi, not both")
        report = preset_report(args.preset)
    else:
        if args.system is None or args.levi is None:
            raise InputError("delta needs --preset, or --system together with --levi")
        rank = build_root_system(args.system).rank
        report = delta_verdict(args.system, _parse_levi(args.levi, rank))
    return _ok(report.to_payload())


def _record_payload(record) -> dict:
    return {
        "group": record.group,
        "label": record.label,
        "is_special": record.is_special,
        "is_rigid": record.is_rigid,
        "is_birationally_rigid": record.is_birationally_rigid,
        "codim4_boundary": record.codim4_boundary,
        "fails_smooth_locus_codim4": record.fails_smooth_locus_codim4,
        "in_e1": record.in_e1,
        "in_e2": record.in_e2,
        "in_e3": record.in_e3,
        "levi_descriptor": (
            list(record.levi_descriptor) if record.levi_descriptor else None
        ),
        "provenance": dict(record.provenance),
        "comment": record.comment,
    }


def cmd_atlas(args: argparse.Namespace) -> CommandResult:
    records = load_atlas(_atlas_path(args))

    if args.action == "query":
        if args.group is None or args.label is None:
            raise InputError("'query' needs --group and --label")
        return _ok(_record_payload(query(records, args.group, args.label)))

    if args.action == "list":
        if args.group is not None and args.group not in GROUPS:
            raise InputError(
                f"unknown group {args.group!r}; expected one of {', '.join(GROUPS)}"
            )
        chosen = [r for r in records if args.group is None or r.group == args.group]
        return _ok(
            {
                "count": len(chosen),
                "orbits": [{"group": r.group, "label": r.label} for r in chosen],
            }
        )

    results = check_consistency(records)  # action == check
    all_passed = all(r.passed for r in results)
    return CommandResult(
        "ok",
        {"all_passed": all_passed, "checks": [r.to_payload() for r in results]},
        (),
        0 if all_passed else 1,
    )


def cmd_selftest(args: argparse.Namespace) -> CommandResult:
    results = run_all(_atlas_path(args))
    all_passed = all(r.passed for r in results)
    payload = {
        "all_passed": all_passed,
        "passed": sum(1 for r in results if r.passed),
        "total": len(results),
        "criteria": [r.to_payload() for r in results],
    }
    return CommandResult("ok", payload, (), 0 if all_passed else 1)


def _scalar_text(value) -> str:
    if isinstance(value, bool):
        return "true" if value else "false"
    if value is None:
        return "null"
    return str(value)


def _is_scalar_list(value) -> bool:
    return isinstance(value, list) and all(
        not isinstance(x, (dict, list)) for x in value
    )


def _text_lines(value, indent: int = 0) -> Iterator[str]:
    """Line-oriented rendering of a JSON payload, same key order as the JSON."""
    pad = "  " * indent
    if isinstance(value, dict):
        for key in sorted(value):
            item = value[key]
            if _is_scalar_list(item):
                yield f"{pad}{key}: [{', '.join(_scalar_text(x) for x in item)}]"
            elif isinstance(item, (dict, list)) and item:
                yield f"{pad}{key}:"
                yield from _text_lines(item, indent + 1)
            elif isinstance(item, (dict, list)):
                yield f"{pad}{key}: (empty)"
            else:
                yield f"{pad}{key}: {_scalar_text(item)}"
    elif isinstance(value, list):
        for item in value:
            if _is_scalar_list(item):
                yield f"{pad}- [{', '.join(_scalar_text(x) for x in item)}]"
            elif isinstance(item, (dict, list)):
                yield f"{pad}-"
                yield from _text_lines(item, indent + 1)
            else:
                yield f"{pad}- {_scalar_text(item)}"


def _selftest_table(payload: dict) -> str:
    lines = ["id  status  criterion", "--  ------  ---------"]
    for item in payload["criteria"]:
        status = "PASS" if item["passed"] else "FAIL"
        lines.append(f"{item['id']:>2}  {status:<6}  {item['name']}")
        lines.append(f"    expected: {item['expected']}")
        lines.append(f"    actual:   {item['actual']}")
        for note in item["notes"]:
            lines.append(f"    note:     {note}")
    lines.append("")
    lines.append(f"{payload['passed']}/{payload['total']} criteria passed")
    return "\n".join(lines)


def _emit(result: CommandResult, json_mode: bool, text: Optional[str] = None) -> None:
    if json_mode:
        document = {
            "status": result.status,
            "payload": result.payload,
            "diagnostics": list(result.diagnostics),
        }
        print(json.dumps(document, indent=2, sort_keys=True))
        return
    if result.status == "error":
        print(f"error: {result.payload.get('error', 'unknown error')}", file=sys.stderr)
        suggestions = result.payload.get("suggestions") or []
        if suggestions:
            print("did you mean: " + ", ".join(suggestions), file=sys.stderr)
    else:
        print(text if text is not None else "\n".join(_text_lines(result.payload)))
    for line in result.diagnostics:
        print(f"note: {line}", file=sys.stderr)


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="nilorb",
        description=(
            "Exact nilpotent-orbit combinatorics: classical partition calculus, "
            "E7/E8 integrality verdicts, and a checked atlas of exceptional orbits."
        ),
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("partition", help="classical partition calculus (types B, C, D)")
    p.add_argument(
        "action",
        choices=["validate", "special", "rigid", "step", "sources", "rigid-special-source"],
    )
    p.add_argument("--type", required=True, choices=["B", "C", "D"])
    p.add_argument("--parts", required=True, help="comma-separated parts, e.g. 3,3,2,2,1,1")
    p.add_argument("--n", type=int, default=None, help="step index, for 'step'")
    p.add_argument("--variant", choices=["i", "ii"], default=None, help="force a step variant")
    p.add_argument("--json", action="store_true", help="machine-readable output")
    p.set_defaults(handler=cmd_partition)

    p = sub.add_parser("delta", help="integrality verdict for a Levi in E7 or E8")
    p.add_argument("--preset", choices=sorted(PRESETS), default=None)
    p.add_argument("--system", choices=["E7", "E8"], default=None)
    p.add_argument("--levi", default=None, help="comma-separated simple-root labels, or 'all'")
    p.add_argument("--json", action="store_true", help="machine-readable output")
    p.set_defaults(handler=cmd_delta)

    p = sub.add_parser("atlas", help="query and cross-check the exceptional orbit table")
    p.add_argument("action", choices=["query", "check", "list"])
    p.add_argument("--group", default=None, help="G2, F4, E6, E7 or E8")
    p.add_argument("--label", default=None, help="orbit label, matched exactly")
    p.add_argument(
        "--data",
        default=None,
        help=f"atlas JSON file (default: ${ENV_ATLAS_PATH} or the packaged data)",
    )
    p.add_argument("--json", action="store_true", help="machine-readable output")
    p.set_defaults(handler=cmd_atlas)

    p = sub.add_parser("selftest", help="replay the full acceptance suite")
    p.add_argument("--json", action="store_true", help="machine-readable output")
    p.set_defaults(handler=cmd_selftest)

    return parser


def main(argv: Optional[list[str]] = None) -> int:
    args = _build_parser().parse_args(argv)
    try:
        result = args.handler(args)
    except OrbitNotFoundError as exc:
        result = CommandResult(
            "error", {"error": str(exc), "suggestions": list(exc.suggestions)}, (), 2
        )
    except (InputError, CapabilityError, StepInapplicableError) as exc:
        result = CommandResult("error", {"error": str(exc)}, (), 2)
    except (AtlasLoadError, IntegrityError) as exc:
        result = CommandResult("error", {"error": str(exc)}, (), 1)

    text = None
    if args.command == "selftest" and result.status == "ok":
        text = _selftest_table(result.payload)
    _emit(result, json_mode=args.json, text=text)
    return result.exit_code


if __name__ == "__main__":
    raise SystemExit(main())
