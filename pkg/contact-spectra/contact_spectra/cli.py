# Copyright 2025-present Contact Spectra Developers.
# Licensed under the Apache License, Version 2.0.
# See http://www.apache.org/licenses/LICENSE-2.0 for details.

"""
``contact-spectra`` command line: torsion, eta and verify on a TOML or JSON
manifest.

Exit codes: 0 success, 1 failed verification, 2 invalid input, 3 numeric failure.
"""

import argparse
import json
import sys
from pathlib import Path
from typing import Any, Dict, List, Optional

import pandas as pd
from pydantic import ValidationError
from spectra_core import ErrorCode, NumericError, PoleError, PrecisionConfig, SpectraException, ValidationFailure
from spectra_core.utils.loggings import configure_logging, get_logger

from .config import ComplexValue, GridSection, Manifest, load_manifest
from .eta import EtaCalculator
from .torsion import HEAT_METHODS, TORSION_METHODS, TorsionCalculator
from .verify import VerificationReport, random_dataset, verify_manifest

logger = get_logger(__name__)

EXIT_OK = 0
EXIT_VERIFY_FAILED = 1
EXIT_INVALID = 2
EXIT_NUMERIC = 3

CLI_ETA_METHODS = ("geo", "dyn", "zeta")
GRID_COLUMNS = ["t", "value", "error_bound"]
ETA_COLUMNS = ["quantity", "re", "im", "error_bound"]


def _complex(value: complex) -> Dict[str, float]:
    return ComplexValue.of(value).model_dump()


def _parse_s_values(text: Optional[str]) -> List[complex]:
    if not text:
        return []
    values = []
    for part in text.split(","):
        try:
            values.append(complex(part.strip().replace(" ", "")))
        except ValueError as e:
            raise SpectraException(
                ErrorCode.CONFIG_ERROR, message_args={"error_message": f"--s value {part!r} is not a number"}
            ) from e
    return values


def _grid_for(manifest: Manifest, override: Optional[str]) -> GridSection:
    """The manifest grid, with ``--grid t_min,t_max,points`` taking precedence."""
    grid = manifest.grid_or_default()
    if not override:
        return grid
    parts = [part.strip() for part in override.split(",")]
    try:
        if len(parts) != 3:
            raise ValueError(f"expected 3 fields, got {len(parts)}")
        values = grid.model_dump()
        values.update(t_min=float(parts[0]), t_max=float(parts[1]), points=int(parts[2]))
        return GridSection(**values)
    except (ValueError, ValidationError) as e:
        raise SpectraException(
            ErrorCode.CONFIG_ERROR, message_args={"error_message": f"--grid {override!r}: {e}"}
        ) from e


# ==================== Commands ====================


def run_torsion(manifest: Manifest, config: PrecisionConfig, method: str, grid_override: Optional[str]):
    calculator = TorsionCalculator(manifest.seifert, manifest.require_representation(), config)
    result = calculator.torsion(method)
    payload: Dict[str, Any] = {
        "command": "torsion",
        "method": method,
        "value": result.value,
        "truncation_error_bound": result.truncation_error_bound,
        "fingerprint": manifest.fingerprint(),
    }
    rows = []
    if method in HEAT_METHODS:
        t_values = [float(t) for t in _grid_for(manifest, grid_override).t_values()]
        trace = calculator.theta_grid(t_values, method)
        rows = [[t, value, config.target_abs_tol] for t, value in zip(t_values, trace)]
        payload["grid"] = [dict(zip(GRID_COLUMNS, row)) for row in rows]
    else:
        rows = [[None, result.value, result.truncation_error_bound]]
    return payload, pd.DataFrame(rows, columns=GRID_COLUMNS)


def run_eta(manifest: Manifest, config: PrecisionConfig, method: str, s_text: Optional[str]):
    calculator = EtaCalculator(manifest.seifert, manifest.require_representation(), config)
    result = calculator.eta_invariant(method)
    residues = [calculator.eta_residue(p) for p in range(1, calculator.k + 1)]
    samples = []
    rows = [["eta(0)", result.value, 0.0, result.truncation_error_bound]]
    for s in _parse_s_values(s_text):
        try:
            value = calculator.eta_function(s)
        except PoleError:
            p = int(round(s.real))
            residue = calculator.eta_residue(p).value
            print(f"[notice] s={s} is a pole of eta; residue {residue!r}", file=sys.stderr)
            samples.append({"s": _complex(s), "pole": True, "residue": residue})
            rows.append([f"residue(s={s})", residue, 0.0, 0.0])
            continue
        samples.append({"s": _complex(s), "value": _complex(value), "error_bound": config.target_abs_tol})
        rows.append([f"eta(s={s})", value.real, value.imag, config.target_abs_tol])
    for residue in residues:
        rows.append([f"residue(p={residue.p})", residue.value, 0.0, 0.0])
    payload = {
        "command": "eta",
        "method": method,
        "value": result.value,
        "truncation_error_bound": result.truncation_error_bound,
        "residues": [
            {"p": r.p, "value": r.value, "phi_residue_stated": _complex(r.phi_residue_stated)} for r in residues
        ],
        "samples": samples,
        "fingerprint": manifest.fingerprint(),
    }
    return payload, pd.DataFrame(rows, columns=ETA_COLUMNS)


def run_verify(args: argparse.Namespace) -> VerificationReport:
    """Generated datasets treat index integrality as a diagnostic; manifests require it."""
    if args.random:
        manifest = random_dataset(args.seed, args.k)
        return verify_manifest(manifest, integrality="diagnostic", seed=args.seed)
    if args.manifest is None:
        raise SpectraException(
            ErrorCode.CONFIG_ERROR, message_args={"error_message": "verify needs a manifest or --random"}
        )
    return verify_manifest(load_manifest(args.manifest))


# ==================== Entry Point ====================


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="contact-spectra",
        description="Contact analytic torsion and eta invariants of CR Seifert manifolds.",
    )
    parser.add_argument(
        "--log-level",
        default="WARNING",
        choices=["DEBUG", "INFO", "WARNING", "ERROR"],
        help="Logging level (default: WARNING)",
    )
    parser.add_argument("--output", type=Path, default=None, help="Write the result to this file instead of stdout")
    commands = parser.add_subparsers(dest="command", required=True)

    torsion = commands.add_parser("torsion", help="Contact analytic torsion T_Q")
    torsion.add_argument("manifest", type=Path)
    torsion.add_argument("--method", default="closed", choices=TORSION_METHODS)
    torsion.add_argument("--format", default="json", choices=["json", "csv"])
    torsion.add_argument("--grid", default=None, help="Heat-trace grid override: t_min,t_max,points")

    eta = commands.add_parser("eta", help="Eta invariant eta(S_Q)(0), residues and eta(s) samples")
    eta.add_argument("manifest", type=Path)
    eta.add_argument("--method", default="geo", choices=CLI_ETA_METHODS)
    eta.add_argument("--s", default=None, help="Comma-separated complex sample points, e.g. 0.25,-0.5+0.3j")
    eta.add_argument("--format", default="json", choices=["json", "csv"])

    verify = commands.add_parser("verify", help="Run the conformance suite")
    verify.add_argument("manifest", type=Path, nargs="?", default=None)
    verify.add_argument("--random", action="store_true", help="Verify a generated dataset instead of a manifest")
    verify.add_argument("--seed", type=int, default=0, help="Seed of the generated dataset (default: 0)")
    verify.add_argument("--k", type=int, default=None, choices=[1, 2], help="k of the generated dataset")
    verify.add_argument("--format", default="json", choices=["json"])
    return parser


def _emit(text: str, output: Optional[Path]) -> None:
    if output is None:
        sys.stdout.write(text)
        if not text.endswith("\n"):
            sys.stdout.write("\n")
        return
    output.write_text(text, encoding="utf-8")
    logger.info(f"wrote {output}")


def main(argv: Optional[List[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    configure_logging(args.log_level)
    try:
        if args.command == "verify":
            report = run_verify(args)
            _emit(report.model_dump_json(indent=2), args.output)
            if not report.passed:
                names = ", ".join(c.name for c in report.failed_checks() if c.severity == "required")
                print(f"[verify] FAIL: {names}", file=sys.stderr)
                return EXIT_VERIFY_FAILED
            return EXIT_OK

        manifest = load_manifest(args.manifest)
        config = manifest.precision_config()
        if args.command == "torsion":
            payload, frame = run_torsion(manifest, config, args.method, args.grid)
        else:
            payload, frame = run_eta(manifest, config, args.method, args.s)
        if args.format == "csv":
            _emit(frame.to_csv(index=False), args.output)
        else:
            _emit(json.dumps(payload, indent=2), args.output)
        return EXIT_OK
    except ValidationFailure as e:
        print(f"[error] {e}", file=sys.stderr)
        return EXIT_INVALID
    except NumericError as e:
        print(f"[error] {e}", file=sys.stderr)
        return EXIT_NUMERIC
    except SpectraException as e:
        print(f"[error] {e}", file=sys.stderr)
        return EXIT_INVALID


if __name__ == "__main__":
    sys.exit(main())
