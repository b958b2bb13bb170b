"""Command-line client for the verification service.

The CLI holds no verification logic: it parses arguments, dispatches a
scenario batch either in process (through the same runner the HTTP service
uses) or to a remote service via ``--server``, and writes the report and
artifacts to the output directory.

Exit codes: 0 all checks passed, 1 at least one check failed, 2 scenario
parse/validation error, 3 internal error.  The NCG_SEED environment
variable overrides every scenario seed (for fuzzing).
"""

from __future__ import annotations

import json
import os
import sys
from pathlib import Path

import click

from . import scenarios

EXIT_OK = 0
EXIT_CHECK_FAILED = 1
EXIT_PARSE_ERROR = 2
EXIT_INTERNAL = 3


def _seed_override() -> int | None:
    raw = os.environ.get("NCG_SEED")
    if raw is None:
        return None
    try:
        return int(raw)
    except ValueError:
        raise scenarios.ScenarioError(f"NCG_SEED must be an integer, got {raw!r}")


def _run_remote(server: str, raw_doc, jobs: int, tol_scale: float, seed_override):
    import httpx

    if isinstance(raw_doc, dict):
        raw_doc = [raw_doc]
    payload = {
        "scenarios": raw_doc,
        "jobs": jobs,
        "tol_scale": tol_scale,
        "seed_override": seed_override,
    }
    resp = httpx.post(server.rstrip("/") + "/run", json=payload, timeout=600.0)
    if resp.status_code == 422:
        raise scenarios.ScenarioError(f"server rejected the scenarios: {resp.text}")
    resp.raise_for_status()
    body = resp.json()
    return body["report"], body["artifacts"]


def _write_outputs(out_dir: Path, report_rows, artifacts):
    out_dir.mkdir(parents=True, exist_ok=True)
    (out_dir / "report.json").write_text(json.dumps(report_rows, indent=2) + "\n")
    for name, content in artifacts.items():
        (out_dir / name).write_text(content)


@click.group()
def main():
    """Numerical verification workbench for spectral triples and quantum semigroups."""


@main.command("run")
@click.argument("scenario_file", type=click.Path(path_type=Path))
@click.option("--out", "out_dir", type=click.Path(path_type=Path), default=Path("ncg-out"),
              show_default=True, help="Directory for report.json and artifacts.")
@click.option("--jobs", type=int, default=1, show_default=True,
              help="Concurrent scenarios (report order stays input order).")
@click.option("--tol-scale", type=float, default=1.0, show_default=True,
              help="Multiply every tolerance by this factor.")
@click.option("--server", type=str, default=None,
              help="Run on a remote service (URL) instead of in process.")
def run_command(scenario_file: Path, out_dir: Path, jobs: int, tol_scale: float, server):
    """Run the scenarios in SCENARIO_FILE and write report.json plus artifacts."""
    try:
        try:
            text = scenario_file.read_text()
        except OSError as exc:
            raise scenarios.ScenarioError(f"cannot read scenario file: {exc}") from exc
        try:
            raw_doc = json.loads(text)
        except json.JSONDecodeError as exc:
            raise scenarios.ScenarioError(f"scenario file is not valid JSON: {exc}") from exc
        seed_override = _seed_override()
        if server:
            report_rows, artifacts = _run_remote(server, raw_doc, jobs, tol_scale, seed_override)
        else:
            batch = scenarios.parse_scenarios(raw_doc)
            report, artifacts = scenarios.run_scenarios(
                batch, jobs=jobs, tol_scale=tol_scale, seed_override=seed_override
            )
            report_rows = [row.model_dump() for row in report]
        _write_outputs(out_dir, report_rows, artifacts)
    except scenarios.ScenarioError as exc:
        click.echo(f"error: {exc}", err=True)
        sys.exit(EXIT_PARSE_ERROR)
    except Exception as exc:  # noqa: BLE001 - CLI boundary
        click.echo(f"internal error: {exc}", err=True)
        sys.exit(EXIT_INTERNAL)
    failed = [row for row in report_rows if not row["passed"]]
    for row in failed:
        click.echo(
            f"FAIL {row['check_name']}: residual {row['residual']:.3e} > tol {row['tolerance']:.3e}",
            err=True,
        )
    click.echo(f"{len(report_rows) - len(failed)}/{len(report_rows)} checks passed -> {out_dir}")
    sys.exit(EXIT_CHECK_FAILED if failed else EXIT_OK)


@main.command("list-checks")
@click.option("--server", type=str, default=None, help="Query a remote service instead.")
def list_checks_command(server):
    """Print every scenario kind with its parameters and an example."""
    try:
        if server:
            import httpx

            resp = httpx.get(server.rstrip("/") + "/checks", timeout=60.0)
            resp.raise_for_status()
            click.echo(resp.json()["listing"])
        else:
            click.echo(scenarios.list_checks())
    except Exception as exc:  # noqa: BLE001 - CLI boundary
        click.echo(f"internal error: {exc}", err=True)
        sys.exit(EXIT_INTERNAL)


@main.command("serve")
@click.option("--host", default="127.0.0.1", show_default=True)
@click.option("--port", default=8000, show_default=True, type=int)
def serve_command(host: str, port: int):
    """Start the HTTP verification service."""
    import uvicorn

    uvicorn.run("ncg.service.app:app", host=host, port=port)


if __name__ == "__main__":
    main()
