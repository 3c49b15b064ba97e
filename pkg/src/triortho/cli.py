"""Command-line front end.

Every command is a thin client of the HTTP service: it posts a request,
prints the canonical JSON report, and exits with the report's code
(0 pass, 1 theorem mismatch, 2 input error). By default the service runs
in-process; --url targets a running server instead.
"""

from __future__ import annotations

import asyncio
import json
import sys
from typing import Optional

import click
import httpx

from .reports import canonical_json


def _parse_n(value: str) -> tuple[int, int]:
    try:
        if ":" in value:
            lo, hi = value.split(":", 1)
            return int(lo), int(hi)
        n = int(value)
        return n, n
    except ValueError:
        raise click.BadParameter(f"expected N or LO:HI, got {value!r}")


def _post(path: str, payload: dict, url: Optional[str]) -> dict:
    if url is not None:
        with httpx.Client(base_url=url, timeout=None) as client:
            resp = client.post(path, json=payload)
    else:
        from .service.app import app

        async def call() -> httpx.Response:
            transport = httpx.ASGITransport(app=app)
            async with httpx.AsyncClient(
                transport=transport, base_url="http://triortho", timeout=None
            ) as client:
                return await client.post(path, json=payload)

        resp = asyncio.run(call())
    if resp.status_code != 200:
        try:
            detail = resp.json()
        except ValueError:
            detail = {"error": "http", "detail": resp.text}
        # config and parse problems surface as input errors
        exc = click.ClickException(f"service error {resp.status_code}: {detail}")
        exc.exit_code = 2
        raise exc
    return resp.json()


def _emit(result: dict, out: Optional[str]) -> None:
    report = result["report"]
    if out is not None and out.endswith(".csv") and "csv" in report:
        text = report["csv"]
    else:
        text = canonical_json(report) + "\n"
    if out is None:
        sys.stdout.write(text)
    else:
        with open(out, "w", encoding="utf-8") as fh:
            fh.write(text)


@click.group()
def main() -> None:
    """Verification harness for complement-space intersection theorems."""


@main.command("verify-theorem2")
@click.option("--n", "n_range", default="1:4", help="Degree N or LO:HI.")
@click.option(
    "--mode",
    type=click.Choice(["exact", "float", "both"]),
    default="exact",
    show_default=True,
)
@click.option("--grid", default=200, show_default=True, help="Grid size in (c, d) points.")
@click.option("--seed", default=0, show_default=True)
@click.option("--out", type=click.Path(dir_okay=False), default=None)
@click.option("--url", default=None, help="Remote service URL (default: in-process).")
def verify_theorem2(n_range: str, mode: str, grid: int, seed: int, out, url) -> None:
    """Check predicted vs observed intersection dimensions on a (c, d) grid."""
    lo, hi = _parse_n(n_range)
    payload = {"n_lo": lo, "n_hi": hi, "mode": mode, "grid": grid, "seed": seed}
    result = _post("/verify-theorem2", payload, url)
    _emit(result, out)
    sys.exit(result["exit_code"])


@main.command("patch")
@click.option(
    "--patch",
    "patch_file",
    type=click.Path(exists=False, dir_okay=False),
    required=True,
    help="Patch JSON file with z and ring.",
)
@click.option("--n", "n_range", default="1:3", help="Degree N or LO:HI.")
@click.option(
    "--mode",
    type=click.Choice(["exact", "float"]),
    default="exact",
    show_default=True,
)
@click.option("--seed", default=0, show_default=True)
@click.option("--out", type=click.Path(dir_okay=False), default=None)
@click.option("--url", default=None, help="Remote service URL (default: in-process).")
def patch(patch_file: str, n_range: str, mode: str, seed: int, out, url) -> None:
    """Validate a patch, classify pairs, intersect, report constants."""
    lo, hi = _parse_n(n_range)
    try:
        with open(patch_file, "r", encoding="utf-8") as fh:
            data = json.load(fh)
    except OSError as exc:
        click.echo(f"error: cannot read {patch_file}: {exc}", err=True)
        sys.exit(2)
    except json.JSONDecodeError as exc:
        click.echo(
            f"error: malformed JSON at line {exc.lineno}, column {exc.colno}: {exc.msg}",
            err=True,
        )
        sys.exit(2)
    payload = {"patch": data, "n_lo": lo, "n_hi": hi, "mode": mode, "seed": seed}
    result = _post("/patch", payload, url)
    _emit(result, out)
    sys.exit(result["exit_code"])


@main.command("constants")
@click.option("--n", "n_range", default="0:4", help="Degree N or LO:HI.")
@click.option("--q", default=4, show_default=True, help="Triangles per patch in the sweep.")
@click.option("--delta", default=0.5, show_default=True, help="Minimum triangle angle.")
@click.option("--rho", default=1.0, show_default=True, help="Minimum radius.")
@click.option("--samples", default=10, show_default=True)
@click.option("--seed", default=0, show_default=True)
@click.option("--out", type=click.Path(dir_okay=False), default=None, help="Write report; .csv writes sweep rows.")
@click.option("--url", default=None, help="Remote service URL (default: in-process).")
def constants(n_range, q, delta, rho, samples, seed, out, url) -> None:
    """Tabulate the reference constant and sweep the patch family."""
    lo, hi = _parse_n(n_range)
    payload = {
        "n_lo": lo,
        "n_hi": hi,
        "q": q,
        "delta": delta,
        "rho": rho,
        "samples": samples,
        "seed": seed,
    }
    result = _post("/constants", payload, url)
    _emit(result, out)
    sys.exit(result["exit_code"])


@main.command("serve")
@click.option("--host", default="127.0.0.1", show_default=True)
@click.option("--port", default=8000, show_default=True)
def serve(host: str, port: int) -> None:
    """Run the HTTP service."""
    import uvicorn

    from .service.app import app

    uvicorn.run(app, host=host, port=port)


if __name__ == "__main__":
    main()
