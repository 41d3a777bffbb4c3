"""`stl`: thin client for the experiment service.

Subcommands POST their options to the corresponding service endpoint and
write the returned report to --out (CSV for det-compare, canonical JSON
otherwise).  By default the service runs in-process; point --server at a
running instance to go over the network.  Exit codes: 0 all checks passed,
1 some check failed, 2 usage or parameter error.
"""

from __future__ import annotations

import sys

import click
import httpx

from .experiments import canonical_json_bytes


def _client(server: str | None):
    if server:
        return httpx.Client(base_url=server, timeout=600.0)
    import warnings

    with warnings.catch_warnings():
        # starlette's test client warns about its own httpx usage; harmless here
        warnings.simplefilter("ignore", DeprecationWarning)
        from fastapi.testclient import TestClient

    from .service.app import app

    return TestClient(app)


def _post(server: str | None, path: str, payload: dict) -> dict:
    with _client(server) as client:
        response = client.post(path, json=payload)
    if response.status_code == 422:
        detail = response.json().get("detail", response.text)
        raise click.UsageError(f"invalid parameters: {detail}")
    if response.status_code != 200:
        raise click.ClickException(f"service error {response.status_code}: {response.text}")
    return response.json()


def _finish(report: dict, out: str | None, csv_text: str | None = None) -> None:
    payload = csv_text.encode() if csv_text is not None else canonical_json_bytes(report)
    if out:
        with open(out, "wb") as fh:
            fh.write(payload)
    else:
        sys.stdout.buffer.write(payload)
    summary = report["summary"]
    verdict = "PASS" if summary["pass"] else "FAIL"
    click.echo(f"{verdict} {canonical_json_bytes(summary).decode().strip()}", err=True)
    sys.exit(0 if summary["pass"] else 1)


def common_options(fn):
    options = [
        click.option("--dim", type=int, default=8, show_default=True,
                     help="Matrix order (upper bound where trials draw sizes)."),
        click.option("--rank", type=int, default=24, show_default=True,
                     help="Representation length (upper bound where trials draw sizes)."),
        click.option("--trials", type=int, default=50, show_default=True),
        click.option("--seed", type=int, default=1, show_default=True),
        click.option("--r", type=float, default=2.0 / 3.0, show_default=True),
        click.option("--s", type=float, default=1.0, show_default=True),
        click.option("--p", type=float, default=1.0, show_default=True),
        click.option("--tol", type=float, default=None,
                     help="Override the subcommand's default tolerance."),
        click.option("--out", type=click.Path(dir_okay=False, writable=True), default=None,
                     help="Report path (CSV for det-compare, JSON otherwise); stdout if omitted."),
        click.option("--unsafe-exponents", is_flag=True, default=False,
                     help="Allow exponents off the admissibility surface (marks the report exploratory)."),
        click.option("--server", type=str, default=None,
                     help="Base URL of a running service; defaults to in-process execution."),
    ]
    for opt in reversed(options):
        fn = opt(fn)
    return fn


def _payload(**kwargs) -> dict:
    return {k: v for k, v in kwargs.items() if v is not None}


@click.group()
def main():
    """Verification experiments for nuclear-operator trace/determinant machinery."""


@main.command("trace-check")
@common_options
def trace_check(dim, rank, trials, seed, r, s, p, tol, out, unsafe_exponents, server):
    """Nuclear trace equals spectral trace on random representations."""
    report = _post(server, "/experiments/trace-check",
                   _payload(dim=dim, rank=rank, trials=trials, seed=seed, r=r, s=s, p=p,
                            tol=tol, unsafe_exponents=unsafe_exponents))
    _finish(report, out)


@main.command("det-compare")
@common_options
def det_compare(dim, rank, trials, seed, r, s, p, tol, out, unsafe_exponents, server):
    """Three-way Fredholm determinant agreement on a z-grid (CSV output)."""
    body = _post(server, "/experiments/det-compare",
                 _payload(dim=dim, rank=rank, trials=trials, seed=seed, r=r, s=s, p=p,
                          tol=tol, unsafe_exponents=unsafe_exponents))
    _finish(body["report"], out, csv_text=body["csv"])


@main.command("weyl-scan")
@common_options
@click.option("--ladder-max", type=int, default=1024, show_default=True,
              help="Top rung of the doubling size ladder starting at 16.")
@click.option("--scan-trials", type=int, default=2, show_default=True,
              help="Random representations per rung (besides the diagonal one).")
def weyl_scan(dim, rank, trials, seed, r, s, p, tol, out, unsafe_exponents, server,
              ladder_max, scan_trials):
    """Eigenvalue-norm vs quasinorm ratio over a doubling size ladder."""
    report = _post(server, "/experiments/weyl-scan",
                   _payload(dim=dim, rank=rank, trials=trials, seed=seed, r=r, s=s, p=p,
                            tol=tol, unsafe_exponents=unsafe_exponents,
                            ladder_max=ladder_max, scan_trials=scan_trials))
    _finish(report, out)


@main.command("continuity")
@common_options
@click.option("--r0", type=float, default=0.1, show_default=True,
              help="Operator-norm ball radius for the probe.")
def continuity(dim, rank, trials, seed, r, s, p, tol, out, unsafe_exponents, server, r0):
    """Determinant difference quotients against the analytic ceiling."""
    report = _post(server, "/experiments/continuity",
                   _payload(dim=dim, rank=rank, trials=trials, seed=seed, r=r, s=s, p=p,
                            tol=tol, unsafe_exponents=unsafe_exponents, r0=r0))
    _finish(report, out)


@main.command("factor-check")
@common_options
def factor_check(dim, rank, trials, seed, r, s, p, tol, out, unsafe_exponents, server):
    """Diagram identities, trace transport and AB/BA spectra."""
    report = _post(server, "/experiments/factor-check",
                   _payload(dim=dim, rank=rank, trials=trials, seed=seed, r=r, s=s, p=p,
                            tol=tol, unsafe_exponents=unsafe_exponents))
    _finish(report, out)


if __name__ == "__main__":
    main()
