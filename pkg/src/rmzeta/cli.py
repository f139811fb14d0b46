"""Command-line front end.

Every subcommand is a thin client of the HTTP service: by default the
FastAPI app is mounted in-process (no network, fully deterministic),
and --server switches the same client to a remote instance.

Exit codes: 0 success, 2 usage or invalid input, 3 undefined result
(infinite K0 order), 4 I/O failure writing a report.  The lemmas
subcommand exits 1 if any exact identity fails.
"""

from __future__ import annotations

import json
import sys

import click
import httpx

from .reports import reciprocity_report_to_csv, report_to_json_text

EXIT_USAGE = 2
EXIT_UNDEFINED = 3
EXIT_IO = 4

OUTPUT_CHOICES = click.Choice(["text", "json", "csv"])


class _Settings:
    def __init__(self, server: str | None, config: dict):
        self.server = server if server is not None else config.get("server")
        self.config = config

    def default(self, key: str, fallback):
        return self.config.get(key, fallback)


def _load_config(path: str | None) -> dict:
    if not path:
        return {}
    try:
        with open(path, encoding="utf-8") as fh:
            cfg = json.load(fh)
    except OSError as exc:
        raise click.UsageError(f"cannot read config file: {exc}")
    except json.JSONDecodeError as exc:
        raise click.UsageError(f"config file is not valid JSON: {exc}")
    if not isinstance(cfg, dict):
        raise click.UsageError("config file must hold a JSON object")
    return cfg


def _client(settings: _Settings):
    if settings.server:
        return httpx.Client(base_url=settings.server, timeout=600.0)
    import warnings

    # starlette warns about its httpx-based TestClient on import; that is
    # an implementation detail of the embedded transport, not user-facing.
    with warnings.catch_warnings():
        warnings.simplefilter("ignore")
        from fastapi.testclient import TestClient

    from .service.app import app

    return TestClient(app, raise_server_exceptions=False)


def _post(settings: _Settings, path: str, payload: dict) -> dict:
    try:
        with _client(settings) as client:
            response = client.post(path, json=payload)
    except httpx.HTTPError as exc:
        click.echo(f"error: cannot reach service: {exc}", err=True)
        sys.exit(EXIT_IO)
    if response.status_code == 400:
        detail = response.json().get("detail", {})
        message = detail.get("message", "invalid input")
        click.echo(f"error: {message}", err=True)
        sys.exit(EXIT_USAGE)
    if response.status_code == 422:
        click.echo(f"error: malformed request: {response.text}", err=True)
        sys.exit(EXIT_USAGE)
    if response.status_code != 200:
        click.echo(f"error: service returned {response.status_code}", err=True)
        sys.exit(1)
    return response.json()


def _emit(text: str, out_path: str | None) -> None:
    if out_path is None:
        click.echo(text, nl=False)
        return
    try:
        with open(out_path, "w", encoding="utf-8") as fh:
            fh.write(text)
    except OSError as exc:
        click.echo(f"error: cannot write {out_path}: {exc}", err=True)
        sys.exit(EXIT_IO)


@click.group()
@click.version_option(package_name="rmzeta")
@click.option("--server", default=None, metavar="URL", help="Remote service URL (default: run in-process).")
@click.option("--config", "config_path", default=None, metavar="FILE", help="JSON config mirroring the flags.")
@click.pass_context
def main(ctx, server, config_path):
    """Local factors of real-multiplication torus data vs. CM curves."""
    ctx.obj = _Settings(server, _load_config(config_path))


@main.command()
@click.argument("theta_spec", metavar="THETA")
@click.option("--output", type=OUTPUT_CHOICES, default=None, help="Output format (default text).")
@click.pass_obj
def cf(settings, theta_spec, output):
    """Continued fraction, matrix A and fundamental unit of THETA.

    THETA is "golden", "sqrt:D", or a JSON object {"p":..,"d":..,"q":..}.
    """
    output = output or settings.default("output", "text")
    data = _post(settings, "/cf", {"theta": _maybe_json(theta_spec)})
    if output == "json":
        _emit(report_to_json_text(data), None)
        return
    cf_obj = data["continued_fraction"]
    unit = data["fundamental_unit"]
    theta = data["theta"]
    rows = [[int(x) for x in row] for row in data["matrix_a"]["rows"]]
    click.echo(f"theta: ({theta['p']}+sqrt({theta['d']}))/{theta['q']}")
    click.echo(f"continued fraction: preperiod={cf_obj['preperiod']} period={cf_obj['period']}")
    click.echo(f"matrix A: {rows}")
    click.echo(f"trace(A): {data['trace']}")
    click.echo(f"tr(A)^2 - 4: {data['hyperbolic_discriminant']}")
    omega = f"(1+sqrt({unit['d']}))/2" if unit["d"] % 4 == 1 else f"sqrt({unit['d']})"
    click.echo(
        f"fundamental unit: {unit['x']} + {unit['y']}*{omega} "
        f"(norm {unit['norm']}, approx {unit['approx']:.6f})"
    )


@main.command()
@click.argument("matrix_spec", metavar="MATRIX")
@click.option("--trusted", is_flag=True, help="Apply the formula despite negative entries.")
@click.option("--order", "want_order", is_flag=True, help="Also require the group order (exit 3 if infinite).")
@click.option("--output", type=OUTPUT_CHOICES, default=None, help="Output format (default text).")
@click.pass_obj
def k0(settings, matrix_spec, trusted, want_order, output):
    """K-theory of the algebra attached to MATRIX.

    MATRIX is nested-list JSON like "[[2]]" or the wire object
    {"n":..,"rows":[["..."]]}.
    """
    output = output or settings.default("output", "text")
    payload = {"matrix": _maybe_json(matrix_spec, require=True), "trusted": trusted}
    data = _post(settings, "/k0", payload)
    if output == "json":
        _emit(report_to_json_text(data), None)
    else:
        rendered = data["rendered"]
        if rendered == "0":
            rendered = "0 (trivial)"
        click.echo(f"K0 = {rendered}")
        click.echo(f"K1 rank = {data['k1_rank']}")
        click.echo(f"order = {data['order'] if data['order'] is not None else 'undefined (infinite)'}")
    if want_order and data["order"] is None:
        click.echo("error: infinite K0; order undefined", err=True)
        sys.exit(EXIT_UNDEFINED)


@main.command()
@click.argument("curve_spec", metavar="CURVE")
@click.argument("prime", type=int)
@click.argument("n_max", type=int, default=1, required=False)
@click.option("--theta", "theta_spec", default=None, metavar="THETA", help="Pair with a torus seed for the K0 column.")
@click.option("--output", type=OUTPUT_CHOICES, default=None, help="Output format (default text).")
@click.option("--out", "out_path", default=None, metavar="FILE", help="Write the report to FILE.")
@click.pass_obj
def count(settings, curve_spec, prime, n_max, theta_spec, output, out_path):
    """Point counts of CURVE over F_p, F_p^2, ... up to n_max.

    CURVE is "a,b", "cm:-4", or a JSON object {"a":..,"b":..}.
    """
    output = output or settings.default("output", "text")
    payload = {"curve": _maybe_json(curve_spec), "prime": prime, "n_max": n_max}
    if theta_spec is not None:
        payload["theta"] = _maybe_json(theta_spec)
    data = _post(settings, "/count", payload)
    if output == "json":
        _emit(report_to_json_text(data), out_path)
        return
    if output == "csv":
        _emit(_count_csv(data), out_path)
        return
    curve = data["curve"]
    click.echo(f"curve: y^2 = x^3 + {curve['a']}x + {curve['b']}  prime: {data['prime']}")
    if data["reduction"] == "unsupported":
        click.echo("reduction: unsupported (bad reduction at p <= 3)")
        return
    if not data["rows"]:
        click.echo(f"reduction: {data['reduction']['tag']} (bad prime; no counts)")
        return
    click.echo(f"reduction: {data['reduction']['tag']}  a_p = {data['trace_of_frobenius']}")
    for row in data["rows"]:
        line = f"n={row['n']}: count={row['count_recursion']}"
        if row.get("count_bruteforce") is not None:
            line += f" bruteforce={row['count_bruteforce']}"
        if row.get("k0_group") is not None:
            group = row["k0_group"]
            line += f" K0=(free {group['free_rank']}, torsion {group['torsion']})"
            line += f" K0.matches={str(row['k0_matches_count']).lower()}"
        click.echo(line)


def _count_csv(data: dict) -> str:
    import csv as _csv
    import io

    buf = io.StringIO()
    writer = _csv.writer(buf, lineterminator="\n")
    writer.writerow(["n", "count_recursion", "count_bruteforce", "k0_order", "k0_matches_count"])
    for row in data.get("rows", []):
        group = row.get("k0_group")
        k0_order = ""
        if group is not None and group["free_rank"] == 0:
            order = 1
            for d in group["torsion"]:
                order *= d
            k0_order = str(order)
        writer.writerow(
            [
                row["n"],
                row["count_recursion"],
                row.get("count_bruteforce", ""),
                k0_order,
                "" if row.get("k0_matches_count") is None else str(row["k0_matches_count"]).lower(),
            ]
        )
    return buf.getvalue()


@main.command()
@click.argument("curve_spec", metavar="CURVE")
@click.argument("theta_spec", metavar="THETA")
@click.option("--primes", "primes_range", default=None, metavar="A..B", help="Inclusive prime range.")
@click.option("--trunc", type=int, default=None, help="Series cross-check depth per good prime (default 8).")
@click.option("--output", type=OUTPUT_CHOICES, default=None, help="Output format (default text).")
@click.option("--out", "out_path", default=None, metavar="FILE", help="Write the report to FILE.")
@click.pass_obj
def reciprocity(settings, curve_spec, theta_spec, primes_range, trunc, output, out_path):
    """Compare local factors of CURVE and the torus seeded by THETA.

    Emits one row per prime in the range; agreement and disagreement
    are both recorded, and the exit code is 0 either way.
    """
    output = output or settings.default("output", "text")
    primes_range = primes_range or settings.default("primes", None)
    if primes_range is None:
        raise click.UsageError("--primes A..B is required (or set 'primes' in the config)")
    trunc = trunc if trunc is not None else int(settings.default("trunc", 8))
    lo, hi = _parse_range(primes_range)
    payload = {
        "curve": _maybe_json(curve_spec),
        "theta": _maybe_json(theta_spec),
        "primes": {"start": lo, "end": hi},
        "trunc": trunc,
    }
    data = _post(settings, "/reciprocity", payload)
    if output == "json":
        _emit(report_to_json_text(data), out_path)
    elif output == "csv":
        _emit(reciprocity_report_to_csv(data), out_path)
    else:
        summary = data["summary"]
        for row in data["rows"]:
            curve_side = _factor_str(row["curve_factor"])
            nc_side = _factor_str(row["nc_factor"])
            flag = "MATCH" if row["match"] else "differ"
            click.echo(f"p={row['prime']}: curve {curve_side} | torus {nc_side} [{flag}]")
            for note in row["notes"]:
                click.echo(f"    note: {note}")
        click.echo(
            f"summary: {summary['match']} match, {summary['mismatch']} mismatch, "
            f"{summary['skip']} skip"
        )


def _factor_str(factor) -> str:
    if factor is None:
        return "(unavailable)"
    c1, c2 = int(factor["c1"]), int(factor["c2"])
    terms = ["1"]
    if c1:
        terms.append(f"{'-' if c1 < 0 else '+'} {abs(c1) if abs(c1) != 1 else ''}T")
    if c2:
        terms.append(f"{'-' if c2 < 0 else '+'} {abs(c2) if abs(c2) != 1 else ''}T^2")
    return " ".join(terms)


@main.command()
@click.option("--sweep-bound", type=int, default=None, help="Entry bound for the exhaustive sweeps (default 5).")
@click.option("--json", "as_json", is_flag=True, help="Machine-readable results.")
@click.pass_obj
def lemmas(settings, sweep_bound, as_json):
    """Run every exact identity suite; exit nonzero on any failure."""
    bound = sweep_bound if sweep_bound is not None else int(settings.default("sweep_bound", 5))
    data = _post(settings, "/lemmas", {"sweep_bound": bound})
    if as_json:
        _emit(report_to_json_text(data), None)
    else:
        for suite in data["suites"]:
            status = "PASS" if suite["passed"] else "FAIL"
            click.echo(f"{suite['name']:<24} {suite['cases']:>7} cases  {suite['failures']:>3} failures  {status}")
            for example in suite["examples"]:
                click.echo(f"    failing case: {example}")
    if not data["all_passed"]:
        sys.exit(1)


@main.command()
@click.option("--host", default="127.0.0.1", show_default=True)
@click.option("--port", type=int, default=8000, show_default=True)
def serve(host, port):
    """Run the HTTP service with uvicorn."""
    import uvicorn

    uvicorn.run("rmzeta.service.app:app", host=host, port=port)


def _maybe_json(spec: str, require: bool = False):
    """Decode a JSON argument, passing shorthand strings through."""
    text = spec.strip()
    if text.startswith(("{", "[")):
        try:
            return json.loads(text)
        except json.JSONDecodeError as exc:
            raise click.UsageError(f"argument is not valid JSON: {exc}")
    if require:
        raise click.UsageError(f"expected a JSON matrix, got {spec!r}")
    return spec


def _parse_range(text: str):
    parts = text.split("..")
    if len(parts) != 2:
        raise click.UsageError(f"prime range must look like A..B, got {text!r}")
    try:
        return int(parts[0]), int(parts[1])
    except ValueError:
        raise click.UsageError(f"prime range must look like A..B, got {text!r}")


if __name__ == "__main__":
    main()
