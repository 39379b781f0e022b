"""Command-line front end: a thin client of the scoring service.

By default requests are dispatched in-process against the FastAPI app;
`--server` points the same commands at a deployed instance.
"""

from __future__ import annotations

import sys

import click
import httpx

EXIT_OK = 0
EXIT_USAGE = 2
EXIT_LAYOUT = 3


def _client(server: str | None) -> httpx.Client:
    if server:
        return httpx.Client(base_url=server, timeout=None)
    from fastapi.testclient import TestClient

    from codesim.service import create_app

    return TestClient(create_app(), raise_server_exceptions=False)


def _fail(message: str, code: int) -> None:
    click.echo(f"error: {message}", err=True)
    sys.exit(code)


@click.group()
@click.option("--server", default=None, help="Base URL of a running codesim service.")
@click.pass_context
def main(ctx: click.Context, server: str | None) -> None:
    """Source-code similarity scoring and clone-detection benchmarks."""
    ctx.obj = server


@main.command()
@click.argument("file_a", type=click.Path())
@click.argument("file_b", type=click.Path())
@click.option("--measures", default="all", help="Comma-separated measure ids or `all`.")
@click.option("--json", "as_json", is_flag=True, help="Emit JSON instead of a table.")
@click.pass_obj
def compare(server: str | None, file_a: str, file_b: str, measures: str, as_json: bool) -> None:
    """Score FILE_A against FILE_B with the selected measures."""
    texts = []
    for path in (file_a, file_b):
        try:
            with open(path, "rb") as fh:
                texts.append(fh.read().decode("utf-8", errors="replace"))
        except OSError as exc:
            _fail(f"cannot read {path}: {exc}", EXIT_USAGE)
    selection = None if measures == "all" else [m.strip() for m in measures.split(",")]
    with _client(server) as client:
        resp = client.post(
            "/compare",
            json={
                "text_a": texts[0],
                "text_b": texts[1],
                "name_a": file_a,
                "name_b": file_b,
                "measures": selection,
            },
        )
    if resp.status_code != 200:
        _fail(resp.json().get("detail", resp.text), EXIT_USAGE)
    rows = resp.json()["scores"]
    if as_json:
        click.echo(resp.text)
        return
    width = max(len(r["measure"]) for r in rows)
    for r in rows:
        shown = "skipped" if r["skipped"] else f"{r['score']:.2f}"
        click.echo(f"{r['measure']:<{width}}  {shown}")


@main.command()
@click.option("--dataset", required=True, type=click.Path(), help="Dataset root directory.")
@click.option("--measures", default="all", help="Comma-separated measure ids, `all`, or `cheap`.")
@click.option("--threshold-policy", default="fixed:0.5", help="`fixed:<t>` or `sweep`.")
@click.option("--out", default=None, type=click.Path(), help="Report output directory.")
@click.option("--csv/--no-csv", "want_csv", default=True)
@click.option("--plotdata/--no-plotdata", default=True)
@click.option("--timing", type=click.Choice(["sequential", "parallel"]), default="sequential")
@click.option("--workers", default=4, show_default=True)
@click.option("--timeout-ms", default=5000, show_default=True)
@click.option("--seed", default=42, show_default=True)
@click.option("--no-timestamp", is_flag=True, help="Exclude the timestamp for byte-stable reports.")
@click.pass_obj
def bench(
    server: str | None,
    dataset: str,
    measures: str,
    threshold_policy: str,
    out: str | None,
    want_csv: bool,
    plotdata: bool,
    timing: str,
    workers: int,
    timeout_ms: int,
    seed: int,
    no_timestamp: bool,
) -> None:
    """Run the clone-detection benchmark and print the rankings."""
    if measures == "cheap":
        from codesim.measures import ALL_MEASURES, HEAVY_MEASURES

        selection: list[str] | None = [m.value for m in ALL_MEASURES if m not in HEAVY_MEASURES]
    elif measures == "all":
        selection = None
    else:
        selection = [m.strip() for m in measures.split(",")]
    formats = ["json"] + (["csv"] if want_csv else []) + (["plotdata"] if plotdata else [])
    with _client(server) as client:
        resp = client.post(
            "/bench",
            json={
                "root": dataset,
                "measures": selection,
                "threshold_policy": threshold_policy,
                "timing": timing,
                "workers": workers,
                "timeout_ms": timeout_ms,
                "out_dir": out,
                "formats": formats,
                "timestamp": not no_timestamp,
                "seed": seed,
            },
        )
    if resp.status_code == 400:
        _fail(resp.json().get("detail", resp.text), EXIT_LAYOUT)
    if resp.status_code != 200:
        _fail(resp.json().get("detail", resp.text), EXIT_USAGE)
    body = resp.json()
    click.echo(f"pairs: {body['pair_count']}  positive rate: {body['positive_rate']:.4f}")
    for title, key in (
        ("accuracy", "by_accuracy"),
        ("wall time (s)", "by_time"),
        ("feasibility", "by_feasibility"),
    ):
        click.echo(f"\nranking by {title}:")
        for entry in body[key]:
            click.echo(f"  {entry['measure']:<12} {entry['value']:.4f}")
    if body["skipped"]:
        click.echo("\nskipped (unavailable): " + ", ".join(body["skipped"]))
    for path in body["written"]:
        click.echo(f"wrote {path}")


@main.command()
@click.option("--dataset", required=True, type=click.Path(), help="Dataset root directory.")
@click.pass_obj
def stats(server: str | None, dataset: str) -> None:
    """Print dataset statistics."""
    with _client(server) as client:
        resp = client.post("/stats", json={"root": dataset})
    if resp.status_code == 400:
        _fail(resp.json().get("detail", resp.text), EXIT_LAYOUT)
    if resp.status_code != 200:
        _fail(resp.json().get("detail", resp.text), EXIT_USAGE)
    body = resp.json()
    click.echo(f"tasks:            {body['tasks']}")
    click.echo(f"files:            {body['files']}")
    click.echo(f"originals:        {body['originals']}")
    click.echo(f"plagiarized:      {body['plagiarized']}")
    click.echo(f"non-plagiarized:  {body['non_plagiarized']}")
    click.echo(f"total tokens:     {body['total_tokens']}")
    click.echo(f"distinct tokens:  {body['distinct_tokens']}")
    click.echo(f"tokens per file:  min {body['min_tokens']}, max {body['max_tokens']}, mean {body['mean_tokens']:.1f}")


if __name__ == "__main__":
    main()
