"""Command-line client for the retrieval service.

Every subcommand except `serve` is a thin HTTP call against a running
service (start one with `synroute serve --workspace DIR`). The service URL
comes from --base-url or the SYNROUTE_URL environment variable.
"""

from __future__ import annotations

import json
import sys

import click
import httpx

DEFAULT_URL = "http://127.0.0.1:8177"


def make_client(base_url: str) -> httpx.Client:
    return httpx.Client(base_url=base_url, timeout=600.0)


def call(ctx: click.Context, method: str, endpoint: str, payload: dict | None = None):
    with make_client(ctx.obj["base_url"]) as client:
        try:
            if method == "GET":
                resp = client.get(endpoint)
            else:
                resp = client.post(endpoint, json=payload or {})
        except httpx.TransportError as exc:
            click.echo(f"cannot reach service: {exc}", err=True)
            sys.exit(1)
    body = resp.json()
    click.echo(json.dumps(body, indent=2))
    if resp.is_error:
        sys.exit(1)
    return body


@click.group()
@click.option("--base-url", envvar="SYNROUTE_URL", default=DEFAULT_URL,
              show_default=True, help="Service URL.")
@click.pass_context
def main(ctx, base_url):
    ctx.ensure_object(dict)
    ctx.obj["base_url"] = base_url


@main.command()
@click.option("--workspace", required=True, type=click.Path(file_okay=False))
@click.option("--host", default="127.0.0.1", show_default=True)
@click.option("--port", default=8177, show_default=True, type=int)
def serve(workspace, host, port):
    """Run the retrieval service over a workspace directory."""
    import uvicorn

    from .service import create_app

    uvicorn.run(create_app(workspace), host=host, port=port)


@main.command()
@click.pass_context
def status(ctx):
    """Show what the service currently has loaded."""
    call(ctx, "GET", "/status")


@main.command()
@click.option("--corpus", "corpus_path", default=None, help="corpus.jsonl path.")
@click.option("--queries", "queries_path", default=None, help="queries.jsonl path.")
@click.option("--parses", "parses_path", default=None, help="parses.jsonl path.")
@click.pass_context
def load(ctx, corpus_path, queries_path, parses_path):
    """Load corpus, queries, and parses into the service."""
    call(ctx, "POST", "/load", {"corpus_path": corpus_path,
                                "queries_path": queries_path,
                                "parses_path": parses_path})


@main.command()
@click.pass_context
def index(ctx):
    """Build the dense index and the entity/passage graph."""
    call(ctx, "POST", "/index")


@main.command()
@click.option("--csv", "csv_path", default=None, help="Feature CSV output path.")
@click.pass_context
def featurize(ctx, csv_path):
    """Export raw feature vectors for all loaded parses."""
    call(ctx, "POST", "/featurize", {"csv_path": csv_path})


@main.command("train-adapter")
@click.option("--epochs", default=None, type=int)
@click.option("--seed", default=None, type=int)
@click.pass_context
def train_adapter(ctx, epochs, seed):
    """Train the complexity scorer on the loaded training queries."""
    call(ctx, "POST", "/train", {"epochs": epochs, "seed": seed})


@main.command()
@click.option("--grid-step", default=None, type=float)
@click.option("--lambda-latency", default=None, type=float)
@click.pass_context
def tune(ctx, grid_step, lambda_latency):
    """Grid-search the routing thresholds on the loaded queries."""
    call(ctx, "POST", "/tune", {"grid_step": grid_step,
                                "lambda_latency": lambda_latency})


@main.command()
@click.option("--question", default=None, help="Question text.")
@click.option("--file", "file_path", default=None,
              type=click.Path(exists=True, dir_okay=False),
              help="queries.jsonl file to answer line by line.")
@click.option("--id", "query_id", default=None,
              help="Query id used to look up a loaded parse.")
@click.option("--parse-file", default=None,
              type=click.Path(exists=True, dir_okay=False),
              help="JSON file holding {conllu, constituency, entities}.")
@click.pass_context
def query(ctx, question, file_path, query_id, parse_file):
    """Answer one question (or each question in a file)."""
    if (question is None) == (file_path is None):
        raise click.UsageError("provide exactly one of --question / --file")
    parse_payload = None
    if parse_file:
        with open(parse_file, encoding="utf-8") as fh:
            parse_payload = json.load(fh)
    if question is not None:
        call(ctx, "POST", "/query", {"question": question, "query_id": query_id,
                                     "parse": parse_payload})
        return
    with open(file_path, encoding="utf-8") as fh:
        for line in fh:
            if not line.strip():
                continue
            record = json.loads(line)
            call(ctx, "POST", "/query", {"question": record["question"],
                                         "query_id": record.get("id")})


@main.command("eval")
@click.option("--mode", default="FULL", show_default=True,
              type=click.Choice(["GENERATOR_ONLY", "DENSE_ONLY", "GRAPH_ONLY",
                                 "ROUTED_NO_FUSION", "FULL"]))
@click.pass_context
def eval_cmd(ctx, mode):
    """Replay the loaded queries under one ablation mode."""
    call(ctx, "POST", "/eval", {"mode": mode})


@main.command()
@click.option("--csv", "csv_path", default=None, help="Benchmark CSV output path.")
@click.pass_context
def bench(ctx, csv_path):
    """Accuracy/latency rows across ablation modes."""
    call(ctx, "POST", "/bench", {"csv_path": csv_path})


if __name__ == "__main__":
    main()
