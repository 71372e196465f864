"""Command line entry points: analyze, query, serve."""

from __future__ import annotations

import os
from pathlib import Path

import click

from . import pipeline, sparqlclient
from .service.app import ENDPOINT_ENV_VAR, create_app


@click.group()
def main():
    """Discover predicate topics in an RDF ontology and generate queries."""


@main.command()
@click.option("--input", "-i", "input_path", required=True, type=click.Path(exists=True, dir_okay=False))
@click.option("--alpha", default=0.5, show_default=True, help="Split threshold on the neighbourhood silhouette width.")
@click.option("--beta", default=0.2, show_default=True, help="Similarity threshold for query expansion.")
@click.option("--seed", default=0, show_default=True, type=int, help="Clustering random seed.")
@click.option("--out", "-o", "out_dir", required=True, type=click.Path(file_okay=False))
def analyze(input_path: str, alpha: float, beta: float, seed: int, out_dir: str):
    """Analyze an ontology file (.nt or schema .tsv) into a snapshot directory."""
    try:
        snap = pipeline.analyze(input_path, alpha=alpha, beta=beta, seed=seed)
        pipeline.save_snapshot(snap, out_dir)
    except (ValueError, OSError) as exc:
        raise click.ClickException(str(exc)) from exc
    stats = snap.stats
    query_count = sum(len(qs) for qs in snap.queries.values())
    click.echo(
        f"dataset {snap.dataset_id}: {stats.concept_count} concepts, "
        f"{stats.predicate_count} predicates, {stats.edge_count} edges, "
        f"density {stats.density:.4f}"
    )
    click.echo(
        f"hierarchy shape {snap.hierarchy.shape()}, {len(snap.hierarchy.leaves())} leaf topics, "
        f"{query_count} queries -> {out_dir}"
    )


@main.command()
@click.option("--snapshot", "-s", "snapshot_dir", required=True, type=click.Path(exists=True, file_okay=False))
@click.option("--topic", "-t", "topic_id", required=True)
@click.option("--endpoint", "-e", default=None, help=f"SPARQL endpoint URL (defaults to ${ENDPOINT_ENV_VAR}).")
def query(snapshot_dir: str, topic_id: str, endpoint: str | None):
    """Print a topic's generated queries; optionally run the first one."""
    try:
        snap = pipeline.load_snapshot(snapshot_dir)
    except (ValueError, OSError) as exc:
        raise click.ClickException(str(exc)) from exc
    leaf_ids = snap.leaf_ids()
    if topic_id not in leaf_ids:
        known = ", ".join(leaf_ids)
        raise click.ClickException(f"unknown leaf topic {topic_id!r}; leaf topics are: {known}")
    bundle = snap.queries.get(topic_id, [])
    if not bundle:
        raise click.ClickException(f"topic {topic_id} has no generated queries")
    for i, q in enumerate(bundle, start=1):
        click.echo(f"# {i}. {q.nl_question} (beta={q.beta}, share={'on' if q.share_template else 'off'})")
        click.echo(q.sparql)
        click.echo("")
    endpoint = endpoint or os.environ.get(ENDPOINT_ENV_VAR)
    if endpoint:
        cfg = sparqlclient.EndpointConfig(url=endpoint)
        try:
            table = sparqlclient.execute(cfg, bundle[0].sparql)
        except (sparqlclient.TransportError, sparqlclient.EndpointError, sparqlclient.ResultsParseError) as exc:
            raise click.ClickException(str(exc)) from exc
        click.echo(sparqlclient.render_table(table, style="aligned"), nl=False)


@main.command()
@click.option("--snapshot", "-s", "snapshot_dir", required=True, type=click.Path(exists=True, file_okay=False))
@click.option("--port", "-p", default=8000, show_default=True, type=int)
@click.option("--host", default="127.0.0.1", show_default=True)
@click.option("--ui", "ui_dir", default=None, type=click.Path(file_okay=False), help="Directory with built explorer assets.")
def serve(snapshot_dir: str, port: int, host: str, ui_dir: str | None):
    """Serve the snapshot over HTTP together with the explorer UI."""
    import uvicorn

    try:
        snap = pipeline.load_snapshot(snapshot_dir)
    except (ValueError, OSError) as exc:
        raise click.ClickException(str(exc)) from exc
    if ui_dir is None:
        default_ui = Path(__file__).resolve().parents[2] / "frontend" / "dist"
        ui_dir = str(default_ui) if default_ui.is_dir() else None
    app = create_app(snap, ui_dir=ui_dir)
    uvicorn.run(app, host=host, port=port)


if __name__ == "__main__":
    main()
