"""Command line interface: ingest, query, eval, serve."""

from __future__ import annotations

import datetime
import json
import sys
from pathlib import Path

import click

from ..corpus import ArticleFilter, DocumentStore, SplitConfig, add_documents, ingest_csv
from ..errors import SciqaError
from ..evaluation import (
    DEFAULT_KS,
    RemoteScorer,
    TokenF1Scorer,
    evaluate,
    render_table,
    report_json,
)
from ..pipeline import QueryRequest, run
from ..retriever import fit
from .app import ServiceConfig, build_pipeline, create_app
from ..squad import parse as parse_squad
from ..squad import validate as validate_squad
from ..storage import index_exists, load_index, save_index

INDEX_DIR_OPTION = click.option(
    "--index-dir",
    envvar="SCIQA_INDEX_DIR",
    type=click.Path(path_type=Path),
    required=True,
    help="Index directory (defaults to $SCIQA_INDEX_DIR).",
)


@click.group()
def main() -> None:
    """Scientific-publication search with extractive question answering."""


@main.command()
@click.argument("csv_path", type=click.Path(exists=True, path_type=Path))
@INDEX_DIR_OPTION
@click.option("--date-from", type=str, default=None, help="Keep articles published on/after this ISO date.")
@click.option("--date-to", type=str, default=None, help="Keep articles published on/before this ISO date.")
@click.option("--max-tokens", type=int, default=512, show_default=True, help="Passage window size in tokens.")
@click.option("--stride", type=int, default=None, help="Window stride in tokens (defaults to --max-tokens).")
@click.option("--schema-json", type=str, default=None, help="JSON object mapping canonical column keys to CSV headers.")
@click.option("--force", is_flag=True, help="Overwrite a non-empty index directory.")
def ingest(csv_path, index_dir, date_from, date_to, max_tokens, stride, schema_json, force):
    """Ingest a publications CSV and build the searchable index."""
    if index_exists(index_dir) and not force:
        raise click.ClickException(f"index directory {index_dir} already holds an index (use --force)")
    schema = json.loads(schema_json) if schema_json else None
    try:
        with open(csv_path, "rb") as fh:
            result = ingest_csv(fh, schema=schema, source_name=csv_path.name)
        article_filter = ArticleFilter(
            date_from=datetime.date.fromisoformat(date_from) if date_from else None,
            date_to=datetime.date.fromisoformat(date_to) if date_to else None,
        )
        kept = article_filter.apply(result.articles)
        for row, reason in result.skipped:
            click.echo(f"skipped row {row}: {reason}", err=True)
        if not kept:
            raise click.ClickException("no articles left after filtering; refusing to build an empty index")
        store = add_documents(DocumentStore(), kept, SplitConfig(max_tokens=max_tokens, stride=stride))
        model = fit(store.iter_passages())
        save_index(index_dir, store, model, force=force)
    except SciqaError as exc:
        raise click.ClickException(str(exc)) from exc
    click.echo(f"articles read: {len(result.articles)}")
    click.echo(f"articles kept after filters: {len(kept)}")
    click.echo(f"documents: {len(store.documents)}")
    click.echo(f"passages: {len(store.passages)}")
    click.echo(f"vocabulary terms: {len(model.vocab)}")


def _load(index_dir: Path):
    try:
        return load_index(index_dir)
    except FileNotFoundError as exc:
        raise click.ClickException(f"no index found in {index_dir}: {exc}") from exc
    except SciqaError as exc:
        raise click.ClickException(str(exc)) from exc


@main.command()
@click.argument("query_text")
@INDEX_DIR_OPTION
@click.option("--retriever-top-k", type=int, default=10, show_default=True)
@click.option("--reader-top-k", type=int, default=5, show_default=True)
@click.option("--format", "output_format", type=click.Choice(["table", "json"]), default="table", show_default=True)
def query(query_text, index_dir, retriever_top_k, reader_top_k, output_format):
    """Run one query against a persisted index."""
    store, model = _load(index_dir)
    pipeline = build_pipeline(store, model, ServiceConfig())
    try:
        rows = run(
            pipeline,
            QueryRequest(query=query_text, retriever_top_k=retriever_top_k, reader_top_k=reader_top_k),
            store=store,
        )
    except (SciqaError, ValueError) as exc:
        raise click.ClickException(str(exc)) from exc
    if output_format == "json":
        click.echo(json.dumps([row.to_dict() for row in rows], ensure_ascii=False, indent=2))
        return
    click.echo(f"{'index':>5}  {'score':>8}  {'doc_id':<14}  answer")
    for row in rows:
        click.echo(f"{row.index:>5}  {row.score:>8.4f}  {row.doc_id:<14}  {row.answer}")


@main.command(name="eval")
@click.argument("squad_path", type=click.Path(exists=True, path_type=Path))
@INDEX_DIR_OPTION
@click.option("--ks", type=str, default=",".join(str(k) for k in DEFAULT_KS), show_default=True,
              help="Comma-separated evaluation depths.")
@click.option("--scorer", "scorer_mode", type=click.Choice(["baseline", "remote"]), default="baseline", show_default=True)
@click.option("--scorer-url", type=str, default=None, help="Endpoint of a remote /score service.")
@click.option("--output", type=click.Path(path_type=Path), default=None, help="Where to write the JSON report.")
def eval_command(squad_path, index_dir, ks, scorer_mode, scorer_url, output):
    """Evaluate the pipeline against a SQuAD-format dataset."""
    store, model = _load(index_dir)
    dataset = parse_squad(Path(squad_path).read_bytes())
    violations = validate_squad(dataset)
    if violations:
        for v in violations:
            click.echo(f"invalid example {v.example_id}: {v.reason}", err=True)
        raise click.ClickException(f"dataset failed validation with {len(violations)} violation(s)")

    if scorer_mode == "remote":
        if not scorer_url:
            raise click.ClickException("--scorer remote requires --scorer-url")
        scorer = RemoteScorer(scorer_url)
    else:
        scorer = TokenF1Scorer()

    k_values = sorted({int(k) for k in ks.split(",") if k.strip()})
    pipeline = build_pipeline(store, model, ServiceConfig())
    try:
        retriever_eval, reader_eval = evaluate(pipeline, dataset, store, ks=k_values, scorer=scorer)
    except SciqaError as exc:
        raise click.ClickException(str(exc)) from exc

    dataset_name = dataset.provenance.get("source", squad_path.stem)
    report = report_json(dataset_name, retriever_eval, reader_eval)
    if output is not None:
        Path(output).write_bytes(report)
        click.echo(f"report written to {output}", err=True)
    click.echo(render_table(dataset_name, retriever_eval, reader_eval))


@main.command()
@INDEX_DIR_OPTION
@click.option("--host", default="127.0.0.1", show_default=True)
@click.option("--port", type=int, default=8000, show_default=True)
@click.option("--reader", "reader_mode", type=click.Choice(["baseline", "remote"]), default="baseline", show_default=True)
@click.option("--reader-url", type=str, default=None, help="Endpoint of a remote /read service.")
def serve(index_dir, host, port, reader_mode, reader_url):
    """Serve the query API over a persisted index."""
    import uvicorn

    store, model = _load(index_dir)
    try:
        config = ServiceConfig(
            index_dir=index_dir,
            listen_host=host,
            listen_port=port,
            reader_mode=reader_mode,
            remote_reader_url=reader_url,
        )
    except ValueError as exc:
        raise click.ClickException(str(exc)) from exc
    app = create_app(store, model, config)
    uvicorn.run(app, host=host, port=port)


if __name__ == "__main__":
    sys.exit(main())
