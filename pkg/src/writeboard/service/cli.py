"""Operations CLI: serve the API, export sessions, one-shot scoring, batch analysis."""

from __future__ import annotations

import json
import sys
from pathlib import Path

import click

from writeboard.errors import WriteboardError
from writeboard.service.config import build_pipeline, build_service, load_config
from writeboard.service.store import EventStore


@click.group()
def main():
    """Writing analytics dashboard service."""


@main.command()
@click.option("--host", default="127.0.0.1", show_default=True)
@click.option("--port", default=8000, show_default=True, type=int)
@click.option("--data-dir", type=click.Path(path_type=Path), default=None, help="Session log directory.")
@click.option("--config", "config_path", type=click.Path(exists=True, path_type=Path), default=None)
@click.option("--mock", "mock_script", type=click.Path(exists=True, path_type=Path), default=None,
              help="Scripted judge replies; runs fully offline.")
def serve(host: str, port: int, data_dir: Path | None, config_path: Path | None, mock_script: Path | None):
    """Start the HTTP API."""
    import uvicorn

    from writeboard.service.app import create_app

    config = load_config(config_path)
    if data_dir is not None:
        config.data_dir = data_dir
    if mock_script is not None:
        config.mock_script = mock_script
    uvicorn.run(create_app(build_service(config)), host=host, port=port)


@main.command()
@click.option("--session", "session_id", required=True)
@click.option("--data-dir", type=click.Path(path_type=Path), default=Path("data"), show_default=True)
@click.option("--out", "out_path", type=click.Path(path_type=Path), default=None,
              help="Write to a file instead of stdout.")
def export(session_id: str, data_dir: Path, out_path: Path | None):
    """Dump one session's full event log (JSON lines)."""
    try:
        data = EventStore(data_dir).export_bytes(session_id)
    except WriteboardError as err:
        raise click.ClickException(f"{err.code}: {err}")
    if out_path is None:
        sys.stdout.buffer.write(data)
    else:
        out_path.write_bytes(data)
        click.echo(f"wrote {out_path}")


@main.command()
@click.option("--file", "abstract_file", required=True, type=click.Path(exists=True, path_type=Path))
@click.option("--config", "config_path", type=click.Path(exists=True, path_type=Path), default=None)
@click.option("--mock", "mock_script", type=click.Path(exists=True, path_type=Path), default=None)
def score(abstract_file: Path, config_path: Path | None, mock_script: Path | None):
    """Judge one abstract file against the rubric and print the scores."""
    config = load_config(config_path)
    if mock_script is not None:
        config.mock_script = mock_script
    pipeline = build_pipeline(config)
    try:
        evaluation = pipeline.judge_rubric(abstract_file.read_text(encoding="utf-8"))
    except WriteboardError as err:
        raise click.ClickException(f"{err.code}: {err}")
    click.echo(
        json.dumps(
            {
                "levels": {c.value: v for c, v in evaluation.score.per_criterion.items()},
                "total": evaluation.score.total,
            },
            indent=2,
        )
    )


@main.command()
@click.option("--in", "in_path", required=True, type=click.Path(exists=True, path_type=Path),
              help="Scores CSV file or a directory of exported session logs.")
@click.option("--out", "out_path", required=True, type=click.Path(path_type=Path))
def analyze(in_path: Path, out_path: Path):
    """Group-comparison statistics over participant scores."""
    from writeboard.stats.report import analyze_path, render_table, write_report

    try:
        report = analyze_path(in_path)
    except WriteboardError as err:
        raise click.ClickException(f"{err.code}: {err}")
    write_report(report, out_path)
    click.echo(render_table(report))
    click.echo(f"\nwrote {out_path} and {out_path.name}.txt")


if __name__ == "__main__":
    main()
