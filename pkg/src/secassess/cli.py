"""Command-line surface over the engine.

Exit codes: 0 success, 1 runtime error, 2 usage error, 3 catalog validation
failures, 4 gaps present under ``gap --check``. Machine-readable output
(``--format json``) is byte-identical to the corresponding service endpoint
body. ``SECASSESS_``-prefixed environment variables override the flags.
"""

from __future__ import annotations

import functools
import json as _json
import sys
from pathlib import Path

import click

from . import catalog as cat
from .engine import (
    Answer,
    AnswerSet,
    AssessmentProfile,
    apply_whatif,
    assess_maturity,
    gap_analysis,
)
from .errors import SecAssessError
from .reporting import canonical_json, render_assessment, render_gap
from .reporting import assessment_data as build_assessment_data
from .sessions import (
    CatalogRegistry,
    completeness,
    create_session,
    import_answers,
    persist_session,
    record_answer,
    restore_session,
)

EXIT_OK = 0
EXIT_RUNTIME = 1
EXIT_USAGE = 2
EXIT_VALIDATION = 3
EXIT_GAPS = 4


def runtime_errors(fn):
    """Map package errors to exit code 1 with a message on stderr."""

    @functools.wraps(fn)
    def wrapper(*args, **kwargs):
        try:
            return fn(*args, **kwargs)
        except SecAssessError as exc:
            click.echo(f"error ({exc.api_code}): {exc}", err=True)
            sys.exit(EXIT_RUNTIME)
        except OSError as exc:
            click.echo(f"error: {exc}", err=True)
            sys.exit(EXIT_RUNTIME)

    return wrapper


def _load_catalog(path: str | None) -> cat.Catalog:
    if path is None:
        return cat.load_shipped_catalog()
    return cat.load_catalog(Path(path).read_bytes())


def _load_session(catalog: cat.Catalog, path: str):
    registry = CatalogRegistry(catalog)
    return restore_session(Path(path).read_bytes(), registry)


catalog_option = click.option(
    "--catalog", "catalog_path", envvar="SECASSESS_CATALOG", default=None,
    type=click.Path(exists=True, dir_okay=False),
    help="Catalog file (defaults to the shipped one).")


@click.group()
def main():
    """Assess SOA security with goal-question-metric scoring."""


# -- catalog ---------------------------------------------------------------


@main.group("catalog")
def catalog_group():
    """Validate catalogs and trace metrics."""


@catalog_group.command("validate")
@click.argument("file", type=click.Path(exists=True, dir_okay=False))
@runtime_errors
def catalog_validate(file):
    """Check a catalog file; exit 3 when violations are present."""
    try:
        parsed = cat.parse_catalog_document(_json.loads(Path(file).read_text(encoding="utf-8")))
    except _json.JSONDecodeError as exc:
        click.echo(f"error (parse-error): {exc.msg} (line {exc.lineno}, column {exc.colno})", err=True)
        sys.exit(EXIT_RUNTIME)
    violations = cat.validate_catalog(parsed)
    click.echo(f"{len(violations)} violations")
    for violation in violations:
        click.echo(f"[{violation.rule_id}] {violation.entity_id}: {violation.message}")
    if violations:
        sys.exit(EXIT_VALIDATION)


@catalog_group.command("trace")
@click.argument("metric_id")
@catalog_option
@click.option("--format", "fmt", type=click.Choice(["text", "json"]), default="text")
@runtime_errors
def catalog_trace(metric_id, catalog_path, fmt):
    """Print a metric's bottom-up interpretation chain."""
    catalog = _load_catalog(catalog_path)
    chain = cat.trace(catalog, metric_id)
    if fmt == "json":
        sys.stdout.buffer.write(canonical_json(cat.chain_to_document(chain)))
        return
    click.echo(f"metric: {chain.metric_name} ({chain.metric_id})")
    click.echo(f"questions: {', '.join(chain.question_ids)}")
    click.echo(f"goal: {chain.goal_name} ({chain.goal_id})")
    for link in chain.kis:
        click.echo(f"key indicator: {link.ki_name} -> level {link.level} "
                   f"({link.level_name}) -> domain {link.domain_name}")


# -- sessions ----------------------------------------------------------------


@main.group("session")
def session_group():
    """Create sessions, record answers, track completeness."""


@session_group.command("new")
@click.argument("out", type=click.Path(dir_okay=False))
@click.option("--label", default="")
@click.option("--profile", "profile_path", type=click.Path(exists=True, dir_okay=False),
              help="Profile JSON (thresholds, weights, attainment cut-offs).")
@catalog_option
@runtime_errors
def session_new(out, label, profile_path, catalog_path):
    """Create an empty session file pinned to the catalog version."""
    catalog = _load_catalog(catalog_path)
    profile = None
    if profile_path:
        profile = AssessmentProfile.from_document(
            _json.loads(Path(profile_path).read_text(encoding="utf-8")))
    session = create_session(CatalogRegistry(catalog), catalog.version, profile, label)
    Path(out).write_bytes(persist_session(session))
    click.echo(f"created session {session.id} in {out}")


@session_group.command("answer")
@click.argument("session_file", type=click.Path(exists=True, dir_okay=False))
@click.option("--q", "question_id", required=True)
@click.option("--value", required=True,
              help="Yes, No, Unknown, NotApplicable, or a non-negative integer.")
@click.option("--note", default=None, help="Free-text evidence note.")
@catalog_option
@runtime_errors
def session_answer(session_file, question_id, value, note, catalog_path):
    """Record one answer (upsert; the prior value goes to the audit trail)."""
    catalog = _load_catalog(catalog_path)
    session = _load_session(catalog, session_file)
    raw: str | int = int(value) if value.lstrip("-").isdigit() else value
    answer = Answer.parse({"value": raw, "evidenceNote": note}, question_id)
    session = record_answer(catalog, session, question_id, answer)
    Path(session_file).write_bytes(persist_session(session))
    click.echo(f"recorded {question_id} = {raw}")


@session_group.command("import")
@click.argument("session_file", type=click.Path(exists=True, dir_okay=False))
@click.option("--answers", "answers_path", required=True,
              type=click.Path(exists=True, dir_okay=False),
              help="Flat JSON map of question id to answer value.")
@catalog_option
@runtime_errors
def session_import(session_file, answers_path, catalog_path):
    """Import a flat question-id -> answer JSON file."""
    catalog = _load_catalog(catalog_path)
    session = _load_session(catalog, session_file)
    raw = _json.loads(Path(answers_path).read_text(encoding="utf-8"))
    session = import_answers(catalog, session, raw)
    Path(session_file).write_bytes(persist_session(session))
    click.echo(f"imported {len(raw)} answers into {session.id}")


@session_group.command("status")
@click.argument("session_file", type=click.Path(exists=True, dir_okay=False))
@click.option("--format", "fmt", type=click.Choice(["text", "json"]), default="text")
@catalog_option
@runtime_errors
def session_status(session_file, fmt, catalog_path):
    """Answered/total per key indicator."""
    catalog = _load_catalog(catalog_path)
    session = _load_session(catalog, session_file)
    result = completeness(catalog, session)
    if fmt == "json":
        sys.stdout.buffer.write(canonical_json({
            "perKi": {ki_id: {"answered": answered, "total": total}
                      for ki_id, (answered, total) in sorted(result.per_ki.items())},
            "overall": result.overall,
        }))
        return
    click.echo(f"overall: {result.overall:.0%}")
    for ki in catalog.key_indicators:
        answered, total = result.per_ki[ki.id]
        note = " (detail pending)" if total == 0 else ""
        click.echo(f"  {ki.name}: {answered}/{total}{note}")


# -- evaluation --------------------------------------------------------------


@main.command("evaluate")
@click.argument("session_file", type=click.Path(exists=True, dir_okay=False))
@catalog_option
@runtime_errors
def evaluate_cmd(session_file, catalog_path):
    """Print the evaluation document (canonical JSON)."""
    catalog = _load_catalog(catalog_path)
    session = _load_session(catalog, session_file)
    assessment = assess_maturity(catalog, session.answers, session.profile)
    sys.stdout.buffer.write(canonical_json(build_assessment_data(catalog, assessment)))


@main.command("report")
@click.argument("session_file", type=click.Path(exists=True, dir_okay=False))
@click.option("--format", "fmt", type=click.Choice(["md", "json"]), default="json")
@click.option("--out", "out_path", type=click.Path(dir_okay=False), default=None,
              help="Write to a file instead of stdout.")
@catalog_option
@runtime_errors
def report_cmd(session_file, fmt, out_path, catalog_path):
    """Render the full assessment report."""
    catalog = _load_catalog(catalog_path)
    session = _load_session(catalog, session_file)
    assessment = assess_maturity(catalog, session.answers, session.profile)
    payload = render_assessment(catalog, assessment, session, fmt)
    if out_path:
        Path(out_path).write_bytes(payload)
        click.echo(f"wrote {out_path}")
    else:
        sys.stdout.buffer.write(payload)


@main.command("gap")
@click.argument("session_file", type=click.Path(exists=True, dir_okay=False))
@click.option("--target", required=True, type=int, help="Target maturity level 1..5.")
@click.option("--check", is_flag=True, help="Exit 4 when gaps are present.")
@click.option("--format", "fmt", type=click.Choice(["md", "json"]), default="json")
@catalog_option
@runtime_errors
def gap_cmd(session_file, target, check, fmt, catalog_path):
    """List everything blocking the target level."""
    catalog = _load_catalog(catalog_path)
    session = _load_session(catalog, session_file)
    report = gap_analysis(catalog, session.answers, session.profile, target)
    sys.stdout.buffer.write(render_gap(catalog, report, fmt))
    if check and not report.empty:
        sys.exit(EXIT_GAPS)


@main.command("whatif")
@click.argument("session_file", type=click.Path(exists=True, dir_okay=False))
@click.option("--overlay", "overlay_path", required=True,
              type=click.Path(exists=True, dir_okay=False),
              help="Flat JSON map of question id to substituted answer value.")
@catalog_option
@runtime_errors
def whatif_cmd(session_file, overlay_path, catalog_path):
    """Evaluate with overlay answers substituted; nothing is persisted."""
    catalog = _load_catalog(catalog_path)
    session = _load_session(catalog, session_file)
    raw = _json.loads(Path(overlay_path).read_text(encoding="utf-8"))
    overlay = AnswerSet.from_mapping(catalog, raw)
    merged = apply_whatif(catalog, session.answers, overlay)
    assessment = assess_maturity(catalog, merged, session.profile)
    sys.stdout.buffer.write(canonical_json(build_assessment_data(catalog, assessment)))


@main.command("serve")
@click.option("--catalog", "catalog_path", envvar="SECASSESS_CATALOG", default=None,
              type=click.Path(exists=True, dir_okay=False))
@click.option("--sessions-dir", envvar="SECASSESS_SESSIONS_DIR", default="sessions",
              type=click.Path(file_okay=False))
@click.option("--bind", envvar="SECASSESS_BIND", default=None,
              help="host:port (default 127.0.0.1:8470, loopback only).")
@click.option("--static", "static_dir", envvar="SECASSESS_STATIC", default=None,
              type=click.Path(file_okay=False),
              help="Directory of built frontend assets to serve under /ui.")
@runtime_errors
def serve_cmd(catalog_path, sessions_dir, bind, static_dir):
    """Run the HTTP service (no authentication; bind stays on loopback)."""
    from .service import DEFAULT_BIND, ServiceConfig, serve

    config = ServiceConfig(
        catalog_path=None if catalog_path is None else Path(catalog_path),
        sessions_dir=Path(sessions_dir),
        bind=bind or DEFAULT_BIND,
        static_dir=None if static_dir is None else Path(static_dir),
    )
    serve(config)


if __name__ == "__main__":
    main()
