"""Command-line entry points.

  winofusion gen --corpus FILE --config FILE --out FILE [--max-len N]
  winofusion serve --config FILE [--host H] [--port P]
  winofusion adapt --show [--config FILE]
  winofusion export --out DIR [--config FILE]

The WINOFUSION_CONFIG environment variable supplies the config path when
--config is omitted.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from winofusion.config import Config, load_config
from winofusion.pipeline import (
    PipelineConfig,
    build_drafts,
    draft_to_dict,
    ingest_corpus,
    rank_drafts,
)


def _pipeline_config(config: Config, max_len: int | None) -> PipelineConfig:
    return PipelineConfig(
        sentence_length_max=max_len or config.pipeline_sentence_length_max,
        factor_weights={"agreement": config.pipeline_w_agreement,
                        "triples": config.pipeline_w_triples,
                        "mitkov": config.pipeline_w_mitkov})


def cmd_gen(args: argparse.Namespace) -> int:
    config = load_config(args.config)
    pipeline_config = _pipeline_config(config, args.max_len)
    raw = Path(args.corpus).read_bytes()
    skipped: list[tuple[str, str]] = []
    sentences = ingest_corpus(raw, pipeline_config, skipped=skipped)
    drafts = rank_drafts(build_drafts(sentences, pipeline_config), pipeline_config)
    with open(args.out, "w", encoding="utf-8") as fh:
        for draft in drafts:
            fh.write(json.dumps(draft_to_dict(draft), sort_keys=True,
                                separators=(",", ":"), ensure_ascii=False) + "\n")
    kinds: dict[str, int] = {}
    for d in drafts:
        kinds[d.kind] = kinds.get(d.kind, 0) + 1
    print(f"{len(sentences)} sentences -> {len(drafts)} drafts {kinds}; "
          f"{len(skipped)} lines skipped", file=sys.stderr)
    return 0


def cmd_serve(args: argparse.Namespace) -> int:
    import uvicorn

    from winofusion.api import create_app
    from winofusion.engine import Platform

    config = load_config(args.config)
    storage = Path(config.storage_dir)
    if (storage / "events.log").exists():
        platform = Platform.restore(storage, config=config)
        if platform.restore_report and platform.restore_report.corrupt:
            print(f"event log corrupt after sequence "
                  f"{platform.restore_report.last_valid_sequence}: "
                  f"{platform.restore_report.reason}", file=sys.stderr)
    else:
        platform = Platform(config=config, storage_dir=storage)
    if not platform.workers:
        # fresh store: seed the admin account so workers can be provisioned
        platform.provision_worker("admin", role="admin",
                                  auth_key=config.admin_key, trained=True)
        print("provisioned initial admin account", file=sys.stderr)
    app = create_app(platform)
    uvicorn.run(app, host=args.host, port=args.port, log_level="info")
    return 0


def _restored_platform(config_path: str | None):
    from winofusion.engine import Platform

    config = load_config(config_path)
    storage = Path(config.storage_dir)
    if not (storage / "events.log").exists():
        print(f"no event log under {storage}; nothing recorded yet", file=sys.stderr)
        return Platform(config=config)
    return Platform.restore(storage, config=config)


def cmd_adapt(args: argparse.Namespace) -> int:
    platform = _restored_platform(args.config)
    snapshot = platform.adaptivity_snapshot()
    if args.show:
        print("factor counters (accepted/offered):")
        for factor, (offered, accepted) in sorted(snapshot["factors"].items()):
            print(f"  {factor:10s} {accepted}/{offered}")
        print("factor weights:")
        for factor, weight in sorted(snapshot["factor_weights"].items()):
            print(f"  {factor:10s} {weight:.4f}")
        print(f"sentence length bound: {snapshot['sentence_length_max']}")
        print(f"config version: {snapshot['config_version']}")
        print("subjects (accepted/offered):")
        for subject, (offered, accepted) in sorted(snapshot["subjects"].items()):
            print(f"  {subject:14s} {accepted}/{offered}")
    else:
        print(json.dumps(snapshot, sort_keys=True, indent=2))
    return 0


def cmd_export(args: argparse.Namespace) -> int:
    platform = _restored_platform(args.config)
    path = platform.export_finished(args.out)
    print(f"wrote {len(platform.finished)} schemas to {path}", file=sys.stderr)
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="winofusion")
    sub = parser.add_subparsers(dest="command", required=True)

    gen = sub.add_parser("gen", help="build ranked drafts from a corpus file")
    gen.add_argument("--corpus", required=True)
    gen.add_argument("--config", default=None)
    gen.add_argument("--out", required=True)
    gen.add_argument("--max-len", type=int, default=None)
    gen.set_defaults(func=cmd_gen)

    serve = sub.add_parser("serve", help="run the collaboration service")
    serve.add_argument("--config", default=None)
    serve.add_argument("--host", default="127.0.0.1")
    serve.add_argument("--port", type=int, default=8000)
    serve.set_defaults(func=cmd_serve)

    adapt = sub.add_parser("adapt", help="inspect the adaptivity state")
    adapt.add_argument("--show", action="store_true")
    adapt.add_argument("--config", default=None)
    adapt.set_defaults(func=cmd_adapt)

    export = sub.add_parser("export", help="write all finished schemas")
    export.add_argument("--out", required=True)
    export.add_argument("--config", default=None)
    export.set_defaults(func=cmd_export)

    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
