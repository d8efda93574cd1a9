"""Shared output helpers for the experiment scripts."""
import argparse
from pathlib import Path

from ghzrate.cli import render_rows


def out_dir(description: str) -> Path:
    ap = argparse.ArgumentParser(description=description)
    ap.add_argument("--out", default="results", help="output directory (created if missing)")
    path = Path(ap.parse_args().out)
    path.mkdir(parents=True, exist_ok=True)
    return path


def write_csv(path: Path, rows: list[dict], columns: list[str]) -> None:
    path.write_text(render_rows(rows, columns, "csv"))
    print(f"wrote {path} ({len(rows)} rows)")
