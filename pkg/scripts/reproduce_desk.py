"""Regenerate every desk-scale table and figure into one directory.

    python3 scripts/reproduce_desk.py [out_dir]

Same as `sqfree reproduce --scale desk --out out_dir`.
"""

import sys
import time
from pathlib import Path

from sqfree.reproduce import reproduce_desk

if __name__ == "__main__":
    out = Path(sys.argv[1] if len(sys.argv) > 1 else "reproduce")
    t0 = time.perf_counter()
    reproduce_desk(out)
    files = sorted(p for p in out.rglob("*") if p.is_file())
    print(f"wrote {len(files)} files to {out} in {time.perf_counter() - t0:.1f}s")
