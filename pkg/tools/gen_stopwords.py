#!/usr/bin/env python3
"""Freeze the packaged English stopword list.

The list is the classic 318-word Glasgow IR-group-derived English stopword
set (the same frozen list scikit-learn ships); it is materialized here once,
at development time, so the package carries its own versioned data file and
has no runtime dependency on the source library.
"""

from __future__ import annotations

from pathlib import Path

from sklearn.feature_extraction.text import ENGLISH_STOP_WORDS

OUT = Path(__file__).resolve().parent.parent / "src" / "scholdiff" / "data" / "stopwords_english.txt"

HEADER = """\
# English stopword list (318 words), classic Glasgow IR-group-derived set.
# One word per line; lines starting with '#' are comments.
"""


def main() -> int:
    words = sorted(ENGLISH_STOP_WORDS)
    if len(words) != 318:
        raise SystemExit(f"expected 318 words, found {len(words)}")
    if any(w != w.lower() or not w for w in words):
        raise SystemExit("list must be lowercase and free of empties")
    OUT.parent.mkdir(parents=True, exist_ok=True)
    OUT.write_text(HEADER + "\n".join(words) + "\n", encoding="utf-8")
    print(f"wrote {OUT} ({len(words)} words)")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
