"""Optional figures written next to the delimited output.

Each function takes already-computed results and writes one image file;
nothing here feeds back into the numbers.
"""

from __future__ import annotations

from collections import Counter
from pathlib import Path
from typing import Sequence

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402

from .polynomials import PolySpec  # noqa: E402
from .prime_engine import isprime  # noqa: E402


def _save(fig, path: str | Path) -> Path:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    fig.tight_layout()
    fig.savefig(path, dpi=120)
    plt.close(fig)
    return path


def twin_witnesses(pairs: Sequence, path: str | Path) -> Path:
    """Witness a against the smaller member, one marker style per class."""
    fig, ax = plt.subplots(figsize=(6, 4))
    by_class: dict[str, list] = {}
    for t in pairs:
        if t.a is not None:
            by_class.setdefault(t.label.value, []).append(t)
    for label, group in sorted(by_class.items()):
        ax.plot([t.p_i for t in group], [t.a for t in group], ".", ms=3, label=f"class {label}")
    special = sum(1 for t in pairs if t.a is None)
    ax.set_xlabel("p_i")
    ax.set_ylabel("witness a")
    ax.set_title(f"{len(pairs)} pairs ({special} special)")
    if by_class:
        ax.legend(frameon=False)
    return _save(fig, path)


def multiplet_lengths(multiplets: Sequence, path: str | Path) -> Path:
    counts = Counter(m.length for m in multiplets)
    fig, ax = plt.subplots(figsize=(6, 4))
    xs = sorted(counts)
    ax.bar(xs, [counts[x] for x in xs], color="0.3")
    ax.set_xlabel("run length")
    ax.set_ylabel("count")
    ax.set_yscale("log")
    ax.set_title(f"{len(multiplets)} maximal runs")
    return _save(fig, path)


def poly_values(poly: PolySpec, path: str | Path, span: int | None = None) -> Path:
    """|P(j)| over a window around 0 with prime values marked."""
    span = span or max(poly.p0, 5)
    js = list(range(-span, span + 1))
    vals = [abs(poly(j)) for j in js]
    prime = [isprime(v) for v in vals]
    fig, ax = plt.subplots(figsize=(6, 4))
    ax.plot(js, vals, "-", color="0.7", lw=1)
    ax.plot([j for j, p in zip(js, prime) if p], [v for v, p in zip(vals, prime) if p],
            "o", ms=4, color="tab:blue", label="prime")
    ax.plot([j for j, p in zip(js, prime) if not p], [v for v, p in zip(vals, prime) if not p],
            "x", ms=4, color="tab:red", label="composite")
    ax.axvspan(0, poly.p0 - 1, color="0.9", zorder=0)
    ax.set_xlabel("j")
    ax.set_ylabel("|P(j)|")
    ax.set_title(str(poly))
    ax.legend(frameon=False)
    return _save(fig, path)
