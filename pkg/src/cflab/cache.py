"""File formats and the enumeration cache.

Formats, all newline-delimited text, all diff-friendly:

  words    one record per word: "d1,d2,...<TAB>continuant"
  tables   line 1: "<bound> <count>"; line 2: inclusive membership
           runs "lo-hi" (or "lo" for singletons), space-separated
  spectra  CSV with header "n,multiplicity", rows sorted by n
  reports  JSON, sorted keys, two-space indent

Writes are atomic (temp file in the target directory, then rename),
so a cache can be shared between concurrent runs.  The environment
variable CONTINUANT_CACHE overrides any --cache flag.
"""

from __future__ import annotations

import json
import os
import tempfile
from fractions import Fraction
from pathlib import Path
from typing import Iterable, List, Optional, Sequence, Tuple

from .continuants import Alphabet, Word
from .enumeration import DenominatorTable, EnumerationQuery, denominator_set, enumerate_bounded

__all__ = [
    "ENV_CACHE",
    "resolve_cache_dir",
    "atomic_write_text",
    "words_filename",
    "table_filename",
    "format_words",
    "parse_words",
    "format_table",
    "parse_table",
    "format_spectrum_csv",
    "format_json",
    "cached_words",
    "cached_table",
]

ENV_CACHE = "CONTINUANT_CACHE"


def resolve_cache_dir(flag_value: Optional[str]) -> Optional[Path]:
    """Cache directory from the environment (wins) or the flag; None = off."""
    env = os.environ.get(ENV_CACHE)
    chosen = env if env else flag_value
    if not chosen:
        return None
    path = Path(chosen)
    path.mkdir(parents=True, exist_ok=True)
    return path


def atomic_write_text(path: Path, text: str) -> None:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    fd, tmp = tempfile.mkstemp(dir=str(path.parent), prefix=path.name + ".", suffix=".tmp")
    try:
        with os.fdopen(fd, "w", encoding="utf-8", newline="\n") as handle:
            handle.write(text)
        os.replace(tmp, path)
    except BaseException:
        try:
            os.unlink(tmp)
        except OSError:
            pass
        raise


def _alphabet_tag(alphabet: Alphabet) -> str:
    return "-".join(str(d) for d in alphabet.digits)


def words_filename(alphabet: Alphabet, bound: int, parity: str) -> str:
    return "words_a%s_b%d_%s.txt" % (_alphabet_tag(alphabet), bound, parity)


def table_filename(alphabet: Alphabet, bound: int, parity: str) -> str:
    return "table_a%s_b%d_%s.txt" % (_alphabet_tag(alphabet), bound, parity)


def format_words(pairs: Iterable[Tuple[Word, int]]) -> str:
    lines = ["%s\t%d" % (",".join(str(d) for d in w), value) for w, value in pairs]
    return "\n".join(lines) + ("\n" if lines else "")


def parse_words(text: str) -> List[Tuple[Word, int]]:
    out: List[Tuple[Word, int]] = []
    for line in text.splitlines():
        if not line.strip():
            continue
        left, right = line.split("\t")
        word = tuple(int(tok) for tok in left.split(","))
        out.append((word, int(right)))
    return out


def format_table(table: DenominatorTable) -> str:
    runs = table.runs()
    body = " ".join(("%d" % lo) if lo == hi else ("%d-%d" % (lo, hi)) for lo, hi in runs)
    return "%d %d\n%s\n" % (table.bound, table.count, body)


def parse_table(text: str, alphabet: Alphabet, parity: str) -> DenominatorTable:
    lines = text.splitlines()
    bound_s, count_s = lines[0].split()
    bound, count = int(bound_s), int(count_s)
    runs: List[Tuple[int, int]] = []
    if len(lines) > 1 and lines[1].strip():
        for tok in lines[1].split():
            if "-" in tok:
                lo_s, hi_s = tok.split("-")
                runs.append((int(lo_s), int(hi_s)))
            else:
                runs.append((int(tok), int(tok)))
    table = DenominatorTable.from_runs(alphabet, bound, parity, runs)
    if table.count != count:
        raise ValueError("table header count %d does not match runs (%d)" % (count, table.count))
    return table


def format_spectrum_csv(items: Sequence[Tuple[int, int]]) -> str:
    lines = ["n,multiplicity"]
    lines.extend("%d,%d" % (n, m) for n, m in items)
    return "\n".join(lines) + "\n"


def _jsonable(obj):
    if isinstance(obj, Fraction):
        return {"num": obj.numerator, "den": obj.denominator}
    if isinstance(obj, dict):
        return {str(k): _jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_jsonable(v) for v in obj]
    return obj


def format_json(obj) -> str:
    return json.dumps(_jsonable(obj), sort_keys=True, indent=2) + "\n"


def cached_words(
    query: EnumerationQuery, cache_dir: Optional[Path]
) -> List[Tuple[Word, int]]:
    """Enumerate through the cache: read on hit, write on miss."""
    if cache_dir is None:
        return list(enumerate_bounded(query))
    path = Path(cache_dir) / words_filename(query.alphabet, query.bound, query.parity)
    if path.exists():
        return parse_words(path.read_text(encoding="utf-8"))
    pairs = list(enumerate_bounded(query))
    atomic_write_text(path, format_words(pairs))
    return pairs


def cached_table(query: EnumerationQuery, cache_dir: Optional[Path]) -> DenominatorTable:
    if cache_dir is None:
        return denominator_set(query)
    path = Path(cache_dir) / table_filename(query.alphabet, query.bound, query.parity)
    if path.exists():
        return parse_table(path.read_text(encoding="utf-8"), query.alphabet, query.parity)
    table = denominator_set(query)
    atomic_write_text(path, format_table(table))
    return table
