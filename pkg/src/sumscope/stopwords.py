"""Embedded English stopword list.

A fixed ~180-entry list derived from the SMART collection, shared by the
keyword extractor, the uniformity metric, and the Tf-Idf path so results are
reproducible without runtime downloads.  Set the ``SUMSCOPE_STOPWORDS``
environment variable to a file with one word per line to override it.
"""

from __future__ import annotations

import os

DEFAULT_STOPWORDS = frozenset(
    """
    a about above after again against all almost along already also am
    among an and another any anything are around as at be because been
    before being below between both but by can cannot could did do does
    doing done down during each either enough even ever every few for
    from further had has have having he her here hers herself him himself
    his how however i if in instead into is it its itself just least less
    let like made make many may me might mine more most much must my
    myself neither never next no nor not nothing now of off often on once
    one only onto or other others our ours ourselves out over own per
    rather same seem seemed seems several shall she should since so some
    something sometimes still such than that the their theirs them
    themselves then there therefore these they this those though through
    thus to too under until up upon us very was we well were what when
    where whether which while who whom whose why will with within without
    would yet you your yours yourself yourselves
    """.split()
)

_ENV_VAR = "SUMSCOPE_STOPWORDS"
_cache: dict[str, frozenset[str]] = {}


def active_stopwords() -> frozenset[str]:
    """Return the stopword set in effect, honoring the env override."""
    path = os.environ.get(_ENV_VAR)
    if not path:
        return DEFAULT_STOPWORDS
    if path not in _cache:
        with open(path, encoding="utf-8") as fh:
            words = frozenset(w.strip().lower() for w in fh if w.strip())
        _cache[path] = words
    return _cache[path]
