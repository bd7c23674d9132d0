"""scholdiff: compare pre-print and published versions of scholarly articles.

Pipeline: harvest repository metadata (OAI-PMH) and publisher full texts,
match article versions by DOI, extract title/abstract/body sections, score
each pair with five normalized similarity measures, and report binned
distributions, first-vs-last version deltas, and publication-date precedence.
"""

__version__ = "0.1.0"

from .simcore import (  # noqa: F401
    CITED_TOOL_COSTS,
    EditCosts,
    UNIT_COSTS,
    char_set_jaccard,
    char_set_sorensen,
    cosine_similarity,
    length_similarity,
    levenshtein_distance,
    levenshtein_ratio,
    signed_length_delta,
)
from .textprep import (  # noqa: F401
    default_stopwords,
    porter_stem,
    prepare_terms,
    remove_stopwords,
    term_counts,
    tokenize,
)
