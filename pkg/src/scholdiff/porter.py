"""Porter suffix-stripping stemmer.

Implements the classic rule-table algorithm in the variant used by the
long-standing reference implementations (and by the reference vocabulary
fixture this package is tested against).  That variant differs from the
1980 journal description in three small, deliberate ways:

* words of length <= 2 are returned unchanged;
* step 2 rewrites ``bli`` -> ``ble`` (instead of ``abli`` -> ``able``);
* step 2 gains the rule ``logi`` -> ``log``.

Everything operates on lowercase words; the function is total (any string
comes back unchanged when no rule applies).
"""

from __future__ import annotations

__all__ = ["porter_stem"]

_VOWELS = "aeiou"


def _consonant_map(stem: str) -> list[bool]:
    """True per position iff that character acts as a consonant.

    ``y`` is a consonant at position 0 or after a vowel, a vowel after a
    consonant.
    """
    out: list[bool] = []
    for i, ch in enumerate(stem):
        if ch in _VOWELS:
            out.append(False)
        elif ch == "y":
            out.append(True if i == 0 else not out[i - 1])
        else:
            out.append(True)
    return out


def _measure(stem: str) -> int:
    """Number of vowel->consonant transitions: the m of [C](VC)^m[V]."""
    cmap = _consonant_map(stem)
    n = len(stem)
    m = 0
    i = 0
    while i < n and cmap[i]:
        i += 1
    while i < n:
        while i < n and not cmap[i]:
            i += 1
        if i >= n:
            break
        m += 1
        while i < n and cmap[i]:
            i += 1
    return m


def _has_vowel(stem: str) -> bool:
    return not all(_consonant_map(stem))


def _ends_double_consonant(stem: str) -> bool:
    return (
        len(stem) >= 2
        and stem[-1] == stem[-2]
        and _consonant_map(stem)[-1]
    )


def _ends_cvc(stem: str) -> bool:
    """consonant-vowel-consonant ending where the last consonant is not w/x/y."""
    if len(stem) < 3:
        return False
    cmap = _consonant_map(stem)
    if not (cmap[-3] and not cmap[-2] and cmap[-1]):
        return False
    return stem[-1] not in "wxy"


def _step1a(word: str) -> str:
    if word.endswith("sses"):
        return word[:-2]
    if word.endswith("ies"):
        return word[:-3] + "i"
    if word.endswith("ss"):
        return word
    if word.endswith("s"):
        return word[:-1]
    return word


def _step1b(word: str) -> str:
    if word.endswith("eed"):
        if _measure(word[:-3]) > 0:
            return word[:-1]
        return word
    if word.endswith("ed"):
        stem = word[:-2]
        if _has_vowel(stem):
            return _step1b_cleanup(stem)
        return word
    if word.endswith("ing"):
        stem = word[:-3]
        if _has_vowel(stem):
            return _step1b_cleanup(stem)
        return word
    return word


def _step1b_cleanup(stem: str) -> str:
    if stem.endswith(("at", "bl", "iz")):
        return stem + "e"
    if _ends_double_consonant(stem) and stem[-1] not in "lsz":
        return stem[:-1]
    if _measure(stem) == 1 and _ends_cvc(stem):
        return stem + "e"
    return stem


def _step1c(word: str) -> str:
    if word.endswith("y") and _has_vowel(word[:-1]):
        return word[:-1] + "i"
    return word


# Ordered so that whenever one listed suffix is a tail of another, the longer
# comes first; the first suffix that matches decides the rule (its measure
# condition may still reject the rewrite, in which case nothing happens).
_STEP2_RULES = (
    ("ational", "ate"),
    ("tional", "tion"),
    ("enci", "ence"),
    ("anci", "ance"),
    ("izer", "ize"),
    ("bli", "ble"),
    ("alli", "al"),
    ("entli", "ent"),
    ("eli", "e"),
    ("ousli", "ous"),
    ("ization", "ize"),
    ("ation", "ate"),
    ("ator", "ate"),
    ("alism", "al"),
    ("iveness", "ive"),
    ("fulness", "ful"),
    ("ousness", "ous"),
    ("aliti", "al"),
    ("iviti", "ive"),
    ("biliti", "ble"),
    ("logi", "log"),
)

_STEP3_RULES = (
    ("icate", "ic"),
    ("ative", ""),
    ("alize", "al"),
    ("iciti", "ic"),
    ("ical", "ic"),
    ("ful", ""),
    ("ness", ""),
)

_STEP4_SUFFIXES = (
    "al",
    "ance",
    "ence",
    "er",
    "ic",
    "able",
    "ible",
    "ant",
    "ement",
    "ment",
    "ent",
    "ion",
    "ou",
    "ism",
    "ate",
    "iti",
    "ous",
    "ive",
    "ize",
)


def _apply_rules(word: str, rules) -> str:
    for suffix, replacement in rules:
        if word.endswith(suffix):
            stem = word[: len(word) - len(suffix)]
            if _measure(stem) > 0:
                return stem + replacement
            return word
    return word


def _step4(word: str) -> str:
    for suffix in _STEP4_SUFFIXES:
        if word.endswith(suffix):
            stem = word[: len(word) - len(suffix)]
            if suffix == "ion" and not (stem and stem[-1] in "st"):
                continue
            if _measure(stem) > 1:
                return stem
            return word
    return word


def _step5(word: str) -> str:
    if word.endswith("e"):
        stem = word[:-1]
        m = _measure(stem)
        if m > 1 or (m == 1 and not _ends_cvc(stem)):
            word = stem
    if word.endswith("ll") and _measure(word[:-1]) > 1:
        word = word[:-1]
    return word


def porter_stem(word: str) -> str:
    """Return the Porter stem of a lowercase word."""
    if len(word) <= 2:
        return word
    word = _step1a(word)
    word = _step1b(word)
    word = _step1c(word)
    word = _apply_rules(word, _STEP2_RULES)
    word = _apply_rules(word, _STEP3_RULES)
    word = _step4(word)
    word = _step5(word)
    return word
