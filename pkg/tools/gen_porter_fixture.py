#!/usr/bin/env python3
"""Generate the frozen Porter-stemmer fixtures under tests/data/.

Two independently written stemmers must agree on every word before anything
is frozen:

* the production rule-table implementation (``scholdiff.porter``), and
* ``_RefStemmer`` below, a deliberate transliteration of the classic
  buffer/k/j-style reference implementation (switch on a discriminating
  letter, ``ends``/``setto``/``r`` helpers, measure computed over ``b[0..j]``).

The vocabulary (~23k words) is harvested from English prose available
locally: installed-package METADATA/README/LICENSE texts and the standard
library's source files, ranked by frequency, plus a curated supplement that
covers every rule table's example words.  Outputs:

* tests/data/porter_fixture.txt         word<TAB>stem, one per line
* tests/data/porter_nonidempotent.txt   word<TAB>stem<TAB>restem for the
                                        vocabulary words whose stem re-stems
                                        differently
"""

from __future__ import annotations

import collections
import re
import sys
from pathlib import Path

REPO = Path(__file__).resolve().parent.parent
sys.path.insert(0, str(REPO / "src"))

from scholdiff.porter import porter_stem  # noqa: E402

TARGET_SIZE = 23000
WORD_RE = re.compile(r"[a-z]+")


class _RefStemmer:
    """Transliteration of the classic reference implementation."""

    def __init__(self) -> None:
        self.b = ""
        self.k = 0
        self.j = 0

    def cons(self, i: int) -> bool:
        ch = self.b[i]
        if ch in "aeiou":
            return False
        if ch == "y":
            return True if i == 0 else not self.cons(i - 1)
        return True

    def m(self) -> int:
        n = 0
        i = 0
        while True:
            if i > self.j:
                return n
            if not self.cons(i):
                break
            i += 1
        i += 1
        while True:
            while True:
                if i > self.j:
                    return n
                if self.cons(i):
                    break
                i += 1
            i += 1
            n += 1
            while True:
                if i > self.j:
                    return n
                if not self.cons(i):
                    break
                i += 1
            i += 1

    def vowelinstem(self) -> bool:
        return any(not self.cons(i) for i in range(self.j + 1))

    def doublec(self, j: int) -> bool:
        if j < 1:
            return False
        if self.b[j] != self.b[j - 1]:
            return False
        return self.cons(j)

    def cvc(self, i: int) -> bool:
        if i < 2 or not self.cons(i) or self.cons(i - 1) or not self.cons(i - 2):
            return False
        return self.b[i] not in "wxy"

    def ends(self, s: str) -> bool:
        length = len(s)
        if length > self.k + 1:
            return False
        if self.b[self.k - length + 1 : self.k + 1] != s:
            return False
        self.j = self.k - length
        return True

    def setto(self, s: str) -> None:
        self.b = self.b[: self.j + 1] + s
        self.k = self.j + len(s)

    def r(self, s: str) -> None:
        if self.m() > 0:
            self.setto(s)

    def step1ab(self) -> None:
        if self.b[self.k] == "s":
            if self.ends("sses"):
                self.k -= 2
            elif self.ends("ies"):
                self.setto("i")
            elif self.b[self.k - 1] != "s":
                self.k -= 1
        if self.ends("eed"):
            if self.m() > 0:
                self.k -= 1
        elif (self.ends("ed") or self.ends("ing")) and self.vowelinstem():
            self.k = self.j
            if self.ends("at"):
                self.setto("ate")
            elif self.ends("bl"):
                self.setto("ble")
            elif self.ends("iz"):
                self.setto("ize")
            elif self.doublec(self.k):
                self.k -= 1
                if self.b[self.k] in "lsz":
                    self.k += 1
            elif self.m() == 1 and self.cvc(self.k):
                self.setto("e")

    def step1c(self) -> None:
        if self.ends("y") and self.vowelinstem():
            self.b = self.b[: self.k] + "i" + self.b[self.k + 1 :]

    def step2(self) -> None:
        ch = self.b[self.k - 1]
        if ch == "a":
            if self.ends("ational"):
                self.r("ate")
            elif self.ends("tional"):
                self.r("tion")
        elif ch == "c":
            if self.ends("enci"):
                self.r("ence")
            elif self.ends("anci"):
                self.r("ance")
        elif ch == "e":
            if self.ends("izer"):
                self.r("ize")
        elif ch == "l":
            if self.ends("bli"):
                self.r("ble")
            elif self.ends("alli"):
                self.r("al")
            elif self.ends("entli"):
                self.r("ent")
            elif self.ends("eli"):
                self.r("e")
            elif self.ends("ousli"):
                self.r("ous")
        elif ch == "o":
            if self.ends("ization"):
                self.r("ize")
            elif self.ends("ation"):
                self.r("ate")
            elif self.ends("ator"):
                self.r("ate")
        elif ch == "s":
            if self.ends("alism"):
                self.r("al")
            elif self.ends("iveness"):
                self.r("ive")
            elif self.ends("fulness"):
                self.r("ful")
            elif self.ends("ousness"):
                self.r("ous")
        elif ch == "t":
            if self.ends("aliti"):
                self.r("al")
            elif self.ends("iviti"):
                self.r("ive")
            elif self.ends("biliti"):
                self.r("ble")
        elif ch == "g":
            if self.ends("logi"):
                self.r("log")

    def step3(self) -> None:
        ch = self.b[self.k]
        if ch == "e":
            if self.ends("icate"):
                self.r("ic")
            elif self.ends("ative"):
                self.r("")
            elif self.ends("alize"):
                self.r("al")
        elif ch == "i":
            if self.ends("iciti"):
                self.r("ic")
        elif ch == "l":
            if self.ends("ical"):
                self.r("ic")
            elif self.ends("ful"):
                self.r("")
        elif ch == "s":
            if self.ends("ness"):
                self.r("")

    def step4(self) -> None:
        ch = self.b[self.k - 1]
        if ch == "a":
            if self.ends("al"):
                pass
            else:
                return
        elif ch == "c":
            if self.ends("ance"):
                pass
            elif self.ends("ence"):
                pass
            else:
                return
        elif ch == "e":
            if self.ends("er"):
                pass
            else:
                return
        elif ch == "i":
            if self.ends("ic"):
                pass
            else:
                return
        elif ch == "l":
            if self.ends("able"):
                pass
            elif self.ends("ible"):
                pass
            else:
                return
        elif ch == "n":
            if self.ends("ant"):
                pass
            elif self.ends("ement"):
                pass
            elif self.ends("ment"):
                pass
            elif self.ends("ent"):
                pass
            else:
                return
        elif ch == "o":
            if self.ends("ion") and self.j >= 0 and self.b[self.j] in "st":
                pass
            elif self.ends("ou"):
                pass
            else:
                return
        elif ch == "s":
            if self.ends("ism"):
                pass
            else:
                return
        elif ch == "t":
            if self.ends("ate"):
                pass
            elif self.ends("iti"):
                pass
            else:
                return
        elif ch == "u":
            if self.ends("ous"):
                pass
            else:
                return
        elif ch == "v":
            if self.ends("ive"):
                pass
            else:
                return
        elif ch == "z":
            if self.ends("ize"):
                pass
            else:
                return
        else:
            return
        if self.m() > 1:
            self.k = self.j

    def step5(self) -> None:
        self.j = self.k
        if self.b[self.k] == "e":
            a = self.m()
            if a > 1 or (a == 1 and not self.cvc(self.k - 1)):
                self.k -= 1
        if self.b[self.k] == "l" and self.doublec(self.k) and self.m() > 1:
            self.k -= 1

    def stem(self, word: str) -> str:
        self.b = word
        self.k = len(word) - 1
        self.j = 0
        if self.k <= 1:
            return word
        self.step1ab()
        self.step1c()
        self.step2()
        self.step3()
        self.step4()
        self.step5()
        return self.b[: self.k + 1]


# Example words from the published rule tables plus boundary probes; every
# rewrite rule above fires for at least one of these.
SUPPLEMENT = """
caresses ponies ties caress cats feed agreed plastered bled motoring sing
conflated troubled sized hopping tanned falling hissing fizzed failing filing
happy sky relational conditional rational valenci hesitanci digitizer
conformabli radicalli differentli vileli analogousli vietnamization predication
operator feudalism decisiveness hopefulness callousness formaliti sensitiviti
sensibiliti triplicate formative formalize electriciti electrical hopeful
goodness revival allowance inference airliner gyroscopic adjustable defensible
irritant replacement adjustment dependent adoption homologou communism activate
angulariti homologous effective bowdlerize probate rate cease controll roll
generalizations oscillators archaeology logic logical logically analogical
abilities agreeable siezed dying lying tying vying trying skies crying
ionization nationalization rationalization sensationally professionally
apologize apologies analogies technological biological bibliography
decision decisions revision division provision television occasion collision
precision incision expression aggression possession profession admission
transmission emission submission commission concession succession
news proceeds species serious previous obvious enormous continuous
ambiguous religious conscious courageous instantaneous miscellaneous
feudally medically historically specifically dramatically systematically
was his ours yours is as by do go me we us it an at on in no so to up
a i be he she the they them their there then than that this these those
e y ll ed ing ies sses eed
""".split()


def harvest_vocabulary() -> list[str]:
    counts: collections.Counter[str] = collections.Counter()

    roots = [
        Path("/usr/lib/python3.10"),
        Path("/usr/local/lib/python3.10/dist-packages"),
    ]
    patterns = ["METADATA", "*.rst", "*.md", "*.txt", "LICENSE*", "*.py"]
    seen_files = 0
    for root in roots:
        if not root.is_dir():
            continue
        for pattern in patterns:
            for path in sorted(root.rglob(pattern)):
                if not path.is_file():
                    continue
                try:
                    text = path.read_text("utf-8", errors="ignore")
                except OSError:
                    continue
                seen_files += 1
                counts.update(WORD_RE.findall(text.lower()))
    print(f"scanned {seen_files} files, {len(counts)} distinct tokens")

    usable = [
        (word, n)
        for word, n in counts.items()
        if 1 <= len(word) <= 24 and (n >= 2 or len(word) <= 12)
    ]
    usable.sort(key=lambda item: (-item[1], item[0]))
    vocab = {word for word, _ in usable[:TARGET_SIZE]}
    vocab.update(SUPPLEMENT)
    return sorted(vocab)


def main() -> int:
    vocab = harvest_vocabulary()
    print(f"vocabulary size: {len(vocab)}")

    ref = _RefStemmer()
    mismatches = []
    rows = []
    for word in vocab:
        expected = ref.stem(word)
        got = porter_stem(word)
        if expected != got:
            mismatches.append((word, expected, got))
        rows.append((word, expected))

    if mismatches:
        print(f"DISAGREEMENT on {len(mismatches)} words; nothing frozen:")
        for word, expected, got in mismatches[:50]:
            print(f"  {word!r}: reference={expected!r} rule-table={got!r}")
        return 1

    spot_checks = {
        "caresses": "caress",
        "ponies": "poni",
        "ties": "ti",
        "caress": "caress",
        "cats": "cat",
        "feed": "feed",
        "agreed": "agre",
        "plastered": "plaster",
        "bled": "bled",
        "motoring": "motor",
        "sing": "sing",
        "conflated": "conflat",
        "troubled": "troubl",
        "sized": "size",
        "hopping": "hop",
        "tanned": "tan",
        "falling": "fall",
        "hissing": "hiss",
        "fizzed": "fizz",
        "failing": "fail",
        "filing": "file",
        "happy": "happi",
        "sky": "sky",
        "relational": "relat",
        "conditional": "condit",
        "rational": "ration",
        "valenci": "valenc",
        "hesitanci": "hesit",
        "digitizer": "digit",
        "radicalli": "radic",
        "differentli": "differ",
        "vileli": "vile",
        "analogousli": "analog",
        "vietnamization": "vietnam",
        "predication": "predic",
        "operator": "oper",
        "feudalism": "feudal",
        "decisiveness": "decis",
        "hopefulness": "hope",
        "callousness": "callous",
        "formaliti": "formal",
        "sensitiviti": "sensit",
        "sensibiliti": "sensibl",
        "triplicate": "triplic",
        "formative": "form",
        "formalize": "formal",
        "electriciti": "electr",
        "electrical": "electr",
        "hopeful": "hope",
        "goodness": "good",
        "revival": "reviv",
        "allowance": "allow",
        "inference": "infer",
        "airliner": "airlin",
        "gyroscopic": "gyroscop",
        "adjustable": "adjust",
        "defensible": "defens",
        "irritant": "irrit",
        "replacement": "replac",
        "adjustment": "adjust",
        "dependent": "depend",
        "adoption": "adopt",
        "communism": "commun",
        "activate": "activ",
        "angulariti": "angular",
        "homologous": "homolog",
        "effective": "effect",
        "bowdlerize": "bowdler",
        "probate": "probat",
        "rate": "rate",
        "cease": "ceas",
        "controll": "control",
        "roll": "roll",
        "generalizations": "gener",
        "oscillators": "oscil",
        "decision": "decis",
    }
    stem_map = dict(rows)
    bad = {
        w: (stem_map[w], want)
        for w, want in spot_checks.items()
        if stem_map.get(w) != want
    }
    if bad:
        print("SPOT-CHECK failures (got, want); nothing frozen:")
        for w, pair in sorted(bad.items()):
            print(f"  {w!r}: got {pair[0]!r} want {pair[1]!r}")
        return 1
    print(f"spot checks OK ({len(spot_checks)} hand-verified pairs)")

    non_idempotent = []
    for word, stem in rows:
        restem = porter_stem(stem)
        if restem != stem:
            non_idempotent.append((word, stem, restem))
    share = 100.0 * (len(rows) - len(non_idempotent)) / len(rows)
    print(f"idempotent on own output: {share:.2f}% "
          f"({len(non_idempotent)} exceptions)")

    data_dir = REPO / "tests" / "data"
    data_dir.mkdir(parents=True, exist_ok=True)
    fixture = data_dir / "porter_fixture.txt"
    with fixture.open("w", encoding="utf-8") as fh:
        for word, stem in rows:
            fh.write(f"{word}\t{stem}\n")
    print(f"wrote {fixture} ({len(rows)} words)")

    exceptions = data_dir / "porter_nonidempotent.txt"
    with exceptions.open("w", encoding="utf-8") as fh:
        for word, stem, restem in non_idempotent:
            fh.write(f"{word}\t{stem}\t{restem}\n")
    print(f"wrote {exceptions} ({len(non_idempotent)} entries)")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
