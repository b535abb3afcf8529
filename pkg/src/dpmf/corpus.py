"""Input types and file readers.

Four kinds of input feed the metric:

* reference treebanks -- tab-separated CoNLL-style columns
  ``INDEX FORM POS HEAD`` (extra columns ignored, ``#`` comments ignored,
  blank line between sentences),
* POS-tagged hypotheses -- one sentence per line, tokens written as
  ``form_POS`` where the last underscore splits form from tag,
* lexical resources -- function-word list, synonym groups, paraphrase
  table,
* human judgments -- system ranks or pairwise sentence preferences.

Everything is validated on the way in; downstream code may assume the
invariants hold.  All loaded objects are immutable and safe to share
across threads or worker processes.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from typing import Callable, Iterable, Mapping, Optional, Sequence

from .errors import ParseError, ProjectivityError, TreeValidityError
from .porter import stem


@dataclass(frozen=True)
class Token:
    """One word of a sentence.

    ``index`` is the 1-based position in the sentence.  ``head`` is the
    position of the governing word (0 for the root) and is present only
    for reference tokens.
    """

    index: int
    form: str
    pos: str
    head: Optional[int] = None

    def __post_init__(self):
        if self.index < 1:
            raise TreeValidityError(f"token index must be >= 1, got {self.index}")
        if not self.form:
            raise ParseError(f"token {self.index} has an empty form")
        if not self.pos:
            raise ParseError(f"token {self.index} ({self.form!r}) has an empty POS tag")


def is_tree(heads: Sequence[int]) -> bool:
    """True iff the head array is a single-rooted, acyclic, connected tree.

    ``heads[i]`` is the head position of token ``i + 1``; 0 marks the root.
    """
    n = len(heads)
    if n == 0:
        return False
    roots = [i + 1 for i, h in enumerate(heads) if h == 0]
    if len(roots) != 1:
        return False
    for i, h in enumerate(heads):
        if not 0 <= h <= n or h == i + 1:
            return False
    children: list[list[int]] = [[] for _ in range(n + 1)]
    for i, h in enumerate(heads):
        children[h].append(i + 1)
    seen = 0
    stack = [roots[0]]
    while stack:
        node = stack.pop()
        seen += 1
        stack.extend(children[node])
    return seen == n


def is_projective(heads: Sequence[int]) -> bool:
    """True iff every subtree covers a contiguous span of positions.

    Assumes ``is_tree(heads)`` already holds.
    """
    n = len(heads)
    children: list[list[int]] = [[] for _ in range(n + 1)]
    for i, h in enumerate(heads):
        children[h].append(i + 1)
    # Post-order accumulation of subtree size and extent for each node.
    size = [1] * (n + 1)
    lo = list(range(n + 1))
    hi = list(range(n + 1))
    order: list[int] = []
    stack = [c for c in children[0]]
    while stack:
        node = stack.pop()
        order.append(node)
        stack.extend(children[node])
    for node in reversed(order):
        for c in children[node]:
            size[node] += size[c]
            lo[node] = min(lo[node], lo[c])
            hi[node] = max(hi[node], hi[c])
        if hi[node] - lo[node] + 1 != size[node]:
            return False
    return True


@dataclass(frozen=True)
class RefTree:
    """A reference sentence with its gold dependency tree.

    Construction validates that all heads are present and in range, the
    links form a single-rooted tree, and the tree is projective (trees
    with crossing arcs cannot be produced by the transition system and
    are rejected with a distinct error).
    """

    tokens: tuple[Token, ...]
    segment_id: int

    def __post_init__(self):
        object.__setattr__(self, "tokens", tuple(self.tokens))
        n = len(self.tokens)
        if n == 0:
            raise TreeValidityError(f"segment {self.segment_id}: empty sentence")
        for pos, tok in enumerate(self.tokens, start=1):
            if tok.index != pos:
                raise TreeValidityError(
                    f"segment {self.segment_id}: token index {tok.index} at position {pos}"
                )
            if tok.head is None:
                raise TreeValidityError(
                    f"segment {self.segment_id}: token {pos} has no head"
                )
            if not 0 <= tok.head <= n or tok.head == pos:
                raise TreeValidityError(
                    f"segment {self.segment_id}: token {pos} has invalid head {tok.head}"
                )
        if not is_tree(self.heads):
            raise TreeValidityError(
                f"segment {self.segment_id}: head links do not form a single-rooted tree"
            )
        if not is_projective(self.heads):
            raise ProjectivityError(
                f"segment {self.segment_id}: tree is non-projective"
            )

    @property
    def heads(self) -> tuple[int, ...]:
        return tuple(tok.head for tok in self.tokens)  # type: ignore[misc]

    def __len__(self) -> int:
        return len(self.tokens)


@dataclass(frozen=True)
class Hypothesis:
    """A POS-tagged candidate sentence.  An empty token list marks a blank
    input line; such hypotheses score zero downstream."""

    tokens: tuple[Token, ...]
    segment_id: int

    def __post_init__(self):
        object.__setattr__(self, "tokens", tuple(self.tokens))

    @property
    def empty(self) -> bool:
        return not self.tokens

    def __len__(self) -> int:
        return len(self.tokens)


def load_ref_treebank(path) -> list[RefTree]:
    """Read a reference treebank; one validated :class:`RefTree` per sentence.

    Segment ids are assigned in file order starting at 1.
    """
    trees: list[RefTree] = []
    pending: list[tuple[int, str]] = []

    def flush():
        if not pending:
            return
        segment_id = len(trees) + 1
        tokens = []
        for lineno, text in pending:
            cols = text.split("\t")
            if len(cols) < 4:
                raise ParseError(
                    f"{path}:{lineno}: expected at least 4 tab-separated columns, got {len(cols)}"
                )
            try:
                index = int(cols[0])
                head = int(cols[3])
            except ValueError as exc:
                raise ParseError(f"{path}:{lineno}: non-integer index or head") from exc
            try:
                tokens.append(Token(index=index, form=cols[1], pos=cols[2], head=head))
            except ParseError as exc:
                raise ParseError(f"{path}:{lineno}: {exc}") from exc
        trees.append(RefTree(tokens=tuple(tokens), segment_id=segment_id))
        pending.clear()

    with open(path, encoding="utf-8") as handle:
        for lineno, raw in enumerate(handle, start=1):
            line = raw.rstrip("\n").rstrip("\r")
            if line.startswith("#"):
                continue
            if not line.strip():
                flush()
                continue
            pending.append((lineno, line))
        flush()
    return trees


def to_conll(trees: Iterable[RefTree]) -> str:
    """Serialize reference trees back to the 4-column input format."""
    blocks = []
    for tree in trees:
        lines = [f"{t.index}\t{t.form}\t{t.pos}\t{t.head}" for t in tree.tokens]
        blocks.append("\n".join(lines))
    return "\n\n".join(blocks) + "\n"


_TOKEN_RE = re.compile(r"\S+")


def parse_tagged_sentence(line: str, segment_id: int, lineno: int = 1) -> Hypothesis:
    """Parse one ``form_POS form_POS ...`` line into a :class:`Hypothesis`."""
    tokens = []
    for match in _TOKEN_RE.finditer(line):
        piece = match.group()
        col = match.start() + 1
        form, sep, pos = piece.rpartition("_")
        if not sep or not form or not pos:
            raise ParseError(
                f"line {lineno}, column {col}: token {piece!r} is not of the form form_POS"
            )
        tokens.append(Token(index=len(tokens) + 1, form=form, pos=pos))
    return Hypothesis(tokens=tuple(tokens), segment_id=segment_id)


def load_hypotheses(path) -> list[Hypothesis]:
    """Read a hypothesis file, one tagged sentence per line.

    Blank lines yield empty hypotheses (scored as zero later) so that
    segment ids stay aligned with the reference file.
    """
    hyps: list[Hypothesis] = []
    with open(path, encoding="utf-8") as handle:
        for lineno, raw in enumerate(handle, start=1):
            line = raw.rstrip("\n").rstrip("\r")
            hyps.append(parse_tagged_sentence(line, segment_id=lineno, lineno=lineno))
    return hyps


@dataclass(frozen=True)
class LexicalResources:
    """Word lists backing the staged unigram matcher.

    Matching is case-insensitive; every stored entry is lowercase.  The
    synonym relation is applied symmetrically at lookup and the
    paraphrase table is consulted in both directions.  Stemming is
    always available via the built-in Porter stemmer.
    """

    function_words: frozenset[str] = frozenset()
    synonyms: Mapping[str, frozenset[str]] = field(default_factory=dict)
    paraphrases: Mapping[str, frozenset[str]] = field(default_factory=dict)
    stemmer: Callable[[str], str] = stem

    def is_function_word(self, form: str) -> bool:
        return form.lower() in self.function_words

    def synonym_match(self, a: str, b: str) -> bool:
        a, b = a.lower(), b.lower()
        return b in self.synonyms.get(a, frozenset()) or a in self.synonyms.get(
            b, frozenset()
        )

    def paraphrase_match(self, a: str, b: str) -> bool:
        a, b = a.lower(), b.lower()
        return b in self.paraphrases.get(a, frozenset()) or a in self.paraphrases.get(
            b, frozenset()
        )


def load_resources(
    function_words_path=None, synonyms_path=None, paraphrase_path=None
) -> LexicalResources:
    """Build :class:`LexicalResources` from optional resource files.

    Any path left as ``None`` degrades to an empty resource; exact and
    stem matching work regardless.  Formats:

    * function words: one word per line,
    * synonyms: whitespace-separated word groups, one group per line,
    * paraphrases: ``source<TAB>target<TAB>prob`` (the probability is
      parsed for validation but not used; multi-word entries are skipped
      because matching is unigram-only).
    """
    function_words: set[str] = set()
    if function_words_path is not None:
        with open(function_words_path, encoding="utf-8") as handle:
            for lineno, raw in enumerate(handle, start=1):
                word = raw.strip()
                if not word:
                    continue
                if len(word.split()) != 1:
                    raise ParseError(
                        f"{function_words_path}:{lineno}: expected one word per line"
                    )
                function_words.add(word.lower())

    synonyms: dict[str, set[str]] = {}
    if synonyms_path is not None:
        with open(synonyms_path, encoding="utf-8") as handle:
            for raw in handle:
                group = [w.lower() for w in raw.split()]
                for word in group:
                    others = synonyms.setdefault(word, set())
                    others.update(w for w in group if w != word)

    paraphrases: dict[str, set[str]] = {}
    if paraphrase_path is not None:
        with open(paraphrase_path, encoding="utf-8") as handle:
            for lineno, raw in enumerate(handle, start=1):
                line = raw.rstrip("\n").rstrip("\r")
                if not line.strip():
                    continue
                cols = line.split("\t")
                if len(cols) != 3:
                    raise ParseError(
                        f"{paraphrase_path}:{lineno}: expected source<TAB>target<TAB>prob"
                    )
                source, target, prob = cols
                try:
                    float(prob)
                except ValueError as exc:
                    raise ParseError(
                        f"{paraphrase_path}:{lineno}: bad probability {prob!r}"
                    ) from exc
                source, target = source.strip().lower(), target.strip().lower()
                if len(source.split()) != 1 or len(target.split()) != 1:
                    continue  # unigram matching only
                paraphrases.setdefault(source, set()).add(target)

    return LexicalResources(
        function_words=frozenset(function_words),
        synonyms={w: frozenset(s) for w, s in synonyms.items()},
        paraphrases={w: frozenset(s) for w, s in paraphrases.items()},
    )


@dataclass(frozen=True)
class Preference:
    """One pairwise human judgment: on ``segment_id``, the output of
    ``sys_a`` was preferred over ``sys_b`` iff ``winner`` is ``"A"``."""

    segment_id: int
    sys_a: str
    sys_b: str
    winner: str

    def __post_init__(self):
        if self.winner not in ("A", "B"):
            raise ParseError(f"winner must be 'A' or 'B', got {self.winner!r}")
        if self.sys_a == self.sys_b:
            raise ParseError(f"preference pairs a system with itself: {self.sys_a!r}")

    @property
    def preferred(self) -> str:
        return self.sys_a if self.winner == "A" else self.sys_b

    @property
    def other(self) -> str:
        return self.sys_b if self.winner == "A" else self.sys_a


def load_system_judgments(path) -> dict[str, int]:
    """Read ``system_name<TAB>rank`` lines; ranks must be a permutation of 1..n."""
    ranks: dict[str, int] = {}
    with open(path, encoding="utf-8") as handle:
        for lineno, raw in enumerate(handle, start=1):
            line = raw.rstrip("\n").rstrip("\r")
            if not line.strip():
                continue
            cols = line.split("\t")
            if len(cols) != 2:
                raise ParseError(f"{path}:{lineno}: expected system_name<TAB>rank")
            name, rank_text = cols
            try:
                rank = int(rank_text)
            except ValueError as exc:
                raise ParseError(f"{path}:{lineno}: non-integer rank {rank_text!r}") from exc
            if name in ranks:
                raise ParseError(f"{path}:{lineno}: duplicate system {name!r}")
            ranks[name] = rank
    if sorted(ranks.values()) != list(range(1, len(ranks) + 1)):
        raise ParseError(f"{path}: ranks are not a permutation of 1..{len(ranks)}")
    return ranks


def load_sentence_judgments(path) -> list[Preference]:
    """Read ``segment_id<TAB>sysA<TAB>sysB<TAB>winner`` preference lines."""
    prefs: list[Preference] = []
    with open(path, encoding="utf-8") as handle:
        for lineno, raw in enumerate(handle, start=1):
            line = raw.rstrip("\n").rstrip("\r")
            if not line.strip():
                continue
            cols = line.split("\t")
            if len(cols) != 4:
                raise ParseError(
                    f"{path}:{lineno}: expected segment_id<TAB>sysA<TAB>sysB<TAB>winner"
                )
            seg_text, sys_a, sys_b, winner = cols
            try:
                segment_id = int(seg_text)
            except ValueError as exc:
                raise ParseError(
                    f"{path}:{lineno}: non-integer segment id {seg_text!r}"
                ) from exc
            try:
                prefs.append(
                    Preference(segment_id=segment_id, sys_a=sys_a, sys_b=sys_b, winner=winner)
                )
            except ParseError as exc:
                raise ParseError(f"{path}:{lineno}: {exc}") from exc
    return prefs
