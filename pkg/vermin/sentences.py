"""
Sentence model: split vernacular source into sentences, group sentences into
blocks, and render documents back to text.

A sentence ends at a period followed by whitespace or end of input, where the
period is outside string literals and (nested) comments. Comments attach to
the sentence that follows them.
"""
from dataclasses import dataclass
from enum import Enum
from functools import cached_property
from typing import NamedTuple, Optional, Tuple
import re

from configs import checker_config
from errors import UnbalancedScope, UnterminatedComment, UnterminatedString


class SentenceKind(Enum):
    COMMAND = "Command"
    PROOF_OPENER = "ProofOpener"
    PROOF_STEP = "ProofStep"
    PROOF_CLOSER = "ProofCloser"
    SCOPE_OPENER = "ScopeOpener"
    SCOPE_CLOSER = "ScopeCloser"
    REQUIRE_LIKE = "RequireLike"
    IMPORT_LIKE = "ImportLike"
    BLANK = "Blank"


class BlockKind(Enum):
    DEFINITION = "Definition"  # Obligation ... closer, attached to a Program definition
    PROOF_BLOCK = "ProofBlock"
    SCOPE = "Scope"
    LOOSE = "Loose"


PROOF_CLOSERS = {"Qed", "Defined", "Admitted", "Abort", "Save"}
MODIFIERS = {"Local", "Global", "Polymorphic", "Monomorphic", "Program", "Export"}
COMMAND_HEADS = {
    "Lemma", "Theorem", "Fact", "Corollary", "Goal", "Instance", "Remark",
    "Proposition", "Example", "Definition", "Fixpoint", "CoFixpoint", "Let",
    "Ltac", "Axiom", "Axioms", "Parameter", "Parameters", "Hypothesis",
    "Hypotheses", "Variable", "Variables", "Context", "Check", "Print",
    "Require", "Import", "Export", "Module", "Section", "End", "Set", "Unset",
    "Inductive", "CoInductive", "Record", "Structure", "Class", "Notation",
    "Infix", "Arguments", "Hint", "Opaque", "Transparent", "Program",
    "Obligation", "Next", "Admit", "Open", "Close", "Local", "Global", "From",
    "Qed", "Defined", "Admitted", "Abort", "Save", "Proof", "Search",
    "Compute", "Eval", "Declare", "Include", "Existing", "Scheme", "Canonical",
    "Coercion", "Tactic", "Create", "Polymorphic", "Monomorphic", "Universe",
    "Universes", "Constraint", "Generalizable", "Implicit", "Solve",
}
NAMED_HEADS = {
    "Definition", "Fixpoint", "CoFixpoint", "Let", "Example", "Instance",
    "Lemma", "Theorem", "Fact", "Corollary", "Remark", "Proposition", "Ltac",
    "Axiom", "Parameter", "Hypothesis", "Variable", "Inductive",
    "CoInductive", "Record", "Structure", "Class",
}
MULTI_NAMED_HEADS = {"Axioms", "Parameters", "Hypotheses", "Variables"}

_IDENT = r"[A-Za-z_][A-Za-z0-9_']*"
_QUALID_RE = re.compile(rf"{_IDENT}(?:\.{_IDENT})*")
_NUMBER_RE = re.compile(r"[0-9]+")
_BULLET_RE = re.compile(r"^[\s\-+*{}]*")


class Token(NamedTuple):
    kind: str  # "ident", "number", "string", "symbol"
    value: str
    start: int


@dataclass(frozen=True)
class Sentence:
    """One vernacular sentence, terminator included.

    `leading` is the whitespace that preceded the sentence in its source, kept
    so an untransformed document renders byte-identically.
    """

    text: str
    kind: SentenceKind
    span: Tuple[int, int]
    leading: str = ""

    @cached_property
    def words(self):
        return head_words(self.text)

    @property
    def head(self):
        return self.words[0] if self.words else ""

    @cached_property
    def code(self):
        return strip_comments(self.text)

    @cached_property
    def names(self):
        return introduced_names(self)


@dataclass(frozen=True)
class Block:
    start: int  # first sentence index
    end: int  # one past the last sentence index
    kind: BlockKind
    name: Optional[str] = None
    names: Tuple[str, ...] = ()
    children: Tuple["Block", ...] = ()
    unbalanced: bool = False

    @property
    def sentences(self):
        return range(self.start, self.end)

    def __len__(self):
        return self.end - self.start

    def contains(self, index):
        return self.start <= index < self.end


@dataclass(frozen=True)
class Document:
    sentences: Tuple[Sentence, ...]
    source_name: str = ""
    trailing: str = ""
    pristine: bool = True

    @classmethod
    def parse(cls, text, source_name=""):
        sentences, trailing = _split(text)
        return cls(tuple(sentences), source_name=source_name, trailing=trailing)

    @classmethod
    def from_texts(cls, texts, source_name=""):
        """Build a transformed document from sentence texts, reclassifying every sentence.

        Spans are offsets into `render()` of the result.
        """
        kinds = classify([t for t in texts])
        sentences, offset = [], 0
        for text, kind in zip(texts, kinds):
            sentences.append(Sentence(text, kind, (offset, offset + len(text))))
            offset += len(text) + 1
        return cls(tuple(sentences), source_name=source_name, trailing="", pristine=False)

    @property
    def texts(self):
        return [s.text for s in self.sentences]

    def __len__(self):
        return len(self.sentences)

    def __getitem__(self, i):
        return self.sentences[i]

    @cached_property
    def blocks(self):
        return tuple(group_blocks(self.sentences))

    @cached_property
    def unbalanced(self):
        return any(b.unbalanced for b in self.all_blocks())

    def all_blocks(self):
        """Every block at every nesting depth, in document (pre-)order."""
        out = []

        def walk(blocks):
            for b in blocks:
                out.append(b)
                walk(b.children)

        walk(self.blocks)
        return out

    def replace(self, start, end, new_texts):
        """A transformed copy with sentences [start, end) replaced by `new_texts`."""
        texts = self.texts
        return Document.from_texts(texts[:start] + list(new_texts) + texts[end:], self.source_name)

    def delete(self, start, end):
        return self.replace(start, end, [])

    def locate(self, line, column):
        """Index of the sentence covering (1-based line, 0-based column) of the rendered text, or None."""
        rendered = render(self)
        lines = rendered.split("\n")
        if line < 1 or line > len(lines):
            return None
        offset = sum(len(l) + 1 for l in lines[: line - 1]) + column
        for i, s in enumerate(self.sentences):
            if s.span[0] <= offset < s.span[1]:
                return i
        # A location in the comment/whitespace before a sentence belongs to that sentence
        for i, s in enumerate(self.sentences):
            if offset < s.span[0]:
                return i
        return None


# ---------------------------------------------------------------------------
# Lexing


def _skip_comment(text, i):
    """Index just past the (nested) comment opening at i."""
    depth, j, n = 1, i + 2, len(text)
    while j < n:
        if text.startswith("(*", j):
            depth += 1
            j += 2
        elif text.startswith("*)", j):
            depth -= 1
            j += 2
            if depth == 0:
                return j
        else:
            j += 1
    raise UnterminatedComment(i)


def _skip_string(text, i):
    """Index just past the string literal opening at i. `""` inside a string is an escaped quote."""
    j, n = i + 1, len(text)
    while j < n:
        if text[j] == '"':
            if j + 1 < n and text[j + 1] == '"':
                j += 2
                continue
            return j + 1
        j += 1
    raise UnterminatedString(i)


def strip_comments(text):
    """The text with every comment replaced by a single space (strings kept verbatim)."""
    out, i, n = [], 0, len(text)
    while i < n:
        if text.startswith("(*", i):
            i = _skip_comment(text, i)
            out.append(" ")
        elif text[i] == '"':
            j = _skip_string(text, i)
            out.append(text[i:j])
            i = j
        else:
            out.append(text[i])
            i += 1
    return "".join(out)


def lex(text):
    """Tokens of a sentence, comments skipped. Qualified names are single `ident` tokens.

    A trailing sentence period is a `symbol` token.
    """
    tokens, i, n = [], 0, len(text)
    while i < n:
        c = text[i]
        if text.startswith("(*", i):
            i = _skip_comment(text, i)
        elif c == '"':
            j = _skip_string(text, i)
            tokens.append(Token("string", text[i:j], i))
            i = j
        elif c.isspace():
            i += 1
        else:
            m = _QUALID_RE.match(text, i)
            if m:
                tokens.append(Token("ident", m.group(0), i))
                i = m.end()
                continue
            m = _NUMBER_RE.match(text, i)
            if m:
                tokens.append(Token("number", m.group(0), i))
                i = m.end()
                continue
            tokens.append(Token("symbol", c, i))
            i += 1
    return tokens


def identifiers(text):
    """Identifier components appearing in code, `M.x` counting as both `M` and `x`."""
    out = []
    for tok in lex(text):
        if tok.kind == "ident":
            out.extend(tok.value.split("."))
    return out


def head_words(text):
    """The leading words of a sentence with comments, bullets and braces removed."""
    code = _BULLET_RE.sub("", strip_comments(text)).rstrip()
    if code.endswith("."):
        code = code[:-1]
    return code.split()


def split_leading_comments(text):
    """Split a sentence into its leading comments/whitespace and the code after them."""
    i, n = 0, len(text)
    while i < n:
        if text[i].isspace():
            i += 1
        elif text.startswith("(*", i):
            i = _skip_comment(text, i)
        else:
            break
    return text[:i], text[i:]


def find_top_level(code, token, start=0):
    """Offset of the first `token` outside parentheses, braces, brackets and strings, or -1.

    `:` never matches the first character of `:=`.
    """
    depth, i, n = 0, start, len(code)
    while i < n:
        c = code[i]
        if c == '"':
            i = _skip_string(code, i)
            continue
        if c in "([{":
            depth += 1
        elif c in ")]}":
            depth -= 1
        elif depth == 0 and code.startswith(token, i):
            if not (token == ":" and code.startswith(":=", i)):
                return i
        i += 1
    return -1


def matching_paren(text, i):
    """Offset just past the parenthesis group opening at text[i]."""
    depth, n = 0, len(text)
    while i < n:
        if text.startswith("(*", i):
            i = _skip_comment(text, i)
            continue
        if text[i] == '"':
            i = _skip_string(text, i)
            continue
        if text[i] == "(":
            depth += 1
        elif text[i] == ")":
            depth -= 1
            if depth == 0:
                return i + 1
        i += 1
    return n


def _has_top_level_assign(code):
    return find_top_level(code, ":=") >= 0


# ---------------------------------------------------------------------------
# Splitting


def _split(text):
    sentences = []
    i, n = 0, len(text)
    start = None
    ws_start = 0
    while i < n:
        c = text[i]
        if text.startswith("(*", i):
            if start is None:
                start = i
            i = _skip_comment(text, i)
            continue
        if c == '"':
            if start is None:
                start = i
            i = _skip_string(text, i)
            continue
        if c.isspace():
            i += 1
            continue
        if start is None:
            start = i
        if c == "." and (i + 1 == n or text[i + 1].isspace()):
            sentences.append((text[start : i + 1], (start, i + 1), text[ws_start:start]))
            ws_start = i + 1
            start = None
        i += 1
    trailing = text[ws_start:]
    if start is not None:
        end = len(text.rstrip())
        sentences.append((text[start:end], (start, end), text[ws_start:start]))
        trailing = text[end:]
    kinds = classify([s[0] for s in sentences])
    return (
        [Sentence(t, k, span, leading) for (t, span, leading), k in zip(sentences, kinds)],
        trailing,
    )


def split_sentences(text):
    """Split source text into sentences.

    Arguments:
        text {str} -- vernacular source

    Returns:
        list of Sentence -- covering the text; whitespace between sentences is kept in `leading`

    Raises:
        UnterminatedComment, UnterminatedString -- with the offset of the opening delimiter
    """
    return _split(text)[0]


def _strip_modifiers(words):
    i = 0
    while i < len(words) and (words[i] in MODIFIERS or words[i].startswith("#[")):
        # `Export` only modifies when something follows it (Module Export is handled by Module)
        if words[i] == "Export" and i == 0:
            break
        i += 1
    return words[i:]


def is_statement(words, code):
    """Whether a sentence with these head words opens a proof."""
    words = _strip_modifiers(words)
    if not words:
        return False
    head = words[0]
    if head == "Obligation" or (head == "Next" and words[1:2] == ["Obligation"]):
        return True
    if head == "Goal":
        return True
    if head in checker_config.STATEMENT_KEYWORDS or head in checker_config.DEFINITION_KEYWORDS:
        return not _has_top_level_assign(code)
    return False


def is_scope_opener(words, code):
    if not words:
        return False
    if words[0] == "Section":
        return True
    if words[0] != "Module":
        return False
    return not _has_top_level_assign(code)


def classify(texts):
    """Kinds for consecutive sentence texts, tracking whether a proof is open."""
    kinds, in_proof = [], False
    for text in texts:
        code = strip_comments(text)
        words = head_words(text)
        bare = _strip_modifiers(words)
        head = bare[0] if bare else ""
        if not code.strip():
            kind = SentenceKind.BLANK
        elif head in PROOF_CLOSERS:
            kind = SentenceKind.PROOF_CLOSER
            in_proof = False
        elif head == "Proof":
            kind = SentenceKind.PROOF_OPENER
            in_proof = True
        elif head == "End":
            kind = SentenceKind.SCOPE_CLOSER
        elif is_scope_opener(bare, code):
            kind = SentenceKind.SCOPE_OPENER
        elif head == "Require" or (head == "From" and "Require" in bare):
            kind = SentenceKind.REQUIRE_LIKE
        elif head in ("Import", "Export"):
            kind = SentenceKind.IMPORT_LIKE
        elif in_proof and head not in COMMAND_HEADS:
            kind = SentenceKind.PROOF_STEP
        else:
            kind = SentenceKind.COMMAND
            if is_statement(words, code):
                in_proof = True
        kinds.append(kind)
    return kinds


# ---------------------------------------------------------------------------
# Names


def _binder_names(code):
    """Names bound by `(x y : T)`, `{A : Type}` or `` `{C A} `` groups."""
    names = []
    for group in re.findall(r"[({\[]\s*`?\s*([^(){}\[\]]*?)\s*:", code):
        names.extend(n for n in group.split() if re.fullmatch(_IDENT, n))
    return names


def introduced_names(sentence):
    """Global names a sentence defines (module and section names included)."""
    if sentence.kind in (SentenceKind.BLANK, SentenceKind.PROOF_STEP, SentenceKind.PROOF_CLOSER):
        return ()
    words = _strip_modifiers(sentence.words)
    if not words:
        return ()
    head = words[0]
    code = sentence.code
    if head == "Module":
        rest = [w for w in words[1:] if w not in ("Type", "Export", "Import")]
        return (rest[0].split("(")[0],) if rest else ()
    if head == "Section" and len(words) > 1:
        return (words[1],)
    if head == "Context":
        return tuple(_binder_names(code))
    if head in MULTI_NAMED_HEADS:
        before = code.split(":", 1)[0].split()[1:]
        return tuple(n for n in before if re.fullmatch(_IDENT, n))
    if head in NAMED_HEADS and len(words) > 1:
        m = re.match(_IDENT, words[1])
        if not m:
            return ()
        names = [m.group(0)]
        if head in ("Inductive", "CoInductive"):
            names.extend(re.findall(rf"(?:\||:=)\s*({_IDENT})", code))
        return tuple(names)
    return ()


# ---------------------------------------------------------------------------
# Blocks


def _obligation(words):
    bare = _strip_modifiers(words)
    return bool(bare) and (bare[0] == "Obligation" or bare[:2] == ["Next", "Obligation"])


def _block_name(sentence):
    names = sentence.names
    return (names[0] if names else None), tuple(names)


def group_blocks(sentences, strict=False):
    """Partition sentences into blocks; Scope blocks nest their contents as children.

    Arguments:
        sentences {list of Sentence} -- from split_sentences

    Keyword Arguments:
        strict {bool} -- raise UnbalancedScope instead of flagging the block (default: {False})

    Returns:
        list of Block -- top-level partition of the sentences
    """
    sentences = list(sentences)
    n = len(sentences)

    def statement_block(i):
        s = sentences[i]
        j = i + 1
        while j < n:
            k = sentences[j]
            if k.kind == SentenceKind.PROOF_CLOSER:
                j += 1
                break
            if k.kind in (SentenceKind.SCOPE_OPENER, SentenceKind.SCOPE_CLOSER):
                break
            if k.kind == SentenceKind.COMMAND and is_statement(k.words, k.code):
                break
            j += 1
        if _obligation(s.words):
            return Block(i, j, BlockKind.DEFINITION)
        name, names = _block_name(s)
        return Block(i, j, BlockKind.PROOF_BLOCK, name, names)

    def walk(i, nested):
        blocks = []
        while i < n:
            s = sentences[i]
            if s.kind == SentenceKind.SCOPE_CLOSER:
                if nested:
                    return blocks, i
                if strict:
                    raise UnbalancedScope(s.span[0])
                blocks.append(Block(i, i + 1, BlockKind.LOOSE, unbalanced=True))
                i += 1
            elif s.kind == SentenceKind.SCOPE_OPENER:
                children, j = walk(i + 1, True)
                name, names = _block_name(s)
                if j < n:
                    blocks.append(Block(i, j + 1, BlockKind.SCOPE, name, names, tuple(children)))
                    i = j + 1
                else:
                    if strict:
                        raise UnbalancedScope(s.span[0])
                    blocks.append(Block(i, n, BlockKind.SCOPE, name, names, tuple(children), True))
                    i = n
            elif s.kind == SentenceKind.PROOF_OPENER or (
                s.kind == SentenceKind.COMMAND and is_statement(s.words, s.code)
            ):
                block = statement_block(i)
                blocks.append(block)
                i = block.end
            else:
                name, names = _block_name(s)
                blocks.append(Block(i, i + 1, BlockKind.LOOSE, name, names))
                i += 1
        return blocks, i

    return walk(0, False)[0]


# ---------------------------------------------------------------------------
# Rendering


def render(doc):
    """Text of a document.

    Untransformed documents render byte-identically to their source; transformed
    ones put each sentence on its own line.
    """
    if doc.pristine:
        return "".join(s.leading + s.text for s in doc.sentences) + doc.trailing
    if not doc.sentences:
        return ""
    return "\n".join(s.text for s in doc.sentences) + "\n"
