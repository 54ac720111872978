"""
The transformation pass library.

Every pass is a generator over candidate documents. Candidate sites are
enumerated from the end of the document toward the start; a site is the pair
(sentence index, offset inside the sentence), and `before` restricts a pass to
sites strictly before a given one, which is how the scheduler continues a
sweep after an acceptance. Alternatives at one site are yielded consecutively,
preferred first.
"""
from dataclasses import dataclass
from enum import Enum
from typing import Optional, Tuple
import logging
import re

from errors import ErrorLineNotFound
from sentences import (
    BlockKind,
    Document,
    SentenceKind,
    find_top_level,
    identifiers,
    is_statement,
    lex,
    matching_paren,
    render,
    split_leading_comments,
    strip_comments,
)

logger = logging.getLogger(__name__)

_IDENT = r"[A-Za-z_][A-Za-z0-9_']*"
_STATEMENT_RE = re.compile(
    rf"^(?:(?:Local|Global|Polymorphic|Monomorphic|#\[[^\]]*\])\s+)*"
    rf"(Lemma|Theorem|Fact|Corollary|Remark|Proposition|Example|Instance|Definition)\s+"
    rf"({_IDENT})(.*)$",
    re.DOTALL,
)
_DEFINITION_RE = re.compile(
    rf"^(?:(?:Local|Global|#\[[^\]]*\])\s+)*Definition\s+({_IDENT})(.*)$", re.DOTALL
)


class Phase(Enum):
    SPEED_CRITICAL = "SpeedCritical"
    STRUCTURAL = "Structural"
    COSMETIC = "Cosmetic"


@dataclass(frozen=True)
class Candidate:
    site: Tuple[int, int]
    alternative: int
    document: object  # Document
    description: str


@dataclass(frozen=True)
class PassContext:
    error_index: Optional[int] = None  # sentence the current error is reported on
    error_line: Optional[int] = None
    preserve_error_script: bool = False


@dataclass(frozen=True)
class Pass:
    name: str
    generator: object
    phase: Phase
    compound: bool = False  # kept only together with a follow-up admit

    def candidates(self, doc, ctx, before=None):
        return self.generator(doc, ctx, before)


def _before(site, before):
    return before is None or tuple(site) < tuple(before)


def _protected(block, ctx):
    return ctx.error_index is not None and block.contains(ctx.error_index)


def _code(sentence):
    return strip_comments(sentence.text).strip()


def _open_scopes(doc, end):
    """Names of the scopes still open just before sentence `end`, outermost first."""
    stack = []
    for s in doc.sentences[:end]:
        if s.kind == SentenceKind.SCOPE_OPENER:
            stack.append(s.names[0] if s.names else "")
        elif s.kind == SentenceKind.SCOPE_CLOSER and stack:
            stack.pop()
    return stack


def _proof_open(doc, end):
    open_ = False
    for s in doc.sentences[:end]:
        if s.kind == SentenceKind.PROOF_CLOSER:
            open_ = False
        elif s.kind == SentenceKind.PROOF_OPENER:
            open_ = True
        elif s.kind == SentenceKind.COMMAND and is_statement(s.words, s.code):
            open_ = True
    return open_


def error_proof_block(doc, ctx):
    """The innermost proof block containing the error sentence, or None."""
    if ctx.error_index is None:
        return None
    found = None
    for b in doc.all_blocks():
        if b.kind in (BlockKind.PROOF_BLOCK, BlockKind.DEFINITION) and b.contains(ctx.error_index):
            found = b
    return found


# ---------------------------------------------------------------------------
# SpeedCritical


def truncate_after_error(doc, ctx, before=None):
    """Drop everything after the error sentence, closing scopes left open.

    In preserve-error-script mode the whole error-bearing proof block is kept.
    """
    if ctx.error_index is None:
        raise ErrorLineNotFound(ctx.error_line)
    cut = ctx.error_index + 1
    if ctx.preserve_error_script:
        block = error_proof_block(doc, ctx)
        if block is not None:
            cut = block.end
    if cut >= len(doc) or not _before((cut, 0), before):
        return
    closers = [f"End {name}." for name in reversed(_open_scopes(doc, cut))]
    if closers and _proof_open(doc, cut):
        closers.insert(0, "Admitted.")
    yield Candidate((cut, 0), 0, doc.replace(cut, len(doc), closers), "truncate after error")


def remove_unused_definitions(doc, ctx, before=None):
    """Remove named blocks whose names never appear as tokens after them."""
    n = len(doc)
    later = [set() for _ in range(n + 1)]
    for i in range(n - 1, -1, -1):
        later[i] = later[i + 1] | set(identifiers(doc[i].text))
    blocks = [
        b
        for b in doc.all_blocks()
        if b.kind != BlockKind.SCOPE and b.names and not b.unbalanced and not _protected(b, ctx)
    ]
    for b in sorted(blocks, key=lambda b: b.start, reverse=True):
        if not _before((b.start, 0), before):
            continue
        if any(name in later[b.end] for name in b.names):
            continue
        yield Candidate((b.start, 0), 0, doc.delete(b.start, b.end), f"remove unused {b.name}")


def admit_obligations(doc, ctx, before=None):
    blocks = [b for b in doc.all_blocks() if b.kind == BlockKind.DEFINITION and not _protected(b, ctx)]
    for b in sorted(blocks, key=lambda b: b.start, reverse=True):
        if not _before((b.start, 0), before):
            continue
        yield Candidate(
            (b.start, 0), 0, doc.replace(b.start, b.end, ["Admit Obligations."]), "admit obligations"
        )


def parse_statement(text):
    """Split a statement sentence into (keyword, name, binders, type), or None without a type."""
    code = strip_comments(text).strip()
    if code.endswith("."):
        code = code[:-1]
    m = _STATEMENT_RE.match(code)
    if not m:
        return None
    keyword, name, rest = m.groups()
    colon = find_top_level(rest, ":")
    if colon < 0 or find_top_level(rest, ":=") >= 0:
        return None
    binders = rest[:colon].strip()
    statement_type = rest[colon + 1 :].strip()
    if not statement_type:
        return None
    return keyword, name, binders, statement_type


def fresh_name(base, doc):
    taken = set(identifiers(render(doc)))
    name, k = base, 0
    while name in taken:
        k += 1
        name = f"{base}{k}"
    return name


def transparent_admit(doc, block):
    """`Axiom n_admitted : forall binders, T.` + `Definition n : forall binders, T := n_admitted.`"""
    parsed = parse_statement(doc[block.start].text)
    if parsed is None:
        return None
    _, name, binders, statement_type = parsed
    full_type = f"forall {binders}, {statement_type}" if binders else statement_type
    axiom = fresh_name(f"{name}_admitted", doc)
    return [f"Axiom {axiom} : {full_type}.", f"Definition {name} : {full_type} := {axiom}."]


def _already_admitted(doc, block):
    heads = [doc[i].head for i in block.sentences][1:]
    return heads in (["Admitted"], ["Proof", "Admitted"])


def admit_block_alternatives(doc, block):
    """Admitted variants of one proof block, opaque first."""
    out = []
    if doc[block.start].kind != SentenceKind.COMMAND or _already_admitted(doc, block):
        return out
    out.append((doc.replace(block.start, block.end, [doc[block.start].text, "Admitted."]), "opaque"))
    if doc[block.start].head != "Goal":
        texts = transparent_admit(doc, block)
        if texts is not None:
            out.append((doc.replace(block.start, block.end, texts), "transparent"))
    return out


def admit_proofs(doc, ctx, before=None):
    blocks = [
        b
        for b in doc.all_blocks()
        if b.kind == BlockKind.PROOF_BLOCK and not _protected(b, ctx) and not b.unbalanced
    ]
    for b in sorted(blocks, key=lambda b: b.start, reverse=True):
        if not _before((b.start, 0), before):
            continue
        for alt, (candidate, style) in enumerate(admit_block_alternatives(doc, b)):
            yield Candidate((b.start, 0), alt, candidate, f"admit {b.name} ({style})")


def _abstract_sites(text):
    """(start, end) spans of `abstract <tac>` occurrences in a sentence, last first."""
    sites = []
    tokens = lex(text)
    for k, tok in enumerate(tokens):
        if tok.kind != "ident" or tok.value != "abstract" or k + 1 >= len(tokens):
            continue
        arg = tokens[k + 1]
        if arg.kind == "symbol" and arg.value == "(":
            end = matching_paren(text, arg.start)
        elif arg.kind == "ident":
            end = arg.start + len(arg.value)
        else:
            continue
        sites.append((tok.start, end))
    return list(reversed(sites))


def admit_abstract_subproofs(doc, ctx, before=None):
    """Replace one `abstract (tac)` with `admit` and close the proof with Admitted."""
    skip = error_proof_block(doc, ctx) if ctx.preserve_error_script else None
    blocks = [b for b in doc.all_blocks() if b.kind in (BlockKind.PROOF_BLOCK, BlockKind.DEFINITION)]
    for b in sorted(blocks, key=lambda b: b.start, reverse=True):
        if skip is not None and b == skip:
            continue
        for i in reversed(b.sentences):
            if i == ctx.error_index:
                continue
            text = doc[i].text
            for start, end in _abstract_sites(text):
                if not _before((i, start), before):
                    continue
                texts = doc.texts
                texts[i] = text[:start] + "admit" + text[end:]
                closer = b.end - 1
                if doc[closer].kind == SentenceKind.PROOF_CLOSER and doc[closer].head in ("Qed", "Defined"):
                    texts[closer] = "Admitted."
                yield Candidate(
                    (i, start), 0, Document.from_texts(texts, doc.source_name), "admit abstract subproof"
                )


# ---------------------------------------------------------------------------
# Structural


def remove_blocks_backward(doc, ctx, before=None):
    """Remove one block at a time, nearest the error first, nested blocks included."""
    blocks = [b for b in doc.all_blocks() if not b.unbalanced and not _protected(b, ctx)]
    for b in sorted(blocks, key=lambda b: b.start, reverse=True):
        if not _before((b.start, 0), before):
            continue
        yield Candidate((b.start, 0), 0, doc.delete(b.start, b.end), f"remove {b.kind.value} {b.name or ''}".rstrip())


def remove_empty_scopes(doc, ctx, before=None):
    blocks = [b for b in doc.all_blocks() if b.kind == BlockKind.SCOPE and not b.unbalanced]
    for b in sorted(blocks, key=lambda b: b.start, reverse=True):
        if not _before((b.start, 0), before):
            continue
        inner = range(b.start + 1, b.end - 1)
        if all(doc[i].kind == SentenceKind.BLANK for i in inner):
            yield Candidate((b.start, 0), 0, doc.delete(b.start, b.end), f"remove empty scope {b.name}")


def export_modules(doc, ctx, before=None):
    """`Module X.` becomes `Module Export X.`; module types and functors are skipped."""
    for i in range(len(doc) - 1, -1, -1):
        s = doc[i]
        if s.kind != SentenceKind.SCOPE_OPENER or s.head != "Module" or not _before((i, 0), before):
            continue
        words = s.words
        if len(words) < 2 or words[1] in ("Type", "Export", "Import"):
            continue
        if "(" in _code(s) or find_top_level(_code(s), ":") >= 0:
            continue
        prefix, code = split_leading_comments(s.text)
        new = prefix + re.sub(r"^Module\s+", "Module Export ", code, count=1)
        yield Candidate((i, 0), 0, doc.replace(i, i + 1, [new]), f"export module {words[1]}")


def _split_names(doc, i, head_len):
    """One sentence per name for a sentence `<head words> n1 n2 ... .`"""
    s = doc[i]
    prefix, _ = split_leading_comments(s.text)
    words = s.words
    head, names = words[:head_len], words[head_len:]
    if len(names) < 2:
        return None
    texts = [f"{' '.join(head)} {n}." for n in names]
    texts[0] = prefix + texts[0]
    return texts


def split_imports(doc, ctx, before=None):
    for i in range(len(doc) - 1, -1, -1):
        if doc[i].kind != SentenceKind.IMPORT_LIKE or not _before((i, 0), before):
            continue
        texts = _split_names(doc, i, 1)
        if texts:
            yield Candidate((i, 0), 0, doc.replace(i, i + 1, texts), "split import")


def require_head_length(words):
    """Number of leading words before the module names of a Require sentence."""
    k = 0
    if words[:1] == ["From"]:
        k = 2
    k += 1  # Require
    if len(words) > k and words[k] in ("Import", "Export"):
        k += 1
    return k


def split_requires(doc, ctx, before=None):
    for i in range(len(doc) - 1, -1, -1):
        if doc[i].kind != SentenceKind.REQUIRE_LIKE or not _before((i, 0), before):
            continue
        texts = _split_names(doc, i, require_head_length(doc[i].words))
        if texts:
            yield Candidate((i, 0), 0, doc.replace(i, i + 1, texts), "split require")


# ---------------------------------------------------------------------------
# Cosmetic


def split_definition_texts(text):
    """`Definition n := b.` as proof-mode sentences, or None when not applicable."""
    code = strip_comments(text).strip()
    if code.endswith("."):
        code = code[:-1]
    m = _DEFINITION_RE.match(code)
    if not m:
        return None
    name, rest = m.groups()
    assign = find_top_level(rest, ":=")
    if assign < 0:
        return None
    body = rest[assign + 2 :].strip()
    if not body:
        return None
    prefix, _ = split_leading_comments(text)
    header = f"Definition {name}{rest[:assign].rstrip()}."
    return [prefix + header, "Proof.", f"exact ({body}).", "Defined."]


def split_definitions(doc, ctx, before=None):
    """Move definition bodies into proof mode so they can be admitted.

    Fixpoints and Program definitions are left alone.
    """
    for i in range(len(doc) - 1, -1, -1):
        s = doc[i]
        if s.kind != SentenceKind.COMMAND or not _before((i, 0), before) or i == ctx.error_index:
            continue
        if "Program" in s.words[:2]:
            continue
        texts = split_definition_texts(s.text)
        if texts:
            yield Candidate((i, 0), 0, doc.replace(i, i + 1, texts), f"split definition {s.names[0] if s.names else ''}")


PASSES = {
    p.name: p
    for p in [
        Pass("truncate_after_error", truncate_after_error, Phase.SPEED_CRITICAL),
        Pass("remove_unused_definitions", remove_unused_definitions, Phase.SPEED_CRITICAL),
        Pass("admit_obligations", admit_obligations, Phase.SPEED_CRITICAL),
        Pass("admit_proofs", admit_proofs, Phase.SPEED_CRITICAL),
        Pass("admit_abstract_subproofs", admit_abstract_subproofs, Phase.SPEED_CRITICAL),
        Pass("export_modules", export_modules, Phase.STRUCTURAL),
        Pass("split_imports", split_imports, Phase.STRUCTURAL),
        Pass("split_requires", split_requires, Phase.STRUCTURAL),
        Pass("remove_blocks_backward", remove_blocks_backward, Phase.STRUCTURAL),
        Pass("remove_empty_scopes", remove_empty_scopes, Phase.STRUCTURAL),
        Pass("split_definitions", split_definitions, Phase.COSMETIC, compound=True),
    ]
}
