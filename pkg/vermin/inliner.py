"""
Replace `Require` sentences by the wrapped, name-resolved contents of the
required files, one dependency at a time, so the result needs no project
library to reproduce the bug.
"""
import logging

import networkx as nx

from configs import minimizer_config
from errors import CyclicDependency, MissingResolution, UnresolvableRequire
from libraries import is_stdlib, library_index, resolve_library
from passes import require_head_length
from sentences import Document, SentenceKind, identifiers, render, split_leading_comments
from utils.common import count_lines, read_text  # pylint: disable=no-name-in-module

logger = logging.getLogger(__name__)

TARGET = "<target>"
INLINE_PASS = "inline"
TRANSITIVE_PASS = "insert_transitive_requires"


def parse_require(words):
    """(from prefix or None, Import/Export mode or None, written names) of a Require sentence."""
    from_prefix = words[1] if words[:1] == ["From"] else None
    k = require_head_length(words)
    mode = words[k - 1] if words[k - 1] in ("Import", "Export") else None
    return from_prefix, mode, words[k:]


def required_libraries(doc, index, requiring_file="<target>"):
    """Project libraries a document requires, in sentence order, with the sentences doing it.

    Returns:
        list of (int, str) -- (sentence index, logical name)

    Raises:
        UnresolvableRequire -- for a non-stdlib name missing from the search paths
    """
    out = []
    for i, s in enumerate(doc.sentences):
        if s.kind != SentenceKind.REQUIRE_LIKE:
            continue
        from_prefix, _, names = parse_require(s.words)
        for name in names:
            logical = resolve_library(index, name, from_prefix)
            if logical is not None:
                out.append((i, logical))
                continue
            written = f"{from_prefix}.{name}" if from_prefix else name
            if not is_stdlib(written):
                raise UnresolvableRequire(written, requiring_file)
    return out


def build_graph(doc, index):
    """Dependency graph of a document over the project libraries it reaches.

    Edges run from a dependency to the file requiring it. Library nodes carry
    the file `path` and the parsed `doc`; the target node is `TARGET`.

    Raises:
        UnresolvableRequire, CyclicDependency
    """
    graph = nx.DiGraph()
    graph.add_node(TARGET, path=None, doc=doc)
    todo = [TARGET]
    while todo:
        node = todo.pop()
        data = graph.nodes[node]
        requirer = data["path"] or TARGET
        for _, logical in required_libraries(data["doc"], index, str(requirer)):
            if logical not in graph:
                path = index[logical]
                graph.add_node(logical, path=path, doc=Document.parse(read_text(path), path.name))
                todo.append(logical)
            graph.add_edge(logical, node)
    try:
        cycle = nx.find_cycle(graph)
    except nx.NetworkXNoCycle:
        return graph
    raise CyclicDependency([u for u, _ in cycle])


def dependency_order(graph):
    """Libraries, dependencies first, ties broken by name."""
    return [n for n in nx.lexicographical_topological_sort(graph) if n != TARGET]


def insert_transitive_requires(doc, graph, index):
    """Require every transitive dependency directly, before the first Require.

    Libraries the document already requires are not repeated.
    """
    present = {logical for _, logical in required_libraries(doc, index)}
    missing = [d for d in dependency_order(graph) if d not in present and d in nx.ancestors(graph, TARGET)]
    if not missing:
        return doc
    at = next((i for i, s in enumerate(doc.sentences) if s.kind == SentenceKind.REQUIRE_LIKE), 0)
    return doc.replace(at, at, [f"Require {d}." for d in missing])


def resolve_names(content, table):
    """Rewrite the module names of Require/Import/Export sentences to fully qualified names.

    Arguments:
        content {Document} -- dependency contents
        table {dict} -- short name as written -> qualified name

    Returns:
        list of str -- sentence texts

    Raises:
        MissingResolution
    """

    def qualify(name):
        if name not in table:
            raise MissingResolution(name)
        return table[name]

    texts = []
    for s in content.sentences:
        prefix, _ = split_leading_comments(s.text)
        if s.kind == SentenceKind.REQUIRE_LIKE:
            _, mode, names = parse_require(s.words)
            head = f"Require {mode}" if mode else "Require"
            texts.append(f"{prefix}{head} {' '.join(qualify(n) for n in names)}.")
        elif s.kind == SentenceKind.IMPORT_LIKE:
            words = s.words
            texts.append(f"{prefix}{words[0]} {' '.join(qualify(n) for n in words[1:])}.")
        else:
            texts.append(s.text)
    return texts


def wrap_module(content_texts, logical, uid):
    """Wrap dependency contents so they keep their qualified names and stay contained.

    `Module uid.` then one `Module Export` per component of the logical name,
    the contents, the matching `End`s, and `Import uid.` last.
    """
    components = logical.split(".")
    texts = [f"Module {uid}."]
    texts += [f"Module Export {c}." for c in components]
    texts += list(content_texts)
    texts += [f"End {c}." for c in reversed(components)]
    texts += [f"End {uid}.", f"Import {uid}."]
    return texts


def unique_id(doc, state):
    taken = set(identifiers(render(doc)))
    while True:
        uid = f"{minimizer_config.WRAPPER_PREFIX}{state.wrapper_counter}"
        state.wrapper_counter += 1
        if uid not in taken:
            return uid


def pending_libraries(doc, index, state):
    required = {logical for _, logical in required_libraries(doc, index)}
    return required - set(state.inlined) - set(state.failed_inlines)


def eligible_libraries(graph, pending):
    """Pending libraries no other pending library needs, the one to try first leading."""
    order = {n: k for k, n in enumerate(dependency_order(graph))}
    eligible = [
        d for d in pending if not any(d in nx.ancestors(graph, p) for p in pending if p != d)
    ]
    return sorted(eligible, key=lambda d: (order.get(d, -1), d), reverse=True)


def _drop_library(doc, i, logical, index):
    """Texts replacing Require sentence i once `logical` is part of the document."""
    s = doc[i]
    from_prefix, mode, names = parse_require(s.words)
    keep = [n for n in names if resolve_library(index, n, from_prefix) != logical]
    texts = []
    if keep:
        prefix, _ = split_leading_comments(s.text)
        head = s.words[: require_head_length(s.words)]
        texts.append(f"{prefix}{' '.join(head)} {' '.join(keep)}.")
    if mode:
        texts.append(f"{mode} {logical}.")
    return texts


def placements(doc, logical, wrapped, index):
    """Candidate documents inlining `logical`: at its first Require, then at the top."""
    sites = sorted({i for i, l in required_libraries(doc, index) if l == logical})
    if not sites:
        return []

    def rewrite(insert_at, at_site):
        texts = []
        for i, s in enumerate(doc.sentences):
            if i == insert_at and not at_site:
                texts += wrapped
            if i in sites:
                replacement = _drop_library(doc, i, logical, index)
                if at_site and i == sites[0]:
                    texts += wrapped + replacement
                else:
                    texts += replacement
            else:
                texts.append(s.text)
        return Document.from_texts(texts, doc.source_name)

    return [("at require site", rewrite(None, True)), ("at top", rewrite(0, False))]


def inline_one(state, oracle, index):
    """Inline the next eligible library, trying each placement through the oracle.

    Libraries that cannot be inlined go to `state.failed_inlines` and the next
    eligible one is tried.

    Returns:
        (MinimizationState, bool) -- whether a library was inlined
    """
    while True:
        doc = state.current
        graph = build_graph(doc, index)
        pending = pending_libraries(doc, index, state)
        eligible = eligible_libraries(graph, pending)
        if not eligible:
            return state, False
        logical = eligible[0]
        path = graph.nodes[logical]["path"]
        try:
            table = oracle.emit_names(path)
            content = resolve_names(graph.nodes[logical]["doc"], table)
        except MissingResolution as e:
            logger.warning("Cannot inline %s: %s", logical, e.message)
            state.failed_inlines.append(logical)
            continue
        wrapped = wrap_module(content, logical, unique_id(doc, state))
        for label, candidate in placements(doc, logical, wrapped, index):
            state, accepted = oracle.accept_candidate(state, candidate, INLINE_PASS)
            if accepted:
                state.inlined.append(logical)
                state.original_lines += count_lines(read_text(path))
                logger.info("Inlined %s %s", logical, label)
                return state, True
        logger.warning("Could not inline %s", logical)
        state.failed_inlines.append(logical)


def project_index(checker, cwd=None):
    """Library index of a checker's search paths plus the search-path environment variable."""
    return library_index(
        [tuple(p) for p in checker.search_paths], checker.environment(), cwd
    )
