"""
Map logical library names to files through `-Q`/`-R` search paths and the
search-path environment variable.
"""
from pathlib import Path
import os

from configs import minimizer_config


def search_roots(search_paths, env=None, cwd=None):
    """(directory, logical prefix) pairs, command-line paths first.

    Arguments:
        search_paths {list of (flag, dir, prefix)} -- `-Q`/`-R` triples, directories relative to cwd
        env {dict} -- environment holding the search-path variable (default: {os.environ})
        cwd {str} -- directory relative paths are interpreted against
    """
    env = os.environ if env is None else env
    base = Path(cwd) if cwd else Path.cwd()
    roots = [(base / directory, prefix) for _, directory, prefix in search_paths]
    for entry in env.get(minimizer_config.SEARCH_PATH_ENV, "").split(os.pathsep):
        if entry:
            roots.append((base / entry, ""))
    return roots


def logical_name(directory, prefix, path):
    parts = list(path.relative_to(directory).with_suffix("").parts)
    return ".".join(([prefix] if prefix else []) + parts)


def library_index(search_paths, env=None, cwd=None):
    """Every library reachable from the search roots.

    Returns:
        dict -- logical name -> resolved file path; earlier roots win on duplicates
    """
    index = {}
    for directory, prefix in search_roots(search_paths, env, cwd):
        if not directory.is_dir():
            continue
        for path in sorted(directory.rglob("*.v")):
            index.setdefault(logical_name(directory, prefix, path), path.resolve())
    return index


def logical_name_of(path, search_paths, env=None, cwd=None):
    """Logical name of a file under the search roots, or its stem when outside them."""
    path = Path(path).resolve()
    for directory, prefix in search_roots(search_paths, env, cwd):
        try:
            return logical_name(directory.resolve(), prefix, path)
        except ValueError:
            continue
    return path.stem


def resolve_library(index, name, from_prefix=None):
    """The logical name a Require of `name` loads, or None.

    A library matches when its logical name ends with the written name
    (starting with `from_prefix` for `From P Require`); the shortest match wins.
    """
    if from_prefix:
        full = f"{from_prefix}.{name}"
        matches = [
            l
            for l in index
            if l == full or (l.startswith(from_prefix + ".") and l.endswith("." + name))
        ]
    else:
        matches = [l for l in index if l == name or l.endswith("." + name)]
    if not matches:
        return None
    return min(matches, key=lambda l: (len(l), l))


def is_stdlib(name):
    return name.split(".")[0] in minimizer_config.STDLIB_PREFIXES
