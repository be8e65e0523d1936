"""
Build the API reference pages for pyFibCodes.

Runs inside mkdocs through the gen-files plugin.
"""

from __future__ import annotations

from pathlib import Path

import mkdocs_gen_files

PACKAGE_DIR = Path("src", "pyFibCodes")

nav = mkdocs_gen_files.Nav()

for path in sorted(PACKAGE_DIR.glob("*.py")):
    # Entry points and the package root have no public API of their own
    if path.stem.startswith("_"):
        continue

    doc_path = Path(path.stem).with_suffix(".md")
    full_doc_path = Path("reference", doc_path)
    nav[(path.stem,)] = doc_path.as_posix()

    with mkdocs_gen_files.open(full_doc_path, "w") as fd:
        fd.write(f"# {path.stem}\n\n::: pyFibCodes.{path.stem}\n")

    mkdocs_gen_files.set_edit_path(full_doc_path, Path("../") / path)

with mkdocs_gen_files.open("reference/SUMMARY.md", "w") as nav_file:
    nav_file.writelines(nav.build_literate_nav())
