#!/usr/bin/env python3
# Copyright 2026 mperc contributors
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#     http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.

"""Prepend the Apache-2.0 header to project sources. Idempotent."""

import pathlib
import sys

LINES = [
    "Copyright 2026 mperc contributors",
    "",
    'Licensed under the Apache License, Version 2.0 (the "License");',
    "you may not use this file except in compliance with the License.",
    "You may obtain a copy of the License at",
    "",
    "    http://www.apache.org/licenses/LICENSE-2.0",
    "",
    "Unless required by applicable law or agreed to in writing, software",
    'distributed under the License is distributed on an "AS IS" BASIS,',
    "WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.",
    "See the License for the specific language governing permissions and",
    "limitations under the License.",
]

ROOT = pathlib.Path(__file__).resolve().parent.parent
DIRS = ["include", "src", "tests", "tools"]


def comment(prefix):
    return "".join((prefix + " " + l).rstrip() + "\n" for l in LINES)


def header_for(path):
    if path.suffix in {".hpp", ".cpp", ".h"}:
        return comment("//") + "\n"
    if path.name == "CMakeLists.txt" or path.suffix == ".py":
        return comment("#") + "\n"
    if path.suffix == ".md":
        return "<!--\n" + "".join(("  " + l).rstrip() + "\n" for l in LINES) + "-->\n\n"
    return None


def targets():
    yield ROOT / "CMakeLists.txt"
    yield ROOT / "README.md"
    for d in DIRS:
        for p in sorted((ROOT / d).rglob("*")):
            if p.is_file():
                yield p


def main():
    changed = 0
    for path in targets():
        header = header_for(path)
        if header is None:
            continue
        text = path.read_text()
        marker = next(l for l in header.splitlines() if LINES[0] in l)
        if marker in text[:1000]:
            continue
        shebang = ""
        if text.startswith("#!"):
            shebang, _, text = text.partition("\n")
            shebang += "\n"
        path.write_text(shebang + header + text)
        changed += 1
    print(f"{changed} files updated")
    return 0


if __name__ == "__main__":
    sys.exit(main())
