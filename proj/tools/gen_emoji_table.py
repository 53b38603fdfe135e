#!/usr/bin/env python3
# Copyright 2026 The hsd Authors.
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

"""Regenerates src/emoji_table.inc from the `emoji` package's CLDR names.

Usage: python3 tools/gen_emoji_table.py > src/emoji_table.inc
"""
import re
import unicodedata

import emoji

LICENSE = """\
// Copyright 2026 The hsd Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

"""


def short_name(cldr):
    name = unicodedata.normalize("NFKD", cldr.strip(":"))
    name = name.encode("ascii", "ignore").decode("ascii").lower()
    name = re.sub(r"[^a-z0-9]+", "_", name)
    return name.strip("_")


def main():
    table = {}
    for seq, data in emoji.EMOJI_DATA.items():
        cps = [ord(c) for c in seq]
        if len(cps) == 2 and cps[1] == 0xFE0F:
            cps = cps[:1]
        if len(cps) != 1 or cps[0] < 0x80:
            continue
        name = short_name(data["en"])
        if name:
            table.setdefault(cps[0], name)
    for i in range(26):
        table.setdefault(0x1F1E6 + i, "regional_indicator_" + chr(ord("a") + i))

    print(LICENSE, end="")
    print("// Generated by tools/gen_emoji_table.py. Do not edit.")
    for cp in sorted(table):
        print(f'{{0x{cp:05X}, "{table[cp]}"}},')


if __name__ == "__main__":
    main()
