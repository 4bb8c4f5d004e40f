"""
Reading and writing tables
===========================

A line-oriented text format with 1-based indices, and a canonical JSON form.
Errors carry a line and column.
"""

from nilpo.algparse import parse_json, parse_text, serialize_json, serialize_text
from nilpo.errors import ParseError

src = """\
algebra h1
dim 3
field F5
[e1,e2] = e3
"""
a = parse_text(src)
print(serialize_text(a))
assert parse_json(serialize_json(a)) == a
print(serialize_json(a).decode()[:120], "...")

try:
    parse_text("dim 3\n[e1,e4] = e2\n")
except ParseError as exc:
    print("diagnostic:", exc)
