"""Ground terms over a ranked signature.

Terms are immutable and compared by value. Size, height and hash are
computed once at construction from the children, so none of the methods here
recurse; witnesses on the scaled example family are several thousand levels
deep.
"""

from __future__ import annotations

import re
from typing import Iterator


class Term:
    __slots__ = ("root", "children", "size", "height", "_hash")

    def __init__(self, root: str, children: tuple[Term, ...] = ()):
        self.root = root
        self.children = tuple(children)
        self.size = 1 + sum(c.size for c in self.children)
        # a constant has height 1
        self.height = 1 + max((c.height for c in self.children), default=0)
        self._hash = hash((root, tuple(c._hash for c in self.children)))

    def __hash__(self) -> int:
        return self._hash

    def __eq__(self, other) -> bool:
        if self is other:
            return True
        if not isinstance(other, Term):
            return NotImplemented
        stack = [(self, other)]
        while stack:
            a, b = stack.pop()
            if a is b:
                continue
            if (a._hash != b._hash or a.size != b.size or a.root != b.root
                    or len(a.children) != len(b.children)):
                return False
            stack.extend(zip(a.children, b.children))
        return True

    def __setattr__(self, name, value):
        if hasattr(self, "_hash"):
            raise AttributeError("Term is immutable")
        object.__setattr__(self, name, value)

    def preorder(self) -> Iterator[str]:
        stack = [self]
        while stack:
            t = stack.pop()
            yield t.root
            stack.extend(reversed(t.children))

    def subterms(self) -> Iterator[Term]:
        stack = [self]
        while stack:
            t = stack.pop()
            yield t
            stack.extend(reversed(t.children))

    def __str__(self) -> str:
        out = []
        stack: list = [self]
        while stack:
            item = stack.pop()
            if isinstance(item, str):
                out.append(item)
                continue
            out.append(item.root)
            if item.children:
                stack.append(")")
                for i, c in enumerate(reversed(item.children)):
                    stack.append(c)
                    if i != len(item.children) - 1:
                        stack.append(",")
                stack.append("(")
        return "".join(out)

    def __repr__(self) -> str:
        return f"Term({str(self)!r})"


def term(root: str, *children: Term) -> Term:
    return Term(root, tuple(children))


_TOKEN = re.compile(r"\s*(?:([A-Za-z_][A-Za-z0-9_']*)|(\S))")


def parse_term(text: str) -> Term:
    """Parse ``q(p(a))``-style notation; arities are read off the text."""
    tokens = [(m.group(1), m.group(2)) for m in _TOKEN.finditer(text)
              if m.group(1) or m.group(2)]
    frames: list[tuple[str, list[Term]]] = []
    result = None
    expect_symbol = True
    i = 0
    while i < len(tokens):
        ident, op = tokens[i]
        i += 1
        if expect_symbol:
            if ident is None:
                raise ValueError(f"expected symbol before {op!r} in {text!r}")
            if i < len(tokens) and tokens[i][1] == "(":
                frames.append((ident, []))
                i += 1
                continue
            node = Term(ident)
        elif op == "," and frames:
            expect_symbol = True
            continue
        elif op == ")" and frames:
            name, kids = frames.pop()
            node = Term(name, tuple(kids))
        else:
            raise ValueError(f"unexpected {ident or op!r} in term {text!r}")
        expect_symbol = False
        if frames:
            frames[-1][1].append(node)
        elif result is None:
            result = node
        else:
            raise ValueError(f"trailing input in term {text!r}")
    if frames or result is None:
        raise ValueError(f"incomplete term {text!r}")
    return result
