"""Words in the letters ``a`` (alpha), ``b`` (beta) and ``t``.

A word is a plain string; the rightmost letter acts first.  The text syntax
accepted by :func:`parse_word` is::

    word   := item*
    item   := atom ('^' ['-'] digits)?
    atom   := 'a' | 'b' | 't' | '(' word ')' | '[' word ',' word ']'

``[x,y]`` is the commutator ``x y x^-1 y^-1``.  Inverses use the orders
a^4 = b^3 = t^2 = 1, so ``a^-1`` is ``aaa``.
"""

from __future__ import annotations

ORDERS = {"a": 4, "b": 3, "t": 2}


class WordSyntaxError(ValueError):
    pass


def inverse(w: str) -> str:
    return "".join(ch * (ORDERS[ch] - 1) for ch in reversed(w))


def power(w: str, k: int) -> str:
    if k < 0:
        return inverse(w) * (-k)
    return w * k


def commutator(x: str, y: str) -> str:
    return x + y + inverse(x) + inverse(y)


def reduce_word(w: str) -> str:
    """Cancel powers a^4, b^3, t^2 (free-product reduction)."""
    stack: list[list] = []
    for ch in w:
        if stack and stack[-1][0] == ch:
            stack[-1][1] += 1
            if stack[-1][1] == ORDERS[ch]:
                stack.pop()
        else:
            stack.append([ch, 1])
    return "".join(ch * k for ch, k in stack)


def pretty(w: str) -> str:
    """Compact rendering with exponents, e.g. ``b a^3 b^2``."""
    if not w:
        return "1"
    out = []
    i = 0
    while i < len(w):
        j = i
        while j < len(w) and w[j] == w[i]:
            j += 1
        k = j - i
        out.append(w[i] if k == 1 else f"{w[i]}^{k}")
        i = j
    return " ".join(out)


def parse_word(text: str) -> str:
    parser = _Parser(text)
    w = parser.word(stop="")
    if parser.pos != len(parser.text):
        raise WordSyntaxError(f"unexpected {parser.text[parser.pos]!r} at {parser.pos}")
    return w


class _Parser:
    def __init__(self, text: str):
        self.text = "".join(text.split())
        self.pos = 0

    def peek(self) -> str:
        return self.text[self.pos] if self.pos < len(self.text) else ""

    def word(self, stop: str) -> str:
        parts = []
        while self.peek() and self.peek() not in stop:
            parts.append(self.item())
        return "".join(parts)

    def item(self) -> str:
        atom = self.atom()
        if self.peek() == "^":
            self.pos += 1
            start = self.pos
            if self.peek() == "-":
                self.pos += 1
            while self.peek().isdigit():
                self.pos += 1
            digits = self.text[start:self.pos]
            if digits in ("", "-"):
                raise WordSyntaxError(f"missing exponent at {start}")
            atom = power(atom, int(digits))
        return atom

    def atom(self) -> str:
        ch = self.peek()
        if ch in ORDERS:
            self.pos += 1
            return ch
        if ch == "(":
            self.pos += 1
            w = self.word(stop=")")
            self.expect(")")
            return w
        if ch == "[":
            self.pos += 1
            x = self.word(stop=",")
            self.expect(",")
            y = self.word(stop="]")
            self.expect("]")
            return commutator(x, y)
        raise WordSyntaxError(f"unexpected {ch!r} at {self.pos}" if ch else "unexpected end of word")

    def expect(self, ch: str) -> None:
        if self.peek() != ch:
            raise WordSyntaxError(f"expected {ch!r} at {self.pos}")
        self.pos += 1
