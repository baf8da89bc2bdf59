"""
Expression parser for the CLI surface syntax.

    expr   := term (('+' | '-') term)*
    term   := factor ('*' factor)*
    factor := atom ('^' NAT)?
    atom   := RATIONAL | GEN | '(' expr ')' | 'ox' '(' expr ',' expr ')' | 'inv' '(' expr ')'
    GEN    := ('p' | 'q' | 'x' | 'y') NAT?

Parsing is a Pratt loop over binding powers; '*' is mandatory between factors
and products keep their source order until the algebra normal-orders them.
"""

import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterator, List, Optional, Union

from ncpoisson.algebra.element import Element
from ncpoisson.algebra.spec import AlgebraSpec
from ncpoisson.exceptions import LocalizationError, NCPoissonError, ParseError
from ncpoisson.localization.localized import LocalizedAlgebra, LocElement, loc_embed, loc_inverse
from ncpoisson.tensor.product import TensorAlgebraSpec, tensor_elem

NUM = "NUM"
NAME = "NAME"
OP = "OP"
END = "END"

KEYWORDS = ("ox", "inv")

BINDING_POWER = {"+": 10, "-": 10, "*": 20, "^": 30}
PREFIX_POWER = 25

TOKEN_RE = re.compile(
    r"(?P<ws>[ \t\r\n]+)"
    r"|(?P<num>\d+(?:/\d+)?)"
    r"|(?P<name>[A-Za-z_]+\d*)"
    r"|(?P<op>[-+*^(),])"
)


@dataclass(frozen=True)
class Token:
    kind: str
    text: str
    line: int
    column: int


# -- AST ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Num:
    value: Fraction


@dataclass(frozen=True)
class Gen:
    letter: str
    index: int
    token: Token


@dataclass(frozen=True)
class BinOp:
    op: str
    left: "Node"
    right: "Node"


@dataclass(frozen=True)
class Neg:
    operand: "Node"


@dataclass(frozen=True)
class Pow:
    base: "Node"
    exponent: int


@dataclass(frozen=True)
class Ox:
    left: "Node"
    right: "Node"
    token: Token


@dataclass(frozen=True)
class Inv:
    operand: "Node"
    token: Token


Node = Union[Num, Gen, BinOp, Neg, Pow, Ox, Inv]
Value = Union[Element, LocElement]


# -- tokenizer ---------------------------------------------------------------------

def tokenize(source: str) -> Iterator[Token]:
    line, line_start, pos = 1, 0, 0
    while pos < len(source):
        match = TOKEN_RE.match(source, pos)
        column = pos - line_start + 1
        if match is None:
            raise ParseError(f"unexpected character {source[pos]!r}", line, column, source)
        text = match.group()
        if match.lastgroup == "ws":
            for offset, ch in enumerate(text):
                if ch == "\n":
                    line += 1
                    line_start = pos + offset + 1
        elif match.lastgroup == "num":
            if "/" in text and int(text.split("/")[1]) == 0:
                raise ParseError("zero denominator", line, column, source)
            yield Token(NUM, text, line, column)
        elif match.lastgroup == "name":
            yield Token(NAME, text, line, column)
        else:
            yield Token(OP, text, line, column)
        pos = match.end()
    yield Token(END, "", line, pos - line_start + 1)


# -- Pratt parser ------------------------------------------------------------------

class Parser:
    def __init__(self, source: str):
        self.source = source
        self.tokens: List[Token] = list(tokenize(source))
        self.pos = 0

    def error(self, message: str, token: Optional[Token] = None) -> ParseError:
        token = token or self.peek()
        return ParseError(message, token.line, token.column, self.source)

    def peek(self) -> Token:
        return self.tokens[self.pos]

    def advance(self) -> Token:
        token = self.tokens[self.pos]
        if token.kind != END:
            self.pos += 1
        return token

    def expect(self, text: str) -> Token:
        token = self.advance()
        if token.kind != OP or token.text != text:
            found = "end of input" if token.kind == END else repr(token.text)
            raise self.error(f"expected {text!r}, found {found}", token)
        return token

    def parse(self) -> Node:
        if self.peek().kind == END:
            raise self.error("empty expression")
        node = self.expression(0)
        token = self.peek()
        if token.kind != END:
            raise self.error(f"unexpected {token.text!r}; products need an explicit '*'", token)
        return node

    def expression(self, rbp: int) -> Node:
        left = self.nud(self.advance())
        while True:
            token = self.peek()
            if token.kind != OP or BINDING_POWER.get(token.text, 0) <= rbp:
                return left
            left = self.led(self.advance(), left)

    def nud(self, token: Token) -> Node:
        if token.kind == NUM:
            return Num(Fraction(token.text))
        if token.kind == NAME:
            if token.text in KEYWORDS:
                self.expect("(")
                first = self.expression(0)
                if token.text == "ox":
                    self.expect(",")
                    second = self.expression(0)
                    self.expect(")")
                    return Ox(first, second, token)
                self.expect(")")
                return Inv(first, token)
            return self.generator(token)
        if token.kind == OP and token.text == "(":
            inner = self.expression(0)
            self.expect(")")
            return inner
        if token.kind == OP and token.text in "+-":
            operand = self.expression(PREFIX_POWER)
            return Neg(operand) if token.text == "-" else operand
        found = "end of input" if token.kind == END else repr(token.text)
        raise self.error(f"unexpected {found}", token)

    def led(self, token: Token, left: Node) -> Node:
        if token.text == "^":
            exponent = self.advance()
            if exponent.kind != NUM or "/" in exponent.text:
                raise self.error("exponent must be a natural number", exponent)
            if self.peek().kind == OP and self.peek().text == "^":
                raise self.error("chained exponents need parentheses")
            return Pow(left, int(exponent.text))
        right = self.expression(BINDING_POWER[token.text])
        return BinOp(token.text, left, right)

    def generator(self, token: Token) -> Gen:
        match = re.fullmatch(r"([pqxy])(\d*)", token.text)
        if match is None:
            raise self.error(f"unknown name {token.text!r}", token)
        index = int(match.group(2)) if match.group(2) else 1
        return Gen(match.group(1), index, token)


def parse_expression(source: str) -> Node:
    return Parser(source).parse()


# -- evaluation --------------------------------------------------------------------

@dataclass(frozen=True)
class EvalContext:
    """Target of evaluation: a plain algebra, a tensor algebra or a localized algebra"""

    algebra: AlgebraSpec
    tensor: Optional[TensorAlgebraSpec] = None
    localized: Optional[LocalizedAlgebra] = None

    @classmethod
    def of(cls, target: Union["EvalContext", AlgebraSpec, TensorAlgebraSpec, LocalizedAlgebra]) -> "EvalContext":
        if isinstance(target, EvalContext):
            return target
        if isinstance(target, TensorAlgebraSpec):
            return cls(target.combined, tensor=target)
        if isinstance(target, LocalizedAlgebra):
            return cls(target.base, localized=target)
        return cls(target)

    @property
    def label(self) -> str:
        if self.localized is not None:
            return self.localized.label
        if self.tensor is not None:
            return self.tensor.label
        return str(self.algebra)


class Evaluator:
    def __init__(self, context: EvalContext, source: str):
        self.context = context
        self.source = source

    def lift(self, x: Element) -> Value:
        if self.context.localized is not None:
            return loc_embed(self.context.localized, x)
        return x

    def evaluate(self, node: Node) -> Value:
        alg = self.context.algebra
        if isinstance(node, Num):
            return self.lift(Element.constant(alg, node.value))
        if isinstance(node, Gen):
            return self.lift(self.generator(node))
        if isinstance(node, Neg):
            return -self.evaluate(node.operand)
        if isinstance(node, Pow):
            return self.evaluate(node.base) ** node.exponent
        if isinstance(node, BinOp):
            left, right = self.evaluate(node.left), self.evaluate(node.right)
            if node.op == "+":
                return left + right
            if node.op == "-":
                return left - right
            return left * right
        if isinstance(node, Ox):
            return self.tensor_product(node)
        if isinstance(node, Inv):
            return self.inverse(node)
        raise TypeError(f"unknown node {node!r}")

    def generator(self, node: Gen) -> Element:
        alg = self.context.algebra
        letters = alg.letters
        token = node.token
        if node.letter not in letters:
            raise ParseError(
                f"generator {token.text!r} does not belong to {self.context.label} (uses {letters[0]}, {letters[1]})",
                token.line, token.column, self.source,
            )
        if not 1 <= node.index <= alg.n_pairs:
            raise ParseError(
                f"index {node.index} out of range 1..{alg.n_pairs} for {self.context.label}",
                token.line, token.column, self.source,
            )
        offset = 0 if node.letter == letters[0] else alg.n_pairs
        return Element.generator(alg, offset + node.index - 1)

    def tensor_product(self, node: Ox) -> Value:
        tensor = self.context.tensor
        if tensor is None:
            token = node.token
            raise ParseError("ox(...) needs a tensor algebra", token.line, token.column, self.source)
        left = Evaluator(EvalContext(tensor.left), self.source).evaluate(node.left)
        right = Evaluator(EvalContext(tensor.right), self.source).evaluate(node.right)
        return tensor_elem(tensor, left, right)

    def inverse(self, node: Inv) -> Value:
        token = node.token
        if self.context.localized is None:
            raise ParseError("inv(...) needs a localized algebra", token.line, token.column, self.source)
        try:
            return loc_inverse(self.evaluate(node.operand))
        except LocalizationError as e:
            raise ParseError(str(e), token.line, token.column, self.source) from e


def parse_value(source: str, target) -> Value:
    """Parse and evaluate; localized targets give a LocElement"""
    context = EvalContext.of(target)
    node = parse_expression(source)
    try:
        return Evaluator(context, source).evaluate(node)
    except ParseError:
        raise
    except NCPoissonError as e:
        raise ParseError(str(e), 1, 1, source) from e


def parse_element(source: str, target) -> Element:
    """Parse src into a normal-ordered Element of the target algebra"""
    value = parse_value(source, target)
    if isinstance(value, LocElement):
        if value.exp:
            raise ParseError("expression has a denominator; expected a polynomial", 1, 1, source)
        return value.numerator
    return value
