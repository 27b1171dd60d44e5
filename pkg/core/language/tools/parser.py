"""Recursive-descent parser for ``.stratum`` pipeline specifications.

Grammar::

    spec      := "pipeline" IDENT "{" item* "}"
    item      := component | flow
    component := "component" IDENT "{" prop* "}"
    flow      := "flow" IDENT "->" IDENT [ "{" prop* "}" ]
    prop      := KEY ":" VALUE

Duplicate component names, unknown flow endpoints and self-loops are left
to the validator so the parser stays context-free.
"""
from decimal import Decimal
from typing import Callable, Dict, List, Tuple, Any

from core.language.schemas.pipeline_spec import (
    Component,
    ComponentKind,
    Flow,
    GpuDemand,
    ModelRef,
    PipelineSpec,
    TierHint,
)
from core.language.tools.lexer import (
    ARROW, AT, COLON, EOF, IDENT, LBRACE, NUMBER, RBRACE, VERSION,
    Token, tokenize,
)
from core.services.error_handling import ParseError

REQUIRED_COMPONENT_PROPS = ("kind", "cpu", "mem")


class SpecParser:
    """Parses one source text into a PipelineSpec."""

    def __init__(self, source: str):
        self.tokens: List[Token] = tokenize(source)
        self.pos = 0
        self.component_props: Dict[str, Callable[[], Any]] = {
            "kind": lambda: self._enum_value("kind", ComponentKind),
            "cpu": lambda: self._decimal_value("cpu", minimum=Decimal(0), inclusive=False),
            "mem": lambda: self._integer_value("mem", minimum=1),
            "gpu": lambda: self._enum_value("gpu", GpuDemand),
            "tier_hint": lambda: self._enum_value("tier_hint", TierHint),
            "replicas": lambda: self._integer_value("replicas", minimum=1),
            "rate": lambda: self._decimal_value("rate", minimum=Decimal(0), inclusive=True),
            "service_rate": lambda: self._decimal_value("service_rate", minimum=Decimal(0), inclusive=False),
            "model": self._model_value,
        }
        self.flow_props: Dict[str, Callable[[], Any]] = {
            "max_latency_ms": lambda: self._decimal_value("max_latency_ms", minimum=Decimal(0), inclusive=False),
        }

    # Token helpers

    def _peek(self) -> Token:
        return self.tokens[self.pos]

    def _advance(self) -> Token:
        token = self.tokens[self.pos]
        if token.type != EOF:
            self.pos += 1
        return token

    def _error(self, token: Token, message: str) -> ParseError:
        return ParseError(token.line, token.column, message)

    def _describe(self, token: Token) -> str:
        return "end of input" if token.type == EOF else repr(token.text)

    def _expect(self, token_type: str, what: str) -> Token:
        token = self._peek()
        if token.type != token_type:
            raise self._error(token, f"expected {what}, found {self._describe(token)}")
        return self._advance()

    def _expect_keyword(self, keyword: str) -> Token:
        token = self._peek()
        if token.type != IDENT or token.text != keyword:
            raise self._error(token, f"expected '{keyword}', found {self._describe(token)}")
        return self._advance()

    # Grammar rules

    def parse(self) -> PipelineSpec:
        self._expect_keyword("pipeline")
        name = self._expect(IDENT, "pipeline name").text
        self._expect(LBRACE, "'{'")

        components: List[Component] = []
        flows: List[Flow] = []
        while True:
            token = self._peek()
            if token.type == RBRACE:
                break
            if token.type == EOF:
                raise self._error(token, "unexpected end of input, expected '}'")
            if token.type == IDENT and token.text == "component":
                components.append(self._component())
            elif token.type == IDENT and token.text == "flow":
                flows.append(self._flow())
            else:
                raise self._error(token, f"unknown keyword {self._describe(token)}, expected 'component' or 'flow'")

        self._expect(RBRACE, "'}'")
        self._expect(EOF, "end of input")
        return PipelineSpec(name=name, components=tuple(components), flows=tuple(flows))

    def _properties(self, allowed: Dict[str, Callable[[], Any]], owner: str) -> Tuple[Dict[str, Tuple[Any, Token]], Token]:
        """Parse ``{ prop* }``; returns values keyed by property and the closing brace."""
        self._expect(LBRACE, "'{'")
        values: Dict[str, Tuple[Any, Token]] = {}
        while True:
            token = self._peek()
            if token.type == RBRACE:
                return values, self._advance()
            if token.type != IDENT:
                raise self._error(token, f"expected property name or '}}', found {self._describe(token)}")
            if token.text not in allowed:
                raise self._error(token, f"unknown property '{token.text}' in {owner}")
            if token.text in values:
                raise self._error(token, f"duplicate property '{token.text}' in {owner}")
            self._advance()
            self._expect(COLON, "':'")
            values[token.text] = (allowed[token.text](), token)

    def _component(self) -> Component:
        self._advance()
        name = self._expect(IDENT, "component name").text
        owner = f"component '{name}'"
        props, closing = self._properties(self.component_props, owner)

        for required in REQUIRED_COMPONENT_PROPS:
            if required not in props:
                raise self._error(closing, f"missing required property '{required}' in {owner}")

        kind = props["kind"][0]
        if "model" in props and kind != ComponentKind.INFERENCE:
            raise self._error(props["model"][1], f"property 'model' is only allowed on inference components ({owner})")
        if kind == ComponentKind.INFERENCE and "model" not in props:
            raise self._error(closing, f"missing required property 'model' in {owner}")

        return Component(name=name, **{key: value for key, (value, _) in props.items()})

    def _flow(self) -> Flow:
        self._advance()
        src = self._expect(IDENT, "flow source").text
        self._expect(ARROW, "'->'")
        dst = self._expect(IDENT, "flow destination").text
        props: Dict[str, Tuple[Any, Token]] = {}
        if self._peek().type == LBRACE:
            props, _ = self._properties(self.flow_props, f"flow '{src} -> {dst}'")
        return Flow(src=src, dst=dst, **{key: value for key, (value, _) in props.items()})

    # Property values

    def _enum_value(self, key: str, enum_type):
        token = self._peek()
        allowed = [member.value for member in enum_type]
        if token.type != IDENT or token.text not in allowed:
            raise self._error(token, f"invalid value {self._describe(token)} for '{key}', expected one of {', '.join(allowed)}")
        self._advance()
        return enum_type(token.text)

    def _decimal_value(self, key: str, minimum: Decimal, inclusive: bool) -> Decimal:
        token = self._expect(NUMBER, f"number for '{key}'")
        value = Decimal(token.text)
        if value < minimum or (value == minimum and not inclusive):
            bound = f">= {minimum}" if inclusive else f"> {minimum}"
            raise self._error(token, f"value {token.text} out of range for '{key}', must be {bound}")
        return value

    def _integer_value(self, key: str, minimum: int) -> int:
        token = self._expect(NUMBER, f"integer for '{key}'")
        if "." in token.text:
            raise self._error(token, f"value {token.text} for '{key}' must be an integer")
        value = int(token.text)
        if value < minimum:
            raise self._error(token, f"value {token.text} out of range for '{key}', must be >= {minimum}")
        return value

    def _model_value(self) -> ModelRef:
        name = self._expect(IDENT, "model name").text
        self._expect(AT, "'@' after model name")
        version = self._expect(VERSION, "model version")
        return ModelRef(name=name, version=version.text)


def parse_spec(source: str) -> PipelineSpec:
    """Parse specification text; raises ParseError at the first offending token."""
    return SpecParser(source).parse()
