"""Formula language: AST, concrete grammar, parser and pretty-printer.

The core connectives are truth, propositional atoms, observation atoms,
negation, conjunction, a belief modality and a dynamic box over a pointed
action model.  Everything else (|, ->, <->, Bhat, diamonds, false) is
definitional sugar that the parser expands and the renderer re-sugars
deterministically, so ``parse(render(f)) == f`` for every formula ``f``.

Concrete grammar (operator precedence: ~ and the prefix modalities bind
tightest, then &, then |, then ->, then <->)::

    formula  = "true" | "false" | IDENT | "obs(" IDENT "," lit ")"
             | "~" formula | formula "&" formula | formula "|" formula
             | formula "->" formula | formula "<->" formula
             | "B[" IDENT "]" formula | "Bhat[" IDENT "]" formula
             | "[" act "]" formula | "<" act ">" formula | "(" formula ")"
    lit      = IDENT | "~" IDENT
    act      = ("tell+"|"tell-") "(" IDENT "," formula ")"
             | ("show+"|"show-") "(" IDENT "," lit {"&" lit} ")"
             | "@" IDENT

Macro forms ``Sim(a,b,p)``, ``Dis(a,b,p)``, ``O(a,lit)``, ``Bs(b,phi)`` and
``Surprise(kind,a,p)`` are accepted in formula position and expand to their
definitions before parsing completes.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import TYPE_CHECKING, Iterable, Iterator, Mapping, Optional, Union

if TYPE_CHECKING:
    from .action import PointedAction


class ParseError(Exception):
    """Syntax or identifier error, with a character position."""

    def __init__(self, message: str, pos: int):
        super().__init__(f"{message} (at position {pos})")
        self.message = message
        self.pos = pos


@dataclass(frozen=True)
class Lit:
    """A propositional literal; negation flips ``positive``."""

    prop: str
    positive: bool = True

    def negated(self) -> "Lit":
        return Lit(self.prop, not self.positive)

    def __str__(self) -> str:
        return self.prop if self.positive else "~" + self.prop


@dataclass(frozen=True)
class ObsAtom:
    """Observation atom: ``agent`` visually perceives the literal.

    ``obs(a,p)`` and ``obs(a,~p)`` are distinct atoms; neither is the
    negation of the other (both may be false, never both true in a
    consistent valuation).
    """

    agent: str
    lit: Lit

    def paired(self) -> "ObsAtom":
        """The companion atom observing the opposite literal."""
        return ObsAtom(self.agent, self.lit.negated())

    def __str__(self) -> str:
        return f"obs({self.agent},{self.lit})"


Atom = Union[str, ObsAtom]


def atom_key(atom: Atom) -> tuple:
    """Deterministic sort key: propositional atoms first, then observations."""
    if isinstance(atom, ObsAtom):
        return (1, atom.agent, atom.lit.prop, 0 if atom.lit.positive else 1)
    return (0, atom, "", 0)


def render_atom(atom: Atom) -> str:
    return str(atom) if isinstance(atom, ObsAtom) else atom


@dataclass(frozen=True)
class Registry:
    """Finite agent and proposition symbols declared for a scenario."""

    agents: tuple[str, ...]
    props: tuple[str, ...]

    def __post_init__(self):
        object.__setattr__(self, "agents", tuple(self.agents))
        object.__setattr__(self, "props", tuple(self.props))
        for name in self.agents + self.props:
            if not isinstance(name, str) or not _IDENT_RE.fullmatch(name):
                raise ValueError(f"invalid identifier {name!r}")
        if len(set(self.agents)) != len(self.agents):
            raise ValueError("duplicate agent names")
        if len(set(self.props)) != len(self.props):
            raise ValueError("duplicate prop names")

    def audience(self, actor: str) -> tuple[str, ...]:
        """Every registered agent except ``actor``, in declaration order."""
        if actor not in self.agents:
            raise ValueError(f"unknown agent {actor!r}")
        return tuple(a for a in self.agents if a != actor)

    def all_atoms(self) -> tuple[Atom, ...]:
        """All propositional and observation atoms over the registry."""
        atoms: list[Atom] = list(self.props)
        for agent in self.agents:
            for prop in self.props:
                atoms.append(ObsAtom(agent, Lit(prop, True)))
                atoms.append(ObsAtom(agent, Lit(prop, False)))
        return tuple(sorted(atoms, key=atom_key))


class Formula:
    """Base class for formula AST nodes. Instances are immutable values."""

    __slots__ = ()


class ActionExpr:
    """Syntactic face of the action inside a dynamic modality.

    Either one of the four action-type expressions or a named reference to
    a loaded action model; both resolve to a concrete pointed action model
    before evaluation.
    """

    __slots__ = ()

    def resolve(self, registry: Registry) -> "PointedAction":
        raise NotImplementedError

    def unparse(self) -> str:
        raise NotImplementedError


@dataclass(frozen=True)
class Truth(Formula):
    pass


@dataclass(frozen=True)
class Prop(Formula):
    name: str


@dataclass(frozen=True)
class Obs(Formula):
    atom: ObsAtom


@dataclass(frozen=True)
class Not(Formula):
    sub: Formula


@dataclass(frozen=True)
class And(Formula):
    left: Formula
    right: Formula


@dataclass(frozen=True)
class Believes(Formula):
    agent: str
    sub: Formula


@dataclass(frozen=True)
class DynBox(Formula):
    act: ActionExpr
    body: Formula


# ---------------------------------------------------------------------------
# Derived constructors (definitional expansions into the core connectives)

def false_() -> Formula:
    return Not(Truth())


def obs_(agent: str, prop: str, positive: bool = True) -> Obs:
    return Obs(ObsAtom(agent, Lit(prop, positive)))


def negate(f: Formula) -> Formula:
    """Negation collapsing a directly doubled ``~``; used by builders so
    that e.g. the negation of ``~p`` is ``p`` rather than ``~~p``."""
    if isinstance(f, Not):
        return f.sub
    return Not(f)


def or_(left: Formula, right: Formula) -> Formula:
    return Not(And(Not(left), Not(right)))


def implies(left: Formula, right: Formula) -> Formula:
    return Not(And(left, Not(right)))


def iff(left: Formula, right: Formula) -> Formula:
    return And(implies(left, right), implies(right, left))


def bel_hat(agent: str, f: Formula) -> Formula:
    return Not(Believes(agent, Not(f)))


def diamond(act: ActionExpr, f: Formula) -> Formula:
    return Not(DynBox(act, Not(f)))


def conj(parts: Iterable[Formula]) -> Formula:
    """Left-associated conjunction; empty conjunction is ``true``."""
    parts = list(parts)
    if not parts:
        return Truth()
    out = parts[0]
    for p in parts[1:]:
        out = And(out, p)
    return out


def disj(parts: Iterable[Formula]) -> Formula:
    """Left-associated disjunction; empty disjunction is ``false``."""
    parts = list(parts)
    if not parts:
        return false_()
    out = parts[0]
    for p in parts[1:]:
        out = or_(out, p)
    return out


def lit_formula(lit: Lit) -> Formula:
    return Prop(lit.prop) if lit.positive else Not(Prop(lit.prop))


def as_literal_conj(f: Formula) -> Optional[tuple[Lit, ...]]:
    """View ``f`` as a conjunction of literals over distinct props, if it is one."""
    lits: list[Lit] = []

    def walk(g: Formula) -> bool:
        if isinstance(g, And):
            return walk(g.left) and walk(g.right)
        if isinstance(g, Prop):
            lits.append(Lit(g.name, True))
            return True
        if isinstance(g, Not) and isinstance(g.sub, Prop):
            lits.append(Lit(g.sub.name, False))
            return True
        return False

    if not walk(f):
        return None
    if len({l.prop for l in lits}) != len(lits):
        return None
    return tuple(lits)


def is_static(f: Formula) -> bool:
    """True iff ``f`` contains no dynamic modality."""
    if isinstance(f, (Truth, Prop, Obs)):
        return True
    if isinstance(f, Not):
        return is_static(f.sub)
    if isinstance(f, And):
        return is_static(f.left) and is_static(f.right)
    if isinstance(f, Believes):
        return is_static(f.sub)
    if isinstance(f, DynBox):
        return False
    raise TypeError(f"not a formula: {f!r}")


def subformulas(f: Formula) -> Iterator[Formula]:
    """All subformulas of ``f``, parents before children."""
    yield f
    if isinstance(f, Not):
        yield from subformulas(f.sub)
    elif isinstance(f, And):
        yield from subformulas(f.left)
        yield from subformulas(f.right)
    elif isinstance(f, Believes):
        yield from subformulas(f.sub)
    elif isinstance(f, DynBox):
        yield from subformulas(f.body)


# ---------------------------------------------------------------------------
# Rendering

def _group(f: Formula) -> str:
    """Render as a parenthesized group (binary renders already are one)."""
    text = render(f)
    if text.startswith("(") and text.endswith(")"):
        return text
    return f"({text})"


def render(f: Formula) -> str:
    """Deterministic concrete syntax for ``f``.

    Sugar forms (false, |, ->, <->, Bhat, diamonds) are reconstructed from
    their definitional shapes, in a fixed order of preference, so the output
    always reparses to a structurally equal AST.
    """
    if isinstance(f, Truth):
        return "true"
    if isinstance(f, Prop):
        return f.name
    if isinstance(f, Obs):
        return str(f.atom)
    if isinstance(f, Believes):
        return f"B[{f.agent}]{_group(f.sub)}"
    if isinstance(f, DynBox):
        return f"[{f.act.unparse()}]{_group(f.body)}"
    if isinstance(f, Not):
        sub = f.sub
        if isinstance(sub, Truth):
            return "false"
        if isinstance(sub, DynBox) and isinstance(sub.body, Not):
            return f"<{sub.act.unparse()}>{_group(sub.body.sub)}"
        if isinstance(sub, Believes) and isinstance(sub.sub, Not):
            return f"Bhat[{sub.agent}]{_group(sub.sub.sub)}"
        if isinstance(sub, And):
            if isinstance(sub.left, Not) and isinstance(sub.right, Not):
                return f"({render(sub.left.sub)} | {render(sub.right.sub)})"
            if isinstance(sub.right, Not):
                return f"({render(sub.left)} -> {render(sub.right.sub)})"
        return "~" + render(sub)
    if isinstance(f, And):
        left, right = f.left, f.right
        # <-> is a conjunction of two mirrored definitional implications.
        if (
            isinstance(left, Not)
            and isinstance(left.sub, And)
            and isinstance(left.sub.right, Not)
            and right == implies(left.sub.right.sub, left.sub.left)
        ):
            return f"({render(left.sub.left)} <-> {render(left.sub.right.sub)})"
        return f"({render(left)} & {render(right)})"
    raise TypeError(f"not a formula: {f!r}")


# ---------------------------------------------------------------------------
# Lexer

_IDENT_RE = re.compile(r"[A-Za-z_][A-Za-z0-9_]*")
_TOKEN_RE = re.compile(
    r"\s*(?:(?P<ident>[A-Za-z_][A-Za-z0-9_]*)|(?P<iff><->)|(?P<imp>->)"
    r"|(?P<sym>[()\[\]<>,&|~@+\-]))"
)

_MACROS = ("Sim", "Dis", "O", "Bs", "Surprise")


@dataclass(frozen=True)
class _Token:
    kind: str  # "ident", "<->", "->", single characters, "eof"
    text: str
    pos: int


def _describe(tok: _Token) -> str:
    return repr(tok.text) if tok.text else "end of input"


def _tokenize(text: str) -> list[_Token]:
    tokens = []
    i = 0
    n = len(text)
    while i < n:
        m = _TOKEN_RE.match(text, i)
        if m is None:
            stripped = text[i:].lstrip()
            if not stripped:
                break
            raise ParseError(f"unexpected character {stripped[0]!r}", n - len(stripped))
        if m.lastgroup == "ident":
            tokens.append(_Token("ident", m.group("ident"), m.start("ident")))
        elif m.lastgroup == "iff":
            tokens.append(_Token("<->", "<->", m.start("iff")))
        elif m.lastgroup == "imp":
            tokens.append(_Token("->", "->", m.start("imp")))
        else:
            tokens.append(_Token(m.group("sym"), m.group("sym"), m.start("sym")))
        i = m.end()
    tokens.append(_Token("eof", "", n))
    return tokens


class _Parser:
    def __init__(
        self,
        text: str,
        registry: Registry,
        actions: Optional[Mapping[str, "PointedAction"]] = None,
    ):
        self.tokens = _tokenize(text)
        self.i = 0
        self.registry = registry
        self.actions = dict(actions or {})

    # -- token helpers

    def peek(self) -> _Token:
        return self.tokens[self.i]

    def next(self) -> _Token:
        tok = self.tokens[self.i]
        self.i += 1
        return tok

    def expect(self, kind: str) -> _Token:
        tok = self.next()
        if tok.kind != kind:
            raise ParseError(f"expected {kind!r}, found {_describe(tok)}", tok.pos)
        return tok

    def agent(self, tok: _Token) -> str:
        if tok.kind != "ident":
            raise ParseError(f"expected an agent name, found {tok.text!r}", tok.pos)
        if tok.text not in self.registry.agents:
            raise ParseError(f"unknown agent {tok.text!r}", tok.pos)
        return tok.text

    def prop(self, tok: _Token) -> str:
        if tok.kind != "ident":
            raise ParseError(f"expected a prop name, found {tok.text!r}", tok.pos)
        if tok.text not in self.registry.props:
            raise ParseError(f"unknown prop {tok.text!r}", tok.pos)
        return tok.text

    # -- grammar

    def formula(self) -> Formula:
        return self.iff_level()

    def iff_level(self) -> Formula:
        out = self.imp_level()
        while self.peek().kind == "<->":
            self.next()
            out = iff(out, self.imp_level())
        return out

    def imp_level(self) -> Formula:
        left = self.or_level()
        if self.peek().kind == "->":
            self.next()
            return implies(left, self.imp_level())
        return left

    def or_level(self) -> Formula:
        out = self.and_level()
        while self.peek().kind == "|":
            self.next()
            out = or_(out, self.and_level())
        return out

    def and_level(self) -> Formula:
        out = self.unary()
        while self.peek().kind == "&":
            self.next()
            out = And(out, self.unary())
        return out

    def unary(self) -> Formula:
        tok = self.peek()
        if tok.kind == "~":
            self.next()
            return Not(self.unary())
        if tok.kind == "[":
            self.next()
            act = self.act()
            self.expect("]")
            return DynBox(act, self.unary())
        if tok.kind == "<":
            self.next()
            act = self.act()
            self.expect(">")
            return diamond(act, self.unary())
        if tok.kind == "ident" and tok.text in ("B", "Bhat") and self.tokens[self.i + 1].kind == "[":
            self.next()
            self.expect("[")
            agent = self.agent(self.next())
            self.expect("]")
            body = self.unary()
            return Believes(agent, body) if tok.text == "B" else bel_hat(agent, body)
        return self.primary()

    def primary(self) -> Formula:
        tok = self.next()
        if tok.kind == "(":
            out = self.formula()
            self.expect(")")
            return out
        if tok.kind == "ident":
            if tok.text == "true":
                return Truth()
            if tok.text == "false":
                return false_()
            if tok.text == "obs" and self.peek().kind == "(":
                self.next()
                agent = self.agent(self.next())
                self.expect(",")
                lit = self.lit()
                self.expect(")")
                return Obs(ObsAtom(agent, lit))
            if tok.text in _MACROS and self.peek().kind == "(":
                try:
                    return self.macro(tok.text)
                except ValueError as exc:
                    raise ParseError(str(exc), tok.pos) from exc
            return Prop(self.prop(tok))
        raise ParseError(f"expected a formula, found {_describe(tok)}", tok.pos)

    def lit(self) -> Lit:
        tok = self.next()
        if tok.kind == "~":
            return Lit(self.prop(self.next()), False)
        return Lit(self.prop(tok), True)

    def act(self) -> ActionExpr:
        from . import action

        tok = self.next()
        if tok.kind == "@":
            name = self.expect("ident")
            if name.text not in self.actions:
                raise ParseError(f"unknown action model {name.text!r}", name.pos)
            return action.NamedAction(name.text, self.actions[name.text])
        if tok.kind == "ident" and tok.text in ("tell", "show"):
            sign = self.next()
            if sign.kind not in ("+", "-"):
                raise ParseError(f"expected '+' or '-' after {tok.text!r}", sign.pos)
            self.expect("(")
            actor = self.agent(self.next())
            self.expect(",")
            if tok.text == "tell":
                payload = self.formula()
                self.expect(")")
                cls = action.TellPlus if sign.kind == "+" else action.TellMinus
                return cls(actor, payload)
            lits = [self.lit()]
            while self.peek().kind == "&":
                self.next()
                lits.append(self.lit())
            self.expect(")")
            cls = action.ShowPlus if sign.kind == "+" else action.ShowMinus
            try:
                return cls(actor, tuple(lits))
            except ValueError as exc:
                raise ParseError(str(exc), tok.pos) from exc
        raise ParseError(f"expected an action, found {_describe(tok)}", tok.pos)

    def macro(self, name: str) -> Formula:
        from . import derived

        self.expect("(")
        if name == "O":
            agent = self.agent(self.next())
            self.expect(",")
            lit = self.lit()
            self.expect(")")
            return derived.epistemic_obs(agent, lit)
        if name in ("Sim", "Dis"):
            actor = self.agent(self.next())
            self.expect(",")
            addressee = self.agent(self.next())
            self.expect(",")
            prop = self.prop(self.next())
            self.expect(")")
            build = derived.sim if name == "Sim" else derived.dis
            return build(actor, addressee, prop)
        if name == "Bs":
            subject = self.agent(self.next())
            self.expect(",")
            body = self.formula()
            self.expect(")")
            actors = self.registry.audience(subject)
            return derived.strong_belief(subject, actors, body)
        kind = self.expect("ident")
        if kind.text not in ("mismatch", "strong_mismatch", "astonishment"):
            raise ParseError(f"unknown surprise kind {kind.text!r}", kind.pos)
        self.expect(",")
        agent = self.agent(self.next())
        self.expect(",")
        prop = self.prop(self.next())
        self.expect(")")
        return derived.surprise(kind.text, agent, prop)


def parse(
    text: str,
    registry: Registry,
    actions: Optional[Mapping[str, "PointedAction"]] = None,
) -> Formula:
    """Parse ``text`` into an AST, expanding derived connectives and macros.

    ``actions`` maps names usable as ``@name`` references to pointed action
    models.  Raises :class:`ParseError` on syntax errors and on agent/prop
    identifiers missing from ``registry``.
    """
    parser = _Parser(text, registry, actions)
    out = parser.formula()
    tok = parser.peek()
    if tok.kind != "eof":
        raise ParseError(f"unexpected trailing input {tok.text!r}", tok.pos)
    return out


def parse_action_expr(
    text: str,
    registry: Registry,
    actions: Optional[Mapping[str, "PointedAction"]] = None,
) -> ActionExpr:
    """Parse a bare action expression (the ``act`` grammar production)."""
    parser = _Parser(text, registry, actions)
    out = parser.act()
    tok = parser.peek()
    if tok.kind != "eof":
        raise ParseError(f"unexpected trailing input {tok.text!r}", tok.pos)
    return out


def parse_atom(text: str, registry: Registry) -> Atom:
    """Parse a valuation atom: ``p``, ``obs(a,p)`` or ``obs(a,~p)``."""
    parser = _Parser(text, registry)
    f = parser.primary()
    tok = parser.peek()
    if tok.kind != "eof":
        raise ParseError(f"unexpected trailing input {tok.text!r}", tok.pos)
    if isinstance(f, Prop):
        return f.name
    if isinstance(f, Obs):
        return f.atom
    raise ParseError("expected a propositional or observation atom", 0)
