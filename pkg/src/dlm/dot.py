"""Graphviz (DOT) export.

Worlds draw as circles and events as squares; the designated world or
event gets a double border.  Edges are labelled by the agents sharing
them; atom sets, preconditions and postcondition assignments appear in
the node labels.
"""

from __future__ import annotations

from typing import Optional

from .action import ActionModel
from .formula import atom_key, render, render_atom
from .kripke import Model


def _quote(text: str) -> str:
    return '"' + text.replace("\\", "\\\\").replace('"', '\\"') + '"'


def _edge_lines(names: dict[str, str], relations: dict, agent_order) -> list[str]:
    grouped: dict[tuple[str, str], list[str]] = {}
    for agent in agent_order:
        for src, dst in relations.get(agent, ()):
            grouped.setdefault((src, dst), []).append(agent)
    lines = []
    for (src, dst) in sorted(grouped, key=lambda p: (names[p[0]], names[p[1]])):
        label = ",".join(grouped[(src, dst)])
        lines.append(f"  {names[src]} -> {names[dst]} [label={_quote(label)}];")
    return lines


def model_dot(m: Model, point: Optional[str] = None) -> str:
    names = {w: f"n{i}" for i, w in enumerate(m.worlds)}
    lines = ["digraph model {", "  rankdir=LR;", "  node [shape=circle];"]
    for w in m.worlds:
        atoms = ", ".join(render_atom(a) for a in sorted(m.valuation[w], key=atom_key))
        label = f"{w}\\n{{{atoms}}}"
        shape = ' shape=doublecircle' if w == point else ""
        lines.append(f"  {names[w]} [label={_quote(label)}{shape}];")
    lines += _edge_lines(names, m.relations, m.registry.agents)
    lines.append("}")
    return "\n".join(lines) + "\n"


def action_dot(a: ActionModel, point: Optional[str] = None) -> str:
    names = {e: f"n{i}" for i, e in enumerate(a.events)}
    lines = ["digraph action {", "  rankdir=LR;", "  node [shape=box];"]
    for e in a.events:
        assigns = a.post[e].items()
        if assigns:
            post = " & ".join(
                (render_atom(atom) if value else "~" + render_atom(atom))
                for atom, value in assigns
            )
        else:
            post = "id"
        label = f"{e}\\npre: {render(a.pre[e])}\\npost: {post}"
        peripheries = " peripheries=2" if e == point else ""
        lines.append(f"  {names[e]} [label={_quote(label)}{peripheries}];")
    lines += _edge_lines(names, a.relations, sorted(a.relations))
    lines.append("}")
    return "\n".join(lines) + "\n"
