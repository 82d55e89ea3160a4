"""Graphviz DOT export for model documents.

States become nodes (initial states double-circled, atoms listed under the
state name); each transition row becomes one edge, labeled with its joint
action vector for game structures and unlabeled for Kripke structures.
"""

from __future__ import annotations

from .structures import ConcurrentGameStructure, KripkeStructure, ModelDocument


def _node_lines(states, initial, label):
    out = []
    for s in states:
        atoms = sorted(label.get(s, ()))
        text = s if not atoms else s + "\\n" + " ".join(atoms)
        attrs = ['label="%s"' % text]
        if s in initial:
            attrs.append("shape=doublecircle")
        out.append('  "%s" [%s];' % (s, ", ".join(attrs)))
    return out


def export_dot(doc: ModelDocument) -> str:
    """The DOT text for a document's transition graph."""
    payload = doc.payload
    lines = ["digraph model {", "  rankdir=LR;", "  node [shape=circle];"]
    if isinstance(payload, ConcurrentGameStructure):
        g = payload
        lines.extend(_node_lines(g.states, g.initial, g.label))
        for s in g.states:
            for vec, target in g.rows_by_state[s]:
                lines.append(
                    '  "%s" -> "%s" [label="%s"];' % (s, target, " ".join(vec))
                )
    elif isinstance(payload, KripkeStructure):
        k = payload
        lines.extend(_node_lines(k.states, k.initial, k.label))
        for s in k.states:
            for target in k.edges.get(s, ()):
                lines.append('  "%s" -> "%s";' % (s, target))
    else:
        raise TypeError("cannot export payload of type %s" % type(payload).__name__)
    lines.append("}")
    return "\n".join(lines) + "\n"
