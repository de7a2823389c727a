"""DOT export of push-out squares and tower filtration diagrams.

Nodes are structures, edges are embeddings; boolean edges are labelled
with their dual atom maps, polytopal edges with their matrices.
"""

from __future__ import annotations

from .boolalg import PushoutSquare
from .banach import BanachPushout
from .serialization import frac_to_str
from .tower import BANACH, BOOLEAN, Tower


def _quote(s) -> str:
    return '"%s"' % str(s).replace("\\", "\\\\").replace('"', '\\"')


def _atom_map_label(surj) -> str:
    pairs = sorted(((str(t), str(s)) for t, s in surj.atom_map))
    return "\\n".join("%s<-%s" % (s, t) for t, s in pairs)


def _matrix_label(matrix) -> str:
    return "\\n".join("[" + " ".join(frac_to_str(x) for x in row) + "]"
                      for row in matrix)


def square_to_dot(sq) -> str:
    """A push-out square as a 4-node digraph R -> S, A -> B."""
    lines = ["digraph pushout {", "  rankdir=BT;"]
    if isinstance(sq, PushoutSquare):
        names = {
            "R": "%d atoms" % len(sq.base.atoms),
            "S": "%d atoms" % len(sq.r_to_s.target_alg.atoms),
            "A": "%d atoms" % len(sq.r_to_a.target_alg.atoms),
            "B": "%d atoms" % len(sq.top.atoms),
        }
        edges = [("R", "S", _atom_map_label(sq.r_to_s)),
                 ("R", "A", _atom_map_label(sq.r_to_a)),
                 ("S", "B", _atom_map_label(sq.s_to_b)),
                 ("A", "B", _atom_map_label(sq.a_to_b))]
    elif isinstance(sq, BanachPushout):
        names = {
            "R": "dim %d" % sq.r_space.dim,
            "S": "dim %d" % sq.s_space.dim,
            "X": "dim %d" % sq.x_space.dim,
            "Y": "dim %d" % sq.space.dim,
        }
        edges = [("R", "S", _matrix_label(sq.r_to_s.matrix)),
                 ("R", "X", _matrix_label(sq.r_to_x.matrix)),
                 ("S", "Y", _matrix_label(sq.s_to_y.matrix)),
                 ("X", "Y", _matrix_label(sq.x_to_y.matrix))]
    else:
        raise TypeError("not a push-out square: %r" % (sq,))
    for node, label in sorted(names.items()):
        lines.append("  %s [label=%s];" % (node, _quote("%s\\n%s"
                                                        % (node, label))))
    for a, b, label in edges:
        lines.append("  %s -> %s [label=%s];" % (a, b, _quote(label)))
    lines.append("}")
    return "\n".join(lines) + "\n"


def tower_to_dot(tower: Tower) -> str:
    """The filtration chain of a tower, with each step's adjoined extension
    hanging off the stage it was amalgamated into."""
    lines = ["digraph tower {", "  rankdir=LR;"]
    for i, stage in enumerate(tower.stages):
        if tower.kind == BOOLEAN:
            label = "B%d\\n%d atoms" % (i, len(stage.atoms))
        else:
            label = "B%d\\ndim %d" % (i, stage.dim)
        lines.append("  b%d [label=%s];" % (i, _quote(label)))
    for step in tower.steps:
        i = step.index
        if tower.kind == BOOLEAN:
            s_alg = step.square.r_to_s.target_alg
            r_alg = step.square.base
            s_label = "S%d\\n%d atoms" % (i, len(s_alg.atoms))
            r_label = "R%d: %d atoms" % (i, len(r_alg.atoms))
        else:
            s_label = "S%d\\ndim %d" % (i, step.square.s_space.dim)
            r_label = "R%d: dim %d" % (i, step.square.r_space.dim)
        lines.append("  s%d [label=%s, shape=box];" % (i, _quote(s_label)))
        lines.append("  b%d -> b%d [label=%s];"
                     % (i, i + 1, _quote(r_label)))
        lines.append("  s%d -> b%d;" % (i, i + 1))
    lines.append("}")
    return "\n".join(lines) + "\n"
