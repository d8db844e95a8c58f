from typing import Iterable

from circuits.models import CircuitBuilder, StructuredCircuit, Vtree
from projection.projector import negate
from utils.exceptions import UnknownVariable


def term_circuit(vtree: Vtree, literals: Iterable[int]) -> StructuredCircuit:
    """Width-1 circuit of a conjunction of literals; other variables are left free.

    Every internal node carries one or-gate. A leaf contributes its literal,
    both literals when its variable is free, or nothing when the term holds
    the variable in both signs.
    """
    literals = set(literals)
    unknown = sorted({abs(literal) for literal in literals} - set(vtree.leaf_of))
    if unknown:
        raise UnknownVariable(f"term mentions unknown variables {unknown}")

    builder = CircuitBuilder(vtree)
    pieces: list[tuple[int, ...]] = []
    for node, kids in enumerate(vtree.children):
        variable = vtree.labels[node]
        if kids is None and variable is None:
            pieces.append((builder.constant(True, node),))
        elif kids is None:
            signs = [sign for sign in (variable, -variable) if sign in literals]
            if not signs:
                signs = [variable, -variable]
            elif len(signs) == 2:
                signs = []
            pieces.append(tuple(builder.literal(sign, node) for sign in signs))
        else:
            ands = [
                builder.conjunction(a, b, node)
                for a in pieces[kids[0]]
                for b in pieces[kids[1]]
            ]
            pieces.append((builder.disjunction(ands, node),))

    top = pieces[vtree.root]
    if vtree.is_leaf(vtree.root) and len(top) != 1:
        builder.outputs["main"] = builder.constant(len(top) == 2, vtree.root)
    else:
        builder.outputs["main"] = top[0]

    return builder.build(deterministic=True)


def clause_circuit(vtree: Vtree, literals: Iterable[int]) -> StructuredCircuit:
    """Width-2 circuit of a clause, as the negation of the complementary term."""
    return negate(term_circuit(vtree, [-literal for literal in literals]))
