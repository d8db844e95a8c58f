from circuits.models import StructuredCircuit, Vtree
from utils.exceptions import UnsupportedOperation, VtreeMismatch


def vtree_isomorphism(source: Vtree, target: Vtree) -> list[int]:
    """Node map from ``source`` onto ``target`` keeping labels and left/right order."""
    if len(source) != len(target):
        raise UnsupportedOperation(f"vtrees have {len(source)} and {len(target)} nodes")

    mapping = [-1] * len(source)
    stack = [(source.root, target.root)]
    while stack:
        node, image = stack.pop()
        if source.is_leaf(node) != target.is_leaf(image):
            raise UnsupportedOperation(f"node {node} and node {image} differ in kind")
        if source.is_leaf(node):
            if source.labels[node] != target.labels[image]:
                raise UnsupportedOperation(
                    f"leaf {node} is labeled {source.labels[node]}, "
                    f"its counterpart {target.labels[image]}"
                )
        else:
            stack.append((source.left(node), target.left(image)))
            stack.append((source.right(node), target.right(image)))
        mapping[node] = image

    return mapping


def align_vtree(circuit: StructuredCircuit, target: Vtree) -> StructuredCircuit:
    """Rehome the circuit on ``target`` when it is the same vtree up to node ids.

    Restructuring (rotations, swaps) is not attempted.
    """
    if set(circuit.vtree.leaf_of) != set(target.leaf_of):
        raise VtreeMismatch("vtrees label different variable sets")
    if circuit.vtree == target:
        return circuit

    return circuit.with_vtree(target, vtree_isomorphism(circuit.vtree, target))


def share_vtree(first: StructuredCircuit, second: StructuredCircuit) -> StructuredCircuit:
    """``second`` rehomed on the vtree of ``first``."""
    try:
        return align_vtree(second, first.vtree)
    except UnsupportedOperation as exc:
        raise VtreeMismatch(f"circuits use different vtrees: {exc.detail}") from exc
