from .models import TreeDecomposition


def format_td(decomposition: TreeDecomposition, vertex_count: int) -> str:
    """PACE ``.td`` text: bags are numbered from 1 in node order."""
    lines = [f"s td {len(decomposition)} {decomposition.max_bag} {vertex_count}"]
    for node, bag in enumerate(decomposition.bags):
        lines.append(" ".join(["b", str(node + 1), *map(str, sorted(bag))]))
    for node, kids in enumerate(decomposition.children):
        lines += [f"{node + 1} {kid + 1}" for kid in kids]

    return "\n".join(lines) + "\n"
