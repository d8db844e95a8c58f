"""Line-oriented vtree and circuit files.

Vtree files list nodes by increasing id, children before parents, so the
last line is the root. Circuit files list gates the same way and end with
one ``out <name> <gate>`` line per output.
"""
from pathlib import Path

from formulas.parsers import data_lines, read_int
from utils.exceptions import ParseError, StructureError

from .models import Gate, GateKind, StructuredCircuit, Vtree

GATE_TOKENS = {kind.value for kind in GateKind}


def format_vtree(vtree: Vtree) -> str:
    lines = [f"vtree {len(vtree)}"]
    for node, kids in enumerate(vtree.children):
        if kids is not None:
            lines.append(f"I {node} {kids[0]} {kids[1]}")
        elif vtree.labels[node] is None:
            lines.append(f"U {node}")
        else:
            lines.append(f"L {node} {vtree.labels[node]}")

    return "\n".join(lines) + "\n"


def _header(lines, keyword: str, fields: int) -> tuple[int, list[int]]:
    try:
        number, line = next(lines)
    except StopIteration:
        raise ParseError(f"empty file, expected a '{keyword}' header") from None
    tokens = line.split()
    if tokens[0] != keyword or len(tokens) != fields + 1:
        raise ParseError(f"expected a '{keyword}' header with {fields} counts", number)

    return number, [read_int(token, number) for token in tokens[1:]]


def parse_vtree(text: bytes | str) -> Vtree:
    lines = data_lines(text)
    _, (size,) = _header(lines, "vtree", 1)
    children: list[tuple[int, int] | None] = []
    labels: list[int | None] = []

    shapes = {"L": 3, "U": 2, "I": 4}
    for number, line in lines:
        tokens = line.split()
        if tokens[0] not in shapes or len(tokens) != shapes[tokens[0]]:
            raise ParseError(f"malformed vtree line {line!r}", number)
        values = [read_int(token, number) for token in tokens[1:]]
        if values[0] != len(children):
            raise ParseError(f"expected node id {len(children)}, got {values[0]}", number)
        if tokens[0] == "I":
            children.append((values[1], values[2]))
            labels.append(None)
        else:
            children.append(None)
            labels.append(values[1] if tokens[0] == "L" else None)

    if len(children) != size:
        raise ParseError(f"header declares {size} nodes, found {len(children)}")
    try:
        return Vtree(tuple(children), tuple(labels))
    except StructureError as exc:
        raise ParseError(exc.detail) from exc


def format_circuit(circuit: StructuredCircuit) -> str:
    lines = [f"sdnnf {len(circuit.gates)} {len(circuit.vtree)}"]
    for gate_id, gate in enumerate(circuit.gates):
        if gate.kind is GateKind.LITERAL:
            lines.append(f"L {gate_id} {gate.literal} {gate.home}")
        elif gate.is_constant:
            lines.append(f"{gate.kind.value} {gate_id} {gate.home}")
        elif gate.kind is GateKind.AND:
            lines.append(f"A {gate_id} {gate.inputs[0]} {gate.inputs[1]} {gate.home}")
        else:
            fields = [gate_id, len(gate.inputs), *gate.inputs, gate.home]
            lines.append(" ".join(["O", *map(str, fields)]))
    for name, gate_id in sorted(circuit.outputs.items()):
        lines.append(f"out {name} {gate_id}")

    return "\n".join(lines) + "\n"


def _gate(tokens: list[str], number: int, gate_id: int, size: int) -> Gate:
    kind = GateKind(tokens[0])
    values = [read_int(token, number) for token in tokens[1:]]
    if values[0] != gate_id:
        raise ParseError(f"expected gate id {gate_id}, got {values[0]}", number)

    if kind is GateKind.LITERAL:
        if len(values) != 3 or values[1] == 0:
            raise ParseError("literal lines read 'L <id> <literal> <node>'", number)
        gate = Gate(kind, values[2], literal=values[1])
    elif kind in (GateKind.TRUE, GateKind.FALSE):
        if len(values) != 2:
            raise ParseError("constant lines read 'T|F <id> <node>'", number)
        gate = Gate(kind, values[1])
    elif kind is GateKind.AND:
        if len(values) != 4:
            raise ParseError("and lines read 'A <id> <c1> <c2> <node>'", number)
        gate = Gate(kind, values[3], (values[1], values[2]))
    else:
        if len(values) < 3 or len(values) != values[1] + 3:
            raise ParseError("or lines read 'O <id> <k> <c1> ... <ck> <node>'", number)
        gate = Gate(kind, values[-1], tuple(values[2:-1]))

    if not 0 <= gate.home < size:
        raise ParseError(f"gate {gate_id} is homed at unknown node {gate.home}", number)
    if any(not 0 <= kid < gate_id for kid in gate.inputs):
        raise ParseError(f"gate {gate_id} reads a gate that is not defined before it", number)

    return gate


def parse_circuit(
    text: bytes | str, vtree: Vtree, deterministic: bool = False
) -> StructuredCircuit:
    """Read a circuit file over ``vtree``.

    The format carries no determinism flag, so the claim comes from the
    caller and defaults to none.
    """
    lines = data_lines(text)
    _, (size, nodes) = _header(lines, "sdnnf", 2)
    if nodes != len(vtree):
        raise ParseError(f"circuit expects {nodes} vtree nodes, the vtree has {len(vtree)}")

    gates: list[Gate] = []
    outputs: dict[str, int] = {}
    for number, line in lines:
        tokens = line.split()
        if tokens[0] == "out":
            if len(tokens) != 3:
                raise ParseError("output lines read 'out <name> <gate>'", number)
            gate_id = read_int(tokens[2], number)
            if not 0 <= gate_id < len(gates):
                raise ParseError(f"output {tokens[1]!r} names unknown gate {gate_id}", number)
            outputs[tokens[1]] = gate_id
            continue
        if outputs:
            raise ParseError("gate line after the outputs", number)
        if tokens[0] not in GATE_TOKENS:
            raise ParseError(f"unknown gate kind {tokens[0]!r}", number)
        gates.append(_gate(tokens, number, len(gates), len(vtree)))

    if len(gates) != size:
        raise ParseError(f"header declares {size} gates, found {len(gates)}")

    return StructuredCircuit(vtree, tuple(gates), outputs, deterministic)


def vtree_path(circuit_path: str | Path) -> Path:
    return Path(circuit_path).with_suffix(".vtree")


def save_circuit(circuit: StructuredCircuit, path: str | Path) -> tuple[Path, Path]:
    """Write ``<stem>.sdnnf`` and its ``<stem>.vtree`` companion."""
    circuit_file = Path(path).with_suffix(".sdnnf")
    tree_file = vtree_path(circuit_file)
    tree_file.write_text(format_vtree(circuit.vtree))
    circuit_file.write_text(format_circuit(circuit))

    return circuit_file, tree_file


def load_circuit(
    path: str | Path,
    vtree_file: str | Path | None = None,
    deterministic: bool = False,
) -> StructuredCircuit:
    tree_file = Path(vtree_file) if vtree_file else vtree_path(path)
    vtree = parse_vtree(tree_file.read_text())

    return parse_circuit(Path(path).read_text(), vtree, deterministic)
