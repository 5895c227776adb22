"""OpenQASM 2.0 serialization for bound circuits.

Export writes the gate set {rx, ry, rz, cx, cz, h, x, z}, decomposing
multi-qubit Pauli rotations into basis changes plus a CNOT parity ladder.
The parser accepts the same subset (plus barrier/measure, ignored) and
reports errors with line and column positions.
"""

import math
import warnings
from typing import List, Optional, Tuple

from .pauli import PauliString
from .simulator import CircuitIR, Gate, bind_params

HALF_PI = math.pi / 2


class QasmParseError(ValueError):
    def __init__(self, message: str, line: int, col: int):
        super().__init__(f"line {line}, column {col}: {message}")
        self.line = line
        self.col = col


def _fmt(x: float) -> str:
    # 17 significant digits round-trips IEEE doubles exactly
    return f"{x:.17g}"


def decompose_pauli_rot(gate: Gate) -> List[Gate]:
    """Expand a bound Pauli rotation into {h, rx, rz, cnot} gates.

    Basis changes map each X factor with H and each Y factor with
    RX(pi/2), a CNOT ladder collects parity onto the last involved
    qubit, RZ(theta) acts there, then everything unwinds.
    """
    if gate.angle is None:
        raise ValueError("cannot decompose an unbound rotation")
    p: PauliString = gate.generator
    letters = p.factors
    qubits = sorted(letters)
    pre: List[Gate] = []
    post: List[Gate] = []
    for q in qubits:
        if letters[q] == "X":
            pre.append(Gate("h", (q,)))
            post.append(Gate("h", (q,)))
        elif letters[q] == "Y":
            pre.append(Gate("rx", (q,), angle=HALF_PI))
            post.append(Gate("rx", (q,), angle=-HALF_PI))
    ladder = [Gate("cnot", (a, b)) for a, b in zip(qubits, qubits[1:])]
    return (pre + ladder
            + [Gate("rz", (qubits[-1],), angle=gate.angle)]
            + ladder[::-1] + post)


def decompose_circuit(circuit: CircuitIR) -> CircuitIR:
    """Rewrite pauli_rot gates in terms of the QASM-exportable set."""
    gates = []
    for g in circuit.gates:
        if g.kind == "pauli_rot":
            gates.extend(decompose_pauli_rot(g))
        else:
            gates.append(g)
    return CircuitIR(circuit.n_qubits, tuple(gates), n_params=0)


_EXPORT_NAMES = {"rx": "rx", "ry": "ry", "rz": "rz",
                 "cnot": "cx", "cz": "cz", "h": "h", "x": "x", "z": "z"}


def circuit_to_qasm(circuit: CircuitIR, params=None) -> str:
    """Serialize a circuit to OpenQASM 2.0 text.

    Unbound parameter slots must be resolved by params. Qubit k maps
    to register index k-1.
    """
    if params is not None:
        circuit = bind_params(circuit, params)
    if circuit.n_params:
        raise ValueError("circuit has unbound parameters; pass params")
    lines = [
        "OPENQASM 2.0;",
        'include "qelib1.inc";',
        f"qreg q[{circuit.n_qubits}];",
    ]
    for g in decompose_circuit(circuit).gates:
        name = _EXPORT_NAMES[g.kind]
        args = ",".join(f"q[{q - 1}]" for q in g.qubits)
        if g.angle is not None:
            lines.append(f"{name}({_fmt(g.angle)}) {args};")
        else:
            lines.append(f"{name} {args};")
    return "\n".join(lines) + "\n"


# ---------------------------------------------------------------- parser

_SYMBOLS = (";", ",", "(", ")", "[", "]", "{", "}", "+", "-", "*", "/", "->")

_GATES = {
    "rx": ("rx", 1), "ry": ("ry", 1), "rz": ("rz", 1),
    "cx": ("cnot", 2), "cz": ("cz", 2),
    "h": ("h", 1), "x": ("x", 1), "z": ("z", 1),
}


class _Token:
    __slots__ = ("kind", "text", "line", "col")

    def __init__(self, kind, text, line, col):
        self.kind = kind  # ID | NUMBER | STRING | SYM | EOF
        self.text = text
        self.line = line
        self.col = col


def _tokenize(text: str) -> List[_Token]:
    tokens = []
    line, col = 1, 1
    i, n = 0, len(text)
    while i < n:
        c = text[i]
        if c == "\n":
            line += 1
            col = 1
            i += 1
            continue
        if c in " \t\r":
            i += 1
            col += 1
            continue
        if text.startswith("//", i):
            while i < n and text[i] != "\n":
                i += 1
            continue
        start_line, start_col = line, col
        if c == '"':
            j = text.find('"', i + 1)
            if j < 0:
                raise QasmParseError("unterminated string", line, col)
            tokens.append(_Token("STRING", text[i + 1:j], line, col))
            col += j + 1 - i
            i = j + 1
            continue
        if c.isalpha() or c == "_":
            j = i
            while j < n and (text[j].isalnum() or text[j] == "_"):
                j += 1
            tokens.append(_Token("ID", text[i:j], line, col))
            col += j - i
            i = j
            continue
        if c.isdigit() or (c == "." and i + 1 < n and text[i + 1].isdigit()):
            j = i
            while j < n and (text[j].isdigit() or text[j] == "."):
                j += 1
            if j < n and text[j] in "eE":
                k = j + 1
                if k < n and text[k] in "+-":
                    k += 1
                if k < n and text[k].isdigit():
                    j = k
                    while j < n and text[j].isdigit():
                        j += 1
            tokens.append(_Token("NUMBER", text[i:j], line, col))
            col += j - i
            i = j
            continue
        if text.startswith("->", i):
            tokens.append(_Token("SYM", "->", line, col))
            i += 2
            col += 2
            continue
        if c in _SYMBOLS:
            tokens.append(_Token("SYM", c, line, col))
            i += 1
            col += 1
            continue
        raise QasmParseError(f"unexpected character {c!r}", start_line, start_col)
    tokens.append(_Token("EOF", "", line, col))
    return tokens


class _Parser:
    def __init__(self, text: str):
        self.tokens = _tokenize(text)
        self.pos = 0
        self.qreg: Optional[Tuple[str, int]] = None
        self.cregs = {}
        self.gates: List[Gate] = []
        self.warned_measure = False

    def peek(self) -> _Token:
        return self.tokens[self.pos]

    def next(self) -> _Token:
        tok = self.tokens[self.pos]
        self.pos += 1
        return tok

    def expect(self, kind, text=None) -> _Token:
        tok = self.next()
        want = text if text is not None else kind.lower()
        if tok.kind != kind or (text is not None and tok.text != text):
            got = tok.text if tok.kind != "EOF" else "end of input"
            raise QasmParseError(f"expected {want!r}, got {got!r}",
                                 tok.line, tok.col)
        return tok

    def fail(self, message, tok=None):
        tok = tok or self.peek()
        raise QasmParseError(message, tok.line, tok.col)

    # grammar

    def parse(self) -> CircuitIR:
        head = self.expect("ID", "OPENQASM")
        version = self.expect("NUMBER")
        if version.text != "2.0":
            self.fail(f"unsupported version {version.text}", version)
        self.expect("SYM", ";")
        while self.peek().kind != "EOF":
            self.statement()
        if self.qreg is None:
            self.fail("no quantum register declared", head)
        return CircuitIR(self.qreg[1], tuple(self.gates), n_params=0)

    def statement(self):
        tok = self.next()
        if tok.kind != "ID":
            self.fail(f"expected statement, got {tok.text!r}", tok)
        name = tok.text
        if name == "include":
            self.expect("STRING")
            self.expect("SYM", ";")
        elif name == "qreg":
            self.declare(tok, quantum=True)
        elif name == "creg":
            self.declare(tok, quantum=False)
        elif name == "barrier":
            self.skip_statement()
        elif name == "measure":
            if not self.warned_measure:
                warnings.warn("measure statements are ignored")
                self.warned_measure = True
            self.skip_statement()
        elif name in _GATES:
            self.gate(tok)
        elif name == "gate":
            self.fail("gate definitions are not supported", tok)
        elif name in ("opaque", "if", "reset"):
            self.fail(f"{name!r} statements are not supported", tok)
        else:
            self.fail(f"unsupported gate {name!r}", tok)

    def declare(self, tok, quantum):
        name = self.expect("ID").text
        self.expect("SYM", "[")
        size_tok = self.expect("NUMBER")
        if not size_tok.text.isdigit() or int(size_tok.text) < 1:
            self.fail("register size must be a positive integer", size_tok)
        self.expect("SYM", "]")
        self.expect("SYM", ";")
        if quantum:
            if self.qreg is not None:
                self.fail("only one quantum register is supported", tok)
            self.qreg = (name, int(size_tok.text))
        else:
            self.cregs[name] = int(size_tok.text)

    def skip_statement(self):
        while True:
            tok = self.next()
            if tok.kind == "EOF":
                self.fail("unterminated statement", tok)
            if tok.kind == "SYM" and tok.text == ";":
                return

    def gate(self, tok):
        kind, n_qubits = _GATES[tok.text]
        angle = None
        if kind in ("rx", "ry", "rz"):
            self.expect("SYM", "(")
            angle = self.expr()
            self.expect("SYM", ")")
        qubits = [self.qubit_arg()]
        for _ in range(n_qubits - 1):
            self.expect("SYM", ",")
            qubits.append(self.qubit_arg())
        self.expect("SYM", ";")
        try:
            self.gates.append(Gate(kind, tuple(qubits), angle=angle))
        except ValueError as e:
            self.fail(str(e), tok)

    def qubit_arg(self) -> int:
        name_tok = self.expect("ID")
        if self.qreg is None:
            self.fail("no quantum register declared", name_tok)
        if name_tok.text != self.qreg[0]:
            self.fail(f"unknown register {name_tok.text!r}", name_tok)
        self.expect("SYM", "[")
        idx_tok = self.expect("NUMBER")
        if not idx_tok.text.isdigit():
            self.fail("qubit index must be an integer", idx_tok)
        idx = int(idx_tok.text)
        if idx >= self.qreg[1]:
            self.fail(f"index {idx} out of range for {self.qreg[0]}"
                      f"[{self.qreg[1]}]", idx_tok)
        self.expect("SYM", "]")
        return idx + 1  # register index k-1 -> qubit k

    # angle expressions: + - * / unary-minus pi literals parens

    def expr(self) -> float:
        value = self.term()
        while self.peek().kind == "SYM" and self.peek().text in "+-":
            op = self.next().text
            rhs = self.term()
            value = value + rhs if op == "+" else value - rhs
        return value

    def term(self) -> float:
        value = self.unary()
        while self.peek().kind == "SYM" and self.peek().text in "*/":
            op = self.next().text
            tok = self.peek()
            rhs = self.unary()
            if op == "/":
                if rhs == 0:
                    self.fail("division by zero", tok)
                value = value / rhs
            else:
                value = value * rhs
        return value

    def unary(self) -> float:
        tok = self.peek()
        if tok.kind == "SYM" and tok.text == "-":
            self.next()
            return -self.unary()
        if tok.kind == "SYM" and tok.text == "+":
            self.next()
            return self.unary()
        return self.atom()

    def atom(self) -> float:
        tok = self.next()
        if tok.kind == "NUMBER":
            return float(tok.text)
        if tok.kind == "ID" and tok.text == "pi":
            return math.pi
        if tok.kind == "SYM" and tok.text == "(":
            value = self.expr()
            self.expect("SYM", ")")
            return value
        got = tok.text if tok.kind != "EOF" else "end of input"
        self.fail(f"expected angle expression, got {got!r}", tok)


def parse_qasm(text: str) -> CircuitIR:
    """Parse an OpenQASM 2.0 program into a bound CircuitIR."""
    return _Parser(text).parse()
